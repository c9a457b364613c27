//! Seeded random valid connection matrices.
//!
//! Every complex is `U · D · U⁻¹` where `D` is a random strictly upper,
//! degree −1 matrix with `D² = 0` and `U` is a degree-0 unit upper
//! triangular change of basis compatible with the order.

use conley_core::{ConnectionMatrix, FinitePoset, Generator, Gf2Matrix, GradedBasis};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Poset on `p0 … p{n-1}` with each relation `pa < pb`, `a < b`, present
/// with probability `density` before closure.
pub fn poset<R: Rng>(rng: &mut R, n: usize, density: f64) -> FinitePoset {
    let relations: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|_| rng.gen_bool(density))
        .collect();
    FinitePoset::new((0..n).map(|i| format!("p{i}")), &relations).expect("relations point upward")
}

pub fn basis<R: Rng>(rng: &mut R, order: FinitePoset, generators: usize, max_degree: u32) -> GradedBasis {
    let n = order.len();
    let gens = (0..generators)
        .map(|i| Generator::new(format!("g{i}"), rng.gen_range(0..n), rng.gen_range(0..=max_degree)))
        .collect();
    GradedBasis::new(order, gens).expect("fresh labels")
}

fn below(basis: &GradedBasis, a: usize, b: usize) -> bool {
    basis.order().less(basis.element(a), basis.element(b))
}

/// Random degree-0 unit upper triangular matrix. With `strict`, entries
/// only join strictly ordered elements, so diagonal blocks are identities.
pub fn change_of_basis<R: Rng>(rng: &mut R, basis: &GradedBasis, strict: bool) -> Gf2Matrix {
    let n = basis.len();
    let mut u = Gf2Matrix::identity(n);
    for a in 0..n {
        for b in a + 1..n {
            let related = below(basis, a, b) || (!strict && basis.element(a) == basis.element(b));
            if basis.degree(a) == basis.degree(b) && related && rng.gen_bool(0.5) {
                u.set(a, b, true);
            }
        }
    }
    u
}

pub fn delta<R: Rng>(rng: &mut R, basis: GradedBasis) -> ConnectionMatrix {
    let n = basis.len();
    let mut d = Gf2Matrix::zeros(n, n);
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| basis.degree(a) + 1 == basis.degree(b) && below(&basis, a, b))
        .collect();
    pairs.shuffle(rng);
    // keep each entry only while D² stays zero
    for (a, b) in pairs {
        if rng.gen_bool(0.6) {
            d.set(a, b, true);
            if !d.mul(&d).expect("square").is_zero() {
                d.set(a, b, false);
            }
        }
    }
    let u = change_of_basis(rng, &basis, false);
    let u_inv = u.invert_unitriangular().expect("unit upper triangular");
    let m = u.mul(&d).and_then(|ud| ud.mul(&u_inv)).expect("square");
    ConnectionMatrix::new(basis, m).expect("conjugate of a boundary is a boundary")
}

/// Complex on a chain `p0 < … < p{n-1}` with one generator per element, so
/// the filtration index of `g{i}` is `i`.
pub fn filtered<R: Rng>(rng: &mut R, n: usize, max_degree: u32) -> ConnectionMatrix {
    let order = FinitePoset::chain((0..n).map(|i| format!("p{i}")));
    let gens = (0..n)
        .map(|i| Generator::new(format!("g{i}"), i, rng.gen_range(0..=max_degree)))
        .collect();
    delta(rng, GradedBasis::new(order, gens).expect("fresh labels"))
}

/// Complex on a random poset.
pub fn complex<R: Rng>(rng: &mut R, elements: usize, generators: usize, max_degree: u32) -> ConnectionMatrix {
    let order = poset(rng, elements, 0.5);
    let basis = basis(rng, order, generators, max_degree);
    delta(rng, basis)
}

/// `(Δ_dom, Δ_cod, T)` with `Δ_cod = T Δ_dom T⁻¹` and `T` having identity
/// diagonal blocks.
pub fn continuation<R: Rng>(
    rng: &mut R,
    elements: usize,
    generators: usize,
) -> (ConnectionMatrix, ConnectionMatrix, Gf2Matrix) {
    let dom = complex(rng, elements, generators, 2);
    let t = change_of_basis(rng, dom.basis(), true);
    let cod = conjugate(&dom, &t);
    (dom, cod, t)
}

/// `T Δ T⁻¹` on the same basis.
pub fn conjugate(delta: &ConnectionMatrix, t: &Gf2Matrix) -> ConnectionMatrix {
    let t_inv = t.invert_unitriangular().expect("unit upper triangular");
    let m = t
        .mul(delta.matrix())
        .and_then(|td| td.mul(&t_inv))
        .expect("square");
    ConnectionMatrix::new(delta.basis().clone(), m).expect("conjugate of a boundary is a boundary")
}
