//! Random valid connection matrices for property tests.

#![allow(dead_code)]

use conley_core::{ConnectionMatrix, FinitePoset, Generator, Gf2Matrix, GradedBasis};
use rand::seq::SliceRandom;
use rand::Rng;

/// Random poset on `n` elements whose relations all point from lower to
/// higher input index.
pub fn random_poset<R: Rng>(rng: &mut R, n: usize, density: f64) -> FinitePoset {
    let mut relations = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(density) {
                relations.push((a, b));
            }
        }
    }
    FinitePoset::new((0..n).map(|i| format!("p{i}")), &relations).expect("acyclic")
}

pub fn random_basis<R: Rng>(rng: &mut R, order: FinitePoset, gens: usize, max_deg: u32) -> GradedBasis {
    let n = order.len();
    let generators = (0..gens)
        .map(|i| Generator::new(format!("g{i}"), rng.gen_range(0..n), rng.gen_range(0..=max_deg)))
        .collect();
    GradedBasis::new(order, generators).expect("valid basis")
}

fn strictly_below(basis: &GradedBasis, a: usize, b: usize) -> bool {
    basis.order().less(basis.element(a), basis.element(b))
}

/// `U · D · U⁻¹` with `D` a random strictly upper degree −1 matrix squaring
/// to zero and `U` a random degree-0 unit upper triangular matrix compatible
/// with the order.
pub fn random_delta<R: Rng>(rng: &mut R, basis: GradedBasis) -> ConnectionMatrix {
    let n = basis.len();
    let mut d = Gf2Matrix::zeros(n, n);
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| basis.degree(a) + 1 == basis.degree(b) && strictly_below(&basis, a, b))
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
    let mut u = Gf2Matrix::identity(n);
    for a in 0..n {
        for b in a + 1..n {
            let allowed = basis.degree(a) == basis.degree(b)
                && (strictly_below(&basis, a, b) || basis.element(a) == basis.element(b));
            if allowed && rng.gen_bool(0.5) {
                u.set(a, b, true);
            }
        }
    }
    let u_inv = u.invert_unitriangular().expect("unit upper triangular");
    let m = u.mul(&d).unwrap().mul(&u_inv).unwrap();
    ConnectionMatrix::new(basis, m).expect("conjugate of a valid boundary is valid")
}

/// A random complex on a chain of `n` elements with one generator each.
pub fn random_filtered<R: Rng>(rng: &mut R, n: usize) -> ConnectionMatrix {
    let order = FinitePoset::chain((0..n).map(|i| format!("p{i}")));
    let generators = (0..n)
        .map(|i| Generator::new(format!("g{i}"), i, rng.gen_range(0..=3)))
        .collect();
    let basis = GradedBasis::new(order, generators).expect("valid basis");
    random_delta(rng, basis)
}
