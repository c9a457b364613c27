//! Worked instances used by tests, the CLI and the bundled files.
//!
//! The three-element example lives on the chain `1 < 2 < 3` with generators
//! `g1` (element 1, degree 0), `g2` (element 2, degree 1) and `g3`
//! (element 3, degree 1).

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::braid::{ConnectionMatrix, Generator, GradedBasis};
use crate::gf2::Gf2Matrix;
use crate::morse::{BlockTransition, CriticalPoint, MorseData};
use crate::poset::{FinitePoset, Interval};
use crate::transition::{CoverData, CoverEntry, TransitionCandidate};

pub fn example_order() -> FinitePoset {
    FinitePoset::chain(["1", "2", "3"])
}

pub fn example_basis() -> GradedBasis {
    GradedBasis::new(
        example_order(),
        vec![
            Generator::new("g1", 0, 0),
            Generator::new("g2", 1, 1),
            Generator::new("g3", 2, 1),
        ],
    )
    .expect("fixture basis")
}

/// `Δ_λ`: only `g2 ↦ g1`.
pub fn example_delta_lambda() -> ConnectionMatrix {
    ConnectionMatrix::new(example_basis(), Gf2Matrix::from_entries(3, 3, &[(0, 1)]))
        .expect("fixture Δ_λ")
}

/// `Δ_μ`: `g2 ↦ g1` and `g3 ↦ g1`.
pub fn example_delta_mu() -> ConnectionMatrix {
    ConnectionMatrix::new(
        example_basis(),
        Gf2Matrix::from_entries(3, 3, &[(0, 1), (0, 2)]),
    )
    .expect("fixture Δ_μ")
}

/// Identity plus the `(2, 3)` entry.
pub fn example_transition() -> TransitionCandidate {
    let mut m = Gf2Matrix::identity(3);
    m.set(1, 2, true);
    TransitionCandidate::new(example_basis(), example_basis(), m).expect("fixture T")
}

/// `Φ_λ` and `θ` are identities; `Φ_μ({2,3})` sends `a ↦ α + β`, `b ↦ β`.
pub fn example_cover() -> CoverData {
    let mut cover = CoverData::new();
    let dims = [
        (vec![], 0),
        (vec![0], 1),
        (vec![1], 1),
        (vec![2], 1),
        (vec![0, 1], 0),
        (vec![1, 2], 2),
        (vec![0, 1, 2], 1),
    ];
    for (members, dim) in dims {
        cover.insert(Interval::new(members), CoverEntry::identity(dim));
    }
    cover.insert(
        Interval::new([1, 2]),
        CoverEntry {
            phi_domain: Gf2Matrix::identity(2),
            phi_codomain: Gf2Matrix::from_rows(&[&[1, 1], &[0, 1]]),
            theta: Gf2Matrix::identity(2),
        },
    );
    cover
}

/// The 6×6 matrix on `l1 < l2 < l3 < m1 < m2 < m3` with the unknown entry
/// at `(l2, m3)` set to `star`.
pub fn example_singular(star: bool) -> (GradedBasis, Gf2Matrix) {
    let labels = ["l1", "l2", "l3", "m1", "m2", "m3"];
    let degrees = [0, 1, 1, 1, 2, 2];
    let basis = GradedBasis::new(
        FinitePoset::chain(labels),
        labels
            .iter()
            .zip(degrees)
            .enumerate()
            .map(|(i, (l, d))| Generator::new(*l, i, d))
            .collect(),
    )
    .expect("fixture basis");
    let mut entries = vec![(0, 1), (0, 3), (1, 4), (2, 5), (3, 4), (3, 5)];
    if star {
        entries.push((1, 5));
    }
    (basis, Gf2Matrix::from_entries(6, 6, &entries))
}

/// Index-0 block `[1]`, index-1 block `[[1, 1], [0, 1]]`.
pub fn example_blocks() -> BlockTransition {
    let mut blocks = BTreeMap::new();
    blocks.insert(0, Gf2Matrix::identity(1));
    blocks.insert(1, Gf2Matrix::from_rows(&[&[1, 1], &[0, 1]]));
    BlockTransition { blocks }
}

fn morse(points: &[(&str, u32)], incidence: &[(&str, &str, u32)], order: &[&str]) -> MorseData {
    MorseData {
        points: points
            .iter()
            .map(|&(l, k)| CriticalPoint::new(l, k))
            .collect(),
        incidence: incidence
            .iter()
            .map(|&(x, y, n)| (x.into(), y.into(), n))
            .collect(),
        value_order: order.iter().map(|&l| l.into()).collect::<Vec<_>>(),
    }
}

/// Two minima `a`, `b` separated by the maximum `s` on a line.
pub fn double_well() -> MorseData {
    morse(
        &[("a", 0), ("s", 1), ("b", 0)],
        &[("s", "a", 1), ("s", "b", 1)],
        &["a", "b", "s"],
    )
}

/// Height function on a circle: one minimum, one maximum, two cancelling
/// orbits.
pub fn circle() -> MorseData {
    morse(
        &[("min", 0), ("max", 1)],
        &[("max", "min", 2)],
        &["min", "max"],
    )
}

/// Standard height function on the torus.
pub fn torus() -> MorseData {
    morse(
        &[("min", 0), ("s1", 1), ("s2", 1), ("max", 2)],
        &[
            ("s1", "min", 2),
            ("s2", "min", 2),
            ("max", "s1", 2),
            ("max", "s2", 2),
        ],
        &["min", "s1", "s2", "max"],
    )
}

/// Perfect Morse function on the projective plane; every count is 2.
pub fn projective_plane() -> MorseData {
    morse(
        &[("min", 0), ("s", 1), ("max", 2)],
        &[("s", "min", 2), ("max", "s", 2)],
        &["min", "s", "max"],
    )
}
