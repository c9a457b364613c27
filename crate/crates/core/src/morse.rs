//! Morse chain complexes from critical-point data, and block-form
//! transition matrices for gradient-like flows without periodic orbits.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::braid::{BraidError, ConnectionMatrix, Generator, GradedBasis};
use crate::gf2::{Gf2Error, Gf2Matrix};
use crate::poset::FinitePoset;
use crate::transition::{enumerate_gttm, CoverData, TransitionCandidate, TransitionError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorseError {
    #[error("unknown critical point `{0}`")]
    UnknownPoint(String),
    #[error("duplicate critical point `{0}`")]
    DuplicatePoint(String),
    #[error("value order must list every critical point exactly once")]
    ValueOrder,
    #[error("incidence n({x}, {y}) joins indices that are not consecutive")]
    IncidenceIndex { x: String, y: String },
    #[error("incidence n({x}, {y}) is nonzero but {y} is not below {x} in value order")]
    Uphill { x: String, y: String },
    #[error("inconsistent incidence data: Δ² ≠ 0 at ({row}, {col})")]
    NotABoundary { row: String, col: String },
    #[error("block for index {index} is {got:?}, expected {expected}x{expected}")]
    BlockShape {
        index: u32,
        expected: usize,
        got: (usize, usize),
    },
    #[error("missing block for index {0}")]
    MissingBlock(u32),
    #[error("block for index {index} is not unit upper triangular at ({row}, {col})")]
    BlockNotTriangular { index: u32, row: usize, col: usize },
    #[error("interleaving fails at index {index}: T_(l-1) Δ_dom ≠ Δ_cod T_l at ({row}, {col})")]
    Interleaving { index: u32, row: usize, col: usize },
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Transition(#[from] TransitionError),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalPoint {
    pub label: String,
    pub index: u32,
}

impl CriticalPoint {
    pub fn new(label: impl Into<String>, index: u32) -> Self {
        Self {
            label: label.into(),
            index,
        }
    }
}

/// Critical points, connecting-orbit counts `n(x, y)` for
/// `index(x) = index(y) + 1`, and the critical points sorted by value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorseData {
    pub points: Vec<CriticalPoint>,
    /// `(x, y, n(x, y))`; only the parity matters.
    pub incidence: Vec<(String, String, u32)>,
    /// Labels by increasing critical value.
    pub value_order: Vec<String>,
}

impl MorseData {
    fn point(&self, label: &str) -> Result<&CriticalPoint, MorseError> {
        self.points
            .iter()
            .find(|p| p.label == label)
            .ok_or_else(|| MorseError::UnknownPoint(label.into()))
    }
}

/// `Δ_k(x) = Σ_y n(x, y) y` on generators ordered by critical value.
pub fn build_morse_complex(data: &MorseData) -> Result<ConnectionMatrix, MorseError> {
    for (i, p) in data.points.iter().enumerate() {
        if data.points[..i].iter().any(|q| q.label == p.label) {
            return Err(MorseError::DuplicatePoint(p.label.clone()));
        }
    }
    let mut sorted_order = data.value_order.clone();
    sorted_order.sort();
    let mut sorted_points: Vec<String> = data.points.iter().map(|p| p.label.clone()).collect();
    sorted_points.sort();
    if sorted_order != sorted_points {
        return Err(MorseError::ValueOrder);
    }

    let order = FinitePoset::chain(data.value_order.iter().cloned());
    let position = |label: &str| data.value_order.iter().position(|l| l == label);
    let generators = data
        .points
        .iter()
        .map(|p| {
            Generator::new(
                p.label.clone(),
                position(&p.label).expect("checked above"),
                p.index,
            )
        })
        .collect();
    let basis = GradedBasis::new(order, generators)?;

    let n = basis.len();
    let mut matrix = Gf2Matrix::zeros(n, n);
    for (x, y, count) in &data.incidence {
        let (px, py) = (data.point(x)?, data.point(y)?);
        if px.index != py.index + 1 {
            return Err(MorseError::IncidenceIndex {
                x: x.clone(),
                y: y.clone(),
            });
        }
        if count % 2 == 0 {
            continue;
        }
        if position(y) >= position(x) {
            return Err(MorseError::Uphill {
                x: x.clone(),
                y: y.clone(),
            });
        }
        let (row, col) = (
            basis.index_of(y).expect("known point"),
            basis.index_of(x).expect("known point"),
        );
        matrix.flip(row, col);
    }
    if let Some(&(r, c)) = matrix.mul(&matrix)?.entries().first() {
        return Err(MorseError::NotABoundary {
            row: basis.generator(r).label.clone(),
            col: basis.generator(c).label.clone(),
        });
    }
    Ok(ConnectionMatrix::new(basis, matrix)?)
}

/// Classical topological transition matrices, one square block per Morse
/// index, in generator order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BlockTransition {
    pub blocks: BTreeMap<u32, Gf2Matrix>,
}

impl BlockTransition {
    pub fn identity(basis: &GradedBasis) -> Self {
        let mut blocks = BTreeMap::new();
        for g in basis.generators() {
            *blocks.entry(g.degree).or_insert(0usize) += 1;
        }
        Self {
            blocks: blocks
                .into_iter()
                .map(|(k, n)| (k, Gf2Matrix::identity(n)))
                .collect(),
        }
    }
}

fn indices_of_degree(basis: &GradedBasis, k: u32) -> Vec<usize> {
    (0..basis.len()).filter(|&i| basis.degree(i) == k).collect()
}

/// Assembles `diag(T_top,0, …, T_top,k)` and checks
/// `T_top,l-1 · Δ_dom(l, l-1) = Δ_cod(l, l-1) · T_top,l` for every `l`.
pub fn assemble_block_gttm(
    blocks: &BlockTransition,
    domain: &ConnectionMatrix,
    codomain: &ConnectionMatrix,
) -> Result<TransitionCandidate, MorseError> {
    let basis = domain.basis();
    let n = basis.len();
    let mut degrees: Vec<u32> = basis.generators().iter().map(|g| g.degree).collect();
    degrees.sort_unstable();
    degrees.dedup();

    let mut matrix = Gf2Matrix::zeros(n, n);
    for &k in &degrees {
        let idx = indices_of_degree(basis, k);
        let block = blocks.blocks.get(&k).ok_or(MorseError::MissingBlock(k))?;
        if block.shape() != (idx.len(), idx.len()) {
            return Err(MorseError::BlockShape {
                index: k,
                expected: idx.len(),
                got: block.shape(),
            });
        }
        for a in 0..idx.len() {
            for b in 0..idx.len() {
                let bit = block.get(a, b);
                let (ea, eb) = (basis.element(idx[a]), basis.element(idx[b]));
                let allowed = if a == b {
                    bit
                } else {
                    !bit || basis.order().less(ea, eb)
                };
                if !allowed {
                    return Err(MorseError::BlockNotTriangular {
                        index: k,
                        row: a,
                        col: b,
                    });
                }
                if bit {
                    matrix.set(idx[a], idx[b], true);
                }
            }
        }
    }

    for &l in degrees.iter().filter(|&&l| l > 0) {
        let upper = indices_of_degree(basis, l);
        let lower = indices_of_degree(basis, l - 1);
        if lower.is_empty() {
            continue;
        }
        let t_upper = matrix.submatrix(&upper, &upper);
        let t_lower = matrix.submatrix(&lower, &lower);
        let lhs = t_lower.mul(&domain.matrix().submatrix(&lower, &upper))?;
        let rhs = codomain.matrix().submatrix(&lower, &upper).mul(&t_upper)?;
        if let Some(&(row, col)) = lhs.add(&rhs)?.entries().first() {
            return Err(MorseError::Interleaving {
                index: l,
                row: lower[row],
                col: upper[col],
            });
        }
    }
    Ok(TransitionCandidate::new(
        domain.basis().clone(),
        codomain.basis().clone(),
        matrix,
    )?)
}

/// Result of [`verify_unique_gttm`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniquenessReport {
    /// `log₂` of the number of GTTMs; `None` when there are none.
    pub free_dims: Option<usize>,
    /// The particular solution, when one exists.
    pub solution: Option<TransitionCandidate>,
    /// Whether the particular solution only joins generators of equal degree.
    pub block_diagonal: bool,
}

impl UniquenessReport {
    pub fn is_unique(&self) -> bool {
        self.free_dims == Some(0)
    }
}

pub fn verify_unique_gttm(
    domain: &ConnectionMatrix,
    codomain: &ConnectionMatrix,
    cover: &CoverData,
) -> Result<UniquenessReport, MorseError> {
    let set = enumerate_gttm(domain, codomain, cover)?;
    let solution = set.particular();
    let block_diagonal = solution.as_ref().is_some_and(|t| {
        t.matrix()
            .entries()
            .iter()
            .all(|&(i, j)| t.codomain().degree(i) == t.domain().degree(j))
    });
    Ok(UniquenessReport {
        free_dims: set.free_dims(),
        solution,
        block_diagonal,
    })
}
