//! Graded chain complexes over a poset, interval homology and the long
//! exact sequences of adjacent pairs.
//!
//! A [`GradedBasis`] fixes matrix coordinates: generators are sorted by the
//! position of their element in the canonical linear extension of the order,
//! then by degree, then by input position. A [`ConnectionMatrix`] is a square
//! matrix on that basis which lowers degree by one, is strictly upper
//! triangular with respect to the order, and squares to zero.
//!
//! Homology representatives are canonical: per degree, cycles are reduced
//! modulo the reduced echelon form of the boundaries and the remainders are
//! put in reduced echelon form. Class coordinates are read off at the pivots.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::gf2::{Gf2Error, Gf2Matrix, Gf2Vector};
use crate::poset::{AdjacentPair, FinitePoset, Interval, PosetError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error("duplicate generator label `{0}`")]
    DuplicateGenerator(String),
    #[error("generator `{label}` refers to unknown element index {element}")]
    UnknownElement { label: String, element: usize },
    #[error("matrix is {got:?} but the basis has {expected} generators")]
    ShapeMismatch { expected: usize, got: (usize, usize) },
    #[error("not a connection matrix: {0}")]
    Invalid(ValidationReport),
    #[error("pair is not adjacent in the order")]
    NotAdjacent,
    #[error("chain is not a cycle supported on the interval")]
    NotACycle,
    #[error("sequence is not exact at {0}")]
    NotExact(LesNode),
}

/// One generator of `C(p)`: a basis element of the Conley index of `p` in
/// some degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub label: String,
    pub element: usize,
    pub degree: u32,
}

impl Generator {
    pub fn new(label: impl Into<String>, element: usize, degree: u32) -> Self {
        Self {
            label: label.into(),
            element,
            degree,
        }
    }
}

/// Ordered generators of `C = ⊕_p C(p)` together with the order on `P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedBasis {
    order: FinitePoset,
    generators: Vec<Generator>,
}

impl GradedBasis {
    /// Sorts `generators` into canonical position (stable in input order for
    /// ties) and checks labels and element indices.
    pub fn new(order: FinitePoset, mut generators: Vec<Generator>) -> Result<Self, BraidError> {
        for (i, g) in generators.iter().enumerate() {
            if g.element >= order.len() {
                return Err(BraidError::UnknownElement {
                    label: g.label.clone(),
                    element: g.element,
                });
            }
            if generators[..i].iter().any(|h| h.label == g.label) {
                return Err(BraidError::DuplicateGenerator(g.label.clone()));
            }
        }
        let mut position = vec![0; order.len()];
        for (k, e) in order.linear_extension().into_iter().enumerate() {
            position[e] = k;
        }
        generators.sort_by_key(|g| (position[g.element], g.degree));
        Ok(Self { order, generators })
    }

    pub fn order(&self) -> &FinitePoset {
        &self.order
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> &Generator {
        &self.generators[i]
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.label == label)
    }

    pub fn element(&self, i: usize) -> usize {
        self.generators[i].element
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.generators[i].degree
    }

    /// Position of generator `i` among generators of the same element and
    /// degree.
    pub fn local_index(&self, i: usize) -> usize {
        let g = &self.generators[i];
        self.generators[..i]
            .iter()
            .filter(|h| h.element == g.element && h.degree == g.degree)
            .count()
    }

    /// Generator indices lying over the interval, ascending.
    pub fn indices_in(&self, interval: &Interval) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| interval.contains(self.generators[i].element))
            .collect()
    }

    /// `(element, degree)` of every generator, in order.
    pub fn profile(&self) -> Vec<(usize, u32)> {
        self.generators.iter().map(|g| (g.element, g.degree)).collect()
    }

    /// Same order, only the generators over `interval`.
    pub fn restrict(&self, interval: &Interval) -> GradedBasis {
        GradedBasis {
            order: self.order.clone(),
            generators: self
                .indices_in(interval)
                .into_iter()
                .map(|i| self.generators[i].clone())
                .collect(),
        }
    }

    fn max_degree(&self) -> Option<u32> {
        self.generators.iter().map(|g| g.degree).max()
    }
}

/// Offending entries of a candidate connection matrix, by check.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    /// Nonzero `(row, col)` with `deg(row) != deg(col) - 1`.
    pub degree: Vec<(usize, usize)>,
    /// Nonzero `(row, col)` whose elements are not strictly ordered.
    pub triangularity: Vec<(usize, usize)>,
    /// Nonzero entries of the square.
    pub boundary: Vec<(usize, usize)>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.degree.is_empty() && self.triangularity.is_empty() && self.boundary.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let checks = [
            ("degree -1", &self.degree),
            ("strict triangularity", &self.triangularity),
            ("square zero", &self.boundary),
        ];
        let mut first = true;
        for (name, bad) in checks {
            if !first {
                f.write_str("; ")?;
            }
            first = false;
            match bad.first() {
                None => write!(f, "{name}: ok")?,
                Some((r, c)) => write!(f, "{name}: fails at ({r}, {c})")?,
            }
        }
        Ok(())
    }
}

/// Runs the three connection-matrix checks without consuming anything.
pub fn check_connection_matrix(
    basis: &GradedBasis,
    matrix: &Gf2Matrix,
) -> Result<ValidationReport, BraidError> {
    let n = basis.len();
    if matrix.shape() != (n, n) {
        return Err(BraidError::ShapeMismatch {
            expected: n,
            got: matrix.shape(),
        });
    }
    let mut report = ValidationReport::default();
    for (i, j) in matrix.entries() {
        if basis.degree(i) + 1 != basis.degree(j) {
            report.degree.push((i, j));
        }
        if !basis.order().less(basis.element(i), basis.element(j)) {
            report.triangularity.push((i, j));
        }
    }
    report.boundary = matrix.mul(matrix)?.entries();
    Ok(report)
}

/// Degree −1, strictly upper triangular boundary map on a graded basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionMatrix {
    basis: GradedBasis,
    matrix: Gf2Matrix,
}

/// Validates a candidate and wraps it; failures carry the full report.
pub fn validate_connection_matrix(
    basis: GradedBasis,
    matrix: Gf2Matrix,
) -> Result<ConnectionMatrix, BraidError> {
    let report = check_connection_matrix(&basis, &matrix)?;
    if report.is_valid() {
        Ok(ConnectionMatrix { basis, matrix })
    } else {
        Err(BraidError::Invalid(report))
    }
}

impl ConnectionMatrix {
    pub fn new(basis: GradedBasis, matrix: Gf2Matrix) -> Result<Self, BraidError> {
        validate_connection_matrix(basis, matrix)
    }

    /// Zero differential on `basis`.
    pub fn zero(basis: GradedBasis) -> Self {
        let n = basis.len();
        Self {
            basis,
            matrix: Gf2Matrix::zeros(n, n),
        }
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn matrix(&self) -> &Gf2Matrix {
        &self.matrix
    }

    pub fn order(&self) -> &FinitePoset {
        self.basis.order()
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Principal submatrix on the generators over `interval`.
    pub fn restrict(&self, interval: &Interval) -> Result<ConnectionMatrix, BraidError> {
        if !self.order().is_interval(interval.members()) {
            return Err(PosetError::NotInterval(interval.members().to_vec()).into());
        }
        let idx = self.basis.indices_in(interval);
        Ok(ConnectionMatrix {
            basis: self.basis.restrict(interval),
            matrix: self.matrix.submatrix(&idx, &idx),
        })
    }

    /// Block `Δ(rows over p, cols over q)` in generator order.
    pub fn block(&self, p: usize, q: usize) -> Gf2Matrix {
        let rows = self.basis.indices_in(&Interval::singleton(p));
        let cols = self.basis.indices_in(&Interval::singleton(q));
        self.matrix.submatrix(&rows, &cols)
    }

    pub fn homology(&self, interval: &Interval) -> Result<HomologyResult, BraidError> {
        if !self.order().is_interval(interval.members()) {
            return Err(PosetError::NotInterval(interval.members().to_vec()).into());
        }
        Ok(HomologyResult::compute(self, interval))
    }

    /// Long exact sequence of the adjacent pair, checked for exactness.
    pub fn les(&self, pair: &AdjacentPair) -> Result<LesResult, BraidError> {
        let les = self.les_unchecked(pair)?;
        if let Some(node) = les.first_inexact_node() {
            return Err(BraidError::NotExact(node));
        }
        Ok(les)
    }

    /// Long exact sequence maps without the exactness gate.
    pub fn les_unchecked(&self, pair: &AdjacentPair) -> Result<LesResult, BraidError> {
        if !self
            .order()
            .is_adjacent(pair.attractor(), pair.repeller())
        {
            return Err(BraidError::NotAdjacent);
        }
        let h_i = self.homology(pair.attractor())?;
        let h_ij = self.homology(&pair.union())?;
        let h_j = self.homology(pair.repeller())?;

        let inclusion = induced_matrix(&h_i, &h_ij, |z| Ok(z.clone()))?;
        let projection = induced_matrix(&h_ij, &h_j, |z| Ok(self.project(z, pair.repeller())))?;
        let connecting = induced_matrix(&h_j, &h_i, |z| {
            // z is already a chain in C(IJ); apply Δ and keep the C(I) part.
            let dz = self.matrix.mul_vec(z)?;
            Ok(self.project(&dz, pair.attractor()))
        })?;
        Ok(LesResult {
            pair: pair.clone(),
            homology_attractor: h_i,
            homology_union: h_ij,
            homology_repeller: h_j,
            inclusion,
            projection,
            connecting,
        })
    }

    fn project(&self, chain: &Gf2Vector, interval: &Interval) -> Gf2Vector {
        let mut out = Gf2Vector::zeros(chain.len());
        for i in chain.ones() {
            if interval.contains(self.basis.element(i)) {
                out.set(i, true);
            }
        }
        out
    }
}

/// Matrix of the map on homology induced by a chain-level map `f` (taking
/// global chain vectors to global chain vectors).
pub(crate) fn induced_matrix<F>(
    source: &HomologyResult,
    target: &HomologyResult,
    mut f: F,
) -> Result<Gf2Matrix, BraidError>
where
    F: FnMut(&Gf2Vector) -> Result<Gf2Vector, BraidError>,
{
    let mut cols = Vec::with_capacity(source.total_dim());
    for class in source.classes() {
        let image = f(&class.chain)?;
        cols.push(target.coordinates(&image)?);
    }
    Ok(Gf2Matrix::from_columns(target.total_dim(), &cols))
}

/// Per-degree homology data, in local coordinates of the degree-`k`
/// generators of `C(I)`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct DegreeData {
    degree: u32,
    /// Global generator indices of degree `k` over the interval.
    generators: Vec<usize>,
    cycles_dim: usize,
    /// Reduced echelon rows of the boundaries, with pivots.
    boundaries: Vec<(usize, Gf2Vector)>,
    /// Reduced echelon rows of the class representatives, with pivots.
    representatives: Vec<(usize, Gf2Vector)>,
}

impl DegreeData {
    fn reduce_mod_boundaries(&self, v: &mut Gf2Vector) {
        for (p, row) in &self.boundaries {
            if v.get(*p) {
                v.add_assign(row);
            }
        }
    }
}

fn echelon_rows(len: usize, vectors: &[Gf2Vector]) -> Vec<(usize, Gf2Vector)> {
    let m = Gf2Matrix::from_row_vectors(len, vectors);
    let (r, pivots) = m.rref();
    pivots
        .into_iter()
        .enumerate()
        .map(|(i, p)| (p, r.row(i)))
        .collect()
}

/// A homology class with its canonical cycle representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyClass {
    pub degree: u32,
    /// Representative cycle in global chain coordinates.
    pub chain: Gf2Vector,
}

/// Homology of `C(I)` with canonical representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyResult {
    interval: Interval,
    chain_len: usize,
    degrees: Vec<DegreeData>,
    classes: Vec<HomologyClass>,
}

impl HomologyResult {
    fn compute(delta: &ConnectionMatrix, interval: &Interval) -> Self {
        let basis = delta.basis();
        let n = basis.len();
        let over = basis.indices_in(interval);
        let top = basis.max_degree().unwrap_or(0);
        let in_degree = |k: u32| -> Vec<usize> {
            over.iter().copied().filter(|&i| basis.degree(i) == k).collect()
        };

        let mut degrees = Vec::new();
        for k in 0..=top {
            let gens = in_degree(k);
            if gens.is_empty() {
                continue;
            }
            let cycles = if k == 0 {
                Gf2Matrix::identity(gens.len())
            } else {
                delta.matrix().submatrix(&in_degree(k - 1), &gens).kernel_basis()
            };
            let bounds = delta.matrix().submatrix(&gens, &in_degree(k + 1)).image_basis();
            let boundaries = echelon_rows(gens.len(), &bounds.columns());
            let mut data = DegreeData {
                degree: k,
                generators: gens,
                cycles_dim: cycles.cols(),
                boundaries,
                representatives: Vec::new(),
            };
            let reduced: Vec<Gf2Vector> = cycles
                .columns()
                .into_iter()
                .map(|mut z| {
                    data.reduce_mod_boundaries(&mut z);
                    z
                })
                .collect();
            data.representatives = echelon_rows(data.generators.len(), &reduced);
            degrees.push(data);
        }

        let classes = degrees
            .iter()
            .flat_map(|d| {
                d.representatives.iter().map(move |(_, rep)| HomologyClass {
                    degree: d.degree,
                    chain: rep.scatter(n, &d.generators),
                })
            })
            .collect();
        Self {
            interval: interval.clone(),
            chain_len: n,
            degrees,
            classes,
        }
    }

    pub fn interval(&self) -> &Interval {
        &self.interval
    }

    /// `dim H_k(I)`; zero for degrees without generators.
    pub fn dim(&self, degree: u32) -> usize {
        self.degrees
            .iter()
            .find(|d| d.degree == degree)
            .map_or(0, |d| d.representatives.len())
    }

    /// `(k, dim H_k)` for every degree carrying generators.
    pub fn dims(&self) -> BTreeMap<u32, usize> {
        self.degrees
            .iter()
            .map(|d| (d.degree, d.representatives.len()))
            .collect()
    }

    /// `(k, dim C_k(I))` for every degree carrying generators.
    pub fn chain_dims(&self) -> BTreeMap<u32, usize> {
        self.degrees
            .iter()
            .map(|d| (d.degree, d.generators.len()))
            .collect()
    }

    pub fn cycles_dim(&self, degree: u32) -> usize {
        self.degrees
            .iter()
            .find(|d| d.degree == degree)
            .map_or(0, |d| d.cycles_dim)
    }

    pub fn boundaries_dim(&self, degree: u32) -> usize {
        self.degrees
            .iter()
            .find(|d| d.degree == degree)
            .map_or(0, |d| d.boundaries.len())
    }

    pub fn total_dim(&self) -> usize {
        self.classes.len()
    }

    /// Classes in basis order: by degree, then by representative pivot.
    pub fn classes(&self) -> &[HomologyClass] {
        &self.classes
    }

    /// Degree of each basis class, in order.
    pub fn class_degrees(&self) -> Vec<u32> {
        self.classes.iter().map(|c| c.degree).collect()
    }

    /// Boundary basis in global chain coordinates.
    pub fn boundary_basis(&self) -> Vec<(u32, Gf2Vector)> {
        self.degrees
            .iter()
            .flat_map(|d| {
                d.boundaries
                    .iter()
                    .map(move |(_, b)| (d.degree, b.scatter(self.chain_len, &d.generators)))
            })
            .collect()
    }

    /// Coordinates of the class of a cycle in the canonical basis.
    ///
    /// The chain must be supported over the interval and be a cycle in every
    /// degree; otherwise `NotACycle`.
    pub fn coordinates(&self, chain: &Gf2Vector) -> Result<Gf2Vector, BraidError> {
        if chain.len() != self.chain_len {
            return Err(BraidError::NotACycle);
        }
        let mut covered = vec![false; self.chain_len];
        let mut coords = Vec::with_capacity(self.total_dim());
        for d in &self.degrees {
            for &g in &d.generators {
                covered[g] = true;
            }
            let mut v = chain.select(&d.generators);
            d.reduce_mod_boundaries(&mut v);
            let mut rest = v.clone();
            for (p, rep) in &d.representatives {
                let bit = v.get(*p);
                if bit {
                    rest.add_assign(rep);
                }
                coords.push(bit);
            }
            if !rest.is_zero() {
                return Err(BraidError::NotACycle);
            }
        }
        if chain.ones().any(|i| !covered[i]) {
            return Err(BraidError::NotACycle);
        }
        Ok(Gf2Vector::from_bits(coords))
    }

    /// Whether the chain is a boundary in `C(I)`.
    pub fn is_boundary(&self, chain: &Gf2Vector) -> bool {
        self.coordinates(chain).is_ok_and(|c| c.is_zero())
    }

    /// Sum of `(-1)^k dim` over the homology; equals the chain-level value.
    pub fn euler_characteristic(&self) -> i64 {
        self.degrees
            .iter()
            .map(|d| sign(d.degree) * d.representatives.len() as i64)
            .sum()
    }

    pub fn chain_euler_characteristic(&self) -> i64 {
        self.degrees
            .iter()
            .map(|d| sign(d.degree) * d.generators.len() as i64)
            .sum()
    }
}

fn sign(k: u32) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Node of the long exact sequence of a pair `(I, J)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LesNode {
    /// `H(J) → H(I) → H(IJ)`.
    Attractor,
    /// `H(I) → H(IJ) → H(J)`.
    Union,
    /// `H(IJ) → H(J) → H(I)`.
    Repeller,
}

impl fmt::Display for LesNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LesNode::Attractor => "H(I)",
            LesNode::Union => "H(IJ)",
            LesNode::Repeller => "H(J)",
        })
    }
}

/// Maps of `… → H(I) → H(IJ) → H(J) → H(I) → …` in canonical bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LesResult {
    pub pair: AdjacentPair,
    pub homology_attractor: HomologyResult,
    pub homology_union: HomologyResult,
    pub homology_repeller: HomologyResult,
    /// `i_*: H(I) → H(IJ)`.
    pub inclusion: Gf2Matrix,
    /// `p_*: H(IJ) → H(J)`.
    pub projection: Gf2Matrix,
    /// `δ: H_k(J) → H_{k-1}(I)`, all degrees at once.
    pub connecting: Gf2Matrix,
}

impl LesResult {
    fn exact_at(incoming: &Gf2Matrix, outgoing: &Gf2Matrix, dim: usize) -> bool {
        let composite_zero = outgoing.mul(incoming).is_ok_and(|m| m.is_zero());
        composite_zero && incoming.rank() + outgoing.rank() == dim
    }

    pub fn exact_at_attractor(&self) -> bool {
        Self::exact_at(
            &self.connecting,
            &self.inclusion,
            self.homology_attractor.total_dim(),
        )
    }

    pub fn exact_at_union(&self) -> bool {
        Self::exact_at(
            &self.inclusion,
            &self.projection,
            self.homology_union.total_dim(),
        )
    }

    pub fn exact_at_repeller(&self) -> bool {
        Self::exact_at(
            &self.projection,
            &self.connecting,
            self.homology_repeller.total_dim(),
        )
    }

    pub fn first_inexact_node(&self) -> Option<LesNode> {
        if !self.exact_at_attractor() {
            Some(LesNode::Attractor)
        } else if !self.exact_at_union() {
            Some(LesNode::Union)
        } else if !self.exact_at_repeller() {
            Some(LesNode::Repeller)
        } else {
            None
        }
    }

    pub fn is_exact(&self) -> bool {
        self.first_inexact_node().is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn iv(m: &[usize]) -> Interval {
        Interval::new(m.iter().copied())
    }

    #[test]
    fn example_matrices_are_valid() {
        let lambda = fixtures::example_delta_lambda();
        let mu = fixtures::example_delta_mu();
        assert_eq!(lambda.matrix().entries(), [(0, 1)]);
        assert_eq!(mu.matrix().entries(), [(0, 1), (0, 2)]);
    }

    #[test]
    fn singular_matrix_forces_star() {
        let (basis, m) = fixtures::example_singular(false);
        let report = check_connection_matrix(&basis, &m).unwrap();
        assert!(report.degree.is_empty());
        assert!(report.triangularity.is_empty());
        assert_eq!(report.boundary, [(0, 5)]);
        assert!(matches!(
            validate_connection_matrix(basis, m),
            Err(BraidError::Invalid(_))
        ));
        let (basis, m) = fixtures::example_singular(true);
        assert!(validate_connection_matrix(basis, m).is_ok());
    }

    #[test]
    fn degree_and_order_violations_are_located() {
        let basis = fixtures::example_basis();
        // g2 -> g3 is degree 1 -> degree 1
        let m = Gf2Matrix::from_entries(3, 3, &[(1, 2)]);
        let r = check_connection_matrix(&basis, &m).unwrap();
        assert_eq!(r.degree, [(1, 2)]);
        assert!(r.triangularity.is_empty());
        // lower triangular entry g2 <- g1 is both a degree and order violation
        let m = Gf2Matrix::from_entries(3, 3, &[(1, 0)]);
        let r = check_connection_matrix(&basis, &m).unwrap();
        assert_eq!(r.triangularity, [(1, 0)]);
        assert!(matches!(
            check_connection_matrix(&basis, &Gf2Matrix::zeros(2, 2)),
            Err(BraidError::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn unrelated_blocks_must_vanish() {
        let order = FinitePoset::antichain(["a", "b"]);
        let basis = GradedBasis::new(
            order,
            vec![Generator::new("x", 0, 0), Generator::new("y", 1, 1)],
        )
        .unwrap();
        let m = Gf2Matrix::from_entries(2, 2, &[(0, 1)]);
        let r = check_connection_matrix(&basis, &m).unwrap();
        assert_eq!(r.triangularity, [(0, 1)]);
    }

    #[test]
    fn generators_are_sorted_canonically() {
        let order = FinitePoset::chain(["1", "2"]);
        let basis = GradedBasis::new(
            order,
            vec![
                Generator::new("c", 1, 0),
                Generator::new("b", 0, 2),
                Generator::new("a", 0, 1),
                Generator::new("a2", 0, 1),
            ],
        )
        .unwrap();
        let labels: Vec<&str> = basis.generators().iter().map(|g| g.label.as_str()).collect();
        assert_eq!(labels, ["a", "a2", "b", "c"]);
        assert_eq!(basis.local_index(1), 1);
        assert_eq!(basis.local_index(2), 0);
    }

    #[test]
    fn restriction() {
        let lambda = fixtures::example_delta_lambda();
        let r = lambda.restrict(&iv(&[1, 2])).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.matrix().is_zero());
        assert!(lambda.restrict(&Interval::empty()).unwrap().is_empty());
        assert_eq!(lambda.restrict(&iv(&[0, 1, 2])).unwrap(), lambda);
        assert!(lambda.restrict(&iv(&[0, 2])).is_err());
    }

    #[test]
    fn homology_examples() {
        let lambda = fixtures::example_delta_lambda();
        let mu = fixtures::example_delta_mu();
        for p in 0..3 {
            let h = lambda.homology(&Interval::singleton(p)).unwrap();
            assert_eq!(h.total_dim(), 1);
            assert_eq!(h.classes()[0].chain, Gf2Vector::unit(3, p));
        }
        let h = lambda.homology(&iv(&[0, 1, 2])).unwrap();
        assert_eq!(h.dim(0), 0);
        assert_eq!(h.dim(1), 1);
        assert_eq!(h.classes()[0].chain, Gf2Vector::unit(3, 2));

        let h = mu.homology(&iv(&[0, 1, 2])).unwrap();
        assert_eq!(h.dim(0), 0);
        assert_eq!(h.dim(1), 1);
        assert_eq!(h.classes()[0].chain, Gf2Vector::from_support(3, &[1, 2]));
        assert_eq!(h.euler_characteristic(), h.chain_euler_characteristic());
    }

    #[test]
    fn coordinates_reject_non_cycles() {
        let mu = fixtures::example_delta_mu();
        let h = mu.homology(&iv(&[0, 1, 2])).unwrap();
        assert_eq!(
            h.coordinates(&Gf2Vector::unit(3, 1)),
            Err(BraidError::NotACycle)
        );
        // g1 is a boundary
        assert!(h.is_boundary(&Gf2Vector::unit(3, 0)));
        let h23 = mu.homology(&iv(&[1, 2])).unwrap();
        assert_eq!(
            h23.coordinates(&Gf2Vector::unit(3, 0)),
            Err(BraidError::NotACycle)
        );
    }

    #[test]
    fn les_connecting_map() {
        let mu = fixtures::example_delta_mu();
        let order = mu.order().clone();
        let pair = order.adjacent_pair(iv(&[0]), iv(&[1, 2])).unwrap();
        let les = mu.les(&pair).unwrap();
        assert_eq!(les.homology_union.dim(0), 0);
        // δ sends g2 -> g1 and g3 -> g1
        assert_eq!(les.connecting, Gf2Matrix::from_rows(&[&[1, 1]]));
        assert!(les.is_exact());
    }

    #[test]
    fn les_with_empty_repeller() {
        let mu = fixtures::example_delta_mu();
        let full = iv(&[0, 1, 2]);
        let pair = mu
            .order()
            .adjacent_pair(full.clone(), Interval::empty())
            .unwrap();
        let les = mu.les(&pair).unwrap();
        let d = les.homology_attractor.total_dim();
        assert_eq!(les.inclusion, Gf2Matrix::identity(d));
        assert!(les.projection.is_zero());
        assert!(les.connecting.is_zero());
    }

    #[test]
    fn les_of_split_complex() {
        let zero = ConnectionMatrix::zero(fixtures::example_basis());
        for pair in zero.order().adjacent_pairs() {
            let les = zero.les(&pair).unwrap();
            assert!(les.connecting.is_zero());
            assert_eq!(
                les.homology_union.total_dim(),
                les.homology_attractor.total_dim() + les.homology_repeller.total_dim()
            );
        }
    }

    #[test]
    fn les_rejects_non_adjacent() {
        let mu = fixtures::example_delta_mu();
        let order = FinitePoset::chain(["1", "2", "3"]);
        // ({2},{1}) has the repeller below the attractor
        assert!(order.adjacent_pair(iv(&[1]), iv(&[0])).is_none());
        let pair = FinitePoset::antichain(["1", "2", "3"])
            .adjacent_pair(iv(&[1]), iv(&[0]))
            .unwrap();
        assert_eq!(mu.les(&pair), Err(BraidError::NotAdjacent));
    }
}
