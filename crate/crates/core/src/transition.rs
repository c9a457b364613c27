//! Generalized topological transition matrices.
//!
//! A transition candidate `T: C_dom → C_cod` is checked against two connection
//! matrices and against [`CoverData`]: per interval isomorphisms `Φ_dom(I)`,
//! `Φ_cod(I)` from interval homology to an abstract braid `G(I)`, and an
//! isomorphism `θ(I)` between the abstract braids. `T` covers `θ` when
//! `Φ_cod(I) · T̂(I) = θ(I) · Φ_dom(I)` for every covered interval, where `T̂(I)`
//! is the map `T(I)` induces on homology.
//!
//! The braid maps of `G` are not supplied separately: each side's `G` braid is
//! the transport of its `HΔ` braid along `Φ`, so naturality of the cover data
//! reduces to `Φ_cod⁻¹ θ Φ_dom` commuting with both long exact sequences.
//!
//! [`enumerate_gttm`] turns the chain map and covering conditions into one
//! affine system over the free entries of `T` and returns the whole solution
//! set.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::braid::{BraidError, ConnectionMatrix, GradedBasis, HomologyResult};
use crate::gf2::{solve_affine, AffineSolutionSet, Gf2Error, Gf2Matrix, Gf2Vector};
use crate::poset::{FinitePoset, Interval, PosetError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransitionError {
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("bases are not compatible: {0}")]
    BasisMismatch(&'static str),
    #[error("T is not a chain map on {interval:?}: first mismatch at ({row}, {col})")]
    NotChainMap {
        interval: Interval,
        row: usize,
        col: usize,
    },
    #[error("invalid cover data: {0}")]
    Cover(CoverError),
    #[error("hypothesis GTTM(<_m) ≠ ∅ violated: the solution set is empty")]
    EmptySolutionSet,
    #[error("({p}, {q}) is not an adjacent pair of singletons")]
    NotAdjacentSingletons { p: String, q: String },
    #[error("every member has a nonzero ({p}, {q}) block but the minimal order has no chain {p} < … < {q}")]
    NoWitnessChain { p: String, q: String },
    #[error("T has a non-identity diagonal block or a lower entry at ({row}, {col})")]
    NotInvertible { row: usize, col: usize },
}

impl From<CoverError> for TransitionError {
    fn from(e: CoverError) -> Self {
        TransitionError::Cover(e)
    }
}

/// Which of the three cover matrices a diagnostic refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverMap {
    PhiDomain,
    PhiCodomain,
    Theta,
}

impl fmt::Display for CoverMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoverMap::PhiDomain => "phi_dom",
            CoverMap::PhiCodomain => "phi_cod",
            CoverMap::Theta => "theta",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("{map} on {interval:?} is {got:?}, expected {expected}x{expected}")]
    Dimension {
        interval: Interval,
        map: CoverMap,
        expected: usize,
        got: (usize, usize),
    },
    #[error("interval homology differs between the two sides on {0:?}")]
    GradedDims(Interval),
    #[error("{map} on {interval:?} is not invertible")]
    NotInvertible { interval: Interval, map: CoverMap },
    #[error("{map} on {interval:?} does not preserve degree")]
    NotGraded { interval: Interval, map: CoverMap },
    #[error("cover is not natural for the pair ({attractor:?}, {repeller:?}) at {map}")]
    Naturality {
        attractor: Interval,
        repeller: Interval,
        map: &'static str,
    },
    #[error("interval {0:?} is not an interval of the order")]
    NotInterval(Interval),
}

/// Degree-0 map `T: C_dom → C_cod` between two graded bases over the same
/// order and with the same `(element, degree)` profile. Rows index the
/// codomain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionCandidate {
    domain: GradedBasis,
    codomain: GradedBasis,
    matrix: Gf2Matrix,
}

impl TransitionCandidate {
    pub fn new(
        domain: GradedBasis,
        codomain: GradedBasis,
        matrix: Gf2Matrix,
    ) -> Result<Self, TransitionError> {
        compatible(&domain, &codomain)?;
        if matrix.shape() != (codomain.len(), domain.len()) {
            return Err(TransitionError::BasisMismatch("matrix shape"));
        }
        Ok(Self {
            domain,
            codomain,
            matrix,
        })
    }

    pub fn identity(basis: GradedBasis) -> Self {
        let n = basis.len();
        Self {
            domain: basis.clone(),
            codomain: basis,
            matrix: Gf2Matrix::identity(n),
        }
    }

    pub fn domain(&self) -> &GradedBasis {
        &self.domain
    }

    pub fn codomain(&self) -> &GradedBasis {
        &self.codomain
    }

    pub fn matrix(&self) -> &Gf2Matrix {
        &self.matrix
    }

    pub fn order(&self) -> &FinitePoset {
        self.domain.order()
    }

    /// Block `T(rows over p, cols over q)`.
    pub fn block(&self, p: usize, q: usize) -> Gf2Matrix {
        let rows = self.codomain.indices_in(&Interval::singleton(p));
        let cols = self.domain.indices_in(&Interval::singleton(q));
        self.matrix.submatrix(&rows, &cols)
    }

    /// Verifies degree 0, `≤`-triangularity and identity diagonal blocks
    /// against the candidate's own order.
    pub fn check_shape(&self) -> ShapeReport {
        self.check_shape_against(self.order())
            .expect("a candidate's own order has its element set")
    }

    /// Same as [`Self::check_shape`] against another order on the same
    /// elements, e.g. a filtration order.
    pub fn check_shape_against(&self, order: &FinitePoset) -> Result<ShapeReport, TransitionError> {
        if order.labels() != self.order().labels() {
            return Err(PosetError::ElementMismatch.into());
        }
        let mut report = ShapeReport::default();
        for i in 0..self.codomain.len() {
            for j in 0..self.domain.len() {
                let bit = self.matrix.get(i, j);
                let (p, q) = (self.codomain.element(i), self.domain.element(j));
                if p == q {
                    if bit != (i == j) {
                        report.violations.push(ShapeViolation::Diagonal { row: i, col: j });
                    }
                    continue;
                }
                if !bit {
                    continue;
                }
                if self.codomain.degree(i) != self.domain.degree(j) {
                    report.violations.push(ShapeViolation::Degree { row: i, col: j });
                }
                if !order.less(p, q) {
                    report.violations.push(ShapeViolation::Order { row: i, col: j });
                }
            }
        }
        Ok(report)
    }

    /// `T₂ ∘ T₁` for `T₁ = self: λ → μ` and `T₂ = next: μ → ν`.
    pub fn compose(&self, next: &TransitionCandidate) -> Result<Self, TransitionError> {
        compatible(&self.codomain, &next.domain)?;
        Ok(Self {
            domain: self.domain.clone(),
            codomain: next.codomain.clone(),
            matrix: next.matrix.mul(&self.matrix)?,
        })
    }

    /// Inverse, which exists whenever the shape check passes.
    pub fn invert(&self) -> Result<Self, TransitionError> {
        if let Some(v) = self.check_shape().violations.first() {
            let (row, col) = v.position();
            return Err(TransitionError::NotInvertible { row, col });
        }
        let matrix = self.matrix.invert_unitriangular().map_err(|e| match e {
            Gf2Error::NotUnitriangular { row, col } => TransitionError::NotInvertible { row, col },
            other => other.into(),
        })?;
        Ok(Self {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            matrix,
        })
    }
}

fn compatible(a: &GradedBasis, b: &GradedBasis) -> Result<(), TransitionError> {
    if a.order() != b.order() {
        return Err(TransitionError::BasisMismatch("orders differ"));
    }
    if a.profile() != b.profile() {
        return Err(TransitionError::BasisMismatch(
            "generator (element, degree) profiles differ",
        ));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeViolation {
    /// Off-diagonal entry between generators of different degree.
    Degree { row: usize, col: usize },
    /// Entry `(p ← q)` without `p < q`.
    Order { row: usize, col: usize },
    /// Diagonal block entry differing from the identity.
    Diagonal { row: usize, col: usize },
}

impl ShapeViolation {
    pub fn position(&self) -> (usize, usize) {
        match *self {
            ShapeViolation::Degree { row, col }
            | ShapeViolation::Order { row, col }
            | ShapeViolation::Diagonal { row, col } => (row, col),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ShapeReport {
    pub violations: Vec<ShapeViolation>,
}

impl ShapeReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_inputs(
    t: &TransitionCandidate,
    domain: &ConnectionMatrix,
    codomain: &ConnectionMatrix,
) -> Result<(), TransitionError> {
    if t.domain() != domain.basis() || t.codomain() != codomain.basis() {
        return Err(TransitionError::BasisMismatch(
            "candidate bases differ from the connection matrices",
        ));
    }
    Ok(())
}

/// First entry where `T·Δ_dom` and `Δ_cod·T` differ, or `None` for a chain map.
pub fn check_chain_map(
    t: &TransitionCandidate,
    domain: &ConnectionMatrix,
    codomain: &ConnectionMatrix,
) -> Result<Option<(usize, usize)>, TransitionError> {
    check_inputs(t, domain, codomain)?;
    let lhs = t.matrix().mul(domain.matrix())?;
    let rhs = codomain.matrix().mul(t.matrix())?;
    Ok(lhs.add(&rhs)?.entries().first().copied())
}

fn project(basis: &GradedBasis, chain: &Gf2Vector, interval: &Interval) -> Gf2Vector {
    let mut out = Gf2Vector::zeros(chain.len());
    for i in chain.ones() {
        if interval.contains(basis.element(i)) {
            out.set(i, true);
        }
    }
    out
}

/// Matrix of `T̂(I)` in the canonical homology bases of both sides.
pub fn induced_map(
    t: &TransitionCandidate,
    domain: &ConnectionMatrix,
    codomain: &ConnectionMatrix,
    interval: &Interval,
) -> Result<Gf2Matrix, TransitionError> {
    check_inputs(t, domain, codomain)?;
    let h_dom = domain.homology(interval)?;
    let h_cod = codomain.homology(interval)?;
    induced_on(t, &h_dom, &h_cod, domain, codomain, interval)
}

fn induced_on(
    t: &TransitionCandidate,
    h_dom: &HomologyResult,
    h_cod: &HomologyResult,
    domain: &ConnectionMatrix,
    codomain: &ConnectionMatrix,
    interval: &Interval,
) -> Result<Gf2Matrix, TransitionError> {
    let idx = domain.basis().indices_in(interval);
    let t_i = t.matrix().submatrix(&idx, &idx);
    let d_dom = domain.matrix().submatrix(&idx, &idx);
    let d_cod = codomain.matrix().submatrix(&idx, &idx);
    let diff = t_i.mul(&d_dom)?.add(&d_cod.mul(&t_i)?)?;
    if let Some(&(r, c)) = diff.entries().first() {
        return Err(TransitionError::NotChainMap {
            interval: interval.clone(),
            row: idx[r],
            col: idx[c],
        });
    }
    let mut cols = Vec::with_capacity(h_dom.total_dim());
    for class in h_dom.classes() {
        let image = project(codomain.basis(), &t.matrix().mul_vec(&class.chain)?, interval);
        cols.push(h_cod.coordinates(&image)?);
    }
    Ok(Gf2Matrix::from_columns(h_cod.total_dim(), &cols))
}

/// Cover matrices on one interval. All three are square of size `dim H(I)`,
/// in canonical homology coordinates on the `HΔ` side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverEntry {
    pub phi_domain: Gf2Matrix,
    pub phi_codomain: Gf2Matrix,
    pub theta: Gf2Matrix,
}

impl CoverEntry {
    pub fn identity(dim: usize) -> Self {
        Self {
            phi_domain: Gf2Matrix::identity(dim),
            phi_codomain: Gf2Matrix::identity(dim),
            theta: Gf2Matrix::identity(dim),
        }
    }

    /// `Φ_cod⁻¹ · θ · Φ_dom`, the homology map a covering `T` must induce.
    pub fn required_map(&self) -> Result<Gf2Matrix, Gf2Error> {
        self.phi_codomain
            .inverse()?
            .mul(&self.theta)?
            .mul(&self.phi_domain)
    }
}

/// Cover data keyed by interval. Intervals without an entry are not
/// constrained.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CoverData {
    entries: BTreeMap<Interval, CoverEntry>,
}

impl CoverData {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, interval: Interval, entry: CoverEntry) -> Option<CoverEntry> {
        self.entries.insert(interval, entry)
    }

    pub fn get(&self, interval: &Interval) -> Option<&CoverEntry> {
        self.entries.get(interval)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Interval, &CoverEntry)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Identity cover on every interval, for `Δ_dom = Δ_cod = delta`.
    pub fn identity(delta: &ConnectionMatrix) -> Result<Self, TransitionError> {
        let mut cover = Self::new();
        for interval in delta.order().intervals() {
            let dim = delta.homology(&interval)?.total_dim();
            cover.insert(interval, CoverEntry::identity(dim));
        }
        Ok(cover)
    }

    /// Cover induced by a reference chain equivalence: `Φ`'s are identities
    /// and `θ(I)` is the homology map `reference` induces on `I`.
    pub fn from_reference(
        reference: &TransitionCandidate,
        domain: &ConnectionMatrix,
        codomain: &ConnectionMatrix,
    ) -> Result<Self, TransitionError> {
        let mut cover = Self::new();
        for interval in domain.order().intervals() {
            let theta = induced_map(reference, domain, codomain, &interval)?;
            let dim = theta.rows();
            cover.insert(
                interval,
                CoverEntry {
                    phi_domain: Gf2Matrix::identity(dim),
                    phi_codomain: Gf2Matrix::identity(dim),
                    theta,
                },
            );
        }
        Ok(cover)
    }

    /// Cover of `next ∘ self` on the intervals both cover. The middle braid
    /// coordinates are matched through `Φ_dom(next) · Φ_cod(self)⁻¹`.
    pub fn compose(&self, next: &CoverData) -> Result<Self, TransitionError> {
        let mut out = Self::new();
        for (interval, first) in &self.entries {
            let Some(second) = next.get(interval) else {
                continue;
            };
            let transfer = second
                .phi_domain
                .mul(&first.phi_codomain.inverse()?)?;
            let theta = second.theta.mul(&transfer)?.mul(&first.theta)?;
            out.insert(
                interval.clone(),
                CoverEntry {
                    phi_domain: first.phi_domain.clone(),
                    phi_codomain: second.phi_codomain.clone(),
                    theta,
                },
            );
        }
        Ok(out)
    }

    /// Checks dimensions, invertibility, grading and naturality against the
    /// two connection matrices.
    pub fn validate(
        &self,
        domain: &ConnectionMatrix,
        codomain: &ConnectionMatrix,
    ) -> Result<(), TransitionError> {
        if domain.order() != codomain.order() {
            return Err(TransitionError::BasisMismatch("orders differ"));
        }
        let order = domain.order();
        let mut required = BTreeMap::new();
        for (interval, entry) in &self.entries {
            if !order.is_interval(interval.members()) {
                return Err(CoverError::NotInterval(interval.clone()).into());
            }
            let h_dom = domain.homology(interval)?;
            let h_cod = codomain.homology(interval)?;
            if h_dom.class_degrees() != h_cod.class_degrees() {
                return Err(CoverError::GradedDims(interval.clone()).into());
            }
            let degrees = h_dom.class_degrees();
            let dim = degrees.len();
            for (map, m) in [
                (CoverMap::PhiDomain, &entry.phi_domain),
                (CoverMap::PhiCodomain, &entry.phi_codomain),
                (CoverMap::Theta, &entry.theta),
            ] {
                if m.shape() != (dim, dim) {
                    return Err(CoverError::Dimension {
                        interval: interval.clone(),
                        map,
                        expected: dim,
                        got: m.shape(),
                    }
                    .into());
                }
                if m.inverse().is_err() {
                    return Err(CoverError::NotInvertible {
                        interval: interval.clone(),
                        map,
                    }
                    .into());
                }
                if m.entries().iter().any(|&(i, j)| degrees[i] != degrees[j]) {
                    return Err(CoverError::NotGraded {
                        interval: interval.clone(),
                        map,
                    }
                    .into());
                }
            }
            required.insert(interval.clone(), entry.required_map()?);
        }

        for pair in order.adjacent_pairs() {
            let union = pair.union();
            let (Some(psi_i), Some(psi_ij), Some(psi_j)) = (
                required.get(pair.attractor()),
                required.get(&union),
                required.get(pair.repeller()),
            ) else {
                continue;
            };
            let les_dom = domain.les_unchecked(&pair)?;
            let les_cod = codomain.les_unchecked(&pair)?;
            let squares = [
                ("i_*", psi_ij.mul(&les_dom.inclusion)?, les_cod.inclusion.mul(psi_i)?),
                ("p_*", psi_j.mul(&les_dom.projection)?, les_cod.projection.mul(psi_ij)?),
                ("delta", psi_i.mul(&les_dom.connecting)?, les_cod.connecting.mul(psi_j)?),
            ];
            for (map, lhs, rhs) in squares {
                if lhs != rhs {
                    return Err(CoverError::Naturality {
                        attractor: pair.attractor().clone(),
                        repeller: pair.repeller().clone(),
                        map,
                    }
                    .into());
                }
            }
        }
        Ok(())
    }
}

/// Outcome of [`verify_gttm`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GttmReport {
    pub shape: ShapeReport,
    /// First entry where `T·Δ_dom ≠ Δ_cod·T`.
    pub chain_mismatch: Option<(usize, usize)>,
    /// Covering result per covered interval, in canonical interval order.
    /// Empty when the shape or chain map check failed.
    pub intervals: Vec<(Interval, bool)>,
}

impl GttmReport {
    pub fn covers(&self) -> bool {
        self.intervals.iter().all(|(_, ok)| *ok)
    }

    pub fn is_gttm(&self) -> bool {
        self.shape.is_ok() && self.chain_mismatch.is_none() && self.covers()
    }
}

/// Checks shape, chain map and covering of every interval in the cover.
/// Invalid cover data is rejected before `T` is looked at.
pub fn verify_gttm(
    t: &TransitionCandidate,
    domain: &ConnectionMatrix,
    codomain: &ConnectionMatrix,
    cover: &CoverData,
) -> Result<GttmReport, TransitionError> {
    check_inputs(t, domain, codomain)?;
    cover.validate(domain, codomain)?;
    let shape = t.check_shape();
    let chain_mismatch = check_chain_map(t, domain, codomain)?;
    let mut intervals = Vec::new();
    if shape.is_ok() && chain_mismatch.is_none() {
        for (interval, entry) in cover.entries() {
            let hat = induced_map(t, domain, codomain, interval)?;
            let ok = entry.phi_codomain.mul(&hat)? == entry.theta.mul(&entry.phi_domain)?;
            intervals.push((interval.clone(), ok));
        }
    }
    Ok(GttmReport {
        shape,
        chain_mismatch,
        intervals,
    })
}

/// All candidates passing [`verify_gttm`], as an affine set over the free
/// entries of `T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GttmSolutionSet {
    domain: GradedBasis,
    codomain: GradedBasis,
    positions: Vec<(usize, usize)>,
    set: AffineSolutionSet,
}

impl GttmSolutionSet {
    /// Free `(row, col)` positions, one per unknown.
    pub fn positions(&self) -> &[(usize, usize)] {
        &self.positions
    }

    pub fn affine_set(&self) -> &AffineSolutionSet {
        &self.set
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    /// `log₂` of the number of members; `None` when empty.
    pub fn free_dims(&self) -> Option<usize> {
        self.set.free_dims()
    }

    /// Candidate for an assignment of the unknowns.
    pub fn candidate(&self, values: &Gf2Vector) -> TransitionCandidate {
        assert_eq!(values.len(), self.positions.len());
        let mut m = Gf2Matrix::identity(self.domain.len());
        for u in values.ones() {
            let (i, j) = self.positions[u];
            m.set(i, j, true);
        }
        TransitionCandidate {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: m,
        }
    }

    pub fn particular(&self) -> Option<TransitionCandidate> {
        self.set.particular().map(|p| self.candidate(p))
    }

    /// Member `particular + Σ c_k n_k`.
    pub fn member(&self, coefficients: &Gf2Vector) -> Option<TransitionCandidate> {
        self.set.member(coefficients).map(|v| self.candidate(&v))
    }

    pub fn members(&self) -> Vec<TransitionCandidate> {
        self.set
            .members()
            .iter()
            .map(|v| self.candidate(v))
            .collect()
    }

    /// Values of the unknowns in `t`, if `t` has the enumerated shape.
    pub fn unknowns_of(&self, t: &TransitionCandidate) -> Option<Gf2Vector> {
        let mut fixed = Gf2Matrix::identity(self.domain.len());
        let v = Gf2Vector::from_bits(self.positions.iter().map(|&(i, j)| t.matrix().get(i, j)));
        for u in v.ones() {
            let (i, j) = self.positions[u];
            fixed.set(i, j, true);
        }
        (&fixed == t.matrix()).then_some(v)
    }

    pub fn contains(&self, t: &TransitionCandidate) -> bool {
        t.domain() == &self.domain
            && t.codomain() == &self.codomain
            && self.unknowns_of(t).is_some_and(|v| self.set.contains(&v))
    }

    /// Whether every member has a nonzero `(p, q)` block, decided exactly:
    /// the block entries form an affine image of the solution set, and the
    /// question is whether zero lies outside it.
    pub fn block_always_nonzero(&self, p: usize, q: usize) -> bool {
        let Some(particular) = self.set.particular() else {
            return false;
        };
        let rows = self.codomain.indices_in(&Interval::singleton(p));
        let cols = self.domain.indices_in(&Interval::singleton(q));
        let block: Vec<usize> = self
            .positions
            .iter()
            .enumerate()
            .filter(|(_, (i, j))| rows.contains(i) && cols.contains(j))
            .map(|(u, _)| u)
            .collect();
        if block.is_empty() {
            // Entries not among the unknowns are fixed; off-diagonal ones are 0.
            return p == q && !rows.is_empty();
        }
        let offset = particular.select(&block);
        if self.set.nullspace().is_empty() {
            return !offset.is_zero();
        }
        let directions: Vec<Gf2Vector> = self
            .set
            .nullspace()
            .iter()
            .map(|n| n.select(&block))
            .collect();
        let span = Gf2Matrix::from_columns(block.len(), &directions);
        // zero is attained iff offset ∈ span(directions)
        !matches!(span.solve(&offset), Ok(Some(_)))
    }
}

/// Free positions of a transition candidate: off-diagonal entries between
/// equal degrees with `p < q`.
fn free_positions(basis: &GradedBasis) -> Vec<(usize, usize)> {
    let n = basis.len();
    let order = basis.order();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if basis.degree(i) == basis.degree(j) && order.less(basis.element(i), basis.element(j))
            {
                out.push((i, j));
            }
        }
    }
    out
}

/// Every transition matrix that is a chain map and covers the cover data.
pub fn enumerate_gttm(
    domain: &ConnectionMatrix,
    codomain: &ConnectionMatrix,
    cover: &CoverData,
) -> Result<GttmSolutionSet, TransitionError> {
    compatible(domain.basis(), codomain.basis())?;
    cover.validate(domain, codomain)?;
    let positions = free_positions(domain.basis());
    let unknowns = positions.len();
    let d_dom = domain.matrix();
    let d_cod = codomain.matrix();

    // Chain map: (I + X)Δ_dom + Δ_cod(I + X) = 0, one equation per entry.
    let mut rows: BTreeMap<(usize, usize), (Gf2Vector, bool)> = BTreeMap::new();
    for (u, &(i, j)) in positions.iter().enumerate() {
        for b in d_dom.row(j).ones() {
            let e = rows
                .entry((i, b))
                .or_insert_with(|| (Gf2Vector::zeros(unknowns), false));
            e.0.flip(u);
        }
        for a in d_cod.column(i).ones() {
            let e = rows
                .entry((a, j))
                .or_insert_with(|| (Gf2Vector::zeros(unknowns), false));
            e.0.flip(u);
        }
    }
    for (a, b) in d_dom.add(d_cod)?.entries() {
        let e = rows
            .entry((a, b))
            .or_insert_with(|| (Gf2Vector::zeros(unknowns), false));
        e.1 = !e.1;
    }
    let mut constraints: Vec<(Gf2Vector, bool)> = rows.into_values().collect();

    // Covering: for each class [z] of HΔ_dom(I), T(I)z − lift(Ψ[z]) must be
    // a boundary of Δ_cod(I). Boundaries are cut out by their annihilator.
    let basis = domain.basis();
    for (interval, entry) in cover.entries() {
        let h_dom = domain.homology(interval)?;
        let h_cod = codomain.homology(interval)?;
        let psi = entry.required_map()?;
        let over = basis.indices_in(interval);
        for (c, class) in h_dom.classes().iter().enumerate() {
            let mut target = Gf2Vector::zeros(basis.len());
            for (k, cod_class) in h_cod.classes().iter().enumerate() {
                if psi.get(k, c) {
                    target.add_assign(&cod_class.chain);
                }
            }
            let k = class.degree;
            let gens: Vec<usize> = over
                .iter()
                .copied()
                .filter(|&g| basis.degree(g) == k)
                .collect();
            let above: Vec<usize> = over
                .iter()
                .copied()
                .filter(|&g| basis.degree(g) == k + 1)
                .collect();
            let boundaries = d_cod.submatrix(&gens, &above).image_basis();
            let annihilator = boundaries.transpose().kernel_basis();
            let z = &class.chain;
            for y in annihilator.columns() {
                let y_global = y.scatter(basis.len(), &gens);
                let mut row = Gf2Vector::zeros(unknowns);
                for (u, &(i, j)) in positions.iter().enumerate() {
                    if y_global.get(i) && z.get(j) && interval.contains(basis.element(i)) {
                        row.flip(u);
                    }
                }
                let rhs = y_global.dot(&target) ^ y_global.dot(z);
                constraints.push((row, rhs));
            }
        }
    }

    let set = solve_affine(unknowns, &constraints)?;
    Ok(GttmSolutionSet {
        domain: domain.basis().clone(),
        codomain: codomain.basis().clone(),
        positions,
        set,
    })
}

/// Whether the `(p, q)` blocks of `Δ_dom` and `Δ_cod` are conjugate through
/// the diagonal blocks of `T`, for an adjacent pair of singletons.
pub fn pivot_relation_check(
    domain: &ConnectionMatrix,
    codomain: &ConnectionMatrix,
    t: &TransitionCandidate,
    p: usize,
    q: usize,
) -> Result<bool, TransitionError> {
    check_inputs(t, domain, codomain)?;
    let order = domain.order();
    let (low, high) = if order.less(q, p) { (q, p) } else { (p, q) };
    let adjacent = low != high && order.is_adjacent(&Interval::singleton(low), &Interval::singleton(high));
    if !adjacent {
        return Err(TransitionError::NotAdjacentSingletons {
            p: order.label(p).into(),
            q: order.label(q).into(),
        });
    }
    // From T·Δ_dom = Δ_cod·T restricted to rows over low, columns over high:
    // T(low) Δ_dom(low, high) = Δ_cod(low, high) T(high).
    let t_low = t.block(low, low);
    let t_high = t.block(high, high);
    let conjugated = t_low
        .inverse()?
        .mul(&codomain.block(low, high))?
        .mul(&t_high)?;
    Ok(domain.block(low, high) == conjugated)
}

/// Evidence that every GTTM has a nonzero `(p, q)` block, with a covering
/// chain `p < … < q` in the minimal order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UccCertificate {
    pub p: usize,
    pub q: usize,
    /// Elements `p = c_n < … < c_0 = q`, listed from `p` upward.
    pub witness: Vec<usize>,
    pub free_dims: usize,
    /// Hypotheses the algebra cannot check.
    pub assumptions: Vec<&'static str>,
}

/// Stated assumption carried by every certificate.
pub const UCC_ASSUMPTION: &str =
    "GTTM(<_m) is nonempty for every sub-path of the continuation (flow-side, not checked)";

pub fn certify_ucc(
    solutions: &GttmSolutionSet,
    minimal_order: &FinitePoset,
    p: usize,
    q: usize,
) -> Result<Option<UccCertificate>, TransitionError> {
    if solutions.is_empty() {
        return Err(TransitionError::EmptySolutionSet);
    }
    if minimal_order.labels() != solutions.domain.order().labels() {
        return Err(PosetError::ElementMismatch.into());
    }
    if p == q || !solutions.block_always_nonzero(p, q) {
        return Ok(None);
    }
    let Some(witness) = minimal_order.order_closure_paths(p, q).into_iter().next() else {
        return Err(TransitionError::NoWitnessChain {
            p: minimal_order.label(p).into(),
            q: minimal_order.label(q).into(),
        });
    };
    Ok(Some(UccCertificate {
        p,
        q,
        witness,
        free_dims: solutions.free_dims().unwrap_or(0),
        assumptions: vec![UCC_ASSUMPTION],
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::Generator;
    use crate::fixtures;

    fn iv(m: &[usize]) -> Interval {
        Interval::new(m.iter().copied())
    }

    #[test]
    fn example_chain_map() {
        let (l, m, t) = (
            fixtures::example_delta_lambda(),
            fixtures::example_delta_mu(),
            fixtures::example_transition(),
        );
        assert_eq!(check_chain_map(&t, &l, &m).unwrap(), None);
        let id = TransitionCandidate::identity(fixtures::example_basis());
        assert_eq!(check_chain_map(&id, &l, &m).unwrap(), Some((0, 2)));
        let z = ConnectionMatrix::zero(fixtures::example_basis());
        assert_eq!(check_chain_map(&t, &z, &z).unwrap(), None);
    }

    #[test]
    fn shape_checks() {
        let t = fixtures::example_transition();
        assert!(t.check_shape().is_ok());
        let basis = fixtures::example_basis();
        let lower = Gf2Matrix::from_entries(3, 3, &[(0, 0), (1, 1), (2, 2), (2, 1)]);
        let t2 = TransitionCandidate::new(basis.clone(), basis.clone(), lower).unwrap();
        assert_eq!(
            t2.check_shape().violations,
            [ShapeViolation::Order { row: 2, col: 1 }]
        );
        let degree = Gf2Matrix::from_entries(3, 3, &[(0, 0), (1, 1), (2, 2), (0, 1)]);
        let t3 = TransitionCandidate::new(basis.clone(), basis.clone(), degree).unwrap();
        assert_eq!(
            t3.check_shape().violations,
            [ShapeViolation::Degree { row: 0, col: 1 }]
        );
        let singular = Gf2Matrix::from_entries(3, 3, &[(0, 0), (1, 1)]);
        let t4 = TransitionCandidate::new(basis.clone(), basis, singular).unwrap();
        assert_eq!(
            t4.check_shape().violations,
            [ShapeViolation::Diagonal { row: 2, col: 2 }]
        );
        assert!(t4.invert().is_err());
    }

    #[test]
    fn induced_maps() {
        let (l, m, t) = (
            fixtures::example_delta_lambda(),
            fixtures::example_delta_mu(),
            fixtures::example_transition(),
        );
        for p in 0..3 {
            let hat = induced_map(&t, &l, &m, &Interval::singleton(p)).unwrap();
            assert_eq!(hat, Gf2Matrix::identity(1));
        }
        let hat = induced_map(&t, &l, &m, &iv(&[1, 2])).unwrap();
        assert_eq!(hat, Gf2Matrix::from_rows(&[&[1, 1], &[0, 1]]));
        let hat = induced_map(&t, &l, &m, &iv(&[0, 1, 2])).unwrap();
        assert_eq!(hat, Gf2Matrix::identity(1));
        let id = TransitionCandidate::identity(fixtures::example_basis());
        assert!(matches!(
            induced_map(&id, &l, &m, &iv(&[0, 1, 2])),
            Err(TransitionError::NotChainMap { .. })
        ));
    }

    #[test]
    fn example_is_a_gttm() {
        let (l, m, t, cover) = (
            fixtures::example_delta_lambda(),
            fixtures::example_delta_mu(),
            fixtures::example_transition(),
            fixtures::example_cover(),
        );
        let report = verify_gttm(&t, &l, &m, &cover).unwrap();
        assert!(report.is_gttm());
        assert_eq!(report.intervals.len(), 7);

        let mut flipped = t.matrix().clone();
        flipped.set(1, 2, false);
        let t0 = TransitionCandidate::new(t.domain().clone(), t.codomain().clone(), flipped).unwrap();
        let report = verify_gttm(&t0, &l, &m, &cover).unwrap();
        assert!(!report.is_gttm());
        assert_eq!(report.chain_mismatch, Some((0, 2)));
    }

    #[test]
    fn identity_is_gttm_for_identity_cover() {
        let m = fixtures::example_delta_mu();
        let cover = CoverData::identity(&m).unwrap();
        let id = TransitionCandidate::identity(m.basis().clone());
        assert!(verify_gttm(&id, &m, &m, &cover).unwrap().is_gttm());
    }

    #[test]
    fn unnatural_cover_is_rejected() {
        let (l, m, t) = (
            fixtures::example_delta_lambda(),
            fixtures::example_delta_mu(),
            fixtures::example_transition(),
        );
        let mut cover = fixtures::example_cover();
        // drop the twist on {2,3}: θ then fails to commute with δ on ({1},{2,3})
        cover.insert(iv(&[1, 2]), CoverEntry::identity(2));
        assert!(matches!(
            verify_gttm(&t, &l, &m, &cover),
            Err(TransitionError::Cover(CoverError::Naturality { .. }))
        ));
        let mut cover = fixtures::example_cover();
        cover.insert(iv(&[1, 2]), CoverEntry::identity(3));
        assert!(matches!(
            cover.validate(&l, &m),
            Err(TransitionError::Cover(CoverError::Dimension { .. }))
        ));
    }

    #[test]
    fn enumerate_example() {
        let (l, m, cover) = (
            fixtures::example_delta_lambda(),
            fixtures::example_delta_mu(),
            fixtures::example_cover(),
        );
        let set = enumerate_gttm(&l, &m, &cover).unwrap();
        assert_eq!(set.positions(), [(1, 2)]);
        assert_eq!(set.free_dims(), Some(0));
        assert_eq!(set.particular().unwrap(), fixtures::example_transition());
    }

    #[test]
    fn enumerate_trivial_cases() {
        let one = GradedBasis::new(FinitePoset::chain(["p"]), vec![Generator::new("x", 0, 1)]).unwrap();
        let z = ConnectionMatrix::zero(one.clone());
        let set = enumerate_gttm(&z, &z, &CoverData::identity(&z).unwrap()).unwrap();
        assert_eq!(set.members(), [TransitionCandidate::identity(one)]);

        let anti = GradedBasis::new(
            FinitePoset::antichain(["a", "b"]),
            vec![Generator::new("x", 0, 0), Generator::new("y", 1, 0)],
        )
        .unwrap();
        let z = ConnectionMatrix::zero(anti.clone());
        let set = enumerate_gttm(&z, &z, &CoverData::identity(&z).unwrap()).unwrap();
        assert!(set.positions().is_empty());
        assert_eq!(set.members(), [TransitionCandidate::identity(anti)]);
    }

    #[test]
    fn compose_and_invert() {
        let t = fixtures::example_transition();
        let inv = t.invert().unwrap();
        assert_eq!(inv.matrix(), t.matrix());
        let id = TransitionCandidate::identity(t.domain().clone());
        assert_eq!(t.compose(&inv).unwrap(), id);
        assert_eq!(t.compose(&id).unwrap(), t);
        assert_eq!(id.compose(&t).unwrap(), t);
    }

    #[test]
    fn composed_cover_verifies() {
        let (l, m, t, cover) = (
            fixtures::example_delta_lambda(),
            fixtures::example_delta_mu(),
            fixtures::example_transition(),
            fixtures::example_cover(),
        );
        // back again: μ → λ with the inverse of everything
        let back = t.invert().unwrap();
        let mut reverse = CoverData::new();
        for (i, e) in cover.entries() {
            reverse.insert(
                i.clone(),
                CoverEntry {
                    phi_domain: e.phi_codomain.clone(),
                    phi_codomain: e.phi_domain.clone(),
                    theta: e.theta.inverse().unwrap(),
                },
            );
        }
        assert!(verify_gttm(&back, &m, &l, &reverse).unwrap().is_gttm());
        let round = t.compose(&back).unwrap();
        let composed = cover.compose(&reverse).unwrap();
        assert!(verify_gttm(&round, &l, &l, &composed).unwrap().is_gttm());
    }

    #[test]
    fn pivot_relation() {
        let (l, m, t) = (
            fixtures::example_delta_lambda(),
            fixtures::example_delta_mu(),
            fixtures::example_transition(),
        );
        assert!(pivot_relation_check(&l, &m, &t, 0, 1).unwrap());
        assert!(pivot_relation_check(&l, &m, &t, 1, 2).unwrap());
        assert!(matches!(
            pivot_relation_check(&l, &m, &t, 0, 2),
            Err(TransitionError::NotAdjacentSingletons { .. })
        ));
        let id = TransitionCandidate::identity(m.basis().clone());
        assert!(pivot_relation_check(&m, &m, &id, 1, 0).unwrap());
    }

    #[test]
    fn ucc_certificates() {
        let (l, m, cover) = (
            fixtures::example_delta_lambda(),
            fixtures::example_delta_mu(),
            fixtures::example_cover(),
        );
        let set = enumerate_gttm(&l, &m, &cover).unwrap();
        let order = l.order().clone();
        let cert = certify_ucc(&set, &order, 1, 2).unwrap().unwrap();
        assert_eq!(cert.witness, [1, 2]);
        assert_eq!(cert.assumptions, [UCC_ASSUMPTION]);
        assert_eq!(certify_ucc(&set, &order, 0, 2).unwrap(), None);
        assert_eq!(certify_ucc(&set, &order, 0, 1).unwrap(), None);

        let z = ConnectionMatrix::zero(fixtures::example_basis());
        let set = enumerate_gttm(&z, &z, &CoverData::identity(&z).unwrap()).unwrap();
        for (p, q) in [(0, 1), (0, 2), (1, 2)] {
            assert_eq!(certify_ucc(&set, &order, p, q).unwrap(), None);
        }
    }

    #[test]
    fn ucc_needs_a_chain_in_the_minimal_order() {
        let (l, m, cover) = (
            fixtures::example_delta_lambda(),
            fixtures::example_delta_mu(),
            fixtures::example_cover(),
        );
        let set = enumerate_gttm(&l, &m, &cover).unwrap();
        let loose = FinitePoset::antichain(["1", "2", "3"]);
        assert!(matches!(
            certify_ucc(&set, &loose, 1, 2),
            Err(TransitionError::NoWitnessChain { .. })
        ));
    }

    #[test]
    fn twisted_cover_on_split_sequence_is_not_natural() {
        let basis = GradedBasis::new(
            FinitePoset::antichain(["a", "b"]),
            vec![Generator::new("x", 0, 0), Generator::new("y", 1, 0)],
        )
        .unwrap();
        let z = ConnectionMatrix::zero(basis);
        let mut cover = CoverData::identity(&z).unwrap();
        cover.insert(
            iv(&[0, 1]),
            CoverEntry {
                phi_domain: Gf2Matrix::identity(2),
                phi_codomain: Gf2Matrix::identity(2),
                theta: Gf2Matrix::from_rows(&[&[1, 1], &[0, 1]]),
            },
        );
        assert!(matches!(
            enumerate_gttm(&z, &z, &cover),
            Err(TransitionError::Cover(CoverError::Naturality { .. }))
        ));
    }

    #[test]
    fn unreachable_cover_gives_empty_set() {
        // Only {a,b} is covered, so no naturality square applies, and it
        // demands a lower triangular induced map.
        let basis = GradedBasis::new(
            FinitePoset::chain(["a", "b"]),
            vec![Generator::new("x", 0, 0), Generator::new("y", 1, 0)],
        )
        .unwrap();
        let z = ConnectionMatrix::zero(basis);
        let mut cover = CoverData::new();
        cover.insert(
            iv(&[0, 1]),
            CoverEntry {
                phi_domain: Gf2Matrix::identity(2),
                phi_codomain: Gf2Matrix::identity(2),
                theta: Gf2Matrix::from_rows(&[&[1, 0], &[1, 1]]),
            },
        );
        let set = enumerate_gttm(&z, &z, &cover).unwrap();
        assert!(set.is_empty());
        assert_eq!(
            certify_ucc(&set, z.order(), 0, 1),
            Err(TransitionError::EmptySolutionSet)
        );
    }

    #[test]
    fn partial_cover_leaves_entries_free() {
        let basis = GradedBasis::new(
            FinitePoset::chain(["a", "b"]),
            vec![Generator::new("x", 0, 1), Generator::new("y", 1, 1)],
        )
        .unwrap();
        let z = ConnectionMatrix::zero(basis);
        let full = CoverData::identity(&z).unwrap();
        assert_eq!(enumerate_gttm(&z, &z, &full).unwrap().free_dims(), Some(0));
        let mut singletons = CoverData::new();
        for p in 0..2 {
            singletons.insert(Interval::singleton(p), CoverEntry::identity(1));
        }
        let set = enumerate_gttm(&z, &z, &singletons).unwrap();
        assert_eq!(set.free_dims(), Some(1));
        for t in set.members() {
            assert!(verify_gttm(&t, &z, &z, &singletons).unwrap().is_gttm());
        }
    }
}
