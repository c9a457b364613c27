//! The sweeping method and the spectral sequence of a filtered connection
//! matrix.
//!
//! With a total order, generator `p` sits at filtration index `p`. Stage `r`
//! scans the `r`-th diagonal of `Δ^r` (entries `(j - r, j)`) by increasing
//! column:
//!
//! * a nonzero entry whose column and row hold no primary pivot yet becomes a
//!   primary pivot;
//! * a nonzero entry whose column holds no primary pivot but whose row holds
//!   one at column `j' < j` becomes a change-of-basis pivot, cleared by the
//!   column operation `col_j += col_j'`.
//!
//! `T^r` collects the stage's column operations and `Δ^{r+1} = (T^r)⁻¹ Δ^r T^r`.
//! Primary pivots on diagonal `r` are exactly the nonzero differentials
//! `d^r`, which gives the pages. [`ss_oracle`] computes the same pages from
//! the filtered complex directly.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::braid::{BraidError, ConnectionMatrix};
use crate::gf2::{Gf2Error, Gf2Matrix, Gf2Vector};
use crate::transition::{TransitionCandidate, TransitionError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SweepError {
    #[error("the order is not total; sweeping needs a filtration order")]
    NotTotal,
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error(transparent)]
    Transition(#[from] TransitionError),
    #[error("stage {stage}: T^r is not an upper triangular degree-0 isomorphism at ({row}, {col})")]
    TransitionShape { stage: usize, row: usize, col: usize },
    #[error("stage {stage}: Δ^r T^r ≠ T^r Δ^(r+1) at ({row}, {col})")]
    NotConjugate { stage: usize, row: usize, col: usize },
    #[error("primary pivot ({row}, {col}) marked at stage {marked} reads 0 at stage {stage}")]
    PivotChanged {
        row: usize,
        col: usize,
        marked: usize,
        stage: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum PivotKind {
    Primary,
    ChangeOfBasis,
}

/// One stage of the sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepState {
    /// `r`, starting at 1.
    pub stage: usize,
    /// `Δ^r`.
    pub delta: ConnectionMatrix,
    /// `T^r`, this stage's change of basis only.
    pub transition: TransitionCandidate,
    /// Pivots marked on the `r`-th diagonal at this stage.
    pub pivots: BTreeMap<(usize, usize), PivotKind>,
}

/// All stages plus the fully swept matrix `Δ^{F+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sweep {
    pub states: Vec<SweepState>,
    pub terminal: ConnectionMatrix,
}

impl Sweep {
    /// Every primary pivot with its stage, ordered by stage then column.
    pub fn primary_pivots(&self) -> Vec<(usize, (usize, usize))> {
        self.states
            .iter()
            .flat_map(|s| {
                s.pivots
                    .iter()
                    .filter(|(_, k)| **k == PivotKind::Primary)
                    .map(move |(pos, _)| (s.stage, *pos))
            })
            .collect()
    }

    pub fn change_of_basis_pivots(&self) -> Vec<(usize, (usize, usize))> {
        self.states
            .iter()
            .flat_map(|s| {
                s.pivots
                    .iter()
                    .filter(|(_, k)| **k == PivotKind::ChangeOfBasis)
                    .map(move |(pos, _)| (s.stage, *pos))
            })
            .collect()
    }

    /// `Δ^r` for `r = 1 ..= F + 1`.
    pub fn delta(&self, stage: usize) -> &ConnectionMatrix {
        if stage > self.states.len() {
            &self.terminal
        } else {
            &self.states[stage - 1].delta
        }
    }

    /// `T¹ ⋯ T^F`, the cumulative change of basis with `Δ^{F+1} = T⁻¹ Δ¹ T`.
    pub fn cumulative_transition(&self) -> Result<TransitionCandidate, SweepError> {
        let mut acc = TransitionCandidate::identity(self.terminal.basis().clone());
        for s in &self.states {
            // column operations compose on the right
            acc = s.transition.compose(&acc)?;
        }
        Ok(acc)
    }
}

pub fn sweep(delta: &ConnectionMatrix) -> Result<Sweep, SweepError> {
    if !delta.order().is_total() {
        return Err(SweepError::NotTotal);
    }
    let n = delta.len();
    let basis = delta.basis().clone();
    let stages = n.saturating_sub(1);
    let mut primary_in_col: Vec<Option<usize>> = vec![None; n];
    let mut primary_in_row: Vec<Option<usize>> = vec![None; n];
    let mut current = delta.clone();
    let mut states = Vec::with_capacity(stages);

    for r in 1..=stages {
        let m = current.matrix();
        let mut pivots = BTreeMap::new();
        let mut t = Gf2Matrix::identity(n);
        #[allow(clippy::needless_range_loop)]
        for j in r..n {
            let i = j - r;
            if !m.get(i, j) || primary_in_col[j].is_some() {
                continue;
            }
            match primary_in_row[i] {
                None => {
                    pivots.insert((i, j), PivotKind::Primary);
                    primary_in_col[j] = Some(i);
                    primary_in_row[i] = Some(j);
                }
                Some(j_prime) => {
                    pivots.insert((i, j), PivotKind::ChangeOfBasis);
                    t.set(j_prime, j, true);
                }
            }
        }
        let t_inv = t.invert_unitriangular()?;
        let next = ConnectionMatrix::new(basis.clone(), t_inv.mul(m)?.mul(&t)?)?;
        states.push(SweepState {
            stage: r,
            delta: current,
            transition: TransitionCandidate::new(basis.clone(), basis.clone(), t)?,
            pivots,
        });
        current = next;
    }
    Ok(Sweep {
        states,
        terminal: current,
    })
}

/// Page `E^r` with the ranks of `d^r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralPage {
    pub stage: usize,
    /// Nonzero `dim E^r_{p,k}`, keyed by `(p, k)`.
    pub dims: BTreeMap<(usize, u32), usize>,
    /// Nonzero rank of `d^r` leaving `(p, k)`, towards `(p - r, k - 1)`.
    pub differential_ranks: BTreeMap<(usize, u32), usize>,
}

impl SpectralPage {
    pub fn dim(&self, p: usize, k: u32) -> usize {
        self.dims.get(&(p, k)).copied().unwrap_or(0)
    }

    pub fn rank(&self, p: usize, k: u32) -> usize {
        self.differential_ranks.get(&(p, k)).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }
}

/// Pages `E^1 … E^{F+1}` read off the pivot structure of a sweep.
pub fn ss_pages(sweep: &Sweep) -> Vec<SpectralPage> {
    let basis = sweep.terminal.basis();
    let n = basis.len();
    let mut dims: BTreeMap<(usize, u32), usize> =
        (0..n).map(|p| ((p, basis.degree(p)), 1)).collect();
    let mut pages = Vec::with_capacity(sweep.states.len() + 1);
    for state in &sweep.states {
        let mut ranks = BTreeMap::new();
        for (&(_, j), kind) in &state.pivots {
            if *kind == PivotKind::Primary {
                ranks.insert((j, basis.degree(j)), 1);
            }
        }
        pages.push(SpectralPage {
            stage: state.stage,
            dims: dims.clone(),
            differential_ranks: ranks,
        });
        for (&(i, j), kind) in &state.pivots {
            if *kind == PivotKind::Primary {
                for key in [(j, basis.degree(j)), (i, basis.degree(i))] {
                    let d = dims.get_mut(&key).expect("pivot on a live slot");
                    *d -= 1;
                    if *d == 0 {
                        dims.remove(&key);
                    }
                }
            }
        }
    }
    pages.push(SpectralPage {
        stage: sweep.states.len() + 1,
        dims,
        differential_ranks: BTreeMap::new(),
    });
    pages
}

/// Spectral sequence of `C` filtered by `F_pC = span{g_0 … g_p}`, from the
/// standard formulas
///
/// ```text
/// Z^r_p = F_p ∩ Δ⁻¹(F_{p-r})
/// E^r_p = Z^r_p / (Z^{r-1}_{p-1} + Δ Z^{r-1}_{p+r-1})
/// rank d^r out of p = dim Z^r_p − dim(Z^{r+1}_p + Z^{r-1}_{p-1})
/// ```
///
/// computed degreewise by subspace arithmetic, with no reference to pivots.
pub fn ss_oracle(delta: &ConnectionMatrix) -> Result<Vec<SpectralPage>, SweepError> {
    if !delta.order().is_total() {
        return Err(SweepError::NotTotal);
    }
    let oracle = FilteredComplex::new(delta);
    let n = delta.len();
    let stages = n.saturating_sub(1);
    let mut pages = Vec::with_capacity(stages + 1);
    for r in 1..=stages + 1 {
        let mut dims = BTreeMap::new();
        let mut ranks = BTreeMap::new();
        for k in oracle.degrees() {
            for p in 0..n {
                let e = oracle.page_dim(r, p as isize, k);
                if e > 0 {
                    dims.insert((p, k), e);
                }
                if r <= stages {
                    let d = oracle.differential_rank(r, p as isize, k);
                    if d > 0 {
                        ranks.insert((p, k), d);
                    }
                }
            }
        }
        pages.push(SpectralPage {
            stage: r,
            dims,
            differential_ranks: ranks,
        });
    }
    Ok(pages)
}

struct FilteredComplex<'a> {
    delta: &'a ConnectionMatrix,
    /// Generator indices per degree, ascending.
    by_degree: BTreeMap<u32, Vec<usize>>,
}

impl<'a> FilteredComplex<'a> {
    fn new(delta: &'a ConnectionMatrix) -> Self {
        let mut by_degree: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for i in 0..delta.len() {
            by_degree.entry(delta.basis().degree(i)).or_default().push(i);
        }
        Self { delta, by_degree }
    }

    fn degrees(&self) -> Vec<u32> {
        self.by_degree.keys().copied().collect()
    }

    fn gens(&self, k: u32) -> &[usize] {
        self.by_degree.get(&k).map_or(&[], Vec::as_slice)
    }

    /// `Z^r_p` in degree `k`, as vectors in local degree-`k` coordinates.
    fn cycles(&self, r: usize, p: isize, k: u32) -> Vec<Gf2Vector> {
        let gens = self.gens(k);
        if p < 0 {
            return Vec::new();
        }
        let cols: Vec<usize> = gens.iter().copied().filter(|&g| g as isize <= p).collect();
        let floor = p - r as isize;
        let rows: Vec<usize> = match k.checked_sub(1) {
            Some(km1) => self
                .gens(km1)
                .iter()
                .copied()
                .filter(|&g| g as isize > floor)
                .collect(),
            None => Vec::new(),
        };
        let kernel = self.delta.matrix().submatrix(&rows, &cols).kernel_basis();
        // cols are a prefix of gens, so local positions are 0..cols.len()
        let positions: Vec<usize> = (0..cols.len()).collect();
        kernel
            .columns()
            .into_iter()
            .map(|v| v.scatter(gens.len(), &positions))
            .collect()
    }

    /// `Δ(Z^r_p)` for `Z` in degree `k + 1`, in local degree-`k` coordinates.
    fn boundaries(&self, r: usize, p: isize, k: u32) -> Vec<Gf2Vector> {
        let source = self.cycles(r, p, k + 1);
        if source.is_empty() {
            return Vec::new();
        }
        let d = self
            .delta
            .matrix()
            .submatrix(self.gens(k), self.gens(k + 1));
        source
            .iter()
            .map(|z| d.mul_vec(z).expect("conformable by construction"))
            .collect()
    }

    fn dim_of_span(&self, k: u32, parts: &[&[Gf2Vector]]) -> usize {
        let all: Vec<Gf2Vector> = parts.iter().flat_map(|p| p.iter().cloned()).collect();
        if all.is_empty() {
            return 0;
        }
        Gf2Matrix::from_columns(self.gens(k).len(), &all).rank()
    }

    fn page_dim(&self, r: usize, p: isize, k: u32) -> usize {
        let z = self.cycles(r, p, k);
        let lower = self.cycles(r - 1, p - 1, k);
        let bounds = self.boundaries(r - 1, p + r as isize - 1, k);
        self.dim_of_span(k, &[&z]) - self.dim_of_span(k, &[&lower, &bounds])
    }

    fn differential_rank(&self, r: usize, p: isize, k: u32) -> usize {
        let z = self.cycles(r, p, k);
        let next = self.cycles(r + 1, p, k);
        let lower = self.cycles(r - 1, p - 1, k);
        self.dim_of_span(k, &[&z]) - self.dim_of_span(k, &[&next, &lower])
    }
}

/// Checks every stage: `T^r` is a unit upper triangular degree-0 matrix and
/// `Δ^r T^r = T^r Δ^{r+1}`.
pub fn verify_prop41(sweep: &Sweep) -> Result<(), SweepError> {
    for state in &sweep.states {
        let t = &state.transition;
        if let Some(v) = t.check_shape().violations.first() {
            let (row, col) = v.position();
            return Err(SweepError::TransitionShape {
                stage: state.stage,
                row,
                col,
            });
        }
        let next = sweep.delta(state.stage + 1);
        let lhs = state.delta.matrix().mul(t.matrix())?;
        let rhs = t.matrix().mul(next.matrix())?;
        if let Some(&(row, col)) = lhs.add(&rhs)?.entries().first() {
            return Err(SweepError::NotConjugate {
                stage: state.stage,
                row,
                col,
            });
        }
    }
    Ok(())
}

/// Primary pivots, after checking each reads 1 in `Δ^r` for every stage
/// from its marking through `Δ^{F+1}`. Sorted by position.
///
/// Earlier stages may still read 0 there: a change of basis can create the
/// entry before it is marked.
pub fn preserved_pivots(sweep: &Sweep) -> Result<Vec<(usize, usize)>, SweepError> {
    let mut out = Vec::new();
    for (marked, (row, col)) in sweep.primary_pivots() {
        for stage in marked..=sweep.states.len() + 1 {
            if !sweep.delta(stage).matrix().get(row, col) {
                return Err(SweepError::PivotChanged {
                    row,
                    col,
                    marked,
                    stage,
                });
            }
        }
        out.push((row, col));
    }
    out.sort_unstable();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{GradedBasis, Generator};
    use crate::fixtures;
    use crate::poset::FinitePoset;

    fn four_generator() -> ConnectionMatrix {
        let order = FinitePoset::chain(["1", "2", "3", "4"]);
        let basis = GradedBasis::new(
            order,
            vec![
                Generator::new("a", 0, 0),
                Generator::new("b", 1, 1),
                Generator::new("c", 2, 1),
                Generator::new("d", 3, 2),
            ],
        )
        .unwrap();
        ConnectionMatrix::new(basis, Gf2Matrix::from_entries(4, 4, &[(0, 1), (2, 3)])).unwrap()
    }

    #[test]
    fn zero_matrix_sweep() {
        let z = ConnectionMatrix::zero(fixtures::example_basis());
        let s = sweep(&z).unwrap();
        assert_eq!(s.states.len(), 2);
        for st in &s.states {
            assert!(st.pivots.is_empty());
            assert_eq!(st.transition.matrix(), &Gf2Matrix::identity(3));
            assert_eq!(st.delta, z);
        }
        assert_eq!(preserved_pivots(&s).unwrap(), []);
        verify_prop41(&s).unwrap();
        let pages = ss_pages(&s);
        assert_eq!(pages, ss_oracle(&z).unwrap());
        assert!(pages.iter().all(|p| p.total_dim() == 3 && p.differential_ranks.is_empty()));
    }

    #[test]
    fn example_mu_sweep() {
        let mu = fixtures::example_delta_mu();
        let s = sweep(&mu).unwrap();
        assert_eq!(s.states[0].pivots, BTreeMap::from([((0, 1), PivotKind::Primary)]));
        assert_eq!(
            s.states[1].pivots,
            BTreeMap::from([((0, 2), PivotKind::ChangeOfBasis)])
        );
        assert_eq!(
            s.states[1].transition.matrix(),
            fixtures::example_transition().matrix()
        );
        assert!(!s.terminal.matrix().get(0, 2));
        assert_eq!(preserved_pivots(&s).unwrap(), [(0, 1)]);
        verify_prop41(&s).unwrap();

        let pages = ss_pages(&s);
        assert_eq!(pages[0].dims.len(), 3);
        assert_eq!(pages[0].rank(1, 1), 1);
        assert_eq!(
            pages[1].dims,
            BTreeMap::from([((2, 1), 1)])
        );
        assert_eq!(pages[2].dims, pages[1].dims);
        assert_eq!(pages, ss_oracle(&mu).unwrap());
    }

    #[test]
    fn four_generator_sweep() {
        let d = four_generator();
        let s = sweep(&d).unwrap();
        assert_eq!(
            s.states[0].pivots,
            BTreeMap::from([((0, 1), PivotKind::Primary), ((2, 3), PivotKind::Primary)])
        );
        for st in &s.states[1..] {
            assert!(st.pivots.is_empty());
            assert_eq!(st.transition.matrix(), &Gf2Matrix::identity(4));
        }
        assert_eq!(preserved_pivots(&s).unwrap(), [(0, 1), (2, 3)]);
        let pages = ss_pages(&s);
        assert_eq!(pages.last().unwrap().total_dim(), 0);
        assert_eq!(pages, ss_oracle(&d).unwrap());
    }

    #[test]
    fn corrupted_transition_is_located() {
        let mu = fixtures::example_delta_mu();
        let mut s = sweep(&mu).unwrap();
        let basis = mu.basis().clone();
        let mut bad = s.states[0].transition.matrix().clone();
        bad.set(0, 1, true);
        s.states[0].transition = TransitionCandidate::new(basis.clone(), basis, bad).unwrap();
        assert!(matches!(
            verify_prop41(&s),
            Err(SweepError::TransitionShape { stage: 1, row: 0, col: 1 })
        ));
    }

    #[test]
    fn non_total_order_is_rejected() {
        let basis = GradedBasis::new(
            FinitePoset::antichain(["a", "b"]),
            vec![Generator::new("x", 0, 0), Generator::new("y", 1, 0)],
        )
        .unwrap();
        let z = ConnectionMatrix::zero(basis);
        assert_eq!(sweep(&z), Err(SweepError::NotTotal));
        assert_eq!(ss_oracle(&z), Err(SweepError::NotTotal));
    }

    #[test]
    fn tiny_complexes() {
        let empty = ConnectionMatrix::zero(
            GradedBasis::new(FinitePoset::chain::<&str>([]), vec![]).unwrap(),
        );
        let s = sweep(&empty).unwrap();
        assert!(s.states.is_empty());
        assert_eq!(ss_pages(&s), ss_oracle(&empty).unwrap());
        let one = ConnectionMatrix::zero(
            GradedBasis::new(FinitePoset::chain(["p"]), vec![Generator::new("x", 0, 3)]).unwrap(),
        );
        let s = sweep(&one).unwrap();
        let pages = ss_pages(&s);
        assert_eq!(pages.len(), 1);
        assert_eq!(pages[0].dim(0, 3), 1);
        assert_eq!(pages, ss_oracle(&one).unwrap());
    }
}
