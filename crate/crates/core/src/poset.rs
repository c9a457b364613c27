//! Finite partial orders on the index set of a Morse decomposition.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("not a partial order: cycle through `{0}`")]
    Cycle(String),
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown element `{0}`")]
    UnknownLabel(String),
    #[error("element index {0} out of range")]
    OutOfRange(usize),
    #[error("posets have different element sets")]
    ElementMismatch,
    #[error("{0:?} is not an interval")]
    NotInterval(Vec<usize>),
}

/// Strict partial order on labelled elements, stored transitively closed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    // less[a * n + b] <=> a < b
    less: Vec<bool>,
}

impl FinitePoset {
    /// Builds the order generated by `relations` (pairs `(a, b)` meaning
    /// `a < b`, by element index), taking the transitive closure.
    pub fn new<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        relations: &[(usize, usize)],
    ) -> Result<Self, PosetError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(PosetError::DuplicateLabel(l.clone()));
            }
        }
        let n = labels.len();
        let mut less = vec![false; n * n];
        for &(a, b) in relations {
            if a >= n {
                return Err(PosetError::OutOfRange(a));
            }
            if b >= n {
                return Err(PosetError::OutOfRange(b));
            }
            less[a * n + b] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if less[i * n + k] {
                    for j in 0..n {
                        if less[k * n + j] {
                            less[i * n + j] = true;
                        }
                    }
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| less[i * n + i]) {
            return Err(PosetError::Cycle(labels[i].clone()));
        }
        Ok(Self { labels, less })
    }

    /// Same as [`FinitePoset::new`] but with relations given by label.
    pub fn from_labels<S: AsRef<str>>(
        labels: &[S],
        relations: &[(S, S)],
    ) -> Result<Self, PosetError> {
        let names: Vec<String> = labels.iter().map(|s| String::from(s.as_ref())).collect();
        let find = |s: &S| {
            names
                .iter()
                .position(|l| l == s.as_ref())
                .ok_or_else(|| PosetError::UnknownLabel(String::from(s.as_ref())))
        };
        let pairs = relations
            .iter()
            .map(|(a, b)| Ok((find(a)?, find(b)?)))
            .collect::<Result<Vec<_>, PosetError>>()?;
        Self::new(names.clone(), &pairs)
    }

    /// Total order in the given label order.
    pub fn chain<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Self {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let rel: Vec<(usize, usize)> = (1..labels.len()).map(|i| (i - 1, i)).collect();
        Self::new(labels, &rel).expect("a chain is a partial order")
    }

    pub fn antichain<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Self {
        Self::new(labels, &[]).expect("an antichain is a partial order")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn less(&self, a: usize, b: usize) -> bool {
        self.less[a * self.len() + b]
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        a == b || self.less(a, b) || self.less(b, a)
    }

    /// `b` covers `a`: `a < b` with nothing strictly between.
    pub fn covers(&self, a: usize, b: usize) -> bool {
        self.less(a, b) && !(0..self.len()).any(|c| self.less(a, c) && self.less(c, b))
    }

    /// All pairs `(a, b)` with `a < b`, row-major.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.less(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Covering pairs `(a, b)`, row-major. Generates the order.
    pub fn cover_relations(&self) -> Vec<(usize, usize)> {
        self.relations()
            .into_iter()
            .filter(|&(a, b)| self.covers(a, b))
            .collect()
    }

    pub fn is_total(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (a + 1..n).all(|b| self.comparable(a, b)))
    }

    /// Canonical linear extension: repeatedly take the minimal element with
    /// the smallest input position.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut placed = vec![false; n];
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let next = (0..n)
                .find(|&b| !placed[b] && (0..n).all(|a| placed[a] || !self.less(a, b)))
                .expect("partial orders have minimal elements");
            placed[next] = true;
            out.push(next);
        }
        out
    }

    /// Whether every relation of `coarse` holds in `self`.
    pub fn extends(&self, coarse: &FinitePoset) -> Result<bool, PosetError> {
        if self.labels != coarse.labels {
            return Err(PosetError::ElementMismatch);
        }
        Ok(coarse.relations().into_iter().all(|(a, b)| self.less(a, b)))
    }

    pub fn is_interval(&self, members: &[usize]) -> bool {
        let n = self.len();
        let mut inside = vec![false; n];
        for &m in members {
            if m >= n {
                return false;
            }
            inside[m] = true;
        }
        for &p in members {
            for &q in members {
                if self.less(p, q) && (0..n).any(|r| !inside[r] && self.less(p, r) && self.less(r, q))
                {
                    return false;
                }
            }
        }
        true
    }

    pub fn interval(&self, members: &[usize]) -> Result<Interval, PosetError> {
        let iv = Interval::new(members.iter().copied());
        if self.is_interval(iv.members()) {
            Ok(iv)
        } else {
            Err(PosetError::NotInterval(iv.0))
        }
    }

    pub fn interval_by_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Interval, PosetError> {
        let members = labels
            .iter()
            .map(|l| {
                self.index_of(l.as_ref())
                    .ok_or_else(|| PosetError::UnknownLabel(String::from(l.as_ref())))
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.interval(&members)
    }

    pub fn full(&self) -> Interval {
        Interval::new(0..self.len())
    }

    /// Every convex subset, including the empty set and the whole poset,
    /// sorted by size then lexicographically.
    pub fn intervals(&self) -> Vec<Interval> {
        // Depth-first over a linear extension. Excluding an element after
        // some smaller element was included forbids everything above it, so
        // each leaf is convex and no branch dead-ends.
        fn go(
            poset: &FinitePoset,
            order: &[usize],
            depth: usize,
            chosen: &mut Vec<usize>,
            forbidden: &mut Vec<usize>,
            out: &mut Vec<Interval>,
        ) {
            if depth == order.len() {
                out.push(Interval::new(chosen.iter().copied()));
                return;
            }
            let e = order[depth];
            if forbidden[e] == 0 {
                chosen.push(e);
                go(poset, order, depth + 1, chosen, forbidden, out);
                chosen.pop();
            }
            let blocks = chosen.iter().any(|&a| poset.less(a, e));
            let above: Vec<usize> = if blocks {
                (0..poset.len()).filter(|&b| poset.less(e, b)).collect()
            } else {
                Vec::new()
            };
            for &b in &above {
                forbidden[b] += 1;
            }
            go(poset, order, depth + 1, chosen, forbidden, out);
            for &b in &above {
                forbidden[b] -= 1;
            }
        }
        let order = self.linear_extension();
        let mut out = Vec::new();
        go(
            self,
            &order,
            0,
            &mut Vec::new(),
            &mut vec![0; self.len()],
            &mut out,
        );
        out.sort();
        out
    }

    /// Whether `(attractor, repeller)` is an adjacent pair: disjoint, convex
    /// union, and no repeller element below an attractor element.
    pub fn is_adjacent(&self, attractor: &Interval, repeller: &Interval) -> bool {
        let disjoint = attractor.members().iter().all(|a| !repeller.contains(*a));
        disjoint
            && self.is_interval(attractor.members())
            && self.is_interval(repeller.members())
            && self.is_interval(attractor.union(repeller).members())
            && attractor
                .members()
                .iter()
                .all(|&p| repeller.members().iter().all(|&q| !self.less(q, p)))
    }

    pub fn adjacent_pair(
        &self,
        attractor: Interval,
        repeller: Interval,
    ) -> Option<AdjacentPair> {
        self.is_adjacent(&attractor, &repeller)
            .then_some(AdjacentPair { attractor, repeller })
    }

    /// All adjacent pairs, ordered by the union's canonical interval order and
    /// then by attractor.
    pub fn adjacent_pairs(&self) -> Vec<AdjacentPair> {
        let intervals = self.intervals();
        let mut out = Vec::new();
        for i in &intervals {
            for j in &intervals {
                if self.is_adjacent(i, j) {
                    out.push(AdjacentPair {
                        attractor: i.clone(),
                        repeller: j.clone(),
                    });
                }
            }
        }
        out.sort_by(|a, b| {
            a.union()
                .cmp(&b.union())
                .then_with(|| a.attractor.cmp(&b.attractor))
        });
        out
    }

    /// Every chain `low = c_n < ... < c_0 = high` through covering relations,
    /// listed from `low` upward. Empty unless `low < high`.
    pub fn order_closure_paths(&self, low: usize, high: usize) -> Vec<Vec<usize>> {
        fn extend(poset: &FinitePoset, path: &mut Vec<usize>, high: usize, out: &mut Vec<Vec<usize>>) {
            let last = *path.last().expect("path is never empty");
            if last == high {
                out.push(path.clone());
                return;
            }
            for next in 0..poset.len() {
                if poset.covers(last, next) && (next == high || poset.less(next, high)) {
                    path.push(next);
                    extend(poset, path, high, out);
                    path.pop();
                }
            }
        }
        let mut out = Vec::new();
        if low < self.len() && high < self.len() && self.less(low, high) {
            extend(self, &mut vec![low], high, &mut out);
        }
        out
    }
}

/// Convex subset of a poset, as sorted element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval(Vec<usize>);

impl Interval {
    pub fn new(members: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = members.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Interval(v)
    }

    pub fn empty() -> Self {
        Interval(Vec::new())
    }

    pub fn singleton(p: usize) -> Self {
        Interval(vec![p])
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, p: usize) -> bool {
        self.0.binary_search(&p).is_ok()
    }

    pub fn union(&self, other: &Interval) -> Interval {
        Interval::new(self.0.iter().chain(&other.0).copied())
    }

    pub fn is_subset(&self, other: &Interval) -> bool {
        self.0.iter().all(|p| other.contains(*p))
    }

    /// Labels of the members in a poset, e.g. `{2,3}`.
    pub fn display(&self, poset: &FinitePoset) -> String {
        let mut s = String::from("{");
        for (k, &m) in self.0.iter().enumerate() {
            if k > 0 {
                s.push(',');
            }
            s.push_str(poset.label(m));
        }
        s.push('}');
        s
    }
}

impl Ord for Interval {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Ordered pair `(I, J)` of disjoint intervals with convex union and `I` on
/// the attracting (lower) side.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AdjacentPair {
    attractor: Interval,
    repeller: Interval,
}

impl AdjacentPair {
    pub fn attractor(&self) -> &Interval {
        &self.attractor
    }

    pub fn repeller(&self) -> &Interval {
        &self.repeller
    }

    pub fn union(&self) -> Interval {
        self.attractor.union(&self.repeller)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn chain3() -> FinitePoset {
        FinitePoset::chain(["1", "2", "3"])
    }

    fn iv(m: &[usize]) -> Interval {
        Interval::new(m.iter().copied())
    }

    #[test]
    fn validate_takes_closure() {
        let p = FinitePoset::from_labels(&["1", "2", "3"], &[("1", "2"), ("2", "3")]).unwrap();
        assert_eq!(p.relations(), vec![(0, 1), (0, 2), (1, 2)]);
        assert!(p.is_total());
        assert_eq!(p, chain3());
    }

    #[test]
    fn validate_rejects_cycles() {
        let err = FinitePoset::from_labels(&["1", "2"], &[("1", "2"), ("2", "1")]).unwrap_err();
        assert!(matches!(err, PosetError::Cycle(_)));
        assert!(FinitePoset::new(["a"], &[(0, 0)]).is_err());
        assert!(matches!(
            FinitePoset::from_labels(&["a"], &[("a", "b")]),
            Err(PosetError::UnknownLabel(_))
        ));
        assert!(matches!(
            FinitePoset::new(["a", "a"], &[]),
            Err(PosetError::DuplicateLabel(_))
        ));
    }

    #[test]
    fn chain_intervals() {
        let got = chain3().intervals();
        let want = vec![
            iv(&[]),
            iv(&[0]),
            iv(&[1]),
            iv(&[2]),
            iv(&[0, 1]),
            iv(&[1, 2]),
            iv(&[0, 1, 2]),
        ];
        assert_eq!(got, want);
    }

    #[test]
    fn antichain_and_singleton_intervals() {
        assert_eq!(FinitePoset::antichain(["a", "b", "c"]).intervals().len(), 8);
        assert_eq!(
            FinitePoset::chain(["x"]).intervals(),
            vec![Interval::empty(), iv(&[0])]
        );
        assert_eq!(FinitePoset::chain::<&str>([]).intervals(), vec![Interval::empty()]);
    }

    #[test]
    fn interval_count_matches_brute_force() {
        // diamond 0 < 1, 0 < 2, 1 < 3, 2 < 3
        let p = FinitePoset::new(["a", "b", "c", "d"], &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let brute: Vec<Interval> = {
            let mut v: Vec<Interval> = (0u32..16)
                .map(|m| Interval::new((0..4).filter(|i| m >> i & 1 == 1)))
                .filter(|i| p.is_interval(i.members()))
                .collect();
            v.sort();
            v
        };
        assert_eq!(p.intervals(), brute);
        assert!(!p.is_interval(&[0, 3]));
        assert!(!p.is_interval(&[0, 1, 3]));
    }

    #[test]
    fn adjacent_pairs_in_chain() {
        let p = chain3();
        let pairs = p.adjacent_pairs();
        let has = |a: &[usize], b: &[usize]| {
            pairs
                .iter()
                .any(|x| x.attractor() == &iv(a) && x.repeller() == &iv(b))
        };
        assert!(has(&[0], &[1]));
        assert!(has(&[1], &[2]));
        assert!(has(&[0], &[1, 2]));
        assert!(has(&[0, 1], &[2]));
        assert!(!has(&[0], &[2]));
        assert!(!has(&[1], &[0]));
        assert!(p.adjacent_pair(iv(&[0]), iv(&[2])).is_none());
        for pair in &pairs {
            assert!(p.is_interval(pair.union().members()));
        }
    }

    #[test]
    fn antichain_pairs_go_both_ways() {
        let p = FinitePoset::antichain(["1", "2"]);
        assert!(p.is_adjacent(&iv(&[0]), &iv(&[1])));
        assert!(p.is_adjacent(&iv(&[1]), &iv(&[0])));
    }

    #[test]
    fn extension_checks() {
        let chain = chain3();
        let partial = FinitePoset::from_labels(&["1", "2", "3"], &[("1", "2")]).unwrap();
        let anti = FinitePoset::antichain(["1", "2", "3"]);
        assert!(chain.extends(&partial).unwrap());
        assert!(!partial.extends(&chain).unwrap());
        assert!(chain.extends(&anti).unwrap());
        assert!(partial.extends(&anti).unwrap());
        assert_eq!(
            chain.extends(&FinitePoset::chain(["1", "2"])),
            Err(PosetError::ElementMismatch)
        );
    }

    #[test]
    fn covering_chains() {
        let p = chain3();
        assert_eq!(p.order_closure_paths(0, 2), vec![vec![0, 1, 2]]);
        assert_eq!(p.order_closure_paths(1, 2), vec![vec![1, 2]]);
        assert!(p.order_closure_paths(1, 1).is_empty());
        assert!(p.order_closure_paths(2, 0).is_empty());
        let anti = FinitePoset::antichain(["1", "2"]);
        assert!(anti.order_closure_paths(0, 1).is_empty());
        let diamond =
            FinitePoset::new(["a", "b", "c", "d"], &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(
            diamond.order_closure_paths(0, 3),
            vec![vec![0, 1, 3], vec![0, 2, 3]]
        );
    }

    #[test]
    fn linear_extension_respects_order() {
        let p = FinitePoset::from_labels(&["c", "a", "b"], &[("a", "c"), ("b", "a")]).unwrap();
        assert_eq!(p.linear_extension(), vec![2, 1, 0]);
    }
}
