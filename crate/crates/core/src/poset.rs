use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::{ElementSet, Error, Result};

/// A finite partial order on dense ids `0..n` with external labels.
///
/// Stores the full relation as up-sets and down-sets (one bit vector per
/// element) together with the Hasse covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    index: BTreeMap<String, usize>,
    /// `up[x]` = { y : x <= y }
    up: Vec<ElementSet>,
    /// `down[x]` = { y : y <= x }
    down: Vec<ElementSet>,
    covers: Vec<(usize, usize)>,
}

/// Label for a set of labelled things, e.g. `{0,1,2}`.
pub fn set_label<'a, I: IntoIterator<Item = &'a str>>(members: I) -> String {
    let mut s = String::from("{");
    for (i, m) in members.into_iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        s.push_str(m);
    }
    s.push('}');
    s
}

impl FinitePoset {
    /// Builds the poset generated by `relations` (pairs `a <= b`); the order
    /// is their reflexive-transitive closure.
    pub fn build<S: AsRef<str>>(labels: &[S], relations: &[(S, S)]) -> Result<FinitePoset> {
        let labels: Vec<String> = labels.iter().map(|l| l.as_ref().to_string()).collect();
        let mut index = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let lookup = |s: &S| {
            index
                .get(s.as_ref())
                .copied()
                .ok_or_else(|| Error::UnknownLabel(s.as_ref().to_string()))
        };
        let mut pairs = Vec::with_capacity(relations.len());
        for (a, b) in relations {
            pairs.push((lookup(a)?, lookup(b)?));
        }
        Self::from_pairs(labels, pairs)
    }

    /// Builds a poset from id pairs `a <= b` over `labels.len()` elements.
    pub fn from_pairs<I>(labels: Vec<String>, pairs: I) -> Result<FinitePoset>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let n = labels.len();
        let mut index = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let mut succ: Vec<BTreeSet<usize>> = alloc::vec![BTreeSet::new(); n];
        for (a, b) in pairs {
            if a >= n {
                return Err(Error::OutOfRange(a));
            }
            if b >= n {
                return Err(Error::OutOfRange(b));
            }
            if a != b {
                succ[a].insert(b);
            }
        }

        // Kahn's algorithm; leftover vertices sit on a cycle.
        let mut indeg = alloc::vec![0usize; n];
        for s in &succ {
            for &b in s {
                indeg[b] += 1;
            }
        }
        let mut ready: BTreeSet<usize> = (0..n).filter(|&x| indeg[x] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(x) = ready.pop_first() {
            topo.push(x);
            for &y in &succ[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    ready.insert(y);
                }
            }
        }
        if topo.len() < n {
            let stuck = (0..n).find(|&x| indeg[x] > 0).unwrap();
            let next = succ[stuck].iter().copied().find(|&y| indeg[y] > 0).unwrap();
            return Err(Error::CycleDetected(
                labels[stuck].clone(),
                labels[next].clone(),
            ));
        }

        let mut up: Vec<ElementSet> = (0..n).map(|x| ElementSet::singleton(n, x)).collect();
        for &x in topo.iter().rev() {
            let mut acc = up[x].clone();
            for &y in &succ[x] {
                acc.union_with(&up[y]);
            }
            up[x] = acc;
        }
        let mut down: Vec<ElementSet> = (0..n).map(|_| ElementSet::new(n)).collect();
        for (x, ux) in up.iter().enumerate() {
            for y in ux {
                down[y].insert(x);
            }
        }
        let covers = Self::reduction(&up, &down);
        Ok(FinitePoset {
            labels,
            index,
            up,
            down,
            covers,
        })
    }

    fn reduction(up: &[ElementSet], down: &[ElementSet]) -> Vec<(usize, usize)> {
        let mut covers = Vec::new();
        for (x, ux) in up.iter().enumerate() {
            let mut above = ux.clone();
            above.remove(x);
            for y in &above {
                let mut between = above.intersection(&down[y]);
                between.remove(y);
                if between.is_empty() {
                    covers.push((x, y));
                }
            }
        }
        covers
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

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn id_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Ids for a list of labels.
    pub fn ids_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<ElementSet> {
        let mut s = self.empty_set();
        for l in labels {
            let id = self
                .id_of(l.as_ref())
                .ok_or_else(|| Error::UnknownLabel(l.as_ref().to_string()))?;
            s.insert(id);
        }
        Ok(s)
    }

    pub fn set_labels(&self, s: &ElementSet) -> Vec<String> {
        s.iter().map(|x| self.labels[x].clone()).collect()
    }

    /// `{a,b,c}` rendering of a subset.
    pub fn render_set(&self, s: &ElementSet) -> String {
        set_label(s.iter().map(|x| self.label(x)))
    }

    pub fn empty_set(&self) -> ElementSet {
        ElementSet::new(self.len())
    }

    pub fn all(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// `P_{>=x}`
    pub fn up_set(&self, x: usize) -> &ElementSet {
        &self.up[x]
    }

    /// `P_{<=x}`
    pub fn down_set(&self, x: usize) -> &ElementSet {
        &self.down[x]
    }

    pub fn strict_up(&self, x: usize) -> ElementSet {
        let mut s = self.up[x].clone();
        s.remove(x);
        s
    }

    pub fn strict_down(&self, x: usize) -> ElementSet {
        let mut s = self.down[x].clone();
        s.remove(x);
        s
    }

    /// Hasse edges `(x, y)` with `x` covered by `y`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn upper_covers(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.covers.iter().filter(move |c| c.0 == x).map(|c| c.1)
    }

    pub fn lower_covers(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.covers.iter().filter(move |c| c.1 == x).map(|c| c.0)
    }

    pub fn opposite(&self) -> FinitePoset {
        let mut covers: Vec<_> = self.covers.iter().map(|&(a, b)| (b, a)).collect();
        covers.sort_unstable();
        FinitePoset {
            labels: self.labels.clone(),
            index: self.index.clone(),
            up: self.down.clone(),
            down: self.up.clone(),
            covers,
        }
    }

    pub fn mxl(&self) -> ElementSet {
        ElementSet::from_ids(
            self.len(),
            (0..self.len()).filter(|&x| self.up[x].len() == 1),
        )
    }

    pub fn mnl(&self) -> ElementSet {
        ElementSet::from_ids(
            self.len(),
            (0..self.len()).filter(|&x| self.down[x].len() == 1),
        )
    }

    /// Subposet on `s`; the second component maps new ids to old ids.
    pub fn induced(&self, s: &ElementSet) -> (FinitePoset, Vec<usize>) {
        let ids: Vec<usize> = s.to_vec();
        let mut new_of = alloc::vec![usize::MAX; self.len()];
        for (i, &x) in ids.iter().enumerate() {
            new_of[x] = i;
        }
        let m = ids.len();
        let up: Vec<ElementSet> = ids
            .iter()
            .map(|&x| ElementSet::from_ids(m, self.up[x].intersection(s).iter().map(|y| new_of[y])))
            .collect();
        let down: Vec<ElementSet> = ids
            .iter()
            .map(|&x| {
                ElementSet::from_ids(m, self.down[x].intersection(s).iter().map(|y| new_of[y]))
            })
            .collect();
        let labels: Vec<String> = ids.iter().map(|&x| self.labels[x].clone()).collect();
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        let covers = Self::reduction(&up, &down);
        (
            FinitePoset {
                labels,
                index,
                up,
                down,
                covers,
            },
            ids,
        )
    }

    /// The subposet with the members of `s` removed.
    pub fn without(&self, s: &ElementSet) -> (FinitePoset, Vec<usize>) {
        self.induced(&self.all().difference(s))
    }

    /// Components of the comparability graph restricted to `s`, ordered by
    /// least member.
    pub fn connected_components(&self, s: &ElementSet) -> Vec<ElementSet> {
        let mut left = s.clone();
        let mut blocks = Vec::new();
        while let Some(seed) = left.first() {
            let mut block = ElementSet::singleton(self.len(), seed);
            let mut frontier = alloc::vec![seed];
            left.remove(seed);
            while let Some(x) = frontier.pop() {
                let mut nb = self.up[x].union(&self.down[x]);
                nb.intersect_with(&left);
                for y in &nb {
                    left.remove(y);
                    block.insert(y);
                    frontier.push(y);
                }
            }
            blocks.push(block);
        }
        blocks
    }

    pub fn is_connected(&self, s: &ElementSet) -> bool {
        self.connected_components(s).len() == 1
    }

    pub fn is_chain(&self, s: &ElementSet) -> bool {
        s.iter()
            .all(|x| s.is_subset(&self.up[x].union(&self.down[x])))
    }

    pub fn is_antichain(&self, s: &ElementSet) -> bool {
        s.iter().all(|x| {
            let mut cmp = self.up[x].union(&self.down[x]);
            cmp.remove(x);
            cmp.is_disjoint(s)
        })
    }

    /// Every inclusion-maximal chain, once each: the cover paths from a
    /// minimal to a maximal element. The empty poset has the single empty
    /// chain.
    pub fn maximal_chains(&self) -> Vec<ElementSet> {
        let mut out = Vec::new();
        if self.is_empty() {
            out.push(self.empty_set());
            return out;
        }
        let upper: Vec<Vec<usize>> = (0..self.len())
            .map(|x| self.upper_covers(x).collect())
            .collect();
        let mut path = Vec::new();
        for m in self.mnl().iter() {
            self.chain_walk(m, &upper, &mut path, &mut out);
        }
        out
    }

    fn chain_walk(
        &self,
        x: usize,
        upper: &[Vec<usize>],
        path: &mut Vec<usize>,
        out: &mut Vec<ElementSet>,
    ) {
        path.push(x);
        if upper[x].is_empty() {
            out.push(ElementSet::from_ids(self.len(), path.iter().copied()));
        } else {
            for &y in &upper[x] {
                self.chain_walk(y, upper, path, out);
            }
        }
        path.pop();
    }

    pub fn lower_bounds(&self, s: &ElementSet) -> ElementSet {
        let mut lb = self.all();
        for x in s {
            lb.intersect_with(&self.down[x]);
        }
        lb
    }

    pub fn upper_bounds(&self, s: &ElementSet) -> ElementSet {
        let mut ub = self.all();
        for x in s {
            ub.intersect_with(&self.up[x]);
        }
        ub
    }

    /// Bounded below or bounded above.
    pub fn is_bounded(&self, s: &ElementSet) -> Result<bool> {
        if s.is_empty() {
            return Err(Error::EmptySubset);
        }
        Ok(!self.lower_bounds(s).is_empty() || !self.upper_bounds(s).is_empty())
    }

    /// Maximum of `s`, if it has one.
    pub fn maximum_of(&self, s: &ElementSet) -> Option<usize> {
        s.iter().find(|&m| s.is_subset(&self.down[m]))
    }

    /// Minimum of `s`, if it has one.
    pub fn minimum_of(&self, s: &ElementSet) -> Option<usize> {
        s.iter().find(|&m| s.is_subset(&self.up[m]))
    }

    /// Greatest lower bound of a non-empty subset.
    pub fn meet(&self, s: &ElementSet) -> Result<Option<usize>> {
        if s.is_empty() {
            return Err(Error::EmptySubset);
        }
        Ok(self.maximum_of(&self.lower_bounds(s)))
    }

    /// Least upper bound of a non-empty subset.
    pub fn join(&self, s: &ElementSet) -> Result<Option<usize>> {
        if s.is_empty() {
            return Err(Error::EmptySubset);
        }
        Ok(self.minimum_of(&self.upper_bounds(s)))
    }

    /// A linear extension; at every step the least available id is taken.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut indeg: Vec<usize> = (0..n).map(|x| self.lower_covers(x).count()).collect();
        let mut ready: BTreeSet<usize> = (0..n).filter(|&x| indeg[x] == 0).collect();
        let mut out = Vec::with_capacity(n);
        while let Some(x) = ready.pop_first() {
            out.push(x);
            for y in self.upper_covers(x) {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    ready.insert(y);
                }
            }
        }
        out
    }

    /// Length of the longest chain ending at each element, minus one.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = alloc::vec![0usize; self.len()];
        for x in self.linear_extension() {
            h[x] = self.lower_covers(x).map(|z| h[z] + 1).max().unwrap_or(0);
        }
        h
    }

    /// Disjoint union; labels of `other` must not collide with ours.
    pub fn disjoint_union(&self, other: &FinitePoset) -> Result<FinitePoset> {
        let n = self.len();
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        let pairs: Vec<(usize, usize)> = self
            .covers
            .iter()
            .copied()
            .chain(other.covers.iter().map(|&(a, b)| (a + n, b + n)))
            .collect();
        FinitePoset::from_pairs(labels, pairs)
    }
}

/// An order-preserving map, stored as its table of values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneMap {
    values: Vec<usize>,
}

impl MonotoneMap {
    /// Checks totality, range and monotonicity against `source` and `target`.
    pub fn new(source: &FinitePoset, target: &FinitePoset, values: Vec<usize>) -> Result<Self> {
        if values.len() != source.len() {
            return Err(Error::OutOfRange(values.len()));
        }
        if let Some(&bad) = values.iter().find(|&&v| v >= target.len()) {
            return Err(Error::OutOfRange(bad));
        }
        if !Self::is_monotone(source, target, &values) {
            return Err(Error::NotMonotone);
        }
        Ok(MonotoneMap { values })
    }

    pub fn identity(p: &FinitePoset) -> Self {
        MonotoneMap {
            values: (0..p.len()).collect(),
        }
    }

    /// Only cover pairs need checking; transitivity does the rest.
    pub fn is_monotone(source: &FinitePoset, target: &FinitePoset, values: &[usize]) -> bool {
        source
            .covers()
            .iter()
            .all(|&(x, y)| target.leq(values[x], values[y]))
    }

    pub fn apply(&self, x: usize) -> usize {
        self.values[x]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn fixed_points(&self) -> impl Iterator<Item = usize> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter(|(x, v)| x == *v)
            .map(|(x, _)| x)
    }

    pub fn is_fixed_point_free(&self) -> bool {
        self.fixed_points().next().is_none()
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &MonotoneMap) -> MonotoneMap {
        MonotoneMap {
            values: first.values.iter().map(|&v| self.values[v]).collect(),
        }
    }
}
