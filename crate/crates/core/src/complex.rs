//! Abstract simplicial complexes stored by their facets, plus the order
//! complex, face poset, closed star and crosscut complex constructions.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use crate::stars::star;
use crate::{set_label, ElementSet, Error, FinitePoset, Limits, Result};

/// A finite abstract simplicial complex on labelled vertices `0..m`.
///
/// Facets are kept in canonical form: no facet contains another, and the
/// list is sorted by sorted vertex ids. Equality compares facets by vertex
/// labels, so complexes built over different id spaces compare sensibly.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    facets: Vec<ElementSet>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.canonical_form() == other.canonical_form()
    }
}

impl Eq for SimplicialComplex {}

/// Keeps the inclusion-maximal non-empty sets, sorted and deduplicated.
fn maximize(mut sets: Vec<ElementSet>) -> Vec<ElementSet> {
    sets.retain(|s| !s.is_empty());
    // Larger sets first so that a kept set is never contained in a later one.
    sets.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    sets.dedup();
    let mut kept: Vec<ElementSet> = Vec::new();
    for s in sets {
        if !kept.iter().any(|k| s.is_subset(k)) {
            kept.push(s);
        }
    }
    kept.sort();
    kept
}

impl SimplicialComplex {
    /// Complex generated by `faces`; every vertex must occur in some face.
    pub fn from_faces(labels: Vec<String>, faces: Vec<ElementSet>) -> Result<Self> {
        let m = labels.len();
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let mut used = ElementSet::new(m);
        for f in &faces {
            if f.universe() != m {
                return Err(Error::OutOfRange(f.universe()));
            }
            used.union_with(f);
        }
        if let Some(v) = ElementSet::full(m).difference(&used).first() {
            return Err(Error::HypothesisViolated(alloc::format!(
                "vertex {} lies in no face",
                labels[v]
            )));
        }
        Ok(SimplicialComplex {
            labels,
            facets: maximize(faces),
        })
    }

    /// Complex generated by `faces`, keeping only the vertices that occur and
    /// renumbering them in ascending order.
    fn compacted(labels: &[String], faces: Vec<ElementSet>) -> Self {
        let mut used = ElementSet::new(labels.len());
        for f in &faces {
            used.union_with(f);
        }
        let ids = used.to_vec();
        let mut new_of = alloc::vec![usize::MAX; labels.len()];
        for (i, &v) in ids.iter().enumerate() {
            new_of[v] = i;
        }
        let m = ids.len();
        let faces = faces
            .iter()
            .map(|f| ElementSet::from_ids(m, f.iter().map(|v| new_of[v])))
            .collect();
        SimplicialComplex {
            labels: ids.iter().map(|&v| labels[v].clone()).collect(),
            facets: maximize(faces),
        }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn facets(&self) -> &[ElementSet] {
        &self.facets
    }

    pub fn vertex_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn simplex_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<ElementSet> {
        let mut s = ElementSet::new(self.vertex_count());
        for l in labels {
            let v = self
                .vertex_of(l.as_ref())
                .ok_or_else(|| Error::UnknownLabel(l.as_ref().into()))?;
            s.insert(v);
        }
        Ok(s)
    }

    /// Facets as sorted label lists, sorted. Equality is equality of this.
    pub fn canonical_form(&self) -> Vec<Vec<String>> {
        let mut out: Vec<Vec<String>> = self
            .facets
            .iter()
            .map(|f| {
                let mut v: Vec<String> = f.iter().map(|i| self.labels[i].clone()).collect();
                v.sort();
                v
            })
            .collect();
        out.sort();
        out
    }

    /// `-1` for the empty complex.
    pub fn dimension(&self) -> isize {
        self.facets
            .iter()
            .map(|f| f.len() as isize - 1)
            .max()
            .unwrap_or(-1)
    }

    pub fn contains_simplex(&self, s: &ElementSet) -> bool {
        !s.is_empty() && self.facets.iter().any(|f| s.is_subset(f))
    }

    pub fn render_simplex(&self, s: &ElementSet) -> String {
        set_label(s.iter().map(|v| self.labels[v].as_str()))
    }

    /// All non-empty simplices, sorted by dimension and then members.
    pub fn simplices(&self, limits: &Limits) -> Result<Vec<ElementSet>> {
        let mut all = BTreeSet::new();
        for f in &self.facets {
            let verts = f.to_vec();
            if verts.len() >= 63 || (1usize << verts.len()) > limits.simplices {
                return Err(Error::SizeGuard {
                    what: "simplex enumeration",
                    limit: limits.simplices,
                });
            }
            for mask in 1usize..(1 << verts.len()) {
                let s = ElementSet::from_ids(
                    self.vertex_count(),
                    verts
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &v)| v),
                );
                all.insert((s.len(), s));
            }
            if all.len() > limits.simplices {
                return Err(Error::SizeGuard {
                    what: "simplex enumeration",
                    limit: limits.simplices,
                });
            }
        }
        Ok(all.into_iter().map(|(_, s)| s).collect())
    }

    /// Number of simplices in each dimension `0..=dim`.
    pub fn f_vector(&self, limits: &Limits) -> Result<Vec<usize>> {
        let mut f = Vec::new();
        for s in self.simplices(limits)? {
            let d = s.len() - 1;
            if f.len() <= d {
                f.resize(d + 1, 0);
            }
            f[d] += 1;
        }
        Ok(f)
    }

    pub fn euler_characteristic(&self, limits: &Limits) -> Result<i64> {
        Ok(self
            .f_vector(limits)?
            .iter()
            .enumerate()
            .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum())
    }

    /// Subcomplex of simplices whose union with `sigma` is a simplex: the
    /// complex generated by the facets containing `sigma`.
    pub fn closed_star(&self, sigma: &ElementSet) -> Result<SimplicialComplex> {
        if !self.contains_simplex(sigma) {
            return Err(Error::NotASimplex);
        }
        let faces = self
            .facets
            .iter()
            .filter(|f| sigma.is_subset(f))
            .cloned()
            .collect();
        Ok(Self::compacted(&self.labels, faces))
    }

    /// Checks that `vertex_map` (our vertex ids to `other`'s) is a bijection
    /// carrying facets onto facets.
    pub fn is_isomorphic_via(&self, other: &SimplicialComplex, vertex_map: &[usize]) -> bool {
        let m = other.vertex_count();
        if vertex_map.len() != self.vertex_count() || m != self.vertex_count() {
            return false;
        }
        let image: BTreeSet<usize> = vertex_map.iter().copied().collect();
        if image.len() != m || image.iter().any(|&v| v >= m) {
            return false;
        }
        let mapped = maximize(
            self.facets
                .iter()
                .map(|f| ElementSet::from_ids(m, f.iter().map(|v| vertex_map[v])))
                .collect(),
        );
        mapped == other.facets
    }
}

/// Facets are the maximal chains; simplices are the non-empty chains.
pub fn order_complex(p: &FinitePoset) -> SimplicialComplex {
    let chains = if p.is_empty() {
        Vec::new()
    } else {
        p.maximal_chains()
    };
    SimplicialComplex {
        labels: p.labels().to_vec(),
        facets: maximize(chains),
    }
}

/// Poset of non-empty simplices ordered by inclusion.
#[derive(Clone, Debug)]
pub struct FacePoset {
    pub poset: FinitePoset,
    /// Simplex (vertex ids of the source complex) for each element.
    pub simplices: Vec<ElementSet>,
}

/// Face poset of `k`. Elements are numbered by dimension, then members, and
/// labelled `{a,b,...}` from the vertex labels.
pub fn face_poset(k: &SimplicialComplex, limits: &Limits) -> Result<FacePoset> {
    let simplices = k.simplices(limits)?;
    let position: alloc::collections::BTreeMap<&ElementSet, usize> =
        simplices.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut pairs = Vec::new();
    for (i, s) in simplices.iter().enumerate() {
        if s.len() < 2 {
            continue;
        }
        for v in s {
            let mut face = s.clone();
            face.remove(v);
            pairs.push((position[&face], i));
        }
    }
    let labels = simplices.iter().map(|s| k.render_simplex(s)).collect();
    let poset = FinitePoset::from_pairs(labels, pairs)?;
    Ok(FacePoset { poset, simplices })
}

/// Complex on the vertices `x` whose simplices are the non-empty astral
/// subsets of `x`.
///
/// `A ⊆ X` is astral iff `A ⊆ X ∩ st(z)` for some `z`, so the facets are the
/// maximal members of `{X ∩ st(z)}`. Every `x ∈ X` lies in `st(x)`, so no
/// vertex is lost.
pub fn crosscut_complex(p: &FinitePoset, x: &ElementSet) -> Result<SimplicialComplex> {
    if x.is_empty() {
        return Err(Error::EmptySubset);
    }
    let verts = x.to_vec();
    let m = verts.len();
    let faces = (0..p.len())
        .map(|z| {
            let hit = star(p, z);
            ElementSet::from_ids(
                m,
                verts
                    .iter()
                    .enumerate()
                    .filter(|(_, &v)| hit.contains(v))
                    .map(|(i, _)| i),
            )
        })
        .collect();
    Ok(SimplicialComplex {
        labels: verts.iter().map(|&v| p.label(v).into()).collect(),
        facets: maximize(faces),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn simplex(n: usize) -> SimplicialComplex {
        let labels = (0..n).map(|i| i.to_string()).collect();
        SimplicialComplex::from_faces(labels, vec![ElementSet::full(n)]).unwrap()
    }

    #[test]
    fn two_simplex_counts() {
        let k = simplex(3);
        assert_eq!(k.f_vector(&Limits::DEFAULT).unwrap(), vec![3, 3, 1]);
        assert_eq!(k.euler_characteristic(&Limits::DEFAULT).unwrap(), 1);
        assert_eq!(face_poset(&k, &Limits::DEFAULT).unwrap().poset.len(), 7);
        assert_eq!(
            face_poset(&simplex(2), &Limits::DEFAULT)
                .unwrap()
                .poset
                .len(),
            3
        );
    }

    #[test]
    fn facets_are_maximized() {
        let labels = vec!["a".to_string(), "b".into(), "c".into()];
        let k = SimplicialComplex::from_faces(
            labels,
            vec![
                ElementSet::from_ids(3, [0, 1]),
                ElementSet::from_ids(3, [0]),
                ElementSet::from_ids(3, [2]),
                ElementSet::from_ids(3, [0, 1]),
            ],
        )
        .unwrap();
        assert_eq!(k.facets().len(), 2);
        assert_eq!(k.dimension(), 1);
    }

    #[test]
    fn unused_vertex_rejected() {
        let labels = vec!["a".to_string(), "b".into()];
        assert!(SimplicialComplex::from_faces(labels, vec![ElementSet::from_ids(2, [0])]).is_err());
    }

    #[test]
    fn closed_star_cases() {
        let k = simplex(3);
        let facet = ElementSet::full(3);
        assert_eq!(k.closed_star(&facet).unwrap(), k);
        let edge = simplex(2);
        assert_eq!(
            edge.closed_star(&ElementSet::singleton(2, 0)).unwrap(),
            edge
        );
        assert_eq!(
            edge.closed_star(&ElementSet::new(2)),
            Err(Error::NotASimplex)
        );
    }

    #[test]
    fn singleton_order_complex() {
        let p = FinitePoset::build(&["a"], &[]).unwrap();
        let k = order_complex(&p);
        assert_eq!(k.vertex_count(), 1);
        assert_eq!(k.facets().len(), 1);
        let c = FinitePoset::build(&["0", "1"], &[("0", "1")]).unwrap();
        assert_eq!(order_complex(&c), simplex(2));
    }

    #[test]
    fn crosscut_complex_of_chain_is_an_edge() {
        let c = FinitePoset::build(&["0", "1"], &[("0", "1")]).unwrap();
        assert_eq!(crosscut_complex(&c, &c.all()).unwrap(), simplex(2));
        let single = FinitePoset::build(&["0"], &[]).unwrap();
        assert_eq!(
            crosscut_complex(&single, &single.all())
                .unwrap()
                .dimension(),
            0
        );
    }
}
