#![allow(dead_code)]

use crosscut_core::complex::SimplicialComplex;
use crosscut_core::{ElementSet, FinitePoset};
use rand::rngs::StdRng;
use rand::Rng;

pub fn poset(labels: &[&str], covers: &[(&str, &str)]) -> FinitePoset {
    FinitePoset::build(labels, covers).unwrap()
}

pub fn ex1() -> FinitePoset {
    poset(
        &["0", "1", "2", "3", "4", "5", "6", "7"],
        &[
            ("0", "2"),
            ("0", "3"),
            ("1", "2"),
            ("1", "3"),
            ("2", "5"),
            ("2", "6"),
            ("2", "7"),
            ("3", "5"),
            ("3", "6"),
            ("3", "7"),
            ("4", "6"),
            ("4", "7"),
        ],
    )
}

pub fn ex1_prime() -> FinitePoset {
    let p = ex1();
    p.without(&ElementSet::singleton(p.len(), p.id_of("4").unwrap()))
        .0
}

pub fn ex3() -> FinitePoset {
    poset(
        &["0", "1", "2", "3", "4"],
        &[("0", "2"), ("0", "3"), ("0", "4"), ("1", "3"), ("1", "4")],
    )
}

pub fn chain2() -> FinitePoset {
    poset(&["0", "1"], &[("0", "1")])
}

pub fn single() -> FinitePoset {
    poset(&["a"], &[])
}

pub fn q3() -> FinitePoset {
    poset(&["a", "b", "c"], &[("a", "b"), ("a", "c")])
}

pub fn antichain2() -> FinitePoset {
    poset(&["a", "b"], &[])
}

pub fn v_poset() -> FinitePoset {
    poset(&["0", "1", "2"], &[("0", "2"), ("1", "2")])
}

pub fn complex(labels: &[&str], facets: &[&[&str]]) -> SimplicialComplex {
    let labels: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
    let faces = facets
        .iter()
        .map(|f| {
            ElementSet::from_ids(
                labels.len(),
                f.iter()
                    .map(|v| labels.iter().position(|l| l == v).unwrap()),
            )
        })
        .collect();
    SimplicialComplex::from_faces(labels, faces).unwrap()
}

pub fn two_triangles() -> SimplicialComplex {
    complex(&["a", "b", "c", "d"], &[&["a", "b", "c"], &["b", "c", "d"]])
}

/// Minimal six-vertex triangulation of the projective plane.
pub fn rp2() -> SimplicialComplex {
    let facets: [[&str; 3]; 10] = [
        ["1", "2", "3"],
        ["1", "3", "4"],
        ["1", "4", "5"],
        ["1", "5", "6"],
        ["1", "6", "2"],
        ["2", "3", "5"],
        ["3", "4", "6"],
        ["4", "5", "2"],
        ["5", "6", "3"],
        ["6", "2", "4"],
    ];
    let refs: Vec<&[&str]> = facets.iter().map(|f| &f[..]).collect();
    complex(&["1", "2", "3", "4", "5", "6"], &refs)
}

pub fn simplex_boundary(n: usize) -> SimplicialComplex {
    let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let faces = (0..n)
        .map(|i| ElementSet::from_ids(n, (0..n).filter(|&j| j != i)))
        .collect();
    SimplicialComplex::from_faces(labels, faces).unwrap()
}

/// Random poset on `0..n`: each pair `i < j` is related with probability
/// `density` before closure.
pub fn random_poset(rng: &mut StdRng, n: usize, density: f64) -> FinitePoset {
    let labels = (0..n).map(|i| i.to_string()).collect();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                pairs.push((i, j));
            }
        }
    }
    FinitePoset::from_pairs(labels, pairs).unwrap()
}

/// Poset from a flag per pair `i < j` (in lexicographic pair order).
pub fn poset_from_flags(n: usize, flags: &[bool]) -> FinitePoset {
    let labels = (0..n).map(|i| i.to_string()).collect();
    let mut pairs = Vec::new();
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if flags[k] {
                pairs.push((i, j));
            }
            k += 1;
        }
    }
    FinitePoset::from_pairs(labels, pairs).unwrap()
}

pub fn poset_strategy(max: usize) -> impl proptest::strategy::Strategy<Value = FinitePoset> {
    use proptest::prelude::*;
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec(proptest::bool::weighted(0.35), n * (n - 1) / 2)
            .prop_map(move |flags| poset_from_flags(n, &flags))
    })
}

/// Every subset of `x` (as ids) except the empty one.
pub fn nonempty_subsets(universe: usize, x: &ElementSet) -> Vec<ElementSet> {
    let members = x.to_vec();
    (1u64..1 << members.len())
        .map(|mask| {
            ElementSet::from_ids(
                universe,
                members
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &m)| m),
            )
        })
        .collect()
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(m - 1) {
        for pos in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(pos, m - 1);
            out.push(p);
        }
    }
    out
}

/// All simplicial complexes on exactly `m` vertices (every vertex used), one
/// per isomorphism class, as facet lists over vertex ids.
pub fn complexes_on(m: usize) -> Vec<SimplicialComplex> {
    let subsets: Vec<u32> = (1u32..1 << m).collect();
    let mut antichains: Vec<Vec<u32>> = Vec::new();
    fn extend(i: usize, subsets: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == subsets.len() {
            out.push(cur.clone());
            return;
        }
        extend(i + 1, subsets, cur, out);
        let s = subsets[i];
        if cur.iter().all(|&t| t & s != t && t & s != s) {
            cur.push(s);
            extend(i + 1, subsets, cur, out);
            cur.pop();
        }
    }
    extend(0, &subsets, &mut Vec::new(), &mut antichains);
    let full = (1u32 << m) - 1;
    let perms = permutations(m);
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for a in antichains {
        if a.iter().fold(0, |u, &s| u | s) != full {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                let mut image: Vec<u32> = a
                    .iter()
                    .map(|&s| {
                        (0..m)
                            .filter(|&v| s >> v & 1 == 1)
                            .fold(0, |t, v| t | 1 << p[v])
                    })
                    .collect();
                image.sort_unstable();
                image
            })
            .min()
            .unwrap();
        if !seen.insert(canon) {
            continue;
        }
        let labels = (0..m).map(|v| format!("v{v}")).collect();
        let faces = a
            .iter()
            .map(|&s| ElementSet::from_ids(m, (0..m).filter(|&v| s >> v & 1 == 1)))
            .collect();
        out.push(SimplicialComplex::from_faces(labels, faces).unwrap());
    }
    out
}
