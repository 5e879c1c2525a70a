//! Stars, astral sets, index sets and the cutset family of predicates.
//!
//! `st(a)` is the set of elements comparable to `a`; `st(A)` intersects the
//! stars of the members of `A`. A set is astral when its star-set is
//! non-empty.

use alloc::format;
use alloc::vec::Vec;

use crate::{ElementSet, Error, FinitePoset, Limits, Result};

pub fn star(p: &FinitePoset, a: usize) -> ElementSet {
    p.up_set(a).union(p.down_set(a))
}

/// Intersection of the stars of the members of a non-empty `a`.
pub fn star_set(p: &FinitePoset, a: &ElementSet) -> Result<ElementSet> {
    if a.is_empty() {
        return Err(Error::EmptySubset);
    }
    let mut s = p.all();
    for x in a {
        s.intersect_with(&star(p, x));
    }
    Ok(s)
}

pub fn is_astral(p: &FinitePoset, a: &ElementSet) -> Result<bool> {
    Ok(!star_set(p, a)?.is_empty())
}

/// `{x in X : B ⊆ st(x)}`. For empty `b` this is all of `x`.
pub fn index_set(p: &FinitePoset, x: &ElementSet, b: &ElementSet) -> ElementSet {
    ElementSet::from_ids(p.len(), x.iter().filter(|&c| b.is_subset(&star(p, c))))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutsetCheck {
    pub holds: bool,
    /// A maximal chain that no member of `X` extends.
    pub witness: Option<ElementSet>,
}

/// Decides the cutset property by scanning maximal chains only.
///
/// If `σ' ⊆ σ ⊆ st(a)` then `σ' ⊆ st(a)`, so every finite chain is covered
/// once every maximal chain is. The empty chain needs some member of `X`,
/// which the scan reproduces: an empty `X` fails with the empty chain.
pub fn is_cutset(p: &FinitePoset, x: &ElementSet) -> CutsetCheck {
    if x.is_empty() {
        return CutsetCheck {
            holds: false,
            witness: Some(p.empty_set()),
        };
    }
    let stars: Vec<ElementSet> = x.iter().map(|a| star(p, a)).collect();
    for chain in p.maximal_chains() {
        if !stars.iter().any(|s| chain.is_subset(s)) {
            return CutsetCheck {
                holds: false,
                witness: Some(chain),
            };
        }
    }
    CutsetCheck {
        holds: true,
        witness: None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherenceCheck {
    pub holds: bool,
    pub cutset: CutsetCheck,
    /// Smallest (by size, then members) bounded subset of `X` with neither a
    /// meet nor a join.
    pub violating: Option<ElementSet>,
}

/// Cutset whose non-empty bounded subsets all have a meet or a join.
///
/// A bounded subset lies in `X ∩ P_{>=z}` or `X ∩ P_{<=z}` for some `z`, so
/// only subsets of those families are enumerated.
pub fn is_coherent_cutset(
    p: &FinitePoset,
    x: &ElementSet,
    limits: &Limits,
) -> Result<CoherenceCheck> {
    if x.len() > limits.coherence {
        return Err(Error::GuardExceeded {
            what: "coherence enumeration",
            size: x.len(),
            limit: limits.coherence,
        });
    }
    let cutset = is_cutset(p, x);
    if !cutset.holds {
        return Ok(CoherenceCheck {
            holds: false,
            cutset,
            violating: None,
        });
    }

    let mut families: Vec<ElementSet> = Vec::new();
    for z in 0..p.len() {
        for f in [x.intersection(p.up_set(z)), x.intersection(p.down_set(z))] {
            if !f.is_empty() && !families.contains(&f) {
                families.push(f);
            }
        }
    }
    // Drop families contained in another; their subsets are enumerated anyway.
    let maximal: Vec<&ElementSet> = families
        .iter()
        .filter(|f| !families.iter().any(|g| g != *f && f.is_subset(g)))
        .collect();

    let mut worst: Option<ElementSet> = None;
    for fam in maximal {
        let members = fam.to_vec();
        if members.len() >= 64 {
            return Err(Error::GuardExceeded {
                what: "coherence enumeration",
                size: members.len(),
                limit: 63,
            });
        }
        for mask in 1u64..(1u64 << members.len()) {
            let count = mask.count_ones() as usize;
            if count == 1 {
                continue;
            }
            if let Some(w) = &worst {
                if count > w.len() {
                    continue;
                }
            }
            let sub = ElementSet::from_ids(
                p.len(),
                members
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &m)| m),
            );
            if p.meet(&sub)?.is_none() && p.join(&sub)?.is_none() {
                let better = match &worst {
                    None => true,
                    Some(w) => (sub.len(), &sub) < (w.len(), w),
                };
                if better {
                    worst = Some(sub);
                }
            }
        }
    }
    Ok(CoherenceCheck {
        holds: worst.is_none(),
        cutset,
        violating: worst,
    })
}

/// An antichain that is a coherent cutset.
pub fn is_crosscut(p: &FinitePoset, x: &ElementSet, limits: &Limits) -> Result<bool> {
    Ok(p.is_antichain(x) && is_coherent_cutset(p, x, limits)?.holds)
}

/// For a coherent cutset `x` and a non-empty astral `sigma ⊆ x`, an element
/// `z ∈ st(σ)` with `st(σ) ⊆ st(z)`.
///
/// Constructive: pick the least `y ∈ st(σ)`, split `σ` into the part below
/// `y` and the part above it, and take the meet (else the join) of the part
/// below, or of the part above when nothing lies below.
pub fn astral_star_center(
    p: &FinitePoset,
    x: &ElementSet,
    sigma: &ElementSet,
    limits: &Limits,
) -> Result<usize> {
    if sigma.is_empty() {
        return Err(Error::EmptySubset);
    }
    if !sigma.is_subset(x) {
        return Err(Error::HypothesisViolated("σ is not contained in X".into()));
    }
    let coherence = is_coherent_cutset(p, x, limits)?;
    if !coherence.holds {
        let why = match coherence.violating {
            Some(v) => format!(
                "X is not coherent: {} has neither meet nor join",
                p.render_set(&v)
            ),
            None => "X is not a cutset".into(),
        };
        return Err(Error::HypothesisViolated(why));
    }
    let st_sigma = star_set(p, sigma)?;
    let y = st_sigma
        .first()
        .ok_or_else(|| Error::HypothesisViolated("σ is not astral".into()))?;
    let below = sigma.intersection(p.down_set(y));
    let part = if below.is_empty() {
        sigma.intersection(p.up_set(y))
    } else {
        below
    };
    let z = match p.meet(&part)? {
        Some(z) => z,
        None => p.join(&part)?.ok_or_else(|| {
            Error::InvariantBroken(format!("{} has neither meet nor join", p.render_set(&part)))
        })?,
    };

    let centered = |c: usize| st_sigma.contains(c) && st_sigma.is_subset(&star(p, c));
    let brute: Vec<usize> = st_sigma.iter().filter(|&c| centered(c)).collect();
    if !centered(z) || brute.is_empty() {
        return Err(Error::InvariantBroken(format!(
            "star center {} failed verification",
            p.label(z)
        )));
    }
    Ok(z)
}
