//! Fixed point property (every monotone self-map fixes a point) and fixed
//! simplex property, with verifiers for the statements that transfer them
//! between a poset and its crosscut poset, and between a complex and `L_K`.
//!
//! `has_fpp` searches exhaustively for a fixed-point-free monotone self-map.
//! By default it first passes to the core: a retract of a poset with the
//! fixed point property has it, and a fixed-point-free `g` on the core lifts
//! to `i∘g∘r` on `P`.

use alloc::format;
use alloc::vec::Vec;

use crate::complex::{face_poset, order_complex, SimplicialComplex};
use crate::crosscut::{crosscut_poset, l_k, p_m};
use crate::finite_space::{core, is_weakly_contractible, Certificate, Verdict};
use crate::homology::{homology, HomologySummary};
use crate::stars::{is_coherent_cutset, is_cutset};
use crate::{ElementSet, Error, FinitePoset, Limits, MonotoneMap, Result};

/// Weak and simple homotopy equivalences are maps of spaces; the verifiers
/// check them through reduced homology and contractibility certificates.
pub const EQUIVALENCE_NOTE: &str =
    "weak and simple homotopy equivalences are not checked as maps of spaces; \
they are replaced by equality of reduced integral homology in every dimension \
and by weak-contractibility certificates of the carriers";

/// Iterates `a, f(a), f²(a), ...` from a point with `a ≤ f(a)` (or
/// `a ≥ f(a)`); the chain is monotone, so it stops at a fixed point.
pub fn abian_brown_fixed_point(p: &FinitePoset, f: &MonotoneMap, a: usize) -> Result<usize> {
    if f.values().len() != p.len() || a >= p.len() {
        return Err(Error::OutOfRange(a));
    }
    if !MonotoneMap::is_monotone(p, p, f.values()) {
        return Err(Error::NotMonotone);
    }
    let fa = f.apply(a);
    if !p.comparable(a, fa) {
        return Err(Error::HypothesisViolated(format!(
            "{} and its image {} are incomparable",
            p.label(a),
            p.label(fa)
        )));
    }
    let mut y = a;
    for _ in 0..=p.len() {
        let next = f.apply(y);
        if next == y {
            return Ok(y);
        }
        y = next;
    }
    Err(Error::InvariantBroken("iteration did not stabilise".into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FppOptions {
    /// Search the core instead of the poset itself.
    pub core_preprocess: bool,
    /// Largest poset searched exhaustively (after preprocessing).
    pub guard: usize,
}

impl FppOptions {
    pub fn from_limits(limits: &Limits) -> Self {
        FppOptions {
            core_preprocess: true,
            guard: limits.fpp,
        }
    }
}

impl Default for FppOptions {
    fn default() -> Self {
        Self::from_limits(&Limits::DEFAULT)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FppResult {
    pub has_fpp: bool,
    /// A fixed-point-free monotone self-map of the input, when one exists.
    pub witness: Option<MonotoneMap>,
    /// Size of the poset actually searched.
    pub searched: usize,
}

/// Cover constraints `f(x) <= f(w)` over value domains; `domains[x]` is
/// the bit mask of values still allowed for `f(x)`.
struct Network<'a> {
    up: &'a [u64],
    down: &'a [u64],
    covers: &'a [(usize, usize)],
}

impl Network<'_> {
    fn hull(sets: &[u64], mask: u64) -> u64 {
        let mut m = mask;
        let mut out = 0;
        while m != 0 {
            out |= sets[m.trailing_zeros() as usize];
            m &= m - 1;
        }
        out
    }

    /// Arc consistency over the cover constraints `f(x) <= f(w)`. Returns
    /// false when some domain empties.
    fn propagate(&self, domains: &mut [u64]) -> bool {
        if domains.contains(&0) {
            return false;
        }
        let mut changed = true;
        while changed {
            changed = false;
            for &(x, w) in self.covers {
                let dw = domains[w] & Self::hull(self.up, domains[x]);
                let dx = domains[x] & Self::hull(self.down, dw);
                if dw == 0 || dx == 0 {
                    return false;
                }
                if dw != domains[w] || dx != domains[x] {
                    domains[w] = dw;
                    domains[x] = dx;
                    changed = true;
                }
            }
        }
        true
    }

    fn search(&self, domains: &mut [u64]) -> bool {
        if !self.propagate(domains) {
            return false;
        }
        let open = (0..domains.len())
            .filter(|&x| domains[x].count_ones() > 1)
            .min_by_key(|&x| domains[x].count_ones());
        let Some(x) = open else { return true };
        let mut values = domains[x];
        while values != 0 {
            let y = values.trailing_zeros() as usize;
            values &= values - 1;
            let mut next = domains.to_vec();
            next[x] = 1 << y;
            if self.search(&mut next) {
                domains.copy_from_slice(&next);
                return true;
            }
        }
        false
    }
}

/// Exhaustive search for a fixed-point-free monotone self-map: domains
/// start as "anything but x", are narrowed by arc consistency on the cover
/// constraints, and the smallest open domain is split first.
fn search_fixed_point_free(q: &FinitePoset) -> Option<Vec<usize>> {
    let n = q.len();
    if n == 0 {
        // The empty map has no fixed point.
        return Some(Vec::new());
    }
    let mask = |s: &ElementSet| s.iter().fold(0u64, |m, y| m | 1 << y);
    let up: Vec<u64> = (0..n).map(|x| mask(q.up_set(x))).collect();
    let down: Vec<u64> = (0..n).map(|x| mask(q.down_set(x))).collect();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut domains: Vec<u64> = (0..n).map(|x| full & !(1u64 << x)).collect();
    let net = Network {
        up: &up,
        down: &down,
        covers: q.covers(),
    };
    net.search(&mut domains).then(|| {
        domains
            .iter()
            .map(|d| d.trailing_zeros() as usize)
            .collect()
    })
}

/// Retraction onto the core and inclusion back, both as id tables.
type Lift = (Vec<usize>, Vec<usize>);

pub fn has_fpp(p: &FinitePoset, opts: &FppOptions) -> Result<FppResult> {
    let (q, lift): (FinitePoset, Option<Lift>) = if opts.core_preprocess {
        let c = core(p);
        let onto = c.retraction_onto_core();
        let inclusion = c.kept.to_vec();
        (c.poset, Some((onto, inclusion)))
    } else {
        (p.clone(), None)
    };
    let limit = opts.guard.min(64);
    if q.len() > limit {
        return Err(Error::GuardExceeded {
            what: "fixed point search",
            size: q.len(),
            limit,
        });
    }
    let found = search_fixed_point_free(&q);
    let witness = match found {
        None => None,
        Some(g) => {
            let values = match &lift {
                None => g,
                Some((onto, inclusion)) => (0..p.len()).map(|x| inclusion[g[onto[x]]]).collect(),
            };
            let f = MonotoneMap::new(p, p, values).map_err(|_| {
                Error::InvariantBroken("fixed-point-free witness is not monotone".into())
            })?;
            if !f.is_fixed_point_free() {
                return Err(Error::InvariantBroken("witness has a fixed point".into()));
            }
            Some(f)
        }
    };
    Ok(FppResult {
        has_fpp: witness.is_none(),
        witness,
        searched: q.len(),
    })
}

/// Fixed simplex property of `k`: the fixed point property of its face poset.
pub fn has_fsp(k: &SimplicialComplex, opts: &FppOptions, limits: &Limits) -> Result<FppResult> {
    has_fpp(&face_poset(k, limits)?.poset, opts)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferReport {
    /// Verdict on the original object.
    pub left: FppResult,
    /// Verdict on the derived poset.
    pub right: FppResult,
}

impl TransferReport {
    pub fn holds(&self) -> bool {
        self.left.has_fpp == self.right.has_fpp
    }
}

/// `P` has the fixed point property iff `Γ(P, mxl(P))` does; requires every
/// carrier to have a maximum.
pub fn verify_fpp_transfer(
    p: &FinitePoset,
    opts: &FppOptions,
    limits: &Limits,
) -> Result<TransferReport> {
    let gamma = crosscut_poset(p, &p.mxl(), limits)?;
    if let Some(c) = gamma.carriers.iter().find(|c| p.maximum_of(c).is_none()) {
        return Err(Error::NoMaximum {
            carrier: p.set_labels(c),
        });
    }
    Ok(TransferReport {
        left: has_fpp(p, opts)?,
        right: has_fpp(&gamma.poset, opts)?,
    })
}

/// `K` has the fixed simplex property iff `L_K` has the fixed point property.
pub fn verify_fsp_equivalence(
    k: &SimplicialComplex,
    opts: &FppOptions,
    limits: &Limits,
) -> Result<TransferReport> {
    Ok(TransferReport {
        left: has_fsp(k, opts, limits)?,
        right: has_fpp(&l_k(k)?.poset, opts)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinsReport {
    pub joins: ElementSet,
    pub joins_certificate: Certificate,
    pub poset_certificate: Certificate,
}

impl JoinsReport {
    /// Weak contractibility of `P_M` must not coexist with a proof that `P`
    /// is not weakly contractible.
    pub fn holds(&self) -> bool {
        !(self.joins_certificate.verdict == Verdict::Yes
            && self.poset_certificate.verdict == Verdict::No)
    }
}

pub fn verify_pm_contractibility(p: &FinitePoset, limits: &Limits) -> Result<JoinsReport> {
    let mnl = p.mnl();
    if mnl.is_empty() || !is_coherent_cutset(p, &mnl, limits)?.holds {
        return Err(Error::HypothesisViolated(
            "the minimal elements do not form a coherent cutset".into(),
        ));
    }
    let pm = p_m(p, limits)?;
    Ok(JoinsReport {
        joins_certificate: is_weakly_contractible(&pm.poset, limits)?,
        poset_certificate: is_weakly_contractible(p, limits)?,
        joins: pm.elements,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MainTheoremReport {
    /// Carriers of `Γ(P,X)` with their certificates.
    pub carriers: Vec<(ElementSet, Certificate)>,
    pub poset_homology: HomologySummary,
    pub gamma_homology: HomologySummary,
}

impl MainTheoremReport {
    pub fn holds(&self) -> bool {
        self.poset_homology.same_groups(&self.gamma_homology)
    }
}

/// For a cutset `X` whose carriers are all weakly contractible, `P` and
/// `Γ(P,X)` are weakly equivalent; checked here as equality of reduced
/// homology of the order complexes.
pub fn verify_main_theorem(
    p: &FinitePoset,
    x: &ElementSet,
    limits: &Limits,
) -> Result<MainTheoremReport> {
    let cut = is_cutset(p, x);
    if !cut.holds {
        let chain = cut.witness.map(|w| p.render_set(&w)).unwrap_or_default();
        return Err(Error::HypothesisViolated(format!(
            "X is not a cutset: chain {chain} meets no star of X"
        )));
    }
    let gamma = crosscut_poset(p, x, limits)?;
    let mut carriers = Vec::with_capacity(gamma.len());
    for c in &gamma.carriers {
        let cert = is_weakly_contractible(&p.induced(c).0, limits)?;
        match cert.verdict {
            Verdict::No => {
                return Err(Error::HypothesisViolated(format!(
                    "carrier {} is not weakly contractible",
                    p.render_set(c)
                )))
            }
            Verdict::Unknown => {
                return Err(Error::Inconclusive(format!(
                    "weak contractibility of carrier {} is undecided",
                    p.render_set(c)
                )))
            }
            Verdict::Yes => carriers.push((c.clone(), cert)),
        }
    }
    Ok(MainTheoremReport {
        carriers,
        poset_homology: homology(&order_complex(p), true, limits)?,
        gamma_homology: homology(&order_complex(&gamma.poset), true, limits)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn singleton_and_antichain() {
        let one = FinitePoset::build(&["a"], &[]).unwrap();
        for core_preprocess in [true, false] {
            let opts = FppOptions {
                core_preprocess,
                guard: 12,
            };
            assert!(has_fpp(&one, &opts).unwrap().has_fpp);
            let two = FinitePoset::build(&["a", "b"], &[]).unwrap();
            let r = has_fpp(&two, &opts).unwrap();
            assert!(!r.has_fpp);
            assert_eq!(r.witness.unwrap().values(), &[1, 0]);
        }
    }

    #[test]
    fn abian_brown_on_chain() {
        let c = FinitePoset::build(&["0", "1"], &[("0", "1")]).unwrap();
        let f = MonotoneMap::new(&c, &c, vec![1, 1]).unwrap();
        assert_eq!(abian_brown_fixed_point(&c, &f, 0), Ok(1));
        let id = MonotoneMap::identity(&c);
        assert_eq!(abian_brown_fixed_point(&c, &id, 0), Ok(0));
    }

    #[test]
    fn abian_brown_needs_comparable_image() {
        let two = FinitePoset::build(&["a", "b"], &[]).unwrap();
        let swap = MonotoneMap::new(&two, &two, vec![1, 0]).unwrap();
        assert!(matches!(
            abian_brown_fixed_point(&two, &swap, 0),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn guard_applies_to_searched_size() {
        let labels: Vec<alloc::string::String> = (0..14).map(|i| alloc::format!("{i}")).collect();
        let pairs: Vec<(usize, usize)> = (0..13).map(|i| (i, i + 1)).collect();
        let chain = FinitePoset::from_pairs(labels, pairs).unwrap();
        assert!(has_fpp(&chain, &FppOptions::default()).unwrap().has_fpp);
        let raw = FppOptions {
            core_preprocess: false,
            guard: 12,
        };
        assert!(matches!(
            has_fpp(&chain, &raw),
            Err(Error::GuardExceeded { .. })
        ));
    }
}
