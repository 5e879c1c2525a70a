//! The crosscut poset `Γ(P,X)`: connected components of the non-empty
//! star-sets `st(A)`, `∅ ≠ A ⊆ X`, ordered by inclusion. Also the maps
//! between `Γ` and the crosscut complex, the retraction onto `P₀`, the
//! subposet `P_M` of joins of minimal elements, and `L_K`.
//!
//! `X` is always finite here, so the variant of `Γ` built from finite
//! subsets of `X` coincides with `Γ`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::complex::{crosscut_complex, SimplicialComplex};
use crate::stars::{index_set, is_coherent_cutset, star, star_set};
use crate::{set_label, ElementSet, Error, FinitePoset, Limits, MonotoneMap, Result};

/// `Γ(P,X)` with, for each element, its carrier in `P` and one subset `A` of
/// `X` such that the carrier is a component of `st(A)`.
#[derive(Clone, Debug)]
pub struct CrosscutPoset {
    /// Carriers ordered by inclusion; labels are the carriers, e.g. `{0,1}`.
    pub poset: FinitePoset,
    /// Sorted by member list; element `i` of `poset` is `carriers[i]`.
    pub carriers: Vec<ElementSet>,
    pub generators: Vec<ElementSet>,
}

impl CrosscutPoset {
    pub fn len(&self) -> usize {
        self.carriers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carriers.is_empty()
    }

    pub fn position(&self, carrier: &ElementSet) -> Option<usize> {
        self.carriers.binary_search(carrier).ok()
    }
}

fn poset_of_sets(sets: &[ElementSet], labels: Vec<String>) -> Result<FinitePoset> {
    let mut pairs = Vec::new();
    for (i, a) in sets.iter().enumerate() {
        for (j, b) in sets.iter().enumerate() {
            if i != j && a.is_subset(b) {
                pairs.push((i, j));
            }
        }
    }
    FinitePoset::from_pairs(labels, pairs)
}

/// Builds `Γ(P,X)` by closing `{st(x) : x ∈ X}` under intersection (which
/// yields exactly the sets `st(A)`), then splitting into components.
pub fn crosscut_poset(p: &FinitePoset, x: &ElementSet, limits: &Limits) -> Result<CrosscutPoset> {
    if x.is_empty() {
        return Err(Error::EmptySubset);
    }
    let stars: Vec<(usize, ElementSet)> = x.iter().map(|a| (a, star(p, a))).collect();
    let mut family: BTreeMap<ElementSet, ElementSet> = BTreeMap::new();
    let mut queue: Vec<ElementSet> = Vec::new();
    for (a, s) in &stars {
        let gen = family.entry(s.clone()).or_insert_with(|| {
            queue.push(s.clone());
            ElementSet::new(p.len())
        });
        gen.insert(*a);
    }
    while let Some(s) = queue.pop() {
        let gen = family[&s].clone();
        for (a, st) in &stars {
            let t = s.intersection(st);
            if t.is_empty() || t == s {
                continue;
            }
            let mut g = gen.clone();
            g.insert(*a);
            match family.get_mut(&t) {
                Some(old) => old.union_with(&g),
                None => {
                    if family.len() >= limits.carriers {
                        return Err(Error::GuardExceeded {
                            what: "crosscut poset carriers",
                            size: family.len() + 1,
                            limit: limits.carriers,
                        });
                    }
                    family.insert(t.clone(), g);
                    queue.push(t);
                }
            }
        }
    }

    // A component of st(A1) and of st(A2) is also one of st(A1 ∪ A2), so
    // merged generators stay valid.
    let mut components: BTreeMap<ElementSet, ElementSet> = BTreeMap::new();
    for (s, gen) in &family {
        for c in p.connected_components(s) {
            components
                .entry(c)
                .and_modify(|g| g.union_with(gen))
                .or_insert_with(|| gen.clone());
        }
    }
    let (carriers, generators): (Vec<ElementSet>, Vec<ElementSet>) = components.into_iter().unzip();
    let labels = carriers.iter().map(|c| p.render_set(c)).collect();
    let poset = poset_of_sets(&carriers, labels)?;
    Ok(CrosscutPoset {
        poset,
        carriers,
        generators,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MxlCheck {
    pub holds: bool,
    /// A maximal carrier that is not a star of `X`, or a star that is not
    /// maximal.
    pub counterexample: Option<ElementSet>,
}

/// For an antichain `X`, whether the maximal elements of `Γ(P,X)` are
/// exactly the stars of the members of `X`.
pub fn check_mxl_characterization(
    p: &FinitePoset,
    x: &ElementSet,
    limits: &Limits,
) -> Result<MxlCheck> {
    let gamma = crosscut_poset(p, x, limits)?;
    let maximal: BTreeSet<ElementSet> = gamma
        .poset
        .mxl()
        .iter()
        .map(|i| gamma.carriers[i].clone())
        .collect();
    let stars: BTreeSet<ElementSet> = x.iter().map(|a| star(p, a)).collect();
    let counterexample = maximal.symmetric_difference(&stars).next().cloned();
    if !p.is_antichain(x) {
        let why = match &counterexample {
            Some(c) => format!(
                "X is not an antichain; {} breaks the characterization",
                p.render_set(c)
            ),
            None => "X is not an antichain".into(),
        };
        return Err(Error::HypothesisViolated(why));
    }
    Ok(MxlCheck {
        holds: counterexample.is_none(),
        counterexample,
    })
}

/// Minimum of `{C ∈ Γ(P,X) : B ⊆ C}` for a connected non-empty `b`: the
/// component of `st(I_X(B))` that contains `b`. Minimality is checked
/// against every carrier containing `b`.
pub fn min_component_over(
    p: &FinitePoset,
    x: &ElementSet,
    b: &ElementSet,
    limits: &Limits,
) -> Result<ElementSet> {
    if b.is_empty() {
        return Err(Error::EmptySubset);
    }
    if !p.is_connected(b) {
        return Err(Error::NotConnected);
    }
    let gamma = crosscut_poset(p, x, limits)?;
    let over: Vec<&ElementSet> = gamma.carriers.iter().filter(|c| b.is_subset(c)).collect();
    let index = index_set(p, x, b);
    if over.is_empty() || index.is_empty() {
        return Err(Error::EmptyGammaB);
    }
    let seed = b.first().expect("non-empty");
    let c = p
        .connected_components(&star_set(p, &index)?)
        .into_iter()
        .find(|c| c.contains(seed))
        .ok_or_else(|| Error::InvariantBroken("B is not inside st(I_X(B))".into()))?;
    if !b.is_subset(&c) || gamma.position(&c).is_none() || !over.iter().all(|d| c.is_subset(d)) {
        return Err(Error::InvariantBroken(format!(
            "{} is not the least carrier over {}",
            p.render_set(&c),
            p.render_set(b)
        )));
    }
    Ok(c)
}

fn require_coherent(p: &FinitePoset, x: &ElementSet, limits: &Limits) -> Result<()> {
    let check = is_coherent_cutset(p, x, limits)?;
    if check.holds {
        return Ok(());
    }
    Err(Error::HypothesisViolated(
        match (&check.cutset.witness, &check.violating) {
            (_, Some(v)) => format!(
                "X is not coherent: {} has neither meet nor join",
                p.render_set(v)
            ),
            (Some(w), _) => format!(
                "X is not a cutset: chain {} meets no star of X",
                p.render_set(w)
            ),
            _ => "X is not a coherent cutset".into(),
        },
    ))
}

/// `ν(σ) = st(σ)` for a coherent cutset `x` and a non-empty astral
/// `σ ⊆ X`; the result is connected and so is a carrier of `Γ(P,X)`.
pub fn nu(
    p: &FinitePoset,
    x: &ElementSet,
    sigma: &ElementSet,
    limits: &Limits,
) -> Result<ElementSet> {
    require_coherent(p, x, limits)?;
    nu_unchecked(p, x, sigma)
}

fn nu_unchecked(p: &FinitePoset, x: &ElementSet, sigma: &ElementSet) -> Result<ElementSet> {
    if !sigma.is_subset(x) {
        return Err(Error::HypothesisViolated("σ is not contained in X".into()));
    }
    let s = star_set(p, sigma)?;
    if s.is_empty() {
        return Err(Error::HypothesisViolated(format!(
            "{} is not astral",
            p.render_set(sigma)
        )));
    }
    if !p.is_connected(&s) {
        return Err(Error::InvariantBroken(format!(
            "st({}) is disconnected",
            p.render_set(sigma)
        )));
    }
    Ok(s)
}

/// `ι(C) = I_X(C)`.
pub fn iota(p: &FinitePoset, x: &ElementSet, carrier: &ElementSet) -> ElementSet {
    index_set(p, x, carrier)
}

/// Outcome of checking that `ν` and `ι` exhibit `Γ^op` as a retract of the
/// face poset of the crosscut complex with `ι∘ν ≥ id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RetractReport {
    pub carriers: usize,
    pub simplices: usize,
    pub nu_monotone: bool,
    pub iota_monotone: bool,
    /// `ν∘ι = id` on `Γ^op`.
    pub nu_iota_identity: bool,
    /// `ι∘ν ⊇ σ` for every simplex `σ`.
    pub iota_nu_above: bool,
    pub violations: Vec<String>,
}

impl RetractReport {
    pub fn holds(&self) -> bool {
        self.nu_monotone && self.iota_monotone && self.nu_iota_identity && self.iota_nu_above
    }
}

pub fn verify_retract(p: &FinitePoset, x: &ElementSet, limits: &Limits) -> Result<RetractReport> {
    require_coherent(p, x, limits)?;
    let gamma = crosscut_poset(p, x, limits)?;
    let k = crosscut_complex(p, x)?;
    let verts = x.to_vec();
    let simplices: Vec<ElementSet> = k
        .simplices(limits)?
        .iter()
        .map(|s| ElementSet::from_ids(p.len(), s.iter().map(|v| verts[v])))
        .collect();
    let mut violations = Vec::new();

    let nus: Vec<ElementSet> = simplices
        .iter()
        .map(|s| nu_unchecked(p, x, s))
        .collect::<Result<_>>()?;
    let iotas: Vec<ElementSet> = gamma.carriers.iter().map(|c| iota(p, x, c)).collect();

    let mut nu_iota_identity = true;
    for (c, i) in gamma.carriers.iter().zip(&iotas) {
        let back = if i.is_empty() {
            None
        } else {
            nu_unchecked(p, x, i).ok()
        };
        if back.as_ref() != Some(c) {
            nu_iota_identity = false;
            violations.push(format!("ν(ι({})) differs", p.render_set(c)));
        }
    }
    let mut iota_nu_above = true;
    for (s, n) in simplices.iter().zip(&nus) {
        if gamma.position(n).is_none() {
            iota_nu_above = false;
            violations.push(format!("ν({}) is not a carrier", p.render_set(s)));
        } else if !s.is_subset(&iota(p, x, n)) {
            iota_nu_above = false;
            violations.push(format!("ι(ν({})) does not contain it", p.render_set(s)));
        }
    }
    let mut nu_monotone = true;
    for (a, na) in simplices.iter().zip(&nus) {
        for (b, nb) in simplices.iter().zip(&nus) {
            if a.is_subset(b) && !nb.is_subset(na) {
                nu_monotone = false;
                violations.push(format!(
                    "ν is not antitone on {} ⊆ {}",
                    p.render_set(a),
                    p.render_set(b)
                ));
            }
        }
    }
    let mut iota_monotone = true;
    for (c, ic) in gamma.carriers.iter().zip(&iotas) {
        for (d, id) in gamma.carriers.iter().zip(&iotas) {
            if c.is_subset(d) && !id.is_subset(ic) {
                iota_monotone = false;
                violations.push(format!(
                    "ι is not antitone on {} ⊆ {}",
                    p.render_set(c),
                    p.render_set(d)
                ));
            }
        }
    }
    Ok(RetractReport {
        carriers: gamma.len(),
        simplices: simplices.len(),
        nu_monotone,
        iota_monotone,
        nu_iota_identity,
        iota_nu_above,
        violations,
    })
}

/// The retract `P₀` of maxima of the carriers of `Γ(P, mxl(P))`.
#[derive(Clone, Debug)]
pub struct P0Retraction {
    /// `P₀` as a poset of its own.
    pub p0: FinitePoset,
    /// `P₀` as a subset of `P`.
    pub elements: ElementSet,
    /// `r : P → P` with image `P₀`, `r∘i = id` and `i∘r ≥ id`.
    pub retraction: MonotoneMap,
    /// Carrier index of `Γ` to its maximum in `P`.
    pub iso: Vec<usize>,
    pub gamma: CrosscutPoset,
}

pub fn p0_retraction(p: &FinitePoset, limits: &Limits) -> Result<P0Retraction> {
    let mxl = p.mxl();
    let gamma = crosscut_poset(p, &mxl, limits)?;
    let mut iso = Vec::with_capacity(gamma.len());
    for c in &gamma.carriers {
        match p.maximum_of(c) {
            Some(m) => iso.push(m),
            None => {
                return Err(Error::NoMaximum {
                    carrier: p.set_labels(c),
                })
            }
        }
    }
    let elements = ElementSet::from_ids(p.len(), iso.iter().copied());

    let mut values = Vec::with_capacity(p.len());
    for xx in 0..p.len() {
        let single = ElementSet::singleton(p.len(), xx);
        let idx = index_set(p, &mxl, &single);
        let cx = p
            .connected_components(&star_set(p, &idx)?)
            .into_iter()
            .find(|c| c.contains(xx))
            .ok_or_else(|| Error::InvariantBroken(format!("{} lies in no carrier", p.label(xx))))?;
        let m = gamma.position(&cx).map(|i| iso[i]).ok_or_else(|| {
            Error::InvariantBroken(format!("{} is not a carrier", p.render_set(&cx)))
        })?;
        values.push(m);
    }
    let broken = |what: &str| Err(Error::InvariantBroken(format!("P₀ retraction: {what}")));
    let retraction = match MonotoneMap::new(p, p, values) {
        Ok(r) => r,
        Err(_) => return broken("r is not monotone"),
    };
    if elements.iter().any(|y| retraction.apply(y) != y) {
        return broken("r∘i is not the identity");
    }
    if (0..p.len()).any(|y| !p.leq(y, retraction.apply(y))) {
        return broken("i∘r is not above the identity");
    }
    if elements.len() != gamma.len() {
        return broken("distinct carriers share a maximum");
    }
    for i in 0..gamma.len() {
        for j in 0..gamma.len() {
            if gamma.poset.leq(i, j) != p.leq(iso[i], iso[j]) {
                return broken("carrier maxima are not order-isomorphic to Γ");
            }
        }
    }
    let (p0, _) = p.induced(&elements);
    Ok(P0Retraction {
        p0,
        elements,
        retraction,
        iso,
        gamma,
    })
}

/// The subposet `P_M` of joins of non-empty sets of minimal elements.
#[derive(Clone, Debug)]
pub struct JoinsOfMinima {
    pub poset: FinitePoset,
    pub elements: ElementSet,
    /// `mnl(P)` was a coherent cutset and the minima of the carriers of
    /// `Γ(P, mnl(P))` gave the same set.
    pub cross_checked: bool,
}

pub fn p_m(p: &FinitePoset, limits: &Limits) -> Result<JoinsOfMinima> {
    let mnl = p.mnl().to_vec();
    if mnl.len() > limits.subset_joins || mnl.len() >= 64 {
        return Err(Error::GuardExceeded {
            what: "joins of minimal elements",
            size: mnl.len(),
            limit: limits.subset_joins.min(63),
        });
    }
    let mut elements = p.empty_set();
    for mask in 1u64..(1u64 << mnl.len()) {
        let sub = ElementSet::from_ids(
            p.len(),
            mnl.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &m)| m),
        );
        if let Some(j) = p.join(&sub)? {
            elements.insert(j);
        }
    }

    let mnl_set = p.mnl();
    let mut cross_checked = false;
    if !mnl_set.is_empty()
        && mnl.len() <= limits.coherence
        && is_coherent_cutset(p, &mnl_set, limits)?.holds
    {
        let gamma = crosscut_poset(p, &mnl_set, limits)?;
        let mut minima = p.empty_set();
        for c in &gamma.carriers {
            let m = p.minimum_of(c).ok_or_else(|| {
                Error::InvariantBroken(format!("carrier {} has no minimum", p.render_set(c)))
            })?;
            minima.insert(m);
        }
        if minima != elements {
            return Err(Error::InvariantBroken(format!(
                "joins of minima {} differ from carrier minima {}",
                p.render_set(&elements),
                p.render_set(&minima)
            )));
        }
        cross_checked = true;
    }
    let (poset, _) = p.induced(&elements);
    Ok(JoinsOfMinima {
        poset,
        elements,
        cross_checked,
    })
}

/// Non-empty intersections of facets of a complex, ordered by inclusion.
#[derive(Clone, Debug)]
pub struct IntersectionPoset {
    pub poset: FinitePoset,
    /// Simplex (vertex ids of the complex) for each element.
    pub simplices: Vec<ElementSet>,
}

pub fn l_k(k: &SimplicialComplex) -> Result<IntersectionPoset> {
    let facets = k.facets();
    let mut seen: BTreeSet<ElementSet> = facets.iter().cloned().collect();
    let mut queue: Vec<ElementSet> = seen.iter().cloned().collect();
    while let Some(s) = queue.pop() {
        for f in facets {
            let t = s.intersection(f);
            if !t.is_empty() && seen.insert(t.clone()) {
                queue.push(t);
            }
        }
    }
    let simplices: Vec<ElementSet> = seen.into_iter().collect();
    let labels = simplices
        .iter()
        .map(|s| set_label(s.iter().map(|v| k.labels()[v].as_str())))
        .collect();
    let poset = poset_of_sets(&simplices, labels)?;
    Ok(IntersectionPoset { poset, simplices })
}
