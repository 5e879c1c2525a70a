//! Finite posets as finite T0 spaces: beat points, cores, weak points and
//! weak-contractibility certificates.
//!
//! `x` is a down beat point when `P_{<x}` has a maximum and an up beat point
//! when `P_{>x}` has a minimum. Removing beat points one at a time until none
//! are left gives the core, which is unique up to isomorphism; `P` is
//! contractible iff its core is a single point. A weak point is one whose
//! `P_{<x}` or `P_{>x}` is contractible; removing it keeps the weak homotopy
//! type.

use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::complex::order_complex;
use crate::homology::{homology, HomologySummary};
use crate::{ElementSet, FinitePoset, Limits, MonotoneMap, Result};

/// Which link of a removed point made it removable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Decided by the part below the point.
    Down,
    /// Decided by the part above the point.
    Up,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RemovalOrder {
    Ascending,
    Descending,
}

/// If `x` is a beat point of the subposet `alive`, the element it retracts
/// onto.
fn beat_target(p: &FinitePoset, alive: &ElementSet, x: usize) -> Option<(usize, Side)> {
    let above = p.strict_up(x).intersection(alive);
    if let Some(m) = p.minimum_of(&above) {
        return Some((m, Side::Up));
    }
    let below = p.strict_down(x).intersection(alive);
    p.maximum_of(&below).map(|m| (m, Side::Down))
}

pub fn beat_points(p: &FinitePoset) -> ElementSet {
    let all = p.all();
    ElementSet::from_ids(
        p.len(),
        (0..p.len()).filter(|&x| beat_target(p, &all, x).is_some()),
    )
}

#[derive(Clone, Debug)]
pub struct Core {
    /// The core as a poset of its own (ids renumbered).
    pub poset: FinitePoset,
    /// Surviving ids of the original poset; `poset` is induced on these.
    pub kept: ElementSet,
    /// Removed ids, in removal order.
    pub removed: Vec<usize>,
    /// Retraction of the original poset onto `kept` (original ids).
    pub retraction: MonotoneMap,
}

impl Core {
    /// The retraction with values renumbered into `self.poset`.
    pub fn retraction_onto_core(&self) -> Vec<usize> {
        let ids = self.kept.to_vec();
        self.retraction
            .values()
            .iter()
            .map(|v| ids.binary_search(v).expect("retraction lands in the core"))
            .collect()
    }
}

/// Core with the least (or greatest) available beat point removed first,
/// restarting after each removal.
pub fn core_by(p: &FinitePoset, order: RemovalOrder) -> Core {
    let n = p.len();
    let mut alive = p.all();
    let mut target: Vec<usize> = (0..n).collect();
    let mut removed = Vec::new();
    loop {
        let candidates: Vec<usize> = match order {
            RemovalOrder::Ascending => alive.to_vec(),
            RemovalOrder::Descending => alive.iter().rev_collect(),
        };
        let hit = candidates
            .into_iter()
            .find_map(|x| beat_target(p, &alive, x).map(|(m, _)| (x, m)));
        let Some((x, m)) = hit else { break };
        alive.remove(x);
        target[x] = m;
        removed.push(x);
    }
    let values: Vec<usize> = (0..n)
        .map(|x| {
            let mut y = x;
            while !alive.contains(y) {
                y = target[y];
            }
            y
        })
        .collect();
    let (poset, _) = p.induced(&alive);
    Core {
        poset,
        kept: alive,
        removed,
        retraction: MonotoneMap::new(p, p, values).expect("beat-point retraction is monotone"),
    }
}

trait RevCollect {
    fn rev_collect(self) -> Vec<usize>;
}

impl<I: Iterator<Item = usize>> RevCollect for I {
    fn rev_collect(self) -> Vec<usize> {
        let mut v: Vec<usize> = self.collect();
        v.reverse();
        v
    }
}

pub fn core(p: &FinitePoset) -> Core {
    core_by(p, RemovalOrder::Ascending)
}

/// Core is a single point.
pub fn is_contractible(p: &FinitePoset) -> bool {
    core(p).kept.len() == 1
}

fn is_contractible_within(p: &FinitePoset, s: &ElementSet) -> bool {
    s.len() == 1 || (!s.is_empty() && is_contractible(&p.induced(s).0))
}

/// Whether `x` is a weak point of the subposet `alive`, and through which
/// side.
pub fn weak_point_side(p: &FinitePoset, alive: &ElementSet, x: usize) -> Option<Side> {
    if is_contractible_within(p, &p.strict_down(x).intersection(alive)) {
        Some(Side::Down)
    } else if is_contractible_within(p, &p.strict_up(x).intersection(alive)) {
        Some(Side::Up)
    } else {
        None
    }
}

pub fn weak_points(p: &FinitePoset) -> ElementSet {
    let all = p.all();
    ElementSet::from_ids(
        p.len(),
        (0..p.len()).filter(|&x| weak_point_side(p, &all, x).is_some()),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    /// A weak point was removed.
    Removed { element: usize, side: Side },
    /// Non-trivial reduced homology of the order complex in `dimension`.
    Obstruction {
        dimension: isize,
        betti: usize,
        torsion: Vec<BigInt>,
    },
}

/// Three-valued weak-contractibility decision with its evidence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub verdict: Verdict,
    pub trail: Vec<Step>,
    /// Elements left when no weak point remained.
    pub remaining: ElementSet,
}

impl Certificate {
    /// Re-checks every removal step against `p`; a `Yes` certificate must
    /// end at a single point.
    pub fn replay(&self, p: &FinitePoset) -> bool {
        let mut alive = p.all();
        for step in &self.trail {
            if let Step::Removed { element, side } = step {
                if !alive.contains(*element)
                    || weak_point_side(p, &alive, *element).is_none()
                    || !self.side_holds(p, &alive, *element, *side)
                {
                    return false;
                }
                alive.remove(*element);
            }
        }
        alive == self.remaining && (self.verdict != Verdict::Yes || alive.len() == 1)
    }

    fn side_holds(&self, p: &FinitePoset, alive: &ElementSet, x: usize, side: Side) -> bool {
        let link = match side {
            Side::Down => p.strict_down(x),
            Side::Up => p.strict_up(x),
        };
        is_contractible_within(p, &link.intersection(alive))
    }
}

/// Removes weak points (least id first, restarting after each removal).
/// Reaching one point certifies `Yes`; otherwise non-trivial reduced
/// homology of what is left certifies `No`; otherwise `Unknown`.
pub fn is_weakly_contractible(p: &FinitePoset, limits: &Limits) -> Result<Certificate> {
    let mut alive = p.all();
    let mut trail = Vec::new();
    loop {
        let hit = alive
            .iter()
            .find_map(|x| weak_point_side(p, &alive, x).map(|s| (x, s)));
        let Some((x, side)) = hit else { break };
        alive.remove(x);
        trail.push(Step::Removed { element: x, side });
    }
    if alive.len() == 1 {
        return Ok(Certificate {
            verdict: Verdict::Yes,
            trail,
            remaining: alive,
        });
    }
    let (rest, _) = p.induced(&alive);
    let h = homology(&order_complex(&rest), true, limits)?;
    let verdict = match obstruction(&h) {
        Some(step) => {
            trail.push(step);
            Verdict::No
        }
        None => Verdict::Unknown,
    };
    Ok(Certificate {
        verdict,
        trail,
        remaining: alive,
    })
}

fn obstruction(h: &HomologySummary) -> Option<Step> {
    let d = h.first_nontrivial()?;
    let (betti, torsion) = if d < 0 {
        (h.betti_minus_one, Vec::new())
    } else {
        (h.betti[d as usize], h.torsion[d as usize].clone())
    };
    Some(Step::Obstruction {
        dimension: d,
        betti,
        torsion,
    })
}
