mod common;

use common::*;
use crosscut_core::complex::order_complex;
use crosscut_core::crosscut::{
    crosscut_poset, min_component_over, p0_retraction, p_m, verify_retract,
};
use crosscut_core::finite_space::{
    beat_points, core, core_by, is_contractible, is_weakly_contractible, weak_point_side,
    RemovalOrder, Step, Verdict,
};
use crosscut_core::fixed_points::{abian_brown_fixed_point, has_fpp, FppOptions};
use crosscut_core::homology::homology;
use crosscut_core::stars::{
    astral_star_center, index_set, is_astral, is_coherent_cutset, star, star_set,
};
use crosscut_core::{is_isomorphic, ElementSet, Error, FinitePoset, Limits, MonotoneMap};
use proptest::prelude::*;

const L: Limits = Limits::DEFAULT;

fn subset_of(p: &FinitePoset, mask: u64) -> ElementSet {
    ElementSet::from_ids(p.len(), (0..p.len()).filter(|&i| mask >> i & 1 == 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn covers_generate_the_order(p in poset_strategy(9)) {
        let again = FinitePoset::from_pairs(p.labels().to_vec(), p.covers().to_vec()).unwrap();
        prop_assert_eq!(&again, &p);
        for &(a, b) in p.covers() {
            prop_assert!(p.lt(a, b));
            prop_assert!(!(0..p.len()).any(|z| p.lt(a, z) && p.lt(z, b)));
        }
        prop_assert_eq!(p.opposite().opposite(), p.clone());
    }

    #[test]
    fn linear_extension_refines_the_order(p in poset_strategy(9)) {
        let ext = p.linear_extension();
        let mut pos = vec![0; p.len()];
        for (i, &x) in ext.iter().enumerate() {
            pos[x] = i;
        }
        for x in 0..p.len() {
            for y in 0..p.len() {
                if p.lt(x, y) {
                    prop_assert!(pos[x] < pos[y]);
                }
            }
        }
    }

    #[test]
    fn components_partition(p in poset_strategy(9), mask in any::<u64>()) {
        let s = subset_of(&p, mask);
        let blocks = p.connected_components(&s);
        let mut union = p.empty_set();
        for (i, b) in blocks.iter().enumerate() {
            prop_assert!(b.is_disjoint(&union));
            union.union_with(b);
            prop_assert!(p.is_connected(b));
            for c in &blocks[i + 1..] {
                prop_assert!(b.iter().all(|x| c.iter().all(|y| !p.comparable(x, y))));
            }
        }
        prop_assert_eq!(union, s);
    }

    #[test]
    fn meet_and_join_are_extremal(p in poset_strategy(8), mask in 1u64..256) {
        let s = subset_of(&p, mask);
        prop_assume!(!s.is_empty());
        let lower = p.lower_bounds(&s);
        if let Some(m) = p.meet(&s).unwrap() {
            prop_assert!(s.iter().all(|x| p.leq(m, x)));
            prop_assert!(lower.iter().all(|l| p.leq(l, m)));
        } else {
            prop_assert!(!lower.iter().any(|m| lower.iter().all(|l| p.leq(l, m))));
        }
        let upper = p.upper_bounds(&s);
        if let Some(j) = p.join(&s).unwrap() {
            prop_assert!(s.iter().all(|x| p.leq(x, j)));
            prop_assert!(upper.iter().all(|u| p.leq(j, u)));
        }
    }

    #[test]
    fn isomorphism_finds_relabelings(p in poset_strategy(8), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut perm: Vec<usize> = (0..p.len()).collect();
        perm.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed));
        let labels = (0..p.len()).map(|i| format!("q{i}")).collect();
        let pairs: Vec<(usize, usize)> = p.covers().iter().map(|&(a, b)| (perm[a], perm[b])).collect();
        let q = FinitePoset::from_pairs(labels, pairs).unwrap();
        let f = is_isomorphic(&p, &q).unwrap().expect("relabeling is an isomorphism");
        for x in 0..p.len() {
            for y in 0..p.len() {
                prop_assert_eq!(p.leq(x, y), q.leq(f[x], f[y]));
            }
        }
    }

    #[test]
    fn star_laws(p in poset_strategy(8), a in 1u64..256, b in 1u64..256, xm in 1u64..256) {
        let a = subset_of(&p, a);
        let b = subset_of(&p, b);
        let x = subset_of(&p, xm);
        prop_assume!(!a.is_empty() && !b.is_empty() && !x.is_empty());
        let ab = a.union(&b);
        prop_assert!(star_set(&p, &ab).unwrap().is_subset(&star_set(&p, &a).unwrap()));
        let idx = index_set(&p, &x, &a);
        for c in x.iter() {
            prop_assert_eq!(idx.contains(c), a.is_subset(&star(&p, c)));
        }
        prop_assert!(idx.is_subset(&star_set(&p, &a).unwrap()));
        for sub in nonempty_subsets(p.len(), &idx) {
            prop_assert!(is_astral(&p, &sub).unwrap());
        }
    }

    #[test]
    fn coherent_cutsets_have_connected_star_sets_and_centers(p in poset_strategy(8)) {
        for x in [p.mxl(), p.mnl()] {
            if !is_coherent_cutset(&p, &x, &L).unwrap().holds {
                continue;
            }
            for sigma in nonempty_subsets(p.len(), &x) {
                let s = star_set(&p, &sigma).unwrap();
                if s.is_empty() {
                    continue;
                }
                prop_assert!(p.is_connected(&s));
                let z = astral_star_center(&p, &x, &sigma, &L).unwrap();
                prop_assert!(s.contains(z) && s.is_subset(&star(&p, z)));
            }
            let g = crosscut_poset(&p, &x, &L).unwrap();
            for c in &g.carriers {
                // Every carrier is st(A) for an astral A and has a center.
                let a = index_set(&p, &x, c);
                prop_assert_eq!(&star_set(&p, &a).unwrap(), c);
                prop_assert!(c.iter().any(|z| c.is_subset(&star(&p, z))));
            }
            prop_assert!(verify_retract(&p, &x, &L).unwrap().holds());
        }
    }

    #[test]
    fn mxl_carriers_are_down_sets(p in poset_strategy(9)) {
        let g = crosscut_poset(&p, &p.mxl(), &L).unwrap();
        for c in &g.carriers {
            prop_assert!(c.iter().all(|x| p.down_set(x).is_subset(c)));
        }
    }

    #[test]
    fn least_carrier_over_a_point(p in poset_strategy(8)) {
        let x = p.mxl();
        let g = crosscut_poset(&p, &x, &L).unwrap();
        for v in 0..p.len() {
            let b = ElementSet::singleton(p.len(), v);
            let c = min_component_over(&p, &x, &b, &L).unwrap();
            prop_assert!(g.carriers.iter().filter(|d| d.contains(v)).all(|d| c.is_subset(d)));
        }
    }

    #[test]
    fn p0_retraction_postconditions(p in poset_strategy(8)) {
        match p0_retraction(&p, &L) {
            Ok(r) => {
                for x in 0..p.len() {
                    prop_assert!(p.leq(x, r.retraction.apply(x)));
                    prop_assert!(r.elements.contains(r.retraction.apply(x)));
                }
                prop_assert!(is_isomorphic(&r.p0, &r.gamma.poset).unwrap().is_some());
            }
            Err(Error::NoMaximum { carrier }) => {
                let g = crosscut_poset(&p, &p.mxl(), &L).unwrap();
                let ids = p.ids_of(&carrier).unwrap();
                prop_assert!(g.carriers.contains(&ids));
                prop_assert!(p.maximum_of(&ids).is_none());
            }
            Err(e) => prop_assert!(false, "unexpected error {e:?}"),
        }
    }

    #[test]
    fn joins_of_minima(p in poset_strategy(8)) {
        let pm = p_m(&p, &L).unwrap();
        prop_assert!(p.mnl().is_subset(&pm.elements));
        for j in pm.elements.iter() {
            prop_assert!(p.down_set(j).intersection(&p.mnl()).iter().count() >= 1);
        }
    }

    #[test]
    fn core_is_idempotent_and_unique(p in poset_strategy(9)) {
        let a = core(&p);
        prop_assert!(beat_points(&a.poset).is_empty());
        prop_assert_eq!(core(&a.poset).poset.len(), a.poset.len());
        let b = core_by(&p, RemovalOrder::Descending);
        prop_assert!(is_isomorphic(&a.poset, &b.poset).unwrap().is_some());
        for x in 0..p.len() {
            let r = a.retraction.apply(x);
            prop_assert!(a.kept.contains(r));
            prop_assert_eq!(a.retraction.apply(r), r);
            if a.kept.contains(x) {
                prop_assert_eq!(r, x);
            }
        }
        prop_assert_eq!(is_contractible(&p), a.poset.len() == 1);
    }

    #[test]
    fn removals_keep_homology(p in poset_strategy(8)) {
        let full = homology(&order_complex(&p), true, &L).unwrap();
        let c = core(&p);
        let mut alive = p.all();
        for &x in &c.removed {
            alive.remove(x);
            let h = homology(&order_complex(&p.induced(&alive).0), true, &L).unwrap();
            prop_assert!(h.same_groups(&full));
        }
        let cert = is_weakly_contractible(&p, &L).unwrap();
        prop_assert!(cert.replay(&p));
        let mut alive = p.all();
        for step in &cert.trail {
            if let Step::Removed { element, .. } = step {
                prop_assert!(weak_point_side(&p, &alive, *element).is_some());
                alive.remove(*element);
                let h = homology(&order_complex(&p.induced(&alive).0), true, &L).unwrap();
                prop_assert!(h.same_groups(&full));
            }
        }
        match cert.verdict {
            Verdict::Yes => prop_assert!(full.is_trivial()),
            Verdict::No => prop_assert!(!full.is_trivial()),
            Verdict::Unknown => prop_assert!(full.is_trivial()),
        }
    }

    #[test]
    fn fpp_paths_agree(p in poset_strategy(8)) {
        let with = has_fpp(&p, &FppOptions { core_preprocess: true, guard: 12 }).unwrap();
        let without = has_fpp(&p, &FppOptions { core_preprocess: false, guard: 12 }).unwrap();
        prop_assert_eq!(with.has_fpp, without.has_fpp);
        for w in [&with.witness, &without.witness].into_iter().flatten() {
            prop_assert!(MonotoneMap::is_monotone(&p, &p, w.values()));
            prop_assert!(w.is_fixed_point_free());
        }
        if is_weakly_contractible(&p, &L).unwrap().verdict == Verdict::Yes {
            prop_assert!(with.has_fpp);
        }
    }

    #[test]
    fn abian_brown_reaches_a_fixed_point(p in poset_strategy(8), seed in any::<u64>()) {
        // One beat-point step: x goes to its unique cover or co-cover.
        let mut values: Vec<usize> = (0..p.len()).collect();
        let c = core(&p);
        if let Some(&b) = c.removed.first() {
            let rest = p.all().difference(&ElementSet::singleton(p.len(), b));
            let up = p.strict_up(b).intersection(&rest);
            let down = p.strict_down(b).intersection(&rest);
            values[b] = p.minimum_of(&up).or_else(|| p.maximum_of(&down)).unwrap();
        }
        let r = MonotoneMap::new(&p, &p, values).unwrap();
        let x = (seed as usize) % p.len();
        let y = abian_brown_fixed_point(&p, &r, x).unwrap();
        prop_assert_eq!(r.apply(y), y);
        prop_assert!(p.comparable(x, y));
    }
}
