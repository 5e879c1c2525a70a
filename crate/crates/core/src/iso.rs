use alloc::vec::Vec;

use crate::{Error, FinitePoset, Limits, Result};

/// Per-element invariant that any order-isomorphism must preserve.
fn signature(p: &FinitePoset, heights: &[usize], x: usize) -> (usize, usize, usize, usize, usize) {
    (
        p.down_set(x).len(),
        p.up_set(x).len(),
        p.lower_covers(x).count(),
        p.upper_covers(x).count(),
        heights[x],
    )
}

fn masks(p: &FinitePoset) -> (Vec<u64>, Vec<u64>) {
    let up = (0..p.len())
        .map(|x| p.up_set(x).iter().fold(0u64, |m, y| m | 1 << y))
        .collect();
    let down = (0..p.len())
        .map(|x| p.down_set(x).iter().fold(0u64, |m, y| m | 1 << y))
        .collect();
    (up, down)
}

/// Searches for an order-isomorphism `p -> q`; the result maps ids of `p` to
/// ids of `q`. Posets above 64 elements are refused.
pub fn is_isomorphic(p: &FinitePoset, q: &FinitePoset) -> Result<Option<Vec<usize>>> {
    let limit = Limits::DEFAULT.isomorphism;
    let n = p.len();
    if n > limit || q.len() > limit {
        return Err(Error::GuardExceeded {
            what: "isomorphism search",
            size: n.max(q.len()),
            limit,
        });
    }
    if n != q.len() || p.covers().len() != q.covers().len() {
        return Ok(None);
    }
    let (hp, hq) = (p.heights(), q.heights());
    let sp: Vec<_> = (0..n).map(|x| signature(p, &hp, x)).collect();
    let sq: Vec<_> = (0..n).map(|x| signature(q, &hq, x)).collect();
    let mut a = sp.clone();
    let mut b = sq.clone();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return Ok(None);
    }

    let order = p.linear_extension();
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..n).filter(|&y| sp[x] == sq[y]).collect())
        .collect();
    let (up_p, _) = masks(p);
    let (up_q, _) = masks(q);

    struct Search<'a> {
        order: &'a [usize],
        candidates: &'a [Vec<usize>],
        up_p: &'a [u64],
        up_q: &'a [u64],
        image: Vec<usize>,
        used: u64,
    }

    impl Search<'_> {
        fn run(&mut self, depth: usize) -> bool {
            if depth == self.order.len() {
                return true;
            }
            let x = self.order[depth];
            for &y in &self.candidates[x] {
                if self.used >> y & 1 == 1 {
                    continue;
                }
                let consistent = self.order[..depth].iter().all(|&z| {
                    let fz = self.image[z];
                    (self.up_p[z] >> x & 1) == (self.up_q[fz] >> y & 1)
                        && (self.up_p[x] >> z & 1) == (self.up_q[y] >> fz & 1)
                });
                if !consistent {
                    continue;
                }
                self.image[x] = y;
                self.used |= 1 << y;
                if self.run(depth + 1) {
                    return true;
                }
                self.used &= !(1 << y);
            }
            false
        }
    }

    let mut search = Search {
        order: &order,
        candidates: &candidates,
        up_p: &up_p,
        up_q: &up_q,
        image: alloc::vec![usize::MAX; n],
        used: 0,
    };
    Ok(search.run(0).then_some(search.image))
}
