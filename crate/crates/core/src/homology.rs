//! Integer simplicial homology through Smith normal form.
//!
//! Elimination first runs on checked `i64` entries; if any operation would
//! overflow, the whole reduction restarts on `BigInt`. Results never depend
//! on machine-word overflow.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::complex::SimplicialComplex;
use crate::{ElementSet, Error, Limits, Result};

/// Sparse integer matrix, stored by rows as `(column, value)` pairs sorted by
/// column with no explicit zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, i64)>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: alloc::vec![Vec::new(); rows],
        }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            m.data[r] = row
                .iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(|(c, &v)| (c, v))
                .collect();
        }
        m
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i].push((i, 1));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        match self.data[r].binary_search_by_key(&c, |e| e.0) {
            Ok(i) => self.data[r][i].1,
            Err(_) => 0,
        }
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        assert!(r < self.rows && c < self.cols);
        let row = &mut self.data[r];
        match row.binary_search_by_key(&c, |e| e.0) {
            Ok(i) if v == 0 => {
                row.remove(i);
            }
            Ok(i) => row[i].1 = v,
            Err(_) if v == 0 => {}
            Err(i) => row.insert(i, (c, v)),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c)).collect())
            .collect()
    }

    /// Matrix product, or `None` on overflow.
    pub fn checked_mul(&self, other: &IntMatrix) -> Option<IntMatrix> {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let mut acc = alloc::vec![0i64; other.cols];
            for &(k, a) in &self.data[r] {
                for &(c, b) in &other.data[k] {
                    acc[c] = acc[c].checked_add(a.checked_mul(b)?)?;
                }
            }
            out.data[r] = acc
                .into_iter()
                .enumerate()
                .filter(|(_, v)| *v != 0)
                .collect();
        }
        Some(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }
}

/// Diagonal of the Smith normal form: invariant factors `d1 | d2 | ...`
/// (all positive), one per unit of rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
}

impl SmithForm {
    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }
}

/// Ring operations the eliminator needs; `None` means overflow.
trait Coeff: Clone + PartialEq + Sized {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn cmp_abs(&self, other: &Self) -> Ordering;
    fn is_unit(&self) -> bool;
    /// Truncated quotient.
    fn quot(&self, by: &Self) -> Option<Self>;
    /// `self - q * b`
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn into_big(self) -> BigInt;
}

impl Coeff for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn is_unit(&self) -> bool {
        self.unsigned_abs() == 1
    }
    fn quot(&self, by: &Self) -> Option<Self> {
        self.checked_div(*by)
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*b)?)
    }
    fn into_big(self) -> BigInt {
        BigInt::from(self)
    }
}

impl Coeff for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
    fn quot(&self, by: &Self) -> Option<Self> {
        Some(self / by)
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn into_big(self) -> BigInt {
        self
    }
}

type Row<T> = Vec<(usize, T)>;

/// `target -= q * source`, merging sorted sparse rows.
fn row_axpy<T: Coeff>(target: &Row<T>, q: &T, source: &Row<T>) -> Option<Row<T>> {
    let zero = T::from_i64(0);
    let mut out = Vec::with_capacity(target.len() + source.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < source.len() {
        let ci = target.get(i).map_or(usize::MAX, |e| e.0);
        let cj = source.get(j).map_or(usize::MAX, |e| e.0);
        let (c, v) = match ci.cmp(&cj) {
            Ordering::Less => {
                i += 1;
                (ci, target[i - 1].1.clone())
            }
            Ordering::Greater => {
                j += 1;
                (cj, zero.sub_mul(q, &source[j - 1].1)?)
            }
            Ordering::Equal => {
                i += 1;
                j += 1;
                (ci, target[i - 1].1.sub_mul(q, &source[j - 1].1)?)
            }
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    Some(out)
}

fn entry<T: Coeff>(row: &Row<T>, c: usize) -> Option<&T> {
    row.binary_search_by_key(&c, |e| e.0)
        .ok()
        .map(|i| &row[i].1)
}

/// Diagonalizes by unimodular row and column operations, pivoting on an
/// entry of least absolute value. Returns the (signed) diagonal entries.
fn diagonalize<T: Coeff>(m: &IntMatrix) -> Option<Vec<T>> {
    let mut rows: Vec<Row<T>> = m
        .data
        .iter()
        .map(|r| r.iter().map(|&(c, v)| (c, T::from_i64(v))).collect())
        .collect();
    let mut active: Vec<usize> = (0..m.rows).filter(|&r| !rows[r].is_empty()).collect();
    let mut diag = Vec::new();

    loop {
        active.retain(|&r| !rows[r].is_empty());
        // pivot: least absolute value over the active rows, units short-circuit
        let mut best: Option<(usize, usize)> = None;
        'scan: for &r in &active {
            for (c, v) in &rows[r] {
                let better = match best {
                    None => true,
                    Some((br, bc)) => v.cmp_abs(entry(&rows[br], bc).unwrap()) == Ordering::Less,
                };
                if better {
                    best = Some((r, *c));
                    if v.is_unit() {
                        break 'scan;
                    }
                }
            }
        }
        let Some((mut p, mut q)) = best else { break };

        loop {
            // clear column q outside row p
            let pivot = entry(&rows[p], q).unwrap().clone();
            let mut smallest: Option<(usize, T)> = None;
            for &r in &active {
                if r == p {
                    continue;
                }
                let Some(a) = entry(&rows[r], q) else {
                    continue;
                };
                let k = a.quot(&pivot)?;
                if !k.is_zero() {
                    rows[r] = row_axpy(&rows[r], &k, &rows[p])?;
                }
                if let Some(rem) = entry(&rows[r], q) {
                    if smallest
                        .as_ref()
                        .is_none_or(|(_, s)| rem.cmp_abs(s) == Ordering::Less)
                    {
                        smallest = Some((r, rem.clone()));
                    }
                }
            }
            if let Some((r, _)) = smallest {
                p = r;
                continue;
            }
            // column q is now zero outside row p, so column operations only
            // touch row p
            let mut row = core::mem::take(&mut rows[p]);
            let mut next_col: Option<(usize, T)> = None;
            for (c, v) in row.iter_mut() {
                if *c == q {
                    continue;
                }
                let k = v.quot(&pivot)?;
                *v = v.sub_mul(&k, &pivot)?;
                if !v.is_zero()
                    && next_col
                        .as_ref()
                        .is_none_or(|(_, s)| v.cmp_abs(s) == Ordering::Less)
                {
                    next_col = Some((*c, v.clone()));
                }
            }
            row.retain(|(_, v)| !v.is_zero());
            rows[p] = row;
            match next_col {
                Some((c, _)) => q = c,
                None => break,
            }
        }
        let pivot = entry(&rows[p], q).unwrap().clone();
        diag.push(pivot);
        rows[p].clear();
    }
    Some(diag)
}

/// Smith normal form of an integer matrix.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let diag: Vec<BigInt> = match diagonalize::<i64>(m) {
        Some(d) => d.into_iter().map(Coeff::into_big).collect(),
        None => diagonalize::<BigInt>(m).expect("bigint elimination cannot overflow"),
    };
    let mut units = 0;
    let mut rest: Vec<BigInt> = Vec::new();
    for d in diag {
        let d = d.abs();
        if d.is_one() {
            units += 1;
        } else {
            rest.push(d);
        }
    }
    // turn the diagonal into a divisibility chain: (a, b) -> (gcd, lcm)
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            let g = rest[i].gcd(&rest[j]);
            let l = rest[i].lcm(&rest[j]);
            rest[i] = g;
            rest[j] = l;
        }
    }
    let mut invariant_factors: Vec<BigInt> = alloc::vec![BigInt::one(); units];
    invariant_factors.extend(rest);
    invariant_factors.sort();
    SmithForm {
        rank: invariant_factors.len(),
        invariant_factors,
    }
}

/// Simplices of a complex grouped by dimension, with the boundary maps
/// between consecutive groups.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    /// `simplices[d]` lists the `d`-simplices in canonical order.
    pub simplices: Vec<Vec<ElementSet>>,
    /// `boundaries[d - 1]` is `∂_d : C_d -> C_{d-1}` (rows are faces).
    pub boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    /// The augmentation `C_0 -> Z`, a single row of ones.
    pub fn augmentation(&self) -> IntMatrix {
        let n = self.simplices.first().map_or(0, Vec::len);
        IntMatrix::from_dense(&[alloc::vec![1; n]])
    }
}

/// Boundary matrices with the sorted-vertex orientation: the face dropping
/// the `i`-th vertex gets sign `(-1)^i`.
pub fn boundary_matrices(k: &SimplicialComplex, limits: &Limits) -> Result<ChainComplex> {
    let all = k.simplices(limits)?;
    let mut simplices: Vec<Vec<ElementSet>> = Vec::new();
    for s in all {
        let d = s.len() - 1;
        if simplices.len() <= d {
            simplices.resize(d + 1, Vec::new());
        }
        simplices[d].push(s);
    }
    let mut boundaries = Vec::new();
    for d in 1..simplices.len() {
        let index: alloc::collections::BTreeMap<&ElementSet, usize> = simplices[d - 1]
            .iter()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        let mut m = IntMatrix::zeros(simplices[d - 1].len(), simplices[d].len());
        for (c, s) in simplices[d].iter().enumerate() {
            for (i, v) in s.iter().enumerate() {
                let mut face = s.clone();
                face.remove(v);
                let sign = if i % 2 == 0 { 1 } else { -1 };
                m.set(index[&face], c, sign);
            }
        }
        boundaries.push(m);
    }
    Ok(ChainComplex {
        simplices,
        boundaries,
    })
}

/// Betti numbers and torsion coefficients per dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologySummary {
    pub reduced: bool,
    /// `betti[d]` for `d = 0..=dim`.
    pub betti: Vec<usize>,
    /// Torsion coefficients (each > 1, dividing the next) per dimension.
    pub torsion: Vec<Vec<BigInt>>,
    /// Reduced homology in degree -1; only the empty complex has it.
    pub betti_minus_one: usize,
}

impl HomologySummary {
    /// All groups zero.
    pub fn is_trivial(&self) -> bool {
        self.betti_minus_one == 0
            && self.betti.iter().all(|&b| b == 0)
            && self.torsion.iter().all(Vec::is_empty)
    }

    /// Lowest dimension carrying a non-zero group, if any (`-1` possible).
    pub fn first_nontrivial(&self) -> Option<isize> {
        if self.betti_minus_one > 0 {
            return Some(-1);
        }
        (0..self.betti.len())
            .find(|&d| self.betti[d] > 0 || !self.torsion[d].is_empty())
            .map(|d| d as isize)
    }

    /// `Σ (-1)^d β_d` over the stored dimensions.
    pub fn alternating_sum(&self) -> i64 {
        let s: i64 = self
            .betti
            .iter()
            .enumerate()
            .map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum();
        s - self.betti_minus_one as i64
    }

    /// Same groups, ignoring trailing zero dimensions.
    pub fn same_groups(&self, other: &HomologySummary) -> bool {
        let dims = self.betti.len().max(other.betti.len());
        self.betti_minus_one == other.betti_minus_one
            && (0..dims).all(|d| {
                self.betti.get(d).copied().unwrap_or(0) == other.betti.get(d).copied().unwrap_or(0)
                    && self.torsion.get(d).map_or(&[][..], Vec::as_slice)
                        == other.torsion.get(d).map_or(&[][..], Vec::as_slice)
            })
    }
}

/// Integer homology of `k`, reduced when asked (augmented by the empty
/// simplex).
pub fn homology(k: &SimplicialComplex, reduced: bool, limits: &Limits) -> Result<HomologySummary> {
    let chain = boundary_matrices(k, limits)?;
    let dims = chain.simplices.len();
    let forms: Vec<SmithForm> = chain.boundaries.iter().map(smith_normal_form).collect();
    // rank of ∂_d for d = 0..=dims (∂_0 is the augmentation or zero)
    let rank = |d: usize| -> usize {
        if d == 0 {
            usize::from(reduced && dims > 0)
        } else {
            forms.get(d - 1).map_or(0, |f| f.rank)
        }
    };
    let mut betti = Vec::with_capacity(dims);
    let mut torsion = Vec::with_capacity(dims);
    for d in 0..dims {
        let count = chain.simplices[d].len();
        let b = count
            .checked_sub(rank(d) + rank(d + 1))
            .ok_or_else(|| Error::InvariantBroken("negative Betti number".into()))?;
        betti.push(b);
        torsion.push(forms.get(d).map_or_else(Vec::new, SmithForm::torsion));
    }
    Ok(HomologySummary {
        reduced,
        betti,
        torsion,
        betti_minus_one: usize::from(reduced && dims == 0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn snf_small_cases() {
        let id = smith_normal_form(&IntMatrix::identity(3));
        assert_eq!(id.invariant_factors, big(&[1, 1, 1]));
        let d = smith_normal_form(&IntMatrix::from_dense(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(d.invariant_factors, big(&[1, 6]));
        let z = smith_normal_form(&IntMatrix::zeros(3, 4));
        assert_eq!(z.rank, 0);
        let e = smith_normal_form(&IntMatrix::zeros(0, 0));
        assert_eq!(e.rank, 0);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big_entry = i64::MAX / 2 + 7;
        let m = IntMatrix::from_dense(&[
            vec![big_entry, big_entry - 1],
            vec![big_entry - 3, big_entry],
        ]);
        let f = smith_normal_form(&m);
        // det = a*a - (a-1)(a-3) = 4a - 3
        let det = BigInt::from(big_entry) * 4 - 3;
        let prod: BigInt = f.invariant_factors.iter().product();
        assert_eq!(prod, det);
    }

    #[test]
    fn edge_boundary_orientation() {
        let k = SimplicialComplex::from_faces(
            vec!["0".to_string(), "1".to_string()],
            vec![ElementSet::full(2)],
        )
        .unwrap();
        let c = boundary_matrices(&k, &Limits::DEFAULT).unwrap();
        assert_eq!(c.boundaries[0].to_dense(), vec![vec![-1], vec![1]]);
    }

    #[test]
    fn empty_complex_reduced() {
        let k = SimplicialComplex::from_faces(vec![], vec![]).unwrap();
        let h = homology(&k, true, &Limits::DEFAULT).unwrap();
        assert_eq!(h.betti_minus_one, 1);
        assert!(!h.is_trivial());
        assert!(homology(&k, false, &Limits::DEFAULT).unwrap().is_trivial());
    }
}
