//! Exact arithmetic and dense linear algebra over the prime field F_p.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A prime modulus. Values are kept below 2^16 so products fit in `u64`
/// without intermediate reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u32) -> Result<Self> {
        if !(2..1 << 16).contains(&p) || (2..p).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
            return Err(Error::NotPrime(p as u64));
        }
        Ok(Prime(p))
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.0;
        base %= self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero residue.
    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(!a.is_multiple_of(self.0), "inverting zero");
        self.pow(a, (self.0 - 2) as u64)
    }
}

impl TryFrom<u32> for Prime {
    type Error = Error;
    fn try_from(p: u32) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u32 {
    fn from(p: Prime) -> u32 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// C(n, k) mod p by Lucas's theorem. Zero when k > n.
pub fn binom_mod_p(n: u64, k: u64, p: Prime) -> u32 {
    if k > n {
        return 0;
    }
    let pp = p.value() as u64;
    let (mut n, mut k) = (n, k);
    let mut acc = 1u32;
    while k > 0 || n > 0 {
        let (nd, kd) = ((n % pp) as u32, (k % pp) as u32);
        if kd > nd {
            return 0;
        }
        acc = p.mul(acc, small_binom(nd, kd, p));
        if acc == 0 {
            return 0;
        }
        n /= pp;
        k /= pp;
    }
    acc
}

// n, k < p
fn small_binom(n: u32, k: u32, p: Prime) -> u32 {
    let k = k.min(n - k);
    let mut num = 1u32;
    let mut den = 1u32;
    for i in 0..k {
        num = p.mul(num, n - i);
        den = p.mul(den, i + 1);
    }
    p.mul(num, p.inv(den))
}

/// Dense row-major matrix over F_p.
#[derive(Clone, PartialEq, Eq)]
pub struct FpMatrix {
    p: Prime,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix {}x{} over F_{}", self.rows, self.cols, self.p)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Result of row reduction: the reduced matrix and its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: FpMatrix,
    pub pivots: Vec<usize>,
}

impl FpMatrix {
    pub fn zeros(p: Prime, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: Prime, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from integer rows, reducing every entry mod p.
    pub fn from_rows<R: AsRef<[i64]>>(p: Prime, cols: usize, rows: &[R]) -> Result<Self> {
        let mut m = Self::zeros(p, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, p.reduce(x));
            }
        }
        Ok(m)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(p: Prime, rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(p, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            debug_assert_eq!(c.len(), rows);
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn add_to(&mut self, r: usize, c: usize, v: u32) {
        let i = r * self.cols + c;
        self.data[i] = self.p.add(self.data[i], v);
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let p = self.p;
        let mut out = Self::zeros(p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        out.add_to(i, j, p.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        let p = self.p;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &b)| acc + a as u64 * b as u64)
                    .rem_euclid(p.value() as u64) as u32
            })
            .collect())
    }

    pub fn add(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.combine(other, self.p.neg(1))
    }

    fn combine(&self, other: &FpMatrix, scale: u32) -> Result<FpMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                got: other.rows * other.cols,
            });
        }
        let p = self.p;
        let mut out = self.clone();
        for (x, &y) in out.data.iter_mut().zip(&other.data) {
            *x = p.add(*x, p.mul(scale, y));
        }
        Ok(out)
    }

    pub fn scale(&self, c: u32) -> FpMatrix {
        let p = self.p;
        let mut out = self.clone();
        out.data.iter_mut().for_each(|x| *x = p.mul(*x, c));
        out
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(FpMatrix {
            p: self.p,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: other.rows,
            });
        }
        let mut out = Self::zeros(self.p, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            out.data[r * out.cols..r * out.cols + self.cols].copy_from_slice(self.row(r));
            out.data[r * out.cols + self.cols..(r + 1) * out.cols].copy_from_slice(other.row(r));
        }
        Ok(out)
    }

    /// Writes `block` with its top-left corner at (r0, c0).
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &FpMatrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c));
            }
        }
    }

    /// Reduced row echelon form; zero rows are dropped.
    pub fn echelon(&self) -> Echelon {
        let p = self.p;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.swap_rows(row, pr);
            let inv = p.inv(m.get(row, col));
            if inv != 1 {
                for c in col..m.cols {
                    let v = m.get(row, c);
                    m.set(row, c, p.mul(v, inv));
                }
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let f = m.get(r, col);
                if f == 0 {
                    continue;
                }
                let nf = p.neg(f);
                for c in col..m.cols {
                    let v = m.get(row, c);
                    if v != 0 {
                        m.add_to(r, c, p.mul(nf, v));
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        m.rows = row;
        m.data.truncate(row * m.cols);
        Echelon { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the right kernel, one vector per free column in increasing
    /// column order; each vector has a 1 in its free column.
    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        let p = self.p;
        let ech = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &c in &ech.pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0u32; self.cols];
                v[free] = 1;
                for (r, &pc) in ech.pivots.iter().enumerate() {
                    v[pc] = p.neg(ech.matrix.get(r, free));
                }
                v
            })
            .collect()
    }

    /// Whether `v` lies in the column span.
    pub fn image_contains(&self, v: &[u32]) -> Result<bool> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: v.len(),
            });
        }
        let span = Subspace::from_vectors(self.p, self.rows, (0..self.cols).map(|c| self.column(c)));
        Ok(span.contains(v))
    }
}

/// A subspace of F_p^n kept as a reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    p: Prime,
    ambient: usize,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(p: Prime, ambient: usize) -> Self {
        Subspace {
            p,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(p: Prime, ambient: usize) -> Self {
        let mut s = Self::zero(p, ambient);
        for i in 0..ambient {
            let mut v = vec![0; ambient];
            v[i] = 1;
            s.basis.push(v);
            s.pivots.push(i);
        }
        s
    }

    pub fn from_vectors<I: IntoIterator<Item = Vec<u32>>>(p: Prime, ambient: usize, vs: I) -> Self {
        let rows: Vec<Vec<u32>> = vs.into_iter().collect();
        let mut m = FpMatrix::zeros(p, rows.len(), ambient);
        for (i, r) in rows.iter().enumerate() {
            debug_assert_eq!(r.len(), ambient);
            m.data[i * ambient..(i + 1) * ambient].copy_from_slice(r);
        }
        let ech = m.echelon();
        let basis = (0..ech.matrix.rows()).map(|r| ech.matrix.row(r).to_vec()).collect();
        Subspace {
            p,
            ambient,
            basis,
            pivots: ech.pivots,
        }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Clears the pivot coordinates of `v`; the result is zero iff `v` is in the subspace.
    pub fn reduce(&self, v: &mut [u32]) {
        let p = self.p;
        for (b, &pc) in self.basis.iter().zip(&self.pivots) {
            let f = v[pc];
            if f == 0 {
                continue;
            }
            let nf = p.neg(f);
            for (x, &y) in v.iter_mut().zip(b) {
                if y != 0 {
                    *x = p.add(*x, p.mul(nf, y));
                }
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Coordinates not occupied by pivots: a basis of a complement, and of the quotient.
    pub fn complement_coordinates(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// Coordinates of the class of `v` in the quotient, indexed by `complement_coordinates`.
    pub fn quotient_coordinates(&self, v: &[u32], complement: &[usize]) -> Vec<u32> {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        complement.iter().map(|&c| w[c]).collect()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::from_vectors(
            self.p,
            self.ambient,
            self.basis.iter().chain(&other.basis).cloned(),
        )
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.p, self.ambient);
        }
        // x = Σ a_i u_i = Σ b_j w_j; solve on the stacked column matrix.
        let n = self.ambient;
        let cols: Vec<Vec<u32>> = self
            .basis
            .iter()
            .cloned()
            .chain(other.basis.iter().map(|w| w.iter().map(|&x| self.p.neg(x)).collect()))
            .collect();
        let m = FpMatrix::from_columns(self.p, n, &cols);
        let vs = m.kernel_basis().into_iter().map(|k| {
            let mut x = vec![0u32; n];
            for (i, u) in self.basis.iter().enumerate() {
                if k[i] != 0 {
                    for (xj, &uj) in x.iter_mut().zip(u) {
                        *xj = self.p.add(*xj, self.p.mul(k[i], uj));
                    }
                }
            }
            x
        });
        Subspace::from_vectors(self.p, n, vs)
    }

    /// Preimage of `target` under the linear map `m`, intersected with `self`.
    pub fn preimage_within(&self, m: &FpMatrix, target: &Subspace) -> Subspace {
        if self.is_zero() {
            return self.clone();
        }
        // Compose: coordinates of self-basis -> m -> quotient by target.
        let comp = target.complement_coordinates();
        let images: Vec<Vec<u32>> = self
            .basis
            .iter()
            .map(|b| {
                let img = m.mul_vec(b).expect("dimension checked by caller");
                target.quotient_coordinates(&img, &comp)
            })
            .collect();
        let q = FpMatrix::from_columns(self.p, comp.len(), &images);
        let vs = q.kernel_basis().into_iter().map(|k| {
            let mut x = vec![0u32; self.ambient];
            for (i, b) in self.basis.iter().enumerate() {
                if k[i] != 0 {
                    for (xj, &bj) in x.iter_mut().zip(b) {
                        *xj = self.p.add(*xj, self.p.mul(k[i], bj));
                    }
                }
            }
            x
        });
        Subspace::from_vectors(self.p, self.ambient, vs)
    }
}

/// Degree-indexed dimensions of a graded object.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedDimension(pub BTreeMap<usize, usize>);

impl GradedDimension {
    pub fn from_slice(dims: &[usize]) -> Self {
        GradedDimension(
            dims.iter()
                .enumerate()
                .filter(|(_, &d)| d > 0)
                .map(|(i, &d)| (i, d))
                .collect(),
        )
    }

    pub fn get(&self, degree: usize) -> usize {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn convolve(&self, other: &GradedDimension) -> GradedDimension {
        let mut out = BTreeMap::new();
        for (&i, &a) in &self.0 {
            for (&j, &b) in &other.0 {
                *out.entry(i + j).or_insert(0) += a * b;
            }
        }
        GradedDimension(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(n: u32) -> Prime {
        Prime::new(n).unwrap()
    }

    // Exact factorial binomial; 25! fits in u128.
    fn exact_binom(n: u64, k: u64) -> u128 {
        if k > n {
            return 0;
        }
        let f = |m: u64| (1..=m as u128).product::<u128>();
        f(n) / (f(k) * f(n - k))
    }

    #[test]
    fn binom_examples() {
        assert_eq!(binom_mod_p(7, 3, p(2)), 1);
        assert_eq!(binom_mod_p(2, 1, p(2)), 0);
        assert_eq!(binom_mod_p(4, 2, p(3)), 0);
        assert_eq!(binom_mod_p(3, 5, p(5)), 0);
    }

    #[test]
    fn lucas_matches_factorials() {
        for &q in &[2u32, 3, 5, 7, 11, 13] {
            for n in 0..=25u64 {
                for k in 0..=27u64 {
                    let expected = (exact_binom(n, k) % q as u128) as u32;
                    assert_eq!(binom_mod_p(n, k, p(q)), expected, "C({n},{k}) mod {q}");
                }
            }
        }
    }

    #[test]
    fn primes() {
        assert!(Prime::new(2).is_ok());
        assert!(Prime::new(97).is_ok());
        assert_eq!(Prime::new(1), Err(Error::NotPrime(1)));
        assert_eq!(Prime::new(9), Err(Error::NotPrime(9)));
    }

    #[test]
    fn kernel_examples() {
        let z = FpMatrix::zeros(p(3), 2, 2);
        assert_eq!(z.kernel_basis(), vec![vec![1, 0], vec![0, 1]]);
        assert!(FpMatrix::identity(p(5), 3).kernel_basis().is_empty());
        let m = FpMatrix::from_rows(p(2), 2, &[[1, 1]]).unwrap();
        assert_eq!(m.kernel_basis(), vec![vec![1, 1]]);
    }

    #[test]
    fn image_examples() {
        let id = FpMatrix::identity(p(3), 3);
        assert!(id.image_contains(&[2, 1, 0]).unwrap());
        let z = FpMatrix::zeros(p(3), 2, 2);
        assert!(!z.image_contains(&[0, 1]).unwrap());
        let m = FpMatrix::from_rows(p(2), 1, &[[1], [1]]).unwrap();
        assert!(!m.image_contains(&[1, 0]).unwrap());
        assert!(m.image_contains(&[1, 1]).unwrap());
        assert!(matches!(
            m.image_contains(&[1]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn subspace_intersection_and_preimage() {
        let q = p(3);
        let a = Subspace::from_vectors(q, 3, vec![vec![1, 0, 0], vec![0, 1, 0]]);
        let b = Subspace::from_vectors(q, 3, vec![vec![0, 1, 0], vec![0, 0, 1]]);
        let c = a.intersect(&b);
        assert_eq!(c.dim(), 1);
        assert!(c.contains(&[0, 2, 0]));
        // m projects onto the first coordinate; preimage of 0 within full is span(e2, e3).
        let m = FpMatrix::from_rows(q, 3, &[[1, 0, 0]]).unwrap();
        let pre = Subspace::full(q, 3).preimage_within(&m, &Subspace::zero(q, 1));
        assert_eq!(pre, b);
    }

    fn matrix_strategy() -> impl Strategy<Value = (u32, usize, usize, Vec<u32>)> {
        (prop_oneof![Just(2u32), Just(3), Just(5), Just(7)], 1usize..7, 1usize..7).prop_flat_map(
            |(q, r, c)| (Just(q), Just(r), Just(c), proptest::collection::vec(0u32..q, r * c)),
        )
    }

    proptest! {
        #[test]
        fn rank_nullity((q, r, c, data) in matrix_strategy()) {
            let mut m = FpMatrix::zeros(p(q), r, c);
            for i in 0..r { for j in 0..c { m.set(i, j, data[i * c + j]); } }
            let ker = m.kernel_basis();
            prop_assert_eq!(m.rank() + ker.len(), c);
            for v in &ker {
                prop_assert!(m.mul_vec(v).unwrap().iter().all(|&x| x == 0));
            }
        }
    }
}
