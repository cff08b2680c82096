//! Exact integer matrix algebra.

use super::MatrixError;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// A square matrix of arbitrary-precision integers, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(n: usize, entries: Vec<BigInt>) -> Result<Self, MatrixError> {
        if n == 0 {
            return Err(MatrixError::EmptyMatrix);
        }
        if entries.len() != n * n {
            return Err(MatrixError::BadEntryCount);
        }
        Ok(IntMatrix { n, entries })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self, MatrixError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(MatrixError::BadEntryCount);
            }
            entries.extend(r.iter().map(|&v| BigInt::from(v)));
        }
        IntMatrix::new(n, entries)
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix {
            n,
            entries: vec![BigInt::zero(); n * n],
        };
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn neg_identity(n: usize) -> Self {
        let mut m = IntMatrix::identity(n);
        for e in m.entries.iter_mut() {
            *e = -std::mem::take(e);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entry(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.entry(k, j);
                    if !b.is_zero() {
                        entries[i * n + j] += a * b;
                    }
                }
            }
        }
        IntMatrix { n, entries }
    }

    pub fn pow(&self, k: u32) -> IntMatrix {
        let mut result = IntMatrix::identity(self.n);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        result
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &IntMatrix) -> IntMatrix {
        let n = self.n + other.n;
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..self.n {
            for j in 0..self.n {
                entries[i * n + j] = self.entry(i, j).clone();
            }
        }
        for i in 0..other.n {
            for j in 0..other.n {
                entries[(self.n + i) * n + (self.n + j)] = other.entry(i, j).clone();
            }
        }
        IntMatrix { n, entries }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        let n = self.n;
        let mut a: Vec<BigInt> = self.entries.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            // Pivot: find a nonzero entry in column k at or below row k.
            if a[k * n + k].is_zero() {
                let swap = (k + 1..n).find(|&r| !a[r * n + k].is_zero());
                match swap {
                    None => return BigInt::zero(),
                    Some(r) => {
                        for j in 0..n {
                            a.swap(k * n + j, r * n + j);
                        }
                        sign = -sign;
                    }
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    let (q, r) = num_integer::Integer::div_rem(&num, &prev);
                    debug_assert!(r.is_zero(), "Bareiss division must be exact");
                    a[i * n + j] = q;
                }
                a[i * n + k] = BigInt::zero();
            }
            prev = a[k * n + k].clone();
        }
        sign * a[(n - 1) * n + (n - 1)].clone()
    }

    /// Determinant by recursive cofactor expansion. Exponential; intended as
    /// an independent oracle for small matrices.
    pub fn det_cofactor(&self) -> BigInt {
        fn rec(n: usize, a: &[BigInt]) -> BigInt {
            if n == 1 {
                return a[0].clone();
            }
            let mut acc = BigInt::zero();
            for j in 0..n {
                if a[j].is_zero() {
                    continue;
                }
                let mut minor = Vec::with_capacity((n - 1) * (n - 1));
                for i in 1..n {
                    for k in 0..n {
                        if k != j {
                            minor.push(a[i * n + k].clone());
                        }
                    }
                }
                let term = &a[j] * rec(n - 1, &minor);
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
        rec(self.n, &self.entries)
    }

    /// Minor over the given row and column index subsets (equal lengths).
    fn minor(&self, rows: &[usize], cols: &[usize]) -> BigInt {
        let k = rows.len();
        if k == 0 {
            return BigInt::one();
        }
        let mut entries = Vec::with_capacity(k * k);
        for &i in rows {
            for &j in cols {
                entries.push(self.entry(i, j).clone());
            }
        }
        IntMatrix { n: k, entries }.det()
    }

    /// The `p`-th exterior power: the `C(n,p) × C(n,p)` matrix of `p × p`
    /// minors over index subsets in lexicographic order. `Λ⁰ = [1]`,
    /// `Λⁿ = [det]`.
    pub fn exterior_power(&self, p: usize) -> Result<IntMatrix, MatrixError> {
        if p > self.n {
            return Err(MatrixError::POutOfRange { p, n: self.n });
        }
        let subsets = combinations(self.n, p);
        let m = subsets.len();
        let mut entries = Vec::with_capacity(m * m);
        for rows in &subsets {
            for cols in &subsets {
                entries.push(self.minor(rows, cols));
            }
        }
        Ok(IntMatrix { n: m, entries })
    }

    /// Adjugate matrix: `adj(M) · M = det(M) · I`.
    pub fn adjugate(&self) -> IntMatrix {
        let n = self.n;
        if n == 1 {
            return IntMatrix::identity(1);
        }
        let all: Vec<usize> = (0..n).collect();
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            let rows: Vec<usize> = all.iter().copied().filter(|&r| r != i).collect();
            for j in 0..n {
                let cols: Vec<usize> = all.iter().copied().filter(|&c| c != j).collect();
                let cof = self.minor(&rows, &cols);
                let sgn = if (i + j) % 2 == 0 { 1 } else { -1 };
                // adj = transpose of the cofactor matrix
                entries[j * n + i] = cof * BigInt::from(sgn);
            }
        }
        IntMatrix { n, entries }
    }

    /// Exact inverse of a unimodular matrix (`det = ±1`), as an integer
    /// matrix with `M · M⁻¹ = I` exactly.
    pub fn inverse_unimodular(&self) -> Result<IntMatrix, MatrixError> {
        let d = self.det();
        if !d.abs().is_one() {
            return Err(MatrixError::NotUnimodular { det: d.to_string() });
        }
        let mut adj = self.adjugate();
        if d == BigInt::from(-1) {
            for e in adj.entries.iter_mut() {
                *e = -std::mem::take(e);
            }
        }
        debug_assert_eq!(self.mul(&adj), IntMatrix::identity(self.n));
        Ok(adj)
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.entries
            .iter()
            .map(|e| e.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

/// All `p`-element subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(p);
    fn rec(n: usize, p: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < p - cur.len() {
                break;
            }
            cur.push(i);
            rec(n, p, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, p, 0, &mut cur, &mut out);
    out
}

/// Matrix file format: dimension plus row-major decimal entries.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MatrixDoc {
    pub n: usize,
    pub entries: Vec<String>,
}

impl IntMatrix {
    pub fn to_doc(&self) -> MatrixDoc {
        MatrixDoc {
            n: self.n,
            entries: self.entries.iter().map(|e| e.to_string()).collect(),
        }
    }

    pub fn from_doc(doc: &MatrixDoc) -> Result<Self, MatrixError> {
        let entries = doc
            .entries
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(|_| MatrixError::BadEntryCount))
            .collect::<Result<Vec<_>, _>>()?;
        IntMatrix::new(doc.n, entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_routes_agree_small() {
        let m = IntMatrix::from_i64(&[&[2, 1], &[1, 1]]).unwrap();
        assert_eq!(m.det(), BigInt::one());
        assert_eq!(m.det_cofactor(), BigInt::one());
        let s = IntMatrix::from_i64(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]).unwrap();
        assert_eq!(s.det(), BigInt::from(-3));
        assert_eq!(s.det_cofactor(), BigInt::from(-3));
    }

    #[test]
    fn det_identity() {
        assert_eq!(IntMatrix::identity(5).det(), BigInt::one());
    }

    #[test]
    fn det_singular_with_zero_pivot() {
        let m = IntMatrix::from_i64(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]).unwrap();
        assert_eq!(m.det(), BigInt::zero());
        assert_eq!(m.det_cofactor(), BigInt::zero());
    }

    #[test]
    fn inverse_2x2() {
        let m = IntMatrix::from_i64(&[&[2, 1], &[1, 1]]).unwrap();
        let inv = m.inverse_unimodular().unwrap();
        assert_eq!(inv, IntMatrix::from_i64(&[&[1, -1], &[-1, 2]]).unwrap());
        assert_eq!(m.mul(&inv), IntMatrix::identity(2));
    }

    #[test]
    fn inverse_rejects_non_unimodular() {
        let m = IntMatrix::from_i64(&[&[2, 0], &[0, 2]]).unwrap();
        assert!(matches!(
            m.inverse_unimodular(),
            Err(MatrixError::NotUnimodular { .. })
        ));
    }

    #[test]
    fn exterior_identities() {
        let m = IntMatrix::from_i64(&[&[2, 1, 0], &[1, 1, 3], &[0, 5, 7]]).unwrap();
        assert_eq!(m.exterior_power(1).unwrap(), m);
        assert_eq!(
            m.exterior_power(3).unwrap().entries()[0],
            m.det()
        );
        assert_eq!(m.exterior_power(0).unwrap(), IntMatrix::identity(1));
    }

    #[test]
    fn exterior_of_diagonal() {
        let d = IntMatrix::from_i64(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]]).unwrap();
        let l2 = d.exterior_power(2).unwrap();
        assert_eq!(
            l2,
            IntMatrix::from_i64(&[&[6, 0, 0], &[0, 10, 0], &[0, 0, 15]]).unwrap()
        );
    }

    #[test]
    fn matrix_doc_roundtrip() {
        let m = IntMatrix::from_i64(&[&[56, -19, -17], &[-16, 6, 5], &[207, -71, -63]]).unwrap();
        let doc = m.to_doc();
        assert_eq!(IntMatrix::from_doc(&doc).unwrap(), m);
    }
}
