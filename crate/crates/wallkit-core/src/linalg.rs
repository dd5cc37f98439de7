//! Exact integer matrices: rank, products and Smith normal form.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let data = rows.iter().flatten().map(|&x| BigInt::from(x)).collect();
        IntMatrix { rows: rows.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(|r| r.to_vec()).collect()
    }
}

pub fn matmul(a: &IntMatrix, b: &IntMatrix) -> Result<IntMatrix> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch(a.rows, a.cols, b.rows, b.cols));
    }
    let mut out = IntMatrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(i, k);
            if x.is_zero() {
                continue;
            }
            for j in 0..b.cols {
                let y = b.get(k, j);
                if !y.is_zero() {
                    out.data[i * b.cols + j] += x * y;
                }
            }
        }
    }
    Ok(out)
}

/// Rank over the rationals by Bareiss elimination; every division is exact.
pub fn rank_exact(m: &IntMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    let mut a = m.row_vecs();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..m.cols {
        let Some(p) = (rank..m.rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..m.rows {
            for c in col + 1..m.cols {
                let v = &a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c];
                a[r][c] = v / &prev;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
        if rank == m.rows {
            break;
        }
    }
    rank
}

/// Nonzero invariant factors `d_1 | d_2 | ...`, all positive.
pub fn smith_normal_form(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.row_vecs();
    let (rows, cols) = (m.rows, m.cols);
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the remaining block
        let mut best: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                if !a[r][c].is_zero() && best.is_none_or(|(br, bc)| a[r][c].abs() < a[br][bc].abs()) {
                    best = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = best else { break };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let mut dirty = false;
            for r in t + 1..rows {
                if a[r][t].is_zero() {
                    continue;
                }
                let q = a[r][t].div_floor(&a[t][t]);
                for c in t..cols {
                    let v = &q * &a[t][c];
                    a[r][c] -= v;
                }
                if !a[r][t].is_zero() {
                    a.swap(t, r);
                    dirty = true;
                }
            }
            for c in t + 1..cols {
                if a[t][c].is_zero() {
                    continue;
                }
                let q = a[t][c].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = &q * &row[t];
                    row[c] -= v;
                }
                if !a[t][c].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, c);
                    }
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // enforce divisibility of the rest by the pivot
            let bad = (t + 1..rows).find(|&r| (t + 1..cols).any(|c| !a[r][c].is_multiple_of(&a[t][t])));
            match bad {
                Some(r) => {
                    for c in t..cols {
                        let v = a[r][c].clone();
                        a[t][c] += v;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_exact(&IntMatrix::identity(3)), 3);
        assert_eq!(rank_exact(&IntMatrix::zeros(3, 4)), 0);
        assert_eq!(rank_exact(&IntMatrix::from_rows(&[vec![2, 4], vec![1, 2]])), 1);
        assert_eq!(rank_exact(&IntMatrix::zeros(0, 4)), 0);
    }

    #[test]
    fn snf_examples() {
        assert_eq!(smith_normal_form(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 6]])), bi(&[2, 6]));
        assert_eq!(smith_normal_form(&IntMatrix::from_rows(&[vec![2]])), bi(&[2]));
        assert_eq!(smith_normal_form(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]])), bi(&[1, 6]));
        let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(smith_normal_form(&m), bi(&[2, 6, 12]));
    }

    #[test]
    fn matmul_examples() {
        let m = IntMatrix::from_rows(&[vec![1, 2, 3], vec![4, 5, 6]]);
        assert_eq!(matmul(&IntMatrix::identity(2), &m).unwrap(), m);
        assert!(matmul(&m, &IntMatrix::zeros(3, 2)).unwrap().is_zero());
        assert_eq!(matmul(&m, &m), Err(Error::DimensionMismatch(2, 3, 2, 3)));
    }
}
