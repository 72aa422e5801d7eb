use crate::error::{Error, Result};

/// Dense boolean matrix, rows packed into 64-bit words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GF2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    words: Vec<u64>,
}

impl GF2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(64);
        Self { rows, cols, stride, words: vec![0; rows * stride] }
    }

    pub fn from_rows(cols: usize, rows: &[Vec<bool>]) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: row.len() });
            }
            for (j, &b) in row.iter().enumerate() {
                if b {
                    m.set(i, j, true);
                }
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.words[i * self.stride + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        let w = &mut self.words[i * self.stride + j / 64];
        if value {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.words[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row(&self, i: usize) -> Vec<bool> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    /// The submatrix on the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> GF2Matrix {
        let mut out = GF2Matrix::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            let src = self.row_words(i);
            let dst = &mut out.words[i * out.stride..(i + 1) * out.stride];
            for (t, &j) in cols.iter().enumerate() {
                dst[t / 64] |= (src[j / 64] >> (j % 64) & 1) << (t % 64);
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.words.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    // row[dst] ^= row[src], starting at word `from`
    fn xor_into(&mut self, dst: usize, src: usize, from: usize) {
        let s = self.stride;
        for w in from..s {
            let v = self.words[src * s + w];
            self.words[dst * s + w] ^= v;
        }
    }
}

/// Reduced row-echelon form of an augmented system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub matrix: GF2Matrix,
    pub rhs: Vec<bool>,
    /// Pivot column of each of the first `pivots.len()` rows.
    pub pivots: Vec<usize>,
    /// No row reads `0 = 1`.
    pub consistent: bool,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Gauss-Jordan elimination over GF(2), pivoting on the lowest column first.
pub fn gf2_eliminate(m: &GF2Matrix, b: &[bool]) -> Result<Echelon> {
    if b.len() != m.rows {
        return Err(Error::DimensionMismatch { expected: m.rows, got: b.len() });
    }
    let mut a = m.clone();
    let mut rhs = b.to_vec();
    let mut pivots = Vec::new();
    for col in 0..a.cols {
        let rank = pivots.len();
        if rank == a.rows {
            break;
        }
        let Some(p) = (rank..a.rows).find(|&i| a.get(i, col)) else { continue };
        a.swap_rows(rank, p);
        rhs.swap(rank, p);
        let from = col / 64;
        for i in 0..a.rows {
            if i != rank && a.get(i, col) {
                a.xor_into(i, rank, from);
                rhs[i] ^= rhs[rank];
            }
        }
        pivots.push(col);
    }
    let consistent = rhs[pivots.len()..].iter().all(|&v| !v);
    Ok(Echelon { matrix: a, rhs, pivots, consistent })
}

/// A solution with every free variable at 0, or `None` if there is none.
pub fn gf2_solve(m: &GF2Matrix, b: &[bool]) -> Result<Option<Vec<bool>>> {
    let e = gf2_eliminate(m, b)?;
    if !e.consistent {
        return Ok(None);
    }
    let mut a = vec![false; m.cols];
    for (r, &c) in e.pivots.iter().enumerate() {
        a[c] = e.rhs[r];
    }
    Ok(Some(a))
}

/// Whether `a` satisfies every equation of `m a = b`.
pub fn satisfies(m: &GF2Matrix, b: &[bool], a: &[bool]) -> bool {
    let packed = GF2Matrix::from_rows(a.len(), &[a.to_vec()]).expect("one row");
    let sol = packed.row_words(0);
    (0..m.rows).all(|i| {
        let ones: u32 = m.row_words(i).iter().zip(sol).map(|(x, y)| (x & y).count_ones()).sum();
        (ones % 2 == 1) == b[i]
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn system(rows: &[&[u8]]) -> (GF2Matrix, Vec<bool>) {
        let cols = rows[0].len() - 1;
        let coeffs: Vec<Vec<bool>> = rows.iter().map(|r| r[..cols].iter().map(|&v| v == 1).collect()).collect();
        let b = rows.iter().map(|r| r[cols] == 1).collect();
        (GF2Matrix::from_rows(cols, &coeffs).unwrap(), b)
    }

    /// Plain row reduction on `Vec<Vec<bool>>`.
    fn naive_rref(mut a: Vec<Vec<bool>>, mut b: Vec<bool>, cols: usize) -> (Vec<Vec<bool>>, Vec<bool>, Vec<usize>, bool) {
        let mut pivots = Vec::new();
        for col in 0..cols {
            let r = pivots.len();
            let Some(p) = (r..a.len()).find(|&i| a[i][col]) else { continue };
            a.swap(r, p);
            b.swap(r, p);
            for i in 0..a.len() {
                if i != r && a[i][col] {
                    for j in 0..cols {
                        let v = a[r][j];
                        a[i][j] ^= v;
                    }
                    b[i] ^= b[r];
                }
            }
            pivots.push(col);
        }
        let ok = b[pivots.len()..].iter().all(|&v| !v);
        (a, b, pivots, ok)
    }

    #[test]
    fn tiny_systems() {
        let (m, b) = system(&[&[1, 1]]);
        let e = gf2_eliminate(&m, &b).unwrap();
        assert_eq!((e.pivots.clone(), e.consistent), (vec![0], true));
        let (m, b) = system(&[&[1, 1], &[1, 0]]);
        assert!(!gf2_eliminate(&m, &b).unwrap().consistent);
        assert_eq!(gf2_solve(&m, &b).unwrap(), None);
        let (m, b) = system(&[&[1, 1, 1]]);
        assert_eq!(gf2_solve(&m, &b).unwrap(), Some(vec![true, false]));
        assert!(gf2_solve(&m, &[true, true]).is_err());
    }

    #[test]
    fn wide_rows_cross_word_boundaries() {
        let mut m = GF2Matrix::zeros(3, 130);
        m.set(0, 129, true);
        m.set(1, 64, true);
        m.set(1, 129, true);
        m.set(2, 0, true);
        let sol = gf2_solve(&m, &[true, false, true]).unwrap().unwrap();
        assert!(satisfies(&m, &[true, false, true], &sol));
        assert_eq!(sol.iter().filter(|&&v| v).count(), 3);
        let sub = m.select_columns(&[129, 0]);
        assert_eq!(sub.row(1), [true, false]);
        assert_eq!(sub.row(2), [false, true]);
    }

    proptest! {
        #[test]
        fn matches_naive_elimination(m in 1usize..40, n in 1usize..70, seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let rows: Vec<Vec<bool>> = (0..m).map(|_| (0..n).map(|_| rng.gen_bool(0.3)).collect()).collect();
            let b: Vec<bool> = (0..m).map(|_| rng.gen()).collect();
            let packed = GF2Matrix::from_rows(n, &rows).unwrap();
            let e = gf2_eliminate(&packed, &b).unwrap();
            let (na, nb, np, ok) = naive_rref(rows, b.clone(), n);
            prop_assert_eq!(&e.pivots, &np);
            prop_assert_eq!(e.consistent, ok);
            prop_assert_eq!(&e.rhs, &nb);
            for (i, row) in na.iter().enumerate() {
                prop_assert_eq!(&e.matrix.row(i), row);
            }
            if let Some(a) = gf2_solve(&packed, &b).unwrap() {
                prop_assert!(satisfies(&packed, &b, &a));
            }
        }

        #[test]
        fn consistency_matches_enumeration(m in 1usize..=5, n in 1usize..=4, bits in any::<u32>()) {
            let rows: Vec<Vec<bool>> = (0..m).map(|i| (0..n).map(|j| bits >> (i * (n + 1) + j) & 1 == 1).collect()).collect();
            let b: Vec<bool> = (0..m).map(|i| bits >> (i * (n + 1) + n) & 1 == 1).collect();
            let packed = GF2Matrix::from_rows(n, &rows).unwrap();
            let any = (0..1u32 << n).any(|s| {
                let a: Vec<bool> = (0..n).map(|j| s >> j & 1 == 1).collect();
                rows.iter().zip(&b).all(|(r, &y)| r.iter().zip(&a).filter(|(p, q)| **p && **q).count() % 2 == y as usize)
            });
            prop_assert_eq!(gf2_eliminate(&packed, &b).unwrap().consistent, any);
        }
    }
}
