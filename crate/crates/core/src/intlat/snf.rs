use super::{IntScalar, Matrix};

/// Smith decomposition `A = U · D · V` with `U`, `V` unimodular and `D`
/// diagonal, `d₁ | d₂ | …`, all diagonal entries nonnegative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult<T> {
    pub u: Matrix<T>,
    pub d: Matrix<T>,
    pub v: Matrix<T>,
    pub u_inv: Matrix<T>,
    pub v_inv: Matrix<T>,
}

impl<T: IntScalar> SnfResult<T> {
    /// Diagonal entries of `D`.
    pub fn diagonal(&self) -> Vec<T> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

// Invariant kept during elimination: original = u · work · v,
// with u_inv · u = 1 and v · v_inv = 1.
struct Work<T> {
    m: Matrix<T>,
    u: Matrix<T>,
    u_inv: Matrix<T>,
    v: Matrix<T>,
    v_inv: Matrix<T>,
}

impl<T: IntScalar> Work<T> {
    fn add_row(&mut self, target: usize, source: usize, k: &T) {
        self.m.add_row(target, source, k);
        self.u_inv.add_row(target, source, k);
        // u · E⁻¹ : col[source] -= k · col[target]
        self.u.add_col(source, target, &(-k.clone()));
    }

    fn add_col(&mut self, target: usize, source: usize, k: &T) {
        self.m.add_col(target, source, k);
        self.v_inv.add_col(target, source, k);
        // F⁻¹ · v : row[source] -= k · row[target]
        self.v.add_row(source, target, &(-k.clone()));
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.m.swap_rows(a, b);
        self.u_inv.swap_rows(a, b);
        self.u.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.m.swap_cols(a, b);
        self.v_inv.swap_cols(a, b);
        self.v.swap_rows(a, b);
    }

    fn negate_row(&mut self, i: usize) {
        self.m.negate_row(i);
        self.u_inv.negate_row(i);
        self.u.negate_col(i);
    }

    fn smallest_nonzero(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, T)> = None;
        for i in t..self.m.rows() {
            for j in t..self.m.cols() {
                let a = self.m[(i, j)].abs();
                if a.is_zero() {
                    continue;
                }
                if best.as_ref().map_or(true, |(_, _, b)| a < *b) {
                    best = Some((i, j, a));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }
}

/// Smith normal form with unimodular transforms.
pub fn snf<T: IntScalar>(a: &Matrix<T>) -> SnfResult<T> {
    let (rows, cols) = (a.rows(), a.cols());
    let mut w = Work {
        m: a.clone(),
        u: Matrix::identity(rows),
        u_inv: Matrix::identity(rows),
        v: Matrix::identity(cols),
        v_inv: Matrix::identity(cols),
    };

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = w.smallest_nonzero(t) else {
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if w.m[(i, t)].is_zero() {
                    continue;
                }
                let q = w.m[(i, t)].div_floor(&w.m[(t, t)]);
                w.add_row(i, t, &(-q));
                if !w.m[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if w.m[(t, j)].is_zero() {
                    continue;
                }
                let q = w.m[(t, j)].div_floor(&w.m[(t, t)]);
                w.add_col(j, t, &(-q));
                if !w.m[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // a remainder smaller than the pivot appeared; move it to the pivot slot
                let mut best = (t, t);
                let mut best_val = w.m[(t, t)].abs();
                for i in t + 1..rows {
                    let v = w.m[(i, t)].abs();
                    if !v.is_zero() && v < best_val {
                        best = (i, t);
                        best_val = v;
                    }
                }
                for j in t + 1..cols {
                    let v = w.m[(t, j)].abs();
                    if !v.is_zero() && v < best_val {
                        best = (t, j);
                        best_val = v;
                    }
                }
                w.swap_rows(t, best.0);
                w.swap_cols(t, best.1);
                continue;
            }
            // row and column are clear; enforce divisibility on the trailing block
            let pivot = w.m[(t, t)].clone();
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !w.m[(i, j)].is_multiple_of(&pivot));
            match offender {
                Some((i, _)) => {
                    w.add_row(t, i, &T::one());
                }
                None => break,
            }
        }
        if w.m[(t, t)] < T::zero() {
            w.negate_row(t);
        }
    }

    SnfResult {
        u: w.u,
        d: w.m,
        v: w.v,
        u_inv: w.u_inv,
        v_inv: w.v_inv,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::Zero;

    fn check(a: &Matrix<BigInt>) -> SnfResult<BigInt> {
        let r = snf(a);
        assert_eq!(&r.u.mul(&r.d).unwrap().mul(&r.v).unwrap(), a);
        let n = a.rows();
        let m = a.cols();
        assert_eq!(r.u.mul(&r.u_inv).unwrap(), Matrix::identity(n));
        assert_eq!(r.v.mul(&r.v_inv).unwrap(), Matrix::identity(m));
        let diag = r.diagonal();
        for w in diag.windows(2) {
            if !w[1].is_zero() {
                assert!(w[1].is_multiple_of(&w[0]), "{diag:?}");
            }
        }
        for i in 0..n {
            for j in 0..m {
                if i != j {
                    assert!(r.d[(i, j)].is_zero());
                }
            }
        }
        r
    }

    #[test]
    fn upper_triangular_example() {
        let a = Matrix::<BigInt>::from_i64_rows(&[&[1, 1], &[0, 2]]).unwrap();
        let r = check(&a);
        assert_eq!(r.diagonal(), vec![BigInt::from(1), BigInt::from(2)]);
    }

    #[test]
    fn scalar_and_zero() {
        let a = Matrix::<BigInt>::from_i64_rows(&[&[2, 0], &[0, 2]]).unwrap();
        assert_eq!(check(&a).diagonal(), vec![BigInt::from(2), BigInt::from(2)]);
        let z = Matrix::<BigInt>::from_i64_rows(&[&[0]]).unwrap();
        assert_eq!(check(&z).diagonal(), vec![BigInt::from(0)]);
    }

    #[test]
    fn divisibility_fixup() {
        let a = Matrix::<BigInt>::from_i64_rows(&[&[2, 0], &[0, 3]]).unwrap();
        assert_eq!(check(&a).diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
        let b = Matrix::<i64>::from_i64_rows(&[&[4, 6, 0], &[6, 9, 3]]).unwrap();
        let r = snf(&b);
        assert_eq!(r.u.mul(&r.d).unwrap().mul(&r.v).unwrap(), b);
    }
}
