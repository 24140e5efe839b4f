//! Integer row echelon form for subgroups of `Z^d`.

/// Echelon basis of the subgroup generated by a list of vectors, with the
/// unimodular transform expressing the basis in the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    dim: usize,
    basis: Vec<Vec<i64>>,
    pivots: Vec<usize>,
    // basis[k] = sum_i transform[k][i] * generators[i]
    transform: Vec<Vec<i64>>,
}

impl Echelon {
    pub fn new(dim: usize, generators: &[Vec<i64>]) -> Self {
        let n = generators.len();
        let mut a: Vec<Vec<i128>> = generators
            .iter()
            .map(|g| {
                assert_eq!(g.len(), dim, "generator dimension");
                g.iter().map(|&x| x as i128).collect()
            })
            .collect();
        let mut u: Vec<Vec<i128>> = (0..n)
            .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..dim {
            if r == n {
                break;
            }
            while let Some(best) = (r..n)
                .filter(|&i| a[i][col] != 0)
                .min_by_key(|&i| a[i][col].abs())
            {
                a.swap(r, best);
                u.swap(r, best);
                let mut done = true;
                for i in r + 1..n {
                    if a[i][col] != 0 {
                        let q = a[i][col] / a[r][col];
                        subtract_row(&mut a, i, r, q);
                        subtract_row(&mut u, i, r, q);
                        done &= a[i][col] == 0;
                    }
                }
                if done {
                    break;
                }
            }
            if a[r][col] == 0 {
                continue;
            }
            if a[r][col] < 0 {
                a[r].iter_mut().for_each(|x| *x = -*x);
                u[r].iter_mut().for_each(|x| *x = -*x);
            }
            pivots.push(col);
            r += 1;
        }
        let narrow = |m: Vec<Vec<i128>>| -> Vec<Vec<i64>> {
            m.into_iter()
                .take(r)
                .map(|row| {
                    row.into_iter()
                        .map(|x| i64::try_from(x).expect("entry fits i64"))
                        .collect()
                })
                .collect()
        };
        Self {
            dim,
            basis: narrow(a),
            pivots,
            transform: narrow(u),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    /// `v = rep + sum alpha_k basis_k` with `0 <= rep[pivot_k] < basis_k[pivot_k]`.
    /// The representative depends only on the coset of `v`.
    pub fn reduce(&self, v: &[i64]) -> (Vec<i64>, Vec<i64>) {
        assert_eq!(v.len(), self.dim, "vector dimension");
        let mut rest: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        let mut alpha = Vec::with_capacity(self.rank());
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let q = rest[p].div_euclid(row[p] as i128);
            for (x, &b) in rest.iter_mut().zip(row) {
                *x -= q * b as i128;
            }
            alpha.push(q as i64);
        }
        (rest.into_iter().map(|x| x as i64).collect(), alpha)
    }

    /// Coordinates in the echelon basis, if `v` lies in the subgroup.
    pub fn coordinates(&self, v: &[i64]) -> Option<Vec<i64>> {
        let (rest, alpha) = self.reduce(v);
        rest.iter().all(|&x| x == 0).then_some(alpha)
    }

    /// Converts echelon coordinates to coefficients of the generators.
    /// Unique when the generators are independent.
    pub fn generator_coefficients(&self, alpha: &[i64]) -> Vec<i64> {
        let n = self.transform.first().map_or(0, Vec::len);
        (0..n)
            .map(|i| {
                alpha
                    .iter()
                    .zip(&self.transform)
                    .map(|(&a, row)| a * row[i])
                    .sum()
            })
            .collect()
    }
}

/// Rank of a list of integer vectors over the rationals.
pub fn rank(dim: usize, vectors: &[Vec<i64>]) -> usize {
    Echelon::new(dim, vectors).rank()
}

/// `rows[i] -= q * rows[r]` for `r < i`.
fn subtract_row(rows: &mut [Vec<i128>], i: usize, r: usize, q: i128) {
    let (top, bottom) = rows.split_at_mut(i);
    for (x, y) in bottom[0].iter_mut().zip(&top[r]) {
        *x -= q * y;
    }
}
