use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{smith_normal_form, IntMatrix, LinAlgError};

/// Counts of positive, zero and negative eigenvalues.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Inertia {
    pub positive: usize,
    pub zero: usize,
    pub negative: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

/// Inertia of a symmetric integer matrix.
///
/// The nullity comes from the rank of the Smith normal form; the split of
/// the remaining eigenvalues is read off a congruence diagonalization over ℚ
/// (Sylvester's law of inertia).
pub fn symmetric_signature(s: &IntMatrix) -> Result<Inertia, LinAlgError> {
    if !s.is_symmetric() {
        return Err(LinAlgError::NotSymmetric);
    }
    let n = s.rows();
    let zero = n - smith_normal_form(s).rank();

    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| s.row(i).iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let mut inertia = Inertia::default();

    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // e_k ← e_k + e_j makes the pivot 2·a_kj ≠ 0
                for c in 0..n {
                    let v = &a[k][c] + &a[j][c];
                    a[k][c] = v;
                }
                for row in a.iter_mut() {
                    let v = &row[k] + &row[j];
                    row[k] = v;
                }
            } else {
                inertia.zero += 1;
                continue;
            }
        }
        let pivot = a[k][k].clone();
        if pivot.is_positive() {
            inertia.positive += 1;
        } else {
            inertia.negative += 1;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pivot;
            for j in k..n {
                let v = &a[i][j] - &f * &a[k][j];
                a[i][j] = v;
            }
            for j in k..n {
                a[j][i] = a[i][j].clone();
            }
        }
    }
    debug_assert_eq!(inertia.zero, zero, "congruence nullity disagrees with SNF rank");
    inertia.zero = zero;
    Ok(inertia)
}
