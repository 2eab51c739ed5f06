//! Linear systems over ℤ and ℚ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{smith_normal_form, IntMatrix, LinAlgError};
use crate::model::Rational;

/// Solution of `M·a = d·v` over ℤ with `d` minimal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub order: BigInt,
    pub particular: Vec<BigInt>,
    /// ℤ-basis of `ker M`, in Hermite normal form.
    pub kernel_basis: Vec<Vec<BigInt>>,
}

/// Solution of `M·b = v` over ℚ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSolution {
    pub particular: Vec<Rational>,
    pub kernel_basis: Vec<Vec<Rational>>,
}

fn check_dims(m: &IntMatrix, len: usize) -> Result<(), LinAlgError> {
    if m.rows() != len {
        return Err(LinAlgError::DimensionMismatch { rows: m.rows(), len });
    }
    Ok(())
}

/// Row-style Hermite normal form of the lattice spanned by `vectors`:
/// echelon rows, positive pivots, entries above each pivot reduced into
/// `[0, pivot)`. Zero rows are dropped.
pub fn hermite_normal_form(vectors: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let Some(width) = vectors.first().map(Vec::len) else {
        return Vec::new();
    };
    let mut rows: Vec<Vec<BigInt>> = vectors.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut top = 0;
    for col in 0..width {
        if top == rows.len() {
            break;
        }
        // Euclid down the column until a single nonzero entry remains.
        loop {
            let nonzero: Vec<usize> = (top..rows.len()).filter(|&i| !rows[i][col].is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            let min = *nonzero.iter().min_by_key(|&&i| rows[i][col].abs()).unwrap();
            rows.swap(top, min);
            if nonzero.len() == 1 {
                break;
            }
            for i in top + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[top][col]);
                let pivot_row = rows[top].clone();
                for (x, p) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * p;
                }
            }
        }
        if rows[top][col].is_zero() {
            continue;
        }
        if rows[top][col].is_negative() {
            for x in rows[top].iter_mut() {
                *x = -&*x;
            }
        }
        pivots.push(col);
        top += 1;
    }
    rows.truncate(top);
    for (r, &col) in pivots.iter().enumerate() {
        let pivot_row = rows[r].clone();
        for upper in rows.iter_mut().take(r) {
            let q = upper[col].div_floor(&pivot_row[col]);
            for (x, p) in upper.iter_mut().zip(&pivot_row) {
                *x -= &q * p;
            }
        }
    }
    rows
}

/// Reduces `x` modulo the lattice with Hermite basis `hnf` so that each pivot
/// coordinate lands in `[0, pivot)`.
fn reduce_modulo(x: &mut [BigInt], hnf: &[Vec<BigInt>]) {
    for row in hnf {
        let Some(col) = row.iter().position(|e| !e.is_zero()) else {
            continue;
        };
        let q = x[col].div_floor(&row[col]);
        for (xi, r) in x.iter_mut().zip(row) {
            *xi -= &q * r;
        }
    }
}

/// Solves `M·a = v` over ℤ. `Ok(None)` means there is no integral solution.
pub fn solve_integer(m: &IntMatrix, v: &[BigInt]) -> Result<Option<SolveResult>, LinAlgError> {
    check_dims(m, v.len())?;
    let snf = smith_normal_form(m);
    let rank = snf.rank();
    let w = snf.u.mul_vec(v);

    if w[rank..].iter().any(|x| !x.is_zero()) {
        return Ok(None);
    }
    let mut y = vec![BigInt::zero(); m.cols()];
    for i in 0..rank {
        let (q, r) = w[i].div_rem(&snf.d[(i, i)]);
        if !r.is_zero() {
            return Ok(None);
        }
        y[i] = q;
    }
    let mut particular = snf.v.mul_vec(&y);
    let kernel: Vec<Vec<BigInt>> = (rank..m.cols()).map(|j| snf.v.column(j)).collect();
    let kernel_basis = hermite_normal_form(&kernel);
    reduce_modulo(&mut particular, &kernel_basis);

    Ok(Some(SolveResult { order: BigInt::one(), particular, kernel_basis }))
}

/// Smallest `d ≥ 1` such that `M·a = d·v` has an integral solution, with that
/// solution. `Ok(None)` when `v` is not in the rational image of `M`.
pub fn minimal_order_solve(m: &IntMatrix, v: &[BigInt]) -> Result<Option<SolveResult>, LinAlgError> {
    check_dims(m, v.len())?;
    let snf = smith_normal_form(m);
    let rank = snf.rank();
    let w = snf.u.mul_vec(v);
    if w[rank..].iter().any(|x| !x.is_zero()) {
        return Ok(None);
    }
    let order = (0..rank).fold(BigInt::one(), |acc, i| {
        let di = &snf.d[(i, i)];
        acc.lcm(&(di / di.gcd(&w[i])))
    });
    let scaled: Vec<BigInt> = v.iter().map(|x| x * &order).collect();
    let mut result = solve_integer(m, &scaled)?.expect("scaled right-hand side is solvable by construction");
    result.order = order;
    Ok(Some(result))
}

/// Solves `M·b = v` over ℚ by reduced row echelon form. Independent of the
/// Smith normal form route.
pub fn solve_rational(m: &IntMatrix, v: &[Rational]) -> Result<Option<RationalSolution>, LinAlgError> {
    check_dims(m, v.len())?;
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<Rational>> = (0..rows)
        .map(|i| {
            let mut row: Vec<Rational> = m.row(i).iter().cloned().map(Rational::from).collect();
            row.push(v[i].clone());
            row
        })
        .collect();

    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = Rational::one() / &a[r][c];
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x = &*x - &(&f * p);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }

    if a[r..].iter().any(|row| !row[cols].is_zero()) {
        return Ok(None);
    }

    let mut particular = vec![Rational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        particular[c] = a[i][cols].clone();
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let kernel_basis = free
        .iter()
        .map(|&f| {
            let mut k = vec![Rational::zero(); cols];
            k[f] = Rational::one();
            for (i, &c) in pivots.iter().enumerate() {
                k[c] = -&a[i][f];
            }
            k
        })
        .collect();
    Ok(Some(RationalSolution { particular, kernel_basis }))
}
