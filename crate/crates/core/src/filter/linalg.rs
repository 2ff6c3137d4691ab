use crate::{Error, Result};

/// Solves `A z = b` for symmetric positive definite `A` (row-major `n×n`)
/// by Cholesky factorization. `a` is overwritten by the factor and `b` by
/// the solution.
pub fn cholesky_solve(a: &mut [f64], b: &mut [f64]) -> Result<()> {
    let n = b.len();
    assert_eq!(a.len(), n * n);
    for j in 0..n {
        let mut diag = a[j * n + j];
        for k in 0..j {
            diag -= a[j * n + k] * a[j * n + k];
        }
        if !diag.is_finite() || diag <= 0.0 {
            return Err(Error::NotPositiveDefinite { pivot: j });
        }
        let diag = diag.sqrt();
        a[j * n + j] = diag;
        for i in j + 1..n {
            let mut v = a[i * n + j];
            for k in 0..j {
                v -= a[i * n + k] * a[j * n + k];
            }
            a[i * n + j] = v / diag;
        }
    }
    for i in 0..n {
        let mut v = b[i];
        for k in 0..i {
            v -= a[i * n + k] * b[k];
        }
        b[i] = v / a[i * n + i];
    }
    for i in (0..n).rev() {
        let mut v = b[i];
        for k in i + 1..n {
            v -= a[k * n + i] * b[k];
        }
        b[i] = v / a[i * n + i];
    }
    Ok(())
}
