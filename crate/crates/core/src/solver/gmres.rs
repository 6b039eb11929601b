//! Restarted GMRES for matrix-free linear solves.

/// Outcome of [`gmres`].
#[derive(Debug, Clone)]
pub(crate) struct GmresOutcome {
    pub x: Vec<f64>,
    /// Final residual norm relative to `‖b‖`.
    pub relative_residual: f64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Solves `A x = b` from `x = 0`, where `matvec` applies `A`.
///
/// Stops when `‖b − A x‖ ≤ rtol·‖b‖` or after `max_matvecs` products.
/// `matvec` returning `None` aborts with whatever has been accumulated.
pub(crate) fn gmres<F>(mut matvec: F, b: &[f64], restart: usize, rtol: f64, max_matvecs: usize) -> Option<GmresOutcome>
where
    F: FnMut(&[f64]) -> Option<Vec<f64>>,
{
    let n = b.len();
    let b_norm = norm(b);
    let mut x = vec![0.0; n];
    if b_norm == 0.0 {
        return Some(GmresOutcome { x, relative_residual: 0.0 });
    }
    let mut matvecs = 0;
    let mut r = b.to_vec();
    let mut beta = b_norm;

    loop {
        let mut basis: Vec<Vec<f64>> = vec![r.iter().map(|v| v / beta).collect()];
        // Hessenberg columns, each of length j + 2.
        let mut h: Vec<Vec<f64>> = Vec::new();
        let mut cs: Vec<f64> = Vec::new();
        let mut sn: Vec<f64> = Vec::new();
        let mut g = vec![beta];
        let mut steps = 0;

        for j in 0..restart {
            if matvecs >= max_matvecs {
                break;
            }
            let mut w = matvec(&basis[j])?;
            matvecs += 1;
            let mut col = vec![0.0; j + 2];
            // Modified Gram-Schmidt, applied twice for stability.
            for _ in 0..2 {
                for (i, q) in basis.iter().enumerate() {
                    let c = dot(&w, q);
                    col[i] += c;
                    for (wk, qk) in w.iter_mut().zip(q) {
                        *wk -= c * qk;
                    }
                }
            }
            let w_norm = norm(&w);
            col[j + 1] = w_norm;
            for i in 0..j {
                let (a, b) = (col[i], col[i + 1]);
                col[i] = cs[i] * a + sn[i] * b;
                col[i + 1] = -sn[i] * a + cs[i] * b;
            }
            let (a, b) = (col[j], col[j + 1]);
            let rho = a.hypot(b);
            let (c, s) = if rho == 0.0 { (1.0, 0.0) } else { (a / rho, b / rho) };
            cs.push(c);
            sn.push(s);
            col[j] = rho;
            col[j + 1] = 0.0;
            g.push(-s * g[j]);
            g[j] *= c;
            h.push(col);
            steps = j + 1;
            if g[j + 1].abs() <= rtol * b_norm || w_norm == 0.0 {
                break;
            }
            basis.push(w.iter().map(|v| v / w_norm).collect());
        }

        // Back substitution on the triangular system.
        let mut y = vec![0.0; steps];
        for i in (0..steps).rev() {
            let mut s = g[i];
            for k in i + 1..steps {
                s -= h[k][i] * y[k];
            }
            y[i] = if h[i][i] == 0.0 { 0.0 } else { s / h[i][i] };
        }
        for (k, yk) in y.iter().enumerate() {
            for (xi, qi) in x.iter_mut().zip(&basis[k]) {
                *xi += yk * qi;
            }
        }

        let estimate = g.get(steps).copied().unwrap_or(beta).abs();
        if estimate <= rtol * b_norm || matvecs >= max_matvecs || steps == 0 {
            return Some(GmresOutcome { x, relative_residual: estimate / b_norm });
        }
        // Restart from the true residual.
        let ax = matvec(&x)?;
        matvecs += 1;
        r = b.iter().zip(&ax).map(|(bi, ai)| bi - ai).collect();
        beta = norm(&r);
        if beta <= rtol * b_norm || matvecs >= max_matvecs {
            return Some(GmresOutcome { x, relative_residual: beta / b_norm });
        }
    }
}
