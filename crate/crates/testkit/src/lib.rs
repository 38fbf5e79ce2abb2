//! Reference computations for tests.
//!
//! Nothing here calls into `twochoice-core`. Each routine is a direct,
//! deliberately naive transcription of the quantity it checks.

/// Exact one-step probabilities `(P(count rises), P(count falls))` of the
/// original protocol, from enumerating the chooser and both neighbour
/// samples.
pub fn one_step_probabilities(adjacency: &[Vec<u32>], opinions: &[bool], alpha: f64) -> (f64, f64) {
    let n = adjacency.len();
    let mut up = 0.0;
    let mut down = 0.0;
    for u in 0..n {
        let w_u = 1.0 / n as f64;
        let cur = opinions[u];
        // Biased branch.
        if !cur {
            up += w_u * alpha;
        }
        let nb = &adjacency[u];
        if nb.is_empty() {
            continue;
        }
        let w_pair = w_u * (1.0 - alpha) / (nb.len() * nb.len()) as f64;
        for &a in nb {
            for &b in nb {
                let votes = cur as u8 + opinions[a as usize] as u8 + opinions[b as usize] as u8;
                let next = votes >= 2;
                if next && !cur {
                    up += w_pair;
                } else if !next && cur {
                    down += w_pair;
                }
            }
        }
    }
    (up, down)
}

/// `Σ_{k=1}^{n} 1/k`.
pub fn harmonic(n: usize) -> f64 {
    (1..=n).map(|k| 1.0 / k as f64).sum()
}

/// Expected time for `n` coupons, `n · H_n`.
pub fn coupon_collector_mean(n: usize) -> f64 {
    n as f64 * harmonic(n)
}

/// Adaptive Simpson quadrature with absolute tolerance `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        (m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb))
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        whole: f64,
        m: f64,
        fm: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (lm, flm, left) = simpson(f, a, fa, m, fm);
        let (rm, frm, right) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, fa, m, fm, left, lm, flm, tol / 2.0, depth - 1)
            + recurse(f, m, fm, b, fb, right, rm, frm, tol / 2.0, depth - 1)
    }
    if a == b {
        return 0.0;
    }
    let (fa, fb) = (f(a), f(b));
    let (m, fm, whole) = simpson(f, a, fa, b, fb);
    recurse(f, a, fa, b, fb, whole, m, fm, tol, 50)
}

/// Transition probabilities of the complete-graph counting chain in which
/// a regular update may sample the updating agent itself:
/// returns `(up, down)` at state `i` of `n`.
pub fn modified_chain_rates(n: usize, alpha: f64, i: usize) -> (f64, f64) {
    let x = i as f64 / n as f64;
    let up = (1.0 - x) * (alpha + (1.0 - alpha) * x * x);
    let down = x * (1.0 - alpha) * (1.0 - x) * (1.0 - x);
    (up, down)
}

/// Expected absorption time at state `n`, starting from `start`, by solving
/// `(I - Q) t = 1` over the transient states `0..n` with Gaussian
/// elimination and partial pivoting.
pub fn dense_absorption_time(n: usize, alpha: f64, start: usize) -> f64 {
    if start >= n {
        return 0.0;
    }
    let m = n;
    let mut a = vec![vec![0.0f64; m + 1]; m];
    for i in 0..m {
        let (up, down) = modified_chain_rates(n, alpha, i);
        let stay = 1.0 - up - down;
        a[i][i] = 1.0 - stay;
        if i + 1 < m {
            a[i][i + 1] = -up;
        }
        if i > 0 {
            a[i][i - 1] = -down;
        }
        a[i][m] = 1.0;
    }
    for col in 0..m {
        let pivot = (col..m)
            .max_by(|&r, &s| a[r][col].abs().total_cmp(&a[s][col].abs()))
            .unwrap();
        a.swap(col, pivot);
        let pivot_row = a[col].clone();
        for (row, r) in a.iter_mut().enumerate() {
            if row != col {
                let factor = r[col] / pivot_row[col];
                if factor != 0.0 {
                    for (x, y) in r[col..].iter_mut().zip(&pivot_row[col..]) {
                        *x -= factor * y;
                    }
                }
            }
        }
    }
    a[start][m] / a[start][start]
}

/// Least-squares slope, intercept and R² of `y` on `x`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx, sxy * sxy / (sxx * syy))
}
