//! Small numeric helpers shared across modules: binomial coefficients and
//! Legendre polynomials.

/// Binomial coefficient C(n, k) as an f64.
///
/// Computed multiplicatively; exact whenever every intermediate product stays
/// below 2^53, and accurate to a few ulps far beyond that.
pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0_f64;
    for i in 1..=k {
        acc = acc * f64::from(n - k + i) / f64::from(i);
    }
    acc
}

/// Pascal's triangle rows 0..=n_max as f64, for callers that need many
/// coefficients at once. `rows[m][j] = C(m, j)`.
pub fn pascal_rows(n_max: u32) -> Vec<Vec<f64>> {
    let n_max = n_max as usize;
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(n_max + 1);
    rows.push(vec![1.0]);
    for m in 1..=n_max {
        let prev = &rows[m - 1];
        let mut row = vec![0.0; m + 1];
        row[0] = 1.0;
        row[m] = 1.0;
        for j in 1..m {
            row[j] = prev[j - 1] + prev[j];
        }
        rows.push(row);
    }
    rows
}

/// Legendre polynomial P_n(x) via the three-term recurrence
/// (n+1) P_{n+1}(x) = (2n+1) x P_n(x) - n P_{n-1}(x).
pub fn legendre(n: u32, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut p_prev = 1.0;
    let mut p = x;
    for m in 1..n {
        let mf = f64::from(m);
        let p_next = ((2.0 * mf + 1.0) * x * p - mf * p_prev) / (mf + 1.0);
        p_prev = p;
        p = p_next;
    }
    p
}
