//! Dense real symmetric eigenvalues: Householder reduction to tridiagonal
//! form followed by implicit-shift QL. Eigenvalues only.
//!
//! The matrix is held as a packed lower triangle, row `i` occupying
//! `i(i+1)/2 .. i(i+1)/2 + i + 1`, so every inner loop runs over contiguous
//! memory.

use crate::error::{Error, Result};

/// Off-diagonal entries below `DEFLATION * ‖T‖` are treated as zero.
pub const DEFLATION: f64 = 1e-11;
const SWEEPS_PER_EIGENVALUE: usize = 60;

#[derive(Debug, Clone, PartialEq)]
pub struct PackedSymmetric {
    n: usize,
    data: Vec<f64>,
}

#[inline]
fn row_start(i: usize) -> usize {
    i * (i + 1) / 2
}

impl PackedSymmetric {
    pub fn zeros(n: usize) -> Self {
        PackedSymmetric { n, data: vec![0.0; row_start(n)] }
    }

    /// Builds the matrix from its lower triangle `f(i, j)`, `j ≤ i`.
    pub fn from_lower(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            let s = row_start(i);
            for j in 0..=i {
                m.data[s + j] = f(i, j);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (i, j) = if j > i { (j, i) } else { (i, j) };
        self.data[row_start(i) + j]
    }

    pub fn row_lower(&self, i: usize) -> &[f64] {
        &self.data[row_start(i)..row_start(i) + i + 1]
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// `y = A x`.
    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.n];
        for i in 0..self.n {
            let row = self.row_lower(i);
            let (off, diag) = row.split_at(i);
            let mut acc = diag[0] * x[i];
            let xi = x[i];
            for ((a, xk), yk) in off.iter().zip(&x[..i]).zip(&mut y[..i]) {
                acc += a * xk;
                *yk += a * xi;
            }
            y[i] += acc;
        }
        y
    }

    /// Reduces to a symmetric tridiagonal matrix `(diag, sub)` with the same
    /// spectrum; `sub[i]` couples rows `i` and `i + 1`. Consumes the storage.
    ///
    /// The rank-two update of each step is deferred and fused with the
    /// matrix-vector product of the next, so the triangle is streamed once
    /// per step.
    pub fn tridiagonalize(mut self) -> (Vec<f64>, Vec<f64>) {
        let n = self.n;
        let mut d = vec![0.0; n];
        let mut e = vec![0.0; n.saturating_sub(1)];
        let mut u = vec![0.0; n];
        let mut p = vec![0.0; n];
        // Pending update A -= pu pqᵀ + pq puᵀ, empty when `pending` is false.
        let mut pu = vec![0.0; n];
        let mut pq = vec![0.0; n];
        let mut pending = false;
        for i in (1..n).rev() {
            let l = i - 1;
            if pending {
                self.update_row(i, &pu, &pq);
            }
            let s = row_start(i);
            u[..=l].copy_from_slice(&self.data[s..s + i]);
            let scale: f64 = u[..=l].iter().map(|x| x.abs()).sum();
            if l == 0 || scale == 0.0 {
                e[l] = self.data[s + l];
                if pending {
                    for j in 0..=l {
                        self.update_row(j, &pu, &pq);
                    }
                }
                pending = false;
                continue;
            }
            u[..=l].iter_mut().for_each(|x| *x /= scale);
            let sigma: f64 = u[..=l].iter().map(|x| x * x).sum();
            let f = u[l];
            let g = if f >= 0.0 { -sigma.sqrt() } else { sigma.sqrt() };
            e[l] = scale * g;
            let h = sigma - f * g;
            u[l] = f - g;
            p[..=l].iter_mut().for_each(|x| *x = 0.0);
            for j in 0..=l {
                if pending {
                    self.update_row(j, &pu, &pq);
                }
                let row = &self.data[row_start(j)..row_start(j) + j + 1];
                let (off, diag) = row.split_at(j);
                let uj = u[j];
                let mut acc = diag[0] * uj;
                for ((a, uk), pk) in off.iter().zip(&u[..j]).zip(&mut p[..j]) {
                    acc += a * uk;
                    *pk += a * uj;
                }
                p[j] += acc;
            }
            p[..=l].iter_mut().for_each(|x| *x /= h);
            let kk: f64 = u[..=l].iter().zip(&p[..=l]).map(|(a, b)| a * b).sum::<f64>() / (2.0 * h);
            for j in 0..=l {
                pu[j] = u[j];
                pq[j] = p[j] - kk * u[j];
            }
            pending = true;
        }
        if pending {
            self.update_row(0, &pu, &pq);
        }
        for (i, di) in d.iter_mut().enumerate() {
            *di = self.data[row_start(i) + i];
        }
        (d, e)
    }

    #[inline]
    fn update_row(&mut self, j: usize, u: &[f64], q: &[f64]) {
        let (uj, qj) = (u[j], q[j]);
        let rs = row_start(j);
        let row = &mut self.data[rs..rs + j + 1];
        for ((a, uk), qk) in row.iter_mut().zip(&u[..=j]).zip(&q[..=j]) {
            *a -= uj * qk + qj * uk;
        }
    }
}

/// Eigenvalues of a symmetric tridiagonal matrix by implicit QL, ascending.
pub fn tridiagonal_eigenvalues(mut d: Vec<f64>, sub: &[f64]) -> Result<Vec<f64>> {
    let n = d.len();
    if n == 0 {
        return Ok(d);
    }
    let mut e = vec![0.0; n];
    e[..n - 1].copy_from_slice(&sub[..n - 1]);
    let norm = (0..n)
        .map(|i| d[i].abs() + e[i].abs() + if i > 0 { e[i - 1].abs() } else { 0.0 })
        .fold(0.0, f64::max);
    let tol = DEFLATION * norm;
    let mut iterations = 0usize;
    let cap = SWEEPS_PER_EIGENVALUE * n;
    for l in 0..n {
        loop {
            let mut m = l;
            while m + 1 < n {
                if e[m].abs() <= tol || e[m].abs() <= f64::EPSILON * (d[m].abs() + d[m + 1].abs()) {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > cap {
                return Err(Error::NoConvergence { iterations });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut early = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    early = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if early {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// All eigenvalues of `a`, ascending.
pub fn symmetric_eigenvalues(a: PackedSymmetric) -> Result<Vec<f64>> {
    let (d, e) = a.tridiagonalize();
    tridiagonal_eigenvalues(d, &e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn diagonal_matrix() {
        let a = PackedSymmetric::from_lower(5, |i, j| if i == j { [3.0, -1.0, 2.0, 2.0, 0.5][i] } else { 0.0 });
        assert_eq!(symmetric_eigenvalues(a).unwrap(), vec![-1.0, 0.5, 2.0, 2.0, 3.0]);
    }

    #[test]
    fn discrete_laplacian_path() {
        // Path graph Laplacian-like tridiagonal: 2 - 2cos(kπ/(n+1)).
        let n = 40;
        let a = PackedSymmetric::from_lower(n, |i, j| if i == j { 2.0 } else if i == j + 1 { -1.0 } else { 0.0 });
        let ev = symmetric_eigenvalues(a).unwrap();
        for (k, x) in ev.iter().enumerate() {
            let exact = 2.0 - 2.0 * ((k + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
            assert!((x - exact).abs() < 1e-10, "{k}: {x} vs {exact}");
        }
    }

    #[test]
    fn random_matrix_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 60;
        let a = PackedSymmetric::from_lower(n, |_, _| rng.gen_range(-1.0..1.0));
        let tr = a.trace();
        let fro: f64 = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| a.get(i, j).powi(2)).sum();
        let ev = symmetric_eigenvalues(a.clone()).unwrap();
        assert!((ev.iter().sum::<f64>() - tr).abs() < 1e-9);
        assert!((ev.iter().map(|x| x * x).sum::<f64>() - fro).abs() < 1e-9);
        for w in ev.windows(2) {
            assert!(w[0] <= w[1]);
        }
    }

    #[test]
    fn rank_one_update_of_identity() {
        let n = 30;
        let v: Vec<f64> = (0..n).map(|i| (i as f64 + 1.0).sqrt()).collect();
        let vv: f64 = v.iter().map(|x| x * x).sum();
        let a = PackedSymmetric::from_lower(n, |i, j| v[i] * v[j] + if i == j { 1.0 } else { 0.0 });
        let ev = symmetric_eigenvalues(a).unwrap();
        assert!((ev[n - 1] - (1.0 + vv)).abs() < 1e-10);
        assert!(ev[..n - 1].iter().all(|x| (x - 1.0).abs() < 1e-10));
    }

    #[test]
    fn matvec_matches_entries() {
        let a = PackedSymmetric::from_lower(4, |i, j| (i * 10 + j) as f64);
        let y = a.matvec(&[1.0, 0.0, 0.0, 0.0]);
        assert_eq!(y, vec![0.0, 10.0, 20.0, 30.0]);
    }
}
