//! Independent numerical eigensolvers for the scaled radial problem: a
//! symmetric tridiagonal discretization solved by Sturm bisection and
//! inverse iteration, plus a Numerov shooting integrator used as a second,
//! structurally unrelated oracle.
//!
//! The discretization is a cell-centered finite volume of the phi-equation,
//! symmetrized by sqrt(rho). The naive central-difference scheme for the
//! transformed u-equation is inconsistent in the m = 0 sector (the
//! -1/(4 rho^2) effective term is exactly critical and u ~ sqrt(rho) defeats
//! the three-point stencil near the origin, leaving an O(1) eigenvalue
//! error); the finite-volume form imposes the correct zero-flux origin
//! behavior for every m and restores O(h^2) convergence.

use crate::error::{Error, Result};
use crate::series;

/// Uniform cell-centered grid on (0, r_max): rho_j = (j - 1/2) h with
/// h = r_max / n_points, j = 1..n_points. Excludes rho = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub r_max: f64,
    pub n_points: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            r_max: 12.0,
            n_points: 4000,
        }
    }
}

impl GridSpec {
    pub fn new(r_max: f64, n_points: usize) -> Result<Self> {
        if !(r_max > 0.0) {
            return Err(Error::Domain(format!(
                "r_max must be positive, got {r_max}"
            )));
        }
        if n_points < 100 {
            return Err(Error::Domain(format!(
                "n_points must be at least 100, got {n_points}"
            )));
        }
        Ok(Self { r_max, n_points })
    }

    pub fn h(&self) -> f64 {
        self.r_max / self.n_points as f64
    }

    pub fn rho(&self, j: usize) -> f64 {
        (j as f64 + 0.5) * self.h()
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n_points).map(|j| self.rho(j)).collect()
    }

    fn doubled(&self) -> Self {
        Self {
            r_max: self.r_max,
            n_points: 2 * self.n_points,
        }
    }
}

/// Symmetric tridiagonal discretization of the scaled radial operator for
/// one (m, g) sector. Eigenvalues approximate alpha_bar; eigenvectors are
/// w_j proportional to sqrt(rho_j) Phi(rho_j).
#[derive(Debug, Clone)]
pub struct RadialOperator {
    pub m: u32,
    pub g: f64,
    pub spec: GridSpec,
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
}

/// Builds the operator: fluxes through cell faces at j h (zero through the
/// origin face), potential m^2/rho^2 + rho^2 - g/rho at cell centers.
pub fn discretize(m: u32, g: f64, spec: GridSpec) -> RadialOperator {
    let n = spec.n_points;
    let h = spec.h();
    let h2 = h * h;
    let m2 = (m as f64) * (m as f64);
    let mut diag = Vec::with_capacity(n);
    let mut offdiag = Vec::with_capacity(n - 1);
    for j in 0..n {
        let rho = spec.rho(j);
        let face_lo = j as f64 * h;
        let face_hi = (j + 1) as f64 * h;
        diag.push((face_lo + face_hi) / (h2 * rho) + m2 / (rho * rho) + rho * rho - g / rho);
    }
    for j in 0..n - 1 {
        let face = (j + 1) as f64 * h;
        offdiag.push(-face / (h2 * (spec.rho(j) * spec.rho(j + 1)).sqrt()));
    }
    RadialOperator {
        m,
        g,
        spec,
        diag,
        offdiag,
    }
}

impl RadialOperator {
    pub fn size(&self) -> usize {
        self.diag.len()
    }

    /// Number of eigenvalues strictly below x (Sturm count).
    fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut q = self.diag[0] - x;
        if q < 0.0 {
            count += 1;
        }
        for j in 1..self.size() {
            let e = self.offdiag[j - 1];
            if q == 0.0 {
                q = 1e-300;
            }
            q = self.diag[j] - x - e * e / q;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Matrix-vector product y = (A - shift) v.
    fn apply_shifted(&self, v: &[f64], shift: f64, y: &mut [f64]) {
        let n = self.size();
        for j in 0..n {
            let mut s = (self.diag[j] - shift) * v[j];
            if j > 0 {
                s += self.offdiag[j - 1] * v[j - 1];
            }
            if j + 1 < n {
                s += self.offdiag[j] * v[j + 1];
            }
            y[j] = s;
        }
    }
}

/// The k smallest eigenvalues, each bisected to 1e-12 absolute.
pub fn lowest_eigenvalues(op: &RadialOperator, k: usize) -> Result<Vec<f64>> {
    if k == 0 || k > op.size() / 4 {
        return Err(Error::Domain(format!(
            "k must be in 1..{}, got {k}",
            op.size() / 4
        )));
    }
    // Gershgorin bounds.
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for j in 0..op.size() {
        let mut r = 0.0;
        if j > 0 {
            r += op.offdiag[j - 1].abs();
        }
        if j + 1 < op.size() {
            r += op.offdiag[j].abs();
        }
        lo = lo.min(op.diag[j] - r);
        hi = hi.max(op.diag[j] + r);
    }
    let tol = 1e-12;
    let mut out = Vec::with_capacity(k);
    for i in 0..k {
        let mut a = if i == 0 { lo } else { out[i - 1] };
        let mut b = hi;
        // Invariant: count_below(a) <= i < count_below(b).
        while b - a > tol * (1.0 + a.abs().max(b.abs())) {
            let mid = 0.5 * (a + b);
            if op.count_below(mid) <= i {
                a = mid;
            } else {
                b = mid;
            }
        }
        out.push(0.5 * (a + b));
    }
    Ok(out)
}

/// Richardson extrapolation of a second-order scheme from grids h and h/2:
/// (4 E_{h/2} - E_h)/3, with error estimate |E_{h/2} - E_h|/3.
pub fn refine(
    coarse: &(RadialOperator, Vec<f64>),
    fine: &(RadialOperator, Vec<f64>),
) -> Result<Vec<(f64, f64)>> {
    let (op_c, eig_c) = coarse;
    let (op_f, eig_f) = fine;
    if op_c.m != op_f.m
        || op_c.g != op_f.g
        || op_c.spec.r_max != op_f.spec.r_max
        || op_f.spec.n_points != 2 * op_c.spec.n_points
        || eig_c.len() != eig_f.len()
    {
        return Err(Error::Domain(
            "refine requires the same (m, g, r_max) and doubled n_points".into(),
        ));
    }
    Ok(eig_c
        .iter()
        .zip(eig_f)
        .map(|(eh, eh2)| ((4.0 * eh2 - eh) / 3.0, (eh2 - eh).abs() / 3.0))
        .collect())
}

/// Inverse iteration for the eigenvector at an eigenvalue estimate.
/// Returns the grid vector normalized in the grid inner product
/// (h * sum w_j^2 = 1), sign fixed so the first component above the noise
/// floor is positive.
pub fn eigenfunction(op: &RadialOperator, alpha_bar: f64) -> Result<Vec<f64>> {
    let n = op.size();
    let h = op.spec.h();
    // Deterministic pseudo-random start vector (splitmix-style).
    let mut state = 0x243f6a8885a308d3u64;
    let mut v: Vec<f64> = (0..n)
        .map(|_| {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        })
        .collect();
    normalize(&mut v, h);
    let mut resid = vec![0.0; n];
    let mut shift = alpha_bar;
    for iter in 0..50 {
        let w = solve_shifted(op, shift, &v)?;
        v = w;
        normalize(&mut v, h);
        op.apply_shifted(&v, alpha_bar, &mut resid);
        let r: f64 = (h * resid.iter().map(|x| x * x).sum::<f64>()).sqrt();
        if r < 1e-8 {
            fix_sign(&mut v);
            return Ok(v);
        }
        if iter == 2 {
            // One Rayleigh-quotient sharpening pass.
            let mut av = vec![0.0; n];
            op.apply_shifted(&v, 0.0, &mut av);
            let rq: f64 = h * v.iter().zip(&av).map(|(a, b)| a * b).sum::<f64>();
            shift = rq;
        }
    }
    Err(Error::Convergence(format!(
        "inverse iteration did not reach residual 1e-8 at alpha_bar={alpha_bar}"
    )))
}

fn normalize(v: &mut [f64], h: f64) {
    let norm = (h * v.iter().map(|x| x * x).sum::<f64>()).sqrt();
    for x in v.iter_mut() {
        *x /= norm;
    }
}

fn fix_sign(v: &mut [f64]) {
    let scale = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if let Some(first) = v.iter().find(|x| x.abs() > 1e-8 * scale) {
        if *first < 0.0 {
            for x in v.iter_mut() {
                *x = -*x;
            }
        }
    }
}

/// Solves (A - shift) x = b for a tridiagonal A by LU with partial
/// pivoting (the shifted matrix is nearly singular by design).
fn solve_shifted(op: &RadialOperator, shift: f64, b: &[f64]) -> Result<Vec<f64>> {
    let n = op.size();
    // Band storage: lower, main, upper1, upper2.
    let mut d: Vec<f64> = op.diag.iter().map(|x| x - shift).collect();
    let mut e: Vec<f64> = op.offdiag.clone(); // superdiagonal
    let mut f = vec![0.0; n]; // second superdiagonal, filled by pivoting
    let mut sub: Vec<f64> = op.offdiag.clone(); // subdiagonal
    let mut x = b.to_vec();
    for k in 0..n - 1 {
        if sub[k].abs() > d[k].abs() {
            // Swap rows k and k+1.
            x.swap(k, k + 1);
            std::mem::swap(&mut d[k], &mut sub[k]);
            let tmp = e[k];
            e[k] = d[k + 1];
            d[k + 1] = tmp;
            if k + 1 < n - 1 {
                f[k] = e[k + 1];
                e[k + 1] = 0.0;
            }
        }
        let piv = if d[k] == 0.0 { 1e-300 } else { d[k] };
        let l = sub[k] / piv;
        d[k + 1] -= l * e[k];
        if k + 1 < n - 1 {
            e[k + 1] -= l * f[k];
        }
        x[k + 1] -= l * x[k];
        d[k] = piv;
    }
    // Back substitution.
    let mut out = vec![0.0; n];
    for k in (0..n).rev() {
        let mut s = x[k];
        if k + 1 < n {
            s -= e[k] * out[k + 1];
        }
        if k + 2 < n {
            s -= f[k] * out[k + 2];
        }
        let piv = if d[k] == 0.0 { 1e-300 } else { d[k] };
        out[k] = s / piv;
    }
    Ok(out)
}

/// Strict sign changes among components above the noise floor 1e-8 * max.
pub fn count_grid_nodes(u: &[f64]) -> usize {
    let scale = u.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let floor = 1e-8 * scale;
    let mut count = 0;
    let mut last = 0.0f64;
    for &x in u {
        if x.abs() <= floor {
            continue;
        }
        if last != 0.0 && x.signum() != last.signum() {
            count += 1;
        }
        last = x;
    }
    count
}

/// Full spectral snapshot of one (m, g) sector.
#[derive(Debug, Clone)]
pub struct SpectrumResult {
    pub m: u32,
    pub g: f64,
    /// Richardson-extrapolated eigenvalues, ascending.
    pub eigenvalues: Vec<f64>,
    /// Per-eigenvalue extrapolation error estimates.
    pub errors: Vec<f64>,
    pub node_counts: Vec<usize>,
    /// Grid eigenfunctions w = sqrt(rho) Phi on the coarse grid, normalized.
    pub eigenfunctions: Vec<Vec<f64>>,
    pub spec: GridSpec,
    /// Raw (unextrapolated) coarse-grid eigenvalues; inverse iteration
    /// targets these, not the extrapolated values.
    pub raw_eigenvalues: Vec<f64>,
}

/// Computes the k lowest states with Richardson refinement and node counts.
pub fn spectrum(m: u32, g: f64, spec: GridSpec, k: usize) -> Result<SpectrumResult> {
    let op = discretize(m, g, spec);
    let op2 = discretize(m, g, spec.doubled());
    let eig = lowest_eigenvalues(&op, k)?;
    let eig2 = lowest_eigenvalues(&op2, k)?;
    let refined = refine(&(op.clone(), eig.clone()), &(op2, eig2))?;
    let mut eigenfunctions = Vec::with_capacity(k);
    let mut node_counts = Vec::with_capacity(k);
    for (i, &raw) in eig.iter().enumerate() {
        // Skip overlap-unsafe near-degeneracies (flagged via error estimate
        // comparison); inverse iteration still runs on isolated states.
        let near_degenerate = (i > 0 && (eig[i - 1] - raw).abs() < 1e-9)
            || (i + 1 < eig.len() && (eig[i + 1] - raw).abs() < 1e-9);
        if near_degenerate {
            eigenfunctions.push(Vec::new());
            node_counts.push(usize::MAX);
            continue;
        }
        let u = eigenfunction(&op, raw)?;
        node_counts.push(count_grid_nodes(&u));
        eigenfunctions.push(u);
    }
    Ok(SpectrumResult {
        m,
        g,
        eigenvalues: refined.iter().map(|(e, _)| *e).collect(),
        errors: refined.iter().map(|(_, d)| *d).collect(),
        node_counts,
        eigenfunctions,
        spec,
        raw_eigenvalues: eig,
    })
}

/// Overlap |<u, v>| of two grid vectors in the grid inner product.
pub fn grid_overlap(u: &[f64], v: &[f64], h: f64) -> f64 {
    (h * u.iter().zip(v).map(|(a, b)| a * b).sum::<f64>()).abs()
}

// ---------------------------------------------------------------------------
// Numerov shooting oracle
// ---------------------------------------------------------------------------

const NUMEROV_R_START: f64 = 0.5;
const NUMEROV_R_MATCH: f64 = 1.5;
const NUMEROV_R_MAX: f64 = 12.0;
const NUMEROV_H_TARGET: f64 = 0.004;

fn w_eff(m: u32, g: f64, alpha: f64, r: f64) -> f64 {
    let m2 = (m as f64) * (m as f64);
    r * r + (m2 - 0.25) / (r * r) - g / r - alpha
}

fn w_eff_prime(m: u32, g: f64, r: f64) -> f64 {
    let m2 = (m as f64) * (m as f64);
    2.0 * r - 2.0 * (m2 - 0.25) / (r * r * r) + g / (r * r)
}

/// Numerov march of u'' = W u with step h over `n` steps from (u0, u1).
/// Returns the last three values (u_{n-1}, u_n, u_{n+1} one past the end)
/// needed for the matching derivative.
fn numerov_march(
    m: u32,
    g: f64,
    alpha: f64,
    x0: f64,
    h: f64,
    n: usize,
    u0: f64,
    u1: f64,
) -> (f64, f64, f64) {
    let fcoef = |r: f64| 1.0 - h * h * w_eff(m, g, alpha, r) / 12.0;
    let mut um = u0;
    let mut uc = u1;
    for i in 1..=n {
        let xm = x0 + (i as f64 - 1.0) * h;
        let xc = x0 + i as f64 * h;
        let xp = x0 + (i as f64 + 1.0) * h;
        let mut up = ((12.0 - 10.0 * fcoef(xc)) * uc - fcoef(xm) * um) / fcoef(xp);
        if up.abs() > 1e250 {
            uc /= 1e250;
            up /= 1e250;
        }
        um = uc;
        uc = up;
    }
    // (u at x0+(n-1)h, u at x0+nh, u at x0+(n+1)h-equivalent): the caller
    // stops the loop so that uc sits at the match point; um is one step
    // before and the value one step past is recomputed by the caller.
    (um, uc, 0.0)
}

/// Matching defect: the normalized Wronskian of the outward and inward
/// solutions at the match radius. Zero exactly at eigenvalues.
fn matching_defect(m: u32, g: f64, alpha: f64) -> f64 {
    // Outward grid: ends exactly at r_match + one extra step for derivative.
    let n_l = ((NUMEROV_R_MATCH - NUMEROV_R_START) / NUMEROV_H_TARGET).round() as usize;
    let h_l = (NUMEROV_R_MATCH - NUMEROV_R_START) / n_l as f64;
    // Series-start initial values: the Frobenius series of the ansatz is
    // entire, so truncation at order 80 is exact to machine precision here.
    let phi = |r: f64| {
        let s = series::coefficients(m, g, alpha, 80).expect("series order >= 2");
        let mut acc = 0.0;
        for c in s.coeffs.iter().rev() {
            acc = acc * r + c;
        }
        r.powi(m as i32) * (-r * r / 2.0).exp() * acc
    };
    let u_of = |r: f64| r.sqrt() * phi(r);
    let (um_l, uc_l, _) = {
        let u0 = u_of(NUMEROV_R_START);
        let u1 = u_of(NUMEROV_R_START + h_l);
        numerov_march(m, g, alpha, NUMEROV_R_START, h_l, n_l - 1, u0, u1)
    };
    // One extra forward step for the derivative stencil.
    let fc = |r: f64, h: f64| 1.0 - h * h * w_eff(m, g, alpha, r) / 12.0;
    let up_l = ((12.0 - 10.0 * fc(NUMEROV_R_MATCH, h_l)) * uc_l
        - fc(NUMEROV_R_MATCH - h_l, h_l) * um_l)
        / fc(NUMEROV_R_MATCH + h_l, h_l);

    // Inward grid.
    let n_r = ((NUMEROV_R_MAX - NUMEROV_R_MATCH) / NUMEROV_H_TARGET).round() as usize;
    let h_r = (NUMEROV_R_MAX - NUMEROV_R_MATCH) / n_r as f64;
    let (um_r, uc_r, _) = numerov_march(m, g, alpha, NUMEROV_R_MAX, -h_r, n_r - 1, 0.0, 1e-30);
    // um_r is u at r_match + h_r, uc_r is u at r_match; one extra step inward.
    let up_r = ((12.0 - 10.0 * fc(NUMEROV_R_MATCH, h_r)) * uc_r
        - fc(NUMEROV_R_MATCH + h_r, h_r) * um_r)
        / fc(NUMEROV_R_MATCH - h_r, h_r);

    // Numerov-consistent O(h^4) first derivative at the match point.
    let deriv = |upper: f64, center: f64, lower: f64, h: f64| {
        ((upper - lower) / (2.0 * h) - h * h / 6.0 * w_eff_prime(m, g, NUMEROV_R_MATCH) * center)
            / (1.0 + h * h * w_eff(m, g, alpha, NUMEROV_R_MATCH) / 6.0)
    };
    let d_l = deriv(up_l, uc_l, um_l, h_l);
    let d_r = deriv(um_r, uc_r, up_r, h_r);
    let s_l = uc_l.hypot(d_l);
    let s_r = uc_r.hypot(d_r);
    (d_l * uc_r - d_r * uc_l) / (s_l * s_r)
}

/// Second oracle: Numerov integration from both ends with log-derivative
/// matching, bisected on the given bracket. The bracket must contain
/// exactly one sign change of the defect.
pub fn numerov_crosscheck(m: u32, g: f64, bracket: (f64, f64)) -> Result<f64> {
    let (mut lo, mut hi) = bracket;
    if !(lo < hi) {
        return Err(Error::Bracket(format!("invalid bracket ({lo}, {hi})")));
    }
    // Scan for sign-change count: zero or multiple changes invalidate the bracket.
    let scan = 16;
    let mut values = Vec::with_capacity(scan + 1);
    for i in 0..=scan {
        let a = lo + (hi - lo) * i as f64 / scan as f64;
        values.push(matching_defect(m, g, a));
    }
    let changes = values
        .windows(2)
        .filter(|w| w[0].signum() != w[1].signum())
        .count();
    if changes != 1 {
        return Err(Error::Bracket(format!(
            "bracket ({lo}, {hi}) contains {changes} defect sign changes, need exactly 1"
        )));
    }
    let mut flo = values[0];
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        let fm = matching_defect(m, g, mid);
        if flo.signum() != fm.signum() {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
        if hi - lo < 1e-10 {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQRT2: f64 = std::f64::consts::SQRT_2;

    fn small_spec() -> GridSpec {
        GridSpec::new(12.0, 1500).unwrap()
    }

    #[test]
    fn grid_excludes_origin() {
        let spec = GridSpec::default();
        assert!(spec.rho(0) > 0.0);
        assert!(GridSpec::new(12.0, 50).is_err());
        assert!(GridSpec::new(-1.0, 4000).is_err());
    }

    #[test]
    fn sturm_bisection_on_diagonal_matrix() {
        // diag(1..n) with zero off-diagonals: eigenvalues are 1..k.
        let spec = small_spec();
        let n = 200;
        let op = RadialOperator {
            m: 0,
            g: 0.0,
            spec,
            diag: (1..=n).map(|i| i as f64).collect(),
            offdiag: vec![0.0; n - 1],
        };
        let eig = lowest_eigenvalues(&op, 5).unwrap();
        for (i, e) in eig.iter().enumerate() {
            assert!((e - (i as f64 + 1.0)).abs() < 1e-11);
        }
    }

    #[test]
    fn oscillator_spectrum_m0() {
        let op = discretize(0, 0.0, small_spec());
        let eig = lowest_eigenvalues(&op, 3).unwrap();
        for (k, e) in eig.iter().enumerate() {
            let exact = 2.0 + 4.0 * k as f64;
            // O(h^2) discretization error grows with k; Richardson
            // refinement (tested separately) removes it.
            assert!((e - exact).abs() < 1e-3, "k={k}: {e} vs {exact}");
        }
    }

    #[test]
    fn oscillator_spectrum_m1_lowest() {
        let op = discretize(1, 0.0, small_spec());
        let eig = lowest_eigenvalues(&op, 1).unwrap();
        assert!((eig[0] - 4.0).abs() < 1e-4);
    }

    #[test]
    fn richardson_hits_oscillator_limit() {
        let spec = small_spec();
        let op = discretize(0, 0.0, spec);
        let op2 = discretize(0, 0.0, spec.doubled());
        let e1 = lowest_eigenvalues(&op, 2).unwrap();
        let e2 = lowest_eigenvalues(&op2, 2).unwrap();
        let refined = refine(&(op, e1), &(op2, e2)).unwrap();
        assert!((refined[0].0 - 2.0).abs() < 1e-6);
        assert!((refined[1].0 - 6.0).abs() < 1e-6);
    }

    #[test]
    fn refine_rejects_mismatched_problems() {
        let spec = small_spec();
        let op = discretize(0, 0.0, spec);
        let op_bad = discretize(1, 0.0, spec.doubled());
        let e = vec![2.0];
        assert!(refine(&(op, e.clone()), &(op_bad, e)).is_err());
    }

    #[test]
    fn constraint_point_contains_alpha_four() {
        let spec = small_spec();
        let op = discretize(0, SQRT2, spec);
        let op2 = discretize(0, SQRT2, spec.doubled());
        let e1 = lowest_eigenvalues(&op, 3).unwrap();
        let e2 = lowest_eigenvalues(&op2, 3).unwrap();
        let refined = refine(&(op, e1), &(op2, e2)).unwrap();
        assert!((refined[1].0 - 4.0).abs() < 1e-6, "got {}", refined[1].0);
        // And the ground state sits strictly below it.
        assert!(refined[0].0 < 4.0 - 0.5);
    }

    #[test]
    fn eigenfunction_matches_oscillator_ground() {
        let spec = small_spec();
        let op = discretize(0, 0.0, spec);
        let eig = lowest_eigenvalues(&op, 1).unwrap();
        let u = eigenfunction(&op, eig[0]).unwrap();
        let h = spec.h();
        // Exact u = sqrt(2) sqrt(rho) e^{-rho^2/2} under the grid norm.
        let mut max_rel = 0.0f64;
        for (j, &uj) in u.iter().enumerate() {
            let rho = spec.rho(j);
            if rho > 0.5 && rho < 4.0 {
                let exact = (2.0f64).sqrt() * rho.sqrt() * (-rho * rho / 2.0).exp();
                max_rel = max_rel.max((uj - exact).abs() / exact.abs());
            }
        }
        let _ = h;
        assert!(max_rel < 1e-4, "max relative deviation {max_rel}");
    }

    #[test]
    fn node_counting_oscillation_property() {
        let spec = small_spec();
        for (m, g) in [(0u32, 0.0), (0, 1.0), (1, SQRT2)] {
            let sp = spectrum(m, g, spec, 4).unwrap();
            for (k, &nodes) in sp.node_counts.iter().enumerate() {
                assert_eq!(nodes, k, "m={m}, g={g}, state {k}");
            }
        }
    }

    #[test]
    fn eigenfunctions_orthonormal() {
        let spec = small_spec();
        let sp = spectrum(0, 1.0, spec, 3).unwrap();
        let h = spec.h();
        for i in 0..3 {
            for j in 0..=i {
                let ip = h * sp.eigenfunctions[i]
                    .iter()
                    .zip(&sp.eigenfunctions[j])
                    .map(|(a, b)| a * b)
                    .sum::<f64>();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((ip.abs() - expect).abs() < 1e-8, "<{i}|{j}> = {ip}");
            }
        }
    }

    #[test]
    fn eigenvalues_decrease_with_coupling() {
        let spec = small_spec();
        let mut prev: Option<Vec<f64>> = None;
        for i in 0..5 {
            let g = 0.5 * i as f64;
            let op = discretize(0, g, spec);
            let eig = lowest_eigenvalues(&op, 3).unwrap();
            if let Some(p) = &prev {
                for (a, b) in eig.iter().zip(p) {
                    assert!(a < b, "eigenvalue failed to decrease at g={g}");
                }
            }
            prev = Some(eig);
        }
    }

    #[test]
    fn variational_direction_under_refinement() {
        // Raw eigenvalues decrease monotonically as n_points grows.
        let mut prev = f64::INFINITY;
        for n in [1000usize, 2000, 4000] {
            let op = discretize(0, 1.0, GridSpec::new(12.0, n).unwrap());
            let e = lowest_eigenvalues(&op, 1).unwrap()[0];
            assert!(e < prev, "n={n}: {e} !< {prev}");
            prev = e;
        }
    }

    #[test]
    fn numerov_oscillator() {
        let e = numerov_crosscheck(0, 0.0, (1.5, 2.5)).unwrap();
        assert!((e - 2.0).abs() < 1e-8, "got {e}");
    }

    #[test]
    fn numerov_constraint_point() {
        let e = numerov_crosscheck(0, SQRT2, (3.5, 4.5)).unwrap();
        assert!((e - 4.0).abs() < 1e-6, "got {e}");
    }

    #[test]
    fn numerov_agrees_with_matrix_oracle() {
        let spec = GridSpec::default();
        let sp = spectrum(0, 1.0, spec, 1).unwrap();
        let target = sp.eigenvalues[0];
        let e = numerov_crosscheck(0, 1.0, (target - 0.4, target + 0.4)).unwrap();
        assert!((e - target).abs() < 1e-6, "numerov {e} vs matrix {target}");
    }

    #[test]
    fn numerov_rejects_empty_bracket() {
        assert!(numerov_crosscheck(0, 0.0, (2.5, 3.5)).is_err());
        // A bracket with two eigenvalues (2 and 6 inside) also fails.
        assert!(numerov_crosscheck(0, 0.0, (1.0, 7.0)).is_err());
    }
}
