//! Exact rational polynomial arithmetic: univariate and bivariate
//! polynomials over BigRational, Sylvester resultants via fraction-free
//! elimination, Sturm-sequence real-root isolation, and floating-point
//! companion-matrix roots for the degrees where exactness stops paying.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

pub fn rat_i64(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back for extreme magnitudes: scale down numerator/denominator.
        let n = r.numer().to_f64();
        let d = r.denom().to_f64();
        match (n, d) {
            (Some(n), Some(d)) => n / d,
            _ => f64::NAN,
        }
    })
}

// ---------------------------------------------------------------------------
// Univariate polynomials over Q
// ---------------------------------------------------------------------------

/// Dense univariate polynomial with rational coefficients, `coeffs[i]` the
/// coefficient of x^i. The zero polynomial has an empty coefficient vector.
#[derive(Debug, Clone, PartialEq)]
pub struct UniPoly {
    pub coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + rat_to_f64(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rat::from(BigInt::from(i)))
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![Rat::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division over Q: returns (quotient, remainder).
    pub fn divmod(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.degree().unwrap();
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let qlen = rem.len() - dd;
        let mut quot = vec![Rat::zero(); qlen];
        for i in (0..qlen).rev() {
            let c = &rem[i + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                let t = &c * b;
                rem[i + j] -= t;
            }
            quot[i] = c;
        }
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.divmod(divisor);
        assert!(r.is_zero(), "exact_div with nonzero remainder");
        q
    }

    /// Monic gcd over Q.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b);
            a = b;
            b = r;
        }
        if let Some(l) = a.leading().cloned() {
            a = a.scale(&(Rat::one() / l));
        }
        a
    }

    /// Squarefree part: p / gcd(p, p').
    pub fn squarefree(&self) -> Self {
        if self.degree().unwrap_or(0) < 2 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            self.clone()
        } else {
            self.exact_div(&g)
        }
    }

    /// Cauchy bound: all real roots lie in [-B, B].
    pub fn root_bound(&self) -> Rat {
        let lead = self.leading().expect("root bound of zero polynomial").abs();
        let mut m = Rat::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let q = c.abs() / &lead;
            if q > m {
                m = q;
            }
        }
        m + Rat::one()
    }

    fn sturm_sequence(&self) -> Vec<UniPoly> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let (_, r) = seq[n - 2].divmod(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(r.neg());
        }
        seq
    }

    fn sign_changes_at(seq: &[UniPoly], x: &Rat) -> usize {
        let mut changes = 0;
        let mut last = 0i8;
        for p in seq {
            let v = p.eval(x);
            let s = if v.is_zero() {
                0
            } else if v.is_positive() {
                1
            } else {
                -1
            };
            if s != 0 {
                if last != 0 && s != last {
                    changes += 1;
                }
                last = s;
            }
        }
        changes
    }

    /// Number of distinct real roots in the half-open interval (lo, hi].
    pub fn count_roots_between(seq: &[UniPoly], lo: &Rat, hi: &Rat) -> usize {
        Self::sign_changes_at(seq, lo) - Self::sign_changes_at(seq, hi)
    }

    /// Isolating intervals (lo, hi] for every distinct real root.
    /// The polynomial should be squarefree.
    pub fn isolate_real_roots(&self) -> Vec<(Rat, Rat)> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let seq = self.sturm_sequence();
        let bound = self.root_bound();
        let mut stack = vec![(-bound.clone(), bound)];
        let mut out = Vec::new();
        while let Some((lo, hi)) = stack.pop() {
            let n = Self::count_roots_between(&seq, &lo, &hi);
            match n {
                0 => {}
                1 => out.push((lo, hi)),
                _ => {
                    let mid = (&lo + &hi) / rat_i64(2, 1);
                    stack.push((lo, mid.clone()));
                    stack.push((mid, hi));
                }
            }
        }
        out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        out
    }

    /// Shrinks an isolating interval (lo, hi] by bisection until
    /// `hi - lo < width`. The root stays inside throughout.
    pub fn refine_root(&self, lo: &Rat, hi: &Rat, width: &Rat) -> (Rat, Rat) {
        let seq = self.sturm_sequence();
        let mut lo = lo.clone();
        let mut hi = hi.clone();
        while &hi - &lo >= *width {
            let mid = (&lo + &hi) / rat_i64(2, 1);
            if Self::count_roots_between(&seq, &lo, &mid) == 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (lo, hi)
    }

    /// Real roots as f64, via companion-matrix eigenvalues; multiplicity
    /// collapsed by the squarefree step is NOT handled here (callers that
    /// care run on the squarefree part).
    pub fn real_roots_f64(&self, imag_tol: f64) -> Vec<f64> {
        real_roots_from_f64_coeffs(
            &self.coeffs.iter().map(rat_to_f64).collect::<Vec<_>>(),
            imag_tol,
        )
    }
}

/// Real roots of a dense f64 polynomial via companion matrix.
pub fn real_roots_from_f64_coeffs(coeffs: &[f64], imag_tol: f64) -> Vec<f64> {
    let mut c = coeffs.to_vec();
    while c.last().is_some_and(|x| *x == 0.0) {
        c.pop();
    }
    let n = match c.len().checked_sub(1) {
        Some(0) | None => return Vec::new(),
        Some(n) => n,
    };
    let lead = c[n];
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        m[(i, n - 1)] = -c[i] / lead;
        if i > 0 {
            m[(i, i - 1)] = 1.0;
        }
    }
    let eig = m.complex_eigenvalues();
    let mut roots: Vec<f64> = eig
        .iter()
        .filter(|z| z.im.abs() <= imag_tol * z.re.abs().max(1.0))
        .map(|z| z.re)
        .collect();
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    roots
}

/// The simplest rational (smallest denominator) in the closed interval
/// [lo, hi], by the Stern-Brocot / continued-fraction construction.
pub fn simplest_rational_in(lo: &Rat, hi: &Rat) -> Rat {
    assert!(lo <= hi);
    if lo.is_negative() && !hi.is_negative() {
        return Rat::zero();
    }
    if hi.is_negative() {
        return -simplest_rational_in(&-hi.clone(), &-lo.clone());
    }
    fn go(lo: &Rat, hi: &Rat) -> Rat {
        let fl = lo.floor();
        if &fl == lo {
            return lo.clone();
        }
        let next_int = &fl + Rat::one();
        if &next_int <= hi {
            return next_int;
        }
        // Both in the same unit interval (fl, fl+1): recurse on reciprocals.
        let frac_lo = lo - &fl;
        let frac_hi = hi - &fl;
        fl + Rat::one() / go(&(Rat::one() / frac_hi), &(Rat::one() / frac_lo))
    }
    go(lo, hi)
}

// ---------------------------------------------------------------------------
// Bivariate polynomials over Q
// ---------------------------------------------------------------------------

/// Dense bivariate polynomial: `coeffs[i][j]` multiplies x^i y^j.
/// Used with (x, y) = (alpha_bar, g) for the coefficient polynomials and
/// (x, y) = (alpha_bar, g^2) after parity reduction.
#[derive(Debug, Clone, PartialEq)]
pub struct BiPoly {
    pub coeffs: Vec<Vec<Rat>>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self {
                coeffs: vec![vec![c]],
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs
            .iter()
            .all(|row| row.iter().all(|c| c.is_zero()))
    }

    fn trim(mut self) -> Self {
        for row in &mut self.coeffs {
            while row.last().is_some_and(|c| c.is_zero()) {
                row.pop();
            }
        }
        while self.coeffs.last().is_some_and(|r| r.is_empty()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn get(&self, i: usize, j: usize) -> Rat {
        self.coeffs
            .get(i)
            .and_then(|r| r.get(j))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    fn set_add(&mut self, i: usize, j: usize, v: &Rat) {
        if self.coeffs.len() <= i {
            self.coeffs.resize(i + 1, Vec::new());
        }
        if self.coeffs[i].len() <= j {
            self.coeffs[i].resize(j + 1, Rat::zero());
        }
        self.coeffs[i][j] += v;
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, row) in other.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    out.set_add(i, j, c);
                }
            }
        }
        out.trim()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|row| row.iter().map(|a| a * c).collect())
                .collect(),
        }
        .trim()
    }

    /// Multiply by x (the alpha_bar variable).
    pub fn mul_x(&self) -> Self {
        let mut coeffs = vec![Vec::new()];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }.trim()
    }

    /// Multiply by y (the g variable).
    pub fn mul_y(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|row| {
                    if row.is_empty() {
                        Vec::new()
                    } else {
                        let mut r = vec![Rat::zero()];
                        r.extend(row.iter().cloned());
                        r
                    }
                })
                .collect(),
        }
        .trim()
    }

    /// Degree in x (alpha_bar), or None if zero.
    pub fn degree_x(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, r)| r.iter().any(|c| !c.is_zero()))
            .map(|(i, _)| i)
            .max()
    }

    /// Degree in y, or None if zero.
    pub fn degree_y(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .filter_map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(j, _)| j)
                    .max()
            })
            .max()
    }

    /// The set of y-exponents with nonzero coefficients.
    pub fn y_exponents(&self) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        for row in &self.coeffs {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() && !out.contains(&j) {
                    out.push(j);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        // Horner in x of Horner-in-y rows.
        let mut acc = 0.0;
        for row in self.coeffs.iter().rev() {
            let mut r = 0.0;
            for c in row.iter().rev() {
                r = r * y + rat_to_f64(c);
            }
            acc = acc * x + r;
        }
        acc
    }

    pub fn eval(&self, x: &Rat, y: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for row in self.coeffs.iter().rev() {
            let mut r = Rat::zero();
            for c in row.iter().rev() {
                r = r * y + c;
            }
            acc = acc * x + r;
        }
        acc
    }

    /// Partial derivative with respect to x.
    pub fn ddx(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, row)| {
                    let k = Rat::from(BigInt::from(i));
                    row.iter().map(|c| c * &k).collect()
                })
                .collect(),
        }
        .trim()
    }

    /// Partial derivative with respect to y.
    pub fn ddy(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .skip(1)
                        .map(|(j, c)| c * Rat::from(BigInt::from(j)))
                        .collect()
                })
                .collect(),
        }
        .trim()
    }

    /// Divide every y-exponent by 2 after stripping a common factor y^parity.
    /// Requires all nonzero terms to have y-exponent congruent to `parity`
    /// mod 2 (the structural parity of the recurrence coefficients).
    pub fn parity_reduce(&self, parity: usize) -> Self {
        let mut coeffs: Vec<Vec<Rat>> = Vec::new();
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                assert!(
                    j % 2 == parity % 2,
                    "parity violation at x^{i} y^{j} in parity_reduce"
                );
                let k = (j - parity % 2) / 2;
                if coeffs.len() <= i {
                    coeffs.resize(i + 1, Vec::new());
                }
                if coeffs[i].len() <= k {
                    coeffs[i].resize(k + 1, Rat::zero());
                }
                coeffs[i][k] = c.clone();
            }
        }
        Self { coeffs }.trim()
    }

    /// View as a univariate polynomial in y with UniPoly-in-x coefficients.
    pub fn as_poly_in_y(&self) -> Vec<UniPoly> {
        let dy = match self.degree_y() {
            Some(d) => d,
            None => return Vec::new(),
        };
        (0..=dy)
            .map(|j| UniPoly::from_coeffs((0..self.coeffs.len()).map(|i| self.get(i, j)).collect()))
            .collect()
    }

    /// Substitute an exact rational x, leaving a univariate polynomial in y.
    pub fn substitute_x(&self, x: &Rat) -> UniPoly {
        let dy = match self.degree_y() {
            Some(d) => d,
            None => return UniPoly::zero(),
        };
        UniPoly::from_coeffs(
            (0..=dy)
                .map(|j| {
                    let mut acc = Rat::zero();
                    for i in (0..self.coeffs.len()).rev() {
                        acc = acc * x + self.get(i, j);
                    }
                    acc
                })
                .collect(),
        )
    }
}

/// Resultant of p and q with respect to y: a univariate polynomial in x
/// whose roots are the x-coordinates of common solutions. Computed as the
/// determinant of the Sylvester matrix over Q[x] by fraction-free Bareiss
/// elimination.
pub fn resultant_y(p: &BiPoly, q: &BiPoly) -> UniPoly {
    let pc = p.as_poly_in_y();
    let qc = q.as_poly_in_y();
    let dp = pc
        .len()
        .checked_sub(1)
        .expect("resultant of zero polynomial");
    let dq = qc
        .len()
        .checked_sub(1)
        .expect("resultant of zero polynomial");
    let n = dp + dq;
    if n == 0 {
        return UniPoly::constant(Rat::one());
    }
    // Sylvester matrix: dq rows of p's coefficients, dp rows of q's.
    let mut m: Vec<Vec<UniPoly>> = vec![vec![UniPoly::zero(); n]; n];
    for r in 0..dq {
        for (k, c) in pc.iter().rev().enumerate() {
            m[r][r + k] = c.clone();
        }
    }
    for r in 0..dp {
        for (k, c) in qc.iter().rev().enumerate() {
            m[dq + r][r + k] = c.clone();
        }
    }
    bareiss_determinant(m)
}

/// Fraction-free Bareiss determinant of a matrix of polynomials over Q[x].
fn bareiss_determinant(mut m: Vec<Vec<UniPoly>>) -> UniPoly {
    let n = m.len();
    if n == 0 {
        return UniPoly::constant(Rat::one());
    }
    let mut sign = 1i32;
    let mut prev = UniPoly::constant(Rat::one());
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            // Pivot search.
            let swap = (k + 1..n).find(|&r| !m[r][k].is_zero());
            match swap {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return UniPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.exact_div(&prev);
            }
            m[i][k] = UniPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        det.neg()
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(c.iter().map(|&x| rat_i64(x, 1)).collect())
    }

    #[test]
    fn divmod_round_trip() {
        let a = poly(&[2, 0, -3, 1, 4]);
        let b = poly(&[1, 2, 1]);
        let (q, r) = a.divmod(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < b.degree().unwrap());
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (x-1)(x+2) and (x-1)(x-3) share (x-1).
        let a = poly(&[-2, 1, 1]);
        let b = poly(&[3, -4, 1]);
        let g = a.gcd(&b);
        assert_eq!(g, poly(&[-1, 1]));
    }

    #[test]
    fn sturm_isolates_simple_roots() {
        // (x-1)(x-2)(x+3) = x^3 - 7x + 6
        let p = poly(&[6, -7, 0, 1]);
        let roots = p.isolate_real_roots();
        assert_eq!(roots.len(), 3);
        let expected = [-3.0, 1.0, 2.0];
        for (iv, e) in roots.iter().zip(expected) {
            let (lo, hi) = p.refine_root(&iv.0, &iv.1, &rat_i64(1, 1_000_000));
            let mid = rat_to_f64(&((&lo + &hi) / rat_i64(2, 1)));
            assert!((mid - e).abs() < 1e-5);
        }
    }

    #[test]
    fn simplest_rational_finds_exact_root() {
        let lo = rat_i64(199, 100);
        let hi = rat_i64(201, 100);
        assert_eq!(simplest_rational_in(&lo, &hi), rat_i64(2, 1));
        let lo = rat_i64(-7, 3) - rat_i64(1, 1_000_000);
        let hi = rat_i64(-7, 3) + rat_i64(1, 1_000_000);
        assert_eq!(simplest_rational_in(&lo, &hi), rat_i64(-7, 3));
    }

    #[test]
    fn companion_roots_quartic() {
        let p = poly(&[4, 0, -5, 0, 1]); // (x^2-1)(x^2-4)
        let roots = p.real_roots_f64(1e-9);
        assert_eq!(roots.len(), 4);
        for (r, e) in roots.iter().zip([-2.0, -1.0, 1.0, 2.0]) {
            assert!((r - e).abs() < 1e-9);
        }
    }

    #[test]
    fn resultant_of_known_system() {
        // p = x + y - 3, q = x - y + 1: common solution (1, 2).
        // res_y(p, q) should vanish exactly at x = 1.
        let mut p = BiPoly::zero();
        p.set_add(1, 0, &rat_i64(1, 1));
        p.set_add(0, 1, &rat_i64(1, 1));
        p.set_add(0, 0, &rat_i64(-3, 1));
        let mut q = BiPoly::zero();
        q.set_add(1, 0, &rat_i64(1, 1));
        q.set_add(0, 1, &rat_i64(-1, 1));
        q.set_add(0, 0, &rat_i64(1, 1));
        let r = resultant_y(&p, &q);
        assert!(r.eval(&rat_i64(1, 1)).is_zero());
        assert!(!r.eval(&rat_i64(2, 1)).is_zero());
    }

    #[test]
    fn resultant_matches_sylvester_classic() {
        // res_y(y^2 - x, y - x) = x^2 - x, roots x = 0, 1.
        let mut p = BiPoly::zero();
        p.set_add(0, 2, &rat_i64(1, 1));
        p.set_add(1, 0, &rat_i64(-1, 1));
        let mut q = BiPoly::zero();
        q.set_add(0, 1, &rat_i64(1, 1));
        q.set_add(1, 0, &rat_i64(-1, 1));
        let r = resultant_y(&p, &q);
        assert!(r.eval(&rat_i64(0, 1)).is_zero());
        assert!(r.eval(&rat_i64(1, 1)).is_zero());
        assert_eq!(r.degree(), Some(2));
    }

    #[test]
    fn bivariate_eval_and_derivatives() {
        // f = 2 x^2 y + 3 y^2 - 1
        let mut f = BiPoly::zero();
        f.set_add(2, 1, &rat_i64(2, 1));
        f.set_add(0, 2, &rat_i64(3, 1));
        f.set_add(0, 0, &rat_i64(-1, 1));
        assert_eq!(f.eval(&rat_i64(2, 1), &rat_i64(3, 1)), rat_i64(50, 1));
        assert!((f.eval_f64(2.0, 3.0) - 50.0).abs() < 1e-12);
        assert_eq!(f.ddx().eval(&rat_i64(2, 1), &rat_i64(3, 1)), rat_i64(24, 1));
        assert_eq!(f.ddy().eval(&rat_i64(2, 1), &rat_i64(3, 1)), rat_i64(26, 1));
    }
}
