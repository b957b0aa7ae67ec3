use num_complex::Complex64;

/// Polynomial with complex coefficients in ascending degree order.
///
/// `coeffs[k]` multiplies `s^k`. The leading coefficient is nonzero unless
/// the polynomial is identically zero, in which case `coeffs == [0]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<Complex64>,
}

impl Poly {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Poly {
            coeffs: vec![Complex64::new(0.0, 0.0)],
        }
    }

    pub fn one() -> Self {
        Poly {
            coeffs: vec![Complex64::new(1.0, 0.0)],
        }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    /// Monic polynomial with the given roots, expanded by repeated
    /// multiplication.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut p = Poly::one();
        for &r in roots {
            p = p.mul(&Poly::new(vec![-r, Complex64::new(1.0, 0.0)]));
        }
        p
    }

    fn trim(&mut self) {
        while self.coeffs.len() > 1 && self.coeffs.last().map_or(false, |c| c.norm() == 0.0) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.coeffs.push(Complex64::new(0.0, 0.0));
        }
    }

    /// Drop trailing coefficients that are negligible relative to the
    /// largest one. Used to clean up results of floating-point expansion.
    pub fn trim_relative(&self, eps: f64) -> Self {
        let scale = self.max_abs_coeff();
        if scale == 0.0 {
            return Poly::zero();
        }
        let mut c = self.coeffs.clone();
        while c.len() > 1 && c.last().unwrap().norm() <= eps * scale {
            c.pop();
        }
        Poly { coeffs: c }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].norm() == 0.0
    }

    pub fn leading(&self) -> Complex64 {
        *self.coeffs.last().unwrap()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, s: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * s + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() == 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * (k as f64))
                .collect(),
        )
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut c = vec![Complex64::new(0.0, 0.0); n];
        for (k, &a) in self.coeffs.iter().enumerate() {
            c[k] += a;
        }
        for (k, &b) in other.coeffs.iter().enumerate() {
            c[k] += b;
        }
        Poly::new(c)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }

    pub fn scale(&self, k: Complex64) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| c * k).collect())
    }

    /// p(-s) as a polynomial.
    pub fn compose_neg(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| if k % 2 == 0 { c } else { -c })
                .collect(),
        )
    }

    /// Synthetic division by (s - root); returns (quotient, remainder).
    pub fn div_linear(&self, root: Complex64) -> (Poly, Complex64) {
        let n = self.coeffs.len();
        if n == 1 {
            return (Poly::zero(), self.coeffs[0]);
        }
        let mut q = vec![Complex64::new(0.0, 0.0); n - 1];
        let mut acc = self.coeffs[n - 1];
        for k in (0..n - 1).rev() {
            q[k] = acc;
            acc = self.coeffs[k] + acc * root;
        }
        (Poly::new(q), acc)
    }

    /// Polynomial long division; returns (quotient, remainder) with
    /// deg(remainder) < deg(divisor).
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.degree() < divisor.degree() {
            return (Poly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let dn = divisor.degree();
        let lead = divisor.leading();
        let qn = self.degree() - dn + 1;
        let mut quot = vec![Complex64::new(0.0, 0.0); qn];
        for k in (0..qn).rev() {
            let coef = rem[k + dn] / lead;
            quot[k] = coef;
            for j in 0..=dn {
                rem[k + j] -= coef * divisor.coeffs[j];
            }
        }
        rem.truncate(dn.max(1));
        (Poly::new(quot), Poly::new(rem))
    }

    /// Coefficients of p(x + center) in ascending powers of x.
    pub fn taylor_shift(&self, center: Complex64) -> Vec<Complex64> {
        let mut c = self.coeffs.clone();
        let n = c.len();
        // repeated synthetic division accumulates the Taylor coefficients
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in (0..c.len()).rev() {
                let t = c[k] + acc * center;
                acc = t;
                c[k] = t;
            }
            out.push(c[0]);
            c.remove(0);
            if c.is_empty() {
                break;
            }
        }
        out
    }

    /// Largest imaginary residue relative to the coefficient scale.
    pub fn imag_dust(&self) -> f64 {
        let scale = self.max_abs_coeff().max(1e-300);
        self.coeffs.iter().map(|c| c.im.abs()).fold(0.0, f64::max) / scale
    }

    /// Drop imaginary parts (used after expanding conjugate-paired roots).
    pub fn into_real(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .map(|c| Complex64::new(c.re, 0.0))
                .collect(),
        )
    }

    pub fn real_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.re).collect()
    }
}
