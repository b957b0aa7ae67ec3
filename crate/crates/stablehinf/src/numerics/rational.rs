use num_complex::Complex64;

use super::poly::Poly;
use crate::error::{Error, Result};

/// Ratio of real-coefficient polynomials in s.
#[derive(Debug, Clone)]
pub struct RationalFn {
    num: Poly,
    den: Poly,
}

impl RationalFn {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidInput(
                "rational function denominator is identically zero".into(),
            ));
        }
        if num.imag_dust() > 1e-9 || den.imag_dust() > 1e-9 {
            return Err(Error::InvalidInput(
                "rational function coefficients must be real".into(),
            ));
        }
        Ok(RationalFn {
            num: num.into_real(),
            den: den.into_real(),
        })
    }

    pub fn from_coeffs(num: &[f64], den: &[f64]) -> Result<Self> {
        Self::new(Poly::from_real(num), Poly::from_real(den))
    }

    pub fn constant(k: f64) -> Self {
        RationalFn {
            num: Poly::from_real(&[k]),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(1.0)
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    /// deg(den) - deg(num); nonnegative for proper functions.
    pub fn relative_degree(&self) -> i64 {
        if self.num.is_zero() {
            return i64::MAX;
        }
        self.den.degree() as i64 - self.num.degree() as i64
    }

    pub fn is_proper(&self) -> bool {
        self.num.is_zero() || self.relative_degree() >= 0
    }

    pub fn eval(&self, s: Complex64) -> Complex64 {
        self.num.eval(s) / self.den.eval(s)
    }

    /// Value and derivative via the quotient rule.
    pub fn eval_with_deriv(&self, s: Complex64) -> (Complex64, Complex64) {
        let n = self.num.eval(s);
        let d = self.den.eval(s);
        let np = self.num.derivative().eval(s);
        let dp = self.den.derivative().eval(s);
        (n / d, (np * d - n * dp) / (d * d))
    }

    pub fn mul(&self, other: &RationalFn) -> RationalFn {
        RationalFn {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
        }
    }

    pub fn add(&self, other: &RationalFn) -> RationalFn {
        RationalFn {
            num: self
                .num
                .mul(&other.den)
                .add(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
        }
    }

    pub fn sub(&self, other: &RationalFn) -> RationalFn {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, k: f64) -> RationalFn {
        RationalFn {
            num: self.num.scale(Complex64::new(k, 0.0)),
            den: self.den.clone(),
        }
    }

    pub fn inverse(&self) -> Result<RationalFn> {
        if self.num.is_zero() {
            return Err(Error::InvalidInput("cannot invert the zero function".into()));
        }
        Ok(RationalFn {
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }

    /// f(-s).
    pub fn compose_neg(&self) -> RationalFn {
        RationalFn {
            num: self.num.compose_neg(),
            den: self.den.compose_neg(),
        }
    }

    /// Cancel numerator/denominator root pairs that agree within `tol`.
    /// Keeps coefficients real. Used to tidy conjugate-system blocks.
    pub fn reduced(&self, tol: f64) -> RationalFn {
        let nr = match super::roots::poly_roots(&self.num) {
            Ok(r) => r,
            Err(_) => return self.clone(),
        };
        let dr = match super::roots::poly_roots(&self.den) {
            Ok(r) => r,
            Err(_) => return self.clone(),
        };
        let mut den_left = dr.clone();
        let mut num_left: Vec<Complex64> = Vec::new();
        'outer: for z in nr {
            for i in 0..den_left.len() {
                if (den_left[i] - z).norm() <= tol * (1.0 + z.norm()) {
                    den_left.remove(i);
                    continue 'outer;
                }
            }
            num_left.push(z);
        }
        if den_left.len() == dr.len() {
            return self.clone();
        }
        let k = self.num.leading() / self.den.leading();
        let num = Poly::from_roots(&num_left)
            .scale(self.num.leading())
            .into_real();
        let den = Poly::from_roots(&den_left)
            .scale(self.den.leading())
            .into_real();
        let _ = k;
        RationalFn { num, den }
    }
}
