use num_complex::Complex64;

use super::poly::Poly;
use super::roots::{cluster_roots, poly_roots};
use crate::error::{Error, Result};

/// Poles closer than this (relative) are merged into one higher-order pole.
pub const POLE_MERGE_TOL: f64 = 1e-8;

/// One pole of the expansion. `coeffs[j]` multiplies 1/(s - pole)^(j+1),
/// so `coeffs.len()` is the pole order.
#[derive(Debug, Clone)]
pub struct PoleTerm {
    pub pole: Complex64,
    pub coeffs: Vec<Complex64>,
}

impl PoleTerm {
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }
}

#[derive(Debug, Clone)]
pub struct PartialFractions {
    pub poly_part: Poly,
    pub poles: Vec<PoleTerm>,
}

impl PartialFractions {
    pub fn eval(&self, s: Complex64) -> Complex64 {
        let mut acc = self.poly_part.eval(s);
        for t in &self.poles {
            let d = s - t.pole;
            let mut pw = d;
            for &c in &t.coeffs {
                acc += c / pw;
                pw *= d;
            }
        }
        acc
    }
}

/// Decompose num/den into a polynomial part plus pole terms.
///
/// Poles within POLE_MERGE_TOL are merged and reported with order > 1;
/// the higher-order coefficients come from a Taylor expansion of the
/// deflated quotient around the pole.
pub fn partial_fractions(num: &Poly, den: &Poly) -> Result<PartialFractions> {
    if den.is_zero() {
        return Err(Error::InvalidInput(
            "partial fractions require a nonzero denominator".into(),
        ));
    }
    if den.degree() == 0 {
        return Ok(PartialFractions {
            poly_part: num.scale(Complex64::new(1.0, 0.0) / den.leading()),
            poles: Vec::new(),
        });
    }

    let (poly_part, rem) = num.div_rem(den);
    let all_roots = poly_roots(den)?;
    let clusters = cluster_roots(&all_roots, POLE_MERGE_TOL);

    let lead = den.leading();
    let mut poles = Vec::with_capacity(clusters.len());
    for (idx, &(p, m)) in clusters.iter().enumerate() {
        // deflated denominator: den / (s - p)^m, built from the other clusters
        let mut defl = Poly::constant(lead);
        for (j, &(pj, mj)) in clusters.iter().enumerate() {
            if j != idx {
                for _ in 0..mj {
                    defl = defl.mul(&Poly::new(vec![-pj, Complex64::new(1.0, 0.0)]));
                }
            }
        }
        // Taylor coefficients of rem/defl around p to order m-1:
        // the coefficient on 1/(s-p)^(m-j) is the j-th series coefficient.
        let a = rem.taylor_shift(p);
        let b = defl.taylor_shift(p);
        let series = series_divide(&a, &b, m);
        let mut coeffs = vec![Complex64::new(0.0, 0.0); m];
        for (j, &g) in series.iter().enumerate() {
            coeffs[m - 1 - j] = g;
        }
        poles.push(PoleTerm { pole: p, coeffs });
    }

    Ok(PartialFractions { poly_part, poles })
}

/// First `n` coefficients of the power series a(x)/b(x); requires b[0] != 0.
fn series_divide(a: &[Complex64], b: &[Complex64], n: usize) -> Vec<Complex64> {
    let b0 = b[0];
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for k in 0..n {
        let mut acc = if k < a.len() {
            a[k]
        } else {
            Complex64::new(0.0, 0.0)
        };
        for j in 0..k {
            let bk = if k - j < b.len() {
                b[k - j]
            } else {
                Complex64::new(0.0, 0.0)
            };
            acc -= out[j] * bk;
        }
        out[k] = acc / b0;
    }
    out
}
