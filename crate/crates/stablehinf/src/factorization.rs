//! Plant factorization P = (m_n / m_d) N_o: assumption checks, finite
//! Blaschke products over located right-half-plane zeros, and evaluation
//! closures for the inner and outer factors.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::Poly;
use crate::quasipoly::QuasiPoly;
use crate::zerofinder::{default_box, locate_zeros, ZeroSet};

/// Minimum modulus required of R and T along the imaginary axis.
pub const AXIS_MIN_MODULUS: f64 = 1e-6;

/// Finite Blaschke product m(s) = gain * prod (s - z_i)/(s + conj(z_i))
/// with all zeros in the open right half plane, closed under conjugation.
#[derive(Debug, Clone)]
pub struct BlaschkeProduct {
    zeros: Vec<Complex64>,
    gain: f64,
    num: Poly,
    den: Poly,
}

impl BlaschkeProduct {
    pub fn new(zeros: Vec<Complex64>) -> Result<Self> {
        if let Some(z) = zeros.iter().find(|z| z.re <= 0.0) {
            return Err(Error::Factorization(format!(
                "Blaschke zero {} is not in the open right half plane",
                z
            )));
        }
        // conjugate closure: every complex zero needs its mirror
        for z in &zeros {
            if z.im.abs() > 1e-12 {
                let has_pair = zeros
                    .iter()
                    .any(|w| (w - z.conj()).norm() <= 1e-6 * (1.0 + z.norm()));
                if !has_pair {
                    return Err(Error::Factorization(format!(
                        "Blaschke zero set is not closed under conjugation near {}",
                        z
                    )));
                }
            }
        }
        let num = Poly::from_roots(&zeros).into_real();
        let den = Poly::from_roots(&zeros.iter().map(|z| -z.conj()).collect::<Vec<_>>())
            .into_real();
        Ok(BlaschkeProduct {
            zeros,
            gain: 1.0,
            num,
            den,
        })
    }

    /// Unit constant (empty product).
    pub fn one() -> Self {
        BlaschkeProduct {
            zeros: Vec::new(),
            gain: 1.0,
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn zeros(&self) -> &[Complex64] {
        &self.zeros
    }

    pub fn gain(&self) -> f64 {
        self.gain
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    /// Real-coefficient numerator polynomial q with roots at the zeros.
    pub fn num(&self) -> &Poly {
        &self.num
    }

    /// Denominator polynomial; equals (-1)^deg q(-s).
    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn eval(&self, s: Complex64) -> Complex64 {
        self.num.eval(s) / self.den.eval(s) * self.gain
    }
}

/// Which factor of the decomposition to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    InnerRational,
    InnerDelay,
    Outer,
}

/// The factorization P = (m_n/m_d) N_o with m_n = M_R,
/// m_d = M_Tbar * T / Tbar and N_o =. (R/M_R) (M_Tbar/Tbar).
#[derive(Debug, Clone)]
pub struct InnerOuter {
    pub m_n: BlaschkeProduct,
    pub m_tbar: BlaschkeProduct,
    pub r: QuasiPoly,
    pub t: QuasiPoly,
    pub t_bar: QuasiPoly,
    pub r_zeros: ZeroSet,
    pub tbar_zeros: ZeroSet,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AssumptionItem {
    pub pass: bool,
    pub detail: String,
}

/// Pass/fail report for the three plant assumptions.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AssumptionReport {
    /// Blocks stable, proper; delays strictly increasing from zero.
    pub a1: AssumptionItem,
    /// No imaginary-axis zeros of R or T.
    pub a2: AssumptionItem,
    /// R is an F-system and T is an I-system.
    pub a3: AssumptionItem,
}

impl AssumptionReport {
    pub fn all_pass(&self) -> bool {
        self.a1.pass && self.a2.pass && self.a3.pass
    }
}

/// Verify A.1 (block structure; enforced by the types, re-checked here),
/// A.2 (axis moduli of R and T above threshold on a refined log grid) and
/// A.3 (F-system / I-system membership).
pub fn check_assumptions(r: &QuasiPoly, t: &QuasiPoly) -> AssumptionReport {
    let a1 = check_a1(r).and(check_a1(t));
    let a1 = AssumptionItem {
        pass: a1.is_ok(),
        detail: match &a1 {
            Ok(()) => "blocks stable and proper; delays strictly increasing from 0".into(),
            Err(e) => e.to_string(),
        },
    };

    let rmin = axis_min_modulus(r);
    let tmin = axis_min_modulus(t);
    let a2 = AssumptionItem {
        pass: rmin.0 > AXIS_MIN_MODULUS && tmin.0 > AXIS_MIN_MODULUS,
        detail: format!(
            "min |R(jw)| = {:.3e} at w = {:.3e}; min |T(jw)| = {:.3e} at w = {:.3e}",
            rmin.0, rmin.1, tmin.0, tmin.1
        ),
    };

    let rf = r.is_f_system();
    let ti = t.is_i_system();
    let pass = matches!(rf, Ok(true)) && matches!(ti, Ok(true));
    let a3 = AssumptionItem {
        pass,
        detail: format!(
            "R F-system: {}; T I-system: {}",
            verdict(&rf),
            verdict(&ti)
        ),
    };

    AssumptionReport { a1, a2, a3 }
}

fn verdict(r: &Result<bool>) -> String {
    match r {
        Ok(b) => b.to_string(),
        Err(e) => format!("error ({})", e),
    }
}

fn check_a1(q: &QuasiPoly) -> Result<()> {
    use num_traits::Zero;
    if !q.terms()[0].delay.is_zero() {
        return Err(Error::Assumptions("first delay is not zero".into()));
    }
    for t in q.terms() {
        if !t.block.is_proper() {
            return Err(Error::Assumptions("improper block".into()));
        }
        if t.block.den().degree() >= 1 {
            let poles = crate::numerics::poly_roots(t.block.den())?;
            if poles.iter().any(|p| p.re >= -1e-12) {
                return Err(Error::Assumptions("unstable block pole".into()));
            }
        }
    }
    Ok(())
}

/// Minimum of |q(jw)| over a log grid with golden-section refinement around
/// each local minimum; returns (min, argmin frequency).
fn axis_min_modulus(q: &QuasiPoly) -> (f64, f64) {
    let n = 4096;
    let (lo, hi) = (1e-4_f64, 1e4_f64);
    let f = |w: f64| q.eval_raw(Complex64::new(0.0, w)).norm();
    let mut best = (f(0.0), 0.0);
    let mut vals = Vec::with_capacity(n);
    for k in 0..n {
        let w = lo * (hi / lo).powf(k as f64 / (n - 1) as f64);
        let v = f(w);
        if v < best.0 {
            best = (v, w);
        }
        vals.push((w, v));
    }
    // refine interior local minima
    for k in 1..n - 1 {
        if vals[k].1 < vals[k - 1].1 && vals[k].1 < vals[k + 1].1 {
            let (w, v) = golden_min(&f, vals[k - 1].0, vals[k + 1].0);
            if v < best.0 {
                best = (v, w);
            }
        }
    }
    best
}

pub(crate) fn golden_min(f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    const PHI: f64 = 0.618_033_988_749_894_8;
    let mut c = b - PHI * (b - a);
    let mut d = a + PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..64 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + PHI * (b - a);
            fd = f(d);
        }
        if (b - a).abs() <= 1e-12 * (1.0 + a.abs()) {
            break;
        }
    }
    let m = 0.5 * (a + b);
    (m, f(m))
}

/// Factor the plant: m_n from the located RHP zeros of R, M_Tbar from the
/// located RHP zeros of the conjugate of T.
pub fn factorize(r: &QuasiPoly, t: &QuasiPoly) -> Result<InnerOuter> {
    let report = check_assumptions(r, t);
    if !report.all_pass() {
        return Err(Error::Assumptions(format!(
            "A.1 {} | A.2 {} | A.3 {}",
            report.a1.detail, report.a2.detail, report.a3.detail
        )));
    }

    let r_zeros = locate_zeros(r, &default_box(r)?)?;
    for (i, a) in r_zeros.zeros.iter().enumerate() {
        for b in r_zeros.zeros.iter().skip(i + 1) {
            if (a - b).norm() < 1e-6 {
                return Err(Error::Factorization(format!(
                    "repeated RHP zero of R near {}; interpolation needs simple nodes",
                    a
                )));
            }
        }
    }

    let t_bar = t.conjugate()?;
    let tbar_zeros = locate_zeros(&t_bar, &default_box(&t_bar)?)?;

    let m_n = BlaschkeProduct::new(r_zeros.zeros.clone())?;
    let m_tbar = if tbar_zeros.zeros.is_empty() {
        BlaschkeProduct::one()
    } else {
        BlaschkeProduct::new(tbar_zeros.zeros.clone())?
    };

    Ok(InnerOuter {
        m_n,
        m_tbar,
        r: r.clone(),
        t: t.clone(),
        t_bar,
        r_zeros,
        tbar_zeros,
    })
}

impl InnerOuter {
    pub fn evaluate_factor(&self, which: Factor, s: Complex64) -> Result<Complex64> {
        match which {
            Factor::InnerRational => Ok(self.m_n.eval(s)),
            Factor::InnerDelay => {
                let tb = self.t_bar.evaluate(s)?;
                if tb.norm() < 1e-12 {
                    return Err(Error::PoleHit { at: s });
                }
                Ok(self.m_tbar.eval(s) * self.t.evaluate(s)? / tb)
            }
            Factor::Outer => {
                let mn = self.m_n.eval(s);
                let tb = self.t_bar.evaluate(s)?;
                if mn.norm() < 1e-12 || tb.norm() < 1e-12 {
                    return Err(Error::PoleHit { at: s });
                }
                Ok(self.r.evaluate(s)? / mn * self.m_tbar.eval(s) / tb)
            }
        }
    }

    /// P(s) = R(s)/T(s).
    pub fn plant_eval(&self, s: Complex64) -> Result<Complex64> {
        let t = self.t.evaluate(s)?;
        if t.norm() < 1e-12 {
            return Err(Error::PoleHit { at: s });
        }
        Ok(self.r.evaluate(s)? / t)
    }
}
