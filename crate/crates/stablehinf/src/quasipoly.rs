//! Delay systems of the form R(s) = sum_i R_i(s) e^{-h_i s} with proper,
//! stable rational blocks and rational delays: classification into
//! retarded/neutral/advanced type, conjugate construction, and the
//! finitely-many-unstable-zeros tests (F-systems and I-systems).

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numerics::{cluster_roots, poly_roots, Poly, RationalFn};

pub type Delay = Ratio<i64>;

/// Margin around |r| = 1 inside which a root of the phi polynomial makes
/// the finiteness test inconclusive.
pub const PHI_BOUNDARY_TOL: f64 = 1e-9;

/// One rational block together with its delay.
#[derive(Debug, Clone)]
pub struct DelayTerm {
    pub block: RationalFn,
    pub delay: Delay,
}

impl DelayTerm {
    /// Validated constructor for plant use: block must be proper with all
    /// poles strictly in the open left half plane.
    pub fn new(block: RationalFn, delay: Delay) -> Result<Self> {
        if delay < Delay::zero() {
            return Err(Error::InvalidInput("delays must be nonnegative".into()));
        }
        if !block.is_proper() {
            return Err(Error::InvalidInput(
                "delay blocks must be proper (deg num <= deg den)".into(),
            ));
        }
        if block.den().degree() >= 1 {
            let poles = poly_roots(block.den())?;
            if let Some(p) = poles.iter().find(|p| p.re >= -1e-12) {
                return Err(Error::InvalidInput(format!(
                    "delay block has a pole at {} with Re >= 0; blocks must be stable",
                    p
                )));
            }
        }
        Ok(DelayTerm { block, delay })
    }

    /// Relative degree of the block.
    pub fn relative_degree(&self) -> i64 {
        self.block.relative_degree()
    }
}

/// Finite sum of delayed rational blocks, sorted by strictly increasing
/// delay with the first delay equal to zero.
#[derive(Debug, Clone)]
pub struct QuasiPoly {
    terms: Vec<DelayTerm>,
}

/// Delay-system type per the relative-degree comparison of the zero-delay
/// block against the delayed blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DelayType {
    Retarded,
    Neutral,
    Advanced,
}

#[derive(Debug, Clone, Copy)]
pub struct DelayClass {
    pub tag: DelayType,
    pub d1: i64,
    pub dmax: i64,
}

/// The polynomial phi(r) = 1 + sum_i xi_i r^(h~_i - h~_1) on the integer
/// delay lattice, whose root magnitudes decide zero-chain finiteness for
/// neutral systems.
#[derive(Debug, Clone)]
pub struct PhiPolynomial {
    /// High-frequency limits R_i(jw)/R_1(jw) for the delayed terms.
    pub xi: Vec<f64>,
    /// Integer lattice exponents h~_i - h~_1 aligned with `xi`.
    pub lattice: Vec<i64>,
    /// Common denominator N with h_i = h~_i / N.
    pub scale: i64,
    pub poly: Poly,
}

impl QuasiPoly {
    /// Validated constructor: at least one term, strictly increasing delays,
    /// first delay zero.
    pub fn new(terms: Vec<DelayTerm>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidInput(
                "a quasi-polynomial needs at least one term".into(),
            ));
        }
        if !terms[0].delay.is_zero() {
            return Err(Error::InvalidInput("the first delay must be zero".into()));
        }
        for w in terms.windows(2) {
            if w[1].delay <= w[0].delay {
                return Err(Error::InvalidInput(
                    "delays must be strictly increasing".into(),
                ));
            }
        }
        Ok(QuasiPoly { terms })
    }

    /// Single rational block with no delay.
    pub fn from_rational(block: RationalFn) -> Result<Self> {
        Self::new(vec![DelayTerm::new(block, Delay::zero())?])
    }

    /// Lattice of polynomial blocks, e.g. a common-denominator numerator.
    /// Delay ordering is validated but properness is not required.
    pub fn from_poly_lattice(terms: Vec<(Poly, Delay)>) -> Result<Self> {
        let q = Self::from_terms_unchecked(
            terms
                .into_iter()
                .map(|(p, d)| (RationalFn::new(p, Poly::one()).expect("poly lattice"), d))
                .collect(),
        );
        if q.terms.is_empty() {
            return Err(Error::InvalidInput(
                "a quasi-polynomial needs at least one term".into(),
            ));
        }
        if !q.terms[0].delay.is_zero() {
            return Err(Error::InvalidInput("the first delay must be zero".into()));
        }
        Ok(q)
    }

    /// Internal constructor for derived lattices (cleared numerators,
    /// products with polynomials) that need not satisfy the plant
    /// properness/stability invariants.
    pub(crate) fn from_terms_unchecked(mut terms: Vec<(RationalFn, Delay)>) -> Self {
        terms.sort_by_key(|(_, d)| *d);
        QuasiPoly {
            terms: terms
                .into_iter()
                .map(|(block, delay)| DelayTerm { block, delay })
                .collect(),
        }
    }

    pub fn terms(&self) -> &[DelayTerm] {
        &self.terms
    }

    pub fn max_delay(&self) -> Delay {
        self.terms.last().unwrap().delay
    }

    pub fn max_delay_f64(&self) -> f64 {
        ratio_to_f64(self.max_delay())
    }

    /// Classification by comparing the relative degree of the zero-delay
    /// block against the maximum over the delayed blocks. A single-term
    /// system is classified neutral so that delay-free rational plants flow
    /// through the pipeline unchanged.
    pub fn classify(&self) -> DelayClass {
        let d1 = self.terms[0].relative_degree();
        let dmax = self
            .terms
            .iter()
            .skip(1)
            .map(|t| t.relative_degree())
            .max()
            .unwrap_or(d1);
        let tag = if d1 < dmax {
            DelayType::Retarded
        } else if d1 == dmax {
            DelayType::Neutral
        } else {
            DelayType::Advanced
        };
        DelayClass { tag, d1, dmax }
    }

    pub fn evaluate(&self, s: Complex64) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            let d = t.block.den().eval(s);
            let scale = t.block.den().max_abs_coeff() * (1.0 + s.norm()).powi(
                t.block.den().degree() as i32,
            );
            if d.norm() < 1e-12 * scale.max(1e-300) {
                return Err(Error::PoleHit { at: s });
            }
            acc += t.block.num().eval(s) / d * (-s * ratio_to_f64(t.delay)).exp();
        }
        Ok(acc)
    }

    /// Unchecked evaluation; may return non-finite values near block poles.
    pub fn eval_raw(&self, s: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|t| t.block.eval(s) * (-s * ratio_to_f64(t.delay)).exp())
            .sum()
    }

    /// Value and analytic derivative, term-wise:
    /// d/ds [G e^{-hs}] = (G' - h G) e^{-hs}.
    pub fn eval_with_deriv(&self, s: Complex64) -> (Complex64, Complex64) {
        let mut v = Complex64::new(0.0, 0.0);
        let mut dv = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            let h = ratio_to_f64(t.delay);
            let e = (-s * h).exp();
            let (g, gp) = t.block.eval_with_deriv(s);
            v += g * e;
            dv += (gp - g * h) * e;
        }
        (v, dv)
    }

    /// The conjugate system e^{-h_n s} R(-s) M_C(s), where M_C is the inner
    /// function whose poles are the poles of R. Block denominators stay in
    /// the left half plane by construction: the pooled pole set P gives
    ///   new block_i = n_i(-s) prod_{p in P \ P_i} (s+p) / (c_i (-1)^{|P_i|} prod_{p in P}(s-p))
    /// and delays reverse to h_n - h_i.
    pub fn conjugate(&self) -> Result<QuasiPoly> {
        // pooled poles with max multiplicity across blocks
        let mut block_poles: Vec<Vec<Complex64>> = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let poles = if t.block.den().degree() >= 1 {
                poly_roots(t.block.den())?
            } else {
                Vec::new()
            };
            if let Some(p) = poles.iter().find(|p| p.re.abs() <= 1e-12) {
                return Err(Error::InvalidInput(format!(
                    "block pole on the imaginary axis at {}; conjugate undefined",
                    p
                )));
            }
            block_poles.push(poles);
        }
        let pool = pool_max_multiplicity(&block_poles);

        let h_n = self.max_delay();
        let mut new_terms: Vec<(RationalFn, Delay)> = Vec::with_capacity(self.terms.len());
        let den = Poly::from_roots(&pool).into_real();

        for (i, t) in self.terms.iter().enumerate() {
            let c_i = t.block.den().leading();
            let k = block_poles[i].len();
            // P \ P_i by multiset removal
            let mut rest = pool.clone();
            for p in &block_poles[i] {
                if let Some(pos) = rest
                    .iter()
                    .position(|q| (q - p).norm() <= 1e-7 * (1.0 + p.norm()))
                {
                    rest.remove(pos);
                } else {
                    return Err(Error::Factorization(
                        "pole pooling lost a block pole; conjugate aborted".into(),
                    ));
                }
            }
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let num = t
                .block
                .num()
                .compose_neg()
                .mul(&Poly::from_roots(&rest.iter().map(|p| -p).collect::<Vec<_>>()))
                .scale(Complex64::new(sign / c_i.re, 0.0))
                .into_real();
            let block = RationalFn::new(num, den.clone())?.reduced(1e-9);
            new_terms.push((block, h_n - t.delay));
        }

        let q = QuasiPoly::from_terms_unchecked(new_terms);
        // conjugation of a proper stable system stays proper and stable
        QuasiPoly::new(q.terms.clone())
    }

    /// phi(r) = 1 + sum_{i>=2} xi_i r^(h~_i - h~_1) for a neutral system.
    pub fn phi_polynomial(&self) -> Result<PhiPolynomial> {
        let class = self.classify();
        if class.tag != DelayType::Neutral {
            return Err(Error::NotNeutral("phi polynomial".into()));
        }
        let scale = delay_lattice_scale(&self.terms);
        let lead = |rf: &RationalFn| rf.num().leading().re / rf.den().leading().re;
        let d1 = self.terms[0].relative_degree();
        let l1 = lead(&self.terms[0].block);

        let mut xi = Vec::new();
        let mut lattice = Vec::new();
        let mut coeffs: Vec<f64> = vec![1.0];
        let h1 = self.terms[0].delay;
        for t in self.terms.iter().skip(1) {
            let di = t.relative_degree();
            let exp = ((t.delay - h1) * Delay::from_integer(scale)).to_integer();
            let x = if di > d1 {
                0.0
            } else if di == d1 {
                lead(&t.block) / l1
            } else {
                return Err(Error::Inconclusive(format!(
                    "high-frequency limit of a delayed block diverges (relative degree {} < {});\
                     the zero-chain test does not apply",
                    di, d1
                )));
            };
            xi.push(x);
            lattice.push(exp);
            let e = exp as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, 0.0);
            }
            coeffs[e] += x;
        }
        Ok(PhiPolynomial {
            xi,
            lattice,
            scale,
            poly: Poly::from_real(&coeffs),
        })
    }

    /// True iff the system has finitely many zeros in the closed right half
    /// plane: retarded type, or neutral type with every phi root strictly
    /// outside the unit circle. Roots within PHI_BOUNDARY_TOL of the circle
    /// are reported as inconclusive rather than classified.
    pub fn is_f_system(&self) -> Result<bool> {
        match self.classify().tag {
            DelayType::Retarded => Ok(true),
            DelayType::Advanced => Ok(false),
            DelayType::Neutral => {
                let phi = self.phi_polynomial()?;
                if phi.poly.degree() == 0 {
                    // empty sum: single-term or all-zero xi
                    return Ok(true);
                }
                let roots = poly_roots(&phi.poly)?;
                for r in &roots {
                    if (r.norm() - 1.0).abs() <= PHI_BOUNDARY_TOL {
                        return Err(Error::Inconclusive(format!(
                            "phi root of magnitude {} within {} of the unit circle",
                            r.norm(),
                            PHI_BOUNDARY_TOL
                        )));
                    }
                }
                Ok(roots.iter().all(|r| r.norm() > 1.0))
            }
        }
    }

    /// True iff the conjugate system has finitely many unstable zeros:
    /// advanced type directly, otherwise the F-system test on the conjugate.
    pub fn is_i_system(&self) -> Result<bool> {
        if self.classify().tag == DelayType::Advanced {
            return Ok(true);
        }
        self.conjugate()?.is_f_system()
    }

    /// Clear all blocks to a common stable denominator D: returns the
    /// numerator lattice N (polynomial blocks) and D with self = N / D.
    pub fn cleared_numerator(&self) -> Result<(QuasiPoly, Poly)> {
        let mut block_poles: Vec<Vec<Complex64>> = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            block_poles.push(if t.block.den().degree() >= 1 {
                poly_roots(t.block.den())?
            } else {
                Vec::new()
            });
        }
        let pool = pool_max_multiplicity(&block_poles);
        let den = Poly::from_roots(&pool).into_real();

        let mut new_terms = Vec::with_capacity(self.terms.len());
        for (i, t) in self.terms.iter().enumerate() {
            let mut rest = pool.clone();
            for p in &block_poles[i] {
                if let Some(pos) = rest
                    .iter()
                    .position(|q| (q - p).norm() <= 1e-7 * (1.0 + p.norm()))
                {
                    rest.remove(pos);
                }
            }
            let c_i = t.block.den().leading();
            let num = t
                .block
                .num()
                .mul(&Poly::from_roots(&rest))
                .scale(Complex64::new(1.0, 0.0) / c_i)
                .into_real();
            new_terms.push((RationalFn::new(num, Poly::one())?, t.delay));
        }
        Ok((QuasiPoly::from_terms_unchecked(new_terms), den))
    }

    /// Multiply every block by a rational factor (no reduction).
    pub fn mul_rational(&self, f: &RationalFn) -> QuasiPoly {
        QuasiPoly::from_terms_unchecked(
            self.terms
                .iter()
                .map(|t| (t.block.mul(f), t.delay))
                .collect(),
        )
    }

    /// Difference on the merged delay lattice.
    pub fn sub(&self, other: &QuasiPoly) -> QuasiPoly {
        use std::collections::BTreeMap;
        let mut map: BTreeMap<Delay, RationalFn> = BTreeMap::new();
        for t in &self.terms {
            map.entry(t.delay)
                .and_modify(|b| *b = b.add(&t.block))
                .or_insert_with(|| t.block.clone());
        }
        for t in &other.terms {
            let neg = t.block.scale(-1.0);
            map.entry(t.delay)
                .and_modify(|b| *b = b.add(&neg))
                .or_insert(neg);
        }
        QuasiPoly::from_terms_unchecked(map.into_iter().map(|(d, b)| (b, d)).collect())
    }
}

/// Common denominator N of the rational delays: h_i = h~_i / N.
fn delay_lattice_scale(terms: &[DelayTerm]) -> i64 {
    let mut n = 1i64;
    for t in terms {
        n = lcm(n, *t.delay.denom());
    }
    n
}

fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub fn ratio_to_f64(r: Delay) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Union of per-block pole multisets with per-pole maximum multiplicity.
fn pool_max_multiplicity(block_poles: &[Vec<Complex64>]) -> Vec<Complex64> {
    let all: Vec<Complex64> = block_poles.iter().flatten().copied().collect();
    let clusters = cluster_roots(&all, 1e-8);
    let mut pool = Vec::new();
    for (center, _) in &clusters {
        let max_mult = block_poles
            .iter()
            .map(|poles| {
                poles
                    .iter()
                    .filter(|p| (*p - center).norm() <= 1e-7 * (1.0 + center.norm()))
                    .count()
            })
            .max()
            .unwrap_or(0);
        for _ in 0..max_mult {
            pool.push(*center);
        }
    }
    pool
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn delay(n: i64) -> Delay {
        Delay::from_integer(n)
    }

    /// R(s) = 1 + (4/(s+1)) e^{-3s}
    pub fn example_r() -> QuasiPoly {
        QuasiPoly::new(vec![
            DelayTerm::new(RationalFn::from_coeffs(&[1.0], &[1.0]).unwrap(), delay(0)).unwrap(),
            DelayTerm::new(
                RationalFn::from_coeffs(&[4.0], &[1.0, 1.0]).unwrap(),
                delay(3),
            )
            .unwrap(),
        ])
        .unwrap()
    }

    /// T(s) = 1 + (2(s-1)/(s+1)) e^{-2s}
    pub fn example_t() -> QuasiPoly {
        QuasiPoly::new(vec![
            DelayTerm::new(RationalFn::from_coeffs(&[1.0], &[1.0]).unwrap(), delay(0)).unwrap(),
            DelayTerm::new(
                RationalFn::from_coeffs(&[-2.0, 2.0], &[1.0, 1.0]).unwrap(),
                delay(2),
            )
            .unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn classify_examples() {
        let r = example_r();
        let cls = r.classify();
        assert_eq!(cls.tag, DelayType::Retarded);
        assert_eq!(cls.d1, 0);
        assert_eq!(cls.dmax, 1);

        let t = example_t();
        assert_eq!(t.classify().tag, DelayType::Neutral);

        // (1/(s+1)) + 1*e^{-s}: d1 = 1 > 0 -> advanced
        let adv = QuasiPoly::new(vec![
            DelayTerm::new(RationalFn::from_coeffs(&[1.0], &[1.0, 1.0]).unwrap(), delay(0))
                .unwrap(),
            DelayTerm::new(RationalFn::from_coeffs(&[1.0], &[1.0]).unwrap(), delay(1)).unwrap(),
        ])
        .unwrap();
        assert_eq!(adv.classify().tag, DelayType::Advanced);
    }

    #[test]
    fn single_term_is_neutral() {
        let q = QuasiPoly::from_rational(RationalFn::from_coeffs(&[1.0, 1.0], &[2.0, 1.0]).unwrap())
            .unwrap();
        assert_eq!(q.classify().tag, DelayType::Neutral);
    }

    #[test]
    fn evaluate_examples() {
        let r = example_r();
        let v = r.evaluate(c(0.0, 0.0)).unwrap();
        assert!((v - c(5.0, 0.0)).norm() < 1e-14);

        let t = example_t();
        let v = t.evaluate(c(0.0, 0.0)).unwrap();
        assert!((v - c(-1.0, 0.0)).norm() < 1e-14);

        // a zero of R
        let z = c(0.312521609185, 0.854779728048);
        assert!(r.evaluate(z).unwrap().norm() < 1e-3);
    }

    #[test]
    fn pole_hit_detected() {
        let r = example_r();
        assert!(matches!(
            r.evaluate(c(-1.0, 0.0)),
            Err(Error::PoleHit { .. })
        ));
    }

    #[test]
    fn conjugate_matches_worked_example() {
        // conjugate of T is 2 + ((s-1)/(s+1)) e^{-2s}
        let tbar = example_t().conjugate().unwrap();
        assert_eq!(tbar.terms().len(), 2);
        assert!(tbar.terms()[0].delay.is_zero());
        let expect = |s: Complex64| 2.0 + (s - 1.0) / (s + 1.0) * (-2.0 * s).exp();
        for k in 0..20 {
            let s = c(0.2 + 0.1 * k as f64, -1.0 + 0.17 * k as f64);
            let got = tbar.evaluate(s).unwrap();
            assert!(
                (got - expect(s)).norm() < 1e-9 * (1.0 + expect(s).norm()),
                "mismatch at {}: {} vs {}",
                s,
                got,
                expect(s)
            );
        }
    }

    #[test]
    fn conjugate_of_constant_is_identity() {
        let q = QuasiPoly::from_rational(RationalFn::constant(1.0)).unwrap();
        let qb = q.conjugate().unwrap();
        assert_eq!(qb.terms().len(), 1);
        assert!((qb.evaluate(c(0.3, 0.5)).unwrap() - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn conjugate_preserves_axis_modulus() {
        for q in [example_r(), example_t()] {
            let qb = q.conjugate().unwrap();
            for k in 1..40 {
                let w = 0.05 * (k as f64) * (k as f64);
                let s = c(0.0, w);
                let a = q.evaluate(s).unwrap().norm();
                let b = qb.evaluate(s).unwrap().norm();
                assert!((a - b).abs() < 1e-9 * (1.0 + a), "w={}: {} vs {}", w, a, b);
            }
        }
    }

    #[test]
    fn double_conjugate_modulus_on_axis() {
        let q = example_t();
        let qbb = q.conjugate().unwrap().conjugate().unwrap();
        for k in 0..20 {
            let s = c(0.0, 0.1 + 0.45 * k as f64);
            let a = q.evaluate(s).unwrap().norm();
            let b = qbb.evaluate(s).unwrap().norm();
            assert!((a - b).abs() < 1e-9 * (1.0 + a));
        }
    }

    #[test]
    fn phi_of_conjugate_t() {
        let tbar = example_t().conjugate().unwrap();
        let phi = tbar.phi_polynomial().unwrap();
        assert_eq!(phi.scale, 1);
        // phi(r) = 1 + 0.5 r^2
        assert_eq!(phi.poly.degree(), 2);
        let coeffs = phi.poly.real_coeffs();
        assert!((coeffs[0] - 1.0).abs() < 1e-12);
        assert!(coeffs[1].abs() < 1e-12);
        assert!((coeffs[2] - 0.5).abs() < 1e-9);
    }

    #[test]
    fn phi_single_term_is_one() {
        let q = QuasiPoly::from_rational(RationalFn::constant(3.0)).unwrap();
        let phi = q.phi_polynomial().unwrap();
        assert_eq!(phi.poly.degree(), 0);
        assert!(q.is_f_system().unwrap());
    }

    #[test]
    fn phi_requires_neutral() {
        assert!(matches!(
            example_r().phi_polynomial(),
            Err(Error::NotNeutral(_))
        ));
    }

    #[test]
    fn phi_boundary_flagged() {
        // 1 + e^{-s}: phi = 1 + r with root magnitude exactly 1
        let q = QuasiPoly::new(vec![
            DelayTerm::new(RationalFn::constant(1.0), delay(0)).unwrap(),
            DelayTerm::new(RationalFn::constant(1.0), delay(1)).unwrap(),
        ])
        .unwrap();
        assert!(matches!(q.is_f_system(), Err(Error::Inconclusive(_))));
    }

    #[test]
    fn f_system_verdicts() {
        assert!(example_r().is_f_system().unwrap());
        let tbar = example_t().conjugate().unwrap();
        assert!(tbar.is_f_system().unwrap());
        // 1 + 2 e^{-s}: phi root at -1/2, inside the circle
        let q = QuasiPoly::new(vec![
            DelayTerm::new(RationalFn::constant(1.0), delay(0)).unwrap(),
            DelayTerm::new(RationalFn::constant(2.0), delay(1)).unwrap(),
        ])
        .unwrap();
        assert!(!q.is_f_system().unwrap());
    }

    #[test]
    fn i_system_verdicts() {
        assert!(example_t().is_i_system().unwrap());
        // advanced systems are I-systems by definition
        let adv = QuasiPoly::new(vec![
            DelayTerm::new(RationalFn::from_coeffs(&[1.0], &[1.0, 1.0]).unwrap(), delay(0))
                .unwrap(),
            DelayTerm::new(RationalFn::from_coeffs(&[1.0], &[1.0]).unwrap(), delay(1)).unwrap(),
        ])
        .unwrap();
        assert_eq!(adv.classify().tag, DelayType::Advanced);
        assert!(adv.is_i_system().unwrap());
        assert_eq!(adv.conjugate().unwrap().classify().tag, DelayType::Retarded);
        // 1 + 0.5 e^{-s}: conjugate is 0.5 + e^{-s}, phi root magnitude 1/2
        let q = QuasiPoly::new(vec![
            DelayTerm::new(RationalFn::constant(1.0), delay(0)).unwrap(),
            DelayTerm::new(RationalFn::constant(0.5), delay(1)).unwrap(),
        ])
        .unwrap();
        assert!(!q.is_i_system().unwrap());
    }

    #[test]
    fn classify_invariant_under_biproper_scaling() {
        // multiplying every block by the same stable biproper function
        // shifts no relative degrees
        let f = RationalFn::from_coeffs(&[2.0, 1.0], &[3.0, 1.0]).unwrap();
        for q in [example_r(), example_t()] {
            let scaled = QuasiPoly::new(
                q.terms()
                    .iter()
                    .map(|t| DelayTerm::new(t.block.mul(&f), t.delay).unwrap())
                    .collect(),
            )
            .unwrap();
            assert_eq!(q.classify().tag, scaled.classify().tag);
        }
    }

    #[test]
    fn cleared_numerator_reconstructs() {
        let t = example_t();
        let (num, den) = t.cleared_numerator().unwrap();
        for k in 0..20 {
            let s = c(-0.4 + 0.13 * k as f64, 0.3 + 0.21 * k as f64);
            let lhs = num.evaluate(s).unwrap() / den.eval(s);
            let rhs = t.evaluate(s).unwrap();
            assert!((lhs - rhs).norm() < 1e-10 * (1.0 + rhs.norm()));
        }
        // numerator blocks are polynomials
        for term in num.terms() {
            assert_eq!(term.block.den().degree(), 0);
        }
    }

    #[test]
    fn eval_with_deriv_matches_difference() {
        let t = example_t();
        let s = c(0.4, 1.1);
        let (_, dv) = t.eval_with_deriv(s);
        let h = 1e-6;
        let fd = (t.eval_raw(s + c(h, 0.0)) - t.eval_raw(s - c(h, 0.0))) / c(2.0 * h, 0.0);
        assert!((dv - fd).norm() < 1e-6);
    }

    #[test]
    fn invalid_constructions_rejected() {
        // float-ish negative delay / unsorted / missing zero delay
        assert!(QuasiPoly::new(vec![DelayTerm::new(
            RationalFn::constant(1.0),
            delay(1)
        )
        .unwrap()])
        .is_err());
        // unstable block
        assert!(DelayTerm::new(
            RationalFn::from_coeffs(&[1.0], &[-1.0, 1.0]).unwrap(),
            delay(0)
        )
        .is_err());
        // improper block
        assert!(DelayTerm::new(
            RationalFn::from_coeffs(&[0.0, 0.0, 1.0], &[1.0, 1.0]).unwrap(),
            delay(0)
        )
        .is_err());
    }
}
