//! Count and locate zeros of analytic functions in a right-half-plane box
//! by the argument principle: adaptive phase tracking along a rectangular
//! contour, recursive box subdivision, and Newton polishing.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::Poly;
use crate::quasipoly::QuasiPoly;

/// Default contour sampling density, points per unit arc length.
pub const GRID_DENSITY: f64 = 64.0;

/// Located zeros must satisfy |f(z)| < LOCATE_TOL * local scale.
pub const LOCATE_TOL: f64 = 1e-9;

/// Contour inset used for closed-RHP searches; located zeros with real part
/// below -AXIS_REJECT are discarded as false captures.
pub const AXIS_INSET: f64 = 1e-6;
pub const AXIS_REJECT: f64 = 1e-9;

/// Anything analytic we can trace along a contour. The derivative defaults
/// to a central difference; implementors with an analytic derivative
/// override it.
pub trait AnalyticFn {
    fn eval(&self, s: Complex64) -> Complex64;

    fn eval_deriv(&self, s: Complex64) -> Complex64 {
        let h = 1e-6 * (1.0 + s.norm());
        let hr = Complex64::new(h, 0.0);
        (self.eval(s + hr) - self.eval(s - hr)) / (2.0 * hr)
    }
}

impl AnalyticFn for QuasiPoly {
    fn eval(&self, s: Complex64) -> Complex64 {
        self.eval_raw(s)
    }

    fn eval_deriv(&self, s: Complex64) -> Complex64 {
        self.eval_with_deriv(s).1
    }
}

impl AnalyticFn for Poly {
    fn eval(&self, s: Complex64) -> Complex64 {
        Poly::eval(self, s)
    }

    fn eval_deriv(&self, s: Complex64) -> Complex64 {
        self.derivative().eval(s)
    }
}

/// Wrap a plain closure as an analytic function (numeric derivative).
pub struct ClosureFn<F: Fn(Complex64) -> Complex64>(pub F);

impl<F: Fn(Complex64) -> Complex64> AnalyticFn for ClosureFn<F> {
    fn eval(&self, s: Complex64) -> Complex64 {
        (self.0)(s)
    }
}

/// Rectangular search region in the complex plane.
#[derive(Debug, Clone, Copy)]
pub struct ContourBox {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub grid_density: f64,
}

impl ContourBox {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Self {
        ContourBox {
            re_min,
            re_max,
            im_min,
            im_max,
            grid_density: GRID_DENSITY,
        }
    }

    pub fn width(&self) -> f64 {
        self.re_max - self.re_min
    }

    pub fn height(&self) -> f64 {
        self.im_max - self.im_min
    }

    pub fn center(&self) -> Complex64 {
        Complex64::new(
            0.5 * (self.re_min + self.re_max),
            0.5 * (self.im_min + self.im_max),
        )
    }

    pub fn contains(&self, z: Complex64, slack: f64) -> bool {
        let dx = slack * self.width();
        let dy = slack * self.height();
        z.re >= self.re_min - dx
            && z.re <= self.re_max + dx
            && z.im >= self.im_min - dy
            && z.im <= self.im_max + dy
    }

    fn corners(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.re_min, self.im_min),
            Complex64::new(self.re_max, self.im_min),
            Complex64::new(self.re_max, self.im_max),
            Complex64::new(self.re_min, self.im_max),
        ]
    }

    fn inflated(&self, fx: f64, fy: f64) -> ContourBox {
        ContourBox {
            re_min: self.re_min - fx,
            re_max: self.re_max + fx,
            im_min: self.im_min - fy,
            im_max: self.im_max + fy,
            grid_density: self.grid_density,
        }
    }
}

/// Zeros together with the per-sub-box winding certificates that located
/// them; the certificate counts sum to the number of zeros.
#[derive(Debug, Clone)]
pub struct ZeroSet {
    pub zeros: Vec<Complex64>,
    pub certificates: Vec<(ContourBox, usize)>,
}

/// Signed winding number of f along the box contour, by adaptive phase
/// tracking: samples are refined until consecutive phase steps stay below
/// pi/2. Errors if the contour passes too close to a zero (after one
/// automatic perturbation of the box).
pub fn winding_number(f: &dyn AnalyticFn, bx: &ContourBox) -> Result<i64> {
    match winding_attempt(f, bx) {
        Ok(w) => Ok(w),
        Err(_) => {
            let pert = bx.inflated(
                0.0173 * bx.width().max(1e-3),
                0.0151 * bx.height().max(1e-3),
            );
            winding_attempt(f, &pert)
        }
    }
}

fn winding_attempt(f: &dyn AnalyticFn, bx: &ContourBox) -> Result<i64> {
    let corners = bx.corners();
    let mut samples: Vec<Complex64> = Vec::new();
    for e in 0..4 {
        let a = corners[e];
        let b = corners[(e + 1) % 4];
        let len = (b - a).norm();
        let n = ((len * bx.grid_density).ceil() as usize).clamp(8, 20_000);
        for k in 0..n {
            samples.push(a + (b - a) * (k as f64 / n as f64));
        }
    }
    samples.push(corners[0]);

    let vals: Vec<Complex64> = samples.iter().map(|&s| f.eval(s)).collect();
    if vals.iter().any(|v| !v.is_finite()) {
        return Err(Error::Contour("non-finite value on contour".into()));
    }
    let mut mags: Vec<f64> = vals.iter().map(|v| v.norm()).collect();
    mags.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let median = mags[mags.len() / 2].max(1e-300);
    let threshold = 1e-8 * median;
    if mags[0] < threshold {
        return Err(Error::Contour(format!(
            "contour passes near a zero (min |f| = {:.3e}, median {:.3e})",
            mags[0], median
        )));
    }

    let mut total = 0.0_f64;
    for k in 0..samples.len() - 1 {
        total += phase_step(f, samples[k], samples[k + 1], vals[k], vals[k + 1], threshold, 0)?;
    }

    let turns = total / (2.0 * std::f64::consts::PI);
    let rounded = turns.round();
    if (turns - rounded).abs() >= 0.25 {
        return Err(Error::Contour(format!(
            "winding number {:.4} is not close to an integer",
            turns
        )));
    }
    Ok(rounded as i64)
}

fn phase_step(
    f: &dyn AnalyticFn,
    a: Complex64,
    b: Complex64,
    fa: Complex64,
    fb: Complex64,
    threshold: f64,
    depth: usize,
) -> Result<f64> {
    let d = (fb / fa).arg();
    if d.abs() <= std::f64::consts::FRAC_PI_2 {
        return Ok(d);
    }
    if depth >= 48 {
        return Err(Error::Contour(
            "phase step refinement exhausted; zero on or near contour".into(),
        ));
    }
    let m = 0.5 * (a + b);
    let fm = f.eval(m);
    if !fm.is_finite() || fm.norm() < threshold {
        return Err(Error::Contour(format!(
            "contour refinement hit |f| = {:.3e} at {}",
            fm.norm(),
            m
        )));
    }
    Ok(phase_step(f, a, m, fa, fm, threshold, depth + 1)?
        + phase_step(f, m, b, fm, fb, threshold, depth + 1)?)
}

/// Number of zeros inside the box (winding number, which must be
/// nonnegative for a function analytic in the box).
pub fn count_zeros(f: &dyn AnalyticFn, bx: &ContourBox) -> Result<usize> {
    let w = winding_number(f, bx)?;
    if w < 0 {
        return Err(Error::Contour(format!(
            "negative winding number {} for an analytic function; poles inside the box?",
            w
        )));
    }
    Ok(w as usize)
}

/// Locate all zeros in the box: subdivide until each sub-box certifies a
/// single zero, then polish with Newton iterations using the analytic
/// derivative where available.
pub fn locate_zeros(f: &dyn AnalyticFn, bx: &ContourBox) -> Result<ZeroSet> {
    let total = count_zeros(f, bx)?;
    let mut zeros = Vec::with_capacity(total);
    let mut certificates = Vec::new();
    if total == 0 {
        return Ok(ZeroSet {
            zeros,
            certificates,
        });
    }

    let mut queue: Vec<(ContourBox, usize)> = vec![(*bx, total)];
    while let Some((b, n)) = queue.pop() {
        if n == 1 {
            match polish_single(f, &b) {
                Some(z) => {
                    if z.re < -AXIS_REJECT {
                        // inset capture from the closed-RHP margin
                        certificates.push((b, 0));
                        continue;
                    }
                    zeros.push(z);
                    certificates.push((b, 1));
                    continue;
                }
                None => {
                    if b.width().max(b.height()) < 1e-7 {
                        return Err(Error::Contour(format!(
                            "Newton failed to converge in sub-box [{}, {}] x [{}, {}]",
                            b.re_min, b.re_max, b.im_min, b.im_max
                        )));
                    }
                    // fall through to subdivision
                }
            }
        }
        for half in split_box(&b) {
            let c = count_zeros(f, &half)?;
            if c > 0 {
                queue.push((half, c));
            }
        }
    }

    if zeros.len() != total {
        return Err(Error::Contour(format!(
            "located {} zeros but the outer contour certifies {}",
            zeros.len(),
            total
        )));
    }
    zeros.sort_by(|a, b| {
        a.im.partial_cmp(&b.im)
            .unwrap()
            .then(a.re.partial_cmp(&b.re).unwrap())
    });
    Ok(ZeroSet {
        zeros,
        certificates,
    })
}

fn split_box(b: &ContourBox) -> [ContourBox; 2] {
    // split the long side; the small asymmetry keeps the cut off zeros
    // that sit exactly at the midpoint
    if b.width() >= b.height() {
        let m = b.re_min + b.width() * 0.503;
        [
            ContourBox {
                re_max: m,
                ..*b
            },
            ContourBox {
                re_min: m,
                ..*b
            },
        ]
    } else {
        let m = b.im_min + b.height() * 0.503;
        [
            ContourBox {
                im_max: m,
                ..*b
            },
            ContourBox {
                im_min: m,
                ..*b
            },
        ]
    }
}

fn polish_single(f: &dyn AnalyticFn, b: &ContourBox) -> Option<Complex64> {
    let mut z = b.center();
    for _ in 0..80 {
        let v = f.eval(z);
        let d = f.eval_deriv(z);
        if !v.is_finite() || !d.is_finite() || d.norm() < 1e-300 {
            return None;
        }
        let step = v / d;
        z -= step;
        if !b.contains(z, 0.75) {
            return None;
        }
        if step.norm() <= 1e-13 * (1.0 + z.norm()) {
            break;
        }
    }
    let v = f.eval(z);
    let d = f.eval_deriv(z);
    let scale = (1.0 + d.norm()) * (1.0 + z.norm());
    if v.norm() < LOCATE_TOL * scale && b.contains(z, 0.75) {
        Some(z)
    } else {
        None
    }
}

/// Search box sized from the block coefficients (Cauchy-style root bound on
/// the delay-free polynomial envelope), doubled until two successive boxes
/// report the same count.
pub fn default_box(q: &QuasiPoly) -> Result<ContourBox> {
    let mut bound = 2.0_f64;
    for t in q.terms() {
        for p in [t.block.num(), t.block.den()] {
            if p.is_zero() || p.degree() == 0 {
                continue;
            }
            let lead = p.leading().norm();
            let b = 1.0
                + p.coeffs()
                    .iter()
                    .take(p.degree())
                    .map(|c| c.norm() / lead)
                    .fold(0.0, f64::max);
            bound = bound.max(b);
        }
    }

    let make = |b: f64| ContourBox::new(-AXIS_INSET, b, -b, b);
    let mut prev = count_zeros(q, &make(bound))?;
    for _ in 0..6 {
        let next_bound = bound * 2.0;
        let next = count_zeros(q, &make(next_bound))?;
        if next == prev {
            return Ok(make(next_bound));
        }
        prev = next;
        bound = next_bound;
    }
    Err(Error::BoxGrowth(format!(
        "zero count still growing at box radius {}; possibly not an F-system",
        bound
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::RationalFn;
    use crate::quasipoly::{Delay, DelayTerm};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn example_r() -> QuasiPoly {
        QuasiPoly::new(vec![
            DelayTerm::new(
                RationalFn::from_coeffs(&[1.0], &[1.0]).unwrap(),
                Delay::from_integer(0),
            )
            .unwrap(),
            DelayTerm::new(
                RationalFn::from_coeffs(&[4.0], &[1.0, 1.0]).unwrap(),
                Delay::from_integer(3),
            )
            .unwrap(),
        ])
        .unwrap()
    }

    fn example_tbar() -> QuasiPoly {
        QuasiPoly::new(vec![
            DelayTerm::new(
                RationalFn::from_coeffs(&[2.0], &[1.0]).unwrap(),
                Delay::from_integer(0),
            )
            .unwrap(),
            DelayTerm::new(
                RationalFn::from_coeffs(&[-1.0, 1.0], &[1.0, 1.0]).unwrap(),
                Delay::from_integer(2),
            )
            .unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn count_r_zeros() {
        // the example numerator (s+1) + 4 e^{-3s} has four RHP zeros:
        // 0.3125 +- 0.8548j and 0.1006 +- 2.7451j
        let bx = ContourBox::new(0.0, 10.0, -20.0, 20.0);
        assert_eq!(count_zeros(&example_r(), &bx).unwrap(), 4);
    }

    #[test]
    fn count_tbar_zeros_is_zero() {
        let bx = ContourBox::new(0.0, 10.0, -20.0, 20.0);
        assert_eq!(count_zeros(&example_tbar(), &bx).unwrap(), 0);
    }

    #[test]
    fn rational_oracle_agreement() {
        // q = s - 1 as a pure polynomial lattice
        let q = QuasiPoly::from_poly_lattice(vec![(
            Poly::from_real(&[-1.0, 1.0]),
            Delay::from_integer(0),
        )])
        .unwrap();
        let bx = ContourBox::new(0.0, 10.0, -20.0, 20.0);
        assert_eq!(count_zeros(&q, &bx).unwrap(), 1);
        let zs = locate_zeros(&q, &bx).unwrap();
        assert_eq!(zs.zeros.len(), 1);
        assert!((zs.zeros[0] - c(1.0, 0.0)).norm() < 1e-8);
    }

    #[test]
    fn locate_r_zeros() {
        let bx = ContourBox::new(0.0, 10.0, -20.0, 20.0);
        let zs = locate_zeros(&example_r(), &bx).unwrap();
        assert_eq!(zs.zeros.len(), 4);
        for target in [c(0.3125, 0.8548), c(0.100646, 2.745102)] {
            assert!(zs.zeros.iter().any(|z| (z - target).norm() < 1e-3));
            assert!(zs.zeros.iter().any(|z| (z - target.conj()).norm() < 1e-3));
        }
        let sum: usize = zs.certificates.iter().map(|(_, n)| n).sum();
        assert_eq!(sum, zs.zeros.len());
    }

    #[test]
    fn polynomial_in_box() {
        // s^2 - 1: only the RHP root lies in the box
        let p = Poly::from_real(&[-1.0, 0.0, 1.0]);
        let bx = ContourBox::new(0.0, 5.0, -5.0, 5.0);
        let zs = locate_zeros(&p, &bx).unwrap();
        assert_eq!(zs.zeros.len(), 1);
        assert!((zs.zeros[0] - c(1.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn default_box_covers_r() {
        let bx = default_box(&example_r()).unwrap();
        assert!(bx.contains(c(0.3125, 0.8548), 0.0));
        assert_eq!(count_zeros(&example_r(), &bx).unwrap(), 4);
    }

    #[test]
    fn default_box_no_zeros() {
        let bx = default_box(&example_tbar()).unwrap();
        assert_eq!(count_zeros(&example_tbar(), &bx).unwrap(), 0);
    }

    #[test]
    fn default_box_delay_free() {
        // numerator of (s-1)/(s+2)
        let q =
            QuasiPoly::from_rational(RationalFn::from_coeffs(&[-1.0, 1.0], &[2.0, 1.0]).unwrap())
                .unwrap();
        let bx = default_box(&q).unwrap();
        assert!(bx.contains(c(1.0, 0.0), 0.0));
        let zs = locate_zeros(&q, &bx).unwrap();
        assert_eq!(zs.zeros.len(), 1);
        assert!((zs.zeros[0] - c(1.0, 0.0)).norm() < 1e-8);
    }

    #[test]
    fn pole_chain_of_t_lattice() {
        // zeros of (s+1) + 2(s-1)e^{-2s} approach ln sqrt(2) + j(k+1/2)pi
        let lattice = QuasiPoly::from_terms_unchecked(vec![
            (
                RationalFn::from_coeffs(&[1.0, 1.0], &[1.0]).unwrap(),
                Delay::from_integer(0),
            ),
            (
                RationalFn::from_coeffs(&[-2.0, 2.0], &[1.0]).unwrap(),
                Delay::from_integer(2),
            ),
        ]);
        let bx = ContourBox::new(0.0, 2.0, 1.0, 30.0);
        let zs = locate_zeros(&lattice, &bx).unwrap();
        // chain zeros near (k+1/2)pi for k = 0..9 lie in (1, 30)
        assert_eq!(zs.zeros.len(), 10);
        let target_re = (2.0_f64).sqrt().ln();
        for k in 5..9 {
            let target = c(target_re, (k as f64 + 0.5) * std::f64::consts::PI);
            let nearest = zs
                .zeros
                .iter()
                .map(|z| (z - target).norm())
                .fold(f64::INFINITY, f64::min);
            assert!(nearest < 0.06, "k={} nearest {}", k, nearest);
        }
    }

    #[test]
    fn contour_through_zero_perturbs() {
        // real zero of the T lattice at ~0.1724 sits on the Im = 0 edge
        let lattice = QuasiPoly::from_terms_unchecked(vec![
            (
                RationalFn::from_coeffs(&[1.0, 1.0], &[1.0]).unwrap(),
                Delay::from_integer(0),
            ),
            (
                RationalFn::from_coeffs(&[-2.0, 2.0], &[1.0]).unwrap(),
                Delay::from_integer(2),
            ),
        ]);
        let bx = ContourBox::new(0.0, 2.0, 0.0, 6.0);
        // perturbation must absorb the on-contour zero; count includes it
        let n = count_zeros(&lattice, &bx).unwrap();
        assert!(n >= 2, "count {}", n);
    }
}
