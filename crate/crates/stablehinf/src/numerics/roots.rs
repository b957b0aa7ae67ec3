use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::poly::Poly;
use crate::error::{Error, Result};

/// Relative residual accepted for a converged root.
pub const TOL_ROOT: f64 = 1e-10;

const MAX_ITER: usize = 400;
const RESTARTS: usize = 4;

/// All complex roots of `p`, with multiplicity, via simultaneous
/// Aberth-Ehrlich iteration with deterministic perturbation restarts.
///
/// Each returned root z satisfies |p(z)| <= TOL_ROOT * max|coeff| * max(1,|z|)^deg.
pub fn poly_roots(p: &Poly) -> Result<Vec<Complex64>> {
    let p = p.trim_relative(0.0);
    if p.is_zero() {
        return Err(Error::InvalidInput(
            "cannot take roots of the zero polynomial".into(),
        ));
    }
    if p.degree() == 0 {
        return Err(Error::InvalidInput(
            "root finding requires degree >= 1".into(),
        ));
    }

    // factor out exact roots at the origin
    let mut coeffs = p.coeffs().to_vec();
    let mut origin = 0usize;
    while coeffs.len() > 1 && coeffs[0].norm() == 0.0 {
        coeffs.remove(0);
        origin += 1;
    }
    let core = Poly::new(coeffs);
    let mut roots = vec![Complex64::new(0.0, 0.0); origin];
    if core.degree() == 0 {
        return Ok(roots);
    }
    roots.extend(roots_nonzero(&core)?);
    Ok(roots)
}

fn roots_nonzero(p: &Poly) -> Result<Vec<Complex64>> {
    match p.degree() {
        1 => {
            let c = p.coeffs();
            Ok(vec![-c[0] / c[1]])
        }
        2 => Ok(quadratic(p)),
        _ => aberth(p),
    }
}

/// Numerically stable quadratic formula.
fn quadratic(p: &Poly) -> Vec<Complex64> {
    let c = p.coeffs();
    let (a, b, c0) = (c[2], c[1], c[0]);
    let disc = (b * b - 4.0 * a * c0).sqrt();
    // pick the sign that avoids cancellation
    let q = if (b + disc).norm() >= (b - disc).norm() {
        -0.5 * (b + disc)
    } else {
        -0.5 * (b - disc)
    };
    if q.norm() == 0.0 {
        return vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)];
    }
    vec![q / a, c0 / q]
}

fn aberth(p: &Poly) -> Result<Vec<Complex64>> {
    let n = p.degree();
    let lead = p.leading();
    let monic = p.scale(1.0 / lead);
    let dp = monic.derivative();
    let radius = 1.0
        + monic
            .coeffs()
            .iter()
            .take(n)
            .map(|c| c.norm())
            .fold(0.0, f64::max);

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut best: Vec<Complex64> = Vec::new();

    for restart in 0..RESTARTS {
        let mut z: Vec<Complex64> = (0..n)
            .map(|k| {
                let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.376;
                let r = radius * (0.5 + 0.5 * (k as f64 + 1.0) / (n as f64));
                let jitter = if restart == 0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::new(rng.gen_range(-0.3..0.3), rng.gen_range(-0.3..0.3)) * radius
                };
                Complex64::from_polar(r, theta) + jitter
            })
            .collect();

        let mut converged = false;
        for _ in 0..MAX_ITER {
            let mut max_step = 0.0_f64;
            for i in 0..n {
                let pv = monic.eval(z[i]);
                let dv = dp.eval(z[i]);
                if !pv.is_finite() || !dv.is_finite() {
                    max_step = f64::INFINITY;
                    break;
                }
                let w = if dv.norm() > 0.0 {
                    pv / dv
                } else {
                    Complex64::new(1e-8, 1e-8)
                };
                let mut s = Complex64::new(0.0, 0.0);
                for j in 0..n {
                    if j != i {
                        let d = z[i] - z[j];
                        if d.norm() > 1e-300 {
                            s += Complex64::new(1.0, 0.0) / d;
                        }
                    }
                }
                let denom = Complex64::new(1.0, 0.0) - w * s;
                let delta = if denom.norm() > 1e-300 { w / denom } else { w };
                z[i] -= delta;
                max_step = max_step.max(delta.norm() / (1.0 + z[i].norm()));
            }
            if max_step < 1e-14 {
                converged = true;
                break;
            }
        }

        // Newton polish
        for zi in z.iter_mut() {
            for _ in 0..3 {
                let pv = monic.eval(*zi);
                let dv = dp.eval(*zi);
                if dv.norm() > 1e-300 && pv.is_finite() {
                    *zi -= pv / dv;
                }
            }
        }

        let scale = p.max_abs_coeff();
        let ok = z
            .iter()
            .all(|&zi| p.eval(zi).norm() <= TOL_ROOT * scale * (1.0 + zi.norm()).powi(n as i32));
        if converged && ok {
            return Ok(z);
        }
        if best.is_empty() || ok {
            best = z;
        }
    }

    Err(Error::RootFinding {
        message: format!(
            "Aberth iteration did not converge for degree {} polynomial",
            n
        ),
        best,
    })
}

/// Group near-identical roots; returns (representative, multiplicity) pairs.
/// Roots closer than `tol * (1 + |root|)` are merged.
pub fn cluster_roots(roots: &[Complex64], tol: f64) -> Vec<(Complex64, usize)> {
    let mut clusters: Vec<(Complex64, usize)> = Vec::new();
    for &r in roots {
        if let Some((c, m)) = clusters
            .iter_mut()
            .find(|(c, _)| (*c - r).norm() <= tol * (1.0 + r.norm()))
        {
            // running centroid
            *c = (*c * (*m as f64) + r) / (*m as f64 + 1.0);
            *m += 1;
        } else {
            clusters.push((r, 1));
        }
    }
    clusters
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn contains_root(roots: &[Complex64], target: Complex64, tol: f64) -> bool {
        roots.iter().any(|r| (r - target).norm() < tol)
    }

    #[test]
    fn linear_case() {
        // s - 1
        let r = poly_roots(&Poly::from_real(&[-1.0, 1.0])).unwrap();
        assert_eq!(r.len(), 1);
        assert!((r[0] - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn phi_of_conjugate_example() {
        // 1 + 0.5 r^2 -> roots +-j*sqrt(2)
        let r = poly_roots(&Poly::from_real(&[1.0, 0.0, 0.5])).unwrap();
        assert_eq!(r.len(), 2);
        let m = 2.0_f64.sqrt();
        assert!(contains_root(&r, c(0.0, m), 1e-10));
        assert!(contains_root(&r, c(0.0, -m), 1e-10));
        assert!((r[0].norm() - 1.4142135623730951).abs() < 1e-10);
    }

    #[test]
    fn plant_numerator_zeros() {
        // s^2 - 0.6250 s + 0.8283 -> 0.3125 +- 0.8548 j
        let r = poly_roots(&Poly::from_real(&[0.8283, -0.6250, 1.0])).unwrap();
        assert!(contains_root(&r, c(0.3125, 0.8548), 2e-4));
        assert!(contains_root(&r, c(0.3125, -0.8548), 2e-4));
    }

    #[test]
    fn origin_roots_factored() {
        // s^2 (s - 2)
        let r = poly_roots(&Poly::from_real(&[0.0, 0.0, -2.0, 1.0])).unwrap();
        assert_eq!(r.len(), 3);
        assert_eq!(r.iter().filter(|z| z.norm() == 0.0).count(), 2);
        assert!(contains_root(&r, c(2.0, 0.0), 1e-10));
    }

    #[test]
    fn higher_degree_residuals() {
        let p = Poly::from_real(&[3.0, -1.0, 0.25, 2.0, -0.7, 1.0, 0.9]);
        let r = poly_roots(&p).unwrap();
        assert_eq!(r.len(), 6);
        let scale = p.max_abs_coeff();
        for z in &r {
            assert!(p.eval(*z).norm() <= 1e-9 * scale * (1.0 + z.norm()).powi(6));
        }
    }

    #[test]
    fn degree_zero_rejected() {
        assert!(poly_roots(&Poly::from_real(&[3.0])).is_err());
    }

    #[test]
    fn clustering_merges() {
        let roots = vec![c(1.0, 0.0), c(1.0 + 1e-10, 0.0), c(2.0, 0.0)];
        let cl = cluster_roots(&roots, 1e-8);
        assert_eq!(cl.len(), 2);
        assert_eq!(cl[0].1, 2);
    }
}
