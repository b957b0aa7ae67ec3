/// Compact Nelder-Mead simplex minimizer for the low-dimensional
/// constrained fits in the design stage. Deterministic for a fixed start.
pub struct NelderMead {
    pub max_iter: usize,
    pub ftol: f64,
}

impl Default for NelderMead {
    fn default() -> Self {
        NelderMead {
            max_iter: 2000,
            ftol: 1e-14,
        }
    }
}

impl NelderMead {
    pub fn minimize(
        &self,
        f: impl Fn(&[f64]) -> f64,
        x0: &[f64],
        step: f64,
    ) -> (Vec<f64>, f64) {
        let n = x0.len();
        let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
        simplex.push(x0.to_vec());
        for i in 0..n {
            let mut v = x0.to_vec();
            v[i] += step * (1.0 + v[i].abs());
            simplex.push(v);
        }
        let mut fv: Vec<f64> = simplex.iter().map(|v| f(v)).collect();

        for _ in 0..self.max_iter {
            // order ascending
            let mut idx: Vec<usize> = (0..=n).collect();
            idx.sort_by(|&a, &b| fv[a].partial_cmp(&fv[b]).unwrap_or(std::cmp::Ordering::Equal));
            simplex = idx.iter().map(|&i| simplex[i].clone()).collect();
            fv = idx.iter().map(|&i| fv[i]).collect();

            if (fv[n] - fv[0]).abs() <= self.ftol * (1.0 + fv[0].abs()) {
                break;
            }

            let centroid: Vec<f64> = (0..n)
                .map(|d| simplex[..n].iter().map(|v| v[d]).sum::<f64>() / n as f64)
                .collect();

            let lerp = |a: &[f64], b: &[f64], t: f64| -> Vec<f64> {
                a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect()
            };

            // reflection
            let xr = lerp(&centroid, &simplex[n], -1.0);
            let fr = f(&xr);
            if fr < fv[0] {
                // expansion
                let xe = lerp(&centroid, &simplex[n], -2.0);
                let fe = f(&xe);
                if fe < fr {
                    simplex[n] = xe;
                    fv[n] = fe;
                } else {
                    simplex[n] = xr;
                    fv[n] = fr;
                }
            } else if fr < fv[n - 1] {
                simplex[n] = xr;
                fv[n] = fr;
            } else {
                // contraction
                let xc = lerp(&centroid, &simplex[n], 0.5);
                let fc = f(&xc);
                if fc < fv[n] {
                    simplex[n] = xc;
                    fv[n] = fc;
                } else {
                    // shrink toward best
                    for i in 1..=n {
                        simplex[i] = lerp(&simplex[0], &simplex[i], 0.5);
                        fv[i] = f(&simplex[i]);
                    }
                }
            }
        }

        let mut best = 0;
        for i in 1..=n {
            if fv[i] < fv[best] {
                best = i;
            }
        }
        (simplex[best].clone(), fv[best])
    }
}
