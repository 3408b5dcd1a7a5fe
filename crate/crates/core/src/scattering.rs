//! One-particle reflection amplitudes on the half-line and their recovery
//! as the `V_0 → ∞` limit of a finite step `V_0 Θ(−x)`.
//!
//! With `ψ_±(x) = e^{−ikx} + A_± e^{ikx}` for `x > 0`:
//!
//! | model | `A_+`                      | `A_−`                          |
//! |-------|----------------------------|--------------------------------|
//! | delta | `(ik + c/2)/(ik − c/2)`    | `−1`                           |
//! | pδp   | `1`                        | `(ik + 1/2λ)/(ik − 1/2λ)`      |
//!
//! Under the step, `φ = e^{−ikx} + B e^{ikx}` for `x > 0` and `C e^{ωx}` for
//! `x < 0` with `ω = √(V_0 − k²)`, and
//!
//! ```text
//!     delta:  B = (ik + (ω + g))/(ik − (ω + g)),        C = 1 + B
//!     pδp:    B = (ik + ω/(1 + ωg̃))/(ik − ω/(1 + ωg̃)),  C = ik(B − 1)/ω
//! ```
//!
//! with `g_+ = c/2 − √V_0`, `g_− = 0`, `g̃_+ = √V_0`, `g̃_− = 2λ`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exchange::Model;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

impl FromStr for Parity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" | "+" => Ok(Parity::Even),
            "odd" | "-" => Ok(Parity::Odd),
            other => Err(Error::Domain(format!("unknown parity {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScatteringAmplitude {
    pub model: Model,
    pub parity: Parity,
    pub k: f64,
    pub value: Complex64,
}

fn check_inputs(k: f64, coupling: f64) -> Result<()> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::Domain(format!("momentum must be positive, got {k}")));
    }
    if !(coupling > 0.0 && coupling.is_finite()) {
        return Err(Error::Domain(format!(
            "coupling must be positive, got {coupling}"
        )));
    }
    Ok(())
}

/// `(ik + s)/(ik − s)`.
fn phase(k: f64, s: f64) -> Complex64 {
    let ik = Complex64::new(0.0, k);
    (ik + s) / (ik - s)
}

/// Closed-form half-line amplitude `A_±`.
///
/// `coupling` is `c` for the delta model and `λ` for the pδp model.
pub fn reflection_amp(
    model: Model,
    parity: Parity,
    k: f64,
    coupling: f64,
) -> Result<ScatteringAmplitude> {
    check_inputs(k, coupling)?;
    let value = match (model, parity) {
        (Model::Delta, Parity::Even) => phase(k, coupling / 2.0),
        (Model::Delta, Parity::Odd) => Complex64::new(-1.0, 0.0),
        (Model::Pdp, Parity::Even) => Complex64::new(1.0, 0.0),
        (Model::Pdp, Parity::Odd) => phase(k, 1.0 / (2.0 * coupling)),
    };
    Ok(ScatteringAmplitude {
        model,
        parity,
        k,
        value,
    })
}

/// `B_±`, the interior amplitude `C_±` and `ω` for a finite step.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiniteWall {
    pub v0: f64,
    pub omega: f64,
    pub b: ScatteringAmplitude,
    pub c: Complex64,
}

/// Amplitudes for the step of height `v0 > k²`.
///
/// `g_tilde_plus` replaces the default `g̃_+ = √V_0` of the even pδp case;
/// it is ignored elsewhere.
pub fn finite_wall_amp(
    model: Model,
    parity: Parity,
    k: f64,
    coupling: f64,
    v0: f64,
    g_tilde_plus: Option<f64>,
) -> Result<FiniteWall> {
    check_inputs(k, coupling)?;
    if !(v0.is_finite() && v0 > k * k) {
        return Err(Error::Domain(format!(
            "wall height V0 = {v0} must exceed k² = {}",
            k * k
        )));
    }
    let omega = (v0 - k * k).sqrt();
    let ik = Complex64::new(0.0, k);
    let (b, c) = match model {
        Model::Delta => {
            // ω + g_+ = c/2 − k²/(ω + √V_0), avoiding cancellation.
            let s = match parity {
                Parity::Even => coupling / 2.0 - k * k / (omega + v0.sqrt()),
                Parity::Odd => omega,
            };
            let b = phase(k, s);
            (b, 1.0 + b)
        }
        Model::Pdp => {
            let g = match parity {
                Parity::Even => g_tilde_plus.unwrap_or_else(|| v0.sqrt()),
                Parity::Odd => 2.0 * coupling,
            };
            let b = phase(k, omega / (1.0 + omega * g));
            (b, ik * (b - 1.0) / omega)
        }
    };
    Ok(FiniteWall {
        v0,
        omega,
        b: ScatteringAmplitude {
            model,
            parity,
            k,
            value: b,
        },
        c,
    })
}

/// `n` points log-spaced over `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi > lo && lo.is_finite() && hi.is_finite()) || n < 2 {
        return Err(Error::Domain(format!("bad grid {lo}:{hi}:{n}")));
    }
    let (a, b) = (lo.ln(), hi.ln());
    Ok((0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub v0: f64,
    pub b: Complex64,
    pub deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceSweep {
    pub model: Model,
    pub parity: Parity,
    pub k: f64,
    pub coupling: f64,
    pub limit: Complex64,
    pub rows: Vec<SweepRow>,
    /// Least-squares slope of `ln|B − A|` against `ln V_0` over the last half
    /// of the grid.
    pub slope: f64,
}

impl ConvergenceSweep {
    pub fn is_monotone(&self) -> bool {
        self.rows
            .windows(2)
            .all(|w| w[1].deviation < w[0].deviation)
    }
}

/// Least-squares slope of `ys` against `xs`.
pub fn fit_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// `|B(V_0) − A|` over a grid of wall heights, sorted by `V_0`.
pub fn convergence_sweep(
    model: Model,
    parity: Parity,
    k: f64,
    coupling: f64,
    grid: &[f64],
    g_tilde_plus: Option<f64>,
) -> Result<ConvergenceSweep> {
    if grid.len() < 2 {
        return Err(Error::Domain("sweep grid needs at least two points".into()));
    }
    let limit = reflection_amp(model, parity, k, coupling)?.value;
    let mut v0s = grid.to_vec();
    v0s.sort_by(f64::total_cmp);
    let rows: Vec<SweepRow> = v0s
        .par_iter()
        .map(|&v0| {
            let b = finite_wall_amp(model, parity, k, coupling, v0, g_tilde_plus)?
                .b
                .value;
            Ok(SweepRow {
                v0,
                b,
                deviation: (b - limit).norm(),
            })
        })
        .collect::<Result<_>>()?;
    let tail = &rows[rows.len() / 2..];
    let tail = if tail.len() < 2 { &rows[..] } else { tail };
    let xs: Vec<f64> = tail.iter().map(|r| r.v0.ln()).collect();
    let ys: Vec<f64> = tail.iter().map(|r| r.deviation.ln()).collect();
    Ok(ConvergenceSweep {
        model,
        parity,
        k,
        coupling,
        limit,
        rows,
        slope: fit_slope(&xs, &ys),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn closed_form_examples() {
        let a = reflection_amp(Model::Delta, Parity::Odd, 0.7, 3.0).unwrap();
        assert_eq!(a.value, c(-1.0, 0.0));
        let a = reflection_amp(Model::Pdp, Parity::Even, 0.7, 3.0).unwrap();
        assert_eq!(a.value, c(1.0, 0.0));
        let a = reflection_amp(Model::Delta, Parity::Even, 1.0, 2.0).unwrap();
        assert!((a.value - c(0.0, -1.0)).norm() < 1e-15);
        assert!(reflection_amp(Model::Delta, Parity::Even, 0.0, 2.0).is_err());
        assert!(reflection_amp(Model::Delta, Parity::Even, 1.0, -2.0).is_err());
    }

    #[test]
    fn amplitudes_are_unimodular() {
        for model in [Model::Delta, Model::Pdp] {
            for parity in [Parity::Even, Parity::Odd] {
                for &k in &[0.2, 1.0, 3.5] {
                    let a = reflection_amp(model, parity, k, 0.8).unwrap();
                    assert!((a.value.norm() - 1.0).abs() < 1e-15);
                    for &v0 in &[20.0, 1e4, 1e8] {
                        let b = finite_wall_amp(model, parity, k, 0.8, v0, None).unwrap();
                        assert!((b.b.value.norm() - 1.0).abs() < 1e-14);
                    }
                }
            }
        }
    }

    #[test]
    fn wall_below_energy_is_rejected() {
        assert!(matches!(
            finite_wall_amp(Model::Delta, Parity::Even, 2.0, 1.0, 4.0, None),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn matching_at_origin() {
        // delta: φ continuous, φ'(0+) − φ'(0−) = g φ(0).
        let (k, cpl, v0) = (1.3, 0.9, 50.0);
        let w = finite_wall_amp(Model::Delta, Parity::Even, k, cpl, v0, None).unwrap();
        let (b, cc, om) = (w.b.value, w.c, w.omega);
        let g = cpl / 2.0 - v0.sqrt();
        assert!((1.0 + b - cc).norm() < 1e-13);
        let jump = c(0.0, k) * (b - 1.0) - om * cc;
        assert!((jump - g * cc).norm() < 1e-12);

        // pδp: φ' continuous, φ(0+) − φ(0−) = g̃ φ'(0).
        let w = finite_wall_amp(Model::Pdp, Parity::Odd, k, cpl, v0, None).unwrap();
        let (b, cc, om) = (w.b.value, w.c, w.omega);
        let d = c(0.0, k) * (b - 1.0);
        assert!((d - om * cc).norm() < 1e-13);
        assert!((1.0 + b - cc - 2.0 * cpl * d).norm() < 1e-13);
    }

    #[test]
    fn limits() {
        let b = finite_wall_amp(Model::Delta, Parity::Even, 1.0, 2.0, 1e6, None).unwrap();
        let a = reflection_amp(Model::Delta, Parity::Even, 1.0, 2.0).unwrap();
        let dev = (b.b.value - a.value).norm();
        assert!(dev < 1e-2 && dev > 1e-5, "{dev}");

        let b = finite_wall_amp(Model::Pdp, Parity::Even, 1.0, 2.0, 1e10, None).unwrap();
        assert!((b.b.value - 1.0).norm() < 1e-4);
        let b = finite_wall_amp(Model::Delta, Parity::Odd, 1.0, 2.0, 1e10, None).unwrap();
        assert!((b.b.value + 1.0).norm() < 1e-4);
    }

    #[test]
    fn g_tilde_override() {
        let a = finite_wall_amp(Model::Pdp, Parity::Even, 1.0, 0.5, 1e4, None).unwrap();
        let b = finite_wall_amp(Model::Pdp, Parity::Even, 1.0, 0.5, 1e4, Some(100.0)).unwrap();
        assert_eq!(a, b);
        let c = finite_wall_amp(Model::Pdp, Parity::Even, 1.0, 0.5, 1e4, Some(3.0)).unwrap();
        assert_ne!(a.b.value, c.b.value);
    }

    #[test]
    fn sweep_slopes() {
        let grid = log_grid(1e3, 1e9, 13).unwrap();
        for model in [Model::Delta, Model::Pdp] {
            for parity in [Parity::Even, Parity::Odd] {
                let s = convergence_sweep(model, parity, 1.0, 2.0, &grid, None).unwrap();
                assert!(s.is_monotone());
                assert!((s.slope + 0.5).abs() < 0.05, "{model} {parity} {}", s.slope);
            }
        }
    }

    #[test]
    fn log_grid_endpoints() {
        let g = log_grid(1e3, 1e9, 7).unwrap();
        assert_eq!(g.len(), 7);
        assert!((g[0] - 1e3).abs() < 1e-9 && (g[6] - 1e9).abs() < 1e-3);
        assert!((g[1] - 1e4).abs() < 1e-8);
        assert!(log_grid(1e3, 1e2, 5).is_err());
    }

    #[test]
    fn parity_parse() {
        assert_eq!("even".parse::<Parity>().unwrap(), Parity::Even);
        assert_eq!("-".parse::<Parity>().unwrap(), Parity::Odd);
        assert!("up".parse::<Parity>().is_err());
    }
}
