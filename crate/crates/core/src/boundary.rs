//! Boundary conditions, half-line reductions, the free Schrödinger equation
//! inside wedges, and the boson-delta / fermion-pδp duality.
//!
//! Facet conditions are written in the wedge coordinates `y = x_Q` of the
//! wedge on the positive side of the facet. For the pair facet
//! `y_i = y_{i+1}` between `Δ_Q` and `Δ_{QT_i}` with `D = ∂_{y_{i+1}} − ∂_{y_i}`:
//!
//! ```text
//!     delta:  ψ_Q = ψ_{QT_i},        Dψ_Q − Dψ_{QT_i} = 2c₁ψ
//!     pδp:    Dψ_Q = Dψ_{QT_i},      ψ_Q − ψ_{QT_i}  = 2λ₁ Dψ
//! ```
//!
//! and for the wall facet `y_1 = 0` between `Δ_Q` and `Δ_{QR_1}` with
//! `D = ∂_{y_1}`:
//!
//! ```text
//!     delta:  ψ_Q = ψ_{QR_1},        Dψ_Q − Dψ_{QR_1} = c₂ψ
//!     pδp:    Dψ_Q = Dψ_{QR_1},      ψ_Q − ψ_{QR_1}  = 4λ₂ Dψ
//! ```
//!
//! Both sides are evaluated from their closed-form wedge expansions at the
//! same facet point.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bethe::{
    compute_coefficients, evaluate_psi, BetheCoefficients, CoefficientMode, Momenta,
};
use crate::error::{Error, Result};
use crate::exchange::{Model, ModelSpec};
use crate::representations::{Sector, Sign};
use crate::weyl_group::{classify_wedge, Generator, SignedPermutation};

/// Default tolerance for boundary-condition residuals.
pub const BOUNDARY_TOLERANCE: f64 = 1e-10;

/// Minimum gap between distinct wedge coordinates of a random probe.
pub const PROBE_GAP: f64 = 0.1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Facet {
    /// `x_{Qi} = x_{Q(i+1)}`, 1-based `i`.
    Pair { i: usize },
    /// `x_{Q1} = 0`.
    Wall,
}

impl Facet {
    fn generator(self) -> Generator {
        match self {
            Facet::Pair { i } => Generator::T(i),
            Facet::Wall => Generator::R1,
        }
    }
}

/// A point on one facet of the wedge `Δ_Q`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryProbe {
    pub facet: Facet,
    pub wedge: SignedPermutation,
    pub point: Vec<f64>,
}

impl BoundaryProbe {
    /// Validates that `point` lies on the facet of `wedge` and strictly
    /// inside it.
    pub fn new(facet: Facet, wedge: SignedPermutation, point: Vec<f64>) -> Result<Self> {
        let n = wedge.rank();
        if point.len() != n {
            return Err(Error::Dimension {
                expected: n,
                found: point.len(),
            });
        }
        if let Facet::Pair { i } = facet {
            if i == 0 || i >= n {
                return Err(Error::Index {
                    what: "pair facet",
                    index: i,
                    rank: n,
                });
            }
        }
        let y = wedge.act(&point);
        let (on_facet, merged) = match facet {
            Facet::Pair { i } => (y[i - 1] == y[i], i),
            Facet::Wall => (y[0] == 0.0, 0),
        };
        if !on_facet {
            return Err(Error::Geometry(format!(
                "point {point:?} is not on facet {facet:?}"
            )));
        }
        // Apart from the facet equation, 0 < y_1 < … < y_N strictly.
        let mut prev = 0.0;
        for (j, &yj) in y.iter().enumerate() {
            let strict = !(matches!(facet, Facet::Pair { .. }) && j == merged);
            let wall_coord = matches!(facet, Facet::Wall) && j == 0;
            if wall_coord {
                continue;
            }
            if (strict && yj <= prev) || (!strict && yj < prev) {
                return Err(Error::Geometry(format!(
                    "point {point:?} is not inside facet {facet:?} of wedge {wedge}"
                )));
            }
            prev = yj;
        }
        Ok(Self {
            facet,
            wedge,
            point,
        })
    }

    /// A random probe on `facet` of a uniformly random wedge, with wedge
    /// coordinates at least [`PROBE_GAP`] apart away from the facet equation.
    pub fn random<R: Rng + ?Sized>(rank: usize, facet: Facet, rng: &mut R) -> Result<Self> {
        let wedge = SignedPermutation::random(rank, rng);
        let mut y = Vec::with_capacity(rank);
        let mut level = 0.0;
        for _ in 0..rank {
            level += PROBE_GAP + rng.gen_range(0.0..1.0);
            y.push(level);
        }
        match facet {
            Facet::Pair { i } if i >= 1 && i < rank => y[i] = y[i - 1],
            Facet::Pair { i } => {
                return Err(Error::Index {
                    what: "pair facet",
                    index: i,
                    rank,
                })
            }
            Facet::Wall => y[0] = 0.0,
        }
        let point = wedge.inverse().act(&y);
        Self::new(facet, wedge, point)
    }

    /// The wedge on the other side of the facet.
    pub fn neighbour(&self) -> SignedPermutation {
        let g = self
            .facet
            .generator()
            .element(self.wedge.rank())
            .expect("facet in range");
        self.wedge.mul_unchecked(&g)
    }
}

/// The two residuals of one facet condition pair.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FacetResiduals {
    /// Continuity of `ψ` (delta) or of the normal derivative (pδp).
    pub matching: f64,
    /// The jump condition.
    pub jump: f64,
}

impl FacetResiduals {
    pub fn max(&self) -> f64 {
        self.matching.max(self.jump)
    }
}

/// `(ψ, ∂_{y_m} ψ)` from the expansion of `side`, in the coordinates of `frame`.
fn side_values(
    coeffs: &BetheCoefficients,
    x: &[f64],
    side: &SignedPermutation,
    frame: &SignedPermutation,
) -> Result<(Complex64, Vec<Complex64>)> {
    let s = evaluate_psi(coeffs, x, Some(side))?;
    let dy = (0..frame.rank())
        .map(|m| s.gradient[frame.perm()[m]] * f64::from(frame.sign(m)))
        .collect();
    Ok((s.value, dy))
}

fn facet_residuals(coeffs: &BetheCoefficients, probe: &BoundaryProbe) -> Result<FacetResiduals> {
    let q = &probe.wedge;
    let (psi_q, dy_q) = side_values(coeffs, &probe.point, q, q)?;
    let (psi_n, dy_n) = side_values(coeffs, &probe.point, &probe.neighbour(), q)?;
    let spec = coeffs.spec();
    let (d_q, d_n) = match probe.facet {
        Facet::Pair { i } => (dy_q[i] - dy_q[i - 1], dy_n[i] - dy_n[i - 1]),
        Facet::Wall => (dy_q[0], dy_n[0]),
    };
    let (strength_delta, strength_pdp) = match probe.facet {
        Facet::Pair { .. } => (2.0 * spec.pair_coupling, 2.0 * spec.pair_coupling),
        Facet::Wall => (spec.boundary_coupling, 4.0 * spec.boundary_coupling),
    };
    Ok(match spec.model {
        Model::Delta => FacetResiduals {
            matching: (psi_q - psi_n).norm(),
            jump: (d_q - d_n - strength_delta * psi_q).norm(),
        },
        Model::Pdp => FacetResiduals {
            matching: (d_q - d_n).norm(),
            jump: (psi_q - psi_n - strength_pdp * d_q).norm(),
        },
    })
}

/// Residuals of the pair-contact conditions at a probe.
pub fn check_pair_boundary(
    coeffs: &BetheCoefficients,
    probe: &BoundaryProbe,
) -> Result<FacetResiduals> {
    if !matches!(probe.facet, Facet::Pair { .. }) {
        return Err(Error::Usage(
            "check_pair_boundary needs a pair-contact probe".into(),
        ));
    }
    facet_residuals(coeffs, probe)
}

/// Residuals of the wall-contact conditions at a probe.
pub fn check_wall_boundary(
    coeffs: &BetheCoefficients,
    probe: &BoundaryProbe,
) -> Result<FacetResiduals> {
    if probe.facet != Facet::Wall {
        return Err(Error::Usage(
            "check_wall_boundary needs a wall-contact probe".into(),
        ));
    }
    facet_residuals(coeffs, probe)
}

/// One evaluated probe.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeResult {
    pub probe: BoundaryProbe,
    pub residuals: FacetResiduals,
}

/// `probes` random probes on every facet type (`N−1` pair facets and the
/// wall), drawn sequentially from `seed` and evaluated in parallel.
pub fn boundary_sweep(
    coeffs: &BetheCoefficients,
    probes: usize,
    seed: u64,
) -> Result<Vec<ProbeResult>> {
    let n = coeffs.rank();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let facets: Vec<Facet> = (1..n)
        .map(|i| Facet::Pair { i })
        .chain([Facet::Wall])
        .collect();
    let mut all = Vec::with_capacity(facets.len() * probes);
    for &facet in &facets {
        for _ in 0..probes {
            all.push(BoundaryProbe::random(n, facet, &mut rng)?);
        }
    }
    all.into_par_iter()
        .map(|probe| {
            let residuals = facet_residuals(coeffs, &probe)?;
            Ok(ProbeResult { probe, residuals })
        })
        .collect()
}

fn halfline_wedge(x: &[f64], j: usize) -> Result<SignedPermutation> {
    let mut others: Vec<usize> = (0..x.len()).filter(|&m| m != j).collect();
    others.sort_by(|&a, &b| x[a].total_cmp(&x[b]));
    let mut perm = vec![j];
    perm.extend(others);
    let signs = vec![1i8; x.len()];
    SignedPermutation::new(&signs, &perm)
}

/// Residuals of the reduced wall conditions at `x_j = 0^+`, one per particle.
///
/// For each `j` the point is moved onto the wall `x_j = 0` and evaluated from
/// the wedge with `x_j` smallest:
///
/// | model | even (`R̂ = +1`) | odd (`R̂ = −1`) |
/// |-------|-----------------|-----------------|
/// | delta | `2ψ' − c₂ψ`     | `ψ`             |
/// | pδp   | `ψ'`            | `ψ − 2λ₂ψ'`     |
pub fn check_halfline_reduction(coeffs: &BetheCoefficients, x: &[f64]) -> Result<Vec<f64>> {
    let sector = coeffs
        .sector()
        .ok_or_else(|| Error::Usage("half-line reduction needs a scalar sector".into()))?;
    let n = coeffs.rank();
    if x.len() != n {
        return Err(Error::Dimension {
            expected: n,
            found: x.len(),
        });
    }
    if x.iter().any(|&v| v.is_nan() || v <= 0.0) {
        return Err(Error::Geometry(format!(
            "point {x:?} must have all coordinates > 0"
        )));
    }
    classify_wedge(x).map_err(|_| Error::Geometry(format!("point {x:?} is not generic")))?;

    let spec = coeffs.spec();
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let mut p = x.to_vec();
        p[j] = 0.0;
        let w = halfline_wedge(&p, j)?;
        let s = evaluate_psi(coeffs, &p, Some(&w))?;
        let (psi, d) = (s.value, s.gradient[j]);
        let r = match (spec.model, sector.reflection) {
            (Model::Delta, Sign::Plus) => 2.0 * d - spec.boundary_coupling * psi,
            (Model::Delta, Sign::Minus) => psi,
            (Model::Pdp, Sign::Plus) => d,
            (Model::Pdp, Sign::Minus) => psi - 2.0 * spec.boundary_coupling * d,
        };
        out.push(r.norm());
    }
    Ok(out)
}

/// Central-difference check of `(Δ + E)ψ = 0` at one interior point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenCheck {
    pub h: f64,
    pub value: Complex64,
    pub laplacian: Complex64,
    pub energy: f64,
    /// `|Δ_h ψ + Eψ|`.
    pub residual: f64,
    /// `|−Δ_h ψ/ψ − E| / E`.
    pub energy_relative_error: f64,
}

pub fn check_eigen(coeffs: &BetheCoefficients, x: &[f64], h: f64) -> Result<EigenCheck> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::Domain(format!("step must be positive, got {h}")));
    }
    let wedge = classify_wedge(x)
        .map_err(|_| Error::Geometry(format!("point {x:?} is not inside a wedge")))?;
    let psi_at = |p: &[f64]| -> Result<Complex64> {
        match classify_wedge(p) {
            Ok(w) if w == wedge => Ok(evaluate_psi(coeffs, p, Some(&wedge))?.value),
            _ => Err(Error::Geometry(format!(
                "stencil point {p:?} leaves the wedge of {x:?}; reduce h"
            ))),
        }
    };
    let value = psi_at(x)?;
    let mut laplacian = Complex64::default();
    for j in 0..x.len() {
        let mut p = x.to_vec();
        p[j] = x[j] + h;
        let plus = psi_at(&p)?;
        p[j] = x[j] - h;
        let minus = psi_at(&p)?;
        laplacian += (plus - 2.0 * value + minus) / (h * h);
    }
    let energy = coeffs.energy();
    Ok(EigenCheck {
        h,
        value,
        laplacian,
        energy,
        residual: (laplacian + energy * value).norm(),
        energy_relative_error: ((-laplacian / value).re - energy).abs() / energy,
    })
}

/// Largest entrywise difference between two coefficient tables.
pub fn table_difference(a: &BetheCoefficients, b: &BetheCoefficients) -> Result<f64> {
    if a.len() != b.len() || a.dim() != b.dim() {
        return Err(Error::Dimension {
            expected: a.len() * a.dim(),
            found: b.len() * b.dim(),
        });
    }
    let mut worst = 0.0f64;
    for p in 0..a.len() {
        for (x, y) in a.coefficient(p).iter().zip(b.coefficient(p)) {
            worst = worst.max((x - y).norm());
        }
    }
    Ok(worst)
}

/// `count` points with `0 < x_1 < … < x_N`, consecutive gaps at least
/// [`PROBE_GAP`].
pub fn random_fundamental_points<R: Rng + ?Sized>(
    rank: usize,
    count: usize,
    rng: &mut R,
) -> Vec<Vec<f64>> {
    (0..count)
        .map(|_| {
            let mut level = 0.0;
            (0..rank)
                .map(|_| {
                    level += PROBE_GAP + rng.gen_range(0.0..1.0);
                    level
                })
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualityReport {
    pub table_difference: f64,
    pub max_psi_difference: f64,
    pub points: usize,
}

/// Compares the boson delta model at `(c₁, c₂)` with the fermion pδp model
/// at `(1/c₁, 1/c₂)` on the fundamental wedge.
pub fn duality_compare(
    k: &Momenta,
    c1: f64,
    c2: f64,
    points: &[Vec<f64>],
) -> Result<DualityReport> {
    let n = k.rank();
    for x in points {
        let fundamental = x.len() == n && x[0] > 0.0 && x.windows(2).all(|w| w[0] < w[1]);
        if !fundamental {
            return Err(Error::Geometry(format!(
                "{x:?} is not in the fundamental wedge"
            )));
        }
    }
    let delta = ModelSpec::delta(c1, c2)?;
    let pdp = ModelSpec::pdp(1.0 / c1, 1.0 / c2)?;
    let boson = compute_coefficients(
        k,
        &delta,
        &CoefficientMode::scalar_default(Sector::BOSON_EVEN),
    )?;
    let fermion = compute_coefficients(
        k,
        &pdp,
        &CoefficientMode::scalar_default(Sector::FERMION_ODD),
    )?;
    let table = table_difference(&boson, &fermion)?;
    let mut worst = 0.0f64;
    for x in points {
        let a = evaluate_psi(&boson, x, None)?.value;
        let b = evaluate_psi(&fermion, x, None)?.value;
        worst = worst.max((a - b).norm());
    }
    Ok(DualityReport {
        table_difference: table,
        max_psi_difference: worst,
        points: points.len(),
    })
}
