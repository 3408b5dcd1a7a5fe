//! Two-body and boundary scattering operators `Y_i(u)` and `Z(u)`.
//!
//! Both models write their operators as affine combinations of a generator:
//!
//! | model | `Y_i(u)`                  | `Z(u)`                    |
//! |-------|---------------------------|---------------------------|
//! | delta | `a(u) + b(u) T̂_i`         | `ã(u) + b̃(u) R̂_1`         |
//! | pδp   | `a(u) + b(u) T̂_i`         | `ã(u) + b̃(u) R̂_1`         |
//!
//! with, for the delta model, `a = c₁/(iu − c₁)`, `b = iu/(iu − c₁)` (tilde:
//! `c₂`), and for the pδp model `a = iu/(iu − 1/λ₁)`, `b = −(1/λ₁)/(iu − 1/λ₁)`
//! (tilde: `λ₂`). Operators are kept symbolic and applied to vectors in
//! `O(dim)`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::representations::{Representation, Sign};
use crate::weyl_group::{Generator, SignedPermutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// Contact interactions `δ(x_j ∓ x_k)` and `δ(x_j)`.
    Delta,
    /// Momentum-dependent contact interactions `∂δ∂`.
    Pdp,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Delta => "delta",
            Model::Pdp => "pdp",
        })
    }
}

impl FromStr for Model {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "delta" => Ok(Model::Delta),
            "pdp" => Ok(Model::Pdp),
            other => Err(Error::Domain(format!("unknown model {other:?}"))),
        }
    }
}

/// A model with its pair coupling (`c₁` or `λ₁`) and boundary coupling
/// (`c₂` or `λ₂`). Both are strictly positive, so there are no bound states.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub model: Model,
    pub pair_coupling: f64,
    pub boundary_coupling: f64,
}

impl ModelSpec {
    pub fn new(model: Model, pair_coupling: f64, boundary_coupling: f64) -> Result<Self> {
        for (name, v) in [("pair", pair_coupling), ("boundary", boundary_coupling)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Domain(format!(
                    "{name} coupling must be finite and positive, got {v}"
                )));
            }
        }
        Ok(Self {
            model,
            pair_coupling,
            boundary_coupling,
        })
    }

    pub fn delta(c1: f64, c2: f64) -> Result<Self> {
        Self::new(Model::Delta, c1, c2)
    }

    pub fn pdp(lambda1: f64, lambda2: f64) -> Result<Self> {
        Self::new(Model::Pdp, lambda1, lambda2)
    }
}

/// Coefficients of `a + b·Ĝ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoefficientPair {
    pub a: Complex64,
    pub b: Complex64,
}

impl CoefficientPair {
    /// Eigenvalue on the `Ĝ = ε` eigenspace.
    pub fn eigenvalue(&self, eps: f64) -> Complex64 {
        self.a + self.b * eps
    }
}

/// `a = α/d`, `b = β/d` kept as numerators over a common denominator so
/// that the sector eigenvalues `(α ± β)/d` are a single division. This makes
/// the invisible combinations come out as exactly `±1`.
#[derive(Clone, Copy, Debug)]
struct Ratio {
    alpha: Complex64,
    beta: Complex64,
    den: Complex64,
}

impl Ratio {
    fn delta(u: Complex64, c: f64) -> Self {
        let iu = Complex64::i() * u;
        Self {
            alpha: c.into(),
            beta: iu,
            den: iu - c,
        }
    }

    fn pdp(u: Complex64, lambda: f64) -> Self {
        let inv = 1.0 / lambda;
        let iu = Complex64::i() * u;
        Self {
            alpha: iu,
            beta: (-inv).into(),
            den: iu - inv,
        }
    }

    fn pair(&self) -> CoefficientPair {
        CoefficientPair {
            a: self.alpha / self.den,
            b: self.beta / self.den,
        }
    }

    /// Eigenvalues on the `Ĝ = +1` and `Ĝ = −1` eigenspaces.
    fn eigenvalues(&self) -> [Complex64; 2] {
        [
            (self.alpha + self.beta) / self.den,
            (self.alpha - self.beta) / self.den,
        ]
    }
}

fn pair_ratio(u: Complex64, spec: &ModelSpec) -> Ratio {
    match spec.model {
        Model::Delta => Ratio::delta(u, spec.pair_coupling),
        Model::Pdp => Ratio::pdp(u, spec.pair_coupling),
    }
}

fn boundary_ratio(u: Complex64, spec: &ModelSpec) -> Ratio {
    match spec.model {
        Model::Delta => Ratio::delta(u, spec.boundary_coupling),
        Model::Pdp => Ratio::pdp(u, spec.boundary_coupling),
    }
}

/// `a(u) = c₁/(iu − c₁)`, `b(u) = iu/(iu − c₁)`.
pub fn coeffs_delta(u: f64, c1: f64) -> CoefficientPair {
    Ratio::delta(u.into(), c1).pair()
}

/// `a(u) = iu/(iu − 1/λ₁)`, `b(u) = −(1/λ₁)/(iu − 1/λ₁)`.
pub fn coeffs_pdp(u: f64, lambda1: f64) -> CoefficientPair {
    Ratio::pdp(u.into(), lambda1).pair()
}

/// Coefficients of `Y_i(u)` for the given model.
pub fn pair_coeffs(u: f64, spec: &ModelSpec) -> CoefficientPair {
    pair_coeffs_at(u.into(), spec)
}

/// Coefficients `(ã, b̃)` of `Z(u)` for the given model.
pub fn boundary_coeffs(u: f64, spec: &ModelSpec) -> CoefficientPair {
    boundary_coeffs_at(u.into(), spec)
}

/// Complex-argument variants, used only by tests.
pub(crate) fn pair_coeffs_at(u: Complex64, spec: &ModelSpec) -> CoefficientPair {
    pair_ratio(u, spec).pair()
}

pub(crate) fn boundary_coeffs_at(u: Complex64, spec: &ModelSpec) -> CoefficientPair {
    boundary_ratio(u, spec).pair()
}

#[derive(Clone, Debug)]
pub enum OperatorKind {
    /// The representation matrix of a group element.
    Element(SignedPermutation),
    /// `a·Î + b·Ĝ` for a generator `G`.
    Affine {
        a: Complex64,
        b: Complex64,
        generator: Generator,
        /// Values on the `Ĝ = +1` and `Ĝ = −1` eigenspaces.
        eigenvalues: [Complex64; 2],
    },
}

/// A linear operator in a given representation.
#[derive(Clone, Debug)]
pub struct RepOperator {
    rep: Representation,
    kind: OperatorKind,
}

impl RepOperator {
    pub fn element(rep: &Representation, g: SignedPermutation) -> Result<Self> {
        if g.rank() != rep.rank() {
            return Err(Error::Dimension {
                expected: rep.rank(),
                found: g.rank(),
            });
        }
        Ok(Self {
            rep: rep.clone(),
            kind: OperatorKind::Element(g),
        })
    }

    pub fn affine(
        rep: &Representation,
        coeffs: CoefficientPair,
        generator: Generator,
    ) -> Result<Self> {
        if !generator.in_range(rep.rank()) {
            let index = match generator {
                Generator::T(i) => i,
                Generator::R1 => 1,
            };
            return Err(Error::Index {
                what: "generator",
                index,
                rank: rep.rank(),
            });
        }
        Ok(Self {
            rep: rep.clone(),
            kind: OperatorKind::Affine {
                a: coeffs.a,
                b: coeffs.b,
                generator,
                eigenvalues: [coeffs.a + coeffs.b, coeffs.a - coeffs.b],
            },
        })
    }

    fn from_ratio(rep: &Representation, ratio: Ratio, generator: Generator) -> Result<Self> {
        let mut op = Self::affine(rep, ratio.pair(), generator)?;
        if let OperatorKind::Affine { eigenvalues, .. } = &mut op.kind {
            *eigenvalues = ratio.eigenvalues();
        }
        Ok(op)
    }

    pub fn kind(&self) -> &OperatorKind {
        &self.kind
    }

    pub fn representation(&self) -> &Representation {
        &self.rep
    }

    pub fn dimension(&self) -> usize {
        self.rep.dim()
    }

    /// The number this operator multiplies by in a one-dimensional sector.
    pub fn scalar_value(&self) -> Option<Complex64> {
        let sector = self.rep.sector()?;
        Some(match &self.kind {
            OperatorKind::Element(g) => sector.value(g).value().into(),
            OperatorKind::Affine {
                generator,
                eigenvalues,
                ..
            } => {
                let sign = match generator {
                    Generator::T(_) => sector.exchange,
                    Generator::R1 => sector.reflection,
                };
                match sign {
                    Sign::Plus => eigenvalues[0],
                    Sign::Minus => eigenvalues[1],
                }
            }
        })
    }

    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dimension() {
            return Err(Error::Dimension {
                expected: self.dimension(),
                found: v.len(),
            });
        }
        let mut out = vec![Complex64::default(); v.len()];
        self.apply_into(v, &mut out);
        Ok(out)
    }

    /// `out = self · v`; lengths must already match.
    pub(crate) fn apply_into(&self, v: &[Complex64], out: &mut [Complex64]) {
        match &self.kind {
            OperatorKind::Element(g) => {
                let img = self.rep.act(g, v).expect("rank checked at construction");
                out.copy_from_slice(&img);
            }
            OperatorKind::Affine {
                a, b, generator, ..
            } => {
                if self.rep.is_regular() {
                    for (o, x) in out.iter_mut().zip(v) {
                        *o = a * x;
                    }
                    self.rep.add_generator_image(*generator, *b, v, out);
                } else {
                    out[0] = self.scalar_value().expect("scalar representation") * v[0];
                }
            }
        }
    }
}

/// The two-body operator `Y_i(u)`, `1 ≤ i ≤ N−1`.
pub fn y_op(i: usize, u: f64, spec: &ModelSpec, rep: &Representation) -> Result<RepOperator> {
    if i == 0 || i >= rep.rank() {
        return Err(Error::Index {
            what: "Y_i",
            index: i,
            rank: rep.rank(),
        });
    }
    RepOperator::from_ratio(rep, pair_ratio(u.into(), spec), Generator::T(i))
}

/// The boundary operator `Z(u)`.
pub fn z_op(u: f64, spec: &ModelSpec, rep: &Representation) -> RepOperator {
    RepOperator::from_ratio(rep, boundary_ratio(u.into(), spec), Generator::R1)
        .expect("R_1 exists for every rank ≥ 1")
}

/// A product `O_1 O_2 ⋯ O_m`, applied right to left.
#[derive(Clone, Debug, Default)]
pub struct OperatorChain(pub Vec<RepOperator>);

impl OperatorChain {
    pub fn new(ops: Vec<RepOperator>) -> Self {
        Self(ops)
    }

    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        let mut cur = v.to_vec();
        let mut next = vec![Complex64::default(); v.len()];
        for op in self.0.iter().rev() {
            if op.dimension() != cur.len() {
                return Err(Error::Dimension {
                    expected: op.dimension(),
                    found: cur.len(),
                });
            }
            op.apply_into(&cur, &mut next);
            std::mem::swap(&mut cur, &mut next);
        }
        Ok(cur)
    }
}
