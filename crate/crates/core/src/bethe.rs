//! Bethe coefficients `A_P(Q)` and pointwise evaluation of
//!
//! ```text
//!     ψ(x) = Σ_P A_P(Q) exp(i k_P · x_Q),   x ∈ Δ_Q.
//! ```
//!
//! Coefficients are built from `A_I` by walking the Cayley graph of `W_N`
//! breadth first with
//!
//! ```text
//!     A_{P T_i} = Y_i(k_{Pi} − k_{P(i+1)}) A_P,   A_{P R_1} = Z(−2 k_{P1}) A_P,
//! ```
//!
//! the inverted forms of `A_P = Y_i(k_{P(i+1)} − k_{Pi}) A_{PT_i}` and
//! `A_P = Z(2k_{P1}) A_{PR_1}`. Every edge that reaches an element already
//! assigned is used as a cross-check.

use std::collections::VecDeque;
use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exchange::{y_op, z_op, ModelSpec, RepOperator};
use crate::representations::{Representation, Sector};
use crate::weyl_group::{
    classify_wedge, word_for, Generator, GeneratorWord, SignedPermutation, WeylGroup,
};

/// Tolerance of the revisit cross-check, relative to `max(1, ‖A_I‖_∞)`.
pub const CROSS_CHECK_TOLERANCE: f64 = 1e-12;

/// Momenta `k_1 … k_N` with nonzero, pairwise distinct moduli.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Momenta(Vec<f64>);

impl Momenta {
    pub fn new(k: Vec<f64>) -> Result<Self> {
        if k.is_empty() {
            return Err(Error::Precondition(
                "at least one momentum is required".into(),
            ));
        }
        if k.iter().any(|x| !x.is_finite() || *x == 0.0) {
            return Err(Error::Precondition(format!(
                "momenta must be finite and nonzero: {k:?}"
            )));
        }
        for i in 0..k.len() {
            for j in i + 1..k.len() {
                if k[i].abs() == k[j].abs() {
                    return Err(Error::Precondition(format!(
                        "momenta {} and {} have equal modulus",
                        k[i], k[j]
                    )));
                }
            }
        }
        Ok(Self(k))
    }

    /// Draws generic momenta with `|k_j| ∈ [0.3, 3]` and moduli at least
    /// `0.1` apart.
    pub fn random<R: Rng + ?Sized>(rank: usize, rng: &mut R) -> Self {
        loop {
            let k: Vec<f64> = (0..rank)
                .map(|_| {
                    let m = rng.gen_range(0.3..3.0);
                    if rng.gen_bool(0.5) {
                        m
                    } else {
                        -m
                    }
                })
                .collect();
            let well_separated =
                (0..rank).all(|i| (i + 1..rank).all(|j| (k[i].abs() - k[j].abs()).abs() >= 0.1));
            if well_separated {
                return Self(k);
            }
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }
}

/// `E = Σ k_j²`.
pub fn energy(k: &[f64]) -> f64 {
    k.iter().map(|x| x * x).sum()
}

/// How `A_P(Q)` depends on the wedge `Q`.
#[derive(Clone, Debug, PartialEq)]
pub enum CoefficientMode {
    /// Distinguishable particles: `A_P` is a vector over all wedges.
    Regular { initial: Vec<Complex64> },
    /// A one-dimensional sector: `A_P(Q) = χ(Q)·A_P` with scalar `A_P`.
    Scalar { sector: Sector, initial: Complex64 },
}

impl CoefficientMode {
    /// Regular mode with `A_I = e_I`, the basis vector of the identity wedge.
    pub fn regular_default(rank: usize) -> Self {
        let n = crate::weyl_group::group_order(rank);
        let mut initial = vec![Complex64::default(); n];
        initial[0] = Complex64::new(1.0, 0.0);
        CoefficientMode::Regular { initial }
    }

    /// Scalar mode with `A_I = 1`.
    pub fn scalar_default(sector: Sector) -> Self {
        CoefficientMode::Scalar {
            sector,
            initial: Complex64::new(1.0, 0.0),
        }
    }

    fn representation(&self, group: &Arc<WeylGroup>) -> Representation {
        match self {
            CoefficientMode::Regular { .. } => Representation::Regular(group.clone()),
            CoefficientMode::Scalar { sector, .. } => Representation::scalar(group.rank(), *sector),
        }
    }

    fn initial(&self) -> Vec<Complex64> {
        match self {
            CoefficientMode::Regular { initial } => initial.clone(),
            CoefficientMode::Scalar { initial, .. } => vec![*initial],
        }
    }
}

/// The full table `P ↦ A_P`, immutable after construction.
#[derive(Clone, Debug)]
pub struct BetheCoefficients {
    momenta: Momenta,
    spec: ModelSpec,
    group: Arc<WeylGroup>,
    rep: Representation,
    /// `k_P` for every `P`, flattened row-major.
    k_p: Vec<f64>,
    /// `A_P` for every `P`, flattened row-major with stride `dim`.
    table: Vec<Complex64>,
    dim: usize,
}

impl BetheCoefficients {
    pub fn momenta(&self) -> &Momenta {
        &self.momenta
    }

    pub fn spec(&self) -> &ModelSpec {
        &self.spec
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    pub fn representation(&self) -> &Representation {
        &self.rep
    }

    pub fn sector(&self) -> Option<Sector> {
        self.rep.sector()
    }

    /// Length of each `A_P`: `2^N·N!` in regular mode, 1 in a sector.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.group.order()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `A_P` for the element with canonical index `p`.
    pub fn coefficient(&self, p: usize) -> &[Complex64] {
        &self.table[p * self.dim..(p + 1) * self.dim]
    }

    pub fn coefficient_of(&self, p: &SignedPermutation) -> Result<&[Complex64]> {
        Ok(self.coefficient(self.group.index_of(p)?))
    }

    /// `A_P(Q)` for canonical indices `p`, `q`.
    pub fn entry(&self, p: usize, q: usize) -> Complex64 {
        match &self.rep {
            Representation::Regular(_) => self.table[p * self.dim + q],
            Representation::Scalar { sector, .. } => {
                self.table[p] * sector.value(self.group.element(q)).value()
            }
        }
    }

    fn k_of(&self, p: usize) -> &[f64] {
        let n = self.rank();
        &self.k_p[p * n..(p + 1) * n]
    }

    pub fn energy(&self) -> f64 {
        energy(self.momenta.values())
    }
}

/// Operator taking `A_P` to `A_{P·g}`.
fn step_operator(
    p: &SignedPermutation,
    k: &[f64],
    g: Generator,
    spec: &ModelSpec,
    rep: &Representation,
) -> Result<RepOperator> {
    let kp = p.act(k);
    match g {
        Generator::T(i) => y_op(i, kp[i - 1] - kp[i], spec, rep),
        Generator::R1 => Ok(z_op(-2.0 * kp[0], spec, rep)),
    }
}

fn scale(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm()).fold(1.0, f64::max)
}

fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn word_from_parents(
    parents: &[Option<(usize, Generator)>],
    rank: usize,
    mut at: usize,
) -> GeneratorWord {
    let mut letters = Vec::new();
    while let Some((prev, g)) = parents[at] {
        letters.push(g);
        at = prev;
    }
    letters.reverse();
    GeneratorWord::new(rank, letters)
}

/// Builds every `A_P` from `A_I`.
///
/// Elements are discovered breadth first, visiting the generators of each
/// element in slot order, so the table is reproducible bit for bit.
pub fn compute_coefficients(
    k: &Momenta,
    spec: &ModelSpec,
    mode: &CoefficientMode,
) -> Result<BetheCoefficients> {
    let rank = k.rank();
    let group = Arc::new(WeylGroup::new(rank)?);
    compute_coefficients_in(group, k, spec, mode)
}

/// As [`compute_coefficients`], reusing an already enumerated group.
pub fn compute_coefficients_in(
    group: Arc<WeylGroup>,
    k: &Momenta,
    spec: &ModelSpec,
    mode: &CoefficientMode,
) -> Result<BetheCoefficients> {
    let rank = k.rank();
    if group.rank() != rank {
        return Err(Error::Dimension {
            expected: group.rank(),
            found: rank,
        });
    }
    let rep = mode.representation(&group);
    let dim = rep.dim();
    let initial = mode.initial();
    if initial.len() != dim {
        return Err(Error::Dimension {
            expected: dim,
            found: initial.len(),
        });
    }
    let order = group.order();
    let tol = CROSS_CHECK_TOLERANCE * scale(&initial);

    let mut table = vec![Complex64::default(); order * dim];
    let mut assigned = vec![false; order];
    let mut parents: Vec<Option<(usize, Generator)>> = vec![None; order];
    table[..dim].copy_from_slice(&initial);
    assigned[0] = true;

    let mut queue = VecDeque::from([0usize]);
    let mut next = vec![Complex64::default(); dim];
    while let Some(p) = queue.pop_front() {
        let pe = group.element(p).clone();
        for g in group.generators() {
            let q = group.right_mul(p, g);
            let op = step_operator(&pe, k.values(), g, spec, &rep)?;
            op.apply_into(&table[p * dim..(p + 1) * dim], &mut next);
            if assigned[q] {
                let residual = max_diff(&table[q * dim..(q + 1) * dim], &next);
                if residual > tol {
                    let mut revisit = word_from_parents(&parents, rank, p);
                    revisit.push(g);
                    return Err(Error::Inconsistent {
                        element: q,
                        assigned: word_from_parents(&parents, rank, q).to_string(),
                        revisit: revisit.to_string(),
                        residual,
                    });
                }
            } else {
                table[q * dim..(q + 1) * dim].copy_from_slice(&next);
                assigned[q] = true;
                parents[q] = Some((p, g));
                queue.push_back(q);
            }
        }
    }

    let k_p = group
        .elements()
        .iter()
        .flat_map(|p| p.act(k.values()))
        .collect();
    Ok(BetheCoefficients {
        momenta: k.clone(),
        spec: *spec,
        group,
        rep,
        k_p,
        table,
        dim,
    })
}

/// `A_P` obtained by transporting `A_I` along the letters of a word for `P`.
pub fn transport_along_word(
    k: &Momenta,
    spec: &ModelSpec,
    rep: &Representation,
    initial: &[Complex64],
    word: &GeneratorWord,
) -> Result<Vec<Complex64>> {
    if word.rank() != k.rank() || rep.rank() != k.rank() {
        return Err(Error::Dimension {
            expected: k.rank(),
            found: word.rank(),
        });
    }
    if initial.len() != rep.dim() {
        return Err(Error::Dimension {
            expected: rep.dim(),
            found: initial.len(),
        });
    }
    let mut p = SignedPermutation::identity(k.rank());
    let mut cur = initial.to_vec();
    let mut next = vec![Complex64::default(); cur.len()];
    for &g in word.letters() {
        let op = step_operator(&p, k.values(), g, spec, rep)?;
        op.apply_into(&cur, &mut next);
        std::mem::swap(&mut cur, &mut next);
        p = p.mul_unchecked(&g.element(k.rank())?);
    }
    Ok(cur)
}

/// Difference between the coefficients transported along two words.
pub fn word_pair_residual(
    k: &Momenta,
    spec: &ModelSpec,
    rep: &Representation,
    initial: &[Complex64],
    w1: &GeneratorWord,
    w2: &GeneratorWord,
) -> Result<f64> {
    if w1.evaluate()? != w2.evaluate()? {
        return Err(Error::Precondition(format!(
            "words [{w1}] and [{w2}] evaluate to different elements"
        )));
    }
    let a = transport_along_word(k, spec, rep, initial, w1)?;
    let b = transport_along_word(k, spec, rep, initial, w2)?;
    Ok(max_diff(&a, &b))
}

/// Rewrite steps applied to the canonical word in each trial.
pub const REWRITE_STEPS: usize = 12;

/// Largest coefficient difference between the canonical word of a random
/// `P` and a rewritten equivalent word, over `trials` draws.
///
/// `A_I` is `e_I` in the regular representation and 1 in a sector.
pub fn word_independence_test(
    k: &Momenta,
    spec: &ModelSpec,
    rep: &Representation,
    trials: usize,
    seed: u64,
) -> Result<f64> {
    if trials == 0 {
        return Err(Error::Precondition("trial count must be at least 1".into()));
    }
    let initial = match rep {
        Representation::Regular(g) => {
            let mut v = vec![Complex64::default(); g.order()];
            v[0] = Complex64::new(1.0, 0.0);
            v
        }
        Representation::Scalar { .. } => vec![Complex64::new(1.0, 0.0)],
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let p = SignedPermutation::random(k.rank(), &mut rng);
        let w1 = word_for(&p);
        let w2 = w1.random_rewrite(REWRITE_STEPS, &mut rng);
        worst = worst.max(word_pair_residual(k, spec, rep, &initial, &w1, &w2)?);
    }
    Ok(worst)
}

/// `ψ` and `∇ψ` at one point, from the expansion of wedge `wedge`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WavefunctionSample {
    pub point: Vec<f64>,
    pub wedge: SignedPermutation,
    pub value: Complex64,
    pub gradient: Vec<Complex64>,
}

/// Evaluates `ψ(x)` and its gradient.
///
/// Without an explicit wedge, `x` must lie strictly inside one. With a wedge
/// the closed-form expansion of that wedge is evaluated at `x` as is, which
/// gives one-sided boundary values exactly.
pub fn evaluate_psi(
    coeffs: &BetheCoefficients,
    x: &[f64],
    wedge: Option<&SignedPermutation>,
) -> Result<WavefunctionSample> {
    let n = coeffs.rank();
    if x.len() != n {
        return Err(Error::Dimension {
            expected: n,
            found: x.len(),
        });
    }
    let q = match wedge {
        Some(w) => {
            if w.rank() != n {
                return Err(Error::Dimension {
                    expected: n,
                    found: w.rank(),
                });
            }
            w.clone()
        }
        None => classify_wedge(x)?,
    };
    let qi = q.index();
    let y = q.act(x);

    let mut value = Complex64::default();
    // Gradient with respect to the wedge coordinates y = x_Q.
    let mut grad_y = vec![Complex64::default(); n];
    let chi = coeffs.sector().map(|s| s.value(&q).value());
    for p in 0..coeffs.len() {
        let a = match chi {
            Some(chi) => coeffs.table[p] * chi,
            None => coeffs.table[p * coeffs.dim + qi],
        };
        if a == Complex64::default() {
            continue;
        }
        let kp = coeffs.k_of(p);
        let phase: f64 = kp.iter().zip(&y).map(|(k, y)| k * y).sum();
        let term = a * Complex64::from_polar(1.0, phase);
        value += term;
        for (g, &kj) in grad_y.iter_mut().zip(kp) {
            *g += Complex64::new(0.0, kj) * term;
        }
    }
    // y_j = σ_j x_{q(j)}, so ∂/∂x_{q(j)} = σ_j ∂/∂y_j.
    let mut gradient = vec![Complex64::default(); n];
    for j in 0..n {
        gradient[q.perm()[j]] = grad_y[j] * f64::from(q.sign(j));
    }
    Ok(WavefunctionSample {
        point: x.to_vec(),
        wedge: q,
        value,
        gradient,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::representations::Sign;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn delta() -> ModelSpec {
        ModelSpec::delta(1.0, 2.0).unwrap()
    }

    #[test]
    fn momenta_validation() {
        assert!(Momenta::new(vec![1.0, -1.0]).is_err());
        assert!(Momenta::new(vec![0.0, 2.0]).is_err());
        assert!(Momenta::new(vec![]).is_err());
        assert!(Momenta::new(vec![1.0, -2.0, 0.5]).is_ok());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let k = Momenta::random(4, &mut rng);
            assert!(Momenta::new(k.values().to_vec()).is_ok());
        }
    }

    #[test]
    fn energy_examples() {
        assert_eq!(energy(&[0.0]), 0.0);
        assert_eq!(energy(&[1.0, 2.0]), 5.0);
    }

    #[test]
    fn single_particle_even_sector() {
        let k = 0.8;
        let spec = ModelSpec::delta(1.0, 1.5).unwrap();
        let m = Momenta::new(vec![k]).unwrap();
        let co = compute_coefficients(
            &m,
            &spec,
            &CoefficientMode::scalar_default(Sector::BOSON_EVEN),
        )
        .unwrap();
        assert_eq!(co.len(), 2);
        let z = (c(0.0, 2.0 * k) + 1.5) / (c(0.0, 2.0 * k) - 1.5);
        let r1 = SignedPermutation::reflection(1, 1).unwrap();
        let a_r = co.coefficient_of(&r1).unwrap()[0];
        assert!((a_r - 1.0 / z).norm() < 1e-15);

        // ψ(x > 0) ∝ e^{−ikx} + A_+ e^{ikx} with A_+ = (ik + c/2)/(ik − c/2).
        let a_plus = (c(0.0, k) + 0.75) / (c(0.0, k) - 0.75);
        let x = 0.37;
        let s = evaluate_psi(&co, &[x], None).unwrap();
        let expected = a_r * (c(0.0, -k * x).exp() + a_plus * c(0.0, k * x).exp());
        assert!((s.value - expected).norm() < 1e-14);
    }

    #[test]
    fn single_particle_odd_delta_vanishes_at_wall() {
        let m = Momenta::new(vec![1.3]).unwrap();
        let co = compute_coefficients(
            &m,
            &delta(),
            &CoefficientMode::scalar_default(Sector::BOSON_ODD),
        )
        .unwrap();
        let id = SignedPermutation::identity(1);
        let s = evaluate_psi(&co, &[0.0], Some(&id)).unwrap();
        assert!(s.value.norm() < 1e-15);
    }

    #[test]
    fn single_particle_even_pdp_has_flat_derivative() {
        let m = Momenta::new(vec![1.3]).unwrap();
        let spec = ModelSpec::pdp(0.4, 0.9).unwrap();
        let co = compute_coefficients(
            &m,
            &spec,
            &CoefficientMode::scalar_default(Sector::BOSON_EVEN),
        )
        .unwrap();
        let id = SignedPermutation::identity(1);
        let s = evaluate_psi(&co, &[0.0], Some(&id)).unwrap();
        assert!(s.gradient[0].norm() < 1e-15);
    }

    #[test]
    fn fermion_delta_is_sign_of_length() {
        let m = Momenta::new(vec![0.4, -1.7, 2.2]).unwrap();
        let co = compute_coefficients(
            &m,
            &delta(),
            &CoefficientMode::scalar_default(Sector::FERMION_ODD),
        )
        .unwrap();
        for (p, e) in co.group().elements().iter().enumerate() {
            let expected = Sector::FERMION_ODD.value(e).value();
            assert!((co.coefficient(p)[0] - expected).norm() < 1e-15);
        }
    }

    #[test]
    fn scalar_coefficients_are_phases() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let m = Momenta::random(3, &mut rng);
        for spec in [delta(), ModelSpec::pdp(0.3, 1.1).unwrap()] {
            for sector in Sector::all() {
                let co = compute_coefficients(&m, &spec, &CoefficientMode::scalar_default(sector))
                    .unwrap();
                assert_eq!(co.len(), 48);
                assert_eq!(co.coefficient(0), &[c(1.0, 0.0)]);
                for p in 0..co.len() {
                    assert!((co.coefficient(p)[0].norm() - 1.0).abs() < 1e-13);
                }
            }
        }
    }

    #[test]
    fn regular_delta_builds_consistently() {
        let m = Momenta::new(vec![0.5, -1.2, 2.1]).unwrap();
        let co = compute_coefficients(&m, &delta(), &CoefficientMode::regular_default(3)).unwrap();
        assert_eq!(co.dim(), 48);
        assert_eq!(co.coefficient(0)[0], c(1.0, 0.0));
    }

    #[test]
    fn regular_pdp_is_inconsistent() {
        let m = Momenta::new(vec![0.5, -1.2, 2.1]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let initial: Vec<Complex64> = (0..48)
            .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let spec = ModelSpec::pdp(1.0, 1.0).unwrap();
        let err =
            compute_coefficients(&m, &spec, &CoefficientMode::Regular { initial }).unwrap_err();
        match err {
            Error::Inconsistent {
                assigned,
                revisit,
                residual,
                ..
            } => {
                assert!(residual > 1e-6);
                assert_ne!(assigned, revisit);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn regular_pdp_with_symmetric_initial_vector_is_consistent() {
        // A_I proportional to the fermion character is a T̂ = −I eigenvector.
        let m = Momenta::new(vec![0.5, -1.2, 2.1]).unwrap();
        let grp = WeylGroup::new(3).unwrap();
        let initial: Vec<Complex64> = grp
            .elements()
            .iter()
            .map(|q| c(Sector::FERMION_EVEN.value(q).value(), 0.0))
            .collect();
        let spec = ModelSpec::pdp(1.0, 1.0).unwrap();
        assert!(compute_coefficients(&m, &spec, &CoefficientMode::Regular { initial }).is_ok());
    }

    #[test]
    fn wrong_initial_length() {
        let m = Momenta::new(vec![0.5, 1.2]).unwrap();
        let mode = CoefficientMode::Regular {
            initial: vec![c(1.0, 0.0); 3],
        };
        assert!(matches!(
            compute_coefficients(&m, &delta(), &mode),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn table_matches_word_transport() {
        let m = Momenta::new(vec![0.5, -1.2, 2.1]).unwrap();
        let co = compute_coefficients(&m, &delta(), &CoefficientMode::regular_default(3)).unwrap();
        let rep = co.representation().clone();
        let init = co.coefficient(0).to_vec();
        for (p, e) in co.group().elements().iter().enumerate() {
            let a = transport_along_word(&m, &delta(), &rep, &init, &word_for(e)).unwrap();
            assert!(max_diff(&a, co.coefficient(p)) < 1e-12);
        }
    }

    #[test]
    fn word_independence() {
        let m = Momenta::new(vec![0.5, -1.2, 2.1]).unwrap();
        let reg = Representation::regular(3).unwrap();
        assert!(word_independence_test(&m, &delta(), &reg, 10, 3).unwrap() <= 1e-12);
        let f = Representation::scalar(3, Sector::FERMION_EVEN);
        let pdp = ModelSpec::pdp(0.6, 1.3).unwrap();
        assert!(word_independence_test(&m, &pdp, &f, 10, 3).unwrap() <= 1e-12);

        let w = word_for(&SignedPermutation::random(
            3,
            &mut ChaCha8Rng::seed_from_u64(0),
        ));
        let init = vec![c(0.0, 0.0); 48]
            .into_iter()
            .enumerate()
            .map(|(i, _)| c(i as f64, 1.0))
            .collect::<Vec<_>>();
        assert_eq!(
            word_pair_residual(&m, &delta(), &reg, &init, &w, &w).unwrap(),
            0.0
        );
    }

    #[test]
    fn psi_symmetry_in_sectors() {
        let m = Momenta::new(vec![0.7, -1.9, 1.3]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for spec in [delta(), ModelSpec::pdp(0.5, 0.8).unwrap()] {
            for sector in Sector::all() {
                let co = compute_coefficients(&m, &spec, &CoefficientMode::scalar_default(sector))
                    .unwrap();
                for _ in 0..10 {
                    let x: Vec<f64> = (0..3).map(|_| rng.gen_range(-3.0..3.0)).collect();
                    let psi = evaluate_psi(&co, &x, None).unwrap().value;
                    let mut flipped = x.clone();
                    flipped[1] = -flipped[1];
                    let psi_f = evaluate_psi(&co, &flipped, None).unwrap().value;
                    assert!((psi_f - psi * sector.reflection.value()).norm() < 1e-12);
                    let mut swapped = x.clone();
                    swapped.swap(0, 2);
                    let psi_s = evaluate_psi(&co, &swapped, None).unwrap().value;
                    assert!((psi_s - psi * sector.exchange.value()).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let m = Momenta::new(vec![0.7, -1.9]).unwrap();
        let co = compute_coefficients(&m, &delta(), &CoefficientMode::regular_default(2)).unwrap();
        let x = [0.4, -1.1];
        let s = evaluate_psi(&co, &x, None).unwrap();
        let h = 1e-5;
        for j in 0..2 {
            let (mut xp, mut xm) = (x, x);
            xp[j] += h;
            xm[j] -= h;
            let fd = (evaluate_psi(&co, &xp, None).unwrap().value
                - evaluate_psi(&co, &xm, None).unwrap().value)
                / (2.0 * h);
            assert!((fd - s.gradient[j]).norm() < 1e-8);
        }
    }

    #[test]
    fn boundary_point_needs_wedge() {
        let m = Momenta::new(vec![0.7, -1.9]).unwrap();
        let co = compute_coefficients(
            &m,
            &delta(),
            &CoefficientMode::scalar_default(Sector::BOSON_EVEN),
        )
        .unwrap();
        assert!(matches!(
            evaluate_psi(&co, &[0.5, -0.5], None),
            Err(Error::BoundaryPoint(_))
        ));
        let w = SignedPermutation::identity(2);
        assert!(evaluate_psi(&co, &[0.5, 0.5], Some(&w)).is_ok());
    }

    #[test]
    fn entry_uses_character_in_scalar_mode() {
        let m = Momenta::new(vec![0.7, -1.9]).unwrap();
        let sector = Sector::new(Sign::Minus, Sign::Plus);
        let co =
            compute_coefficients(&m, &delta(), &CoefficientMode::scalar_default(sector)).unwrap();
        let t = SignedPermutation::transposition(2, 1).unwrap();
        assert_eq!(co.entry(0, t.index()), c(-1.0, 0.0));
    }
}
