//! Representations of `W_N`.
//!
//! Two kinds are used for the Bethe Ansatz: the right regular representation
//! `(R̂ v)(Q) = v(Q·R)` on `C^{|W_N|}`, which is never materialised as a
//! matrix, and the four one-dimensional sectors `(ε_T, ε_R)`. The remaining
//! irreducible representations only enter through dimension accounting:
//! orbit representatives of characters of `(Z/2)^N`, their stabilisers
//! `S_i × S_{N-i}`, and the hook length formula.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weyl_group::{Generator, SignedPermutation, WeylGroup};

/// `±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn pow(self, exponent: usize) -> Sign {
        if self == Sign::Minus && exponent % 2 == 1 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// One-dimensional representation: `T̂_i = ε_T`, `R̂_1 = ε_R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Sector {
    /// `+1` bosons, `-1` fermions.
    pub exchange: Sign,
    /// `+1` even, `-1` odd under a coordinate reflection.
    pub reflection: Sign,
}

impl Sector {
    pub const BOSON_EVEN: Sector = Sector::new(Sign::Plus, Sign::Plus);
    pub const BOSON_ODD: Sector = Sector::new(Sign::Plus, Sign::Minus);
    pub const FERMION_EVEN: Sector = Sector::new(Sign::Minus, Sign::Plus);
    pub const FERMION_ODD: Sector = Sector::new(Sign::Minus, Sign::Minus);

    pub const fn new(exchange: Sign, reflection: Sign) -> Self {
        Self {
            exchange,
            reflection,
        }
    }

    pub fn all() -> [Sector; 4] {
        [
            Self::BOSON_EVEN,
            Self::BOSON_ODD,
            Self::FERMION_EVEN,
            Self::FERMION_ODD,
        ]
    }

    /// Character value of `g` in this sector.
    pub fn value(self, g: &SignedPermutation) -> Sign {
        one_dim_rep(self.exchange, self.reflection, g)
    }

    fn generator_value(self, g: Generator) -> f64 {
        match g {
            Generator::T(_) => self.exchange.value(),
            Generator::R1 => self.reflection.value(),
        }
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.exchange.symbol(), self.reflection.symbol())
    }
}

impl FromStr for Sector {
    type Err = Error;

    /// Parses `"++"`, `"+-"`, `"-+"` or `"--"` as `(ε_T, ε_R)`.
    fn from_str(s: &str) -> Result<Self> {
        let sign = |c| match c {
            '+' => Ok(Sign::Plus),
            '-' => Ok(Sign::Minus),
            _ => Err(Error::Domain(format!(
                "bad sector {s:?}, expected e.g. \"++\""
            ))),
        };
        let chars: Vec<char> = s.chars().collect();
        if chars.len() != 2 {
            return Err(Error::Domain(format!(
                "bad sector {s:?}, expected e.g. \"++\""
            )));
        }
        Ok(Sector::new(sign(chars[0])?, sign(chars[1])?))
    }
}

/// `ε_T^{#T letters} · ε_R^{#R_1 letters}` for any word of `g`.
///
/// Each defining relation preserves both letter-count parities: the
/// `T`-count parity equals the permutation parity and the `R_1`-count parity
/// equals the number of negative signs mod 2.
pub fn one_dim_rep(exchange: Sign, reflection: Sign, g: &SignedPermutation) -> Sign {
    exchange.pow(g.inversions()) * reflection.pow(g.flip_count())
}

/// A representation of `W_N` acting on coefficient vectors.
#[derive(Clone, Debug)]
pub enum Representation {
    /// Right regular representation of dimension `2^N·N!`.
    Regular(Arc<WeylGroup>),
    /// One-dimensional sector.
    Scalar { rank: usize, sector: Sector },
}

impl Representation {
    pub fn regular(rank: usize) -> Result<Self> {
        Ok(Representation::Regular(Arc::new(WeylGroup::new(rank)?)))
    }

    pub fn scalar(rank: usize, sector: Sector) -> Self {
        Representation::Scalar { rank, sector }
    }

    pub fn rank(&self) -> usize {
        match self {
            Representation::Regular(g) => g.rank(),
            Representation::Scalar { rank, .. } => *rank,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Representation::Regular(g) => g.order(),
            Representation::Scalar { .. } => 1,
        }
    }

    pub fn sector(&self) -> Option<Sector> {
        match self {
            Representation::Regular(_) => None,
            Representation::Scalar { sector, .. } => Some(*sector),
        }
    }

    pub fn is_regular(&self) -> bool {
        matches!(self, Representation::Regular(_))
    }

    pub fn label(&self) -> String {
        match self {
            Representation::Regular(_) => "regular".into(),
            Representation::Scalar { sector, .. } => format!("sector {sector}"),
        }
    }

    /// `out += coef · Ĝ v` for a generator `G`.
    pub(crate) fn add_generator_image(
        &self,
        g: Generator,
        coef: Complex64,
        v: &[Complex64],
        out: &mut [Complex64],
    ) {
        match self {
            Representation::Regular(grp) => {
                for (o, &src) in out.iter_mut().zip(grp.right_table(g)) {
                    *o += coef * v[src as usize];
                }
            }
            Representation::Scalar { sector, .. } => {
                out[0] += coef * sector.generator_value(g) * v[0];
            }
        }
    }

    /// `ĝ v` for an arbitrary group element.
    pub fn act(&self, g: &SignedPermutation, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if g.rank() != self.rank() {
            return Err(Error::Dimension {
                expected: self.rank(),
                found: g.rank(),
            });
        }
        match self {
            Representation::Regular(grp) => regular_action(grp, g, v),
            Representation::Scalar { sector, .. } => {
                check_len(v, 1)?;
                Ok(vec![v[0] * sector.value(g).value()])
            }
        }
    }
}

fn check_len(v: &[Complex64], n: usize) -> Result<()> {
    if v.len() != n {
        return Err(Error::Dimension {
            expected: n,
            found: v.len(),
        });
    }
    Ok(())
}

/// Right regular action: `out[index(Q)] = v[index(Q·g)]`.
///
/// Satisfies `ĝ(ĥ v) = (gh)^ v`, i.e. `g ↦ ĝ` is a homomorphism.
pub fn regular_action(
    group: &WeylGroup,
    g: &SignedPermutation,
    v: &[Complex64],
) -> Result<Vec<Complex64>> {
    check_len(v, group.order())?;
    if g.rank() != group.rank() {
        return Err(Error::Dimension {
            expected: group.rank(),
            found: g.rank(),
        });
    }
    Ok(group
        .elements()
        .iter()
        .map(|q| v[q.mul_unchecked(g).index()])
        .collect())
}

/// A character of `(Z/2)^N`, given by its values `χ(R_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Character {
    values: Vec<i8>,
}

impl Character {
    pub fn new(values: Vec<i8>) -> Result<Self> {
        if values.iter().any(|&v| v != 1 && v != -1) {
            return Err(Error::Domain(format!(
                "character values {values:?} must be ±1"
            )));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn minus_count(&self) -> usize {
        self.values.iter().filter(|&&v| v == -1).count()
    }

    /// `(wχ)(R_j) = χ(w⁻¹ R_j w)`.
    ///
    /// Signs of `w` drop out because `(Z/2)^N` is abelian; for the
    /// permutation part `w⁻¹ R_j w = R_{p⁻¹(j)}`.
    pub fn act(&self, w: &SignedPermutation) -> Character {
        let values = w.inverse().perm().iter().map(|&q| self.values[q]).collect();
        Character { values }
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self
            .values
            .iter()
            .map(|&v| if v == 1 { '+' } else { '-' })
            .collect();
        write!(f, "{s}")
    }
}

/// `χ_0, …, χ_N` with `χ_k(R_j) = -1` iff `j ≤ k`.
pub fn orbit_representatives(rank: usize) -> Vec<Character> {
    (0..=rank)
        .map(|k| Character {
            values: (1..=rank).map(|j| if j <= k { -1 } else { 1 }).collect(),
        })
        .collect()
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                current.push(v);
                rec(n, current, used, out);
                current.pop();
                used[v] = false;
            }
        }
    }
    rec(n, &mut current, &mut used, &mut out);
    out
}

/// The `S_N`-orbit of a character, sorted and deduplicated.
pub fn character_orbit(chi: &Character) -> Vec<Character> {
    let n = chi.values.len();
    let signs = vec![1i8; n];
    let mut orbit: Vec<Character> = permutations(n)
        .iter()
        .map(|p| chi.act(&SignedPermutation::new(&signs, p).expect("valid permutation")))
        .collect();
    orbit.sort();
    orbit.dedup();
    orbit
}

/// `|(S_N)_i| = i!·(N−i)!`, the order of the stabiliser of `χ_i`.
pub fn stabilizer_order(rank: usize, i: usize) -> Result<u64> {
    if i > rank {
        return Err(Error::Domain(format!(
            "orbit index {i} exceeds rank {rank}"
        )));
    }
    Ok(factorial(i) * factorial(rank - i))
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, j| acc * (n - j) as u64 / (j as u64 + 1))
}

/// An integer partition in non-increasing order. The empty partition is the
/// unique partition of 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!(
                "{parts:?} is not a partition (parts must be positive and non-increasing)"
            )));
        }
        Ok(Self(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of standard Young tableaux: `n! / ∏ hook(cell)`.
    pub fn hook_dimension(&self) -> u64 {
        let n = self.size();
        let conj: Vec<usize> = (0..self.0.first().copied().unwrap_or(0))
            .map(|c| self.0.iter().filter(|&&r| r > c).count())
            .collect();
        let hooks: u128 = self
            .0
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| {
                let conj = &conj;
                (0..len).map(move |c| (len - c - 1) + (conj[c] - r - 1) + 1)
            })
            .map(|h| h as u128)
            .product();
        let nfact: u128 = (1..=n as u128).product();
        (nfact / hooks) as u64
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// All partitions of `n`, in reverse lexicographic order (`[n]` first).
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for part in (1..=remaining.min(max)).rev() {
            prefix.push(part);
            rec(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Irreducible representation `θ_{i,λ⊗μ}` induced from `S_i × S_{N−i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrrepDescriptor {
    pub orbit: usize,
    pub lambda: Partition,
    pub mu: Partition,
    pub dimension: u64,
}

/// `binomial(N, i) · f^λ · f^μ`.
pub fn induced_dimension(rank: usize, i: usize, lambda: &Partition, mu: &Partition) -> Result<u64> {
    if i > rank {
        return Err(Error::Domain(format!(
            "orbit index {i} exceeds rank {rank}"
        )));
    }
    if lambda.size() != i || mu.size() != rank - i {
        return Err(Error::Domain(format!(
            "need λ ⊢ {i} and μ ⊢ {}, got {lambda} and {mu}",
            rank - i
        )));
    }
    Ok(binomial(rank, i) * lambda.hook_dimension() * mu.hook_dimension())
}

/// Every `(i, λ ⊢ i, μ ⊢ N−i)` with its dimension.
pub fn irreps(rank: usize) -> Vec<IrrepDescriptor> {
    let mut out = Vec::new();
    for i in 0..=rank {
        for lambda in partitions(i) {
            for mu in partitions(rank - i) {
                let dimension =
                    induced_dimension(rank, i, &lambda, &mu).expect("valid by construction");
                out.push(IrrepDescriptor {
                    orbit: i,
                    lambda: lambda.clone(),
                    mu,
                    dimension,
                });
            }
        }
    }
    out
}

pub const MAX_SUM_RULE_RANK: usize = 6;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DimensionSumReport {
    pub rank: usize,
    pub group_order: u64,
    /// `Σ dim²` restricted to each orbit index `i`.
    pub per_orbit: Vec<u64>,
    pub sum_of_squares: u64,
    pub irreps: Vec<IrrepDescriptor>,
    pub passed: bool,
}

/// Checks `Σ_{i,λ,μ} dim² = 2^N·N!`.
pub fn dimension_sum_check(rank: usize) -> Result<DimensionSumReport> {
    if rank == 0 || rank > MAX_SUM_RULE_RANK {
        return Err(Error::Domain(format!(
            "sum rule supported for 1 ≤ N ≤ {MAX_SUM_RULE_RANK}, got {rank}"
        )));
    }
    let irreps = irreps(rank);
    let mut per_orbit = vec![0u64; rank + 1];
    for d in &irreps {
        per_orbit[d.orbit] += d.dimension * d.dimension;
    }
    let sum_of_squares = per_orbit.iter().sum();
    let group_order = factorial(rank) << rank;
    Ok(DimensionSumReport {
        rank,
        group_order,
        per_orbit,
        sum_of_squares,
        irreps,
        passed: sum_of_squares == group_order,
    })
}
