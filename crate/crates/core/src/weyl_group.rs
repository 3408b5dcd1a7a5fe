//! Signed permutations: the hyperoctahedral group `W_N = (Z/2)^N ⋊ S_N`.
//!
//! An element `Q = (σ_1, …, σ_N; p)` acts on a point `x ∈ R^N` by
//!
//! ```text
//!     (Q·x)_j = σ_j · x_{p(j)}
//! ```
//!
//! and the group product is fixed so that acting with `compose(g, h)` is the
//! same as acting with `g` first and then with `h`:
//!
//! ```text
//!     apply_to_point(compose(g, h), x) == apply_to_point(h, apply_to_point(g, x))
//! ```
//!
//! In components, `(g·h).perm[j] = g.perm[h.perm[j]]` and
//! `(g·h).sign[j] = h.sign[j] · g.sign[h.perm[j]]`. With this convention the
//! wedge across the facet `x_{Qi} = x_{Q(i+1)}` of `Δ_Q` is `Δ_{Q·T_i}`, the
//! wedge across `x_{Q1} = 0` is `Δ_{Q·R_1}`, and `k_{P·g} · x_Q = k_P · x_{Q·g}`
//! for every generator `g`, which is what the right-regular action on the
//! Bethe coefficients requires.
//!
//! Internally permutations are 0-based; `T_i` and `R_j` use the 1-based
//! labels of the physics literature.

use std::fmt;
use std::ops::Neg;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest rank for which the whole group is enumerated (order 3840).
pub const DEFAULT_MAX_RANK: usize = 5;

/// Element of `W_N`.
///
/// The derived ordering is lexicographic on `(perm, flips)` with `+1` sorting
/// before `-1`; it coincides with the index order of [`SignedPermutation::index`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedPermutation {
    perm: Vec<usize>,
    flips: Vec<bool>,
}

impl SignedPermutation {
    /// Builds an element from its signs (each `±1`) and a 0-based permutation.
    pub fn new(signs: &[i8], perm: &[usize]) -> Result<Self> {
        if signs.len() != perm.len() {
            return Err(Error::Dimension {
                expected: perm.len(),
                found: signs.len(),
            });
        }
        let n = perm.len();
        if n == 0 {
            return Err(Error::InvalidElement("rank must be at least 1".into()));
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidElement(format!(
                    "{perm:?} is not a permutation of 0..{n}"
                )));
            }
            seen[p] = true;
        }
        let flips = signs
            .iter()
            .map(|&s| match s {
                1 => Ok(false),
                -1 => Ok(true),
                other => Err(Error::InvalidElement(format!("sign {other} is not ±1"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            perm: perm.to_vec(),
            flips,
        })
    }

    pub fn identity(rank: usize) -> Self {
        Self {
            perm: (0..rank).collect(),
            flips: vec![false; rank],
        }
    }

    /// The transposition `T_i` exchanging positions `i` and `i + 1` (1-based).
    pub fn transposition(rank: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= rank {
            return Err(Error::Index {
                what: "transposition T_i",
                index: i,
                rank,
            });
        }
        let mut g = Self::identity(rank);
        g.perm.swap(i - 1, i);
        Ok(g)
    }

    /// The reflection `R_j` of the `j`-th coordinate (1-based).
    pub fn reflection(rank: usize, j: usize) -> Result<Self> {
        if j == 0 || j > rank {
            return Err(Error::Index {
                what: "reflection R_j",
                index: j,
                rank,
            });
        }
        let mut g = Self::identity(rank);
        g.flips[j - 1] = true;
        Ok(g)
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    /// 0-based permutation `p`.
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// Sign `σ_j` (0-based `j`) as `±1`.
    pub fn sign(&self, j: usize) -> i8 {
        if self.flips[j] {
            -1
        } else {
            1
        }
    }

    pub fn signs(&self) -> Vec<i8> {
        (0..self.rank()).map(|j| self.sign(j)).collect()
    }

    pub fn is_identity(&self) -> bool {
        !self.flips.iter().any(|&f| f) && self.perm.iter().enumerate().all(|(j, &p)| j == p)
    }

    /// Number of negative signs.
    pub fn flip_count(&self) -> usize {
        self.flips.iter().filter(|&&f| f).count()
    }

    /// Number of inversions of the underlying permutation.
    pub fn inversions(&self) -> usize {
        let n = self.rank();
        (0..n)
            .map(|a| (a + 1..n).filter(|&b| self.perm[b] < self.perm[a]).count())
            .sum()
    }

    /// Group product; see the module docs for the convention.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.rank() != other.rank() {
            return Err(Error::Dimension {
                expected: self.rank(),
                found: other.rank(),
            });
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let perm = other.perm.iter().map(|&r| self.perm[r]).collect();
        let flips = other
            .perm
            .iter()
            .zip(&other.flips)
            .map(|(&r, &f)| f ^ self.flips[r])
            .collect();
        Self { perm, flips }
    }

    pub fn inverse(&self) -> Self {
        let n = self.rank();
        let mut perm = vec![0; n];
        for (j, &p) in self.perm.iter().enumerate() {
            perm[p] = j;
        }
        let flips = perm.iter().map(|&q| self.flips[q]).collect();
        Self { perm, flips }
    }

    /// `(g·x)_j = σ_j x_{p(j)}`. Works for positions and momenta alike.
    pub fn apply_to_point<T>(&self, x: &[T]) -> Result<Vec<T>>
    where
        T: Copy + Neg<Output = T>,
    {
        if x.len() != self.rank() {
            return Err(Error::Dimension {
                expected: self.rank(),
                found: x.len(),
            });
        }
        Ok(self.act(x))
    }

    pub(crate) fn act<T>(&self, x: &[T]) -> Vec<T>
    where
        T: Copy + Neg<Output = T>,
    {
        self.perm
            .iter()
            .zip(&self.flips)
            .map(|(&p, &f)| if f { -x[p] } else { x[p] })
            .collect()
    }

    /// Position of this element in [`enumerate`]: lexicographic rank of the
    /// permutation times `2^N`, plus the sign pattern read as a binary number
    /// with the first sign most significant.
    pub fn index(&self) -> usize {
        let n = self.rank();
        let mut perm_rank = 0usize;
        for a in 0..n {
            let smaller = (a + 1..n).filter(|&b| self.perm[b] < self.perm[a]).count();
            perm_rank = perm_rank * (n - a) + smaller;
        }
        let sign_bits = self
            .flips
            .iter()
            .fold(0usize, |acc, &f| (acc << 1) | usize::from(f));
        (perm_rank << n) | sign_bits
    }

    /// Inverse of [`SignedPermutation::index`].
    pub fn from_index(rank: usize, index: usize) -> Result<Self> {
        let order = group_order(rank);
        if rank == 0 || index >= order {
            return Err(Error::Index {
                what: "group element",
                index,
                rank,
            });
        }
        let sign_bits = index & ((1 << rank) - 1);
        let mut perm_rank = index >> rank;
        let mut digits = vec![0usize; rank];
        for a in (0..rank).rev() {
            let base = rank - a;
            digits[a] = perm_rank % base;
            perm_rank /= base;
        }
        let mut pool: Vec<usize> = (0..rank).collect();
        let perm = digits.iter().map(|&d| pool.remove(d)).collect();
        let flips = (0..rank)
            .map(|j| (sign_bits >> (rank - 1 - j)) & 1 == 1)
            .collect();
        Ok(Self { perm, flips })
    }

    /// Uniformly random element.
    pub fn random<R: Rng + ?Sized>(rank: usize, rng: &mut R) -> Self {
        let idx = rng.gen_range(0..group_order(rank));
        Self::from_index(rank, idx).expect("index drawn inside the group order")
    }
}

impl fmt::Display for SignedPermutation {
    /// `(+,-;2,1)` with a 1-based permutation.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let signs: Vec<&str> = self
            .flips
            .iter()
            .map(|&x| if x { "-" } else { "+" })
            .collect();
        let perm: Vec<String> = self.perm.iter().map(|p| (p + 1).to_string()).collect();
        write!(f, "({};{})", signs.join(","), perm.join(","))
    }
}

/// `2^N · N!`.
pub fn group_order(rank: usize) -> usize {
    (1..=rank).product::<usize>() << rank
}

/// All elements of `W_N` in index order.
pub fn enumerate(rank: usize) -> Result<Vec<SignedPermutation>> {
    enumerate_bounded(rank, DEFAULT_MAX_RANK)
}

pub fn enumerate_bounded(rank: usize, max_rank: usize) -> Result<Vec<SignedPermutation>> {
    check_rank(rank, max_rank)?;
    (0..group_order(rank))
        .map(|i| SignedPermutation::from_index(rank, i))
        .collect()
}

fn check_rank(rank: usize, max_rank: usize) -> Result<()> {
    if rank == 0 {
        return Err(Error::Domain("rank must be at least 1".into()));
    }
    if rank > max_rank {
        return Err(Error::Capacity {
            rank,
            max: max_rank,
        });
    }
    Ok(())
}

/// Generators of `W_N`: the adjacent transpositions `T_1 … T_{N-1}` and `R_1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Generator {
    /// `T_i`, 1-based.
    T(usize),
    R1,
}

impl Generator {
    /// Generators in table order: `T_1, …, T_{N-1}, R_1`.
    pub fn all(rank: usize) -> Vec<Generator> {
        (1..rank)
            .map(Generator::T)
            .chain(std::iter::once(Generator::R1))
            .collect()
    }

    /// Position in [`Generator::all`].
    pub fn slot(self, rank: usize) -> usize {
        match self {
            Generator::T(i) => i - 1,
            Generator::R1 => rank - 1,
        }
    }

    pub fn in_range(self, rank: usize) -> bool {
        match self {
            Generator::T(i) => i >= 1 && i < rank,
            Generator::R1 => rank >= 1,
        }
    }

    pub fn element(self, rank: usize) -> Result<SignedPermutation> {
        match self {
            Generator::T(i) => SignedPermutation::transposition(rank, i),
            Generator::R1 => SignedPermutation::reflection(rank, 1),
        }
    }

    /// Whether `self·other = other·self` follows from a defining relation.
    fn commutes_with(self, other: Generator) -> bool {
        match (self, other) {
            (Generator::T(i), Generator::T(j)) => i.abs_diff(j) > 1,
            (Generator::R1, Generator::T(i)) | (Generator::T(i), Generator::R1) => i > 1,
            (Generator::R1, Generator::R1) => false,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::T(i) => write!(f, "T{i}"),
            Generator::R1 => write!(f, "R1"),
        }
    }
}

/// A product `g_1 g_2 ⋯ g_m` of generators, evaluated left to right with
/// [`SignedPermutation::compose`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorWord {
    rank: usize,
    letters: Vec<Generator>,
}

impl GeneratorWord {
    pub fn new(rank: usize, letters: Vec<Generator>) -> Self {
        Self { rank, letters }
    }

    pub fn empty(rank: usize) -> Self {
        Self::new(rank, Vec::new())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[Generator] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, g: Generator) {
        self.letters.push(g);
    }

    pub fn evaluate(&self) -> Result<SignedPermutation> {
        let mut acc = SignedPermutation::identity(self.rank);
        for &g in &self.letters {
            if !g.in_range(self.rank) {
                let index = match g {
                    Generator::T(i) => i,
                    Generator::R1 => 1,
                };
                return Err(Error::Index {
                    what: "generator letter",
                    index,
                    rank: self.rank,
                });
            }
            acc = acc.mul_unchecked(&g.element(self.rank)?);
        }
        Ok(acc)
    }

    /// The inverse word. Every generator is an involution, so this is the
    /// reversed letter sequence.
    pub fn inverse(&self) -> Self {
        Self::new(self.rank, self.letters.iter().rev().copied().collect())
    }

    /// Counts of `(T, R_1)` letters.
    pub fn letter_counts(&self) -> (usize, usize) {
        let t = self
            .letters
            .iter()
            .filter(|g| matches!(g, Generator::T(_)))
            .count();
        (t, self.letters.len() - t)
    }

    /// Applies `steps` random rewrites that preserve the evaluated element.
    ///
    /// The first rewrite always inserts an involution pair, so the result is
    /// never the input word. Subsequent moves are drawn uniformly among all
    /// applicable ones: pair insertion or cancellation, commuting swaps, the
    /// braid move and the `R_1 T_1 R_1 T_1 = T_1 R_1 T_1 R_1` move.
    pub fn random_rewrite<R: Rng + ?Sized>(&self, steps: usize, rng: &mut R) -> Self {
        let gens = Generator::all(self.rank);
        let mut w = self.letters.clone();
        let pos = rng.gen_range(0..=w.len());
        let g = gens[rng.gen_range(0..gens.len())];
        w.splice(pos..pos, [g, g]);

        for _ in 1..steps {
            let moves = applicable_moves(&w, self.rank);
            // Pair insertion is always available, so `moves` is never empty.
            let (at, mv) = moves[rng.gen_range(0..moves.len())];
            match mv {
                Move::Insert => {
                    let g = gens[rng.gen_range(0..gens.len())];
                    w.splice(at..at, [g, g]);
                }
                Move::Cancel => {
                    w.drain(at..at + 2);
                }
                Move::Swap => w.swap(at, at + 1),
                Move::Braid => {
                    let (a, b) = (w[at], w[at + 1]);
                    w[at..at + 3].copy_from_slice(&[b, a, b]);
                }
                Move::Square => {
                    let (a, b) = (w[at], w[at + 1]);
                    w[at..at + 4].copy_from_slice(&[b, a, b, a]);
                }
            }
        }
        Self::new(self.rank, w)
    }
}

#[derive(Clone, Copy, Debug)]
enum Move {
    Insert,
    Cancel,
    Swap,
    Braid,
    Square,
}

fn applicable_moves(w: &[Generator], rank: usize) -> Vec<(usize, Move)> {
    let mut moves: Vec<(usize, Move)> = (0..=w.len()).map(|p| (p, Move::Insert)).collect();
    for p in 0..w.len().saturating_sub(1) {
        if w[p] == w[p + 1] {
            moves.push((p, Move::Cancel));
        } else if w[p].commutes_with(w[p + 1]) {
            moves.push((p, Move::Swap));
        }
    }
    for p in 0..w.len().saturating_sub(2) {
        if let (Generator::T(a), Generator::T(b), Generator::T(c)) = (w[p], w[p + 1], w[p + 2]) {
            if a == c && a.abs_diff(b) == 1 && b < rank {
                moves.push((p, Move::Braid));
            }
        }
    }
    for p in 0..w.len().saturating_sub(3) {
        let quad = [w[p], w[p + 1], w[p + 2], w[p + 3]];
        let rt = [
            Generator::R1,
            Generator::T(1),
            Generator::R1,
            Generator::T(1),
        ];
        let tr = [
            Generator::T(1),
            Generator::R1,
            Generator::T(1),
            Generator::R1,
        ];
        if quad == rt || quad == tr {
            moves.push((p, Move::Square));
        }
    }
    moves
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.letters.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Product of the letters of `w` in sequence.
pub fn evaluate_word(w: &GeneratorWord) -> Result<SignedPermutation> {
    w.evaluate()
}

/// A word evaluating to `g`.
///
/// The word is built by reducing `g` to the identity with right
/// multiplications: right-multiplying by `T_i` swaps positions `i, i+1` and
/// right-multiplying by `R_1` toggles the sign at position 1. Each negative
/// position is carried to the front with adjacent transpositions, flipped
/// and carried back; the permutation is then bubble-sorted. Reversing the
/// recorded letters gives the word. Length is not minimal.
pub fn word_for(g: &SignedPermutation) -> GeneratorWord {
    let n = g.rank();
    let mut perm = g.perm.clone();
    let mut reduction = Vec::new();

    for j in (0..n).filter(|&j| g.flips[j]) {
        for pos in (1..=j).rev() {
            reduction.push(Generator::T(pos));
        }
        reduction.push(Generator::R1);
        for pos in 1..=j {
            reduction.push(Generator::T(pos));
        }
    }

    loop {
        let mut swapped = false;
        for a in 0..n.saturating_sub(1) {
            if perm[a] > perm[a + 1] {
                perm.swap(a, a + 1);
                reduction.push(Generator::T(a + 1));
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }

    reduction.reverse();
    GeneratorWord::new(n, reduction)
}

/// The unique `Q` with `0 < (Q·x)_1 < … < (Q·x)_N`.
pub fn classify_wedge(x: &[f64]) -> Result<SignedPermutation> {
    let n = x.len();
    if n == 0 {
        return Err(Error::Domain("empty point".into()));
    }
    if x.iter().any(|v| !v.is_finite() || *v == 0.0) {
        return Err(Error::BoundaryPoint(x.to_vec()));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| x[a].abs().total_cmp(&x[b].abs()));
    if order.windows(2).any(|w| x[w[0]].abs() == x[w[1]].abs()) {
        return Err(Error::BoundaryPoint(x.to_vec()));
    }
    let flips = order.iter().map(|&p| x[p] < 0.0).collect();
    Ok(SignedPermutation { perm: order, flips })
}

/// The whole group with cached right-multiplication tables for the
/// generators, so that the regular representation acts by table lookup.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    rank: usize,
    elements: Vec<SignedPermutation>,
    /// `right[s][q] = index(elements[q] · generator_s)`.
    right: Vec<Vec<u32>>,
}

impl WeylGroup {
    pub fn new(rank: usize) -> Result<Self> {
        Self::with_max_rank(rank, DEFAULT_MAX_RANK)
    }

    pub fn with_max_rank(rank: usize, max_rank: usize) -> Result<Self> {
        let elements = enumerate_bounded(rank, max_rank)?;
        let right = Generator::all(rank)
            .into_iter()
            .map(|g| {
                let ge = g.element(rank).expect("generator in range");
                elements
                    .iter()
                    .map(|q| q.mul_unchecked(&ge).index() as u32)
                    .collect()
            })
            .collect();
        Ok(Self {
            rank,
            elements,
            right,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[SignedPermutation] {
        &self.elements
    }

    pub fn element(&self, index: usize) -> &SignedPermutation {
        &self.elements[index]
    }

    pub fn index_of(&self, g: &SignedPermutation) -> Result<usize> {
        if g.rank() != self.rank {
            return Err(Error::Dimension {
                expected: self.rank,
                found: g.rank(),
            });
        }
        Ok(g.index())
    }

    pub fn generators(&self) -> Vec<Generator> {
        Generator::all(self.rank)
    }

    /// Index of `elements[q] · g`.
    #[inline]
    pub fn right_mul(&self, q: usize, g: Generator) -> usize {
        self.right[g.slot(self.rank)][q] as usize
    }

    pub(crate) fn right_table(&self, g: Generator) -> &[u32] {
        &self.right[g.slot(self.rank)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn t(n: usize, i: usize) -> SignedPermutation {
        SignedPermutation::transposition(n, i).unwrap()
    }
    fn r(n: usize) -> SignedPermutation {
        SignedPermutation::reflection(n, 1).unwrap()
    }
    fn prod(xs: &[&SignedPermutation]) -> SignedPermutation {
        xs.iter()
            .skip(1)
            .fold(xs[0].clone(), |acc, g| acc.compose(g).unwrap())
    }

    #[test]
    fn transposition_is_an_involution() {
        for n in 2..=4 {
            for i in 1..n {
                assert!(t(n, i).compose(&t(n, i)).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn reflection_square_relation_rank_two() {
        let (t1, r1) = (t(2, 1), r(2));
        assert_eq!(prod(&[&r1, &t1, &r1, &t1]), prod(&[&t1, &r1, &t1, &r1]));
        // And it is not a shorter relation in disguise.
        assert_ne!(prod(&[&r1, &t1]), prod(&[&t1, &r1]));
    }

    #[test]
    fn right_identity_on_random_elements() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let e = SignedPermutation::identity(4);
        for _ in 0..100 {
            let g = SignedPermutation::random(4, &mut rng);
            assert_eq!(g.compose(&e).unwrap(), g);
            assert_eq!(e.compose(&g).unwrap(), g);
        }
    }

    #[test]
    fn compose_rejects_mismatched_rank() {
        let err = t(3, 1).compose(&t(2, 1)).unwrap_err();
        assert!(matches!(err, Error::Dimension { .. }));
    }

    #[test]
    fn inverse_examples() {
        assert!(SignedPermutation::identity(3).inverse().is_identity());
        assert_eq!(t(3, 2).inverse(), t(3, 2));
        for g in enumerate(3).unwrap() {
            assert!(g.compose(&g.inverse()).unwrap().is_identity());
            assert!(g.inverse().compose(&g).unwrap().is_identity());
        }
    }

    #[test]
    fn apply_to_point_examples() {
        let x = [1.0, 2.0];
        assert_eq!(
            SignedPermutation::identity(2).apply_to_point(&x).unwrap(),
            vec![1.0, 2.0]
        );
        assert_eq!(r(2).apply_to_point(&x).unwrap(), vec![-1.0, 2.0]);
        assert_eq!(t(2, 1).apply_to_point(&x).unwrap(), vec![2.0, 1.0]);
        assert!(r(2).apply_to_point(&[1.0]).is_err());
    }

    #[test]
    fn conjugating_r1_gives_r2() {
        let (t1, r1) = (t(2, 1), r(2));
        assert_eq!(
            prod(&[&t1, &r1, &t1]),
            SignedPermutation::reflection(2, 2).unwrap()
        );
    }

    #[test]
    fn enumerate_sizes() {
        assert_eq!(enumerate(1).unwrap().len(), 2);
        assert_eq!(enumerate(2).unwrap().len(), 8);
        let all = enumerate(4).unwrap();
        assert_eq!(all.len(), 384);
        let set: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(set.len(), 384);
    }

    #[test]
    fn enumerate_is_sorted_and_indexed() {
        let all = enumerate(3).unwrap();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all[0].is_identity());
        for (i, g) in all.iter().enumerate() {
            assert_eq!(g.index(), i);
        }
    }

    #[test]
    fn enumerate_capacity() {
        assert!(matches!(
            enumerate(6),
            Err(Error::Capacity { rank: 6, max: 5 })
        ));
        assert!(enumerate(0).is_err());
        assert_eq!(enumerate_bounded(6, 6).unwrap().len(), 46080);
    }

    #[test]
    fn words_round_trip() {
        assert!(word_for(&SignedPermutation::identity(3)).is_empty());
        let w = word_for(&t(3, 2));
        assert_eq!(evaluate_word(&w).unwrap(), t(3, 2));
        for g in enumerate(3).unwrap() {
            assert_eq!(evaluate_word(&word_for(&g)).unwrap(), g, "element {g}");
        }
    }

    #[test]
    fn word_relations() {
        use Generator::*;
        assert!(evaluate_word(&GeneratorWord::empty(3))
            .unwrap()
            .is_identity());
        let a = GeneratorWord::new(3, vec![T(1), T(2), T(1)]);
        let b = GeneratorWord::new(3, vec![T(2), T(1), T(2)]);
        assert_eq!(a.evaluate().unwrap(), b.evaluate().unwrap());
        let a = GeneratorWord::new(3, vec![R1, T(2)]);
        let b = GeneratorWord::new(3, vec![T(2), R1]);
        assert_eq!(a.evaluate().unwrap(), b.evaluate().unwrap());
    }

    #[test]
    fn word_out_of_range_letter() {
        let w = GeneratorWord::new(3, vec![Generator::T(3)]);
        assert!(matches!(w.evaluate(), Err(Error::Index { .. })));
    }

    #[test]
    fn word_times_inverse_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let g = SignedPermutation::random(4, &mut rng);
            let w = word_for(&g);
            let mut letters = w.letters().to_vec();
            letters.extend(w.inverse().letters());
            assert!(GeneratorWord::new(4, letters)
                .evaluate()
                .unwrap()
                .is_identity());
        }
    }

    #[test]
    fn random_rewrite_preserves_element() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let g = SignedPermutation::random(3, &mut rng);
            let w = word_for(&g);
            let v = w.random_rewrite(12, &mut rng);
            assert_ne!(v, w);
            assert_eq!(v.evaluate().unwrap(), g);
        }
    }

    #[test]
    fn classify_wedge_examples() {
        assert!(classify_wedge(&[0.5, 1.2]).unwrap().is_identity());
        let q = classify_wedge(&[-0.5, 1.2]).unwrap();
        assert_eq!(q.signs(), vec![-1, 1]);
        assert_eq!(q.perm(), &[0, 1]);

        let x = [2.0, -1.0, 0.5];
        let q = classify_wedge(&x).unwrap();
        let y = q.apply_to_point(&x).unwrap();
        assert!(y[0] > 0.0 && y[0] < y[1] && y[1] < y[2]);
    }

    #[test]
    fn classify_wedge_degenerate() {
        assert!(matches!(
            classify_wedge(&[0.0, 1.0]),
            Err(Error::BoundaryPoint(_))
        ));
        assert!(matches!(
            classify_wedge(&[1.0, -1.0]),
            Err(Error::BoundaryPoint(_))
        ));
        assert!(matches!(
            classify_wedge(&[0.3, 0.3]),
            Err(Error::BoundaryPoint(_))
        ));
    }

    #[test]
    fn group_tables_match_composition() {
        let grp = WeylGroup::new(3).unwrap();
        for g in grp.generators() {
            let ge = g.element(3).unwrap();
            for (q, el) in grp.elements().iter().enumerate() {
                assert_eq!(grp.right_mul(q, g), el.compose(&ge).unwrap().index());
            }
        }
    }

    #[test]
    fn new_validates() {
        assert!(SignedPermutation::new(&[1, 1], &[0, 0]).is_err());
        assert!(SignedPermutation::new(&[1, 2], &[0, 1]).is_err());
        assert!(SignedPermutation::new(&[1], &[0, 1]).is_err());
        assert!(SignedPermutation::new(&[-1, 1], &[1, 0]).is_ok());
    }

    #[test]
    fn display() {
        let g = SignedPermutation::new(&[-1, 1], &[1, 0]).unwrap();
        assert_eq!(g.to_string(), "(-,+;2,1)");
        let w = GeneratorWord::new(2, vec![Generator::T(1), Generator::R1]);
        assert_eq!(w.to_string(), "T1 R1");
    }
}
