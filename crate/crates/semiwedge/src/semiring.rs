//! Commutative base semirings and their symmetrization.
//!
//! A semiring here has no additive inverses; negation is recovered formally by
//! doubling: the symmetrization Â = A × A carries the twist product
//! (a₀,a₁)(b₀,b₁) = (a₀b₀ + a₁b₁, a₀b₁ + a₁b₀) and the switch negation
//! (b₀,b₁) ↦ (b₁,b₀). An element surpasses another, b′ ⪰₀ b, when
//! b′ = b + c(−)c for some c; quasi-zeros c(−)c = (c,c) play the role of zero.
//!
//! Three semirings are built in: ℕ (arbitrary precision), ℚ≥0 (exact
//! rationals) and max-plus (ℤ ∪ {−∞}, add = max, mul = +).

use std::fmt;
use std::str::FromStr;

use num::bigint::BigUint;
use num::rational::BigRational;
use num::{BigInt, One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// A commutative semiring with decidable additive solvability.
///
/// `solve_add(b, b′)` returns some `c` with `b + c = b′` when one exists. For
/// cancellative semirings the witness is unique; for idempotent addition
/// (max-plus) the solution set is an interval and the maximal witness is
/// returned, which together with re-verification is enough to decide the
/// surpassing relation on pairs.
pub trait Semiring:
    Clone + Eq + Ord + std::hash::Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    const NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn from_u64(n: u64) -> Self;

    /// Some `c` with `self + c = target`, if any; canonical witness.
    fn solve_add(&self, target: &Self) -> Option<Self>;

    /// Whether addition is idempotent (`a + a = a`).
    fn is_idempotent() -> bool;

    /// Truncated subtraction: the least `c` with `rhs + c ≥ self` in the
    /// natural order. Used for balance-insensitive (type-2) reduction.
    fn monus(&self, rhs: &Self) -> Self;

    /// Exact division, `Some(q)` with `q * rhs = self` when such `q` exists
    /// and `rhs` is not an annihilator.
    fn try_div(&self, rhs: &Self) -> Option<Self>;

    fn parse(s: &str) -> Result<Self>;

    /// Small random scalar for the randomized axiom suites.
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// Identifier for the built-in semirings, used by CLI flags and reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SemiringId {
    Nat,
    QPlus,
    MaxPlus,
}

impl SemiringId {
    pub const ALL: [SemiringId; 3] = [SemiringId::Nat, SemiringId::QPlus, SemiringId::MaxPlus];

    pub fn name(&self) -> &'static str {
        match self {
            SemiringId::Nat => "nat",
            SemiringId::QPlus => "qplus",
            SemiringId::MaxPlus => "maxplus",
        }
    }
}

impl fmt::Display for SemiringId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SemiringId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nat" | "n" => Ok(SemiringId::Nat),
            "qplus" | "q" => Ok(SemiringId::QPlus),
            "maxplus" | "mp" | "tropical" => Ok(SemiringId::MaxPlus),
            other => Err(Error::invalid(format!(
                "unknown semiring '{other}' (expected nat, qplus or maxplus)"
            ))),
        }
    }
}

/// Runs `$body` with `$S` bound to the scalar type selected by `$id`.
#[macro_export]
macro_rules! with_semiring {
    ($id:expr, $S:ident => $body:expr) => {
        match $id {
            $crate::semiring::SemiringId::Nat => {
                type $S = $crate::semiring::Nat;
                $body
            }
            $crate::semiring::SemiringId::QPlus => {
                type $S = $crate::semiring::QPlus;
                $body
            }
            $crate::semiring::SemiringId::MaxPlus => {
                type $S = $crate::semiring::MaxPlus;
                $body
            }
        }
    };
}

// ---------------------------------------------------------------------------
// ℕ
// ---------------------------------------------------------------------------

/// Natural numbers with arbitrary precision.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Nat(pub BigUint);

impl fmt::Display for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Semiring for Nat {
    const NAME: &'static str = "nat";

    fn zero() -> Self {
        Nat(BigUint::zero())
    }

    fn one() -> Self {
        Nat(BigUint::one())
    }

    fn add(&self, rhs: &Self) -> Self {
        Nat(&self.0 + &rhs.0)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Nat(&self.0 * &rhs.0)
    }

    fn from_u64(n: u64) -> Self {
        Nat(BigUint::from(n))
    }

    fn solve_add(&self, target: &Self) -> Option<Self> {
        if self.0 <= target.0 {
            Some(Nat(&target.0 - &self.0))
        } else {
            None
        }
    }

    fn is_idempotent() -> bool {
        false
    }

    fn monus(&self, rhs: &Self) -> Self {
        if self.0 > rhs.0 {
            Nat(&self.0 - &rhs.0)
        } else {
            Self::zero()
        }
    }

    fn try_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.0.is_zero() {
            return None;
        }
        let (q, r) = num::Integer::div_rem(&self.0, &rhs.0);
        if r.is_zero() {
            Some(Nat(q))
        } else {
            None
        }
    }

    fn parse(s: &str) -> Result<Self> {
        BigUint::from_str(s.trim())
            .map(Nat)
            .map_err(|e| Error::invalid(format!("bad natural number '{s}': {e}")))
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Nat::from_u64(rng.gen_range(0..=9))
    }
}

// ---------------------------------------------------------------------------
// ℚ≥0
// ---------------------------------------------------------------------------

/// Nonnegative rationals, exact. The nonnegativity invariant is maintained by
/// every constructor.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QPlus(BigRational);

impl QPlus {
    /// Builds `num/den`; panics if `den == 0`.
    pub fn from_ratio(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator");
        QPlus(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }
}

impl fmt::Display for QPlus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Semiring for QPlus {
    const NAME: &'static str = "qplus";

    fn zero() -> Self {
        QPlus(BigRational::zero())
    }

    fn one() -> Self {
        QPlus(BigRational::one())
    }

    fn add(&self, rhs: &Self) -> Self {
        QPlus(&self.0 + &rhs.0)
    }

    fn mul(&self, rhs: &Self) -> Self {
        QPlus(&self.0 * &rhs.0)
    }

    fn from_u64(n: u64) -> Self {
        QPlus(BigRational::from(BigInt::from(n)))
    }

    fn solve_add(&self, target: &Self) -> Option<Self> {
        if self.0 <= target.0 {
            Some(QPlus(&target.0 - &self.0))
        } else {
            None
        }
    }

    fn is_idempotent() -> bool {
        false
    }

    fn monus(&self, rhs: &Self) -> Self {
        if self.0 > rhs.0 {
            QPlus(&self.0 - &rhs.0)
        } else {
            Self::zero()
        }
    }

    fn try_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.0.is_zero() {
            None
        } else {
            Some(QPlus(&self.0 / &rhs.0))
        }
    }

    fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        let r = BigRational::from_str(t)
            .map_err(|e| Error::invalid(format!("bad rational '{s}': {e}")))?;
        if r.is_negative() {
            return Err(Error::invalid(format!("negative rational '{s}' not in qplus")));
        }
        Ok(QPlus(r))
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        QPlus::from_ratio(rng.gen_range(0..=9), rng.gen_range(1..=4))
    }
}

// ---------------------------------------------------------------------------
// max-plus
// ---------------------------------------------------------------------------

/// The max-plus semiring ℤ ∪ {−∞}: addition is max, multiplication is
/// integer addition, −∞ (represented by `None`) is the additive zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MaxPlus(pub Option<i64>);

impl MaxPlus {
    pub const NEG_INF: MaxPlus = MaxPlus(None);

    pub fn finite(v: i64) -> Self {
        MaxPlus(Some(v))
    }
}

impl fmt::Display for MaxPlus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            None => f.write_str("-inf"),
            Some(v) => v.fmt(f),
        }
    }
}

impl Semiring for MaxPlus {
    const NAME: &'static str = "maxplus";

    fn zero() -> Self {
        MaxPlus(None)
    }

    fn one() -> Self {
        MaxPlus(Some(0))
    }

    fn add(&self, rhs: &Self) -> Self {
        MaxPlus(match (self.0, rhs.0) {
            (None, b) => b,
            (a, None) => a,
            (Some(a), Some(b)) => Some(a.max(b)),
        })
    }

    fn mul(&self, rhs: &Self) -> Self {
        MaxPlus(match (self.0, rhs.0) {
            (Some(a), Some(b)) => Some(a.checked_add(b).expect("max-plus overflow")),
            _ => None,
        })
    }

    fn from_u64(n: u64) -> Self {
        // The embedding of ℕ sends 0 to the additive zero and n ≥ 1 to the
        // multiplicative fold of 1, i.e. the integer n.
        if n == 0 {
            MaxPlus(None)
        } else {
            MaxPlus(Some(i64::try_from(n).expect("max-plus overflow")))
        }
    }

    fn solve_add(&self, target: &Self) -> Option<Self> {
        // max(self, c) = target is solvable iff self ≤ target; the solution
        // set is then an interval whose maximal element is target itself.
        if self <= target {
            Some(*target)
        } else {
            None
        }
    }

    fn is_idempotent() -> bool {
        true
    }

    fn monus(&self, rhs: &Self) -> Self {
        if self > rhs {
            *self
        } else {
            MaxPlus(None)
        }
    }

    fn try_div(&self, rhs: &Self) -> Option<Self> {
        match (self.0, rhs.0) {
            (_, None) => None,
            (None, Some(_)) => Some(MaxPlus(None)),
            (Some(a), Some(b)) => Some(MaxPlus(Some(a - b))),
        }
    }

    fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "-inf" || t == "-∞" {
            return Ok(MaxPlus(None));
        }
        i64::from_str(t)
            .map(MaxPlus::finite)
            .map_err(|e| Error::invalid(format!("bad max-plus value '{s}': {e}")))
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        if rng.gen_ratio(1, 10) {
            MaxPlus(None)
        } else {
            MaxPlus(Some(rng.gen_range(-4..=5)))
        }
    }
}

// ---------------------------------------------------------------------------
// Symmetrized pairs
// ---------------------------------------------------------------------------

/// An element of the symmetrization Â = A × A, written (pos, neg).
///
/// The twist product makes Â a semiring; the switch (pos, neg) ↦ (neg, pos)
/// is its negation map. A pair is balanced (a quasi-zero) when pos = neg, and
/// tangible when exactly one component is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pair<S> {
    pub pos: S,
    pub neg: S,
}

impl<S: Semiring> Pair<S> {
    pub fn new(pos: S, neg: S) -> Self {
        Pair { pos, neg }
    }

    pub fn zero() -> Self {
        Pair::new(S::zero(), S::zero())
    }

    pub fn one() -> Self {
        Pair::new(S::one(), S::zero())
    }

    pub fn minus_one() -> Self {
        Pair::new(S::zero(), S::one())
    }

    /// Embeds a base scalar as the tangible pair (a, 0).
    pub fn from_scalar(a: S) -> Self {
        Pair::new(a, S::zero())
    }

    pub fn from_u64(n: u64) -> Self {
        Pair::from_scalar(S::from_u64(n))
    }

    pub fn is_zero(&self) -> bool {
        self.pos.is_zero() && self.neg.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.pos.is_one() && self.neg.is_zero()
    }

    /// pos = neg; includes the zero pair.
    pub fn is_balanced(&self) -> bool {
        self.pos == self.neg
    }

    /// Exactly one component nonzero.
    pub fn is_tangible(&self) -> bool {
        self.pos.is_zero() != self.neg.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Pair::new(self.pos.add(&rhs.pos), self.neg.add(&rhs.neg))
    }

    /// Twist product: (a₀,a₁)(b₀,b₁) = (a₀b₀ + a₁b₁, a₀b₁ + a₁b₀).
    pub fn mul(&self, rhs: &Self) -> Self {
        Pair::new(
            self.pos.mul(&rhs.pos).add(&self.neg.mul(&rhs.neg)),
            self.pos.mul(&rhs.neg).add(&self.neg.mul(&rhs.pos)),
        )
    }

    /// The switch negation.
    pub fn negate(&self) -> Self {
        Pair::new(self.neg.clone(), self.pos.clone())
    }

    /// Quasi-zero of self: self (−) self = (pos+neg, pos+neg).
    pub fn circ(&self) -> Self {
        let s = self.pos.add(&self.neg);
        Pair::new(s.clone(), s)
    }

    /// Multiplies both components by a base scalar.
    pub fn scale(&self, a: &S) -> Self {
        Pair::new(self.pos.mul(a), self.neg.mul(a))
    }

    /// Decides `self ⪰₀ other`, i.e. self = other + (c,c) for some c.
    ///
    /// The same witness must serve both components. Candidates are the
    /// componentwise solutions and zero; each candidate set per component is
    /// either empty, a point, or a downward interval with the returned
    /// witness as its top, so checking the candidates is complete.
    pub fn surpasses(&self, other: &Self) -> bool {
        let mut candidates: Vec<S> = Vec::with_capacity(3);
        if let Some(c) = other.pos.solve_add(&self.pos) {
            candidates.push(c);
        }
        if let Some(c) = other.neg.solve_add(&self.neg) {
            candidates.push(c);
        }
        candidates.push(S::zero());
        candidates.into_iter().any(|c| {
            other.pos.add(&c) == self.pos && other.neg.add(&c) == self.neg
        })
    }

    /// Mutual surpassing in both directions.
    pub fn equiv(&self, other: &Self) -> bool {
        self.surpasses(other) && other.surpasses(self)
    }

    /// Balance-insensitive normal form: subtracts min(pos, neg) from both
    /// components. Over ℕ and ℚ≥0 this is reduction modulo quasi-zeros
    /// (the type-2 quotient); it is the identity on tangible pairs.
    pub fn type2_reduce(&self) -> Self {
        let m = if self.pos <= self.neg { self.pos.clone() } else { self.neg.clone() };
        Pair::new(self.pos.monus(&m), self.neg.monus(&m))
    }

    /// Random pair with independently sampled components.
    pub fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Pair::new(S::sample(rng), S::sample(rng))
    }

    /// Random tangible pair: (a, 0) or (0, a) with a ≠ 0.
    pub fn sample_tangible<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let mut a = S::sample(rng);
        while a.is_zero() {
            a = S::sample(rng);
        }
        if rng.gen_bool(0.5) {
            Pair::from_scalar(a)
        } else {
            Pair::from_scalar(a).negate()
        }
    }
}

impl<S: Semiring> fmt::Display for Pair<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.pos, self.neg)
    }
}
