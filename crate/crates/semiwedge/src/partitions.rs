//! Integer partitions, exponent tuples for wedge monomials, and the
//! horizontal-strip enumeration behind the Pieri rule.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::semiring::{Pair, Semiring};

/// Orientation carried by reordering a wedge word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_inversions(count: usize) -> Sign {
        if count % 2 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn flip(self) -> Sign {
        self.mul(Sign::Minus)
    }

    /// (1,0) or (0,1) in the symmetrization.
    pub fn pair<S: Semiring>(self) -> Pair<S> {
        match self {
            Sign::Plus => Pair::one(),
            Sign::Minus => Pair::minus_one(),
        }
    }

    pub fn apply<S: Semiring>(self, c: &Pair<S>) -> Pair<S> {
        match self {
            Sign::Plus => c.clone(),
            Sign::Minus => c.negate(),
        }
    }
}

/// Weakly decreasing sequence of positive parts; trailing zeros are stripped
/// on construction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::invalid(format!(
                "parts not weakly decreasing: {parts:?}"
            )));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Part at 0-based index, zero beyond the length.
    pub fn part(&self, j: usize) -> u32 {
        self.0.get(j).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let rows = self.part(0) as usize;
        let cols = (0..rows)
            .map(|c| self.0.iter().filter(|&&p| p as usize > c).count() as u32)
            .collect();
        Partition(cols)
    }

    pub fn contains(&self, inner: &Partition) -> bool {
        (0..inner.len()).all(|j| self.part(j) >= inner.part(j))
    }

    /// `self / inner` is a horizontal strip: the partitions interlace,
    /// inner_k ≥ self_{k+1} along with containment.
    pub fn is_horizontal_strip_over(&self, inner: &Partition) -> bool {
        self.contains(inner) && (0..self.len().saturating_sub(1)).all(|k| inner.part(k) >= self.part(k + 1))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || t == "0" {
            return Ok(Partition::empty());
        }
        let parts = t
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::invalid(format!("bad partition part '{p}': {e}")))
            })
            .collect::<Result<Vec<u32>>>()?;
        Partition::new(parts)
    }
}

/// The exponent word of the shifted monomial for `lambda` in width `r`:
/// entry j (1-based) is r − j + lambda_j, strictly decreasing.
pub fn exponent_tuple(r: u32, lambda: &Partition) -> Result<Vec<u32>> {
    if lambda.len() as u32 > r {
        return Err(Error::invalid(format!(
            "partition {lambda} has more than {r} parts"
        )));
    }
    Ok((0..r).map(|j| r - 1 - j + lambda.part(j as usize)).collect())
}

/// Inverse of `exponent_tuple` on strictly decreasing words: subtracts the
/// staircase r − j. Total because strict decrease forces the result to be
/// weakly decreasing and nonnegative.
pub fn tuple_to_partition(word: &[u32]) -> Result<Partition> {
    let r = word.len() as u32;
    if word.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::invalid(format!("word not strictly decreasing: {word:?}")));
    }
    let parts = word
        .iter()
        .enumerate()
        .map(|(j, &e)| e - (r - 1 - j as u32))
        .collect();
    Partition::new(parts)
}

/// A wedge word brought to strictly decreasing order, with the orientation
/// of the reordering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalTuple {
    pub word: Vec<u32>,
    pub sign: Sign,
}

/// Sorts a word strictly decreasing; `None` when an index repeats (the wedge
/// vanishes). The sign is the parity of the sorting permutation, counted as
/// ascending pairs of the input.
pub fn canonicalize_tuple(word: &[u32]) -> Option<CanonicalTuple> {
    let mut inversions = 0usize;
    for i in 0..word.len() {
        for j in i + 1..word.len() {
            if word[i] == word[j] {
                return None;
            }
            if word[i] < word[j] {
                inversions += 1;
            }
        }
    }
    let mut sorted = word.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    Some(CanonicalTuple {
        word: sorted,
        sign: Sign::from_inversions(inversions),
    })
}

/// Monomial exponents (i_1, ..., i_r) mapped to the conjugate of the
/// partition with i_k parts equal to k.
pub fn monomial_to_partition(exponents: &[u32]) -> Partition {
    let mut parts: Vec<u32> = Vec::new();
    for (k, &count) in exponents.iter().enumerate().rev() {
        parts.extend(std::iter::repeat(k as u32 + 1).take(count as usize));
    }
    Partition(parts).conjugate()
}

/// All mu obtained from `lambda` by adding a horizontal strip of size `i`,
/// with at most `r` rows and, when `n` is finite, first part at most
/// n + 1 − r.
pub fn pieri(lambda: &Partition, i: u32, r: u32, n: Option<u32>) -> Result<Vec<Partition>> {
    if lambda.len() as u32 > r {
        return Err(Error::invalid(format!(
            "partition {lambda} has more than {r} parts"
        )));
    }
    let cap = match n {
        None => None,
        Some(n) => {
            if n < r {
                return Err(Error::invalid(format!("rank {n} smaller than width {r}")));
            }
            Some(n + 1 - r)
        }
    };
    if let Some(cap) = cap {
        if lambda.part(0) > cap {
            return Err(Error::invalid(format!(
                "partition {lambda} exceeds the column bound {cap}"
            )));
        }
    }
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(r as usize);
    grow_strip(lambda, r, cap, i, 0, &mut prefix, &mut out);
    Ok(out)
}

fn grow_strip(
    lambda: &Partition,
    r: u32,
    cap: Option<u32>,
    budget: u32,
    row: u32,
    prefix: &mut Vec<u32>,
    out: &mut Vec<Partition>,
) {
    if row == r {
        if budget == 0 {
            out.push(Partition::new(prefix.clone()).expect("rows chosen weakly decreasing"));
        }
        return;
    }
    let lo = lambda.part(row as usize);
    // Interlacing: this row may not exceed the previous row of lambda.
    let mut hi = if row == 0 {
        cap.unwrap_or(u32::MAX)
    } else {
        lambda.part(row as usize - 1)
    };
    hi = hi.min(lo.saturating_add(budget));
    if let Some(prev) = prefix.last() {
        hi = hi.min(*prev);
    }
    for val in (lo..=hi).rev() {
        prefix.push(val);
        grow_strip(lambda, r, cap, budget - (val - lo), row + 1, prefix, out);
        prefix.pop();
    }
}

/// All partitions with weight at most `max_weight` and at most `max_len`
/// parts, in lexicographic order of their part vectors.
pub fn partitions_up_to(max_weight: u32, max_len: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    collect_partitions(max_weight, max_len, u32::MAX, &mut prefix, &mut out);
    out
}

fn collect_partitions(
    budget: u32,
    slots: u32,
    bound: u32,
    prefix: &mut Vec<u32>,
    out: &mut Vec<Partition>,
) {
    out.push(Partition(prefix.clone()));
    if slots == 0 {
        return;
    }
    for part in (1..=bound.min(budget)).rev() {
        prefix.push(part);
        collect_partitions(budget - part, slots - 1, part, prefix, out);
        prefix.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn construction_and_display() {
        assert_eq!(p(&[3, 2, 1]).to_string(), "3,2,1");
        assert_eq!(Partition::empty().to_string(), "0");
        assert_eq!(p(&[2, 0, 0]), p(&[2]));
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!("4,2,2".parse::<Partition>().unwrap(), p(&[4, 2, 2]));
        assert_eq!("0".parse::<Partition>().unwrap(), Partition::empty());
    }

    #[test]
    fn conjugation() {
        assert_eq!(p(&[4, 2, 1]).conjugate(), p(&[3, 2, 1, 1]));
        assert_eq!(p(&[3, 2, 1]).conjugate(), p(&[3, 2, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        let q = p(&[5, 5, 3, 2]);
        assert_eq!(q.conjugate().conjugate(), q);
    }

    #[test]
    fn exponent_words() {
        assert_eq!(exponent_tuple(3, &p(&[3, 2, 1])).unwrap(), vec![5, 3, 1]);
        assert_eq!(exponent_tuple(2, &p(&[2, 1])).unwrap(), vec![3, 1]);
        assert_eq!(exponent_tuple(3, &Partition::empty()).unwrap(), vec![2, 1, 0]);
        assert!(exponent_tuple(1, &p(&[2, 1])).is_err());
        assert_eq!(tuple_to_partition(&[5, 3, 1]).unwrap(), p(&[3, 2, 1]));
        assert_eq!(tuple_to_partition(&[6, 1]).unwrap(), p(&[5, 1]));
        assert!(tuple_to_partition(&[3, 3]).is_err());
    }

    #[test]
    fn canonicalization() {
        let c = canonicalize_tuple(&[2, 5, 1]).unwrap();
        assert_eq!(c.word, vec![5, 2, 1]);
        assert_eq!(c.sign, Sign::Minus);
        let c = canonicalize_tuple(&[0, 1, 2]).unwrap();
        assert_eq!(c.word, vec![2, 1, 0]);
        assert_eq!(c.sign, Sign::Minus);
        let c = canonicalize_tuple(&[7, 4, 2]).unwrap();
        assert_eq!(c.sign, Sign::Plus);
        assert!(canonicalize_tuple(&[3, 1, 3]).is_none());
    }

    #[test]
    fn pieri_strips() {
        let got = pieri(&p(&[2, 1]), 3, 2, None).unwrap();
        assert_eq!(got, vec![p(&[5, 1]), p(&[4, 2])]);
        // Row bound: third row would be needed for (2,1,1).
        let got = pieri(&p(&[1]), 1, 2, None).unwrap();
        assert_eq!(got, vec![p(&[2]), p(&[1, 1])]);
        // Column bound n + 1 − r.
        let got = pieri(&p(&[2]), 2, 2, Some(4)).unwrap();
        assert_eq!(got, vec![p(&[3, 1]), p(&[2, 2])]);
        assert!(pieri(&p(&[2, 1, 1]), 1, 2, None).is_err());
    }

    #[test]
    fn strip_predicate_matches_enumeration() {
        let lambda = p(&[3, 1]);
        for mu in partitions_up_to(7, 2) {
            let in_list = pieri(&lambda, 3, 2, None).unwrap().contains(&mu);
            let by_predicate = mu.weight() == lambda.weight() + 3
                && mu.is_horizontal_strip_over(&lambda);
            assert_eq!(in_list, by_predicate, "mu = {mu}");
        }
    }

    #[test]
    fn monomial_map() {
        // One column of height 1 and two of height 2: conjugate of (2,2,1).
        assert_eq!(monomial_to_partition(&[1, 2]), p(&[3, 2]));
        assert_eq!(monomial_to_partition(&[0, 0]), Partition::empty());
        assert_eq!(monomial_to_partition(&[3]), p(&[3]));
    }

    #[test]
    fn enumerator_counts() {
        // Partitions of weight ≤ 4 with ≤ 2 parts: (), 1, 2, 11, 3, 21, 4, 31, 22.
        assert_eq!(partitions_up_to(4, 2).len(), 9);
        assert!(partitions_up_to(6, 3).iter().all(|q| q.weight() <= 6 && q.len() <= 3));
    }
}
