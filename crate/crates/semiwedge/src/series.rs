//! Doubly truncated Laurent series in z and w with wedge coefficients.
//!
//! Operator series are infinite in one direction per variable: raising
//! operators produce arbitrarily high powers of z, lowering operators
//! arbitrarily low powers of w. A series therefore records the region where
//! its coefficients are exact: everything at z-exponent ≤ `z_trunc` and
//! w-exponent ≥ `w_trunc` (`None` meaning unbounded). Terms outside the
//! region are never stored. Arithmetic propagates the region conservatively,
//! and comparisons report `Inconclusive` when a needed coefficient falls
//! outside it.

use std::collections::BTreeMap;

use crate::exterior::{wedge, WedgeElement};
use crate::freemod::FreeElement;
use crate::semiring::{Pair, Semiring};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiSeries<S: Semiring> {
    terms: BTreeMap<(i32, i32), WedgeElement<S>>,
    /// Coefficients with z-exponent above this are unknown.
    z_trunc: Option<i32>,
    /// Coefficients with w-exponent below this are unknown.
    w_trunc: Option<i32>,
}

impl<S: Semiring> BiSeries<S> {
    /// The zero series, exact everywhere.
    pub fn zero() -> Self {
        BiSeries { terms: BTreeMap::new(), z_trunc: None, w_trunc: None }
    }

    /// A single exact term v·z^z w^w.
    pub fn monomial(z: i32, w: i32, v: WedgeElement<S>) -> Self {
        let mut s = Self::zero();
        s.insert_add(z, w, v);
        s
    }

    /// Embeds a wedge element at z^0 w^0.
    pub fn from_element(v: WedgeElement<S>) -> Self {
        Self::monomial(0, 0, v)
    }

    pub fn z_trunc(&self) -> Option<i32> {
        self.z_trunc
    }

    pub fn w_trunc(&self) -> Option<i32> {
        self.w_trunc
    }

    /// Whether the coefficient at (z, w) is exact.
    pub fn known(&self, z: i32, w: i32) -> bool {
        self.z_trunc.map_or(true, |t| z <= t) && self.w_trunc.map_or(true, |t| w >= t)
    }

    /// Coefficient at (z, w); zero when absent. Callers must consult
    /// `known` first, unknown coefficients also read as zero.
    pub fn coeff(&self, z: i32, w: i32) -> WedgeElement<S> {
        self.terms.get(&(z, w)).cloned().unwrap_or_else(FreeElement::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = (&(i32, i32), &WedgeElement<S>)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Restricts the exact region; terms falling outside are dropped.
    pub fn clip(&mut self, z_trunc: Option<i32>, w_trunc: Option<i32>) {
        self.z_trunc = merge_max_bound(self.z_trunc, z_trunc);
        self.w_trunc = merge_min_bound(self.w_trunc, w_trunc);
        let (zt, wt) = (self.z_trunc, self.w_trunc);
        self.terms.retain(|&(z, w), _| {
            zt.map_or(true, |t| z <= t) && wt.map_or(true, |t| w >= t)
        });
    }

    pub fn insert_add(&mut self, z: i32, w: i32, v: WedgeElement<S>) {
        if v.is_zero() || !self.known(z, w) {
            return;
        }
        let entry = self.terms.entry((z, w)).or_insert_with(FreeElement::zero);
        *entry = entry.add(&v);
        if entry.is_zero() {
            self.terms.remove(&(z, w));
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        out.clip(self.z_trunc, self.w_trunc);
        out.clip(rhs.z_trunc, rhs.w_trunc);
        for (&(z, w), v) in self.terms.iter().chain(rhs.terms.iter()) {
            out.insert_add(z, w, v.clone());
        }
        out
    }

    pub fn negate(&self) -> Self {
        self.map_coeffs(|v| v.negate())
    }

    pub fn scale(&self, c: &Pair<S>) -> Self {
        self.map_coeffs(|v| v.scale(c))
    }

    pub fn map_coeffs<F: Fn(&WedgeElement<S>) -> WedgeElement<S>>(&self, f: F) -> Self {
        let mut out = Self::zero();
        out.clip(self.z_trunc, self.w_trunc);
        for (&(z, w), v) in &self.terms {
            out.insert_add(z, w, f(v));
        }
        out
    }

    /// Multiplies by the monomial z^dz w^dw, shifting the exact region too.
    pub fn shift(&self, dz: i32, dw: i32) -> Self {
        BiSeries {
            terms: self
                .terms
                .iter()
                .map(|(&(z, w), v)| ((z + dz, w + dw), v.clone()))
                .collect(),
            z_trunc: self.z_trunc.map(|t| t + dz),
            w_trunc: self.w_trunc.map(|t| t + dw),
        }
    }

    fn z_support_min(&self) -> Option<i32> {
        self.terms.keys().map(|&(z, _)| z).min()
    }

    fn w_support_max(&self) -> Option<i32> {
        self.terms.keys().map(|&(_, w)| w).max()
    }

    /// Coefficientwise wedge with exponent addition.
    ///
    /// A total degree is exact only if no unknown coefficient of one factor
    /// can meet a stored term of the other: the z-ceiling of the product is
    /// min over factors of own ceiling + the other's lowest z-exponent, and
    /// dually for the w-floor with the highest w-exponent.
    pub fn wedge_with(&self, rhs: &Self) -> Self {
        let z_trunc = merge_max_bound(
            product_bound_max(self.z_trunc, rhs.z_support_min()),
            product_bound_max(rhs.z_trunc, self.z_support_min()),
        );
        let w_trunc = merge_min_bound(
            product_bound_min(self.w_trunc, rhs.w_support_max()),
            product_bound_min(rhs.w_trunc, self.w_support_max()),
        );
        let mut out = Self::zero();
        out.clip(z_trunc, w_trunc);
        for (&(za, wa), va) in &self.terms {
            for (&(zb, wb), vb) in &rhs.terms {
                out.insert_add(za + zb, wa + wb, wedge(va, vb));
            }
        }
        out
    }
}

/// Tighter of two z-ceilings (`None` = unbounded).
fn merge_max_bound(a: Option<i32>, b: Option<i32>) -> Option<i32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) | (None, x) => x,
    }
}

/// Tighter of two w-floors.
fn merge_min_bound(a: Option<i32>, b: Option<i32>) -> Option<i32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) | (None, x) => x,
    }
}

fn product_bound_max(own_trunc: Option<i32>, other_min: Option<i32>) -> Option<i32> {
    match (own_trunc, other_min) {
        (None, _) => None,
        // The other factor is zero: nothing meets the unknown region.
        (_, None) => None,
        (Some(t), Some(m)) => Some(t + m),
    }
}

fn product_bound_min(own_trunc: Option<i32>, other_max: Option<i32>) -> Option<i32> {
    match (own_trunc, other_max) {
        (None, _) => None,
        (_, None) => None,
        (Some(t), Some(m)) => Some(t + m),
    }
}

// ---------------------------------------------------------------------------
// Comparison
// ---------------------------------------------------------------------------

/// Rectangle of total degrees examined by a check: z-exponents up to `zmax`,
/// w-exponents down to `wmin`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub zmax: i32,
    pub wmin: i32,
}

impl Window {
    pub fn contains(&self, z: i32, w: i32) -> bool {
        z <= self.zmax && w >= self.wmin
    }
}

/// Outcome of a coefficientwise comparison over a window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails { z: i32, w: i32, word: Vec<u32>, upper: String, lower: String },
    Inconclusive { z: i32, w: i32 },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn and(self, other: Verdict) -> Verdict {
        match self {
            Verdict::Holds => other,
            v => v,
        }
    }
}

/// Decides whether every coefficient of `upper` surpasses the matching
/// coefficient of `lower` inside the window. Keys where either series is
/// truncated away make the comparison inconclusive.
pub fn series_surpasses<S: Semiring>(
    upper: &BiSeries<S>,
    lower: &BiSeries<S>,
    window: &Window,
) -> Verdict {
    let mut keys: Vec<(i32, i32)> = upper.terms.keys().chain(lower.terms.keys()).copied().collect();
    keys.sort_unstable();
    keys.dedup();
    for (z, w) in keys {
        if !window.contains(z, w) {
            continue;
        }
        if !upper.known(z, w) || !lower.known(z, w) {
            return Verdict::Inconclusive { z, w };
        }
        let up = upper.coeff(z, w);
        let low = lower.coeff(z, w);
        if let Some((word, a, b)) = up.first_violation(&low) {
            return Verdict::Fails {
                z,
                w,
                word,
                upper: a.to_string(),
                lower: b.to_string(),
            };
        }
    }
    Verdict::Holds
}

/// Mutual surpassing over the window.
pub fn series_equiv<S: Semiring>(a: &BiSeries<S>, b: &BiSeries<S>, window: &Window) -> Verdict {
    series_surpasses(a, b, window).and(series_surpasses(b, a, window))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::wedge_monomial;
    use crate::semiring::Nat;

    fn mono(word: &[u32]) -> WedgeElement<Nat> {
        wedge_monomial(word)
    }

    #[test]
    fn clip_drops_outside_terms() {
        let mut s = BiSeries::monomial(2, 0, mono(&[1]));
        s.insert_add(5, 0, mono(&[2]));
        s.clip(Some(3), None);
        assert_eq!(s.coeff(5, 0), FreeElement::zero());
        assert!(!s.known(5, 0));
        assert!(s.known(3, -100));
        assert_eq!(s.coeff(2, 0), mono(&[1]));
    }

    #[test]
    fn add_intersects_regions() {
        let mut a = BiSeries::monomial(0, 0, mono(&[3]));
        a.clip(Some(4), None);
        let mut b = BiSeries::monomial(1, -2, mono(&[2]));
        b.clip(None, Some(-3));
        let sum = a.add(&b);
        assert_eq!(sum.z_trunc(), Some(4));
        assert_eq!(sum.w_trunc(), Some(-3));
        assert_eq!(sum.coeff(1, -2), mono(&[2]));
    }

    #[test]
    fn wedge_with_propagates_bounds() {
        // a known for z ≤ 3, lowest z-exponent 1; b exact with lowest 2.
        let mut a = BiSeries::monomial(1, 0, mono(&[4]));
        a.insert_add(3, 0, mono(&[5]));
        a.clip(Some(3), None);
        let b = BiSeries::monomial(2, 0, mono(&[1]));
        let p = a.wedge_with(&b);
        assert_eq!(p.z_trunc(), Some(5));
        assert_eq!(p.coeff(3, 0), mono(&[4, 1]));
        assert_eq!(p.coeff(5, 0), mono(&[5, 1]));
        // Wedging with the zero series is exact zero.
        let q = a.wedge_with(&BiSeries::zero());
        assert!(q.is_zero());
        assert_eq!(q.z_trunc(), None);
    }

    #[test]
    fn shift_moves_region() {
        let mut a = BiSeries::monomial(0, 0, mono(&[1]));
        a.clip(Some(2), Some(0));
        let s = a.shift(3, -1);
        assert_eq!(s.z_trunc(), Some(5));
        assert_eq!(s.w_trunc(), Some(-1));
        assert_eq!(s.coeff(3, -1), mono(&[1]));
    }

    #[test]
    fn verdicts() {
        let window = Window { zmax: 8, wmin: -8 };
        let low = BiSeries::monomial(1, 0, mono(&[2]));
        let mut high = BiSeries::monomial(1, 0, mono(&[2]).add(&mono(&[3]).circ()));
        high.insert_add(2, 0, mono(&[1]).circ());
        assert!(series_surpasses(&high, &low, &window).holds());
        match series_surpasses(&low, &high, &window) {
            Verdict::Fails { z: 1, w: 0, word, .. } => assert_eq!(word, vec![3]),
            v => panic!("unexpected verdict {v:?}"),
        }
        // The upper side carries an extra key where the truncated lower side
        // no longer knows its coefficient.
        let mut trunc = low.clone();
        trunc.clip(Some(1), None);
        let mut probe = low.clone();
        probe.insert_add(2, 0, mono(&[9]));
        assert_eq!(
            series_surpasses(&probe, &trunc, &window),
            Verdict::Inconclusive { z: 2, w: 0 }
        );
        // A smaller window never reaches the unknown key.
        let small = Window { zmax: 1, wmin: -8 };
        assert!(series_surpasses(&probe, &trunc, &small).holds());
    }
}
