//! Generating-series operators on the exterior algebra.
//!
//! Each operator acts multiplicatively along wedge letters, pairing a letter
//! change with a power of the series variable:
//!
//! - raising: x^e ↦ Σ_{i≥0} x^{e+i} v^i (infinitely many terms, truncated);
//! - lowering: x^e ↦ Σ_{i=0..e} x^{e−i} v^{−i} (finite, exact);
//! - bar variants 1 (−) f v with f the one-step shift, two terms per letter;
//! - the geometric and bar series of an arbitrary finite gl element, used to
//!   probe the multiplicative (Hopf-style) property on products.
//!
//! Applying an operator to a `BiSeries` propagates the exact region: an
//! operator that can move the active variable toward the unknown side of a
//! truncation shrinks the region by (word length) × (step), and operators
//! with unboundedly many terms are truncated at the requested ceiling.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exterior::{
    contract_letter, shift_derivation, wedge_monomial, BilinearForm, GlGenerator, WedgeElement,
};
use crate::freemod::FreeElement;
use crate::partitions::canonicalize_tuple;
use crate::semiring::{Pair, Semiring};
use crate::series::BiSeries;

/// Which series variable an operator application binds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variable {
    Z,
    W,
}

/// A finite gl element Σ c · x^up ⊗ ∂_down.
pub type GlSum<S> = Vec<(GlGenerator, Pair<S>)>;

#[derive(Debug, Clone)]
pub enum SeriesOp<S: Semiring> {
    /// Σ_{i≥0} (shift up by i) v^i.
    Raising,
    /// Σ_{i=0..e} (shift down by i) v^{−i}.
    Lowering,
    /// 1 (−) (shift up by 1) v.
    BarRaising,
    /// 1 (−) (shift down by 1) v^{−1}.
    BarLowering,
    /// Σ_{i≥0} f^i v^i for a finite gl element f.
    Geometric(GlSum<S>),
    /// 1 (−) f v.
    BarOf(GlSum<S>),
}

impl<S: Semiring> SeriesOp<S> {
    /// Whether the expansion has unboundedly many terms per letter.
    fn unbounded_up(&self) -> bool {
        matches!(self, SeriesOp::Raising | SeriesOp::Geometric(_))
    }

    /// Largest upward variable shift per letter, when bounded.
    fn max_up_shift(&self) -> Option<i32> {
        match self {
            SeriesOp::Raising | SeriesOp::Geometric(_) => None,
            SeriesOp::BarRaising | SeriesOp::BarOf(_) => Some(1),
            SeriesOp::Lowering | SeriesOp::BarLowering => Some(0),
        }
    }

    /// Largest downward variable shift per letter, when bounded.
    fn max_down_shift(&self) -> Option<i32> {
        match self {
            SeriesOp::Lowering => None,
            SeriesOp::BarLowering => Some(1),
            SeriesOp::Raising
            | SeriesOp::BarRaising
            | SeriesOp::Geometric(_)
            | SeriesOp::BarOf(_) => Some(0),
        }
    }
}

fn gl_image<S: Semiring>(f: &GlSum<S>, e: u32) -> Vec<(u32, Pair<S>)> {
    f.iter()
        .filter(|(g, _)| g.down == e)
        .map(|(g, c)| (g.up, c.clone()))
        .collect()
}

/// Per-letter expansion of `op` at letter `e`: (variable shift, new letter,
/// coefficient). `budget` caps the total upward shift still available.
fn letter_choices<S: Semiring>(
    op: &SeriesOp<S>,
    e: u32,
    budget: i32,
    n: Option<u32>,
) -> Vec<(i32, u32, Pair<S>)> {
    let keep = |letter: u32| n.map_or(true, |n| letter < n);
    let mut out = Vec::new();
    match op {
        SeriesOp::Raising => {
            for i in 0..=budget.max(-1) {
                let letter = e + i as u32;
                if keep(letter) {
                    out.push((i, letter, Pair::one()));
                }
            }
        }
        SeriesOp::Lowering => {
            for i in 0..=e {
                out.push((-(i as i32), e - i, Pair::one()));
            }
        }
        SeriesOp::BarRaising => {
            out.push((0, e, Pair::one()));
            if keep(e + 1) {
                out.push((1, e + 1, Pair::minus_one()));
            }
        }
        SeriesOp::BarLowering => {
            out.push((0, e, Pair::one()));
            if e >= 1 {
                out.push((-1, e - 1, Pair::minus_one()));
            }
        }
        SeriesOp::Geometric(f) => {
            // Level i of the geometric series is f^i applied to x^e.
            let mut level: Vec<(u32, Pair<S>)> = vec![(e, Pair::one())];
            for i in 0..=budget.max(-1) {
                for (letter, c) in &level {
                    if keep(*letter) {
                        out.push((i, *letter, c.clone()));
                    }
                }
                let mut next: Vec<(u32, Pair<S>)> = Vec::new();
                for (letter, c) in &level {
                    for (up, fc) in gl_image(f, *letter) {
                        next.push((up, fc.mul(c)));
                    }
                }
                if next.is_empty() {
                    break;
                }
                level = next;
            }
        }
        SeriesOp::BarOf(f) => {
            out.push((0, e, Pair::one()));
            for (up, c) in gl_image(f, e) {
                if keep(up) {
                    out.push((1, up, c.negate()));
                }
            }
        }
    }
    out
}

/// Expands a single wedge word under `op`, multiplicatively over its
/// letters, with total upward shift capped by `budget`.
fn expand_word<S: Semiring>(
    op: &SeriesOp<S>,
    word: &[u32],
    budget: i32,
    n: Option<u32>,
) -> Vec<(i32, Vec<u32>, Pair<S>)> {
    let mut out = Vec::new();
    let mut letters = Vec::with_capacity(word.len());
    descend(op, word, 0, budget, 0, &mut letters, Pair::one(), n, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn descend<S: Semiring>(
    op: &SeriesOp<S>,
    word: &[u32],
    idx: usize,
    budget: i32,
    shift: i32,
    letters: &mut Vec<u32>,
    coeff: Pair<S>,
    n: Option<u32>,
    out: &mut Vec<(i32, Vec<u32>, Pair<S>)>,
) {
    if idx == word.len() {
        out.push((shift, letters.clone(), coeff));
        return;
    }
    for (d, letter, c) in letter_choices(op, word[idx], budget, n) {
        letters.push(letter);
        descend(
            op,
            word,
            idx + 1,
            budget - d.max(0),
            shift + d,
            letters,
            coeff.mul(&c),
            n,
            out,
        );
        letters.pop();
    }
}

/// Applies `op` in `var` to every coefficient of `s`.
///
/// `zmax` caps the z-exponent reachable by unbounded raising operators.
/// Series which are inexact in the direction an operator moves without
/// bound cannot be processed and are rejected. The region update assumes
/// the series is degree-homogeneous (all operators here preserve word
/// length, and every series built by this crate is homogeneous).
pub fn apply_op<S: Semiring>(
    s: &BiSeries<S>,
    op: &SeriesOp<S>,
    var: Variable,
    zmax: i32,
    n: Option<u32>,
) -> Result<BiSeries<S>> {
    let r = s.support().map(|(_, v)| v.iter().map(|(w, _)| w.len()).max().unwrap_or(0)).max().unwrap_or(0) as i32;

    let mut z_trunc = s.z_trunc();
    let mut w_trunc = s.w_trunc();
    match var {
        Variable::Z => {
            if op.unbounded_up() {
                z_trunc = Some(z_trunc.map_or(zmax, |t| t.min(zmax)));
            } else if let Some(t) = z_trunc {
                // Junk above the ceiling can fall back into view.
                match op.max_down_shift() {
                    Some(d) => z_trunc = Some(t - r * d),
                    None => {
                        return Err(Error::Unsupported(
                            "unbounded lowering in z on a z-truncated series".into(),
                        ))
                    }
                }
            }
        }
        Variable::W => {
            if op.unbounded_up() {
                return Err(Error::Unsupported(
                    "unbounded raising in w has no finite representation".into(),
                ));
            }
            if let Some(f) = w_trunc {
                // Junk below the floor can climb back into view.
                let d = op.max_up_shift().expect("bounded by the check above");
                w_trunc = Some(f + r * d);
            }
        }
    }

    let mut out = BiSeries::zero();
    out.clip(z_trunc, w_trunc);
    for (&(z0, w0), v) in s.support() {
        let budget = match var {
            Variable::Z => zmax - z0,
            Variable::W => i32::MAX, // bounded ops ignore the budget
        };
        if op.unbounded_up() && budget < 0 {
            continue; // every output would land beyond the ceiling
        }
        for (word, c) in v.iter() {
            for (shift, raw, mult) in expand_word(op, word, budget, n) {
                let Some(canon) = canonicalize_tuple(&raw) else {
                    continue;
                };
                let coeff = canon.sign.apply(&c.mul(&mult));
                let (z, w) = match var {
                    Variable::Z => (z0 + shift, w0),
                    Variable::W => (z0, w0 + shift),
                };
                out.insert_add(z, w, FreeElement::from_term(canon.word, coeff));
            }
        }
    }
    Ok(out)
}

/// Applies a chain of operators right to left (innermost first).
pub fn apply_chain<S: Semiring>(
    s: &BiSeries<S>,
    chain: &[(SeriesOp<S>, Variable)],
    zmax: i32,
    n: Option<u32>,
) -> Result<BiSeries<S>> {
    let mut acc = s.clone();
    for (op, var) in chain.iter().rev() {
        acc = apply_op(&acc, op, *var, zmax, n)?;
    }
    Ok(acc)
}

/// Contracts every coefficient by ∂_i against `form`.
pub fn contract_series<S: Semiring>(
    i: u32,
    s: &BiSeries<S>,
    form: &BilinearForm<S>,
) -> BiSeries<S> {
    s.map_coeffs(|v| contract_letter(i, v, form))
}

/// x(z) = Σ_{i≥0} x^i z^i, truncated at `zmax`.
pub fn generating_x<S: Semiring>(zmax: i32, n: Option<u32>) -> BiSeries<S> {
    let mut out = BiSeries::zero();
    out.clip(Some(zmax), None);
    for i in 0..=zmax.max(-1) {
        let letter = i as u32;
        if n.map_or(true, |n| letter < n) {
            out.insert_add(i, 0, wedge_monomial(&[letter]));
        }
    }
    out
}

/// ∂(w⁻¹) ⌟ u = Σ_{j≥0} (∂_j ⌟ u) w^{−j} with the Kronecker pairing.
/// Finite and exact: only letters present in u contribute.
pub fn partial_series<S: Semiring>(u: &WedgeElement<S>) -> BiSeries<S> {
    let form = BilinearForm::kronecker();
    let mut letters: Vec<u32> = u.iter().flat_map(|(w, _)| w.iter().copied()).collect();
    letters.sort_unstable();
    letters.dedup();
    let mut out = BiSeries::zero();
    for j in letters {
        out.insert_add(0, -(j as i32), contract_letter(j, u, &form));
    }
    out
}

/// The transposed lowering series evaluated against u:
/// Σ_{i≥0} (∂_{j+i} ⌟ u) w^{−i}. At j = 0 this coincides with
/// `partial_series`.
pub fn dual_shift_series<S: Semiring>(j: u32, u: &WedgeElement<S>) -> BiSeries<S> {
    let form = BilinearForm::kronecker();
    let max_letter = u
        .iter()
        .flat_map(|(w, _)| w.iter().copied())
        .max()
        .unwrap_or(0);
    let mut out = BiSeries::zero();
    for i in 0..=max_letter.saturating_sub(j) {
        out.insert_add(0, -(i as i32), contract_letter(j + i, u, &form));
    }
    out
}

/// Laplace-style expansion along two rows: Σ_j sign(j) · scalars[j] ∧
/// (wedge of all vectors except position j), position 0 positive.
pub fn two_row_expand<S: Semiring>(
    scalars: &[BiSeries<S>],
    vectors: &[BiSeries<S>],
) -> Result<BiSeries<S>> {
    if scalars.len() != vectors.len() {
        return Err(Error::Dimension(format!(
            "two-row expansion needs matching lengths, got {} scalars and {} vectors",
            scalars.len(),
            vectors.len()
        )));
    }
    let mut out = BiSeries::zero();
    for j in 0..scalars.len() {
        let mut minor = BiSeries::from_element(crate::exterior::unit());
        for (k, vec) in vectors.iter().enumerate() {
            if k != j {
                minor = minor.wedge_with(vec);
            }
        }
        let mut term = scalars[j].wedge_with(&minor);
        if j % 2 == 1 {
            term = term.negate();
        }
        out = out.add(&term);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Exponential comparison
// ---------------------------------------------------------------------------

/// exp(Σ_{i≥1} (1/i) δ_i z^i) applied to u, truncated at z-degree `zmax`.
/// δ_i is the Leibniz extension of the shift x^e ↦ x^{e+i}. Needs inverses
/// of the positive integers, so ℕ is rejected.
pub fn exp_series<S: Semiring>(
    u: &WedgeElement<S>,
    zmax: i32,
    n: Option<u32>,
) -> Result<BiSeries<S>> {
    let inv = |k: u64| -> Result<S> {
        S::one().try_div(&S::from_u64(k)).ok_or_else(|| {
            Error::Division(format!("1/{k} does not exist in {}", S::NAME))
        })
    };
    // T maps degree d to degrees d+i with factor (1/i)·δ_i.
    let apply_t = |graded: &BTreeMap<i32, WedgeElement<S>>| -> Result<BTreeMap<i32, WedgeElement<S>>> {
        let mut next: BTreeMap<i32, WedgeElement<S>> = BTreeMap::new();
        for (&d, v) in graded {
            for i in 1..=(zmax - d).max(0) {
                let image = shift_derivation(i as u32, v, n).scale_scalar(&inv(i as u64)?);
                if !image.is_zero() {
                    let slot = next.entry(d + i).or_default();
                    *slot = slot.add(&image);
                }
            }
        }
        Ok(next)
    };

    let mut total: BTreeMap<i32, WedgeElement<S>> = BTreeMap::new();
    total.insert(0, u.clone());
    let mut power: BTreeMap<i32, WedgeElement<S>> = total.clone();
    for k in 1..=zmax.max(0) {
        // power = T^k u / k!, built as (1/k)·T(previous).
        power = apply_t(&power)?;
        let scale = inv(k as u64)?;
        for v in power.values_mut() {
            *v = v.scale_scalar(&scale);
        }
        if power.is_empty() {
            break;
        }
        for (&d, v) in &power {
            let slot = total.entry(d).or_default();
            *slot = slot.add(v);
        }
    }

    let mut out = BiSeries::zero();
    out.clip(Some(zmax), None);
    for (d, v) in total {
        out.insert_add(d, 0, v);
    }
    Ok(out)
}

/// How the exponential of the shift derivations compares with the raising
/// series on one element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExpComparison {
    /// Coefficientwise equality on the whole window.
    pub exact_equal: bool,
    /// Equality after balance reduction.
    pub reduced_equal: bool,
    /// Every raising coefficient surpasses the exponential coefficient.
    pub raising_covers_exp: bool,
}

pub fn exp_compare<S: Semiring>(
    u: &WedgeElement<S>,
    zmax: i32,
    n: Option<u32>,
) -> Result<ExpComparison> {
    let exp = exp_series(u, zmax, n)?;
    let sigma = apply_op(
        &BiSeries::from_element(u.clone()),
        &SeriesOp::Raising,
        Variable::Z,
        zmax,
        n,
    )?;
    let mut exact = true;
    let mut reduced = true;
    let mut covers = true;
    for d in 0..=zmax.max(0) {
        let a = sigma.coeff(d, 0);
        let b = exp.coeff(d, 0);
        exact &= a == b;
        reduced &= a.type2_reduce() == b.type2_reduce();
        covers &= a.surpasses(&b);
    }
    Ok(ExpComparison { exact_equal: exact, reduced_equal: reduced, raising_covers_exp: covers })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::{Nat, Pair, QPlus};
    use crate::series::{series_surpasses, Verdict, Window};

    type N = Nat;

    fn mono(word: &[u32]) -> WedgeElement<N> {
        wedge_monomial(word)
    }

    fn raise(s: &BiSeries<N>, zmax: i32) -> BiSeries<N> {
        apply_op(s, &SeriesOp::Raising, Variable::Z, zmax, None).unwrap()
    }

    #[test]
    fn raising_on_two_letters() {
        let s = raise(&BiSeries::from_element(mono(&[3, 1])), 8);
        // z³ coefficient: shifts (3,0), (2,1), (1,2) and the reordered (0,3).
        let c3 = s.coeff(3, 0);
        assert_eq!(c3.coeff(&vec![6, 1]), Pair::one());
        assert_eq!(c3.coeff(&vec![5, 2]), Pair::one());
        assert_eq!(c3.coeff(&vec![4, 3]), Pair::new(Nat::from_u64(1), Nat::from_u64(1)));
        assert_eq!(c3.len(), 3);
        assert_eq!(s.z_trunc(), Some(8));
        // z¹: the shift of x¹ to x³ collides and dies.
        let c1 = s.coeff(1, 0);
        assert_eq!(c1, mono(&[4, 1]).add(&mono(&[3, 2])));
    }

    #[test]
    fn lowering_is_finite_and_exact() {
        let s = apply_op(
            &BiSeries::from_element(mono(&[2])),
            &SeriesOp::Lowering,
            Variable::W,
            8,
            None,
        )
        .unwrap();
        assert_eq!(s.z_trunc(), None);
        assert_eq!(s.w_trunc(), None);
        assert_eq!(s.coeff(0, 0), mono(&[2]));
        assert_eq!(s.coeff(0, -1), mono(&[1]));
        assert_eq!(s.coeff(0, -2), mono(&[0]));
        assert!(s.coeff(0, -3).is_zero());
    }

    #[test]
    fn quasi_inverse_on_one_letter() {
        // bar-lowering ∘ lowering leaves x² plus quasi-zeros at w⁻¹, w⁻².
        let low = apply_op(
            &BiSeries::from_element(mono(&[2])),
            &SeriesOp::Lowering,
            Variable::W,
            8,
            None,
        )
        .unwrap();
        let both = apply_op(&low, &SeriesOp::BarLowering, Variable::W, 8, None).unwrap();
        assert_eq!(both.coeff(0, 0), mono(&[2]));
        assert_eq!(both.coeff(0, -1), mono(&[1]).circ());
        assert_eq!(both.coeff(0, -2), mono(&[0]).circ());
        let window = Window { zmax: 8, wmin: -8 };
        assert!(series_surpasses(&both, &BiSeries::from_element(mono(&[2])), &window).holds());
    }

    #[test]
    fn bar_raising_after_bar_lowering_unit() {
        // (bar-raising in z of x⁰) ∧ x⁰ has the single balanced-free term
        // (0,1)·x¹∧x⁰ at z¹.
        let s = apply_op(
            &BiSeries::from_element(mono(&[0])),
            &SeriesOp::BarLowering,
            Variable::W,
            8,
            None,
        )
        .unwrap();
        let s = apply_op(&s, &SeriesOp::BarRaising, Variable::Z, 8, None).unwrap();
        let wedged = s.wedge_with(&BiSeries::from_element(mono(&[0])));
        assert_eq!(wedged.coeff(0, 0), FreeElement::zero());
        assert_eq!(wedged.coeff(1, 0), mono(&[1, 0]).negate());
        assert_eq!(wedged.support().count(), 1);
    }

    #[test]
    fn truncation_shrinks_under_bar_lowering() {
        let s = raise(&BiSeries::from_element(mono(&[3, 1])), 6);
        assert_eq!(s.z_trunc(), Some(6));
        let t = apply_op(&s, &SeriesOp::BarLowering, Variable::Z, 6, None).unwrap();
        // Two letters can each fall one step out of the unknown region.
        assert_eq!(t.z_trunc(), Some(4));
    }

    #[test]
    fn dual_series_matches_partial_series() {
        let u = mono(&[3, 1]);
        let a = partial_series(&u);
        let b = dual_shift_series(0, &u);
        assert_eq!(a, b);
        assert_eq!(a.coeff(0, -3), mono(&[1]));
        assert_eq!(a.coeff(0, -1), mono(&[3]).negate());
        // Against a single letter the series is the plain monomial w^{−k}.
        let one = partial_series(&mono(&[4]));
        assert_eq!(one.coeff(0, -4), crate::exterior::unit());
        assert_eq!(one.support().count(), 1);
    }

    #[test]
    fn two_row_expansion_small() {
        let a = BiSeries::from_element(crate::exterior::unit::<N>().scale(&Pair::from_u64(2)));
        let b = BiSeries::from_element(crate::exterior::unit::<N>());
        let u = BiSeries::from_element(mono(&[1]));
        let v = BiSeries::from_element(mono(&[2]));
        let got = two_row_expand(&[a.clone(), b.clone()], &[u.clone(), v.clone()]).unwrap();
        // 2·v (−) 1·u
        assert_eq!(got.coeff(0, 0), mono(&[2]).scale(&Pair::from_u64(2)).add(&mono(&[1]).negate()));
        let single = two_row_expand(&[a], &[u]).unwrap();
        assert_eq!(single.coeff(0, 0), crate::exterior::unit::<N>().scale(&Pair::from_u64(2)));
        assert!(two_row_expand(&[b], &[]).is_err());
    }

    #[test]
    fn geometric_series_is_multiplicative() {
        // f = x³⊗∂₁ + 2·x⁴⊗∂₂ is nilpotent enough on small letters.
        let f: GlSum<N> = vec![
            (GlGenerator::new(3, 1), Pair::one()),
            (GlGenerator::new(4, 2), Pair::from_u64(2)),
        ];
        let op = SeriesOp::Geometric(f);
        let u = mono(&[1]);
        let v = mono(&[2]);
        let du = apply_op(&BiSeries::from_element(u.clone()), &op, Variable::Z, 6, None).unwrap();
        let dv = apply_op(&BiSeries::from_element(v.clone()), &op, Variable::Z, 6, None).unwrap();
        let duv = apply_op(
            &BiSeries::from_element(crate::exterior::wedge(&u, &v)),
            &op,
            Variable::Z,
            6,
            None,
        )
        .unwrap();
        let window = Window { zmax: 6, wmin: 0 };
        assert_eq!(
            crate::series::series_equiv(&duv, &du.wedge_with(&dv), &window),
            Verdict::Holds
        );
    }

    #[test]
    fn raising_in_w_is_rejected() {
        let r = apply_op(
            &BiSeries::from_element(mono(&[1])),
            &SeriesOp::<N>::Raising,
            Variable::W,
            4,
            None,
        );
        assert!(r.is_err());
    }

    #[test]
    fn exp_matches_raising_on_single_letters() {
        let u = wedge_monomial::<QPlus>(&[1]);
        let cmp = exp_compare(&u, 4, None).unwrap();
        assert!(cmp.exact_equal && cmp.reduced_equal && cmp.raising_covers_exp);
    }

    #[test]
    fn exp_on_two_letters_only_reduced() {
        // On x³∧x¹ the z³ coefficient at x⁴∧x³ is (7/12, 7/12) for the
        // exponential but (1, 1) for raising: balanced on both sides, equal
        // after reduction, and covered one way.
        let u = wedge_monomial::<QPlus>(&[3, 1]);
        let exp = exp_series(&u, 3, None).unwrap();
        let got = exp.coeff(3, 0).coeff(&vec![4, 3]);
        let sev = QPlus::from_ratio(7, 12);
        assert_eq!(got, Pair::new(sev.clone(), sev));
        let cmp = exp_compare(&u, 3, None).unwrap();
        assert!(!cmp.exact_equal);
        assert!(cmp.reduced_equal);
        assert!(cmp.raising_covers_exp);
    }

    #[test]
    fn exp_needs_rationals() {
        assert!(exp_series(&mono(&[1]), 2, None).is_err());
    }
}
