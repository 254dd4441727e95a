//! Text rendering, the expression grammar, and JSON output.
//!
//! Wedge words print as `x5^x3^x1`, mixed words as `x1*d1`, the empty word
//! as `1`. A coefficient prints as nothing when it is the unit, as a
//! surrounding `neg(...)` when it is the switched unit, and as a `[pos,neg]`
//! scalar factor otherwise. The grammar accepts exactly these forms back,
//! so printing then parsing is the identity on canonical elements.

use serde_json::{json, Value};

use crate::clifford::{Letter, MixedElement, MixedWord};
use crate::error::{Error, Result};
use crate::exterior::WedgeElement;
use crate::freemod::FreeElement;
use crate::partitions::{canonicalize_tuple, Partition, Sign};
use crate::semiring::{Pair, Semiring};
use crate::series::BiSeries;

/// Tag carried by every JSON document this crate emits.
pub const JSON_SCHEMA: &str = "semiwedge.v1";

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

pub fn render_xword(word: &[u32]) -> String {
    if word.is_empty() {
        return "1".to_string();
    }
    word.iter().map(|i| format!("x{i}")).collect::<Vec<_>>().join("^")
}

pub fn render_mixed_word(word: &[Letter]) -> String {
    if word.is_empty() {
        return "1".to_string();
    }
    word.iter()
        .map(|l| match l {
            Letter::X(i) => format!("x{i}"),
            Letter::D(i) => format!("d{i}"),
        })
        .collect::<Vec<_>>()
        .join("*")
}

fn render_term<S: Semiring>(coeff: &Pair<S>, word: String) -> String {
    if *coeff == Pair::one() {
        word
    } else if *coeff == Pair::<S>::one().negate() {
        format!("neg({word})")
    } else if word == "1" {
        format!("{coeff}")
    } else {
        format!("{coeff}*{word}")
    }
}

pub fn render_wedge<S: Semiring>(e: &WedgeElement<S>) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    e.iter()
        .map(|(w, c)| render_term(c, render_xword(w)))
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn render_mixed<S: Semiring>(e: &MixedElement<S>) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    e.iter()
        .map(|(w, c)| render_term(c, render_mixed_word(w)))
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn render_partition(p: &Partition) -> String {
    p.to_string()
}

/// Like [`render_wedge`], but a term whose coefficient is the switched unit
/// prints as the odd permutation with the last two letters swapped instead
/// of a surrounding `neg(...)`. Both spellings parse back to the same
/// element.
pub fn render_wedge_oriented<S: Semiring>(e: &WedgeElement<S>) -> String {
    if e.is_zero() {
        return "0".to_string();
    }
    e.iter()
        .map(|(w, c)| {
            if *c == Pair::<S>::one().negate() && w.len() >= 2 {
                let mut swapped = w.clone();
                swapped.swap(w.len() - 2, w.len() - 1);
                render_xword(&swapped)
            } else {
                render_term(c, render_xword(w))
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// One line per bidegree, lowest z first, then lowest w.
pub fn render_biseries<S: Semiring>(s: &BiSeries<S>) -> String {
    let mut lines: Vec<String> = Vec::new();
    for (&(z, w), v) in s.support() {
        lines.push(format!("z^{z} w^{w}: {}", render_wedge_oriented(v)));
    }
    if lines.is_empty() {
        lines.push("0".to_string());
    }
    let bound = |b: Option<i32>| b.map_or("exact".to_string(), |t| t.to_string());
    lines.push(format!(
        "(known for z <= {}, w >= {})",
        bound(s.z_trunc()),
        bound(s.w_trunc())
    ));
    lines.join("\n")
}

// ---------------------------------------------------------------------------
// Expression grammar
// ---------------------------------------------------------------------------
//
//   expr   := term ('+' term)*
//   term   := factor (('*' | '^') factor)*
//   factor := 'neg' '(' expr ')' | '(' expr ')' | '[' scalar ',' scalar ']'
//           | 'x' int | 'd' int | '0' | int
//
// Products concatenate letters, so an all-x product is a wedge word and a
// mixed product is an operator word read left to right.

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src: src.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected '{}'", c as char)))
        }
    }

    fn integer(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::parse(start, "expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|e| Error::parse(start, format!("bad integer: {e}")))
    }

    /// Raw text up to the next ',' or ']', handed to the scalar parser.
    fn scalar_chunk<S: Semiring>(&mut self) -> Result<S> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && !matches!(self.src[self.pos], b',' | b']') {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        S::parse(text).map_err(|e| Error::parse(start, e.to_string()))
    }

    fn expr<S: Semiring>(&mut self) -> Result<MixedElement<S>> {
        let mut acc = self.term()?;
        while self.eat(b'+') {
            acc = acc.add(&self.term()?);
        }
        Ok(acc)
    }

    fn term<S: Semiring>(&mut self) -> Result<MixedElement<S>> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(b'*') | Some(b'^')) {
            self.pos += 1;
            acc = concat_mul(&acc, &self.factor()?);
        }
        Ok(acc)
    }

    fn factor<S: Semiring>(&mut self) -> Result<MixedElement<S>> {
        match self.peek() {
            Some(b'n') => {
                if self.src[self.pos..].starts_with(b"neg") {
                    self.pos += 3;
                    self.expect(b'(')?;
                    let inner = self.expr()?;
                    self.expect(b')')?;
                    Ok(inner.negate())
                } else {
                    Err(Error::parse(self.pos, "expected 'neg(...)'"))
                }
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(b'[') => {
                self.pos += 1;
                let p: S = self.scalar_chunk()?;
                self.expect(b',')?;
                let n: S = self.scalar_chunk()?;
                self.expect(b']')?;
                Ok(FreeElement::from_term(Vec::new(), Pair::new(p, n)))
            }
            Some(b'x') => {
                self.pos += 1;
                let i = self.integer()?;
                Ok(FreeElement::from_term(vec![Letter::X(i)], Pair::one()))
            }
            Some(b'd') => {
                self.pos += 1;
                let i = self.integer()?;
                Ok(FreeElement::from_term(vec![Letter::D(i)], Pair::one()))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                if text == "0" {
                    return Ok(FreeElement::zero());
                }
                if text == "1" {
                    return Ok(FreeElement::from_term(Vec::new(), Pair::one()));
                }
                let s = S::parse(text).map_err(|e| Error::parse(start, e.to_string()))?;
                Ok(FreeElement::from_term(Vec::new(), Pair::new(s, S::zero())))
            }
            Some(c) => Err(Error::parse(self.pos, format!("unexpected character '{}'", c as char))),
            None => Err(Error::parse(self.pos, "unexpected end of input")),
        }
    }
}

fn concat_mul<S: Semiring>(a: &MixedElement<S>, b: &MixedElement<S>) -> MixedElement<S> {
    let mut out = FreeElement::zero();
    for (wa, ca) in a.iter() {
        for (wb, cb) in b.iter() {
            let mut w = wa.clone();
            w.extend_from_slice(wb);
            out.insert_add(w, ca.mul(cb));
        }
    }
    out
}

/// Parses an expression to a sum of raw mixed words; no straightening.
pub fn parse_mixed<S: Semiring>(src: &str) -> Result<MixedElement<S>> {
    let mut p = Parser::new(src);
    let e = p.expr()?;
    if let Some(c) = p.peek() {
        return Err(Error::parse(p.pos, format!("unexpected character '{}'", c as char)));
    }
    Ok(e)
}

/// Lowers an x-only mixed element to canonical wedge form. Words killed by a
/// repeated index are returned separately so callers can warn about them.
pub fn mixed_to_wedge<S: Semiring>(
    e: &MixedElement<S>,
) -> Result<(WedgeElement<S>, Vec<MixedWord>)> {
    let mut out = FreeElement::zero();
    let mut dropped = Vec::new();
    for (w, c) in e.iter() {
        let mut indices = Vec::with_capacity(w.len());
        for l in w {
            match l {
                Letter::X(i) => indices.push(*i),
                Letter::D(i) => {
                    return Err(Error::invalid(format!(
                        "contraction letter d{i} in a wedge expression"
                    )))
                }
            }
        }
        match canonicalize_tuple(&indices) {
            None => dropped.push(w.clone()),
            Some(t) => {
                let signed = match t.sign {
                    Sign::Plus => c.clone(),
                    Sign::Minus => c.negate(),
                };
                out.insert_add(t.word, signed);
            }
        }
    }
    Ok((out, dropped))
}

pub fn parse_wedge<S: Semiring>(src: &str) -> Result<(WedgeElement<S>, Vec<MixedWord>)> {
    mixed_to_wedge(&parse_mixed(src)?)
}

/// Parses `3,2,1` to a partition; empty input or `0` is the empty partition.
pub fn parse_partition(src: &str) -> Result<Partition> {
    let t = src.trim();
    if t.is_empty() || t == "0" || t == "()" {
        return Partition::new(Vec::new());
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

// ---------------------------------------------------------------------------
// JSON output
// ---------------------------------------------------------------------------

pub fn pair_json<S: Semiring>(c: &Pair<S>) -> Value {
    json!([c.pos.to_string(), c.neg.to_string()])
}

pub fn wedge_json<S: Semiring>(e: &WedgeElement<S>) -> Value {
    let map: serde_json::Map<String, Value> = e
        .iter()
        .map(|(w, c)| (render_xword(w), pair_json(c)))
        .collect();
    Value::Object(map)
}

pub fn mixed_json<S: Semiring>(e: &MixedElement<S>) -> Value {
    let map: serde_json::Map<String, Value> = e
        .iter()
        .map(|(w, c)| (render_mixed_word(w), pair_json(c)))
        .collect();
    Value::Object(map)
}

pub fn biseries_json<S: Semiring>(s: &BiSeries<S>) -> Value {
    let terms: Vec<Value> = s
        .support()
        .map(|(&(z, w), v)| json!({ "z": z, "w": w, "value": wedge_json(v) }))
        .collect();
    json!({
        "schema": JSON_SCHEMA,
        "terms": terms,
        "window": [s.z_trunc(), s.w_trunc()],
        "exact": [s.z_trunc().is_none(), s.w_trunc().is_none()],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::wedge_monomial;
    use crate::semiring::{MaxPlus, Nat};

    fn np(p: u64, n: u64) -> Pair<Nat> {
        Pair::new(Nat::from_u64(p), Nat::from_u64(n))
    }

    #[test]
    fn words_render() {
        assert_eq!(render_xword(&[5, 3, 1]), "x5^x3^x1");
        assert_eq!(render_xword(&[]), "1");
        assert_eq!(
            render_mixed_word(&[Letter::D(3), Letter::X(5)]),
            "d3*x5"
        );
    }

    #[test]
    fn round_trip_wedge() {
        let e: WedgeElement<Nat> = wedge_monomial::<Nat>(&[5, 3, 1])
            .add(&wedge_monomial::<Nat>(&[2]).scale(&np(3, 2)))
            .add(&wedge_monomial::<Nat>(&[4, 0]).negate());
        let text = render_wedge(&e);
        let (back, dropped) = parse_wedge::<Nat>(&text).unwrap();
        assert!(dropped.is_empty());
        assert_eq!(back, e);
    }

    #[test]
    fn oriented_rendering_round_trips() {
        let e: WedgeElement<Nat> = wedge_monomial::<Nat>(&[5, 1]).negate();
        assert_eq!(render_wedge_oriented(&e), "x1^x5");
        let (back, _) = parse_wedge::<Nat>("x1^x5").unwrap();
        assert_eq!(back, e);

        let f: WedgeElement<Nat> = wedge_monomial::<Nat>(&[5, 3, 1])
            .negate()
            .add(&wedge_monomial::<Nat>(&[2]).negate())
            .add(&wedge_monomial::<Nat>(&[4, 0]).scale(&np(2, 0)));
        let text = render_wedge_oriented(&f);
        assert_eq!(text, "neg(x2) + [2,0]*x4^x0 + x5^x1^x3");
        let (back, _) = parse_wedge::<Nat>(&text).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn biseries_renders_with_bounds() {
        let mut s = BiSeries::<Nat>::from_element(wedge_monomial(&[1]));
        s.insert_add(2, -1, wedge_monomial(&[3, 0]));
        s.clip(Some(4), None);
        let text = render_biseries(&s);
        assert_eq!(
            text,
            "z^0 w^0: x1\nz^2 w^-1: x3^x0\n(known for z <= 4, w >= exact)"
        );
    }

    #[test]
    fn round_trip_mixed() {
        let e: MixedElement<Nat> = FreeElement::from_terms(vec![
            (vec![Letter::X(1), Letter::D(2)], np(1, 0)),
            (vec![Letter::D(0)], np(0, 1)),
            (Vec::new(), np(7, 4)),
        ]);
        let text = render_mixed(&e);
        let back = parse_mixed::<Nat>(&text).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn grammar_examples() {
        let e = parse_mixed::<Nat>("d3 * x5^x3^x1").unwrap();
        let word = vec![Letter::D(3), Letter::X(5), Letter::X(3), Letter::X(1)];
        assert_eq!(e.coeff(&word), np(1, 0));
        assert_eq!(e.len(), 1);

        let (w, dropped) = parse_wedge::<Nat>("x1^x1").unwrap();
        assert!(w.is_zero());
        assert_eq!(dropped, vec![vec![Letter::X(1), Letter::X(1)]]);

        let (w, _) = parse_wedge::<Nat>("x3^x5 + neg(x2)").unwrap();
        assert_eq!(w.coeff(&vec![5, 3]), np(0, 1));
        assert_eq!(w.coeff(&vec![2]), np(0, 1));

        let e = parse_mixed::<Nat>("[3,2]*x1 + 0").unwrap();
        assert_eq!(e.coeff(&vec![Letter::X(1)]), np(3, 2));
    }

    #[test]
    fn scalar_literals_per_semiring() {
        let e = parse_mixed::<MaxPlus>("[-inf,3]*x1").unwrap();
        let c = e.coeff(&vec![Letter::X(1)]);
        assert_eq!(c, Pair::new(MaxPlus::NEG_INF, MaxPlus::finite(3)));
        let text = render_mixed(&e);
        assert_eq!(parse_mixed::<MaxPlus>(&text).unwrap(), e);
    }

    #[test]
    fn parse_errors_carry_positions() {
        for (src, want_pos) in [("x", 1usize), ("neg(x1", 6), ("[3,2", 4), ("x1 & x2", 3)] {
            match parse_mixed::<Nat>(src) {
                Err(Error::Parse { pos, .. }) => assert_eq!(pos, want_pos, "src {src:?}"),
                other => panic!("expected parse error for {src:?}, got {other:?}"),
            }
        }
        assert!(parse_wedge::<Nat>("d1 * x1").is_err());
    }

    #[test]
    fn partition_text() {
        let p = parse_partition("3,2,1").unwrap();
        assert_eq!(render_partition(&p), "3,2,1");
        assert!(parse_partition("").unwrap().is_empty());
        assert!(parse_partition("2,3").is_err());
    }

    #[test]
    fn json_shapes() {
        let s = BiSeries::monomial(1, -2, wedge_monomial::<Nat>(&[2]));
        let v = biseries_json(&s);
        assert_eq!(v["schema"], JSON_SCHEMA);
        assert_eq!(v["terms"][0]["z"], 1);
        assert_eq!(v["terms"][0]["w"], -2);
        assert_eq!(v["terms"][0]["value"]["x2"][0], "1");
        assert_eq!(v["exact"][0], true);
    }
}
