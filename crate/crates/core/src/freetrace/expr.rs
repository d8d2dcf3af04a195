use alloc::collections::btree_map::{BTreeMap, Entry};
use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{word_parity, Letter, TraceWord};
use crate::superalg::Parity;
use crate::{Error, Q};

/// `t(w₁)⋯t(w_r) · W` with the trace factors sorted and the odd ones distinct.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    traces: Vec<TraceWord>,
    outer: Vec<Letter>,
}

impl Term {
    /// Sorts trace factors; `None` if an odd factor repeats, otherwise whether
    /// the odd factors were permuted oddly.
    pub fn new(mut traces: Vec<TraceWord>, outer: Vec<Letter>) -> Option<(bool, Term)> {
        let mut negative = false;
        let odd: Vec<&TraceWord> = traces.iter().filter(|t| t.parity().is_odd()).collect();
        for i in 0..odd.len() {
            for j in i + 1..odd.len() {
                match odd[i].cmp(odd[j]) {
                    core::cmp::Ordering::Greater => negative = !negative,
                    core::cmp::Ordering::Equal => return None,
                    core::cmp::Ordering::Less => {}
                }
            }
        }
        traces.sort();
        Some((negative, Term { traces, outer }))
    }

    pub fn traces(&self) -> &[TraceWord] {
        &self.traces
    }

    pub fn outer(&self) -> &[Letter] {
        &self.outer
    }

    pub fn traces_parity(&self) -> Parity {
        self.traces.iter().fold(Parity::Even, |p, t| p.add(t.parity()))
    }

    pub fn parity(&self) -> Parity {
        self.traces_parity().add(word_parity(&self.outer))
    }

    /// Every letter occurrence, trace factors first.
    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.traces.iter().flat_map(|t| t.letters().iter().copied()).chain(self.outer.iter().copied())
    }

    pub fn degree_in(&self, l: Letter) -> usize {
        self.letters().filter(|&x| x == l).count()
    }
}

/// An element of the free superalgebra with trace.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TraceExpression {
    terms: BTreeMap<Term, Q>,
}

impl TraceExpression {
    pub fn zero() -> Self {
        TraceExpression { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        TraceExpression::scalar(Q::one())
    }

    pub fn scalar(c: Q) -> Self {
        let mut e = TraceExpression::zero();
        e.add_term(Term::default(), c);
        e
    }

    /// The untraced word `l`.
    pub fn letter(l: Letter) -> Self {
        TraceExpression::word(&[l])
    }

    /// The untraced word `w`.
    pub fn word(w: &[Letter]) -> Self {
        let mut e = TraceExpression::zero();
        e.add_term(Term { traces: Vec::new(), outer: w.to_vec() }, Q::one());
        e
    }

    /// `t(w)`.
    pub fn trace_of_word(w: &[Letter]) -> Self {
        TraceExpression::word(w).trace()
    }

    /// `c · t(w₁)⋯t(w_r) · W` with factors given in any order.
    pub fn monomial(c: Q, traces: &[Vec<Letter>], outer: &[Letter]) -> Self {
        let mut acc = TraceExpression::scalar(c);
        for w in traces {
            acc = &acc * &TraceExpression::trace_of_word(w);
        }
        &acc * &TraceExpression::word(outer)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Term, Q)>) -> Self {
        let mut e = TraceExpression::zero();
        for (t, c) in terms {
            e.add_term(t, c);
        }
        e
    }

    pub(crate) fn add_term(&mut self, t: Term, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(t) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Term, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, t: &Term) -> Q {
        self.terms.get(t).cloned().unwrap_or_else(Q::zero)
    }

    /// Whether every term has an empty outer word (an element of the trace algebra).
    pub fn is_trace_only(&self) -> bool {
        self.terms.keys().all(|t| t.outer.is_empty())
    }

    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(Term::parity);
        let first = match it.next() {
            None => return Some(Parity::Even),
            Some(p) => p,
        };
        it.all(|p| p == first).then_some(first)
    }

    /// Letters occurring anywhere.
    pub fn support(&self) -> BTreeSet<Letter> {
        self.terms.keys().flat_map(|t| t.letters().collect::<Vec<_>>()).collect()
    }

    /// Degree in `l` if every term has the same degree.
    pub fn degree_in(&self, l: Letter) -> Option<usize> {
        let mut it = self.terms.keys().map(|t| t.degree_in(l));
        let first = it.next().unwrap_or(0);
        it.all(|d| d == first).then_some(first)
    }

    /// Whether every term has degree one in each of `letters` and no other letter.
    pub fn is_multilinear_in(&self, letters: &[Letter]) -> bool {
        self.terms.keys().all(|t| {
            let mut seen: Vec<Letter> = t.letters().collect();
            seen.sort();
            let mut want = letters.to_vec();
            want.sort();
            seen == want
        })
    }

    pub fn scale(&self, r: &Q) -> Self {
        if r.is_zero() {
            return TraceExpression::zero();
        }
        TraceExpression { terms: self.terms.iter().map(|(t, c)| (t.clone(), c * r)).collect() }
    }

    pub fn add_scaled_assign(&mut self, other: &TraceExpression, r: &Q) {
        for (t, c) in &other.terms {
            self.add_term(t.clone(), c * r);
        }
    }

    /// `(T₁W₁)(T₂W₂) = (−1)^{d(W₁)d(T₂)} T₁T₂ · W₁W₂`.
    pub fn multiply(&self, other: &TraceExpression) -> TraceExpression {
        let mut out = TraceExpression::zero();
        for (a, ca) in &self.terms {
            let wa_odd = word_parity(&a.outer).is_odd();
            for (b, cb) in &other.terms {
                let cross = wa_odd && b.traces_parity().is_odd();
                let mut traces = a.traces.clone();
                traces.extend_from_slice(&b.traces);
                let Some((neg, mut term)) = Term::new(traces, Vec::new()) else { continue };
                term.outer = a.outer.clone();
                term.outer.extend_from_slice(&b.outer);
                let c = ca * cb;
                out.add_term(term, if neg ^ cross { -c } else { c });
            }
        }
        out
    }

    /// `t(Σ c·T·W) = Σ c·T·t(W)`; the empty outer word gives `t(1)`.
    pub fn trace(&self) -> TraceExpression {
        let mut out = TraceExpression::zero();
        for (t, c) in &self.terms {
            let Some((rot_neg, tw)) = TraceWord::canonical(&t.outer) else { continue };
            let mut traces = t.traces.clone();
            traces.push(tw);
            let Some((neg, term)) = Term::new(traces, Vec::new()) else { continue };
            out.add_term(term, if neg ^ rot_neg { -c.clone() } else { c.clone() });
        }
        out
    }

    /// Replaces each letter in `map` by its image everywhere, then renormalizes.
    /// Images must be parity homogeneous of the letter's parity.
    pub fn substitute(&self, map: &BTreeMap<Letter, TraceExpression>) -> Result<TraceExpression, Error> {
        for (l, img) in map {
            match img.parity() {
                Some(p) if img.is_zero() || p == l.parity() => {}
                _ => return Err(Error::ParityMismatch),
            }
        }
        let word_image = |w: &[Letter]| -> TraceExpression {
            let mut acc = TraceExpression::one();
            for l in w {
                match map.get(l) {
                    Some(img) => acc = acc.multiply(img),
                    None => acc = acc.multiply(&TraceExpression::letter(*l)),
                }
                if acc.is_zero() {
                    break;
                }
            }
            acc
        };
        let mut out = TraceExpression::zero();
        for (t, c) in &self.terms {
            let mut acc = TraceExpression::scalar(c.clone());
            for tw in &t.traces {
                acc = acc.multiply(&word_image(tw.letters()).trace());
                if acc.is_zero() {
                    break;
                }
            }
            if acc.is_zero() {
                continue;
            }
            acc = acc.multiply(&word_image(&t.outer));
            out.add_scaled_assign(&acc, &Q::one());
        }
        Ok(out)
    }

    /// Single-letter substitution.
    pub fn substitute_one(&self, var: Letter, replacement: &TraceExpression) -> Result<TraceExpression, Error> {
        let mut map = BTreeMap::new();
        map.insert(var, replacement.clone());
        self.substitute(&map)
    }

    /// Renames letters; `rename` must be injective on the support.
    pub fn rename(&self, rename: impl Fn(Letter) -> Letter) -> TraceExpression {
        let map: BTreeMap<Letter, TraceExpression> =
            self.support().into_iter().map(|l| (l, TraceExpression::letter(rename(l)))).collect();
        self.substitute(&map).expect("renaming preserves parity")
    }

    /// Sets `t(1)` to the scalar `n`.
    pub fn specialize_unit_trace(&self, n: i64) -> TraceExpression {
        let mut out = TraceExpression::zero();
        let nq = Q::from_integer(n.into());
        for (t, c) in &self.terms {
            let units = t.traces.iter().filter(|w| w.is_unit()).count();
            let mut term = t.clone();
            term.traces.retain(|w| !w.is_unit());
            let mut c = c.clone();
            for _ in 0..units {
                c *= &nq;
            }
            out.add_term(term, c);
        }
        out
    }
}

impl Add for &TraceExpression {
    type Output = TraceExpression;
    fn add(self, rhs: &TraceExpression) -> TraceExpression {
        let mut out = self.clone();
        out.add_scaled_assign(rhs, &Q::one());
        out
    }
}

impl Sub for &TraceExpression {
    type Output = TraceExpression;
    fn sub(self, rhs: &TraceExpression) -> TraceExpression {
        let mut out = self.clone();
        out.add_scaled_assign(rhs, &-Q::one());
        out
    }
}

impl Mul for &TraceExpression {
    type Output = TraceExpression;
    fn mul(self, rhs: &TraceExpression) -> TraceExpression {
        self.multiply(rhs)
    }
}

impl Neg for &TraceExpression {
    type Output = TraceExpression;
    fn neg(self) -> TraceExpression {
        self.scale(&-Q::one())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for t in &self.traces {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{t}")?;
            first = false;
        }
        if !self.outer.is_empty() {
            if !first {
                f.write_str(" ")?;
            }
            for (k, l) in self.outer.iter().enumerate() {
                if k > 0 {
                    f.write_str("*")?;
                }
                write!(f, "{l}")?;
            }
            first = false;
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl fmt::Display for TraceExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (t, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if !a.is_one() {
                write!(f, "{a} ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use Letter::{X, Y};

    fn t(w: &[Letter]) -> TraceExpression {
        TraceExpression::trace_of_word(w)
    }

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn odd_trace_squares_to_zero() {
        let a = t(&[X(1)]);
        assert!((&a * &a).is_zero());
        let b = t(&[X(2)]);
        assert_eq!(&a * &b, -&(&b * &a));
    }

    #[test]
    fn identity_substitution_is_trivial() {
        let e = t(&[X(1), X(1), X(1)]);
        assert_eq!(e.substitute_one(X(1), &TraceExpression::letter(X(1))).unwrap(), e);
    }

    #[test]
    fn parity_checked_in_substitution() {
        let e = t(&[X(1), Y(1)]);
        assert_eq!(e.substitute_one(X(1), &TraceExpression::letter(Y(2))), Err(Error::ParityMismatch));
        let sq = TraceExpression::word(&[X(1), X(1)]);
        assert!(e.substitute_one(Y(1), &sq).is_ok());
    }

    #[test]
    fn outer_word_passes_odd_trace_with_sign() {
        // x1 · t(x2) = −t(x2) x1
        let lhs = &TraceExpression::letter(X(1)) * &t(&[X(2)]);
        let rhs = &t(&[X(2)]) * &TraceExpression::letter(X(1));
        assert_eq!(lhs, -&rhs);
    }

    #[test]
    fn trace_of_product_respects_cyclicity() {
        let a = TraceExpression::word(&[X(1), Y(1)]);
        let b = TraceExpression::word(&[X(2)]);
        assert_eq!((&a * &b).trace(), -&(&b * &a).trace());
        let c = TraceExpression::word(&[Y(2)]);
        assert_eq!((&a * &c).trace(), (&c * &a).trace());
    }

    #[test]
    fn trace_of_trace_times_word() {
        // t(t(x1) x2) = t(x1) t(x2)
        let e = (&t(&[X(1)]) * &TraceExpression::letter(X(2))).trace();
        assert_eq!(e, &t(&[X(1)]) * &t(&[X(2)]));
        // t(t(x1)) = t(x1) t(1)
        let u = t(&[X(1)]).trace();
        assert_eq!(u.specialize_unit_trace(3), t(&[X(1)]).scale(&q(3)));
    }

    #[test]
    fn substitution_into_trace_factor() {
        // t(y1 x1)|_{y1 ← x2 x3} = t(x2 x3 x1) = t(x1 x2 x3)
        let e = t(&[Y(1), X(1)]);
        let r = e.substitute_one(Y(1), &TraceExpression::word(&[X(2), X(3)])).unwrap();
        assert_eq!(r, t(&[X(1), X(2), X(3)]));
        // t(x1)|_{x1 ← t(y1) x2} = t(y1) t(x2)
        let img = &t(&[Y(1)]) * &TraceExpression::letter(X(2));
        let r = t(&[X(1)]).substitute_one(X(1), &img).unwrap();
        assert_eq!(r, &t(&[Y(1)]) * &t(&[X(2)]));
    }

    #[test]
    fn squares_of_fermionic_words() {
        assert!(t(&[X(1), X(1)]).is_zero());
        assert!(!t(&[X(1), X(2), X(1), X(2)]).is_zero());
        let sub = t(&[Y(1), Y(1)]).substitute_one(Y(1), &TraceExpression::word(&[X(1), X(2)])).unwrap();
        assert_eq!(sub, t(&[X(1), X(2), X(1), X(2)]));
    }

    #[test]
    fn multilinear_queries() {
        let e = &t(&[Y(1), X(1)]) * &t(&[X(2)]);
        assert!(e.is_multilinear_in(&[Y(1), X(1), X(2)]));
        assert!(!e.is_multilinear_in(&[Y(1), X(1)]));
        assert_eq!(e.degree_in(X(2)), Some(1));
        assert_eq!(e.parity(), Some(Parity::Even));
        let m = TraceExpression::monomial(q(2), &[vec![X(2)], vec![Y(1), X(1)]], &[]);
        assert_eq!(m, e.scale(&q(-2)));
    }
}
