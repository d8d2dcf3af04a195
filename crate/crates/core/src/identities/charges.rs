use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Signed};

use super::evaluate::{evaluate_all, MatrixAssignment};
use super::{evaluate, gen_t, MAX_CHARGE, MAX_N};
use crate::freetrace::{Letter, Term, TraceExpression, TraceWord};
use crate::linalg::polynomial_rank;
use crate::superalg::{Parity, SuperPolynomial};
use crate::{Error, Q};

/// Trace monomials of one charge, split by parity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MonomialSet {
    pub charge: usize,
    pub even: Vec<TraceExpression>,
    pub odd: Vec<TraceExpression>,
}

/// Canonical nonzero trace words of charge `≤ max_charge` and length `≥ min_len`.
fn canonical_words(letters: &[(Letter, usize)], max_charge: usize, min_len: usize) -> Vec<(TraceWord, usize)> {
    let mut out = Vec::new();
    let mut cur: Vec<Letter> = Vec::new();
    fn rec(
        letters: &[(Letter, usize)],
        budget: usize,
        used: usize,
        min_len: usize,
        cur: &mut Vec<Letter>,
        out: &mut Vec<(TraceWord, usize)>,
    ) {
        if cur.len() >= min_len.max(1) {
            if let Some((_, tw)) = TraceWord::canonical(cur) {
                if tw.letters() == cur.as_slice() {
                    out.push((tw, used));
                }
            }
        }
        for &(l, c) in letters {
            if c > 0 && c <= budget {
                cur.push(l);
                rec(letters, budget - c, used + c, min_len, cur, out);
                cur.pop();
            }
        }
    }
    rec(letters, max_charge, 0, min_len, &mut cur, &mut out);
    out.sort();
    out
}

/// All trace monomials `t(w₁)⋯t(w_r)` (odd factors distinct) in the given
/// letters, where each letter carries a positive charge. Entry `ℓ` of the
/// result holds the monomials of total charge `ℓ`; `min_len = 2` drops `t(x_k)`.
pub fn trace_monomials(letters: &[(Letter, usize)], max_charge: usize, min_len: usize) -> Vec<MonomialSet> {
    let words = canonical_words(letters, max_charge, min_len);
    let mut sets: Vec<MonomialSet> = (0..=max_charge).map(|charge| MonomialSet { charge, ..Default::default() }).collect();
    let mut chosen: Vec<Vec<Letter>> = Vec::new();
    fn rec(
        words: &[(TraceWord, usize)],
        start: usize,
        charge: usize,
        max: usize,
        chosen: &mut Vec<Vec<Letter>>,
        sets: &mut [MonomialSet],
    ) {
        let m = TraceExpression::monomial(Q::one(), chosen, &[]);
        match m.parity() {
            Some(Parity::Odd) => sets[charge].odd.push(m),
            _ => sets[charge].even.push(m),
        }
        for k in start..words.len() {
            let (w, c) = &words[k];
            if charge + c > max {
                continue;
            }
            // odd factors square to zero
            let next = if w.parity().is_odd() { k + 1 } else { k };
            chosen.push(w.letters().to_vec());
            rec(words, next, charge + c, max, chosen, sets);
            chosen.pop();
        }
    }
    rec(&words, 0, 0, max_charge, &mut chosen, &mut sets);
    sets
}

/// One row of the charge-graded table of trace monomials in fermionic `x_k`
/// of charge `k`, without the linear traces `t(x_k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChargeTableRow {
    pub charge: usize,
    pub bosonic: Vec<TraceExpression>,
    pub fermionic: Vec<TraceExpression>,
    /// `(n, bosonic rank, fermionic rank)` on generic matrices of size `n`.
    pub rank_at: Option<(usize, usize, usize)>,
}

impl ChargeTableRow {
    pub fn free_dims(&self) -> (usize, usize) {
        (self.bosonic.len(), self.fermionic.len())
    }
}

/// Rows for charges `1..=l_max`, `l_max ≤ 8` and `n ≤ 3` unless `force`.
pub fn charge_table(l_max: usize, rank_at: Option<usize>, traceless: bool, force: bool) -> Result<Vec<ChargeTableRow>, Error> {
    if !force {
        if l_max > MAX_CHARGE {
            return Err(Error::TooLarge { what: "charge", value: l_max, cap: MAX_CHARGE });
        }
        if let Some(n) = rank_at.filter(|&n| n > MAX_N) {
            return Err(Error::TooLarge { what: "n", value: n, cap: MAX_N });
        }
    }
    let letters: Vec<(Letter, usize)> = (1..=l_max).map(|k| (Letter::X(k as u32), k)).collect();
    let sets = trace_monomials(&letters, l_max, 2);
    let mut rows: Vec<ChargeTableRow> = sets
        .into_iter()
        .skip(1)
        .map(|s| ChargeTableRow { charge: s.charge, bosonic: s.even, fermionic: s.odd, rank_at: None })
        .collect();
    if let Some(n) = rank_at {
        let asg = MatrixAssignment::generic(letters.iter().map(|&(l, _)| l), n, traceless);
        for row in rows.iter_mut() {
            let b = scalar_rank(&row.bosonic, &asg)?;
            let f = scalar_rank(&row.fermionic, &asg)?;
            row.rank_at = Some((n, b, f));
        }
    }
    Ok(rows)
}

pub(crate) fn scalar_rank(exprs: &[TraceExpression], asg: &MatrixAssignment) -> Result<usize, Error> {
    let vals = evaluate_all(exprs, asg)?;
    let polys: Vec<&SuperPolynomial> = vals.iter().filter_map(|v| v.as_scalar()).collect();
    Ok(polynomial_rank(polys))
}

/// Smallest charge at which the rank at size `n` falls below the free
/// dimension, in either parity.
pub fn first_rank_drop(n: usize, l_max: usize, traceless: bool) -> Result<Option<usize>, Error> {
    let rows = charge_table(l_max, Some(n), traceless, false)?;
    Ok(rows.iter().find_map(|r| {
        let (_, b, f) = r.rank_at?;
        (b < r.bosonic.len() || f < r.fermionic.len()).then_some(r.charge)
    }))
}

/// Drops every term with a linear trace factor `t(x_k)`.
pub fn drop_linear_traces(e: &TraceExpression) -> TraceExpression {
    TraceExpression::from_terms(
        e.terms().filter(|(t, _)| t.traces().iter().all(|w| w.len() != 1)).map(|(t, c): (&Term, &Q)| (t.clone(), c.clone())),
    )
}

/// The charge-7 relation on `3 × 3` traceless fermionic matrices.
#[derive(Clone, Debug)]
pub struct Charge7Report {
    /// `3 t(x₁⁵x₂) + t(x₁²x₂) t(x₁³)`.
    pub relation: TraceExpression,
    pub relation_zero: bool,
    pub x1_pow7_zero: bool,
    pub x1_pow5_x2_nonzero: bool,
    pub x1x2_x1pow4_zero: bool,
    /// `T_{2,2}(x₁², x₁², x₁, x₂)` with linear traces removed.
    pub substituted: TraceExpression,
    /// `c` with `substituted = c · relation`, if proportional.
    pub substituted_multiple: Option<Q>,
    pub substituted_zero: bool,
}

impl Charge7Report {
    pub fn holds(&self) -> bool {
        self.relation_zero
            && self.x1_pow7_zero
            && self.x1_pow5_x2_nonzero
            && self.x1x2_x1pow4_zero
            && self.substituted_zero
            && self.substituted_multiple.as_ref().is_some_and(|c| c.abs() == Q::from_integer(2.into()))
    }
}

pub fn charge7_report() -> Result<Charge7Report, Error> {
    let (x1, x2) = (Letter::X(1), Letter::X(2));
    let t = |w: &[Letter]| TraceExpression::trace_of_word(w);
    let p = |k: usize| alloc::vec![x1; k];
    let mut w152 = p(5);
    w152.push(x2);
    let mut w122 = p(2);
    w122.push(x2);
    let t152 = t(&w152);
    let relation = &t152.scale(&Q::from_integer(3.into())) + &(&t(&w122) * &t(&p(3)));

    let asg = MatrixAssignment::generic([x1, x2], 3, true);
    let zero = |e: &TraceExpression| -> Result<bool, Error> { Ok(evaluate(e, &asg)?.is_zero()) };

    let mut map = BTreeMap::new();
    let sq = TraceExpression::word(&[x1, x1]);
    map.insert(Letter::Y(1), sq.clone());
    map.insert(Letter::Y(2), sq);
    map.insert(x1, TraceExpression::letter(x1));
    map.insert(x2, TraceExpression::letter(x2));
    let full = gen_t(2, 2, 3)?.substitute(&map)?;
    let substituted = drop_linear_traces(&full);
    let substituted_multiple = proportional(&substituted, &relation);

    Ok(Charge7Report {
        relation_zero: zero(&relation)?,
        x1_pow7_zero: zero(&t(&p(7)))?,
        x1_pow5_x2_nonzero: !zero(&t152)?,
        x1x2_x1pow4_zero: zero(&(&t(&[x1, x2]) * &t(&p(4))))?,
        substituted_zero: zero(&full)?,
        relation,
        substituted,
        substituted_multiple,
    })
}

/// `c` with `a = c · b`, for nonzero `b`.
fn proportional(a: &TraceExpression, b: &TraceExpression) -> Option<Q> {
    let (t0, c0) = b.terms().next()?;
    let c = a.coefficient(t0) / c0;
    (a == &b.scale(&c)).then_some(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::{String, ToString};
    use Letter::X;

    fn names(v: &[TraceExpression]) -> Vec<String> {
        let mut s: Vec<String> = v.iter().map(|e| e.to_string()).collect();
        s.sort();
        s
    }

    fn tw(ws: &[&[u32]]) -> TraceExpression {
        let ws: Vec<Vec<Letter>> = ws.iter().map(|w| w.iter().map(|&i| X(i)).collect()).collect();
        TraceExpression::monomial(Q::one(), &ws, &[])
    }

    #[test]
    fn free_dims() {
        let rows = charge_table(8, None, false, false).unwrap();
        let dims: Vec<(usize, usize)> = rows.iter().map(ChargeTableRow::free_dims).collect();
        assert_eq!(&dims[2..7], &[(1, 1), (1, 1), (3, 3), (6, 6), (11, 11)]);
        assert!(dims.iter().all(|(b, f)| b == f), "{dims:?}");
    }

    #[test]
    fn low_rows_by_name() {
        let rows = charge_table(5, None, false, false).unwrap();
        assert_eq!(names(&rows[2].bosonic), names(&[tw(&[&[1, 2]])]));
        assert_eq!(names(&rows[2].fermionic), names(&[tw(&[&[1, 1, 1]])]));
        assert_eq!(names(&rows[4].bosonic), names(&[tw(&[&[1, 4]]), tw(&[&[1, 1, 1, 2]]), tw(&[&[2, 3]])]));
        assert_eq!(names(&rows[4].fermionic), names(&[tw(&[&[1, 1, 3]]), tw(&[&[1, 2, 2]]), tw(&[&[1, 1, 1, 1, 1]])]));
    }

    #[test]
    fn odd_factors_do_not_repeat() {
        let sets = trace_monomials(&[(X(1), 1)], 7, 1);
        // t(x₁), t(x₁³), t(x₁⁵), t(x₁⁷) and products of distinct ones
        let counts: Vec<usize> = sets.iter().map(|s| s.even.len() + s.odd.len()).collect();
        assert_eq!(counts, [1, 1, 0, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn charge_seven_at_three() {
        let rows = charge_table(7, Some(3), true, false).unwrap();
        assert_eq!(rows[6].rank_at, Some((3, 10, 10)));
        for r in &rows[..6] {
            let (_, b, f) = r.rank_at.unwrap();
            assert_eq!((b, f), r.free_dims(), "charge {}", r.charge);
        }
    }

    #[test]
    fn charge_seven_relation() {
        let r = charge7_report().unwrap();
        assert!(r.holds(), "{r:?}");
    }

    #[test]
    fn caps() {
        assert!(matches!(charge_table(9, None, false, false), Err(Error::TooLarge { .. })));
        assert!(charge_table(9, None, false, true).is_ok());
    }
}
