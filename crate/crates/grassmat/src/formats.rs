//! JSON and plain-text forms of identities, matrices, charge tables and series.

use std::fmt::Write as _;

use grassmat_core::freetrace::Term;
use grassmat_core::identities::{ChargeTableRow, IdentityKind, IdentitySpec};
use grassmat_core::qindex::QSeries;
use grassmat_core::{Parity, Q, Registry, SuperMatrix, TraceExpression};
use serde::{Deserialize, Serialize};

use crate::polytext::parse_polynomial;
use crate::sexpr::parse_letter;
use crate::ParseError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityHeader {
    pub e: usize,
    pub f: usize,
    pub n: usize,
    #[serde(default = "default_kind")]
    pub kind: String,
}

fn default_kind() -> String {
    "CH".into()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub traces: Vec<Vec<String>>,
    pub outer: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityJson {
    pub identity: IdentityHeader,
    pub terms: Vec<TermJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub verdict: Option<String>,
}

pub fn kind_name(k: IdentityKind) -> &'static str {
    match k {
        IdentityKind::T => "T",
        IdentityKind::CH => "CH",
    }
}

pub fn term_json(t: &Term, c: &Q) -> TermJson {
    TermJson {
        coeff: c.to_string(),
        traces: t.traces().iter().map(|w| w.letters().iter().map(|l| l.to_string()).collect()).collect(),
        outer: t.outer().iter().map(|l| l.to_string()).collect(),
    }
}

pub fn expression_terms(e: &TraceExpression) -> Vec<TermJson> {
    e.terms().map(|(t, c)| term_json(t, c)).collect()
}

pub fn identity_json(spec: &IdentitySpec, e: &TraceExpression, verdict: Option<bool>) -> IdentityJson {
    IdentityJson {
        identity: IdentityHeader { e: spec.e, f: spec.f, n: spec.n, kind: kind_name(spec.kind).into() },
        terms: expression_terms(e),
        verdict: verdict.map(|z| if z { "zero" } else { "nonzero" }.into()),
    }
}

/// Rebuilds the expression from JSON terms, renormalizing each one.
pub fn terms_to_expression(terms: &[TermJson]) -> Result<TraceExpression, ParseError> {
    let mut out = TraceExpression::zero();
    let one = Q::from_integer(1.into());
    for t in terms {
        let c: Q = t.coeff.parse().map_err(|_| ParseError::new(format!("bad coefficient `{}`", t.coeff)))?;
        let traces = t
            .traces
            .iter()
            .map(|w| w.iter().map(|l| parse_letter(l)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let outer = t.outer.iter().map(|l| parse_letter(l)).collect::<Result<Vec<_>, _>>()?;
        out.add_scaled_assign(&TraceExpression::monomial(c, &traces, &outer), &one);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    /// `"even"`, `"odd"` or `"mixed"`.
    pub parity: String,
    pub entries: Vec<Vec<String>>,
}

pub fn matrix_json(m: &SuperMatrix, reg: &Registry) -> MatrixJson {
    let n = m.size();
    MatrixJson {
        n,
        parity: match m.parity() {
            Some(Parity::Even) => "even",
            Some(Parity::Odd) => "odd",
            None => "mixed",
        }
        .into(),
        entries: (0..n).map(|i| (0..n).map(|j| m.entry_display(reg, i, j).to_string()).collect()).collect(),
    }
}

/// Parses the entries into `reg`, allocating any labels it does not know.
pub fn matrix_from_json(j: &MatrixJson, reg: &mut Registry) -> Result<SuperMatrix, ParseError> {
    if j.entries.len() != j.n || j.entries.iter().any(|r| r.len() != j.n) {
        return Err(ParseError::new(format!("expected {0}×{0} entries", j.n)));
    }
    let entries = j
        .entries
        .iter()
        .flatten()
        .map(|s| parse_polynomial(s, reg))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SuperMatrix::from_entries(reg.id(), j.n, entries))
}

/// `t(x1^3x2)t(x3)` style: trace factors with runs written as powers.
pub fn monomial_text(e: &TraceExpression) -> String {
    let mut s = String::new();
    for (t, _) in e.terms() {
        for w in t.traces() {
            s.push_str("t(");
            for run in w.letters().chunk_by(|a, b| a == b) {
                let _ = write!(s, "{}", run[0]);
                if run.len() > 1 {
                    let _ = write!(s, "^{}", run.len());
                }
            }
            s.push(')');
        }
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankJson {
    pub n: usize,
    pub bosonic: usize,
    pub fermionic: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargeRowJson {
    pub charge: usize,
    pub bosonic: Vec<String>,
    pub fermionic: Vec<String>,
    pub free_bosonic: usize,
    pub free_fermionic: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rank: Option<RankJson>,
}

pub fn charge_rows_json(rows: &[ChargeTableRow]) -> Vec<ChargeRowJson> {
    rows.iter()
        .map(|r| ChargeRowJson {
            charge: r.charge,
            bosonic: r.bosonic.iter().map(monomial_text).collect(),
            fermionic: r.fermionic.iter().map(monomial_text).collect(),
            free_bosonic: r.bosonic.len(),
            free_fermionic: r.fermionic.len(),
            rank: r.rank_at.map(|(n, b, f)| RankJson { n, bosonic: b, fermionic: f }),
        })
        .collect()
}

/// Table with one line per charge: the dimensions, then the monomials.
pub fn charge_table_text(rows: &[ChargeTableRow]) -> String {
    let mut s = String::new();
    let ranked = rows.iter().any(|r| r.rank_at.is_some());
    let _ = write!(s, "{:>6} {:>4} {:>4}", "charge", "bos", "ferm");
    if ranked {
        let _ = write!(s, " {:>9} {:>10}", "rank bos", "rank ferm");
    }
    s.push_str("  bosonic | fermionic\n");
    for r in rows {
        let (b, f) = r.free_dims();
        let _ = write!(s, "{:>6} {:>4} {:>4}", r.charge, b, f);
        if let Some((_, rb, rf)) = r.rank_at {
            let _ = write!(s, " {rb:>9} {rf:>10}");
        } else if ranked {
            let _ = write!(s, " {:>9} {:>10}", "", "");
        }
        let bos: Vec<String> = r.bosonic.iter().map(monomial_text).collect();
        let ferm: Vec<String> = r.fermionic.iter().map(monomial_text).collect();
        let _ = writeln!(s, "  {} | {}", bos.join(" "), ferm.join(" "));
    }
    s
}

pub fn series_json(s: &QSeries) -> Vec<String> {
    s.coeffs().iter().map(|c| c.to_string()).collect()
}

pub fn series_from_json(v: &[String]) -> Result<QSeries, ParseError> {
    if v.is_empty() {
        return Err(ParseError::new("empty coefficient list"));
    }
    let c = v
        .iter()
        .map(|s| s.parse::<Q>().map_err(|_| ParseError::new(format!("bad coefficient `{s}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(QSeries::from_coeffs(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use grassmat_core::identities::gen_ch;
    use grassmat_core::superalg::GenKind;

    #[test]
    fn identity_json_shape() {
        let spec = IdentitySpec::new(IdentityKind::CH, 0, 3, 2).unwrap();
        let e = gen_ch(0, 3, 2).unwrap();
        let j = identity_json(&spec, &e, Some(true));
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.starts_with(r#"{"identity":{"e":0,"f":3,"n":2,"kind":"CH"},"terms":[{"coeff":"#));
        assert!(text.ends_with(r#""verdict":"zero"}"#));
        let back: IdentityJson = serde_json::from_str(&text).unwrap();
        assert_eq!(terms_to_expression(&back.terms).unwrap(), e);
    }

    #[test]
    fn matrix_round_trip() {
        let mut reg = Registry::new();
        let x = SuperMatrix::generic(&mut reg, GenKind::Fermionic, "X1", 2, false).unwrap();
        let m = x.matmul(&x).unwrap();
        let j = matrix_json(&m, &reg);
        assert_eq!(j.parity, "even");
        assert_eq!(matrix_from_json(&j, &mut reg).unwrap(), m);
    }

    #[test]
    fn monomials_in_table_style() {
        let e = TraceExpression::monomial(
            Q::from_integer(1.into()),
            &[vec![grassmat_core::Letter::X(1), grassmat_core::Letter::X(2)]],
            &[],
        );
        assert_eq!(monomial_text(&e), "t(x1x2)");
        let e = TraceExpression::trace_of_word(&[grassmat_core::Letter::X(1); 5]);
        assert_eq!(monomial_text(&e), "t(x1^5)");
    }
}
