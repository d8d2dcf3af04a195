//! Parser for the polynomial text form `c * b[label]^e * f[label] ± …`.

use grassmat_core::superalg::{GenKind, GenLabel, SuperMonomial};
use grassmat_core::{Q, Registry, SuperPolynomial};
use num_traits::{One, Zero};

use crate::ParseError;

/// Parses a generator label `name` or `name:i,j,…`.
pub fn parse_label(s: &str) -> Result<GenLabel, ParseError> {
    let s = s.trim();
    let (name, idx) = match s.split_once(':') {
        Some((n, i)) => (n, Some(i)),
        None => (s, None),
    };
    if name.is_empty() || name.contains(|c: char| c.is_whitespace() || "[]*^#".contains(c)) {
        return Err(ParseError::new(format!("bad generator name `{name}`")));
    }
    let indices = match idx {
        None => Vec::new(),
        Some(i) => i
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| ParseError::new(format!("bad index `{t}` in `{s}`"))))
            .collect::<Result<_, _>>()?,
    };
    Ok(GenLabel::new(name, &indices))
}

fn parse_coeff(s: &str) -> Result<Q, ParseError> {
    s.parse::<Q>().map_err(|_| ParseError::new(format!("bad coefficient `{s}`")))
}

/// Splits at top-level `+`/`-` separators, keeping each term's sign.
fn split_terms(s: &str) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    let mut depth = 0usize;
    let mut prev_caret = false;
    for c in s.chars() {
        match c {
            '[' => depth += 1,
            ']' => depth = depth.saturating_sub(1),
            _ => {}
        }
        if depth == 0 && (c == '+' || c == '-') && !prev_caret {
            if !cur.trim().is_empty() {
                out.push((neg, std::mem::take(&mut cur)));
                neg = false;
            }
            if c == '-' {
                neg = !neg;
            }
        } else {
            cur.push(c);
        }
        if !c.is_whitespace() {
            prev_caret = c == '^';
        }
    }
    if !cur.trim().is_empty() {
        out.push((neg, cur));
    }
    out
}

/// Parses a polynomial; unknown labels are allocated in `registry`.
/// Fermionic factors may come in any order: they are sorted with the sign
/// this costs, and a repeated fermionic factor makes the term vanish.
pub fn parse_polynomial(s: &str, registry: &mut Registry) -> Result<SuperPolynomial, ParseError> {
    let rid = registry.id();
    let mut out = SuperPolynomial::zero(rid);
    if s.trim() == "0" {
        return Ok(out);
    }
    let terms = split_terms(s);
    if terms.is_empty() {
        return Err(ParseError::new("empty polynomial"));
    }
    for (neg, body) in terms {
        let mut coeff = Q::one();
        let mut bos: Vec<(u32, u32)> = Vec::new();
        let mut ferm: Vec<u32> = Vec::new();
        for factor in body.split('*').map(str::trim) {
            if factor.is_empty() {
                return Err(ParseError::new(format!("empty factor in `{}`", body.trim())));
            }
            let kind = match factor.as_bytes()[0] {
                b'b' if factor[1..].starts_with('[') => GenKind::Bosonic,
                b'f' if factor[1..].starts_with('[') => GenKind::Fermionic,
                _ => {
                    coeff *= parse_coeff(factor)?;
                    continue;
                }
            };
            let close = factor.rfind(']').ok_or_else(|| ParseError::new(format!("missing `]` in `{factor}`")))?;
            let label = parse_label(&factor[2..close])?;
            let rest = factor[close + 1..].trim();
            let exp = if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('^')
                    .and_then(|e| e.trim().parse::<u32>().ok())
                    .ok_or_else(|| ParseError::new(format!("bad exponent in `{factor}`")))?
            };
            let g = match registry.find(kind, &label) {
                Some(g) => g,
                None => registry.allocate(kind, label).map_err(|e| ParseError::new(e.to_string()))?,
            };
            match kind {
                GenKind::Bosonic => bos.push((g.index, exp)),
                GenKind::Fermionic => {
                    for _ in 0..exp {
                        ferm.push(g.index);
                    }
                }
            }
        }
        if neg {
            coeff = -coeff;
        }
        if coeff.is_zero() {
            continue;
        }
        if let Some((sorted_neg, m)) = SuperMonomial::from_parts(&bos, &ferm) {
            if sorted_neg {
                coeff = -coeff;
            }
            out = out
                .try_add(&SuperPolynomial::monomial(rid, m, coeff))
                .map_err(|e| ParseError::new(e.to_string()))?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use grassmat_core::gmatrix::SuperMatrix;

    #[test]
    fn reorders_fermions_with_sign() {
        let mut reg = Registry::new();
        let p = parse_polynomial("2 * f[a] * f[b]", &mut reg).unwrap();
        let q = parse_polynomial("-2 * f[b] * f[a]", &mut reg).unwrap();
        assert_eq!(p, q);
        assert!(parse_polynomial("f[a] * f[a]", &mut reg).unwrap().is_zero());
    }

    #[test]
    fn display_round_trip() {
        let mut reg = Registry::new();
        let x = SuperMatrix::generic(&mut reg, GenKind::Fermionic, "X1", 2, false).unwrap();
        let y = SuperMatrix::generic(&mut reg, GenKind::Bosonic, "Y1", 2, false).unwrap();
        let m = x.matmul(&y).unwrap().matmul(&x).unwrap();
        for e in m.entries() {
            let text = e.display(&reg).to_string();
            assert_eq!(parse_polynomial(&text, &mut reg).unwrap(), *e, "{text}");
        }
    }

    #[test]
    fn rational_and_powers() {
        let mut reg = Registry::new();
        let p = parse_polynomial("-1/2 * b[t]^3 + 3 * b[t]^3", &mut reg).unwrap();
        assert_eq!(p.display(&reg).to_string(), "5/2 * b[t]^3");
        assert!(parse_polynomial("1 * q[t]", &mut reg).is_err());
        assert!(parse_polynomial("", &mut reg).is_err());
    }
}
