use alloc::vec::Vec;

use num_traits::Zero;

use super::{Letter, TraceExpression};
use crate::perm::{Coloring, PString, Perm};
use crate::{Error, Q};

/// A permutation with a coloring of its points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredPermutation {
    pub sigma: Perm,
    pub coloring: Coloring,
}

impl ColoredPermutation {
    /// `σ` with the standard coloring `C_{e,f}`; panics unless `e + f = |σ|`.
    pub fn standard(sigma: Perm, e: usize, f: usize) -> Self {
        assert_eq!(sigma.len(), e + f);
        ColoredPermutation { sigma, coloring: Coloring::standard(e, f) }
    }

    /// Fermionic points count.
    pub fn fermionic_points(&self) -> usize {
        (1..=self.coloring.len()).filter(|&p| self.coloring.is_fermionic(p)).count()
    }
}

/// Letter of point `p` under `C_{e,f}`: `y_p` for `p ≤ e`, `x_{p−e}` after.
pub fn standard_letter(e: usize, p: usize) -> Letter {
    if p <= e {
        Letter::Y(p as u32)
    } else {
        Letter::X((p - e) as u32)
    }
}

/// The variable removed when passing from `T_{e,f}` to `CH_{e,f}`: the last
/// point of `C_{e,f}`, i.e. `x_f` if `f ≥ 1`, else `y_e`.
pub fn stripped_letter(e: usize, f: usize) -> Letter {
    standard_letter(e, e + f)
}

/// `τ_C(w) = ε_C(word(w)) · Π tr(τ(cycle)) · τ(tail)` for any display `w`.
pub fn tau_pstring(w: &PString, coloring: &Coloring, letter: impl Fn(usize) -> Letter) -> TraceExpression {
    let sign = coloring.epsilon(&w.word());
    let traces: Vec<Vec<Letter>> = w.cycles.iter().map(|c| c.iter().map(|&p| letter(p)).collect()).collect();
    let outer: Vec<Letter> = w.tail.iter().flatten().map(|&p| letter(p)).collect();
    TraceExpression::monomial(Q::from_integer(sign.into()), &traces, &outer)
}

/// `Φ_σ` for `σ ∈ S_{e+f}` with coloring `C_{e,f}`.
pub fn encode_phi(sigma: &Perm, e: usize, f: usize) -> TraceExpression {
    assert_eq!(sigma.len(), e + f, "Φ needs σ ∈ S_(e+f)");
    tau_pstring(&sigma.lambda(), &Coloring::standard(e, f), |p| standard_letter(e, p))
}

/// `Ψ_σ` for `σ ∈ S_{e+f}` with coloring `C_{e,f}`: the cycle through the last
/// point becomes the outer word. The last point's own letter never appears.
pub fn encode_psi(sigma: &Perm, e: usize, f: usize) -> TraceExpression {
    assert_eq!(sigma.len(), e + f, "Ψ needs σ ∈ S_(e+f)");
    tau_pstring(&sigma.mu(), &Coloring::standard(e, f), |p| standard_letter(e, p))
}

/// Result of [`decode`]: `expr = coefficient · Φ_σ` (or `Ψ_σ`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoded {
    pub sigma: Perm,
    pub coefficient: Q,
}

/// Inverse of the encoding on a single multilinear term in `y₁..y_e, x₁..x_f`.
///
/// With `psi = false` the term must be trace-only and `σ ∈ S_{e+f}`; with
/// `psi = true` the outer word is the open cycle through an extra last point,
/// so `σ ∈ S_{e+f+1}` and the result is read against `Ψ` with coloring
/// `C_{e,f+1}`.
pub fn decode(expr: &TraceExpression, e: usize, f: usize, psi: bool) -> Result<Decoded, Error> {
    if expr.len() != 1 {
        return Err(Error::NotMultilinear);
    }
    let (term, c) = expr.terms().next().unwrap();
    let m = e + f;
    let point = |l: Letter| -> Option<usize> {
        match l {
            Letter::Y(i) if i >= 1 && (i as usize) <= e => Some(i as usize),
            Letter::X(j) if j >= 1 && (j as usize) <= f => Some(e + j as usize),
            _ => None,
        }
    };
    let mut seen = alloc::vec![false; m + 2];
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut take = |w: &[Letter], extra: Option<usize>| -> Result<Vec<usize>, Error> {
        let mut c = Vec::with_capacity(w.len() + 1);
        for &l in w {
            let p = point(l).ok_or(Error::NotMultilinear)?;
            if seen[p] {
                return Err(Error::NotMultilinear);
            }
            seen[p] = true;
            c.push(p);
        }
        c.extend(extra);
        Ok(c)
    };
    for tw in term.traces() {
        if tw.is_unit() {
            return Err(Error::NotMultilinear);
        }
        cycles.push(take(tw.letters(), None)?);
    }
    if psi {
        cycles.push(take(term.outer(), Some(m + 1))?);
    } else if !term.outer().is_empty() {
        return Err(Error::NotMultilinear);
    }
    if !seen[1..=m].iter().all(|&b| b) {
        return Err(Error::NotMultilinear);
    }
    let size = if psi { m + 1 } else { m };
    let sigma = Perm::from_cycles(size, &cycles).ok_or(Error::NotMultilinear)?;
    let enc = if psi { encode_psi(&sigma, e, f + 1) } else { encode_phi(&sigma, e, f) };
    let (_, ec) = enc.terms().next().ok_or(Error::NotMultilinear)?;
    Ok(Decoded { sigma, coefficient: c / ec })
}

/// `Φ_{τστ⁻¹} = sgn(β) · Φ_σ|_{y_i ← y_{α(i)}, x_j ← x_{β(j)}}` with `τ = (α, β) ∈ S_e × S_f`.
pub fn relabel_symmetry_holds(sigma: &Perm, e: usize, f: usize, alpha: &Perm, beta: &Perm) -> bool {
    assert_eq!((alpha.len(), beta.len()), (e, f));
    let mut tau_images = Vec::with_capacity(e + f);
    tau_images.extend(alpha.one_line().iter().copied());
    tau_images.extend(beta.one_line().iter().map(|&j| e + j));
    let tau = Perm::from_one_line(&tau_images).unwrap();
    let conj = tau.compose(sigma).compose(&tau.inverse());
    let lhs = encode_phi(&conj, e, f);
    let renamed = encode_phi(sigma, e, f).rename(|l| match l {
        Letter::Y(i) => Letter::Y(alpha.apply(i as usize) as u32),
        Letter::X(j) => Letter::X(beta.apply(j as usize) as u32),
    });
    let rhs = renamed.scale(&Q::from_integer(beta.sign().into()));
    lhs == rhs
}

/// Coefficient ratio of two single-term expressions with the same term, if any.
pub(crate) fn ratio(a: &TraceExpression, b: &TraceExpression) -> Option<Q> {
    if a.len() != 1 || b.len() != 1 {
        return None;
    }
    let (ta, ca) = a.terms().next()?;
    let (tb, cb) = b.terms().next()?;
    if ta != tb || cb.is_zero() {
        return None;
    }
    Some(ca / cb)
}
