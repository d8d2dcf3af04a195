use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::One;

use super::evaluate::{evaluate_matrix, MatrixAssignment};
use super::{evaluate, gen_ch, gen_t, MAX_M, MAX_N};
use crate::freetrace::{encode_phi, ratio, standard_letter, tau_pstring, Letter, TraceExpression};
use crate::gmatrix::SuperMatrix;
use crate::linalg::polynomial_rank;
use crate::perm::{Coloring, PString, Perm};
use crate::superalg::{GenKind, GenLabel, SuperPolynomial};
use crate::symfun::factorial;
use crate::{par, Error, Q};

fn cap(what: &'static str, value: usize, max: usize) -> Result<(), Error> {
    if value > max {
        Err(Error::TooLarge { what, value, cap: max })
    } else {
        Ok(())
    }
}

/// Dimension of the span of `{Φ_σ : σ ∈ S_m}` on generic `n × n` matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankReport {
    pub m: usize,
    pub e: usize,
    pub f: usize,
    pub n: usize,
    pub span_dim: usize,
    pub kernel_dim: usize,
}

/// [`relation_rank_unchecked`] with the `m ≤ 6`, `n ≤ 3` caps.
pub fn relation_rank(m: usize, e: usize, f: usize, n: usize) -> Result<RankReport, Error> {
    cap("m", m, MAX_M)?;
    cap("n", n, MAX_N)?;
    relation_rank_unchecked(m, e, f, n)
}

pub fn relation_rank_unchecked(m: usize, e: usize, f: usize, n: usize) -> Result<RankReport, Error> {
    if e + f != m {
        return Err(Error::BadArity { e, f, n: m.saturating_sub(1) });
    }
    let letters: Vec<Letter> = (1..=m).map(|p| standard_letter(e, p)).collect();
    let asg = MatrixAssignment::generic(letters, n, false);
    let perms: Vec<Perm> = Perm::all(m).collect();
    let values: Vec<SuperPolynomial> = par::map_ordered(perms, |s| {
        let v = evaluate(&encode_phi(&s, e, f), &asg).expect("all letters assigned");
        v.as_scalar().cloned().expect("trace monomial")
    });
    let span_dim = polynomial_rank(&values);
    Ok(RankReport { m, e, f, n, span_dim, kernel_dim: values.len() - span_dim })
}

/// The two one-matrix consequences of Cayley–Hamilton: `y_i ← ξ²` in the
/// `n`-bosonic-slot identity gives a multiple of `ξ^{2n}`, and `y_i ← ξ²,
/// x₁ ← ξ` in the mixed one gives the `t_n` relation.
#[derive(Clone, Debug)]
pub struct DeductionReport {
    pub n: usize,
    pub nilpotency: TraceExpression,
    pub nilpotency_zero: bool,
    pub trace_relation: TraceExpression,
    pub trace_relation_zero: bool,
}

impl DeductionReport {
    pub fn holds(&self) -> bool {
        self.nilpotency_zero && self.trace_relation_zero
    }
}

pub fn deduce_one_matrix_relations(n: usize) -> Result<DeductionReport, Error> {
    if n == 0 {
        return Err(Error::BadArity { e: 0, f: 0, n });
    }
    cap("n", n, MAX_N)?;
    let xi = Letter::X(1);
    let sq = TraceExpression::word(&[xi, xi]);
    let squares = |k: usize| -> BTreeMap<Letter, TraceExpression> { (1..=k as u32).map(|i| (Letter::Y(i), sq.clone())).collect() };

    // n bosonic slots, closed by x₁
    let nil = gen_ch(n, 1, n)?.substitute(&squares(n))?;
    // n−1 bosonic slots and x₁, closed by x₂
    let mut map = squares(n - 1);
    map.insert(xi, TraceExpression::letter(xi));
    let rel = gen_ch(n - 1, 2, n)?.substitute(&map)?;

    let asg = MatrixAssignment::generic([xi], n, false);
    let nilpotency_zero = evaluate_matrix(&nil, &asg)?.is_zero();
    let trace_relation_zero = evaluate_matrix(&rel, &asg)?.is_zero();
    Ok(DeductionReport { n, nilpotency: nil, nilpotency_zero, trace_relation: rel, trace_relation_zero })
}

/// Symmetry of `T_{e,f}` under swapping adjacent bosonic slots and
/// antisymmetry under swapping adjacent fermionic ones.
pub fn antisymmetry_holds(e: usize, f: usize, n: usize) -> Result<bool, Error> {
    let t = gen_t(e, f, n)?;
    let swap = |a: Letter, b: Letter| {
        t.rename(|l| {
            if l == a {
                b
            } else if l == b {
                a
            } else {
                l
            }
        })
    };
    let neg = -&t;
    let bos = (1..e as u32).all(|i| swap(Letter::Y(i), Letter::Y(i + 1)) == t);
    let ferm = (1..f as u32).all(|i| swap(Letter::X(i), Letter::X(i + 1)) == neg);
    Ok(bos && ferm)
}

/// `expr` with `var ↦ v₁ + ⋯ + v_h`, keeping only the part multilinear in the `v`s.
pub fn polarize(expr: &TraceExpression, var: Letter, new_vars: &[Letter]) -> Result<TraceExpression, Error> {
    let h = new_vars.len();
    if expr.degree_in(var) != Some(h) {
        return Err(Error::NotHomogeneous);
    }
    let support = expr.support();
    if new_vars.iter().any(|v| v.parity() != var.parity() || support.contains(v)) {
        return Err(Error::ParityMismatch);
    }
    let sum = new_vars.iter().fold(TraceExpression::zero(), |acc, &v| &acc + &TraceExpression::letter(v));
    let full = expr.substitute_one(var, &sum)?;
    Ok(TraceExpression::from_terms(
        full.terms().filter(|(t, _)| new_vars.iter().all(|&v| t.degree_in(v) == 1)).map(|(t, c)| (t.clone(), c.clone())),
    ))
}

/// `v_i ↦ var` for every `v_i`.
pub fn restitute(expr: &TraceExpression, new_vars: &[Letter], var: Letter) -> Result<TraceExpression, Error> {
    let map: BTreeMap<Letter, TraceExpression> = new_vars.iter().map(|&v| (v, TraceExpression::letter(var))).collect();
    expr.substitute(&map)
}

#[derive(Clone, Debug)]
pub struct PolarizationReport {
    pub degree: usize,
    pub polarized: TraceExpression,
    pub restituted: TraceExpression,
    /// `restituted = h! · expr`.
    pub matches: bool,
}

/// Polarizes `var` into fresh letters of the same kind and restitutes.
pub fn polarization_roundtrip(expr: &TraceExpression, var: Letter) -> Result<PolarizationReport, Error> {
    let h = expr.degree_in(var).ok_or(Error::NotHomogeneous)?;
    let top = expr.support().iter().map(|l| l.index()).max().unwrap_or(0);
    let fresh: Vec<Letter> = (1..=h as u32)
        .map(|k| match var {
            Letter::Y(_) => Letter::Y(top + k),
            Letter::X(_) => Letter::X(top + k),
        })
        .collect();
    let polarized = polarize(expr, var, &fresh)?;
    let restituted = restitute(&polarized, &fresh, var)?;
    let matches = restituted == expr.scale(&Q::from_integer(factorial(h).into()));
    Ok(PolarizationReport { degree: h, polarized, restituted, matches })
}

/// Evaluates `Φ_σ` on rank-one matrices `(u_{i,h} φ_{i,k})_{h,k}` (with `u_i`
/// of the color of `i`, `φ_i` bosonic) and compares with
/// `Π_{i ascending} ⟨φ_{σ⁻¹(i)}, u_i⟩` and with the cycle-wise product
/// `ε(λ(σ)) Π_{(i₁…i_k)} ⟨φ_{i_k}, u_{i₁}⟩⟨φ_{i₁}, u_{i₂}⟩⋯`.
pub fn rank1_oracle_check(sigma: &Perm, e: usize, f: usize, n: usize) -> Result<bool, Error> {
    let m = sigma.len();
    if e + f != m {
        return Err(Error::BadArity { e, f, n: m.saturating_sub(1) });
    }
    cap("m", m, 5)?;
    cap("n", n, MAX_N)?;
    let mut asg = MatrixAssignment::new(n);
    let mut u: Vec<Vec<SuperPolynomial>> = Vec::with_capacity(m);
    let mut phi: Vec<Vec<SuperPolynomial>> = Vec::with_capacity(m);
    for i in 1..=m {
        let kind = if i <= e { GenKind::Bosonic } else { GenKind::Fermionic };
        let reg = asg.registry_mut();
        let mut ui = Vec::with_capacity(n);
        let mut pi = Vec::with_capacity(n);
        for h in 1..=n as u32 {
            let g = reg.allocate(kind, GenLabel::new("u", &[i as u32, h]))?;
            ui.push(SuperPolynomial::generator(reg, &g));
            let g = reg.allocate(GenKind::Bosonic, GenLabel::new("phi", &[i as u32, h]))?;
            pi.push(SuperPolynomial::generator(reg, &g));
        }
        u.push(ui);
        phi.push(pi);
    }
    let id = asg.registry().id();
    for i in 1..=m {
        let mut entries = Vec::with_capacity(n * n);
        for h in 0..n {
            for k in 0..n {
                entries.push(u[i - 1][h].try_mul(&phi[i - 1][k])?);
            }
        }
        asg.insert(standard_letter(e, i), SuperMatrix::from_entries(id, n, entries))?;
    }
    let pairing = |a: usize, b: usize| -> SuperPolynomial {
        // ⟨φ_a, u_b⟩
        let mut s = SuperPolynomial::zero(id);
        for h in 0..n {
            s = &s + &(&phi[a - 1][h] * &u[b - 1][h]);
        }
        s
    };
    let lhs = evaluate(&encode_phi(sigma, e, f), &asg)?.as_scalar().cloned().expect("trace monomial");

    let inv = sigma.inverse();
    let mut by_point = SuperPolynomial::constant(id, Q::one());
    for i in 1..=m {
        by_point = &by_point * &pairing(inv.apply(i), i);
    }

    let lam = sigma.lambda();
    let coloring = Coloring::standard(e, f);
    let mut by_cycle = SuperPolynomial::from_integer(id, coloring.epsilon(&lam.word()));
    for c in &lam.cycles {
        let k = c.len();
        for j in 0..k {
            by_cycle = &by_cycle * &pairing(c[(j + k - 1) % k], c[j]);
        }
    }
    Ok(lhs == by_point && lhs == by_cycle)
}

/// One instance of the cycle-absorption sign: points `A ⊔ B = {1..M}`, the
/// cycle `c = (i, E)` with `E` an ordering of `B`, a coloring `C` and `σ`
/// permuting `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FultonCase {
    pub a: Vec<usize>,
    pub i: usize,
    pub e: Vec<usize>,
    pub coloring: Coloring,
}

impl FultonCase {
    fn size(&self) -> usize {
        self.a.len() + self.e.len()
    }

    fn natural(coloring: &Coloring) -> impl Fn(usize) -> Letter + '_ {
        move |p| if coloring.is_fermionic(p) { Letter::X(p as u32) } else { Letter::Y(p as u32) }
    }

    /// The coloring `C'`: `i` takes the parity of the fermions on `(i, E)`.
    pub fn absorbed_coloring(&self) -> Coloring {
        let mut word = alloc::vec![self.i];
        word.extend_from_slice(&self.e);
        let mut c = self.coloring.clone();
        c.set(self.i, self.coloring.fermionic_count(&word) % 2 == 1);
        c
    }

    /// `γ` from the closed formula.
    pub fn formula(&self) -> i64 {
        let c = &self.coloring;
        let mut sorted_a = self.a.clone();
        sorted_a.sort_unstable();
        let mut sorted_b = self.e.clone();
        sorted_b.sort_unstable();
        let mut ab = sorted_a;
        ab.extend_from_slice(&sorted_b);
        let mut ie = alloc::vec![self.i];
        ie.extend_from_slice(&self.e);
        let mut g = c.epsilon(&ab) * c.epsilon(&self.e) * c.epsilon(&ie);
        if self.absorbed_coloring().is_fermionic(self.i) != c.is_fermionic(self.i) {
            let later = self.a.iter().filter(|&&j| j > self.i && c.is_fermionic(j)).count();
            if later % 2 == 1 {
                g = -g;
            }
        }
        g
    }

    /// `γ` as the ratio `τ_C(σ∘c) / τ_{C'}(σ)|_{z_i ↦ ε_C(i,E) z_i z_E}`.
    pub fn brute(&self, sigma: &Perm) -> Option<Q> {
        let m = self.size();
        let mut images: Vec<usize> = (1..=m).collect();
        let mut cyc = alloc::vec![self.i];
        cyc.extend_from_slice(&self.e);
        for k in 0..cyc.len() {
            images[cyc[k] - 1] = cyc[(k + 1) % cyc.len()];
        }
        let c = Perm::from_one_line(&images)?;
        let sc = Perm::from_one_line(&(1..=m).map(|x| sigma.apply(c.apply(x))).collect::<Vec<_>>())?;
        let lhs = tau_pstring(&sc.lambda(), &self.coloring, Self::natural(&self.coloring));

        let cp = self.absorbed_coloring();
        let lam = sigma.lambda();
        let on_a = PString {
            cycles: lam.cycles.into_iter().filter(|cy| !(cy.len() == 1 && self.e.contains(&cy[0]))).collect(),
            tail: None,
        };
        let rhs0 = tau_pstring(&on_a, &cp, Self::natural(&cp));
        let word: Vec<Letter> = cyc.iter().map(|&p| Self::natural(&self.coloring)(p)).collect();
        let image = TraceExpression::word(&word).scale(&Q::from_integer(self.coloring.epsilon(&cyc).into()));
        let rhs = rhs0.substitute_one(Self::natural(&cp)(self.i), &image).ok()?;
        ratio(&lhs, &rhs)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FultonReport {
    pub cases: usize,
    pub evaluations: usize,
    /// Cases where the brute-force sign disagreed with the formula or varied with `σ`.
    pub failures: Vec<FultonCase>,
}

impl FultonReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty() && self.cases > 0
    }
}

/// Checks each case against every `σ` in `sigmas` (permutations of `{1..M}`
/// fixing `B`); `σ`s that move a point of `B` are skipped.
pub fn fulton_sign_check<'a>(cases: impl IntoIterator<Item = (FultonCase, &'a [Perm])>) -> FultonReport {
    let mut report = FultonReport::default();
    for (case, sigmas) in cases {
        report.cases += 1;
        let want = Q::from_integer(case.formula().into());
        let mut ok = true;
        for s in sigmas.iter().filter(|s| case.e.iter().all(|&b| s.apply(b) == b)) {
            report.evaluations += 1;
            if case.brute(s).as_ref() != Some(&want) {
                ok = false;
            }
        }
        if !ok {
            report.failures.push(case);
        }
    }
    report
}

/// Every case with `M ≤ max_points`, checked against all `σ` permuting `A`.
pub fn fulton_exhaustive(max_points: usize) -> FultonReport {
    let mut report = FultonReport::default();
    for m in 1..=max_points {
        let all: Vec<Perm> = Perm::all(m).collect();
        for mask in 0u32..(1 << m) {
            let a: Vec<usize> = (1..=m).filter(|&p| mask & (1 << (p - 1)) != 0).collect();
            if a.is_empty() {
                continue;
            }
            let b: Vec<usize> = (1..=m).filter(|&p| mask & (1 << (p - 1)) == 0).collect();
            let sigmas: Vec<Perm> = all.iter().filter(|s| b.iter().all(|&x| s.apply(x) == x)).cloned().collect();
            let orders: Vec<Vec<usize>> = if b.is_empty() {
                alloc::vec![Vec::new()]
            } else {
                Perm::all(b.len()).map(|p| p.one_line().iter().map(|&k| b[k - 1]).collect()).collect()
            };
            for colors in 0u32..(1 << m) {
                let coloring = Coloring::new((0..m).map(|k| colors & (1 << k) != 0).collect());
                for &i in &a {
                    for e in &orders {
                        let case = FultonCase { a: a.clone(), i, e: e.clone(), coloring: coloring.clone() };
                        let sub = fulton_sign_check([(case, sigmas.as_slice())]);
                        report.cases += sub.cases;
                        report.evaluations += sub.evaluations;
                        report.failures.extend(sub.failures);
                    }
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfun::codimension;
    use crate::freetrace::decode;
    use Letter::{X, Y};

    #[test]
    fn small_ranks() {
        for e in 0..=3 {
            let r = relation_rank(3, e, 3 - e, 2).unwrap();
            assert_eq!((r.span_dim, r.kernel_dim), (5, 1));
            let r = relation_rank(3, e, 3 - e, 3).unwrap();
            assert_eq!((r.span_dim, r.kernel_dim), (6, 0));
        }
        assert_eq!(relation_rank(4, 2, 2, 2).unwrap().span_dim, 14);
        assert!(matches!(relation_rank(7, 7, 0, 2), Err(Error::TooLarge { .. })));
        assert!(matches!(relation_rank(3, 1, 1, 2), Err(Error::BadArity { .. })));
    }

    #[test]
    fn ranks_equal_codimensions() {
        for m in 1..=4 {
            for n in 1..=3 {
                for e in 0..=m {
                    let r = relation_rank(m, e, m - e, n).unwrap();
                    assert_eq!(r.span_dim as u128, codimension(m, n), "m={m} e={e} n={n}");
                    assert_eq!((r.span_dim + r.kernel_dim) as u128, factorial(m));
                }
            }
        }
    }

    #[test]
    fn deductions() {
        for n in 1..=3 {
            let d = deduce_one_matrix_relations(n).unwrap();
            assert!(d.holds(), "n={n}");
            assert!(!d.nilpotency.is_zero());
            // the substituted identity is a multiple of the single word x₁^{2n}
            let pow: Vec<Letter> = alloc::vec![X(1); 2 * n];
            let nf = Q::from_integer(factorial(n).into());
            let w = TraceExpression::word(&pow);
            assert!(d.nilpotency == w.scale(&nf) || d.nilpotency == w.scale(&-nf), "{}", d.nilpotency);
        }
    }

    #[test]
    fn slot_symmetries() {
        for n in 1..=3 {
            for e in 0..=n + 1 {
                assert!(antisymmetry_holds(e, n + 1 - e, n).unwrap());
            }
        }
    }

    #[test]
    fn polarization_examples() {
        let q = |k: i64| Q::from_integer(k.into());
        // t(y₁²)
        let e = TraceExpression::trace_of_word(&[Y(1), Y(1)]);
        let r = polarization_roundtrip(&e, Y(1)).unwrap();
        assert_eq!(r.polarized, TraceExpression::trace_of_word(&[Y(2), Y(3)]).scale(&q(2)));
        assert!(r.matches);

        // t(x₁ y₁²) ↦ t(x₁ y₁ y₂) + t(x₁ y₂ y₁) in slots y₁, y₂, x₁
        let e = TraceExpression::trace_of_word(&[X(1), Y(1), Y(1)]);
        let p = polarize(&e, Y(1), &[Y(2), Y(3)]).unwrap().rename(|l| match l {
            Y(2) => Y(1),
            Y(3) => Y(2),
            other => other,
        });
        let s = Perm::from_cycles(3, &[alloc::vec![1, 2, 3]]).unwrap();
        assert_eq!(p, &encode_phi(&s, 2, 1) + &encode_phi(&s.inverse(), 2, 1));

        // t(y₁ x₁²) ↦ Φ_σ − Φ_{σ⁻¹} in slots y₁, x₁, x₂
        let e = TraceExpression::trace_of_word(&[Y(1), X(1), X(1)]);
        let p = polarize(&e, X(1), &[X(2), X(3)]).unwrap().rename(|l| match l {
            X(2) => X(1),
            X(3) => X(2),
            other => other,
        });
        assert_eq!(p, &encode_phi(&s, 1, 2) - &encode_phi(&s.inverse(), 1, 2));
        let d = decode(&(&p - &encode_phi(&s, 1, 2)), 1, 2, false).unwrap();
        assert_eq!(d.sigma, s.inverse());
        assert_eq!(d.coefficient, q(-1));
        let r = polarization_roundtrip(&e, X(1)).unwrap();
        assert!(r.matches);
        assert_eq!(r.restituted, e.scale(&q(2)));
    }

    #[test]
    fn polarization_needs_homogeneity() {
        let e = &TraceExpression::trace_of_word(&[Y(1), Y(1)]) + &TraceExpression::trace_of_word(&[Y(1)]);
        assert_eq!(polarization_roundtrip(&e, Y(1)).unwrap_err(), Error::NotHomogeneous);
        let e = TraceExpression::trace_of_word(&[Y(1), Y(1)]);
        assert_eq!(polarize(&e, Y(1), &[Y(2)]).unwrap_err(), Error::NotHomogeneous);
    }

    #[test]
    fn rank_one_small() {
        for m in 1..=4 {
            for e in 0..=m {
                for s in Perm::all(m) {
                    assert!(rank1_oracle_check(&s, e, m - e, 2).unwrap(), "σ={s} e={e}");
                }
            }
        }
    }

    #[test]
    fn rank_one_three() {
        let s = Perm::from_one_line(&[3, 1, 5, 2, 4]).unwrap();
        assert!(rank1_oracle_check(&s, 2, 3, 3).unwrap());
    }

    #[test]
    fn fulton_trivial_cases() {
        // empty E: substitution is the identity
        let case = FultonCase { a: alloc::vec![1, 2, 3], i: 2, e: alloc::vec![], coloring: Coloring::new(alloc::vec![true, false, true]) };
        for s in Perm::all(3) {
            assert_eq!(case.brute(&s), Some(Q::one()));
        }
        assert_eq!(case.formula(), 1);
        // bosonic coloring
        let case = FultonCase { a: alloc::vec![1, 3], i: 3, e: alloc::vec![4, 2], coloring: Coloring::standard(4, 0) };
        assert_eq!(case.formula(), 1);
        let s = Perm::from_cycles(4, &[alloc::vec![1, 3]]).unwrap();
        assert_eq!(case.brute(&s), Some(Q::one()));
    }

    #[test]
    fn fulton_small_exhaustive() {
        let r = fulton_exhaustive(4);
        assert!(r.holds(), "{:?}", r.failures.first());
    }
}
