//! Super Cayley–Hamilton identities `CH_{e,f}` and trace relations `T_{e,f}`,
//! their evaluation on generic matrices, and rank computations.
//!
//! Convention: `T_{e,f}` is multilinear in `y₁..y_e, x₁..x_f` with `e + f = n + 1`;
//! `CH_{e,f}` omits the last variable of that list (`x_f` if `f ≥ 1`, else `y_e`)
//! and satisfies `tr(CH_{e,f} · stripped) = T_{e,f}`.

mod charges;
mod checks;
mod evaluate;

use alloc::vec::Vec;

use crate::freetrace::{encode_phi, encode_psi, stripped_letter, Letter, TraceExpression};
use crate::perm::Perm;
use crate::{par, Error, Q};

pub use charges::{
    charge7_report, charge_table, drop_linear_traces, first_rank_drop, trace_monomials, Charge7Report, ChargeTableRow,
    MonomialSet,
};
pub use checks::{
    antisymmetry_holds, deduce_one_matrix_relations, fulton_exhaustive, fulton_sign_check, polarization_roundtrip,
    polarize, rank1_oracle_check, relation_rank, relation_rank_unchecked, restitute, DeductionReport, FultonCase,
    FultonReport, PolarizationReport, RankReport,
};
pub use evaluate::{evaluate, evaluate_all, evaluate_matrix, Evaluated, MatrixAssignment};

/// Largest symmetric-group degree accepted without `force`.
pub const MAX_M: usize = 6;
/// Largest matrix size accepted without `force`.
pub const MAX_N: usize = 3;
/// Largest charge accepted without `force`.
pub const MAX_CHARGE: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentityKind {
    T,
    CH,
}

/// Which identity, for which matrix size.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IdentitySpec {
    pub n: usize,
    pub e: usize,
    pub f: usize,
    pub kind: IdentityKind,
}

impl IdentitySpec {
    pub fn new(kind: IdentityKind, e: usize, f: usize, n: usize) -> Result<Self, Error> {
        if e + f != n + 1 {
            return Err(Error::BadArity { e, f, n });
        }
        Ok(IdentitySpec { n, e, f, kind })
    }

    /// The variable stripped from `T_{e,f}` to get `CH_{e,f}`.
    pub fn stripped(&self) -> Letter {
        stripped_letter(self.e, self.f)
    }

    /// The free variables of the identity, bosonic first.
    pub fn variables(&self) -> Vec<Letter> {
        let mut v: Vec<Letter> = (1..=self.e as u32).map(Letter::Y).chain((1..=self.f as u32).map(Letter::X)).collect();
        if self.kind == IdentityKind::CH {
            let s = self.stripped();
            v.retain(|&l| l != s);
        }
        v
    }

    pub fn generate(&self) -> TraceExpression {
        match self.kind {
            IdentityKind::T => signed_sum(self.n + 1, |s| encode_phi(s, self.e, self.f)),
            IdentityKind::CH => signed_sum(self.n + 1, |s| encode_psi(s, self.e, self.f)),
        }
    }
}

/// `Σ_{σ ∈ S_m} ε_σ g(σ)`, summed in lexicographic order.
fn signed_sum(m: usize, g: impl Fn(&Perm) -> TraceExpression + Sync + Send) -> TraceExpression {
    let perms: Vec<Perm> = Perm::all(m).collect();
    let parts = par::map_ordered(perms, |s| g(&s).scale(&Q::from_integer(s.sign().into())));
    let mut out = TraceExpression::zero();
    for p in &parts {
        out.add_scaled_assign(p, &Q::from_integer(1.into()));
    }
    out
}

/// `T_{e,f} = Σ_{σ ∈ S_{n+1}} ε_σ Φ_σ`.
pub fn gen_t(e: usize, f: usize, n: usize) -> Result<TraceExpression, Error> {
    Ok(IdentitySpec::new(IdentityKind::T, e, f, n)?.generate())
}

/// `CH_{e,f} = Σ_{σ ∈ S_{n+1}} ε_σ Ψ_σ`.
pub fn gen_ch(e: usize, f: usize, n: usize) -> Result<TraceExpression, Error> {
    Ok(IdentitySpec::new(IdentityKind::CH, e, f, n)?.generate())
}

/// Cayley–Hamilton identity with `bos` free bosonic and `ferm` free fermionic
/// slots (`y₁..y_bos, x₁..x_ferm`) for matrices of size `bos + ferm`; the
/// closing variable is fermionic.
pub fn gen_ch_free(bos: usize, ferm: usize) -> TraceExpression {
    IdentitySpec { n: bos + ferm, e: bos, f: ferm + 1, kind: IdentityKind::CH }.generate()
}

/// Outcome of evaluating an identity on generic matrices.
#[derive(Clone, Debug)]
pub struct Verification {
    pub spec: IdentitySpec,
    /// Size of the matrices used.
    pub size: usize,
    pub expression: TraceExpression,
    pub zero: bool,
    /// Number of nonzero coefficients of the evaluation (0 when it vanishes).
    pub witness_terms: usize,
}

/// Evaluates `T_{e,f}` or `CH_{e,f}` on fresh generic `size × size` matrices.
pub fn verify_identity_at(spec: &IdentitySpec, size: usize) -> Verification {
    let expr = spec.generate();
    let asg = MatrixAssignment::generic(spec.variables(), size, false);
    let value = match spec.kind {
        IdentityKind::T => evaluate(&expr, &asg),
        IdentityKind::CH => evaluate_matrix(&expr, &asg).map(Evaluated::Matrix),
    }
    .expect("generic assignment covers every variable");
    let witness_terms = value.support_size();
    Verification { spec: *spec, size, expression: expr, zero: value.is_zero(), witness_terms }
}

/// Evaluates the identity at its own size `n`.
pub fn verify_identity(spec: &IdentitySpec) -> Verification {
    verify_identity_at(spec, spec.n)
}
