use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_traits::One;

use crate::freetrace::{Letter, TraceExpression};
use crate::gmatrix::SuperMatrix;
use crate::superalg::{GenKind, Registry, SuperPolynomial};
use crate::{Error, Q};

/// Matrices assigned to letters, all of one size and one registry.
#[derive(Debug)]
pub struct MatrixAssignment {
    registry: Registry,
    n: usize,
    mats: BTreeMap<Letter, SuperMatrix>,
}

impl MatrixAssignment {
    /// Empty assignment over a fresh registry.
    pub fn new(n: usize) -> Self {
        MatrixAssignment { registry: Registry::new(), n, mats: BTreeMap::new() }
    }

    /// Generic matrices for each letter: bosonic entries for `y`, fermionic for `x`.
    /// Entries of `y3` are labelled `Y3:h,k`, those of `x1` are `X1:h,k`.
    pub fn generic(letters: impl IntoIterator<Item = Letter>, n: usize, traceless: bool) -> Self {
        let mut a = MatrixAssignment::new(n);
        for l in letters {
            a.add_generic(l, traceless).expect("fresh letter");
        }
        a
    }

    /// Adds a generic matrix for `l`; fails if `l` already has one.
    pub fn add_generic(&mut self, l: Letter, traceless: bool) -> Result<&SuperMatrix, Error> {
        let (kind, name) = match l {
            Letter::Y(i) => (GenKind::Bosonic, format!("Y{i}")),
            Letter::X(i) => (GenKind::Fermionic, format!("X{i}")),
        };
        let m = SuperMatrix::generic(&mut self.registry, kind, &name, self.n, traceless)?;
        self.mats.insert(l, m);
        Ok(&self.mats[&l])
    }

    /// Registry to allocate extra generators in, e.g. for hand-built matrices.
    pub fn registry_mut(&mut self) -> &mut Registry {
        &mut self.registry
    }

    pub fn registry(&self) -> &Registry {
        &self.registry
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, l: Letter) -> Option<&SuperMatrix> {
        self.mats.get(&l)
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.mats.keys().copied()
    }

    /// Assigns a matrix built over this assignment's registry. The matrix must
    /// have the letter's parity (the zero matrix always does).
    pub fn insert(&mut self, l: Letter, m: SuperMatrix) -> Result<(), Error> {
        if m.size() != self.n {
            return Err(Error::SizeMismatch { left: self.n, right: m.size() });
        }
        if m.registry() != self.registry.id() {
            return Err(crate::superalg::AlgebraError::RegistryMismatch { left: self.registry.id(), right: m.registry() }
                .into());
        }
        match m.parity() {
            Some(p) if m.is_zero() || p == l.parity() => {}
            _ => return Err(Error::ParityMismatch),
        }
        self.mats.insert(l, m);
        Ok(())
    }
}

/// Value of an expression under a [`MatrixAssignment`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evaluated {
    Scalar(SuperPolynomial),
    Matrix(SuperMatrix),
}

impl Evaluated {
    pub fn is_zero(&self) -> bool {
        match self {
            Evaluated::Scalar(p) => p.is_zero(),
            Evaluated::Matrix(m) => m.is_zero(),
        }
    }

    /// Total number of (entry, monomial) pairs with nonzero coefficient.
    pub fn support_size(&self) -> usize {
        match self {
            Evaluated::Scalar(p) => p.len(),
            Evaluated::Matrix(m) => m.entries().iter().map(SuperPolynomial::len).sum(),
        }
    }

    pub fn as_scalar(&self) -> Option<&SuperPolynomial> {
        match self {
            Evaluated::Scalar(p) => Some(p),
            Evaluated::Matrix(_) => None,
        }
    }

    pub fn as_matrix(&self) -> Option<&SuperMatrix> {
        match self {
            Evaluated::Matrix(m) => Some(m),
            Evaluated::Scalar(_) => None,
        }
    }
}

struct WordCache<'a> {
    asg: &'a MatrixAssignment,
    words: BTreeMap<Vec<Letter>, SuperMatrix>,
}

impl<'a> WordCache<'a> {
    fn new(asg: &'a MatrixAssignment) -> Self {
        WordCache { asg, words: BTreeMap::new() }
    }

    fn matrix(&mut self, w: &[Letter]) -> Result<SuperMatrix, Error> {
        if let Some(m) = self.words.get(w) {
            return Ok(m.clone());
        }
        let m = match w.split_last() {
            None => SuperMatrix::identity(self.asg.registry.id(), self.asg.n),
            Some((&last, [])) => self.asg.get(last).cloned().ok_or(Error::Unassigned(last))?,
            Some((&last, init)) => {
                let right = self.asg.get(last).ok_or(Error::Unassigned(last))?;
                self.matrix(init)?.matmul(right)?
            }
        };
        self.words.insert(w.to_vec(), m.clone());
        Ok(m)
    }

    fn trace(&mut self, w: &[Letter]) -> Result<SuperPolynomial, Error> {
        if w.is_empty() {
            return Ok(SuperPolynomial::from_integer(self.asg.registry.id(), self.asg.n as i64));
        }
        Ok(self.matrix(w)?.trace())
    }
}

/// Evaluates `expr`: a scalar if it is trace-only, a matrix otherwise. `t(1)`
/// becomes the matrix size.
pub fn evaluate(expr: &TraceExpression, asg: &MatrixAssignment) -> Result<Evaluated, Error> {
    if expr.is_trace_only() {
        evaluate_scalar(expr, asg).map(Evaluated::Scalar)
    } else {
        evaluate_matrix(expr, asg).map(Evaluated::Matrix)
    }
}

/// Evaluates several expressions with a shared cache of word products.
pub fn evaluate_all(exprs: &[TraceExpression], asg: &MatrixAssignment) -> Result<Vec<Evaluated>, Error> {
    let mut cache = WordCache::new(asg);
    exprs
        .iter()
        .map(|e| {
            if e.is_trace_only() {
                scalar_with(&mut cache, e).map(Evaluated::Scalar)
            } else {
                matrix_with(&mut cache, e).map(Evaluated::Matrix)
            }
        })
        .collect()
}

fn term_scalar(cache: &mut WordCache, traces: &[crate::TraceWord], c: &Q) -> Result<SuperPolynomial, Error> {
    let id = cache.asg.registry.id();
    let mut acc = SuperPolynomial::constant(id, c.clone());
    for tw in traces {
        if acc.is_zero() {
            break;
        }
        let t = cache.trace(tw.letters())?;
        acc = acc.mul_unchecked(&t);
    }
    Ok(acc)
}

fn evaluate_scalar(expr: &TraceExpression, asg: &MatrixAssignment) -> Result<SuperPolynomial, Error> {
    scalar_with(&mut WordCache::new(asg), expr)
}

fn scalar_with(cache: &mut WordCache, expr: &TraceExpression) -> Result<SuperPolynomial, Error> {
    let mut out = SuperPolynomial::zero(cache.asg.registry.id());
    for (t, c) in expr.terms() {
        let s = term_scalar(cache, t.traces(), c)?;
        out.add_scaled_assign(&s, &Q::one());
    }
    Ok(out)
}

/// Evaluates `expr` as a matrix, reading an empty outer word as the identity.
pub fn evaluate_matrix(expr: &TraceExpression, asg: &MatrixAssignment) -> Result<SuperMatrix, Error> {
    matrix_with(&mut WordCache::new(asg), expr)
}

fn matrix_with(cache: &mut WordCache, expr: &TraceExpression) -> Result<SuperMatrix, Error> {
    let mut out = SuperMatrix::zero(cache.asg.registry.id(), cache.asg.n);
    for (t, c) in expr.terms() {
        let s = term_scalar(cache, t.traces(), c)?;
        if s.is_zero() {
            continue;
        }
        let w = cache.matrix(t.outer())?;
        out = out.add(&w.left_mul_scalar(&s)?)?;
    }
    Ok(out)
}
