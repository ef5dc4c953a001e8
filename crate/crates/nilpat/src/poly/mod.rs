//! Sparse multivariate polynomials over a [`Field`].
//!
//! Variables are matrix positions `z[i,j]` (plus auxiliary variables used
//! internally by elimination tricks).  A polynomial stores its terms in a
//! `BTreeMap` keyed by exponent vector, which is simultaneously a canonical
//! form — equality is structural — and, because the natural order on
//! exponent vectors *is* the lex order, a cheap way to read off lex leading
//! terms.
//!
//! Two monomial orders are provided: [`MonomialOrder::Lex`], required by the
//! elimination theory, and [`MonomialOrder::GrevLex`], usually faster when
//! no variable has to be eliminated.  The default variable order lists the
//! nonzero positions of a pattern row-major, so `z[1,1] > z[1,2] > z[2,1]`
//! in lex.

mod text;

pub use text::parse_polynomial;

use crate::error::Error;
use crate::field::{Field, Scalar};
use num::Signed;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// One variable of a polynomial ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// The matrix position `z[i,j]` (1-based).
    Entry(u16, u16),
    /// An auxiliary variable (`t0`, `t1`, ...) used by elimination tricks.
    Aux(u16),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Entry(i, j) => write!(f, "z[{i},{j}]"),
            Var::Aux(k) => write!(f, "t{k}"),
        }
    }
}

/// An ordered list of variables; the list order is the variable order
/// (earlier = larger in lex).
#[derive(Debug, PartialEq, Eq)]
pub struct VarSet {
    vars: Vec<Var>,
}

/// Shared handle to a variable set.  Cloning a polynomial must not copy the
/// ring, and ring equality compares contents (with a pointer fast path).
pub type Ring = Arc<VarSet>;

impl VarSet {
    /// A ring over the given variables, in the given order.
    pub fn new(vars: Vec<Var>) -> Ring {
        let mut seen = vars.clone();
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen.len(), vars.len(), "duplicate variable in ring");
        Arc::new(VarSet { vars })
    }

    /// The row-major ring `z[i,j]` over the given positions.
    pub fn from_positions<I: IntoIterator<Item = (usize, usize)>>(positions: I) -> Ring {
        let mut vars: Vec<Var> = positions
            .into_iter()
            .map(|(i, j)| Var::Entry(i as u16, j as u16))
            .collect();
        vars.sort_unstable();
        VarSet::new(vars)
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn index_of(&self, v: Var) -> Option<usize> {
        self.vars.iter().position(|w| *w == v)
    }

    /// A new ring with a fresh auxiliary variable prepended, i.e. made the
    /// largest variable of the order.
    pub fn with_aux_prepended(&self) -> Ring {
        let next = self
            .vars
            .iter()
            .filter_map(|v| match v {
                Var::Aux(k) => Some(k + 1),
                _ => None,
            })
            .max()
            .unwrap_or(0);
        let mut vars = vec![Var::Aux(next)];
        vars.extend_from_slice(&self.vars);
        VarSet::new(vars)
    }

    /// The ring on the last `self.len() - drop` variables.
    pub fn suffix(&self, drop: usize) -> Ring {
        VarSet::new(self.vars[drop..].to_vec())
    }
}

pub fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// An exponent vector over some ring.  The derived `Ord` (componentwise
/// lexicographic on the vector) coincides with the lex monomial order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn unit(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.0.len(), other.0.len());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller must ensure divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// True when the two monomials share no variable.
    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// A total order on monomials compatible with multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Pure lexicographic; required for elimination ideals.
    Lex,
    /// Graded reverse lexicographic; usually the fastest for plain bases.
    GrevLex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::GrevLex => {
                let (da, db) = (a.total_degree(), b.total_degree());
                if da != db {
                    return da.cmp(&db);
                }
                // Equal degree: the larger monomial has the *smaller*
                // exponent at the last position where they differ.
                for (x, y) in a.0.iter().zip(&b.0).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// A sparse polynomial: canonical term map plus ring and field handles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Ring,
    field: Field,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(ring: &Ring, field: Field) -> Polynomial {
        Polynomial { ring: ring.clone(), field, terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Ring, field: Field, c: Scalar) -> Polynomial {
        let mut p = Polynomial::zero(ring, field);
        if !c.is_zero() {
            p.terms.insert(Monomial::unit(ring.len()), c);
        }
        p
    }

    pub fn one(ring: &Ring, field: Field) -> Polynomial {
        Polynomial::constant(ring, field, field.one())
    }

    /// The variable `v` as a polynomial.  Panics if `v` is not in the ring.
    pub fn var(ring: &Ring, field: Field, v: Var) -> Polynomial {
        let idx = ring.index_of(v).unwrap_or_else(|| panic!("{v} not in ring"));
        let mut p = Polynomial::zero(ring, field);
        p.terms.insert(Monomial::var(ring.len(), idx), field.one());
        p
    }

    pub fn from_terms(
        ring: &Ring,
        field: Field,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Polynomial {
        let mut p = Polynomial::zero(ring, field);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_unit())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    /// Adds `c * m` in place, dropping the term if it cancels.
    pub(crate) fn add_term(&mut self, m: Monomial, c: Scalar) {
        debug_assert_eq!(m.0.len(), self.ring.len());
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            None => {
                self.terms.insert(m, c);
            }
            Some(old) => {
                let sum = self.field.add(&old, &c);
                if !sum.is_zero() {
                    self.terms.insert(m, sum);
                }
            }
        }
    }

    /// Removes and returns the coefficient of `m`, if present.
    pub(crate) fn remove_term(&mut self, m: &Monomial) -> Option<Scalar> {
        self.terms.remove(m)
    }

    /// In-place `self -= (c * m) * g`; the hot path of polynomial division.
    pub(crate) fn sub_mul_term(&mut self, g: &Polynomial, m: &Monomial, c: &Scalar) {
        let field = self.field;
        for (gm, gc) in &g.terms {
            let prod = field.mul(gc, c);
            self.add_term(gm.mul(m), field.neg(&prod));
        }
    }

    fn check_compatible(&self, other: &Polynomial) -> Result<(), Error> {
        if self.field != other.field {
            return Err(Error::MixedRings(format!(
                "fields {} and {} differ",
                self.field, other.field
            )));
        }
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::MixedRings("variable sets differ".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, Error> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial, Error> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.field.neg(c);
        }
        out
    }

    /// Multiplication by one term, the workhorse of division.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring, self.field);
        if c.is_zero() {
            return out;
        }
        for (mm, cc) in &self.terms {
            out.terms.insert(mm.mul(m), self.field.mul(cc, c));
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        self.mul_term(&Monomial::unit(self.ring.len()), c)
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial, Error> {
        self.check_compatible(other)?;
        let mut out = Polynomial::zero(&self.ring, self.field);
        for (m, c) in &other.terms {
            for (mm, cc) in &self.terms {
                out.add_term(mm.mul(m), self.field.mul(cc, c));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring, self.field);
        for _ in 0..e {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// The leading term under `order`; errors on the zero polynomial.
    pub fn leading_term(&self, order: MonomialOrder) -> Result<(&Monomial, &Scalar), Error> {
        match order {
            MonomialOrder::Lex => self.terms.last_key_value().ok_or(Error::ZeroPolynomial),
            MonomialOrder::GrevLex => self
                .terms
                .iter()
                .max_by(|(a, _), (b, _)| order.cmp(a, b))
                .ok_or(Error::ZeroPolynomial),
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    /// `Some(d)` when every term has total degree `d`.  The zero polynomial
    /// reports `Some(0)` by convention; use [`Polynomial::is_zero`] to tell
    /// the two cases apart.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|m| m.total_degree());
        match degrees.next() {
            None => Some(0),
            Some(d) => degrees.all(|e| e == d).then_some(d),
        }
    }

    /// Evaluates at a full assignment of the ring's variables.
    pub fn evaluate(&self, assignment: &BTreeMap<Var, Scalar>) -> Result<Scalar, Error> {
        for v in self.ring.vars() {
            if !assignment.contains_key(v) {
                return Err(Error::MissingAssignment(v.to_string()));
            }
        }
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (idx, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    let val = &assignment[&self.ring.vars()[idx]];
                    term = self.field.mul(&term, &self.field.pow(val, e as u64));
                }
            }
            acc = self.field.add(&acc, &term);
        }
        Ok(acc)
    }

    /// Reinterprets the polynomial in `bigger`, which must contain this
    /// polynomial's variables as a suffix (auxiliaries prepended).
    pub fn lift_to(&self, bigger: &Ring) -> Polynomial {
        let pad = bigger.len() - self.ring.len();
        debug_assert_eq!(&bigger.vars()[pad..], self.ring.vars());
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0u16; pad];
            e.extend_from_slice(&m.0);
            (Monomial(e), c.clone())
        });
        let mut out = Polynomial::zero(bigger, self.field);
        out.terms.extend(terms);
        out
    }

    /// Drops the first `drop` variables; `None` if any appears in a term.
    pub fn restrict_to_suffix(&self, smaller: &Ring, drop: usize) -> Option<Polynomial> {
        debug_assert_eq!(&self.ring.vars()[drop..], smaller.vars());
        let mut out = Polynomial::zero(smaller, self.field);
        for (m, c) in &self.terms {
            if m.0[..drop].iter().any(|&e| e > 0) {
                return None;
            }
            out.terms.insert(Monomial(m.0[drop..].to_vec()), c.clone());
        }
        Some(out)
    }

    /// Renders terms in descending `order`, in the text grammar understood
    /// by [`parse_polynomial`].
    pub fn render(&self, order: MonomialOrder) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut monomials: Vec<&Monomial> = self.terms.keys().collect();
        monomials.sort_by(|a, b| order.cmp(b, a));
        let mut out = String::new();
        for (k, m) in monomials.iter().enumerate() {
            let c = &self.terms[*m];
            let (neg, abs) = match c {
                Scalar::Rat(r) => (c.is_negative(), Scalar::Rat(r.abs())),
                Scalar::Mod(_) => (false, c.clone()),
            };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_unit() {
                factors.push(abs.to_string());
            }
            for (idx, &e) in m.0.iter().enumerate() {
                if e == 1 {
                    factors.push(self.ring.vars()[idx].to_string());
                } else if e > 1 {
                    factors.push(format!("{}^{}", self.ring.vars()[idx], e));
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(MonomialOrder::Lex))
    }
}
