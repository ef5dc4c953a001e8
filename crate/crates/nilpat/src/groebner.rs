//! Gröbner bases: Buchberger's algorithm, normal forms, elimination,
//! colon ideals, and saturation.
//!
//! Everything here works over any [`Field`] and any [`MonomialOrder`], but
//! elimination-style operations (elimination ideals, colon, saturation) pin
//! the lex order internally because only an elimination order makes the
//! intersection-with-a-subring step valid.
//!
//! The S-pair loop applies two classic shortcuts — the coprime-leading-term
//! criterion and the chain criterion — both of which provably never change
//! the computed ideal.  [`GbOptions::plain`] turns them off; tests compare
//! the two modes to guard against criterion bugs.
//!
//! Computations are bounded by a budget of S-pair reductions; exceeding it
//! reports [`Error::ResourceLimit`] rather than running away.

use crate::error::Error;
use crate::field::{Field, Scalar};
use crate::poly::{same_ring, Monomial, MonomialOrder, Polynomial, Ring};
use num::Signed;
use std::collections::{BinaryHeap, HashSet};

/// Default cap on S-pair reductions per Buchberger run.
pub const DEFAULT_REDUCTION_BUDGET: usize = 100_000;

/// A finitely generated ideal: nonzero generators over one ring and field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    ring: Ring,
    field: Field,
    gens: Vec<Polynomial>,
}

impl Ideal {
    /// Builds an ideal, dropping zero generators.  An empty (or all-zero)
    /// list yields the zero ideal.
    pub fn new(ring: &Ring, field: Field, gens: Vec<Polynomial>) -> Result<Ideal, Error> {
        for g in &gens {
            if g.field() != field || !same_ring(g.ring(), ring) {
                return Err(Error::MixedRings("generator over a different ring".into()));
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            field,
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }
}

/// A Gröbner basis together with the order it was computed under.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub basis: Vec<Polynomial>,
    pub order: MonomialOrder,
    /// True when the basis is reduced: monic, sorted by leading monomial,
    /// and no term of any element divisible by another's leading monomial.
    pub reduced: bool,
}

impl GroebnerBasis {
    /// The fully reduced remainder of `f` modulo this basis.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        normal_form(f, &self.basis, self.order)
    }
}

/// Knobs for [`buchberger_with`].
#[derive(Debug, Clone)]
pub struct GbOptions {
    /// Maximum number of S-pair reductions before giving up.
    pub budget: usize,
    /// Apply the coprime and chain criteria (on by default).  The plain
    /// variant exists as an oracle for the optimized one.
    pub use_pair_criteria: bool,
}

impl Default for GbOptions {
    fn default() -> Self {
        GbOptions { budget: DEFAULT_REDUCTION_BUDGET, use_pair_criteria: true }
    }
}

impl GbOptions {
    pub fn plain() -> Self {
        GbOptions { use_pair_criteria: false, ..GbOptions::default() }
    }

    pub fn with_budget(budget: usize) -> Self {
        GbOptions { budget, ..GbOptions::default() }
    }
}

/// Multivariate division: returns `(quotients, remainder)` with
/// `f = sum(q_i * g_i) + r` and no term of `r` divisible by any leading
/// term.  Deterministic: divisors are tried in list order and the leading
/// term of the running polynomial is always rewritten first.
pub fn div_rem(
    f: &Polynomial,
    divisors: &[&Polynomial],
    order: MonomialOrder,
) -> (Vec<Polynomial>, Polynomial) {
    let field = f.field();
    let mut p = f.clone();
    let mut rem = Polynomial::zero(f.ring(), field);
    let mut quots = vec![Polynomial::zero(f.ring(), field); divisors.len()];
    let lts: Vec<(Monomial, Scalar)> = divisors
        .iter()
        .map(|g| {
            let (m, c) = g.leading_term(order).expect("zero divisor polynomial");
            (m.clone(), c.clone())
        })
        .collect();
    'outer: while !p.is_zero() {
        let (ltm, ltc) = {
            let (m, c) = p.leading_term(order).unwrap();
            (m.clone(), c.clone())
        };
        for (i, g) in divisors.iter().enumerate() {
            let (gm, gc) = &lts[i];
            if gm.divides(&ltm) {
                let qm = gm.div(&ltm);
                let qc = field.div(&ltc, gc).expect("leading coefficient is nonzero");
                quots[i].add_term(qm.clone(), qc.clone());
                p.sub_mul_term(g, &qm, &qc);
                continue 'outer;
            }
        }
        rem.add_term(ltm.clone(), ltc);
        p.remove_term(&ltm);
    }
    (quots, rem)
}

/// The remainder of `f` on division by `basis`.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial], order: MonomialOrder) -> Polynomial {
    let refs: Vec<&Polynomial> = basis.iter().collect();
    div_rem(f, &refs, order).1
}

/// Scales to a canonical representative: monic over `Z_p`; over the
/// rationals, integer coefficients with content 1 and positive leading
/// coefficient (cheaper than monic while the basis is still in flux).
fn normalize(f: &Polynomial, order: MonomialOrder) -> Polynomial {
    if f.is_zero() {
        return f.clone();
    }
    match f.field() {
        Field::Prime(_) => make_monic(f, order),
        Field::Rationals => {
            use num::bigint::BigInt;
            use num::rational::BigRational;
            use num::{Integer, One, Zero};
            let mut den_lcm = BigInt::one();
            let mut num_gcd = BigInt::zero();
            for (_, c) in f.terms() {
                let Scalar::Rat(r) = c else { unreachable!() };
                den_lcm = den_lcm.lcm(r.denom());
                num_gcd = num_gcd.gcd(r.numer());
            }
            let scale = BigRational::new(den_lcm, num_gcd);
            let mut out = f.scale(&Scalar::Rat(scale.abs()));
            let (_, lc) = out.leading_term(order).unwrap();
            if lc.is_negative() {
                out = out.neg();
            }
            out
        }
    }
}

fn make_monic(f: &Polynomial, order: MonomialOrder) -> Polynomial {
    let (_, lc) = f.leading_term(order).expect("zero polynomial");
    let inv = f.field().inv(&lc.clone()).expect("leading coefficient is nonzero");
    f.scale(&inv)
}

/// The S-polynomial of `f` and `g`: the combination cancelling their
/// leading terms.  A basis is a Gröbner basis exactly when every
/// S-polynomial of two members reduces to zero against it (Buchberger's
/// criterion), which makes this the natural external check of a
/// computed basis.  Panics on zero input.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: MonomialOrder) -> Polynomial {
    let field = f.field();
    let (fm, fc) = f.leading_term(order).unwrap();
    let (gm, gc) = g.leading_term(order).unwrap();
    let lcm = fm.lcm(gm);
    let a = f.mul_term(&fm.div(&lcm), &field.inv(fc).unwrap());
    let b = g.mul_term(&gm.div(&lcm), &field.inv(gc).unwrap());
    a.sub(&b).expect("same ring")
}

#[derive(PartialEq, Eq)]
struct PairKey {
    degree: u32,
    i: usize,
    j: usize,
}

// BinaryHeap is a max-heap; invert so the smallest lcm degree pops first.
impl Ord for PairKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (other.degree, other.i, other.j).cmp(&(self.degree, self.i, self.j))
    }
}

impl PartialOrd for PairKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Buchberger's algorithm with the default options.
pub fn buchberger(ideal: &Ideal, order: MonomialOrder) -> Result<GroebnerBasis, Error> {
    buchberger_with(ideal, order, &GbOptions::default())
}

/// Buchberger's algorithm; returns the unique reduced basis.
pub fn buchberger_with(
    ideal: &Ideal,
    order: MonomialOrder,
    opts: &GbOptions,
) -> Result<GroebnerBasis, Error> {
    let mut basis: Vec<Polynomial> = Vec::new();
    for g in ideal.gens() {
        let nf = normal_form(g, &basis, order);
        if !nf.is_zero() {
            basis.push(normalize(&nf, order));
        }
    }
    // A unit among the generators settles everything immediately.
    if basis.iter().any(|g| g.is_constant() && !g.is_zero()) {
        return Ok(unit_basis(ideal, order));
    }

    let mut pairs: BinaryHeap<PairKey> = BinaryHeap::new();
    let mut done: HashSet<(usize, usize)> = HashSet::new();
    let lt = |basis: &[Polynomial], k: usize| -> Monomial {
        basis[k].leading_term(order).unwrap().0.clone()
    };
    let push_pairs = |pairs: &mut BinaryHeap<PairKey>, basis: &[Polynomial], t: usize| {
        let lt_t = lt(basis, t);
        for i in 0..t {
            let degree = lt(basis, i).lcm(&lt_t).total_degree();
            pairs.push(PairKey { degree, i, j: t });
        }
    };
    for t in 0..basis.len() {
        push_pairs(&mut pairs, &basis, t);
    }

    let mut reductions = 0usize;
    while let Some(PairKey { i, j, .. }) = pairs.pop() {
        let lt_i = lt(&basis, i);
        let lt_j = lt(&basis, j);
        if opts.use_pair_criteria {
            // Coprime criterion: the S-polynomial reduces to zero anyway.
            if lt_i.coprime(&lt_j) {
                done.insert((i, j));
                continue;
            }
            // Chain criterion: some k divides the lcm and both flanking
            // pairs are already settled.
            let lcm_ij = lt_i.lcm(&lt_j);
            let chained = (0..basis.len()).any(|k| {
                k != i
                    && k != j
                    && lt(&basis, k).divides(&lcm_ij)
                    && done.contains(&key(i, k))
                    && done.contains(&key(j, k))
            });
            if chained {
                done.insert((i, j));
                continue;
            }
        }
        reductions += 1;
        if reductions > opts.budget {
            return Err(Error::ResourceLimit(opts.budget));
        }
        let s = s_polynomial(&basis[i], &basis[j], order);
        let nf = normal_form(&s, &basis, order);
        done.insert((i, j));
        if !nf.is_zero() {
            let nf = normalize(&nf, order);
            if nf.is_constant() {
                return Ok(unit_basis(ideal, order));
            }
            basis.push(nf);
            push_pairs(&mut pairs, &basis, basis.len() - 1);
        }
    }

    Ok(GroebnerBasis { basis: reduce_basis(basis, order), order, reduced: true })
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn unit_basis(ideal: &Ideal, order: MonomialOrder) -> GroebnerBasis {
    GroebnerBasis {
        basis: vec![Polynomial::one(ideal.ring(), ideal.field())],
        order,
        reduced: true,
    }
}

/// Minimizes and autoreduces a basis; the result is the reduced basis,
/// monic and sorted ascending by leading monomial.
fn reduce_basis(mut basis: Vec<Polynomial>, order: MonomialOrder) -> Vec<Polynomial> {
    // Minimal: drop any element whose leading term another divides.
    let mut keep: Vec<Polynomial> = Vec::new();
    basis.sort_by(|a, b| {
        order.cmp(a.leading_term(order).unwrap().0, b.leading_term(order).unwrap().0)
    });
    for (idx, f) in basis.iter().enumerate() {
        let lt_f = f.leading_term(order).unwrap().0;
        let redundant = basis.iter().enumerate().any(|(k, g)| {
            k != idx && {
                let lt_g = g.leading_term(order).unwrap().0;
                lt_g.divides(lt_f) && (lt_g != lt_f || k < idx)
            }
        });
        if !redundant {
            keep.push(f.clone());
        }
    }
    // Autoreduce tails to the fixpoint; the reduced basis is unique.
    loop {
        let mut changed = false;
        for i in 0..keep.len() {
            let others: Vec<Polynomial> = keep
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i)
                .map(|(_, g)| g.clone())
                .collect();
            let nf = make_monic(&normal_form(&keep[i], &others, order), order);
            if nf != keep[i] {
                keep[i] = nf;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    keep.sort_by(|a, b| {
        order.cmp(a.leading_term(order).unwrap().0, b.leading_term(order).unwrap().0)
    });
    keep
}

/// Ideal membership: `f` reduces to zero modulo a basis of `ideal`.
pub fn member(f: &Polynomial, ideal: &Ideal) -> Result<bool, Error> {
    member_with(f, ideal, &GbOptions::default())
}

pub fn member_with(f: &Polynomial, ideal: &Ideal, opts: &GbOptions) -> Result<bool, Error> {
    let gb = buchberger_with(ideal, MonomialOrder::GrevLex, opts)?;
    Ok(gb.normal_form(f).is_zero())
}

/// True when the ideal is the whole ring, i.e. its reduced basis is `{1}`.
pub fn contains_one(ideal: &Ideal) -> Result<bool, Error> {
    contains_one_with(ideal, &GbOptions::default())
}

pub fn contains_one_with(ideal: &Ideal, opts: &GbOptions) -> Result<bool, Error> {
    let gb = buchberger_with(ideal, MonomialOrder::GrevLex, opts)?;
    Ok(gb.basis.len() == 1 && gb.basis[0].is_constant())
}

/// Ideal equality by mutual membership of generators.
pub fn ideal_equal(a: &Ideal, b: &Ideal) -> Result<bool, Error> {
    if a.field() != b.field() || !same_ring(a.ring(), b.ring()) {
        return Err(Error::MixedRings("comparing ideals over different rings".into()));
    }
    let gb_a = buchberger(a, MonomialOrder::GrevLex)?;
    let gb_b = buchberger(b, MonomialOrder::GrevLex)?;
    Ok(a.gens().iter().all(|g| gb_b.normal_form(g).is_zero())
        && b.gens().iter().all(|g| gb_a.normal_form(g).is_zero()))
}

/// The elimination ideal dropping the first `drop` variables: a lex basis
/// intersected with the subring on the remaining (smaller) variables.
pub fn elimination_ideal(ideal: &Ideal, drop: usize) -> Result<Ideal, Error> {
    elimination_ideal_with(ideal, drop, &GbOptions::default())
}

pub fn elimination_ideal_with(ideal: &Ideal, drop: usize, opts: &GbOptions) -> Result<Ideal, Error> {
    let gb = buchberger_with(ideal, MonomialOrder::Lex, opts)?;
    let small = ideal.ring().suffix(drop);
    let gens: Vec<Polynomial> = gb
        .basis
        .iter()
        .filter_map(|g| g.restrict_to_suffix(&small, drop))
        .collect();
    Ideal::new(&small, ideal.field(), gens)
}

/// The colon ideal `I : (f)` for one nonzero `f`, via the intersection
/// `I ∩ (f)` (auxiliary variable `t`, lex elimination of `t` from
/// `t*I + (1-t)*(f)`) followed by exact division of each generator by `f`.
pub fn colon_principal(ideal: &Ideal, f: &Polynomial) -> Result<Ideal, Error> {
    colon_principal_with(ideal, f, &GbOptions::default())
}

pub fn colon_principal_with(
    ideal: &Ideal,
    f: &Polynomial,
    opts: &GbOptions,
) -> Result<Ideal, Error> {
    if f.is_zero() {
        return Err(Error::ZeroDivisorInput);
    }
    if f.field() != ideal.field() || !same_ring(f.ring(), ideal.ring()) {
        return Err(Error::MixedRings("colon divisor over a different ring".into()));
    }
    let big = ideal.ring().with_aux_prepended();
    let t = Polynomial::var(&big, ideal.field(), *big.vars().first().unwrap());
    let f_big = f.lift_to(&big);
    let mut gens: Vec<Polynomial> = ideal
        .gens()
        .iter()
        .map(|g| g.lift_to(&big).mul(&t).expect("same ring"))
        .collect();
    gens.push(f_big.sub(&f_big.mul(&t).expect("same ring")).expect("same ring"));
    let extended = Ideal::new(&big, ideal.field(), gens)?;
    let intersection = elimination_ideal_with(&extended, 1, opts)?;
    // Every generator of I ∩ (f) is a polynomial multiple of f.
    let quotients: Vec<Polynomial> = intersection
        .gens()
        .iter()
        .map(|h| {
            let (q, r) = div_rem(h, &[f], MonomialOrder::Lex);
            assert!(r.is_zero(), "intersection generator not divisible by f");
            q.into_iter().next().unwrap()
        })
        .collect();
    Ideal::new(ideal.ring(), ideal.field(), quotients)
}

/// The saturation `I : (f)^∞` by the extra-variable method: eliminate `y`
/// from `I + (y*f - 1)`.  A quick unit check (any order) short-circuits the
/// common case where the saturation is the whole ring.
pub fn saturate(ideal: &Ideal, f: &Polynomial) -> Result<Ideal, Error> {
    saturate_with(ideal, f, &GbOptions::default())
}

pub fn saturate_with(ideal: &Ideal, f: &Polynomial, opts: &GbOptions) -> Result<Ideal, Error> {
    if f.is_zero() {
        return Err(Error::ZeroDivisorInput);
    }
    if f.field() != ideal.field() || !same_ring(f.ring(), ideal.ring()) {
        return Err(Error::MixedRings("saturation divisor over a different ring".into()));
    }
    let big = ideal.ring().with_aux_prepended();
    let y = Polynomial::var(&big, ideal.field(), *big.vars().first().unwrap());
    let mut gens: Vec<Polynomial> = ideal.gens().iter().map(|g| g.lift_to(&big)).collect();
    gens.push(
        f.lift_to(&big)
            .mul(&y)
            .expect("same ring")
            .sub(&Polynomial::one(&big, ideal.field()))
            .expect("same ring"),
    );
    let extended = Ideal::new(&big, ideal.field(), gens)?;
    // `1 ∈ I : f^∞` iff `1 ∈ I + (y*f - 1)`; grevlex settles that cheaply.
    if contains_one_with(&extended, opts)? {
        return Ideal::new(
            ideal.ring(),
            ideal.field(),
            vec![Polynomial::one(ideal.ring(), ideal.field())],
        );
    }
    elimination_ideal_with(&extended, 1, opts)
}

/// Saturation by iterating `I : (f)` until the chain stabilizes; the
/// independent cross-check for [`saturate`].
pub fn saturate_by_iterated_colon(ideal: &Ideal, f: &Polynomial) -> Result<Ideal, Error> {
    let mut current = ideal.clone();
    for _ in 0..64 {
        let next = colon_principal(&current, f)?;
        if ideal_equal(&next, &current)? {
            return Ok(current);
        }
        current = next;
    }
    // The ascending chain I : f ⊆ I : f^2 ⊆ ... stabilizes; 64 steps is far
    // beyond anything a desk-scale input can need.
    Err(Error::ResourceLimit(64))
}
