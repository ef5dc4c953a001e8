//! The symbolic characteristic polynomial of a pattern and its coefficient
//! ideal.
//!
//! Each nonzero position `(i,j)` of a pattern becomes a variable `z[i,j]`
//! (multiplied by the recorded sign for sign patterns), giving a matrix of
//! indeterminates `M`.  Writing
//!
//! ```text
//! det(xI - M) = x^n - F_1 x^(n-1) + F_2 x^(n-2) - ... + (-1)^n F_n
//! ```
//!
//! the coefficients `F_1, ..., F_n` are homogeneous polynomials with
//! `deg F_i = i`, and a matrix respecting the pattern is nilpotent exactly
//! when all of them vanish at the corresponding point with no zero
//! coordinate.  The *pattern ideal* is `(F_1, ..., F_n)`.
//!
//! Two independent routes compute the `F_i`:
//!
//! * [`CharMethod::Cycles`] — a sum over sets of pairwise vertex-disjoint
//!   simple cycles: a set of cycles `{c_1, ..., c_s}` with lengths summing
//!   to `i` contributes `prod_k (-1)^(len(c_k)-1) * prod(c_k)` to `F_i`;
//! * [`CharMethod::Determinant`] — expansion of `det(xI - M)` as a signed
//!   sum over permutations, with no division anywhere (safe in small
//!   characteristic).
//!
//! The two must agree term for term; tests enforce that exhaustively on
//! small orders.

use crate::error::Error;
use crate::field::{Field, Scalar};
use crate::groebner::Ideal;
use crate::pattern::Pattern;
use crate::poly::{Monomial, Polynomial, Ring, Var, VarSet};
use itertools::Itertools;
use std::collections::BTreeMap;

/// Which algorithm computes the characteristic coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharMethod {
    Cycles,
    Determinant,
}

/// A pattern read as a matrix of (signed) indeterminates over a field.
#[derive(Debug, Clone)]
pub struct SymbolicMatrix {
    pattern: Pattern,
    ring: Ring,
    field: Field,
}

impl SymbolicMatrix {
    pub fn new(pattern: &Pattern, field: Field) -> SymbolicMatrix {
        let ring = VarSet::from_positions(pattern.stars());
        SymbolicMatrix { pattern: pattern.clone(), ring, field }
    }

    pub fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    /// The row-major polynomial ring on the pattern's nonzero positions.
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// The `(i,j)` entry as a polynomial: `±z[i,j]` on a star, else zero.
    pub fn entry(&self, i: usize, j: usize) -> Polynomial {
        match self.pattern.sign(i, j) {
            None => Polynomial::zero(&self.ring, self.field),
            Some(sign) => {
                let v = Polynomial::var(&self.ring, self.field, Var::Entry(i as u16, j as u16));
                v.scale(&self.field.embed(sign.as_i64()))
            }
        }
    }

    /// The product of all variables; saturating the pattern ideal by this
    /// monomial discards everything with a zero coordinate.
    pub fn all_vars_product(&self) -> Polynomial {
        let exps = vec![1u16; self.ring.len()];
        Polynomial::from_terms(&self.ring, self.field, [(Monomial(exps), self.field.one())])
    }
}

/// The characteristic coefficients `[F_1, ..., F_n]` (index 0 is `F_1`).
pub fn char_coefficients(m: &SymbolicMatrix, method: CharMethod) -> Result<Vec<Polynomial>, Error> {
    match method {
        CharMethod::Cycles => char_by_cycles(m),
        CharMethod::Determinant => char_by_determinant(m),
    }
}

fn char_by_cycles(m: &SymbolicMatrix) -> Result<Vec<Polynomial>, Error> {
    let n = m.pattern.order();
    let field = m.field;
    struct CycleTerm {
        vertex_mask: u32,
        len: usize,
        mono: Monomial,
        coeff: Scalar,
    }
    let mut cycle_terms: Vec<CycleTerm> = Vec::new();
    for cycle in m.pattern.all_cycles()? {
        let mut mono = Monomial::unit(m.ring.len());
        let mut sign = 1i64;
        for (&a, &b) in cycle.iter().zip(cycle.iter().cycle().skip(1)).take(cycle.len()) {
            let idx = m.ring.index_of(Var::Entry(a as u16, b as u16)).unwrap();
            mono.0[idx] += 1;
            sign *= m.pattern.sign(a, b).unwrap().as_i64();
        }
        // A cycle of length l carries (-1)^(l-1) besides its entry signs.
        if cycle.len() % 2 == 0 {
            sign = -sign;
        }
        cycle_terms.push(CycleTerm {
            vertex_mask: cycle.iter().fold(0u32, |acc, &v| acc | 1 << v),
            len: cycle.len(),
            mono,
            coeff: field.embed(sign),
        });
    }

    let mut coeffs: Vec<Polynomial> = (0..n).map(|_| Polynomial::zero(&m.ring, field)).collect();
    // Depth-first over sets of pairwise disjoint cycles.
    struct Walker<'a> {
        terms: &'a [CycleTerm],
        field: Field,
        out: &'a mut [Polynomial],
    }
    impl Walker<'_> {
        fn descend(&mut self, from: usize, used: u32, len: usize, mono: &Monomial, coeff: &Scalar) {
            let n = self.out.len();
            let terms = self.terms;
            for (k, t) in terms.iter().enumerate().skip(from) {
                if t.vertex_mask & used != 0 || len + t.len > n {
                    continue;
                }
                let mono = mono.mul(&t.mono);
                let coeff = self.field.mul(coeff, &t.coeff);
                self.out[len + t.len - 1].add_term(mono.clone(), coeff.clone());
                self.descend(k + 1, used | t.vertex_mask, len + t.len, &mono, &coeff);
            }
        }
    }
    let unit = Monomial::unit(m.ring.len());
    Walker { terms: &cycle_terms, field, out: &mut coeffs }.descend(0, 0, 0, &unit, &field.one());
    Ok(coeffs)
}

fn char_by_determinant(m: &SymbolicMatrix) -> Result<Vec<Polynomial>, Error> {
    let n = m.pattern.order();
    if n > crate::pattern::MAX_COMBINATORIAL_ORDER {
        return Err(Error::OrderTooLarge(n, crate::pattern::MAX_COMBINATORIAL_ORDER));
    }
    let field = m.field;
    // det(xI - M) as a polynomial in x whose coefficients are polynomials
    // in the entries; index k holds the coefficient of x^k.
    let zero_x: Vec<Polynomial> = vec![Polynomial::zero(&m.ring, field); n + 1];
    let mut det = zero_x.clone();
    for perm in (1..=n).permutations(n) {
        // Permutation sign from the inversion count.
        let inversions = (0..n)
            .flat_map(|a| ((a + 1)..n).map(move |b| (a, b)))
            .filter(|&(a, b)| perm[a] > perm[b])
            .count();
        // Product over rows of (xI - M)[i, perm[i]], a polynomial in x of
        // degree <= 1 per factor.
        let mut prod: Vec<Polynomial> = zero_x.clone();
        prod[0] = Polynomial::one(&m.ring, field);
        let mut degree = 0usize;
        let mut vanished = false;
        for i in 1..=n {
            let j = perm[i - 1];
            let entry = m.entry(i, j);
            if i == j {
                // Multiply by (x - m_ii).
                let mut next = zero_x.clone();
                for (k, c) in prod.iter().enumerate().take(degree + 1) {
                    next[k + 1] = next[k + 1].add(c).unwrap();
                    next[k] = next[k].sub(&c.mul(&entry).unwrap()).unwrap();
                }
                prod = next;
                degree += 1;
            } else if entry.is_zero() {
                vanished = true;
                break;
            } else {
                // Multiply by the constant -m_ij.
                let factor = entry.neg();
                for c in prod.iter_mut().take(degree + 1) {
                    *c = c.mul(&factor).unwrap();
                }
            }
        }
        if vanished {
            continue;
        }
        for k in 0..=n {
            det[k] = if inversions % 2 == 0 {
                det[k].add(&prod[k]).unwrap()
            } else {
                det[k].sub(&prod[k]).unwrap()
            };
        }
    }
    // F_i = (-1)^i * (coefficient of x^(n-i)).
    let minus_one = field.embed(-1);
    Ok((1..=n)
        .map(|i| {
            let c = &det[n - i];
            if i % 2 == 0 {
                c.clone()
            } else {
                c.scale(&minus_one)
            }
        })
        .collect())
}

/// The pattern ideal `(F_1, ..., F_n)` with its symbolic matrix and the
/// full coefficient list (zero coefficients included in the list, dropped
/// from the ideal's generators).
#[derive(Debug, Clone)]
pub struct PatternIdeal {
    pub matrix: SymbolicMatrix,
    pub coefficients: Vec<Polynomial>,
    pub ideal: Ideal,
}

pub fn pattern_ideal(pattern: &Pattern, field: Field) -> Result<PatternIdeal, Error> {
    let matrix = SymbolicMatrix::new(pattern, field);
    let coefficients = char_coefficients(&matrix, CharMethod::Cycles)?;
    let ideal = Ideal::new(matrix.ring(), field, coefficients.clone())?;
    Ok(PatternIdeal { matrix, coefficients, ideal })
}

/// A realization candidate: values for the variables `z[i,j]`, keyed by
/// position.  For sign patterns these are the magnitudes the signs
/// multiply, i.e. entry `(i,j)` of the realized matrix is `sign * value`.
pub type Assignment = BTreeMap<(usize, usize), Scalar>;

/// Decides whether the assignment realizes the pattern nilpotently: all
/// `F_i` vanish at it.  The verdict is cross-checked against the matrix
/// power `M^n = 0`, which must agree.
pub fn check_nilpotent(pattern: &Pattern, assignment: &Assignment, field: Field) -> Result<bool, Error> {
    for (&(i, j), value) in assignment {
        if !pattern.is_star(i, j) {
            return Err(Error::NotARealization(format!(
                "value assigned to zero position ({i},{j})"
            )));
        }
        match (field, value) {
            (Field::Prime(_), Scalar::Mod(_)) | (Field::Rationals, Scalar::Rat(_)) => {}
            _ => return Err(Error::WrongField(format!("scalar {value} does not lie in {field}"))),
        }
        if value.is_zero() {
            return Err(Error::NotARealization(format!("zero value at nonzero position ({i},{j})")));
        }
    }
    for (i, j) in pattern.stars() {
        if !assignment.contains_key(&(i, j)) {
            return Err(Error::NotARealization(format!("no value for nonzero position ({i},{j})")));
        }
    }

    let pi = pattern_ideal(pattern, field)?;
    let by_var: BTreeMap<Var, Scalar> = assignment
        .iter()
        .map(|(&(i, j), v)| (Var::Entry(i as u16, j as u16), v.clone()))
        .collect();
    let coefficients_vanish = pi
        .coefficients
        .iter()
        .map(|f| f.evaluate(&by_var))
        .collect::<Result<Vec<_>, _>>()?
        .iter()
        .all(Scalar::is_zero);

    // Independent witness: the realized matrix, raised to the order.
    let n = pattern.order();
    let realized: Vec<Vec<Scalar>> = (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| match pattern.sign(i, j) {
                    None => field.zero(),
                    Some(s) => field.mul(&field.embed(s.as_i64()), &assignment[&(i, j)]),
                })
                .collect()
        })
        .collect();
    let power_is_zero = matrix_power_is_zero(&realized, n, field);
    assert_eq!(
        coefficients_vanish, power_is_zero,
        "characteristic coefficients and matrix power disagree"
    );
    Ok(coefficients_vanish)
}

/// [`check_nilpotent`] for a matrix of integers: entries must be nonzero in
/// the field exactly on the pattern's nonzero positions.
pub fn check_nilpotent_matrix(pattern: &Pattern, rows: &[Vec<i64>], field: Field) -> Result<bool, Error> {
    let n = pattern.order();
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::NotARealization(format!("matrix is not {n}x{n}")));
    }
    let mut assignment = Assignment::new();
    for (i, row) in rows.iter().enumerate() {
        for (j, &value) in row.iter().enumerate() {
            let (i, j) = (i + 1, j + 1);
            let embedded = field.embed(value);
            match pattern.sign(i, j) {
                None => {
                    if !embedded.is_zero() {
                        return Err(Error::NotARealization(format!(
                            "nonzero entry at zero position ({i},{j})"
                        )));
                    }
                }
                Some(s) => {
                    // value = sign * z, so z = sign * value (signs square to 1).
                    let z = field.mul(&field.embed(s.as_i64()), &embedded);
                    if z.is_zero() {
                        return Err(Error::NotARealization(format!(
                            "entry at nonzero position ({i},{j}) vanishes in {field}"
                        )));
                    }
                    assignment.insert((i, j), z);
                }
            }
        }
    }
    check_nilpotent(pattern, &assignment, field)
}

fn matrix_power_is_zero(m: &[Vec<Scalar>], n: usize, field: Field) -> bool {
    let mul = |a: &Vec<Vec<Scalar>>, b: &[Vec<Scalar>]| -> Vec<Vec<Scalar>> {
        (0..a.len())
            .map(|i| {
                (0..a.len())
                    .map(|j| {
                        let mut acc = field.zero();
                        for k in 0..a.len() {
                            acc = field.add(&acc, &field.mul(&a[i][k], &b[k][j]));
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    };
    let mut acc: Vec<Vec<Scalar>> = m.to_vec();
    for _ in 1..n {
        acc = mul(&acc, m);
    }
    acc.iter().flatten().all(Scalar::is_zero)
}
