//! The decision pipeline for potential nilpotence.
//!
//! Over a prime field the pipeline is complete: a pattern is decomposed
//! into its strongly connected components (it is potentially nilpotent
//! exactly when every component is), and each component passes through
//!
//! 1. structural filters — field-independent proofs that some
//!    characteristic coefficient is a monomial and hence cannot vanish;
//! 2. `Z_2` counting filters — parity of the loop count forces `F_1 ≠ 0`,
//!    and two loops with two 2-cycles force `F_2 ≠ 0`;
//! 3. a roots-of-unity filter — `m` loops with no short cycles force the
//!    diagonal values to be `m`-th roots of unity, which must exist;
//! 4. a saturation certificate — `1 ∈ I_A : (m_A)^∞` proves the vanishing
//!    set avoids the torus over every extension field;
//! 5. exhaustive search over assignments, reduced by diagonal similarity —
//!    a found realization proves potential nilpotence, exhaustion refutes
//!    it for this specific prime.
//!
//! Over the rationals only the negative directions run (structural filters
//! and saturation); a pattern they do not refute stays `Unknown`.

use crate::charpoly::{
    char_coefficients, check_nilpotent_matrix, pattern_ideal, Assignment, CharMethod,
    SymbolicMatrix,
};
use crate::error::Error;
use crate::field::{Field, Scalar};
use crate::groebner::{buchberger_with, contains_one_with, GbOptions, Ideal};
use crate::pattern::Pattern;
use crate::poly::{MonomialOrder, Polynomial, Ring, Var};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::time::Instant;

/// The analysis outcome for one pattern over one coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    PotentiallyNilpotent,
    NotPotentiallyNilpotent,
    Unknown,
}

/// A verifiable witness for a definite verdict.
///
/// Negative certificates produced by [`decide_pn`] refer to one strongly
/// connected component: `component` lists its vertices in the labels of
/// the analyzed pattern, and any variables named in the payload (such as
/// the monomial of a `single_diagonal` certificate) use the component's
/// own labels `1..=k`, assigned to the listed vertices in ascending
/// order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "snake_case")]
pub enum Certificate {
    /// An explicit nilpotent matrix respecting the pattern, entries as
    /// canonical residues.
    Realization { matrix: Vec<Vec<i64>> },
    /// Exactly one loop: `F_1` is the recorded monomial and cannot vanish
    /// at a point with no zero coordinate, over any field.
    SingleDiagonal { component: Vec<usize>, monomial: String },
    /// Exactly one transversal: `F_n` is the recorded monomial.
    SingleTransversal { component: Vec<usize>, monomial: String },
    /// `loops ≥ 2` loops and no cycle of any length in the recorded
    /// inclusive range, making `F_loops` the product of the loop
    /// variables — a monomial, over any field.
    NoSmallCycles {
        component: Vec<usize>,
        loops: usize,
        absent_cycle_lengths: (usize, usize),
    },
    /// `loops ≥ 2` loops, no cycles of lengths `2..=loops-1`, and the
    /// recorded polynomial does not split over `Z_p`: the diagonal values
    /// of a nilpotent realization would have to be `loops`-th roots of
    /// unity, which `Z_p` lacks.
    RootsOfUnityMissing {
        component: Vec<usize>,
        loops: usize,
        polynomial: String,
        prime: u64,
    },
    /// Over `Z_2` every variable is 1, so `F_1` equals the loop count,
    /// which is odd.
    Z2Parity { component: Vec<usize>, loops: usize },
    /// Over `Z_2`, `F_2` = (disjoint loop pairs) + (2-cycles) = 1 + 2 = 1.
    #[serde(rename = "z2_two_loops_two_2cycles")]
    Z2TwoLoopsTwo2Cycles {
        component: Vec<usize>,
        loops: usize,
        two_cycles: usize,
    },
    /// `1 ∈ I_A : (m_A)^∞`: every common zero of the coefficients has a
    /// zero coordinate, over this field and every extension of it.
    /// `unit_in_colon` records the cheaper sub-witness `1 ∈ I_A : (m_A)`
    /// (equivalently `m_A ∈ I_A`); `None` means it was not determined
    /// within budget.
    SaturationUnit {
        component: Vec<usize>,
        unit_in_colon: Option<bool>,
        over_any_extension: bool,
    },
    /// Exhaustive enumeration (up to diagonal similarity) of the recorded
    /// number of assignments found no nilpotent realization.  Valid only
    /// for the specific prime.
    ExhaustedSearch { component: Vec<usize>, space: u64 },
}

/// Wall-clock time attributed to one pipeline stage.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stage {
    pub name: String,
    pub micros: u64,
}

/// The full result of an analysis: status, witness, field, and timings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub certificate: Option<Certificate>,
    pub field: Field,
    pub stages: Vec<Stage>,
}

impl Verdict {
    /// The realization matrix when the verdict is positive.
    pub fn realization(&self) -> Option<&Vec<Vec<i64>>> {
        match &self.certificate {
            Some(Certificate::Realization { matrix }) => Some(matrix),
            _ => None,
        }
    }
}

/// Resource limits for the pipeline.  Overruns surface as `Unknown`
/// verdicts (in [`decide_pn`]) or as [`Error::SearchBudgetExceeded`] /
/// [`Error::ResourceLimit`] from the individual operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum assignments one exhaustive search may evaluate.
    pub search_assignments: u128,
    /// S-pair reduction budget for explicitly requested Gröbner runs.
    pub gb_reductions: usize,
    /// S-pair reduction budget for the saturation stage inside the
    /// decision pipeline, kept smaller so a stubborn ideal falls through
    /// to search instead of stalling.
    pub certificate_reductions: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            search_assignments: 100_000_000,
            gb_reductions: crate::groebner::DEFAULT_REDUCTION_BUDGET,
            certificate_reductions: 25_000,
        }
    }
}

impl Budget {
    /// The default budget with a different search-assignment cap.
    pub fn with_search_assignments(assignments: u128) -> Budget {
        Budget { search_assignments: assignments, ..Budget::default() }
    }
}

/// True when `x^m − 1` factors into `m` linear factors (with
/// multiplicity) over `Z_p`: writing `m = p^a · m'` with `p ∤ m'`, this
/// holds exactly when `m'` divides `p − 1`.
pub fn roots_of_unity_split(m: u64, p: u64) -> Result<bool, Error> {
    Field::prime(p)?;
    if m == 0 {
        return Err(Error::OrderTooSmall(0, 1));
    }
    let mut reduced = m;
    while reduced.is_multiple_of(p) {
        reduced /= p;
    }
    Ok((p - 1).is_multiple_of(reduced))
}

/// All roots of `x^m − 1` over `Z_p` with multiplicity, ascending.
/// Requires that the polynomial splits.  Since `x^m − 1 = (x^{m'} − 1)^{p^a}`,
/// the roots are the `m'`-th roots of unity, each `p^a` times; the group of
/// `m'`-th roots is swept out by `x^{(p−1)/m'}` as `x` ranges over `Z_p^*`.
fn unity_roots(m: u64, p: u64) -> Vec<u64> {
    let field = Field::prime(p).expect("caller validated the prime");
    let mut reduced = m;
    let mut multiplicity = 1u64;
    while reduced.is_multiple_of(p) {
        reduced /= p;
        multiplicity *= p;
    }
    debug_assert_eq!((p - 1) % reduced, 0, "caller checked splitting");
    let exponent = (p - 1) / reduced;
    let mut roots: BTreeSet<u64> = BTreeSet::new();
    let mut x = 1u64;
    while (roots.len() as u64) < reduced {
        let y = field.pow(&Scalar::Mod(x % p), exponent);
        let mut acc = y.clone();
        loop {
            let Scalar::Mod(v) = acc else { unreachable!() };
            if !roots.insert(v) {
                break;
            }
            acc = field.mul(&Scalar::Mod(v), &y);
        }
        x += 1;
    }
    roots
        .into_iter()
        .flat_map(|r| std::iter::repeat_n(r, multiplicity as usize))
        .collect()
}

/// Field-independent non-existence proofs from the digraph alone: a
/// characteristic coefficient that is a single monomial can never vanish
/// on an assignment with all coordinates nonzero.  Rules run cheapest
/// first: loop count, then cycle enumeration, then the factorial-cost
/// transversal count.
pub fn filter_structural(pattern: &Pattern) -> Result<Option<Certificate>, Error> {
    let component: Vec<usize> = (1..=pattern.order()).collect();
    let loops = pattern.loops();
    if loops.len() == 1 {
        let l = loops[0];
        return Ok(Some(Certificate::SingleDiagonal {
            component,
            monomial: Var::Entry(l as u16, l as u16).to_string(),
        }));
    }
    let m = loops.len();
    if m >= 2 {
        let mut no_small = true;
        for k in 2..=m {
            if !pattern.simple_cycles(k)?.is_empty() {
                no_small = false;
                break;
            }
        }
        if no_small {
            return Ok(Some(Certificate::NoSmallCycles {
                component,
                loops: m,
                absent_cycle_lengths: (2, m),
            }));
        }
    }
    let transversals = pattern.transversals()?;
    if transversals.len() == 1 {
        let monomial = transversals[0]
            .iter()
            .enumerate()
            .map(|(i, &j)| Var::Entry(i as u16 + 1, j as u16).to_string())
            .collect::<Vec<_>>()
            .join("*");
        return Ok(Some(Certificate::SingleTransversal { component, monomial }));
    }
    Ok(None)
}

/// The `Z_2` counting filters.  Over `Z_2` the only nonzero value is 1,
/// so `F_1` equals the loop count and `F_2` equals (number of disjoint
/// loop pairs) + (number of 2-cycles), both mod 2.
pub fn filter_z2(pattern: &Pattern, field: Field) -> Result<Option<Certificate>, Error> {
    if field != Field::Prime(2) {
        return Err(Error::WrongField(format!(
            "parity filters are valid only over Z_2, not {field}"
        )));
    }
    let component: Vec<usize> = (1..=pattern.order()).collect();
    let loops = pattern.loops().len();
    if loops % 2 == 1 {
        return Ok(Some(Certificate::Z2Parity { component, loops }));
    }
    let two_cycles = pattern.simple_cycles(2)?.len();
    if loops == 2 && two_cycles == 2 {
        return Ok(Some(Certificate::Z2TwoLoopsTwo2Cycles { component, loops, two_cycles }));
    }
    Ok(None)
}

/// With `m ≥ 2` loops and no cycles of lengths `2..=m−1`, the
/// coefficients `F_1 … F_{m−1}` are the elementary symmetric polynomials
/// of the loop variables; their vanishing forces the loop values to be
/// the `m`-th roots of a constant, scalings of the `m`-th roots of unity.
/// When `x^m − 1` does not split over `Z_p`, those roots are missing and
/// the pattern is not potentially nilpotent over `Z_p`.
pub fn filter_no_small_cycles(pattern: &Pattern, p: u64) -> Result<Option<Certificate>, Error> {
    Field::prime(p)?;
    let m = pattern.loops().len();
    if m < 2 {
        return Ok(None);
    }
    for k in 2..m {
        if !pattern.simple_cycles(k)?.is_empty() {
            return Ok(None);
        }
    }
    if roots_of_unity_split(m as u64, p)? {
        return Ok(None);
    }
    Ok(Some(Certificate::RootsOfUnityMissing {
        component: (1..=pattern.order()).collect(),
        loops: m,
        polynomial: format!("x^{m} - 1"),
        prime: p,
    }))
}

/// How many powers of `m_A` to test for membership in `I_A` before
/// falling back to the single-extra-variable unit test.
const SATURATION_POWER_PROBES: u32 = 4;

/// The ideal-theoretic non-existence certificate: decides whether
/// `1 ∈ I_A : (m_A)^∞`, i.e. whether some power of the product of all
/// variables lies in the pattern ideal.  A positive answer proves the
/// pattern not potentially nilpotent over the coefficient field and every
/// extension of it.
pub fn saturation_certificate(pattern: &Pattern, field: Field) -> Result<Option<Certificate>, Error> {
    saturation_certificate_with(pattern, field, &GbOptions::default())
}

pub fn saturation_certificate_with(
    pattern: &Pattern,
    field: Field,
    opts: &GbOptions,
) -> Result<Option<Certificate>, Error> {
    let pi = pattern_ideal(pattern, field)?;
    if pi.ideal.is_zero() {
        return Ok(None);
    }
    let m = pi.matrix.all_vars_product();
    let component: Vec<usize> = (1..=pattern.order()).collect();

    // Power probes: m^k ∈ I_A directly certifies 1 ∈ I_A : (m_A)^∞ and
    // settles the colon sub-witness exactly at k = 1.
    let mut unit_in_colon = None;
    match buchberger_with(&pi.ideal, MonomialOrder::GrevLex, opts) {
        Ok(gb) => {
            let mut power = m.clone();
            for k in 1..=SATURATION_POWER_PROBES {
                let in_ideal = gb.normal_form(&power).is_zero();
                if k == 1 {
                    unit_in_colon = Some(in_ideal);
                }
                if in_ideal {
                    return Ok(Some(Certificate::SaturationUnit {
                        component,
                        unit_in_colon,
                        over_any_extension: true,
                    }));
                }
                power = power.mul(&m)?;
            }
        }
        // The base ideal's basis did not finish within budget; the unit
        // test below can still succeed on its own (it exits early), so
        // only the colon sub-witness stays undetermined.
        Err(Error::ResourceLimit(_)) => {}
        Err(e) => return Err(e),
    }

    // Complete unit test: 1 ∈ I_A : (m_A)^∞ iff 1 ∈ I_A + (y·m_A − 1)
    // with one extra variable y.  This holds over any coefficient field:
    // from 1 = Σ a_i g_i + b·(y·m_A − 1), substituting y = 1/m_A in the
    // localization and clearing denominators puts a power of m_A in I_A;
    // conversely m_A^N ∈ I_A gives 1 = y^N·m_A^N − (y·m_A − 1)·Σ y^k m_A^k.
    let extended_ring = pi.matrix.ring().with_aux_prepended();
    let aux = *extended_ring.vars().first().expect("aux variable present");
    let mut gens: Vec<Polynomial> =
        pi.ideal.gens().iter().map(|g| g.lift_to(&extended_ring)).collect();
    let y_m = Polynomial::var(&extended_ring, field, aux).mul(&m.lift_to(&extended_ring))?;
    gens.push(y_m.sub(&Polynomial::one(&extended_ring, field))?);
    let extended = Ideal::new(&extended_ring, field, gens)?;
    if contains_one_with(&extended, opts)? {
        Ok(Some(Certificate::SaturationUnit { component, unit_in_colon, over_any_extension: true }))
    } else {
        Ok(None)
    }
}

/// One characteristic coefficient flattened for fast repeated evaluation:
/// `(coefficient residue, [(variable index, exponent)])` per term.
struct CompiledPoly {
    terms: Vec<(u64, Vec<(u32, u32)>)>,
}

fn compile(f: &Polynomial) -> CompiledPoly {
    let terms = f
        .terms()
        .map(|(mono, coeff)| {
            let Scalar::Mod(c) = coeff else {
                panic!("search compiles prime-field polynomials only")
            };
            let factors = mono
                .0
                .iter()
                .enumerate()
                .filter(|&(_, &e)| e > 0)
                .map(|(k, &e)| (k as u32, e as u32))
                .collect();
            (*c, factors)
        })
        .collect();
    CompiledPoly { terms }
}

#[inline(always)]
fn mulmod<const WIDE: bool>(a: u64, b: u64, p: u64) -> u64 {
    if WIDE {
        ((a as u128 * b as u128) % p as u128) as u64
    } else {
        a * b % p
    }
}

#[inline(always)]
fn eval<const WIDE: bool>(c: &CompiledPoly, vals: &[u64], p: u64) -> u64 {
    let mut sum = 0u64;
    for (coeff, factors) in &c.terms {
        let mut t = *coeff;
        for &(v, e) in factors {
            let x = vals[v as usize];
            for _ in 0..e {
                t = mulmod::<WIDE>(t, x, p);
            }
        }
        sum = if WIDE {
            ((sum as u128 + t as u128) % p as u128) as u64
        } else {
            (sum + t) % p
        };
    }
    sum
}

/// Scans all assignments of `rest` (each over `1..p`, last index moving
/// fastest, starting from all-1) and returns the first all-coefficients-
/// vanishing value vector.
fn scan<const WIDE: bool>(
    polys: &[CompiledPoly],
    vals: &mut [u64],
    rest: &[usize],
    p: u64,
) -> Option<Vec<u64>> {
    for &idx in rest {
        vals[idx] = 1;
    }
    loop {
        if polys.iter().all(|c| eval::<WIDE>(c, vals, p) == 0) {
            return Some(vals.to_vec());
        }
        let mut k = rest.len();
        loop {
            if k == 0 {
                return None;
            }
            k -= 1;
            let idx = rest[k];
            if vals[idx] + 1 < p {
                vals[idx] += 1;
                break;
            }
            vals[idx] = 1;
        }
    }
}

/// Marks one variable per spanning-forest edge of the undirected graph on
/// off-diagonal stars.  Fixing those variables to 1 is lossless: for any
/// realization there is a diagonal similarity `D·M·D^{-1}` — which
/// preserves the pattern, nilpotence, and nonzeroness — normalizing them,
/// by solving for the `d_i` ratios along each tree.
fn normalization_fixed(pattern: &Pattern, ring: &Ring) -> Vec<bool> {
    let n = pattern.order();
    let mut parent: Vec<usize> = (0..=n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut fixed = vec![false; ring.len()];
    for i in 1..=n {
        for j in (i + 1)..=n {
            if !pattern.is_star(i, j) && !pattern.is_star(j, i) {
                continue;
            }
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a == b {
                continue;
            }
            parent[a] = b;
            let (r, c) = if pattern.is_star(i, j) { (i, j) } else { (j, i) };
            fixed[ring.index_of(Var::Entry(r as u16, c as u16)).unwrap()] = true;
        }
    }
    fixed
}

fn search_raw(
    pattern: &Pattern,
    p: u64,
    budget: u128,
    normalize: bool,
) -> Result<(Option<Assignment>, u128), Error> {
    let field = Field::prime(p)?;
    let sym = SymbolicMatrix::new(pattern, field);
    let coeffs = char_coefficients(&sym, CharMethod::Cycles)?;
    let ring = sym.ring().clone();
    let fixed = if normalize {
        normalization_fixed(pattern, &ring)
    } else {
        vec![false; ring.len()]
    };
    let free: Vec<usize> = (0..ring.len()).filter(|&k| !fixed[k]).collect();
    let space = (p as u128 - 1)
        .checked_pow(free.len() as u32)
        .unwrap_or(u128::MAX);
    if space > budget {
        return Err(Error::SearchBudgetExceeded { space, budget });
    }
    let mut polys: Vec<CompiledPoly> =
        coeffs.iter().filter(|f| !f.is_zero()).map(compile).collect();
    polys.sort_by_key(|c| c.terms.len());
    let wide = p >= 1 << 32;
    let found: Option<Vec<u64>> = match free.split_first() {
        None => {
            let vals = vec![1u64; ring.len()];
            let ok = if wide {
                polys.iter().all(|c| eval::<true>(c, &vals, p) == 0)
            } else {
                polys.iter().all(|c| eval::<false>(c, &vals, p) == 0)
            };
            ok.then_some(vals)
        }
        Some((&first, rest)) => (1..p).into_par_iter().find_map_first(|v0| {
            let mut vals = vec![1u64; ring.len()];
            vals[first] = v0;
            if wide {
                scan::<true>(&polys, &mut vals, rest, p)
            } else {
                scan::<false>(&polys, &mut vals, rest, p)
            }
        }),
    };
    let assignment = found.map(|vals| {
        ring.vars()
            .iter()
            .enumerate()
            .map(|(k, v)| match v {
                Var::Entry(i, j) => ((*i as usize, *j as usize), Scalar::Mod(vals[k])),
                Var::Aux(_) => unreachable!("pattern rings have no auxiliary variables"),
            })
            .collect()
    });
    Ok((assignment, space))
}

/// Exhaustive search for a nilpotent realization over `Z_p`, up to
/// diagonal similarity.  `Some` is a found assignment (least in
/// enumeration order, independent of worker count); `None` proves no
/// realization exists over `Z_p`.
pub fn brute_force_search(
    pattern: &Pattern,
    p: u64,
    budget: u128,
) -> Result<Option<Assignment>, Error> {
    Ok(search_raw(pattern, p, budget, true)?.0)
}

/// The reference oracle for [`brute_force_search`]: the same enumeration
/// without the diagonal-similarity normalization.
pub fn brute_force_search_full(
    pattern: &Pattern,
    p: u64,
    budget: u128,
) -> Result<Option<Assignment>, Error> {
    Ok(search_raw(pattern, p, budget, false)?.0)
}

/// The explicit nilpotent realization of [`Pattern::cycle_with_loops`]:
/// diagonal = the roots of `x^n − 1` (one copy of 1 placed last, repeated
/// with multiplicity when `p | n`), superdiagonal 1s, corner `−1`.
/// `None` exactly when `x^n − 1` does not split over `Z_p`.
pub fn cycle_family_realization(n: usize, p: u64) -> Result<Option<Vec<Vec<i64>>>, Error> {
    Field::prime(p)?;
    if n < 3 {
        return Err(Error::OrderTooSmall(n, 3));
    }
    if !roots_of_unity_split(n as u64, p)? {
        return Ok(None);
    }
    let mut roots = unity_roots(n as u64, p);
    let one = roots.iter().position(|&r| r == 1).expect("1 is always a root");
    roots.remove(one);
    roots.push(1);
    let mut matrix = vec![vec![0i64; n]; n];
    for (i, &r) in roots.iter().enumerate() {
        matrix[i][i] = r as i64;
    }
    for i in 0..n - 1 {
        matrix[i][i + 1] = 1;
    }
    matrix[n - 1][0] = (p - 1) as i64;
    Ok(Some(matrix))
}

/// Accumulates wall-clock time per stage name, preserving first-seen
/// order.
struct StageClock {
    stages: Vec<Stage>,
}

impl StageClock {
    fn new() -> StageClock {
        StageClock { stages: Vec::new() }
    }

    fn record(&mut self, name: &str, micros: u64) {
        match self.stages.iter_mut().find(|s| s.name == name) {
            Some(s) => s.micros += micros,
            None => self.stages.push(Stage { name: name.to_string(), micros }),
        }
    }

    fn time<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.record(name, start.elapsed().as_micros() as u64);
        out
    }
}

enum ComponentOutcome {
    Realized(Assignment),
    NotPn(Certificate),
    Unknown,
}

/// Decides potential nilpotence over `Z_p` with the default budget.
pub fn decide_pn(pattern: &Pattern, p: u64) -> Result<Verdict, Error> {
    decide_pn_with(pattern, p, &Budget::default())
}

pub fn decide_pn_with(pattern: &Pattern, p: u64, budget: &Budget) -> Result<Verdict, Error> {
    let field = Field::prime(p)?;
    let mut clock = StageClock::new();
    let components = clock.time("components", || pattern.strongly_connected_components());
    let mut realized: Vec<(Vec<usize>, Assignment)> = Vec::new();
    let mut any_unknown = false;
    for comp in &components {
        let vertices: Vec<usize> = comp.iter().copied().collect();
        let sub = pattern.induced(comp);
        match decide_component(&sub, field, p, budget, &mut clock)? {
            ComponentOutcome::NotPn(cert) => {
                return Ok(Verdict {
                    status: Status::NotPotentiallyNilpotent,
                    certificate: Some(relabel_certificate(cert, &vertices)),
                    field,
                    stages: clock.stages,
                });
            }
            ComponentOutcome::Realized(assignment) => realized.push((vertices, assignment)),
            ComponentOutcome::Unknown => any_unknown = true,
        }
    }
    if any_unknown {
        return Ok(Verdict {
            status: Status::Unknown,
            certificate: None,
            field,
            stages: clock.stages,
        });
    }
    let matrix = clock.time("assemble", || {
        combine_realizations(pattern, field, &realized)
    })?;
    Ok(Verdict {
        status: Status::PotentiallyNilpotent,
        certificate: Some(Certificate::Realization { matrix }),
        field,
        stages: clock.stages,
    })
}

fn decide_component(
    sub: &Pattern,
    field: Field,
    p: u64,
    budget: &Budget,
    clock: &mut StageClock,
) -> Result<ComponentOutcome, Error> {
    if let Some(cert) = clock.time("structural_filter", || filter_structural(sub))? {
        return Ok(ComponentOutcome::NotPn(cert));
    }
    if p == 2 {
        if let Some(cert) = clock.time("z2_filter", || filter_z2(sub, field))? {
            return Ok(ComponentOutcome::NotPn(cert));
        }
    }
    if let Some(cert) = clock.time("roots_of_unity_filter", || filter_no_small_cycles(sub, p))? {
        return Ok(ComponentOutcome::NotPn(cert));
    }
    let start = Instant::now();
    let saturation = saturation_certificate_with(
        sub,
        field,
        &GbOptions::with_budget(budget.certificate_reductions),
    );
    match saturation {
        Ok(found) => {
            clock.record("saturation", start.elapsed().as_micros() as u64);
            if let Some(cert) = found {
                return Ok(ComponentOutcome::NotPn(cert));
            }
        }
        // A stalled basis is not an answer; search still decides.
        Err(Error::ResourceLimit(_)) => {
            clock.record("saturation (budget exceeded)", start.elapsed().as_micros() as u64);
        }
        Err(e) => return Err(e),
    }
    let start = Instant::now();
    match search_raw(sub, p, budget.search_assignments, true) {
        Ok((Some(assignment), _)) => {
            clock.record("search", start.elapsed().as_micros() as u64);
            Ok(ComponentOutcome::Realized(assignment))
        }
        Ok((None, space)) => {
            clock.record("search", start.elapsed().as_micros() as u64);
            Ok(ComponentOutcome::NotPn(Certificate::ExhaustedSearch {
                component: (1..=sub.order()).collect(),
                space: space.min(u64::MAX as u128) as u64,
            }))
        }
        Err(Error::SearchBudgetExceeded { .. }) => {
            clock.record("search (budget exceeded)", start.elapsed().as_micros() as u64);
            Ok(ComponentOutcome::Unknown)
        }
        Err(e) => Err(e),
    }
}

/// Rewrites a component certificate's vertex list from the component's
/// own labels to the labels of the analyzed pattern.
fn relabel_certificate(cert: Certificate, vertices: &[usize]) -> Certificate {
    let map = |component: Vec<usize>| -> Vec<usize> {
        component.iter().map(|&v| vertices[v - 1]).collect()
    };
    match cert {
        Certificate::Realization { .. } => cert,
        Certificate::SingleDiagonal { component, monomial } => {
            Certificate::SingleDiagonal { component: map(component), monomial }
        }
        Certificate::SingleTransversal { component, monomial } => {
            Certificate::SingleTransversal { component: map(component), monomial }
        }
        Certificate::NoSmallCycles { component, loops, absent_cycle_lengths } => {
            Certificate::NoSmallCycles { component: map(component), loops, absent_cycle_lengths }
        }
        Certificate::RootsOfUnityMissing { component, loops, polynomial, prime } => {
            Certificate::RootsOfUnityMissing { component: map(component), loops, polynomial, prime }
        }
        Certificate::Z2Parity { component, loops } => {
            Certificate::Z2Parity { component: map(component), loops }
        }
        Certificate::Z2TwoLoopsTwo2Cycles { component, loops, two_cycles } => {
            Certificate::Z2TwoLoopsTwo2Cycles { component: map(component), loops, two_cycles }
        }
        Certificate::SaturationUnit { component, unit_in_colon, over_any_extension } => {
            Certificate::SaturationUnit { component: map(component), unit_in_colon, over_any_extension }
        }
        Certificate::ExhaustedSearch { component, space } => {
            Certificate::ExhaustedSearch { component: map(component), space }
        }
    }
}

/// Assembles the global realization: each component's found values on its
/// own block, 1 (times the sign) at every star joining two different
/// components.  Cross-component entries never lie on a cycle, so they do
/// not enter any characteristic coefficient; each diagonal block
/// contributes `x^{n_i}`, making the whole matrix nilpotent.  The result
/// is re-verified before being returned.
fn combine_realizations(
    pattern: &Pattern,
    field: Field,
    realized: &[(Vec<usize>, Assignment)],
) -> Result<Vec<Vec<i64>>, Error> {
    let n = pattern.order();
    let mut block_of = vec![usize::MAX; n + 1];
    for (b, (vertices, _)) in realized.iter().enumerate() {
        for &v in vertices {
            block_of[v] = b;
        }
    }
    let mut matrix = vec![vec![0i64; n]; n];
    for (i, j) in pattern.stars() {
        let sign = field.embed(pattern.sign(i, j).unwrap().as_i64());
        let z = if block_of[i] == block_of[j] {
            let (vertices, assignment) = &realized[block_of[i]];
            let local = |v: usize| vertices.iter().position(|&w| w == v).unwrap() + 1;
            assignment[&(local(i), local(j))].clone()
        } else {
            field.one()
        };
        let Scalar::Mod(value) = field.mul(&sign, &z) else { unreachable!() };
        matrix[i - 1][j - 1] = value as i64;
    }
    assert!(
        check_nilpotent_matrix(pattern, &matrix, field)?,
        "assembled realization failed verification"
    );
    Ok(matrix)
}

/// The negative-only analysis over the rationals: structural filters and
/// the saturation certificate.  A pattern neither refutes is `Unknown` —
/// deciding potential nilpotence positively over an infinite field is out
/// of scope.
pub fn analyze_rationals(pattern: &Pattern) -> Result<Verdict, Error> {
    analyze_rationals_with(pattern, &Budget::default())
}

pub fn analyze_rationals_with(pattern: &Pattern, budget: &Budget) -> Result<Verdict, Error> {
    let field = Field::rationals();
    let mut clock = StageClock::new();
    let components = clock.time("components", || pattern.strongly_connected_components());
    for comp in &components {
        let vertices: Vec<usize> = comp.iter().copied().collect();
        let sub = pattern.induced(comp);
        if let Some(cert) = clock.time("structural_filter", || filter_structural(&sub))? {
            return Ok(Verdict {
                status: Status::NotPotentiallyNilpotent,
                certificate: Some(relabel_certificate(cert, &vertices)),
                field,
                stages: clock.stages,
            });
        }
        let start = Instant::now();
        match saturation_certificate_with(
            &sub,
            field,
            &GbOptions::with_budget(budget.gb_reductions),
        ) {
            Ok(Some(cert)) => {
                clock.record("saturation", start.elapsed().as_micros() as u64);
                return Ok(Verdict {
                    status: Status::NotPotentiallyNilpotent,
                    certificate: Some(relabel_certificate(cert, &vertices)),
                    field,
                    stages: clock.stages,
                });
            }
            Ok(None) => clock.record("saturation", start.elapsed().as_micros() as u64),
            Err(Error::ResourceLimit(_)) => {
                clock.record("saturation (budget exceeded)", start.elapsed().as_micros() as u64);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(Verdict { status: Status::Unknown, certificate: None, field, stages: clock.stages })
}
