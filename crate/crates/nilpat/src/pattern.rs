//! Zero-nonzero and sign patterns and their digraph combinatorics.
//!
//! A pattern of order `n` prescribes the set `S` of positions that must be
//! nonzero; a sign pattern additionally fixes each nonzero entry's sign.
//! The pattern *is* its digraph: vertices `1..=n`, an arc `i -> j` exactly
//! when `(i,j)` is nonzero.  Everything downstream — cycles, strong
//! connectivity, transversals — reads the pattern through that lens.
//!
//! Two patterns are equivalent when one is a simultaneous row/column
//! permutation of the other (a relabeling of the digraph).  Transposition
//! also preserves the properties studied here but is deliberately *not*
//! folded into equivalence; `transpose` is exposed separately so that
//! consistency can be checked rather than assumed.

use crate::error::Error;
use itertools::Itertools;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Largest order for the combinatorial-search operations (cycle listing,
/// transversal counts, canonical forms).
pub const MAX_COMBINATORIAL_ORDER: usize = 8;

/// Largest order for exhaustive enumeration of irreducible patterns.
pub const MAX_ENUMERATION_ORDER: usize = 4;

/// The sign attached to a nonzero position of a sign pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// A zero-nonzero pattern, optionally signed.  Positions are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pattern {
    n: usize,
    stars: BTreeSet<(usize, usize)>,
    /// `Some` exactly when the pattern came from the sign alphabet; then
    /// every star has a sign.
    signs: Option<BTreeMap<(usize, usize), Sign>>,
}

/// A simple cycle, stored with its least vertex first; a loop is `[v]`.
pub type Cycle = Vec<usize>;

impl Pattern {
    /// An unsigned pattern from its nonzero positions.
    pub fn new<I: IntoIterator<Item = (usize, usize)>>(n: usize, stars: I) -> Pattern {
        let stars: BTreeSet<(usize, usize)> = stars.into_iter().collect();
        for &(i, j) in &stars {
            assert!((1..=n).contains(&i) && (1..=n).contains(&j), "position out of range");
        }
        Pattern { n, stars, signs: None }
    }

    /// A sign pattern from signed positions.
    pub fn new_signed<I: IntoIterator<Item = ((usize, usize), Sign)>>(n: usize, entries: I) -> Pattern {
        let signs: BTreeMap<(usize, usize), Sign> = entries.into_iter().collect();
        let stars: BTreeSet<(usize, usize)> = signs.keys().copied().collect();
        for &(i, j) in &stars {
            assert!((1..=n).contains(&i) && (1..=n).contains(&j), "position out of range");
        }
        Pattern { n, stars, signs: Some(signs) }
    }

    /// Parses the text form: `n` lines of exactly `n` characters each, over
    /// the alphabet `{*, 0}` or `{+, -, 0}`.  The two alphabets must not be
    /// mixed.  A single trailing newline is accepted.
    pub fn parse(text: &str) -> Result<Pattern, Error> {
        let body = text.strip_suffix('\n').unwrap_or(text);
        if body.is_empty() {
            return Err(Error::RaggedInput("empty input".into()));
        }
        let lines: Vec<&str> = body.split('\n').collect();
        let n = lines[0].chars().count();
        if n == 0 {
            return Err(Error::RaggedInput("empty first line".into()));
        }
        if lines.len() != n {
            return Err(Error::RaggedInput(format!(
                "{} lines for a width-{n} pattern",
                lines.len()
            )));
        }
        let mut stars: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut signs: BTreeMap<(usize, usize), Sign> = BTreeMap::new();
        let mut saw_star = false;
        let mut saw_sign = false;
        for (row, line) in lines.iter().enumerate() {
            let chars: Vec<char> = line.chars().collect();
            if chars.len() != n {
                return Err(Error::RaggedInput(format!(
                    "line {} has {} characters, expected {n}",
                    row + 1,
                    chars.len()
                )));
            }
            for (col, c) in chars.iter().enumerate() {
                let pos = (row + 1, col + 1);
                match c {
                    '0' => {}
                    '*' => {
                        saw_star = true;
                        stars.insert(pos);
                    }
                    '+' => {
                        saw_sign = true;
                        stars.insert(pos);
                        signs.insert(pos, Sign::Plus);
                    }
                    '-' => {
                        saw_sign = true;
                        stars.insert(pos);
                        signs.insert(pos, Sign::Minus);
                    }
                    other => return Err(Error::BadSymbol(*other, row + 1, col + 1)),
                }
            }
        }
        if saw_star && saw_sign {
            return Err(Error::MixedAlphabet);
        }
        Ok(Pattern { n, stars, signs: saw_sign.then_some(signs) })
    }

    /// Renders back to the parsed text form (no trailing newline).
    pub fn render(&self) -> String {
        (1..=self.n)
            .map(|i| {
                (1..=self.n)
                    .map(|j| match (self.stars.contains(&(i, j)), &self.signs) {
                        (false, _) => '0',
                        (true, None) => '*',
                        (true, Some(s)) => match s[&(i, j)] {
                            Sign::Plus => '+',
                            Sign::Minus => '-',
                        },
                    })
                    .collect::<String>()
            })
            .join("\n")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// The nonzero positions, row-major.
    pub fn stars(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.stars.iter().copied()
    }

    pub fn num_stars(&self) -> usize {
        self.stars.len()
    }

    pub fn is_star(&self, i: usize, j: usize) -> bool {
        self.stars.contains(&(i, j))
    }

    pub fn is_signed(&self) -> bool {
        self.signs.is_some()
    }

    /// The sign at a nonzero position: the recorded sign for sign patterns,
    /// `+` for unsigned ones.
    pub fn sign(&self, i: usize, j: usize) -> Option<Sign> {
        if !self.is_star(i, j) {
            return None;
        }
        Some(match &self.signs {
            None => Sign::Plus,
            Some(s) => s[&(i, j)],
        })
    }

    /// The loop positions (stars on the diagonal), ascending.
    pub fn loops(&self) -> Vec<usize> {
        (1..=self.n).filter(|&i| self.is_star(i, i)).collect()
    }

    /// All simple cycles of length `k` (`k = 1` lists loops), each rotated
    /// so its least vertex comes first, sorted lexicographically.
    pub fn simple_cycles(&self, k: usize) -> Result<Vec<Cycle>, Error> {
        if self.n > MAX_COMBINATORIAL_ORDER {
            return Err(Error::OrderTooLarge(self.n, MAX_COMBINATORIAL_ORDER));
        }
        if k == 0 || k > self.n {
            return Ok(Vec::new());
        }
        let mut out: Vec<Cycle> = Vec::new();
        // Cycles whose least vertex is `start` use only vertices >= start.
        for start in 1..=self.n {
            let mut path = vec![start];
            let mut on_path = vec![false; self.n + 1];
            on_path[start] = true;
            self.cycle_dfs(start, k, &mut path, &mut on_path, &mut out);
        }
        out.sort();
        Ok(out)
    }

    fn cycle_dfs(
        &self,
        start: usize,
        k: usize,
        path: &mut Vec<usize>,
        on_path: &mut Vec<bool>,
        out: &mut Vec<Cycle>,
    ) {
        let here = *path.last().unwrap();
        if path.len() == k {
            if self.is_star(here, start) {
                out.push(path.clone());
            }
            return;
        }
        for next in (start + 1)..=self.n {
            if !on_path[next] && self.is_star(here, next) {
                path.push(next);
                on_path[next] = true;
                self.cycle_dfs(start, k, path, on_path, out);
                on_path[next] = false;
                path.pop();
            }
        }
    }

    /// All simple cycles of every length, grouped nowhere: a flat list.
    pub fn all_cycles(&self) -> Result<Vec<Cycle>, Error> {
        let mut out = Vec::new();
        for k in 1..=self.n {
            out.extend(self.simple_cycles(k)?);
        }
        Ok(out)
    }

    /// Strongly connected components, as vertex sets in a topological order
    /// of the condensation (sources first; ties broken by least vertex).
    pub fn strongly_connected_components(&self) -> Vec<BTreeSet<usize>> {
        let mut state = TarjanState::new(self.n);
        for v in 1..=self.n {
            if state.index[v].is_none() {
                state.strongconnect(v, self);
            }
        }
        let comps = state.components;
        // Components in a deterministic topological order: Kahn's algorithm
        // on the condensation, smallest least-vertex first among sources.
        let comp_of: BTreeMap<usize, usize> = comps
            .iter()
            .enumerate()
            .flat_map(|(c, set)| set.iter().map(move |&v| (v, c)))
            .collect();
        let mut indegree = vec![0usize; comps.len()];
        let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
        for &(i, j) in &self.stars {
            let (a, b) = (comp_of[&i], comp_of[&j]);
            if a != b && edges.insert((a, b)) {
                indegree[b] += 1;
            }
        }
        let mut ready: BTreeSet<(usize, usize)> = (0..comps.len())
            .filter(|&c| indegree[c] == 0)
            .map(|c| (*comps[c].iter().next().unwrap(), c))
            .collect();
        let mut order = Vec::new();
        while let Some(&(least, c)) = ready.iter().next() {
            ready.remove(&(least, c));
            order.push(comps[c].clone());
            for &(a, b) in &edges {
                if a == c {
                    indegree[b] -= 1;
                    if indegree[b] == 0 {
                        ready.insert((*comps[b].iter().next().unwrap(), b));
                    }
                }
            }
        }
        order
    }

    /// Irreducible = the digraph is strongly connected (every order-1
    /// pattern counts as irreducible).
    pub fn is_irreducible(&self) -> bool {
        let comps = self.strongly_connected_components();
        comps.len() == 1 && comps[0].len() == self.n
    }

    /// The subpattern induced on a vertex set, relabeled `1..=k` preserving
    /// the relative order of the chosen vertices.
    pub fn induced(&self, vertices: &BTreeSet<usize>) -> Pattern {
        let relabel: BTreeMap<usize, usize> =
            vertices.iter().enumerate().map(|(new, &old)| (old, new + 1)).collect();
        let stars: Vec<(usize, usize)> = self
            .stars
            .iter()
            .filter(|(i, j)| vertices.contains(i) && vertices.contains(j))
            .map(|&(i, j)| (relabel[&i], relabel[&j]))
            .collect();
        match &self.signs {
            None => Pattern::new(vertices.len(), stars),
            Some(signs) => Pattern::new_signed(
                vertices.len(),
                stars
                    .iter()
                    .zip(self.stars.iter().filter(|(i, j)| vertices.contains(i) && vertices.contains(j)))
                    .map(|(&new, old)| (new, signs[old])),
            ),
        }
    }

    /// All transversals: permutations `perm` (as the image of row `i` at
    /// index `i - 1`) whose positions all carry stars.
    pub fn transversals(&self) -> Result<Vec<Vec<usize>>, Error> {
        if self.n > MAX_COMBINATORIAL_ORDER {
            return Err(Error::OrderTooLarge(self.n, MAX_COMBINATORIAL_ORDER));
        }
        Ok((1..=self.n)
            .permutations(self.n)
            .filter(|perm| perm.iter().enumerate().all(|(i, &j)| self.is_star(i + 1, j)))
            .collect())
    }

    /// The number of transversals (the number of nonzero terms of the
    /// permanent).
    pub fn transversal_count(&self) -> Result<usize, Error> {
        Ok(self.transversals()?.len())
    }

    /// Applies a relabeling: vertex `v` of the result is vertex `perm[v-1]`
    /// of `self` (simultaneous row/column permutation).
    pub fn relabel(&self, perm: &[usize]) -> Pattern {
        debug_assert_eq!(perm.len(), self.n);
        let mut inverse = vec![0usize; self.n + 1];
        for (new_minus_1, &old) in perm.iter().enumerate() {
            inverse[old] = new_minus_1 + 1;
        }
        let stars: Vec<(usize, usize)> =
            self.stars.iter().map(|&(i, j)| (inverse[i], inverse[j])).collect();
        match &self.signs {
            None => Pattern::new(self.n, stars),
            Some(signs) => Pattern::new_signed(
                self.n,
                self.stars.iter().map(|&(i, j)| ((inverse[i], inverse[j]), signs[&(i, j)])),
            ),
        }
    }

    /// The canonical representative of the equivalence class: the
    /// relabeling with the lexicographically least star set (signs break
    /// ties for sign patterns).
    pub fn canonicalize(&self) -> Result<Pattern, Error> {
        if self.n > MAX_COMBINATORIAL_ORDER {
            return Err(Error::OrderTooLarge(self.n, MAX_COMBINATORIAL_ORDER));
        }
        Ok((1..=self.n)
            .permutations(self.n)
            .map(|perm| self.relabel(&perm))
            .min_by_key(|p| {
                (
                    p.stars.iter().copied().collect::<Vec<_>>(),
                    p.signs.as_ref().map(|s| s.iter().map(|(k, v)| (*k, *v)).collect::<Vec<_>>()),
                )
            })
            .unwrap())
    }

    /// True when the two patterns are relabelings of each other.
    pub fn equivalent(&self, other: &Pattern) -> Result<bool, Error> {
        if self.n != other.n {
            return Ok(false);
        }
        Ok(self.canonicalize()? == other.canonicalize()?)
    }

    pub fn transpose(&self) -> Pattern {
        let stars: Vec<(usize, usize)> = self.stars.iter().map(|&(i, j)| (j, i)).collect();
        match &self.signs {
            None => Pattern::new(self.n, stars),
            Some(signs) => Pattern::new_signed(
                self.n,
                self.stars.iter().map(|&(i, j)| ((j, i), signs[&(i, j)])),
            ),
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

struct TarjanState {
    index: Vec<Option<usize>>,
    lowlink: Vec<usize>,
    on_stack: Vec<bool>,
    stack: Vec<usize>,
    next_index: usize,
    components: Vec<BTreeSet<usize>>,
}

impl TarjanState {
    fn new(n: usize) -> TarjanState {
        TarjanState {
            index: vec![None; n + 1],
            lowlink: vec![0; n + 1],
            on_stack: vec![false; n + 1],
            stack: Vec::new(),
            next_index: 0,
            components: Vec::new(),
        }
    }

    fn strongconnect(&mut self, v: usize, pattern: &Pattern) {
        self.index[v] = Some(self.next_index);
        self.lowlink[v] = self.next_index;
        self.next_index += 1;
        self.stack.push(v);
        self.on_stack[v] = true;
        for w in 1..=pattern.order() {
            if !pattern.is_star(v, w) {
                continue;
            }
            if self.index[w].is_none() {
                self.strongconnect(w, pattern);
                self.lowlink[v] = self.lowlink[v].min(self.lowlink[w]);
            } else if self.on_stack[w] {
                self.lowlink[v] = self.lowlink[v].min(self.index[w].unwrap());
            }
        }
        if self.lowlink[v] == self.index[v].unwrap() {
            let mut comp = BTreeSet::new();
            loop {
                let w = self.stack.pop().unwrap();
                self.on_stack[w] = false;
                comp.insert(w);
                if w == v {
                    break;
                }
            }
            self.components.push(comp);
        }
    }
}

/// The order-`n` cycle-with-loops pattern: a star at every diagonal
/// position, the superdiagonal, and the corner `(n, 1)`; its digraph is one
/// directed n-cycle with a loop at every vertex.  Defined for `n >= 3`.
pub fn cycle_with_loops(n: usize) -> Result<Pattern, Error> {
    if n < 3 {
        return Err(Error::OrderTooSmall(n, 3));
    }
    let mut stars: Vec<(usize, usize)> = (1..=n).map(|i| (i, i)).collect();
    stars.extend((1..n).map(|i| (i, i + 1)));
    stars.push((n, 1));
    Ok(Pattern::new(n, stars))
}

/// One canonical representative per equivalence class of irreducible
/// patterns of order `n <= 4`, sorted by canonical form.
pub fn enumerate_irreducible(n: usize) -> Result<Vec<Pattern>, Error> {
    if n == 0 {
        return Err(Error::OrderTooSmall(0, 1));
    }
    if n > MAX_ENUMERATION_ORDER {
        return Err(Error::OrderTooLarge(n, MAX_ENUMERATION_ORDER));
    }
    let positions: Vec<(usize, usize)> =
        (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).collect();
    let mut classes: BTreeSet<Pattern> = BTreeSet::new();
    for mask in 0u32..(1 << positions.len()) {
        let stars = positions
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &p)| p);
        let pattern = Pattern::new(n, stars);
        if pattern.is_irreducible() {
            classes.insert(pattern.canonicalize()?);
        }
    }
    Ok(classes.into_iter().collect())
}
