//! Completion of a generator set to a Gröbner basis.
//!
//! Each iteration forms every composition of every ordered pair of generators
//! (a generator paired with itself included), reduces the compositions against
//! the current set, and adds the nonzero results. The loop stops when an
//! iteration produces nothing new. The input is assumed self-reduced at each
//! step, so leading monomials never contain one another and only proper
//! overlaps occur.

use std::sync::atomic::{AtomicBool, Ordering};

use serde::Serialize;

use crate::arith::{Field, Rational};
use crate::cli::parse::{parse_relation, PresentationFile};
use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::poly::Polynomial;
use crate::reduce::{self_reduce_with, Reducer};
use crate::words::{overlap_lengths, Alphabet, Overlap, Word};

/// Generators of a two-sided ideal in the free algebra on `alphabet`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub label: Option<String>,
    pub alphabet: Alphabet,
    pub generators: Vec<Polynomial>,
}

impl Presentation {
    pub fn new(alphabet: Alphabet, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            if let Some(m) = g.max_letter() {
                if m as usize >= alphabet.len() {
                    return Err(Error::Alphabet(format!(
                        "generator uses letter index {m} but the alphabet has {} letters",
                        alphabet.len()
                    )));
                }
            }
        }
        Ok(Presentation { label: None, alphabet, generators })
    }

    /// `letters` is a string of single-character letter names, e.g. `"abc"`.
    pub fn parse(letters: &str, relations: &[&str]) -> Result<Self> {
        let alphabet = Alphabet::new(letters.chars().filter(|c| !c.is_whitespace()))?;
        let gens = relations.iter().map(|r| parse_relation(r, &alphabet)).collect::<Result<_>>()?;
        Self::new(alphabet, gens)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn from_file(file: PresentationFile) -> Result<Self> {
        let mut p = Self::new(file.alphabet, file.relations)?;
        p.label = file.label;
        Ok(p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionConfig {
    /// Compositions whose overlap word is longer than this are skipped.
    pub max_degree: Option<usize>,
    pub max_iterations: Option<usize>,
    /// Stop once the basis has more elements than this.
    pub max_basis_size: Option<usize>,
    pub execution: Execution,
    /// Keep the self-reduced set after every iteration.
    pub keep_snapshots: bool,
}

impl Default for CompletionConfig {
    fn default() -> Self {
        CompletionConfig {
            max_degree: Some(20),
            max_iterations: Some(50),
            max_basis_size: None,
            execution: Execution::default(),
            keep_snapshots: false,
        }
    }
}

impl CompletionConfig {
    pub fn unbounded() -> Self {
        CompletionConfig { max_degree: None, max_iterations: None, ..Self::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "bound", rename_all = "snake_case")]
pub enum Status {
    /// The basis is a Gröbner basis of the ideal.
    Complete,
    /// The ideal contains a nonzero constant.
    UnitIdeal,
    /// Every composition of degree at most the bound reduces to zero, but
    /// some longer ones were skipped.
    TruncatedAtDegree(usize),
    IterationLimit(usize),
    SizeLimit(usize),
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Status::Complete => write!(f, "complete"),
            Status::UnitIdeal => write!(f, "unit ideal"),
            Status::TruncatedAtDegree(d) => write!(f, "truncated at degree {d}"),
            Status::IterationLimit(n) => write!(f, "iteration limit ({n})"),
            Status::SizeLimit(n) => write!(f, "size limit ({n} elements)"),
        }
    }
}

impl Status {
    /// True for the resource-limit outcomes.
    pub fn is_bounded(&self) -> bool {
        !matches!(self, Status::Complete | Status::UnitIdeal)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IterationStats {
    pub iteration: usize,
    pub generators_in: usize,
    /// Number of overlaps examined within the degree bound.
    pub overlaps: usize,
    /// Distinct nonzero reduced compositions.
    pub compositions: usize,
    pub generators_out: usize,
    /// Size after self-reduction.
    pub basis_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionResult {
    pub alphabet: Alphabet,
    pub status: Status,
    /// Self-reduced and sorted by the total polynomial order.
    pub basis: Vec<Polynomial>,
    pub iterations: Vec<IterationStats>,
    /// `snapshots[k]` is the self-reduced set after `k` iterations; empty
    /// unless requested.
    pub snapshots: Vec<Vec<Polynomial>>,
}

impl CompletionResult {
    pub fn is_complete(&self) -> bool {
        self.status == Status::Complete
    }

    /// Iterations as `x,y | x,y | x`: set size at the start of each
    /// iteration and the new compositions it produced, zero counts omitted.
    pub fn profile(&self) -> String {
        self.iterations
            .iter()
            .map(|it| match it.compositions {
                0 => it.generators_in.to_string(),
                n => format!("{},{n}", it.generators_in),
            })
            .collect::<Vec<_>>()
            .join(" | ")
    }
}

/// `g·right − left·h` for an overlap of `LM(g) = left·v` with
/// `LM(h) = v·right`, both scaled to be monic first.
pub fn composition<K: Field>(g: &Polynomial<K>, h: &Polynomial<K>, overlap: &Overlap) -> Result<Polynomial<K>> {
    let (Some(lg), Some(lh)) = (g.leading_monomial(), h.leading_monomial()) else {
        return Err(Error::OverlapMismatch);
    };
    let empty = Word::empty();
    if *lg != overlap.left.concat(&overlap.overlap) || *lh != overlap.overlap.concat(&overlap.right) {
        return Err(Error::OverlapMismatch);
    }
    let g = g.standard_form();
    let h = h.standard_form();
    Ok(g.sandwich(&empty, &overlap.right).sub(&h.sandwich(&overlap.left, &empty)))
}

fn composition_at<K: Field>(g: &Polynomial<K>, h: &Polynomial<K>, k: usize) -> Polynomial<K> {
    let (lg, lh) = (g.lm(), h.lm());
    let left = lg.slice(0, lg.degree() - k);
    let right = lh.slice(k, lh.degree());
    let empty = Word::empty();
    g.sandwich(&empty, &right).sub(&h.sandwich(&left, &empty))
}

/// Every composition of every ordered pair `(g_i, g_j)`, as
/// `(i, j, overlap, composition)`, unreduced. Inputs must be monic.
pub fn all_compositions<K: Field>(gens: &[Polynomial<K>]) -> Vec<(usize, usize, Overlap, Polynomial<K>)> {
    let mut out = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        for (j, h) in gens.iter().enumerate() {
            if g.is_zero() || h.is_zero() {
                continue;
            }
            let (lg, lh) = (g.lm(), h.lm());
            for k in overlap_lengths(lg.letters(), lh.letters()) {
                let ov = Overlap {
                    left: lg.slice(0, lg.degree() - k),
                    overlap: lg.slice(lg.degree() - k, lg.degree()),
                    right: lh.slice(k, lh.degree()),
                };
                out.push((i, j, ov, composition_at(g, h, k)));
            }
        }
    }
    out
}

struct Round<K: Field> {
    overlaps: usize,
    compositions: Vec<Polynomial<K>>,
    truncated: bool,
}

fn round<K: Field>(g: &[Polynomial<K>], max_degree: Option<usize>, exec: Execution) -> Round<K> {
    let reducer = Reducer::new(g);
    let truncated = AtomicBool::new(false);
    let per_pair: Vec<(usize, Vec<Polynomial<K>>)> = par::map_indexed(exec, g.len(), |i| {
        let lg = g[i].lm();
        let mut seen = 0;
        let mut found = Vec::new();
        for h in g {
            let lh = h.lm();
            for k in overlap_lengths(lg.letters(), lh.letters()) {
                if max_degree.is_some_and(|d| lg.degree() + lh.degree() - k > d) {
                    truncated.store(true, Ordering::Relaxed);
                    continue;
                }
                seen += 1;
                let r = reducer.normal_form(&composition_at(&g[i], h, k));
                if !r.is_zero() {
                    found.push(r.standard_form());
                }
            }
        }
        (seen, found)
    });
    let overlaps = per_pair.iter().map(|(n, _)| n).sum();
    let mut compositions: Vec<Polynomial<K>> = per_pair.into_iter().flat_map(|(_, v)| v).collect();
    compositions.sort();
    compositions.dedup();
    Round { overlaps, compositions, truncated: truncated.into_inner() }
}

/// Completes `presentation` under `config`. The returned basis is always
/// self-reduced and generates the same ideal as the input; it is a Gröbner
/// basis exactly when the status is `Complete` (or `UnitIdeal`, where it is
/// `[1]`).
pub fn complete(presentation: &Presentation, config: &CompletionConfig) -> CompletionResult {
    let (status, basis, iterations, snapshots) = complete_generic(&presentation.generators, config);
    CompletionResult { alphabet: presentation.alphabet.clone(), status, basis, iterations, snapshots }
}

type Outcome<K> = (Status, Vec<Polynomial<K>>, Vec<IterationStats>, Vec<Vec<Polynomial<K>>>);

/// Field-generic core of [`complete`].
pub fn complete_generic<K: Field>(gens: &[Polynomial<K>], config: &CompletionConfig) -> Outcome<K> {
    let exec = config.execution;
    let mut g = self_reduce_with(gens, exec);
    let mut stats = Vec::new();
    let mut snapshots = Vec::new();
    if config.keep_snapshots {
        snapshots.push(g.clone());
    }
    let is_unit = |g: &[Polynomial<K>]| g.len() == 1 && g[0].is_constant();
    if is_unit(&g) {
        return (Status::UnitIdeal, g, stats, snapshots);
    }
    let mut iteration = 0;
    loop {
        if config.max_iterations.is_some_and(|m| iteration >= m) {
            return (Status::IterationLimit(iteration), g, stats, snapshots);
        }
        iteration += 1;
        let r = round(&g, config.max_degree, exec);
        let generators_in = g.len();
        let n = r.compositions.len();
        if n == 0 {
            stats.push(IterationStats {
                iteration,
                generators_in,
                overlaps: r.overlaps,
                compositions: 0,
                generators_out: generators_in,
                basis_size: generators_in,
            });
            let status = match (r.truncated, config.max_degree) {
                (true, Some(d)) => Status::TruncatedAtDegree(d),
                _ => Status::Complete,
            };
            return (status, g, stats, snapshots);
        }
        g.extend(r.compositions);
        g = self_reduce_with(&g, exec);
        stats.push(IterationStats {
            iteration,
            generators_in,
            overlaps: r.overlaps,
            compositions: n,
            generators_out: generators_in + n,
            basis_size: g.len(),
        });
        if config.keep_snapshots {
            snapshots.push(g.clone());
        }
        if is_unit(&g) {
            return (Status::UnitIdeal, g, stats, snapshots);
        }
        if config.max_basis_size.is_some_and(|m| g.len() > m) {
            return (Status::SizeLimit(g.len()), g, stats, snapshots);
        }
    }
}

/// Checks the Gröbner property directly: every overlap composition and every
/// inclusion composition reduces to zero. Works on any list of nonzero
/// polynomials, self-reduced or not.
pub fn is_groebner<K: Field>(gens: &[Polynomial<K>]) -> bool {
    let gens: Vec<Polynomial<K>> = gens.iter().filter(|g| !g.is_zero()).map(Polynomial::standard_form).collect();
    if gens.iter().any(Polynomial::is_constant) {
        return true;
    }
    let reducer = Reducer::new(&gens);
    for (i, g) in gens.iter().enumerate() {
        for (j, h) in gens.iter().enumerate() {
            let (lg, lh) = (g.lm(), h.lm());
            for k in overlap_lengths(lg.letters(), lh.letters()) {
                if !reducer.normal_form(&composition_at(g, h, k)).is_zero() {
                    return false;
                }
            }
            if i != j && lh.degree() <= lg.degree() {
                let d = lh.degree();
                for s in 0..=lg.degree() - d {
                    if lg.letters()[s..s + d] == *lh.letters() {
                        let left = lg.slice(0, s);
                        let right = lg.slice(s + d, lg.degree());
                        let c = g.sub(&h.sandwich(&left, &right));
                        if !reducer.normal_form(&c).is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IdealComparison {
    Equal,
    Different,
    /// Some inclusion could be neither proved nor refuted within the
    /// completion bounds.
    Inconclusive,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Inclusion {
    Proven,
    Refuted,
    Unknown,
}

// Reducing to zero against any generating set proves membership; a nonzero
// remainder only refutes it against a Gröbner basis.
fn inclusion<K: Field>(xs: &[Polynomial<K>], basis: &[Polynomial<K>], complete: bool) -> Inclusion {
    let r = Reducer::new(basis);
    if xs.iter().all(|f| r.normal_form(f).is_zero()) {
        Inclusion::Proven
    } else if complete {
        Inclusion::Refuted
    } else {
        Inclusion::Unknown
    }
}

/// Compares the ideals generated by `a` and `b`, completing each side under
/// `config` and reducing the generators of each against the other's basis.
pub fn ideals_equal<K: Field>(a: &[Polynomial<K>], b: &[Polynomial<K>], config: &CompletionConfig) -> IdealComparison {
    let (sa, ba, _, _) = complete_generic(a, config);
    let (sb, bb, _, _) = complete_generic(b, config);
    let a_in_b = inclusion(a, &bb, !sb.is_bounded());
    let b_in_a = inclusion(b, &ba, !sa.is_bounded());
    match (a_in_b, b_in_a) {
        (Inclusion::Proven, Inclusion::Proven) => IdealComparison::Equal,
        (Inclusion::Refuted, _) | (_, Inclusion::Refuted) => IdealComparison::Different,
        _ => IdealComparison::Inconclusive,
    }
}

/// Gröbner-basis membership test: `f` lies in the ideal iff it reduces to 0.
pub fn reduces_to_zero(f: &Polynomial<Rational>, basis: &[Polynomial<Rational>]) -> bool {
    Reducer::new(basis).normal_form(f).is_zero()
}
