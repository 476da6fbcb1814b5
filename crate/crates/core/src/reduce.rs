//! Division by a set of polynomials and self-reduction of generator sets.
//!
//! Reduction uses one fixed strategy so runs are reproducible: the greatest
//! reducible monomial is eliminated first, using the applicable generator with
//! the smallest leading monomial (ties broken by the total polynomial order,
//! then by position in the list) at its leftmost occurrence.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::arith::{Field, Rational};
use crate::par;
use crate::poly::Polynomial;
use crate::words::{Alphabet, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep<K: Field = Rational> {
    /// Index of the eliminated monomial in the support of the current
    /// polynomial, counted from the leading term.
    pub position: usize,
    pub generator_index: usize,
    /// Start of the leading monomial of the generator inside the eliminated
    /// monomial.
    pub occurrence: usize,
    pub left: Word,
    pub right: Word,
    /// `α · left · g · right`
    pub subtracted: Polynomial<K>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace<K: Field = Rational> {
    pub input: Polynomial<K>,
    pub output: Polynomial<K>,
    pub steps: Vec<ReductionStep<K>>,
}

impl<K: Field> ReductionTrace<K> {
    /// Checks `input - Σ subtracted = output` exactly.
    pub fn verify(&self) -> bool {
        let mut acc = self.input.clone();
        for s in &self.steps {
            acc = acc.sub(&s.subtracted);
        }
        acc == self.output
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        json!({
            "input": self.input.display(alphabet).to_string(),
            "output": self.output.display(alphabet).to_string(),
            "steps": self.steps.iter().map(|s| json!({
                "position": s.position,
                "generator": s.generator_index,
                "occurrence": s.occurrence,
                "left": alphabet.display(&s.left).to_string(),
                "right": alphabet.display(&s.right).to_string(),
                "subtracted": s.subtracted.display(alphabet).to_string(),
            })).collect::<Vec<_>>(),
        })
    }
}

const NONE: u32 = u32::MAX;

/// Prefix trie over the leading monomials of a generator list.
#[derive(Clone, Debug)]
struct LeadTrie {
    width: usize,
    // node * width + letter -> child node, NONE if absent
    next: Vec<u32>,
    // best generator (by rank) whose leading monomial ends at this node
    terminal: Vec<u32>,
}

impl LeadTrie {
    fn new(width: usize) -> Self {
        LeadTrie { width, next: vec![NONE; width.max(1)], terminal: vec![NONE] }
    }

    fn insert(&mut self, word: &[u8], rank: u32) {
        let mut node = 0usize;
        for &l in word {
            let slot = node * self.width + l as usize;
            if self.next[slot] == NONE {
                let id = self.terminal.len() as u32;
                self.terminal.push(NONE);
                self.next.extend(std::iter::repeat_n(NONE, self.width));
                self.next[slot] = id;
            }
            node = self.next[slot] as usize;
        }
        if self.terminal[node] == NONE || rank < self.terminal[node] {
            self.terminal[node] = rank;
        }
    }
}

/// A reusable reducer for one generator list.
#[derive(Clone, Debug)]
pub struct Reducer<'a, K: Field = Rational> {
    gens: &'a [Polynomial<K>],
    // rank -> generator index
    by_rank: Vec<usize>,
    trie: LeadTrie,
    // leading coefficient inverses, indexed by generator
    lc_inv: Vec<K>,
}

impl<'a, K: Field> Reducer<'a, K> {
    /// Zero generators are ignored.
    pub fn new(gens: &'a [Polynomial<K>]) -> Self {
        let mut by_rank: Vec<usize> = (0..gens.len()).filter(|&i| !gens[i].is_zero()).collect();
        by_rank.sort_by(|&i, &j| gens[i].cmp(&gens[j]).then(i.cmp(&j)));
        let width = gens
            .iter()
            .filter_map(|g| g.leading_monomial().and_then(Word::max_letter))
            .max()
            .map_or(1, |m| m as usize + 1);
        let mut trie = LeadTrie::new(width);
        for (rank, &i) in by_rank.iter().enumerate() {
            trie.insert(gens[i].lm().letters(), rank as u32);
        }
        let lc_inv = gens
            .iter()
            .map(|g| g.leading_coefficient().and_then(K::inv).unwrap_or_else(K::zero))
            .collect();
        Reducer { gens, by_rank, trie, lc_inv }
    }

    pub fn generators(&self) -> &'a [Polynomial<K>] {
        self.gens
    }

    /// The generator used to reduce `m` and the occurrence position, if any
    /// generator of rank below `rank_limit` applies.
    fn find(&self, m: &[u8], rank_limit: u32) -> Option<(u32, usize)> {
        let t = &self.trie;
        let root_rank = t.terminal[0];
        if root_rank < rank_limit {
            return Some((root_rank, 0));
        }
        let mut best: Option<(u32, usize)> = None;
        for start in 0..m.len() {
            let mut node = 0usize;
            for &l in &m[start..] {
                if l as usize >= t.width {
                    break;
                }
                let nx = t.next[node * t.width + l as usize];
                if nx == NONE {
                    break;
                }
                node = nx as usize;
                let r = t.terminal[node];
                if r < rank_limit && best.is_none_or(|(b, _)| r < b) {
                    best = Some((r, start));
                }
            }
        }
        best
    }

    /// True when some generator's leading monomial divides `m`.
    pub fn is_reducible(&self, m: &Word) -> bool {
        self.find(m.letters(), u32::MAX).is_some()
    }

    pub fn normal_form(&self, f: &Polynomial<K>) -> Polynomial<K> {
        self.run(f, u32::MAX, None)
    }

    pub fn normal_form_traced(&self, f: &Polynomial<K>) -> (Polynomial<K>, ReductionTrace<K>) {
        let mut steps = Vec::new();
        let out = self.run(f, u32::MAX, Some(&mut steps));
        let trace = ReductionTrace { input: f.clone(), output: out.clone(), steps };
        (out, trace)
    }

    /// Normal form using only the generators ranked strictly below `limit`.
    pub(crate) fn normal_form_below(&self, f: &Polynomial<K>, limit: usize) -> Polynomial<K> {
        self.run(f, limit as u32, None)
    }

    fn run(
        &self,
        f: &Polynomial<K>,
        rank_limit: u32,
        mut trace: Option<&mut Vec<ReductionStep<K>>>,
    ) -> Polynomial<K> {
        let mut work: BTreeMap<Word, K> =
            f.terms().iter().map(|(w, c)| (w.clone(), c.clone())).collect();
        let mut out: Vec<(Word, K)> = Vec::new();
        while let Some((m, c)) = work.pop_last() {
            let Some((rank, pos)) = self.find(m.letters(), rank_limit) else {
                out.push((m, c));
                continue;
            };
            let gi = self.by_rank[rank as usize];
            let g = &self.gens[gi];
            let alpha = c.mul(&self.lc_inv[gi]);
            let lm_len = g.lm().degree();
            let left = &m.letters()[..pos];
            let right = &m.letters()[pos + lm_len..];
            for (w, gc) in &g.terms()[1..] {
                let key = Word::sandwich(left, w.letters(), right);
                let delta = alpha.mul(gc);
                match work.entry(key) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(delta.neg());
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let v = e.get().sub(&delta);
                        if v.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = v;
                        }
                    }
                }
            }
            if let Some(steps) = trace.as_deref_mut() {
                let (lw, rw) = (Word::from_letters(left), Word::from_letters(right));
                steps.push(ReductionStep {
                    position: out.len(),
                    generator_index: gi,
                    occurrence: pos,
                    subtracted: g.sandwich(&lw, &rw).scale(&alpha),
                    left: lw,
                    right: rw,
                });
            }
        }
        Polynomial::from_sorted_terms(out)
    }
}

/// A normal form of `f` with respect to `gens` under the fixed strategy,
/// together with the full reduction trace.
pub fn normal_form<K: Field>(f: &Polynomial<K>, gens: &[Polynomial<K>]) -> (Polynomial<K>, ReductionTrace<K>) {
    Reducer::new(gens).normal_form_traced(f)
}

/// Converts a generator list into a self-reduced set generating the same
/// ideal: standard forms, sorted by the total polynomial order, each element
/// reduced against its predecessors, repeated until nothing changes.
///
/// A nonzero constant anywhere collapses the result to `[1]`.
pub fn self_reduce<K: Field>(gens: &[Polynomial<K>]) -> Vec<Polynomial<K>> {
    self_reduce_with(gens, par::Execution::default())
}

pub fn self_reduce_with<K: Field>(gens: &[Polynomial<K>], exec: par::Execution) -> Vec<Polynomial<K>> {
    let mut g: Vec<Polynomial<K>> =
        gens.iter().filter(|p| !p.is_zero()).map(Polynomial::standard_form).collect();
    g.sort();
    loop {
        if g.iter().any(Polynomial::is_constant) {
            return vec![Polynomial::one()];
        }
        let reducer = Reducer::new(&g);
        let mut h: Vec<Polynomial<K>> = par::map_indexed(exec, g.len(), |i| {
            reducer.normal_form_below(&g[i], i).standard_form()
        });
        h.retain(|p| !p.is_zero());
        h.sort();
        if h == g {
            return g;
        }
        g = h;
    }
}

/// Checks the self-reduced property directly: every element monic and in
/// normal form with respect to all the others.
pub fn is_self_reduced<K: Field>(gens: &[Polynomial<K>]) -> bool {
    gens.iter().enumerate().all(|(i, g)| {
        if !g.is_monic() {
            return false;
        }
        gens.iter().enumerate().all(|(j, h)| {
            i == j || g.support().all(|w| h.is_constant() || !w.contains(h.lm()))
        })
    })
}
