//! The quotient algebra `F⟨X⟩ / I` given a Gröbner basis of `I`.
//!
//! Its monomial basis is the set of normal words, words containing no leading
//! monomial of the basis as a subword. Normal words are recognized by an
//! Aho–Corasick automaton over the forbidden leading monomials, which turns
//! finiteness into cycle detection and graded dimensions into path counting.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use num::{BigUint, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::arith::{Field, Rational};
use crate::error::{Error, Result};
use crate::groebner::{is_groebner, CompletionResult, Status};
use crate::par::{self, Execution};
use crate::poly::Polynomial;
use crate::reduce::Reducer;
use crate::words::{Alphabet, Word};

/// Deterministic automaton accepting exactly the normal words.
#[derive(Clone, Debug)]
pub struct NormalWordAutomaton {
    letters: usize,
    // state * letters + letter -> state
    delta: Vec<usize>,
    dead: Vec<bool>,
}

impl NormalWordAutomaton {
    /// `letters` is the alphabet size; `forbidden` the leading monomials.
    pub fn new(letters: usize, forbidden: &[Word]) -> Self {
        let mut delta: Vec<usize> = vec![usize::MAX; letters];
        let mut dead = vec![false];
        for w in forbidden {
            let mut s = 0;
            for &l in w.letters() {
                let slot = s * letters + l as usize;
                if delta[slot] == usize::MAX {
                    delta[slot] = dead.len();
                    dead.push(false);
                    delta.extend(std::iter::repeat_n(usize::MAX, letters));
                }
                s = delta[slot];
            }
            dead[s] = true;
        }
        // breadth-first failure links, filling missing transitions
        let mut fail = vec![0usize; dead.len()];
        let mut queue = VecDeque::new();
        for l in 0..letters {
            match delta[l] {
                usize::MAX => delta[l] = 0,
                t => {
                    fail[t] = 0;
                    queue.push_back(t);
                }
            }
        }
        while let Some(s) = queue.pop_front() {
            if dead[fail[s]] {
                dead[s] = true;
            }
            for l in 0..letters {
                let slot = s * letters + l;
                let via_fail = delta[fail[s] * letters + l];
                match delta[slot] {
                    usize::MAX => delta[slot] = via_fail,
                    t => {
                        fail[t] = via_fail;
                        queue.push_back(t);
                    }
                }
            }
        }
        NormalWordAutomaton { letters, delta, dead }
    }

    pub fn num_states(&self) -> usize {
        self.dead.len()
    }

    fn step(&self, s: usize, l: u8) -> usize {
        self.delta[s * self.letters + l as usize]
    }

    pub fn accepts(&self, w: &Word) -> bool {
        let mut s = 0;
        if self.dead[s] {
            return false;
        }
        for &l in w.letters() {
            if l as usize >= self.letters {
                return false;
            }
            s = self.step(s, l);
            if self.dead[s] {
                return false;
            }
        }
        true
    }

    /// True when only finitely many words are accepted, i.e. no cycle runs
    /// through live states reachable from the start.
    pub fn is_finite(&self) -> bool {
        if self.dead[0] {
            return true;
        }
        // iterative three-colour depth-first search
        let n = self.num_states();
        let mut colour = vec![0u8; n];
        let mut stack = vec![(0usize, 0usize)];
        colour[0] = 1;
        while let Some(&mut (s, ref mut next)) = stack.last_mut() {
            if *next == self.letters {
                colour[s] = 2;
                stack.pop();
                continue;
            }
            let t = self.step(s, *next as u8);
            *next += 1;
            if self.dead[t] {
                continue;
            }
            match colour[t] {
                0 => {
                    colour[t] = 1;
                    stack.push((t, 0));
                }
                1 => return false,
                _ => {}
            }
        }
        true
    }

    /// Number of accepted words of each degree `0..=max_degree`.
    pub fn graded_dims(&self, max_degree: usize) -> Vec<BigUint> {
        let n = self.num_states();
        let mut count = vec![BigUint::zero(); n];
        let mut out = Vec::with_capacity(max_degree + 1);
        if self.dead[0] {
            return vec![BigUint::zero(); max_degree + 1];
        }
        count[0] = BigUint::from(1u8);
        for d in 0..=max_degree {
            out.push(count.iter().sum());
            if d == max_degree {
                break;
            }
            let mut next = vec![BigUint::zero(); n];
            for (s, c) in count.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for l in 0..self.letters {
                    let t = self.step(s, l as u8);
                    if !self.dead[t] {
                        next[t] += c;
                    }
                }
            }
            count = next;
        }
        out
    }

    /// Accepted words of degree at most `max_degree`, in deglex order.
    pub fn words_up_to(&self, max_degree: usize) -> Vec<Word> {
        if self.dead[0] {
            return Vec::new();
        }
        let mut out = vec![Word::empty()];
        let mut level = vec![(Word::empty(), 0usize)];
        for _ in 0..max_degree {
            let mut next = Vec::new();
            for (w, s) in &level {
                for l in 0..self.letters {
                    let t = self.step(*s, l as u8);
                    if !self.dead[t] {
                        let mut v = w.clone();
                        v.push(l as u8);
                        next.push((v, t));
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            out.extend(next.iter().map(|(w, _)| w.clone()));
            level = next;
        }
        out
    }
}

/// A quotient algebra presented by a complete Gröbner basis.
#[derive(Clone, Debug)]
pub struct Quotient {
    alphabet: Alphabet,
    basis: Vec<Polynomial>,
    automaton: NormalWordAutomaton,
}

impl Quotient {
    /// Fails with `IncompleteBasis` unless the completion finished.
    pub fn new(result: &CompletionResult) -> Result<Self> {
        match result.status {
            Status::Complete | Status::UnitIdeal => {
                Ok(Self::from_basis_unchecked(result.alphabet.clone(), result.basis.clone()))
            }
            _ => Err(Error::IncompleteBasis),
        }
    }

    /// Checks the Gröbner property before accepting `basis`.
    pub fn from_groebner_basis(alphabet: Alphabet, basis: Vec<Polynomial>) -> Result<Self> {
        if !is_groebner(&basis) {
            return Err(Error::IncompleteBasis);
        }
        Ok(Self::from_basis_unchecked(alphabet, basis))
    }

    /// No Gröbner check. Over an incomplete basis the normal words span the
    /// quotient but may be dependent, so dimensions are upper bounds.
    pub fn from_partial_basis(alphabet: Alphabet, basis: Vec<Polynomial>) -> Self {
        Self::from_basis_unchecked(alphabet, basis)
    }

    fn from_basis_unchecked(alphabet: Alphabet, basis: Vec<Polynomial>) -> Self {
        let basis: Vec<Polynomial> = basis.into_iter().filter(|g| !g.is_zero()).map(|g| g.standard_form()).collect();
        let lms: Vec<Word> = basis.iter().map(|g| g.lm().clone()).collect();
        let automaton = NormalWordAutomaton::new(alphabet.len(), &lms);
        Quotient { alphabet, basis, automaton }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn automaton(&self) -> &NormalWordAutomaton {
        &self.automaton
    }

    pub fn is_finite(&self) -> bool {
        self.automaton.is_finite()
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.automaton.accepts(w)
    }

    /// All normal words in deglex order.
    pub fn normal_words(&self) -> Result<Vec<Word>> {
        if !self.is_finite() {
            return Err(Error::InfiniteQuotient);
        }
        // a finite acceptor has no accepted word longer than its state count
        Ok(self.automaton.words_up_to(self.automaton.num_states()))
    }

    pub fn normal_words_up_to(&self, max_degree: usize) -> Vec<Word> {
        self.automaton.words_up_to(max_degree)
    }

    pub fn dimension(&self) -> Result<usize> {
        Ok(self.normal_words()?.len())
    }

    /// Number of normal words of each degree `0..=max_degree`.
    pub fn graded_dims(&self, max_degree: usize) -> Vec<BigUint> {
        self.automaton.graded_dims(max_degree)
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        Reducer::new(&self.basis).normal_form(f)
    }

    /// Product in the quotient.
    pub fn multiply(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.normal_form(&f.multiply(g))
    }

    pub fn multiplication_table(&self) -> Result<MultiplicationTable> {
        self.multiplication_table_with(Execution::default())
    }

    pub fn multiplication_table_with(&self, exec: Execution) -> Result<MultiplicationTable> {
        let words = self.normal_words()?;
        let index: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let reducer = Reducer::new(&self.basis);
        let d = words.len();
        let entries = par::map_indexed(exec, d, |i| {
            (0..d)
                .map(|j| {
                    let prod = Polynomial::monomial(Rational::one(), words[i].concat(&words[j]));
                    reducer
                        .normal_form(&prod)
                        .into_terms()
                        .into_iter()
                        .rev()
                        .map(|(w, c)| (index[&w], c))
                        .collect()
                })
                .collect()
        });
        Ok(MultiplicationTable { alphabet: self.alphabet.clone(), words, entries })
    }
}

/// Products of normal words, `entries[i][j] = NF(u_i u_j)` as sparse
/// coefficient vectors over the normal words (indices ascending).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicationTable {
    pub alphabet: Alphabet,
    pub words: Vec<Word>,
    pub entries: Vec<Vec<Vec<(usize, Rational)>>>,
}

impl MultiplicationTable {
    pub fn dim(&self) -> usize {
        self.words.len()
    }

    fn combine(&self, x: &[(usize, Rational)], y: &[(usize, Rational)]) -> Vec<Rational> {
        let mut acc = vec![Rational::zero(); self.dim()];
        for (i, a) in x {
            for (j, b) in y {
                for (k, c) in &self.entries[*i][*j] {
                    acc[*k] = acc[*k].add(&a.mul(&b.mul(c)));
                }
            }
        }
        acc
    }

    /// Checks `(u_i u_j) u_k = u_i (u_j u_k)` for every triple.
    pub fn is_associative(&self, exec: Execution) -> bool {
        let d = self.dim();
        let one = Rational::one();
        par::map_indexed(exec, d, |i| {
            (0..d).all(|j| {
                (0..d).all(|k| {
                    let left = self.combine(&self.entries[i][j], &[(k, one.clone())]);
                    let right = self.combine(&[(i, one.clone())], &self.entries[j][k]);
                    left == right
                })
            })
        })
        .into_iter()
        .all(|ok| ok)
    }

    /// One cell as `2+5-8`: 1-based basis indices, `·` for zero, other
    /// coefficients as `2*5`.
    pub fn compact_cell(&self, i: usize, j: usize) -> String {
        let e = &self.entries[i][j];
        if e.is_empty() {
            return "·".into();
        }
        let mut s = String::new();
        for (n, (k, c)) in e.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            if neg {
                s.push('-');
            } else if n > 0 {
                s.push('+');
            }
            if !abs.is_one() {
                let _ = write!(s, "{abs}*");
            }
            let _ = write!(s, "{}", k + 1);
        }
        s
    }

    /// Whitespace-separated compact cells, one row per line.
    pub fn to_compact_text(&self) -> String {
        let mut out = String::new();
        for (i, w) in self.words.iter().enumerate() {
            let _ = writeln!(out, "{:>3} {:<8}| {}", i + 1, self.alphabet.display(w).to_string(),
                (0..self.dim()).map(|j| self.compact_cell(i, j)).collect::<Vec<_>>().join(" "));
        }
        out
    }

    fn cell_polynomial(&self, i: usize, j: usize) -> String {
        let p = Polynomial::normalize(self.entries[i][j].iter().map(|(k, c)| (c.clone(), self.words[*k].clone())));
        p.display(&self.alphabet).to_string()
    }

    /// Header row of normal words, then one row per left factor; cells are
    /// the products written as polynomials.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("*");
        for w in &self.words {
            let _ = write!(out, ",{}", self.alphabet.display(w));
        }
        out.push('\n');
        for (i, w) in self.words.iter().enumerate() {
            let _ = write!(out, "{}", self.alphabet.display(w));
            for j in 0..self.dim() {
                let _ = write!(out, ",{}", self.cell_polynomial(i, j));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "basis": self.words.iter().map(|w| self.alphabet.display(w).to_string()).collect::<Vec<_>>(),
            "products": (0..self.dim()).map(|i| (0..self.dim()).map(|j| self.cell_polynomial(i, j)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "compact": (0..self.dim()).map(|i| (0..self.dim()).map(|j| self.compact_cell(i, j)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

/// Graded dimensions as machine integers where they fit.
pub fn dims_to_u64(dims: &[BigUint]) -> Option<Vec<u64>> {
    dims.iter().map(ToPrimitive::to_u64).collect()
}
