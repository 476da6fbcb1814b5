//! Noncommutative polynomials in canonical form.

use std::fmt;

use crate::arith::{Field, Rational};
use crate::words::{Alphabet, Word};

/// A noncommutative polynomial: nonzero terms in strictly descending deglex
/// order of their monomials. The zero polynomial has no terms.
///
/// The derived `Ord` is the total polynomial order used for sorting
/// generator sets: leading monomials first, then successive
/// `(monomial, coefficient)` pairs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Polynomial<K: Field = Rational> {
    terms: Vec<(Word, K)>,
}

impl<K: Field> Default for Polynomial<K> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<K: Field> Polynomial<K> {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(K::one())
    }

    pub fn constant(c: K) -> Self {
        Self::monomial(c, Word::empty())
    }

    pub fn monomial(c: K, w: Word) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Polynomial { terms: vec![(w, c)] }
        }
    }

    /// Combines like terms, drops zeros and sorts descending.
    pub fn normalize<I: IntoIterator<Item = (K, Word)>>(raw: I) -> Self {
        let mut terms: Vec<(Word, K)> = raw.into_iter().map(|(c, w)| (w, c)).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Word, K)> = Vec::with_capacity(terms.len());
        for (w, c) in terms {
            match out.last_mut() {
                Some((lw, lc)) if *lw == w => *lc = lc.add(&c),
                _ => out.push((w, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial { terms: out }
    }

    /// Wraps terms already known to be canonical.
    pub(crate) fn from_sorted_terms(terms: Vec<(Word, K)>) -> Self {
        debug_assert!(terms.windows(2).all(|p| p[0].0 > p[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial { terms }
    }

    pub fn terms(&self) -> &[(Word, K)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Word, K)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant.
    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&Word> {
        self.terms.first().map(|(w, _)| w)
    }

    pub fn leading_coefficient(&self) -> Option<&K> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn lm(&self) -> &Word {
        self.leading_monomial().expect("leading monomial of zero polynomial")
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coefficient().is_some_and(|c| c.is_one())
    }

    pub fn degree(&self) -> Option<usize> {
        self.leading_monomial().map(Word::degree)
    }

    pub fn support(&self) -> impl Iterator<Item = &Word> {
        self.terms.iter().map(|(w, _)| w)
    }

    pub fn coefficient(&self, w: &Word) -> K {
        self.terms
            .binary_search_by(|(t, _)| w.cmp(t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| K::zero())
    }

    /// The monic multiple of `self`; zero stays zero.
    pub fn standard_form(&self) -> Self {
        match self.leading_coefficient() {
            None => Self::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(w, a)| (w.clone(), a.mul(c))).collect() }
    }

    pub fn neg(&self) -> Self {
        Polynomial { terms: self.terms.iter().map(|(w, a)| (w.clone(), a.neg())).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        use std::cmp::Ordering::*;
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let rhs = |c: &K| if negate { c.neg() } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Less => {
                    out.push((b[j].0.clone(), rhs(&b[j].1)));
                    j += 1;
                }
                Equal => {
                    let c = if negate { a[i].1.sub(&b[j].1) } else { a[i].1.add(&b[j].1) };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(w, c)| (w.clone(), rhs(c))));
        Polynomial { terms: out }
    }

    /// Bilinear concatenation product.
    pub fn multiply(&self, other: &Self) -> Self {
        Self::normalize(self.terms.iter().flat_map(|(u, a)| {
            other.terms.iter().map(move |(v, b)| (a.mul(b), u.concat(v)))
        }))
    }

    /// `left · self · right` for words `left`, `right`. Multiplication by
    /// words preserves the term order, so no re-sorting is needed.
    pub fn sandwich(&self, left: &Word, right: &Word) -> Self {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (Word::sandwich(left.letters(), w.letters(), right.letters()), c.clone()))
                .collect(),
        }
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> PolyDisplay<'a, K> {
        PolyDisplay { poly: self, alphabet }
    }

    pub fn max_letter(&self) -> Option<u8> {
        self.terms.iter().filter_map(|(w, _)| w.max_letter()).max()
    }
}

pub fn sandwich<K: Field>(left: &Word, g: &Polynomial<K>, right: &Word) -> Polynomial<K> {
    g.sandwich(left, right)
}

pub struct PolyDisplay<'a, K: Field> {
    poly: &'a Polynomial<K>,
    alphabet: &'a Alphabet,
}

impl<K: Field> fmt::Display for PolyDisplay<'_, K> {
    /// Canonical text: `c^2 - b - a`, `2ab`, `1/2*ab`, constants as numbers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.poly.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if w.is_empty() {
                write!(f, "{abs}")?;
                continue;
            }
            if !abs.is_one() {
                let s = abs.to_string();
                if s.contains('/') {
                    write!(f, "{s}*")?;
                } else {
                    write!(f, "{s}")?;
                }
            }
            write!(f, "{}", self.alphabet.display(w))?;
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::cli::parse::parse_polynomial;
    use proptest::prelude::*;

    pub(crate) fn p(alpha: &Alphabet, s: &str) -> Polynomial {
        parse_polynomial(s, alpha).unwrap()
    }

    fn abc() -> Alphabet {
        Alphabet::standard(3).unwrap()
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn normalize_examples() {
        let a = abc();
        let w = |s: &str| a.parse_word(s).unwrap();
        let f = Polynomial::normalize([(q(1), w("ba")), (q(1), w("ab")), (q(-1), w("ab"))]);
        assert_eq!(f, p(&a, "ba"));
        let g = Polynomial::normalize([(q(1), w("b^2")), (q(1), w("ab"))]);
        assert_eq!(g.lm(), &w("b^2"));
        assert_eq!(g.display(&a).to_string(), "b^2 + ab");
        assert!(Polynomial::<Rational>::normalize([]).is_zero());
    }

    #[test]
    fn standard_form_examples() {
        let a = abc();
        assert_eq!(p(&a, "-2bc - 2ac + 2c").standard_form(), p(&a, "bc + ac - c"));
        let ab = Alphabet::standard(2).unwrap();
        assert_eq!(p(&ab, "-baba + ab^2a").standard_form(), p(&ab, "baba - ab^2a"));
        assert!(Polynomial::<Rational>::zero().standard_form().is_zero());
        assert_eq!(p(&a, "-2bc - 2ac + 2c").standard_form().display(&a).to_string(), "bc + ac - c");
    }

    #[test]
    fn products() {
        let ab = Alphabet::standard(2).unwrap();
        let f = p(&ab, "a + b").multiply(&p(&ab, "a - b"));
        assert_eq!(f, p(&ab, "a^2 - ab + ba - b^2"));
        let a = abc();
        let g5 = p(&a, "cb + bc - c");
        let c = a.parse_word("c").unwrap();
        assert_eq!(g5.sandwich(&c, &Word::empty()), p(&a, "c^2b + cbc - c^2"));
        let one = Polynomial::one();
        assert_eq!(one.multiply(&g5), g5);
        assert_eq!(g5.multiply(&one), g5);
    }

    #[test]
    fn total_order_breaks_ties() {
        let a = abc();
        let mut v = vec![p(&a, "c - b"), p(&a, "c - a"), p(&a, "b")];
        v.sort();
        assert_eq!(v, vec![p(&a, "b"), p(&a, "c - a"), p(&a, "c - b")]);
        assert!(p(&a, "a") < p(&a, "a - 1"));
    }

    #[test]
    fn display_forms() {
        let a = abc();
        assert_eq!(p(&a, "c^2 - b - a").display(&a).to_string(), "c^2 - b - a");
        assert_eq!(p(&a, "2*a*c*b + 1").display(&a).to_string(), "2acb + 1");
        assert_eq!(p(&a, "-1/2 a").display(&a).to_string(), "-1/2*a");
        assert_eq!(Polynomial::<Rational>::zero().display(&a).to_string(), "0");
        assert_eq!(p(&a, "-3").display(&a).to_string(), "-3");
    }

    pub(crate) fn arb_poly(k: u8, max_deg: usize, max_terms: usize) -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec(
            (
                (-4i64..=4, 1i64..=3),
                proptest::collection::vec(0..k, 0..=max_deg),
            ),
            0..=max_terms,
        )
        .prop_map(|ts| {
            Polynomial::normalize(
                ts.into_iter()
                    .map(|((n, d), w)| (Rational::new(n, d).unwrap(), Word::from_letters(&w))),
            )
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(f in arb_poly(2, 3, 4), g in arb_poly(2, 3, 4), h in arb_poly(2, 3, 4)) {
            prop_assert_eq!(f.multiply(&g).multiply(&h), f.multiply(&g.multiply(&h)));
            prop_assert_eq!(f.multiply(&g.add(&h)), f.multiply(&g).add(&f.multiply(&h)));
            prop_assert_eq!(f.add(&g).multiply(&h), f.multiply(&h).add(&g.multiply(&h)));
            prop_assert_eq!(f.multiply(&Polynomial::one()), f.clone());
            prop_assert!(f.sub(&f).is_zero());
        }

        #[test]
        fn leading_terms_multiply(f in arb_poly(3, 3, 4), g in arb_poly(3, 3, 4)) {
            if !f.is_zero() && !g.is_zero() {
                let fg = f.multiply(&g);
                prop_assert_eq!(fg.lm(), &f.lm().concat(g.lm()));
                prop_assert_eq!(
                    fg.leading_coefficient().unwrap(),
                    &f.leading_coefficient().unwrap().mul(g.leading_coefficient().unwrap())
                );
            }
        }

        #[test]
        fn normalize_is_idempotent(f in arb_poly(3, 4, 6)) {
            let again = Polynomial::normalize(f.terms().iter().map(|(w, c)| (c.clone(), w.clone())));
            prop_assert_eq!(again, f.clone());
            let sf = f.standard_form();
            prop_assert!(sf.is_zero() || sf.is_monic());
            prop_assert_eq!(sf.support().collect::<Vec<_>>(), f.support().collect::<Vec<_>>());
        }
    }
}
