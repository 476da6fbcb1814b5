//! Text formats: polynomials, presentation files and structure-constant files.
//!
//! Polynomial grammar (whitespace is allowed around `+`, `-`, `*`, but not
//! between the letters of one word):
//!
//! ```text
//! expr  := ['-'] term (('+' | '-') term)*
//! term  := rational ['*'] word | rational | word
//! word  := power (['*'] power)*
//! power := letter ['^' digits]
//! ```

use crate::arith::{Field, Rational};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::words::{Alphabet, Word};

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    alphabet: &'a Alphabet,
}

impl Cursor<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { position: self.pos, message: message.into() })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    // peek past whitespace without consuming it
    fn peek_after_ws(&self) -> Option<char> {
        self.chars[self.pos..].iter().copied().find(|c| !c.is_whitespace())
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn rational(&mut self) -> Result<Option<Rational>> {
        let start = self.pos;
        let Some(num) = self.digits() else { return Ok(None) };
        let mut text = num;
        if self.peek() == Some('/') {
            self.pos += 1;
            let Some(den) = self.digits() else { return self.err("expected denominator after `/`") };
            text.push('/');
            text.push_str(&den);
        }
        match text.parse::<Rational>() {
            Ok(r) => Ok(Some(r)),
            Err(Error::DivisionByZero) => Err(Error::Parse { position: start, message: "zero denominator".into() }),
            Err(_) => Err(Error::Parse { position: start, message: format!("bad number `{text}`") }),
        }
    }

    fn is_letter(&self, c: char) -> bool {
        self.alphabet.index_of(c).is_some()
    }

    fn power(&mut self, out: &mut Word) -> Result<()> {
        let c = self.peek().unwrap();
        let Some(letter) = self.alphabet.index_of(c) else {
            return self.err(format!("undeclared letter `{c}`"));
        };
        self.pos += 1;
        let mut n = 1usize;
        if self.peek() == Some('^') {
            self.pos += 1;
            let at = self.pos;
            let Some(d) = self.digits() else { return self.err("expected exponent after `^`") };
            n = d.parse().map_err(|_| Error::Parse { position: at, message: "exponent too large".into() })?;
        }
        for _ in 0..n {
            out.push(letter);
        }
        Ok(())
    }

    fn word(&mut self) -> Result<Word> {
        let mut w = Word::empty();
        self.power(&mut w)?;
        loop {
            match self.peek() {
                Some(c) if self.is_letter(c) => self.power(&mut w)?,
                Some(c) if c.is_alphabetic() => return self.err(format!("undeclared letter `{c}`")),
                Some('*') | Some(' ') | Some('\t') => {
                    let save = self.pos;
                    self.skip_ws();
                    if self.peek() == Some('*') {
                        self.pos += 1;
                        self.skip_ws();
                        match self.peek() {
                            Some(c) if self.is_letter(c) => self.power(&mut w)?,
                            Some(c) if c.is_alphabetic() => return self.err(format!("undeclared letter `{c}`")),
                            _ => return self.err("expected a letter after `*`"),
                        }
                    } else if self.peek().is_some_and(|c| c.is_alphabetic() || c.is_ascii_digit()) {
                        return self.err("whitespace inside a word");
                    } else {
                        self.pos = save;
                        return Ok(w);
                    }
                }
                _ => return Ok(w),
            }
        }
    }

    fn term(&mut self) -> Result<(Rational, Word)> {
        self.skip_ws();
        let coef = self.rational()?;
        let after_num = self.pos;
        self.skip_ws();
        let mut starred = false;
        if coef.is_some() && self.peek() == Some('*') {
            self.pos += 1;
            self.skip_ws();
            starred = true;
        }
        match self.peek() {
            Some(c) if self.is_letter(c) => {
                let w = self.word()?;
                Ok((coef.unwrap_or_else(Rational::one), w))
            }
            Some(c) if c.is_alphabetic() => self.err(format!("undeclared letter `{c}`")),
            _ if starred => self.err("expected a word after `*`"),
            _ => match coef {
                Some(c) => {
                    self.pos = after_num;
                    Ok((c, Word::empty()))
                }
                None => self.err("expected a term"),
            },
        }
    }
}

/// Parses a polynomial over `alphabet`, normalizing like terms.
pub fn parse_polynomial(text: &str, alphabet: &Alphabet) -> Result<Polynomial> {
    let mut cur = Cursor { chars: text.chars().collect(), pos: 0, alphabet };
    let mut terms = Vec::new();
    cur.skip_ws();
    if cur.peek().is_none() {
        return cur.err("empty polynomial");
    }
    let mut negate = false;
    if cur.peek() == Some('-') {
        negate = true;
        cur.pos += 1;
    } else if cur.peek() == Some('+') {
        cur.pos += 1;
    }
    loop {
        let (c, w) = cur.term()?;
        terms.push((if negate { c.neg() } else { c }, w));
        cur.skip_ws();
        match cur.peek() {
            None => break,
            Some('+') => negate = false,
            Some('-') => negate = true,
            Some(c) => return cur.err(format!("unexpected `{c}`")),
        }
        cur.pos += 1;
        if cur.peek_after_ws().is_none() {
            return cur.err("expected a term after operator");
        }
    }
    Ok(Polynomial::normalize(terms))
}

/// A relation may be written `lhs = rhs`, meaning `lhs - rhs`.
pub fn parse_relation(text: &str, alphabet: &Alphabet) -> Result<Polynomial> {
    match text.split_once('=') {
        Some((l, r)) => {
            let lhs = parse_polynomial(l, alphabet)?;
            let rhs = parse_polynomial(r, alphabet).map_err(|e| match e {
                Error::Parse { position, message } => {
                    Error::Parse { position: position + l.chars().count() + 1, message }
                }
                e => e,
            })?;
            Ok(lhs.sub(&rhs))
        }
        None => parse_polynomial(text, alphabet),
    }
}

/// Contents of a presentation file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationFile {
    pub label: Option<String>,
    pub alphabet: Alphabet,
    pub relations: Vec<Polynomial>,
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(a, _)| a).trim()
}

fn line_error(line: usize, e: Error) -> Error {
    match e {
        Error::Parse { position, message } => Error::Parse {
            position,
            message: format!("line {line}: {message}"),
        },
        e => e,
    }
}

/// ```text
/// # comment
/// label: S2
/// alphabet: a b c
/// relations:
/// a^2 - a
/// ba + ab
/// ```
pub fn parse_presentation_file(text: &str) -> Result<PresentationFile> {
    let mut label = None;
    let mut alphabet: Option<Alphabet> = None;
    let mut relations = Vec::new();
    let mut in_relations = false;
    for (n, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let lineno = n + 1;
        if let Some(rest) = line.strip_prefix("label:") {
            label = Some(rest.trim().to_string());
        } else if let Some(rest) = line.strip_prefix("alphabet:") {
            let letters: Vec<char> = rest
                .split_whitespace()
                .map(|tok| {
                    let mut cs = tok.chars();
                    match (cs.next(), cs.next()) {
                        (Some(c), None) => Ok(c),
                        _ => Err(Error::Parse {
                            position: 0,
                            message: format!("line {lineno}: letter `{tok}` must be a single character"),
                        }),
                    }
                })
                .collect::<Result<_>>()?;
            alphabet = Some(Alphabet::new(letters)?);
        } else if let Some(rest) = line.strip_prefix("relations:") {
            in_relations = true;
            if !rest.trim().is_empty() {
                return Err(Error::Parse {
                    position: 0,
                    message: format!("line {lineno}: relations start on the next line"),
                });
            }
        } else if in_relations {
            let Some(alpha) = &alphabet else {
                return Err(Error::Parse { position: 0, message: format!("line {lineno}: relations before alphabet") });
            };
            relations.push(parse_relation(line, alpha).map_err(|e| line_error(lineno, e))?);
        } else {
            return Err(Error::Parse { position: 0, message: format!("line {lineno}: unrecognized line `{line}`") });
        }
    }
    let Some(alphabet) = alphabet else {
        return Err(Error::Parse { position: 0, message: "missing `alphabet:` line".into() });
    };
    Ok(PresentationFile { label, alphabet, relations })
}

/// Raw content of a structure-constant file: dimension, arity, and the
/// listed products as `(indices, [(coefficient, basis index)])`, all 0-based.
/// `(indices, Σ coefficient · x_index)`, 0-based.
pub type Product = (Vec<usize>, Vec<(Rational, usize)>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantsFile {
    pub dim: usize,
    pub arity: usize,
    pub products: Vec<Product>,
}

/// ```text
/// dim 3
/// arity 2
/// 1 2 -> 2*x3
/// 2 1 -> -2*x3
/// ```
///
/// Indices are 1-based in the file; unlisted products are zero.
pub fn parse_constants_file(text: &str) -> Result<ConstantsFile> {
    let mut dim = None;
    let mut arity = None;
    let mut products = Vec::new();
    let perr = |lineno: usize, m: String| Error::Parse { position: 0, message: format!("line {lineno}: {m}") };
    for (n, raw) in text.lines().enumerate() {
        let lineno = n + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let num = |s: &str| s.trim().parse::<usize>().map_err(|_| perr(lineno, format!("expected a number, got `{}`", s.trim())));
        if let Some(rest) = line.strip_prefix("dim") {
            dim = Some(num(rest)?);
            continue;
        }
        if let Some(rest) = line.strip_prefix("arity") {
            arity = Some(num(rest)?);
            continue;
        }
        let (Some(d), Some(k)) = (dim, arity) else {
            return Err(perr(lineno, "`dim` and `arity` must come first".into()));
        };
        let Some((lhs, rhs)) = line.split_once("->") else {
            return Err(perr(lineno, "expected `i1 ... in -> rhs`".into()));
        };
        let idx: Vec<usize> = lhs.split_whitespace().map(num).collect::<Result<_>>()?;
        if idx.len() != k {
            return Err(perr(lineno, format!("expected {k} indices, got {}", idx.len())));
        }
        if idx.iter().any(|&i| i == 0 || i > d) {
            return Err(perr(lineno, format!("index out of range 1..={d}")));
        }
        let rhs_terms = parse_linear_combination(rhs, d).map_err(|m| perr(lineno, m))?;
        products.push((idx.iter().map(|i| i - 1).collect(), rhs_terms));
    }
    match (dim, arity) {
        (Some(dim), Some(arity)) => Ok(ConstantsFile { dim, arity, products }),
        _ => Err(Error::Parse { position: 0, message: "missing `dim` or `arity`".into() }),
    }
}

// `c*x3 - x1 + 1/2 x2`, or `0`
fn parse_linear_combination(text: &str, dim: usize) -> std::result::Result<Vec<(Rational, usize)>, String> {
    let t = text.trim();
    if t == "0" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut rest = t;
    let mut first = true;
    while !rest.is_empty() {
        let mut sign = Rational::one();
        if let Some(r) = rest.strip_prefix('-') {
            sign = sign.neg();
            rest = r.trim_start();
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r.trim_start();
        } else if !first {
            return Err(format!("expected `+` or `-` before `{rest}`"));
        }
        first = false;
        let end = rest[1..].find(['+', '-']).map_or(rest.len(), |i| i + 1);
        let term = rest[..end].trim();
        rest = rest[end..].trim_start();
        let (coef, var) = match term.rfind('x') {
            Some(i) => (term[..i].trim().trim_end_matches('*').trim(), &term[i + 1..]),
            None => return Err(format!("expected a basis element `x<i>` in `{term}`")),
        };
        let c = if coef.is_empty() {
            Rational::one()
        } else {
            coef.parse::<Rational>().map_err(|_| format!("bad coefficient `{coef}`"))?
        };
        let j: usize = var.trim().parse().map_err(|_| format!("bad basis index in `{term}`"))?;
        if j == 0 || j > dim {
            return Err(format!("basis index {j} out of range 1..={dim}"));
        }
        out.push((sign.mul(&c), j - 1));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Alphabet {
        Alphabet::standard(3).unwrap()
    }

    #[test]
    fn accepted_forms() {
        let a = abc();
        let f = parse_polynomial("2*a*c*b + 1", &a).unwrap();
        assert_eq!(f, parse_polynomial("2acb+1", &a).unwrap());
        assert_eq!(f, parse_polynomial(" 2 * a * c * b + 1 ", &a).unwrap());
        assert_eq!(parse_polynomial("a^2b", &a).unwrap(), parse_polynomial("aab", &a).unwrap());
        assert_eq!(parse_polynomial("-a", &a).unwrap().display(&a).to_string(), "-a");
        assert_eq!(parse_polynomial("1", &a).unwrap(), Polynomial::one());
        assert_eq!(parse_polynomial("-1/2 a", &a).unwrap().display(&a).to_string(), "-1/2*a");
        assert!(parse_polynomial("a - a", &a).unwrap().is_zero());
        assert!(parse_polynomial("0", &a).unwrap().is_zero());
    }

    #[test]
    fn rejected_forms() {
        let a = abc();
        for bad in ["", "a +", "b a", "2 3", "a^", "1/0 a", "x", "a ** b", "(a)", "a*"] {
            assert!(
                matches!(parse_polynomial(bad, &a), Err(Error::Parse { .. })),
                "accepted `{bad}`"
            );
        }
        match parse_polynomial("ab + d", &a) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 5),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn relation_with_equals() {
        let a = abc();
        assert_eq!(
            parse_relation("c^2 = a + b", &a).unwrap(),
            parse_polynomial("c^2 - b - a", &a).unwrap()
        );
    }

    #[test]
    fn presentation_file() {
        let text = "# S2\nlabel: S2\nalphabet: a b c\nrelations:\na^2 - a\nba + ab  # comment\n\nc^2 - b - a\n";
        let pf = parse_presentation_file(text).unwrap();
        assert_eq!(pf.label.as_deref(), Some("S2"));
        assert_eq!(pf.alphabet.len(), 3);
        assert_eq!(pf.relations.len(), 3);
        assert!(parse_presentation_file("relations:\na\n").is_err());
        assert!(parse_presentation_file("alphabet: a b\nrelations:\nc\n").is_err());
        assert!(parse_presentation_file("alphabet: a a\n").is_err());
    }

    #[test]
    fn constants_file() {
        let text = "dim 3\narity 2\n# sl2\n1 2 -> -x3\n2 1 -> x3\n3 1 -> 2*x1\n1 3 -> -2 x1\n";
        let cf = parse_constants_file(text).unwrap();
        assert_eq!(cf.dim, 3);
        assert_eq!(cf.arity, 2);
        assert_eq!(cf.products[0], (vec![0, 1], vec![(Rational::from_integer(-1), 2)]));
        assert_eq!(cf.products[3].1, vec![(Rational::from_integer(-2), 0)]);
        assert!(parse_constants_file("dim 2\narity 2\n1 3 -> x1\n").is_err());
        assert!(parse_constants_file("dim 2\narity 2\n1 -> x1\n").is_err());
        assert!(parse_constants_file("1 1 -> x1\n").is_err());
        let z = parse_constants_file("dim 1\narity 3\n1 1 1 -> 0\n").unwrap();
        assert!(z.products[0].1.is_empty());
    }
}
