//! Presentations of universal associative envelopes.
//!
//! An `n`-ary system with basis `b_1..b_d` and structure constants
//! `ω(b_{i1},…,b_{in}) = Σ_j c^j b_j` has envelope `F⟨b_1..b_d⟩ / I`, where `I`
//! is generated by `ω(b_{i1},…,b_{in}) − Σ_j c^j b_j` with `ω` expanded as a
//! combination of associative products.

use std::collections::HashSet;
use std::fmt;

use crate::arith::{Field, Rational};
use crate::cli::parse::ConstantsFile;
use crate::error::{Error, Result};
use crate::groebner::Presentation;
use crate::poly::Polynomial;
use crate::reduce::self_reduce;
use crate::words::{Alphabet, Word, MAX_LETTERS};

/// `ω(a_1,…,a_n) = Σ x_σ a_{σ(1)}⋯a_{σ(n)}`. Permutations are stored 0-based:
/// `perm[k]` is the argument placed in slot `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultilinearOperation {
    pub name: String,
    arity: usize,
    terms: Vec<(Rational, Vec<usize>)>,
}

impl MultilinearOperation {
    pub fn new(name: impl Into<String>, arity: usize, terms: Vec<(Rational, Vec<usize>)>) -> Result<Self> {
        if arity == 0 {
            return Err(Error::Operation("arity must be positive".into()));
        }
        let mut seen = HashSet::new();
        for (_, p) in &terms {
            let mut sorted = p.clone();
            sorted.sort_unstable();
            if sorted != (0..arity).collect::<Vec<_>>() {
                return Err(Error::Operation(format!("{p:?} is not a permutation of {arity} arguments")));
            }
            if !seen.insert(p.clone()) {
                return Err(Error::Operation(format!("permutation {p:?} repeated")));
            }
        }
        let terms: Vec<_> = terms.into_iter().filter(|(c, _)| !c.is_zero()).collect();
        if terms.is_empty() {
            return Err(Error::Operation("no nonzero terms".into()));
        }
        Ok(MultilinearOperation { name: name.into(), arity, terms })
    }

    /// Parses a combination of argument orderings such as
    /// `abc - acb - bca + cba` or `abc + 2acb`. The arguments are the letters of the first
    /// term, in alphabetical order.
    pub fn parse(name: impl Into<String>, text: &str) -> Result<Self> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut raw: Vec<(Rational, String)> = Vec::new();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let mut sign = Rational::one();
            if let Some(r) = rest.strip_prefix('-') {
                sign = sign.neg();
                rest = r;
            } else if let Some(r) = rest.strip_prefix('+') {
                rest = r;
            } else if !raw.is_empty() {
                return Err(Error::Operation(format!("expected `+` or `-` at `{rest}`")));
            }
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let term = &rest[..end];
            rest = &rest[end..];
            let split = term.find(|c: char| c.is_alphabetic()).unwrap_or(term.len());
            let coef = term[..split].trim_end_matches('*');
            let c = if coef.is_empty() {
                Rational::one()
            } else {
                coef.parse::<Rational>().map_err(|_| Error::Operation(format!("bad coefficient `{coef}`")))?
            };
            raw.push((sign.mul(&c), term[split..].to_string()));
        }
        let Some((_, first)) = raw.first() else {
            return Err(Error::Operation("empty operation".into()));
        };
        let mut args: Vec<char> = first.chars().collect();
        args.sort_unstable();
        let terms = raw
            .iter()
            .map(|(c, w)| {
                let perm = w
                    .chars()
                    .map(|ch| {
                        args.iter()
                            .position(|&a| a == ch)
                            .ok_or_else(|| Error::Operation(format!("unknown argument `{ch}` in `{w}`")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok((c.clone(), perm))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(name, args.len(), terms)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &[(Rational, Vec<usize>)] {
        &self.terms
    }

    /// `ω` on basis letters `args`, as an element of the free algebra.
    pub fn expand(&self, args: &[u8]) -> Polynomial {
        Polynomial::normalize(self.terms.iter().map(|(c, p)| {
            (c.clone(), Word::from_letters(&p.iter().map(|&k| args[k]).collect::<Vec<_>>()))
        }))
    }

    /// `ω` on matrices.
    pub fn evaluate(&self, args: &[&Matrix]) -> Matrix {
        let m = args[0].size();
        let mut acc = Matrix::zero(m);
        for (c, p) in &self.terms {
            let mut prod = args[p[0]].clone();
            for &k in &p[1..] {
                prod = prod.mul(args[k]);
            }
            acc = acc.add(&prod.scale(c));
        }
        acc
    }
}

impl fmt::Display for MultilinearOperation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<char> = if self.arity <= 4 && self.name == "tetrad" {
            "wxyz".chars().collect()
        } else {
            (0..self.arity).map(default_letter).collect()
        };
        for (n, (c, p)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !abs.is_one() {
                write!(f, "{abs}")?;
            }
            for &k in p {
                write!(f, "{}", names[k])?;
            }
        }
        Ok(())
    }
}

fn default_letter(i: usize) -> char {
    const EXTRA: &str = "αβγδεζηθικλμνξοπ";
    match i {
        0..26 => (b'a' + i as u8) as char,
        26..52 => (b'A' + (i - 26) as u8) as char,
        _ => EXTRA.chars().nth(i - 52).expect("at most 64 letters"),
    }
}

/// `a, b, c, …, z, A, …, Z`, then Greek letters, up to 64.
pub fn default_alphabet(d: usize) -> Result<Alphabet> {
    if d > MAX_LETTERS {
        return Err(Error::Alphabet(format!("{d} basis elements exceeds {MAX_LETTERS}")));
    }
    Alphabet::new((0..d).map(default_letter))
}

/// Structure constants of a `d`-dimensional `n`-ary system, dense.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    dim: usize,
    arity: usize,
    // tuple index (base d, first argument most significant) -> coefficients
    table: Vec<Vec<Rational>>,
    alphabet: Alphabet,
}

impl StructureConstants {
    pub fn zero(dim: usize, arity: usize) -> Result<Self> {
        Self::zero_with_alphabet(default_alphabet(dim)?, arity)
    }

    pub fn zero_with_alphabet(alphabet: Alphabet, arity: usize) -> Result<Self> {
        let dim = alphabet.len();
        if dim == 0 || arity == 0 {
            return Err(Error::StructureConstants("dimension and arity must be positive".into()));
        }
        let n = dim.checked_pow(arity as u32).filter(|&n| n <= 1 << 20).ok_or_else(|| {
            Error::StructureConstants(format!("{dim}^{arity} products is too many"))
        })?;
        Ok(StructureConstants { dim, arity, table: vec![vec![Rational::zero(); dim]; n], alphabet })
    }

    pub fn from_file(file: &ConstantsFile) -> Result<Self> {
        let mut sc = Self::zero(file.dim, file.arity)?;
        for (idx, terms) in &file.products {
            let mut v = vec![Rational::zero(); file.dim];
            for (c, j) in terms {
                v[*j] = v[*j].add(c);
            }
            sc.set(idx, v);
        }
        Ok(sc)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn with_alphabet(mut self, alphabet: Alphabet) -> Result<Self> {
        if alphabet.len() != self.dim {
            return Err(Error::Alphabet(format!("need {} letters, got {}", self.dim, alphabet.len())));
        }
        self.alphabet = alphabet;
        Ok(self)
    }

    fn slot(&self, idx: &[usize]) -> usize {
        assert_eq!(idx.len(), self.arity, "index tuple has wrong length");
        idx.iter().fold(0, |acc, &i| {
            assert!(i < self.dim, "basis index out of range");
            acc * self.dim + i
        })
    }

    /// Coefficients of the product of the 0-based basis elements `idx`.
    pub fn get(&self, idx: &[usize]) -> &[Rational] {
        &self.table[self.slot(idx)]
    }

    pub fn set(&mut self, idx: &[usize], coefficients: Vec<Rational>) {
        assert_eq!(coefficients.len(), self.dim);
        let s = self.slot(idx);
        self.table[s] = coefficients;
    }

    /// All index tuples in lexicographic order.
    pub fn tuples(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.table.len()).map(move |mut t| {
            let mut idx = vec![0; self.arity];
            for k in (0..self.arity).rev() {
                idx[k] = t % self.dim;
                t /= self.dim;
            }
            idx
        })
    }

    /// The element `Σ_j c^j b_j` as a polynomial of degree 1.
    pub fn product_polynomial(&self, idx: &[usize]) -> Polynomial {
        Polynomial::normalize(self.get(idx).iter().enumerate().map(|(j, c)| (c.clone(), Word::letter(j as u8))))
    }

    /// True when permuting the arguments by `perm` leaves every product
    /// unchanged.
    pub fn is_invariant_under(&self, perm: &[usize]) -> bool {
        self.tuples().all(|idx| {
            let moved: Vec<usize> = perm.iter().map(|&k| idx[k]).collect();
            self.get(&idx) == self.get(&moved)
        })
    }

    /// File form accepted by `parse_constants_file`; zero products omitted.
    pub fn to_text(&self) -> String {
        let mut out = format!("dim {}\narity {}\n", self.dim, self.arity);
        for idx in self.tuples() {
            let v = self.get(&idx);
            if v.iter().all(Rational::is_zero) {
                continue;
            }
            let lhs: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
            let mut rhs = String::new();
            for (j, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let neg = c.is_negative();
                let abs = if neg { c.neg() } else { c.clone() };
                rhs.push_str(match (rhs.is_empty(), neg) {
                    (true, true) => "-",
                    (true, false) => "",
                    (false, true) => " - ",
                    (false, false) => " + ",
                });
                if !abs.is_one() {
                    rhs.push_str(&format!("{abs}*"));
                }
                rhs.push_str(&format!("x{}", j + 1));
            }
            out.push_str(&format!("{} -> {}\n", lhs.join(" "), rhs));
        }
        out
    }
}

fn check_bilinear(sc: &StructureConstants) -> Result<()> {
    if sc.arity != 2 {
        return Err(Error::ArityMismatch { operation: 2, constants: sc.arity });
    }
    Ok(())
}

/// Envelope of a Lie algebra: `x_i x_j − x_j x_i − Σ_k c_{ij}^k x_k` for
/// `i > j`, after checking antisymmetry and the Jacobi identity.
pub fn lie_presentation(sc: &StructureConstants) -> Result<Presentation> {
    check_bilinear(sc)?;
    let d = sc.dim;
    let name = |i: usize| sc.alphabet.letter(i as u8);
    for i in 0..d {
        for j in 0..d {
            let (u, v) = (sc.get(&[i, j]), sc.get(&[j, i]));
            if u.iter().zip(v).any(|(a, b)| !a.add(b).is_zero()) {
                return Err(Error::StructureConstants(format!(
                    "not antisymmetric at ({}, {})",
                    name(i),
                    name(j)
                )));
            }
        }
    }
    // [[x,y],z] + [[y,z],x] + [[z,x],y] = 0
    let bracket_vec = |v: &[Rational], k: usize| -> Vec<Rational> {
        let mut out = vec![Rational::zero(); d];
        for (m, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (t, e) in sc.get(&[m, k]).iter().enumerate() {
                out[t] = out[t].add(&c.mul(e));
            }
        }
        out
    };
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let a = bracket_vec(sc.get(&[i, j]), k);
                let b = bracket_vec(sc.get(&[j, k]), i);
                let c = bracket_vec(sc.get(&[k, i]), j);
                if (0..d).any(|t| !a[t].add(&b[t]).add(&c[t]).is_zero()) {
                    return Err(Error::StructureConstants(format!(
                        "Jacobi identity fails at ({}, {}, {})",
                        name(i),
                        name(j),
                        name(k)
                    )));
                }
            }
        }
    }
    let mut gens = Vec::new();
    for i in 0..d {
        for j in 0..i {
            let (xi, xj) = (i as u8, j as u8);
            let comm = Polynomial::normalize([
                (Rational::one(), Word::from_letters(&[xi, xj])),
                (Rational::one().neg(), Word::from_letters(&[xj, xi])),
            ]);
            gens.push(comm.sub(&sc.product_polynomial(&[i, j])));
        }
    }
    Presentation::new(sc.alphabet.clone(), gens)
}

/// Envelope of a Jordan algebra (product `x∘y` with no ½):
/// `sf(x_i x_j + x_j x_i − Σ_k c_{ij}^k x_k)` for `j ≤ i`.
pub fn jordan_presentation(sc: &StructureConstants) -> Result<Presentation> {
    check_bilinear(sc)?;
    let d = sc.dim;
    for i in 0..d {
        for j in 0..i {
            if sc.get(&[i, j]) != sc.get(&[j, i]) {
                return Err(Error::StructureConstants(format!(
                    "not symmetric at ({}, {})",
                    sc.alphabet.letter(i as u8),
                    sc.alphabet.letter(j as u8)
                )));
            }
        }
    }
    let mut gens = Vec::new();
    for i in 0..d {
        for j in 0..=i {
            let (xi, xj) = (i as u8, j as u8);
            let sym = Polynomial::normalize([
                (Rational::one(), Word::from_letters(&[xi, xj])),
                (Rational::one(), Word::from_letters(&[xj, xi])),
            ]);
            gens.push(sym.sub(&sc.product_polynomial(&[i, j])).standard_form());
        }
    }
    Presentation::new(sc.alphabet.clone(), gens)
}

/// The `d^n` generators `ω(b_{i1},…,b_{in}) − Σ_j c^j b_j`, one per index
/// tuple in lexicographic order, before any reduction.
pub fn nary_raw_generators(op: &MultilinearOperation, sc: &StructureConstants) -> Result<Vec<Polynomial>> {
    if op.arity != sc.arity {
        return Err(Error::ArityMismatch { operation: op.arity, constants: sc.arity });
    }
    Ok(sc
        .tuples()
        .map(|idx| {
            let args: Vec<u8> = idx.iter().map(|&i| i as u8).collect();
            op.expand(&args).sub(&sc.product_polynomial(&idx))
        })
        .collect())
}

/// Envelope presentation for any arity; the generators are self-reduced.
pub fn nary_presentation(op: &MultilinearOperation, sc: &StructureConstants) -> Result<Presentation> {
    let raw = nary_raw_generators(op, sc)?;
    Presentation::new(sc.alphabet.clone(), self_reduce(&raw))
}

/// Dense square matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    m: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    pub fn zero(m: usize) -> Self {
        Matrix { m, entries: vec![Rational::zero(); m * m] }
    }

    /// The matrix unit `E_{ij}`, 0-based.
    pub fn unit(m: usize, i: usize, j: usize) -> Self {
        let mut a = Self::zero(m);
        a.entries[i * m + j] = Rational::one();
        a
    }

    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let m = rows.len();
        assert!(rows.iter().all(|r| r.len() == m), "matrix must be square");
        Matrix { m, entries: rows.iter().flat_map(|r| r.iter().map(|&x| Rational::from_integer(x))).collect() }
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.m + j]
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        Matrix { m: self.m, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix { m: self.m, entries: self.entries.iter().map(|a| a.mul(c)).collect() }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let m = self.m;
        let mut out = Matrix::zero(m);
        for i in 0..m {
            for k in 0..m {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..m {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * m + j] = out.entries[i * m + j].add(&a.mul(b));
                    }
                }
            }
        }
        out
    }
}

/// Solves `Σ x_k cols[k] = target` exactly; `None` if there is no solution.
/// Requires the columns to be linearly independent.
fn solve(cols: &[&[Rational]], target: &[Rational]) -> Option<Vec<Rational>> {
    let d = cols.len();
    let rows = target.len();
    let mut a: Vec<Vec<Rational>> =
        (0..rows).map(|r| cols.iter().map(|c| c[r].clone()).chain([target[r].clone()]).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..d {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for v in a[r].iter_mut() {
            *v = v.mul(&inv);
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for k in 0..=d {
                    let t = a[r][k].mul(&f);
                    a[i][k] = a[i][k].sub(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[d].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); d];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = a[i][d].clone();
    }
    Some(x)
}

fn rank(cols: &[&[Rational]]) -> usize {
    let rows = cols.first().map_or(0, |c| c.len());
    let mut a: Vec<Vec<Rational>> = (0..rows).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    let mut r = 0;
    for c in 0..cols.len() {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for i in r + 1..rows {
            if !a[i][c].is_zero() {
                let f = a[i][c].mul(&inv);
                for k in c..cols.len() {
                    let t = a[r][k].mul(&f);
                    a[i][k] = a[i][k].sub(&t);
                }
            }
        }
        r += 1;
    }
    r
}

/// A linearly independent set of `m×m` matrices spanning a system. When
/// `arity` is set, the span is checked to be closed under `arity`-fold
/// associative products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixSystem {
    pub name: String,
    pub arity: Option<usize>,
    basis: Vec<Matrix>,
    alphabet: Alphabet,
}

impl MatrixSystem {
    pub fn new(name: impl Into<String>, basis: Vec<Matrix>, arity: Option<usize>) -> Result<Self> {
        let alphabet = default_alphabet(basis.len())?;
        Self::with_alphabet(name, basis, arity, alphabet)
    }

    pub fn with_alphabet(
        name: impl Into<String>,
        basis: Vec<Matrix>,
        arity: Option<usize>,
        alphabet: Alphabet,
    ) -> Result<Self> {
        let Some(first) = basis.first() else {
            return Err(Error::MatrixSystem("empty basis".into()));
        };
        let m = first.size();
        if basis.iter().any(|b| b.size() != m) {
            return Err(Error::MatrixSystem("basis matrices differ in size".into()));
        }
        if alphabet.len() != basis.len() {
            return Err(Error::MatrixSystem(format!("{} names for {} basis elements", alphabet.len(), basis.len())));
        }
        let cols: Vec<&[Rational]> = basis.iter().map(|b| b.entries.as_slice()).collect();
        if rank(&cols) != basis.len() {
            return Err(Error::MatrixSystem("basis is linearly dependent".into()));
        }
        let sys = MatrixSystem { name: name.into(), arity, basis, alphabet };
        if let Some(n) = arity {
            let assoc = MultilinearOperation::new("product", n, vec![(Rational::one(), (0..n).collect())])?;
            let closed = StructureConstants::zero(sys.dim(), n)?
                .tuples()
                .all(|idx| sys.coordinates(&assoc.evaluate(&sys.args(&idx))).is_ok());
            if !closed {
                return Err(Error::MatrixSystem(format!("span is not closed under {n}-fold products")));
            }
        }
        Ok(sys)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn args(&self, idx: &[usize]) -> Vec<&Matrix> {
        idx.iter().map(|&i| &self.basis[i]).collect()
    }

    /// Coordinates of `a` in the basis.
    pub fn coordinates(&self, a: &Matrix) -> Result<Vec<Rational>> {
        let cols: Vec<&[Rational]> = self.basis.iter().map(|b| b.entries.as_slice()).collect();
        solve(&cols, &a.entries).ok_or(Error::OutsideSpan)
    }
}

/// Structure constants of `op` on the span of `sys`, by exact evaluation.
pub fn matrix_structure_constants(sys: &MatrixSystem, op: &MultilinearOperation) -> Result<StructureConstants> {
    let mut sc = StructureConstants::zero_with_alphabet(sys.alphabet.clone(), op.arity)?;
    let tuples: Vec<Vec<usize>> = sc.tuples().collect();
    for idx in tuples {
        let v = sys.coordinates(&op.evaluate(&sys.args(&idx)))?;
        sc.set(&idx, v);
    }
    Ok(sc)
}

/// Keys of the built-in operations, bilinear first.
pub const OPERATION_KEYS: &[&str] = &[
    "lie-bracket",
    "jordan-product",
    "symmetric-sum",
    "alternating-sum",
    "cyclic-sum",
    "lie-inf",
    "lie-half",
    "jordan-inf",
    "jordan-0",
    "jordan-1",
    "jordan-half",
    "anti-jordan-inf",
    "anti-jordan-neg1",
    "anti-jordan-half",
    "anti-jordan-2",
    "fourth-inf",
    "fourth-0",
    "fourth-1",
    "fourth-neg1",
    "fourth-2",
    "fourth-half",
    "cyclic-commutator",
    "weakly-commutative",
    "weakly-anticommutative",
    "tetrad",
];

/// A built-in operation by key; see [`OPERATION_KEYS`].
pub fn builtin_operation(key: &str) -> Result<MultilinearOperation> {
    let text = match key {
        "lie-bracket" => "ab - ba",
        "jordan-product" => "ab + ba",
        "symmetric-sum" => "abc + acb + bac + bca + cab + cba",
        "alternating-sum" => "abc - acb - bac + bca + cab - cba",
        "cyclic-sum" => "abc + bca + cab",
        "lie-inf" => "abc - acb - bca + cba",
        "lie-half" => "abc + acb - bca - cba",
        "jordan-inf" => "abc + cba",
        "jordan-0" => "abc + bac",
        "jordan-1" => "abc + acb",
        "jordan-half" => "abc + 2acb + 2cab + cba",
        "anti-jordan-inf" => "abc - 2acb + 2cab - cba",
        "anti-jordan-neg1" => "abc - acb",
        "anti-jordan-half" => "abc - cba",
        "anti-jordan-2" => "abc - bac",
        "fourth-inf" => "abc - acb - bac",
        "fourth-0" => "abc - acb + bca",
        "fourth-1" => "abc - bac + cab",
        "fourth-neg1" => "abc + bac + cab",
        "fourth-2" => "abc + acb + bca",
        "fourth-half" => "abc + acb + bac",
        "cyclic-commutator" => "abc - bca",
        "weakly-commutative" => "abc + acb + bac - cba",
        "weakly-anticommutative" => "abc + acb - bca - cab",
        "tetrad" => "wxyz + zyxw",
        _ => return Err(Error::UnknownKey(key.to_string())),
    };
    MultilinearOperation::parse(key, text)
}

/// Keys of the built-in systems; `a(p,q)` stands for any `p, q ≥ 1`.
pub const SYSTEM_KEYS: &[&str] = &["sl2", "s2", "m2-units", "a(p,q)"];

/// The associative triple system `A_{p,q}`: off-diagonal block matrix units
/// of size `p+q`, upper-right block first, each block row by row.
pub fn a_pq(p: usize, q: usize) -> Result<MatrixSystem> {
    if p == 0 || q == 0 || 2 * p * q > MAX_LETTERS {
        return Err(Error::MatrixSystem(format!("a({p},{q}) is out of range")));
    }
    let m = p + q;
    let mut basis = Vec::new();
    for r in 0..p {
        for c in p..m {
            basis.push(Matrix::unit(m, r, c));
        }
    }
    for r in p..m {
        for c in 0..p {
            basis.push(Matrix::unit(m, r, c));
        }
    }
    MatrixSystem::new(format!("a({p},{q})"), basis, Some(3))
}

fn parse_apq(key: &str) -> Option<(usize, usize)> {
    let inner = key.strip_prefix("a(")?.strip_suffix(')')?;
    let (p, q) = inner.split_once(',')?;
    Some((p.trim().parse().ok()?, q.trim().parse().ok()?))
}

/// A built-in system and the operation it is usually paired with, if any.
pub fn builtin_system(key: &str) -> Result<(MatrixSystem, Option<MultilinearOperation>)> {
    match key {
        "sl2" => {
            let basis = vec![Matrix::unit(2, 1, 0), Matrix::unit(2, 0, 1), Matrix::from_rows(&[&[1, 0], &[0, -1]])];
            let names = Alphabet::new(['f', 'e', 'h'])?;
            Ok((MatrixSystem::with_alphabet("sl2", basis, None, names)?, Some(builtin_operation("lie-bracket")?)))
        }
        "s2" => {
            let basis = vec![Matrix::unit(2, 0, 0), Matrix::unit(2, 1, 1), Matrix::from_rows(&[&[0, 1], &[1, 0]])];
            Ok((MatrixSystem::new("s2", basis, None)?, Some(builtin_operation("jordan-product")?)))
        }
        "m2-units" => {
            let basis = vec![Matrix::unit(2, 0, 0), Matrix::unit(2, 0, 1), Matrix::unit(2, 1, 0), Matrix::unit(2, 1, 1)];
            Ok((MatrixSystem::new("m2-units", basis, Some(2))?, Some(builtin_operation("jordan-product")?)))
        }
        _ => match parse_apq(key) {
            Some((p, q)) => Ok((a_pq(p, q)?, None)),
            None => Err(Error::UnknownKey(key.to_string())),
        },
    }
}

/// Envelope presentation of `op` on `sys`, labelled `system/op`.
pub fn envelope_presentation(sys: &MatrixSystem, op: &MultilinearOperation) -> Result<Presentation> {
    let sc = matrix_structure_constants(sys, op)?;
    Ok(nary_presentation(op, &sc)?.with_label(format!("{}/{}", sys.name, op.name)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::tests::p;

    fn sorted(mut v: Vec<Polynomial>) -> Vec<Polynomial> {
        v.sort();
        v
    }

    #[test]
    fn operation_parsing() {
        let op = builtin_operation("lie-inf").unwrap();
        assert_eq!(op.arity(), 3);
        assert_eq!(op.to_string(), "abc - acb - bca + cba");
        assert_eq!(builtin_operation("anti-jordan-half").unwrap().to_string(), "abc - cba");
        assert_eq!(builtin_operation("jordan-half").unwrap().to_string(), "abc + 2acb + 2cab + cba");
        let t = builtin_operation("tetrad").unwrap();
        assert_eq!(t.arity(), 4);
        assert_eq!(t.terms()[1].1, vec![3, 2, 1, 0]);
        assert_eq!(t.to_string(), "wxyz + zyxw");
        assert!(matches!(builtin_operation("nope"), Err(Error::UnknownKey(_))));
        assert!(MultilinearOperation::parse("x", "abc + abd").is_err());
        assert!(MultilinearOperation::parse("x", "abc + abc").is_err());
        assert!(MultilinearOperation::parse("x", "abc - abc + 0acb").is_err());
        for key in OPERATION_KEYS {
            builtin_operation(key).unwrap();
        }
        assert_eq!(OPERATION_KEYS.len(), 25);
    }

    #[test]
    fn sl2_presentation() {
        let (sys, op) = builtin_system("sl2").unwrap();
        let sc = matrix_structure_constants(&sys, &op.unwrap()).unwrap();
        let pr = lie_presentation(&sc).unwrap();
        let a = &pr.alphabet;
        assert_eq!(
            sorted(pr.generators.clone()),
            sorted(vec![p(a, "he - eh - 2e"), p(a, "hf - fh + 2f"), p(a, "ef - fe - h")])
        );
    }

    #[test]
    fn lie_validation() {
        let mut sc = StructureConstants::zero(3, 2).unwrap();
        let a = sc.alphabet().clone();
        let pr = lie_presentation(&sc).unwrap();
        assert_eq!(pr.generators, vec![p(&a, "ba - ab"), p(&a, "ca - ac"), p(&a, "cb - bc")]);
        let q = Rational::from_integer;
        sc.set(&[0, 1], vec![q(0), q(0), q(1)]);
        assert!(matches!(lie_presentation(&sc), Err(Error::StructureConstants(_))));
        sc.set(&[1, 0], vec![q(0), q(0), q(-1)]);
        lie_presentation(&sc).unwrap();
        // [a,b] = c, [c,a] = a breaks Jacobi
        sc.set(&[2, 0], vec![q(1), q(0), q(0)]);
        sc.set(&[0, 2], vec![q(-1), q(0), q(0)]);
        match lie_presentation(&sc) {
            Err(Error::StructureConstants(m)) => assert!(m.contains("Jacobi"), "{m}"),
            other => panic!("{other:?}"),
        }
        let mut solv = StructureConstants::zero(2, 2).unwrap();
        solv.set(&[0, 1], vec![q(0), q(1)]);
        solv.set(&[1, 0], vec![q(0), q(-1)]);
        let b = solv.alphabet().clone();
        assert_eq!(lie_presentation(&solv).unwrap().generators, vec![p(&b, "ba - ab + b")]);
    }

    #[test]
    fn jordan_presentations() {
        let (sys, op) = builtin_system("s2").unwrap();
        let sc = matrix_structure_constants(&sys, &op.unwrap()).unwrap();
        let pr = jordan_presentation(&sc).unwrap();
        let a = &pr.alphabet;
        let expect = ["a^2 - a", "ba + ab", "b^2 - b", "ca + ac - c", "cb + bc - c", "c^2 - b - a"];
        assert_eq!(sorted(pr.generators.clone()), sorted(expect.iter().map(|s| p(a, s)).collect()));

        let z = StructureConstants::zero(2, 2).unwrap();
        let b = z.alphabet().clone();
        assert_eq!(
            sorted(jordan_presentation(&z).unwrap().generators),
            sorted(vec![p(&b, "a^2"), p(&b, "ba + ab"), p(&b, "b^2")])
        );
        let mut one = StructureConstants::zero(1, 2).unwrap();
        one.set(&[0, 0], vec![Rational::from_integer(2)]);
        let c = one.alphabet().clone();
        assert_eq!(jordan_presentation(&one).unwrap().generators, vec![p(&c, "a^2 - a")]);

        let mut bad = StructureConstants::zero(2, 2).unwrap();
        bad.set(&[0, 1], vec![Rational::one(), Rational::zero()]);
        assert!(matches!(jordan_presentation(&bad), Err(Error::StructureConstants(_))));
        let tri = StructureConstants::zero(2, 3).unwrap();
        assert_eq!(jordan_presentation(&tri), Err(Error::ArityMismatch { operation: 2, constants: 3 }));
    }

    #[test]
    fn matrix_constants() {
        let (m2, op) = builtin_system("m2-units").unwrap();
        let sc = matrix_structure_constants(&m2, &op.unwrap()).unwrap();
        // c∘a = E21E11 + E11E21 = E21
        assert_eq!(sc.product_polynomial(&[2, 0]), p(m2.alphabet(), "c"));
        let (a1, _) = builtin_system("a(1,1)").unwrap();
        let jt = builtin_operation("jordan-inf").unwrap();
        let sc = matrix_structure_constants(&a1, &jt).unwrap();
        assert_eq!(sc.get(&[0, 1, 0]), &[Rational::from_integer(2), Rational::zero()]);
        let sl2 = builtin_system("sl2").unwrap().0;
        let prod = MultilinearOperation::parse("product", "ab").unwrap();
        assert_eq!(matrix_structure_constants(&sl2, &prod).unwrap_err(), Error::OutsideSpan);
    }

    #[test]
    fn matrix_system_validation() {
        assert!(MatrixSystem::new("dup", vec![Matrix::unit(2, 0, 1), Matrix::unit(2, 0, 1)], None).is_err());
        assert!(MatrixSystem::new("open", vec![Matrix::unit(2, 0, 1), Matrix::unit(2, 1, 0)], Some(2)).is_err());
        assert!(MatrixSystem::new("a11", vec![Matrix::unit(2, 0, 1), Matrix::unit(2, 1, 0)], Some(3)).is_ok());
        assert_eq!(a_pq(1, 2).unwrap().dim(), 4);
        assert_eq!(a_pq(1, 3).unwrap().dim(), 6);
        assert_eq!(a_pq(2, 3).unwrap().dim(), 12);
        assert!(builtin_system("a(0,2)").is_err());
        assert!(matches!(builtin_system("b(1,2)"), Err(Error::UnknownKey(_))));
    }

    #[test]
    fn raw_generator_count_and_symmetry() {
        let (m2, _) = builtin_system("m2-units").unwrap();
        let tetrad = builtin_operation("tetrad").unwrap();
        let sc = matrix_structure_constants(&m2, &tetrad).unwrap();
        assert_eq!(nary_raw_generators(&tetrad, &sc).unwrap().len(), 256);
        assert!(sc.is_invariant_under(&[3, 2, 1, 0]));
        let (a2, _) = builtin_system("a(1,2)").unwrap();
        let sym = builtin_operation("symmetric-sum").unwrap();
        let sc = matrix_structure_constants(&a2, &sym).unwrap();
        for perm in [[1, 0, 2], [0, 2, 1], [2, 0, 1]] {
            assert!(sc.is_invariant_under(&perm));
        }
        let lie = builtin_operation("lie-bracket").unwrap();
        assert_eq!(
            nary_raw_generators(&lie, &sc),
            Err(Error::ArityMismatch { operation: 2, constants: 3 })
        );
    }

    #[test]
    fn constants_text_roundtrip() {
        let (sys, op) = builtin_system("sl2").unwrap();
        let sc = matrix_structure_constants(&sys, &op.unwrap()).unwrap();
        let back = StructureConstants::from_file(&crate::cli::parse::parse_constants_file(&sc.to_text()).unwrap())
            .unwrap()
            .with_alphabet(sc.alphabet().clone())
            .unwrap();
        assert_eq!(back, sc);
    }

    #[test]
    fn a2_symmetric_sum_starts_with_cube() {
        let (a2, _) = builtin_system("a(1,2)").unwrap();
        let pr = envelope_presentation(&a2, &builtin_operation("symmetric-sum").unwrap()).unwrap();
        let a = &pr.alphabet;
        assert_eq!(pr.generators.len(), 20);
        assert_eq!(pr.generators[0], p(a, "a^3"));
        assert_eq!(pr.generators[1], p(a, "ba^2 + aba + a^2b"));
    }
}
