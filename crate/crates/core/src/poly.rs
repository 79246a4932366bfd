//! Sparse multivariate polynomials over the rationals, the differential
//! action of the dual ring, and block decompositions of the variable set.
//!
//! A polynomial lives over a named variable list `x_0, …, x_n`. The dual ring
//! uses the same index space: a polynomial `g` read as an operator substitutes
//! `∂/∂x_i` for its `i`-th variable. There is no separate dual type.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{q, SparseVec, Q};

/// Exponent vector, one entry per ambient variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&a| a as usize).sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        other
            .divides(self)
            .then(|| Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn times_var(&self, i: usize) -> Monomial {
        let mut e = self.0.clone();
        e[i] += 1;
        Monomial(e)
    }

    /// Lowest common multiple.
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] > 0).collect()
    }
}

/// `α! / (α−β)!` for `β ≤ α`, the constant of `∂^β x^α`.
pub(crate) fn falling_factor(alpha: &Monomial, beta: &Monomial) -> BigInt {
    let mut acc = BigInt::one();
    for (&a, &b) in alpha.0.iter().zip(&beta.0) {
        for k in 0..b {
            acc *= BigInt::from(a - k);
        }
    }
    acc
}

/// Number of monomials of degree `e` in `n` variables.
pub fn monomial_count(n: usize, e: usize) -> usize {
    if n == 0 {
        return usize::from(e == 0);
    }
    // C(n - 1 + e, e), kept in u128 to avoid overflow at desk sizes.
    let mut acc: u128 = 1;
    for k in 1..=e as u128 {
        acc = acc * (n as u128 - 1 + k) / k;
    }
    usize::try_from(acc).unwrap_or(usize::MAX)
}

/// Monomials of one degree in descending lex order (`x0^e` first), with a
/// reverse index. These fix the coordinates of every graded piece.
#[derive(Debug)]
pub struct DegreeBasis {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl DegreeBasis {
    fn build(n: usize, e: usize) -> Self {
        let mut monomials = Vec::with_capacity(monomial_count(n, e));
        let mut cur = vec![0u32; n];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            let n = cur.len();
            if n == 0 {
                if left == 0 {
                    out.push(Monomial(Vec::new()));
                }
                return;
            }
            if i == n - 1 {
                cur[i] = left;
                out.push(Monomial(cur.clone()));
                return;
            }
            for a in (0..=left).rev() {
                cur[i] = a;
                rec(i + 1, left - a, cur, out);
            }
        }
        rec(0, e as u32, &mut cur, &mut monomials);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(k, m)| (m.clone(), k))
            .collect();
        Self { monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn get(&self, k: usize) -> &Monomial {
        &self.monomials[k]
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// Shared, cached basis of degree-`e` monomials in `n` variables.
pub fn degree_basis(n: usize, e: usize) -> Arc<DegreeBasis> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<DegreeBasis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(b) = cache.lock().expect("basis cache").get(&(n, e)) {
        return Arc::clone(b);
    }
    let b = Arc::new(DegreeBasis::build(n, e));
    cache
        .lock()
        .expect("basis cache")
        .entry((n, e))
        .or_insert(b)
        .clone()
}

/// Multivariate polynomial over named variables with exact rational
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Q>,
    /// `Some(d)` when nonzero and homogeneous of degree `d`.
    degree: Option<usize>,
}

impl Polynomial {
    pub fn zero(vars: Vec<String>) -> Self {
        Self {
            vars,
            terms: BTreeMap::new(),
            degree: None,
        }
    }

    pub fn from_terms(vars: Vec<String>, terms: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let n = vars.len();
        let mut map: BTreeMap<Monomial, Q> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), n, "monomial arity must match the variable list");
            *map.entry(m).or_insert_with(Q::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        let mut degrees = map.keys().map(Monomial::degree);
        let degree = match degrees.next() {
            Some(d) if degrees.all(|e| e == d) => Some(d),
            _ => None,
        };
        Self {
            vars,
            terms: map,
            degree,
        }
    }

    pub fn monomial(vars: Vec<String>, exponents: Vec<u32>, coeff: Q) -> Self {
        Self::from_terms(vars, [(Monomial(exponents), coeff)])
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Q> {
        &self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree.is_some()
    }

    /// Degree when homogeneous and nonzero.
    pub fn degree(&self) -> Option<usize> {
        self.degree
    }

    /// Degree of a homogeneous nonzero form, or an error.
    pub fn form_degree(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        self.degree.ok_or(Error::NotHomogeneous)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Variable indices that appear in some term.
    pub fn support(&self) -> BTreeSet<usize> {
        self.terms.keys().flat_map(|m| m.support()).collect()
    }

    pub fn scale(&self, c: &Q) -> Polynomial {
        Self::from_terms(
            self.vars.clone(),
            self.terms.iter().map(|(m, x)| (m.clone(), x * c)),
        )
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_vars(other)?;
        Ok(Self::from_terms(
            self.vars.clone(),
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(m, c)| (m.clone(), c.clone())),
        ))
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_vars(other)?;
        let mut out = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.push((a.mul(b), x * y));
            }
        }
        Ok(Self::from_terms(self.vars.clone(), out))
    }

    fn same_vars(&self, other: &Polynomial) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VariableMismatch);
        }
        Ok(())
    }

    /// Restricts to the variables `indices` (in that order). Terms involving
    /// any other variable are an error.
    pub fn restrict(&self, indices: &[usize]) -> Result<Polynomial> {
        let vars = indices.iter().map(|&i| self.vars[i].clone()).collect();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let outside = (0..self.nvars()).any(|i| m.0[i] > 0 && !indices.contains(&i));
            if outside {
                return Err(Error::VariableMismatch);
            }
            terms.push((Monomial(indices.iter().map(|&i| m.0[i]).collect()), c.clone()));
        }
        Ok(Self::from_terms(vars, terms))
    }

    /// Embeds into `ambient`, matching variables by name.
    pub fn embed(&self, ambient: &[String]) -> Result<Polynomial> {
        let map = var_positions(&self.vars, ambient)?;
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0; ambient.len()];
            for (k, &a) in m.0.iter().enumerate() {
                e[map[k]] = a;
            }
            (Monomial(e), c.clone())
        });
        Ok(Self::from_terms(ambient.to_vec(), terms))
    }

    /// Coefficient vector in the degree-`e` monomial basis.
    pub fn coefficient_vector(&self, e: usize) -> SparseVec {
        let basis = degree_basis(self.nvars(), e);
        SparseVec::from_entries(
            self.terms
                .iter()
                .filter(|(m, _)| m.degree() == e)
                .map(|(m, c)| (basis.index_of(m).expect("degree matches"), c.clone()))
                .collect(),
        )
    }

    /// Homogeneous polynomial of degree `e` from a coefficient vector.
    pub fn from_coefficients(vars: Vec<String>, e: usize, v: &SparseVec) -> Polynomial {
        let basis = degree_basis(vars.len(), e);
        Self::from_terms(
            vars,
            v.entries().iter().map(|(k, c)| (basis.get(*k).clone(), c.clone())),
        )
    }

    /// Display with dual names `t_x` in place of `x`.
    pub fn display_dual(&self) -> String {
        let dual: Vec<String> = self.vars.iter().map(|v| format!("t_{v}")).collect();
        format_terms(&dual, &self.terms)
    }
}

/// Position of each variable of `sub` inside `ambient`.
pub(crate) fn var_positions(sub: &[String], ambient: &[String]) -> Result<Vec<usize>> {
    sub.iter()
        .map(|v| {
            ambient
                .iter()
                .position(|a| a == v)
                .ok_or_else(|| Error::UnknownVariable(v.clone()))
        })
        .collect()
}

fn format_terms(vars: &[String], terms: &BTreeMap<Monomial, Q>) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    // Descending lex reads naturally: x^3 + x^2*y + ...
    for (k, (m, c)) in terms.iter().rev().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let factors: Vec<String> = m
            .0
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(i, &a)| {
                if a == 1 {
                    vars[i].clone()
                } else {
                    format!("{}^{}", vars[i], a)
                }
            })
            .collect();
        if factors.is_empty() {
            out.push_str(&abs.to_string());
        } else {
            if !abs.is_one() {
                out.push_str(&abs.to_string());
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_terms(&self.vars, &self.terms))
    }
}

/// `g · F`: `g` acts by substituting `∂/∂x_i` for its `i`-th variable.
pub fn apply_operator(g: &Polynomial, f: &Polynomial) -> Result<Polynomial> {
    if g.vars != f.vars {
        return Err(Error::VariableMismatch);
    }
    let mut out = Vec::new();
    for (beta, cg) in &g.terms {
        for (alpha, cf) in &f.terms {
            if let Some(rest) = alpha.div(beta) {
                let k = Q::from_integer(falling_factor(alpha, beta));
                out.push((rest, cg * cf * k));
            }
        }
    }
    Ok(Polynomial::from_terms(f.vars.clone(), out))
}

/// Linear form in the dual variables, stored as a coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm {
    coeffs: Vec<Q>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<Q>) -> Self {
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| q(c)).collect())
    }

    /// Dual variable `t_i` in `n` variables.
    pub fn var(n: usize, i: usize) -> Self {
        let mut c = vec![Q::zero(); n];
        c[i] = Q::one();
        Self::new(c)
    }

    pub fn from_polynomial(p: &Polynomial) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroLinearForm);
        }
        if p.degree() != Some(1) {
            return Err(Error::NotLinear);
        }
        let mut c = vec![Q::zero(); p.nvars()];
        for (m, x) in p.terms() {
            c[m.support()[0]] = x.clone();
        }
        Ok(Self::new(c))
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Single variable up to scale: `Some(i)` when only `t_i` appears.
    pub fn as_variable(&self) -> Option<usize> {
        let mut nz = self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero());
        match (nz.next(), nz.next()) {
            (Some((i, _)), None) => Some(i),
            _ => None,
        }
    }

    pub fn to_polynomial(&self, vars: &[String]) -> Polynomial {
        assert_eq!(vars.len(), self.coeffs.len());
        let n = vars.len();
        Polynomial::from_terms(
            vars.to_vec(),
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(n, i), c.clone())),
        )
    }

    pub fn add(&self, other: &LinearForm) -> LinearForm {
        LinearForm::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect())
    }

    /// Pads from block coordinates to ambient coordinates.
    pub fn embed(&self, positions: &[usize], n: usize) -> LinearForm {
        let mut c = vec![Q::zero(); n];
        for (k, &p) in positions.iter().enumerate() {
            c[p] = self.coeffs[k].clone();
        }
        LinearForm::new(c)
    }

    pub fn restrict(&self, positions: &[usize]) -> LinearForm {
        LinearForm::new(positions.iter().map(|&p| self.coeffs[p].clone()).collect())
    }

    /// Human form using dual names, e.g. `t_x + 2*t_z`.
    pub fn display(&self, vars: &[String]) -> String {
        self.to_polynomial(vars).display_dual()
    }
}

/// Natural ordering for variable names: alphabetic prefix, then numeric
/// suffix by value (`x2 < x10`).
pub fn natural_var_order(a: &str, b: &str) -> std::cmp::Ordering {
    fn key(s: &str) -> (&str, Option<u128>, &str) {
        let split = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
        let (head, tail) = s.split_at(split);
        let num = (!tail.is_empty() && tail.chars().all(|c| c.is_ascii_digit()))
            .then(|| tail.parse().ok())
            .flatten();
        (head, num, s)
    }
    key(a).cmp(&key(b))
}

#[derive(Debug)]
struct RawTerm {
    coeff: Q,
    powers: Vec<(String, u32, usize)>,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse"))
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        if !self.src.get(self.pos).is_some_and(u8::is_ascii_alphabetic) {
            return self.err("expected a variable name");
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii")
            .to_string())
    }

    fn power(&mut self, out: &mut Vec<(String, u32, usize)>) -> Result<()> {
        self.skip_ws();
        let at = self.pos;
        let name = self.ident()?;
        let mut exp = 1u32;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let k = self.integer()?;
            exp = match u32::try_from(k) {
                Ok(k) => k,
                Err(_) => return self.err("exponent too large"),
            };
        }
        out.push((name, exp, at));
        Ok(())
    }

    fn term(&mut self, sign: i64) -> Result<RawTerm> {
        let mut coeff = q(sign);
        let mut powers = Vec::new();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let mut c = Q::from_integer(num);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let den = self.integer()?;
                    if den.is_zero() {
                        return self.err("zero denominator");
                    }
                    c /= Q::from_integer(den);
                }
                coeff *= c;
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    self.power(&mut powers)?;
                }
            }
            Some(c) if c.is_ascii_alphabetic() => self.power(&mut powers)?,
            Some(_) => return self.err("expected a coefficient or variable"),
            None => return self.err("unexpected end of input"),
        }
        while self.peek() == Some(b'*') {
            self.pos += 1;
            self.power(&mut powers)?;
        }
        Ok(RawTerm { coeff, powers })
    }

    fn terms(&mut self) -> Result<Vec<RawTerm>> {
        let mut out = Vec::new();
        let mut sign = 1;
        match self.peek() {
            Some(b'+') => self.pos += 1,
            Some(b'-') => {
                sign = -1;
                self.pos += 1;
            }
            _ => {}
        }
        loop {
            out.push(self.term(sign)?);
            match self.peek() {
                None => break,
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                Some(_) => return self.err("expected `+`, `-`, `*` or end of input"),
            }
            self.pos += 1;
        }
        Ok(out)
    }
}

fn parse_raw(text: &str) -> Result<Vec<RawTerm>> {
    if let Some(pos) = text.find(|c: char| !c.is_ascii()) {
        return Err(Error::Syntax {
            pos,
            msg: "non-ASCII character".into(),
        });
    }
    Parser {
        src: text.as_bytes(),
        pos: 0,
    }
    .terms()
}

fn assemble(raw: Vec<RawTerm>, vars: &[String]) -> Result<Polynomial> {
    let n = vars.len();
    let mut terms = Vec::with_capacity(raw.len());
    for t in raw {
        let mut e = vec![0u32; n];
        for (name, k, _) in t.powers {
            let i = vars
                .iter()
                .position(|v| *v == name)
                .ok_or(Error::UnknownVariable(name))?;
            e[i] += k;
        }
        terms.push((Monomial(e), t.coeff));
    }
    let p = Polynomial::from_terms(vars.to_vec(), terms);
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(p)
}

/// Parses `text` over the given variable list.
pub fn parse_poly(text: &str, vars: &[String]) -> Result<Polynomial> {
    assemble(parse_raw(text)?, vars)
}

/// Parses `text`, taking as variables every name that occurs, in natural order.
pub fn parse_poly_infer(text: &str) -> Result<Polynomial> {
    let raw = parse_raw(text)?;
    let mut names: Vec<String> = raw
        .iter()
        .flat_map(|t| t.powers.iter().map(|(n, _, _)| n.clone()))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    names.sort_by(|a, b| natural_var_order(a, b));
    assemble(raw, &names)
}

/// Parses a linear form over `vars`. Dual names written `t_x` are accepted
/// as well as the bare primal name `x`.
pub fn parse_linear_form(text: &str, vars: &[String]) -> Result<LinearForm> {
    let cleaned = text.replace("t_", "");
    match parse_poly(&cleaned, vars) {
        Err(Error::ZeroPolynomial) => Err(Error::ZeroLinearForm),
        Err(e) => Err(e),
        Ok(p) => LinearForm::from_polynomial(&p),
    }
}

/// Reasons a block decomposition is rejected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum BlockViolation {
    CountMismatch { blocks: usize, forms: usize },
    EmptyBlock { block: usize },
    VariableOutOfRange { block: usize, index: usize },
    Overlap { first: usize, second: usize, variable: String },
    ZeroForm { block: usize },
    NotHomogeneous { block: usize },
    DegreeMismatch { block: usize, expected: usize, found: usize },
    DegreeTooSmall { degree: usize },
    SupportOutsideBlock { block: usize, variable: String },
    AmbientMismatch { block: usize },
}

/// Blocks are numbered from 1.
impl fmt::Display for BlockViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use BlockViolation::*;
        match self {
            CountMismatch { blocks, forms } => write!(f, "{blocks} blocks but {forms} forms"),
            EmptyBlock { block } => write!(f, "block {} has no variables", block + 1),
            VariableOutOfRange { block, index } => write!(f, "block {} uses variable index {index} outside the ambient space", block + 1),
            Overlap { first, second, variable } => write!(f, "blocks {} and {} share `{variable}`", first + 1, second + 1),
            ZeroForm { block } => write!(f, "form {} is zero", block + 1),
            NotHomogeneous { block } => write!(f, "form {} is not homogeneous", block + 1),
            DegreeMismatch { block, expected, found } => {
                write!(f, "form {} has degree {found}, expected {expected}", block + 1)
            }
            DegreeTooSmall { degree } => write!(f, "common degree {degree} is below 2"),
            SupportOutsideBlock { block, variable } => write!(f, "form {} involves `{variable}` outside its block", block + 1),
            AmbientMismatch { block } => write!(f, "form {} is over a different variable list", block + 1),
        }
    }
}

/// `V = V_1 ⊕ ⋯ ⊕ V_m` together with forms `F_i` supported on `V_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    vars: Vec<String>,
    blocks: Vec<Vec<usize>>,
    forms: Vec<Polynomial>,
}

impl BlockDecomposition {
    /// Builds without validation; see [`check_blocks`] and [`Self::validated`].
    pub fn new(vars: Vec<String>, blocks: Vec<Vec<usize>>, forms: Vec<Polynomial>) -> Self {
        let blocks = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        Self { vars, blocks, forms }
    }

    pub fn validated(vars: Vec<String>, blocks: Vec<Vec<usize>>, forms: Vec<Polynomial>) -> Result<Self> {
        let bd = Self::new(vars, blocks, forms);
        let v = check_blocks(&bd);
        if v.is_empty() {
            Ok(bd)
        } else {
            Err(Error::InvalidBlocks(v))
        }
    }

    /// Blocks given by variable names, forms parsed over the union of all
    /// block variables (in declaration order).
    pub fn from_named(blocks: &[(Vec<String>, String)]) -> Result<Self> {
        let mut vars: Vec<String> = Vec::new();
        for (names, _) in blocks {
            for n in names {
                if !vars.contains(n) {
                    vars.push(n.clone());
                }
            }
        }
        let mut idx = Vec::new();
        let mut forms = Vec::new();
        for (names, text) in blocks {
            idx.push(var_positions(names, &vars)?);
            forms.push(parse_poly(text, &vars)?);
        }
        Self::validated(vars, idx, forms)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn forms(&self) -> &[Polynomial] {
        &self.forms
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.forms.first().and_then(Polynomial::degree)
    }

    pub fn block_vars(&self, i: usize) -> Vec<String> {
        self.blocks[i].iter().map(|&k| self.vars[k].clone()).collect()
    }

    /// `F_i` as a polynomial in the block's own variables.
    pub fn block_form(&self, i: usize) -> Result<Polynomial> {
        self.forms[i].restrict(&self.blocks[i])
    }

    /// `F = F_1 + ⋯ + F_m` over the ambient variables.
    pub fn total(&self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(self.vars.clone());
        for f in &self.forms {
            acc = acc.add(f)?;
        }
        Ok(acc)
    }
}

/// Structured list of everything wrong with `bd`; empty when valid.
pub fn check_blocks(bd: &BlockDecomposition) -> Vec<BlockViolation> {
    let mut out = Vec::new();
    if bd.blocks.len() != bd.forms.len() {
        out.push(BlockViolation::CountMismatch {
            blocks: bd.blocks.len(),
            forms: bd.forms.len(),
        });
    }
    let n = bd.vars.len();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for (b, block) in bd.blocks.iter().enumerate() {
        if block.is_empty() {
            out.push(BlockViolation::EmptyBlock { block: b });
        }
        for &i in block {
            if i >= n {
                out.push(BlockViolation::VariableOutOfRange { block: b, index: i });
                continue;
            }
            match owner[i] {
                Some(a) if a != b => out.push(BlockViolation::Overlap {
                    first: a,
                    second: b,
                    variable: bd.vars[i].clone(),
                }),
                _ => owner[i] = Some(b),
            }
        }
    }
    let mut expected: Option<usize> = None;
    for (b, f) in bd.forms.iter().enumerate() {
        if f.vars() != bd.vars.as_slice() {
            out.push(BlockViolation::AmbientMismatch { block: b });
            continue;
        }
        if f.is_zero() {
            out.push(BlockViolation::ZeroForm { block: b });
            continue;
        }
        let Some(d) = f.degree() else {
            out.push(BlockViolation::NotHomogeneous { block: b });
            continue;
        };
        match expected {
            None => expected = Some(d),
            Some(e) if e != d => out.push(BlockViolation::DegreeMismatch {
                block: b,
                expected: e,
                found: d,
            }),
            _ => {}
        }
        if let Some(block) = bd.blocks.get(b) {
            for i in f.support() {
                if !block.contains(&i) {
                    out.push(BlockViolation::SupportOutsideBlock {
                        block: b,
                        variable: bd.vars[i].clone(),
                    });
                }
            }
        }
    }
    if let Some(d) = expected {
        if d < 2 {
            out.push(BlockViolation::DegreeTooSmall { degree: d });
        }
    }
    out
}

/// Random homogeneous form of degree `d` with integer coefficients uniform in
/// `[-bound, bound]`, redrawn until nonzero. Deterministic in `seed`.
pub fn random_form(vars: &[String], d: usize, bound: u32, seed: u64) -> Polynomial {
    assert!(d >= 1 && bound >= 1, "degree and bound must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis = degree_basis(vars.len(), d);
    let b = i64::from(bound);
    loop {
        let terms: Vec<(Monomial, Q)> = basis
            .monomials()
            .iter()
            .map(|m| (m.clone(), q(rng.gen_range(-b..=b))))
            .collect();
        let p = Polynomial::from_terms(vars.to_vec(), terms);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Variable names `prefix0, prefix1, …`.
pub fn var_names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}
