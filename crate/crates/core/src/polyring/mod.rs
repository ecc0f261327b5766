//! Exact arithmetic: rationals, sparse multivariate polynomials over named
//! variables, monomial orders and the polynomial expression grammar.

mod gcd;
mod matrix;
mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;
use thiserror::Error;

pub use gcd::{gcd_multivariate, gcd_many};
pub use matrix::{rank_rat, PolyMatrix};
pub use parse::parse_poly;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rat = num_rational::BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Formats a rational as `a` or `a/b`.
pub fn format_rat(q: &Rat) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `a` or `a/b` (optionally signed).
pub fn parse_rat(text: &str) -> Result<Rat, PolyError> {
    let t = text.trim();
    let bad = || PolyError::Syntax {
        pos: 0,
        msg: format!("invalid rational literal '{t}'"),
    };
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(PolyError::Syntax {
            pos: 0,
            msg: "zero denominator".into(),
        });
    }
    Ok(Rat::new(n, d))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable '{name}' at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("bad exponent at position {pos}: {msg}")]
    BadExponent { pos: usize, msg: String },
    #[error("variable sets differ: [{left}] vs [{right}]")]
    VarSetMismatch { left: String, right: String },
    #[error("invalid variable name '{0}'")]
    InvalidVarName(String),
    #[error("duplicate variable name '{0}'")]
    DuplicateVar(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix shape mismatch")]
    ShapeMismatch,
    #[error("variable '{0}' collides with an existing variable")]
    VariableCollision(String),
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Ordered list of distinct variable names.
#[derive(Clone)]
pub struct VarSet {
    names: Arc<[String]>,
}

impl VarSet {
    pub fn new<I, S>(names: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if !valid_name(n) {
                return Err(PolyError::InvalidVarName(n.clone()));
            }
            if names[..i].contains(n) {
                return Err(PolyError::DuplicateVar(n.clone()));
            }
        }
        Ok(VarSet {
            names: names.into(),
        })
    }

    /// `prefix1 .. prefixN`.
    pub fn indexed(prefix: &str, count: usize) -> Self {
        VarSet::new((1..=count).map(|i| format!("{prefix}{i}"))).expect("indexed names are valid")
    }

    pub fn empty() -> Self {
        VarSet { names: Arc::from(Vec::new()) }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    /// This set followed by `more`; fails on collisions.
    pub fn extend<I, S>(&self, more: I) -> Result<VarSet, PolyError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut all: Vec<String> = self.names.to_vec();
        for m in more {
            let m = m.into();
            if all.contains(&m) {
                return Err(PolyError::VariableCollision(m));
            }
            all.push(m);
        }
        VarSet::new(all)
    }

    /// `more` followed by this set.
    pub fn prepend<I, S>(&self, more: I) -> Result<VarSet, PolyError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let front: Vec<String> = more.into_iter().map(Into::into).collect();
        VarSet::new(front).and_then(|f| f.extend(self.names.iter().cloned()))
    }

    /// A name starting with `stem` that is not yet in the set.
    pub fn fresh_name(&self, stem: &str) -> String {
        if !self.contains(stem) {
            return stem.to_string();
        }
        (1..)
            .map(|i| format!("{stem}_{i}"))
            .find(|n| !self.contains(n))
            .unwrap()
    }

    fn same(&self, other: &VarSet) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }

    fn check(&self, other: &VarSet) -> Result<(), PolyError> {
        if self.same(other) {
            Ok(())
        } else {
            Err(PolyError::VarSetMismatch {
                left: self.names.join(","),
                right: other.names.join(","),
            })
        }
    }
}

impl PartialEq for VarSet {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for VarSet {}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names.iter()).finish()
    }
}

/// Exponent vector indexed by variable position.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono(SmallVec<[u16; 16]>);

impl Mono {
    pub fn one(nvars: usize) -> Self {
        Mono(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exps(exps: &[u32]) -> Self {
        Mono(exps.iter().map(|&e| e as u16).collect())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Mono::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0[i] as u32
    }

    pub fn exps(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().map(|&e| e as u32)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Mono) -> Option<Mono> {
        if self.divides(other) {
            Some(Mono(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub(crate) fn set_exp(&mut self, i: usize, e: u32) {
        self.0[i] = e as u16;
    }

    pub(crate) fn with_len(&self, len: usize, map: impl Fn(usize) -> Option<usize>) -> Mono {
        let mut m = Mono::one(len);
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                let j = map(i).expect("variable mapped");
                m.0[j] = e;
            }
        }
        m
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Total monomial orders compatible with multiplication.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    Lex,
    #[default]
    Grevlex,
    /// Grevlex on the first `k` variables, ties broken by grevlex on the rest;
    /// eliminates the first `k` variables.
    Elimination(usize),
}

fn grevlex_range(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Mono, b: &Mono) -> Ordering {
        match *self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::Grevlex => grevlex_range(&a.0, &b.0),
            MonomialOrder::Elimination(k) => {
                let k = k.min(a.0.len());
                grevlex_range(&a.0[..k], &b.0[..k]).then_with(|| grevlex_range(&a.0[k..], &b.0[k..]))
            }
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        match text {
            "lex" => Some(MonomialOrder::Lex),
            "grevlex" => Some(MonomialOrder::Grevlex),
            _ => text
                .strip_prefix("elim")
                .and_then(|k| k.trim_start_matches(['(', ':', '-']).trim_end_matches(')').parse().ok())
                .map(MonomialOrder::Elimination),
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::Grevlex => write!(f, "grevlex"),
            MonomialOrder::Elimination(k) => write!(f, "elim({k})"),
        }
    }
}

/// Sparse polynomial with rational coefficients over a [`VarSet`].
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    vars: VarSet,
    terms: BTreeMap<Mono, Rat>,
}

impl Poly {
    pub fn zero(vars: &VarSet) -> Self {
        Poly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &VarSet, c: Rat) -> Self {
        let mut p = Poly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Mono::one(vars.len()), c);
        }
        p
    }

    pub fn one(vars: &VarSet) -> Self {
        Poly::constant(vars, Rat::one())
    }

    pub fn int(vars: &VarSet, n: i64) -> Self {
        Poly::constant(vars, rat(n))
    }

    /// The variable at position `i`.
    pub fn var_at(vars: &VarSet, i: usize) -> Self {
        Poly::monomial(vars, Mono::var(vars.len(), i), Rat::one())
    }

    pub fn var(vars: &VarSet, name: &str) -> Result<Self, PolyError> {
        let i = vars.index_of(name).ok_or_else(|| PolyError::UnknownVariable {
            name: name.to_string(),
            pos: 0,
        })?;
        Ok(Poly::var_at(vars, i))
    }

    pub fn monomial(vars: &VarSet, m: Mono, c: Rat) -> Self {
        let mut p = Poly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(vars: &VarSet, terms: impl IntoIterator<Item = (Mono, Rat)>) -> Self {
        let mut p = Poly::zero(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Mono::is_one)
    }

    /// Constant value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_zero() {
            Some(Rat::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Mono::degree).max()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(i)).max().unwrap_or(0)
    }

    /// Indices of variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.vars.len()).filter(|&i| self.degree_in(i) > 0).collect()
    }

    pub fn is_homogeneous_in(&self, idx: &[usize]) -> bool {
        let mut deg = None;
        for m in self.terms.keys() {
            let d: u32 = idx.iter().map(|&i| m.exp(i)).sum();
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return false,
                _ => {}
            }
        }
        true
    }

    /// Leading term under `order`.
    pub fn leading(&self, order: MonomialOrder) -> Option<(&Mono, &Rat)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    /// Terms sorted in descending `order`.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(&Mono, &Rat)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| order.cmp(b.0, a.0));
        t
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.vars);
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Divides by the grevlex-leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.leading(MonomialOrder::Grevlex) {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Multiplies by a rational so that coefficients are coprime integers
    /// with positive grevlex-leading coefficient.
    pub fn primitive_integer(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let lcm_den = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let gcd_num = self
            .terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(&(c.numer() * (&lcm_den / c.denom()))));
        let mut f = Rat::new(lcm_den, gcd_num);
        if self.leading(MonomialOrder::Grevlex).unwrap().1.is_negative() {
            f = -f;
        }
        self.scale(&f)
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.vars.check(&other.vars)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.vars.check(&other.vars)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.vars.check(&other.vars)?;
        let mut out = Poly::zero(&self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn mul_mono(&self, m: &Mono, c: &Rat) -> Poly {
        Poly::from_terms(
            &self.vars,
            self.terms.iter().map(|(k, v)| (k.mul(m), v * c)),
        )
    }

    /// Formal partial derivative with respect to `name`.
    pub fn differentiate(&self, name: &str) -> Result<Poly, PolyError> {
        let i = self.vars.index_of(name).ok_or_else(|| PolyError::UnknownVariable {
            name: name.to_string(),
            pos: 0,
        })?;
        Ok(self.differentiate_at(i))
    }

    pub fn differentiate_at(&self, i: usize) -> Poly {
        let mut out = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e > 0 {
                let mut m2 = m.clone();
                m2.set_exp(i, e - 1);
                out.add_term(m2, c * rat(e as i64));
            }
        }
        out
    }

    /// Substitutes rational values; the result lives over the unbound variables.
    pub fn evaluate(&self, bindings: &[(&str, Rat)]) -> Result<Poly, PolyError> {
        let mut values: Vec<Option<Rat>> = vec![None; self.vars.len()];
        for (name, v) in bindings {
            let i = self.vars.index_of(name).ok_or_else(|| PolyError::UnknownVariable {
                name: name.to_string(),
                pos: 0,
            })?;
            values[i] = Some(v.clone());
        }
        let keep: Vec<usize> = (0..self.vars.len()).filter(|&i| values[i].is_none()).collect();
        let target = VarSet::new(keep.iter().map(|&i| self.vars.name(i).to_string()))?;
        Ok(self.evaluate_into(&values, &target, &keep))
    }

    /// Substitutes rational values but keeps the variable set.
    pub fn evaluate_keep(&self, bindings: &[(&str, Rat)]) -> Result<Poly, PolyError> {
        let mut values: Vec<Option<Rat>> = vec![None; self.vars.len()];
        for (name, v) in bindings {
            let i = self.vars.index_of(name).ok_or_else(|| PolyError::UnknownVariable {
                name: name.to_string(),
                pos: 0,
            })?;
            values[i] = Some(v.clone());
        }
        let keep: Vec<usize> = (0..self.vars.len()).collect();
        let mut out = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            let mut m2 = m.clone();
            for (i, v) in values.iter().enumerate() {
                if let Some(v) = v {
                    let e = m.exp(i);
                    if e > 0 {
                        coef *= num_traits::pow(v.clone(), e as usize);
                        m2.set_exp(i, 0);
                    }
                }
            }
            out.add_term(m2, coef);
        }
        let _ = keep;
        Ok(out)
    }

    fn evaluate_into(&self, values: &[Option<Rat>], target: &VarSet, keep: &[usize]) -> Poly {
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            for (i, v) in values.iter().enumerate() {
                if let Some(v) = v {
                    let e = m.exp(i);
                    if e > 0 {
                        coef *= num_traits::pow(v.clone(), e as usize);
                    }
                }
            }
            let mut m2 = Mono::one(target.len());
            for (j, &i) in keep.iter().enumerate() {
                m2.set_exp(j, m.exp(i));
            }
            out.add_term(m2, coef);
        }
        out
    }

    /// Maps every variable to a polynomial over `target` (`images[i]` replaces variable `i`).
    pub fn substitute(&self, target: &VarSet, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.vars.len());
        let mut cache: Vec<Vec<Poly>> = vec![Vec::new(); self.vars.len()];
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for i in 0..self.vars.len() {
                let e = m.exp(i) as usize;
                if e == 0 {
                    continue;
                }
                let powers = &mut cache[i];
                if powers.is_empty() {
                    powers.push(Poly::one(target));
                }
                while powers.len() <= e {
                    let next = &powers[powers.len() - 1] * &images[i];
                    powers.push(next);
                }
                t = &t * &powers[e];
            }
            for (k, v) in t.terms {
                out.add_term(k, v);
            }
        }
        out
    }

    /// Re-expresses the polynomial over a variable set containing all of its
    /// variables (matched by name).
    pub fn embed(&self, target: &VarSet) -> Result<Poly, PolyError> {
        if self.vars == *target {
            return Ok(self.clone());
        }
        let map: Vec<Option<usize>> = self.vars.names().iter().map(|n| target.index_of(n)).collect();
        for i in self.support() {
            if map[i].is_none() {
                return Err(PolyError::UnknownVariable {
                    name: self.vars.name(i).to_string(),
                    pos: 0,
                });
            }
        }
        Ok(Poly::from_terms(
            target,
            self.terms
                .iter()
                .map(|(m, c)| (m.with_len(target.len(), |i| map[i]), c.clone())),
        ))
    }

    /// Renames variables positionally (same length).
    pub fn rename(&self, target: &VarSet) -> Poly {
        assert_eq!(target.len(), self.vars.len());
        Poly {
            vars: target.clone(),
            terms: self.terms.clone(),
        }
    }

    /// Coefficients with respect to variable `i`: entry `k` multiplies `x_i^k`.
    pub(crate) fn coefficients_in(&self, i: usize) -> Vec<Poly> {
        let deg = self.degree_in(i) as usize;
        let mut out = vec![Poly::zero(&self.vars); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exp(i) as usize;
            let mut m2 = m.clone();
            m2.set_exp(i, 0);
            out[e].add_term(m2, c.clone());
        }
        out
    }

    pub(crate) fn from_coefficients_in(vars: &VarSet, i: usize, coeffs: &[Poly]) -> Poly {
        let mut out = Poly::zero(vars);
        for (k, c) in coeffs.iter().enumerate() {
            for (m, v) in &c.terms {
                let mut m2 = m.clone();
                m2.set_exp(i, m.exp(i) + k as u32);
                out.add_term(m2, v.clone());
            }
        }
        out
    }

    /// Division with remainder by a single polynomial under `order`.
    pub fn div_rem(&self, divisor: &Poly, order: MonomialOrder) -> Result<(Poly, Poly), PolyError> {
        self.vars.check(&divisor.vars)?;
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let (lm, lc) = {
            let (m, c) = divisor.leading(order).unwrap();
            (m.clone(), c.clone())
        };
        let mut q = Poly::zero(&self.vars);
        let mut r = Poly::zero(&self.vars);
        let mut p = self.clone();
        while let Some((m, c)) = p.leading(order).map(|(m, c)| (m.clone(), c.clone())) {
            match lm.quotient_of(&m) {
                Some(t) => {
                    let f = &c / &lc;
                    p = &p - &divisor.mul_mono(&t, &f);
                    q.add_term(t, f);
                }
                None => {
                    p.terms.remove(&m);
                    r.add_term(m, c);
                }
            }
        }
        Ok((q, r))
    }

    /// Exact quotient, or `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        if divisor.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(divisor, MonomialOrder::Grevlex).ok()?;
        r.is_zero().then_some(q)
    }

    /// Square root with positive grevlex-leading coefficient, or `None`.
    pub fn square_root(&self) -> Option<Poly> {
        poly_square_root(self)
    }
}

/// Returns `s` with `s*s == p`, leading coefficient positive, or `None`
/// (the NotASquare marker).
pub fn poly_square_root(p: &Poly) -> Option<Poly> {
    let order = MonomialOrder::Grevlex;
    if p.is_zero() {
        return Some(p.clone());
    }
    let (lm, lc) = p.leading(order).unwrap();
    if lc.is_negative() || lm.exps().any(|e| e % 2 == 1) {
        return None;
    }
    let root_c = rational_sqrt(lc)?;
    let root_m = Mono(lm.0.iter().map(|e| e / 2).collect());
    let mut s = Poly::monomial(&p.vars, root_m.clone(), root_c.clone());
    let two_lc = &root_c * rat(2);
    let mut last = root_m.clone();
    loop {
        let r = p - &(&s * &s);
        let Some((rm, rc)) = r.leading(order) else {
            return Some(s);
        };
        let t = root_m.quotient_of(rm)?;
        if order.cmp(&t, &last) != Ordering::Less {
            return None;
        }
        let c = rc / &two_lc;
        s.add_term(t.clone(), c);
        last = t;
    }
}

fn rational_sqrt(q: &Rat) -> Option<Rat> {
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| Rat::new(n, d))
}

impl Poly {
    /// Prints with terms sorted by grevlex on each block of variable indices
    /// in turn (earlier blocks dominate); [`Display`](fmt::Display) is the
    /// single-block case.
    pub fn format_blocks(&self, blocks: &[Vec<usize>]) -> String {
        let mut t: Vec<(&Mono, &Rat)> = self.terms.iter().collect();
        let key = |m: &Mono, b: &[usize]| Mono::from_exps(&b.iter().map(|&i| m.exp(i)).collect::<Vec<_>>());
        t.sort_by(|a, b| {
            for blk in blocks {
                let o = MonomialOrder::Grevlex.cmp(&key(b.0, blk), &key(a.0, blk));
                if o != Ordering::Equal {
                    return o;
                }
            }
            MonomialOrder::Grevlex.cmp(b.0, a.0)
        });
        let mut s = String::new();
        self.write_terms(&mut s, &t).unwrap();
        s
    }

    fn write_terms(&self, f: &mut impl fmt::Write, terms: &[(&Mono, &Rat)]) -> fmt::Result {
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, &(m, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(format_rat(&abs));
            }
            for (i, e) in m.exps().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars.name(i).to_string()),
                    _ => factors.push(format!("{}^{}", self.vars.name(i), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_terms(f, &self.sorted_terms(MonomialOrder::Grevlex))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $call:ident) => {
        impl std::ops::$tr<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                self.$call(rhs).expect("polynomials over different variable sets")
            }
        }
        impl std::ops::$tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$call(&rhs).expect("polynomials over different variable sets")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rat::one())
    }
}

impl std::ops::Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Operations of the `poly_arith` contract.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Pow,
}

/// `a op b`; for [`ArithOp::Pow`] `b` must be a nonnegative integer constant.
pub fn poly_arith(a: &Poly, b: &Poly, op: ArithOp) -> Result<Poly, PolyError> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_sub(b),
        ArithOp::Mul => a.try_mul(b),
        ArithOp::Pow => {
            let bad = || PolyError::BadExponent {
                pos: 0,
                msg: format!("exponent '{b}' is not a nonnegative integer"),
            };
            let e = b.as_constant().ok_or_else(bad)?;
            if !e.is_integer() || e.is_negative() {
                return Err(bad());
            }
            let e: u32 = e.to_integer().try_into().map_err(|_| bad())?;
            Ok(a.pow(e))
        }
    }
}

/// `det(var*I - m)` over the variables of `m` extended by `var`.
pub fn char_poly(m: &PolyMatrix, var: &str) -> Result<Poly, PolyError> {
    m.char_poly(var)
}
