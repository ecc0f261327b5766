//! Higgs fields as commuting polynomial matrices: validation, diagonal
//! shifts, commutants of a Jordan block, pointwise Jordan type.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyring::{format_rat, parse_poly, rank_rat, Poly, PolyMatrix, Rat, VarSet};

/// `n` pairwise commuting `r x r` matrices over the base variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HiggsField {
    base_vars: VarSet,
    matrices: Vec<PolyMatrix>,
}

/// Wire form of a Higgs field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HiggsFieldJson {
    pub base_dim: usize,
    pub rank: usize,
    pub base_vars: Vec<String>,
    pub matrices: Vec<Vec<Vec<String>>>,
}

impl HiggsField {
    pub fn base_vars(&self) -> &VarSet {
        &self.base_vars
    }

    pub fn n(&self) -> usize {
        self.matrices.len()
    }

    pub fn r(&self) -> usize {
        self.matrices[0].rows()
    }

    pub fn matrices(&self) -> &[PolyMatrix] {
        &self.matrices
    }

    pub fn matrix(&self, h: usize) -> Result<&PolyMatrix> {
        self.matrices.get(h).ok_or(Error::NoSuchMatrix(h))
    }

    /// The field with every matrix transposed (still commuting).
    pub fn transpose(&self) -> HiggsField {
        HiggsField {
            base_vars: self.base_vars.clone(),
            matrices: self.matrices.iter().map(PolyMatrix::transpose).collect(),
        }
    }

    pub fn from_json(j: &HiggsFieldJson) -> Result<HiggsField> {
        let vars = VarSet::new(j.base_vars.iter().cloned())?;
        if j.base_dim != vars.len() || j.matrices.len() != j.base_dim {
            return Err(Error::InvalidField(format!(
                "base_dim {} but {} base variables and {} matrices",
                j.base_dim,
                vars.len(),
                j.matrices.len()
            )));
        }
        let mats = j
            .matrices
            .iter()
            .map(|m| {
                if m.len() != j.rank || m.iter().any(|row| row.len() != j.rank) {
                    return Err(Error::InvalidField(format!("matrices must be {0}x{0}", j.rank)));
                }
                Ok(PolyMatrix::parse(m, &vars)?)
            })
            .collect::<Result<Vec<_>>>()?;
        validate_higgs(mats, &vars)
    }

    pub fn to_json(&self) -> HiggsFieldJson {
        HiggsFieldJson {
            base_dim: self.n(),
            rank: self.r(),
            base_vars: self.base_vars.names().to_vec(),
            matrices: self.matrices.iter().map(PolyMatrix::row_strings).collect(),
        }
    }

    /// Parses row-major string matrices over the given base variables.
    pub fn parse(base_vars: &[&str], matrices: &[&[&[&str]]]) -> Result<HiggsField> {
        let vars = VarSet::new(base_vars.iter().copied())?;
        let mats = matrices
            .iter()
            .map(|m| {
                let rows: Vec<Vec<Poly>> = m
                    .iter()
                    .map(|row| row.iter().map(|s| parse_poly(s, &vars)).collect())
                    .collect::<std::result::Result<_, _>>()?;
                Ok(PolyMatrix::from_rows(&vars, rows)?)
            })
            .collect::<Result<Vec<_>>>()?;
        validate_higgs(mats, &vars)
    }
}

/// Coefficients of `φ∧φ` on `dx_h ∧ dx_h'` for `h < h'`: the ordered terms
/// `(h, h')` and `(h', h)` of `Σ φ^a φ^b dx_a ∧ dx_b` combined.
pub fn wedge_square(matrices: &[PolyMatrix]) -> Result<Vec<((usize, usize), PolyMatrix)>> {
    let n = matrices.len();
    let mut out = Vec::new();
    for h in 0..n {
        for h2 in h + 1..n {
            let ab = matrices[h].try_mul(&matrices[h2])?;
            let ba = matrices[h2].try_mul(&matrices[h])?;
            // dx_b ∧ dx_a = -dx_a ∧ dx_b
            out.push(((h, h2), ab.try_sub(&ba)?));
        }
    }
    Ok(out)
}

/// Accepts the matrices iff every pairwise commutator vanishes.
pub fn validate_higgs(matrices: Vec<PolyMatrix>, base_vars: &VarSet) -> Result<HiggsField> {
    if matrices.is_empty() {
        return Err(Error::InvalidField("at least one matrix is required".into()));
    }
    let r = matrices[0].rows();
    if r == 0 {
        return Err(Error::InvalidField("rank must be positive".into()));
    }
    for m in &matrices {
        if m.rows() != r || m.cols() != r {
            return Err(Error::InvalidField(format!("matrices must be {r}x{r}")));
        }
        if m.vars() != base_vars {
            return Err(Error::InvalidField("matrix entries are not over the base variables".into()));
        }
    }
    for ((h, h2), c) in wedge_square(&matrices)? {
        for i in 0..r {
            for j in 0..r {
                if !c.get(i, j).is_zero() {
                    return Err(Error::CommutatorNonzero {
                        h: h + 1,
                        h2: h2 + 1,
                        row: i + 1,
                        col: j + 1,
                        entry: c.get(i, j).to_string(),
                    });
                }
            }
        }
    }
    Ok(HiggsField {
        base_vars: base_vars.clone(),
        matrices,
    })
}

/// Replaces each `φ^(h)` by `φ^(h) − η_h·I`.
pub fn normalize_trace(h: &HiggsField, eta: &[Poly]) -> Result<HiggsField> {
    if eta.len() != h.n() {
        return Err(Error::BaseMismatch {
            expected: h.n(),
            got: eta.len(),
        });
    }
    let r = h.r();
    let matrices = h
        .matrices
        .iter()
        .zip(eta)
        .map(|(m, e)| {
            let e = e.embed(&h.base_vars)?;
            Ok(m.try_sub(&PolyMatrix::scalar(&h.base_vars, r, &e))?)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HiggsField {
        base_vars: h.base_vars.clone(),
        matrices,
    })
}

/// `T = p(A)` with `p(t) = Σ μ_k t^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToeplitzWitness {
    pub mu: Vec<Poly>,
    pub lambda: Poly,
    /// `μ_1 = p'(λ)` vanishes (the Toeplitz entry above the diagonal).
    pub derivative_zero: bool,
}

impl ToeplitzWitness {
    /// `Σ μ_k A^k`.
    pub fn reconstruct(&self, a: &PolyMatrix) -> Result<PolyMatrix> {
        let vars = a.vars();
        let mut acc = PolyMatrix::zeros(vars, a.rows(), a.cols());
        let mut power = PolyMatrix::identity(vars, a.rows());
        for mu in &self.mu {
            acc = acc.try_add(&power.scale(&mu.embed(vars)?))?;
            power = power.try_mul(a)?;
        }
        Ok(acc)
    }
}

/// Eigenvalue of `a` if it is `λI + N` with `N` the upper nilpotent block.
pub fn jordan_block_eigenvalue(a: &PolyMatrix) -> Result<Poly> {
    let r = a.rows();
    if !a.is_square() || r == 0 {
        return Err(Error::NotJordanBlock("not a nonempty square matrix".into()));
    }
    let lambda = a.get(0, 0).clone();
    let one = Poly::one(a.vars());
    for i in 0..r {
        for j in 0..r {
            let want = if i == j {
                &lambda
            } else if j == i + 1 {
                &one
            } else {
                &Poly::zero(a.vars())
            };
            if a.get(i, j) != want {
                return Err(Error::NotJordanBlock(format!("entry ({},{}) is {}", i + 1, j + 1, a.get(i, j))));
            }
        }
    }
    Ok(lambda)
}

/// Writes a matrix commuting with a single Jordan block as a polynomial in it.
pub fn toeplitz_decompose(a: &PolyMatrix, t: &PolyMatrix) -> Result<ToeplitzWitness> {
    let (a, t) = common_vars(a, t)?;
    let lambda = jordan_block_eigenvalue(&a)?;
    let r = a.rows();
    if t.rows() != r || t.cols() != r {
        return Err(Error::NotCommuting);
    }
    if !a.commutator(&t)?.is_zero() {
        return Err(Error::NotCommuting);
    }
    let vars = a.vars().clone();
    let b: Vec<Poly> = (0..r).map(|k| t.get(0, k).clone()).collect();
    for i in 0..r {
        for j in 0..r {
            let want = if j >= i { b[j - i].clone() } else { Poly::zero(&vars) };
            if *t.get(i, j) != want {
                return Err(Error::NotToeplitz);
            }
        }
    }
    // p(t) = Σ b_i (t − λ)^i, so μ_k = Σ_{i ≥ k} b_i C(i,k) (−λ)^{i−k}
    let neg_lambda = -&lambda;
    let mu: Vec<Poly> = (0..r)
        .map(|k| {
            let mut acc = Poly::zero(&vars);
            for (i, bi) in b.iter().enumerate().skip(k) {
                let c = binomial(i as u64, k as u64);
                acc = &acc + &(&bi.scale(&c) * &neg_lambda.pow((i - k) as u32));
            }
            acc
        })
        .collect();
    Ok(ToeplitzWitness {
        mu,
        lambda,
        derivative_zero: r < 2 || b[1].is_zero(),
    })
}

fn common_vars(a: &PolyMatrix, t: &PolyMatrix) -> Result<(PolyMatrix, PolyMatrix)> {
    if a.vars() == t.vars() {
        return Ok((a.clone(), t.clone()));
    }
    if let Ok(a2) = a.embed(t.vars()) {
        return Ok((a2, t.clone()));
    }
    Ok((a.clone(), t.embed(a.vars())?))
}

pub(crate) fn binomial(n: u64, k: u64) -> Rat {
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rat::from_integer(c)
}

/// One entry `((λ, size)^mult)` of a Jordan type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanBlockCount {
    pub eigenvalue: Rat,
    pub size: usize,
    pub mult: usize,
}

/// Blocks sorted by decreasing eigenvalue, then decreasing size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanType {
    pub blocks: Vec<JordanBlockCount>,
}

impl JordanType {
    pub fn rank(&self) -> usize {
        self.blocks.iter().map(|b| b.size * b.mult).sum()
    }
}

impl std::fmt::Display for JordanType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| format!("({},{})^{}", format_rat(&b.eigenvalue), b.size, b.mult))
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Jordan type of `φ^(which)` at a rational base point.
pub fn jordan_type_at_point(h: &HiggsField, which: usize, point: &[Rat]) -> Result<JordanType> {
    if point.len() != h.n() {
        return Err(Error::PointLength {
            expected: h.n(),
            got: point.len(),
        });
    }
    let m = h.matrix(which)?;
    let names = h.base_vars.names();
    let bindings: Vec<(&str, Rat)> = names.iter().map(|s| s.as_str()).zip(point.iter().cloned()).collect();
    let m = m.evaluate(&bindings)?;
    jordan_type_of_constant(&m)
}

/// Jordan type of a constant matrix with rational eigenvalues.
pub fn jordan_type_of_constant(m: &PolyMatrix) -> Result<JordanType> {
    let r = m.rows();
    let rows = m
        .to_rat_rows()
        .ok_or_else(|| Error::InvalidField("matrix is not constant".into()))?;
    let cp = m.char_poly("t")?;
    let coeffs: Vec<Rat> = cp
        .coefficients_in(cp.vars().len() - 1)
        .iter()
        .map(|c| c.as_constant().unwrap())
        .collect();
    let roots = rational_roots(&coeffs)?;
    let mut blocks = Vec::new();
    for (lambda, alg) in roots {
        let shifted: Vec<Vec<Rat>> = rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, v)| if i == j { v - &lambda } else { v.clone() })
                    .collect()
            })
            .collect();
        let mut ranks = vec![r];
        let mut power = shifted.clone();
        for _ in 0..=alg {
            ranks.push(rank_rat(&power));
            power = mat_mul(&power, &shifted);
        }
        // blocks of size ≥ k: ranks[k-1] − ranks[k]
        let at_least = |k: usize| ranks[k - 1] - ranks[k];
        for size in (1..=alg).rev() {
            let exact = at_least(size) - at_least(size + 1);
            if exact > 0 {
                blocks.push(JordanBlockCount {
                    eigenvalue: lambda.clone(),
                    size,
                    mult: exact,
                });
            }
        }
    }
    Ok(JordanType { blocks })
}

fn mat_mul(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(Rat::zero(), |acc, k| acc + &a[i][k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// Rational roots with multiplicity, decreasing; errors on a leftover factor.
/// `coeffs[k]` multiplies `t^k`.
pub fn rational_roots(coeffs: &[Rat]) -> Result<Vec<(Rat, usize)>> {
    let mut c: Vec<Rat> = coeffs.to_vec();
    while c.len() > 1 && c.last().unwrap().is_zero() {
        c.pop();
    }
    let mut found: Vec<(Rat, usize)> = Vec::new();
    let mut push = |r: Rat| match found.iter_mut().find(|(x, _)| *x == r) {
        Some(e) => e.1 += 1,
        None => found.push((r, 1)),
    };
    while c.len() > 1 && c[0].is_zero() {
        c.remove(0);
        push(Rat::zero());
    }
    'outer: while c.len() > 1 {
        let ints = integer_coeffs(&c);
        let a0 = ints[0].abs();
        let an = ints.last().unwrap().abs();
        for p in divisors(&a0) {
            for q in divisors(&an) {
                for sign in [1i64, -1] {
                    let cand = Rat::new(&p * BigInt::from(sign), q.clone());
                    if horner(&c, &cand).is_zero() {
                        c = deflate(&c, &cand);
                        push(cand);
                        continue 'outer;
                    }
                }
            }
        }
        let v = VarSet::new(["t"]).unwrap();
        let factor = Poly::from_terms(
            &v,
            c.iter()
                .enumerate()
                .map(|(k, x)| (crate::polyring::Mono::from_exps(&[k as u32]), x.clone())),
        );
        return Err(Error::IrrationalEigenvalue {
            factor: factor.monic().to_string(),
        });
    }
    found.sort_by(|a, b| b.0.cmp(&a.0));
    Ok(found)
}

fn integer_coeffs(c: &[Rat]) -> Vec<BigInt> {
    let l = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    c.iter().map(|x| x.numer() * (&l / x.denom())).collect()
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            let e = n / &d;
            if e != d {
                large.push(e);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn horner(c: &[Rat], x: &Rat) -> Rat {
    c.iter().rev().fold(Rat::zero(), |acc, k| acc * x + k)
}

/// Divides by `(t − x)`, assuming `x` is a root.
fn deflate(c: &[Rat], x: &Rat) -> Vec<Rat> {
    let n = c.len() - 1;
    let mut q = vec![Rat::zero(); n];
    let mut carry = Rat::zero();
    for k in (0..n).rev() {
        carry = &carry * x + &c[k + 1];
        q[k] = carry.clone();
    }
    q
}

/// `(u, v)` with `v·U = u·V` for commuting 2x2 matrices with zero (1,1) entry.
pub fn proportionality_2x2(u_mat: &PolyMatrix, v_mat: &PolyMatrix) -> Result<(Poly, Poly)> {
    let (u_mat, v_mat) = common_vars(u_mat, v_mat)?;
    for (name, m) in [("U", &u_mat), ("V", &v_mat)] {
        if m.rows() != 2 || m.cols() != 2 {
            return Err(Error::Hypothesis(format!("{name} is not 2x2")));
        }
        if !m.get(0, 0).is_zero() {
            return Err(Error::Hypothesis(format!("{name} has a nonzero (1,1) entry")));
        }
        if m.is_zero() {
            return Err(Error::Hypothesis(format!("{name} is zero")));
        }
    }
    if !u_mat.commutator(&v_mat)?.is_zero() {
        return Err(Error::Hypothesis("U and V do not commute".into()));
    }
    let pick = [(1, 0), (0, 1), (1, 1)]
        .into_iter()
        .find(|&(i, j)| !u_mat.get(i, j).is_zero() || !v_mat.get(i, j).is_zero())
        .expect("nonzero matrices");
    let u = u_mat.get(pick.0, pick.1).clone();
    let v = v_mat.get(pick.0, pick.1).clone();
    if !v_mat.det()?.is_zero() && u_mat.det()?.is_zero() {
        return Err(Error::Hypothesis("det V ≠ 0 but det U = 0".into()));
    }
    if u_mat.scale(&v) != v_mat.scale(&u) {
        return Err(Error::Hypothesis("no proportionality factors".into()));
    }
    Ok((u, v))
}
