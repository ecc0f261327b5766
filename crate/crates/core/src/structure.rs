//! Jordan specifications and the ideals they predict: index families,
//! Segre–Veronese minors, embedded components, eigenvalue decomposition.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grobner::Ideal;
use crate::higgsfield::HiggsField;
use crate::polyring::{parse_poly, Poly, PolyMatrix, VarSet};

/// One entry `(λ, size)^mult`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecBlock {
    pub lambda: Poly,
    pub size: usize,
    pub mult: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanSpec {
    base_vars: VarSet,
    blocks: Vec<SpecBlock>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecBlockJson {
    pub lambda: String,
    pub size: usize,
    pub mult: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JordanSpecJson {
    pub blocks: Vec<SpecBlockJson>,
    #[serde(default = "default_base")]
    pub base_vars: Vec<String>,
}

fn default_base() -> Vec<String> {
    vec!["x".to_string()]
}

impl JordanSpec {
    pub fn new(base_vars: &VarSet, blocks: Vec<SpecBlock>) -> Result<JordanSpec> {
        if blocks.is_empty() {
            return Err(Error::InvalidSpec("no blocks".into()));
        }
        for (k, b) in blocks.iter().enumerate() {
            if b.size == 0 || b.mult == 0 {
                return Err(Error::InvalidSpec(format!("block {} has zero size or multiplicity", k + 1)));
            }
            if b.lambda.vars() != base_vars {
                return Err(Error::InvalidSpec(format!("eigenvalue of block {} is not over the base", k + 1)));
            }
            if blocks[..k].iter().any(|a| a.lambda == b.lambda && a.size == b.size) {
                return Err(Error::InvalidSpec(format!(
                    "pair ({}, {}) appears twice; merge it into one multiplicity",
                    b.lambda, b.size
                )));
            }
        }
        Ok(JordanSpec {
            base_vars: base_vars.clone(),
            blocks,
        })
    }

    /// `(λ, size, mult)` triples with `λ` parsed over `base_vars`.
    pub fn parse(base_vars: &[&str], blocks: &[(&str, usize, usize)]) -> Result<JordanSpec> {
        let vars = VarSet::new(base_vars.iter().copied())?;
        let blocks = blocks
            .iter()
            .map(|&(l, size, mult)| {
                Ok(SpecBlock {
                    lambda: parse_poly(l, &vars)?,
                    size,
                    mult,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        JordanSpec::new(&vars, blocks)
    }

    pub fn from_json(j: &JordanSpecJson) -> Result<JordanSpec> {
        let vars = VarSet::new(j.base_vars.iter().cloned())?;
        let blocks = j
            .blocks
            .iter()
            .map(|b| {
                Ok(SpecBlock {
                    lambda: parse_poly(&b.lambda, &vars)?,
                    size: b.size,
                    mult: b.mult,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        JordanSpec::new(&vars, blocks)
    }

    pub fn to_json(&self) -> JordanSpecJson {
        JordanSpecJson {
            blocks: self
                .blocks
                .iter()
                .map(|b| SpecBlockJson {
                    lambda: b.lambda.to_string(),
                    size: b.size,
                    mult: b.mult,
                })
                .collect(),
            base_vars: self.base_vars.names().to_vec(),
        }
    }

    pub fn base_vars(&self) -> &VarSet {
        &self.base_vars
    }

    pub fn blocks(&self) -> &[SpecBlock] {
        &self.blocks
    }

    /// `Σ m_v i_v`.
    pub fn r(&self) -> usize {
        self.blocks.iter().map(|b| b.size * b.mult).sum()
    }

    pub fn single_eigenvalue(&self) -> Option<&Poly> {
        let l = &self.blocks[0].lambda;
        self.blocks.iter().all(|b| &b.lambda == l).then_some(l)
    }

    /// Blocks grouped by eigenvalue (in order of first appearance), sizes
    /// decreasing inside each group.
    pub fn normalized(&self) -> JordanSpec {
        let mut order: Vec<&Poly> = Vec::new();
        for b in &self.blocks {
            if !order.contains(&&b.lambda) {
                order.push(&b.lambda);
            }
        }
        let mut blocks = Vec::new();
        for l in order {
            let mut group: Vec<SpecBlock> = self.blocks.iter().filter(|b| &b.lambda == l).cloned().collect();
            group.sort_by_key(|b| std::cmp::Reverse(b.size));
            blocks.extend(group);
        }
        JordanSpec {
            base_vars: self.base_vars.clone(),
            blocks,
        }
    }

    /// Blocks in stored order, each repeated `mult` times, upper triangular.
    pub fn block_matrix(&self) -> PolyMatrix {
        let vars = &self.base_vars;
        let mut parts = Vec::new();
        for b in &self.blocks {
            let jb = PolyMatrix::from_fn(vars, b.size, b.size, |i, j| {
                if i == j {
                    b.lambda.clone()
                } else if j == i + 1 {
                    Poly::one(vars)
                } else {
                    Poly::zero(vars)
                }
            });
            for _ in 0..b.mult {
                parts.push(jb.clone());
            }
        }
        PolyMatrix::block_diag(vars, &parts)
    }

    /// The one-matrix Higgs field given by [`block_matrix`](Self::block_matrix).
    pub fn to_higgs(&self) -> Result<HiggsField> {
        crate::higgsfield::validate_higgs(vec![self.block_matrix()], &self.base_vars)
    }

    /// Base variables followed by `z1..zr`.
    pub fn ring(&self) -> VarSet {
        self.base_vars
            .extend((1..=self.r()).map(|i| format!("z{i}")))
            .expect("base names never look like z<k>")
    }
}

/// `𝒜` with its derived `ℬ = ∪(A ∖ min A)`, `𝒞 = {max A}` and
/// `ℒ = {1..r} ∖ ∪𝒜`. All indices 1-based and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexSets {
    pub a: Vec<Vec<usize>>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
    pub l: Vec<usize>,
}

impl IndexSets {
    pub fn new(a: Vec<Vec<usize>>, r: usize) -> Result<IndexSets> {
        let mut seen = BTreeSet::new();
        for set in &a {
            for &x in set {
                if x == 0 || x > r {
                    return Err(Error::InvalidSpec(format!("index {x} outside 1..{r}")));
                }
                if !seen.insert(x) {
                    return Err(Error::Overlap(x));
                }
            }
        }
        let mut a: Vec<Vec<usize>> = a
            .into_iter()
            .filter(|s| !s.is_empty())
            .map(|mut s| {
                s.sort_unstable();
                s
            })
            .collect();
        a.sort();
        let mut b: Vec<usize> = a.iter().flat_map(|s| s[1..].iter().copied()).collect();
        b.sort_unstable();
        let mut c: Vec<usize> = a.iter().map(|s| *s.last().unwrap()).collect();
        c.sort_unstable();
        let l = (1..=r).filter(|x| !seen.contains(x)).collect();
        Ok(IndexSets { a, b, c, l })
    }
}

/// Global sets and the per-level sets `𝒜_v, ℒ_v, ℬ_v, 𝒞_v`, `v = 1..s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexFamily {
    pub r: usize,
    pub global: IndexSets,
    pub levels: Vec<IndexSets>,
}

impl IndexFamily {
    /// Level `v` (1-based).
    pub fn level(&self, v: usize) -> Option<&IndexSets> {
        v.checked_sub(1).and_then(|k| self.levels.get(k))
    }
}

/// Index sets of a spec whose block sizes strictly decrease.
pub fn jordan_spec_sets(spec: &JordanSpec) -> Result<IndexFamily> {
    let blocks = spec.blocks();
    for w in blocks.windows(2) {
        if w[1].size >= w[0].size {
            return Err(Error::InvalidSpec(format!(
                "block sizes must strictly decrease, found {} then {}",
                w[0].size, w[1].size
            )));
        }
    }
    let r = spec.r();
    let mut offsets = Vec::with_capacity(blocks.len());
    let mut acc = 0;
    for b in blocks {
        offsets.push(acc);
        acc += b.mult * b.size;
    }
    // first `width` entries of every block of the groups 1..=upto
    let family = |upto: usize, width: usize| -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for (alpha, b) in blocks.iter().enumerate().take(upto) {
            for k in 0..b.mult {
                out.push((1..=width).map(|j| k * b.size + j + offsets[alpha]).collect());
            }
        }
        out
    };
    let global = {
        let mut a = Vec::new();
        for (v, b) in blocks.iter().enumerate() {
            for k in 0..b.mult {
                a.push((1..=b.size).map(|j| k * b.size + j + offsets[v]).collect());
            }
        }
        IndexSets::new(a, r)?
    };
    let levels = (1..=blocks.len())
        .map(|v| IndexSets::new(family(v, blocks[v - 1].size), r))
        .collect::<Result<Vec<_>>>()?;
    Ok(IndexFamily { r, global, levels })
}

/// 2x2 minors of `M_𝒜 = M_{A_1} | … | M_{A_s}`; `z(k)` is the variable `z_k`.
fn sv_generators(a: &[Vec<usize>], z: impl Fn(usize) -> Poly) -> Vec<Poly> {
    let mut cols: Vec<(usize, usize)> = Vec::new();
    for set in a {
        let mut s = set.clone();
        s.sort_unstable();
        for w in s.windows(2) {
            cols.push((w[0], w[1]));
        }
    }
    let mut out = Vec::new();
    for p in 0..cols.len() {
        for q in p + 1..cols.len() {
            let (t1, b1) = cols[p];
            let (t2, b2) = cols[q];
            let g = &(&z(t1) * &z(b2)) - &(&z(t2) * &z(b1));
            if !g.is_zero() && !out.contains(&g) && !out.contains(&-&g) {
                out.push(g);
            }
        }
    }
    out
}

fn check_disjoint(a: &[Vec<usize>], r: usize) -> Result<()> {
    IndexSets::new(a.to_vec(), r).map(|_| ())
}

/// Ideal of `𝖲𝖵_𝒜` in `z1..zr`.
pub fn sv_ideal(a: &[Vec<usize>], r: usize) -> Result<Ideal> {
    check_disjoint(a, r)?;
    let vars = VarSet::indexed("z", r);
    Ok(Ideal::new(&vars, sv_generators(a, |k| Poly::var_at(&vars, k - 1)))?)
}

/// Substitutes `z_{A_j[k]} = v_j u0^{d-1-k} u1^k` (and 0 elsewhere) into
/// every minor of `M_𝒜` and checks that all of them vanish.
pub fn sv_parametrization_check(a: &[Vec<usize>], r: usize) -> Result<bool> {
    let Some(d) = a.first().map(Vec::len) else {
        return Ok(true);
    };
    if a.iter().any(|s| s.len() != d) {
        return Err(Error::UnequalBlockSizes);
    }
    let ideal = sv_ideal(a, r)?;
    let s = a.len();
    let target = VarSet::new(
        ["u0".to_string(), "u1".to_string()]
            .into_iter()
            .chain((1..=s).map(|j| format!("v{j}"))),
    )?;
    let u0 = Poly::var_at(&target, 0);
    let u1 = Poly::var_at(&target, 1);
    let mut images = vec![Poly::zero(&target); r];
    for (j, set) in a.iter().enumerate() {
        let mut set = set.clone();
        set.sort_unstable();
        let vj = Poly::var_at(&target, 2 + j);
        for (k, &idx) in set.iter().enumerate() {
            images[idx - 1] = &(&vj * &u0.pow((d - 1 - k) as u32)) * &u1.pow(k as u32);
        }
    }
    Ok(ideal.gens().iter().all(|g| g.substitute(&target, &images).is_zero()))
}

/// One embedded component `V_v`.
#[derive(Clone, Debug)]
pub struct ComponentIdeal {
    pub v: usize,
    pub ideal: Ideal,
    /// `−1 + Σ_{t ≤ v} m_t`.
    pub dimension: usize,
    /// Degree `i_v` of the curvilinear fiber.
    pub fiber_degree: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PredictMode {
    Full,
    /// 1-based level.
    Component(usize),
    Single,
}

#[derive(Clone, Debug)]
pub enum Predicted {
    Ideal(Ideal),
    Component(ComponentIdeal),
}

impl Predicted {
    pub fn ideal(&self) -> &Ideal {
        match self {
            Predicted::Ideal(i) => i,
            Predicted::Component(c) => &c.ideal,
        }
    }
}

fn one_eigenvalue(spec: &JordanSpec) -> Result<JordanSpec> {
    if spec.single_eigenvalue().is_none() {
        return Err(Error::ModeMismatch("blocks have different eigenvalues".into()));
    }
    Ok(spec.normalized())
}

/// Generators `z_b z_c` (deduplicated) over `ℬ × 𝒞`.
fn bc_monomials(b: &[usize], c: &[usize], z: &impl Fn(usize) -> Poly) -> Vec<Poly> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &x in b {
        for &y in c {
            let key = (x.min(y), x.max(y));
            if seen.insert(key) {
                out.push(&z(key.0) * &z(key.1));
            }
        }
    }
    out
}

fn full_gens(sets: &IndexSets, z: &impl Fn(usize) -> Poly) -> Vec<Poly> {
    let mut g = bc_monomials(&sets.b, &sets.c, z);
    g.extend(sv_generators(&sets.a, z));
    g
}

/// `(z_b z_c | b ∈ ℬ, c ∈ 𝒞) + I_𝒜` over base variables and `z1..zr`,
/// for the normalized spec.
pub fn predicted_full(spec: &JordanSpec) -> Result<Ideal> {
    let spec = one_eigenvalue(spec)?;
    let fam = jordan_spec_sets(&spec)?;
    let vars = spec.ring();
    let nb = spec.base_vars().len();
    let z = |k: usize| Poly::var_at(&vars, nb + k - 1);
    Ok(Ideal::new(&vars, full_gens(&fam.global, &z))?)
}

/// `I_{V_v} = (z_j | j ∈ ℒ_v) + (z_b z_c | b ∈ ℬ_v, c ∈ 𝒞_v) + I_{𝒜_v}`.
pub fn predicted_component(spec: &JordanSpec, v: usize) -> Result<ComponentIdeal> {
    let spec = one_eigenvalue(spec)?;
    let fam = jordan_spec_sets(&spec)?;
    let sets = fam
        .level(v)
        .ok_or_else(|| Error::ModeMismatch(format!("level {v} outside 1..{}", fam.levels.len())))?;
    let vars = spec.ring();
    let nb = spec.base_vars().len();
    let z = |k: usize| Poly::var_at(&vars, nb + k - 1);
    let mut gens: Vec<Poly> = sets.l.iter().map(|&j| z(j)).collect();
    gens.extend(full_gens(sets, &z));
    let blocks = spec.blocks();
    Ok(ComponentIdeal {
        v,
        ideal: Ideal::new(&vars, gens)?,
        dimension: blocks[..v].iter().map(|b| b.mult).sum::<usize>() - 1,
        fiber_degree: blocks[v - 1].size,
    })
}

/// Rank-one minors of `[[z1..z_{r-1}], [z2..z_r]]` plus `z_i z_r`, `i = 2..r`.
pub fn predicted_single(spec: &JordanSpec) -> Result<Ideal> {
    let [b] = spec.blocks() else {
        return Err(Error::ModeMismatch("single-block mode needs exactly one block".into()));
    };
    if b.mult != 1 {
        return Err(Error::ModeMismatch("single-block mode needs multiplicity 1".into()));
    }
    let r = b.size;
    let vars = spec.ring();
    let nb = spec.base_vars().len();
    let z = |k: usize| Poly::var_at(&vars, nb + k - 1);
    let mut gens = sv_generators(&[(1..=r).collect()], z);
    gens.extend((2..=r).map(|i| &z(i) * &z(r)));
    Ok(Ideal::new(&vars, gens)?)
}

pub fn predicted_ideal(spec: &JordanSpec, mode: PredictMode) -> Result<Predicted> {
    Ok(match mode {
        PredictMode::Full => Predicted::Ideal(predicted_full(spec)?),
        PredictMode::Component(v) => Predicted::Component(predicted_component(spec, v)?),
        PredictMode::Single => Predicted::Ideal(predicted_single(spec)?),
    })
}

/// All components `V_1..V_s` of a one-eigenvalue spec.
pub fn predicted_components(spec: &JordanSpec) -> Result<Vec<ComponentIdeal>> {
    let s = one_eigenvalue(spec)?.blocks().len();
    (1..=s).map(|v| predicted_component(spec, v)).collect()
}

/// For distinct eigenvalues: per block group, its predicted ideal on its own
/// coordinates plus every other `z` as a linear generator. Indices follow
/// the stored block order.
pub fn decompose_by_eigenvalue(spec: &JordanSpec) -> Result<Vec<(Poly, Ideal)>> {
    let blocks = spec.blocks();
    for (k, b) in blocks.iter().enumerate() {
        if blocks[..k].iter().any(|a| a.lambda == b.lambda) {
            return Err(Error::RepeatedEigenvalue(b.lambda.to_string()));
        }
    }
    let vars = spec.ring();
    let nb = spec.base_vars().len();
    let r = spec.r();
    let mut out = Vec::new();
    let mut offset = 0;
    for b in blocks {
        let width = b.size * b.mult;
        let own = offset + 1..=offset + width;
        let z = |k: usize| Poly::var_at(&vars, nb + offset + k - 1);
        let sub = JordanSpec::new(spec.base_vars(), vec![b.clone()])?;
        let fam = jordan_spec_sets(&sub)?;
        let mut gens: Vec<Poly> = (1..=r)
            .filter(|j| !own.contains(j))
            .map(|j| Poly::var_at(&vars, nb + j - 1))
            .collect();
        gens.extend(full_gens(&fam.global, &z));
        out.push((b.lambda.clone(), Ideal::new(&vars, gens)?));
        offset += width;
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MorphismClass {
    pub finite: bool,
    pub reduced: bool,
}

/// Finite iff no eigenvalue is shared by two Jordan blocks; reduced iff all
/// blocks have size one.
pub fn classify_morphism(spec: &JordanSpec) -> MorphismClass {
    let blocks = spec.blocks();
    let finite = blocks.iter().all(|b| b.mult == 1)
        && blocks
            .iter()
            .enumerate()
            .all(|(k, b)| blocks[..k].iter().all(|a| a.lambda != b.lambda));
    MorphismClass {
        finite,
        reduced: blocks.iter().all(|b| b.size == 1),
    }
}

#[cfg(test)]
mod tests;
