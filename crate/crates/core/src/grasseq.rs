//! Defining ideals of Higgs Grassmannians: vertical coordinates for d = 1,
//! Plücker coordinates for general d.

use crate::error::{Error, Result};
use crate::grobner::Ideal;
use crate::higgsfield::HiggsField;
use crate::polyring::{Poly, Rat, VarSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoordKind {
    Vertical,
    Pluecker,
}

/// The ideal of a Higgs Grassmannian inside the Grassmann bundle.
#[derive(Clone, Debug)]
pub struct GrassIdeal {
    pub ideal: Ideal,
    pub d: usize,
    pub kind: CoordKind,
    pub include_pluecker_relations: bool,
    /// Generators emitted before dropping zeros (and before any relations).
    pub raw_generator_count: usize,
    pub base_vars: VarSet,
    /// Names of the fiber coordinates, in variable order.
    pub fiber_vars: Vec<String>,
}

impl GrassIdeal {
    /// Evaluates the base variables at `point`; the result lives over the fiber
    /// coordinates only.
    pub fn restrict_fiber(&self, point: &[Rat]) -> Result<Ideal> {
        restrict_fiber(self, point)
    }
}

/// Sign bookkeeping for `p_{T,i}`: `(−1)^{e(T,i)}` with `e` the number of
/// elements of `T` below `i`, or zero when `i ∈ T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlueckerSign {
    pub t: Vec<usize>,
    pub i: usize,
    pub sign: i8,
}

impl PlueckerSign {
    pub fn new(t: &[usize], i: usize) -> Self {
        let sign = if t.contains(&i) {
            0
        } else if t.iter().filter(|&&x| x < i).count() % 2 == 0 {
            1
        } else {
            -1
        };
        PlueckerSign { t: t.to_vec(), i, sign }
    }

    /// The sorted index set `T ∪ {i}`.
    pub fn support(&self) -> Vec<usize> {
        let mut s = self.t.clone();
        s.push(self.i);
        s.sort_unstable();
        s
    }
}

/// All `k`-subsets of `1..=r` in lexicographic order.
pub fn subsets(r: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, r: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..=r {
            if r - x + 1 < k - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, r, k, cur, out);
            cur.pop();
        }
    }
    rec(1, r, k, &mut cur, &mut out);
    out
}

/// `p_134`, or `p_1_3_10` when some index has more than one digit.
pub fn pluecker_name(k: &[usize], r: usize) -> String {
    let parts: Vec<String> = k.iter().map(|x| x.to_string()).collect();
    if r >= 10 {
        format!("p_{}", parts.join("_"))
    } else {
        format!("p_{}", parts.concat())
    }
}

fn fiber_names(prefix: &str, r: usize) -> Vec<String> {
    (1..=r).map(|i| format!("{prefix}{i}")).collect()
}

/// For each `h` and `i < j`: `Σ_k z_k (φ_jk z_i − φ_ik z_j)`.
pub fn rank1_ideal(h: &HiggsField) -> Result<GrassIdeal> {
    rank1_ideal_named(h, "z")
}

/// [`rank1_ideal`] with fiber variables `prefix1..prefixr`.
pub fn rank1_ideal_named(h: &HiggsField, prefix: &str) -> Result<GrassIdeal> {
    let r = h.r();
    let names = fiber_names(prefix, r);
    let vars = h.base_vars().extend(names.iter().cloned())?;
    let nb = h.base_vars().len();
    let z = |k: usize| Poly::var_at(&vars, nb + k);
    let per_h = crate::par::map(h.matrices(), |m| -> Result<Vec<Poly>> {
        let m = m.embed(&vars)?;
        let mut gens = Vec::new();
        for i in 0..r {
            for j in i + 1..r {
                let mut g = Poly::zero(&vars);
                for k in 0..r {
                    let a = &(m.get(j, k) * &z(i)) - &(m.get(i, k) * &z(j));
                    g = &g + &(&z(k) * &a);
                }
                gens.push(g);
            }
        }
        Ok(gens)
    });
    let mut gens = Vec::new();
    for g in per_h {
        gens.extend(g?);
    }
    let raw = gens.len();
    Ok(GrassIdeal {
        ideal: Ideal::new(&vars, gens)?,
        d: 1,
        kind: CoordKind::Vertical,
        include_pluecker_relations: false,
        raw_generator_count: raw,
        base_vars: h.base_vars().clone(),
        fiber_vars: names,
    })
}

/// Plücker-coordinate equations `g^{(h)}_{K,T}`; `d = 1` gives the vertical ideal.
pub fn rankd_ideal(h: &HiggsField, d: usize, include_pluecker_relations: bool) -> Result<GrassIdeal> {
    let r = h.r();
    if d == 0 || d >= r {
        return Err(Error::DegreeOutOfRange { d, r });
    }
    if d == 1 {
        return rank1_ideal(h);
    }
    let ks = subsets(r, d);
    let names: Vec<String> = ks.iter().map(|k| pluecker_name(k, r)).collect();
    let vars = h.base_vars().extend(names.iter().cloned())?;
    let nb = h.base_vars().len();
    let pvar = |set: &[usize]| -> Poly {
        let idx = ks.iter().position(|k| k == set).expect("canonical subset");
        Poly::var_at(&vars, nb + idx)
    };
    let big = subsets(r, d + 1);
    let small = subsets(r, d - 1);
    let per_h = crate::par::map(h.matrices(), |m| -> Result<Vec<Poly>> {
        let m = m.embed(&vars)?;
        let mut gens = Vec::new();
        for kset in &big {
            for tset in &small {
                let mut g = Poly::zero(&vars);
                for (u, &ku) in kset.iter().enumerate() {
                    let rest: Vec<usize> = kset.iter().copied().filter(|&x| x != ku).collect();
                    let mut inner = Poly::zero(&vars);
                    for i in 1..=r {
                        let phi = m.get(ku - 1, i - 1);
                        if phi.is_zero() {
                            continue;
                        }
                        let s = PlueckerSign::new(tset, i);
                        if s.sign == 0 {
                            continue;
                        }
                        let term = phi * &pvar(&s.support());
                        inner = if s.sign > 0 { &inner + &term } else { &inner - &term };
                    }
                    let t = &pvar(&rest) * &inner;
                    g = if u % 2 == 0 { &g + &t } else { &g - &t };
                }
                gens.push(g);
            }
        }
        Ok(gens)
    });
    let mut gens = Vec::new();
    for g in per_h {
        gens.extend(g?);
    }
    let raw = gens.len();
    if include_pluecker_relations {
        gens.extend(pluecker_relations_over(&vars, nb, r, d));
    }
    Ok(GrassIdeal {
        ideal: Ideal::new(&vars, gens)?,
        d,
        kind: CoordKind::Pluecker,
        include_pluecker_relations,
        raw_generator_count: raw,
        base_vars: h.base_vars().clone(),
        fiber_vars: names,
    })
}

/// Sign of the permutation sorting `seq`, or 0 on a repeat.
fn sort_sign(seq: &[usize]) -> i8 {
    let mut inv = 0;
    for a in 0..seq.len() {
        for b in a + 1..seq.len() {
            if seq[a] == seq[b] {
                return 0;
            }
            if seq[a] > seq[b] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Quadratic Plücker relations `Σ_l (−1)^l p[I, j_l] p[J ∖ j_l]` over
/// `|I| = d−1`, `|J| = d+1`, with `p` variables at offset `offset`.
pub(crate) fn pluecker_relations_over(vars: &VarSet, offset: usize, r: usize, d: usize) -> Vec<Poly> {
    let ks = subsets(r, d);
    let coord = |seq: &[usize]| -> Poly {
        let s = sort_sign(seq);
        if s == 0 {
            return Poly::zero(vars);
        }
        let mut sorted = seq.to_vec();
        sorted.sort_unstable();
        let idx = ks.iter().position(|k| *k == sorted).unwrap();
        let p = Poly::var_at(vars, offset + idx);
        if s > 0 {
            p
        } else {
            -p
        }
    };
    let mut out: Vec<Poly> = Vec::new();
    for iset in subsets(r, d - 1) {
        for jset in subsets(r, d + 1) {
            let mut rel = Poly::zero(vars);
            for (l, &jl) in jset.iter().enumerate() {
                let mut a = iset.clone();
                a.push(jl);
                let b: Vec<usize> = jset.iter().copied().filter(|&x| x != jl).collect();
                let t = &coord(&a) * &coord(&b);
                rel = if l % 2 == 0 { &rel + &t } else { &rel - &t };
            }
            if rel.is_zero() {
                continue;
            }
            let key = rel.monic();
            if !out.iter().any(|q| q.monic() == key) {
                out.push(rel);
            }
        }
    }
    out
}

/// The Plücker relations of `Gr(d, r)` over the canonical `p_K` variables.
pub fn pluecker_relations(r: usize, d: usize) -> Result<Ideal> {
    if d == 0 || d >= r {
        return Err(Error::DegreeOutOfRange { d, r });
    }
    let names: Vec<String> = subsets(r, d).iter().map(|k| pluecker_name(k, r)).collect();
    let vars = VarSet::new(names)?;
    Ok(Ideal::new(&vars, pluecker_relations_over(&vars, 0, r, d))?)
}

/// Every generator evaluated at a base point.
pub fn restrict_fiber(g: &GrassIdeal, point: &[Rat]) -> Result<Ideal> {
    if point.len() != g.base_vars.len() {
        return Err(Error::PointLength {
            expected: g.base_vars.len(),
            got: point.len(),
        });
    }
    let bindings: Vec<(&str, Rat)> = g
        .base_vars
        .names()
        .iter()
        .map(String::as_str)
        .zip(point.iter().cloned())
        .collect();
    Ok(g.ideal.evaluate(&bindings)?)
}
