//! Zero-dimensional toolkit: standard-monomial counts, projective degree by
//! random charts, and the radical via squarefree minimal polynomials.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{GbError, Ideal};
use crate::polyring::{gcd_multivariate, rat, Mono, Poly, Rat};

pub const DEFAULT_RETRIES: usize = 5;
const COEFF_RANGE: i64 = 100;

/// Count of standard monomials; errors when infinite.
pub(crate) fn colength(i: &Ideal) -> Result<u64, GbError> {
    if i.is_unit()? {
        return Ok(0);
    }
    let n = i.vars().len();
    let lms = i.leading_monomials()?;
    let mut bounds = vec![u32::MAX; n];
    for m in &lms {
        let support: Vec<usize> = (0..n).filter(|&k| m.exp(k) > 0).collect();
        if let [k] = support[..] {
            bounds[k] = bounds[k].min(m.exp(k));
        }
    }
    if bounds.contains(&u32::MAX) {
        return Err(GbError::NotZeroDimensional);
    }
    let mut exps = vec![0u32; n];
    Ok(count_standard(0, &mut exps, &bounds, &lms))
}

fn count_standard(k: usize, exps: &mut Vec<u32>, bounds: &[u32], lms: &[Mono]) -> u64 {
    if k == exps.len() {
        return 1;
    }
    let mut total = 0;
    for e in 0..bounds[k] {
        exps[k] = e;
        // divisibility only depends on fixed coordinates when later ones are 0
        let probe = Mono::from_exps(exps);
        if lms.iter().any(|m| m.divides(&probe)) {
            break;
        }
        total += count_standard(k + 1, exps, bounds, lms);
    }
    exps[k] = 0;
    total
}

fn check_homogeneous(i: &Ideal, groups: &[Vec<usize>]) -> Result<(), GbError> {
    for (gi, g) in groups.iter().enumerate() {
        for (idx, p) in i.gens().iter().enumerate() {
            if !p.is_homogeneous_in(g) {
                return Err(GbError::NotHomogeneous { index: idx, group: gi });
            }
        }
    }
    Ok(())
}

/// `I + (L_k − 1)` for one random linear form per group.
fn random_chart(i: &Ideal, groups: &[Vec<usize>], rng: &mut ChaCha8Rng) -> Result<Ideal, GbError> {
    let vars = i.vars();
    let mut extra = Vec::new();
    for g in groups {
        let mut l = Poly::int(vars, -1);
        for &v in g {
            let mut c = 0;
            while c == 0 {
                c = rng.gen_range(-COEFF_RANGE..=COEFF_RANGE);
            }
            l = &l + &Poly::var_at(vars, v).scale(&rat(c));
        }
        extra.push(l);
    }
    i.add_gens(extra)
}

fn agree_on_charts(
    i: &Ideal,
    groups: &[Vec<usize>],
    seed: u64,
    retries: usize,
    measure: impl Fn(&Ideal) -> Result<u64, GbError>,
) -> Result<u64, GbError> {
    check_homogeneous(i, groups)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..=retries {
        let a = measure(&random_chart(i, groups, &mut rng)?)?;
        let b = measure(&random_chart(i, groups, &mut rng)?)?;
        if a == b {
            return Ok(a);
        }
    }
    Err(GbError::Disagreement {
        attempts: retries + 1,
    })
}

pub(crate) fn projective_degree(
    i: &Ideal,
    groups: &[Vec<usize>],
    seed: u64,
    retries: usize,
) -> Result<u64, GbError> {
    agree_on_charts(i, groups, seed, retries, colength)
}

pub(crate) fn projective_point_count(
    i: &Ideal,
    groups: &[Vec<usize>],
    seed: u64,
    retries: usize,
) -> Result<u64, GbError> {
    agree_on_charts(i, groups, seed, retries, |c| zero_dim_radical(c)?.colength())
}

/// Adds the squarefree part of each variable's minimal polynomial.
pub(crate) fn zero_dim_radical(i: &Ideal) -> Result<Ideal, GbError> {
    colength(i)?;
    if i.is_unit()? {
        return Ok(i.clone());
    }
    let vars = i.vars().clone();
    let mut extra = Vec::new();
    for v in 0..vars.len() {
        let f = minimal_polynomial(i, v)?;
        let g = gcd_multivariate(&f, &f.differentiate_at(v))?;
        if !g.is_unit() {
            extra.push(f.div_exact(&g).expect("gcd divides"));
        }
    }
    if extra.is_empty() {
        return Ok(i.clone());
    }
    i.add_gens(extra)
}

/// Monic minimal polynomial of variable `v` modulo a zero-dimensional ideal.
fn minimal_polynomial(i: &Ideal, v: usize) -> Result<Poly, GbError> {
    let vars = i.vars();
    let x = Poly::var_at(vars, v);
    // echelon rows: (reduced vector, combination of powers producing it)
    let mut rows: Vec<(BTreeMap<Mono, Rat>, Vec<Rat>)> = Vec::new();
    let mut power = Poly::one(vars);
    for k in 0.. {
        let nf = i.normal_form(&power)?;
        let mut vec: BTreeMap<Mono, Rat> = nf.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        let mut combo = vec![Rat::zero(); k + 1];
        combo[k] = Rat::one();
        for (row, rcombo) in &rows {
            let pivot = row.keys().next().unwrap();
            if let Some(c) = vec.get(pivot).cloned() {
                let f = &c / &row[pivot];
                for (m, val) in row {
                    let e = vec.entry(m.clone()).or_insert_with(Rat::zero);
                    *e -= &f * val;
                    if e.is_zero() {
                        vec.remove(m);
                    }
                }
                for (j, val) in rcombo.iter().enumerate() {
                    combo[j] -= &f * val;
                }
            }
        }
        if vec.is_empty() {
            let terms = combo
                .into_iter()
                .enumerate()
                .map(|(e, c)| (Mono::var(vars.len(), v).pow_of(e as u32), c));
            return Ok(Poly::from_terms(vars, terms).monic());
        }
        rows.push((vec, combo));
        power = &power * &x;
    }
    unreachable!()
}

impl Mono {
    /// `self^e`.
    pub(crate) fn pow_of(&self, e: u32) -> Mono {
        Mono::from_exps(&self.exps().map(|a| a * e).collect::<Vec<_>>())
    }
}
