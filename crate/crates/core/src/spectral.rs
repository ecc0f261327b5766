//! The spectral cover: coefficients of `det(λ·I − φ)` with
//! `λ = Σ l_i dx_i`, one generator per degree-`r` monomial in the `dx_i`.

use std::cmp::Reverse;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::grobner::Ideal;
use crate::higgsfield::HiggsField;
use crate::polyring::{Mono, Poly, PolyMatrix, Rat, VarSet};

#[derive(Clone, Debug)]
pub struct SpectralIdeal {
    /// Over the base variables followed by `l1..ln`.
    pub ideal: Ideal,
    /// `dx`-exponent vector of each generator, descending lex.
    pub keys: Vec<Vec<u32>>,
    pub base_vars: VarSet,
}

impl SpectralIdeal {
    pub fn generators(&self) -> &[Poly] {
        self.ideal.gens()
    }
}

fn l_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("l{i}")).collect()
}

pub fn spectral_ideal(h: &HiggsField) -> Result<SpectralIdeal> {
    let base = h.base_vars();
    let n = h.n();
    let r = h.r();
    let out_vars = base.extend(l_names(n))?;
    let mut scratch = out_vars.clone();
    let mut d_idx = Vec::with_capacity(n);
    for _ in 0..n {
        let name = scratch.fresh_name("d");
        scratch = scratch.extend([name])?;
        d_idx.push(scratch.len() - 1);
    }
    let nb = base.len();
    let d = |i: usize| Poly::var_at(&scratch, d_idx[i]);
    let mut lambda = Poly::zero(&scratch);
    for i in 0..n {
        lambda = &lambda + &(&Poly::var_at(&scratch, nb + i) * &d(i));
    }
    let mut m = PolyMatrix::scalar(&scratch, r, &lambda);
    for (i, phi) in h.matrices().iter().enumerate() {
        m = m.try_sub(&phi.embed(&scratch)?.scale(&d(i)))?;
    }
    let det = m.det()?;
    let mut by_key: BTreeMap<Reverse<Vec<u32>>, Vec<(Mono, Rat)>> = BTreeMap::new();
    let keep = out_vars.len();
    for (mono, c) in det.terms() {
        let key: Vec<u32> = d_idx.iter().map(|&k| mono.exp(k)).collect();
        let exps: Vec<u32> = (0..keep).map(|k| mono.exp(k)).collect();
        by_key
            .entry(Reverse(key))
            .or_default()
            .push((Mono::from_exps(&exps), c.clone()));
    }
    let mut keys = Vec::new();
    let mut gens = Vec::new();
    for (Reverse(key), terms) in by_key {
        debug_assert_eq!(key.iter().sum::<u32>() as usize, r);
        keys.push(key);
        gens.push(Poly::from_terms(&out_vars, terms));
    }
    Ok(SpectralIdeal {
        ideal: Ideal::new(&out_vars, gens)?,
        keys,
        base_vars: base.clone(),
    })
}

/// Colength of the fiber ideal over a rational base point.
pub fn spectral_fiber_degree(s: &SpectralIdeal, point: &[Rat]) -> Result<u64> {
    if point.len() != s.base_vars.len() {
        return Err(Error::PointLength {
            expected: s.base_vars.len(),
            got: point.len(),
        });
    }
    let bindings: Vec<(&str, Rat)> = s
        .base_vars
        .names()
        .iter()
        .map(String::as_str)
        .zip(point.iter().cloned())
        .collect();
    Ok(s.ideal.evaluate(&bindings)?.colength()?)
}

/// Checks `I ⊆ P` and, for each generator `g` of the reduced basis of the
/// linear ideal `P`, that `g^k ∈ I` for some `k ≤ max_power`.
pub fn certify_radical(i: &Ideal, p: &Ideal, max_power: u32) -> Result<bool> {
    for g in p.gens() {
        if g.total_degree().is_some_and(|d| d > 1) {
            return Err(Error::NonLinearGenerator(g.to_string()));
        }
    }
    let p = if p.vars() == i.vars() { p.clone() } else { p.embed(i.vars())? };
    if !p.contains_ideal(i)? {
        return Ok(false);
    }
    for g in p.basis()? {
        let mut power = g.clone();
        let mut found = false;
        for _ in 0..max_power {
            if i.contains(&power)? {
                found = true;
                break;
            }
            power = &power * g;
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}
