use crate::error::{Error, Result};
use crate::grasseq::{pluecker_relations_over, rankd_ideal, subsets, GrassIdeal};
use crate::grobner::Ideal;
use crate::higgsfield::{validate_higgs, HiggsField};
use crate::polyring::{Poly, PolyMatrix, VarSet};

/// `𝒪 ⊕ Ω¹` on `𝔸ⁿ`: `φ^(h)` has a single 1 at `(1, h+1)`.
pub fn simpson_system(n: usize) -> Result<HiggsField> {
    if n == 0 {
        return Err(Error::InvalidField("the Simpson system needs n ≥ 1".into()));
    }
    let vars = VarSet::indexed("x", n);
    let mats = (0..n)
        .map(|h| {
            PolyMatrix::from_fn(&vars, n + 1, n + 1, |i, j| {
                if i == 0 && j == h + 1 {
                    Poly::one(&vars)
                } else {
                    Poly::zero(&vars)
                }
            })
        })
        .collect();
    validate_higgs(mats, &vars)
}

#[derive(Clone, Debug)]
pub struct SimpsonReport {
    pub n: usize,
    pub d: usize,
    pub grass: GrassIdeal,
    /// `(p_K : K ⊆ {2..n+1})`, plus Plücker relations when `d ≥ 2`.
    pub radical: Ideal,
    /// Smallest `k` with `p_K^k ∈ I` for every `K`.
    pub power: u32,
}

const MAX_POWER: u32 = 4;

/// Certifies `√I = (p_K : K ⊆ {2..n+1}) + Plücker` for the rank-`d` ideal.
pub fn simpson_grass_check(n: usize, d: usize) -> Result<SimpsonReport> {
    let h = simpson_system(n)?;
    let r = n + 1;
    if d == 0 || d > n {
        return Err(Error::DegreeOutOfRange { d, r });
    }
    let grass = rankd_ideal(&h, d, d >= 2)?;
    let vars = grass.ideal.vars().clone();
    let nb = h.base_vars().len();
    let ks = subsets(r, d);
    let schubert: Vec<Poly> = ks
        .iter()
        .enumerate()
        .filter(|(_, k)| !k.contains(&1))
        .map(|(idx, _)| Poly::var_at(&vars, nb + idx))
        .collect();
    let mut gens = schubert.clone();
    if d >= 2 {
        gens.extend(pluecker_relations_over(&vars, nb, r, d));
    }
    let radical = Ideal::new(&vars, gens)?;
    let i = &grass.ideal;
    if !radical.contains_ideal(i)? {
        return Err(Error::CertificationFailed("the ideal is not inside the Schubert ideal".into()));
    }
    let mut power = 1;
    for p in &schubert {
        let mut k = 1;
        let mut pk = p.clone();
        while !i.contains(&pk)? {
            k += 1;
            if k > MAX_POWER {
                return Err(Error::CertificationFailed(format!("no power of {p} up to {MAX_POWER} lies in the ideal")));
            }
            pk = &pk * p;
        }
        power = power.max(k);
    }
    Ok(SimpsonReport {
        n,
        d,
        grass,
        radical,
        power,
    })
}
