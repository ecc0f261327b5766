//! Rank-2 fields: discriminant, the classification of the rank-1 Higgs
//! Grassmannian, and its singular locus over a curve.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grasseq::rank1_ideal;
use crate::grobner::Ideal;
use crate::higgsfield::{validate_higgs, HiggsField};
use crate::polyring::{gcd_many, gcd_multivariate, rat, Mono, Poly, PolyMatrix, VarSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rank2Tag {
    Center,
    Vertical,
    SplitDegenerate,
    Nonreduced,
    ReducibleSquare,
    Irreducible,
}

impl Rank2Tag {
    pub fn as_str(self) -> &'static str {
        match self {
            Rank2Tag::Center => "center",
            Rank2Tag::Vertical => "vertical",
            Rank2Tag::SplitDegenerate => "split-degenerate",
            Rank2Tag::Nonreduced => "nonreduced",
            Rank2Tag::ReducibleSquare => "reducible-square",
            Rank2Tag::Irreducible => "irreducible",
        }
    }
}

impl fmt::Display for Rank2Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Evidence for a tag, over the base variables followed by `z1, z2`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Rank2Witness {
    /// gcd of the normalized entries (vertical case).
    pub gcd: Option<Poly>,
    /// `√Δ` (reducible-square case).
    pub sqrt_delta: Option<Poly>,
    /// Linear forms in `z1, z2` with `q = unit · L1 · L2`.
    pub factors: Vec<Poly>,
    /// The fiber quadric `q`.
    pub quadric: Option<Poly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rank2Class {
    pub tag: Rank2Tag,
    /// Index of the matrix the tag was read from (`None` for the center).
    pub which: Option<usize>,
    pub delta: Poly,
    pub witness: Rank2Witness,
}

fn check_rank(h: &HiggsField) -> Result<()> {
    if h.r() != 2 {
        return Err(Error::RankMismatch { expected: 2, got: h.r() });
    }
    Ok(())
}

/// `(φ22 − φ11)² + 4 φ12 φ21` of the matrix `which`.
pub fn discriminant(h: &HiggsField, which: usize) -> Result<Poly> {
    check_rank(h)?;
    Ok(discriminant_of(h.matrix(which)?))
}

fn discriminant_of(m: &PolyMatrix) -> Poly {
    let b = m.get(1, 1) - m.get(0, 0);
    &(&b * &b) + &(m.get(0, 1) * m.get(1, 0)).scale(&rat(4))
}

/// `a z1² + b z1 z2 + c z2²` with `a = ψ21`, `b = ψ22 − ψ11`, `c = −ψ12`.
struct Quadric {
    a: Poly,
    b: Poly,
    c: Poly,
    vars: VarSet,
    nb: usize,
}

impl Quadric {
    fn of(m: &PolyMatrix, base: &VarSet) -> Result<Quadric> {
        let vars = base.extend(["z1", "z2"])?;
        let e = |i, j| -> Result<Poly> { Ok(m.get(i, j).embed(&vars)?) };
        Ok(Quadric {
            a: e(1, 0)?,
            b: &e(1, 1)? - &e(0, 0)?,
            c: -&e(0, 1)?,
            nb: base.len(),
            vars,
        })
    }

    fn z(&self, k: usize) -> Poly {
        Poly::var_at(&self.vars, self.nb + k)
    }

    fn linear(&self, p: &Poly, q: &Poly) -> Result<Poly> {
        let g = gcd_multivariate(p, q)?;
        let l = &(p * &self.z(0)) + &(q * &self.z(1));
        Ok(l.div_exact(&g).expect("content divides").primitive_integer())
    }

    fn poly(&self) -> Poly {
        let (z1, z2) = (self.z(0), self.z(1));
        &(&(&self.a * &(&z1 * &z1)) + &(&self.b * &(&z1 * &z2))) + &(&self.c * &(&z2 * &z2))
    }
}

/// Splits `q` along the linear factor `l`; the cofactor must be linear in `z`.
fn split(q: &Poly, l: Poly) -> Result<Vec<Poly>> {
    let rest = q
        .div_exact(&l)
        .ok_or_else(|| Error::CertificationFailed(format!("{l} does not divide {q}")))?;
    Ok(vec![l, rest])
}

pub fn classify_rank2(h: &HiggsField) -> Result<Rank2Class> {
    check_rank(h)?;
    let base = h.base_vars();
    let Some(which) = h.matrices().iter().position(|m| m.scalar_value().is_none()) else {
        return Ok(Rank2Class {
            tag: Rank2Tag::Center,
            which: None,
            delta: Poly::zero(base),
            witness: Rank2Witness::default(),
        });
    };
    let m = h.matrix(which)?;
    let delta = discriminant_of(m);
    let q = Quadric::of(m, base)?;
    let quad = q.poly();
    let mut witness = Rank2Witness {
        quadric: Some(quad.clone()),
        ..Default::default()
    };
    let g = gcd_many([&q.a, &q.b, &q.c])?;
    let tag = if !g.is_constant() {
        witness.gcd = Some(g);
        Rank2Tag::Vertical
    } else if delta.is_zero() {
        // 4a·q = (2a z1 + b z2)², or q = c z2² when a = 0
        let l = if q.a.is_zero() {
            q.z(1)
        } else {
            q.linear(&q.a.scale(&rat(2)), &q.b)?
        };
        witness.factors = vec![l.clone(), l.clone()];
        let k = quad
            .div_exact(&(&l * &l))
            .ok_or_else(|| Error::CertificationFailed("quadric is not a square".into()))?;
        debug_assert!(k.is_constant());
        Rank2Tag::Nonreduced
    } else if q.a.is_zero() || q.c.is_zero() {
        let (z1, z2) = (q.z(0), q.z(1));
        let l = if q.a.is_zero() { z2 } else { z1 };
        witness.factors = split(&quad, l)?;
        Rank2Tag::SplitDegenerate
    } else if let Some(s) = delta.square_root() {
        let s = s.embed(&q.vars)?;
        let l1 = q.linear(&q.a.scale(&rat(2)), &(&q.b - &s))?;
        witness.factors = split(&quad, l1)?;
        witness.sqrt_delta = Some(s);
        Rank2Tag::ReducibleSquare
    } else {
        Rank2Tag::Irreducible
    };
    Ok(Rank2Class {
        tag,
        which: Some(which),
        delta,
        witness,
    })
}

/// Points of the curve `q = 0` in `B × ℙ¹` where `q` and all its partial
/// derivatives vanish, with the irrelevant locus `z1 = z2 = 0` removed.
pub fn singular_locus_rank2(h: &HiggsField, which: usize) -> Result<Ideal> {
    check_rank(h)?;
    if h.n() != 1 {
        return Err(Error::Hypothesis(format!("base dimension {} is not 1", h.n())));
    }
    let class = classify_rank2(h)?;
    if class.tag != Rank2Tag::Irreducible {
        return Err(Error::WrongTag {
            tag: class.tag.to_string(),
        });
    }
    let q = Quadric::of(h.matrix(which)?, h.base_vars())?;
    let f = q.poly();
    let mut gens = vec![f.clone()];
    gens.extend((0..q.vars.len()).map(|i| f.differentiate_at(i)));
    let i = Ideal::new(&q.vars, gens)?;
    let s1 = i.saturate(&q.z(0))?;
    let s2 = i.saturate(&q.z(1))?;
    Ok(s1.intersect(&s2)?)
}

/// Coefficients `(a, b, c)` of the [`rank1_ideal`] generator
/// `a z1² + b z1z2 + c z2²` of the matrix `which` alone.
pub fn rank1_quadric_coefficients(h: &HiggsField, which: usize) -> Result<(Poly, Poly, Poly)> {
    check_rank(h)?;
    let base = h.base_vars();
    let single = validate_higgs(vec![h.matrix(which)?.clone()], base)?;
    let g = rank1_ideal(&single)?;
    let nb = base.len();
    let coeff = |e1: u32, e2: u32| -> Poly {
        let terms = g.ideal.gens().iter().flat_map(|p| p.terms()).filter(|(m, _)| m.exp(nb) == e1 && m.exp(nb + 1) == e2)
            .map(|(m, c)| (Mono::from_exps(&(0..nb).map(|i| m.exp(i)).collect::<Vec<_>>()), c.clone()));
        Poly::from_terms(base, terms)
    };
    Ok((coeff(2, 0), coeff(1, 1), coeff(0, 2)))
}
