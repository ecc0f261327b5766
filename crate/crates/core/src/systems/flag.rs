use crate::error::{Error, Result};
use crate::grasseq::{rank1_ideal_named, GrassIdeal};
use crate::grobner::Ideal;
use crate::higgsfield::HiggsField;
use crate::polyring::{Poly, Rat, VarSet};

/// `I₁ + I₂ + (Σ y_i z_i)` over base, `z1..z3`, `y1..y3`.
#[derive(Clone, Debug)]
pub struct FlagIdeal {
    pub ideal: Ideal,
    /// Rank-1 part in the `z`'s.
    pub i1: GrassIdeal,
    /// Rank-2 part in dual coordinates `y`, from the transposed field.
    pub i2: GrassIdeal,
    pub incidence: Poly,
    pub base_vars: VarSet,
}

pub fn flag_ideal(h: &HiggsField) -> Result<FlagIdeal> {
    if h.r() != 3 {
        return Err(Error::RankMismatch { expected: 3, got: h.r() });
    }
    if h.n() != 1 {
        return Err(Error::BaseMismatch { expected: 1, got: h.n() });
    }
    let i1 = rank1_ideal_named(h, "z")?;
    let i2 = rank1_ideal_named(&h.transpose(), "y")?;
    let vars = h.base_vars().extend(["z1", "z2", "z3", "y1", "y2", "y3"])?;
    let nb = h.base_vars().len();
    let mut f = Poly::zero(&vars);
    for k in 0..3 {
        f = &f + &(&Poly::var_at(&vars, nb + 3 + k) * &Poly::var_at(&vars, nb + k));
    }
    let ideal = i1
        .ideal
        .embed(&vars)?
        .sum(&i2.ideal.embed(&vars)?)?
        .add_gens([f.clone()])?;
    Ok(FlagIdeal {
        ideal,
        i1,
        i2,
        incidence: f,
        base_vars: h.base_vars().clone(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberReport {
    /// Bihomogeneous length of the fiber in `ℙ² × ℙ²`.
    pub length: u64,
    /// Number of support points; `None` if the radical could not be formed.
    pub point_count: Option<u64>,
}

pub fn flag_fiber_report(f: &FlagIdeal, point: &[Rat], seed: u64) -> Result<FiberReport> {
    if point.len() != f.base_vars.len() {
        return Err(Error::PointLength {
            expected: f.base_vars.len(),
            got: point.len(),
        });
    }
    let bindings: Vec<(&str, Rat)> = f
        .base_vars
        .names()
        .iter()
        .map(String::as_str)
        .zip(point.iter().cloned())
        .collect();
    let fiber = f.ideal.evaluate(&bindings)?;
    let groups = [vec![0, 1, 2], vec![3, 4, 5]];
    let length = fiber.projective_degree(&groups, seed)?;
    let point_count = match fiber.projective_point_count(&groups, seed) {
        Ok(c) => Some(c),
        Err(crate::grobner::GbError::BudgetExceeded { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    Ok(FiberReport { length, point_count })
}

/// The three matrix shapes of the rank-3 flag table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlagCase {
    A,
    B { alpha: Rat },
    C { beta: Rat, gamma: Rat },
}

/// The constant field of the given case over the base `x`.
pub fn flag_case_field(case: &FlagCase) -> Result<HiggsField> {
    let vars = VarSet::new(["x"])?;
    let c = |q: &Rat| Poly::constant(&vars, q.clone());
    let one = Poly::one(&vars);
    let zero = Poly::zero(&vars);
    let rows = match case {
        FlagCase::A => vec![
            vec![zero.clone(), one.clone(), zero.clone()],
            vec![zero.clone(), zero.clone(), one.clone()],
            vec![zero.clone(), zero.clone(), zero.clone()],
        ],
        FlagCase::B { alpha } => {
            if alpha == &Rat::from_integer(0.into()) {
                return Err(Error::Hypothesis("α must be nonzero".into()));
            }
            vec![
                vec![zero.clone(), one.clone(), zero.clone()],
                vec![zero.clone(), zero.clone(), zero.clone()],
                vec![zero.clone(), zero.clone(), c(alpha)],
            ]
        }
        FlagCase::C { beta, gamma } => {
            let z = Rat::from_integer(0.into());
            if beta == &z || gamma == &z || beta == gamma {
                return Err(Error::Hypothesis("β, γ and β − γ must be nonzero".into()));
            }
            vec![
                vec![zero.clone(), zero.clone(), zero.clone()],
                vec![zero.clone(), c(beta), zero.clone()],
                vec![zero.clone(), zero.clone(), c(gamma)],
            ]
        }
    };
    let m = crate::polyring::PolyMatrix::from_rows(&vars, rows)?;
    crate::higgsfield::validate_higgs(vec![m], &vars)
}
