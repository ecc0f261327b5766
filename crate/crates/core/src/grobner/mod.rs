//! Ideals, reduced Gröbner bases and the operations built on them.

mod audit;
mod buchberger;
mod monomial;
mod zerodim;

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::polyring::{Mono, MonomialOrder, Poly, PolyError, VarSet};

pub use audit::{audit_counts, enable_audit, AuditCounts};
pub use buchberger::GBReport;
pub use monomial::monomial_minimal_primes;
pub use zerodim::DEFAULT_RETRIES;

pub const DEFAULT_SPAIR_BUDGET: u64 = 200_000;

static GLOBAL_BUDGET: AtomicU64 = AtomicU64::new(DEFAULT_SPAIR_BUDGET);

/// Sets the S-pair budget used by ideals that do not carry their own.
pub fn set_default_spair_budget(budget: u64) {
    GLOBAL_BUDGET.store(budget, Ordering::SeqCst);
}

pub fn default_spair_budget() -> u64 {
    GLOBAL_BUDGET.load(Ordering::SeqCst)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GbError {
    #[error("S-pair budget of {budget} exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("random charts disagree after {attempts} attempts")]
    Disagreement { attempts: usize },
    #[error("generator {index} is not homogeneous in the declared group {group}")]
    NotHomogeneous { index: usize, group: usize },
    #[error("generator {0} is not a squarefree monomial")]
    NotSquarefreeMonomial(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Generators over a variable set together with a monomial order.
#[derive(Clone)]
pub struct Ideal {
    vars: VarSet,
    gens: Vec<Poly>,
    order: MonomialOrder,
    budget: Option<u64>,
    gb: OnceLock<Arc<GBReport>>,
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(vars: &VarSet, gens: Vec<Poly>) -> Result<Self, PolyError> {
        for g in &gens {
            if g.vars() != vars {
                return Err(PolyError::VarSetMismatch {
                    left: vars.names().join(","),
                    right: g.vars().names().join(","),
                });
            }
        }
        Ok(Ideal {
            vars: vars.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            order: MonomialOrder::Grevlex,
            budget: None,
            gb: OnceLock::new(),
        })
    }

    pub fn parse(vars: &VarSet, gens: &[&str]) -> Result<Self, PolyError> {
        let polys = gens
            .iter()
            .map(|s| crate::polyring::parse_poly(s, vars))
            .collect::<Result<Vec<_>, _>>()?;
        Ideal::new(vars, polys)
    }

    pub fn zero(vars: &VarSet) -> Self {
        Ideal::new(vars, Vec::new()).unwrap()
    }

    pub fn unit(vars: &VarSet) -> Self {
        Ideal::new(vars, vec![Poly::one(vars)]).unwrap()
    }

    /// The ideal generated by the named variables.
    pub fn of_vars(vars: &VarSet, idx: &[usize]) -> Self {
        Ideal::new(vars, idx.iter().map(|&i| Poly::var_at(vars, i)).collect()).unwrap()
    }

    pub fn with_order(mut self, order: MonomialOrder) -> Self {
        if order != self.order {
            self.order = order;
            self.gb = OnceLock::new();
        }
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = Some(budget);
        self
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    fn budget(&self) -> u64 {
        self.budget.unwrap_or_else(default_spair_budget)
    }

    fn derived(&self, vars: &VarSet, gens: Vec<Poly>) -> Ideal {
        let mut out = Ideal::new(vars, gens).expect("same variables");
        out.budget = self.budget;
        out
    }

    /// Reduced Gröbner basis, computed once and cached.
    pub fn groebner(&self) -> Result<&GBReport, GbError> {
        if let Some(r) = self.gb.get() {
            return Ok(r);
        }
        let r = buchberger::groebner(&self.vars, &self.gens, self.order, self.budget())?;
        Ok(self.gb.get_or_init(|| Arc::new(r)))
    }

    pub fn basis(&self) -> Result<&[Poly], GbError> {
        Ok(&self.groebner()?.basis)
    }

    pub fn is_unit(&self) -> Result<bool, GbError> {
        Ok(self.basis()?.iter().any(Poly::is_unit))
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn normal_form(&self, p: &Poly) -> Result<Poly, GbError> {
        check_vars(&self.vars, p)?;
        Ok(buchberger::normal_form_with(p, self.basis()?, self.order))
    }

    pub fn contains(&self, p: &Poly) -> Result<bool, GbError> {
        if p.is_zero() {
            return Ok(true);
        }
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool, GbError> {
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality via reduced bases under `self`'s order.
    pub fn equals(&self, other: &Ideal) -> Result<bool, GbError> {
        if self.vars != other.vars {
            return Err(PolyError::VarSetMismatch {
                left: self.vars.names().join(","),
                right: other.vars.names().join(","),
            }
            .into());
        }
        let other = if other.order == self.order {
            other.clone()
        } else {
            other.clone().with_order(self.order)
        };
        Ok(self.basis()? == other.basis()?)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal, GbError> {
        check_same(&self.vars, &other.vars)?;
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Ok(self.derived(&self.vars, g).with_order(self.order))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal, GbError> {
        check_same(&self.vars, &other.vars)?;
        let mut g = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                g.push(a * b);
            }
        }
        Ok(self.derived(&self.vars, g))
    }

    pub fn add_gens(&self, more: impl IntoIterator<Item = Poly>) -> Result<Ideal, GbError> {
        let mut g = self.gens.clone();
        for p in more {
            check_vars(&self.vars, &p)?;
            g.push(p);
        }
        Ok(self.derived(&self.vars, g).with_order(self.order))
    }

    /// Re-expresses the generators over a larger variable set.
    pub fn embed(&self, target: &VarSet) -> Result<Ideal, GbError> {
        let g = self
            .gens
            .iter()
            .map(|p| p.embed(target))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.derived(target, g))
    }

    /// Evaluates generators at the given values; the result lives over the
    /// unbound variables.
    pub fn evaluate(&self, bindings: &[(&str, crate::polyring::Rat)]) -> Result<Ideal, GbError> {
        let keep: Vec<String> = self
            .vars
            .names()
            .iter()
            .filter(|n| !bindings.iter().any(|(b, _)| b == n))
            .cloned()
            .collect();
        for (b, _) in bindings {
            if !self.vars.contains(b) {
                return Err(PolyError::UnknownVariable {
                    name: b.to_string(),
                    pos: 0,
                }
                .into());
            }
        }
        let target = VarSet::new(keep)?;
        let mut g = Vec::with_capacity(self.gens.len());
        for p in &self.gens {
            let e = p.evaluate(bindings)?;
            g.push(if e.vars() == &target { e } else { e.rename(&target) });
        }
        Ok(self.derived(&target, g))
    }

    /// Eliminates the named variables; the result lives over the rest, in
    /// their original relative order.
    pub fn eliminate(&self, names: &[&str]) -> Result<Ideal, GbError> {
        let mut elim = Vec::new();
        for n in names {
            if !self.vars.contains(n) {
                return Err(PolyError::UnknownVariable {
                    name: n.to_string(),
                    pos: 0,
                }
                .into());
            }
            elim.push(n.to_string());
        }
        let rest: Vec<String> = self
            .vars
            .names()
            .iter()
            .filter(|n| !elim.contains(n))
            .cloned()
            .collect();
        let k = elim.len();
        let mut all = elim;
        all.extend(rest.iter().cloned());
        let big = VarSet::new(all)?;
        let rest_vars = VarSet::new(rest)?;
        let work = self.embed(&big)?.with_order(MonomialOrder::Elimination(k));
        let kept: Vec<Poly> = work
            .basis()?
            .iter()
            .filter(|p| p.support().iter().all(|&i| i >= k))
            .map(|p| p.embed(&rest_vars))
            .collect::<Result<_, _>>()?;
        Ok(self.derived(&rest_vars, kept))
    }

    /// `self ∩ other` via a fresh variable t: eliminate t from t·I + (1−t)·J.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal, GbError> {
        check_same(&self.vars, &other.vars)?;
        if self.gens.is_empty() || other.gens.is_empty() {
            return Ok(self.derived(&self.vars, Vec::new()));
        }
        let t = self.vars.fresh_name("t");
        let big = self.vars.prepend([t.as_str()])?;
        let tp = Poly::var_at(&big, 0);
        let one_minus_t = &Poly::one(&big) - &tp;
        let mut g = Vec::new();
        for p in &self.gens {
            g.push(&tp * &p.embed(&big)?);
        }
        for p in &other.gens {
            g.push(&one_minus_t * &p.embed(&big)?);
        }
        self.derived(&big, g).eliminate(&[t.as_str()])
    }

    /// `(self : f^∞)`.
    pub fn saturate(&self, f: &Poly) -> Result<Ideal, GbError> {
        check_vars(&self.vars, f)?;
        let t = self.vars.fresh_name("t");
        let big = self.vars.prepend([t.as_str()])?;
        let tp = Poly::var_at(&big, 0);
        let mut g: Vec<Poly> = self
            .gens
            .iter()
            .map(|p| p.embed(&big))
            .collect::<Result<_, _>>()?;
        g.push(&Poly::one(&big) - &(&tp * &f.embed(&big)?));
        self.derived(&big, g).eliminate(&[t.as_str()])
    }

    /// Rabinowitsch: `p ∈ √I` iff `1 ∈ I + (1 − w·p)`.
    pub fn radical_contains(&self, p: &Poly) -> Result<bool, GbError> {
        check_vars(&self.vars, p)?;
        if p.is_zero() {
            return Ok(true);
        }
        let w = self.vars.fresh_name("w");
        let big = self.vars.extend([w.as_str()])?;
        let wp = Poly::var_at(&big, big.len() - 1);
        let mut g: Vec<Poly> = self
            .gens
            .iter()
            .map(|q| q.embed(&big))
            .collect::<Result<_, _>>()?;
        g.push(&Poly::one(&big) - &(&wp * &p.embed(&big)?));
        self.derived(&big, g).is_unit()
    }

    /// Checks that every S-polynomial of the cached basis reduces to zero.
    pub fn verify_groebner(&self) -> Result<bool, GbError> {
        Ok(buchberger::all_spolys_reduce(self.basis()?, self.order))
    }

    /// Leading monomials of the reduced basis.
    pub fn leading_monomials(&self) -> Result<Vec<Mono>, GbError> {
        Ok(buchberger::leading_monomials(self.basis()?, self.order))
    }

    /// Number of standard monomials (affine colength).
    pub fn colength(&self) -> Result<u64, GbError> {
        zerodim::colength(self)
    }

    /// Length of the zero-dimensional (multi-)projective scheme; `groups`
    /// lists disjoint sets of variable indices, each carrying its own grading.
    pub fn projective_degree(&self, groups: &[Vec<usize>], seed: u64) -> Result<u64, GbError> {
        zerodim::projective_degree(self, groups, seed, zerodim::DEFAULT_RETRIES)
    }

    /// Number of distinct points of the zero-dimensional (multi-)projective
    /// scheme, via random charts and the radical of the affine piece.
    pub fn projective_point_count(&self, groups: &[Vec<usize>], seed: u64) -> Result<u64, GbError> {
        zerodim::projective_point_count(self, groups, seed, zerodim::DEFAULT_RETRIES)
    }

    /// Radical of a zero-dimensional affine ideal.
    pub fn zero_dim_radical(&self) -> Result<Ideal, GbError> {
        zerodim::zero_dim_radical(self)
    }

    /// Number of distinct affine points of a zero-dimensional ideal.
    pub fn affine_point_count(&self) -> Result<u64, GbError> {
        self.zero_dim_radical()?.colength()
    }

    /// Index lists for variables named in `names`.
    pub fn var_indices(&self, names: &[&str]) -> Result<Vec<usize>, GbError> {
        names
            .iter()
            .map(|n| {
                self.vars.index_of(n).ok_or_else(|| {
                    GbError::Poly(PolyError::UnknownVariable {
                        name: n.to_string(),
                        pos: 0,
                    })
                })
            })
            .collect()
    }
}

fn check_vars(vars: &VarSet, p: &Poly) -> Result<(), GbError> {
    check_same(vars, p.vars())
}

fn check_same(a: &VarSet, b: &VarSet) -> Result<(), GbError> {
    if a == b {
        Ok(())
    } else {
        Err(PolyError::VarSetMismatch {
            left: a.names().join(","),
            right: b.names().join(","),
        }
        .into())
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.gens.iter().map(ToString::to_string).collect();
        write!(f, "Ideal({})", g.join(", "))
    }
}

pub fn groebner_basis(i: &Ideal) -> Result<GBReport, GbError> {
    i.groebner().cloned()
}

pub fn normal_form(p: &Poly, i: &Ideal) -> Result<Poly, GbError> {
    i.normal_form(p)
}

pub fn ideal_member(p: &Poly, i: &Ideal) -> Result<bool, GbError> {
    i.contains(p)
}

pub fn ideal_equal(i: &Ideal, j: &Ideal) -> Result<bool, GbError> {
    i.equals(j)
}

pub fn ideal_intersect(i: &Ideal, j: &Ideal) -> Result<Ideal, GbError> {
    i.intersect(j)
}

/// Intersection of a nonempty list.
pub fn ideal_intersect_all(ideals: &[Ideal]) -> Result<Ideal, GbError> {
    let mut it = ideals.iter();
    let mut acc = it.next().expect("at least one ideal").clone();
    for j in it {
        acc = acc.intersect(j)?;
    }
    Ok(acc)
}

pub fn radical_member(p: &Poly, i: &Ideal) -> Result<bool, GbError> {
    i.radical_contains(p)
}

pub fn projective_degree(i: &Ideal, groups: &[Vec<usize>], seed: u64) -> Result<u64, GbError> {
    i.projective_degree(groups, seed)
}
