//! Buchberger's algorithm with the Gebauer–Möller pair update and the normal
//! selection strategy. Polynomials are kept primitive over ℤ and reduced
//! fraction-free; the working basis is tail-reduced after every insertion.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::GbError;
use crate::polyring::{Mono, MonomialOrder, Poly, Rat, VarSet};

/// Content is stripped from a remainder every this many reduction steps.
const CONTENT_EVERY: usize = 4;

/// Integer terms in ascending order; the leading term is last.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct DPoly {
    pub(crate) terms: Vec<(Mono, BigInt)>,
}

impl DPoly {
    /// `s * p` with integer coefficients, together with `s`.
    fn from_poly_scaled(p: &Poly, order: MonomialOrder) -> (Self, Rat) {
        let den = p.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let mut terms: Vec<(Mono, BigInt)> = p
            .terms()
            .map(|(m, c)| (m.clone(), c.numer() * (&den / c.denom())))
            .collect();
        terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
        let mut d = DPoly { terms };
        let content = d.make_primitive();
        (d, Rat::new(den, content))
    }

    pub(crate) fn from_poly(p: &Poly, order: MonomialOrder) -> Self {
        Self::from_poly_scaled(p, order).0
    }

    /// Monic rational polynomial.
    pub(crate) fn to_poly(&self, vars: &VarSet) -> Poly {
        let lc = Rat::from_integer(self.lc().clone());
        self.to_poly_over(vars, &lc)
    }

    fn to_poly_over(&self, vars: &VarSet, den: &Rat) -> Poly {
        Poly::from_terms(
            vars,
            self.terms.iter().map(|(m, c)| (m.clone(), Rat::from_integer(c.clone()) / den)),
        )
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn lm(&self) -> &Mono {
        &self.terms.last().unwrap().0
    }

    fn lc(&self) -> &BigInt {
        &self.terms.last().unwrap().1
    }

    /// Divides by the content, signed so that the leading coefficient is
    /// positive, and returns that divisor.
    fn make_primitive(&mut self) -> BigInt {
        let Some(mut g) = content(self.terms.iter().map(|t| &t.1)) else {
            return BigInt::one();
        };
        if self.lc().is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for t in &mut self.terms {
                t.1 = &t.1 / &g;
            }
        }
        g
    }

    /// `a * self - b * m * g`.
    fn comb(&self, a: &BigInt, b: &BigInt, m: &Mono, g: &DPoly, order: MonomialOrder) -> DPoly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut x = self.terms.iter().peekable();
        let mut y = g.terms.iter().peekable();
        let scaled = |c: &BigInt| if a.is_one() { c.clone() } else { c * a };
        loop {
            let ord = match (x.peek(), y.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (Some(s), Some(t)) => order.cmp(&s.0, &t.0.mul(m)),
            };
            match ord {
                Ordering::Less => {
                    let (sm, sc) = x.next().unwrap();
                    out.push((sm.clone(), scaled(sc)));
                }
                Ordering::Greater => {
                    let (tm, tc) = y.next().unwrap();
                    out.push((tm.mul(m), -(tc * b)));
                }
                Ordering::Equal => {
                    let (sm, sc) = x.next().unwrap();
                    let (_, tc) = y.next().unwrap();
                    let c = scaled(sc) - tc * b;
                    if !c.is_zero() {
                        out.push((sm.clone(), c));
                    }
                }
            }
        }
        DPoly { terms: out }
    }

    fn without_lead(&self) -> DPoly {
        DPoly {
            terms: self.terms[..self.terms.len() - 1].to_vec(),
        }
    }
}

/// gcd of the values, or `None` when there are none. Stops early at 1.
fn content<'a>(cs: impl Iterator<Item = &'a BigInt>) -> Option<BigInt> {
    let mut g: Option<BigInt> = None;
    for c in cs {
        let next = match g {
            None => c.abs(),
            Some(h) => h.gcd(c),
        };
        if next.is_one() {
            return Some(next);
        }
        g = Some(next);
    }
    g
}

/// Fully reduces `p` modulo `basis` without division. Returns `(r, s)` where
/// `r = s * NF(p)` for a nonzero rational `s`.
fn reduce_scaled(p: &DPoly, basis: &[&DPoly], order: MonomialOrder) -> (DPoly, Rat) {
    let mut rem: Vec<(Mono, BigInt)> = Vec::new();
    let mut cur = p.clone();
    let mut scale = Rat::one();
    let mut steps = 0usize;
    while let Some((m, c)) = cur.terms.last() {
        let divisor = basis
            .iter()
            .find_map(|g| g.lm().quotient_of(m).map(|q| (g, q)));
        let Some((g, q)) = divisor else {
            rem.push(cur.terms.pop().unwrap());
            continue;
        };
        let d = g.lc().gcd(c);
        let (a, b) = (g.lc() / &d, c / &d);
        cur = cur.comb(&a, &b, &q, g, order);
        if !a.is_one() {
            for t in &mut rem {
                t.1 *= &a;
            }
            scale *= Rat::from_integer(a);
        }
        steps += 1;
        if steps.is_multiple_of(CONTENT_EVERY) {
            strip_content(&mut cur.terms, &mut rem, &mut scale);
        }
    }
    let mut empty = Vec::new();
    strip_content(&mut rem, &mut empty, &mut scale);
    rem.reverse();
    (DPoly { terms: rem }, scale)
}

fn strip_content(a: &mut [(Mono, BigInt)], b: &mut [(Mono, BigInt)], scale: &mut Rat) {
    let Some(g) = content(a.iter().chain(b.iter()).map(|t| &t.1)) else {
        return;
    };
    if g.is_one() {
        return;
    }
    for t in a.iter_mut().chain(b.iter_mut()) {
        t.1 = &t.1 / &g;
    }
    *scale /= Rat::from_integer(g);
}

/// Primitive remainder of `p` modulo `basis`, up to a scalar.
fn reduce(p: &DPoly, basis: &[&DPoly], order: MonomialOrder) -> DPoly {
    let mut r = reduce_scaled(p, basis, order).0;
    r.make_primitive();
    r
}

/// Leading term of `p` followed by its tail reduced modulo `basis`, primitive.
fn reduce_tail(p: &DPoly, basis: &[&DPoly], order: MonomialOrder) -> DPoly {
    let (mut r, s) = reduce_scaled(&p.without_lead(), basis, order);
    // r = s * tail, so s * lead keeps the ratio; clear the denominator of s
    let (n, d) = (s.numer(), s.denom());
    for t in &mut r.terms {
        t.1 *= d;
    }
    let (m, c) = p.terms.last().unwrap();
    r.terms.push((m.clone(), c * n));
    r.make_primitive();
    r
}

fn spoly(f: &DPoly, g: &DPoly, order: MonomialOrder) -> DPoly {
    let l = f.lm().lcm(g.lm());
    let mf = f.lm().quotient_of(&l).unwrap();
    let mg = g.lm().quotient_of(&l).unwrap();
    let d = f.lc().gcd(g.lc());
    let (a, b) = (g.lc() / &d, f.lc() / &d);
    let lifted = DPoly {
        terms: f.terms.iter().map(|(m, c)| (m.mul(&mf), c.clone())).collect(),
    };
    lifted.comb(&a, &b, &mg, g, order)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
}

/// Result of a Gröbner basis computation.
#[derive(Clone, Debug, PartialEq)]
pub struct GBReport {
    /// Reduced, monic, sorted by descending leading monomial.
    pub basis: Vec<Poly>,
    pub s_pairs_processed: u64,
    pub reductions_to_zero: u64,
}

struct Engine {
    order: MonomialOrder,
    polys: Vec<DPoly>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl Engine {
    fn active_refs(&self) -> Vec<&DPoly> {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, a)| **a)
            .map(|(p, _)| p)
            .collect()
    }

    /// Gebauer–Möller update after appending a new element.
    fn update(&mut self, h: DPoly) {
        let hidx = self.polys.len();
        let hm = h.lm().clone();
        self.polys.push(h);
        self.active.push(true);

        let mut c: Vec<Pair> = (0..hidx)
            .filter(|&g| self.active[g])
            .map(|g| Pair {
                i: g,
                j: hidx,
                lcm: self.polys[g].lm().lcm(&hm),
            })
            .collect();
        let mut d: Vec<Pair> = Vec::new();
        while let Some(p) = (!c.is_empty()).then(|| c.remove(0)) {
            let coprime = self.polys[p.i].lm().coprime(&hm);
            let dominated = c.iter().chain(d.iter()).any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                d.push(p);
            }
        }
        let e: Vec<Pair> = d
            .into_iter()
            .filter(|p| !self.polys[p.i].lm().coprime(&hm))
            .collect();

        let polys = &self.polys;
        self.pairs.retain(|p| {
            !(hm.divides(&p.lcm)
                && polys[p.i].lm().lcm(&hm) != p.lcm
                && polys[p.j].lm().lcm(&hm) != p.lcm)
        });
        self.pairs.extend(e);

        for g in 0..hidx {
            if self.active[g] && hm.divides(self.polys[g].lm()) {
                self.active[g] = false;
            }
        }
        self.tail_reduce();
    }

    /// Reduces the tails of the active elements against each other; leading
    /// monomials, and so the pair set, are unchanged. Short tails keep the
    /// coefficients of later remainders small.
    fn tail_reduce(&mut self) {
        let idx: Vec<usize> = (0..self.polys.len()).filter(|&g| self.active[g]).collect();
        for &g in &idx {
            let others: Vec<&DPoly> = idx.iter().filter(|&&o| o != g).map(|&o| &self.polys[o]).collect();
            let r = reduce_tail(&self.polys[g], &others, self.order);
            self.polys[g] = r;
        }
    }

    fn pop_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let order = self.order;
        let best = (0..self.pairs.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
                order
                    .cmp(&pa.lcm, &pb.lcm)
                    .then_with(|| (pa.j, pa.i).cmp(&(pb.j, pb.i)))
            })
            .unwrap();
        Some(self.pairs.swap_remove(best))
    }
}

/// Reduced Gröbner basis of `gens` under `order`.
pub(crate) fn groebner(
    vars: &VarSet,
    gens: &[Poly],
    order: MonomialOrder,
    budget: u64,
) -> Result<GBReport, GbError> {
    let mut eng = Engine {
        order,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    let mut inputs: Vec<DPoly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| DPoly::from_poly(g, order))
        .collect();
    // small leading monomials first keeps early reductions cheap
    inputs.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    for f in inputs {
        let h = reduce(&f, &eng.active_refs(), order);
        if !h.is_zero() {
            if h.lm().is_one() {
                return Ok(unit_report(vars, 0, 0));
            }
            eng.update(h);
        }
    }

    let mut processed = 0u64;
    let mut zeros = 0u64;
    while let Some(p) = eng.pop_pair() {
        processed += 1;
        if processed > budget {
            return Err(GbError::BudgetExceeded { budget });
        }
        let s = spoly(&eng.polys[p.i], &eng.polys[p.j], order);
        let h = reduce(&s, &eng.active_refs(), order);
        if h.is_zero() {
            zeros += 1;
            continue;
        }
        if h.lm().is_one() {
            return Ok(unit_report(vars, processed, zeros));
        }
        eng.update(h);
    }

    let basis = interreduce(eng.active_refs().into_iter().cloned().collect(), order);
    let report = GBReport {
        basis: basis.iter().map(|d| d.to_poly(vars)).collect(),
        s_pairs_processed: processed,
        reductions_to_zero: zeros,
    };
    super::audit::record(vars, order, &report.basis);
    Ok(report)
}

fn unit_report(vars: &VarSet, processed: u64, zeros: u64) -> GBReport {
    GBReport {
        basis: vec![Poly::one(vars)],
        s_pairs_processed: processed,
        reductions_to_zero: zeros,
    }
}

/// Minimalizes and tail-reduces a Gröbner basis; output sorted by descending
/// leading monomial.
fn interreduce(mut g: Vec<DPoly>, order: MonomialOrder) -> Vec<DPoly> {
    g.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    let mut minimal: Vec<DPoly> = Vec::new();
    for p in g {
        if !minimal.iter().any(|q| q.lm().divides(p.lm())) {
            minimal.push(p);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<&DPoly> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, q)| q)
            .collect();
        out.push(reduce_tail(&minimal[k], &others, order));
    }
    out.reverse();
    out
}

/// Checks that every S-polynomial of `basis` reduces to zero.
pub(crate) fn all_spolys_reduce(basis: &[Poly], order: MonomialOrder) -> bool {
    let d: Vec<DPoly> = basis
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| DPoly::from_poly(p, order))
        .collect();
    let refs: Vec<&DPoly> = d.iter().collect();
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            if d[i].lm().coprime(d[j].lm()) {
                continue;
            }
            if !reduce(&spoly(&d[i], &d[j], order), &refs, order).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Remainder of `p` modulo `basis` (assumed a Gröbner basis under `order`).
pub(crate) fn normal_form_with(p: &Poly, basis: &[Poly], order: MonomialOrder) -> Poly {
    if p.is_zero() {
        return p.clone();
    }
    let d: Vec<DPoly> = basis.iter().map(|b| DPoly::from_poly(b, order)).collect();
    let refs: Vec<&DPoly> = d.iter().collect();
    let (q, s1) = DPoly::from_poly_scaled(p, order);
    let (r, s2) = reduce_scaled(&q, &refs, order);
    r.to_poly_over(p.vars(), &(s1 * s2))
}

pub(crate) fn leading_monomials(basis: &[Poly], order: MonomialOrder) -> Vec<Mono> {
    basis
        .iter()
        .filter_map(|p| p.leading(order).map(|(m, _)| m.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_poly;

    #[test]
    fn scaled_reduction_recovers_exact_remainder() {
        let v = VarSet::new(["x", "y"]).unwrap();
        let basis: Vec<Poly> = ["2*x^2 - 3*y", "5*y^2 + 1/7*x"]
            .iter()
            .map(|s| parse_poly(s, &v).unwrap())
            .collect();
        let p = parse_poly("1/2*x^3*y + 4*x*y^2 - 1/3", &v).unwrap();
        let nf = normal_form_with(&p, &basis, MonomialOrder::Grevlex);
        // same remainder from plain rational division by the same reducers
        let mut cur = p.clone();
        let mut rem = Poly::zero(&v);
        while let Some((m, c)) = cur.leading(MonomialOrder::Grevlex).map(|(m, c)| (m.clone(), c.clone())) {
            let hit = basis.iter().find_map(|g| {
                let (gm, gc) = g.leading(MonomialOrder::Grevlex).unwrap();
                gm.quotient_of(&m).map(|q| (g, q, gc.clone()))
            });
            match hit {
                Some((g, q, gc)) => {
                    let t = Poly::from_terms(&v, [(q, &c / &gc)]);
                    cur = &cur - &(&t * g);
                }
                None => {
                    let t = Poly::from_terms(&v, [(m, c)]);
                    cur = &cur - &t;
                    rem = &rem + &t;
                }
            }
        }
        assert_eq!(nf, rem);
    }
}
