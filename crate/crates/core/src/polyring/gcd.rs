//! Multivariate gcd: recursive content / primitive part with a subresultant
//! remainder sequence in the last variable that occurs.

use num_traits::One;

use super::{MonomialOrder, Poly, PolyError};

/// A gcd of `a` and `b`, monic under grevlex (zero iff both are zero).
pub fn gcd_multivariate(a: &Poly, b: &Poly) -> Result<Poly, PolyError> {
    a.vars.check(&b.vars)?;
    Ok(gcd_rec(a, b).monic())
}

/// Gcd of a nonempty list (zero when every entry is zero).
pub fn gcd_many<'a, I>(polys: I) -> Result<Poly, PolyError>
where
    I: IntoIterator<Item = &'a Poly>,
{
    let mut it = polys.into_iter();
    let Some(first) = it.next() else {
        return Err(PolyError::ShapeMismatch);
    };
    let mut g = first.monic();
    for p in it {
        if g.is_unit() {
            break;
        }
        g = gcd_multivariate(&g, p)?;
    }
    Ok(g)
}

fn main_var(a: &Poly, b: &Poly) -> Option<usize> {
    (0..a.vars.len())
        .rev()
        .find(|&i| a.degree_in(i) > 0 || b.degree_in(i) > 0)
}

fn gcd_rec(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let Some(x) = main_var(a, b) else {
        return Poly::one(&a.vars);
    };
    if a.degree_in(x) == 0 {
        return gcd_rec(a, &content(b, x));
    }
    if b.degree_in(x) == 0 {
        return gcd_rec(&content(a, x), b);
    }
    let ca = content(a, x);
    let cb = content(b, x);
    let c = gcd_rec(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let g = subresultant_gcd(&pa, &pb, x);
    &c * &g
}

/// Gcd of the coefficients of `p` with respect to variable `x`.
fn content(p: &Poly, x: usize) -> Poly {
    let mut g = Poly::zero(&p.vars);
    for c in p.coefficients_in(x) {
        if c.is_zero() {
            continue;
        }
        g = gcd_rec(&g, &c);
        if g.is_unit() {
            return Poly::one(&p.vars);
        }
    }
    g.monic()
}

fn primitive_part(p: &Poly, x: usize) -> Poly {
    if p.is_zero() {
        return p.clone();
    }
    let c = content(p, x);
    p.div_exact(&c).expect("content divides")
}

fn lead_coeff(p: &Poly, x: usize) -> Poly {
    p.coefficients_in(x).pop().expect("nonzero polynomial")
}

/// Pseudo-remainder of `a` by `b` in variable `x`.
fn prem(a: &Poly, b: &Poly, x: usize) -> Poly {
    let db = b.degree_in(x);
    let lb = lead_coeff(b, x);
    let bc = b.coefficients_in(x);
    let mut r = a.coefficients_in(x);
    let mut steps = (r.len() as i64 - db as i64 + 1).max(0) as u32;
    while r.len() > db as usize && !(r.len() == 1 && r[0].is_zero()) {
        let shift = r.len() - 1 - db as usize;
        let lr = r.pop().unwrap();
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
        for (k, bk) in bc.iter().enumerate().take(db as usize) {
            r[shift + k] = &r[shift + k] - &(&lr * bk);
        }
        while r.len() > 1 && r.last().unwrap().is_zero() {
            r.pop();
        }
        steps = steps.saturating_sub(1);
        if r.len() == 1 && r[0].is_zero() {
            break;
        }
    }
    let mut out = Poly::from_coefficients_in(&a.vars, x, &r);
    if steps > 0 {
        out = &out * &lb.pow(steps);
    }
    out
}

fn subresultant_gcd(a: &Poly, b: &Poly, x: usize) -> Poly {
    let (mut a, mut b) = if a.degree_in(x) >= b.degree_in(x) {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    let one = Poly::one(&a.vars);
    let mut g = one.clone();
    let mut h = one.clone();
    loop {
        let delta = a.degree_in(x) - b.degree_in(x);
        let r = prem(&a, &b, x);
        if r.is_zero() {
            return primitive_part(&b, x);
        }
        if r.degree_in(x) == 0 {
            return one;
        }
        a = b;
        let denom = &g * &h.pow(delta);
        b = r.div_exact(&denom).expect("subresultant division is exact");
        g = lead_coeff(&a, x);
        h = if delta == 0 {
            h
        } else {
            g.pow(delta)
                .div_exact(&h.pow(delta - 1))
                .expect("subresultant division is exact")
        };
    }
}

impl Poly {
    /// True when the grevlex-leading coefficient is 1.
    pub fn is_monic(&self) -> bool {
        self.leading(MonomialOrder::Grevlex)
            .is_some_and(|(_, c)| c.is_one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_poly, Mono, VarSet};
    use proptest::prelude::*;

    fn vs(names: &[&str]) -> VarSet {
        VarSet::new(names.iter().copied()).unwrap()
    }

    #[test]
    fn basic_gcds() {
        let v = vs(&["x"]);
        let p = |s| parse_poly(s, &v).unwrap();
        assert_eq!(gcd_multivariate(&p("x^2-1"), &p("x-1")).unwrap(), p("x-1"));
        assert_eq!(gcd_multivariate(&p("x"), &p("1")).unwrap(), p("1"));
        assert!(gcd_multivariate(&p("0"), &p("0")).unwrap().is_zero());
        let entries = [p("x"), p("0"), p("0"), p("-x")];
        assert_eq!(gcd_many(&entries).unwrap(), p("x"));
    }

    #[test]
    fn multivariate() {
        let v = vs(&["x", "y", "z"]);
        let p = |s| parse_poly(s, &v).unwrap();
        let g = gcd_multivariate(&p("(x+y)*(x-z)^2*y"), &p("(x-z)*(x+y+z)*y^2")).unwrap();
        assert_eq!(g, p("x*y - y*z"));
        let g = gcd_multivariate(&p("2*x*y + 2*y^2"), &p("3*x^2 - 3*y^2")).unwrap();
        assert_eq!(g, p("x + y"));
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        let v = vs(&["x", "y", "z"]);
        prop::collection::vec(((-5i64..6), 0u32..3, 0u32..2, 0u32..2), 1..4).prop_map(move |ts| {
            Poly::from_terms(
                &v,
                ts.into_iter()
                    .map(|(n, a, b, c)| (Mono::from_exps(&[a, b, c]), crate::polyring::rat(n))),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn gcd_divides_and_cofactors_coprime(a in small_poly(), b in small_poly(), c in small_poly()) {
            let a = &a * &c;
            let b = &b * &c;
            let g = gcd_multivariate(&a, &b).unwrap();
            if a.is_zero() && b.is_zero() {
                prop_assert!(g.is_zero());
            } else {
                let qa = a.div_exact(&g).expect("divides a");
                let qb = b.div_exact(&g).expect("divides b");
                prop_assert!(gcd_multivariate(&qa, &qb).unwrap().is_unit());
                if !c.is_zero() {
                    prop_assert!(g.div_exact(&c).is_some());
                }
            }
        }
    }
}
