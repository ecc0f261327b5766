use crate::error::{Error, Result};
use crate::grobner::Ideal;
use crate::polyring::{MonomialOrder, Poly, PolyMatrix};

/// Canonical generators `f = p1·e1`, `g = p2·e1 + q·e2` of a submodule of
/// `R²`, `R` univariate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotPoint {
    pub p1: Poly,
    pub p2: Poly,
    pub q: Poly,
}

#[derive(Clone, Debug)]
pub struct QuotReport {
    pub point: QuotPoint,
    /// Stable under the Simpson field `φ(e1) = 0`, `φ(e2) = e1`.
    pub invariant: bool,
    pub colength: u64,
    /// `((p1), (q))`.
    pub phi_pair: (Ideal, Ideal),
}

fn deg(p: &Poly) -> Option<u32> {
    p.total_degree()
}

fn rem(a: &Poly, b: &Poly) -> Result<(Poly, Poly)> {
    Ok(a.div_rem(b, MonomialOrder::Lex)?)
}

/// Euclid on one coordinate of a list of column vectors: afterwards at most
/// one column has a nonzero entry there. Returns its index.
fn reduce_row(cols: &mut [[Poly; 2]], row: usize) -> Result<Option<usize>> {
    loop {
        let live: Vec<usize> = (0..cols.len()).filter(|&j| !cols[j][row].is_zero()).collect();
        let Some(&piv) = live.iter().min_by_key(|&&j| deg(&cols[j][row])) else {
            return Ok(None);
        };
        if live.len() == 1 {
            return Ok(Some(piv));
        }
        let p = cols[piv].clone();
        for &j in &live {
            if j == piv {
                continue;
            }
            let (t, _) = rem(&cols[j][row], &p[row])?;
            cols[j][0] = &cols[j][0] - &(&t * &p[0]);
            cols[j][1] = &cols[j][1] - &(&t * &p[1]);
        }
    }
}

/// Column Hermite form `(p1, p2; 0, q)` of the module spanned by `cols`
/// (each `[top, bottom]`), with `p1, q` monic and `deg p2 < deg p1`.
pub fn column_hermite(cols: &[[Poly; 2]]) -> Result<QuotPoint> {
    let Some(first) = cols.first() else {
        return Err(Error::SingularMatrix);
    };
    let vars = first[0].vars().clone();
    let mut cols = cols.to_vec();
    let g = reduce_row(&mut cols, 1)?;
    let (mut p2, q) = match g {
        Some(j) => {
            let c = cols.remove(j);
            let lc = c[1].leading(MonomialOrder::Lex).unwrap().1.clone();
            let inv = num_traits::Inv::inv(lc);
            (c[0].scale(&inv), c[1].scale(&inv))
        }
        None => (Poly::zero(&vars), Poly::zero(&vars)),
    };
    let p1 = match reduce_row(&mut cols, 0)? {
        Some(j) => cols[j][0].monic(),
        None => Poly::zero(&vars),
    };
    if !p1.is_zero() {
        p2 = rem(&p2, &p1)?.1;
    }
    Ok(QuotPoint { p1, p2, q })
}

fn columns(m: &PolyMatrix) -> Vec<[Poly; 2]> {
    (0..m.cols()).map(|j| [m.get(0, j).clone(), m.get(1, j).clone()]).collect()
}

fn check_shape(m: &PolyMatrix) -> Result<()> {
    if m.rows() != 2 || m.cols() != 2 {
        return Err(Error::InvalidField("expected a 2x2 matrix".into()));
    }
    if m.vars().len() != 1 {
        return Err(Error::InvalidField("expected a single base variable".into()));
    }
    if m.det()?.is_zero() {
        return Err(Error::SingularMatrix);
    }
    Ok(())
}

pub fn quot_canonicalize(m: &PolyMatrix) -> Result<QuotReport> {
    check_shape(m)?;
    let point = column_hermite(&columns(m))?;
    let invariant = rem(&point.q, &point.p1)?.1.is_zero();
    let colength = (deg(&point.p1).unwrap() + deg(&point.q).unwrap()) as u64;
    let vars = m.vars();
    let phi_pair = (
        Ideal::new(vars, vec![point.p1.clone()])?,
        Ideal::new(vars, vec![point.q.clone()])?,
    );
    Ok(QuotReport {
        point,
        invariant,
        colength,
        phi_pair,
    })
}

/// Whether `φ(K) ⊆ K` for `φ(a, b) = (b, 0)`, by comparing Hermite forms of
/// `K` and `K + φ(K)`.
pub fn quot_invariant_oracle(m: &PolyMatrix) -> Result<bool> {
    check_shape(m)?;
    let cols = columns(m);
    let zero = Poly::zero(m.vars());
    let mut more = cols.clone();
    more.extend(cols.iter().map(|c| [c[1].clone(), zero.clone()]));
    Ok(column_hermite(&more)? == column_hermite(&cols)?)
}
