//! Recursive-descent parser for the polynomial grammar.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' exponent)?
//! atom   := number | ident | '(' expr ')'
//! number := digits ('/' digits)?
//! ```

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{Poly, PolyError, Rat, VarSet};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rat),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, PolyError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((Tok::Plus, start)),
            b'-' => out.push((Tok::Minus, start)),
            b'*' => out.push((Tok::Star, start)),
            b'^' => out.push((Tok::Caret, start)),
            b'(' => out.push((Tok::LParen, start)),
            b')' => out.push((Tok::RParen, start)),
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let num: BigInt = text[start..i].parse().unwrap();
                // a/b is only a literal when both sides are integers
                if i + 1 < bytes.len() && bytes[i] == b'/' && bytes[i + 1].is_ascii_digit() {
                    let ds = i + 1;
                    i = ds;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let den: BigInt = text[ds..i].parse().unwrap();
                    if den.is_zero() {
                        return Err(PolyError::Syntax {
                            pos: ds,
                            msg: "zero denominator".into(),
                        });
                    }
                    out.push((Tok::Num(Rat::new(num, den)), start));
                } else {
                    out.push((Tok::Num(Rat::from_integer(num)), start));
                }
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap();
                return Err(PolyError::Syntax {
                    pos: start,
                    msg: format!("unexpected character '{ch}'"),
                });
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    vars: &'a VarSet,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.1)
    }

    fn expr(&mut self) -> Result<Poly, PolyError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, PolyError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly, PolyError> {
        if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly, PolyError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let at = self.here();
            let e = match self.peek().cloned() {
                Some(Tok::Num(q)) => {
                    self.pos += 1;
                    if !q.is_integer() {
                        return Err(PolyError::BadExponent {
                            pos: at,
                            msg: format!("non-integer exponent {}", super::format_rat(&q)),
                        });
                    }
                    q.to_integer()
                }
                Some(Tok::Minus) => {
                    return Err(PolyError::BadExponent {
                        pos: at,
                        msg: "negative exponent".into(),
                    })
                }
                Some(Tok::LParen) | Some(Tok::Ident(_)) => {
                    return Err(PolyError::BadExponent {
                        pos: at,
                        msg: "exponent must be a nonnegative integer literal".into(),
                    })
                }
                _ => {
                    return Err(PolyError::Syntax {
                        pos: at,
                        msg: "expected exponent".into(),
                    })
                }
            };
            if e.is_negative() {
                return Err(PolyError::BadExponent {
                    pos: at,
                    msg: "negative exponent".into(),
                });
            }
            let e: u32 = e.try_into().map_err(|_| PolyError::BadExponent {
                pos: at,
                msg: "exponent too large".into(),
            })?;
            if let Some(Tok::Caret) = self.peek() {
                return Err(PolyError::Syntax {
                    pos: self.here(),
                    msg: "chained exponent; use parentheses".into(),
                });
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly, PolyError> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Num(q)) => {
                self.pos += 1;
                Ok(Poly::constant(self.vars, q))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match self.vars.index_of(&name) {
                    Some(i) => Ok(Poly::var_at(self.vars, i)),
                    None => Err(PolyError::UnknownVariable { name, pos: at }),
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(PolyError::Syntax {
                        pos: self.here(),
                        msg: "expected ')'".into(),
                    }),
                }
            }
            Some(t) => Err(PolyError::Syntax {
                pos: at,
                msg: format!("unexpected token {t:?}"),
            }),
            None => Err(PolyError::Syntax {
                pos: at,
                msg: "unexpected end of input".into(),
            }),
        }
    }
}

/// Parses `text` as a polynomial over `vars`.
pub fn parse_poly(text: &str, vars: &VarSet) -> Result<Poly, PolyError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        vars,
    };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(PolyError::Syntax {
            pos: p.here(),
            msg: "trailing input".into(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{rat, Mono};
    use proptest::prelude::*;

    fn vs(names: &[&str]) -> VarSet {
        VarSet::new(names.iter().copied()).unwrap()
    }

    #[test]
    fn binomial() {
        let v = vs(&["z1", "z2", "z3"]);
        let p = parse_poly("z1*z3 - z2^2", &v).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coeff(&Mono::from_exps(&[1, 0, 1])), rat(1));
        assert_eq!(p.coeff(&Mono::from_exps(&[0, 2, 0])), rat(-1));
    }

    #[test]
    fn zero_forms() {
        let v = vs(&["x"]);
        assert!(parse_poly("0", &v).unwrap().is_zero());
        assert!(parse_poly("(x+1)^2 - x^2 - 2*x - 1", &v).unwrap().is_zero());
        assert!(parse_poly("0", &VarSet::empty()).unwrap().is_zero());
    }

    #[test]
    fn rationals_and_precedence() {
        let v = vs(&["x"]);
        let p = parse_poly("-3/4*x^2 + 2", &v).unwrap();
        assert_eq!(p.to_string(), "-3/4*x^2 + 2");
        assert_eq!(parse_poly("--x", &v).unwrap(), parse_poly("x", &v).unwrap());
        assert_eq!(parse_poly("-x^2", &v).unwrap().to_string(), "-x^2");
        assert_eq!(parse_poly("2*(x+1)*3", &v).unwrap().to_string(), "6*x + 6");
    }

    #[test]
    fn errors_carry_positions() {
        let v = vs(&["x", "y"]);
        assert_eq!(
            parse_poly("x + w", &v),
            Err(PolyError::UnknownVariable { name: "w".into(), pos: 4 })
        );
        assert!(matches!(parse_poly("x^-1", &v), Err(PolyError::BadExponent { pos: 2, .. })));
        assert!(matches!(parse_poly("x^1/2", &v), Err(PolyError::BadExponent { .. })));
        assert!(matches!(parse_poly("x^y", &v), Err(PolyError::BadExponent { .. })));
        assert!(matches!(parse_poly("x +", &v), Err(PolyError::Syntax { pos: 3, .. })));
        assert!(matches!(parse_poly("(x", &v), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse_poly("x y", &v), Err(PolyError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_poly("x/2", &v), Err(PolyError::Syntax { pos: 1, .. })));
        assert!(matches!(parse_poly("1/0", &v), Err(PolyError::Syntax { .. })));
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        let v = vs(&["x", "y", "z"]);
        prop::collection::vec(((-9i64..10), (1i64..4), 0u32..3, 0u32..3, 0u32..3), 0..5).prop_map(move |ts| {
            Poly::from_terms(
                &v,
                ts.into_iter()
                    .map(|(n, d, a, b, c)| (Mono::from_exps(&[a, b, c]), crate::polyring::rat_frac(n, d))),
            )
        })
    }

    proptest! {
        #[test]
        fn print_parse_fixed_point(p in small_poly()) {
            let s = p.to_string();
            let q = parse_poly(&s, p.vars()).unwrap();
            prop_assert_eq!(&q, &p);
            prop_assert_eq!(q.to_string(), s);
        }

        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn leibniz(a in small_poly(), b in small_poly()) {
            let lhs = (&a * &b).differentiate("x").unwrap();
            let rhs = &(&a.differentiate("x").unwrap() * &b) + &(&a * &b.differentiate("x").unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn square_root_of_squares(a in small_poly()) {
            let sq = &a * &a;
            let s = crate::polyring::poly_square_root(&sq).expect("square");
            prop_assert_eq!(&s * &s, sq);
        }

        #[test]
        fn square_root_certificate(a in small_poly()) {
            // whatever comes back must square exactly
            if let Some(s) = crate::polyring::poly_square_root(&a) {
                prop_assert_eq!(&s * &s, a);
            }
        }
    }
}
