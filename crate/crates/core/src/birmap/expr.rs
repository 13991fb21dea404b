//! Parser for map expressions.
//!
//! Affine form `(e1, e2)` in `x`, `y`; homogeneous plane form `(e1 : e2 : e3)`
//! in `x`, `y`, `z`. Expressions use `+ - * / ^`, parentheses, rational
//! literals, the imaginary unit `i`, and juxtaposition as multiplication.

use crate::algebra::{MultiPoly, Scalar};
use crate::error::{AlgebraError, MapError};

/// Quotient of two polynomials, not necessarily reduced.
#[derive(Clone, Debug)]
pub struct Frac {
    pub num: MultiPoly,
    pub den: MultiPoly,
}

impl Frac {
    pub fn poly(p: MultiPoly) -> Self {
        let nv = p.nvars();
        Frac {
            num: p,
            den: MultiPoly::one(nv),
        }
    }

    pub fn add(&self, o: &Frac) -> Frac {
        if self.den == o.den {
            return Frac {
                num: &self.num + &o.num,
                den: self.den.clone(),
            };
        }
        Frac {
            num: &(&self.num * &o.den) + &(&o.num * &self.den),
            den: &self.den * &o.den,
        }
    }

    pub fn neg(&self) -> Frac {
        Frac {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, o: &Frac) -> Frac {
        Frac {
            num: &self.num * &o.num,
            den: &self.den * &o.den,
        }
    }

    pub fn inv(&self) -> Result<Frac, AlgebraError> {
        if self.num.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Frac {
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }

    pub fn pow(&self, e: i64) -> Result<Frac, AlgebraError> {
        let b = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(Frac {
            num: b.num.pow(k),
            den: b.den.pow(k),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(u64),
    Ident(char),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, MapError> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let s = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let n = src[s..i]
                .parse()
                .map_err(|_| MapError::Usage(format!("number too large at {s}")))?;
            out.push((s, Tok::Num(n)));
        } else if "xyzi".contains(c) {
            out.push((i, Tok::Ident(c)));
            i += 1;
        } else if "+-*/^(),:".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(MapError::Usage(format!("unexpected character `{c}` at {i}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    nvars: usize,
    vars: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn at(&self) -> usize {
        self.toks.get(self.pos).map_or(usize::MAX, |(p, _)| *p)
    }

    fn fail<T>(&self, msg: &str) -> Result<T, MapError> {
        let at = self.at();
        if at == usize::MAX {
            Err(MapError::Usage(format!("{msg} at end of input")))
        } else {
            Err(MapError::Usage(format!("{msg} at {at}")))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Frac, MapError> {
        let mut acc = if self.eat('-') {
            self.term()?.neg()
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.add(&self.term()?.neg());
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Frac, MapError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.factor()?);
            } else if self.eat('/') {
                acc = acc.mul(&self.factor()?.inv()?);
            } else if matches!(self.peek(), Some(Tok::Num(_) | Tok::Ident(_) | Tok::Op('('))) {
                acc = acc.mul(&self.factor()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Frac, MapError> {
        if self.eat('-') {
            return Ok(self.factor()?.neg());
        }
        let base = self.primary()?;
        if self.eat('^') {
            let neg = self.eat('-');
            let Some(Tok::Num(n)) = self.peek().cloned() else {
                return self.fail("expected exponent");
            };
            self.pos += 1;
            let e = i64::try_from(n).map_err(|_| MapError::Usage("exponent too large".into()))?;
            return Ok(base.pow(if neg { -e } else { e })?);
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Frac, MapError> {
        let nv = self.nvars;
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Frac::poly(MultiPoly::constant(nv, Scalar::from_bigint(n.into()))))
            }
            Some(Tok::Ident('i')) => {
                self.pos += 1;
                Ok(Frac::poly(MultiPoly::constant(nv, Scalar::i())))
            }
            Some(Tok::Ident(c)) => {
                let Some(v) = self.vars.find(c) else {
                    return self.fail(&format!("variable `{c}` not allowed here"));
                };
                self.pos += 1;
                Ok(Frac::poly(MultiPoly::var(nv, v)))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.fail("expected `)`");
                }
                Ok(e)
            }
            _ => self.fail("expected a number, variable or `(`"),
        }
    }
}

/// Parsed map expression.
#[derive(Clone, Debug)]
pub enum MapExpr {
    /// `(x, y) ↦ (f, g)` with `f`, `g` in two variables.
    Affine([Frac; 2]),
    /// `(X : Y : Z)` with homogeneous polynomials in three variables.
    Plane([MultiPoly; 3]),
}

/// Parses one scalar-coefficient rational expression in `x`, `y`.
pub fn parse_affine_expr(src: &str) -> Result<Frac, MapError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        nvars: 2,
        vars: "xy",
    };
    let e = p.expr()?;
    if p.pos != toks.len() {
        return p.fail("trailing input");
    }
    Ok(e)
}

pub fn parse_map(src: &str) -> Result<MapExpr, MapError> {
    let toks = lex(src)?;
    let plane = toks.iter().any(|(_, t)| *t == Tok::Op(':'));
    let (nvars, vars) = if plane { (3, "xyz") } else { (2, "xy") };
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        nvars,
        vars,
    };
    if !p.eat('(') {
        return p.fail("expected `(`");
    }
    let sep = if plane { ':' } else { ',' };
    let mut parts = vec![p.expr()?];
    while p.eat(sep) {
        parts.push(p.expr()?);
    }
    if !p.eat(')') {
        return p.fail("expected `)`");
    }
    if p.pos != toks.len() {
        return p.fail("trailing input");
    }
    if plane {
        if parts.len() != 3 {
            return Err(MapError::Usage("plane maps need three components".into()));
        }
        let mut comps = Vec::new();
        for f in parts {
            if !f.den.is_constant() {
                return Err(MapError::Usage("homogeneous components must be polynomials".into()));
            }
            let c = f.den.coeff(&crate::algebra::Mono::one());
            comps.push(f.num.scale(&c.inv()?));
        }
        let [a, b, c]: [MultiPoly; 3] = comps.try_into().expect("three parts");
        Ok(MapExpr::Plane([a, b, c]))
    } else {
        if parts.len() != 2 {
            return Err(MapError::Usage("affine maps need two components".into()));
        }
        let [a, b]: [Frac; 2] = parts.try_into().expect("two parts");
        Ok(MapExpr::Affine([a, b]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    #[test]
    fn parses_rational_components() {
        let MapExpr::Affine([f, g]) = parse_map("((x+2y)/(2+x*y), 2*y)").unwrap() else {
            panic!("affine expected");
        };
        let pt = [Scalar::from_int(1), Scalar::from_int(1)];
        assert_eq!(&f.num.eval(&pt) / &f.den.eval(&pt), Scalar::one());
        assert_eq!(&g.num.eval(&pt) / &g.den.eval(&pt), Scalar::from_int(2));
    }

    #[test]
    fn parses_plane_form_and_powers() {
        let MapExpr::Plane(c) = parse_map("(x^2 : x y : -i z^2)").unwrap() else {
            panic!("plane expected");
        };
        assert_eq!(c[1].len(), 1);
        assert_eq!(c[2].eval(&[Scalar::zero(), Scalar::zero(), Scalar::one()]), -Scalar::i());
        let f = parse_affine_expr("x^-2").unwrap();
        assert!(f.num.is_constant() && f.den.total_degree() == Some(2));
        assert!(Scalar::one().is_one());
    }

    #[test]
    fn reports_positions() {
        let e = parse_map("(x + , y)").unwrap_err();
        assert!(e.to_string().contains("at 5"), "{e}");
        assert!(parse_map("(x, w)").is_err());
        assert!(parse_map("(x, 1/0)").is_err());
    }
}
