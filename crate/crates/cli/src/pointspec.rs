//! Exact point and expression parser.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! point := [int ':'] expr ',' expr
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '·' | '/') unary)*
//! unary := ('-' | '+') unary | atom
//! atom  := number | '(' expr ')' | ('cos' | 'sin') '(' angle ')'
//! angle := [int ['/' int]] 'pi' ['/' int]
//! ```
//!
//! Numbers are integers or finite decimals; `π` and `−` are accepted.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use ward_core::{FieldContext, FieldElement, Surface, SurfacePoint, Vec2};

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> CliResult<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < cs.len() && (cs[i].is_ascii_digit() || cs[i] == '.') {
                i += 1;
            }
            out.push(Tok::Num(parse_decimal(&cs[start..i].iter().collect::<String>())?));
        } else if c.is_alphabetic() && c != 'π' {
            let start = i;
            while i < cs.len() && cs[i].is_alphabetic() && cs[i] != 'π' {
                i += 1;
            }
            out.push(Tok::Ident(cs[start..i].iter().collect::<String>().to_lowercase()));
        } else {
            let op = match c {
                'π' => {
                    out.push(Tok::Ident("pi".into()));
                    i += 1;
                    continue;
                }
                '−' => '-',
                '·' | '×' => '*',
                '+' | '-' | '*' | '/' | '(' | ')' => c,
                _ => return Err(CliError::InvalidInput(format!("unexpected character `{c}`"))),
            };
            out.push(Tok::Op(op));
            i += 1;
        }
    }
    Ok(out)
}

fn parse_decimal(s: &str) -> CliResult<BigRational> {
    let bad = || CliError::InvalidInput(format!("bad number `{s}`"));
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if int.is_empty() && frac.is_empty() || frac.contains('.') {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let num: BigInt = digits.parse().map_err(|_| bad())?;
    Ok(BigRational::new(num, BigInt::from(10u32).pow(frac.len() as u32)))
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    ctx: &'a FieldContext,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, op: char) -> CliResult<()> {
        if self.eat(op) {
            Ok(())
        } else {
            Err(CliError::InvalidInput(format!("expected `{op}`")))
        }
    }

    fn expr(&mut self) -> CliResult<FieldElement> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> CliResult<FieldElement> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                acc = acc.checked_div(&d).map_err(|_| CliError::InvalidInput("division by zero".into()))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> CliResult<FieldElement> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.atom()
    }

    fn atom(&mut self) -> CliResult<FieldElement> {
        match self.next() {
            Some(Tok::Num(q)) => Ok(self.ctx.rational(q)),
            Some(Tok::Op('(')) => {
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Some(Tok::Ident(f)) if f == "cos" || f == "sin" => {
                self.expect('(')?;
                let (k, d) = self.angle()?;
                self.expect(')')?;
                let v = if f == "cos" { self.ctx.cos(k, d) } else { self.ctx.sin(k, d) };
                v.map_err(|e| CliError::InvalidInput(e.to_string()))
            }
            t => Err(CliError::InvalidInput(format!("unexpected token {t:?}"))),
        }
    }

    fn int(&mut self) -> CliResult<i64> {
        match self.next() {
            Some(Tok::Num(q)) if q.is_integer() => {
                i64::try_from(q.to_integer()).map_err(|_| CliError::InvalidInput("integer too large".into()))
            }
            t => Err(CliError::InvalidInput(format!("expected an integer, found {t:?}"))),
        }
    }

    /// `a/b pi /c` as `(a, b*c)`.
    fn angle(&mut self) -> CliResult<(i64, i64)> {
        let neg = self.eat('-');
        let (mut a, mut b) = (1, 1);
        if matches!(self.peek(), Some(Tok::Num(_))) {
            a = self.int()?;
            if self.eat('/') {
                b = self.int()?;
            }
            self.eat('*');
        }
        match self.next() {
            Some(Tok::Ident(p)) if p == "pi" => {}
            t => return Err(CliError::InvalidInput(format!("expected `pi`, found {t:?}"))),
        }
        if self.eat('/') {
            b *= self.int()?;
        }
        if b == 0 {
            return Err(CliError::InvalidInput("zero denominator in angle".into()));
        }
        Ok((if neg { -a } else { a }, b))
    }
}

/// Parses one exact expression.
pub fn parse_expr(ctx: &FieldContext, s: &str) -> CliResult<FieldElement> {
    let mut p = Parser { toks: tokenize(s)?, pos: 0, ctx };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(CliError::InvalidInput(format!("trailing input in `{s}`")));
    }
    Ok(v)
}

/// Parses `[polygon:] x, y` and canonicalizes it on the surface.
pub fn parse_point(s: &Surface, spec: &str) -> CliResult<SurfacePoint> {
    let (poly, rest) = match spec.split_once(':') {
        Some((p, r)) => {
            let id: usize = p.trim().parse().map_err(|_| CliError::InvalidInput(format!("bad polygon `{p}`")))?;
            if id >= s.polygons().len() {
                return Err(CliError::InvalidInput(format!("no polygon {id}")));
            }
            (id, r)
        }
        None => (0, spec),
    };
    let (x, y) = rest
        .split_once(',')
        .ok_or_else(|| CliError::InvalidInput("point needs two coordinates separated by `,`".into()))?;
    let ctx = s.context();
    let pos = Vec2::new(parse_expr(ctx, x)?, parse_expr(ctx, y)?);
    s.locate(poly, &pos).map_err(|e| CliError::InvalidInput(e.to_string()))
}

/// `num/den` for every coefficient.
pub fn coefficient_strings(x: &FieldElement) -> Vec<String> {
    x.coefficients().iter().map(|q| format!("{}/{}", q.numer(), q.denom())).collect()
}

pub fn parse_coefficients(ctx: &FieldContext, cs: &[String]) -> CliResult<FieldElement> {
    let qs = cs
        .iter()
        .map(|c| {
            let (n, d) = c.split_once('/').unwrap_or((c.as_str(), "1"));
            let bad = || CliError::InvalidInput(format!("bad coefficient `{c}`"));
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(ctx.from_coefficients(&qs)?)
}

/// Decimal with 10 significant digits and an explicit marker.
pub fn approx(x: f64) -> String {
    format!("{} (approx)", decimal10(x))
}

pub fn decimal10(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    let prec = (9 - mag).max(0) as usize;
    let s = format!("{x:.prec$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ward_core::build_ward;

    #[test]
    fn expressions() {
        let k = FieldContext::new(4).unwrap();
        let sqrt2 = &k.int(2) * &k.cos(1, 4).unwrap();
        assert_eq!(parse_expr(&k, "2*cos(1/4 pi)").unwrap(), sqrt2);
        assert_eq!(parse_expr(&k, "2 · cos(π/4)").unwrap(), sqrt2);
        assert_eq!(parse_expr(&k, "sin(1/2 pi) - 1/3").unwrap(), k.frac(2, 3));
        assert_eq!(parse_expr(&k, "-(1 + 0.5) / 3").unwrap(), k.frac(-1, 2));
        assert_eq!(parse_expr(&k, "1 − 2").unwrap(), k.int(-1));
        assert_eq!(parse_expr(&k, "cos(-1/4 pi)").unwrap(), k.cos(1, 4).unwrap());
        assert_eq!(parse_expr(&k, "1 / (2*cos(pi/4))").unwrap(), &sqrt2 * &k.frac(1, 2));
        for bad in ["", "1 +", "cos(1/4)", "(1", "1/0", "2 3", "x", "cos(1/7 pi)", "1.2.3"] {
            assert!(parse_expr(&k, bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn points() {
        let s = build_ward(4).unwrap();
        let p = parse_point(&s, "0: 0, 0").unwrap();
        assert_eq!(p, parse_point(&s, "0,0").unwrap());
        assert!(parse_point(&s, "7: 0, 0").is_err());
        assert!(parse_point(&s, "0: 100, 0").is_err());
        assert!(parse_point(&s, "0").is_err());
    }

    #[test]
    fn coefficient_round_trip() {
        let k = FieldContext::new(5).unwrap();
        let x = &k.frac(3, 7) + &k.cos(1, 5).unwrap();
        let cs = coefficient_strings(&x);
        assert_eq!(parse_coefficients(&k, &cs).unwrap(), x);
        assert!(parse_coefficients(&k, &["1/0".into()]).is_err());
    }

    #[test]
    fn ten_digits() {
        assert_eq!(decimal10(2.0 + 2f64.sqrt()), "3.414213562");
        assert_eq!(decimal10(0.5), "0.5");
        assert_eq!(decimal10(-1234.5678901234), "-1234.56789");
        assert_eq!(approx(1.0), "1 (approx)");
    }
}
