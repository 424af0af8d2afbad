//! Hecke algebra expressions for `hecke mul`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? INT)?
//! atom   := INT | 'q' | 'v' | 'T' INT | 'theta' '(' INT (',' INT)* ')' | '(' expr ')'
//! ```
//!
//! `T i` is the generator of the simple reflection with 0-based index `i`.
//! Negative powers are only allowed for scalars.

use hecke_whittaker::{Coweight, HeckeElement, RootDatum, Scalar};

use crate::CliError;

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(i64),
    Ident(String),
    Sym(char),
}

fn tokenize(src: &str) -> Result<Vec<Token>, CliError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let text: String = chars[start..k].iter().collect();
            let n = text
                .parse()
                .map_err(|_| CliError::Usage(format!("integer {text} out of range")))?;
            out.push(Token::Int(n));
        } else if c.is_ascii_alphabetic() || c == 'θ' {
            let start = k;
            while k < chars.len() && (chars[k].is_ascii_alphabetic() || chars[k] == 'θ' || chars[k] == '_') {
                k += 1;
            }
            out.push(Token::Ident(chars[start..k].iter().collect()));
        } else if "+-*^(),".contains(c) {
            out.push(Token::Sym(c));
            k += 1;
        } else {
            return Err(CliError::Usage(format!("unexpected character {c:?} in expression")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    datum: &'a RootDatum,
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Token::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), CliError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected {c:?}")))
        }
    }

    fn error(&self, what: &str) -> CliError {
        match self.peek() {
            Some(t) => CliError::Usage(format!("{what}, found {t:?}")),
            None => CliError::Usage(format!("{what}, found end of expression")),
        }
    }

    fn int(&mut self) -> Result<i64, CliError> {
        let neg = self.eat('-');
        match self.peek() {
            Some(Token::Int(n)) => {
                let n = *n;
                self.pos += 1;
                Ok(if neg { -n } else { n })
            }
            _ => Err(self.error("expected an integer")),
        }
    }

    fn scalar(&self, c: Scalar) -> HeckeElement {
        HeckeElement::identity(self.datum.rank()).scale(&c)
    }

    fn expr(&mut self) -> Result<HeckeElement, CliError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<HeckeElement, CliError> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            acc = acc.mul(self.datum, &self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<HeckeElement, CliError> {
        if self.eat('-') {
            return Ok(self.unary()?.scale(&Scalar::from_int(-1)));
        }
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let k = self.int()?;
        if k >= 0 {
            return Ok((0..k).fold(self.scalar(Scalar::one()), |acc, _| acc.mul(self.datum, &base)));
        }
        let c = as_scalar(self.datum, &base).ok_or_else(|| CliError::Usage("negative powers need a scalar base".into()))?;
        let inv = c.inv().map_err(CliError::Domain)?;
        Ok(self.scalar(pow(&inv, k.unsigned_abs())))
    }

    fn atom(&mut self) -> Result<HeckeElement, CliError> {
        match self.peek().cloned() {
            Some(Token::Int(n)) => {
                self.pos += 1;
                Ok(self.scalar(Scalar::from_int(n)))
            }
            Some(Token::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                match name.as_str() {
                    "q" => Ok(self.scalar(Scalar::q())),
                    "v" => Ok(self.scalar(Scalar::v())),
                    "T" | "t" => {
                        let i = self.int()?;
                        let i = usize::try_from(i).map_err(|_| CliError::Usage(format!("negative generator index {i}")))?;
                        HeckeElement::t_simple(self.datum, i).map_err(CliError::from_core)
                    }
                    "theta" | "θ" => {
                        self.expect('(')?;
                        let mut coords = vec![self.int()?];
                        while self.eat(',') {
                            coords.push(self.int()?);
                        }
                        self.expect(')')?;
                        let mu = coords
                            .into_iter()
                            .map(|c| i32::try_from(c).map_err(|_| CliError::Usage(format!("coordinate {c} out of range"))))
                            .collect::<Result<Vec<_>, _>>()?;
                        let mu = Coweight::new(mu);
                        self.datum.check_rank(&mu).map_err(CliError::from_core)?;
                        Ok(HeckeElement::theta(mu))
                    }
                    other => Err(CliError::Usage(format!("unknown symbol {other:?}"))),
                }
            }
            _ => Err(self.error("expected a generator, scalar or '('")),
        }
    }
}

fn as_scalar(datum: &RootDatum, x: &HeckeElement) -> Option<Scalar> {
    if x.is_zero() {
        return Some(Scalar::zero());
    }
    let zero = datum.zero();
    let mut terms = x.terms();
    match (terms.next(), terms.next()) {
        (Some((0, mu, c)), None) if *mu == zero => Some(c.clone()),
        _ => None,
    }
}

fn pow(c: &Scalar, k: u64) -> Scalar {
    (0..k).fold(Scalar::one(), |acc, _| &acc * c)
}

pub fn parse(datum: &RootDatum, src: &str) -> Result<HeckeElement, CliError> {
    let mut parser = Parser { datum, tokens: tokenize(src)?, pos: 0 };
    let value = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.error("trailing input"));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1() -> RootDatum {
        RootDatum::new("A1".parse().unwrap())
    }

    #[test]
    fn quadratic_relation_parses() {
        let d = a1();
        let lhs = parse(&d, "T0*T0").unwrap();
        let rhs = parse(&d, "(q - 1)*T0 + q").unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(parse(&d, "t0^2").unwrap(), lhs);
    }

    #[test]
    fn bernstein_example() {
        let d = a1();
        let lhs = parse(&d, "T0*theta(1)").unwrap();
        let rhs = parse(&d, "theta(-1)*T0 + (q - 1)*theta(1)").unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn scalars_and_errors() {
        let d = a1();
        assert_eq!(parse(&d, "v^-2 * q").unwrap(), HeckeElement::identity(1));
        assert_eq!(parse(&d, "-3 + 3").unwrap(), HeckeElement::zero());
        assert!(parse(&d, "T1").is_err());
        assert!(parse(&d, "theta(1,2)").is_err());
        assert!(parse(&d, "T0^-1").is_err());
        assert!(parse(&d, "T0 T0").is_err());
        assert!(parse(&d, "x").is_err());
        assert!(parse(&d, "0^-1").is_err());
    }
}
