//! Text round-trip for polynomials over F_q.
//!
//! Two input shapes are accepted: a coefficient list `[c0,c1,...]` (low to
//! high, element codes) and a human expression over `t` built from integer
//! literals, `+`, `-`, `*`, `^` and parentheses, e.g. `t^2*(t+1)` or
//! `3*t^4 - t + 2`. Output always uses the expression form with descending
//! powers and explicit `*`, which parses back to the same polynomial.

use super::fq::FqConfig;
use super::poly::FqPoly;
use super::FfError;

/// Largest exponent the parser accepts; keeps pathological inputs cheap.
pub const MAX_PARSE_EXPONENT: u32 = 4096;

/// Parses either a coefficient list or an expression.
pub fn parse_poly(input: &str, cfg: &FqConfig) -> Result<FqPoly, FfError> {
    let trimmed = input.trim();
    if trimmed.starts_with('[') {
        parse_coeff_list(trimmed, cfg)
    } else {
        let mut p = Parser {
            bytes: trimmed.as_bytes(),
            pos: 0,
            cfg,
        };
        let poly = p.expr()?;
        p.skip_ws();
        if p.pos != p.bytes.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(poly)
    }
}

fn parse_coeff_list(s: &str, cfg: &FqConfig) -> Result<FqPoly, FfError> {
    let inner = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or(FfError::ParseError {
            position: s.len(),
            message: "coefficient list must be enclosed in [ ]".into(),
        })?;
    let inner = inner.trim();
    if inner.is_empty() {
        return Ok(FqPoly::zero());
    }
    let mut coeffs = Vec::new();
    for part in inner.split(',') {
        let v: u64 = part.trim().parse().map_err(|_| FfError::ParseError {
            position: 0,
            message: format!("bad coefficient {:?}", part.trim()),
        })?;
        coeffs.push(reduce_literal(v, cfg)?);
    }
    Ok(FqPoly::from_coeffs(coeffs))
}

/// Integer literals over prime fields reduce mod p; over extension fields
/// they are element codes and must already be in range.
fn reduce_literal(v: u64, cfg: &FqConfig) -> Result<u64, FfError> {
    if cfg.e() == 1 {
        return Ok(v % cfg.p());
    }
    if v >= cfg.q() {
        return Err(FfError::BadCode { code: v, q: cfg.q() });
    }
    Ok(v)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    cfg: &'a FqConfig,
}

impl<'a> Parser<'a> {
    fn error(&self, message: &str) -> FfError {
        FfError::ParseError {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<FqPoly, FfError> {
        let mut negate = false;
        if let Some(c) = self.peek() {
            if c == b'+' || c == b'-' {
                self.pos += 1;
                negate = c == b'-';
            }
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg(self.cfg);
        }
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&t, self.cfg);
                }
                b'-' => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(&t, self.cfg);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<FqPoly, FfError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = acc.mul(&f, self.cfg);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<FqPoly, FfError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let exp = self.uint()?;
            if exp > MAX_PARSE_EXPONENT as u64 {
                return Err(self.error("exponent too large"));
            }
            return Ok(base.pow(exp as u32, self.cfg));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<FqPoly, FfError> {
        match self.peek() {
            Some(b't') => {
                self.pos += 1;
                Ok(FqPoly::t())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.uint()?;
                Ok(FqPoly::constant(reduce_literal(v, self.cfg)?))
            }
            _ => Err(self.error("expected 't', '(', or a number")),
        }
    }

    fn uint(&mut self) -> Result<u64, FfError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.error("number out of range"))
    }
}

/// Renders in descending powers with explicit `*`, e.g. `2*t^3+t+1`.
pub fn format_poly(f: &FqPoly, cfg: &FqConfig) -> String {
    let _ = cfg;
    if f.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for i in (0..=f.degree().unwrap()).rev() {
        let c = f.coeff(i);
        if c == 0 {
            continue;
        }
        parts.push(match (i, c) {
            (0, c) => format!("{c}"),
            (1, 1) => "t".to_string(),
            (1, c) => format!("{c}*t"),
            (i, 1) => format!("t^{i}"),
            (i, c) => format!("{c}*t^{i}"),
        });
    }
    parts.join("+")
}

/// Renders as a coefficient list `[c0,c1,...]`.
pub fn format_poly_list(f: &FqPoly) -> String {
    let inner: Vec<String> = f.coeffs().iter().map(|c| c.to_string()).collect();
    format!("[{}]", inner.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::poly::polys_of_degree_at_most;

    fn f5() -> FqConfig {
        FqConfig::new(5, 1).unwrap()
    }

    fn pv(coeffs: &[u64]) -> FqPoly {
        FqPoly::from_coeffs(coeffs.to_vec())
    }

    #[test]
    fn parse_coeff_lists() {
        let cfg = f5();
        assert_eq!(parse_poly("[1,2,3]", &cfg).unwrap(), pv(&[1, 2, 3]));
        assert_eq!(parse_poly("[]", &cfg).unwrap(), FqPoly::zero());
        assert_eq!(parse_poly("[0, 0 ,0]", &cfg).unwrap(), FqPoly::zero());
        // mod-p reduction of large literals over a prime field
        assert_eq!(parse_poly("[7]", &cfg).unwrap(), pv(&[2]));
    }

    #[test]
    fn parse_expressions() {
        let cfg = f5();
        assert_eq!(parse_poly("t", &cfg).unwrap(), FqPoly::t());
        assert_eq!(parse_poly("t^2+t+1", &cfg).unwrap(), pv(&[1, 1, 1]));
        assert_eq!(parse_poly("t^2*(t+1)", &cfg).unwrap(), pv(&[0, 0, 1, 1]));
        assert_eq!(parse_poly(" 3*t^4 - t + 2 ", &cfg).unwrap(), pv(&[2, 4, 0, 0, 3]));
        assert_eq!(parse_poly("-t", &cfg).unwrap(), pv(&[0, 4]));
        assert_eq!(parse_poly("(t+1)^3", &cfg).unwrap(), pv(&[1, 3, 3, 1]));
        assert_eq!(parse_poly("2-2", &cfg).unwrap(), FqPoly::zero());
    }

    #[test]
    fn parse_rejects_garbage() {
        let cfg = f5();
        assert!(parse_poly("t^", &cfg).is_err());
        assert!(parse_poly("(t+1", &cfg).is_err());
        assert!(parse_poly("t t", &cfg).is_err());
        assert!(parse_poly("x+1", &cfg).is_err());
        assert!(parse_poly("t^99999", &cfg).is_err());
        assert!(parse_poly("", &cfg).is_err());
    }

    #[test]
    fn extension_field_codes_must_be_in_range() {
        let f4 = FqConfig::new(2, 2).unwrap();
        assert_eq!(parse_poly("[3,1]", &f4).unwrap(), pv(&[3, 1]));
        assert!(matches!(
            parse_poly("[4]", &f4),
            Err(FfError::BadCode { .. })
        ));
    }

    #[test]
    fn format_shapes() {
        let cfg = f5();
        assert_eq!(format_poly(&FqPoly::zero(), &cfg), "0");
        assert_eq!(format_poly(&FqPoly::one(), &cfg), "1");
        assert_eq!(format_poly(&FqPoly::t(), &cfg), "t");
        assert_eq!(format_poly(&pv(&[1, 1, 1]), &cfg), "t^2+t+1");
        assert_eq!(format_poly(&pv(&[2, 0, 0, 3]), &cfg), "3*t^3+2");
        assert_eq!(format_poly_list(&pv(&[1, 0, 2])), "[1,0,2]");
        assert_eq!(format_poly_list(&FqPoly::zero()), "[]");
    }

    #[test]
    fn round_trip_exhaustive_small() {
        for cfg in [FqConfig::new(2, 1).unwrap(), f5(), FqConfig::new(2, 2).unwrap()] {
            for f in polys_of_degree_at_most(&cfg, 3) {
                let text = format_poly(&f, &cfg);
                assert_eq!(parse_poly(&text, &cfg).unwrap(), f, "text = {text}");
                let list = format_poly_list(&f);
                assert_eq!(parse_poly(&list, &cfg).unwrap(), f, "list = {list}");
            }
        }
    }
}
