//! The experiment description languages.
//!
//! Families: `kind(key=value,…)@[lo:hi:step]`, e.g. `linear(a=1)@[0.5:1.5:0.1]`.
//! Kinds are `example24`, `linear` (`a`), `mobius` (`r`, `alpha`,
//! `reversed`), `h1`, `outer_ramp` (`alpha`, `base`, `slope`); the parameter
//! list may be omitted.
//!
//! Functions: factors joined by `*`, each one of `blaschke:α,…`,
//! `outer:<poly>`, `poly:<poly>` or `coeffs:c₀,c₁,…`. Complex numbers are
//! written `0.5`, `0.3i` or `0.2-0.1i`; polynomials as `2+z`, `1-0.5z^2`,
//! `(1+2i)z^3`.

use crate::boundary::TaylorPoly;
use crate::paths::{PathFamily, Symbol};
use crate::{Complex64, Error, Result};

/// Grid values are rounded to this many decimals so that `0.1·k` style grids
/// hit the intended points.
const SNAP: f64 = 1e12;

#[derive(Debug, Clone, PartialEq)]
pub struct FamilySpec {
    pub family: PathFamily,
    pub t_grid: Vec<f64>,
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Self { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn error(&self, expected: &str) -> Error {
        Error::parse(self.src, self.pos, expected)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("'{c}'")))
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(self.rest().len());
        if len == 0 || !self.rest().starts_with(|c: char| c.is_ascii_alphabetic()) {
            return Err(self.error("identifier"));
        }
        self.pos += len;
        Ok(&self.src[start..self.pos])
    }

    fn sign(&mut self) -> f64 {
        match self.peek() {
            Some('-') | Some('\u{2212}') => {
                self.pos += self.rest().chars().next().map_or(1, char::len_utf8);
                -1.0
            }
            Some('+') => {
                self.pos += 1;
                1.0
            }
            _ => 1.0,
        }
    }

    fn unsigned(&mut self) -> Result<f64> {
        self.skip_ws();
        let bytes = self.rest().as_bytes();
        let mut i = 0;
        let digits = |i: &mut usize| {
            let s = *i;
            while *i < bytes.len() && bytes[*i].is_ascii_digit() {
                *i += 1;
            }
            *i - s
        };
        let mut n = digits(&mut i);
        if i < bytes.len() && bytes[i] == b'.' {
            i += 1;
            n += digits(&mut i);
        }
        if n == 0 {
            return Err(self.error("number"));
        }
        if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
            let mut j = i + 1;
            if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                j += 1;
            }
            if digits(&mut j) > 0 {
                i = j;
            }
        }
        let text = &self.rest()[..i];
        let v: f64 = text.parse().map_err(|_| self.error("number"))?;
        self.pos += i;
        Ok(v)
    }

    fn number(&mut self) -> Result<f64> {
        let s = self.sign();
        Ok(s * self.unsigned()?)
    }

    fn uint(&mut self) -> Result<usize> {
        self.skip_ws();
        let len = self.rest().find(|c: char| !c.is_ascii_digit()).unwrap_or(self.rest().len());
        if len == 0 {
            return Err(self.error("integer"));
        }
        let v = self.rest()[..len].parse().map_err(|_| self.error("integer"))?;
        self.pos += len;
        Ok(v)
    }

    /// `a`, `bi`, or `a±bi`.
    fn complex(&mut self) -> Result<Complex64> {
        let a = self.number()?;
        if self.eat('i') {
            return Ok(Complex64::new(0.0, a));
        }
        let save = self.pos;
        if matches!(self.peek(), Some('+' | '-' | '\u{2212}')) {
            let b = self.number()?;
            if self.eat('i') {
                return Ok(Complex64::new(a, b));
            }
            self.pos = save;
        }
        Ok(Complex64::new(a, 0.0))
    }

    fn end(&mut self) -> Result<()> {
        if self.peek().is_some() {
            Err(self.error("end of input"))
        } else {
            Ok(())
        }
    }
}

/// `lo, lo+step, …` up to `hi`, snapped to 12 decimals.
pub fn t_grid(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !(hi >= lo) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Config(format!("bad range [{lo}:{hi}:{step}]")));
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize;
    if count > 1_000_000 {
        return Err(Error::Config(format!("range [{lo}:{hi}:{step}] has too many points")));
    }
    Ok((0..=count).map(|i| ((lo + i as f64 * step) * SNAP).round() / SNAP).collect())
}

pub fn parse_family(src: &str) -> Result<FamilySpec> {
    let mut cur = Cursor::new(src);
    let kind_pos = {
        cur.skip_ws();
        cur.pos
    };
    let kind = cur.ident()?;
    let mut params: Vec<(&str, f64, usize)> = Vec::new();
    if cur.eat('(') {
        if !cur.eat(')') {
            loop {
                cur.skip_ws();
                let at = cur.pos;
                let key = cur.ident()?;
                cur.expect('=')?;
                let v = cur.number()?;
                params.push((key, v, at));
                if cur.eat(')') {
                    break;
                }
                cur.expect(',').map_err(|_| cur.error("',' or ')'"))?;
            }
        }
    }
    if !cur.eat('@') {
        return Err(cur.error(if params.is_empty() { "'(' or '@'" } else { "'@'" }));
    }
    cur.expect('[')?;
    let lo = cur.number()?;
    cur.expect(':')?;
    let hi = cur.number()?;
    cur.expect(':')?;
    let step = cur.number()?;
    cur.expect(']')?;
    cur.end()?;

    let allowed: &[&str] = match kind {
        "example24" | "h1" | "h1_witness" => &[],
        "linear" | "linear_sec4" => &["a"],
        "mobius" | "mobius_homotopy" => &["r", "alpha", "reversed"],
        "outer_ramp" => &["alpha", "base", "slope"],
        _ => {
            return Err(Error::parse(
                src,
                kind_pos,
                "one of example24, linear, mobius, h1, outer_ramp",
            ))
        }
    };
    for &(key, _, at) in &params {
        if !allowed.contains(&key) {
            let expected = if allowed.is_empty() {
                format!("no parameters for {kind}")
            } else {
                format!("one of {}", allowed.join(", "))
            };
            return Err(Error::parse(src, at, expected));
        }
    }
    let get = |key: &str, default: f64| params.iter().rev().find(|p| p.0 == key).map_or(default, |p| p.1);
    let family = match kind {
        "example24" => PathFamily::Example24,
        "h1" | "h1_witness" => PathFamily::H1Witness,
        "linear" | "linear_sec4" => PathFamily::Linear { a: get("a", 1.0) },
        "mobius" | "mobius_homotopy" => {
            let alpha = get("alpha", 0.0);
            let inner = if alpha == 0.0 {
                Symbol::poly(TaylorPoly::z())
            } else {
                Symbol::blaschke(vec![Complex64::new(alpha, 0.0)], 0)
            };
            PathFamily::MobiusHomotopy { inner, r: get("r", 0.5), reversed: get("reversed", 0.0) != 0.0 }
        }
        _ => PathFamily::OuterRamp {
            alpha: get("alpha", 0.5),
            base: get("base", 2.0),
            slope: get("slope", 0.5),
        },
    };
    let t_grid = t_grid(lo, hi, step)?;
    for &t in &t_grid {
        family.symbol_at(t)?;
    }
    Ok(FamilySpec { family, t_grid })
}

fn coef(cur: &mut Cursor) -> Result<Option<Complex64>> {
    if cur.eat('(') {
        let c = cur.complex()?;
        cur.expect(')')?;
        return Ok(Some(c));
    }
    match cur.peek() {
        Some(c) if c.is_ascii_digit() || c == '.' => {
            let v = cur.unsigned()?;
            Ok(Some(if cur.eat('i') { Complex64::new(0.0, v) } else { Complex64::new(v, 0.0) }))
        }
        _ => Ok(None),
    }
}

fn poly(cur: &mut Cursor) -> Result<TaylorPoly> {
    let mut coeffs: Vec<Complex64> = Vec::new();
    let mut first = true;
    loop {
        let sign = match cur.peek() {
            Some('+') | Some('-') | Some('\u{2212}') => cur.sign(),
            _ if first => 1.0,
            _ => break,
        };
        first = false;
        let c = coef(cur)?;
        let power = if cur.eat('z') {
            if cur.eat('^') {
                cur.uint()?
            } else {
                1
            }
        } else if c.is_some() {
            0
        } else {
            return Err(cur.error("number, '(' or 'z'"));
        };
        if power > 1 << 20 {
            return Err(cur.error("smaller exponent"));
        }
        if coeffs.len() <= power {
            coeffs.resize(power + 1, Complex64::new(0.0, 0.0));
        }
        coeffs[power] += c.unwrap_or(Complex64::new(1.0, 0.0)) * sign;
    }
    Ok(TaylorPoly::new(coeffs))
}

fn complex_list(cur: &mut Cursor) -> Result<Vec<Complex64>> {
    let mut v = vec![cur.complex()?];
    while cur.eat(',') {
        v.push(cur.complex()?);
    }
    Ok(v)
}

/// Parses a function spec into a closed-form symbol.
pub fn parse_function(src: &str) -> Result<Symbol> {
    let mut cur = Cursor::new(src);
    let mut factors = Vec::new();
    loop {
        let f = if cur.eat_str("blaschke:") {
            let zeros = complex_list(&mut cur)?;
            let origin = zeros.iter().filter(|a| a.norm() == 0.0).count();
            let interior: Vec<_> = zeros.into_iter().filter(|a| a.norm() != 0.0).collect();
            if let Some(a) = interior.iter().find(|a| a.norm() >= 1.0) {
                return Err(Error::Domain(format!("Blaschke zero {a} is not inside the disk")));
            }
            Symbol::blaschke(interior, origin)
        } else if cur.eat_str("outer:") || cur.eat_str("poly:") {
            Symbol::poly(poly(&mut cur)?)
        } else if cur.eat_str("coeffs:") {
            Symbol::poly(TaylorPoly::new(complex_list(&mut cur)?))
        } else {
            return Err(cur.error("one of blaschke:, outer:, poly:, coeffs:"));
        };
        factors.push(f);
        if !cur.eat('*') {
            break;
        }
    }
    cur.end().map_err(|_| cur.error("'*' or end of input"))?;
    Ok(if factors.len() == 1 { factors.pop().expect("one factor") } else { Symbol::Product { factors } })
}

/// Coefficient file: one coefficient per line as `re` or `re im` (whitespace
/// or comma separated); `#` starts a comment.
pub fn parse_coefficients(text: &str) -> Result<TaylorPoly> {
    let mut coeffs = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).collect();
        let num = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| Error::parse(line, line.find(s).unwrap_or(0), format!("number on line {}", lineno + 1)))
        };
        let c = match parts.as_slice() {
            [re] => Complex64::new(num(re)?, 0.0),
            [re, im] => Complex64::new(num(re)?, num(im)?),
            _ => return Err(Error::parse(line, 0, format!("one or two numbers on line {}", lineno + 1))),
        };
        coeffs.push(c);
    }
    if coeffs.is_empty() {
        return Err(Error::Config("coefficient file is empty".into()));
    }
    Ok(TaylorPoly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::Analytic;

    #[test]
    fn family_specs() {
        let s = parse_family("example24@[-0.1:0.1:0.05]").unwrap();
        assert_eq!(s.family, PathFamily::Example24);
        assert_eq!(s.t_grid, vec![-0.1, -0.05, 0.0, 0.05, 0.1]);
        let s = parse_family("linear(a=1)@[0.5:1.5:0.1]").unwrap();
        assert_eq!(s.family, PathFamily::Linear { a: 1.0 });
        assert_eq!(s.t_grid.len(), 11);
        assert_eq!(s.t_grid[5], 1.0);
        let s = parse_family(" mobius( r = 0.5 , reversed=1 ) @ [0:1:0.25]").unwrap();
        assert!(matches!(s.family, PathFamily::MobiusHomotopy { reversed: true, .. }));
        // typographic minus
        let s = parse_family("example24@[\u{2212}0.1:0.1:0.05]").unwrap();
        assert_eq!(s.t_grid[0], -0.1);
    }

    #[test]
    fn family_errors_have_positions() {
        match parse_family("example24@[").unwrap_err() {
            Error::Parse { position, expected, .. } => {
                assert_eq!(position, 11);
                assert_eq!(expected, "number");
            }
            e => panic!("{e}"),
        }
        match parse_family("linear(b=1)@[0.5:1:0.1]").unwrap_err() {
            Error::Parse { position, .. } => assert_eq!(position, 7),
            e => panic!("{e}"),
        }
        assert!(matches!(parse_family("bogus@[0:1:0.1]"), Err(Error::Parse { position: 0, .. })));
        assert!(matches!(parse_family("example24@[0:2:0.5]"), Err(Error::Precondition(_))));
        assert!(matches!(parse_family("example24@[0:1:0.5] x"), Err(Error::Parse { .. })));
    }

    #[test]
    fn function_specs() {
        let z = Complex64::new(0.3, 0.4);
        let f = parse_function("outer:2+z").unwrap();
        assert_eq!(f.eval(z), 2.0 + z);
        let f = parse_function("poly:1-0.5z^2+(1+2i)z^3").unwrap();
        let want = 1.0 - 0.5 * z * z + Complex64::new(1.0, 2.0) * z * z * z;
        assert!((f.eval(z) - want).norm() < 1e-15);
        let f = parse_function("blaschke:0.5,0.2-0.1i,0*outer:2.1+z").unwrap();
        let a = Complex64::new(0.2, -0.1);
        let b = |a: Complex64| (a.norm() / a) * (a - z) / (1.0 - a.conj() * z);
        let want = b(Complex64::new(0.5, 0.0)) * b(a) * z * (2.1 + z);
        assert!((f.eval(z) - want).norm() < 1e-14);
        let f = parse_function("coeffs:0,2,1").unwrap();
        assert_eq!(f.eval(z), 2.0 * z + z * z);
        assert!(matches!(parse_function("outer:2+"), Err(Error::Parse { .. })));
        assert!(matches!(parse_function("blaschke:1.5"), Err(Error::Domain(_))));
        assert!(matches!(parse_function("fourier:1"), Err(Error::Parse { position: 0, .. })));
    }

    #[test]
    fn coefficient_files() {
        let p = parse_coefficients("# z(2+z)\n0\n2 0\n1, 0\n").unwrap();
        assert_eq!(p, TaylorPoly::from_real(&[0.0, 2.0, 1.0]));
        assert!(parse_coefficients("1 x").is_err());
        assert!(parse_coefficients("# nothing").is_err());
    }

    #[test]
    fn grid_snapping() {
        let g = t_grid(0.2, 0.8, 0.05).unwrap();
        assert_eq!(g.len(), 13);
        assert_eq!(g[12], 0.8);
        assert_eq!(g[2], 0.3);
        assert!(t_grid(1.0, 0.0, 0.1).is_err());
    }
}
