//! The ring `K[x, y][u^-1]` with `u = xy - 1`.
//!
//! Since `K[x, y][u^-1] = K[u, u^-1][x, y] / (xy - u - 1)`, every element
//! has a unique expansion in the monomials `x^a u^c` (`a >= 0`) and
//! `y^b u^c` (`b >= 1`), `c` any integer. Normalizing replaces each
//! `(xy)^m` by `(u + 1)^m`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::RingError;
use crate::lattice::{format_scalar, parse_scalar, Scalar};

/// Which variable a basis monomial uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    X,
    Y,
}

/// Basis monomial `x^exp u^upow` or `y^exp u^upow`; the `y` branch has
/// `exp >= 1` so that `u^c` is only listed once.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LocalMonomial {
    branch: Branch,
    exp: u32,
    upow: i64,
}

/// Arbitrary monomial `x^x y^y u^u` before normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RawMonomial {
    pub x: u32,
    pub y: u32,
    pub u: i64,
}

impl LocalMonomial {
    pub fn new(branch: Branch, exp: u32, upow: i64) -> Result<LocalMonomial, RingError> {
        if branch == Branch::Y && exp == 0 {
            return Err(RingError::BadMonomial("the y branch needs a positive exponent".into()));
        }
        Ok(LocalMonomial { branch, exp, upow })
    }

    pub fn unit() -> LocalMonomial {
        LocalMonomial { branch: Branch::X, exp: 0, upow: 0 }
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    pub fn exp(&self) -> u32 {
        self.exp
    }

    pub fn upow(&self) -> i64 {
        self.upow
    }

    pub fn to_raw(self) -> RawMonomial {
        match self.branch {
            Branch::X => RawMonomial { x: self.exp, y: 0, u: self.upow },
            Branch::Y => RawMonomial { x: 0, y: self.exp, u: self.upow },
        }
    }
}

impl RawMonomial {
    pub fn new(x: u32, y: u32, u: i64) -> RawMonomial {
        RawMonomial { x, y, u }
    }

    pub fn mul(&self, other: &RawMonomial) -> Result<RawMonomial, RingError> {
        Ok(RawMonomial {
            x: self.x.checked_add(other.x).ok_or(RingError::ExponentOverflow)?,
            y: self.y.checked_add(other.y).ok_or(RingError::ExponentOverflow)?,
            u: self.u.checked_add(other.u).ok_or(RingError::ExponentOverflow)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LocalElement {
    terms: BTreeMap<LocalMonomial, Scalar>,
}

impl LocalElement {
    pub fn zero() -> LocalElement {
        LocalElement::default()
    }

    pub fn one() -> LocalElement {
        LocalElement::monomial(LocalMonomial::unit(), Scalar::one())
    }

    pub fn monomial(m: LocalMonomial, coeff: Scalar) -> LocalElement {
        let mut out = LocalElement::zero();
        out.add_term(m, coeff);
        out
    }

    fn add_term(&mut self, m: LocalMonomial, coeff: Scalar) {
        let entry = self.terms.entry(m).or_insert_with(Scalar::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> &BTreeMap<LocalMonomial, Scalar> {
        &self.terms
    }

    pub fn coefficient(&self, m: &LocalMonomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &LocalElement) -> LocalElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

/// Rewrites a sum of arbitrary monomials in the basis.
pub fn local_normal_form(
    terms: impl IntoIterator<Item = (Scalar, RawMonomial)>,
) -> Result<LocalElement, RingError> {
    let mut out = LocalElement::zero();
    for (coeff, raw) in terms {
        if coeff.is_zero() {
            continue;
        }
        let m = raw.x.min(raw.y);
        let (branch, exp) = if raw.x >= raw.y { (Branch::X, raw.x - m) } else { (Branch::Y, raw.y - m) };
        // (xy)^m = sum_j C(m, j) u^j
        let mut binom = BigInt::one();
        for j in 0..=m {
            let upow = raw.u.checked_add(i64::from(j)).ok_or(RingError::ExponentOverflow)?;
            out.add_term(LocalMonomial { branch, exp, upow }, &coeff * Scalar::from_integer(binom.clone()));
            binom = binom * (m - j) / (j + 1);
        }
    }
    Ok(out)
}

pub fn local_mul(e1: &LocalElement, e2: &LocalElement) -> Result<LocalElement, RingError> {
    let mut raw = Vec::with_capacity(e1.terms.len() * e2.terms.len());
    for (m1, c1) in &e1.terms {
        for (m2, c2) in &e2.terms {
            raw.push((c1 * c2, m1.to_raw().mul(&m2.to_raw())?));
        }
    }
    local_normal_form(raw)
}

fn write_monomial(f: &mut fmt::Formatter<'_>, factors: &[(&str, i64)], coeff: &Scalar) -> fmt::Result {
    let mut parts: Vec<String> = Vec::new();
    let shown: Vec<String> = factors
        .iter()
        .filter(|(_, e)| *e != 0)
        .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect();
    if !coeff.is_one() || shown.is_empty() {
        parts.push(format_scalar(coeff));
    }
    parts.extend(shown);
    write!(f, "{}", parts.join("*"))
}

impl fmt::Display for LocalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let c = match (i, c.is_negative()) {
                (0, true) => {
                    write!(f, "-")?;
                    -c
                }
                (0, false) => c.clone(),
                (_, true) => {
                    write!(f, " - ")?;
                    -c
                }
                (_, false) => {
                    write!(f, " + ")?;
                    c.clone()
                }
            };
            let var = match m.branch {
                Branch::X => "x",
                Branch::Y => "y",
            };
            write_monomial(f, &[(var, i64::from(m.exp)), ("u", m.upow)], &c)?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: impl Into<String>) -> RingError {
        RingError::Parse { position: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while self.peek().is_some_and(&f) {
            self.pos += 1;
        }
        &self.text[start..self.pos]
    }

    fn integer(&mut self) -> Result<i64, RingError> {
        self.skip_ws();
        let paren = self.eat('(');
        self.skip_ws();
        let negative = self.eat('-');
        self.skip_ws();
        let digits = self.take_while(|c| c.is_ascii_digit());
        let value: i64 = digits.parse().map_err(|_| self.error("expected an integer exponent"))?;
        if paren && !self.eat(')') {
            return Err(self.error("expected ')'"));
        }
        Ok(if negative { -value } else { value })
    }

    fn term(&mut self) -> Result<(Scalar, RawMonomial), RingError> {
        let mut coeff = Scalar::one();
        let mut mono = RawMonomial::default();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let start = self.pos;
                    let text = self.take_while(|c| c.is_ascii_digit() || c == '/' || c == '.');
                    let value = parse_scalar(text)
                        .map_err(|e| RingError::Parse { position: start, message: e.to_string() })?;
                    coeff *= value;
                }
                Some(v @ ('x' | 'y' | 'u')) => {
                    self.pos += 1;
                    let exp = if self.eat('^') { self.integer()? } else { 1 };
                    let grow = |current: u32| -> Result<u32, RingError> {
                        let e = u32::try_from(exp).map_err(|_| self.error("only u may have a negative exponent"))?;
                        current.checked_add(e).ok_or(RingError::ExponentOverflow)
                    };
                    match v {
                        'x' => mono.x = grow(mono.x)?,
                        'y' => mono.y = grow(mono.y)?,
                        _ => mono.u = mono.u.checked_add(exp).ok_or(RingError::ExponentOverflow)?,
                    }
                }
                _ => return Err(self.error("expected a number or one of x, y, u")),
            }
            if !self.eat('*') {
                return Ok((coeff, mono));
            }
        }
    }
}

/// Parses sums of products such as `x^2*y - 3/2*x*u^-1 + 4`.
pub fn parse_expression(text: &str) -> Result<Vec<(Scalar, RawMonomial)>, RingError> {
    let mut p = Parser { text, pos: 0 };
    let mut out = Vec::new();
    let mut negative = p.eat('-');
    if !negative {
        p.eat('+');
    }
    loop {
        let (coeff, mono) = p.term()?;
        out.push((if negative { -coeff } else { coeff }, mono));
        if p.eat('+') {
            negative = false;
        } else if p.eat('-') {
            negative = true;
        } else {
            break;
        }
    }
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}
