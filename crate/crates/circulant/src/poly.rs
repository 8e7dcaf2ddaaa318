//! Dense polynomials over arbitrary-precision integers.
//!
//! This is the carrier type for everything else in the crate: cyclotomic
//! polynomials, resultants, exact division and the text format used by the
//! CLI and the witness registry.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer polynomial; `coeffs[i]` is the coefficient of `x^i`.
/// The highest stored coefficient is nonzero; the zero polynomial stores
/// nothing at all.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn x() -> Self {
        IntPoly::monomial(BigInt::one(), 1)
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::from_coeffs(vec![c])
    }

    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        IntPoly::from_coeffs(v)
    }

    /// Builds a polynomial, trimming trailing zeros so the invariant holds.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `x^n - 1`.
    pub fn xn_minus_one(n: u64) -> Self {
        let mut v = vec![BigInt::zero(); n as usize + 1];
        v[0] = BigInt::from(-1);
        v[n as usize] = BigInt::one();
        IntPoly::from_coeffs(v)
    }

    /// `1 + x + ... + x^{k-1}` for `k >= 0`.
    pub fn geometric(k: u64) -> Self {
        IntPoly::from_coeffs(vec![BigInt::one(); k as usize])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Coefficient-wise reversal `x^{deg} F(1/x)`; used for reciprocity checks.
    pub fn reversed(&self) -> Self {
        let mut v = self.coeffs.clone();
        v.reverse();
        IntPoly::from_coeffs(v)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend_from_slice(&self.coeffs);
        IntPoly { coeffs: v }
    }

    /// Substitution `x -> x^k` without reduction.
    pub fn substitute_power(&self, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); self.coeffs.len().saturating_sub(1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * k] += c;
        }
        IntPoly::from_coeffs(v)
    }

    /// Reduction modulo `x^n - 1`: exponents fold mod `n`.
    pub fn reduce_xn_minus_one(&self, n: u64) -> Self {
        let n = n as usize;
        let mut v = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i % n] += c;
        }
        IntPoly::from_coeffs(v)
    }

    /// Product reduced modulo `x^n - 1`, folding indices as it multiplies.
    pub fn mul_mod(&self, other: &IntPoly, n: u64) -> Self {
        let n = n as usize;
        let mut v = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[(i + j) % n] += a * b;
                }
            }
        }
        IntPoly::from_coeffs(v)
    }

    /// Substitution `x -> x^k` with exponents folded mod `x^n - 1`.
    pub fn substitute_power_mod(&self, k: u64, n: u64) -> Self {
        let n = n as usize;
        let mut v = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[(i * k as usize) % n] += c;
        }
        IntPoly::from_coeffs(v)
    }

    /// Long division in `Z[x]`. Fails unless every quotient step divides
    /// exactly, which is the right notion for divisibility in the integer
    /// polynomial ring.
    pub fn divrem(&self, d: &IntPoly) -> Result<(IntPoly, IntPoly)> {
        if d.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let dd = d.degree().unwrap();
        let dl = d.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1;
            let lead = rem[k].clone();
            if lead.is_zero() {
                rem.pop();
                continue;
            }
            let (q, r) = num_integer::Integer::div_rem(&lead, dl);
            if !r.is_zero() {
                return Err(Error::InexactDivision {
                    remainder: IntPoly::from_coeffs(rem).to_string(),
                });
            }
            let pos = k - dd;
            quot[pos] = q.clone();
            for (i, c) in d.coeffs.iter().enumerate() {
                let t = &q * c;
                rem[pos + i] -= t;
            }
            debug_assert!(rem[k].is_zero());
            rem.pop();
        }
        Ok((IntPoly::from_coeffs(quot), IntPoly::from_coeffs(rem)))
    }

    /// Exact quotient; errors with the offending remainder when `d` does not
    /// divide `self` in `Z[x]`.
    pub fn exact_div(&self, d: &IntPoly) -> Result<IntPoly> {
        let (q, r) = self.divrem(d)?;
        if !r.is_zero() {
            return Err(Error::InexactDivision {
                remainder: r.to_string(),
            });
        }
        Ok(q)
    }

    /// Pseudo-division: `lc(d)^{deg self - deg d + 1} self = q d + r`.
    fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree().unwrap();
        let dl = d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut steps = rem.len() as i64 - dd as i64; // number of quotient slots left
        while rem.len() > dd {
            let k = rem.len() - 1;
            let lead = rem[k].clone();
            rem.pop();
            for c in rem.iter_mut() {
                *c = &*c * &dl;
            }
            let pos = k - dd;
            for (i, c) in d.coeffs[..dd].iter().enumerate() {
                rem[pos + i] -= &lead * c;
            }
            steps -= 1;
            while rem.last().map_or(false, |c| c.is_zero()) {
                rem.pop();
            }
        }
        // Pad remaining multiplier so the classical definition is matched.
        let mut r = IntPoly::from_coeffs(rem);
        while steps > 0 {
            r = r.scale(&dl);
            steps -= 1;
        }
        r
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({})", self)
    }
}

impl serde::Serialize for IntPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for IntPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = <String as serde::Deserialize>::deserialize(d)?;
        parse(&text).map_err(serde::de::Error::custom)
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.coeff(i) + rhs.coeff(i));
        }
        IntPoly::from_coeffs(v)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(self.coeff(i) - rhs.coeff(i));
        }
        IntPoly::from_coeffs(v)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        IntPoly::from_coeffs(v)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

impl fmt::Display for IntPoly {
    /// Canonical rendering: ascending powers, explicit signs, `x^k` notation.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_mag = mag.is_one();
            match (i, unit_mag) {
                (0, _) => write!(f, "{}", mag)?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{}x", mag)?,
                (_, true) => write!(f, "x^{}", i)?,
                (_, false) => write!(f, "{}x^{}", mag, i)?,
            }
        }
        Ok(())
    }
}

struct Scanner<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(s: &'a str) -> Self {
        Scanner {
            bytes: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn err(&self, message: &str) -> Error {
        Error::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    /// Consumes '+' (returns 1), ASCII '-' or U+2212 (returns -1).
    fn take_sign(&mut self) -> Option<i32> {
        match self.peek() {
            Some(b'+') => {
                self.pos += 1;
                Some(1)
            }
            Some(b'-') => {
                self.pos += 1;
                Some(-1)
            }
            // U+2212 MINUS SIGN, as used in typeset sources.
            Some(0xe2)
                if self.bytes[self.pos..].starts_with(&[0xe2, 0x88, 0x92]) =>
            {
                self.pos += 3;
                Some(-1)
            }
            _ => None,
        }
    }

    fn take_uint(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return None;
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Some(s.parse().unwrap())
    }
}

/// Parses the polynomial grammar: signed monomial sums like `1 - x + 2x^3`,
/// or a bracketed ascending coefficient list like `[1,-1,0,2]`.
pub fn parse(text: &str) -> Result<IntPoly> {
    let mut sc = Scanner::new(text);
    sc.skip_ws();
    if sc.peek() == Some(b'[') {
        return parse_list(&mut sc);
    }
    let mut acc: HashMap<usize, BigInt> = HashMap::new();
    let mut first = true;
    loop {
        sc.skip_ws();
        if sc.peek().is_none() {
            if first {
                return Err(sc.err("empty polynomial"));
            }
            break;
        }
        let sign = match sc.take_sign() {
            Some(s) => s,
            None if first => 1,
            None => return Err(sc.err("expected '+' or '-' between terms")),
        };
        sc.skip_ws();
        let coeff = sc.take_uint();
        sc.skip_ws();
        let (exp, have_x) = if sc.peek() == Some(b'x') {
            sc.pos += 1;
            sc.skip_ws();
            if sc.peek() == Some(b'^') {
                sc.pos += 1;
                sc.skip_ws();
                let sign_pos = sc.pos;
                if sc.take_sign() == Some(-1) {
                    return Err(Error::Syntax {
                        offset: sign_pos,
                        message: "negative exponents are not allowed".to_string(),
                    });
                }
                match sc.take_uint() {
                    Some(e) => {
                        let e: usize = e
                            .try_into()
                            .map_err(|_| sc.err("exponent out of range"))?;
                        (e, true)
                    }
                    None => return Err(sc.err("expected exponent after '^'")),
                }
            } else {
                (1, true)
            }
        } else {
            (0, false)
        };
        if coeff.is_none() && !have_x {
            return Err(sc.err("expected coefficient or 'x'"));
        }
        let c = coeff.unwrap_or_else(BigInt::one) * sign;
        *acc.entry(exp).or_insert_with(BigInt::zero) += c;
        first = false;
    }
    let deg = acc.keys().copied().max().unwrap_or(0);
    let mut v = vec![BigInt::zero(); deg + 1];
    for (e, c) in acc {
        v[e] = c;
    }
    Ok(IntPoly::from_coeffs(v))
}

fn parse_list(sc: &mut Scanner) -> Result<IntPoly> {
    sc.pos += 1; // '['
    let mut v = Vec::new();
    loop {
        sc.skip_ws();
        if sc.peek() == Some(b']') && v.is_empty() {
            sc.pos += 1;
            break;
        }
        let sign = sc.take_sign().unwrap_or(1);
        sc.skip_ws();
        let mag = sc.take_uint().ok_or_else(|| sc.err("expected integer"))?;
        v.push(mag * sign);
        sc.skip_ws();
        match sc.peek() {
            Some(b',') => sc.pos += 1,
            Some(b']') => {
                sc.pos += 1;
                break;
            }
            _ => return Err(sc.err("expected ',' or ']'")),
        }
    }
    sc.skip_ws();
    if sc.peek().is_some() {
        return Err(sc.err("trailing input after ']'"));
    }
    Ok(IntPoly::from_coeffs(v))
}

// ---------------------------------------------------------------------------
// Cyclotomic polynomials
// ---------------------------------------------------------------------------

pub fn euler_phi(mut n: u64) -> u64 {
    let mut phi = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut pk = 1;
            while n % p == 0 {
                n /= p;
                pk *= p;
            }
            phi *= pk - pk / p;
        }
        p += 1;
    }
    if n > 1 {
        phi *= n - 1;
    }
    phi
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut d: Vec<u64> = (1..=n).filter(|k| n % k == 0).collect();
    d.sort_unstable();
    d
}

/// The `d`-th cyclotomic polynomial, computed as `(x^d - 1) / prod Phi_e`
/// over proper divisors `e` and memoized.
pub fn cyclotomic(d: u64) -> IntPoly {
    assert!(d >= 1, "conductor must be positive");
    static CACHE: OnceLock<Mutex<HashMap<u64, IntPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&d) {
        return p.clone();
    }
    let mut f = IntPoly::xn_minus_one(d);
    for e in divisors(d) {
        if e < d {
            let phi_e = cyclotomic(e);
            f = f.exact_div(&phi_e).expect("cyclotomic division is exact");
        }
    }
    cache.lock().unwrap().insert(d, f.clone());
    f
}

// ---------------------------------------------------------------------------
// Resultants
// ---------------------------------------------------------------------------

/// Exact integer resultant via the subresultant polynomial remainder
/// sequence (fraction-free). Sign convention is the classical one:
/// `Res(F, G) = lc(F)^{deg G} prod G(alpha)` over the roots of `F`.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> Result<BigInt> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut a = f.clone();
    let mut b = g.clone();
    let mut s = 1i32;
    if a.degree() < b.degree() {
        if a.degree().unwrap() % 2 == 1 && b.degree().unwrap() % 2 == 1 {
            s = -s;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if b.degree() == Some(0) {
        let res = b.leading().unwrap().pow(a.degree().unwrap() as u32);
        return Ok(if s < 0 { -res } else { res });
    }
    let mut g_ = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        let delta = (da - db) as u32;
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
        let r = a.pseudo_rem(&b);
        if r.is_zero() {
            // Nontrivial common factor.
            return Ok(BigInt::zero());
        }
        a = b;
        let divisor = &g_ * h.pow(delta);
        b = IntPoly::from_coeffs(
            r.coeffs()
                .iter()
                .map(|c| {
                    let (q, rr) = num_integer::Integer::div_rem(c, &divisor);
                    debug_assert!(rr.is_zero(), "subresultant division must be exact");
                    q
                })
                .collect(),
        );
        g_ = a.leading().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            let num = g_.pow(delta);
            let den = h.pow(delta - 1);
            let (q, rr) = num_integer::Integer::div_rem(&num, &den);
            debug_assert!(rr.is_zero());
            q
        };
        if b.degree() == Some(0) {
            let da = a.degree().unwrap() as u32;
            let num = b.leading().unwrap().pow(da);
            let den = h.pow(da.saturating_sub(1));
            let (q, rr) = num_integer::Integer::div_rem(&num, &den);
            debug_assert!(rr.is_zero());
            return Ok(if s < 0 { -q } else { q });
        }
    }
}

/// Fraction-free determinant (Bareiss) of a square integer matrix, used for
/// norms and as the Sylvester-matrix cross-check of `resultant`.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                let (q, r) = num_integer::Integer::div_rem(&num, &prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                m[i][j] = q;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Resultant as the Bareiss determinant of the Sylvester matrix; the
/// independent cross-check path for `resultant`.
pub fn sylvester_resultant(f: &IntPoly, g: &IntPoly) -> Result<BigInt> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let m = f.degree().unwrap();
    let n = g.degree().unwrap();
    if m + n == 0 {
        return Ok(BigInt::one());
    }
    let size = m + n;
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    for row in 0..n {
        for (i, c) in f.coeffs().iter().enumerate() {
            mat[row][row + m - i] = c.clone();
        }
    }
    for row in 0..m {
        for (i, c) in g.coeffs().iter().enumerate() {
            mat[n + row][row + n - i] = c.clone();
        }
    }
    Ok(bareiss_det(mat))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPoly {
        parse(s).unwrap()
    }

    #[test]
    fn parse_monomial_sum() {
        assert_eq!(p("1 - x + x^3").coeffs(), IntPoly::from_i64(&[1, -1, 0, 1]).coeffs());
        assert_eq!(p("[1,-1,0,1]"), p("1 - x + x^3"));
        assert_eq!(p("0"), IntPoly::zero());
        assert_eq!(p("[]"), IntPoly::zero());
        assert_eq!(p("2x^2+3"), IntPoly::from_i64(&[3, 0, 2]));
        assert_eq!(p("-x"), IntPoly::from_i64(&[0, -1]));
        assert_eq!(p("x + x"), IntPoly::from_i64(&[0, 2]));
    }

    #[test]
    fn parse_errors_carry_offsets() {
        match parse("1 + x^-2") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 6),
            other => panic!("expected syntax error, got {:?}", other),
        }
        assert!(parse("").is_err());
        assert!(parse("1 ++ x").is_err());
        assert!(parse("[1,]").is_err());
    }

    #[test]
    fn render_round_trips() {
        for s in ["1 - x + 2x^3", "-x", "0", "2 + x^2", "-1 - x", "5x^7"] {
            let q = p(s);
            assert_eq!(parse(&q.to_string()).unwrap(), q);
            assert_eq!(q.to_string(), s);
        }
    }

    #[test]
    fn mul_mod_folds_exponents() {
        let f = IntPoly::monomial(BigInt::one(), 14);
        let g = IntPoly::x();
        assert_eq!(f.mul_mod(&g, 15), IntPoly::one());
        let any = p("3 - x + x^9");
        assert_eq!(IntPoly::one().mul_mod(&any, 15), any.reduce_xn_minus_one(15));
    }

    #[test]
    fn exact_div_examples() {
        let f = IntPoly::xn_minus_one(5);
        let d = p("x - 1");
        assert_eq!(f.exact_div(&d).unwrap(), p("1 + x + x^2 + x^3 + x^4"));

        // x^15 - 1 over Phi_15 equals (x^3-1)(x^5-1)/(x-1).
        let q = IntPoly::xn_minus_one(15).exact_div(&cyclotomic(15)).unwrap();
        let expect = (&IntPoly::xn_minus_one(3) * &IntPoly::xn_minus_one(5))
            .exact_div(&p("x - 1"))
            .unwrap();
        assert_eq!(q, expect);
        assert_eq!(expect, IntPoly::from_i64(&[-1, -1, -1, 0, 0, 1, 1, 1]));

        match p("x^2 + 1").exact_div(&p("x - 1")) {
            Err(Error::InexactDivision { remainder }) => assert_eq!(remainder, "2"),
            other => panic!("expected inexact division, got {:?}", other),
        }
    }

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic(1), p("-1 + x"));
        assert_eq!(cyclotomic(3), p("1 + x + x^2"));
        assert_eq!(cyclotomic(15), IntPoly::from_i64(&[1, -1, 0, 1, -1, 1, 0, -1, 1]));
        // Product over divisors reconstructs x^n - 1.
        for n in [1u64, 2, 12, 15, 30, 105] {
            let mut prod = IntPoly::one();
            for d in divisors(n) {
                prod = &prod * &cyclotomic(d);
            }
            assert_eq!(prod, IntPoly::xn_minus_one(n));
        }
    }

    #[test]
    fn phi3_times_phi5() {
        // Degree-6 product, frozen by hand: conv([1,1,1],[1,1,1,1,1]).
        let prod = cyclotomic(3).mul_mod(&cyclotomic(5), 15);
        assert_eq!(prod, IntPoly::from_i64(&[1, 2, 3, 3, 3, 2, 1]));
    }

    #[test]
    fn resultant_cyclotomic_pairs() {
        let r = resultant(&cyclotomic(15), &cyclotomic(5)).unwrap();
        assert_eq!(r, BigInt::from(81));
        let r = resultant(&cyclotomic(15), &cyclotomic(3)).unwrap();
        assert_eq!(r, BigInt::from(25));
        let r = resultant(&cyclotomic(15), &cyclotomic(2)).unwrap();
        assert_eq!(r, BigInt::from(1));
    }

    #[test]
    fn resultant_matches_sylvester() {
        let cases = [
            (p("1 - x + x^3"), p("2 + x^2")),
            (p("x^5 - 1"), p("1 + 3x - x^2")),
            (p("7"), p("1 + x")),
            (p("3 + x"), p("5")),
            (p("x - 1"), p("x + 1")),
        ];
        for (f, g) in cases {
            assert_eq!(
                resultant(&f, &g).unwrap(),
                sylvester_resultant(&f, &g).unwrap(),
                "PRS vs Sylvester disagree on ({}, {})",
                f,
                g
            );
        }
    }

    #[test]
    fn resultant_rejects_zero() {
        assert!(resultant(&IntPoly::zero(), &IntPoly::one()).is_err());
    }
}
