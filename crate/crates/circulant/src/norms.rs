//! Cyclotomic norms `N_d(F)`, full norm profiles `M_n(F)`, unit detection in
//! `Z[w_n]` and verification of the tabulated unit generators.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{bareiss_det, cyclotomic, divisors, euler_phi, IntPoly};

/// Residue of an integer polynomial modulo `Phi_d`: an element of `Z[w_d]`
/// on the power basis `1, w, ..., w^{phi(d)-1}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycloElement {
    d: u64,
    coords: Vec<BigInt>,
}

impl CycloElement {
    /// Canonical representative of `F mod Phi_d`.
    pub fn reduce(f: &IntPoly, d: u64) -> Self {
        let phi = cyclotomic(d);
        let (_, r) = f.divrem(&phi).expect("Phi_d is monic, division succeeds");
        let mut coords: Vec<BigInt> = r.coeffs().to_vec();
        coords.resize(euler_phi(d) as usize, BigInt::zero());
        CycloElement { d, coords }
    }

    pub fn conductor(&self) -> u64 {
        self.d
    }

    /// Coordinates on the power basis; always exactly `phi(d)` entries.
    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn from_coords(d: u64, mut coords: Vec<BigInt>) -> Self {
        coords.resize(euler_phi(d) as usize, BigInt::zero());
        CycloElement { d, coords }
    }

    pub fn to_poly(&self) -> IntPoly {
        IntPoly::from_coeffs(self.coords.clone())
    }

    pub fn zero(d: u64) -> Self {
        CycloElement::from_coords(d, Vec::new())
    }

    pub fn one(d: u64) -> Self {
        CycloElement::from_coords(d, vec![BigInt::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn mul(&self, other: &CycloElement) -> CycloElement {
        assert_eq!(self.d, other.d);
        CycloElement::reduce(&(&self.to_poly() * &other.to_poly()), self.d)
    }

    pub fn add(&self, other: &CycloElement) -> CycloElement {
        assert_eq!(self.d, other.d);
        CycloElement::reduce(&(&self.to_poly() + &other.to_poly()), self.d)
    }

    pub fn sub(&self, other: &CycloElement) -> CycloElement {
        assert_eq!(self.d, other.d);
        CycloElement::reduce(&(&self.to_poly() - &other.to_poly()), self.d)
    }

    pub fn neg(&self) -> CycloElement {
        CycloElement::from_coords(self.d, self.coords.iter().map(|c| -c).collect())
    }

    /// Galois conjugation `w -> w^k`, `gcd(k, d) = 1`.
    pub fn conjugate(&self, k: u64) -> CycloElement {
        CycloElement::reduce(&self.to_poly().substitute_power_mod(k % self.d, self.d), self.d)
    }

    /// Field norm down to `Z`: the determinant of multiplication by `self`
    /// on the power basis.
    pub fn norm(&self) -> BigInt {
        let phi = euler_phi(self.d) as usize;
        let modulus = cyclotomic(self.d);
        let mut col = self.to_poly();
        let mut mat = vec![vec![BigInt::zero(); phi]; phi];
        for j in 0..phi {
            for i in 0..phi {
                mat[i][j] = col.coeff(i);
            }
            if j + 1 < phi {
                let (_, r) = col.shift(1).divrem(&modulus).unwrap();
                col = r;
            }
        }
        bareiss_det(mat)
    }

    /// Exact inverse of a unit, as `N(u) * prod of the other conjugates`.
    /// Errors when `|N(u)| != 1`.
    pub fn unit_inverse(&self) -> Result<CycloElement> {
        let n = self.norm();
        if !n.abs().is_one() {
            return Err(Error::Precondition(format!(
                "not a unit: N_{}(.) = {}",
                self.d, n
            )));
        }
        let mut prod = CycloElement::one(self.d);
        for k in 2..self.d {
            if num_integer::gcd(k, self.d) == 1 {
                prod = prod.mul(&self.conjugate(k));
            }
        }
        if n.is_negative() {
            prod = prod.neg();
        }
        debug_assert!(prod.mul(self) == CycloElement::one(self.d));
        Ok(prod)
    }
}

/// The map `d -> N_d(F)` over the divisors of `n`, together with the
/// circulant determinant `M_n(F)`, their product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormProfile {
    pub n: u64,
    pub norms: BTreeMap<u64, BigInt>,
    pub total: BigInt,
}

/// `N_d(F)`: the product of `F` over the primitive `d`-th roots of unity,
/// computed as a multiplication-matrix determinant for moderate degrees and
/// through a modular resultant for large ones. Returns 0 when `Phi_d | F`.
pub fn norm_d(f: &IntPoly, d: u64) -> BigInt {
    if f.is_zero() {
        return BigInt::zero();
    }
    let phi = euler_phi(d);
    if phi <= 24 {
        CycloElement::reduce(f, d).norm()
    } else {
        crate::norms::modular::resultant_mod_crt(&cyclotomic(d), f)
    }
}

/// Full norm profile at modulus `n`. `total` is the exact circulant
/// determinant of the reduced coefficient vector, with no absolute values
/// taken anywhere; it equals `resultant(x^n - 1, F)`.
pub fn norm_profile(f: &IntPoly, n: u64) -> NormProfile {
    let mut norms = BTreeMap::new();
    let mut total = BigInt::one();
    for d in divisors(n) {
        let nd = norm_d(f, d);
        total *= &nd;
        norms.insert(d, nd);
    }
    NormProfile { n, norms, total }
}

/// Reciprocity classification of `F` and unit status of its residue in
/// `Z[w_n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitCheck {
    pub is_unit: bool,
    pub is_reciprocal: bool,
    pub is_skew_reciprocal: bool,
}

/// `is_unit` iff `|N_n(F)| = 1`; the reciprocity flags compare
/// `x^{deg F} F(1/x)` against `+-F` as polynomials.
pub fn unit_check(f: &IntPoly, n: u64) -> UnitCheck {
    let nn = norm_d(f, n);
    let rev = f.reversed();
    UnitCheck {
        is_unit: nn.abs().is_one(),
        is_reciprocal: rev == *f,
        is_skew_reciprocal: rev == -f,
    }
}

/// One verified row of a unit table.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct UnitReportLine {
    pub generator: String,
    pub is_unit: bool,
    pub reciprocity: String,
    pub norm: BigInt,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct UnitReport {
    pub n: u64,
    pub lines: Vec<UnitReportLine>,
    pub all_pass: bool,
}

/// The tabulated generators for the conductors with published tables. At
/// the composite conductors `u_1 = x - 1` is a skew-reciprocal unit and the
/// rest are reciprocal; at prime conductors `x - 1` has norm `p` and the
/// listed generators are all reciprocal.
pub fn unit_table(n: u64) -> Result<Vec<(&'static str, &'static str)>> {
    // (generator text, expected reciprocity class)
    let skew = ("x - 1", "skew-reciprocal");
    let rows: Vec<(&'static str, &'static str)> = match n {
        5 => vec![("x + 1", "reciprocal")],
        7 => vec![("x + 1", "reciprocal"), ("x^3 + 1", "reciprocal")],
        11 => vec![
            ("x + 1", "reciprocal"),
            ("x^2 + 1", "reciprocal"),
            ("x^5 + 1", "reciprocal"),
            ("x^2 + x + 1", "reciprocal"),
        ],
        13 => vec![
            ("x + 1", "reciprocal"),
            ("x^2 + 1", "reciprocal"),
            ("x^6 + 1", "reciprocal"),
            ("x^2 + x + 1", "reciprocal"),
            ("x^10 + x^5 + 1", "reciprocal"),
        ],
        15 => vec![skew, ("x + 1", "reciprocal"), ("x^3 + 1", "reciprocal")],
        21 => vec![
            skew,
            ("x + 1", "reciprocal"),
            ("x^2 + 1", "reciprocal"),
            ("x^3 + 1", "reciprocal"),
            ("x^6 + x^3 + 1", "reciprocal"),
        ],
        33 => vec![
            skew,
            ("x + 1", "reciprocal"),
            ("x^2 + 1", "reciprocal"),
            ("x^3 + 1", "reciprocal"),
            ("x^4 + 1", "reciprocal"),
            ("x^6 + 1", "reciprocal"),
            ("x^18 + 1", "reciprocal"),
            ("x^6 + x^3 + 1", "reciprocal"),
            ("1 + x + x^2 + x^3 + x^4", "reciprocal"),
        ],
        35 => vec![
            skew,
            ("x + 1", "reciprocal"),
            ("x^2 + 1", "reciprocal"),
            ("x^3 + 1", "reciprocal"),
            ("x^4 + 1", "reciprocal"),
            ("x^5 + 1", "reciprocal"),
            ("x^7 + 1", "reciprocal"),
            ("x^15 + 1", "reciprocal"),
            ("x^2 + x + 1", "reciprocal"),
            ("x^6 + x^3 + 1", "reciprocal"),
            (
                "1 + x + x^2 + x^3 + x^4 + x^5 + x^6 + x^7 + x^8 + x^9 + x^10",
                "reciprocal",
            ),
        ],
        39 => vec![
            skew,
            ("x + 1", "reciprocal"),
            ("x^2 + 1", "reciprocal"),
            ("x^3 + 1", "reciprocal"),
            ("x^5 + 1", "reciprocal"),
            ("x^6 + 1", "reciprocal"),
            ("x^18 + 1", "reciprocal"),
            ("x^6 + x^3 + 1", "reciprocal"),
            ("1 + x + x^2 + x^3 + x^4", "reciprocal"),
            ("1 + x + x^2 + x^3 + x^4 + x^5 + x^6", "reciprocal"),
            (
                "1 + x + x^2 + x^3 + x^4 + x^5 + x^6 + x^7 + x^8 + x^9 + x^10",
                "reciprocal",
            ),
        ],
        _ => return Err(Error::UnknownConductor(n)),
    };
    Ok(rows)
}

/// Confirms unit status and the printed reciprocity class of every
/// tabulated generator for conductor `n`.
pub fn verify_unit_table(n: u64) -> Result<UnitReport> {
    let rows = unit_table(n)?;
    let mut lines = Vec::new();
    let mut all_pass = true;
    for (text, expected) in rows {
        let f = crate::poly::parse(text)?;
        let check = unit_check(&f, n);
        let class = if check.is_reciprocal {
            "reciprocal"
        } else if check.is_skew_reciprocal {
            "skew-reciprocal"
        } else {
            "neither"
        };
        let pass = check.is_unit && class == expected;
        all_pass &= pass;
        lines.push(UnitReportLine {
            generator: text.to_string(),
            is_unit: check.is_unit,
            reciprocity: class.to_string(),
            norm: norm_d(&f, n),
        });
    }
    Ok(UnitReport { n, lines, all_pass })
}

/// Modular-CRT resultants for conductors whose degree makes big-integer
/// elimination slow. Used only above the `phi(d) <= 24` cutoff in `norm_d`;
/// the Bareiss path stays authoritative below it and the two are
/// cross-checked in the property suite.
pub(crate) mod modular {
    use super::*;

    fn mulmod(a: u64, b: u64, m: u64) -> u64 {
        ((a as u128 * b as u128) % m as u128) as u64
    }

    fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
        let mut r = 1u64;
        a %= m;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a, m);
            }
            a = mulmod(a, a, m);
            e >>= 1;
        }
        r
    }

    fn invmod(a: u64, m: u64) -> u64 {
        powmod(a, m - 2, m)
    }

    fn reduce_poly(f: &IntPoly, m: u64) -> Vec<u64> {
        let mb = BigInt::from(m);
        let mut v: Vec<u64> = f
            .coeffs()
            .iter()
            .map(|c| {
                let r = ((c % &mb) + &mb) % &mb;
                r.try_into().unwrap()
            })
            .collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    /// Euclidean resultant over `F_m`. Step rule for `deg a >= deg b >= 1`
    /// and `r = a mod b`:
    /// `Res(a, b) = (-1)^{da db} lc(b)^{da - dr} Res(b, r)`.
    fn resultant_mod(mut a: Vec<u64>, mut b: Vec<u64>, m: u64) -> u64 {
        if a.is_empty() || b.is_empty() {
            return 0;
        }
        let mut res = 1u64;
        let mut neg = false;
        loop {
            if b.len() == 1 {
                res = mulmod(res, powmod(b[0], (a.len() - 1) as u64, m), m);
                break;
            }
            if a.len() < b.len() {
                if (a.len() - 1) % 2 == 1 && (b.len() - 1) % 2 == 1 {
                    neg = !neg;
                }
                std::mem::swap(&mut a, &mut b);
                continue;
            }
            let da = a.len() - 1;
            let db = b.len() - 1;
            let lb = *b.last().unwrap();
            let linv = invmod(lb, m);
            for k in (db..=da).rev() {
                let lead = a[k];
                if lead == 0 {
                    continue;
                }
                let q = mulmod(lead, linv, m);
                for i in 0..=db {
                    let t = mulmod(q, b[i], m);
                    let idx = k - db + i;
                    a[idx] = (a[idx] + m - t) % m;
                }
            }
            while a.last() == Some(&0) {
                a.pop();
            }
            if a.is_empty() {
                return 0;
            }
            let dr = a.len() - 1;
            res = mulmod(res, powmod(lb, (da - dr) as u64, m), m);
            if da % 2 == 1 && db % 2 == 1 {
                neg = !neg;
            }
            std::mem::swap(&mut a, &mut b);
        }
        if neg {
            (m - res) % m
        } else {
            res
        }
    }

    /// Hadamard-style bound on `|Res(f, g)|` to size the CRT basis.
    fn resultant_bound(f: &IntPoly, g: &IntPoly) -> BigInt {
        let norm = |p: &IntPoly| -> BigInt {
            let s: BigInt = p.coeffs().iter().map(|c| c * c).sum();
            s.sqrt() + 1
        };
        let nf = norm(f);
        let ng = norm(g);
        nf.pow(g.degree().unwrap() as u32) * ng.pow(f.degree().unwrap() as u32)
    }

    pub fn resultant_mod_crt(f: &IntPoly, g: &IntPoly) -> BigInt {
        assert!(!f.is_zero() && !g.is_zero());
        let bound = resultant_bound(f, g) * 2 + 1;
        // Deterministic 62-bit prime stream.
        let mut primes = Vec::new();
        let mut modulus = BigInt::one();
        let mut cand = (1u64 << 62) + 1;
        while modulus < bound {
            while !crate::member::is_prime_u64(cand) {
                cand += 2;
            }
            primes.push(cand);
            modulus *= BigInt::from(cand);
            cand += 2;
        }
        let mut acc = BigInt::zero();
        let mut prod = BigInt::one();
        for &m in &primes {
            let rm = resultant_mod(reduce_poly(f, m), reduce_poly(g, m), m);
            let mb = BigInt::from(m);
            let prod_mod_m: u64 = (((&prod % &mb) + &mb) % &mb).try_into().unwrap();
            let inv = BigInt::from(invmod(prod_mod_m, m));
            let diff = ((BigInt::from(rm) - &acc) % &mb + &mb) % &mb;
            let t = (diff * inv) % &mb;
            acc += &prod * t;
            prod *= &mb;
        }
        // Balanced lift into (-prod/2, prod/2].
        let half = &prod >> 1;
        if acc > half {
            acc -= &prod;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse, resultant};

    fn p(s: &str) -> IntPoly {
        parse(s).unwrap()
    }

    #[test]
    fn reduce_examples() {
        // w^15 = 1 at conductor 15.
        let e = CycloElement::reduce(&IntPoly::monomial(BigInt::one(), 15), 15);
        assert_eq!(e, CycloElement::one(15));
        // x^2 = -1 - w at conductor 3.
        let e = CycloElement::reduce(&p("x^2"), 3);
        assert_eq!(e.coords(), &[BigInt::from(-1), BigInt::from(-1)]);
        // Residue of Phi_5 mod Phi_15 is nonzero and the division identity
        // reconstructs the input exactly.
        let e = CycloElement::reduce(&cyclotomic(5), 15);
        assert!(!e.is_zero());
        let (q, r) = cyclotomic(5).divrem(&cyclotomic(15)).unwrap();
        assert_eq!(r, e.to_poly());
        assert_eq!(&(&q * &cyclotomic(15)) + &r, cyclotomic(5));
    }

    #[test]
    fn norm_examples() {
        // N_1(F) = F(1)
        let f = p("3 - 2x + x^4");
        assert_eq!(norm_d(&f, 1), f.eval_one());
        // N_3(x - 1) = 3
        assert_eq!(norm_d(&p("x - 1"), 3), BigInt::from(3));
        // N_21(x^4 + x - 1) = 7
        assert_eq!(norm_d(&p("x^4 + x - 1"), 21), BigInt::from(7));
    }

    #[test]
    fn profile_examples() {
        // M_15(-x) = -1
        assert_eq!(norm_profile(&p("-x"), 15).total, BigInt::from(-1));
        // M_15(1 - x + (x^15-1)/(x-1)) = 225
        let u15 = IntPoly::xn_minus_one(15).exact_div(&p("x - 1")).unwrap();
        let f = &p("1 - x") + &u15;
        assert_eq!(norm_profile(&f, 15).total, BigInt::from(225));
        // M_35(1 + x^3 + x^5 + x^7 + x^10) = 125
        let w = p("1 + x^3 + x^5 + x^7 + x^10");
        assert_eq!(norm_profile(&w, 35).total, BigInt::from(125));
        // Profile total is the product of the parts.
        let prof = norm_profile(&w, 35);
        let prod: BigInt = prof.norms.values().product();
        assert_eq!(prod, prof.total);
    }

    #[test]
    fn profile_total_matches_resultant() {
        for s in ["1 - x + x^3", "2 + x^2 - x^7", "-x", "1 + x + x^2"] {
            let f = p(s);
            let prof = norm_profile(&f, 15);
            assert_eq!(prof.total, resultant(&IntPoly::xn_minus_one(15), &f).unwrap());
        }
    }

    #[test]
    fn unit_checks() {
        let c = unit_check(&p("x + 1"), 15);
        assert!(c.is_unit && c.is_reciprocal && !c.is_skew_reciprocal);
        let c = unit_check(&p("x - 1"), 15);
        assert!(c.is_unit && c.is_skew_reciprocal);
        let c = unit_check(&p("x - 1"), 3);
        assert!(!c.is_unit);
    }

    #[test]
    fn unit_tables_all_pass() {
        for n in [5u64, 7, 11, 13, 15, 21, 33, 35, 39] {
            let report = verify_unit_table(n).unwrap();
            assert!(report.all_pass, "unit table failed for n = {}: {:?}", n, report);
        }
        assert!(verify_unit_table(9).is_err());
    }

    #[test]
    fn unit_inverse_works() {
        let u = CycloElement::reduce(&p("x + 1"), 15);
        let inv = u.unit_inverse().unwrap();
        assert_eq!(u.mul(&inv), CycloElement::one(15));
        let nonunit = CycloElement::reduce(&p("x - 1"), 3);
        assert!(nonunit.unit_inverse().is_err());
    }

    #[test]
    fn modular_resultant_agrees() {
        for (f, g) in [
            (cyclotomic(47), p("1 - x + 3x^2 + x^11")),
            (cyclotomic(141), p("2 + x^5 - x^40")),
        ] {
            let want = resultant(&f, &g).unwrap();
            assert_eq!(modular::resultant_mod_crt(&f, &g), want);
        }
    }
}
