//! Exact membership decisions for the circulant value sets `S_p`, `S_2p`
//! and `S_15`, with a verified witness certificate attached to every
//! positive verdict.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::goodbad::{classify_element, classify_prime, Tag};
use crate::poly::IntPoly;
use crate::witness::{
    compose_witness, coprime_witness, kn_squared, minus_one, shift_construction,
    witness_3sq_5sq, witness_good_form, witness_p3m, GoodFormTarget, WitnessCertificate,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reason {
    Zero,
    Coprime,
    FifteenSq,
    ThreePow,
    FivePow,
    ClassI,
    ClassII,
    ClassIII,
    DivViolation,
    NoQualifyingPrime,
    /// `S_p` / `S_2p` only: a prime-power clause with exponent >= 2.
    PPow,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MembershipVerdict {
    pub n: u64,
    pub value: BigInt,
    pub member: bool,
    pub reason: Reason,
    pub witness: Option<WitnessCertificate>,
}

/// Sign and prime-exponent map of an integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredInteger {
    pub sign: i8,
    /// Ascending primes with exponents; the product reconstructs |value|.
    pub factors: Vec<(BigInt, u32)>,
}

impl FactoredInteger {
    pub fn reconstruct(&self) -> BigInt {
        let mut v = BigInt::from(self.sign);
        for (p, e) in &self.factors {
            v *= p.pow(*e);
        }
        v
    }
}

/// Deterministic Miller-Rabin, complete for all 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        a %= n;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Trial division to 10^6 plus a deterministic primality test on the
/// remaining cofactor when it fits in 64 bits. Larger or composite
/// leftovers are reported as a factorization-bound error, never guessed.
pub fn factorize(v: &BigInt) -> Result<FactoredInteger> {
    if v.is_zero() {
        return Err(Error::Precondition("cannot factor zero".into()));
    }
    let sign = if v.is_negative() { -1 } else { 1 };
    let mut rest = v.abs();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let try_divide = |p: u64, rest: &mut BigInt, factors: &mut Vec<(BigInt, u32)>| {
        let pb = BigInt::from(p);
        let mut e = 0;
        while (&*rest % &pb).is_zero() {
            *rest /= &pb;
            e += 1;
        }
        if e > 0 {
            factors.push((pb, e));
        }
    };
    try_divide(2, &mut rest, &mut factors);
    try_divide(3, &mut rest, &mut factors);
    let mut p = 5u64;
    while p <= 1_000_000 && rest > BigInt::one() {
        try_divide(p, &mut rest, &mut factors);
        try_divide(p + 2, &mut rest, &mut factors);
        p += 6;
    }
    if rest > BigInt::one() {
        match u64::try_from(&rest) {
            Ok(r) if is_prime_u64(r) => factors.push((rest, 1)),
            _ => {
                return Err(Error::FactorBound {
                    value: v.clone(),
                    cofactor: rest,
                })
            }
        }
    }
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(FactoredInteger { sign, factors })
}

fn rem_euclid_small(v: &BigInt, m: u64) -> u64 {
    let mb = BigInt::from(m);
    ((v % &mb + &mb) % &mb).try_into().unwrap()
}

fn valuation(v: &BigInt, p: u64) -> u32 {
    let pb = BigInt::from(p);
    let mut rest = v.abs();
    let mut e = 0;
    while !rest.is_zero() && (&rest % &pb).is_zero() {
        rest /= &pb;
        e += 1;
    }
    e
}

/// The Newman-Laquer divisibility law: for every prime `p | gcd(v, n)` with
/// `p^a` exactly dividing `n`, `p^{a+1}` must divide `v`. Vacuous at 0.
pub fn divisibility_ok(n: u64, v: &BigInt) -> bool {
    if v.is_zero() {
        return true;
    }
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            let mut a = 0;
            while m % p == 0 {
                m /= p;
                a += 1;
            }
            if (v % BigInt::from(p)).is_zero() && valuation(v, p) < a + 1 {
                return false;
            }
        }
        p += 1;
    }
    if m > 1 && (v % BigInt::from(m)).is_zero() && valuation(v, m) < 2 {
        return false;
    }
    true
}

fn zero_verdict(n: u64) -> Result<MembershipVerdict> {
    let witness = WitnessCertificate::checked(n, IntPoly::zero(), BigInt::zero())?;
    Ok(MembershipVerdict {
        n,
        value: BigInt::zero(),
        member: true,
        reason: Reason::Zero,
        witness: Some(witness),
    })
}

/// Decides membership in `S_p` (`doubled = false`) or `S_2p` (`doubled =
/// true`) for an odd prime `p`, and synthesizes a witness on success.
pub fn decide_sp(v: &BigInt, p: u64, doubled: bool) -> Result<MembershipVerdict> {
    if p < 3 || p % 2 == 0 || !is_prime_u64(p) {
        return Err(Error::Precondition(format!("p = {} must be an odd prime", p)));
    }
    let n = if doubled { 2 * p } else { p };
    if v.is_zero() {
        return zero_verdict(n);
    }
    let b = valuation(v, p);
    let a = valuation(v, 2);
    let p_ok = b == 0 || b >= 2;
    let two_ok = !doubled || a == 0 || a >= 2;
    if !(p_ok && two_ok) {
        return Ok(MembershipVerdict {
            n,
            value: v.clone(),
            member: false,
            reason: Reason::DivViolation,
            witness: None,
        });
    }
    let witness = synthesize_sp(v, p, doubled, a, b)?;
    let reason = if b == 0 && (!doubled || a == 0) {
        Reason::Coprime
    } else {
        Reason::PPow
    };
    Ok(MembershipVerdict {
        n,
        value: v.clone(),
        member: true,
        reason,
        witness: Some(witness),
    })
}

fn synthesize_sp(
    v: &BigInt,
    p: u64,
    doubled: bool,
    a: u32,
    b: u32,
) -> Result<WitnessCertificate> {
    let n = if doubled { 2 * p } else { p };
    if !doubled {
        // S_p: b = 0 gives the cyclotomic product; b >= 2 gives k n^2.
        return if b == 0 {
            coprime_witness(v, n)
        } else {
            let k = v / BigInt::from(p).pow(2);
            kn_squared(&k, n)
        };
    }
    // S_2p.
    let pb = BigInt::from(p);
    let m_signed = v / (BigInt::from(2).pow(a) * pb.pow(b)); // odd, coprime to p
    if a >= 2 && b >= 2 {
        let k = v / BigInt::from(4 * p * p);
        return kn_squared(&k, n);
    }
    if b >= 2 {
        // Odd p-power certificate: exact M_2p = p^b |m|, then sign.
        let t = pb.pow(b - 2) * m_signed.abs();
        let cert = s2p_odd_ppow_cert(p, &t)?;
        return if v.is_negative() {
            compose_witness(&[cert, minus_one(n)?], n)
        } else {
            Ok(cert)
        };
    }
    let mut parts: Vec<WitnessCertificate> = Vec::new();
    if a >= 2 {
        let mut rem = a;
        if rem % 2 == 1 {
            parts.push(s2p_eight_cert(p)?);
            rem -= 3;
        }
        let four = s2p_four_cert(p)?;
        for _ in 0..rem / 2 {
            parts.push(four.clone());
        }
    }
    if !m_signed.abs().is_one() || m_signed.is_negative() || parts.is_empty() {
        parts.push(coprime_witness(&m_signed, n)?);
    }
    compose_witness(&parts, n)
}

/// `M_2p(1 + x^{p+1}) = 4`.
pub(crate) fn s2p_four_cert(p: u64) -> Result<WitnessCertificate> {
    let f = &IntPoly::one() + &IntPoly::monomial(BigInt::one(), p as usize + 1);
    WitnessCertificate::checked(2 * p, f, BigInt::from(4))
}

/// Exact value 8 at `n = 2p`, built from the coupled pair
/// `M_2p(F) = M_p(P) M_p(W)` with `P = x^k (1+x+x^2+x^3)` of value 4 and a
/// unit-at-`w_p` side `W` of value 2 matching `P` mod `(2, x^p - 1)`.
pub(crate) fn s2p_eight_cert(p: u64) -> Result<WitnessCertificate> {
    let phi_p = crate::poly::cyclotomic(p);
    // W0 = (x+1)(x^4+1) (x^2+1)^{-1} mod Phi_p: a unit with image 2 mod p.
    let inv_x2p1 = unit_inverse_mod_phi_p(&IntPoly::from_i64(&[1, 0, 1]), p)?;
    let w0 = {
        let a = &IntPoly::from_i64(&[1, 1]) * &IntPoly::from_i64(&[1, 0, 0, 0, 1]);
        (&a * &inv_x2p1).divrem(&phi_p)?.1
    };
    finish_s2p_cert(p, &w0, &BigInt::from(2), &u4_shift_poly(p, &w0, 2)?, BigInt::from(8))
}

/// Exact odd value `p^b m` (`t = p^{b-2} m`, `t > 0` odd, `gcd(m, p) = 1`)
/// at `n = 2p`: pair `P = 1 - x + t u_p` of value `t p^2` with a unit side
/// of value 1.
pub(crate) fn s2p_odd_ppow_cert(p: u64, t: &BigInt) -> Result<WitnessCertificate> {
    let phi_p = crate::poly::cyclotomic(p);
    // Unit with residue x^2 u_{p-2} mod (2, x^p-1) and image 1 mod p:
    // x^2 u_{2(p-2)} u_{p-2}^{-1} u_2^{-1}.
    let u = |r: u64| -> IntPoly { IntPoly::geometric(r) };
    let inv_upm2 = unit_inverse_mod_phi_p(&u(p - 2), p)?;
    let inv_u2 = unit_inverse_mod_phi_p(&u(2), p)?;
    let w0 = {
        let a = IntPoly::monomial(BigInt::one(), 2);
        let b = (&a * &u(2 * (p - 2))).divrem(&phi_p)?.1;
        let c = (&b * &inv_upm2).divrem(&phi_p)?.1;
        (&c * &inv_u2).divrem(&phi_p)?.1
    };
    let value = t * BigInt::from(p) * BigInt::from(p);
    let p_side = {
        let up = IntPoly::geometric(p);
        &IntPoly::from_i64(&[1, -1]) + &up.scale(t)
    };
    finish_s2p_cert(p, &w0, &BigInt::one(), &p_side, value)
}

/// Inverse of a unit residue mod `Phi_p`, as the product of its other
/// conjugates times the norm sign.
fn unit_inverse_mod_phi_p(u: &IntPoly, p: u64) -> Result<IntPoly> {
    let phi_p = crate::poly::cyclotomic(p);
    let mut prod = IntPoly::one();
    for k in 2..p {
        let conj = u.substitute_power_mod(k, p).divrem(&phi_p)?.1;
        prod = prod.mul_mod(&conj, p).divrem(&phi_p)?.1;
    }
    let t = u.mul_mod(&prod, p).divrem(&phi_p)?.1;
    if t == IntPoly::one() {
        Ok(prod)
    } else if t == -&IntPoly::one() {
        Ok(-&prod)
    } else {
        Err(Error::Precondition(format!("{} is not a unit mod Phi_{}", u, p)))
    }
}

/// Adjusts `w0` to the exact value `target` at 1 (its image mod p must
/// already match), producing `W`; then the caller CRT-combines.
fn adjust_value_at_one(w0: &IntPoly, p: u64, target: &BigInt) -> Result<IntPoly> {
    let phi_p = crate::poly::cyclotomic(p);
    let diff = &w0.eval_one() - target;
    let (t0, rem) = num_integer::Integer::div_rem(&diff, &BigInt::from(p));
    if !rem.is_zero() {
        return Err(Error::Internal(
            "unit image does not match the requested value at 1".into(),
        ));
    }
    Ok(&*w0 - &phi_p.scale(&t0))
}

fn odd_mask(f: &IntPoly, p: u64) -> Vec<bool> {
    let two = BigInt::from(2);
    let fr = f.reduce_xn_minus_one(p);
    (0..p as usize)
        .map(|i| !(fr.coeff(i) % &two).is_zero())
        .collect()
}

fn u4_shift_poly(p: u64, w0: &IntPoly, target: i64) -> Result<IntPoly> {
    // P = x^k (1+x+x^2+x^3) with k chosen so P = W mod (2, x^p - 1).
    let w = adjust_value_at_one(w0, p, &BigInt::from(target))?;
    let want = odd_mask(&w, p);
    for k in 0..p as usize {
        let cand = IntPoly::monomial(BigInt::one(), k).mul_mod(&IntPoly::geometric(4), p);
        if odd_mask(&cand, p) == want {
            return Ok(cand);
        }
    }
    Err(Error::Internal("no shift aligns the unit with 1+x+x^2+x^3 mod 2".into()))
}

fn finish_s2p_cert(
    p: u64,
    w0: &IntPoly,
    w_value: &BigInt,
    p_side: &IntPoly,
    value: BigInt,
) -> Result<WitnessCertificate> {
    let n = 2 * p;
    let w = adjust_value_at_one(w0, p, w_value)?;
    // CRT: F = W(-x) + (x^p + 1) t with t = (P - W(-x))/2 mod (x^p - 1).
    let w_negx = substitute_neg(&w);
    let diff = (&p_side.reduce_xn_minus_one(p) - &w_negx.reduce_xn_minus_one(p))
        .reduce_xn_minus_one(p);
    let mut t_coeffs = Vec::new();
    for c in diff.coeffs() {
        let (q, r) = num_integer::Integer::div_rem(c, &BigInt::from(2));
        if !r.is_zero() {
            return Err(Error::Internal("CRT parity mismatch in S_2p synthesis".into()));
        }
        t_coeffs.push(q);
    }
    let t = IntPoly::from_coeffs(t_coeffs);
    let xp_plus_1 = &IntPoly::monomial(BigInt::one(), p as usize) + &IntPoly::one();
    let f = (&w_negx + &(&xp_plus_1 * &t)).reduce_xn_minus_one(n);
    WitnessCertificate::checked(n, f, value)
}

fn substitute_neg(f: &IntPoly) -> IntPoly {
    IntPoly::from_coeffs(
        f.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
            .collect(),
    )
}

/// Decides membership in `S_15` by the valuation rule, with witness
/// synthesis routed per reason code.
pub fn decide_s15(v: &BigInt) -> Result<MembershipVerdict> {
    let n = 15;
    if v.is_zero() {
        return zero_verdict(n);
    }
    let t3 = valuation(v, 3);
    let t5 = valuation(v, 5);
    let verdict = |member: bool, reason: Reason, witness: Option<WitnessCertificate>| {
        Ok(MembershipVerdict {
            n,
            value: v.clone(),
            member,
            reason,
            witness,
        })
    };
    if t3 == 1 || t5 == 1 {
        return verdict(false, Reason::DivViolation, None);
    }
    if t3 >= 2 && t5 >= 2 {
        let k = v / BigInt::from(225);
        return verdict(true, Reason::FifteenSq, Some(kn_squared(&k, 15)?));
    }
    if t3 == 0 && t5 == 0 {
        return verdict(true, Reason::Coprime, Some(coprime_witness(v, 15)?));
    }
    if t3 >= 3 {
        // 3^t m with t >= 3: shift the 27-valued base 1 + x^3 + x^6.
        let t = v / BigInt::from(27);
        let k0 = rem_euclid_small(&t, 5) as i64;
        let k = [k0, k0 + 5, k0 + 10]
            .into_iter()
            .find(|k| k % 3 != 0)
            .expect("one of three residues is coprime to 3");
        let lambda = (&t - BigInt::from(k)) / BigInt::from(5);
        let base = IntPoly::from_i64(&[1, 0, 0, 1, 0, 0, 1]);
        let cert = shift_construction(&base, 15, k, &lambda)?;
        debug_assert_eq!(cert.claimed, *v);
        return verdict(true, Reason::ThreePow, Some(cert));
    }
    if t5 >= 3 {
        // 5^t m with t >= 3: shift the 125-valued Lemma-3.1 base.
        let t = v / BigInt::from(125);
        let k0 = rem_euclid_small(&t, 3) as i64;
        let k = [k0, k0 + 3, k0 + 6, k0 + 9, k0 + 12]
            .into_iter()
            .find(|k| k % 5 != 0)
            .expect("a shift coprime to 5 exists among five residues");
        let lambda = (&t - BigInt::from(k)) / BigInt::from(3);
        let base = witness_p3m(5, &BigInt::one())?;
        let cert = shift_construction(&base.poly, 15, k, &lambda)?;
        debug_assert_eq!(cert.claimed, *v);
        return verdict(true, Reason::FivePow, Some(cert));
    }
    // Exactly one of t3, t5 equals 2, the other 0.
    let (square, target) = if t3 == 2 {
        (BigInt::from(9), GoodFormTarget::Three)
    } else {
        debug_assert_eq!(t5, 2);
        (BigInt::from(25), GoodFormTarget::Five)
    };
    let k = v / &square; // sign rides along; |k| coprime to 15
    let factored = factorize(&k.abs())?;
    for (q, e) in &factored.factors {
        let qr = rem_euclid_small(q, 15);
        let (reason, base_cert) = match qr {
            7 | 11 | 13 => {
                let q64: u64 = q.try_into().map_err(|_| Error::FactorBound {
                    value: v.clone(),
                    cofactor: q.clone(),
                })?;
                let (c3, c5) = witness_3sq_5sq(q64)?;
                let cert = match target {
                    GoodFormTarget::Three => c3,
                    GoodFormTarget::Five => c5,
                };
                (Reason::ClassI, cert)
            }
            1 => {
                let q64: u64 = q.try_into().map_err(|_| Error::FactorBound {
                    value: v.clone(),
                    cofactor: q.clone(),
                })?;
                if classify_prime(q64)? != Tag::Good {
                    continue;
                }
                let xi = crate::numfield::find_norm_element(q64)?;
                let (_, form) = classify_element(&xi)?;
                (Reason::ClassI, witness_good_form(&form, target)?)
            }
            4 if *e >= 2 => {
                let q64: u64 = q.try_into().map_err(|_| Error::FactorBound {
                    value: v.clone(),
                    cofactor: q.clone(),
                })?;
                let xi = crate::numfield::find_norm_power_element(q64, 2)?;
                let (tag, form) = classify_element(&xi)?;
                if tag != Tag::Good {
                    return Err(Error::Internal(format!("p^2 for p = {} should be good", q)));
                }
                (Reason::ClassII, witness_good_form(&form, target)?)
            }
            2 | 8 if *e >= 4 => {
                let q64: u64 = q.try_into().map_err(|_| Error::FactorBound {
                    value: v.clone(),
                    cofactor: q.clone(),
                })?;
                let xi = crate::numfield::find_norm_power_element(q64, 4)?;
                let (tag, form) = classify_element(&xi)?;
                if tag != Tag::Good {
                    return Err(Error::Internal(format!("p^4 for p = {} should be good", q)));
                }
                (Reason::ClassIII, witness_good_form(&form, target)?)
            }
            _ => continue,
        };
        // base realizes square * q^e0; the rest is coprime to 15.
        let rest = v / &base_cert.claimed;
        let cert = if rest.is_one() {
            base_cert
        } else {
            compose_witness(&[base_cert, coprime_witness(&rest, 15)?], 15)?
        };
        debug_assert_eq!(cert.claimed, *v);
        return verdict(true, reason, Some(cert));
    }
    verdict(false, Reason::NoQualifyingPrime, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small() {
        let primes: Vec<u64> = (2..60).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime_u64(4951));
        assert!(!is_prime_u64(4951 * 3));
        assert!(is_prime_u64(18_446_744_073_709_551_557)); // largest u64 prime
    }

    #[test]
    fn factorization_round_trips() {
        for v in [-360i64, 1, -1, 225, 549, 4951, 999_983 * 2] {
            let vb = BigInt::from(v);
            let f = factorize(&vb).unwrap();
            assert_eq!(f.reconstruct(), vb);
        }
        assert!(factorize(&BigInt::zero()).is_err());
    }

    #[test]
    fn divisibility_example() {
        assert!(!divisibility_ok(15, &BigInt::from(45)));
        assert!(divisibility_ok(15, &BigInt::from(7)));
        assert!(divisibility_ok(15, &BigInt::from(225)));
        assert!(divisibility_ok(15, &BigInt::zero()));
        assert!(!divisibility_ok(15, &BigInt::from(3)));
        assert!(!divisibility_ok(15, &BigInt::from(-5)));
    }

    #[test]
    fn sp_examples() {
        let v = decide_sp(&BigInt::from(5), 5, false).unwrap();
        assert!(!v.member);
        assert_eq!(v.reason, Reason::DivViolation);
        let v = decide_sp(&BigInt::from(50), 5, false).unwrap();
        assert!(v.member);
        assert_eq!(v.witness.unwrap().claimed, BigInt::from(50));
        // 2 * 25 * 9 at n = 10: the factor 2 has exponent 1, not allowed.
        let v = decide_sp(&BigInt::from(2 * 25 * 9), 5, true).unwrap();
        assert!(!v.member);
        // zero is a member
        let v = decide_sp(&BigInt::zero(), 7, false).unwrap();
        assert!(v.member);
        assert_eq!(v.reason, Reason::Zero);
    }

    #[test]
    fn s2p_witness_synthesis() {
        for p in [3u64, 5, 7, 11] {
            let four = s2p_four_cert(p).unwrap();
            assert_eq!(four.claimed, BigInt::from(4));
            let eight = s2p_eight_cert(p).unwrap();
            assert_eq!(eight.claimed, BigInt::from(8));
            let psq = s2p_odd_ppow_cert(p, &BigInt::one()).unwrap();
            assert_eq!(psq.claimed, BigInt::from(p * p));
            let podd = s2p_odd_ppow_cert(p, &BigInt::from(3 * p)).unwrap();
            assert_eq!(podd.claimed, BigInt::from(3 * p * p * p));
        }
    }

    #[test]
    fn s2p_verdict_grid() {
        // Every decided member must carry a verified witness; spot-check a
        // grid of exponent patterns at p = 5.
        for a in 0..4u32 {
            for b in 0..4u32 {
                for m in [1i64, -1, 3, -9, 21] {
                    let v = BigInt::from(2).pow(a) * BigInt::from(5).pow(b) * BigInt::from(m);
                    let verdict = decide_sp(&v, 5, true).unwrap();
                    let want = (a == 0 || a >= 2) && (b == 0 || b >= 2);
                    assert_eq!(verdict.member, want, "v = {}", v);
                    if want {
                        let w = verdict.witness.expect("member carries witness");
                        assert_eq!(w.claimed, v);
                    }
                }
            }
        }
    }

    #[test]
    fn s15_examples() {
        let v = decide_s15(&BigInt::from(7)).unwrap();
        assert!(v.member);
        assert_eq!(v.reason, Reason::Coprime);
        let v = decide_s15(&BigInt::from(9)).unwrap();
        assert!(!v.member);
        assert_eq!(v.reason, Reason::NoQualifyingPrime);
        let v = decide_s15(&BigInt::from(279)).unwrap();
        assert!(v.member);
        assert_eq!(v.reason, Reason::ClassI);
        let v = decide_s15(&BigInt::from(549)).unwrap();
        assert!(!v.member);
        let v = decide_s15(&BigInt::from(144)).unwrap();
        assert!(v.member);
        assert_eq!(v.reason, Reason::ClassIII);
        let v = decide_s15(&BigInt::from(36)).unwrap();
        assert!(!v.member);
        let v = decide_s15(&BigInt::from(135)).unwrap();
        assert!(!v.member);
        assert_eq!(v.reason, Reason::DivViolation);
        let v = decide_s15(&BigInt::from(225)).unwrap();
        assert!(v.member);
        assert_eq!(v.reason, Reason::FifteenSq);
        let v = decide_s15(&BigInt::from(63)).unwrap();
        assert!(v.member);
        let v = decide_s15(&BigInt::zero()).unwrap();
        assert!(v.member);
    }

    #[test]
    fn s15_power_routes() {
        for v in [27i64, -27, 81, 27 * 7, -81 * 2, 125, 250, -125 * 7, 625] {
            let verdict = decide_s15(&BigInt::from(v)).unwrap();
            assert!(verdict.member, "v = {}", v);
            assert_eq!(verdict.witness.unwrap().claimed, BigInt::from(v));
        }
    }

    #[test]
    fn s15_sign_symmetry() {
        for v in [7i64, 9, 279, 549, 144, 225, 27, 99] {
            let a = decide_s15(&BigInt::from(v)).unwrap();
            let b = decide_s15(&BigInt::from(-v)).unwrap();
            assert_eq!(a.member, b.member, "v = {}", v);
        }
    }
}
