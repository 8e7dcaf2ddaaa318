//! Explicit witness-polynomial families: every constructor computes the
//! claimed determinant value and verifies it against the full norm profile
//! before handing the certificate out.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::goodbad::{BType, CanonicalForm, FormKind};
use crate::norms::{norm_profile, NormProfile};
use crate::poly::{cyclotomic, IntPoly};

/// A polynomial together with its verified norm profile: proof that the
/// claimed value is attained at modulus `n`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WitnessCertificate {
    pub n: u64,
    pub poly: IntPoly,
    pub claimed: BigInt,
    pub profile: NormProfile,
}

impl WitnessCertificate {
    /// Builds and verifies; a mismatch is an internal error, never a result.
    pub fn checked(n: u64, poly: IntPoly, claimed: BigInt) -> Result<Self> {
        let profile = norm_profile(&poly, n);
        if profile.total != claimed {
            return Err(Error::Internal(format!(
                "witness check failed at n = {}: claimed {}, profile total {} (poly {})",
                n, claimed, profile.total, poly
            )));
        }
        Ok(WitnessCertificate {
            n,
            poly,
            claimed,
            profile,
        })
    }
}

/// `1 + x + ... + x^{k-1}` in `Z[x]/(x^n - 1)`, defined for negative `k`
/// through `(x^k - 1)/(x - 1) = -x^k (x^{-k} - 1)/(x - 1)` with exponents
/// folded mod `n`.
fn geometric_mod(k: i64, n: u64) -> IntPoly {
    if k >= 0 {
        IntPoly::geometric(k as u64).reduce_xn_minus_one(n)
    } else {
        let base = IntPoly::geometric((-k) as u64);
        let shift = ((k % n as i64) + n as i64) as usize % n as usize;
        -&IntPoly::monomial(BigInt::one(), shift).mul_mod(&base, n)
    }
}

fn monomial_mod(k: i64, n: u64) -> IntPoly {
    let e = ((k % n as i64) + n as i64) as usize % n as usize;
    IntPoly::monomial(BigInt::one(), e)
}

/// Certificate for `M_n(-x) = -1`, the sign workhorse.
pub fn minus_one(n: u64) -> Result<WitnessCertificate> {
    WitnessCertificate::checked(n, IntPoly::from_i64(&[0, -1]), BigInt::from(-1))
}

/// Product of `Phi_q^a` over the factorization of `m` (coprime to `n`),
/// with `M_n = |m|`; composed with `-x` when `m < 0`.
pub fn coprime_witness(m: &BigInt, n: u64) -> Result<WitnessCertificate> {
    if m.is_zero() {
        return Err(Error::Precondition("m must be nonzero".into()));
    }
    let mabs = m.abs();
    if num_integer::gcd(mabs.clone(), BigInt::from(n)) != BigInt::one() {
        return Err(Error::Precondition(format!("gcd({}, {}) != 1", m, n)));
    }
    let factored = crate::member::factorize(&mabs)?;
    let mut f = IntPoly::one();
    for (q, a) in &factored.factors {
        let phi_q = cyclotomic(q.try_into().map_err(|_| Error::Budget(
            "prime factor too large for a cyclotomic witness".into(),
        ))?);
        for _ in 0..*a {
            f = f.mul_mod(&phi_q, n);
        }
    }
    let cert = WitnessCertificate::checked(n, f, mabs)?;
    if m.is_negative() {
        compose_witness(&[cert, minus_one(n)?], n)
    } else {
        Ok(cert)
    }
}

/// Eq.-(3) style witness: `M_n(1 - x + k (x^n-1)/(x-1)) = k n^2`.
pub fn kn_squared(k: &BigInt, n: u64) -> Result<WitnessCertificate> {
    let un = IntPoly::geometric(n);
    let f = &IntPoly::from_i64(&[1, -1]) + &un.scale(k);
    WitnessCertificate::checked(n, f, k * BigInt::from(n) * BigInt::from(n))
}

/// Lemma 3.1: `M_{3p}(F) = p^3 m` from the two-block construction, with
/// `k` in `{1, 2}` chosen by `2mp = k mod 3`. Negative `m` composes with
/// the `-x` certificate.
pub fn witness_p3m(p: u64, m: &BigInt) -> Result<WitnessCertificate> {
    if p < 5 || p == 3 || !crate::member::is_prime_u64(p) || p % 2 == 0 {
        return Err(Error::Precondition(format!("p = {} must be an odd prime != 3", p)));
    }
    if (m % 3u8).is_zero() {
        return Err(Error::Precondition("need gcd(m, 3) = 1".into()));
    }
    if m.is_negative() {
        let pos = witness_p3m(p, &-m)?;
        return compose_witness(&[pos, minus_one(3 * p)?], 3 * p);
    }
    let n = 3 * p;
    let m_i: i64 = m.try_into().map_err(|_| Error::Budget("m too large".into()))?;
    let k: i64 = {
        let r = (2 * (m_i % 3) * (p as i64 % 3)).rem_euclid(3);
        debug_assert!(r == 1 || r == 2);
        r
    };
    let mp = m_i * p as i64;
    // (x^{mp+2k}-1)/(x-1) - x^{2mp-k} (x^k-1)/(x-1) (x^{3k}+1)
    let lead = geometric_mod(mp + 2 * k, n);
    let tail = {
        let a = monomial_mod(2 * mp - k, n);
        let b = geometric_mod(k, n);
        let c = &monomial_mod(3 * k, n) + &IntPoly::one();
        a.mul_mod(&b, n).mul_mod(&c, n)
    };
    let f = (&lead - &tail).reduce_xn_minus_one(n);
    WitnessCertificate::checked(n, f, BigInt::from(p).pow(3) * m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThreePowerVariant {
    /// `M_{3p}(F_3) = 3^4 m`
    F3,
    /// `M_{3p}(F_4) = 3^3 m`
    F4,
}

/// Lemma 3.2: the `3^4 m` and `3^3 m` families at `n = 3p`.
pub fn witness_3power(p: u64, m: &BigInt, variant: ThreePowerVariant) -> Result<WitnessCertificate> {
    if p < 5 || !crate::member::is_prime_u64(p) || p % 2 == 0 {
        return Err(Error::Precondition(format!("p = {} must be an odd prime != 3", p)));
    }
    if (m % BigInt::from(p)).is_zero() || m.is_zero() {
        return Err(Error::Precondition("need gcd(m, p) = 1 and m != 0".into()));
    }
    let n = 3 * p;
    match variant {
        ThreePowerVariant::F3 => {
            let m_i: i64 = m.try_into().map_err(|_| Error::Budget("m too large".into()))?;
            // (x^{3p-9}-1)/(x-1) - x^{3p-6} (1+x^3+x^6) (x^{p-3-3m}-1)/(x-1);
            // the second factor picks up a power of x when 3m > p-3, which
            // geometric_mod handles by folding exponents.
            let lead = geometric_mod(n as i64 - 9, n);
            let tail = monomial_mod(n as i64 - 6, n)
                .mul_mod(&IntPoly::from_i64(&[1, 0, 0, 1, 0, 0, 1]), n)
                .mul_mod(&geometric_mod(p as i64 - 3 - 3 * m_i, n), n);
            let f = (&lead - &tail).reduce_xn_minus_one(n);
            WitnessCertificate::checked(n, f, BigInt::from(81) * m)
        }
        ThreePowerVariant::F4 => {
            if num_integer::gcd(m.abs(), BigInt::from(n)) != BigInt::one() {
                return Err(Error::Precondition("F4 needs gcd(m, 3p) = 1".into()));
            }
            let base = IntPoly::from_i64(&[1, 0, 0, 1, 0, 0, 1]);
            let mpart = coprime_witness(m, n)?;
            let f = base.mul_mod(&mpart.poly, n);
            WitnessCertificate::checked(n, f, BigInt::from(27) * m)
        }
    }
}

/// The multiplier construction
/// `G = (x^k-1)/(x-1) F + lambda (x^n-1)/(x-1)`, which scales `M_n(F)` by
/// `(k F(1) + lambda n)/F(1)`.
pub fn shift_construction(
    f: &IntPoly,
    n: u64,
    k: i64,
    lambda: &BigInt,
) -> Result<WitnessCertificate> {
    if num_integer::gcd(k.rem_euclid(n as i64) as u64, n) != 1 {
        return Err(Error::Precondition(format!("gcd(k = {}, n = {}) != 1", k, n)));
    }
    let f1 = f.eval_one();
    if f1.is_zero() {
        return Err(Error::Precondition("F(1) = 0".into()));
    }
    let m_f = norm_profile(f, n).total;
    let g = &geometric_mod(k, n).mul_mod(f, n) + &IntPoly::geometric(n).scale(lambda);
    let g = g.reduce_xn_minus_one(n);
    let num = (BigInt::from(k) * &f1 + lambda * BigInt::from(n)) * &m_f;
    let (claimed, rem) = num_integer::Integer::div_rem(&num, &f1);
    if !rem.is_zero() {
        return Err(Error::Internal("shift multiplier is not integral".into()));
    }
    WitnessCertificate::checked(n, g, claimed)
}

/// The registered display polynomials, loaded from the embedded registry.
/// One record per line: name, modulus, polynomial text, claimed value.
pub fn fixed_witness(name: &str) -> Result<WitnessCertificate> {
    for line in registry_lines() {
        let (rec_name, n, poly_text, value_text) = line?;
        if rec_name == name {
            let poly = crate::poly::parse(poly_text)?;
            let claimed: BigInt = value_text
                .parse()
                .map_err(|_| Error::Internal(format!("bad registry value `{}`", value_text)))?;
            return WitnessCertificate::checked(n, poly, claimed);
        }
    }
    Err(Error::UnknownWitness(name.to_string()))
}

/// All registered witness names, in registry order.
pub fn fixed_witness_names() -> Vec<String> {
    registry_lines()
        .filter_map(|l| l.ok().map(|(name, _, _, _)| name.to_string()))
        .collect()
}

fn registry_lines() -> impl Iterator<Item = Result<(&'static str, u64, &'static str, &'static str)>>
{
    const REGISTRY: &str = include_str!("witness_registry.tsv");
    REGISTRY.lines().filter_map(|line| {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            return None;
        }
        let mut parts = line.split('\t');
        let name = parts.next()?;
        let n = parts.next()?.parse().ok()?;
        let poly = parts.next()?;
        let value = parts.next()?;
        Some(Ok((name, n, poly, value)))
    })
}

/// Product certificate: `S_n` is closed under multiplication.
pub fn compose_witness(parts: &[WitnessCertificate], n: u64) -> Result<WitnessCertificate> {
    let mut poly = IntPoly::one();
    let mut claimed = BigInt::one();
    for part in parts {
        if part.n != n {
            return Err(Error::ModulusMismatch(part.n, n));
        }
        poly = poly.mul_mod(&part.poly, n);
        claimed *= &part.claimed;
    }
    WitnessCertificate::checked(n, poly, claimed)
}

/// The two certificates `9p` and `25p` for `p = 7, 11, 13 mod 15`:
/// skeleton polynomials carrying the Eisenstein or norm-5 representation.
pub fn witness_3sq_5sq(p: u64) -> Result<(WitnessCertificate, WitnessCertificate)> {
    match p % 15 {
        7 | 13 => witness_3sq_5sq_eisenstein(p),
        11 => witness_3sq_5sq_norm5(p),
        r => Err(Error::WrongResidue(format!(
            "p = {} has residue {} mod 15; need 7, 11 or 13",
            p, r
        ))),
    }
}

fn witness_3sq_5sq_eisenstein(p: u64) -> Result<(WitnessCertificate, WitnessCertificate)> {
    let rep = crate::numfield::canonical_rep_mod15(p)?;
    let second = rep
        .second
        .as_ref()
        .ok_or_else(|| Error::Internal("second form missing".into()))?;
    let phi5 = cyclotomic(5);
    let phi15 = cyclotomic(15);
    let one_minus_x = IntPoly::from_i64(&[1, -1]);
    let weight = &phi5 * &phi15;
    let (skel3, skel5) = match p % 15 {
        7 => (
            fixed_witness_poly("15_9p_p7")?,
            fixed_witness_poly("15_25p_p7")?,
        ),
        13 => (
            fixed_witness_poly("15_9p_p13")?,
            fixed_witness_poly("15_25p_p13")?,
        ),
        _ => unreachable!(),
    };
    // F = skeleton + (1-x) Phi_5 Phi_15 (A x + B)
    let ab = IntPoly::from_coeffs(vec![rep.big_b.clone(), rep.big_a.clone()]);
    let f = &skel3 + &(&one_minus_x * &weight).mul_mod(&ab, 15);
    let c3 = WitnessCertificate::checked(15, f.reduce_xn_minus_one(15), BigInt::from(9 * p))?;
    // G = skeleton + (x-1) Phi_5 Phi_15 (C x + D)
    let cd = IntPoly::from_coeffs(vec![second.big_d.clone(), second.big_c.clone()]);
    let g = &skel5 + &(-&(&one_minus_x * &weight)).mul_mod(&cd, 15);
    let c5 = WitnessCertificate::checked(15, g.reduce_xn_minus_one(15), BigInt::from(25 * p))?;
    Ok((c3, c5))
}

fn witness_3sq_5sq_norm5(p: u64) -> Result<(WitnessCertificate, WitnessCertificate)> {
    let rep = crate::numfield::rep_norm5(p)?;
    let block = IntPoly::from_i64(&[1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1]); // 1 + x^5 + x^10
    let xm1 = IntPoly::from_i64(&[-1, 1]);
    // 1 + x^5 + x^10 +- (x-1) + (1 + x^5 + x^10)(x-1) g
    let f = &(&block + &xm1.scale(&BigInt::from(rep.sign)))
        + &block.mul_mod(&xm1, 15).mul_mod(&rep.g, 15);
    let c3 = WitnessCertificate::checked(15, f.reduce_xn_minus_one(15), BigInt::from(9 * p))?;
    // x^13 (1+x+x^2+x^3) - x^7 + x^10 + x^11 + (1+x^5+x^10)(1-x) g2
    let base = fixed_witness_poly("15_25p_block")?;
    let g = &base + &block.mul_mod(&(-&xm1), 15).mul_mod(&rep.g2, 15);
    let c5 = WitnessCertificate::checked(15, g.reduce_xn_minus_one(15), BigInt::from(25 * p))?;
    Ok((c3, c5))
}

fn fixed_witness_poly(name: &str) -> Result<IntPoly> {
    for line in registry_lines() {
        let (rec_name, _, poly_text, _) = line?;
        if rec_name == name {
            return crate::poly::parse(poly_text);
        }
    }
    Err(Error::UnknownWitness(name.to_string()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GoodFormTarget {
    /// `M_15 = 9k`
    Three,
    /// `M_15 = 25k`
    Five,
}

/// Realizes `9k` (first form) or `25k` (second form) from a good canonical
/// form with `|N_15| = k`; the sign is normalized positive by composing
/// with `-x`.
pub fn witness_good_form(
    form: &CanonicalForm,
    which: GoodFormTarget,
) -> Result<WitnessCertificate> {
    if form.b_type != BType::One {
        return Err(Error::Precondition(
            "witness_good_form needs a good form (B = 1)".into(),
        ));
    }
    let wanted = match which {
        GoodFormTarget::Three => FormKind::First,
        GoodFormTarget::Five => FormKind::Second,
    };
    let form = if form.form == wanted {
        form.clone()
    } else {
        crate::goodbad::convert_form(form)?
    };
    let f = form.to_poly().reduce_xn_minus_one(15);
    let prof = norm_profile(&f, 15);
    let k = prof.norms[&15].abs();
    let scale = match which {
        GoodFormTarget::Three => BigInt::from(9),
        GoodFormTarget::Five => BigInt::from(25),
    };
    let target = &scale * &k;
    if prof.total == target {
        WitnessCertificate::checked(15, f, target)
    } else if prof.total == -&target {
        let base = WitnessCertificate::checked(15, f, -&target)?;
        compose_witness(&[base, minus_one(15)?], 15)
    } else {
        Err(Error::Internal(format!(
            "good form yields {} instead of +-{}",
            prof.total, target
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::goodbad::classify_element;

    #[test]
    fn fixed_witnesses_all_verify() {
        for name in fixed_witness_names() {
            let cert = fixed_witness(&name).unwrap();
            assert_eq!(cert.profile.total, cert.claimed, "witness {}", name);
        }
        assert!(fixed_witness("no_such_witness").is_err());
    }

    #[test]
    fn fixed_witness_values() {
        assert_eq!(fixed_witness("35_7cubed").unwrap().claimed, BigInt::from(343));
        assert_eq!(fixed_witness("55_11cubed").unwrap().claimed, BigInt::from(1331));
        assert_eq!(fixed_witness("55_5cubed").unwrap().claimed, BigInt::from(125));
        assert_eq!(fixed_witness("35_5cubed").unwrap().claimed, BigInt::from(125));
        assert_eq!(fixed_witness("15_minus_one").unwrap().claimed, BigInt::from(-1));
        assert_eq!(fixed_witness("15_225").unwrap().claimed, BigInt::from(225));
    }

    #[test]
    fn p3m_examples() {
        assert_eq!(witness_p3m(5, &BigInt::one()).unwrap().claimed, BigInt::from(125));
        assert_eq!(
            witness_p3m(5, &BigInt::from(-1)).unwrap().claimed,
            BigInt::from(-125)
        );
        assert_eq!(
            witness_p3m(7, &BigInt::from(2)).unwrap().claimed,
            BigInt::from(686)
        );
        assert!(witness_p3m(3, &BigInt::one()).is_err());
        assert!(witness_p3m(5, &BigInt::from(3)).is_err());
    }

    #[test]
    fn p3m_profile_shape() {
        // N_1 = mp, |N_3| = 1, N_p = p^2, |N_3p| = 1.
        let cert = witness_p3m(7, &BigInt::from(4)).unwrap();
        assert_eq!(cert.profile.norms[&1], BigInt::from(28));
        assert_eq!(cert.profile.norms[&3].abs(), BigInt::one());
        assert_eq!(cert.profile.norms[&7], BigInt::from(49));
        assert_eq!(cert.profile.norms[&21].abs(), BigInt::one());
    }

    #[test]
    fn threepower_examples() {
        let c = witness_3power(5, &BigInt::one(), ThreePowerVariant::F3).unwrap();
        assert_eq!(c.claimed, BigInt::from(81));
        let c = witness_3power(5, &BigInt::from(2), ThreePowerVariant::F4).unwrap();
        assert_eq!(c.claimed, BigInt::from(54));
        // Shift branch: 3m > p - 3.
        let c = witness_3power(5, &BigInt::from(7), ThreePowerVariant::F3).unwrap();
        assert_eq!(c.claimed, BigInt::from(567));
        // F3 profile: N_1 = 9m, N_3 = 9, |N_p| = |N_3p| = 1.
        let c = witness_3power(7, &BigInt::from(2), ThreePowerVariant::F3).unwrap();
        assert_eq!(c.profile.norms[&1], BigInt::from(18));
        assert_eq!(c.profile.norms[&3], BigInt::from(9));
        assert_eq!(c.profile.norms[&7].abs(), BigInt::one());
        assert_eq!(c.profile.norms[&21].abs(), BigInt::one());
    }

    #[test]
    fn shift_examples() {
        // Identity shift: k = 1, lambda = 0.
        let f = crate::poly::parse("1 + x^3 + x^5 + x^7 + x^10").unwrap();
        let cert = shift_construction(&f, 35, 1, &BigInt::zero()).unwrap();
        assert_eq!(cert.claimed, BigInt::from(125));
        // k = m p^t - q with lambda = 1 multiplies 343 into m p^{t+3}:
        // m = 2, t = 1 gives k = 9 and M = 2 * 7^4.
        let f = fixed_witness("35_7cubed").unwrap().poly;
        let cert = shift_construction(&f, 35, 9, &BigInt::one()).unwrap();
        assert_eq!(cert.claimed, BigInt::from(2 * 2401));
        // F = 1 with F(1) = 1: k = 1, lambda = 1 multiplies by 16.
        let cert = shift_construction(&IntPoly::one(), 15, 1, &BigInt::one()).unwrap();
        assert_eq!(cert.claimed, BigInt::from(16));
        // gcd violation
        assert!(shift_construction(&IntPoly::one(), 15, 3, &BigInt::one()).is_err());
        assert!(shift_construction(&IntPoly::from_i64(&[-1, 1]), 15, 1, &BigInt::one()).is_err());
    }

    #[test]
    fn compose_examples() {
        let a = witness_p3m(5, &BigInt::one()).unwrap();
        let m = minus_one(15).unwrap();
        let c = compose_witness(&[a.clone(), m], 15).unwrap();
        assert_eq!(c.claimed, BigInt::from(-125));
        // unit absorption: x+1 has M_15 = Phi_15(-1) * ... = 2? No: the
        // coprime witness for 1 is the empty product.
        let one = coprime_witness(&BigInt::one(), 15).unwrap();
        let c = compose_witness(&[a, one], 15).unwrap();
        assert_eq!(c.claimed, BigInt::from(125));
        let b = coprime_witness(&BigInt::from(7), 15).unwrap();
        assert_eq!(b.claimed, BigInt::from(7));
        // modulus mismatch
        let w35 = fixed_witness("35_5cubed").unwrap();
        assert!(compose_witness(&[w35, b], 35).is_err());
    }

    #[test]
    fn theorem61_witnesses() {
        let (c3, c5) = witness_3sq_5sq(7).unwrap();
        assert_eq!(c3.claimed, BigInt::from(63));
        assert_eq!(c5.claimed, BigInt::from(175));
        let (c3, c5) = witness_3sq_5sq(13).unwrap();
        assert_eq!(c3.claimed, BigInt::from(117));
        assert_eq!(c5.claimed, BigInt::from(325));
        let (c3, c5) = witness_3sq_5sq(11).unwrap();
        assert_eq!(c3.claimed, BigInt::from(99));
        assert_eq!(c5.claimed, BigInt::from(275));
        assert!(witness_3sq_5sq(31).is_err());
    }

    #[test]
    fn good_form_witnesses() {
        let xi = crate::numfield::find_norm_element(31).unwrap();
        let (tag, form) = classify_element(&xi).unwrap();
        assert_eq!(tag, crate::goodbad::Tag::Good);
        let c = witness_good_form(&form, GoodFormTarget::Three).unwrap();
        assert_eq!(c.claimed, BigInt::from(279));
        let c = witness_good_form(&form, GoodFormTarget::Five).unwrap();
        assert_eq!(c.claimed, BigInt::from(775));
        // A bad form is rejected.
        let xi = crate::numfield::find_norm_element(61).unwrap();
        let (tag, form) = classify_element(&xi).unwrap();
        assert_eq!(tag, crate::goodbad::Tag::Bad);
        assert!(witness_good_form(&form, GoodFormTarget::Three).is_err());
    }

    #[test]
    fn good_form_from_power() {
        // 2^4 = 16 is a good 15-norm; realize 9 * 16 = 144.
        let xi = crate::numfield::find_norm_power_element(2, 4).unwrap();
        let (tag, form) = classify_element(&xi).unwrap();
        assert_eq!(tag, crate::goodbad::Tag::Good);
        let c = witness_good_form(&form, GoodFormTarget::Three).unwrap();
        assert_eq!(c.claimed, BigInt::from(144));
    }
}
