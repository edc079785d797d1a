//! Extension degrees over which `x^(q-2)` stays a permutation.
//!
//! `x^(q-2)` permutes F_{q^k} iff `gcd(q-2, q^k-1) = 1`. For every odd
//! prime l dividing q-2, `q = 2 (mod l)`, so l divides `q^k-1` exactly when
//! the multiplicative order of 2 modulo l divides k. The prime 2 never
//! matters: it divides q-2 only for even q, and then `q^k-1` is odd.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{prime_power, Field, FieldElement};
use crate::words::{GenToken, GenWord};

/// Largest extension built explicitly by [`brute_check`].
pub const BRUTE_FORCE_LIMIT: u64 = 1 << 16;

/// Distinct prime divisors by trial division, ascending; empty for 1.
pub fn prime_factors(m: u64) -> Result<Vec<u64>> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "0 has no prime factorization".into(),
        ));
    }
    Ok(crate::field::distinct_prime_factors(m))
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn pow_mod(base: u64, mut e: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut b = base as u128 % m128;
    let mut acc = 1 % m128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        e >>= 1;
    }
    acc as u64
}

/// Least `e >= 1` with `base^e = 1 (mod m)`.
pub fn multiplicative_order(base: u64, m: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "modulus {m} must be at least 2"
        )));
    }
    if gcd(base % m, m) != 1 {
        return Err(Error::NotCoprime { base, modulus: m });
    }
    let b = base % m;
    let mut acc = b;
    let mut e = 1;
    while acc != 1 {
        acc = (acc as u128 * b as u128 % m as u128) as u64;
        e += 1;
    }
    Ok(e)
}

fn check_order(q: u64) -> Result<()> {
    if q <= 2 {
        return Err(Error::InvalidArgument(format!(
            "q = {q}: x^(q-2) is only meaningful for q > 2"
        )));
    }
    prime_power(q).map(|_| ()).ok_or(Error::NotPrimePower(q))
}

/// The orders `r_l` of 2 modulo each odd prime `l | q-2`, keyed by `l`.
fn forbidden_orders(q: u64) -> BTreeMap<u64, u64> {
    crate::field::distinct_prime_factors(q - 2)
        .into_iter()
        .filter(|&l| l != 2)
        .map(|l| {
            (
                l,
                multiplicative_order(2, l).expect("2 is a unit modulo an odd prime"),
            )
        })
        .collect()
}

/// Whether `x^(q-2)` permutes F_{q^k}: true iff no `r_l` divides `k`.
pub fn permits_degree(q: u64, k: u64) -> Result<bool> {
    check_order(q)?;
    if k == 0 {
        return Err(Error::InvalidArgument(
            "extension degree must be at least 1".into(),
        ));
    }
    Ok(forbidden_orders(q).values().all(|&r| !k.is_multiple_of(r)))
}

/// Same question answered as `gcd(q-2, (2^k - 1) mod (q-2)) = 1`, using
/// `q^k - 1 = 2^k - 1 (mod q-2)`.
pub fn permits_degree_gcd(q: u64, k: u64) -> Result<bool> {
    check_order(q)?;
    if k == 0 {
        return Err(Error::InvalidArgument(
            "extension degree must be at least 1".into(),
        ));
    }
    let m = q - 2;
    if m == 1 {
        return Ok(true);
    }
    let r = (pow_mod(2, k, m) + m - 1) % m;
    Ok(gcd(m, r) == 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalReport {
    pub q: u64,
    /// Odd primes dividing q-2.
    pub factors: Vec<u64>,
    /// Multiplicative order of 2 modulo each factor.
    pub orders: BTreeMap<u64, u64>,
    /// Distinct orders; a degree divisible by one of them is not permitted.
    pub forbidden: Vec<u64>,
    /// Permitted degrees in `1..=max_k`.
    pub permitted: Vec<u64>,
    /// Set when q is even, so 2 divides q-2 but was left out.
    pub excluded_even_prime: bool,
}

pub fn report(q: u64, max_k: u64) -> Result<ExceptionalReport> {
    check_order(q)?;
    if max_k == 0 {
        return Err(Error::InvalidArgument("max_k must be at least 1".into()));
    }
    let orders = forbidden_orders(q);
    let mut forbidden: Vec<u64> = orders.values().copied().collect();
    forbidden.sort_unstable();
    forbidden.dedup();
    let permitted = (1..=max_k)
        .filter(|k| forbidden.iter().all(|r| k % r != 0))
        .collect();
    Ok(ExceptionalReport {
        q,
        factors: orders.keys().copied().collect(),
        orders,
        forbidden,
        permitted,
        excluded_even_prime: q.is_multiple_of(2),
    })
}

fn extension(q: u64, k: u32) -> Result<(Field, u64)> {
    check_order(q)?;
    if k == 0 {
        return Err(Error::InvalidArgument(
            "extension degree must be at least 1".into(),
        ));
    }
    let big_order = q.checked_pow(k).filter(|&o| o <= BRUTE_FORCE_LIMIT);
    if big_order.is_none() {
        return Err(Error::ExtensionTooLarge { q, k });
    }
    let (p, n) = prime_power(q).expect("checked above");
    Ok((Field::gf(p, n * k)?, q))
}

/// Builds F_{q^k} and checks directly whether `c -> c^(q-2)` is a bijection.
pub fn brute_check(q: u64, k: u32) -> Result<bool> {
    let (big, q) = extension(q, k)?;
    let mut seen = vec![false; big.order() as usize];
    Ok(big
        .elements()
        .all(|c| !std::mem::replace(&mut seen[big.pow(c, q - 2).index() as usize], true)))
}

/// Image of F_q inside a larger field of the same characteristic, as a
/// table indexed by canonical index.
fn embedding(small: &Field, big: &Field) -> Result<Vec<FieldElement>> {
    if small.characteristic() != big.characteristic()
        || !big.degree().is_multiple_of(small.degree())
    {
        return Err(Error::InvalidArgument(format!(
            "{} is not a subfield of {}",
            small.spec(),
            big.spec()
        )));
    }
    let modulus = small.spec().modulus();
    let eval_modulus = |r: FieldElement| {
        modulus.iter().rev().fold(big.zero(), |acc, &c| {
            big.add(big.mul(acc, r), big.from_int(c as u64))
        })
    };
    let root = if small.degree() == 1 {
        big.zero()
    } else {
        big.elements()
            .find(|&r| eval_modulus(r).is_zero())
            .expect("an irreducible of degree n splits in every extension of degree divisible by n")
    };
    Ok(small
        .elements()
        .map(|x| {
            small.coeffs(x).iter().rev().fold(big.zero(), |acc, &c| {
                big.add(big.mul(acc, root), big.from_int(c as u64))
            })
        })
        .collect())
}

/// Re-reads a word over F_q as a map on F_{q^k}: affine coefficients are
/// embedded and every inversion token stays the power map `x^(q-2)` for
/// the base q. Returns whether that map is a bijection of F_{q^k}.
pub fn word_permutes_extension(word: &GenWord, k: u32) -> Result<bool> {
    let small = word.field();
    let (big, q) = extension(small.order() as u64, k)?;
    let embed = embedding(small, &big)?;
    let tokens: Vec<GenToken> = word
        .tokens()
        .iter()
        .map(|t| match *t {
            GenToken::Linear { a, b } => {
                GenToken::linear(embed[a.index() as usize], embed[b.index() as usize])
            }
            GenToken::Inv => GenToken::Inv,
        })
        .collect();
    let mut seen = vec![false; big.order() as usize];
    for x in big.elements() {
        let y = tokens.iter().fold(x, |acc, t| match *t {
            GenToken::Linear { a, b } => big.add(big.mul(a, acc), b),
            GenToken::Inv => big.pow(acc, q - 2),
        });
        if std::mem::replace(&mut seen[y.index() as usize], true) {
            return Ok(false);
        }
    }
    Ok(true)
}
