//! Exact arithmetic in GF(p^n).
//!
//! Elements are identified by their canonical index: the coefficient vector
//! `c_0 + c_1 x + ... + c_{n-1} x^{n-1}` (constant first) read as the base-p
//! integer `sum c_i p^i`. Index 0 is the additive identity and index 1 the
//! multiplicative identity.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 20;

/// Fields up to this order get discrete log tables at construction.
const LOG_TABLE_LIMIT: u32 = 1 << 16;

pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    if m.is_multiple_of(2) {
        return m == 2;
    }
    let mut d = 3;
    while d * d <= m {
        if m.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Splits `q` as `p^n` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut n = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        n += 1;
    }
    (rest == 1).then_some((p, n))
}

/// Dense polynomials over the prime field F_p, constant term first.
pub(crate) mod fp {
    pub fn trim(f: &mut Vec<u32>) {
        while f.last() == Some(&0) {
            f.pop();
        }
    }

    /// Remainder of `f` modulo the monic polynomial `m`.
    pub fn rem_monic(f: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let p64 = p as u64;
        let mut r: Vec<u64> = f.iter().map(|&c| c as u64).collect();
        let dm = m.len() - 1;
        while r.len() > dm {
            let lead = r.pop().unwrap() % p64;
            if lead != 0 {
                let base = r.len() - dm;
                for (i, &mc) in m[..dm].iter().enumerate() {
                    let sub = lead * mc as u64 % p64;
                    r[base + i] = (r[base + i] + p64 - sub) % p64;
                }
            }
        }
        let mut out: Vec<u32> = r.into_iter().map(|c| (c % p64) as u32).collect();
        trim(&mut out);
        out
    }

    pub fn mul(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
        if f.is_empty() || g.is_empty() {
            return Vec::new();
        }
        let p64 = p as u64;
        let mut out = vec![0u64; f.len() + g.len() - 1];
        for (i, &a) in f.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in g.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u64 * b as u64) % p64;
            }
        }
        let mut out: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
        trim(&mut out);
        out
    }

    /// Digits of `index` in base `p`, exactly `len` of them.
    pub fn digits(mut index: u64, p: u32, len: usize) -> Vec<u32> {
        let mut out = Vec::with_capacity(len);
        for _ in 0..len {
            out.push((index % p as u64) as u32);
            index /= p as u64;
        }
        out
    }

    /// Trial division by every monic polynomial of degree 1..=deg/2.
    pub fn is_irreducible(m: &[u32], p: u32) -> bool {
        let deg = m.len() - 1;
        if deg <= 1 {
            return deg == 1;
        }
        let mut count = 1u64;
        for d in 1..=deg / 2 {
            count *= p as u64;
            for low in 0..count {
                let mut divisor = digits(low, p, d);
                divisor.push(1);
                if rem_monic(m, &divisor, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

/// Returns the monic irreducible polynomial of degree `n` over F_p whose
/// non-leading coefficients, read as a base-p integer, are smallest.
///
/// For `n = 1` this is `x`, so arithmetic is plain mod-p.
pub fn find_irreducible(p: u64, n: u32) -> Result<Vec<u32>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::ZeroDegree);
    }
    check_order(p, n)?;
    let p = p as u32;
    if n == 1 {
        return Ok(vec![0, 1]);
    }
    let n = n as usize;
    let mut low = 0u64;
    loop {
        let mut candidate = fp::digits(low, p, n);
        candidate.push(1);
        if fp::is_irreducible(&candidate, p) {
            return Ok(candidate);
        }
        low += 1;
    }
}

fn check_order(p: u64, n: u32) -> Result<u64> {
    p.checked_pow(n)
        .filter(|&q| q <= MAX_ORDER)
        .ok_or(Error::FieldTooLarge { p, n })
}

/// Parameters defining GF(p^n): a prime, a degree and a monic irreducible
/// modulus of that degree (constant term first).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawFieldSpec")]
pub struct FieldSpec {
    p: u32,
    n: u32,
    modulus: Vec<u32>,
}

#[derive(Deserialize)]
struct RawFieldSpec {
    p: u64,
    n: u32,
    #[serde(default)]
    modulus: Option<Vec<u32>>,
}

impl TryFrom<RawFieldSpec> for FieldSpec {
    type Error = Error;

    fn try_from(raw: RawFieldSpec) -> Result<Self> {
        match raw.modulus {
            Some(m) if raw.n > 1 => FieldSpec::new(raw.p, raw.n, m),
            _ => FieldSpec::with_default_modulus(raw.p, raw.n),
        }
    }
}

impl FieldSpec {
    /// Validates an explicit modulus. For `n = 1` the modulus is ignored.
    pub fn new(p: u64, n: u32, modulus: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        check_order(p, n)?;
        if n == 1 {
            return Ok(FieldSpec {
                p: p as u32,
                n,
                modulus: vec![0, 1],
            });
        }
        if modulus.len() != n as usize + 1 {
            return Err(Error::InvalidModulus(format!(
                "expected {} coefficients for degree {n}, got {}",
                n + 1,
                modulus.len()
            )));
        }
        if let Some(&c) = modulus.iter().find(|&&c| c as u64 >= p) {
            return Err(Error::InvalidModulus(format!(
                "coefficient {c} is not below {p}"
            )));
        }
        if modulus[n as usize] != 1 {
            return Err(Error::InvalidModulus("modulus must be monic".into()));
        }
        if !fp::is_irreducible(&modulus, p as u32) {
            return Err(Error::ReducibleModulus(modulus));
        }
        Ok(FieldSpec {
            p: p as u32,
            n,
            modulus,
        })
    }

    pub fn with_default_modulus(p: u64, n: u32) -> Result<Self> {
        let modulus = find_irreducible(p, n)?;
        Ok(FieldSpec {
            p: p as u32,
            n,
            modulus,
        })
    }

    /// The field of order `q` with the default modulus.
    pub fn from_order(q: u64) -> Result<Self> {
        let (p, n) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::with_default_modulus(p, n)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn order(&self) -> u32 {
        self.p.pow(self.n)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 1 {
            write!(f, "GF({})", self.p)
        } else {
            write!(
                f,
                "GF({}^{}) mod {}",
                self.p,
                self.n,
                format_fp_poly(&self.modulus)
            )
        }
    }
}

fn format_fp_poly(coeffs: &[u32]) -> String {
    let mut terms = Vec::new();
    for (e, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match e {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{e}"),
        };
        terms.push(match (c, e) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}{mono}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// A field element, stored as its canonical index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone)]
struct LogTables {
    log: Vec<u32>,
    // exp[i] = g^i for 0 <= i < 2(q-1), so sums of two logs need no reduction.
    exp: Vec<u32>,
}

/// GF(p^n) ready for arithmetic.
#[derive(Debug, Clone)]
pub struct Field {
    spec: FieldSpec,
    q: u32,
    tables: Option<LogTables>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for Field {}

impl Field {
    pub fn new(spec: FieldSpec) -> Self {
        let q = spec.order();
        let mut field = Field {
            spec,
            q,
            tables: None,
        };
        if field.spec.n > 1 && q <= LOG_TABLE_LIMIT {
            field.tables = Some(field.build_log_tables());
        }
        field
    }

    pub fn from_order(q: u64) -> Result<Self> {
        Ok(Self::new(FieldSpec::from_order(q)?))
    }

    pub fn gf(p: u64, n: u32) -> Result<Self> {
        Ok(Self::new(FieldSpec::with_default_modulus(p, n)?))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn characteristic(&self) -> u32 {
        self.spec.p
    }

    pub fn degree(&self) -> u32 {
        self.spec.n
    }

    /// The number of elements, q.
    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    pub fn contains(&self, x: FieldElement) -> bool {
        x.0 < self.q
    }

    /// The element with canonical index `index`.
    pub fn element(&self, index: u64) -> Result<FieldElement> {
        if index < self.q as u64 {
            Ok(FieldElement(index as u32))
        } else {
            Err(Error::ElementOutOfRange { index, q: self.q })
        }
    }

    /// Checks that `x` can belong to this field.
    pub fn check(&self, x: FieldElement) -> Result<FieldElement> {
        self.element(x.0 as u64)
    }

    /// All q elements in canonical-index order.
    pub fn elements(&self) -> impl ExactSizeIterator<Item = FieldElement> + Clone {
        (0..self.q).map(FieldElement)
    }

    /// The prime-field element `c mod p`.
    pub fn from_int(&self, c: u64) -> FieldElement {
        FieldElement((c % self.spec.p as u64) as u32)
    }

    pub fn coeffs(&self, x: FieldElement) -> Vec<u32> {
        fp::digits(x.0 as u64, self.spec.p, self.spec.n as usize)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        let p = self.spec.p;
        if coeffs.len() > self.spec.n as usize {
            return Err(Error::InvalidArgument(format!(
                "{} coefficients given for a degree-{} field",
                coeffs.len(),
                self.spec.n
            )));
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= p) {
            return Err(Error::InvalidArgument(format!(
                "coefficient {c} is not below {p}"
            )));
        }
        Ok(FieldElement(
            coeffs.iter().rev().fold(0, |acc, &c| acc * p + c),
        ))
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        let p = self.spec.p;
        if p == 2 {
            return FieldElement(x.0 ^ y.0);
        }
        if self.spec.n == 1 {
            return FieldElement((x.0 + y.0) % p);
        }
        let (mut a, mut b) = (x.0, y.0);
        let (mut out, mut place) = (0, 1);
        while a > 0 || b > 0 {
            out += (a % p + b % p) % p * place;
            a /= p;
            b /= p;
            place *= p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, x: FieldElement) -> FieldElement {
        let p = self.spec.p;
        if p == 2 {
            return x;
        }
        if self.spec.n == 1 {
            return FieldElement((p - x.0) % p);
        }
        let mut a = x.0;
        let (mut out, mut place) = (0, 1);
        while a > 0 {
            out += (p - a % p) % p * place;
            a /= p;
            place *= p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if x.0 == 0 || y.0 == 0 {
            return FieldElement::ZERO;
        }
        if self.spec.n == 1 {
            return FieldElement((x.0 as u64 * y.0 as u64 % self.spec.p as u64) as u32);
        }
        match &self.tables {
            Some(t) => FieldElement(t.exp[(t.log[x.0 as usize] + t.log[y.0 as usize]) as usize]),
            None => self.mul_reduce(x, y),
        }
    }

    /// Multiplies the coefficient polynomials and reduces by the modulus.
    pub(crate) fn mul_reduce(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        let p = self.spec.p;
        let prod = fp::mul(&self.coeffs(x), &self.coeffs(y), p);
        let r = fp::rem_monic(&prod, &self.spec.modulus, p);
        FieldElement(r.iter().rev().fold(0, |acc, &c| acc * p + c))
    }

    /// Square-and-multiply; `0^0 = 1`.
    pub fn pow(&self, x: FieldElement, mut e: u64) -> FieldElement {
        let mut base = x;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, computed as `x^(q-2)`.
    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        if x.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(x, self.q as u64 - 2))
    }

    /// The map `x -> x^(q-2)`: inversion on nonzero elements, fixing 0.
    pub fn inv_or_zero(&self, x: FieldElement) -> FieldElement {
        if x.is_zero() {
            x
        } else {
            self.pow(x, self.q as u64 - 2)
        }
    }

    pub fn try_add(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        Ok(self.add(self.check(x)?, self.check(y)?))
    }

    pub fn try_sub(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        Ok(self.sub(self.check(x)?, self.check(y)?))
    }

    pub fn try_mul(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(self.check(x)?, self.check(y)?))
    }

    /// Readable form of an element, e.g. `2 + x` in GF(9).
    pub fn format_coeffs(&self, x: FieldElement) -> String {
        if self.spec.n == 1 {
            x.0.to_string()
        } else {
            format_fp_poly(&self.coeffs(x))
        }
    }

    fn slow_pow(&self, x: FieldElement, mut e: u64) -> FieldElement {
        let mut base = x;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_reduce(acc, base);
            }
            base = self.mul_reduce(base, base);
            e >>= 1;
        }
        acc
    }

    fn build_log_tables(&self) -> LogTables {
        let group = self.q as u64 - 1;
        let factors = distinct_prime_factors(group);
        let generator = (2..self.q)
            .map(FieldElement)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&l| self.slow_pow(g, group / l) != FieldElement::ONE)
            })
            .expect("the multiplicative group of a finite field is cyclic");
        let mut log = vec![0u32; self.q as usize];
        let mut exp = Vec::with_capacity(2 * group as usize);
        let mut cur = FieldElement::ONE;
        for i in 0..group as u32 {
            exp.push(cur.0);
            log[cur.0 as usize] = i;
            cur = self.mul_reduce(cur, generator);
        }
        exp.extend_from_within(..);
        LogTables { log, exp }
    }
}

pub(crate) fn distinct_prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prime_powers(limit: u64) -> Vec<u64> {
        (2..=limit).filter(|&q| prime_power(q).is_some()).collect()
    }

    /// Every monic polynomial of degree n, brute-forced for roots and
    /// factors by multiplying all pairs of lower-degree monics.
    fn irreducibles_by_enumeration(p: u32, n: usize) -> Vec<Vec<u32>> {
        let monics = |d: usize| -> Vec<Vec<u32>> {
            (0..(p as u64).pow(d as u32))
                .map(|low| {
                    let mut v = fp::digits(low, p, d);
                    v.push(1);
                    v
                })
                .collect()
        };
        let mut reducible = std::collections::HashSet::new();
        for d in 1..n {
            for f in monics(d) {
                for g in monics(n - d) {
                    reducible.insert(fp::mul(&f, &g, p));
                }
            }
        }
        monics(n)
            .into_iter()
            .filter(|m| !reducible.contains(m))
            .collect()
    }

    #[test]
    fn find_irreducible_examples() {
        assert_eq!(find_irreducible(2, 2).unwrap(), vec![1, 1, 1]);
        assert_eq!(find_irreducible(3, 1).unwrap(), vec![0, 1]);
        assert_eq!(find_irreducible(3, 2).unwrap(), vec![1, 0, 1]);
    }

    #[test]
    fn find_irreducible_is_smallest_by_enumeration() {
        for (p, n) in [
            (2, 2),
            (2, 3),
            (2, 4),
            (2, 5),
            (3, 2),
            (3, 3),
            (5, 2),
            (7, 2),
        ] {
            let first = irreducibles_by_enumeration(p, n)
                .into_iter()
                .next()
                .unwrap();
            assert_eq!(
                find_irreducible(p as u64, n as u32).unwrap(),
                first,
                "p={p} n={n}"
            );
        }
    }

    #[test]
    fn trial_division_agrees_with_enumeration() {
        for (p, n) in [(2, 4), (3, 3), (5, 2)] {
            let expected: Vec<_> = irreducibles_by_enumeration(p, n);
            let got: Vec<_> = (0..(p as u64).pow(n as u32))
                .map(|low| {
                    let mut v = fp::digits(low, p, n);
                    v.push(1);
                    v
                })
                .filter(|m| fp::is_irreducible(m, p))
                .collect();
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn spec_validation() {
        assert_eq!(FieldSpec::new(4, 1, vec![]), Err(Error::NotPrime(4)));
        assert_eq!(FieldSpec::new(2, 0, vec![]), Err(Error::ZeroDegree));
        assert!(matches!(
            FieldSpec::new(2, 2, vec![1, 0, 1]),
            Err(Error::ReducibleModulus(_))
        ));
        assert!(matches!(
            FieldSpec::new(2, 2, vec![1, 1, 0]),
            Err(Error::InvalidModulus(_))
        ));
        assert!(matches!(
            FieldSpec::new(2, 2, vec![1, 2, 1]),
            Err(Error::InvalidModulus(_))
        ));
        assert!(matches!(
            FieldSpec::new(2, 2, vec![1, 1]),
            Err(Error::InvalidModulus(_))
        ));
        assert!(matches!(
            FieldSpec::new(2, 21, vec![]),
            Err(Error::FieldTooLarge { .. })
        ));
        assert!(FieldSpec::new(2, 20, find_irreducible(2, 20).unwrap()).is_ok());
        // n = 1 ignores whatever modulus is supplied
        assert_eq!(FieldSpec::new(5, 1, vec![3, 3]).unwrap().modulus(), &[0, 1]);
        assert_eq!(FieldSpec::from_order(6), Err(Error::NotPrimePower(6)));
    }

    #[test]
    fn explicit_modulus_is_respected() {
        // x^2 + 2x + 2 is irreducible over F_3 but not the default.
        let spec = FieldSpec::new(3, 2, vec![2, 2, 1]).unwrap();
        let f = Field::new(spec);
        let x = f.element(3).unwrap();
        // x^2 = -2x - 2 = x + 1 -> index 1 + 3 = 4
        assert_eq!(f.mul(x, x).index(), 4);
    }

    #[test]
    fn json_schema() {
        let spec = FieldSpec::from_order(4).unwrap();
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(json, r#"{"p":2,"n":2,"modulus":[1,1,1]}"#);
        let back: FieldSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, spec);
        let prime: FieldSpec = serde_json::from_str(r#"{"p":7,"n":1}"#).unwrap();
        assert_eq!(prime, FieldSpec::from_order(7).unwrap());
        assert!(serde_json::from_str::<FieldSpec>(r#"{"p":2,"n":2,"modulus":[0,0,1]}"#).is_err());
        assert!(serde_json::from_str::<FieldSpec>(r#"{"p":9,"n":1}"#).is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let f5 = Field::from_order(5).unwrap();
        let e = |i| f5.element(i).unwrap();
        assert_eq!(f5.mul(e(2), e(3)), e(1));
        assert_eq!(f5.inv(e(2)).unwrap(), e(3));
        assert_eq!(f5.inv(e(4)).unwrap(), e(4));
        assert_eq!(f5.inv(e(1)).unwrap(), e(1));
        assert_eq!(f5.inv(e(0)), Err(Error::ZeroInverse));
        assert_eq!(f5.pow(e(2), 3), e(3));
        assert_eq!(f5.pow(e(0), 3), e(0));
        assert_eq!(f5.pow(e(0), 0), e(1));

        let f4 = Field::from_order(4).unwrap();
        let w = f4.element(2).unwrap();
        assert_eq!(f4.mul(w, w), f4.element(3).unwrap());
        assert_eq!(f4.pow(w, 2), f4.element(3).unwrap());
        for x in f4.elements() {
            assert_eq!(f4.mul(x, f4.one()), x);
        }
    }

    #[test]
    fn checked_ops_reject_foreign_elements() {
        let f5 = Field::from_order(5).unwrap();
        let f7 = Field::from_order(7).unwrap();
        let six = f7.element(6).unwrap();
        assert!(matches!(
            f5.try_add(six, f5.one()),
            Err(Error::ElementOutOfRange { .. })
        ));
        assert!(matches!(
            f5.try_mul(f5.one(), six),
            Err(Error::ElementOutOfRange { .. })
        ));
        assert!(matches!(
            f5.try_sub(six, six),
            Err(Error::ElementOutOfRange { .. })
        ));
        assert_eq!(f5.try_add(f5.one(), f5.one()).unwrap().index(), 2);
    }

    #[test]
    fn enumerate_order_and_decoding() {
        let f5 = Field::from_order(5).unwrap();
        assert_eq!(
            f5.elements().map(|x| x.index()).collect::<Vec<_>>(),
            vec![0, 1, 2, 3, 4]
        );
        let f4 = Field::from_order(4).unwrap();
        let coeffs: Vec<_> = f4.elements().map(|x| f4.coeffs(x)).collect();
        assert_eq!(coeffs, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
        let f9 = Field::from_order(9).unwrap();
        assert_eq!(f9.elements().len(), 9);
        assert_eq!(f9.coeffs(f9.element(5).unwrap()), vec![2, 1]);
        assert_eq!(f9.format_coeffs(f9.element(5).unwrap()), "x + 2");
        for q in prime_powers(64) {
            let f = Field::from_order(q).unwrap();
            for x in f.elements() {
                assert_eq!(f.from_coeffs(&f.coeffs(x)).unwrap(), x);
            }
        }
    }

    /// Extended Euclid on F_p[x], independent of exponentiation.
    fn inverse_by_euclid(f: &Field, x: FieldElement) -> FieldElement {
        let p = f.characteristic();
        let sub_scaled = |a: &[u32], b: &[u32], c: u32, shift: usize| -> Vec<u32> {
            let mut out = a.to_vec();
            out.resize(out.len().max(b.len() + shift), 0);
            for (i, &bc) in b.iter().enumerate() {
                let s = (bc as u64 * c as u64 % p as u64) as u32;
                out[i + shift] = (out[i + shift] + p - s) % p;
            }
            fp::trim(&mut out);
            out
        };
        let inv_p = |a: u32| {
            (1..p)
                .find(|&b| a as u64 * b as u64 % p as u64 == 1)
                .unwrap()
        };
        let (mut r0, mut r1) = (f.spec().modulus().to_vec(), {
            let mut c = f.coeffs(x);
            fp::trim(&mut c);
            c
        });
        let (mut s0, mut s1): (Vec<u32>, Vec<u32>) = (vec![], vec![1]);
        while !r1.is_empty() {
            let (mut quo_r, mut quo_s) = (r0.clone(), s0.clone());
            while quo_r.len() >= r1.len() {
                let shift = quo_r.len() - r1.len();
                let c = (*quo_r.last().unwrap() as u64 * inv_p(*r1.last().unwrap()) as u64
                    % p as u64) as u32;
                quo_r = sub_scaled(&quo_r, &r1, c, shift);
                quo_s = sub_scaled(&quo_s, &s1, c, shift);
            }
            r0 = std::mem::replace(&mut r1, quo_r);
            s0 = std::mem::replace(&mut s1, quo_s);
        }
        // r0 is a nonzero constant
        let scale = inv_p(r0[0]);
        let mut out: Vec<u32> = s0
            .iter()
            .map(|&c| (c as u64 * scale as u64 % p as u64) as u32)
            .collect();
        out = fp::rem_monic(&out, f.spec().modulus(), p);
        f.from_coeffs(&out).unwrap()
    }

    #[test]
    fn inversion_matches_euclid_and_pow_exhaustively() {
        for q in prime_powers(64) {
            let f = Field::from_order(q).unwrap();
            for x in f.elements().skip(1) {
                let inv = f.inv(x).unwrap();
                assert_eq!(inv, f.pow(x, q - 2));
                assert_eq!(inv, inverse_by_euclid(&f, x), "q={q} x={x}");
                assert_eq!(f.mul(x, inv), f.one());
            }
        }
    }

    #[test]
    fn frobenius_iterate_is_identity() {
        for q in prime_powers(64) {
            let f = Field::from_order(q).unwrap();
            for x in f.elements() {
                assert_eq!(f.pow(x, q), x, "q={q}");
            }
        }
    }

    #[test]
    fn log_tables_agree_with_modular_reduction() {
        for q in [4u64, 8, 9, 16, 27, 49, 64, 81, 125, 256, 729, 1024] {
            let f = Field::from_order(q).unwrap();
            let step = (q / 40).max(1) as usize;
            for x in f.elements().step_by(step) {
                for y in f.elements() {
                    assert_eq!(f.mul(x, y), f.mul_reduce(x, y), "q={q}");
                }
            }
        }
    }

    #[test]
    fn large_field_without_tables() {
        let f = Field::gf(2, 17).unwrap();
        assert!(f.tables.is_none());
        let x = f.element(12345).unwrap();
        let inv = f.inv(x).unwrap();
        assert_eq!(f.mul(x, inv), f.one());
        assert_eq!(f.pow(x, f.order() as u64), x);
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(64), Some((2, 6)));
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(97), Some((97, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1000), None);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        const ORDERS: [u64; 10] = [2, 3, 4, 5, 8, 9, 16, 25, 27, 49];

        fn field_and_triple() -> impl Strategy<Value = (u64, u32, u32, u32)> {
            prop::sample::select(ORDERS.to_vec()).prop_flat_map(|q| {
                let q32 = q as u32;
                (Just(q), 0..q32, 0..q32, 0..q32)
            })
        }

        proptest! {
            #[test]
            fn field_axioms((q, a, b, c) in field_and_triple()) {
                let f = Field::from_order(q).unwrap();
                let (a, b, c) = (f.element(a as u64).unwrap(), f.element(b as u64).unwrap(), f.element(c as u64).unwrap());
                prop_assert_eq!(f.add(a, b), f.add(b, a));
                prop_assert_eq!(f.mul(a, b), f.mul(b, a));
                prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                prop_assert_eq!(f.sub(f.add(a, b), b), a);
                prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
            }
        }
    }
}
