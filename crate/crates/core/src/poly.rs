//! Polynomials over F_q viewed as functions on F_q.
//!
//! Two polynomials induce the same function exactly when they agree modulo
//! `x^q - x`, so every function has a unique representative of degree below
//! q. [`Poly::reduce`] computes it, and the ring operations here always
//! return reduced results.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    field: Arc<Field>,
    // constant first, no trailing zeros
    coeffs: Vec<FieldElement>,
}

/// Wire form: canonical coefficient indices, constant first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub coeffs: Vec<u32>,
}

pub(crate) fn same_field(a: &Arc<Field>, b: &Arc<Field>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Exponent of the monomial that agrees with `x^e` on F_q.
fn fold_exponent(e: usize, q: usize) -> usize {
    if e < q {
        e
    } else {
        (e - 1) % (q - 1) + 1
    }
}

fn strip(coeffs: &mut Vec<FieldElement>) {
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
}

impl Poly {
    pub fn new(field: Arc<Field>, coeffs: Vec<FieldElement>) -> Result<Self> {
        for &c in &coeffs {
            field.check(c)?;
        }
        let mut coeffs = coeffs;
        strip(&mut coeffs);
        Ok(Poly { field, coeffs })
    }

    pub fn from_indices(field: Arc<Field>, indices: &[u64]) -> Result<Self> {
        let coeffs = indices
            .iter()
            .map(|&i| field.element(i))
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, coeffs)
    }

    pub fn from_json(field: Arc<Field>, json: &PolyJson) -> Result<Self> {
        let indices: Vec<u64> = json.coeffs.iter().map(|&c| c as u64).collect();
        Self::from_indices(field, &indices)
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            coeffs: self.coeffs.iter().map(|c| c.index()).collect(),
        }
    }

    pub fn zero(field: Arc<Field>) -> Self {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(field: Arc<Field>, c: FieldElement) -> Self {
        let mut coeffs = vec![c];
        strip(&mut coeffs);
        Poly { field, coeffs }
    }

    /// The identity polynomial `x`.
    pub fn x(field: Arc<Field>) -> Self {
        Self::monomial(field, FieldElement::ONE, 1)
    }

    /// `c * x^e`, not reduced.
    pub fn monomial(field: Arc<Field>, c: FieldElement, e: usize) -> Self {
        if c.is_zero() {
            return Self::zero(field);
        }
        let mut coeffs = vec![FieldElement::ZERO; e + 1];
        coeffs[e] = c;
        Poly { field, coeffs }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_reduced(&self) -> bool {
        self.coeffs.len() <= self.field.order() as usize
    }

    /// Horner evaluation.
    pub fn eval(&self, x: FieldElement) -> Result<FieldElement> {
        Ok(self.eval_at(self.field.check(x)?))
    }

    pub(crate) fn eval_at(&self, x: FieldElement) -> FieldElement {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Values at every element, in canonical order.
    pub fn values(&self) -> Vec<FieldElement> {
        self.field.elements().map(|x| self.eval_at(x)).collect()
    }

    /// The functionally equal polynomial of degree below q.
    pub fn reduce(&self) -> Poly {
        let q = self.field.order() as usize;
        if self.coeffs.len() <= q {
            return self.clone();
        }
        let f = &self.field;
        let mut out = vec![f.zero(); q];
        for (e, &c) in self.coeffs.iter().enumerate() {
            let slot = &mut out[fold_exponent(e, q)];
            *slot = f.add(*slot, c);
        }
        strip(&mut out);
        Poly {
            field: self.field.clone(),
            coeffs: out,
        }
    }

    fn check_same(&self, other: &Poly) -> Result<()> {
        if same_field(&self.field, &other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        let f = &self.field;
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (slot, &c) in coeffs.iter_mut().zip(&short.coeffs) {
            *slot = f.add(*slot, c);
        }
        strip(&mut coeffs);
        Ok(Poly {
            field: self.field.clone(),
            coeffs,
        }
        .reduce())
    }

    /// Product reduced modulo `x^q - x`.
    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        Ok(self.mul_reduced(other))
    }

    fn mul_reduced(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let q = f.order() as usize;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field.clone());
        }
        let len = (self.coeffs.len() + other.coeffs.len() - 1).min(q);
        let mut out = vec![f.zero(); len];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let slot = &mut out[fold_exponent(i + j, q)];
                *slot = f.add(*slot, f.mul(a, b));
            }
        }
        strip(&mut out);
        Poly {
            field: self.field.clone(),
            coeffs: out,
        }
    }

    /// `a * self + b`.
    pub fn affine(&self, a: FieldElement, b: FieldElement) -> Poly {
        let f = &self.field;
        let mut coeffs: Vec<FieldElement> = self.coeffs.iter().map(|&c| f.mul(a, c)).collect();
        if coeffs.is_empty() {
            coeffs.push(f.zero());
        }
        coeffs[0] = f.add(coeffs[0], b);
        strip(&mut coeffs);
        Poly {
            field: self.field.clone(),
            coeffs,
        }
    }

    /// `self^e` by square-and-multiply, reducing after every product.
    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.reduce();
        let mut acc = Poly::constant(self.field.clone(), FieldElement::ONE);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_reduced(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_reduced(&base);
            }
        }
        acc
    }

    /// The permutation this polynomial induces, if it is one.
    pub fn induced_permutation(&self) -> Option<Permutation> {
        let images: Vec<u32> = self.values().into_iter().map(FieldElement::index).collect();
        Permutation::from_images(images).ok()
    }

    pub fn is_permutation(&self) -> bool {
        self.induced_permutation().is_some()
    }

    /// Lagrange interpolation through a value for every field element.
    ///
    /// Builds `Z(x) = prod (x - x_i)` once, then each basis polynomial as
    /// `Z(x) / (x - x_i)` scaled by `1 / prod_{j != i} (x_i - x_j)`.
    pub fn interpolate(field: Arc<Field>, points: &[(FieldElement, FieldElement)]) -> Result<Poly> {
        let q = field.order() as usize;
        let mut seen = vec![false; q];
        for &(x, y) in points {
            field.check(x)?;
            field.check(y)?;
            if std::mem::replace(&mut seen[x.index() as usize], true) {
                return Err(Error::Interpolation(format!("x = {x} appears twice")));
            }
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(Error::Interpolation(format!("x = {missing} is missing")));
        }
        let f = &*field;

        // Z(x), highest degree q
        let mut z = vec![f.one()];
        for &(xi, _) in points {
            let mut next = vec![f.zero(); z.len() + 1];
            for (k, &c) in z.iter().enumerate() {
                next[k + 1] = f.add(next[k + 1], c);
                next[k] = f.sub(next[k], f.mul(xi, c));
            }
            z = next;
        }

        let mut acc = vec![f.zero(); q];
        for (i, &(xi, yi)) in points.iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            let denom = points
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(f.one(), |d, (_, &(xj, _))| f.mul(d, f.sub(xi, xj)));
            let scale = f.mul(yi, f.inv(denom).expect("x-coordinates are distinct"));
            // synthetic division of Z by (x - xi)
            let mut carry = f.zero();
            for k in (0..q).rev() {
                carry = f.add(z[k + 1], f.mul(carry, xi));
                acc[k] = f.add(acc[k], f.mul(scale, carry));
            }
        }
        strip(&mut acc);
        Ok(Poly { field, coeffs: acc })
    }

    /// Interpolates the function `x -> table[x]` given in canonical order.
    pub fn interpolate_table(field: Arc<Field>, table: &[FieldElement]) -> Result<Poly> {
        let points: Vec<_> = field.elements().zip(table.iter().copied()).collect();
        if table.len() != points.len() {
            return Err(Error::Interpolation(format!(
                "{} values given for {} elements",
                table.len(),
                points.len()
            )));
        }
        Self::interpolate(field, &points)
    }
}

impl fmt::Display for Poly {
    /// Coefficients are printed as canonical indices.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (c.index(), e) {
                (c, 0) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, e) => write!(f, "x^{e}")?,
                (c, 1) => write!(f, "{c}x")?,
                (c, e) => write!(f, "{c}x^{e}")?,
            }
        }
        Ok(())
    }
}
