//! Words over the generators of Sym(F_q): affine maps `x -> a x + b` and
//! the inversion `x -> x^(q-2)`.
//!
//! A word `[t_0, t_1, ..., t_{m-1}]` applies `t_0` first, so it denotes
//! `t_{m-1} o ... o t_1 o t_0`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, FieldSpec};
use crate::perm::Permutation;
use crate::poly::Poly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenToken {
    /// `x -> a x + b` with `a != 0`.
    Linear { a: FieldElement, b: FieldElement },
    /// `x -> x^(q-2)`: fixes 0 and inverts every other element.
    Inv,
}

impl GenToken {
    pub fn linear(a: FieldElement, b: FieldElement) -> Self {
        GenToken::Linear { a, b }
    }

    pub fn is_inv(&self) -> bool {
        matches!(self, GenToken::Inv)
    }

    fn is_identity(&self) -> bool {
        matches!(self, GenToken::Linear { a, b } if *a == FieldElement::ONE && b.is_zero())
    }

    fn apply(&self, field: &Field, x: FieldElement) -> FieldElement {
        match *self {
            GenToken::Linear { a, b } => field.add(field.mul(a, x), b),
            GenToken::Inv => field.inv_or_zero(x),
        }
    }
}

impl fmt::Display for GenToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenToken::Linear { a, b } => write!(f, "linear({a}, {b})"),
            GenToken::Inv => write!(f, "inv"),
        }
    }
}

/// Which construction realizes the transposition `(0 a)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Gadget {
    /// `a g(x/a)` with `g = h o h o h` and `h(x) = 1 - x^(q-2)`.
    #[default]
    Zieve,
    /// `-a^2 (((x - a)^(q-2) + 1/a)^(q-2) - a)^(q-2)`.
    Carlitz,
}

impl FromStr for Gadget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zieve" => Ok(Gadget::Zieve),
            "carlitz" => Ok(Gadget::Carlitz),
            _ => Err(Error::InvalidArgument(format!("unknown gadget {s:?}"))),
        }
    }
}

impl fmt::Display for Gadget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Gadget::Zieve => "zieve",
            Gadget::Carlitz => "carlitz",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "WordJson", into = "WordJson")]
pub struct GenWord {
    field: Arc<Field>,
    tokens: Vec<GenToken>,
}

/// Interchange format: `{"field": {...}, "tokens": [{"linear": {"a": 1, "b": 0}}, "inv"]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordJson {
    pub field: FieldSpec,
    pub tokens: Vec<TokenJson>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TokenJson {
    Linear { a: u32, b: u32 },
    Inv,
}

impl TryFrom<WordJson> for GenWord {
    type Error = Error;

    fn try_from(json: WordJson) -> Result<Self> {
        let field = Arc::new(Field::new(json.field));
        let tokens = json
            .tokens
            .iter()
            .map(|t| match *t {
                TokenJson::Linear { a, b } => Ok(GenToken::Linear {
                    a: field.element(a as u64)?,
                    b: field.element(b as u64)?,
                }),
                TokenJson::Inv => Ok(GenToken::Inv),
            })
            .collect::<Result<Vec<_>>>()?;
        GenWord::new(field, tokens)
    }
}

impl From<GenWord> for WordJson {
    fn from(w: GenWord) -> Self {
        WordJson {
            field: w.field.spec().clone(),
            tokens: w
                .tokens
                .iter()
                .map(|t| match *t {
                    GenToken::Linear { a, b } => TokenJson::Linear {
                        a: a.index(),
                        b: b.index(),
                    },
                    GenToken::Inv => TokenJson::Inv,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordStats {
    pub token_count: usize,
    pub inv_count: usize,
    /// Degree of the reduced polynomial compiled from the simplified word.
    pub compiled_degree: Option<usize>,
}

fn require_inv_allowed(field: &Field) -> Result<()> {
    if field.order() == 2 {
        Err(Error::InvOverF2)
    } else {
        Ok(())
    }
}

impl GenWord {
    pub fn new(field: Arc<Field>, tokens: Vec<GenToken>) -> Result<Self> {
        for t in &tokens {
            match *t {
                GenToken::Linear { a, b } => {
                    field.check(a)?;
                    field.check(b)?;
                    if a.is_zero() {
                        return Err(Error::ZeroScale);
                    }
                }
                GenToken::Inv => require_inv_allowed(&field)?,
            }
        }
        Ok(GenWord { field, tokens })
    }

    pub fn empty(field: Arc<Field>) -> Self {
        GenWord {
            field,
            tokens: Vec::new(),
        }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn tokens(&self) -> &[GenToken] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn inv_count(&self) -> usize {
        self.tokens.iter().filter(|t| t.is_inv()).count()
    }

    /// `other` applied after `self`.
    pub fn then(mut self, other: &GenWord) -> Result<Self> {
        if !crate::poly::same_field(&self.field, &other.field) {
            return Err(Error::FieldMismatch);
        }
        self.tokens.extend_from_slice(&other.tokens);
        Ok(self)
    }

    pub fn apply(&self, x: FieldElement) -> Result<FieldElement> {
        Ok(self.apply_at(self.field.check(x)?))
    }

    fn apply_at(&self, x: FieldElement) -> FieldElement {
        self.tokens
            .iter()
            .fold(x, |acc, t| t.apply(&self.field, acc))
    }

    /// The induced permutation of the canonical indices.
    pub fn to_permutation(&self) -> Permutation {
        let images = self
            .field
            .elements()
            .map(|x| self.apply_at(x).index())
            .collect();
        Permutation::from_images(images).expect("every generator is a bijection")
    }

    /// `h(x) = 1 - x^(q-2)`: inversion followed by `x -> 1 - x`.
    pub fn h(field: Arc<Field>) -> Result<Self> {
        require_inv_allowed(&field)?;
        let minus_one = field.neg(field.one());
        let tokens = vec![GenToken::Inv, GenToken::linear(minus_one, field.one())];
        Ok(GenWord { field, tokens })
    }

    /// `h o h o h`, which swaps 0 and 1 and fixes everything else.
    pub fn swap01(field: Arc<Field>) -> Result<Self> {
        let h = Self::h(field)?;
        Ok(GenWord {
            tokens: h.tokens.repeat(3),
            field: h.field,
        })
    }

    /// `(0 a)` as `x -> a g(x / a)` with `g` from [`GenWord::swap01`].
    pub fn transposition_zieve(field: Arc<Field>, a: FieldElement) -> Result<Self> {
        field.check(a)?;
        if a.is_zero() {
            return Err(Error::ZeroTransposition);
        }
        let a_inv = field.inv(a)?;
        let g = Self::swap01(field.clone())?;
        let mut tokens = Vec::with_capacity(g.len() + 2);
        tokens.push(GenToken::linear(a_inv, field.zero()));
        tokens.extend_from_slice(&g.tokens);
        tokens.push(GenToken::linear(a, field.zero()));
        Ok(GenWord { field, tokens })
    }

    /// `(0 a)` as `f_a(x) = -a^2 (((x - a)^(q-2) + 1/a)^(q-2) - a)^(q-2)`,
    /// read inside out.
    pub fn transposition_carlitz(field: Arc<Field>, a: FieldElement) -> Result<Self> {
        field.check(a)?;
        if a.is_zero() {
            return Err(Error::ZeroTransposition);
        }
        require_inv_allowed(&field)?;
        let f = &*field;
        let one = f.one();
        let minus_a = f.neg(a);
        let tokens = vec![
            GenToken::linear(one, minus_a),
            GenToken::Inv,
            GenToken::linear(one, f.inv(a)?),
            GenToken::Inv,
            GenToken::linear(one, minus_a),
            GenToken::Inv,
            GenToken::linear(f.neg(f.mul(a, a)), f.zero()),
        ];
        Ok(GenWord { field, tokens })
    }

    pub fn transposition(field: Arc<Field>, a: FieldElement, gadget: Gadget) -> Result<Self> {
        match gadget {
            Gadget::Zieve => Self::transposition_zieve(field, a),
            Gadget::Carlitz => Self::transposition_carlitz(field, a),
        }
    }

    /// A word inducing `perm`, assembled from `(0 a)` gadgets and then
    /// simplified.
    ///
    /// Each cycle `(c1 ... cm)` becomes `(c1 cm)...(c1 c2)` (rightmost
    /// first), and each `(b c)` avoiding 0 becomes `(0 b)(0 c)(0 b)`. Over
    /// F_2 every permutation is affine and the result has no inversions.
    pub fn decompose(field: Arc<Field>, perm: &Permutation, gadget: Gadget) -> Result<Self> {
        let q = field.order();
        if perm.len() != q {
            return Err(Error::PermutationSize {
                got: perm.images().len(),
                q,
            });
        }
        if q == 2 {
            let b = field.element(perm.apply(0) as u64)?;
            let a = field.sub(field.element(perm.apply(1) as u64)?, b);
            let word = GenWord::new(field, vec![GenToken::linear(a, b)])?;
            return Ok(word.simplify());
        }

        // Targets of the (0 a) factors, in application order.
        let mut targets = Vec::new();
        for cycle in perm.cycles() {
            let c1 = cycle[0];
            for &c in &cycle[1..] {
                match (c1, c) {
                    (0, a) | (a, 0) => targets.push(a),
                    (b, c) => targets.extend([b, c, b]),
                }
            }
        }

        let mut gadgets = std::collections::HashMap::new();
        let mut tokens = Vec::new();
        for a in targets {
            if let std::collections::hash_map::Entry::Vacant(e) = gadgets.entry(a) {
                let word = Self::transposition(field.clone(), field.element(a as u64)?, gadget)?;
                e.insert(word.tokens);
            }
            tokens.extend_from_slice(&gadgets[&a]);
        }
        Ok(GenWord { field, tokens }.simplify())
    }

    /// Normal form under merging adjacent affine maps, cancelling adjacent
    /// inversions and deleting the identity map. The result alternates
    /// strictly between the two kinds of token.
    pub fn simplify(&self) -> Self {
        let f = &*self.field;
        let mut out: Vec<GenToken> = Vec::with_capacity(self.tokens.len());
        for &t in &self.tokens {
            match (out.last().copied(), t) {
                (Some(GenToken::Linear { a: a1, b: b1 }), GenToken::Linear { a: a2, b: b2 }) => {
                    out.pop();
                    let merged = GenToken::linear(f.mul(a2, a1), f.add(f.mul(a2, b1), b2));
                    if !merged.is_identity() {
                        out.push(merged);
                    }
                }
                (Some(GenToken::Inv), GenToken::Inv) => {
                    out.pop();
                }
                (_, t) if t.is_identity() => {}
                (_, t) => out.push(t),
            }
        }
        GenWord {
            field: self.field.clone(),
            tokens: out,
        }
    }

    /// The reduced polynomial (degree below q) inducing the same map.
    ///
    /// Starts from `x` and applies each token to the running polynomial;
    /// inversion is `P -> P^(q-2)` in the ring of functions on F_q.
    pub fn compile(&self) -> Result<Poly> {
        let q = self.field.order() as u64;
        let mut poly = Poly::x(self.field.clone());
        for t in &self.tokens {
            poly = match *t {
                GenToken::Linear { a, b } => poly.affine(a, b),
                GenToken::Inv => {
                    require_inv_allowed(&self.field)?;
                    poly.pow(q - 2)
                }
            };
        }
        Ok(poly)
    }

    pub fn stats(&self) -> Result<WordStats> {
        let compiled = self.simplify().compile()?;
        Ok(WordStats {
            token_count: self.len(),
            inv_count: self.inv_count(),
            compiled_degree: compiled.degree(),
        })
    }

    /// The induced map as a table indexed by canonical index.
    pub fn value_table(&self) -> Vec<FieldElement> {
        self.field.elements().map(|x| self.apply_at(x)).collect()
    }
}

impl fmt::Display for GenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tokens.is_empty() {
            return write!(f, "(empty)");
        }
        let parts: Vec<String> = self.tokens.iter().map(GenToken::to_string).collect();
        write!(f, "{}", parts.join(" ; "))
    }
}
