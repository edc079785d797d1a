//! Permutations of the canonical indices `0..q`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection on `0..q`, stored as its image table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPermutation")]
pub struct Permutation {
    images: Vec<u32>,
}

#[derive(Deserialize)]
struct RawPermutation {
    images: Vec<u32>,
}

impl TryFrom<RawPermutation> for Permutation {
    type Error = Error;

    fn try_from(raw: RawPermutation) -> Result<Self> {
        Permutation::from_images(raw.images)
    }
}

impl Permutation {
    pub fn identity(q: u32) -> Self {
        Permutation {
            images: (0..q).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let q = images.len() as u32;
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= q {
                return Err(Error::IndexOutOfRange { index: i as u64, q });
            }
            if std::mem::replace(&mut seen[i as usize], true) {
                return Err(Error::NotBijective(i));
            }
        }
        Ok(Permutation { images })
    }

    /// The 2-cycle exchanging `a` and `b`.
    pub fn transposition(q: u32, a: u32, b: u32) -> Result<Self> {
        for i in [a, b] {
            if i >= q {
                return Err(Error::IndexOutOfRange { index: i as u64, q });
            }
        }
        let mut p = Self::identity(q);
        p.images.swap(a as usize, b as usize);
        Ok(p)
    }

    /// Builds a permutation from disjoint cycles over `0..q`.
    pub fn from_cycles(q: u32, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..q).collect();
        let mut used = vec![false; q as usize];
        for cycle in cycles {
            let mut local = std::collections::HashSet::new();
            for &i in cycle {
                if i >= q {
                    return Err(Error::IndexOutOfRange { index: i as u64, q });
                }
                if !local.insert(i) {
                    return Err(Error::RepeatedInCycle(i));
                }
                if used[i as usize] {
                    return Err(Error::OverlappingCycles(i));
                }
            }
            for &i in cycle {
                used[i as usize] = true;
            }
            for (k, &i) in cycle.iter().enumerate() {
                images[i as usize] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation such as `(0 3)(1 2 4)`; unmentioned indices are
    /// fixed and the empty string is the identity.
    pub fn parse_cycles(text: &str, q: u32) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::PermutationSyntax(format!("expected '(' at {rest:?}")))?;
            let close = body
                .find(')')
                .ok_or_else(|| Error::PermutationSyntax("unclosed '('".into()))?;
            let cycle = body[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| parse_index(t, q))
                .collect::<Result<Vec<_>>>()?;
            // `()` is accepted as the identity, matching Display
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = body[close + 1..].trim_start();
        }
        Self::from_cycles(q, &cycles)
    }

    /// Parses a comma-separated image list of length `q`.
    pub fn parse_images(text: &str, q: u32) -> Result<Self> {
        let images = text
            .split(',')
            .map(|t| parse_index(t.trim(), q))
            .collect::<Result<Vec<_>>>()?;
        if images.len() != q as usize {
            return Err(Error::PermutationSize {
                got: images.len(),
                q,
            });
        }
        Self::from_images(images)
    }

    /// Accepts either cycle notation or an image list.
    pub fn parse(text: &str, q: u32) -> Result<Self> {
        let t = text.trim();
        if t.is_empty() || t.starts_with('(') {
            Self::parse_cycles(t, q)
        } else {
            Self::parse_images(t, q)
        }
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn len(&self) -> u32 {
        self.images.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, i: u32) -> u32 {
        self.images[i as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    /// `other` after `self`: `i -> other(self(i))`.
    pub fn then(&self, other: &Permutation) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::PermutationSize {
                got: other.images.len(),
                q: self.len(),
            });
        }
        Ok(Permutation {
            images: self.images.iter().map(|&i| other.apply(i)).collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v as usize] = i as u32;
        }
        Permutation { images }
    }

    /// Nontrivial cycles, each starting at its smallest index, ordered by
    /// that index.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start as usize] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start as usize] = true;
            let mut cur = self.apply(start);
            while cur != start {
                seen[cur as usize] = true;
                cycle.push(cur);
                cur = self.apply(cur);
            }
            out.push(cycle);
        }
        out
    }
}

fn parse_index(token: &str, q: u32) -> Result<u32> {
    let v: u64 = token
        .parse()
        .map_err(|_| Error::PermutationSyntax(format!("{token:?} is not an index")))?;
    if v >= q as u64 {
        return Err(Error::IndexOutOfRange { index: v, q });
    }
    Ok(v as u32)
}

impl fmt::Display for Permutation {
    /// Cycle notation; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(u32::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}
