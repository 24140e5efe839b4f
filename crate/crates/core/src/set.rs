use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, modulo};
use crate::error::{Error, Result};

/// A finite, nonempty set of integers kept in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct IntegerSet {
    elements: Vec<i64>,
}

impl IntegerSet {
    /// Builds a set from distinct integers in any order.
    pub fn new(mut elements: Vec<i64>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::EmptySet);
        }
        elements.sort_unstable();
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateElement(w[0]));
        }
        Ok(Self { elements })
    }

    /// Builds a set from arbitrary integers, collapsing repeats.
    pub fn collapsing<I: IntoIterator<Item = i64>>(iter: I) -> Result<Self> {
        let mut elements: Vec<i64> = iter.into_iter().collect();
        if elements.is_empty() {
            return Err(Error::EmptySet);
        }
        elements.sort_unstable();
        elements.dedup();
        Ok(Self { elements })
    }

    pub fn elements(&self) -> &[i64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn min(&self) -> i64 {
        self.elements[0]
    }

    pub fn max(&self) -> i64 {
        *self.elements.last().unwrap()
    }

    pub fn diameter(&self) -> i64 {
        self.max() - self.min()
    }

    pub fn contains(&self, x: i64) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        self.elements.iter().copied()
    }

    /// `t + S`.
    pub fn shifted(&self, t: i64) -> Self {
        Self {
            elements: self.elements.iter().map(|&x| x + t).collect(),
        }
    }

    /// `-S`.
    pub fn negated(&self) -> Self {
        Self {
            elements: self.elements.iter().rev().map(|&x| -x).collect(),
        }
    }

    /// Residues of the elements modulo `q`, sorted, repeats collapsed.
    pub fn residues(&self, q: u64) -> Vec<u64> {
        let mut r: Vec<u64> = self.elements.iter().map(|&x| modulo(x, q)).collect();
        r.sort_unstable();
        r.dedup();
        r
    }

    /// Whether reduction modulo `q` keeps all elements distinct.
    pub fn injective_mod(&self, q: u64) -> bool {
        self.residues(q).len() == self.len()
    }

    /// All subsets of the given size, in lexicographic order of positions.
    pub fn subsets(&self, size: usize) -> Vec<IntegerSet> {
        let n = self.len();
        let mut out = Vec::new();
        if size == 0 || size > n {
            return out;
        }
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            out.push(IntegerSet {
                elements: idx.iter().map(|&i| self.elements[i]).collect(),
            });
            let mut i = size;
            while i > 0 && idx[i - 1] == n - size + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
        out
    }
}

impl TryFrom<Vec<i64>> for IntegerSet {
    type Error = Error;

    fn try_from(v: Vec<i64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<IntegerSet> for Vec<i64> {
    fn from(s: IntegerSet) -> Self {
        s.elements
    }
}

impl fmt::Display for IntegerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.elements)
    }
}

/// Comma-separated integers, e.g. `0,1,3,7`.
impl FromStr for IntegerSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let elements = parse_int_list(s)?;
        Self::new(elements)
    }
}

pub(crate) fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    s.split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<i64>()
                .map_err(|_| Error::Parse(format!("not an integer: {tok:?}")))
        })
        .collect()
}

pub(crate) fn write_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

/// Translate-and-scale normal form of an integer set.
///
/// `original = shift + scale * elements`, `elements[0] = 0` and the nonzero
/// elements have gcd 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalSet {
    pub set: IntegerSet,
    pub scale: i64,
    pub shift: i64,
}

impl CanonicalSet {
    pub fn elements(&self) -> &[i64] {
        self.set.elements()
    }

    /// Maps a canonical element back to the original set.
    pub fn lift(&self, x: i64) -> i64 {
        self.shift + self.scale * x
    }
}

/// Normal form used before search or construction; translation and scaling
/// preserve the polychromatic number.
pub fn canonicalize(set: &IntegerSet) -> CanonicalSet {
    let shift = set.min();
    let scale = set.iter().map(|x| x - shift).fold(0, gcd).max(1);
    let elements = set.iter().map(|x| (x - shift) / scale).collect();
    CanonicalSet {
        set: IntegerSet { elements },
        scale,
        shift,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[i64]) -> IntegerSet {
        IntegerSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn canonical_forms() {
        let c = canonicalize(&set(&[6, 8, 10, 14]));
        assert_eq!(c.elements(), &[0, 1, 2, 4]);
        assert_eq!((c.scale, c.shift), (2, 6));

        let c = canonicalize(&set(&[0, 1, 5]));
        assert_eq!(c.elements(), &[0, 1, 5]);
        assert_eq!((c.scale, c.shift), (1, 0));

        let c = canonicalize(&set(&[-3, 0, 9]));
        assert_eq!(c.elements(), &[0, 1, 4]);
        assert_eq!((c.scale, c.shift), (3, -3));

        let c = canonicalize(&set(&[7]));
        assert_eq!(c.elements(), &[0]);
        assert_eq!((c.scale, c.shift), (1, 7));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(IntegerSet::new(vec![]), Err(Error::EmptySet));
        assert_eq!(IntegerSet::new(vec![3, 1, 3]), Err(Error::DuplicateElement(3)));
        assert!("0,1,x".parse::<IntegerSet>().is_err());
        assert_eq!("-3, 0,9".parse::<IntegerSet>().unwrap(), set(&[-3, 0, 9]));
    }

    #[test]
    fn subsets_enumerate_all() {
        let s = set(&[0, 1, 3, 7]);
        assert_eq!(s.subsets(2).len(), 6);
        assert_eq!(s.subsets(4), vec![s.clone()]);
        assert_eq!(s.subsets(3)[0], set(&[0, 1, 3]));
        assert!(s.subsets(5).is_empty());
    }
}
