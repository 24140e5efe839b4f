//! Translational tilings of `Z`: Newman's criterion for prime-power
//! cardinalities, periodic exact-cover search, and the correspondence between
//! tilings and `|S|`-color polychromatic colorings.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::arith::{modulo, prime_power, valuation};
use crate::coloring::PeriodicColoring;
use crate::error::{Error, Result};
use crate::reduce::verify_polychromatic;
use crate::set::IntegerSet;

/// Certificate that `S ⊕ (T + nZ) = Z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TilingWitness {
    pub modulus: u64,
    /// Residues of the complement in `[0, modulus)`, ascending.
    pub complement: Vec<u64>,
}

impl TilingWitness {
    /// Exact-cover check: every residue of `Z_n` is `s + t` in exactly one way.
    pub fn verify(&self, set: &IntegerSet) -> bool {
        let n = self.modulus;
        if n == 0 || set.len() as u64 * self.complement.len() as u64 != n {
            return false;
        }
        let mut hits = vec![0u32; n as usize];
        for &t in &self.complement {
            if t >= n {
                return false;
            }
            for s in set.iter() {
                hits[modulo(s + t as i64, n) as usize] += 1;
            }
        }
        hits.iter().all(|&h| h == 1)
    }
}

impl std::fmt::Display for TilingWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "n={} T=", self.modulus)?;
        crate::set::write_list(f, &self.complement)
    }
}

/// `p`-adic valuations of all pairwise differences, with `|S| = p^alpha`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValuationProfile {
    pub prime: u64,
    pub alpha: u32,
    pub valuations: BTreeSet<u32>,
}

impl ValuationProfile {
    pub fn of(set: &IntegerSet) -> Result<Self> {
        let (prime, alpha) = prime_power(set.len() as u64).ok_or(Error::NotPrimePower(set.len()))?;
        let e = set.elements();
        let mut valuations = BTreeSet::new();
        for i in 0..e.len() {
            for j in i + 1..e.len() {
                valuations.insert(valuation(e[j] - e[i], prime));
            }
        }
        Ok(Self {
            prime,
            alpha,
            valuations,
        })
    }

    pub fn tiles(&self) -> bool {
        self.valuations.len() <= self.alpha as usize
    }
}

/// Newman's criterion: for `|S| = p^alpha`, `S` tiles `Z` iff the pairwise
/// differences take at most `alpha` distinct `p`-adic valuations.
pub fn newman_tiles(set: &IntegerSet) -> Result<bool> {
    Ok(ValuationProfile::of(set)?.tiles())
}

/// Default search bound `max(4 diam |S|, |S| (diam + 1))`.
pub fn default_modulus_bound(set: &IntegerSet) -> u64 {
    let n = set.len() as u64;
    let diam = set.diameter() as u64;
    (4 * diam * n).max(n * (diam + 1))
}

/// Smallest periodic tiling complement with modulus at most `n_max`.
///
/// Moduli are the multiples of `|S|` on which reduction mod `n` is injective.
/// `None` only means no tiling with such a period exists up to `n_max`.
pub fn find_tiling_complement(set: &IntegerSet, n_max: u64) -> Option<TilingWitness> {
    let size = set.len() as u64;
    (size..=n_max).step_by(size as usize).find_map(|n| {
        if !set.injective_mod(n) {
            return None;
        }
        let offsets: Vec<usize> = set.iter().map(|x| modulo(x - set.min(), n) as usize).collect();
        let translates = exact_cover_cyclic(&offsets, n as usize)?;
        let mut complement: Vec<u64> = translates
            .into_iter()
            .map(|t| modulo(t as i64 - set.min(), n))
            .collect();
        complement.sort_unstable();
        let witness = TilingWitness {
            modulus: n,
            complement,
        };
        debug_assert!(witness.verify(set));
        Some(witness)
    })
}

/// Exact cover of `Z_n` by translates of `offsets` (distinct residues, the
/// first one 0). Returns the translation amounts.
fn exact_cover_cyclic(offsets: &[usize], n: usize) -> Option<Vec<usize>> {
    let mut covered = vec![false; n];
    let mut chosen = Vec::with_capacity(n / offsets.len());
    if cover_from(offsets, n, 0, &mut covered, &mut chosen) {
        Some(chosen)
    } else {
        None
    }
}

fn cover_from(
    offsets: &[usize],
    n: usize,
    start: usize,
    covered: &mut [bool],
    chosen: &mut Vec<usize>,
) -> bool {
    let Some(r) = (start..n).find(|&r| !covered[r]) else {
        return true;
    };
    // Up to translation of the whole tiling, 0 is covered through offset 0.
    let candidates = if r == 0 { &offsets[..1] } else { offsets };
    for &s in candidates {
        let t = (r + n - s) % n;
        let fits = offsets.iter().all(|&o| !covered[(t + o) % n]);
        if !fits {
            continue;
        }
        for &o in offsets {
            covered[(t + o) % n] = true;
        }
        chosen.push(t);
        if cover_from(offsets, n, r + 1, covered, chosen) {
            return true;
        }
        chosen.pop();
        for &o in offsets {
            covered[(t + o) % n] = false;
        }
    }
    false
}

/// Colors `s_i + t` with `i`, the index of `s_i` in ascending order.
pub fn coloring_from_tiling(set: &IntegerSet, witness: &TilingWitness) -> Result<PeriodicColoring> {
    if !witness.verify(set) {
        return Err(Error::InvalidWitness(format!("{witness} for {set}")));
    }
    let n = witness.modulus;
    let mut word = vec![0u32; n as usize];
    for &t in &witness.complement {
        for (i, s) in set.iter().enumerate() {
            word[modulo(s + t as i64, n) as usize] = i as u32;
        }
    }
    PeriodicColoring::new(set.len() as u32, word)
}

/// The residues of color 0 in a polychromatic `|S|`-coloring form a tiling
/// complement.
pub fn tiling_from_coloring(set: &IntegerSet, coloring: &PeriodicColoring) -> Result<TilingWitness> {
    if coloring.num_colors() as usize != set.len() {
        return Err(Error::ColorCountMismatch {
            expected: set.len() as u32,
            got: coloring.num_colors(),
        });
    }
    if !verify_polychromatic(set, coloring) {
        return Err(Error::NotPolychromatic);
    }
    let witness = TilingWitness {
        modulus: coloring.period(),
        complement: coloring.class_residues(0),
    };
    if !witness.verify(set) {
        return Err(Error::InvalidWitness(witness.to_string()));
    }
    Ok(witness)
}

/// Whether an `S`-polychromatic `|S|`-coloring is also `(-S)`-polychromatic.
pub fn neg_set_coloring_check(set: &IntegerSet, coloring: &PeriodicColoring) -> bool {
    verify_polychromatic(&set.negated(), coloring)
}

/// Size of the largest tiling subset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TValue {
    pub value: usize,
    /// `false` when some larger subset could not be decided and the value
    /// is only a lower bound.
    pub exact: bool,
}

/// Largest `|S'|` over subsets `S' ⊆ S` that tile `Z`.
///
/// Prime-power sizes are decided by Newman's criterion; other sizes use the
/// bounded complement search and make the answer a lower bound when nothing
/// is found.
pub fn t_value(set: &IntegerSet) -> TValue {
    let mut exact = true;
    for size in (2..=set.len()).rev() {
        for sub in set.subsets(size) {
            let tiles = match newman_tiles(&sub) {
                Ok(t) => t,
                Err(_) => {
                    let found = find_tiling_complement(&sub, default_modulus_bound(&sub)).is_some();
                    if !found {
                        exact = false;
                    }
                    found
                }
            };
            if tiles {
                return TValue { value: size, exact };
            }
        }
    }
    TValue { value: 1, exact }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[i64]) -> IntegerSet {
        IntegerSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn newman_examples() {
        assert!(newman_tiles(&set(&[0, 1, 5])).unwrap());
        assert!(!newman_tiles(&set(&[0, 1, 2, 4])).unwrap());
        assert!(newman_tiles(&set(&[0, 1, 2, 3])).unwrap());
        assert!(!newman_tiles(&set(&[0, 1, 3])).unwrap());
        let p = ValuationProfile::of(&set(&[0, 1, 2, 4])).unwrap();
        assert_eq!((p.prime, p.alpha), (2, 2));
        assert_eq!(p.valuations, BTreeSet::from([0, 1, 2]));
        assert_eq!(
            newman_tiles(&set(&[0, 1, 2, 3, 4, 5])),
            Err(Error::NotPrimePower(6))
        );
    }

    #[test]
    fn complement_search() {
        let w = find_tiling_complement(&set(&[0, 1, 5]), 12).unwrap();
        assert_eq!(
            w,
            TilingWitness {
                modulus: 3,
                complement: vec![0]
            }
        );

        let w = find_tiling_complement(&set(&[0, 2]), 20).unwrap();
        assert_eq!(
            w,
            TilingWitness {
                modulus: 4,
                complement: vec![0, 1]
            }
        );
        assert!(find_tiling_complement(&set(&[0, 1, 3]), 60).is_none());

        let w = find_tiling_complement(&set(&[3, 4, 8]), 12).unwrap();
        assert!(w.verify(&set(&[3, 4, 8])));
        let w = find_tiling_complement(&set(&[9]), 5).unwrap();
        assert_eq!(
            w,
            TilingWitness {
                modulus: 1,
                complement: vec![0]
            }
        );
    }

    #[test]
    fn witnesses_and_colorings() {
        let w = TilingWitness {
            modulus: 3,
            complement: vec![0],
        };
        let c = coloring_from_tiling(&set(&[0, 1, 5]), &w).unwrap();
        assert_eq!(c.word(), &[0, 1, 2]);
        let w2 = tiling_from_coloring(&set(&[0, 1, 5]), &c).unwrap();
        assert_eq!(w2, w);

        let c = coloring_from_tiling(
            &set(&[0, 1]),
            &TilingWitness {
                modulus: 2,
                complement: vec![0],
            },
        )
        .unwrap();
        assert_eq!(c.word(), &[0, 1]);

        let s = set(&[0, 1, 2, 3]);
        let c = coloring_from_tiling(
            &s,
            &TilingWitness {
                modulus: 4,
                complement: vec![0],
            },
        )
        .unwrap();
        assert_eq!(c.word(), &[0, 1, 2, 3]);
        assert_eq!(
            tiling_from_coloring(&s, &c).unwrap(),
            TilingWitness {
                modulus: 4,
                complement: vec![0]
            }
        );

        let bad = TilingWitness {
            modulus: 4,
            complement: vec![0],
        };
        assert!(coloring_from_tiling(&set(&[0, 1, 5]), &bad).is_err());
        let two = PeriodicColoring::from_digits(2, "01").unwrap();
        assert!(tiling_from_coloring(&set(&[0, 1, 5]), &two).is_err());
        let not_poly = PeriodicColoring::from_digits(3, "012").unwrap();
        assert_eq!(
            tiling_from_coloring(&set(&[0, 1, 3]), &not_poly),
            Err(Error::NotPolychromatic)
        );
    }

    #[test]
    fn negated_sets() {
        let c = PeriodicColoring::from_digits(3, "012").unwrap();
        assert!(neg_set_coloring_check(&set(&[0, 1, 5]), &c));
        let c = PeriodicColoring::from_digits(2, "01").unwrap();
        assert!(neg_set_coloring_check(&set(&[0, 1]), &c));
    }

    #[test]
    fn t_values() {
        assert_eq!(
            t_value(&set(&[0, 1, 3, 7])),
            TValue {
                value: 2,
                exact: true
            }
        );
        assert_eq!(
            t_value(&set(&[0, 1, 2, 3])),
            TValue {
                value: 4,
                exact: true
            }
        );
        assert_eq!(
            t_value(&set(&[0])),
            TValue {
                value: 1,
                exact: true
            }
        );
        let t = t_value(&set(&[0, 1, 2, 3, 4, 5]));
        assert_eq!(t.value, 6);
    }
}
