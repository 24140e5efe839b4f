//! Blocking sets and complements of periodic sets.
//!
//! A color class of an `S`-polychromatic coloring meets every translate of
//! `S`, and `T` is a complement (`S + T = Z`) exactly when `-T` meets every
//! translate. Together they turn a `k`-coloring into a complement of density
//! at most `1/k`.

use std::fmt;

use serde::Serialize;

use crate::coloring::PeriodicColoring;
use crate::construct::construct_3coloring;
use crate::density::Density;
use crate::error::{Error, Result};
use crate::reduce::{two_coloring, verify_polychromatic};
use crate::search::{pnum_exact_small, pnum_lower_bound, SearchConfig};
use crate::set::{write_list, IntegerSet};
use crate::tiling::{coloring_from_tiling, default_modulus_bound, find_tiling_complement};

/// `{x in Z : x mod n in residues}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PeriodicSet {
    modulus: u64,
    residues: Vec<u64>,
}

impl PeriodicSet {
    /// Residues are sorted and deduplicated; each must be below `modulus`.
    pub fn new(modulus: u64, mut residues: Vec<u64>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::ZeroModulus);
        }
        if let Some(&r) = residues.iter().find(|&&r| r >= modulus) {
            return Err(Error::InvalidConfig(format!(
                "residue {r} is not below {modulus}"
            )));
        }
        residues.sort_unstable();
        residues.dedup();
        Ok(Self { modulus, residues })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn density(&self) -> Density {
        Density::new(self.residues.len() as u64, self.modulus)
    }

    pub fn contains(&self, x: i64) -> bool {
        self.residues
            .binary_search(&(x.rem_euclid(self.modulus as i64) as u64))
            .is_ok()
    }

    /// `-T`.
    pub fn negated(&self) -> Self {
        let n = self.modulus;
        let residues = self.residues.iter().map(|&r| (n - r) % n).collect();
        Self::new(n, residues).expect("residues stay below the modulus")
    }

    /// Membership mask over one period.
    fn mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.modulus as usize];
        for &r in &self.residues {
            mask[r as usize] = true;
        }
        mask
    }
}

impl fmt::Display for PeriodicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} residues=", self.modulus)?;
        write_list(f, &self.residues)
    }
}

/// Minimum-density color class, lowest color on ties.
pub fn blocking_set_from_coloring(set: &IntegerSet, coloring: &PeriodicColoring) -> Result<PeriodicSet> {
    if !verify_polychromatic(set, coloring) {
        return Err(Error::NotPolychromatic);
    }
    let color = (0..coloring.num_colors())
        .min_by_key(|&c| (coloring.class_residues(c).len(), c))
        .expect("at least one color");
    let blocking = PeriodicSet::new(coloring.period(), coloring.class_residues(color))?;
    debug_assert!(verify_blocking(set, &blocking));
    Ok(blocking)
}

/// Whether every translate of `S` meets `T`.
pub fn verify_blocking(set: &IntegerSet, t: &PeriodicSet) -> bool {
    let n = t.modulus();
    let mask = t.mask();
    let offsets = set.residues(n);
    (0..n).all(|x| offsets.iter().any(|&s| mask[((x + s) % n) as usize]))
}

/// `-T`, which is a complement for `S` whenever `T` is blocking for `S`.
pub fn complement_from_blocking(t: &PeriodicSet) -> PeriodicSet {
    t.negated()
}

/// Whether `S + T = Z`.
pub fn verify_complement(set: &IntegerSet, t: &PeriodicSet) -> bool {
    let n = t.modulus();
    let mut hit = vec![false; n as usize];
    for s in set.residues(n) {
        for &r in t.residues() {
            hit[((s + r) % n) as usize] = true;
        }
    }
    hit.into_iter().all(|h| h)
}

/// The coloring with the most colors available for `S`: a tiling coloring
/// when `S` tiles, the 4-set construction, or search.
fn best_coloring(set: &IntegerSet) -> Result<PeriodicColoring> {
    let size = set.len();
    if size == 1 {
        return PeriodicColoring::new(1, vec![0]);
    }
    if size <= 4 {
        if pnum_exact_small(set)? == size as u32 {
            if let Some(witness) = find_tiling_complement(set, default_modulus_bound(set)) {
                return coloring_from_tiling(set, &witness);
            }
        }
        return match size {
            4 => Ok(construct_3coloring(set)?.0),
            _ => two_coloring(set),
        };
    }
    Ok(pnum_lower_bound(set, &SearchConfig::default())?.1)
}

/// A verified complement for `S` and its density, at most `1/k` for the
/// number of colors `k` reached.
///
/// This is an upper bound on the codensity, not its value.
pub fn codensity_upper_bound(set: &IntegerSet) -> Result<(Density, PeriodicSet)> {
    let coloring = best_coloring(set)?;
    let blocking = blocking_set_from_coloring(set, &coloring)?;
    let complement = complement_from_blocking(&blocking);
    if !verify_complement(set, &complement) {
        return Err(Error::InvalidWitness(format!(
            "complement {complement} for {set}"
        )));
    }
    Ok((complement.density(), complement))
}
