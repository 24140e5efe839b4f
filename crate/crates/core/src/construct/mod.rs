//! Verified 3-colorings for every 4-element set.
//!
//! A canonical set `{0, a, b, c}` with `c` below [`SEARCH_THRESHOLD`] is
//! handed to the search. Otherwise, with `m = c - a + b`, the set is
//! congruent mod `m` to a translate of `{0, b - a, b, 2b - a}`, and one of
//! eight explicit patterns colors `Z_m`. Case 1 (`gcd(b, m) = 1` or
//! `gcd(b - a, m) = 1`) multiplies by a unit to reach `{0, 1, g, g + 1}`;
//! case 2 splits `Z_m` into cycles of a common step.

mod multi;
mod single;
pub mod table;

use std::fmt;

use serde::Serialize;

use crate::arith::{gcd, mod_inverse};
use crate::coloring::PeriodicColoring;
use crate::error::{Error, Result};
use crate::reduce::verify_polychromatic;
use crate::search::{lift_canonical, search_coloring, SearchConfig};
use crate::set::{canonicalize, IntegerSet};

pub use multi::{multi_cycle_coloring, odd_triple_decompose, rotation_schedule, CycleDecomposition};
pub use single::{
    s_parameter, single_cycle_g, subcase_1a_coloring, subcase_1b_coloring, subcase_1c_coloring,
    subcase_1d_coloring,
};
pub use table::{frobenius_decompose, BlockTemplate, TEMPLATES};

/// Canonical sets with `c` below this are colored by search.
pub const SEARCH_THRESHOLD: i64 = 289;

/// A canonical 4-set `{0, a, b, c}` with the quantities driving dispatch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ReducedQuad {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub m: i64,
    pub d1: i64,
    pub d2: i64,
}

impl ReducedQuad {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        if !(0 < a && a < b && b < c) {
            return Err(Error::InvalidQuad(format!(
                "need 0 < a < b < c, got {a}, {b}, {c}"
            )));
        }
        if gcd(gcd(a, b), c) != 1 {
            return Err(Error::InvalidQuad(format!("gcd({a}, {b}, {c}) is not 1")));
        }
        let m = c - a + b;
        Ok(Self {
            a,
            b,
            c,
            m,
            d1: gcd(b, m),
            d2: gcd(b - a, m),
        })
    }

    /// The quad of a canonical 4-set.
    pub fn from_set(set: &IntegerSet) -> Result<Self> {
        let e = set.elements();
        if e.len() != 4 {
            return Err(Error::WrongCardinality {
                expected: 4,
                got: e.len(),
            });
        }
        if e[0] != 0 {
            return Err(Error::InvalidQuad(format!("{set} does not start at 0")));
        }
        Self::new(e[1], e[2], e[3])
    }

    /// Step and cross-step of `axis`: `(step, other)`.
    pub fn axis_pair(&self, axis: Axis) -> (i64, i64) {
        match axis {
            Axis::B => (self.b, self.b - self.a),
            Axis::BMinusA => (self.b - self.a, self.b),
        }
    }

    /// `{0, b - a, b, 2b - a}`, a translate of the quad mod `m`.
    pub fn working_set(&self) -> IntegerSet {
        let (x, y) = (self.b - self.a, self.b);
        IntegerSet::new(vec![0, x, y, x + y]).expect("0 < b - a < b")
    }
}

/// Which of `b` and `b - a` plays the distinguished role.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axis {
    B,
    BMinusA,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::B => "b",
            Axis::BMinusA => "b-a",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Subcase {
    #[serde(rename = "small")]
    Small,
    #[serde(rename = "1a")]
    S1a,
    #[serde(rename = "1b")]
    S1b,
    #[serde(rename = "1c")]
    S1c,
    #[serde(rename = "1d")]
    S1d,
    #[serde(rename = "2a")]
    S2a,
    #[serde(rename = "2b")]
    S2b,
    #[serde(rename = "2c")]
    S2c,
    #[serde(rename = "2d")]
    S2d,
}

impl Subcase {
    pub const CONSTRUCTIVE: [Subcase; 8] = [
        Subcase::S1a,
        Subcase::S1b,
        Subcase::S1c,
        Subcase::S1d,
        Subcase::S2a,
        Subcase::S2b,
        Subcase::S2c,
        Subcase::S2d,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Subcase::Small => "small",
            Subcase::S1a => "1a",
            Subcase::S1b => "1b",
            Subcase::S1c => "1c",
            Subcase::S1d => "1d",
            Subcase::S2a => "2a",
            Subcase::S2b => "2b",
            Subcase::S2c => "2c",
            Subcase::S2d => "2d",
        }
    }

    pub fn is_single_cycle(self) -> bool {
        matches!(self, Subcase::S1a | Subcase::S1b | Subcase::S1c | Subcase::S1d)
    }
}

impl fmt::Display for Subcase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// The path that produced a coloring and the parameters that selected it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseTag {
    pub subcase: Subcase,
    /// Modulus of the coloring before the scale is undone.
    pub m: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axis: Option<Axis>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<u64>,
    /// Whether `g` was replaced by `m - g`.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub reflected: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<u64>,
    /// Number of cycles `d1` and their length `e1`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d1: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e1: Option<u64>,
    /// Offset `t` with `c(d1, j) = c(0, j + t)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wrap: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub uvw: Option<(u64, u64, u64)>,
}

impl CaseTag {
    fn new(subcase: Subcase, m: u64) -> Self {
        Self {
            subcase,
            m,
            axis: None,
            g: None,
            reflected: false,
            s: None,
            d1: None,
            e1: None,
            wrap: None,
            uvw: None,
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "case={} m={}", self.subcase, self.m)?;
        if let Some(axis) = self.axis {
            write!(f, " axis={axis}")?;
        }
        if let Some(g) = self.g {
            write!(f, " g={g}")?;
            if self.reflected {
                f.write_str(" reflected")?;
            }
        }
        if let Some(s) = self.s {
            write!(f, " s={s}")?;
        }
        if let (Some(d), Some(e)) = (self.d1, self.e1) {
            write!(f, " d1={d} e1={e}")?;
        }
        if let Some(t) = self.wrap {
            write!(f, " wrap={t}")?;
        }
        if let Some((u, v, w)) = self.uvw {
            write!(f, " u={u} v={v} w={w}")?;
        }
        Ok(())
    }
}

/// Selects the subcase for a quad with `c >= SEARCH_THRESHOLD`.
pub fn dispatch_case(q: &ReducedQuad) -> Result<CaseTag> {
    if q.c < SEARCH_THRESHOLD {
        return Err(Error::BelowThreshold(q.c));
    }
    let m = q.m as u64;
    if q.d1.min(q.d2) == 1 {
        let axis = if q.d1 == 1 { Axis::B } else { Axis::BMinusA };
        let (g, reflected) = single_cycle_g(q, axis)?;
        let s = s_parameter(g, m);
        let subcase = match g {
            2..=4 => Subcase::S1a,
            _ => {
                let delta = m as i64 - 3 * g as i64;
                if [-2, -1, 1, 2, 4, 5].contains(&delta) {
                    Subcase::S1c
                } else if delta == 0 || delta == 3 {
                    Subcase::S1d
                } else if g < 2 * (m / s) {
                    Subcase::S1b
                } else {
                    return Err(Error::ConstructionFailed {
                        subcase: "dispatch".into(),
                        detail: format!("no single-cycle subcase for m={m} g={g} s={s}"),
                    });
                }
            }
        };
        let mut tag = CaseTag::new(subcase, m);
        tag.axis = Some(axis);
        tag.g = Some(g);
        tag.reflected = reflected;
        tag.s = (subcase == Subcase::S1b).then_some(s);
        return Ok(tag);
    }
    let axis = if q.d1 % 3 == 0 || (q.d2 % 3 != 0 && q.d2 < q.d1) {
        Axis::BMinusA
    } else {
        Axis::B
    };
    let (step, other) = q.axis_pair(axis);
    let cycles = CycleDecomposition::new(m, other, step);
    let (d, e) = (cycles.d, cycles.e);
    let subcase = if e % 2 == 0 {
        Subcase::S2a
    } else if d % 2 == 0 {
        Subcase::S2b
    } else if e <= 17 {
        Subcase::S2c
    } else {
        Subcase::S2d
    };
    let mut tag = CaseTag::new(subcase, m);
    tag.axis = Some(axis);
    tag.d1 = Some(d);
    tag.e1 = Some(e);
    tag.wrap = Some(cycles.wrap);
    if subcase == Subcase::S2d {
        tag.uvw = Some(odd_triple_decompose(e)?);
    }
    Ok(tag)
}

/// A 3-coloring of `Z_m` polychromatic for `{0, a, b, c}`, `c >= SEARCH_THRESHOLD`.
pub fn construct_reduced(q: &ReducedQuad) -> Result<(PeriodicColoring, CaseTag)> {
    let tag = dispatch_case(q)?;
    let m = q.m as u64;
    let working = if tag.subcase.is_single_cycle() {
        let g = tag.g.expect("single-cycle tags carry g");
        let psi = match tag.subcase {
            Subcase::S1a => subcase_1a_coloring(g, m)?,
            Subcase::S1b => subcase_1b_coloring(g, m, tag.s.expect("1b carries s"))?,
            Subcase::S1c => subcase_1c_coloring(g, m)?,
            Subcase::S1d => subcase_1d_coloring(g, m)?,
            _ => unreachable!(),
        };
        let (step, _) = q.axis_pair(tag.axis.expect("single-cycle tags carry an axis"));
        let inverse = mod_inverse(step, m).expect("axis step is a unit");
        psi.composed_with_unit(inverse as i64)
    } else {
        multi_cycle_coloring(q, &tag)?
    };
    if !verify_polychromatic(&q.working_set(), &working) {
        return Err(failure(&tag, "working set"));
    }
    // {0, a, b, c} + (b - a) is {0, b - a, b, 2b - a} mod m.
    let coloring = working.shifted(q.b - q.a);
    let set = IntegerSet::new(vec![0, q.a, q.b, q.c]).expect("distinct");
    if !verify_polychromatic(&set, &coloring) {
        return Err(failure(&tag, "reduced set"));
    }
    Ok((coloring, tag))
}

/// Node budget for the search on small sets; witnesses are found well
/// within it.
const SMALL_SEARCH_BUDGET: u64 = 1 << 36;

/// Verified `S`-polychromatic 3-coloring of `Z` for any 4-element `S`.
pub fn construct_3coloring(set: &IntegerSet) -> Result<(PeriodicColoring, CaseTag)> {
    if set.len() != 4 {
        return Err(Error::WrongCardinality {
            expected: 4,
            got: set.len(),
        });
    }
    let canon = canonicalize(set);
    let quad = ReducedQuad::from_set(&canon.set)?;
    let (coloring, tag) = if quad.c < SEARCH_THRESHOLD {
        let config = SearchConfig {
            node_budget: SMALL_SEARCH_BUDGET,
            ..SearchConfig::with_colors(3)
        };
        let outcome = search_coloring(&canon.set, &config)?;
        let (q, coloring) = outcome
            .witness
            .ok_or_else(|| Error::NoWitness(format!("search for {}", canon.set)))?;
        (coloring, CaseTag::new(Subcase::Small, q))
    } else {
        construct_reduced(&quad)?
    };
    let lifted = lift_canonical(set, &coloring);
    if !verify_polychromatic(set, &lifted) {
        return Err(failure(&tag, "original set"));
    }
    Ok((lifted, tag))
}

fn failure(tag: &CaseTag, what: &str) -> Error {
    Error::ConstructionFailed {
        subcase: tag.subcase.label().into(),
        detail: format!("coloring misses a color on the {what} ({tag})"),
    }
}
