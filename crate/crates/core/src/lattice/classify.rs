//! Polychromatic numbers of 3- and 4-point sets in `Z^d`.

use std::fmt;

use serde::Serialize;

use super::linalg::Echelon;
use super::{collinear_structure, Collinearity, LatticeSet};
use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::search::pnum_exact_small;
use crate::set::IntegerSet;
use crate::tiling::newman_tiles;

/// Whether the nonzero points of `S` (which must contain 0) are linearly
/// independent, in which case `S` tiles `Z^d`.
pub fn tiles_if_independent(set: &LatticeSet) -> Result<bool> {
    let origin = vec![0; set.dim()];
    if !set.contains(&origin) {
        return Err(Error::MissingOrigin);
    }
    if set.len() - 1 > set.dim() {
        return Err(Error::TooLarge {
            max: set.dim() + 1,
            got: set.len(),
        });
    }
    let nonzero: Vec<Vec<i64>> = set.points().iter().filter(|p| **p != origin).cloned().collect();
    Ok(Echelon::new(set.dim(), &nonzero).rank() == nonzero.len())
}

/// Tiling of `Z^d` by a set `{0, s_1, ..., s_j}` with independent `s_i`.
///
/// Each `v` is `r + sum_i beta_i s_i` with `r` a fixed representative of its
/// coset of `H = <s_1, ..., s_j>`; the coloring
/// `sum_i i beta_i mod (j + 1)` gives `v + s_i` the color of `v` plus `i`,
/// and its color-0 class is the complement.
#[derive(Debug, Clone)]
pub struct IndependentTiling {
    set: LatticeSet,
    // generator index (1-based) of each nonzero point, in echelon order
    generators: Vec<Vec<i64>>,
    echelon: Echelon,
}

impl IndependentTiling {
    pub fn new(set: &LatticeSet) -> Result<Self> {
        if !tiles_if_independent(set)? {
            return Err(Error::InvalidConfig(format!("{set} has dependent points")));
        }
        let origin = vec![0; set.dim()];
        let generators: Vec<Vec<i64>> = set.points().iter().filter(|p| **p != origin).cloned().collect();
        let echelon = Echelon::new(set.dim(), &generators);
        Ok(Self {
            set: set.clone(),
            generators,
            echelon,
        })
    }

    pub fn set(&self) -> &LatticeSet {
        &self.set
    }

    /// The nonzero points in the order that defines the color weights.
    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn num_colors(&self) -> u32 {
        self.set.len() as u32
    }

    pub fn color(&self, v: &[i64]) -> u32 {
        let (_, alpha) = self.echelon.reduce(v);
        let beta = self.echelon.generator_coefficients(&alpha);
        let m = self.num_colors() as i64;
        beta.iter()
            .enumerate()
            .map(|(i, &b)| (i as i64 + 1) * b)
            .sum::<i64>()
            .rem_euclid(m) as u32
    }

    pub fn in_complement(&self, v: &[i64]) -> bool {
        self.color(v) == 0
    }

    /// Every `v` in `[-radius, radius]^d` is `s + t` for exactly one
    /// `s in S` and `t` in the complement.
    pub fn verify_window(&self, radius: i64) -> bool {
        let d = self.set.dim();
        let side = (2 * radius + 1) as u64;
        let total = side.pow(d as u32);
        (0..total).all(|mut index| {
            let v: Vec<i64> = (0..d)
                .map(|_| {
                    let x = (index % side) as i64 - radius;
                    index /= side;
                    x
                })
                .collect();
            let hits = self
                .set
                .points()
                .iter()
                .filter(|s| {
                    let t: Vec<i64> = v.iter().zip(s.iter()).map(|(a, b)| a - b).collect();
                    self.in_complement(&t)
                })
                .count();
            hits == 1
        })
    }
}

/// `p` of an all-collinear set: that of its parameter set in `Z`.
pub fn pnum_collinear(set: &LatticeSet) -> Result<u32> {
    if set.len() > 4 {
        return Err(Error::TooLarge {
            max: 4,
            got: set.len(),
        });
    }
    match collinear_structure(set)? {
        Collinearity::AllCollinear { params, .. } => pnum_exact_small(&IntegerSet::new(params)?),
        _ => Err(Error::NotCollinear),
    }
}

/// A periodic tiling of `Z^2`: the complement is a set of residues of
/// `Z_{n1} x Z_{n2}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorusTiling {
    pub n1: u64,
    pub n2: u64,
    pub complement: Vec<(u64, u64)>,
}

impl TorusTiling {
    pub fn verify(&self, points: &[Vec<i64>]) -> bool {
        let (n1, n2) = (self.n1 as i64, self.n2 as i64);
        let mut hits = vec![0u32; (n1 * n2) as usize];
        for &(x, y) in &self.complement {
            for p in points {
                let cx = (x as i64 + p[0]).rem_euclid(n1);
                let cy = (y as i64 + p[1]).rem_euclid(n2);
                hits[(cx * n2 + cy) as usize] += 1;
            }
        }
        hits.into_iter().all(|h| h == 1)
    }
}

impl fmt::Display for TorusTiling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}x{} T=", self.n1, self.n2)?;
        for (i, (x, y)) in self.complement.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "({x},{y})")?;
        }
        Ok(())
    }
}

/// Smallest-area tiling of `Z^2` by `points` with a rectangular period
/// `n1 x n2`, `n1 n2 <= max_area`.
pub fn torus_tiling(points: &[Vec<i64>], max_area: u64) -> Option<TorusTiling> {
    let k = points.len() as u64;
    let mut shapes: Vec<(u64, u64)> = (1..=max_area)
        .flat_map(|n1| (1..=max_area / n1).map(move |n2| (n1, n2)))
        .filter(|&(n1, n2)| (n1 * n2) % k == 0)
        .collect();
    shapes.sort_by_key(|&(n1, n2)| (n1 * n2, n1));
    shapes.into_iter().find_map(|(n1, n2)| {
        let cell = |p: &[i64]| (p[0].rem_euclid(n1 as i64) * n2 as i64 + p[1].rem_euclid(n2 as i64)) as usize;
        let offsets: Vec<usize> = points.iter().map(|p| cell(p)).collect();
        let mut distinct = offsets.clone();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() != offsets.len() {
            return None;
        }
        let area = (n1 * n2) as usize;
        let add = |a: usize, b: usize| {
            let (ax, ay, bx, by) = (a / n2 as usize, a % n2 as usize, b / n2 as usize, b % n2 as usize);
            ((ax + bx) % n1 as usize) * n2 as usize + (ay + by) % n2 as usize
        };
        let neg = |a: usize| {
            let (ax, ay) = (a / n2 as usize, a % n2 as usize);
            ((n1 as usize - ax) % n1 as usize) * n2 as usize + (n2 as usize - ay) % n2 as usize
        };
        let mut covered = vec![false; area];
        let mut chosen = Vec::new();
        if !cover(&offsets, &add, &neg, &mut covered, &mut chosen) {
            return None;
        }
        let mut complement: Vec<(u64, u64)> = chosen
            .into_iter()
            .map(|t| ((t / n2 as usize) as u64, (t % n2 as usize) as u64))
            .collect();
        complement.sort_unstable();
        Some(TorusTiling { n1, n2, complement })
    })
}

fn cover(
    offsets: &[usize],
    add: &impl Fn(usize, usize) -> usize,
    neg: &impl Fn(usize) -> usize,
    covered: &mut [bool],
    chosen: &mut Vec<usize>,
) -> bool {
    let Some(r) = covered.iter().position(|&c| !c) else {
        return true;
    };
    for &s in offsets {
        let t = add(r, neg(s));
        if offsets.iter().any(|&o| covered[add(t, o)]) {
            continue;
        }
        for &o in offsets {
            covered[add(t, o)] = true;
        }
        chosen.push(t);
        if cover(offsets, add, neg, covered, chosen) {
            return true;
        }
        chosen.pop();
        for &o in offsets {
            covered[add(t, o)] = false;
        }
        if r == 0 {
            // Up to translation, 0 is covered through the first offset.
            break;
        }
    }
    false
}

/// Why a value was returned.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Certificate {
    /// All points collinear; the value is `p` of the parameter set.
    Collinear { params: Vec<i64> },
    /// Linearly independent differences.
    Independent,
    /// A homomorphism from the group generated by the differences onto `Z`,
    /// given on its echelon coordinates, maps `S` onto a set that tiles.
    LineTiling { functional: Vec<i64>, image: Vec<i64> },
    /// A periodic tiling of the group generated by the differences.
    TorusTiling(TorusTiling),
    /// No tiling found within the bounds; 3 is a lower bound.
    TilingUnknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZdPnum {
    pub value: u32,
    pub exact: bool,
    pub certificate: Certificate,
}

impl fmt::Display for ZdPnum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={}", self.value)?;
        match &self.certificate {
            Certificate::Collinear { params } => {
                write!(f, " via=collinear params=")?;
                crate::set::write_list(f, params)
            }
            Certificate::Independent => write!(f, " via=independent"),
            Certificate::LineTiling { functional, image } => {
                write!(f, " via=line-tiling functional=")?;
                crate::set::write_list(f, functional)?;
                write!(f, " image=")?;
                crate::set::write_list(f, image)
            }
            Certificate::TorusTiling(t) => write!(f, " via=torus-tiling {t}"),
            Certificate::TilingUnknown => write!(f, " exact=false tiling=unknown"),
        }
    }
}

/// Functionals searched on the echelon coordinates, per coordinate.
const FUNCTIONAL_RADIUS: i64 = 8;
/// Largest fundamental-domain area of the torus tiling search.
const TORUS_AREA: u64 = 64;

fn exact(value: u32, certificate: Certificate) -> ZdPnum {
    ZdPnum {
        value,
        exact: true,
        certificate,
    }
}

/// Image of `coords` under `phi`, if injective.
fn line_image(coords: &[Vec<i64>], phi: &[i64]) -> Option<IntegerSet> {
    let image: Vec<i64> = coords
        .iter()
        .map(|c| c.iter().zip(phi).map(|(a, b)| a * b).sum())
        .collect();
    IntegerSet::new(image).ok()
}

fn line_tiling(coords: &[Vec<i64>], phi: Vec<i64>) -> Option<ZdPnum> {
    let image = line_image(coords, &phi)?;
    newman_tiles(&image).ok()?.then(|| {
        exact(
            4,
            Certificate::LineTiling {
                functional: phi,
                image: image.elements().to_vec(),
            },
        )
    })
}

/// For `{0, a u, b u, s}` with `u, s` a basis of `Z^2`: the functional
/// mapping the set onto a translate of `{0, a', b', a' + b'}` with `a', b'`
/// of different parity.
fn three_collinear_functional(coords: &[Vec<i64>]) -> Option<Vec<i64>> {
    let n = coords.len();
    let (i, j, k) = (0..n)
        .flat_map(|i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| (i, j, k))))
        .find(|&(i, j, k)| super::collinear(&coords[i], &coords[j], &coords[k]))?;
    let off = (0..n).find(|&x| x != i && x != j && x != k)?;
    let rel = |p: &[i64], q: &[i64]| -> Vec<i64> { p.iter().zip(q).map(|(a, b)| a - b).collect() };
    let d1 = rel(&coords[j], &coords[i]);
    let d2 = rel(&coords[k], &coords[i]);
    let g = gcd(d1[0], d1[1]);
    let u = [d1[0] / g, d1[1] / g];
    // Parameters along u relative to point i.
    let along = |v: &[i64]| if u[0] != 0 { v[0] / u[0] } else { v[1] / u[1] };
    let mut params = [0, along(&d1), along(&d2)];
    params.sort_unstable();
    let base = params[0];
    let (a, b) = (params[1] - base, params[2] - base);
    let s = rel(&coords[off], &coords[i]);
    // Relative to point i the triple sits at base + {0, a, b} along u.
    // Case +1: phi(u) = 1 and phi(s) = base + a + b give base + {0, a, b, a + b}.
    // Case -1 (a, b odd): phi(u) = -1 and phi(s) = b - a - base give, after
    // translating by base + b, {0, b - a, b, 2b - a}.
    let (sign, target) = if (a + b) % 2 != 0 {
        (1, base + a + b)
    } else {
        (-1, b - a - base)
    };
    let det = u[0] * s[1] - u[1] * s[0];
    if det.abs() != 1 {
        return None;
    }
    // Solve [u; s] phi = [sign; target].
    let phi0 = (sign * s[1] - target * u[1]) * det;
    let phi1 = (target * u[0] - sign * s[0]) * det;
    Some(vec![phi0, phi1])
}

/// `p` of a 3- or 4-point set in `Z^d`.
pub fn pnum_zd_small(set: &LatticeSet) -> Result<ZdPnum> {
    let n = set.len();
    if !(3..=4).contains(&n) {
        return Err(Error::WrongCardinality { expected: 4, got: n });
    }
    let structure = collinear_structure(set)?;
    if let Collinearity::AllCollinear { params, .. } = &structure {
        let value = pnum_exact_small(&IntegerSet::new(params.clone())?)?;
        return Ok(exact(
            value,
            Certificate::Collinear {
                params: params.clone(),
            },
        ));
    }
    let based = set.based();
    let echelon = Echelon::new(set.dim(), &based.differences());
    let rank = echelon.rank();
    if rank == n - 1 {
        return Ok(exact(n as u32, Certificate::Independent));
    }
    // n = 4 and the differences span a rank-2 group H, identified with Z^2.
    let coords: Vec<Vec<i64>> = based
        .points()
        .iter()
        .map(|p| echelon.coordinates(p).expect("points lie in H"))
        .collect();
    if let Collinearity::ExactlyCollinear(_) = structure {
        if let Some(found) = three_collinear_functional(&coords).and_then(|phi| line_tiling(&coords, phi)) {
            return Ok(found);
        }
    }
    for r in 1..=FUNCTIONAL_RADIUS {
        for x in -r..=r {
            for y in 0..=r {
                if x.abs().max(y) != r || gcd(x, y) != 1 || (y == 0 && x < 0) {
                    continue;
                }
                if let Some(found) = line_tiling(&coords, vec![x, y]) {
                    return Ok(found);
                }
            }
        }
    }
    if let Some(t) = torus_tiling(&coords, TORUS_AREA) {
        debug_assert!(t.verify(&coords));
        return Ok(exact(4, Certificate::TorusTiling(t)));
    }
    if let Collinearity::ExactlyCollinear(_) = structure {
        return Err(Error::NoWitness(format!("no line tiling for {set}")));
    }
    Ok(ZdPnum {
        value: 3,
        exact: false,
        certificate: Certificate::TilingUnknown,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ls(s: &str) -> LatticeSet {
        s.parse().unwrap()
    }

    #[test]
    fn independence() {
        assert!(tiles_if_independent(&ls("(0,0);(1,0);(0,1)")).unwrap());
        assert!(!tiles_if_independent(&ls("(0,0);(1,1);(2,2)")).unwrap());
        assert!(tiles_if_independent(&ls("(0,0);(2,1);(1,2)")).unwrap());
        assert!(tiles_if_independent(&ls("(1,0);(0,1)")).is_err());
        assert!(tiles_if_independent(&ls("(0,0);(1,0);(0,1);(1,1)")).is_err());
    }

    #[test]
    fn independent_complements() {
        for s in [
            "(0,0);(2,1);(1,2)",
            "(0,0,0);(1,2,0);(0,1,3);(5,0,1)",
            "(0,0,0);(2,0,0);(0,3,1)",
        ] {
            let t = IndependentTiling::new(&ls(s)).unwrap();
            assert!(t.verify_window(4), "{s}");
        }
    }

    #[test]
    fn collinear_values() {
        assert_eq!(pnum_collinear(&ls("(0,0);(1,1);(5,5)")).unwrap(), 3);
        assert_eq!(pnum_collinear(&ls("(0,0);(1,1);(3,3)")).unwrap(), 2);
        assert_eq!(pnum_collinear(&ls("(0,0);(1,0);(2,0);(3,0)")).unwrap(), 4);
        assert!(pnum_collinear(&ls("(0,0);(1,0);(0,1)")).is_err());
    }

    #[test]
    fn small_sets() {
        let p = pnum_zd_small(&ls("(0,0);(1,0);(0,1);(1,2)")).unwrap();
        assert_eq!((p.value, p.exact), (3, false));
        let p = pnum_zd_small(&ls("(0,0);(1,0);(0,1);(1,1)")).unwrap();
        assert_eq!((p.value, p.exact), (4, true));
        let p = pnum_zd_small(&ls("(0,0);(1,0);(2,0);(0,1)")).unwrap();
        assert_eq!((p.value, p.exact), (4, true));
        assert_eq!(pnum_zd_small(&ls("(0,0);(1,0);(0,1)")).unwrap().value, 3);
        assert_eq!(pnum_zd_small(&ls("(0,0);(1,1);(3,3)")).unwrap().value, 2);
        assert_eq!(
            pnum_zd_small(&ls("(0,0,0);(1,0,0);(0,1,0);(0,0,1)"))
                .unwrap()
                .value,
            4
        );
    }

    #[test]
    fn exactly_three_collinear_always_four() {
        for (a, b) in [(1i64, 2i64), (1, 3), (2, 3), (3, 5), (1, 7), (4, 9)] {
            for s in [[0i64, 1], [2, 1], [-3, 1], [5, 2], [1, 3]] {
                let set = LatticeSet::new(vec![vec![0, 0], vec![a, 0], vec![b, 0], s.to_vec()]).unwrap();
                let p = pnum_zd_small(&set).unwrap();
                assert_eq!((p.value, p.exact), (4, true), "{set}");
            }
        }
    }

    #[test]
    fn torus_examples() {
        let square = vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]];
        let t = torus_tiling(&square, 16).unwrap();
        assert!(t.verify(&square));
        assert_eq!(t.n1 * t.n2, 4);
        let skew = vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 2]];
        assert!(torus_tiling(&skew, 64).is_none());
    }
}
