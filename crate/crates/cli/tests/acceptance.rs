//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use polytile::arith::{gcd, prime_power};
use polytile::codensity::{complement_from_blocking, verify_blocking, verify_complement, PeriodicSet};
use polytile::construct::{CycleDecomposition, TEMPLATES};
use polytile::lattice::{
    alternating_block_coloring, cross_coloring, cross_set, pnum_zd_small, semicross_coloring, semicross_set,
    LatticeSet,
};
use polytile::search::{pnum_exact_small, pnum_lower_bound, SearchConfig};
use polytile::tiling::{
    coloring_from_tiling, default_modulus_bound, find_tiling_complement, neg_set_coloring_check,
    newman_tiles, t_value, tiling_from_coloring, TilingWitness,
};
use polytile::{two_coloring, Execution, IntegerSet, PeriodicColoring};
use polytile_cli::run;

const SEED: u64 = 0x5eed_2024;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn cli(args: &[&str]) -> polytile_cli::Output {
    run(std::iter::once("polytile").chain(args.iter().copied()))
}

fn set(v: &[i64]) -> IntegerSet {
    IntegerSet::new(v.to_vec()).unwrap()
}

fn list(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

/// Direct check over one period: every translate `n + S` sees all `k` colors.
fn windows_ok(elements: &[i64], k: u32, word: &[u32]) -> bool {
    let m = word.len() as i64;
    (0..m).all(|n| {
        let mut seen = 0u64;
        for &s in elements {
            seen |= 1 << word[(n + s).rem_euclid(m) as usize];
        }
        seen == (1u64 << k) - 1
    })
}

/// Whether `S + T` covers `Z_n`.
fn covers(elements: &[i64], n: u64, residues: &[u64]) -> bool {
    let mut hit = vec![false; n as usize];
    for &s in elements {
        for &t in residues {
            hit[(s + t as i64).rem_euclid(n as i64) as usize] = true;
        }
    }
    hit.into_iter().all(|h| h)
}

/// Sets `{0, ..., d}` with both endpoints, every size.
fn sets_with_diameter(d: i64) -> impl Iterator<Item = Vec<i64>> {
    let inner = if d >= 1 { d - 1 } else { 0 };
    (0u64..1 << inner).map(move |mask| {
        let mut v = vec![0];
        v.extend((1..d).filter(|i| mask >> (i - 1) & 1 == 1));
        if d > 0 {
            v.push(d);
        }
        v
    })
}

/// Canonical quads `{0, a, b, c}` with `gcd(a, b, c) = 1`.
fn canonical_quads(c_max: i64) -> Vec<[i64; 4]> {
    let mut out = Vec::new();
    for c in 3..=c_max {
        for b in 2..c {
            for a in 1..b {
                if gcd(gcd(a, b), c) == 1 {
                    out.push([0, a, b, c]);
                }
            }
        }
    }
    out
}

fn parse_coloring(lines: &[&str]) -> Result<PeriodicColoring, String> {
    format!("{}\n{}", lines[0], lines[1])
        .parse()
        .map_err(|e| format!("unparsable coloring: {e}"))
}

fn criterion_1() -> Check {
    let cases: [(&[i64], &str); 5] = [
        (&[0, 1, 5], "p=3"),
        (&[0, 1, 3], "p=2"),
        (&[0, 1, 2, 4], "p=3"),
        (&[0, 1, 3, 7], "p=3"),
        (&[0, 1, 2, 3], "p=4"),
    ];
    for (s, want) in cases {
        let start = Instant::now();
        let out = cli(&["pnum", "--set", &list(s)]);
        let took = start.elapsed();
        if out.code != 0 || out.stdout.trim() != want {
            return Err(format!("{}: got {:?}, want {want}", list(s), out.stdout.trim()));
        }
        if took >= Duration::from_secs(1) {
            return Err(format!("{}: took {took:?}", list(s)));
        }
    }
    Ok("5 sets exact".into())
}

fn criterion_2() -> Check {
    let quads = canonical_quads(40);
    let start = Instant::now();
    let mut worst = 0.0f64;
    for q in &quads {
        let c = q[3];
        let out = cli(&["search", "--set", &list(q), "--colors", "3", "--jobs", "1"]);
        let lines: Vec<&str> = out.stdout.lines().collect();
        let q_found: u64 = lines
            .first()
            .and_then(|l| l.strip_prefix("status=found q="))
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| format!("{}: no witness: {:?}", list(q), out.stdout))?;
        let coloring = parse_coloring(&lines[1..3])?;
        if coloring.period() != q_found || !windows_ok(q, 3, coloring.word()) {
            return Err(format!("{}: witness at q={q_found} does not verify", list(q)));
        }
        if q_found > 4 * c as u64 + 8 {
            return Err(format!("{}: q={q_found} exceeds 4c+8", list(q)));
        }
        worst = worst.max(q_found as f64 / c as f64);
    }
    let took = start.elapsed();
    if took >= Duration::from_secs(600) {
        return Err(format!("{} quads took {took:?}", quads.len()));
    }
    Ok(format!(
        "{} quads, all found, max q/c {worst:.2}, {took:.1?}",
        quads.len()
    ))
}

/// One instance per construction path.
const REGRESSION: [([i64; 4], &str); 9] = [
    ([0, 1, 2, 289], "1a"),
    ([0, 1, 3, 289], "1b"),
    ([0, 2, 3, 289], "1c"),
    ([0, 8, 61, 289], "1d"),
    ([0, 1, 18, 289], "2a"),
    ([0, 3, 20, 289], "2b"),
    ([0, 2, 147, 290], "2c"),
    ([0, 4, 38, 289], "2d"),
    ([0, 1, 69, 289], "2d"),
];

fn color_and_verify(s: &[i64]) -> Result<String, String> {
    let out = cli(&["color", "--set", &list(s), "--explain"]);
    if out.code != 0 {
        return Err(format!("{}: color failed: {}", list(s), out.stderr.trim()));
    }
    let lines: Vec<&str> = out.stdout.lines().collect();
    let coloring = parse_coloring(&lines[..2])?;
    if !windows_ok(s, 3, coloring.word()) {
        return Err(format!("{}: coloring is not polychromatic", list(s)));
    }
    let inline = format!("{}\n{}", lines[0], lines[1]);
    if cli(&["verify", "--set", &list(s), "--coloring", &inline]).code != 0 {
        return Err(format!("{}: verify rejected the coloring", list(s)));
    }
    let case = lines[2]
        .split_whitespace()
        .next()
        .and_then(|f| f.strip_prefix("case="))
        .unwrap_or("");
    Ok(case.to_string())
}

fn criterion_3() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut quads = Vec::new();
    while quads.len() < 300 {
        let c = rng.gen_range(289..=5000i64);
        let a = rng.gen_range(1..c - 1);
        let b = rng.gen_range(a + 1..c);
        if gcd(gcd(a, b), c) == 1 {
            quads.push([0, a, b, c]);
        }
    }
    let mut cases = std::collections::BTreeMap::new();
    for q in &quads {
        *cases.entry(color_and_verify(q)?).or_insert(0usize) += 1;
    }
    for (q, tag) in REGRESSION {
        let got = color_and_verify(&q)?;
        if got != tag {
            return Err(format!("{}: case {got}, expected {tag}", list(&q)));
        }
    }
    let took = start.elapsed();
    if took >= Duration::from_secs(300) {
        return Err(format!("took {took:?}"));
    }
    let spread = cases
        .iter()
        .map(|(k, v)| format!("{k}:{v}"))
        .collect::<Vec<_>>()
        .join(" ");
    Ok(format!(
        "300 random quads verified ({spread}), 9 regressions pinned, {took:.1?}"
    ))
}

fn criterion_4() -> Check {
    for (s, want) in [
        (&[0, 1, 2, 3][..], true),
        (&[0, 1, 2, 4], false),
        (&[0, 1, 5], true),
        (&[0, 1, 3], false),
    ] {
        if newman_tiles(&set(s)).map_err(|e| e.to_string())? != want {
            return Err(format!("newman_tiles({}) != {want}", list(s)));
        }
    }
    let mut count = 0usize;
    let mut tiling = 0usize;
    for d in 1..=20 {
        for v in sets_with_diameter(d) {
            if prime_power(v.len() as u64).is_none() {
                continue;
            }
            let s = set(&v);
            let newman = newman_tiles(&s).map_err(|e| e.to_string())?;
            let witness = find_tiling_complement(&s, default_modulus_bound(&s));
            if let Some(w) = &witness {
                if !covers(&v, w.modulus, &w.complement) || w.complement.len() * v.len() != w.modulus as usize
                {
                    return Err(format!("{}: bad witness {w}", list(&v)));
                }
            }
            if newman != witness.is_some() {
                return Err(format!(
                    "{}: newman={newman}, exact cover={}",
                    list(&v),
                    witness.is_some()
                ));
            }
            count += 1;
            tiling += usize::from(newman);
        }
    }
    Ok(format!(
        "4 named sets; {count} prime-power sets agree ({tiling} tile)"
    ))
}

fn criterion_5() -> Check {
    let mut count = 0usize;
    for d in 3..=40 {
        for b in 2..d {
            for a in 1..b {
                let s = [0, a, b, d];
                let out = cli(&["complement", "--set", &list(&s)]);
                let lines: Vec<&str> = out.stdout.lines().collect();
                if out.code != 0 || lines.len() != 2 {
                    return Err(format!("{}: {}", list(&s), out.stderr.trim()));
                }
                let (p, q) = lines[0]
                    .strip_prefix("density=")
                    .and_then(|r| r.split_once('/'))
                    .and_then(|(p, q)| Some((p.parse::<u64>().ok()?, q.parse::<u64>().ok()?)))
                    .ok_or_else(|| format!("bad density line {:?}", lines[0]))?;
                let (n, residues) = lines[1]
                    .strip_prefix("n=")
                    .and_then(|r| r.split_once(" residues="))
                    .and_then(|(n, r)| {
                        let res: Option<Vec<u64>> = r.split(',').map(|x| x.parse().ok()).collect();
                        Some((n.parse::<u64>().ok()?, res?))
                    })
                    .ok_or_else(|| format!("bad set line {:?}", lines[1]))?;
                if p * n != q * residues.len() as u64 {
                    return Err(format!("{}: density {p}/{q} does not match the set", list(&s)));
                }
                if 3 * p > q {
                    return Err(format!("{}: density {p}/{q} exceeds 1/3", list(&s)));
                }
                if !covers(&s, n, &residues) {
                    return Err(format!("{}: emitted set is not a complement", list(&s)));
                }
                count += 1;
            }
        }
    }
    let out = cli(&[
        "complement",
        "--set",
        "0,1,3",
        "--verify-only",
        "--n",
        "5",
        "--residues",
        "0,1",
    ]);
    if out.code != 0 || out.stdout.trim() != "ok density=2/5" || !covers(&[0, 1, 3], 5, &[0, 1]) {
        return Err(format!("{{0,1,3}} witness: {:?}", out.stdout.trim()));
    }
    Ok(format!(
        "{count} quads at density <= 1/3; {{0,1}} mod 5 gives 2/5"
    ))
}

/// `S ⊕ (T + nZ) = Z` assembled level by level, then each element of `S`
/// moved by a random multiple of `n`.
fn random_tiling(rng: &mut ChaCha8Rng) -> (IntegerSet, TilingWitness) {
    loop {
        let levels = rng.gen_range(2..=5);
        let mut stride = 1u64;
        let mut s = vec![0i64];
        let mut t = vec![0u64];
        for _ in 0..levels {
            let f = rng.gen_range(2..=4u64);
            let digits: Vec<u64> = (0..f).map(|i| i * stride).collect();
            if rng.gen_bool(0.5) {
                s = s
                    .iter()
                    .flat_map(|&x| digits.iter().map(move |&g| x + g as i64))
                    .collect();
            } else {
                t = t
                    .iter()
                    .flat_map(|&x| digits.iter().map(move |&g| x + g))
                    .collect();
            }
            stride *= f;
        }
        if s.len() < 2 || s.len() > 12 {
            continue;
        }
        let n = stride;
        let mut moved: Vec<i64> = s.iter().map(|&x| x + n as i64 * rng.gen_range(0..3)).collect();
        moved.shuffle(rng);
        t.sort_unstable();
        return (
            set(&moved),
            TilingWitness {
                modulus: n,
                complement: t,
            },
        );
    }
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    for _ in 0..50 {
        let (s, witness) = random_tiling(&mut rng);
        if !covers(s.elements(), witness.modulus, &witness.complement) {
            return Err(format!("generator produced a non-tiling for {s}"));
        }
        let coloring = coloring_from_tiling(&s, &witness).map_err(|e| format!("{s}: {e}"))?;
        if coloring.num_colors() as usize != s.len()
            || !windows_ok(s.elements(), s.len() as u32, coloring.word())
        {
            return Err(format!("{s}: tiling coloring is not polychromatic"));
        }
        let back = tiling_from_coloring(&s, &coloring).map_err(|e| format!("{s}: {e}"))?;
        if !covers(s.elements(), back.modulus, &back.complement)
            || back.complement.len() * s.len() != back.modulus as usize
        {
            return Err(format!("{s}: recovered witness {back} is not a tiling"));
        }
        if !neg_set_coloring_check(&s, &coloring) {
            return Err(format!("{s}: coloring fails for -S"));
        }
    }
    Ok("50 random tilings round-trip".into())
}

fn criterion_7() -> Check {
    let s = set(&[0, 1, 3, 7]);
    let t = t_value(&s);
    let p = pnum_exact_small(&s).map_err(|e| e.to_string())?;
    if (t.value, t.exact, p) != (2, true, 3) {
        return Err(format!("{{0,1,3,7}}: t={} p={p}", t.value));
    }
    let config = SearchConfig::default();
    let mut count = 0usize;
    for d in 1..=30 {
        let small = std::iter::once(vec![0, d])
            .chain((1..d).map(|a| vec![0, a, d]))
            .chain((1..d).flat_map(|b| (1..b).map(move |a| vec![0, a, b, d])));
        for v in small {
            let s = set(&v);
            let (k, _) = pnum_lower_bound(&s, &config).map_err(|e| format!("{s}: {e}"))?;
            let t = t_value(&s);
            if t.value as u32 > k {
                return Err(format!("{s}: t={} exceeds search bound {k}", t.value));
            }
            count += 1;
        }
    }
    Ok(format!("t(0,1,3,7)=2 < p=3; t <= p-bound on {count} sets"))
}

/// `{p0 + l v}` for a primitive direction `v`.
fn collinear_lattice(params: &[i64], dir: &[i64], base: &[i64]) -> LatticeSet {
    LatticeSet::new(
        params
            .iter()
            .map(|&l| base.iter().zip(dir).map(|(b, v)| b + l * v).collect())
            .collect(),
    )
    .unwrap()
}

fn criterion_8() -> Check {
    for d in 1..=4 {
        let (semi, cross) = (semicross_coloring(d).unwrap(), cross_coloring(d).unwrap());
        if semi.num_colors() as usize != d + 1 || cross.num_colors() as usize != 2 * d + 1 {
            return Err(format!("d={d}: wrong moduli"));
        }
        for exec in [Execution::Sequential, Execution::Parallel] {
            if !semi.verify(&semicross_set(d), exec) || !cross.verify(&cross_set(d), exec) {
                return Err(format!("d={d}: cross coloring fails"));
            }
        }
        // Independent window count for the semicross and cross.
        let m = 2 * d as i64 + 1;
        let phi = |v: &[i64]| v.iter().enumerate().map(|(i, x)| (i as i64 + 1) * x).sum::<i64>();
        let mut window = vec![vec![0i64; d]];
        for axis in 0..d {
            window = window
                .into_iter()
                .flat_map(|p| {
                    (0..m).map(move |x| {
                        let mut q = p.clone();
                        q[axis] = x;
                        q
                    })
                })
                .collect();
        }
        for p in &window {
            let base = phi(p);
            let cross_colors: std::collections::BTreeSet<i64> = std::iter::once(0)
                .chain((1..=d as i64).flat_map(|i| [i, -i]))
                .map(|off| (base + off).rem_euclid(m))
                .collect();
            let semi_colors: std::collections::BTreeSet<i64> = (0..=d as i64)
                .map(|off| (base + off).rem_euclid(d as i64 + 1))
                .collect();
            if cross_colors.len() as i64 != m || semi_colors.len() != d + 1 {
                return Err(format!("d={d}: window point {p:?} misses a color"));
            }
        }
    }
    let fig = |s: &str| pnum_zd_small(&s.parse().unwrap()).map_err(|e| e.to_string());
    let a = fig("(0,0);(1,0);(0,1);(1,2)")?;
    let b = fig("(0,0);(1,0);(0,1);(1,1)")?;
    if a.value != 3 || b.value != 4 || !b.exact {
        return Err(format!("examples gave {a} and {b}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    let mut checked = 0;
    while checked < 200 {
        let size = rng.gen_range(3..=4usize);
        let mut params = vec![0i64];
        while params.len() < size {
            let x = rng.gen_range(1..=30);
            if !params.contains(&x) {
                params.push(x);
            }
        }
        params.sort_unstable();
        let dim = rng.gen_range(2..=3usize);
        let dir: Vec<i64> = (0..dim).map(|_| rng.gen_range(-4..=4)).collect();
        if dir.iter().fold(0, |g, &x| gcd(g, x)) != 1 {
            continue;
        }
        let base: Vec<i64> = (0..dim).map(|_| rng.gen_range(-10..=10)).collect();
        let lattice = collinear_lattice(&params, &dir, &base);
        let zd = pnum_zd_small(&lattice).map_err(|e| format!("{lattice}: {e}"))?;
        let line = pnum_exact_small(&set(&params)).map_err(|e| e.to_string())?;
        if zd.value != line || !zd.exact {
            return Err(format!(
                "{lattice}: p={} but the parameter set has p={line}",
                zd.value
            ));
        }
        checked += 1;
    }
    Ok("crosses d=1..4, both examples, 200 collinear sets".into())
}

fn criterion_9() -> Check {
    let mut count = 0;
    for a in [2i64, 4, 6, 8] {
        for b in [1i64, 3, 5, 7, 9] {
            let coloring = alternating_block_coloring(a, b).map_err(|e| e.to_string())?;
            let by_definition = |n: i64| {
                let r = (n + a).rem_euclid(2 * a) - a;
                2 * u32::from(r < 0) + n.rem_euclid(2) as u32
            };
            for n in -4 * a..8 * a {
                if coloring.color(n) != by_definition(n) {
                    return Err(format!("a={a} b={b}: color({n}) differs from the definition"));
                }
            }
            for n in 0..4 * a {
                let colors: std::collections::BTreeSet<u32> =
                    [0, a, b].iter().map(|&s| coloring.color(n + s)).collect();
                if colors.len() < 3 {
                    return Err(format!("a={a} b={b}: translate {n} has {} colors", colors.len()));
                }
            }
            count += 1;
        }
    }
    Ok(format!("{count} (a, b) pairs, every translate has >= 3 colors"))
}

fn random_set(rng: &mut ChaCha8Rng, max_size: usize, spread: i64) -> IntegerSet {
    let size = rng.gen_range(2..=max_size);
    IntegerSet::collapsing((0..size).map(|_| rng.gen_range(-spread..=spread))).unwrap()
}

fn criterion_10() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 10);
    for _ in 0..500 {
        let s = random_set(&mut rng, 8, 60);
        if s.len() < 2 {
            continue;
        }
        let c = two_coloring(&s).map_err(|e| format!("{s}: {e}"))?;
        if !windows_ok(s.elements(), 2, c.word()) {
            return Err(format!("{s}: two_coloring is not bichromatic"));
        }
    }
    for _ in 0..500 {
        let s = random_set(&mut rng, 5, 15);
        let n = rng.gen_range(1..=40u64);
        let residues: Vec<u64> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
        let t = PeriodicSet::new(n, residues.clone()).map_err(|e| e.to_string())?;
        let blocks = (0..n as i64).all(|x| {
            s.iter()
                .any(|e| residues.contains(&((x + e).rem_euclid(n as i64) as u64)))
        });
        let neg: Vec<u64> = residues.iter().map(|&r| (n - r) % n).collect();
        if verify_blocking(&s, &t) != blocks
            || verify_complement(&s, &complement_from_blocking(&t)) != blocks
            || covers(s.elements(), n, &neg) != blocks
        {
            return Err(format!("{s} with {t}: blocking/complement duality fails"));
        }
    }
    for m in 2..=300u64 {
        for _ in 0..4 {
            let x = rng.gen_range(1..m as i64);
            let y = rng.gen_range(1..m as i64);
            if gcd(gcd(x, y), m as i64) != 1 {
                continue;
            }
            let cd = CycleDecomposition::new(m, x, y);
            let mut hits = vec![0u32; m as usize];
            for i in 0..cd.d {
                for j in 0..cd.e {
                    hits[((i as i64 * x + j as i64 * y).rem_euclid(m as i64)) as usize] += 1;
                }
            }
            let wraps = (0..cd.e).all(|j| cd.cell(cd.d, j) == cd.cell(0, (j + cd.wrap) % cd.e));
            if hits.iter().any(|&h| h != 1) || !cd.is_partition() || !wraps {
                return Err(format!("m={m} x={x} y={y}: cycles do not partition"));
            }
        }
    }
    let mut sequences = 0;
    for template in &TEMPLATES {
        for mask in 0u32..16 {
            let blocks: Vec<bool> = (0..4).map(|i| mask >> i & 1 == 1).collect();
            let word = template.sequence(&blocks);
            if !windows_ok(&template.base, 3, &word) {
                return Err(format!("{:?}: block sequence {mask:04b} fails", template.base));
            }
            sequences += 1;
        }
    }
    Ok(format!(
        "two-coloring, duality, partitions, {sequences} block sequences"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("known polychromatic numbers", criterion_1),
        ("search for every quad with c <= 40", criterion_2),
        ("constructor soundness", criterion_3),
        ("Newman criterion vs exact cover", criterion_4),
        ("codensity pipeline", criterion_5),
        ("tiling and coloring round-trips", criterion_6),
        ("t(S) against p(S)", criterion_7),
        ("lattice sets", criterion_8),
        ("alternating block coloring", criterion_9),
        ("property suites", criterion_10),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let id = (i + 1).to_string();
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        match result {
            Ok(detail) => println!("criterion {id:>2} PASS  {name}: {detail} [{took:.1?}]"),
            Err(reason) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {name}: {reason} [{took:.1?}]");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
