//! Command-line front end for `polytile`.
//!
//! [`run`] parses an argument vector and returns the exit code together with
//! the text written to standard output and standard error, so the binary and
//! the integration tests share one code path.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use polytile::codensity::{codensity_upper_bound, verify_complement, PeriodicSet};
use polytile::construct::{construct_3coloring, ReducedQuad};
use polytile::lattice::{
    cross_coloring, cross_set, injective_projection, pnum_zd_small, project, semicross_coloring,
    semicross_set, LatticeSet, ProjectionVector,
};
use polytile::reduce::first_violation;
use polytile::search::{pnum_exact_small, pnum_lower_bound, search_coloring, SearchConfig};
use polytile::tiling::{default_modulus_bound, find_tiling_complement, newman_tiles, t_value};
use polytile::{canonicalize, IntegerSet, PeriodicColoring};

/// Exit code for a completed command.
pub const EXIT_OK: i32 = 0;
/// Exit code when a check ran and the property is false.
pub const EXIT_FALSE: i32 = 1;
/// Exit code for malformed or out-of-range input.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "polytile",
    version,
    about = "Polychromatic colorings and tilings of integer sets"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Polychromatic number, exact for up to 4 elements.
    Pnum {
        #[arg(long, allow_hyphen_values = true)]
        set: IntegerSet,
        #[command(flatten)]
        search: SearchFlags,
    },
    /// Constructive 3-coloring of a 4-element set.
    Color {
        #[arg(long, allow_hyphen_values = true)]
        set: IntegerSet,
        /// Also print the case and the reduction parameters.
        #[arg(long)]
        explain: bool,
    },
    /// Check that a coloring is polychromatic for a set.
    Verify {
        #[arg(long, allow_hyphen_values = true)]
        set: IntegerSet,
        #[arg(long)]
        coloring: PeriodicColoring,
    },
    /// Search for a k-coloring on cyclic groups.
    Search {
        #[arg(long, allow_hyphen_values = true)]
        set: IntegerSet,
        #[arg(long, default_value_t = 3)]
        colors: u32,
        #[command(flatten)]
        search: SearchFlags,
    },
    /// Decide whether a set tiles the integers.
    Tiles {
        #[arg(long, allow_hyphen_values = true)]
        set: IntegerSet,
        /// Largest period tried by the complement search.
        #[arg(long)]
        nmax: Option<u64>,
        /// Exit 0 only when the answer matches.
        #[arg(long, value_enum)]
        expect: Option<YesNo>,
    },
    /// Periodic complement of small density, or a check of a given one.
    Complement {
        #[arg(long, allow_hyphen_values = true)]
        set: IntegerSet,
        #[arg(long, requires_all = ["n", "residues"])]
        verify_only: bool,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, value_parser = parse_residues)]
        residues: Option<Residues>,
    },
    /// Image of a lattice set under a projection.
    Project {
        #[arg(long)]
        set: LatticeSet,
        /// Projection vector ending in 1; chosen injective when omitted.
        #[arg(long)]
        w: Option<ProjectionVector>,
    },
    /// Polychromatic number of a 3- or 4-point lattice set.
    PnumZd {
        #[arg(long)]
        set: LatticeSet,
    },
    /// Affine coloring of the cross or semicross in dimension d.
    Cross {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=64))]
        d: u32,
        /// Use the semicross instead of the cross.
        #[arg(long)]
        semi: bool,
        /// Verify the coloring on a full period window.
        #[arg(long)]
        check: bool,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        jobs: u32,
    },
    /// Size of the largest subset that tiles.
    TValue {
        #[arg(long, allow_hyphen_values = true)]
        set: IntegerSet,
    },
}

#[derive(Args, Debug)]
struct SearchFlags {
    /// Largest modulus tried.
    #[arg(long)]
    qmax: Option<u64>,
    /// Node budget per modulus.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    budget: Option<u64>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: u32,
}

impl SearchFlags {
    fn config(&self, k: u32) -> SearchConfig {
        let mut config = SearchConfig::with_colors(k);
        config.q_max = self.qmax;
        if let Some(budget) = self.budget {
            config.node_budget = budget;
        }
        config.parallelism = self.jobs as usize;
        config
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum YesNo {
    Yes,
    No,
}

#[derive(Debug, Clone)]
struct Residues(Vec<u64>);

fn parse_residues(s: &str) -> Result<Residues, String> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| format!("bad residue {:?}", t.trim()))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Residues)
}

/// What a command produced, before formatting.
struct Reply {
    code: i32,
    lines: Vec<String>,
    json: Value,
}

impl Reply {
    fn ok(lines: Vec<String>, json: Value) -> Self {
        Self {
            code: EXIT_OK,
            lines,
            json,
        }
    }
}

/// A usage error tied to a flag.
struct UsageError {
    flag: &'static str,
    message: String,
}

fn usage(flag: &'static str, err: impl std::fmt::Display) -> UsageError {
    UsageError {
        flag,
        message: err.to_string(),
    }
}

/// Runs the command line `argv`, whose first element is the program name.
pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let text = err.render().to_string();
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Output {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Output {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: format!("{}\n", text.lines().next().unwrap_or("invalid arguments")),
                },
            };
        }
    };
    match dispatch(cli.command) {
        Ok(reply) => Output {
            code: reply.code,
            stdout: match cli.format {
                Format::Text => reply.lines.iter().map(|l| format!("{l}\n")).collect(),
                Format::Json => format!("{}\n", reply.json),
            },
            stderr: String::new(),
        },
        Err(e) => Output {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: --{}: {}\n", e.flag, e.message),
        },
    }
}

fn dispatch(command: Command) -> Result<Reply, UsageError> {
    match command {
        Command::Pnum { set, search } => pnum(&set, &search),
        Command::Color { set, explain } => color(&set, explain),
        Command::Verify { set, coloring } => Ok(verify(&set, &coloring)),
        Command::Search { set, colors, search } => search_cmd(&set, colors, &search),
        Command::Tiles { set, nmax, expect } => Ok(tiles(&set, nmax, expect)),
        Command::Complement {
            set,
            verify_only,
            n,
            residues,
        } => complement(&set, verify_only, n, residues),
        Command::Project { set, w } => project_cmd(&set, w),
        Command::PnumZd { set } => pnum_zd(&set),
        Command::Cross { d, semi, check, jobs } => Ok(cross(d as usize, semi, check, jobs)),
        Command::TValue { set } => Ok(t_value_cmd(&set)),
    }
}

fn pnum(set: &IntegerSet, flags: &SearchFlags) -> Result<Reply, UsageError> {
    let (p, exact) = if set.len() <= 4 {
        (pnum_exact_small(set).map_err(|e| usage("set", e))?, true)
    } else {
        let (k, _) = pnum_lower_bound(set, &flags.config(3)).map_err(|e| usage("set", e))?;
        (k, k as usize == set.len())
    };
    let line = if exact {
        format!("p={p}")
    } else {
        format!("p>={p}")
    };
    Ok(Reply::ok(vec![line], json!({ "p": p, "exact": exact })))
}

fn color(set: &IntegerSet, explain: bool) -> Result<Reply, UsageError> {
    let (coloring, tag) = construct_3coloring(set).map_err(|e| usage("set", e))?;
    let mut lines: Vec<String> = coloring.to_string().lines().map(str::to_string).collect();
    let canon = canonicalize(set);
    let mut reduction = json!({
        "shift": canon.shift,
        "scale": canon.scale,
        "canonical": canon.set.elements(),
    });
    if explain {
        lines.push(tag.to_string());
        let mut chain = format!(
            "shift={} scale={} canonical={}",
            canon.shift, canon.scale, canon.set
        );
        if let Ok(q) = ReducedQuad::from_set(&canon.set) {
            chain.push_str(&format!(" m={} d1={} d2={}", q.m, q.d1, q.d2));
            reduction["m"] = json!(q.m);
            reduction["d1"] = json!(q.d1);
            reduction["d2"] = json!(q.d2);
        }
        lines.push(chain);
    }
    let mut value = coloring_json(&coloring);
    if explain {
        value["case"] = json!(tag);
        value["reduction"] = reduction;
    }
    Ok(Reply::ok(lines, value))
}

fn coloring_json(coloring: &PeriodicColoring) -> Value {
    json!({
        "k": coloring.num_colors(),
        "m": coloring.period(),
        "word": coloring.word(),
    })
}

fn verify(set: &IntegerSet, coloring: &PeriodicColoring) -> Reply {
    match first_violation(set, coloring) {
        None => Reply::ok(vec!["ok".into()], json!({ "ok": true })),
        Some(n) => Reply {
            code: EXIT_FALSE,
            lines: vec![format!("fail translate={n}")],
            json: json!({ "ok": false, "translate": n }),
        },
    }
}

fn search_cmd(set: &IntegerSet, colors: u32, flags: &SearchFlags) -> Result<Reply, UsageError> {
    let config = flags.config(colors);
    config.validate().map_err(|e| usage("colors", e))?;
    let shift = set.min();
    let based = set.shifted(-shift);
    let outcome = search_coloring(&based, &config).map_err(|e| usage("set", e))?;
    let tried = outcome
        .stats
        .tried
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",");
    let mut lines = Vec::new();
    let mut value = json!({
        "status": outcome.status.label(),
        "nodes": outcome.stats.nodes,
        "tried": outcome.stats.tried,
    });
    match &outcome.witness {
        Some((q, coloring)) => {
            let coloring = coloring.shifted(-shift);
            lines.push(format!("status={} q={q}", outcome.status.label()));
            lines.extend(coloring.to_string().lines().map(str::to_string));
            value["q"] = json!(q);
            value["coloring"] = coloring_json(&coloring);
        }
        None => lines.push(format!("status={}", outcome.status.label())),
    }
    lines.push(format!("nodes={} tried={tried}", outcome.stats.nodes));
    Ok(Reply::ok(lines, value))
}

fn tiles(set: &IntegerSet, nmax: Option<u64>, expect: Option<YesNo>) -> Reply {
    let n_max = nmax.unwrap_or_else(|| default_modulus_bound(set));
    let (answer, criterion, witness) = match newman_tiles(set) {
        Ok(true) => ("yes", "newman", find_tiling_complement(set, n_max)),
        Ok(false) => ("no", "newman", None),
        Err(_) => match find_tiling_complement(set, n_max) {
            Some(w) => ("yes", "search", Some(w)),
            None => ("unknown", "search", None),
        },
    };
    let mut line = format!("tiles={answer} criterion={criterion}");
    let mut value = json!({ "tiles": answer, "criterion": criterion });
    if let Some(w) = &witness {
        line.push_str(&format!(" {w}"));
        value["n"] = json!(w.modulus);
        value["T"] = json!(w.complement);
    }
    let code = match expect {
        Some(YesNo::Yes) if answer == "yes" => EXIT_OK,
        Some(YesNo::No) if answer == "no" => EXIT_OK,
        None if answer == "yes" => EXIT_OK,
        _ => EXIT_FALSE,
    };
    Reply {
        code,
        lines: vec![line],
        json: value,
    }
}

fn complement(
    set: &IntegerSet,
    verify_only: bool,
    n: Option<u64>,
    residues: Option<Residues>,
) -> Result<Reply, UsageError> {
    if !verify_only {
        if n.is_some() || residues.is_some() {
            return Err(usage("verify-only", "--n and --residues need --verify-only"));
        }
        let (density, t) = codensity_upper_bound(set).map_err(|e| usage("set", e))?;
        return Ok(Reply::ok(
            vec![format!("density={density}"), t.to_string()],
            json!({ "density": density, "n": t.modulus(), "residues": t.residues() }),
        ));
    }
    let n = n.expect("required by clap");
    let Residues(residues) = residues.expect("required by clap");
    let t = PeriodicSet::new(n, residues).map_err(|e| usage("residues", e))?;
    let density = t.density();
    if verify_complement(set, &t) {
        Ok(Reply::ok(
            vec![format!("ok density={density}")],
            json!({ "ok": true, "density": density }),
        ))
    } else {
        Ok(Reply {
            code: EXIT_FALSE,
            lines: vec![format!("fail density={density}")],
            json: json!({ "ok": false, "density": density }),
        })
    }
}

fn project_cmd(set: &LatticeSet, w: Option<ProjectionVector>) -> Result<Reply, UsageError> {
    let w = match w {
        Some(w) => w,
        None => injective_projection(set).map_err(|e| usage("set", e))?,
    };
    let image = project(set, &w).map_err(|e| usage("w", e))?;
    let injective = image.len() == set.len();
    Ok(Reply::ok(
        vec![format!(
            "w={w} set={image} injective={}",
            if injective { "yes" } else { "no" }
        )],
        json!({ "w": w.as_slice(), "set": image.points(), "injective": injective }),
    ))
}

fn pnum_zd(set: &LatticeSet) -> Result<Reply, UsageError> {
    let result = pnum_zd_small(set).map_err(|e| usage("set", e))?;
    let line = result.to_string();
    let value = json!({ "p": result.value, "exact": result.exact, "certificate": result.certificate });
    Ok(Reply::ok(vec![line], value))
}

fn cross(d: usize, semi: bool, check: bool, jobs: u32) -> Reply {
    let (name, set, coloring) = if semi {
        ("semicross", semicross_set(d), semicross_coloring(d))
    } else {
        ("cross", cross_set(d), cross_coloring(d))
    };
    let coloring = coloring.expect("dimension at least 1");
    let functional = coloring
        .functional()
        .iter()
        .map(i64::to_string)
        .collect::<Vec<_>>()
        .join(",");
    let mut line = format!(
        "{name} d={d} functional={functional} modulus={}",
        coloring.num_colors()
    );
    let mut value = json!({
        "shape": name,
        "d": d,
        "functional": coloring.functional(),
        "modulus": coloring.num_colors(),
    });
    let mut code = EXIT_OK;
    if check {
        let ok = polytile::par::with_jobs(jobs as usize, |exec| coloring.verify(&set, exec));
        line.push_str(if ok { " ok" } else { " fail" });
        value["ok"] = json!(ok);
        if !ok {
            code = EXIT_FALSE;
        }
    }
    Reply {
        code,
        lines: vec![line],
        json: value,
    }
}

fn t_value_cmd(set: &IntegerSet) -> Reply {
    let t = t_value(set);
    let line = if t.exact {
        format!("t={}", t.value)
    } else {
        format!("t>={}", t.value)
    };
    Reply::ok(vec![line], json!({ "t": t.value, "exact": t.exact }))
}
