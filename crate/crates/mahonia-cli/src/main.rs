//! The `mahonia` command line: statistic distributions over pattern classes,
//! equidistribution checks, the catalog scanner with its bundled manifest,
//! st-Wilf classification, the bijection maps, truncated continued fractions
//! and the refined generating function over 312-avoiders.
//!
//! Exit codes: `0` — success, all requested checks passed; `1` — a checked
//! identity failed and the counterexample was printed; `2` — usage error.

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mahonia::cache::DistCache;
use mahonia::dyck::{
    delta, delta_inv, gamma, gamma_inv, lambda, omega_stump, omega_stump_inv, phi_path, psi,
    theta, DeltaVariant, DyckPath,
};
use mahonia::bij::{
    phi_123, phi_132, phi_231, phi_321, phi_inv_to_mad, simion_schmidt,
};
use mahonia::pattern::parse_pattern_list;
use mahonia::perm::Permutation;
use mahonia::polyomino::upsilon_inv;
use mahonia::qseries::{cf_truncate, cfrak1, cfrak2, genfunc_312, render_series, GenfuncAlpha, GENFUNC_SLOTS};
use mahonia::stats::{catalog_names, distribution_refined, Mark, MarkValue, StatSpec};
use mahonia::verify::{
    cached_distribution, check_equidistribution, class_key, s3_singletons, s3_subsets,
    scan_equidistributions, st_wilf_classes, equidistribution_manifest, ManifestCell, ManifestTag,
};
use mahonia::{QPoly, VincularPattern};

// ---------------------------------------------------------------------------
// Argument surface
// ---------------------------------------------------------------------------

#[derive(Parser)]
#[command(
    name = "mahonia",
    version,
    about = "Permutation statistics, pattern classes, Catalan bijections and exact q-series"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Distribution of a statistic over an avoidance class
    Dist(DistArgs),
    /// Check one equidistribution identity up to a depth
    Equidist(EquidistArgs),
    /// Scan statistic/pattern pairs for equidistributions, diffed against a manifest
    Scan(ScanArgs),
    /// Partition pattern sets into st-Wilf classes for a statistic
    Wilf(WilfArgs),
    /// Apply a bijection to a permutation or Dyck word
    Map(MapArgs),
    /// Truncated continued-fraction series
    Cf(CfArgs),
    /// Refined generating function over 312-avoiders
    Genfunc(GenfuncArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Latex,
    Text,
}

#[derive(Args)]
struct DistArgs {
    /// Statistic: a catalog or builtin name, `iota:k`, or `lin:c*pat + …`
    #[arg(long)]
    stat: String,
    /// Comma-separated pattern literals of the avoidance class (empty: all of S_n)
    #[arg(long, default_value = "")]
    avoid: String,
    /// Permutation length
    #[arg(long)]
    n: usize,
    /// Comma-separated refinement marks (des, head, last, DB, DT, AB, AT, LRMin)
    #[arg(long)]
    marks: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct EquidistArgs {
    #[arg(long)]
    stat1: String,
    /// Comma-separated pattern literals of the first class
    #[arg(long, default_value = "")]
    avoid1: String,
    #[arg(long)]
    stat2: String,
    /// Comma-separated pattern literals of the second class
    #[arg(long, default_value = "")]
    avoid2: String,
    /// Check all lengths n = 1..=max-n
    #[arg(long = "max-n")]
    max_n: usize,
}

#[derive(Args)]
struct ScanArgs {
    /// Comma-separated catalog statistic names, or `all`
    #[arg(long, default_value = "all")]
    stats: String,
    /// Comma-separated classical length-3 patterns, or `all3`
    #[arg(long, default_value = "all3")]
    patterns: String,
    /// Equidistributions must hold for every n = 1..=max-n
    #[arg(long = "max-n")]
    max_n: usize,
    /// Path to a manifest JSON to diff against (default: the bundled table)
    #[arg(long)]
    manifest: Option<String>,
}

#[derive(Args)]
struct WilfArgs {
    /// Statistic name
    #[arg(long)]
    stat: String,
    /// Distributions must agree for every n = 1..=max-n
    #[arg(long = "max-n")]
    max_n: usize,
    /// Classify subsets of the length-3 patterns of this size
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=3))]
    subsets: u8,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MapName {
    Phi321,
    Phi123,
    Phi132,
    Phi231,
    Simion,
    Gamma,
    Delta231,
    Delta312,
    Delta132,
    Psi,
    Phipath,
    Theta,
    Lambda,
    Omega,
    Upsilon,
    Invmad,
}

#[derive(Args)]
struct MapArgs {
    /// Which bijection to apply
    #[arg(long, value_enum)]
    name: MapName,
    /// A permutation word (`35142`) or a Dyck word (`UUDDUD`); permutation
    /// input applies the forward map, Dyck input the inverse where the map
    /// crosses between permutations and paths
    #[arg(long)]
    input: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CfWhich {
    Cfrak1,
    Cfrak2,
}

#[derive(Args)]
struct CfArgs {
    /// Which continued fraction to expand
    #[arg(long, value_enum)]
    which: CfWhich,
    /// Truncation order: coefficients of z^0 … z^order
    #[arg(long)]
    order: usize,
}

#[derive(Args)]
struct GenfuncArgs {
    /// Eleven comma-separated integer coefficients, one per pattern slot
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    /// Permutation length
    #[arg(long)]
    n: usize,
}

// ---------------------------------------------------------------------------
// Entry point and dispatch
// ---------------------------------------------------------------------------

/// `Ok(true)` means a requested check failed (exit 1); errors are usage
/// errors (exit 2).
type CmdResult = Result<bool, String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Dist(args) => run_dist(&args),
        Command::Equidist(args) => run_equidist(&args),
        Command::Scan(args) => run_scan(&args),
        Command::Wilf(args) => run_wilf(&args),
        Command::Map(args) => run_map(&args),
        Command::Cf(args) => run_cf(&args),
        Command::Genfunc(args) => run_genfunc(&args),
    };
    match outcome {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn parse_stat(text: &str) -> Result<StatSpec, String> {
    StatSpec::parse(text).map_err(|e| e.to_string())
}

fn parse_class(text: &str) -> Result<Vec<VincularPattern>, String> {
    parse_pattern_list(text).map_err(|e| e.to_string())
}

fn class_label(class: &[VincularPattern]) -> String {
    if class.is_empty() {
        "S_n".to_string()
    } else {
        format!("S_n({})", class_key(class))
    }
}

// ---------------------------------------------------------------------------
// dist
// ---------------------------------------------------------------------------

fn mark_value_label(v: &MarkValue) -> String {
    match v {
        MarkValue::Int(k) => k.to_string(),
        MarkValue::Set(s) => format!(
            "{{{}}}",
            s.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
        ),
    }
}

fn csv_rows(dist: &QPoly) -> String {
    let mut out = String::from("exponent,coefficient\n");
    for (k, c) in dist.coeffs().iter().enumerate() {
        out.push_str(&format!("{k},{c}\n"));
    }
    out
}

fn run_dist(args: &DistArgs) -> CmdResult {
    let spec = parse_stat(&args.stat)?;
    let class = parse_class(&args.avoid)?;
    let cache = DistCache::from_env();
    let marks: Vec<Mark> = match &args.marks {
        None => Vec::new(),
        Some(text) => text
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| s.trim().parse::<Mark>().map_err(|e| e.to_string()))
            .collect::<Result<_, String>>()?,
    };
    let label = format!(
        "{} over {}, n = {}",
        args.stat.trim(),
        class_label(&class),
        args.n
    );

    if marks.is_empty() {
        let dist =
            cached_distribution(&cache, &spec, &class, args.n).map_err(|e| e.to_string())?;
        match args.format {
            Format::Text => println!("{label}: {dist}"),
            Format::Latex => println!("{}", dist.latex()),
            Format::Csv => print!("{}", csv_rows(&dist)),
            Format::Json => {
                let value = serde_json::json!({
                    "stat": args.stat.trim(),
                    "canonical": spec.to_string(),
                    "avoid": class.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "n": args.n,
                    "distribution": dist,
                    "size": dist.eval_at_one().to_string(),
                });
                println!("{}", serde_json::to_string_pretty(&value).expect("json"));
            }
        }
        return Ok(false);
    }

    let refined =
        distribution_refined(&spec, &class, args.n, &marks).map_err(|e| e.to_string())?;
    let fiber_label = |key: &[MarkValue]| -> String {
        marks
            .iter()
            .zip(key)
            .map(|(m, v)| format!("{}={}", m.name(), mark_value_label(v)))
            .collect::<Vec<_>>()
            .join(", ")
    };
    match args.format {
        Format::Text => {
            println!("{label}, refined by {}:", marks.iter().map(|m| m.name()).collect::<Vec<_>>().join(","));
            for (key, dist) in &refined {
                println!("  {}: {}", fiber_label(key), dist);
            }
        }
        Format::Latex => {
            for (key, dist) in &refined {
                println!("{}:\\; {} \\\\", fiber_label(key), dist.latex());
            }
        }
        Format::Csv => {
            let mark_heads = marks.iter().map(|m| m.name()).collect::<Vec<_>>().join(",");
            println!("{mark_heads},exponent,coefficient");
            for (key, dist) in &refined {
                let prefix = key.iter().map(mark_value_label).collect::<Vec<_>>().join(",");
                for (k, c) in dist.coeffs().iter().enumerate() {
                    println!("{prefix},{k},{c}");
                }
            }
        }
        Format::Json => {
            let fibers: Vec<serde_json::Value> = refined
                .iter()
                .map(|(key, dist)| {
                    let m: serde_json::Map<String, serde_json::Value> = marks
                        .iter()
                        .zip(key)
                        .map(|(m, v)| {
                            (m.name().to_string(), serde_json::to_value(v).expect("mark"))
                        })
                        .collect();
                    serde_json::json!({ "marks": m, "distribution": dist })
                })
                .collect();
            let value = serde_json::json!({
                "stat": args.stat.trim(),
                "canonical": spec.to_string(),
                "avoid": class.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "n": args.n,
                "marks": marks.iter().map(|m| m.name()).collect::<Vec<_>>(),
                "fibers": fibers,
            });
            println!("{}", serde_json::to_string_pretty(&value).expect("json"));
        }
    }
    Ok(false)
}

// ---------------------------------------------------------------------------
// equidist
// ---------------------------------------------------------------------------

fn run_equidist(args: &EquidistArgs) -> CmdResult {
    if args.max_n == 0 {
        return Err("--max-n must be at least 1".to_string());
    }
    let stat1 = parse_stat(&args.stat1)?;
    let stat2 = parse_stat(&args.stat2)?;
    let class1 = parse_class(&args.avoid1)?;
    let class2 = parse_class(&args.avoid2)?;
    let cache = DistCache::from_env();
    let result = check_equidistribution(&cache, &stat1, &class1, &stat2, &class2, args.max_n)
        .map_err(|e| e.to_string())?;
    println!(
        "{} over {}  vs  {} over {}",
        args.stat1.trim(),
        class_label(&class1),
        args.stat2.trim(),
        class_label(&class2)
    );
    for verdict in &result.per_n {
        if verdict.agree {
            println!("  n = {}: agree  ({})", verdict.n, verdict.lhs);
        } else {
            println!("  n = {}: DISAGREE", verdict.n);
            println!("    lhs: {}", verdict.lhs);
            println!("    rhs: {}", verdict.rhs);
        }
    }
    match result.first_disagreement {
        None => {
            println!("equidistributed for all n <= {}", args.max_n);
            Ok(false)
        }
        Some(n) => {
            println!("counterexample at n = {n}");
            Ok(true)
        }
    }
}

// ---------------------------------------------------------------------------
// scan
// ---------------------------------------------------------------------------

fn load_manifest(path: Option<&str>) -> Result<Vec<ManifestCell>, String> {
    match path {
        None => Ok(equidistribution_manifest().to_vec()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| format!("cannot read manifest {p}: {e}"))?;
            serde_json::from_str(&text).map_err(|e| format!("manifest {p} does not parse: {e}"))
        }
    }
}

fn tag_label(tag: ManifestTag) -> &'static str {
    match tag {
        ManifestTag::Black => "black",
        ManifestTag::Red => "red",
    }
}

fn run_scan(args: &ScanArgs) -> CmdResult {
    if args.max_n == 0 {
        return Err("--max-n must be at least 1".to_string());
    }
    let stat_names: Vec<String> = if args.stats == "all" {
        catalog_names().iter().map(ToString::to_string).collect()
    } else {
        args.stats
            .split(',')
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty())
            .collect()
    };
    for name in &stat_names {
        if !catalog_names().contains(&name.as_str()) {
            return Err(format!("unknown catalog statistic {name:?}"));
        }
    }
    let patterns: Vec<Permutation> = if args.patterns == "all3" {
        s3_singletons()
    } else {
        args.patterns
            .split(',')
            .map(|s| s.trim())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<Permutation>().map_err(|e| e.to_string()))
            .collect::<Result<_, String>>()?
    };
    if let Some(bad) = patterns.iter().find(|p| p.n() != 3) {
        return Err(format!("scan patterns must have length 3, got {bad}"));
    }

    let manifest = load_manifest(args.manifest.as_deref())?;
    let mut index: BTreeMap<(String, String, String, String), ManifestTag> = BTreeMap::new();
    for cell in &manifest {
        index.insert(
            (
                cell.stat1.clone(),
                cell.pattern1.clone(),
                cell.stat2.clone(),
                cell.pattern2.clone(),
            ),
            cell.tag,
        );
        index.insert(
            (
                cell.stat2.clone(),
                cell.pattern2.clone(),
                cell.stat1.clone(),
                cell.pattern1.clone(),
            ),
            cell.tag,
        );
    }

    let cache = DistCache::from_env();
    let stat_refs: Vec<&str> = stat_names.iter().map(String::as_str).collect();
    let findings = scan_equidistributions(&cache, &stat_refs, &patterns, args.max_n)
        .map_err(|e| e.to_string())?;

    let mut discrepancies = 0usize;
    let mut found: BTreeMap<(String, String, String, String), ()> = BTreeMap::new();
    for f in &findings {
        let key = (
            f.stat1.clone(),
            f.pattern1.to_string(),
            f.stat2.clone(),
            f.pattern2.to_string(),
        );
        let annotation = match index.get(&key) {
            Some(&tag) => tag_label(tag).to_string(),
            None => {
                discrepancies += 1;
                "ABSENT from manifest".to_string()
            }
        };
        println!(
            "{}/{} ~ {}/{}  [{}]",
            f.stat1, f.pattern1, f.stat2, f.pattern2, annotation
        );
        found.insert(key, ());
    }

    // Manifest cells inside the scanned universe that the scan did not
    // confirm.
    let pattern_set: Vec<String> = patterns.iter().map(ToString::to_string).collect();
    for cell in &manifest {
        let in_universe = stat_names.contains(&cell.stat1)
            && stat_names.contains(&cell.stat2)
            && pattern_set.contains(&cell.pattern1)
            && pattern_set.contains(&cell.pattern2);
        if !in_universe {
            continue;
        }
        let key = (
            cell.stat1.clone(),
            cell.pattern1.clone(),
            cell.stat2.clone(),
            cell.pattern2.clone(),
        );
        let reversed = (
            cell.stat2.clone(),
            cell.pattern2.clone(),
            cell.stat1.clone(),
            cell.pattern1.clone(),
        );
        if !found.contains_key(&key) && !found.contains_key(&reversed) {
            discrepancies += 1;
            println!(
                "MISSING: {}/{} ~ {}/{}  [{}]",
                cell.stat1,
                cell.pattern1,
                cell.stat2,
                cell.pattern2,
                tag_label(cell.tag)
            );
        }
    }

    println!(
        "equidistributions found at max-n = {}: {}; discrepancies against the manifest: {}",
        args.max_n,
        findings.len(),
        discrepancies
    );
    Ok(discrepancies > 0)
}

// ---------------------------------------------------------------------------
// wilf
// ---------------------------------------------------------------------------

fn run_wilf(args: &WilfArgs) -> CmdResult {
    if args.max_n == 0 {
        return Err("--max-n must be at least 1".to_string());
    }
    let spec = parse_stat(&args.stat)?;
    let cache = DistCache::from_env();
    let sets = s3_subsets(args.subsets as usize);
    let partition =
        st_wilf_classes(&cache, &spec, &sets, args.max_n).map_err(|e| e.to_string())?;
    println!(
        "{} {}-Wilf classes of the {}-subsets of the length-3 patterns, max-n = {}:",
        partition.classes.len(),
        args.stat.trim(),
        args.subsets,
        args.max_n
    );
    for class in &partition.classes {
        let members: Vec<String> = class
            .iter()
            .map(|set| {
                format!(
                    "{{{}}}",
                    set.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
                )
            })
            .collect();
        println!("  {}", members.join("  "));
    }
    Ok(false)
}

// ---------------------------------------------------------------------------
// map
// ---------------------------------------------------------------------------

enum MapInput {
    Perm(Permutation),
    Path(DyckPath),
}

fn classify_input(text: &str) -> Result<MapInput, String> {
    let trimmed = text.trim();
    if !trimmed.is_empty() && trimmed.chars().all(|c| matches!(c, 'U' | 'u' | 'D' | 'd')) {
        trimmed
            .parse::<DyckPath>()
            .map(MapInput::Path)
            .map_err(|e| e.to_string())
    } else {
        trimmed
            .parse::<Permutation>()
            .map(MapInput::Perm)
            .map_err(|e| e.to_string())
    }
}

fn run_map(args: &MapArgs) -> CmdResult {
    let input = classify_input(&args.input)?;
    let err = |e: mahonia::Error| e.to_string();
    let only_perm = |input: MapInput| match input {
        MapInput::Perm(p) => Ok(p),
        MapInput::Path(_) => Err("this map takes a permutation input".to_string()),
    };
    let only_path = |input: MapInput| match input {
        MapInput::Path(p) => Ok(p),
        MapInput::Perm(_) => Err("this map takes a Dyck-word input".to_string()),
    };
    match args.name {
        MapName::Phi321 => println!("{}", phi_321(&only_perm(input)?).map_err(err)?),
        MapName::Phi123 => println!("{}", phi_123(&only_perm(input)?).map_err(err)?),
        MapName::Phi132 => println!("{}", phi_132(&only_perm(input)?).map_err(err)?),
        MapName::Phi231 => println!("{}", phi_231(&only_perm(input)?).map_err(err)?),
        MapName::Simion => println!("{}", simion_schmidt(&only_perm(input)?).map_err(err)?),
        MapName::Invmad => println!("{}", phi_inv_to_mad(&only_perm(input)?).map_err(err)?),
        MapName::Gamma => match input {
            MapInput::Perm(sigma) => println!("{}", gamma(&sigma).map_err(err)?),
            MapInput::Path(path) => println!("{}", gamma_inv(&path)),
        },
        MapName::Delta231 | MapName::Delta312 | MapName::Delta132 => {
            let variant = match args.name {
                MapName::Delta231 => DeltaVariant::A231,
                MapName::Delta312 => DeltaVariant::A312,
                _ => DeltaVariant::A132,
            };
            match input {
                MapInput::Perm(sigma) => println!("{}", delta(&sigma, variant).map_err(err)?),
                MapInput::Path(path) => println!("{}", delta_inv(&path, variant)),
            }
        }
        MapName::Omega => match input {
            MapInput::Perm(sigma) => println!("{}", omega_stump(&sigma).map_err(err)?),
            MapInput::Path(path) => println!("{}", omega_stump_inv(&path)),
        },
        MapName::Psi => println!("{}", psi(&only_path(input)?)),
        MapName::Phipath => println!("{}", phi_path(&only_path(input)?)),
        MapName::Theta => println!("{}", theta(&only_path(input)?)),
        MapName::Lambda => println!("{}", lambda(&only_path(input)?)),
        MapName::Upsilon => {
            // The polyomino whose permutation encoding is the given input.
            println!("{}", upsilon_inv(&only_perm(input)?).map_err(err)?);
        }
    }
    Ok(false)
}

// ---------------------------------------------------------------------------
// cf / genfunc
// ---------------------------------------------------------------------------

fn run_cf(args: &CfArgs) -> CmdResult {
    let spec = match args.which {
        CfWhich::Cfrak1 => cfrak1(),
        CfWhich::Cfrak2 => cfrak2(),
    };
    let coeffs = cf_truncate(&spec, args.order);
    println!("{}", render_series(&coeffs));
    Ok(false)
}

fn run_genfunc(args: &GenfuncArgs) -> CmdResult {
    let coeffs: Vec<i64> = args
        .alpha
        .split(',')
        .map(|s| s.trim().parse::<i64>().map_err(|e| format!("bad coefficient {s:?}: {e}")))
        .collect::<Result<_, String>>()?;
    let alpha = GenfuncAlpha::from_slice(&coeffs).map_err(|e| e.to_string())?;
    println!("# slots: {}", GENFUNC_SLOTS.join(", "));
    if alpha.has_negative() {
        println!("# note: negative coefficients are an extension; the statistic is defined with coefficients in N");
    }
    let poly = genfunc_312(&alpha, args.n);
    println!("{poly}");
    Ok(false)
}
