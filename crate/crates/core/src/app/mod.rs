//! Command-line front end.
//!
//! Every subcommand prints the full command line it effectively ran (with
//! defaults filled in) first, as a `#` comment in text mode or as the
//! `command` field under `--json`.
//!
//! Exit codes: 0 success, 1 negative verdict, 2 usage, 3 IO or invalid input file.

pub mod fetch;
pub mod verify;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::arch::{cond_rep, lemma_bound_check, twist_arch, ArchChar, ArchRep};
use crate::arith::FactoredInteger;
use crate::dirichlet::{enumerate_characters, primitive_characters, UnitGroup};
use crate::global::{admissible_moduli, max_admissible, BoundMode};
use crate::scan::{scan, EigenvalueTable, ScanConfig, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "twistbound", version, about = "Conductor bounds for character twists")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the conductors a twisting character may have.
    Bound(BoundArgs),
    /// Enumerate Dirichlet characters of a modulus.
    Chars(CharsArgs),
    /// Search for a Dirichlet character relating two eigenvalue tables.
    Scan(ScanArgs),
    /// Compare an archimedean character conductor with the local bound.
    Arch(ArchArgs),
    /// Run the built-in property sweeps.
    Verify(VerifyArgs),
    /// Download an eigenvalue table into the local cache.
    Fetch(FetchArgs),
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n1: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n2: u64,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
    pub rank: u32,
    #[arg(long, default_value = "product")]
    pub mode: BoundMode,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct CharsArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub modulus: u64,
    /// Only primitive characters.
    #[arg(long)]
    pub primitive: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[arg(long)]
    pub f: PathBuf,
    #[arg(long)]
    pub g: PathBuf,
    #[arg(long, default_value = "product")]
    pub mode: BoundMode,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, default_value_t = 20)]
    pub min_primes: usize,
    /// Skip characters whose parity contradicts the tables' weight parities.
    #[arg(long)]
    pub parity: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct ArchArgs {
    /// Representation JSON, or `@path` to read it from a file.
    #[arg(long)]
    pub sigma: String,
    /// Character JSON, or `@path`.
    #[arg(long)]
    pub chi: String,
    /// Evaluate even when a parameter leaves `|Re ν| <= 1/2`.
    #[arg(long)]
    pub allow_outside_strip: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// prop3, claim32, dirichlet, arch, theoremB or all.
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct FetchArgs {
    #[arg(long)]
    pub label: String,
    /// Defaults to `$TWISTBOUND_LMFDB_URL`, then the public LMFDB.
    #[arg(long)]
    pub base_url: Option<String>,
    /// Defaults to `$TWISTBOUND_CACHE`, then the user cache directory.
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    /// Serve only from the cache.
    #[arg(long)]
    pub offline: bool,
}

/// Parse `args` (including the program name) and run, writing to `out` and
/// `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == EXIT_OK { out } else { err };
            let _ = write!(sink, "{text}");
            return code;
        }
    };
    let result = match cli.command {
        Command::Bound(a) => cmd_bound(&a, out),
        Command::Chars(a) => cmd_chars(&a, out),
        Command::Scan(a) => cmd_scan(&a, out),
        Command::Arch(a) => cmd_arch(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
        Command::Fetch(a) => cmd_fetch(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

struct Failure(i32, String);

type CmdResult = Result<i32, Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure(EXIT_USAGE, e.to_string())
}

fn io(e: impl std::fmt::Display) -> Failure {
    Failure(EXIT_IO, e.to_string())
}

fn emit(out: &mut dyn Write, text: &str) -> CmdResult {
    out.write_all(text.as_bytes()).map_err(io)?;
    Ok(EXIT_OK)
}

fn emit_json(out: &mut dyn Write, v: &Value) -> CmdResult {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    emit(out, &s)
}

/// A factored integer as a JSON number, or its factorization string when it
/// does not fit in 64 bits.
fn fi_json(n: &FactoredInteger) -> Value {
    match n.value() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

fn quote(p: &Path) -> String {
    let s = p.display().to_string();
    if s.chars().any(|c| c.is_whitespace() || c == '\'' || c == '"') {
        format!("'{}'", s.replace('\'', r"'\''"))
    } else {
        s
    }
}

fn cmd_bound(a: &BoundArgs, out: &mut dyn Write) -> CmdResult {
    let command = format!(
        "twistbound bound --n1 {} --n2 {} --rank {} --mode {}{}",
        a.n1,
        a.n2,
        a.rank,
        a.mode,
        if a.json { " --json" } else { "" }
    );
    let n1 = FactoredInteger::factor(a.n1).map_err(usage)?;
    let n2 = FactoredInteger::factor(a.n2).map_err(usage)?;
    let max = max_admissible(&n1, &n2, a.rank, a.mode).map_err(usage)?;
    let moduli = admissible_moduli(&n1, &n2, a.rank, a.mode).map_err(usage)?;
    let (target_name, target) = match a.mode {
        BoundMode::Product => ("N1*N2", n1.mul(&n2)),
        BoundMode::Lcm | BoundMode::Gl2TrivialCentral => ("lcm(N1,N2)", n1.lcm(&n2)),
    };
    if a.json {
        return emit_json(
            out,
            &json!({
                "command": command,
                "n1": a.n1,
                "n2": a.n2,
                "rank": a.rank,
                "mode": a.mode,
                "hypothesis": a.mode.hypothesis(),
                "target": fi_json(&target),
                "admissible": moduli.iter().map(fi_json).collect::<Vec<_>>(),
                "max_admissible": fi_json(&max),
            }),
        );
    }
    let list: Vec<String> = moduli.iter().map(|m| m.to_string()).collect();
    emit(
        out,
        &format!(
            "# {command}\ncondition: Q^{} | {target_name} = {target}\nassumed: {}\nadmissible moduli: {}\nmax admissible: {max}\n",
            a.rank,
            a.mode.hypothesis(),
            list.join(", "),
        ),
    )
}

fn cmd_chars(a: &CharsArgs, out: &mut dyn Write) -> CmdResult {
    let command = format!(
        "twistbound chars --modulus {}{}{}",
        a.modulus,
        if a.primitive { " --primitive" } else { "" },
        if a.json { " --json" } else { "" }
    );
    let group = Arc::new(UnitGroup::from_u64(a.modulus).map_err(usage)?);
    let chars = if a.primitive {
        primitive_characters(&group)
    } else {
        enumerate_characters(&group)
    };
    let rows: Vec<Value> = chars
        .iter()
        .map(|c| {
            json!({
                "label": c.label(),
                "order": c.order(),
                "parity": c.parity(),
                "conductor": fi_json(&c.conductor()),
                "primitive": c.is_primitive(),
            })
        })
        .collect();
    if a.json {
        let gens: Vec<Value> = group
            .blocks()
            .iter()
            .map(|b| json!({"prime": b.prime, "generator": b.generator, "order": b.order}))
            .collect();
        return emit_json(
            out,
            &json!({
                "command": command,
                "modulus": a.modulus,
                "group_order": group.order(),
                "generators": gens,
                "count": rows.len(),
                "characters": rows,
            }),
        );
    }
    let mut s = format!("# {command}\n");
    let gens: Vec<String> = group.blocks().iter().map(|b| format!("{} (order {})", b.generator, b.order)).collect();
    s.push_str(&format!("generators: {}\n", if gens.is_empty() { "none".into() } else { gens.join(", ") }));
    s.push_str(&format!("{:<14} {:>6} {:>6} {:>10} {:>9}\n", "label", "order", "parity", "conductor", "primitive"));
    for c in &chars {
        s.push_str(&format!(
            "{:<14} {:>6} {:>6} {:>10} {:>9}\n",
            c.label(),
            c.order(),
            if c.parity() > 0 { "even" } else { "odd" },
            c.conductor().to_string(),
            if c.is_primitive() { "yes" } else { "no" }
        ));
    }
    s.push_str(&format!("{} characters\n", chars.len()));
    emit(out, &s)
}

fn read_table(path: &Path) -> Result<EigenvalueTable, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| io(format!("{}: {e}", path.display())))?;
    EigenvalueTable::from_json(&text).map_err(|e| io(format!("{}: {e}", path.display())))
}

fn cmd_scan(a: &ScanArgs, out: &mut dyn Write) -> CmdResult {
    let command = format!(
        "twistbound scan --f {} --g {} --mode {} --tol {:e} --min-primes {}{}{}",
        quote(&a.f),
        quote(&a.g),
        a.mode,
        a.tol,
        a.min_primes,
        if a.parity { " --parity" } else { "" },
        if a.json { " --json" } else { "" }
    );
    let cfg = ScanConfig {
        tolerance: a.tol,
        min_good_primes: a.min_primes,
        mode: a.mode,
        parity_filter: a.parity,
    };
    cfg.validate().map_err(usage)?;
    let f = read_table(&a.f)?;
    let g = read_table(&a.g)?;
    if f.rank != g.rank {
        return Err(io(format!("tables have ranks {} and {}", f.rank, g.rank)));
    }
    let result = scan(&f, &g, &cfg).map_err(usage)?;
    let code = if result.verdict == Verdict::Match { EXIT_OK } else { EXIT_NEGATIVE };
    if a.json {
        emit_json(
            out,
            &json!({
                "command": command,
                "f": {"label": f.label, "level": fi_json(&f.level), "rank": f.rank},
                "g": {"label": g.label, "level": fi_json(&g.level), "rank": g.rank},
                "evidence_floor": {"min_good_primes": a.min_primes, "note": "engineering choice, not a theorem"},
                "result": result,
            }),
        )?;
        return Ok(code);
    }
    let mut s = format!("# {command}\n");
    s.push_str(&format!("f: {} (level {}, rank {})\n", f.label, f.level, f.rank));
    s.push_str(&format!("g: {} (level {}, rank {})\n", g.label, g.level, g.rank));
    s.push_str(&format!(
        "shared good primes: {}; candidates tested: {}\n",
        result.good_primes, result.candidates_tested
    ));
    s.push_str(&format!("evidence floor: {} primes (engineering choice, not a theorem)\n", a.min_primes));
    for m in &result.matches {
        s.push_str(&format!(
            "match {} conductor {} max deviation {:.3e} over {} primes\n",
            m.label, m.conductor, m.max_deviation, m.primes_tested
        ));
    }
    s.push_str(&format!("verdict: {}\n", result.verdict));
    emit(out, &s)?;
    Ok(code)
}

fn json_arg(raw: &str) -> Result<String, Failure> {
    match raw.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| io(format!("{path}: {e}"))),
        None => Ok(raw.to_string()),
    }
}

fn cmd_arch(a: &ArchArgs, out: &mut dyn Write) -> CmdResult {
    let sigma_text = json_arg(&a.sigma)?;
    let chi_text = json_arg(&a.chi)?;
    let sigma: ArchRep = serde_json::from_str(&sigma_text).map_err(|e| usage(format!("--sigma: {e}")))?;
    let chi: ArchChar = serde_json::from_str(&chi_text).map_err(|e| usage(format!("--chi: {e}")))?;
    let command = format!(
        "twistbound arch --sigma '{}' --chi '{}'{}{}",
        compact(&sigma),
        compact(&chi),
        if a.allow_outside_strip { " --allow-outside-strip" } else { "" },
        if a.json { " --json" } else { "" }
    );
    let sigma2 = twist_arch(&sigma, &chi).map_err(usage)?;
    let b = lemma_bound_check(&sigma, &chi, a.allow_outside_strip).map_err(usage)?;
    let code = if b.holds { EXIT_OK } else { EXIT_NEGATIVE };
    if a.json {
        emit_json(
            out,
            &json!({
                "command": command,
                "sigma2": sigma2,
                "cond_sigma1": cond_rep(&sigma),
                "cond_sigma2": cond_rep(&sigma2),
                "check": b,
            }),
        )?;
        return Ok(code);
    }
    emit(
        out,
        &format!(
            "# {command}\nsigma2: {}\nC(sigma1) = {}\nC(sigma2) = {}\nC(chi) = {}\nbound = {} * (C(sigma1) C(sigma2))^(1/{}) = {}\nratio = {}\nholds: {}\n",
            compact(&sigma2),
            cond_rep(&sigma),
            cond_rep(&sigma2),
            b.char_conductor,
            b.constant,
            sigma.dim(),
            b.bound,
            b.ratio,
            b.holds
        ),
    )?;
    Ok(code)
}

fn compact<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("values serialize")
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let suites = verify::Suite::parse_selection(&a.suite).map_err(usage)?;
    let command = format!(
        "twistbound verify --suite {} --seed {}{}",
        a.suite,
        a.seed,
        if a.json { " --json" } else { "" }
    );
    let sizes = verify::Sizes::default();
    let reports: Vec<verify::SuiteReport> = suites.iter().map(|&s| verify::run(s, a.seed, &sizes)).collect();
    let all_ok = reports.iter().all(verify::SuiteReport::passed);
    let code = if all_ok { EXIT_OK } else { EXIT_NEGATIVE };
    if a.json {
        emit_json(
            out,
            &json!({"command": command, "sizes": sizes, "passed": all_ok, "suites": reports}),
        )?;
        return Ok(code);
    }
    let mut s = format!("# {command}\n");
    for r in &reports {
        s.push_str(&format!(
            "{}: {} ({} checks, {} violations)\n",
            r.suite,
            if r.passed() { "PASS" } else { "FAIL" },
            r.checks,
            r.violations
        ));
        for n in &r.notes {
            s.push_str(&format!("  {n}\n"));
        }
        for c in &r.counterexamples {
            s.push_str(&format!("  counterexample: {c}\n"));
        }
    }
    s.push_str(if all_ok { "all checks passed\n" } else { "some checks failed\n" });
    emit(out, &s)?;
    Ok(code)
}

fn cmd_fetch(a: &FetchArgs, out: &mut dyn Write) -> CmdResult {
    let base = a.base_url.clone().unwrap_or_else(fetch::default_base_url);
    let dir = a.cache_dir.clone().unwrap_or_else(fetch::default_cache_dir);
    let command = format!(
        "twistbound fetch --label {} --base-url {} --cache-dir {}{}",
        a.label,
        base,
        quote(&dir),
        if a.offline { " --offline" } else { "" }
    );
    let (path, source) = fetch::fetch(&a.label, &base, &dir, a.offline).map_err(io)?;
    let from = match source {
        fetch::Source::Cache => "cache",
        fetch::Source::Network => "network",
    };
    emit(out, &format!("# {command}\n{} ({from})\n", path.display()))
}
