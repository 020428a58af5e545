//! Command-line front end: file parsing, subcommands and report rendering.

pub mod format;

use std::ffi::OsString;
use std::fmt::Write;
use std::io::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use indeco::catalog::{
    fence_recognize, figure2_recognize, render_table, standard_entries, v_cover_recognize,
    x_recognize,
};
use indeco::covers::upper_covers;
use indeco::decomposition::{classify, Witness};
use indeco::enumeration::{all_posets, canonical_form, ENUMERATION_MAX_N};
use indeco::verify::{Claim, Engine, VerificationReport};
use indeco::{PinnedTriple, Poset, Subset};

pub use format::{parse, parse_poset_file, parse_stream, FileError, PosetFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable capping `--n` and `--max-n`.
pub const MAX_N_ENV: &str = "INDECO_MAX_N";

#[derive(Parser, Debug)]
#[command(
    name = "indeco",
    version,
    about = "Indecomposable subsets of finite ordered sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Indecomposability verdict with a witness.
    Check { file: String },
    /// Upper covers and smallest indecomposable supersets of the pins.
    Covers { file: String },
    /// Test the pinned poset against one catalog family.
    Recognize {
        file: String,
        #[arg(long, value_enum)]
        family: Family,
    },
    /// Stream one file per isomorphism class.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        indecomposable: bool,
    },
    /// Exhaustive claim checks.
    Verify {
        #[arg(long)]
        claim: ClaimArg,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        /// Worker threads; 0 means one per core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Markdown table of the catalog.
    Catalog {
        #[arg(long, default_value_t = 7)]
        x_max: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    X,
    VCover,
    Figure2,
    Fence,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ClaimArg {
    #[value(name = "2chfinal")]
    TwoChFinal,
    #[value(name = "2aclem")]
    TwoAcLem,
    Corollary,
    StGrowth,
    Rigidity,
    XEquiv,
    All,
}

impl ClaimArg {
    fn claim(self) -> Option<Claim> {
        Some(match self {
            ClaimArg::TwoChFinal => Claim::TwoChainCovers,
            ClaimArg::TwoAcLem => Claim::TwoAntichainCovers,
            ClaimArg::Corollary => Claim::Corollary,
            ClaimArg::StGrowth => Claim::StGrowth,
            ClaimArg::Rigidity => Claim::Rigidity,
            ClaimArg::XEquiv => Claim::XEquiv,
            ClaimArg::All => return None,
        })
    }
}

/// Buffered result of one invocation.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn usage(msg: impl std::fmt::Display) -> Output {
        Output {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }

    fn ok(stdout: String) -> Output {
        Output {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    pub fn emit(&self) -> i32 {
        let _ = std::io::stdout().write_all(self.stdout.as_bytes());
        let _ = std::io::stderr().write_all(self.stderr.as_bytes());
        self.code
    }
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Output::ok(text)
            } else {
                Output {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let cap = match std::env::var(MAX_N_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(c) => c.min(ENUMERATION_MAX_N),
            Err(_) => return Output::usage(format!("{MAX_N_ENV} must be a count, got {v:?}")),
        },
        Err(_) => ENUMERATION_MAX_N,
    };
    let result = match cli.command {
        Command::Check { file } => read(&file).and_then(|f| check(&f)),
        Command::Covers { file } => read(&file).and_then(|f| covers(&f)),
        Command::Recognize { file, family } => read(&file).and_then(|f| recognize(&f, family)),
        Command::Enumerate { n, indecomposable } => enumerate(n, indecomposable, cap),
        Command::Verify {
            claim,
            max_n,
            format,
            jobs,
        } => return verify(claim, max_n, format, jobs, cap),
        Command::Catalog { x_max } => Ok(render_table(&standard_entries(x_max))),
    };
    match result {
        Ok(s) => Output::ok(s),
        Err(e) => Output::usage(e),
    }
}

fn read(path: &str) -> Result<PosetFile, String> {
    let text = if path == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| format!("stdin: {e}"))?
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?
    };
    parse(&text).map_err(|e| format!("{path}: {e}"))
}

fn pinned(f: &PosetFile) -> Result<PinnedTriple, String> {
    f.triple()
        .map_err(|e| e.to_string())?
        .ok_or_else(|| "this command needs both `pin a` and `pin b`".to_string())
}

fn check(f: &PosetFile) -> Result<String, String> {
    let p = f.poset().map_err(|e| e.to_string())?;
    let v = classify(&p);
    let mut s = format!(
        "verdict: {}\n",
        serde_json::to_value(v.kind).unwrap().as_str().unwrap()
    );
    match v.witness {
        Witness::None => {}
        Witness::Components(cs) => {
            let parts: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
            let _ = writeln!(s, "components: {}", parts.join(" "));
        }
        Witness::Series { lower, upper } => {
            let _ = writeln!(s, "lower: {lower}\nupper: {upper}");
        }
        Witness::Autonomous(a) => {
            let _ = writeln!(s, "autonomous: {a}");
        }
    }
    Ok(s)
}

/// Catalog names under which the pinned subposet on `s` is recognized.
fn identify(t: &PinnedTriple, s: &Subset) -> String {
    let sub = t.restrict(s).expect("contains the pins");
    let mut names = Vec::new();
    if sub.is_chain() {
        if let Some(id) = figure2_recognize(&sub) {
            names.push(id.to_string());
        }
        if x_recognize(&sub).is_some() {
            names.push("X-member".to_string());
        }
    } else {
        if let Some(f) = fence_recognize(&sub) {
            names.push(format!("fence ({} elements)", f.elements));
        }
        if let Ok(Some(m)) = v_cover_recognize(&sub) {
            names.push(vcover_name(&m));
        }
    }
    if names.is_empty() {
        "unidentified".into()
    } else {
        names.join(" / ")
    }
}

fn vcover_name(m: &indeco::catalog::VCoverMatch) -> String {
    match (m.dual, m.swapped) {
        (false, false) => "V-cover".into(),
        (false, true) => "V-cover (a/b swapped)".into(),
        (true, false) => "V-cover (dual)".into(),
        (true, true) => "V-cover (dual, a/b swapped)".into(),
    }
}

fn covers(f: &PosetFile) -> Result<String, String> {
    let t = pinned(f)?;
    let r = upper_covers(&t.poset, &t.pins()).map_err(|e| e.to_string())?;
    let kind = if t.is_chain() { "chain" } else { "antichain" };
    let mut s = format!("pins: a = {}, b = {} ({kind})\n", t.a, t.b);
    for (title, list) in [
        ("upper covers", &r.covers),
        ("smallest supersets", &r.smallest),
    ] {
        let _ = writeln!(s, "{title}: {}", list.len());
        for c in list {
            let _ = writeln!(s, "  {c} size {}: {}", c.len(), identify(&t, c));
        }
    }
    Ok(s)
}

fn recognize(f: &PosetFile, family: Family) -> Result<String, String> {
    let t = pinned(f)?;
    let line = match family {
        Family::X => x_recognize(&t).map(|steps| {
            let steps: Vec<String> = steps.iter().map(|s| s.to_string()).collect();
            format!("X-member, extensions [{}]", steps.join(", "))
        }),
        Family::Figure2 => figure2_recognize(&t).map(|id| id.to_string()),
        Family::Fence => fence_recognize(&t).map(|m| {
            let flag = if m.meets_threshold() {
                ""
            } else {
                ", below the 4-element threshold"
            };
            format!("fence with {} elements{flag}", m.elements)
        }),
        Family::VCover => v_cover_recognize(&t).map_err(|e| e.to_string())?.map(|m| {
            let fence: Vec<String> = m.fence.iter().map(|x| x.to_string()).collect();
            format!(
                "{}, l = {}, d = {}, h = {}, F = [{}]",
                vcover_name(&m),
                m.l,
                m.d,
                m.h,
                fence.join(", ")
            )
        }),
    };
    Ok(match line {
        Some(l) => format!("yes: {l}\n"),
        None => "no\n".into(),
    })
}

fn enumerate(n: usize, indecomposable: bool, cap: usize) -> Result<String, String> {
    if n > cap {
        return Err(format!("--n {n} exceeds the bound {cap}"));
    }
    let posets: Vec<Poset> = all_posets(n)
        .map_err(|e| e.to_string())?
        .into_iter()
        .filter(|p| !indecomposable || indeco::decomposition::is_indecomposable(p))
        .collect();
    let mut s = String::new();
    let total = posets.len();
    for (i, p) in posets.iter().enumerate() {
        let mut f = PosetFile::from_poset(p);
        f.comments = vec![format!(" {}/{total} {}", i + 1, canonical_form(p).unwrap())];
        if i > 0 {
            s.push('\n');
        }
        s.push_str(&f.serialize());
    }
    Ok(s)
}

fn verify(claim: ClaimArg, max_n: usize, fmt: OutputFormat, jobs: usize, cap: usize) -> Output {
    if max_n > cap {
        return Output::usage(format!("--max-n {max_n} exceeds the bound {cap}"));
    }
    let mut engine = match Engine::new(jobs) {
        Ok(e) => e,
        Err(e) => return Output::usage(e),
    };
    let reports = match claim.claim() {
        Some(c) => engine.run(c, max_n).map(|r| vec![r]),
        None => engine.run_all(max_n),
    };
    let reports = match reports {
        Ok(r) => r,
        Err(e) => return Output::usage(e),
    };
    let stdout = match fmt {
        OutputFormat::Json => {
            let mut s = if claim == ClaimArg::All {
                serde_json::to_string_pretty(&reports)
            } else {
                serde_json::to_string_pretty(&reports[0])
            }
            .expect("reports serialize");
            s.push('\n');
            s
        }
        OutputFormat::Text => reports
            .iter()
            .map(render_text)
            .collect::<Vec<_>>()
            .join("\n"),
    };
    let code = if reports.iter().all(VerificationReport::passed) {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    };
    Output {
        code,
        stdout,
        stderr: String::new(),
    }
}

pub fn render_text(r: &VerificationReport) -> String {
    let mut s = format!(
        "claim {}: {}\nmax_n: {}\ninstances_checked: {}\nviolations: {}\n",
        r.claim,
        if r.passed() { "PASS" } else { "FAIL" },
        r.max_n,
        r.instances_checked,
        r.violations.len()
    );
    for v in &r.violations {
        let _ = writeln!(
            s,
            "  poset {} pins {:?} subset {:?}: {}",
            v.poset, v.pins, v.subset, v.reason
        );
    }
    for n in &r.notes {
        let _ = writeln!(s, "note: {n}");
    }
    let _ = writeln!(s, "elapsed_ms: {}\nversion: {}", r.elapsed_ms, r.version);
    s
}
