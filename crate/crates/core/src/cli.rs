//! The `parstab` command line: argument parsing, document loading and
//! report rendering. [`run`] does all the work and returns the exit code.
//!
//! Exit codes: 0 success, 1 semantically invalid input, 2 parse error,
//! 3 resource cap exceeded.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::json;

use crate::blocks::DEFAULT_MAX_DEGREE;
use crate::cover::{validate_cover, MonodromyCover};
use crate::doc::{
    BundleDocument, CoverDocument, IntermediateCoverDocument, OrbifoldDocument, ProfileDocument,
};
use crate::error::Error;
use crate::orbifold::{all_intermediate_covers, analyze, OrbifoldStructure, Verdict};
use crate::parabolic::{Namespace, ParabolicDegree, Rational};
use crate::report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "parstab",
    version,
    about = "Decide whether pullback along a branched cover preserves stability of parabolic bundles"
)]
pub struct Cli {
    /// Cover document (JSON); stdin when omitted
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,

    /// Orbifold document (JSON) with marked points and their orders
    #[arg(long, global = true)]
    pub orbifold: Option<PathBuf>,

    /// Bundle document (JSON) on the base curve
    #[arg(long, global = true)]
    pub bundle: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Largest cover degree for which block systems are enumerated
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DEGREE)]
    pub max_degree: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a cover document and print its canonical form
    Validate,
    /// Compute rank F, the stability verdict and the etale intermediate covers
    Analyze {
        /// Also list every block system of the monodromy action
        #[arg(long)]
        list_blocks: bool,
    },
    /// Parabolic structure of the direct image of the structure sheaf
    DirectImage,
    /// Pull a split parabolic bundle back along the cover
    Pullback,
    /// List all block systems (intermediate covers) of the monodromy action
    Blocks,
}

/// A failed command: exit code plus message for stderr.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DegreeCapExceeded { .. } => EXIT_CAP,
            _ => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdin_used: bool,
}

impl Io<'_> {
    fn read(&mut self, path: Option<&PathBuf>, what: &str) -> Result<String, Failure> {
        match path {
            Some(p) => std::fs::read_to_string(p)
                .map_err(|e| Failure::parse(format!("cannot read {what} {}: {e}", p.display()))),
            None => {
                if self.stdin_used {
                    return Err(Failure::parse(format!("{what}: stdin already consumed")));
                }
                self.stdin_used = true;
                let mut s = String::new();
                self.stdin
                    .read_to_string(&mut s)
                    .map_err(|e| Failure::parse(format!("cannot read {what} from stdin: {e}")))?;
                Ok(s)
            }
        }
    }
}

fn parse_document<T: DeserializeOwned>(text: &str, what: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::parse(format!("{what}: {e}")))
}

/// Runs the CLI with the given arguments (including the program name).
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
            } else {
                let _ = write!(stdout, "{e}");
            }
            return code;
        }
    };
    let mut io = Io {
        stdin,
        stdin_used: false,
    };
    let (code, out) = match execute(&cli, &mut io) {
        Ok(result) => result,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            return f.code;
        }
    };
    let _ = stdout.write_all(out.as_bytes());
    code
}

fn execute(cli: &Cli, io: &mut Io<'_>) -> Result<(i32, String), Failure> {
    let cover_text = io.read(cli.input.as_ref(), "cover document")?;
    let cover_doc: CoverDocument = parse_document(&cover_text, "cover document")?;
    let data = cover_doc
        .to_cover_data()
        .map_err(|e| Failure::parse(e.to_string()))?;

    if let Command::Validate = cli.command {
        return Ok(cmd_validate(data, cli.format));
    }
    let cover = MonodromyCover::new(data)?;

    match &cli.command {
        Command::Validate => unreachable!(),
        Command::Analyze { list_blocks } => {
            let orbifold = load_orbifold(cli, io)?.unwrap_or_default();
            cmd_analyze(&cover, &orbifold, cli.max_degree, *list_blocks, cli.format)
        }
        Command::DirectImage => cmd_direct_image(&cover, cli.format),
        Command::Pullback => {
            let path = cli
                .bundle
                .as_ref()
                .ok_or_else(|| Failure::parse("pullback needs --bundle <path>"))?;
            let text = io.read(Some(path), "bundle document")?;
            let doc: BundleDocument = parse_document(&text, "bundle document")?;
            cmd_pullback(&cover, &doc, cli.format)
        }
        Command::Blocks => {
            let orbifold = load_orbifold(cli, io)?;
            cmd_blocks(&cover, orbifold.as_ref(), cli.max_degree, cli.format)
        }
    }
    .map(|out| (EXIT_OK, out))
}

fn load_orbifold(cli: &Cli, io: &mut Io<'_>) -> Result<Option<OrbifoldStructure>, Failure> {
    let Some(path) = cli.orbifold.as_ref() else {
        return Ok(None);
    };
    let text = io.read(Some(path), "orbifold document")?;
    let doc: OrbifoldDocument = parse_document(&text, "orbifold document")?;
    Ok(Some(doc.to_orbifold()?))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

fn frac(r: Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn cmd_validate(data: crate::cover::CoverData, format: Format) -> (i32, String) {
    match validate_cover(data) {
        Ok(cover) => {
            let canonical = CoverDocument::from_cover(&cover);
            let out = match format {
                Format::Json => to_json(&json!({ "valid": true, "cover": canonical })),
                Format::Text => {
                    let mut s = String::from("valid cover\n");
                    let _ = writeln!(s, "degree: {}", cover.degree());
                    let _ = writeln!(s, "base genus: {}", cover.base_genus());
                    if let Ok(g) = cover.genus_of_y() {
                        let _ = writeln!(s, "genus of Y: {g}");
                    }
                    for (x, sigma) in cover.branch() {
                        let _ = writeln!(s, "branch {x}: {sigma} profile {:?}", sigma.cycle_type());
                    }
                    s.push_str("canonical document:\n");
                    s.push_str(&to_json(&canonical));
                    s
                }
            };
            (EXIT_OK, out)
        }
        Err(report) => {
            let violations: Vec<String> =
                report.violations.iter().map(ToString::to_string).collect();
            let out = match format {
                Format::Json => to_json(&json!({ "valid": false, "violations": violations })),
                Format::Text => {
                    let mut s = String::from("invalid cover\n");
                    for v in &violations {
                        let _ = writeln!(s, "  - {v}");
                    }
                    s
                }
            };
            (EXIT_INVALID, out)
        }
    }
}

fn describe_cover(r: &IntermediateCoverDocument) -> String {
    let ram: Vec<String> = r
        .ramification
        .iter()
        .map(|(x, l)| format!("{x}:{l:?}"))
        .collect();
    let blocks: Vec<String> = r
        .blocks
        .iter()
        .map(|b| {
            let pts: Vec<String> = b.iter().map(ToString::to_string).collect();
            format!("{{{}}}", pts.join(","))
        })
        .collect();
    format!(
        "degree {} blocks {{{}}} ramification [{}]{}",
        r.degree_over_x,
        blocks.join(","),
        ram.join(" "),
        if r.etale { " etale" } else { "" }
    )
}

fn cmd_analyze(
    cover: &MonodromyCover,
    orbifold: &OrbifoldStructure,
    max_degree: usize,
    list_blocks: bool,
    format: Format,
) -> Result<String, Failure> {
    let analysis = analyze(cover, orbifold, max_degree)?;
    if format == Format::Json {
        return Ok(to_json(&report::analysis_json(
            cover,
            orbifold,
            &analysis,
            list_blocks,
        )));
    }
    let v = &analysis.verdict;
    let mut s = String::new();
    let _ = writeln!(s, "rank F: {}", v.rank);
    match v.verdict {
        Verdict::Preserved => {
            let _ = writeln!(
                s,
                "verdict: PRESERVED by the rank-one criterion: rank F = 1, so pullbacks of stable parabolic bundles with weights in (1/N_x)Z stay stable"
            );
        }
        Verdict::NotPreserved => {
            let _ = writeln!(
                s,
                "verdict: NOT_PRESERVED by the converse criterion: rank F = {} > 1, so some stable parabolic bundle with weights in (1/N_x)Z pulls back to a non-stable one",
                v.rank
            );
            if let Some(w) = &v.witness {
                let _ = writeln!(s, "obstruction: {}", describe_cover(&w.into()));
            }
        }
    }
    let _ = writeln!(
        s,
        "coprimality hypothesis (every N_x coprime to the ramification indices over x): {}",
        analysis.gr1_hypothesis
    );
    let _ = writeln!(s, "etale intermediate covers: {}", analysis.etale.len());
    for e in &analysis.etale {
        let _ = writeln!(s, "  {}", describe_cover(&e.into()));
    }
    if list_blocks {
        let _ = writeln!(s, "block systems: {}", analysis.all.len());
        for e in &analysis.all {
            let _ = writeln!(s, "  {}", describe_cover(&e.into()));
        }
    }
    Ok(s)
}

fn cmd_direct_image(cover: &MonodromyCover, format: Format) -> Result<String, Failure> {
    let profile = report::checked_direct_image(cover)?;
    if format == Format::Json {
        return Ok(to_json(&report::direct_image_json(&profile)));
    }
    let doc = ProfileDocument::from_profile(&profile);
    let mut s = String::new();
    let _ = writeln!(s, "rank: {}", doc.rank);
    let _ = writeln!(s, "deg: {}", doc.deg);
    for p in &doc.weights {
        let ws: Vec<String> = p
            .weights
            .iter()
            .map(|w| {
                let r = frac(Rational::new(w.num, w.den));
                if w.mult == 1 {
                    r
                } else {
                    format!("{r} x{}", w.mult)
                }
            })
            .collect();
        let _ = writeln!(s, "weights at {}: {}", p.point, ws.join(", "));
    }
    let _ = writeln!(s, "par-deg: {} (verified: 0)", frac(profile.par_deg()));
    s.push_str("self-dual: true\n");
    Ok(s)
}

fn cmd_pullback(
    cover: &MonodromyCover,
    doc: &BundleDocument,
    format: Format,
) -> Result<String, Failure> {
    let bundle = doc.to_bundle(Namespace::Base)?;
    let pulled = report::checked_pullback(cover, &bundle)?;
    if format == Format::Json {
        return Ok(to_json(&report::pullback_json(cover, &bundle, &pulled)));
    }
    let mut s = String::new();
    for (k, l) in pulled.summands().iter().enumerate() {
        let ws: Vec<String> = l
            .weights()
            .iter()
            .map(|(y, w)| format!("{y}: {}", frac(w.value())))
            .collect();
        let _ = writeln!(
            s,
            "summand {k}: deg {} weights [{}]",
            l.deg(),
            ws.join(", ")
        );
    }
    let _ = writeln!(
        s,
        "par-deg(pullback) = {} = {} * {} = degree * par-deg(bundle): verified",
        frac(pulled.par_deg()),
        cover.degree(),
        frac(bundle.par_deg())
    );
    Ok(s)
}

fn cmd_blocks(
    cover: &MonodromyCover,
    orbifold: Option<&OrbifoldStructure>,
    max_degree: usize,
    format: Format,
) -> Result<String, Failure> {
    let empty = OrbifoldStructure::empty();
    let reports = all_intermediate_covers(cover, orbifold.unwrap_or(&empty), max_degree)?;
    let docs: Vec<IntermediateCoverDocument> = reports.iter().map(Into::into).collect();
    Ok(match format {
        Format::Json => to_json(&json!({
            "degree": cover.degree(),
            "block_systems": docs,
        })),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "block systems: {}", docs.len());
            for d in &docs {
                let _ = writeln!(s, "  {}", describe_cover(d));
            }
            s
        }
    })
}
