mod render;

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hnnkit::base_groups::BaseGroup;
use hnnkit::cayley::{build_ball, export_ball, Ball, ExportFormat, GroupOracle, DEFAULT_ELEMENT_CAP};
use hnnkit::convexity::{
    ac_profile, fftp_bound, fftp_search, hnn_bounds, verify_parallel_signatures, FftpOptions, FftpReport, SearchMode,
    WordSet,
};
use hnnkit::hnn::HnnGroup;
use hnnkit::specfile::{AnyGroup, GroupSpec};
use hnnkit::{preset_spec, with_group, Error};

#[derive(Parser)]
#[command(name = "hnnkit", version, about = "Normal forms, Cayley balls and convexity experiments for HNN extensions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
struct Source {
    /// Shipped group: wise, g2, z2_abcd, z2_ab or f2
    #[arg(long)]
    preset: Option<String>,
    /// Group specification file
    #[arg(long, value_name = "PATH")]
    spec: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct Common {
    #[command(flatten)]
    source: Source,
    /// Maximum number of elements in any ball
    #[arg(long, env = "HNNKIT_MEM_CAP", default_value_t = DEFAULT_ELEMENT_CAP, value_name = "ELEMENTS")]
    mem_cap: usize,
    /// Worker threads (default: available cores)
    #[arg(long, value_name = "K")]
    jobs: Option<usize>,
    /// Write output here instead of standard output
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Words {
    All,
    Reduced,
}

impl From<Words> for WordSet {
    fn from(w: Words) -> Self {
        match w {
            Words::All => WordSet::All,
            Words::Reduced => WordSet::Reduced,
        }
    }
}

fn parse_mode(s: &str) -> std::result::Result<SearchMode, String> {
    if s == "exhaustive" {
        return Ok(SearchMode::Exhaustive);
    }
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        ["sampled", count, seed] => Ok(SearchMode::Sampled {
            count: count.parse().map_err(|_| format!("bad sample count `{count}`"))?,
            seed: seed.parse().map_err(|_| format!("bad seed `{seed}`"))?,
        }),
        _ => Err("expected `exhaustive` or `sampled:COUNT:SEED`".into()),
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the normal form and stable-letter signature of a word
    Normalize {
        #[command(flatten)]
        common: Common,
        word: String,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Build the ball of radius N and export it
    Ball {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'N', default_value_t = 3)]
        n: u32,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Almost-convexity profile C(N) for 1 ≤ N ≤ Nmax, with the theoretical bounds
    Ac {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'N', default_value_t = 4)]
        n: u32,
        /// Fellow-traveller constant of the base; derived by exhaustive search when omitted
        #[arg(long)]
        k: Option<u32>,
        /// Word length for deriving k
        #[arg(long, default_value_t = 7)]
        max_len: usize,
        /// Largest fellow distance tried when deriving k
        #[arg(long, default_value_t = 6)]
        k_cap: u32,
        #[arg(long, value_enum, default_value = "all")]
        words: Words,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Search for the fellow-traveller constant
    Fftp {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 7)]
        max_len: usize,
        #[arg(long, default_value_t = 6)]
        k_cap: u32,
        /// `exhaustive` or `sampled:COUNT:SEED`
        #[arg(long, value_parser = parse_mode, default_value = "exhaustive")]
        mode: SearchMode,
        #[arg(long, value_enum, default_value = "all")]
        words: Words,
        /// Include every word with its companion in the report
        #[arg(long)]
        pairs: bool,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Check strip equidistance and (total) geodesicity of the associated subgroups
    VerifyIsometric {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Check that all geodesics to each element share their stable letters
    Signatures {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'N', default_value_t = 5)]
        n: u32,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Violation,
    Resource,
}

impl Status {
    fn of(pass: bool) -> Self {
        if pass {
            Status::Pass
        } else {
            Status::Violation
        }
    }

    fn code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Violation => 1,
            Status::Resource => 2,
        }
    }
}

struct Outcome {
    json: Value,
    text: String,
    status: Status,
}

struct Run {
    command: &'static str,
    group: String,
    config: Vec<(&'static str, String)>,
    start: Instant,
}

impl Run {
    fn header_text(&self) -> String {
        let config: Vec<String> = self.config.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!(
            "# hnnkit {}\n# command: {}\n# group: {}\n# config: {}\n# jobs: {}\n# wall time: {:.3} s\n",
            env!("CARGO_PKG_VERSION"),
            self.command,
            self.group,
            config.join(" "),
            rayon::current_num_threads(),
            self.start.elapsed().as_secs_f64()
        )
    }

    fn header_json(&self) -> Value {
        let config: serde_json::Map<String, Value> =
            self.config.iter().map(|(k, v)| (k.to_string(), Value::String(v.clone()))).collect();
        json!({
            "version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "group": self.group,
            "config": config,
            "jobs": rayon::current_num_threads(),
            "wall_time_s": self.start.elapsed().as_secs_f64(),
        })
    }
}

fn load(source: &Source) -> Result<(GroupSpec, String)> {
    match (&source.preset, &source.spec) {
        (Some(name), _) => Ok((preset_spec(name)?, format!("preset {name}"))),
        (_, Some(path)) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let spec = GroupSpec::parse(&text).with_context(|| format!("in {}", path.display()))?;
            Ok((spec, format!("spec {}", path.display())))
        }
        _ => unreachable!("clap enforces a source"),
    }
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, content).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
            Ok(())
        }
    }
}

fn progress(msg: &str) {
    eprintln!("hnnkit: {msg}");
}

fn ball_with_progress<G: GroupOracle>(g: &G, radius: u32, cap: usize) -> Result<Ball<G::Key>> {
    progress(&format!("building ball of radius {radius}"));
    let ball = build_ball(g, radius, cap)?;
    progress(&format!("ball of radius {radius}: {} elements", ball.len()));
    Ok(ball)
}

fn report_format(format: Format) -> Result<Format> {
    match format {
        Format::Table | Format::Json => Ok(format),
        _ => bail!("this command writes `table` or `json` reports"),
    }
}

// ---------------------------------------------------------------------------

fn signature_string(alphabet: &hnnkit::Alphabet, letters: &[hnnkit::Letter]) -> String {
    let names: Vec<String> = letters.iter().map(|&l| alphabet.letter_str(l)).collect();
    format!("[{}]", names.join(", "))
}

fn normalize_base<B: BaseGroup>(g: &B, word: &str) -> Result<(String, String, String)> {
    let w = g.alphabet().parse(word)?;
    let key = g.evaluate(&w);
    let geo = g.geodesic_word(&key)?;
    Ok((g.alphabet().format(&geo), g.format_key(&key), "[]".into()))
}

fn normalize_hnn<B: BaseGroup>(g: &HnnGroup<B>, word: &str) -> Result<(String, String, String)> {
    let w = g.alphabet().parse(word)?;
    let nf = g.normal_form(&w);
    let nw = g.nf_word(&nf)?;
    Ok((g.alphabet().format(&nw), g.format_key(&nf), signature_string(g.alphabet(), nf.stable_letter_signature())))
}

fn cmd_normalize(common: &Common, word: &str, format: Format) -> Result<Status> {
    let (spec, _) = load(&common.source)?;
    let group = spec.build(common.mem_cap)?;
    let (nf, key, sig) = match &group {
        AnyGroup::Abelian(g) => normalize_base(g, word)?,
        AnyGroup::Free(g) => normalize_base(g, word)?,
        AnyGroup::HnnAbelian(g) => normalize_hnn(g, word)?,
        AnyGroup::HnnFree(g) => normalize_hnn(g, word)?,
    };
    let nf = if nf.is_empty() { "identity".to_string() } else { nf };
    let text = match report_format(format)? {
        Format::Json => {
            serde_json::to_string_pretty(&json!({"word": word, "normal_form": nf, "key": key, "signature": sig}))?
                + "\n"
        }
        _ => format!("{nf}\nsignature: {sig}\nkey: {key}\n"),
    };
    emit(&common.out, &text)?;
    Ok(Status::Pass)
}

fn cmd_ball(common: &Common, n: u32, format: Format) -> Result<Status> {
    let (spec, group_name) = load(&common.source)?;
    let group = spec.build(common.mem_cap)?;
    let run = Run {
        command: "ball",
        group: group_name,
        config: vec![("N", n.to_string()), ("mem_cap", common.mem_cap.to_string())],
        start: Instant::now(),
    };
    let (data, sizes) = with_group!(&group, g => {
        let ball = ball_with_progress(g, n, common.mem_cap)?;
        let data = match format {
            Format::Dot => Some(export_ball(g, &ball, ExportFormat::Dot)),
            Format::Json => Some(export_ball(g, &ball, ExportFormat::Json)),
            Format::Csv => Some(export_ball(g, &ball, ExportFormat::Csv)),
            Format::Table => None,
        };
        (data, ball.sphere_sizes().to_vec())
    });
    match data {
        Some(data) => {
            eprint!("{}", run.header_text());
            emit(&common.out, &data)?;
        }
        None => emit(&common.out, &format!("{}\n{}", run.header_text(), render::sphere_sizes(&sizes)))?,
    }
    Ok(Status::Pass)
}

fn finish(run: Run, common: &Common, format: Format, outcome: Outcome) -> Result<Status> {
    let text = match format {
        Format::Json => {
            serde_json::to_string_pretty(&json!({"header": run.header_json(), "report": outcome.json}))? + "\n"
        }
        _ => format!("{}\n{}", run.header_text(), outcome.text),
    };
    emit(&common.out, &text)?;
    Ok(outcome.status)
}

fn fftp_generic<G: GroupOracle>(g: &G, opts: &FftpOptions, cap: usize) -> Result<FftpReport> {
    let ball = ball_with_progress(g, opts.required_radius(), cap)?;
    progress("searching for fellow-travelling companions");
    Ok(fftp_search(g, &ball, opts)?)
}

fn max_associated_length<B: BaseGroup>(g: &HnnGroup<B>) -> Result<u32> {
    let mut m = 0;
    for p in g.pairs() {
        for w in p.u_words().iter().chain(p.v_words()) {
            m = m.max(g.base().geodesic_length(w)?);
        }
    }
    Ok(m)
}

#[allow(clippy::too_many_arguments)]
fn cmd_ac(
    common: &Common,
    n: u32,
    k: Option<u32>,
    max_len: usize,
    k_cap: u32,
    words: Words,
    format: Format,
) -> Result<Status> {
    let format = report_format(format)?;
    let (spec, group_name) = load(&common.source)?;
    let group = spec.build(common.mem_cap)?;
    let mut config = vec![("N", n.to_string())];
    let (k, k_json, k_text, k_ok) = match k {
        Some(k) => {
            config.push(("k", k.to_string()));
            (k, json!({"value": k, "source": "given"}), format!("k = {k} (given)\n"), true)
        }
        None => {
            config.push(("max_len", max_len.to_string()));
            config.push(("k_cap", k_cap.to_string()));
            config.push(("words", if words == Words::All { "all" } else { "reduced" }.to_string()));
            let opts = FftpOptions { words: words.into(), ..FftpOptions::exhaustive(max_len, k_cap) };
            let base = spec.base_spec().build(common.mem_cap)?;
            progress("deriving the fellow-traveller constant of the base");
            let r = with_group!(&base, g => fftp_generic(g, &opts, common.mem_cap)?);
            let text = format!(
                "k = {} (exhaustive search on the base: max-len {}, k-cap {}, {} non-geodesic words, {} unverified)\n",
                r.k_min, r.max_len, r.k_cap, r.non_geodesic, r.unverified_count
            );
            let j = json!({
                "value": r.k_min,
                "source": "derived",
                "max_len": r.max_len,
                "k_cap": r.k_cap,
                "words": r.words,
                "tested": r.tested,
                "non_geodesic": r.non_geodesic,
                "unverified": r.unverified_count,
            });
            (r.k_min, j, text, r.verified())
        }
    };
    config.push(("mem_cap", common.mem_cap.to_string()));
    let run = Run { command: "ac", group: group_name, config, start: Instant::now() };

    let max_u = match &group {
        AnyGroup::HnnAbelian(g) => Some(max_associated_length(g)?),
        AnyGroup::HnnFree(g) => Some(max_associated_length(g)?),
        _ => None,
    };
    let report = with_group!(&group, g => {
        let ball = ball_with_progress(g, n + 1, common.mem_cap)?;
        progress("measuring C(N)");
        ac_profile(g, &ball, n)?
    });
    let bounds = match max_u {
        Some(u) => hnn_bounds(k, u, report.max_c),
        None => vec![fftp_bound(k, report.max_c)],
    };
    let mut text = render::ac(&report);
    text.push('\n');
    text += &k_text;
    if let Some(u) = max_u {
        text += &format!("max |u| = {u}\n");
    }
    text.push('\n');
    text += &render::bounds(&bounds, report.max_c);
    let pass = k_ok && bounds[0].holds;
    text += &format!("\n{}\n", if pass { "PASS" } else { "FAIL" });
    let json = json!({"ac": report, "k": k_json, "max_u": max_u, "bounds": bounds, "pass": pass});
    finish(run, common, format, Outcome { json, text, status: Status::of(pass) })
}

#[allow(clippy::too_many_arguments)]
fn cmd_fftp(
    common: &Common,
    max_len: usize,
    k_cap: u32,
    mode: SearchMode,
    words: Words,
    pairs: bool,
    format: Format,
) -> Result<Status> {
    let format = report_format(format)?;
    let (spec, group_name) = load(&common.source)?;
    let group = spec.build(common.mem_cap)?;
    let mode_str = match mode {
        SearchMode::Exhaustive => "exhaustive".to_string(),
        SearchMode::Sampled { count, seed } => format!("sampled:{count}:{seed}"),
    };
    let run = Run {
        command: "fftp",
        group: group_name,
        config: vec![
            ("max_len", max_len.to_string()),
            ("k_cap", k_cap.to_string()),
            ("mode", mode_str),
            ("words", if words == Words::All { "all" } else { "reduced" }.to_string()),
            ("mem_cap", common.mem_cap.to_string()),
        ],
        start: Instant::now(),
    };
    let opts = FftpOptions { max_len, k_cap, mode, words: words.into(), keep_pairs: pairs };
    let report = with_group!(&group, g => fftp_generic(g, &opts, common.mem_cap)?);
    let mut text = render::fftp(&report);
    text += &format!("\n{}\n", if report.verified() { "PASS" } else { "FAIL" });
    let status = Status::of(report.verified());
    finish(run, common, format, Outcome { json: serde_json::to_value(&report)?, text, status })
}

fn cmd_verify_isometric(common: &Common, max_len: usize, format: Format) -> Result<Status> {
    let format = report_format(format)?;
    let (spec, group_name) = load(&common.source)?;
    let group = spec.build(common.mem_cap)?;
    let run = Run {
        command: "verify-isometric",
        group: group_name,
        config: vec![("max_len", max_len.to_string()), ("mem_cap", common.mem_cap.to_string())],
        start: Instant::now(),
    };
    let report = match &group {
        AnyGroup::HnnAbelian(g) => g.verify_isometric(max_len),
        AnyGroup::HnnFree(g) => g.verify_isometric(max_len),
        _ => bail!("verify-isometric needs a specification with stable letters"),
    };
    let status = if !report.complete { Status::Resource } else { Status::of(report.pass()) };
    let text = render::isometric(&report);
    finish(run, common, format, Outcome { json: serde_json::to_value(&report)?, text, status })
}

fn cmd_signatures(common: &Common, n: u32, format: Format) -> Result<Status> {
    let format = report_format(format)?;
    let (spec, group_name) = load(&common.source)?;
    let group = spec.build(common.mem_cap)?;
    let run = Run {
        command: "signatures",
        group: group_name,
        config: vec![("N", n.to_string()), ("mem_cap", common.mem_cap.to_string())],
        start: Instant::now(),
    };
    let report = match &group {
        AnyGroup::HnnAbelian(g) => verify_parallel_signatures(g, &ball_with_progress(g, n, common.mem_cap)?),
        AnyGroup::HnnFree(g) => verify_parallel_signatures(g, &ball_with_progress(g, n, common.mem_cap)?),
        _ => bail!("signatures needs a specification with stable letters"),
    };
    let text = render::signatures(&report);
    let status = Status::of(report.pass());
    finish(run, common, format, Outcome { json: serde_json::to_value(&report)?, text, status })
}

fn run(cli: Cli) -> Result<Status> {
    let common = match &cli.command {
        Command::Normalize { common, .. }
        | Command::Ball { common, .. }
        | Command::Ac { common, .. }
        | Command::Fftp { common, .. }
        | Command::VerifyIsometric { common, .. }
        | Command::Signatures { common, .. } => common,
    };
    if let Some(jobs) = common.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global()?;
    }
    match &cli.command {
        Command::Normalize { common, word, format } => cmd_normalize(common, word, *format),
        Command::Ball { common, n, format } => cmd_ball(common, *n, *format),
        Command::Ac { common, n, k, max_len, k_cap, words, format } => {
            cmd_ac(common, *n, *k, *max_len, *k_cap, *words, *format)
        }
        Command::Fftp { common, max_len, k_cap, mode, words, pairs, format } => {
            cmd_fftp(common, *max_len, *k_cap, *mode, *words, *pairs, *format)
        }
        Command::VerifyIsometric { common, max_len, format } => cmd_verify_isometric(common, *max_len, *format),
        Command::Signatures { common, n, format } => cmd_signatures(common, *n, *format),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(status) => ExitCode::from(status.code()),
        Err(e) => {
            if let Some(Error::MemoryCap { .. }) = e.downcast_ref::<Error>() {
                eprintln!("error: {e:#} (raise --mem-cap or HNNKIT_MEM_CAP)");
            } else {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(Status::Resource.code())
        }
    }
}
