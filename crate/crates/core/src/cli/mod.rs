//! Command-line front end.
//!
//! Exit status: 0 on success, 1 when the input or a check fails validation
//! (the report is still written), 2 on I/O, parse or usage errors.

mod report;

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::Value;

pub use report::{round_sig12, GeneratorRow, LengthRow, Report, SeriesSummary, TileRow};

use crate::check::{self, CheckOptions};
use crate::exec::Execution;
use crate::flute::{self, FluteGroup, SequenceSpec, Tail, TypeVerdict};
use crate::geodesic::Geodesic;
use crate::monster::{self, MonsterSpec};
use crate::render::{self, Style, Viewport};
use crate::tess::{self, GroupPresentation, OrbitConfig, DEFAULT_TILE_CAP};
use crate::tol;

/// Environment variable overriding the geometric comparison tolerance.
pub const TOLERANCE_ENV: &str = "FUCHSIA_TOLERANCE";

#[derive(Debug, Parser)]
#[command(
    name = "fuchsia",
    version,
    about = "Flute and Loch Ness monster Fuchsian groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Generators, classes and sides of a flute group.
    BuildFlute,
    /// Generators of a monster group; fails on invalid windows.
    BuildMonster,
    /// Series verdict (flute) or first/second kind verdict (monster).
    Classify,
    /// Length parameters recovered from the generators.
    FnParams,
    /// Orbit tiles and limit-set sample up to a word length.
    Tessellate,
    /// SVG drawing of the orbit tiles.
    Render,
    /// Full invariant suite; fails on any violation.
    Check,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::BuildFlute => "build-flute",
            Command::BuildMonster => "build-monster",
            Command::Classify => "classify",
            Command::FnParams => "fn-params",
            Command::Tessellate => "tessellate",
            Command::Render => "render",
            Command::Check => "check",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Svg,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// JSON spec file; standard input when absent.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Number of flute generators (overrides the spec's `n_generators`).
    #[arg(long, global = true)]
    pub n_generators: Option<usize>,
    /// Maximum word length for orbit enumeration.
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    /// Drawing window as XMIN:XMAX:YMAX.
    #[arg(long, global = true, value_parser = parse_viewport, allow_hyphen_values = true)]
    pub viewport: Option<Viewport>,
    #[arg(long, global = true, default_value_t = DEFAULT_TILE_CAP)]
    pub tile_cap: usize,
    /// Defaults to svg for `render`, json otherwise.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true)]
    pub width: Option<f64>,
    #[arg(long, global = true)]
    pub stroke_width: Option<f64>,
    /// Comma-separated stroke colors.
    #[arg(long, global = true)]
    pub palette: Option<String>,
    /// Label the fundamental domain's sides.
    #[arg(long, global = true)]
    pub labels: bool,
    /// Run without the thread pool.
    #[arg(long, global = true)]
    pub sequential: bool,
}

fn parse_viewport(s: &str) -> Result<Viewport, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [x_min, x_max, y_max] = parts.as_slice() else {
        return Err("expected XMIN:XMAX:YMAX".into());
    };
    let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    Viewport::new(num(x_min)?, num(x_max)?, num(y_max)?).map_err(|e| e.to_string())
}

/// Reads the tolerance override; `Ok(None)` when unset.
pub fn tolerance_from_env() -> Result<Option<f64>, String> {
    match std::env::var(TOLERANCE_ENV) {
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(format!("{TOLERANCE_ENV}: {e}")),
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(t) if t.is_finite() && t > 0.0 => Ok(Some(t)),
            _ => Err(format!("{TOLERANCE_ENV}={s:?} is not a positive number")),
        },
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FluteInput {
    prefix: Vec<f64>,
    #[serde(default = "no_tail")]
    tail: Tail,
    #[serde(default)]
    n_generators: Option<usize>,
}

fn no_tail() -> Tail {
    Tail::None
}

enum Input {
    Flute {
        spec: SequenceSpec,
        n_generators: usize,
    },
    Monster(MonsterSpec),
}

/// Why a command stopped early.
enum Failure {
    /// Exit 2.
    Usage(String),
    /// Exit 1; the messages go to stderr.
    Invalid(Vec<String>),
}

impl Failure {
    fn invalid(msg: impl ToString) -> Self {
        Failure::Invalid(vec![msg.to_string()])
    }
}

struct Outcome {
    bytes: Vec<u8>,
    /// Messages that make the command fail with exit 1 after writing.
    violations: Vec<String>,
}

struct Context {
    command: Command,
    opts: Options,
    tol: f64,
    exec: Execution,
}

fn read_input(opts: &Options) -> Result<String, Failure> {
    match &opts.input {
        Some(p) => {
            fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
        }
        None => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn parse_input(text: &str, opts: &Options) -> Result<Input, Failure> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Failure::Usage(format!("input: {e}")))?;
    if value.get("windows").is_some() {
        let spec: MonsterSpec = serde_json::from_value(value)
            .map_err(|e| Failure::Usage(format!("monster spec: {e}")))?;
        return Ok(Input::Monster(spec));
    }
    let raw: FluteInput =
        serde_json::from_value(value).map_err(|e| Failure::Usage(format!("flute spec: {e}")))?;
    let n_generators = opts
        .n_generators
        .or(raw.n_generators)
        .unwrap_or(raw.prefix.len().max(1));
    let spec = SequenceSpec::new(raw.prefix, raw.tail).map_err(Failure::invalid)?;
    Ok(Input::Flute { spec, n_generators })
}

fn flute_group(ctx: &Context, spec: &SequenceSpec, n: usize) -> Result<FluteGroup, Failure> {
    flute::build_flute_with(spec, n, ctx.exec).map_err(Failure::invalid)
}

fn monster_group(ctx: &Context, spec: &MonsterSpec) -> Result<monster::MonsterGroup, Failure> {
    monster::build_monster_with(spec, ctx.exec).map_err(|e| match e {
        monster::MonsterError::InvalidWindow(vs) => {
            Failure::Invalid(vs.iter().map(|v| v.to_string()).collect())
        }
        other => Failure::invalid(other),
    })
}

fn flute_generator_rows(group: &FluteGroup, tol: f64) -> Vec<GeneratorRow> {
    group
        .generators()
        .iter()
        .zip(group.sides())
        .enumerate()
        .map(|(n, (g, (plus, minus)))| GeneratorRow::new(format!("g{n}"), g, tol, [*plus, *minus]))
        .collect()
}

fn monster_generator_rows(group: &monster::MonsterGroup, tol: f64) -> Vec<GeneratorRow> {
    let hc = Geodesic::HalfCircle;
    group
        .pairs
        .iter()
        .flat_map(|p| {
            [
                GeneratorRow::new(
                    format!("f{}", p.index),
                    &p.f,
                    tol,
                    [hc(p.sigma), hc(p.sigma_tilde)],
                ),
                GeneratorRow::new(
                    format!("g{}", p.index),
                    &p.g,
                    tol,
                    [hc(p.rho), hc(p.rho_tilde)],
                ),
            ]
        })
        .collect()
}

fn series_summary(spec: &SequenceSpec, n: usize) -> SeriesSummary {
    let verdict = flute::classify_type(spec);
    let growth = match verdict {
        TypeVerdict::Unknown => flute::growth_diagnostic(spec, n.max(1)).ok(),
        _ => None,
    };
    SeriesSummary {
        verdict,
        convex_core: flute::convex_core_boundary(spec).ok().flatten(),
        growth,
    }
}

fn json(report: &Report) -> Vec<u8> {
    report.to_json().into_bytes()
}

fn presentation(
    ctx: &Context,
    input: &Input,
) -> Result<(GroupPresentation, &'static str), Failure> {
    match input {
        Input::Flute { spec, n_generators } => Ok((
            GroupPresentation::from_flute(&flute_group(ctx, spec, *n_generators)?),
            "flute",
        )),
        Input::Monster(spec) => Ok((
            GroupPresentation::from_monster(&monster_group(ctx, spec)?),
            "monster",
        )),
    }
}

fn style(opts: &Options) -> Style {
    let mut style = Style::default();
    if let Some(w) = opts.width {
        style.width_px = w;
    }
    if let Some(w) = opts.stroke_width {
        style.stroke_width = w;
    }
    if let Some(p) = &opts.palette {
        style.palette = p
            .split(',')
            .map(|c| c.trim().to_string())
            .filter(|c| !c.is_empty())
            .collect();
    }
    style.labels = opts.labels;
    style
}

fn tessellate(ctx: &Context, input: &Input, default_depth: usize) -> Result<Outcome, Failure> {
    let (pres, family) = presentation(ctx, input)?;
    let depth = ctx.opts.depth.unwrap_or(default_depth);
    let config = OrbitConfig {
        tile_cap: ctx.opts.tile_cap,
        tol: ctx.tol,
        exec: ctx.exec,
    };
    let orbit = tess::enumerate_orbit_with(&pres, depth, &config).map_err(Failure::invalid)?;
    let default_format = if ctx.command == Command::Render {
        Format::Svg
    } else {
        Format::Json
    };
    if ctx.opts.format.unwrap_or(default_format) == Format::Svg {
        let vp = ctx
            .opts
            .viewport
            .unwrap_or_else(|| Viewport::fit(pres.boundary_arcs()));
        let bytes = render::render_svg(&pres, &orbit.tiles, &vp, &style(&ctx.opts))
            .map_err(|e| Failure::Usage(e.to_string()))?;
        return Ok(Outcome {
            bytes,
            violations: Vec::new(),
        });
    }
    let mut report = Report::new(ctx.command.name(), family);
    report.tiles = Some(
        orbit
            .tiles
            .iter()
            .map(|t| TileRow {
                word: pres.word_label(&t.word),
                matrix: t.map.entries(),
            })
            .collect(),
    );
    report.limit_points = Some(tess::fixed_points_of_tiles(&orbit.tiles, &config));
    report.diagnostics = orbit
        .collisions
        .iter()
        .map(|c| {
            format!(
                "word {} repeats tile {}",
                pres.word_label(&c.word),
                pres.word_label(&orbit.tiles[c.existing_tile].word)
            )
        })
        .collect();
    Ok(Outcome {
        bytes: json(&report),
        violations: Vec::new(),
    })
}

fn execute(ctx: &Context, input: &Input) -> Result<Outcome, Failure> {
    let ok = |report: Report| Outcome {
        bytes: json(&report),
        violations: Vec::new(),
    };
    let name = ctx.command.name();
    match (ctx.command, input) {
        (Command::Tessellate, _) => tessellate(ctx, input, 2),
        (Command::Render, _) => tessellate(ctx, input, 0),

        (Command::BuildFlute, Input::Flute { spec, n_generators }) => {
            let group = flute_group(ctx, spec, *n_generators)?;
            let mut r = Report::new(name, "flute");
            r.generators = Some(flute_generator_rows(&group, ctx.tol));
            r.integral = Some(group.is_integral(ctx.tol));
            r.series = Some(series_summary(spec, *n_generators));
            Ok(ok(r))
        }
        (Command::BuildMonster, Input::Monster(spec)) => {
            let report = monster::validate_windows(spec);
            if !report.is_valid() {
                let messages: Vec<String> =
                    report.violations.iter().map(|v| v.to_string()).collect();
                let mut r = Report::new(name, "monster");
                r.diagnostics = messages.clone();
                return Ok(Outcome {
                    bytes: json(&r),
                    violations: messages,
                });
            }
            let group = monster_group(ctx, spec)?;
            let mut r = Report::new(name, "monster");
            r.generators = Some(monster_generator_rows(&group, ctx.tol));
            r.kind = monster::first_kind_check(spec).ok();
            Ok(ok(r))
        }
        (Command::BuildFlute, Input::Monster(_)) => Err(Failure::Usage(
            "build-flute needs a flute spec (prefix/tail)".into(),
        )),
        (Command::BuildMonster, Input::Flute { .. }) => Err(Failure::Usage(
            "build-monster needs a monster spec (windows)".into(),
        )),

        (Command::Classify, Input::Flute { spec, n_generators }) => {
            let mut r = Report::new(name, "flute");
            r.series = Some(series_summary(spec, *n_generators));
            Ok(ok(r))
        }
        (Command::Classify, Input::Monster(spec)) => {
            let kind = monster::first_kind_check(spec).map_err(|e| match e {
                monster::MonsterError::InvalidWindow(vs) => {
                    Failure::Invalid(vs.iter().map(|v| v.to_string()).collect())
                }
                other => Failure::invalid(other),
            })?;
            let mut r = Report::new(name, "monster");
            r.kind = Some(kind);
            r.diagnostics = spec
                .gaps()
                .iter()
                .map(|k| format!("gap after window {k}"))
                .collect();
            Ok(ok(r))
        }

        (Command::FnParams, Input::Flute { spec, n_generators }) => {
            let group = flute_group(ctx, spec, *n_generators)?;
            let s = group.partial_sums();
            let mut rows = Vec::with_capacity(group.len().saturating_sub(1));
            let mut diagnostics = Vec::new();
            for (n, g) in group.generators().iter().enumerate().skip(1) {
                let length = flute::length_param(n, s).map_err(Failure::invalid)?;
                let translation_length = g.translation_length_with(ctx.tol).unwrap_or(f64::NAN);
                if !translation_length.is_finite() {
                    diagnostics.push(format!("g{n} is not hyperbolic"));
                }
                rows.push(LengthRow {
                    n,
                    length,
                    translation_length,
                    series_term: flute::basmajian_term(n, s).map_err(Failure::invalid)?,
                });
            }
            let mut r = Report::new(name, "flute");
            r.lengths = Some(rows);
            r.diagnostics = diagnostics;
            Ok(ok(r))
        }
        (Command::FnParams, Input::Monster(_)) => Err(Failure::Usage(
            "fn-params needs a flute spec (prefix/tail)".into(),
        )),

        (Command::Check, _) => {
            let opts = CheckOptions {
                tol: ctx.tol,
                depth: ctx.opts.depth.unwrap_or(2),
                exec: ctx.exec,
                ..CheckOptions::default()
            };
            let (family, results) = match input {
                Input::Flute { spec, n_generators } => {
                    let group = flute_group(ctx, spec, *n_generators)?;
                    ("flute", check::check_flute(spec, &group, &opts))
                }
                Input::Monster(spec) => ("monster", check::check_monster(spec, &opts)),
            };
            let violations = results
                .iter()
                .filter(|c| !c.passed)
                .map(|c| format!("{}: {}", c.name, c.detail))
                .collect();
            let mut r = Report::new(name, family);
            r.checks = Some(results);
            Ok(Outcome {
                bytes: json(&r),
                violations,
            })
        }
    }
}

fn write_output(opts: &Options, bytes: &[u8]) -> io::Result<()> {
    match &opts.output {
        Some(p) => fs::write(p, bytes),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()
        }
    }
}

/// Runs one command and returns the process exit status.
pub fn run(cli: &Cli) -> u8 {
    let tol = match tolerance_from_env() {
        Ok(t) => t.unwrap_or(tol::GEOMETRY),
        Err(msg) => {
            eprintln!("error: {msg}");
            return 2;
        }
    };
    let ctx = Context {
        command: cli.command,
        opts: cli.opts.clone(),
        tol,
        exec: if cli.opts.sequential {
            Execution::Sequential
        } else {
            Execution::default()
        },
    };
    let outcome = read_input(&ctx.opts)
        .and_then(|text| parse_input(&text, &ctx.opts))
        .and_then(|input| execute(&ctx, &input));
    match outcome {
        Ok(Outcome { bytes, violations }) => {
            if let Err(e) = write_output(&ctx.opts, &bytes) {
                eprintln!("error: writing output: {e}");
                return 2;
            }
            for v in &violations {
                eprintln!("violation: {v}");
            }
            u8::from(!violations.is_empty())
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(Failure::Invalid(msgs)) => {
            for m in &msgs {
                eprintln!("violation: {m}");
            }
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn viewport_flag_parses_negative_bounds() {
        let v = parse_viewport("-3:3.5:2").unwrap();
        assert_eq!((v.x_min, v.x_max, v.y_max), (-3.0, 3.5, 2.0));
        assert!(parse_viewport("1:2").is_err());
        assert!(parse_viewport("2:1:1").is_err());
    }

    #[test]
    fn flute_input_defaults() {
        let opts = Cli::parse_from(["fuchsia", "classify"]).opts;
        let Ok(Input::Flute { spec, n_generators }) = parse_input(r#"{"prefix":[1,2,3]}"#, &opts)
        else {
            panic!("flute input expected");
        };
        assert_eq!(n_generators, 3);
        assert_eq!(spec.tail, Tail::None);
        assert!(matches!(
            parse_input(r#"{"windows":[[0,1,2,3,4]]}"#, &opts),
            Ok(Input::Monster(_))
        ));
        assert!(matches!(parse_input("{", &opts), Err(Failure::Usage(_))));
        assert!(matches!(
            parse_input(r#"{"prefix":[-1]}"#, &opts),
            Err(Failure::Invalid(_))
        ));
    }
}
