//! `fibonadic`: command-line access to Fibonadic arithmetic and the
//! Stern–Brocot layer geometry.
//!
//! Exit codes: 0 success, 2 parse error, 3 domain error, 4 budget exhausted.

mod render;

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fibonadic::configtree::{enumerate, restrict};
use fibonadic::farey::{ball, ball_n, boundary, extract_dna, insert_dna, level_function, PointSet};
use fibonadic::fibzeck::{coboundary_j, coboundary_pi, j_shift, pi_shift, zeck};
use fibonadic::normalize::{project_with_budget, DEFAULT_MOVE_BUDGET};
use fibonadic::rig::{add_with_budget, mul_with_budget};
use fibonadic::{Error, LatticePoint, NatSeries, ZeckWord};
use serde_json::json;

/// Environment variable overriding the normalization move budget.
const BUDGET_VAR: &str = "FIBONADIC_BUDGET";

#[derive(Parser)]
#[command(name = "fibonadic", version, about = "Fibonadic numbers and Stern-Brocot layers")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Zeckendorf index set and word of a natural number.
    Zeck { r: u128 },
    /// The shift π(R) = Σ f_{n-1}.
    Pi { r: u128 },
    /// The shift j(R) = Σ f_{n+1}.
    J { r: u128 },
    /// Coboundary of π or j at (x, y), always in {-1, 0, 1}.
    Cobound { map: ShiftMap, x: u128, y: u128 },
    /// Project a series such as `1@1,1@0,3@-2` onto an admissible word.
    Normalize { series: String },
    /// Sum of two words.
    Add { a: String, b: String },
    /// Product of two words.
    Mul { a: String, b: String },
    /// The minus form z⁻ of a finite word.
    Minus { w: String },
    /// Shift every digit of a word by K.
    Shift {
        w: String,
        #[arg(allow_hyphen_values = true)]
        k: i64,
    },
    /// Exact φ-value a + bφ and its decimal approximation.
    Value { w: String },
    /// Compare two words in the word order.
    Cmp { a: String, b: String },
    /// Ultrametric distance between two words.
    Dist { a: String, b: String },
    /// The ball C(R) with its mediant edges.
    Tree {
        #[arg(long)]
        radius: u64,
        #[arg(long, value_enum, default_value_t = TreeFormat::Ascii)]
        format: TreeFormat,
    },
    /// Boundary path of C(R, N).
    Boundary {
        #[arg(long)]
        radius: u64,
        #[arg(long)]
        level: u32,
    },
    /// The d.n.a taking ∂C(R, N+1) to ∂C(R, N).
    Dna {
        #[arg(long)]
        radius: u64,
        #[arg(long)]
        level: u32,
    },
    /// Layers of b(N, z) and the level function on points with |v| <= B.
    Layers {
        #[arg(long)]
        z: String,
        #[arg(long)]
        depth: u32,
        #[arg(long)]
        bound: u64,
    },
    /// Breakpoints and configurations of height N.
    Configs {
        #[arg(long)]
        depth: u32,
        /// Write one SVG per configuration into this directory.
        #[arg(long)]
        render: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ShiftMap {
    Pi,
    J,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TreeFormat {
    Ascii,
    Svg,
    Json,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 2,
        Error::BudgetExhausted { .. } => 4,
        _ => 3,
    }
}

fn budget() -> Result<u64, Error> {
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("{BUDGET_VAR}={v:?} is not a natural number"))),
        Err(_) => Ok(DEFAULT_MOVE_BUDGET),
    }
}

fn word(s: &str) -> Result<ZeckWord, Error> {
    s.parse()
}

fn principal(s: &str) -> Result<ZeckWord, Error> {
    let z = word(s)?;
    if !z.is_principal() {
        return Err(Error::Domain(format!("{s} is not a principal unit (its top digit must sit at index 0)")));
    }
    Ok(z)
}

/// A word as human text (long fractions elided) or as JSON.
fn word_line(w: &ZeckWord, json: bool) -> String {
    if json {
        serde_json::to_string(w).expect("words serialize")
    } else {
        w.to_human()
    }
}

fn point_json(v: &LatticePoint) -> serde_json::Value {
    json!({"x": v.x(), "y": v.y()})
}

fn points_text(s: &PointSet) -> String {
    s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn run(cli: Cli) -> Result<String, Error> {
    let json = cli.json;
    let out = match cli.command {
        Command::Zeck { r } => {
            let z = zeck(&r)?;
            let w = ZeckWord::from_ones(z.indices().iter().map(|&i| i as i64))?;
            if json {
                json!({"indices": z.indices(), "word": w}).to_string()
            } else {
                format!("{z}  word={w}.")
            }
        }
        Command::Pi { r } => pi_shift(&r)?.to_string(),
        Command::J { r } => j_shift(&r)?.to_string(),
        Command::Cobound { map, x, y } => match map {
            ShiftMap::Pi => coboundary_pi(&x, &y)?,
            ShiftMap::J => coboundary_j(&x, &y)?,
        }
        .to_string(),
        Command::Normalize { series } => {
            let s: NatSeries = series.parse()?;
            word_line(&project_with_budget(&s, budget()?)?, json)
        }
        Command::Add { a, b } => word_line(&add_with_budget(&word(&a)?, &word(&b)?, budget()?)?, json),
        Command::Mul { a, b } => word_line(&mul_with_budget(&word(&a)?, &word(&b)?, budget()?)?, json),
        Command::Minus { w } => word_line(&word(&w)?.minus_form()?, json),
        Command::Shift { w, k } => word_line(&word(&w)?.shift(k), json),
        Command::Value { w } => {
            let v = word(&w)?.phi_value()?;
            if json {
                json!({"a": v.a.to_string(), "b": v.b.to_string(), "approx": v.to_f64()}).to_string()
            } else {
                format!("{v} ≈ {:?}", v.to_f64())
            }
        }
        Command::Cmp { a, b } => {
            let sym = match word(&a)?.cmp(&word(&b)?) {
                std::cmp::Ordering::Less => "<",
                std::cmp::Ordering::Equal => "=",
                std::cmp::Ordering::Greater => ">",
            };
            if json {
                json!({ "cmp": sym }).to_string()
            } else {
                sym.to_string()
            }
        }
        Command::Dist { a, b } => {
            let d = word(&a)?.dist(&word(&b)?);
            if json {
                let exponent = match d {
                    fibonadic::Distance::Zero => None,
                    fibonadic::Distance::PhiPow(e) => Some(e),
                };
                json!({ "phi_exponent": exponent }).to_string()
            } else {
                d.to_string()
            }
        }
        Command::Tree { radius, format } => {
            let c = ball(radius);
            match (format, json) {
                (TreeFormat::Json, _) | (_, true) => render::tree_json(&c)?.to_string(),
                (TreeFormat::Svg, _) => render::tree_svg(&c)?,
                (TreeFormat::Ascii, _) => render::tree_ascii(&c)?,
            }
        }
        Command::Boundary { radius, level } => {
            let path = boundary(&ball_n(radius, level)?)?;
            if json {
                json!({"radius": radius, "level": level, "vertices": path.vertices().iter().map(point_json).collect::<Vec<_>>()})
                    .to_string()
            } else {
                path.to_string()
            }
        }
        Command::Dna { radius, level } => {
            let steps = extract_dna(radius, level)?;
            let coarse = boundary(&ball_n(radius, level + 1)?)?;
            let fine = boundary(&ball_n(radius, level)?)?;
            let rebuilt = insert_dna(&coarse, &steps)? == fine;
            if json {
                json!({"radius": radius, "level": level, "steps": steps, "reconstructs": rebuilt}).to_string()
            } else {
                let mut s = String::new();
                for st in &steps {
                    let lambda = st.lambda.map_or("none".to_string(), |l| l.to_string());
                    writeln!(s, "[{}, {}]  lambda={lambda}", endpoint(&st.left), endpoint(&st.right)).unwrap();
                }
                write!(s, "reconstruction: {}", if rebuilt { "ok" } else { "MISMATCH" }).unwrap();
                s
            }
        }
        Command::Layers { z, depth, bound } => {
            let z = principal(&z)?;
            let mut table = Vec::new();
            for v in ball(bound) {
                table.push((v, level_function(&z, v)?));
            }
            if json {
                let layers: Vec<_> = (1..=depth)
                    .map(|n| table.iter().filter(|(_, l)| *l == n).map(|(v, _)| point_json(v)).collect::<Vec<_>>())
                    .collect();
                let levels: Vec<_> =
                    table.iter().map(|(v, l)| json!({"x": v.x(), "y": v.y(), "level": l})).collect();
                json!({"z": z, "depth": depth, "bound": bound, "layers": layers, "levels": levels}).to_string()
            } else {
                let mut s = String::new();
                for n in 1..=depth {
                    let layer: PointSet = table.iter().filter(|(_, l)| *l == n).map(|(v, _)| *v).collect();
                    writeln!(s, "layer {n}: {}", points_text(&layer)).unwrap();
                }
                writeln!(s, "level function on |v| <= {bound}:").unwrap();
                for (v, l) in &table {
                    writeln!(s, "  {v}  {l}").unwrap();
                }
                s.pop();
                s
            }
        }
        Command::Configs { depth, render } => {
            let configs = enumerate(depth)?;
            if let Some(dir) = &render {
                std::fs::create_dir_all(dir).map_err(|e| Error::Domain(format!("cannot create {}: {e}", dir.display())))?;
                for (bp, c) in &configs {
                    let path = dir.join(format!("b{depth}_{}.svg", bp.config_index));
                    std::fs::write(&path, render::config_svg(c, &bp.word))
                        .map_err(|e| Error::Domain(format!("cannot write {}: {e}", path.display())))?;
                }
            }
            if json {
                configs_json(depth)?.to_string()
            } else {
                let mut s = String::new();
                for (bp, c) in &configs {
                    let markers: PointSet = c.markers().iter().copied().collect();
                    writeln!(
                        s,
                        "z^{depth}_{} = {}  points={}  markers={}",
                        bp.config_index,
                        bp.word,
                        c.levels().len(),
                        if markers.is_empty() { "none".to_string() } else { points_text(&markers) }
                    )
                    .unwrap();
                }
                s.pop();
                s
            }
        }
    };
    Ok(out)
}

fn endpoint(v: &LatticePoint) -> String {
    match *v {
        LatticePoint::ZERO_END => "0".into(),
        LatticePoint::INFINITY_END => "inf".into(),
        _ => v.to_string(),
    }
}

/// Breakpoints and configs for every height up to `depth`, with the tree
/// edges given by restriction.
fn configs_json(depth: u32) -> Result<serde_json::Value, Error> {
    let mut heights = Vec::new();
    let mut edges = Vec::new();
    let mut previous: Vec<fibonadic::Config> = Vec::new();
    for n in 1..=depth {
        let b = enumerate(n)?;
        for (bp, c) in &b {
            if n > 1 {
                let parent = restrict(c)?;
                let j = previous
                    .iter()
                    .position(|p| *p == parent)
                    .ok_or_else(|| Error::Structure(format!("restriction of {} is not in B({})", bp.word, n - 1)))?;
                edges.push(json!({"from": [n - 1, j], "to": [n, bp.config_index]}));
            }
        }
        heights.push(json!({
            "height": n,
            "breakpoints": b.iter().map(|(bp, _)| &bp.word).collect::<Vec<_>>(),
            "configs": b.iter().map(|(_, c)| c).collect::<Vec<_>>(),
        }));
        previous = b.into_iter().map(|(_, c)| c).collect();
    }
    Ok(json!({"depth": depth, "heights": heights, "edges": edges}))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = writeln!(std::io::stdout(), "{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("fibonadic: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
