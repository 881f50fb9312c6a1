//! Command line front end: permutations of single words, grid statistics,
//! oracle verification, diagram code export, seeded sampling and conjecture
//! checks. Every subcommand is deterministic given its flags; identical
//! invocations produce byte-identical output.

mod svg;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use thompson_links::diagram::{CodeFormat, CrossingConvention, LinkDiagram};
use thompson_links::enumstats::{
    aggregate, check_conjectures, enumerate_elements, histogram_csv, random_elements, stats_json,
    summary_csv, StatsRecord,
};
use thompson_links::perm::{orbit_count, permutation_of_element};
use thompson_links::trees::PositiveWord;

#[derive(Parser)]
#[command(name = "thompson-links", version, about = "Links and permutations from positive elements of the Brown-Thompson group F3")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Thompson permutation of a positive word
    Perm {
        /// Exponents a0,a1,... of x0^a0 x1^a1 ...; omit for the identity
        word: Option<String>,
        #[arg(long, value_enum, default_value_t = TextOrJson::Text)]
        format: TextOrJson,
    },
    /// Orbit-count statistics over whole (width, height) grids
    Stats {
        /// Tuple length w; the grid holds all (h+1)^w exponent tuples
        #[arg(short = 'w', long)]
        width: usize,
        /// Height h, or an inclusive range like 0..8
        #[arg(short = 'H', long)]
        height: String,
        /// Worker threads for the enumeration
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Output directory; omit to print to stdout
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = StatsFormat::Text)]
        format: StatsFormat,
    },
    /// Compare orbit counts against diagram traces for every word of a grid
    Verify {
        #[arg(short = 'w', long)]
        width: usize,
        #[arg(short = 'H', long)]
        height: u32,
    },
    /// Export the closure diagram of a word as PD or Gauss code
    Export {
        /// Exponents a0,a1,... of the word
        #[arg(long)]
        word: String,
        #[arg(long, value_enum)]
        format: CodeArg,
        /// Output file; omit to print to stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Which strand is drawn on top at every crossing
        #[arg(long, value_enum, default_value_t = ConventionArg::Standard)]
        crossing_convention: ConventionArg,
    },
    /// Sample words uniformly and print them with their orbit counts
    Random {
        #[arg(short = 'w', long)]
        width: usize,
        #[arg(short = 'H', long)]
        height: u32,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; omit to print to stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the conjectured maxima and largest classes over a grid range
    Conjectures {
        #[arg(short = 'w', long)]
        width: usize,
        /// Height h, or an inclusive range like 0..8
        #[arg(short = 'H', long)]
        height: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Output file; omit to print to stdout
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = TextOrJson::Text)]
        format: TextOrJson,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TextOrJson {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StatsFormat {
    Text,
    Csv,
    Json,
    Svg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CodeArg {
    Pd,
    Gauss,
}

impl From<CodeArg> for CodeFormat {
    fn from(value: CodeArg) -> Self {
        match value {
            CodeArg::Pd => CodeFormat::Pd,
            CodeArg::Gauss => CodeFormat::Gauss,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConventionArg {
    /// Left-right strand over middle-parent
    Standard,
    /// Middle-parent strand over left-right
    Flipped,
}

impl From<ConventionArg> for CrossingConvention {
    fn from(value: ConventionArg) -> Self {
        match value {
            ConventionArg::Standard => CrossingConvention::LeftRightOver,
            ConventionArg::Flipped => CrossingConvention::MiddleParentOver,
        }
    }
}

fn main() -> std::process::ExitCode {
    match run() {
        Ok(()) => std::process::ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::ExitCode::FAILURE
        }
    }
}

fn run() -> Result<()> {
    match Cli::parse().command {
        Command::Perm { word, format } => cmd_perm(word.as_deref().unwrap_or(""), format),
        Command::Stats { width, height, jobs, out, format } => {
            cmd_stats(width, &height, jobs, out.as_deref(), format)
        }
        Command::Verify { width, height } => cmd_verify(width, height),
        Command::Export { word, format, out, crossing_convention } => {
            cmd_export(&word, format, out.as_deref(), crossing_convention)
        }
        Command::Random { width, height, count, seed, out } => {
            cmd_random(width, height, count, seed, out.as_deref())
        }
        Command::Conjectures { width, height, jobs, out, format } => {
            cmd_conjectures(width, &height, jobs, out.as_deref(), format)
        }
    }
}

fn parse_word(text: &str) -> Result<PositiveWord> {
    text.parse::<PositiveWord>()
        .map_err(|e| anyhow::anyhow!("{e}"))
}

/// Heights as a single value `h` or an inclusive range `a..b`.
fn parse_heights(text: &str) -> Result<Vec<u32>> {
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: u32 = lo.trim().parse().context("bad height range start")?;
        let hi: u32 = hi.trim().parse().context("bad height range end")?;
        if lo > hi {
            bail!("empty height range {lo}..{hi}");
        }
        Ok((lo..=hi).collect())
    } else {
        Ok(vec![text.trim().parse().context("bad height")?])
    }
}

fn write_out(path: Option<&Path>, content: &str) -> Result<()> {
    match path {
        Some(path) => fs::write(path, content)
            .with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn cmd_perm(word: &str, format: TextOrJson) -> Result<()> {
    let word = parse_word(word)?;
    let pair = word.to_pair();
    let perm = permutation_of_element(&word);
    match format {
        TextOrJson::Text => {
            println!("{}  orbits={}  leaves={}", perm, perm.orbit_count(), pair.leaf_count());
        }
        TextOrJson::Json => {
            let doc = serde_json::json!({
                "word": word.exponents(),
                "cycles": perm.cycles(),
                "orbits": perm.orbit_count(),
                "leaves": pair.leaf_count(),
            });
            println!("{doc:#}");
        }
    }
    Ok(())
}

fn stats_text(records: &[StatsRecord]) -> String {
    let mut out = String::from("width height      total max_orbits largest_classes\n");
    for r in records {
        let largest: Vec<String> = r.largest_classes().iter().map(usize::to_string).collect();
        writeln!(
            out,
            "{:>5} {:>6} {:>10} {:>10} {}",
            r.width,
            r.height,
            r.total,
            r.max_orbits(),
            largest.join(", ")
        )
        .unwrap();
    }
    out
}

fn cmd_stats(
    width: usize,
    height: &str,
    jobs: usize,
    out: Option<&Path>,
    format: StatsFormat,
) -> Result<()> {
    if width == 0 {
        bail!("width must be at least 1");
    }
    let records: Vec<StatsRecord> = parse_heights(height)?
        .into_iter()
        .map(|h| aggregate(width, h, jobs))
        .collect();

    if let Some(dir) = out {
        fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    }
    let in_dir = |name: &str| out.map(|dir| dir.join(name));

    match format {
        StatsFormat::Text => write_out(in_dir("stats.txt").as_deref(), &stats_text(&records))?,
        StatsFormat::Csv => {
            write_out(in_dir("summary.csv").as_deref(), &summary_csv(&records))?;
            let histogram = histogram_csv(&records);
            match out {
                Some(_) => write_out(in_dir("histogram.csv").as_deref(), &histogram)?,
                None => print!("\n{histogram}"),
            }
        }
        StatsFormat::Json => write_out(in_dir("stats.json").as_deref(), &stats_json(&records))?,
        StatsFormat::Svg => {
            let dir = out.context("--format svg needs --out DIR")?;
            for record in &records {
                let name = format!("histogram_w{}_h{}.svg", record.width, record.height);
                fs::write(dir.join(&name), svg::histogram_svg(record))
                    .with_context(|| format!("cannot write {name}"))?;
            }
            // CSV stays the canonical tabular output next to the charts
            fs::write(dir.join("summary.csv"), summary_csv(&records))?;
            fs::write(dir.join("histogram.csv"), histogram_csv(&records))?;
        }
    }
    Ok(())
}

fn cmd_verify(width: usize, height: u32) -> Result<()> {
    if width == 0 {
        bail!("width must be at least 1");
    }
    let mut total = 0u64;
    let mut mismatches = 0u64;
    for word in enumerate_elements(width, height) {
        let orbits = orbit_count(&word);
        let traced = LinkDiagram::build(&word.to_pair())
            .expect("reduced pairs always close up")
            .component_count();
        total += 1;
        if orbits != traced {
            mismatches += 1;
            eprintln!("mismatch for word {word}: orbits={orbits} traced={traced}");
        }
    }
    if mismatches > 0 {
        bail!("{mismatches}/{total} words disagree");
    }
    println!("{total}/{total} agree");
    Ok(())
}

fn cmd_export(
    word: &str,
    format: CodeArg,
    out: Option<&Path>,
    convention: ConventionArg,
) -> Result<()> {
    let word = parse_word(word)?;
    let diagram = LinkDiagram::build_with(&word.to_pair(), false, convention.into())
        .expect("reduced pairs always close up");
    write_out(out, &diagram.export(format.into()))
}

fn cmd_random(
    width: usize,
    height: u32,
    count: usize,
    seed: u64,
    out: Option<&Path>,
) -> Result<()> {
    if width == 0 {
        bail!("width must be at least 1");
    }
    let mut text = String::new();
    for word in random_elements(width, height, count, seed) {
        writeln!(text, "{word}\t{}", orbit_count(&word)).unwrap();
    }
    write_out(out, &text)
}

fn cmd_conjectures(
    width: usize,
    height: &str,
    jobs: usize,
    out: Option<&Path>,
    format: TextOrJson,
) -> Result<()> {
    if width == 0 {
        bail!("width must be at least 1");
    }
    let records: Vec<StatsRecord> = parse_heights(height)?
        .into_iter()
        .map(|h| aggregate(width, h, jobs))
        .collect();
    let report = check_conjectures(&records);

    let content = match format {
        TextOrJson::Json => report.to_json(),
        TextOrJson::Text => {
            let mut text = String::from(
                "width height observed_max predicted_max surjective largest predicted_largest\n",
            );
            for row in &report.rows {
                let largest: Vec<String> =
                    row.observed_largest.iter().map(usize::to_string).collect();
                writeln!(
                    text,
                    "{:>5} {:>6} {:>12} {:>13} {:>10} {:>7} {:>17}",
                    row.width,
                    row.height,
                    row.observed_max,
                    row.predicted_max.map_or("-".into(), |m| m.to_string()),
                    row.surjective,
                    largest.join(","),
                    row.predicted_largest.map_or("-".into(), |m| m.to_string()),
                )
                .unwrap();
            }
            text.push('\n');
            for item in &report.items {
                writeln!(
                    text,
                    "item {}: {} [{}] -> {}",
                    item.item,
                    item.statement,
                    item.range,
                    match item.pass {
                        Some(true) => format!("pass ({} grids)", item.checked),
                        Some(false) => format!("FAIL ({} grids)", item.checked),
                        None => "no grids in range".into(),
                    }
                )
                .unwrap();
            }
            text
        }
    };
    write_out(out, &content)
}
