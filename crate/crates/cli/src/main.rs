//! `confspace`: command-line front end.
//!
//! Exit status: 0 on success, 1 on errors and failed checks, 2 on parse
//! errors (of files or of the command line), 3 when a resource cap is hit.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use confspace::chain::{homology, ChainComplex, Coefficients};
use confspace::complex::{
    constrained_subcomplex, parse_complex, staircase_product, write_complex, ConstraintSet,
    OrderedComplex,
};
use confspace::config::{abrams_condition, deleted_product_model, prepare_graph};
use confspace::report::{self, Format, Table};
use confspace::suspension::{invariance_check, suspension_report};
use confspace::tower::{assemble_tower, boundary_model, TowerOptions, DEFAULT_BUDGET, DEFAULT_MAX_K};
use confspace::Error;

#[derive(Parser, Debug)]
#[command(name = "confspace", version, about = "Configuration spaces of A x R from simplicial complexes")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Tsv)]
    format: FormatArg,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Tsv,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CoeffArg {
    /// Rational coefficients (Betti numbers only).
    Q,
    /// Integer coefficients (Betti numbers and torsion).
    Z,
}

impl From<CoeffArg> for Coefficients {
    fn from(c: CoeffArg) -> Self {
        match c {
            CoeffArg::Q => Coefficients::Rational,
            CoeffArg::Z => Coefficients::Integral,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Operations on simplicial complexes.
    #[command(subcommand)]
    Complex(ComplexCommand),
    /// Deleted-product models of configuration spaces.
    #[command(subcommand)]
    Config(ConfigCommand),
    /// Index tuples, heights and rank sequences.
    #[command(subcommand)]
    Combinatorics(CombinatoricsCommand),
    /// The tower E^k.
    #[command(subcommand)]
    Tower(TowerCommand),
    /// Homology of a complex file or a serialized chain complex.
    Homology {
        #[arg(long)]
        input: PathBuf,
        /// Read a serialized chain complex instead of a simplicial complex.
        #[arg(long)]
        chain: bool,
        #[arg(long, value_enum, default_value_t = CoeffArg::Q)]
        coeff: CoeffArg,
    },
    /// The suspension tower at three particles.
    #[command(subcommand)]
    Suspension(SuspensionCommand),
    /// Compares two subdivisions of a common graph.
    Invariance {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = CoeffArg::Q)]
        coeff: CoeffArg,
        #[command(flatten)]
        caps: Caps,
    },
}

#[derive(Subcommand, Debug)]
enum ComplexCommand {
    /// Parses a complex and reports its f-vector and Euler characteristic.
    Validate {
        #[arg(long)]
        input: PathBuf,
    },
    /// Staircase product of the inputs (in order), optionally constrained.
    Product {
        /// Factor files; repeat for several factors.
        #[arg(long, required = true)]
        input: Vec<PathBuf>,
        /// Repeat the list of factors this many times.
        #[arg(long, default_value_t = 1)]
        power: usize,
        /// Keep cells with disjoint carriers in coordinates `u,v`
        /// (1-based), e.g. `2,1`; repeat for several pairs.
        #[arg(long = "distinct", value_parser = parse_pair)]
        distinct: Vec<(usize, usize)>,
    },
    /// Uniformly subdivides a graph until it is certified for k particles.
    Prepare {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand, Debug)]
enum ConfigCommand {
    /// The deleted product model of F_k.
    Model {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = CoeffArg::Q)]
        coeff: CoeffArg,
        /// Also write the model complex to this file.
        #[arg(long)]
        emit_complex: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum CombinatoricsCommand {
    /// Lists the index tuples for k particles.
    Enum {
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand, Debug)]
enum TowerCommand {
    /// Assembles E^k and reports its homology.
    Build {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = CoeffArg::Q)]
        coeff: CoeffArg,
        #[command(flatten)]
        caps: Caps,
        /// Also report the boundary model E^k x A x S^0.
        #[arg(long)]
        boundary: bool,
        /// Write the chain complex of E^k to this file.
        #[arg(long)]
        emit_complex: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum SuspensionCommand {
    /// Homology of C, E_2^3, the cofiber and F_3, with the shift law.
    Cofiber {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = CoeffArg::Q)]
        coeff: CoeffArg,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct Caps {
    /// Largest number of particles accepted.
    #[arg(long, default_value_t = DEFAULT_MAX_K)]
    max_k: usize,
    /// Largest number of generators of an assembled chain complex.
    #[arg(long = "max-simplices", default_value_t = DEFAULT_BUDGET, value_parser = positive)]
    budget: usize,
}

impl From<Caps> for TowerOptions {
    fn from(c: Caps) -> Self {
        TowerOptions { max_k: c.max_k, budget: c.budget }
    }
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (u, v) = s.split_once(',').ok_or_else(|| format!("expected `u,v`, got `{s}`"))?;
    let u = u.trim().parse().map_err(|e| format!("{u}: {e}"))?;
    let v = v.trim().parse().map_err(|e| format!("{v}: {e}"))?;
    Ok((u, v))
}

/// What a command produced: text for standard output and whether all of
/// its checks passed.
struct Outcome {
    output: String,
    passed: bool,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, passed: true }
    }
}

fn read_complex(path: &Path) -> Result<OrderedComplex, Error> {
    let text = fs::read_to_string(path)?;
    parse_complex(&text)
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    let format = match cli.format {
        FormatArg::Tsv => Format::Tsv,
        FormatArg::Text => Format::Text,
    };
    let render = |t: &Table| t.render(format);
    match cli.command {
        Command::Complex(ComplexCommand::Validate { input }) => {
            let k = read_complex(&input)?;
            let v = k.validate()?;
            Ok(Outcome::ok(render(&report::validation_table(&k, &v))))
        }
        Command::Complex(ComplexCommand::Product { input, power, distinct }) => {
            if power == 0 {
                return Err(Error::InvalidArgument("--power must be at least 1".into()));
            }
            let factors = input.iter().map(|p| read_complex(p)).collect::<Result<Vec<_>, _>>()?;
            let all: Vec<OrderedComplex> = (0..power).flat_map(|_| factors.iter().cloned()).collect();
            let product = staircase_product(&all)?;
            if distinct.is_empty() {
                return Ok(Outcome::ok(write_complex(product.complex())));
            }
            let constraints = ConstraintSet::new(all.len(), distinct)?;
            let sub = constrained_subcomplex(&product, &constraints)?;
            Ok(Outcome::ok(write_complex(&sub.complex)))
        }
        Command::Complex(ComplexCommand::Prepare { input, k }) => {
            let g = read_complex(&input)?;
            Ok(Outcome::ok(write_complex(&prepare_graph(&g, k)?)))
        }
        Command::Config(ConfigCommand::Model { input, k, coeff, emit_complex }) => {
            let base = read_complex(&input)?;
            let model = deleted_product_model(&base, k)?;
            let abrams = if base.is_graph() { Some(abrams_condition(&base, k)?) } else { None };
            if let Some(path) = emit_complex {
                fs::write(path, write_complex(&model.complex))?;
            }
            let h = homology(&model.complex.chains(), coeff.into())?;
            let mut out = render(&report::model_table(&model, abrams.as_ref()));
            out.push('\n');
            out.push_str(&render(&report::betti_table(&format!("F_{k}"), coeff.into(), &h)));
            Ok(Outcome::ok(out))
        }
        Command::Combinatorics(CombinatoricsCommand::Enum { k }) => {
            Ok(Outcome::ok(render(&report::combinatorics_table(k)?)))
        }
        Command::Tower(TowerCommand::Build { input, k, coeff, caps, boundary, emit_complex }) => {
            let base = read_complex(&input)?;
            let tower = assemble_tower(&base, k, caps.into())?;
            if let Some(path) = emit_complex {
                fs::write(path, tower.complex.to_text())?;
            }
            let coeff: Coefficients = coeff.into();
            let mut t = report::betti_header();
            report::push_betti(&mut t, &format!("E^{k}"), coeff, &tower.homology(coeff)?);
            if boundary {
                let b = boundary_model(&base, k, caps.into())?;
                report::push_betti(&mut t, &format!("E^{k} x A x S^0"), coeff, &b.homology(coeff)?);
            }
            if !tower.certified {
                eprintln!("warning: the input is not certified for {k} particles; results are heuristic");
            }
            Ok(Outcome::ok(render(&t)))
        }
        Command::Homology { input, chain, coeff } => {
            let text = fs::read_to_string(&input)?;
            let c = if chain { ChainComplex::from_text(&text)? } else { parse_complex(&text)?.chains() };
            let h = homology(&c, coeff.into())?;
            Ok(Outcome::ok(render(&report::betti_table("input", coeff.into(), &h))))
        }
        Command::Suspension(SuspensionCommand::Cofiber { input, coeff }) => {
            let base = read_complex(&input)?;
            let r = suspension_report(&base, coeff.into())?;
            let mut out = render(&report::suspension_table(&r, coeff.into()));
            out.push('\n');
            out.push_str(&render(&report::suspension_checks(&r)));
            Ok(Outcome { output: out, passed: r.c_matches_e23() && r.shift_law_holds() })
        }
        Command::Invariance { a, b, k, coeff, caps } => {
            let ka = read_complex(&a)?;
            let kb = read_complex(&b)?;
            let r = invariance_check(&ka, &kb, k, caps.into(), coeff.into())?;
            Ok(Outcome { output: render(&report::verdict_table(&r, coeff.into())), passed: r.passed() })
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } => 2,
        Error::ResourceCap { .. } => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            print!("{}", outcome.output);
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
