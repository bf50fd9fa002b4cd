//! Command-line frontend: group construction, quasi-invariant dimension
//! tables, freeness certification, Catalan pipelines, and reproduction of
//! the built-in reference configurations. All computation lives in the
//! library; this binary parses flags, calls it, and prints reports.

use clap::{Parser, Subcommand, ValueEnum};
use quasilog::error::Error;
use quasilog::group::{build_cached, parse_group_file, Family, MultFn, ReflectionGroup};
use quasilog::logder::{
    bc_catalan, catalan_arrangement, coned_free_check, free_basis_affine_greedy,
    free_basis_catalan, free_basis_dm, free_basis_dtilde, Derivation, FreenessCertificate,
    MultiArrangement,
};
use quasilog::parse::parse_poly;
use quasilog::quasi::{
    bc_trig_quasi_space, leading_term_space, quasi_isotypic, quasi_space, trig_quasi_space,
    vector_quasi_space, GradedSubspace,
};
use quasilog::report::{certificate_report, space_report, Report};
use quasilog::reproduce::{reproduce, EXAMPLE_IDS};
use quasilog::roots::RootSystem;

#[derive(Parser)]
#[command(
    name = "quasilog",
    about = "Exact quasi-invariants and logarithmic vector fields of reflection groups"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads (0 = library default).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Seed recorded with structured output; reserved for randomized
    /// diagnostics.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Build a group and print its order, hyperplanes and orbits.
    Group {
        /// Family label (A2, B3, I2_6, G3_1_2), a family letter combined
        /// with --rank/--k/--r, or a path to a group description file.
        spec: String,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        r: Option<u32>,
    },
    /// Per-degree dimensions and bases of quasi-invariant spaces.
    Quasi {
        spec: String,
        /// Multiplicities, one value or one per orbit (canonical orbit
        /// order as printed by `group`).
        #[arg(long, default_value = "1")]
        m: String,
        #[arg(long)]
        cutoff: Option<usize>,
        /// Restrict to the isotypic component of the dual reflection
        /// representation.
        #[arg(long)]
        isotypic: bool,
        /// Vector-valued spaces.
        #[arg(long)]
        vector: bool,
        /// Trigonometric (shifted) spaces, Weyl families only.
        #[arg(long)]
        trig: bool,
        /// Non-reduced trigonometric spaces: three comma-separated values.
        #[arg(long)]
        bc: Option<String>,
    },
    /// Freeness certificates through Saito's criterion.
    Free {
        /// Group spec, or `fixture-deconing` for the built-in affine
        /// counterexample.
        spec: String,
        #[arg(long, default_value = "1")]
        m: String,
        #[arg(long, value_enum, default_value_t = Module::Dm)]
        module: Module,
        #[arg(long)]
        cutoff: Option<usize>,
        /// Multiplicity triple for the non-reduced modules.
        #[arg(long)]
        bc: Option<String>,
    },
    /// Re-derive a built-in reference configuration and print PASS/FAIL.
    Reproduce {
        /// One of ex-g312, ex-i26, ex-bc2, or `all`.
        id: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Module {
    /// Reflection multiarrangement with multiplicity m n + 1.
    Dm,
    /// Reflection multiarrangement with multiplicity m n.
    Dtilde,
    /// Affine extended Catalan arrangement.
    Cat,
    /// Coned extended Catalan arrangement.
    Ccat,
    /// Affine non-reduced Catalan arrangement.
    Bccat,
    /// Coned non-reduced Catalan arrangement.
    Cbccat,
    /// Cone the spec's affine fixture and test its displayed basis.
    Cone,
}

fn main() {
    let cli = Cli::parse();
    if cli.threads > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global();
    }
    match run(&cli) {
        Ok(true) => {}
        Ok(false) => std::process::exit(1),
        Err(e) => {
            eprintln!("error: {}", e);
            std::process::exit(2);
        }
    }
}

/// Returns Ok(false) when any FAIL verdict was printed.
fn run(cli: &Cli) -> Result<bool, Error> {
    let mut header = Report::new();
    if cli.format == Format::Structured {
        header.push("seed", cli.seed);
    }
    match &cli.command {
        Command::Group { spec, rank, k, r } => {
            let g = build_group_spec(spec, *rank, *k, *r)?;
            print!("{}{}", header.render(), group_report(&g));
            Ok(true)
        }
        Command::Quasi {
            spec,
            m,
            cutoff,
            isotypic,
            vector,
            trig,
            bc,
        } => {
            let g = build_group_spec(spec, None, None, None)?;
            let cutoff = cutoff.unwrap_or(if g.rank <= 2 { 12 } else { 8 });
            print!("{}", header.render());
            if let Some(bc) = bc {
                let (m1, m2, m3) = parse_triple(bc)?;
                let gs = bc_trig_quasi_space(&g, m1, m2, m3, cutoff);
                print!(
                    "{}",
                    space_report(
                        &format!("nonreduced-trig {} ({},{},{})", g.family, m1, m2, m3),
                        &gs
                    )
                );
                let gr = leading_term_space(&gs);
                print!("{}", space_report("leading terms", &gr));
                return Ok(true);
            }
            let mult = parse_mult(&g, m)?;
            if *trig {
                let rs = RootSystem::build(g.family.clone())?;
                let gs = trig_quasi_space(&rs, &mult, cutoff);
                print!(
                    "{}",
                    space_report(&format!("trig {} m={}", g.family, mult), &gs)
                );
                let gr = leading_term_space(&gs);
                print!("{}", space_report("leading terms", &gr));
                return Ok(true);
            }
            let mut gs = GradedSubspace {
                by_degree: Vec::new(),
                filtered: false,
            };
            let chi = g.char_dual_reflection();
            for d in 0..=cutoff {
                let basis = if *vector {
                    vector_quasi_space(&g, &mult, d)
                        .into_iter()
                        .flat_map(|e| e.components)
                        .collect()
                } else if *isotypic {
                    quasi_isotypic(&g, &mult, d, &chi)
                } else {
                    quasi_space(&g, &mult, d)
                };
                gs.by_degree.push(basis);
            }
            let kind = if *vector {
                "vector components"
            } else if *isotypic {
                "isotypic"
            } else {
                "scalar"
            };
            print!(
                "{}",
                space_report(&format!("{} {} m={}", kind, g.family, mult), &gs)
            );
            Ok(true)
        }
        Command::Free {
            spec,
            m,
            module,
            cutoff,
            bc,
        } => {
            print!("{}", header.render());
            let cert = run_free(spec, m, *module, *cutoff, bc.as_deref())?;
            print!("{}", certificate_report(&cert));
            Ok(cert.verdict)
        }
        Command::Reproduce { id } => {
            print!("{}", header.render());
            let ids: Vec<&str> = if id == "all" {
                EXAMPLE_IDS.to_vec()
            } else {
                vec![id.as_str()]
            };
            let mut all = true;
            for id in ids {
                let rep = reproduce(id)?;
                print!("{}", rep.render());
                all &= rep.pass();
            }
            Ok(all)
        }
    }
}

fn build_group_spec(
    spec: &str,
    rank: Option<usize>,
    k: Option<u32>,
    r: Option<u32>,
) -> Result<ReflectionGroup, Error> {
    if std::path::Path::new(spec).is_file() {
        let text = std::fs::read_to_string(spec)?;
        return parse_group_file(&text)?.build(quasilog::group::DEFAULT_ORDER_CAP);
    }
    // bare family letters pick up the flags
    let family = match (spec, rank, k, r) {
        ("A", Some(n), _, _) => Family::A(n),
        ("B", Some(n), _, _) => Family::B(n),
        ("D", Some(n), _, _) => Family::D(n),
        ("I2", _, Some(k), _) => Family::I2(k),
        ("G", Some(n), _, Some(r)) => Family::G(r, n),
        _ => Family::parse(spec)?,
    };
    build_cached(family)
}

fn parse_mult(g: &ReflectionGroup, m: &str) -> Result<MultFn, Error> {
    let vals: Vec<u32> = m
        .split(',')
        .map(|v| v.trim().parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|_| Error::Parse(format!("bad multiplicity list `{}`", m)))?;
    if vals.len() == 1 {
        Ok(MultFn::constant(g, vals[0]))
    } else if vals.len() == g.orbits.len() {
        Ok(MultFn::by_orbit(g, vals))
    } else {
        Err(Error::Parse(format!(
            "expected 1 or {} multiplicities, got {}",
            g.orbits.len(),
            vals.len()
        )))
    }
}

fn parse_triple(s: &str) -> Result<(u32, u32, u32), Error> {
    let vals: Vec<u32> = s
        .split(',')
        .map(|v| v.trim().parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|_| Error::Parse(format!("bad triple `{}`", s)))?;
    if vals.len() != 3 {
        return Err(Error::Parse("expected three comma-separated values".into()));
    }
    Ok((vals[0], vals[1], vals[2]))
}

fn group_report(g: &ReflectionGroup) -> String {
    let mut r = Report::new();
    r.push("group", g.family.label());
    r.push("order", g.order());
    r.push("rank", g.rank);
    r.push("conductor", g.conductor);
    r.push("hyperplanes", g.hyperplanes.len());
    for (i, h) in g.hyperplanes.iter().enumerate() {
        r.push(
            &format!("hyperplane_{}", i),
            format!("{} n={} orbit={}", h.alpha.to_text(), h.order, h.orbit),
        );
    }
    for (i, o) in g.orbits.iter().enumerate() {
        r.push(&format!("orbit_{}", i), format!("size {}", o.len()));
    }
    r.render()
}

fn deconing_fixture() -> (MultiArrangement, Vec<Derivation>) {
    let p = |s: &str| parse_poly(s, 2, 2).unwrap();
    let arr = MultiArrangement::new(
        "fixture-deconing",
        vec![p("x1"), p("x2"), p("x1 + x2 + 1")],
        vec![1, 1, 1],
        false,
    );
    let t1 = Derivation {
        components: vec![p("x1*(x1 + 1)"), p("x1*x2")],
    };
    let t2 = Derivation {
        components: vec![p("x1*x2"), p("x2*(x2 + 1)")],
    };
    (arr, vec![t1, t2])
}

fn run_free(
    spec: &str,
    m: &str,
    module: Module,
    cutoff: Option<usize>,
    bc: Option<&str>,
) -> Result<FreenessCertificate, Error> {
    if spec == "fixture-deconing" {
        let (arr, fields) = deconing_fixture();
        return Ok(match module {
            Module::Cat => quasilog::logder::affine_free_check(&arr, &fields),
            _ => coned_free_check(&arr, &fields),
        });
    }
    let g = build_group_spec(spec, None, None, None)?;
    let cutoff = cutoff.unwrap_or(if g.rank <= 2 { 12 } else { 8 });
    match module {
        Module::Dm => {
            let mult = parse_mult(&g, m)?;
            free_basis_dm(&g, &mult, cutoff)
        }
        Module::Dtilde => {
            let mult = parse_mult(&g, m)?;
            free_basis_dtilde(&g, &mult)
        }
        Module::Cat | Module::Ccat => {
            let rs = RootSystem::build(g.family.clone())?;
            let mult = parse_mult(&rs.group, m)?;
            let (fields, affine_cert) = free_basis_catalan(&rs, &mult, cutoff)?;
            if matches!(module, Module::Cat) {
                Ok(affine_cert)
            } else {
                Ok(coned_free_check(&catalan_arrangement(&rs, &mult), &fields))
            }
        }
        Module::Bccat | Module::Cbccat => {
            let (m1, m2, m3) = parse_triple(bc.unwrap_or(m))?;
            let gs = bc_trig_quasi_space(&g, m1, m2, m3, cutoff);
            let arr = bc_catalan(&g, m1, m2, m3);
            let (fields, affine_cert) = free_basis_affine_greedy(&g, &gs, &arr, cutoff)?;
            if matches!(module, Module::Bccat) {
                Ok(affine_cert)
            } else {
                Ok(coned_free_check(&arr, &fields))
            }
        }
        Module::Cone => Err(Error::Other(
            "`--module cone` applies to affine fixtures such as fixture-deconing".into(),
        )),
    }
}
