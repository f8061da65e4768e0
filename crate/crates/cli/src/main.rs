//! Command-line interface: classification, composition, unary
//! transformations, contour tracing, fill, network propagation, grid
//! rendering, the sampling oracles and the reference demo sequence.
//!
//! Exit codes: 0 success, 1 violation or inconsistency found, 2 usage or
//! parse error.

use clap::{Parser, Subcommand, ValueEnum};
use fspp::calculus::{classify, CellIndex, Granularity, Point};
use fspp::grid::{BoolGrid, Connectivity};
use fspp::reasoning::{compose, compose_bordered, expand, neighbors, unary, UnaryOp};
use fspp::relation::FsppRelation;
use fspp::{Network, Triple};
use fspp_cli::render::render_ascii;
use fspp_cli::scenario::{
    parse_relation, parse_scenario, relation_hex, serialize_relation, QuerySpec, RelationSpec,
};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "fspp", about = "Fine-grained qualitative point-position calculus")]
struct Cli {
    /// Number of orientation sectors (even, >= 4)
    #[arg(long, global = true, default_value_t = 18)]
    orientations: usize,
    /// Number of distance bands (>= 2; the outermost is unbounded)
    #[arg(long, global = true, default_value_t = 20)]
    distances: usize,
    /// Width of the innermost scale step in meters
    #[arg(long, global = true, default_value_t = 0.10)]
    base_length: f64,
    /// Geometric growth factor of the distance bands
    #[arg(long, global = true, default_value_t = 1.25)]
    ratio: f64,
    /// Seed for all pseudo-randomness
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OpArg {
    Id,
    Inv,
    Sc,
    Sci,
    Hm,
    Hmi,
}

impl From<OpArg> for UnaryOp {
    fn from(op: OpArg) -> UnaryOp {
        match op {
            OpArg::Id => UnaryOp::Id,
            OpArg::Inv => UnaryOp::Inv,
            OpArg::Sc => UnaryOp::Sc,
            OpArg::Sci => UnaryOp::Sci,
            OpArg::Hm => UnaryOp::Hm,
            OpArg::Hmi => UnaryOp::Hmi,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ConnArg {
    #[value(name = "4")]
    Four,
    #[value(name = "8")]
    Eight,
}

impl From<ConnArg> for Connectivity {
    fn from(c: ConnArg) -> Connectivity {
        match c {
            ConnArg::Four => Connectivity::Four,
            ConnArg::Eight => Connectivity::Eight,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify a point triple (origin, relatum, referent)
    Classify {
        ax: f64,
        ay: f64,
        bx: f64,
        by: f64,
        cx: f64,
        cy: f64,
    },
    /// Compose two relation files
    Compose {
        file1: PathBuf,
        file2: PathBuf,
        /// Use the border-optimized algorithm and report equality with
        /// the full composition
        #[arg(long)]
        bordered: bool,
    },
    /// Apply a unary reference-frame transformation to a relation file
    Unary {
        #[arg(long, value_enum)]
        op: OpArg,
        file: PathBuf,
    },
    /// Conceptual neighbors of one atomic relation
    Neighbors { dist: usize, orient: usize },
    /// Contour of a relation (Pavlidis trace)
    Trace {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "8")]
        connectivity: ConnArg,
    },
    /// Fill enclosed holes of a relation
    Fill { file: PathBuf },
    /// Refine a scenario's constraint network and report it
    Propagate { file: PathBuf },
    /// Render a relation file as an ASCII grid
    Render {
        file: PathBuf,
        #[arg(long, default_value = "relation")]
        title: String,
    },
    /// Run the sampling soundness suites
    Oracle {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Reproduce the reference demo sequence
    Demo,
}

enum CliError {
    /// Exit code 1: a checked property failed.
    Violation(String),
    /// Exit code 2: unusable input.
    Usage(String),
}

impl From<fspp_cli::scenario::CodecError> for CliError {
    fn from(e: fspp_cli::scenario::CodecError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<fspp::FsppError> for CliError {
    fn from(e: fspp::FsppError) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn read_relation(g: &Granularity, path: &PathBuf) -> Result<FsppRelation, CliError> {
    let bytes = std::fs::read(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let spec: RelationSpec = serde_json::from_slice(&bytes).map_err(|e| {
        CliError::Usage(format!(
            "{}: parse error at line {}, column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })?;
    Ok(parse_relation(g, &spec)?)
}

fn print_relation(r: &FsppRelation, title: &str) {
    print!("{}", render_ascii(r, title));
    let spec = serialize_relation(r);
    println!("cells: {}", serde_json::to_string(&spec.cells.unwrap_or_default()).expect("json"));
    if let Some(flags) = spec.flags {
        println!("flags: {}", flags.join(","));
    }
    println!("hex: {}", relation_hex(r));
}

fn run(cli: Cli) -> Result<(), CliError> {
    let g = Granularity::new(cli.orientations, cli.distances, cli.base_length, cli.ratio)?;
    match cli.command {
        Command::Classify { ax, ay, bx, by, cx, cy } => {
            let cls = classify(&g, &Point::new(ax, ay), &Point::new(bx, by), &Point::new(cx, cy));
            let r = FsppRelation::from_classification(&g, &cls)?;
            print_relation(&r, "classification");
        }
        Command::Compose { file1, file2, bordered } => {
            let r1 = read_relation(&g, &file1)?;
            let r2 = read_relation(&g, &file2)?;
            let full = compose(&r1, &r2)?;
            if bordered {
                let fast = compose_bordered(&r1, &r2)?;
                print_relation(&fast, "composition (bordered)");
                let equal = fast == full;
                println!("equal: {equal}");
                if !equal {
                    return Err(CliError::Violation(
                        "bordered composition differs from the full composition".to_string(),
                    ));
                }
            } else {
                print_relation(&full, "composition");
            }
        }
        Command::Unary { op, file } => {
            let r = read_relation(&g, &file)?;
            let out = unary(op.into(), &r);
            print_relation(&out, &format!("unary {}", ["id", "inv", "sc", "sci", "hm", "hmi"][op as usize]));
        }
        Command::Neighbors { dist, orient } => {
            let nbs = neighbors(&g, CellIndex::new(dist, orient))?;
            for c in &nbs {
                println!("{} {}", c.dist, c.orient);
            }
            let r = FsppRelation::from_cells(&g, &[CellIndex::new(dist, orient)])?;
            print!("{}", render_ascii(&expand(&r), "cell and neighbors"));
        }
        Command::Trace { file, connectivity } => {
            let r = read_relation(&g, &file)?;
            let grid = r.to_grid();
            let mut contour = BoolGrid::new(g.m_orient(), g.n_dist());
            for comp in grid.connected_components(connectivity.into()) {
                let seed = *comp.iter().next().expect("nonempty component");
                let mut only = BoolGrid::new(g.m_orient(), g.n_dist());
                for &c in &comp {
                    only.set(c, true);
                }
                for c in only.trace_pavlidis(seed, connectivity.into())? {
                    contour.set(c, true);
                }
            }
            let out = FsppRelation::from_grid(&g, &contour)?;
            print_relation(&out, "contour");
        }
        Command::Fill { file } => {
            let r = read_relation(&g, &file)?;
            let out = FsppRelation::from_grid(&g, &r.to_grid().fill())?;
            print_relation(&out, "filled");
        }
        Command::Propagate { file } => {
            let bytes = std::fs::read(&file)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", file.display())))?;
            let sc = parse_scenario(&bytes)?;
            let g = sc.granularity.build()?;
            let mut net = Network::new(&g);
            for c in &sc.constraints {
                let r = parse_relation(&g, &c.relation)?;
                net.add_constraint(
                    Triple::new(c.origin.clone(), c.relatum.clone(), c.referent.clone()),
                    &r,
                )?;
            }
            // constraints implied by concrete coordinates
            let ids: Vec<&String> = sc.points.keys().collect();
            for i in 0..ids.len() {
                for j in 0..ids.len() {
                    for k in 0..ids.len() {
                        if i == j || j == k || i == k {
                            continue;
                        }
                        let (a, b, c) = (
                            sc.point(ids[i]).expect("known id"),
                            sc.point(ids[j]).expect("known id"),
                            sc.point(ids[k]).expect("known id"),
                        );
                        let r = FsppRelation::from_classification(&g, &classify(&g, &a, &b, &c))?;
                        net.add_constraint(Triple::new(ids[i], ids[j], ids[k]), &r)?;
                    }
                }
            }
            let closure_sweeps = net.unary_closure();
            let refine_sweeps = net.refine();
            println!(
                "network: {} constraints over {} points ({} closure sweeps, {} refine sweeps)",
                net.len(),
                net.variables().len(),
                closure_sweeps,
                refine_sweeps
            );
            for (t, r) in net.constraints() {
                println!(
                    "  ({}, {}, {}): {} cells{}{}",
                    t.origin,
                    t.relatum,
                    t.referent,
                    r.cell_count(),
                    if r.has_special() { ", specials" } else { "" },
                    if r.is_empty() { " [EMPTY]" } else { "" }
                );
            }
            for q in &sc.queries {
                match q {
                    QuerySpec::Path { points } => {
                        let refs: Vec<&str> = points.iter().map(|s| s.as_str()).collect();
                        match net.propagate_path(&refs) {
                            Ok(r) => {
                                print_relation(&r, &format!("path {}", points.join(" -> ")))
                            }
                            Err(e) => println!("path {}: {e}", points.join(" -> ")),
                        }
                    }
                    QuerySpec::Relation { origin, relatum, referent } => {
                        let r = net.relation(&Triple::new(
                            origin.clone(),
                            relatum.clone(),
                            referent.clone(),
                        ));
                        print_relation(&r, &format!("({origin}, {relatum}, {referent})"));
                    }
                }
            }
            let ok = net.consistent();
            println!("consistent: {ok}");
            if !ok {
                return Err(CliError::Violation("network is inconsistent".to_string()));
            }
        }
        Command::Render { file, title } => {
            let r = read_relation(&g, &file)?;
            print!("{}", render_ascii(&r, &title));
        }
        Command::Oracle { samples } => {
            let reports = fspp_cli::oracle::run_all(&g, samples, cli.seed);
            let mut failed = false;
            for rep in &reports {
                println!("{}", rep.summary());
                failed |= !rep.ok();
            }
            if failed {
                return Err(CliError::Violation("oracle suite reported violations".to_string()));
            }
        }
        Command::Demo => {
            demo(&g)?;
        }
    }
    Ok(())
}

/// The reference program sequence: three hand-set relations, the short
/// cut of b, two compositions, contour tracing and the bordered
/// re-composition equality check.
fn demo(g: &Granularity) -> Result<(), CliError> {
    let a = FsppRelation::from_cells(
        g,
        &[CellIndex::new(3, 5), CellIndex::new(3, 6), CellIndex::new(4, 6)],
    )?;
    let b = FsppRelation::from_cells(g, &[CellIndex::new(15, 4)])?;
    let c = FsppRelation::from_cells(g, &[CellIndex::new(3, 4), CellIndex::new(3, 5)])?;

    print!("{}", render_ascii(&a, "FSPP a"));
    print!("{}", render_ascii(&b, "FSPP b"));
    print!("{}", render_ascii(&c, "FSPP c"));

    let sc_b = unary(UnaryOp::Sc, &b);
    print!("\n\n{}", render_ascii(&sc_b, "result of SC b"));

    let d = compose(&a, &b)?;
    print!("\n\n{}", render_ascii(&d, "composition result 1"));

    let e = compose(&a, &d)?;

    let grid = d.to_grid();
    let mut contour = BoolGrid::new(g.m_orient(), g.n_dist());
    for comp in grid.connected_components(Connectivity::Eight) {
        let seed = *comp.iter().next().expect("nonempty component");
        let mut only = BoolGrid::new(g.m_orient(), g.n_dist());
        for &cell in &comp {
            only.set(cell, true);
        }
        for cell in only.trace_pavlidis(seed, Connectivity::Eight)? {
            contour.set(cell, true);
        }
    }
    let d_contour = FsppRelation::from_grid(g, &contour)?;
    print!("\n\n{}", render_ascii(&d_contour, "contour of composition"));

    let f = compose_bordered(&a, &d)?;
    print!("\n\n{}", render_ascii(&e, "composition 2 (calculated without contour)"));
    print!("\n\n{}", render_ascii(&f, "composition 2 (calculated out contour)"));
    let equal = e == f;
    println!("\n e and f equal ? {}", if equal { 1 } else { 0 });

    let f_grid = f.to_grid();
    let mut f_contour = BoolGrid::new(g.m_orient(), g.n_dist());
    for comp in f_grid.connected_components(Connectivity::Eight) {
        let seed = *comp.iter().next().expect("nonempty component");
        let mut only = BoolGrid::new(g.m_orient(), g.n_dist());
        for &cell in &comp {
            only.set(cell, true);
        }
        for cell in only.trace_pavlidis(seed, Connectivity::Eight)? {
            f_contour.set(cell, true);
        }
    }
    let f_contour = FsppRelation::from_grid(g, &f_contour)?;
    print!("\n\n{}", render_ascii(&f_contour, "contour of composition"));

    if !equal {
        return Err(CliError::Violation(
            "bordered composition differs from the full composition".to_string(),
        ));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Violation(msg)) => {
            eprintln!("violation: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
