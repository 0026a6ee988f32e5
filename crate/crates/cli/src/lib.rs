//! Command-line front end for `convexmat`.

pub mod render;

use std::fmt::Write as _;
use std::fs;
use std::io::Read as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use convexmat::text::{
    parse_margins, parse_matrix, parse_res, write_margins, write_matrix_list, write_res,
};
use convexmat::{
    block_regular_class, build_convex_class, class_nonempty, convex_hull, convex_preserving_moves,
    covers, diagram, enumerate_class, enumerate_interchanges, essential_set, gale_ryser,
    is_convex_class, is_ferrers_diagram, join, maximal_chain, meet, properties,
    ranked_essential_set, reconstruct_detailed, reconstruct_directed, run_sweep,
    two_regular_profile, unit_rows_nonempty, BinaryMatrix, ChainDirection, ConvexClassSpec,
    Direction, Error, MarginPair, SweepParams, DEFAULT_CLASS_CAP,
};

use crate::render::{render, render_state, Overlay};

#[derive(Debug, Parser)]
#[command(
    name = "convexmat",
    version,
    about = "Convex (0,1)-matrices: diagrams, essential sets, reconstruction, classes and lattice operations"
)]
pub struct Cli {
    /// Worker threads for exhaustive sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report convexity, connectivity and sources of a matrix.
    Check(MatrixArg),
    /// Draw the diagram: `#` shaded, `0` unshaded.
    Diagram {
        #[command(flatten)]
        input: MatrixArg,
        /// Print a glyph legend after the grid.
        #[arg(long)]
        legend: bool,
    },
    /// Show directional essential sets, or the ranked essential set.
    Essential {
        #[command(flatten)]
        input: MatrixArg,
        #[arg(long, value_enum, default_value_t = DirArg::Se)]
        dir: DirArg,
        /// Print the ranked essential set as `i j r` lines.
        #[arg(long)]
        ranked: bool,
        #[arg(long)]
        legend: bool,
    },
    /// Rebuild a matrix from its margins and ranked essential set.
    Reconstruct {
        #[arg(long)]
        margins: PathBuf,
        #[arg(long)]
        res: PathBuf,
        /// Print the partial matrix after every placed 1.
        #[arg(long)]
        trace: bool,
    },
    /// Find the member of a margin class with a source in the given corner.
    ReconstructDirected {
        #[arg(long)]
        margins: PathBuf,
        #[arg(long, value_enum)]
        corner: CornerArg,
    },
    /// List the members of a margin class.
    Enumerate {
        #[arg(long)]
        margins: PathBuf,
        #[arg(long)]
        convex_only: bool,
        #[arg(long)]
        count_only: bool,
        /// Largest m*n to enumerate.
        #[arg(long, default_value_t = DEFAULT_CLASS_CAP)]
        cap: usize,
    },
    /// Run the nonemptiness characterizations that apply to a margin class.
    ClassInfo {
        #[arg(long)]
        margins: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CLASS_CAP)]
        cap: usize,
    },
    /// List the 2x2 interchanges of a matrix.
    Interchanges {
        #[command(flatten)]
        input: MatrixArg,
        /// Keep only the moves whose result is convex.
        #[arg(long)]
        convex_preserving: bool,
    },
    /// Lattice operations on convex matrices.
    Lattice {
        #[command(subcommand)]
        op: LatticeOp,
    },
    /// Build the convex class described by nested 1-shift pairs.
    BuildClass {
        /// One pair per line: `a..b c..d`, innermost first.
        #[arg(long)]
        spec: PathBuf,
        /// All-ones rows placed between the two halves.
        #[arg(long, default_value_t = 0)]
        full_rows: usize,
    },
    /// Check a property exhaustively on small matrices.
    Verify {
        /// A property id, or `all`.
        property: Option<String>,
        #[arg(long)]
        max_cells: Option<usize>,
        /// List the property ids.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum LatticeOp {
    Meet {
        first: PathBuf,
        second: PathBuf,
    },
    Join {
        first: PathBuf,
        second: PathBuf,
    },
    Hull(MatrixArg),
    Covers {
        #[command(flatten)]
        input: MatrixArg,
    },
    Chain {
        #[command(flatten)]
        input: MatrixArg,
        /// Descend to the zero matrix instead of climbing to the all-ones matrix.
        #[arg(long)]
        down: bool,
    },
}

#[derive(Debug, Args)]
pub struct MatrixArg {
    /// Matrix file; standard input when absent.
    pub file: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
#[value(rename_all = "UPPER")]
pub enum CornerArg {
    Se,
    Ne,
    Nw,
    Sw,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
#[value(rename_all = "lower")]
pub enum DirArg {
    #[value(alias = "SE")]
    Se,
    #[value(alias = "NE")]
    Ne,
    #[value(alias = "NW")]
    Nw,
    #[value(alias = "SW")]
    Sw,
    All,
}

impl From<CornerArg> for Direction {
    fn from(c: CornerArg) -> Self {
        match c {
            CornerArg::Se => Direction::SE,
            CornerArg::Ne => Direction::NE,
            CornerArg::Nw => Direction::NW,
            CornerArg::Sw => Direction::SW,
        }
    }
}

impl DirArg {
    fn direction(self) -> Option<Direction> {
        match self {
            DirArg::Se => Some(Direction::SE),
            DirArg::Ne => Some(Direction::NE),
            DirArg::Nw => Some(Direction::NW),
            DirArg::Sw => Some(Direction::SW),
            DirArg::All => None,
        }
    }
}

/// Result of one invocation: text for stdout and stderr and the exit code.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// A failure that ends the command.
#[derive(Debug)]
pub enum Failure {
    /// Bad arguments, unreadable files or malformed input (exit 2).
    Usage(String),
    /// A well-formed request with no answer (exit 1).
    Infeasible(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_infeasible() {
            Failure::Infeasible(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

type CmdResult = std::result::Result<(), Failure>;

struct Ctx {
    out: String,
    err: String,
    code: i32,
}

fn read_file(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_matrix(input: &MatrixArg) -> std::result::Result<BinaryMatrix, Failure> {
    let text = match &input.file {
        Some(path) => read_file(path)?,
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
            s
        }
    };
    Ok(parse_matrix(&text)?)
}

fn read_matrix_file(path: &Path) -> std::result::Result<BinaryMatrix, Failure> {
    Ok(parse_matrix(&read_file(path)?)?)
}

fn read_margins(path: &Path) -> std::result::Result<MarginPair, Failure> {
    Ok(parse_margins(&read_file(path)?)?)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn warn_cap(ctx: &mut Ctx, cap: usize) {
    if cap > DEFAULT_CLASS_CAP {
        let _ = writeln!(
            ctx.err,
            "WARNING: --cap {cap} exceeds the default of {DEFAULT_CLASS_CAP} cells; \
             enumeration time grows exponentially with m*n and may not finish"
        );
    }
}

/// Parses `args` and runs the command, capturing all output.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            }
        }
    }
}

pub fn run(cli: Cli) -> Outcome {
    let mut ctx = Ctx {
        out: String::new(),
        err: String::new(),
        code: 0,
    };
    let result = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.max(1))
        .build()
    {
        Ok(pool) => pool.install(|| dispatch(&mut ctx, cli.command)),
        Err(e) => Err(Failure::Usage(e.to_string())),
    };
    match result {
        Ok(()) => {}
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(ctx.err, "error: {msg}");
            ctx.code = 2;
        }
        Err(Failure::Infeasible(msg)) => {
            let _ = writeln!(ctx.err, "error: {msg}");
            ctx.code = 1;
        }
    }
    Outcome {
        stdout: ctx.out,
        stderr: ctx.err,
        code: ctx.code,
    }
}

fn dispatch(ctx: &mut Ctx, command: Command) -> CmdResult {
    match command {
        Command::Check(input) => check(ctx, &read_matrix(&input)?),
        Command::Diagram { input, legend } => diagram_cmd(ctx, &read_matrix(&input)?, legend),
        Command::Essential {
            input,
            dir,
            ranked,
            legend,
        } => essential(ctx, &read_matrix(&input)?, dir, ranked, legend),
        Command::Reconstruct {
            margins,
            res,
            trace,
        } => {
            let mp = read_margins(&margins)?;
            let res = parse_res(&read_file(&res)?)?;
            reconstruct_cmd(ctx, &mp, &res, trace)
        }
        Command::ReconstructDirected { margins, corner } => {
            let a = reconstruct_directed(&read_margins(&margins)?, corner.into())?;
            ctx.out.push_str(&a.to_string());
            Ok(())
        }
        Command::Enumerate {
            margins,
            convex_only,
            count_only,
            cap,
        } => {
            warn_cap(ctx, cap);
            let list = enumerate_class(&read_margins(&margins)?, convex_only, cap)?;
            if count_only {
                let _ = writeln!(ctx.out, "count: {}", list.len());
            } else {
                ctx.out.push_str(&write_matrix_list(&list));
            }
            if list.is_empty() {
                ctx.code = 1;
            }
            Ok(())
        }
        Command::ClassInfo { margins, cap } => {
            warn_cap(ctx, cap);
            class_info(ctx, &read_margins(&margins)?, cap)
        }
        Command::Interchanges {
            input,
            convex_preserving,
        } => {
            let a = read_matrix(&input)?;
            let moves = if convex_preserving {
                convex_preserving_moves(&a)?
            } else {
                enumerate_interchanges(&a)
            };
            let _ = writeln!(ctx.out, "moves: {}", moves.len());
            for mv in moves {
                let _ = writeln!(ctx.out, "{mv}");
            }
            Ok(())
        }
        Command::Lattice { op } => lattice(ctx, op),
        Command::BuildClass { spec, full_rows } => {
            let spec: ConvexClassSpec = read_file(&spec)?.parse()?;
            let (mp, members) = build_convex_class(&spec, full_rows)?;
            ctx.out.push_str(&write_margins(&mp));
            ctx.out.push('\n');
            ctx.out.push_str(&write_matrix_list(&members));
            Ok(())
        }
        Command::Verify {
            property,
            max_cells,
            list,
        } => verify(ctx, property, max_cells, list),
    }
}

fn check(ctx: &mut Ctx, a: &BinaryMatrix) -> CmdResult {
    let (m, n) = a.shape();
    let sources = a.sources();
    let listed: Vec<String> = sources.iter().map(|(d, p)| format!("{d} {p}")).collect();
    let o = &mut ctx.out;
    let _ = writeln!(o, "shape: {m}x{n}");
    let _ = writeln!(o, "row-convex: {}", yes_no(a.is_row_convex()));
    let _ = writeln!(o, "column-convex: {}", yes_no(a.is_col_convex()));
    let _ = writeln!(o, "convex: {}", yes_no(a.is_convex()));
    let _ = writeln!(o, "zero-lines: {}", yes_no(a.has_zero_line()));
    let _ = writeln!(o, "connected: {}", yes_no(a.is_connected()));
    let _ = writeln!(
        o,
        "polyomino: {}",
        yes_no(a.is_convex() && a.is_connected())
    );
    let _ = writeln!(
        o,
        "sources: {}",
        if listed.is_empty() {
            "none".to_string()
        } else {
            listed.join(", ")
        }
    );
    let _ = writeln!(o, "directed: {}", yes_no(sources.is_directed()));
    Ok(())
}

fn push_legend(ctx: &mut Ctx, legend: &[String]) {
    ctx.out.push('\n');
    for line in legend {
        let _ = writeln!(ctx.out, "{line}");
    }
}

fn diagram_cmd(ctx: &mut Ctx, a: &BinaryMatrix, legend: bool) -> CmdResult {
    let grid = render(a, Overlay::Diagram);
    ctx.out.push_str(&grid.to_string());
    let d = diagram(a);
    let _ = writeln!(ctx.out, "unshaded: {}", d.len());
    match is_ferrers_diagram(&d) {
        Some(shape) => {
            let parts: Vec<String> = shape.row_lengths().iter().map(usize::to_string).collect();
            let _ = writeln!(ctx.out, "ferrers: {}", parts.join(" "));
        }
        None => {
            let _ = writeln!(ctx.out, "ferrers: no");
        }
    }
    if legend {
        push_legend(ctx, &grid.legend);
    }
    Ok(())
}

fn essential(
    ctx: &mut Ctx,
    a: &BinaryMatrix,
    dir: DirArg,
    ranked: bool,
    legend: bool,
) -> CmdResult {
    if ranked {
        if !matches!(dir, DirArg::Se) {
            return Err(Failure::Usage(
                "--ranked applies to the SE essential set only".into(),
            ));
        }
        ctx.out.push_str(&write_res(&ranked_essential_set(a)));
        return Ok(());
    }
    let (overlay, dirs) = match dir.direction() {
        Some(Direction::SE) => (Overlay::SeEssential, vec![Direction::SE]),
        Some(d) => (Overlay::Essential(d), vec![d]),
        None => (Overlay::EssentialAll, Direction::ALL.to_vec()),
    };
    let grid = render(a, overlay);
    ctx.out.push_str(&grid.to_string());
    for d in dirs {
        let ps: Vec<String> = essential_set(a, d).iter().map(|p| p.to_string()).collect();
        let _ = writeln!(
            ctx.out,
            "{d}: {}",
            if ps.is_empty() {
                "none".into()
            } else {
                ps.join(" ")
            }
        );
    }
    if legend {
        push_legend(ctx, &grid.legend);
    }
    Ok(())
}

fn reconstruct_cmd(
    ctx: &mut Ctx,
    mp: &MarginPair,
    res: &convexmat::RankedEssentialSet,
    trace: bool,
) -> CmdResult {
    let r = reconstruct_detailed(mp, res, trace)?;
    if trace {
        for (k, frame) in r.trace.iter().enumerate() {
            let _ = writeln!(ctx.out, "step {}: 1 at {}", k + 1, frame.placed);
            ctx.out.push_str(&render_state(&frame.state).to_string());
            ctx.out.push('\n');
        }
        let _ = writeln!(ctx.out, "cell writes: {}", r.cell_writes);
        ctx.out.push('\n');
    }
    ctx.out.push_str(&r.matrix.to_string());
    Ok(())
}

fn class_info(ctx: &mut Ctx, mp: &MarginPair, cap: usize) -> CmdResult {
    mp.validate()?;
    let (m, n) = (mp.rows(), mp.cols());
    let r = &mp.row_sums;
    let s = &mp.col_sums;
    let o = &mut ctx.out;
    let _ = writeln!(o, "margins: {mp}");
    let _ = writeln!(o, "shape: {m}x{n}");
    let _ = writeln!(
        o,
        "totals-equal: {}",
        yes_no(r.iter().sum::<usize>() == s.iter().sum::<usize>())
    );
    let _ = writeln!(o, "gale-ryser: {}", yes_no(gale_ryser(r, s)));
    if r.iter().all(|&x| x == 1) {
        let _ = writeln!(o, "unit-rows: {}", yes_no(unit_rows_nonempty(m, s)));
    }
    if r.iter().all(|&x| x == 2) {
        match two_regular_profile(s) {
            Some(p) => {
                let k: Vec<String> = p.k.iter().map(usize::to_string).collect();
                let _ = writeln!(o, "two-regular-profile: {}", k.join(" "));
            }
            None => {
                let _ = writeln!(o, "two-regular-profile: none");
            }
        }
    }
    if let (Some(&l), Some(&k)) = (r.first(), s.first()) {
        if l > 0 && k > 0 && r.iter().all(|&x| x == l) && s.iter().all(|&x| x == k) {
            match block_regular_class(m, n, k, l) {
                Some(c) => {
                    let count = c.count().map_or("overflow".to_string(), |x| x.to_string());
                    let _ = writeln!(o, "block-regular: p={} members={count}", c.p);
                }
                None => {
                    let _ = writeln!(o, "block-regular: empty");
                }
            }
        }
    }
    let nonempty = class_nonempty(mp, true)?;
    let _ = writeln!(o, "convex-nonempty: {}", yes_no(nonempty));
    match is_convex_class(mp, cap) {
        Ok(b) => {
            let _ = writeln!(o, "convex-class: {}", yes_no(b));
        }
        Err(Error::SizeExceeded { cells, cap }) => {
            let _ = writeln!(o, "convex-class: unknown ({cells} cells exceeds cap {cap})");
        }
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

fn lattice(ctx: &mut Ctx, op: LatticeOp) -> CmdResult {
    match op {
        LatticeOp::Meet { first, second } => {
            let c = meet(&read_matrix_file(&first)?, &read_matrix_file(&second)?)?;
            ctx.out.push_str(&c.to_string());
        }
        LatticeOp::Join { first, second } => {
            let c = join(&read_matrix_file(&first)?, &read_matrix_file(&second)?)?;
            ctx.out.push_str(&c.to_string());
        }
        LatticeOp::Hull(input) => {
            ctx.out
                .push_str(&convex_hull(&read_matrix(&input)?).to_string());
        }
        LatticeOp::Covers { input } => {
            let c = read_matrix(&input)?;
            let steps = covers(&c)?;
            let _ = writeln!(ctx.out, "covers: {}", steps.len());
            for step in steps {
                let tags: Vec<&str> = step.direction_tags.iter().map(|d| d.name()).collect();
                let _ = writeln!(ctx.out, "{} {}", step.position, tags.join(","));
            }
        }
        LatticeOp::Chain { input, down } => {
            let dir = if down {
                ChainDirection::Down
            } else {
                ChainDirection::Up
            };
            let chain = maximal_chain(&read_matrix(&input)?, dir)?;
            ctx.out.push_str(&write_matrix_list(&chain));
        }
    }
    Ok(())
}

fn verify(
    ctx: &mut Ctx,
    property: Option<String>,
    max_cells: Option<usize>,
    list: bool,
) -> CmdResult {
    if list {
        for (id, desc) in properties() {
            let _ = writeln!(ctx.out, "{id}: {desc}");
        }
        return Ok(());
    }
    let Some(property) = property else {
        return Err(Failure::Usage(
            "name a property, `all`, or pass --list".into(),
        ));
    };
    let ids: Vec<String> = if property == "all" {
        properties().map(|(id, _)| id.to_string()).collect()
    } else {
        vec![property]
    };
    for id in ids {
        let mut params = SweepParams::for_property(&id)?;
        if let Some(cells) = max_cells {
            params.max_cells = cells;
        }
        let report = run_sweep(&id, &params)?;
        let _ = write!(ctx.out, "{report}");
        if !report.passed() {
            ctx.code = 1;
        }
    }
    Ok(())
}
