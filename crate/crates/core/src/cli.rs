//! Command-line front end. [`run`] parses arguments, resolves spaces and
//! expressions, performs one command and writes its result to `out`.
//!
//! Exit codes: 0 success, 1 a verification suite found failures, 2 usage
//! error, 3 file not readable, 4 unparseable input, 5 space mismatch,
//! 6 any other mathematical error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::charclasses::{chern_character, mukai_vector};
use crate::cohomology::format::{read_space, write_space};
use crate::cohomology::{k3, point, product, projective_space, torus, CohClass, SpaceRef};
use crate::error::Error;
use crate::pairing::{euler_pairing, mukai_pairing};
use crate::parse::{parse_class, parse_kexpr, ParseError, ParseErrorKind};
use crate::suites;
use crate::transforms::{
    apply_transform, apply_transform_backward, compose_kernels, left_adjoint_kernel, right_adjoint_kernel,
    verify_adjointness, verify_identity, verify_isometry, Report, Side,
};

#[derive(Debug, Parser)]
#[command(name = "mukai", version, about = "Exact Mukai pairings and cohomological integral transforms")]
pub struct Cli {
    /// Load a hand-written space description; may be repeated.
    #[arg(long = "space-file", global = true, value_name = "PATH")]
    pub space_files: Vec<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the basis, bidegrees and tangent Chern class of a space.
    Show {
        #[arg(long)]
        space: String,
        #[arg(long, value_enum, default_value_t = ShowFormat::Table)]
        format: ShowFormat,
    },
    /// Euler pairing chi(E1, E2) of two K-theory expressions.
    Pair {
        #[arg(long)]
        space: String,
        #[arg(long)]
        e1: String,
        #[arg(long)]
        e2: String,
        /// Read E1 and E2 as cohomology classes and print their Mukai pairing.
        #[arg(long)]
        classes: bool,
    },
    /// Mukai vector of a K-theory expression.
    Mukai {
        #[arg(long)]
        space: String,
        #[arg(long)]
        expr: String,
        /// Print the Chern character instead.
        #[arg(long)]
        ch: bool,
    },
    /// Evaluate a class expression.
    Eval {
        #[arg(long)]
        space: String,
        #[arg(long)]
        expr: String,
    },
    /// Apply the transform with a kernel on X x Y to a class on X.
    Transform {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        kernel: String,
        #[arg(long)]
        class: String,
        /// Read the kernel as a transform Y -> X; the class lives on Y.
        #[arg(long)]
        backward: bool,
    },
    /// Compose kernels K1 on X x Y and K2 on Y x Z.
    Compose {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        z: String,
        #[arg(long)]
        k1: String,
        #[arg(long)]
        k2: String,
    },
    /// Kernel of the left or right adjoint transform.
    Adjoint {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        kernel: String,
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        side: SideArg,
    },
    /// Run a verification suite and print one JSON report per line.
    Verify(VerifyArgs),
}

#[derive(Debug, clap::Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    /// Comma-separated space names (per-space suites).
    #[arg(long)]
    pub spaces: Option<String>,
    #[arg(long)]
    pub x: Option<String>,
    #[arg(long)]
    pub y: Option<String>,
    #[arg(long)]
    pub z: Option<String>,
    /// Kernel on X x Y.
    #[arg(long)]
    pub kernel: Option<String>,
    /// Inverse kernel on Y x X (isometry).
    #[arg(long)]
    pub inverse: Option<String>,
    /// Restrict adjointness to one side.
    #[arg(long, value_enum)]
    pub side: Option<SideArg>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of random cases (randomized suites).
    #[arg(long)]
    pub count: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ShowFormat {
    Table,
    File,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    TauProps,
    SqrtProps,
    Adjointness,
    Isometry,
    Composition,
    Columns,
    Euler,
    Identity,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read `{path}`: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("cannot parse `{input}` {source}")]
    Parse { input: String, source: ParseError },
    #[error("unknown space `{0}`")]
    UnknownSpace(String),
    #[error("{path}: {source}")]
    SpaceFile { path: PathBuf, source: Error },
    #[error("{0}")]
    Math(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        let math = |e: &Error| match e {
            Error::SpaceMismatch { .. } | Error::NotAProduct(_) => 5,
            _ => 6,
        };
        match self {
            CliError::Usage(_) => 2,
            CliError::Io { .. } => 3,
            CliError::Parse { source, .. } => match &source.kind {
                ParseErrorKind::Math(e @ (Error::SpaceMismatch { .. } | Error::NotAProduct(_))) => math(e),
                _ => 4,
            },
            CliError::UnknownSpace(_) | CliError::SpaceFile { .. } => 4,
            CliError::Math(e) => math(e),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Built-in spaces plus any loaded from files.
#[derive(Default)]
pub struct Registry {
    files: Vec<SpaceRef>,
}

impl Registry {
    pub fn load(paths: &[PathBuf]) -> CliResult<Self> {
        let mut files = Vec::new();
        for path in paths {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
            let space = read_space(&text).map_err(|source| CliError::SpaceFile { path: path.clone(), source })?;
            files.push(space);
        }
        Ok(Registry { files })
    }

    /// Resolves `p1`..`pN`, `pt`, `k3`, `t1`..`tN`, file spaces by name, and
    /// products written with a standalone `x`, e.g. `p1 x t1`.
    pub fn resolve(&self, name: &str) -> CliResult<SpaceRef> {
        let mut factors = Vec::new();
        let mut current: Vec<&str> = Vec::new();
        for token in name.split_whitespace() {
            if token == "x" || token == "×" {
                factors.push(current.join(" "));
                current.clear();
            } else {
                current.push(token);
            }
        }
        factors.push(current.join(" "));
        let mut spaces = factors.iter().map(|f| self.base(f));
        let first = spaces.next().expect("at least one factor")?;
        spaces.try_fold(first, |acc, s| Ok(product(&acc, &s?)))
    }

    fn base(&self, name: &str) -> CliResult<SpaceRef> {
        let unknown = || CliError::UnknownSpace(name.to_string());
        if name.is_empty() {
            return Err(unknown());
        }
        if let Some(s) = self.files.iter().find(|s| s.name() == name) {
            return Ok(s.clone());
        }
        if let Some(s) = self.files.iter().find(|s| s.name().eq_ignore_ascii_case(name)) {
            return Ok(s.clone());
        }
        let lower = name.to_ascii_lowercase();
        let number = |prefix: &str| lower.strip_prefix(prefix).and_then(|n| n.parse::<u32>().ok());
        match lower.as_str() {
            "pt" => Ok(point()),
            "k3" => Ok(k3()),
            _ => match (number("p"), number("t")) {
                (Some(n), _) if n <= 8 => Ok(projective_space(n)),
                (_, Some(g)) if (1..=3).contains(&g) => Ok(torus(g)),
                _ => Err(unknown()),
            },
        }
    }
}

fn class(text: &str, space: &SpaceRef) -> CliResult<CohClass> {
    parse_class(text, space).map_err(|source| CliError::Parse { input: text.to_string(), source })
}

fn kexpr(text: &str, space: &SpaceRef) -> CliResult<crate::charclasses::KExpr> {
    parse_kexpr(text, space).map_err(|source| CliError::Parse { input: text.to_string(), source })
}

fn show_table(space: &SpaceRef) -> String {
    let width = space.basis().iter().map(|e| e.name.chars().count()).max().unwrap_or(0).max(4);
    let mut out = format!("space {} (dim {})\n", space.name(), space.dim());
    out.push_str(&format!("{:>5}  {:<width$}  p  q\n", "index", "name"));
    for (k, e) in space.basis().iter().enumerate() {
        out.push_str(&format!("{k:>5}  {:<width$}  {}  {}\n", e.name, e.p, e.q));
    }
    out.push_str(&format!("point: {}\n", space.element(space.point_index()).name));
    out.push_str(&format!("c(T) = {}\n", CohClass::tangent_chern(space).render()));
    out
}

/// Runs one command. Returns the report lines and whether every report passed.
fn execute(cli: &Cli, out: &mut dyn Write) -> CliResult<bool> {
    let registry = Registry::load(&cli.space_files)?;
    let mut emit = |line: String| writeln!(out, "{line}").map_err(|e| CliError::Io { path: "<stdout>".into(), source: e });
    match &cli.command {
        Command::Show { space, format } => {
            let s = registry.resolve(space)?;
            let text = match format {
                ShowFormat::Table => show_table(&s),
                ShowFormat::File => write_space(&s),
            };
            emit(text.trim_end().to_string())?;
        }
        Command::Pair { space, e1, e2, classes } => {
            let s = registry.resolve(space)?;
            let value = if *classes {
                mukai_pairing(&class(e1, &s)?, &class(e2, &s)?)?
            } else {
                euler_pairing(&kexpr(e1, &s)?, &kexpr(e2, &s)?)?
            };
            emit(value.to_string())?;
        }
        Command::Mukai { space, expr, ch } => {
            let s = registry.resolve(space)?;
            let e = kexpr(expr, &s)?;
            let v = if *ch { chern_character(&e)? } else { mukai_vector(&e)? };
            emit(v.render())?;
        }
        Command::Eval { space, expr } => {
            let s = registry.resolve(space)?;
            emit(class(expr, &s)?.render())?;
        }
        Command::Transform { x, y, kernel, class: v, backward } => {
            let (x, y) = (registry.resolve(x)?, registry.resolve(y)?);
            let mu = class(kernel, &product(&x, &y))?;
            let image = if *backward {
                apply_transform_backward(&mu, &class(v, &y)?)?
            } else {
                apply_transform(&mu, &class(v, &x)?)?
            };
            emit(image.render())?;
        }
        Command::Compose { x, y, z, k1, k2 } => {
            let (x, y, z) = (registry.resolve(x)?, registry.resolve(y)?, registry.resolve(z)?);
            let mu = class(k1, &product(&x, &y))?;
            let nu = class(k2, &product(&y, &z))?;
            emit(compose_kernels(&mu, &nu)?.render())?;
        }
        Command::Adjoint { x, y, kernel, side } => {
            let (x, y) = (registry.resolve(x)?, registry.resolve(y)?);
            let e = class(kernel, &product(&x, &y))?;
            let adj = match side {
                SideArg::Left => left_adjoint_kernel(&e)?,
                SideArg::Right => right_adjoint_kernel(&e)?,
            };
            emit(adj.render())?;
        }
        Command::Verify(args) => {
            let reports = verify(&registry, args)?;
            let passed = reports.iter().all(Report::passed);
            for r in reports {
                emit(r.to_json())?;
            }
            return Ok(passed);
        }
    }
    Ok(true)
}

fn space_list(registry: &Registry, arg: &Option<String>, default: &str) -> CliResult<Vec<SpaceRef>> {
    arg.as_deref().unwrap_or(default).split(',').map(|s| registry.resolve(s.trim())).collect()
}

fn pair_spaces(registry: &Registry, args: &VerifyArgs, dx: &str, dy: &str) -> CliResult<(SpaceRef, SpaceRef)> {
    let x = registry.resolve(args.x.as_deref().unwrap_or(dx))?;
    let y = match &args.y {
        Some(y) => registry.resolve(y)?,
        None if args.x.is_some() => x.clone(),
        None => registry.resolve(dy)?,
    };
    Ok((x, y))
}

fn verify(registry: &Registry, args: &VerifyArgs) -> CliResult<Vec<Report>> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut reports = Vec::new();
    match args.suite {
        Suite::TauProps => {
            for x in space_list(registry, &args.spaces, "p1,p2,k3,t1,t1 x p1")? {
                reports.push(suites::tau_properties(&x)?);
            }
        }
        Suite::SqrtProps => {
            for x in space_list(registry, &args.spaces, "p4")? {
                reports.push(suites::sqrt_properties(&x, &mut rng, args.count.unwrap_or(100))?);
            }
        }
        Suite::Euler => {
            for x in space_list(registry, &args.spaces, "p1,p2,p3,k3,t1")? {
                reports.push(suites::euler_sweep(&x, &suites::polarization(&x), -4..=4)?);
            }
        }
        Suite::Identity => {
            for x in space_list(registry, &args.spaces, "p1,p2,k3,t1")? {
                reports.push(verify_identity(&x)?);
            }
        }
        Suite::Adjointness => {
            let (x, y) = pair_spaces(registry, args, "p1", "p2")?;
            let default = if x.same_as(&y) { "delta()" } else { "v(box(O, O))" };
            let text = args.kernel.as_deref().unwrap_or(default);
            let e = class(text, &product(&x, &y))?;
            let sides = match args.side {
                Some(s) => vec![s.into()],
                None => vec![Side::Left, Side::Right],
            };
            for side in sides {
                reports.push(verify_adjointness(&e, text, side)?);
            }
        }
        Suite::Isometry => {
            let (x, y) = pair_spaces(registry, args, "p2", "p2")?;
            let (kernel, inverse) = match (&args.kernel, &args.inverse) {
                (Some(k), Some(i)) => (k.clone(), i.clone()),
                (None, None) if x.same_as(&y) => {
                    let h = suites::polarization(&x).render();
                    (format!("delta()*p2(ch(O({h})))"), format!("delta()*p2(ch(O(-({h}))))"))
                }
                _ => return Err(CliError::Usage("isometry needs both --kernel and --inverse".into())),
            };
            let e = class(&kernel, &product(&x, &y))?;
            let e_inv = class(&inverse, &product(&y, &x))?;
            reports.push(verify_isometry(&e, &e_inv, &kernel)?);
        }
        Suite::Composition => {
            let x = registry.resolve(args.x.as_deref().unwrap_or("p1"))?;
            let y = registry.resolve(args.y.as_deref().unwrap_or("p2"))?;
            let z = registry.resolve(args.z.as_deref().unwrap_or("p1"))?;
            reports.push(suites::composition_sweep(&x, &y, &z, &mut rng, args.count.unwrap_or(50))?);
        }
        Suite::Columns => {
            let (x, y) = pair_spaces(registry, args, "t1", "t1")?;
            match &args.kernel {
                Some(text) => reports.push(crate::transforms::verify_columns(&class(text, &product(&x, &y))?, text)?),
                None => reports.push(suites::columns_sweep(&x, &y, &mut rng, args.count.unwrap_or(10))?),
            }
        }
    }
    Ok(reports)
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
