//! `leaky`: command-line front end for the leaky Hurwitz descendant engine.
//!
//! Exit codes: 0 success, 2 invalid input, 3 missing vertex fixture,
//! 4 unreadable or conflicting fixture file, 5 free weight scan bound hit,
//! 6 chamber or wall error, 7 self-test failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use leaky::chambers::{self, ChamberError, Vanishing, Wall};
use leaky::enumerate::EnumerationError;
use leaky::intersect::{psi_kappa_integral, recursion_lhs, recursion_rhs};
use leaky::{arith::multinomial, compute_h, enumerate_covers, rat, FixtureOracle, FixtureTable, Problem, Rational};

#[derive(Parser)]
#[command(name = "leaky", version, about = "Exact k-leaky double Hurwitz descendants via tropical covers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Extra vertex multiplicity fixtures (JSON), merged into the built-in table
    #[arg(long, global = true, env = "LEAKY_FIXTURES")]
    fixtures: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// H_g(x, e) and the number of covers
    Number(ProblemArgs),
    /// Every cover with its multiplicity factors
    Covers {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Drop covers of multiplicity zero
        #[arg(long)]
        nonzero: bool,
    },
    /// Genus-0 chamber polynomial at the reference point -x
    Polynomial(ProblemArgs),
    /// Walls of the genus-0 chamber structure
    Walls(ShapeArgs),
    /// Wall-crossing difference, computed and in closed form
    Wallcross {
        #[command(flatten)]
        shape: ShapeArgs,
        /// Marking subset I of the wall, 1-based
        #[arg(long, value_delimiter = ',', required = true)]
        subset: Vec<usize>,
        /// Point on the positive side (default: searched)
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "minus")]
        plus: Option<Vec<i64>>,
        /// Point on the negative side
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "plus")]
        minus: Option<Vec<i64>>,
    },
    /// Decide whether H_0(x, e) vanishes
    Classify(ProblemArgs),
    /// Run the built-in invariant checks
    Selftest,
}

#[derive(Args)]
struct ProblemArgs {
    #[arg(short = 'g', default_value_t = 0)]
    genus: u32,
    /// Number of markings (inferred from -x)
    #[arg(short = 'n')]
    n: Option<usize>,
    #[arg(short = 'k', allow_hyphen_values = true)]
    k: i64,
    /// Profile, comma separated
    #[arg(short = 'x', value_delimiter = ',', allow_hyphen_values = true, required = true)]
    x: Vec<i64>,
    /// Psi-exponents, comma separated (default: zeros)
    #[arg(short = 'e', value_delimiter = ',')]
    e: Option<Vec<u32>>,
}

#[derive(Args)]
struct ShapeArgs {
    #[arg(short = 'n')]
    n: usize,
    #[arg(short = 'k', allow_hyphen_values = true)]
    k: i64,
    #[arg(short = 'e', value_delimiter = ',')]
    e: Option<Vec<u32>>,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<EnumerationError> for Failure {
    fn from(e: EnumerationError) -> Self {
        let code = match e {
            EnumerationError::Problem(_) => 2,
            EnumerationError::MissingVertex(_) => 3,
            EnumerationError::WeightBound { .. } => 5,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<ChamberError> for Failure {
    fn from(e: ChamberError) -> Self {
        let code = match e {
            ChamberError::Problem(_) | ChamberError::Genus(_) | ChamberError::BadSubset(_) => 2,
            _ => 6,
        };
        Failure::new(code, e.to_string())
    }
}

impl ProblemArgs {
    fn problem(&self) -> Result<Problem, Failure> {
        if let Some(n) = self.n {
            if n != self.x.len() {
                return Err(Failure::new(2, format!("-n {n} but -x has {} entries", self.x.len())));
            }
        }
        let e = self.e.clone().unwrap_or_else(|| vec![0; self.x.len()]);
        let p = Problem::new(self.genus, self.k, self.x.clone(), e);
        p.validate().map_err(|err| Failure::new(2, err.to_string()))?;
        Ok(p)
    }
}

impl ShapeArgs {
    fn psi(&self) -> Result<Vec<u32>, Failure> {
        let e = self.e.clone().unwrap_or_else(|| vec![0; self.n]);
        if e.len() != self.n {
            return Err(Failure::new(2, format!("-e has {} entries but -n is {}", e.len(), self.n)));
        }
        Ok(e)
    }
}

fn oracle(path: Option<&PathBuf>) -> Result<FixtureOracle, Failure> {
    let mut table = FixtureTable::builtin();
    if let Some(path) = path {
        let extra = FixtureTable::load(path).map_err(|e| Failure::new(4, e.to_string()))?;
        table.extend(extra).map_err(|e| Failure::new(4, e.to_string()))?;
    }
    Ok(FixtureOracle::new(table))
}

fn wall_json(w: &Wall) -> Value {
    serde_json::to_value(w).expect("walls serialize")
}

fn run(cli: &Cli) -> Result<(Value, String), Failure> {
    match &cli.command {
        Command::Number(args) => {
            let p = args.problem()?;
            let covers = enumerate_covers(&p, &oracle(cli.fixtures.as_ref())?)?;
            let h: Rational = covers.iter().map(|w| w.multiplicity.clone()).sum();
            let table = format!("H = {h}\ncovers = {}", covers.len());
            Ok((json!({"H": h.to_string(), "covers": covers.len()}), table))
        }
        Command::Covers { problem, nonzero } => {
            let p = problem.problem()?;
            let mut covers = enumerate_covers(&p, &oracle(cli.fixtures.as_ref())?)?;
            if *nonzero {
                covers.retain(|w| !w.multiplicity.is_zero());
            }
            let mut table = String::from("aut\tedges\tvertices\tmult\tcover");
            for w in &covers {
                let verts: Vec<String> = w.vertex_mults.iter().map(|m| m.to_string()).collect();
                table.push_str(&format!(
                    "\n{}\t{}\t{}\t{}\t{}",
                    w.aut,
                    w.edge_product,
                    verts.join(","),
                    w.multiplicity,
                    serde_json::to_string(&w.cover).expect("covers serialize")
                ));
            }
            Ok((serde_json::to_value(&covers).expect("covers serialize"), table))
        }
        Command::Polynomial(args) => {
            let p = args.problem()?;
            let poly = chambers::chamber_polynomial(&p)?;
            let degree = if poly.is_zero() { -1 } else { poly.total_degree() as i64 };
            let table = format!("{poly}\ndegree = {degree}");
            Ok((
                json!({"polynomial": poly.to_string(), "factored": poly.display_factored(), "degree": degree, "terms": poly.to_json()}),
                table,
            ))
        }
        Command::Walls(shape) => {
            let ws = chambers::walls(shape.n);
            let table = ws.iter().map(|w| w.to_string()).collect::<Vec<_>>().join("\n");
            Ok((Value::Array(ws.iter().map(wall_json).collect()), table))
        }
        Command::Wallcross {
            shape,
            subset,
            plus,
            minus,
        } => {
            let e = shape.psi()?;
            let zero_based: Vec<usize> = subset.iter().map(|&i| i.wrapping_sub(1)).collect();
            let wall = Wall::new(&zero_based, shape.n).map_err(|_| Failure::new(2, format!("invalid wall subset {subset:?}")))?;
            let wc = match (plus, minus) {
                (Some(a), Some(b)) => {
                    if a.len() != shape.n || b.len() != shape.n {
                        return Err(Failure::new(2, "flanking points need -n entries"));
                    }
                    chambers::cross_wall_at(shape.k, &e, &wall, a.clone(), b.clone())?
                }
                _ => chambers::cross_wall(shape.k, &e, &wall)?,
            };
            let computed = wc.computed.display_factored();
            let formula = wc.formula.display_factored();
            let table = format!("wall = {wall}\ncomputed = {computed}\nformula = {formula}\nagree = {}", wc.agrees());
            Ok((
                json!({
                    "wall": wall_json(&wall),
                    "plus": wc.plus,
                    "minus": wc.minus,
                    "computed": computed,
                    "formula": formula,
                    "agree": wc.agrees(),
                }),
                table,
            ))
        }
        Command::Classify(args) => {
            let p = args.problem()?;
            let class = chambers::classify(&p)?;
            Ok((json!({"class": class.to_string()}), class.to_string()))
        }
        Command::Selftest => {
            let fixtures = oracle(cli.fixtures.as_ref())?;
            let results = selftest(&fixtures);
            let all = results.iter().all(|(_, ok, _)| *ok);
            let table = results
                .iter()
                .map(|(name, ok, detail)| format!("{} {name}: {detail}", if *ok { "PASS" } else { "FAIL" }))
                .collect::<Vec<_>>()
                .join("\n");
            let value = Value::Array(
                results
                    .iter()
                    .map(|(name, ok, detail)| json!({"property": name, "pass": ok, "detail": detail}))
                    .collect(),
            );
            if all {
                Ok((value, table))
            } else {
                let text = match cli.format {
                    Format::Json => serde_json::to_string_pretty(&value).expect("json"),
                    Format::Table => table,
                };
                Err(Failure::new(7, text))
            }
        }
    }
}

type Check = (&'static str, bool, String);

fn check(name: &'static str, f: impl FnOnce() -> Result<String, String>) -> Check {
    match f() {
        Ok(detail) => (name, true, detail),
        Err(detail) => (name, false, detail),
    }
}

fn selftest(oracle: &FixtureOracle) -> Vec<Check> {
    let mut out = Vec::new();
    out.push(check("golden number", || {
        let p = Problem::new(1, 1, vec![7, -3, -1], vec![1, 0, 0]);
        let h = compute_h(&p, oracle).map_err(|e| e.to_string())?;
        (h == rat(51, 4).unwrap()).then(|| format!("H = {h}")).ok_or(format!("H = {h}"))
    }));
    out.push(check("chamber polynomial", || {
        let p = Problem::new(0, 1, vec![6, -1, -1, 1, -2], vec![1, 0, 0, 0, 0]);
        let poly = chambers::chamber_polynomial(&p).map_err(|e| e.to_string())?;
        let h = compute_h(&p, oracle).map_err(|e| e.to_string())?;
        (poly.to_string() == "3*x1-3" && poly.eval_int(&p.x) == h)
            .then(|| poly.to_string())
            .ok_or(format!("{poly} with H = {h}"))
    }));
    out.push(check("wall-crossing", || {
        let mut count = 0;
        for n in 4..=5 {
            for k in 0..=2 {
                for w in chambers::walls(n) {
                    let mut e = vec![0; n];
                    e[0] = 1;
                    for psi in [vec![0; n], e] {
                        let wc = chambers::cross_wall(k, &psi, &w).map_err(|err| err.to_string())?;
                        if !wc.agrees() {
                            return Err(format!("{w} k={k} e={psi:?}"));
                        }
                        count += 1;
                    }
                }
            }
        }
        Ok(format!("{count} walls"))
    }));
    out.push(check("genus-1 family", || {
        for k in 1..=2i64 {
            for m in 2..=6i64 {
                let p = Problem::plain(1, k, vec![m + k, -(m - k)]);
                let h = compute_h(&p, oracle).map_err(|e| e.to_string())?;
                let expected = Rational::from(m * (m - 1) * (m + 1)) * rat(1, 12).unwrap() - Rational::from(k) * rat(1, 24).unwrap();
                if h != expected {
                    return Err(format!("d={} k={k}: {h}", m + k));
                }
            }
        }
        Ok("10 cases".to_string())
    }));
    out.push(check("vanishing classifier", || {
        let mut count = 0;
        for k in 1..=4i64 {
            for a in 1..=3 * k {
                for b in 1..=3 * k {
                    for c in 1..=3 * k {
                        let d = 2 * k - a - b - c;
                        if d < 1 {
                            continue;
                        }
                        for e in [vec![0; 4], vec![1, 0, 0, 0]] {
                            let p = Problem::new(0, k, vec![a, b, c, d], e);
                            let class = chambers::classify(&p).map_err(|err| err.to_string())?;
                            let h = compute_h(&p, oracle).map_err(|err| err.to_string())?;
                            if (class == Vanishing::Zero) != h.is_zero() {
                                return Err(format!("{:?}: {class} but H = {h}", p.x));
                            }
                            count += 1;
                        }
                    }
                }
            }
        }
        Ok(format!("{count} inputs"))
    }));
    out.push(check("psi-kappa strings", || {
        for e in [vec![2, 0, 0, 0, 0], vec![1, 1, 0, 0, 0], vec![1, 1, 1, 0, 0, 0]] {
            if psi_kappa_integral(&e, 0) != multinomial(&e) {
                return Err(format!("{e:?}"));
            }
        }
        let v = psi_kappa_integral(&[0; 5], 2);
        (v == Rational::from(5i64)).then(|| "kappa^2 on M_0,5 = 5".to_string()).ok_or(format!("kappa^2 = {v}"))
    }));
    out.push(check("recursion identity", || {
        let mut count = 0;
        let profiles = [vec![5, -2, 3, 1, -4], vec![-1, 2, 2, 0, 0], vec![7, -1, -1, -1, -1]];
        for (k, x) in [(1i64, &profiles[0]), (1, &profiles[1]), (1, &profiles[2])] {
            for e in [vec![1, 0, 0, 0, 0], vec![2, 0, 0, 0, 0], vec![1, 1, 0, 0, 0]] {
                let f = 2 - e.iter().sum::<u32>();
                let p = Problem::new(0, k, x.clone(), e.clone());
                for s in (0..5).filter(|&s| e[s] > 0) {
                    let rhs = recursion_rhs(&p, s, f).map_err(|err| err.to_string())?;
                    if rhs != recursion_lhs(&p, s, f) {
                        return Err(format!("{x:?} e={e:?} s={}", s + 1));
                    }
                    count += 1;
                }
            }
        }
        Ok(format!("{count} instances"))
    }));
    out.push(check("turn-around symmetry", || {
        for p in [
            Problem::new(1, 1, vec![7, -3, -1], vec![1, 0, 0]),
            Problem::new(0, 2, vec![5, -1, 1, -1], vec![1, 0, 0, 0]),
        ] {
            let a = compute_h(&p, oracle).map_err(|e| e.to_string())?;
            let b = compute_h(&p.turned_around(), oracle).map_err(|e| e.to_string())?;
            if a != b {
                return Err(format!("{:?}: {a} vs {b}", p.x));
            }
        }
        Ok("2 inputs".to_string())
    }));
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok((value, table)) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("json")),
                Format::Table => println!("{table}"),
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            if f.code == 7 {
                println!("{}", f.message);
            } else {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
