use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use isotypic::cayley::{self, CayleyMatrix, DeterminantAlgorithm, Variant};
use isotypic::groups::abelian_groups_up_to;
use isotypic::molien::{self, GroupSource, Identity};
use isotypic::permanent::PermanentAlgorithm;
use isotypic::series::SeriesJson;
use isotypic::{parse_group, Error, FiniteAbelianGroup, IntPolynomial, OrderProfile, Report};

#[derive(Parser)]
#[command(name = "isotypic", version, about = "Isotypic dimensions, Poincaré series and Cayley-table permanents")]
struct Cli {
    /// Emit JSON instead of human-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Cap the number of worker threads.
    #[arg(long, global = true, value_name = "K")]
    threads: Option<usize>,
    /// Include wall-clock timings in check reports.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimensions of isotypic components.
    Dim {
        kind: DimKind,
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 0)]
        p: u64,
        #[arg(long, default_value_t = 0)]
        m: u64,
        #[arg(long, default_value_t = 0)]
        i: i64,
    },
    /// Poincaré series.
    Series {
        kind: SeriesKind,
        #[arg(long, conflicts_with = "profile")]
        group: Option<String>,
        /// JSON order profile, e.g. {"1":1,"2":3,"3":2}; invariants only.
        #[arg(long)]
        profile: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        i: usize,
        #[arg(long)]
        order: usize,
    },
    /// Cayley tables, their permanents and determinants.
    Cayley {
        kind: CayleyKind,
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "plain")]
        variant: String,
        /// Size of the Toeplitz table.
        #[arg(long)]
        l: Option<usize>,
        /// leibniz|ryser for per, leibniz|factored for det.
        #[arg(long)]
        alg: Option<String>,
    },
    /// Verification checks; exit status 1 when any case fails.
    Check {
        #[command(subcommand)]
        which: CheckCommand,
    },
    /// Brute-force reference values.
    Oracle {
        #[command(subcommand)]
        which: OracleCommand,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DimKind {
    A,
    B,
    Sw,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesKind {
    Sym,
    Ext,
    Bigraded,
}

#[derive(Clone, Copy, ValueEnum)]
enum CayleyKind {
    Table,
    Per,
    Det,
    Support,
    Counts,
}

#[derive(Args, Clone)]
struct GroupsArg {
    /// A single group.
    #[arg(long, conflicts_with = "max_order")]
    group: Option<String>,
    /// Every abelian group of order up to this bound.
    #[arg(long)]
    max_order: Option<u64>,
}

#[derive(Subcommand)]
enum CheckCommand {
    /// Reciprocity of the bigraded dimensions and of the invariant counts.
    Reciprocity {
        #[arg(long, default_value_t = 10)]
        max_total: u64,
        /// Largest weight index (default: max_total).
        #[arg(long)]
        max_i: Option<i64>,
        /// Bound on n + m for the one-variable slice.
        #[arg(long, default_value_t = 16)]
        fredman_sum: u64,
    },
    /// Generating-function identity, compared as truncated series (log2var|log3var|a|b).
    Identity {
        #[arg(long)]
        which: String,
        #[arg(long)]
        order: usize,
    },
    /// Permanent support equals the set of Hall-admissible monomials.
    Hall {
        #[command(flatten)]
        groups: GroupsArg,
        /// Also compare the extended table in degree n + 1.
        #[arg(long)]
        extended: bool,
    },
    /// Permanent and determinant are invariant or semi-invariant under the group action.
    Invariance {
        #[command(flatten)]
        groups: GroupsArg,
    },
    /// Group action on permutations is compatible with signs and monomials.
    Actions {
        #[command(flatten)]
        groups: GroupsArg,
        /// Sample size for groups too large for exhaustive search.
        #[arg(long, default_value_t = 500)]
        sample: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Permanent and determinant of the C_p table are congruent to a power sum mod p.
    Lehmer {
        #[arg(long)]
        p: u64,
    },
    /// Monomial counts of the extended and doubled tables match invariant dimensions.
    Extended {
        #[command(flatten)]
        groups: GroupsArg,
    },
    /// Toeplitz permanent support is exactly the degree-l monomials of weight 0 mod n.
    Conjecture {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        l: usize,
    },
    /// Every invariant check on every abelian group up to the given order
    /// (the exploratory conjecture check is not included).
    All {
        #[arg(long, default_value_t = 6)]
        max_order: u64,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Count weak compositions of m into n parts with weighted sum = i mod n.
    A {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = 0)]
        i: i64,
    },
    /// Count (composition, subset) pairs realising the bigraded dimension.
    Dims {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = 0)]
        i: i64,
    },
    /// Zero-sum subsets of a group, or weighted subsets of Z/n.
    Subsets {
        #[arg(long, conflicts_with_all = ["n", "m"])]
        group: Option<String>,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long, default_value_t = 0)]
        i: i64,
    },
}

struct Output {
    json: bool,
    timing: bool,
    text: String,
    value: Option<Value>,
    failed: bool,
}

impl Output {
    fn scalar(&mut self, key: &str, v: impl ToString) {
        let s = v.to_string();
        self.value = Some(json!({ key: s }));
        self.text = format!("{s}\n");
    }

    fn reports(&mut self, reports: Vec<Report>) {
        let reports: Vec<Report> = reports
            .into_iter()
            .map(|r| if self.timing { r } else { r.without_timing() })
            .collect();
        self.failed = reports.iter().any(|r| !r.passed());
        self.text = render_reports(&reports);
        self.value = Some(serde_json::to_value(&reports).expect("reports serialize"));
    }

    fn set<T: Serialize>(&mut self, v: &T, text: String) {
        self.value = Some(serde_json::to_value(v).expect("value serializes"));
        self.text = text;
    }
}

fn render_reports(reports: &[Report]) -> String {
    let width = reports.iter().map(|r| r.check.len()).max().unwrap_or(0);
    let mut out = String::new();
    for r in reports {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        let _ = write!(
            out,
            "{status}  {:<width$}  cases={:<8} failures={:<4} {}",
            r.check,
            r.cases,
            r.failures.len(),
            r.parameters
        );
        if let Some(t) = r.elapsed {
            let _ = write!(out, "  {t:.3}s");
        }
        out.push('\n');
        for note in &r.notes {
            let _ = writeln!(out, "      note: {note}");
        }
        for f in &r.failures {
            let _ = writeln!(out, "      witness: {f}");
        }
    }
    out
}

fn group_of(text: &str) -> Result<FiniteAbelianGroup, Error> {
    parse_group(text)
}

fn groups_of(arg: &GroupsArg) -> Result<Vec<FiniteAbelianGroup>, Error> {
    match (&arg.group, arg.max_order) {
        (Some(g), None) => Ok(vec![group_of(g)?]),
        (None, Some(n)) => Ok(abelian_groups_up_to(n)),
        _ => Err(Error::InvalidArgument("give either --group or --max-order".into())),
    }
}

fn cyclic_order(g: &FiniteAbelianGroup, what: &str) -> Result<u64, Error> {
    if g.has_single_factor() {
        Ok(g.order() as u64)
    } else {
        Err(Error::InvalidArgument(format!("{what} is defined for a cyclic group C<n>, got {g}")))
    }
}

fn poly_json(p: &IntPolynomial) -> Value {
    json!({ "nvars": p.nvars(), "terms": p.to_json_terms() })
}

fn grid_text(rows: &[Vec<String>], row_label: &str, col_label: &str) -> String {
    let width = rows.iter().flatten().map(String::len).max().unwrap_or(1).max(3);
    let ncols = rows.first().map_or(0, Vec::len);
    let mut out = format!("{row_label}\\{col_label}");
    for m in 0..ncols {
        let _ = write!(out, " {:>width$}", m);
    }
    out.push('\n');
    let lw = row_label.len() + col_label.len() + 1;
    for (p, row) in rows.iter().enumerate() {
        let _ = write!(out, "{:<lw$}", p);
        for c in row {
            let _ = write!(out, " {c:>width$}");
        }
        out.push('\n');
    }
    out
}

fn run_dim(out: &mut Output, kind: DimKind, group: &str, p: u64, m: u64, i: i64) -> Result<(), Error> {
    let g = group_of(group)?;
    let value: BigInt = match kind {
        DimKind::Sw => molien::dim_sym_wedge(cyclic_order(&g, "dim sw")?, p, m, i)?,
        DimKind::A | DimKind::B if g.has_single_factor() => {
            let n = g.order() as u64;
            match kind {
                DimKind::A => molien::a_coeff(n, m, i)?,
                _ => molien::b_coeff(n, m, i)?,
            }
        }
        DimKind::A | DimKind::B => {
            // general abelian group: read the coefficient off the series for chi_i
            let idx = usize::try_from(i)
                .ok()
                .filter(|&i| i < g.order())
                .ok_or_else(|| Error::InvalidArgument(format!("character index {i} out of range for {g}")))?;
            let s = match kind {
                DimKind::A => molien::sym_series(GroupSource::Group(&g), idx, m as usize)?,
                _ => molien::ext_series(GroupSource::Group(&g), idx, m as usize)?,
            };
            s.integer_coeffs().expect("checked integral")[m as usize].clone()
        }
    };
    out.scalar("dim", value);
    Ok(())
}

fn run_series(
    out: &mut Output,
    kind: SeriesKind,
    group: Option<&str>,
    profile: Option<&PathBuf>,
    i: usize,
    order: usize,
) -> Result<(), Error> {
    let profile = match profile {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
            Some(OrderProfile::from_json(&text)?)
        }
        None => None,
    };
    let g = group.map(group_of).transpose()?;
    let source = match (&g, &profile) {
        (Some(g), None) => GroupSource::Group(g),
        (None, Some(p)) => GroupSource::Profile(p),
        _ => return Err(Error::InvalidArgument("give either --group or --profile".into())),
    };
    match kind {
        SeriesKind::Sym | SeriesKind::Ext => {
            let s = match kind {
                SeriesKind::Sym => molien::sym_series(source, i, order)?,
                _ => molien::ext_series(source, i, order)?,
            };
            out.set(&SeriesJson::from(&s), format!("{s}\n"));
        }
        SeriesKind::Bigraded => {
            let g = g.ok_or_else(|| Error::InvalidArgument("bigraded series needs --group".into()))?;
            let n = cyclic_order(&g, "the bigraded series")?;
            let s = molien::bigraded_series(n, i as i64, order, n as usize)?;
            let grid = s.coeff_grid();
            let value = json!({ "order_s": order, "order_t": n, "coeffs": grid });
            out.set(&value, grid_text(&grid, "p", "m"));
        }
    }
    Ok(())
}

fn run_cayley(
    out: &mut Output,
    kind: CayleyKind,
    group: &str,
    variant: &str,
    l: Option<usize>,
    alg: Option<&str>,
) -> Result<(), Error> {
    let g = group_of(group)?;
    let variant: Variant = variant.parse()?;
    let table = CayleyMatrix::build(&g, variant, l)?;
    match kind {
        CayleyKind::Table => out.set(&table, table.to_string()),
        CayleyKind::Per => {
            let p = match alg {
                Some(a) => cayley::permanent(&table, a.parse::<PermanentAlgorithm>()?)?,
                None => cayley::permanent_auto(&table)?,
            };
            out.set(&poly_json(&p), format!("{p}\n"));
        }
        CayleyKind::Det => {
            let d = match alg {
                Some(a) => cayley::determinant(&table, &g, a.parse::<DeterminantAlgorithm>()?)?,
                None => cayley::determinant_auto(&table, &g)?,
            };
            out.set(&poly_json(&d), format!("{d}\n"));
        }
        CayleyKind::Support => {
            let support = cayley::hall_support(&g, table.size)?;
            let exps: Vec<&[u32]> = support.iter().rev().map(|m| m.exponents()).collect();
            let text: String = support.iter().rev().map(|m| format!("{m}\n")).collect();
            out.set(&json!({ "degree": table.size, "count": exps.len(), "monomials": exps }), text);
        }
        CayleyKind::Counts => {
            let row = cayley::counts_row(&g, 2 * g.order())?;
            let fmt = |v: &[BigInt]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
            let text = format!(
                "group       {}\np(G)        {}\nd(G)        {}\ninvariants  {}\ncyclic      {}\n",
                row.group,
                row.p,
                row.d,
                fmt(&row.invariants),
                fmt(&row.cyclic_invariants)
            );
            out.set(&row, text);
        }
    }
    Ok(())
}

fn per_group(groups: &[FiniteAbelianGroup], f: impl Fn(&FiniteAbelianGroup) -> Result<Report, Error>) -> Result<Vec<Report>, Error> {
    groups.iter().map(f).collect()
}

fn run_all(max_order: u64) -> Result<Vec<Report>, Error> {
    let groups = abelian_groups_up_to(max_order);
    let mut reports = vec![
        molien::check_reciprocity(10, 10)?,
        molien::check_fredman(16, 16)?,
        molien::check_identity(Identity::A, 20)?,
        molien::check_identity(Identity::B, 20)?,
        molien::check_identity(Identity::Log2Var, 20)?,
        molien::check_identity(Identity::Log3Var, 8)?,
    ];
    for g in &groups {
        let n = g.order();
        reports.push(cayley::check_hall(g, n + 1 <= 6)?);
        if n <= 6 {
            reports.push(cayley::check_determinant_factorization(g)?);
        }
        reports.push(cayley::check_invariance(g)?);
        reports.push(cayley::check_action_identities(g, 500, 0)?);
        reports.push(cayley::check_block_and_extended_counts(g)?);
    }
    for p in [3u64, 5, 7] {
        if p <= max_order.max(3) {
            reports.push(cayley::lehmer_check(p)?);
        }
    }
    Ok(reports)
}

fn run_check(out: &mut Output, which: &CheckCommand) -> Result<(), Error> {
    let reports = match which {
        CheckCommand::Reciprocity { max_total, max_i, fredman_sum } => vec![
            molien::check_reciprocity(*max_total, max_i.unwrap_or(*max_total as i64))?,
            molien::check_fredman(*fredman_sum, max_i.unwrap_or(*fredman_sum as i64))?,
        ],
        CheckCommand::Identity { which, order } => vec![molien::check_identity(which.parse()?, *order)?],
        CheckCommand::Hall { groups, extended } => per_group(&groups_of(groups)?, |g| cayley::check_hall(g, *extended))?,
        CheckCommand::Invariance { groups } => per_group(&groups_of(groups)?, cayley::check_invariance)?,
        CheckCommand::Actions { groups, sample, seed } => {
            per_group(&groups_of(groups)?, |g| cayley::check_action_identities(g, *sample, *seed))?
        }
        CheckCommand::Lehmer { p } => vec![cayley::lehmer_check(*p)?],
        CheckCommand::Extended { groups } => per_group(&groups_of(groups)?, cayley::check_block_and_extended_counts)?,
        CheckCommand::Conjecture { n, l } => vec![cayley::check_conjecture(*n, *l)?],
        CheckCommand::All { max_order } => run_all(*max_order)?,
    };
    out.reports(reports);
    Ok(())
}

fn run_oracle(out: &mut Output, which: &OracleCommand) -> Result<(), Error> {
    match which {
        OracleCommand::A { n, m, i } => out.scalar("count", molien::a_bruteforce(*n, *m, *i)?),
        OracleCommand::Dims { n, p, m, i } => out.scalar("count", molien::dim_bruteforce(*n, *p, *m, *i)?),
        OracleCommand::Subsets { group: Some(g), .. } => {
            out.scalar("count", group_of(g)?.subset_sum_zero_count_enumerated()?)
        }
        OracleCommand::Subsets { group: None, n: Some(n), m, i } => out.scalar("count", molien::b_subsets(*n, *m, *i)?),
        OracleCommand::Subsets { .. } => return Err(Error::InvalidArgument("give --group or --n".into())),
    }
    Ok(())
}

fn run(cli: &Cli, out: &mut Output) -> Result<(), Error> {
    match &cli.command {
        Command::Dim { kind, group, p, m, i } => run_dim(out, *kind, group, *p, *m, *i),
        Command::Series { kind, group, profile, i, order } => {
            run_series(out, *kind, group.as_deref(), profile.as_ref(), *i, *order)
        }
        Command::Cayley { kind, group, variant, l, alg } => run_cayley(out, *kind, group, variant, *l, alg.as_deref()),
        Command::Check { which } => run_check(out, which),
        Command::Oracle { which } => run_oracle(out, which),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            eprintln!("error: cannot configure thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    let mut out = Output {
        json: cli.json,
        timing: cli.timing,
        text: String::new(),
        value: None,
        failed: false,
    };
    match run(&cli, &mut out) {
        Ok(()) => {
            if out.json {
                let v = out.value.take().unwrap_or(Value::Null);
                println!("{}", serde_json::to_string_pretty(&v).expect("json"));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(if out.failed { 1 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::InvalidArgument(_) | Error::Parse(_) => 2,
                Error::Guard { .. } => 3,
                Error::Mismatch(_) | Error::NonIntegral(_) => 1,
            })
        }
    }
}
