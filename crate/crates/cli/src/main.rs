use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use twistgrs::bkt::{BktTable, Verdict};
use twistgrs::bound::{self, Orientation};
use twistgrs::codes::{grs, parse_matrix, GrsSpec, LinearCode};
use twistgrs::cosets::CosetTable;
use twistgrs::galois::{make_field, Field};
use twistgrs::ring::PolyR;
use twistgrs::search::{self, Algorithm, SearchConfig, SearchHit};

#[derive(Parser)]
#[command(
    name = "twistgrs",
    version,
    about = "GRS codes with cyclotomic twists and their subfield-subcodes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Describe GF(p^m): modulus, order, primitive element.
    Field(FieldCmd),
    /// List minimal cyclotomic cosets of Z_N under multiplication by p.
    Cosets(CosetsCmd),
    /// Build a GRS code from a twist polynomial or coset union.
    Grs(GrsCmd),
    /// Subfield-subcode of a GRS code or of a code read from a matrix file.
    Sfsc(SfscCmd),
    /// Evaluate the coset-counting dimension bound.
    Bound(BoundCmd),
    /// Search coset unions for codes that match or beat a table.
    Search(SearchCmd),
    /// Apply puncture/shorten steps to a hit.
    Derive(DeriveCmd),
    /// Exact minimum distance by enumeration.
    Mindist(MindistCmd),
    /// Best-known table management.
    #[command(subcommand)]
    Bkt(BktCmd),
}

#[derive(Args, Clone)]
struct FieldArgs {
    #[arg(long)]
    p: u32,
    #[arg(long, default_value_t = 1)]
    m: u32,
    /// Modulus coefficients, constant term first (e.g. 1,0,1,1,1,0,0,0,1).
    #[arg(long)]
    modulus: Option<String>,
}

impl FieldArgs {
    fn build(&self) -> Result<Arc<Field>> {
        let modulus = match &self.modulus {
            None => None,
            Some(s) => Some(
                s.split(',')
                    .map(|c| c.trim().parse::<u32>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .with_context(|| format!("modulus {s:?} is not a list of integers"))?,
            ),
        };
        Ok(make_field(self.p, self.m, modulus.as_deref())?)
    }
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Json,
    Tsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgArg {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
}

impl From<AlgArg> for Algorithm {
    fn from(a: AlgArg) -> Self {
        match a {
            AlgArg::One => Algorithm::Alg1,
            AlgArg::Two => Algorithm::Alg2,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OrientationArg {
    Twist,
    Parent,
}

impl From<OrientationArg> for Orientation {
    fn from(o: OrientationArg) -> Self {
        match o {
            OrientationArg::Twist => Orientation::Twist,
            OrientationArg::Parent => Orientation::Parent,
        }
    }
}

/// Twist given either as text or as a union of coset representatives.
#[derive(Args, Clone)]
struct TwistArgs {
    /// Coset representatives, comma separated. The twist is the 0/1
    /// polynomial supported on their union.
    #[arg(long, conflicts_with = "twist")]
    cosets: Option<String>,
    /// Twist polynomial, e.g. "x^25 + x^5 + x" or "e3*x^2 + 1".
    #[arg(long)]
    twist: Option<String>,
}

impl TwistArgs {
    fn reps(&self) -> Result<Option<Vec<usize>>> {
        self.cosets.as_deref().map(parse_list).transpose()
    }

    fn poly(&self, field: &Arc<Field>) -> Result<PolyR> {
        if let Some(reps) = self.reps()? {
            let exps = CosetTable::new(field).union_elements(&reps)?;
            return Ok(PolyR::from_support(field, &exps));
        }
        match &self.twist {
            Some(t) => Ok(PolyR::parse(field, t)?),
            None => bail!("one of --cosets or --twist is required"),
        }
    }
}

#[derive(Args)]
struct FieldCmd {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
struct CosetsCmd {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, value_enum, default_value = "tsv")]
    format: Format,
}

#[derive(Args)]
struct GrsCmd {
    #[command(flatten)]
    field: FieldArgs,
    #[command(flatten)]
    twist: TwistArgs,
    #[arg(long)]
    k: usize,
    /// Emit the dual code, built from the closed-form dual twist.
    #[arg(long)]
    dual: bool,
    /// Write the generator matrix here.
    #[arg(long)]
    matrix: Option<PathBuf>,
}

#[derive(Args)]
struct SfscCmd {
    #[command(flatten)]
    field: FieldArgs,
    #[command(flatten)]
    twist: TwistArgs,
    /// Dimension of GRS_k; the subcode is taken of its dual.
    #[arg(long)]
    k: Option<usize>,
    /// Read the parent code from a matrix file instead.
    #[arg(long, conflicts_with_all = ["cosets", "twist", "k"])]
    input: Option<PathBuf>,
    /// Length of the code in --input.
    #[arg(long, requires = "input")]
    n: Option<usize>,
    #[arg(long, value_enum, default_value = "delsarte")]
    method: Method,
    #[arg(long)]
    matrix: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Delsarte,
    Direct,
}

#[derive(Args)]
struct BoundCmd {
    #[command(flatten)]
    field: FieldArgs,
    #[command(flatten)]
    twist: TwistArgs,
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, default_value = "twist")]
    orientation: OrientationArg,
    /// Skip the exact kernel and subcode dimensions.
    #[arg(long)]
    no_exact: bool,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args)]
struct SearchCmd {
    #[arg(long, value_enum, default_value = "1")]
    alg: AlgArg,
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, default_value_t = 3)]
    max_parts: usize,
    #[arg(long, default_value_t = 1)]
    k_min: usize,
    #[arg(long)]
    k_max: Option<usize>,
    /// Best-known table (CSV p,n,k,d). Without it every verdict is unknown.
    #[arg(long)]
    bkt: Option<PathBuf>,
    /// Search only these unions: representative lists separated by ';'.
    #[arg(long)]
    unions: Option<String>,
    #[arg(long)]
    include_zero_coset: bool,
    /// Keep candidates that neither beat nor tie the table.
    #[arg(long)]
    all: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write each hit's generator matrix to DIR/hit-<i>.txt.
    #[arg(long)]
    emit_matrices: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
struct DeriveCmd {
    /// Hits file from `search`.
    #[arg(long, requires = "index")]
    hits: Option<PathBuf>,
    /// Zero-based position of the starting hit in --hits.
    #[arg(long)]
    index: Option<usize>,
    #[arg(long, value_enum, default_value = "1")]
    alg: AlgArg,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    modulus: Option<String>,
    #[arg(long)]
    cosets: Option<String>,
    #[arg(long)]
    k: Option<usize>,
    /// Steps such as "puncture:240;shorten:239,238".
    #[arg(long)]
    steps: String,
    #[arg(long)]
    bkt: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    emit_matrices: Option<PathBuf>,
}

#[derive(Args)]
struct MindistCmd {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1 << 24)]
    budget: u128,
}

#[derive(Subcommand)]
enum BktCmd {
    /// Validate a CSV and write it back normalized.
    Import {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Look up (n, k), optionally comparing a distance.
    Lookup {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        bkt: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: Option<usize>,
    },
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .with_context(|| format!("{t:?} is not a non-negative integer"))
        })
        .collect()
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn load_table(path: Option<&Path>, p: u32) -> Result<BktTable> {
    match path {
        None => Ok(BktTable::empty(p)),
        Some(path) => Ok(BktTable::ingest(path, p)?),
    }
}

fn read_code(field: &Arc<Field>, path: &Path, n: usize) -> Result<LinearCode> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(parse_matrix(field, n, &text)?)
}

#[derive(Serialize)]
struct FieldInfo {
    field: String,
    p: u32,
    m: u32,
    q: u32,
    n: usize,
    modulus: Vec<u32>,
}

fn cmd_field(c: FieldCmd) -> Result<String> {
    let f = c.field.build()?;
    let info = FieldInfo {
        field: f.to_string(),
        p: f.p(),
        m: f.m(),
        q: f.q(),
        n: f.n(),
        modulus: f.modulus().to_vec(),
    };
    match c.format {
        Format::Json => json(&info),
        Format::Tsv => Ok(format!(
            "field\t{}\np\t{}\nm\t{}\nq\t{}\nN\t{}\n",
            info.field, info.p, info.m, info.q, info.n
        )),
    }
}

fn cmd_cosets(c: CosetsCmd) -> Result<String> {
    let f = c.field.build()?;
    let table = CosetTable::new(&f);
    match c.format {
        Format::Json => json(&table.cosets()),
        Format::Tsv => {
            let mut out = String::from("rep\tsize\telements\n");
            for cs in table.cosets() {
                let els: Vec<String> = cs.elements.iter().map(usize::to_string).collect();
                out.push_str(&format!("{}\t{}\t{}\n", cs.rep, cs.size(), els.join(",")));
            }
            Ok(out)
        }
    }
}

fn emit_code(code: &LinearCode, matrix: Option<&Path>) -> Result<String> {
    if let Some(path) = matrix {
        fs::write(path, code.to_matrix_text())
            .with_context(|| format!("writing {}", path.display()))?;
    }
    json(&code.summary())
}

fn cmd_grs(c: GrsCmd) -> Result<String> {
    let f = c.field.build()?;
    let g = c.twist.poly(&f)?;
    let mut spec = GrsSpec::from_twist_poly(&g, c.k)?;
    if c.dual {
        spec = twistgrs::codes::grs_dual_closed_form(&spec);
    }
    emit_code(&grs(&spec), c.matrix.as_deref())
}

fn cmd_sfsc(c: SfscCmd) -> Result<String> {
    let f = c.field.build()?;
    let parent = match &c.input {
        Some(path) => {
            let n = c.n.context("--n is required with --input")?;
            read_code(&f, path, n)?
        }
        None => {
            let k = c.k.context("--k is required unless --input is given")?;
            let g = c.twist.poly(&f)?;
            grs(&GrsSpec::from_twist_poly(&g, k)?).dual()
        }
    };
    let sub = match c.method {
        Method::Delsarte => parent.subfield_subcode(),
        Method::Direct => parent.subfield_subcode_direct(),
    };
    emit_code(&sub, c.matrix.as_deref())
}

fn cmd_bound(c: BoundCmd) -> Result<String> {
    let f = c.field.build()?;
    let g = c.twist.poly(&f)?;
    if !g.is_cyclotomic() {
        bail!(twistgrs::Error::NotCyclotomic);
    }
    let mut report = bound::mainbound(&f, &g.zero_set(), c.k, c.orientation.into())?;
    if !c.no_exact {
        report = report.with_exact(&g);
    }
    match c.format {
        Format::Json => json(&report),
        Format::Tsv => Ok(report.to_table()),
    }
}

fn write_matrices(dir: &Path, hits: &[SearchHit]) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    for (i, h) in hits.iter().enumerate() {
        let code = search::rebuild(h)?;
        let path = dir.join(format!("hit-{i}.txt"));
        fs::write(&path, code.to_matrix_text())
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn cmd_search(c: SearchCmd) -> Result<String> {
    let f = c.field.build()?;
    let table = load_table(c.bkt.as_deref(), f.p())?;
    let unions = match &c.unions {
        None => None,
        Some(s) => Some(
            s.split(';')
                .filter(|u| !u.trim().is_empty())
                .map(parse_list)
                .collect::<Result<Vec<_>>>()?,
        ),
    };
    let config = SearchConfig {
        algorithm: c.alg.into(),
        max_parts: c.max_parts,
        k_min: c.k_min,
        k_max: c.k_max,
        include_zero_coset: c.include_zero_coset,
        unions,
        keep_all: c.all,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(c.jobs.max(1))
        .build()?;
    let hits = pool.install(|| search::search(&f, &config, &table))?;
    if let Some(dir) = &c.emit_matrices {
        write_matrices(dir, &hits)?;
    }
    let text = json(&hits)?;
    match &c.out {
        Some(p) => {
            write_out(Some(p), &text)?;
            Ok(format!("{} hits written to {}\n", hits.len(), p.display()))
        }
        None => Ok(text),
    }
}

fn cmd_derive(c: DeriveCmd) -> Result<String> {
    let start = match (&c.hits, c.index) {
        (Some(path), Some(i)) => {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let hits: Vec<SearchHit> = serde_json::from_str(&text)
                .with_context(|| format!("{} is not a hits file", path.display()))?;
            hits.get(i).cloned().with_context(|| {
                format!("{} has {} hits, no index {i}", path.display(), hits.len())
            })?
        }
        _ => {
            let field = FieldArgs {
                p: c.p.context("--p is required without --hits")?,
                m: c.m.unwrap_or(1),
                modulus: c.modulus.clone(),
            }
            .build()?;
            let reps = parse_list(
                c.cosets
                    .as_deref()
                    .context("--cosets is required without --hits")?,
            )?;
            let k = c.k.context("--k is required without --hits")?;
            let table = load_table(c.bkt.as_deref(), field.p())?;
            search::construct_hit(&field, c.alg.into(), &reps, k, &table)?
        }
    };
    let table = load_table(c.bkt.as_deref(), start.p)?;
    let steps = search::parse_steps(&c.steps)?;
    let derived = search::derive_chain(&start, &steps, &table)?;
    if let Some(dir) = &c.emit_matrices {
        write_matrices(dir, &derived)?;
    }
    let text = json(&derived)?;
    match &c.out {
        Some(p) => {
            write_out(Some(p), &text)?;
            Ok(format!(
                "{} codes written to {}\n",
                derived.len(),
                p.display()
            ))
        }
        None => Ok(text),
    }
}

#[derive(Serialize)]
struct Mindist {
    n: usize,
    k: usize,
    d: usize,
}

fn cmd_mindist(c: MindistCmd) -> Result<String> {
    let f = c.field.build()?;
    let code = read_code(&f, &c.input, c.n)?;
    let d = code.min_distance_exact(c.budget)?;
    json(&Mindist {
        n: code.len(),
        k: code.dimension(),
        d,
    })
}

#[derive(Serialize)]
struct Lookup {
    n: usize,
    k: usize,
    best_known: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verdict: Option<Verdict>,
}

fn cmd_bkt(c: BktCmd) -> Result<String> {
    match c {
        BktCmd::Import { p, input, out } => {
            let t = BktTable::ingest(&input, p)?;
            match out {
                Some(path) => {
                    write_out(Some(&path), &t.to_csv())?;
                    Ok(format!(
                        "{} entries written to {}\n",
                        t.len(),
                        path.display()
                    ))
                }
                None => Ok(t.to_csv()),
            }
        }
        BktCmd::Lookup { p, bkt, n, k, d } => {
            let t = BktTable::ingest(&bkt, p)?;
            json(&Lookup {
                n,
                k,
                best_known: t.lookup(n, k),
                verdict: d.map(|d| t.verdict(n, k, d)),
            })
        }
    }
}

fn run(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Field(c) => cmd_field(c),
        Command::Cosets(c) => cmd_cosets(c),
        Command::Grs(c) => cmd_grs(c),
        Command::Sfsc(c) => cmd_sfsc(c),
        Command::Bound(c) => cmd_bound(c),
        Command::Search(c) => cmd_search(c),
        Command::Derive(c) => cmd_derive(c),
        Command::Mindist(c) => cmd_mindist(c),
        Command::Bkt(c) => cmd_bkt(c),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            if std::io::stdout().write_all(text.as_bytes()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            let msg = format!("{e:#}").replace('\n', " ");
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
