//! Command-line front end.
//!
//! Polynomials on the command line list coefficients leading term first and
//! constant term last: `"1,-1,-1"` is `x^2 - x - 1`. Field elements are
//! coordinate vectors in the power basis, constant coordinate first.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value as Json};

use crate::analysis::{self, BinaryWord, Rate};
use crate::constructions::{self, IndexSet, PisotSetSpec};
use crate::error::{Error, Result};
use crate::genpoly::{self, Environment, GPExpr};
use crate::linrec::{self, LinRecSeq, ValueSet};
use crate::numberfield::{FieldElement, NumberField, RootSelector};
use crate::rat::{self, Q};

const SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "gpsets",
    version,
    about = "Exact generalised polynomial maps on number fields",
    after_help = "Polynomial coefficients are listed leading term first, constant term last:\n  --minpoly \"1,-1,-1\" is x^2 - x - 1, --minpoly \"1,0,-1,-1\" is x^3 - x - 1."
)]
pub struct Cli {
    /// Emit machine-readable JSON (schema 1).
    #[arg(long, global = true)]
    pub json: bool,
    /// Also print decimal approximations with this many bits.
    #[arg(long, global = true, value_name = "BITS")]
    pub approx: Option<u32>,
    /// Seed for randomized suites.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Precision floor in bits for printed enclosures (at least 16).
    #[arg(long, global = true)]
    pub precision: Option<u32>,
    /// Run configuration file (JSON).
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Signature, distinguished root and certified root boxes of a field.
    Field(FieldArgs),
    /// Evaluate a generalised polynomial expression exactly.
    Eval(EvalArgs),
    /// Decide membership in a hereditary set of Pisot powers.
    PisotSet(PisotSetArgs),
    /// Recover powers of a Salem number from sequence values.
    SalemRecover(SalemArgs),
    /// Linear recurrences: terms, trace representation, stepping, transfer.
    Linrec(LinrecArgs),
    /// Subword complexity of a binary word.
    Complexity(ComplexityArgs),
    /// Build a subset with large subword complexity inside a thin set.
    Nonhereditary(NonHereditaryArgs),
    /// Run the invariant suites.
    Selftest(SelftestArgs),
}

#[derive(Args, Debug, Clone)]
pub struct FieldSource {
    /// Minimal polynomial, leading coefficient first.
    #[arg(long, value_name = "COEFFS", allow_hyphen_values = true)]
    pub minpoly: Option<String>,
    /// Field specification file (JSON).
    #[arg(long, value_name = "FILE")]
    pub field: Option<PathBuf>,
    /// Canonical index of the distinguished root.
    #[arg(long)]
    pub root: Option<usize>,
}

#[derive(Args, Debug)]
pub struct FieldArgs {
    #[command(flatten)]
    pub source: FieldSource,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    /// Expression file.
    #[arg(long, value_name = "FILE", conflicts_with = "text")]
    pub expr: Option<PathBuf>,
    /// Expression text.
    #[arg(long, allow_hyphen_values = true)]
    pub text: Option<String>,
    /// Environment file (JSON) binding variables.
    #[arg(long, value_name = "FILE")]
    pub env: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct PisotSetArgs {
    #[command(flatten)]
    pub source: FieldSource,
    /// Coordinates of beta (defaults to the generator).
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    /// Finite index set, e.g. `0,2,4`.
    #[arg(long, conflicts_with = "indices_mod")]
    pub indices: Option<String>,
    /// Periodic index set `p,r1,r2,...`: indices congruent to some `r` mod `p`.
    #[arg(long)]
    pub indices_mod: Option<String>,
    #[arg(long, default_value = "3/2")]
    pub rho: String,
    /// Query file, one coordinate vector per line.
    #[arg(long, value_name = "FILE")]
    pub queries: PathBuf,
    /// Print the certified norm enclosure and threshold.
    #[arg(long)]
    pub explain: bool,
}

#[derive(Args, Debug, Clone)]
pub struct SeqSource {
    /// Characteristic polynomial, leading coefficient first.
    #[arg(long, allow_hyphen_values = true)]
    pub charpoly: Option<String>,
    /// Initial terms `n_0, ..., n_{m-1}`.
    #[arg(long, allow_hyphen_values = true)]
    pub init: Option<String>,
    /// Sequence file (JSON with `charpoly` and `init`).
    #[arg(long, value_name = "FILE")]
    pub seq: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SalemArgs {
    #[command(flatten)]
    pub source: SeqSource,
    /// Recover `beta^i` from the window starting at `i`.
    #[arg(long, conflicts_with = "member")]
    pub i: Option<u64>,
    /// Value-set membership of a rational.
    #[arg(long, allow_hyphen_values = true)]
    pub member: Option<String>,
    #[arg(long, default_value_t = 10_000)]
    pub search_bound: u64,
}

#[derive(Args, Debug)]
pub struct LinrecArgs {
    #[command(flatten)]
    pub source: SeqSource,
    #[command(subcommand)]
    pub action: LinrecAction,
}

#[derive(Subcommand, Debug)]
pub enum LinrecAction {
    /// Exact term `n_i`.
    Term { i: u64 },
    /// The element `x` with `n_i = Tr(beta^i x)`.
    TraceRep,
    /// Onset of nearest-integer stepping by `j`.
    I0 {
        #[arg(long, default_value_t = 1)]
        j: u32,
    },
    /// Transfer map onto the sequence in FILE.
    Transfer {
        #[arg(long, value_name = "FILE")]
        to: PathBuf,
    },
    /// `beta^i` from the window `n_i, ..., n_{i+m-1}`.
    Recover {
        #[arg(long)]
        i: u64,
    },
    /// Membership of a rational in the value set.
    Member {
        #[arg(allow_hyphen_values = true)]
        q: String,
        #[arg(long, default_value_t = 10_000)]
        search_bound: u64,
    },
    /// Zeros on `[0, bound]`.
    Zeros {
        #[arg(long)]
        bound: u64,
    },
}

#[derive(Args, Debug)]
pub struct ComplexityArgs {
    /// Sturmian slope as coordinates in the field given by --minpoly.
    #[arg(long, allow_hyphen_values = true)]
    pub slope: Option<String>,
    /// Sturmian intercept coordinates (default 0).
    #[arg(long, allow_hyphen_values = true)]
    pub intercept: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub minpoly: Option<String>,
    /// File holding a 0/1 word.
    #[arg(long, value_name = "FILE")]
    pub word: Option<PathBuf>,
    /// Indicator of the value set of a recurrence (charpoly as for linrec).
    #[arg(long, allow_hyphen_values = true)]
    pub linrec_charpoly: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub linrec_init: Option<String>,
    /// Window length.
    #[arg(long, default_value_t = 1000)]
    pub length: usize,
    #[arg(long, default_value_t = 1)]
    pub n_min: usize,
    #[arg(long, default_value_t = 20)]
    pub n_max: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ESource {
    Surrogate,
    File,
}

#[derive(Args, Debug)]
pub struct NonHereditaryArgs {
    /// `inv-sqrt` or `const:p/q`.
    #[arg(long, default_value = "inv-sqrt")]
    pub rate: String,
    #[arg(long, default_value_t = 4)]
    pub l_max: u32,
    #[arg(long, value_enum, default_value = "surrogate")]
    pub source: ESource,
    /// Constant `c` of the surrogate rate `min(1, c / log2(N + 2))`.
    #[arg(long, default_value_t = 10.0)]
    pub surrogate_c: f64,
    /// 0/1 word for `E` on `[0, len)` when `--source file`.
    #[arg(long, value_name = "FILE")]
    pub e_file: Option<PathBuf>,
    /// Write the window of `F` as a 0/1 file.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SelftestArgs {
    /// Random cases per suite.
    #[arg(long, default_value_t = 20)]
    pub cases: u32,
}

/// Output mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputMode {
    #[default]
    Human,
    Json,
}

/// Settings shared by all subcommands; loadable from a JSON file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub subcommand: Option<String>,
    #[serde(default)]
    pub field: Option<PathBuf>,
    #[serde(default = "default_precision")]
    pub precision: u32,
    #[serde(default)]
    pub output: OutputMode,
    #[serde(default)]
    pub seed: u64,
}

fn default_precision() -> u32 {
    64
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { subcommand: None, field: None, precision: default_precision(), output: OutputMode::Human, seed: 0 }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let cfg: RunConfig = serde_json::from_str(&fs::read_to_string(path)?)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.precision < 16 {
            return Err(Error::Parse(format!("precision floor is 16 bits, got {}", self.precision)));
        }
        Ok(())
    }
}

/// Field specification file.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    #[serde(default = "schema")]
    pub schema: u32,
    /// Coefficients, leading first.
    pub minpoly: Vec<Json>,
    #[serde(default)]
    pub distinguished: Option<usize>,
}

fn schema() -> u32 {
    SCHEMA
}

impl FieldSpec {
    pub fn build(&self) -> Result<NumberField> {
        let c: Vec<Q> = self.minpoly.iter().map(json_rational).collect::<Result<_>>()?;
        let sel = self.distinguished.map_or(RootSelector::Auto, RootSelector::Index);
        NumberField::from_leading_first(&c, sel)
    }

    pub fn of(f: &NumberField) -> Self {
        let mut c: Vec<Json> = f.minpoly().coeffs().iter().map(|q| Json::String(rat::fmt_rational(q))).collect();
        c.reverse();
        FieldSpec { schema: SCHEMA, minpoly: c, distinguished: Some(f.distinguished()) }
    }
}

/// Sequence specification file.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeqSpec {
    #[serde(default = "schema")]
    pub schema: u32,
    pub charpoly: Vec<Json>,
    pub init: Vec<Json>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VarSpec {
    field: String,
    coords: Vec<Json>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum Binding {
    Element(VarSpec),
    Rational(Json),
}

/// Environment file: named fields and variable bindings.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EnvSpec {
    #[serde(default = "schema")]
    schema: u32,
    #[serde(default)]
    fields: BTreeMap<String, FieldSpec>,
    #[serde(default)]
    vars: BTreeMap<String, Binding>,
}

fn json_rational(v: &Json) -> Result<Q> {
    match v {
        Json::String(s) => rat::parse_rational(s),
        Json::Number(n) => rat::parse_rational(&n.to_string()),
        _ => Err(Error::Parse(format!("expected a rational, got {v}"))),
    }
}

fn load_environment(path: &Path) -> Result<Environment> {
    let spec: EnvSpec = serde_json::from_str(&fs::read_to_string(path)?)?;
    let fields: BTreeMap<String, NumberField> =
        spec.fields.iter().map(|(k, f)| Ok((k.clone(), f.build()?))).collect::<Result<_>>()?;
    let mut env = Environment::new();
    for (name, b) in &spec.vars {
        match b {
            Binding::Rational(v) => {
                env.bind_rational(name, json_rational(v)?);
            }
            Binding::Element(v) => {
                let f = fields.get(&v.field).ok_or_else(|| Error::Parse(format!("unknown field `{}`", v.field)))?;
                let c = v.coords.iter().map(json_rational).collect::<Result<_>>()?;
                env.bind_element(name, f.element(c)?);
            }
        }
    }
    Ok(env)
}

struct Ctx<'a> {
    json: bool,
    approx: Option<u32>,
    precision: u32,
    seed: u64,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn emit(&mut self, human: &str, value: Json) -> Result<()> {
        if self.json {
            let mut v = value;
            if let Json::Object(m) = &mut v {
                m.insert("schema".into(), json!(SCHEMA));
            }
            writeln!(self.out, "{}", serde_json::to_string(&v)?)?;
        } else {
            writeln!(self.out, "{human}")?;
        }
        Ok(())
    }

    fn approx_suffix(&self, v: f64) -> String {
        match self.approx {
            Some(bits) => {
                let digits = ((bits as f64) * std::f64::consts::LOG10_2).ceil().clamp(1.0, 17.0) as usize;
                format!("  ~ {v:.digits$}")
            }
            None => String::new(),
        }
    }
}

fn coords_json(x: &FieldElement) -> Json {
    json!(x.to_strings())
}

fn coords_text(x: &FieldElement) -> String {
    format!("[{}]", x.to_strings().join(", "))
}

fn rational_list(s: &str) -> Result<Vec<Q>> {
    rat::parse_rational_list(s)
}

fn build_field(src: &FieldSource) -> Result<NumberField> {
    let f = match (&src.minpoly, &src.field) {
        (Some(m), None) => NumberField::from_leading_first(&rational_list(m)?, RootSelector::Auto)?,
        (None, Some(p)) => serde_json::from_str::<FieldSpec>(&fs::read_to_string(p)?)?.build()?,
        _ => return Err(Error::Parse("give exactly one of --minpoly or --field".into())),
    };
    match src.root {
        Some(k) => f.with_distinguished(k),
        None => Ok(f),
    }
}

fn seq_from_spec(spec: &SeqSpec) -> Result<LinRecSeq> {
    let c: Vec<Q> = spec.charpoly.iter().map(json_rational).collect::<Result<_>>()?;
    let i: Vec<Q> = spec.init.iter().map(json_rational).collect::<Result<_>>()?;
    LinRecSeq::from_leading_first(&c, i)
}

fn build_seq(src: &SeqSource) -> Result<LinRecSeq> {
    match (&src.charpoly, &src.init, &src.seq) {
        (Some(c), Some(i), None) => LinRecSeq::from_leading_first(&rational_list(c)?, rational_list(i)?),
        (None, None, Some(p)) => seq_from_spec(&serde_json::from_str(&fs::read_to_string(p)?)?),
        _ => Err(Error::Parse("give --charpoly with --init, or --seq".into())),
    }
}

/// Parses arguments and runs; returns the process exit code.
pub fn dispatch<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let mut cfg = match cli.config.as_deref().map(RunConfig::load).transpose() {
        Ok(c) => c.unwrap_or_default(),
        Err(e) => {
            let _ = writeln!(err, "error: invalid configuration: {e}");
            return 2;
        }
    };
    if let Some(p) = cli.precision {
        cfg.precision = p;
    }
    if cli.json {
        cfg.output = OutputMode::Json;
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Err(e) = cfg.validate() {
        let _ = writeln!(err, "error: {e}");
        return 2;
    }
    let json = cfg.output == OutputMode::Json;
    let mut ctx = Ctx { json, approx: cli.approx, precision: cfg.precision, seed: cfg.seed, out };
    match run(&cli.command, &mut ctx, cfg.field.as_deref()) {
        Ok(code) => code,
        Err(e) => {
            let kind = error_kind(&e);
            if json {
                let v = json!({"schema": SCHEMA, "error": {"kind": kind, "message": e.to_string()}});
                let _ = writeln!(ctx.out, "{v}");
            } else {
                let _ = writeln!(err, "error[{kind}]: {e}");
            }
            1
        }
    }
}

/// Variant name of an error.
pub fn error_kind(e: &Error) -> String {
    let d = format!("{e:?}");
    d.split(['(', ' ', '{']).next().unwrap_or("Error").to_string()
}

fn run(cmd: &Command, ctx: &mut Ctx<'_>, cfg_field: Option<&Path>) -> Result<i32> {
    match cmd {
        Command::Field(a) => {
            let mut src = a.source.clone();
            if src.minpoly.is_none() && src.field.is_none() {
                src.field = cfg_field.map(Path::to_path_buf);
            }
            cmd_field(&build_field(&src)?, ctx)
        }
        Command::Eval(a) => cmd_eval(a, ctx),
        Command::PisotSet(a) => cmd_pisot_set(a, ctx),
        Command::SalemRecover(a) => cmd_salem(a, ctx),
        Command::Linrec(a) => cmd_linrec(a, ctx),
        Command::Complexity(a) => cmd_complexity(a, ctx),
        Command::Nonhereditary(a) => cmd_nonhereditary(a, ctx),
        Command::Selftest(a) => cmd_selftest(a, ctx),
    }
}

fn cmd_field(f: &NumberField, ctx: &mut Ctx<'_>) -> Result<i32> {
    let (r1, r2) = f.signature();
    let boxes = f.root_boxes(ctx.precision)?;
    let mut lines = vec![
        format!("minpoly: {}", f.minpoly()),
        format!("degree: {}", f.degree()),
        format!("signature: ({r1}, {r2})"),
        format!("unit rank: {}", f.unit_rank()),
        format!("distinguished root: {}", f.distinguished()),
    ];
    let mut roots = Vec::new();
    for (k, b) in boxes.iter().enumerate() {
        let z = (b.re.to_f64(), b.im.to_f64());
        let approx = ctx.approx_suffix(z.0)
            + &if f.is_real(k) || ctx.approx.is_none() { String::new() } else { format!(" {:+}i", z.1) };
        lines.push(format!("root {k}: {b}{approx}"));
        roots.push(json!({
            "index": k,
            "real": f.is_real(k),
            "re": [rat::fmt_rational(&b.re.lo), rat::fmt_rational(&b.re.hi)],
            "im": [rat::fmt_rational(&b.im.lo), rat::fmt_rational(&b.im.hi)],
        }));
    }
    let spec = FieldSpec::of(f);
    ctx.emit(
        &lines.join("\n"),
        json!({
            "minpoly": spec.minpoly,
            "degree": f.degree(),
            "signature": [r1, r2],
            "unit_rank": f.unit_rank(),
            "distinguished": f.distinguished(),
            "precision": ctx.precision,
            "roots": roots,
        }),
    )?;
    Ok(0)
}

fn cmd_eval(a: &EvalArgs, ctx: &mut Ctx<'_>) -> Result<i32> {
    let text = match (&a.expr, &a.text) {
        (Some(p), None) => fs::read_to_string(p)?,
        (None, Some(t)) => t.clone(),
        _ => return Err(Error::Parse("give --expr FILE or --text EXPR".into())),
    };
    let env = match &a.env {
        Some(p) => load_environment(p)?,
        None => Environment::new(),
    };
    let e = genpoly::parse(text.trim())?;
    let v = genpoly::eval(&e, &env)?;
    let human = match v.as_rational() {
        Some(q) => rat::fmt_rational(&q),
        None => v.to_string(),
    };
    let (re, im) = v.parts()?;
    let part = |r: &genpoly::Real| -> Json {
        match r.as_rational() {
            Some(q) => json!({"exact": rat::fmt_rational(&q)}),
            None => json!({"approx": r.to_f64()}),
        }
    };
    let approx = ctx.approx_suffix(re.to_f64());
    ctx.emit(
        &format!("{human}{}", if v.as_rational().is_some() { approx } else { String::new() }),
        json!({"expr": e.to_string(), "value": human, "re": part(&re), "im": part(&im)}),
    )?;
    Ok(0)
}

fn cmd_pisot_set(a: &PisotSetArgs, ctx: &mut Ctx<'_>) -> Result<i32> {
    let f = build_field(&a.source)?;
    let beta = match &a.beta {
        Some(c) => f.element(rational_list(c)?)?,
        None => f.gen(),
    };
    let indices = match (&a.indices, &a.indices_mod) {
        (Some(s), None) => IndexSet::finite(parse_u64_list(s)?),
        (None, Some(s)) => {
            let v = parse_u64_list(s)?;
            if v.len() < 2 || v[0] == 0 {
                return Err(Error::Parse("--indices-mod needs a positive modulus and residues".into()));
            }
            IndexSet::periodic(v[0], v[1..].to_vec())
        }
        _ => return Err(Error::Parse("give --indices or --indices-mod".into())),
    };
    let spec = PisotSetSpec::new(&beta, rat::parse_rational(&a.rho)?, indices)?;
    let mut lines = Vec::new();
    let mut rows = Vec::new();
    for line in fs::read_to_string(&a.queries)?.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let x = f.element(rational_list(line)?)?;
        let rep = constructions::hereditary_explain(&spec, &x)?;
        let member = rep.as_ref().is_some_and(|r| r.member);
        let mut row = json!({"query": coords_json(&x), "member": member as u8});
        let mut text = format!("{}", member as u8);
        if a.explain {
            match &rep {
                Some(r) => {
                    text.push_str(&format!(
                        "  exponent {} = {} + {}*{}: norm {} vs threshold {}",
                        r.exponent, r.residue, spec.m, r.j, r.norm, r.threshold
                    ));
                    row["explain"] = json!({
                        "exponent": r.exponent,
                        "residue": r.residue,
                        "j": r.j,
                        "depth": r.depth,
                        "norm": [rat::fmt_rational(&r.norm.lo), rat::fmt_rational(&r.norm.hi)],
                        "threshold": [rat::fmt_rational(&r.threshold.lo), rat::fmt_rational(&r.threshold.hi)],
                    });
                }
                None => text.push_str("  not a power of beta"),
            }
        }
        lines.push(text);
        rows.push(row);
    }
    ctx.emit(&lines.join("\n"), json!({"m": spec.m, "results": rows}))?;
    Ok(0)
}

fn parse_u64_list(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad index `{t}`"))))
        .collect()
}

fn cmd_salem(a: &SalemArgs, ctx: &mut Ctx<'_>) -> Result<i32> {
    let seq = if a.source.charpoly.is_none() && a.source.seq.is_none() {
        LinRecSeq::salem_power_sums()
    } else {
        build_seq(&a.source)?
    };
    if !seq.is_salem()? {
        return Err(Error::NotSalem);
    }
    match (a.i, &a.member) {
        (Some(i), None) => recover(&seq, i, ctx),
        (None, Some(q)) => member(&seq, &rat::parse_rational(q)?, a.search_bound, ctx),
        _ => Err(Error::Parse("give --i or --member".into())),
    }
}

fn recover(seq: &LinRecSeq, i: u64, ctx: &mut Ctx<'_>) -> Result<i32> {
    let window: Vec<Q> = (0..seq.degree() as u64).map(|j| seq.term(i + j)).collect();
    let y = linrec::salem_recover_exact(seq, &window)?;
    let power = y == seq.beta()?.pow(i as i64)?;
    let approx = ctx.approx_suffix(y.to_f64());
    ctx.emit(
        &format!("{}{approx}\nequals beta^{i}: {power}", coords_text(&y)),
        json!({"i": i, "window": window.iter().map(rat::fmt_rational).collect::<Vec<_>>(), "coords": coords_json(&y), "is_power": power}),
    )?;
    Ok(0)
}

fn member(seq: &LinRecSeq, q: &Q, bound: u64, ctx: &mut Ctx<'_>) -> Result<i32> {
    let b = linrec::value_set_membership(seq, q, bound)?;
    ctx.emit(&b.to_string(), json!({"q": rat::fmt_rational(q), "member": b}))?;
    Ok(0)
}

fn cmd_linrec(a: &LinrecArgs, ctx: &mut Ctx<'_>) -> Result<i32> {
    let seq = build_seq(&a.source)?;
    match &a.action {
        LinrecAction::Term { i } => {
            let t = seq.term(*i);
            let s = rat::fmt_rational(&t);
            let approx = ctx.approx_suffix(rat::to_f64(&t));
            ctx.emit(&format!("{s}{approx}"), json!({"i": i, "term": s}))?;
        }
        LinrecAction::TraceRep => {
            let x = seq.trace_representation()?;
            ctx.emit(&coords_text(&x), json!({"trace_rep": coords_json(&x)}))?;
        }
        LinrecAction::I0 { j } => {
            let r = linrec::verified_i0(&seq, *j)?;
            ctx.emit(
                &format!("i0 = {} (certified), {} (observed)", r.sound, r.observed),
                json!({"j": j, "i0": r.sound, "observed": r.observed}),
            )?;
        }
        LinrecAction::Transfer { to } => {
            let dst = seq_from_spec(&serde_json::from_str(&fs::read_to_string(to)?)?)?;
            let g = linrec::transfer_map(&seq, &dst)?;
            let w: Vec<Json> = g.weights.iter().map(coords_json).collect();
            ctx.emit(
                &format!("g(n) = {}\nonset {} (observed {})", g.describe(), g.onset, g.observed_onset),
                json!({"weights": w, "scale": g.scale.to_string(), "onset": g.onset, "observed_onset": g.observed_onset, "map": g.describe()}),
            )?;
        }
        LinrecAction::Recover { i } => {
            recover(&seq, *i, ctx)?;
        }
        LinrecAction::Member { q, search_bound } => {
            member(&seq, &rat::parse_rational(q)?, *search_bound, ctx)?;
        }
        LinrecAction::Zeros { bound } => {
            let r = linrec::sml_zeros(&seq, *bound)?;
            let prog: Vec<String> = r.progressions.iter().map(|(d, a)| format!("{a} mod {d}")).collect();
            ctx.emit(
                &format!(
                    "zeros on [0, {}]: {:?}\nprogressions (heuristic): {}\nsporadic: {:?}",
                    r.bound,
                    if r.zeros.len() > 50 { &r.zeros[..50] } else { &r.zeros[..] },
                    if prog.is_empty() { "none".to_string() } else { prog.join(", ") },
                    r.sporadic
                ),
                json!({"bound": r.bound, "zeros": r.zeros, "progressions": r.progressions, "sporadic": r.sporadic, "heuristic": true}),
            )?;
        }
    }
    Ok(0)
}

fn cmd_complexity(a: &ComplexityArgs, ctx: &mut Ctx<'_>) -> Result<i32> {
    let word = if let Some(p) = &a.word {
        BinaryWord::parse(0, &fs::read_to_string(p)?)?
    } else if let (Some(c), Some(i)) = (&a.linrec_charpoly, &a.linrec_init) {
        let seq = LinRecSeq::from_leading_first(&rational_list(c)?, rational_list(i)?)?;
        let vs = ValueSet::new(&seq, u64::MAX)?;
        let bits = (0..a.length as i64).map(|n| vs.contains(&rat::q(n)).map(|b| b as u8)).collect::<Result<_>>()?;
        BinaryWord::new(0, bits)
    } else if let (Some(m), Some(s)) = (&a.minpoly, &a.slope) {
        let f = NumberField::from_leading_first(&rational_list(m)?, RootSelector::Auto)?;
        let slope = f.element(rational_list(s)?)?;
        let b = match &a.intercept {
            Some(c) => f.element(rational_list(c)?)?,
            None => f.zero(),
        };
        analysis::sturmian(&slope, &b, 0..a.length as i64)?
    } else {
        return Err(Error::Parse("give --word, --linrec-charpoly with --linrec-init, or --minpoly with --slope".into()));
    };
    let mut lines = vec![format!("window length {}, counts are lower bounds for the full sequence", word.len())];
    let mut rows = Vec::new();
    let top = a.n_max.min(word.len());
    for n in a.n_min..=top {
        let p = analysis::subword_complexity(&word, n)?;
        lines.push(format!("p({n}) = {p}"));
        rows.push(json!({"n": n, "p": p}));
    }
    let ns: Vec<usize> = (a.n_min.max(1)..=top).collect();
    let slope = analysis::growth_exponent(&word, &ns)?;
    lines.push(format!("log-log growth slope {slope:.3} (polynomial growth has bounded slope)"));
    ctx.emit(&lines.join("\n"), json!({"length": word.len(), "complexity": rows, "growth_slope": slope}))?;
    Ok(0)
}

fn cmd_nonhereditary(a: &NonHereditaryArgs, ctx: &mut Ctx<'_>) -> Result<i32> {
    let rate = Rate::parse(&a.rate)?;
    let plan = match a.source {
        ESource::Surrogate => {
            let e = analysis::surrogate_slow_decay_set(analysis::log_rate(a.surrogate_c));
            let plan = analysis::non_hereditary_construct(&e.oracle(), &rate, a.l_max)?;
            plan
        }
        ESource::File => {
            let p = a.e_file.as_ref().ok_or_else(|| Error::Parse("--source file needs --e-file".into()))?;
            let w = BinaryWord::parse(0, &fs::read_to_string(p)?)?;
            analysis::non_hereditary_construct(&|n| w.get(n) == Some(1), &rate, a.l_max)?
        }
    };
    if let Some(p) = &a.out {
        fs::write(p, format!("{}\n", plan.window))?;
    }
    let mut lines = Vec::new();
    let mut levels = Vec::new();
    for r in &plan.levels {
        lines.push(format!(
            "L={} k={} M={} N={} M+={} A={:?} H={} p(L)={} >= {}",
            r.level,
            r.k,
            r.m,
            r.n,
            r.m_plus,
            r.block,
            r.h_count(),
            r.complexity,
            r.h_count()
        ));
        levels.push(json!({
            "level": r.level,
            "k": r.k,
            "hc": rat::fmt_rational(&r.hc),
            "m": r.m,
            "n": r.n,
            "m_plus": r.m_plus,
            "block": r.block,
            "positions": r.positions,
            "removed": r.removed,
            "complexity": r.complexity,
            "certified_bound": r.h_count(),
        }));
    }
    ctx.emit(&lines.join("\n"), json!({"rate": a.rate, "levels": levels, "window_length": plan.window.len()}))?;
    Ok(0)
}

/// Outcome of one invariant suite.
#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub name: &'static str,
    pub outcome: std::result::Result<(), String>,
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Runs the randomized invariant suites.
pub fn selftest(seed: u64, cases: u32) -> Vec<SuiteResult> {
    type Suite = fn(&mut StdRng, u32) -> std::result::Result<(), String>;
    let suites: [(&'static str, Suite); 9] = [
        ("field ring axioms", suite_ring),
        ("expression print/parse", suite_parse),
        ("floor identities", suite_floor),
        ("zero indicator", suite_zero_indicator),
        ("trace representation", suite_trace),
        ("nearest-integer stepping", suite_stepping),
        ("salem recovery", suite_salem),
        ("sturmian complexity", suite_sturmian),
        ("non-hereditary construction", suite_nonhereditary),
    ];
    suites
        .iter()
        .map(|(name, f)| {
            let mut rng = StdRng::seed_from_u64(seed);
            SuiteResult { name, outcome: f(&mut rng, cases) }
        })
        .collect()
}

type SuiteOut = std::result::Result<(), String>;

fn es(e: Error) -> String {
    e.to_string()
}

fn random_element(f: &NumberField, rng: &mut StdRng) -> FieldElement {
    let c = (0..f.degree()).map(|_| Q::new(rng.gen_range(-20..=20).into(), rng.gen_range(1..=6).into())).collect();
    f.element(c).expect("degree matches")
}

fn test_fields() -> Vec<NumberField> {
    use crate::numberfield::fields;
    vec![fields::golden(), fields::sqrt2(), fields::plastic(), fields::salem_quartic(), fields::gaussian()]
}

fn suite_ring(rng: &mut StdRng, cases: u32) -> SuiteOut {
    for f in test_fields() {
        for _ in 0..cases {
            let (a, b, c) = (random_element(&f, rng), random_element(&f, rng), random_element(&f, rng));
            check(&(&a + &b) * &c == &(&a * &c) + &(&b * &c), || format!("distributivity in {f:?}"))?;
            check(&(&a * &b) * &c == &a * &(&b * &c), || format!("associativity in {f:?}"))?;
            if !a.is_zero() {
                check(&a * &a.inverse().map_err(es)? == f.one(), || format!("inverse in {f:?}"))?;
                check((&a * &b).norm() == a.norm() * b.norm(), || format!("norm multiplicativity in {f:?}"))?;
            }
            check((&a + &b).trace() == a.trace() + b.trace(), || format!("trace additivity in {f:?}"))?;
        }
    }
    Ok(())
}

fn random_expr(rng: &mut StdRng, depth: u32) -> GPExpr {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..3) {
            0 => GPExpr::rat(Q::new(rng.gen_range(-9..=9).into(), rng.gen_range(1..=4).into())),
            1 => GPExpr::var("x"),
            _ => GPExpr::var("y"),
        };
    }
    let a = random_expr(rng, depth - 1);
    match rng.gen_range(0..7) {
        0 => GPExpr::add(a, random_expr(rng, depth - 1)),
        1 => GPExpr::sub(a, random_expr(rng, depth - 1)),
        2 => GPExpr::mul(a, random_expr(rng, depth - 1)),
        3 => GPExpr::neg(a),
        4 => GPExpr::floor(a),
        5 => GPExpr::frac(a),
        _ => GPExpr::Nint(Box::new(a)),
    }
}

fn suite_parse(rng: &mut StdRng, cases: u32) -> SuiteOut {
    for _ in 0..cases * 5 {
        let e = random_expr(rng, 4);
        let text = e.to_string();
        let back = genpoly::parse(&text).map_err(es)?;
        check(back == e, || format!("round trip failed for `{text}`"))?;
    }
    Ok(())
}

fn suite_floor(rng: &mut StdRng, cases: u32) -> SuiteOut {
    let f = crate::numberfield::fields::golden();
    let d = f.distinguished();
    for _ in 0..cases {
        let x = random_element(&f, rng);
        let n = rng.gen_range(-50i64..50);
        let fl = x.certified_floor(d).map_err(es)?;
        let shifted = x.add_rational(&rat::q(n)).certified_floor(d).map_err(es)?;
        check(shifted == &fl + n, || "floor(x + n) = floor(x) + n".into())?;
        let fr = x.certified_frac(d).map_err(es)?;
        check(fr.cmp_rational(d, &Q::from_integer(0.into())).map_err(es)?.is_ge(), || "frac >= 0".into())?;
        check(fr.cmp_rational(d, &rat::q(1)).map_err(es)?.is_lt(), || "frac < 1".into())?;
        let dist = x.certified_dist(d).map_err(es)?;
        check(dist.cmp_rational(d, &rat::qf(1, 2)).map_err(es)?.is_le(), || "dist <= 1/2".into())?;
    }
    Ok(())
}

fn suite_zero_indicator(rng: &mut StdRng, cases: u32) -> SuiteOut {
    let f = crate::numberfield::fields::sqrt2();
    let ind = genpoly::zero_indicator(GPExpr::emb("x", f.distinguished()));
    for _ in 0..cases {
        let x = if rng.gen_bool(0.5) { f.zero() } else { random_element(&f, rng) };
        let mut env = Environment::new();
        env.bind_element("x", x.clone());
        let v = genpoly::eval(&ind, &env).map_err(es)?.as_rational();
        let want = if x.is_zero() { 1 } else { 0 };
        check(v == Some(rat::q(want)), || format!("indicator at {x}"))?;
    }
    Ok(())
}

fn suite_trace(rng: &mut StdRng, cases: u32) -> SuiteOut {
    for f in [crate::numberfield::fields::golden(), crate::numberfield::fields::plastic()] {
        for _ in 0..cases {
            let init: Vec<Q> = (0..f.degree()).map(|_| rat::q(rng.gen_range(-30..=30))).collect();
            let seq = LinRecSeq::new(f.minpoly(), init).map_err(es)?;
            let x = seq.trace_representation().map_err(es)?;
            let b = f.gen();
            let mut p = x.clone();
            for i in 0..40 {
                check(p.trace() == seq.term(i), || format!("trace mismatch at {i}"))?;
                p = &p * &b;
            }
        }
    }
    Ok(())
}

fn suite_stepping(_rng: &mut StdRng, _cases: u32) -> SuiteOut {
    for s in [LinRecSeq::fibonacci(), LinRecSeq::lucas(), LinRecSeq::perrin(), LinRecSeq::pell()] {
        let r = linrec::verified_i0(&s, 1).map_err(es)?;
        let b = s.beta().map_err(es)?;
        for i in r.sound..r.sound + 50 {
            let step = rat::qi(linrec::pisot_step(&b, 1, &s.term(i)).map_err(es)?);
            check(step == s.term(i + 1), || format!("{s:?} at {i}"))?;
        }
    }
    Ok(())
}

fn suite_salem(_rng: &mut StdRng, _cases: u32) -> SuiteOut {
    let s = LinRecSeq::salem_power_sums();
    let fam = linrec::salem_recovery_family(&s, 12).map_err(es)?;
    check(fam.observed.iter().zip(&fam.bounds).all(|(o, c)| o <= c), || "correction bounds".into())
}

fn suite_sturmian(_rng: &mut StdRng, _cases: u32) -> SuiteOut {
    let f = crate::numberfield::fields::golden();
    let a = f.gen().add_rational(&rat::q(-1));
    let w = analysis::sturmian(&a, &f.zero(), 0..400).map_err(es)?;
    for n in 1..=20 {
        check(analysis::subword_complexity(&w, n).map_err(es)? == n + 1, || format!("p({n})"))?;
    }
    Ok(())
}

fn suite_nonhereditary(_rng: &mut StdRng, _cases: u32) -> SuiteOut {
    let e = analysis::surrogate_slow_decay_set(analysis::log_rate(10.0));
    let plan = analysis::non_hereditary_construct(&e.oracle(), &Rate::InvSqrt, 3).map_err(es)?;
    for (i, b) in plan.window.bits.iter().enumerate() {
        check(*b == 0 || e.contains(i as i64), || format!("F not inside E at {i}"))?;
    }
    Ok(())
}

fn cmd_selftest(a: &SelftestArgs, ctx: &mut Ctx<'_>) -> Result<i32> {
    let results = selftest(ctx.seed, a.cases);
    let ok = results.iter().all(|r| r.outcome.is_ok());
    let lines: Vec<String> = results
        .iter()
        .map(|r| match &r.outcome {
            Ok(()) => format!("PASS {}", r.name),
            Err(e) => format!("FAIL {}: {e}", r.name),
        })
        .collect();
    let rows: Vec<Json> = results
        .iter()
        .map(|r| json!({"suite": r.name, "pass": r.outcome.is_ok(), "detail": r.outcome.as_ref().err()}))
        .collect();
    ctx.emit(&lines.join("\n"), json!({"seed": ctx.seed, "suites": rows, "pass": ok}))?;
    Ok(if ok { 0 } else { 1 })
}
