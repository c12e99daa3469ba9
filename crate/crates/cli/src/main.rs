use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use qcover::covering::CoveringAlgebra;
use qcover::datum::{Datum, Nu};
use qcover::free_half::FreeHalf;
use qcover::repcat::{build_simple, decompose, tensor_module, weight_from_pairings, weyl_kac_character};
use qcover::rmatrix::{CasimirForm, Generator, RMatrix};
use qcover::scalar_ring::Sign;
use qcover::serre_plus::{vanishing_grid, verify_vanishing, GridCell};
use qcover::suites::{self, parse_suites, RunConfig};
use qcover::Error;

const DEFAULT_CAP: usize = 6;
const EXIT_FALSIFIED: u8 = 1;
const EXIT_BAD_DATUM: u8 = 2;
const EXIT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "qcover", version, about = "Exact checks in quantum covering groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Datum file (JSON), or one of the built-in names b01, b02, affine-odd2.
    #[arg(long)]
    datum: String,
    /// Height cap; defaults to $QCOVER_CAP, then 6.
    #[arg(long)]
    cap: Option<usize>,
    /// Write JSON lines here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a datum and print its summary.
    CheckDatum {
        #[command(flatten)]
        common: Common,
    },
    /// Gram ranks of f_nu against the basis and the Serre presentation.
    Gram {
        #[command(flatten)]
        common: Common,
        /// Multiplicities of nu, comma separated; omit to sweep all weights up to --height.
        #[arg(long, allow_hyphen_values = true)]
        nu: Option<String>,
        #[arg(long)]
        height: Option<usize>,
    },
    /// Reduce every quantum Serre element in f.
    Serre {
        #[command(flatten)]
        common: Common,
    },
    /// Compute the truncated quasi-R-matrix.
    Theta {
        #[command(flatten)]
        common: Common,
        /// Also check the intertwining property and Theta Theta-bar = 1.
        #[arg(long)]
        verify: bool,
    },
    /// Check the Casimir action on V(lambda).
    Casimir {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true, default_value = "+")]
        sign: String,
        /// Anchor for G in pairing coordinates; defaults to lambda.
        #[arg(long, allow_hyphen_values = true)]
        anchor: Option<String>,
        /// Drop the pi^e(nu) factor from the Casimir sum.
        #[arg(long)]
        without_e: bool,
    },
    /// Weight table of V(lambda), optionally tensored with V(lambda2).
    Module {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true, default_value = "+")]
        sign: String,
        #[arg(long, allow_hyphen_values = true)]
        tensor: Option<String>,
    },
    /// Compare the Weyl-Kac character with V(lambda) in both components.
    Char {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Vanishing grid of the higher Serre elements.
    HigherSerre {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        i: Option<usize>,
        #[arg(long)]
        j: Option<usize>,
        #[arg(long, default_value_t = 2)]
        nmax: i64,
        #[arg(long, default_value_t = 6)]
        mmax: i64,
    },
    /// Run verification suites and write one JSON record per checked identity.
    Run {
        #[command(flatten)]
        common: Common,
        /// Comma-separated suite names, or "all".
        #[arg(long, default_value = "all")]
        suites: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Outcome of a command that did not hit an error.
enum Outcome {
    Pass,
    Falsified,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Falsified) => ExitCode::from(EXIT_FALSIFIED),
        Err(e) => {
            eprintln!("error: {e:#}");
            let bad_datum = e.downcast_ref::<DatumError>().is_some();
            ExitCode::from(if bad_datum { EXIT_BAD_DATUM } else { EXIT_ERROR })
        }
    }
}

#[derive(Debug)]
struct DatumError(Error);

impl std::fmt::Display for DatumError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "invalid datum: {}", self.0)
    }
}

impl std::error::Error for DatumError {}

fn load_datum(spec: &str) -> anyhow::Result<Datum> {
    let path = Path::new(spec);
    if !path.exists() {
        match spec {
            "b01" => return Ok(Datum::b01()),
            "b02" => return Ok(Datum::b02()),
            "affine-odd2" => return Ok(Datum::affine_odd2()),
            _ => {}
        }
    }
    Datum::load(path).map_err(|e| match e {
        Error::Io(_) => anyhow::Error::new(e),
        other => anyhow::Error::new(DatumError(other)),
    })
}

fn resolve_cap(cap: Option<usize>) -> anyhow::Result<usize> {
    let cap = match cap {
        Some(c) => c,
        None => match std::env::var("QCOVER_CAP") {
            Ok(v) => v.trim().parse().with_context(|| format!("QCOVER_CAP={v} is not a nonnegative integer"))?,
            Err(_) => DEFAULT_CAP,
        },
    };
    if cap < 1 {
        bail!("cap must be at least 1");
    }
    Ok(cap)
}

struct Session {
    datum: Arc<Datum>,
    cap: usize,
    out: Box<dyn Write>,
}

impl Session {
    fn open(c: &Common) -> anyhow::Result<Self> {
        let datum = Arc::new(load_datum(&c.datum)?);
        let cap = resolve_cap(c.cap)?;
        let out: Box<dyn Write> = match &c.output {
            Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
            None => Box::new(BufWriter::new(io::stdout())),
        };
        Ok(Session { datum, cap, out })
    }

    fn free(&self, cap: usize) -> Arc<FreeHalf> {
        Arc::new(FreeHalf::new(self.datum.clone(), cap))
    }

    fn algebra(&self, cap: usize) -> CoveringAlgebra {
        CoveringAlgebra::new(self.free(cap))
    }

    fn emit(&mut self, v: &Value) -> anyhow::Result<()> {
        writeln!(self.out, "{v}")?;
        Ok(())
    }

    fn finish(mut self, ok: bool) -> anyhow::Result<Outcome> {
        self.out.flush()?;
        Ok(if ok { Outcome::Pass } else { Outcome::Falsified })
    }
}

fn parse_ints(s: &str) -> anyhow::Result<Vec<i64>> {
    s.split(',').map(|t| t.trim().parse::<i64>().with_context(|| format!("'{t}' is not an integer"))).collect()
}

fn parse_sign(s: &str) -> anyhow::Result<Sign> {
    match s {
        "+" | "plus" | "+1" | "1" => Ok(Sign::Plus),
        "-" | "minus" | "-1" => Ok(Sign::Minus),
        _ => bail!("sign must be + or -, got '{s}'"),
    }
}

fn weight_arg(d: &Datum, s: &str) -> anyhow::Result<Vec<i64>> {
    let p = parse_ints(s)?;
    if p.len() != d.rank() {
        bail!("expected {} pairings, got {}", d.rank(), p.len());
    }
    Ok(weight_from_pairings(d, &p)?)
}

/// Raises the cap until V(lambda) fits.
fn simple_module(s: &Session, lambda: &[i64], sign: Sign) -> anyhow::Result<(qcover::repcat::WeightModule, usize)> {
    let mut cap = s.cap;
    loop {
        match build_simple(&s.algebra(cap), lambda, sign) {
            Ok(m) => return Ok((m, cap)),
            Err(Error::CapExceeded { .. }) if cap < 16 => cap += 1,
            Err(e) => return Err(e.into()),
        }
    }
}

fn dispatch(cmd: Command) -> anyhow::Result<Outcome> {
    match cmd {
        Command::CheckDatum { common } => check_datum(&common),
        Command::Gram { common, nu, height } => gram(Session::open(&common)?, nu, height),
        Command::Serre { common } => serre(Session::open(&common)?),
        Command::Theta { common, verify } => theta(Session::open(&common)?, verify),
        Command::Casimir { common, lambda, sign, anchor, without_e } => {
            casimir(Session::open(&common)?, &lambda, &sign, anchor.as_deref(), without_e)
        }
        Command::Module { common, lambda, sign, tensor } => module(Session::open(&common)?, &lambda, &sign, tensor.as_deref()),
        Command::Char { common, lambda } => character(Session::open(&common)?, &lambda),
        Command::HigherSerre { common, i, j, nmax, mmax } => higher_serre(Session::open(&common)?, i, j, nmax, mmax),
        Command::Run { common, suites, seed } => run(Session::open(&common)?, &suites, seed),
    }
}

fn check_datum(c: &Common) -> anyhow::Result<Outcome> {
    match load_datum(&c.datum) {
        Ok(d) => {
            let mut s = Session::open(c)?;
            let v = json!({"valid": true, "summary": d.summary(), "report": d.report, "pairing": d.root.pairing});
            s.emit(&v)?;
            s.finish(true)
        }
        Err(e) => {
            if let Some(DatumError(Error::Datum { condition, location, message })) = e.downcast_ref::<DatumError>() {
                let v = json!({"valid": false, "condition": condition, "location": location, "message": message});
                println!("{v}");
            }
            Err(e)
        }
    }
}

fn gram(mut s: Session, nu: Option<String>, height: Option<usize>) -> anyhow::Result<Outcome> {
    let n = s.datum.rank();
    let weights: Vec<Nu> = match (nu, height) {
        (Some(v), _) => {
            let m = parse_ints(&v)?;
            if m.len() != n || m.iter().any(|&k| k < 0) {
                bail!("--nu needs {n} nonnegative multiplicities");
            }
            vec![Nu(m.into_iter().map(|k| k as u32).collect())]
        }
        (None, h) => {
            let h = h.unwrap_or(s.cap);
            (0..=h).flat_map(|k| Nu::all_of_height(n, k)).collect()
        }
    };
    let top = weights.iter().map(Nu::height).max().unwrap_or(0);
    let free = s.free(top.max(1));
    let mut ok = true;
    for nu in &weights {
        let g = free.gram_all_words(nu);
        let dim = free.dim(nu)?;
        let serre = free.serre_presented_dim(nu)?;
        let agree = g.rank == [dim, dim] && serre.dim == [dim, dim];
        ok &= agree;
        s.emit(&json!({
            "nu": nu.0, "words": g.words, "gram_rank": g.rank, "basis_dim": dim,
            "serre_dim": serre.dim, "pass": agree,
        }))?;
    }
    s.finish(ok)
}

fn serre(mut s: Session) -> anyhow::Result<Outcome> {
    let d = s.datum.clone();
    let need = (0..d.rank())
        .flat_map(|i| (0..d.rank()).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| (2 - d.a(i, j)) as usize)
        .max()
        .unwrap_or(1);
    let free = s.free(s.cap.max(need));
    let mut ok = true;
    for i in 0..d.rank() {
        for j in 0..d.rank() {
            if i == j {
                continue;
            }
            let x = free.serre_element(i, j)?;
            let zero = free.is_zero_in_f(&x)?;
            ok &= zero;
            s.emit(&json!({"i": i, "j": j, "element": x.to_string(), "zero_in_f": zero, "pass": zero}))?;
        }
    }
    s.finish(ok)
}

fn theta(mut s: Session, verify: bool) -> anyhow::Result<Outcome> {
    let r = RMatrix::new(Arc::new(s.algebra(s.cap + 1)));
    let theta = r.compute_theta(s.cap)?;
    for (nu, t) in &theta.components {
        s.emit(&json!({"nu": nu.0, "theta": t.to_string()}))?;
    }
    let mut ok = true;
    if verify {
        let d = s.datum.clone();
        let mut gens = Vec::new();
        for i in 0..d.rank() {
            gens.push(Generator::E(i));
            gens.push(Generator::F(i));
        }
        for k in 0..d.rank_y() {
            let mut mu = vec![0; d.rank_y()];
            mu[k] = 1;
            gens.push(Generator::K(mu.clone()));
            gens.push(Generator::J(mu));
        }
        for g in &gens {
            let rep = r.verify_intertwiner(&theta, g)?;
            ok &= rep.matches_boundary;
            s.emit(&json!({"check": "intertwiner", "pass": rep.matches_boundary, "report": rep}))?;
        }
        let inv = r.theta_inverse_check(&theta)?;
        ok &= inv;
        s.emit(&json!({"check": "theta times theta-bar", "pass": inv}))?;
    }
    s.finish(ok)
}

fn casimir(mut s: Session, lambda: &str, sign: &str, anchor: Option<&str>, without_e: bool) -> anyhow::Result<Outcome> {
    let d = s.datum.clone();
    let lam = weight_arg(&d, lambda)?;
    let anchor = match anchor {
        Some(a) => weight_arg(&d, a)?,
        None => lam.clone(),
    };
    let (m, cap) = simple_module(&s, &lam, parse_sign(sign)?)?;
    let depth = m
        .weights()
        .filter_map(|w| {
            let diff: Vec<i64> = lam.iter().zip(w).map(|(a, b)| a - b).collect();
            d.root_coordinates(&diff).map(|k| k.iter().sum::<i64>() as usize)
        })
        .max()
        .unwrap_or(0);
    let r = RMatrix::new(Arc::new(s.algebra(cap.max(depth + 2))));
    let form = if without_e { CasimirForm::WithoutE } else { CasimirForm::WithE };
    let rep = r.casimir_check(&m, &anchor, form)?;
    let ok = rep.stable && rep.scalar_ok && rep.commutes && rep.relations_ok;
    s.emit(&json!({"pass": ok, "report": rep}))?;
    s.finish(ok)
}

fn module(mut s: Session, lambda: &str, sign: &str, tensor: Option<&str>) -> anyhow::Result<Outcome> {
    let d = s.datum.clone();
    let sign = parse_sign(sign)?;
    let lam = weight_arg(&d, lambda)?;
    let (v, _) = simple_module(&s, &lam, sign)?;
    let m = match tensor {
        Some(t) => {
            let mu = weight_arg(&d, t)?;
            let (w, _) = simple_module(&s, &mu, sign)?;
            tensor_module(&v, &w)?
        }
        None => v,
    };
    for w in m.weights() {
        let par = m.parities(w);
        let odd = par.iter().filter(|&&p| p == 1).count();
        s.emit(&json!({"weight": w, "dim": m.dim_at(w), "parity_split": [par.len() - odd, odd]}))?;
    }
    let mut ok = m.verify_ef_relation();
    let dec = decompose(&m)?;
    ok &= dec.bookkeeping_ok();
    s.emit(&json!({"decomposition": dec.parts, "dim": dec.dim, "bookkeeping": dec.bookkeeping_ok()}))?;
    if tensor.is_none() && d.is_finite_type() {
        let ch = weyl_kac_character(&d, &lam)?;
        let agree = m.character() == ch;
        ok &= agree;
        s.emit(&json!({"character_matches_weyl_kac": agree}))?;
    }
    s.finish(ok)
}

fn character(mut s: Session, lambda: &str) -> anyhow::Result<Outcome> {
    let d = s.datum.clone();
    let lam = weight_arg(&d, lambda)?;
    let ch = weyl_kac_character(&d, &lam)?;
    let (vp, _) = simple_module(&s, &lam, Sign::Plus)?;
    let (vm, _) = simple_module(&s, &lam, Sign::Minus)?;
    let (cp, cm) = (vp.character(), vm.character());
    let mut ok = true;
    let mut all: Vec<&Vec<i64>> = ch.keys().chain(cp.keys()).chain(cm.keys()).collect();
    all.sort();
    all.dedup();
    for w in all {
        let (a, b, c) = (ch.get(w).copied().unwrap_or(0), cp.get(w).copied().unwrap_or(0), cm.get(w).copied().unwrap_or(0));
        ok &= a == b && a == c;
        s.emit(&json!({"weight": w, "weyl_kac": a, "plus": b, "minus": c}))?;
    }
    s.finish(ok)
}

fn higher_serre(mut s: Session, i: Option<usize>, j: Option<usize>, nmax: i64, mmax: i64) -> anyhow::Result<Outcome> {
    let d = s.datum.clone();
    if d.rank() < 2 {
        bail!("higher Serre elements need at least two generators");
    }
    if nmax < 0 || mmax < 0 {
        bail!("--nmax and --mmax must be nonnegative");
    }
    let alg = s.algebra(s.cap.max((nmax + mmax) as usize));
    let cells: Vec<GridCell> = match (i, j) {
        (None, None) => vanishing_grid(&alg, nmax, mmax)?,
        (Some(i), Some(j)) => {
            if i == j || i >= d.rank() || j >= d.rank() {
                bail!("--i and --j must be distinct generator indices");
            }
            let mut out = Vec::new();
            for n in 0..=nmax {
                for m in 0..=mmax {
                    let claimed = m > -n * d.a(i, j);
                    out.push(GridCell { i, j, n, m, claimed, vanishes: verify_vanishing(&alg, i, j, n, m)? });
                }
            }
            out
        }
        _ => bail!("give both --i and --j, or neither"),
    };
    let mut ok = true;
    for c in &cells {
        let pass = !c.claimed || c.vanishes;
        ok &= pass;
        s.emit(&json!({"i": c.i, "j": c.j, "n": c.n, "m": c.m, "claimed": c.claimed, "vanishes": c.vanishes, "pass": pass}))?;
    }
    s.finish(ok)
}

fn run(mut s: Session, list: &str, seed: u64) -> anyhow::Result<Outcome> {
    let config = RunConfig::new(s.cap, parse_suites(list)?, seed)?;
    let records = suites::run(s.datum.clone(), &config);
    for r in &records {
        writeln!(s.out, "{}", r.to_json_line())?;
    }
    let ok = suites::all_pass(&records);
    s.finish(ok)
}
