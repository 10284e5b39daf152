use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{anyhow, bail, Context};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::Value;

use entdis::certify::{
    certify as run_provers, verify_certificate, Certificate, Direction, ProverConfig, Verification,
};
use entdis::search::{
    decide as run_decide, orbit_povm, povm_completion, search_all, simulate_protocol, Completion,
    OptimizerConfig, Povm, Witness,
};
use entdis::states::{theorem1_indices, theorem2_set};
use entdis::sweep::{sweep as size_table, SweepRow};
use entdis::{Dimension, PauliIndex, SetFile, Theorem2Spec, UnitarySet, TOOL_VERSION};

use crate::{Failure, Format, GenKind, Global};

fn read_json<T: serde::de::DeserializeOwned>(path: &Path, what: &str) -> anyhow::Result<T> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {what} {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {what} {}", path.display()))
}

fn load_set(path: &Path) -> anyhow::Result<UnitarySet> {
    let file: SetFile = read_json(path, "set file")?;
    Ok(file.build()?)
}

fn emit(g: &Global, text: &str) -> anyhow::Result<()> {
    match &g.output {
        Some(p) => {
            fs::write(p, format!("{text}\n")).with_context(|| format!("writing {}", p.display()))
        }
        None => {
            let mut out = std::io::stdout().lock();
            writeln!(out, "{text}")?;
            Ok(())
        }
    }
}

fn emit_json<T: Serialize>(g: &Global, value: &T) -> anyhow::Result<()> {
    emit(g, &serde_json::to_string_pretty(value)?)
}

fn parse_complex(s: &str) -> anyhow::Result<Complex64> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| anyhow!("expected re,im but got {s:?}"))?;
    Ok(Complex64::new(re.trim().parse()?, im.trim().parse()?))
}

fn parse_index(s: &str) -> anyhow::Result<PauliIndex> {
    let (m, n) = s
        .split_once(',')
        .ok_or_else(|| anyhow!("expected m,n but got {s:?}"))?;
    Ok(PauliIndex {
        m: m.trim().parse()?,
        n: n.trim().parse()?,
    })
}

pub fn gen(
    g: &Global,
    kind: GenKind,
    d: Option<usize>,
    phases: [Option<String>; 3],
    indices: &[String],
    input: Option<&Path>,
) -> Result<(), Failure> {
    let need_d = || d.ok_or_else(|| anyhow!("--d is required"));
    let file = match kind {
        GenKind::Theorem1 => {
            let d = Dimension::new(need_d()?)?;
            SetFile::GeneralizedBell {
                d: d.get(),
                indices: theorem1_indices(d)?,
            }
        }
        GenKind::Theorem2 => {
            let d = Dimension::new(need_d()?)?;
            let [w, c, s] = phases;
            let pick =
                |v: Option<String>, dflt: Complex64| v.map_or(Ok(dflt), |v| parse_complex(&v));
            let spec = Theorem2Spec::new(
                d,
                pick(w, Theorem2Spec::default_omega())?,
                pick(c, Theorem2Spec::default_gamma())?,
                pick(s, Theorem2Spec::default_sigma())?,
            )?;
            SetFile::explicit(&theorem2_set(&spec)?)
        }
        GenKind::Bell => {
            let labels = indices
                .iter()
                .map(|s| parse_index(s))
                .collect::<anyhow::Result<Vec<_>>>()?;
            if labels.is_empty() {
                return Err(anyhow!("--indices is required for bell").into());
            }
            SetFile::GeneralizedBell {
                d: need_d()?,
                indices: labels,
            }
        }
        GenKind::Explicit => {
            let path = input.ok_or_else(|| anyhow!("--input is required for explicit"))?;
            SetFile::explicit(&load_set(path)?)
        }
    };
    let set = file.build()?;
    eprintln!(
        "d = {}, {} states, max |Tr(U_i†U_j)| = {:.1e}, max unitarity defect = {:.1e}",
        set.d(),
        set.len(),
        set.max_overlap(),
        set.max_unitarity_defect()
    );
    emit(
        g,
        &serde_json::to_string(&file).map_err(anyhow::Error::from)?,
    )?;
    Ok(())
}

pub fn decide(g: &Global, path: &Path) -> Result<(), Failure> {
    let set = load_set(path)?;
    emit_json(g, &run_decide(&set, &g.optimizer())?)?;
    Ok(())
}

#[derive(Serialize)]
struct CertifyReport {
    tool_version: &'static str,
    input_hash: String,
    direction: Direction,
    config: ProverConfig,
    certificate: Option<Certificate>,
}

pub fn certify(g: &Global, path: &Path, direction: Direction) -> Result<(), Failure> {
    let set = load_set(path)?;
    let config = ProverConfig::default();
    let certificate = run_provers(&set, direction, &config);
    if certificate.is_none() {
        eprintln!("no certificate: both provers were inconclusive");
    }
    emit_json(
        g,
        &CertifyReport {
            tool_version: TOOL_VERSION,
            input_hash: set.content_hash(),
            direction,
            config,
            certificate,
        },
    )?;
    Ok(())
}

#[derive(Serialize)]
struct SearchReport {
    tool_version: &'static str,
    input_hash: String,
    direction: Direction,
    config: OptimizerConfig,
    witness: Witness,
    restarts_below_success: usize,
    near_witness: bool,
    povm: Option<Povm>,
}

pub fn search(g: &Global, path: &Path, direction: Direction) -> Result<(), Failure> {
    let set = load_set(path)?;
    let cfg = g.optimizer();
    let examined = direction.apply(&set);
    let run = search_all(&examined, &cfg)?;
    let best = run.best().clone();
    let pool: Vec<Witness> = run.below(cfg.success_tol).cloned().collect();
    let povm = if pool.is_empty() {
        None
    } else {
        match povm_completion(&examined, &pool, cfg.success_tol)? {
            Completion::Complete(p) => Some(p),
            Completion::Incomplete { .. } => None,
        }
    };
    let report = SearchReport {
        tool_version: TOOL_VERSION,
        input_hash: set.content_hash(),
        direction,
        config: cfg,
        near_witness: best.residual >= cfg.success_tol && best.residual <= cfg.failure_floor,
        restarts_below_success: pool.len(),
        witness: best,
        povm,
    };
    emit_json(g, &report)?;
    Ok(())
}

/// Accepts the object itself or a report that carries it under `key`.
fn extract<T: serde::de::DeserializeOwned>(path: &Path, key: &str) -> anyhow::Result<T> {
    let v: Value = read_json(path, key)?;
    let inner = match v.get(key) {
        Some(Value::Null) => bail!("{} has no {key}", path.display()),
        Some(x) => x.clone(),
        None => v,
    };
    serde_json::from_value(inner)
        .with_context(|| format!("{} does not contain a {key}", path.display()))
}

#[derive(Serialize)]
struct SimulateReport {
    tool_version: &'static str,
    input_hash: String,
    direction: Direction,
    seed: u64,
    trials: usize,
    povm_size: usize,
    success: f64,
}

pub fn simulate(
    g: &Global,
    path: &Path,
    povm: Option<&Path>,
    witness: Option<&Path>,
    trials: usize,
    direction: Direction,
) -> Result<(), Failure> {
    let set = load_set(path)?;
    let examined = direction.apply(&set);
    let povm = match (povm, witness) {
        (Some(p), _) => extract::<Povm>(p, "povm")?,
        (None, Some(w)) => {
            if examined.tag().is_none() {
                return Err(anyhow!(
                    "orbit measurements need a generalized-Bell set; pass --povm instead"
                )
                .into());
            }
            let w: Witness = extract(w, "witness")?;
            if w.alpha.len() != examined.d().get() {
                return Err(anyhow!(
                    "witness has dimension {}, set has {}",
                    w.alpha.len(),
                    examined.d()
                )
                .into());
            }
            orbit_povm(&w.alpha)
        }
        (None, None) => return Err(anyhow!("one of --povm or --witness is required").into()),
    };
    let success = simulate_protocol(&examined, &povm, trials, g.seed)?;
    emit_json(
        g,
        &SimulateReport {
            tool_version: TOOL_VERSION,
            input_hash: set.content_hash(),
            direction,
            seed: g.seed,
            trials,
            povm_size: povm.len(),
            success,
        },
    )?;
    Ok(())
}

pub fn sweep(g: &Global, d_min: usize, d_max: usize) -> Result<(), Failure> {
    let rows = size_table(d_min, d_max)?;
    match g.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut lines = vec![SweepRow::CSV_HEADER.to_string()];
            lines.extend(rows.iter().map(SweepRow::to_csv));
            emit(g, &lines.join("\n"))?;
        }
        Format::Json => emit_json(g, &rows)?,
    }
    Ok(())
}

pub fn verify(_g: &Global, cert: &Path, set: &Path) -> Result<(), Failure> {
    let cert: Certificate = extract(cert, "certificate")?;
    let set = load_set(set)?;
    match verify_certificate(&cert, &set) {
        Verification::Valid => {
            println!("valid");
            Ok(())
        }
        Verification::Invalid(reason) => Err(Failure::Refuted(format!("invalid: {reason}"))),
    }
}
