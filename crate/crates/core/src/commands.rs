//! Command implementations shared by the `adhm` binary and the C ABI.
//!
//! Every command returns a [`CommandResult`]: a status, a flag telling
//! whether all verifications it performed passed, a deterministic payload
//! and a provenance block.  Wall-clock timings live outside the payload so
//! identical inputs give identical payloads.

use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::adhm::{AdhmDatum, AnyDatum, DatumJson, SoDatum};
use crate::counting;
use crate::current::{self, CurrentVec};
use crate::error::{Error, Result};
use crate::field::Rational;
use crate::hilbert;
use crate::iso;
use crate::tensor::{self, SelfTensorResult};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Serialize)]
pub struct InputHash {
    pub path: String,
    pub sha256: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Provenance {
    pub command: String,
    pub inputs: Vec<InputHash>,
    pub seed: Option<u64>,
    pub version: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorInfo {
    pub kind: String,
    pub message: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CommandResult {
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    pub verified: bool,
    pub payload: Value,
    pub provenance: Provenance,
    pub elapsed_ms: u128,
}

impl CommandResult {
    /// 0 when every verification passed, 1 when some check failed, 2 on error.
    pub fn exit_code(&self) -> i32 {
        match (self.error.is_some(), self.verified) {
            (true, _) => 2,
            (false, true) => 0,
            (false, false) => 1,
        }
    }

    /// The result without timing, for reproducibility comparisons.
    pub fn deterministic_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("serializable");
        v.as_object_mut().expect("object").remove("elapsed_ms");
        v
    }
}

/// Verdict and payload of a command body.
pub struct Outcome {
    pub verified: bool,
    pub payload: Value,
}

/// Runs a command body, turning errors into an error status.
pub fn run(command: &str, inputs: &[&Path], seed: Option<u64>, body: impl FnOnce() -> Result<Outcome>) -> CommandResult {
    let start = Instant::now();
    let mut provenance = Provenance { command: command.into(), seed, version: VERSION, ..Default::default() };
    for p in inputs {
        let sha256 = std::fs::read(p).map(|b| hex::encode(Sha256::digest(&b))).unwrap_or_default();
        provenance.inputs.push(InputHash { path: p.display().to_string(), sha256 });
    }
    let (error, verified, payload) = match body() {
        Ok(o) => (None, o.verified, o.payload),
        Err(e) => (Some(ErrorInfo { kind: e.kind().into(), message: e.to_string() }), false, Value::Null),
    };
    CommandResult {
        status: if error.is_some() { "error" } else { "ok" },
        error,
        verified,
        payload,
        provenance,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

pub fn read_datum(path: &Path) -> Result<AnyDatum> {
    let s = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    AnyDatum::from_json_str(&s)
}

fn json_of<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

/// Membership checks for a datum.
pub fn verify_datum(d: &AnyDatum) -> Result<Outcome> {
    let x = d.datum();
    let mut payload = json!({
        "dimV": x.dim_v(),
        "dimW": x.dim_w(),
        "stable": x.is_stable(),
        "costable": x.is_costable(),
        "regular": x.is_regular(),
    });
    let verified = match d {
        AnyDatum::Gl(x) => {
            let mu = x.moment_map();
            payload["kind"] = json!("gl");
            payload["moment_map_zero"] = json!(mu.is_zero());
            payload["moment_map"] = json_of(&mu);
            true
        }
        AnyDatum::SelfDual(y) => {
            let violations = y.violations();
            payload["kind"] = json!("self_dual");
            payload["flavor"] = json!(format!("{:?}", y.flavor()));
            payload["violations"] = json!(violations);
            if violations.is_empty() {
                let mu = y.moment_map()?;
                payload["moment_map_zero"] = json!(mu.is_zero());
                payload["moment_map"] = json_of(&mu);
            }
            violations.is_empty()
        }
    };
    Ok(Outcome { verified, payload })
}

pub fn cmd_verify(path: &Path) -> CommandResult {
    run("verify", &[path], None, || verify_datum(&read_datum(path)?))
}

pub const PRODUCT_VERBS: [&str; 7] = ["tensor", "self-tensor", "sym", "ext", "so3", "so5", "so6"];

fn gl_checks(x: &AdhmDatum) -> Value {
    json!({
        "moment_map_zero": x.moment_map().is_zero(),
        "stable": x.is_stable(),
        "costable": x.is_costable(),
    })
}

fn self_dual_checks(y: &SoDatum) -> Result<Value> {
    let violations = y.violations();
    Ok(json!({
        "moment_map_zero": y.moment_map()?.is_zero(),
        "invariants": violations.is_empty(),
        "regular": y.datum().is_regular(),
    }))
}

fn all_true(v: &Value) -> bool {
    v.as_object().is_some_and(|o| o.values().all(|b| b.as_bool() == Some(true)))
}

fn self_tensor_of(d: &AnyDatum) -> Result<SelfTensorResult> {
    match d {
        AnyDatum::Gl(x) => tensor::self_tensor(x),
        AnyDatum::SelfDual(y) => tensor::self_tensor_sp(y),
    }
}

fn limit_json(r: &SelfTensorResult) -> DatumJson {
    let mut j = DatumJson::from_gl(&r.datum);
    if let (Some(fv), Some(fw)) = (&r.form_v, &r.form_w) {
        j.form_v = Some(fv.into());
        j.form_w = Some(fw.into());
    }
    j
}

/// Tensor-product pipelines on datum files.
pub fn product(verb: &str, data: &[AnyDatum], seed: u64) -> Result<Outcome> {
    let arity = if verb == "tensor" { 2 } else { 1 };
    if data.len() != arity {
        return Err(Error::Unsupported(format!("{verb} takes {arity} datum file(s), got {}", data.len())));
    }
    let (datum, checks) = match verb {
        "tensor" => {
            let (x, y) = (data[0].datum(), data[1].datum());
            let t = tensor::tensor(x, y)?;
            let mut c = gl_checks(&t);
            c["dual_law"] = json!(tensor::tensor_dual_check(x, y)?);
            c["dim_v"] = json!(t.dim_v() == x.dim_v() * y.dim_w() + x.dim_w() * y.dim_v());
            c["dim_w"] = json!(t.dim_w() == x.dim_w() * y.dim_w());
            (json_of(&DatumJson::from_gl(&t)), c)
        }
        "self-tensor" => {
            let r = self_tensor_of(&data[0])?;
            let (vs, ve) = tensor::vs_ve(&r)?;
            let mut c = gl_checks(&r.datum);
            c["reconstruction"] = json!(tensor::reconstruction_check(&r)?);
            let mut out = json_of(&limit_json(&r));
            out["weights"] = json!(r.weights);
            out["dimVS"] = json!(vs.dim());
            out["dimVE"] = json!(ve.dim());
            (out, c)
        }
        "sym" | "ext" => {
            let r = self_tensor_of(&data[0])?;
            let x = if verb == "sym" { tensor::restrict_sym(&r)? } else { tensor::restrict_ext(&r)? };
            (json_of(&DatumJson::from_gl(&x)), gl_checks(&x))
        }
        "so3" | "so5" => {
            let AnyDatum::SelfDual(y) = &data[0] else {
                return Err(Error::Unsupported(format!("{verb} needs a self-dual datum with formV and formW")));
            };
            let out = if verb == "so3" { iso::iso_so3(y)? } else { iso::iso_so5(y)? };
            let k = y.datum().dim_v();
            let mut c = self_dual_checks(&out.datum)?;
            let want = if verb == "so3" { 4 * k } else { 2 * k };
            c["dim_v"] = json!(out.datum.datum().dim_v() == want);
            (json_of(&DatumJson::from_self_dual(&out.datum)), c)
        }
        "so6" => {
            let x = data[0].datum();
            let out = iso::iso_so6(x, seed)?;
            let mut c = self_dual_checks(&out.datum)?;
            c["dim_v"] = json!(out.datum.datum().dim_v() == 2 * x.dim_v());
            let mut d = json_of(&DatumJson::from_self_dual(&out.datum));
            d["omega"] = json!(out.omega.as_ref().map(|o| json_of(&crate::adhm::FormJson::from(o))));
            d["attempts"] = json!(out.attempts);
            (d, c)
        }
        other => return Err(Error::Unsupported(format!("unknown product verb {other:?}"))),
    };
    Ok(Outcome { verified: all_true(&checks), payload: json!({ "verb": verb, "datum": datum, "checks": checks }) })
}

pub fn cmd_product(verb: &str, paths: &[&Path], seed: u64) -> CommandResult {
    run(&format!("product {verb}"), paths, Some(seed), || {
        let data = paths.iter().map(|p| read_datum(p)).collect::<Result<Vec<_>>>()?;
        product(verb, &data, seed)
    })
}

/// Series to order `trunc`, optionally cross-checked by the invariant oracle.
pub fn hilbert_series(trunc: usize, oracle: Option<usize>) -> Result<Outcome> {
    let s = hilbert::hilbert_rho(trunc)?;
    let mut payload = json!({ "series": s.to_string(), "coefficients": s.to_json(), "trunc": trunc });
    let mut verified = true;
    if let Some(depth) = oracle {
        let degrees = hilbert::invariants_oracle(depth)?;
        let matches = hilbert::oracle_matches(&degrees, &s);
        verified &= matches;
        payload["oracle"] = json!({
            "depth": depth,
            "matches": matches,
            "degrees": degrees.iter().map(|o| json!({
                "degree": o.degree,
                "monomials": o.monomials,
                "ideal_dim": o.ideal_dim,
                "invariants": o.character().to_string(),
            })).collect::<Vec<_>>(),
        });
    }
    Ok(Outcome { verified, payload })
}

pub fn cmd_hilbert(trunc: usize, oracle: Option<usize>) -> CommandResult {
    run("hilbert", &[], None, || hilbert_series(trunc, oracle))
}

fn report_payload(r: &counting::CountReport) -> Value {
    let mut v = json_of(r);
    v.as_object_mut().expect("object").remove("elapsed_ms");
    v
}

pub fn cmd_count_so3(k: usize, p: u64, workers: usize, allow_long: bool) -> CommandResult {
    run("count so3", &[], None, || {
        let r = counting::count_so3_fiber(k, p, workers, allow_long)?;
        // Coarse lower bound from the regular stratum.
        let bound = 4 * r.count >= p.pow(counting::so3_theorem_dim(k) as u32);
        let mut payload = report_payload(&r);
        payload["lower_bound_ok"] = json!(bound);
        Ok(Outcome { verified: bound, payload })
    })
}

pub fn cmd_count_homw(d: usize, p: u64, workers: usize, allow_long: bool) -> CommandResult {
    run("count homw", &[], None, || {
        let r = counting::count_homw_fiber(d, p, workers, allow_long)?;
        Ok(Outcome { verified: true, payload: report_payload(&r) })
    })
}

pub fn cmd_count_mux(d: usize, n: usize, p: u64, workers: usize) -> CommandResult {
    run("count mux", &[], None, || {
        let r = counting::count_mux_fiber(d, n, p, workers)?;
        let mut payload = report_payload(&r.report);
        payload["claimed_dim"] = json!(r.claimed_dim);
        payload["claimed_size"] = json!(r.claimed_size);
        payload["set_equal"] = json!(r.set_equal);
        Ok(Outcome { verified: r.set_equal && r.claimed_size == r.report.count, payload })
    })
}

pub fn cmd_dim_formula(d: usize, primes: &[u64], workers: usize) -> CommandResult {
    run("count dim-formula", &[], None, || {
        let r = counting::verify_dim_formula(d, primes, workers)?;
        let mut payload = json_of(&r);
        for c in payload["counts"].as_array_mut().expect("array") {
            c.as_object_mut().expect("object").remove("elapsed_ms");
        }
        Ok(Outcome { verified: r.agrees, payload })
    })
}

/// `x` from shorthand (`e1z^2`) or a JSON file path.
pub fn parse_current_vec(d: usize, x: &str) -> Result<CurrentVec<Rational>> {
    if Path::new(x).is_file() {
        let s = std::fs::read_to_string(x).map_err(|e| Error::Parse(e.to_string()))?;
        let v = CurrentVec::from_json_str(&s)?;
        if v.d() != d {
            return Err(Error::DimensionMismatch(format!("file has d = {}, expected {d}", v.d())));
        }
        return Ok(v);
    }
    CurrentVec::parse_shorthand(d, x)
}

pub fn current_stabilizer(x: &CurrentVec<Rational>) -> Result<Outcome> {
    let d = x.d();
    let s = current::stabilizer_checked(x)?;
    let expected = (d + 1 - s.n) + 3 * s.n;
    let strat = current::stratum_data(x)?;
    Ok(Outcome {
        verified: s.dim() == expected,
        payload: json!({
            "x": x.to_json(),
            "min_deg": s.n,
            "dim": s.dim(),
            "expected_dim": expected,
            "xi": s.xi.as_ref().map(|m| m.to_json()),
            "basis": s.basis.iter().map(|m| m.to_json()).collect::<Vec<_>>(),
            "stratum": json_of(&strat),
        }),
    })
}

pub fn cmd_current_stabilizer(d: usize, x: &str) -> CommandResult {
    let inputs: Vec<&Path> = if Path::new(x).is_file() { vec![Path::new(x)] } else { vec![] };
    run("current stabilizer", &inputs, None, || current_stabilizer(&parse_current_vec(d, x)?))
}

pub fn current_fiber(d: usize, n: usize) -> Result<Outcome> {
    let f = current::claimed_fiber::<Rational>(d, n)?;
    let basis: Vec<Value> = f
        .basis_vectors()
        .iter()
        .map(|v| CurrentVec::from_coords(d, v).map(|c| c.to_json()))
        .collect::<Result<_>>()?;
    // Every basis vector must be a zero of μ_x for x = e1 z^n.
    let x = if n <= d { CurrentVec::basis(d, 0, n) } else { CurrentVec::zero(d) };
    let mut vanish = true;
    for v in f.basis_vectors() {
        let v = CurrentVec::from_coords(d, &v)?;
        vanish &= current::mu_x_eval(&x, &v)?.iter().all(|c| *c == crate::field::int(0));
    }
    Ok(Outcome { verified: vanish, payload: json!({ "d": d, "n": n, "dim": f.dim(), "basis": basis, "basis_in_zero_set": vanish }) })
}

pub fn cmd_current_fiber(d: usize, n: usize) -> CommandResult {
    run("current fiber", &[], None, || current_fiber(d, n))
}
