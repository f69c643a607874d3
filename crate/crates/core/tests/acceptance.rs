//! Acceptance run: one PASS/FAIL line per criterion.  Exits nonzero if any
//! line fails.

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use adhm::counting::{self, homw_theorem_dim, so3_theorem_dim};
use adhm::current::{self, CurrentVec};
use adhm::field::{int, Field, Rational};
use adhm::hilbert::{self, LaurentPoly};
use adhm::linalg::kernel_basis;
use adhm::samples;
use adhm::tensor;

use common::{hand_table, load, pipeline_suite, tensor_suite, Pipeline};

/// Slopes must lie within this distance of the target before rounding.
const SLOPE_TOL: f64 = 0.5;
const SUITE_SAMPLES: u64 = 50;
const STABILIZER_SAMPLES: usize = 200;

struct Report {
    failed: usize,
}

impl Report {
    fn line(&mut self, id: &str, what: &str, limit: Option<Duration>, f: impl FnOnce() -> Result<String, String>) {
        let start = Instant::now();
        let res = f();
        let took = start.elapsed();
        let late = limit.is_some_and(|l| took > l);
        let budget = limit.map_or(String::new(), |l| format!(" / {}", secs(l)));
        let (tag, detail) = match res {
            Ok(_) if late => ("FAIL", "over time budget".to_string()),
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        if tag == "FAIL" {
            self.failed += 1;
        }
        println!("{tag} [{id}] {what}: {detail} ({}{budget})", secs(took));
    }
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn hilbert_cli() -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_adhm"))
        .args(["hilbert", "--trunc", "8"])
        .output()
        .map_err(|e| e.to_string())?;
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let series = v["payload"]["series"].as_str().unwrap_or_default().to_string();
    ensure(out.status.success(), format!("exit {:?}", out.status.code()))?;
    ensure(series == "1 + (t+1+t^-1) u^2", format!("got {series}"))?;
    let s = hilbert::hilbert_rho(8).map_err(|e| e.to_string())?;
    let deg2 = LaurentPoly::from_terms(&[(1, 1, 0), (1, 0, 0), (1, -1, 0)]);
    for a in 0..=8 {
        let want = match a {
            0 => LaurentPoly::one(),
            2 => deg2.clone(),
            _ => LaurentPoly::zero(),
        };
        ensure(*s.coeff(a) == want, format!("u^{a} coefficient is {}", s.coeff(a)))?;
    }
    Ok(series)
}

fn oracle() -> Result<String, String> {
    let series = hilbert::hilbert_rho(8).map_err(|e| e.to_string())?;
    let o = hilbert::invariants_oracle(6).map_err(|e| e.to_string())?;
    for d in &o {
        ensure(d.character() == *series.coeff(d.degree), format!("degree {} differs: {}", d.degree, d.character()))?;
    }
    let total: i64 = o.iter().map(|d| d.character().total()).sum();
    ensure(total == 4, format!("total dimension {total}"))?;
    Ok(format!("degrees 0..=6 agree, total dimension {total}, degree 2 = {}", o[2].character()))
}

fn k1_table(b2_sign: i64) -> Result<String, String> {
    let mut checked = 0;
    for name in ["sp_k1.json", "gl_k1_w4.json"] {
        let d = load(name);
        let r = match &d {
            adhm::adhm::AnyDatum::Gl(x) => tensor::self_tensor(x),
            adhm::adhm::AnyDatum::SelfDual(y) => tensor::self_tensor_sp(y),
        }
        .map_err(|e| e.to_string())?;
        let x = d.datum();
        let want = hand_table(&r, &x.b1[(0, 0)], &x.b2[(0, 0)], b2_sign);
        for (m, got, exp) in
            [("B1", &r.datum.b1, &want.b1), ("B2", &r.datum.b2, &want.b2), ("i", &r.datum.i, &want.i), ("j", &r.datum.j, &want.j)]
        {
            ensure(got == exp, format!("{name}: {m} differs from the table"))?;
        }
        checked += 1;
    }
    Ok(format!("{checked} fixtures, every entry equal"))
}

fn table_moment_map() -> Result<String, String> {
    let d = load("sp_k1.json");
    let adhm::adhm::AnyDatum::SelfDual(y) = &d else { unreachable!() };
    let r = tensor::self_tensor_sp(y).map_err(|e| e.to_string())?;
    let x = d.datum();
    let printed = hand_table(&r, &x.b1[(0, 0)], &x.b2[(0, 0)], 1);
    let corrected = hand_table(&r, &x.b1[(0, 0)], &x.b2[(0, 0)], -1);
    ensure(!printed.moment_map().is_zero(), "printed table has zero moment map")?;
    ensure(corrected.moment_map().is_zero() && corrected.is_regular(), "corrected table is not regular in the zero fibre")?;
    Ok("printed B2 gives a nonzero moment map; negated B2 off-diagonal gives mu = 0 and regular".into())
}

fn stabilizers() -> Result<String, String> {
    let mut r = samples::rng(77);
    let mut seen = 0;
    for d in 0..=6usize {
        for s in 0..STABILIZER_SAMPLES {
            let n = s % (d + 2);
            let mut coeffs: Vec<[Rational; 2]> = (0..=d)
                .map(|m| if m < n { [int(0), int(0)] } else { [samples::small_rational(&mut r), samples::small_rational(&mut r)] })
                .collect();
            if n <= d && coeffs[n].iter().all(Field::is_zero) {
                coeffs[n][0] = int(1);
            }
            let x = CurrentVec::new(d, coeffs).map_err(|e| e.to_string())?;
            ensure(current::min_deg(&x) == n, format!("sampler produced min.deg != {n}"))?;
            let st = current::stabilizer_checked(&x).map_err(|e| format!("d = {d}, n = {n}: {e}"))?;
            ensure(st.dim() == (d + 1 - n) + 3 * n, format!("d = {d}, n = {n}: dim {}", st.dim()))?;
            ensure(st.span(d) == kernel_basis(&current::action_map(&x)), format!("d = {d}, n = {n}: span differs from kernel"))?;
            seen += 1;
        }
    }
    Ok(format!("{seen} vectors, d <= 6, every n <= d+1"))
}

fn mux_fibres() -> Result<String, String> {
    let workers = workers();
    let mut cases = 0;
    for d in 0..=3 {
        for n in 0..=d + 1 {
            for p in [3, 5, 7] {
                let m = counting::count_mux_fiber(d, n, p, workers).map_err(|e| format!("d={d} n={n} p={p}: {e}"))?;
                ensure(m.set_equal && m.report.count == m.claimed_size, format!("d={d} n={n} p={p}: not the claimed set"))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} cases set-equal"))
}

fn workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn slope_line(counts: &[u64], primes: &[u64], target: usize) -> Result<String, String> {
    let slopes: Vec<f64> = counts
        .windows(2)
        .zip(primes.windows(2))
        .map(|(c, p)| ((c[1] as f64).ln() - (c[0] as f64).ln()) / ((p[1] as f64).ln() - (p[0] as f64).ln()))
        .collect();
    let shown: Vec<String> = slopes.iter().map(|s| format!("{s:.3}")).collect();
    let detail = format!("counts {counts:?} at p = {primes:?}, slopes [{}], target {target} +/- {SLOPE_TOL}", shown.join(", "));
    if slopes.iter().all(|s| (s - target as f64).abs() <= SLOPE_TOL) {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn main() {
    let mut rep = Report { failed: 0 };
    let w = workers();
    println!("acceptance run with {w} worker(s)");

    rep.line("1", "hilbert --trunc 8", Some(Duration::from_secs(1)), hilbert_cli);
    rep.line("2", "invariants oracle through degree 6", Some(Duration::from_secs(120)), oracle);
    rep.line("3", "self-tensor limit vs printed k=1 table", Some(Duration::from_secs(1)), || k1_table(1));
    rep.line("3s", "self-tensor limit vs k=1 table with B2 sign corrected", Some(Duration::from_secs(1)), || k1_table(-1));
    rep.line("3m", "moment map of the printed and corrected k=1 tables", Some(Duration::from_secs(1)), table_moment_map);
    for (id, p) in [("4a", Pipeline::So3), ("4b", Pipeline::So5), ("4c", Pipeline::So6)] {
        let what = format!("{p:?} pipeline on {SUITE_SAMPLES} samples, k <= 3");
        rep.line(id, &what, Some(Duration::from_secs(60)), || {
            pipeline_suite(p, SUITE_SAMPLES).map(|n| format!("{n} outputs regular, mu = 0, dims ok"))
        });
    }
    rep.line("5", "tensor laws on seeded pairs", None, || {
        tensor_suite(SUITE_SAMPLES).map(|n| format!("{n} pairs: mu = 0, stable, costable, dual law"))
    });
    rep.line("6", "stabilizer equals kernel of the action map", Some(Duration::from_secs(60)), stabilizers);
    rep.line("7", "mu_x zero set equals the claimed subspace", Some(Duration::from_secs(300)), mux_fibres);

    // Criterion 8 shares one budget across its lines.
    let start8 = Instant::now();
    let primes = [3u64, 5, 7];
    for d in 0..=2usize {
        let id = ["8a", "8b", "8c"][d];
        let what = format!("homw slope for d = {d} against 4d - 2[d/2] + 3 = {}", homw_theorem_dim(d));
        rep.line(id, &what, None, || {
            let counts = primes
                .iter()
                .map(|&p| counting::count_homw_fiber(d, p, w, false).map(|r| r.count).map_err(|e| e.to_string()))
                .collect::<Result<Vec<_>, _>>()?;
            slope_line(&counts, &primes, homw_theorem_dim(d))
        });
    }
    rep.line("8d", "so3 slope for k = 2", None, || {
        let ps = [3u64, 5, 7, 11];
        let counts = ps
            .iter()
            .map(|&p| counting::count_so3_fiber(2, p, w, false).map(|r| r.count).map_err(|e| e.to_string()))
            .collect::<Result<Vec<_>, _>>()?;
        slope_line(&counts, &ps, so3_theorem_dim(2))
    });
    let took8 = start8.elapsed();
    rep.line("8t", "criterion 8 total runtime", None, || {
        ensure(took8 <= Duration::from_secs(30 * 60), "over 30 min")?;
        Ok(format!("{} with {w} worker(s)", secs(took8)))
    });

    for d in 0..=2usize {
        let id = ["9a", "9b", "9c"][d];
        rep.line(id, &format!("stratum dimension formula vs slopes, d = {d}"), None, || {
            let r = counting::verify_dim_formula(d, &primes, w).map_err(|e| e.to_string())?;
            let shown: Vec<String> = r.slopes.iter().map(|s| format!("{s:.3}")).collect();
            let detail = format!("predicted {}, slopes [{}]", r.predicted, shown.join(", "));
            ensure(r.agrees, detail.clone())?;
            Ok(detail)
        });
    }

    println!("{} line(s) failed", rep.failed);
    if rep.failed > 0 {
        std::process::exit(1);
    }
}
