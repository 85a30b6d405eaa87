//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use selberg::cohomology::{
    consistency_report, dims_discrete_pair, dims_f, dims_principal_minus, predict_order, CohDims, OddK,
    SurfaceSignature,
};
use selberg::io::{format_complex, read_spectrum, spectrum_to_string};
use selberg::spectrum::Character;
use selberg::zeta::{class_contribution_bound, class_factor, log_derivative, log_zeta, zeta_value, ZetaParams};
use selberg::{enumerate_spectrum, FuchsianGroupSpec, LengthSpectrum};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gamma2(n: usize, sigma: Character) -> LengthSpectrum {
    enumerate_spectrum(&FuchsianGroupSpec::gamma2(), n, sigma).unwrap()
}

fn identity_grid() -> Outcome {
    let start = Instant::now();
    let ks: Vec<OddK> = OddK::up_to(9).collect();
    let mut checks = 0;
    for g in 0..=4 {
        for r in 1..=4 {
            let Ok(sig) = SurfaceSignature::new(g, r) else { continue };
            let report = consistency_report(sig, &ks).map_err(|e| e.to_string())?;
            if let Some(f) = report.failures().next() {
                return Err(format!("g={g} r={r} k={} {}: {} != {}", f.k, f.identity, f.lhs, f.rhs));
            }
            checks += report.checks.len();
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("{checks} identities exact in {elapsed:?}"))
}

fn spot_values() -> Outcome {
    let sig = SurfaceSignature::new(0, 3).unwrap();
    let k1 = OddK::new(1).unwrap();
    let k3 = OddK::new(3).unwrap();
    let f = dims_f(sig, k1).unwrap();
    let m1 = dims_principal_minus(sig, k1).unwrap();
    let pair = dims_discrete_pair(sig, k1).unwrap();
    let m3 = dims_principal_minus(sig, k3).unwrap();
    let got = [(f.h0, f.h1), (m1.h0, m1.h1), (pair.h0, pair.h1), (m3.h0, m3.h1)];
    let want = [(1, 2), (5, 2), (4, 0), (6, 3)];
    let h2 = [m1.h2, pair.h2, m3.h2];
    ensure(got == want && h2 == [0, 0, 0], || format!("got {got:?} h2 {h2:?}"))?;
    Ok("F_1 (1,2); H^{-1/2} (5,2,0); D_1 pair (4,0,0); H^{-3/2} (6,3,0)".into())
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let sp = gamma2(8, Character::Sign);
    let elapsed = start.elapsed();
    let oracle = common::gamma2_brute_force(8);
    ensure(sp.len() == oracle.len(), || format!("{} classes, oracle {}", sp.len(), oracle.len()))?;
    let mut ours: Vec<i128> = sp.classes().iter().map(|c| c.trace.to_i128().unwrap()).collect();
    let mut theirs: Vec<i128> = oracle.values().copied().collect();
    ours.sort_unstable();
    theirs.sort_unstable();
    ensure(ours == theirs, || "trace multisets differ".into())?;
    for c in sp.classes() {
        ensure(oracle.contains_key(&c.canonical_word.to_string()), || format!("{} unknown to oracle", c.canonical_word))?;
    }
    ensure(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))?;
    Ok(format!("{} classes, traces equal, enumeration {elapsed:?}", sp.len()))
}

fn shortest_geodesic() -> Outcome {
    // 2·arccosh(3) = 2·ln(3 + 2√2)
    let closed = 2.0 * (3.0 + 2.0 * 2f64.sqrt()).ln();
    let sp = gamma2(8, Character::Sign);
    let min = sp.classes().iter().map(|c| c.length).fold(f64::INFINITY, f64::min);
    ensure((min - closed).abs() <= 1e-12, || format!("min {min} vs {closed}"))?;
    let at_two: Vec<String> = sp
        .classes()
        .iter()
        .filter(|c| c.canonical_word.len() == 2 && (c.length - closed).abs() <= 1e-12)
        .map(|c| c.canonical_word.to_string())
        .collect();
    ensure(at_two == ["AB", "ab"], || format!("word length 2 minimizers {at_two:?}"))?;
    let brute: Vec<&str> = ["AB", "Ab", "aB", "ab", "BA", "Ba", "bA", "ba"]
        .into_iter()
        .filter(|w| common::gamma2_trace(w).abs() == 6)
        .collect();
    ensure(brute.len() == 4, || format!("two-letter brute force {brute:?}"))?;
    Ok(format!("min length {min:.15} at word length 2: {}", at_two.join(", ")))
}

fn zeta_equivalence() -> Outcome {
    let mut worst: f64 = 0.0;
    for sigma in [Character::Trivial, Character::Sign] {
        let sp = gamma2(8, sigma);
        for s in [Complex64::new(2.0, 0.0), Complex64::new(3.0, 0.0), Complex64::new(2.0, 5.0)] {
            let p = ZetaParams::classical(s);
            let z = zeta_value(&p, &sp).map_err(|e| e.to_string())?.value;
            let classes: Vec<(f64, f64)> = sp.classes().iter().map(|c| (c.length, c.epsilon.as_f64())).collect();
            let d = common::direct_product(s, &classes, |l| p.k_limit(s.re, l));
            let rel = (z - d).norm() / d.norm();
            worst = worst.max(rel);
            ensure(rel <= 1e-10, || format!("{sigma:?} s={s}: relative {rel:e}"))?;
        }
        let s = Complex64::new(2.0, 0.0);
        for c in sp.classes() {
            let total: f64 = (0..200).map(|k| class_factor(s, c, k).unwrap().ln().norm()).sum();
            let bound = class_contribution_bound(s.re, c.length);
            ensure(s.re * c.length >= std::f64::consts::LN_2 && total <= bound, || {
                format!("class {}: {total:e} > {bound:e}", c.canonical_word)
            })?;
        }
    }
    Ok(format!("worst relative gap {worst:.2e}; per-class bound holds at s=2"))
}

fn log_derivative_check() -> Outcome {
    let sp = gamma2(8, Character::Sign);
    let s = Complex64::new(2.0, 0.0);
    let d = log_derivative(&ZetaParams::classical(s), &sp).map_err(|e| e.to_string())?;
    let fd = common::central_difference(|z| log_zeta(&ZetaParams::classical(z), &sp).unwrap().value, s, 1e-4);
    let gap = (d - fd).norm();
    ensure(gap <= 1e-6, || format!("gap {gap:e}"))?;
    Ok(format!("gap {gap:.2e}"))
}

fn order_formula() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e1b);
    let lambda = Complex64::new(0.75, 0.0);
    let mut rejected = 0;
    for i in 0..1000 {
        let (h0, h1, h2) = if i % 2 == 0 {
            let h1 = rng.gen_range(0..50u64);
            let h2 = rng.gen_range(0..=h1);
            (h1 - h2, h1, h2)
        } else {
            (rng.gen_range(0..50u64), rng.gen_range(0..50u64), rng.gen_range(0..50u64))
        };
        let d = CohDims::user(h0, h1, h2);
        let expected = h1 as i64 - 2 * h2 as i64;
        let chi = h0 as i64 - h1 as i64 + h2 as i64;
        match predict_order(&d, lambda, true) {
            Ok(p) => ensure(chi == 0 && p.order == expected, || format!("({h0},{h1},{h2}) gave {}", p.order))?,
            Err(_) => {
                ensure(chi != 0, || format!("({h0},{h1},{h2}) rejected with χ = 0"))?;
                rejected += 1;
            }
        }
        let formal = predict_order(&d, lambda, false).map_err(|e| e.to_string())?;
        ensure(formal.order == expected && formal.warning.is_some(), || format!("({h0},{h1},{h2}) cusped"))?;
    }
    Ok(format!("1000 triples, {rejected} rejected by the χ gate"))
}

fn cli_round_trip() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let group = dir.path().join("g2.group");
    let spec = dir.path().join("g2.spectrum");
    let rewrite = dir.path().join("g2_again.spectrum");
    std::fs::write(&group, FuchsianGroupSpec::gamma2().to_string()).unwrap();
    let bin = env!("CARGO_BIN_EXE_selberg");
    let status = Command::new(bin)
        .args(["enumerate", group.to_str().unwrap(), "--max-word-len", "8", "--sigma", "sign", "-o"])
        .arg(&spec)
        .stderr(std::process::Stdio::null())
        .status()
        .unwrap();
    ensure(status.success(), || format!("enumerate exited {status}"))?;

    let memory = gamma2(8, Character::Sign);
    let read = read_spectrum(&spec).map_err(|e| e.to_string())?;
    ensure(read == memory, || "read spectrum differs from enumeration".into())?;

    let points = [Complex64::new(2.0, 0.0), Complex64::new(3.0, 0.0), Complex64::new(2.0, 5.0)];
    let out = Command::new(bin)
        .arg("zeta")
        .arg(&spec)
        .args(points.iter().flat_map(|s| ["--s".to_string(), format!("{},{}", s.re, s.im)]))
        .args(["--format", "table"])
        .output()
        .unwrap();
    ensure(out.status.success(), || "zeta failed".into())?;
    let text = String::from_utf8(out.stdout).unwrap();
    for (s, row) in points.iter().zip(text.lines().skip(1)) {
        let p = ZetaParams::classical(*s);
        let mem = log_zeta(&p, &memory).unwrap();
        ensure(log_zeta(&p, &read).unwrap() == mem, || format!("s={s}: library values differ"))?;
        ensure(row.contains(&format_complex(mem.value)), || format!("s={s}: cli row {row}"))?;
    }

    selberg::io::write_spectrum(&read, &rewrite).map_err(|e| e.to_string())?;
    let a = std::fs::read(&spec).unwrap();
    let b = std::fs::read(&rewrite).unwrap();
    ensure(a == b && spectrum_to_string(&read).as_bytes() == a.as_slice(), || "rewrite not byte-identical".into())?;
    Ok(format!("{} bytes rewritten identically; zeta bit-identical at 3 points", a.len()))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("cohomology identity grid", identity_grid),
        ("cohomology spot values", spot_values),
        ("Γ(2) oracle equivalence at N=8", oracle_equivalence),
        ("shortest geodesic", shortest_geodesic),
        ("zeta equivalence and tail bound", zeta_equivalence),
        ("log-derivative check", log_derivative_check),
        ("order formula", order_formula),
        ("CLI round trip", cli_round_trip),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
