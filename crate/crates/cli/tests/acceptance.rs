//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the lines are always printed; exits non-zero if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::Value;

use plethysm_core::characters::{character_table, inner_product, irreducible_character, sqrt_count};
use plethysm_core::ehrhart::{degree_formula, fresh_sample_check, parity_check};
use plethysm_core::fixed::fiber_check;
use plethysm_core::matrix::DEFAULT_MAX_MATRICES;
use plethysm_core::orbits::{
    foulkes_table, m2_lambda, m2_sign_check, n_c, orbit_classes, stabilizer_inner_product,
    transpose_fixed_decomposition, DEFAULT_MAX_ORBIT,
};
use plethysm_core::{
    n_class_function, oracle_sum, partitions_of, plethysm_sum, ClassFunction, EhrhartFits,
    FitOptions, Partition, Permutation,
};

type Check = Result<String, String>;

fn bin(args: &[&str]) -> (Option<i32>, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_plethysm"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code(), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn int(k: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

/// Partitions of `n`, counted by a recursion on the largest part.
fn count_partitions(n: usize, max_part: usize, odd_only: bool) -> i64 {
    if n == 0 {
        return 1;
    }
    (1..=max_part.min(n))
        .filter(|p| !odd_only || p % 2 == 1)
        .map(|p| count_partitions(n - p, p, odd_only))
        .sum()
}

fn example_three_three() -> Check {
    let (code, out) = bin(&["oracle", "--lambda", "3", "--m", "3", "--full", "--format", "json"]);
    ensure(code == Some(0), || format!("oracle exit {code:?}"))?;
    let v: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    let coeffs = v["coefficients"].as_object().ok_or("no coefficients")?;
    let expected = ["[9]", "[7,2]", "[6,3]", "[5,2,2]", "[4,4,1]"];
    ensure(
        coeffs.len() == 5 && expected.iter().all(|k| coeffs.get(*k) == Some(&Value::from(1))),
        || format!("oracle gave {coeffs:?}"),
    )?;
    let (code, out) = bin(&["sum", "--lambda", "3", "--m", "3"]);
    ensure(code == Some(0) && out.trim() == "5", || format!("sum gave {out:?}"))?;
    let (code, out) = bin(&["classes", "--n", "3", "--m", "3", "--format", "json"]);
    ensure(code == Some(0), || format!("classes exit {code:?}"))?;
    let v: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    let fixed = v
        .as_array()
        .ok_or("classes is not a list")?
        .iter()
        .filter(|c| c["transpose_fixed"] == true)
        .count();
    ensure(fixed == 5, || format!("{fixed} transpose-fixed classes"))?;
    Ok("s_9 + s_72 + s_63 + s_522 + s_441; sum 5; 5 transpose-fixed classes".into())
}

fn oracle_cross_validation() -> Check {
    let mut pairs = 0;
    let grid = (1..=4)
        .flat_map(|n| (1..=3).map(move |m| (n, m)))
        .chain((1..=3).map(|n| (n, 4)))
        .chain((5..=6).map(|m| (2, m)));
    for (n, m) in grid {
        for lambda in partitions_of(n) {
            let a = oracle_sum(&lambda, m).map_err(|e| e.to_string())?;
            let b = plethysm_sum(&lambda, m as u64).map_err(|e| e.to_string())?;
            ensure(a == b, || format!("{lambda}, m={m}: oracle {a}, character route {b}"))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} (lambda, m) pairs agree"))
}

fn m2_corollary() -> Check {
    for n in 1..=10 {
        let n2 = n_class_function(n, 2);
        let t = inner_product(&ClassFunction::trivial(n), &n2).map_err(|e| e.to_string())?;
        let s = inner_product(&ClassFunction::sign(n), &n2).map_err(|e| e.to_string())?;
        let p = count_partitions(n, n, false);
        let odd = count_partitions(n, n, true);
        ensure(t == int(p) && s == int(odd), || {
            format!("n={n}: <1,N^2>={t} vs {p}, <sgn,N^2>={s} vs {odd}")
        })?;
    }
    for n in 1..=8 {
        let report = m2_sign_check(n, DEFAULT_MAX_MATRICES).map_err(|e| e.to_string())?;
        ensure(report.passed(), || report.failures.join("; "))?;
        ensure(report.rows.len() as i64 == count_partitions(n, n, false), || {
            format!("#T({n},2) = {}", report.rows.len())
        })?;
        // the sign rule and the bijection, recomputed from the per-class functions
        let mut labels = BTreeSet::new();
        for d in transpose_fixed_decomposition(n, 2, DEFAULT_MAX_MATRICES).map_err(|e| e.to_string())? {
            let lambda_c = m2_lambda(&d.class).map_err(|e| e.to_string())?;
            let s = inner_product(&ClassFunction::sign(n), &d.n_c).map_err(|e| e.to_string())?;
            let expect = if lambda_c.parts().iter().all(|p| p % 2 == 1) { 1 } else { 0 };
            ensure(s == int(expect), || format!("lambda_C = {lambda_c}: <sgn,N^C> = {s}"))?;
            labels.insert(lambda_c);
        }
        ensure(labels == partitions_of(n).into_iter().collect(), || {
            format!("n={n}: lambda_C is not a bijection onto partitions")
        })?;
    }
    Ok("<1,N^2> = p(n), <sgn,N^2> = odd partitions for n <= 10; #T(n,2) = p(n) and sign rule for n <= 8".into())
}

fn fits(n: usize) -> Result<EhrhartFits, String> {
    EhrhartFits::compute(n, &FitOptions::default()).map_err(|e| e.to_string())
}

fn ehrhart_structure() -> Check {
    let opts = FitOptions::default();
    let mut fitted = 0;
    for n in 1..=4 {
        for (rho, q) in fits(n)?.iter() {
            ensure(q.degree() == degree_formula(rho), || {
                format!("{rho}: fitted degree {}, formula {}", q.degree(), degree_formula(rho))
            })?;
            let r = fresh_sample_check(rho, q, &opts);
            ensure(r.passed(), || r.failure.clone().unwrap_or_default())?;
            fitted += 1;
        }
    }
    let mut parity = 0;
    for n in 1..=30 {
        for rho in partitions_of(n) {
            ensure(parity_check(&rho), || format!("parity fails at {rho}"))?;
            parity += 1;
        }
    }
    Ok(format!("{fitted} fits match degree formula and fresh samples; parity holds for {parity} cycle types"))
}

fn reciprocity() -> Check {
    let mut checked = 0;
    for n in 1..=4usize {
        let f = fits(n)?;
        for (rho, q) in f.iter() {
            let eps = rho.eps() as i64;
            let sign = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 }
                * if (n - 1) % 2 == 0 { 1 } else { eps };
            for m in 0..=10i64 {
                let lhs = q.evaluate(m);
                let rhs = int(sign) * q.evaluate(-m - n as i64);
                ensure(lhs == rhs, || format!("{rho}, m={m}: {lhs} vs {rhs}"))?;
                checked += 1;
            }
            for m in -(n as i64) + 1..=-1 {
                ensure(q.evaluate(m).is_zero(), || format!("{rho}: N^{m} != 0"))?;
            }
        }
    }
    Ok(format!("{checked} reciprocity evaluations, vanishing on -n < m < 0"))
}

fn fibers() -> Check {
    let mut checked = 0;
    for n in 1..=8usize {
        for m in 1..=(8 / n) as u64 {
            // every σ where S_n is small; one per cycle type otherwise
            let sigmas: Vec<Permutation> = if n <= 4 {
                Permutation::all(n).collect()
            } else {
                partitions_of(n).iter().map(Permutation::representative).collect()
            };
            for sigma in sigmas {
                let r = fiber_check(n, m, &sigma).map_err(|e| e.to_string())?;
                ensure(r.passed(), || r.failure.clone().unwrap_or_default())?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (n, m, sigma) cases with nm <= 8"))
}

fn theta() -> Check {
    for k in 1..=6 {
        let table = character_table(k).map_err(|e| e.to_string())?;
        for rho in partitions_of(k) {
            let roots = sqrt_count(&Permutation::representative(&rho)).map_err(|e| e.to_string())?;
            let sum: i64 = table
                .partitions()
                .iter()
                .map(|nu| table.value(nu, &rho).unwrap_or(0))
                .sum();
            ensure(roots as i64 == sum, || format!("k={k}, rho={rho}: {roots} vs {sum}"))?;
        }
    }
    Ok("square-root counts equal character sums for k <= 6".into())
}

fn orbit_identities() -> Check {
    let mut classes_seen = 0;
    let mut asymmetric = 0;
    for n in 1..=4 {
        for m in 1..=3 {
            let decomposition =
                transpose_fixed_decomposition(n, m, DEFAULT_MAX_MATRICES).map_err(|e| e.to_string())?;
            let mut sum = ClassFunction::constant(n, 0);
            for d in &decomposition {
                sum = sum.add(&d.n_c).map_err(|e| e.to_string())?;
            }
            ensure(sum == n_class_function(n, m), || format!("n={n}, m={m}: sum of N^C != N^m"))?;
            for class in orbit_classes(n, m, DEFAULT_MAX_MATRICES).map_err(|e| e.to_string())? {
                classes_seen += 1;
                let direct = n_c(&class, DEFAULT_MAX_ORBIT).map_err(|e| e.to_string())?;
                let trivial = inner_product(&ClassFunction::trivial(n), &direct).map_err(|e| e.to_string())?;
                let expect = if class.transpose_fixed { 1 } else { 0 };
                if !class.transpose_fixed {
                    asymmetric += 1;
                }
                ensure(trivial == int(expect), || {
                    format!("<1, N^C> = {trivial} for\n{}", class.canonical_rep)
                })?;
                for lambda in partitions_of(n) {
                    let chi = irreducible_character(&lambda).map_err(|e| e.to_string())?;
                    let ip = inner_product(&chi, &direct).map_err(|e| e.to_string())?;
                    let via_stab = stabilizer_inner_product(&class, &lambda).map_err(|e| e.to_string())?;
                    ensure(ip == via_stab, || format!("{lambda}: {ip} vs {via_stab}"))?;
                }
            }
        }
    }
    Ok(format!(
        "{classes_seen} classes over n <= 4, m <= 3; {asymmetric} not transpose-fixed"
    ))
}

fn asymptotics() -> Check {
    for n in 1..=4usize {
        let f = fits(n)?;
        let report = f.asymptotics_check().map_err(|e| e.to_string())?;
        ensure(report.passed(), || report.failure.clone().unwrap_or_default())?;
        // recompute the leading-coefficient identity directly
        let top = n * (n - 1) / 2;
        let identity = f.get(&Partition::column(n)).ok_or("no identity fit")?;
        let n_fact: BigInt = (1..=n).map(BigInt::from).product();
        for lambda in partitions_of(n) {
            let chi = irreducible_character(&lambda).map_err(|e| e.to_string())?;
            let sum = f.sum_quasipolynomial(&lambda).map_err(|e| e.to_string())?;
            let ratio = chi.at_identity() / BigRational::from_integer(n_fact.clone());
            for r in 0..sum.period() * identity.period() {
                ensure(sum.coefficient(r, top) == &ratio * identity.coefficient(r, top), || {
                    format!("n={n}, {lambda}: leading coefficient at residue {r}")
                })?;
            }
        }
    }
    Ok("leading terms chi(1)/n! * Vol and residual degree bound hold for n <= 4".into())
}

fn documented_skip() -> Check {
    let (code, out) = bin(&["paper-suite", "--only", "skip"]);
    ensure(code == Some(0), || format!("paper-suite exit {code:?}"))?;
    ensure(
        out.lines().any(|l| l.starts_with("[SKIP]") && l.contains("not reproducible at desk scale")),
        || format!("no documented skip in {out:?}"),
    )?;
    Ok("paper-suite prints the documented skip; the n <= 4 fits stand in (criteria 4, 5, 9)".into())
}

fn foulkes() -> Check {
    let table = foulkes_table(5, 5, DEFAULT_MAX_MATRICES);
    for c in &table.cells {
        ensure(c.orbit_count.is_some() && c.character_count.is_some(), || {
            format!("({},{}) absent", c.n, c.m)
        })?;
        ensure(c.routes_agree(), || {
            format!("({},{}): orbit {:?} vs character {:?}", c.n, c.m, c.orbit_count, c.character_count)
        })?;
    }
    let three = table.get(3, 3).and_then(|c| c.value());
    ensure(three == Some(5), || format!("#T(3,3) = {three:?}"))?;
    let status = if table.violations.is_empty() {
        "inequality holds in every in-guard pair".to_string()
    } else {
        format!("inequality FAILS at {:?} (reported, not asserted)", table.violations)
    };
    Ok(format!("25 cells, routes agree; {status}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Check); 11] = [
        ("1 s_3[s_3] reproduction", Duration::from_secs(5), example_three_three),
        ("2 oracle = <chi^lambda, N^m>", Duration::from_secs(120), oracle_cross_validation),
        ("3 m = 2 corollary and sign rule", Duration::from_secs(120), m2_corollary),
        ("4 Ehrhart degree, samples, parity", Duration::from_secs(300), ehrhart_structure),
        ("5 reciprocity", Duration::from_secs(300), reciprocity),
        ("6 square-root fibers", Duration::from_secs(60), fibers),
        ("7 square-root character identity", Duration::from_secs(60), theta),
        ("8 orbit identities", Duration::from_secs(300), orbit_identities),
        ("9 asymptotics", Duration::from_secs(300), asymptotics),
        ("10 documented skip of the n = 6 example", Duration::from_secs(60), documented_skip),
        ("11 transpose-fixed class table", Duration::from_secs(300), foulkes),
    ];
    let mut failed = 0;
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > limit => {
                Err(format!("{detail} (took {elapsed:.1?}, limit {limit:?})"))
            }
            other => other,
        };
        match result {
            Ok(detail) => println!("PASS  {name} [{elapsed:.2?}]: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name} [{elapsed:.2?}]: {why}");
            }
        }
    }
    println!("{} of 11 criteria passed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
