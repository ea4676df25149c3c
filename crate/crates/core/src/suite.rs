//! The desk-scale verification battery: every structural claim checked by at
//! least two independent routes, one line per claim.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::characters::{
    character_table, inner_product, irreducible_character, theta_identity_check, ClassFunction,
};
use crate::ehrhart::{fresh_sample_check, parity_check, EhrhartFits, FitOptions};
use crate::error::Result;
use crate::fixed::{fiber_check, n_class_function, plethysm_sum};
use crate::matrix::{IntMatrix, DEFAULT_MAX_MATRICES};
use crate::orbits::{
    canonical_form, foulkes_table, m2_sign_check, n_c, orbit_classes, remark_search,
    stabilizer_inner_product, transpose_fixed_decomposition, DEFAULT_MAX_ORBIT,
};
use crate::partition::{partitions_of, Partition};
use crate::permutation::Permutation;
use crate::symfunc::{oracle_sum, plethysm_schur};

/// Names accepted by `--only`, in running order.
pub const GROUPS: &[&str] = &[
    "example", "oracle", "m2", "ehrhart", "reciprocity", "fiber", "theta", "orbits",
    "asymptotics", "skip", "foulkes", "remark",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteLine {
    pub group: &'static str,
    pub claim: String,
    pub status: Status,
    pub detail: String,
}

impl fmt::Display for SuiteLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {:<12} {}: {}", self.status, self.group, self.claim, self.detail)
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Groups to run; empty means all.
    pub only: Vec<String>,
    /// Caps the `n` range of every group.
    pub n_max: Option<usize>,
    /// Caps `nm` for the square-root fiber check.
    pub nm_max: usize,
    /// Raises the square-root identity to `k ≤ 8`.
    pub extended: bool,
    pub max_matrices: u64,
    pub fit: FitOptions,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            only: Vec::new(),
            n_max: None,
            nm_max: 8,
            extended: false,
            max_matrices: DEFAULT_MAX_MATRICES,
            fit: FitOptions::default(),
        }
    }
}

impl SuiteConfig {
    fn wants(&self, group: &str) -> bool {
        self.only.is_empty() || self.only.iter().any(|g| g == group)
    }

    fn cap(&self, n: usize) -> usize {
        self.n_max.map_or(n, |k| k.min(n))
    }
}

struct Lines(Vec<SuiteLine>);

impl Lines {
    fn push(&mut self, group: &'static str, claim: impl Into<String>, outcome: Result<Outcome>) {
        let claim = claim.into();
        let (status, detail) = match outcome {
            Ok(Outcome { ok: true, detail }) => (Status::Pass, detail),
            Ok(Outcome { ok: false, detail }) => (Status::Fail, detail),
            Err(e) => (Status::Fail, format!("error: {e}")),
        };
        self.0.push(SuiteLine {
            group,
            claim,
            status,
            detail,
        });
    }
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome {
        ok,
        detail: detail.into(),
    })
}

fn nat(k: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

/// Runs the selected groups; the order of lines is fixed.
pub fn run(config: &SuiteConfig) -> Vec<SuiteLine> {
    let mut lines = Lines(Vec::new());
    if config.wants("example") {
        lines.push("example", "s_3[s_3] has five constituents", example_three_three(config));
    }
    if config.wants("oracle") {
        lines.push("oracle", "oracle sum = <chi^lambda, N^m>", oracle_cross_check(config));
    }
    if config.wants("m2") {
        let top = config.cap(10);
        lines.push(
            "m2",
            format!("<1,N^2> = p(n) and <sgn,N^2> = odd-part count, n <= {top}"),
            m2_characters(top),
        );
        for n in 1..=config.cap(8) {
            lines.push(
                "m2",
                format!("T({n},2) classification and sign rule"),
                m2_sign_check(n, config.max_matrices).map(|r| Outcome {
                    ok: r.passed(),
                    detail: if r.passed() {
                        format!(
                            "{} classes, <1,N^2> = {}, <sgn,N^2> = {}",
                            r.rows.len(),
                            r.trivial_total,
                            r.sign_total
                        )
                    } else {
                        r.failures.join("; ")
                    },
                }),
            );
        }
    }
    let fits_wanted = ["ehrhart", "reciprocity", "asymptotics"]
        .iter()
        .any(|g| config.wants(g));
    let fits: Vec<(usize, Result<EhrhartFits>)> = if fits_wanted {
        (1..=config.cap(4))
            .map(|n| (n, EhrhartFits::compute(n, &config.fit)))
            .collect()
    } else {
        Vec::new()
    };
    if config.wants("ehrhart") {
        for (n, f) in &fits {
            lines.push(
                "ehrhart",
                format!("N_rho fits for rho of {n}: degree formula and fresh samples"),
                fit_structure(f, &config.fit),
            );
        }
        let top = config.cap(30);
        let bad: Vec<String> = (1..=top)
            .flat_map(partitions_of)
            .filter(|rho| !parity_check(rho))
            .map(|rho| rho.to_string())
            .collect();
        lines.push(
            "ehrhart",
            format!("parity of deg N_rho, all rho of n <= {top}"),
            outcome(bad.is_empty(), if bad.is_empty() { "holds".into() } else { bad.join(" ") }),
        );
    }
    if config.wants("reciprocity") {
        for (n, f) in &fits {
            lines.push(
                "reciprocity",
                format!("N^m = sign * N^(-m-n) and N^m = 0 on -n < m < 0, n = {n}"),
                f.as_ref().map_err(Clone::clone).map(|f| {
                    let r = f.reciprocity_check(0..=10);
                    Outcome {
                        ok: r.passed(),
                        detail: r
                            .failure
                            .unwrap_or_else(|| format!("{} evaluations", r.checked)),
                    }
                }),
            );
        }
    }
    if config.wants("fiber") {
        lines.push(
            "fiber",
            format!("square-root fibers, nm <= {}", config.nm_max),
            fibers(config),
        );
    }
    if config.wants("theta") {
        let k_max = if config.extended { 8 } else { 6 };
        for k in 1..=k_max {
            lines.push(
                "theta",
                format!("#square roots = sum of characters in S_{k}"),
                theta_identity_check(k).map(|r| Outcome {
                    ok: r.passed(),
                    detail: match r.first_failure {
                        Some(rho) => format!("fails at {rho}"),
                        None => format!("{} classes", r.rows.len()),
                    },
                }),
            );
        }
    }
    if config.wants("orbits") {
        for n in 1..=config.cap(4) {
            for m in 1..=3 {
                lines.push(
                    "orbits",
                    format!("N^m = sum of N^C and class identities, n = {n}, m = {m}"),
                    orbit_identities(n, m, config),
                );
            }
        }
    }
    if config.wants("asymptotics") {
        for (n, f) in &fits {
            lines.push(
                "asymptotics",
                format!("leading terms of <chi^lambda, N^m>, n = {n}"),
                f.as_ref().map_err(Clone::clone).and_then(|f| {
                    let r = f.asymptotics_check()?;
                    Ok(Outcome {
                        ok: r.passed(),
                        detail: r.failure.unwrap_or_else(|| {
                            format!("{} characters, identity volume {:?}", r.rows.len(), r
                                .volume
                                .iter()
                                .map(ToString::to_string)
                                .collect::<Vec<_>>())
                        }),
                    })
                }),
            );
        }
    }
    if config.wants("skip") {
        lines.0.push(SuiteLine {
            group: "skip",
            claim: "degree-15 quasipolynomial for lambda = [6]".into(),
            status: Status::Skip,
            detail: "not reproducible at desk scale: fitting N_rho for n = 6 needs exact counts \
                     at (n-1)^2 + 1 = 26 points per residue for up to 12 residues, far beyond \
                     this enumeration strategy; the n <= 4 ehrhart, reciprocity and asymptotics \
                     lines stand in its place"
                .into(),
        });
    }
    if config.wants("foulkes") {
        let n_max = config.cap(5);
        lines.push("foulkes", format!("#T(n,m) table, n, m <= {n_max}"), foulkes(n_max, config));
    }
    if config.wants("remark") {
        let mut found = Vec::new();
        let result: Result<()> = (|| {
            for n in 1..=config.cap(4) {
                for m in 1..=3 {
                    let r = remark_search(n, m, config.max_matrices)?;
                    if !r.not_transpose_fixed.is_empty() || !r.negative_sign.is_empty() {
                        found.push(format!(
                            "(n,m)=({n},{m}): {} non-transpose-fixed, {} with <sgn,N^C> < 0",
                            r.not_transpose_fixed.len(),
                            r.negative_sign.len()
                        ));
                    }
                }
            }
            Ok(())
        })();
        lines.push(
            "remark",
            "search for C != C^T and <sgn,N^C> = -1 (reported, not asserted)",
            result.map(|()| Outcome {
                ok: true,
                detail: if found.is_empty() {
                    "none within n <= 4, m <= 3".into()
                } else {
                    found.join("; ")
                },
            }),
        );
    }
    lines.0
}

fn example_three_three(config: &SuiteConfig) -> Result<Outcome> {
    let three = Partition::row(3);
    let pleth = plethysm_schur(&three, 3)?;
    let expected: Vec<Partition> = ["9", "7,2", "6,3", "5,2,2", "4,4,1"]
        .iter()
        .map(|s| s.parse().expect("valid partitions"))
        .collect();
    let terms_ok = pleth.coefficients.len() == 5
        && expected
            .iter()
            .all(|nu| pleth.get(nu) == BigUint::from(1u32));
    let sum = plethysm_sum(&three, 3)?;
    let classes = orbit_classes(3, 3, config.max_matrices)?;
    let fixed: Vec<&IntMatrix> = classes
        .iter()
        .filter(|c| c.transpose_fixed)
        .map(|c| &c.canonical_rep)
        .collect();
    let listed = [
        [3, 0, 0, 0, 3, 0, 0, 0, 3],
        [3, 0, 0, 0, 2, 1, 0, 1, 2],
        [2, 1, 0, 1, 1, 1, 0, 1, 2],
        [2, 1, 0, 1, 0, 2, 0, 2, 1],
        [1, 1, 1, 1, 1, 1, 1, 1, 1],
    ];
    let mut reps = listed
        .iter()
        .map(|e| canonical_form(&IntMatrix::from_row_major(3, e.to_vec())?))
        .collect::<Result<Vec<_>>>()?;
    reps.sort();
    let reps_ok = fixed.len() == 5 && fixed.iter().zip(&reps).all(|(a, b)| *a == b);
    outcome(
        terms_ok && sum == BigUint::from(5u32) && reps_ok,
        format!(
            "oracle terms {}, character sum {sum}, transpose-fixed classes {}",
            pleth
                .coefficients
                .iter()
                .map(|(nu, a)| format!("{a}*s{nu}"))
                .collect::<Vec<_>>()
                .join(" + "),
            fixed.len()
        ),
    )
}

/// The `(n, m)` grid on which the oracle is compared with the character route.
pub fn oracle_grid(n_cap: Option<usize>) -> Vec<(usize, usize)> {
    let mut grid = Vec::new();
    for n in 1..=4 {
        for m in 1..=3 {
            grid.push((n, m));
        }
    }
    for n in 1..=3 {
        grid.push((n, 4));
    }
    for m in 5..=6 {
        grid.push((2, m));
    }
    grid.retain(|&(n, _)| n_cap.map_or(true, |k| n <= k));
    grid
}

fn oracle_cross_check(config: &SuiteConfig) -> Result<Outcome> {
    let mut checked = 0;
    for (n, m) in oracle_grid(config.n_max) {
        for lambda in partitions_of(n) {
            let a = oracle_sum(&lambda, m)?;
            let b = plethysm_sum(&lambda, m as u64)?;
            checked += 1;
            if a != b {
                return outcome(false, format!("lambda = {lambda}, m = {m}: oracle {a}, N^m {b}"));
            }
        }
    }
    outcome(true, format!("{checked} pairs agree"))
}

fn m2_characters(top: usize) -> Result<Outcome> {
    for n in 1..=top {
        let n2 = n_class_function(n, 2);
        let parts = partitions_of(n);
        let p = parts.len();
        let odd = parts.iter().filter(|q| q.all_parts_odd()).count();
        let t = inner_product(&ClassFunction::trivial(n), &n2)?;
        let s = inner_product(&ClassFunction::sign(n), &n2)?;
        if t != nat(p) || s != nat(odd) {
            return outcome(false, format!("n = {n}: <1,N^2> = {t} vs {p}, <sgn,N^2> = {s} vs {odd}"));
        }
    }
    outcome(true, format!("n = 1..{top}"))
}

fn fit_structure(fits: &Result<EhrhartFits>, opts: &FitOptions) -> Result<Outcome> {
    let fits = fits.as_ref().map_err(Clone::clone)?;
    let mut summary = Vec::new();
    for (rho, q) in fits.iter() {
        let r = fresh_sample_check(rho, q, opts);
        if !r.passed() {
            return outcome(false, r.failure.unwrap_or_default());
        }
        summary.push(format!("{rho}: deg {} period {}", q.degree(), q.period()));
    }
    outcome(true, summary.join(", "))
}

fn fibers(config: &SuiteConfig) -> Result<Outcome> {
    let mut checked = 0;
    for n in 1..=config.cap(config.nm_max) {
        for m in 1..=(config.nm_max / n) as u64 {
            for rho in partitions_of(n) {
                let r = fiber_check(n, m, &Permutation::representative(&rho))?;
                checked += 1;
                if !r.passed() {
                    return outcome(false, r.failure.unwrap_or_default());
                }
            }
        }
    }
    outcome(true, format!("{checked} (n, m, rho) triples, one representative per cycle type"))
}

fn orbit_identities(n: usize, m: u64, config: &SuiteConfig) -> Result<Outcome> {
    let decomposition = transpose_fixed_decomposition(n, m, config.max_matrices)?;
    let classes = orbit_classes(n, m, config.max_matrices)?;
    let mut sum = ClassFunction::constant(n, 0);
    let one = nat(1);
    let table = character_table(n)?;
    let trivial = ClassFunction::trivial(n);
    let characters = partitions_of(n)
        .into_iter()
        .map(|lambda| irreducible_character(&lambda).map(|chi| (lambda, chi)))
        .collect::<Result<Vec<_>>>()?;
    for d in &decomposition {
        sum = sum.add(&d.n_c)?;
        if inner_product(&trivial, &d.n_c)? != one {
            return outcome(false, format!("<1, N^C> != 1 for\n{}", d.class.canonical_rep));
        }
    }
    if sum != n_class_function(n, m) {
        return outcome(false, "sum of N^C differs from N^m");
    }
    let mut asymmetric = 0;
    for class in &classes {
        let direct = n_c(class, DEFAULT_MAX_ORBIT)?;
        if !class.transpose_fixed {
            asymmetric += 1;
            if inner_product(&trivial, &direct)? != BigRational::zero() {
                return outcome(false, format!("<1, N^s> != 0 for\n{}", class.canonical_rep));
            }
        }
        for (lambda, chi) in &characters {
            let ip = inner_product(chi, &direct)?;
            let dim = nat(table.value(lambda, &Partition::column(n)).unwrap_or(0) as usize);
            if ip > dim || ip < -dim.clone() {
                return outcome(false, format!("|<chi^{lambda}, N^C>| > chi(1) for\n{}", class.canonical_rep));
            }
            if stabilizer_inner_product(class, lambda)? != ip {
                return outcome(false, format!("stabilizer route differs at {lambda} for\n{}", class.canonical_rep));
            }
        }
    }
    outcome(
        true,
        format!(
            "{} classes, {} transpose-fixed, {asymmetric} not",
            classes.len(),
            decomposition.len()
        ),
    )
}

fn foulkes(n_max: usize, config: &SuiteConfig) -> Result<Outcome> {
    let table = foulkes_table(n_max, n_max as u64, config.max_matrices);
    let absent = table
        .cells
        .iter()
        .filter(|c| c.orbit_count.is_none() || c.character_count.is_none())
        .count();
    outcome(
        table.routes_agree(),
        format!(
            "orbit and character routes {}; {} cells absent; inequality violations: {}",
            if table.routes_agree() { "agree" } else { "DISAGREE" },
            absent,
            if table.violations.is_empty() {
                "none".to_string()
            } else {
                format!("{:?}", table.violations)
            }
        ),
    )
}
