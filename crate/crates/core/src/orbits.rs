//! Row/column permutation classes of `M(n, m)`, the transpose-fixed classes
//! `T(n, m)/∼`, and the per-class functions `N^C`.
//!
//! Canonical forms are lexicographic minima over `{gAh⁻¹}`. For a fixed row
//! order the best column order is simply the columns sorted as vectors, so the
//! search runs over row orders only: rows are picked greedily by their
//! refined (cell-sorted) image, branches are cut as soon as their prefix
//! exceeds the best matrix found, and automorphisms discovered at equal leaves
//! prune candidate rows lying in an already explored orbit.

use std::collections::{BTreeMap, HashSet, VecDeque};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::characters::{character_table, inner_product, irreducible_character, ClassFunction};
use crate::error::{guard, Error, Result};
use crate::fixed::{count_fixed, for_each_fixed, n_class_function};
use crate::matrix::{biguint_to_u64, enumerate_m, IntMatrix};
use crate::partition::{count_odd_part_partitions, partition_count, partitions_of, Partition};
use crate::permutation::{factorial, Permutation};

/// Largest dimension accepted by [`canonical_form`].
pub const MAX_CANONICAL_DEGREE: usize = 10;

/// Default cap on the size of a materialized orbit.
pub const DEFAULT_MAX_ORBIT: u64 = 1_000_000;

/// Largest dimension for the double sum over `S_n × S_n`.
pub const MAX_STABILIZER_SUM_DEGREE: usize = 4;

/// Largest `n` for the `m = 2` classification check.
pub const MAX_M2_DEGREE: usize = 8;

/// An `(S_n × S_n)`-orbit of `M(n, m)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitClass {
    pub canonical_rep: IntMatrix,
    pub orbit_size: u64,
    pub stabilizer_size: u64,
    pub transpose_fixed: bool,
}

impl OrbitClass {
    /// The class containing `a`.
    pub fn of(a: &IntMatrix) -> Result<Self> {
        check_dim(a.dim())?;
        let canonical_rep = canonicalize(a);
        Ok(Self::from_canonical(canonical_rep))
    }

    fn from_canonical(canonical_rep: IntMatrix) -> Self {
        let n = canonical_rep.dim();
        let stabilizer_size = stabilizer_order(&canonical_rep);
        let group = factorial(n) * factorial(n);
        let transpose_fixed = canonicalize(&canonical_rep.transpose()) == canonical_rep;
        Self {
            canonical_rep,
            orbit_size: group / stabilizer_size,
            stabilizer_size,
            transpose_fixed,
        }
    }

    pub fn dim(&self) -> usize {
        self.canonical_rep.dim()
    }

    /// The common row sum `m`.
    pub fn m(&self) -> u64 {
        self.canonical_rep.row_sums().first().copied().unwrap_or(0)
    }
}

fn check_dim(n: usize) -> Result<()> {
    if n > MAX_CANONICAL_DEGREE {
        return Err(guard("canonical form dimension", n, MAX_CANONICAL_DEGREE));
    }
    Ok(())
}

/// The row-major lexicographic minimum of `{gAh⁻¹ : g, h ∈ S_n}`.
pub fn canonical_form(a: &IntMatrix) -> Result<IntMatrix> {
    check_dim(a.dim())?;
    Ok(canonicalize(a))
}

fn canonicalize(a: &IntMatrix) -> IntMatrix {
    let n = a.dim();
    if n == 0 {
        return a.clone();
    }
    let mut search = Canonizer {
        a,
        n,
        best: None,
        best_order: Vec::new(),
        generators: Vec::new(),
    };
    let cells = vec![(0..n).collect::<Vec<_>>()];
    search.descend(&mut Vec::new(), &mut Vec::new(), &cells);
    let rows = search.best.expect("the search reaches at least one leaf");
    IntMatrix::from_rows(rows).expect("square by construction")
}

/// Columns grouped into ordered cells of columns that agree on every chosen row.
type Cells = Vec<Vec<usize>>;

/// Row `r` as it appears once the columns are sorted within each cell.
fn refined_row(a: &IntMatrix, r: usize, cells: &Cells) -> Vec<u64> {
    let mut out = Vec::with_capacity(a.dim());
    for cell in cells {
        let start = out.len();
        out.extend(cell.iter().map(|&c| a.get(r, c)));
        out[start..].sort_unstable();
    }
    out
}

fn split_cells(a: &IntMatrix, r: usize, cells: &Cells) -> Cells {
    let mut out = Vec::with_capacity(cells.len() + 1);
    for cell in cells {
        let mut sorted = cell.clone();
        sorted.sort_by_key(|&c| (a.get(r, c), c));
        let mut group: Vec<usize> = Vec::new();
        for c in sorted {
            if let Some(&last) = group.last() {
                if a.get(r, last) != a.get(r, c) {
                    out.push(std::mem::take(&mut group));
                }
            }
            group.push(c);
        }
        out.push(group);
    }
    out
}

struct Canonizer<'a> {
    a: &'a IntMatrix,
    n: usize,
    best: Option<Vec<Vec<u64>>>,
    best_order: Vec<usize>,
    /// Row parts of automorphisms, as image vectors.
    generators: Vec<Vec<usize>>,
}

impl Canonizer<'_> {
    fn descend(&mut self, order: &mut Vec<usize>, path: &mut Vec<Vec<u64>>, cells: &Cells) {
        let depth = order.len();
        if depth == self.n {
            self.leaf(order, path);
            return;
        }
        let refined: Vec<(usize, Vec<u64>)> = (0..self.n)
            .filter(|r| !order.contains(r))
            .map(|r| (r, refined_row(self.a, r, cells)))
            .collect();
        let min_row = refined.iter().map(|(_, v)| v).min().expect("rows remain").clone();
        let candidates: Vec<usize> = refined
            .iter()
            .filter(|(_, v)| *v == min_row)
            .map(|&(r, _)| r)
            .collect();

        path.push(min_row);
        let mut explored: Vec<usize> = Vec::new();
        let mut seen_rows: HashSet<&[u64]> = HashSet::new();
        for r in candidates {
            if self.prefix_exceeds_best(path) {
                break;
            }
            if !seen_rows.insert(self.a.row(r)) {
                continue;
            }
            if !explored.is_empty() && self.same_orbit_as_explored(order, r, &explored) {
                continue;
            }
            explored.push(r);
            order.push(r);
            let next = split_cells(self.a, r, cells);
            self.descend(order, path, &next);
            order.pop();
        }
        path.pop();
    }

    fn prefix_exceeds_best(&self, path: &[Vec<u64>]) -> bool {
        match &self.best {
            Some(best) => path[..] > best[..path.len()],
            None => false,
        }
    }

    /// Whether `r` shares an orbit with an explored candidate under the
    /// automorphisms found so far that fix every chosen row.
    fn same_orbit_as_explored(&self, order: &[usize], r: usize, explored: &[usize]) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for g in &self.generators {
            if order.iter().all(|&x| g[x] == x) {
                for (x, &y) in g.iter().enumerate() {
                    let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                    parent[rx] = ry;
                }
            }
        }
        let root = find(&mut parent, r);
        explored.iter().any(|&e| find(&mut parent, e) == root)
    }

    fn leaf(&mut self, order: &[usize], path: &[Vec<u64>]) {
        match &self.best {
            Some(best) if path == &best[..] => {
                let mut g = vec![0; self.n];
                for (&from, &to) in self.best_order.iter().zip(order) {
                    g[from] = to;
                }
                if g.iter().enumerate().any(|(i, &x)| i != x) {
                    self.generators.push(g);
                }
            }
            Some(best) if path > &best[..] => {}
            _ => {
                self.best = Some(path.to_vec());
                self.best_order = order.to_vec();
            }
        }
    }
}

/// `|{(g, h) : gAh⁻¹ = A}|` for a canonical `A`: the row orders reproducing
/// `A` after column sorting, times the permutations of identical columns.
fn stabilizer_order(canon: &IntMatrix) -> u64 {
    fn count(a: &IntMatrix, used: &mut Vec<bool>, depth: usize, cells: &Cells) -> u64 {
        let n = a.dim();
        if depth == n {
            return 1;
        }
        let target = a.row(depth);
        let mut seen: Vec<&[u64]> = Vec::new();
        let mut total = 0;
        for r in 0..n {
            if used[r] || refined_row(a, r, cells) != target {
                continue;
            }
            // identical rows have isomorphic subtrees
            if seen.contains(&a.row(r)) {
                continue;
            }
            seen.push(a.row(r));
            let copies = (r..n).filter(|&s| !used[s] && a.row(s) == a.row(r)).count() as u64;
            used[r] = true;
            total += copies * count(a, used, depth + 1, &split_cells(a, r, cells));
            used[r] = false;
        }
        total
    }
    let n = canon.dim();
    let row_parts = count(canon, &mut vec![false; n], 0, &vec![(0..n).collect()]);
    let mut column_groups: BTreeMap<Vec<u64>, u64> = BTreeMap::new();
    for j in 0..n {
        let col: Vec<u64> = (0..n).map(|i| canon.get(i, j)).collect();
        *column_groups.entry(col).or_default() += 1;
    }
    let column_part: u64 = column_groups.values().map(|&k| factorial(k as usize)).product();
    row_parts * column_part
}

/// Every orbit of `M(n, m)`, found by canonicalizing each member; sorted by
/// canonical representative.
pub fn orbit_classes(n: usize, m: u64, max_matrices: u64) -> Result<Vec<OrbitClass>> {
    check_dim(n)?;
    let members: Vec<IntMatrix> = enumerate_m(n, m, max_matrices)?.collect();
    let canon: Vec<IntMatrix> = members.par_iter().map(canonicalize).collect();
    let mut sizes: BTreeMap<IntMatrix, u64> = BTreeMap::new();
    for c in canon {
        *sizes.entry(c).or_default() += 1;
    }
    let classes: Vec<(IntMatrix, u64)> = sizes.into_iter().collect();
    classes
        .into_par_iter()
        .map(|(rep, size)| {
            let class = OrbitClass::from_canonical(rep);
            if class.orbit_size != size {
                return Err(Error::Consistency(format!(
                    "orbit of\n{}\nhas {size} members but (n!)^2/|Stab| = {}",
                    class.canonical_rep, class.orbit_size
                )));
            }
            Ok(class)
        })
        .collect()
}

/// All members of the orbit, generated from the representative by adjacent
/// row and column transpositions.
pub fn orbit_members(class: &OrbitClass, max_orbit: u64) -> Result<Vec<IntMatrix>> {
    if class.orbit_size > max_orbit {
        return Err(guard("orbit size", class.orbit_size, max_orbit));
    }
    let n = class.dim();
    let mut seen: HashSet<IntMatrix> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(class.canonical_rep.clone());
    queue.push_back(class.canonical_rep.clone());
    while let Some(a) = queue.pop_front() {
        for k in 0..n.saturating_sub(1) {
            let mut r = a.clone();
            r.swap_rows(k, k + 1);
            let mut c = a.clone();
            c.swap_cols(k, k + 1);
            for b in [r, c] {
                if seen.insert(b.clone()) {
                    queue.push_back(b);
                }
            }
        }
    }
    let mut members: Vec<IntMatrix> = seen.into_iter().collect();
    members.sort();
    Ok(members)
}

/// `N^C(ρ) = #{A ∈ C : σ_ρ Aᵀ = A}`, by materializing the orbit.
pub fn n_c(class: &OrbitClass, max_orbit: u64) -> Result<ClassFunction> {
    let members = orbit_members(class, max_orbit)?;
    let n = class.dim();
    Ok(ClassFunction::from_fn(n, |rho| {
        let sigma = Permutation::representative(rho);
        let k = members.iter().filter(|a| a.is_twisted_fixed(&sigma)).count();
        BigRational::from_integer(BigInt::from(k))
    }))
}

/// A transpose-fixed class together with its function `N^C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassDecomposition {
    pub class: OrbitClass,
    pub n_c: ClassFunction,
}

/// `N^m = Σ_C N^C`, computed class by class without materializing orbits:
/// each `σ_ρ`-fixed matrix is canonicalized and credited to its class.
///
/// Only transpose-fixed classes can contain a fixed matrix, so exactly those
/// classes appear.
pub fn transpose_fixed_decomposition(
    n: usize,
    m: u64,
    max_matrices: u64,
) -> Result<Vec<ClassDecomposition>> {
    check_dim(n)?;
    let classes = partitions_of(n);
    let total: BigUint = classes
        .iter()
        .map(|rho| count_fixed(&Permutation::representative(rho), m))
        .sum();
    if total > BigUint::from(max_matrices) {
        return Err(guard("twisted-fixed matrices", total, max_matrices));
    }
    let per_class: Vec<BTreeMap<IntMatrix, u64>> = classes
        .par_iter()
        .map(|rho| {
            let mut counts = BTreeMap::new();
            for_each_fixed(&Permutation::representative(rho), m, |a| {
                *counts.entry(canonicalize(a)).or_default() += 1;
            });
            counts
        })
        .collect();
    let mut table: BTreeMap<IntMatrix, Vec<u64>> = BTreeMap::new();
    for (idx, counts) in per_class.into_iter().enumerate() {
        for (rep, k) in counts {
            table.entry(rep).or_insert_with(|| vec![0; classes.len()])[idx] = k;
        }
    }
    let entries: Vec<(IntMatrix, Vec<u64>)> = table.into_iter().collect();
    entries
        .into_par_iter()
        .map(|(rep, values)| {
            let class = OrbitClass::from_canonical(rep);
            let values = values
                .into_iter()
                .map(|k| BigRational::from_integer(BigInt::from(k)))
                .collect();
            Ok(ClassDecomposition {
                class,
                n_c: ClassFunction::from_values(n, values)?,
            })
        })
        .collect()
}

/// `(1/|Stab|) Σ_{g s^T h⁻¹ = s} χ^λ(gh)` with `s` the canonical representative.
pub fn stabilizer_inner_product(class: &OrbitClass, lambda: &Partition) -> Result<BigRational> {
    let n = class.dim();
    if n > MAX_STABILIZER_SUM_DEGREE {
        return Err(guard("stabilizer double sum degree", n, MAX_STABILIZER_SUM_DEGREE));
    }
    if lambda.size() != n {
        return Err(Error::DegreeMismatch {
            left: lambda.size(),
            right: n,
        });
    }
    let table = character_table(n)?;
    let s = &class.canonical_rep;
    let st = s.transpose();
    let perms: Vec<Permutation> = Permutation::all(n).collect();
    let mut acc = 0i64;
    for g in &perms {
        for h in &perms {
            if &st.permuted(g, h) == s {
                let rho = g.compose(h).cycle_type();
                acc += table.value(lambda, &rho).expect("λ and ρ are partitions of n");
            }
        }
    }
    Ok(BigRational::new(BigInt::from(acc), BigInt::from(class.stabilizer_size)))
}

/// Result of comparing the number of transpose-fixed classes with `⟨1, N^m⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BurnsideReport {
    pub n: usize,
    pub m: u64,
    pub classes: usize,
    pub transpose_fixed: usize,
    pub trivial_inner_product: String,
}

impl BurnsideReport {
    pub fn passed(&self) -> bool {
        self.trivial_inner_product == self.transpose_fixed.to_string()
    }
}

/// The twisted Cauchy–Frobenius count: `#{C : C = Cᵀ} = ⟨1, N^m⟩`.
pub fn burnside_check(n: usize, m: u64, max_matrices: u64) -> Result<BurnsideReport> {
    let classes = orbit_classes(n, m, max_matrices)?;
    let ip = inner_product(&ClassFunction::trivial(n), &n_class_function(n, m))?;
    Ok(BurnsideReport {
        n,
        m,
        classes: classes.len(),
        transpose_fixed: classes.iter().filter(|c| c.transpose_fixed).count(),
        trivial_inner_product: ip.to_string(),
    })
}

/// The sizes of the irreducible block summands of an `m = 2` class, read off
/// from the connected components of its row/column incidence graph.
pub fn m2_lambda(class: &OrbitClass) -> Result<Partition> {
    if class.m() != 2 {
        return Err(Error::NotM2(class.m()));
    }
    if !class.transpose_fixed {
        return Err(Error::Consistency(format!(
            "class of\n{}\nis not transpose-fixed",
            class.canonical_rep
        )));
    }
    Ok(block_sizes(&class.canonical_rep))
}

/// Row counts of the connected components of the bipartite graph joining row
/// `i` to column `j` whenever `A_ij > 0`.
fn block_sizes(a: &IntMatrix) -> Partition {
    let n = a.dim();
    // vertices 0..n are rows, n..2n columns
    let mut parent: Vec<usize> = (0..2 * n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..n {
        for j in 0..n {
            if a.get(i, j) > 0 {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, n + j));
                parent[ri] = rj;
            }
        }
    }
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 0..n {
        *sizes.entry(find(&mut parent, i)).or_default() += 1;
    }
    Partition::from_unsorted(sizes.into_values().collect())
}

/// One class of `T(n, 2)/∼` with its inner products against `1` and `sgn`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct M2Row {
    pub lambda_c: Partition,
    pub trivial: String,
    pub sign: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct M2Report {
    pub n: usize,
    pub rows: Vec<M2Row>,
    pub trivial_total: String,
    pub sign_total: String,
    pub partition_count: String,
    pub odd_part_count: String,
    pub failures: Vec<String>,
}

impl M2Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For each `C ∈ T(n, 2)/∼`: `⟨1, N^C⟩ = 1`, and `⟨sgn, N^C⟩` is 1 exactly
/// when every part of `λ_C` is odd; `C ↦ λ_C` is a bijection onto the
/// partitions of `n`.
pub fn m2_sign_check(n: usize, max_matrices: u64) -> Result<M2Report> {
    if n > MAX_M2_DEGREE {
        return Err(guard("m = 2 classification degree", n, MAX_M2_DEGREE));
    }
    let decomposition = transpose_fixed_decomposition(n, 2, max_matrices)?;
    let trivial = ClassFunction::trivial(n);
    let sign = ClassFunction::sign(n);
    let one = BigRational::from_integer(1.into());
    let mut failures = Vec::new();
    let mut rows = Vec::new();
    let mut seen: BTreeMap<Partition, usize> = BTreeMap::new();
    let mut trivial_total = BigRational::zero();
    let mut sign_total = BigRational::zero();
    for d in &decomposition {
        let lambda_c = m2_lambda(&d.class)?;
        let t = inner_product(&trivial, &d.n_c)?;
        let s = inner_product(&sign, &d.n_c)?;
        let expected_sign = if lambda_c.all_parts_odd() {
            one.clone()
        } else {
            BigRational::zero()
        };
        if t != one {
            failures.push(format!("<1, N^C> = {t} for lambda_C = {lambda_c}"));
        }
        if s != expected_sign {
            failures.push(format!("<sgn, N^C> = {s} for lambda_C = {lambda_c}"));
        }
        *seen.entry(lambda_c.clone()).or_default() += 1;
        trivial_total += &t;
        sign_total += &s;
        rows.push(M2Row {
            lambda_c,
            trivial: t.to_string(),
            sign: s.to_string(),
        });
    }
    rows.sort_by(|a, b| b.lambda_c.cmp(&a.lambda_c));
    let all: Vec<Partition> = partitions_of(n);
    if seen.len() != all.len() || seen.values().any(|&k| k != 1) {
        failures.push(format!(
            "lambda_C is not a bijection: {} classes, {} distinct labels, p({n}) = {}",
            decomposition.len(),
            seen.len(),
            all.len()
        ));
    }
    let p = BigRational::from_integer(BigInt::from(partition_count(n)));
    let odd = BigRational::from_integer(BigInt::from(count_odd_part_partitions(n)));
    let n2 = n_class_function(n, 2);
    let trivial_direct = inner_product(&trivial, &n2)?;
    let sign_direct = inner_product(&sign, &n2)?;
    if trivial_direct != p || trivial_total != p {
        failures.push(format!(
            "<1, N^2> = {trivial_direct} (sum over classes {trivial_total}), p({n}) = {p}"
        ));
    }
    if sign_direct != odd || sign_total != odd {
        failures.push(format!(
            "<sgn, N^2> = {sign_direct} (sum over classes {sign_total}), odd-part count {odd}"
        ));
    }
    Ok(M2Report {
        n,
        rows,
        trivial_total: trivial_total.to_string(),
        sign_total: sign_total.to_string(),
        partition_count: p.to_string(),
        odd_part_count: odd.to_string(),
        failures,
    })
}

/// `#T(n, m)/∼` by two routes: distinct classes among twisted-fixed matrices,
/// and the character route `⟨1, N^m⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FoulkesCell {
    pub n: usize,
    pub m: u64,
    /// `None` when the orbit route exceeds its guard.
    pub orbit_count: Option<u64>,
    pub character_count: Option<u64>,
}

impl FoulkesCell {
    pub fn value(&self) -> Option<u64> {
        self.character_count.or(self.orbit_count)
    }

    pub fn routes_agree(&self) -> bool {
        match (self.orbit_count, self.character_count) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FoulkesTable {
    pub cells: Vec<FoulkesCell>,
    /// Pairs `(n, m)` with `n ≤ m` and `#T(n, m)/∼ > #T(m, n)/∼`.
    pub violations: Vec<(usize, u64)>,
}

impl FoulkesTable {
    pub fn get(&self, n: usize, m: u64) -> Option<&FoulkesCell> {
        self.cells.iter().find(|c| c.n == n && c.m == m)
    }

    pub fn routes_agree(&self) -> bool {
        self.cells.iter().all(FoulkesCell::routes_agree)
    }
}

/// `#T(n, m)/∼` for `1 ≤ n ≤ n_max`, `1 ≤ m ≤ m_max`; reports, but does not
/// assert, the inequality `#T(n, m)/∼ ≤ #T(m, n)/∼` for `n ≤ m`.
pub fn foulkes_table(n_max: usize, m_max: u64, max_matrices: u64) -> FoulkesTable {
    let pairs: Vec<(usize, u64)> = (1..=n_max)
        .flat_map(|n| (1..=m_max).map(move |m| (n, m)))
        .collect();
    let cells: Vec<FoulkesCell> = pairs
        .par_iter()
        .map(|&(n, m)| {
            let orbit_count = transpose_fixed_decomposition(n, m, max_matrices)
                .ok()
                .map(|d| d.len() as u64);
            let character_count = if n <= crate::characters::MAX_TABLE_DEGREE {
                inner_product(&ClassFunction::trivial(n), &n_class_function(n, m))
                    .ok()
                    .and_then(|ip| crate::characters::to_natural(&ip))
                    .and_then(|v| biguint_to_u64(&v))
            } else {
                None
            };
            FoulkesCell {
                n,
                m,
                orbit_count,
                character_count,
            }
        })
        .collect();
    let mut table = FoulkesTable {
        cells,
        violations: Vec::new(),
    };
    for n in 1..=n_max {
        for m in n as u64..=m_max {
            let (Some(a), Some(b)) = (
                table.get(n, m).and_then(FoulkesCell::value),
                table
                    .get(m as usize, n as u64)
                    .and_then(FoulkesCell::value),
            ) else {
                continue;
            };
            if a > b {
                table.violations.push((n, m));
            }
        }
    }
    table
}

/// Classes `C` with `C ≠ Cᵀ`, and transpose-fixed classes with
/// `⟨sgn, N^C⟩ < 0`, found by exhaustive search within the guards.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RemarkSearch {
    pub n: usize,
    pub m: u64,
    pub not_transpose_fixed: Vec<IntMatrix>,
    pub negative_sign: Vec<IntMatrix>,
}

pub fn remark_search(n: usize, m: u64, max_matrices: u64) -> Result<RemarkSearch> {
    let classes = orbit_classes(n, m, max_matrices)?;
    let sign = irreducible_character(&Partition::column(n))?;
    let mut negative_sign = Vec::new();
    for d in transpose_fixed_decomposition(n, m, max_matrices)? {
        if inner_product(&sign, &d.n_c)?.numer() < &BigInt::zero() {
            negative_sign.push(d.class.canonical_rep);
        }
    }
    Ok(RemarkSearch {
        n,
        m,
        not_transpose_fixed: classes
            .into_iter()
            .filter(|c| !c.transpose_fixed)
            .map(|c| c.canonical_rep)
            .collect(),
        negative_sign,
    })
}
