//! Executable checks of the dual-symmetry and reciprocity identities, their
//! symmetric-algebra specialisations, and the adjunction and duality lemmas
//! they rest on. Every check reports per-instance evidence rows.

use std::fmt;
use std::time::{Duration, Instant};

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Presentation, Symmetry, DEFAULT_TRIALS};
use crate::error::{Error, Result};
use crate::examples::{
    build_nakayama, expected_delta_table, expected_nakayama_shift, linear_presentation,
    random_presentation, NakayamaParams,
};
use crate::linalg::{Matrix, PrimeField};
use crate::loewy::{
    adjunction_square_commutes, capital, dual_layer_iso, dual_layer_square_commutes,
    dual_socle_capital_iso, dual_socle_capital_square_commutes, is_semisimple, layer_table,
    radical_layer, radical_n, radical_n_stepwise, socle_layer, socle_n, socle_n_stepwise,
    Adjunction, IsoPair, LoewySeries, SeriesKind,
};
use crate::modules::{
    a_dual, f_dual, find_isomorphism, hom_space, injective, nakayama, projective, simple, HomSpace,
    IsoSearch, Module, ModuleMap,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Unknown => "unknown",
        })
    }
}

/// One compared quantity: `lhs` should equal every entry of `rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub i: usize,
    pub j: usize,
    pub n: usize,
    pub lhs: usize,
    pub rhs: Vec<usize>,
}

impl Evidence {
    pub fn new(i: usize, j: usize, n: usize, lhs: usize, rhs: Vec<usize>) -> Self {
        Self { i, j, n, lhs, rhs }
    }

    /// An empty right-hand side records a computation that could not be
    /// carried out and never counts as agreement.
    pub fn agrees(&self) -> bool {
        !self.rhs.is_empty() && self.rhs.iter().all(|&r| r == self.lhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub evidence: Vec<Evidence>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Check {
    pub fn from_evidence(name: &str, evidence: Vec<Evidence>, notes: Vec<String>) -> Self {
        let status = if evidence.iter().all(Evidence::agrees) {
            Status::Pass
        } else {
            Status::Fail
        };
        Self {
            name: name.to_string(),
            status,
            evidence,
            notes,
        }
    }

    pub fn skipped(name: &str, note: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            status: Status::Unknown,
            evidence: Vec::new(),
            notes: vec![note.into()],
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Evidence> {
        self.evidence.iter().filter(|e| !e.agrees())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub algebra: String,
    pub dim: usize,
    pub loewy_length: usize,
    pub checks: Vec<Check>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl PartialEq for VerificationReport {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra
            && self.dim == other.dim
            && self.loewy_length == other.loewy_length
            && self.checks == other.checks
    }
}

impl VerificationReport {
    fn new(a: &Algebra) -> Self {
        Self {
            algebra: a.description(),
            dim: a.dim(),
            loewy_length: a.loewy_length(),
            checks: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    fn single(a: &Algebra, started: Instant, check: Check) -> Self {
        let mut r = Self::new(a);
        r.checks.push(check);
        r.elapsed = started.elapsed();
        r
    }

    /// `fail` if any check failed, else `unknown` if any was skipped.
    pub fn status(&self) -> Status {
        overall(self.checks.iter().map(|c| c.status))
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn absorb(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
        self.elapsed += other.elapsed;
    }
}

fn overall(statuses: impl Iterator<Item = Status>) -> Status {
    let mut result = Status::Pass;
    for s in statuses {
        match s {
            Status::Fail => return Status::Fail,
            Status::Unknown => result = Status::Unknown,
            Status::Pass => {}
        }
    }
    result
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub seed: u64,
    pub trials: usize,
    /// Number of module pairs sampled by the adjunction suite.
    pub sample_size: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            trials: DEFAULT_TRIALS,
            sample_size: 12,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    Main,
    Landrock,
    Adjunction,
    Duality,
    NakayamaId,
    Structure,
    All,
}

struct Vertexwise {
    projectives: Vec<Module>,
    simples: Vec<Module>,
}

impl Vertexwise {
    fn new(a: &Algebra) -> Result<Self> {
        let k = a.vertex_count();
        Ok(Self {
            projectives: (0..k).map(|i| projective(a, i)).collect::<Result<_>>()?,
            simples: (0..k).map(|i| simple(a, i)).collect::<Result<_>>()?,
        })
    }
}

/// Layers `1..=L` of `v` as modules.
fn layers(v: &Module, kind: SeriesKind, l: usize) -> Result<Vec<Module>> {
    (1..=l)
        .map(|n| {
            Ok(match kind {
                SeriesKind::Radical => radical_layer(v, n)?,
                SeriesKind::Socle => socle_layer(v, n)?,
            }
            .into_module())
        })
        .collect()
}

/// For all `i, j, n`:
/// `d1 = dim Hom_A(rad_n P_i, S_j)`,
/// `d2 = dim Hom_{A^op}(rad_n Hom_A(P_j, A), D S_i)` and
/// `d3 = dim Hom_A(S_i, soc_n nu P_j)`, which must coincide.
pub fn verify_main_theorem(a: &Algebra) -> Result<VerificationReport> {
    let started = Instant::now();
    let k = a.vertex_count();
    let l = a.loewy_length();
    let base = Vertexwise::new(a)?;
    let dual_simples: Vec<Module> = base.simples.iter().map(f_dual).collect();
    let mut rad_p = Vec::with_capacity(k);
    let mut rad_dual = Vec::with_capacity(k);
    let mut soc_nu = Vec::with_capacity(k);
    for p in &base.projectives {
        rad_p.push(layers(p, SeriesKind::Radical, l)?);
        rad_dual.push(layers(&a_dual(p)?, SeriesKind::Radical, l)?);
        soc_nu.push(layers(&nakayama(p)?, SeriesKind::Socle, l)?);
    }
    let mut evidence = Vec::new();
    for i in 0..k {
        for j in 0..k {
            for n in 1..=l {
                let d1 = hom_space(&rad_p[i][n - 1], &base.simples[j])?.dim();
                let d2 = hom_space(&rad_dual[j][n - 1], &dual_simples[i])?.dim();
                let d3 = hom_space(&base.simples[i], &soc_nu[j][n - 1])?.dim();
                evidence.push(Evidence::new(i, j, n, d1, vec![d2, d3]));
            }
        }
    }
    let check = Check::from_evidence("main", evidence, Vec::new());
    Ok(VerificationReport::single(a, started, check))
}

fn symmetry_gate(
    a: &Algebra,
    options: &VerifyOptions,
    name: &str,
) -> std::result::Result<(), Check> {
    match a.is_symmetric(options.trials, options.seed) {
        Symmetry::Symmetric(_) => Ok(()),
        Symmetry::NotSymmetric => Err(Check::skipped(name, "skipped: algebra is not symmetric")),
        Symmetry::Unknown => Err(Check::skipped(
            name,
            "skipped: no symmetrizing form found within the trial budget",
        )),
    }
}

/// For symmetric algebras:
/// `dim Hom_A(rad_n P_i, S_j) = dim Hom_{A^op}(rad_n D P_j, D S_i) = dim Hom_A(S_i, soc_n P_j)`.
pub fn verify_landrock(a: &Algebra, options: &VerifyOptions) -> Result<VerificationReport> {
    let started = Instant::now();
    if let Err(check) = symmetry_gate(a, options, "landrock") {
        return Ok(VerificationReport::single(a, started, check));
    }
    let k = a.vertex_count();
    let l = a.loewy_length();
    let base = Vertexwise::new(a)?;
    let dual_simples: Vec<Module> = base.simples.iter().map(f_dual).collect();
    let mut rad_p = Vec::with_capacity(k);
    let mut rad_dp = Vec::with_capacity(k);
    let mut soc_p = Vec::with_capacity(k);
    for p in &base.projectives {
        rad_p.push(layers(p, SeriesKind::Radical, l)?);
        rad_dp.push(layers(&f_dual(p), SeriesKind::Radical, l)?);
        soc_p.push(layers(p, SeriesKind::Socle, l)?);
    }
    let mut evidence = Vec::new();
    for i in 0..k {
        for j in 0..k {
            for n in 1..=l {
                let d1 = hom_space(&rad_p[i][n - 1], &base.simples[j])?.dim();
                let d2 = hom_space(&rad_dp[j][n - 1], &dual_simples[i])?.dim();
                let d3 = hom_space(&base.simples[i], &soc_p[j][n - 1])?.dim();
                evidence.push(Evidence::new(i, j, n, d1, vec![d2, d3]));
            }
        }
    }
    let check = Check::from_evidence("landrock", evidence, Vec::new());
    Ok(VerificationReport::single(a, started, check))
}

/// For symmetric algebras, `nu P_i ≅ P_i` for every vertex, witnessed by an
/// explicit isomorphism. Rows record `dim P_i` against the witness rank.
pub fn verify_nakayama_identity(
    a: &Algebra,
    options: &VerifyOptions,
) -> Result<VerificationReport> {
    let started = Instant::now();
    if let Err(check) = symmetry_gate(a, options, "nakayama-id") {
        return Ok(VerificationReport::single(a, started, check));
    }
    let mut evidence = Vec::new();
    let mut notes = Vec::new();
    let mut undecided = false;
    for i in 0..a.vertex_count() {
        let p = projective(a, i)?;
        let nu = nakayama(&p)?;
        match find_isomorphism(&nu, &p, options.trials, options.seed)? {
            IsoSearch::Found(w) => evidence.push(Evidence::new(i, i, 0, p.dim(), vec![w.rank()])),
            IsoSearch::NotIsomorphic => evidence.push(Evidence::new(i, i, 0, p.dim(), vec![0])),
            IsoSearch::Unknown => {
                undecided = true;
                notes.push(format!("vertex {i}: isomorphism search inconclusive"));
            }
        }
    }
    let mut check = Check::from_evidence("nakayama-id", evidence, notes);
    if undecided && check.status == Status::Pass {
        check.status = Status::Unknown;
    }
    Ok(VerificationReport::single(a, started, check))
}

/// Simples, projectives, injectives, radicals and second capitals of the
/// projectives: the modules the lemma suites are exercised on.
pub fn module_pool(a: &Algebra) -> Result<Vec<(String, Module)>> {
    let mut pool = Vec::new();
    for i in 0..a.vertex_count() {
        pool.push((format!("S_{i}"), simple(a, i)?));
    }
    for i in 0..a.vertex_count() {
        let p = projective(a, i)?;
        let rad = crate::modules::submodule(&p, &radical_n(&p, 1))?;
        if !rad.is_zero() {
            pool.push((format!("rad P_{i}"), rad));
        }
        if a.loewy_length() > 2 {
            pool.push((format!("cap^2 P_{i}"), capital(&p, 2)?.into_module()));
        }
        pool.push((format!("P_{i}"), p));
        pool.push((format!("I_{i}"), injective(a, i)?));
    }
    Ok(pool)
}

/// Dimension of the subspace fixed by a square matrix.
fn fixed_dim(m: &Matrix) -> usize {
    let id = Matrix::identity(m.field(), m.rows());
    m.sub(&id).kernel().dim()
}

/// Matrix of `x -> step(x)` on a Hom space, in its basis coordinates.
fn transfer_matrix(
    from: &HomSpace,
    to: &HomSpace,
    step: impl Fn(&ModuleMap) -> Result<ModuleMap>,
) -> Result<Matrix> {
    let f = from.source().field();
    let mut rows = Vec::with_capacity(from.dim());
    for m in from.maps() {
        let image = step(&m)?;
        rows.push(
            to.coordinates(image.matrix())
                .ok_or(Error::NotHomomorphism)?,
        );
    }
    Ok(Matrix::from_row_vectors(f, to.dim(), &rows))
}

fn random_nonzero_map(hom: &HomSpace, rng: &mut ChaCha8Rng) -> Option<ModuleMap> {
    if hom.dim() == 0 {
        return None;
    }
    let p = hom.source().field().modulus();
    loop {
        let coeffs: Vec<u32> = (0..hom.dim()).map(|_| rng.random_range(0..p)).collect();
        if coeffs.iter().any(|&c| c != 0) {
            return Some(hom.combination(&coeffs));
        }
    }
}

fn sample_pairs(count: usize, wanted: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let all: Vec<(usize, usize)> = (0..count)
        .flat_map(|x| (0..count).map(move |y| (x, y)))
        .collect();
    if all.len() <= wanted {
        return all;
    }
    let mut picked = Vec::with_capacity(wanted);
    let mut remaining = all;
    for _ in 0..wanted {
        let t = rng.random_range(0..remaining.len());
        picked.push(remaining.swap_remove(t));
    }
    picked.sort_unstable();
    picked
}

/// Round trips of the capital/socle adjunction on whole Hom bases, and
/// naturality squares on sampled morphisms.
///
/// Round-trip rows: `lhs = dim Hom(∩^n U, V)` against `dim Hom(U, soc^n V)`
/// and the dimensions of the subspaces fixed by `ξη` and `ηξ`. Naturality
/// rows: squares tested against squares commuting.
pub fn verify_adjunction(a: &Algebra, options: &VerifyOptions) -> Result<VerificationReport> {
    let started = Instant::now();
    let pool = module_pool(a)?;
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let pairs = sample_pairs(pool.len(), options.sample_size, &mut rng);
    let mut round_trips = Vec::new();
    let mut squares = Vec::new();
    let mut notes = Vec::new();
    for &(x, y) in &pairs {
        let (u, v) = (&pool[x].1, &pool[y].1);
        for n in 0..=a.loewy_length() {
            let adj = Adjunction::new(u, v, n)?;
            let left = adj.capital_side()?;
            let right = adj.socle_side()?;
            let there = transfer_matrix(&left, &right, |f| adj.forward(f));
            let back = transfer_matrix(&right, &left, |g| adj.backward(g));
            let rhs = match (there, back) {
                (Ok(there), Ok(back)) => vec![
                    right.dim(),
                    fixed_dim(&there.mul(&back)),
                    fixed_dim(&back.mul(&there)),
                ],
                (Err(e), _) | (_, Err(e)) => {
                    notes.push(format!("{} / {} n={n}: {e}", pool[x].0, pool[y].0));
                    Vec::new()
                }
            };
            round_trips.push(Evidence::new(x, y, n, left.dim(), rhs));

            if n == 0 {
                continue;
            }
            let Some(f) = random_nonzero_map(&left, &mut rng) else {
                continue;
            };
            // u: U' -> U and v: V -> V' from randomly chosen pool members,
            // falling back to U' = U and V' = V where Hom vanishes.
            let x2 = rng.random_range(0..pool.len());
            let y2 = rng.random_range(0..pool.len());
            let into_u = hom_space(&pool[x2].1, u)?;
            let (x2, into_u) = if into_u.dim() > 0 {
                (x2, into_u)
            } else {
                (x, hom_space(u, u)?)
            };
            let out_of_v = hom_space(v, &pool[y2].1)?;
            let (y2, out_of_v) = if out_of_v.dim() > 0 {
                (y2, out_of_v)
            } else {
                (y, hom_space(v, v)?)
            };
            let (Some(um), Some(vm)) = (
                random_nonzero_map(&into_u, &mut rng),
                random_nonzero_map(&out_of_v, &mut rng),
            ) else {
                continue;
            };
            let outer = Adjunction::new(&pool[x2].1, &pool[y2].1, n)?;
            let commutes = match adjunction_square_commutes(&adj, &outer, &f, &um, &vm) {
                Ok(c) => usize::from(c),
                Err(e) => {
                    notes.push(format!("square {x2}->{x}, {y}->{y2} n={n}: {e}"));
                    0
                }
            };
            squares.push(Evidence::new(x, y, n, 1, vec![commutes]));
        }
    }
    let mut report = VerificationReport::new(a);
    report
        .checks
        .push(Check::from_evidence("adjunction", round_trips, notes));
    report.checks.push(Check::from_evidence(
        "adjunction-naturality",
        squares,
        Vec::new(),
    ));
    report.elapsed = started.elapsed();
    Ok(report)
}

fn iso_row(
    i: usize,
    j: usize,
    n: usize,
    iso: Result<IsoPair>,
    notes: &mut Vec<String>,
) -> Evidence {
    match iso {
        Ok(iso) => {
            let fwd = iso.forward.matrix();
            let bwd = iso.backward.matrix();
            Evidence::new(
                i,
                j,
                n,
                iso.forward.source().dim(),
                vec![
                    iso.forward.target().dim(),
                    fixed_dim(&fwd.mul(bwd)),
                    fixed_dim(&bwd.mul(fwd)),
                ],
            )
        }
        Err(e) => {
            notes.push(format!("module {i} n={n}: {e}"));
            Evidence::new(i, j, n, 0, Vec::new())
        }
    }
}

/// The explicit maps `soc^n(D U) ≅ D(∩^n U)` and `D(soc_n U) ≅ rad_n(D U)` on
/// every pool module and every `n`: valid `A^op`-maps, mutually inverse, and
/// natural along sampled morphisms.
pub fn verify_duality_lemmas(a: &Algebra, options: &VerifyOptions) -> Result<VerificationReport> {
    let started = Instant::now();
    let pool = module_pool(a)?;
    let l = a.loewy_length();
    let mut capital_rows = Vec::new();
    let mut layer_rows = Vec::new();
    let mut notes = Vec::new();
    for (idx, (_, u)) in pool.iter().enumerate() {
        for n in 0..=l {
            capital_rows.push(iso_row(idx, 0, n, dual_socle_capital_iso(u, n), &mut notes));
            // Independent dimension count on the capital side.
            let direct = u.dim() - radical_n(u, n).dim();
            capital_rows.push(Evidence::new(
                idx,
                1,
                n,
                socle_n(&f_dual(u), n).dim(),
                vec![direct],
            ));
            if n >= 1 {
                layer_rows.push(iso_row(idx, 0, n, dual_layer_iso(u, n), &mut notes));
                let direct = socle_n(u, n).dim() - socle_n(u, n - 1).dim();
                let dual = f_dual(u);
                let rad = radical_n(&dual, n - 1).dim() - radical_n(&dual, n).dim();
                layer_rows.push(Evidence::new(idx, 1, n, direct, vec![rad]));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed ^ 0x5eed);
    let mut squares = Vec::new();
    for &(x, y) in &sample_pairs(pool.len(), options.sample_size, &mut rng) {
        let hom = hom_space(&pool[x].1, &pool[y].1)?;
        let Some(f) = random_nonzero_map(&hom, &mut rng) else {
            continue;
        };
        for n in 0..=l {
            let mut tested = 0;
            let mut commuting = 0;
            for square in [
                dual_socle_capital_square_commutes(&f, n),
                if n >= 1 {
                    dual_layer_square_commutes(&f, n)
                } else {
                    Ok(true)
                },
            ] {
                tested += 1;
                match square {
                    Ok(true) => commuting += 1,
                    Ok(false) => {}
                    Err(e) => notes.push(format!("square {x}->{y} n={n}: {e}")),
                }
            }
            squares.push(Evidence::new(x, y, n, tested, vec![commuting]));
        }
    }
    let mut report = VerificationReport::new(a);
    report.checks.push(Check::from_evidence(
        "duality-socle-capital",
        capital_rows,
        Vec::new(),
    ));
    report.checks.push(Check::from_evidence(
        "duality-layer",
        layer_rows,
        Vec::new(),
    ));
    report
        .checks
        .push(Check::from_evidence("duality-naturality", squares, notes));
    report.elapsed = started.elapsed();
    Ok(report)
}

/// Chain containments, telescoping layers, semisimple layers, agreement of
/// the stepwise and power formulas, and `dim Hom(P_i, V) = dim V e_i`, on
/// every pool module. Each row compares a count against the count of
/// instances satisfying the property.
pub fn verify_structure(a: &Algebra) -> Result<VerificationReport> {
    let started = Instant::now();
    let pool = module_pool(a)?;
    let l = a.loewy_length();
    let projectives: Vec<Module> = (0..a.vertex_count())
        .map(|i| projective(a, i))
        .collect::<Result<_>>()?;
    let mut evidence = Vec::new();
    for (idx, (_, v)) in pool.iter().enumerate() {
        let series = [SeriesKind::Radical, SeriesKind::Socle].map(|k| LoewySeries::new(v, k));
        let well_formed = series.iter().filter(|s| s.is_well_formed()).count();
        evidence.push(Evidence::new(idx, 0, 0, 2, vec![well_formed]));
        for s in &series {
            evidence.push(Evidence::new(
                idx,
                1,
                0,
                v.dim(),
                vec![s.layer_dims().iter().sum()],
            ));
        }
        let mut semisimple = 0;
        let mut stepwise = 0;
        for n in 1..=l {
            semisimple += usize::from(is_semisimple(radical_layer(v, n)?.module()));
            semisimple += usize::from(is_semisimple(socle_layer(v, n)?.module()));
            stepwise += usize::from(radical_n_stepwise(v, n) == radical_n(v, n));
            stepwise += usize::from(socle_n_stepwise(v, n)? == socle_n(v, n));
        }
        evidence.push(Evidence::new(idx, 2, 0, 2 * l, vec![semisimple]));
        evidence.push(Evidence::new(idx, 3, 0, 2 * l, vec![stepwise]));
        for (i, p) in projectives.iter().enumerate() {
            let direct = v.vertex_subspace(i)?.dim();
            evidence.push(Evidence::new(
                idx,
                4,
                i,
                direct,
                vec![hom_space(p, v)?.dim()],
            ));
        }
    }
    let check = Check::from_evidence("structure", evidence, Vec::new());
    Ok(VerificationReport::single(a, started, check))
}

/// Checks specific to `N_k^l`: the closed-form layer table, the Nakayama
/// shift `nu P_j ≅ P_{j-l}`, symmetry iff `k | l`, and
/// `rad_n Hom_A(P_j, A) ≅ D S_{j-n+1}`.
pub fn verify_nakayama_family(
    params: NakayamaParams,
    field: PrimeField,
    options: &VerifyOptions,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let a = build_nakayama(params, field)?;
    let k = params.k;
    let projectives: Vec<Module> = (0..k).map(|i| projective(&a, i)).collect::<Result<_>>()?;
    let mut evidence = Vec::new();
    let mut notes = Vec::new();
    let mut undecided = false;

    let computed = layer_table(&projectives, SeriesKind::Radical)?;
    let expected = expected_delta_table(params);
    for i in 0..k {
        for j in 0..k {
            for n in 1..=params.l + 1 {
                evidence.push(Evidence::new(
                    i,
                    j,
                    n,
                    expected.get(i, j, n),
                    vec![computed.get(i, j, n)],
                ));
            }
        }
    }

    for j in 0..k {
        let nu = nakayama(&projectives[j])?;
        let target = &projectives[expected_nakayama_shift(params, j)?];
        let found = match find_isomorphism(&nu, target, options.trials, options.seed)? {
            IsoSearch::Found(w) => w.rank(),
            IsoSearch::NotIsomorphic => 0,
            IsoSearch::Unknown => {
                undecided = true;
                notes.push(format!("nu P_{j}: isomorphism search inconclusive"));
                0
            }
        };
        evidence.push(Evidence::new(j, j, 0, target.dim(), vec![found]));

        let dual = a_dual(&projectives[j])?;
        let a_op = a.opposite();
        for n in 1..=params.l + 1 {
            let lay = radical_layer(&dual, n)?.into_module();
            let s = f_dual(&simple(&a, (j + k * (n / k + 1) - (n - 1)) % k)?);
            debug_assert_eq!(s.algebra(), &a_op);
            let iso = match find_isomorphism(&lay, &s, options.trials, options.seed)? {
                IsoSearch::Found(w) => w.rank(),
                _ => 0,
            };
            evidence.push(Evidence::new(j, 1, n, 1, vec![lay.dim(), iso]));
        }
    }

    let symmetric = match a.is_symmetric(options.trials, options.seed) {
        Symmetry::Symmetric(_) => 1,
        Symmetry::NotSymmetric => 0,
        Symmetry::Unknown => {
            notes.push("symmetry search inconclusive".into());
            2
        }
    };
    evidence.push(Evidence::new(
        0,
        0,
        0,
        usize::from(params.is_symmetric()),
        vec![symmetric],
    ));

    let mut check = Check::from_evidence("nakayama-family", evidence, notes);
    if undecided && check.status == Status::Pass {
        check.status = Status::Unknown;
    }
    Ok(VerificationReport::single(&a, started, check))
}

pub fn verify(a: &Algebra, kind: CheckKind, options: &VerifyOptions) -> Result<VerificationReport> {
    match kind {
        CheckKind::Main => verify_main_theorem(a),
        CheckKind::Landrock => verify_landrock(a, options),
        CheckKind::Adjunction => verify_adjunction(a, options),
        CheckKind::Duality => verify_duality_lemmas(a, options),
        CheckKind::NakayamaId => verify_nakayama_identity(a, options),
        CheckKind::Structure => verify_structure(a),
        CheckKind::All => {
            let mut report = verify_main_theorem(a)?;
            report.absorb(verify_landrock(a, options)?);
            report.absorb(verify_nakayama_identity(a, options)?);
            report.absorb(verify_adjunction(a, options)?);
            report.absorb(verify_duality_lemmas(a, options)?);
            report.absorb(verify_structure(a)?);
            Ok(report)
        }
    }
}

/// One algebra of a corpus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CorpusEntry {
    Nakayama { k: usize, l: usize },
    Linear { m: usize, truncation: usize },
    Random { seed: u64 },
    Spec(crate::cli::spec_file::AlgebraSpecFile),
}

impl CorpusEntry {
    pub fn presentation(&self, field: PrimeField) -> Result<Presentation> {
        match self {
            CorpusEntry::Nakayama { k, l } => Ok(NakayamaParams::new(*k, *l)?.presentation(field)),
            CorpusEntry::Linear { m, truncation } => linear_presentation(*m, *truncation, field),
            CorpusEntry::Random { seed } => Ok(random_presentation(*seed, field)),
            CorpusEntry::Spec(file) => file.to_presentation(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corpus {
    #[serde(default = "default_modulus")]
    pub p: u64,
    pub algebras: Vec<CorpusEntry>,
}

fn default_modulus() -> u64 {
    PrimeField::DEFAULT_MODULUS as u64
}

impl Corpus {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::SpecFile(e.to_string()))
    }

    /// `N_k^l` for `k, l <= 4`, `A_m` for `m <= 4` at every truncation
    /// `2..=m`, and 20 seeded random presentations.
    pub fn standard() -> Self {
        let mut algebras = Vec::new();
        for k in 1..=4 {
            for l in 1..=4 {
                algebras.push(CorpusEntry::Nakayama { k, l });
            }
        }
        for m in 2..=4 {
            for truncation in 2..=m {
                algebras.push(CorpusEntry::Linear { m, truncation });
            }
        }
        for seed in 0..20 {
            algebras.push(CorpusEntry::Random { seed });
        }
        Self {
            p: default_modulus(),
            algebras,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub reports: Vec<VerificationReport>,
}

impl CorpusReport {
    pub fn status(&self) -> Status {
        overall(self.reports.iter().map(VerificationReport::status))
    }
}

/// Runs `kind` on every algebra of the corpus in parallel. Reports are
/// sorted by algebra description; the result depends only on the corpus and
/// the options.
pub fn run_corpus(
    corpus: &Corpus,
    kind: CheckKind,
    options: &VerifyOptions,
) -> Result<CorpusReport> {
    let field = PrimeField::new(corpus.p)?;
    let presentations: Vec<Presentation> = corpus
        .algebras
        .iter()
        .map(|e| e.presentation(field))
        .collect::<Result<_>>()?;
    let mut reports = presentations
        .par_iter()
        .map(|p| verify(&p.build()?, kind, options))
        .collect::<Result<Vec<_>>>()?;
    reports.sort_by(|x, y| x.algebra.cmp(&y.algebra));
    Ok(CorpusReport { reports })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Quiver;

    fn nak(k: usize, l: usize) -> Algebra {
        build_nakayama(NakayamaParams::new(k, l).unwrap(), PrimeField::default()).unwrap()
    }

    #[test]
    fn main_theorem_on_n32_matches_delta() {
        let r = verify_main_theorem(&nak(3, 2)).unwrap();
        let check = r.check("main").unwrap();
        assert_eq!(check.status, Status::Pass);
        assert_eq!(check.evidence.len(), 27);
        for e in &check.evidence {
            assert_eq!(e.lhs, usize::from((e.i + e.n - 1) % 3 == e.j));
        }
    }

    #[test]
    fn main_theorem_on_semisimple() {
        let q = Quiver::new(3, vec![]).unwrap();
        let a = Presentation::new(PrimeField::default(), q, vec![], 1)
            .build()
            .unwrap();
        let r = verify_main_theorem(&a).unwrap();
        assert_eq!(r.status(), Status::Pass);
        for e in &r.checks[0].evidence {
            assert_eq!(e.n, 1);
            assert_eq!(e.lhs, usize::from(e.i == e.j));
        }
    }

    #[test]
    fn main_theorem_on_a2() {
        let a = linear_presentation(2, 2, PrimeField::default())
            .unwrap()
            .build()
            .unwrap();
        let r = verify_main_theorem(&a).unwrap();
        assert_eq!(r.status(), Status::Pass);
        let row = r.checks[0]
            .evidence
            .iter()
            .find(|e| (e.i, e.j, e.n) == (0, 1, 2))
            .unwrap();
        assert_eq!((row.lhs, row.rhs.clone()), (1, vec![1, 1]));
    }

    #[test]
    fn landrock_is_skipped_for_non_symmetric() {
        let o = VerifyOptions::default();
        let r = verify_landrock(&nak(3, 2), &o).unwrap();
        assert_eq!(r.status(), Status::Unknown);
        let r = verify_landrock(&nak(2, 2), &o).unwrap();
        assert_eq!(r.status(), Status::Pass);
        let r = verify_nakayama_identity(&nak(2, 2), &o).unwrap();
        assert_eq!(r.status(), Status::Pass);
        assert_eq!(r.checks[0].evidence.len(), 2);
    }

    #[test]
    fn evidence_agreement_rules() {
        assert!(Evidence::new(0, 0, 1, 2, vec![2, 2]).agrees());
        assert!(!Evidence::new(0, 0, 1, 2, vec![2, 1]).agrees());
        assert!(!Evidence::new(0, 0, 1, 0, vec![]).agrees());
        let c = Check::from_evidence("x", vec![Evidence::new(0, 0, 1, 1, vec![0])], vec![]);
        assert_eq!(c.status, Status::Fail);
        assert_eq!(c.failures().count(), 1);
        assert_eq!(
            overall([Status::Pass, Status::Unknown].into_iter()),
            Status::Unknown
        );
        assert_eq!(
            overall([Status::Unknown, Status::Fail, Status::Pass].into_iter()),
            Status::Fail
        );
    }

    #[test]
    fn empty_and_duplicate_corpora() {
        let o = VerifyOptions::default();
        let empty = Corpus {
            p: 5,
            algebras: vec![],
        };
        assert!(run_corpus(&empty, CheckKind::All, &o)
            .unwrap()
            .reports
            .is_empty());
        let twice = Corpus {
            p: 5,
            algebras: vec![CorpusEntry::Nakayama { k: 2, l: 1 }; 2],
        };
        let r = run_corpus(&twice, CheckKind::All, &o).unwrap();
        assert_eq!(r.reports.len(), 2);
        assert_eq!(r.reports[0], r.reports[1]);
        assert_eq!(r.status(), Status::Unknown);
    }

    #[test]
    fn corpus_json_round_trip() {
        let c = Corpus::standard();
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(Corpus::parse(&text).unwrap(), c);
        assert!(Corpus::parse("{\"algebras\": [{\"bogus\": 1}]}").is_err());
    }
}
