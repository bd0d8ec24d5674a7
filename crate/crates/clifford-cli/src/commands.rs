//! Implementations of the seven subcommands.
//!
//! Every command emits one JSON document (stdout, or `--out`) embedding the
//! manifest that produced it; census additionally prints a human table on
//! stderr. Exit codes: 0 success/match, 1 verification false or operational
//! failure, 2 undecided, 3 prediction mismatch, 64 usage error.

use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use serde::Serialize;

use clifford_core::census::{self, Census, CensusOptions, Classifier};
use clifford_core::field::Field;
use clifford_core::moduli::{self, RandomizedVerdict};
use clifford_core::numeric::{self, C64, SolveOptions};
use clifford_core::rep::Representation;
use clifford_core::{bundle, Error, ExactMatrix};

use crate::json::{self, FieldSpecDto, FormDto, PencilDto, RepDoc};
use crate::manifest::{self, Manifest};
use crate::parallel;
use crate::CliError;

fn emit(doc: &impl Serialize, out: &Option<String>) -> Result<(), CliError> {
    let text = json::to_pretty(doc);
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::failed(format!("cannot write {path:?}: {e}"))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

// --- verify ---

#[derive(Serialize)]
struct VerifyDoc {
    manifest: Manifest,
    ok: bool,
    divisibility_ok: bool,
    failing_coefficients: Vec<usize>,
    d: usize,
    m: usize,
    r: Option<usize>,
}

pub fn verify(rep_path: &str, argv: &[String], out: &Option<String>) -> Result<i32, CliError> {
    let doc: RepDoc = json::read_json(rep_path)?;
    let form = doc.form.to_core()?;
    let pencil = doc.pencil.to_core()?;
    if form.field() != pencil.field() {
        return Err(CliError::usage("form and pencil carry different fields"));
    }
    let d = form.degree();
    let m = pencil.size();
    let report = pencil.clifford_check(&form).map_err(CliError::failed)?;
    let divisibility_ok = m > 0 && m % d == 0;
    let ok = report.ok && divisibility_ok && (!divisibility_ok || doc.r == m / d);
    let field = FieldSpecDto::from_core(&form.field().spec());
    let vdoc = VerifyDoc {
        manifest: manifest::build("verify", argv, vec![], Some(field)),
        ok,
        divisibility_ok,
        failing_coefficients: report.failing,
        d,
        m,
        r: divisibility_ok.then_some(m / d),
    };
    emit(&vdoc, out)?;
    Ok(if ok { 0 } else { 1 })
}

// --- construct ---

#[allow(clippy::too_many_arguments)]
pub struct ConstructArgs {
    pub kind: String,
    pub d: Option<usize>,
    pub field: Option<String>,
    pub rep: Option<String>,
    pub a: Option<String>,
    pub b: Option<String>,
    pub seed: Option<u64>,
    pub g: Option<String>,
    pub x: Option<String>,
}

fn parse_matrix_arg(field: &Field, text: &str, expect: usize) -> Result<ExactMatrix, CliError> {
    let rows: Vec<&str> = text.split(';').collect();
    if rows.len() != expect {
        return Err(CliError::usage(format!("matrix argument needs {expect} rows separated by ';'")));
    }
    let mut entries = Vec::new();
    for row in &rows {
        let cells: Vec<&str> = row.split(',').collect();
        if cells.len() != expect {
            return Err(CliError::usage(format!("matrix argument needs {expect} entries per row")));
        }
        for c in cells {
            entries.push(
                field
                    .parse_element(c.trim())
                    .map_err(|e| CliError::usage(format!("matrix entry {c:?}: {e}")))?,
            );
        }
    }
    ExactMatrix::new(field.clone(), expect, expect, entries)
        .map_err(|e| CliError::usage(format!("{e}")))
}

pub fn construct(args: ConstructArgs, argv: &[String], out: &Option<String>) -> Result<i32, CliError> {
    let need = |opt: &Option<String>, flag: &str| -> Result<String, CliError> {
        opt.clone()
            .ok_or_else(|| CliError::usage(format!("construct --kind {} needs {flag}", args.kind)))
    };
    let mut seeds = Vec::new();
    let rep = match args.kind.as_str() {
        "clock-shift" => {
            let d = args
                .d
                .ok_or_else(|| CliError::usage("construct --kind clock-shift needs --d"))?;
            let field = json::parse_field_arg(&need(&args.field, "--field")?)?;
            Representation::clock_shift(d, &field).map_err(CliError::failed)?
        }
        "gl2-pullback" => {
            let base = json::load_representation(&need(&args.rep, "--rep")?)?;
            let g = parse_matrix_arg(base.field(), &need(&args.g, "--g")?, 2)?;
            base.gl2_pullback(&g).map_err(CliError::failed)?
        }
        "direct-sum" => {
            let lhs = json::load_representation(&need(&args.a, "--a")?)?;
            let rhs = json::load_representation(&need(&args.b, "--b")?)?;
            lhs.direct_sum(&rhs).map_err(CliError::failed)?
        }
        "conjugate" => {
            let base = json::load_representation(&need(&args.rep, "--rep")?)?;
            let x = parse_matrix_arg(base.field(), &need(&args.x, "--x")?, base.m())?;
            base.conjugate(&x).map_err(CliError::failed)?
        }
        "random-equivalent" => {
            let base = json::load_representation(&need(&args.rep, "--rep")?)?;
            let seed = args.seed.unwrap_or(0);
            seeds.push(seed);
            base.random_equivalent(seed)
        }
        other => {
            return Err(CliError::usage(format!(
                "unknown construct kind {other:?}: expected clock-shift | gl2-pullback | direct-sum | conjugate | random-equivalent"
            )))
        }
    };
    let field = FieldSpecDto::from_core(&rep.field().spec());
    let doc = RepDoc::from_core(&rep, Some(manifest::build("construct", argv, seeds, Some(field))));
    emit(&doc, out)?;
    Ok(0)
}

// --- analyze ---

#[derive(Serialize)]
struct InvariantsDto {
    rank: usize,
    degree: i64,
    euler_char: i64,
    slope: String,
    pushforward_splitting: Vec<i64>,
}

#[derive(Serialize)]
struct FiberPointDto {
    point: [String; 3],
    dim: usize,
}

#[derive(Serialize)]
struct AnalyzeDoc {
    manifest: Manifest,
    invariants: InvariantsDto,
    #[serde(skip_serializing_if = "Option::is_none")]
    reduction_prime: Option<u64>,
    fiber_profile: Vec<FiberPointDto>,
    charpoly_ok: bool,
    verdict: String,
}

/// The characteristic-polynomial identity, checked at every point of a
/// finite field or at 20 seeded small-integer points in characteristic zero.
fn charpoly_holds_everywhere(rep: &Representation) -> Result<bool, CliError> {
    let field = rep.field().clone();
    if field.is_finite() {
        for a in field.elements().map_err(CliError::failed)? {
            for b in field.elements().map_err(CliError::failed)? {
                if !bundle::charpoly_identity_check(rep, &a, &b).map_err(CliError::failed)? {
                    return Ok(false);
                }
            }
        }
        return Ok(true);
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
    let mut checked = 0;
    while checked < 20 {
        let a = field.from_integer(rng.random_range(-9..=9));
        let b = field.from_integer(rng.random_range(-9..=9));
        if field.is_zero(&a) && field.is_zero(&b) {
            continue;
        }
        if !bundle::charpoly_identity_check(rep, &a, &b).map_err(CliError::failed)? {
            return Ok(false);
        }
        checked += 1;
    }
    Ok(true)
}

pub fn analyze(rep_path: &str, argv: &[String], out: &Option<String>) -> Result<i32, CliError> {
    let rep = json::load_representation(rep_path)?;
    let inv = bundle::bundle_invariants(&rep).map_err(CliError::failed)?;
    let (model, profile, reduction_prime) = bundle::fiber_profile(&rep).map_err(CliError::failed)?;
    let model_field = model.field().clone();
    let fiber_profile = profile
        .iter()
        .map(|(pt, dim)| FiberPointDto {
            point: [
                model_field.format_element(&pt.a),
                model_field.format_element(&pt.b),
                model_field.format_element(&pt.c),
            ],
            dim: *dim,
        })
        .collect();
    let charpoly_ok = charpoly_holds_everywhere(&rep)?;
    let verdict = match bundle::stability_verdict(&rep) {
        bundle::StabilityVerdict::Stable => "stable",
        bundle::StabilityVerdict::StrictlySemistable => "strictly_semistable",
    };
    let seeds = if rep.field().is_finite() { vec![] } else { vec![0] };
    let field = FieldSpecDto::from_core(&rep.field().spec());
    let doc = AnalyzeDoc {
        manifest: manifest::build("analyze", argv, seeds, Some(field)),
        invariants: InvariantsDto {
            rank: inv.rank,
            degree: inv.degree,
            euler_char: inv.euler_char,
            slope: inv.slope.to_string(),
            pushforward_splitting: inv.pushforward_splitting,
        },
        reduction_prime,
        fiber_profile,
        charpoly_ok,
        verdict: verdict.to_string(),
    };
    emit(&doc, out)?;
    Ok(if charpoly_ok { 0 } else { 1 })
}

// --- equiv ---

#[derive(Serialize)]
struct EquivDoc {
    manifest: Manifest,
    verdict: String,
    intertwiner_dim: usize,
    /// True when the verdict is exact (Schur path or exhaustive search);
    /// false when a randomized search failed to find an intertwiner and the
    /// verdict is one-sided.
    exact: bool,
}

pub fn equiv(
    a_path: &str,
    b_path: &str,
    seed: u64,
    tries: usize,
    argv: &[String],
    out: &Option<String>,
) -> Result<i32, CliError> {
    let lhs = json::load_representation(a_path)?;
    let rhs = json::load_representation(b_path)?;
    let dim = moduli::intertwiners(&lhs, &rhs)
        .map_err(|e| match e {
            Error::FormMismatch | Error::DimensionMismatch => CliError::usage(format!("{e}")),
            other => CliError::failed(other),
        })?
        .len();
    let (verdict, exact, code) = match moduli::are_equivalent(&lhs, &rhs) {
        Ok(true) => ("equivalent", true, 0),
        Ok(false) => ("inequivalent", true, 1),
        Err(Error::Undecided) => {
            match moduli::are_equivalent_randomized(&lhs, &rhs, seed, tries)
                .map_err(CliError::failed)?
            {
                RandomizedVerdict::Equivalent => ("equivalent", true, 0),
                RandomizedVerdict::Inequivalent => ("inequivalent", true, 1),
                RandomizedVerdict::ProbablyInequivalent => ("undecided", false, 2),
            }
        }
        Err(other) => return Err(CliError::failed(other)),
    };
    let field = FieldSpecDto::from_core(&lhs.field().spec());
    let doc = EquivDoc {
        manifest: manifest::build("equiv", argv, vec![seed], Some(field)),
        verdict: verdict.to_string(),
        intertwiner_dim: dim,
        exact,
    };
    emit(&doc, out)?;
    Ok(code)
}

// --- tangent ---

#[derive(Serialize)]
struct TangentDoc {
    manifest: Manifest,
    tangent_dim: usize,
    orbit_dim: usize,
    moduli_dim: i64,
    predicted: i64,
    matches: bool,
}

pub fn tangent(rep_path: &str, argv: &[String], out: &Option<String>) -> Result<i32, CliError> {
    let rep = json::load_representation(rep_path)?;
    let report = moduli::tangent_space_dim(&rep).map_err(CliError::failed)?;
    let field = FieldSpecDto::from_core(&rep.field().spec());
    let doc = TangentDoc {
        manifest: manifest::build("tangent", argv, vec![], Some(field)),
        tangent_dim: report.tangent_dim,
        orbit_dim: report.orbit_dim,
        moduli_dim: report.moduli_dim,
        predicted: report.predicted,
        matches: report.matches,
    };
    emit(&doc, out)?;
    Ok(0)
}

// --- census ---

#[derive(Serialize)]
struct ClassDto {
    orbit_size: u64,
    representative: PencilDto,
}

#[derive(Serialize)]
struct CensusDoc {
    manifest: Manifest,
    field: FieldSpecDto,
    q: u64,
    form: FormDto,
    m: usize,
    total_solutions: u64,
    irreducible_class_count: usize,
    reducible_solution_count: u64,
    predicted_irreducible_classes: Option<u64>,
    prediction: String,
    curve_point_count: usize,
    stage1_candidates: u64,
    stage2_candidates: u64,
    classes: Vec<ClassDto>,
    wall_time_ms: Option<u64>,
}

pub struct CensusArgs {
    pub form: String,
    pub field: Option<String>,
    pub m: usize,
    pub force_large: bool,
    pub jobs: usize,
    pub timings: bool,
}

pub fn census_cmd(args: CensusArgs, argv: &[String], out: &Option<String>) -> Result<i32, CliError> {
    let started = Instant::now();
    let form_dto: FormDto = json::read_json(&args.form)?;
    let form = match &args.field {
        Some(spec) => form_dto.to_core_in(&json::parse_field_arg(spec)?)?,
        None => form_dto.to_core()?,
    };
    let opts = CensusOptions { force_large: args.force_large, ..CensusOptions::default() };
    let census = Census::new(&form, args.m, &opts).map_err(|e| match e {
        Error::GuardExceeded { .. } => CliError::usage(format!("{e}")),
        other => CliError::failed(other),
    })?;

    let shards = census.shards((args.jobs.max(1)) * 8);
    let outcomes = parallel::run_indexed(args.jobs, shards.len(), |i| {
        let (lo, hi) = shards[i];
        census.scan_range(lo, hi)
    });
    let mut classifier = Classifier::new(&census);
    let mut stage1 = 0;
    let mut stage2 = 0;
    for outcome in &outcomes {
        stage1 += outcome.stage1_candidates;
        stage2 += outcome.stage2_candidates;
        for (a, b) in &outcome.solutions {
            classifier.consume(a, b).map_err(CliError::failed)?;
        }
    }
    let mut report =
        census::build_report(&census, stage1, stage2, classifier.finish()).map_err(CliError::failed)?;
    if args.timings {
        report.wall_time_ms = Some(started.elapsed().as_millis() as u64);
    }

    let prediction = match report.prediction_matches() {
        Some(true) => "match",
        Some(false) => "mismatch",
        None => "none",
    };
    let field_dto = FieldSpecDto::from_core(&report.field);
    let doc = CensusDoc {
        manifest: manifest::build("census", argv, vec![], Some(field_dto.clone())),
        field: field_dto,
        q: report.q,
        form: FormDto::from_core(&report.form),
        m: report.m,
        total_solutions: report.total_solutions,
        irreducible_class_count: report.irreducible_class_count,
        reducible_solution_count: report.reducible_solution_count,
        predicted_irreducible_classes: report.predicted_irreducible_classes,
        prediction: prediction.to_string(),
        curve_point_count: report.curve_point_count,
        stage1_candidates: report.stage1_candidates,
        stage2_candidates: report.stage2_candidates,
        classes: report
            .classes
            .iter()
            .map(|c| ClassDto {
                orbit_size: c.orbit_size,
                representative: PencilDto::from_core(&c.representative),
            })
            .collect(),
        wall_time_ms: report.wall_time_ms,
    };
    emit(&doc, out)?;

    // human table (stderr); every number here is also in the JSON
    eprintln!("census over {} (q = {}), m = {}", form.field(), report.q, report.m);
    eprintln!("  stage-1 candidates   {}", report.stage1_candidates);
    eprintln!("  stage-2 candidates   {}", report.stage2_candidates);
    eprintln!("  total solutions      {}", report.total_solutions);
    eprintln!("  irreducible classes  {}", report.irreducible_class_count);
    for (i, c) in report.classes.iter().enumerate() {
        eprintln!("    class {i}: orbit size {}", c.orbit_size);
    }
    eprintln!("  reducible solutions  {}", report.reducible_solution_count);
    eprintln!("  curve points         {}", report.curve_point_count);
    match report.predicted_irreducible_classes {
        Some(p) => eprintln!("  predicted classes    {p} ({prediction})"),
        None => eprintln!("  predicted classes    (no prediction for this d, m)"),
    }
    if let Some(ms) = report.wall_time_ms {
        eprintln!("  wall time            {ms} ms");
    }

    Ok(if report.prediction_matches() == Some(false) { 3 } else { 0 })
}

// --- solve ---

#[derive(Serialize)]
struct AttemptDto {
    seed: u64,
    iterations: usize,
    residual: f64,
    success: bool,
}

#[derive(Serialize)]
struct DiagnosticsDto {
    fiber_rank_ok: bool,
    jacobian_nullity: usize,
    moduli_estimate: i64,
    indeterminate_gap: bool,
    jacobian_fd_error: f64,
}

#[derive(Serialize)]
struct SolutionDto {
    #[serde(rename = "A")]
    a: Vec<Vec<String>>,
    #[serde(rename = "B")]
    b: Vec<Vec<String>>,
    residual: f64,
    diagnostics: DiagnosticsDto,
}

#[derive(Serialize)]
struct SolveDoc {
    manifest: Manifest,
    form_coeffs: Vec<String>,
    m: usize,
    d: usize,
    r: usize,
    tol: f64,
    restart_budget: usize,
    success: bool,
    best_residual: f64,
    attempts: Vec<AttemptDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    solution: Option<SolutionDto>,
    wall_time_ms: Option<u64>,
}

pub struct SolveArgs {
    pub form: String,
    pub m: usize,
    pub seed: u64,
    pub restarts: Option<usize>,
    pub tol: Option<f64>,
    pub jobs: usize,
    pub timings: bool,
}

fn fmt_c(z: C64) -> String {
    format!("({},{})", z.re, z.im)
}

pub fn solve_cmd(args: SolveArgs, argv: &[String], out: &Option<String>) -> Result<i32, CliError> {
    let started = Instant::now();
    let form_dto: FormDto = json::read_json(&args.form)?;
    let form = form_dto.to_core_in(&Field::complex())?;
    let coeffs = numeric::embed_form(&form).map_err(CliError::failed)?;
    let mut opts = SolveOptions::default();
    if let Some(r) = args.restarts {
        opts.max_restarts = r;
    }
    if let Some(t) = args.tol {
        opts.tol = t;
    }
    numeric::validate_problem(&coeffs, args.m, &opts).map_err(|e| match e {
        Error::NumericPrecondition(_) | Error::DivisibilityViolation { .. } | Error::DegreeTooSmall => {
            CliError::usage(format!("{e}"))
        }
        other => CliError::failed(other),
    })?;

    // run all restarts (in parallel when asked), then truncate the log after
    // the first success in seed order, which reproduces the serial schedule
    let results = parallel::run_indexed(args.jobs, opts.max_restarts, |i| {
        numeric::solve_single(&coeffs, args.m, args.seed.wrapping_add(i as u64), &opts)
    });
    let winner = results.iter().position(|(log, _)| log.success);
    let keep = winner.map(|w| w + 1).unwrap_or(results.len());
    let mut attempts = Vec::new();
    let mut best = f64::INFINITY;
    let mut solution = None;
    for (log, rep) in results.into_iter().take(keep) {
        best = best.min(log.residual);
        attempts.push(AttemptDto {
            seed: log.seed,
            iterations: log.iterations,
            residual: log.residual,
            success: log.success,
        });
        if log.success {
            solution = rep;
        }
    }

    let solution_dto = solution.as_ref().map(|rep| {
        let tangent = numeric::numeric_tangent_rank(rep, &opts).expect("converged solution");
        let fd = numeric::jacobian_fd_error(&rep.a, &rep.b, &rep.coeffs, 1e-7);
        let dump = |m: &numeric::CMat| -> Vec<Vec<String>> {
            (0..m.rows)
                .map(|i| (0..m.cols).map(|j| fmt_c(m.at(i, j))).collect())
                .collect()
        };
        SolutionDto {
            a: dump(&rep.a),
            b: dump(&rep.b),
            residual: rep.residual,
            diagnostics: DiagnosticsDto {
                fiber_rank_ok: true,
                jacobian_nullity: tangent.jacobian_nullity,
                moduli_estimate: tangent.moduli_estimate,
                indeterminate_gap: tangent.indeterminate,
                jacobian_fd_error: fd,
            },
        }
    });

    let success = solution.is_some();
    let d = form.degree();
    let doc = SolveDoc {
        manifest: manifest::build("solve", argv, vec![args.seed], Some(FieldSpecDto::Complex)),
        form_coeffs: coeffs.iter().map(|&z| fmt_c(z)).collect(),
        m: args.m,
        d,
        r: args.m / d,
        tol: opts.tol,
        restart_budget: opts.max_restarts,
        success,
        best_residual: best,
        attempts,
        solution: solution_dto,
        wall_time_ms: args.timings.then(|| started.elapsed().as_millis() as u64),
    };
    emit(&doc, out)?;
    Ok(if success { 0 } else { 1 })
}
