//! Exhaustive census of pencil solutions over a small finite field.
//!
//! The defining identities are solved in three stages: (1) enumerate the
//! matrices A with A^d = f(1,0)·I; (2) for each A, the u^{d−1}v coefficient
//! identity Σ_k A^k B A^{d−1−k} = c₁·I is affine-linear in B, so its solution
//! space is computed exactly and only that space is enumerated; (3) the
//! remaining coefficient identities filter the survivors. Stage 1 ranges over
//! q^{m²} matrices and is guarded; stage 2 is the pruning step that turns the
//! raw q^{2m²} search into something a laptop finishes.
//!
//! Irreducible solutions are classified into simultaneous-conjugacy classes
//! by intertwiner tests against previously seen members, with a
//! trace-fingerprint prefilter. The canonical class representative is the
//! lexicographically least serialized pencil in the class, which the
//! exhaustive scan makes well defined independently of work partitioning.
//! Scanning is partitionable into index ranges whose outcomes merge by
//! concatenation in range order; a parallel driver must feed the classifier
//! in that order to reproduce the serial report byte for byte.

pub mod packed;

use alloc::collections::VecDeque;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::bundle;
use crate::error::Error;
use crate::field::FieldSpec;
use crate::form::BinaryForm;
use crate::pencil::MatrixPencil;
use crate::rep::Representation;
use crate::Result;

use packed::PackedField;

/// Stage-1 search spaces larger than this are refused unless forced.
pub const A_SPACE_GUARD: u64 = 1 << 30;

#[derive(Debug, Clone)]
pub struct CensusOptions {
    /// Lift the 2^30 stage-1 guard (the space must still be u64-indexable).
    pub force_large: bool,
    /// Re-verify up to this many emitted solutions through the generic
    /// exact-arithmetic verifier.
    pub verify_sample: usize,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions { force_large: false, verify_sample: 1000 }
    }
}

/// A census task: validated form, size, and the packed field tables.
pub struct Census {
    form: BinaryForm,
    m: usize,
    d: usize,
    pf: PackedField,
    coeffs: Vec<u16>,
    verify_sample: usize,
}

/// Outcome of scanning one stage-1 index range.
#[derive(Debug, Clone, Default)]
pub struct RangeOutcome {
    pub stage1_candidates: u64,
    pub stage2_candidates: u64,
    pub solutions: Vec<(Vec<u16>, Vec<u16>)>,
}

impl RangeOutcome {
    /// Merge in range order; counters are commutative, solutions concatenate.
    pub fn absorb(&mut self, next: RangeOutcome) {
        self.stage1_candidates += next.stage1_candidates;
        self.stage2_candidates += next.stage2_candidates;
        self.solutions.extend(next.solutions);
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CensusClass {
    pub representative: MatrixPencil,
    pub orbit_size: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CensusReport {
    pub field: FieldSpec,
    pub q: u64,
    pub form: BinaryForm,
    pub m: usize,
    pub total_solutions: u64,
    pub irreducible_class_count: usize,
    pub reducible_solution_count: u64,
    pub predicted_irreducible_classes: Option<u64>,
    pub curve_point_count: usize,
    pub stage1_candidates: u64,
    pub stage2_candidates: u64,
    pub classes: Vec<CensusClass>,
    /// Filled by callers that time the run; excluded from deterministic
    /// content.
    pub wall_time_ms: Option<u64>,
}

impl CensusReport {
    pub fn prediction_matches(&self) -> Option<bool> {
        self.predicted_irreducible_classes
            .map(|p| p == self.irreducible_class_count as u64)
    }
}

impl core::fmt::Debug for Census {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Census")
            .field("m", &self.m)
            .field("d", &self.d)
            .field("q", &self.pf.q())
            .finish()
    }
}

impl Census {
    pub fn new(form: &BinaryForm, m: usize, opts: &CensusOptions) -> Result<Census> {
        let field = form.field();
        if !field.is_finite() {
            return Err(Error::InfiniteField);
        }
        if m == 0 {
            return Err(Error::DegreeTooSmall);
        }
        let d = form.degree();
        let ch = field.characteristic();
        if ch != 0 && (d as u64) % ch == 0 {
            return Err(Error::CharacteristicDivides { ch, n: d as u64 });
        }
        if !form.is_nondegenerate()? {
            return Err(Error::DegenerateForm);
        }
        let q = field.order().ok_or(Error::InfiniteField)?;
        let size = (q as u128).checked_pow((m * m) as u32);
        let guard_ok = matches!(size, Some(s) if s <= A_SPACE_GUARD as u128);
        let indexable = matches!(size, Some(s) if s <= u64::MAX as u128);
        if !guard_ok && !(opts.force_large && indexable) {
            return Err(Error::GuardExceeded { q, exponent: m * m });
        }
        let pf = PackedField::new(field)?;
        let coeffs: Result<Vec<u16>> = form.coeffs().iter().map(|c| pf.pack(c)).collect();
        Ok(Census {
            form: form.clone(),
            m,
            d,
            pf,
            coeffs: coeffs?,
            verify_sample: opts.verify_sample,
        })
    }

    pub fn form(&self) -> &BinaryForm {
        &self.form
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.pf.q() as u64
    }

    /// Number of stage-1 candidates: q^{m²}.
    pub fn a_space_size(&self) -> u64 {
        (self.q() as u128).pow((self.m * self.m) as u32) as u64
    }

    /// Shard boundaries for parallel scans: contiguous index ranges.
    pub fn shards(&self, count: usize) -> Vec<(u64, u64)> {
        let size = self.a_space_size();
        let count = count.max(1) as u64;
        let step = size.div_ceil(count).max(1);
        let mut out = Vec::new();
        let mut lo = 0;
        while lo < size {
            let hi = (lo + step).min(size);
            out.push((lo, hi));
            lo = hi;
        }
        out
    }

    /// Scan stage-1 indices in [lo, hi): deterministic, pure, independent of
    /// other ranges.
    pub fn scan_range(&self, lo: u64, hi: u64) -> RangeOutcome {
        let nn = self.m * self.m;
        let q = self.q();
        let mut out = RangeOutcome::default();
        let mut digits = vec![0u16; nn];
        let mut rest = lo;
        for d in digits.iter_mut().rev() {
            *d = (rest % q) as u16;
            rest /= q;
        }
        let mut t1 = vec![0u16; nn];
        let mut t2 = vec![0u16; nn];
        for _ in lo..hi {
            if self.matrix_power_is_scalar(&digits, self.d, self.coeffs[0], &mut t1, &mut t2) {
                out.stage1_candidates += 1;
                self.enumerate_b(&digits, &mut out, &mut t1, &mut t2);
            }
            for d in digits.iter_mut().rev() {
                *d += 1;
                if (*d as u64) < q {
                    break;
                }
                *d = 0;
            }
        }
        out
    }

    fn matrix_power_is_scalar(
        &self,
        a: &[u16],
        e: usize,
        scalar: u16,
        t1: &mut [u16],
        t2: &mut [u16],
    ) -> bool {
        debug_assert!(e >= 1);
        let n = self.m;
        t1.copy_from_slice(a);
        let mut cur_in_t1 = true;
        for _ in 1..e {
            if cur_in_t1 {
                self.pf.mat_mul(n, t1, a, t2);
            } else {
                self.pf.mat_mul(n, t2, a, t1);
            }
            cur_in_t1 = !cur_in_t1;
        }
        let cur: &[u16] = if cur_in_t1 { t1 } else { t2 };
        self.pf.is_scalar(n, cur, scalar)
    }

    fn enumerate_b(&self, a: &[u16], out: &mut RangeOutcome, t1: &mut [u16], t2: &mut [u16]) {
        let nn = self.m * self.m;
        let q = self.pf.q();
        let Some((particular, kernel)) =
            self.pf.solve_middle_identity(self.m, a, self.d, self.coeffs[1])
        else {
            return;
        };
        let dim = kernel.len();
        let mut counter = vec![0usize; dim];
        let mut b = vec![0u16; nn];
        loop {
            b.copy_from_slice(&particular);
            for (c, k) in counter.iter().zip(&kernel) {
                if *c != 0 {
                    for (o, &kv) in b.iter_mut().zip(k) {
                        *o = self.pf.add(*o, self.pf.mul(*c as u16, kv));
                    }
                }
            }
            out.stage2_candidates += 1;
            if self.matrix_power_is_scalar(&b, self.d, self.coeffs[self.d], t1, t2)
                && self.full_identity_holds(a, &b)
            {
                out.solutions.push((a.to_vec(), b.clone()));
            }
            let mut i = 0;
            loop {
                if i == dim {
                    return;
                }
                counter[i] += 1;
                if counter[i] < q {
                    break;
                }
                counter[i] = 0;
                i += 1;
            }
        }
    }

    fn full_identity_holds(&self, a: &[u16], b: &[u16]) -> bool {
        let coeffs = self.pf.pencil_power(self.m, a, b, self.d);
        coeffs
            .iter()
            .zip(&self.coeffs)
            .all(|(mat, &c)| self.pf.is_scalar(self.m, mat, c))
    }

    pub fn unpack_pencil(&self, a: &[u16], b: &[u16]) -> MatrixPencil {
        MatrixPencil::new(
            self.pf.unpack_matrix(self.m, a),
            self.pf.unpack_matrix(self.m, b),
        )
        .expect("packed solutions are square")
    }
}

/// Stream of all solutions as generic pencils, in scan order.
pub fn enumerate_solutions(
    form: &BinaryForm,
    m: usize,
    opts: &CensusOptions,
) -> Result<SolutionStream> {
    let census = Census::new(form, m, opts)?;
    let size = census.a_space_size();
    Ok(SolutionStream { census, next: 0, size, buf: VecDeque::new() })
}

pub struct SolutionStream {
    census: Census,
    next: u64,
    size: u64,
    buf: VecDeque<MatrixPencil>,
}

impl Iterator for SolutionStream {
    type Item = MatrixPencil;

    fn next(&mut self) -> Option<MatrixPencil> {
        loop {
            if let Some(p) = self.buf.pop_front() {
                return Some(p);
            }
            if self.next == self.size {
                return None;
            }
            let hi = (self.next + 256).min(self.size);
            let out = self.census.scan_range(self.next, hi);
            self.next = hi;
            for (a, b) in out.solutions {
                self.buf.push_back(self.census.unpack_pencil(&a, &b));
            }
        }
    }
}

struct ClassAcc {
    fingerprint: Vec<u16>,
    anchor_a: Vec<u16>,
    anchor_b: Vec<u16>,
    min_serial: Vec<u16>,
    count: u64,
}

/// Order-sensitive classifier: feed solutions in scan order.
pub struct Classifier<'a> {
    census: &'a Census,
    classes: Vec<ClassAcc>,
    reducible: u64,
    total: u64,
    verified: usize,
}

pub struct Classified {
    pub classes: Vec<(MatrixPencil, u64)>,
    pub reducible: u64,
    pub total: u64,
}

impl<'a> Classifier<'a> {
    pub fn new(census: &'a Census) -> Self {
        Classifier { census, classes: Vec::new(), reducible: 0, total: 0, verified: 0 }
    }

    pub fn consume(&mut self, a: &[u16], b: &[u16]) -> Result<()> {
        let n = self.census.m;
        let pf = &self.census.pf;
        self.total += 1;
        if self.verified < self.census.verify_sample {
            self.verified += 1;
            let pencil = self.census.unpack_pencil(a, b);
            let report = pencil.clifford_check(&self.census.form)?;
            if !report.ok {
                return Err(Error::CliffordViolation { index: report.failing[0] });
            }
        }
        if pf.word_span_dim(n, a, b) != n * n {
            self.reducible += 1;
            return Ok(());
        }
        let fp = pf.fingerprint(n, a, b);
        let mut serial = a.to_vec();
        serial.extend_from_slice(b);
        for cls in self.classes.iter_mut() {
            if cls.fingerprint != fp {
                continue;
            }
            let dim = pf.intertwiner_dim(n, a, b, &cls.anchor_a, &cls.anchor_b);
            if dim == 0 {
                continue;
            }
            if dim != 1 {
                return Err(Error::InvalidFieldSpec(String::from(
                    "intertwiner dimension above 1 between irreducible solutions",
                )));
            }
            cls.count += 1;
            if serial < cls.min_serial {
                cls.min_serial = serial;
            }
            return Ok(());
        }
        self.classes.push(ClassAcc {
            fingerprint: fp,
            anchor_a: a.to_vec(),
            anchor_b: b.to_vec(),
            min_serial: serial,
            count: 1,
        });
        Ok(())
    }

    pub fn finish(mut self) -> Classified {
        self.classes.sort_by(|x, y| x.min_serial.cmp(&y.min_serial));
        let nn = self.census.m * self.census.m;
        let classes = self
            .classes
            .iter()
            .map(|c| {
                let pencil = self
                    .census
                    .unpack_pencil(&c.min_serial[..nn], &c.min_serial[nn..]);
                (pencil, c.count)
            })
            .collect();
        Classified { classes, reducible: self.reducible, total: self.total }
    }
}

/// |GL_m(GF(q))| = Π_{i<m} (q^m − q^i).
pub fn gl_order(q: u64, m: usize) -> u128 {
    let qm = (q as u128).pow(m as u32);
    let mut acc: u128 = 1;
    let mut qi: u128 = 1;
    for _ in 0..m {
        acc *= qm - qi;
        qi *= q as u128;
    }
    acc
}

/// Assemble the final report from a classified scan, running the
/// conservation, orbit-size and fiber-bridge invariants.
pub fn build_report(
    census: &Census,
    stage1_candidates: u64,
    stage2_candidates: u64,
    classified: Classified,
) -> Result<CensusReport> {
    let q = census.q();
    let m = census.m();
    let form = census.form().clone();
    let d = form.degree();

    let invariant = |msg: &str| Error::InvalidFieldSpec(String::from(msg));
    let mut orbit_sum = 0u64;
    let gl = gl_order(q, m);
    for (_, count) in &classified.classes {
        orbit_sum += count;
        if gl % (*count as u128) != 0 {
            return Err(invariant("class orbit size does not divide |GL_m|"));
        }
        if (*count as u128) != gl / (q - 1) as u128 {
            return Err(invariant("irreducible orbit size differs from |GL_m|/(q−1)"));
        }
    }
    if orbit_sum + classified.reducible != classified.total {
        return Err(invariant("conservation failed: orbits + reducibles != total"));
    }

    // bridge to the bundle side: every representative has fiber rank r
    if m % d == 0 {
        for (pencil, _) in &classified.classes {
            let rep = Representation::new(form.clone(), pencil.clone())?;
            bundle::fiber_profile(&rep)?;
        }
    }

    let points = form.curve_points(form.field())?;
    let predicted = if d == 3 && m == 3 {
        Some(points.len() as u64 - 1)
    } else {
        None
    };

    Ok(CensusReport {
        field: form.field().spec(),
        q,
        form,
        m,
        total_solutions: classified.total,
        irreducible_class_count: classified.classes.len(),
        reducible_solution_count: classified.reducible,
        predicted_irreducible_classes: predicted,
        curve_point_count: points.len(),
        stage1_candidates,
        stage2_candidates,
        classes: classified
            .classes
            .into_iter()
            .map(|(representative, orbit_size)| CensusClass { representative, orbit_size })
            .collect(),
        wall_time_ms: None,
    })
}

/// Serial driver: scan everything, classify in order, build the report.
pub fn census_report(form: &BinaryForm, m: usize, opts: &CensusOptions) -> Result<CensusReport> {
    let census = Census::new(form, m, opts)?;
    let outcome = census.scan_range(0, census.a_space_size());
    let mut classifier = Classifier::new(&census);
    for (a, b) in &outcome.solutions {
        classifier.consume(a, b)?;
    }
    build_report(
        &census,
        outcome.stage1_candidates,
        outcome.stage2_candidates,
        classifier.finish(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn cubic(field: &Field) -> BinaryForm {
        BinaryForm::from_integers(field, &[1, 0, 0, 1]).unwrap()
    }

    #[test]
    fn census_gf2_matches_prediction() {
        let f2 = Field::prime(2).unwrap();
        let report = census_report(&cubic(&f2), 3, &CensusOptions::default()).unwrap();
        assert_eq!(report.curve_point_count, 3);
        assert_eq!(report.predicted_irreducible_classes, Some(2));
        assert_eq!(report.irreducible_class_count, 2);
        assert_eq!(report.prediction_matches(), Some(true));
        // |GL₃(GF(2))| = 168 and the scalar stabilizer is trivial
        assert_eq!(report.total_solutions, 336);
        assert_eq!(report.reducible_solution_count, 0);
        for cls in &report.classes {
            assert_eq!(cls.orbit_size, 168);
        }
    }

    #[test]
    fn census_zero_solutions_when_d_does_not_divide_m() {
        let f2 = Field::prime(2).unwrap();
        for m in [2usize, 4] {
            let report = census_report(&cubic(&f2), m, &CensusOptions::default()).unwrap();
            assert_eq!(report.total_solutions, 0, "m = {m}");
            assert_eq!(report.irreducible_class_count, 0);
        }
    }

    #[test]
    fn census_rejects_bad_preconditions() {
        let f3 = Field::prime(3).unwrap();
        assert_eq!(
            Census::new(&cubic(&f3), 3, &CensusOptions::default()).unwrap_err(),
            Error::CharacteristicDivides { ch: 3, n: 3 }
        );
        // u² has a repeated factor
        let degenerate = BinaryForm::from_integers(&f3, &[1, 0, 0]).unwrap();
        assert_eq!(
            Census::new(&degenerate, 2, &CensusOptions::default()).unwrap_err(),
            Error::DegenerateForm
        );
        // u²v over GF(5): the spec's degenerate-cubic refusal
        let f5 = Field::prime(5).unwrap();
        let uuv = BinaryForm::from_integers(&f5, &[0, 1, 0, 0]).unwrap();
        assert_eq!(
            Census::new(&uuv, 2, &CensusOptions::default()).unwrap_err(),
            Error::DegenerateForm
        );
        let q = Field::rationals();
        assert_eq!(
            Census::new(&cubic(&q), 3, &CensusOptions::default()).unwrap_err(),
            Error::InfiniteField
        );
        // GF(7) with m = 4 gives 7^16 > 2^30
        let f7 = Field::prime(7).unwrap();
        assert!(matches!(
            Census::new(&cubic(&f7), 4, &CensusOptions::default()).unwrap_err(),
            Error::GuardExceeded { .. }
        ));
    }

    #[test]
    fn scan_is_partition_invariant() {
        let f2 = Field::prime(2).unwrap();
        let census = Census::new(&cubic(&f2), 3, &CensusOptions::default()).unwrap();
        let full = census.scan_range(0, census.a_space_size());
        let mut merged = RangeOutcome::default();
        for (lo, hi) in census.shards(7) {
            merged.absorb(census.scan_range(lo, hi));
        }
        assert_eq!(full.stage1_candidates, merged.stage1_candidates);
        assert_eq!(full.solutions, merged.solutions);
    }

    #[test]
    fn solution_stream_matches_scan() {
        let f2 = Field::prime(2).unwrap();
        let stream = enumerate_solutions(&cubic(&f2), 3, &CensusOptions::default()).unwrap();
        let census = Census::new(&cubic(&f2), 3, &CensusOptions::default()).unwrap();
        let full = census.scan_range(0, census.a_space_size());
        let from_stream: Vec<MatrixPencil> = stream.collect();
        assert_eq!(from_stream.len(), full.solutions.len());
        for (p, (a, b)) in from_stream.iter().zip(&full.solutions) {
            assert_eq!(p, &census.unpack_pencil(a, b));
        }
        let form = cubic(&f2);
        for p in &from_stream {
            assert!(p.clifford_check(&form).unwrap().ok);
        }
    }

    #[test]
    fn classifier_groups_constructed_conjugates() {
        let f2 = Field::prime(2).unwrap();
        let census = Census::new(&cubic(&f2), 3, &CensusOptions::default()).unwrap();
        let rep = {
            let out = census.scan_range(0, census.a_space_size());
            let (a, b) = out.solutions[0].clone();
            Representation::new(cubic(&f2), census.unpack_pencil(&a, &b)).unwrap()
        };
        let mut classifier = Classifier::new(&census);
        let pf = PackedField::new(&f2).unwrap();
        for seed in 0..6u64 {
            let conj = rep.random_equivalent(seed);
            let mut a = vec![0u16; 9];
            let mut b = vec![0u16; 9];
            for i in 0..3 {
                for j in 0..3 {
                    a[i * 3 + j] = pf.pack(conj.pencil().a().entry(i, j)).unwrap();
                    b[i * 3 + j] = pf.pack(conj.pencil().b().entry(i, j)).unwrap();
                }
            }
            classifier.consume(&a, &b).unwrap();
        }
        let done = classifier.finish();
        assert_eq!(done.classes.len(), 1);
        assert_eq!(done.classes[0].1, 6);
    }

    #[test]
    fn gl_orders() {
        assert_eq!(gl_order(2, 3), 168);
        assert_eq!(gl_order(4, 3), 181_440);
        assert_eq!(gl_order(2, 1), 1);
    }
}
