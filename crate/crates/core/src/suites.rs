//! Per-prime verification runs that turn the individual checks into
//! [`Report`]s, plus the prime-range scan and the regenerated tables.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::{primes_1_mod_4, PrimeCtx};
use crate::cyclo::{self, Package};
use crate::error::{Error, Result};
use crate::halfsys::{self, random_triples, standard_half_system};
use crate::minor::{self, InversePackage};
use crate::quadfield::{self, UnitData};
use crate::report::{Outcome, Report, Status};

/// The six primes with published invariant rows.
pub const TABLE_PRIMES: [u64; 6] = [5, 13, 17, 29, 37, 41];

/// `(p, L, A, B, L(B−A))` for [`TABLE_PRIMES`], used only as expectations.
pub const GOLDEN_ROWS: [(u64, i64, i64, i64, i64); 6] = [
    (5, -1, 2, 1, 1),
    (13, -1, 18, 5, 13),
    (17, 1, 4, 1, -3),
    (29, -1, 70, 13, 57),
    (37, -1, 882, 145, 737),
    (41, 1, 32, 5, -27),
];

pub fn golden_row(p: u64) -> Option<String> {
    GOLDEN_ROWS
        .iter()
        .find(|r| r.0 == p)
        .map(|(p, l, a, b, lq)| format!("{p},{l},{a},{b},{lq}"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Invariants,
    Verify48,
    Verify410,
    Corollary410,
    Cyclo,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Invariants => "invariants",
            Suite::Verify48 => "verify48",
            Suite::Verify410 => "verify410",
            Suite::Corollary410 => "corollary410",
            Suite::Cyclo => "cyclo",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "invariants" => Ok(Suite::Invariants),
            "48" | "verify48" => Ok(Suite::Verify48),
            "410" | "verify410" => Ok(Suite::Verify410),
            "410-corollary" | "corollary410" => Ok(Suite::Corollary410),
            "cyclo" => Ok(Suite::Cyclo),
            other => Err(Error::InvalidArgument(format!("unknown suite {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode410 {
    /// Exhaustive up to `exhaustive_limit`, sampled above.
    #[default]
    Auto,
    Exhaustive,
    Sampled,
}

#[derive(Clone, Debug)]
pub struct Options {
    pub seed: u64,
    /// Random points for the four-variable identity.
    pub points: usize,
    /// Random `(A₀, u, v)` triples in sampled mode.
    pub samples: usize,
    pub mode: Mode410,
    pub exhaustive_limit: u64,
    pub max_cyclo_prime: u64,
    pub t_values: Vec<BigRational>,
    pub rho_values: Vec<BigRational>,
    pub timings: bool,
}

impl Default for Options {
    fn default() -> Self {
        let small = |v: i64| BigRational::from_integer(v.into());
        Options {
            seed: 0,
            points: 50,
            samples: 100,
            mode: Mode410::Auto,
            exhaustive_limit: 13,
            max_cyclo_prime: cyclo::DEFAULT_MAX_PRIME,
            t_values: vec![small(0), small(1), small(2)],
            rho_values: vec![small(0), small(1), small(2)],
            timings: false,
        }
    }
}

struct Sink {
    prime: u64,
    suite: Suite,
    seed: Option<u64>,
    timings: bool,
    start: Instant,
    reports: Vec<Report>,
}

impl Sink {
    fn new(prime: u64, suite: Suite, seed: Option<u64>, opts: &Options) -> Self {
        Sink {
            prime,
            suite,
            seed,
            timings: opts.timings,
            start: Instant::now(),
            reports: Vec::new(),
        }
    }

    fn push(&mut self, o: Outcome) {
        let mut r = Report::from_outcome(self.prime, self.suite.name(), o, self.seed);
        if self.timings {
            r.elapsed_ms = Some(self.start.elapsed().as_millis() as u64);
        }
        self.reports.push(r);
    }

    fn extend(&mut self, outcomes: impl IntoIterator<Item = Outcome>) {
        for o in outcomes {
            self.push(o);
        }
    }

    /// Check failures surface as failed reports, not process errors.
    fn absorb<T>(&mut self, check: &str, expected: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                let mut rep = Report::failure(self.prime, format!("{}.{check}", self.suite), expected, e);
                rep.seed = self.seed;
                self.reports.push(rep);
                None
            }
        }
    }
}

fn unit_for(ctx: &PrimeCtx) -> Result<UnitData> {
    quadfield::unit_data(ctx)
}

/// Golden row (table primes only), `det H = LQ`, `N(ε) = −1`, and
/// `A² − pB² = (−1)^{(2−L)h}`.
pub fn invariants_suite(p: u64, opts: &Options) -> Result<Vec<Report>> {
    let ctx = PrimeCtx::new(p)?;
    let mut sink = Sink::new(p, Suite::Invariants, None, opts);
    let Some(unit) = sink.absorb("unit_data", "unit data", unit_for(&ctx)) else {
        return Ok(sink.reports);
    };
    if let Some(row) = golden_row(p) {
        sink.push(Outcome::new("golden_row", row, unit.row()));
    }
    let det_h = crate::exactla::bareiss_det(&minor::build_h_int(&ctx))?;
    sink.push(Outcome::new("det_h", unit.lq(), BigRational::from_integer(det_h)));
    sink.push(Outcome::new("unit_norm", -1, unit.eps.norm()));
    let sign = if unit.exponent() % 2 == 0 { 1 } else { -1 };
    let pr = BigRational::from_integer(p.into());
    sink.push(Outcome::new("power_norm", sign, &unit.a * &unit.a - pr * &unit.b * &unit.b));
    Ok(sink.reports)
}

/// Inverse package, both linear forms, the coefficient table, and the
/// four-variable identity on `{0,1}⁴`, `(2,−1,3,4)` and `opts.points`
/// seeded random points.
pub fn verify48_suite(p: u64, opts: &Options) -> Result<Vec<Report>> {
    let ctx = PrimeCtx::new(p)?;
    let mut sink = Sink::new(p, Suite::Verify48, Some(opts.seed), opts);
    let Some(unit) = sink.absorb("unit_data", "unit data", unit_for(&ctx)) else {
        return Ok(sink.reports);
    };
    let Some(pkg) = sink.absorb::<InversePackage>(
        "inverse_package",
        "nonsingular H with He₁ = η",
        minor::inverse_package(&ctx),
    ) else {
        return Ok(sink.reports);
    };
    sink.extend(minor::verify_inverse_package(&pkg, &unit));
    if let Some(o) = sink.absorb("e_linear", "E(t) linear", minor::verify_e_linear(&ctx, &unit)) {
        sink.extend(o);
    }
    if let Some(o) = sink.absorb("f_linear", "F(ρ) linear", minor::verify_f_linear(&ctx, &unit)) {
        sink.extend(o);
    }
    let poly = minor::symbolic_det(&pkg);
    sink.extend(minor::verify_symbolic(&poly, &unit));
    sink.push(Outcome::new(
        "sample_point_value",
        minor::sample_point_value(&unit),
        poly.eval(&minor::sample_point()),
    ));
    let mut points = minor::grid_points();
    points.push(minor::sample_point());
    points.extend(minor::random_points(opts.seed, opts.points));
    for pt in &points {
        if let Some(o) = sink.absorb(
            &format!("eval_identity{}", minor::point_label(pt)),
            "direct determinant",
            minor::eval_identity(&ctx, &poly, pt),
        ) {
            sink.push(o);
        }
    }
    Ok(sink.reports)
}

fn use_exhaustive(p: u64, opts: &Options) -> bool {
    match opts.mode {
        Mode410::Exhaustive => true,
        Mode410::Sampled => false,
        Mode410::Auto => p <= opts.exhaustive_limit,
    }
}

/// The congruence (exhaustive over `𝔽_p²` on the standard half-system, or on
/// seeded random half-systems), the sign-pair corollary, the `P_m` square
/// classes, the `T(d, p)` relation, and the degenerate parameters.
pub fn verify410_suite(p: u64, opts: &Options) -> Result<Vec<Report>> {
    let ctx = PrimeCtx::new(p)?;
    let mut sink = Sink::new(p, Suite::Verify410, Some(opts.seed), opts);
    if use_exhaustive(p, opts) {
        let hs = standard_half_system(&ctx);
        let outcomes: Vec<Outcome> = (0..p as i64)
            .into_par_iter()
            .flat_map_iter(|u| {
                let hs = &hs;
                let ctx = &ctx;
                (0..p as i64).map(move |v| halfsys::verify(hs, ctx.fp(u), ctx.fp(v)))
            })
            .collect();
        sink.extend(outcomes);
    } else {
        let triples = random_triples(&ctx, opts.seed, opts.samples);
        let outcomes: Vec<Outcome> = triples
            .par_iter()
            .enumerate()
            .map(|(i, (hs, u, v))| {
                let mut o = halfsys::verify(hs, *u, *v);
                o.check = format!("sample[{i:03}].{}", o.check);
                o
            })
            .collect();
        sink.extend(outcomes);
    }
    for (d1, d2) in SIGN_PAIRS {
        sink.extend(halfsys::corollary_check(&ctx, d1, d2)?);
        sink.extend(halfsys::t_cross_check(&ctx, d1, d2)?);
    }
    sink.extend(halfsys::pm_checks(&ctx));
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x5eed);
    let hs = halfsys::random_half_system(&ctx, rng.gen());
    let u = ctx.fp(rng.gen_range(1..p as i64));
    let v = ctx.fp(rng.gen_range(1..p as i64));
    sink.extend(halfsys::degenerate_checks(&hs, u, v));
    Ok(sink.reports)
}

pub const SIGN_PAIRS: [(i64, i64); 4] = [(1, 1), (1, -1), (-1, 1), (-1, -1)];

/// The sign-pair corollary for all four `(δ₁, δ₂)` and the `P_m` checks.
pub fn corollary410_suite(p: u64, opts: &Options) -> Result<Vec<Report>> {
    let ctx = PrimeCtx::new(p)?;
    let mut sink = Sink::new(p, Suite::Corollary410, None, opts);
    for (d1, d2) in SIGN_PAIRS {
        sink.extend(halfsys::corollary_check(&ctx, d1, d2)?);
    }
    sink.extend(halfsys::pm_checks(&ctx));
    Ok(sink.reports)
}

/// The cyclotomic suite. Primes above `opts.max_cyclo_prime` are rejected
/// as a validation error; a Gauss-sum sign inconsistency is
/// [`Error::Convention`].
pub fn cyclo_suite(p: u64, opts: &Options) -> Result<Vec<Report>> {
    let ctx = PrimeCtx::new(p)?;
    if p > opts.max_cyclo_prime {
        return Err(Error::OutOfRange(format!(
            "p = {p} (cyclotomic cutoff {})",
            opts.max_cyclo_prime
        )));
    }
    let mut sink = Sink::new(p, Suite::Cyclo, None, opts);
    let unit = unit_for(&ctx)?;
    let pkg = Package::new(&ctx, &unit)?;
    for t in [0, 1] {
        let t = BigRational::from_integer(t.into());
        if let Some(o) = sink.absorb("vsemirnov", "factorisation", cyclo::verify_vsemirnov(&pkg, &t)) {
            sink.push(o);
        }
    }
    if let Some(o) = sink.absorb("v_inverse", "V V⁻¹ = I", cyclo::verify_v_inverse(&pkg)) {
        sink.push(o);
    }
    if let Some(o) = sink.absorb("cofactors", "cofactor identities", cyclo::cofactor_identities(&pkg)) {
        sink.extend(o);
    }
    let ij = match cyclo::compute_i_j(&pkg) {
        Ok((ij, o)) => {
            sink.extend(o);
            Some(ij)
        }
        Err(e) => {
            sink.absorb::<()>("cauchy_pair", "I and J", Err(e));
            None
        }
    };
    match cyclo::verify_product_identities(&pkg) {
        Ok(o) => sink.extend(o),
        Err(e @ Error::Convention(_)) => return Err(e),
        Err(e) => {
            sink.absorb::<()>("product_identities", "both product identities", Err(e));
        }
    }
    sink.push(cyclo::verify_normalising(&pkg));
    for (t, rho) in opts.t_values.iter().zip(&opts.rho_values) {
        if let Some(ij) = &ij {
            if let Some(o) = sink.absorb(
                "diff_identities",
                "bordered differences",
                cyclo::verify_diff_identities(&pkg, ij, t, rho),
            ) {
                sink.extend(o);
            }
        }
        if let Some(o) = sink.absorb(
            "adjugate",
            "E(t) and F(ρ) via the adjugate",
            cyclo::verify_adjugate_e_f(&pkg, t, rho),
        ) {
            sink.extend(o);
        }
    }
    Ok(sink.reports)
}

pub fn run_suite(suite: Suite, p: u64, opts: &Options) -> Result<Vec<Report>> {
    match suite {
        Suite::Invariants => invariants_suite(p, opts),
        Suite::Verify48 => verify48_suite(p, opts),
        Suite::Verify410 => verify410_suite(p, opts),
        Suite::Corollary410 => corollary410_suite(p, opts),
        Suite::Cyclo => cyclo_suite(p, opts),
    }
}

/// Runs `suites` on every prime `p ≡ 1 (mod 4)` in `[from, to]` with `jobs`
/// worker threads. Output is sorted by `(prime, check)`, so it does not
/// depend on scheduling. The cyclotomic suite is applied only up to its
/// cutoff.
pub fn scan(from: u64, to: u64, suites: &[Suite], jobs: usize, opts: &Options) -> Result<Vec<Report>> {
    if from > to {
        return Err(Error::InvalidArgument(format!("empty range {from}..{to}")));
    }
    let primes = primes_1_mod_4(from, to);
    let work: Vec<(u64, Suite)> = primes
        .iter()
        .flat_map(|&p| suites.iter().map(move |&s| (p, s)))
        .filter(|&(p, s)| s != Suite::Cyclo || p <= opts.max_cyclo_prime)
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let results: Vec<Result<Vec<Report>>> =
        pool.install(|| work.par_iter().map(|&(p, s)| run_suite(s, p, opts)).collect());
    let mut all = Vec::new();
    for r in results {
        all.extend(r?);
    }
    all.sort_by(|a, b| (a.prime, &a.check).cmp(&(b.prime, &b.check)));
    Ok(all)
}

/// 0 when every report passed, 1 otherwise.
pub fn exit_code(reports: &[Report]) -> i32 {
    if reports.iter().all(|r| r.status == Status::Pass) {
        0
    } else {
        1
    }
}

/// 3 for a convention inconsistency, 2 for every other error.
pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::Convention(_) => 3,
        _ => 2,
    }
}

/// A regenerated table: a header and rows of exact values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    Invariants,
    Coefficients,
    Detlist,
}

impl FromStr for TableKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "invariants" => Ok(TableKind::Invariants),
            "coefficients" => Ok(TableKind::Coefficients),
            "detlist" => Ok(TableKind::Detlist),
            other => Err(Error::InvalidArgument(format!("unknown table {other:?}"))),
        }
    }
}

/// `p,L,A,B,LQ` rows computed from the unit and class number.
pub fn invariants_table(primes: &[u64]) -> Result<Table> {
    let rows = primes
        .iter()
        .map(|&p| {
            let u = unit_for(&PrimeCtx::new(p)?)?;
            Ok(vec![u.p.to_string(), u.l.to_string(), u.a.to_string(), u.b.to_string(), u.lq().to_string()])
        })
        .collect::<Result<_>>()?;
    Ok(Table {
        header: ["p", "L", "A", "B", "LQ"].map(String::from).to_vec(),
        rows,
    })
}

/// `det H` computed by fraction-free elimination.
pub fn detlist_table(primes: &[u64]) -> Result<Table> {
    let rows = primes
        .iter()
        .map(|&p| {
            let ctx = PrimeCtx::new(p)?;
            let d = crate::exactla::bareiss_det(&minor::build_h_int(&ctx))?;
            Ok(vec![p.to_string(), d.to_string()])
        })
        .collect::<Result<_>>()?;
    Ok(Table {
        header: vec!["p".into(), "det_H".into()],
        rows,
    })
}

const COEFF_FORMULAS: [(&str, &str); 7] = [
    ("1", "LQ"),
    ("x", "P"),
    ("y", "LQ"),
    ("z", "L(Q-1)"),
    ("w", "LQ"),
    ("xw", "P-LQ+L"),
    ("yz", "-P+LQ-L"),
];

/// Monomial, symbolic coefficient, and the live coefficient of the
/// Sylvester-reduced determinant at each prime.
pub fn coefficients_table(primes: &[u64]) -> Result<Table> {
    let polys = primes
        .iter()
        .map(|&p| Ok(minor::symbolic_det(&minor::inverse_package(&PrimeCtx::new(p)?)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut header = vec!["monomial".to_string(), "coefficient".to_string()];
    header.extend(primes.iter().map(|p| format!("p={p}")));
    let rows = COEFF_FORMULAS
        .iter()
        .map(|(mono, formula)| {
            let mut row = vec![mono.to_string(), formula.to_string()];
            row.extend(polys.iter().map(|poly| poly.coeff(minor::monomial(mono)).to_string()));
            row
        })
        .collect();
    Ok(Table { header, rows })
}

pub fn table(kind: TableKind, primes: &[u64]) -> Result<Table> {
    match kind {
        TableKind::Invariants => invariants_table(primes),
        TableKind::Coefficients => coefficients_table(primes),
        TableKind::Detlist => detlist_table(primes),
    }
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    pub fn to_text(&self) -> String {
        let cols = self.header.len();
        let width: Vec<usize> = (0..cols)
            .map(|c| {
                self.rows
                    .iter()
                    .map(|r| r[c].chars().count())
                    .chain([self.header[c].chars().count()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: &[String]| {
            cells
                .iter()
                .zip(&width)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
        };
        let mut out = line(&self.header);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&line(r));
            out.push('\n');
        }
        out
    }

    /// One JSON object per row keyed by the header.
    pub fn to_records(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            let obj: serde_json::Map<String, serde_json::Value> = self
                .header
                .iter()
                .zip(r)
                .map(|(h, v)| (h.clone(), serde_json::Value::String(v.clone())))
                .collect();
            out.push_str(&serde_json::Value::Object(obj).to_string());
            out.push('\n');
        }
        out
    }
}
