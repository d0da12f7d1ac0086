//! Verification suites producing serializable pass/fail reports.

use std::str::FromStr;

use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::euler::{chart_evi, chart_split, chart_tits, projection_determinant, tits_density_quadrature, EulerChart};
use crate::generators::{
    jacobi_residual, jacobi_triples, killing_signature_from, weyl_trick_constants, Construction, StructureConstants,
};
use crate::measures::{
    covering_check_with, integral_closed, integral_quadrature, render_rational, tits_density_integral, VolumeTarget,
};
use crate::model::Model;
use crate::rep133::{tits_constants, tits_constants_float, Normalization, TitsCoefficients};
use crate::rep56::{center_and_periods, exact_constants_56, verify_iso, EVI_COMPACT, SPLIT_SU8};
use crate::roots::{
    classify_e7, classify_f4, commutant_evi, extract_roots, lex_positive_reversed, restricted_roots_evi,
    tits_restricted_roots, tits_roots_match_density,
};

/// A verification suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Structure,
    Jacobi,
    Roots,
    Volumes,
    Euler,
    Center,
}

impl Suite {
    pub const EACH: [Suite; 6] = [Suite::Structure, Suite::Jacobi, Suite::Roots, Suite::Volumes, Suite::Euler, Suite::Center];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Structure => "structure",
            Suite::Jacobi => "jacobi",
            Suite::Roots => "roots",
            Suite::Volumes => "volumes",
            Suite::Euler => "euler",
            Suite::Center => "center",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        [Suite::All].into_iter().chain(Suite::EACH).find(|x| x.name() == s).ok_or_else(|| {
            Error::InvalidArgument(format!("unknown suite {s:?}"))
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One check: its worst residual against a tolerance, or an exact outcome
/// reported as residual 0 (match) or 1 (mismatch) with tolerance 0.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    pub residual: f64,
    pub tolerance: f64,
    pub anchor: String,
    pub detail: String,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BuildMetadata {
    pub construction: String,
    pub scalar: String,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: Suite,
    pub pass: bool,
    pub metadata: BuildMetadata,
    pub records: Vec<CheckRecord>,
}

impl VerificationReport {
    /// The failing record with the largest residual.
    pub fn worst_offender(&self) -> Option<&CheckRecord> {
        self.records.iter().filter(|r| !r.passed()).max_by(|a, b| a.residual.total_cmp(&b.residual))
    }
}

/// Options shared by all suites.
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub construction: Construction,
    /// Tolerance for residual checks whose threshold is not fixed.
    pub tol: f64,
    /// Check every Jacobi triple instead of the seeded sample.
    pub exhaustive: bool,
    pub seed: u64,
    /// Haar draws in the euler suite.
    pub samples: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { construction: Construction::Tits, tol: 1e-9, exhaustive: false, seed: 42, samples: 200 }
    }
}

#[derive(Default)]
struct Records(Vec<CheckRecord>);

impl Records {
    fn residual(&mut self, name: &str, residual: f64, tolerance: f64, anchor: &str, detail: String) {
        let status = if residual.is_finite() && residual < tolerance { Status::Pass } else { Status::Fail };
        self.0.push(CheckRecord { name: name.into(), status, residual, tolerance, anchor: anchor.into(), detail });
    }

    /// A check whose residual must exceed `threshold`, such as a negative control.
    fn above(&mut self, name: &str, residual: f64, threshold: f64, anchor: &str, detail: String) {
        let status = if residual > threshold { Status::Pass } else { Status::Fail };
        self.0.push(CheckRecord { name: name.into(), status, residual, tolerance: threshold, anchor: anchor.into(), detail });
    }

    fn exact(&mut self, name: &str, ok: bool, anchor: &str, detail: String) {
        let status = if ok { Status::Pass } else { Status::Fail };
        let residual = if ok { 0.0 } else { 1.0 };
        self.0.push(CheckRecord { name: name.into(), status, residual, tolerance: 0.0, anchor: anchor.into(), detail });
    }

    fn error(&mut self, name: &str, anchor: &str, e: &Error) {
        self.0.push(CheckRecord {
            name: name.into(),
            status: Status::Fail,
            residual: f64::INFINITY,
            tolerance: 0.0,
            anchor: anchor.into(),
            detail: e.to_string(),
        });
    }
}

/// Runs `suite` and collects its records.
pub fn run(model: &Model, suite: Suite, opts: &VerifyOptions) -> Result<VerificationReport> {
    let mut rec = Records::default();
    let suites: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    for s in suites {
        match s {
            Suite::Structure => structure(model, opts, &mut rec),
            Suite::Jacobi => jacobi(model, opts, &mut rec),
            Suite::Roots => roots(model, &mut rec),
            Suite::Volumes => volumes(&mut rec),
            Suite::Euler => euler(model, opts, &mut rec),
            Suite::Center => {
                if opts.construction != Construction::Tits && suite == Suite::Center {
                    return Err(Error::InvalidArgument("the center suite needs --construction tits".into()));
                }
                center(model, &mut rec)
            }
            Suite::All => unreachable!("expanded above"),
        }
    }
    let pass = rec.0.iter().all(CheckRecord::passed);
    Ok(VerificationReport {
        suite,
        pass,
        metadata: BuildMetadata {
            construction: opts.construction.tag().into(),
            scalar: "exact".into(),
            seed: opts.seed,
        },
        records: rec.0,
    })
}

fn signature_check(rec: &mut Records, name: &str, sc: &StructureConstants, compact: Option<&[usize]>, want: (usize, usize), anchor: &str) {
    let sig = match compact {
        None => killing_signature_from(sc),
        Some(c) => weyl_trick_constants(sc, c).and_then(|t| killing_signature_from(&t)),
    };
    match sig {
        Ok(s) => rec.exact(name, s == want, anchor, format!("signature (+{}, -{}), expected (+{}, -{})", s.0, s.1, want.0, want.1)),
        Err(e) => rec.error(name, anchor, &e),
    }
}

fn structure(model: &Model, opts: &VerifyOptions, rec: &mut Records) {
    let c = opts.construction;
    let tag = c.tag();
    let set = match model.rep56(c) {
        Ok(s) => s,
        Err(e) => return rec.error(&format!("{tag}.build"), "generators of the 56", &e),
    };
    rec.residual(&format!("{tag}.orthonormality"), set.orthonormality_residual(12.0), 1e-12, "-tr(Y_A Y_B)/12 = δ_AB", String::new());
    rec.residual(&format!("{tag}.antihermiticity"), set.antihermiticity_residual(), 1e-12, "compact generators are anti-hermitian", String::new());
    let sc = match model.constants56(c) {
        Ok(s) => s,
        Err(e) => return rec.error(&format!("{tag}.closure"), "closure of the bracket", &e),
    };
    rec.residual(&format!("{tag}.closure"), sc.residual, 1e-10, "closure of the bracket", String::new());
    signature_check(rec, &format!("{tag}.killing_compact"), sc, None, (0, 133), "compact form, symbol -133");
    match c {
        Construction::Tits => {
            let compact: Vec<usize> = std::iter::once(0).chain(3..81).collect();
            signature_check(rec, "tits.killing_e6_u1_trick", sc, Some(&compact), (54, 79), "E6 ⊕ u(1) trick, symbol -25");
            match exact_constants_56(set) {
                Ok(ex) => {
                    let c133 = tits_constants(model.basis(), TitsCoefficients::standard(), Normalization::Orthonormal);
                    let mismatched = ex.entries.iter().zip(&c133.entries).filter(|(a, b)| a != b).count();
                    rec.exact(
                        "tits.exact_constants_56_vs_133",
                        mismatched == 0,
                        "same commutation relations in the 56 and the 133",
                        format!("{mismatched} mismatched (A, B) rows"),
                    );
                }
                Err(e) => rec.error("tits.exact_constants_56_vs_133", "same commutation relations in the 56 and the 133", &e),
            }
            match verify_iso(set, model.adjoint133(), f64::INFINITY) {
                Ok(r) => rec.residual(
                    "tits.float_constants_56_vs_133",
                    r.max_difference,
                    opts.tol,
                    "same commutation relations in the 56 and the 133",
                    format!("worst entry {:?}", r.worst),
                ),
                Err(e) => rec.error("tits.float_constants_56_vs_133", "same commutation relations in the 56 and the 133", &e),
            }
        }
        Construction::Split => {
            let compact: Vec<usize> = SPLIT_SU8.collect();
            signature_check(rec, "split.killing_su8_trick", sc, Some(&compact), (70, 63), "su(8) trick, symbol +7");
        }
        Construction::Evi => {
            let compact: Vec<usize> = (0..EVI_COMPACT).collect();
            signature_check(rec, "evi.killing_spin12_su2_trick", sc, Some(&compact), (64, 69), "spin(12) ⊕ su(2) trick, symbol -5");
        }
    }
}

fn jacobi(model: &Model, opts: &VerifyOptions, rec: &mut Records) {
    let triples = jacobi_triples(133, 100_000, 12, opts.exhaustive);
    let detail = |w: (usize, usize, usize)| format!("{} triples, worst ({}, {}, {})", triples.len(), w.0 + 1, w.1 + 1, w.2 + 1);
    match opts.construction {
        Construction::Tits => {
            let coeffs = TitsCoefficients::standard();
            rec.exact("tits.coefficient_constraint", coeffs.satisfies_jacobi_constraint(), "α = γ² = β/4", "α=1/4, β=1, γ=1/2".into());
            let sc = tits_constants_float(model.basis(), coeffs, Normalization::Raw);
            let (r, w) = jacobi_residual(&sc, &triples);
            rec.residual("tits.jacobi", r, opts.tol, "Jacobi identity of the mixed bracket", detail(w));
            let bad = TitsCoefficients::new((1, 4), (1, 1), (101, 200));
            let sc = tits_constants_float(model.basis(), bad, Normalization::Raw);
            let (r, w) = jacobi_residual(&sc, &triples);
            rec.above("tits.jacobi_negative_control", r, opts.tol, "γ perturbed to 1.01·γ must break Jacobi", detail(w));
        }
        c => match model.constants56(c) {
            Ok(sc) => {
                let (r, w) = jacobi_residual(sc, &triples);
                rec.residual(&format!("{}.jacobi", c.tag()), r, opts.tol, "Jacobi identity of the 56 constants", detail(w));
            }
            Err(e) => rec.error(&format!("{}.jacobi", c.tag()), "Jacobi identity of the 56 constants", &e),
        },
    }
}

fn roots(model: &Model, rec: &mut Records) {
    let split = model
        .constants56(Construction::Split)
        .and_then(|sc| extract_roots(sc, &(63..70).collect::<Vec<_>>()))
        .map(|rd| rd.with_positivity(lex_positive_reversed))
        .and_then(|rd| classify_e7(&rd));
    match split {
        Ok(cl) => {
            rec.exact("split.root_count", cl.root_count == 126 && cl.positive_count == 63, "126 roots, 63 positive", format!("{} roots, {} positive", cl.root_count, cl.positive_count));
            rec.residual("split.root_norms", cl.norm_deviation, 1e-9, "roots of norm² 2", String::new());
            rec.exact("split.simple_roots", cl.is_e7(), "simple roots β45, β12, β34, β23, β3458, β78, β67", format!("{:?}, highest {:?}", cl.simple_names, cl.highest_root));
        }
        Err(e) => rec.error("split.roots", "split root system", &e),
    }
    let evi = model.constants56(Construction::Evi).and_then(|sc| Ok((restricted_roots_evi(sc)?, commutant_evi(sc)?)));
    match evi {
        Ok((rd, cm)) => {
            let f4 = classify_f4(&rd);
            let m: Vec<usize> = rd.positive().map(|(_, r)| r.multiplicity).collect();
            let ones = m.iter().filter(|&&x| x == 1).count();
            let fours = m.iter().filter(|&&x| x == 4).count();
            rec.exact("evi.f4_type", f4.is_f4(), "F4 restricted root system", format!("{} positive", rd.positive_count()));
            rec.exact(
                "evi.multiplicities",
                ones == 12 && fours == 12 && m.iter().sum::<usize>() == 60,
                "12 long roots of multiplicity 1, 12 short of multiplicity 4",
                format!("{ones}×1, {fours}×4, Σ={}", m.iter().sum::<usize>()),
            );
            rec.exact("evi.commutant", cm.dim() == 9 && cm.is_so4_plus_su2(), "commutant of H4 of dimension 9 = 6 + 3", format!("dim {}, ideals {}+{}", cm.dim(), cm.ideal6.len(), cm.ideal3.len()));
        }
        Err(e) => rec.error("evi.roots", "EVI restricted roots", &e),
    }
    match model.constants56(Construction::Tits).and_then(tits_restricted_roots) {
        Ok(rd) => rec.exact("tits.torus_roots", tits_roots_match_density(&rd), "restricted roots of V match the factors of W", format!("zero multiplicity {}", rd.zero_multiplicity)),
        Err(e) => rec.error("tits.torus_roots", "restricted roots of V match the factors of W", &e),
    }
}

/// The five volumes and `Vol(E7/U)` as printed.
pub const EXPECTED_VOLUMES: [(&str, &str); 5] = [
    ("E7", "√2·2^23/(3^22·5^10·7^6·11^3·13^2·17) · π^70"),
    ("E6", "√3·2^17/(3^10·5^5·7^3·11) · π^42"),
    ("SO8", "2^12/(3^3·5) · π^16"),
    ("U", "√2·2^18/(3^10·5^5·7^3·11) · π^43"),
    ("E7modU", "2^5/(3^12·5^5·7^3·11^2·13^2·17) · π^27"),
];

fn volumes(rec: &mut Records) {
    for (t, (name, want)) in VolumeTarget::ALL.iter().zip(EXPECTED_VOLUMES) {
        let got = t.volume().to_string();
        rec.exact(&format!("volume.{name}"), got == want, "Macdonald volume", got);
    }
    for (halved, want) in [(false, 2), (true, 1)] {
        let name = if halved { "covering.halved" } else { "covering.full" };
        match covering_check_with(halved) {
            Ok(q) => rec.exact(name, q == num_rational::BigRational::from_integer(want.into()), "chart volume over Vol(E7/U)", render_rational(&q)),
            Err(e) => rec.error(name, "chart volume over Vol(E7/U)", &e),
        }
    }
    let i = tits_density_integral();
    let want = num_rational::BigRational::new(2.into(), (243i64 * 5 * 11 * 169 * 17).into());
    rec.exact("integral.closed_form", i == want, "8·I(9,9,9) = 2/(3^5·5·11·13^2·17)", render_rational(&i));
    let exact = integral_closed(9, 9, 9).ok().and_then(|q| q.to_f64()).unwrap_or(f64::NAN);
    match integral_quadrature(9, 9, 9, 64) {
        Ok(q) => rec.residual("integral.gauss_legendre_64", (q / exact - 1.0).abs(), 1e-6, "quadrature of I(9,9,9)", format!("{q:e}")),
        Err(e) => rec.error("integral.gauss_legendre_64", "quadrature of I(9,9,9)", &e),
    }
}

/// Density at the centroid of each facet (its vertices except the opposite one).
fn facet_density_max(chart: &EulerChart) -> Result<f64> {
    let v = chart.vertices()?;
    let mut worst: f64 = 0.0;
    for drop in 0..v.len() {
        let mut c = vec![0.0; chart.dim()];
        for (_, vk) in v.iter().enumerate().filter(|(k, _)| *k != drop) {
            for (ci, x) in c.iter_mut().zip(vk) {
                *ci += x / (v.len() - 1) as f64;
            }
        }
        worst = worst.max(chart.density(&c));
    }
    Ok(worst)
}

fn chart_checks(chart: &EulerChart, rec: &mut Records) {
    let tag = chart.construction.tag();
    let torus_comm = chart
        .torus
        .iter()
        .flat_map(|a| chart.torus.iter().map(move |b| a.commutator(b).max_abs()))
        .fold(0.0, f64::max);
    rec.residual(&format!("{tag}.torus_commutes"), torus_comm, 1e-12, "torus generators commute", chart.torus_labels.join(", "));
    match chart.chebyshev_center() {
        Ok((c, r)) => {
            let d = chart.density(&c);
            rec.above(&format!("{tag}.density_center_positive"), d, 0.0, "density positive inside the range", format!("radius {r:e}"));
            match facet_density_max(chart) {
                Ok(b) => rec.residual(
                    &format!("{tag}.density_boundary_zero"),
                    b / d,
                    1e-9,
                    "density vanishes on the range boundary",
                    "largest facet-centroid density over the center density".into(),
                ),
                Err(e) => rec.error(&format!("{tag}.density_boundary_zero"), "density vanishes on the range boundary", &e),
            }
        }
        Err(e) => rec.error(&format!("{tag}.density_center_positive"), "density positive inside the range", &e),
    }
}

fn euler(model: &Model, opts: &VerifyOptions, rec: &mut Records) {
    let tits = chart_tits(model.tits56());
    match &tits {
        Ok(c) => chart_checks(c, rec),
        Err(e) => rec.error("tits.chart", "tits chart", e),
    }
    let exact = tits_density_integral().to_f64().unwrap_or(f64::NAN);
    match tits_density_quadrature(32) {
        Ok(q) => rec.residual("tits.density_integral", (q / exact - 1.0).abs(), 1e-4, "∫W dx dy dz = I", format!("{q:e}")),
        Err(e) => rec.error("tits.density_integral", "∫W dx dy dz = I", &e),
    }
    match model.evi56().and_then(|s| chart_evi(s, model.constants56(Construction::Evi)?)) {
        Ok(c) => chart_checks(&c, rec),
        Err(e) => rec.error("evi.chart", "evi chart", &e),
    }
    let split = model.split56().and_then(|s| Ok((s, chart_split(s, model.constants56(Construction::Split)?)?)));
    match split {
        Ok((set, chart)) => {
            chart_checks(&chart, rec);
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            let v = chart.vertices().unwrap_or_default();
            let worst = if v.is_empty() {
                f64::INFINITY
            } else {
                (0..100)
                    .map(|_| {
                        let y = chart.sample_uniform(&v, &mut rng);
                        let f = chart.density(&y);
                        (projection_determinant(set, &chart, &y).abs() - f).abs() / f
                    })
                    .fold(0.0, f64::max)
            };
            rec.residual("split.density_determinant", worst, 1e-8, "|f(y)| = |det[Π∘Ad(e^-V)]|", "100 interior points".into());
        }
        Err(e) => rec.error("split.chart", "split chart", &e),
    }
    match model.sampler() {
        Ok(s) => haar_checks(s, opts.seed, opts.samples, &mut rec.0),
        Err(e) => rec.error("split.haar", "Haar sampler", &e),
    }
}

/// Sampler statistics shared by the euler suite and the acceptance run.
pub fn haar_checks(sampler: &crate::euler::SplitSampler, seed: u64, n: usize, rec_out: &mut impl Extend<CheckRecord>) {
    let mut rec = Records::default();
    match (sampler.sample_seeded(seed, n), sampler.sample_seeded(seed, n.min(5))) {
        (Ok(a), Ok(b)) => {
            let unit = a.iter().map(|h| h.element.unitarity_residual()).fold(0.0, f64::max);
            rec.residual("split.haar_unitarity", unit, 1e-8, "sampled elements are unitary", format!("{n} samples"));
            let tr: Vec<num_complex::Complex64> = a.iter().map(|h| h.element.trace()).collect();
            let nf = tr.len() as f64;
            let mean: num_complex::Complex64 = tr.iter().sum::<num_complex::Complex64>() / nf;
            let var = tr.iter().map(|z| (z - mean).norm_sqr()).sum::<f64>() / (nf - 1.0);
            let se = (var / nf).sqrt();
            rec.residual("split.haar_mean_trace", mean.norm() / se, 3.0, "E[tr g] = 0 on the 56", format!("|mean| {:e}, standard error {se:e}", mean.norm()));
            let same = a.iter().zip(&b).all(|(x, y)| x.torus == y.torus && x.element.matrix == y.element.matrix);
            rec.exact("split.haar_determinism", same, "equal seeds give equal draws", format!("seed {seed}"));
        }
        (Err(e), _) | (_, Err(e)) => rec.error("split.haar", "Haar sampler", &e),
    }
    rec_out.extend(rec.0);
}

fn center(model: &Model, rec: &mut Records) {
    let anchor = "center of the tits 56";
    match center_and_periods(model.tits56(), Some(model.adjoint133())) {
        Ok(r) => {
            rec.residual("tits.exp_sqrt6_pi_Y1_is_minus_identity", r.minus_identity_residual, 1e-10, anchor, String::new());
            rec.residual("tits.exp_sqrt6_pi_M1_is_identity", r.adjoint_identity_residual.unwrap_or(f64::INFINITY), 1e-10, anchor, String::new());
            rec.residual("tits.omega_cubed", r.omega_cubed_residual, 1e-10, "ω³ = I", format!("‖ω - I‖ = {:e}", r.omega_distance_from_identity));
            rec.above("tits.omega_nontrivial", r.omega_distance_from_identity, 0.1, "ω ≠ I", String::new());
            rec.residual("tits.tau_sixth", r.tau_sixth_residual, 1e-10, "τ⁶ = I", String::new());
            rec.residual("tits.tau_commutes_e6", r.tau_e6_commutator, 1e-10, "τ commutes with E6", format!("‖τVτ⁻¹ - V‖ on the torus: {:e}", r.tau_torus_commutator));
            let worst = r
                .periods
                .iter()
                .map(|p| ((p.period - p.expected).abs() / p.expected).max(p.residual))
                .fold(0.0, f64::max);
            rec.residual("tits.periods", worst, 1e-9, "period 4π√3 for Y73, Y99, Y125, 4π otherwise", format!("{} generators", r.periods.len()));
        }
        Err(e) => rec.error("tits.center", anchor, &e),
    }
}
