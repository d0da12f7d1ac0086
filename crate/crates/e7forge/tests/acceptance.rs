//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! The process exits nonzero when a criterion fails, unless every failing
//! check is listed in [`FALSE_CLAIMS`] (a stated value that the computation
//! contradicts), in which case the line still reads FAIL with the reason.

use std::process::ExitCode;
use std::time::Instant;

use e7forge::f4e6::{cubic_invariance_residual, verify_identities};
use e7forge::generators::Construction;
use e7forge::jordan::JordanBasis;
use e7forge::measures::{integral_closed, integral_quadrature, tits_density_integral};
use e7forge::model::Model;
use e7forge::roots::{classify_e7, extract_roots, lex_positive_reversed, E7_HIGHEST, E7_SIMPLE_NAMES};
use e7forge::verify::{haar_checks, run, CheckRecord, Suite, VerificationReport, VerifyOptions};
use num_traits::ToPrimitive;

/// Checks whose stated target the computation contradicts, with the reason.
const FALSE_CLAIMS: [(&str, &str); 1] =
    [("integral.w_equals_2sqrt2_i", "∫W over the range equals I itself, so the factor 2√2 is not there")];

struct Line {
    checks: Vec<(String, bool, String)>,
}

impl Line {
    fn new() -> Self {
        Self { checks: Vec::new() }
    }

    fn check(&mut self, name: &str, ok: bool, detail: impl Into<String>) {
        self.checks.push((name.into(), ok, detail.into()));
    }

    fn records(&mut self, rep: &VerificationReport, names: &[&str]) {
        for n in names {
            match rep.records.iter().find(|r| r.name == *n) {
                Some(r) => self.record(r),
                None => self.check(n, false, "missing record"),
            }
        }
    }

    fn record(&mut self, r: &CheckRecord) {
        self.check(&r.name, r.passed(), format!("{:.3e}", r.residual));
    }
}

fn report(model: &Model, suite: Suite, construction: Construction, samples: usize) -> VerificationReport {
    let opts = VerifyOptions { construction, samples, ..VerifyOptions::default() };
    run(model, suite, &opts).expect("suite runs")
}

fn main() -> ExitCode {
    let model = Model::new();
    let mut lines: Vec<(&str, Line)> = Vec::new();

    // 1
    let start = Instant::now();
    let structure_tits = report(&model, Suite::Structure, Construction::Tits, 2);
    let secs = start.elapsed().as_secs_f64();
    let mut l = Line::new();
    l.records(&structure_tits, &["tits.exact_constants_56_vs_133", "tits.float_constants_56_vs_133"]);
    l.check("runtime_under_5_min", secs < 300.0, format!("{secs:.1} s"));
    lines.push(("structure constants of the 56 and the 133 agree", l));

    // 2
    let mut l = Line::new();
    l.records(&report(&model, Suite::Jacobi, Construction::Tits, 2), &["tits.jacobi", "tits.jacobi_negative_control"]);
    lines.push(("Jacobi identity, with the perturbed-γ control failing", l));

    // 3
    let structure_split = report(&model, Suite::Structure, Construction::Split, 2);
    let structure_evi = report(&model, Suite::Structure, Construction::Evi, 2);
    let mut l = Line::new();
    l.records(&structure_tits, &["tits.killing_compact", "tits.killing_e6_u1_trick"]);
    l.records(&structure_split, &["split.killing_su8_trick"]);
    l.records(&structure_evi, &["evi.killing_spin12_su2_trick"]);
    lines.push(("Killing signatures (0,133), (70,63), (64,69), (54,79)", l));

    // 4
    let mut l = Line::new();
    l.records(
        &report(&model, Suite::Center, Construction::Tits, 2),
        &["tits.exp_sqrt6_pi_Y1_is_minus_identity", "tits.exp_sqrt6_pi_M1_is_identity", "tits.omega_cubed", "tits.periods"],
    );
    lines.push(("center element, ω³ = I and generator periods", l));

    // 5
    let mut l = Line::new();
    l.records(&structure_tits, &["tits.orthonormality"]);
    l.records(&structure_split, &["split.orthonormality"]);
    l.records(&structure_evi, &["evi.orthonormality"]);
    lines.push(("orthonormality -tr(Y_A Y_B)/12 = δ_AB", l));

    // 6
    let roots = report(&model, Suite::Roots, Construction::Tits, 2);
    let mut l = Line::new();
    l.records(&roots, &["split.root_count", "split.root_norms", "split.simple_roots"]);
    match model
        .constants56(Construction::Split)
        .and_then(|sc| extract_roots(sc, &(63..70).collect::<Vec<_>>()))
        .and_then(|rd| classify_e7(&rd.with_positivity(lex_positive_reversed)))
    {
        Ok(cl) => {
            l.check("simple_names", cl.simple_names.iter().map(String::as_str).eq(E7_SIMPLE_NAMES), cl.simple_names.join(" "));
            l.check("highest_root", cl.highest_root == E7_HIGHEST, format!("{:?}", cl.highest_root));
        }
        Err(e) => l.check("classification", false, e.to_string()),
    }
    lines.push(("E7 root system: 126 roots, simple roots and highest root", l));

    // 7
    let mut l = Line::new();
    l.records(&roots, &["evi.f4_type", "evi.multiplicities", "evi.commutant"]);
    lines.push(("EVI restricted roots F4 and commutant 6 + 3", l));

    // 8
    let volumes = report(&model, Suite::Volumes, Construction::Tits, 2);
    let mut l = Line::new();
    l.records(
        &volumes,
        &["volume.E7", "volume.E6", "volume.SO8", "volume.U", "volume.E7modU", "covering.full", "covering.halved"],
    );
    lines.push(("volumes exact and covering factors 2 and 1", l));

    // 9
    let mut l = Line::new();
    l.records(&volumes, &["integral.closed_form", "integral.gauss_legendre_64"]);
    let start = Instant::now();
    let timed = integral_closed(9, 9, 9).and_then(|_| integral_quadrature(9, 9, 9, 64));
    let secs = start.elapsed().as_secs_f64();
    let exact = tits_density_integral().to_f64().unwrap_or(f64::NAN);
    match e7forge::euler::tits_density_quadrature(64) {
        Ok(w) => {
            let target = 2.0 * 2f64.sqrt() * exact;
            let rel = (w / target - 1.0).abs();
            l.check("integral.w_equals_2sqrt2_i", rel < 1e-4, format!("∫W = {w:.6e}, 2√2·I = {target:.6e}"));
            l.check("integral.w_equals_i", (w / exact - 1.0).abs() < 1e-4, format!("relative {:.1e}", (w / exact - 1.0).abs()));
        }
        Err(e) => l.check("integral.w_quadrature", false, e.to_string()),
    }
    l.check("runtime_under_60_s", timed.is_ok() && secs < 60.0, format!("{secs:.2} s"));
    lines.push(("8·I(9,9,9) exact, Gauss–Legendre and ∫W", l));

    // 10
    let euler = report(&model, Suite::Euler, Construction::Tits, 2);
    let mut l = Line::new();
    l.records(&euler, &["split.density_determinant"]);
    lines.push(("density equals the projected-adjoint determinant", l));

    // 11
    let mut l = Line::new();
    match model.sampler() {
        Ok(s) => {
            let mut recs: Vec<CheckRecord> = Vec::new();
            haar_checks(s, 42, 1000, &mut recs);
            for r in &recs {
                l.record(r);
            }
        }
        Err(e) => l.check("split.haar", false, e.to_string()),
    }
    lines.push(("Haar sampler over 1000 draws", l));

    // 12
    let mut l = Line::new();
    for (name, v) in verify_identities(JordanBasis::standard(), model.basis()).entries() {
        l.check(name, v < 1e-12, format!("{v:.1e}"));
    }
    let cubic = cubic_invariance_residual(model.basis());
    l.check("cubic_invariance", cubic < 1e-12, format!("{cubic:.1e}"));
    lines.push(("F4/E6 identities and cubic invariance", l));

    let mut unexpected = false;
    for (k, (title, line)) in lines.iter().enumerate() {
        let failures: Vec<&(String, bool, String)> = line.checks.iter().filter(|c| !c.1).collect();
        let status = if failures.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {}: {status} {title}", k + 1);
        for (name, ok, detail) in &line.checks {
            println!("    {} {name}: {detail}", if *ok { "ok  " } else { "FAIL" });
        }
        for (name, _, _) in &failures {
            match FALSE_CLAIMS.iter().find(|(n, _)| n == name) {
                Some((_, why)) => println!("    known false: {why}"),
                None => unexpected = true,
            }
        }
    }
    if unexpected {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
