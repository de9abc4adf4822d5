//! Acceptance harness: one PASS/FAIL line per criterion, non-zero exit on any failure.

mod common;

use std::time::Instant;

use common::{c, corpus, expr, points, unit_disk, CORPUS, POLICY};
use vekua::cli::{self, EXIT_NUMERICAL, EXIT_PARSE, EXIT_USAGE};
use vekua::dbar::{self, DbarCandidate, PompeiuSolution};
use vekua::nlaplace::{self, Convention, NcrPair};
use vekua::structure::{self, HoloMode};
use vekua::wirtinger::{d_wirtinger, d_wirtinger_field};
use vekua::{wirtinger_symbolic, Complex64, ComplexField, ComplexPoint, GridDomain, StructuralFunction, Wrt};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

type Outcome = Result<Verdict, String>;

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn lemma_one_family() -> Outcome {
    let grid = unit_disk(64);
    let mut worst: f64 = 0.0;
    for phi in ["1", "z", "z^2", "exp(z)"] {
        for k in ["conj(z)", "0.5*conj(z)", "z*conj(z)"] {
            let s = StructuralFunction::from_expr(expr(k));
            let w = structure::construct_solution(expr(phi), &s);
            let r = structure::holo_residual(&w, &s, &grid, &POLICY, HoloMode::Structural).map_err(err)?;
            worst = worst.max(r.linf());
        }
    }
    Ok(verdict(worst <= 1e-6, format!("12 pairs, max linf {worst:.3e} (tol 1e-6)")))
}

fn worked_examples() -> Outcome {
    let mut linf = Vec::new();
    for n in 1..=3 {
        linf.push(cli::example_report(n).map_err(err)?.linf());
    }
    let r1 = cli::example_report(1).map_err(err)?;
    let k_zbar = match r1.params.get("K_zbar") {
        Some(vekua::report::ParamValue::Text(t)) => expr(t),
        other => return Err(format!("example 1 reports no K_zbar: {other:?}")),
    };
    let mut kerr: f64 = 0.0;
    for p in points(21, 20, 0.75) {
        let z = p.z();
        let exact = z * (z.norm_sqr()).exp();
        kerr = kerr.max((k_zbar.eval(z).map_err(err)? - exact).norm());
    }
    let pass = linf[0] <= 1e-6 && linf[1] <= 1e-8 && linf[2] <= 1e-6 && kerr <= 1e-8;
    Ok(verdict(
        pass,
        format!(
            "linf {:.3e} / {:.3e} / {:.3e} (tol 1e-6, 1e-8, 1e-6); K_zbar err {kerr:.3e} (tol 1e-8)",
            linf[0], linf[1], linf[2]
        ),
    ))
}

fn coefficient_pipeline() -> Outcome {
    let mut exact = true;
    let mut b_max: f64 = 0.0;
    let mut a_err: f64 = 0.0;
    for kappa in ["(0.7 - 0.3*i)*conj(z)", "i*conj(z)", "z*conj(z)"] {
        let s = StructuralFunction::kappa_expr(expr(kappa));
        let sym = wirtinger_symbolic(&expr(kappa), Wrt::ZBar);
        for p in points(3, 20, 0.9) {
            let rc = structure::coefficients_from_structure(&s, p, &POLICY).map_err(err)?;
            let cbv = structure::cbv_from_real(&rc);
            exact &= rc.a == rc.d && rc.b == -rc.c;
            b_max = b_max.max(cbv.b.norm());
            a_err = a_err.max((cbv.a - sym.eval(p.z()).map_err(err)?).norm());
        }
    }
    Ok(verdict(
        exact && b_max <= 1e-12 && a_err <= 1e-10,
        format!("a = d, b = -c exact: {exact}; max |B| {b_max:.3e} (tol 1e-12); A err {a_err:.3e} (tol 1e-10)"),
    ))
}

fn operator_split() -> Outcome {
    let ws = ["z^2", "exp(conj(z))", "z*conj(z)", "sin(z)*conj(z)", "cos(conj(z)) + z"];
    let kappas = ["conj(z)", "i*conj(z)", "z*conj(z)", "0.5*z + conj(z)^2", "exp(conj(z))"];
    let pts = points(4, 50, 0.9);
    let mut worst: f64 = 0.0;
    for (n, p) in pts.iter().enumerate() {
        let w = expr(ws[n % ws.len()]);
        let s = StructuralFunction::kappa_expr(expr(kappas[(n / ws.len()) % kappas.len()]));
        let (dx, dy) = structure::dx_dy_operators(&w, &s, *p, &POLICY).map_err(err)?;
        let d = structure::d_structural(&w, &s, *p, &POLICY).map_err(err)?;
        worst = worst.max((0.5 * (dx + Complex64::i() * dy) - d.d_zbar).norm());
    }
    Ok(verdict(worst <= 1e-8, format!("50 triples, max |(D_x + iD_y)/2 - D_zbar| {worst:.3e} (tol 1e-8)")))
}

fn dbar_solver() -> Outcome {
    let phi = expr("1");
    let started = Instant::now();
    let mut conj_err = Vec::new();
    let mut verify = Vec::new();
    for n in [64, 128, 256] {
        let grid = unit_disk(n);
        let sol = PompeiuSolution::new(&phi, &grid).map_err(err)?;
        let e = sol
            .values()
            .valid()
            .filter(|(p, _)| p.z().norm() <= 0.5)
            .map(|(p, h)| (h - p.z().conj()).norm())
            .fold(0.0, f64::max);
        conj_err.push(e);
        let r = dbar::verify_dbar(DbarCandidate::Solution(&sol), &phi, &grid, &POLICY).map_err(err)?;
        verify.push(r.linf());
    }
    let factors: Vec<f64> = verify.windows(2).map(|w| w[0] / w[1]).collect();
    let single = dbar::pompeiu_solve(&phi, &unit_disk(256), unit_disk(256).center(100, 140)).map_err(err)?;
    let pass = conj_err[2] <= 2e-2 && verify[2] <= 5e-2 && factors.iter().all(|&f| f >= 1.7) && single.is_finite();
    Ok(verdict(
        pass,
        format!(
            "n=256: |h - conj(z)| {:.3e} (tol 2e-2), verify linf {:.3e} (tol 5e-2); verify factors {:.2}, {:.2} (min 1.7); |h - conj(z)| 64/128/256 {:.2e} {:.2e} {:.2e}; {:.1}s",
            conj_err[2],
            verify[2],
            factors[0],
            factors[1],
            conj_err[0],
            conj_err[1],
            conj_err[2],
            started.elapsed().as_secs_f64()
        ),
    ))
}

fn reconstruction() -> Outcome {
    let grid = unit_disk(128);
    let targets = [(64, 64), (40, 70), (90, 50), (70, 100), (30, 30)].map(|(i, j)| grid.center(i, j));
    let mut errs = [0.0f64; 2];
    for (k, src) in ["z^2", "conj(z)"].iter().enumerate() {
        let w = expr(src);
        for &t in &targets {
            let r = dbar::cauchy_pompeiu_reconstruct(&w, &grid, t, &POLICY, 1024).map_err(err)?;
            errs[k] = errs[k].max((r.value() - w.eval(t.z()).map_err(err)?).norm());
        }
    }
    Ok(verdict(
        errs[0] <= 1e-3 && errs[1] <= 5e-2,
        format!("z^2 err {:.3e} (tol 1e-3); conj(z) err {:.3e} (tol 5e-2)", errs[0], errs[1]),
    ))
}

/// Step of the outer difference in the nested oracle.
const OUTER_STEP: f64 = 2.5e-4;

/// D_z̄ w as a field, differentiated numerically at the first-order step.
struct InnerDbar<'a> {
    w: &'a dyn ComplexField,
    s: &'a StructuralFunction,
}

impl ComplexField for InnerDbar<'_> {
    fn eval(&self, z: Complex64) -> vekua::Result<Complex64> {
        let p = ComplexPoint::new(z.re, z.im);
        Ok(structure::d_structural(self.w, self.s, p, &POLICY)?.d_zbar)
    }
}

fn composition() -> Outcome {
    let outer = vekua::StepPolicy::new(OUTER_STEP, POLICY.h2).map_err(err)?;
    let exprs = corpus();
    let pts = points(7, 50, 0.8);
    let mut worst: f64 = 0.0;
    for (n, p) in pts.iter().enumerate() {
        let w = &exprs[(7 * n) % exprs.len()];
        let s = StructuralFunction::from_expr(exprs[(3 * n + 1) % exprs.len()].clone());
        let lhs = nlaplace::nonlinear_laplace(w, &s, *p, &POLICY).map_err(err)?;
        let g = InnerDbar { w, s: &s };
        let rhs = structure::d_structural(&g, &s, *p, &outer).map_err(err)?.d_z;
        worst = worst.max((lhs - rhs).norm());
    }
    let grid = unit_disk(32);
    let mut null: f64 = 0.0;
    for phi in ["1", "z", "z^2", "exp(z)"] {
        for k in ["conj(z)", "0.5*conj(z)", "z*conj(z)"] {
            let s = StructuralFunction::from_expr(expr(k));
            let w = structure::construct_solution(expr(phi), &s);
            null = null.max(nlaplace::nl_laplace_residual(&w, &s, &grid, &POLICY).map_err(err)?.linf());
        }
    }
    Ok(verdict(
        worst <= 1e-5 && null <= 1e-5,
        format!("50 triples, max |Δ_K w - D_z(D_zbar w)| {worst:.3e} (tol 1e-5); solutions max |Δ_K w| {null:.3e} (tol 1e-5)"),
    ))
}

fn ncr_correspondence() -> Outcome {
    let cc = c(0.6, -0.4);
    let s = StructuralFunction::kappa_expr(expr("(0.6 - 0.4*i)*conj(z)"));
    let w = move |z: Complex64| (-cc * z.conj()).exp();
    let grid = unit_disk(64);
    let pair = NcrPair::from_structure(&s, ComplexPoint::new(0.0, 0.0), &POLICY).map_err(err)?;
    let (r1, r2) = nlaplace::ncr_residual(
        &vekua::field::RealPart(&w),
        &vekua::field::ImagPart(&w),
        &pair,
        &grid,
        &POLICY,
    )
    .map_err(err)?;
    let probe = GridDomain::rect(-2.0, 2.0, -2.0, 2.0, 16, 16).map_err(err)?;
    let cr = nlaplace::convention_holds(&nlaplace::fg_cr_check(&pair, &probe, &POLICY, Convention::Cr).map_err(err)?);
    let sw =
        nlaplace::convention_holds(&nlaplace::fg_cr_check(&pair, &probe, &POLICY, Convention::Swapped).map_err(err)?);
    let linf = r1.linf().max(r2.linf());
    Ok(verdict(
        linf <= 1e-6 && !cr && sw,
        format!("residual linf {linf:.3e} (tol 1e-6); cr holds: {cr} (expect false); swapped holds: {sw} (expect true)"),
    ))
}

fn symbolic_numeric() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut at = "";
    for (k, e) in corpus().iter().enumerate() {
        let dz = wirtinger_symbolic(e, Wrt::Z);
        let dzb = wirtinger_symbolic(e, Wrt::ZBar);
        for p in points(100 + k as u64, 100, 2.0) {
            let n = d_wirtinger(e, p, &POLICY).map_err(err)?;
            let d = (dz.eval(p.z()).map_err(err)? - n.d_z)
                .norm()
                .max((dzb.eval(p.z()).map_err(err)? - n.d_zbar).norm());
            if d > worst {
                worst = d;
                at = CORPUS[k];
            }
        }
    }
    Ok(verdict(worst <= 1e-6, format!("20 x 100 points, max err {worst:.3e} at {at} (tol 1e-6)")))
}

fn classic_reduction() -> Outcome {
    let grid = unit_disk(48);
    let one = StructuralFunction::constant(c(1.0, 0.0));
    let mut bitwise = true;
    for src in CORPUS {
        let w = expr(src);
        let r = structure::holo_residual(&w, &one, &grid, &POLICY, HoloMode::Structural).map_err(err)?;
        let (_, dzb) = d_wirtinger_field(&w, &grid, &POLICY).map_err(err)?;
        bitwise &= r.field.values().iter().zip(dzb.values()).all(|(a, b)| match (a, b) {
            (Some(a), Some(b)) => a.re.to_bits() == b.re.to_bits() && a.im.to_bits() == b.im.to_bits(),
            (None, None) => true,
            _ => false,
        });
    }
    let mut zero = true;
    for src in ["1", "-2*i", "z"] {
        let r = structure::holo_residual(&expr(src), &one, &grid, &POLICY, HoloMode::Structural).map_err(err)?;
        zero &= r.linf() == 0.0;
    }
    let mut holo: f64 = 0.0;
    for src in ["z^2", "exp(z)", "sin(z)", "z/(z - 3)", "log(z + 3)"] {
        let r = structure::holo_residual(&expr(src), &one, &grid, &POLICY, HoloMode::Structural).map_err(err)?;
        holo = holo.max(r.linf());
    }
    Ok(verdict(
        bitwise && zero && holo <= 1e-9,
        format!("bitwise over corpus: {bitwise}; affine w exactly zero: {zero}; other holomorphic max linf {holo:.3e} (FD noise tol 1e-9)"),
    ))
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut errs = Vec::new();
    let argv = std::iter::once("vekua").chain(args.iter().copied());
    let r = cli::run_with(argv, &mut out, &mut errs);
    (r.exit_code, out)
}

fn cli_contract() -> Outcome {
    let golden = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden");
    let mut identical = true;
    for n in 1..=3 {
        let expected = std::fs::read(format!("{golden}/example{n}.json")).map_err(err)?;
        let (code, out) = run_cli(&["examples", "run", &n.to_string()]);
        identical &= code == 0 && out == expected;
    }
    let usage = run_cli(&["check-holo", "--w", "z", "--domain", "disk:0,0,-1"]).0;
    let parse = run_cli(&["check-holo", "--w", "z+*2"]).0;
    let numerical = run_cli(&["check-holo", "--w", "1/z", "--domain", "rect:-1,1,-1,1", "--grid", "3"]).0;
    let codes = usage == EXIT_USAGE && parse == EXIT_PARSE && numerical == EXIT_NUMERICAL;
    Ok(verdict(
        identical && codes,
        format!("golden byte-identical: {identical}; exit codes {usage}/{parse}/{numerical} (expect 1/2/3)"),
    ))
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 11] = [
        ("solution family", lemma_one_family),
        ("worked examples", worked_examples),
        ("coefficient pipeline", coefficient_pipeline),
        ("operator split", operator_split),
        ("dbar solver", dbar_solver),
        ("reconstruction", reconstruction),
        ("composition identity", composition),
        ("ncr correspondence", ncr_correspondence),
        ("symbolic/numeric", symbolic_numeric),
        ("classic reduction", classic_reduction),
        ("cli contract", cli_contract),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let v = check().unwrap_or_else(|e| verdict(false, format!("error: {e}")));
        if !v.pass {
            failed += 1;
        }
        println!("{} {:>2} {name}: {}", if v.pass { "PASS" } else { "FAIL" }, k + 1, v.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
