//! Acceptance suite: one line per criterion, nonzero exit on any failure.

mod common;

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};
use std::process::ExitCode;
use std::time::Instant;

use common::TestRng;
use qudit_core::encoder::xi_matrix;
use qudit_core::*;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cis(t: f64) -> C64 {
    C64::from_polar(1.0, t)
}

fn lifted(basis: &Basis) -> Vec<TwoQubitState> {
    basis.states.iter().map(BasisState::lifted).collect()
}

fn reference_unitaries() -> [ComplexMatrix2; 3] {
    let h = C64::new(FRAC_1_SQRT_2, 0.0);
    let one = C64::new(1.0, 0.0);
    let m = |a: C64, b: C64| ComplexMatrix2::new([[h, h], [a * h, b * h]]).unwrap();
    [
        m(one, -one),
        m(cis(-2.0 * PI / 3.0), cis(PI / 3.0)),
        m(cis(2.0 * PI / 3.0), cis(-PI / 3.0)),
    ]
}

fn ac1_v_basis_seed() -> Check {
    let exact = (SQRT_2 + 1.0) / 6f64.sqrt();
    let fam = qutrit_mub_family();
    let xs: Vec<f64> = lifted(&fam[1]).iter().map(|s| encode(s).unwrap().x).collect();
    for x in &xs {
        ensure((x - exact).abs() <= 1e-12, || {
            format!("x = {x}, closed form {exact}")
        })?;
        ensure((x - 0.986).abs() <= 5e-4, || format!("x = {x} vs 0.986"))?;
    }
    let spread = xs.iter().fold(0.0f64, |m, x| m.max((x - xs[0]).abs()));
    ensure(spread <= 1e-12, || format!("seeds differ by {spread}"))?;
    Ok(format!("x = {:.15} for v_I, v_II, v_III", xs[0]))
}

fn ac2_second_seed() -> Check {
    let exact = ((3.0 + SQRT_2) / 6.0).sqrt();
    let fam = qutrit_mub_family();
    let mut n = 0;
    for basis in &fam[2..] {
        for s in lifted(basis) {
            let plan = encode(&s).unwrap();
            let partner = (1.0 - plan.x * plan.x).sqrt();
            ensure((plan.x - exact).abs() <= 1e-12, || format!("x = {}", plan.x))?;
            ensure((plan.x - 0.858).abs() <= 5e-4, || {
                format!("x = {} vs 0.858", plan.x)
            })?;
            ensure((partner - 0.514).abs() <= 5e-4, || {
                format!("partner = {partner} vs 0.514")
            })?;
            n += 1;
        }
    }
    Ok(format!("{n} states, x = {exact:.15}"))
}

fn ac3_reference_unitaries() -> Check {
    let fam = qutrit_mub_family();
    let mut worst: f64 = 0.0;
    for (s, reference) in lifted(&fam[1]).iter().zip(reference_unitaries()) {
        let plan = encode(s).unwrap();
        for factor in [plan.u, plan.w] {
            let z = reference.adjoint() * factor;
            let dev = z
                .get(0, 1)
                .norm()
                .max(z.get(1, 0).norm())
                .max(z.unitarity_deviation());
            worst = worst.max(dev);
        }
        ensure(fidelity(&plan.apply(), s) >= 1.0 - 1e-10, || {
            "plan does not reproduce state".into()
        })?;
    }
    ensure(worst <= 1e-10, || {
        format!("(U_i)†u deviates from diagonal unitary by {worst:e}")
    })?;
    Ok(format!("max deviation {worst:.1e}"))
}

fn ac4_waveplates() -> Check {
    let [u1, u2, u3] = reference_unitaries();
    let hwp = element_jones(&OpticalElement::HalfWavePlate { axis: PI / 8.0 });
    let pp = |d| element_jones(&OpticalElement::PhasePlate { delta: d });
    let devs = [
        hwp.max_abs_diff(&u1),
        (pp(2.0 * PI / 3.0) * hwp).max_abs_diff(&u2),
        (pp(-2.0 * PI / 3.0) * hwp).max_abs_diff(&u3),
    ];
    let worst = devs.iter().copied().fold(0.0, f64::max);
    ensure(worst <= 1e-12, || format!("deviations {devs:?}"))?;
    Ok(format!("max deviation {worst:.1e}"))
}

fn ac5_closed_form() -> Check {
    let mut rng = TestRng::new(2024);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let (psi, phi) = (rng.range(-PI, PI), rng.range(-PI, PI));
        let xi = xi_closed_form(psi, phi);
        let target = xi_matrix(psi, phi);
        let rec = xi.reconstruct().max_abs_diff(&target);
        let s = svd2(&target).unwrap();
        let (hi, lo) = (xi.d.0.max(xi.d.1), xi.d.0.min(xi.d.1));
        let set = (hi - s.d1).abs().max((lo - s.d2).abs());
        worst = worst.max(rec).max(set);
        ensure(rec <= 1e-12 && set <= 1e-12, || {
            format!("(ψ, φ) = ({psi}, {phi}): rec {rec:e}, set {set:e}")
        })?;
    }
    Ok(format!("100 pairs, max deviation {worst:.1e}"))
}

fn ac6_round_trip() -> Check {
    let mut rng = TestRng::new(6);
    let mut worst = 1.0f64;
    for _ in 0..1000 {
        let s = rng.state();
        let f = fidelity(&encode(&s).unwrap().apply(), &canonicalize(&s).unwrap());
        worst = worst.min(f);
    }
    ensure(worst >= 1.0 - 1e-10, || format!("min fidelity {worst}"))?;
    let mut worst_z = 1.0f64;
    for _ in 0..100 {
        let plan = encode(&rng.state()).unwrap();
        let moved = plan.rephased(rng.phase(), rng.phase());
        worst_z = worst_z.min(fidelity(&moved.apply(), &plan.apply()));
    }
    ensure(worst_z >= 1.0 - 1e-10, || {
        format!("min Z-invariance fidelity {worst_z}")
    })?;
    Ok(format!(
        "1 - min fidelity = {:.1e}, Z-invariance {:.1e}",
        1.0 - worst,
        1.0 - worst_z
    ))
}

fn ac7_mub() -> Check {
    let qutrit = verify_mub(&qutrit_mub_family(), 1e-10).map_err(|e| e.to_string())?;
    ensure(qutrit.passed() && qutrit.orthonormality.len() == 4, || {
        format!("{qutrit:?}")
    })?;
    let fam = ququad_mub_family();
    let ququad = verify_mub(&fam, 1e-10).map_err(|e| e.to_string())?;
    ensure(ququad.passed() && ququad.orthonormality.len() == 5, || {
        format!("{ququad:?}")
    })?;
    let flags: Vec<bool> = fam.iter().map(|b| bell_check(b).unwrap()).collect();
    ensure(flags == [false, false, false, true, true], || {
        format!("bell flags {flags:?}")
    })?;

    let i = C64::new(0.0, 1.0);
    let zero = C64::new(0.0, 0.0);
    let paulis = [
        ComplexMatrix2::from_real([[1.0, 0.0], [0.0, -1.0]]).unwrap(),
        ComplexMatrix2::from_real([[0.0, 1.0], [1.0, 0.0]]).unwrap(),
        ComplexMatrix2::new([[zero, -i], [i, zero]]).unwrap(),
    ];
    for (basis, sigma) in fam.iter().zip(paulis) {
        for s in lifted(basis) {
            let v = s.to_vector();
            let out = tensor_apply(&sigma, &sigma, &v);
            let plus = out.max_abs_diff(&v);
            let minus = out.max_abs_diff(&v.scale(C64::new(-1.0, 0.0)));
            ensure(plus.min(minus) <= 1e-12, || {
                format!("basis {} not an eigenbasis", basis.label)
            })?;
        }
    }
    Ok(format!(
        "qutrit dev {:.1e}/{:.1e}, ququad dev {:.1e}/{:.1e}",
        qutrit.max_orthonormality_deviation(),
        qutrit.max_overlap_deviation(),
        ququad.max_orthonormality_deviation(),
        ququad.max_overlap_deviation()
    ))
}

fn ac8_qkd() -> Check {
    let clean = simulate_two_basis_qkd(100_000, false, 42);
    ensure(clean.qber == 0.0 && clean.errors == 0, || {
        format!("eve off: {clean:?}")
    })?;
    let attacked = simulate_two_basis_qkd(100_000, true, 42);
    ensure((attacked.qber - 0.375).abs() <= 0.01, || {
        format!("eve on: {attacked:?}")
    })?;
    let again = simulate_two_basis_qkd(100_000, true, 42);
    ensure(again == attacked, || "rerun differs".into())?;
    Ok(format!(
        "eve off qber {}, eve on qber {:.4} (sift rate {:.4})",
        clean.qber, attacked.qber, attacked.sift_rate
    ))
}

fn ac9_pump() -> Check {
    let mut worst: f64 = 0.0;
    for k in 0..=10 {
        let x = k as f64 / 10.0;
        let back =
            seed_from_pump(&pump_for_seed(x).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        worst = worst.max((back - x).abs());
    }
    ensure(worst <= 1e-12, || format!("round-trip error {worst:e}"))?;
    for branch in [PumpBranch::LowerHH, PumpBranch::LowerVV] {
        let x = seed_from_pump(&PumpSetting { branch, theta_p: 0.0 }).unwrap();
        ensure((x - FRAC_1_SQRT_2).abs() <= 1e-12, || {
            format!("{branch:?} at 0 gives {x}")
        })?;
    }
    Ok(format!("max round-trip error {worst:.1e}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("AC1 qutrit v-basis seed (√2+1)/√6", ac1_v_basis_seed),
        ("AC2 second seed √((3+√2)/6)", ac2_second_seed),
        ("AC3 printed unitaries up to diagonal phases", ac3_reference_unitaries),
        ("AC4 half-wave plate at π/8 plus phase plates", ac4_waveplates),
        ("AC5 ξ-family closed form", ac5_closed_form),
        ("AC6 SVD encoding round trip and Z-invariance", ac6_round_trip),
        ("AC7 MUB suites, Bell flags, σ⊗σ eigenbases", ac7_mub),
        ("AC8 two-basis QKD", ac8_qkd),
        ("AC9 pump model round trip", ac9_pump),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let result = check();
        let ms = start.elapsed().as_secs_f64() * 1e3;
        match result {
            Ok(detail) => println!("[PASS] {name}: {detail} ({ms:.1} ms)"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {name}: {detail} ({ms:.1} ms)");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
