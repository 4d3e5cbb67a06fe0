//! Subcommand implementations. Each returns `Ok(true)` when every
//! verification residual meets its threshold.

use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use qudit_core::encoder::{
    canonicalize, encode, fidelity, seed_state, state_to_matrix, xi_closed_form, xi_parameters, EncodingPlan,
    TwoQubitState,
};
use qudit_core::mub::{
    bell_check, ququad_mub_family, qutrit_mub_family, simulate_two_basis_qkd, verify_mub, BasisState,
};
use qudit_core::optics::{
    factorize_unitary, pump_for_seed, seed_from_pump, synthesize_sequence, ElementSequence, OpticalElement,
};
use qudit_core::qmath::{svd2, tensor_apply, ComplexMatrix2};

use crate::files::{matrix_record, to_line, PlanFile, Provenance, SequenceRecord, StateFile};

/// End-to-end plan fidelity threshold.
pub const PLAN_FIDELITY_TOL: f64 = 1e-10;
/// Element-sequence residual threshold.
pub const SEQUENCE_RESIDUAL_TOL: f64 = 1e-10;
/// Pump forward-map residual threshold.
pub const PUMP_RESIDUAL_TOL: f64 = 1e-12;
/// Moduli tolerance when recognizing a ξ-family qutrit.
const XI_MODULUS_TOL: f64 = 1e-9;

fn describe(e: &OpticalElement) -> String {
    match *e {
        OpticalElement::PhasePlate { delta } => format!("PhasePlate(delta={delta:.17e})"),
        OpticalElement::Rotator { theta } => format!("Rotator(theta={theta:.17e})"),
        OpticalElement::HalfWavePlate { axis } => format!("HalfWavePlate(axis={axis:.17e})"),
        OpticalElement::QuarterWavePlate { axis } => format!("QuarterWavePlate(axis={axis:.17e})"),
    }
}

fn describe_sequence(s: &ElementSequence) -> String {
    let parts: Vec<String> = s.elements.iter().map(describe).collect();
    format!(
        "global_phase={:.17e} elements=[{}]",
        s.global_phase,
        parts.join(", ")
    )
}

fn apply_plan(x: f64, u: &ComplexMatrix2, w: &ComplexMatrix2) -> TwoQubitState {
    TwoQubitState::from_vector(&tensor_apply(u, w, &seed_state(x).to_vector()))
}

pub fn cmd_encode(
    input: &Path,
    output: &Path,
    closed_form: bool,
    out: &mut impl Write,
    err: &mut impl Write,
) -> Result<bool> {
    let loaded = StateFile::read(input)?.load()?;
    for w in &loaded.warnings {
        writeln!(err, "warning: {w}")?;
    }
    let target = canonicalize(&loaded.state)?;

    let (plan, singular_values, provenance) = if closed_form {
        let q = loaded
            .qutrit
            .context("--closed-form needs a qutrit (dimension 3) state")?;
        let Some((psi, phi)) = xi_parameters(&q, XI_MODULUS_TOL) else {
            bail!("state is not of the form (|HH> + e^(i psi)|VV> + e^(i phi)|psi+>)/sqrt(3)");
        };
        let xi = xi_closed_form(psi, phi);
        writeln!(out, "psi={psi:.17e} phi={phi:.17e}")?;
        (
            EncodingPlan {
                x: xi.d.0,
                u: xi.u,
                w: xi.w,
            },
            xi.d,
            Provenance::ClosedForm,
        )
    } else {
        let plan = encode(&loaded.state)?;
        let svd = svd2(&state_to_matrix(&target))?;
        (plan, (svd.d1, svd.d2), Provenance::Svd)
    };

    let f = fidelity(&apply_plan(plan.x, &plan.u, &plan.w), &target);
    writeln!(out, "x={:.17e}", plan.x)?;
    writeln!(
        out,
        "singular_values={:.17e} {:.17e}",
        singular_values.0, singular_values.1
    )?;
    writeln!(out, "fidelity={f:.17e}")?;
    if f < 1.0 - PLAN_FIDELITY_TOL {
        writeln!(
            err,
            "error: reconstruction fidelity {f} below 1 - {PLAN_FIDELITY_TOL:e}"
        )?;
        return Ok(false);
    }

    let sequence = |m: &ComplexMatrix2| -> Result<SequenceRecord> {
        Ok(SequenceRecord::from(&synthesize_sequence(&factorize_unitary(m)?)))
    };
    let file = PlanFile {
        x: plan.x,
        u: matrix_record(&plan.u),
        w: matrix_record(&plan.w),
        provenance,
        u_sequence: Some(sequence(&plan.u)?),
        w_sequence: Some(sequence(&plan.w)?),
    };
    file.write(output)?;
    writeln!(out, "plan={}", output.display())?;
    Ok(true)
}

pub fn cmd_synthesize(plan_path: &Path, out: &mut impl Write) -> Result<bool> {
    let plan = PlanFile::read(plan_path)?.load()?;
    let mut worst: f64 = 0.0;
    writeln!(
        out,
        "x={:.17e} provenance={}",
        plan.x,
        match plan.provenance {
            Provenance::Svd => "svd",
            Provenance::ClosedForm => "closed-form",
        }
    )?;
    for (name, m, stored) in [("u", &plan.u, &plan.u_sequence), ("w", &plan.w, &plan.w_sequence)] {
        let f = factorize_unitary(m)?;
        writeln!(
            out,
            "{name}.factorization alpha={:.17e} beta={:.17e} gamma={:.17e} theta={:.17e} theta_deg={:.12}",
            f.alpha,
            f.beta,
            f.gamma,
            f.theta,
            f.theta.to_degrees()
        )?;
        let seq = synthesize_sequence(&f);
        let waveplates = seq.with_half_wave_plates();
        let r_seq = seq.residual(m);
        let r_wp = waveplates.residual(m);
        writeln!(out, "{name}.sequence {}", describe_sequence(&seq))?;
        writeln!(out, "{name}.waveplates {}", describe_sequence(&waveplates))?;
        writeln!(
            out,
            "{name}.residual={r_seq:.3e} {name}.waveplates_residual={r_wp:.3e}"
        )?;
        worst = worst.max(r_seq).max(r_wp);
        if let Some(stored) = stored {
            let r = stored.residual(m);
            writeln!(out, "{name}.stored_residual={r:.3e}")?;
            worst = worst.max(r);
        }
    }
    let pass = worst <= SEQUENCE_RESIDUAL_TOL;
    writeln!(
        out,
        "max_residual={worst:.3e} result={}",
        if pass { "pass" } else { "fail" }
    )?;
    Ok(pass)
}

pub fn cmd_mub(dimension: usize, tol: f64, emit_states: bool, out: &mut impl Write) -> Result<bool> {
    let bases = match dimension {
        3 => qutrit_mub_family(),
        4 => ququad_mub_family(),
        d => bail!("dimension must be 3 or 4, got {d}"),
    };
    let report = verify_mub(&bases, tol)?;
    for (basis, dev) in bases.iter().zip(&report.orthonormality) {
        write!(out, "basis={} orthonormality_deviation={dev:.3e}", basis.label)?;
        if dimension == 4 {
            write!(out, " bell={}", bell_check(basis)?)?;
        }
        writeln!(out)?;
    }
    for &((i, j), dev) in &report.overlap {
        writeln!(
            out,
            "pair={},{} overlap_deviation={dev:.3e}",
            bases[i].label, bases[j].label
        )?;
    }
    writeln!(
        out,
        "bases={} max_orthonormality_deviation={:.3e} max_overlap_deviation={:.3e} tol={tol:e} result={}",
        bases.len(),
        report.max_orthonormality_deviation(),
        report.max_overlap_deviation(),
        if report.passed() { "pass" } else { "fail" }
    )?;
    if emit_states {
        for basis in &bases {
            for (k, s) in basis.states.iter().enumerate() {
                let label = Some(format!("{}/{k}", basis.label));
                let file = match s {
                    BasisState::Qutrit(q) => StateFile::from_qutrit(q, label),
                    BasisState::TwoQubit(t) => StateFile::from_two_qubit(t, label),
                };
                writeln!(out, "{}", to_line(&file)?)?;
            }
        }
    }
    Ok(report.passed())
}

pub fn cmd_pump(x: f64, out: &mut impl Write) -> Result<bool> {
    let setting = pump_for_seed(x)?;
    let forward = seed_from_pump(&setting)?;
    let residual = (forward - x).abs();
    writeln!(
        out,
        "branch={:?} theta_p_rad={:.17e} theta_p_deg={:.12} x_forward={forward:.17e} residual={residual:.3e}",
        setting.branch,
        setting.theta_p,
        setting.theta_p.to_degrees()
    )?;
    Ok(residual <= PUMP_RESIDUAL_TOL)
}

pub fn cmd_qkd(rounds: u64, eve: bool, rng_seed: u64, out: &mut impl Write) -> Result<bool> {
    let o = simulate_two_basis_qkd(rounds, eve, rng_seed);
    writeln!(
        out,
        "rounds={} sifted={} errors={} sift_rate={:.17e} qber={:.17e} rng_seed={}",
        o.rounds, o.sifted, o.errors, o.sift_rate, o.qber, o.rng_seed
    )?;
    Ok(true)
}
