//! State and plan file formats.
//!
//! Both are JSON. Complex numbers are `[re, im]` pairs and every float is
//! written with 17 significant digits so files round-trip bit-exactly.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use anyhow::{bail, ensure, Context, Result};
use num_complex::Complex64;
use qudit_core::encoder::{qutrit_embed, QutritState, TwoQubitState};
use qudit_core::optics::{ElementSequence, OpticalElement};
use qudit_core::qmath::ComplexMatrix2;
use serde::{Deserialize, Serialize};
use serde_json::ser::{CompactFormatter, Formatter, PrettyFormatter};

/// States whose norm is off by more than this get a renormalization warning.
pub const NORM_WARN_TOL: f64 = 1e-6;
/// Plan matrices must be unitary within this on load.
pub const PLAN_UNITARY_TOL: f64 = 1e-10;

pub type Pair = [f64; 2];

fn to_pair(z: Complex64) -> Pair {
    [z.re, z.im]
}

fn from_pair(p: Pair) -> Complex64 {
    Complex64::new(p[0], p[1])
}

/// Writes floats as `{:.16e}` and delegates layout to the wrapped formatter.
struct Precise<F>(F);

macro_rules! delegate {
    ($($name:ident($($arg:ident: $ty:ty),*);)*) => {
        $(fn $name<W: ?Sized + Write>(&mut self, writer: &mut W $(, $arg: $ty)*) -> io::Result<()> {
            self.0.$name(writer $(, $arg)*)
        })*
    };
}

impl<F: Formatter> Formatter for Precise<F> {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    delegate! {
        begin_array();
        end_array();
        begin_array_value(first: bool);
        end_array_value();
        begin_object();
        end_object();
        begin_object_key(first: bool);
        begin_object_value();
        end_object_value();
    }
}

fn serialize_with<T: Serialize, F: Formatter>(value: &T, formatter: F) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Precise(formatter));
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(buf)?)
}

/// Multi-line JSON.
pub fn to_pretty<T: Serialize>(value: &T) -> Result<String> {
    serialize_with(value, PrettyFormatter::new())
}

/// Single-line JSON.
pub fn to_line<T: Serialize>(value: &T) -> Result<String> {
    serialize_with(value, CompactFormatter)
}

/// A qutrit (`|HH⟩, |VV⟩, |ψ⁺⟩`) or ququad (`|HH⟩, |VV⟩, |HV⟩, |VH⟩`) state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub dimension: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub amplitudes: Vec<Pair>,
}

/// A validated, normalized state read from a [`StateFile`].
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedState {
    pub dimension: usize,
    pub state: TwoQubitState,
    pub qutrit: Option<QutritState>,
    pub warnings: Vec<String>,
}

impl StateFile {
    pub fn from_qutrit(q: &QutritState, label: Option<String>) -> Self {
        Self {
            dimension: 3,
            label,
            amplitudes: q.components().map(to_pair).to_vec(),
        }
    }

    pub fn from_two_qubit(s: &TwoQubitState, label: Option<String>) -> Self {
        Self {
            dimension: 4,
            label,
            amplitudes: s.amplitudes().map(to_pair).to_vec(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("parsing {}", path.display()))
    }

    /// Checks the shape, renormalizes, and lifts to the two-photon carrier.
    pub fn load(&self) -> Result<LoadedState> {
        ensure!(
            matches!(self.dimension, 3 | 4),
            "dimension must be 3 or 4, got {}",
            self.dimension
        );
        ensure!(
            self.amplitudes.len() == self.dimension,
            "expected {} amplitudes, got {}",
            self.dimension,
            self.amplitudes.len()
        );
        ensure!(
            self.amplitudes.iter().flatten().all(|v| v.is_finite()),
            "amplitudes must be finite"
        );
        let amps: Vec<Complex64> = self.amplitudes.iter().copied().map(from_pair).collect();
        let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            bail!("state is the zero vector");
        }
        let mut warnings = Vec::new();
        if (norm - 1.0).abs() > NORM_WARN_TOL {
            warnings.push(format!("state norm is {norm}; renormalizing"));
        }
        let (state, qutrit) = if self.dimension == 3 {
            let q = QutritState::new(amps[0], amps[1], amps[2]).normalized()?;
            (qutrit_embed(&q), Some(q))
        } else {
            let s = TwoQubitState::new(amps[0], amps[1], amps[2], amps[3]).normalized()?;
            (s, None)
        };
        Ok(LoadedState {
            dimension: self.dimension,
            state,
            qutrit,
            warnings,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Svd,
    ClosedForm,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ElementRecord {
    PhasePlate { delta: f64 },
    Rotator { theta: f64 },
    HalfWavePlate { axis: f64 },
    QuarterWavePlate { axis: f64 },
}

impl From<OpticalElement> for ElementRecord {
    fn from(e: OpticalElement) -> Self {
        match e {
            OpticalElement::PhasePlate { delta } => Self::PhasePlate { delta },
            OpticalElement::Rotator { theta } => Self::Rotator { theta },
            OpticalElement::HalfWavePlate { axis } => Self::HalfWavePlate { axis },
            OpticalElement::QuarterWavePlate { axis } => Self::QuarterWavePlate { axis },
        }
    }
}

impl From<ElementRecord> for OpticalElement {
    fn from(e: ElementRecord) -> Self {
        match e {
            ElementRecord::PhasePlate { delta } => Self::PhasePlate { delta },
            ElementRecord::Rotator { theta } => Self::Rotator { theta },
            ElementRecord::HalfWavePlate { axis } => Self::HalfWavePlate { axis },
            ElementRecord::QuarterWavePlate { axis } => Self::QuarterWavePlate { axis },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SequenceRecord {
    pub global_phase: f64,
    pub elements: Vec<ElementRecord>,
}

impl From<&ElementSequence> for SequenceRecord {
    fn from(s: &ElementSequence) -> Self {
        Self {
            global_phase: s.global_phase,
            elements: s.elements.iter().copied().map(Into::into).collect(),
        }
    }
}

impl From<&SequenceRecord> for ElementSequence {
    fn from(s: &SequenceRecord) -> Self {
        Self {
            global_phase: s.global_phase,
            elements: s.elements.iter().copied().map(Into::into).collect(),
        }
    }
}

pub type MatrixRecord = [[Pair; 2]; 2];

pub fn matrix_record(m: &ComplexMatrix2) -> MatrixRecord {
    m.rows().map(|row| row.map(to_pair))
}

pub fn matrix_from_record(r: &MatrixRecord) -> Result<ComplexMatrix2> {
    Ok(ComplexMatrix2::new(r.map(|row| row.map(from_pair)))?)
}

/// Seed amplitude and local unitaries: `(u ⊗ w)(x|HH⟩ + √(1−x²)|VV⟩)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanFile {
    pub x: f64,
    pub u: MatrixRecord,
    pub w: MatrixRecord,
    pub provenance: Provenance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u_sequence: Option<SequenceRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w_sequence: Option<SequenceRecord>,
}

/// A plan whose matrices passed validation.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedPlan {
    pub x: f64,
    pub u: ComplexMatrix2,
    pub w: ComplexMatrix2,
    pub provenance: Provenance,
    pub u_sequence: Option<ElementSequence>,
    pub w_sequence: Option<ElementSequence>,
}

impl PlanFile {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut text = to_pretty(self)?;
        text.push('\n');
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))
    }

    pub fn load(&self) -> Result<LoadedPlan> {
        ensure!(
            (0.0..=1.0).contains(&self.x),
            "seed amplitude {} outside [0, 1]",
            self.x
        );
        let u = matrix_from_record(&self.u).context("u")?;
        let w = matrix_from_record(&self.w).context("w")?;
        for (name, m) in [("u", &u), ("w", &w)] {
            let dev = m.unitarity_deviation();
            ensure!(
                dev <= PLAN_UNITARY_TOL,
                "{name} is not unitary (deviation {dev:e})"
            );
        }
        Ok(LoadedPlan {
            x: self.x,
            u,
            w,
            provenance: self.provenance,
            u_sequence: self.u_sequence.as_ref().map(Into::into),
            w_sequence: self.w_sequence.as_ref().map(Into::into),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_have_seventeen_digits() {
        let line = to_line(&[0.1f64, 1.0 / 3.0]).unwrap();
        assert_eq!(line, "[1.0000000000000001e-1,3.3333333333333331e-1]");
        let back: Vec<f64> = serde_json::from_str(&line).unwrap();
        assert_eq!(back, [0.1, 1.0 / 3.0]);
    }

    #[test]
    fn state_file_checks_shape() {
        let bad = StateFile {
            dimension: 5,
            label: None,
            amplitudes: vec![[1.0, 0.0]; 5],
        };
        assert!(bad.load().is_err());
        let short = StateFile {
            dimension: 4,
            label: None,
            amplitudes: vec![[1.0, 0.0]; 3],
        };
        assert!(short.load().is_err());
        let zero = StateFile {
            dimension: 3,
            label: None,
            amplitudes: vec![[0.0, 0.0]; 3],
        };
        assert!(zero.load().is_err());
    }

    #[test]
    fn state_file_renormalizes() {
        let half = StateFile {
            dimension: 3,
            label: None,
            amplitudes: vec![[0.5, 0.0], [0.0, 0.0], [0.0, 0.0]],
        };
        let loaded = half.load().unwrap();
        assert_eq!(loaded.warnings.len(), 1);
        assert!((loaded.state.norm() - 1.0).abs() < 1e-15);

        let close = StateFile {
            dimension: 4,
            label: None,
            amplitudes: vec![[1.0 + 1e-8, 0.0], [0.0; 2], [0.0; 2], [0.0; 2]],
        };
        assert!(close.load().unwrap().warnings.is_empty());
    }

    #[test]
    fn plan_file_rejects_non_unitary() {
        let id = matrix_record(&ComplexMatrix2::identity());
        let mut plan = PlanFile {
            x: 1.0,
            u: id,
            w: id,
            provenance: Provenance::Svd,
            u_sequence: None,
            w_sequence: None,
        };
        assert!(plan.load().is_ok());
        plan.u[1][1] = [2.0, 0.0];
        assert!(plan.load().is_err());
        plan.u = id;
        plan.x = 1.5;
        assert!(plan.load().is_err());
    }

    #[test]
    fn plan_round_trip_is_exact() {
        let m = ComplexMatrix2::new([
            [Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)],
            [Complex64::new(0.0, 0.8), Complex64::new(0.6, 0.0)],
        ])
        .unwrap();
        let seq = SequenceRecord {
            global_phase: 0.1,
            elements: vec![
                ElementRecord::Rotator { theta: 0.3 },
                ElementRecord::PhasePlate { delta: -2.0 },
            ],
        };
        let plan = PlanFile {
            x: 0.9855985596534889,
            u: matrix_record(&m),
            w: matrix_record(&m),
            provenance: Provenance::ClosedForm,
            u_sequence: Some(seq.clone()),
            w_sequence: None,
        };
        let text = to_pretty(&plan).unwrap();
        assert!(text.contains("\"closed-form\"") && text.contains("\"rotator\""));
        assert_eq!(PlanFile::parse(&text).unwrap(), plan);
    }
}
