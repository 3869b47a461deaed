//! Single-qubit noise channels and their product extension to n qubits.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{check_unit, Error, Result};
use crate::game::DensityMatrix;
use crate::qlinalg::{self, adjoint, kron, matmul, pauli, ComplexMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChannelKind {
    #[serde(rename = "ad")]
    AmplitudeDamping,
    #[serde(rename = "pd")]
    PhaseDamping,
    #[serde(rename = "dp")]
    Depolarizing,
}

impl ChannelKind {
    pub const ALL: [ChannelKind; 3] = [
        ChannelKind::AmplitudeDamping,
        ChannelKind::PhaseDamping,
        ChannelKind::Depolarizing,
    ];

    /// Short label: `ad`, `pd` or `dp`.
    pub fn label(self) -> &'static str {
        match self {
            ChannelKind::AmplitudeDamping => "ad",
            ChannelKind::PhaseDamping => "pd",
            ChannelKind::Depolarizing => "dp",
        }
    }

    /// Number of single-qubit Kraus operators.
    pub fn arity(self) -> usize {
        match self {
            ChannelKind::AmplitudeDamping | ChannelKind::PhaseDamping => 2,
            ChannelKind::Depolarizing => 4,
        }
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ChannelKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ad" | "amplitude-damping" => Ok(ChannelKind::AmplitudeDamping),
            "pd" | "phase-damping" => Ok(ChannelKind::PhaseDamping),
            "dp" | "depolarizing" => Ok(ChannelKind::Depolarizing),
            other => Err(format!("unknown channel `{other}` (expected ad, pd or dp)")),
        }
    }
}

/// A channel kind together with its decoherence parameter `p ∈ [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NoiseModel {
    kind: ChannelKind,
    p: f64,
}

impl NoiseModel {
    pub fn new(kind: ChannelKind, p: f64) -> Result<Self> {
        Ok(Self {
            kind,
            p: check_unit("p", p)?,
        })
    }

    /// The noiseless channel.
    pub fn noiseless() -> Self {
        Self {
            kind: ChannelKind::PhaseDamping,
            p: 0.0,
        }
    }

    pub fn kind(&self) -> ChannelKind {
        self.kind
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

/// Kraus operators acting on `qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausSet {
    qubits: usize,
    operators: Vec<ComplexMatrix>,
}

impl KrausSet {
    /// Wraps a list of operators, checking that they are all `2^qubits` square.
    /// Completeness is not enforced here; see [`check_completeness`].
    pub fn new(qubits: usize, operators: Vec<ComplexMatrix>) -> Result<Self> {
        if qubits == 0 {
            return Err(Error::OutOfRange {
                name: "qubits",
                value: 0.0,
                min: 1.0,
                max: f64::INFINITY,
            });
        }
        let dim = 1usize << qubits;
        if operators.is_empty() {
            return Err(Error::InvalidLength {
                expected: 1,
                found: 0,
            });
        }
        if let Some(bad) = operators.iter().find(|e| e.dims() != (dim, dim)) {
            return Err(Error::DimensionMismatch {
                op: "kraus set",
                left: (dim, dim),
                right: bad.dims(),
            });
        }
        Ok(Self { qubits, operators })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn dimension(&self) -> usize {
        1 << self.qubits
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }
}

pub fn single_qubit_kraus(model: &NoiseModel) -> KrausSet {
    let p = model.p;
    let operators = match model.kind {
        ChannelKind::AmplitudeDamping => vec![
            real2x2([1.0, 0.0, 0.0, (1.0 - p).sqrt()]),
            real2x2([0.0, p.sqrt(), 0.0, 0.0]),
        ],
        ChannelKind::PhaseDamping => vec![
            real2x2([1.0, 0.0, 0.0, (1.0 - p).sqrt()]),
            real2x2([0.0, 0.0, 0.0, p.sqrt()]),
        ],
        ChannelKind::Depolarizing => {
            let w = (p / 3.0).sqrt();
            vec![
                pauli::identity().scale_real((1.0 - p).sqrt()),
                pauli::x().scale_real(w),
                pauli::y().scale_real(w),
                pauli::z().scale_real(w),
            ]
        }
    };
    KrausSet {
        qubits: 1,
        operators,
    }
}

fn real2x2(entries: [f64; 4]) -> ComplexMatrix {
    ComplexMatrix::from_real(2, 2, &entries).expect("2x2 literal")
}

/// All `m^n` tensor products of the single-qubit operators. Ordering is
/// lexicographic in the per-qubit operator indices, first qubit most significant.
pub fn lift_kraus(model: &NoiseModel, n: usize) -> Result<KrausSet> {
    if n == 0 {
        return Err(Error::OutOfRange {
            name: "qubits",
            value: 0.0,
            min: 1.0,
            max: f64::INFINITY,
        });
    }
    let single = single_qubit_kraus(model).operators;
    let mut lifted = single.clone();
    for _ in 1..n {
        lifted = lifted
            .iter()
            .flat_map(|acc| single.iter().map(move |e| kron(acc, e)))
            .collect();
    }
    KrausSet::new(n, lifted)
}

/// `ρ ↦ Σ_k E_k ρ E_k†`.
pub fn apply_channel(rho: &DensityMatrix, kraus: &KrausSet) -> Result<DensityMatrix> {
    if rho.dimension() != kraus.dimension() {
        return Err(Error::DimensionMismatch {
            op: "apply_channel",
            left: (rho.dimension(), rho.dimension()),
            right: (kraus.dimension(), kraus.dimension()),
        });
    }
    let dim = kraus.dimension();
    let mut out = ComplexMatrix::zeros(dim, dim);
    for e in &kraus.operators {
        qlinalg::sandwich_accumulate(e, rho.matrix(), &mut out)?;
    }
    Ok(DensityMatrix::from_matrix_unchecked(rho.qubits(), out))
}

/// Max entrywise deviation of `Σ_k E_k† E_k` from the identity.
pub fn check_completeness(kraus: &KrausSet) -> f64 {
    let dim = kraus.dimension();
    let sum = kraus
        .operators
        .iter()
        .map(|e| matmul(&adjoint(e), e).expect("square operators"))
        .fold(ComplexMatrix::zeros(dim, dim), |acc, m| {
            acc.add(&m).expect("same dimension")
        });
    sum.max_abs_diff(&ComplexMatrix::identity(dim))
}

/// Convenience: lift `model` to `rho`'s qubit count and apply it.
pub fn apply_noise(rho: &DensityMatrix, model: &NoiseModel) -> Result<DensityMatrix> {
    apply_channel(rho, &lift_kraus(model, rho.qubits())?)
}
