//! Resource and target Hamiltonians.

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use super::su2::normalize;
use super::CompileError;
use crate::sim::{PauliString, PauliStringOperator};
use crate::walsh::PulseSymbol;

/// Interaction channel of the resource Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Channel {
    X,
    Y,
}

impl Channel {
    pub fn bloch(self) -> [f64; 3] {
        match self {
            Channel::X => [1.0, 0.0, 0.0],
            Channel::Y => [0.0, 1.0, 0.0],
        }
    }

    pub fn symbol(self) -> PulseSymbol {
        match self {
            Channel::X => PulseSymbol::X,
            Channel::Y => PulseSymbol::Y,
        }
    }
}

/// Single-qubit operator of a target term: a Pauli or a unit Bloch axis `n·σ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OpLabel {
    X,
    Y,
    Z,
    Axis([f64; 3]),
}

impl OpLabel {
    pub fn bloch(self) -> [f64; 3] {
        match self {
            OpLabel::X => [1.0, 0.0, 0.0],
            OpLabel::Y => [0.0, 1.0, 0.0],
            OpLabel::Z => [0.0, 0.0, 1.0],
            OpLabel::Axis(a) => normalize(a).unwrap_or([1.0, 0.0, 0.0]),
        }
    }

    pub fn channel(self) -> Option<Channel> {
        match self {
            OpLabel::X => Some(Channel::X),
            OpLabel::Y => Some(Channel::Y),
            _ => None,
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum LabelRepr {
    Name(String),
    Axis([f64; 3]),
}

impl Serialize for OpLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            OpLabel::X => LabelRepr::Name("X".into()),
            OpLabel::Y => LabelRepr::Name("Y".into()),
            OpLabel::Z => LabelRepr::Name("Z".into()),
            OpLabel::Axis(a) => LabelRepr::Axis(*a),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for OpLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match LabelRepr::deserialize(d)? {
            LabelRepr::Name(n) => match n.as_str() {
                "X" => Ok(OpLabel::X),
                "Y" => Ok(OpLabel::Y),
                "Z" => Ok(OpLabel::Z),
                other => Err(de::Error::custom(format!("unknown operator {other:?}"))),
            },
            LabelRepr::Axis(a) => match normalize(a) {
                Some(_) => Ok(OpLabel::Axis(a)),
                None => Err(de::Error::custom("operator axis must be a nonzero vector")),
            },
        }
    }
}

/// `H_R = Σ_{i<j} (J^X_ij X_i X_j + J^Y_ij Y_i Y_j) + Σ_i (h^x X_i + h^y Y_i + h^z Z_i)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResourceHamiltonian {
    pub n_qubits: usize,
    pub jx: Vec<Vec<f64>>,
    pub jy: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub fields: Vec<[f64; 3]>,
}

/// Interaction model for power-law resources.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ResourceModel {
    Xy,
    Ising,
}

impl ResourceHamiltonian {
    pub fn new(jx: Vec<Vec<f64>>, jy: Vec<Vec<f64>>) -> Result<Self, CompileError> {
        let r = ResourceHamiltonian { n_qubits: jx.len(), jx, jy, fields: Vec::new() };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<(), CompileError> {
        let n = self.n_qubits;
        if n == 0 || n > 30 {
            return Err(CompileError::InvalidResource(format!("unsupported qubit count {n}")));
        }
        for (name, m) in [("jx", &self.jx), ("jy", &self.jy)] {
            if m.len() != n || m.iter().any(|r| r.len() != n) {
                return Err(CompileError::InvalidResource(format!("{name} is not {n}x{n}")));
            }
            for i in 0..n {
                if m[i][i] != 0.0 {
                    return Err(CompileError::InvalidResource(format!("{name} has a diagonal entry")));
                }
                for j in 0..n {
                    if !m[i][j].is_finite() || m[i][j] != m[j][i] {
                        return Err(CompileError::InvalidResource(format!(
                            "{name} is not symmetric and finite at ({i}, {j})"
                        )));
                    }
                }
            }
        }
        if !self.fields.is_empty() && self.fields.len() != n {
            return Err(CompileError::InvalidResource("fields need one entry per qubit".into()));
        }
        Ok(())
    }

    /// `J^O_ij = −J / r_ij^α` for the given positions.
    pub fn power_law(
        positions: &[[f64; 2]],
        j: f64,
        alpha: f64,
        model: ResourceModel,
    ) -> Result<Self, CompileError> {
        let n = positions.len();
        let mut jx = vec![vec![0.0; n]; n];
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    let dx = positions[a][0] - positions[b][0];
                    let dy = positions[a][1] - positions[b][1];
                    let r = (dx * dx + dy * dy).sqrt();
                    if r == 0.0 {
                        return Err(CompileError::InvalidResource(format!(
                            "qubits {a} and {b} share a position"
                        )));
                    }
                    jx[a][b] = -j / r.powf(alpha);
                }
            }
        }
        let jy = match model {
            ResourceModel::Xy => jx.clone(),
            ResourceModel::Ising => vec![vec![0.0; n]; n],
        };
        ResourceHamiltonian::new(jx, jy)
    }

    /// Unit-spaced chain `0, 1, …, n−1`.
    pub fn power_law_chain(n: usize, j: f64, alpha: f64) -> Result<Self, CompileError> {
        let pos: Vec<[f64; 2]> = (0..n).map(|i| [i as f64, 0.0]).collect();
        ResourceHamiltonian::power_law(&pos, j, alpha, ResourceModel::Xy)
    }

    pub fn with_fields(mut self, fields: Vec<[f64; 3]>) -> Result<Self, CompileError> {
        self.fields = fields;
        self.validate()?;
        Ok(self)
    }

    pub fn without_fields(&self) -> Self {
        ResourceHamiltonian { fields: Vec::new(), ..self.clone() }
    }

    pub fn coupling(&self, channel: Channel, i: usize, j: usize) -> f64 {
        match channel {
            Channel::X => self.jx[i][j],
            Channel::Y => self.jy[i][j],
        }
    }

    /// Resource couplings with `|i − j| > lambda` dropped.
    pub fn truncated(&self, lambda: usize) -> Self {
        let mut r = self.clone();
        for i in 0..self.n_qubits {
            for j in 0..self.n_qubits {
                if i.abs_diff(j) > lambda {
                    r.jx[i][j] = 0.0;
                    r.jy[i][j] = 0.0;
                }
            }
        }
        r
    }

    pub fn to_operator(&self) -> PauliStringOperator {
        let n = self.n_qubits;
        let mut terms = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for (c, p) in [(self.jx[i][j], PulseSymbol::X), (self.jy[i][j], PulseSymbol::Y)] {
                    if c != 0.0 {
                        terms.push((c, PauliString::from_factors(&[(i, p), (j, p)])));
                    }
                }
            }
        }
        for (i, h) in self.fields.iter().enumerate() {
            for (c, p) in h.iter().zip([PulseSymbol::X, PulseSymbol::Y, PulseSymbol::Z]) {
                if *c != 0.0 {
                    terms.push((*c, PauliString::single(i, p)));
                }
            }
        }
        PauliStringOperator::new(n, terms)
    }
}

/// `strength · O_i ⊗ O_j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TargetTerm {
    pub i: usize,
    pub j: usize,
    pub ops: [OpLabel; 2],
    pub strength: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TargetSpec {
    pub n_qubits: usize,
    pub terms: Vec<TargetTerm>,
}

impl TargetSpec {
    pub fn new(n_qubits: usize, terms: Vec<TargetTerm>) -> Result<Self, CompileError> {
        let t = TargetSpec { n_qubits, terms };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<(), CompileError> {
        for t in &self.terms {
            if t.i >= self.n_qubits || t.j >= self.n_qubits || t.i == t.j {
                return Err(CompileError::InvalidTarget(format!(
                    "term on ({}, {}) with {} qubits",
                    t.i, t.j, self.n_qubits
                )));
            }
            if !t.strength.is_finite() {
                return Err(CompileError::InvalidTarget("non-finite strength".into()));
            }
        }
        Ok(())
    }

    /// `−J Σ_i X_i X_{i+1}` on an open chain.
    pub fn ising_chain(n_qubits: usize, j: f64) -> Self {
        let terms = (0..n_qubits.saturating_sub(1))
            .map(|i| TargetTerm { i, j: i + 1, ops: [OpLabel::X, OpLabel::X], strength: -j })
            .collect();
        TargetSpec { n_qubits, terms }
    }

    /// The coupling part of the resource itself.
    pub fn from_resource(r: &ResourceHamiltonian) -> Self {
        let mut terms = Vec::new();
        for i in 0..r.n_qubits {
            for j in i + 1..r.n_qubits {
                for (s, op) in [(r.jx[i][j], OpLabel::X), (r.jy[i][j], OpLabel::Y)] {
                    if s != 0.0 {
                        terms.push(TargetTerm { i, j, ops: [op, op], strength: s });
                    }
                }
            }
        }
        TargetSpec { n_qubits: r.n_qubits, terms }
    }

    /// `J Σ w_ij X_i X_j` for a weighted graph.
    /// Expands every term into Pauli strings.
    pub fn to_operator(&self) -> PauliStringOperator {
        let axes = [PulseSymbol::X, PulseSymbol::Y, PulseSymbol::Z];
        let mut terms = Vec::new();
        for t in &self.terms {
            let (a, b) = (t.ops[0].bloch(), t.ops[1].bloch());
            for (ca, pa) in a.iter().zip(axes) {
                for (cb, pb) in b.iter().zip(axes) {
                    let c = t.strength * ca * cb;
                    if c != 0.0 {
                        terms.push((c, PauliString::from_factors(&[(t.i, pa), (t.j, pb)])));
                    }
                }
            }
        }
        PauliStringOperator::new(self.n_qubits, terms)
    }

    pub fn xx_graph(graph: &crate::graphdecomp::WeightedGraph, j: f64) -> Self {
        let terms = graph
            .edges()
            .map(|(a, b, w)| TargetTerm { i: a, j: b, ops: [OpLabel::X, OpLabel::X], strength: j * w })
            .collect();
        TargetSpec { n_qubits: graph.n_vertices(), terms }
    }
}
