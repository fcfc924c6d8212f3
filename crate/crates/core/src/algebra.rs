//! The star-shaped quiver of a canonical algebra Λ(p, λ) and its relations.
//!
//! Vertices are ordered 0, arm 1 ascending, ..., arm t ascending, c. The
//! arrow α_j^(i) runs from (j-1)x_i to j·x_i, where 0·x_i is the vertex 0 and
//! p_i·x_i is the vertex c.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{format_scalar, Scalar};
use crate::weight::WeightSequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Zero,
    /// The vertex step·x_arm, 1 <= step < p_arm.
    Arm {
        arm: usize,
        step: usize,
    },
    Top,
}

impl Vertex {
    pub fn label(&self) -> String {
        match self {
            Vertex::Zero => "v0".to_string(),
            Vertex::Arm { arm, step } => format!("x_{arm}_{step}"),
            Vertex::Top => "vc".to_string(),
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// The arrow α_step^(arm).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    pub arm: usize,
    pub step: usize,
}

impl Arrow {
    pub fn label(&self) -> String {
        format!("alpha_{}_{}", self.arm, self.step)
    }

    pub fn latex(&self) -> String {
        format!("\\alpha_{{{}}}^{{({})}}", self.step, self.arm)
    }
}

/// The path ω_{from,to}^(arm) = α_to ⋯ α_from, running from (from-1)x_arm
/// to to·x_arm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ArmPath {
    pub arm: usize,
    pub from: usize,
    pub to: usize,
}

impl ArmPath {
    pub fn len(&self) -> usize {
        self.to + 1 - self.from
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn arrows(&self) -> impl Iterator<Item = Arrow> + '_ {
        (self.from..=self.to).map(move |step| Arrow {
            arm: self.arm,
            step,
        })
    }
}

/// α_{p_i}^(i)⋯α_1^(i) = α_{p_1}^(1)⋯α_1^(1) + λ_i α_{p_2}^(2)⋯α_1^(2).
#[derive(Debug, Clone, PartialEq)]
pub struct Relation<T> {
    pub arm: usize,
    pub lhs: ArmPath,
    pub first: ArmPath,
    pub second: ArmPath,
    pub lambda: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalAlgebra<T> {
    weights: WeightSequence,
    lambdas: Vec<T>,
    normalized: bool,
    vertices: Vec<Vertex>,
    arrows: Vec<Arrow>,
}

impl<T: Scalar> CanonicalAlgebra<T> {
    /// Builds Λ(p, λ) from λ_2..λ_t.
    pub fn new(weights: WeightSequence, lambdas: Vec<T>) -> Result<Self> {
        let t = weights.len();
        if lambdas.len() != t - 1 {
            return Err(Error::InvalidParameters(format!(
                "expected {} parameters λ_2..λ_{t}, got {}",
                t - 1,
                lambdas.len()
            )));
        }
        for (i, a) in lambdas.iter().enumerate() {
            if let Some(j) = lambdas[i + 1..].iter().position(|b| a == b) {
                return Err(Error::DuplicateParameters(format!(
                    "λ_{} = λ_{} = {}",
                    i + 2,
                    i + j + 3,
                    format_scalar(a)
                )));
            }
        }
        let normalized = lambdas[0].is_zero() && lambdas.get(1).is_none_or(|l| l.is_one());

        let mut vertices = vec![Vertex::Zero];
        let mut arrows = Vec::new();
        for (i, &p) in weights.weights().iter().enumerate() {
            let arm = i + 1;
            for step in 1..p as usize {
                vertices.push(Vertex::Arm { arm, step });
            }
            for step in 1..=p as usize {
                arrows.push(Arrow { arm, step });
            }
        }
        vertices.push(Vertex::Top);
        Ok(Self {
            weights,
            lambdas,
            normalized,
            vertices,
            arrows,
        })
    }

    /// Λ(p, λ) with the default parameters λ_2 = 0, λ_3 = 1, λ_i = i - 2.
    pub fn with_default_lambdas(weights: WeightSequence) -> Result<Self> {
        let lambdas = (0..weights.len() - 1)
            .map(|i| T::from_i64(i as i64))
            .collect();
        Self::new(weights, lambdas)
    }

    pub fn weights(&self) -> &WeightSequence {
        &self.weights
    }

    pub fn num_arms(&self) -> usize {
        self.weights.len()
    }

    pub fn weight(&self, arm: usize) -> usize {
        self.weights.weight(arm) as usize
    }

    /// λ_2..λ_t as stored.
    pub fn lambdas(&self) -> &[T] {
        &self.lambdas
    }

    /// λ_i for 2 <= i <= t.
    pub fn lambda(&self, i: usize) -> &T {
        &self.lambdas[i - 2]
    }

    /// False when λ_2 != 0 or λ_3 != 1; the acceptability audits assume
    /// this normalization.
    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn num_relations(&self) -> usize {
        self.num_arms().saturating_sub(2)
    }

    /// The vertex step·x_arm, with 0 and c at the two ends of the arm.
    pub fn arm_vertex(&self, arm: usize, step: usize) -> Vertex {
        if step == 0 {
            Vertex::Zero
        } else if step == self.weight(arm) {
            Vertex::Top
        } else {
            Vertex::Arm { arm, step }
        }
    }

    pub fn vertex_index(&self, v: Vertex) -> usize {
        match v {
            Vertex::Zero => 0,
            Vertex::Top => self.vertices.len() - 1,
            Vertex::Arm { arm, step } => {
                let before: usize = (1..arm).map(|i| self.weight(i) - 1).sum();
                1 + before + step - 1
            }
        }
    }

    pub fn arrow_index(&self, a: Arrow) -> usize {
        let before: usize = (1..a.arm).map(|i| self.weight(i)).sum();
        before + a.step - 1
    }

    pub fn source(&self, a: Arrow) -> Vertex {
        self.arm_vertex(a.arm, a.step - 1)
    }

    pub fn target(&self, a: Arrow) -> Vertex {
        self.arm_vertex(a.arm, a.step)
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<Vertex> {
        self.vertices.iter().copied().find(|v| v.label() == label)
    }

    pub fn arrow_by_label(&self, label: &str) -> Option<Arrow> {
        self.arrows.iter().copied().find(|a| a.label() == label)
    }

    pub fn path(&self, arm: usize, from: usize, to: usize) -> Result<ArmPath> {
        if arm == 0 || arm > self.num_arms() || from == 0 || from > to || to > self.weight(arm) {
            return Err(Error::InvalidPath { arm, from, to });
        }
        Ok(ArmPath { arm, from, to })
    }

    /// The full arm path from 0 to c.
    pub fn full_path(&self, arm: usize) -> ArmPath {
        ArmPath {
            arm,
            from: 1,
            to: self.weight(arm),
        }
    }

    /// One descriptor per i = 3..t.
    pub fn relations(&self) -> Vec<Relation<T>> {
        (3..=self.num_arms())
            .map(|i| Relation {
                arm: i,
                lhs: self.full_path(i),
                first: self.full_path(1),
                second: self.full_path(2),
                lambda: self.lambda(i).clone(),
            })
            .collect()
    }

    /// D(λ) = {λ_a - λ_b : 2 <= a, b <= t}.
    pub fn coefficient_set(&self) -> CoefficientSet<T> {
        let mut out: Vec<T> = Vec::new();
        for a in &self.lambdas {
            for b in &self.lambdas {
                let d = a.clone() - b.clone();
                if !out.contains(&d) {
                    out.push(d);
                }
            }
        }
        CoefficientSet(out)
    }
}

/// The finite set D(λ) of admissible coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientSet<T>(Vec<T>);

impl<T: Scalar> CoefficientSet<T> {
    pub fn contains(&self, x: &T) -> bool {
        self.0.contains(x)
    }

    pub fn values(&self) -> &[T] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}
