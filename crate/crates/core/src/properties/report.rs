use std::collections::BTreeMap;

use serde::Serialize;

use crate::{Feature, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PropertyId {
    P0,
    P1,
    P2,
    P3,
    P4,
    P5,
    #[serde(rename = "P0*")]
    P0Star,
    #[serde(rename = "P1*")]
    P1Star,
    #[serde(rename = "P3*")]
    P3Star,
    #[serde(rename = "VR")]
    Vr,
}

impl PropertyId {
    pub fn name(self) -> &'static str {
        match self {
            Self::P0 => "P0",
            Self::P1 => "P1",
            Self::P2 => "P2",
            Self::P3 => "P3",
            Self::P4 => "P4",
            Self::P5 => "P5",
            Self::P0Star => "P0*",
            Self::P1Star => "P1*",
            Self::P3Star => "P3*",
            Self::Vr => "VR",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Checked over every quantified object.
    Verified,
    /// Sampled without hitting a counterexample; not a proof.
    NoViolationFound,
    Violated,
}

/// Counterexample as index arrays plus the offending value and its bound.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clause: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub vertices: Vec<Vertex>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub features: Vec<Feature>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<f64>,
}

impl Witness {
    pub fn vertices(vertices: Vec<Vertex>) -> Self {
        Self { vertices, ..Self::default() }
    }

    pub fn features(features: Vec<Feature>) -> Self {
        Self { features, ..Self::default() }
    }

    pub fn clause(mut self, c: &str) -> Self {
        self.clause = Some(c.to_owned());
        self
    }

    pub fn value(mut self, v: f64) -> Self {
        self.value = Some(v);
        self
    }

    pub fn bound(mut self, b: f64) -> Self {
        self.bound = Some(b);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyReport {
    pub property: PropertyId,
    pub verdict: Verdict,
    /// Number of sampled objects; absent for exhaustive checks.
    pub samples: Option<u64>,
    pub witness: Option<Witness>,
    pub constants: BTreeMap<String, f64>,
}

impl PropertyReport {
    fn new(property: PropertyId, verdict: Verdict, constants: Vec<(&'static str, f64)>) -> Self {
        Self {
            property,
            verdict,
            samples: None,
            witness: None,
            constants: constants.into_iter().map(|(k, v)| (k.to_owned(), v)).collect(),
        }
    }

    pub(crate) fn verified(property: PropertyId, constants: Vec<(&'static str, f64)>) -> Self {
        Self::new(property, Verdict::Verified, constants)
    }

    pub(crate) fn not_found(property: PropertyId, samples: u64, constants: Vec<(&'static str, f64)>) -> Self {
        Self { samples: Some(samples), ..Self::new(property, Verdict::NoViolationFound, constants) }
    }

    pub(crate) fn violated(property: PropertyId, witness: Witness, constants: Vec<(&'static str, f64)>) -> Self {
        Self { witness: Some(witness), ..Self::new(property, Verdict::Violated, constants) }
    }

    pub(crate) fn with_samples(mut self, samples: Option<u64>) -> Self {
        self.samples = samples;
        self
    }

    pub fn is_verified(&self) -> bool {
        self.verdict == Verdict::Verified
    }

    pub fn is_violated(&self) -> bool {
        self.verdict == Verdict::Violated
    }

    /// Verified, or sampled without a counterexample.
    pub fn holds(&self) -> bool {
        !self.is_violated()
    }
}
