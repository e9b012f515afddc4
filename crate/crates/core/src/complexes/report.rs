use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::{Grading, HomologyGroup};
use crate::linalg::Scalar;

/// One term `coefficient · label` of a representative cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Term {
    pub label: String,
    pub coefficient: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub degree: i64,
    pub chain_dim: usize,
    pub kernel_dim: usize,
    pub image_dim: usize,
    pub betti: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub representatives: Option<Vec<Vec<Term>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub algebra: String,
    pub coefficients: String,
    pub theory: String,
    pub method: String,
    pub grading: Grading,
    /// Truncation and window parameters (`max_degree`, `columns`, …).
    pub parameters: BTreeMap<String, i64>,
    pub degrees: Vec<DegreeReport>,
}

impl HomologyReport {
    pub fn new(
        algebra: impl Into<String>,
        coefficients: impl Into<String>,
        theory: impl Into<String>,
        method: impl Into<String>,
        grading: Grading,
    ) -> Self {
        HomologyReport {
            algebra: algebra.into(),
            coefficients: coefficients.into(),
            theory: theory.into(),
            method: method.into(),
            grading,
            parameters: BTreeMap::new(),
            degrees: Vec::new(),
        }
    }

    pub fn with_parameter(mut self, key: &str, value: i64) -> Self {
        self.parameters.insert(key.to_string(), value);
        self
    }

    /// Appends groups, labelling representative coordinates with `label(degree, index)`.
    pub fn push_groups(&mut self, groups: Vec<HomologyGroup>, label: impl Fn(i64, usize) -> String) {
        for g in groups {
            let representatives = g.representatives.map(|reps| {
                reps.into_iter()
                    .map(|v| {
                        v.into_iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .map(|(i, c)| Term {
                                label: label(g.degree, i),
                                coefficient: c,
                            })
                            .collect()
                    })
                    .collect()
            });
            self.degrees.push(DegreeReport {
                degree: g.degree,
                chain_dim: g.chain_dim,
                kernel_dim: g.kernel_dim,
                image_dim: g.image_dim,
                betti: g.betti,
                representatives,
            });
        }
    }

    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.betti).collect()
    }

    pub fn betti_at(&self, n: i64) -> Option<usize> {
        self.degrees.iter().find(|d| d.degree == n).map(|d| d.betti)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// Pretty JSON with keys in sorted order.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{} of {} with coefficients in {} ({})",
            self.theory, self.algebra, self.coefficients, self.method
        );
        if !self.parameters.is_empty() {
            let params: Vec<String> = self.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(s, "parameters: {}", params.join(", "));
        }
        let _ = writeln!(
            s,
            "{:>6} {:>8} {:>8} {:>8} {:>6}",
            "degree", "chains", "kernel", "image", "betti"
        );
        for d in &self.degrees {
            let _ = writeln!(
                s,
                "{:>6} {:>8} {:>8} {:>8} {:>6}",
                d.degree, d.chain_dim, d.kernel_dim, d.image_dim, d.betti
            );
            for (k, rep) in d.representatives.iter().flatten().enumerate() {
                let terms: Vec<String> = rep.iter().map(|t| format!("{}·{}", t.coefficient, t.label)).collect();
                let _ = writeln!(s, "{:>8}[{k}] {}", "", terms.join(" + "));
            }
        }
        s
    }
}
