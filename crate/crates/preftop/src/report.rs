//! Structured claim reports.
//!
//! Every checker ties its verdict to oracle evidence. A `REFUTED` verdict
//! is never emitted without a witness that has been independently
//! re-validated by the numeric oracle; the re-validation outcome travels
//! with the report as an `invariant:*` subverdict so a harness can fail
//! loudly when the tool itself (not the claim under test) misbehaves.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "CONFIRMED")]
    Confirmed,
    #[serde(rename = "REFUTED")]
    Refuted,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Confirmed => "CONFIRMED",
            Verdict::Refuted => "REFUTED",
        })
    }
}

/// Summary of the numeric-oracle work behind a report.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct OracleSummary {
    /// Perturbation probes evaluated.
    pub samples: usize,
    /// The ε schedule used.
    pub epsilons: Vec<f64>,
    /// Disagreements between the combinatorial and numeric openness
    /// verdicts; anything nonzero is a tool failure, not a finding.
    pub disagreements: usize,
}

/// Verdict for one claim at one size, with machine-readable evidence.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClaimReport {
    pub claim: String,
    pub n: usize,
    pub family: String,
    pub verdict: Verdict,
    /// Named sub-checks. Keys prefixed `invariant:` are internal
    /// consistency gates (values `"PASS"`/`"FAIL: ..."`) rather than
    /// statements about the claim itself.
    pub subverdicts: BTreeMap<String, serde_json::Value>,
    pub witness: Option<serde_json::Value>,
    pub oracle: OracleSummary,
    pub seed: u64,
    pub runtime_ms: u64,
}

impl ClaimReport {
    pub fn new(claim: &str, n: usize, family: &str, verdict: Verdict) -> Self {
        ClaimReport {
            claim: claim.to_string(),
            n,
            family: family.to_string(),
            verdict,
            subverdicts: BTreeMap::new(),
            witness: None,
            oracle: OracleSummary::default(),
            seed: 0,
            runtime_ms: 0,
        }
    }

    pub fn sub(&mut self, key: &str, value: impl Serialize) {
        self.subverdicts.insert(
            key.to_string(),
            serde_json::to_value(value).expect("serializable subverdict"),
        );
    }

    /// Records an internal invariant gate.
    pub fn invariant(&mut self, key: &str, ok: bool, detail: &str) {
        let value = if ok {
            "PASS".to_string()
        } else {
            format!("FAIL: {detail}")
        };
        self.subverdicts.insert(format!("invariant:{key}"), value.into());
    }

    /// `true` iff no `invariant:*` subverdict failed and the oracle saw no
    /// combinatorial/numeric disagreement.
    pub fn integrity_ok(&self) -> bool {
        self.oracle.disagreements == 0
            && self
                .subverdicts
                .iter()
                .filter(|(k, _)| k.starts_with("invariant:"))
                .all(|(_, v)| v.as_str() == Some("PASS"))
    }

    /// Failed internal gates, for harness exit-status decisions.
    pub fn integrity_failures(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .subverdicts
            .iter()
            .filter(|(k, _)| k.starts_with("invariant:"))
            .filter(|(_, v)| v.as_str() != Some("PASS"))
            .map(|(k, v)| format!("{k}: {}", v.as_str().unwrap_or("?")))
            .collect();
        if self.oracle.disagreements > 0 {
            out.push(format!(
                "oracle: {} combinatorial/numeric disagreements",
                self.oracle.disagreements
            ));
        }
        out
    }
}

/// Catalog entry describing one runnable claim checker.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClaimSpec {
    pub id: &'static str,
    /// The named statement the checker exercises.
    pub anchor: &'static str,
    pub module: &'static str,
    pub n_min: usize,
    pub n_max: usize,
    pub description: &'static str,
}

/// Every claim id the toolkit can check, with its size range.
pub fn catalog() -> Vec<ClaimSpec> {
    vec![
        ClaimSpec {
            id: "theorem1",
            anchor: "Theorem 1 (trivial topology on P)",
            module: "quotient",
            n_min: 2,
            n_max: 6,
            description: "Is the quotient topology on all weak orders trivial? Also checks that total indifference lies in the closure of every singleton.",
        },
        ClaimSpec {
            id: "theorem2",
            anchor: "Theorem 2 (basis for P*) + corollaries",
            module: "quotient",
            n_min: 3,
            n_max: 6,
            description: "Agreement-set basis, Hausdorff failure, and path-connectedness of the family without total indifference.",
        },
        ClaimSpec {
            id: "theorem3",
            anchor: "Theorem 3 (strict preferences)",
            module: "quotient",
            n_min: 2,
            n_max: 6,
            description: "The quotient topology on strict preferences is discrete: Hausdorff, totally path-disconnected, singletons open.",
        },
        ClaimSpec {
            id: "prop1",
            anchor: "Proposition 1 (largest Hausdorff family)",
            module: "quotient",
            n_min: 2,
            n_max: 6,
            description: "Adding any non-strict preference to the strict family breaks T1, with ±2/n utility sequences as numeric evidence.",
        },
        ClaimSpec {
            id: "prop3_finite",
            anchor: "Proposition 3, finite part (P^ci empty)",
            module: "exogenous",
            n_min: 2,
            n_max: 6,
            description: "No preference on a finite ground set avoids open subsets of its own indifference classes.",
        },
        ClaimSpec {
            id: "theorem4_sweep",
            anchor: "Theorem 4 (Hausdorff for continuous locally strict preferences)",
            module: "exogenous",
            n_min: 2,
            n_max: 4,
            description: "Sweeps topologies on the ground set and checks discreteness of the continuous-and-locally-strict subfamily.",
        },
        ClaimSpec {
            id: "lemma_opensets",
            anchor: "Lemma (quotient openness characterization)",
            module: "quotient",
            n_min: 2,
            n_max: 4,
            description: "Three-way agreement of refinement closure, the ε-perturbation oracle, and two-point-indicator continuity.",
        },
        ClaimSpec {
            id: "lemma_locally_strict",
            anchor: "Lemma (contour topologies make P^ci locally strict)",
            module: "exogenous",
            n_min: 2,
            n_max: 6,
            description: "Membership in P^ci implies local strictness in the preference's own contour topology.",
        },
        ClaimSpec {
            id: "box_image",
            anchor: "Lemmas (images of interval boxes are open; open map)",
            module: "quotient",
            n_min: 2,
            n_max: 6,
            description: "Images of open interval boxes under the representation map are open; compares the disjoint-interval case with its claimed agreement-set form.",
        },
        ClaimSpec {
            id: "basis_intersection",
            anchor: "Corollary (pairwise intersection identity)",
            module: "quotient",
            n_min: 3,
            n_max: 6,
            description: "B(anchor, A) equals the intersection of its pairwise agreement sets, checked extensionally.",
        },
        ClaimSpec {
            id: "homotopy",
            anchor: "Lemma (nonconstant utilities are path-connected) + disconnection remark",
            module: "paths",
            n_min: 3,
            n_max: 6,
            description: "Three-step paths between nonconstant utility vectors, plus the sign-change obstruction for strict-to-strict paths.",
        },
        ClaimSpec {
            id: "flatten_global",
            anchor: "Flattening construction (global)",
            module: "paths",
            n_min: 1,
            n_max: 6,
            description: "Scale a bounded representative toward zero: the represented order is constant, the limit is total indifference.",
        },
        ClaimSpec {
            id: "flatten_middle",
            anchor: "Flattening construction (between two ranked alternatives)",
            module: "paths",
            n_min: 3,
            n_max: 6,
            description: "Compress everything strictly between two alternatives onto the lower one; order constant, limit merges the middle.",
        },
        ClaimSpec {
            id: "ces_limits",
            anchor: "CES limits toward Leontief and Cobb-Douglas",
            module: "econ",
            n_min: 2,
            n_max: 2,
            description: "Grid deviations of the CES utility from its σ→0 and σ→1 limits, with frozen regression values.",
        },
        ClaimSpec {
            id: "ces_compensation",
            anchor: "Leontief-compensated price changes",
            module: "econ",
            n_min: 2,
            n_max: 2,
            description: "Leontief demand is exactly invariant to compensated price changes; small-σ CES is approximately invariant.",
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_has_at_least_twelve_claims() {
        let ids: Vec<&str> = catalog().iter().map(|c| c.id).collect();
        assert!(ids.len() >= 12, "{} ids", ids.len());
        let mut dedup = ids.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), ids.len());
    }

    #[test]
    fn report_json_shape() {
        let mut r = ClaimReport::new("theorem3", 3, "P^s", Verdict::Confirmed);
        r.sub("discrete", "CONFIRMED");
        r.invariant("witness_revalidation", true, "");
        let v = serde_json::to_value(&r).unwrap();
        for key in [
            "claim",
            "n",
            "family",
            "verdict",
            "subverdicts",
            "witness",
            "oracle",
            "seed",
            "runtime_ms",
        ] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["verdict"], "CONFIRMED");
        assert!(r.integrity_ok());
        r.invariant("broken", false, "details");
        assert!(!r.integrity_ok());
        assert_eq!(r.integrity_failures().len(), 1);
    }
}
