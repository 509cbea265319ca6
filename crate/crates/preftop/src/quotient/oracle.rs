//! Numeric openness oracle.
//!
//! Independent of the refinement-closure shortcut, this probes whether
//! the utility-space preimage of a set of weak orders is open in the
//! pointwise topology: realize each member by concrete vectors, perturb
//! by every ±ε/2 sign pattern, and watch whether any perturbation lands
//! outside the set while staying in the ambient family.
//!
//! Soundness of the probe grid: perturbation magnitudes stay strictly
//! below half the realizer's class gap, so a perturbed vector can only
//! break ties, never merge or reorder separated classes — every escape
//! it finds is a refinement escape and certifies non-openness at every
//! radius. Completeness: if refinement closure fails anywhere, it fails
//! at an immediate refinement, which splits a single class into two
//! blocks, and the all-plus/all-minus-per-block sign pattern realizes
//! exactly that split.

use crate::error::{Error, Result};
use crate::order::{represent, Family, UtilityVector, WeakOrder};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

/// Probe schedule for the oracle.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OracleParams {
    /// Strictly decreasing positive radii; perturbations have magnitude ε/2.
    pub epsilons: Vec<f64>,
    /// Additional random realizers per member (≥ 1 keeps the canonical one
    /// company; gaps are drawn from [1, 2) so the full schedule applies).
    pub samples: usize,
    /// Seed for the random realizers.
    pub seed: u64,
}

impl Default for OracleParams {
    fn default() -> Self {
        OracleParams {
            epsilons: vec![0.25, 0.05, 0.01],
            samples: 2,
            seed: 0,
        }
    }
}

/// A concrete escape: perturbing `base` (which represents `member`) by
/// `perturbation` lands on `landed`, outside the probed set.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EscapeWitness {
    pub member: WeakOrder,
    pub base: Vec<f64>,
    pub perturbation: Vec<f64>,
    pub landed: WeakOrder,
    pub epsilon: f64,
}

/// Oracle verdict with its evidence trail.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OracleReport {
    /// Overall verdict: probes found no escape *and* the combinatorial
    /// criterion concurs.
    pub open: bool,
    /// The purely numeric side: no perturbation escaped.
    pub numeric_open: bool,
    /// The combinatorial side: closed under refinement within the family.
    pub closure_open: bool,
    pub probes: usize,
    pub witness: Option<EscapeWitness>,
    pub epsilons: Vec<f64>,
}

impl OracleReport {
    pub fn disagreement(&self) -> bool {
        self.numeric_open != self.closure_open
    }
}

fn validate_schedule(epsilons: &[f64]) -> Result<()> {
    if epsilons.is_empty() {
        return Err(Error::Precondition("epsilon schedule is empty".into()));
    }
    for w in epsilons.windows(2) {
        if w[1] >= w[0] {
            return Err(Error::Precondition(
                "epsilon schedule must be strictly decreasing".into(),
            ));
        }
    }
    if *epsilons.last().unwrap() <= 0.0 {
        return Err(Error::Precondition("epsilons must be positive".into()));
    }
    Ok(())
}

fn in_ambient(v: &UtilityVector, ambient: Family) -> bool {
    match ambient {
        Family::P => true,
        Family::PStar => !v.is_constant(),
        Family::PStrict => v.is_injective(),
    }
}

/// Is the preimage of `g` open in the ambient utility subspace?
///
/// Probes every member of `g` from its canonical realizer (integer class
/// gaps), from near-degenerate realizers whose class gap is each ε of the
/// schedule, and from `samples` randomized realizers. Each base point is
/// perturbed by all `2^n` sign patterns at magnitude ε/2 for every ε
/// strictly below its class gap.
pub fn openness_oracle_numeric(
    g: &[WeakOrder],
    ambient: Family,
    n: usize,
    params: &OracleParams,
) -> Result<OracleReport> {
    validate_schedule(&params.epsilons)?;
    if n > 6 {
        return Err(Error::SizeCap { requested: n, cap: 6 });
    }
    let family = WeakOrder::enumerate(n, ambient)?;
    if family.is_empty() {
        return Err(Error::Scope(format!(
            "ambient family {} is empty at n={n}",
            ambient.as_str()
        )));
    }
    let set: HashSet<WeakOrder> = g.iter().cloned().collect();
    for w in &set {
        if w.n() != n {
            return Err(Error::DimensionMismatch { expected: n, got: w.n() });
        }
        if !ambient.contains(w) {
            return Err(Error::Precondition(format!(
                "{w} lies outside ambient family {}",
                ambient.as_str()
            )));
        }
    }

    // Combinatorial route, computed independently of the probes.
    let closure_open = set.iter().all(|coarse| {
        family
            .iter()
            .filter(|fine| fine.refines(coarse).expect("same ground set"))
            .all(|fine| set.contains(fine))
    });

    let mut rng = crate::rng::stream(params.seed, "openness-oracle", n);
    let mut probes = 0usize;
    let mut witness: Option<EscapeWitness> = None;

    for member in &set {
        // Base realizers: canonical gap 1, one near-degenerate realizer
        // per schedule radius, and randomized gaps in [1, 2).
        let mut bases: Vec<(UtilityVector, f64)> = vec![(member.utility_with_gap(1.0), 1.0)];
        for &eps in &params.epsilons {
            bases.push((member.utility_with_gap(eps), eps));
        }
        for _ in 0..params.samples.max(1) {
            let gap = 1.0 + rng.gen_range(0.0..1.0);
            bases.push((member.utility_with_gap(gap), gap));
        }

        for (base, gap) in &bases {
            // Probe radii strictly below the class gap keep the probe
            // inside the refinement cone; fall back to gap/4 for the
            // realizer at the smallest scheduled radius.
            let mut radii: Vec<f64> = params
                .epsilons
                .iter()
                .copied()
                .filter(|eps| eps < gap)
                .collect();
            if radii.is_empty() {
                radii.push(gap / 4.0);
            }
            for eps in radii {
                let half = eps / 2.0;
                for pattern in 0u32..(1 << n) {
                    let delta: Vec<f64> = (0..n)
                        .map(|i| if pattern >> i & 1 == 1 { half } else { -half })
                        .collect();
                    let values: Vec<f64> = base
                        .values()
                        .iter()
                        .zip(&delta)
                        .map(|(b, d)| b + d)
                        .collect();
                    let v = UtilityVector::new(values);
                    probes += 1;
                    if !in_ambient(&v, ambient) {
                        continue;
                    }
                    let landed = represent(&v);
                    if !set.contains(&landed) && witness.is_none() {
                        witness = Some(EscapeWitness {
                            member: member.clone(),
                            base: base.values().to_vec(),
                            perturbation: delta,
                            landed,
                            epsilon: eps,
                        });
                    }
                }
            }
        }
    }

    let numeric_open = witness.is_none();
    Ok(OracleReport {
        open: numeric_open && closure_open,
        numeric_open,
        closure_open,
        probes,
        witness,
        epsilons: params.epsilons.clone(),
    })
}
