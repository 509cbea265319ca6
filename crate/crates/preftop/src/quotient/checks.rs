//! Claim checkers for the quotient topology.
//!
//! Each checker computes a verdict against the quotient operationalization
//! (a set is open iff refinement-closed iff its utility preimage is open)
//! rather than assuming any claimed statement as ground truth. Refuting
//! witnesses are re-validated by the numeric oracle before they are
//! emitted, and that re-validation travels with the report as an
//! `invariant:` gate.

use super::basis::{all_basis_member_sets, pairwise_intersection_holds};
use super::boxes::{box_image_comparison, BoxCase, Interval, IntervalBox};
use super::oracle::{openness_oracle_numeric, OracleParams};
use super::{final_topology, PrefSpace};
use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::order::{Family, UtilityVector, WeakOrder};
use crate::paths::{sign_change_on_grid, three_step_path, tie_break_all, verify_sequence};
use crate::rat::rat;
use crate::report::{ClaimReport, Verdict};
use crate::topology::BasisWitness;
use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

/// Shared knobs for the checkers; everything deterministic given `seed`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckConfig {
    pub seed: u64,
    pub oracle: OracleParams,
    /// Random subsets per sampled openness scan (sizes past exhaustive reach).
    pub random_subsets: usize,
    /// Random (u, v) pairs for the path checks.
    pub sample_pairs: usize,
    /// Random boxes for the box-image checks.
    pub boxes: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            seed: 0,
            oracle: OracleParams::default(),
            random_subsets: 500,
            sample_pairs: 200,
            boxes: 500,
        }
    }
}

impl CheckConfig {
    pub fn with_seed(seed: u64) -> Self {
        let mut cfg = CheckConfig::default();
        cfg.seed = seed;
        cfg.oracle.seed = seed;
        cfg
    }
}

fn orders_json(orders: &[WeakOrder]) -> serde_json::Value {
    json!(orders.iter().map(|w| w.to_string()).collect::<Vec<_>>())
}

fn verdict_str(ok: bool) -> &'static str {
    if ok {
        "CONFIRMED"
    } else {
        "REFUTED"
    }
}

/// Re-validates "this set is open" through the numeric oracle, recording
/// the outcome and probe count on the report.
fn revalidate_open(
    report: &mut ClaimReport,
    gate: &str,
    orders: &[WeakOrder],
    ambient: Family,
    n: usize,
    cfg: &CheckConfig,
) -> Result<()> {
    let oracle = openness_oracle_numeric(orders, ambient, n, &cfg.oracle)?;
    report.oracle.samples += oracle.probes;
    report.oracle.epsilons = oracle.epsilons.clone();
    if oracle.disagreement() {
        report.oracle.disagreements += 1;
    }
    report.invariant(
        gate,
        oracle.open,
        &format!(
            "oracle disagrees: numeric_open={}, closure_open={}",
            oracle.numeric_open, oracle.closure_open
        ),
    );
    Ok(())
}

/// Is the quotient topology on the full family trivial?
///
/// Triviality fails exactly when some member's refinement cone is a
/// proper subset of the family (the cone is open and nonempty, and any
/// proper nonempty open set contains such a cone). Also records whether
/// total indifference lies in the closure of every singleton.
pub fn check_theorem1(n: usize, cfg: &CheckConfig) -> Result<ClaimReport> {
    if n < 2 {
        return Err(Error::Scope("needs at least two alternatives".into()));
    }
    let space = final_topology(Family::P, n)?;
    let mut report = ClaimReport::new("theorem1", n, "P", Verdict::Confirmed);
    report.seed = cfg.seed;

    let witness_idx =
        (0..space.len()).find(|&i| space.preorder().up_set(i).count() != space.len());
    let trivial = witness_idx.is_none();
    report.verdict = if trivial { Verdict::Confirmed } else { Verdict::Refuted };
    report.sub("trivial_topology", verdict_str(trivial));

    // The glue mechanism: total indifference in every singleton closure.
    let indiff = space
        .index_of(&WeakOrder::total_indifference(n))
        .expect("total indifference is in P");
    let glue = (0..space.len()).all(|i| space.preorder().leq(indiff, i));
    report.sub("indifference_in_every_singleton_closure", verdict_str(glue));

    // Corroborating scans: exhaustive up-set census for small families,
    // seeded random up-closures beyond that.
    let proper_found = if space.len() <= 16 {
        let mut count = 0usize;
        for code in 1u32..((1u32 << space.len()) - 1) {
            let s = BitSet::from_indices(
                space.len(),
                (0..space.len()).filter(|&i| code >> i & 1 == 1),
            );
            if space.is_open(&s) {
                count += 1;
            }
        }
        report.sub("scan", "exhaustive");
        count
    } else {
        let mut rng = crate::rng::stream(cfg.seed, "theorem1-scan", n);
        let mut count = 0usize;
        for _ in 0..cfg.random_subsets {
            let mut s = BitSet::new(space.len());
            for i in 0..space.len() {
                if rng.gen_bool(0.3) {
                    s.insert(i);
                }
            }
            let closed_up = space.preorder().up_closure(&s);
            if !closed_up.is_empty() && closed_up.count() != space.len() {
                count += 1;
            }
        }
        report.sub("scan", format!("sampled:{}", cfg.random_subsets));
        count
    };
    report.sub("proper_nonempty_open_sets_found", proper_found);
    report.invariant(
        "scan_agrees_with_verdict",
        (proper_found > 0) == !trivial,
        "census and cone scan disagree",
    );

    if let Some(i) = witness_idx {
        let cone = space.orders_of(space.preorder().up_set(i));
        report.witness = Some(json!({
            "open_set": cone.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            "anchor": space.member(i).to_string(),
        }));
        revalidate_open(&mut report, "witness_revalidation", &cone, Family::P, n, cfg)?;
    }
    Ok(report)
}

/// Basis, Hausdorff failure, and connectedness for the family without
/// total indifference.
pub fn check_theorem2(n: usize, cfg: &CheckConfig) -> Result<ClaimReport> {
    if n < 3 {
        return Err(Error::Scope("needs at least three alternatives".into()));
    }
    let space = final_topology(Family::PStar, n)?;
    let mut report = ClaimReport::new("theorem2", n, "P*", Verdict::Confirmed);
    report.seed = cfg.seed;

    // (a) Is the agreement-set family a basis?
    let family_sets = all_basis_member_sets(&space);
    let basis = space.preorder().is_basis(&family_sets);
    report.sub("basis", verdict_str(basis.ok));
    if let Some(w) = &basis.witness {
        report.sub("basis_witness", serde_json::to_value(w).expect("serializable"));
        if let BasisWitness::NotCovered { open_set, point } = w {
            let orders: Vec<WeakOrder> =
                open_set.iter().map(|&i| space.member(i).clone()).collect();
            report.witness = Some(json!({
                "open_set": orders.iter().map(|o| o.to_string()).collect::<Vec<_>>(),
                "uncovered_point": space.member(*point).to_string(),
            }));
            revalidate_open(
                &mut report,
                "witness_revalidation",
                &orders,
                Family::PStar,
                n,
                cfg,
            )?;
        }
    }

    // The critical instance: the refinement cone of "0 above everything
    // tied" — open, and coverable only if some agreement set fits inside.
    let anchor = WeakOrder::from_classes(n, &[vec![0], (1..n).collect()])
        .expect("two-class order");
    let anchor_idx = space.index_of(&anchor).expect("member of P*");
    let cone = space.preorder().up_set(anchor_idx);
    let covered = family_sets
        .iter()
        .any(|b| b.contains(anchor_idx) && b.is_subset_of(cone));
    report.sub(
        "critical_instance",
        json!({
            "open_set": space
                .orders_of(cone)
                .iter()
                .map(|o| o.to_string())
                .collect::<Vec<_>>(),
            "anchor": anchor.to_string(),
            "covered_by_basis_member": covered,
        }),
    );

    // (b) Hausdorff must fail: the two-class anchor sits in the closure
    // of any of its strict refinements.
    let sep = space.preorder().separation_axioms();
    let not_hausdorff = !sep.t2;
    report.sub("not_hausdorff", verdict_str(not_hausdorff));
    let strict_refinement = space
        .family()
        .iter()
        .position(|w| w.is_strict() && w.refines(&anchor).unwrap())
        .expect("strict refinement exists");
    let mechanism = space.preorder().leq(anchor_idx, strict_refinement);
    report.sub(
        "non_t1_witness",
        json!({
            "coarse": anchor.to_string(),
            "strict": space.member(strict_refinement).to_string(),
            "coarse_in_closure_of_strict": mechanism,
        }),
    );
    report.invariant("non_t1_mechanism", mechanism, "closure witness missing");

    // (c) Path-connectedness.
    let conn = space.preorder().connectivity();
    report.sub("path_connected", verdict_str(conn.path_connected));
    report.sub("components", conn.components.len());

    report.verdict = if basis.ok && not_hausdorff && conn.path_connected {
        Verdict::Confirmed
    } else {
        Verdict::Refuted
    };
    Ok(report)
}

/// The quotient topology on strict preferences is discrete.
pub fn check_theorem3(n: usize, cfg: &CheckConfig) -> Result<ClaimReport> {
    if n < 2 {
        return Err(Error::Scope("needs at least two alternatives".into()));
    }
    let space = final_topology(Family::PStrict, n)?;
    let mut report = ClaimReport::new("theorem3", n, "P^s", Verdict::Confirmed);
    report.seed = cfg.seed;

    let discrete = space.preorder().is_discrete();
    report.sub("discrete", verdict_str(discrete));

    let singletons_open = (0..space.len()).all(|i| {
        let s = BitSet::from_indices(space.len(), [i]);
        space.is_open(&s)
    });
    report.sub("singletons_open", verdict_str(singletons_open));

    let sep = space.preorder().separation_axioms();
    report.sub("hausdorff", verdict_str(sep.t0 && sep.t1 && sep.t2));

    let conn = space.preorder().connectivity();
    let totally = conn.totally_path_disconnected() && conn.components.len() == space.len();
    report.sub("totally_path_disconnected", verdict_str(totally));
    report.sub("components", conn.components.len());

    let basis = space.preorder().is_basis(&all_basis_member_sets(&space));
    report.sub("basis", verdict_str(basis.ok));

    // Numeric corroboration on singletons (sampled when the family is large).
    let mut rng = crate::rng::stream(cfg.seed, "theorem3-singletons", n);
    let picks: Vec<usize> = if space.len() <= 24 {
        (0..space.len()).collect()
    } else {
        (0..20).map(|_| rng.gen_range(0..space.len())).collect()
    };
    let mut all_open = true;
    for i in picks {
        let orders = vec![space.member(i).clone()];
        let oracle = openness_oracle_numeric(&orders, Family::PStrict, n, &cfg.oracle)?;
        report.oracle.samples += oracle.probes;
        report.oracle.epsilons = oracle.epsilons.clone();
        if oracle.disagreement() {
            report.oracle.disagreements += 1;
        }
        all_open &= oracle.open;
    }
    report.invariant("singleton_oracle_agreement", all_open, "singleton not open numerically");

    let ok = discrete && singletons_open && sep.t2 && totally && basis.ok;
    report.verdict = if ok { Verdict::Confirmed } else { Verdict::Refuted };
    if n == 2 {
        report.sub(
            "note",
            "two opposite strict orders split the family into two open singletons",
        );
    }
    Ok(report)
}

/// Adding any non-strict preference to the strict family breaks T1.
pub fn check_prop1(n: usize, cfg: &CheckConfig) -> Result<ClaimReport> {
    if n < 2 {
        return Err(Error::Scope("needs at least two alternatives".into()));
    }
    let space = final_topology(Family::P, n)?;
    let mut report = ClaimReport::new("prop1", n, "P^s + one non-strict", Verdict::Confirmed);
    report.seed = cfg.seed;

    let strict_idx: Vec<usize> = (0..space.len())
        .filter(|&i| space.member(i).is_strict())
        .collect();
    let non_strict: Vec<usize> = (0..space.len())
        .filter(|&i| !space.member(i).is_strict())
        .collect();

    let mut all_fail_t1 = true;
    let mut sequences_checked = 0usize;
    let mut sequences_passed = 0usize;
    let mut sample_witness = None;

    for &i in &non_strict {
        let mut members = BitSet::from_indices(space.len(), strict_idx.iter().copied());
        members.insert(i);
        let sub = space.restrict(&members, "P^s+1")?;
        let sep = sub.preorder().separation_axioms();
        if sep.t1 {
            all_fail_t1 = false;
            report.sub(
                "t1_survivor",
                json!({ "added": space.member(i).to_string() }),
            );
            continue;
        }

        // ±2/n numeric evidence, one sequence per tied pair.
        let u = space.member(i).utility_with_gap(1.0);
        for ((x, y), seq) in tie_break_all(&u) {
            sequences_checked += 1;
            let sr = verify_sequence(&seq, 1e-5, 20);
            let proper_refinement = seq.expected_order() != space.member(i)
                && seq.expected_order().refines(space.member(i)).unwrap();
            if sr.passed && proper_refinement {
                sequences_passed += 1;
            }
            if sample_witness.is_none() {
                sample_witness = Some(json!({
                    "added": space.member(i).to_string(),
                    "tied_pair": [x, y],
                    "term_order": seq.expected_order().to_string(),
                    "limit_order": seq.expected_limit_order().to_string(),
                    "deviation_at_1024": sr.deviations.last().map(|d| d.1),
                }));
            }
        }
    }

    report.sub("members_tested", non_strict.len());
    report.sub("all_fail_t1", verdict_str(all_fail_t1));
    report.sub("sequences_checked", sequences_checked);
    report.invariant(
        "tie_break_sequences",
        sequences_checked == sequences_passed,
        &format!("{sequences_passed}/{sequences_checked} sequences verified"),
    );
    report.witness = sample_witness;
    report.verdict = if all_fail_t1 && sequences_checked == sequences_passed {
        Verdict::Confirmed
    } else {
        Verdict::Refuted
    };
    Ok(report)
}

/// Per-set agreement of the three openness routes.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RouteAgreement {
    pub closure: bool,
    pub numeric: bool,
    pub indicator: bool,
}

impl RouteAgreement {
    pub fn agree(&self) -> bool {
        self.closure == self.numeric && self.numeric == self.indicator
    }
}

/// The three openness routes for one subset of a space.
pub fn lemma_opensets_routes(
    space: &PrefSpace,
    g: &BitSet,
    ambient: Family,
    params: &OracleParams,
) -> Result<(RouteAgreement, usize)> {
    let closure = space.is_open(g);
    let indicator = space.indicator_continuous(g);
    let orders = space.orders_of(g);
    let oracle = openness_oracle_numeric(&orders, ambient, space.n_alts(), params)?;
    Ok((
        RouteAgreement {
            closure,
            numeric: oracle.numeric_open,
            indicator,
        },
        oracle.probes,
    ))
}

/// Exhaustive (n ≤ 3) or seeded-random (n ≥ 4) three-way agreement scan
/// over subsets of the full family.
pub fn check_lemma_opensets(n: usize, cfg: &CheckConfig) -> Result<ClaimReport> {
    if n < 2 {
        return Err(Error::Scope("needs at least two alternatives".into()));
    }
    let space = final_topology(Family::P, n)?;
    let mut report = ClaimReport::new("lemma_opensets", n, "P", Verdict::Confirmed);
    report.seed = cfg.seed;
    report.oracle.epsilons = cfg.oracle.epsilons.clone();

    let mut disagreements = 0usize;
    let mut checked = 0usize;
    let mut first_disagreement = None;

    let mut run = |g: &BitSet, report: &mut ClaimReport| -> Result<()> {
        let (routes, probes) = lemma_opensets_routes(&space, g, Family::P, &cfg.oracle)?;
        report.oracle.samples += probes;
        checked += 1;
        if !routes.agree() {
            disagreements += 1;
            if first_disagreement.is_none() {
                first_disagreement = Some(json!({
                    "set": orders_json(&space.orders_of(g)),
                    "routes": routes,
                }));
            }
        }
        Ok(())
    };

    if space.len() <= 13 {
        for code in 0u32..(1 << space.len()) {
            let g = BitSet::from_indices(
                space.len(),
                (0..space.len()).filter(|&i| code >> i & 1 == 1),
            );
            run(&g, &mut report)?;
        }
        report.sub("scan", "exhaustive");
    } else {
        let mut rng = crate::rng::stream(cfg.seed, "lemma-opensets", n);
        for k in 0..cfg.random_subsets {
            let mut g = BitSet::new(space.len());
            for i in 0..space.len() {
                if rng.gen_bool(0.25) {
                    g.insert(i);
                }
            }
            // Alternate arbitrary subsets with their open up-closures so
            // both verdict polarities get exercised.
            if k % 2 == 0 {
                g = space.preorder().up_closure(&g);
            }
            run(&g, &mut report)?;
        }
        report.sub("scan", format!("sampled:{}", cfg.random_subsets));
    }

    report.sub("subsets_checked", checked);
    report.sub("route_disagreements", disagreements);
    if let Some(d) = first_disagreement {
        report.witness = Some(d);
    }
    report.oracle.disagreements = disagreements;
    report.invariant(
        "three_way_agreement",
        disagreements == 0,
        &format!("{disagreements} subsets disagreed"),
    );
    report.verdict = if disagreements == 0 {
        Verdict::Confirmed
    } else {
        Verdict::Refuted
    };
    Ok(report)
}

/// Random interval boxes: images open in the quotient, plus the
/// disjoint-chain form comparison.
pub fn check_box_image(n: usize, cfg: &CheckConfig) -> Result<ClaimReport> {
    if n < 2 {
        return Err(Error::Scope("needs at least two alternatives".into()));
    }
    let mut report = ClaimReport::new("box_image", n, "P*", Verdict::Confirmed);
    report.seed = cfg.seed;
    let space = final_topology(Family::PStar, n)?;
    let space_p = final_topology(Family::P, n)?;
    let mut rng = crate::rng::stream(cfg.seed, "box-image", n);

    let mut open_failures = 0usize;
    let mut chain_cases = 0usize;
    let mut chain_agreements = 0usize;
    let mut common_cases = 0usize;
    let mut common_identity_failures = 0usize;
    let mut first_chain_disagreement = None;

    for k in 0..cfg.boxes {
        let intervals: Vec<Interval> = (0..n)
            .map(|_| {
                if rng.gen_bool(0.25) {
                    Interval::Unconstrained
                } else {
                    let a = (rng.gen_range(-12i64..=8) as f64) / 2.0;
                    let len = (rng.gen_range(1i64..=8) as f64) / 2.0;
                    Interval::Open(a, a + len)
                }
            })
            .collect();
        let bx = IntervalBox::new(intervals)?;
        let ambient = [Family::P, Family::PStar][k % 2];
        let sp = if ambient == Family::P { &space_p } else { &space };
        let cmp = box_image_comparison(&bx, ambient)?;
        let image_set = sp.subset(&cmp.image)?;
        if !sp.is_open(&image_set) {
            open_failures += 1;
        }
        match cmp.case {
            BoxCase::CommonPoint => {
                common_cases += 1;
                if !cmp.agrees {
                    common_identity_failures += 1;
                }
            }
            BoxCase::DisjointChain => {
                chain_cases += 1;
                if cmp.agrees {
                    chain_agreements += 1;
                } else if first_chain_disagreement.is_none() {
                    first_chain_disagreement = Some(json!({
                        "box": bx,
                        "chain": cmp.chain,
                        "image_size": cmp.image.len(),
                        "claimed_size": cmp.claimed.len(),
                    }));
                }
            }
        }
    }

    report.sub("boxes_checked", cfg.boxes);
    report.sub("images_open", verdict_str(open_failures == 0));
    report.sub("common_point_cases", common_cases);
    report.sub("common_point_identity", verdict_str(common_identity_failures == 0));
    report.sub(
        "disjoint_chain_form",
        json!({
            "cases": chain_cases,
            "agreed": chain_agreements,
            "first_disagreement": first_chain_disagreement,
        }),
    );
    report.invariant("images_open", open_failures == 0, "non-open image found");
    report.verdict = if open_failures == 0 && common_identity_failures == 0 {
        Verdict::Confirmed
    } else {
        Verdict::Refuted
    };
    Ok(report)
}

/// Extensional check of `B(anchor, A) = ∩ pairwise B(anchor, {x, y})`.
pub fn check_basis_intersection(n: usize, cfg: &CheckConfig) -> Result<ClaimReport> {
    if n < 3 {
        return Err(Error::Scope("needs at least three alternatives".into()));
    }
    let mut report = ClaimReport::new("basis_intersection", n, "P*", Verdict::Confirmed);
    report.seed = cfg.seed;
    let mut failures = 0usize;
    let mut checked = 0usize;
    for family in [Family::PStar, Family::PStrict] {
        let space = final_topology(family, n)?;
        for anchor in space.family() {
            for pick in 0u32..(1 << n) {
                let a: Vec<usize> = (0..n).filter(|&x| pick >> x & 1 == 1).collect();
                if a.len() < 2 {
                    continue;
                }
                let strict = a
                    .iter()
                    .enumerate()
                    .all(|(i, &x)| a[i + 1..].iter().all(|&y| !anchor.indifferent(x, y)));
                if !strict {
                    continue;
                }
                checked += 1;
                if !pairwise_intersection_holds(&space, anchor, &a)? {
                    failures += 1;
                    if report.witness.is_none() {
                        report.witness = Some(json!({
                            "anchor": anchor.to_string(),
                            "set": a,
                            "family": family.as_str(),
                        }));
                    }
                }
            }
        }
    }
    report.sub("instances_checked", checked);
    report.sub("identity_holds", verdict_str(failures == 0));
    report.verdict = if failures == 0 { Verdict::Confirmed } else { Verdict::Refuted };
    Ok(report)
}

/// Three-step paths between random nonconstant vectors, plus the
/// sign-change obstruction for opposite-ranking strict endpoints.
pub fn check_homotopy(n: usize, cfg: &CheckConfig) -> Result<ClaimReport> {
    if n < 3 {
        return Err(Error::Scope("needs at least three alternatives".into()));
    }
    let mut report = ClaimReport::new("homotopy", n, "U*", Verdict::Confirmed);
    report.seed = cfg.seed;
    let mut rng = crate::rng::stream(cfg.seed, "homotopy", n);

    let draw_nonconstant = |rng: &mut rand_chacha::ChaCha8Rng| loop {
        let vals: Vec<f64> = (0..n).map(|_| (rng.gen_range(-40i64..=40) as f64) / 4.0).collect();
        let u = UtilityVector::new(vals);
        if !u.is_constant() {
            return u;
        }
    };

    let mut endpoint_failures = 0usize;
    let mut waypoint_failures = 0usize;
    let mut constancy_failures = 0usize;
    for _ in 0..cfg.sample_pairs {
        let u = draw_nonconstant(&mut rng);
        let v = draw_nonconstant(&mut rng);
        let path = three_step_path(&u, &v)?;
        if path.eval_f64(0.0).values() != u.values() || path.eval_f64(1.0).values() != v.values() {
            endpoint_failures += 1;
        }
        let (x, y, _) = path.anchors();
        let w1 = path.waypoint1();
        let w2 = path.waypoint2();
        let ok_w1 = w1[x] == crate::rat::rat_from_f64(u.get(x))
            && w1[y] == crate::rat::rat_from_f64(u.get(y));
        let ok_w2 = w2[x] == crate::rat::rat_from_f64(v.get(x)) && w2[y] == w2[x];
        if !(ok_w1 && ok_w2) {
            waypoint_failures += 1;
        }
        for k in 0..=100u64 {
            let p = path.eval(&rat(k as i64, 100));
            if p.iter().all(|a| *a == p[0]) {
                constancy_failures += 1;
                break;
            }
        }
    }
    report.sub("pairs_checked", cfg.sample_pairs);
    report.invariant("endpoints_exact", endpoint_failures == 0, "endpoint mismatch");
    report.invariant("waypoints_exact", waypoint_failures == 0, "waypoint mismatch");
    report.sub("nonconstant_along_path", verdict_str(constancy_failures == 0));

    // Obstruction: strict endpoints with an opposite-ranked pair force a
    // tie somewhere along any path.
    let mut obstruction_failures = 0usize;
    let mut tested = 0usize;
    'outer: for _ in 0..cfg.sample_pairs {
        let u = draw_nonconstant(&mut rng);
        let v = draw_nonconstant(&mut rng);
        if !u.is_injective() || !v.is_injective() {
            continue;
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && u.get(a) > u.get(b) && v.get(b) > v.get(a) {
                    tested += 1;
                    let path = three_step_path(&u, &v)?;
                    if sign_change_on_grid(&path, a, b, 101).is_none() {
                        obstruction_failures += 1;
                    }
                    continue 'outer;
                }
            }
        }
    }
    report.sub("opposite_pairs_tested", tested);
    report.invariant(
        "strict_path_obstruction",
        obstruction_failures == 0,
        "no sign change found",
    );

    let ok = endpoint_failures == 0
        && waypoint_failures == 0
        && constancy_failures == 0
        && obstruction_failures == 0;
    report.verdict = if ok { Verdict::Confirmed } else { Verdict::Refuted };
    Ok(report)
}
