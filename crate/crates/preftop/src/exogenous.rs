//! Contour-set topologies on the alternative set.
//!
//! Every preference induces a topology on the alternatives, generated by
//! its strict upper and lower contour sets; a preference is continuous
//! relative to an exogenous topology when those contour sets are open,
//! and locally strict when every weakly ranked pair has strictly ranked
//! pairs in each of its product neighborhoods. The checkers here sweep
//! topologies on the ground set, compute the continuous-and-locally-strict
//! subfamily, and test whether the final topology restricted to it is
//! discrete (equivalently Hausdorff at finite scale).

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::order::{Family, WeakOrder};
use crate::quotient::{final_topology, CheckConfig};
use crate::report::{ClaimReport, Verdict};
use crate::topology::FiniteTopology;
use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};
use serde_json::json;

/// Strict upper contour set `{y : y ≻ x}`.
pub fn upper_contour(p: &WeakOrder, x: usize) -> Vec<usize> {
    (0..p.n()).filter(|&y| p.strict(y, x)).collect()
}

/// Strict lower contour set `{y : x ≻ y}`.
pub fn lower_contour(p: &WeakOrder, x: usize) -> Vec<usize> {
    (0..p.n()).filter(|&y| p.strict(x, y)).collect()
}

/// Open interval `I(y, z) = {x : y ≻ x ≻ z}`.
pub fn interval(p: &WeakOrder, y: usize, z: usize) -> Vec<usize> {
    (0..p.n())
        .filter(|&x| p.strict(y, x) && p.strict(x, z))
        .collect()
}

/// The topology on the alternatives generated by all strict upper and
/// lower contour sets of `p`.
pub fn contour_topology(p: &WeakOrder) -> FiniteTopology {
    let mut subbasis = Vec::new();
    for x in 0..p.n() {
        subbasis.push(upper_contour(p, x));
        subbasis.push(lower_contour(p, x));
    }
    FiniteTopology::from_subbasis(p.n(), &subbasis).expect("contour sets are in range")
}

/// Continuity of `p` relative to `t_x`: every strict contour set open.
pub fn is_continuous_pref(p: &WeakOrder, t_x: &FiniteTopology) -> Result<bool> {
    if p.n() != t_x.n() {
        return Err(Error::DimensionMismatch { expected: t_x.n(), got: p.n() });
    }
    for x in 0..p.n() {
        if !t_x.is_open(&upper_contour(p, x))? || !t_x.is_open(&lower_contour(p, x))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// How the local-strictness quantifier treats the diagonal pairs `(x, x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DiagonalPairs {
    /// Quantify over every `(x, y)` with `x ≿ y`, the diagonal included
    /// (since `x ≿ x` always holds).
    Included,
    /// Quantify only over distinct pairs.
    Excluded,
}

/// Local strictness of `p` in `(X, t_x)`: every weakly ranked pair has a
/// strictly ranked pair in each product neighborhood.
///
/// For finite spaces it suffices to inspect the minimal product
/// neighborhood (the product of minimal open sets), since every other
/// neighborhood contains it.
pub fn is_locally_strict_with(
    p: &WeakOrder,
    t_x: &FiniteTopology,
    diagonal: DiagonalPairs,
) -> Result<bool> {
    if p.n() != t_x.n() {
        return Err(Error::DimensionMismatch { expected: t_x.n(), got: p.n() });
    }
    for x in 0..p.n() {
        for y in 0..p.n() {
            if x == y && diagonal == DiagonalPairs::Excluded {
                continue;
            }
            if !p.weak(x, y) {
                continue;
            }
            let ux = t_x.minimal_open(x);
            let uy = t_x.minimal_open(y);
            let mut found = false;
            'search: for a in 0..p.n() {
                if ux >> a & 1 == 0 {
                    continue;
                }
                for b in 0..p.n() {
                    if uy >> b & 1 == 1 && p.strict(a, b) {
                        found = true;
                        break 'search;
                    }
                }
            }
            if !found {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Local strictness with diagonal pairs included.
pub fn is_locally_strict(p: &WeakOrder, t_x: &FiniteTopology) -> Result<bool> {
    is_locally_strict_with(p, t_x, DiagonalPairs::Included)
}

/// The continuous and locally strict preferences relative to `t_x`.
pub fn pcls_family(n: usize, t_x: &FiniteTopology) -> Result<Vec<WeakOrder>> {
    let mut out = Vec::new();
    for p in WeakOrder::enumerate(n, Family::P)? {
        if is_continuous_pref(&p, t_x)? && is_locally_strict(&p, t_x)? {
            out.push(p);
        }
    }
    Ok(out)
}

/// Membership in `P^ci`: no nonempty subset of any indifference class of
/// `p` is open in `p`'s own contour topology.
pub fn pci_membership(p: &WeakOrder) -> bool {
    let t = contour_topology(p);
    for class in p.classes() {
        let k = class.len();
        for pick in 1u32..(1 << k) {
            let subset: Vec<usize> = (0..k)
                .filter(|&i| pick >> i & 1 == 1)
                .map(|i| class[i])
                .collect();
            if t.is_open(&subset).expect("subset in range") {
                return false;
            }
        }
    }
    true
}

/// Isolation of `x` in `p`: some `a ≻ x ≻ b` with both open intervals
/// `I(a, x)` and `I(x, b)` empty.
pub fn is_isolated(x: usize, p: &WeakOrder) -> bool {
    for a in 0..p.n() {
        if !p.strict(a, x) || !interval(p, a, x).is_empty() {
            continue;
        }
        for b in 0..p.n() {
            if p.strict(x, b) && interval(p, x, b).is_empty() {
                return true;
            }
        }
    }
    false
}

/// Does the specific pair `(a, b)` witness the isolation of `x`?
pub fn isolates(a: usize, x: usize, b: usize, p: &WeakOrder) -> bool {
    p.strict(a, x)
        && p.strict(x, b)
        && interval(p, a, x).is_empty()
        && interval(p, x, b).is_empty()
}

/// `P^ci` is empty on finite ground sets.
pub fn check_prop3_finite(n: usize, cfg: &CheckConfig) -> Result<ClaimReport> {
    if n < 2 {
        return Err(Error::Scope("needs at least two alternatives".into()));
    }
    let mut report = ClaimReport::new("prop3_finite", n, "P", Verdict::Confirmed);
    report.seed = cfg.seed;
    let mut members = Vec::new();
    let mut checked = 0usize;
    for p in WeakOrder::enumerate(n, Family::P)? {
        checked += 1;
        if pci_membership(&p) {
            members.push(p.to_string());
        }
    }
    report.sub("preferences_checked", checked);
    report.sub("pci_size", members.len());
    report.sub("pci_empty", if members.is_empty() { "CONFIRMED" } else { "REFUTED" });
    if !members.is_empty() {
        report.witness = Some(json!({ "pci_members": members.clone() }));
    }

    // The worked example: one two-member top class over a third point.
    if n == 3 {
        let p = WeakOrder::from_classes(3, &[vec![0, 1], vec![2]])?;
        let t = contour_topology(&p);
        report.sub(
            "footnote_example",
            json!({
                "preference": p.to_string(),
                "contour_topology": serde_json::to_value(&t).expect("serializable"),
                "open_indifference_class": t.is_open(&[0, 1])?,
                "pci_member": pci_membership(&p),
            }),
        );
    }

    report.verdict = if members.is_empty() { Verdict::Confirmed } else { Verdict::Refuted };
    Ok(report)
}

/// Membership in `P^ci` implies local strictness in the preference's own
/// contour topology; vacuously confirmed on finite ground sets.
pub fn check_lemma_locally_strict(n: usize, cfg: &CheckConfig) -> Result<ClaimReport> {
    if n < 2 {
        return Err(Error::Scope("needs at least two alternatives".into()));
    }
    let mut report = ClaimReport::new("lemma_locally_strict", n, "P", Verdict::Confirmed);
    report.seed = cfg.seed;
    let mut pci_count = 0usize;
    let mut failures = Vec::new();
    for p in WeakOrder::enumerate(n, Family::P)? {
        if pci_membership(&p) {
            pci_count += 1;
            if !is_locally_strict(&p, &contour_topology(&p))? {
                failures.push(p.to_string());
            }
        }
    }
    report.sub("pci_size", pci_count);
    report.sub("vacuous", pci_count == 0);
    report.sub("implication_holds", if failures.is_empty() { "CONFIRMED" } else { "REFUTED" });
    if !failures.is_empty() {
        report.witness = Some(json!({ "counterexamples": failures.clone() }));
    }

    // Negative control: the two-member top class is outside P^ci and not
    // locally strict in its own contour topology.
    if n >= 3 {
        let p = WeakOrder::from_classes(n, &[vec![0, 1], (2..n).collect()])?;
        let control_ok =
            !pci_membership(&p) && !is_locally_strict(&p, &contour_topology(&p))?;
        report.invariant("negative_control", control_ok, "control preference misbehaved");
    }

    report.verdict = if failures.is_empty() { Verdict::Confirmed } else { Verdict::Refuted };
    Ok(report)
}

/// Theorem-4 style check for one exogenous topology: the final topology
/// restricted to the continuous locally strict family must be discrete
/// (Hausdorff for finite Alexandrov subspaces).
pub fn check_theorem4(n: usize, t_x: &FiniteTopology, cfg: &CheckConfig) -> Result<ClaimReport> {
    if t_x.n() != n {
        return Err(Error::DimensionMismatch { expected: n, got: t_x.n() });
    }
    let mut report = ClaimReport::new("theorem4", n, "P^cls", Verdict::Confirmed);
    report.seed = cfg.seed;
    let pcls = pcls_family(n, t_x)?;
    report.sub("pcls_size", pcls.len());
    report.sub("vacuous", pcls.is_empty());
    report.sub(
        "pcls_members",
        json!(pcls.iter().map(|p| p.to_string()).collect::<Vec<_>>()),
    );

    // Side-by-side count under the other diagonal reading.
    let mut excluded_count = 0usize;
    for p in WeakOrder::enumerate(n, Family::P)? {
        if is_continuous_pref(&p, t_x)?
            && is_locally_strict_with(&p, t_x, DiagonalPairs::Excluded)?
        {
            excluded_count += 1;
        }
    }
    report.sub("pcls_size_diagonal_excluded", excluded_count);

    let mut hausdorff = true;
    let mut witness = None;
    if !pcls.is_empty() {
        // Discreteness inside the quotient preorder, computed both within
        // P* and within P; comparability is pairwise so they agree.
        let star = final_topology(Family::PStar, n)?;
        let sub = star.restrict(&star.subset(&pcls)?, "P^cls")?;
        hausdorff = sub.preorder().is_discrete();
        if !hausdorff {
            'find: for i in 0..sub.len() {
                for j in 0..sub.len() {
                    if i != j && sub.preorder().leq(i, j) {
                        witness = Some(json!({
                            "coarse": sub.member(i).to_string(),
                            "strict_refinement": sub.member(j).to_string(),
                        }));
                        break 'find;
                    }
                }
            }
        }
        let full = final_topology(Family::P, n)?;
        let sub_p = full.restrict(&full.subset(&pcls)?, "P^cls in P")?;
        report.invariant(
            "preorder_insensitive_to_ambient_family",
            sub_p.preorder().is_discrete() == hausdorff,
            "P and P* preorders disagree on the subfamily",
        );
    }
    report.sub("hausdorff", if hausdorff { "CONFIRMED" } else { "REFUTED" });
    report.witness = witness;
    report.verdict = if hausdorff { Verdict::Confirmed } else { Verdict::Refuted };
    Ok(report)
}

/// One row of a topology sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepRow {
    pub topology_index: usize,
    pub opens: Vec<Vec<usize>>,
    pub pcls_size: usize,
    pub verdict: Verdict,
    pub vacuous: bool,
}

/// Sweeps topologies on `n` points (all of them for `n ≤ 3`, a seeded
/// sample of `sample_cap` beyond that unless `full` is set) and runs the
/// Hausdorff check against each.
pub fn theorem4_sweep(
    n: usize,
    full: bool,
    sample_cap: usize,
    cfg: &CheckConfig,
) -> Result<(Vec<SweepRow>, ClaimReport)> {
    let all = FiniteTopology::enumerate_all(n)?;
    let mut picks: Vec<usize> = (0..all.len()).collect();
    if !full && all.len() > sample_cap {
        let mut rng = crate::rng::stream(cfg.seed, "theorem4-sweep", n);
        picks.shuffle(&mut rng);
        picks.truncate(sample_cap);
        picks.sort_unstable();
    }

    let mut rows = Vec::new();
    let mut nonvacuous = 0usize;
    let mut refuted = 0usize;
    for &i in &picks {
        let r = check_theorem4(n, &all[i], cfg)?;
        let vacuous = r.subverdicts["vacuous"] == serde_json::Value::Bool(true);
        if !vacuous {
            nonvacuous += 1;
        }
        if r.verdict == Verdict::Refuted {
            refuted += 1;
        }
        rows.push(SweepRow {
            topology_index: i,
            opens: all[i].opens(),
            pcls_size: r.subverdicts["pcls_size"].as_u64().unwrap_or(0) as usize,
            verdict: r.verdict,
            vacuous,
        });
    }

    let mut report = ClaimReport::new("theorem4_sweep", n, "P^cls", Verdict::Confirmed);
    report.seed = cfg.seed;
    report.sub("topologies_total", all.len());
    report.sub("topologies_checked", rows.len());
    report.sub("nonvacuous", nonvacuous);
    report.sub("refuted", refuted);
    report.verdict = if refuted == 0 { Verdict::Confirmed } else { Verdict::Refuted };
    Ok((rows, report))
}

/// Indices of the `P^cls` family as a subset of a `PrefSpace`, handy for
/// callers working at the preorder level.
pub fn pcls_subset(space: &crate::quotient::PrefSpace, t_x: &FiniteTopology) -> Result<BitSet> {
    let pcls = pcls_family(space.n_alts(), t_x)?;
    space.subset(&pcls)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, classes: &[&[usize]]) -> WeakOrder {
        WeakOrder::from_classes(n, &classes.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn contour_topology_examples() {
        // Two-member top class: opens are exactly {∅, X, {0,1}, {2}}.
        let p = w(3, &[&[0, 1], &[2]]);
        let t = contour_topology(&p);
        assert_eq!(t.opens(), vec![vec![], vec![2], vec![0, 1], vec![0, 1, 2]]);

        let indiff = WeakOrder::total_indifference(3);
        assert_eq!(contour_topology(&indiff).open_count(), 2);

        let strict = w(3, &[&[0], &[1], &[2]]);
        assert_eq!(contour_topology(&strict).open_count(), 8);
    }

    #[test]
    fn contour_topology_is_coarsest_making_p_continuous() {
        for p in WeakOrder::enumerate(4, Family::P).unwrap() {
            let t = contour_topology(&p);
            assert!(is_continuous_pref(&p, &t).unwrap());
        }
    }

    #[test]
    fn interval_is_intersection_of_contours() {
        for p in WeakOrder::enumerate(4, Family::P).unwrap() {
            for y in 0..4 {
                for z in 0..4 {
                    let mut expect: Vec<usize> = lower_contour(&p, y)
                        .into_iter()
                        .filter(|x| upper_contour(&p, z).contains(x))
                        .collect();
                    expect.sort_unstable();
                    assert_eq!(interval(&p, y, z), expect);
                }
            }
        }
    }

    #[test]
    fn continuity_examples() {
        let d = FiniteTopology::discrete(3);
        let t = FiniteTopology::trivial(3);
        for p in WeakOrder::enumerate(3, Family::P).unwrap() {
            assert!(is_continuous_pref(&p, &d).unwrap());
            assert_eq!(
                is_continuous_pref(&p, &t).unwrap(),
                p.is_total_indifference()
            );
        }
    }

    #[test]
    fn local_strictness_examples() {
        let d = FiniteTopology::discrete(3);
        let strict = w(3, &[&[0], &[1], &[2]]);
        // The diagonal pair (x, x) has the singleton product neighborhood.
        assert!(!is_locally_strict(&strict, &d).unwrap());
        assert!(is_locally_strict_with(&strict, &d, DiagonalPairs::Excluded).unwrap());

        let p = w(3, &[&[0, 1], &[2]]);
        assert!(!is_locally_strict(&p, &contour_topology(&p)).unwrap());

        let indiff = WeakOrder::total_indifference(3);
        for t in FiniteTopology::enumerate_all(3).unwrap() {
            assert!(!is_locally_strict(&indiff, &t).unwrap());
        }
    }

    #[test]
    fn minimal_neighborhood_reduction_matches_full_quantifier_n3() {
        // Brute-force over all product-open boxes.
        let full = |p: &WeakOrder, t: &FiniteTopology| -> bool {
            for x in 0..p.n() {
                for y in 0..p.n() {
                    if !p.weak(x, y) {
                        continue;
                    }
                    for &g1 in t.opens_masks() {
                        if g1 >> x & 1 == 0 {
                            continue;
                        }
                        for &g2 in t.opens_masks() {
                            if g2 >> y & 1 == 0 {
                                continue;
                            }
                            let mut found = false;
                            for a in 0..p.n() {
                                for b in 0..p.n() {
                                    if g1 >> a & 1 == 1 && g2 >> b & 1 == 1 && p.strict(a, b) {
                                        found = true;
                                    }
                                }
                            }
                            if !found {
                                return false;
                            }
                        }
                    }
                }
            }
            true
        };
        for t in FiniteTopology::enumerate_all(3).unwrap() {
            for p in WeakOrder::enumerate(3, Family::P).unwrap() {
                assert_eq!(
                    is_locally_strict(&p, &t).unwrap(),
                    full(&p, &t),
                    "{p} in {t:?}"
                );
            }
        }
    }

    #[test]
    fn pcls_empty_for_discrete_and_trivial() {
        for n in 2..=4 {
            assert!(pcls_family(n, &FiniteTopology::discrete(n)).unwrap().is_empty());
            assert!(pcls_family(n, &FiniteTopology::trivial(n)).unwrap().is_empty());
        }
    }

    #[test]
    fn pci_examples() {
        let strict = w(3, &[&[0], &[1], &[2]]);
        assert!(!pci_membership(&strict));
        let p = w(3, &[&[0, 1], &[2]]);
        assert!(!pci_membership(&p));
    }

    #[test]
    fn isolation_examples() {
        let strict = w(3, &[&[0], &[1], &[2]]);
        assert!(is_isolated(1, &strict));
        assert!(!is_isolated(0, &strict), "maximal points are not isolated");
        assert!(!is_isolated(2, &strict), "minimal points are not isolated");

        // In a five-element chain the outermost pair does not witness the
        // middle's isolation (both gaps are nonempty), but the immediate
        // neighbors do.
        let chain = w(5, &[&[0], &[1], &[2], &[3], &[4]]);
        assert!(!isolates(0, 2, 4, &chain));
        assert!(isolates(1, 2, 3, &chain));
        assert!(is_isolated(2, &chain));
    }

    #[test]
    fn prop3_finite_confirmed() {
        let cfg = CheckConfig::with_seed(1);
        for n in 2..=4 {
            let r = check_prop3_finite(n, &cfg).unwrap();
            assert_eq!(r.verdict, Verdict::Confirmed);
            assert_eq!(r.subverdicts["pci_size"], 0);
        }
        let r = check_prop3_finite(3, &cfg).unwrap();
        assert_eq!(
            r.subverdicts["footnote_example"]["open_indifference_class"],
            true
        );
    }

    #[test]
    fn lemma_locally_strict_vacuous() {
        let cfg = CheckConfig::with_seed(1);
        for n in 2..=4 {
            let r = check_lemma_locally_strict(n, &cfg).unwrap();
            assert_eq!(r.verdict, Verdict::Confirmed);
            assert_eq!(r.subverdicts["vacuous"], true);
            assert!(r.integrity_ok(), "{:?}", r.integrity_failures());
        }
    }

    #[test]
    fn theorem4_vacuous_confirmed_on_discrete() {
        let cfg = CheckConfig::with_seed(1);
        let r = check_theorem4(3, &FiniteTopology::discrete(3), &cfg).unwrap();
        assert_eq!(r.verdict, Verdict::Confirmed);
        assert_eq!(r.subverdicts["vacuous"], true);
    }

    #[test]
    fn sweep_n3_covers_all_topologies() {
        let cfg = CheckConfig::with_seed(1);
        let (rows, report) = theorem4_sweep(3, true, usize::MAX, &cfg).unwrap();
        assert_eq!(rows.len(), 29);
        assert_eq!(report.verdict, Verdict::Confirmed);
    }
}
