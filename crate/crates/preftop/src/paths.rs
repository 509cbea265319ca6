//! Proof-style utility sequences and paths.
//!
//! These are the explicit constructions that drive the closure and
//! connectivity arguments: flattening a representative toward the zero
//! vector, compressing the alternatives strictly between two ranked ones,
//! breaking a single tie by ±2/n shifts, collapsing a contour set toward
//! an interior alternative, and the three-step piecewise-affine path
//! between nonconstant vectors. Sequences expose a generator plus a
//! declared limit so convergence can be probed at any depth; all affine
//! formulas are evaluated in exact rational arithmetic.

use crate::error::{Error, Result};
use crate::order::{represent, represent_rational, UtilityVector, WeakOrder};
use crate::rat::{rat, rat_from_f64, rat_int, rat_to_f64, rats_to_f64s, Rat};
use num::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// A sequence of utility vectors with a declared pointwise limit and a
/// promised represented order along the way.
pub struct UtilitySequence {
    n_alts: usize,
    label: String,
    gen: Arc<dyn Fn(u64) -> Vec<Rat> + Send + Sync>,
    declared_limit: Vec<Rat>,
    expected_order: WeakOrder,
    expected_limit_order: WeakOrder,
    /// Set when an alternative indifferent to one of the construction's
    /// anchors sits on a case boundary; such inputs are reported because
    /// a different reading of the case split would move them.
    boundary_sensitive: bool,
}

impl UtilitySequence {
    /// The term at index `n ≥ 1`, exact.
    pub fn at(&self, n: u64) -> Vec<Rat> {
        assert!(n >= 1, "sequence indices start at 1");
        (self.gen)(n)
    }

    pub fn at_f64(&self, n: u64) -> UtilityVector {
        UtilityVector::new(rats_to_f64s(&self.at(n)))
    }

    pub fn declared_limit(&self) -> &[Rat] {
        &self.declared_limit
    }

    pub fn limit_f64(&self) -> UtilityVector {
        UtilityVector::new(rats_to_f64s(&self.declared_limit))
    }

    pub fn n_alts(&self) -> usize {
        self.n_alts
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// The order every finite term is promised to represent.
    pub fn expected_order(&self) -> &WeakOrder {
        &self.expected_order
    }

    pub fn expected_limit_order(&self) -> &WeakOrder {
        &self.expected_limit_order
    }

    pub fn boundary_sensitive(&self) -> bool {
        self.boundary_sensitive
    }

    /// Replaces the declared limit (negative-control handle for tests).
    pub fn with_declared_limit(mut self, limit: Vec<Rat>) -> Self {
        assert_eq!(limit.len(), self.n_alts);
        self.expected_limit_order = represent_rational(&limit);
        self.declared_limit = limit;
        self
    }
}

impl std::fmt::Debug for UtilitySequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "UtilitySequence({}, n_alts={})", self.label, self.n_alts)
    }
}

/// Strictly increasing bounded reparametrization of the distinct values
/// of `u`: `arctan` of each value, converted exactly to rationals, with
/// any rounding collision repaired upward below a rational bound < π/2.
fn bounded_rational_values(u: &UtilityVector) -> Vec<Rat> {
    // Strictly between the largest double arctan can return and π/2.
    let bound = rat(15_707_963_267_948_966, 10_000_000_000_000_000);
    let mut levels: Vec<f64> = u.values().to_vec();
    levels.sort_by(f64::total_cmp);
    levels.dedup();
    let mut mapped: Vec<Rat> = levels.iter().map(|v| rat_from_f64(v.atan())).collect();
    for i in 1..mapped.len() {
        if mapped[i] <= mapped[i - 1] {
            let repaired = (&mapped[i - 1] + &bound) / rat_int(2);
            mapped[i] = repaired;
        }
    }
    u.values()
        .iter()
        .map(|v| {
            let k = levels.partition_point(|l| l < v) ;
            mapped[k].clone()
        })
        .collect()
}

/// Scales a bounded representative toward the zero vector: `u_n = v/n`
/// where `v` is the bounded reparametrization of `u`. Every term
/// represents the same order as `u`; the limit is total indifference.
pub fn flatten_global(u: &UtilityVector) -> UtilitySequence {
    let v = bounded_rational_values(u);
    let n_alts = u.len();
    let expected_order = represent(u);
    debug_assert_eq!(represent_rational(&v), expected_order);
    let gen_v = v;
    UtilitySequence {
        n_alts,
        label: "flatten_global".into(),
        gen: Arc::new(move |n| {
            let inv = rat(1, n as i64);
            gen_v.iter().map(|x| x * &inv).collect()
        }),
        declared_limit: vec![Rat::zero(); n_alts],
        expected_order,
        expected_limit_order: WeakOrder::total_indifference(n_alts),
        boundary_sensitive: false,
    }
}

/// Compresses every alternative strictly between `x` and `y` toward
/// `u(y)`: `u_n(z) = (1 - 1/n)·u(y) + (1/n)·u(z)` on the open middle,
/// unchanged elsewhere. Requires `x` strictly above `y` with at least one
/// alternative strictly between; the limit merges the middle into `y`'s
/// class.
pub fn flatten_middle(u: &UtilityVector, x: usize, y: usize) -> Result<UtilitySequence> {
    let order = represent(u);
    let n_alts = u.len();
    if x >= n_alts || y >= n_alts {
        return Err(Error::OutOfRange { index: x.max(y), n: n_alts });
    }
    if !order.strict(x, y) {
        return Err(Error::Precondition(format!(
            "{x} must be strictly above {y} in the represented order"
        )));
    }
    let middle: Vec<usize> = (0..n_alts)
        .filter(|&z| order.strict(x, z) && order.strict(z, y))
        .collect();
    if middle.is_empty() {
        return Err(Error::Precondition(format!(
            "no alternative strictly between {x} and {y}"
        )));
    }
    // Alternatives tied with x or y sit on the case boundary: both
    // readings of the split leave them unchanged, but the input is
    // flagged for the report.
    let boundary_sensitive = (0..n_alts)
        .any(|z| z != x && z != y && (order.indifferent(z, x) || order.indifferent(z, y)));

    let vals: Vec<Rat> = u.values().iter().map(|&v| rat_from_f64(v)).collect();
    let uy = vals[y].clone();
    let mut limit = vals.clone();
    for &z in &middle {
        limit[z] = uy.clone();
    }
    let expected_limit_order = represent_rational(&limit);
    let middle_set = middle;
    let gen_vals = vals;
    let gen_uy = uy;
    Ok(UtilitySequence {
        n_alts,
        label: "flatten_middle".into(),
        gen: Arc::new(move |n| {
            let inv = rat(1, n as i64);
            let keep = rat_int(1) - &inv;
            let mut out = gen_vals.clone();
            for &z in &middle_set {
                out[z] = &keep * &gen_uy + &inv * &gen_vals[z];
            }
            out
        }),
        declared_limit: limit,
        expected_order: order,
        expected_limit_order,
        boundary_sensitive,
    })
}

/// Breaks the tie between `x` and `y` by ±2/n shifts: the weak lower
/// contour of `x` (minus `y`) moves down by `2/n`, everything strictly
/// above plus `y` moves up by `2/n`. Every term represents the same
/// refinement placing `y` strictly above `x`; the limit is `u` itself.
pub fn tie_break_sequence(u: &UtilityVector, x: usize, y: usize) -> Result<UtilitySequence> {
    let order = represent(u);
    let n_alts = u.len();
    if x >= n_alts || y >= n_alts {
        return Err(Error::OutOfRange { index: x.max(y), n: n_alts });
    }
    if x == y || !order.indifferent(x, y) {
        return Err(Error::Precondition(format!(
            "{x} and {y} must be distinct and tied in the represented order"
        )));
    }
    let vals: Vec<Rat> = u.values().iter().map(|&v| rat_from_f64(v)).collect();
    let raised: Vec<bool> = (0..n_alts)
        .map(|z| z == y || order.strict(z, x))
        .collect();
    let expected_order = {
        // The split is scale-free; read it off the n = 1 term.
        let two = rat_int(2);
        let probe: Vec<Rat> = vals
            .iter()
            .zip(&raised)
            .map(|(v, &up)| if up { v + &two } else { v - &two })
            .collect();
        represent_rational(&probe)
    };
    let expected_limit_order = order;
    let gen_vals = vals.clone();
    Ok(UtilitySequence {
        n_alts,
        label: "tie_break".into(),
        gen: Arc::new(move |n| {
            let shift = rat(2, n as i64);
            gen_vals
                .iter()
                .zip(&raised)
                .map(|(v, &up)| if up { v + &shift } else { v - &shift })
                .collect()
        }),
        declared_limit: vals,
        expected_order,
        expected_limit_order,
        boundary_sensitive: false,
    })
}

/// The tie-breaking sequence for every tied pair of `represent(u)`.
pub fn tie_break_all(u: &UtilityVector) -> Vec<((usize, usize), UtilitySequence)> {
    represent(u)
        .tied_pairs()
        .into_iter()
        .map(|(x, y)| {
            let seq = tie_break_sequence(u, x, y).expect("pair is tied");
            ((x, y), seq)
        })
        .collect()
}

/// Which contour set of the anchor a collapse compresses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CollapseSide {
    /// Compress the weak lower contour `{z : x ≿ z}` toward `u(x)`.
    Lower,
    /// Compress the weak upper contour `{z : z ≿ x}` toward `u(x)`.
    Upper,
}

/// Compresses one weak contour set of `x` toward `u(x)`:
/// `u_n(z) = (1/n)·u(z) + (1 - 1/n)·u(x)` on the chosen side, unchanged on
/// the strict other side. Finite terms keep the order; the limit collapses
/// the side into `x`'s class. `x` must be neither maximal nor minimal.
pub fn contour_collapse_sequence(
    u: &UtilityVector,
    x: usize,
    side: CollapseSide,
) -> Result<UtilitySequence> {
    let order = represent(u);
    let n_alts = u.len();
    if x >= n_alts {
        return Err(Error::OutOfRange { index: x, n: n_alts });
    }
    let maximal = (0..n_alts).all(|z| !order.strict(z, x));
    let minimal = (0..n_alts).all(|z| !order.strict(x, z));
    if maximal || minimal {
        return Err(Error::Precondition(format!(
            "{x} must be neither maximal nor minimal"
        )));
    }
    let affected: Vec<bool> = (0..n_alts)
        .map(|z| match side {
            CollapseSide::Lower => order.weak(x, z),
            CollapseSide::Upper => order.weak(z, x),
        })
        .collect();
    let vals: Vec<Rat> = u.values().iter().map(|&v| rat_from_f64(v)).collect();
    let ux = vals[x].clone();
    let limit: Vec<Rat> = vals
        .iter()
        .zip(&affected)
        .map(|(v, &hit)| if hit { ux.clone() } else { v.clone() })
        .collect();
    let expected_limit_order = represent_rational(&limit);
    let gen_vals = vals;
    let gen_ux = ux;
    let gen_affected = affected;
    Ok(UtilitySequence {
        n_alts,
        label: match side {
            CollapseSide::Lower => "contour_collapse_lower".into(),
            CollapseSide::Upper => "contour_collapse_upper".into(),
        },
        gen: Arc::new(move |n| {
            let inv = rat(1, n as i64);
            let keep = rat_int(1) - &inv;
            gen_vals
                .iter()
                .zip(&gen_affected)
                .map(|(v, &hit)| {
                    if hit {
                        &inv * v + &keep * &gen_ux
                    } else {
                        v.clone()
                    }
                })
                .collect()
        }),
        declared_limit: limit,
        expected_order: order,
        expected_limit_order,
        boundary_sensitive: false,
    })
}

/// The three-step piecewise-affine path between nonconstant vectors.
///
/// Step 1 moves every coordinate except the anchors `x, y` from `u` to
/// `v`; step 2 moves `x` to `v(x)` and drags `y` to `v(x)` as well; step 3
/// releases `y` to `v(y)`. The anchors are the lexicographically first
/// triple with `u(x) ≠ u(y)`, `c ≠ y`, and `v(x) ≠ v(c)`, which keeps
/// every intermediate vector nonconstant.
pub struct UtilityPath {
    u: Vec<Rat>,
    v: Vec<Rat>,
    x: usize,
    y: usize,
    c: usize,
}

/// Number of affine segments a path is stitched from.
pub const PATH_SEGMENTS: usize = 3;

pub fn three_step_path(u: &UtilityVector, v: &UtilityVector) -> Result<UtilityPath> {
    let n = u.len();
    if v.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: v.len() });
    }
    if n < 3 {
        return Err(Error::Scope("paths require at least three alternatives".into()));
    }
    if u.is_constant() || v.is_constant() {
        return Err(Error::Precondition(
            "endpoints must be nonconstant utility vectors".into(),
        ));
    }
    let ur: Vec<Rat> = u.values().iter().map(|&a| rat_from_f64(a)).collect();
    let vr: Vec<Rat> = v.values().iter().map(|&a| rat_from_f64(a)).collect();
    for x in 0..n {
        for y in 0..n {
            if y == x || ur[x] == ur[y] {
                continue;
            }
            for c in 0..n {
                if c != y && vr[c] != vr[x] {
                    return Ok(UtilityPath { u: ur, v: vr, x, y, c });
                }
            }
        }
    }
    unreachable!("a valid anchor triple exists for nonconstant endpoints on n >= 3");
}

impl UtilityPath {
    pub fn anchors(&self) -> (usize, usize, usize) {
        (self.x, self.y, self.c)
    }

    pub fn n_alts(&self) -> usize {
        self.u.len()
    }

    /// Exact evaluation at `s ∈ [0, 1]`.
    pub fn eval(&self, s: &Rat) -> Vec<Rat> {
        assert!(
            !s.is_negative() && s <= &rat_int(1),
            "path parameter must lie in [0, 1]"
        );
        let third = rat(1, 3);
        let two_thirds = rat(2, 3);
        if s <= &third {
            self.step1(&(s * rat_int(3)))
        } else if s <= &two_thirds {
            self.step2(&(s * rat_int(3) - rat_int(1)))
        } else {
            self.step3(&(s * rat_int(3) - rat_int(2)))
        }
    }

    pub fn eval_f64(&self, s: f64) -> UtilityVector {
        UtilityVector::new(rats_to_f64s(&self.eval(&rat_from_f64(s))))
    }

    fn blend(a: &Rat, b: &Rat, s: &Rat) -> Rat {
        (rat_int(1) - s) * a + s * b
    }

    fn step1(&self, s: &Rat) -> Vec<Rat> {
        (0..self.u.len())
            .map(|z| {
                if z == self.x || z == self.y {
                    self.u[z].clone()
                } else {
                    Self::blend(&self.u[z], &self.v[z], s)
                }
            })
            .collect()
    }

    fn step2(&self, s: &Rat) -> Vec<Rat> {
        (0..self.u.len())
            .map(|z| {
                if z == self.x {
                    Self::blend(&self.u[self.x], &self.v[self.x], s)
                } else if z == self.y {
                    Self::blend(&self.u[self.y], &self.v[self.x], s)
                } else {
                    self.v[z].clone()
                }
            })
            .collect()
    }

    fn step3(&self, s: &Rat) -> Vec<Rat> {
        (0..self.u.len())
            .map(|z| {
                if z == self.y {
                    Self::blend(&self.v[self.x], &self.v[self.y], s)
                } else {
                    self.v[z].clone()
                }
            })
            .collect()
    }

    /// First waypoint: `u` on the anchors, `v` elsewhere.
    pub fn waypoint1(&self) -> Vec<Rat> {
        self.eval(&rat(1, 3))
    }

    /// Second waypoint: `v(x)` on both anchors, `v` elsewhere.
    pub fn waypoint2(&self) -> Vec<Rat> {
        self.eval(&rat(2, 3))
    }
}

impl std::fmt::Debug for UtilityPath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "UtilityPath(n={}, anchors=({}, {}, {}))",
            self.u.len(),
            self.x,
            self.y,
            self.c
        )
    }
}

/// Locates a sign change of `Δ(s) = path(s)(a) − path(s)(b)` on a uniform
/// grid; evidence that no path between vectors ranking `a, b` oppositely
/// can stay inside the injective family.
pub fn sign_change_on_grid(
    path: &UtilityPath,
    a: usize,
    b: usize,
    samples: usize,
) -> Option<(Rat, Rat)> {
    assert!(samples >= 2);
    let delta = |s: &Rat| {
        let p = path.eval(s);
        &p[a] - &p[b]
    };
    let mut prev_s = Rat::zero();
    let mut prev = delta(&prev_s);
    for k in 1..=samples {
        let s = rat(k as i64, samples as i64);
        let cur = delta(&s);
        if (prev.is_positive() && !cur.is_positive()) || (prev.is_negative() && !cur.is_negative())
        {
            return Some((prev_s, s));
        }
        prev = cur;
        prev_s = s;
    }
    None
}

/// Row-per-term report of a sequence verification.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SequenceReport {
    pub label: String,
    /// `(index, max deviation from the declared limit)` at 1, 2, 4, ….
    pub deviations: Vec<(u64, f64)>,
    pub deviations_nonincreasing: bool,
    pub converged: bool,
    pub order_constant: bool,
    pub first_order_break: Option<u64>,
    pub limit_order_ok: bool,
    pub boundary_sensitive: bool,
    /// `(index, represented order)` trace at powers of two.
    pub order_trace: Vec<(u64, WeakOrder)>,
    pub passed: bool,
}

/// Verifies convergence to the declared limit, order constancy along the
/// sequence, and the promised limit order. Deviations are sampled at
/// powers of two up to `2^depth`; order constancy is additionally checked
/// at every index up to 64.
pub fn verify_sequence(seq: &UtilitySequence, tolerance: f64, depth: u32) -> SequenceReport {
    assert!(tolerance > 0.0);
    let mut deviations = Vec::new();
    let mut order_trace = Vec::new();
    let mut order_constant = true;
    let mut first_order_break = None;

    let mut check_order = |n: u64, term: &[Rat]| {
        if represent_rational(term) != *seq.expected_order() {
            order_constant = false;
            if first_order_break.is_none() {
                first_order_break = Some(n);
            }
        }
    };

    for k in 0..=depth {
        let n = 1u64 << k;
        let term = seq.at(n);
        let dev = term
            .iter()
            .zip(seq.declared_limit())
            .map(|(a, b)| rat_to_f64(&(a - b).abs()))
            .fold(0.0_f64, f64::max);
        deviations.push((n, dev));
        check_order(n, &term);
        order_trace.push((n, represent_rational(&term)));
    }
    for n in 3..=64u64 {
        if !n.is_power_of_two() {
            check_order(n, &seq.at(n));
        }
    }

    let deviations_nonincreasing = deviations.windows(2).all(|w| w[1].1 <= w[0].1);
    let converged = deviations.last().map(|d| d.1 <= tolerance).unwrap_or(false);
    let limit_order_ok = represent_rational(seq.declared_limit()) == *seq.expected_limit_order();
    let passed = deviations_nonincreasing && converged && order_constant && limit_order_ok;
    SequenceReport {
        label: seq.label().to_string(),
        deviations,
        deviations_nonincreasing,
        converged,
        order_constant,
        first_order_break,
        limit_order_ok,
        boundary_sensitive: seq.boundary_sensitive(),
        order_trace,
        passed,
    }
}

use crate::report::{ClaimReport, Verdict};

fn sequence_claim_report(claim: &str, n: usize, seed: u64, sr: &SequenceReport) -> ClaimReport {
    let mut report = ClaimReport::new(
        claim,
        n,
        "U",
        if sr.passed { Verdict::Confirmed } else { Verdict::Refuted },
    );
    report.seed = seed;
    report.sub("order_constant", if sr.order_constant { "CONFIRMED" } else { "REFUTED" });
    report.sub("converged", if sr.converged { "CONFIRMED" } else { "REFUTED" });
    report.sub("limit_order", if sr.limit_order_ok { "CONFIRMED" } else { "REFUTED" });
    report.sub(
        "deviations_nonincreasing",
        if sr.deviations_nonincreasing { "CONFIRMED" } else { "REFUTED" },
    );
    report.sub("boundary_sensitive", sr.boundary_sensitive);
    report.sub(
        "final_deviation",
        sr.deviations.last().map(|d| d.1).unwrap_or(f64::NAN),
    );
    report
}

/// Claim wrapper: global flattening of the staircase vector at size `n`.
pub fn check_flatten_global(n: usize, seed: u64) -> crate::error::Result<ClaimReport> {
    let u = UtilityVector::new((1..=n).map(|i| i as f64).collect());
    let seq = flatten_global(&u);
    let sr = verify_sequence(&seq, 1e-6, 24);
    let mut report = sequence_claim_report("flatten_global", n, seed, &sr);
    report.sub("input", format!("{:?}", u.values()));
    Ok(report)
}

/// Claim wrapper: middle flattening of the descending staircase between
/// its extremes.
pub fn check_flatten_middle(n: usize, seed: u64) -> crate::error::Result<ClaimReport> {
    if n < 3 {
        return Err(Error::Scope("needs at least three alternatives".into()));
    }
    let u = UtilityVector::new((0..n).map(|i| (n - i) as f64).collect());
    let seq = flatten_middle(&u, 0, n - 1)?;
    let sr = verify_sequence(&seq, 1e-4, 20);
    let mut report = sequence_claim_report("flatten_middle", n, seed, &sr);
    report.sub("input", format!("{:?}", u.values()));
    report.sub("limit", format!("{:?}", seq.limit_f64().values()));
    Ok(report)
}

/// CSV trace of a sequence: `n,v0,..,v{k},weak_order`.
pub fn sequence_trace_csv(seq: &UtilitySequence, indices: &[u64]) -> String {
    let mut out = String::from("n");
    for i in 0..seq.n_alts() {
        out.push_str(&format!(",v{i}"));
    }
    out.push_str(",weak_order\n");
    for &n in indices {
        let term = seq.at(n);
        out.push_str(&n.to_string());
        for v in rats_to_f64s(&term) {
            out.push_str(&format!(",{v}"));
        }
        out.push_str(&format!(",{}\n", represent_rational(&term)));
    }
    out
}

/// CSV trace of a path at `samples + 1` uniform points: `s,v0,..,weak_order`.
pub fn path_trace_csv(path: &UtilityPath, samples: usize) -> String {
    let mut out = String::from("s");
    for i in 0..path.n_alts() {
        out.push_str(&format!(",v{i}"));
    }
    out.push_str(",weak_order\n");
    for k in 0..=samples {
        let s = rat(k as i64, samples as i64);
        let term = path.eval(&s);
        out.push_str(&format!("{}", rat_to_f64(&s)));
        for v in rats_to_f64s(&term) {
            out.push_str(&format!(",{v}"));
        }
        out.push_str(&format!(",{}\n", represent_rational(&term)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, classes: &[&[usize]]) -> WeakOrder {
        WeakOrder::from_classes(n, &classes.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn flatten_global_examples() {
        let u = UtilityVector::new(vec![1.0, 2.0, 3.0]);
        let seq = flatten_global(&u);
        let u2 = seq.at_f64(2);
        for (i, &v) in [1.0_f64, 2.0, 3.0].iter().enumerate() {
            assert!((u2.get(i) - v.atan() / 2.0).abs() < 1e-15);
        }
        assert_eq!(represent(&u2), represent(&u));
        assert_eq!(seq.limit_f64().values(), &[0.0, 0.0, 0.0]);
        assert!(seq.expected_limit_order().is_total_indifference());

        let report = verify_sequence(&seq, 1e-6, 24);
        assert!(report.passed, "{report:?}");
    }

    #[test]
    fn flatten_global_handles_huge_values_exactly() {
        // Far apart in magnitude, nearly identical after arctan.
        let u = UtilityVector::new(vec![1e300, 2e300, -5.0]);
        let seq = flatten_global(&u);
        let report = verify_sequence(&seq, 1e-3, 12);
        assert!(report.order_constant, "{report:?}");
    }

    #[test]
    fn flatten_middle_example() {
        let u = UtilityVector::new(vec![3.0, 2.0, 1.0]);
        let seq = flatten_middle(&u, 0, 2).unwrap();
        assert_eq!(seq.limit_f64().values(), &[3.0, 1.0, 1.0]);
        assert_eq!(*seq.expected_limit_order(), w(3, &[&[0], &[1, 2]]));
        // n = 1 is the identity on the middle.
        assert_eq!(seq.at_f64(1).values(), u.values());
        for n in [1, 2, 4, 8] {
            assert_eq!(represent(&seq.at_f64(n)), represent(&u));
        }
        assert!(verify_sequence(&seq, 1e-6, 20).passed);
    }

    #[test]
    fn flatten_middle_preconditions() {
        let u = UtilityVector::new(vec![3.0, 2.0, 1.0]);
        assert!(matches!(
            flatten_middle(&u, 0, 1),
            Err(Error::Precondition(_))
        ));
        let tied = UtilityVector::new(vec![1.0, 1.0, 0.0]);
        assert!(matches!(
            flatten_middle(&tied, 0, 1),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn flatten_middle_boundary_flag() {
        // 3 is tied with the upper anchor: both readings leave it fixed,
        // and the sequence is flagged.
        let u = UtilityVector::new(vec![3.0, 2.0, 1.0, 3.0]);
        let seq = flatten_middle(&u, 0, 2).unwrap();
        assert!(seq.boundary_sensitive());
        assert!(verify_sequence(&seq, 1e-3, 12).passed);
    }

    #[test]
    fn tie_break_example() {
        let u = UtilityVector::new(vec![1.0, 1.0]);
        let seq = tie_break_sequence(&u, 0, 1).unwrap();
        assert_eq!(seq.at_f64(2).values(), &[0.0, 2.0]);
        assert_eq!(*seq.expected_order(), w(2, &[&[1], &[0]]));
        assert_eq!(seq.limit_f64().values(), &[1.0, 1.0]);
        assert!(seq.expected_limit_order().is_total_indifference());
        let report = verify_sequence(&seq, 1e-6, 24);
        assert!(report.passed, "{report:?}");
    }

    #[test]
    fn tie_break_refines_only_the_requested_tie() {
        let u = UtilityVector::new(vec![2.0, 1.0, 1.0]);
        let seq = tie_break_sequence(&u, 1, 2).unwrap();
        assert_eq!(*seq.expected_order(), w(3, &[&[0], &[2], &[1]]));
        assert_eq!(seq.limit_f64().values(), u.values());
        assert!(verify_sequence(&seq, 1e-4, 16).passed);

        // A second tie elsewhere stays untouched.
        let u = UtilityVector::new(vec![2.0, 2.0, 1.0, 1.0]);
        let seq = tie_break_sequence(&u, 2, 3).unwrap();
        let term = seq.at(4);
        assert_eq!(term[0], term[1], "unrelated tie preserved");
        assert!(verify_sequence(&seq, 1e-4, 16).passed);
    }

    #[test]
    fn tie_break_requires_a_tie() {
        let u = UtilityVector::new(vec![2.0, 1.0]);
        assert!(matches!(
            tie_break_sequence(&u, 0, 1),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn tie_break_all_covers_every_tied_pair() {
        let u = UtilityVector::new(vec![1.0, 1.0, 1.0]);
        let seqs = tie_break_all(&u);
        assert_eq!(seqs.len(), 3);
        for ((x, y), seq) in seqs {
            assert!(seq.expected_order().strict(y, x));
            assert!(verify_sequence(&seq, 1e-2, 10).passed);
        }
    }

    #[test]
    fn contour_collapse_examples() {
        let u = UtilityVector::new(vec![3.0, 2.0, 1.0]);
        let lower = contour_collapse_sequence(&u, 1, CollapseSide::Lower).unwrap();
        assert_eq!(lower.limit_f64().values(), &[3.0, 2.0, 2.0]);
        assert_eq!(*lower.expected_limit_order(), w(3, &[&[0], &[1, 2]]));
        assert!(verify_sequence(&lower, 1e-4, 16).passed);

        let upper = contour_collapse_sequence(&u, 1, CollapseSide::Upper).unwrap();
        assert_eq!(upper.limit_f64().values(), &[2.0, 2.0, 1.0]);
        assert!(verify_sequence(&upper, 1e-4, 16).passed);

        assert!(contour_collapse_sequence(&u, 0, CollapseSide::Lower).is_err());
        assert!(contour_collapse_sequence(&u, 2, CollapseSide::Lower).is_err());
    }

    #[test]
    fn limits_coarsen_the_running_order() {
        let u = UtilityVector::new(vec![4.0, 3.0, 2.0, 1.0]);
        for seq in [
            flatten_global(&u),
            flatten_middle(&u, 0, 3).unwrap(),
            contour_collapse_sequence(&u, 1, CollapseSide::Lower).unwrap(),
        ] {
            assert!(seq
                .expected_order()
                .refines(seq.expected_limit_order())
                .unwrap());
        }
        let tied = UtilityVector::new(vec![1.0, 1.0, 0.0]);
        let seq = tie_break_sequence(&tied, 0, 1).unwrap();
        assert!(seq
            .expected_order()
            .refines(seq.expected_limit_order())
            .unwrap());
    }

    #[test]
    fn tampered_limit_fails_verification() {
        let u = UtilityVector::new(vec![1.0, 2.0, 3.0]);
        let seq = flatten_global(&u).with_declared_limit(vec![rat_int(1); 3]);
        let report = verify_sequence(&seq, 1e-6, 10);
        assert!(!report.converged && !report.passed);
        assert!(report.deviations.last().unwrap().1 > 0.9);
    }

    #[test]
    fn three_step_path_endpoints_and_waypoints() {
        let u = UtilityVector::new(vec![1.0, 2.0, 3.0]);
        let v = UtilityVector::new(vec![3.0, 1.0, 2.0]);
        let path = three_step_path(&u, &v).unwrap();
        assert_eq!(path.eval_f64(0.0).values(), u.values());
        assert_eq!(path.eval_f64(1.0).values(), v.values());

        let (x, y, _c) = path.anchors();
        let w1 = path.waypoint1();
        assert_eq!(w1[x], rat_from_f64(u.get(x)));
        assert_eq!(w1[y], rat_from_f64(u.get(y)));
        let w2 = path.waypoint2();
        assert_eq!(w2[x], rat_from_f64(v.get(x)));
        assert_eq!(w2[y], rat_from_f64(v.get(x)));

        for k in 0..=100u64 {
            let s = rat(k as i64, 100);
            let p = path.eval(&s);
            assert!(p.iter().any(|a| *a != p[0]), "constant at s={k}/100");
        }
    }

    #[test]
    fn three_step_path_same_endpoints_is_valid() {
        let u = UtilityVector::new(vec![1.0, 2.0, 3.0]);
        let path = three_step_path(&u, &u).unwrap();
        assert_eq!(path.eval_f64(0.0).values(), u.values());
        assert_eq!(path.eval_f64(1.0).values(), u.values());
        for k in 0..=50u64 {
            let p = path.eval(&rat(k as i64, 50));
            assert!(p.iter().any(|a| *a != p[0]));
        }
    }

    #[test]
    fn three_step_path_preconditions() {
        let u = UtilityVector::new(vec![1.0, 2.0]);
        assert!(matches!(
            three_step_path(&u, &u),
            Err(Error::Scope(_))
        ));
        let c = UtilityVector::new(vec![1.0, 1.0, 1.0]);
        let v = UtilityVector::new(vec![1.0, 2.0, 3.0]);
        assert!(matches!(
            three_step_path(&c, &v),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn anchor_scan_handles_adversarial_v() {
        // v differs from v(x) only at one point, forcing the scan past
        // the first (x, y) candidate.
        let u = UtilityVector::new(vec![0.0, 1.0, 2.0]);
        let v = UtilityVector::new(vec![5.0, 7.0, 5.0]);
        let path = three_step_path(&u, &v).unwrap();
        assert_eq!(path.eval_f64(0.0).values(), u.values());
        assert_eq!(path.eval_f64(1.0).values(), v.values());
        for k in 0..=100u64 {
            let p = path.eval(&rat(k as i64, 100));
            assert!(p.iter().any(|a| *a != p[0]));
        }
    }

    #[test]
    fn sign_change_blocks_strict_paths() {
        let u = UtilityVector::new(vec![2.0, 1.0, 0.0]);
        let v = UtilityVector::new(vec![1.0, 2.0, 0.0]);
        let path = three_step_path(&u, &v).unwrap();
        // u ranks 0 above 1, v ranks 1 above 0.
        let hit = sign_change_on_grid(&path, 0, 1, 100);
        assert!(hit.is_some());
    }

    #[test]
    fn csv_traces_have_expected_shape() {
        let u = UtilityVector::new(vec![1.0, 1.0]);
        let seq = tie_break_sequence(&u, 0, 1).unwrap();
        let csv = sequence_trace_csv(&seq, &[1, 2, 4]);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "n,v0,v1,weak_order");
        assert_eq!(lines.len(), 4);
        assert!(lines[1].ends_with("1>0"));

        let a = UtilityVector::new(vec![1.0, 2.0, 3.0]);
        let b = UtilityVector::new(vec![3.0, 2.0, 1.0]);
        let path = three_step_path(&a, &b).unwrap();
        let csv = path_trace_csv(&path, 10);
        assert_eq!(csv.lines().count(), 12);
        assert!(csv.starts_with("s,v0,v1,v2,weak_order"));
    }
}
