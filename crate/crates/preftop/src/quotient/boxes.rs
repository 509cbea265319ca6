//! Images of open interval boxes under the representation map.
//!
//! A box constrains each coordinate to an open interval (or leaves it
//! free). Its image is the set of ranking patterns realizable inside the
//! box, computed exactly: a pattern is feasible iff strictly decreasing
//! class values can be threaded through the per-class interval
//! intersections, which a single sweep over rational endpoints decides.

use crate::error::{Error, Result};
use crate::order::{Family, WeakOrder};
use crate::rat::{rat_from_f64, Rat};
use serde::{Deserialize, Serialize};

/// One coordinate's constraint.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Interval {
    /// The whole real line.
    Unconstrained,
    /// The open interval `(lo, hi)`; closed or half-open intervals are
    /// not representable by design.
    Open(f64, f64),
}

/// A per-alternative box of open intervals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalBox {
    intervals: Vec<Interval>,
}

impl IntervalBox {
    pub fn new(intervals: Vec<Interval>) -> Result<Self> {
        if intervals.is_empty() {
            return Err(Error::Precondition("box must have a coordinate".into()));
        }
        for (i, iv) in intervals.iter().enumerate() {
            if let Interval::Open(a, b) = iv {
                if !a.is_finite() || !b.is_finite() || a >= b {
                    return Err(Error::EmptyInterval(i));
                }
            }
        }
        Ok(IntervalBox { intervals })
    }

    /// Box with every coordinate unconstrained.
    pub fn unconstrained(n: usize) -> Self {
        IntervalBox {
            intervals: vec![Interval::Unconstrained; n],
        }
    }

    pub fn n(&self) -> usize {
        self.intervals.len()
    }

    pub fn interval(&self, x: usize) -> Interval {
        self.intervals[x]
    }

    /// `(lower, upper)` bounds as rationals, `None` for ±∞.
    fn bounds(&self, x: usize) -> (Option<Rat>, Option<Rat>) {
        match self.intervals[x] {
            Interval::Unconstrained => (None, None),
            Interval::Open(a, b) => (Some(rat_from_f64(a)), Some(rat_from_f64(b))),
        }
    }

    /// Can some vector in the box represent `w`? Exact endpoint sweep:
    /// classes are visited best first; each must admit a value strictly
    /// below the running supremum and strictly above its own lower bound.
    pub fn realizes(&self, w: &WeakOrder) -> bool {
        assert_eq!(w.n(), self.n());
        let mut sup: Option<Rat> = None; // running strict upper bound; None = +∞
        for class in w.classes() {
            let mut lo: Option<Rat> = None;
            let mut hi: Option<Rat> = None;
            for &x in &class {
                let (a, b) = self.bounds(x);
                lo = match (lo, a) {
                    (None, a) => a,
                    (l, None) => l,
                    (Some(l), Some(a)) => Some(l.max(a)),
                };
                hi = match (hi, b) {
                    (None, b) => b,
                    (h, None) => h,
                    (Some(h), Some(b)) => Some(h.min(b)),
                };
            }
            sup = match (sup, hi) {
                (None, h) => h,
                (s, None) => s,
                (Some(s), Some(h)) => Some(s.min(h)),
            };
            // Feasible iff the open interval (lo, sup) is nonempty.
            if let (Some(l), Some(s)) = (&lo, &sup) {
                if l >= s {
                    return false;
                }
            }
        }
        true
    }
}

/// The exact image of the box within an ambient family: every member the
/// box can realize.
pub fn image_of_box(bx: &IntervalBox, ambient: Family) -> Result<Vec<WeakOrder>> {
    let family = WeakOrder::enumerate(bx.n(), ambient)?;
    Ok(family.into_iter().filter(|w| bx.realizes(w)).collect())
}

/// Which structural case a box falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoxCase {
    /// The constrained intervals share a common point (or none exist):
    /// the image is claimed to be the entire ambient family.
    CommonPoint,
    /// The constrained intervals have empty common intersection: the
    /// image is claimed to be the agreement set of a disjoint chain.
    DisjointChain,
}

/// Extensional comparison of the box image with its claimed closed form.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoxImageComparison {
    pub case: BoxCase,
    /// Alternatives forming the disjoint chain, worst first (empty in the
    /// common-point case).
    pub chain: Vec<usize>,
    pub image: Vec<WeakOrder>,
    pub claimed: Vec<WeakOrder>,
    pub agrees: bool,
}

/// Compares the exact image with the claimed form: the full family when
/// the constrained intervals share a point, otherwise the set of members
/// ranking a maximal chain of pairwise disjoint intervals in interval
/// order.
pub fn box_image_comparison(bx: &IntervalBox, ambient: Family) -> Result<BoxImageComparison> {
    let image = image_of_box(bx, ambient)?;
    let family = WeakOrder::enumerate(bx.n(), ambient)?;

    let constrained: Vec<(usize, Rat, Rat)> = (0..bx.n())
        .filter_map(|x| match bx.interval(x) {
            Interval::Unconstrained => None,
            Interval::Open(a, b) => Some((x, rat_from_f64(a), rat_from_f64(b))),
        })
        .collect();

    let common_point = !constrained.is_empty() && {
        let lo = constrained.iter().map(|(_, a, _)| a.clone()).max().unwrap();
        let hi = constrained.iter().map(|(_, _, b)| b.clone()).min().unwrap();
        lo < hi
    };

    if constrained.is_empty() || common_point {
        return Ok(BoxImageComparison {
            case: BoxCase::CommonPoint,
            chain: Vec::new(),
            claimed: family.clone(),
            agrees: image == family,
            image,
        });
    }

    // Greedy maximal chain of pairwise disjoint intervals, by right
    // endpoint; at least two exist when the common intersection is empty.
    let mut sorted = constrained.clone();
    sorted.sort_by(|x, y| x.2.cmp(&y.2));
    let mut chain: Vec<(usize, Rat, Rat)> = Vec::new();
    for c in sorted {
        if chain.last().map_or(true, |last| last.2 <= c.1) {
            chain.push(c);
        }
    }
    let chain_alts: Vec<usize> = chain.iter().map(|c| c.0).collect();

    let claimed: Vec<WeakOrder> = family
        .into_iter()
        .filter(|w| {
            chain_alts
                .windows(2)
                .all(|pair| w.strict(pair[1], pair[0]))
        })
        .collect();

    Ok(BoxImageComparison {
        case: BoxCase::DisjointChain,
        chain: chain_alts,
        agrees: image == claimed,
        image,
        claimed,
    })
}
