//! Alternatives, weak orders, utility vectors, and the representation map.
//!
//! A weak order is stored canonically as a dense rank vector (rank 0 =
//! best indifference class), which makes equality, hashing, and the
//! tie-breaking refinement test exact. The ordered-partition view is
//! recovered on demand and is the JSON wire form:
//! `{"n": 3, "classes": [[2], [0, 1]]}` reads "2 strictly above 0 ∼ 1".

use crate::error::{Error, Result};
use crate::rat::Rat;
use serde::{Deserialize, Serialize};

/// Index of an alternative; always dense `0..n` for a ground set of size `n`.
pub type Alternative = usize;

/// Enumeration cap: pairwise refinement scans downstream are quadratic in
/// the family size, and six alternatives already give 4,683 weak orders.
pub const DEFAULT_ENUM_CAP: usize = 6;

/// Which preference family over a ground set is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// All weak orders, total indifference included.
    P,
    /// All weak orders except total indifference.
    PStar,
    /// Strict preferences only: every indifference class a singleton.
    PStrict,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::P => "P",
            Family::PStar => "P*",
            Family::PStrict => "P^s",
        }
    }

    /// Membership of a single order in the family.
    pub fn contains(self, w: &WeakOrder) -> bool {
        match self {
            Family::P => true,
            Family::PStar => !w.is_total_indifference(),
            Family::PStrict => w.is_strict(),
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A complete transitive preference over `n` alternatives, canonically an
/// ordered partition into indifference classes, best class first.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "WireWeakOrder", into = "WireWeakOrder")]
pub struct WeakOrder {
    /// `ranks[x]` is the class index of `x`; 0 is the best class and the
    /// used ranks are dense `0..num_classes`.
    ranks: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct WireWeakOrder {
    n: usize,
    classes: Vec<Vec<usize>>,
}

impl From<WeakOrder> for WireWeakOrder {
    fn from(w: WeakOrder) -> Self {
        WireWeakOrder {
            n: w.n(),
            classes: w.classes(),
        }
    }
}

impl TryFrom<WireWeakOrder> for WeakOrder {
    type Error = Error;

    fn try_from(w: WireWeakOrder) -> Result<Self> {
        WeakOrder::from_classes(w.n, &w.classes)
    }
}

impl WeakOrder {
    /// Builds an order from best-first indifference classes, validating
    /// that they partition `{0, .., n-1}`.
    pub fn from_classes(n: usize, classes: &[Vec<usize>]) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("ground set must be nonempty".into()));
        }
        let mut ranks = vec![usize::MAX; n];
        let mut seen = 0usize;
        for (r, class) in classes.iter().enumerate() {
            if class.is_empty() {
                return Err(Error::Precondition(format!("class {r} is empty")));
            }
            for &x in class {
                if x >= n {
                    return Err(Error::OutOfRange { index: x, n });
                }
                if ranks[x] != usize::MAX {
                    return Err(Error::Precondition(format!(
                        "alternative {x} appears in more than one class"
                    )));
                }
                ranks[x] = r;
                seen += 1;
            }
        }
        if seen != n {
            return Err(Error::Precondition(format!(
                "classes cover {seen} of {n} alternatives"
            )));
        }
        Ok(WeakOrder { ranks })
    }

    /// Builds an order from per-alternative keys: higher key means
    /// strictly better, equal keys mean indifferent.
    pub fn from_keys<K: Ord>(keys: &[K]) -> Self {
        assert!(!keys.is_empty(), "ground set must be nonempty");
        let mut idx: Vec<usize> = (0..keys.len()).collect();
        idx.sort_by(|&a, &b| keys[b].cmp(&keys[a]));
        let mut ranks = vec![0usize; keys.len()];
        let mut rank = 0usize;
        for pair in idx.windows(2) {
            if keys[pair[0]] != keys[pair[1]] {
                rank += 1;
            }
            ranks[pair[1]] = rank;
        }
        WeakOrder { ranks }
    }

    pub fn n(&self) -> usize {
        self.ranks.len()
    }

    /// Class index of `x`: 0 is the best class.
    pub fn rank(&self, x: Alternative) -> usize {
        self.ranks[x]
    }

    pub fn num_classes(&self) -> usize {
        self.ranks.iter().max().map_or(0, |m| m + 1)
    }

    /// Best-first indifference classes, members ascending.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_classes()];
        for (x, &r) in self.ranks.iter().enumerate() {
            out[r].push(x);
        }
        out
    }

    /// `x` strictly preferred to `y`.
    pub fn strict(&self, x: Alternative, y: Alternative) -> bool {
        self.ranks[x] < self.ranks[y]
    }

    /// `x` weakly preferred to `y` (not `y` strictly over `x`).
    pub fn weak(&self, x: Alternative, y: Alternative) -> bool {
        self.ranks[x] <= self.ranks[y]
    }

    pub fn indifferent(&self, x: Alternative, y: Alternative) -> bool {
        self.ranks[x] == self.ranks[y]
    }

    /// The order `≃` with a single indifference class.
    pub fn total_indifference(n: usize) -> Self {
        assert!(n >= 1);
        WeakOrder { ranks: vec![0; n] }
    }

    pub fn is_total_indifference(&self) -> bool {
        self.num_classes() == 1
    }

    /// Strict preference: every indifference class is a singleton.
    pub fn is_strict(&self) -> bool {
        self.num_classes() == self.n()
    }

    /// All unordered pairs `{x, y}` with `x ∼ y` and `x ≠ y`.
    pub fn tied_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.n() {
            for y in x + 1..self.n() {
                if self.indifferent(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Tie-breaking refinement: `self` refines `coarse` iff every strict
    /// comparison of `coarse` is a strict comparison of `self`.
    pub fn refines(&self, coarse: &WeakOrder) -> Result<bool> {
        if self.n() != coarse.n() {
            return Err(Error::DimensionMismatch {
                expected: coarse.n(),
                got: self.n(),
            });
        }
        for x in 0..self.n() {
            for y in 0..self.n() {
                if coarse.strict(x, y) && !self.strict(x, y) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Packed strict-pair relation: bit `x*n + y` set iff `x` strictly
    /// above `y`. Refinement of `coarse` by `fine` is then the word test
    /// `coarse_mask & !fine_mask == 0`. Supports `n ≤ 8`.
    pub fn strict_mask(&self) -> u64 {
        let n = self.n();
        assert!(n <= 8, "strict_mask supports up to 8 alternatives");
        let mut m = 0u64;
        for x in 0..n {
            for y in 0..n {
                if self.strict(x, y) {
                    m |= 1 << (x * n + y);
                }
            }
        }
        m
    }

    /// The reversed preference: classes in the opposite order. An involution.
    pub fn opposite(&self) -> WeakOrder {
        let k = self.num_classes();
        WeakOrder {
            ranks: self.ranks.iter().map(|&r| k - 1 - r).collect(),
        }
    }

    /// A utility vector representing this order, with consecutive classes
    /// separated by `gap` (best class highest, worst at 0).
    pub fn utility_with_gap(&self, gap: f64) -> UtilityVector {
        let k = self.num_classes();
        UtilityVector::new(
            self.ranks
                .iter()
                .map(|&r| (k - 1 - r) as f64 * gap)
                .collect::<Vec<_>>(),
        )
    }

    /// Exact-rational realizer with the given class gap.
    pub fn rational_realizer(&self, gap: &Rat) -> Vec<Rat> {
        let k = self.num_classes();
        self.ranks
            .iter()
            .map(|&r| Rat::from_integer(((k - 1 - r) as i64).into()) * gap)
            .collect()
    }

    /// Every weak order on `n` alternatives in the requested family, under
    /// the default size cap.
    pub fn enumerate(n: usize, family: Family) -> Result<Vec<WeakOrder>> {
        Self::enumerate_with_cap(n, family, DEFAULT_ENUM_CAP)
    }

    /// Exhaustive, duplicate-free enumeration, ordered by rank vector.
    pub fn enumerate_with_cap(n: usize, family: Family, cap: usize) -> Result<Vec<WeakOrder>> {
        if n == 0 {
            return Err(Error::Precondition("ground set must be nonempty".into()));
        }
        if n > cap {
            return Err(Error::SizeCap { requested: n, cap });
        }
        // Build ordered partitions by inserting alternative i into an
        // existing class or as a new class at any gap; each ordered
        // partition arises exactly once.
        let mut partial: Vec<Vec<Vec<usize>>> = vec![vec![vec![0]]];
        for i in 1..n {
            let mut next = Vec::new();
            for p in &partial {
                for c in 0..p.len() {
                    let mut q = p.clone();
                    q[c].push(i);
                    next.push(q);
                }
                for g in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(g, vec![i]);
                    next.push(q);
                }
            }
            partial = next;
        }
        let mut out: Vec<WeakOrder> = partial
            .iter()
            .map(|classes| WeakOrder::from_classes(n, classes).expect("construction is valid"))
            .filter(|w| family.contains(w))
            .collect();
        out.sort_by(|a, b| a.ranks.cmp(&b.ranks));
        Ok(out)
    }
}

impl std::fmt::Display for WeakOrder {
    /// Canonical string: classes joined by `>`, tied members by `~`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let classes = self.classes();
        let rendered: Vec<String> = classes
            .iter()
            .map(|c| {
                c.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join("~")
            })
            .collect();
        f.write_str(&rendered.join(">"))
    }
}

impl std::fmt::Debug for WeakOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "WeakOrder({})", self)
    }
}

/// A point of the utility space: one finite real per alternative.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "WireUtility", into = "WireUtility")]
pub struct UtilityVector {
    values: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct WireUtility {
    values: Vec<f64>,
}

impl From<UtilityVector> for WireUtility {
    fn from(u: UtilityVector) -> Self {
        WireUtility { values: u.values }
    }
}

impl TryFrom<WireUtility> for UtilityVector {
    type Error = Error;

    fn try_from(w: WireUtility) -> Result<Self> {
        if w.values.is_empty() {
            return Err(Error::Precondition("utility vector must be nonempty".into()));
        }
        if let Some(bad) = w.values.iter().find(|v| !v.is_finite()) {
            return Err(Error::Domain(format!("non-finite utility value {bad}")));
        }
        Ok(UtilityVector { values: w.values })
    }
}

impl UtilityVector {
    /// Panics on non-finite entries; utility vectors are finite by contract.
    pub fn new(values: Vec<f64>) -> Self {
        assert!(!values.is_empty(), "utility vector must be nonempty");
        assert!(
            values.iter().all(|v| v.is_finite()),
            "utility values must be finite"
        );
        UtilityVector { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, x: Alternative) -> f64 {
        self.values[x]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn is_constant(&self) -> bool {
        self.values.iter().all(|v| *v == self.values[0])
    }

    pub fn is_injective(&self) -> bool {
        let mut sorted = self.values.clone();
        sorted.sort_by(f64::total_cmp);
        sorted.windows(2).all(|w| w[0] != w[1])
    }
}

impl std::fmt::Debug for UtilityVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "u{:?}", self.values)
    }
}

/// The representation map: the weak order a utility vector induces by
/// value comparison (`x` strictly above `y` iff `u(x) > u(y)`).
pub fn represent(u: &UtilityVector) -> WeakOrder {
    let keys: Vec<OrdF64> = u.values().iter().map(|&v| OrdF64(v)).collect();
    WeakOrder::from_keys(&keys)
}

/// Representation map over exact rationals.
pub fn represent_rational(u: &[Rat]) -> WeakOrder {
    WeakOrder::from_keys(u)
}

/// Total order wrapper for finite doubles.
#[derive(PartialEq)]
struct OrdF64(f64);

impl Eq for OrdF64 {}

impl PartialOrd for OrdF64 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrdF64 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Bounds every entry into `(−π/2, π/2)` by `arctan`, preserving the
/// represented order.
pub fn normalize_bounded(u: &UtilityVector) -> UtilityVector {
    UtilityVector::new(u.values().iter().map(|v| v.atan()).collect())
}

/// A strictly increasing map given as a finite table over the values it
/// will be applied to; the group element of the monotone-transformation
/// action on utility space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotoneMap {
    /// `(key, value)` pairs, strictly increasing in both coordinates.
    table: Vec<(f64, f64)>,
}

impl MonotoneMap {
    pub fn new(mut table: Vec<(f64, f64)>) -> Result<Self> {
        if table.iter().any(|(k, v)| !k.is_finite() || !v.is_finite()) {
            return Err(Error::Domain("table entries must be finite".into()));
        }
        table.sort_by(|a, b| a.0.total_cmp(&b.0));
        for w in table.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::Precondition(format!(
                    "duplicate table key {}",
                    w[1].0
                )));
            }
            if w[0].1 >= w[1].1 {
                return Err(Error::Precondition(format!(
                    "table values not strictly increasing at key {}",
                    w[1].0
                )));
            }
        }
        Ok(MonotoneMap { table })
    }

    /// Identity table over the distinct values of `u`.
    pub fn identity_over(u: &UtilityVector) -> Self {
        let mut keys: Vec<f64> = u.values().to_vec();
        keys.sort_by(f64::total_cmp);
        keys.dedup();
        MonotoneMap {
            table: keys.into_iter().map(|k| (k, k)).collect(),
        }
    }

    pub fn lookup(&self, key: f64) -> Result<f64> {
        self.table
            .binary_search_by(|probe| probe.0.total_cmp(&key))
            .map(|i| self.table[i].1)
            .map_err(|_| Error::UncoveredValue(key))
    }
}

/// Applies the monotone transformation coordinatewise: the represented
/// order is unchanged.
pub fn apply_monotone(f: &MonotoneMap, u: &UtilityVector) -> Result<UtilityVector> {
    let values = u
        .values()
        .iter()
        .map(|&v| f.lookup(v))
        .collect::<Result<Vec<_>>>()?;
    Ok(UtilityVector::new(values))
}
