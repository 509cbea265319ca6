//! General finite-topology machinery.
//!
//! Two representations are used side by side. [`FiniteTopology`] stores an
//! explicit family of open sets over a small ground set (bitmask subsets,
//! at most [`MAX_GROUND`] points) — the right shape for topologies on the
//! alternative set itself. [`SpecPreorder`] is the implicit Alexandrov
//! form: a reflexive–transitive `leq` where `leq(i, j)` reads "`i` lies in
//! the closure of `{j}`". Preference families live in the implicit form
//! because their Alexandrov topologies have astronomically many opens.

use crate::bits::{BitMatrix, BitSet};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Explicit open-set families are limited to this many ground points.
pub const MAX_GROUND: usize = 12;

fn mask_from_indices(n: usize, subset: &[usize]) -> Result<u32> {
    let mut m = 0u32;
    for &x in subset {
        if x >= n {
            return Err(Error::OutOfRange { index: x, n });
        }
        m |= 1 << x;
    }
    Ok(m)
}

fn indices_from_mask(mut m: u32) -> Vec<usize> {
    let mut out = Vec::new();
    while m != 0 {
        let x = m.trailing_zeros() as usize;
        out.push(x);
        m &= m - 1;
    }
    out
}

/// T0/T1/T2 flags; on finite spaces T1 and T2 coincide with discreteness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationAxioms {
    pub t0: bool,
    pub t1: bool,
    pub t2: bool,
}

/// Connectivity report: components of the specialization comparability
/// graph. Finite spaces are path-connected exactly when connected, so the
/// two flags agree by construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Connectivity {
    pub connected: bool,
    pub components: Vec<Vec<usize>>,
    pub path_connected: bool,
}

impl Connectivity {
    pub fn totally_path_disconnected(&self) -> bool {
        self.components.iter().all(|c| c.len() == 1)
    }
}

/// Outcome of a basis check, with a concrete witness on failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisCheck {
    pub ok: bool,
    pub witness: Option<BasisWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum BasisWitness {
    /// A family member that is not even open in the space.
    NotOpen { member: usize },
    /// An open set and a point in it that no family member fits between.
    NotCovered { open_set: Vec<usize>, point: usize },
}

/// An explicit topology on `{0, .., n-1}`: a family of subsets containing
/// `∅` and the full set and closed under pairwise unions and intersections.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "WireTopology", into = "WireTopology")]
pub struct FiniteTopology {
    n: usize,
    /// Open sets as bitmasks, sorted numerically.
    opens: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct WireTopology {
    n: usize,
    opens: Vec<Vec<usize>>,
}

impl From<FiniteTopology> for WireTopology {
    fn from(t: FiniteTopology) -> Self {
        let mut opens: Vec<Vec<usize>> = t.opens.iter().map(|&m| indices_from_mask(m)).collect();
        opens.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        WireTopology { n: t.n, opens }
    }
}

impl TryFrom<WireTopology> for FiniteTopology {
    type Error = Error;

    fn try_from(w: WireTopology) -> Result<Self> {
        let masks = w
            .opens
            .iter()
            .map(|s| mask_from_indices(w.n, s))
            .collect::<Result<Vec<_>>>()?;
        FiniteTopology::from_masks(w.n, masks)
    }
}

impl FiniteTopology {
    /// Validates the open-set axioms.
    pub fn from_masks(n: usize, masks: impl IntoIterator<Item = u32>) -> Result<Self> {
        if n == 0 || n > MAX_GROUND {
            return Err(Error::SizeCap {
                requested: n,
                cap: MAX_GROUND,
            });
        }
        let full: u32 = (1 << n) - 1;
        let mut opens: Vec<u32> = masks.into_iter().collect();
        opens.sort_unstable();
        opens.dedup();
        if let Some(&bad) = opens.iter().find(|&&m| m & !full != 0) {
            return Err(Error::OutOfRange {
                index: (bad & !full).trailing_zeros() as usize,
                n,
            });
        }
        let t = FiniteTopology { n, opens };
        if !t.is_open_mask(0) || !t.is_open_mask(full) {
            return Err(Error::Precondition(
                "opens must contain the empty and full sets".into(),
            ));
        }
        for (i, &a) in t.opens.iter().enumerate() {
            for &b in &t.opens[i + 1..] {
                if !t.is_open_mask(a | b) || !t.is_open_mask(a & b) {
                    return Err(Error::Precondition(format!(
                        "opens not closed under union/intersection at {:?}, {:?}",
                        indices_from_mask(a),
                        indices_from_mask(b)
                    )));
                }
            }
        }
        Ok(t)
    }

    pub fn from_subsets(n: usize, subsets: &[Vec<usize>]) -> Result<Self> {
        let masks = subsets
            .iter()
            .map(|s| mask_from_indices(n, s))
            .collect::<Result<Vec<_>>>()?;
        Self::from_masks(n, masks)
    }

    /// The smallest topology containing the given subbasis: close under
    /// finite intersections, then arbitrary unions.
    ///
    /// On a finite ground set the generated topology is Alexandrov, so it
    /// is exactly the family of unions of minimal point neighborhoods,
    /// where the minimal neighborhood of `p` is the intersection of every
    /// subbasis set containing `p`.
    pub fn from_subbasis(n: usize, subbasis: &[Vec<usize>]) -> Result<Self> {
        let masks = subbasis
            .iter()
            .map(|s| mask_from_indices(n, s))
            .collect::<Result<Vec<_>>>()?;
        Self::from_subbasis_masks(n, &masks)
    }

    pub fn from_subbasis_masks(n: usize, subbasis: &[u32]) -> Result<Self> {
        if n == 0 || n > MAX_GROUND {
            return Err(Error::SizeCap {
                requested: n,
                cap: MAX_GROUND,
            });
        }
        let full: u32 = (1 << n) - 1;
        if let Some(&bad) = subbasis.iter().find(|&&m| m & !full != 0) {
            return Err(Error::OutOfRange {
                index: (bad & !full).trailing_zeros() as usize,
                n,
            });
        }
        let minimal: Vec<u32> = (0..n)
            .map(|p| {
                subbasis
                    .iter()
                    .filter(|&&s| s >> p & 1 == 1)
                    .fold(full, |acc, &s| acc & s)
            })
            .collect();
        let mut opens = Vec::with_capacity(1 << n);
        for pick in 0u32..(1 << n) {
            let mut union = 0u32;
            for p in 0..n {
                if pick >> p & 1 == 1 {
                    union |= minimal[p];
                }
            }
            opens.push(union);
        }
        opens.sort_unstable();
        opens.dedup();
        Ok(FiniteTopology { n, opens })
    }

    pub fn trivial(n: usize) -> Self {
        Self::from_subbasis(n, &[]).expect("trivial topology within cap")
    }

    pub fn discrete(n: usize) -> Self {
        let singletons: Vec<Vec<usize>> = (0..n).map(|x| vec![x]).collect();
        Self::from_subbasis(n, &singletons).expect("discrete topology within cap")
    }

    /// The two-point space with exactly one nontrivial open set, `{1}`.
    pub fn sierpinski() -> Self {
        Self::from_masks(2, [0b00, 0b10, 0b11]).expect("three fixed opens")
    }

    /// All distinct topologies on `n` labeled points, by brute force over
    /// candidate open-set families. Limited to `n ≤ 4`.
    pub fn enumerate_all(n: usize) -> Result<Vec<FiniteTopology>> {
        if n == 0 || n > 4 {
            return Err(Error::SizeCap { requested: n, cap: 4 });
        }
        let subsets = 1usize << n; // 2^n candidate opens
        let mut out = Vec::new();
        // Every family must contain ∅ (bit 0) and X (bit subsets-1).
        for fam in 0u32..(1 << subsets) {
            if fam & 1 == 0 || fam >> (subsets - 1) & 1 == 0 {
                continue;
            }
            let opens: Vec<u32> = (0..subsets as u32).filter(|&s| fam >> s & 1 == 1).collect();
            let ok = opens.iter().enumerate().all(|(i, &a)| {
                opens[i + 1..]
                    .iter()
                    .all(|&b| fam >> (a | b) & 1 == 1 && fam >> (a & b) & 1 == 1)
            });
            if ok {
                out.push(FiniteTopology { n, opens });
            }
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn open_count(&self) -> usize {
        self.opens.len()
    }

    pub fn opens_masks(&self) -> &[u32] {
        &self.opens
    }

    pub fn opens(&self) -> Vec<Vec<usize>> {
        let mut opens: Vec<Vec<usize>> = self.opens.iter().map(|&m| indices_from_mask(m)).collect();
        opens.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        opens
    }

    pub fn full_mask(&self) -> u32 {
        (1u32 << self.n) - 1
    }

    pub fn is_open_mask(&self, m: u32) -> bool {
        self.opens.binary_search(&m).is_ok()
    }

    pub fn is_open(&self, subset: &[usize]) -> Result<bool> {
        Ok(self.is_open_mask(mask_from_indices(self.n, subset)?))
    }

    /// Smallest open set containing `x`: the intersection of every open
    /// set containing it (open because finite topologies are Alexandrov).
    pub fn minimal_open(&self, x: usize) -> u32 {
        self.opens
            .iter()
            .filter(|&&m| m >> x & 1 == 1)
            .fold(self.full_mask(), |acc, &m| acc & m)
    }

    pub fn closure_mask(&self, s: u32) -> u32 {
        let mut out = 0u32;
        for x in 0..self.n {
            if self.minimal_open(x) & s != 0 {
                out |= 1 << x;
            }
        }
        out
    }

    pub fn closure(&self, subset: &[usize]) -> Result<Vec<usize>> {
        let m = mask_from_indices(self.n, subset)?;
        Ok(indices_from_mask(self.closure_mask(m)))
    }

    /// Specialization preorder: `leq(i, j)` iff every open set containing
    /// `i` contains `j`, i.e. `i` lies in the closure of `{j}`.
    pub fn specialization(&self) -> SpecPreorder {
        let mut m = BitMatrix::new(self.n);
        for i in 0..self.n {
            let ui = self.minimal_open(i);
            for j in 0..self.n {
                if ui >> j & 1 == 1 {
                    m.set(i, j);
                }
            }
        }
        SpecPreorder { matrix: m }
    }

    pub fn separation_axioms(&self) -> SeparationAxioms {
        self.specialization().separation_axioms()
    }

    pub fn connectivity(&self) -> Connectivity {
        self.specialization().connectivity()
    }

    /// Is the family a basis: every open set a union of family members?
    /// Family members must themselves be open.
    pub fn is_basis(&self, family: &[Vec<usize>]) -> Result<BasisCheck> {
        let masks = family
            .iter()
            .map(|s| mask_from_indices(self.n, s))
            .collect::<Result<Vec<_>>>()?;
        for (k, &m) in masks.iter().enumerate() {
            if !self.is_open_mask(m) {
                return Ok(BasisCheck {
                    ok: false,
                    witness: Some(BasisWitness::NotOpen { member: k }),
                });
            }
        }
        // It suffices to cover each point inside its minimal open set.
        for p in 0..self.n {
            let up = self.minimal_open(p);
            let covered = masks.iter().any(|&b| b >> p & 1 == 1 && b & !up == 0);
            if !covered {
                return Ok(BasisCheck {
                    ok: false,
                    witness: Some(BasisWitness::NotCovered {
                        open_set: indices_from_mask(up),
                        point: p,
                    }),
                });
            }
        }
        Ok(BasisCheck { ok: true, witness: None })
    }
}

impl std::fmt::Debug for FiniteTopology {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteTopology(n={}, opens={:?})", self.n, self.opens())
    }
}

/// A reflexive–transitive relation presenting a finite Alexandrov
/// topology implicitly: `leq(i, j)` iff `i` is in the closure of `{j}`.
/// A set is open iff it is closed upward under `leq`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "WirePreorder", into = "WirePreorder")]
pub struct SpecPreorder {
    matrix: BitMatrix,
}

#[derive(Serialize, Deserialize)]
struct WirePreorder {
    n: usize,
    leq: Vec<(usize, usize)>,
}

impl From<SpecPreorder> for WirePreorder {
    fn from(p: SpecPreorder) -> Self {
        let n = p.size();
        let mut leq = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if p.leq(i, j) {
                    leq.push((i, j));
                }
            }
        }
        WirePreorder { n, leq }
    }
}

impl TryFrom<WirePreorder> for SpecPreorder {
    type Error = Error;

    fn try_from(w: WirePreorder) -> Result<Self> {
        let mut m = BitMatrix::new(w.n);
        for (i, j) in w.leq {
            if i >= w.n || j >= w.n {
                return Err(Error::OutOfRange { index: i.max(j), n: w.n });
            }
            m.set(i, j);
        }
        SpecPreorder::from_matrix(m)
    }
}

impl SpecPreorder {
    /// Validates reflexivity and transitivity.
    pub fn from_matrix(matrix: BitMatrix) -> Result<Self> {
        if !matrix.is_reflexive() {
            return Err(Error::Precondition("preorder must be reflexive".into()));
        }
        if !matrix.is_transitive() {
            return Err(Error::Precondition("preorder must be transitive".into()));
        }
        Ok(SpecPreorder { matrix })
    }

    /// Builds from a pointwise predicate, validating the preorder axioms.
    pub fn from_leq(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let mut m = BitMatrix::new(n);
        for i in 0..n {
            for j in 0..n {
                if leq(i, j) {
                    m.set(i, j);
                }
            }
        }
        Self::from_matrix(m)
    }

    pub fn size(&self) -> usize {
        self.matrix.size()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.matrix.get(i, j)
    }

    /// The up-set of `i`: every `j` with `leq(i, j)`. This is also the
    /// minimal open set containing `i`.
    pub fn up_set(&self, i: usize) -> &BitSet {
        self.matrix.row(i)
    }

    /// Open iff upward closed: with every member, all points above it.
    pub fn is_open(&self, s: &BitSet) -> bool {
        s.iter().all(|y| self.up_set(y).is_subset_of(s))
    }

    /// `closure(s) = {i : leq(i, j) for some j in s}`.
    pub fn closure(&self, s: &BitSet) -> BitSet {
        let mut out = BitSet::new(self.size());
        for i in 0..self.size() {
            let mut probe = self.up_set(i).clone();
            probe.intersect_with(s);
            if !probe.is_empty() {
                out.insert(i);
            }
        }
        out
    }

    /// Smallest open superset: the union of members' up-sets.
    pub fn up_closure(&self, s: &BitSet) -> BitSet {
        let mut out = BitSet::new(self.size());
        for i in s.iter() {
            out.union_with(self.up_set(i));
        }
        out
    }

    pub fn is_discrete(&self) -> bool {
        (0..self.size()).all(|i| self.up_set(i).count() == 1)
    }

    pub fn separation_axioms(&self) -> SeparationAxioms {
        let n = self.size();
        let mut antisymmetric = true;
        for i in 0..n {
            for j in 0..n {
                if i != j && self.leq(i, j) && self.leq(j, i) {
                    antisymmetric = false;
                }
            }
        }
        let discrete = self.is_discrete();
        SeparationAxioms {
            t0: antisymmetric,
            t1: discrete,
            t2: discrete,
        }
    }

    pub fn connectivity(&self) -> Connectivity {
        let n = self.size();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = count;
            while let Some(i) = stack.pop() {
                for j in 0..n {
                    if comp[j] == usize::MAX && (self.leq(i, j) || self.leq(j, i)) {
                        comp[j] = count;
                        stack.push(j);
                    }
                }
            }
            count += 1;
        }
        let mut components = vec![Vec::new(); count];
        for (i, &c) in comp.iter().enumerate() {
            components[c].push(i);
        }
        components.sort_by_key(|c| c[0]);
        let connected = count <= 1;
        Connectivity {
            connected,
            components,
            path_connected: connected,
        }
    }

    /// Basis criterion for Alexandrov spaces: for each point `p`, some
    /// family member must fit between `p` and its minimal open set.
    pub fn is_basis(&self, family: &[BitSet]) -> BasisCheck {
        for (k, b) in family.iter().enumerate() {
            if !self.is_open(b) {
                return BasisCheck {
                    ok: false,
                    witness: Some(BasisWitness::NotOpen { member: k }),
                };
            }
        }
        for p in 0..self.size() {
            let up = self.up_set(p);
            let covered = family.iter().any(|b| b.contains(p) && b.is_subset_of(up));
            if !covered {
                return BasisCheck {
                    ok: false,
                    witness: Some(BasisWitness::NotCovered {
                        open_set: up.to_vec(),
                        point: p,
                    }),
                };
            }
        }
        BasisCheck { ok: true, witness: None }
    }

    /// The explicit Alexandrov topology (all upward-closed sets); only for
    /// small ground sets.
    pub fn alexandrov_topology(&self) -> Result<FiniteTopology> {
        let n = self.size();
        if n > MAX_GROUND {
            return Err(Error::SizeCap { requested: n, cap: MAX_GROUND });
        }
        let mut opens = Vec::new();
        for m in 0u32..(1 << n) {
            let s = BitSet::from_indices(n, indices_from_mask(m));
            if self.is_open(&s) {
                opens.push(m);
            }
        }
        FiniteTopology::from_masks(n, opens)
    }

    /// Demonstration path between comparable points: a continuous map from
    /// `[0, 1]`, constant at the generic (more refined) point on the
    /// interior. `None` when the points are incomparable.
    pub fn two_point_path(&self, from: usize, to: usize) -> Option<TwoPointPath> {
        let interior = if self.leq(to, from) {
            from
        } else if self.leq(from, to) {
            to
        } else {
            return None;
        };
        Some(TwoPointPath { from, to, interior })
    }
}

impl std::fmt::Debug for SpecPreorder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SpecPreorder(n={})", self.size())
    }
}

/// A point of the two-point space; `{1}` is the open point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SierpinskiPoint(pub bool);

impl From<bool> for SierpinskiPoint {
    fn from(b: bool) -> Self {
        SierpinskiPoint(b)
    }
}

/// Explicit path between two comparable points of a finite space.
///
/// `eval(0) = from`, `eval(1) = to`, and the whole open interior maps to
/// whichever endpoint is generic; preimages of opens are then one of
/// `∅`, `[0,1]`, `[0,1)`, `(0,1]`, all open in `[0,1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoPointPath {
    pub from: usize,
    pub to: usize,
    interior: usize,
}

impl TwoPointPath {
    pub fn eval(&self, t: f64) -> usize {
        assert!((0.0..=1.0).contains(&t));
        if t == 0.0 {
            self.from
        } else if t == 1.0 {
            self.to
        } else {
            self.interior
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subbasis_examples() {
        let t = FiniteTopology::from_subbasis(3, &[]).unwrap();
        assert_eq!(t.opens(), vec![vec![], vec![0, 1, 2]]);

        let d = FiniteTopology::from_subbasis(3, &[vec![0], vec![1], vec![2]]).unwrap();
        assert_eq!(d.open_count(), 8);

        let t = FiniteTopology::from_subbasis(3, &[vec![0, 1], vec![2]]).unwrap();
        assert_eq!(t.opens(), vec![vec![], vec![2], vec![0, 1], vec![0, 1, 2]]);
    }

    #[test]
    fn subbasis_rejects_out_of_range() {
        assert!(matches!(
            FiniteTopology::from_subbasis(2, &[vec![5]]),
            Err(Error::OutOfRange { index: 5, n: 2 })
        ));
    }

    #[test]
    fn generation_is_idempotent() {
        for t in FiniteTopology::enumerate_all(3).unwrap() {
            let again = FiniteTopology::from_subbasis(3, &t.opens()).unwrap();
            assert_eq!(again, t);
        }
    }

    #[test]
    fn enumerate_counts() {
        assert_eq!(FiniteTopology::enumerate_all(1).unwrap().len(), 1);
        assert_eq!(FiniteTopology::enumerate_all(2).unwrap().len(), 4);
        assert_eq!(FiniteTopology::enumerate_all(3).unwrap().len(), 29);
        assert!(FiniteTopology::enumerate_all(5).is_err());
    }

    #[test]
    fn specialization_examples() {
        let d = FiniteTopology::discrete(3).specialization();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(d.leq(i, j), i == j);
            }
        }

        let t = FiniteTopology::trivial(3).specialization();
        for i in 0..3 {
            for j in 0..3 {
                assert!(t.leq(i, j));
            }
        }

        let s = FiniteTopology::from_masks(2, [0b00, 0b10, 0b11])
            .unwrap()
            .specialization();
        assert!(s.leq(0, 1));
        assert!(!s.leq(1, 0));
    }

    #[test]
    fn separation_examples() {
        let all = SeparationAxioms { t0: true, t1: true, t2: true };
        assert_eq!(FiniteTopology::discrete(4).separation_axioms(), all);

        let none = SeparationAxioms { t0: false, t1: false, t2: false };
        assert_eq!(FiniteTopology::trivial(2).separation_axioms(), none);

        assert_eq!(
            FiniteTopology::sierpinski().separation_axioms(),
            SeparationAxioms { t0: true, t1: false, t2: false }
        );
    }

    #[test]
    fn separation_flags_are_monotone_on_all_small_spaces() {
        for n in 1..=3 {
            for t in FiniteTopology::enumerate_all(n).unwrap() {
                let s = t.separation_axioms();
                assert!(!s.t2 || s.t1);
                assert!(!s.t1 || s.t0);
            }
        }
    }

    #[test]
    fn connectivity_examples() {
        let t = FiniteTopology::trivial(3).connectivity();
        assert!(t.connected && t.path_connected);
        assert_eq!(t.components.len(), 1);

        let d = FiniteTopology::discrete(6).connectivity();
        assert!(!d.connected);
        assert_eq!(d.components.len(), 6);
        assert!(d.totally_path_disconnected());

        assert!(FiniteTopology::sierpinski().connectivity().connected);
    }

    #[test]
    fn open_and_closure_examples() {
        let s = FiniteTopology::sierpinski();
        assert!(!s.is_open(&[0]).unwrap());
        assert!(s.is_open(&[1]).unwrap());
        assert_eq!(s.closure(&[1]).unwrap(), vec![0, 1]);
        assert_eq!(s.closure(&[0]).unwrap(), vec![0]);

        let d = FiniteTopology::discrete(3);
        for m in 0u32..8 {
            assert!(d.is_open_mask(m));
            assert_eq!(d.closure_mask(m), m);
        }

        let t = FiniteTopology::trivial(3);
        assert!(t.is_open(&[]).unwrap());
        assert!(t.is_open(&[0, 1, 2]).unwrap());
        assert_eq!(t.closure(&[0, 1, 2]).unwrap(), vec![0, 1, 2]);
        assert_eq!(t.closure(&[1]).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn closure_is_kuratowski_exhaustive_n3() {
        for t in FiniteTopology::enumerate_all(3).unwrap() {
            assert_eq!(t.closure_mask(0), 0);
            for a in 0u32..8 {
                let ca = t.closure_mask(a);
                assert_eq!(ca & a, a, "extensive");
                assert_eq!(t.closure_mask(ca), ca, "idempotent");
                for b in 0u32..8 {
                    assert_eq!(
                        t.closure_mask(a | b),
                        ca | t.closure_mask(b),
                        "preserves unions"
                    );
                }
            }
        }
    }

    #[test]
    fn alexandrov_round_trip_is_exact_for_small_spaces() {
        for n in 1..=3 {
            for t in FiniteTopology::enumerate_all(n).unwrap() {
                let back = t.specialization().alexandrov_topology().unwrap();
                assert_eq!(back, t);
            }
        }
    }

    #[test]
    fn basis_examples() {
        let s = FiniteTopology::sierpinski();
        assert!(s.is_basis(&s.opens()).unwrap().ok);

        let d = FiniteTopology::discrete(3);
        let singletons: Vec<Vec<usize>> = (0..3).map(|x| vec![x]).collect();
        assert!(d.is_basis(&singletons).unwrap().ok);

        let check = s.is_basis(&[vec![0, 1]]).unwrap();
        assert!(!check.ok);
        assert_eq!(
            check.witness,
            Some(BasisWitness::NotCovered { open_set: vec![1], point: 1 })
        );

        let check = s.is_basis(&[vec![0]]).unwrap();
        assert_eq!(check.witness, Some(BasisWitness::NotOpen { member: 0 }));
    }

    #[test]
    fn preorder_validation() {
        let mut m = BitMatrix::new(2);
        m.set(0, 0);
        assert!(SpecPreorder::from_matrix(m).is_err());
        assert!(SpecPreorder::from_leq(3, |i, j| i == j || i < j).is_ok());
    }

    #[test]
    fn two_point_path_is_continuous() {
        let s = FiniteTopology::sierpinski().specialization();
        let path = s.two_point_path(0, 1).unwrap();
        assert_eq!(path.eval(0.0), 0);
        assert_eq!(path.eval(1.0), 1);
        assert_eq!(path.eval(0.5), 1, "interior maps to the open point");

        let d = FiniteTopology::discrete(2).specialization();
        assert!(d.two_point_path(0, 1).is_none());
    }

    #[test]
    fn json_wire_forms() {
        let t = FiniteTopology::from_subbasis(3, &[vec![0, 1], vec![2]]).unwrap();
        assert_eq!(
            serde_json::to_string(&t).unwrap(),
            r#"{"n":3,"opens":[[],[2],[0,1],[0,1,2]]}"#
        );
        let back: FiniteTopology = serde_json::from_str(r#"{"n":3,"opens":[[],[2],[0,1],[0,1,2]]}"#).unwrap();
        assert_eq!(back, t);
        assert!(serde_json::from_str::<FiniteTopology>(r#"{"n":2,"opens":[[0,1]]}"#).is_err());

        let p = FiniteTopology::sierpinski().specialization();
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"{"n":2,"leq":[[0,0],[0,1],[1,1]]}"#
        );
    }
}
