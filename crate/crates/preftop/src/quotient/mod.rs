//! The final (quotient) topology on families of weak orders.
//!
//! For a family `S` of weak orders on `n` alternatives, a set `G ⊆ S` is
//! open in the final topology exactly when it is closed under
//! tie-breaking refinement within `S`: small pointwise perturbations of a
//! utility vector can break ties but can never merge strictly separated
//! values, so the preimage of `G` under the representation map is open
//! iff `G` absorbs refinements. [`PrefSpace`] materializes this as a
//! specialization preorder over family indices; [`oracle`] probes the
//! same question numerically and keeps the combinatorial shortcut honest.

mod basis;
mod boxes;
mod checks;
pub mod oracle;

pub use basis::{all_basis_member_sets, basis_element, pairwise_intersection_holds, BasisElement};
pub use boxes::{box_image_comparison, image_of_box, BoxCase, BoxImageComparison, Interval, IntervalBox};
pub use checks::{
    check_basis_intersection, check_box_image, check_homotopy, check_lemma_opensets,
    check_prop1, check_theorem1, check_theorem2, check_theorem3, lemma_opensets_routes,
    CheckConfig, RouteAgreement,
};

use crate::bits::{BitMatrix, BitSet};
use crate::error::{Error, Result};
use crate::order::{Family, WeakOrder};
use crate::topology::{FiniteTopology, SpecPreorder};
use std::collections::HashMap;

/// A preference family carrying its final topology as a specialization
/// preorder: `leq(i, j)` iff `family[j]` refines `family[i]`, i.e.
/// `family[i]` lies in the closure of `{family[j]}`.
#[derive(Clone)]
pub struct PrefSpace {
    n_alts: usize,
    label: String,
    family: Vec<WeakOrder>,
    index: HashMap<WeakOrder, usize>,
    preorder: SpecPreorder,
}

/// Builds the final topology on `P`, `P*`, or `P^s` at size `n`.
pub fn final_topology(family: Family, n: usize) -> Result<PrefSpace> {
    let orders = WeakOrder::enumerate(n, family)?;
    PrefSpace::from_orders(n, orders, family.as_str())
}

impl PrefSpace {
    /// Final topology on an arbitrary duplicate-free subset of weak orders.
    pub fn from_orders(n_alts: usize, family: Vec<WeakOrder>, label: &str) -> Result<Self> {
        if family.is_empty() {
            return Err(Error::Scope(format!("family {label} is empty at n={n_alts}")));
        }
        let mut index = HashMap::with_capacity(family.len());
        for (i, w) in family.iter().enumerate() {
            if w.n() != n_alts {
                return Err(Error::DimensionMismatch { expected: n_alts, got: w.n() });
            }
            if index.insert(w.clone(), i).is_some() {
                return Err(Error::Precondition(format!("duplicate member {w}")));
            }
        }
        let masks: Vec<u64> = family.iter().map(|w| w.strict_mask()).collect();
        let mut m = BitMatrix::new(family.len());
        for i in 0..family.len() {
            for j in 0..family.len() {
                // leq(i, j): j refines i (every strict pair of i survives in j).
                if masks[i] & !masks[j] == 0 {
                    m.set(i, j);
                }
            }
        }
        let preorder = SpecPreorder::from_matrix(m).expect("refinement is reflexive-transitive");
        Ok(PrefSpace {
            n_alts,
            label: label.to_string(),
            family,
            index,
            preorder,
        })
    }

    pub fn n_alts(&self) -> usize {
        self.n_alts
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.family.len()
    }

    pub fn is_empty(&self) -> bool {
        self.family.is_empty()
    }

    pub fn family(&self) -> &[WeakOrder] {
        &self.family
    }

    pub fn member(&self, i: usize) -> &WeakOrder {
        &self.family[i]
    }

    pub fn index_of(&self, w: &WeakOrder) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn preorder(&self) -> &SpecPreorder {
        &self.preorder
    }

    /// Subset of family indices for the given orders; errors on strangers.
    pub fn subset(&self, orders: &[WeakOrder]) -> Result<BitSet> {
        let mut s = BitSet::new(self.len());
        for w in orders {
            match self.index_of(w) {
                Some(i) => s.insert(i),
                None => {
                    return Err(Error::Precondition(format!(
                        "{w} is not a member of family {}",
                        self.label
                    )))
                }
            }
        }
        Ok(s)
    }

    pub fn orders_of(&self, s: &BitSet) -> Vec<WeakOrder> {
        s.iter().map(|i| self.family[i].clone()).collect()
    }

    /// Openness in the final topology: closure under refinement within
    /// the family.
    pub fn is_open(&self, s: &BitSet) -> bool {
        self.preorder.is_open(s)
    }

    pub fn closure(&self, s: &BitSet) -> BitSet {
        self.preorder.closure(s)
    }

    /// Subspace on the given members, with the induced preorder (subspace
    /// topologies of finite Alexandrov spaces restrict the preorder).
    pub fn restrict(&self, members: &BitSet, label: &str) -> Result<PrefSpace> {
        let orders = self.orders_of(members);
        PrefSpace::from_orders(self.n_alts, orders, label)
    }

    /// Continuity of the indicator of `g` into the two-point space whose
    /// only nontrivial open set is `{1}`: the preimage of every open set
    /// must be open here. This is the classifying-map route to openness.
    pub fn indicator_continuous(&self, g: &BitSet) -> bool {
        let codomain = FiniteTopology::sierpinski();
        codomain.opens_masks().iter().all(|&open| {
            let preimage = BitSet::from_indices(
                self.len(),
                (0..self.len()).filter(|&i| open >> u32::from(g.contains(i)) & 1 == 1),
            );
            self.preorder.is_open(&preimage)
        })
    }
}

impl std::fmt::Debug for PrefSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "PrefSpace({}, n={}, |family|={})",
            self.label,
            self.n_alts,
            self.len()
        )
    }
}
