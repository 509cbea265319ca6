//! Agreement-set basis elements.
//!
//! `B(anchor, A)` collects the family members that are strict on the
//! finite set `A` and agree with `anchor` there. Each such set is closed
//! under refinement (refinement preserves strict comparisons), hence open
//! in the final topology.

use super::PrefSpace;
use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::order::WeakOrder;

/// A basis element of the final topology: anchor, the strictly ranked
/// finite set, and the members it carves out of the family.
#[derive(Clone, Debug)]
pub struct BasisElement {
    pub anchor: WeakOrder,
    /// The alternatives the members must rank like the anchor (sorted).
    pub set: Vec<usize>,
    /// Member indices into the owning space's family.
    pub members: BitSet,
}

/// `B(anchor, A)` within `space`. Requires every distinct pair of `A` to
/// be strictly ranked by the anchor.
pub fn basis_element(space: &PrefSpace, anchor: &WeakOrder, a: &[usize]) -> Result<BasisElement> {
    if anchor.n() != space.n_alts() {
        return Err(Error::DimensionMismatch {
            expected: space.n_alts(),
            got: anchor.n(),
        });
    }
    let mut set: Vec<usize> = a.to_vec();
    set.sort_unstable();
    set.dedup();
    if let Some(&bad) = set.iter().find(|&&x| x >= space.n_alts()) {
        return Err(Error::OutOfRange { index: bad, n: space.n_alts() });
    }
    for (i, &x) in set.iter().enumerate() {
        for &y in &set[i + 1..] {
            if anchor.indifferent(x, y) {
                return Err(Error::Precondition(format!(
                    "anchor {anchor} is indifferent between {x} and {y}"
                )));
            }
        }
    }
    let mut members = BitSet::new(space.len());
    'outer: for (k, w) in space.family().iter().enumerate() {
        for (i, &x) in set.iter().enumerate() {
            for &y in &set[i + 1..] {
                if w.indifferent(x, y) || w.strict(x, y) != anchor.strict(x, y) {
                    continue 'outer;
                }
            }
        }
        members.insert(k);
    }
    Ok(BasisElement {
        anchor: anchor.clone(),
        set,
        members,
    })
}

/// Does `B(anchor, A)` equal the intersection of its pairwise agreement
/// sets `B(anchor, {x, y})`? Checked extensionally.
pub fn pairwise_intersection_holds(
    space: &PrefSpace,
    anchor: &WeakOrder,
    a: &[usize],
) -> Result<bool> {
    let whole = basis_element(space, anchor, a)?;
    let mut intersection = BitSet::full(space.len());
    for (i, &x) in whole.set.iter().enumerate() {
        for &y in &whole.set[i + 1..] {
            intersection.intersect_with(&basis_element(space, anchor, &[x, y])?.members);
        }
    }
    Ok(intersection == whole.members)
}

/// Every distinct member set `B(anchor, A)` carves out of the space, over
/// all anchors in the family and all anchor-strict subsets `A`.
pub fn all_basis_member_sets(space: &PrefSpace) -> Vec<BitSet> {
    let n = space.n_alts();
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for anchor in space.family() {
        for pick in 0u32..(1 << n) {
            let a: Vec<usize> = (0..n).filter(|&x| pick >> x & 1 == 1).collect();
            let strict_on_a = a
                .iter()
                .enumerate()
                .all(|(i, &x)| a[i + 1..].iter().all(|&y| !anchor.indifferent(x, y)));
            if !strict_on_a {
                continue;
            }
            let b = basis_element(space, anchor, &a).expect("precondition checked");
            if seen.insert(b.members.clone()) {
                out.push(b.members);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::Family;
    use crate::quotient::final_topology;

    fn w(n: usize, classes: &[&[usize]]) -> WeakOrder {
        WeakOrder::from_classes(n, &classes.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn empty_set_gives_whole_family() {
        let sp = final_topology(Family::PStar, 3).unwrap();
        let b = basis_element(&sp, &w(3, &[&[0], &[1], &[2]]), &[]).unwrap();
        assert_eq!(b.members.count(), sp.len());
    }

    #[test]
    fn pair_agreement_set_counts_by_brute_force() {
        // Members of P* on three alternatives ranking 0 strictly above 1:
        // brute-force filter over the enumerated family.
        let sp = final_topology(Family::PStar, 3).unwrap();
        let expected = sp.family().iter().filter(|p| p.strict(0, 1)).count();
        let b = basis_element(&sp, &w(3, &[&[0], &[1], &[2]]), &[0, 1]).unwrap();
        assert_eq!(b.members.count(), expected);
        assert_eq!(expected, 5);
    }

    #[test]
    fn full_agreement_on_strict_family_is_singleton() {
        let sp = final_topology(Family::PStrict, 3).unwrap();
        let anchor = w(3, &[&[0], &[1], &[2]]);
        let b = basis_element(&sp, &anchor, &[0, 1, 2]).unwrap();
        assert_eq!(b.members.count(), 1);
        assert!(b.members.contains(sp.index_of(&anchor).unwrap()));
    }

    #[test]
    fn rejects_indifferent_pairs_in_a() {
        let sp = final_topology(Family::PStar, 3).unwrap();
        let anchor = w(3, &[&[0], &[1, 2]]);
        assert!(matches!(
            basis_element(&sp, &anchor, &[1, 2]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn members_are_refinement_closed_exhaustively_n4() {
        for fam in [Family::PStar, Family::PStrict] {
            let sp = final_topology(fam, 4).unwrap();
            for b in all_basis_member_sets(&sp) {
                assert!(sp.is_open(&b));
            }
        }
    }

    #[test]
    fn pairwise_intersection_examples() {
        let sp = final_topology(Family::PStar, 3).unwrap();
        let anchor = w(3, &[&[0], &[1], &[2]]);
        assert!(pairwise_intersection_holds(&sp, &anchor, &[0, 1]).unwrap());
        assert!(pairwise_intersection_holds(&sp, &anchor, &[0, 1, 2]).unwrap());

        let sps = final_topology(Family::PStrict, 4).unwrap();
        let anchor = w(4, &[&[3], &[0], &[2], &[1]]);
        assert!(pairwise_intersection_holds(&sps, &anchor, &[0, 2, 3]).unwrap());
    }
}
