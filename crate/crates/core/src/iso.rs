//! Isomorphism testing between small finite groups.
//!
//! Both sides are flattened to a multiplication table. The search fixes a
//! small generating set of the first group, assigns each generator an image
//! of the same element order in the second group, and extends the partial
//! map multiplicatively after every assignment. A branch dies as soon as the
//! extension is inconsistent or not injective.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::{order_profile, PermGroup, Permutation};

/// Largest group order the table-based search accepts by default.
pub const DEFAULT_ISO_CAP: usize = 4096;

/// A group as a dense multiplication table over indices `0..n`.
#[derive(Clone, Debug)]
pub struct GroupTable {
    n: usize,
    identity: usize,
    table: Vec<usize>,
    orders: Vec<u64>,
    generators: Vec<usize>,
}

impl GroupTable {
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn element_orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn order_profile(&self) -> Vec<(u64, usize)> {
        order_profile(self.orders.iter().copied())
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    fn from_table(n: usize, identity: usize, table: Vec<usize>) -> Self {
        let orders = (0..n)
            .map(|g| {
                let mut acc = g;
                let mut m = 1;
                while acc != identity {
                    acc = table[acc * n + g];
                    m += 1;
                }
                m
            })
            .collect();
        GroupTable {
            n,
            identity,
            table,
            orders,
            generators: Vec::new(),
        }
    }

    /// Elements of the subgroup generated by `gens`, as a membership mask.
    fn span(&self, gens: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        seen[self.identity] = true;
        let mut stack = vec![self.identity];
        while let Some(g) = stack.pop() {
            for &s in gens {
                let h = self.mul(g, s);
                if !seen[h] {
                    seen[h] = true;
                    stack.push(h);
                }
            }
        }
        seen
    }

    /// Greedy generating set: scan elements by decreasing order and keep each
    /// one not already in the span of those kept.
    fn greedy_generators(&self) -> Vec<usize> {
        let mut candidates: Vec<usize> = (0..self.n).collect();
        candidates.sort_by_key(|&g| (std::cmp::Reverse(self.orders[g]), g));
        let mut gens = Vec::new();
        let mut span = self.span(&gens);
        for g in candidates {
            if span.iter().all(|&b| b) {
                break;
            }
            if !span[g] {
                gens.push(g);
                span = self.span(&gens);
            }
        }
        gens
    }
}

/// Anything that can be flattened to a [`GroupTable`].
pub trait ToGroupTable {
    fn group_order(&self) -> usize;
    fn to_table(&self) -> GroupTable;
}

impl ToGroupTable for FiniteGroup {
    fn group_order(&self) -> usize {
        self.order()
    }

    fn to_table(&self) -> GroupTable {
        let n = self.order();
        let elems: Vec<_> = self.elements().collect();
        let mut table = Vec::with_capacity(n * n);
        for a in &elems {
            for b in &elems {
                let prod = self.mul(a, b).expect("canonical elements");
                table.push(self.index_of(&prod).expect("closed"));
            }
        }
        let mut t = GroupTable::from_table(n, 0, table);
        t.generators = self
            .standard_generators()
            .iter()
            .map(|g| self.index_of(g).expect("generator"))
            .collect();
        t
    }
}

impl ToGroupTable for PermGroup {
    fn group_order(&self) -> usize {
        self.order()
    }

    fn to_table(&self) -> GroupTable {
        let elems = self.elements();
        let n = elems.len();
        let index: HashMap<&Permutation, usize> =
            elems.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let identity = Permutation::identity(self.degree());
        let mut table = Vec::with_capacity(n * n);
        for a in elems {
            for b in elems {
                let prod = crate::perm::compose(a, b).expect("same degree");
                table.push(*index.get(&prod).expect("element list is not closed"));
            }
        }
        let mut t = GroupTable::from_table(n, index[&identity], table);
        t.generators = t.greedy_generators();
        t
    }
}

impl ToGroupTable for GroupTable {
    fn group_order(&self) -> usize {
        self.n
    }

    fn to_table(&self) -> GroupTable {
        self.clone()
    }
}

/// An isomorphism `a -> b` given as `map[i] = j`, indices into the respective
/// canonical element lists (for [`PermGroup`], the sorted element list).
pub type Isomorphism = Vec<usize>;

/// Finds an isomorphism between two groups, if one exists.
///
/// A [`PermGroup`] argument must be closed (see [`PermGroup::is_closed`]).
pub fn find_isomorphism<A, B>(a: &A, b: &B) -> Result<Option<Isomorphism>>
where
    A: ToGroupTable + ?Sized,
    B: ToGroupTable + ?Sized,
{
    find_isomorphism_capped(a, b, DEFAULT_ISO_CAP)
}

pub fn find_isomorphism_capped<A, B>(a: &A, b: &B, cap: usize) -> Result<Option<Isomorphism>>
where
    A: ToGroupTable + ?Sized,
    B: ToGroupTable + ?Sized,
{
    for order in [a.group_order(), b.group_order()] {
        if order > cap {
            return Err(Error::ResourceLimit {
                what: "isomorphism search group order",
                limit: cap,
                reached: order,
            });
        }
    }
    if a.group_order() != b.group_order() {
        return Ok(None);
    }
    Ok(isomorphism_between_tables(&a.to_table(), &b.to_table()))
}

pub fn isomorphism_between_tables(a: &GroupTable, b: &GroupTable) -> Option<Isomorphism> {
    if a.n != b.n || a.order_profile() != b.order_profile() {
        return None;
    }
    let gens = a.generators.clone();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| (0..b.n).filter(|&h| b.orders[h] == a.orders[g]).collect())
        .collect();
    let mut assigned = Vec::with_capacity(gens.len());
    search(a, b, &gens, &candidates, &mut assigned)
}

fn search(
    a: &GroupTable,
    b: &GroupTable,
    gens: &[usize],
    candidates: &[Vec<usize>],
    assigned: &mut Vec<(usize, usize)>,
) -> Option<Isomorphism> {
    let level = assigned.len();
    if level == gens.len() {
        let map = extend(a, b, assigned)?;
        return map.into_iter().collect::<Option<Vec<usize>>>();
    }
    for &h in &candidates[level] {
        assigned.push((gens[level], h));
        if extend(a, b, assigned).is_some() {
            if let Some(found) = search(a, b, gens, candidates, assigned) {
                return Some(found);
            }
        }
        assigned.pop();
    }
    None
}

/// Extends `g_i -> h_i` to the subgroup generated by the `g_i`, or `None`
/// when the extension is not a well-defined injective homomorphism.
fn extend(a: &GroupTable, b: &GroupTable, assigned: &[(usize, usize)]) -> Option<Vec<Option<usize>>> {
    let mut map = vec![None; a.n];
    let mut used = vec![false; b.n];
    map[a.identity] = Some(b.identity);
    used[b.identity] = true;
    let mut stack = vec![a.identity];
    while let Some(g) = stack.pop() {
        let img = map[g].expect("visited");
        for &(s, t) in assigned {
            let gs = a.mul(g, s);
            let target = b.mul(img, t);
            match map[gs] {
                Some(existing) if existing != target => return None,
                Some(_) => {}
                None => {
                    if used[target] {
                        return None;
                    }
                    used[target] = true;
                    map[gs] = Some(target);
                    stack.push(gs);
                }
            }
        }
    }
    Some(map)
}

/// Checks that `map` is a bijective homomorphism `a -> b`.
pub fn is_isomorphism(a: &GroupTable, b: &GroupTable, map: &[usize]) -> bool {
    if a.n != b.n || map.len() != a.n {
        return false;
    }
    let mut hit = vec![false; b.n];
    for &m in map {
        if m >= b.n || std::mem::replace(&mut hit[m], true) {
            return false;
        }
    }
    (0..a.n).all(|x| (0..a.n).all(|y| map[a.mul(x, y)] == b.mul(map[x], map[y])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;

    fn iso(a: &str, b: &str) -> Option<Isomorphism> {
        find_isomorphism(&build_group(a).unwrap(), &build_group(b).unwrap()).unwrap()
    }

    #[test]
    fn examples() {
        assert!(iso("gendih:2x2", "abelian:2x2x2").is_some());
        assert!(iso("cyclic:4", "abelian:2x2").is_none());
        assert!(iso("gendih:6", "gendih:3x2").is_some());
        assert!(iso("cyclic:6", "abelian:3x2").is_some());
        assert!(iso("cyclic:6", "gendih:3").is_none());
        assert!(iso("gendih:4", "abelian:4x2").is_none());
        assert!(iso("cyclic:8", "gendih:4").is_none());
        assert!(iso("gendih:8", "gendih:4x2").is_none());
    }

    #[test]
    fn found_maps_are_isomorphisms() {
        let pairs = [
            ("gendih:6", "gendih:3x2"),
            ("abelian:4x2", "abelian:2x4"),
            ("gendih:2x2x2", "abelian:2x2x2x2"),
        ];
        for (x, y) in pairs {
            let (gx, gy) = (build_group(x).unwrap(), build_group(y).unwrap());
            let map = find_isomorphism(&gx, &gy).unwrap().unwrap();
            assert!(is_isomorphism(&gx.to_table(), &gy.to_table(), &map), "{x} -> {y}");
        }
    }

    #[test]
    fn order_cap() {
        let big = build_group("cyclic:5000").unwrap();
        assert!(matches!(
            find_isomorphism(&big, &big),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn greedy_generators_generate() {
        let a = Permutation::from_cycles(6, &[&[0, 2, 4], &[1, 3, 5]]).unwrap();
        let b = Permutation::from_cycles(6, &[&[0, 5], &[1, 4], &[2, 3]]).unwrap();
        let g = crate::perm::generate_group(6, &[a, b], 100).unwrap();
        let t = g.to_table();
        assert!(t.span(t.generators()).iter().all(|&x| x));
        assert!(t.generators().len() <= 2);
        assert!(find_isomorphism(&g, &build_group("gendih:3").unwrap())
            .unwrap()
            .is_some());
    }
}
