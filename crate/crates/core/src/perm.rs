//! Permutations of `{0, …, n-1}` and the groups they generate.
//!
//! Composition follows a single convention everywhere in the crate:
//! `compose(p, q)` applies `q` first, so `compose(p, q)(v) == p(q(v))`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default upper bound on the number of elements a closure may produce.
pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

/// A bijection on `{0, …, degree-1}` stored as its image sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Checks that `images` hits every point exactly once.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (v, &img) in images.iter().enumerate() {
            if img >= n {
                return Err(Error::NotAPermutation(format!(
                    "image {img} of point {v} is out of range for degree {n}"
                )));
            }
            if std::mem::replace(&mut seen[img], true) {
                return Err(Error::NotAPermutation(format!("point {img} is hit twice")));
            }
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[0, 2, 4], &[1, 3, 5]]`.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &v) in cycle.iter().enumerate() {
                let next = cycle[(i + 1) % cycle.len()];
                if v >= degree || next >= degree {
                    return Err(Error::NotAPermutation(format!(
                        "cycle point out of range for degree {degree}"
                    )));
                }
                if std::mem::replace(&mut touched[v], true) {
                    return Err(Error::NotAPermutation(format!(
                        "point {v} appears in more than one cycle position"
                    )));
                }
                images[v] = next;
            }
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.images[v]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(v, &img)| v == img)
    }

    pub fn has_fixed_point(&self) -> bool {
        self.images.iter().enumerate().any(|(v, &img)| v == img)
    }

    pub fn inverse(&self) -> Permutation {
        invert(self)
    }

    pub fn pow(&self, mut exp: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul(&acc, &base);
            }
            base = mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    /// Least `m >= 1` with `self^m` the identity (lcm of the cycle lengths).
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .map(|c| c.len() as u64)
            .fold(1, |acc, len| acc / gcd(acc, len) * len)
    }

    /// Cycle decomposition including fixed points, each cycle starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                cycle.push(v);
                v = self.images[v];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|v| v.to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::from_images(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[inline]
fn mul(p: &Permutation, q: &Permutation) -> Permutation {
    Permutation {
        images: q.images.iter().map(|&v| p.images[v]).collect(),
    }
}

/// `result(v) = p(q(v))`.
pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation> {
    if p.degree() != q.degree() {
        return Err(Error::DegreeMismatch {
            left: p.degree(),
            right: q.degree(),
        });
    }
    Ok(mul(p, q))
}

pub fn invert(p: &Permutation) -> Permutation {
    let mut images = vec![0; p.degree()];
    for (v, &img) in p.images.iter().enumerate() {
        images[img] = v;
    }
    Permutation { images }
}

/// A finite permutation group with its full element list materialized.
///
/// Elements are kept sorted by image sequence so that two groups with the
/// same element set compare equal and print identically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
}

impl PermGroup {
    /// Wraps an element list without closing it. Used to re-check claimed
    /// groups read from outside; [`PermGroup::is_closed`] tells whether the
    /// claim holds.
    pub fn from_parts(
        degree: usize,
        generators: Vec<Permutation>,
        mut elements: Vec<Permutation>,
    ) -> Result<Self> {
        for p in generators.iter().chain(elements.iter()) {
            if p.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: p.degree(),
                });
            }
        }
        elements.sort();
        elements.dedup();
        Ok(PermGroup {
            degree,
            generators,
            elements,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    /// Checks commutation on the generators, or on all elements when the
    /// group carries no generators.
    pub fn is_abelian(&self) -> bool {
        let set = if self.generators.is_empty() {
            &self.elements
        } else {
            &self.generators
        };
        set.iter()
            .enumerate()
            .all(|(i, a)| set[i + 1..].iter().all(|b| mul(a, b) == mul(b, a)))
    }

    /// Contains the identity and every generator, and is closed under products.
    pub fn is_closed(&self) -> bool {
        if !self.contains(&Permutation::identity(self.degree)) {
            return false;
        }
        if !self.generators.iter().all(|g| self.contains(g)) {
            return false;
        }
        self.elements
            .iter()
            .all(|a| self.elements.iter().all(|b| self.contains(&mul(a, b))))
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut pts: Vec<usize> = self.elements.iter().map(|g| g.apply(point)).collect();
        pts.sort_unstable();
        pts.dedup();
        pts
    }

    /// Multiset of element orders as sorted `(order, count)` pairs.
    pub fn order_profile(&self) -> Vec<(u64, usize)> {
        order_profile(self.elements.iter().map(Permutation::order))
    }
}

pub(crate) fn order_profile(orders: impl Iterator<Item = u64>) -> Vec<(u64, usize)> {
    let mut orders: Vec<u64> = orders.collect();
    orders.sort_unstable();
    let mut out: Vec<(u64, usize)> = Vec::new();
    for o in orders {
        match out.last_mut() {
            Some((last, count)) if *last == o => *count += 1,
            _ => out.push((o, 1)),
        }
    }
    out
}

/// Breadth-first closure of `gens` under composition.
///
/// Fails with [`Error::ResourceLimit`] once more than `cap` elements have
/// been found; the error carries the count reached.
pub fn generate_group(degree: usize, gens: &[Permutation], cap: usize) -> Result<PermGroup> {
    for g in gens {
        if g.degree() != degree {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: g.degree(),
            });
        }
    }
    let identity = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(identity.clone());
    queue.push_back(identity);
    while let Some(current) = queue.pop_front() {
        for g in gens {
            let next = mul(g, &current);
            if !seen.contains(&next) {
                if seen.len() >= cap {
                    return Err(Error::ResourceLimit {
                        what: "group closure",
                        limit: cap,
                        reached: seen.len() + 1,
                    });
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    let mut elements: Vec<Permutation> = seen.into_iter().collect();
    elements.sort();
    Ok(PermGroup {
        degree,
        generators: gens.to_vec(),
        elements,
    })
}

/// Sharply transitive on `{0, …, n-1}`: transitive and of order exactly `n`.
pub fn is_regular(group: &PermGroup, n: usize) -> bool {
    n > 0 && group.degree() == n && group.order() == n && group.orbit(0).len() == n
}
