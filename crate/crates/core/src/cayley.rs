//! Connection sets and Cayley graphs.
//!
//! `Cay(G, S)` has the elements of `G` as vertices (vertex `i` is the `i`-th
//! element in canonical order) and an edge `{u, s*u}` for every `s` in `S`.
//! `S` must be inverse-closed and must not contain the identity.

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::group::{FiniteGroup, GroupElement};
use crate::perm::{PermGroup, Permutation};

/// An inverse-closed, identity-free subset of a group, stored as sorted
/// canonical element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectionSet {
    group: FiniteGroup,
    indices: Vec<usize>,
}

impl ConnectionSet {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains_index(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.group
            .index_of(g)
            .map(|i| self.contains_index(i))
            .unwrap_or(false)
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        self.indices.iter().map(|&i| self.group.element(i)).collect()
    }

    pub fn tokens(&self) -> Vec<String> {
        self.elements().iter().map(|g| self.group.token(g)).collect()
    }

    /// The part of `S` inside the coset `xA`.
    pub fn coset_part(&self) -> Vec<GroupElement> {
        self.elements().into_iter().filter(|g| g.flip).collect()
    }

    /// Parses a comma-separated token list such as `1,3,x:0`. The empty string
    /// is the empty set.
    pub fn parse(group: &FiniteGroup, tokens: &str) -> Result<Self> {
        let mut raw = Vec::new();
        let mut offset = 0;
        for tok in tokens.split(',') {
            let trimmed = tok.trim();
            if !trimmed.is_empty() {
                let lead = tok.len() - tok.trim_start().len();
                raw.push(group.parse_token_at(trimmed, offset + lead)?);
            } else if tokens.trim().contains(',') {
                return Err(Error::Parse {
                    input: tokens.to_string(),
                    position: offset,
                    message: "empty token".into(),
                });
            }
            offset += tok.len() + 1;
        }
        validate_connection_set(group, &raw)
    }

    pub(crate) fn from_indices_unchecked(group: FiniteGroup, mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        ConnectionSet { group, indices }
    }
}

/// Accepts `raw` iff it avoids the identity and contains the inverse of each member.
pub fn validate_connection_set(group: &FiniteGroup, raw: &[GroupElement]) -> Result<ConnectionSet> {
    let mut indices = raw
        .iter()
        .map(|g| group.index_of(g))
        .collect::<Result<Vec<_>>>()?;
    indices.sort_unstable();
    indices.dedup();
    if indices.first() == Some(&0) {
        return Err(Error::IdentityInConnectionSet);
    }
    for &i in &indices {
        if indices.binary_search(&group.inv_index(i)).is_err() {
            return Err(Error::MissingInverse {
                element: group.token(&group.element(i)),
            });
        }
    }
    Ok(ConnectionSet {
        group: group.clone(),
        indices,
    })
}

/// `Cay(G, S)` together with the group data it was built from.
#[derive(Clone, Debug)]
pub struct CayleyGraph {
    connection: ConnectionSet,
    graph: SimpleGraph,
}

impl CayleyGraph {
    pub fn group(&self) -> &FiniteGroup {
        &self.connection.group
    }

    pub fn connection(&self) -> &ConnectionSet {
        &self.connection
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn vertex_tokens(&self) -> Vec<String> {
        let g = self.group();
        g.elements().map(|e| g.token(&e)).collect()
    }
}

/// Builds the graph with `u ~ v` iff `v * u^-1` lies in `S`.
pub fn build_cayley_graph(connection: &ConnectionSet) -> CayleyGraph {
    let group = &connection.group;
    let n = group.order();
    let edges = (0..n).flat_map(|u| {
        connection
            .indices
            .iter()
            .map(move |&s| (u, group.mul_index(s, u)))
    });
    let graph = SimpleGraph::from_edges(n, edges).expect("identity-free connection set");
    CayleyGraph {
        connection: connection.clone(),
        graph,
    }
}

/// Parses both specs and builds the graph in one step.
pub fn cayley_graph(group_spec: &str, set_tokens: &str) -> Result<CayleyGraph> {
    let group = crate::group::build_group(group_spec)?;
    let set = ConnectionSet::parse(&group, set_tokens)?;
    Ok(build_cayley_graph(&set))
}

/// `z -> z * g` on canonical indices.
pub fn right_multiplication(group: &FiniteGroup, g: &GroupElement) -> Result<Permutation> {
    let gi = group.index_of(g)?;
    Ok(Permutation::from_images_unchecked(
        (0..group.order()).map(|z| group.mul_index(z, gi)).collect(),
    ))
}

/// `z -> g * z` on canonical indices.
pub fn left_multiplication(group: &FiniteGroup, g: &GroupElement) -> Result<Permutation> {
    let gi = group.index_of(g)?;
    Ok(Permutation::from_images_unchecked(
        (0..group.order()).map(|z| group.mul_index(gi, z)).collect(),
    ))
}

/// The right regular representation `{z -> z*g : g in G}`.
///
/// Generators are the translations by the standard generators of `G`.
pub fn right_translations(group: &FiniteGroup) -> PermGroup {
    let all: Vec<Permutation> = group
        .elements()
        .map(|g| right_multiplication(group, &g).expect("own element"))
        .collect();
    let gens = group
        .standard_generators()
        .iter()
        .map(|g| right_multiplication(group, g).expect("own element"))
        .collect();
    PermGroup::from_parts(group.order(), gens, all).expect("uniform degree")
}

/// The classes `{g, g^-1}` of non-identity elements accepted by `keep`,
/// each sorted, ordered by least member.
pub fn inverse_pairs(group: &FiniteGroup, keep: impl Fn(&GroupElement) -> bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for i in 1..group.order() {
        let j = group.inv_index(i);
        if j < i || !keep(&group.element(i)) {
            continue;
        }
        out.push(if i == j { vec![i] } else { vec![i, j] });
    }
    out
}

/// Every inverse-closed subset built from the given inverse pairs, in
/// increasing bitmask order (bit `k` selects pair `k`).
pub fn inverse_closed_subsets(
    group: &FiniteGroup,
    pairs: Vec<Vec<usize>>,
) -> impl Iterator<Item = ConnectionSet> + '_ {
    assert!(pairs.len() < 64, "too many inverse pairs to enumerate");
    (0u64..1 << pairs.len()).map(move |mask| subset_from_mask(group, &pairs, mask))
}

pub(crate) fn subset_from_mask(group: &FiniteGroup, pairs: &[Vec<usize>], mask: u64) -> ConnectionSet {
    let indices = pairs
        .iter()
        .enumerate()
        .filter(|(k, _)| mask >> k & 1 == 1)
        .flat_map(|(_, p)| p.iter().copied())
        .collect();
    ConnectionSet::from_indices_unchecked(group.clone(), indices)
}
