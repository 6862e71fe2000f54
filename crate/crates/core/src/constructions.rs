//! Regular subgroups of `Aut(Cay(G, S))` realizing a second group structure.
//!
//! Two constructions are provided:
//!
//! * **Even circulants are dihedral.** For `Cay(Z_{2k}, S)` with generator
//!   `c`, the maps `alpha(z) = z*c^2` and `beta(z) = z^-1 * c^-1` are
//!   automorphisms, `alpha` has order `k`, `beta` is an involution and
//!   `beta^-1 alpha beta = alpha^-1`. Together they generate a regular
//!   subgroup isomorphic to the dihedral group of order `2k`.
//!
//! * **Witnessed generalized dihedral graphs are abelian.** For
//!   `Cay(Dih(A, x), S)` and some `y` in `xA` such that `y*a` and `y*a^-1`
//!   are simultaneously in `S` or not, the right translations
//!   `alpha_a(z) = z*a` and the left translation `beta(z) = y*z` generate a
//!   regular subgroup isomorphic to `A x C_2`.
//!
//! Both builders run their defining relations as self-checks and return a
//! [`RegularCertificate`] that [`crate::oracle::verify_certificate`] can
//! re-check from scratch.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cayley::{
    inverse_pairs, left_multiplication, right_multiplication,
    validate_connection_set, CayleyGraph, ConnectionSet,
};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupElement};
use crate::perm::{compose, generate_group, is_regular, invert, PermGroup, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Construction {
    /// Dihedral representation of an even circulant.
    Prop1,
    /// Abelian representation of a witnessed generalized dihedral graph.
    Thm2,
    /// The right regular representation of the graph's own group.
    Translations,
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Construction::Prop1 => "prop1",
            Construction::Thm2 => "thm2",
            Construction::Translations => "translations",
        })
    }
}

/// A permutation group claimed to be a regular subgroup of `Aut(graph)`
/// isomorphic to `claimed_type`.
#[derive(Clone, Debug)]
pub struct RegularCertificate {
    pub graph: CayleyGraph,
    pub claimed_type: FiniteGroup,
    pub perms: PermGroup,
    pub witness: Option<GroupElement>,
    pub construction: Construction,
}

fn self_check(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::SelfCheck(what.to_string()))
    }
}

/// The pair `(alpha, beta)` for an even circulant, with `c` the element `1`.
pub fn prop1_maps(graph: &CayleyGraph) -> Result<(Permutation, Permutation)> {
    let group = graph.group();
    let n = group.order();
    if !group.is_cyclic_spec() || !n.is_multiple_of(2) || n < 4 {
        return Err(Error::Construction(format!(
            "proposition requires even circulant of order at least 4, got {group}"
        )));
    }
    let c = GroupElement::plain(vec![1]);
    let c2 = group.mul(&c, &c)?;
    let c_inv = group.inv(&c)?;
    let alpha = right_multiplication(group, &c2)?;
    let images = group
        .elements()
        .map(|z| {
            let w = group.mul(&group.inv(&z)?, &c_inv)?;
            group.index_of(&w)
        })
        .collect::<Result<Vec<_>>>()?;
    let beta = Permutation::from_images(images)?;
    Ok((alpha, beta))
}

/// Certificate that an even circulant `Cay(Z_{2k}, S)` is also a Cayley graph
/// on the dihedral group of order `2k`.
pub fn prop1_certificate(graph: &CayleyGraph) -> Result<RegularCertificate> {
    let (alpha, beta) = prop1_maps(graph)?;
    let n = graph.n();
    let k = n / 2;
    self_check(alpha.pow(k as u64).is_identity(), "alpha^k = id")?;
    self_check(alpha.order() == k as u64, "alpha has order k")?;
    self_check(beta.pow(2).is_identity(), "beta^2 = id")?;
    let conj = compose(&invert(&beta), &compose(&alpha, &beta)?)?;
    self_check(conj == invert(&alpha), "beta^-1 alpha beta = alpha^-1")?;
    for (name, p) in [("alpha", &alpha), ("beta", &beta)] {
        if let Some((u, v)) = graph.graph().first_broken_edge(p) {
            return Err(Error::SelfCheck(format!("{name} breaks edge {{{u}, {v}}}")));
        }
    }
    let perms = generate_group(n, &[alpha, beta], n)?;
    self_check(is_regular(&perms, n), "<alpha, beta> is regular")?;
    Ok(RegularCertificate {
        graph: graph.clone(),
        claimed_type: FiniteGroup::gendih(&[k])?,
        perms,
        witness: None,
        construction: Construction::Prop1,
    })
}

fn require_dihedral(group: &FiniteGroup) -> Result<()> {
    if group.is_dihedral() {
        Ok(())
    } else {
        Err(Error::Construction(format!(
            "a generalized dihedral group is required, got {group}"
        )))
    }
}

/// The first `a` in `A` for which exactly one of `y*a`, `y*a^-1` lies in `S`.
fn witness_violation(
    group: &FiniteGroup,
    set: &ConnectionSet,
    y: &GroupElement,
) -> Result<Option<GroupElement>> {
    for a in group.abelian_elements() {
        let ya = group.mul(y, &a)?;
        let ya_inv = group.mul(y, &group.inv(&a)?)?;
        if set.contains(&ya) != set.contains(&ya_inv) {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// Every `y` in `xA` satisfying the witness condition, in canonical order.
pub fn all_witnesses(group: &FiniteGroup, set: &ConnectionSet) -> Result<Vec<GroupElement>> {
    require_dihedral(group)?;
    let mut out = Vec::new();
    for y in group.coset_elements() {
        if witness_violation(group, set, &y)?.is_none() {
            out.push(y);
        }
    }
    Ok(out)
}

/// The first witness `y` in `xA` in canonical order, if any.
pub fn find_witness_y(group: &FiniteGroup, set: &ConnectionSet) -> Result<Option<GroupElement>> {
    require_dihedral(group)?;
    for y in group.coset_elements() {
        if witness_violation(group, set, &y)?.is_none() {
            return Ok(Some(y));
        }
    }
    Ok(None)
}

/// Errors with [`Error::InvalidWitness`] unless `y` is in `xA` and satisfies
/// the witness condition for `set`.
pub fn check_witness(group: &FiniteGroup, set: &ConnectionSet, y: &GroupElement) -> Result<()> {
    require_dihedral(group)?;
    if !group.contains(y) || !y.flip {
        return Err(Error::Construction(format!(
            "witness {} is not in the coset xA",
            if group.contains(y) { group.token(y) } else { format!("{y:?}") }
        )));
    }
    match witness_violation(group, set, y)? {
        None => Ok(()),
        Some(a) => Err(Error::InvalidWitness {
            witness: group.token(y),
            violating: group.token(&a),
        }),
    }
}

/// Certificate that `Cay(Dih(A, x), S)` is also a Cayley graph on `A x C_2`,
/// given a witness `y`.
pub fn thm2_certificate(graph: &CayleyGraph, y: &GroupElement) -> Result<RegularCertificate> {
    let group = graph.group();
    check_witness(group, graph.connection(), y)?;
    let n = graph.n();
    let alphas = group
        .abelian_elements()
        .map(|a| right_multiplication(group, &a))
        .collect::<Result<Vec<_>>>()?;
    let beta = left_multiplication(group, y)?;
    self_check(beta.pow(2).is_identity(), "beta^2 = id")?;
    for alpha in &alphas {
        self_check(
            compose(&beta, alpha)? == compose(alpha, &beta)?,
            "beta commutes with every alpha_a",
        )?;
    }
    if let Some((u, v)) = graph.graph().first_broken_edge(&beta) {
        return Err(Error::SelfCheck(format!("beta breaks edge {{{u}, {v}}}")));
    }
    let mut gens = alphas;
    gens.push(beta);
    let perms = generate_group(n, &gens, n)?;
    self_check(perms.order() == 2 * group.abelian_order(), "|H| = 2|A|")?;
    self_check(is_regular(&perms, n), "H is regular")?;
    self_check(perms.is_abelian(), "H is abelian")?;
    Ok(RegularCertificate {
        graph: graph.clone(),
        claimed_type: FiniteGroup::new(group.abelian_part().times_c2(), false)?,
        perms,
        witness: Some(y.clone()),
        construction: Construction::Thm2,
    })
}

/// For each abelian part (an inverse-closed subset of `A` without the
/// identity) and each `y` in `xA`, the set `part ∪ {y}`. Such a set meets
/// `xA` in one element, so `y` is always a witness for it.
pub fn single_coset_sets<I>(group: &FiniteGroup, abelian_parts: I) -> Result<Vec<ConnectionSet>>
where
    I: IntoIterator<Item = Vec<GroupElement>>,
{
    require_dihedral(group)?;
    let mut out = Vec::new();
    for part in abelian_parts {
        if let Some(bad) = part.iter().find(|g| g.flip) {
            return Err(Error::Construction(format!(
                "abelian part contains coset element {}",
                group.token(bad)
            )));
        }
        for y in group.coset_elements() {
            let mut raw = part.clone();
            raw.push(y);
            out.push(validate_connection_set(group, &raw)?);
        }
    }
    Ok(out)
}

/// Every inverse-closed identity-free subset of `A`, as element lists.
pub fn abelian_parts(group: &FiniteGroup) -> Vec<Vec<GroupElement>> {
    let pairs = inverse_pairs(group, |g| !g.flip);
    crate::cayley::inverse_closed_subsets(group, pairs)
        .map(|s| s.elements())
        .collect()
}

/// The right regular representation packaged as a certificate.
pub fn translations_certificate(graph: &CayleyGraph) -> RegularCertificate {
    RegularCertificate {
        graph: graph.clone(),
        claimed_type: graph.group().clone(),
        perms: crate::cayley::right_translations(graph.group()),
        witness: None,
        construction: Construction::Translations,
    }
}
