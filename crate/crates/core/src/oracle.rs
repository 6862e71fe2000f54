//! Brute-force ground truth: automorphism groups, regular subgroups, and
//! certificate verification.
//!
//! The refined automorphism search is a small individualization-refinement
//! procedure. Along a fixed "left" path it individualizes base points
//! `b_0, b_1, …` (least vertex of the smallest non-singleton cell) and
//! refines to an equitable coloring after each step. For every level `i`
//! it then finds the orbit of `b_i` under the pointwise stabilizer of
//! `b_0..b_{i-1}` by searching, for each candidate image, for one
//! automorphism realizing it. The product of those orbit lengths is the
//! exact group order and the automorphisms found generate the group.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use itertools::Itertools;
use serde::Serialize;

use crate::cayley::CayleyGraph;
use crate::constructions::RegularCertificate;
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::group::{catalog, FiniteGroup};
use crate::iso::{find_isomorphism, ToGroupTable};
use crate::perm::{generate_group, is_regular, PermGroup, Permutation};

/// Default cap on the size of a materialized automorphism group.
pub const DEFAULT_MAX_AUT: usize = 100_000;
/// Largest vertex count for which regular subgroups are enumerated.
pub const MAX_REGULAR_SEARCH_N: usize = 16;
/// Largest vertex count accepted by the factorial search.
pub const MAX_FACTORIAL_N: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AutMode {
    /// Individualization-refinement backtracking.
    Refined,
    /// Filter all `n!` permutations; `n <= 8` only.
    Factorial,
}

#[derive(Clone, Debug)]
pub struct AutResult {
    pub graph_n: usize,
    pub generators: Vec<Permutation>,
    /// Exact group order.
    pub order: u128,
    /// Every automorphism, sorted, when `order` is within the element cap.
    pub elements: Option<Vec<Permutation>>,
}

impl AutResult {
    /// The full element list, or a resource-limit error when it was not
    /// materialized.
    pub fn elements(&self) -> Result<&[Permutation]> {
        self.elements.as_deref().ok_or(Error::ResourceLimit {
            what: "automorphism group element list",
            limit: 0,
            reached: usize::try_from(self.order).unwrap_or(usize::MAX),
        })
    }

    pub fn as_group(&self) -> Result<PermGroup> {
        PermGroup::from_parts(self.graph_n, self.generators.clone(), self.elements()?.to_vec())
    }
}

/// Computes `Aut(graph)`, materializing the element list when the order is
/// at most `max_elements`.
pub fn automorphism_group(graph: &SimpleGraph, mode: AutMode, max_elements: usize) -> Result<AutResult> {
    match mode {
        AutMode::Refined => refined(graph, max_elements),
        AutMode::Factorial => factorial(graph, max_elements),
    }
}

fn factorial(graph: &SimpleGraph, max_elements: usize) -> Result<AutResult> {
    let n = graph.n();
    if n > MAX_FACTORIAL_N {
        return Err(Error::Unsupported(format!(
            "factorial automorphism search needs at most {MAX_FACTORIAL_N} vertices, got {n}"
        )));
    }
    let elements: Vec<Permutation> = (0..n)
        .permutations(n)
        .map(Permutation::from_images_unchecked)
        .filter(|p| graph.is_automorphism(p))
        .sorted()
        .collect();
    let order = elements.len() as u128;
    let generators: Vec<Permutation> = elements.iter().filter(|p| !p.is_identity()).cloned().collect();
    Ok(AutResult {
        graph_n: n,
        generators,
        order,
        elements: (elements.len() <= max_elements).then_some(elements),
    })
}

/// A vertex coloring with colors `0..num`, plus the record of how it was
/// refined. Two colorings reached along corresponding paths can only be
/// matched by an automorphism when their traces agree.
#[derive(Clone, Debug)]
struct Coloring {
    colors: Vec<usize>,
    num: usize,
    trace: Vec<(usize, Vec<usize>, usize)>,
}

impl Coloring {
    fn is_discrete(&self) -> bool {
        self.num == self.colors.len()
    }

    /// Smallest non-singleton cell (ties to the lowest color).
    fn target_cell(&self) -> Option<usize> {
        let mut sizes = vec![0usize; self.num];
        for &c in &self.colors {
            sizes[c] += 1;
        }
        (0..self.num)
            .filter(|&c| sizes[c] > 1)
            .min_by_key(|&c| (sizes[c], c))
    }

    fn cell(&self, color: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.colors.len()).filter(move |&v| self.colors[v] == color)
    }
}

struct Refiner<'g> {
    graph: &'g SimpleGraph,
}

impl Refiner<'_> {
    /// Iterates "color by (own color, sorted neighbor colors)" until the
    /// number of colors stops growing. New colors are ranks of the sorted
    /// signatures, so the result is equivariant under relabeling.
    fn refine(&self, mut colors: Vec<usize>, mut num: usize) -> Coloring {
        let n = self.graph.n();
        let mut trace = Vec::new();
        loop {
            let sigs: Vec<(usize, Vec<usize>)> = (0..n)
                .map(|v| {
                    let mut nb: Vec<usize> = self.graph.neighbors(v).iter().map(|&u| colors[u]).collect();
                    nb.sort_unstable();
                    (colors[v], nb)
                })
                .collect();
            let mut counts: BTreeMap<&(usize, Vec<usize>), usize> = BTreeMap::new();
            for s in &sigs {
                *counts.entry(s).or_default() += 1;
            }
            let rank: HashMap<&(usize, Vec<usize>), usize> =
                counts.keys().enumerate().map(|(i, s)| (*s, i)).collect();
            let new_num = counts.len();
            trace.extend(counts.iter().map(|(s, &c)| (s.0, s.1.clone(), c)));
            let next: Vec<usize> = sigs.iter().map(|s| rank[s]).collect();
            let stable = new_num == num;
            colors = next;
            num = new_num;
            if stable {
                break;
            }
        }
        Coloring { colors, num, trace }
    }

    fn root(&self) -> Coloring {
        self.refine(vec![0; self.graph.n()], if self.graph.n() == 0 { 0 } else { 1 })
    }

    fn individualize(&self, c: &Coloring, v: usize) -> Coloring {
        let mut colors = c.colors.clone();
        colors[v] = c.num;
        let mut out = self.refine(colors, c.num + 1);
        out.trace.insert(0, (c.colors[v], Vec::new(), usize::MAX));
        out
    }
}

struct Search<'g> {
    refiner: Refiner<'g>,
    /// Left path colorings; `path[i]` is the coloring before individualizing `base[i]`.
    path: Vec<Coloring>,
    base: Vec<usize>,
}

impl<'g> Search<'g> {
    fn new(graph: &'g SimpleGraph) -> Self {
        let refiner = Refiner { graph };
        let mut path = vec![refiner.root()];
        let mut base = Vec::new();
        while let Some(color) = path.last().unwrap().target_cell() {
            let current = path.last().unwrap();
            let b = current.cell(color).next().expect("non-empty cell");
            let next = refiner.individualize(current, b);
            base.push(b);
            path.push(next);
        }
        Search { refiner, path, base }
    }

    fn target_color(&self, level: usize) -> usize {
        self.path[level].colors[self.base[level]]
    }

    /// Some automorphism extending the right-hand coloring `right` at `level`.
    fn find_leaf(&self, level: usize, right: &Coloring) -> Option<Permutation> {
        if level == self.base.len() {
            let left = &self.path[level];
            debug_assert!(right.is_discrete());
            let mut by_color = vec![0; right.num];
            for (u, &c) in right.colors.iter().enumerate() {
                by_color[c] = u;
            }
            let p = Permutation::from_images_unchecked(left.colors.iter().map(|&c| by_color[c]).collect());
            return self.refiner.graph.is_automorphism(&p).then_some(p);
        }
        let color = self.target_color(level);
        for w in right.cell(color) {
            let next = self.refiner.individualize(right, w);
            if next.trace == self.path[level + 1].trace {
                if let Some(p) = self.find_leaf(level + 1, &next) {
                    return Some(p);
                }
            }
        }
        None
    }
}

fn orbit_of(point: usize, gens: &[Permutation]) -> BTreeSet<usize> {
    let mut orbit = BTreeSet::from([point]);
    let mut stack = vec![point];
    while let Some(v) = stack.pop() {
        for g in gens {
            let w = g.apply(v);
            if orbit.insert(w) {
                stack.push(w);
            }
        }
    }
    orbit
}

fn refined(graph: &SimpleGraph, max_elements: usize) -> Result<AutResult> {
    let n = graph.n();
    let search = Search::new(graph);
    let mut gens: Vec<Permutation> = Vec::new();
    let mut order: u128 = 1;
    for level in (0..search.base.len()).rev() {
        let b = search.base[level];
        let mut orbit = orbit_of(b, &gens);
        let candidates: Vec<usize> = search.path[level].cell(search.target_color(level)).collect();
        for w in candidates {
            if orbit.contains(&w) {
                continue;
            }
            let right = search.refiner.individualize(&search.path[level], w);
            if right.trace != search.path[level + 1].trace {
                continue;
            }
            if let Some(p) = search.find_leaf(level + 1, &right) {
                debug_assert_eq!(p.apply(b), w);
                gens.push(p);
                orbit = orbit_of(b, &gens);
            }
        }
        order *= orbit.len() as u128;
    }
    let elements = if order <= max_elements as u128 {
        Some(generate_group(n, &gens, max_elements)?.elements().to_vec())
    } else {
        None
    };
    Ok(AutResult {
        graph_n: n,
        generators: gens,
        order,
        elements,
    })
}

/// One isomorphism class of regular subgroups.
#[derive(Clone, Debug)]
pub struct RegularClass {
    /// Group-spec label of the matching catalog group, `None` when no
    /// constructible group of this order matches.
    pub label: Option<String>,
    pub order_profile: Vec<(u64, usize)>,
    pub representative: PermGroup,
    /// Number of distinct regular subgroups in this class.
    pub count: usize,
}

impl RegularClass {
    pub fn label_or_unrecognized(&self) -> String {
        self.label.clone().unwrap_or_else(|| "unrecognized".to_string())
    }
}

#[derive(Clone, Debug)]
pub struct RegularClassReport {
    pub graph_n: usize,
    pub classes: Vec<RegularClass>,
    pub total_regular_subgroups: usize,
}

impl RegularClassReport {
    pub fn labels(&self) -> Vec<String> {
        self.classes.iter().map(RegularClass::label_or_unrecognized).collect()
    }
}

/// Every regular subgroup of `aut`, grouped by isomorphism type.
pub fn enumerate_regular_subgroups(graph: &SimpleGraph, aut: &AutResult) -> Result<RegularClassReport> {
    let n = graph.n();
    if n > MAX_REGULAR_SEARCH_N {
        return Err(Error::ResourceLimit {
            what: "regular subgroup search vertex count",
            limit: MAX_REGULAR_SEARCH_N,
            reached: n,
        });
    }
    let elements = aut.elements().map_err(|_| Error::ResourceLimit {
        what: "automorphism group element list (raise --max-aut)",
        limit: 0,
        reached: usize::try_from(aut.order).unwrap_or(usize::MAX),
    })?;
    let found = regular_subgroups(n, elements)?;
    let total = found.len();

    let cat = catalog(n);
    let mut classes: Vec<RegularClass> = Vec::new();
    for group in found {
        let table = group.to_table();
        if let Some(existing) = classes.iter_mut().find(|c| {
            crate::iso::isomorphism_between_tables(&c.representative.to_table(), &table).is_some()
        }) {
            existing.count += 1;
            continue;
        }
        let mut label = None;
        for candidate in &cat {
            if crate::iso::isomorphism_between_tables(&candidate.to_table(), &table).is_some() {
                label = Some(candidate.to_string());
                break;
            }
        }
        classes.push(RegularClass {
            label,
            order_profile: table.order_profile(),
            representative: group,
            count: 1,
        });
    }
    classes.sort_by(|a, b| {
        (a.label.is_none(), &a.label, &a.order_profile).cmp(&(b.label.is_none(), &b.label, &b.order_profile))
    });
    Ok(RegularClassReport {
        graph_n: n,
        classes,
        total_regular_subgroups: total,
    })
}

/// All regular subgroups of the group with element list `elements`, by
/// choosing for each uncovered vertex the element that sends 0 to it.
fn regular_subgroups(n: usize, elements: &[Permutation]) -> Result<Vec<PermGroup>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    // non-identity elements of a regular group have no fixed points
    let mut by_image: Vec<Vec<&Permutation>> = vec![Vec::new(); n];
    for p in elements {
        if !p.has_fixed_point() {
            by_image[p.apply(0)].push(p);
        }
    }
    let mut seen: BTreeSet<Vec<Permutation>> = BTreeSet::new();
    let mut out = Vec::new();
    let mut chosen: Vec<Permutation> = Vec::new();
    let start = generate_group(n, &[], 1)?;
    extend_regular(n, &by_image, &start, &mut chosen, &mut seen, &mut out)?;
    Ok(out)
}

fn extend_regular(
    n: usize,
    by_image: &[Vec<&Permutation>],
    current: &PermGroup,
    chosen: &mut Vec<Permutation>,
    seen: &mut BTreeSet<Vec<Permutation>>,
    out: &mut Vec<PermGroup>,
) -> Result<()> {
    if current.order() == n {
        if seen.insert(current.elements().to_vec()) {
            out.push(current.clone());
        }
        return Ok(());
    }
    let mut covered = vec![false; n];
    for g in current.elements() {
        covered[g.apply(0)] = true;
    }
    let v = (0..n).find(|&v| !covered[v]).expect("order below n");
    for &g in &by_image[v] {
        chosen.push(g.clone());
        let next = match generate_group(n, chosen, n) {
            Ok(group) => Some(group),
            Err(Error::ResourceLimit { .. }) => None,
            Err(e) => return Err(e),
        };
        if let Some(group) = next {
            // trivial stabilizer of 0: every element sends 0 somewhere different
            let images: BTreeSet<usize> = group.elements().iter().map(|p| p.apply(0)).collect();
            if images.len() == group.order() && n.is_multiple_of(group.order()) {
                extend_regular(n, by_image, &group, chosen, seen, out)?;
            }
        }
        chosen.pop();
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckOutcome>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Re-checks a certificate from scratch: automorphisms, closure, regularity,
/// isomorphism type.
pub fn verify_certificate(cert: &RegularCertificate) -> VerificationReport {
    verify_claim(cert.graph.graph(), &cert.perms, &cert.claimed_type)
}

pub fn verify_claim(graph: &SimpleGraph, perms: &PermGroup, claimed: &FiniteGroup) -> VerificationReport {
    let n = graph.n();
    let mut checks = Vec::with_capacity(4);

    let mut broken = None;
    for p in perms.elements().iter().chain(perms.generators()) {
        if p.degree() != n {
            broken = Some(format!("permutation {p} has degree {} on {n} vertices", p.degree()));
            break;
        }
        if let Some((u, v)) = graph.first_broken_edge(p) {
            broken = Some(format!(
                "{p} maps edge {{{u}, {v}}} to non-edge {{{}, {}}}",
                p.apply(u),
                p.apply(v)
            ));
            break;
        }
    }
    checks.push(CheckOutcome {
        name: "automorphisms",
        passed: broken.is_none(),
        detail: broken,
    });

    let closed = perms.degree() == n && perms.is_closed();
    checks.push(CheckOutcome {
        name: "closure",
        passed: closed,
        detail: (!closed).then(|| closure_counterexample(perms)),
    });

    let regular = is_regular(perms, n);
    checks.push(CheckOutcome {
        name: "regular",
        passed: regular,
        detail: (!regular).then(|| regularity_counterexample(perms, n)),
    });

    let iso = if !closed {
        Err("not a group".to_string())
    } else {
        match find_isomorphism(claimed, perms) {
            Ok(Some(_)) => Ok(()),
            Ok(None) => Err(format!("not isomorphic to {claimed}")),
            Err(e) => Err(e.to_string()),
        }
    };
    checks.push(CheckOutcome {
        name: "isomorphism",
        passed: iso.is_ok(),
        detail: iso.err(),
    });
    VerificationReport { checks }
}

fn closure_counterexample(perms: &PermGroup) -> String {
    if !perms.contains(&Permutation::identity(perms.degree())) {
        return "identity missing".into();
    }
    for a in perms.elements() {
        for b in perms.elements() {
            if let Ok(ab) = crate::perm::compose(a, b) {
                if !perms.contains(&ab) {
                    return format!("{a} * {b} = {ab} is not listed");
                }
            }
        }
    }
    "a generator is not listed".into()
}

fn regularity_counterexample(perms: &PermGroup, n: usize) -> String {
    if perms.order() != n {
        return format!("order {} differs from vertex count {n}", perms.order());
    }
    let orbit = perms.orbit(0);
    match (0..n).find(|v| orbit.binary_search(v).is_err()) {
        Some(v) => format!("no element maps 0 to {v}"),
        None => "not transitive".into(),
    }
}

/// Convenience wrapper: refined automorphism group of a Cayley graph.
pub fn cayley_automorphisms(graph: &CayleyGraph, max_elements: usize) -> Result<AutResult> {
    automorphism_group(graph.graph(), AutMode::Refined, max_elements)
}
