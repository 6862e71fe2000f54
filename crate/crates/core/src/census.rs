//! Bulk runs of the two constructions over many connection sets, written as
//! JSON Lines.

use std::io::Write;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cayley::{build_cayley_graph, inverse_pairs, subset_from_mask, ConnectionSet};
use crate::constructions::{all_witnesses, prop1_certificate, thm2_certificate, Construction};
use crate::error::{Error, Result};
use crate::group::{build_group, invariant_factor_lists, FiniteGroup};
use crate::oracle::{
    automorphism_group, enumerate_regular_subgroups, verify_certificate, AutMode, DEFAULT_MAX_AUT,
    MAX_FACTORIAL_N, MAX_REGULAR_SEARCH_N,
};

/// Exhaustive runs are limited to groups of at most this order.
pub const DEFAULT_MAX_EXHAUSTIVE_ORDER: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Prop1,
    Thm2,
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "prop1" => Ok(Family::Prop1),
            "thm2" => Ok(Family::Thm2),
            other => Err(Error::Parse {
                input: other.to_string(),
                position: 0,
                message: "expected prop1 or thm2".into(),
            }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sampling {
    Exhaustive,
    Random { seed: u64, count: usize },
}

#[derive(Clone, Debug)]
pub struct CensusOptions {
    pub family: Family,
    pub sampling: Sampling,
    /// Run the automorphism oracle on every row (regular classes, and a
    /// factorial cross-check for graphs on at most 8 vertices).
    pub oracle: bool,
    pub max_exhaustive_order: usize,
    pub max_aut: usize,
    /// Record wall-clock time per row. Off by default so output is reproducible.
    pub timings: bool,
}

impl CensusOptions {
    pub fn new(family: Family) -> Self {
        CensusOptions {
            family,
            sampling: Sampling::Exhaustive,
            oracle: false,
            max_exhaustive_order: DEFAULT_MAX_EXHAUSTIVE_ORDER,
            max_aut: DEFAULT_MAX_AUT,
            timings: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub group_spec: String,
    pub connection_set: Vec<String>,
    pub n: usize,
    pub construction: Construction,
    pub witness: Option<String>,
    pub witness_count: Option<usize>,
    pub certificate_ok: bool,
    pub oracle_checked: bool,
    pub regular_classes: Option<Vec<String>>,
    /// For witness-free rows checked by the oracle: whether an abelian
    /// regular subgroup exists anyway.
    pub abelian_without_witness: Option<bool>,
    /// `A` is elementary abelian, so `Dih(A, x)` and `A x C_2` coincide.
    pub degenerate: bool,
    pub edgeless: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl CensusRecord {
    /// A certificate was attempted (every prop1 row, thm2 rows with a
    /// witness) and did not verify, or the oracle disagreed with itself.
    pub fn is_failure(&self) -> bool {
        let attempted = self.construction == Construction::Prop1 || self.witness.is_some();
        attempted && !self.certificate_ok
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CensusSummary {
    pub records: usize,
    pub certificates_ok: usize,
    pub with_witness: usize,
    pub degenerate: usize,
    pub oracle_checked: usize,
    pub oracle_disagreements: usize,
    pub failures: usize,
}

impl CensusSummary {
    /// Share of rows admitting a witness (thm2 only; 1.0 for prop1 runs).
    pub fn witness_admission_rate(&self) -> f64 {
        if self.records == 0 {
            0.0
        } else {
            self.with_witness as f64 / self.records as f64
        }
    }

    pub fn ok(&self) -> bool {
        self.failures == 0 && self.oracle_disagreements == 0
    }
}

/// Groups of a family with order in `lo..=hi`: even cyclic groups for
/// prop1; `Dih(A, x)` over every abelian `A` (invariant-factor form) for thm2.
pub fn family_groups(family: Family, lo: usize, hi: usize) -> Vec<FiniteGroup> {
    match family {
        Family::Prop1 => (lo.max(4)..=hi)
            .filter(|n| n % 2 == 0)
            .filter_map(|n| FiniteGroup::cyclic(n).ok())
            .collect(),
        Family::Thm2 => (lo.max(4).div_ceil(2)..=hi / 2)
            .flat_map(invariant_factor_lists)
            .filter_map(|f| FiniteGroup::gendih(&f).ok())
            .collect(),
    }
}

fn check_group(family: Family, group: &FiniteGroup) -> Result<()> {
    let ok = match family {
        Family::Prop1 => group.is_cyclic_spec() && group.order().is_multiple_of(2) && group.order() >= 4,
        Family::Thm2 => group.is_dihedral(),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Construction(match family {
            Family::Prop1 => format!("proposition requires even circulant of order at least 4, got {group}"),
            Family::Thm2 => format!("a generalized dihedral group is required, got {group}"),
        }))
    }
}

/// Connection sets visited for `group`, in output order.
pub fn census_sets(group: &FiniteGroup, sampling: Sampling) -> Vec<ConnectionSet> {
    let pairs = inverse_pairs(group, |_| true);
    let k = pairs.len();
    match sampling {
        Sampling::Exhaustive => (0u64..1 << k).map(|m| subset_from_mask(group, &pairs, m)).collect(),
        Sampling::Random { seed, count } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count)
                .map(|_| {
                    let mask: u64 = (0..k).fold(0, |acc, bit| acc | (rng.gen::<bool>() as u64) << bit);
                    subset_from_mask(group, &pairs, mask)
                })
                .collect()
        }
    }
}

/// Runs the census over `groups`, writing one JSON line per connection set
/// and flushing after each.
pub fn run_census<W: Write>(groups: &[FiniteGroup], opts: &CensusOptions, sink: &mut W) -> Result<CensusSummary> {
    for g in groups {
        check_group(opts.family, g)?;
        if opts.sampling == Sampling::Exhaustive && g.order() > opts.max_exhaustive_order {
            return Err(Error::ResourceLimit {
                what: "exhaustive census group order",
                limit: opts.max_exhaustive_order,
                reached: g.order(),
            });
        }
        if inverse_pairs(g, |_| true).len() >= 64 {
            return Err(Error::ResourceLimit {
                what: "inverse pairs per group",
                limit: 63,
                reached: inverse_pairs(g, |_| true).len(),
            });
        }
    }
    let mut summary = CensusSummary::default();
    for g in groups {
        for set in census_sets(g, opts.sampling) {
            let record = evaluate(&set, opts)?;
            summary.records += 1;
            summary.certificates_ok += record.certificate_ok as usize;
            summary.with_witness += (record.construction == Construction::Prop1 || record.witness.is_some()) as usize;
            summary.degenerate += record.degenerate as usize;
            summary.oracle_checked += record.oracle_checked as usize;
            summary.failures += record.is_failure() as usize;
            if opts.oracle && !record.oracle_checked && record.regular_classes.is_some() {
                summary.oracle_disagreements += 1;
            }
            serde_json::to_writer(&mut *sink, &record)?;
            sink.write_all(b"\n")?;
            sink.flush()?;
        }
    }
    Ok(summary)
}

/// Evaluates a single census row.
pub fn evaluate(set: &ConnectionSet, opts: &CensusOptions) -> Result<CensusRecord> {
    let start = Instant::now();
    let group = set.group();
    let graph = build_cayley_graph(set);
    let (construction, witness, witness_count, cert) = match opts.family {
        Family::Prop1 => (Construction::Prop1, None, None, Some(prop1_certificate(&graph))),
        Family::Thm2 => {
            let witnesses = all_witnesses(group, set)?;
            let first = witnesses.first().cloned();
            let cert = first.as_ref().map(|y| thm2_certificate(&graph, y));
            (
                Construction::Thm2,
                first.map(|y| group.token(&y)),
                Some(witnesses.len()),
                cert,
            )
        }
    };
    let certificate_ok = match &cert {
        Some(Ok(c)) => verify_certificate(c).passed(),
        _ => false,
    };

    let mut oracle_checked = false;
    let mut regular_classes = None;
    let mut abelian_without_witness = None;
    if opts.oracle && graph.n() <= MAX_REGULAR_SEARCH_N {
        let aut = automorphism_group(graph.graph(), AutMode::Refined, opts.max_aut)?;
        if aut.elements.is_some() {
            let report = enumerate_regular_subgroups(graph.graph(), &aut)?;
            let agrees = if graph.n() <= MAX_FACTORIAL_N {
                let brute = automorphism_group(graph.graph(), AutMode::Factorial, usize::MAX)?;
                brute.elements == aut.elements
            } else {
                true
            };
            let contains_cert = match &cert {
                Some(Ok(c)) => {
                    let all = aut.elements()?;
                    c.perms.elements().iter().all(|p| all.binary_search(p).is_ok())
                }
                _ => true,
            };
            oracle_checked = agrees && contains_cert;
            if opts.family == Family::Thm2 && witness.is_none() {
                abelian_without_witness = Some(report.classes.iter().any(|c| match &c.label {
                    Some(label) => build_group(label).map(|g| g.is_abelian()).unwrap_or(false),
                    None => c.representative.is_abelian(),
                }));
            }
            regular_classes = Some(report.labels());
        }
    }

    Ok(CensusRecord {
        group_spec: group.to_string(),
        connection_set: set.tokens(),
        n: graph.n(),
        construction,
        witness,
        witness_count,
        certificate_ok,
        oracle_checked,
        regular_classes,
        abelian_without_witness,
        degenerate: opts.family == Family::Thm2 && group.abelian_part().is_elementary_abelian_2(),
        edgeless: set.is_empty(),
        elapsed_ms: opts.timings.then(|| start.elapsed().as_millis() as u64),
    })
}
