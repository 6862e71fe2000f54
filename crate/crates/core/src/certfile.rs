//! On-disk form of a [`RegularCertificate`].
//!
//! The file stores the graph by group spec and connection-set tokens and the
//! permutation group as explicit image lists, so a reader can re-derive the
//! graph and re-check every claim without trusting the writer.

use serde::{Deserialize, Serialize};

use crate::cayley::{build_cayley_graph, ConnectionSet};
use crate::constructions::{Construction, RegularCertificate};
use crate::error::{Error, Result};
use crate::group::build_group;
use crate::oracle::{verify_claim, VerificationReport};
use crate::perm::{PermGroup, Permutation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub construction: Construction,
    pub group_spec: String,
    pub connection_set: Vec<String>,
    pub claimed_type: String,
    pub witness: Option<String>,
    pub degree: usize,
    pub generators: Vec<Permutation>,
    pub elements: Vec<Permutation>,
}

impl From<&RegularCertificate> for CertificateFile {
    fn from(cert: &RegularCertificate) -> Self {
        let group = cert.graph.group();
        CertificateFile {
            construction: cert.construction,
            group_spec: group.to_string(),
            connection_set: cert.graph.connection().tokens(),
            claimed_type: cert.claimed_type.to_string(),
            witness: cert.witness.as_ref().map(|w| group.token(w)),
            degree: cert.perms.degree(),
            generators: cert.perms.generators().to_vec(),
            elements: cert.perms.elements().to_vec(),
        }
    }
}

impl CertificateFile {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// Rebuilds the graph from its spec and re-checks the stored group.
    /// Malformed fields are errors; failed claims are report content.
    pub fn verify(&self) -> Result<VerificationReport> {
        let group = build_group(&self.group_spec)?;
        let set = ConnectionSet::parse(&group, &self.connection_set.join(","))?;
        let graph = build_cayley_graph(&set);
        let claimed = build_group(&self.claimed_type)?;
        if let Some(w) = &self.witness {
            group.parse_token(w)?;
        }
        if self.degree != graph.n() {
            return Err(Error::Format(format!(
                "certificate degree {} does not match the {}-vertex graph",
                self.degree,
                graph.n()
            )));
        }
        let perms = PermGroup::from_parts(self.degree, self.generators.clone(), self.elements.clone())?;
        Ok(verify_claim(graph.graph(), &perms, &claimed))
    }
}
