//! Cayley graphs on finite abelian and generalized dihedral groups, with
//! certificates for alternative regular representations and a brute-force
//! automorphism oracle to check them against.
//!
//! A graph is a Cayley graph on a group `G` exactly when its automorphism
//! group contains a regular subgroup isomorphic to `G`. This crate builds
//! such subgroups explicitly:
//!
//! * every even circulant `Cay(Z_{2k}, S)` is also Cayley on the dihedral
//!   group of order `2k` ([`constructions::prop1_certificate`]);
//! * `Cay(Dih(A, x), S)` is also Cayley on `A x C_2` whenever some `y` in
//!   `xA` satisfies the witness condition ([`constructions::thm2_certificate`]).
//!
//! ```
//! use cayley_core::cayley::cayley_graph;
//! use cayley_core::constructions::prop1_certificate;
//! use cayley_core::oracle::verify_certificate;
//!
//! let hexagon = cayley_graph("cyclic:6", "1,5")?;
//! let cert = prop1_certificate(&hexagon)?;
//! assert_eq!(cert.claimed_type.to_string(), "gendih:3");
//! assert!(verify_certificate(&cert).passed());
//! # Ok::<(), cayley_core::Error>(())
//! ```
//!
//! The guide under `book/` walks through each module; its code blocks are
//! compiled and run as doc-tests of this crate.

pub mod cayley;
pub mod census;
pub mod certfile;
pub mod constructions;
pub mod error;
pub mod export;
pub mod graph;
pub mod group;
pub mod iso;
pub mod oracle;
pub mod perm;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/permutations.md")]
    mod permutations {}
    #[doc = include_str!("../../../book/src/groups.md")]
    mod groups {}
    #[doc = include_str!("../../../book/src/cayley-graphs.md")]
    mod cayley_graphs {}
    #[doc = include_str!("../../../book/src/circulants.md")]
    mod circulants {}
    #[doc = include_str!("../../../book/src/generalized-dihedral.md")]
    mod generalized_dihedral {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/census.md")]
    mod census {}
}
