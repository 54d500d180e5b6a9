//! Exit path simplicial sets of linked spans.
//!
//! A linked span `M ←π− L −ι→ N` (with `ι` a monomorphism) determines a
//! simplicial set `Ex` whose vertices are those of `M ⨿ N` and whose higher
//! simplices add non-invertible "exit paths" from `M` into `N`, indexed by
//! exit shuffles of prisms. This crate builds `Ex` for finitely generated
//! inputs and checks its structure exhaustively up to a dimension bound:
//!
//! * [`simplicial`]: finitely generated simplicial sets in Eilenberg–Zilber
//!   normal form, maps between them, nerves of posets.
//! * [`shuffle`]: exit shuffles, collapses and the `♭`/`♯` index calculus.
//! * [`exit`]: exit path membership, faces and degeneracies, and the
//!   construction of `Ex` as a simplicial set.
//! * [`verify`]: simplicial identities, horn filling, lifting properties and
//!   isomorphism checks, all reported with concrete counterexamples.
//! * [`gallery`]: named example spans with their expected properties.
//! * [`format`]: the plain-text document format for sets, maps and spans.

pub mod exit;
pub mod format;
pub mod gallery;
pub mod shuffle;
pub mod simplicial;
pub mod verify;

pub use exit::{ExitComplex, ExitError, ExitPath, ExitSimplex, LinkedSpan};
pub use simplicial::{FormalSimplex, Operator, SimplicialMap, SimplicialSet};
