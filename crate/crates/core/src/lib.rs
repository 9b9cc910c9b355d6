//! Milnor triple linking numbers of oriented links, computed along two
//! independent routes and cross-validated against each other:
//!
//! * the diagram route: PD codes, Wirtinger presentations, and
//!   longitudes rewritten in preferred meridians whose Magnus
//!   coefficients carry the invariants ([`diagram`], [`milnor`],
//!   [`words`]);
//! * the surface route: combinatorial Seifert-surface intersection
//!   patterns, where the invariant is the cyclic pair-count sum minus
//!   the signed triple point count ([`surfaces`]);
//! * a generator of links with prescribed pairwise and triple linking
//!   numbers, emitted in both input formats ([`builder`]).
//!
//! [`verify`] holds the seeded property suites behind the CLI `verify`
//! command.

pub mod builder;
pub mod diagram;
pub mod milnor;
pub mod surfaces;
pub mod verify;
pub mod words;

pub use builder::Prescription;
pub use diagram::{LinkDiagram, LongitudeWord, WirtingerPresentation};
pub use milnor::Residue;
pub use surfaces::SurfacePattern;
pub use words::{Letter, Sign, TruncatedSeries, Word};
