//! Bidouble (`Z/2 × Z/2`) covers of rational surfaces: building data, exact
//! intersection theory on the base, invariants of the cover, explicit
//! constructions across the geography of surfaces of general type, their
//! non-Gorenstein degenerations, and a verifiable document format.

pub mod audit;
pub mod cover;
pub mod degenerations;
pub mod document;
pub mod error;
pub mod geography;
pub mod lattice;
pub mod recipes;

pub use cover::{Branch, BuildingData, Component, Invariants, SingularityKind, SingularityLedger};
pub use degenerations::{degenerate, normalize_noether_line, DegenerationCertificate};
pub use error::{Error, Result};
pub use geography::{admissible, atlas, emit, AtlasRow, Format};
pub use lattice::{intersect, Ambient, DivClass, PointLabel, Positivity};
pub use recipes::{classify, construct, ConstructionCertificate, Region};
