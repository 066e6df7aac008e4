//! Word geometry of multiple HNN extensions over abelian and free bases.
//!
//! Elements are handled through canonical normal forms, so Cayley balls can
//! be built by plain breadth-first search and then probed for almost
//! convexity and fellow-traveller constants.

pub mod base_groups;
pub mod cayley;
pub mod convexity;
pub mod error;
pub mod hnn;
pub mod presets;
pub mod smith;
pub mod specfile;
pub mod subgroups;
pub mod words;

pub use base_groups::{AbelianElement, AbelianGroup, BaseGroup, FreeGroup};
pub use cayley::{build_ball, Ball, ExportFormat, GeodesicCache, GroupOracle, DEFAULT_ELEMENT_CAP};
pub use error::{Error, Result};
pub use hnn::{HnnGroup, NormalForm};
pub use presets::{preset, preset_spec, PRESETS};
pub use specfile::{AnyGroup, GroupSpec};
pub use subgroups::{CyclicSubgroup, StallingsSubgroup, SubgroupOracle, SubgroupWord};
pub use words::{Alphabet, Generator, GeneratorKind, Letter, Word};
