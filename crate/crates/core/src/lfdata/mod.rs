//! Local field data over `Q_2`: square classes, field records, quadratic
//! tower sums and the wild mass of `W(D_4)`.

pub mod d4;
pub mod eisenstein;
pub mod perm;
pub mod records;
pub mod sqclass;

pub use d4::{assemble_d4, d4_audit_first_principles, d4_mass_from_data, D4Audit, D4_CLASSES};
pub use eisenstein::{tower_census, TowerCensus};
pub use perm::{c123_check, C123Row};
pub use records::{
    parse_records, tower_log_terms, LocalFieldRecord, LocalFieldTable, SubfieldRef, TowerLogTerms,
};
pub use sqclass::SquareClass;
