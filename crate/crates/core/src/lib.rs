//! LTL satisfiability preprocessing: formulas are translated into separated
//! normal form and then into specifications `(Σ, I, T, G)`, which are
//! simplified by labelled variable and clause elimination. An explicit-state
//! Büchi checker serves as the reference for satisfiability.

pub mod eliminate;
pub mod formula;
pub mod labelled;
pub mod oracle;
pub mod par;
pub mod snf;
pub mod specification;

pub use eliminate::{simplify, simplify_specification, EliminationReport, Mode, SimplifyConfig};
pub use formula::Formula;
pub use labelled::{Label, LabelledClause, LabelledClauseSet};
pub use oracle::{check, CheckOptions, Verdict};
pub use par::Execution;
pub use snf::{snf_transform, SnfMode};
pub use specification::{from_snf, parse_spec, render_spec, Specification};
