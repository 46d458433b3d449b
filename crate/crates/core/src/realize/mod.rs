//! Equivalence checks, virtual-source elimination, and realization of flux
//! and mass-action systems as complex-balanced, detailed-balanced, weakly
//! reversible or reversible systems on the input's source vertices.

mod elimination;
mod equivalence;
mod flux;
mod graph_property;
pub mod lp;
mod result;
mod search;

pub use elimination::{
    eliminate_all_virtual_sources, eliminate_virtual_source_flux_cb,
    eliminate_virtual_source_flux_db, eliminate_virtual_source_ma_rev,
    eliminate_virtual_source_ma_wr, eliminate_with, EdgeDelta, EliminationError, EliminationReport,
    EliminationVariant,
};
pub use equivalence::{
    check_dynamical_equivalence, check_flux_equivalence, find_virtual_sources,
    find_virtual_sources_ma,
};
pub use flux::{
    flux_realization_lp, realize_flux_cb, realize_flux_db, realize_ma_cb_at_state,
    realize_ma_db_at_state,
};
pub use graph_property::{realize_ma_rev, realize_ma_wr, scaling_certificate};
pub use result::{
    alpha_balances, verify_flux_realization, verify_mass_action_realization, Certificate, Check,
    Outcome, Realization, RealizationResult, Status, Target,
};
pub use search::{realize_ma_cb_search, SearchConfig};
