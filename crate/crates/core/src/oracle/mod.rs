//! Independent verifiers: a parity-game check for good-for-games
//! nondeterminism, pruning enumeration, bounded lasso sweeps and exhaustive
//! search for small equivalent tDCWs.

pub mod gfg;
pub mod parity;
pub mod search;

pub use gfg::{
    dbp_check, dbp_check_with, gfg_verify, non_gfg_union, GfgStrategy, DEFAULT_DBP_BOUND,
    REPLAY_LASSOS,
};
pub use parity::{ParityGame, Solution};
pub use search::{
    all_lassos, lasso_equiv_bounded, min_tdcw_search_bounded, min_tdcw_search_with,
    sample_lassos, DEFAULT_SEARCH_BOUND,
};
