//! Desk-scale verification engines: exhaustive extremal search, the greedy
//! matching removal that turns weakly k-closed families into k-closed ones,
//! the oddtown-type pair checker, and the cross-product bound checker.

mod cross;
mod eventown;
mod oddtown;
mod removal;
mod search;

pub use cross::{cross_product_bound_check, CrossReport};
pub use eventown::{complete_eventown, is_eventown, MAX_COMPLETION_N};
pub use oddtown::{oddtown_pairs_check, OddtownReport};
pub use removal::{greedy_removal_to_closed, RemovalRound, RemovalTrace};
pub use search::{
    exhaustive_max_family, SearchConfig, SearchMode, SearchResult, DEFAULT_BUDGET_NODES,
    MAX_SEARCH_N,
};
