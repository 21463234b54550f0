//! Zeros of Hardy's Z on the critical line, zero catalogs and the exact
//! counting function.

mod catalog;
mod scan;

pub use catalog::{load_catalog, save_catalog, CatalogSource, ZeroCatalog, FIRST_ZERO_LOWER_BOUND};
pub use scan::{check_refinement, find_zeros, find_zeros_partitioned, RefinementCheck, ScanConfig};
