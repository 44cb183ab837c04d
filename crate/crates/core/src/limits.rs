//! Enumeration bounds. Exceeding one is a hard `TooLarge` error, never a
//! silent truncation. `MMLAB_MAX_ORDER` raises (or lowers) every bound that is
//! expressed as a number of skew classes or graph vertices.

use std::sync::OnceLock;

use crate::{Error, Result};

pub const MATROID_ELEMENTS: usize = 16;
pub const CIRCUIT_LIST_CHECK: usize = 12;
pub const CYCLE_SPACE_COLUMNS: usize = 24;
pub const TUTTE_DIAGONAL_ELEMENTS: usize = 10;

pub const MM_ORDER: usize = 8;
pub const MM_CLASS_SIZE: usize = 4;
pub const ISO_ORDER: usize = 5;
pub const ISO_CLASS_SIZE: usize = 3;
pub const CYCLE_SPACE_ORDER: usize = 6;
pub const ORT_ORDER: usize = 7;
pub const EVAL_ORDER: usize = 6;
pub const INTERLACE_VERTICES: usize = 12;
pub const GLOBAL_INTERLACE_VERTICES: usize = 9;
pub const EULERIAN_VERTICES: usize = 20;
pub const ORT_EULERIAN_VERTICES: usize = 12;
pub const MINOR_SCAN_ORDER: usize = 6;
pub const STRONGLY_BINARY_ORDER: usize = 10;
pub const CLASSIFY_ORDER: usize = 5;
pub const EXTENSION_ORDER: usize = 4;
pub const BASIS_PARITY_ORDER: usize = 5;
/// Isotropic builds re-validate tightness up to this order.
pub const VALIDATE_ORDER: usize = 6;

fn override_order() -> Option<usize> {
    static CELL: OnceLock<Option<usize>> = OnceLock::new();
    *CELL.get_or_init(|| std::env::var("MMLAB_MAX_ORDER").ok()?.trim().parse().ok())
}

/// Effective bound for an order-like quantity.
pub fn order_bound(default: usize) -> usize {
    override_order().unwrap_or(default)
}

pub fn check_order(what: &'static str, size: usize, default: usize) -> Result<()> {
    check(what, size, order_bound(default))
}

pub fn check(what: &'static str, size: usize, bound: usize) -> Result<()> {
    if size > bound {
        Err(Error::TooLarge { what, size, bound })
    } else {
        Ok(())
    }
}
