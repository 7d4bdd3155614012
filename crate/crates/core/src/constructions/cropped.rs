use super::ConstructionError;
use crate::exactgeom::{GeomError, HPolytope, LinearRow, RatVector};
use crate::rational::{half, int};

pub const MAX_CROPPED_DIM: usize = 20;

/// The cropped cube: for every `J ⊆ {0..n-1}`,
/// `Σ_{i∈J} x_i + Σ_{i∉J} (1 − x_i) ≥ 1/2`, followed by the box rows.
///
/// Rows are ordered by the bitmask of `J`.
pub fn cropped_cube(n: usize) -> Result<HPolytope, ConstructionError> {
    if n == 0 {
        return Err(GeomError::ZeroDimension.into());
    }
    if n > MAX_CROPPED_DIM {
        return Err(ConstructionError::TooLarge {
            what: "cropped cube dimension",
            value: n,
            limit: MAX_CROPPED_DIM,
        });
    }
    let mut rows = Vec::with_capacity((1 << n) + 2 * n);
    for mask in 0u64..(1u64 << n) {
        let coeffs: RatVector = (0..n)
            .map(|i| int(if mask >> i & 1 == 1 { 1 } else { -1 }))
            .collect();
        let outside = n as i64 - mask.count_ones() as i64;
        rows.push(LinearRow::ge(coeffs, half() - int(outside)));
    }
    rows.extend(HPolytope::unit_cube(n).into_rows());
    Ok(HPolytope::new(n, rows)?)
}
