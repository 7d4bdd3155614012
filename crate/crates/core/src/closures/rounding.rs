use serde::Serialize;

use super::ClosureError;
use crate::constructions::{round_point, HalfIntegralPoint, HalfValue};
use crate::parity::{small_support_subset, ParitySystem};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundingWitness {
    /// Coordinates rounded, a subset of `E(x)`.
    pub j: Vec<usize>,
    /// `x^{(J,0)}`.
    pub down: HalfIntegralPoint,
    /// `x^{(J,1)}`.
    pub up: HalfIntegralPoint,
}

/// Rounds at most `t = pis.len()` fractional coordinates of `x` so that both
/// roundings have integral `π`-values for every `π` in `pis`.
///
/// With `E(x) = {k_1 < … < k_m}`, the parity matrix is `Π_ij = π^i_{k_j} mod 2`
/// and `b_i = 1` iff `π^i x` is fractional; then `Π·1 ≡ b`, and any `J` whose
/// columns sum to `b` works.
pub fn rounding_witness(
    x: &HalfIntegralPoint,
    pis: &[Vec<i64>],
) -> Result<RoundingWitness, ClosureError> {
    let t = pis.len();
    let support = x.fractional_support();
    if support.len() < t {
        return Err(ClosureError::TooFewFractional { support: support.len(), t });
    }
    if let Some(bad) = pis.iter().find(|p| p.len() != x.len()) {
        return Err(ClosureError::DimensionMismatch { expected: x.len(), found: bad.len() });
    }
    let rows: Vec<Vec<bool>> = pis
        .iter()
        .map(|pi| support.iter().map(|&k| pi[k].rem_euclid(2) == 1).collect())
        .collect();
    let rhs: Vec<bool> = pis
        .iter()
        .map(|pi| {
            let halves: i64 = x
                .values()
                .iter()
                .zip(pi)
                .map(|(v, c)| match v {
                    HalfValue::Half => *c,
                    _ => 0,
                })
                .sum();
            halves.rem_euclid(2) == 1
        })
        .collect();
    let system = ParitySystem::new(support.len(), rows, rhs)?;
    let j: Vec<usize> = small_support_subset(&system, t)?
        .into_iter()
        .map(|col| support[col])
        .collect();
    let down = round_point(x, &j, false)?;
    let up = round_point(x, &j, true)?;
    Ok(RoundingWitness { j, down, up })
}

#[cfg(test)]
mod tests {
    use super::*;
    use HalfValue::*;

    #[test]
    fn unit_direction() {
        let x = HalfIntegralPoint::all_half(2);
        let w = rounding_witness(&x, &[vec![1, 0]]).unwrap();
        assert_eq!(w.j, vec![0]);
        assert_eq!(w.down.values(), &[Zero, Half]);
        assert_eq!(w.up.values(), &[One, Half]);
    }

    #[test]
    fn already_integral_value() {
        let w = rounding_witness(&HalfIntegralPoint::all_half(2), &[vec![1, 1]]).unwrap();
        assert!(w.j.is_empty());
    }

    #[test]
    fn too_few_fractional_coordinates() {
        let x = HalfIntegralPoint::new(vec![Half, One]);
        assert!(matches!(
            rounding_witness(&x, &[vec![1, 0], vec![0, 1]]),
            Err(ClosureError::TooFewFractional { support: 1, t: 2 })
        ));
    }
}
