use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{ConstructionError, Graph};
use crate::exactgeom::RatVector;
use crate::rational::{format_rational, half, int, parse_rational, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HalfValue {
    Zero,
    Half,
    One,
}

impl HalfValue {
    pub fn from_bit(bit: bool) -> Self {
        if bit {
            HalfValue::One
        } else {
            HalfValue::Zero
        }
    }

    pub fn to_rational(self) -> Rational {
        match self {
            HalfValue::Zero => int(0),
            HalfValue::Half => half(),
            HalfValue::One => int(1),
        }
    }

    pub fn from_rational(value: &Rational) -> Option<Self> {
        [HalfValue::Zero, HalfValue::Half, HalfValue::One]
            .into_iter()
            .find(|h| h.to_rational() == *value)
    }
}

/// Point of `{0, 1/2, 1}^n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfIntegralPoint(Vec<HalfValue>);

impl HalfIntegralPoint {
    pub fn new(values: Vec<HalfValue>) -> Self {
        HalfIntegralPoint(values)
    }

    pub fn all_half(n: usize) -> Self {
        HalfIntegralPoint(vec![HalfValue::Half; n])
    }

    pub fn from_rationals(values: &[Rational]) -> Result<Self, ConstructionError> {
        values
            .iter()
            .enumerate()
            .map(|(i, v)| {
                HalfValue::from_rational(v).ok_or_else(|| ConstructionError::NotHalfIntegral {
                    index: i,
                    value: format_rational(v),
                })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(HalfIntegralPoint)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[HalfValue] {
        &self.0
    }

    pub fn get(&self, i: usize) -> HalfValue {
        self.0[i]
    }

    pub fn to_rational(&self) -> RatVector {
        self.0.iter().map(|h| h.to_rational()).collect()
    }

    /// `E(x)`: coordinates equal to 1/2, ascending.
    pub fn fractional_support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] == HalfValue::Half).collect()
    }

    pub fn is_integral(&self) -> bool {
        !self.0.contains(&HalfValue::Half)
    }

    /// `V(x)`: vertices of the subgraph `H(x)` formed by the 1/2-edges, ascending.
    pub fn fractional_vertices(&self, graph: &Graph) -> Vec<usize> {
        let mut hit = vec![false; graph.n()];
        for e in self.fractional_support() {
            let (u, v) = graph.edges()[e];
            hit[u] = true;
            hit[v] = true;
        }
        (0..graph.n()).filter(|&v| hit[v]).collect()
    }

    /// `H(x)`: the edges of the 1/2-subgraph, in edge order.
    pub fn half_edges<'g>(&self, graph: &'g Graph) -> Vec<(usize, usize)> {
        self.fractional_support().into_iter().map(|e| graph.edges()[e]).collect()
    }
}

/// `x^{(J,a)}`: the coordinates in `J` (all fractional) set to `a`.
pub fn round_point(
    x: &HalfIntegralPoint,
    j: &[usize],
    a: bool,
) -> Result<HalfIntegralPoint, ConstructionError> {
    let mut values = x.0.clone();
    for &i in j {
        match values.get(i) {
            Some(HalfValue::Half) => values[i] = HalfValue::from_bit(a),
            _ => return Err(ConstructionError::NotFractional { index: i }),
        }
    }
    Ok(HalfIntegralPoint(values))
}

impl fmt::Debug for HalfIntegralPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for HalfIntegralPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, h) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(match h {
                HalfValue::Zero => "0",
                HalfValue::Half => "1/2",
                HalfValue::One => "1",
            })?;
        }
        f.write_str(")")
    }
}

impl Serialize for HalfIntegralPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let text: Vec<String> = self.0.iter().map(|h| format_rational(&h.to_rational())).collect();
        text.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for HalfIntegralPoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = Vec::<String>::deserialize(deserializer)?;
        let values = text
            .iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        HalfIntegralPoint::from_rationals(&values).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use HalfValue::*;

    #[test]
    fn rounding_sets_selected_coordinates() {
        let x = HalfIntegralPoint::new(vec![Half, Half, Zero]);
        assert_eq!(round_point(&x, &[0], true).unwrap().values(), &[One, Half, Zero]);
        assert_eq!(round_point(&x, &[], false).unwrap(), x);
        assert!(round_point(&x, &[2], true).is_err());
        assert!(round_point(&x, &[7], true).is_err());
    }

    #[test]
    fn supports_on_a_triangle() {
        let g = Graph::complete(3);
        let x = HalfIntegralPoint::new(vec![One, Half, Half]);
        assert_eq!(x.fractional_support(), vec![1, 2]);
        assert_eq!(x.fractional_vertices(&g), vec![0, 1, 2]);
        assert_eq!(x.half_edges(&g), vec![(0, 2), (1, 2)]);
    }

    #[test]
    fn json_uses_fraction_strings() {
        let x = HalfIntegralPoint::new(vec![Zero, Half, One]);
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"["0","1/2","1"]"#);
        assert_eq!(serde_json::from_str::<HalfIntegralPoint>(&json).unwrap(), x);
        assert!(serde_json::from_str::<HalfIntegralPoint>(r#"["1/3"]"#).is_err());
    }
}
