//! Zigzag shapes: staircases of spots joined by alternating `d1`/`d2` arrows.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::Bidegree;
use crate::error::ComplexError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Arrow {
    /// `d2` from spot `i` to spot `i+1 = spot i + (0,1)`.
    D2,
    /// `d1` from spot `i+1` to spot `i = spot i+1 + (1,0)`.
    D1,
}

/// Spots are listed by strictly decreasing `p − q`; `arrows[i]` joins spots
/// `i` and `i+1`. A single spot is a dot.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ZigzagShape {
    spots: Vec<Bidegree>,
    arrows: Vec<Arrow>,
}

impl ZigzagShape {
    pub fn dot(at: Bidegree) -> Self {
        ZigzagShape { spots: vec![at], arrows: Vec::new() }
    }

    /// Builds a shape from its spots, inferring the arrows.
    pub fn from_spots(spots: Vec<Bidegree>) -> Result<Self, ComplexError> {
        if spots.is_empty() {
            return Err(ComplexError::MalformedShape("no spots".into()));
        }
        let mut arrows = Vec::with_capacity(spots.len() - 1);
        for w in spots.windows(2) {
            let arrow = if w[1] == w[0].d2_target() {
                Arrow::D2
            } else if w[0] == w[1].d1_target() {
                Arrow::D1
            } else {
                return Err(ComplexError::MalformedShape(format!("{} and {} are not adjacent", w[0], w[1])));
            };
            arrows.push(arrow);
        }
        if arrows.windows(2).any(|w| w[0] == w[1]) {
            return Err(ComplexError::MalformedShape("arrow directions must alternate".into()));
        }
        Ok(ZigzagShape { spots, arrows })
    }

    /// Checks a shape given with explicit arrows.
    pub fn new(spots: Vec<Bidegree>, arrows: Vec<Arrow>) -> Result<Self, ComplexError> {
        let shape = Self::from_spots(spots)?;
        if shape.arrows != arrows {
            return Err(ComplexError::MalformedShape("arrows do not match the spots".into()));
        }
        Ok(shape)
    }

    pub fn spots(&self) -> &[Bidegree] {
        &self.spots
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.spots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spots.is_empty()
    }

    pub fn is_dot(&self) -> bool {
        self.spots.len() == 1
    }

    pub fn total_degrees(&self) -> (i64, i64) {
        let ks = self.spots.iter().map(|b| b.total());
        (ks.clone().min().expect("nonempty"), ks.max().expect("nonempty"))
    }

    /// The shape of the conjugate zigzag: spots swapped, order reversed.
    pub fn conjugate(&self) -> Self {
        let spots: Vec<Bidegree> = self.spots.iter().rev().map(|b| b.swap()).collect();
        Self::from_spots(spots).expect("conjugate of a shape is a shape")
    }

    pub fn is_self_conjugate(&self) -> bool {
        self.conjugate() == *self
    }

    pub fn shifted(&self, i: i64) -> Self {
        ZigzagShape { spots: self.spots.iter().map(|b| b.offset(i, i)).collect(), arrows: self.arrows.clone() }
    }
}

impl fmt::Display for ZigzagShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z[{}", self.spots[0])?;
        for (a, s) in self.arrows.iter().zip(&self.spots[1..]) {
            match a {
                Arrow::D2 => write!(f, " -d2-> {s}")?,
                Arrow::D1 => write!(f, " <-d1- {s}")?,
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(p: i64, q: i64) -> Bidegree {
        Bidegree::new(p, q)
    }

    #[test]
    fn renders_staircase() {
        let z = ZigzagShape::from_spots(vec![b(0, 0), b(0, 1), b(-1, 1)]).unwrap();
        assert_eq!(z.arrows(), &[Arrow::D2, Arrow::D1]);
        assert_eq!(z.to_string(), "Z[(0,0) -d2-> (0,1) <-d1- (-1,1)]");
        assert_eq!(ZigzagShape::dot(b(2, 3)).to_string(), "Z[(2,3)]");
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(ZigzagShape::from_spots(vec![]).is_err());
        assert!(ZigzagShape::from_spots(vec![b(0, 0), b(1, 1)]).is_err());
        assert!(ZigzagShape::from_spots(vec![b(0, 0), b(0, 1), b(0, 2)]).is_err());
        assert!(ZigzagShape::new(vec![b(1, 0), b(0, 0)], vec![Arrow::D2]).is_err());
    }

    #[test]
    fn conjugation() {
        let v = ZigzagShape::from_spots(vec![b(1, 0), b(0, 0), b(0, 1)]).unwrap();
        assert!(v.is_self_conjugate());
        let h = ZigzagShape::from_spots(vec![b(0, 0), b(0, 1)]).unwrap();
        assert_eq!(h.conjugate().spots(), &[b(1, 0), b(0, 0)]);
        assert!(!h.is_self_conjugate());
    }
}
