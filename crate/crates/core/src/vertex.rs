use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::field::FieldElement;

/// Bipartition side: points (`0`) or lines (`1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Point,
    Line,
}

impl Side {
    pub fn bit(self) -> u8 {
        match self {
            Side::Point => 0,
            Side::Line => 1,
        }
    }

    pub fn other(self) -> Side {
        match self {
            Side::Point => Side::Line,
            Side::Line => Side::Point,
        }
    }
}

/// A coordinate: a field element or the extra symbol ρ.
///
/// `Rho` sorts after every field element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coord {
    Field(FieldElement),
    Rho,
}

impl Coord {
    pub fn field(self) -> Option<FieldElement> {
        match self {
            Coord::Field(e) => Some(e),
            Coord::Rho => None,
        }
    }

    pub fn is_rho(self) -> bool {
        matches!(self, Coord::Rho)
    }
}

impl From<FieldElement> for Coord {
    fn from(e: FieldElement) -> Coord {
        Coord::Field(e)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VertexError {
    #[error("invalid coordinate pattern: rho appears to the right of a field element in {0}")]
    RhoPattern(String),
    #[error("malformed vertex label {0:?}")]
    Malformed(String),
}

/// A coordinatized vertex `(c1, c2, c3)_side`.
///
/// The only admissible patterns are `(f,f,f)`, `(ρ,f,f)`, `(ρ,ρ,f)` and `(ρ,ρ,ρ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    side: Side,
    coords: [Coord; 3],
}

impl Vertex {
    pub fn new(side: Side, coords: [Coord; 3]) -> Result<Vertex, VertexError> {
        let v = Vertex { side, coords };
        let mut seen_field = false;
        for c in coords {
            match c {
                Coord::Field(_) => seen_field = true,
                Coord::Rho if seen_field => return Err(VertexError::RhoPattern(v.to_string())),
                Coord::Rho => {}
            }
        }
        Ok(v)
    }

    /// `(a, b, c)` with all coordinates in the field.
    pub fn affine(side: Side, a: FieldElement, b: FieldElement, c: FieldElement) -> Vertex {
        Vertex {
            side,
            coords: [a.into(), b.into(), c.into()],
        }
    }

    /// `(ρ, b, c)`.
    pub fn rho1(side: Side, b: FieldElement, c: FieldElement) -> Vertex {
        Vertex {
            side,
            coords: [Coord::Rho, b.into(), c.into()],
        }
    }

    /// `(ρ, ρ, c)`.
    pub fn rho2(side: Side, c: FieldElement) -> Vertex {
        Vertex {
            side,
            coords: [Coord::Rho, Coord::Rho, c.into()],
        }
    }

    /// `(ρ, ρ, ρ)`.
    pub fn rho3(side: Side) -> Vertex {
        Vertex {
            side,
            coords: [Coord::Rho; 3],
        }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn coords(&self) -> [Coord; 3] {
        self.coords
    }

    /// Number of leading ρ coordinates.
    pub fn rho_count(&self) -> usize {
        self.coords.iter().take_while(|c| c.is_rho()).count()
    }

    /// Largest field index used in any coordinate, if any.
    pub fn max_index(&self) -> Option<u32> {
        self.coords
            .iter()
            .filter_map(|c| c.field())
            .map(|e| e.index())
            .max()
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.side.bit())?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            match c {
                Coord::Rho => f.write_str("r")?,
                Coord::Field(e) => write!(f, "{}", e.index())?,
            }
        }
        Ok(())
    }
}

impl FromStr for Vertex {
    type Err = VertexError;

    /// Parses `s:c1,c2,c3` with `r` for ρ and decimal field indices.
    fn from_str(s: &str) -> Result<Vertex, VertexError> {
        let bad = || VertexError::Malformed(s.to_string());
        let (side, rest) = s.split_once(':').ok_or_else(bad)?;
        let side = match side {
            "0" => Side::Point,
            "1" => Side::Line,
            _ => return Err(bad()),
        };
        let mut coords = [Coord::Rho; 3];
        let mut parts = rest.split(',');
        for slot in coords.iter_mut() {
            let part = parts.next().ok_or_else(bad)?;
            *slot = match part {
                "r" => Coord::Rho,
                digits if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) => {
                    let index: u32 = digits.parse().map_err(|_| bad())?;
                    Coord::Field(FieldElement::from_index(index))
                }
                _ => return Err(bad()),
            };
        }
        if parts.next().is_some() {
            return Err(bad());
        }
        Vertex::new(side, coords)
    }
}

/// An ordered set of vertex labels.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VertexSet(BTreeSet<Vertex>);

impl VertexSet {
    pub fn new() -> VertexSet {
        VertexSet::default()
    }

    pub fn singleton(v: Vertex) -> VertexSet {
        VertexSet(BTreeSet::from([v]))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        self.0.contains(v)
    }

    pub fn insert(&mut self, v: Vertex) -> bool {
        self.0.insert(v)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vertex> + '_ {
        self.0.iter()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.union(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.intersection(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.difference(&other.0).copied().collect())
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> VertexSet {
        VertexSet(iter.into_iter().collect())
    }
}

impl Extend<Vertex> for VertexSet {
    fn extend<I: IntoIterator<Item = Vertex>>(&mut self, iter: I) {
        self.0.extend(iter)
    }
}

impl IntoIterator for VertexSet {
    type Item = Vertex;
    type IntoIter = std::collections::btree_set::IntoIter<Vertex>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = &'a Vertex;
    type IntoIter = std::collections::btree_set::Iter<'a, Vertex>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: u32) -> FieldElement {
        FieldElement::from_index(i)
    }

    #[test]
    fn rho_sorts_last() {
        let a = Vertex::affine(Side::Line, e(5), e(0), e(0));
        let b = Vertex::rho1(Side::Line, e(0), e(0));
        let c = Vertex::rho3(Side::Point);
        assert!(a < b);
        assert!(c < a, "side dominates the order");
        assert!(Vertex::rho2(Side::Line, e(9)) < Vertex::rho3(Side::Line));
    }

    #[test]
    fn rejects_rho_after_field() {
        let err = Vertex::new(Side::Point, [e(1).into(), Coord::Rho, e(0).into()]).unwrap_err();
        assert!(matches!(err, VertexError::RhoPattern(_)));
        assert!(Vertex::new(Side::Point, [Coord::Rho, e(0).into(), Coord::Rho]).is_err());
        assert!("0:1,r,r".parse::<Vertex>().is_err());
    }

    #[test]
    fn label_round_trip() {
        let v = Vertex::rho3(Side::Point);
        assert_eq!(v.to_string(), "0:r,r,r");
        let w: Vertex = "1:r,12,3".parse().unwrap();
        assert_eq!(w, Vertex::rho1(Side::Line, e(12), e(3)));
        assert_eq!(w.to_string(), "1:r,12,3");
        for bad in [
            "",
            "2:0,0,0",
            "0:0,0",
            "0:0,0,0,0",
            "0:x,0,0",
            "0:-1,0,0",
            "0 0,0,0",
        ] {
            assert!(bad.parse::<Vertex>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn set_algebra() {
        let a: VertexSet = (0..4).map(|i| Vertex::rho2(Side::Point, e(i))).collect();
        let b: VertexSet = (2..6).map(|i| Vertex::rho2(Side::Point, e(i))).collect();
        assert_eq!(a.union(&b).len(), 6);
        assert_eq!(a.intersection(&b).len(), 2);
        assert_eq!(a.difference(&b).len(), 2);
        assert!(a.intersection(&b).is_subset(&a));
    }
}
