//! Side labels (k-tuples of symbols) and tile types.

use std::fmt;

use crate::error::ModelError;
use crate::symbol::{Symbol, TempClass};

/// A k-tuple of symbols on one tile side. All cube programs use k = 3.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SideLabel(pub Vec<Symbol>);

impl SideLabel {
    pub fn triple(a: Symbol, b: Symbol, c: Symbol) -> SideLabel {
        SideLabel(vec![a, b, c])
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    /// Element-wise complement.
    pub fn complement(&self) -> SideLabel {
        SideLabel(self.0.iter().map(|s| s.complement()).collect())
    }

    /// Bond class of this side: the weakest component denatures first.
    pub fn temp_class(&self) -> TempClass {
        self.0.iter().map(|s| s.temp_class()).min().unwrap_or(crate::symbol::CLASS_STRONG)
    }

    pub fn parse(s: &str) -> Result<SideLabel, ModelError> {
        let inner = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| ModelError::BadSideLabel(s.into()))?;
        let syms = inner
            .split(',')
            .map(|p| Symbol::parse(p.trim()))
            .collect::<Result<Vec<_>, _>>()?;
        if syms.is_empty() {
            return Err(ModelError::BadSideLabel(s.into()));
        }
        Ok(SideLabel(syms))
    }
}

impl fmt::Display for SideLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", s)?;
        }
        write!(f, ")")
    }
}

/// The tile binding predicate: `b` is the element-wise complement of `a`.
/// Binding is all-or-nothing (strong no-misbinding assumption).
pub fn sides_complementary(a: &SideLabel, b: &SideLabel) -> Result<bool, ModelError> {
    if a.k() != b.k() {
        return Err(ModelError::SideArityMismatch { left: a.k(), right: b.k() });
    }
    Ok(*b == a.complement())
}

/// Compass sides in rotation order. Rotation cycles N -> E -> S -> W.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    N = 0,
    E = 1,
    S = 2,
    W = 3,
}

impl Dir {
    pub const ALL: [Dir; 4] = [Dir::N, Dir::E, Dir::S, Dir::W];

    pub fn opposite(self) -> Dir {
        match self {
            Dir::N => Dir::S,
            Dir::E => Dir::W,
            Dir::S => Dir::N,
            Dir::W => Dir::E,
        }
    }

    pub fn offset(self) -> (i64, i64) {
        match self {
            Dir::N => (0, 1),
            Dir::E => (1, 0),
            Dir::S => (0, -1),
            Dir::W => (-1, 0),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Dir::N => "N",
            Dir::E => "E",
            Dir::S => "S",
            Dir::W => "W",
        }
    }
}

/// A tile type: four side labels in compass rotation order (N, E, S, W), a
/// per-side bond class derived from the labels, and a relative concentration.
/// Two tile types denote the same physical tile when one side tuple is a
/// cyclic rotation of the other.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TileType {
    /// Sides indexed by `Dir as usize`: [N, E, S, W].
    pub sides: [SideLabel; 4],
    /// Relative concentration as an exact rational (num, den), both positive.
    pub concentration: (u64, u64),
}

impl TileType {
    pub fn new(n: SideLabel, e: SideLabel, s: SideLabel, w: SideLabel) -> TileType {
        TileType { sides: [n, e, s, w], concentration: (1, 1) }
    }

    pub fn side(&self, d: Dir) -> &SideLabel {
        &self.sides[d as usize]
    }

    fn rotated(&self, by: usize) -> TileType {
        let mut sides = self.sides.clone();
        sides.rotate_left(by);
        TileType { sides, concentration: self.concentration }
    }

    /// Deterministic representative of the 4-element rotation class: the
    /// lexicographically least rotation.
    pub fn canonical_rotation(&self) -> TileType {
        (0..4).map(|r| self.rotated(r)).min_by(|a, b| a.sides.cmp(&b.sides)).unwrap()
    }

    /// Tile equality modulo rotation.
    pub fn same_tile(&self, other: &TileType) -> bool {
        self.canonical_rotation().sides == other.canonical_rotation().sides
    }

    /// Complement of every side: the tile seen "from outside".
    pub fn complement(&self) -> TileType {
        TileType {
            sides: [
                self.sides[0].complement(),
                self.sides[1].complement(),
                self.sides[2].complement(),
                self.sides[3].complement(),
            ],
            concentration: self.concentration,
        }
    }
}

impl fmt::Display for TileType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} x {} x {} x {}",
            self.side(Dir::N),
            self.side(Dir::S),
            self.side(Dir::W),
            self.side(Dir::E)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::Mark;

    fn lbl(a: Symbol, b: Symbol, c: Symbol) -> SideLabel {
        SideLabel::triple(a, b, c)
    }

    #[test]
    fn complementary_sides() {
        // North/south pairing of strip tiles: (alpha,kappa2,V0) binds its
        // element-wise complement.
        let a = lbl(Symbol::mark(Mark::Alpha), Symbol::mark(Mark::Kappa2), Symbol::v(0));
        assert!(sides_complementary(&a, &a.complement()).unwrap());
        assert!(!sides_complementary(&a, &a).unwrap());
        let differs =
            lbl(Symbol::mark(Mark::Alpha), Symbol::mark(Mark::Kappa2), Symbol::v(1)).complement();
        assert!(!sides_complementary(&a, &differs).unwrap());
        let short = SideLabel(vec![Symbol::v(0)]);
        assert!(sides_complementary(&a, &short).is_err());
    }

    #[test]
    fn rotation_classes() {
        let s =
            |k: u32| lbl(Symbol::pattern(k), Symbol::mark(Mark::Kappa2), Symbol::v(i64::from(k)));
        let t = TileType::new(s(1), s(2), s(3), s(4));
        for r in 0..4 {
            assert!(t.rotated(r).same_tile(&t));
            assert_eq!(t.rotated(r).canonical_rotation(), t.canonical_rotation());
        }
        // A tile with four identical sides is its own canonical form.
        let u = TileType::new(s(1), s(1), s(1), s(1));
        assert_eq!(u.canonical_rotation(), u);
        // Canonicalization is idempotent.
        assert_eq!(t.canonical_rotation().canonical_rotation(), t.canonical_rotation());
    }

    #[test]
    fn side_label_parse_round_trip() {
        let a = lbl(Symbol::pattern(2).complement(), Symbol::h(-3), Symbol::v(7));
        assert_eq!(SideLabel::parse(&a.to_string()).unwrap(), a);
    }
}
