//! The committed planar layout for the hollow-box programs.
//!
//! The plane is an integer lattice (x = column, y = row). The unshaded cross
//! (six n-by-n faces) folds into the box; shaded regions carry pattern strings
//! between edges and are cut away at the end:
//!
//! ```text
//!   x:   -2n..-(n+1)   -n..-1    0..n-1    n..2n-1   2n..3n-1
//!        +----------+----------+----------+----------+----------+
//! y 2n   |    M     |    N     |    C     |    R     |    Q     |
//! y n+1  | (turn)   | (deliver)|  (face)  | (deliver)|  (turn)  |
//!        +----------+----------+----------+----------+----------+
//! y n    |    L     |    G     |    A     |    H     |    P     |
//! y 1    | (rows)   |  (turn)  |  (face)  |  (turn)  |  (rows)  |
//!        +----------+----------+----------+----------+----------+
//! y 0    |          |    E     | Strip+B  |    F     |          |
//! y-(n-1)|    K     |  (face)  |  (face)  |  (face)  |    O     |
//!        | (turn)   +----------+----------+----------+  (turn)  |
//!        +----------+    I     |    D     |    J     +----------+
//! y -n   |               (turn)|  (face)  | (turn)   |
//! y-(2n-1)              +------+----------+------+
//! ```
//!
//! Faces A, C and D consist of a west glue column (x=0), a west lock column
//! (x=1), an (n-4)-wide copy body, an east lock column (x=n-2) and an east
//! glue column (x=n-1). The strip face (all four edges are hinges) has a full
//! (n-2)-wide body flanked by hinge columns. Wings E and F are solid faces
//! whose three free edges carry freshly drawn random strings; those strings
//! are copied through the turn blocks onto the glue columns so that all seven
//! fold-edge pairs expose complementary labels after the cut.
//!
//! Every lattice bond is defined exactly once: `vbond(x, y)` labels the bond
//! between (x,y) and (x,y+1) as it appears on the north side of (x,y), and
//! `hbond(x, y)` labels the bond between (x-1,y) and (x,y) as it appears on
//! the west side of (x,y). The facing side is always the complement, so the
//! adjacency invariant holds by construction. The bond between rows 2n and
//! -(2n-1)'s outer edges shares one vertical counter (V(2n)), which is what
//! makes the box's wrap pair complementary.

use std::collections::BTreeMap;

use crate::side::SideLabel;
use crate::symbol::{Mark, Symbol};

pub type Coord = (i64, i64);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Wing {
    L,
    R,
}

/// Identifies one of the seven independently drawn / copied strings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FlowSource {
    /// The base strip's string, positions 1..=n-2.
    Strip,
    /// A wing's top edge string, positions 1..=n (1 and n structural).
    WingTop(Wing),
    /// A wing's bottom edge string, positions 1..=n (1 and n structural).
    WingBottom(Wing),
    /// A wing's far side edge string, positions 0..=n-1 (0 and n-1 structural).
    WingSide(Wing),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlowRef {
    pub source: FlowSource,
    pub idx: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    Sym(Symbol),
    /// Pattern-bearing slot; resolves to a pattern symbol (or the structural
    /// corner mark) once a drawing is fixed.
    Flow(FlowRef),
}

/// Template for one side label. `barred` complements the whole triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BondTemplate {
    pub slots: [Slot; 3],
    pub barred: bool,
}

impl BondTemplate {
    fn new(a: Slot, b: Slot, c: Slot) -> BondTemplate {
        BondTemplate { slots: [a, b, c], barred: false }
    }

    pub fn barred(mut self) -> BondTemplate {
        self.barred = !self.barred;
        self
    }

    /// The flow reference mentioned by this template, if any.
    pub fn flow(&self) -> Option<FlowRef> {
        self.slots.iter().find_map(|s| match s {
            Slot::Flow(f) => Some(*f),
            Slot::Sym(_) => None,
        })
    }
}

fn sym(s: Symbol) -> Slot {
    Slot::Sym(s)
}

fn mk(m: Mark) -> Slot {
    Slot::Sym(Symbol::mark(m))
}

fn h(i: i64) -> Slot {
    Slot::Sym(Symbol::h(i))
}

fn v(j: i64) -> Slot {
    Slot::Sym(Symbol::v(j))
}

fn flow(source: FlowSource, idx: i64) -> Slot {
    Slot::Flow(FlowRef { source, idx })
}

fn t3(a: Slot, b: Slot, c: Slot) -> Option<BondTemplate> {
    Some(BondTemplate::new(a, b, c))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RegionId {
    BaseStrip,
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    I,
    J,
    K,
    L,
    M,
    N,
    O,
    P,
    Q,
    R,
}

impl RegionId {
    pub fn shaded(self) -> bool {
        use RegionId::*;
        !matches!(self, BaseStrip | A | B | C | D | E | F)
    }

    pub fn name(self) -> &'static str {
        use RegionId::*;
        match self {
            BaseStrip => "BaseStrip",
            A => "A",
            B => "B",
            C => "C",
            D => "D",
            E => "E",
            F => "F",
            G => "G",
            H => "H",
            I => "I",
            J => "J",
            K => "K",
            L => "L",
            M => "M",
            N => "N",
            O => "O",
            P => "P",
            Q => "Q",
            R => "R",
        }
    }

    pub fn all() -> &'static [RegionId] {
        use RegionId::*;
        &[BaseStrip, A, B, C, D, E, F, G, H, I, J, K, L, M, N, O, P, Q, R]
    }
}

/// One half of a fold-edge pair: the outward sides to read, in fold order.
#[derive(Debug, Clone)]
pub struct EdgeSegment {
    pub cells: Vec<(Coord, crate::side::Dir)>,
}

#[derive(Debug, Clone)]
pub struct FoldPair {
    pub number: usize,
    pub a: EdgeSegment,
    pub b: EdgeSegment,
    pub label: &'static str,
}

#[derive(Debug, Clone, Copy)]
pub struct Layout {
    pub n: i64,
}

impl Layout {
    pub fn new(n: i64) -> Result<Layout, crate::error::CompileError> {
        if n < 4 {
            return Err(crate::error::CompileError::SideTooSmall(n));
        }
        Ok(Layout { n })
    }

    /// Mirror alias for the right extension zone's horizontal counters, so the
    /// symbol inventory stays at 4n horizontal counters.
    fn ha(&self, x: i64) -> Slot {
        let n = self.n;
        if x >= 2 * n {
            h(-(x - 2 * n) - (n + 1))
        } else {
            h(x)
        }
    }

    pub fn region_of(&self, x: i64, y: i64) -> Option<RegionId> {
        let n = self.n;
        use RegionId::*;
        let col_central = (0..n).contains(&x);
        let col_wing_l = (-n..0).contains(&x);
        let col_wing_r = (n..2 * n).contains(&x);
        let col_ext_l = (-2 * n..-n).contains(&x);
        let col_ext_r = (2 * n..3 * n).contains(&x);
        let row_mid = (-(n - 1)..=0).contains(&y);
        if col_central {
            if y == 0 {
                return Some(BaseStrip);
            }
            if (1..=n).contains(&y) {
                return Some(A);
            }
            if (-(n - 1)..0).contains(&y) {
                return Some(B);
            }
            if (n + 1..=2 * n).contains(&y) {
                return Some(C);
            }
            if (-(2 * n - 1)..=-n).contains(&y) {
                return Some(D);
            }
            return None;
        }
        if col_wing_l {
            if row_mid {
                return Some(E);
            }
            if (1..=n).contains(&y) {
                return Some(G);
            }
            if (-(2 * n - 1)..=-n).contains(&y) {
                return Some(I);
            }
            if (n + 1..=2 * n).contains(&y) {
                return Some(N);
            }
            return None;
        }
        if col_wing_r {
            if row_mid {
                return Some(F);
            }
            if (1..=n).contains(&y) {
                return Some(H);
            }
            if (-(2 * n - 1)..=-n).contains(&y) {
                return Some(J);
            }
            if (n + 1..=2 * n).contains(&y) {
                return Some(R);
            }
            return None;
        }
        if col_ext_l {
            if row_mid {
                return Some(K);
            }
            if (1..=n).contains(&y) {
                return Some(L);
            }
            if (n + 1..=2 * n).contains(&y) {
                return Some(M);
            }
            return None;
        }
        if col_ext_r {
            if row_mid {
                return Some(O);
            }
            if (1..=n).contains(&y) {
                return Some(P);
            }
            if (n + 1..=2 * n).contains(&y) {
                return Some(Q);
            }
            return None;
        }
        None
    }

    pub fn cell_exists(&self, x: i64, y: i64) -> bool {
        self.region_of(x, y).is_some()
    }

    pub fn region_cells(&self, r: RegionId) -> Vec<Coord> {
        let n = self.n;
        let mut out = Vec::new();
        for y in -(2 * n)..=2 * n {
            for x in -(2 * n)..3 * n {
                if self.region_of(x, y) == Some(r) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn unshaded_cells(&self) -> Vec<Coord> {
        let n = self.n;
        let mut out = Vec::new();
        for y in -(2 * n - 1)..=2 * n {
            for x in -n..2 * n {
                if let Some(r) = self.region_of(x, y) {
                    if !r.shaded() {
                        out.push((x, y));
                    }
                }
            }
        }
        out
    }

    /// Column chain mark for the copy bodies of A/C/D (columns 2..=n-3).
    fn body_mark_acd(&self, x: i64) -> Mark {
        let n = self.n;
        if x == 2 {
            Mark::Kappa2L
        } else if x == n - 3 {
            Mark::Kappa2R
        } else {
            Mark::Kappa2
        }
    }

    /// Column chain mark for the strip-face body (columns 1..=n-2).
    fn body_mark_s(&self, x: i64) -> Mark {
        let n = self.n;
        if x == 1 {
            Mark::Kappa2L
        } else if x == n - 2 {
            Mark::Kappa2R
        } else {
            Mark::Kappa2
        }
    }

    /// Position mark for the relay-strip rows (L and P), indexed by distance
    /// `u` from the zone's inner end; u = 0 and n-1 are the structural caps.
    fn relay_mark(&self, u: i64) -> Mark {
        let n = self.n;
        if u == 1 {
            Mark::Kappa2R
        } else if u == n - 2 {
            Mark::Kappa2L
        } else {
            Mark::Kappa2
        }
    }

    /// Label of the bond between (x,y) and (x,y+1), as the north side of (x,y).
    /// `None` when neither endpoint exists.
    pub fn vbond(&self, x: i64, y: i64) -> Option<BondTemplate> {
        let n = self.n;
        if !self.cell_exists(x, y) && !self.cell_exists(x, y + 1) {
            return None;
        }
        let xx = [mk(Mark::Phi1), mk(Mark::Phi2), mk(Mark::Phi3)];
        // The wrap: the bond below row -(2n-1) carries the same labels as the
        // bond above row 2n, so C-top and D-bottom are fold-complementary.
        let vy = if y == -2 * n { 2 * n } else { y };

        // Central column, x in [0, n-1].
        if (0..n).contains(&x) {
            if x == 0 || x == n - 1 {
                // Glue/hinge columns: beta hinge chain through the strip face,
                // tau glue chains elsewhere (the pair-1 flank goes via alias).
                return if (-n..=0).contains(&vy) {
                    t3(mk(Mark::Beta), h(x), v(vy))
                } else {
                    t3(mk(Mark::Tau1), mk(Mark::Tau2), v(vy))
                };
            }
            if x == 1 || x == n - 2 {
                let cap = if x == 1 { Mark::NuL } else { Mark::NuR };
                return if vy == 0 || vy == -n {
                    // Pattern-free caps over strip position 1 / n-2 and under
                    // the strip-face body, anchoring the lock columns.
                    t3(mk(Mark::Nu1), mk(cap), v(vy))
                } else if (-(n - 1)..0).contains(&vy) {
                    // Strip-face body columns 1 and n-2 copy the strip string.
                    t3(flow(FlowSource::Strip, x), mk(self.body_mark_s(x)), v(vy))
                } else if vy == 2 * n {
                    // Wrap exposure: weak so stray binders denature.
                    t3(mk(Mark::Alpha), mk(Mark::Omega), v(vy))
                } else {
                    // Lock column chains.
                    t3(mk(Mark::Alpha), mk(Mark::AlphaB), v(vy))
                };
            }
            // Copy-body columns.
            if vy == 2 * n {
                return t3(flow(FlowSource::Strip, x), mk(Mark::Omega), v(vy));
            }
            let mark = if (-(n - 1)..0).contains(&vy) {
                self.body_mark_s(x)
            } else {
                self.body_mark_acd(x)
            };
            return t3(flow(FlowSource::Strip, x), mk(mark), v(vy));
        }

        // Wing + turn-block columns, x in [-n, -1] (left) / [n, 2n-1] (right).
        let wing_l = (-n..0).contains(&x);
        let wing_r = (n..2 * n).contains(&x);
        if wing_l || wing_r {
            let (wing, c) = if wing_l { (Wing::L, -x) } else { (Wing::R, x - (n - 1)) };
            if y == 0 {
                let d = if wing_l { Mark::DeltaAE } else { Mark::DeltaAF };
                return t3(flow(FlowSource::WingTop(wing), c), mk(d), h(x));
            }
            if y == -n {
                let d = if wing_l { Mark::DeltaDE } else { Mark::DeltaDF };
                return t3(flow(FlowSource::WingBottom(wing), c), mk(d), h(x));
            }
            if (-(n - 1)..0).contains(&y) {
                // Inside the wing body: inert weak verticals.
                return Some(BondTemplate { slots: xx, barred: false });
            }
            if (1..=n).contains(&y) {
                // G / H turn blocks: vertical flow below the x = +-(y+n-1) diagonal.
                let fl = if wing_l { y < -x } else { y < x - (n - 1) };
                return if fl {
                    t3(flow(FlowSource::WingTop(wing), c), self.ha(x), v(y))
                } else {
                    t3(mk(Mark::Kappa3), self.ha(x), v(y))
                };
            }
            if (n + 1..=2 * n).contains(&y) || y == 2 * n {
                // N / R delivery straights: pinned inert verticals.
                return t3(mk(Mark::Kappa3), self.ha(x), v(vy));
            }
            if (-(2 * n - 1)..-n).contains(&y) || y == -2 * n {
                // I / J turn blocks: vertical flow on/above the diagonal.
                if y == -2 * n {
                    return t3(mk(Mark::Kappa3), self.ha(x), v(vy));
                }
                let diag_or_above = if wing_l { y >= x - (n - 1) } else { y >= -x };
                return if diag_or_above {
                    t3(flow(FlowSource::WingBottom(wing), c), self.ha(x), v(y))
                } else {
                    t3(mk(Mark::Kappa3), self.ha(x), v(y))
                };
            }
            return None;
        }

        // Extension zones: K/L/M (left, x in [-2n, -(n+1)]) and O/P/Q (right).
        let ext_l = (-2 * n..-n).contains(&x);
        let ext_r = (2 * n..3 * n).contains(&x);
        if ext_l || ext_r {
            let wing = if ext_l { Wing::L } else { Wing::R };
            let u = if ext_l { -(n + 1) - x } else { x - 2 * n };
            let lam2 = if ext_l { Mark::Lambda2 } else { Mark::Lambda2R };
            let cap_mark = if ext_l { Mark::Beta } else { Mark::BetaR };
            let cap_col = u == 0 || u == n - 1;
            if (0..=n).contains(&y) {
                // K-top (y=0) and L rows up to the L/M boundary (y=n): the
                // relay rows mimic the strip's north labels.
                return if cap_col {
                    t3(mk(cap_mark), self.ha(x), v(y))
                } else {
                    t3(flow(FlowSource::WingSide(wing), u), mk(self.relay_mark(u)), v(y))
                };
            }
            if (-(n - 1)..0).contains(&y) {
                // Inside K / O: vertical flow on the col-leg segments; the
                // row-leg verticals are inert but row-pinned so stray chains
                // cannot run away.
                let t = -y;
                return if u >= t {
                    t3(flow(FlowSource::WingSide(wing), u), mk(lam2), self.ha(x))
                } else {
                    t3(mk(Mark::Phi1), mk(Mark::Phi2), v(y))
                };
            }
            if y == -n {
                // Below K / O: exposed.
                return t3(mk(Mark::Phi1), mk(Mark::Phi2), v(y));
            }
            if (n + 1..2 * n).contains(&y) {
                // Inside M / Q: vertical flow below the diagonal.
                let s = y - (n + 1);
                return if s < u {
                    t3(flow(FlowSource::WingSide(wing), u), mk(lam2), self.ha(x))
                } else {
                    t3(mk(Mark::Phi1), mk(Mark::Phi2), v(y))
                };
            }
            if y == 2 * n {
                return t3(mk(Mark::Phi1), mk(Mark::Phi2), v(y));
            }
            return None;
        }
        None
    }

    /// Label of the bond between (x-1,y) and (x,y), as the west side of (x,y).
    pub fn hbond(&self, x: i64, y: i64) -> Option<BondTemplate> {
        let n = self.n;
        if !self.cell_exists(x, y) && !self.cell_exists(x - 1, y) {
            return None;
        }
        let xx = [mk(Mark::Phi1), mk(Mark::Phi2), mk(Mark::Phi3)];

        // Strip row and strip-face rows.
        if y == 0 && (0..=n).contains(&x) {
            if x == 0 {
                return t3(mk(Mark::RhoPrime), h(0), v(0));
            }
            if x == n {
                return t3(mk(Mark::RhoPrime), h(n), v(0));
            }
            return t3(mk(Mark::Kappa1), h(x), v(0));
        }
        if (-(n - 1)..0).contains(&y) && (0..=n).contains(&x) {
            if x == 0 {
                return t3(mk(Mark::RhoPrime), h(0), v(y));
            }
            if x == n {
                return t3(mk(Mark::RhoPrime), h(n), v(y));
            }
            if x == 1 {
                return t3(mk(Mark::Sigma1), mk(Mark::Sigma2), v(y));
            }
            if x == n - 1 {
                return t3(mk(Mark::Sigma1), mk(Mark::Sigma2), v(y)).map(BondTemplate::barred);
            }
            return Some(BondTemplate { slots: xx, barred: false });
        }

        // A/C rows (y in [1, 2n]) and D rows (y in [-(2n-1), -n]).
        let in_ac = (1..=2 * n).contains(&y);
        let in_d = (-(2 * n - 1)..=-n).contains(&y);
        if (in_ac || in_d) && (0..=n).contains(&x) {
            if x == 0 {
                // Outward label of the west glue column. For pairs 2 and 6
                // the wing edge exposes the plain form, so the glue side is
                // barred; for pair 4 the wing's south side is already barred.
                return Some(self.glue_label_west(y));
            }
            if x == 1 {
                return t3(mk(Mark::SigmaG1), mk(Mark::SigmaG2), v(y));
            }
            if x == n - 1 {
                return t3(mk(Mark::SigmaG1), mk(Mark::SigmaG2), v(y));
            }
            if x == n {
                // Delivery bond from H / J / R into the east glue column.
                return Some(self.glue_delivery_east(y));
            }
            if x == 2 && n >= 5 {
                return t3(mk(Mark::Sigma3), mk(Mark::Sigma4), v(y));
            }
            if x == n - 2 {
                return t3(mk(Mark::Sigma3), mk(Mark::Sigma4), v(y)).map(BondTemplate::barred);
            }
            return Some(BondTemplate { slots: xx, barred: false });
        }

        // Wing rows, y in [-(n-1), 0].
        if (-(n - 1)..=0).contains(&y) {
            // Left wing E: x in [-n, -1]; its west neighbor zone K: [-2n, -(n+1)].
            if (-n..0).contains(&x) {
                if x == -n {
                    return Some(self.side_edge_label(Wing::L, y));
                }
                if y == 0 {
                    return t3(mk(Mark::KappaT), h(x), v(0));
                }
                if y == -(n - 1) {
                    return t3(mk(Mark::KappaB), h(x), v(y));
                }
                if x == -(n - 1) {
                    return t3(mk(Mark::KappaE2), h(x), v(y));
                }
                return t3(mk(Mark::KappaE), h(x), mk(Mark::KappaEb));
            }
            // Right wing F: x in [n+1, 2n-1] interior; x = 2n is the O delivery.
            if (n + 1..2 * n).contains(&x) {
                if y == 0 {
                    return t3(mk(Mark::KappaT), h(x), v(0));
                }
                if y == -(n - 1) {
                    return t3(mk(Mark::KappaB), h(x), v(y));
                }
                if x == 2 * n - 1 {
                    return t3(mk(Mark::KappaE2), h(x), v(y));
                }
                return t3(mk(Mark::KappaE), h(x), mk(Mark::KappaEb));
            }
            if x == 2 * n {
                return Some(self.side_edge_label(Wing::R, y).barred());
            }
            // K zone internals: x in [-2n, -(n+1)]; O zone: [2n+1, 3n-1] plus
            // the exposed borders.
            let ext_l = (-2 * n..-n).contains(&x);
            let ext_r = (2 * n..=3 * n).contains(&x);
            if ext_l || ext_r {
                let wing = if ext_l { Wing::L } else { Wing::R };
                let lam1 = if ext_l { Mark::Lambda1 } else { Mark::Lambda1R };
                let t = -y;
                // Distance of the EASTERN cell (x,y) from the zone's inner end.
                let u = if ext_l { -(n + 1) - x } else { x - 2 * n };
                if ext_r && x == 3 * n {
                    return t3(mk(Mark::Chi1), mk(Mark::Chi2), v(y));
                }
                let fl = if ext_l { u < t } else { u <= t && u >= 1 };
                // Left: bond carries flow when the eastern cell is strictly
                // east of the diagonal (row-leg interior). Right: when the
                // eastern cell is on the row-leg (u' <= t), excluding the
                // delivery bond at u' = 0 handled above. The inert chains use
                // opposite mark orders on the two sides so the mirrored
                // aliases cannot interleave.
                return if fl {
                    t3(flow(FlowSource::WingSide(wing), t), mk(lam1), v(y))
                } else if ext_l {
                    t3(mk(Mark::Chi1), self.ha(x), mk(Mark::Chi2))
                } else {
                    t3(mk(Mark::Chi2), self.ha(x), mk(Mark::Chi1))
                };
            }
            return None;
        }

        // G/H/L/P band, y in [1, n].
        if (1..=n).contains(&y) {
            if (-n..0).contains(&x) {
                // Inside G: horizontal flow east of the diagonal. Horizontal
                // bonds carry (content, V, H) so no rotation of a tile can
                // bind a perpendicular bond. The west side of G's west column
                // (x = -n) degenerates to the inert label, which is also what
                // the L east cap binds.
                return if y > -x {
                    t3(flow(FlowSource::WingTop(Wing::L), y), v(y), self.ha(x))
                } else {
                    t3(mk(Mark::Kappa3), v(y), self.ha(x))
                };
            }
            if (n + 1..2 * n).contains(&x) {
                // Inside H: horizontal flow on/west of the diagonal.
                return if x <= y + n - 1 {
                    t3(flow(FlowSource::WingTop(Wing::R), y), v(y), self.ha(x))
                } else {
                    t3(mk(Mark::Kappa3), v(y), self.ha(x))
                };
            }
            if x == 2 * n {
                // H east col <-> P west cap.
                return t3(mk(Mark::Sigma1), mk(Mark::Sigma2), v(y));
            }
            // L rows: x in [-2n, -(n+1)]; P rows: [2n+1, 3n] boundaries.
            if (-2 * n..=-(n + 1)).contains(&x) || (2 * n + 1..=3 * n).contains(&x) {
                let sig = || t3(mk(Mark::Sigma1), mk(Mark::Sigma2), v(y));
                // Await bonds seal the row ends; plain form sits on whichever
                // side the border pattern tile exposes westward.
                if x == -2 * n || x == -(n + 1) || x == 3 * n - 1 || x == 3 * n {
                    return sig().map(BondTemplate::barred);
                }
                if x == -2 * n + 1 || x == 2 * n + 1 {
                    return sig();
                }
                return Some(BondTemplate { slots: xx, barred: false });
            }
            return None;
        }

        // N/R/M/Q band, y in [n+1, 2n].
        if (n + 1..=2 * n).contains(&y) {
            let t = y - (n + 1);
            if (-n..0).contains(&x) {
                // Inside N (and the M -> N handoff at x = -n): pinned flow.
                return t3(flow(FlowSource::WingSide(Wing::L), t), v(y), self.ha(x));
            }
            if (n + 1..=2 * n).contains(&x) {
                // Inside R (and the Q -> R handoff at x = 2n): pinned flow.
                return t3(flow(FlowSource::WingSide(Wing::R), t), v(y), self.ha(x));
            }
            // M internals: x in [-2n, -(n+1)]; Q internals: [2n+1, 3n-1].
            let ext_l = (-2 * n..-n).contains(&x);
            let ext_r = (2 * n..=3 * n).contains(&x);
            if ext_l || ext_r {
                let wing = if ext_l { Wing::L } else { Wing::R };
                let lam1 = if ext_l { Mark::Lambda1 } else { Mark::Lambda1R };
                let s = t;
                let u = if ext_l { -(n + 1) - x } else { x - 2 * n };
                if ext_r && x == 3 * n {
                    return t3(mk(Mark::Chi1), mk(Mark::Chi2), v(y));
                }
                let fl = if ext_l { u < s } else { u <= s && u >= 1 };
                return if fl {
                    t3(flow(FlowSource::WingSide(wing), s), mk(lam1), v(y))
                } else if ext_l {
                    t3(mk(Mark::Chi1), self.ha(x), mk(Mark::Chi2))
                } else {
                    t3(mk(Mark::Chi2), self.ha(x), mk(Mark::Chi1))
                };
            }
            return None;
        }

        // I/J band, y in [-(2n-1), -n].
        if (-(2 * n - 1)..=-n).contains(&y) {
            if (-n..0).contains(&x) {
                // Inside I: horizontal flow east of the diagonal.
                return if x > y + n - 1 {
                    t3(flow(FlowSource::WingBottom(Wing::L), -y - n + 1), v(y), self.ha(x))
                } else {
                    t3(mk(Mark::Kappa3), v(y), self.ha(x))
                };
            }
            if (n + 1..2 * n).contains(&x) {
                // Inside J: horizontal flow on/west of the diagonal.
                return if x <= -y {
                    t3(flow(FlowSource::WingBottom(Wing::R), -y - n + 1), v(y), self.ha(x))
                } else {
                    t3(mk(Mark::Kappa3), v(y), self.ha(x))
                };
            }
            if x == 2 * n {
                return t3(mk(Mark::Chi1), mk(Mark::Chi2), v(y));
            }
            return None;
        }
        None
    }

    /// Outward (plain-form) label of the west glue column at row y, i.e. the
    /// fold label of A-left / C-left / D-left. The stored hbond is the barred
    /// complement of the partner edge's exposed side.
    fn glue_label_west(&self, y: i64) -> BondTemplate {
        let n = self.n;
        if (1..=n).contains(&y) {
            // Pair: A-left <-> E-top at (-y, 0); E-top's north is plain.
            BondTemplate::new(flow(FlowSource::WingTop(Wing::L), y), mk(Mark::DeltaAE), h(-y))
                .barred()
        } else if (n + 1..=2 * n).contains(&y) {
            // Pair: C-left <-> E-left at (-n, -(y-(n+1))); E-left's west is plain.
            let t = y - (n + 1);
            BondTemplate::new(flow(FlowSource::WingSide(Wing::L), t), mk(Mark::DeltaCE), v(-t))
                .barred()
        } else {
            // Pair: D-left <-> E-bottom at (-(1+t), -(n-1)); E-bottom's south
            // is the barred side of its bond, so the glue side stays plain.
            let c = -y - n + 1;
            BondTemplate::new(flow(FlowSource::WingBottom(Wing::L), c), mk(Mark::DeltaDE), h(-c))
        }
    }

    /// Delivery bond between the east glue column (n-1, y) and the block at
    /// (n, y); the glue cell's east side is the barred complement, which is
    /// also the outward fold label of A-right / C-right / D-right.
    fn glue_delivery_east(&self, y: i64) -> BondTemplate {
        let n = self.n;
        if (1..=n).contains(&y) {
            BondTemplate::new(
                flow(FlowSource::WingTop(Wing::R), y),
                mk(Mark::DeltaAF),
                h(n - 1 + y),
            )
        } else if (n + 1..=2 * n).contains(&y) {
            let t = y - (n + 1);
            BondTemplate::new(flow(FlowSource::WingSide(Wing::R), t), mk(Mark::DeltaCF), v(-t))
        } else {
            let c = -y - n + 1;
            BondTemplate::new(
                flow(FlowSource::WingBottom(Wing::R), c),
                mk(Mark::DeltaDF),
                h(n - 1 + c),
            )
            .barred()
        }
    }

    /// Outward label of a wing's far side edge at row y (E-left west side /
    /// F-right east side, both in plain form).
    fn side_edge_label(&self, wing: Wing, y: i64) -> BondTemplate {
        let d = match wing {
            Wing::L => Mark::DeltaCE,
            Wing::R => Mark::DeltaCF,
        };
        BondTemplate::new(flow(FlowSource::WingSide(wing), -y), mk(d), v(y))
    }

    /// True when a flow index denotes a structural corner cell rather than a
    /// pattern position.
    pub fn flow_is_corner(&self, f: FlowRef) -> bool {
        let n = self.n;
        match f.source {
            FlowSource::Strip => !(1..=n - 2).contains(&f.idx),
            FlowSource::WingTop(_) | FlowSource::WingBottom(_) => f.idx == 1 || f.idx == n,
            FlowSource::WingSide(_) => f.idx == 0 || f.idx == n - 1,
        }
    }

    /// The four side templates of the cell at (x,y): [N, E, S, W].
    pub fn cell_sides(&self, x: i64, y: i64) -> Option<[BondTemplate; 4]> {
        if !self.cell_exists(x, y) {
            return None;
        }
        let nb = self.vbond(x, y).expect("north bond");
        let eb = self.hbond(x + 1, y).expect("east bond").barred();
        let sb = self.vbond(x, y - 1).expect("south bond").barred();
        let wb = self.hbond(x, y).expect("west bond");
        Some([nb, eb, sb, wb])
    }

    /// Materialize a template into a concrete side label given a drawing of
    /// the flow strings. `draw` maps (source, idx) to a pattern index.
    pub fn materialize(
        &self,
        t: &BondTemplate,
        draw: &dyn Fn(FlowRef) -> u32,
    ) -> SideLabel {
        let syms: Vec<Symbol> = t
            .slots
            .iter()
            .map(|s| match s {
                Slot::Sym(sym) => *sym,
                Slot::Flow(f) => {
                    if self.flow_is_corner(*f) {
                        Symbol::mark(Mark::Beta)
                    } else {
                        Symbol::pattern(draw(*f))
                    }
                }
            })
            .collect();
        let lbl = SideLabel(syms);
        if t.barred {
            lbl.complement()
        } else {
            lbl
        }
    }

    /// The seven fold-edge pairs in fold orientation. Segment cells pair up
    /// index-by-index; the two labels at each position must be element-wise
    /// complementary after the cut.
    pub fn fold_pairs(&self) -> Vec<FoldPair> {
        use crate::side::Dir;
        let n = self.n;
        let seg = |cells: Vec<(Coord, Dir)>| EdgeSegment { cells };
        vec![
            FoldPair {
                number: 1,
                label: "C-top / D-bottom",
                a: seg((0..n).map(|x| ((x, 2 * n), Dir::N)).collect()),
                b: seg((0..n).map(|x| ((x, -(2 * n - 1)), Dir::S)).collect()),
            },
            FoldPair {
                number: 2,
                label: "A-left / E-top",
                a: seg((1..=n).map(|y| ((0, y), Dir::W)).collect()),
                b: seg((1..=n).map(|y| ((-y, 0), Dir::N)).collect()),
            },
            FoldPair {
                number: 3,
                label: "A-right / F-top",
                a: seg((1..=n).map(|y| ((n - 1, y), Dir::E)).collect()),
                b: seg((1..=n).map(|y| ((n - 1 + y, 0), Dir::N)).collect()),
            },
            FoldPair {
                number: 4,
                label: "D-left / E-bottom",
                a: seg((0..n).map(|t| ((0, -n - t), Dir::W)).collect()),
                b: seg((0..n).map(|t| ((-1 - t, -(n - 1)), Dir::S)).collect()),
            },
            FoldPair {
                number: 5,
                label: "D-right / F-bottom",
                a: seg((0..n).map(|t| ((n - 1, -n - t), Dir::E)).collect()),
                b: seg((0..n).map(|t| ((n + t, -(n - 1)), Dir::S)).collect()),
            },
            FoldPair {
                number: 6,
                label: "C-left / E-left",
                a: seg((0..n).map(|t| ((0, n + 1 + t), Dir::W)).collect()),
                b: seg((0..n).map(|t| ((-n, -t), Dir::W)).collect()),
            },
            FoldPair {
                number: 7,
                label: "C-right / F-right",
                a: seg((0..n).map(|t| ((n - 1, n + 1 + t), Dir::E)).collect()),
                b: seg((0..n).map(|t| ((2 * n - 1, -t), Dir::E)).collect()),
            },
        ]
    }

    /// Region-to-cells map plus shading, the documented layout contract.
    pub fn region_map(&self) -> BTreeMap<&'static str, Vec<Coord>> {
        RegionId::all().iter().map(|r| (r.name(), self.region_cells(*r))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::side::Dir;

    #[test]
    fn rejects_small_n() {
        assert!(Layout::new(3).is_err());
        assert!(Layout::new(4).is_ok());
    }

    #[test]
    fn unshaded_is_exactly_six_faces() {
        for n in [4i64, 6, 8] {
            let l = Layout::new(n).unwrap();
            assert_eq!(l.unshaded_cells().len() as i64, 6 * n * n, "n={}", n);
        }
    }

    #[test]
    fn region_i_matches_committed_ranges() {
        // Region I for n=4: columns -4..-1, rows -7..-4.
        let l = Layout::new(4).unwrap();
        let cells = l.region_cells(RegionId::I);
        assert_eq!(cells.len(), 16);
        assert!(cells.iter().all(|&(x, y)| (-4..=-1).contains(&x) && (-7..=-4).contains(&y)));
    }

    #[test]
    fn every_adjacent_pair_is_complementary_by_construction() {
        let l = Layout::new(6).unwrap();
        let draw = |f: FlowRef| (f.idx.unsigned_abs() % 2 + 1) as u32;
        for y in -(2 * l.n + 1)..=2 * l.n + 1 {
            for x in -(2 * l.n + 1)..=3 * l.n + 1 {
                if !l.cell_exists(x, y) {
                    continue;
                }
                let sides = l.cell_sides(x, y).unwrap();
                // East neighbor.
                if l.cell_exists(x + 1, y) {
                    let other = l.cell_sides(x + 1, y).unwrap();
                    let a = l.materialize(&sides[Dir::E as usize], &draw);
                    let b = l.materialize(&other[Dir::W as usize], &draw);
                    assert_eq!(a, b.complement(), "h-bond at ({},{})", x, y);
                }
                // North neighbor.
                if l.cell_exists(x, y + 1) {
                    let other = l.cell_sides(x, y + 1).unwrap();
                    let a = l.materialize(&sides[Dir::N as usize], &draw);
                    let b = l.materialize(&other[Dir::S as usize], &draw);
                    assert_eq!(a, b.complement(), "v-bond at ({},{})", x, y);
                }
            }
        }
    }

    #[test]
    fn cells_reference_at_most_one_flow() {
        for n in [4i64, 5, 6, 8] {
            let l = Layout::new(n).unwrap();
            for y in -(2 * n)..=2 * n {
                for x in -(2 * n)..3 * n {
                    let Some(sides) = l.cell_sides(x, y) else { continue };
                    let flows: std::collections::BTreeSet<_> = sides
                        .iter()
                        .filter_map(|t| t.flow())
                        .filter(|f| !l.flow_is_corner(*f))
                        .collect();
                    assert!(
                        flows.len() <= 1,
                        "cell ({},{}) of n={} references {:?}",
                        x,
                        y,
                        n,
                        flows
                    );
                }
            }
        }
    }

    #[test]
    fn fold_pairs_are_complementary_in_the_design() {
        for n in [4i64, 6, 8] {
            let l = Layout::new(n).unwrap();
            let draw = |f: FlowRef| (f.idx.unsigned_abs() % 3 + 1) as u32;
            for pair in l.fold_pairs() {
                assert_eq!(pair.a.cells.len(), pair.b.cells.len());
                assert_eq!(pair.a.cells.len() as i64, n);
                for (((xa, ya), da), ((xb, yb), db)) in
                    pair.a.cells.iter().zip(pair.b.cells.iter())
                {
                    let sa = l.cell_sides(*xa, *ya).unwrap()[*da as usize];
                    let sb = l.cell_sides(*xb, *yb).unwrap()[*db as usize];
                    let la = l.materialize(&sa, &draw);
                    let lb = l.materialize(&sb, &draw);
                    assert_eq!(
                        la,
                        lb.complement(),
                        "pair {} at ({},{}) vs ({},{}) for n={}",
                        pair.number,
                        xa,
                        ya,
                        xb,
                        yb,
                        n
                    );
                }
            }
        }
    }
}
