//! Symbols, complementation and temperature classes.
//!
//! The symbol set is closed under complementation: every symbol exists in a
//! plain and a barred form. Structured identifiers (pattern index, horizontal
//! and vertical position counters) are first class so compilers never parse
//! strings. Each symbol kind carries the threshold-temperature class of the
//! bonds its words form; a side's bond class is the minimum over its
//! components (weakest word denatures first).

use std::fmt;

use crate::error::ModelError;

/// Threshold-temperature class of a bond, rank 1..=3. Higher rank = stronger.
/// A bond of class c denatures when the solution temperature rank is >= c.
pub type TempClass = u8;

pub const CLASS_WEAK: TempClass = 1;
pub const CLASS_BORDER: TempClass = 2;
pub const CLASS_STRONG: TempClass = 3;

/// Structural constants. Names follow the tile-program conventions: kappa
/// marks for chain bonds, sigma marks for await bonds closed by later steps,
/// delta marks for the weak borderline bonds severed by the final cut.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mark {
    Alpha,     // lock-column chain
    AlphaB,    // lock-column chain, second component
    Beta,      // edge/hinge-column chain and structural corner content
    BetaR,     // relay cap-column chain, right-hand zones
    RhoPrime,  // hinge await between wing and central column
    Kappa1,    // base-strip horizontal chain
    Kappa2,    // copy-column chain, interior columns
    Kappa2L,   // copy-column chain, westmost copy column
    Kappa2R,   // copy-column chain, eastmost copy column
    Kappa3,    // turn-block filler (weak)
    Phi1,      // X constant, first component (weak)
    Phi2,
    Phi3,
    Sigma1, // row-border await, weak family (hinges, relay rows)
    Sigma2,
    Sigma3, // row-border await, strong family (closed by lock columns)
    Sigma4,
    SigmaG1, // glue-strip await, closed by lock columns
    SigmaG2,
    Tau1, // glue-strip self chain (weak)
    Tau2,
    Omega, // wrap-edge exposure mark (weak): row 2n / row -(2n-1) outer labels
    Nu1, // pattern-free cap over strip positions 1 and n-2
    NuL,
    NuR,
    Lambda1,  // left relay-turn horizontal flow
    Lambda2,  // left relay-turn vertical flow
    Lambda1R, // right relay-turn horizontal flow
    Lambda2R, // right relay-turn vertical flow
    Chi1, // relay-turn inert chain (weak)
    Chi2,
    KappaE,  // wing body horizontal chain
    KappaEb, // wing body horizontal chain, third component
    KappaE2, // wing body chain on the column feeding the side glue edge
    KappaT,  // wing top edge chain
    KappaB,  // wing bottom edge chain
    DeltaAE, // borderline pair marks (A-left/E-top etc), severed by the cut
    DeltaAF,
    DeltaDE,
    DeltaDF,
    DeltaCE,
    DeltaCF,
}

impl Mark {
    pub fn temp_class(self) -> TempClass {
        use Mark::*;
        match self {
            Kappa3 | Phi1 | Phi2 | Phi3 | Sigma1 | Sigma2 | Tau1 | Tau2 | Omega | Chi1 | Chi2 => {
                CLASS_WEAK
            }
            DeltaAE | DeltaAF | DeltaDE | DeltaDF | DeltaCE | DeltaCF => CLASS_BORDER,
            _ => CLASS_STRONG,
        }
    }

    pub fn name(self) -> &'static str {
        use Mark::*;
        match self {
            Alpha => "alpha",
            AlphaB => "alphab",
            Beta => "beta",
            BetaR => "betar",
            RhoPrime => "rho",
            Kappa1 => "kappa1",
            Kappa2 => "kappa2",
            Kappa2L => "kappa2l",
            Kappa2R => "kappa2r",
            Kappa3 => "kappa3",
            Phi1 => "phi1",
            Phi2 => "phi2",
            Phi3 => "phi3",
            Sigma1 => "sigma1",
            Sigma2 => "sigma2",
            Sigma3 => "sigma3",
            Sigma4 => "sigma4",
            SigmaG1 => "sigmag1",
            SigmaG2 => "sigmag2",
            Tau1 => "tau1",
            Tau2 => "tau2",
            Omega => "omega",
            Nu1 => "nu1",
            NuL => "nul",
            NuR => "nur",
            Lambda1 => "lambda1",
            Lambda2 => "lambda2",
            Lambda1R => "lambda1r",
            Lambda2R => "lambda2r",
            Chi1 => "chi1",
            Chi2 => "chi2",
            KappaE => "kappae",
            KappaEb => "kappaeb",
            KappaE2 => "kappae2",
            KappaT => "kappat",
            KappaB => "kappab",
            DeltaAE => "delta_ae",
            DeltaAF => "delta_af",
            DeltaDE => "delta_de",
            DeltaDF => "delta_df",
            DeltaCE => "delta_ce",
            DeltaCF => "delta_cf",
        }
    }

    pub fn all() -> &'static [Mark] {
        use Mark::*;
        &[
            Alpha, AlphaB, Beta, BetaR, RhoPrime, Kappa1, Kappa2, Kappa2L, Kappa2R, Kappa3, Phi1, Phi2,
            Phi3, Sigma1, Sigma2, Sigma3, Sigma4, SigmaG1, SigmaG2, Tau1, Tau2, Omega, Nu1, NuL, NuR,
            Lambda1, Lambda2, Lambda1R, Lambda2R, Chi1, Chi2, KappaE, KappaEb, KappaE2, KappaT,
            KappaB, DeltaAE, DeltaAF, DeltaDE, DeltaDF, DeltaCE, DeltaCF,
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymbolKind {
    /// Random pattern symbol pi_k, 1-based.
    Pattern(u32),
    /// Horizontal position counter H(i).
    H(i64),
    /// Vertical position counter V(j).
    V(i64),
    /// Structural constant.
    Mark(Mark),
}

impl SymbolKind {
    pub fn temp_class(self) -> TempClass {
        match self {
            SymbolKind::Pattern(_) | SymbolKind::H(_) | SymbolKind::V(_) => CLASS_STRONG,
            SymbolKind::Mark(m) => m.temp_class(),
        }
    }
}

/// A symbol together with its polarity. `complement` flips polarity, so the
/// set is closed under complementation and `complement` is an involution with
/// no fixed point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    pub kind: SymbolKind,
    pub barred: bool,
}

impl Symbol {
    pub fn plain(kind: SymbolKind) -> Symbol {
        Symbol { kind, barred: false }
    }

    pub fn pattern(k: u32) -> Symbol {
        Symbol::plain(SymbolKind::Pattern(k))
    }

    pub fn h(i: i64) -> Symbol {
        Symbol::plain(SymbolKind::H(i))
    }

    pub fn v(j: i64) -> Symbol {
        Symbol::plain(SymbolKind::V(j))
    }

    pub fn mark(m: Mark) -> Symbol {
        Symbol::plain(SymbolKind::Mark(m))
    }

    pub fn complement(self) -> Symbol {
        Symbol { kind: self.kind, barred: !self.barred }
    }

    pub fn temp_class(self) -> TempClass {
        self.kind.temp_class()
    }

    pub fn parse(s: &str) -> Result<Symbol, ModelError> {
        let (barred, body) = match s.strip_prefix('~') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let kind = if let Some(k) = body.strip_prefix("pi") {
            SymbolKind::Pattern(k.parse().map_err(|_| ModelError::BadSymbol(s.into()))?)
        } else if let Some(i) = body.strip_prefix('H') {
            SymbolKind::H(i.parse().map_err(|_| ModelError::BadSymbol(s.into()))?)
        } else if let Some(j) = body.strip_prefix('V') {
            SymbolKind::V(j.parse().map_err(|_| ModelError::BadSymbol(s.into()))?)
        } else {
            let mark = Mark::all()
                .iter()
                .copied()
                .find(|m| m.name() == body)
                .ok_or_else(|| ModelError::BadSymbol(s.into()))?;
            SymbolKind::Mark(mark)
        };
        Ok(Symbol { kind, barred })
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.barred {
            write!(f, "~")?;
        }
        match self.kind {
            SymbolKind::Pattern(k) => write!(f, "pi{}", k),
            SymbolKind::H(i) => write!(f, "H{}", i),
            SymbolKind::V(j) => write!(f, "V{}", j),
            SymbolKind::Mark(m) => write!(f, "{}", m.name()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_is_involution_and_fixed_point_free() {
        let s = Symbol::pattern(3);
        assert_eq!(s.complement().complement(), s);
        assert_ne!(s.complement(), s);
    }

    #[test]
    fn parse_round_trip() {
        for s in [
            Symbol::pattern(2),
            Symbol::h(-7),
            Symbol::v(12),
            Symbol::mark(Mark::Kappa2L).complement(),
            Symbol::mark(Mark::DeltaCE),
        ] {
            assert_eq!(Symbol::parse(&s.to_string()).unwrap(), s);
        }
        assert!(Symbol::parse("bogus").is_err());
    }

    #[test]
    fn classes_follow_mark_table() {
        assert_eq!(Symbol::pattern(1).temp_class(), CLASS_STRONG);
        assert_eq!(Symbol::mark(Mark::Phi1).temp_class(), CLASS_WEAK);
        assert_eq!(Symbol::mark(Mark::DeltaAE).temp_class(), CLASS_BORDER);
        assert_eq!(Symbol::mark(Mark::Sigma3).temp_class(), CLASS_STRONG);
    }
}
