//! DNA word design: the encoding of symbols into concrete sequences.
//!
//! `enc` maps every plain symbol to a word of uniform length; barred symbols
//! map to the complement of their plain partner, so enc obeys complementation
//! by construction. Side labels encode by concatenating component words; a
//! barred side therefore encodes to the reverse-complement concatenation,
//! which is exactly the complement of the plain side's encoding.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::dna::{Base, DnaSeq};
use crate::error::{FormatError, ModelError};
use crate::side::SideLabel;
use crate::symbol::Symbol;

#[derive(Debug, Clone)]
pub struct WordTable {
    /// Plain-symbol entries only; barred lookups derive from these.
    map: BTreeMap<Symbol, DnaSeq>,
    pub word_length: usize,
    pub min_distance: usize,
}

fn hamming(a: &DnaSeq, b: &DnaSeq) -> usize {
    a.0.iter().zip(&b.0).filter(|(x, y)| x != y).count()
}

impl WordTable {
    /// Greedy construction over the 4^L candidates in lexicographic order.
    /// Every accepted word must differ from every earlier word and from every
    /// earlier word's complement in at least `min_distance` positions, and
    /// must not be its own complement. Deterministic by construction.
    pub fn build(
        symbols: &[Symbol],
        word_length: usize,
        min_distance: Option<usize>,
    ) -> Result<WordTable, ModelError> {
        let d = min_distance.unwrap_or(word_length.div_ceil(2));
        let mut chosen: Vec<DnaSeq> = Vec::new();
        let mut map = BTreeMap::new();
        let alphabet = [Base::A, Base::T, Base::C, Base::G];
        let mut pending: Vec<Symbol> = symbols
            .iter()
            .map(|s| if s.barred { s.complement() } else { *s })
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        pending.reverse();

        let total = 4usize.checked_pow(word_length as u32).unwrap_or(usize::MAX);
        let mut idx = vec![0usize; word_length];
        for _ in 0..total {
            if pending.is_empty() {
                break;
            }
            let cand = DnaSeq(idx.iter().map(|&i| alphabet[i]).collect());
            // Odometer increment for the next candidate.
            for slot in idx.iter_mut().rev() {
                *slot += 1;
                if *slot < 4 {
                    break;
                }
                *slot = 0;
            }
            if word_length == 0 || d > word_length {
                break;
            }
            if cand == cand.complement() {
                continue;
            }
            let ok = chosen.iter().all(|w| {
                hamming(w, &cand) >= d
                    && hamming(&w.complement(), &cand) >= d
                    && *w != cand
                    && w.complement() != cand
            });
            if ok {
                let sym = pending.pop().unwrap();
                map.insert(sym, cand.clone());
                chosen.push(cand);
            }
        }
        if !pending.is_empty() {
            return Err(ModelError::WordDesignInfeasible {
                length: word_length,
                distance: d,
                requested: map.len() + pending.len(),
                found: map.len(),
            });
        }
        Ok(WordTable { map, word_length, min_distance: d })
    }

    pub fn enc(&self, sym: Symbol) -> Result<DnaSeq, ModelError> {
        let plain = if sym.barred { sym.complement() } else { sym };
        let word =
            self.map.get(&plain).ok_or_else(|| ModelError::MissingWord(plain.to_string()))?;
        Ok(if sym.barred { word.complement() } else { word.clone() })
    }

    /// Encoding of a whole side: the concatenation of the component words for
    /// a canonically-oriented side, and the reverse complement for its barred
    /// partner, so that genc(complement(side)) = complement(genc(side)).
    pub fn genc(&self, side: &SideLabel) -> Result<DnaSeq, ModelError> {
        let comp = side.complement();
        // Canonical orientation: the lexicographically smaller of the pair.
        if side.0 <= comp.0 {
            let mut out = DnaSeq::default();
            for s in &side.0 {
                out = out.concat(&self.enc(*s)?);
            }
            Ok(out)
        } else {
            Ok(self.genc(&comp)?.complement())
        }
    }

    pub fn symbols(&self) -> impl Iterator<Item = (&Symbol, &DnaSeq)> {
        self.map.iter()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Re-validate all construction invariants (used by the CLI after import).
    pub fn validate(&self) -> Result<(), String> {
        let words: Vec<_> = self.map.values().cloned().collect();
        for w in &words {
            if w.len() != self.word_length {
                return Err(format!("word {} has wrong length", w));
            }
            if *w == w.complement() {
                return Err(format!("word {} is self-complementary", w));
            }
        }
        for (i, a) in words.iter().enumerate() {
            for b in words.iter().skip(i + 1) {
                if hamming(a, b) < self.min_distance || hamming(&a.complement(), b) < self.min_distance {
                    return Err(format!("words {} and {} too close", a, b));
                }
            }
        }
        Ok(())
    }

    pub const MAGIC: &'static str = "tilefold-words v1";

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", Self::MAGIC);
        let _ = writeln!(out, "length {} min-distance {}", self.word_length, self.min_distance);
        for (sym, word) in &self.map {
            let _ = writeln!(out, "{} {}", sym, word);
        }
        out
    }

    pub fn from_text(text: &str) -> Result<WordTable, FormatError> {
        let mut lines = text.lines().enumerate();
        let (_, first) = lines
            .next()
            .ok_or_else(|| FormatError::parse(1, "empty file"))?;
        if first.trim() != Self::MAGIC {
            return Err(FormatError::BadHeader { expected: Self::MAGIC.into(), got: first.into() });
        }
        let (ln, header) =
            lines.next().ok_or_else(|| FormatError::parse(2, "missing size header"))?;
        let parts: Vec<_> = header.split_whitespace().collect();
        if parts.len() != 4 || parts[0] != "length" || parts[2] != "min-distance" {
            return Err(FormatError::parse(ln + 1, "expected 'length L min-distance D'"));
        }
        let word_length =
            parts[1].parse().map_err(|_| FormatError::parse(ln + 1, "bad length"))?;
        let min_distance =
            parts[3].parse().map_err(|_| FormatError::parse(ln + 1, "bad distance"))?;
        let mut map = BTreeMap::new();
        for (ln, line) in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (sym, word) = line
                .split_once(' ')
                .ok_or_else(|| FormatError::parse(ln + 1, "expected 'symbol word'"))?;
            let sym = Symbol::parse(sym)
                .map_err(|e| FormatError::parse(ln + 1, e.to_string()))?;
            let word = DnaSeq::parse(word.trim())
                .map_err(|e| FormatError::parse(ln + 1, e.to_string()))?;
            map.insert(sym, word);
        }
        Ok(WordTable { map, word_length, min_distance })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::Mark;

    #[test]
    fn small_table_exists_and_obeys_constraints() {
        // 2 symbol pairs, L = 4, d = 2: exhaustive search over 4-mers finds one.
        let syms = [Symbol::pattern(1), Symbol::pattern(2)];
        let t = WordTable::build(&syms, 4, Some(2)).unwrap();
        assert_eq!(t.len(), 2);
        t.validate().unwrap();
    }

    #[test]
    fn impossible_constraints_fail() {
        let syms = [Symbol::pattern(1)];
        let err = WordTable::build(&syms, 1, Some(2)).unwrap_err();
        assert!(matches!(err, ModelError::WordDesignInfeasible { .. }));
    }

    #[test]
    fn enc_obeys_complementation() {
        let syms = [Symbol::pattern(1), Symbol::pattern(2), Symbol::mark(Mark::Kappa2)];
        let t = WordTable::build(&syms, 6, None).unwrap();
        for s in syms {
            assert_eq!(t.enc(s.complement()).unwrap(), t.enc(s).unwrap().complement());
        }
    }

    #[test]
    fn genc_is_a_complement_homomorphism() {
        let syms = [Symbol::pattern(1), Symbol::pattern(2), Symbol::mark(Mark::Kappa2)];
        let t = WordTable::build(&syms, 6, None).unwrap();
        let side = SideLabel::triple(
            Symbol::pattern(1),
            Symbol::mark(Mark::Kappa2).complement(),
            Symbol::pattern(2),
        );
        assert_eq!(t.genc(&side.complement()).unwrap(), t.genc(&side).unwrap().complement());
    }

    #[test]
    fn text_round_trip() {
        let syms = [Symbol::pattern(1), Symbol::h(3)];
        let t = WordTable::build(&syms, 5, None).unwrap();
        let text = t.to_text();
        let back = WordTable::from_text(&text).unwrap();
        assert_eq!(back.to_text(), text);
    }
}
