//! DNA sequences and Watson-Crick complementation.
//!
//! Sequences are stored 5'->3'. Complementing flips every base *and* the
//! reading direction, so `complement` returns the reverse complement when the
//! result is re-read 5'->3'. This matches the convention that an unmarked
//! sequence is always written 5'->3' (the complement of b1..bn is bn'..b1'),
//! which is non-standard notation but chemically correct.

use std::fmt;

use crate::error::ModelError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Base {
    A,
    T,
    C,
    G,
}

impl Base {
    pub fn complement(self) -> Base {
        match self {
            Base::A => Base::T,
            Base::T => Base::A,
            Base::C => Base::G,
            Base::G => Base::C,
        }
    }

    pub fn from_char(c: char) -> Result<Base, ModelError> {
        match c {
            'A' | 'a' => Ok(Base::A),
            'T' | 't' => Ok(Base::T),
            'C' | 'c' => Ok(Base::C),
            'G' | 'g' => Ok(Base::G),
            other => Err(ModelError::BadBase(other)),
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Base::A => 'A',
            Base::T => 'T',
            Base::C => 'C',
            Base::G => 'G',
        }
    }
}

/// A DNA sequence in 5'->3' orientation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct DnaSeq(pub Vec<Base>);

impl DnaSeq {
    pub fn parse(s: &str) -> Result<DnaSeq, ModelError> {
        s.chars().map(Base::from_char).collect::<Result<_, _>>().map(DnaSeq)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Watson-Crick complement, returned 5'->3' (reverse complement).
    pub fn complement(&self) -> DnaSeq {
        DnaSeq(self.0.iter().rev().map(|b| b.complement()).collect())
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &DnaSeq) -> DnaSeq {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        DnaSeq(v)
    }

    /// Subsequence from `i` to `j`, 1-based inclusive, requiring `1 <= i < j <= len`.
    pub fn subsequence(&self, i: usize, j: usize) -> Result<DnaSeq, ModelError> {
        if i < 1 || i >= j || j > self.len() {
            return Err(ModelError::SubsequenceRange { i, j, len: self.len() });
        }
        Ok(DnaSeq(self.0[i - 1..j].to_vec()))
    }

    /// Full-sequence hybridization: `self` is exactly the complement of `other`.
    pub fn hybridizes_fully(&self, other: &DnaSeq) -> bool {
        !self.is_empty() && *self == other.complement()
    }

    /// Windowed hybridization: some window of `self` (length >= `min_window`)
    /// is the complement of some window of `other`. Used when validating word
    /// designs; the assembly model itself only ever uses the full-sequence check.
    pub fn hybridizes_windowed(&self, other: &DnaSeq, min_window: usize) -> bool {
        let w = min_window.max(1);
        if self.len() < w || other.len() < w {
            return false;
        }
        // Brute force over window lengths and offsets. Word tables are short.
        for len in w..=self.len().min(other.len()) {
            for i in 0..=(self.len() - len) {
                let sub = DnaSeq(self.0[i..i + len].to_vec());
                let target = sub.complement();
                for j in 0..=(other.len() - len) {
                    if other.0[j..j + len] == target.0[..] {
                        return true;
                    }
                }
            }
        }
        false
    }
}

impl fmt::Display for DnaSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{}", b.to_char())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> DnaSeq {
        DnaSeq::parse(s).unwrap()
    }

    #[test]
    fn complement_flips_bases_and_direction() {
        // 5'-ACG-3' complements to 3'-TGC-5', i.e. CGT read 5'->3'.
        assert_eq!(seq("ACG").complement(), seq("CGT"));
    }

    #[test]
    fn complement_of_empty_is_empty() {
        assert_eq!(DnaSeq::default().complement(), DnaSeq::default());
    }

    #[test]
    fn complement_is_involution() {
        let s = seq("GATTACA");
        assert_eq!(s.complement().complement(), s);
    }

    #[test]
    fn concat_appends() {
        assert_eq!(seq("AC").concat(&seq("GT")), seq("ACGT"));
        assert_eq!(seq("AC").concat(&DnaSeq::default()), seq("AC"));
    }

    #[test]
    fn complement_of_concat_reverses_order() {
        let s = seq("AC");
        let t = seq("GT");
        assert_eq!(s.concat(&t).complement(), t.complement().concat(&s.complement()));
    }

    #[test]
    fn subsequence_is_one_based_inclusive() {
        let s = seq("ACGTA");
        assert_eq!(s.subsequence(2, 4).unwrap(), seq("CGT"));
        assert_eq!(s.subsequence(1, s.len()).unwrap(), s);
        assert!(s.subsequence(4, 2).is_err());
        assert!(s.subsequence(0, 3).is_err());
        assert!(s.subsequence(2, 6).is_err());
    }

    #[test]
    fn full_hybridization() {
        let s = seq("ACGT");
        assert!(s.hybridizes_fully(&s.complement()));
        assert!(!seq("AAAA").hybridizes_fully(&seq("AAAA")));
    }

    #[test]
    fn windowed_hybridization_finds_embedded_complement() {
        // ACGTAC contains CGT (positions 2..4); a 3-base window complementary
        // to CGT must therefore hybridize with it.
        let s = seq("ACGTAC");
        let probe = seq("CGT").complement();
        assert!(s.hybridizes_windowed(&probe, 3));
        assert!(!seq("AAAA").hybridizes_windowed(&seq("AAAA"), 2));
    }
}
