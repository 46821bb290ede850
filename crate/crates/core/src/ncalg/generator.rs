use smallvec::SmallVec;
use std::cmp::Ordering;
use std::fmt;

/// A generator of the free algebra.
///
/// Variant order gives the default total order `F < k < k^-1 < E < m`,
/// then by index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    F(u8),
    K(u8),
    KInv(u8),
    E(u8),
    /// Free matrix symbol `m^a_b`.
    M(u8, u8),
}

impl Generator {
    /// Index validity for matrix size `n` (Lie rank `n - 1`).
    pub fn valid_for(&self, n: usize) -> bool {
        match *self {
            Generator::E(i) | Generator::F(i) | Generator::K(i) | Generator::KInv(i) => {
                i >= 1 && (i as usize) < n
            }
            Generator::M(a, b) => a >= 1 && b >= 1 && (a as usize) <= n && (b as usize) <= n,
        }
    }

    pub fn is_cartan(&self) -> bool {
        matches!(self, Generator::K(_) | Generator::KInv(_))
    }

    pub fn inverse(&self) -> Option<Generator> {
        match *self {
            Generator::K(i) => Some(Generator::KInv(i)),
            Generator::KInv(i) => Some(Generator::K(i)),
            _ => None,
        }
    }

    /// Largest index carried, used for rank bookkeeping.
    pub fn index(&self) -> u8 {
        match *self {
            Generator::E(i) | Generator::F(i) | Generator::K(i) | Generator::KInv(i) => i,
            Generator::M(a, b) => a.max(b),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::E(i) => write!(f, "E{i}"),
            Generator::F(i) => write!(f, "F{i}"),
            Generator::K(i) => write!(f, "k{i}"),
            Generator::KInv(i) => write!(f, "k{i}^-1"),
            Generator::M(a, b) => write!(f, "m{a}{b}"),
        }
    }
}

/// A word in the generators, ordered graded-lexicographically (length
/// first, then generator order).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub SmallVec<[Generator; 8]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn single(g: Generator) -> Self {
        Word(SmallVec::from_slice(&[g]))
    }

    pub fn from_slice(gs: &[Generator]) -> Self {
        Word(SmallVec::from_slice(gs))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, rhs: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&rhs.0);
        Word(v)
    }

    pub fn gens(&self) -> &[Generator] {
        &self.0
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Generator::*;

    #[test]
    fn generator_order() {
        assert!(F(1) < K(1));
        assert!(K(1) < KInv(1));
        assert!(KInv(1) < E(1));
        assert!(E(3) < M(1, 1));
    }

    #[test]
    fn graded_lex() {
        let short = Word::from_slice(&[E(1)]);
        let long = Word::from_slice(&[F(1), F(1)]);
        assert!(short < long);
        assert!(Word::from_slice(&[F(1), E(1)]) < Word::from_slice(&[E(1), F(1)]));
    }

    #[test]
    fn validity() {
        assert!(E(1).valid_for(2));
        assert!(!E(2).valid_for(2));
        assert!(M(2, 2).valid_for(2));
        assert!(!M(3, 1).valid_for(2));
        assert!(!K(0).valid_for(3));
    }
}
