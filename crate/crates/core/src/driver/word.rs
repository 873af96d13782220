//! Finite binary words, the `{0, ⋆, 1}` order, and finitely described
//! infinite words.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// A finite word over `{0, 1}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryWord {
    letters: Vec<bool>,
}

impl BinaryWord {
    pub fn new(letters: Vec<bool>) -> Self {
        BinaryWord { letters }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn letters(&self) -> &[bool] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letter(&self, i: usize) -> Option<bool> {
        self.letters.get(i).copied()
    }

    pub fn prefix(&self, n: usize) -> BinaryWord {
        BinaryWord::new(self.letters[..n.min(self.len())].to_vec())
    }

    pub fn child(&self, bit: bool) -> BinaryWord {
        let mut letters = self.letters.clone();
        letters.push(bit);
        BinaryWord { letters }
    }

    pub fn is_prefix_of(&self, other: &BinaryWord) -> bool {
        other.letters.starts_with(&self.letters)
    }

    /// All words of length `n`, in lexicographic order.
    pub fn all_of_length(n: usize) -> Vec<BinaryWord> {
        assert!(n < usize::BITS as usize);
        (0..1usize << n)
            .map(|code| BinaryWord::new((0..n).map(|i| code >> (n - 1 - i) & 1 == 1).collect()))
            .collect()
    }

    /// The letters as order keys, optionally followed by `⋆`.
    pub fn key(&self, star: bool) -> Vec<Symbol> {
        let mut k: Vec<Symbol> = self
            .letters
            .iter()
            .map(|&b| if b { Symbol::One } else { Symbol::Zero })
            .collect();
        if star {
            k.push(Symbol::Star);
        }
        k
    }
}

/// Letters of `{0, ⋆, 1}` in their order; a missing letter sorts first
/// because `Vec` comparison puts a proper prefix first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Zero,
    Star,
    One,
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Symbol::Zero => "0",
            Symbol::Star => "*",
            Symbol::One => "1",
        })
    }
}

/// `ε` for the empty word.
impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("ε");
        }
        for &b in &self.letters {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "ε" || s == "e" {
            return Ok(Self::empty());
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::UnknownWord(s.into())),
            })
            .collect::<Result<Vec<bool>>>()
            .map(BinaryWord::new)
    }
}

/// Periodic continuation of an infinite word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Tail {
    AllZero,
    Periodic(Vec<bool>),
}

/// `prefix` followed by `tail`, an element of `{0,1}^N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InfiniteWordSpec {
    pub prefix: BinaryWord,
    pub tail: Tail,
}

impl InfiniteWordSpec {
    pub fn new(prefix: BinaryWord, tail: Tail) -> Result<Self> {
        if matches!(&tail, Tail::Periodic(p) if p.is_empty()) {
            return Err(Error::UnknownWord(alloc::format!("{prefix}()")));
        }
        Ok(InfiniteWordSpec { prefix, tail })
    }

    pub fn zeros_after(prefix: BinaryWord) -> Self {
        InfiniteWordSpec {
            prefix,
            tail: Tail::AllZero,
        }
    }

    pub fn letter(&self, i: usize) -> bool {
        if let Some(b) = self.prefix.letter(i) {
            return b;
        }
        match &self.tail {
            Tail::AllZero => false,
            Tail::Periodic(p) => p[(i - self.prefix.len()) % p.len()],
        }
    }

    /// The prefix `w_n` of length `n`.
    pub fn truncate(&self, n: usize) -> BinaryWord {
        BinaryWord::new((0..n).map(|i| self.letter(i)).collect())
    }

    /// Whether some letter at index `>= n` is a 1.
    pub fn has_one_from(&self, n: usize) -> bool {
        let in_prefix = self.prefix.letters().iter().skip(n).any(|&b| b);
        let in_tail = matches!(&self.tail, Tail::Periodic(p) if p.iter().any(|&b| b));
        in_prefix || in_tail
    }
}

/// `0110(0)` style: the parenthesised pattern repeats forever; without one
/// the tail is all zeros.
impl fmt::Display for InfiniteWordSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.prefix.is_empty() {
            write!(f, "{}", self.prefix)?;
        }
        match &self.tail {
            Tail::AllZero => f.write_str("(0)"),
            Tail::Periodic(p) => write!(f, "({})", BinaryWord::new(p.clone())),
        }
    }
}

impl FromStr for InfiniteWordSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::UnknownWord(s.into());
        let Some(open) = compact.find('(') else {
            return Ok(Self::zeros_after(compact.parse()?));
        };
        if !compact.ends_with(')') || open + 1 >= compact.len() - 1 {
            return Err(bad());
        }
        let prefix: BinaryWord = if open == 0 {
            BinaryWord::empty()
        } else {
            compact[..open].parse()?
        };
        let pattern: BinaryWord = compact[open + 1..compact.len() - 1]
            .parse()
            .map_err(|_| bad())?;
        let tail = if pattern.letters().iter().all(|&b| !b) {
            Tail::AllZero
        } else {
            Tail::Periodic(pattern.letters().to_vec())
        };
        Self::new(prefix, tail)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn symbol_order() {
        let w = |s: &str| s.parse::<BinaryWord>().unwrap();
        // no letter < 0 < * < 1
        assert!(w("").key(false) < w("0").key(false));
        assert!(w("0").key(false) < w("").key(true));
        assert!(w("").key(true) < w("1").key(false));
        // 00 < 0* < 01 < * < 10 < 1* < 11
        let chain = [
            w("00").key(false),
            w("0").key(true),
            w("01").key(false),
            w("").key(true),
            w("10").key(false),
            w("1").key(true),
            w("11").key(false),
        ];
        assert!(chain.windows(2).all(|p| p[0] < p[1]));
        assert_eq!(
            BinaryWord::all_of_length(2)
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>(),
            ["00", "01", "10", "11"]
        );
        assert_eq!(BinaryWord::all_of_length(0), vec![BinaryWord::empty()]);
    }

    #[test]
    fn prefixes_and_children() {
        let w: BinaryWord = "101".parse().unwrap();
        assert_eq!(w.prefix(2).to_string(), "10");
        assert!(w.prefix(2).is_prefix_of(&w));
        assert_eq!(w.child(false).to_string(), "1010");
        assert_eq!(BinaryWord::empty().to_string(), "ε");
        assert!("012".parse::<BinaryWord>().is_err());
    }

    #[test]
    fn infinite_words() {
        let w: InfiniteWordSpec = "1(01)".parse().unwrap();
        assert_eq!(w.truncate(6).to_string(), "101010");
        assert_eq!(w.to_string(), "1(01)");
        assert!(w.has_one_from(100));
        let z: InfiniteWordSpec = "10".parse().unwrap();
        assert_eq!(z.tail, Tail::AllZero);
        assert_eq!(z.truncate(4).to_string(), "1000");
        assert!(!z.has_one_from(1));
        assert_eq!(
            "(000)".parse::<InfiniteWordSpec>().unwrap(),
            InfiniteWordSpec::zeros_after(BinaryWord::empty())
        );
        assert!("1()".parse::<InfiniteWordSpec>().is_err());
        assert!(InfiniteWordSpec::new(BinaryWord::empty(), Tail::Periodic(vec![])).is_err());
    }
}
