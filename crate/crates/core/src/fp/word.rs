use alloc::vec::Vec;
use core::fmt;

/// A freely reduced word in the generators of a presentation.
///
/// Letters are signed, one-based generator indices: `k` stands for generator
/// `k - 1` and `-k` for its inverse.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<i32>);

impl Word {
    /// Builds a word from raw letters, freely reducing it.
    pub fn new(letters: impl IntoIterator<Item = i32>) -> Self {
        let mut out: Vec<i32> = Vec::new();
        for l in letters {
            assert!(l != 0, "letter 0 is not a generator");
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// The word consisting of generator `g` (zero-based) raised to `power`.
    pub fn power(g: usize, power: i64) -> Self {
        let l = g as i32 + 1;
        let letter = if power < 0 { -l } else { l };
        Word((0..power.unsigned_abs()).map(|_| letter).collect())
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        Word::new(self.0.iter().chain(other.0.iter()).copied())
    }

    /// `[a, b] = a b a⁻¹ b⁻¹`
    pub fn commutator(a: &Word, b: &Word) -> Self {
        a.concat(b).concat(&a.inverse()).concat(&b.inverse())
    }

    /// Largest zero-based generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.unsigned_abs() as usize - 1).max()
    }

    /// Exponent sum of every generator, as a vector of length `ngens`.
    pub fn exponent_sums(&self, ngens: usize) -> Vec<i64> {
        let mut sums = alloc::vec![0i64; ngens];
        for &l in &self.0 {
            let g = l.unsigned_abs() as usize - 1;
            sums[g] += l.signum() as i64;
        }
        sums
    }

    /// Rewrites generator indices through `map` (zero-based old → zero-based new).
    pub fn relabel(&self, map: impl Fn(usize) -> usize) -> Self {
        Word::new(self.0.iter().map(|&l| {
            let g = map(l.unsigned_abs() as usize - 1) as i32 + 1;
            g * l.signum()
        }))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Zero-based column of a letter in a coset table: `2g` for the generator,
/// `2g + 1` for its inverse.
#[inline]
pub(crate) fn letter_col(l: i32) -> usize {
    let g = l.unsigned_abs() as usize - 1;
    2 * g + usize::from(l < 0)
}
