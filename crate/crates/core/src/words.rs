//! Words in the generators `τ_i, σ_i, ρ_i, ρ_i^{-1}` (ambient maps) and
//! `ι_i` (covering involutions of the hypersurface).
//!
//! A word is read like a composition: the leftmost letter is applied last,
//! so `"R1 R2"` means `ρ_1 ∘ ρ_2`.

use std::fmt;

use thiserror::Error;

use crate::hypersurface::Axis;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKind {
    Tau,
    Sigma,
    Rho,
    RhoInv,
    Iota,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Alphabet {
    /// `τ, σ, ρ, ρ^{-1}`: birational maps of the ambient product.
    Ambient,
    /// `ι`: birational maps of the hypersurface itself.
    Restricted,
}

impl GenKind {
    pub fn alphabet(self) -> Alphabet {
        match self {
            GenKind::Iota => Alphabet::Restricted,
            _ => Alphabet::Ambient,
        }
    }

    fn inverse(self) -> GenKind {
        match self {
            GenKind::Rho => GenKind::RhoInv,
            GenKind::RhoInv => GenKind::Rho,
            k => k,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub kind: GenKind,
    pub axis: Axis,
}

impl Generator {
    pub fn new(kind: GenKind, axis: Axis) -> Self {
        Generator { kind, axis }
    }

    pub fn inverse(self) -> Self {
        Generator { kind: self.kind.inverse(), axis: self.axis }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = self.axis;
        match self.kind {
            GenKind::Tau => write!(f, "T{a}"),
            GenKind::Sigma => write!(f, "S{a}"),
            GenKind::Rho => write!(f, "R{a}"),
            GenKind::RhoInv => write!(f, "R{a}^-1"),
            GenKind::Iota => write!(f, "I{a}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("unknown token {0:?}")]
    UnknownToken(String),
    #[error("axis {axis} in token {token:?} out of range 1..={n}")]
    AxisOutOfRange { token: String, axis: usize, n: usize },
    #[error("negative power in {0:?}: only R admits negative exponents")]
    NegativePower(String),
    #[error("ambient letters (T, S, R) and restricted letters (I) cannot be mixed")]
    MixedAlphabet,
    #[error("operation needs letters from {expected}, found {found}")]
    WrongAlphabet { expected: &'static str, found: Generator },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Generator>,
}

impl Word {
    pub fn new(letters: Vec<Generator>) -> Result<Self, WordError> {
        if let Some(first) = letters.first() {
            let a = first.kind.alphabet();
            if letters.iter().any(|g| g.kind.alphabet() != a) {
                return Err(WordError::MixedAlphabet);
            }
        }
        Ok(Word { letters })
    }

    pub fn empty() -> Self {
        Word::default()
    }

    pub fn letters(&self) -> &[Generator] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `None` for the empty word.
    pub fn alphabet(&self) -> Option<Alphabet> {
        self.letters.first().map(|g| g.kind.alphabet())
    }

    /// Parses whitespace-separated tokens `K<axis>[^<exp>]`, `K` one of
    /// `T S R I`. Powers are expanded into repeated letters.
    pub fn parse(s: &str, n_factors: usize) -> Result<Self, WordError> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            let unknown = || WordError::UnknownToken(tok.to_string());
            let mut chars = tok.chars();
            let kind = match chars.next() {
                Some('T') => GenKind::Tau,
                Some('S') => GenKind::Sigma,
                Some('R') => GenKind::Rho,
                Some('I') => GenKind::Iota,
                _ => return Err(unknown()),
            };
            let rest = chars.as_str();
            let (axis_str, exp) = match rest.split_once('^') {
                Some((a, e)) => (a, e.parse::<i64>().map_err(|_| unknown())?),
                None => (rest, 1),
            };
            if axis_str.is_empty() || !axis_str.bytes().all(|b| b.is_ascii_digit()) {
                return Err(unknown());
            }
            let number: usize = axis_str.parse().map_err(|_| unknown())?;
            let axis = Axis::from_number(number)
                .filter(|a| a.index() < n_factors)
                .ok_or_else(|| WordError::AxisOutOfRange { token: tok.to_string(), axis: number, n: n_factors })?;
            let gen = match (kind, exp < 0) {
                (GenKind::Rho, true) => Generator::new(GenKind::RhoInv, axis),
                (_, true) => return Err(WordError::NegativePower(tok.to_string())),
                _ => Generator::new(kind, axis),
            };
            letters.extend(std::iter::repeat_n(gen, exp.unsigned_abs() as usize));
        }
        Word::new(letters)
    }

    fn require(&self, ok: impl Fn(GenKind) -> bool, expected: &'static str) -> Result<(), WordError> {
        match self.letters.iter().find(|g| !ok(g.kind)) {
            Some(&found) => Err(WordError::WrongAlphabet { expected, found }),
            None => Ok(()),
        }
    }

    /// Free reduction of a word in `ρ_i^{±1}`: cancels adjacent `ρ_i ρ_i^{-1}`
    /// and `ρ_i^{-1} ρ_i` until none remain.
    pub fn reduce_rho_free(&self) -> Result<Word, WordError> {
        self.require(|k| matches!(k, GenKind::Rho | GenKind::RhoInv), "{R, R^-1}")?;
        Ok(Word { letters: stack_reduce(&self.letters, |a, b| a.axis == b.axis && a.kind == b.kind.inverse()) })
    }

    /// Reduction in the free product of order-two groups: cancels adjacent
    /// equal letters `ι_i ι_i`.
    pub fn uc_reduce(&self) -> Result<Word, WordError> {
        self.require(|k| k == GenKind::Iota, "{I}")?;
        Ok(Word { letters: stack_reduce(&self.letters, |a, b| a == b) })
    }

    /// Image on the hypersurface: `τ_i, σ_i -> ι_i`, `ρ_i^{±1} -> ι_i ι_i`,
    /// then reduced. A restricted word is reduced as is.
    pub fn restrict_to_x(&self) -> Word {
        let letters: Vec<Generator> = self
            .letters
            .iter()
            .flat_map(|g| {
                let iota = Generator::new(GenKind::Iota, g.axis);
                match g.kind {
                    GenKind::Tau | GenKind::Sigma | GenKind::Iota => vec![iota],
                    GenKind::Rho | GenKind::RhoInv => vec![iota, iota],
                }
            })
            .collect();
        Word { letters: stack_reduce(&letters, |a, b| a == b) }
    }

    /// Inverse word: reversed, each letter inverted.
    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|g| g.inverse()).collect() }
    }

    pub fn concat(&self, other: &Word) -> Result<Word, WordError> {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word::new(letters)
    }

    /// Axis of the leftmost (last applied) letter.
    pub fn leading_axis(&self) -> Option<Axis> {
        self.letters.first().map(|g| g.axis)
    }
}

fn stack_reduce(letters: &[Generator], cancels: impl Fn(&Generator, &Generator) -> bool) -> Vec<Generator> {
    let mut out: Vec<Generator> = Vec::with_capacity(letters.len());
    for g in letters {
        match out.last() {
            Some(top) if cancels(top, g) => {
                out.pop();
            }
            _ => out.push(*g),
        }
    }
    out
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, g) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}
