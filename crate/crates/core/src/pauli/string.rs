use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest qubit count a [`PauliString`] can encode.
pub const MAX_QUBITS: usize = 16;

/// A tensor product of single-qubit Paulis.
///
/// Stored as an X-mask and a Z-mask: `I = (0,0)`, `X = (1,0)`, `Y = (1,1)`,
/// `Z = (0,1)`. Qubit `i` (the `i`-th letter of the word) lives in bit
/// `n - 1 - i`, so qubit 0 is the most significant factor of the Kronecker
/// product and the masks line up with dense matrix row indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    n: u8,
    x: u32,
    z: u32,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_QUBITS, "qubit count {n} above {MAX_QUBITS}");
        Self { n: n as u8, x: 0, z: 0 }
    }

    /// Builds a string from letters in `{0,1,2,3}` meaning `{I,X,Y,Z}`.
    pub fn from_letters(letters: &[u8]) -> Result<Self> {
        let n = letters.len();
        if n > MAX_QUBITS {
            return Err(Error::QubitCapExceeded { n, cap: MAX_QUBITS });
        }
        let mut p = Self::identity(n);
        for (i, &l) in letters.iter().enumerate() {
            if l > 3 {
                return Err(Error::InvalidPauliWord(format!("{letters:?}")));
            }
            p = p.with_letter(i, l);
        }
        Ok(p)
    }

    /// Builds a string from its X- and Z-masks.
    pub fn from_masks(n: usize, x: u32, z: u32) -> Self {
        assert!(n <= MAX_QUBITS, "qubit count {n} above {MAX_QUBITS}");
        let full = mask(n);
        assert!(x & !full == 0 && z & !full == 0, "mask wider than {n} qubits");
        Self { n: n as u8, x, z }
    }

    /// Inverse of [`PauliString::index`].
    pub fn from_index(n: usize, index: usize) -> Self {
        let full = mask(n) as usize;
        Self::from_masks(n, ((index >> n) & full) as u32, (index & full) as u32)
    }

    /// Position of this string in a `4^n` coefficient vector: `(x << n) | z`.
    #[inline]
    pub fn index(&self) -> usize {
        ((self.x as usize) << self.n) | self.z as usize
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn x_mask(&self) -> u32 {
        self.x
    }

    #[inline]
    pub fn z_mask(&self) -> u32 {
        self.z
    }

    /// Number of non-identity letters.
    #[inline]
    pub fn weight(&self) -> usize {
        (self.x | self.z).count_ones() as usize
    }

    #[inline]
    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// Letter of qubit `i` as `0..=3` for `I, X, Y, Z`.
    pub fn letter(&self, i: usize) -> u8 {
        let bit = self.n as usize - 1 - i;
        let xb = (self.x >> bit) & 1;
        let zb = (self.z >> bit) & 1;
        match (xb, zb) {
            (0, 0) => 0,
            (1, 0) => 1,
            (1, 1) => 2,
            _ => 3,
        }
    }

    pub fn letters(&self) -> Vec<u8> {
        (0..self.num_qubits()).map(|i| self.letter(i)).collect()
    }

    fn with_letter(mut self, i: usize, letter: u8) -> Self {
        let bit = 1u32 << (self.n as usize - 1 - i);
        self.x &= !bit;
        self.z &= !bit;
        if letter == 1 || letter == 2 {
            self.x |= bit;
        }
        if letter == 2 || letter == 3 {
            self.z |= bit;
        }
        self
    }

    /// All `4^n` strings in index order.
    pub fn all(n: usize) -> impl Iterator<Item = PauliString> {
        (0..1usize << (2 * n)).map(move |i| PauliString::from_index(n, i))
    }
}

#[inline]
pub(crate) fn mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.num_qubits() {
            let c = match self.letter(i) {
                0 => 'I',
                1 => 'X',
                2 => 'Y',
                _ => 'Z',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|c| match c {
                'I' => Ok(0),
                'X' => Ok(1),
                'Y' => Ok(2),
                'Z' => Ok(3),
                _ => Err(Error::InvalidPauliWord(s.to_string())),
            })
            .collect::<Result<Vec<u8>>>()?;
        if letters.is_empty() {
            return Err(Error::InvalidPauliWord(s.to_string()));
        }
        Self::from_letters(&letters)
    }
}
