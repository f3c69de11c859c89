use std::fmt;

use super::{GfMatrix, Prime, Subspace};
use crate::error::{Error, Result};

/// A strictly increasing chain of subspaces of `F_p^n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flag {
    ambient: usize,
    spaces: Vec<Subspace>,
}

impl Flag {
    pub fn new(p: Prime, ambient: usize, spaces: Vec<Subspace>) -> Result<Self> {
        for w in &spaces {
            if w.ambient_dim() != ambient || w.prime() != p {
                return Err(Error::Shape(format!(
                    "{w} is not a subspace of F_{p}^{ambient}"
                )));
            }
        }
        for pair in spaces.windows(2) {
            if pair[0].dim() >= pair[1].dim() || !pair[0].is_subspace_of(&pair[1]) {
                return Err(Error::InvalidParameters(format!(
                    "{} is not strictly inside {}",
                    pair[0], pair[1]
                )));
            }
        }
        Ok(Flag { ambient, spaces })
    }

    /// `⟨v_1⟩ ⊂ ⟨v_1, v_2⟩ ⊂ ··· ⊂ ⟨v_1, …, v_{n-1}⟩` for the columns `v_k` of an invertible matrix.
    pub fn from_columns(m: &GfMatrix) -> Result<Self> {
        if !m.is_invertible() {
            return Err(Error::Singular);
        }
        let n = m.rows();
        let t = m.transpose();
        let spaces = (1..n)
            .map(|k| Subspace::span(&t.submatrix(0..k, 0..n)))
            .collect();
        Ok(Flag { ambient: n, spaces })
    }

    /// The standard complete flag `⟨e_1⟩ ⊂ ⟨e_1, e_2⟩ ⊂ ···`.
    pub fn standard(n: usize, p: Prime) -> Self {
        Flag::from_columns(&GfMatrix::identity(p, n)).expect("identity is invertible")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn spaces(&self) -> &[Subspace] {
        &self.spaces
    }

    pub fn len(&self) -> usize {
        self.spaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spaces.is_empty()
    }

    /// All members are proper and nonzero.
    pub fn is_proper(&self) -> bool {
        self.spaces.iter().all(Subspace::is_proper_nonzero)
    }

    /// Proper flag with one space of each dimension `1..n`.
    pub fn is_complete(&self) -> bool {
        self.spaces.len() + 1 == self.ambient
            && self
                .spaces
                .iter()
                .enumerate()
                .all(|(k, w)| w.dim() == k + 1)
    }

    /// Does not contain both the zero space and the whole space.
    pub fn is_suspension_flag(&self) -> bool {
        !(self.spaces.iter().any(Subspace::is_zero) && self.spaces.iter().any(Subspace::is_full))
    }

    /// Complete flags `W`, `F` are transverse when `W_i ∩ F_{n-i} = 0` for every `i`.
    pub fn is_transverse_to(&self, other: &Flag) -> Result<bool> {
        if !self.is_complete() || !other.is_complete() {
            return Err(Error::InvalidParameters(
                "transversality needs complete flags".into(),
            ));
        }
        let n = self.ambient;
        for i in 1..n {
            let w = &self.spaces[i - 1];
            let f = &other.spaces[n - i - 1];
            if !w.intersection(f)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn image(&self, g: &GfMatrix) -> Flag {
        Flag {
            ambient: self.ambient,
            spaces: self.spaces.iter().map(|w| w.image(g)).collect(),
        }
    }
}

impl fmt::Debug for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.spaces.iter().map(|w| w.to_string()).collect();
        write!(f, "({})", parts.join(" ⊂ "))
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
