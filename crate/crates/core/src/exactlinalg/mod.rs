//! Exact linear algebra over the integers and prime fields.
//!
//! Everything here works on [`IntMatrix`], a dense matrix of big integers.
//! Prime-field computations are carried out on integer matrices with the
//! modulus passed alongside, so one Smith decomposition serves both.

mod matrix;
mod smith;
mod subquotient;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use matrix::{bigvec, IntMatrix};
pub use smith::{
    cokernel_invariants, column_span_basis, kernel_basis, mod_inverse, smith_normal_form, solve,
    LinearSolver, SmithDecomposition,
};
pub use subquotient::Subquotient;

use crate::error::{Error, Result};

/// Coefficient ring: the integers or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Coeff {
    Integers,
    Mod(u64),
}

impl Coeff {
    pub fn modulus(&self) -> Option<u64> {
        match self {
            Coeff::Integers => None,
            Coeff::Mod(p) => Some(*p),
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Integers => write!(f, "Z"),
            Coeff::Mod(p) => write!(f, "mod:{p}"),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FromStr for Coeff {
    type Err = Error;

    /// `Z` or `mod:<p>` with `p` prime.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Z" {
            return Ok(Coeff::Integers);
        }
        let Some(rest) = s.strip_prefix("mod:") else {
            return Err(Error::Parse {
                pos: 0,
                msg: format!("expected `Z` or `mod:<p>`, got `{s}`"),
            });
        };
        let p: u64 = rest.parse().map_err(|_| Error::Parse {
            pos: 4,
            msg: format!("`{rest}` is not a modulus"),
        })?;
        if !is_prime(p) {
            return Err(Error::Parse {
                pos: 4,
                msg: format!("{p} is not prime"),
            });
        }
        Ok(Coeff::Mod(p))
    }
}
