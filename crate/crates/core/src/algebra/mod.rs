//! Exact coefficient arithmetic: rationals, multivariate polynomials over a
//! named variable table, polynomials in the path parameter `t`, dense
//! matrices and fraction-free linear algebra.

mod linalg;
mod matrix;
mod parse;
mod poly;
mod unipoly;

use std::fmt;
use std::sync::Arc;

pub use linalg::{float_rank, nullspace, nullspace_dim, nullspace_rational, rank, solve};
pub use matrix::DenseMatrix;
pub(crate) use parse::{Lexer, PolyParser, Token};
pub use poly::{Monomial, MultiPoly};
pub use unipoly::UniPoly;

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Shared handle to a variable table.
pub type Vars = Arc<VariableTable>;

/// Builds a rational from a numerator and a nonzero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Builds an integer-valued rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Ordered, immutable list of distinct variable names. Polynomials built
/// over tables with different names cannot be combined.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VariableTable {
    names: Vec<String>,
}

impl VariableTable {
    pub fn new<I, S>(names: I) -> Result<Vars>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(Error::InvalidArgument(format!("`{n}` is not a valid variable name")));
            }
            if names[..i].contains(n) {
                return Err(Error::DuplicateVariable(n.clone()));
            }
        }
        Ok(Arc::new(Self { names }))
    }

    /// The table with no variables; polynomials over it are rational constants.
    pub fn empty() -> Vars {
        Arc::new(Self { names: Vec::new() })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Table with `extra` appended; fails if a name repeats.
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Result<Vars> {
        Self::new(
            self.names
                .iter()
                .cloned()
                .chain(extra.iter().map(|s| s.as_ref().to_string())),
        )
    }
}

impl fmt::Display for VariableTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.names.join(", "))
    }
}

pub(crate) fn same_table(a: &Vars, b: &Vars) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

pub(crate) fn check_tables(a: &Vars, b: &Vars) -> Result<()> {
    if same_table(a, b) {
        Ok(())
    } else {
        Err(Error::IncompatibleRings(format!("{a} vs {b}")))
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_rejects_duplicates_and_bad_names() {
        assert_eq!(
            VariableTable::new(["x", "x"]).unwrap_err(),
            Error::DuplicateVariable("x".into())
        );
        assert!(VariableTable::new(["1x"]).is_err());
        let t = VariableTable::new(["x_1", "x_2"]).unwrap();
        assert_eq!(t.index_of("x_2"), Some(1));
        assert_eq!(t.extended(&["t"]).unwrap().len(), 3);
        assert!(t.extended(&["x_1"]).is_err());
    }

    #[test]
    fn rationals_are_normalized() {
        let r = rat(6, -4);
        assert_eq!(r.numer(), &(-3).into());
        assert_eq!(r.denom(), &2.into());
    }
}
