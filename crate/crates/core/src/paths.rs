//! Piecewise polynomial paths, stored as their polynomial segments. Each
//! segment is translated to start at the origin; concatenation is formal
//! and nothing is ever reparametrized.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{check_tables, DenseMatrix, MultiPoly, UniPoly, VariableTable, Vars};
use crate::error::{Error, Result};

/// One polynomial piece `[0, 1] → R^d` with `X(0) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSegment {
    coords: Vec<UniPoly>,
}

impl PathSegment {
    /// Drops constant terms so the segment starts at the origin.
    pub fn new(coords: Vec<UniPoly>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidArgument("a segment needs at least one coordinate".into()));
        }
        let vars = coords[0].vars().clone();
        for c in &coords[1..] {
            check_tables(&vars, c.vars())?;
        }
        Ok(Self {
            coords: coords.iter().map(UniPoly::without_constant).collect(),
        })
    }

    pub fn dimension(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[UniPoly] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &UniPoly {
        &self.coords[i]
    }

    pub fn vars(&self) -> &Vars {
        self.coords[0].vars()
    }

    /// Displacement `X(1) - X(0)`.
    pub fn increment(&self) -> Vec<MultiPoly> {
        self.coords.iter().map(UniPoly::eval_at_one).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(UniPoly::is_zero)
    }
}

impl fmt::Display for PathSegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Piecewise polynomial path (or parametrized family of them) in `R^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    dimension: usize,
    vars: Vars,
    segments: Vec<PathSegment>,
}

impl Path {
    pub fn from_segments(segments: Vec<PathSegment>) -> Result<Self> {
        let first = segments
            .first()
            .ok_or_else(|| Error::InvalidArgument("a path needs at least one segment".into()))?;
        let (dimension, vars) = (first.dimension(), first.vars().clone());
        for s in &segments {
            if s.dimension() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    got: s.dimension(),
                });
            }
            check_tables(&vars, s.vars())?;
        }
        Ok(Self {
            dimension,
            vars,
            segments,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn segments(&self) -> &[PathSegment] {
        &self.segments
    }

    /// Formal concatenation `self ** other`.
    pub fn concat(&self, other: &Path) -> Result<Path> {
        if self.dimension != other.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                got: other.dimension,
            });
        }
        check_tables(&self.vars, &other.vars)?;
        let mut segments = self.segments.clone();
        segments.extend(other.segments.iter().cloned());
        Path::from_segments(segments)
    }

    /// `A ∘ X` for an `e × d` matrix, applied segment by segment.
    pub fn linear_image(&self, a: &DenseMatrix<MultiPoly>) -> Result<Path> {
        if a.cols() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                got: a.cols(),
            });
        }
        let segments = self
            .segments
            .iter()
            .map(|s| {
                let coords = (0..a.rows())
                    .map(|i| {
                        (0..a.cols()).try_fold(UniPoly::zero(&self.vars), |acc, j| {
                            acc.checked_add(&s.coord(j).scale(a.get(i, j))?)
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                PathSegment::new(coords)
            })
            .collect::<Result<Vec<_>>>()?;
        Path::from_segments(segments)
    }

    /// `p ∘ X` for a polynomial map `p: R^d → R^m` with rational
    /// coefficients, one polynomial per output coordinate in variables
    /// named by `p[0].vars()` (taken in table order as `x_1..x_d`).
    ///
    /// Each segment is substituted at its actual position (the sum of the
    /// preceding increments), then translated back to the origin.
    pub fn substitute(&self, p: &[MultiPoly]) -> Result<Path> {
        let pvars = p
            .first()
            .ok_or_else(|| Error::InvalidArgument("need at least one polynomial".into()))?
            .vars()
            .clone();
        if pvars.len() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                got: pvars.len(),
            });
        }
        for q in p {
            check_tables(&pvars, q.vars())?;
        }
        let mut start: Vec<MultiPoly> = vec![MultiPoly::zero(&self.vars); self.dimension];
        let mut segments = Vec::with_capacity(self.segments.len());
        for s in &self.segments {
            let shifted: Vec<UniPoly> = s
                .coords
                .iter()
                .zip(&start)
                .map(|(c, x0)| c.checked_add(&UniPoly::constant(x0.clone())))
                .collect::<Result<_>>()?;
            let coords = p
                .iter()
                .map(|q| compose(q, &shifted, &self.vars))
                .collect::<Result<Vec<_>>>()?;
            segments.push(PathSegment::new(coords)?);
            for (x0, inc) in start.iter_mut().zip(s.increment()) {
                *x0 = &*x0 + &inc;
            }
        }
        Path::from_segments(segments)
    }

    pub fn to_json(&self) -> PathJson {
        PathJson {
            dimension: self.dimension,
            variables: self.vars.names().to_vec(),
            segments: self
                .segments
                .iter()
                .map(|s| s.coords.iter().map(ToString::to_string).collect())
                .collect(),
        }
    }

    pub fn from_json(j: &PathJson) -> Result<Path> {
        let vars = VariableTable::new(j.variables.iter().cloned())?;
        let segments = j
            .segments
            .iter()
            .map(|seg| {
                if seg.len() != j.dimension {
                    return Err(Error::DimensionMismatch {
                        expected: j.dimension,
                        got: seg.len(),
                    });
                }
                let coords = seg
                    .iter()
                    .map(|text| UniPoly::parse(text, &vars))
                    .collect::<Result<Vec<_>>>()?;
                PathSegment::new(coords)
            })
            .collect::<Result<Vec<_>>>()?;
        Path::from_segments(segments)
    }

    pub fn parse_json(text: &str) -> Result<Path> {
        Path::from_json(&serde_json::from_str(text)?)
    }
}

/// Rational polynomial `q(x_1..x_d)` evaluated at univariate polynomials.
fn compose(q: &MultiPoly, xs: &[UniPoly], vars: &Vars) -> Result<UniPoly> {
    let mut acc = UniPoly::zero(vars);
    for (m, c) in q.terms() {
        let mut term = UniPoly::constant(MultiPoly::constant(vars, c.clone()));
        for (x, &e) in xs.iter().zip(m.exponents()) {
            if e > 0 {
                term = term.checked_mul(&x.pow(e))?;
            }
        }
        acc = acc.checked_add(&term)?;
    }
    Ok(acc)
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.segments.len();
        writeln!(
            f,
            "Path in {}-dimensional space with {} polynomial segment{}:",
            self.dimension,
            n,
            if n == 1 { "" } else { "s" }
        )?;
        let parts: Vec<String> = self.segments.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// JSON path format: coordinate polynomials are text in `t` and the
/// declared variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathJson {
    pub dimension: usize,
    #[serde(default)]
    pub variables: Vec<String>,
    pub segments: Vec<Vec<String>>,
}

/// Single linear segment with the given increment.
pub fn lin_path(increment: Vec<MultiPoly>) -> Result<Path> {
    let vars = increment
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty increment".into()))?
        .vars()
        .clone();
    let coords = increment
        .into_iter()
        .map(|c| {
            check_tables(&vars, c.vars())?;
            Ok(UniPoly::monomial(c, 1))
        })
        .collect::<Result<Vec<_>>>()?;
    Path::from_segments(vec![PathSegment::new(coords)?])
}

/// Piecewise linear path whose `j`-th segment is the `j`-th column of `m`.
pub fn pw_lin_path(m: &DenseMatrix<MultiPoly>) -> Result<Path> {
    if m.rows() == 0 || m.cols() == 0 {
        return Err(Error::InvalidArgument("empty increment matrix".into()));
    }
    let segments = (0..m.cols())
        .map(|j| lin_path(m.column(j)).map(|p| p.segments[0].clone()))
        .collect::<Result<Vec<_>>>()?;
    Path::from_segments(segments)
}

/// Single polynomial segment; constant terms are dropped.
pub fn poly_path(coords: Vec<UniPoly>) -> Result<Path> {
    Path::from_segments(vec![PathSegment::new(coords)?])
}
