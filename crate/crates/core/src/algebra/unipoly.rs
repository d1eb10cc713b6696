use std::collections::BTreeMap;
use std::fmt;


use super::{check_tables, Monomial, MultiPoly, Rational, Vars};
use crate::error::{Error, Result};

/// Name of the path parameter in polynomial text.
pub(crate) const PARAM: &str = "t";

/// Polynomial in the path parameter `t` whose coefficients are
/// [`MultiPoly`] values over a shared table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    vars: Vars,
    coeffs: BTreeMap<u32, MultiPoly>,
}

impl UniPoly {
    pub fn zero(vars: &Vars) -> Self {
        Self {
            vars: vars.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(c: MultiPoly) -> Self {
        Self::monomial(c, 0)
    }

    /// `c · t^degree`.
    pub fn monomial(c: MultiPoly, degree: u32) -> Self {
        let mut p = Self::zero(c.vars());
        if !c.is_zero() {
            p.coeffs.insert(degree, c);
        }
        p
    }

    /// Builds from a dense coefficient list, lowest degree first.
    pub fn from_coeffs(vars: &Vars, coeffs: Vec<MultiPoly>) -> Result<Self> {
        let mut p = Self::zero(vars);
        for (d, c) in coeffs.into_iter().enumerate() {
            check_tables(vars, c.vars())?;
            if !c.is_zero() {
                p.coeffs.insert(d as u32, c);
            }
        }
        Ok(p)
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn coeffs(&self) -> &BTreeMap<u32, MultiPoly> {
        &self.coeffs
    }

    pub fn coeff(&self, degree: u32) -> MultiPoly {
        self.coeffs
            .get(&degree)
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(&self.vars))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    fn insert_add(&mut self, d: u32, c: MultiPoly) {
        if c.is_zero() {
            return;
        }
        let sum = match self.coeffs.remove(&d) {
            Some(prev) => &prev + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.coeffs.insert(d, sum);
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        check_tables(&self.vars, &other.vars)?;
        let mut out = self.clone();
        for (&d, c) in &other.coeffs {
            out.insert_add(d, c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        check_tables(&self.vars, &other.vars)?;
        let mut out = Self::zero(&self.vars);
        for (&da, ca) in &self.coeffs {
            for (&db, cb) in &other.coeffs {
                out.insert_add(da + db, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &MultiPoly) -> Result<Self> {
        check_tables(&self.vars, c.vars())?;
        let mut out = Self::zero(&self.vars);
        for (&d, a) in &self.coeffs {
            out.insert_add(d, a * c);
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::constant(MultiPoly::one(&self.vars));
        for _ in 0..e {
            out = out.checked_mul(self).expect("same table");
        }
        out
    }

    /// Formal derivative in `t`.
    pub fn derivative(&self) -> Self {
        let mut out = Self::zero(&self.vars);
        for (&d, c) in &self.coeffs {
            if d > 0 {
                out.coeffs
                    .insert(d - 1, c.scale(&Rational::from_integer(d.into())));
            }
        }
        out
    }

    /// Antiderivative vanishing at `t = 0`.
    pub fn integrate(&self) -> Self {
        let mut out = Self::zero(&self.vars);
        for (&d, c) in &self.coeffs {
            let n = Rational::from_integer((d + 1).into());
            out.coeffs.insert(d + 1, c.scale(&n.recip()));
        }
        out
    }

    /// Value at `t = 1`: the sum of all coefficients.
    pub fn eval_at_one(&self) -> MultiPoly {
        self.coeffs
            .values()
            .fold(MultiPoly::zero(&self.vars), |acc, c| &acc + c)
    }

    /// Value at `t = s` for a coefficient-ring element `s`.
    pub fn eval_at(&self, s: &MultiPoly) -> Result<MultiPoly> {
        check_tables(&self.vars, s.vars())?;
        // Horner over possibly sparse degrees.
        let mut acc = MultiPoly::zero(&self.vars);
        let mut prev: Option<u32> = None;
        for (&d, c) in self.coeffs.iter().rev() {
            if let Some(p) = prev {
                acc = &acc * &s.pow(p - d);
            }
            acc = &acc + c;
            prev = Some(d);
        }
        if let Some(p) = prev {
            acc = &acc * &s.pow(p);
        }
        Ok(acc)
    }

    pub fn constant_term(&self) -> MultiPoly {
        self.coeff(0)
    }

    /// The same polynomial with its `t^0` coefficient removed.
    pub fn without_constant(&self) -> Self {
        let mut out = self.clone();
        out.coeffs.remove(&0);
        out
    }

    /// Combined polynomial over the table extended by `t` (appended last).
    pub fn to_multipoly(&self, with_t: &Vars) -> MultiPoly {
        let n = self.vars.len();
        let mut terms = Vec::new();
        for (&d, c) in &self.coeffs {
            for (m, a) in c.terms() {
                let mut e = m.exponents().to_vec();
                e.push(d);
                terms.push((Monomial::from_exponents(e), a.clone()));
            }
        }
        debug_assert_eq!(with_t.len(), n + 1);
        MultiPoly::from_terms(with_t, terms)
    }

    /// Splits a polynomial over `vars + [t]` back into powers of `t`.
    pub fn from_multipoly(p: &MultiPoly, vars: &Vars) -> Result<Self> {
        let n = vars.len();
        if p.vars().len() != n + 1 || p.vars().name(n) != PARAM {
            return Err(Error::IncompatibleRings(format!(
                "{} is not {vars} extended by `{PARAM}`",
                p.vars()
            )));
        }
        let mut out = Self::zero(vars);
        for (m, a) in p.terms() {
            let e = m.exponents();
            let mono = Monomial::from_exponents(e[..n].to_vec());
            out.insert_add(e[n], MultiPoly::from_terms(vars, [(mono, a.clone())]));
        }
        Ok(out)
    }

    /// Parses text in `t` and the variables of `vars`.
    pub fn parse(text: &str, vars: &Vars) -> Result<Self> {
        let with_t = param_table(vars)?;
        Self::from_multipoly(&MultiPoly::parse(text, &with_t)?, vars)
    }
}

/// `vars` extended by the parameter `t`.
pub(crate) fn param_table(vars: &Vars) -> Result<Vars> {
    if vars.index_of(PARAM).is_some() {
        return Err(Error::InvalidArgument(format!(
            "`{PARAM}` is reserved for the path parameter"
        )));
    }
    vars.extended(&[PARAM])
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let with_t = param_table(&self.vars).map_err(|_| fmt::Error)?;
        if self.is_zero() {
            return f.write_str("0");
        }
        // descending powers of t, then the coefficient's own order
        let mut first = true;
        for (&d, c) in self.coeffs.iter().rev() {
            for (m, a) in c.terms().iter().rev() {
                let mut e = m.exponents().to_vec();
                e.push(d);
                let single = MultiPoly::from_terms(&with_t, [(Monomial::from_exponents(e), a.clone())]);
                let text = single.to_string();
                if first {
                    f.write_str(&text)?;
                } else if let Some(rest) = text.strip_prefix('-') {
                    write!(f, " - {rest}")?;
                } else {
                    write!(f, " + {text}")?;
                }
                first = false;
            }
        }
        Ok(())
    }
}
