//! Polynomial parametrizations of universal and signature varieties, their
//! dimensions, and low-degree relations among their coordinates.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    check_tables, float_rank, nullspace, rank, DenseMatrix, Monomial, MultiPoly, Rational, VariableTable, Vars,
};
use crate::error::{Error, Result};
use crate::lyndon::{lie_basis_over, lyndon_words};
use crate::signature::{caxis_tensor, cmon_tensor, matrix_action, tensor_exp};
use crate::words::{Tensor, Word};

/// Half-width of the integer box random parameter points are drawn from.
pub const POINT_RANGE: i64 = 10_000;

/// Relative singular-value threshold of the floating-point rank.
pub const FLOAT_RANK_TOL: f64 = 1e-8;

/// A polynomial map from a parameter space to the coordinates indexed by
/// words of one fixed length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialMap {
    params: Vars,
    weights: Vec<u32>,
    labels: Vec<Word>,
    entries: Vec<MultiPoly>,
}

impl PolynomialMap {
    pub fn new(params: &Vars, weights: Vec<u32>, labels: Vec<Word>, entries: Vec<MultiPoly>) -> Result<Self> {
        if weights.len() != params.len() {
            return Err(Error::DimensionMismatch {
                expected: params.len(),
                got: weights.len(),
            });
        }
        if labels.len() != entries.len() {
            return Err(Error::DimensionMismatch {
                expected: labels.len(),
                got: entries.len(),
            });
        }
        for e in &entries {
            check_tables(params, e.vars())?;
        }
        Ok(Self {
            params: params.clone(),
            weights,
            labels,
            entries,
        })
    }

    pub fn params(&self) -> &Vars {
        &self.params
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn labels(&self) -> &[Word] {
        &self.labels
    }

    pub fn entries(&self) -> &[MultiPoly] {
        &self.entries
    }

    pub fn num_params(&self) -> usize {
        self.params.len()
    }

    pub fn num_coords(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, w: &Word) -> Option<&MultiPoly> {
        self.labels.iter().position(|l| l == w).map(|i| &self.entries[i])
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Vec<Rational>> {
        self.entries.iter().map(|e| e.eval(point)).collect()
    }

    /// Partial derivatives, one row per coordinate.
    pub fn jacobian(&self) -> DenseMatrix<MultiPoly> {
        DenseMatrix::from_fn(self.num_coords(), self.num_params(), |i, j| {
            self.entries[i].derivative(j)
        })
    }

    pub fn to_json(&self) -> PolynomialMapJson {
        PolynomialMapJson {
            parameters: self
                .params
                .names()
                .iter()
                .zip(&self.weights)
                .map(|(name, &weight)| ParameterJson {
                    name: name.clone(),
                    weight,
                })
                .collect(),
            coordinates: self.labels.iter().map(Word::compact).collect(),
            entries: self.entries.iter().map(ToString::to_string).collect(),
        }
    }

    pub fn from_json(j: &PolynomialMapJson) -> Result<Self> {
        let params = VariableTable::new(j.parameters.iter().map(|p| p.name.clone()))?;
        let weights = j.parameters.iter().map(|p| p.weight).collect();
        let labels = j.coordinates.iter().map(|c| Word::parse(c)).collect::<Result<_>>()?;
        let entries = j
            .entries
            .iter()
            .map(|e| MultiPoly::parse(e, &params))
            .collect::<Result<_>>()?;
        Self::new(&params, weights, labels, entries)
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(text)?)
    }

    /// Macaulay2 script computing the kernel of the ring map and its
    /// dimension, degree and minimal generators. Parameters are renamed
    /// `p_0, p_1, …` and coordinates `z_0, z_1, …`; the original names are
    /// listed in comments.
    pub fn to_cas_script(&self) -> String {
        let mut s = String::new();
        s.push_str("-- parameters\n");
        for (i, (name, w)) in self.params.names().iter().zip(&self.weights).enumerate() {
            s.push_str(&format!("--   p_{i} = {name} (weight {w})\n"));
        }
        s.push_str("-- coordinates\n");
        for (i, l) in self.labels.iter().enumerate() {
            s.push_str(&format!("--   z_{i} = {}\n", l.compact()));
        }
        let n = self.num_params();
        let params = if n == 0 {
            String::new()
        } else {
            format!("p_0..p_{}", n - 1)
        };
        if self.weights.iter().all(|&w| w == 1) {
            s.push_str(&format!("S = QQ[{params}];\n"));
        } else {
            let degs: Vec<String> = self.weights.iter().map(u32::to_string).collect();
            s.push_str(&format!("S = QQ[{params}, Degrees => {{{}}}];\n", degs.join(", ")));
        }
        s.push_str(&format!("T = QQ[z_0..z_{}];\n", self.num_coords().saturating_sub(1)));
        s.push_str("f = map(S, T, {\n");
        for (i, e) in self.entries.iter().enumerate() {
            let sep = if i + 1 == self.entries.len() { "" } else { "," };
            s.push_str(&format!("    {}{sep}\n", m2_poly(e)));
        }
        s.push_str("});\n");
        s.push_str("I = ker f;\n");
        s.push_str("dim I\n");
        s.push_str("degree I\n");
        s.push_str("betti mingens I\n");
        s
    }

    pub fn export(&self, format: ExportFormat) -> Result<String> {
        Ok(match format {
            ExportFormat::CasScript => self.to_cas_script(),
            ExportFormat::Json => serde_json::to_string_pretty(&self.to_json())? + "\n",
        })
    }
}

fn m2_poly(p: &MultiPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (m, c) in p.terms().iter().rev() {
        let neg = c < &Rational::zero();
        let a = if neg { -c.clone() } else { c.clone() };
        out.push_str(match (out.is_empty(), neg) {
            (true, false) => "",
            (true, true) => "-",
            (false, false) => " + ",
            (false, true) => " - ",
        });
        let mut factors: Vec<String> = Vec::new();
        if !a.is_one() || m.is_one() {
            factors.push(a.to_string());
        }
        for (i, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(format!("p_{i}")),
                _ => factors.push(format!("p_{i}^{e}")),
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    CasScript,
    Json,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cas-script" | "m2" => Ok(Self::CasScript),
            "json" => Ok(Self::Json),
            _ => Err(Error::InvalidArgument(format!("unknown export format `{s}`"))),
        }
    }
}

/// `{parameters: [{name, weight}], coordinates: [word], entries: [text]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialMapJson {
    pub parameters: Vec<ParameterJson>,
    pub coordinates: Vec<String>,
    pub entries: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParameterJson {
    pub name: String,
    pub weight: u32,
}

/// The coordinates of a level-`k` tensor, one per word of length `k` in
/// lexicographic order. Without an explicit level the tensor must be
/// nonzero and homogeneous.
pub fn tensor_parametrization(t: &Tensor, level: Option<usize>) -> Result<PolynomialMap> {
    let k = match level {
        Some(k) => k,
        None => t.homogeneous_level().ok_or(Error::MixedLevels)?,
    };
    let labels = Word::all_of_length(t.alphabet(), k);
    let entries = labels.iter().map(|w| t.coefficient(w)).collect();
    PolynomialMap::new(t.vars(), vec![1; t.vars().len()], labels, entries)
}

fn lyndon_param_name(l: &Word) -> String {
    let parts: Vec<String> = l.letters().iter().map(usize::to_string).collect();
    format!("y_{}", parts.join("_"))
}

/// Level-`k` coordinates of `exp(Σ y_l b(l))` over all Lyndon words `l`
/// with `|l| ≤ k`; `y_l` has weight `|l|`.
pub fn universal_variety_map(d: usize, k: usize) -> Result<PolynomialMap> {
    if d == 0 || k == 0 {
        return Err(Error::InvalidArgument("dimension and level must be positive".into()));
    }
    let words = lyndon_words(d, k);
    let vars = VariableTable::new(words.iter().map(lyndon_param_name))?;
    let mut lie = Tensor::zero(d, &vars);
    for (i, l) in words.iter().enumerate() {
        let b = lie_basis_over(l, d, &vars)?.scale_poly(&MultiPoly::var(&vars, i))?;
        lie = lie.checked_add(&b)?;
    }
    let t = tensor_exp(&lie, k)?;
    let mut f = tensor_parametrization(&t, Some(k))?;
    f.weights = words.iter().map(|l| l.len() as u32).collect();
    for e in &f.entries {
        assert!(
            e.is_zero() || e.weighted_homogeneous_degree(&f.weights) == Some(k as u32),
            "universal map entry {e} is not of weight {k}"
        );
    }
    Ok(f)
}

/// Path family of a signature variety.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    PiecewiseLinear,
    Polynomial,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pl" | "piecewise-linear" => Ok(Self::PiecewiseLinear),
            "poly" | "polynomial" => Ok(Self::Polynomial),
            _ => Err(Error::InvalidArgument(format!("unknown path family `{s}`"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::PiecewiseLinear => "piecewise-linear",
            Self::Polynomial => "polynomial",
        })
    }
}

/// Level-`k` signatures of paths in `ℝ^d` with `m` linear pieces, or of
/// polynomial paths of degree `m`, as a map of the `d × m` matrix entries
/// `a_i_j`.
pub fn signature_variety_map(family: Family, d: usize, k: usize, m: usize) -> Result<PolynomialMap> {
    if d == 0 || k == 0 || m == 0 {
        return Err(Error::InvalidArgument("dimension, level and pieces must be positive".into()));
    }
    let (a, _) = DenseMatrix::generic("a", d, m)?;
    let core = match family {
        Family::PiecewiseLinear => caxis_tensor(m, k),
        Family::Polynomial => cmon_tensor(m, k),
    };
    let f = tensor_parametrization(&matrix_action(&a, &core)?, Some(k))?;
    for e in &f.entries {
        assert!(
            e.is_zero() || (e.is_homogeneous() && e.total_degree() == Some(k as u32)),
            "signature map entry {e} is not homogeneous of degree {k}"
        );
    }
    Ok(f)
}

pub fn random_point<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Rational> {
    (0..n)
        .map(|_| Rational::from_integer(rng.gen_range(-POINT_RANGE..=POINT_RANGE).into()))
        .collect()
}

fn jacobian_at(jac: &DenseMatrix<MultiPoly>, point: &[Rational]) -> Result<DenseMatrix<Rational>> {
    let mut vals = Vec::with_capacity(jac.rows() * jac.cols());
    for e in jac.entries() {
        vals.push(e.eval(point)?);
    }
    DenseMatrix::new(jac.rows(), jac.cols(), vals)
}

/// Affine dimension of the image closure: the largest exact Jacobian rank
/// over `trials` random integer points.
pub fn affine_image_dimension<R: Rng + ?Sized>(f: &PolynomialMap, trials: usize, rng: &mut R) -> Result<usize> {
    let jac = f.jacobian();
    let mut best = 0;
    for _ in 0..trials.max(1) {
        let point = random_point(f.num_params(), rng);
        best = best.max(rank(&jacobian_at(&jac, &point)?));
    }
    Ok(best)
}

/// Same as [`affine_image_dimension`] with a singular-value rank in machine
/// precision.
pub fn affine_image_dimension_float<R: Rng + ?Sized>(
    f: &PolynomialMap,
    trials: usize,
    rng: &mut R,
) -> Result<usize> {
    let jac = f.jacobian();
    let mut best = 0;
    for _ in 0..trials.max(1) {
        let point = random_point(f.num_params(), rng);
        best = best.max(float_rank(&jacobian_at(&jac, &point)?, FLOAT_RANK_TOL));
    }
    Ok(best)
}

/// `affine - 1`, or 0 for a point.
pub fn projective_dimension(affine: usize) -> usize {
    affine.saturating_sub(1)
}

/// How relations among coordinates are found.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdealMethod {
    /// Compare coefficients of the products `f_i f_j` as polynomials in the
    /// parameters. Deterministic.
    Coefficients,
    /// Evaluate monomials in the coordinates at random parameter points.
    /// `None` takes the smallest admissible sample count plus a margin.
    Sampling { samples: Option<usize> },
}

/// Linear and quadratic forms in the coordinates `z_0, z_1, …` that vanish
/// on the image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowDegreeRelations {
    pub num_coords: usize,
    /// Each vector has one coefficient per coordinate.
    pub linear: Vec<Vec<Rational>>,
    /// Each vector has one coefficient per entry of [`quadratic_monomials`].
    pub quadratic: Option<Vec<Vec<Rational>>>,
}

/// `(i, j)` with `i ≤ j` in lexicographic order: the `C(n+1, 2)` quadratic
/// monomials `z_i z_j`.
pub fn quadratic_monomials(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
}

impl LowDegreeRelations {
    /// Evaluates every relation at a point in coordinate space.
    pub fn eval(&self, z: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let lin = self
            .linear
            .iter()
            .map(|c| c.iter().zip(z).map(|(a, b)| a * b).sum())
            .collect();
        let pairs = quadratic_monomials(self.num_coords);
        let quad = self
            .quadratic
            .iter()
            .flatten()
            .map(|c| c.iter().zip(&pairs).map(|(a, &(i, j))| a * &z[i] * &z[j]).sum())
            .collect();
        (lin, quad)
    }

    /// `dim R₁·I₁`: the span of the products of linear relations with
    /// coordinates.
    pub fn products_dim(&self) -> usize {
        let n = self.num_coords;
        let index: HashMap<(usize, usize), usize> =
            quadratic_monomials(n).into_iter().enumerate().map(|(k, p)| (p, k)).collect();
        let mut rows = Vec::new();
        for l in &self.linear {
            for i in 0..n {
                let mut row = BTreeMap::new();
                for (j, c) in l.iter().enumerate() {
                    if !c.is_zero() {
                        row.insert(index[&(i.min(j), i.max(j))], c.clone());
                    }
                }
                rows.push(row);
            }
        }
        blocks(&rows).iter().map(|b| rank(&b.dense(&rows))).sum()
    }

    pub fn counts(&self) -> IdealCounts {
        let quadrics = self.quadratic.as_ref().map(|q| {
            let products = self.products_dim();
            IdealQuadrics {
                relations: q.len(),
                products,
                minimal: q.len() - products,
            }
        });
        IdealCounts {
            linear: self.linear.len(),
            quadrics,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IdealQuadrics {
    /// `dim I₂`.
    pub relations: usize,
    /// `dim R₁·I₁`.
    pub products: usize,
    /// Minimal quadratic generators: `relations - products`.
    pub minimal: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IdealCounts {
    /// `dim I₁`.
    pub linear: usize,
    pub quadrics: Option<IdealQuadrics>,
}

impl IdealCounts {
    /// `(dim I₁, minimal quadrics)`.
    pub fn pair(&self) -> (usize, Option<usize>) {
        (self.linear, self.quadrics.map(|q| q.minimal))
    }
}

/// Smallest sample count accepted by the sampling route.
pub fn required_samples(num_coords: usize, max_degree: u32) -> usize {
    let n = num_coords;
    if max_degree >= 2 {
        n + n * (n + 1) / 2
    } else {
        n
    }
}

const SAMPLE_MARGIN: usize = 10;

fn check_degree(max_degree: u32) -> Result<()> {
    if !(1..=2).contains(&max_degree) {
        return Err(Error::InvalidArgument(format!(
            "max degree must be 1 or 2, got {max_degree}"
        )));
    }
    Ok(())
}

pub fn low_degree_relations<R: Rng + ?Sized>(
    f: &PolynomialMap,
    max_degree: u32,
    method: IdealMethod,
    rng: &mut R,
) -> Result<LowDegreeRelations> {
    check_degree(max_degree)?;
    match method {
        IdealMethod::Coefficients => Ok(relations_by_coefficients(f, max_degree)),
        IdealMethod::Sampling { samples } => {
            let needed = required_samples(f.num_coords(), max_degree);
            let samples = samples.unwrap_or(needed + SAMPLE_MARGIN);
            if samples < needed {
                return Err(Error::InsufficientSamples { needed, got: samples });
            }
            relations_by_sampling(f, max_degree, samples, rng)
        }
    }
}

/// `dim I₁` and, for `max_degree = 2`, the number of minimal quadratic
/// generators of the ideal of the image.
pub fn low_degree_ideal_counts<R: Rng + ?Sized>(
    f: &PolynomialMap,
    max_degree: u32,
    method: IdealMethod,
    rng: &mut R,
) -> Result<IdealCounts> {
    Ok(low_degree_relations(f, max_degree, method, rng)?.counts())
}

fn relations_by_sampling<R: Rng + ?Sized>(
    f: &PolynomialMap,
    max_degree: u32,
    samples: usize,
    rng: &mut R,
) -> Result<LowDegreeRelations> {
    let n = f.num_coords();
    let values: Vec<Vec<Rational>> = (0..samples)
        .map(|_| f.eval(&random_point(f.num_params(), rng)))
        .collect::<Result<_>>()?;
    let lin = DenseMatrix::from_rows(values.clone())
        .unwrap_or_else(|_| DenseMatrix::zeros(samples, n));
    let linear = nullspace(&lin);
    let quadratic = (max_degree >= 2).then(|| {
        let pairs = quadratic_monomials(n);
        let m = DenseMatrix::from_fn(samples, pairs.len(), |r, k| {
            let (i, j) = pairs[k];
            &values[r][i] * &values[r][j]
        });
        nullspace(&m)
    });
    Ok(LowDegreeRelations {
        num_coords: n,
        linear,
        quadratic,
    })
}

/// Rows of a sparse matrix grouped into blocks that share no column.
struct Block {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl Block {
    /// The block as a dense `rows × cols` matrix.
    fn dense(&self, rows: &[BTreeMap<usize, Rational>]) -> DenseMatrix<Rational> {
        let pos: HashMap<usize, usize> = self.cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let mut m = vec![vec![Rational::zero(); self.cols.len()]; self.rows.len()];
        for (r, &row) in self.rows.iter().enumerate() {
            for (c, v) in &rows[row] {
                m[r][pos[c]] = v.clone();
            }
        }
        DenseMatrix::from_fn(self.rows.len(), self.cols.len(), |i, j| m[i][j].clone())
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn blocks(rows: &[BTreeMap<usize, Rational>]) -> Vec<Block> {
    let mut parent: Vec<usize> = (0..rows.len()).collect();
    let mut owner: HashMap<usize, usize> = HashMap::new();
    for (r, row) in rows.iter().enumerate() {
        for &c in row.keys() {
            match owner.get(&c) {
                Some(&o) => {
                    let (a, b) = (find(&mut parent, o), find(&mut parent, r));
                    parent[a.max(b)] = a.min(b);
                }
                None => {
                    owner.insert(c, r);
                }
            }
        }
    }
    let mut grouped: BTreeMap<usize, Block> = BTreeMap::new();
    for r in 0..rows.len() {
        let root = find(&mut parent, r);
        let b = grouped.entry(root).or_insert_with(|| Block {
            rows: Vec::new(),
            cols: Vec::new(),
        });
        b.rows.push(r);
        b.cols.extend(rows[r].keys());
    }
    grouped
        .into_values()
        .map(|mut b| {
            b.cols.sort_unstable();
            b.cols.dedup();
            b
        })
        .collect()
}

/// Left kernel `{c : Σ c_r row_r = 0}` of a sparse matrix, computed block
/// by block.
fn left_kernel(rows: &[BTreeMap<usize, Rational>]) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    for b in blocks(rows) {
        let kernel = if b.cols.is_empty() {
            (0..b.rows.len())
                .map(|i| (0..b.rows.len()).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
                .collect()
        } else {
            nullspace(&b.dense(rows).transpose())
        };
        for v in kernel {
            let mut full = vec![Rational::zero(); rows.len()];
            for (k, c) in v.into_iter().enumerate() {
                full[b.rows[k]] = c;
            }
            out.push(full);
        }
    }
    out.sort();
    out
}

fn coefficient_rows(polys: &[MultiPoly]) -> Vec<BTreeMap<usize, Rational>> {
    let mut index: HashMap<Monomial, usize> = HashMap::new();
    polys
        .iter()
        .map(|p| {
            p.terms()
                .iter()
                .map(|(m, c)| {
                    let next = index.len();
                    (*index.entry(m.clone()).or_insert(next), c.clone())
                })
                .collect()
        })
        .collect()
}

fn relations_by_coefficients(f: &PolynomialMap, max_degree: u32) -> LowDegreeRelations {
    let linear = left_kernel(&coefficient_rows(&f.entries));
    let quadratic = (max_degree >= 2).then(|| {
        let products: Vec<MultiPoly> = quadratic_monomials(f.num_coords())
            .into_iter()
            .map(|(i, j)| &f.entries[i] * &f.entries[j])
            .collect();
        left_kernel(&coefficient_rows(&products))
    });
    LowDegreeRelations {
        num_coords: f.num_coords(),
        linear,
        quadratic,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::paths::lin_path;
    use crate::signature::sig_level;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(11)
    }

    #[test]
    fn parametrization_of_linear_path() {
        let v = VariableTable::new(["x_1", "x_2"]).unwrap();
        let z = lin_path(vec![
            MultiPoly::parse("2 x_1", &v).unwrap(),
            MultiPoly::parse("3 x_2", &v).unwrap(),
        ])
        .unwrap();
        let f = tensor_parametrization(&sig_level(&z, 2), None).unwrap();
        let shown: Vec<String> = f.entries().iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["2 x_1^2", "3 x_1 x_2", "3 x_1 x_2", "9/2 x_2^2"]);
        let labels: Vec<String> = f.labels().iter().map(Word::compact).collect();
        assert_eq!(labels, ["[1,1]", "[1,2]", "[2,1]", "[2,2]"]);

        let zero = tensor_parametrization(&Tensor::zero(3, &v), Some(2)).unwrap();
        assert_eq!(zero.num_coords(), 9);
        assert!(zero.entries().iter().all(MultiPoly::is_zero));
        assert_eq!(tensor_parametrization(&Tensor::zero(3, &v), None).unwrap_err(), Error::MixedLevels);
        let mixed = Tensor::parse("[1] + [1,2]", 2, &v).unwrap();
        assert_eq!(tensor_parametrization(&mixed, None).unwrap_err(), Error::MixedLevels);
    }

    #[test]
    fn universal_maps() {
        let u = universal_variety_map(2, 3).unwrap();
        assert_eq!(u.params().names(), ["y_1", "y_1_1_2", "y_1_2", "y_1_2_2", "y_2"]);
        assert_eq!(u.weights(), [1, 3, 2, 3, 1]);
        assert_eq!(u.num_coords(), 8);
        let u1 = universal_variety_map(1, 2).unwrap();
        assert_eq!(u1.entries()[0].to_string(), "1/2 y_1^2");
        let u21 = universal_variety_map(2, 1).unwrap();
        let shown: Vec<String> = u21.entries().iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["y_1", "y_2"]);
    }

    #[test]
    fn signature_maps() {
        let l = signature_variety_map(Family::PiecewiseLinear, 3, 3, 2).unwrap();
        assert_eq!((l.num_coords(), l.num_params()), (27, 6));
        let p = signature_variety_map(Family::Polynomial, 2, 4, 3).unwrap();
        assert_eq!((p.num_coords(), p.num_params()), (16, 6));
        let l1 = signature_variety_map(Family::PiecewiseLinear, 2, 1, 3).unwrap();
        assert_eq!(l1.entries()[0].to_string(), "a_1_1 + a_1_2 + a_1_3");
        assert_eq!(l1.entries()[1].to_string(), "a_2_1 + a_2_2 + a_2_3");
    }

    #[test]
    fn dimensions() {
        let u = universal_variety_map(2, 3).unwrap();
        assert_eq!(affine_image_dimension(&u, 3, &mut rng()).unwrap(), 5);
        assert_eq!(affine_image_dimension_float(&u, 3, &mut rng()).unwrap(), 5);
        let p = signature_variety_map(Family::Polynomial, 2, 4, 3).unwrap();
        assert_eq!(affine_image_dimension(&p, 3, &mut rng()).unwrap(), 6);
        assert_eq!(projective_dimension(6), 5);
    }

    #[test]
    fn universal_counts_agree_across_routes() {
        let u = universal_variety_map(2, 3).unwrap();
        let exact = low_degree_ideal_counts(&u, 2, IdealMethod::Coefficients, &mut rng()).unwrap();
        assert_eq!(exact.pair(), (0, Some(6)));
        let sampled =
            low_degree_ideal_counts(&u, 2, IdealMethod::Sampling { samples: None }, &mut rng()).unwrap();
        assert_eq!(sampled, exact);
        let err = low_degree_ideal_counts(&u, 2, IdealMethod::Sampling { samples: Some(10) }, &mut rng());
        assert_eq!(err.unwrap_err(), Error::InsufficientSamples { needed: 44, got: 10 });
    }

    #[test]
    fn full_space_has_no_relations() {
        let v = VariableTable::new(["u", "v", "w"]).unwrap();
        let f = PolynomialMap::new(
            &v,
            vec![1; 3],
            Word::all_of_length(3, 1),
            (0..3).map(|i| MultiPoly::var(&v, i)).collect(),
        )
        .unwrap();
        for method in [IdealMethod::Coefficients, IdealMethod::Sampling { samples: None }] {
            let c = low_degree_ideal_counts(&f, 2, method, &mut rng()).unwrap();
            assert_eq!(c.pair(), (0, Some(0)));
        }
    }

    #[test]
    fn linear_relation_and_products() {
        // the image of (s, t) ↦ (s, t, s + t, s t) satisfies z_2 = z_0 + z_1
        let v = VariableTable::new(["s", "t"]).unwrap();
        let e: Vec<MultiPoly> = ["s", "t", "s + t", "s t"]
            .iter()
            .map(|x| MultiPoly::parse(x, &v).unwrap())
            .collect();
        let f = PolynomialMap::new(&v, vec![1, 1], Word::all_of_length(4, 1), e).unwrap();
        let r = low_degree_relations(&f, 2, IdealMethod::Coefficients, &mut rng()).unwrap();
        assert_eq!(r.linear.len(), 1);
        let z = f.eval(&[rat(3, 1), rat(-5, 2)]).unwrap();
        let (lin, quad) = r.eval(&z);
        assert!(lin.iter().chain(&quad).all(Zero::is_zero));
        // z_3 = z_0 z_1 is not homogeneous, so only ℓ·z_i among quadrics
        let c = r.counts();
        assert_eq!(c.quadrics.unwrap().products, 4);
        let s = low_degree_relations(&f, 2, IdealMethod::Sampling { samples: None }, &mut rng()).unwrap();
        assert_eq!(s.counts(), c);
    }

    #[test]
    fn json_and_script() {
        let u = universal_variety_map(2, 2).unwrap();
        let text = u.export(ExportFormat::Json).unwrap();
        assert_eq!(PolynomialMap::parse_json(&text).unwrap(), u);
        let script = u.to_cas_script();
        assert!(script.contains("S = QQ[p_0..p_2, Degrees => {1, 2, 1}];"));
        assert!(script.contains("T = QQ[z_0..z_3];"));
        assert!(script.contains("    1/2*p_0^2,\n"));
        assert!(script.ends_with("betti mingens I\n"));
        let l = signature_variety_map(Family::PiecewiseLinear, 2, 2, 2).unwrap();
        assert!(l.to_cas_script().starts_with("-- parameters\n--   p_0 = a_1_1 (weight 1)\n"));
        assert!(l.to_cas_script().contains("S = QQ[p_0..p_3];"));
    }
}
