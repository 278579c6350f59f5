//! Simplicial complexes, cochains and the discrete Hodge theorem.
//!
//! Simplices are stored in canonical (ascending vertex) orientation. The
//! boundary `∂_k` maps k-chains to (k−1)-chains, with the face obtained by
//! deleting position `i` carrying sign `(−1)^i`. The coboundary is
//! `d_k = ∂_{k+1}ᵀ` and, with identity inner products,
//!
//! ```text
//! Δ_k = d_{k−1} d_{k−1}ᵀ + d_kᵀ d_k = ∂_kᵀ ∂_k + ∂_{k+1} ∂_{k+1}ᵀ
//! ```

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::path::Path;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num::{ToPrimitive, Zero};

use crate::algebra::Scalar;
use crate::error::{Error, ParseError, Result};
use crate::exact::{self, RatMatrix};

/// Eigenvalues below this count as zero on the floating path.
pub const ZERO_EIGENVALUE: f64 = 1e-8;

/// Required ratio between the smallest nonzero eigenvalue and [`ZERO_EIGENVALUE`].
pub const MIN_GAP_FACTOR: f64 = 1e4;

/// Closedness tolerance for [`harmonic_representative`], relative to `max(1, ‖c‖)`.
pub const CLOSED_TOLERANCE: f64 = 1e-10;

type Simplex = Vec<usize>;

/// Sorts a vertex tuple, returning the permutation parity; `None` on a
/// repeated vertex.
pub fn canonicalize(vertices: &[usize]) -> Option<(i32, Simplex)> {
    let mut v = vertices.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] == v[j + 1] {
                return None;
            }
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sign, v))
}

/// A finite abstract simplicial complex, closed under faces.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplicialComplex {
    top: Vec<(i32, Simplex)>,
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

impl SimplicialComplex {
    /// Builds the face closure of the given simplices. The listed vertex
    /// order of each simplex is its orientation; it is recorded as the sign
    /// relative to the canonical ascending order.
    pub fn from_simplices<S: AsRef<[usize]>>(simplices: &[S]) -> Result<Self> {
        let mut top = Vec::new();
        let mut seen = BTreeSet::new();
        for (i, s) in simplices.iter().enumerate() {
            let s = s.as_ref();
            if s.is_empty() {
                return Err(ParseError::new(format!("simplex {} is empty", i + 1)).into());
            }
            let (sign, canon) = canonicalize(s).ok_or_else(|| {
                ParseError::new(format!("simplex {} repeats a vertex", i + 1))
            })?;
            if !seen.insert(canon.clone()) {
                return Err(ParseError::new(format!("simplex {:?} listed twice", canon)).into());
            }
            top.push((sign, canon));
        }
        Ok(Self::close(top))
    }

    fn close(top: Vec<(i32, Simplex)>) -> Self {
        let dim = top.iter().map(|(_, s)| s.len() - 1).max();
        let mut sets: Vec<BTreeSet<Simplex>> = vec![BTreeSet::new(); dim.map_or(0, |d| d + 1)];
        for (_, s) in &top {
            let n = s.len();
            for mask in 1u64..(1 << n) {
                let face: Simplex = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| s[i]).collect();
                sets[face.len() - 1].insert(face);
            }
        }
        let simplices: Vec<Vec<Simplex>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let index = simplices
            .iter()
            .map(|list| list.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        Self { top, simplices, index }
    }

    /// Parses the mesh format: a `simplices` header line, then one
    /// whitespace-separated vertex tuple per line; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut header = false;
        let mut top = Vec::new();
        let mut seen: HashMap<Simplex, usize> = HashMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let lineno = lineno + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if !header {
                if line != "simplices" {
                    return Err(ParseError::at(lineno, format!("expected header 'simplices', found '{line}'")).into());
                }
                header = true;
                continue;
            }
            let vertices = parse_tuple(line, lineno)?;
            let (sign, canon) = canonicalize(&vertices)
                .ok_or_else(|| ParseError::at(lineno, format!("simplex '{line}' repeats a vertex")))?;
            if let Some(first) = seen.insert(canon.clone(), lineno) {
                return Err(ParseError::at(lineno, format!("simplex '{line}' already given on line {first}")).into());
            }
            top.push((sign, canon));
        }
        if !header {
            return Err(ParseError::new("empty mesh file").into());
        }
        Ok(Self::close(top))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&read(path.as_ref())?)
    }

    /// Highest simplex dimension; `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    fn max_dim(&self) -> usize {
        self.dim().unwrap_or(0)
    }

    /// Canonical k-simplices in sorted order.
    pub fn simplices(&self, k: usize) -> &[Simplex] {
        self.simplices.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices(k).len()
    }

    pub fn index_of(&self, simplex: &[usize]) -> Option<usize> {
        self.index.get(simplex.len().checked_sub(1)?)?.get(simplex).copied()
    }

    /// Listed simplices with their orientation relative to canonical order.
    pub fn top_simplices(&self) -> &[(i32, Simplex)] {
        &self.top
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..self.simplices.len()).map(|k| if k % 2 == 0 { self.count(k) as i64 } else { -(self.count(k) as i64) }).sum()
    }

    fn check_degree(&self, k: usize) -> Result<()> {
        match self.dim() {
            Some(d) if k <= d => Ok(()),
            d => Err(Error::DegreeOutOfRange { degree: k, max: d.unwrap_or(0) }),
        }
    }

    /// `∂_k`, valid for `1 ≤ k ≤ dim`.
    pub fn boundary_matrix(&self, k: usize) -> Result<DMatrix<i64>> {
        if k == 0 {
            return Err(Error::DegreeOutOfRange { degree: 0, max: self.max_dim() });
        }
        self.check_degree(k)?;
        Ok(self.boundary_or_empty(k))
    }

    /// `∂_k` with the conventions `∂_0 = 0` and `∂_{dim+1} = 0` (empty).
    fn boundary_or_empty(&self, k: usize) -> DMatrix<i64> {
        let rows = if k == 0 { 0 } else { self.count(k - 1) };
        let mut m = DMatrix::zeros(rows, self.count(k));
        if k == 0 {
            return m;
        }
        for (j, s) in self.simplices(k).iter().enumerate() {
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                let row = self.index[k - 1][&face];
                m[(row, j)] = if i % 2 == 0 { 1 } else { -1 };
            }
        }
        m
    }

    /// `d_k = ∂_{k+1}ᵀ`, valid for `0 ≤ k < dim`.
    pub fn coboundary(&self, k: usize) -> Result<DMatrix<i64>> {
        Ok(self.boundary_matrix(k + 1)?.transpose())
    }

    /// Integer Hodge Laplacian `Δ_k` with identity inner products.
    pub fn laplacian_int(&self, k: usize) -> Result<DMatrix<i64>> {
        self.check_degree(k)?;
        let down = self.boundary_or_empty(k);
        let up = self.boundary_or_empty(k + 1);
        let lower = down.transpose() * &down;
        let upper = if up.nrows() == 0 { DMatrix::zeros(self.count(k), self.count(k)) } else { &up * up.transpose() };
        Ok(lower + upper)
    }

    /// `Δ_k` as a floating matrix.
    pub fn hodge_laplacian_matrix(&self, k: usize) -> Result<DMatrix<f64>> {
        Ok(self.laplacian_int(k)?.map(|x| x as f64))
    }

    /// `dim ker Δ_k`, by exact rational elimination.
    pub fn betti_via_harmonic(&self, k: usize) -> Result<usize> {
        let lap = self.laplacian_int(k)?;
        Ok(self.count(k) - exact::rank_rational(&exact::from_int(&lap)))
    }

    /// `dim ker Δ_k` from floating eigenvalues, with the spectral gap.
    pub fn betti_via_harmonic_float(&self, k: usize) -> Result<SpectralBetti> {
        let lap = self.hodge_laplacian_matrix(k)?;
        let mut eig: Vec<f64> = if lap.nrows() == 0 { Vec::new() } else { SymmetricEigen::new(lap).eigenvalues.iter().copied().collect() };
        eig.sort_by(f64::total_cmp);
        let zeros: Vec<f64> = eig.iter().copied().filter(|l| l.abs() < ZERO_EIGENVALUE).collect();
        let smallest_nonzero = eig.iter().copied().find(|l| l.abs() >= ZERO_EIGENVALUE);
        Ok(SpectralBetti {
            betti: zeros.len(),
            largest_zero: zeros.iter().fold(0.0, |a: f64, b| a.max(b.abs())),
            smallest_nonzero,
        })
    }

    /// `dim ker ∂_k − rank ∂_{k+1}`, by fraction-free integer elimination.
    pub fn betti_via_rank(&self, k: usize) -> Result<usize> {
        self.check_degree(k)?;
        let rank_down = exact::rank_bareiss(&self.boundary_or_empty(k));
        let rank_up = exact::rank_bareiss(&self.boundary_or_empty(k + 1));
        Ok(self.count(k) - rank_down - rank_up)
    }

    /// Basis of `ker ∂_k` modulo `im ∂_{k+1}`, as exact k-chains.
    pub fn homology_basis(&self, k: usize) -> Result<Vec<Vec<Scalar>>> {
        self.check_degree(k)?;
        let n = self.count(k);
        let down = exact::from_int(&self.boundary_or_empty(k));
        let up = exact::from_int(&self.boundary_or_empty(k + 1));
        let cycles = if down.is_empty() { identity(n) } else { exact::null_space(&down, n) };
        let mut span: Vec<Vec<Scalar>> = exact::transpose(&up, self.count(k + 1));
        let mut rank = exact::rank_rational(&span);
        let mut basis = Vec::new();
        for z in cycles {
            span.push(z.clone());
            let r = exact::rank_rational(&span);
            if r > rank {
                rank = r;
                basis.push(z);
            } else {
                span.pop();
            }
        }
        Ok(basis)
    }
}

fn identity(n: usize) -> Vec<Vec<Scalar>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { Scalar::from_integer(1.into()) } else { Scalar::zero() }).collect()).collect()
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| ParseError::new(format!("{}: {e}", path.display())).into())
}

fn parse_tuple(text: &str, lineno: usize) -> Result<Vec<usize>> {
    text.split_whitespace()
        .map(|t| t.parse().map_err(|_| ParseError::at(lineno, format!("bad vertex index '{t}'")).into()))
        .collect()
}

/// Floating-point kernel dimension with the data needed to judge it.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralBetti {
    pub betti: usize,
    pub largest_zero: f64,
    pub smallest_nonzero: Option<f64>,
}

impl SpectralBetti {
    /// `smallest nonzero eigenvalue / threshold`; infinite if all vanish.
    pub fn gap_factor(&self) -> f64 {
        self.smallest_nonzero.map_or(f64::INFINITY, |l| l / ZERO_EIGENVALUE)
    }

    pub fn gap_ok(&self) -> bool {
        self.gap_factor() >= MIN_GAP_FACTOR
    }
}

/// Diagonal inner products, one positive weight per simplex per degree.
#[derive(Clone, Debug, PartialEq)]
pub struct InnerProducts {
    pub weights: Vec<Vec<Scalar>>,
}

impl InnerProducts {
    pub fn identity(k: &SimplicialComplex) -> Self {
        let one = Scalar::from_integer(1.into());
        Self { weights: (0..=k.max_dim() + 1).map(|d| vec![one.clone(); k.count(d)]).collect() }
    }

    fn at(&self, degree: usize) -> &[Scalar] {
        self.weights.get(degree).map_or(&[], Vec::as_slice)
    }
}

/// `Δ_k = d_{k−1} d_{k−1}* + d_k* d_k` where `d* = W⁻¹ dᵀ W` is the adjoint
/// for the weighted inner products.
pub fn weighted_laplacian(k: &SimplicialComplex, degree: usize, ip: &InnerProducts) -> Result<RatMatrix> {
    k.check_degree(degree)?;
    let n = k.count(degree);
    let down = k.boundary_or_empty(degree);
    let up = k.boundary_or_empty(degree + 1);
    let (w_lo, w, w_hi) = (
        if degree == 0 { &[][..] } else { ip.at(degree - 1) },
        ip.at(degree),
        ip.at(degree + 1),
    );
    for (expected, ws) in [(down.nrows(), w_lo), (n, w), (up.ncols(), w_hi)] {
        if ws.len() != expected {
            return Err(Error::CochainLength { expected, found: ws.len() });
        }
    }
    let mut out = vec![vec![Scalar::zero(); n]; n];
    // d_{k−1} W_{k−1}⁻¹ d_{k−1}ᵀ W_k with d_{k−1} = ∂_kᵀ
    for f in 0..down.nrows() {
        for a in 0..n {
            let da = down[(f, a)];
            if da == 0 {
                continue;
            }
            for b in 0..n {
                let db = down[(f, b)];
                if db != 0 {
                    out[a][b] += Scalar::from_integer((da * db).into()) / &w_lo[f] * &w[b];
                }
            }
        }
    }
    // W_k⁻¹ d_kᵀ W_{k+1} d_k with d_k = ∂_{k+1}ᵀ
    for s in 0..up.ncols() {
        for a in 0..n {
            let da = up[(a, s)];
            if da == 0 {
                continue;
            }
            for b in 0..n {
                let db = up[(b, s)];
                if db != 0 {
                    out[a][b] += Scalar::from_integer((da * db).into()) * &w_hi[s] / &w[a];
                }
            }
        }
    }
    Ok(out)
}

/// `dim ker Δ_k` for weighted inner products.
pub fn harmonic_dim_weighted(k: &SimplicialComplex, degree: usize, ip: &InnerProducts) -> Result<usize> {
    Ok(k.count(degree) - exact::rank_rational(&weighted_laplacian(k, degree, ip)?))
}

/// A real k-cochain: one value per canonical k-simplex.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain {
    degree: usize,
    values: Vec<f64>,
}

impl Cochain {
    pub fn new(k: &SimplicialComplex, degree: usize, values: Vec<f64>) -> Result<Self> {
        k.check_degree(degree)?;
        if values.len() != k.count(degree) {
            return Err(Error::CochainLength { expected: k.count(degree), found: values.len() });
        }
        Ok(Self { degree, values })
    }

    pub fn zeros(k: &SimplicialComplex, degree: usize) -> Result<Self> {
        Self::new(k, degree, vec![0.0; k.count(degree)])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.values.iter().zip(&other.values).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { degree: self.degree, values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self { degree: self.degree, values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect() }
    }

    /// `d c`, a (k+1)-cochain; zero-length past the top dimension.
    pub fn coboundary(&self, k: &SimplicialComplex) -> Cochain {
        let up = k.boundary_or_empty(self.degree + 1).map(|x| x as f64);
        let v = up.transpose() * DVector::from_column_slice(&self.values);
        Cochain { degree: self.degree + 1, values: v.iter().copied().collect() }
    }

    /// Parses a cochain file: a `degree k` header, then lines
    /// `v0 … vk value`. Tuples in non-ascending order are reoriented with
    /// the permutation sign; unlisted simplices get zero.
    pub fn parse(text: &str, k: &SimplicialComplex) -> Result<Self> {
        let mut degree = None;
        let mut values = Vec::new();
        let mut seen: HashMap<usize, usize> = HashMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let lineno = lineno + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some(deg) = degree else {
                let d = line
                    .strip_prefix("degree")
                    .and_then(|r| r.trim().parse::<usize>().ok())
                    .ok_or_else(|| ParseError::at(lineno, format!("expected header 'degree k', found '{line}'")))?;
                if k.check_degree(d).is_err() {
                    return Err(ParseError::at(lineno, format!("degree {d} exceeds the complex dimension")).into());
                }
                degree = Some(d);
                values = vec![0.0; k.count(d)];
                continue;
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != deg + 2 {
                return Err(ParseError::at(lineno, format!("expected {} vertices and a value", deg + 1)).into());
            }
            let (tuple, value) = fields.split_at(deg + 1);
            let vertices = parse_tuple(&tuple.join(" "), lineno)?;
            let value: f64 =
                value[0].parse().map_err(|_| ParseError::at(lineno, format!("bad value '{}'", value[0])))?;
            let (sign, canon) = canonicalize(&vertices)
                .ok_or_else(|| ParseError::at(lineno, "simplex repeats a vertex"))?;
            let idx = k
                .index_of(&canon)
                .ok_or_else(|| ParseError::at(lineno, format!("simplex {canon:?} is not in the complex")))?;
            if let Some(first) = seen.insert(idx, lineno) {
                return Err(ParseError::at(lineno, format!("simplex {canon:?} already given on line {first}")).into());
            }
            values[idx] = sign as f64 * value;
        }
        let degree = degree.ok_or_else(|| ParseError::new("empty cochain file"))?;
        Ok(Self { degree, values })
    }

    pub fn load(path: impl AsRef<Path>, k: &SimplicialComplex) -> Result<Self> {
        Self::parse(&read(path.as_ref())?, k)
    }
}

impl fmt::Display for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(|v| format!("{v:.6}")).collect();
        write!(f, "[{}]", vals.join(", "))
    }
}

/// `c = exact + coexact + harmonic`, mutually orthogonal.
#[derive(Clone, Debug, PartialEq)]
pub struct HodgeDecomposition {
    pub exact: Cochain,
    pub coexact: Cochain,
    pub harmonic: Cochain,
}

impl HodgeDecomposition {
    pub fn reconstruct(&self) -> Cochain {
        self.exact.add(&self.coexact).add(&self.harmonic)
    }

    /// Largest absolute pairwise inner product.
    pub fn orthogonality_residual(&self) -> f64 {
        [self.exact.dot(&self.coexact), self.exact.dot(&self.harmonic), self.coexact.dot(&self.harmonic)]
            .into_iter()
            .fold(0.0, |a, b| a.max(b.abs()))
    }
}

/// Projects `c` onto the column space of `a` by solving the normal equations
/// `aᵀa x = aᵀc` with a symmetric-eigen pseudo-inverse, followed by one step
/// of iterative refinement.
fn project_float(a: &DMatrix<f64>, c: &DVector<f64>) -> DVector<f64> {
    if a.ncols() == 0 || a.nrows() == 0 {
        return DVector::zeros(c.len());
    }
    let eig = SymmetricEigen::new(a.transpose() * a);
    let cutoff = 1e-9 * eig.eigenvalues.amax().max(1.0);
    let inv = eig.eigenvalues.map(|l| if l > cutoff { 1.0 / l } else { 0.0 });
    let q = &eig.eigenvectors;
    let solve = |rhs: &DVector<f64>| {
        let y = q.transpose() * (a.transpose() * rhs);
        q * y.component_mul(&inv)
    };
    let mut x = solve(c);
    let r = c - a * &x;
    x += solve(&r);
    a * x
}

/// Splits a k-cochain into `im d_{k−1} ⊕ im d_kᵀ ⊕ ker Δ_k`.
pub fn hodge_decompose(k: &SimplicialComplex, c: &Cochain) -> Result<HodgeDecomposition> {
    let expected = k.count(c.degree);
    if c.values.len() != expected {
        return Err(Error::CochainLength { expected, found: c.values.len() });
    }
    let v = DVector::from_column_slice(&c.values);
    let d_prev = k.boundary_or_empty(c.degree).transpose().map(|x| x as f64);
    let d_next_t = k.boundary_or_empty(c.degree + 1).map(|x| x as f64);
    let exact = project_float(&d_prev, &v);
    let coexact = project_float(&d_next_t, &v);
    let harmonic = &v - &exact - &coexact;
    let wrap = |x: DVector<f64>| Cochain { degree: c.degree, values: x.iter().copied().collect() };
    Ok(HodgeDecomposition { exact: wrap(exact), coexact: wrap(coexact), harmonic: wrap(harmonic) })
}

/// Exact counterpart of [`HodgeDecomposition`].
#[derive(Clone, Debug, PartialEq)]
pub struct ExactDecomposition {
    pub exact: Vec<Scalar>,
    pub coexact: Vec<Scalar>,
    pub harmonic: Vec<Scalar>,
}

/// [`hodge_decompose`] in rational arithmetic.
pub fn hodge_decompose_exact(k: &SimplicialComplex, degree: usize, c: &[Scalar]) -> Result<ExactDecomposition> {
    k.check_degree(degree)?;
    if c.len() != k.count(degree) {
        return Err(Error::CochainLength { expected: k.count(degree), found: c.len() });
    }
    let d_prev = exact::from_int(&k.boundary_or_empty(degree).transpose());
    let d_next_t = exact::from_int(&k.boundary_or_empty(degree + 1));
    let ex = exact::project(&d_prev, c);
    let co = exact::project(&d_next_t, c);
    let harmonic = c.iter().zip(&ex).zip(&co).map(|((a, b), d)| a - b - d).collect();
    Ok(ExactDecomposition { exact: ex, coexact: co, harmonic })
}

/// `⟨c, z⟩` for each cycle `z`.
pub fn periods(c: &Cochain, cycles: &[Vec<Scalar>]) -> Vec<f64> {
    cycles
        .iter()
        .map(|z| z.iter().zip(&c.values).map(|(zi, ci)| zi.to_f64().unwrap_or(f64::NAN) * ci).sum())
        .collect()
}

/// The harmonic cochain cohomologous to a closed cochain.
pub fn harmonic_representative(k: &SimplicialComplex, c: &Cochain) -> Result<Cochain> {
    let residual = c.coboundary(k).norm();
    if residual > CLOSED_TOLERANCE * c.norm().max(1.0) {
        return Err(Error::NotClosed { residual });
    }
    Ok(hodge_decompose(k, c)?.harmonic)
}
