//! Dense complex matrices, Hermitian eigenvalues, and singular values.
//!
//! The eigensolver is a cyclic Jacobi iteration working on the Hermitian
//! matrix directly with complex rotations (no realification), so
//! eigenvalues stay real by construction and multiplicities are not
//! doubled. Each rotation annihilates one off-diagonal pair; sweeps repeat
//! until the off-diagonal Frobenius norm falls below
//! `JACOBI_OFF_REL * max(1, ||A||_F)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::Report;
use crate::tolerances;

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        ComplexMatrix { n, data: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::Invalid("matrix rows must form a square".into()));
            }
            data.extend_from_slice(row);
        }
        Ok(ComplexMatrix { n, data })
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let complex: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&complex)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn validate(&self) -> Result<()> {
        if self.data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Invalid("matrix entries must be finite".into()));
        }
        Ok(())
    }

    pub fn adjoint(&self) -> ComplexMatrix {
        let mut out = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn add(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.same_dim(other)?;
        let data = self.data.iter().zip(&other.data).map(|(x, y)| x + y).collect();
        Ok(ComplexMatrix { n: self.n, data })
    }

    pub fn sub(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.same_dim(other)?;
        let data = self.data.iter().zip(&other.data).map(|(x, y)| x - y).collect();
        Ok(ComplexMatrix { n: self.n, data })
    }

    pub fn scale(&self, k: Complex64) -> ComplexMatrix {
        ComplexMatrix { n: self.n, data: self.data.iter().map(|x| x * k).collect() }
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.same_dim(other)?;
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self[(i, k)];
                if aik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += aik * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    /// max |A - A*| over entries.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.n {
            for j in i..self.n {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    fn same_dim(&self, other: &ComplexMatrix) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!("{} vs {}", self.n, other.n)));
        }
        Ok(())
    }

    fn check_hermitian(&self) -> Result<()> {
        self.validate()?;
        let tol = tolerances::HERMITIAN_REL * self.frobenius().max(1.0);
        let dev = self.hermitian_deviation();
        if dev > tol {
            return Err(Error::NotHermitian { deviation: dev, tolerance: tol });
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    n: usize,
    re: Vec<Vec<f64>>,
    #[serde(default)]
    im: Option<Vec<Vec<f64>>>,
}

impl Serialize for ComplexMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let re = (0..self.n)
            .map(|i| (0..self.n).map(|j| self[(i, j)].re).collect())
            .collect();
        let im = (0..self.n)
            .map(|i| (0..self.n).map(|j| self[(i, j)].im).collect())
            .collect();
        MatrixJson { n: self.n, re, im: Some(im) }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as DeError;
        let raw = MatrixJson::deserialize(deserializer)?;
        let n = raw.n;
        if raw.re.len() != n || raw.re.iter().any(|r| r.len() != n) {
            return Err(D::Error::custom("re must be an n x n array"));
        }
        if let Some(im) = &raw.im {
            if im.len() != n || im.iter().any(|r| r.len() != n) {
                return Err(D::Error::custom("im must be an n x n array"));
            }
        }
        let mut m = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let imv = raw.im.as_ref().map_or(0.0, |im| im[i][j]);
                m[(i, j)] = Complex64::new(raw.re[i][j], imv);
            }
        }
        Ok(m)
    }
}

/// Descending real sequence with an implicit zero tail.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SpectrumDesc {
    values: Vec<f64>,
}

impl SpectrumDesc {
    /// Validates a descending, finite sequence.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Invalid("spectrum values must be finite".into()));
        }
        if values.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid("spectrum must be descending".into()));
        }
        Ok(SpectrumDesc { values })
    }

    /// Sorts (descending) then wraps.
    pub fn from_unsorted(mut values: Vec<f64>) -> Result<Self> {
        values.sort_by(|a, b| b.partial_cmp(a).ok_or(()).expect("finite values"));
        Self::new(values)
    }

    /// λ_i with the paper's 1-based indexing; 0 past the stored support.
    pub fn lambda(&self, i: usize) -> f64 {
        if i == 0 || i > self.values.len() {
            0.0
        } else {
            self.values[i - 1]
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn all_nonnegative(&self) -> bool {
        self.values.iter().all(|&v| v >= 0.0)
    }

    /// Entrywise power x ↦ x^p for a nonnegative spectrum; descending
    /// order is preserved because the map is monotone.
    pub fn powered(&self, p: f64) -> SpectrumDesc {
        SpectrumDesc { values: self.values.iter().map(|v| v.powf(p)).collect() }
    }

    /// True when self dominates `other` entrywise (with zero tails).
    pub fn dominates(&self, other: &SpectrumDesc) -> bool {
        let len = self.values.len().max(other.values.len());
        (1..=len).all(|i| self.lambda(i) >= other.lambda(i))
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Descending eigenvalues (with multiplicity) of a Hermitian matrix.
///
/// Eigenvalues within `SNAP_REL * ||a||_F` of zero are snapped to exactly 0
/// so rank conventions downstream are stable.
pub fn hermitian_eigenvalues(a: &ComplexMatrix) -> Result<SpectrumDesc> {
    a.check_hermitian()?;
    let n = a.dim();
    if n == 0 {
        return SpectrumDesc::new(vec![]);
    }
    let fro = a.frobenius();
    let target = tolerances::JACOBI_OFF_REL * fro.max(1.0);

    let mut m = a.clone();
    // force exact Hermitian symmetry before iterating
    for i in 0..n {
        m[(i, i)] = Complex64::new(m[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let avg = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
            m[(i, j)] = avg;
            m[(j, i)] = avg.conj();
        }
    }

    let mut sweeps = 0;
    while off_diagonal_norm(&m) > target {
        if sweeps >= tolerances::JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence { residual: off_diagonal_norm(&m), sweeps });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, p, q);
            }
        }
        sweeps += 1;
    }

    let snap = tolerances::SNAP_REL * fro;
    let mut values: Vec<f64> = (0..n)
        .map(|i| {
            let v = m[(i, i)].re;
            if v.abs() <= snap {
                0.0
            } else {
                v
            }
        })
        .collect();
    values.sort_by(|a, b| b.partial_cmp(a).unwrap());
    SpectrumDesc::new(values)
}

/// One complex Jacobi rotation annihilating the (p, q) entry.
///
/// The 2x2 block [[α, β], [β*, γ]] is first phase-rotated so the
/// off-diagonal becomes |β|, then a real rotation with
/// t² - 2τt - 1 = 0, τ = (γ - α)/(2|β|), zeroes it. The combined unitary
/// has columns (c, s·e^{-iφ}) and (-s, c·e^{-iφ}) where e^{iφ} = β/|β|.
fn rotate(m: &mut ComplexMatrix, p: usize, q: usize) {
    let beta = m[(p, q)];
    let r = beta.norm();
    if r < 1e-300 {
        m[(p, q)] = Complex64::new(0.0, 0.0);
        m[(q, p)] = Complex64::new(0.0, 0.0);
        return;
    }
    let alpha = m[(p, p)].re;
    let gamma = m[(q, q)].re;
    let tau = (gamma - alpha) / (2.0 * r);
    let sign = if tau >= 0.0 { 1.0 } else { -1.0 };
    let t = -sign / (tau.abs() + (1.0 + tau * tau).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let phase_conj = (beta / r).conj();

    let n = m.dim();
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let kp = m[(k, p)];
        let kq = m[(k, q)];
        let new_kp = kp * c + kq * (phase_conj * s);
        let new_kq = kp * (-s) + kq * (phase_conj * c);
        m[(k, p)] = new_kp;
        m[(p, k)] = new_kp.conj();
        m[(k, q)] = new_kq;
        m[(q, k)] = new_kq.conj();
    }
    let cs2r = 2.0 * c * s * r;
    m[(p, p)] = Complex64::new(c * c * alpha + cs2r + s * s * gamma, 0.0);
    m[(q, q)] = Complex64::new(s * s * alpha - cs2r + c * c * gamma, 0.0);
    m[(p, q)] = Complex64::new(0.0, 0.0);
    m[(q, p)] = Complex64::new(0.0, 0.0);
}

/// Descending singular values, computed as square roots of the
/// eigenvalues of a*a clamped at zero.
pub fn singular_values(a: &ComplexMatrix) -> Result<SpectrumDesc> {
    a.validate()?;
    let gram = a.adjoint().matmul(a)?;
    let eigs = hermitian_eigenvalues(&gram)?;
    let values = eigs.values().iter().map(|&v| v.max(0.0).sqrt()).collect();
    SpectrumDesc::new(values)
}

/// Eigenvalues of a positive semidefinite Hermitian matrix, with the
/// residual negative round-off clamped to zero. Rejects inputs whose
/// smallest eigenvalue is below `-PSD_REL * max(1, ||a||_F)`.
pub fn psd_eigenvalues(a: &ComplexMatrix) -> Result<SpectrumDesc> {
    let eigs = hermitian_eigenvalues(a)?;
    let floor = -tolerances::PSD_REL * a.frobenius().max(1.0);
    if let Some(&min) = eigs.values().last() {
        if min < floor {
            return Err(Error::NotPositive(min));
        }
    }
    SpectrumDesc::new(eigs.values().iter().map(|&v| v.max(0.0)).collect())
}

/// Largest singular value: the operator norm.
pub fn operator_norm(a: &ComplexMatrix) -> Result<f64> {
    Ok(singular_values(a)?.lambda(1))
}

/// Checks Weyl's inequality λ_{i+j-1}(a+b) ≤ λ_i(a) + λ_j(b) for every
/// valid index pair, with eigensolver slack. The report's `worst` is the
/// largest left-minus-right slack observed.
pub fn weyl_check(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<Report> {
    a.same_dim(b)?;
    let la = psd_eigenvalues(a)?;
    let lb = psd_eigenvalues(b)?;
    let lsum = psd_eigenvalues(&a.add(b)?)?;
    let n = a.dim();

    let mut report = Report::new("weyl-check", 0);
    report.worst = f64::NEG_INFINITY;
    for i in 1..=n {
        for j in 1..=n {
            let k = i + j - 1;
            if k > n {
                continue;
            }
            report.trials += 1;
            let slack = lsum.lambda(k) - la.lambda(i) - lb.lambda(j);
            if slack > report.worst {
                report.worst = slack;
            }
        }
    }
    report.passed = report.worst <= tolerances::EIGEN_ABS;
    if !report.passed {
        report.witness = Some(serde_json::json!({ "a": a, "b": b }));
    }
    Ok(report)
}
