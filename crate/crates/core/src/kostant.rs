//! The operator `A = Σ_{j=0}^{ℓ} nⱼ w_{αⱼ} ⊗ w_{αⱼ}` on the Cartan
//! subalgebra, with `α₀ = −ψ` and `n₀ = 1`.
//!
//! `A` is stored as the rational matrix `M` acting on coordinates in the
//! basis `{w_{α₁}, …, w_{αℓ}}`. Since `(x ⊗ y)(z) = (x, z) y` and
//! `(w_{αᵢ}, w_{αⱼ}) = K[i][j]`, each term contributes `nⱼ vⱼ vⱼᵀ K`, where
//! `vⱼ` is the coordinate column of `w_{αⱼ}` (`v₀ = (n₁, …, nℓ)` because
//! `w_ψ = Σ nᵢ w_{αᵢ}`).

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::poly::{self, IntPoly};
use crate::rootsystem::{
    to_f64, Family, HighestRootData, KillingData, LieType, Rational, RootSystem,
};

/// The golden number `(1 + √5)/2`.
pub const GOLDEN: f64 = 1.618_033_988_749_895;

/// The two quartic factors of the E8 characteristic polynomial at the
/// trace-30 scale.
pub const E8_F1: [i64; 5] = [1, -15, 75, -135, 45];
pub const E8_F2: [i64; 5] = [1, -15, 60, -90, 45];

#[derive(Clone, Debug)]
pub struct KostantOperator {
    lie_type: LieType,
    matrix: Vec<Vec<Rational>>,
    gram: Vec<Vec<Rational>>,
    coxeter_number: i64,
}

/// Builds `M = Σ nⱼ vⱼ vⱼᵀ K` exactly.
pub fn build_a(rs: &RootSystem, hr: &HighestRootData, kd: &KillingData) -> Result<KostantOperator> {
    let l = rs.rank();
    for found in [hr.marks.len(), kd.gram.len()] {
        if found != l {
            return Err(Error::DimensionMismatch { expected: l, found });
        }
    }
    let mut terms: Vec<(i64, Vec<i64>)> = vec![(hr.n0, hr.marks.clone())];
    for j in 0..l {
        let mut e = vec![0; l];
        e[j] = 1;
        terms.push((hr.marks[j], e));
    }
    // N = Σ nⱼ vⱼ vⱼᵀ (integral, symmetric)
    let mut n = vec![vec![0i64; l]; l];
    for (weight, v) in &terms {
        for i in 0..l {
            for k in 0..l {
                n[i][k] += weight * v[i] * v[k];
            }
        }
    }
    let matrix = (0..l)
        .map(|i| {
            (0..l)
                .map(|k| (0..l).map(|p| kd.gram[p][k] * n[i][p]).sum())
                .collect()
        })
        .collect();
    Ok(KostantOperator {
        lie_type: rs.lie_type(),
        matrix,
        gram: kd.gram.clone(),
        coxeter_number: hr.coxeter_number,
    })
}

impl KostantOperator {
    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn coxeter_number(&self) -> i64 {
        self.coxeter_number
    }

    /// `M`, the matrix of `A` in the basis `{w_{αᵢ}}`.
    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    /// Matrix of `(2/h)·A`.
    pub fn scaled(&self) -> Vec<Vec<Rational>> {
        let f = Rational::new(2, self.coxeter_number);
        self.matrix
            .iter()
            .map(|r| r.iter().map(|&q| q * f).collect())
            .collect()
    }

    pub fn trace(&self) -> Rational {
        (0..self.rank()).map(|i| self.matrix[i][i]).sum()
    }

    /// `K·M`, which is symmetric exactly when `A` is self-adjoint for the
    /// Killing form.
    pub fn killing_product(&self) -> Vec<Vec<Rational>> {
        let l = self.rank();
        (0..l)
            .map(|i| {
                (0..l)
                    .map(|k| (0..l).map(|p| self.gram[i][p] * self.matrix[p][k]).sum())
                    .collect()
            })
            .collect()
    }

    pub fn is_self_adjoint(&self) -> bool {
        let km = self.killing_product();
        let l = self.rank();
        (0..l).all(|i| (0..l).all(|k| km[i][k] == km[k][i]))
    }

    pub fn matrix_f64(&self) -> Mat {
        let l = self.rank();
        Mat::from_fn(l, l, |i, j| to_f64(self.matrix[i][j]))
    }

    /// `A z` for complex coordinates `z`.
    pub fn apply(&self, z: &[Complex64]) -> Vec<Complex64> {
        self.matrix_f64().mul_cvec(z)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RadiiReport {
    pub lie_type: LieType,
    pub coxeter_number: i64,
    /// Eigenvalues of `A`, ascending.
    pub operator_eigenvalues: Vec<f64>,
    /// Eigenvalues `λᵢ = rᵢ²` of `(2/h)·A`, ascending.
    pub eigenvalues: Vec<f64>,
    pub radii: Vec<f64>,
    /// `1000·rᵢ / r_max`.
    pub normalized: Vec<f64>,
    /// Integer parts (floor) of `normalized`.
    pub integer_parts: Vec<i64>,
    /// Distinct eigenvalues of `(2/h)·A` with their multiplicities.
    pub multiplicities: Vec<(f64, usize)>,
}

/// Eigenvalues of `A` through the `K`-orthonormal frame: with `K = L Lᵀ`,
/// `Lᵀ M L⁻ᵀ` is symmetric and similar to `M`.
pub fn operator_spectrum(op: &KostantOperator) -> Result<Vec<f64>> {
    let k = Mat::from_fn(op.rank(), op.rank(), |i, j| to_f64(op.gram[i][j]));
    let l = linalg::cholesky(&k)?;
    let l_inv_t = linalg::lower_inverse(&l).transpose();
    let sym = l.transpose().matmul(&op.matrix_f64())?.matmul(&l_inv_t)?;
    Ok(linalg::jacobi_eigen(&sym)?.values)
}

/// Values this close below an integer floor to that integer.
pub const FLOOR_SNAP: f64 = 1e-9;

pub fn radii_report(op: &KostantOperator, h: i64) -> Result<RadiiReport> {
    let operator_eigenvalues = operator_spectrum(op)?;
    if operator_eigenvalues.iter().any(|&v| v <= 0.0) {
        return Err(Error::Spectral("A is not positive definite".into()));
    }
    let f = 2.0 / h as f64;
    let eigenvalues: Vec<f64> = operator_eigenvalues.iter().map(|v| v * f).collect();
    let radii: Vec<f64> = eigenvalues.iter().map(|v| v.sqrt()).collect();
    let r_max = radii.iter().cloned().fold(0.0, f64::max);
    let normalized: Vec<f64> = radii.iter().map(|r| 1000.0 * (r / r_max)).collect();
    let integer_parts = normalized
        .iter()
        .map(|v| (v + FLOOR_SNAP).floor() as i64)
        .collect();
    Ok(RadiiReport {
        lie_type: op.lie_type,
        coxeter_number: h,
        multiplicities: group_values(&eigenvalues, 1e-9),
        operator_eigenvalues,
        eigenvalues,
        radii,
        normalized,
        integer_parts,
    })
}

/// Groups ascending values whose relative spacing is below `rel_tol`.
pub fn group_values(sorted: &[f64], rel_tol: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    for &v in sorted {
        match out.last_mut() {
            Some((rep, count)) if (v - *rep).abs() <= rel_tol * rep.abs().max(v.abs()) => {
                *count += 1
            }
            _ => out.push((v, 1)),
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct CharPolyReport {
    pub lie_type: LieType,
    /// Coefficients of `det(xI − A)` (highest first, exact).
    pub operator_coefficients: Vec<BigRational>,
    /// The scalar `c`.
    pub scale_c: BigRational,
    /// `det(xI − cA)`, which has integer coefficients.
    pub coefficients: IntPoly,
    /// Verified irreducible factors; for E8 the two quartics, otherwise empty.
    pub factors: Vec<IntPoly>,
}

/// Largest trace target tried when searching for an integral scale.
pub const SCALE_SEARCH_LIMIT: u64 = 100_000;

/// Characteristic polynomial of `cA`, where `c = m / trace(A)` for the
/// smallest positive integer `m` making every coefficient integral.
///
/// For E8 this is `m = 30` and the polynomial is checked against
/// `F₁·F₂` by exact multiplication.
pub fn char_poly(op: &KostantOperator) -> Result<CharPolyReport> {
    let m = poly::to_big_matrix(&op.matrix);
    let base = poly::faddeev_leverrier(&m);
    let trace = poly::big(op.trace());

    let mut found = None;
    for target in 1..=SCALE_SEARCH_LIMIT {
        let c = BigRational::from_integer(BigInt::from(target)) / &trace;
        if let Some(p) = scaled_integral(&base, &c) {
            found = Some((c, p));
            break;
        }
    }
    let (scale_c, coefficients) = found.ok_or(Error::NoIntegralScale {
        limit: SCALE_SEARCH_LIMIT,
    })?;

    let mut factors = Vec::new();
    if op.lie_type.family() == Family::E && op.rank() == 8 {
        let f1 = IntPoly::from_i64(&E8_F1);
        let f2 = IntPoly::from_i64(&E8_F2);
        if f1.mul(&f2) != coefficients {
            return Err(Error::FactorizationMismatch);
        }
        factors = vec![f1, f2];
    }
    Ok(CharPolyReport {
        lie_type: op.lie_type,
        operator_coefficients: base,
        scale_c,
        coefficients,
        factors,
    })
}

/// Coefficients of `det(xI − cA)` from those of `det(xI − A)`, if integral.
fn scaled_integral(base: &[BigRational], c: &BigRational) -> Option<IntPoly> {
    let mut pow = BigRational::one();
    let mut out = Vec::with_capacity(base.len());
    for a in base {
        let v = a * &pow;
        if !v.is_integer() {
            return None;
        }
        out.push(v.to_integer());
        pow *= c;
    }
    Some(IntPoly::new(out))
}

/// Recovers an eigenvalue as an exact fraction when it is rational: the
/// continued-fraction convergents of `approx` are tested as exact roots of
/// the characteristic polynomial.
pub fn rational_eigenvalue(coeffs: &[BigRational], approx: f64) -> Option<BigRational> {
    let max_den = 1_000_000i64;
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut x = approx;
    for _ in 0..40 {
        let a = x.floor();
        let ai = BigInt::from(a as i64);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        if k2.abs() > BigInt::from(max_den) {
            break;
        }
        let cand = BigRational::new(h2.clone(), k2.clone());
        if poly::eval_rational(coeffs, &cand).is_zero() {
            return Some(cand);
        }
        (h0, h1) = (h1, h2);
        (k0, k1) = (k1, k2);
        let frac = x - a;
        if frac.abs() < 1e-15 {
            break;
        }
        x = 1.0 / frac;
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `r_F2 = R · r_F1`
    TimesR,
    /// `r_F2 = r_F1 / R`
    TimesInvR,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::TimesR => "×R",
            Relation::TimesInvR => "×1/R",
        }
    }
}

/// One row of the E8 golden-ratio table: an `F₁` circle and the `F₂`
/// circle it maps to under multiplication by `R` or `1/R`.
#[derive(Clone, Debug, Serialize)]
pub struct GoldenPair {
    pub f1_index: usize,
    pub f2_index: usize,
    pub f1_label: i64,
    pub f2_label: i64,
    /// `r_F2 / r_F1`.
    pub ratio: f64,
    pub relation: Relation,
    /// `|ratio − R|` or `|ratio − 1/R|`.
    pub residual: f64,
}

/// Which quartic factor each eigenvalue is a root of (`true` for `F₁`),
/// decided by the smaller residual at `c·λ` with the trace-30 scale.
pub fn e8_families(report: &RadiiReport) -> Result<Vec<bool>> {
    check_e8(report)?;
    let trace: f64 = report.operator_eigenvalues.iter().sum();
    let c = 30.0 / trace;
    let f1 = IntPoly::from_i64(&E8_F1);
    let f2 = IntPoly::from_i64(&E8_F2);
    let fam: Vec<bool> = report
        .operator_eigenvalues
        .iter()
        .map(|&l| f1.eval(c * l).abs() < f2.eval(c * l).abs())
        .collect();
    if fam.iter().filter(|&&b| b).count() != 4 {
        return Err(Error::PairingNotFound(
            "quartic families are not 4 + 4".into(),
        ));
    }
    Ok(fam)
}

fn check_e8(report: &RadiiReport) -> Result<()> {
    let t = report.lie_type;
    if t.family() != Family::E || t.rank() != 8 || report.radii.len() != 8 {
        return Err(Error::Unsupported(format!(
            "golden-ratio pairing is defined for E8 only, not {t}"
        )));
    }
    Ok(())
}

/// The four golden-ratio relations between the `F₁` and `F₂` circles,
/// ordered by the smaller radius of each pair.
pub fn golden_pairs(report: &RadiiReport, tol: f64) -> Result<Vec<GoldenPair>> {
    let fam = e8_families(report)?;
    let mut used = [false; 8];
    let mut pairs = Vec::new();
    for i in (0..8).filter(|&i| fam[i]) {
        let mut best: Option<GoldenPair> = None;
        for j in (0..8).filter(|&j| !fam[j] && !used[j]) {
            let ratio = report.radii[j] / report.radii[i];
            for (relation, target) in [
                (Relation::TimesR, GOLDEN),
                (Relation::TimesInvR, 1.0 / GOLDEN),
            ] {
                let residual = (ratio - target).abs();
                if residual < tol && best.as_ref().is_none_or(|b| residual < b.residual) {
                    best = Some(GoldenPair {
                        f1_index: i,
                        f2_index: j,
                        f1_label: report.integer_parts[i],
                        f2_label: report.integer_parts[j],
                        ratio,
                        relation,
                        residual,
                    });
                }
            }
        }
        let pair = best.ok_or_else(|| {
            Error::PairingNotFound(format!(
                "no F2 circle within {tol:e} of R or 1/R times radius {}",
                report.radii[i]
            ))
        })?;
        used[pair.f2_index] = true;
        pairs.push(pair);
    }
    pairs.sort_by_key(|p| p.f1_index.min(p.f2_index));
    Ok(pairs)
}

/// Integer-part labels as a convenience for printing.
pub fn labels(report: &RadiiReport) -> Vec<String> {
    report.integer_parts.iter().map(|v| v.to_string()).collect()
}

/// `det(xI − A)` coefficients as `f64`, for numerical residual checks.
pub fn coefficients_f64(coeffs: &[BigRational]) -> Vec<f64> {
    coeffs
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::NAN))
        .collect()
}
