use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::apposition::{
    normal_eigen, CyclicElement, SpectralReport, StructureConstants, KERNEL_TOL,
};
use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::par;

/// The roots of `h(β)` as functionals, aligned with the order of
/// [`SpectralReport::nonzero_eigs`].
#[derive(Clone, Debug)]
pub struct RootFunctionals {
    /// Real basis `b₁…bℓ` of `h(β)` (structure-constant coordinates).
    pub basis: Vec<Vec<f64>>,
    /// `κ(bⱼ, bₖ)`.
    pub basis_gram: Mat,
    /// `ν(x(β))` for each root.
    pub nu_x: Vec<Complex64>,
    /// `(ν(b₁), …, ν(bℓ))` for each root.
    pub values: Vec<Vec<Complex64>>,
    /// `(w_ν, w_μ)`.
    pub gram: Mat,
    /// Largest imaginary part discarded from `gram`.
    pub gram_imaginary: f64,
}

/// Evaluates every root of `h(β)` on a real basis of `h(β)` and forms the
/// Killing Gram of the dual vectors `w_ν`.
///
/// Joint eigenvectors come from the normal decomposition of `ad y` for a
/// seeded random real `y ∈ h(β)`, which separates roots that `x(β)` alone
/// may not.
pub fn root_functionals(
    sc: &StructureConstants,
    ce: &CyclicElement,
    sr: &SpectralReport,
    seed: u64,
) -> Result<RootFunctionals> {
    let l = sc.rank();
    let basis = sr.kernel_basis.clone();
    if basis.len() != l {
        return Err(Error::Spectral(format!(
            "kernel of ad x has dimension {}, expected {l}",
            basis.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs: Vec<f64> = (0..l)
        .map(|_| rng.gen_range(0.5..1.5) * if rng.gen() { 1.0 } else { -1.0 })
        .collect();
    let y: Vec<f64> = (0..sc.dim())
        .map(|i| basis.iter().zip(&coeffs).map(|(b, c)| b[i] * c).sum())
        .collect();
    let ty = sc.theta(&y);
    // adjoint of ad y for the compact form is ad(−θy)
    let hy: Vec<f64> = y.iter().zip(&ty).map(|(a, b)| 0.5 * (a - b)).collect();
    let sy: Vec<f64> = y.iter().zip(&ty).map(|(a, b)| 0.5 * (a + b)).collect();
    let hm = sc.to_frame(&sc.ad_matrix(&hy)?)?.symmetric_part();
    let sm = sc.to_frame(&sc.ad_matrix(&sy)?)?.skew_part();
    let ne = normal_eigen(&hm, &sm)?;
    let top = ne.values.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    let vectors: Vec<&Vec<Complex64>> = ne
        .values
        .iter()
        .zip(&ne.vectors)
        .filter(|(v, _)| v.norm() > KERNEL_TOL * top)
        .map(|(_, w)| w)
        .collect();
    if vectors.len() != sr.nonzero_eigs.len() {
        return Err(Error::Spectral(format!(
            "generic element of h(β) has {} nonzero eigenvalues, expected {}",
            vectors.len(),
            sr.nonzero_eigs.len()
        )));
    }

    let x = sc.to_frame(&sc.ad_matrix(&ce.x)?)?;
    let bm: Vec<Mat> = basis
        .iter()
        .map(|b| sc.to_frame(&sc.ad_matrix(b)?))
        .collect::<Result<_>>()?;
    let rq = |m: &Mat, v: &[Complex64]| -> Complex64 {
        linalg::cdot(v, &m.mul_cvec(v)) / linalg::cdot(v, v).re
    };
    let evaluated: Vec<(Complex64, Vec<Complex64>)> = par::map_slice(&vectors, |v| {
        (rq(&x, v), bm.iter().map(|b| rq(b, v)).collect())
    });

    // align with the spectral report
    let mut used = vec![false; evaluated.len()];
    let mut nu_x = Vec::with_capacity(evaluated.len());
    let mut values = Vec::with_capacity(evaluated.len());
    for target in &sr.nonzero_eigs {
        let j = (0..evaluated.len())
            .filter(|&j| !used[j])
            .min_by(|&a, &b| {
                (evaluated[a].0 - target)
                    .norm()
                    .total_cmp(&(evaluated[b].0 - target).norm())
            })
            .ok_or_else(|| {
                Error::Spectral("root functional matching ran out of candidates".into())
            })?;
        used[j] = true;
        nu_x.push(evaluated[j].0);
        values.push(evaluated[j].1.clone());
    }

    let basis_gram = Mat::from_fn(l, l, |i, j| sc.killing(&basis[i], &basis[j]));
    let g: Vec<Vec<Complex64>> = (0..l)
        .map(|i| {
            (0..l)
                .map(|j| Complex64::new(basis_gram[(i, j)], 0.0))
                .collect()
        })
        .collect();
    let dual: Vec<Vec<Complex64>> = values
        .iter()
        .map(|f| linalg::complex_solve(&g, f))
        .collect::<Result<_>>()?;
    let n = values.len();
    let products: Vec<Vec<Complex64>> = par::map_range(n, |i| {
        (0..n)
            .map(|j| values[i].iter().zip(&dual[j]).map(|(a, b)| a * b).sum())
            .collect()
    });
    let gram_imaginary = products
        .iter()
        .flatten()
        .fold(0.0f64, |m, z| m.max(z.im.abs()));
    let gram = Mat::from_fn(n, n, |i, j| products[i][j].re);
    Ok(RootFunctionals {
        basis,
        basis_gram,
        nu_x,
        values,
        gram,
        gram_imaginary,
    })
}

impl RootFunctionals {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `Σ (w_ν, w_ν)`.
    pub fn norm_sum(&self) -> f64 {
        (0..self.len()).map(|i| self.gram[(i, i)]).sum()
    }

    /// `ν(y)` for `y = Σ cⱼ bⱼ`.
    pub fn evaluate(&self, coeffs: &[Complex64]) -> Vec<Complex64> {
        self.values
            .iter()
            .map(|f| f.iter().zip(coeffs).map(|(a, b)| a * b).sum())
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeMode {
    None,
    Polytope,
}

/// Relative tolerance when comparing inner products.
pub const EDGE_TOL: f64 = 1e-6;

/// Undirected pairs `i < j`, `w_i ≠ ±w_j`, whose inner product is maximal.
pub fn edges(gram: &Mat, mode: EdgeMode) -> Vec<(usize, usize)> {
    if mode == EdgeMode::None {
        return Vec::new();
    }
    let n = gram.rows();
    let scale = (0..n).fold(0.0f64, |m, i| m.max(gram[(i, i)].abs()));
    let tol = EDGE_TOL * scale;
    let opposite =
        |i: usize, j: usize| (gram[(i, i)] + 2.0 * gram[(i, j)] + gram[(j, j)]).abs() <= tol;
    let candidates = || {
        (0..n)
            .flat_map(move |i| ((i + 1)..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !opposite(i, j))
    };
    let Some(best) = candidates()
        .map(|(i, j)| gram[(i, j)])
        .max_by(f64::total_cmp)
    else {
        return Vec::new();
    };
    candidates()
        .filter(|&(i, j)| gram[(i, j)] >= best - tol)
        .collect()
}
