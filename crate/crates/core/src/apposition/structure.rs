//! Killing-normalized structure constants.
//!
//! Basis: `e_φ` for each root (in root-system order), then `t₁…tℓ` with
//! `tᵢ = w_{αᵢ}`, the Killing dual of the simple root. In this basis
//!
//! * `[e_φ, e_{−φ}] = w_φ = Σ kᵢ tᵢ` for `φ = Σ kᵢ αᵢ`,
//! * `[tᵢ, e_φ] = (φ, αᵢ)_κ e_φ`,
//! * `κ(e_φ, e_{−φ}) = 1`, `κ(tᵢ, tⱼ) = Kᵢⱼ`.

use num_complex::Complex64;

use super::chevalley::{chevalley_constants, ChevalleyTable};
use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::par;
use crate::rootsystem::{heights, to_f64, Coords, KillingData, RootSystem};

/// Seeded basis triples checked exactly during construction.
pub const JACOBI_SAMPLES: usize = 512;
pub const JACOBI_SEED: u64 = 0x0060_55E7;

#[derive(Clone, Debug)]
pub struct StructureConstants {
    rank: usize,
    roots: Vec<Coords>,
    heights: Vec<i64>,
    chevalley: ChevalleyTable,
    /// `κ(e_φ, e_{−φ})` of the Chevalley basis.
    chev_pairing: Vec<i64>,
    /// Its square root.
    scale: Vec<f64>,
    /// `(φ, αᵢ)_κ`.
    weights: Vec<Vec<f64>>,
    gram: Mat,
    l: Mat,
    l_inv: Mat,
    /// `κ(e_φ, e_{−φ})` after normalization, from the adjoint trace.
    pairing: Vec<f64>,
    simple: Vec<usize>,
}

/// Builds the normalized structure constants, checking antisymmetry and a
/// seeded Jacobi sample exactly on the integral table first.
pub fn build_structure_constants(rs: &RootSystem, kd: &KillingData) -> Result<StructureConstants> {
    build_with_seed(rs, kd, JACOBI_SEED)
}

pub fn build_with_seed(rs: &RootSystem, kd: &KillingData, seed: u64) -> Result<StructureConstants> {
    let l = rs.rank();
    if kd.gram.len() != l {
        return Err(Error::DimensionMismatch {
            expected: l,
            found: kd.gram.len(),
        });
    }
    let table = chevalley_constants(rs)?;
    table.check_antisymmetry()?;
    table.check_jacobi_sample(JACOBI_SAMPLES, seed)?;

    let roots = rs.roots().to_vec();
    let r = roots.len();
    let chev_pairing = par::map_range(r, |a| table.killing_pairing(a));
    for (a, &p) in chev_pairing.iter().enumerate() {
        let want = kd.scale * 2 / rs.norm(&roots[a]);
        if !want.is_integer() || want.to_integer() != p || p <= 0 {
            return Err(Error::Consistency(format!(
                "Chevalley pairing {p} for root {:?} disagrees with 2I/(φ,φ) = {want}",
                roots[a]
            )));
        }
    }
    let weights = roots
        .iter()
        .map(|phi| {
            (0..l)
                .map(|i| {
                    let mut e = vec![0; l];
                    e[i] = 1;
                    to_f64(rs.form(phi, &e) / kd.scale)
                })
                .collect()
        })
        .collect();
    let gram = kd.gram_f64();
    let lc = linalg::cholesky(&gram)?;
    let l_inv = linalg::lower_inverse(&lc);

    let mut sc = StructureConstants {
        rank: l,
        heights: heights(rs),
        roots,
        chevalley: table,
        scale: chev_pairing.iter().map(|&p| (p as f64).sqrt()).collect(),
        chev_pairing,
        weights,
        gram,
        l: lc,
        l_inv,
        pairing: Vec::new(),
        simple: (0..l).map(|i| rs.simple_index(i)).collect(),
    };
    sc.pairing = par::map_range(r, |a| sc.trace_pairing(a));
    if let Some((a, p)) = sc
        .pairing
        .iter()
        .enumerate()
        .find(|(_, p)| (**p - 1.0).abs() > 1e-12)
    {
        return Err(Error::Consistency(format!(
            "normalized κ(e_φ, e_-φ) = {p} for root {:?}",
            sc.roots[a]
        )));
    }
    Ok(sc)
}

impl StructureConstants {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn dim(&self) -> usize {
        self.roots.len() + self.rank
    }

    pub fn roots(&self) -> &[Coords] {
        &self.roots
    }

    pub fn chevalley(&self) -> &ChevalleyTable {
        &self.chevalley
    }

    /// Basis index of `e_{αᵢ}`.
    pub fn simple_index(&self, i: usize) -> usize {
        self.simple[i]
    }

    pub fn neg(&self, a: usize) -> usize {
        self.roots.len() - 1 - a
    }

    /// Height of a basis element (zero on the Cartan part).
    pub fn degree(&self, b: usize) -> i64 {
        self.heights.get(b).copied().unwrap_or(0)
    }

    /// `κ(e_φ, e_{−φ})` in the integral Chevalley basis; `e_φ` of this basis
    /// is the Chevalley vector divided by its square root.
    pub fn chevalley_pairing(&self, a: usize) -> i64 {
        self.chev_pairing[a]
    }

    /// `κ(e_φ, e_{−φ})` for every root, computed from the adjoint trace.
    pub fn pairing(&self) -> &[f64] {
        &self.pairing
    }

    /// Killing Gram matrix on `t₁…tℓ`.
    pub fn gram(&self) -> &Mat {
        &self.gram
    }

    /// Bracket of two basis elements as a sparse vector.
    pub fn bracket_basis(&self, x: usize, y: usize) -> Vec<(usize, f64)> {
        let r = self.roots.len();
        match (x < r, y < r) {
            (true, true) => {
                if y == self.neg(x) {
                    self.roots[x]
                        .iter()
                        .enumerate()
                        .filter(|(_, &k)| k != 0)
                        .map(|(i, &k)| (r + i, k as f64))
                        .collect()
                } else if let Some(s) = self.chevalley.sum_index(x, y) {
                    let n = self.chevalley.n(x, y) as f64;
                    vec![(s, n * self.scale[s] / (self.scale[x] * self.scale[y]))]
                } else {
                    Vec::new()
                }
            }
            (true, false) => vec![(x, -self.weights[x][y - r])],
            (false, true) => vec![(y, self.weights[y][x - r])],
            (false, false) => Vec::new(),
        }
    }

    fn check_dim(&self, v: usize) -> Result<()> {
        if v != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v,
            });
        }
        Ok(())
    }

    pub fn bracket(&self, u: &[f64], v: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(u.len())?;
        self.check_dim(v.len())?;
        let mut out = vec![0.0; self.dim()];
        for (x, &a) in u.iter().enumerate().filter(|(_, a)| **a != 0.0) {
            for (y, &b) in v.iter().enumerate().filter(|(_, b)| **b != 0.0) {
                for (z, c) in self.bracket_basis(x, y) {
                    out[z] += a * b * c;
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `ad v`: column `j` holds `[v, basis_j]`.
    pub fn ad_matrix(&self, v: &[f64]) -> Result<Mat> {
        self.check_dim(v.len())?;
        let d = self.dim();
        let mut m = Mat::zeros(d, d);
        for (x, &a) in v.iter().enumerate().filter(|(_, a)| **a != 0.0) {
            for y in 0..d {
                for (z, c) in self.bracket_basis(x, y) {
                    m[(z, y)] += a * c;
                }
            }
        }
        Ok(m)
    }

    /// `κ(u, v)` from the normalized pairings.
    pub fn killing(&self, u: &[f64], v: &[f64]) -> f64 {
        let r = self.roots.len();
        let roots: f64 = (0..r).map(|a| u[a] * v[self.neg(a)]).sum();
        let cartan: f64 = (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| u[r + i] * self.gram[(i, j)] * v[r + j])
                    .sum::<f64>()
            })
            .sum();
        roots + cartan
    }

    /// `tr(ad e_φ ad e_{−φ})` from the float table.
    fn trace_pairing(&self, a: usize) -> f64 {
        let na = self.neg(a);
        (0..self.dim())
            .map(|b| {
                self.bracket_basis(na, b)
                    .into_iter()
                    .flat_map(|(y, c)| {
                        self.bracket_basis(a, y)
                            .into_iter()
                            .filter(move |&(z, _)| z == b)
                            .map(move |(_, d)| c * d)
                    })
                    .sum::<f64>()
            })
            .sum()
    }

    /// Cartan involution: `θ(e_φ) = −e_{−φ}`, `θ(t) = −t`.
    pub fn theta(&self, v: &[f64]) -> Vec<f64> {
        let r = self.roots.len();
        let mut out = vec![0.0; self.dim()];
        for a in 0..r {
            out[self.neg(a)] = -v[a];
        }
        for i in 0..self.rank {
            out[r + i] = -v[r + i];
        }
        out
    }

    /// Unit vector on basis element `b`.
    pub fn basis_vector(&self, b: usize) -> Vec<f64> {
        let mut v = vec![0.0; self.dim()];
        v[b] = 1.0;
        v
    }

    /// Coordinates of a vector on `t₁…tℓ`.
    pub fn cartan_part<'a, T>(&self, v: &'a [T]) -> &'a [T] {
        &v[self.roots.len()..]
    }

    /// `T = diag(1, Lᵀ)` with `K = L Lᵀ`: in the coordinates `T v` the
    /// compact form `−κ(u, θv)` is the Euclidean inner product.
    fn frame(&self, inverse: bool) -> Mat {
        let r = self.roots.len();
        let d = self.dim();
        let lt = if inverse {
            self.l_inv.transpose()
        } else {
            self.l.transpose()
        };
        Mat::from_fn(d, d, |i, j| match (i < r, j < r) {
            (true, true) => f64::from(u8::from(i == j)),
            (false, false) => lt[(i - r, j - r)],
            _ => 0.0,
        })
    }

    /// `T X T⁻¹`.
    pub fn to_frame(&self, x: &Mat) -> Result<Mat> {
        self.frame(false).matmul(x)?.matmul(&self.frame(true))
    }

    /// `T⁻¹ v` for a complex vector in frame coordinates.
    pub fn from_frame_c(&self, v: &[Complex64]) -> Vec<Complex64> {
        let r = self.roots.len();
        let mut out = v.to_vec();
        for i in 0..self.rank {
            out[r + i] = (0..self.rank).map(|j| self.l_inv[(j, i)] * v[r + j]).sum();
        }
        out
    }

    /// Compact-form norm `√(−κ(v̄, θv))` of a complex vector.
    pub fn compact_norm(&self, v: &[Complex64]) -> f64 {
        let r = self.roots.len();
        let roots: f64 = v[..r].iter().map(Complex64::norm_sqr).sum();
        let c = &v[r..];
        let cartan: f64 = (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| (c[i].conj() * self.gram[(i, j)] * c[j]).re)
                    .sum::<f64>()
            })
            .sum();
        (roots + cartan).max(0.0).sqrt()
    }
}
