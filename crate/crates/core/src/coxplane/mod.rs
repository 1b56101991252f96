//! Coxeter-plane picture drawn straight from the spectrum of `ad x(β)`:
//! each nonzero eigenvalue `ν` becomes the point `√(2/h)·ν`.

mod figure;
mod functionals;

use std::f64::consts::TAU;

use num_complex::Complex64;
use num_integer::Integer;

use crate::apposition::{group_moduli, SpectralReport, StructureConstants};
use crate::error::{Error, Result};
use crate::linalg;

pub use figure::{
    fmt6, render_csv, render_svg, ring_radii, write_csv, write_svg, Canvas, FigureSpec, CSV_HEADER,
    PALETTE,
};
pub use functionals::{edges, root_functionals, EdgeMode, RootFunctionals, EDGE_TOL};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlanePoint {
    pub x: f64,
    pub y: f64,
    /// Index of the modulus class, ascending by radius.
    pub orbit_class: usize,
    /// The eigenvalue `ν(x(β))` the point came from.
    pub source_eig: Complex64,
    /// Position of that eigenvalue in [`SpectralReport::nonzero_eigs`].
    pub source_index: usize,
}

impl PlanePoint {
    pub fn radius(&self) -> f64 {
        self.x.hypot(self.y)
    }
}

/// Argument in `[0, 2π)`, with angles within `1e-9` of `2π` folded to zero.
fn arg(z: Complex64) -> f64 {
    let a = z.arg();
    let a = if a < 0.0 { a + TAU } else { a };
    if TAU - a < 1e-9 {
        0.0
    } else {
        a
    }
}

/// Groups `positions` by modulus, rotates so that the outermost point with
/// the largest real part sits on the positive x-axis, and sorts by class then
/// angle. `positions[i]` came from `sources[i]`.
fn place(positions: &[Complex64], sources: &[Complex64]) -> Vec<PlanePoint> {
    let mut idx: Vec<usize> = (0..positions.len()).collect();
    idx.sort_by(|&a, &b| positions[a].norm().total_cmp(&positions[b].norm()));
    let moduli: Vec<f64> = idx.iter().map(|&i| positions[i].norm()).collect();
    let (_, classes) = group_moduli(&moduli);
    let mut class_of = vec![0; positions.len()];
    for (k, &i) in idx.iter().enumerate() {
        class_of[i] = classes[k];
    }
    let top = classes.last().copied().unwrap_or(0);
    let anchor = (0..positions.len())
        .filter(|&i| class_of[i] == top)
        .max_by(|&a, &b| positions[a].re.total_cmp(&positions[b].re))
        .map_or(Complex64::new(1.0, 0.0), |i| positions[i]);
    let turn = Complex64::from_polar(1.0, -anchor.arg());
    let mut rotated: Vec<Complex64> = positions.iter().map(|p| p * turn).collect();
    if let Some(i) = (0..positions.len()).find(|&i| positions[i] == anchor) {
        rotated[i] = Complex64::new(anchor.norm(), 0.0);
    }
    idx.sort_by(|&a, &b| {
        class_of[a]
            .cmp(&class_of[b])
            .then(arg(rotated[a]).total_cmp(&arg(rotated[b])))
    });
    idx.iter()
        .map(|&i| PlanePoint {
            x: rotated[i].re,
            y: rotated[i].im,
            orbit_class: class_of[i],
            source_eig: sources[i],
            source_index: i,
        })
        .collect()
}

/// Rewrites edges given on source indices into indices of `points`.
pub fn reindex_edges(points: &[PlanePoint], edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut at = vec![usize::MAX; points.len()];
    for (k, p) in points.iter().enumerate() {
        at[p.source_index] = k;
    }
    edges
        .iter()
        .map(|&(i, j)| {
            let (a, b) = (at[i], at[j]);
            (a.min(b), a.max(b))
        })
        .collect()
}

/// Points `√(2/h)·ν` for every nonzero eigenvalue of `ad x(β)`.
pub fn project_spectrum(sr: &SpectralReport, h: i64) -> Vec<PlanePoint> {
    let f = (2.0 / h as f64).sqrt();
    let positions: Vec<Complex64> = sr.nonzero_eigs.iter().map(|z| z * f).collect();
    place(&positions, &sr.nonzero_eigs)
}

/// Exponents `m` with `1 ≤ m < h` and `gcd(m, h) = 1`.
pub fn primitive_exponents(h: i64) -> Vec<u32> {
    (1..h)
        .filter(|m| m.gcd(&h) == 1)
        .map(|m| m as u32)
        .collect()
}

/// Projection onto the plane of the Coxeter element `σ = Ad c` on `h(β)`
/// where it acts by `γ^m`, `γ = e^{2πi/h}`. Here `c` multiplies `e_φ` by
/// `γ^{ht φ}`. With `y` spanning that eigenline the points are
/// `√(2/S)·ν(y)`, `S = Σ|ν(y)|²`; `m = 1` reproduces [`project_spectrum`].
pub fn exponent_projection(
    sc: &StructureConstants,
    rf: &RootFunctionals,
    h: i64,
    m: u32,
) -> Result<Vec<PlanePoint>> {
    if m == 0 || i64::from(m) >= h || i64::from(m).gcd(&h) != 1 {
        return Err(Error::InvalidExponent(m));
    }
    let l = rf.basis.len();
    let gamma = |k: i64| Complex64::from_polar(1.0, TAU * k as f64 / h as f64);
    let image: Vec<Vec<Complex64>> = rf
        .basis
        .iter()
        .map(|b| {
            b.iter()
                .enumerate()
                .map(|(i, v)| gamma(sc.degree(i)) * v)
                .collect()
        })
        .collect();
    // coordinates of σ bⱼ from the normal equations of the real basis
    let normal: Vec<Vec<Complex64>> = (0..l)
        .map(|i| {
            (0..l)
                .map(|j| Complex64::new(linalg::dot(&rf.basis[i], &rf.basis[j]), 0.0))
                .collect()
        })
        .collect();
    let mut sigma = vec![vec![Complex64::new(0.0, 0.0); l]; l];
    for (j, w) in image.iter().enumerate() {
        let rhs: Vec<Complex64> = rf
            .basis
            .iter()
            .map(|b| b.iter().zip(w).map(|(p, q)| q * p).sum())
            .collect();
        let col = linalg::complex_solve(&normal, &rhs)?;
        for i in 0..l {
            sigma[i][j] = col[i];
        }
    }
    let target = gamma(i64::from(m));
    for (i, row) in sigma.iter_mut().enumerate() {
        row[i] -= target;
    }
    let y = linalg::complex_null_vector(&sigma, 1e-8).ok_or(Error::InvalidExponent(m))?;
    let values = rf.evaluate(&y);
    let s: f64 = values.iter().map(Complex64::norm_sqr).sum();
    let f = (2.0 / s).sqrt();
    let positions: Vec<Complex64> = values.iter().map(|v| v * f).collect();
    Ok(place(&positions, &rf.nu_x))
}
