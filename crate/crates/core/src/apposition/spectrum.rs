//! Spectrum of `ad x` without a nonsymmetric eigensolver.
//!
//! In the compact-form frame `ad x` is normal: `ad x = H + S` with
//! `H = ad((x + x₋)/2)` symmetric, `S = ad((x − x₋)/2)` skew and
//! `[H, S] = 0`. Each eigenspace of `H` is `S`-stable; on it `SᵀS` is
//! symmetric with eigenvalues `b²`, and `w − i S w / b` is an eigenvector of
//! `S` for `ib`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use super::cyclic::CyclicElement;
use super::structure::StructureConstants;
use crate::error::{Error, Result};
use crate::linalg::{self, cluster_sorted, jacobi_eigen, Mat};

/// Relative gap separating eigenspace clusters.
pub const CLUSTER_GAP: f64 = 1e-7;
/// Relative tolerance for grouping moduli into classes.
pub const CLASS_TOL: f64 = 1e-6;
/// Eigenvalues below this fraction of the largest modulus count as zero.
pub const KERNEL_TOL: f64 = 1e-9;
/// Squared singular values below this fraction of the largest count as zero.
pub const SINGULAR_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct NormalEigen {
    pub values: Vec<Complex64>,
    /// Unit eigenvectors in frame coordinates.
    pub vectors: Vec<Vec<Complex64>>,
}

fn rayleigh(h: &Mat, s: &Mat, v: &[Complex64]) -> Complex64 {
    let hv = h.mul_cvec(v);
    let sv = s.mul_cvec(v);
    let num: Complex64 = v
        .iter()
        .zip(hv.iter().zip(&sv))
        .map(|(a, (p, q))| a.conj() * (p + q))
        .sum();
    num / linalg::cdot(v, v).re
}

fn gram_schmidt(vs: Vec<Vec<Complex64>>, keep: usize) -> Vec<Vec<Complex64>> {
    let mut out: Vec<Vec<Complex64>> = Vec::new();
    for mut v in vs {
        if out.len() == keep {
            break;
        }
        let n0 = linalg::cnorm(&v);
        for _ in 0..2 {
            for u in &out {
                let c = linalg::cdot(u, &v);
                v.iter_mut().zip(u).for_each(|(a, b)| *a -= c * b);
            }
        }
        let n = linalg::cnorm(&v);
        if n > 1e-6 * n0 {
            v.iter_mut().for_each(|a| *a /= n);
            out.push(v);
        }
    }
    out
}

/// Eigen-decomposition of `H + S` for commuting symmetric `h` and skew `s`.
pub fn normal_eigen(h: &Mat, s: &Mat) -> Result<NormalEigen> {
    let n = h.rows();
    let scale = ((h.frobenius().powi(2) + s.frobenius().powi(2)) / n.max(1) as f64).sqrt();
    let gap = CLUSTER_GAP * scale.max(f64::MIN_POSITIVE);
    let eh = jacobi_eigen(h)?;
    let sv = s.matmul(&eh.vectors)?;
    let mut values = Vec::with_capacity(n);
    let mut vectors = Vec::with_capacity(n);
    for c in cluster_sorted(&eh.values, gap) {
        let k = c.len();
        let sc = Mat::from_fn(k, k, |p, q| {
            (0..n)
                .map(|i| eh.vectors[(i, c.start + p)] * sv[(i, c.start + q)])
                .sum()
        });
        let g = sc.transpose().matmul(&sc)?;
        let eg = jacobi_eigen(&g)?;
        let b: Vec<f64> = eg.values.iter().map(|v| v.max(0.0).sqrt()).collect();
        let lift = |y: &[Complex64]| -> Vec<Complex64> {
            (0..n)
                .map(|i| (0..k).map(|p| eh.vectors[(i, c.start + p)] * y[p]).sum())
                .collect()
        };
        for bc in cluster_sorted(&b, gap) {
            let bm = bc.clone().map(|i| b[i]).sum::<f64>() / bc.len() as f64;
            let us: Vec<Vec<f64>> = bc.clone().map(|i| eg.vector(i)).collect();
            if bm <= gap {
                for u in us {
                    let y: Vec<Complex64> = u.iter().map(|&a| Complex64::new(a, 0.0)).collect();
                    let v = lift(&y);
                    values.push(rayleigh(h, s, &v));
                    vectors.push(v);
                }
                continue;
            }
            if bc.len() % 2 == 1 {
                return Err(Error::Spectral(format!(
                    "odd multiplicity {} for a nonreal eigenvalue pair",
                    bc.len()
                )));
            }
            let m = bc.len() / 2;
            let cands: Vec<Vec<Complex64>> = us
                .iter()
                .map(|u| {
                    let su = sc.mul_vec(u);
                    u.iter()
                        .zip(&su)
                        .map(|(&a, &b)| Complex64::new(a, -b / bm))
                        .collect()
                })
                .collect();
            let basis = gram_schmidt(cands, m);
            if basis.len() != m {
                return Err(Error::Spectral(format!(
                    "found {} of {m} independent eigenvectors in a cluster",
                    basis.len()
                )));
            }
            for y in basis {
                let v = lift(&y);
                let w: Vec<Complex64> = v.iter().map(Complex64::conj).collect();
                values.push(rayleigh(h, s, &v));
                vectors.push(v);
                values.push(rayleigh(h, s, &w));
                vectors.push(w);
            }
        }
    }
    Ok(NormalEigen { values, vectors })
}

#[derive(Clone, Debug, Serialize)]
pub struct ModulusClass {
    pub modulus: f64,
    pub multiplicity: usize,
}

#[derive(Clone, Debug)]
pub struct SpectralReport {
    pub rank: usize,
    pub coxeter_number: i64,
    /// Sorted by class, then by argument in `[0, 2π)`.
    pub nonzero_eigs: Vec<Complex64>,
    /// Unit-norm (compact form) eigenvectors in the structure-constant basis.
    pub eigenvectors: Vec<Vec<Complex64>>,
    /// Class index of each nonzero eigenvalue.
    pub class_of: Vec<usize>,
    pub kernel_dim: usize,
    /// Real basis of `ker ad x` in the structure-constant basis.
    pub kernel_basis: Vec<Vec<f64>>,
    pub modulus_classes: Vec<ModulusClass>,
    /// `max ‖ad x·v − νv‖` over the unit eigenvectors.
    pub residual: f64,
    /// Relative symmetric part of the frame matrix of `ad(x − x₋)`; zero iff
    /// its spectrum is purely imaginary.
    pub imaginary_defect: f64,
}

impl SpectralReport {
    pub fn max_modulus(&self) -> f64 {
        self.nonzero_eigs
            .iter()
            .fold(0.0f64, |m, z| m.max(z.norm()))
    }

    pub fn oracle_radii(&self) -> Vec<OracleRadius> {
        oracle_radii(self, self.coxeter_number)
    }
}

fn arg(z: Complex64) -> f64 {
    let a = z.arg();
    if a < 0.0 {
        a + TAU
    } else {
        a
    }
}

/// Groups ascending moduli into classes at relative tolerance
/// [`CLASS_TOL`]; returns the classes and the class of each entry.
pub fn group_moduli(sorted: &[f64]) -> (Vec<ModulusClass>, Vec<usize>) {
    let mut classes: Vec<ModulusClass> = Vec::new();
    let mut class_of = Vec::with_capacity(sorted.len());
    let mut sum = 0.0;
    for (i, &m) in sorted.iter().enumerate() {
        let new = match classes.last() {
            Some(_) => (m - sorted[i - 1]) > CLASS_TOL * m,
            None => true,
        };
        if new {
            if let Some(c) = classes.last_mut() {
                c.modulus = sum / c.multiplicity as f64;
            }
            classes.push(ModulusClass {
                modulus: m,
                multiplicity: 0,
            });
            sum = 0.0;
        }
        let c = classes.last_mut().expect("class pushed above");
        c.multiplicity += 1;
        sum += m;
        class_of.push(classes.len() - 1);
    }
    if let Some(c) = classes.last_mut() {
        c.modulus = sum / c.multiplicity as f64;
    }
    (classes, class_of)
}

pub fn spectrum(sc: &StructureConstants, ce: &CyclicElement, h: i64) -> Result<SpectralReport> {
    let half = |sign: f64| -> Vec<f64> {
        ce.x.iter()
            .zip(&ce.x_minus)
            .map(|(a, b)| 0.5 * (a + sign * b))
            .collect()
    };
    let hp = sc.to_frame(&sc.ad_matrix(&half(1.0))?)?;
    let sp = sc.to_frame(&sc.ad_matrix(&half(-1.0))?)?;
    let imaginary_defect = sp.symmetric_part().frobenius() / sp.frobenius().max(f64::MIN_POSITIVE);
    let hs = hp.symmetric_part();
    let ss = sp.skew_part();
    let ne = normal_eigen(&hs, &ss)?;

    let x = sc.to_frame(&sc.ad_matrix(&ce.x)?)?;
    let top = ne.values.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    let mut nonzero: Vec<(Complex64, Vec<Complex64>)> = Vec::new();
    let mut kernel = Vec::new();
    let mut residual: f64 = 0.0;
    for (v, w) in ne.values.into_iter().zip(ne.vectors) {
        let xw = x.mul_cvec(&w);
        let r = xw
            .iter()
            .zip(&w)
            .map(|(a, b)| (a - v * b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        residual = residual.max(r);
        if v.norm() <= KERNEL_TOL * top {
            kernel.push(w);
        } else {
            nonzero.push((v, w));
        }
    }
    nonzero.sort_by(|a, b| a.0.norm().total_cmp(&b.0.norm()));
    let moduli: Vec<f64> = nonzero.iter().map(|(v, _)| v.norm()).collect();
    let (classes, class_of) = group_moduli(&moduli);
    let mut order: Vec<usize> = (0..nonzero.len()).collect();
    order.sort_by(|&i, &j| {
        class_of[i]
            .cmp(&class_of[j])
            .then(arg(nonzero[i].0).total_cmp(&arg(nonzero[j].0)))
    });

    if let Some(c) = classes.iter().find(|c| c.multiplicity as i64 % h != 0) {
        return Err(Error::Spectral(format!(
            "modulus class {:.12} has multiplicity {}, not a multiple of h = {h}",
            c.modulus, c.multiplicity
        )));
    }

    let kernel_basis = kernel
        .iter()
        .map(|w| sc.from_frame_c(w).iter().map(|z| z.re).collect())
        .collect();
    Ok(SpectralReport {
        rank: sc.rank(),
        coxeter_number: h,
        nonzero_eigs: order.iter().map(|&i| nonzero[i].0).collect(),
        eigenvectors: order
            .iter()
            .map(|&i| sc.from_frame_c(&nonzero[i].1))
            .collect(),
        class_of: order.iter().map(|&i| class_of[i]).collect(),
        kernel_dim: kernel.len(),
        kernel_basis,
        modulus_classes: classes,
        residual,
        imaginary_defect,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleRadius {
    pub radius: f64,
    pub multiplicity: usize,
    /// `multiplicity / h`.
    pub weight: usize,
}

/// `rᵢ = √(2/h)·|ν|` per modulus class, ascending.
pub fn oracle_radii(sr: &SpectralReport, h: i64) -> Vec<OracleRadius> {
    let f = (2.0 / h as f64).sqrt();
    sr.modulus_classes
        .iter()
        .map(|c| OracleRadius {
            radius: f * c.modulus,
            multiplicity: c.multiplicity,
            weight: c.multiplicity / h as usize,
        })
        .collect()
}

/// `(2/h)|ν|²` for every nonzero eigenvalue, ascending, with each class
/// contributing `multiplicity / h` copies (the multiset compared against
/// the spectrum of `(2/h)A`).
pub fn oracle_eigenvalues(sr: &SpectralReport) -> Vec<f64> {
    oracle_radii(sr, sr.coxeter_number)
        .iter()
        .flat_map(|r| std::iter::repeat_n(r.radius * r.radius, r.weight))
        .collect()
}

/// Largest distance, relative to the top modulus, between `γν` and the
/// nearest unused eigenvalue, over a greedy matching (`γ = e^{2πi/h}`).
pub fn rotation_defect(eigs: &[Complex64], h: i64) -> f64 {
    let g = Complex64::from_polar(1.0, TAU / h as f64);
    let top = eigs
        .iter()
        .fold(0.0f64, |m, z| m.max(z.norm()))
        .max(f64::MIN_POSITIVE);
    let mut used = vec![false; eigs.len()];
    let mut worst: f64 = 0.0;
    for z in eigs {
        let target = g * z;
        let best = (0..eigs.len()).filter(|&j| !used[j]).min_by(|&i, &j| {
            (eigs[i] - target)
                .norm()
                .total_cmp(&(eigs[j] - target).norm())
        });
        match best {
            Some(j) => {
                used[j] = true;
                worst = worst.max((eigs[j] - target).norm() / top);
            }
            None => return f64::INFINITY,
        }
    }
    worst
}

/// Squared moduli from the positive semidefinite `ad x · ad x₋` (ascending,
/// including the `ℓ` zeros).
pub fn modulus_spectrum(sc: &StructureConstants, ce: &CyclicElement) -> Result<Vec<f64>> {
    let x = sc.to_frame(&sc.ad_matrix(&ce.x)?)?;
    let xm = sc.to_frame(&sc.ad_matrix(&ce.x_minus)?)?;
    Ok(jacobi_eigen(&x.matmul(&xm)?.symmetric_part())?.values)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Regularity {
    pub kernel_dim: usize,
    pub kernel_dim_squared: usize,
}

/// Dimensions of `ker ad x` and `ker (ad x)²` from the singular values of
/// the frame matrices (relative threshold [`SINGULAR_TOL`] on their squares).
pub fn regularity(sc: &StructureConstants, ce: &CyclicElement) -> Result<Regularity> {
    let x = sc.to_frame(&sc.ad_matrix(&ce.x)?)?;
    let x2 = x.matmul(&x)?;
    let null = |m: &Mat| -> Result<usize> {
        let ev = jacobi_eigen(&m.transpose().matmul(m)?)?.values;
        let top = ev.last().copied().unwrap_or(0.0);
        Ok(ev.iter().filter(|&&v| v <= SINGULAR_TOL * top).count())
    };
    Ok(Regularity {
        kernel_dim: null(&x)?,
        kernel_dim_squared: null(&x2)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apposition::{build_cyclic_element, build_structure_constants};
    use crate::rootsystem::{build_root_system, highest_root, killing_gram};

    fn report(t: &str) -> SpectralReport {
        let rs = build_root_system(t.parse().unwrap());
        let hr = highest_root(&rs);
        let sc = build_structure_constants(&rs, &killing_gram(&rs)).unwrap();
        let ce = build_cyclic_element(&sc, &hr);
        spectrum(&sc, &ce, hr.coxeter_number).unwrap()
    }

    #[test]
    fn normal_eigen_on_rotation_block() {
        let h = Mat::from_fn(3, 3, |i, j| if i == j { [2.0, 2.0, -1.0][i] } else { 0.0 });
        let s = Mat::from_fn(3, 3, |i, j| match (i, j) {
            (0, 1) => 3.0,
            (1, 0) => -3.0,
            _ => 0.0,
        });
        let ne = normal_eigen(&h, &s).unwrap();
        let mut v = ne.values.clone();
        v.sort_by(|a, b| a.im.total_cmp(&b.im).then(a.re.total_cmp(&b.re)));
        let want = [
            Complex64::new(2.0, -3.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(2.0, 3.0),
        ];
        for (a, b) in v.iter().zip(&want) {
            assert!((a - b).norm() < 1e-13, "{a} vs {b}");
        }
    }

    #[test]
    fn a2_six_eigenvalues_of_modulus_sqrt_half() {
        let sr = report("A2");
        assert_eq!(sr.nonzero_eigs.len(), 6);
        assert_eq!(sr.kernel_dim, 2);
        for z in &sr.nonzero_eigs {
            assert!((z.norm() - 0.5f64.sqrt()).abs() < 1e-12);
        }
        let r = oracle_radii(&sr, 3);
        assert_eq!(r.len(), 1);
        assert!((r[0].radius - (1.0f64 / 3.0).sqrt()).abs() < 1e-12);
        assert_eq!(r[0].weight, 2);
        for w in sr.nonzero_eigs.windows(2) {
            let d = (w[1].arg() - w[0].arg()).rem_euclid(std::f64::consts::FRAC_PI_3);
            assert!(d.min(std::f64::consts::FRAC_PI_3 - d) < 1e-9);
        }
    }

    #[test]
    fn rotation_invariance_and_residuals() {
        for t in ["G2", "B3", "C4", "D5", "F4"] {
            let sr = report(t);
            assert!(
                rotation_defect(&sr.nonzero_eigs, sr.coxeter_number) < 1e-9,
                "{t}"
            );
            assert!(sr.residual < 1e-10, "{t}: {}", sr.residual);
            assert!(sr.imaginary_defect < 1e-14, "{t}");
        }
    }

    #[test]
    fn grouping_classes() {
        let (c, of) = group_moduli(&[1.0, 1.0 + 1e-9, 2.0, 2.0, 2.0]);
        assert_eq!(c.len(), 2);
        assert_eq!(c[1].multiplicity, 3);
        assert_eq!(of, vec![0, 0, 1, 1, 1]);
        assert!(group_moduli(&[]).0.is_empty());
    }
}
