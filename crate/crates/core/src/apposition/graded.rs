use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::chevalley::IntVec;
use super::cyclic::CyclicElement;
use super::structure::StructureConstants;
use crate::error::{Error, Result};
use crate::kostant::KostantOperator;
use crate::linalg;
use crate::poly;

/// Cartan parts below this fraction of the vector norm count as zero.
pub const ZERO_PROJECTION_TOL: f64 = 1e-10;
/// Components at `|k| = h` above this fraction of `‖z‖` violate the grading.
pub const GRADING_TOL: f64 = 1e-8;

/// `‖A z − |ν|² z‖ / ‖z‖` for the Cartan part `z` of an eigenvector.
pub fn zero_component_eigencheck(
    sc: &StructureConstants,
    eigvec: &[Complex64],
    nu: Complex64,
    op: &KostantOperator,
) -> Result<f64> {
    if eigvec.len() != sc.dim() {
        return Err(Error::DimensionMismatch {
            expected: sc.dim(),
            found: eigvec.len(),
        });
    }
    let z = sc.cartan_part(eigvec);
    let nz = linalg::cnorm(z);
    if nz <= ZERO_PROJECTION_TOL * linalg::cnorm(eigvec) || nz == 0.0 {
        return Err(Error::ZeroProjection);
    }
    let az = op.matrix_f64().mul_cvec(z);
    let m2 = nu.norm_sqr();
    let r = az
        .iter()
        .zip(z)
        .map(|(a, b)| (a - m2 * b).norm_sqr())
        .sum::<f64>()
        .sqrt();
    Ok(r / nz)
}

/// Components `e_ν(k) ∈ g(k)` of a root vector under the height grading.
#[derive(Clone, Debug)]
pub struct GradedVector {
    pub components: BTreeMap<i64, Vec<Complex64>>,
}

impl GradedVector {
    pub fn component(&self, k: i64) -> Option<&[Complex64]> {
        self.components.get(&k).map(Vec::as_slice)
    }

    pub fn assemble(&self) -> Vec<Complex64> {
        let d = self.components.values().next().map_or(0, Vec::len);
        let mut out = vec![Complex64::new(0.0, 0.0); d];
        for v in self.components.values() {
            out.iter_mut().zip(v).for_each(|(a, b)| *a += b);
        }
        out
    }

    /// Largest `‖e_ν(k)‖` with `|k| ≥ bound`.
    pub fn norm_beyond(&self, bound: i64) -> f64 {
        self.components
            .iter()
            .filter(|(k, _)| k.abs() >= bound)
            .fold(0.0, |m, (_, v)| m.max(linalg::cnorm(v)))
    }
}

/// Fixed-point precision of the exact recursion.
pub const RECURSION_BITS: u32 = 320;

/// Exact projection of `z` onto the eigenspace of `A` for the root of its
/// minimal polynomial nearest `lambda`, as integers over `2^RECURSION_BITS`.
fn project_fixed(op: &KostantOperator, z: &[f64], lambda: f64) -> Result<Vec<BigInt>> {
    let m = poly::to_big_matrix(op.matrix());
    let minpoly = poly::minimal_polynomial(&m);
    let root = poly::refine_root(&minpoly, lambda, RECURSION_BITS)
        .ok_or_else(|| Error::Spectral(format!("no simple eigenvalue of A near {lambda}")))?;
    let near = root.to_f64().unwrap_or(f64::NAN);
    let close = (near - lambda).abs() <= 1e-6 * lambda.abs();
    if !close {
        return Err(Error::Spectral(format!(
            "|ν|² = {lambda} is not an eigenvalue of A (nearest {near})"
        )));
    }
    let g = poly::deflate(&minpoly, &root);
    let norm = poly::eval_rational(&g, &root);
    let zq: Vec<BigRational> = z
        .iter()
        .map(|&v| {
            BigRational::from_float(v)
                .ok_or_else(|| Error::Spectral("non-finite eigenvector".into()))
        })
        .collect::<Result<_>>()?;
    let mut acc: Vec<BigRational> = zq.iter().map(|v| v * &g[0]).collect();
    for c in &g[1..] {
        acc = (0..acc.len())
            .map(|i| {
                m[i].iter()
                    .zip(&acc)
                    .map(|(a, b)| a * b)
                    .sum::<BigRational>()
                    + c * &zq[i]
            })
            .collect();
    }
    let one = BigRational::from_integer(BigInt::one() << RECURSION_BITS);
    Ok(acc
        .iter()
        .map(|v| (v / &norm * &one).round().to_integer())
        .collect())
}

/// Rebuilds a root vector from its `g(0)` part `z`:
/// `e(k) = ν⁻¹ [x(β′), e(k−1)]` for `k > 0` and
/// `e(k) = ν̄⁻¹ [x₋(β′), e(k+1)]` for `k < 0`, up to `|k| = h`.
/// Degrees `±h` are computed to check that they vanish and are then dropped.
///
/// Forward iteration multiplies any error in `z` along another orbit by
/// `(|μ|/|ν|)^k`, so the powers of `ad x(β′)` are applied exactly: `z` is
/// first projected onto its `A`-eigenspace in rational arithmetic, and a
/// torus element on the Chevalley basis turns `x(β′)` into `Σ e_{αᵢ}`
/// (and another one turns `x₋(β′)` into `Σ e_{−αᵢ}`), both integral. The result
/// is rounded to `f64` once per component.
pub fn reconstruct_root_vector(
    sc: &StructureConstants,
    ce: &CyclicElement,
    op: &KostantOperator,
    z: &[Complex64],
    nu: Complex64,
    h: i64,
) -> Result<GradedVector> {
    let l = sc.rank();
    if z.len() != l {
        return Err(Error::DimensionMismatch {
            expected: l,
            found: z.len(),
        });
    }
    if op.rank() != l {
        return Err(Error::DimensionMismatch {
            expected: l,
            found: op.rank(),
        });
    }
    let r = sc.num_roots();
    let table = sc.chevalley();
    let lambda = nu.norm_sqr();
    let re: Vec<f64> = z.iter().map(|c| c.re).collect();
    let im: Vec<f64> = z.iter().map(|c| c.im).collect();
    let parts = [
        project_fixed(op, &re, lambda)?,
        project_fixed(op, &im, lambda)?,
    ];

    // tᵢ = hᵢ / κᵢ with κᵢ the Chevalley pairing of αᵢ
    let kappa: Vec<i64> = (0..l)
        .map(|i| sc.chevalley_pairing(sc.simple_index(i)))
        .collect();
    let lcm = kappa.iter().fold(1i64, |a, &b| a.lcm(&b));
    let start: Vec<Vec<BigInt>> = parts
        .iter()
        .map(|p| {
            let mut v = vec![BigInt::zero(); sc.dim()];
            for i in 0..l {
                v[r + i] = &p[i] * (lcm / kappa[i]);
            }
            v
        })
        .collect();
    // x(β′) = τ(Σ e_{αᵢ}) and x₋(β′) = τ′(Σ e_{−αᵢ}) in the Chevalley basis,
    // with τ^{αᵢ} = τ′^{−αᵢ} = √(nᵢ/κᵢ); normalized coefficients pick up √κ_φ
    let c: Vec<f64> = (0..l)
        .map(|i| (ce.marks[i] as f64 / kappa[i] as f64).sqrt())
        .collect();
    let weight: Vec<f64> = (0..r)
        .map(|a| {
            let tau: f64 = sc.roots()[a]
                .iter()
                .zip(&c)
                .map(|(&k, ci)| ci.powi(k.abs() as i32))
                .product();
            tau * (sc.chevalley_pairing(a) as f64).sqrt()
        })
        .collect();
    let up: IntVec = (0..l).map(|i| (sc.simple_index(i), 1)).collect();
    let down: IntVec = (0..l).map(|i| (sc.neg(sc.simple_index(i)), 1)).collect();
    let base = 2f64.powi(-(RECURSION_BITS as i32)) / lcm as f64;

    let mut e0 = vec![Complex64::new(0.0, 0.0); sc.dim()];
    e0[r..].copy_from_slice(z);
    let nz = linalg::cnorm(z);
    let mut components = BTreeMap::new();
    components.insert(0, e0);
    for (elem, step, sign) in [(&up, nu, 1i64), (&down, nu.conj(), -1)] {
        let mut cur = start.clone();
        let mut denom = Complex64::new(base, 0.0);
        for k in 1..=h {
            cur = cur.iter().map(|v| table.ad_apply_big(elem, v)).collect();
            denom /= step;
            let comp: Vec<Complex64> = (0..sc.dim())
                .map(|b| {
                    if b >= r || (cur[0][b].is_zero() && cur[1][b].is_zero()) {
                        return Complex64::new(0.0, 0.0);
                    }
                    let w = Complex64::new(
                        cur[0][b].to_f64().unwrap_or(f64::NAN),
                        cur[1][b].to_f64().unwrap_or(f64::NAN),
                    );
                    w * denom * weight[b]
                })
                .collect();
            let n = linalg::cnorm(&comp);
            if k == h {
                let vanishes = n <= GRADING_TOL * nz;
                if !vanishes {
                    return Err(Error::GradingBound {
                        degree: sign * k,
                        norm: n,
                    });
                }
            } else {
                components.insert(sign * k, comp);
            }
        }
    }
    Ok(GradedVector { components })
}

/// `‖ad x·v − νv‖ / ‖v‖`.
pub fn eigen_residual(
    sc: &StructureConstants,
    ce: &CyclicElement,
    v: &[Complex64],
    nu: Complex64,
) -> Result<f64> {
    let xv = sc.ad_matrix(&ce.x)?.mul_cvec(v);
    let r = xv
        .iter()
        .zip(v)
        .map(|(a, b)| (a - nu * b).norm_sqr())
        .sum::<f64>()
        .sqrt();
    Ok(r / linalg::cnorm(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apposition::{build_cyclic_element, build_structure_constants, spectrum};
    use crate::kostant::build_a;
    use crate::rootsystem::{build_root_system, highest_root, killing_gram};

    #[test]
    fn a2_every_eigenvector_passes() {
        let rs = build_root_system("A2".parse().unwrap());
        let hr = highest_root(&rs);
        let kd = killing_gram(&rs);
        let sc = build_structure_constants(&rs, &kd).unwrap();
        let ce = build_cyclic_element(&sc, &hr);
        let op = build_a(&rs, &hr, &kd).unwrap();
        let sr = spectrum(&sc, &ce, hr.coxeter_number).unwrap();
        for (v, &nu) in sr.eigenvectors.iter().zip(&sr.nonzero_eigs) {
            let r = zero_component_eigencheck(&sc, v, nu, &op).unwrap();
            assert!(r < 1e-9);
            let doubled: Vec<Complex64> = v.iter().map(|a| a * 2.0).collect();
            assert_eq!(
                zero_component_eigencheck(&sc, &doubled, nu, &op).unwrap(),
                r
            );
            let g = reconstruct_root_vector(&sc, &ce, &op, sc.cartan_part(v), nu, 3).unwrap();
            assert_eq!(
                g.component(0).unwrap()[sc.num_roots()..],
                *sc.cartan_part(v)
            );
            assert!(eigen_residual(&sc, &ce, &g.assemble(), nu).unwrap() < 1e-9);
            assert_eq!(g.norm_beyond(3), 0.0);
        }
    }

    #[test]
    fn zero_projection_is_reported() {
        let rs = build_root_system("A2".parse().unwrap());
        let hr = highest_root(&rs);
        let kd = killing_gram(&rs);
        let sc = build_structure_constants(&rs, &kd).unwrap();
        let op = build_a(&rs, &hr, &kd).unwrap();
        let mut v = vec![Complex64::new(0.0, 0.0); sc.dim()];
        v[0] = Complex64::new(1.0, 0.0);
        assert!(matches!(
            zero_component_eigencheck(&sc, &v, Complex64::new(1.0, 0.0), &op),
            Err(Error::ZeroProjection)
        ));
    }
}
