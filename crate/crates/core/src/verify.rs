//! Cross-checks of both routes for one type or a sweep of types.

use std::time::Instant;

use num_complex::Complex64;
use serde::Serialize;

use crate::apposition::{
    self, build_cyclic_element, build_with_seed, eigen_residual, modulus_spectrum,
    oracle_eigenvalues, reconstruct_root_vector, regularity, rotation_defect,
    zero_component_eigencheck, SpectralReport, StructureConstants,
};
use crate::error::Result;
use crate::kostant::{build_a, radii_report, KostantOperator, RadiiReport};
use crate::linalg;
use crate::par;
use crate::rootsystem::{
    build_root_system, height, highest_root, killing_gram, LieType, Rational, RootSystem,
};

pub const DEFAULT_TOLERANCE: f64 = 1e-8;
pub const COMMUTATOR_BOUND: f64 = 1e-12;
pub const ROTATION_BOUND: f64 = 1e-9;
pub const RECONSTRUCTION_BOUND: f64 = 1e-9;

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Bound for the oracle comparison and the eigenvector checks.
    pub tolerance: f64,
    /// Seed of the exact Jacobi sample.
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            tolerance: DEFAULT_TOLERANCE,
            seed: apposition::JACOBI_SEED,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    /// Measured value (a count, a residual or a discrepancy).
    pub value: f64,
    /// Required bound or expected value.
    pub bound: f64,
}

impl Check {
    fn at_most(name: &'static str, value: f64, bound: f64) -> Check {
        Check {
            name,
            passed: value <= bound,
            value,
            bound,
        }
    }

    fn equals(name: &'static str, value: f64, expected: f64) -> Check {
        Check {
            name,
            passed: value == expected,
            value,
            bound: expected,
        }
    }
}

/// Everything computed for one type, kept for reporting.
#[derive(Clone, Debug)]
pub struct Pipeline {
    pub root_system: RootSystem,
    pub operator: KostantOperator,
    pub radii: RadiiReport,
    pub structure: StructureConstants,
    pub cyclic: apposition::CyclicElement,
    pub spectrum: SpectralReport,
}

/// Builds both routes for `t`.
pub fn pipeline(t: LieType, seed: u64) -> Result<Pipeline> {
    let rs = build_root_system(t);
    let hr = highest_root(&rs);
    let kd = killing_gram(&rs);
    let operator = build_a(&rs, &hr, &kd)?;
    let radii = radii_report(&operator, hr.coxeter_number)?;
    let structure = build_with_seed(&rs, &kd, seed)?;
    let cyclic = build_cyclic_element(&structure, &hr);
    let spectrum = apposition::spectrum(&structure, &cyclic, hr.coxeter_number)?;
    Ok(Pipeline {
        root_system: rs,
        operator,
        radii,
        structure,
        cyclic,
        spectrum,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TypeReport {
    pub lie_type: LieType,
    pub passed: bool,
    /// Largest relative gap between sorted `(2/h)|ν|²` and sorted `(2/h)A`.
    pub max_discrepancy: f64,
    pub kostant_eigenvalues: Vec<f64>,
    pub oracle_eigenvalues: Vec<f64>,
    pub checks: Vec<Check>,
    pub elapsed_ms: f64,
}

impl TypeReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Largest `|a − b| / |b|` over paired entries; infinite on length mismatch.
pub fn max_relative_gap(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs() / y.abs().max(f64::MIN_POSITIVE))
        .fold(0.0, f64::max)
}

/// Picks one eigenvector index per modulus class.
pub fn class_representatives(sr: &SpectralReport) -> Vec<usize> {
    (0..sr.modulus_classes.len())
        .filter_map(|c| sr.class_of.iter().position(|&k| k == c))
        .collect()
}

pub fn verify_type(t: LieType, opts: &VerifyOptions) -> Result<TypeReport> {
    let start = Instant::now();
    let p = pipeline(t, opts.seed)?;
    let rs = &p.root_system;
    let hr = highest_root(rs);
    let kd = killing_gram(rs);
    let sr = &p.spectrum;
    let l = rs.rank();
    let h = hr.coxeter_number;
    let mut checks = vec![
        Check::equals("root_count", rs.roots().len() as f64, (l as i64 * h) as f64),
        Check::equals(
            "coxeter_number",
            (1 + hr.marks.iter().sum::<i64>()) as f64,
            h as f64,
        ),
        Check::equals(
            "highest_root_height",
            height(&hr.psi) as f64,
            (h - 1) as f64,
        ),
        Check {
            name: "killing_scale",
            passed: kd.scale == Rational::from_integer(2 * kd.dual_coxeter),
            value: crate::rootsystem::to_f64(kd.scale),
            bound: (2 * kd.dual_coxeter) as f64,
        },
        Check::equals(
            "operator_self_adjoint",
            f64::from(u8::from(p.operator.is_self_adjoint())),
            1.0,
        ),
        Check::at_most(
            "killing_normalization",
            p.structure
                .pairing()
                .iter()
                .fold(0.0, |m, v| m.max((v - 1.0).abs())),
            1e-12,
        ),
        Check::at_most(
            "commutator",
            p.cyclic.commutator_norm(&p.structure)?,
            COMMUTATOR_BOUND,
        ),
        Check::equals(
            "conjugation",
            p.cyclic.conjugation_defect(&p.structure),
            0.0,
        ),
    ];

    let reg = regularity(&p.structure, &p.cyclic)?;
    checks.push(Check::equals("kernel_dim", reg.kernel_dim as f64, l as f64));
    checks.push(Check::equals(
        "kernel_squared_dim",
        reg.kernel_dim_squared as f64,
        l as f64,
    ));
    checks.push(Check::equals(
        "spectral_kernel_dim",
        sr.kernel_dim as f64,
        l as f64,
    ));
    checks.push(Check::equals(
        "eigenvalue_count",
        sr.nonzero_eigs.len() as f64,
        (l as i64 * h) as f64,
    ));
    let bad_classes = sr
        .modulus_classes
        .iter()
        .filter(|c| c.multiplicity as i64 % h != 0)
        .count();
    checks.push(Check::equals("class_multiplicity", bad_classes as f64, 0.0));
    checks.push(Check::at_most(
        "rotation",
        rotation_defect(&sr.nonzero_eigs, h),
        ROTATION_BOUND,
    ));
    checks.push(Check::at_most(
        "imaginary_spectrum",
        sr.imaginary_defect,
        opts.tolerance,
    ));
    checks.push(Check::at_most(
        "eigen_residual",
        sr.residual / sr.max_modulus(),
        opts.tolerance,
    ));

    let kostant = p.radii.eigenvalues.clone();
    let oracle = oracle_eigenvalues(sr);
    let max_discrepancy = max_relative_gap(&oracle, &kostant);
    checks.push(Check::at_most(
        "oracle_equivalence",
        max_discrepancy,
        opts.tolerance,
    ));

    let mut squared: Vec<f64> = modulus_spectrum(&p.structure, &p.cyclic)?.split_off(l);
    squared.iter_mut().for_each(|v| *v *= 2.0 / h as f64);
    let mut from_eigs: Vec<f64> = sr
        .nonzero_eigs
        .iter()
        .map(|z| 2.0 / h as f64 * z.norm_sqr())
        .collect();
    from_eigs.sort_by(f64::total_cmp);
    checks.push(Check::at_most(
        "modulus_path",
        max_relative_gap(&squared, &from_eigs),
        opts.tolerance,
    ));

    let z_residuals = par::map_range(sr.nonzero_eigs.len(), |i| {
        zero_component_eigencheck(
            &p.structure,
            &sr.eigenvectors[i],
            sr.nonzero_eigs[i],
            &p.operator,
        )
    });
    let z_max = z_residuals
        .into_iter()
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    checks.push(Check::at_most("z_eigencheck", z_max, opts.tolerance));
    let zs: Vec<Vec<Complex64>> = sr
        .eigenvectors
        .iter()
        .map(|v| p.structure.cartan_part(v).to_vec())
        .collect();
    checks.push(Check::equals(
        "z_rank",
        linalg::complex_rank(&zs, 1e-8) as f64,
        l as f64,
    ));

    let reps = class_representatives(sr);
    let recon = par::map_slice(&reps, |&i| -> Result<f64> {
        let nu = sr.nonzero_eigs[i];
        let g = reconstruct_root_vector(
            &p.structure,
            &p.cyclic,
            &p.operator,
            p.structure.cartan_part(&sr.eigenvectors[i]),
            nu,
            h,
        )?;
        eigen_residual(&p.structure, &p.cyclic, &g.assemble(), nu)
    });
    let (mut worst, mut grading_ok) = (0.0f64, true);
    for r in recon {
        match r {
            Ok(v) => worst = worst.max(v),
            Err(crate::Error::GradingBound { .. }) => grading_ok = false,
            Err(e) => return Err(e),
        }
    }
    checks.push(Check::at_most(
        "reconstruction",
        worst,
        RECONSTRUCTION_BOUND,
    ));
    checks.push(Check::equals(
        "grading_bound",
        f64::from(u8::from(grading_ok)),
        1.0,
    ));

    Ok(TypeReport {
        lie_type: t,
        passed: checks.iter().all(|c| c.passed),
        max_discrepancy,
        kostant_eigenvalues: kostant,
        oracle_eigenvalues: oracle,
        checks,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// Verifies every type, concurrently with the `parallel` feature; results
/// come back in input order.
pub fn verify_sweep(types: &[LieType], opts: &VerifyOptions) -> Vec<Result<TypeReport>> {
    par::map_slice(types, |&t| verify_type(t, opts))
}

/// The full test sweep: A2..A8, B2..B8, C2..C8, D4..D8, E6..E8, F4, G2.
pub fn standard_sweep() -> Vec<LieType> {
    LieType::sweep(8)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_types_pass() {
        for s in ["A2", "G2", "B3", "D4"] {
            let r = verify_type(s.parse().unwrap(), &VerifyOptions::default()).unwrap();
            let bad: Vec<_> = r.failures().collect();
            assert!(r.passed, "{s}: {bad:?}");
        }
    }

    #[test]
    fn absurd_tolerance_fails_by_name() {
        let opts = VerifyOptions {
            tolerance: 1e-300,
            ..VerifyOptions::default()
        };
        let r = verify_type("A2".parse().unwrap(), &opts).unwrap();
        assert!(!r.passed);
        assert!(r
            .failures()
            .any(|c| c.name == "z_eigencheck" || c.name == "oracle_equivalence"));
    }

    #[test]
    fn relative_gap() {
        assert_eq!(max_relative_gap(&[1.0, 2.0], &[1.0, 2.0]), 0.0);
        assert!(max_relative_gap(&[1.0], &[1.0, 2.0]).is_infinite());
        assert!((max_relative_gap(&[1.1], &[1.0]) - 0.1).abs() < 1e-12);
    }
}
