use std::f64::consts::TAU;

use num_complex::Complex64;
use proptest::prelude::*;
use proptest::sample::{select, Index};

use gosset_core::apposition::chevalley::{chevalley_constants, IntVec};
use gosset_core::apposition::JACOBI_SEED;
use gosset_core::coxplane::{fmt6, project_spectrum, ring_radii};
use gosset_core::kostant::{build_a, char_poly, radii_report};
use gosset_core::rootsystem::RootSystem;
use gosset_core::verify::pipeline;
use gosset_core::{build_root_system, highest_root, killing_gram, LieType};

fn small_types() -> impl Strategy<Value = LieType> {
    select(LieType::sweep(6))
}

fn tiny_types() -> impl Strategy<Value = LieType> {
    select(LieType::sweep(4))
}

fn cleaned(v: IntVec) -> IntVec {
    let mut v: IntVec = v.into_iter().filter(|&(_, c)| c != 0).collect();
    v.sort_unstable();
    v
}

fn string_extent(rs: &RootSystem, b: &[i64], a: &[i64], sign: i64) -> i64 {
    let mut k = 0;
    loop {
        let next: Vec<i64> = b
            .iter()
            .zip(a)
            .map(|(x, y)| x + sign * (k + 1) * y)
            .collect();
        if !rs.contains(&next) {
            return k;
        }
        k += 1;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn root_strings_have_length_set_by_the_pairing(t in small_types(), i in any::<Index>(), j in any::<Index>()) {
        let rs = build_root_system(t);
        let roots = rs.roots();
        let (a, b) = (&roots[i.index(roots.len())], &roots[j.index(roots.len())]);
        prop_assume!(a != b && *a != RootSystem::neg(b));
        let p = string_extent(&rs, b, a, -1);
        let q = string_extent(&rs, b, a, 1);
        let pairing = rs.form(b, a) * 2 / rs.norm(a);
        prop_assert!(pairing.is_integer());
        prop_assert_eq!(p - q, pairing.to_integer());
        prop_assert!(p + q <= 3);
        let table = chevalley_constants(&rs).unwrap();
        let (ia, ib) = (rs.index_of(a).unwrap(), rs.index_of(b).unwrap());
        if q > 0 {
            prop_assert_eq!(table.n(ia, ib).abs(), p + 1);
        } else {
            prop_assert_eq!(table.n(ia, ib), 0);
        }
    }

    #[test]
    fn brackets_are_antisymmetric_and_satisfy_jacobi(
        t in small_types(),
        x in any::<Index>(),
        y in any::<Index>(),
        z in any::<Index>(),
    ) {
        let table = chevalley_constants(&build_root_system(t)).unwrap();
        let d = table.dim();
        let (x, y, z) = (x.index(d), y.index(d), z.index(d));
        let xy = cleaned(table.bracket_basis(x, y));
        let yx: IntVec = cleaned(table.bracket_basis(y, x)).into_iter().map(|(k, c)| (k, -c)).collect();
        prop_assert_eq!(xy, yx);
        prop_assert!(table.jacobiator(x, y, z).is_empty());
    }

    #[test]
    fn relabeling_simple_roots_keeps_the_radii(t in small_types(), seed in any::<u64>()) {
        let rs = build_root_system(t);
        let l = rs.rank();
        let mut perm: Vec<usize> = (0..l).collect();
        let mut s = seed;
        for i in (1..l).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let other = rs.relabeled(&perm);
        let run = |rs: &RootSystem| {
            let hr = highest_root(rs);
            let op = build_a(rs, &hr, &killing_gram(rs)).unwrap();
            (radii_report(&op, hr.coxeter_number).unwrap(), char_poly(&op).unwrap())
        };
        let (r1, c1) = run(&rs);
        let (r2, c2) = run(&other);
        prop_assert_eq!(c1.coefficients, c2.coefficients);
        prop_assert_eq!(c1.operator_coefficients, c2.operator_coefficients);
        for (a, b) in r1.eigenvalues.iter().zip(&r2.eigenvalues) {
            prop_assert!((a - b).abs() <= 1e-12 * b.abs());
        }
    }

    #[test]
    fn fmt6_never_prints_negative_zero(v in any::<f64>()) {
        prop_assert_ne!(fmt6(v), "-0.000000");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn spectrum_is_closed_under_rotation_negation_and_conjugation(t in tiny_types(), k in any::<Index>()) {
        let p = pipeline(t, JACOBI_SEED).unwrap();
        let h = p.spectrum.coxeter_number;
        let eigs = &p.spectrum.nonzero_eigs;
        let nu = eigs[k.index(eigs.len())];
        let top = p.spectrum.max_modulus();
        let gamma = Complex64::from_polar(1.0, TAU / h as f64);
        for image in [gamma * nu, -nu, nu.conj()] {
            let d = eigs.iter().map(|z| (z - image).norm()).fold(f64::INFINITY, f64::min);
            prop_assert!(d <= 1e-9 * top, "{t}: {image} misses by {d}");
        }
    }

    #[test]
    fn projected_points_lie_on_their_rings(t in tiny_types()) {
        let p = pipeline(t, JACOBI_SEED).unwrap();
        let h = p.spectrum.coxeter_number;
        let pts = project_spectrum(&p.spectrum, h);
        let radii = ring_radii(&pts);
        for q in &pts {
            prop_assert!((q.radius() - radii[q.orbit_class]).abs() <= 1e-9 * radii[q.orbit_class]);
        }
        prop_assert!(radii.windows(2).all(|w| w[0] < w[1]));
        let energy: f64 = pts.iter().map(|q| q.radius().powi(2)).sum();
        prop_assert!((energy - 2.0).abs() < 1e-9);
    }
}
