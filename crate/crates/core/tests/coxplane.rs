use gosset_core::apposition::JACOBI_SEED;
use gosset_core::coxplane::{
    edges, exponent_projection, primitive_exponents, project_spectrum, render_svg, ring_radii,
    root_functionals, EdgeMode, FigureSpec,
};
use gosset_core::rootsystem::to_f64;
use gosset_core::verify::pipeline;
use gosset_core::LieType;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

#[test]
fn a2_is_a_hexagon() {
    let p = pipeline("A2".parse().unwrap(), JACOBI_SEED).unwrap();
    let pts = project_spectrum(&p.spectrum, 3);
    assert_eq!(pts.len(), 6);
    assert!(pts[0].y.abs() < 1e-12 && pts[0].x > 0.0);
    let r = ring_radii(&pts);
    assert_eq!(r.len(), 1);
    let rf = root_functionals(&p.structure, &p.cyclic, &p.spectrum, 1).unwrap();
    let e = edges(&rf.gram, EdgeMode::Polytope);
    assert_eq!(e.len(), 6);
    for i in 0..6 {
        assert_eq!(e.iter().filter(|&&(a, b)| a == i || b == i).count(), 2);
    }
    assert!(edges(&rf.gram, EdgeMode::None).is_empty());
}

#[test]
fn e8_rings_edges_and_exponents() {
    let p = pipeline("E8".parse().unwrap(), JACOBI_SEED).unwrap();
    let pts = project_spectrum(&p.spectrum, 30);
    assert_eq!(pts.len(), 240);
    let radii = ring_radii(&pts);
    assert_eq!(radii.len(), 8);
    for k in 0..8 {
        assert_eq!(pts.iter().filter(|q| q.orbit_class == k).count(), 30);
    }
    let top = radii[7];
    for (r, n) in radii.iter().zip(&p.radii.normalized) {
        assert!(close(1000.0 * r / top, *n, 1e-9), "{r} {n}");
    }
    let energy: f64 = pts.iter().map(|q| q.radius().powi(2)).sum();
    assert!(close(energy, 2.0, 1e-12));
    let anchor = pts.iter().position(|q| q.orbit_class == 7).unwrap();
    assert_eq!((pts[anchor].y, pts[anchor].x), (0.0, pts[anchor].radius()));

    let rf = root_functionals(&p.structure, &p.cyclic, &p.spectrum, 7).unwrap();
    assert!(rf.gram_imaginary < 1e-10, "{}", rf.gram_imaginary);
    for i in 0..240 {
        assert!(
            close(rf.gram[(i, i)], 1.0 / 30.0, 1e-9),
            "{}",
            rf.gram[(i, i)]
        );
    }
    assert!(close(rf.norm_sum(), 8.0, 1e-9));
    let e = edges(&rf.gram, EdgeMode::Polytope);
    assert_eq!(e.len(), 6720);
    for i in 0..240 {
        assert_eq!(e.iter().filter(|&&(a, b)| a == i || b == i).count(), 56);
    }
    let mut fig = FigureSpec::new(pts.clone());
    fig.edges = e;
    let svg = render_svg(&fig);
    assert_eq!(svg.matches(r#"class="ring""#).count(), 8);
    assert_eq!(svg.matches(r#"class="root""#).count(), 240);
    assert_eq!(svg.matches(r#"class="edge""#).count(), 6720);

    let one = exponent_projection(&p.structure, &rf, 30, 1).unwrap();
    for (a, b) in one.iter().zip(&pts) {
        assert_eq!(a.orbit_class, b.orbit_class);
        assert!(
            (a.x - b.x).abs() < 1e-9 && (a.y - b.y).abs() < 1e-9,
            "{a:?} {b:?}"
        );
    }
    assert_eq!(primitive_exponents(30), vec![1, 7, 11, 13, 17, 19, 23, 29]);
    let class_of_source = |z: num_complex::Complex64| {
        let i = (0..240)
            .min_by(|&a, &b| {
                (p.spectrum.nonzero_eigs[a] - z)
                    .norm()
                    .total_cmp(&(p.spectrum.nonzero_eigs[b] - z).norm())
            })
            .unwrap();
        p.spectrum.class_of[i]
    };
    let mut shapes: Vec<Vec<usize>> = Vec::new();
    for m in primitive_exponents(30) {
        let q = exponent_projection(&p.structure, &rf, 30, m).unwrap();
        let e2: f64 = q.iter().map(|v| v.radius().powi(2)).sum();
        assert!(close(e2, 2.0, 1e-9));
        let r = ring_radii(&q);
        for (a, b) in r.iter().zip(&radii) {
            assert!(close(*a, *b, 1e-9));
        }
        let mut perm = vec![usize::MAX; 8];
        for v in &q {
            let k = class_of_source(v.source_eig);
            assert!(perm[k] == usize::MAX || perm[k] == v.orbit_class, "m={m}");
            perm[k] = v.orbit_class;
        }
        if m == 1 {
            assert_eq!(perm, (0..8).collect::<Vec<_>>());
        }
        if !shapes.contains(&perm) {
            shapes.push(perm);
        }
    }
    assert_eq!(shapes.len(), 4);
    assert!(exponent_projection(&p.structure, &rf, 30, 2).is_err());
    assert!(exponent_projection(&p.structure, &rf, 30, 30).is_err());
}

#[test]
fn dual_norms_match_root_lengths() {
    for s in ["B3", "C3", "G2", "F4", "D4", "A4", "E6"] {
        let t: LieType = s.parse().unwrap();
        let p = pipeline(t, JACOBI_SEED).unwrap();
        let kd = gosset_core::killing_gram(&p.root_system);
        let mut expected: Vec<f64> = p
            .root_system
            .roots()
            .iter()
            .map(|r| to_f64(p.root_system.norm(r) / kd.scale))
            .collect();
        let rf = root_functionals(&p.structure, &p.cyclic, &p.spectrum, 3).unwrap();
        let mut got: Vec<f64> = (0..rf.len()).map(|i| rf.gram[(i, i)]).collect();
        expected.sort_by(f64::total_cmp);
        got.sort_by(f64::total_cmp);
        assert_eq!(got.len(), expected.len());
        for (a, b) in got.iter().zip(&expected) {
            assert!(close(*a, *b, 1e-9), "{s}: {a} vs {b}");
        }
        assert!(close(rf.norm_sum(), t.rank() as f64, 1e-9), "{s}");
        let e = edges(&rf.gram, EdgeMode::Polytope);
        assert!(!e.is_empty(), "{s}");
        assert!(e.iter().all(|&(a, b)| a < b));
    }
}
