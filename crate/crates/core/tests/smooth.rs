use std::f64::consts::{FRAC_PI_4, LN_2};

use thedra::smooth::presets::{
    circular_molding, generic_tsurface, paraboloid_wedge, translational_paraboloid,
};
use thedra::smooth::{
    axial_surface_range, deform_axial_surface, deform_general_surface, deform_molding_surface,
    deform_revolution_surface, deform_translational_surface, general_surface_range, integrate,
    molding_surface_range, reconstruct_c, sample_to_grid, sample_translational,
    smooth_exponential_to_additive, smooth_parallel_partner, translational_surface_range,
    AxialSpec, FundamentalForm, Interval, Partner, ScalarFunction, SmoothSpec, Surface,
    TranslationalSpec,
};
use thedra::{deform_translational, Error, Vec3};

type F = ScalarFunction<f64>;

fn iv(lo: f64, hi: f64) -> Interval<f64> {
    Interval::new(lo, hi).unwrap()
}

/// Cell midpoints of a `k`-cell partition: never closer than `length / 2k` to an end.
fn mids(d: Interval<f64>, k: usize) -> Vec<f64> {
    (0..k)
        .map(|i| d.lo + d.length() * (i as f64 + 0.5) / k as f64)
        .collect()
}

fn grid_points<S: Surface<f64> + ?Sized>(s: &S, k: usize) -> Vec<(f64, f64)> {
    let us = mids(s.u_domain(), k);
    let vs = mids(s.v_domain(), k);
    us.iter()
        .flat_map(|u| vs.iter().map(move |v| (*u, *v)))
        .collect()
}

/// Fourth-order central differences of `point_at`, independent of the analytic partials.
fn fd_partials<S: Surface<f64> + ?Sized>(s: &S, u: f64, v: f64) -> (Vec3<f64>, Vec3<f64>) {
    let h = 1e-3;
    let d = |f: &dyn Fn(f64) -> Vec3<f64>| {
        (f(-2.0 * h) - f(-h) * 8.0 + f(h) * 8.0 - f(2.0 * h)) * (1.0 / (12.0 * h))
    };
    (d(&|e| s.point_at(u + e, v)), d(&|e| s.point_at(u, v + e)))
}

fn fd_form<S: Surface<f64> + ?Sized>(s: &S, u: f64, v: f64) -> FundamentalForm<f64> {
    let (a, b) = fd_partials(s, u, v);
    FundamentalForm {
        e: a.dot(a),
        f: a.dot(b),
        g: b.dot(b),
    }
}

/// Largest `|I^t - I| / max(E, G)` over a `20 x 20` grid.
fn metric_drift<A: Surface<f64> + ?Sized, B: Surface<f64> + ?Sized>(a: &A, b: &B) -> f64 {
    grid_points(a, 20)
        .into_iter()
        .map(|(u, v)| {
            let fa = a.first_fundamental_form(u, v).unwrap();
            let fb = b.first_fundamental_form(u, v).unwrap();
            fa.max_difference(&fb) / fa.scale()
        })
        .fold(0.0, f64::max)
}

/// The same drift with the deformed form taken from finite differences of positions, so that
/// the quadrature of the deformed curves is checked as well.
fn metric_drift_fd<A: Surface<f64> + ?Sized, B: Surface<f64> + ?Sized>(a: &A, b: &B) -> f64 {
    grid_points(a, 10)
        .into_iter()
        .map(|(u, v)| {
            let fa = a.first_fundamental_form(u, v).unwrap();
            fa.max_difference(&fd_form(b, u, v)) / fa.scale()
        })
        .fold(0.0, f64::max)
}

/// Largest distance between two surfaces after moving both base points `(u0, v0)` to the
/// origin.
fn relative_gap<A: Surface<f64> + ?Sized, B: Surface<f64> + ?Sized>(a: &A, b: &B) -> f64 {
    let (u0, v0) = (a.u_domain().lo, a.v_domain().lo);
    let (oa, ob) = (a.point_at(u0, v0), b.point_at(u0, v0));
    let mut pts = grid_points(a, 10);
    pts.push((a.u_domain().hi, a.v_domain().hi));
    pts.into_iter()
        .map(|(u, v)| ((a.point_at(u, v) - oa) - (b.point_at(u, v) - ob)).norm())
        .fold(0.0, f64::max)
}

fn interior(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    (1..=count)
        .map(|k| lo + (hi - lo) * k as f64 / (count + 1) as f64)
        .collect()
}

#[test]
fn evaluation_examples() {
    let rev = AxialSpec::revolution(
        F::linear(0.0, 1.0, iv(0.1, 1.0)),
        F::linear(0.0, 1.0, iv(0.0, 1.0)),
        F::polynomial(vec![0.0, 0.0, 1.0], iv(0.1, 1.0)),
    )
    .unwrap();
    assert_eq!(rev.point(0.0, 1.0).unwrap(), Vec3::new(1.0, 0.0, 1.0));

    let tp = translational_paraboloid(0.5).unwrap();
    assert_eq!(tp.point(0.5, 0.5).unwrap(), Vec3::new(0.5, 0.5, 0.5));
    assert_eq!(tp.point(0.0, 0.0).unwrap(), Vec3::zero());
    // Back in the original axes every point satisfies z = x^2 + y^2.
    for (u, v) in grid_points(&tp, 7) {
        let p = tp.point(u, v).unwrap();
        let (x, y, z) = (p.y, p.z, p.x);
        assert!((z - (x * x + y * y)).abs() < 1e-15);
        assert_eq!((x, y), (u, v));
    }
    assert!(matches!(tp.point(0.6, 0.0), Err(Error::OutOfDomain { .. })));

    let general = generic_tsurface::<f64>().unwrap();
    assert_eq!(general.point(0.0, 0.0).unwrap(), Vec3::zero());
}

#[test]
fn fundamental_form_examples() {
    let tp = translational_paraboloid(0.5).unwrap();
    let form = tp.first_fundamental_form(0.5, 0.5).unwrap();
    assert_eq!((form.e, form.f, form.g), (2.0, 1.0, 2.0));

    let wedge = paraboloid_wedge::<f64>().unwrap();
    for (u, v) in grid_points(&wedge, 9) {
        assert!(wedge.first_fundamental_form(u, v).unwrap().f.abs() < 1e-15);
    }
}

#[test]
fn analytic_partials_match_finite_differences() {
    let surfaces: Vec<Box<dyn Surface<f64>>> = vec![
        Box::new(translational_paraboloid(0.5).unwrap()),
        Box::new(paraboloid_wedge().unwrap()),
        Box::new(paraboloid_wedge().unwrap().to_general().unwrap()),
        Box::new(circular_molding().unwrap()),
        Box::new(generic_tsurface().unwrap()),
    ];
    for s in &surfaces {
        for (u, v) in grid_points(s.as_ref(), 12) {
            let exact = s.first_fundamental_form(u, v).unwrap();
            let fd = fd_form(s.as_ref(), u, v);
            assert!(
                exact.max_difference(&fd) <= 1e-6 * exact.scale(),
                "({u}, {v}): {exact:?} vs {fd:?}"
            );
        }
    }
}

#[test]
fn translational_paraboloid_range_and_invariance() {
    let tp = translational_paraboloid(0.5).unwrap();
    let range = translational_surface_range(&tp);
    assert!((range.t_max - 0.5 * LN_2).abs() < 1e-12, "{range:?}");
    assert!((range.t_min + 0.5 * LN_2).abs() < 1e-12, "{range:?}");
    let mut samples = interior(range.t_min, range.t_max, 3);
    samples.extend([range.t_min, range.t_max]);
    for s in samples {
        let d = deform_translational_surface(&tp, s).unwrap();
        assert!(d.creases_u.is_empty() && d.creases_v.is_empty());
        let drift = metric_drift(&tp, &d.surface);
        assert!(drift <= 1e-8, "s = {s}: {drift}");
        let drift_fd = metric_drift_fd(&tp, &d.surface);
        assert!(drift_fd <= 1e-6, "s = {s}: {drift_fd}");
    }
    // Spot check at s = 0.1 on 100 points.
    let d = deform_translational_surface(&tp, 0.1).unwrap();
    for (u, v) in grid_points(&tp, 10) {
        let a = tp.first_fundamental_form(u, v).unwrap();
        let b = d.surface.first_fundamental_form(u, v).unwrap();
        assert!(a.max_difference(&b) <= 1e-8 * a.scale());
    }
    assert!(matches!(
        deform_translational_surface(&tp, range.t_max + 1e-3),
        Err(Error::RadicandNegative { .. })
    ));
}

#[test]
fn identity_at_zero() {
    let tp = translational_paraboloid(0.5).unwrap();
    let d = deform_translational_surface(&tp, 0.0).unwrap();
    assert!(relative_gap(&tp, &d.surface) < 1e-12);

    let g = generic_tsurface::<f64>().unwrap();
    let d = deform_general_surface(&g, 0.0).unwrap();
    assert!(relative_gap(&g, &d.surface) < 1e-10);

    let m = circular_molding::<f64>().unwrap();
    let d = deform_molding_surface(&m, 0.0).unwrap();
    assert!(relative_gap(&m, &d.surface) < 1e-12);
}

#[test]
fn wedge_range_and_profile_integral() {
    let wedge = paraboloid_wedge::<f64>().unwrap();
    let range = axial_surface_range(&wedge);
    assert!((range.t_min + 1.0).abs() < 1e-12 && range.min_open);
    assert!((range.t_max - 0.04).abs() < 1e-12);
    assert!((range.t_max_at.unwrap() - 0.1).abs() < 1e-12);
    assert!(deform_axial_surface(&wedge, -1.0).is_err());
    assert!(matches!(
        deform_axial_surface(&wedge, 0.05),
        Err(Error::RadicandNegative { .. })
    ));

    // z^t(v) = 0.01 + integral_{0.1}^v sqrt(4 w^2 + 0.5) dw in closed form.
    let d = deform_axial_surface(&wedge, -0.5).unwrap();
    let antiderivative = |w: f64| {
        let r = (4.0 * w * w + 0.5).sqrt();
        0.5 * w * r + 0.125 * (2.0 * w + r).ln()
    };
    for v in [0.1, 0.3, 0.77, 1.0] {
        let expected = 0.01 + antiderivative(v) - antiderivative(0.1);
        assert!((d.surface.z().value(v) - expected).abs() < 1e-10, "{v}");
    }
}

#[test]
fn wedge_metric_invariance_all_paths() {
    let wedge = paraboloid_wedge::<f64>().unwrap();
    let general = wedge.to_general().unwrap();
    let range = axial_surface_range(&wedge);
    let ts = [-0.9, -0.5, -0.1, 0.02, range.t_max];
    for t in ts {
        let axial = deform_axial_surface(&wedge, t).unwrap().surface;
        let rev = deform_revolution_surface(wedge.f(), wedge.phi(), wedge.z(), t)
            .unwrap()
            .surface;
        let gen = deform_general_surface(&general, t).unwrap().surface;
        for drift in [
            metric_drift(&wedge, &axial),
            metric_drift(&wedge, &rev),
            metric_drift(&general, &gen),
        ] {
            assert!(drift <= 1e-8, "t = {t}: {drift}");
        }
        assert!(metric_drift_fd(&wedge, &axial) <= 1e-6);
        assert!(metric_drift_fd(&general, &gen) <= 1e-6);
        // Revolution keeps eta = 0; the general deformation must agree up to translation.
        assert!(relative_gap(&axial, &rev) <= 1e-8, "t = {t}");
        assert!(relative_gap(&axial, &gen) <= 1e-8, "t = {t}");
        assert!(gen.compatibility_residual() <= 1e-8);
        assert!(gen.eta(0.5).abs() <= 1e-12);
    }
}

#[test]
fn revolution_angle_scaling() {
    let wedge = paraboloid_wedge::<f64>().unwrap();
    let t = -0.75;
    let d = deform_revolution_surface(wedge.f(), wedge.phi(), wedge.z(), t).unwrap();
    for u in [0.0, 0.4, 1.0] {
        assert!((d.surface.phi().value(u) - u / (1.0 + t).sqrt()).abs() < 1e-15);
        assert!((d.surface.c().value(u) - (1.0 + t).sqrt()).abs() < 1e-15);
    }
}

#[test]
fn one_sided_deformations() {
    // Translational: z' = 2 (v - 1/4) vanishes inside, so only s >= 0 is admitted.
    let d = iv(0.0, 0.5);
    let spec = TranslationalSpec::new(
        F::polynomial(vec![0.0, 0.0, 1.0], d),
        F::linear(0.0, 1.0, d),
        F::linear(0.0, 1.0, d),
        F::polynomial(vec![0.0625, -0.5, 1.0], d),
    )
    .unwrap();
    let range = translational_surface_range(&spec);
    assert!(range.t_min.abs() < 1e-12, "{range:?}");
    match deform_translational_surface(&spec, -0.1) {
        Err(Error::RadicandNegative { at, value, .. }) => {
            assert!((at - 0.25).abs() < 1e-9 && value < 0.0, "{at} {value}");
        }
        other => panic!("expected rejection, got {other:?}"),
    }
    let ok = deform_translational_surface(&spec, 0.1).unwrap();
    assert_eq!(ok.creases_v.len(), 1);
    assert!((ok.creases_v[0] - 0.25).abs() < 1e-9);
    assert!(metric_drift(&spec, &ok.surface) <= 1e-8);

    // Axial: z' vanishes at v = 1/2, so only t <= 0 is admitted.
    let v = iv(0.1, 1.0);
    let axial = AxialSpec::revolution(
        F::linear(0.0, 1.0, v),
        F::linear(0.0, 1.0, iv(0.0, 1.0)),
        F::polynomial(vec![0.25, -1.0, 1.0], v),
    )
    .unwrap();
    assert!(axial_surface_range(&axial).t_max.abs() < 1e-12);
    assert!(matches!(
        deform_axial_surface(&axial, 0.1),
        Err(Error::RadicandNegative { .. })
    ));
    let ok = deform_axial_surface(&axial, -0.3).unwrap();
    assert!((ok.creases_v[0] - 0.5).abs() < 1e-9);
    assert!(metric_drift(&axial, &ok.surface) <= 1e-8);
    let general = axial.to_general().unwrap();
    assert!(matches!(
        deform_general_surface(&general, 0.1),
        Err(Error::RadicandNegative { .. })
    ));
}

#[test]
fn molding_doubles_curvature() {
    let m = circular_molding::<f64>().unwrap();
    let range = molding_surface_range(&m).unwrap();
    assert!(range.t_max.is_infinite() && range.t_min < 0.0);
    let d = deform_molding_surface(&m, LN_2).unwrap().surface;
    for u in [0.0, 0.3, 1.0] {
        assert!((d.psi().value(u) - 2.0 * u).abs() < 1e-15);
        // Unit speed and psi = 2u: a circle of radius 1/2 through the origin.
        let expected = ((2.0 * u).cos() - 1.0) * 0.5;
        let gamma = d.gamma(u);
        assert!(
            (gamma.x - expected).abs() < 1e-12 && (gamma.y - (2.0 * u).sin() * 0.5).abs() < 1e-12
        );
    }
    for s in [range.t_min * 0.9, -0.1, 0.3, LN_2, 1.5] {
        let out = deform_molding_surface(&m, s).unwrap().surface;
        assert!(metric_drift(&m, &out) <= 1e-8, "s = {s}");
        assert!(metric_drift_fd(&m, &out) <= 1e-6, "s = {s}");
        let gen = deform_general_surface(&m, smooth_exponential_to_additive(s))
            .unwrap()
            .surface;
        assert!(relative_gap(&out, &gen) <= 1e-8, "s = {s}");
    }
}

#[test]
fn translational_agrees_with_general() {
    let tp = translational_paraboloid(0.5).unwrap();
    let general = tp.to_general().unwrap();
    let range = translational_surface_range(&tp);
    for s in interior(range.t_min, range.t_max, 5) {
        let a = deform_translational_surface(&tp, s).unwrap().surface;
        let b = deform_general_surface(&general, smooth_exponential_to_additive(s))
            .unwrap()
            .surface;
        assert!(relative_gap(&a, &b) <= 1e-8, "s = {s}");
    }
    let gr = general_surface_range(&general);
    assert!((gr.t_max - smooth_exponential_to_additive(range.t_min)).abs() < 1e-10);
}

#[test]
fn generic_surface_deformation() {
    let g = generic_tsurface::<f64>().unwrap();
    let range = general_surface_range(&g);
    assert!(range.t_min < 0.0 && (range.t_max - 1.0).abs() < 1e-12);
    for t in interior(range.t_min, range.t_max, 5) {
        let d = deform_general_surface(&g, t).unwrap().surface;
        assert!(metric_drift(&g, &d) <= 1e-8, "t = {t}");
        assert!(metric_drift_fd(&g, &d) <= 1e-6, "t = {t}");
        assert!(d.compatibility_residual() <= 1e-8);
        // c^t and eta^t follow the closed forms.
        for u in [0.1, 0.6] {
            let (c, eta) = (g.c().value(u), g.eta(u));
            assert!((d.c().value(u) - (c * c + t).sqrt()).abs() < 1e-12);
            let expected = (c * eta.sin() / (c * c * eta.cos().powi(2) + t).sqrt()).atan();
            assert!((d.eta(u) - expected).abs() < 1e-10);
        }
    }
}

#[test]
fn curve_lengths_are_preserved() {
    let g = generic_tsurface::<f64>().unwrap();
    let d = deform_general_surface(&g, 0.4).unwrap().surface;
    let segments = [
        ((0.0, 0.0), (1.0, 0.5)),
        ((0.2, 0.4), (0.9, 0.1)),
        ((0.5, 0.0), (0.5, 0.5)),
        ((0.0, 0.3), (1.0, 0.3)),
        ((0.7, 0.45), (0.1, 0.05)),
    ];
    for ((u0, v0), (u1, v1)) in segments {
        let length = |s: &dyn Surface<f64>| {
            integrate(
                |tau: f64| {
                    let (su, sv) = s.partials_at(u0 + tau * (u1 - u0), v0 + tau * (v1 - v0));
                    (su * (u1 - u0) + sv * (v1 - v0)).norm()
                },
                0.0,
                1.0,
                1e-12,
            )
        };
        let (a, b) = (length(&g), length(&d));
        assert!((a - b).abs() <= 1e-7 * a, "{a} vs {b}");
    }
}

#[test]
fn reconstruct_c_examples() {
    let d = iv(0.0, 1.0);
    let phi = F::linear(0.0, 1.0, d);
    let c = reconstruct_c(&phi, &F::constant(FRAC_PI_4, d), 2.0);
    for u in [0.0, 0.25, 1.0] {
        assert!((c.value(u) - 2.0 * u.exp()).abs() < 1e-10 * u.exp());
        assert!((c.derivative(u) - 2.0 * u.exp()).abs() < 1e-10 * u.exp());
    }
    let flat = reconstruct_c(&phi, &F::constant(0.0, d), 3.0);
    assert_eq!(flat.value(0.7), 3.0);

    let g = generic_tsurface::<f64>().unwrap();
    let (s1, s2) = (g.clone(), g.clone());
    let eta = F::custom(move |u| s1.eta(u), d);
    let again = reconstruct_c(g.phi(), &eta, 1.0);
    for u in d.samples(33) {
        assert!((again.value(u) - s2.c().value(u)).abs() <= 1e-8 * s2.c().value(u));
    }
}

#[test]
fn parallel_partners_stay_parallel() {
    let g = generic_tsurface::<f64>().unwrap();
    let partner = smooth_parallel_partner(&g, Partner::Axial).unwrap();
    // The axial partner's trajectory is xi - xi(u0).
    for u in [0.2, 0.8] {
        let expected = g.xi(u) - g.xi(0.0);
        assert!((partner.gamma(u) - expected).norm() < 1e-9);
    }
    let angle = |a: &SmoothSpec<f64>, b: &SmoothSpec<f64>| {
        grid_points(a, 10)
            .into_iter()
            .map(|(u, v)| {
                let (au, av) = a.partials_at(u, v);
                let (bu, bv) = b.partials_at(u, v);
                au.line_angle(bu).max(av.line_angle(bv))
            })
            .fold(0.0, f64::max)
    };
    assert!(angle(&g, &partner) <= 1e-8);
    let range = general_surface_range(&g);
    let pr = general_surface_range(&partner);
    assert!((range.t_min - pr.t_min).abs() < 1e-12);
    for t in interior(range.t_min, range.t_max, 3) {
        let a = deform_general_surface(&g, t).unwrap().surface;
        let b = deform_general_surface(&partner, t).unwrap().surface;
        assert!(angle(&a, &b) <= 1e-8, "t = {t}");
    }

    // The trajectory itself is a trivial partner.
    let [x, y] = g.gamma_components().clone();
    let same = smooth_parallel_partner(&g, Partner::Curve { x, y }).unwrap();
    assert!(relative_gap(&g, &same) < 1e-9);

    let d = g.u_domain();
    let bad = smooth_parallel_partner(
        &g,
        Partner::Curve {
            x: F::linear(0.0, 1.0, d),
            y: F::constant(0.0, d),
        },
    );
    assert!(matches!(bad, Err(Error::NonParallelInput { .. })));
}

#[test]
fn sampling_translational_paraboloid_is_planar() {
    let tp = translational_paraboloid(0.5).unwrap();
    for k in [1, 4, 8, 16] {
        let grid = sample_to_grid(&tp, k, k).unwrap();
        assert!(grid.planarity <= 1e-12, "{k}: {}", grid.planarity);
        assert_eq!(grid.surface.shape(), (k + 1, k + 1));
    }
}

#[test]
fn sampling_revolution_planarity_decreases() {
    let wedge = paraboloid_wedge::<f64>().unwrap();
    let coarse = sample_to_grid(&wedge, 4, 4).unwrap().planarity;
    let fine = sample_to_grid(&wedge, 8, 8).unwrap().planarity;
    // Revolution samples are in fact planar quads (isosceles trapezoids).
    assert!(coarse < 1e-12 && fine < 1e-12, "{coarse} {fine}");

    let g = generic_tsurface::<f64>().unwrap();
    let coarse = sample_to_grid(&g, 4, 4).unwrap().planarity;
    let fine = sample_to_grid(&g, 8, 8).unwrap().planarity;
    assert!(fine < coarse / 3.0, "{coarse} {fine}");
}

#[test]
fn discrete_frames_converge_to_smooth_frames() {
    let tp = translational_paraboloid(0.5).unwrap();
    let range = translational_surface_range(&tp);
    for s in [range.t_min * 0.5, range.t_max * 0.5] {
        let smooth = deform_translational_surface(&tp, s).unwrap().surface;
        let error = |k: usize| {
            let data = sample_translational(&tp, k, k).unwrap();
            let discrete = deform_translational(&data, -s).unwrap();
            let us = tp.u_domain().samples(k + 1);
            let vs = tp.v_domain().samples(k + 1);
            let mut worst = 0.0f64;
            for (i, u) in us.iter().enumerate() {
                for (j, v) in vs.iter().enumerate() {
                    let p = smooth.point_at(*u, *v) - smooth.point_at(0.0, 0.0);
                    worst = worst.max((discrete.points()[(i, j)] - p).norm());
                }
            }
            worst
        };
        let (e1, e2) = (error(8), error(16));
        let order = (e1 / e2).log2();
        assert!(order > 1.8, "s = {s}: {e1} -> {e2}, order {order}");
    }
}

#[test]
fn invalid_specs_name_their_condition() {
    let u = iv(0.0, 1.0);
    let v = iv(0.0, 1.0);
    let line = || F::linear(0.0, 1.0, u);
    let one = || F::constant(1.0, u);
    let condition = |r: Result<SmoothSpec<f64>, Error>| match r {
        Err(Error::InvalidSmooth { condition, .. }) => condition,
        other => panic!("expected InvalidSmooth, got {other:?}"),
    };
    let profile = || {
        (
            F::linear(0.0, 1.0, v),
            F::polynomial(vec![0.0, 1.0, 1.0], v),
        )
    };

    let (f, z) = profile();
    assert_eq!(
        condition(SmoothSpec::new(
            one(),
            line(),
            one(),
            line(),
            f.affine(0.5, 1.0),
            z
        )),
        1
    );
    assert_eq!(
        condition(SmoothSpec::new(
            one(),
            line(),
            one(),
            line(),
            F::linear(0.0, 1.0, v),
            F::linear(0.0, 2.0, v)
        )),
        2
    );
    assert_eq!(
        condition(SmoothSpec::new(
            one(),
            line(),
            one(),
            line(),
            F::polynomial(vec![0.0, 0.0, 1.0], v),
            F::polynomial(vec![0.0, 0.0, 0.0, 1.0], v)
        )),
        3
    );
    let (f, z) = profile();
    assert_eq!(
        condition(SmoothSpec::new(
            one(),
            F::constant(0.0, u),
            one(),
            F::constant(0.0, u),
            f,
            z
        )),
        4
    );
    let (f, z) = profile();
    assert_eq!(
        condition(SmoothSpec::new(
            one(),
            line(),
            one(),
            line().affine(1.6, 1.0),
            f,
            z
        )),
        5
    );
    let (f, z) = profile();
    assert_eq!(
        condition(SmoothSpec::new(
            one(),
            line(),
            F::linear(1.0, 1.0, u),
            line(),
            f,
            z
        )),
        6
    );
    // f = -2v meets 1 + f lambda = 0 at v = 1/2 on a unit circle.
    let (_, z) = profile();
    assert_eq!(
        condition(SmoothSpec::new(
            one(),
            line(),
            one(),
            line(),
            F::linear(0.0, -2.0, v),
            z
        )),
        6
    );
}

#[test]
fn normalization_keeps_the_surface() {
    let u = iv(0.0, 1.0);
    let v = iv(0.0, 1.0);
    let spec = SmoothSpec::new(
        F::constant(1.0, u),
        F::linear(0.0, 1.0, u),
        F::constant(2.0, u),
        F::linear(0.0, 1.0, u),
        F::linear(0.0, 0.5, v),
        F::polynomial(vec![0.0, 1.0, 1.0], v),
    )
    .unwrap();
    assert_eq!(spec.c().value(0.0), 1.0);
    assert!(
        (spec.point_at(0.5, 1.0)
            - Vec3::new(
                0.5f64.cos() - 1.0 + 0.5f64.cos(),
                0.5f64.sin() + 0.5f64.sin(),
                2.0
            ))
        .norm()
            < 1e-12
    );
}

#[test]
fn phi_sign_change_is_rejected() {
    let g = generic_tsurface::<f64>().unwrap();
    let u = g.u_domain();
    let wobble = F::polynomial(vec![0.0, 0.5, -1.0], u);
    let eta = F::constant(0.0, u);
    let spec = SmoothSpec::new(
        F::constant(1.0, u),
        wobble.clone(),
        reconstruct_c(&wobble, &eta, 1.0),
        wobble,
        g.f().clone(),
        g.z().clone(),
    )
    .unwrap();
    assert!(matches!(
        deform_general_surface(&spec, 0.1),
        Err(Error::SignChange {
            function: "phi'",
            ..
        })
    ));
}
