//! Acceptance criteria for the T-hedron and T-surface library, one PASS/FAIL line each.
//!
//! Run with `cargo test -p thedra-workbench --test acceptance -- --nocapture`.

mod common;

use common::designs::{
    interior_samples, random_design, random_design_with, random_revolution, random_translational,
    rng,
};
use common::golden_path;
use thedra::smooth::presets::{paraboloid_wedge, translational_paraboloid};
use thedra::smooth::{
    axial_surface_range, deform_axial_surface, deform_translational_surface, sample_to_grid,
    sample_translational, translational_surface_range, Interval, ScalarFunction, Surface,
    TranslationalSpec,
};
use thedra::{
    axial_residual, build_thedron, check_isometric, deform, deform_axial, deform_molding,
    deform_revolution, deform_translational, dihedral_angles, exponential_to_additive, is_parallel,
    miura_data, miura_dimensions, miura_flat_parameters, parallel_axial, parameter_range,
    planarity, translational_parameter_range, AxialDesign, THedron, Vec3,
};
use thedra_workbench::document::miura_document;
use thedra_workbench::{surface_at, to_obj, DesignDocument};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fail<E: std::fmt::Debug>(context: &str) -> impl FnOnce(E) -> String + '_ {
    move |e| format!("{context}: {e:?}")
}

/// Largest vertex distance after moving both `(0, 0)` vertices to the origin.
fn gap_after_alignment(a: &THedron<f64>, b: &THedron<f64>) -> f64 {
    let (oa, ob) = (a.points()[(0, 0)], b.points()[(0, 0)]);
    a.points()
        .iter()
        .zip(b.points().iter())
        .map(|(p, q)| ((*p - oa) - (*q - ob)).norm())
        .fold(0.0, f64::max)
}

/// Largest `|I^t - I| / max(E, G)` over the midpoints of a `k x k` partition.
fn metric_drift(a: &dyn Surface<f64>, b: &dyn Surface<f64>, k: usize) -> Result<f64, String> {
    let (ud, vd) = (a.u_domain(), a.v_domain());
    let mut worst = 0.0f64;
    for i in 0..k {
        for j in 0..k {
            let u = ud.lo + ud.length() * (i as f64 + 0.5) / k as f64;
            let v = vd.lo + vd.length() * (j as f64 + 0.5) / k as f64;
            let (au, av) = a.partials_at(u, v);
            let (bu, bv) = b.partials_at(u, v);
            let (e, f, g) = (au.dot(au), au.dot(av), av.dot(av));
            let (e1, f1, g1) = (bu.dot(bu), bu.dot(bv), bv.dot(bv));
            let diff = (e - e1).abs().max((f - f1).abs()).max((g - g1).abs());
            worst = worst.max(diff / e.max(g));
        }
    }
    ensure(worst.is_finite(), || "non-finite metric".into())?;
    Ok(worst)
}

fn isometry_suite() -> Outcome {
    let mut r = rng(2024);
    for k in 0..20 {
        let d = random_design(&mut r, 8, 8);
        let base = build_thedron(&d).map_err(fail("build"))?;
        let range = parameter_range(&d).map_err(fail("range"))?;
        for t in interior_samples(range.t_min, range.t_max, 10, 2.0) {
            let s = deform(&d, t).map_err(fail("deform"))?;
            let rep = check_isometric(&base, &s, 1e-9).map_err(fail("isometry"))?;
            ensure(rep.pass, || format!("design {k}, t = {t}: {rep:?}"))?;
            let p = planarity(&s);
            ensure(p <= 1e-9, || format!("design {k}, t = {t}: planarity {p}"))?;
        }
    }
    Ok(())
}

fn identity() -> Outcome {
    let mut r = rng(7);
    for k in 0..20 {
        let d = random_design(&mut r, 8, 8);
        let built = build_thedron(&d).map_err(fail("build"))?;
        let zero = deform(&d, 0.0).map_err(fail("deform"))?;
        let dev = built.max_deviation(&zero).map_err(fail("deviation"))?;
        let tol = 1e-12 * built.bbox_diagonal();
        ensure(dev <= tol, || format!("design {k}: {dev} > {tol}"))?;
    }
    Ok(())
}

fn non_triviality() -> Outcome {
    let mut r = rng(11);
    for k in 0..20 {
        let d = random_design(&mut r, 8, 8);
        let range = parameter_range(&d).map_err(fail("range"))?;
        let t = range.t_max.min(2.0) / 2.0;
        let a =
            dihedral_angles(&deform(&d, 0.0).map_err(fail("deform"))?).map_err(fail("angles"))?;
        let b = dihedral_angles(&deform(&d, t).map_err(fail("deform"))?).map_err(fail("angles"))?;
        let change = a.max_difference(&b);
        ensure(change > 1e-6, || {
            format!("design {k}: dihedral change {change}")
        })?;
    }
    Ok(())
}

fn miura_flat_states() -> Outcome {
    let (t_minus, t_plus) = miura_flat_parameters(1.0, 1.0, 1.0, 1.0);
    let expected = 2f64.sqrt().ln();
    ensure((t_plus - expected).abs() <= 1e-12, || {
        format!("t+ = {t_plus}")
    })?;
    ensure((t_minus + expected).abs() <= 1e-12, || {
        format!("t- = {t_minus}")
    })?;
    let data = miura_data(1.0, 1.0, 1.0, 1.0, 4, 4).map_err(fail("data"))?;
    let flat = deform_translational(&data, t_plus).map_err(fail("deform"))?;
    for j in (1..flat.points().cols()).step_by(2) {
        for i in 0..flat.points().rows() {
            let z = flat.points()[(i, j)].z;
            ensure(z.abs() <= 1e-12, || format!("height at ({i}, {j}) = {z}"))?;
        }
    }
    let dims = miura_dimensions(1.0, 1.0, 1.0, 1.0, t_plus);
    for (name, got, want) in [
        ("a", dims.a, 2f64.sqrt()),
        ("b", dims.b, 1.5f64.sqrt()),
        ("c", dims.c, 0.5f64.sqrt()),
    ] {
        ensure((got - want).abs() <= 1e-12, || {
            format!("{name} = {got}, expected {want}")
        })?;
    }
    Ok(())
}

fn specialization_agreement() -> Outcome {
    let mut r = rng(13);
    let within =
        |what: &str, t: f64, a: &THedron<f64>, b: &THedron<f64>, aligned: bool| -> Outcome {
            let dev = if aligned {
                gap_after_alignment(a, b)
            } else {
                a.max_deviation(b).map_err(fail("deviation"))?
            };
            ensure(dev <= 1e-9, || format!("{what} at t = {t}: {dev}"))
        };
    for _ in 0..10 {
        let data = random_translational(&mut r, 4, 4);
        let d = data.to_design().map_err(fail("design"))?;
        let range = translational_parameter_range(&data);
        for s in interior_samples(range.t_min, range.t_max, 3, 1.0) {
            let a = deform_translational(&data, s).map_err(fail("translational"))?;
            let b = deform(&d, exponential_to_additive(s)).map_err(fail("general"))?;
            within("translational", s, &a, &b, false)?;
        }

        let d = random_design_with(&mut r, 4, 4, true);
        let range = parameter_range(&d).map_err(fail("range"))?;
        for t in interior_samples(range.t_min, range.t_max, 3, 2.0) {
            let a = deform_molding(&d, t).map_err(fail("molding"))?;
            let b = deform(&d, t).map_err(fail("general"))?;
            within("molding", t, &a, &b, false)?;
        }

        // The axial deformation fixes the axis, the general one fixes tau_00.
        let p = parallel_axial(&random_design(&mut r, 5, 5)).map_err(fail("partner"))?;
        let axial = AxialDesign::from_design(&p, 1e-9).map_err(fail("axial data"))?;
        let range = parameter_range(&p).map_err(fail("range"))?;
        for t in interior_samples(range.t_min, range.t_max, 3, 2.0) {
            let a = deform_axial(&axial, t).map_err(fail("axial"))?;
            let b = deform(&p, t).map_err(fail("general"))?;
            within("axial", t, &a, &b, true)?;
        }

        let rev = random_revolution(&mut r, 4, 4);
        let axial = rev.to_axial().map_err(fail("to_axial"))?;
        let d = axial.to_design().map_err(fail("design"))?;
        let range = parameter_range(&d).map_err(fail("range"))?;
        for t in interior_samples(range.t_min, range.t_max, 3, 2.0) {
            let a = deform_revolution(&rev, t).map_err(fail("revolution"))?;
            let b = deform(&d, t).map_err(fail("general"))?;
            within("revolution", t, &a, &b, true)?;
            let c = deform_axial(&axial, t).map_err(fail("axial"))?;
            within("revolution vs axial", t, &a, &c, false)?;
        }
    }
    Ok(())
}

fn parallel_pairs() -> Outcome {
    let mut r = rng(17);
    for k in 0..10 {
        let d = random_design(&mut r, 6, 5);
        let p = parallel_axial(&d).map_err(fail("partner"))?;
        let res = axial_residual(&p).map_err(fail("residual"))?;
        ensure(res <= 1e-12, || format!("design {k}: axial residual {res}"))?;
        let range = parameter_range(&d).map_err(fail("range"))?;
        for t in interior_samples(range.t_min, range.t_max, 10, 2.0) {
            let a = deform(&d, t).map_err(fail("deform"))?;
            let b = deform(&p, t).map_err(fail("deform partner"))?;
            let ok = is_parallel(&a, &b, 1e-9).map_err(fail("parallel"))?;
            ensure(ok, || format!("design {k}, t = {t}: not parallel"))?;
        }
    }
    Ok(())
}

fn smooth_metric_invariance() -> Outcome {
    let wedge = paraboloid_wedge::<f64>().map_err(fail("wedge"))?;
    let range = axial_surface_range(&wedge);
    for t in [-0.9, -0.5, -0.1, 0.02, range.t_max] {
        let out = deform_axial_surface(&wedge, t).map_err(fail("wedge deform"))?;
        let drift = metric_drift(&wedge, &out.surface, 20)?;
        ensure(drift <= 1e-8, || format!("wedge t = {t}: drift {drift}"))?;
    }
    let tp = translational_paraboloid(0.5).map_err(fail("paraboloid"))?;
    let range = translational_surface_range(&tp);
    let mut samples = interior_samples(range.t_min, range.t_max, 3, 1.0);
    samples.extend([range.t_min, range.t_max]);
    for s in samples {
        let out = deform_translational_surface(&tp, s).map_err(fail("paraboloid deform"))?;
        let drift = metric_drift(&tp, &out.surface, 20)?;
        ensure(drift <= 1e-8, || {
            format!("paraboloid s = {s}: drift {drift}")
        })?;
    }

    // z' vanishes at v = 1/4: only one direction is admissible.
    let domain = Interval::new(0.0, 0.5).map_err(fail("interval"))?;
    let spec = TranslationalSpec::new(
        ScalarFunction::polynomial(vec![0.0, 0.0, 1.0], domain),
        ScalarFunction::linear(0.0, 1.0, domain),
        ScalarFunction::linear(0.0, 1.0, domain),
        ScalarFunction::polynomial(vec![0.0625, -0.5, 1.0], domain),
    )
    .map_err(fail("one-sided spec"))?;
    ensure(deform_translational_surface(&spec, -0.1).is_err(), || {
        "one-sided surface deformed in the forbidden direction".into()
    })?;
    let ok = deform_translational_surface(&spec, 0.1).map_err(fail("one-sided deform"))?;
    let drift = metric_drift(&spec, &ok.surface, 20)?;
    ensure(drift <= 1e-8, || format!("one-sided drift {drift}"))
}

fn smooth_discrete_consistency() -> Outcome {
    let tp = translational_paraboloid(0.5).map_err(fail("paraboloid"))?;
    for k in [4, 8, 16] {
        let grid = sample_to_grid(&tp, k, k).map_err(fail("sample"))?;
        ensure(grid.planarity <= 1e-12, || {
            format!("{k}x{k}: planarity {}", grid.planarity)
        })?;
    }
    let range = translational_surface_range(&tp);
    for s in [range.t_min * 0.5, range.t_max * 0.5] {
        let smooth = deform_translational_surface(&tp, s)
            .map_err(fail("smooth"))?
            .surface;
        let origin = smooth.point_at(tp.u_domain().lo, tp.v_domain().lo);
        let error = |k: usize| -> Result<f64, String> {
            let data = sample_translational(&tp, k, k).map_err(fail("sample"))?;
            // The discrete and smooth exponential parameters have opposite orientation.
            let discrete = deform_translational(&data, -s).map_err(fail("discrete"))?;
            let us = tp.u_domain().samples(k + 1);
            let vs = tp.v_domain().samples(k + 1);
            let mut worst = 0.0f64;
            for (i, u) in us.iter().enumerate() {
                for (j, v) in vs.iter().enumerate() {
                    let p: Vec3<f64> = smooth.point_at(*u, *v) - origin;
                    worst = worst.max((discrete.points()[(i, j)] - p).norm());
                }
            }
            Ok(worst)
        };
        let (coarse, fine) = (error(8)?, error(16)?);
        let order = (coarse / fine).log2();
        ensure(order > 1.8, || {
            format!("s = {s}: {coarse} -> {fine}, order {order}")
        })?;
    }
    Ok(())
}

fn format_determinism() -> Outcome {
    let read = |name: &str| std::fs::read_to_string(golden_path(name)).map_err(fail("golden"));
    let (json, obj) = (read("miura_1111.json")?, read("miura_1111.obj")?);
    for _ in 0..2 {
        let doc = miura_document(1.0, 1.0, 1.0, 1.0, 3, 3).map_err(fail("document"))?;
        ensure(doc.to_json() == json, || "JSON differs from golden".into())?;
        let reloaded = DesignDocument::from_json(&json).map_err(fail("load"))?;
        ensure(reloaded.to_json() == json, || {
            "JSON round trip differs".into()
        })?;
        let model = reloaded.model().map_err(fail("model"))?;
        let surface = surface_at(&model, 0.0, 0).map_err(fail("surface"))?;
        ensure(to_obj(&surface) == obj, || "OBJ differs from golden".into())?;
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        ("isometry_suite", isometry_suite),
        ("identity", identity),
        ("non_triviality", non_triviality),
        ("miura_flat_states", miura_flat_states),
        ("specialization_agreement", specialization_agreement),
        ("parallel_pairs", parallel_pairs),
        ("smooth_metric_invariance", smooth_metric_invariance),
        ("smooth_discrete_consistency", smooth_discrete_consistency),
        ("format_determinism", format_determinism),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        match check() {
            Ok(()) => println!("PASS {name}"),
            Err(reason) => {
                println!("FAIL {name}: {reason}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
