mod common;

use common::designs::{random_design, rng};
use proptest::prelude::*;
use thedra_workbench::document::{
    miura_document, smooth_preset, DiscretePayload, FunctionDoc, SmoothPayload, SMOOTH_PRESETS,
};
use thedra_workbench::{DesignDocument, Error, Model, Payload};

fn violations(r: Result<DesignDocument, Error>) -> Vec<(String, String)> {
    match r {
        Err(Error::InvariantViolation(v)) => v.into_iter().map(|v| (v.path, v.code)).collect(),
        other => panic!("expected an invariant violation, got {other:?}"),
    }
}

fn schema_path(r: Result<DesignDocument, Error>) -> String {
    match r {
        Err(Error::SchemaViolation(v)) => v.path,
        other => panic!("expected a schema violation, got {other:?}"),
    }
}

fn miura_json() -> serde_json::Value {
    serde_json::from_str(&miura_document(1.0, 1.0, 1.0, 1.0, 3, 3).unwrap().to_json()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn discrete_documents_round_trip_bit_identically(seed in any::<u64>()) {
        let design = random_design(&mut rng(seed), 8, 8);
        let doc = DesignDocument::discrete(&design, "random");
        let back = DesignDocument::from_json(&doc.to_json()).unwrap();
        prop_assert_eq!(&back, &doc);
        let Model::Discrete(d) = back.model().unwrap() else { panic!("kind") };
        for (a, b) in d.phi.iter().chain(&d.psi).chain(&d.f0).chain(&d.g0).chain(&d.z).zip(
            design.phi.iter().chain(&design.psi).chain(&design.f0).chain(&design.g0).chain(&design.z),
        ) {
            prop_assert_eq!(a.to_bits(), b.to_bits());
        }
    }
}

#[test]
fn save_then_load() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("miura.json");
    let doc = miura_document(1.0, 1.0, 1.0, 1.0, 3, 3).unwrap();
    doc.save(&path).unwrap();
    assert_eq!(DesignDocument::load(&path).unwrap(), doc);
    for name in SMOOTH_PRESETS {
        let doc = smooth_preset(name).unwrap();
        doc.save(&path).unwrap();
        let back = DesignDocument::load(&path).unwrap();
        assert_eq!(back, doc);
        assert!(matches!(back.model().unwrap(), Model::Smooth(_)));
    }
}

#[test]
fn repeated_heights_point_at_the_offending_entry() {
    let mut v = miura_json();
    v["payload"]["z"] = serde_json::json!([0.0, 1.0, 1.0, 2.0]);
    let r = DesignDocument::from_json(&v.to_string());
    assert_eq!(
        violations(r),
        vec![("payload.z[2]".to_string(), "DegenerateHeights".to_string())]
    );
}

#[test]
fn invariant_paths() {
    let cases: Vec<(&str, serde_json::Value, &str)> = vec![
        ("psi", serde_json::json!([1.8, 0.0, 0.0]), "payload.psi[0]"),
        ("phi", serde_json::json!([0.0, 2.5, 0.0]), "payload.phi[1]"),
        ("g0", serde_json::json!([1.0, 0.0, 1.0]), "payload.g0[1]"),
        ("z", serde_json::json!([0.5, 1.0, 0.0, 1.0]), "payload.z[0]"),
        ("z", serde_json::json!([0.0, 1.0, 0.0]), "payload.z"),
        ("f0", serde_json::json!([1.0, 1.0]), "payload.f0"),
    ];
    for (field, value, path) in cases {
        let mut v = miura_json();
        v["payload"][field] = value;
        let found = violations(DesignDocument::from_json(&v.to_string()));
        assert!(found.iter().any(|(p, _)| p == path), "{field}: {found:?}");
    }
    let mut v = miura_json();
    v["payload"]["m"] = serde_json::json!(4);
    let found = violations(DesignDocument::from_json(&v.to_string()));
    assert_eq!(
        found.len(),
        3,
        "phi, psi and g0 have the wrong length: {found:?}"
    );
}

#[test]
fn schema_paths() {
    let mut v = miura_json();
    v["payload"]["z"][1] = serde_json::json!("high");
    assert_eq!(
        schema_path(DesignDocument::from_json(&v.to_string())),
        "payload.z[1]"
    );

    let mut v = miura_json();
    v["payload"]["extra"] = serde_json::json!(1);
    assert_eq!(
        schema_path(DesignDocument::from_json(&v.to_string())),
        "payload.extra"
    );

    let mut v = miura_json();
    v["schema_version"] = serde_json::json!(2);
    assert_eq!(
        schema_path(DesignDocument::from_json(&v.to_string())),
        "schema_version"
    );

    let mut v = miura_json();
    v["kind"] = serde_json::json!("mesh");
    assert_eq!(
        schema_path(DesignDocument::from_json(&v.to_string())),
        "kind"
    );

    assert_eq!(schema_path(DesignDocument::from_json("[1, 2]")), "document");
    assert!(matches!(
        DesignDocument::from_json("{ not json"),
        Err(Error::SchemaViolation(_))
    ));
}

#[test]
fn smooth_schema_and_invariant_paths() {
    let base: serde_json::Value =
        serde_json::from_str(&smooth_preset("paraboloid-wedge").unwrap().to_json()).unwrap();

    let mut v = base.clone();
    v["payload"]["f"]["domain"] = serde_json::json!([1.0, 0.1]);
    assert_eq!(
        violations(DesignDocument::from_json(&v.to_string())),
        vec![(
            "payload.f.domain".to_string(),
            "InvalidFunction".to_string()
        )]
    );

    let mut v = base.clone();
    v["payload"]["z"] =
        serde_json::json!({"type": "sampled", "domain": [0.1, 1.0], "values": [0.0, 1.0]});
    assert_eq!(
        violations(DesignDocument::from_json(&v.to_string()))[0].0,
        "payload.z.values"
    );

    // A straight profile violates the independence of f and z.
    let mut v = base.clone();
    v["payload"]["z"] =
        serde_json::json!({"type": "polynomial", "domain": [0.1, 1.0], "coefficients": [0.0, 2.0]});
    assert_eq!(
        violations(DesignDocument::from_json(&v.to_string())),
        vec![("payload.f".to_string(), "InvalidSmooth".to_string())]
    );

    let mut v = base.clone();
    v["payload"]["class"] = serde_json::json!("helix");
    assert_eq!(
        schema_path(DesignDocument::from_json(&v.to_string())),
        "payload.class"
    );

    let mut v = base.clone();
    v["payload"]["x"] = v["payload"]["f"].clone();
    assert_eq!(
        schema_path(DesignDocument::from_json(&v.to_string())),
        "payload.x"
    );

    let mut v = base;
    v["payload"]["phi"] = serde_json::json!({"type": "polynomial"});
    assert_eq!(
        schema_path(DesignDocument::from_json(&v.to_string())),
        "payload.phi"
    );
}

#[test]
fn sampled_functions_keep_full_precision() {
    let values: Vec<f64> = (0..33)
        .map(|k| (k as f64 * 0.37).sin() / 3.0 + k as f64 * 0.1)
        .collect();
    let doc = DesignDocument::smooth(
        SmoothPayload::Translational {
            x: FunctionDoc::polynomial(&[0.0, 0.0, 1.0], 0.0, 0.5),
            y: FunctionDoc::polynomial(&[0.0, 1.0], 0.0, 0.5),
            f: FunctionDoc::polynomial(&[0.0, 0.0, 1.0], 0.0, 0.5),
            z: FunctionDoc::Sampled {
                domain: [0.0, 0.5],
                values: values.clone(),
            },
        },
        "sampled",
    );
    let back = DesignDocument::from_json(&doc.to_json()).unwrap();
    let Payload::Smooth(SmoothPayload::Translational {
        z: FunctionDoc::Sampled { values: read, .. },
        ..
    }) = &back.payload
    else {
        panic!("payload shape");
    };
    assert!(read
        .iter()
        .zip(&values)
        .all(|(a, b)| a.to_bits() == b.to_bits()));
}

#[test]
fn molding_class_is_checked() {
    let mut v: serde_json::Value =
        serde_json::from_str(&smooth_preset("circular-molding").unwrap().to_json()).unwrap();
    v["payload"]["c"] =
        serde_json::json!({"type": "polynomial", "domain": [0.0, 1.0], "coefficients": [1.0, 0.2]});
    // c is no longer constant: the data are not even compatible.
    let found = violations(DesignDocument::from_json(&v.to_string()));
    assert_eq!(found[0].0, "payload.c");
}

#[test]
fn discrete_payload_field_order_is_the_schema_order() {
    let text = miura_document(1.0, 1.0, 1.0, 1.0, 2, 2).unwrap().to_json();
    let keys = [
        "\"m\"", "\"n\"", "\"phi\"", "\"psi\"", "\"f0\"", "\"g0\"", "\"z\"",
    ];
    let positions: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "{text}");
    let p: DiscretePayload = serde_json::from_value(
        serde_json::from_str::<serde_json::Value>(&text).unwrap()["payload"].clone(),
    )
    .unwrap();
    assert_eq!((p.m, p.n), (2, 2));
}
