//! Every emitted JSON document re-parses into an equal value.

use kleinian::arithmetic::{check_integrality, kernel_certificate, orbit_module, IntegralityReport, KernelCertificate, ModuleReport, ModuleSeed};
use kleinian::catalog::{bi6_bug_config, bi6_certificate_spheres, bi6_vectors, bianchi_roots};
use kleinian::cli::export::{orbit_from_records, orbit_json, SphereRecord};
use kleinian::cli::SceneConfig;
use kleinian::forms::{reduce_to_standard, BasisChange, Covector};
use kleinian::groups::{coxeter_diagram, CoxeterDiagram, GeneratorSet};
use kleinian::orbits::{audit_with, enumerate_orbit, AuditOptions, AuditReport, OrbitEnumeration};
use kleinian::vinberg::RootList;
use serde::de::DeserializeOwned;
use serde::Serialize;

fn round_trip<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(v: &T) {
    let text = serde_json::to_string_pretty(v).unwrap();
    let back: T = serde_json::from_str(&text).unwrap();
    assert_eq!(&back, v);
}

#[test]
fn reports_round_trip() {
    let e = enumerate_orbit(&bi6_bug_config(3)).unwrap();
    round_trip::<OrbitEnumeration>(&e);
    round_trip::<IntegralityReport>(&check_integrality(&e));
    let opts = AuditOptions {
        histogram: true,
        ..AuditOptions::default()
    };
    round_trip::<AuditReport>(&audit_with(&e, &opts).unwrap());
    round_trip::<KernelCertificate>(&kernel_certificate(&bi6_certificate_spheres()).unwrap());
    round_trip::<CoxeterDiagram>(&coxeter_diagram(&bi6_vectors()).unwrap());
    let b = bianchi_roots(30).unwrap();
    round_trip::<RootList>(&b.roots);
    round_trip::<BasisChange>(&reduce_to_standard(&b.form).unwrap());
    let g = GeneratorSet::reflections(b.vectors.clone());
    round_trip::<GeneratorSet>(&g);
    round_trip::<ModuleReport>(&orbit_module(&g, &ModuleSeed::Covector(Covector::bend(2)), 2, Some(&b.basis)).unwrap());
}

#[test]
fn orbit_records_round_trip() {
    let e = enumerate_orbit(&bi6_bug_config(3)).unwrap();
    let text = orbit_json(&e);
    let records: Vec<SphereRecord> = serde_json::from_str(&text).unwrap();
    let back = orbit_from_records(records);
    assert_eq!(back.spheres, e.spheres);
    assert_eq!(orbit_json(&back), text);
}

#[test]
fn scene_config_round_trip() {
    let cfg = SceneConfig::parse(
        r#"{"bianchi": 30, "drop": [8], "bounds": {"depth": 3, "max_bend": "20*sqrt(5)"},
            "reports": ["audit"], "output": {"format": "svg", "labels": true}}"#,
    )
    .unwrap();
    let text = serde_json::to_string(&cfg).unwrap();
    assert_eq!(SceneConfig::parse(&text).unwrap(), cfg);
}
