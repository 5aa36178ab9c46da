//! Snapshot round trips, fingerprints and report determinism.

use std::sync::OnceLock;

use crossprod::construction::{BuildOptions, Context};
use crossprod::report::{Report, Verifier, VerifyOptions};
use crossprod::serial::{fingerprint, ContextSnapshot};

fn context() -> &'static Context {
    static CTX: OnceLock<Context> = OnceLock::new();
    CTX.get_or_init(|| Context::build(3, BuildOptions::default()).unwrap())
}

#[test]
fn snapshot_round_trip_is_exact() {
    let ctx = context();
    let snap = ContextSnapshot::of(ctx);
    let text = snap.to_json();
    let back = ContextSnapshot::from_json(&text).unwrap();
    assert_eq!(back.lattices.m, *ctx.m());
    assert_eq!(back.lattices.m_omega, *ctx.m_omega());
    assert_eq!(back.cocycles.omega, *ctx.omega());
    assert_eq!(back.cocycles.c12, *ctx.c12());
    assert_eq!(back.to_json(), text);
    assert_eq!(back.ranks.m, 120);
}

#[test]
fn fingerprints_are_stable_and_sensitive() {
    let ctx = context();
    let again = Context::build(3, BuildOptions::default()).unwrap();
    assert_eq!(fingerprint(ctx), fingerprint(&again));
    let alt = Context::build(3, BuildOptions { alternate_u_sign: true, ..Default::default() }).unwrap();
    assert_ne!(fingerprint(ctx), fingerprint(&alt));
    assert_eq!(fingerprint(ctx).len(), 64);
}

#[test]
fn integers_are_strings_and_keys_sorted() {
    let text = ContextSnapshot::of(context()).to_json();
    let head: String = text.lines().take(40).collect::<Vec<_>>().join("\n");
    assert!(text.starts_with("{\n  \"cocycles\""), "{head}");
    assert!(text.contains("\"class_order\": \"9\""));
}

#[test]
fn tampered_action_is_rejected() {
    let text = ContextSnapshot::of(context()).to_json();
    let mut value: serde_json::Value = serde_json::from_str(&text).unwrap();
    // break one generator matrix of M so the action no longer has order p
    let data = &mut value["lattices"]["m"]["actions"][0]["data"];
    data[1] = serde_json::Value::String("7".into());
    let broken = serde_json::to_string(&value).unwrap();
    assert!(ContextSnapshot::from_json(&broken).is_err());
}

#[test]
fn report_is_independent_of_thread_count() {
    let ctx = context();
    let ids = ["h1-table", "exponent-table", "non-degenerate"];
    let render = |jobs| {
        let v = Verifier::new(ctx, VerifyOptions { jobs, sample: None });
        let checks = ids.iter().map(|id| v.run(id).unwrap()).collect();
        Report::new(ctx, fingerprint(ctx), checks).to_json()
    };
    assert_eq!(render(1), render(3));
}
