//! The rank-4 construction at p = 3.

use std::sync::OnceLock;

use crossprod::cohomology::{cocycle_class_order, h1_invariants};
use crossprod::construction::{BuildOptions, Context, ContextError};
use crossprod::group::Subgroup;
use crossprod::int::Int;
use crossprod::linalg::FinAbInvariants;

fn context() -> &'static Context {
    static CTX: OnceLock<Context> = OnceLock::new();
    CTX.get_or_init(|| Context::build(3, BuildOptions::default()).unwrap())
}

#[test]
fn ranks() {
    assert_eq!(context().ranks(), [18, 98, 22, 120]);
    let multi = Context::build(3, BuildOptions { multiset_family: true, ..Default::default() }).unwrap();
    assert_eq!(multi.ranks(), [18, 98, 34, 132]);
    assert_eq!(multi.family().len(), 10);
}

#[test]
fn even_prime_is_rejected() {
    assert!(matches!(Context::build(2, BuildOptions::default()), Err(ContextError::EvenPrime)));
}

#[test]
fn family_and_class_orders() {
    let ctx = context();
    let g = ctx.group();
    let fam = ctx.family();
    assert_eq!(fam.len(), 6);
    assert_eq!(fam[0].subgroup, Subgroup::whole(g));
    assert_eq!(fam[0].class_order, Int::from(9));
    let h1 = Subgroup::generated_by(g, &[g.generator(0), g.generator(2), g.generator(3)]);
    let member = fam.iter().find(|f| f.subgroup == h1).unwrap();
    assert_eq!(member.class_order, Int::from(3));
    let g34 = fam.iter().find(|f| f.subgroup == ctx.g34()).unwrap();
    assert_eq!(g34.class_order, Int::from(3));
    for f in fam {
        assert_eq!(f.transversal.len() * f.subgroup.order(), g.order());
    }
}

#[test]
fn residue_values() {
    let ctx = context();
    let a2 = ctx.a2();
    assert_eq!(ctx.pi(&a2.u()).unwrap(), 1);
    assert_eq!(ctx.pi(a2.b1()).unwrap(), 0);
    assert_eq!(ctx.pi(a2.b2()).unwrap(), 0);
    let basic = ctx.commutator_u([1, 0], [0, 1]);
    let neg: Vec<Int> = a2.u().iter().map(|x| -x.clone()).collect();
    assert!(basic == a2.u() || basic == neg);
    assert!(ctx.commutator_u([2, 1], [2, 1]).iter().all(Int::is_zero));
}

#[test]
fn sign_flag_flips_the_commutator_residue() {
    let alt = Context::build(3, BuildOptions { alternate_u_sign: true, ..Default::default() }).unwrap();
    let ctx = context();
    for (m, n) in [([1, 0], [0, 1]), ([1, 2], [2, 2]), ([2, 0], [1, 1])] {
        let det = (m[0] * n[1]) as i64 - (m[1] * n[0]) as i64;
        assert_eq!(ctx.pi(&ctx.commutator_u(m, n)).unwrap() as i64, (-det).rem_euclid(3));
        assert_eq!(alt.pi(&alt.commutator_u(m, n)).unwrap() as i64, det.rem_euclid(3));
    }
}

#[test]
fn v_vanishes_at_identity() {
    let ctx = context();
    for f in ctx.family() {
        let v = ctx.v_h(&f.subgroup).unwrap();
        assert!(v.value_index(0).iter().all(Int::is_zero));
    }
}

#[test]
fn h1_rows() {
    let ctx = context();
    let g = ctx.group();
    let whole = Subgroup::whole(g);
    assert_eq!(h1_invariants(ctx.m_omega(), &whole).unwrap(), FinAbInvariants::cyclic(9));
    let s1 = Subgroup::generated_by(g, &[g.generator(0)]);
    assert!(h1_invariants(ctx.m_omega(), &s1).unwrap().is_trivial());
    assert!(h1_invariants(ctx.m(), &whole).unwrap().is_trivial());
}

#[test]
fn exponent_examples() {
    let ctx = context();
    for (i, want) in [(0, 9), (2, 3), (4, 9), (5, 3), (8, 3)] {
        let c = ctx.exponent_cocycle(i).unwrap();
        assert_eq!(cocycle_class_order(ctx.q(), &c).unwrap(), Int::from(want), "i = {i}");
    }
}

#[test]
fn explicit_chats_enter_with_positive_sign() {
    // with w = c12 - c3 - c4, the K-part of f_H is +c_hat_3 + c_hat_4
    let ctx = context();
    let g = ctx.group();
    for f in ctx.family() {
        let k3 = &ctx.q_summands()[1];
        let chat = ctx.c_hat(3, &f.subgroup, &f.class_order).unwrap();
        for (pos, &gi) in f.subgroup.element_indices().iter().enumerate() {
            let img = ctx.projections()[1].apply(&g.from_index(gi));
            assert_eq!(&f.f.values()[pos][k3.offset..k3.offset + k3.rank], chat.value(&img));
        }
    }
}

#[test]
fn alternate_omega_sign_gives_the_same_orders() {
    use crossprod::construction::OmegaVariant;
    use crossprod::report::{Status, Verifier, VerifyOptions};
    let alt = Context::build(3, BuildOptions { omega: OmegaVariant::Alternate, ..Default::default() }).unwrap();
    let v = Verifier::new(&alt, VerifyOptions { jobs: 0, sample: None });
    for id in ["h1-table", "class-order", "family-cocycles", "h1-trivial", "non-degenerate"] {
        let rec = v.run(id).unwrap();
        assert_eq!(rec.status, Status::Pass, "{id}: {}", rec.summary);
    }
}
