use num_complex::Complex64;
use qinv_core::diagram::{parse_braid, FramedLinkDiagram};
use qinv_core::invariants::{
    approx_agrees, broda, broda_float, compare, rtw, rtw_float, InvariantValue, SpecialFramedLink,
};
use qinv_core::moves::{k1_add, suite_links, suite_special_links};
use qinv_core::ring::{CyclotomicNumber, Level};
use qinv_core::skein::EvalConfig;

fn level(k: i64) -> Level {
    Level::new(k).unwrap()
}

fn equal(a: &InvariantValue, b: &InvariantValue) -> bool {
    let c = compare(a, b).unwrap();
    c.equal && !c.sign_ambiguous
}

fn integer(v: &InvariantValue, n: i64) -> bool {
    let target = InvariantValue {
        numerator: CyclotomicNumber::from_integer(&v.level.ring(), n),
        denominators: vec![],
        ..v.clone()
    };
    equal(v, &target)
}

#[test]
fn blow_ups_do_not_change_rtw() {
    let cfg = EvalConfig::default();
    for k in 3..=5 {
        let l = level(k);
        for (name, d) in suite_links() {
            let base = rtw(&d, l, &cfg).unwrap();
            for sign in [1, -1] {
                let blown = rtw(&k1_add(&d, sign), l, &cfg).unwrap();
                assert!(equal(&base, &blown), "{name} with U{sign:+} at k={k}");
            }
        }
    }
}

#[test]
fn golden_values() {
    let cfg = EvalConfig::default();
    // Σ d_n² over colors 0..k-2 at k=3 with d_0 = 1, d_1 = -1
    assert!(integer(&rtw(&FramedLinkDiagram::unknot(0), level(3), &cfg).unwrap(), 2));
    // special unknot: (Σ_all d_n²) / (Σ_even d_n²) = 2 / 1 at k=3
    let s1s3 = SpecialFramedLink::new(FramedLinkDiagram::unknot(0), &[0]).unwrap();
    assert!(integer(&broda(&s1s3, level(3), &cfg).unwrap(), 2));
    for k in 2..=6 {
        assert!(integer(&rtw(&FramedLinkDiagram::empty(), level(k), &cfg).unwrap(), 1));
        assert!(integer(&broda(&SpecialFramedLink::empty(), level(k), &cfg).unwrap(), 1));
        assert!(integer(&broda(&SpecialFramedLink::special_hopf(), level(k), &cfg).unwrap(), 1));
    }
    // a 0-framed Hopf link is S³
    for k in 3..=5 {
        assert!(integer(&rtw(&FramedLinkDiagram::hopf(0, 0), level(k), &cfg).unwrap(), 1));
        assert!(integer(&rtw(&FramedLinkDiagram::hopf(3, 0), level(k), &cfg).unwrap(), 1));
    }
}

#[test]
fn mirror_conjugates() {
    let cfg = EvalConfig::default();
    for k in 3..=5 {
        let l = level(k);
        for (name, d) in suite_links() {
            let v = rtw(&d, l, &cfg).unwrap();
            assert!(equal(&rtw(&d.mirror(), l, &cfg).unwrap(), &v.conj()), "rtw {name} k={k}");
        }
        for (name, sl) in suite_special_links() {
            let v = broda(&sl, l, &cfg).unwrap();
            let m = broda(&sl.mirror(), l, &cfg).unwrap();
            let c = compare(&m, &v.conj()).unwrap();
            assert!(c.equal, "broda {name} k={k}");
            assert!((m.approx - v.approx.conj()).norm() < 1e-9 * v.approx.norm().max(1.0));
        }
    }
}

#[test]
fn broda_is_multiplicative() {
    let cfg = EvalConfig::default();
    let links = suite_special_links();
    for k in 3..=5 {
        let l = level(k);
        for (a_name, a) in &links {
            for (b_name, b) in &links {
                let joint = broda(&a.distant_union(b), l, &cfg).unwrap();
                let product = broda(a, l, &cfg).unwrap().mul(&broda(b, l, &cfg).unwrap()).unwrap();
                let c = compare(&joint, &product).unwrap();
                assert!(c.equal && !c.sign_ambiguous, "{a_name} ⊔ {b_name} at k={k}");
                assert!(approx_agrees(joint.approx, product.approx));
            }
        }
    }
}

#[test]
fn poincare_sphere_is_a_homology_sphere_value() {
    // -1 surgery on the left trefoil; at k=3 every homology sphere has |Z| = 1
    let cfg = EvalConfig::default();
    let d = parse_braid("braid 2 : S1 S1 S1").unwrap().closure().with_framings(vec![-1]).unwrap();
    let v = rtw(&d, level(3), &cfg).unwrap();
    assert!((v.approx.norm() - 1.0).abs() < 1e-9, "{}", v.approx);
}

#[test]
fn floats_follow_the_exact_values() {
    let cfg = EvalConfig::default();
    for k in 2..=5 {
        let l = level(k);
        for (_, d) in suite_links() {
            let v = rtw(&d, l, &cfg).unwrap();
            assert!(approx_agrees(v.approx, rtw_float(&d, l, &cfg).unwrap()));
        }
        for (_, sl) in suite_special_links() {
            let v = broda(&sl, l, &cfg).unwrap();
            assert!(approx_agrees(v.approx, broda_float(&sl, l, &cfg).unwrap()));
        }
    }
    let zero = Complex64::new(0.0, 0.0);
    assert!(approx_agrees(zero, Complex64::new(1e-12, 0.0)));
    assert!(!approx_agrees(Complex64::new(1e6, 0.0), Complex64::new(1e6 + 1.0, 0.0)));
}
