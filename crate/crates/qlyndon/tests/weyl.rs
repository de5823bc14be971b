use qlyndon::lyndon::LoopLyndon;
use qlyndon::rootsys::{CartanType, RootSystem, RootVec};
use qlyndon::weyl::AffineWeyl;

fn system(label: &str) -> RootSystem {
    RootSystem::new(CartanType::parse(label).unwrap()).unwrap()
}

fn rv(coeffs: &[i64]) -> RootVec {
    RootVec::from_coeffs(coeffs.to_vec())
}

#[test]
fn a2_inversion_order_and_word() {
    let rs = system("A2");
    let dict = LoopLyndon::new(&rs);
    let weyl = AffineWeyl::new(&dict).unwrap();

    assert_eq!(weyl.length(), 4);
    // β₀, β₋₁, β₋₂, β₋₃ in decreasing loop order.
    assert_eq!(weyl.beta(0), (rv(&[1, 0]), 0));
    assert_eq!(weyl.beta(-1), (rv(&[1, 1]), 0));
    assert_eq!(weyl.beta(-2), (rv(&[0, 1]), 0));
    assert_eq!(weyl.beta(-3), (rv(&[1, 1]), 1));
    assert_eq!(weyl.reduced_word(), &[1, 2, 1, 0]);
    assert_eq!(weyl.twist(), &[0, 1, 2]);
}

#[test]
fn a2_beta_sequence_values() {
    let rs = system("A2");
    let dict = LoopLyndon::new(&rs);
    let weyl = AffineWeyl::new(&dict).unwrap();

    assert_eq!(weyl.beta(1), (rv(&[1, 1]), -1));
    assert_eq!(weyl.beta(2), (rv(&[0, 1]), -1));
    assert_eq!(weyl.beta(3), (rv(&[1, 1]), -2));
    assert_eq!(weyl.beta(4), (rv(&[1, 0]), -1));
    assert_eq!(weyl.beta(-4), (rv(&[1, 0]), 1));
    for k in [1, 2, 3, 4, -4] {
        assert_eq!(weyl.beta(k), weyl.beta_by_recursion(k), "β_{k}");
    }
}

#[test]
fn letters_repeat_through_the_twist() {
    for label in ["A2", "A3", "B2", "C2", "G2"] {
        let rs = system(label);
        let dict = LoopLyndon::new(&rs);
        let weyl = AffineWeyl::new(&dict).unwrap();
        let l = weyl.length() as i64;
        for k in -30..30 {
            let i = weyl.letter(k);
            assert_eq!(weyl.letter(k + l), weyl.twist()[i], "{label} letter {k}");
        }
    }
}

#[test]
fn affine_reflections_are_involutions() {
    let rs = system("B2");
    let dict = LoopLyndon::new(&rs);
    let weyl = AffineWeyl::new(&dict).unwrap();
    for i in 0..=rs.rank() {
        for alpha in rs.positive_roots() {
            for d in -2..=2 {
                let x = (alpha.clone(), d);
                assert_eq!(weyl.reflect(i, &weyl.reflect(i, &x)), x);
            }
        }
    }
}

#[test]
fn translation_commutes_with_finite_reflections() {
    let rs = system("A3");
    let dict = LoopLyndon::new(&rs);
    let weyl = AffineWeyl::new(&dict).unwrap();
    for i in 1..=rs.rank() {
        for alpha in rs.positive_roots() {
            let x = (alpha.clone(), 0);
            let a = weyl.translate(&weyl.reflect(i, &x));
            let b = weyl.reflect(i, &weyl.translate(&x));
            // s_i ∘ t_{ρ∨} ∘ s_i = t_{s_i ρ∨}, so the two orders differ in level
            // by exactly |λ| − |s_i λ|.
            let lam = &weyl.reflect(i, &x).0;
            assert_eq!(a.0, b.0);
            assert_eq!(a.1 - b.1, x.0.height() - lam.height());
        }
    }
}

#[test]
fn sequence_sweeps_pass() {
    for label in ["A2", "A3", "B2"] {
        let rs = system(label);
        let dict = LoopLyndon::new(&rs);
        let weyl = AffineWeyl::new(&dict).unwrap();
        let cases = weyl.verify_sequence(50).unwrap();
        assert!(cases > 200, "{label}: only {cases} cases");
    }
}

#[test]
fn twist_permutes_the_affine_diagram() {
    for label in ["A2", "A3", "A4", "B2", "B3", "C2", "C3", "D4", "G2"] {
        let rs = system(label);
        let dict = LoopLyndon::new(&rs);
        let weyl = AffineWeyl::new(&dict).unwrap();
        let sigma = weyl.twist();
        let mut sorted: Vec<usize> = sigma.to_vec();
        sorted.sort();
        assert_eq!(sorted, (0..=rs.rank()).collect::<Vec<_>>(), "{label}");
        // τ itself fixes every affine simple root's image under σ.
        for i in 0..=rs.rank() {
            assert_eq!(
                weyl.tau(&weyl.affine_simple(i)),
                weyl.affine_simple(sigma[i]),
                "{label} node {i}"
            );
        }
    }
}
