use proptest::prelude::*;
use qlyndon::rootsys::RootVec;
use qlyndon::words::{LoopLetter, Word};

fn l(c: usize, d: i64) -> LoopLetter {
    LoopLetter::new(c, d)
}

fn w(pairs: &[(usize, i64)]) -> Word {
    Word::from_pairs(pairs)
}

#[test]
fn letter_order_reverses_exponents() {
    // i^(d) < j^(e) iff d > e, or d = e and i < j.
    assert!(l(1, 1) < l(1, 0));
    assert!(l(2, 1) < l(1, 0));
    assert!(l(1, 0) < l(1, -1));
    assert!(l(3, 5) < l(1, 4));
    assert!(l(1, 0) < l(2, 0));
    assert!(l(1, 2) < l(2, 2));
    assert_eq!(l(2, 3), l(2, 3));
    // Sorting a mixed set: higher exponents first, colors ascending within.
    let mut v = vec![l(2, 0), l(1, -1), l(1, 1), l(1, 0), l(2, 1)];
    v.sort();
    assert_eq!(v, vec![l(1, 1), l(2, 1), l(1, 0), l(2, 0), l(1, -1)]);
}

#[test]
fn word_order_is_lex_with_prefix_rule() {
    // Prefixes come first.
    assert!(w(&[(1, 0)]) < w(&[(1, 0), (2, 0)]));
    assert!(Word::empty() < w(&[(1, 0)]));
    // First differing letter decides.
    assert!(w(&[(1, 0), (2, 0)]) < w(&[(2, 0)]));
    assert!(w(&[(1, 1), (9, 9)]) < w(&[(1, 0)]));
    // From the letter order: [2^(1) ...] < [1 ...].
    assert!(w(&[(2, 1), (1, 0)]) < w(&[(1, 0), (2, 1)]));
    assert_eq!(w(&[(1, 2)]), w(&[(1, 2)]));
}

#[test]
fn degrees_and_shift() {
    let u = w(&[(2, 1), (1, 0), (2, -3)]);
    assert_eq!(u.hdeg(3), RootVec::from_coeffs(vec![1, 2, 0]));
    assert_eq!(u.vdeg(), -2);
    assert_eq!(u.len(), 3);
    assert!(!u.is_finite());
    assert!(Word::finite(&[1, 2, 1]).is_finite());
    let s = u.shifted(2);
    assert_eq!(s, w(&[(2, 3), (1, 2), (2, -1)]));
    assert_eq!(s.vdeg(), u.vdeg() + 2 * u.len() as i64);
    assert_eq!(s.hdeg(3), u.hdeg(3));
    assert_eq!(u.shifted(0), u);
}

#[test]
fn concat_and_slice() {
    let a = w(&[(1, 0)]);
    let b = w(&[(2, 1), (3, 0)]);
    let ab = a.concat(&b);
    assert_eq!(ab, w(&[(1, 0), (2, 1), (3, 0)]));
    assert_eq!(ab.slice(1..3), b);
    assert_eq!(ab.slice(0..0), Word::empty());
}

#[test]
fn render_and_parse() {
    assert_eq!(w(&[(1, 0), (2, 0)]).render(), "[1 2]");
    assert_eq!(w(&[(2, 1), (1, 0), (2, 0)]).render(), "[2^(1) 1 2]");
    assert_eq!(w(&[(1, -2)]).render(), "[1^(-2)]");
    assert_eq!(Word::empty().render(), "[]");
    assert_eq!(Word::parse("[1 2]").unwrap(), Word::finite(&[1, 2]));
    assert_eq!(Word::parse("[2^(1) 1 2]").unwrap(), w(&[(2, 1), (1, 0), (2, 0)]));
    assert_eq!(Word::parse("[2^{(1)} 1^{(0)}]").unwrap(), w(&[(2, 1), (1, 0)]));
    assert_eq!(Word::parse(" [ ] ".trim()).unwrap(), Word::empty());
    for bad in ["1 2", "[1 2", "[0]", "[1^2]", "[1^()]", "[x]", "[1^(a)]"] {
        assert!(Word::parse(bad).is_err(), "{bad:?}");
    }
}

#[test]
fn color_validation() {
    assert!(w(&[(1, 0), (3, 2)]).validate_colors(3).is_ok());
    assert!(w(&[(1, 0), (4, 2)]).validate_colors(3).is_err());
}

fn arb_word() -> impl Strategy<Value = Word> {
    prop::collection::vec(((1usize..=4), (-5i64..=5)), 0..6).prop_map(|v| Word::from_pairs(&v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn prop_parse_render_round_trip(u in arb_word()) {
        prop_assert_eq!(Word::parse(&u.render()).unwrap(), u);
    }

    #[test]
    fn prop_order_total_and_concat_monotone(a in arb_word(), b in arb_word(), c in arb_word()) {
        // Totality / antisymmetry via std Ord; left concatenation preserves strict order
        // when neither side is a prefix of the other.
        let cmp = a.cmp(&b);
        prop_assert_eq!(b.cmp(&a), cmp.reverse());
        let is_prefix = |x: &Word, y: &Word| y.len() >= x.len() && y.slice(0..x.len()) == *x;
        if a < b && !is_prefix(&a, &b) {
            prop_assert!(c.concat(&a) < c.concat(&b));
            prop_assert!(a.concat(&c) < b.concat(&c));
        }
    }

    #[test]
    fn prop_shift_preserves_relative_order(a in arb_word(), b in arb_word(), k in -3i64..=3) {
        prop_assert_eq!(a.shifted(k).cmp(&b.shifted(k)), a.cmp(&b));
    }
}
