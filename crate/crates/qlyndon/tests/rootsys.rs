use qlyndon::rootsys::{CartanType, RootSystem, RootVec};

fn sys(label: &str) -> RootSystem {
    RootSystem::new(CartanType::parse(label).unwrap()).unwrap()
}

fn rv(coeffs: &[i64]) -> RootVec {
    RootVec::from_coeffs(coeffs.to_vec())
}

#[test]
fn rank_validation() {
    for ok in ["A1", "A7", "B2", "C2", "D4", "E6", "E7", "E8", "F4", "G2", "b3", "g2"] {
        assert!(CartanType::parse(ok).is_ok(), "{ok} should parse");
    }
    for bad in ["A0", "B1", "C1", "D3", "D2", "E5", "E9", "F3", "F5", "G3", "G1", "H3", "B", "2"] {
        assert!(CartanType::parse(bad).is_err(), "{bad} should be rejected");
    }
    assert_eq!(CartanType::parse("E7").unwrap().rank(), 7);
    assert_eq!(CartanType::parse("A5").unwrap().to_string(), "A5");
}

#[test]
fn positive_root_counts() {
    let counts = [
        ("A1", 1),
        ("A2", 3),
        ("A3", 6),
        ("A4", 10),
        ("A5", 15),
        ("A6", 21),
        ("B2", 4),
        ("B3", 9),
        ("B4", 16),
        ("B5", 25),
        ("C2", 4),
        ("C3", 9),
        ("C4", 16),
        ("C5", 25),
        ("D4", 12),
        ("D5", 20),
        ("E6", 36),
        ("E7", 63),
        ("E8", 120),
        ("F4", 24),
        ("G2", 6),
    ];
    for (label, want) in counts {
        assert_eq!(sys(label).num_positive_roots(), want, "{label}");
    }
}

#[test]
fn highest_roots() {
    let cases: [(&str, &[i64]); 10] = [
        ("A2", &[1, 1]),
        ("A4", &[1, 1, 1, 1]),
        ("B2", &[1, 2]),
        ("B4", &[1, 2, 2, 2]),
        ("C2", &[2, 1]),
        ("C4", &[2, 2, 2, 1]),
        ("D4", &[1, 2, 1, 1]),
        ("E6", &[1, 2, 2, 3, 2, 1]),
        ("F4", &[2, 3, 4, 2]),
        ("G2", &[3, 2]),
    ];
    for (label, want) in cases {
        let s = sys(label);
        assert_eq!(s.theta(), &rv(want), "{label}");
        // θ dominates every positive root componentwise.
        for a in s.positive_roots() {
            assert!(s.theta().dominates(a), "{label}: θ !>= {a}");
        }
    }
}

#[test]
fn small_systems_explicit() {
    let a2 = sys("A2");
    assert_eq!(a2.positive_roots(), &[rv(&[0, 1]), rv(&[1, 0]), rv(&[1, 1])]);
    let b2 = sys("B2");
    assert_eq!(
        b2.positive_roots(),
        &[rv(&[0, 1]), rv(&[1, 0]), rv(&[1, 1]), rv(&[1, 2])]
    );
    let g2 = sys("G2");
    assert_eq!(
        g2.positive_roots(),
        &[
            rv(&[0, 1]),
            rv(&[1, 0]),
            rv(&[1, 1]),
            rv(&[2, 1]),
            rv(&[3, 1]),
            rv(&[3, 2])
        ]
    );
}

#[test]
fn cartan_matrices() {
    let b2 = sys("B2");
    assert_eq!([b2.cartan(1, 1), b2.cartan(1, 2), b2.cartan(2, 1), b2.cartan(2, 2)], [2, -1, -2, 2]);
    assert_eq!([b2.d(1), b2.d(2)], [2, 1]);
    let c2 = sys("C2");
    assert_eq!([c2.cartan(1, 2), c2.cartan(2, 1)], [-2, -1]);
    assert_eq!([c2.d(1), c2.d(2)], [1, 2]);
    let g2 = sys("G2");
    assert_eq!([g2.cartan(1, 2), g2.cartan(2, 1)], [-3, -1]);
    let f4 = sys("F4");
    let want = [
        [2, -1, 0, 0],
        [-1, 2, -1, 0],
        [0, -2, 2, -1],
        [0, 0, -1, 2],
    ];
    for i in 1..=4 {
        for j in 1..=4 {
            assert_eq!(f4.cartan(i, j), want[i - 1][j - 1], "F4 a_{i}{j}");
        }
    }
    // Gram symmetry and diagonal 2d_i, for a mix of types.
    for label in ["A3", "B3", "C3", "D4", "F4", "G2", "E6"] {
        let s = sys(label);
        for i in 1..=s.rank() {
            assert_eq!(s.sym_colors(i, i), 2 * s.d(i), "{label}");
            for j in 1..=s.rank() {
                assert_eq!(s.sym_colors(i, j), s.sym_colors(j, i), "{label}");
            }
        }
    }
}

#[test]
fn reflections_permute_positive_roots() {
    for label in ["A3", "B3", "C3", "D4", "G2", "F4"] {
        let s = sys(label);
        for i in 1..=s.rank() {
            let alpha_i = RootVec::simple(s.rank(), i);
            assert_eq!(s.reflect_simple(i, &alpha_i), -&alpha_i);
            let mut image: Vec<RootVec> = s
                .positive_roots()
                .iter()
                .filter(|r| **r != alpha_i)
                .map(|r| s.reflect_simple(i, r))
                .collect();
            image.sort();
            let mut rest: Vec<RootVec> = s
                .positive_roots()
                .iter()
                .filter(|r| **r != alpha_i)
                .cloned()
                .collect();
            rest.sort();
            assert_eq!(image, rest, "{label}: s_{i} must permute Δ+ \\ {{α_{i}}}");
            for r in s.positive_roots() {
                assert_eq!(s.reflect_simple(i, &s.reflect_simple(i, r)), *r);
            }
        }
    }
}

#[test]
fn coroot_pairings_are_integral_and_match_cartan() {
    for label in ["A4", "B4", "C4", "D5", "F4", "G2", "E6"] {
        let s = sys(label);
        for i in 1..=s.rank() {
            for j in 1..=s.rank() {
                // (α_j, α_i∨) = a_ij under the row convention a_ij = (α_i, α_j)/d_i.
                assert_eq!(
                    s.pairing(&RootVec::simple(s.rank(), j), i),
                    s.cartan(i, j),
                    "{label}"
                );
            }
            // (2ρ, α_i) = 2 d_i.
            assert_eq!(s.pairing_2rho(&RootVec::simple(s.rank(), i)), 2 * s.d(i), "{label}");
        }
        for a in s.positive_roots() {
            for b in s.positive_roots() {
                let p = s.pairing_coroot(a, b);
                // Reflections stay inside the root system.
                let refl = s.reflect(b, a);
                assert!(s.is_root(&refl), "{label}: s_{b}({a}) = {refl} not a root");
                assert!(p.abs() <= 3 || a == b, "{label}: |({a}, {b}∨)| > 3");
            }
        }
    }
}

#[test]
fn root_string_lengths_match_pairings() {
    // For roots α ≠ ±β: the β-string through α has p − q = (α, β∨).
    for label in ["A3", "B3", "C3", "G2"] {
        let s = sys(label);
        for a in s.positive_roots() {
            for b in s.positive_roots() {
                if a == b {
                    continue;
                }
                let mut p = 0;
                while s.is_root(&(a - &b.scaled(p + 1))) {
                    p += 1;
                }
                let mut q = 0;
                while s.is_root(&(a + &b.scaled(q + 1))) {
                    q += 1;
                }
                assert_eq!(p - q, s.pairing_coroot(a, b), "{label}: string through {a} along {b}");
            }
        }
    }
}

#[test]
fn pair_decompositions() {
    let a2 = sys("A2");
    let theta = rv(&[1, 1]);
    let pairs = a2.pairs_summing_to(&theta);
    assert_eq!(pairs.len(), 2);
    assert!(pairs.contains(&(rv(&[1, 0]), rv(&[0, 1]))));
    assert!(pairs.contains(&(rv(&[0, 1]), rv(&[1, 0]))));
    assert!(a2.pairs_summing_to(&rv(&[1, 0])).is_empty());
    // Every non-simple positive root splits as a sum of two positive roots.
    for label in ["A4", "B3", "C3", "D4", "F4", "G2"] {
        let s = sys(label);
        for a in s.positive_roots() {
            if a.height() > 1 {
                assert!(!s.pairs_summing_to(a).is_empty(), "{label}: {a} has no split");
            }
        }
    }
}

#[test]
fn equal_sums_differ_by_a_root_shift() {
    // If α + β = α' + β' (all positive roots) then (α', β') arises from (α, β) by
    // moving a single γ ∈ Δ ∪ {0} across, in one of the two matchings.
    for label in ["A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2", "F4"] {
        let s = sys(label);
        let roots = s.positive_roots();
        for a in roots {
            for b in roots {
                let sum = a + b;
                for a2 in roots {
                    if !sum.dominates(a2) {
                        continue;
                    }
                    let b2 = &sum - a2;
                    if !s.is_positive_root(&b2) {
                        continue;
                    }
                    let g1 = a2 - a; // (α', β') = (α + γ, β − γ)
                    let g2 = a2 - b; // (α', β') = (β + γ, α − γ)
                    let ok = g1.is_zero()
                        || s.is_root(&g1)
                        || g2.is_zero()
                        || s.is_root(&g2);
                    assert!(ok, "{label}: {a}+{b} = {a2}+{b2} with no root shift");
                }
            }
        }
    }
}

#[test]
fn render_and_parse_roots() {
    let b3 = sys("B3");
    let v = rv(&[1, 2, 0]);
    assert_eq!(b3.render_root(&v), "a1 + 2 a2");
    assert_eq!(b3.render_root(&rv(&[0, 0, 0])), "0");
    assert_eq!(b3.render_root(&rv(&[-1, 0, 3])), "-a1 + 3 a3");
    assert_eq!(b3.parse_root("1,2,0").unwrap(), v);
    assert_eq!(b3.parse_root(" 1 , 2 , 0 ").unwrap(), v);
    assert!(b3.parse_root("1,2").is_err());
    assert!(b3.parse_root("1,2,x").is_err());
}
