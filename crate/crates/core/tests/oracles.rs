//! Brute-force oracles checked against the closed forms and bounded
//! enumerations. The oracles only use the raw pairing over a fixed window.

use k3clifford::classifier::{
    isotropic_primitive, minus_two_bruteforce, minus_two_closed_form, MinusTwoCase,
};
use k3clifford::clifford::{
    admissible, enumeration_bounds, f_value, min_clifford_pencil, optimal_offset, verify_theorem31,
    RootBounds,
};
use k3clifford::ratio::Rational;
use k3clifford::{DivisorClass, Int, SurfaceParams};
use num_integer::Integer;
use proptest::prelude::*;
use std::cmp::Ordering;

fn base(g: Int, s: Int) -> SurfaceParams {
    SurfaceParams::base(g, s).unwrap()
}

fn window(w: Int) -> impl Iterator<Item = DivisorClass> {
    (-w..=w).flat_map(move |m| (-w..=w).map(move |n| DivisorClass::new(m, n)))
}

/// (-2)-classes with 1 <= F.H <= r_max inside |m|, |n| <= w.
fn raw_minus_two(p: &SurfaceParams, r_max: Int, w: Int) -> Vec<(DivisorClass, Int)> {
    let mut out: Vec<_> = window(w)
        .filter_map(|c| {
            let r = p.intersect(c, DivisorClass::H).unwrap();
            ((1..=r_max).contains(&r) && p.self_int(c).unwrap() == -2).then_some((c, r))
        })
        .collect();
    out.sort_by_key(|(c, r)| (*r, c.n, c.m));
    out
}

#[test]
fn minus_two_enumerators_match_raw_window() {
    for s in -3..=8 {
        for g in 2 * s + 13..=2 * s + 30 {
            let Ok(p) = SurfaceParams::base(g, s) else {
                continue;
            };
            let r_max = p.d - 6;
            let raw = raw_minus_two(&p, r_max, 60);
            let brute: Vec<_> = minus_two_bruteforce(&p, r_max)
                .unwrap()
                .into_iter()
                .map(|r| (r.class, r.r))
                .collect();
            let closed: Vec<_> = minus_two_closed_form(&p)
                .unwrap()
                .into_iter()
                .map(|r| (r.class, r.r))
                .collect();
            assert_eq!(raw, brute, "g={g} s={s}");
            assert_eq!(raw, closed, "g={g} s={s}");
        }
    }
}

#[test]
fn minus_two_records_satisfy_norm_equation() {
    for s in -3..=12 {
        for g in 2 * s + 13..=2 * s + 50 {
            let Ok(p) = SurfaceParams::base(g, s) else {
                continue;
            };
            let disc = p.discriminant();
            for rec in minus_two_bruteforce(&p, 3 * p.d).unwrap() {
                assert_eq!(rec.class.n * rec.class.n * disc, rec.r * rec.r + 12);
                assert_ne!(rec.class.n, 0);
                assert_ne!(rec.case, MinusTwoCase::Unmatched, "g={g} s={s}");
            }
        }
    }
}

#[test]
fn isotropic_classes_match_raw_window() {
    for s in -1..=12 {
        for g in 2 * s + 13..=2 * s + 40 {
            let p = base(g, s);
            let mut raw: Vec<_> = window(100)
                .filter(|c| {
                    c.m.abs().gcd(&c.n.abs()) == 1
                        && p.self_int(*c).unwrap() == 0
                        && p.intersect(*c, DivisorClass::H).unwrap() > 0
                })
                .collect();
            raw.sort();
            let mut got: Vec<_> = isotropic_primitive(&p)
                .unwrap()
                .into_iter()
                .map(|r| r.class)
                .collect();
            got.sort();
            assert_eq!(raw, got, "g={g} s={s}");
        }
    }
}

#[test]
fn isotropic_parameters_satisfy_b_equation() {
    for s in -1..=25 {
        for g in 2 * s + 13..=2 * s + 80 {
            for rec in isotropic_primitive(&base(g, s)).unwrap() {
                let (b, t) = (rec.b, rec.t);
                assert!(b == 1 || b == 2);
                assert_eq!(g, t + 2 * b + s + 6);
                assert_eq!(b * (t + 2 * b), 3 * s + 6 + b * b);
            }
        }
    }
}

fn window_minimum(p: &SurfaceParams, w: Int) -> Option<(Int, Vec<DivisorClass>)> {
    let mut pts: Vec<_> = window(w)
        .filter(|c| admissible(p, c.m, c.n).unwrap().all())
        .map(|c| {
            (
                p.intersect(c, DivisorClass::C).unwrap() - p.self_int(c).unwrap() - 2,
                c,
            )
        })
        .collect();
    let best = pts.iter().map(|(f, _)| *f).min()?;
    pts.retain(|(f, _)| *f == best);
    let mut argmin: Vec<_> = pts.into_iter().map(|(_, c)| c).collect();
    argmin.sort_by_key(|c| (c.n, c.m));
    Some((best, argmin))
}

#[test]
fn pencil_minimum_matches_window_scan() {
    for (g, s) in [
        (14, 0),
        (13, 0),
        (12, -1),
        (30, 8),
        (50, 18),
        (40, 2),
        (27, 6),
    ] {
        let p = base(g, s);
        let got = min_clifford_pencil(&p)
            .unwrap()
            .map(|m| (m.f_value, m.argmin));
        assert_eq!(got, window_minimum(&p, 60), "g={g} s={s}");
    }
}

#[test]
fn bounds_contain_every_admissible_point() {
    for s in -1..=10 {
        for g in 2 * s + 13..=2 * s + 60 {
            let p = base(g, s);
            let b = enumeration_bounds(&p).unwrap();
            for c in window(40) {
                if admissible(&p, c.m, c.n).unwrap().all() {
                    assert!(b.n_range().contains(&c.n), "g={g} s={s} {c}");
                    assert!(b.m_range(c.n).contains(&c.m), "g={g} s={s} {c}");
                }
            }
        }
    }
}

#[test]
fn theorem_boundary_is_sharp() {
    for s in -1..=30 {
        let p = base(2 * s + 13, s);
        let min = min_clifford_pencil(&p).unwrap().unwrap();
        assert_eq!(min.f_value, p.d - 8);
        assert!(min.f_value < Integer::div_floor(&(p.g - 1), &2));
        // The minimizer is D ~ H or its complement C - H; the degree
        // constraint keeps C - H only while s <= 1 and H only from s >= 1.
        let h = DivisorClass::new(1, 0);
        let c_minus_h = DivisorClass::new(-1, 1);
        let expected: Vec<_> = [(s >= 1, h), (s <= 1, c_minus_h)]
            .into_iter()
            .filter_map(|(keep, c)| keep.then_some(c))
            .collect();
        assert_eq!(min.argmin, expected, "s={s}");
        assert_eq!(f_value(&p, -1, 1).unwrap(), f_value(&p, 1, 0).unwrap());
    }
}

#[test]
fn rank_two_value_meets_lower_bound_exactly_at_optimal_offset() {
    for s in -1..=20 {
        for g in 2 * s + 14..=2 * s + 60 {
            let cert = verify_theorem31(&base(g, s)).unwrap();
            assert!(cert.theorem_holds);
            assert!(cert.gamma_rank2 >= cert.mercat_lower);
            assert_eq!(cert.cliff2_equal, s == optimal_offset(g), "g={g} s={s}");
        }
    }
}

fn theorem_params() -> impl Strategy<Value = SurfaceParams> {
    (-1i128..40, 0i128..200).prop_map(|(s, extra)| base(2 * s + 14 + extra, s))
}

fn any_params() -> impl Strategy<Value = SurfaceParams> {
    (-500i128..500, -500i128..500).prop_map(|(g, s)| SurfaceParams::unconstrained(g, s).unwrap())
}

proptest! {
    #[test]
    fn f_is_degree_minus_square(p in any_params(), m in -100i128..=100, n in -100i128..=100) {
        let d = DivisorClass::new(m, n);
        let pairing = p.intersect(DivisorClass::C, d).unwrap() - p.self_int(d).unwrap() - 2;
        prop_assert_eq!(f_value(&p, m, n).unwrap(), pairing);
    }

    #[test]
    fn positive_square_constraint_is_positive_self_intersection(
        p in any_params(), m in -100i128..=100, n in -100i128..=100,
    ) {
        let sq = p.self_int(DivisorClass::new(m, n)).unwrap();
        prop_assert_eq!(admissible(&p, m, n).unwrap().positive_square, sq > 0);
    }

    #[test]
    fn positive_square_is_outside_the_roots(
        p in theorem_params(), m in -200i128..=200, n in (1i128..=60).prop_flat_map(|k| prop_oneof![Just(k), Just(-k)]),
    ) {
        let roots = RootBounds::of(&p).unwrap();
        let x = Rational::new(m, n);
        let outside = roots.cmp_neg_a(x) == Ordering::Less || roots.cmp_neg_b(x) == Ordering::Greater;
        prop_assert_eq!(admissible(&p, m, n).unwrap().positive_square, outside);
    }
}
