use proptest::prelude::*;
use rigidity_kit::dixon::squared_paths;
use rigidity_kit::framework::GEOMETRIC_TOL;
use rigidity_kit::*;

fn distinct(values: Vec<i32>) -> Vec<f64> {
    let mut v: Vec<i32> = values.into_iter().filter(|&x| x != 0).collect();
    v.sort_unstable_by_key(|x| x.abs());
    v.dedup_by_key(|x| x.abs());
    v.into_iter().map(|x| x as f64 / 4.0).collect()
}

fn side() -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(-40i32..=40, 2..12)
        .prop_map(distinct)
        .prop_filter("two points", |v| v.len() >= 2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn cross_lengths_are_constant(x in side(), y in side()) {
        let d = DixonLinkage::finite(x, y);
        let m = dixon_flex(&d).unwrap();
        let f = d.framework();
        let r = check_flex(&f, &m, 64, None);
        prop_assert!(r.max_length_deviation <= GEOMETRIC_TOL);
        prop_assert!(r.nontrivial());
    }

    #[test]
    fn squared_identity_is_exact(
        x in proptest::collection::vec(1i128..400, 1..6),
        y in proptest::collection::vec(1i128..400, 1..6),
        c in 0i128..20,
        t in 0i128..=12,
    ) {
        let q = |v: &[i128]| v.iter().map(|&n| Rational::new(n, 7)).collect::<Vec<_>>();
        let (x2, y2) = (q(&x), q(&y));
        let t = Rational::new(t, 12);
        for shrink in [true, false] {
            let (a, b) = squared_paths(&x2, &y2, Rational::new(c, 3), t, shrink);
            for i in 0..x2.len() {
                for j in 0..y2.len() {
                    prop_assert_eq!(a[i] + b[j], x2[i] + y2[j]);
                }
            }
        }
    }

    #[test]
    fn adding_a_larger_point_keeps_flexibility(x in side(), y in side(), extra in 1i32..40, tail in prop::option::of(0i32..4)) {
        let mut d = DixonLinkage::finite(x, y);
        let min = d.x.iter().map(|v| v.abs()).fold(f64::INFINITY, f64::min);
        d.tail_inf_x = tail.map(|t| (t as f64 / 4.0).min(min));
        let before = dixon_flexible(&d).unwrap();
        let new = min + extra as f64 / 8.0;
        prop_assume!(!d.x.iter().any(|v| v.abs() == new));
        d.x.push(new);
        prop_assert!(!before || dixon_flexible(&d).unwrap());
    }
}
