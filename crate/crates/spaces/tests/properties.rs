use proptest::prelude::*;
use spaces::{rearrange, Exponent, LorentzIndices, LorentzMethod, StepProfile};

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
}

fn atoms() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec(
        ((-3.0f64..3.0), (-3.0f64..3.0)).prop_map(|(v, m)| (10f64.powf(v), 10f64.powf(m))),
        1..20,
    )
}

fn profile() -> impl Strategy<Value = StepProfile> {
    atoms().prop_map(|a| StepProfile::new(&a).unwrap())
}

proptest! {
    #[test]
    fn rearrangement_is_monotone_and_equimeasurable(p in profile(), lambda_exp in -4.0f64..4.0) {
        let rp = rearrange(&p);
        // staircase values strictly decrease
        for w in rp.values().windows(2) {
            prop_assert!(w[0] > w[1]);
        }
        // distribution functions agree bitwise on both sides
        let lambda = 10f64.powf(lambda_exp);
        prop_assert_eq!(
            p.distribution(lambda).unwrap(),
            rp.distribution(lambda).unwrap()
        );
        // and the rearrangement's own level sets recover the same measure
        for v in rp.values() {
            let below = rp.distribution(*v).unwrap();
            let above = p.distribution_left_limit(*v).unwrap();
            prop_assert!(below < above);
        }
    }

    #[test]
    fn layer_cake_matches_piece_sum(p in profile()) {
        let rp = rearrange(&p);
        for q in [1.0, 1.5, 2.0, 3.0] {
            let a = rp.lp_norm(Exponent::Finite(q)).unwrap();
            let b = rp.lp_norm_layer_cake(q).unwrap();
            prop_assert!(rel_close(a, b, 1e-12), "q={}: {} vs {}", q, a, b);
        }
    }

    #[test]
    fn lorentz_methods_agree(p in profile()) {
        let rp = rearrange(&p);
        for pe in [1.5, 2.0, 4.0] {
            for re in [1.0, pe, 2.0 * pe] {
                let idx = LorentzIndices::new(pe, Exponent::Finite(re)).unwrap();
                let a = rp.lorentz_norm(&idx, LorentzMethod::ClosedForm).unwrap();
                let b = rp.lorentz_norm(&idx, LorentzMethod::LayerCake).unwrap();
                prop_assert!(rel_close(a, b, 1e-9), "p={} r={}: {} vs {}", pe, re, a, b);
            }
        }
    }

    #[test]
    fn weak_norm_sides_agree_bitwise(p in profile()) {
        let rp = rearrange(&p);
        for pe in [1.0, 1.5, 2.0, 4.0] {
            prop_assert_eq!(
                rp.weak_lp_norm(pe).unwrap(),
                p.weak_norm_level_side(pe).unwrap()
            );
        }
    }

    #[test]
    fn hardy_average_dominates_star(p in profile(), t_exp in -3.0f64..3.0) {
        let rp = rearrange(&p);
        let t = rp.support_measure() * 10f64.powf(t_exp);
        if t > 0.0 {
            let star = rp.evaluate_star(t).unwrap();
            let avg = rp.hardy_average(t).unwrap();
            prop_assert!(avg >= star * (1.0 - 1e-14), "t={}: {} < {}", t, avg, star);
        }
    }

    #[test]
    fn hardy_average_bounded_by_lp(p in profile(), t_exp in -3.0f64..3.0) {
        let rp = rearrange(&p);
        let t = rp.support_measure() * 10f64.powf(t_exp);
        if t > 0.0 {
            for pe in [1.0, 2.0, 4.0] {
                let lhs = rp.hardy_average(t).unwrap();
                let rhs = t.powf(-1.0 / pe) * rp.lp_norm(Exponent::Finite(pe)).unwrap();
                prop_assert!(lhs <= rhs * (1.0 + 1e-12), "p={} t={}: {} > {}", pe, t, lhs, rhs);
            }
        }
    }

    #[test]
    fn hardy_average_decay_through_lorentz_norms(p in profile(), t_exp in -3.0f64..3.0) {
        let rp = rearrange(&p);
        let t = rp.support_measure() * 10f64.powf(t_exp);
        if t > 0.0 {
            for (pe, re) in [(2.0, Exponent::Finite(2.0)), (2.0, Exponent::Infinite), (1.5, Exponent::Finite(3.0))] {
                let idx = LorentzIndices::new(pe, re).unwrap();
                let c = idx.hardy_decay_constant().unwrap();
                let norm = rp.lorentz_norm(&idx, LorentzMethod::ClosedForm).unwrap();
                let lhs = rp.hardy_average(t).unwrap();
                let rhs = c * t.powf(-1.0 / pe) * norm;
                prop_assert!(lhs <= rhs * (1.0 + 1e-9), "p={} t={}: {} > {}", pe, t, lhs, rhs);
            }
        }
    }

    #[test]
    fn hardy_average_log_lipschitz_in_gap_functional(p in profile(), t_exp in -2.0f64..2.0, u in 1e-3f64..1.0) {
        let rp = rearrange(&p);
        let t = rp.support_measure() * 10f64.powf(t_exp);
        let s = t * u;
        if s > 0.0 {
            let lhs = rp.hardy_average(s).unwrap();
            let rhs = rp.hardy_average(t).unwrap() + rp.w_functional() * (t / s).ln();
            prop_assert!(lhs <= rhs * (1.0 + 1e-12), "s={} t={}: {} > {}", s, t, lhs, rhs);
        }
    }

    #[test]
    fn star_norm_sandwich(p in profile()) {
        let rp = rearrange(&p);
        for pe in [1.5, 2.0, 4.0] {
            for re in [Exponent::Finite(1.0), Exponent::Finite(2.0), Exponent::Finite(pe), Exponent::Infinite] {
                let idx = LorentzIndices::new(pe, re).unwrap();
                let plain = rp.lorentz_norm(&idx, LorentzMethod::ClosedForm).unwrap();
                let star = rp.star_lorentz_norm(&idx).unwrap();
                let conj = pe / (pe - 1.0);
                prop_assert!(plain <= star * (1.0 + 1e-9), "lower p={} r={:?}", pe, re);
                prop_assert!(star <= conj * plain * (1.0 + 1e-9), "upper p={} r={:?}", pe, re);
            }
        }
    }

    #[test]
    fn star_norm_fubini_identity_at_r_one(p in profile()) {
        // the averaged norm at secondary index 1 collapses to exactly the
        // conjugate multiple of the plain norm; pins the quadrature end to end
        let rp = rearrange(&p);
        for pe in [1.5, 2.0, 3.0] {
            let idx = LorentzIndices::new(pe, Exponent::Finite(1.0)).unwrap();
            let star = rp.star_lorentz_norm(&idx).unwrap();
            let plain = rp.lorentz_norm(&idx, LorentzMethod::ClosedForm).unwrap();
            let conj = pe / (pe - 1.0);
            prop_assert!(rel_close(star, conj * plain, 1e-9), "p={}: {} vs {}", pe, star, conj * plain);
        }
    }

    #[test]
    fn norms_are_one_homogeneous(p in profile(), c_exp in -2.0f64..2.0) {
        let c = 10f64.powf(c_exp);
        let scaled = p.scale(c).unwrap();
        let (a, b) = (rearrange(&p), rearrange(&scaled));
        let idx = LorentzIndices::new(2.0, Exponent::Finite(3.0)).unwrap();
        prop_assert!(rel_close(
            c * a.lorentz_norm(&idx, LorentzMethod::ClosedForm).unwrap(),
            b.lorentz_norm(&idx, LorentzMethod::ClosedForm).unwrap(),
            1e-12
        ));
        prop_assert!(rel_close(c * a.w_functional(), b.w_functional(), 1e-12));
        prop_assert!(rel_close(
            c * a.weak_lp_norm(2.0).unwrap(),
            b.weak_lp_norm(2.0).unwrap(),
            1e-12
        ));
    }

    #[test]
    fn distribution_is_monotone_right_continuous(p in profile(), l1 in -3.0f64..3.0, l2 in -3.0f64..3.0) {
        let (lo, hi) = if l1 < l2 { (l1, l2) } else { (l2, l1) };
        let (lo, hi) = (10f64.powf(lo), 10f64.powf(hi));
        prop_assert!(p.distribution(lo).unwrap() >= p.distribution(hi).unwrap());
        prop_assert!(p.distribution_left_limit(lo).unwrap() >= p.distribution(lo).unwrap());
    }

    #[test]
    fn lp_interpolates_between_weak_and_sup(p in profile()) {
        // q-norm bounded by the standard two-sided controls it sits between
        let rp = rearrange(&p);
        let sup = rp.lp_norm(Exponent::Infinite).unwrap();
        for q in [2.0, 4.0] {
            let plain = rp.lp_norm(Exponent::Finite(q)).unwrap();
            let weak = rp.weak_lp_norm(q).unwrap();
            prop_assert!(weak <= plain * (1.0 + 1e-12));
            let mass = rp.support_measure();
            prop_assert!(plain <= sup * mass.powf(1.0 / q) * (1.0 + 1e-12));
        }
    }
}
