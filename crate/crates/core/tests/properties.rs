use fdas::analytic::{li_as_outages, mm_as_dl_outage, mm_as_ul_outage};
use fdas::channel::ChannelRealization;
use fdas::link::{outage_indicator, sinr_dl, sinr_ul, sum_throughput, LinkBudget};
use fdas::selection::{empirical_weight, select_li, select_mm, GainScale, Strategy as Sel};
use proptest::prelude::*;

/// Realization with gains either from a small integer set (many ties) or
/// continuous.
fn realization() -> impl Strategy<Value = ChannelRealization> {
    (1usize..=5, 1usize..=5, any::<bool>()).prop_flat_map(|(m_t, m_r, ties)| {
        let gain = if ties {
            (1u8..=3).prop_map(f64::from).boxed()
        } else {
            (0.001f64..8.0).boxed()
        };
        (
            prop::collection::vec(gain.clone(), m_t),
            prop::collection::vec(gain.clone(), m_r),
            prop::collection::vec(prop::collection::vec(gain, m_t), m_r),
        )
            .prop_map(|(h, g, a)| ChannelRealization::new(h, g, a).unwrap())
    })
}

fn scale() -> impl Strategy<Value = GainScale> {
    prop_oneof![Just(GainScale::Amplitude), Just(GainScale::Power)]
}

fn lookup_matches(ch: &ChannelRealization, rx: usize, tx: usize, h: f64, g: f64, alpha: f64) -> bool {
    rx < ch.m_r() && tx < ch.m_t() && ch.h()[tx] == h && ch.g()[rx] == g && ch.a(rx, tx) == alpha
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn baselines_are_extremal(ch in realization()) {
        let mm = select_mm(&ch);
        prop_assert!(ch.h().iter().all(|&x| mm.h >= x));
        prop_assert!(ch.g().iter().all(|&x| mm.g >= x));
        prop_assert!(lookup_matches(&ch, mm.rx, mm.tx, mm.h, mm.g, mm.alpha));
        let li = select_li(&ch);
        prop_assert!(ch.a_flat().iter().all(|&x| li.alpha <= x));
        prop_assert!(lookup_matches(&ch, li.rx, li.tx, li.h, li.g, li.alpha));
    }

    #[test]
    fn multi_objective_reduces_to_baselines(ch in realization(), scale in scale(), p in prop::sample::select(vec![0.5, 1.0, 2.0])) {
        let mm = select_mm(&ch);
        let li = select_li(&ch);
        for (s, base) in [
            (Sel::WeightedSum { w: 0.0, scale }, mm),
            (Sel::WeightedSum { w: 1.0, scale }, li),
            (Sel::ExpWeighted { w: 0.0, p, scale }, mm),
            (Sel::ExpWeighted { w: 1.0, p, scale }, li),
        ] {
            let sel = s.select(&ch).unwrap();
            prop_assert_eq!((sel.rx, sel.tx), (base.rx, base.tx), "{}", s);
        }
    }

    #[test]
    fn weighted_sum_selection_is_scale_invariant(ch in realization(), scale in scale(), w in 0.0f64..=1.0, k in -2i32..=3) {
        // powers of four keep both the power and the amplitude scaling exact
        let c = 4f64.powi(k);
        let s = Sel::WeightedSum { w, scale };
        let a = s.select(&ch).unwrap();
        let b = s.select(&ch.scaled(c)).unwrap();
        prop_assert_eq!((a.rx, a.tx), (b.rx, b.tx));
    }

    #[test]
    fn selections_are_consistent(ch in realization(), scale in scale(), w in 0.0f64..=1.0, p in 0.1f64..3.0) {
        for s in [Sel::WeightedSum { w, scale }, Sel::ExpWeighted { w, p, scale }] {
            let sel = s.select(&ch).unwrap();
            prop_assert!(lookup_matches(&ch, sel.rx, sel.tx, sel.h, sel.g, sel.alpha));
        }
    }

    #[test]
    fn empirical_weight_is_clamped_and_monotone(eta in 1e-6f64..1.0, d_eta in 0.0f64..0.5, snr in -20.0f64..60.0, d_snr in 0.0f64..10.0) {
        let w = empirical_weight(eta, snr).unwrap();
        prop_assert!((0.0..=1.0).contains(&w));
        prop_assert!(empirical_weight(eta + d_eta, snr).unwrap() >= w);
        prop_assert!(empirical_weight(eta, snr + d_snr).unwrap() >= w);
    }

    #[test]
    fn link_monotonicity(gamma0 in 0.1f64..1000.0, eta in 0.0f64..=1.0, g in 0.0f64..10.0, alpha in 0.0f64..10.0, bump in 0.0f64..5.0) {
        let b = LinkBudget::symmetric(gamma0, eta, 10.0).unwrap();
        let base = sinr_ul(&b, g, alpha).unwrap();
        prop_assert!(sinr_ul(&b, g, alpha + bump).unwrap() <= base);
        prop_assert!(sinr_ul(&b, g + bump, alpha).unwrap() >= base);
        let more_eta = LinkBudget { eta: (eta + bump / 5.0).min(1.0), ..b };
        prop_assert!(sinr_ul(&more_eta, g, alpha).unwrap() <= base);
        let no_si = LinkBudget { eta: 0.0, ..b };
        prop_assert_eq!(sinr_ul(&no_si, g, alpha).unwrap(), sinr_dl(&no_si, g).unwrap());
    }

    #[test]
    fn outage_is_monotone_in_threshold(gamma in 0.0f64..100.0, t in 0.0f64..100.0, dt in 0.0f64..50.0) {
        if outage_indicator(gamma, t) {
            prop_assert!(outage_indicator(gamma, t + dt));
        }
    }

    #[test]
    fn sum_throughput_is_bounded(c_d in 0.0f64..10.0, c_u in 0.0f64..10.0, p_od in 0.0f64..=1.0, p_ou in 0.0f64..=1.0) {
        let c = sum_throughput(c_d, c_u, p_od, p_ou).unwrap();
        prop_assert!(c >= 0.0);
        prop_assert!(c <= c_d + c_u + 1e-12);
    }

    #[test]
    fn closed_forms_are_probabilities_and_monotone(gamma0 in 0.5f64..1000.0, gt in 0.1f64..50.0, eta in 0.0f64..=1.0, m in 1usize..=16) {
        let dl = mm_as_dl_outage(gamma0, gt, m);
        let ul = mm_as_ul_outage(gamma0, gt, eta, m);
        let (li_dl, li_ul) = li_as_outages(gamma0, gt, gt, eta, m, m);
        for p in [dl, ul, li_dl, li_ul] {
            prop_assert!((0.0..=1.0).contains(&p));
        }
        prop_assert!(mm_as_dl_outage(gamma0 * 2.0, gt, m) <= dl);
        prop_assert!(mm_as_ul_outage(gamma0, gt * 1.5, eta, m) >= ul - 1e-12);
        prop_assert!(mm_as_ul_outage(gamma0, gt, (eta + 0.1).min(1.0), m) >= ul - 1e-12);
        prop_assert!(li_as_outages(gamma0, gt, gt, (eta + 0.1).min(1.0), m, m).1 >= li_ul - 1e-15);
        if m < 16 {
            prop_assert!(mm_as_dl_outage(gamma0, gt, m + 1) <= dl);
            prop_assert!(mm_as_ul_outage(gamma0, gt, eta, m + 1) <= ul + 1e-12);
        }
    }
}
