use std::collections::BTreeSet;

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use twofrieze::cluster::{cluster_equivalent, enumerate_clusters, eval_ev, ev_point_from, Seed};
use twofrieze::corpus;
use twofrieze::enumerate::random_word;
use twofrieze::frieze::Fragment;
use twofrieze::geometry::lift_to_polygon;
use twofrieze::surgery::{
    cut_above, cut_below, cut_conditions, glue_over_ones, glue_over_pair, truncate_and_complete, CutSite, SurgeryError,
};

fn sample_fragments() -> Vec<Fragment> {
    let mut out: Vec<Fragment> = corpus::all().into_iter().map(|(_, f)| f).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for m in 2..=4 {
        for _ in 0..6 {
            out.push(eval_ev(m, &random_word(m, 7, &mut rng)).unwrap());
        }
    }
    out
}

#[test]
fn cut_condition_iff_integral_completion() {
    let mut holds = 0;
    let mut fails = 0;
    for f in sample_fragments() {
        for row in 1..f.width() {
            for col in 0..f.period() {
                let site = CutSite { row, col };
                let ok = cut_conditions(&f, site).is_ok();
                let integral = truncate_and_complete(&f, site).is_ok();
                assert_eq!(ok, integral, "site {site:?} of {f:?}");
                if ok {
                    holds += 1;
                    assert!(cut_above(&f, site).is_ok());
                } else {
                    fails += 1;
                    assert!(matches!(cut_above(&f, site), Err(SurgeryError::ConditionViolated { .. })));
                }
            }
        }
    }
    assert!(holds > 0 && fails > 0);
}

#[test]
fn special_pairs_always_cut() {
    let special = [(1, 1), (2, 1), (1, 2)].map(|(a, b)| (BigInt::from(a), BigInt::from(b)));
    for f in sample_fragments() {
        for row in 1..f.width() {
            for col in 0..f.period() {
                let c = col as isize;
                let pair = (f.entry(row, c), f.entry(row, c + 1));
                if special.contains(&pair) {
                    assert!(cut_above(&f, CutSite { row, col }).is_ok());
                }
            }
        }
    }
}

#[test]
fn gluing_over_one_one_pair_matches_gluing_over_ones() {
    let frags: Vec<Fragment> = sample_fragments().into_iter().filter(|f| f.width() >= 2 && f.width() <= 3).collect();
    let mut compared = 0;
    for f1 in &frags {
        for f2 in &frags {
            let m = f1.width();
            let one = BigInt::from(1);
            let c1 = (0..f1.period()).find(|&c| f1.entry(m, c as isize) == one && f1.entry(m, c as isize + 1) == one);
            let c2 = (0..f2.period()).find(|&c| f2.entry(1, c as isize) == one && f2.entry(1, c as isize + 1) == one);
            let (Some(c1), Some(c2)) = (c1, c2) else { continue };
            let direct = glue_over_pair(f1, c1, f2, c2).unwrap();
            let upper = cut_above(f1, CutSite { row: m - 1, col: c1 }).unwrap();
            let lower = cut_below(f2, CutSite { row: 2, col: c2 }).unwrap();
            assert_eq!(glue_over_ones(&upper, 0, &lower, 0).unwrap(), direct);
            compared += 1;
        }
    }
    assert!(compared > 3, "{compared}");
}

#[test]
fn glue_then_cut_recovers_upper() {
    let f1 = corpus::get("width2_d").unwrap();
    let f2 = corpus::get("width2_c").unwrap();
    let glued = glue_over_pair(&f1, 1, &f2, 4).unwrap();
    assert_eq!(cut_above(&glued, CutSite { row: 2, col: 0 }).unwrap(), f1.rotate(1));
    let top = corpus::get("width2_e").unwrap();
    let w1 = corpus::get("width1").unwrap();
    for c in 0..12 {
        let g = glue_over_ones(&top, c, &w1, 2).unwrap();
        assert_eq!(cut_above(&g, CutSite { row: 2, col: 0 }).unwrap(), top.rotate(c as isize));
    }
}

#[test]
fn width_two_equivalence_is_cluster_identity() {
    let clusters = enumerate_clusters(2, 1000).unwrap();
    assert_eq!(clusters.len(), 50);
    let evs: Vec<Fragment> = clusters
        .iter()
        .map(|s| {
            let x = ev_point_from(&s.initial_quiver(), s.history()).unwrap();
            let (c0, c1) = twofrieze::frieze::seed_columns(&x);
            twofrieze::frieze::complete_from_columns(&c0, &c1).unwrap()
        })
        .collect();
    assert_eq!(evs.iter().collect::<BTreeSet<_>>().len(), 50);
    for (i, c) in clusters.iter().enumerate() {
        for (j, d) in clusters.iter().enumerate() {
            let equivalent = cluster_equivalent(c, d).unwrap();
            let same_set = c.cluster_key() == d.cluster_key();
            let same_ev = evs[i] == evs[j];
            assert_eq!(equivalent, same_set, "{i} {j}");
            assert_eq!(same_set, same_ev, "{i} {j}");
        }
    }
}

#[test]
fn cluster_variables_have_positive_coefficients() {
    for m in 1..=3 {
        for s in enumerate_clusters(m, 10_000).unwrap() {
            for v in s.vars() {
                assert!(v.has_positive_coefficients(), "m={m}: {v}");
            }
        }
    }
}

#[test]
fn width_one_cluster_count_regression() {
    assert_eq!(enumerate_clusters(1, 100).unwrap().len(), 5);
}

#[test]
fn corpus_facts() {
    assert_eq!(corpus::get("width2_e").unwrap().minimal_period(), 1);
    let w3 = corpus::get("width3_glued").unwrap();
    assert_eq!((w3.width(), w3.period()), (3, 14));
    assert_eq!(corpus::get("width2_b").unwrap().minimal_period(), 12);
    assert_eq!(corpus::get("width2_a").unwrap().minimal_period(), 6);
    assert_eq!(corpus::get("width1").unwrap().minimal_period(), 5);
    assert_eq!(corpus::names().len(), 8);
}

#[test]
fn lifts_close_when_three_divides_n() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (m, count) in [(2, 20), (5, 40)] {
        for _ in 0..count {
            let f = eval_ev(m, &random_word(m, 12, &mut rng)).unwrap();
            assert!(lift_to_polygon(&f).is_ok(), "m={m}");
        }
    }
}

#[test]
fn equivalence_needs_a_common_start() {
    let a = Seed::initial_symbolic(1);
    let b = Seed::initial_symbolic(2);
    assert!(cluster_equivalent(&a, &b).is_err());
}
