use chrono::NaiveDate;
use rookie_core::rng::Xoshiro256PlusPlus;
use rookie_core::summarizer::{build_sentence_pool, sample_order, sample_summary, SentenceCandidate, SentencePool};
use rookie_core::{match_documents, DateRange, SelectionState};

mod common;

fn candidate(i: usize, date: NaiveDate, tier: u8) -> SentenceCandidate {
    SentenceCandidate {
        doc_id: format!("d{i:04}"),
        sentence_index: 0,
        tier,
        date,
        text: String::new(),
        highlight_spans: Vec::new(),
    }
}

fn two_month_pool(a: usize, b: usize) -> SentencePool {
    let march = NaiveDate::from_ymd_opt(1993, 3, 10).unwrap();
    let april = NaiveDate::from_ymd_opt(1993, 4, 10).unwrap();
    let candidates = (0..a)
        .map(|i| candidate(i, march, 1))
        .chain((0..b).map(|i| candidate(a + i, april, 1)))
        .collect();
    SentencePool {
        selection: SelectionState::new("x", None, DateRange::new(march, april).unwrap()),
        candidates,
    }
}

#[test]
fn first_draw_follows_month_share() {
    let pool = two_month_pool(100, 900);
    let runs = 10_000u64;
    let hits = (0..runs)
        .filter(|&seed| pool.candidates[sample_order(&pool, seed)[0]].date.format("%m").to_string() == "03")
        .count() as f64;
    let freq = hits / runs as f64;
    assert!((0.08..=0.12).contains(&freq), "{freq}");
    // Pearson chi-square with one degree of freedom; 6.635 is the 0.01
    // critical value.
    let n = runs as f64;
    let chi2 = (hits - 0.1 * n).powi(2) / (0.1 * n) + ((n - hits) - 0.9 * n).powi(2) / (0.9 * n);
    assert!(chi2 < 6.635, "{chi2}");
}

#[test]
fn three_month_shares() {
    let d = |m| NaiveDate::from_ymd_opt(2001, m, 1).unwrap();
    let sizes = [(1, 20), (2, 30), (3, 50)];
    let mut candidates = Vec::new();
    for (m, n) in sizes {
        for _ in 0..n {
            candidates.push(candidate(candidates.len(), d(m), 2));
        }
    }
    let pool = SentencePool {
        selection: SelectionState::new("x", None, DateRange::new(d(1), d(3)).unwrap()),
        candidates,
    };
    let runs = 10_000;
    let mut counts = [0f64; 3];
    for seed in 0..runs {
        let first = &pool.candidates[sample_order(&pool, seed)[0]];
        counts[first.date.format("%m").to_string().parse::<usize>().unwrap() - 1] += 1.0;
    }
    let chi2: f64 = counts
        .iter()
        .zip(sizes)
        .map(|(&o, (_, n))| {
            let e = runs as f64 * n as f64 / 100.0;
            (o - e).powi(2) / e
        })
        .sum();
    // Two degrees of freedom, p = 0.01.
    assert!(chi2 < 9.210, "{chi2} {counts:?}");
}

#[test]
fn structure_on_toy_states() {
    let (docs, bundle) = common::toy(21);
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(21);
    for i in 0..100 {
        let state = common::random_state(&docs, &mut rng, true);
        let pool = build_sentence_pool(&bundle, &state).unwrap();
        let sel = match_documents(&bundle, &state).unwrap();
        assert_eq!(pool.candidates.len(), sel.len());
        if state.f.is_none() {
            assert!(pool.candidates.iter().all(|c| c.tier > 0));
        }
        let out = sample_summary(&pool, i);
        assert_eq!(out.len(), pool.candidates.len());
        assert!(out.windows(2).all(|w| w[0].tier <= w[1].tier));
        let mut ids: Vec<&str> = out.iter().map(|c| c.doc_id.as_str()).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), out.len());
        assert_eq!(out, sample_summary(&pool, i));
    }
}
