use rookie_core::rng::Xoshiro256PlusPlus;
use rookie_core::timeseries::{count_by_month, count_by_month_qf};
use rookie_core::{match_documents, DateRange, YearMonth};

mod common;

#[test]
fn q_and_f_series_agree_with_selections() {
    for seed in 0..3 {
        let (docs, bundle) = common::toy(seed);
        let span = bundle.corpus_span();
        let months = (YearMonth::of(span.end).ordinal() - YearMonth::of(span.start).ordinal() + 1) as usize;
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
        for _ in 0..100 {
            let state = common::random_state(&docs, &mut rng, true);
            let q = count_by_month(&bundle, &state).unwrap();
            assert_eq!(q.bins.len(), months);
            let whole = state.without_subject().with_range(span);
            assert_eq!(q.total() as usize, common::brute_force_match(&docs, &whole).len());

            // Month-aligned T: the clipped bin sum is the selection size.
            let t = DateRange::new(YearMonth::of(state.t.start).first_day(), YearMonth::of(state.t.end).last_day())
                .unwrap()
                .clip_to(span);
            let aligned = state.without_subject().with_range(t);
            assert_eq!(q.total_within(t) as usize, match_documents(&bundle, &aligned).unwrap().len());

            match &state.f {
                None => assert!(count_by_month_qf(&bundle, &state).is_err()),
                Some(_) => {
                    let qf = count_by_month_qf(&bundle, &state).unwrap();
                    assert!(qf.dominated_by(&q));
                    let sel = match_documents(&bundle, &state.with_range(t)).unwrap();
                    assert_eq!(qf.total_within(t) as usize, sel.len());
                }
            }
        }
    }
}
