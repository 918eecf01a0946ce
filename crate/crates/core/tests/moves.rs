use qinv_core::colored::ColoredError;
use qinv_core::invariants::InvariantError;
use qinv_core::moves::fixture_corpus;
use qinv_core::ring::Level;
use qinv_core::skein::EvalConfig;

#[test]
fn every_fixture_behaves_as_documented() {
    let cfg = EvalConfig::default();
    let mut failures = Vec::new();
    let mut over_capacity = 0;
    let mut evaluated = 0;
    for f in fixture_corpus() {
        for k in [3, 4, 5, 6] {
            match f.evaluate(Level::new(k).unwrap(), &cfg) {
                Ok(outcome) => {
                    evaluated += 1;
                    if !outcome.passed() {
                        failures.push(format!("{} ({}) at k={k}", f.name, f.kind));
                    }
                }
                // higher levels cable more strands; wide fixtures may not fit
                Err(InvariantError::Colored(ColoredError::Skein(_))) if k >= 5 => over_capacity += 1,
                Err(e) => panic!("{} at k={k}: {e}", f.name),
            }
        }
    }
    assert!(failures.is_empty(), "failing fixtures: {failures:#?}");
    assert!(evaluated > 3 * over_capacity, "{over_capacity} over capacity, {evaluated} evaluated");
}
