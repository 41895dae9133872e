//! Acceptance criteria. Each test prints one PASS/FAIL line; run with
//! `cargo test --test acceptance -- --nocapture --test-threads=1` to see them.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use mixed_hypergraph::cli;
use mixed_hypergraph::{
    bounded_minimality_search, canonical_coloring, check_theorem_1_1, chromatic_spectrum,
    construct_one, construct_two, deletion_criticality, delta, feasible_partitions,
    is_one_realization, smallest_one_realization, MixedHypergraph, Partition, SearchBudget,
    SearchOutcome, SpecSet, Spectrum, Variant,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn verdict(id: u32, name: &str, failures: &[String], elapsed: Duration, limit: Duration) {
    let within = elapsed <= limit;
    let ok = failures.is_empty() && within;
    println!(
        "[{}] criterion {id}: {name} ({:.3}s, limit {}s{})",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.as_secs(),
        if failures.is_empty() {
            String::new()
        } else {
            format!(", {} failures", failures.len())
        }
    );
    for f in failures.iter().take(10) {
        println!("    {f}");
    }
    assert!(failures.is_empty(), "criterion {id} failed: {failures:?}");
    assert!(within, "criterion {id} exceeded {limit:?}: {elapsed:?}");
}

fn sets(max: usize, sizes: std::ops::RangeInclusive<usize>) -> Vec<SpecSet> {
    let pool: Vec<usize> = (2..=max).collect();
    common::subsets_of(&pool, sizes)
        .into_iter()
        .map(|v| SpecSet::new(v).unwrap())
        .collect()
}

/// Spectrum with entry 1 at every value of `s` and 0 elsewhere.
fn indicator_spectrum(s: &SpecSet) -> Spectrum {
    let mut counts = vec![0u64; s.max()];
    for &v in s.values() {
        counts[v - 1] = 1;
    }
    Spectrum::from_counts(counts)
}

#[test]
fn criterion_1_construction_sizes() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for s in sets(8, 2..=4) {
        let n = construct_one(&s).unwrap().vertex_count();
        if n != 2 * s.max() - s.min() {
            failures.push(format!("{s:?}: first construction has {n} vertices"));
        }
        if s.top_is_consecutive() {
            let n = construct_two(&s).unwrap().vertex_count();
            if n != 2 * s.max() - s.min() - 1 {
                failures.push(format!("{s:?}: second construction has {n} vertices"));
            }
        }
    }
    verdict(1, "construction sizes", &failures, start.elapsed(), Duration::from_secs(1));
}

#[test]
fn criterion_2_first_construction_colorings() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for s in sets(6, 2..=3) {
        let h = construct_one(&s).unwrap();
        let found: BTreeSet<Partition> = feasible_partitions(&h).into_iter().collect();
        let expected: BTreeSet<Partition> = (1..=s.len())
            .map(|i| canonical_coloring(&s, i, Variant::One).unwrap())
            .collect();
        if found != expected {
            failures.push(format!("{s:?}: feasible partitions {found:?}"));
        }
        let spectrum = chromatic_spectrum(&h);
        if spectrum != indicator_spectrum(&s) {
            failures.push(format!("{s:?}: spectrum {:?}", spectrum.counts()));
        }
    }
    verdict(2, "first construction one-realizes S", &failures, start.elapsed(), Duration::from_secs(60));
}

#[test]
fn criterion_3_second_construction_spectra() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let family: Vec<SpecSet> = sets(6, 2..=5).into_iter().filter(|s| s.top_is_consecutive()).collect();
    for s in &family {
        let spectrum = chromatic_spectrum(&construct_two(s).unwrap());
        if spectrum != indicator_spectrum(s) {
            failures.push(format!("{s:?}: spectrum {:?}", spectrum.counts()));
        }
    }
    let s43 = SpecSet::new([4, 3]).unwrap();
    let spectrum = chromatic_spectrum(&construct_two(&s43).unwrap());
    if spectrum.counts() != [0, 0, 1, 1] {
        failures.push(format!("{{4,3}}: spectrum {:?}", spectrum.counts()));
    }
    verdict(3, "second construction one-realizes S", &failures, start.elapsed(), Duration::from_secs(5));
}

#[test]
fn criterion_4_minimum_size_end_to_end() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for s in sets(8, 2..=4) {
        if !check_theorem_1_1(&s).unwrap() {
            failures.push(format!("{s:?}: smallest construction check failed"));
        }
    }
    for (values, expected) in [(vec![4, 2], 6), (vec![4, 3], 4), (vec![5, 3, 2], 8)] {
        let got = delta(&SpecSet::new(values.clone()).unwrap());
        if got != expected {
            failures.push(format!("delta({values:?}) = {got}, expected {expected}"));
        }
    }
    verdict(4, "minimum one-realization size", &failures, start.elapsed(), Duration::from_secs(60));
}

#[test]
fn criterion_5_deletion_criticality() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for values in [vec![4, 2], vec![4, 3], vec![5, 3, 2]] {
        let s = SpecSet::new(values).unwrap();
        let h = smallest_one_realization(&s).unwrap();
        let flags = deletion_criticality(&h, &s.to_feasible_set());
        if flags.len() != h.vertex_count() {
            failures.push(format!("{s:?}: {} flags for {} vertices", flags.len(), h.vertex_count()));
        }
        for (v, still) in flags {
            if still {
                failures.push(format!("{s:?}: deleting vertex {v} keeps a one-realization"));
            }
        }
    }
    verdict(5, "single-vertex deletions break one-realization", &failures, start.elapsed(), Duration::from_secs(30));
}

#[test]
fn criterion_6_bounded_minimality_search() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let budget = SearchBudget::default();
    let r = bounded_minimality_search(&SpecSet::new([4, 2]).unwrap(), 5, &budget, 1).unwrap();
    if r.outcome != SearchOutcome::Exhausted || r.examined != 1 << 20 {
        failures.push(format!("{{4,2}} on 5 vertices: {} after {} candidates", r.outcome, r.examined));
    }
    let s32 = SpecSet::new([3, 2]).unwrap();
    let r = bounded_minimality_search(&s32, 3, &budget, 1).unwrap();
    match (&r.outcome, &r.witness) {
        (SearchOutcome::WitnessFound, Some(w))
            if w.vertex_count() == 3 && is_one_realization(w, &s32.to_feasible_set()) => {}
        _ => failures.push(format!("{{3,2}} on 3 vertices: {}", r.outcome)),
    }
    verdict(6, "bounded minimality search", &failures, start.elapsed(), Duration::from_secs(300));
}

/// Every hypergraph produced by criteria 1 to 6.
fn produced_corpus() -> Vec<(String, MixedHypergraph)> {
    let mut out = Vec::new();
    for s in sets(8, 2..=4) {
        out.push((format!("first {s:?}"), construct_one(&s).unwrap()));
        if s.top_is_consecutive() {
            out.push((format!("second {s:?}"), construct_two(&s).unwrap()));
        }
    }
    for values in [vec![4, 2], vec![4, 3], vec![5, 3, 2]] {
        let s = SpecSet::new(values).unwrap();
        let h = smallest_one_realization(&s).unwrap();
        for v in h.vertices() {
            out.push((format!("{s:?} minus {v}"), h.delete_vertex(v).unwrap()));
        }
    }
    let r = bounded_minimality_search(&SpecSet::new([3, 2]).unwrap(), 3, &SearchBudget::default(), 1)
        .unwrap();
    out.push(("search witness {3,2}".into(), r.witness.unwrap()));
    out
}

#[test]
fn criterion_7_gap_lower_bound() {
    let corpus: Vec<(String, MixedHypergraph, Spectrum)> = produced_corpus()
        .into_iter()
        .map(|(name, h)| {
            let s = chromatic_spectrum(&h);
            (name, h, s)
        })
        .collect();
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut gaps_checked = 0;
    for (name, h, spectrum) in &corpus {
        let f = spectrum.feasible_set();
        let Some(lowest) = f.min() else { continue };
        for k in f.gaps() {
            gaps_checked += 1;
            let bound = 2 * (k + 1) - lowest;
            if h.vertex_count() < bound {
                failures.push(format!("{name}: {} vertices, gap at {k}, bound {bound}", h.vertex_count()));
            }
        }
    }
    // Sharpness for S = {s, t} with t >= s + 2.
    for s in sets(8, 2..=2) {
        let (t, low) = (s.max(), s.min());
        if t < low + 2 {
            continue;
        }
        let h = construct_one(&s).unwrap();
        if !chromatic_spectrum(&h).feasible_set().has_gap_at(t - 1) || h.vertex_count() != 2 * t - low {
            failures.push(format!("{s:?}: bound not attained"));
        }
    }
    if gaps_checked == 0 {
        failures.push("no gaps in corpus".into());
    }
    verdict(7, "gap lower bound holds and is sharp", &failures, start.elapsed(), Duration::from_secs(1));
}

#[test]
fn criterion_8_engine_oracle_equivalence() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for case in 0..1000 {
        let h = common::random_hypergraph(&mut rng, 7);
        let engine: BTreeSet<Vec<Vec<usize>>> =
            feasible_partitions(&h).iter().map(|p| p.block_lists()).collect();
        if engine != common::brute_force_feasible(&h) {
            failures.push(format!("case {case}: enumeration differs for {h:?}"));
            continue;
        }
        let spectrum = chromatic_spectrum(&h);
        if spectrum.counts() != common::brute_force_spectrum(&h).as_slice() {
            failures.push(format!("case {case}: spectrum differs"));
        }
        let f = spectrum.feasible_set();
        let expected_f: Vec<usize> = (1..=h.vertex_count()).filter(|&k| spectrum.get(k) > 0).collect();
        let expected_gaps: Vec<usize> = (1..=h.vertex_count()).filter(|&k| f.has_gap_at(k)).collect();
        if f.to_vec() != expected_f || f.gaps() != expected_gaps || f.is_gap_free() != expected_gaps.is_empty() {
            failures.push(format!("case {case}: feasible set or gaps inconsistent"));
        }
        let perm = common::random_permutation(&mut rng, h.vertex_count());
        let p = h.permuted(&perm);
        match h.isomorphism(&p).unwrap() {
            Some(m) if m.is_isomorphism(&h, &p) => {
                if chromatic_spectrum(&p) != spectrum {
                    failures.push(format!("case {case}: spectrum not isomorphism invariant"));
                }
            }
            _ => failures.push(format!("case {case}: permuted copy not recognized")),
        }
    }
    verdict(8, "engine matches brute force on 1000 random cases", &failures, start.elapsed(), Duration::from_secs(120));
}

#[test]
fn criterion_9_spectrum_output_determinism() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h532.json");
    cli::write_document(&path, &construct_one(&SpecSet::new([5, 3, 2]).unwrap()).unwrap()).unwrap();
    let path = path.to_str().unwrap().to_string();
    for format in ["text", "json"] {
        let mut outputs = Vec::new();
        for jobs in ["1", "2", "8"] {
            let mut out = Vec::new();
            let mut err = Vec::new();
            let code = cli::run(
                ["mixhyp", "spectrum", &path, "--list-colorings", "--jobs", jobs, "--format", format],
                &mut out,
                &mut err,
            );
            if code != 0 {
                failures.push(format!("jobs {jobs}: exit {code}"));
            }
            outputs.push(out);
        }
        if outputs.iter().any(|o| *o != outputs[0]) {
            failures.push(format!("{format} output differs across worker counts"));
        }
    }
    verdict(9, "spectrum output identical for 1, 2, 8 workers", &failures, start.elapsed(), Duration::from_secs(60));
}
