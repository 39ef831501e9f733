//! The enumerated sweep corpus and the drivers that run checks over it.
//!
//! With the `parallel` feature (on by default) entries are checked on the
//! rayon pool; without it, one after another. Output order is the corpus
//! order either way.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::braid::{BraidGraph, BraidGraphSpec, FramingPreset};
use crate::error::Result;
use crate::verify::{self, VerificationReport};

pub const DEFAULT_SEED: u64 = 20_251_018;
pub const RANDOM_FRAMINGS: u64 = 20;
pub const MAX_EVENTS: usize = 4;
pub const RANDOM_RANGE: std::ops::RangeInclusive<i64> = -2..=2;

/// A diagram plus the framing family it was drawn from.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub graph: BraidGraph,
    pub framing_kind: String,
    pub seed: Option<u64>,
}

/// Every event sequence of length `<= max_len` on `strands` positions, by
/// length and then lexicographically.
pub fn event_sequences(strands: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for seq in &frontier {
            for p in 1..strands {
                let mut s: Vec<usize> = seq.clone();
                s.push(p);
                next.push(s);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Open diagrams on 2 and 3 strands with up to four thick edges.
pub fn base_specs() -> Vec<BraidGraphSpec> {
    [2, 3]
        .into_iter()
        .flat_map(|b| {
            event_sequences(b, MAX_EVENTS)
                .into_iter()
                .map(move |ev| BraidGraphSpec::new(b, &ev, 0))
        })
        .collect()
}

/// Framings drawn uniformly from `[-2, 2]`, reproducible from `(seed, stream)`.
pub fn random_framing(graph: &BraidGraph, seed: u64, stream: u64) -> BraidGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let values: Vec<i64> = (0..graph.edges().len())
        .map(|_| rng.random_range(RANDOM_RANGE))
        .collect();
    graph.with_framings(&values).expect("one value per edge")
}

/// The full corpus: each base spec under the three presets and
/// [`RANDOM_FRAMINGS`] seeded random framings.
pub fn corpus(seed: u64) -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for (i, spec) in base_specs().into_iter().enumerate() {
        let graph = BraidGraph::new(spec).expect("enumerated specs are valid");
        for (name, preset) in [
            ("blackboard", FramingPreset::Blackboard),
            ("plus_one", FramingPreset::PlusOne),
            ("layered", FramingPreset::Layered),
        ] {
            out.push(CorpusEntry {
                graph: graph.framing_preset(preset),
                framing_kind: name.to_string(),
                seed: None,
            });
        }
        for r in 0..RANDOM_FRAMINGS {
            out.push(CorpusEntry {
                graph: random_framing(&graph, seed, i as u64 * RANDOM_FRAMINGS + r),
                framing_kind: format!("random#{r}"),
                seed: Some(seed),
            });
        }
    }
    out
}

/// Applies `f` to every item in order on the current thread.
pub fn map_sequential<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Applies `f` to every item on the rayon pool; results keep input order.
#[cfg(feature = "parallel")]
pub fn map_parallel<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

/// Parallel when the `parallel` feature is on, sequential otherwise.
pub fn map_items<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        map_parallel(items, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_sequential(items, f)
    }
}

/// One unit of sweep work.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepKind {
    Theorem,
    Corollary,
    OpenQn,
}

/// `(entry index, closure level)` pairs for the theorem sweep.
pub fn theorem_tasks(entries: &[CorpusEntry]) -> Vec<(usize, usize)> {
    entries
        .iter()
        .enumerate()
        .flat_map(|(i, e)| (0..e.graph.strands() - 1).map(move |k| (i, k)))
        .collect()
}

fn annotate(mut r: VerificationReport, e: &CorpusEntry) -> VerificationReport {
    r.inputs.framing_kind = Some(e.framing_kind.clone());
    r.inputs.seed = e.seed;
    r
}

/// Runs one check kind over the corpus with the chosen mapper.
pub fn sweep_with<M>(
    entries: &[CorpusEntry],
    kind: SweepKind,
    mapper: M,
) -> Vec<Result<VerificationReport>>
where
    M: Fn(
        &[(usize, usize)],
        &(dyn Fn(&(usize, usize)) -> Result<VerificationReport> + Sync),
    ) -> Vec<Result<VerificationReport>>,
{
    let tasks: Vec<(usize, usize)> = match kind {
        SweepKind::Theorem => theorem_tasks(entries),
        _ => (0..entries.len()).map(|i| (i, 0)).collect(),
    };
    let run = |&(i, k): &(usize, usize)| {
        let e = &entries[i];
        let r = match kind {
            SweepKind::Theorem => verify::verify_theorem_step(&e.graph, k),
            SweepKind::Corollary => verify::verify_corollary(&e.graph),
            SweepKind::OpenQn => verify::verify_open_braid_qn(&e.graph),
        };
        r.map(|r| annotate(r, e))
    };
    mapper(&tasks, &run)
}

/// [`sweep_with`] using [`map_items`].
pub fn sweep(entries: &[CorpusEntry], kind: SweepKind) -> Vec<Result<VerificationReport>> {
    sweep_with(entries, kind, |t, f| map_items(t, f))
}

/// Counts for a finished sweep.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SweepSummary {
    pub total: usize,
    pub passed: usize,
    /// Short descriptions of failing or erroring items.
    pub failures: Vec<String>,
    pub elapsed_ms: f64,
}

impl SweepSummary {
    pub fn from_results(results: &[Result<VerificationReport>], elapsed_ms: f64) -> Self {
        let mut s = Self {
            total: results.len(),
            elapsed_ms,
            ..Default::default()
        };
        for r in results {
            match r {
                Ok(r) if r.passed => s.passed += 1,
                Ok(r) => s.failures.push(format!(
                    "{:?} {} level {:?} framing {}",
                    r.claim,
                    r.inputs
                        .spec
                        .as_ref()
                        .map(BraidGraphSpec::to_json)
                        .unwrap_or_default(),
                    r.inputs.level,
                    r.inputs.framing_kind.clone().unwrap_or_default()
                )),
                Err(e) => s.failures.push(format!("error: {e}")),
            }
        }
        s
    }

    pub fn all_passed(&self) -> bool {
        self.passed == self.total
    }
}
