use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::GbError;

/// Version tag written into persisted bases; bump whenever basis output
/// could change.
pub const ENGINE_VERSION: &str = "mlsing-gb-1";

/// Resource limits. Exceeding any of them aborts with [`GbError::Budget`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Critical pairs per basis computation.
    pub max_pairs: u64,
    /// Terms in any intermediate polynomial.
    pub max_terms: usize,
    /// Wall time for everything run through one engine.
    pub wall: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_pairs: 20_000_000,
            max_terms: 5_000_000,
            wall: Some(Duration::from_secs(600)),
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            max_pairs: u64::MAX,
            max_terms: usize::MAX,
            wall: None,
        }
    }
}

/// How the next critical pair is chosen.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Selection {
    /// Smallest sugar degree, then smallest lcm, then pair index.
    #[default]
    Sugar,
    /// Smallest lcm degree, then smallest lcm, then pair index.
    LcmDegree,
}

/// Counters accumulated over basis computations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GbStats {
    pub bases_computed: u64,
    pub pairs_considered: u64,
    pub pairs_pruned: u64,
    pub reductions_to_zero: u64,
    pub max_intermediate_terms: u64,
}

impl GbStats {
    pub fn absorb(&mut self, other: &GbStats) {
        self.bases_computed += other.bases_computed;
        self.pairs_considered += other.pairs_considered;
        self.pairs_pruned += other.pairs_pruned;
        self.reductions_to_zero += other.reductions_to_zero;
        self.max_intermediate_terms = self.max_intermediate_terms.max(other.max_intermediate_terms);
    }
}

/// A persisted reduced basis together with the statistics of the run that
/// produced it, so replayed results report identical counters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CachedBasis {
    pub generators: Vec<String>,
    pub stats: GbStats,
}

/// External store for reduced bases, keyed by a canonical description of
/// the input (ring, order, exact generator text).
pub trait GbCache: Send + Sync {
    fn lookup(&self, key: &str) -> Option<CachedBasis>;
    fn store(&self, key: &str, value: &CachedBasis);
}

/// Shared configuration and accounting for basis computations.
pub struct Engine {
    budget: Budget,
    selection: Selection,
    started: Instant,
    cache: Option<Arc<dyn GbCache>>,
    stats: Mutex<GbStats>,
    cache_hits: AtomicU64,
    cache_misses: AtomicU64,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new(Budget::default())
    }
}

impl std::fmt::Debug for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Engine")
            .field("budget", &self.budget)
            .field("selection", &self.selection)
            .field("cache", &self.cache.is_some())
            .finish()
    }
}

impl Engine {
    pub fn new(budget: Budget) -> Self {
        Engine {
            budget,
            selection: Selection::default(),
            started: Instant::now(),
            cache: None,
            stats: Mutex::new(GbStats::default()),
            cache_hits: AtomicU64::new(0),
            cache_misses: AtomicU64::new(0),
        }
    }

    pub fn unlimited() -> Self {
        Engine::new(Budget::unlimited())
    }

    pub fn with_cache(mut self, cache: Arc<dyn GbCache>) -> Self {
        self.cache = Some(cache);
        self
    }

    pub fn with_selection(mut self, selection: Selection) -> Self {
        self.selection = selection;
        self
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    pub fn selection(&self) -> Selection {
        self.selection
    }

    pub(crate) fn cache(&self) -> Option<&Arc<dyn GbCache>> {
        self.cache.as_ref()
    }

    pub fn check_time(&self) -> Result<(), GbError> {
        if let Some(wall) = self.budget.wall {
            if self.started.elapsed() > wall {
                return Err(GbError::Budget(format!(
                    "wall time limit of {}s exceeded",
                    wall.as_secs()
                )));
            }
        }
        Ok(())
    }

    pub(crate) fn record(&self, s: &GbStats) {
        self.stats.lock().expect("stats lock").absorb(s);
    }

    pub(crate) fn note_cache(&self, hit: bool) {
        if hit {
            self.cache_hits.fetch_add(1, Ordering::Relaxed);
        } else {
            self.cache_misses.fetch_add(1, Ordering::Relaxed);
        }
    }

    /// Totals over every basis computed or replayed through this engine.
    pub fn stats(&self) -> GbStats {
        *self.stats.lock().expect("stats lock")
    }

    pub fn cache_hits(&self) -> u64 {
        self.cache_hits.load(Ordering::Relaxed)
    }

    pub fn cache_misses(&self) -> u64 {
        self.cache_misses.load(Ordering::Relaxed)
    }

    pub fn elapsed(&self) -> Duration {
        self.started.elapsed()
    }
}
