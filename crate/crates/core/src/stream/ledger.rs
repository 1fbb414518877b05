/// Constant `B₀` in the space budget `B₀ · n · ln n / ε²`.
///
/// Pinned from measurements on planted instances at n = 10³ and 10⁴; the
/// two sketch sets alone account for `2C = 16`.
pub const SPACE_BUDGET_CONSTANT: f64 = 20.0;

/// `B₀ · n · ln n / ε²` words, with `ε` the sketch accuracy.
pub fn space_budget(n: usize, epsilon: f64) -> u64 {
    (SPACE_BUDGET_CONSTANT * n as f64 * (n.max(2) as f64).ln() / (epsilon * epsilon)).ceil() as u64
}

/// Word counts of the streaming state, with a high-water mark.
///
/// Stored edge entries cost 2 words, each sketch entry 1 word, and each live
/// `(vertex, level)` pair plus each degree counter 1 word.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SpaceLedger {
    sketch_words: u64,
    edge_words: u64,
    bookkeeping_words: u64,
    high_water: u64,
}

impl SpaceLedger {
    pub(crate) fn new(sketch_words: u64, bookkeeping_words: u64) -> Self {
        let mut ledger = SpaceLedger { sketch_words, edge_words: 0, bookkeeping_words, high_water: 0 };
        ledger.touch();
        ledger
    }

    pub fn current(&self) -> u64 {
        self.sketch_words + self.edge_words + self.bookkeeping_words
    }

    pub fn high_water(&self) -> u64 {
        self.high_water
    }

    pub fn sketch_words(&self) -> u64 {
        self.sketch_words
    }

    pub fn edge_words(&self) -> u64 {
        self.edge_words
    }

    pub fn bookkeeping_words(&self) -> u64 {
        self.bookkeeping_words
    }

    pub(crate) fn store_edge(&mut self) {
        self.edge_words += 2;
        self.touch();
    }

    pub(crate) fn free_edges(&mut self, entries: usize) {
        self.edge_words -= 2 * entries as u64;
    }

    pub(crate) fn drop_levels(&mut self, count: u32) {
        self.bookkeeping_words -= count as u64;
    }

    fn touch(&mut self) {
        self.high_water = self.high_water.max(self.current());
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpaceReport {
    pub high_water_words: u64,
    pub budget_words: u64,
    pub current_words: u64,
    pub sketch_words: u64,
    pub edge_words: u64,
    pub bookkeeping_words: u64,
}

impl SpaceReport {
    pub fn within_budget(&self) -> bool {
        self.high_water_words <= self.budget_words
    }
}
