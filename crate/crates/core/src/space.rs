//! Per-component space accounting.
//!
//! Every persistent structure reports `bits_used()`: the bits held in its
//! backing vectors (payload plus directories), excluding allocator slack and
//! struct headers. Oracles aggregate those into a [`SpaceReport`].

/// Component-by-component bit counts for a built oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceReport {
    pub components: Vec<(String, u64)>,
    pub total: u64,
}

impl SpaceReport {
    pub fn new(components: Vec<(String, u64)>) -> Self {
        let total = components.iter().map(|(_, b)| *b).sum();
        SpaceReport { components, total }
    }

    pub fn component(&self, name: &str) -> Option<u64> {
        self.components
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, b)| *b)
    }

    /// Bits per vertex, the figure of merit for the space-trend checks.
    pub fn bits_per_vertex(&self, n: usize) -> f64 {
        self.total as f64 / n.max(1) as f64
    }
}

impl std::fmt::Display for SpaceReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "component,bits")?;
        for (name, bits) in &self.components {
            writeln!(f, "{name},{bits}")?;
        }
        write!(f, "total,{}", self.total)
    }
}
