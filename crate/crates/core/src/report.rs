//! Text rendering of closure reports.

use std::fmt::{self, Write as _};

use crate::closure::{EasinessReport, Verdict};

fn join<T: fmt::Display>(xs: &[T], sep: &str) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

impl Verdict {
    pub fn label(&self, l0: usize) -> String {
        match self {
            Verdict::Easy => "EASY (proven)".to_string(),
            Verdict::NonEasyCandidate => format!("NON-EASY CANDIDATE up to l0={l0}"),
        }
    }

    pub fn key(&self) -> &'static str {
        match self {
            Verdict::Easy => "easy",
            Verdict::NonEasyCandidate => "non-easy-candidate",
        }
    }
}

impl fmt::Display for EasinessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "closure stable at l0={} after {} passes", self.l0, self.passes)?;
        for (l, d) in self.dims.iter().enumerate() {
            writeln!(f, "  dim (0,{l}) = {d}")?;
        }
        for (i, g) in self.generators.iter().enumerate() {
            writeln!(f, "generator {}: {}", i + 1, g.generator)?;
            for (p, inside) in &g.summands {
                writeln!(f, "  {} {}", if *inside { "contains   " } else { "missing    " }, p)?;
            }
            writeln!(f, "  verdict: {}", g.verdict.label(self.l0))?;
        }
        if self.degeneration.is_empty() {
            writeln!(f, "no rational degeneration points")?;
        } else {
            writeln!(f, "pivots vanish at d = {}", join(&self.degeneration, ", "))?;
        }
        let mut kv = String::new();
        writeln!(kv, "[closure]").ok();
        writeln!(kv, "l0={}", self.l0).ok();
        writeln!(kv, "passes={}", self.passes).ok();
        writeln!(kv, "dims={}", join(&self.dims, ",")).ok();
        for (i, g) in self.generators.iter().enumerate() {
            writeln!(kv, "verdict.{}={}", i + 1, g.verdict.key()).ok();
            writeln!(kv, "summands_contained.{}={}/{}", i + 1, g.contained(), g.summands.len()).ok();
        }
        writeln!(kv, "degeneration={}", join(&self.degeneration, ",")).ok();
        f.write_str(&kv)
    }
}
