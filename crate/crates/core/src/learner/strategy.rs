//! Learning strategies and the registry that selects them by name.
//!
//! A strategy decides whether the table is also kept column-closed and which
//! suffixes a counterexample contributes to `S`.

use std::fmt;
use std::sync::Arc;

use indexmap::IndexMap;

use crate::hankel::HankelMask;
use crate::word::Word;

pub trait LearningStrategy: Send + Sync {
    /// Registry key, also used in logs and summaries.
    fn name(&self) -> &'static str;

    /// Whether `extract` also closes the table under columns.
    fn closes_columns(&self) -> bool;

    /// Unsound strategies run only when the caller opts in explicitly.
    fn is_sound(&self) -> bool {
        true
    }

    /// The word whose suffixes are added to `S` for counterexample `w`.
    fn counterexample_suffix(&self, mask: &HankelMask, w: &Word) -> Word;
}

impl fmt::Debug for dyn LearningStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Let `p` be the longest prefix of `w` in `P`. Returns the last
/// `|w| − 1 − |p|` symbols of `w`, or `ε` when that length is negative.
pub fn tail_after_longest_prefix(mask: &HankelMask, w: &Word) -> Word {
    let p = (0..=w.len())
        .rev()
        .find(|&k| mask.prefixes().contains(&w.prefix(k)))
        .unwrap_or(0);
    match w.len().checked_sub(p + 1) {
        Some(n) => w.suffix(n),
        None => Word::empty(),
    }
}

/// Row- and column-closed tables; counterexamples contribute the tail after
/// their longest prefix in `P`. Every hypothesis agrees with the whole table.
#[derive(Debug, Clone, Copy, Default)]
pub struct ColumnClosed;

impl LearningStrategy for ColumnClosed {
    fn name(&self) -> &'static str {
        "column-closed"
    }

    fn closes_columns(&self) -> bool {
        true
    }

    fn counterexample_suffix(&self, mask: &HankelMask, w: &Word) -> Word {
        tail_after_longest_prefix(mask, w)
    }
}

/// Row-closed tables only; counterexamples contribute all their suffixes.
/// Hypotheses agree with the table on the `ε` row.
#[derive(Debug, Clone, Copy, Default)]
pub struct VanHeerdt;

impl LearningStrategy for VanHeerdt {
    fn name(&self) -> &'static str {
        "van-heerdt"
    }

    fn closes_columns(&self) -> bool {
        false
    }

    fn counterexample_suffix(&self, _mask: &HankelMask, w: &Word) -> Word {
        w.clone()
    }
}

/// Row-closed tables with the short counterexample tail of [`ColumnClosed`].
/// A counterexample may then leave the mask unchanged, so the learner can loop
/// on it forever.
#[derive(Debug, Clone, Copy, Default)]
pub struct Hybrid;

impl LearningStrategy for Hybrid {
    fn name(&self) -> &'static str {
        "hybrid"
    }

    fn closes_columns(&self) -> bool {
        false
    }

    fn is_sound(&self) -> bool {
        false
    }

    fn counterexample_suffix(&self, mask: &HankelMask, w: &Word) -> Word {
        tail_after_longest_prefix(mask, w)
    }
}

/// Strategies by name, in registration order.
#[derive(Clone, Default)]
pub struct StrategyRegistry {
    entries: IndexMap<&'static str, Arc<dyn LearningStrategy>>,
}

impl StrategyRegistry {
    pub fn empty() -> Self {
        Self::default()
    }

    /// `column-closed`, `van-heerdt`, `hybrid`.
    pub fn with_defaults() -> Self {
        let mut r = Self::empty();
        r.register(Arc::new(ColumnClosed));
        r.register(Arc::new(VanHeerdt));
        r.register(Arc::new(Hybrid));
        r
    }

    /// Adds or replaces a strategy; returns the one it replaced.
    pub fn register(&mut self, strategy: Arc<dyn LearningStrategy>) -> Option<Arc<dyn LearningStrategy>> {
        self.entries.insert(strategy.name(), strategy)
    }

    pub fn get(&self, name: &str) -> Option<Arc<dyn LearningStrategy>> {
        self.entries.get(name).cloned()
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }
}

impl fmt::Debug for StrategyRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.keys()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Alphabet;

    fn setup(rows: &[&str]) -> (Alphabet, HankelMask) {
        let al = Alphabet::from_chars("ab").unwrap();
        let p: Vec<Word> = rows.iter().map(|w| al.parse_word(w).unwrap()).collect();
        let mask = HankelMask::from_words(&p, &[]).unwrap();
        (al, mask)
    }

    #[test]
    fn tail_when_counterexample_is_a_row() {
        let (al, mask) = setup(&["", "a", "ab", "b"]);
        let s = tail_after_longest_prefix(&mask, &al.parse_word("ab").unwrap());
        assert_eq!(s, Word::empty());
    }

    #[test]
    fn tail_after_short_prefix() {
        let (al, mask) = setup(&["", "a"]);
        let s = tail_after_longest_prefix(&mask, &al.parse_word("aba").unwrap());
        assert_eq!(al.render(&s), "a");
        let s = tail_after_longest_prefix(&mask, &al.parse_word("bab").unwrap());
        assert_eq!(al.render(&s), "ab");
    }

    #[test]
    fn van_heerdt_uses_whole_word() {
        let (al, mut mask) = setup(&["", "a"]);
        let w = al.parse_word("aba").unwrap();
        let s = VanHeerdt.counterexample_suffix(&mask, &w);
        let added: Vec<String> = mask.add_suffixes(&s).iter().map(|x| al.render(x)).collect();
        assert_eq!(added, ["a", "ba", "aba"]);
    }

    #[test]
    fn registry_lookup() {
        let r = StrategyRegistry::with_defaults();
        assert_eq!(r.names().collect::<Vec<_>>(), ["column-closed", "van-heerdt", "hybrid"]);
        assert!(r.get("column-closed").unwrap().closes_columns());
        assert!(!r.get("hybrid").unwrap().is_sound());
        assert!(r.get("balle").is_none());
    }
}
