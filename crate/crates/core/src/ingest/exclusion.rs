use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::Treebank;
use crate::measures::Measure;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct ExclusionConfig {
    /// Treebanks with fewer distinct feature keys count as unannotated.
    pub min_feature_keys: usize,
    /// Treebanks whose writing system makes WS meaningless.
    pub script_deny: BTreeSet<String>,
    /// When nonempty, every treebank not listed here is script-excluded.
    pub script_allow: BTreeSet<String>,
}

impl Default for ExclusionConfig {
    fn default() -> Self {
        ExclusionConfig {
            min_feature_keys: 3,
            script_deny: ["zh_gsd", "ja_gsd"].iter().map(|s| s.to_string()).collect(),
            script_allow: BTreeSet::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExclusionReason {
    NoMorphFeatures,
    NonAlphabeticScript,
}

impl ExclusionReason {
    pub fn as_str(self) -> &'static str {
        match self {
            ExclusionReason::NoMorphFeatures => "no-morph-features",
            ExclusionReason::NonAlphabeticScript => "non-alphabetic-script",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "no-morph-features" => Some(ExclusionReason::NoMorphFeatures),
            "non-alphabetic-script" => Some(ExclusionReason::NonAlphabeticScript),
            _ => None,
        }
    }

    /// Whether this reason removes a treebank from analyses of `measure`.
    /// Script exclusions only touch the writing-system sensitive WS.
    pub fn affects(self, measure: Measure) -> bool {
        match self {
            ExclusionReason::NoMorphFeatures => true,
            ExclusionReason::NonAlphabeticScript => measure == Measure::Ws,
        }
    }
}

impl fmt::Display for ExclusionReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Excluded {
    pub id: String,
    pub reasons: Vec<ExclusionReason>,
}

impl Excluded {
    pub fn affects(&self, measure: Measure) -> bool {
        self.reasons.iter().any(|r| r.affects(measure))
    }
}

/// Result of [`apply_exclusions`]: `kept` treebanks have no exclusion at all,
/// `excluded` lists every other treebank with its reasons.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Partition {
    pub kept: Vec<String>,
    pub excluded: Vec<Excluded>,
    order: Vec<String>,
}

impl Partition {
    pub fn reasons(&self, id: &str) -> &[ExclusionReason] {
        self.excluded
            .iter()
            .find(|e| e.id == id)
            .map(|e| e.reasons.as_slice())
            .unwrap_or(&[])
    }

    pub fn is_eligible(&self, id: &str, measure: Measure) -> bool {
        self.order.iter().any(|o| o == id) && !self.reasons(id).iter().any(|r| r.affects(measure))
    }

    /// Treebanks usable for `measure`, in input order.
    pub fn eligible(&self, measure: Measure) -> Vec<&str> {
        self.order
            .iter()
            .map(String::as_str)
            .filter(|id| self.is_eligible(id, measure))
            .collect()
    }

    /// Treebanks excluded from `measure`, in input order.
    pub fn excluded_for(&self, measure: Measure) -> Vec<&str> {
        self.order
            .iter()
            .map(String::as_str)
            .filter(|id| !self.is_eligible(id, measure))
            .collect()
    }
}

pub fn apply_exclusions<'a, I>(treebanks: I, rules: &ExclusionConfig) -> Partition
where
    I: IntoIterator<Item = &'a Treebank>,
{
    let mut partition = Partition::default();
    for tb in treebanks {
        let mut reasons = Vec::new();
        if tb.n_feature_keys < rules.min_feature_keys {
            reasons.push(ExclusionReason::NoMorphFeatures);
        }
        let not_allowed = !rules.script_allow.is_empty() && !rules.script_allow.contains(&tb.id);
        if rules.script_deny.contains(&tb.id) || not_allowed {
            reasons.push(ExclusionReason::NonAlphabeticScript);
        }
        partition.order.push(tb.id.clone());
        if reasons.is_empty() {
            partition.kept.push(tb.id.clone());
        } else {
            log::info!(
                "excluding {}: {}",
                tb.id,
                reasons.iter().map(|r| r.as_str()).collect::<Vec<_>>().join(",")
            );
            partition.excluded.push(Excluded { id: tb.id.clone(), reasons });
        }
    }
    partition
}
