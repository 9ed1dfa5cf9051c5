//! Structured pass/fail reports for certification routines.
//!
//! Every nontrivial construction in this crate re-verifies its own output
//! (tilings, return-time counts, conjugacy identities, ...). The outcome is
//! collected in a [`CheckReport`] so callers can serialize the evidence
//! instead of trusting a bare boolean.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckItem {
    pub name: String,
    pub status: CheckStatus,
    /// Human-readable evidence: the exact quantities that were compared.
    pub detail: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct CheckReport {
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn new() -> Self {
        CheckReport { items: Vec::new() }
    }

    pub fn record(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.items.push(CheckItem {
            name: name.into(),
            status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
            detail: detail.into(),
        });
    }

    pub fn pass(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.record(name, true, detail);
    }

    pub fn fail(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.record(name, false, detail);
    }

    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|i| i.status == CheckStatus::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| i.status == CheckStatus::Fail)
    }

    pub fn first_failure(&self) -> Option<&CheckItem> {
        self.failures().next()
    }

    /// Merge another report under a name prefix.
    pub fn absorb(&mut self, prefix: &str, other: CheckReport) {
        for item in other.items {
            self.items.push(CheckItem {
                name: format!("{prefix}.{}", item.name),
                status: item.status,
                detail: item.detail,
            });
        }
    }

    pub fn summary(&self) -> String {
        let total = self.items.len();
        let passed = self
            .items
            .iter()
            .filter(|i| i.status == CheckStatus::Pass)
            .count();
        format!("{passed}/{total} checks passed")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_tracks_failures() {
        let mut r = CheckReport::new();
        r.pass("a", "fine");
        assert!(r.all_passed());
        r.fail("b", "broken");
        assert!(!r.all_passed());
        assert_eq!(r.first_failure().unwrap().name, "b");
        assert_eq!(r.summary(), "1/2 checks passed");

        let mut outer = CheckReport::new();
        outer.absorb("inner", r);
        assert_eq!(outer.items[1].name, "inner.b");
    }
}
