use std::fmt;

use serde::{Deserialize, Serialize};

/// `"exact"` for terminating identities, otherwise a digit count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DigitsMatched {
    Count(i64),
    Label(String),
}

impl DigitsMatched {
    pub fn exact() -> Self {
        DigitsMatched::Label("exact".into())
    }
}

impl fmt::Display for DigitsMatched {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DigitsMatched::Count(n) => write!(f, "{n}"),
            DigitsMatched::Label(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip(String),
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => f.write_str("PASS"),
            Status::Fail => f.write_str("FAIL"),
            Status::Skip(reason) => write!(f, "SKIP({reason})"),
        }
    }
}

/// One verification outcome. Field order is the JSON key order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub id: String,
    pub kind: String,
    pub params: String,
    pub claimed: String,
    pub computed: String,
    pub abs_err: String,
    pub digits_matched: DigitsMatched,
    pub terms_used: u32,
    pub bound_kind: String,
    pub status: String,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn is_pass(&self) -> bool {
        self.status == "PASS"
    }

    pub fn is_fail(&self) -> bool {
        self.status == "FAIL"
    }

    pub fn is_skip(&self) -> bool {
        self.status.starts_with("SKIP")
    }

    /// One human-readable line.
    pub fn line(&self) -> String {
        let params = if self.params.is_empty() {
            String::new()
        } else {
            format!(" [{}]", self.params)
        };
        format!(
            "{:<5} {}{} digits={} terms={} {} err={} ({} ms)",
            if self.is_skip() { "SKIP" } else { &self.status },
            self.id,
            params,
            self.digits_matched,
            self.terms_used,
            self.bound_kind,
            self.abs_err,
            self.elapsed_ms
        ) + &if self.is_skip() {
            format!(" {}", self.status)
        } else {
            String::new()
        }
    }
}

pub fn to_json(reports: &[VerificationReport]) -> String {
    let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<Vec<VerificationReport>, serde_json::Error> {
    serde_json::from_str(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(digits: DigitsMatched) -> VerificationReport {
        VerificationReport {
            id: "x".into(),
            kind: "FiniteExact".into(),
            params: "x=1/3, n=2".into(),
            claimed: "9.5357142857e-1".into(),
            computed: "9.5357142857e-1".into(),
            abs_err: "0e0".into(),
            digits_matched: digits,
            terms_used: 3,
            bound_kind: "exact".into(),
            status: Status::Skip("pole".into()).to_string(),
            elapsed_ms: 0,
        }
    }

    #[test]
    fn key_order_and_round_trip() {
        let reports = vec![
            sample(DigitsMatched::exact()),
            sample(DigitsMatched::Count(41)),
        ];
        let text = to_json(&reports);
        let keys: Vec<_> = text
            .lines()
            .take(13)
            .filter_map(|l| {
                l.trim()
                    .strip_prefix('"')
                    .map(|r| r.split('"').next().unwrap().to_string())
            })
            .collect();
        assert_eq!(
            keys,
            [
                "id",
                "kind",
                "params",
                "claimed",
                "computed",
                "abs_err",
                "digits_matched",
                "terms_used",
                "bound_kind",
                "status",
                "elapsed_ms"
            ]
        );
        let back = from_json(&text).unwrap();
        assert_eq!(back, reports);
        assert_eq!(to_json(&back), text);
    }
}
