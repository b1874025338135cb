use std::str::FromStr;

use thiserror::Error;

use crate::arith::ExactRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("line {line}: expected `id x n_max`, got {text:?}")]
    Shape { line: usize, text: String },
    #[error("line {line}: bad rational {text:?}")]
    Rational { line: usize, text: String },
    #[error("line {line}: bad n_max {text:?}")]
    Count { line: usize, text: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridRecord {
    pub id: String,
    pub x: ExactRational,
    pub n_max: u32,
}

/// Records of the form `wei-aa 2/7 12`; `#` starts a comment.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Grid {
    pub records: Vec<GridRecord>,
}

fn parse_rational(s: &str) -> Option<ExactRational> {
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: i64 = n.parse().ok()?;
    let d: i64 = d.parse().ok()?;
    ExactRational::new(n, d).ok()
}

impl FromStr for Grid {
    type Err = GridError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut records = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let fields: Vec<&str> = body.split_whitespace().collect();
            let [id, x, n] = fields[..] else {
                return Err(GridError::Shape {
                    line,
                    text: body.to_string(),
                });
            };
            let x = parse_rational(x).ok_or_else(|| GridError::Rational {
                line,
                text: x.to_string(),
            })?;
            let n_max = n.parse().map_err(|_| GridError::Count {
                line,
                text: n.to_string(),
            })?;
            records.push(GridRecord {
                id: id.to_string(),
                x,
                n_max,
            });
        }
        Ok(Grid { records })
    }
}

impl Grid {
    pub fn for_id<'a>(&'a self, id: &'a str) -> impl Iterator<Item = &'a GridRecord> + 'a {
        self.records.iter().filter(move |r| r.id == id)
    }
}
