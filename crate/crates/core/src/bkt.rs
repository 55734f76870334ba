//! Best-known minimum distances for linear codes over a fixed prime field.
//!
//! Tables are read from CSV with one `p,n,k,d` record per line and no header.
//! Lines starting with `#` and blank lines are ignored.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BktTable {
    p: u32,
    source: String,
    entries: BTreeMap<(usize, usize), u32>,
}

/// Comparison of a constructed code against the table at the same (n, k).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Improves,
    Ties,
    Below,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Improves => "improves",
            Verdict::Ties => "ties",
            Verdict::Below => "below",
            Verdict::Unknown => "unknown",
        })
    }
}

impl BktTable {
    pub fn empty(p: u32) -> Self {
        BktTable {
            p,
            source: String::new(),
            entries: BTreeMap::new(),
        }
    }

    /// Reads a CSV file, keeping only records for base field p.
    pub fn ingest(path: &Path, p: u32) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            msg: e.to_string(),
        })?;
        let mut t = Self::parse(&text, p)?;
        t.source = path.display().to_string();
        Ok(t)
    }

    pub fn parse(text: &str, p: u32) -> Result<Self> {
        let mut t = Self::empty(p);
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |msg: String| Error::TableFormat { line: i + 1, msg };
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != 4 {
                return Err(bad(format!("expected p,n,k,d, got {line:?}")));
            }
            let nums = fields
                .iter()
                .map(|s| s.parse::<u64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| bad(format!("{e} in {line:?}")))?;
            let (rp, n, k, d) = (nums[0], nums[1] as usize, nums[2] as usize, nums[3] as u32);
            if k > n || k == 0 || d as usize > n {
                return Err(bad(format!("impossible parameters [{n},{k},{d}]")));
            }
            if rp != p as u64 {
                continue;
            }
            t.insert(n, k, d);
        }
        t.check_monotone()?;
        Ok(t)
    }

    /// Adds an entry; an existing entry keeps the larger distance.
    pub fn insert(&mut self, n: usize, k: usize, d: u32) {
        let e = self.entries.entry((n, k)).or_insert(d);
        *e = (*e).max(d);
    }

    fn check_monotone(&self) -> Result<()> {
        for (&(n, k), &d) in &self.entries {
            for (n2, k2) in [(n, k + 1), (n + 1, k)] {
                if let Some(&d2) = self.entries.get(&(n2, k2)) {
                    let ok = if n2 == n { d >= d2 } else { d2 >= d };
                    if !ok {
                        return Err(Error::TableMonotonicity {
                            n1: n,
                            k1: k,
                            d1: d,
                            n2,
                            k2,
                            d2,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lookup(&self, n: usize, k: usize) -> Option<u32> {
        self.entries.get(&(n, k)).copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.entries.iter().map(|(&(n, k), &d)| (n, k, d))
    }

    pub fn verdict(&self, n: usize, k: usize, d_lb: usize) -> Verdict {
        match self.lookup(n, k) {
            None => Verdict::Unknown,
            Some(best) => match (d_lb as u64).cmp(&(best as u64)) {
                std::cmp::Ordering::Greater => Verdict::Improves,
                std::cmp::Ordering::Equal => Verdict::Ties,
                std::cmp::Ordering::Less => Verdict::Below,
            },
        }
    }

    /// `p,n,k,d` lines in key order.
    pub fn to_csv(&self) -> String {
        self.entries()
            .map(|(n, k, d)| format!("{},{n},{k},{d}\n", self.p))
            .collect()
    }
}
