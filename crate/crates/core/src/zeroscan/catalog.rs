use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::specfun::theta_exact;

/// No nontrivial zero lies at or below this height.
pub const FIRST_ZERO_LOWER_BOUND: f64 = 13.0;

/// Metadata key recording how far a catalog was scanned.
const SCANNED_TO_KEY: &str = "scanned_to";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CatalogSource {
    Computed,
    Loaded,
}

/// Ordered zero heights with the range they are known to be complete on.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroCatalog {
    heights: Vec<f64>,
    source: CatalogSource,
    max_height_scanned: f64,
}

impl ZeroCatalog {
    /// Builds a catalog, checking ordering and the scanned-range bound.
    pub fn new(heights: Vec<f64>, source: CatalogSource, max_height_scanned: f64) -> Result<Self> {
        let mut previous = FIRST_ZERO_LOWER_BOUND;
        for (i, &h) in heights.iter().enumerate() {
            if !h.is_finite() || h <= FIRST_ZERO_LOWER_BOUND {
                return Err(Error::BelowFirstZero { line: i + 1, value: h });
            }
            if i > 0 && h <= previous {
                return Err(Error::Ordering {
                    line: i + 1,
                    value: h,
                    previous,
                });
            }
            previous = h;
        }
        if let Some(&last) = heights.last() {
            if max_height_scanned < last {
                return Err(Error::InvalidParameter {
                    name: "max_height_scanned",
                    reason: format!("{max_height_scanned} is below the last height {last}"),
                });
            }
        }
        Ok(ZeroCatalog {
            heights,
            source,
            max_height_scanned,
        })
    }

    pub fn heights(&self) -> &[f64] {
        &self.heights
    }

    pub fn source(&self) -> CatalogSource {
        self.source
    }

    pub fn max_height_scanned(&self) -> f64 {
        self.max_height_scanned
    }

    pub fn len(&self) -> usize {
        self.heights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heights.is_empty()
    }

    /// N(E): the number of zeros with height ≤ `e`.
    ///
    /// Fails past the scanned range, where the catalog could only give a
    /// lower bound.
    pub fn exact_count(&self, e: f64) -> Result<usize> {
        if e.is_nan() || e > self.max_height_scanned {
            return Err(Error::OutOfRange {
                requested: e,
                scanned: self.max_height_scanned,
            });
        }
        Ok(self.heights.partition_point(|&h| h <= e))
    }

    /// S(E) = N(E) − 1 − θ(E)/π, the fluctuation around the smooth count.
    pub fn s_function(&self, e: f64) -> Result<f64> {
        if !(e >= 10.0) {
            return Err(Error::domain("S(E) height", e, "E >= 10"));
        }
        let n = self.exact_count(e)?;
        Ok(n as f64 - 1.0 - theta_exact(e) / std::f64::consts::PI)
    }

    /// Parses the zero-table text format.
    ///
    /// One height per line; blank lines and `#` comments are skipped. A
    /// `# scanned_to = X` comment sets the completeness bound, otherwise the
    /// last height is used. CSV rows `n,t` (with an optional `n,t` header) are
    /// accepted too, taking the last field as the height.
    pub fn parse_table(text: &str) -> Result<Self> {
        let mut heights = Vec::new();
        let mut scanned_to = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                if let Some((key, value)) = comment.split_once('=') {
                    if key.trim() == SCANNED_TO_KEY {
                        let v = value.trim();
                        scanned_to = Some(v.parse::<f64>().map_err(|_| Error::Parse {
                            line: line_no,
                            text: v.to_string(),
                        })?);
                    }
                }
                continue;
            }
            if line.eq_ignore_ascii_case("n,t") {
                continue;
            }
            let field = line.rsplit(',').next().unwrap_or(line).trim();
            let h: f64 = field.parse().map_err(|_| Error::Parse {
                line: line_no,
                text: field.to_string(),
            })?;
            if !h.is_finite() || h <= FIRST_ZERO_LOWER_BOUND {
                return Err(Error::BelowFirstZero { line: line_no, value: h });
            }
            if let Some(&(_, previous)) = heights.last() {
                if h <= previous {
                    return Err(Error::Ordering {
                        line: line_no,
                        value: h,
                        previous,
                    });
                }
            }
            heights.push((line_no, h));
        }
        let heights: Vec<f64> = heights.into_iter().map(|(_, h)| h).collect();
        let last = heights.last().copied().unwrap_or(0.0);
        let scanned = scanned_to.unwrap_or(last).max(last);
        ZeroCatalog::new(heights, CatalogSource::Loaded, scanned)
    }

    /// Renders the zero-table text format, lossless for every height.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        out.push_str("# nontrivial zero heights on the critical line\n");
        let _ = writeln!(out, "# {SCANNED_TO_KEY} = {}", self.max_height_scanned);
        for h in &self.heights {
            let _ = writeln!(out, "{h}");
        }
        out
    }

    /// CSV export: the scanned range as a comment, then `n,t` with 9 decimals.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {SCANNED_TO_KEY} = {}", self.max_height_scanned);
        out.push_str("n,t\n");
        for (i, h) in self.heights.iter().enumerate() {
            let _ = writeln!(out, "{},{:.9}", i + 1, h);
        }
        out
    }
}

pub fn load_catalog(path: impl AsRef<Path>) -> Result<ZeroCatalog> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    ZeroCatalog::parse_table(&text)
}

pub fn save_catalog(catalog: &ZeroCatalog, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, catalog.to_table()).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}
