use std::sync::Arc;

use serde::Deserialize;

use super::group::FiniteGroup;
use crate::error::{Error, Result};

/// Group-spec grammar:
///
/// ```text
/// spec := "cyclic:" <n> | "product:" spec "," spec | "q8" | "table:" <path>
/// ```
///
/// A `table:` path runs to the next comma or the end of the input. The file
/// holds either a bare array of rows or `{"name": ..., "table": [[...]]}`.
pub fn build_group(spec: &str) -> Result<FiniteGroup> {
    let mut p = Parser { src: spec, pos: 0 };
    let g = p.spec()?;
    if p.pos != spec.len() {
        return Err(Error::Parse {
            pos: p.pos,
            msg: format!("trailing input `{}`", &spec[p.pos..]),
        });
    }
    Ok(g)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum TableFile {
    Bare(Vec<Vec<usize>>),
    Named {
        name: Option<String>,
        table: Vec<Vec<usize>>,
    },
}

impl Parser<'_> {
    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn eat(&mut self, lit: &str) -> bool {
        if self.rest().starts_with(lit) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn spec(&mut self) -> Result<FiniteGroup> {
        let start = self.pos;
        if self.eat("cyclic:") {
            let digits: String = self
                .rest()
                .chars()
                .take_while(|c| c.is_ascii_digit())
                .collect();
            if digits.is_empty() {
                return Err(Error::Parse {
                    pos: self.pos,
                    msg: "expected the order of the cyclic group".into(),
                });
            }
            let at = self.pos;
            self.pos += digits.len();
            let n: usize = digits.parse().map_err(|_| Error::Parse {
                pos: at,
                msg: "order too large".into(),
            })?;
            if n == 0 {
                return Err(Error::Parse {
                    pos: at,
                    msg: "cyclic order must be positive".into(),
                });
            }
            return FiniteGroup::cyclic(n);
        }
        if self.eat("product:") {
            let a = self.spec()?;
            if !self.eat(",") {
                return Err(Error::Parse {
                    pos: self.pos,
                    msg: "expected `,` between product factors".into(),
                });
            }
            let b = self.spec()?;
            return FiniteGroup::product(Arc::new(a), Arc::new(b));
        }
        if self.eat("q8") {
            return Ok(FiniteGroup::quaternion());
        }
        if self.eat("table:") {
            let path: String = self.rest().chars().take_while(|&c| c != ',').collect();
            if path.is_empty() {
                return Err(Error::Parse {
                    pos: self.pos,
                    msg: "expected a table path".into(),
                });
            }
            self.pos += path.len();
            let text =
                std::fs::read_to_string(&path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
            let parsed: TableFile = serde_json::from_str(&text)
                .map_err(|e| Error::InvalidTable(format!("{path}: {e}")))?;
            let (name, rows) = match parsed {
                TableFile::Bare(rows) => (format!("table:{path}"), rows),
                TableFile::Named { name, table } => {
                    (name.unwrap_or_else(|| format!("table:{path}")), table)
                }
            };
            return FiniteGroup::from_table(name, rows);
        }
        Err(Error::Parse {
            pos: start,
            msg: format!("unknown group spec `{}`", self.rest()),
        })
    }
}
