//! Text format for drawings.
//!
//! ```text
//! n = 3
//! edge 0 = 0 1
//! edge 1 = 1 2
//! edge 2 = 2 0
//! rot v 0 = 0 9
//! rot v 1 = 1 4
//! rot v 2 = 5 8
//! ```
//!
//! Crossed drawings add `crossing <id> = <e1> <e2>` records and `rot x <id>`
//! lines with exactly four darts.  Serialization is canonical: records sorted
//! by id and every rotation rotated so its smallest dart comes first.

use super::{Crossing, Drawing, Edge};
use crate::error::{Error, Result};

impl Drawing {
    pub fn parse(text: &str) -> Result<Drawing> {
        let mut n: Option<usize> = None;
        let mut edges: Vec<(usize, Edge)> = Vec::new();
        let mut crossings: Vec<(usize, Crossing)> = Vec::new();
        let mut vrots: Vec<(usize, Vec<usize>)> = Vec::new();
        let mut xrots: Vec<(usize, Vec<usize>)> = Vec::new();

        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (head, value) = content.split_once('=').ok_or_else(|| Error::Parse {
                line,
                msg: "expected `key = value`".into(),
            })?;
            let key: Vec<&str> = head.split_whitespace().collect();
            let nums: Vec<usize> = value
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>().map_err(|_| Error::Parse {
                        line,
                        msg: format!("invalid integer `{t}`"),
                    })
                })
                .collect::<Result<_>>()?;
            let expect = |want: usize, what: &str| -> Result<()> {
                if nums.len() != want {
                    return Err(Error::Parse {
                        line,
                        msg: format!("{what} expects {want} value(s), got {}", nums.len()),
                    });
                }
                Ok(())
            };
            match key.as_slice() {
                ["n"] => {
                    expect(1, "n")?;
                    n = Some(nums[0]);
                }
                ["edge", id] => {
                    expect(2, "edge")?;
                    let id = id.parse().map_err(|_| Error::Parse {
                        line,
                        msg: "invalid edge id".into(),
                    })?;
                    edges.push((id, Edge { u: nums[0], v: nums[1] }));
                }
                ["crossing", id] => {
                    expect(2, "crossing")?;
                    let id = id.parse().map_err(|_| Error::Parse {
                        line,
                        msg: "invalid crossing id".into(),
                    })?;
                    crossings.push((id, Crossing { e1: nums[0], e2: nums[1] }));
                }
                ["rot", "v", id] => {
                    let id = id.parse().map_err(|_| Error::Parse {
                        line,
                        msg: "invalid vertex id".into(),
                    })?;
                    vrots.push((id, nums));
                }
                ["rot", "x", id] => {
                    expect(4, "rot x")?;
                    let id = id.parse().map_err(|_| Error::Parse {
                        line,
                        msg: "invalid crossing id".into(),
                    })?;
                    xrots.push((id, nums));
                }
                _ => {
                    return Err(Error::Parse {
                        line,
                        msg: format!("unknown record `{}`", head.trim()),
                    })
                }
            }
        }

        let n = n.ok_or(Error::Parse { line: 0, msg: "missing `n`".into() })?;
        fn collect<T>(mut items: Vec<(usize, T)>, what: &str) -> Result<Vec<T>> {
            items.sort_by_key(|(id, _)| *id);
            for (i, (id, _)) in items.iter().enumerate() {
                if *id != i {
                    return Err(Error::Parse {
                        line: 0,
                        msg: format!(
                            "{what} ids must be consecutive from 0 (missing or duplicate id {i})"
                        ),
                    });
                }
            }
            Ok(items.into_iter().map(|(_, x)| x).collect())
        }
        let edges = collect(edges, "edge")?;
        let crossings = collect(crossings, "crossing")?;
        let mut vertex_rot = collect(vrots, "rot v")?;
        let xrot_lists = collect(xrots, "rot x")?;
        if vertex_rot.len() != n {
            // Allow omitted empty rotations only when nothing is missing.
            while vertex_rot.len() < n {
                vertex_rot.push(Vec::new());
            }
        }
        if xrot_lists.len() != crossings.len() {
            return Err(Error::Parse {
                line: 0,
                msg: "every crossing needs a `rot x` record".into(),
            });
        }
        let crossing_rot: Vec<[usize; 4]> = xrot_lists
            .into_iter()
            .map(|v| [v[0], v[1], v[2], v[3]])
            .collect();
        Drawing::new(n, edges, crossings, vertex_rot, crossing_rot)
    }

    /// Canonical serialization; `parse(serialize(d))` reproduces `d` exactly.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("n = {}\n", self.n));
        for (i, e) in self.edges.iter().enumerate() {
            out.push_str(&format!("edge {} = {} {}\n", i, e.u, e.v));
        }
        for (i, c) in self.crossings.iter().enumerate() {
            out.push_str(&format!("crossing {} = {} {}\n", i, c.e1, c.e2));
        }
        let canon = |rot: &[usize]| -> Vec<usize> {
            if rot.is_empty() {
                return Vec::new();
            }
            let min_at = rot
                .iter()
                .enumerate()
                .min_by_key(|(_, &d)| d)
                .map(|(i, _)| i)
                .unwrap();
            (0..rot.len()).map(|i| rot[(min_at + i) % rot.len()]).collect()
        };
        let fmt = |darts: &[usize]| {
            darts
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        for v in 0..self.n {
            out.push_str(&format!("rot v {} = {}\n", v, fmt(&canon(&self.vertex_rot[v]))));
        }
        for x in 0..self.crossings.len() {
            out.push_str(&format!("rot x {} = {}\n", x, fmt(&canon(&self.crossing_rot[x]))));
        }
        out
    }

    /// Equality up to cyclic rotation of the rotation lists.
    pub fn canonical_eq(&self, other: &Drawing) -> bool {
        self.serialize() == other.serialize()
    }
}
