//! Text formats for incidence structures and graphs.
//!
//! Graph file:
//!
//! ```text
//! RIG <n> <m> <p> <seed>
//! <sorted feature indices of vertex 0, space separated>
//! ...
//! <sorted feature indices of vertex n-1>
//! ```
//!
//! A vertex with no features is written as an empty line. `p` uses the
//! shortest decimal form that parses back to the same `f64`.

use std::fmt::Write as _;
use std::io::{BufRead, Write};

use super::incidence::BipartiteIncidence;
use crate::error::{RigError, Result};
use crate::Graph;

#[derive(Debug, Clone, PartialEq)]
pub struct GraphFile {
    pub incidence: BipartiteIncidence,
    pub p: f64,
    pub seed: u64,
}

fn parse_err<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(RigError::Parse { line, msg: msg.into() })
}

impl GraphFile {
    pub fn to_text(&self) -> String {
        let b = &self.incidence;
        let mut out = format!("RIG {} {} {} {}\n", b.n(), b.m(), self.p, self.seed);
        for ws in b.feature_sets() {
            let mut first = true;
            for w in ws {
                if !first {
                    out.push(' ');
                }
                first = false;
                let _ = write!(out, "{w}");
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.split_terminator('\n');
        let header = match lines.next() {
            Some(h) => h,
            None => return parse_err(1, "missing header"),
        };
        let fields: Vec<&str> = header.split(' ').collect();
        if fields.len() != 5 || fields[0] != "RIG" {
            return parse_err(1, "header must be `RIG n m p seed`");
        }
        let n: usize = fields[1].parse().or_else(|_| parse_err(1, "bad n"))?;
        let m: usize = fields[2].parse().or_else(|_| parse_err(1, "bad m"))?;
        let p: f64 = fields[3].parse().or_else(|_| parse_err(1, "bad p"))?;
        let seed: u64 = fields[4].parse().or_else(|_| parse_err(1, "bad seed"))?;
        let mut chose = Vec::with_capacity(n);
        for i in 0..n {
            let line_no = i + 2;
            let line = match lines.next() {
                Some(l) => l,
                None => return parse_err(line_no, format!("expected {n} vertex lines")),
            };
            let mut set = Vec::new();
            if !line.is_empty() {
                for tok in line.split(' ') {
                    let w: u32 = tok.parse().or_else(|_| parse_err(line_no, format!("bad feature `{tok}`")))?;
                    if set.last().is_some_and(|&prev| prev >= w) {
                        return parse_err(line_no, "feature indices must be strictly increasing");
                    }
                    set.push(w);
                }
            }
            chose.push(set);
        }
        if lines.next().is_some() {
            return parse_err(n + 2, "trailing content after vertex lines");
        }
        let incidence = BipartiteIncidence::from_feature_sets(n, m, chose).map_err(|e| RigError::Parse {
            line: 0,
            msg: e.to_string(),
        })?;
        Ok(Self { incidence, p, seed })
    }

    pub fn read_from<R: BufRead>(mut r: R) -> Result<Self> {
        let mut s = String::new();
        r.read_to_string(&mut s)?;
        Self::parse(&s)
    }

    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(self.to_text().as_bytes())?;
        Ok(())
    }
}

/// Edge list: one `u v` line per edge, `u < v`, lexicographic order.
pub fn edge_list_text(g: &Graph) -> String {
    let mut out = String::new();
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::intersection_of;
    use proptest::prelude::*;

    #[test]
    fn exact_text() {
        let incidence =
            BipartiteIncidence::from_feature_sets(3, 4, vec![vec![3, 0], vec![], vec![1]]).unwrap();
        let f = GraphFile { incidence, p: 0.25, seed: 42 };
        assert_eq!(f.to_text(), "RIG 3 4 0.25 42\n0 3\n\n1\n");
        assert_eq!(GraphFile::parse(&f.to_text()).unwrap(), f);
    }

    #[test]
    fn edge_list() {
        let b = BipartiteIncidence::from_feature_sets(4, 2, vec![vec![0], vec![1], vec![0, 1], vec![]]).unwrap();
        assert_eq!(edge_list_text(&intersection_of(&b)), "0 2\n1 2\n");
    }

    #[test]
    fn rejects_malformed() {
        assert!(GraphFile::parse("").is_err());
        assert!(GraphFile::parse("RIG 2 2 0.5\n\n\n").is_err());
        assert!(GraphFile::parse("RIG 2 2 0.5 1\n1 0\n\n").is_err());
        assert!(GraphFile::parse("RIG 2 2 0.5 1\n0\n").is_err());
        assert!(GraphFile::parse("RIG 2 2 0.5 1\n0\n1\n1\n").is_err());
        assert!(GraphFile::parse("RIG 2 2 0.5 1\n2\n\n").is_err());
    }

    proptest! {
        #[test]
        fn round_trip(n in 1usize..12, m in 1usize..12, p in 0.0f64..=1.0, seed in any::<u64>()) {
            let incidence = BipartiteIncidence::sample(n, m, p, seed).unwrap();
            let f = GraphFile { incidence, p, seed };
            let text = f.to_text();
            let back = GraphFile::parse(&text).unwrap();
            prop_assert_eq!(&back, &f);
            prop_assert_eq!(back.to_text(), text);
        }
    }
}
