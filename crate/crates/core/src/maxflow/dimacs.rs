//! DIMACS max-flow text format: `c` comments, one `p max N M` line,
//! `n ID s` and `n ID t` designators, and `M` lines `a U V CAP`. Node ids
//! are 1-based.

use std::fmt::Write;

use super::{Arc, Capacity, Network};
use crate::error::{Error, Result};

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn field<'a>(it: &mut impl Iterator<Item = &'a str>, line: usize, what: &str) -> Result<&'a str> {
    it.next().ok_or_else(|| perr(line, format!("missing {what}")))
}

fn node_id(tok: &str, n: usize, line: usize) -> Result<usize> {
    let id: usize = tok.parse().map_err(|_| perr(line, format!("bad node id `{tok}`")))?;
    if id == 0 || id > n {
        return Err(perr(line, format!("node id {id} outside 1..={n}")));
    }
    Ok(id - 1)
}

pub fn parse_dimacs(text: &str) -> Result<Network<f64>> {
    let mut header: Option<(usize, usize)> = None;
    let (mut s, mut t) = (None, None);
    let mut arcs = Vec::new();
    let mut last_line = 0;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        last_line = line;
        let mut it = raw.split_whitespace();
        let Some(tag) = it.next() else { continue };
        match tag {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(perr(line, "duplicate problem line"));
                }
                if field(&mut it, line, "problem type")? != "max" {
                    return Err(perr(line, "problem type must be `max`"));
                }
                let n: usize = field(&mut it, line, "node count")?.parse().map_err(|_| perr(line, "bad node count"))?;
                let m: usize = field(&mut it, line, "arc count")?.parse().map_err(|_| perr(line, "bad arc count"))?;
                if n < 2 {
                    return Err(perr(line, "need at least 2 nodes"));
                }
                header = Some((n, m));
            }
            "n" => {
                let (n, _) = header.ok_or_else(|| perr(line, "`n` line before problem line"))?;
                let id = node_id(field(&mut it, line, "node id")?, n, line)?;
                let slot = match field(&mut it, line, "node role")? {
                    "s" => &mut s,
                    "t" => &mut t,
                    other => return Err(perr(line, format!("node role must be s or t, got `{other}`"))),
                };
                if slot.replace(id).is_some() {
                    return Err(perr(line, "duplicate node designator"));
                }
            }
            "a" => {
                let (n, m) = header.ok_or_else(|| perr(line, "`a` line before problem line"))?;
                let from = node_id(field(&mut it, line, "arc tail")?, n, line)?;
                let to = node_id(field(&mut it, line, "arc head")?, n, line)?;
                let tok = field(&mut it, line, "capacity")?;
                let cap: f64 = tok.parse().map_err(|_| perr(line, format!("bad capacity `{tok}`")))?;
                if !(cap >= 0.0 && cap.is_finite()) {
                    return Err(perr(line, format!("capacity must be finite and nonnegative, got {tok}")));
                }
                if arcs.len() == m {
                    return Err(perr(line, format!("more than the declared {m} arcs")));
                }
                arcs.push(Arc { from, to, cap });
            }
            other => return Err(perr(line, format!("unknown line type `{other}`"))),
        }
        if let Some(extra) = it.next() {
            return Err(perr(line, format!("unexpected trailing token `{extra}`")));
        }
    }
    let (n, m) = header.ok_or_else(|| perr(last_line, "missing problem line"))?;
    if arcs.len() != m {
        return Err(perr(last_line, format!("declared {m} arcs, found {}", arcs.len())));
    }
    let s = s.ok_or_else(|| perr(last_line, "missing source designator"))?;
    let t = t.ok_or_else(|| perr(last_line, "missing sink designator"))?;
    if s == t {
        return Err(perr(last_line, "source and sink coincide"));
    }
    Network::new(n, s, t, arcs)
}

pub fn write_dimacs<C: Capacity>(net: &Network<C>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p max {} {}", net.n, net.arcs.len());
    let _ = writeln!(out, "n {} s", net.s + 1);
    let _ = writeln!(out, "n {} t", net.t + 1);
    for a in &net.arcs {
        let _ = writeln!(out, "a {} {} {}", a.from + 1, a.to + 1, a.cap);
    }
    out
}
