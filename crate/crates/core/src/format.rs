//! Line-oriented text formats for graphs, groups, flows, partitions,
//! multicover certificates and pipeline traces. `#` starts a comment.

use std::fmt::Write as _;

use crate::flow::Flow;
use crate::graph::{Graph, Orientation};
use crate::partition::VertexPartition;
use crate::perm::{PermGroup, Permutation};
use crate::pipeline::PipelineTrace;
use crate::quotient::MulticoverCert;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError {
        line,
        message: message.into(),
    }
}

/// Non-empty lines with comments stripped, as (1-based line number, tokens).
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn num<T: std::str::FromStr>(line: usize, token: &str) -> Result<T, FormatError> {
    token
        .parse()
        .map_err(|_| err(line, format!("expected a number, found `{token}`")))
}

fn expect_arity(line: usize, tokens: &[&str], n: usize) -> Result<(), FormatError> {
    if tokens.len() != n {
        return Err(err(
            line,
            format!("`{}` takes {} fields, found {}", tokens[0], n - 1, tokens.len() - 1),
        ));
    }
    Ok(())
}

/// `v <n>` followed by `e <u> <v>` lines; edge index is line order.
pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    let mut n = None;
    let mut edges = Vec::new();
    for (line, t) in records(text) {
        match t[0] {
            "v" if n.is_none() => {
                expect_arity(line, &t, 2)?;
                n = Some(num(line, t[1])?);
            }
            "e" if n.is_some() => {
                expect_arity(line, &t, 3)?;
                edges.push((num(line, t[1])?, num(line, t[2])?));
            }
            other => return Err(err(line, format!("unexpected record `{other}`"))),
        }
    }
    let n = n.ok_or_else(|| err(0, "missing `v <n>` header"))?;
    Graph::new(n, edges).map_err(|e| err(0, e.to_string()))
}

pub fn write_graph(graph: &Graph) -> String {
    let mut out = format!("v {}\n", graph.vertex_count());
    for &(u, v) in graph.edges() {
        writeln!(out, "e {u} {v}").unwrap();
    }
    out
}

/// `deg <n>` followed by `gen <i0> ... <i(n-1)>` lines, kept in input order.
pub fn parse_group(text: &str) -> Result<PermGroup, FormatError> {
    let mut degree = None;
    let mut gens = Vec::new();
    for (line, t) in records(text) {
        match t[0] {
            "deg" if degree.is_none() => {
                expect_arity(line, &t, 2)?;
                degree = Some(num::<usize>(line, t[1])?);
            }
            "gen" if degree.is_some() => {
                let n = degree.unwrap();
                expect_arity(line, &t, n + 1)?;
                let images = t[1..]
                    .iter()
                    .map(|s| num(line, s))
                    .collect::<Result<Vec<usize>, _>>()?;
                gens.push(Permutation::new(images).map_err(|e| err(line, e.to_string()))?);
            }
            other => return Err(err(line, format!("unexpected record `{other}`"))),
        }
    }
    let degree = degree.ok_or_else(|| err(0, "missing `deg <n>` header"))?;
    PermGroup::new(degree, gens).map_err(|e| err(0, e.to_string()))
}

pub fn write_group(group: &PermGroup) -> String {
    let mut out = format!("deg {}\n", group.degree());
    for g in group.generators() {
        out.push_str("gen");
        for i in g.images() {
            write!(out, " {i}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// `k <k>` followed by one `f <tail> <head> <value>` line per edge.
pub fn parse_flow(text: &str) -> Result<Flow, FormatError> {
    let mut k = None;
    let mut arcs = Vec::new();
    let mut values = Vec::new();
    for (line, t) in records(text) {
        match t[0] {
            "k" if k.is_none() => {
                expect_arity(line, &t, 2)?;
                k = Some(num(line, t[1])?);
            }
            "f" if k.is_some() => {
                expect_arity(line, &t, 4)?;
                arcs.push((num(line, t[1])?, num(line, t[2])?));
                values.push(num(line, t[3])?);
            }
            other => return Err(err(line, format!("unexpected record `{other}`"))),
        }
    }
    let k = k.ok_or_else(|| err(0, "missing `k <k>` header"))?;
    Ok(Flow::new(k, Orientation::from_arcs(arcs), values))
}

pub fn write_flow(flow: &Flow) -> String {
    let mut out = format!("k {}\n", flow.k);
    for (&(tail, head), value) in flow.orientation.arcs().iter().zip(&flow.values) {
        writeln!(out, "f {tail} {head} {value}").unwrap();
    }
    out
}

/// One `b <v1> <v2> ...` line per block.
pub fn parse_partition(text: &str, n: usize) -> Result<VertexPartition, FormatError> {
    let mut blocks = Vec::new();
    for (line, t) in records(text) {
        if t[0] != "b" {
            return Err(err(line, format!("unexpected record `{}`", t[0])));
        }
        blocks.push(
            t[1..]
                .iter()
                .map(|s| num(line, s))
                .collect::<Result<Vec<usize>, _>>()?,
        );
    }
    VertexPartition::new(n, blocks).map_err(|e| err(0, e.to_string()))
}

pub fn write_partition(partition: &VertexPartition) -> String {
    let mut out = String::new();
    for block in partition.blocks() {
        out.push('b');
        for v in block {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Quotient graph, then `t <t>`, the blocks, and one `map <edge> <qedge>`
/// line per edge of the covering graph.
pub fn write_certificate(cert: &MulticoverCert) -> String {
    let mut out = write_graph(&cert.quotient);
    writeln!(out, "t {}", cert.t).unwrap();
    out.push_str(&write_partition(&cert.partition));
    for (e, q) in cert.edge_map.iter().enumerate() {
        writeln!(out, "map {e} {q}").unwrap();
    }
    out
}

pub fn parse_certificate(text: &str) -> Result<MulticoverCert, FormatError> {
    let mut graph_text = String::new();
    let mut part_text = String::new();
    let mut t = None;
    let mut edge_map = Vec::new();
    for (line, tok) in records(text) {
        match tok[0] {
            "v" | "e" => {
                graph_text.push_str(&tok.join(" "));
                graph_text.push('\n');
            }
            "b" => {
                part_text.push_str(&tok.join(" "));
                part_text.push('\n');
            }
            "t" => {
                expect_arity(line, &tok, 2)?;
                t = Some(num(line, tok[1])?);
            }
            "map" => {
                expect_arity(line, &tok, 3)?;
                let e: usize = num(line, tok[1])?;
                if e != edge_map.len() {
                    return Err(err(line, "map lines must list edges in order"));
                }
                edge_map.push(num(line, tok[2])?);
            }
            other => return Err(err(line, format!("unexpected record `{other}`"))),
        }
    }
    let quotient = parse_graph(&graph_text)?;
    let covered = part_text
        .lines()
        .map(|l| l.split_whitespace().count() - 1)
        .sum();
    let partition = parse_partition(&part_text, covered)?;
    let t = t.ok_or_else(|| err(0, "missing `t <t>` line"))?;
    if edge_map.iter().any(|&q| q >= quotient.edge_count()) {
        return Err(err(0, "map refers to a missing quotient edge"));
    }
    Ok(MulticoverCert {
        t,
        partition,
        quotient,
        edge_map,
    })
}

/// Step records, one per line, followed by the flow.
pub fn write_trace(trace: &PipelineTrace) -> String {
    let mut out = String::new();
    for step in &trace.steps {
        writeln!(out, "{step}").unwrap();
    }
    out.push_str(&write_flow(&trace.flow));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn graph_round_trip_with_comments() {
        let text = "# a triangle with a doubled edge\nv 3\ne 0 1\ne 1 2 # middle\n\ne 2 0\ne 0 1\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.edge_count(), 4);
        assert_eq!(write_graph(&g), "v 3\ne 0 1\ne 1 2\ne 2 0\ne 0 1\n");
    }

    #[test]
    fn graph_errors_carry_line_numbers() {
        assert_eq!(parse_graph("v 2\ne 0 x\n").unwrap_err().line, 2);
        assert!(parse_graph("e 0 1\n").is_err());
        assert!(parse_graph("v 2\ne 1 1\n").is_err());
        assert!(parse_graph("").is_err());
    }

    #[test]
    fn group_preserves_generator_order() {
        let text = "deg 4\ngen 1 2 3 0\ngen 2 1 0 3\n";
        let g = parse_group(text).unwrap();
        assert_eq!(g.order().unwrap(), 8);
        assert_eq!(write_group(&g), text);
        assert!(parse_group("deg 3\ngen 0 0 1\n").is_err());
        assert!(parse_group("deg 3\ngen 0 1\n").is_err());
        assert!(parse_group("deg 3\n").is_err());
    }

    #[test]
    fn flow_and_partition_round_trip() {
        let text = "k 3\nf 0 1 1\nf 2 1 -2\n";
        assert_eq!(write_flow(&parse_flow(text).unwrap()), text);
        let p = parse_partition("b 3 0\nb 1 4\nb 2 5\n", 6).unwrap();
        assert_eq!(write_partition(&p), "b 0 3\nb 1 4\nb 2 5\n");
        assert!(parse_partition("b 0 1\n", 3).is_err());
    }

    #[test]
    fn certificate_round_trip() {
        let oct = families::octahedron().graph;
        let p = parse_partition("b 0 3\nb 1 4\nb 2 5\n", 6).unwrap();
        let cert = crate::quotient::certify_multicover(&oct, &p).unwrap();
        let text = write_certificate(&cert);
        assert!(text.contains("t 2\n"));
        assert_eq!(parse_certificate(&text).unwrap(), cert);
    }
}
