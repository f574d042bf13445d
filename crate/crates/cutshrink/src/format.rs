//! Plain-text formats: instances, oracle records, LP dumps, shrink traces and CSV.

use std::fmt::Write as _;
use std::path::Path;

use cutshrink_core::graph::GraphError;
use cutshrink_core::lp::FractionalSolution;
use cutshrink_core::qaoa::Landscape;
use cutshrink_core::shrink::{ShrinkError, ShrinkState, Sign};
use cutshrink_core::{CutAssignment, ExactCutSummary, WeightedGraph};

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("expected {expected} edge lines, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("missing header line \"n m\"")]
    MissingHeader,
    #[error("invalid graph: {0}")]
    Graph(#[from] GraphError),
    #[error("replaying trace line {line}: {source}")]
    Replay {
        line: usize,
        #[source]
        source: ShrinkError,
    },
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

/// Non-empty, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn field<T: std::str::FromStr>(line: usize, token: Option<&str>, what: &str) -> Result<T, ParseError> {
    let token = token.ok_or_else(|| syntax(line, format!("missing {what}")))?;
    token
        .parse()
        .map_err(|_| syntax(line, format!("invalid {what} {token:?}")))
}

/// Reads an instance: a header `n m`, then `m` lines `i j w` with 1-based ids.
///
/// Lines starting with `#` are comments. Repeated pairs are summed.
pub fn parse_instance(text: &str) -> Result<WeightedGraph, ParseError> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let mut tokens = header.split_whitespace();
    let n: usize = field(header_line, tokens.next(), "vertex count")?;
    let m: usize = field(header_line, tokens.next(), "edge count")?;
    if tokens.next().is_some() {
        return Err(syntax(header_line, "header has trailing fields"));
    }

    let mut edges = Vec::with_capacity(m);
    for (line, content) in lines {
        let mut tokens = content.split_whitespace();
        let i: usize = field(line, tokens.next(), "vertex id")?;
        let j: usize = field(line, tokens.next(), "vertex id")?;
        let w: f64 = field(line, tokens.next(), "weight")?;
        if tokens.next().is_some() {
            return Err(syntax(line, "edge line has trailing fields"));
        }
        for id in [i, j] {
            if id == 0 || id > n {
                return Err(syntax(line, format!("vertex id {id} outside 1..={n}")));
            }
        }
        if i == j {
            return Err(syntax(line, format!("self-loop on vertex {i}")));
        }
        if !w.is_finite() {
            return Err(syntax(line, format!("weight {w} is not finite")));
        }
        edges.push((i - 1, j - 1, w));
    }
    if edges.len() != m {
        return Err(ParseError::EdgeCount {
            expected: m,
            found: edges.len(),
        });
    }
    Ok(WeightedGraph::new(n, edges)?)
}

pub fn read_instance(path: &Path) -> anyhow::Result<WeightedGraph> {
    use anyhow::Context;
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_instance(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Inverse of [`parse_instance`]; weights use the shortest round-trip form.
pub fn write_instance(graph: &WeightedGraph) -> String {
    let mut out = format!("{} {}\n", graph.vertex_count(), graph.edge_count());
    for e in graph.edges() {
        let _ = writeln!(out, "{} {} {}", e.u + 1, e.v + 1, e.weight);
    }
    out
}

/// `x` with 12 significant digits, without trailing zeros.
pub fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let exponent = x.abs().log10().floor() as i32;
    if (-5..12).contains(&exponent) {
        let decimals = (11 - exponent).max(0) as usize;
        let s = format!("{x:.decimals$}");
        let s = if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        };
        if s == "-0" { "0".into() } else { s }
    } else {
        format!("{x:.11e}")
    }
}

/// Flat `key=value` record of an exhaustive solve.
pub fn oracle_record(summary: &ExactCutSummary) -> String {
    format!(
        "vertices={}\nmax_value={}\nmin_value={}\noptimum_count={}\nargmax={}\n",
        summary.argmax.len(),
        summary.max_value,
        summary.min_value,
        summary.optimum_count,
        sides_string(&summary.argmax)
    )
}

/// `0`/`1` per vertex, vertex 0 first.
pub fn sides_string(assignment: &CutAssignment) -> String {
    assignment
        .sides()
        .iter()
        .map(|&s| if s { '1' } else { '0' })
        .collect()
}

/// One `u v value` line per vertex pair (1-based), after a comment header.
pub fn relaxation_dump(solution: &FractionalSolution) -> String {
    let mut out = format!(
        "# objective={} rounds={} constraints={}\n",
        solution.objective_value, solution.iterations, solution.constraints_added
    );
    for (k, (u, v)) in solution.pair_index().pairs().enumerate() {
        let _ = writeln!(out, "{} {} {}", u + 1, v + 1, sig12(solution.x[k]));
    }
    out
}

/// One `kept removed sigma weight` line per contraction (1-based ids).
pub fn shrink_trace(state: &ShrinkState) -> String {
    let mut out = String::new();
    for r in state.records() {
        let _ = writeln!(
            out,
            "{} {} {} {}",
            r.kept + 1,
            r.removed + 1,
            if r.sigma.is_opposite() { -1 } else { 1 },
            r.contracted_weight
        );
    }
    out
}

/// Re-applies a trace produced by [`shrink_trace`] to `graph`.
///
/// The weight column is informational and checked against the replay.
pub fn replay_trace(graph: &WeightedGraph, trace: &str) -> Result<ShrinkState, ParseError> {
    let mut state = ShrinkState::new(graph);
    let n = graph.vertex_count();
    for (line, content) in content_lines(trace) {
        let mut tokens = content.split_whitespace();
        let kept: usize = field(line, tokens.next(), "kept vertex")?;
        let removed: usize = field(line, tokens.next(), "removed vertex")?;
        let sigma: i32 = field(line, tokens.next(), "sigma")?;
        let weight: f64 = field(line, tokens.next(), "weight")?;
        for id in [kept, removed] {
            if id == 0 || id > n {
                return Err(syntax(line, format!("vertex id {id} outside 1..={n}")));
            }
        }
        let sign = match sigma {
            1 => Sign::Same,
            -1 => Sign::Opposite,
            other => return Err(syntax(line, format!("sigma must be 1 or -1, got {other}"))),
        };
        let record = state
            .shrink(removed - 1, kept - 1, sign)
            .map_err(|source| ParseError::Replay { line, source })?;
        if (record.contracted_weight - weight).abs() > 1e-9 * (1.0 + weight.abs()) {
            return Err(syntax(
                line,
                format!(
                    "recorded weight {weight} differs from replayed {}",
                    record.contracted_weight
                ),
            ));
        }
    }
    Ok(state)
}

/// `gamma,beta,value` rows in grid order.
pub fn landscape_csv(landscape: &Landscape) -> String {
    let mut out = String::from("gamma,beta,value\n");
    for (gamma, beta, value) in landscape.points() {
        let _ = writeln!(out, "{},{},{}", sig12(gamma), sig12(beta), sig12(value));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use cutshrink_core::{brute_force, shrink_to_target, CorrelationSet};

    #[test]
    fn parses_format_examples() {
        let g = parse_instance("2 1\n1 2 5").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.weight(0, 1), Some(5.0));

        let g = parse_instance("3 3\n1 2 1\n2 3 1\n1 3 1").unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.total_weight(), 3.0);

        let g = parse_instance("2 2\n1 2 3\n1 2 4").unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.weight(0, 1), Some(7.0));
    }

    #[test]
    fn comments_blank_lines_and_decimals() {
        let g = parse_instance("# header\n\n3 2\n# edge list\n1 2 -0.5\n3 2 1e-1\n").unwrap();
        assert_eq!(g.weight(0, 1), Some(-0.5));
        assert_eq!(g.weight(1, 2), Some(0.1));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_instance("3 2\n1 2 1\n# c\n1 4 1\n").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 4, .. }), "{err}");
        let err = parse_instance("3 1\n1 2 x\n").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 2, .. }));
        let err = parse_instance("3 1\n1 1 2\n").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 2, .. }));
        let err = parse_instance("3 1\n0 1 2\n").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 2, .. }));
        let err = parse_instance("3 2\n1 2 1\n").unwrap_err();
        assert!(matches!(
            err,
            ParseError::EdgeCount {
                expected: 2,
                found: 1
            }
        ));
        assert!(matches!(parse_instance("# only\n"), Err(ParseError::MissingHeader)));
        assert!(matches!(
            parse_instance("a b\n"),
            Err(ParseError::Syntax { line: 1, .. })
        ));
    }

    #[test]
    fn write_then_parse_round_trips() {
        let g = WeightedGraph::new(4, [(0, 1, 0.1), (1, 3, -2.75), (2, 3, 1.0 / 3.0)]).unwrap();
        assert_eq!(parse_instance(&write_instance(&g)).unwrap(), g);
    }

    #[test]
    fn significant_digits() {
        assert_eq!(sig12(0.0), "0");
        assert_eq!(sig12(1.5), "1.5");
        assert_eq!(sig12(std::f64::consts::PI), "3.14159265359");
        assert_eq!(sig12(-123.456), "-123.456");
        assert_eq!(sig12(1.0 / 3.0), "0.333333333333");
        assert_eq!(sig12(1e-9), "1.00000000000e-9");
        assert_eq!(sig12(-1e-14), "-1.00000000000e-14");
    }

    #[test]
    fn oracle_record_fields() {
        let g = parse_instance("3 3\n1 2 1\n2 3 1\n1 3 1").unwrap();
        let rec = oracle_record(&brute_force(&g).unwrap());
        assert_eq!(
            rec,
            "vertices=3\nmax_value=2\nmin_value=0\noptimum_count=3\nargmax=100\n"
        );
    }

    #[test]
    fn trace_replays_to_the_same_state() {
        let g = WeightedGraph::new(
            5,
            [(0, 1, 1.0), (1, 2, -1.0), (2, 3, 2.0), (3, 4, 1.0), (0, 4, -1.5)],
        )
        .unwrap();
        let values = (0..10).map(|k| [0.9, -0.8, 0.1, -0.95, 0.3][k % 5]).collect();
        let state = shrink_to_target(&g, &CorrelationSet::from_values(5, values), 2).unwrap();
        let replayed = replay_trace(&g, &shrink_trace(&state)).unwrap();
        assert_eq!(replayed.records(), state.records());
        assert_eq!(replayed.offset(), state.offset());
        assert_eq!(replayed.reduced_graph(), state.reduced_graph());
    }

    #[test]
    fn replay_rejects_bad_traces() {
        let g = WeightedGraph::new(3, [(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        assert!(matches!(
            replay_trace(&g, "1 2 0 1\n"),
            Err(ParseError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            replay_trace(&g, "1 2 1 1\n1 2 1 0\n"),
            Err(ParseError::Replay { line: 2, .. })
        ));
        assert!(matches!(
            replay_trace(&g, "1 2 1 5\n"),
            Err(ParseError::Syntax { line: 1, .. })
        ));
    }
}
