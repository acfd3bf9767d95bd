use std::collections::HashMap;

use super::ParseError;
use crate::constraints::WeightTable;
use crate::pattern::{GraphDb, LabeledGraph, SequenceDb, SymbolId, SymbolTable, TransactionDb, DEFAULT_EDGE_LABEL};
use crate::tiling::BinaryMatrix;

/// Numbered lines, rejecting empty input and whitespace-only lines.
fn content_lines(text: &str) -> Result<Vec<(usize, &str)>, ParseError> {
    let lines: Vec<(usize, &str)> = text.lines().enumerate().map(|(i, l)| (i + 1, l)).collect();
    if lines.is_empty() {
        return Err(ParseError::new(1, "input is empty"));
    }
    if let Some(&(n, _)) = lines.iter().find(|(_, l)| l.trim().is_empty()) {
        return Err(ParseError::new(n, "blank line"));
    }
    Ok(lines)
}

/// One transaction per line of whitespace-separated items.
pub fn parse_transactions(text: &str) -> Result<TransactionDb, ParseError> {
    let rows: Vec<Vec<&str>> = content_lines(text)?
        .into_iter()
        .map(|(_, l)| l.split_whitespace().collect())
        .collect();
    Ok(TransactionDb::from_labels(&rows).expect("every line holds a token"))
}

/// One sequence per line of whitespace-separated symbols.
pub fn parse_sequences(text: &str) -> Result<SequenceDb, ParseError> {
    let rows: Vec<Vec<&str>> = content_lines(text)?
        .into_iter()
        .map(|(_, l)| l.split_whitespace().collect())
        .collect();
    Ok(SequenceDb::from_labels(&rows).expect("every line holds a token"))
}

struct PendingGraph {
    labels: Vec<SymbolId>,
    vertex_index: HashMap<i64, usize>,
    edges: Vec<(usize, usize, SymbolId)>,
    line: usize,
}

/// Graph records: `t # <gid>`, then `v <vid> <label>` and `e <u> <v> [<label>]`.
///
/// Graphs get dense 1-based gids in file order whatever the `t` line says;
/// `t # -1` ends the input. Vertex ids are arbitrary integers local to their
/// graph. A missing edge label means the default label `0`.
pub fn parse_graphs(text: &str) -> Result<GraphDb, ParseError> {
    let mut vertex_labels = SymbolTable::new();
    let mut edge_labels = SymbolTable::for_edge_labels();
    let mut graphs = Vec::new();
    let mut current: Option<PendingGraph> = None;

    let finish = |g: PendingGraph, out: &mut Vec<LabeledGraph>| -> Result<(), ParseError> {
        let graph = LabeledGraph::new(g.labels, g.edges).map_err(|e| ParseError::new(g.line, e.to_string()))?;
        out.push(graph);
        Ok(())
    };

    for (line, l) in content_lines(text)? {
        let toks: Vec<&str> = l.split_whitespace().collect();
        let int = |s: &str| {
            s.parse::<i64>()
                .map_err(|_| ParseError::new(line, format!("expected an integer, found `{s}`")))
        };
        match toks.as_slice() {
            ["t", "#", gid] => {
                let gid = int(gid)?;
                if let Some(g) = current.take() {
                    finish(g, &mut graphs)?;
                }
                if gid == -1 {
                    break;
                }
                current = Some(PendingGraph {
                    labels: Vec::new(),
                    vertex_index: HashMap::new(),
                    edges: Vec::new(),
                    line,
                });
            }
            ["v", vid, label] => {
                let g = current
                    .as_mut()
                    .ok_or_else(|| ParseError::new(line, "vertex before any `t` line"))?;
                let vid = int(vid)?;
                if g.vertex_index.insert(vid, g.labels.len()).is_some() {
                    return Err(ParseError::new(line, format!("duplicate vertex id {vid}")));
                }
                g.labels.push(vertex_labels.intern(label));
            }
            ["e", u, v, rest @ ..] if rest.len() <= 1 => {
                let g = current
                    .as_mut()
                    .ok_or_else(|| ParseError::new(line, "edge before any `t` line"))?;
                let (u, v) = (int(u)?, int(v)?);
                if u == v {
                    return Err(ParseError::new(line, format!("self-loop on vertex {u}")));
                }
                let lookup = |x: i64| {
                    g.vertex_index
                        .get(&x)
                        .copied()
                        .ok_or_else(|| ParseError::new(line, format!("edge references undeclared vertex {x}")))
                };
                let (a, b) = (lookup(u)?, lookup(v)?);
                let label = edge_labels.intern(rest.first().copied().unwrap_or(DEFAULT_EDGE_LABEL));
                let key = (a.min(b), a.max(b));
                if g.edges.iter().any(|&(x, y, _)| (x.min(y), x.max(y)) == key) {
                    return Err(ParseError::new(line, format!("duplicate edge {u}-{v}")));
                }
                g.edges.push((a, b, label));
            }
            _ => {
                return Err(ParseError::new(
                    line,
                    "expected `t # <gid>`, `v <vid> <label>` or `e <u> <v> [<label>]`",
                ))
            }
        }
    }
    if let Some(g) = current.take() {
        finish(g, &mut graphs)?;
    }
    if graphs.is_empty() {
        return Err(ParseError::new(1, "no graphs in input"));
    }
    Ok(GraphDb::new(graphs, vertex_labels, edge_labels).expect("labels were interned into these tables"))
}

/// Rows of space-separated `0`/`1` cells, all of one length.
pub fn parse_matrix(text: &str) -> Result<BinaryMatrix, ParseError> {
    let mut rows: Vec<Vec<bool>> = Vec::new();
    for (line, l) in content_lines(text)? {
        let row = l
            .split_whitespace()
            .map(|c| match c {
                "0" => Ok(false),
                "1" => Ok(true),
                _ => Err(ParseError::new(line, format!("cell `{c}` is not 0 or 1"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(ParseError::new(
                    line,
                    format!("row has {} cells, expected {}", row.len(), first.len()),
                ));
            }
        }
        rows.push(row);
    }
    BinaryMatrix::new(rows).map_err(|e| ParseError::new(1, e.to_string()))
}

/// `SYM WEIGHT` per line with nonnegative integer weights.
pub fn parse_weights(text: &str) -> Result<WeightTable, ParseError> {
    let mut table = WeightTable::new();
    for (line, l) in content_lines(text)? {
        let [sym, w] = l.split_whitespace().collect::<Vec<_>>()[..] else {
            return Err(ParseError::new(line, "expected `SYM WEIGHT`"));
        };
        let w: i64 = w
            .parse()
            .map_err(|_| ParseError::new(line, format!("weight `{w}` is not an integer")))?;
        let w = u64::try_from(w).map_err(|_| ParseError::new(line, format!("negative weight {w}")))?;
        if table.insert(sym, w).is_some() {
            return Err(ParseError::new(line, format!("duplicate weight for `{sym}`")));
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transactions() {
        let db = parse_transactions("a b d e\nb c e\na e\n").unwrap();
        assert_eq!(db.len(), 3);
        assert_eq!(db.item_count(), 5);
        let one = parse_transactions("a a b").unwrap();
        assert_eq!(one.transactions()[0].len(), 2);
        assert_eq!(parse_transactions("x").unwrap().item_count(), 1);
        assert_eq!(parse_transactions("a\n\nb"), Err(ParseError::new(2, "blank line")));
        assert_eq!(parse_transactions(""), Err(ParseError::new(1, "input is empty")));
    }

    #[test]
    fn interning_is_stable() {
        let text = "q r\nr s q";
        assert_eq!(parse_transactions(text).unwrap(), parse_transactions(text).unwrap());
    }

    #[test]
    fn sequences() {
        let db = parse_sequences("a b c d a e b\nb c e b\na a e").unwrap();
        assert_eq!(db.sequences()[0].len(), 7);
        assert_eq!(parse_sequences("a  b").unwrap().sequences()[0].len(), 2);
        assert_eq!(parse_sequences("a").unwrap().sequences()[0].len(), 1);
        assert!(parse_sequences("a\n   \n").is_err());
    }

    #[test]
    fn graphs() {
        let text = "t # 1\nv 0 a\nv 1 b\nv 2 c\nv 3 d\nv 4 e\ne 0 1\ne 0 2\ne 0 3\ne 2 4\nt # 7\nv 0 x\n";
        let db = parse_graphs(text).unwrap();
        assert_eq!(db.len(), 2);
        assert_eq!((db.graphs()[0].vertex_count(), db.graphs()[0].edge_count()), (5, 4));
        assert_eq!(db.graphs()[1].edge_count(), 0);

        let stop = parse_graphs("t # 0\nv 0 a\nt # -1\n").unwrap();
        assert_eq!(stop.len(), 1);
        let labelled = parse_graphs("t # 0\nv 0 a\nv 1 a\ne 1 0 x").unwrap();
        assert_eq!(
            labelled.edge_labels().label(labelled.graphs()[0].edges()[0].label),
            Some("x")
        );

        let err = |t: &str| parse_graphs(t).unwrap_err();
        assert_eq!(err("t # 0\nv 0 a\ne 0 0 0").line, 3);
        assert!(err("t # 0\nv 0 a\ne 0 0 0").message.contains("self-loop"));
        assert!(err("t # 0\nv 0 a\ne 0 1").message.contains("undeclared"));
        assert!(err("t # 0\nv 0 a\nv 0 b").message.contains("duplicate vertex"));
        assert!(err("t # 0\nv 0 a\nv 1 b\ne 0 1\ne 1 0")
            .message
            .contains("duplicate edge"));
        assert_eq!(err("v 0 a").line, 1);
        assert_eq!(err("t # 0\nv 0 a\nq").line, 3);
    }

    #[test]
    fn matrices() {
        let m = parse_matrix("1 1 0\n1 0 1\n0 1 1").unwrap();
        assert_eq!((m.rows(), m.cols(), m.count_ones()), (3, 3, 6));
        assert_eq!(parse_matrix("1").unwrap().rows(), 1);
        assert_eq!(parse_matrix("1 0\n1").unwrap_err().line, 2);
        assert!(parse_matrix("1 2").unwrap_err().message.contains("not 0 or 1"));
    }

    #[test]
    fn weights() {
        let w = parse_weights("a 3\nb 5").unwrap();
        assert_eq!((w.get("a"), w.get("b")), (Some(3), Some(5)));
        assert!(parse_weights("a -1").unwrap_err().message.contains("negative"));
        assert_eq!(parse_weights("a 1\nb").unwrap_err().line, 2);
        assert!(parse_weights("a 1\na 2").is_err());
    }
}
