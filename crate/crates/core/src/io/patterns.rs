use serde::{Deserialize, Serialize};

use super::ParseError;
use crate::pattern::{Itemset, LabeledGraph, Pattern, PatternKind, PatternRecord, Sequence, SymbolId, SymbolTable};

/// One line of a pattern file.
///
/// Itemset and sequence elements are label lists. Graph elements list
/// vertex labels by position and edges as `[u, v, label]` over those positions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatternOutput {
    pub pid: usize,
    pub kind: PatternKind,
    pub support: usize,
    pub size: usize,
    pub elements: Elements,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover: Option<Vec<usize>>,
    #[serde(default)]
    pub flags: Flags,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Elements {
    Symbols(Vec<String>),
    Graph(GraphElements),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphElements {
    pub vertices: Vec<String>,
    pub edges: Vec<(usize, usize, String)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Flags {
    pub valid: bool,
    pub condensed: bool,
}

impl Default for Flags {
    fn default() -> Self {
        Flags {
            valid: true,
            condensed: false,
        }
    }
}

fn label(table: &SymbolTable, id: SymbolId) -> String {
    table
        .label(id)
        .expect("pattern symbols come from this table")
        .to_owned()
}

impl PatternOutput {
    /// `symbols` names items, sequence symbols or vertex labels;
    /// `edge_labels` is only consulted for graphs.
    pub fn from_record(rec: &PatternRecord, symbols: &SymbolTable, edge_labels: &SymbolTable, flags: Flags) -> Self {
        let elements = match &rec.pattern {
            Pattern::Itemset(s) => Elements::Symbols(s.items().iter().map(|&i| label(symbols, i)).collect()),
            Pattern::Sequence(s) => Elements::Symbols(s.symbols().iter().map(|&i| label(symbols, i)).collect()),
            Pattern::Graph(g) => Elements::Graph(GraphElements {
                vertices: g.labels().iter().map(|&l| label(symbols, l)).collect(),
                edges: g
                    .edges()
                    .iter()
                    .map(|e| (e.u, e.v, label(edge_labels, e.label)))
                    .collect(),
            }),
        };
        PatternOutput {
            pid: rec.pid,
            kind: rec.kind(),
            support: rec.support,
            size: rec.size(),
            elements,
            cover: Some(rec.cover.clone()),
            flags,
        }
    }
}

/// JSON Lines, one [`PatternOutput`] per line, each line newline-terminated.
pub fn patterns_to_string(outputs: &[PatternOutput]) -> String {
    let mut s = String::new();
    for o in outputs {
        s.push_str(&serde_json::to_string(o).expect("pattern outputs always serialize"));
        s.push('\n');
    }
    s
}

/// Parses JSON Lines; blank lines are rejected like in every other format.
pub fn parse_patterns(text: &str) -> Result<Vec<PatternOutput>, ParseError> {
    text.lines()
        .enumerate()
        .map(|(i, l)| {
            if l.trim().is_empty() {
                return Err(ParseError::new(i + 1, "blank line"));
            }
            serde_json::from_str(l).map_err(|e| ParseError::new(i + 1, e.to_string()))
        })
        .collect()
}

/// Records rebuilt from a pattern file with fresh symbol tables.
#[derive(Debug, Clone)]
pub struct DecodedPatterns {
    pub records: Vec<PatternRecord>,
    /// Items, sequence symbols and vertex labels, in first-appearance order.
    pub symbols: SymbolTable,
    pub edge_labels: SymbolTable,
}

/// Rebuilds [`PatternRecord`]s, checking that each line is self-consistent
/// and that pids are unique. Errors name the 1-based position of the
/// offending output.
pub fn decode_patterns(outputs: &[PatternOutput]) -> Result<DecodedPatterns, ParseError> {
    let mut symbols = SymbolTable::new();
    let mut edge_labels = SymbolTable::for_edge_labels();
    let mut records = Vec::with_capacity(outputs.len());
    let mut pids = std::collections::HashSet::new();
    for (i, o) in outputs.iter().enumerate() {
        let line = i + 1;
        let fail = |m: String| ParseError::new(line, m);
        if !pids.insert(o.pid) {
            return Err(fail(format!("duplicate pid {}", o.pid)));
        }
        let pattern = match (o.kind, &o.elements) {
            (PatternKind::Itemset, Elements::Symbols(items)) => {
                let ids = items.iter().map(|s| symbols.intern(s)).collect::<Vec<_>>();
                if ids.len() != items.iter().collect::<std::collections::BTreeSet<_>>().len() {
                    return Err(fail("itemset repeats an item".into()));
                }
                Pattern::Itemset(Itemset::new(ids).map_err(|e| fail(e.to_string()))?)
            }
            (PatternKind::Sequence, Elements::Symbols(syms)) => {
                let ids = syms.iter().map(|s| symbols.intern(s)).collect();
                Pattern::Sequence(Sequence::new(ids).map_err(|e| fail(e.to_string()))?)
            }
            (PatternKind::Graph, Elements::Graph(g)) => {
                let labels = g.vertices.iter().map(|s| symbols.intern(s)).collect();
                let edges: Vec<_> = g
                    .edges
                    .iter()
                    .map(|(u, v, l)| (*u, *v, edge_labels.intern(l)))
                    .collect();
                Pattern::Graph(LabeledGraph::new(labels, edges).map_err(|e| fail(e.to_string()))?)
            }
            (kind, _) => return Err(fail(format!("elements do not match kind `{kind}`"))),
        };
        if pattern.size() != o.size {
            return Err(fail(format!(
                "size {} does not match elements ({})",
                o.size,
                pattern.size()
            )));
        }
        let rec = match &o.cover {
            Some(cover) => {
                if cover.len() != o.support {
                    return Err(fail(format!(
                        "support {} does not match cover size {}",
                        o.support,
                        cover.len()
                    )));
                }
                if cover.windows(2).any(|w| w[0] >= w[1]) || cover.first() == Some(&0) {
                    return Err(fail("cover must be strictly increasing 1-based ids".into()));
                }
                PatternRecord::new(o.pid, pattern, cover.clone())
            }
            None => PatternRecord {
                pid: o.pid,
                pattern,
                support: o.support,
                cover: Vec::new(),
            },
        };
        records.push(rec);
    }
    Ok(DecodedPatterns {
        records,
        symbols,
        edge_labels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mining::{mine_frequent_graphs_general, mine_frequent_itemsets, MinSupport};
    use crate::pattern::{GraphDbBuilder, TransactionDb};

    #[test]
    fn itemsets_round_trip() {
        let db = TransactionDb::from_labels(&[vec!["a", "b", "d", "e"], vec!["b", "c", "e"], vec!["a", "e"]]).unwrap();
        let recs = mine_frequent_itemsets(&db, MinSupport::Absolute(2)).unwrap();
        let outs: Vec<_> = recs
            .iter()
            .map(|r| PatternOutput::from_record(r, db.symbols(), &SymbolTable::new(), Flags::default()))
            .collect();
        let text = patterns_to_string(&outs);
        assert_eq!(text.lines().count(), 5);
        assert_eq!(
            text.lines().nth(3).unwrap(),
            r#"{"pid":4,"kind":"itemset","support":2,"size":2,"elements":["a","e"],"cover":[1,3],"flags":{"valid":true,"condensed":false}}"#
        );
        let back = parse_patterns(&text).unwrap();
        assert_eq!(back, outs);
        let decoded = decode_patterns(&back).unwrap();
        assert_eq!(decoded.records.len(), 5);
        assert_eq!(decoded.records[3].cover, vec![1, 3]);
        assert_eq!(patterns_to_string(&[]), "");
        assert!(parse_patterns("").unwrap().is_empty());
    }

    #[test]
    fn graphs_round_trip() {
        let mut b = GraphDbBuilder::new();
        b.labelled_graph(&["a", "b", "c"], &[(0, 1, "x"), (1, 2, "0")]).unwrap();
        let db = b.build();
        let recs = mine_frequent_graphs_general(&db, MinSupport::Absolute(1), None).unwrap();
        let outs: Vec<_> = recs
            .iter()
            .map(|r| PatternOutput::from_record(r, db.vertex_labels(), db.edge_labels(), Flags::default()))
            .collect();
        let back = parse_patterns(&patterns_to_string(&outs)).unwrap();
        assert_eq!(back, outs);
        let decoded = decode_patterns(&back).unwrap();
        for (r, d) in recs.iter().zip(&decoded.records) {
            assert_eq!((r.pid, r.support, r.size()), (d.pid, d.support, d.size()));
        }
    }

    fn good(pid: usize) -> String {
        format!(r#"{{"pid":{pid},"kind":"itemset","support":1,"size":1,"elements":["a"],"cover":[1]}}"#)
    }

    #[test]
    fn inconsistent_lines_are_rejected() {
        let bad = [
            r#"{"pid":1,"kind":"itemset","support":2,"size":1,"elements":["a"],"cover":[1]}"#,
            r#"{"pid":1,"kind":"itemset","support":1,"size":2,"elements":["a"],"cover":[1]}"#,
            r#"{"pid":1,"kind":"graph","support":1,"size":1,"elements":["a"],"cover":[1]}"#,
            r#"{"pid":1,"kind":"itemset","support":1,"size":2,"elements":["a","a"],"cover":[1]}"#,
            r#"{"pid":1,"kind":"sequence","support":2,"size":1,"elements":["a"],"cover":[2,1]}"#,
        ];
        for line in bad {
            let outs = parse_patterns(line).unwrap();
            assert!(decode_patterns(&outs).is_err(), "{line}");
        }
        let twice = parse_patterns(&format!("{}\n{}", good(1), good(1))).unwrap();
        assert_eq!(decode_patterns(&twice).unwrap_err().line, 2);
        assert_eq!(parse_patterns("{}\n").unwrap_err().line, 1);
        assert_eq!(
            parse_patterns("{\"pid\":1,\"kind\":\"sequence\",\"support\":3,\"size\":1,\"elements\":[\"a\"]}\n\n")
                .unwrap_err()
                .line,
            2
        );
    }

    #[test]
    fn cover_is_optional() {
        let outs = parse_patterns(r#"{"pid":3,"kind":"sequence","support":4,"size":2,"elements":["a","a"]}"#).unwrap();
        let d = decode_patterns(&outs).unwrap();
        assert_eq!(d.records[0].support, 4);
        assert!(d.records[0].cover.is_empty());
        assert_eq!(outs[0].flags, Flags::default());
    }
}
