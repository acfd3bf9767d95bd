use super::{Atom, Clause, ConstraintError, ConstraintExpr};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Op(String),
    LBrace,
    RBrace,
    Comma,
    Pipe,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    column: usize,
}

/// Parses a constraint formula.
///
/// Each non-empty line holds one or more clauses separated by top-level
/// commas; atoms inside a clause are separated by `|`. `#` starts a comment.
/// The whole text is the conjunction of its clauses.
pub fn parse_constraints(text: &str) -> Result<ConstraintExpr, ConstraintError> {
    let mut clauses = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        let toks = lex(body, line)?;
        if toks.is_empty() {
            continue;
        }
        let end_col = body.chars().count() + 1;
        parse_line(&toks, line, end_col, &mut clauses)?;
    }
    Ok(ConstraintExpr::new(clauses))
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ConstraintError {
    ConstraintError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn lex(body: &str, line: usize) -> Result<Vec<Spanned>, ConstraintError> {
    let chars: Vec<char> = body.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        let single = match c {
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            ',' => Some(Tok::Comma),
            '|' => Some(Tok::Pipe),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Spanned { tok, column });
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if is_op_char(c) {
            let start = i;
            while i < chars.len() && is_op_char(chars[i]) {
                i += 1;
            }
            let op: String = chars[start..i].iter().collect();
            if op != ">=" && op != "<=" {
                return Err(syntax(line, column, format!("unknown operator `{op}`")));
            }
            out.push(Spanned {
                tok: Tok::Op(op),
                column,
            });
        } else {
            let start = i;
            while i < chars.len() && !is_boundary(chars[i]) {
                i += 1;
            }
            out.push(Spanned {
                tok: Tok::Word(chars[start..i].iter().collect()),
                column,
            });
        }
    }
    Ok(out)
}

fn is_op_char(c: char) -> bool {
    matches!(c, '<' | '>' | '=')
}

fn is_boundary(c: char) -> bool {
    c.is_whitespace() || is_op_char(c) || matches!(c, '{' | '}' | ',' | '|')
}

fn parse_line(toks: &[Spanned], line: usize, end_col: usize, clauses: &mut Vec<Clause>) -> Result<(), ConstraintError> {
    let mut atoms = Vec::new();
    let mut start = 0;
    let mut depth = 0usize;
    for (i, t) in toks.iter().enumerate() {
        match t.tok {
            Tok::LBrace => depth += 1,
            Tok::RBrace => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| syntax(line, t.column, "unmatched `}`"))?
            }
            Tok::Pipe if depth == 0 => {
                atoms.push(parse_atom(&toks[start..i], line, t.column)?);
                start = i + 1;
            }
            Tok::Comma if depth == 0 => {
                atoms.push(parse_atom(&toks[start..i], line, t.column)?);
                clauses.push(Clause::new(std::mem::take(&mut atoms)));
                start = i + 1;
            }
            Tok::Pipe => return Err(syntax(line, t.column, "`|` inside braces")),
            _ => {}
        }
    }
    if depth > 0 {
        return Err(syntax(line, end_col, "unclosed `{`"));
    }
    atoms.push(parse_atom(&toks[start..], line, end_col)?);
    clauses.push(Clause::new(atoms));
    Ok(())
}

/// `end_col` is where the atom's text stops, used when the atom is empty.
fn parse_atom(toks: &[Spanned], line: usize, end_col: usize) -> Result<Atom, ConstraintError> {
    let Some(head) = toks.first() else {
        return Err(syntax(line, end_col, "empty atom"));
    };
    let Tok::Word(name) = &head.tok else {
        return Err(syntax(line, head.column, "expected an atom name"));
    };
    let column = head.column;
    let args = &toks[1..];
    let arity = |expected: &'static str| ConstraintError::Arity {
        line,
        column,
        atom: name.clone(),
        expected,
    };
    let words = || -> Option<Vec<String>> {
        args.iter()
            .map(|t| match &t.tok {
                Tok::Word(w) => Some(w.clone()),
                _ => None,
            })
            .collect()
    };

    match name.as_str() {
        "size" | "support" | "cost" => {
            let expected = if name == "cost" { "`<= K`" } else { "`>= K` or `<= K`" };
            let [op, value] = args else { return Err(arity(expected)) };
            let (Tok::Op(op), Tok::Word(value_text)) = (&op.tok, &value.tok) else {
                return Err(arity(expected));
            };
            if name == "cost" && op != "<=" {
                return Err(arity(expected));
            }
            let k = value_text.parse::<u64>().map_err(|_| {
                syntax(
                    line,
                    value.column,
                    format!("expected a nonnegative integer, found `{value_text}`"),
                )
            })?;
            let as_count = || usize::try_from(k).map_err(|_| syntax(line, value.column, "bound out of range"));
            Ok(match (name.as_str(), op.as_str()) {
                ("size", ">=") => Atom::SizeMin(as_count()?),
                ("size", _) => Atom::SizeMax(as_count()?),
                ("support", ">=") => Atom::SupportMin(as_count()?),
                ("support", _) => Atom::SupportMax(as_count()?),
                _ => Atom::CostMax(k),
            })
        }
        "contains" | "excludes" => match words().as_deref() {
            Some([s]) if name == "contains" => Ok(Atom::Contains(s.clone())),
            Some([s]) => Ok(Atom::Excludes(s.clone())),
            _ => Err(arity("one symbol")),
        },
        "adjacent" | "before" => match words().as_deref() {
            Some([x, y]) if name == "adjacent" => Ok(Atom::Adjacent(x.clone(), y.clone())),
            Some([x, y]) => Ok(Atom::Before(x.clone(), y.clone())),
            _ => Err(arity("two symbols")),
        },
        "none_between" => parse_none_between(args).ok_or_else(|| arity("`{SYM,...} SYM SYM`")),
        _ => Err(ConstraintError::UnknownAtom {
            line,
            column,
            name: name.clone(),
        }),
    }
}

fn parse_none_between(args: &[Spanned]) -> Option<Atom> {
    let mut it = args.iter().map(|t| &t.tok);
    if it.next()? != &Tok::LBrace {
        return None;
    }
    let mut blocked = Vec::new();
    let mut expect_word = true;
    loop {
        match it.next()? {
            Tok::RBrace if !expect_word || blocked.is_empty() => break,
            Tok::Word(w) if expect_word => {
                blocked.push(w.clone());
                expect_word = false;
            }
            Tok::Comma if !expect_word => expect_word = true,
            _ => return None,
        }
    }
    let (Some(Tok::Word(x)), Some(Tok::Word(y)), None) = (it.next(), it.next(), it.next()) else {
        return None;
    };
    Some(Atom::NoneBetween {
        blocked,
        x: x.clone(),
        y: y.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_atom() {
        let e = parse_constraints("size >= 2").unwrap();
        assert_eq!(e.clauses().len(), 1);
        assert_eq!(e.clauses()[0].atoms(), &[Atom::SizeMin(2)]);
    }

    #[test]
    fn operators_need_no_spaces() {
        let e = parse_constraints("support>=3 | cost<=20").unwrap();
        assert_eq!(e.clauses()[0].atoms(), &[Atom::SupportMin(3), Atom::CostMax(20)]);
    }

    #[test]
    fn commas_and_lines_separate_clauses() {
        let e = parse_constraints("size >= 2, support >= 2\n# note\n\ncontains a # trailing").unwrap();
        assert_eq!(e.clauses().len(), 3);
        assert_eq!(e.clauses()[2].atoms(), &[Atom::Contains("a".into())]);
    }

    #[test]
    fn scenario_file() {
        let e = parse_constraints("excludes bUS\nadjacent mG ma | none_between {mA,mUS} bG ma").unwrap();
        assert_eq!(e.clauses().len(), 2);
        assert_eq!(
            e.clauses()[1].atoms(),
            &[
                Atom::Adjacent("mG".into(), "ma".into()),
                Atom::NoneBetween {
                    blocked: vec!["mA".into(), "mUS".into()],
                    x: "bG".into(),
                    y: "ma".into()
                }
            ]
        );
    }

    #[test]
    fn empty_block_set() {
        let e = parse_constraints("none_between {} a b").unwrap();
        assert_eq!(
            e.clauses()[0].atoms(),
            &[Atom::NoneBetween {
                blocked: vec![],
                x: "a".into(),
                y: "b".into()
            }]
        );
    }

    #[test]
    fn display_round_trips() {
        let text =
            "size >= 2 | support <= 4, cost <= 20\nnone_between {x,y} a b | before a b | adjacent b a\nexcludes q";
        let e = parse_constraints(text).unwrap();
        assert_eq!(parse_constraints(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_constraints("size >= 2\nfoo a"),
            Err(ConstraintError::UnknownAtom {
                line: 2,
                column: 1,
                name: "foo".into()
            })
        );
        assert!(matches!(
            parse_constraints("contains a b"),
            Err(ConstraintError::Arity { line: 1, column: 1, .. })
        ));
        assert!(matches!(
            parse_constraints("size >= x"),
            Err(ConstraintError::Syntax { line: 1, column: 9, .. })
        ));
        assert!(matches!(
            parse_constraints("size >= 2 |"),
            Err(ConstraintError::Syntax {
                line: 1,
                column: 12,
                ..
            })
        ));
        assert!(matches!(
            parse_constraints("  size == 2"),
            Err(ConstraintError::Syntax { line: 1, column: 8, .. })
        ));
        assert!(matches!(
            parse_constraints("cost >= 1"),
            Err(ConstraintError::Arity { .. })
        ));
        assert!(matches!(
            parse_constraints("none_between {a b} x y"),
            Err(ConstraintError::Arity { .. })
        ));
        assert!(matches!(
            parse_constraints("none_between {a"),
            Err(ConstraintError::Syntax { .. })
        ));
    }

    #[test]
    fn blank_text_is_vacuous() {
        assert!(parse_constraints("\n  # only a comment\n").unwrap().is_empty());
    }
}
