//! Text formats for diagrams: parsing with line-accurate validation errors,
//! and rendering of the canonical form.
//!
//! All formats are UTF-8, whitespace separated, 1-based:
//!
//! ```text
//! polygon n N        followed by N tokens `label/flag`, flag in {a, c}
//! circle n           followed by n lines `s e`
//! permutation n      followed by n integers
//! interval n         followed by n lines `s e`
//! circulararc n      followed by n lines `s e` (clockwise, may wrap)
//! trapezoid n        followed by n lines `a b c d` (merged coordinates)
//! ```

use super::{
    validate_class_shape, ArcFamily, ChordDiagram, ClassTag, Diagram, PermutationDiagram,
    PolygonDiagram, SideKind, TrapezoidDiagram,
};
use crate::error::{Error, Result};

/// A parsed diagram together with the old-label -> new-label map applied by
/// canonicalization (identity when the input was already canonical).
#[derive(Debug, Clone)]
pub struct Parsed {
    pub diagram: Diagram,
    pub relabeling: Vec<usize>,
}

struct Tokens<'a> {
    items: Vec<(usize, &'a str)>, // (1-based line, token)
    at: usize,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str) -> Self {
        let mut items = Vec::new();
        for (i, line) in text.lines().enumerate() {
            for tok in line.split_whitespace() {
                items.push((i + 1, tok));
            }
        }
        Tokens { items, at: 0 }
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        let item = self.items.get(self.at).copied().ok_or_else(|| {
            let line = self.items.last().map_or(1, |&(l, _)| l);
            Error::validation(line, format!("unexpected end of input, expected {what}"))
        })?;
        self.at += 1;
        Ok(item)
    }

    fn next_usize(&mut self, what: &str) -> Result<(usize, usize)> {
        let (line, tok) = self.next(what)?;
        let v = tok
            .parse::<usize>()
            .map_err(|_| Error::validation(line, format!("malformed {what}: `{tok}`")))?;
        Ok((line, v))
    }

    fn finish(&self) -> Result<()> {
        if let Some(&(line, tok)) = self.items.get(self.at) {
            return Err(Error::validation(
                line,
                format!("trailing input after diagram: `{tok}`"),
            ));
        }
        Ok(())
    }
}

fn expected_header(class: ClassTag) -> &'static str {
    match class {
        ClassTag::Circle => "circle",
        ClassTag::Permutation => "permutation",
        ClassTag::Interval => "interval",
        ClassTag::CircularArc => "circulararc",
        ClassTag::Trapezoid => "trapezoid",
        ClassTag::KPolygon | ClassTag::CircleTrapezoid | ClassTag::GenericPolygon => "polygon",
    }
}

pub fn parse_diagram(text: &str, class: ClassTag) -> Result<Parsed> {
    let mut t = Tokens::new(text);
    let (hline, header) = t.next("format header")?;
    let want = expected_header(class);
    if header != want {
        return Err(Error::validation(
            hline,
            format!("expected header `{want}` for class {class}, found `{header}`"),
        ));
    }
    let (_, n) = t.next_usize("vertex count")?;
    if n == 0 {
        return Err(Error::validation(hline, "vertex count must be at least 1"));
    }
    let parsed = match class {
        ClassTag::KPolygon | ClassTag::CircleTrapezoid | ClassTag::GenericPolygon => {
            let (_, total) = t.next_usize("corner count")?;
            let mut corners = Vec::with_capacity(total);
            let mut lines = Vec::with_capacity(total);
            for _ in 0..total {
                let (line, tok) = t.next("corner token `label/flag`")?;
                let (label, flag) = tok.split_once('/').ok_or_else(|| {
                    Error::validation(line, format!("malformed corner token `{tok}`, expected label/flag"))
                })?;
                let label: u32 = label.parse().map_err(|_| {
                    Error::validation(line, format!("malformed corner label in `{tok}`"))
                })?;
                let kind = match flag {
                    "a" => SideKind::Arc,
                    "c" => SideKind::Chord,
                    other => {
                        return Err(Error::validation(
                            line,
                            format!("unknown side flag `{other}`, expected a or c"),
                        ))
                    }
                };
                corners.push((label, kind));
                lines.push(line);
            }
            t.finish()?;
            let (d, map) = PolygonDiagram::canonicalize(n, corners)
                .map_err(|e| reline(e, &lines))?;
            validate_class_shape(&d, class).map_err(|e| reline(e, &lines))?;
            Parsed {
                diagram: Diagram::Polygon(d),
                relabeling: map,
            }
        }
        ClassTag::Circle => {
            let (pairs, lines) = read_pairs(&mut t, n)?;
            t.finish()?;
            let (d, map) = ChordDiagram::canonicalize(pairs).map_err(|e| reline(e, &lines))?;
            Parsed {
                diagram: Diagram::Chord(d),
                relabeling: map,
            }
        }
        ClassTag::Interval | ClassTag::CircularArc => {
            let (pairs, lines) = read_pairs(&mut t, n)?;
            t.finish()?;
            let wrap = class == ClassTag::CircularArc;
            let (d, map) = ArcFamily::canonicalize(pairs, wrap).map_err(|e| reline(e, &lines))?;
            Parsed {
                diagram: Diagram::Arcs(d),
                relabeling: map,
            }
        }
        ClassTag::Permutation => {
            let mut perm = Vec::with_capacity(n);
            let mut lines = Vec::with_capacity(n);
            for _ in 0..n {
                let (line, v) = t.next_usize("permutation value")?;
                perm.push(v as u32);
                lines.push(line);
            }
            t.finish()?;
            let d = PermutationDiagram::new(perm).map_err(|e| reline(e, &lines))?;
            Parsed {
                diagram: Diagram::Permutation(d),
                relabeling: (1..=n).collect(),
            }
        }
        ClassTag::Trapezoid => {
            let mut traps = Vec::with_capacity(n);
            let mut lines = Vec::with_capacity(n);
            for _ in 0..n {
                let (line, a) = t.next_usize("trapezoid coordinate")?;
                let (_, b) = t.next_usize("trapezoid coordinate")?;
                let (_, c) = t.next_usize("trapezoid coordinate")?;
                let (_, d) = t.next_usize("trapezoid coordinate")?;
                traps.push([a as u32, b as u32, c as u32, d as u32]);
                lines.push(line);
            }
            t.finish()?;
            let (d, map) = TrapezoidDiagram::canonicalize(traps).map_err(|e| reline(e, &lines))?;
            Parsed {
                diagram: Diagram::Trapezoid(d),
                relabeling: map,
            }
        }
    };
    Ok(parsed)
}

fn read_pairs(t: &mut Tokens, n: usize) -> Result<(Vec<(u32, u32)>, Vec<usize>)> {
    let mut pairs = Vec::with_capacity(n);
    let mut lines = Vec::with_capacity(n);
    for _ in 0..n {
        let (line, s) = t.next_usize("span start")?;
        let (_, e) = t.next_usize("span end")?;
        pairs.push((s as u32, e as u32));
        lines.push(line);
    }
    Ok((pairs, lines))
}

/// Validation errors from diagram constructors carry the item index; map it
/// back to the source line of that item.
fn reline(e: Error, lines: &[usize]) -> Error {
    match e {
        Error::Validation { line, rule } => {
            let line = if line >= 1 && line <= lines.len() {
                lines[line - 1]
            } else {
                lines.last().copied().unwrap_or(1)
            };
            Error::Validation { line, rule }
        }
        other => other,
    }
}

/// Renders a canonical diagram in the textual format [`parse_diagram`] reads.
pub fn render_diagram(d: &Diagram) -> String {
    let mut out = String::new();
    match d {
        Diagram::Polygon(p) => {
            out.push_str(&format!("polygon {} {}\n", p.n(), p.total_corners()));
            let toks: Vec<String> = p
                .corners()
                .iter()
                .map(|&(l, k)| {
                    format!("{}/{}", l, if k == SideKind::Arc { "a" } else { "c" })
                })
                .collect();
            out.push_str(&toks.join(" "));
            out.push('\n');
        }
        Diagram::Chord(c) => {
            out.push_str(&format!("circle {}\n", c.n()));
            for &(s, e) in c.pairs() {
                out.push_str(&format!("{s} {e}\n"));
            }
        }
        Diagram::Arcs(a) => {
            let name = if a.wrapping_allowed() {
                "circulararc"
            } else {
                "interval"
            };
            out.push_str(&format!("{name} {}\n", a.n()));
            for &(s, e) in a.spans() {
                out.push_str(&format!("{s} {e}\n"));
            }
        }
        Diagram::Permutation(p) => {
            out.push_str(&format!("permutation {}\n", p.n()));
            let toks: Vec<String> = p.perm().iter().map(|v| v.to_string()).collect();
            out.push_str(&toks.join(" "));
            out.push('\n');
        }
        Diagram::Trapezoid(t) => {
            out.push_str(&format!("trapezoid {}\n", t.n()));
            for &[a, b, c, d] in t.traps() {
                out.push_str(&format!("{a} {b} {c} {d}\n"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_circle_fixture() {
        let p = parse_diagram("circle 3\n1 3\n2 5\n4 6\n", ClassTag::Circle).unwrap();
        match &p.diagram {
            Diagram::Chord(c) => assert_eq!(c.pairs(), &[(1, 3), (2, 5), (4, 6)]),
            other => panic!("wrong variant: {other:?}"),
        }
        assert_eq!(p.relabeling, vec![1, 2, 3]);
    }

    #[test]
    fn parse_polygon_fixture() {
        let text = "polygon 2 8\n1/a 1/c 2/a 2/c 1/a 1/c 2/a 2/c\n";
        let p = parse_diagram(text, ClassTag::CircleTrapezoid).unwrap();
        match &p.diagram {
            Diagram::Polygon(d) => {
                assert_eq!(d.n(), 2);
                assert_eq!(d.total_corners(), 8);
                assert_eq!(d.kind_at(1), SideKind::Arc);
            }
            other => panic!("wrong variant: {other:?}"),
        }
    }

    #[test]
    fn parse_reports_line_and_rule() {
        let err = parse_diagram("circle 1\n2 1\n", ClassTag::Circle).unwrap_err();
        match err {
            Error::Validation { line, rule } => {
                assert_eq!(line, 2);
                assert!(rule.contains("start must be smaller"), "{rule}");
            }
            other => panic!("wrong error: {other:?}"),
        }
        let err = parse_diagram("circle 2\n1 2\n", ClassTag::Circle).unwrap_err();
        assert!(matches!(err, Error::Validation { .. }));
        let err = parse_diagram("interval 1\nx 2\n", ClassTag::Interval).unwrap_err();
        assert!(matches!(err, Error::Validation { line: 2, .. }));
        let err = parse_diagram("circle 1\n1 2\n5\n", ClassTag::Circle).unwrap_err();
        assert!(matches!(err, Error::Validation { line: 3, .. }));
    }

    #[test]
    fn wrong_header_for_class() {
        let err = parse_diagram("circle 1\n1 2\n", ClassTag::Trapezoid).unwrap_err();
        assert!(matches!(err, Error::Validation { line: 1, .. }));
    }

    #[test]
    fn relabeling_is_surfaced() {
        let p = parse_diagram("circle 2\n3 4\n1 2\n", ClassTag::Circle).unwrap();
        assert_eq!(p.relabeling, vec![2, 1]);
        match &p.diagram {
            Diagram::Chord(c) => assert_eq!(c.pairs(), &[(1, 2), (3, 4)]),
            _ => unreachable!(),
        }
    }

    #[test]
    fn render_parse_round_trip() {
        let texts = [
            ("circle 3\n1 3\n2 5\n4 6\n", ClassTag::Circle),
            ("polygon 2 8\n1/a 1/c 2/a 2/c 1/a 1/c 2/a 2/c\n", ClassTag::CircleTrapezoid),
            ("permutation 3\n2 3 1\n", ClassTag::Permutation),
            ("trapezoid 2\n1 4 2 3\n5 8 6 7\n", ClassTag::Trapezoid),
            ("interval 2\n1 3\n2 4\n", ClassTag::Interval),
            ("circulararc 2\n3 2\n1 4\n", ClassTag::CircularArc),
        ];
        for (text, class) in texts {
            let p = parse_diagram(text, class).unwrap();
            let rendered = render_diagram(&p.diagram);
            let again = parse_diagram(&rendered, class).unwrap();
            assert_eq!(p.diagram, again.diagram, "{class}");
        }
    }
}
