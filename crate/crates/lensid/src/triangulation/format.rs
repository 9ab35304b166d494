//! The TRI1 text format: line 1 is `TRI1 <t>`, then one line per
//! tetrahedron with four whitespace-separated tokens `j:p0p1p2p3`, token `f`
//! giving the gluing of face `f`. `#` starts a comment.

use thiserror::Error;

use super::perm::Perm4;
use super::{Gluing, Triangulation};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}, col {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("involution violation at tet {tet} face {face}")]
    Involution { tet: usize, face: usize },
    #[error("tet index {target} out of range at line {line}")]
    OutOfRange { line: usize, target: usize },
    #[error("malformed permutation at line {line}: {tok}")]
    BadPerm { line: usize, tok: String },
    #[error("face glued to itself at tet {tet} face {face}")]
    SelfFace { tet: usize, face: usize },
}

/// Parses a TRI1 document. Total on valid documents; rejects everything else
/// with a located error.
pub fn parse_tri(text: &str) -> Result<Triangulation, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or(ParseError::Syntax {
        line: 1,
        col: 1,
        msg: "empty document".into(),
    })?;
    let mut hp = header.split_whitespace();
    match hp.next() {
        Some("TRI1") => {}
        _ => {
            return Err(ParseError::Syntax {
                line: hline,
                col: 1,
                msg: "expected TRI1 header".into(),
            })
        }
    }
    let t: usize = hp
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or(ParseError::Syntax {
            line: hline,
            col: 6,
            msg: "expected tetrahedron count".into(),
        })?;
    if hp.next().is_some() {
        return Err(ParseError::Syntax {
            line: hline,
            col: header.len(),
            msg: "trailing tokens after header".into(),
        });
    }

    let mut rows: Vec<[Gluing; 4]> = Vec::with_capacity(t);
    for i in 0..t {
        let (lno, line) = lines.next().ok_or(ParseError::Syntax {
            line: hline + i + 1,
            col: 1,
            msg: format!("expected gluing line for tet {i}"),
        })?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 4 {
            return Err(ParseError::Syntax {
                line: lno,
                col: 1,
                msg: format!("expected 4 gluing tokens, found {}", toks.len()),
            });
        }
        let mut row = [Gluing {
            tet: 0,
            perm: Perm4::IDENTITY,
        }; 4];
        for (f, tok) in toks.iter().enumerate() {
            let (js, ps) = tok.split_once(':').ok_or(ParseError::Syntax {
                line: lno,
                col: 1,
                msg: format!("token `{tok}` is not of the form j:p0p1p2p3"),
            })?;
            let j: usize = js.parse().map_err(|_| ParseError::Syntax {
                line: lno,
                col: 1,
                msg: format!("bad tet index `{js}`"),
            })?;
            if j >= t {
                return Err(ParseError::OutOfRange { line: lno, target: j });
            }
            let digits: Vec<u8> = ps.bytes().map(|b| b.wrapping_sub(b'0')).collect();
            let perm = if digits.len() == 4 {
                Perm4::new([digits[0], digits[1], digits[2], digits[3]])
            } else {
                None
            }
            .ok_or(ParseError::BadPerm {
                line: lno,
                tok: tok.to_string(),
            })?;
            row[f] = Gluing { tet: j, perm };
        }
        rows.push(row);
    }
    if let Some((lno, _)) = lines.next() {
        return Err(ParseError::Syntax {
            line: lno,
            col: 1,
            msg: "trailing content after gluing lines".into(),
        });
    }

    let mut tri = Triangulation::empty(t);
    for (i, row) in rows.iter().enumerate() {
        for (f, g) in row.iter().enumerate() {
            if g.tet == i && g.perm.apply(f as u8) == f as u8 {
                return Err(ParseError::SelfFace { tet: i, face: f });
            }
            tri.set_raw(i, f as u8, *g);
        }
    }
    if let Err(e) = tri.check_involution() {
        return match e {
            super::TriError::Involution { tet, face } => Err(ParseError::Involution { tet, face }),
            super::TriError::SelfFace { tet, face } => Err(ParseError::SelfFace { tet, face }),
            super::TriError::OutOfRange { tet: _, face: _, target } => {
                Err(ParseError::OutOfRange { line: 0, target })
            }
        };
    }
    Ok(tri)
}

/// Canonical serialization: LF endings, single spaces, no trailing space.
pub fn serialize_tri(tri: &Triangulation) -> String {
    let mut out = format!("TRI1 {}\n", tri.tet_count());
    for i in 0..tri.tet_count() {
        let mut toks = Vec::with_capacity(4);
        for f in 0..4u8 {
            let g = tri
                .gluing(i, f)
                .expect("serialize_tri requires a closed triangulation");
            toks.push(format!("{}:{}", g.tet, g.perm));
        }
        out.push_str(&toks.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::fan_lens;

    #[test]
    fn round_trip_fan() {
        let tri = fan_lens(5, 1).unwrap();
        let text = serialize_tri(&tri);
        let back = parse_tri(&text).unwrap();
        assert_eq!(tri, back);
    }

    #[test]
    fn smallest_document() {
        // the one-tetrahedron fan triangulation of S^3
        let text = serialize_tri(&fan_lens(1, 1).unwrap());
        let tri = parse_tri(&text).unwrap();
        assert_eq!(tri.tet_count(), 1);
    }

    #[test]
    fn involution_violation_reported() {
        // tet 0 face 2's token disagrees with the partner slot it implies
        let text = "TRI1 1\n0:1032 0:1032 0:2103 0:2103\n";
        let err = parse_tri(text).unwrap_err();
        assert!(matches!(err, ParseError::Involution { .. } | ParseError::SelfFace { .. }));
    }

    #[test]
    fn syntax_errors_located() {
        assert!(matches!(
            parse_tri("TRI2 1\n"),
            Err(ParseError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_tri("TRI1 1\n0:1032 0:1032\n"),
            Err(ParseError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_tri("TRI1 1\n5:1032 0:1032 0:2103 0:2103\n"),
            Err(ParseError::OutOfRange { line: 2, target: 5 })
        ));
        assert!(matches!(
            parse_tri("TRI1 1\n0:10x2 0:1032 0:2103 0:2103\n"),
            Err(ParseError::BadPerm { line: 2, .. })
        ));
    }

    #[test]
    fn comments_ignored() {
        let tri = fan_lens(2, 1).unwrap();
        let text = format!("# header comment\n{}", serialize_tri(&tri));
        assert_eq!(parse_tri(&text).unwrap(), tri);
    }
}
