//! The `.cplx` text format: UTF-8, one facet per line, vertex labels
//! separated by single spaces, lines beginning with `#` are comments, blank
//! lines are ignored. Labels match `[A-Za-z0-9_+-]+`.

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};

/// Serializes a complex: facets in lexicographic label order, labels within a
/// facet sorted. Ends with a trailing newline.
pub fn to_cplx(c: &SimplicialComplex) -> String {
    let mut s = c.canonical_form();
    s.push('\n');
    s
}

/// Parses `.cplx` text. Returns the complex and the number of dropped
/// (non-maximal) faces.
pub fn parse_cplx(text: &str) -> Result<(SimplicialComplex, usize)> {
    let mut lists: Vec<Vec<String>> = Vec::new();
    let mut line_of: Vec<usize> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        lists.push(trimmed.split_whitespace().map(str::to_string).collect());
        line_of.push(lineno + 1);
    }
    SimplicialComplex::from_facets(&lists).map_err(|e| match e {
        Error::EmptyComplex => Error::Parse {
            line: 0,
            msg: "no facets found".into(),
        },
        Error::InvalidLabel(l) => {
            let line = lists
                .iter()
                .position(|f| f.contains(&l))
                .map(|i| line_of[i])
                .unwrap_or(0);
            Error::Parse {
                line,
                msg: format!("invalid label `{l}`"),
            }
        }
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_with_comments_and_blanks() {
        let text = "# a comment\n\na b\nb c\n  \n# another\nc a\n";
        let (c, dropped) = parse_cplx(text).unwrap();
        assert_eq!(dropped, 0);
        assert_eq!(c.num_facets(), 3);
        assert_eq!(to_cplx(&c), "a b\na c\nb c\n");
    }

    #[test]
    fn parse_rejects_bad_labels() {
        let err = parse_cplx("a b\n\na b!c\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 3,
                msg: "invalid label `b!c`".into()
            }
        );
    }

    #[test]
    fn parse_rejects_empty() {
        assert!(matches!(parse_cplx("# nothing\n\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn round_trip_is_identity() {
        let (c, _) = parse_cplx("u1 v2 v3\nu1 u2 v3\nu2 u3 v1\n").unwrap();
        let (c2, dropped) = parse_cplx(&to_cplx(&c)).unwrap();
        assert_eq!(dropped, 0);
        assert_eq!(c.canonical_key(), c2.canonical_key());
    }
}
