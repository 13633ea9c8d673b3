//! Plain-text band file format.
//!
//! ```text
//! # comment lines start with '#'
//! N M
//! b^0_0 ... b^0_{N-1}        (2M+1 diagonal lines, out-of-band slots are 0)
//! ...
//! y_0 ... y_{N-1}
//! ```
//!
//! Scalars are integers, `p/q` rationals or decimals, all read exactly.

use std::fmt::Write as _;

use bandsolve::scalar::parse_rational;
use bandsolve::{BandMatrix, Rational, Slae};

use crate::error::CliError;

/// A located syntax error; line and column are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
    width: usize,
}

fn tokenize(number: usize, raw: &str) -> Line<'_> {
    let mut tokens = Vec::new();
    let mut start = None;
    for (pos, ch) in raw.char_indices().chain([(raw.len(), ' ')]) {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(pos),
            (true, Some(s)) => {
                tokens.push(Token {
                    text: &raw[s..pos],
                    column: raw[..s].chars().count() + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    Line {
        number,
        tokens,
        width: raw.chars().count(),
    }
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> CliError {
    CliError::Parse(ParseError {
        line,
        column,
        message: message.into(),
    })
}

fn parse_count(token: &Token<'_>, line: usize, what: &str) -> Result<usize, CliError> {
    token.text.parse().map_err(|_| {
        parse_error(
            line,
            token.column,
            format!(
                "expected {what} as a non-negative integer, found {:?}",
                token.text
            ),
        )
    })
}

fn parse_row(line: &Line<'_>, n: usize, what: &str) -> Result<Vec<Rational>, CliError> {
    if line.tokens.len() != n {
        let column = line.tokens.get(n).map_or(line.width + 1, |t| t.column);
        return Err(parse_error(
            line.number,
            column,
            format!("{what}: expected {n} values, found {}", line.tokens.len()),
        ));
    }
    line.tokens
        .iter()
        .map(|t| {
            parse_rational(t.text).map_err(|_| {
                parse_error(
                    line.number,
                    t.column,
                    format!("invalid scalar {:?}", t.text),
                )
            })
        })
        .collect()
}

/// Parses a band file into an exact system.
///
/// Syntax problems are [`CliError::Parse`]; a well-formed file describing an
/// invalid band (too small, out-of-band entries) is [`CliError::Dimension`].
pub fn parse(text: &str) -> Result<Slae<Rational>, CliError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, raw)| tokenize(i + 1, raw))
        .filter(|l| l.tokens.first().is_some_and(|t| !t.text.starts_with('#')));
    let last_line = text.lines().count().max(1);
    let eof = |what: &str| {
        parse_error(
            last_line,
            1,
            format!("unexpected end of file, expected {what}"),
        )
    };

    let header = lines.next().ok_or_else(|| eof("header \"N M\""))?;
    if header.tokens.len() != 2 {
        let column = header.tokens.get(2).map_or(header.width + 1, |t| t.column);
        return Err(parse_error(header.number, column, "header must be \"N M\""));
    }
    let n = parse_count(&header.tokens[0], header.number, "N")?;
    let m = parse_count(&header.tokens[1], header.number, "M")?;
    if m == 0 || n < 2 * m + 2 {
        return Err(CliError::Dimension(format!(
            "band needs m >= 1 and n >= 2m+2, got n = {n}, m = {m}"
        )));
    }

    let mut diags = Vec::with_capacity(2 * m + 1);
    for j in 0..=2 * m {
        let what = format!("diagonal {j}");
        let line = lines.next().ok_or_else(|| eof(&what))?;
        diags.push(parse_row(&line, n, &what)?);
    }
    let line = lines.next().ok_or_else(|| eof("right-hand side"))?;
    let rhs = parse_row(&line, n, "right-hand side")?;
    if let Some(extra) = lines.next() {
        return Err(parse_error(
            extra.number,
            extra.tokens[0].column,
            "unexpected content after right-hand side",
        ));
    }

    let matrix = BandMatrix::from_diagonals(n, m, diags)?;
    Ok(Slae::new(matrix, rhs)?)
}

/// Renders a system in the band file format; `comment` lines are prefixed with `# `.
pub fn write(slae: &Slae<Rational>, comment: &[String]) -> String {
    let mut out = String::new();
    for c in comment {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "{} {}", slae.n(), slae.m());
    let row = |values: &[Rational]| {
        values
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    };
    for diag in slae.matrix().diagonals() {
        let _ = writeln!(out, "{}", row(diag));
    }
    let _ = writeln!(out, "{}", row(slae.rhs()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRIDIAG: &str = "# tridiag(1;2;1)\n4 1\n0 1 1 1\n2 2 2 2\n1 1 1 0\n1 0 0 1\n";

    #[test]
    fn parses_and_writes_back() {
        let slae = parse(TRIDIAG).unwrap();
        assert_eq!((slae.n(), slae.m()), (4, 1));
        assert_eq!(write(&slae, &["tridiag(1;2;1)".to_string()]), TRIDIAG);
    }

    #[test]
    fn accepts_rationals_and_decimals() {
        let slae = parse("4 1\n0 1/2 1 1\n2 2.5 2 -1e1\n1 1 1 0\n1 0 0 1\n").unwrap();
        assert_eq!(slae.matrix().band(1)[1], Rational::new(5.into(), 2.into()));
        assert_eq!(
            slae.matrix().band(1)[3],
            Rational::from_integer((-10).into())
        );
    }

    #[test]
    fn reports_bad_scalar_location() {
        let err = parse("4 1\n0 1 1 1\n2 2 x 2\n1 1 1 0\n1 0 0 1\n").unwrap_err();
        let CliError::Parse(e) = err else {
            panic!("{err:?}")
        };
        assert_eq!((e.line, e.column), (3, 5));
    }

    #[test]
    fn reports_short_row_and_eof() {
        let CliError::Parse(e) = parse("4 1\n0 1 1\n").unwrap_err() else {
            panic!()
        };
        assert_eq!((e.line, e.column), (2, 6));
        let CliError::Parse(e) = parse("4 1\n0 1 1 1\n").unwrap_err() else {
            panic!()
        };
        assert_eq!(e.line, 2);
        assert!(e.message.contains("end of file"));
    }

    #[test]
    fn band_violations_are_dimension_errors() {
        assert!(matches!(
            parse("5 2\n").unwrap_err(),
            CliError::Dimension(_)
        ));
        // nonzero in the out-of-band slot of diagonal 0
        let err = parse("4 1\n9 1 1 1\n2 2 2 2\n1 1 1 0\n1 0 0 1\n").unwrap_err();
        assert!(matches!(err, CliError::Dimension(_)), "{err:?}");
    }
}
