//! The textual variety grammar.
//!
//! ```text
//! spec := Pn(int) | A(int) | Gr(int, int) | P1xP1 | resP1 | ell(int, int)
//!       | prod(spec, spec) | disj(spec, spec) | table(path) | weil(path)
//! ```
//!
//! Every alternative starts with a distinct keyword, so one token of
//! lookahead decides the production.

use std::fmt;
use std::path::PathBuf;

use gwzeta::varieties::{
    self, affine_space, box_partition_counts, disjoint_union, elliptic_curve, grassmannian, parse_source_json, product,
    projective_space, weil_restriction_p1, CellData, PointCountSource,
};
use gwzeta::FqTag;

use crate::CliError;

const KEYWORDS: [&str; 10] = ["Pn", "A", "Gr", "P1xP1", "prod", "disj", "resP1", "ell", "table", "weil"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VarietySpec {
    Projective(i64),
    Affine(i64),
    Grassmannian(i64, i64),
    P1xP1,
    Product(Box<VarietySpec>, Box<VarietySpec>),
    DisjointUnion(Box<VarietySpec>, Box<VarietySpec>),
    ResP1,
    Elliptic(i64, i64),
    Table(PathBuf),
    Weil(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at position {}: expected ", self.pos + 1)?;
        match self.expected.as_slice() {
            [one] => write!(f, "{one}")?,
            many => write!(f, "one of {}", many.join(", "))?,
        }
        write!(f, ", found {}", self.found)
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn found(&self) -> String {
        match self.peek() {
            Some(c) => format!("'{c}'"),
            None => "end of input".into(),
        }
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError { pos: self.pos, expected: expected.iter().map(|s| s.to_string()).collect(), found: self.found() }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(&[&format!("'{c}'")]))
        }
    }

    fn keyword(&mut self) -> Result<&'a str, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..].find(|c: char| !c.is_ascii_alphanumeric()).unwrap_or(self.src.len() - start);
        let word = &self.src[start..start + len];
        if !KEYWORDS.contains(&word) {
            let found = if word.is_empty() { self.found() } else { format!("'{word}'") };
            return Err(ParseError { pos: start, expected: KEYWORDS.iter().map(|s| s.to_string()).collect(), found });
        }
        self.pos += len;
        Ok(word)
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let sign = usize::from(rest.starts_with('-'));
        let digits = rest[sign..].find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len() - sign);
        if digits == 0 {
            self.pos += sign;
            return Err(self.error(&["integer"]));
        }
        let text = &rest[..sign + digits];
        let value = text.parse().map_err(|_| ParseError {
            pos: start,
            expected: vec!["integer".into()],
            found: format!("'{text}'"),
        })?;
        self.pos += sign + digits;
        Ok(value)
    }

    fn path(&mut self) -> Result<PathBuf, ParseError> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest.find(')').unwrap_or(rest.len());
        let text = rest[..len].trim_end();
        if text.is_empty() {
            return Err(self.error(&["file path"]));
        }
        self.pos += len;
        Ok(PathBuf::from(text))
    }

    fn spec(&mut self) -> Result<VarietySpec, ParseError> {
        let word = self.keyword()?;
        let spec = match word {
            "P1xP1" => VarietySpec::P1xP1,
            "resP1" => VarietySpec::ResP1,
            _ => {
                self.expect('(')?;
                let inner = match word {
                    "Pn" => VarietySpec::Projective(self.integer()?),
                    "A" => VarietySpec::Affine(self.integer()?),
                    "Gr" | "ell" => {
                        let a = self.integer()?;
                        self.expect(',')?;
                        let b = self.integer()?;
                        if word == "Gr" {
                            VarietySpec::Grassmannian(a, b)
                        } else {
                            VarietySpec::Elliptic(a, b)
                        }
                    }
                    "prod" | "disj" => {
                        let a = Box::new(self.spec()?);
                        self.expect(',')?;
                        let b = Box::new(self.spec()?);
                        if word == "prod" {
                            VarietySpec::Product(a, b)
                        } else {
                            VarietySpec::DisjointUnion(a, b)
                        }
                    }
                    "table" => VarietySpec::Table(self.path()?),
                    "weil" => VarietySpec::Weil(self.path()?),
                    _ => unreachable!("keyword list is exhaustive"),
                };
                self.expect(')')?;
                inner
            }
        };
        Ok(spec)
    }
}

pub fn parse(src: &str) -> Result<VarietySpec, ParseError> {
    let mut p = Parser { src, pos: 0 };
    let spec = p.spec()?;
    p.skip_ws();
    if p.pos < src.len() {
        return Err(p.error(&["end of input"]));
    }
    Ok(spec)
}

impl fmt::Display for VarietySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarietySpec::Projective(n) => write!(f, "Pn({n})"),
            VarietySpec::Affine(n) => write!(f, "A({n})"),
            VarietySpec::Grassmannian(r, n) => write!(f, "Gr({r},{n})"),
            VarietySpec::P1xP1 => write!(f, "P1xP1"),
            VarietySpec::Product(a, b) => write!(f, "prod({a},{b})"),
            VarietySpec::DisjointUnion(a, b) => write!(f, "disj({a},{b})"),
            VarietySpec::ResP1 => write!(f, "resP1"),
            VarietySpec::Elliptic(a, b) => write!(f, "ell({a},{b})"),
            VarietySpec::Table(p) => write!(f, "table({})", p.display()),
            VarietySpec::Weil(p) => write!(f, "weil({})", p.display()),
        }
    }
}

fn dimension(n: i64) -> Result<u32, CliError> {
    u32::try_from(n).map_err(|_| CliError::Variety(varieties::VarietyError::NegativeDimension(n)))
}

fn read_file(path: &PathBuf) -> Result<PointCountSource, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse_source_json(&text).map_err(CliError::Ingest)
}

impl VarietySpec {
    /// The field of the first file leaf, if any.
    pub fn file_field(&self) -> Result<Option<FqTag>, CliError> {
        match self {
            VarietySpec::Table(p) | VarietySpec::Weil(p) => Ok(Some(read_file(p)?.field())),
            VarietySpec::Product(a, b) | VarietySpec::DisjointUnion(a, b) => match a.file_field()? {
                Some(f) => Ok(Some(f)),
                None => b.file_field(),
            },
            _ => Ok(None),
        }
    }

    pub fn build(&self, field: FqTag) -> Result<PointCountSource, CliError> {
        let src = match self {
            VarietySpec::Projective(n) => projective_space(field, dimension(*n)?),
            VarietySpec::Affine(n) => affine_space(field, dimension(*n)?),
            VarietySpec::Grassmannian(r, n) => grassmannian(field, *r, *n)?,
            VarietySpec::P1xP1 => {
                let p1 = projective_space(field, 1);
                product(&p1, &p1)?
            }
            VarietySpec::Product(a, b) => product(&a.build(field)?, &b.build(field)?)?,
            VarietySpec::DisjointUnion(a, b) => disjoint_union(&a.build(field)?, &b.build(field)?)?,
            VarietySpec::ResP1 => weil_restriction_p1(field),
            VarietySpec::Elliptic(a, b) => elliptic_curve(field, *a, *b)?,
            VarietySpec::Table(p) | VarietySpec::Weil(p) => {
                let src = read_file(p)?;
                if src.field() != field {
                    return Err(CliError::Usage(format!(
                        "{} is over F_{} but the requested field is F_{}",
                        p.display(),
                        src.field().q(),
                        field.q()
                    )));
                }
                src
            }
        };
        Ok(src.with_label(self.to_string()))
    }

    /// Cell data, which does not depend on the field.
    pub fn cells(&self) -> Result<Option<CellData>, CliError> {
        Ok(match self {
            VarietySpec::Projective(n) => Some(CellData::new(vec![1; dimension(*n)? as usize + 1])),
            VarietySpec::Grassmannian(r, n) => {
                if *r < 0 || r >= n {
                    return Err(varieties::VarietyError::InvalidGrassmannian { r: *r, n: *n }.into());
                }
                Some(CellData::new(box_partition_counts(*r as u32 + 1, (n - r) as u32)))
            }
            VarietySpec::P1xP1 => Some(CellData::new(vec![1, 2, 1])),
            VarietySpec::Product(a, b) => match (a.cells()?, b.cells()?) {
                (Some(x), Some(y)) => Some(x.product(&y)),
                _ => None,
            },
            VarietySpec::DisjointUnion(a, b) => match (a.cells()?, b.cells()?) {
                (Some(x), Some(y)) => Some(x.disjoint_union(&y)),
                _ => None,
            },
            VarietySpec::Affine(n) => {
                dimension(*n)?;
                None
            }
            _ => None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_grammar() {
        assert_eq!(parse("Pn(3)").unwrap(), VarietySpec::Projective(3));
        assert_eq!(parse(" Gr( 1 , 3 ) ").unwrap(), VarietySpec::Grassmannian(1, 3));
        assert_eq!(parse("ell(2,-3)").unwrap(), VarietySpec::Elliptic(2, -3));
        assert_eq!(
            parse("prod(Pn(1),disj(A(2),resP1))").unwrap(),
            VarietySpec::Product(
                Box::new(VarietySpec::Projective(1)),
                Box::new(VarietySpec::DisjointUnion(Box::new(VarietySpec::Affine(2)), Box::new(VarietySpec::ResP1)))
            )
        );
        assert_eq!(parse("table(data/c.json)").unwrap(), VarietySpec::Table("data/c.json".into()));
        assert_eq!(parse("Pn(-1)").unwrap(), VarietySpec::Projective(-1));
        for s in ["Pn(3)", "prod(Pn(1),Gr(1,3))", "P1xP1", "weil(x.json)"] {
            assert_eq!(parse(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn reports_position_and_expectation() {
        let e = parse("Pn(x)").unwrap_err();
        assert_eq!((e.pos, e.expected.clone()), (3, vec!["integer".to_string()]));
        assert_eq!(e.to_string(), "parse error at position 4: expected integer, found 'x'");
        let e = parse("prod(Pn(1) Pn(2))").unwrap_err();
        assert_eq!(e.pos, 11);
        assert_eq!(e.expected, vec!["','"]);
        let e = parse("Qn(2)").unwrap_err();
        assert_eq!(e.pos, 0);
        assert_eq!(e.expected.len(), KEYWORDS.len());
        assert_eq!(e.found, "'Qn'");
        let e = parse("Pn(2))").unwrap_err();
        assert_eq!(e.expected, vec!["end of input"]);
        assert_eq!(parse("").unwrap_err().found, "end of input");
        assert_eq!(parse("Gr(1,").unwrap_err().found, "end of input");
    }

    #[test]
    fn validation_errors() {
        let f = FqTag::new(3).unwrap();
        assert!(matches!(parse("Pn(-1)").unwrap().build(f), Err(CliError::Variety(_))));
        assert!(matches!(parse("Gr(3,2)").unwrap().build(f), Err(CliError::Variety(_))));
        assert!(matches!(parse("ell(0,0)").unwrap().build(FqTag::new(5).unwrap()), Err(CliError::Variety(_))));
        assert!(matches!(parse("table(/nonexistent/x.json)").unwrap().build(f), Err(CliError::Io(_))));
    }

    #[test]
    fn structural_cells_match_built_sources() {
        let f = FqTag::new(5).unwrap();
        for s in ["Pn(4)", "Gr(1,3)", "P1xP1", "prod(Gr(1,3),Pn(1))", "disj(Pn(0),Pn(2))", "A(2)", "resP1"] {
            let spec = parse(s).unwrap();
            assert_eq!(spec.cells().unwrap().as_ref(), spec.build(f).unwrap().cells(), "{s}");
        }
    }
}
