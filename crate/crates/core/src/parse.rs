//! Parser and renderer for the ASCII object-term grammar
//!
//! ```text
//! obj ::= "*" | "[" NAT "](" [ obj ("," obj)* ] ")"
//! ```
//!
//! The bracket number must equal the number of children.  Rendering is
//! canonical (no whitespace); parsing tolerates whitespace around tokens.
//!
//! The text of a term does not always determine its level: `[0]()` is a
//! valid object at every level >= 1.  [`parse_object`] therefore takes the
//! intended level, as the CLI always knows it; [`parse_object_infer`]
//! assigns the minimal level instead.

use alloc::vec::Vec;

use crate::error::{ParseError, ParseErrorKind, TermError};
use crate::term::ObjectTerm;

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8, expected: &'static str) -> Result<(), ParseError> {
        match self.peek() {
            Some(b) if b == c => {
                self.pos += 1;
                Ok(())
            }
            Some(b) => Err(ParseError {
                position: self.pos,
                kind: ParseErrorKind::Unexpected {
                    found: b as char,
                    expected,
                },
            }),
            None => Err(ParseError {
                position: self.bytes.len(),
                kind: ParseErrorKind::UnexpectedEnd { expected },
            }),
        }
    }

    fn nat(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(&b) = self.bytes.get(self.pos) {
            if !b.is_ascii_digit() {
                break;
            }
            value = value * 10 + u64::from(b - b'0');
            if value > u64::from(u32::MAX) {
                return Err(ParseError {
                    position: start,
                    kind: ParseErrorKind::NumberOverflow,
                });
            }
            self.pos += 1;
        }
        if self.pos == start {
            return Err(match self.bytes.get(self.pos) {
                Some(&b) => ParseError {
                    position: self.pos,
                    kind: ParseErrorKind::Unexpected {
                        found: b as char,
                        expected: "a number",
                    },
                },
                None => ParseError {
                    position: self.pos,
                    kind: ParseErrorKind::UnexpectedEnd {
                        expected: "a number",
                    },
                },
            });
        }
        Ok(value as u32)
    }
}

// Raw syntax tree before levels are assigned.
struct RawTerm {
    star: bool,
    children: Vec<RawTerm>,
    position: usize,
}

impl RawTerm {
    fn min_level(&self) -> u32 {
        if self.star {
            0
        } else {
            1 + self
                .children
                .iter()
                .map(RawTerm::min_level)
                .max()
                .unwrap_or(0)
        }
    }

    fn to_object(&self, level: u32) -> Result<ObjectTerm, ParseError> {
        if self.star {
            if level != 0 {
                return Err(ParseError {
                    position: self.position,
                    kind: ParseErrorKind::Level(TermError::LevelMismatch {
                        expected: level,
                        found: 0,
                    }),
                });
            }
            return Ok(ObjectTerm::star());
        }
        if level == 0 {
            return Err(ParseError {
                position: self.position,
                kind: ParseErrorKind::Level(TermError::LevelMismatch {
                    expected: 0,
                    found: self.min_level(),
                }),
            });
        }
        let children = self
            .children
            .iter()
            .map(|c| c.to_object(level - 1))
            .collect::<Result<Vec<_>, _>>()?;
        ObjectTerm::node(level, children).map_err(|e| ParseError {
            position: self.position,
            kind: ParseErrorKind::Level(e),
        })
    }
}

fn parse_raw(cur: &mut Cursor<'_>) -> Result<RawTerm, ParseError> {
    let position = {
        cur.skip_ws();
        cur.pos
    };
    match cur.peek() {
        Some(b'*') => {
            cur.pos += 1;
            Ok(RawTerm {
                star: true,
                children: Vec::new(),
                position,
            })
        }
        Some(b'[') => {
            cur.pos += 1;
            let declared = cur.nat()?;
            cur.expect(b']', "']'")?;
            cur.expect(b'(', "'('")?;
            let mut children = Vec::new();
            if cur.peek() != Some(b')') {
                loop {
                    children.push(parse_raw(cur)?);
                    match cur.peek() {
                        Some(b',') => {
                            cur.pos += 1;
                        }
                        _ => break,
                    }
                }
            }
            cur.expect(b')', "')' or ','")?;
            if declared as usize != children.len() {
                return Err(ParseError {
                    position,
                    kind: ParseErrorKind::ArityAnnotation {
                        declared,
                        found: children.len(),
                    },
                });
            }
            Ok(RawTerm {
                star: false,
                children,
                position,
            })
        }
        Some(b) => Err(ParseError {
            position: cur.pos,
            kind: ParseErrorKind::Unexpected {
                found: b as char,
                expected: "'*' or '['",
            },
        }),
        None => Err(ParseError {
            position: cur.pos,
            kind: ParseErrorKind::UnexpectedEnd {
                expected: "'*' or '['",
            },
        }),
    }
}

fn parse_complete(text: &str) -> Result<RawTerm, ParseError> {
    let mut cur = Cursor::new(text);
    let raw = parse_raw(&mut cur)?;
    if cur.peek().is_some() {
        return Err(ParseError {
            position: cur.pos,
            kind: ParseErrorKind::TrailingInput,
        });
    }
    Ok(raw)
}

/// Parse an object term at a given level.
pub fn parse_object(text: &str, level: u32) -> Result<ObjectTerm, ParseError> {
    parse_complete(text)?.to_object(level)
}

/// Parse an object term at the minimal level its text admits.
pub fn parse_object_infer(text: &str) -> Result<ObjectTerm, ParseError> {
    let raw = parse_complete(text)?;
    raw.to_object(raw.min_level())
}

/// Canonical rendering; identical to [`ObjectTerm::render`].
pub fn render_object(obj: &ObjectTerm) -> alloc::string::String {
    obj.render()
}
