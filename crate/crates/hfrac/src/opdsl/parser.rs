//! Hand-rolled recursive-descent parser for the chain grammar, with
//! line/column error positions and registry-checked H references.

use super::ast::{AppliedFn, ChainNode, OpChain, OpNode, Span};
use super::registry::OpRegistry;
use super::ParseError;

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn error_at(&self, pos: usize, msg: impl Into<String>) -> ParseError {
        let mut line = 1;
        let mut col = 1;
        for (i, ch) in self.src.char_indices() {
            if i >= pos {
                break;
            }
            if ch == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        ParseError { line, col, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src.as_bytes()[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn expect(&mut self, ch: u8) -> Result<(), ParseError> {
        if self.peek() == Some(ch) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error_at(self.pos, format!("expected '{}'", ch as char)))
        }
    }

    fn ident(&mut self) -> Result<(String, Span), ParseError> {
        let start = self.pos;
        let bytes = self.src.as_bytes();
        if self.pos >= bytes.len() || !(bytes[self.pos].is_ascii_alphabetic() || bytes[self.pos] == b'_') {
            return Err(self.error_at(self.pos, "expected an identifier"));
        }
        self.pos += 1;
        while self.pos < bytes.len()
            && (bytes[self.pos].is_ascii_alphanumeric()
                || bytes[self.pos] == b'_'
                || bytes[self.pos] == b'#')
        {
            self.pos += 1;
        }
        Ok((self.src[start..self.pos].to_string(), Span { start, end: self.pos }))
    }

    fn number(&mut self) -> Result<f64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len()
            && matches!(bytes[self.pos], b'0'..=b'9' | b'.' | b'-' | b'+' | b'e' | b'E')
        {
            self.pos += 1;
        }
        let text = &self.src[start..self.pos];
        text.parse::<f64>()
            .map_err(|_| self.error_at(start, format!("expected a decimal number, got '{text}'")))
    }
}

/// Parse a chain, validating operator orders and H references against the
/// registry.
pub fn parse(text: &str, registry: &OpRegistry) -> Result<OpChain, ParseError> {
    let mut cur = Cursor { src: text, pos: 0 };
    let mut ops: Vec<ChainNode> = Vec::new();
    let mut applied: Option<AppliedFn> = None;

    loop {
        cur.skip_ws();
        let term_start = cur.pos;
        let (head, head_span) = cur.ident()?;
        if let Some(f) = &applied {
            let _ = f;
            return Err(cur.error_at(term_start, "the applied function must be the last term"));
        }
        match head.as_str() {
            "f" => {
                cur.expect(b':')?;
                cur.skip_ws();
                let (name, span) = cur.ident()?;
                applied = Some(AppliedFn { name, span: Span { start: term_start, end: span.end } });
            }
            "I" | "IK" | "D" | "H" => {
                cur.skip_ws();
                cur.expect(b'[')?;
                let op = match head.as_str() {
                    "I" => {
                        let mu = cur.number()?;
                        if !(mu > 0.0) {
                            return Err(cur.error_at(
                                term_start,
                                format!("integral order must be positive, got {mu}"),
                            ));
                        }
                        OpNode::I { mu }
                    }
                    "IK" => {
                        let gamma = cur.number()?;
                        cur.skip_ws();
                        cur.expect(b',')?;
                        let mu = cur.number()?;
                        if !(gamma > -1.0) || !(mu > 0.0) {
                            return Err(cur.error_at(
                                term_start,
                                format!("IK needs gamma > -1 and mu > 0, got ({gamma}, {mu})"),
                            ));
                        }
                        OpNode::Ik { gamma, mu }
                    }
                    "D" => {
                        let mu = cur.number()?;
                        cur.skip_ws();
                        if cur.peek() == Some(b',') {
                            cur.pos += 1;
                            let nu = cur.number()?;
                            if !(mu > 0.0 && mu < 1.0) || !(0.0..=1.0).contains(&nu) {
                                return Err(cur.error_at(
                                    term_start,
                                    format!(
                                        "Hilfer needs 0 < mu < 1 and 0 <= nu <= 1, got ({mu}, {nu})"
                                    ),
                                ));
                            }
                            OpNode::Hilfer { mu, nu }
                        } else {
                            if !(mu > 0.0) {
                                return Err(cur.error_at(
                                    term_start,
                                    format!("derivative order must be positive, got {mu}"),
                                ));
                            }
                            OpNode::D { mu }
                        }
                    }
                    "H" => {
                        cur.skip_ws();
                        let (name, span) = cur.ident()?;
                        if registry.get(&name).is_none() {
                            return Err(cur.error_at(
                                span.start,
                                format!("unknown H identifier '{name}'"),
                            ));
                        }
                        OpNode::H { name }
                    }
                    _ => unreachable!(),
                };
                cur.skip_ws();
                cur.expect(b']')?;
                ops.push(ChainNode { op, span: Span { start: term_start, end: cur.pos } });
            }
            other => {
                return Err(cur.error_at(
                    head_span.start,
                    format!("unknown term '{other}' (expected I, IK, D, H or f:)"),
                ));
            }
        }
        cur.skip_ws();
        match cur.peek() {
            Some(b'.') => {
                cur.pos += 1;
            }
            None => break,
            Some(c) => {
                return Err(cur.error_at(cur.pos, format!("expected '.' or end, got '{}'", c as char)))
            }
        }
    }
    if ops.is_empty() && applied.is_none() {
        return Err(cur.error_at(0, "empty chain"));
    }
    Ok(OpChain { ops, applied })
}
