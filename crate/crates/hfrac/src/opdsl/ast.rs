//! Chain AST with source spans and the canonical printer.

use std::fmt;

/// Byte range in the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

/// One operator of a chain.
#[derive(Debug, Clone, PartialEq)]
pub enum OpNode {
    I { mu: f64 },
    Ik { gamma: f64, mu: f64 },
    D { mu: f64 },
    Hilfer { mu: f64, nu: f64 },
    H { name: String },
}

impl fmt::Display for OpNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpNode::I { mu } => write!(f, "I[{mu}]"),
            OpNode::Ik { gamma, mu } => write!(f, "IK[{gamma},{mu}]"),
            OpNode::D { mu } => write!(f, "D[{mu}]"),
            OpNode::Hilfer { mu, nu } => write!(f, "D[{mu},{nu}]"),
            OpNode::H { name } => write!(f, "H[{name}]"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ChainNode {
    pub op: OpNode,
    pub span: Span,
}

#[derive(Debug, Clone)]
pub struct AppliedFn {
    pub name: String,
    pub span: Span,
}

/// An operator chain, optionally applied to a named test function.
/// Operators are stored left-to-right as written; application is
/// right-to-left (innermost last).
#[derive(Debug, Clone)]
pub struct OpChain {
    pub ops: Vec<ChainNode>,
    pub applied: Option<AppliedFn>,
}

impl OpChain {
    /// Canonical text form; `parse(pretty(c))` is structurally equal to c.
    pub fn pretty(&self) -> String {
        let mut parts: Vec<String> = self.ops.iter().map(|n| n.op.to_string()).collect();
        if let Some(f) = &self.applied {
            parts.push(format!("f:{}", f.name));
        }
        parts.join(" . ")
    }
}

/// Structural equality: spans are layout, not meaning.
impl PartialEq for OpChain {
    fn eq(&self, other: &Self) -> bool {
        self.ops.len() == other.ops.len()
            && self.ops.iter().zip(&other.ops).all(|(a, b)| a.op == b.op)
            && match (&self.applied, &other.applied) {
                (None, None) => true,
                (Some(a), Some(b)) => a.name == b.name,
                _ => false,
            }
    }
}

impl fmt::Display for OpChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}
