//! Error types shared across the crate.

use thiserror::Error;

/// Which side of a class switch violated a precondition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwitchSide {
    Source,
    Target,
}

impl std::fmt::Display for SwitchSide {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SwitchSide::Source => write!(f, "source"),
            SwitchSide::Target => write!(f, "target"),
        }
    }
}

/// Clause of a Tutte-Berge certificate that failed structural validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateFault {
    /// A vertex index in the certificate is not a vertex of the graph.
    VertexOutOfRange,
    /// The head set and the listed components are not pairwise disjoint.
    Overlap,
    /// The stored witness value does not match the stored head and components.
    WitnessArithmetic,
    /// A stored parity flag disagrees with the size of its component.
    ParityFlag,
}

impl std::fmt::Display for CertificateFault {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CertificateFault::VertexOutOfRange => "vertex index out of range",
            CertificateFault::Overlap => "head and components overlap",
            CertificateFault::WitnessArithmetic => "witness value inconsistent with fields",
            CertificateFault::ParityFlag => "parity flag inconsistent with component size",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph capacity exceeded: {requested} vertices, limit {limit}")]
    Capacity { requested: usize, limit: usize },

    #[error("switch endpoints must be distinct, got vertex {v} twice")]
    SwitchSameVertex { v: usize },

    #[error("switch endpoints {u} and {v} must be non-adjacent")]
    SwitchAdjacent { u: usize, v: usize },

    #[error("class switch: source and target sets are not disjoint")]
    SwitchClassNotDisjoint,

    #[error("class switch: {side} set is not independent")]
    SwitchClassNotIndependent { side: SwitchSide },

    #[error("class switch: {side} set vertices have differing neighborhoods")]
    SwitchClassUnequalNeighborhoods { side: SwitchSide },

    #[error("class switch: an edge joins the source and target sets")]
    SwitchClassCrossEdge,

    #[error("parameter out of domain: {reason}")]
    Domain { reason: String },

    #[error("arithmetic overflow in {context}")]
    Overflow { context: &'static str },

    #[error("{what} supports at most {limit}, requested {requested}")]
    Budget {
        what: &'static str,
        limit: usize,
        requested: usize,
    },

    #[error("graph6: byte {byte:#04x} at offset {offset} outside the printable range 63..=126")]
    Graph6InvalidByte { byte: u8, offset: usize },

    #[error("graph6: expected {expected} payload bytes after the header, got {got}")]
    Graph6PayloadLength { expected: usize, got: usize },

    #[error("graph6: long-form headers (63 or more vertices) are not supported")]
    Graph6LongForm,

    #[error("graph6: nonzero padding bits in the final byte")]
    Graph6TrailingBits,

    #[error("graph6: short form encodes at most 62 vertices, graph has {n}")]
    Graph6TooLarge { n: usize },

    #[error("graph6: empty string")]
    Graph6Empty,

    // The position is folded into the message rather than chained as a
    // source, so callers printing a full error chain see it exactly once.
    #[error("line {line}: {inner}")]
    AtLine { line: usize, inner: Box<Error> },

    #[error("stream graph {index} has {got} vertices, search expects {expected}")]
    StreamOrderMismatch {
        index: usize,
        expected: usize,
        got: usize,
    },

    #[error("malformed certificate: {fault}")]
    Certificate { fault: CertificateFault },

    #[error("forbidden subgraph must contain at least one edge")]
    EdgelessForbidden,
}

impl Error {
    pub fn domain(reason: impl Into<String>) -> Self {
        Error::Domain {
            reason: reason.into(),
        }
    }

    pub fn at_line(self, line: usize) -> Self {
        Error::AtLine {
            line,
            inner: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
