use std::fmt;

use crate::error::{Error, Result};
use crate::fp_algebra::{FpMatrix, FpVec, PauliLabel, Prime};
use crate::logic_fn::{parse_header, LogicFunction};

/// Largest vertex count a [`VertexSet`] bitmask can hold.
pub const MAX_VERTICES: usize = 32;

/// A subset of `{1..n}`; vertex `v` is bit `v − 1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u32);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u32) -> Self {
        VertexSet(bits)
    }

    /// From 1-based vertex numbers.
    pub fn from_vertices(vertices: &[usize]) -> Result<Self> {
        let mut bits = 0u32;
        for &v in vertices {
            if v == 0 || v > MAX_VERTICES {
                return Err(Error::VariableOutOfRange {
                    index: v,
                    n: MAX_VERTICES,
                });
            }
            bits |= 1 << (v - 1);
        }
        Ok(VertexSet(bits))
    }

    /// All of `{1..n}`.
    pub fn full(n: usize) -> Self {
        VertexSet(if n >= 32 { u32::MAX } else { (1u32 << n) - 1 })
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        (1..=MAX_VERTICES).contains(&v) && self.0 >> (v - 1) & 1 == 1
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn symmetric_difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 ^ other.0)
    }

    #[inline]
    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn is_subset_of(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Members in increasing order, 1-based.
    pub fn vertices(self) -> impl Iterator<Item = usize> {
        (0..MAX_VERTICES)
            .filter(move |i| self.0 >> i & 1 == 1)
            .map(|i| i + 1)
    }

    /// Indicator vector `χ(S)` in `F_p^n`.
    pub fn indicator(self, p: Prime, n: usize) -> FpVec {
        FpVec::indicator(p, n, self.vertices().map(|v| v - 1))
    }

    /// Parses `{1,2}` or a 0/1 string whose first character is vertex 1.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let text = text.trim();
        let set = if let Some(inner) = text.strip_prefix('{').and_then(|t| t.strip_suffix('}')) {
            let vs = inner
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>().map_err(|_| Error::Parse {
                        pos: 0,
                        msg: format!("bad vertex `{s}`"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Self::from_vertices(&vs)?
        } else {
            if text.len() != n || !text.bytes().all(|b| b == b'0' || b == b'1') {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!("expected {n} binary digits or {{..}}, got `{text}`"),
                });
            }
            let vs: Vec<usize> = text
                .bytes()
                .enumerate()
                .filter(|(_, b)| *b == b'1')
                .map(|(i, _)| i + 1)
                .collect();
            Self::from_vertices(&vs)?
        };
        if !set.is_subset_of(Self::full(n)) {
            return Err(Error::Parse {
                pos: 0,
                msg: format!("vertex set {set} exceeds n = {n}"),
            });
        }
        Ok(set)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Undirected graph with `F_p` edge weights, stored as its adjacency matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGraph {
    adj: FpMatrix,
}

impl WeightedGraph {
    pub fn new(adj: FpMatrix) -> Result<Self> {
        if adj.rows() != adj.cols() {
            return Err(Error::InvalidMatrix(format!(
                "adjacency must be square, got {}x{}",
                adj.rows(),
                adj.cols()
            )));
        }
        if adj.rows() == 0 || adj.rows() > MAX_VERTICES {
            return Err(Error::Capacity {
                what: "graph vertex count",
                size: adj.rows() as u128,
                limit: MAX_VERTICES as u128,
            });
        }
        if !adj.is_symmetric() {
            return Err(Error::InvalidMatrix("adjacency is not symmetric".into()));
        }
        if !adj.has_zero_diagonal() {
            return Err(Error::InvalidMatrix(
                "adjacency has a nonzero diagonal".into(),
            ));
        }
        Ok(WeightedGraph { adj })
    }

    /// From 1-based weighted edges; repeated edges overwrite.
    pub fn from_edges(p: Prime, n: usize, edges: &[(usize, usize, u8)]) -> Result<Self> {
        let mut adj = FpMatrix::zeros(p, n, n);
        for &(u, v, w) in edges {
            for x in [u, v] {
                if x == 0 || x > n {
                    return Err(Error::VariableOutOfRange { index: x, n });
                }
            }
            if u == v {
                return Err(Error::InvalidMatrix(format!("self-loop at vertex {u}")));
            }
            let w = w % p.get() as u8;
            adj.set(u - 1, v - 1, w);
            adj.set(v - 1, u - 1, w);
        }
        Self::new(adj)
    }

    pub fn empty(p: Prime, n: usize) -> Result<Self> {
        Self::new(FpMatrix::zeros(p, n, n))
    }

    pub fn complete(p: Prime, n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..=n)
            .flat_map(|u| (u + 1..=n).map(move |v| (u, v, 1)))
            .collect();
        Self::from_edges(p, n, &edges)
    }

    /// The ring `1-2-...-n-1`.
    pub fn cycle(p: Prime, n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..=n).map(|u| (u, u % n + 1, 1)).collect();
        Self::from_edges(p, n, &edges)
    }

    #[inline]
    pub fn p(&self) -> Prime {
        self.adj.p()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.rows()
    }

    #[inline]
    pub fn adj(&self) -> &FpMatrix {
        &self.adj
    }

    /// Weight of edge `{u, v}`, 1-based.
    pub fn weight(&self, u: usize, v: usize) -> u8 {
        self.adj.get(u - 1, v - 1)
    }

    /// Vertices joined to `v` by a nonzero weight.
    pub fn neighbors(&self, v: usize) -> VertexSet {
        let bits = (0..self.n())
            .filter(|&j| self.adj.get(v - 1, j) != 0)
            .fold(0u32, |acc, j| acc | 1 << j);
        VertexSet(bits)
    }

    /// `f(x) = Σ_{i<j} Γ_ij x_i x_j`.
    pub fn quadratic_form(&self) -> Result<LogicFunction> {
        LogicFunction::quadratic_form(&self.adj)
    }

    /// Stabilizer generator of vertex `v`: `(e_v | Γ_v)`.
    pub fn stabilizer(&self, v: usize) -> PauliLabel {
        let (p, n) = (self.p(), self.n());
        PauliLabel::new(FpVec::unit(p, n, v - 1), self.adj.row(v - 1))
            .expect("row and unit vector share the field")
    }

    /// Reads `p n` then `u v [w]` edge lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (_, header) = lines.next().ok_or_else(|| Error::Parse {
            pos: 0,
            msg: "empty graph file".into(),
        })?;
        let (p, n) = parse_header(header)?;
        let mut edges = Vec::new();
        for (line_no, line) in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            let bad = || Error::Parse {
                pos: line_no,
                msg: format!("expected `u v [w]`, got `{line}`"),
            };
            if !(2..=3).contains(&fields.len()) {
                return Err(bad());
            }
            let u: usize = fields[0].parse().map_err(|_| bad())?;
            let v: usize = fields[1].parse().map_err(|_| bad())?;
            let w: u32 = match fields.get(2) {
                Some(s) => s.parse().map_err(|_| bad())?,
                None => 1,
            };
            edges.push((u, v, (w % p.get()) as u8));
        }
        Self::from_edges(p, n, &edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_sets() {
        let s = VertexSet::from_vertices(&[1, 3]).unwrap();
        assert_eq!(s.to_string(), "{1,3}");
        assert_eq!(VertexSet::parse("1010", 4).unwrap(), s);
        assert_eq!(VertexSet::parse("{3, 1}", 4).unwrap(), s);
        assert_eq!(VertexSet::parse("{}", 4).unwrap(), VertexSet::EMPTY);
        assert!(VertexSet::parse("{5}", 4).is_err());
        assert!(VertexSet::parse("101", 4).is_err());
        assert_eq!(s.indicator(Prime::TWO, 4).to_string(), "1010");
        assert!(s.contains(3) && !s.contains(2) && !s.contains(0));
        assert_eq!(VertexSet::full(5).len(), 5);
    }

    #[test]
    fn graph_files() {
        let g = WeightedGraph::parse("# K3\n2 3\n1 2\n2 3\n1 3 1\n").unwrap();
        assert_eq!(g, WeightedGraph::complete(Prime::TWO, 3).unwrap());
        let w = WeightedGraph::parse("3 2\n1 2 2").unwrap();
        assert_eq!(w.weight(2, 1), 2);
        assert!(WeightedGraph::parse("2 3\n1 1").is_err());
        assert!(WeightedGraph::parse("2 3\n1 4").is_err());
        assert!(WeightedGraph::parse("2 3\n1 x").is_err());
        assert!(WeightedGraph::parse("").is_err());
    }

    #[test]
    fn adjacency_validation() {
        let p = Prime::TWO;
        let mut a = FpMatrix::zeros(p, 2, 2);
        a.set(0, 1, 1);
        assert!(WeightedGraph::new(a.clone()).is_err());
        a.set(1, 0, 1);
        assert!(WeightedGraph::new(a).is_ok());
        assert!(WeightedGraph::new(FpMatrix::zeros(p, 2, 3)).is_err());
    }

    #[test]
    fn cycle_neighbors() {
        let c5 = WeightedGraph::cycle(Prime::TWO, 5).unwrap();
        assert_eq!(c5.neighbors(1).to_string(), "{2,5}");
        assert_eq!(c5.neighbors(3).to_string(), "{2,4}");
        assert_eq!(c5.stabilizer(1).to_string(), "(10000|01001)");
    }
}
