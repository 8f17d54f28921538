//! Neighborhoods, d-uncoverable vertex sets, and graph-state codes built from them.

use rayon::prelude::*;

use crate::code_builder::CodeSpec;
use crate::error::{Error, Result};
use crate::fp_algebra::{combinations, PauliLabel};
use crate::state_oracle::StateVector;

use super::{VertexSet, WeightedGraph};

/// Largest `n` for which the full family of uncoverable sets is enumerated.
pub const MAX_FAMILY_VERTICES: usize = 20;

/// `N_S`: vertices with a nonzero edge to some member of `S`.
pub fn neighborhood(g: &WeightedGraph, s: VertexSet) -> VertexSet {
    s.vertices()
        .fold(VertexSet::EMPTY, |acc, v| acc.union(g.neighbors(v)))
}

/// Z-support produced by `X_ω` on a graph state: the support of `Σ_{u∈ω} Γ_u`.
///
/// Over `F_2` these are the vertices with an odd number of neighbors in `ω`.
/// For odd `p` each member contributes its row with coefficient 1; other
/// coefficient choices are not explored.
pub fn odd_neighborhood(g: &WeightedGraph, omega: VertexSet) -> VertexSet {
    let p = g.p();
    if p.is_two() {
        return omega.vertices().fold(VertexSet::EMPTY, |acc, v| {
            acc.symmetric_difference(g.neighbors(v))
        });
    }
    let n = g.n();
    let mut sum = vec![0u8; n];
    for u in omega.vertices() {
        for (j, s) in sum.iter_mut().enumerate() {
            *s = p.add(*s, g.adj().get(u - 1, j));
        }
    }
    VertexSet::from_bits(
        sum.iter()
            .enumerate()
            .filter(|(_, &s)| s != 0)
            .fold(0u32, |acc, (j, _)| acc | 1 << j),
    )
}

/// A pair `(ω, δ)` with `δ △ N_ω = T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cover {
    pub omega: VertexSet,
    pub delta: VertexSet,
}

impl Cover {
    pub fn size(&self) -> usize {
        self.omega.union(self.delta).len()
    }
}

/// Every cover with `|ω ∪ δ| = |support|`, supports of size `s`, in a fixed order:
/// supports lexicographic, then each vertex assigned ω-only / δ-only / both.
fn covers_of_support(g: &WeightedGraph, support: &[usize]) -> Vec<(Cover, VertexSet)> {
    let s = support.len();
    let mut out = Vec::with_capacity(3usize.pow(s as u32));
    let mut choice = vec![0u8; s];
    loop {
        let (mut omega, mut delta) = (0u32, 0u32);
        for (&v, &c) in support.iter().zip(&choice) {
            if c != 1 {
                omega |= 1 << v;
            }
            if c != 0 {
                delta |= 1 << v;
            }
        }
        let cover = Cover {
            omega: VertexSet::from_bits(omega),
            delta: VertexSet::from_bits(delta),
        };
        let covered = cover
            .delta
            .symmetric_difference(odd_neighborhood(g, cover.omega));
        out.push((cover, covered));
        let Some(i) = (0..s).rev().find(|&i| choice[i] < 2) else {
            return out;
        };
        choice[i] += 1;
        for c in choice.iter_mut().skip(i + 1) {
            *c = 0;
        }
    }
}

/// The first `(ω, δ)` with `|ω ∪ δ| < d` and `δ △ N_ω = T`, searching by increasing size.
pub fn coverage_witness(g: &WeightedGraph, t: VertexSet, d: usize) -> Option<Cover> {
    let n = g.n();
    for s in 0..d.min(n + 1) {
        let found = combinations(n, s)
            .into_par_iter()
            .find_map_first(|support| {
                covers_of_support(g, &support)
                    .into_iter()
                    .find(|(_, covered)| *covered == t)
                    .map(|(cover, _)| cover)
            });
        if found.is_some() {
            return found;
        }
    }
    None
}

/// True iff no `(ω, δ)` with `|ω ∪ δ| < d` satisfies `δ △ N_ω = T`.
pub fn is_uncoverable(g: &WeightedGraph, t: VertexSet, d: usize) -> bool {
    coverage_witness(g, t, d).is_none()
}

/// All subsets of `V` that cannot be covered with fewer than `d` vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UncoverableSet {
    pub d: usize,
    pub n: usize,
    /// In increasing bitmask order.
    pub sets: Vec<VertexSet>,
}

impl UncoverableSet {
    pub fn contains(&self, t: VertexSet) -> bool {
        self.sets.binary_search(&t).is_ok()
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

pub fn uncoverable_family(g: &WeightedGraph, d: usize) -> Result<UncoverableSet> {
    let n = g.n();
    if n > MAX_FAMILY_VERTICES {
        return Err(Error::Capacity {
            what: "vertex count for uncoverable-set enumeration",
            size: n as u128,
            limit: MAX_FAMILY_VERTICES as u128,
        });
    }
    let mut coverable = vec![false; 1 << n];
    for s in 0..d.min(n + 1) {
        let hits: Vec<Vec<u32>> = combinations(n, s)
            .into_par_iter()
            .map(|support| {
                covers_of_support(g, &support)
                    .into_iter()
                    .map(|(_, covered)| covered.bits())
                    .collect()
            })
            .collect();
        for bits in hits.into_iter().flatten() {
            coverable[bits as usize] = true;
        }
    }
    Ok(UncoverableSet {
        d,
        n,
        sets: (0..1u32 << n)
            .filter(|&b| !coverable[b as usize])
            .map(VertexSet::from_bits)
            .collect(),
    })
}

fn graph_tag(g: &WeightedGraph) -> String {
    let n = g.n();
    let edges: Vec<String> = (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
        .filter(|&(u, v)| g.weight(u, v) != 0)
        .map(|(u, v)| match g.weight(u, v) {
            1 => format!("{u}-{v}"),
            w => format!("{u}-{v}:{w}"),
        })
        .collect();
    format!("n={n} edges=[{}]", edges.join(","))
}

/// Graph-state code with basis `Z_{C_i}|ψ_G⟩`, i.e. functions `f + χ(C_i)·x`.
///
/// Accepts when `∅ ∈ C` and every `C_i △ C_j` (`i != j`) is `d`-uncoverable;
/// otherwise the rejection names the failing condition, pair and cover.
pub fn corollary1_build(g: &WeightedGraph, classes: &[VertexSet], d: usize) -> Result<CodeSpec> {
    if !g.p().is_two() {
        return Err(Error::UnsupportedField(format!(
            "graph-state codes from vertex classes need F_2 (got F_{})",
            g.p()
        )));
    }
    if d == 0 {
        return Err(Error::Precondition("d must be at least 1".into()));
    }
    let full = VertexSet::full(g.n());
    for c in classes {
        if !c.is_subset_of(full) {
            return Err(Error::Precondition(format!(
                "class {c} exceeds n = {}",
                g.n()
            )));
        }
    }
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            if classes[i] == classes[j] {
                return Err(Error::Duplicate(format!(
                    "classes {} and {} are both {}",
                    i + 1,
                    j + 1,
                    classes[i]
                )));
            }
        }
    }
    if !classes.contains(&VertexSet::EMPTY) {
        return Err(Error::Rejected(
            "condition (1) fails: the empty set is not among the classes".into(),
        ));
    }
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            let t = classes[i].symmetric_difference(classes[j]);
            if let Some(cover) = coverage_witness(g, t, d) {
                return Err(Error::Rejected(format!(
                    "condition (2) fails: C{}△C{} = {t} is covered by ω = {}, δ = {} (|ω∪δ| = {} < {d})",
                    i + 1,
                    j + 1,
                    cover.omega,
                    cover.delta,
                    cover.size()
                )));
            }
        }
    }
    let f = g.quadratic_form()?;
    let basis = classes
        .iter()
        .map(|c| f.add_affine(&c.indicator(g.p(), g.n()), 0))
        .collect::<Result<Vec<_>>>()?;
    let class_tag: Vec<String> = classes.iter().map(|c| c.to_string()).collect();
    CodeSpec::new(
        basis,
        d,
        format!(
            "graph-code {} classes=[{}] d={d}",
            graph_tag(g),
            class_tag.join(",")
        ),
    )
}

/// `(e_i | Γ_i)` for each vertex.
pub fn graph_to_stabilizer_rows(g: &WeightedGraph) -> Vec<PauliLabel> {
    (1..=g.n()).map(|v| g.stabilizer(v)).collect()
}

/// Whether `X_{e_v} Z_{Γ_v}` fixes the graph state exactly.
pub fn verify_stabilizer(g: &WeightedGraph, v: usize) -> Result<bool> {
    if v == 0 || v > g.n() {
        return Err(Error::VariableOutOfRange { index: v, n: g.n() });
    }
    let psi = StateVector::<i64>::from_function(&g.quadratic_form()?);
    Ok(psi.apply_error(&g.stabilizer(v))? == psi)
}
