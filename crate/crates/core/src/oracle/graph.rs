//! Explicit Cayley and Cayley-sum graphs on `F_q`.

use crate::error::{Error, Result};
use crate::ff::{self, FieldSpec};
use crate::spectra::{GraphSpec, Variant};

pub const DEFAULT_DENSE_CAP: u64 = 4096;

/// Symmetric 0/1 adjacency matrix with bit-packed rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseGraph {
    q: usize,
    words: usize,
    bits: Vec<u64>,
    loop_count: usize,
}

impl DenseGraph {
    fn empty(q: usize) -> Self {
        let words = q.div_ceil(64);
        DenseGraph { q, words, bits: vec![0; q * words], loop_count: 0 }
    }

    fn set(&mut self, i: usize, j: usize, on: bool) {
        let w = &mut self.bits[i * self.words + j / 64];
        let mask = 1u64 << (j % 64);
        if on {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn loop_count(&self) -> usize {
        self.loop_count
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn row_sum(&self, i: usize) -> usize {
        self.bits[i * self.words..(i + 1) * self.words]
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    /// Common row sum, or `None` if the graph is not regular.
    pub fn degree(&self) -> Option<usize> {
        let d = if self.q == 0 { 0 } else { self.row_sum(0) };
        (0..self.q).all(|i| self.row_sum(i) == d).then_some(d)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.q).all(|i| (0..i).all(|j| self.has_edge(i, j) == self.has_edge(j, i)))
    }

    /// Row-major dense copy.
    pub fn to_matrix<T: num_traits::Float>(&self) -> Vec<T> {
        let mut out = vec![T::zero(); self.q * self.q];
        for i in 0..self.q {
            for j in 0..self.q {
                if self.has_edge(i, j) {
                    out[i * self.q + j] = T::one();
                }
            }
        }
        out
    }
}

/// Builds the graph named by `g` under [`DEFAULT_DENSE_CAP`].
pub fn build_graph(g: &GraphSpec) -> Result<DenseGraph> {
    build_graph_with_cap(g, DEFAULT_DENSE_CAP)
}

pub fn build_graph_with_cap(g: &GraphSpec, cap: u64) -> Result<DenseGraph> {
    g.p.checked_pow(g.m).filter(|&q| q <= cap).ok_or_else(|| Error::CapExceeded {
        what: "dense graph",
        size: format!("{}^{}", g.p, g.m),
        cap,
    })?;
    let field = ff::make_field(g.p, g.m)?;
    build_in_field(&field, g.k.into(), g.variant)
}

/// Vertices are field elements in index order; `v ~ w` iff `w - v ∈ R_k`
/// (or `v + w ∈ R_k` for sum graphs). Complements flip off-diagonal bits.
pub fn build_in_field(field: &FieldSpec, k: u64, variant: Variant) -> Result<DenseGraph> {
    let residues = field.residue_indices(k)?;
    let q = field.order() as usize;
    let mut graph = DenseGraph::empty(q);
    for v in 0..q as u64 {
        for &r in &residues {
            let w = if variant.is_sum() { field.sub_index(r, v) } else { field.add_index(v, r) };
            graph.set(v as usize, w as usize, true);
        }
    }
    if variant.is_complement() {
        for i in 0..q {
            for j in 0..q {
                if i != j {
                    let on = !graph.has_edge(i, j);
                    graph.set(i, j, on);
                }
            }
        }
    }
    graph.loop_count = (0..q).filter(|&i| graph.has_edge(i, i)).count();
    Ok(graph)
}
