//! Cartesian, direct, rooted and corona products with coordinate bookkeeping.
//!
//! Vertex `(g, h)` of a Cartesian, direct or rooted product has index
//! `g * |V(H)| + h`. A corona lists the vertices of `G` first and then the
//! copies of `H` blockwise: copy `i` occupies `n_G + i * n_H ..`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProductError {
    #[error("product factor has no vertices")]
    EmptyFactor,
    #[error("root {root} is not a vertex of a factor of order {order}")]
    RootOutOfRange { root: usize, order: usize },
    #[error("layers are not defined for corona products")]
    NoLayers,
    #[error("layer index {index} out of range for factor of order {order}")]
    LayerOutOfRange { index: usize, order: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProductKind {
    Cartesian,
    Direct,
    Rooted,
    Corona,
}

/// Which slice of a product to take.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layer {
    /// `G^h`: all `(g, h)` for fixed `h`.
    G,
    /// `ᵍH`: all `(g, h)` for fixed `g`.
    H,
}

#[derive(Debug, Clone)]
pub struct ProductGraph {
    pub graph: Graph,
    pub g_order: usize,
    pub h_order: usize,
    pub kind: ProductKind,
    pub root: Option<usize>,
}

impl ProductGraph {
    /// Coordinates of vertex `v`. For ×-style products this is `(g, Some(h))`.
    /// For a corona, original vertices map to `(g, None)` and copy vertices
    /// to `(copy index, Some(h))`.
    pub fn coord(&self, v: usize) -> (usize, Option<usize>) {
        match self.kind {
            ProductKind::Corona if v < self.g_order => (v, None),
            ProductKind::Corona => {
                let w = v - self.g_order;
                (w / self.h_order, Some(w % self.h_order))
            }
            _ => (v / self.h_order, Some(v % self.h_order)),
        }
    }

    /// Inverse of [`coord`](Self::coord).
    pub fn vertex(&self, g: usize, h: Option<usize>) -> usize {
        match (self.kind, h) {
            (ProductKind::Corona, None) => g,
            (ProductKind::Corona, Some(h)) => self.g_order + g * self.h_order + h,
            (_, h) => g * self.h_order + h.expect("non-corona coordinates carry h"),
        }
    }

    pub fn layer(&self, which: Layer, index: usize) -> Result<VertexSet, ProductError> {
        if self.kind == ProductKind::Corona {
            return Err(ProductError::NoLayers);
        }
        match which {
            Layer::G => {
                check_index(index, self.h_order)?;
                Ok((0..self.g_order)
                    .map(|g| g * self.h_order + index)
                    .collect())
            }
            Layer::H => {
                check_index(index, self.g_order)?;
                Ok((0..self.h_order)
                    .map(|h| index * self.h_order + h)
                    .collect())
            }
        }
    }
}

fn check_index(index: usize, order: usize) -> Result<(), ProductError> {
    if index >= order {
        return Err(ProductError::LayerOutOfRange { index, order });
    }
    Ok(())
}

fn check_factors(g: &Graph, h: &Graph) -> Result<(), ProductError> {
    if g.order() == 0 || h.order() == 0 {
        return Err(ProductError::EmptyFactor);
    }
    Ok(())
}

fn wrap(
    graph: Graph,
    g: &Graph,
    h: &Graph,
    kind: ProductKind,
    root: Option<usize>,
) -> ProductGraph {
    ProductGraph {
        graph,
        g_order: g.order(),
        h_order: h.order(),
        kind,
        root,
    }
}

/// `G □ H`: adjacent in one coordinate, equal in the other.
pub fn cartesian(g: &Graph, h: &Graph) -> Result<ProductGraph, ProductError> {
    check_factors(g, h)?;
    let m = h.order();
    let mut p = Graph::empty(g.order() * m);
    for x in g.vertices() {
        for (a, b) in h.edges() {
            p.link(x * m + a, x * m + b);
        }
    }
    for (x, y) in g.edges() {
        for a in h.vertices() {
            p.link(x * m + a, y * m + a);
        }
    }
    Ok(wrap(p, g, h, ProductKind::Cartesian, None))
}

/// `G × H`: adjacent in both coordinates.
pub fn direct(g: &Graph, h: &Graph) -> Result<ProductGraph, ProductError> {
    check_factors(g, h)?;
    let m = h.order();
    let mut p = Graph::empty(g.order() * m);
    for (x, y) in g.edges() {
        for (a, b) in h.edges() {
            p.link(x * m + a, y * m + b);
            p.link(x * m + b, y * m + a);
        }
    }
    Ok(wrap(p, g, h, ProductKind::Direct, None))
}

/// `G ∘_v H`: a copy of `H` per vertex of `G`, glued to `G` at the root `v`.
pub fn rooted(g: &Graph, h: &Graph, root: usize) -> Result<ProductGraph, ProductError> {
    check_factors(g, h)?;
    if root >= h.order() {
        return Err(ProductError::RootOutOfRange {
            root,
            order: h.order(),
        });
    }
    let m = h.order();
    let mut p = Graph::empty(g.order() * m);
    for x in g.vertices() {
        for (a, b) in h.edges() {
            p.link(x * m + a, x * m + b);
        }
    }
    for (x, y) in g.edges() {
        p.link(x * m + root, y * m + root);
    }
    Ok(wrap(p, g, h, ProductKind::Rooted, Some(root)))
}

/// `G ⊙ H`: vertex `i` of `G` joined to every vertex of the `i`-th copy of `H`.
pub fn corona(g: &Graph, h: &Graph) -> Result<ProductGraph, ProductError> {
    check_factors(g, h)?;
    let (n, m) = (g.order(), h.order());
    let mut p = Graph::empty(n * (1 + m));
    for (x, y) in g.edges() {
        p.link(x, y);
    }
    for i in 0..n {
        let base = n + i * m;
        for (a, b) in h.edges() {
            p.link(base + a, base + b);
        }
        for a in 0..m {
            p.link(i, base + a);
        }
    }
    Ok(wrap(p, g, h, ProductKind::Corona, None))
}
