//! Combinatorics of the box `{0,..,n}^d`: vertices, positively oriented edges,
//! plaquettes, and the stratification of edges by the boundary faces they live in.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const NO_EDGE: u32 = u32::MAX;

/// A lattice site. Ordering is lexicographic in the coordinates, axis 0 first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Vertex(pub Vec<usize>);

impl Vertex {
    pub fn coords(&self) -> &[usize] {
        &self.0
    }

    /// Signed copy, convenient for neighbor arithmetic that may leave the box.
    pub fn to_signed(&self) -> Vec<i64> {
        self.0.iter().map(|&c| c as i64).collect()
    }
}

/// The edge `(base, base + e_axis)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub base: Vertex,
    pub axis: usize,
}

impl Edge {
    pub fn head(&self) -> Vertex {
        let mut c = self.base.0.clone();
        c[self.axis] += 1;
        Vertex(c)
    }
}

/// Plaquette `(x, j, k)` with `j < k`; `x` is its lexicographically smallest corner.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Plaquette {
    pub base: Vertex,
    pub j: usize,
    pub k: usize,
}

/// Serializable lattice summary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSummary {
    pub d: usize,
    pub n: usize,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub plaquette_count: usize,
    pub strata_histogram: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct Lattice {
    d: usize,
    n: usize,
    edges: Vec<Edge>,
    plaquettes: Vec<Plaquette>,
    strata: Vec<u8>,
    // vertex index * d + axis -> edge id
    edge_lookup: Vec<u32>,
}

/// Iterate all multi-indices of `{0,..,side-1}^d` in lexicographic order.
pub(crate) fn multi_indices(d: usize, side: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = side.pow(d as u32);
    (0..total).map(move |mut lin| {
        let mut c = vec![0usize; d];
        for a in (0..d).rev() {
            c[a] = lin % side;
            lin /= side;
        }
        c
    })
}

impl Lattice {
    pub fn new(d: usize, n: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::Dimension(d));
        }
        if n < 1 {
            return Err(Error::Side { min: 1, got: n });
        }
        let side = n + 1;
        let vcount = side.pow(d as u32);
        let mut edges = Vec::with_capacity(d * n * side.pow(d as u32 - 1));
        let mut plaquettes = Vec::new();
        let mut edge_lookup = vec![NO_EDGE; vcount * d];

        for (v, x) in multi_indices(d, side).enumerate() {
            for axis in 0..d {
                if x[axis] < n {
                    edge_lookup[v * d + axis] = edges.len() as u32;
                    edges.push(Edge {
                        base: Vertex(x.clone()),
                        axis,
                    });
                }
            }
            for j in 0..d {
                for k in (j + 1)..d {
                    if x[j] < n && x[k] < n {
                        plaquettes.push(Plaquette {
                            base: Vertex(x.clone()),
                            j,
                            k,
                        });
                    }
                }
            }
        }

        let strata = edges
            .iter()
            .map(|e| {
                e.base
                    .0
                    .iter()
                    .enumerate()
                    .filter(|&(a, &c)| a != e.axis && (c == 0 || c == n))
                    .count() as u8
            })
            .collect();

        Ok(Self {
            d,
            n,
            edges,
            plaquettes,
            strata,
            edge_lookup,
        })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn side(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        (self.n + 1).pow(self.d as u32)
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn plaquette_count(&self) -> usize {
        self.plaquettes.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> &Edge {
        &self.edges[id]
    }

    pub fn plaquettes(&self) -> &[Plaquette] {
        &self.plaquettes
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        multi_indices(self.d, self.n + 1).map(Vertex)
    }

    /// Linear (lexicographic) index of a site, `None` outside the box.
    pub fn vertex_index(&self, x: &[i64]) -> Option<usize> {
        let side = (self.n + 1) as i64;
        let mut lin = 0usize;
        for &c in x {
            if c < 0 || c >= side {
                return None;
            }
            lin = lin * side as usize + c as usize;
        }
        Some(lin)
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.vertex_index(x).is_some()
    }

    /// Id of the edge `(x, x + e_axis)`, `None` if it is not in the box.
    pub fn edge_id(&self, x: &[i64], axis: usize) -> Option<usize> {
        let v = self.vertex_index(x)?;
        match self.edge_lookup[v * self.d + axis] {
            NO_EDGE => None,
            id => Some(id as usize),
        }
    }

    /// Boundary stratum `k`: number of coordinates other than the edge axis that
    /// sit at 0 or n. Stratum-k edges are interior edges of (d-k)-dimensional faces.
    pub fn stratum(&self, id: usize) -> usize {
        self.strata[id] as usize
    }

    pub fn strata_histogram(&self) -> Vec<usize> {
        let mut h = vec![0; self.d];
        for &s in &self.strata {
            h[s as usize] += 1;
        }
        h
    }

    /// The four edges `e1..e4` of `p` with the signs they carry in `u_p`.
    pub fn plaquette_edges(&self, p: &Plaquette) -> [(usize, i8); 4] {
        let x = p.base.to_signed();
        let mut xj = x.clone();
        xj[p.j] += 1;
        let mut xk = x.clone();
        xk[p.k] += 1;
        let id = |y: &[i64], a| {
            self.edge_id(y, a)
                .expect("plaquette edges lie in the box by construction")
        };
        [
            (id(&x, p.j), 1),
            (id(&xj, p.k), 1),
            (id(&xk, p.j), -1),
            (id(&x, p.k), -1),
        ]
    }

    pub fn plaquettes_containing(&self, id: usize) -> Result<Vec<Plaquette>> {
        let e = self.edges.get(id).ok_or(Error::UnknownEdge(id))?;
        let x = &e.base.0;
        let i = e.axis;
        let mut out = Vec::with_capacity(2 * (self.d - 1));
        for j in (0..self.d).filter(|&j| j != i) {
            let (lo, hi) = (i.min(j), i.max(j));
            if x[j] < self.n {
                out.push(Plaquette {
                    base: e.base.clone(),
                    j: lo,
                    k: hi,
                });
            }
            if x[j] > 0 {
                let mut b = x.clone();
                b[j] -= 1;
                out.push(Plaquette {
                    base: Vertex(b),
                    j: lo,
                    k: hi,
                });
            }
        }
        out.sort();
        Ok(out)
    }

    /// Positive and negative neighbors of an edge, read off the sign pattern
    /// `u_p = u1 + u2 - u3 - u4` of every plaquette containing it.
    pub fn neighbor_sets(&self, id: usize) -> Result<(Vec<usize>, Vec<usize>)> {
        let mut plus = Vec::new();
        let mut minus = Vec::new();
        for p in self.plaquettes_containing(id)? {
            let es = self.plaquette_edges(&p);
            let role = es
                .iter()
                .position(|&(e, _)| e == id)
                .expect("containing plaquette has the edge");
            for (other, &(e, _)) in es.iter().enumerate() {
                if other == role {
                    continue;
                }
                let pair = (role.min(other), role.max(other));
                if pair == (0, 1) || pair == (2, 3) {
                    plus.push(e);
                } else {
                    minus.push(e);
                }
            }
        }
        plus.sort_unstable();
        minus.sort_unstable();
        Ok((plus, minus))
    }

    pub fn summary(&self) -> LatticeSummary {
        LatticeSummary {
            d: self.d,
            n: self.n,
            vertex_count: self.vertex_count(),
            edge_count: self.edge_count(),
            plaquette_count: self.plaquette_count(),
            strata_histogram: self.strata_histogram(),
        }
    }
}

/// Closed-form `(vertices, edges, plaquettes)` counts.
pub fn expected_counts(d: usize, n: usize) -> (usize, usize, usize) {
    let s = n + 1;
    let d32 = d as u32;
    (
        s.pow(d32),
        d * n * s.pow(d32 - 1),
        d * (d - 1) / 2 * n * n * s.pow(d32 - 2),
    )
}

/// The leading-order count `(d-1) n^d - d n^{d-1} + 1` quoted for `|E_n^1|`
/// in the free-energy asymptotics. Not exact; reported next to exact counts.
pub fn asymptotic_free_edge_count(d: usize, n: usize) -> i64 {
    let (d, n) = (d as i64, n as i64);
    (d - 1) * n.pow(d as u32) - d * n.pow(d as u32 - 1) + 1
}
