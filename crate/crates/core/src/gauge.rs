//! Axial gauge: the maximal tree rooted at the origin, its complement, the
//! zero-sets of the axial one-form space, and the edge-field/one-form isomorphism.

use std::ops::Neg;

use serde::{Deserialize, Serialize};

use crate::field::{BoxDomain, OneForm};
use crate::lattice::{Lattice, Vertex};

/// Real (or integer) values on the canonical edge enumeration. Reads outside
/// the box return zero; reversed orientation flips the sign.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeField<T = f64> {
    pub values: Vec<T>,
}

impl<T: Copy + Default + Neg<Output = T>> EdgeField<T> {
    pub fn zeros(lat: &Lattice) -> Self {
        Self {
            values: vec![T::default(); lat.edge_count()],
        }
    }

    pub fn from_values(values: Vec<T>) -> Self {
        Self { values }
    }

    /// Value on the positively oriented edge `(x, x + e_axis)`, zero off the box.
    pub fn get(&self, lat: &Lattice, x: &[i64], axis: usize) -> T {
        lat.edge_id(x, axis)
            .map_or_else(T::default, |id| self.values[id])
    }

    /// Value on the oriented pair `(x, y)` of adjacent sites.
    pub fn oriented(&self, lat: &Lattice, x: &[i64], y: &[i64]) -> T {
        let diff: Vec<i64> = y.iter().zip(x).map(|(a, b)| a - b).collect();
        let axis = diff.iter().position(|&c| c != 0);
        match axis {
            Some(a) if diff.iter().filter(|&&c| c != 0).count() == 1 => match diff[a] {
                1 => self.get(lat, x, a),
                -1 => -self.get(lat, y, a),
                _ => T::default(),
            },
            _ => T::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaugeSummary {
    pub tree_edge_count: usize,
    pub free_edge_count: usize,
    pub dim_axial_space: usize,
    pub zero_set_sizes: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct AxialGauge {
    in_tree: Vec<bool>,
    tree_edges: Vec<usize>,
    free_edges: Vec<usize>,
    zero_sets: Vec<Vec<Vertex>>,
}

/// Membership test for the axial tree: `(x, x + e_j)` with `x_{j+1} = .. = x_d = 0`.
pub fn is_tree_edge(base: &[usize], axis: usize) -> bool {
    base[axis + 1..].iter().all(|&c| c == 0)
}

impl AxialGauge {
    pub fn new(lat: &Lattice) -> Self {
        let d = lat.dim();
        let n = lat.side();
        let in_tree: Vec<bool> = lat
            .edges()
            .iter()
            .map(|e| is_tree_edge(e.base.coords(), e.axis))
            .collect();
        let tree_edges = (0..in_tree.len()).filter(|&i| in_tree[i]).collect();
        let free_edges = (0..in_tree.len()).filter(|&i| !in_tree[i]).collect();

        let mut zero_sets = vec![Vec::new(); d];
        for v in lat.vertices() {
            let x = v.to_signed();
            let on_boundary = v.coords().iter().any(|&c| c == 0 || c == n);
            for (i, set) in zero_sets.iter_mut().enumerate() {
                let hit = match lat.edge_id(&x, i) {
                    Some(id) => in_tree[id],
                    None => on_boundary,
                };
                if hit {
                    set.push(v.clone());
                }
            }
        }

        Self {
            in_tree,
            tree_edges,
            free_edges,
            zero_sets,
        }
    }

    pub fn tree_edges(&self) -> &[usize] {
        &self.tree_edges
    }

    pub fn free_edges(&self) -> &[usize] {
        &self.free_edges
    }

    pub fn is_tree(&self, id: usize) -> bool {
        self.in_tree[id]
    }

    /// Sites where component `axis` of an axial one-form must vanish.
    pub fn zero_set(&self, axis: usize) -> &[Vertex] {
        &self.zero_sets[axis]
    }

    pub fn summary(&self) -> GaugeSummary {
        GaugeSummary {
            tree_edge_count: self.tree_edges.len(),
            free_edge_count: self.free_edges.len(),
            dim_axial_space: self.free_edges.len(),
            zero_set_sizes: self.zero_sets.iter().map(Vec::len).collect(),
        }
    }

    /// Orthonormal basis of the axial one-form space: images of the unit edge
    /// fields on free edges, in free-edge order.
    pub fn axial_basis(&self, lat: &Lattice) -> Vec<OneForm> {
        self.free_edges
            .iter()
            .map(|&id| {
                let e = lat.edge(id);
                OneForm::unit(lat.dim(), e.axis, &e.base.to_signed())
            })
            .collect()
    }

    /// Does `w` vanish on every zero-set, outside the box, and in the last component?
    pub fn is_axial(&self, lat: &Lattice, w: &OneForm) -> bool {
        let cube = BoxDomain::cube(lat.dim(), lat.side());
        for (i, comp) in w.components.iter().enumerate() {
            for x in comp.domain.sites() {
                let v = comp.get(&x);
                if v == 0.0 {
                    continue;
                }
                if !cube.contains(&x) || i + 1 >= lat.dim() {
                    return false;
                }
                let site = Vertex(x.iter().map(|&c| c as usize).collect());
                if self.zero_sets[i].binary_search(&site).is_ok() {
                    return false;
                }
            }
        }
        true
    }

    /// Zero the tree-edge entries of `u`, projecting onto the free-edge subspace.
    pub fn project_free(&self, u: &EdgeField<f64>) -> EdgeField<f64> {
        let values = u
            .values
            .iter()
            .zip(&self.in_tree)
            .map(|(&v, &t)| if t { 0.0 } else { v })
            .collect();
        EdgeField { values }
    }
}

/// `w_i(x) = u_{(x, x + e_i)}` on `{0,..,n}^d`, all `d` components.
pub fn edge_field_to_one_form(lat: &Lattice, u: &EdgeField<f64>) -> OneForm {
    let d = lat.dim();
    let mut w = OneForm::zeros(BoxDomain::cube(d, lat.side()), d);
    for (id, e) in lat.edges().iter().enumerate() {
        w.components[e.axis].set(&e.base.to_signed(), u.values[id]);
    }
    w
}

/// Inverse of [`edge_field_to_one_form`]; values of `w` not on edges are dropped.
pub fn one_form_to_edge_field(lat: &Lattice, w: &OneForm) -> EdgeField<f64> {
    let values = lat
        .edges()
        .iter()
        .map(|e| w.get(e.axis, &e.base.to_signed()))
        .collect();
    EdgeField { values }
}
