//! Real fields on finite boxes of `Z^d`, zero-extended to the whole lattice.

use serde::{Deserialize, Serialize};

/// Inclusive integer box `[lo_0, hi_0] x .. x [lo_{d-1}, hi_{d-1}]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxDomain {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
}

impl BoxDomain {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Self {
        assert_eq!(lo.len(), hi.len());
        Self { lo, hi }
    }

    /// The box `{0,..,n}^d`.
    pub fn cube(d: usize, n: usize) -> Self {
        Self::new(vec![0; d], vec![n as i64; d])
    }

    pub fn single(x: &[i64]) -> Self {
        Self::new(x.to_vec(), x.to_vec())
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    fn extent(&self, a: usize) -> usize {
        (self.hi[a] - self.lo[a] + 1).max(0) as usize
    }

    pub fn is_empty(&self) -> bool {
        (0..self.dim()).any(|a| self.hi[a] < self.lo[a])
    }

    pub fn site_count(&self) -> usize {
        (0..self.dim()).map(|a| self.extent(a)).product()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        x.iter()
            .enumerate()
            .all(|(a, &c)| c >= self.lo[a] && c <= self.hi[a])
    }

    pub fn index(&self, x: &[i64]) -> Option<usize> {
        let mut lin = 0usize;
        for (a, &c) in x.iter().enumerate() {
            if c < self.lo[a] || c > self.hi[a] {
                return None;
            }
            lin = lin * self.extent(a) + (c - self.lo[a]) as usize;
        }
        Some(lin)
    }

    pub fn site(&self, mut lin: usize) -> Vec<i64> {
        let mut x = vec![0i64; self.dim()];
        for a in (0..self.dim()).rev() {
            let e = self.extent(a);
            x[a] = self.lo[a] + (lin % e) as i64;
            lin /= e;
        }
        x
    }

    /// Sites in lexicographic order.
    pub fn sites(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        (0..self.site_count()).map(move |l| self.site(l))
    }

    pub fn expand(&self, r: i64) -> Self {
        Self::new(
            self.lo.iter().map(|c| c - r).collect(),
            self.hi.iter().map(|c| c + r).collect(),
        )
    }

    pub fn intersect(&self, other: &Self) -> Self {
        Self::new(
            self.lo
                .iter()
                .zip(&other.lo)
                .map(|(a, b)| *a.max(b))
                .collect(),
            self.hi
                .iter()
                .zip(&other.hi)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }
}

/// Scalar field stored densely on a box and zero outside it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SiteField {
    pub domain: BoxDomain,
    pub values: Vec<f64>,
}

impl SiteField {
    pub fn zeros(domain: BoxDomain) -> Self {
        let len = domain.site_count();
        Self {
            domain,
            values: vec![0.0; len],
        }
    }

    pub fn from_fn(domain: BoxDomain, mut f: impl FnMut(&[i64]) -> f64) -> Self {
        let values = domain.sites().map(|x| f(&x)).collect();
        Self { domain, values }
    }

    pub fn get(&self, x: &[i64]) -> f64 {
        self.domain.index(x).map_or(0.0, |i| self.values[i])
    }

    pub fn set(&mut self, x: &[i64], v: f64) {
        let i = self
            .domain
            .index(x)
            .expect("site outside the stored domain");
        self.values[i] = v;
    }

    pub fn inner(&self, other: &Self) -> f64 {
        let common = self.domain.intersect(&other.domain);
        if common.is_empty() {
            return 0.0;
        }
        common.sites().map(|x| self.get(&x) * other.get(&x)).sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum()
    }

    pub fn scale(&mut self, c: f64) {
        self.values.iter_mut().for_each(|v| *v *= c);
    }

    /// Pointwise `self - other` on the hull of both domains.
    pub fn sub(&self, other: &Self) -> Self {
        let hull = BoxDomain::new(
            self.domain
                .lo
                .iter()
                .zip(&other.domain.lo)
                .map(|(a, b)| *a.min(b))
                .collect(),
            self.domain
                .hi
                .iter()
                .zip(&other.domain.hi)
                .map(|(a, b)| *a.max(b))
                .collect(),
        );
        SiteField::from_fn(hull, |x| self.get(x) - other.get(x))
    }
}

/// Vector of site fields sharing one box: a one-form `w = (w_1, .., w_c)` with
/// `w_i(x)` the value on the edge `(x, x + e_i)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OneForm {
    pub components: Vec<SiteField>,
}

impl OneForm {
    pub fn zeros(domain: BoxDomain, components: usize) -> Self {
        Self {
            components: vec![SiteField::zeros(domain); components],
        }
    }

    /// Unit form supported on a single `(component, site)` pair.
    pub fn unit(components: usize, component: usize, x: &[i64]) -> Self {
        let mut w = Self::zeros(BoxDomain::single(x), components);
        w.components[component].values[0] = 1.0;
        w
    }

    pub fn domain(&self) -> &BoxDomain {
        &self.components[0].domain
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn get(&self, i: usize, x: &[i64]) -> f64 {
        self.components.get(i).map_or(0.0, |c| c.get(x))
    }

    /// Inner product over all components; missing components count as zero.
    pub fn inner(&self, other: &Self) -> f64 {
        self.components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.inner(b))
            .sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.components.iter().map(SiteField::norm_sq).sum()
    }

    /// Same field with `total` components, the extra ones identically zero.
    pub fn with_components(&self, total: usize) -> Self {
        let mut out = self.clone();
        out.components
            .resize(total, SiteField::zeros(self.domain().clone()));
        out.components.truncate(total);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_indexing_round_trip() {
        let b = BoxDomain::new(vec![-1, 2], vec![1, 4]);
        assert_eq!(b.site_count(), 9);
        for (l, x) in b.sites().enumerate() {
            assert_eq!(b.index(&x), Some(l));
        }
        assert_eq!(b.index(&[2, 2]), None);
        assert_eq!(b.site(0), vec![-1, 2]);
    }

    #[test]
    fn zero_extension_and_inner() {
        let a = SiteField::from_fn(BoxDomain::cube(2, 1), |x| (x[0] + 2 * x[1]) as f64);
        let b = SiteField::from_fn(BoxDomain::new(vec![1, 0], vec![3, 0]), |_| 1.0);
        assert_eq!(a.get(&[5, 5]), 0.0);
        // overlap is the single site (1,0)
        assert_eq!(a.inner(&b), 1.0);
        let far = SiteField::from_fn(BoxDomain::single(&[9, 9]), |_| 1.0);
        assert_eq!(a.inner(&far), 0.0);
    }
}
