//! Union-find with path halving and union by size, plus the cluster
//! census taken from it.

use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Debug, Clone)]
pub struct DisjointSet {
    parent: Vec<u32>,
    size: Vec<u32>,
    components: u32,
}

impl DisjointSet {
    pub fn singletons(n: usize) -> Self {
        DisjointSet {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
            components: n as u32,
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut x: u32) -> u32 {
        loop {
            let p = self.parent[x as usize];
            if p == x {
                return x;
            }
            let gp = self.parent[p as usize];
            self.parent[x as usize] = gp;
            x = gp;
        }
    }

    /// Joins the classes of `a` and `b`; true when they were distinct.
    pub fn union(&mut self, a: u32, b: u32) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
        self.components -= 1;
        true
    }

    pub fn same_set(&mut self, a: u32, b: u32) -> bool {
        self.find(a) == self.find(b)
    }

    pub fn component_count(&self) -> u32 {
        self.components
    }

    /// Size of the component containing `x`.
    pub fn component_size(&mut self, x: u32) -> u32 {
        let r = self.find(x);
        self.size[r as usize]
    }
}

/// Exact component census of a sampled graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClusterStats {
    pub vertex_count: u32,
    pub component_count: u32,
    pub largest_size: u32,
    pub largest_fraction: f64,
    /// component size → number of components of that size
    pub size_histogram: BTreeMap<u32, u32>,
}

pub fn cluster_stats(dsu: &mut DisjointSet) -> ClusterStats {
    let n = dsu.len() as u32;
    let mut histogram = BTreeMap::new();
    let mut largest = 0u32;
    for x in 0..n {
        if dsu.find(x) == x {
            let s = dsu.size[x as usize];
            largest = largest.max(s);
            *histogram.entry(s).or_insert(0) += 1;
        }
    }
    ClusterStats {
        vertex_count: n,
        component_count: dsu.components,
        largest_size: largest,
        largest_fraction: if n == 0 { 0.0 } else { f64::from(largest) / f64::from(n) },
        size_histogram: histogram,
    }
}
