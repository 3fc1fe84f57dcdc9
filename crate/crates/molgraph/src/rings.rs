//! Ring perception: a smallest set of smallest rings (minimum cycle basis)
//! plus bounded simple-cycle enumeration used by the feature stack.

use crate::graph::MolecularGraph;

/// Undirected adjacency over `n` nodes; the "bond present" indicator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Adjacency {
    n: usize,
    m: Vec<bool>,
}

impl Adjacency {
    pub fn new(n: usize) -> Self {
        Adjacency { n, m: vec![false; n * n] }
    }

    pub fn from_graph(g: &MolecularGraph) -> Self {
        let n = g.atom_count();
        let mut a = Adjacency::new(n);
        for (i, j, _) in g.bond_list() {
            a.connect(i, j);
        }
        a
    }

    pub fn connect(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.m[i * self.n + j] = true;
        self.m[j * self.n + i] = true;
    }

    #[inline]
    pub fn has(&self, i: usize, j: usize) -> bool {
        self.m[i * self.n + j]
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| self.has(i, j))
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors(i).count()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n)
            .map(|i| ((i + 1)..self.n).filter(|&j| self.has(i, j)).count())
            .sum()
    }

    pub fn component_count(&self) -> usize {
        let mut seen = vec![false; self.n];
        let mut count = 0;
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            count += 1;
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(v) = stack.pop() {
                for w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }
}

/// Smallest set of smallest rings plus membership flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingInfo {
    /// Each ring is a simple vertex cycle, canonically rotated (smallest atom
    /// first, smaller neighbor second). Sorted by (length, sorted atom tuple).
    pub rings: Vec<Vec<usize>>,
    pub atom_in_ring: Vec<bool>,
    /// Bonds on any SSSR ring, as (i, j) with i < j.
    pub bonds_in_ring: Vec<(usize, usize)>,
}

impl RingInfo {
    pub fn bond_in_ring(&self, i: usize, j: usize) -> bool {
        let key = (i.min(j), i.max(j));
        self.bonds_in_ring.binary_search(&key).is_ok()
    }

    pub fn largest_ring(&self) -> usize {
        self.rings.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// SSSR as a minimum cycle basis: Horton candidate cycles filtered greedily
/// by GF(2) independence. Deterministic: candidates are ordered by length
/// then by lexicographically smallest sorted atom-index tuple.
pub fn perceive_rings(g: &MolecularGraph) -> RingInfo {
    let adj = Adjacency::from_graph(g);
    let n = adj.len();
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .filter(|&(i, j)| adj.has(i, j))
        .collect();
    let rank = edges.len() + adj.component_count() - n;

    let mut rings: Vec<Vec<usize>> = Vec::new();
    if rank > 0 {
        let edge_index: std::collections::HashMap<(usize, usize), usize> =
            edges.iter().copied().enumerate().map(|(k, e)| (e, k)).collect();

        let mut candidates: Vec<Vec<usize>> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for v in 0..n {
            let (dist, parent) = bfs_tree(&adj, v);
            for &(x, y) in &edges {
                if dist[x] == usize::MAX || dist[y] == usize::MAX {
                    continue;
                }
                let px = tree_path(v, x, &parent);
                let py = tree_path(v, y, &parent);
                if paths_share_only_root(&px, &py) {
                    let mut cycle = px;
                    cycle.extend(py.iter().skip(1).rev());
                    // cycle: v..x, y..(skip v) -- v .. x, then y back to just above v
                    let mut key: Vec<usize> = cycle.clone();
                    key.sort_unstable();
                    if seen.insert(key) {
                        candidates.push(cycle);
                    }
                }
            }
        }
        candidates.sort_by(|a, b| {
            let ka = cycle_sort_key(a);
            let kb = cycle_sort_key(b);
            ka.cmp(&kb)
        });

        let mut basis: Vec<Vec<u64>> = Vec::new();
        for cyc in candidates {
            if rings.len() == rank {
                break;
            }
            let vec = incidence(&cyc, &edge_index);
            if gf2_insert(&mut basis, vec) {
                rings.push(canonical_cycle(&cyc));
            }
        }
        debug_assert_eq!(rings.len(), rank, "Horton set must span the cycle space");
        rings.sort_by(|a, b| cycle_sort_key(a).cmp(&cycle_sort_key(b)));
    }

    let mut atom_in_ring = vec![false; n];
    let mut bonds_in_ring = Vec::new();
    for ring in &rings {
        let k = ring.len();
        for idx in 0..k {
            let (a, b) = (ring[idx], ring[(idx + 1) % k]);
            atom_in_ring[a] = true;
            let key = (a.min(b), a.max(b));
            if !bonds_in_ring.contains(&key) {
                bonds_in_ring.push(key);
            }
        }
    }
    bonds_in_ring.sort_unstable();

    RingInfo { rings, atom_in_ring, bonds_in_ring }
}

fn cycle_sort_key(c: &[usize]) -> (usize, Vec<usize>) {
    let mut s = c.to_vec();
    s.sort_unstable();
    (c.len(), s)
}

fn bfs_tree(adj: &Adjacency, root: usize) -> (Vec<usize>, Vec<usize>) {
    let n = adj.len();
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::from([root]);
    dist[root] = 0;
    while let Some(v) = queue.pop_front() {
        for w in adj.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    (dist, parent)
}

/// Path root..=target along BFS parents.
fn tree_path(root: usize, target: usize, parent: &[usize]) -> Vec<usize> {
    let mut path = vec![target];
    let mut cur = target;
    while cur != root {
        cur = parent[cur];
        path.push(cur);
    }
    path.reverse();
    path
}

fn paths_share_only_root(px: &[usize], py: &[usize]) -> bool {
    let sx: std::collections::HashSet<usize> = px.iter().copied().collect();
    py.iter().skip(1).all(|v| !sx.contains(v)) && px[0] == py[0]
}

fn incidence(cycle: &[usize], edge_index: &std::collections::HashMap<(usize, usize), usize>) -> Vec<u64> {
    let words = (edge_index.len() + 63) / 64;
    let mut bits = vec![0u64; words];
    let k = cycle.len();
    for idx in 0..k {
        let (a, b) = (cycle[idx], cycle[(idx + 1) % k]);
        let e = edge_index[&(a.min(b), a.max(b))];
        bits[e / 64] ^= 1 << (e % 64);
    }
    bits
}

/// Row-echelon insert over GF(2). Returns false if `vec` was dependent.
fn gf2_insert(basis: &mut Vec<Vec<u64>>, mut vec: Vec<u64>) -> bool {
    for row in basis.iter() {
        let pivot = leading_bit(row);
        if pivot != usize::MAX && bit_set(&vec, pivot) {
            xor_into(&mut vec, row);
        }
    }
    if vec.iter().all(|&w| w == 0) {
        false
    } else {
        basis.push(vec);
        true
    }
}

fn leading_bit(v: &[u64]) -> usize {
    for (w, &word) in v.iter().enumerate() {
        if word != 0 {
            return w * 64 + word.trailing_zeros() as usize;
        }
    }
    usize::MAX
}

fn bit_set(v: &[u64], bit: usize) -> bool {
    v[bit / 64] & (1 << (bit % 64)) != 0
}

fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

/// Rotate/flip a cycle to its canonical written form: smallest atom first,
/// then the smaller of its two ring neighbors.
fn canonical_cycle(c: &[usize]) -> Vec<usize> {
    let k = c.len();
    let (pos, _) = c.iter().enumerate().min_by_key(|&(_, v)| *v).unwrap();
    let fwd = c[(pos + 1) % k];
    let bwd = c[(pos + k - 1) % k];
    let mut out = Vec::with_capacity(k);
    if fwd <= bwd {
        for s in 0..k {
            out.push(c[(pos + s) % k]);
        }
    } else {
        for s in 0..k {
            out.push(c[(pos + k - s) % k]);
        }
    }
    out
}

/// All simple cycles of length 3..=max_len, each reported once in canonical
/// rotation. DFS restricted to vertices no smaller than the cycle's minimum.
pub fn simple_cycles_up_to(adj: &Adjacency, max_len: usize) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut out = Vec::new();
    let mut path = Vec::new();
    let mut on_path = vec![false; n];
    for s in 0..n {
        path.push(s);
        on_path[s] = true;
        extend_cycles(adj, s, s, max_len, &mut path, &mut on_path, &mut out);
        on_path[s] = false;
        path.pop();
    }
    out
}

fn extend_cycles(
    adj: &Adjacency,
    start: usize,
    cur: usize,
    max_len: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    for w in adj.neighbors(cur) {
        if w == start && path.len() >= 3 {
            // report each cycle once: fix direction by second < last
            if path[1] < path[path.len() - 1] {
                out.push(path.clone());
            }
        } else if w > start && !on_path[w] && path.len() < max_len {
            path.push(w);
            on_path[w] = true;
            extend_cycles(adj, start, w, max_len, path, on_path, out);
            on_path[w] = false;
            path.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::{BondClass, Element};
    use crate::graph::GraphBuilder;

    fn carbon_ring(k: usize) -> MolecularGraph {
        let mut b = GraphBuilder::with_atoms(vec![Element::C; k]);
        for i in 0..k {
            b.set_bond(i, (i + 1) % k, BondClass::Single);
        }
        b.finish().unwrap()
    }

    #[test]
    fn cyclohexane_one_ring() {
        let info = perceive_rings(&carbon_ring(6));
        assert_eq!(info.rings.len(), 1);
        assert_eq!(info.rings[0].len(), 6);
        assert!(info.atom_in_ring.iter().all(|&f| f));
    }

    #[test]
    fn acyclic_no_rings() {
        let g = MolecularGraph::from_parts(
            vec![Element::C, Element::C, Element::O],
            vec![(0, 1, BondClass::Single), (1, 2, BondClass::Single)],
        )
        .unwrap();
        let info = perceive_rings(&g);
        assert!(info.rings.is_empty());
        assert!(info.bonds_in_ring.is_empty());
    }

    #[test]
    fn naphthalene_two_fused_six_rings() {
        // two 6-rings sharing bond (0,1)
        let mut b = GraphBuilder::with_atoms(vec![Element::C; 10]);
        let ring1 = [0usize, 1, 2, 3, 4, 5];
        for i in 0..6 {
            b.set_bond(ring1[i], ring1[(i + 1) % 6], BondClass::Single);
        }
        let ring2 = [0usize, 1, 6, 7, 8, 9];
        b.set_bond(1, 6, BondClass::Single);
        b.set_bond(6, 7, BondClass::Single);
        b.set_bond(7, 8, BondClass::Single);
        b.set_bond(8, 9, BondClass::Single);
        b.set_bond(9, 0, BondClass::Single);
        let _ = ring2;
        let g = b.finish().unwrap();
        let info = perceive_rings(&g);
        assert_eq!(info.rings.len(), 2);
        assert!(info.rings.iter().all(|r| r.len() == 6));
        assert!(info.bond_in_ring(0, 1));
        // shared bond appears once in the bond set
        assert_eq!(info.bonds_in_ring.iter().filter(|&&e| e == (0, 1)).count(), 1);
    }

    #[test]
    fn ring_count_equals_cycle_rank() {
        // K4: rank = 6 - 4 + 1 = 3
        let mut b = GraphBuilder::with_atoms(vec![Element::C; 4]);
        for i in 0..4 {
            for j in (i + 1)..4 {
                b.set_bond(i, j, BondClass::Single);
            }
        }
        let info = perceive_rings(&b.finish().unwrap());
        assert_eq!(info.rings.len(), 3);
        assert!(info.rings.iter().all(|r| r.len() == 3));
    }

    #[test]
    fn simple_cycle_enumeration_counts() {
        let adj = Adjacency::from_graph(&carbon_ring(6));
        let cycles = simple_cycles_up_to(&adj, 6);
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].len(), 6);

        // K4 has 4 triangles and 3 four-cycles
        let mut k4 = Adjacency::new(4);
        for i in 0..4 {
            for j in (i + 1)..4 {
                k4.connect(i, j);
            }
        }
        let cycles = simple_cycles_up_to(&k4, 6);
        assert_eq!(cycles.iter().filter(|c| c.len() == 3).count(), 4);
        assert_eq!(cycles.iter().filter(|c| c.len() == 4).count(), 3);
    }

    #[test]
    fn sssr_deterministic_under_ties() {
        // two independent squares sharing nothing; tie-break by atom tuple
        let mut b = GraphBuilder::with_atoms(vec![Element::C; 8]);
        for base in [0, 4] {
            for i in 0..4 {
                b.set_bond(base + i, base + (i + 1) % 4, BondClass::Single);
            }
        }
        let info = perceive_rings(&b.finish().unwrap());
        assert_eq!(info.rings.len(), 2);
        assert_eq!(info.rings[0], vec![0, 1, 2, 3]);
        assert_eq!(info.rings[1], vec![4, 5, 6, 7]);
    }
}
