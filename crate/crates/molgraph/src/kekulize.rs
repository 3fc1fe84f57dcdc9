//! Kekulization: replace aromatic bonds by an alternating single/double
//! assignment found via perfect matching on the aromatic subgraph.

use crate::element::{BondClass, Element};
use crate::error::GraphError;
use crate::graph::MolecularGraph;

/// Kekulizes `g`. Non-aromatic bonds are unchanged. Fails when an aromatic
/// bond lies outside every aromatic ring or when no perfect alternation
/// exists for the atoms that require a double bond.
pub fn kekulize(g: &MolecularGraph) -> Result<MolecularGraph, GraphError> {
    let n = g.atom_count();
    let bonds: Vec<BondClass> = (0..n * n).map(|k| g.bond(k / n, k % n)).collect();
    let kek = kekulize_parts(g.atoms(), &bonds)?;
    let pairs = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .filter(|&(i, j)| kek[i * n + j].is_present())
        .map(|(i, j)| (i, j, kek[i * n + j]))
        .collect();
    MolecularGraph::from_parts(g.atoms().to_vec(), pairs)
}

/// Kekulization on raw parts, used during graph construction.
pub(crate) fn kekulize_parts(
    atoms: &[Element],
    bonds: &[BondClass],
) -> Result<Vec<BondClass>, GraphError> {
    let n = atoms.len();
    let mut out = bonds.to_vec();

    let aromatic_edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .filter(|&(i, j)| bonds[i * n + j] == BondClass::Aromatic)
        .collect();
    if aromatic_edges.is_empty() {
        return Ok(out);
    }

    // Every aromatic bond must sit on a cycle of the aromatic subgraph.
    for &(i, j) in &aromatic_edges {
        if !connected_without(n, &aromatic_edges, i, j) {
            return Err(GraphError::AromaticBondNotInRing(i, j));
        }
    }

    // An atom needs exactly one double bond when its smallest allowed valence
    // leaves slack over the base order sum (aromatic bonds counted as single).
    let mut needs = vec![false; n];
    for i in 0..n {
        let touches_aromatic = (0..n).any(|j| bonds[i * n + j] == BondClass::Aromatic);
        if !touches_aromatic {
            continue;
        }
        let base: u32 = (0..n)
            .map(|j| match bonds[i * n + j] {
                BondClass::Aromatic => 1,
                b => b.integer_order().unwrap() as u32,
            })
            .sum();
        needs[i] = (atoms[i].default_valence() as u32) > base;
    }

    let matching = match_needy(n, &aromatic_edges, &needs)?;

    for &(i, j) in &aromatic_edges {
        out[i * n + j] = BondClass::Single;
        out[j * n + i] = BondClass::Single;
    }
    for &(i, j) in &matching {
        out[i * n + j] = BondClass::Double;
        out[j * n + i] = BondClass::Double;
    }
    Ok(out)
}

/// BFS reachability from `a` to `b` over `edges` with edge (a,b) removed.
fn connected_without(n: usize, edges: &[(usize, usize)], a: usize, b: usize) -> bool {
    let mut adj = vec![Vec::new(); n];
    for &(i, j) in edges {
        if (i, j) == (a, b) || (i, j) == (b, a) {
            continue;
        }
        adj[i].push(j);
        adj[j].push(i);
    }
    let mut seen = vec![false; n];
    let mut queue = std::collections::VecDeque::from([a]);
    seen[a] = true;
    while let Some(v) = queue.pop_front() {
        if v == b {
            return true;
        }
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    false
}

/// Perfect matching over the needy atoms using aromatic edges only.
/// Deterministic backtracking: always extend from the lowest unmatched atom.
/// Aromatic systems in molecules are small, so the search is cheap.
fn match_needy(
    n: usize,
    edges: &[(usize, usize)],
    needs: &[bool],
) -> Result<Vec<(usize, usize)>, GraphError> {
    let mut adj = vec![Vec::new(); n];
    for &(i, j) in edges {
        if needs[i] && needs[j] {
            adj[i].push(j);
            adj[j].push(i);
        }
    }
    for a in adj.iter_mut() {
        a.sort_unstable();
    }

    let needy: Vec<usize> = (0..n).filter(|&i| needs[i]).collect();
    let mut matched = vec![usize::MAX; n];
    let mut pairs = Vec::new();
    if backtrack(&needy, &adj, &mut matched, &mut pairs) {
        Ok(pairs)
    } else {
        Err(GraphError::Kekulization(needy))
    }
}

fn backtrack(
    needy: &[usize],
    adj: &[Vec<usize>],
    matched: &mut [usize],
    pairs: &mut Vec<(usize, usize)>,
) -> bool {
    let u = match needy.iter().find(|&&v| matched[v] == usize::MAX) {
        Some(&u) => u,
        None => return true,
    };
    for &v in &adj[u] {
        if matched[v] == usize::MAX {
            matched[u] = v;
            matched[v] = u;
            pairs.push((u.min(v), u.max(v)));
            if backtrack(needy, adj, matched, pairs) {
                return true;
            }
            pairs.pop();
            matched[u] = usize::MAX;
            matched[v] = usize::MAX;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphBuilder;

    fn aromatic_ring(elements: &[Element]) -> MolecularGraph {
        let k = elements.len();
        let mut b = GraphBuilder::with_atoms(elements.to_vec());
        for i in 0..k {
            b.set_bond(i, (i + 1) % k, BondClass::Aromatic);
        }
        b.finish().unwrap()
    }

    #[test]
    fn benzene_alternates() {
        let g = aromatic_ring(&[Element::C; 6]);
        let kek = kekulize(&g).unwrap();
        let mut singles = 0;
        let mut doubles = 0;
        for (_, _, b) in kek.bond_list() {
            match b {
                BondClass::Single => singles += 1,
                BondClass::Double => doubles += 1,
                other => panic!("unexpected bond {other:?}"),
            }
        }
        assert_eq!((singles, doubles), (3, 3));
        // alternation: every atom carries exactly one double bond
        for i in 0..6 {
            let d = (0..6).filter(|&j| kek.bond(i, j) == BondClass::Double).count();
            assert_eq!(d, 1);
        }
    }

    #[test]
    fn pyridine_nitrogen_valence_three() {
        let g = aromatic_ring(&[
            Element::C,
            Element::C,
            Element::C,
            Element::N,
            Element::C,
            Element::C,
        ]);
        let kek = kekulize(&g).unwrap();
        let n_idx = 3;
        let sum: u32 = (0..6)
            .map(|j| kek.bond(n_idx, j).integer_order().unwrap() as u32)
            .sum();
        assert_eq!(sum, 3);
        assert!(g.check_valence().valid);
        assert_eq!(g.implicit_h()[n_idx], 0);
    }

    #[test]
    fn furan_oxygen_takes_no_double() {
        let g = aromatic_ring(&[Element::C, Element::C, Element::O, Element::C, Element::C]);
        let kek = kekulize(&g).unwrap();
        let o_idx = 2;
        for j in 0..5 {
            assert_ne!(kek.bond(o_idx, j), BondClass::Double);
        }
        assert!(g.check_valence().valid);
    }

    #[test]
    fn aromatic_four_ring_kekulizes_but_fails_policy() {
        let g = aromatic_ring(&[Element::C; 4]);
        let kek = kekulize(&g).unwrap();
        let doubles = kek
            .bond_list()
            .iter()
            .filter(|(_, _, b)| *b == BondClass::Double)
            .count();
        assert_eq!(doubles, 2);
        assert!(!g.check_valence().valid);
    }

    #[test]
    fn aromatic_three_ring_has_no_matching() {
        let g = aromatic_ring(&[Element::C; 3]);
        assert!(matches!(kekulize(&g), Err(GraphError::Kekulization(_))));
        assert!(!g.check_valence().valid);
    }

    #[test]
    fn stray_aromatic_bond_rejected() {
        let mut b = GraphBuilder::with_atoms(vec![Element::C, Element::C]);
        b.set_bond(0, 1, BondClass::Aromatic);
        let g = b.finish().unwrap();
        assert!(matches!(kekulize(&g), Err(GraphError::AromaticBondNotInRing(0, 1))));
    }

    #[test]
    fn azulene_like_fused_odd_rings_match() {
        // 5-ring and 7-ring sharing one bond: 10 aromatic carbons, all needy.
        let mut b = GraphBuilder::with_atoms(vec![Element::C; 10]);
        for i in 0..5 {
            b.set_bond(i, (i + 1) % 5, BondClass::Aromatic);
        }
        // seven-ring: 0,5,6,7,8,9,4 closing back to 4 (shares bond 4-0)
        let seven = [0, 5, 6, 7, 8, 9, 4];
        for w in seven.windows(2) {
            b.set_bond(w[0], w[1], BondClass::Aromatic);
        }
        let g = b.finish().unwrap();
        let kek = kekulize(&g).unwrap();
        for i in 0..10 {
            let d = (0..10).filter(|&j| kek.bond(i, j) == BondClass::Double).count();
            assert_eq!(d, 1, "atom {i} must carry exactly one double bond");
        }
    }
}
