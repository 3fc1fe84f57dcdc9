//! SMILES reading and canonical writing for the accepted subset:
//! atoms {C,N,O,S,F,Cl,Br}, aromatic {c,n,o,s}, bonds {-,=,#,:}, branches,
//! ring closures 1-9 and %nn, and '.' separators at top level. Charges,
//! isotopes, stereo markers and wildcards are rejected.

use crate::canon::canonical_ranks;
use crate::element::{BondClass, Element};
use crate::error::{GraphError, SmilesError};
use crate::graph::{GraphBuilder, MolecularGraph};

#[derive(Debug, Clone, Copy)]
struct PendingAtom {
    index: usize,
    aromatic: bool,
}

#[derive(Debug, Clone, Copy)]
struct OpenRing {
    atom: usize,
    aromatic: bool,
    bond: Option<BondClass>,
}

/// Parses a SMILES string into a molecular graph.
pub fn parse_smiles(text: &str) -> Result<MolecularGraph, SmilesError> {
    if text.is_empty() {
        return Err(SmilesError::Empty);
    }
    if !text.is_ascii() {
        return Err(SmilesError::Syntax { pos: 0, msg: "non-ASCII input".into() });
    }

    let bytes = text.as_bytes();
    let mut builder = GraphBuilder::new();
    let mut prev: Option<PendingAtom> = None;
    let mut branch_stack: Vec<PendingAtom> = Vec::new();
    let mut pending_bond: Option<(BondClass, usize)> = None;
    let mut rings: std::collections::HashMap<u16, OpenRing> = Default::default();
    let mut bonded: std::collections::HashSet<(usize, usize)> = Default::default();

    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos] as char;
        match c {
            'C' | 'N' | 'O' | 'S' | 'F' | 'B' => {
                let (el, width) = read_organic_symbol(bytes, pos)?;
                let atom = builder.add_atom(el);
                let new = PendingAtom { index: atom, aromatic: false };
                attach(&mut builder, &mut bonded, prev, new, pending_bond.take(), pos)?;
                prev = Some(new);
                pos += width;
            }
            'c' | 'n' | 'o' | 's' => {
                let el = match c {
                    'c' => Element::C,
                    'n' => Element::N,
                    'o' => Element::O,
                    _ => Element::S,
                };
                let atom = builder.add_atom(el);
                let new = PendingAtom { index: atom, aromatic: true };
                attach(&mut builder, &mut bonded, prev, new, pending_bond.take(), pos)?;
                prev = Some(new);
                pos += 1;
            }
            '-' | '=' | '#' | ':' => {
                if pending_bond.is_some() {
                    return Err(SmilesError::Syntax { pos, msg: "two bond symbols in a row".into() });
                }
                let class = match c {
                    '-' => BondClass::Single,
                    '=' => BondClass::Double,
                    '#' => BondClass::Triple,
                    _ => BondClass::Aromatic,
                };
                pending_bond = Some((class, pos));
                pos += 1;
            }
            '1'..='9' | '%' => {
                let (index, width) = read_ring_index(bytes, pos)?;
                let at = prev.ok_or_else(|| SmilesError::Syntax {
                    pos,
                    msg: "ring closure before any atom".into(),
                })?;
                close_or_open_ring(&mut builder, &mut bonded, &mut rings, index, at, pending_bond.take(), pos)?;
                pos += width;
            }
            '(' => {
                let at = prev.ok_or_else(|| SmilesError::Syntax {
                    pos,
                    msg: "branch before any atom".into(),
                })?;
                if pending_bond.is_some() {
                    return Err(SmilesError::Syntax { pos, msg: "bond before '('".into() });
                }
                branch_stack.push(at);
                pos += 1;
            }
            ')' => {
                if pending_bond.is_some() {
                    return Err(SmilesError::Syntax { pos, msg: "bond before ')'".into() });
                }
                prev = Some(
                    branch_stack
                        .pop()
                        .ok_or(SmilesError::UnbalancedParenthesis { pos })?,
                );
                pos += 1;
            }
            '.' => {
                if !branch_stack.is_empty() {
                    return Err(SmilesError::Syntax { pos, msg: "'.' inside a branch".into() });
                }
                if pending_bond.is_some() {
                    return Err(SmilesError::Syntax { pos, msg: "bond before '.'".into() });
                }
                prev = None;
                pos += 1;
            }
            '[' => return Err(reject_bracket(bytes, pos)),
            '/' | '\\' | '@' => {
                return Err(SmilesError::UnsupportedFeature { pos, token: c.to_string() })
            }
            '+' => return Err(SmilesError::UnsupportedFeature { pos, token: "+".into() }),
            '*' => return Err(SmilesError::UnsupportedElement { pos, symbol: "*".into() }),
            other if other.is_ascii_alphabetic() => {
                return Err(SmilesError::UnsupportedElement { pos, symbol: other.to_string() })
            }
            other => {
                return Err(SmilesError::Syntax { pos, msg: format!("unexpected '{other}'") })
            }
        }
    }

    if let Some((_, bpos)) = pending_bond {
        return Err(SmilesError::Syntax { pos: bpos, msg: "dangling bond at end".into() });
    }
    if !branch_stack.is_empty() {
        return Err(SmilesError::UnbalancedParenthesis { pos: bytes.len() });
    }
    if let Some(&index) = rings.keys().min() {
        return Err(SmilesError::UnclosedRing { index });
    }
    builder.finish().map_err(|_| SmilesError::Empty)
}

fn read_organic_symbol(bytes: &[u8], pos: usize) -> Result<(Element, usize), SmilesError> {
    let c = bytes[pos] as char;
    match c {
        'C' if bytes.get(pos + 1) == Some(&b'l') => Ok((Element::Cl, 2)),
        'B' if bytes.get(pos + 1) == Some(&b'r') => Ok((Element::Br, 2)),
        'B' => Err(SmilesError::UnsupportedElement { pos, symbol: "B".into() }),
        'C' => Ok((Element::C, 1)),
        'N' => Ok((Element::N, 1)),
        'O' => Ok((Element::O, 1)),
        'S' => Ok((Element::S, 1)),
        'F' => Ok((Element::F, 1)),
        other => Err(SmilesError::UnsupportedElement { pos, symbol: other.to_string() }),
    }
}

fn read_ring_index(bytes: &[u8], pos: usize) -> Result<(u16, usize), SmilesError> {
    if bytes[pos] == b'%' {
        let d1 = bytes.get(pos + 1).filter(|b| b.is_ascii_digit());
        let d2 = bytes.get(pos + 2).filter(|b| b.is_ascii_digit());
        match (d1, d2) {
            (Some(&a), Some(&b)) => Ok((((a - b'0') as u16) * 10 + (b - b'0') as u16, 3)),
            _ => Err(SmilesError::Syntax { pos, msg: "'%' needs two digits".into() }),
        }
    } else {
        Ok(((bytes[pos] - b'0') as u16, 1))
    }
}

fn attach(
    builder: &mut GraphBuilder,
    bonded: &mut std::collections::HashSet<(usize, usize)>,
    prev: Option<PendingAtom>,
    new: PendingAtom,
    pending: Option<(BondClass, usize)>,
    pos: usize,
) -> Result<(), SmilesError> {
    match prev {
        None => {
            if let Some((_, bpos)) = pending {
                return Err(SmilesError::Syntax {
                    pos: bpos,
                    msg: "bond with no preceding atom".into(),
                });
            }
            Ok(())
        }
        Some(p) => {
            let class = match pending {
                Some((c, _)) => c,
                None if p.aromatic && new.aromatic => BondClass::Aromatic,
                None => BondClass::Single,
            };
            add_bond(builder, bonded, p.index, new.index, class, pos)
        }
    }
}

fn close_or_open_ring(
    builder: &mut GraphBuilder,
    bonded: &mut std::collections::HashSet<(usize, usize)>,
    rings: &mut std::collections::HashMap<u16, OpenRing>,
    index: u16,
    at: PendingAtom,
    pending: Option<(BondClass, usize)>,
    pos: usize,
) -> Result<(), SmilesError> {
    match rings.remove(&index) {
        None => {
            rings.insert(
                index,
                OpenRing { atom: at.index, aromatic: at.aromatic, bond: pending.map(|(c, _)| c) },
            );
            Ok(())
        }
        Some(open) => {
            if open.atom == at.index {
                return Err(SmilesError::Syntax { pos, msg: "ring closure to the same atom".into() });
            }
            let here = pending.map(|(c, _)| c);
            let class = match (open.bond, here) {
                (Some(a), Some(b)) if a != b => {
                    return Err(SmilesError::Syntax {
                        pos,
                        msg: "conflicting ring-closure bond symbols".into(),
                    })
                }
                (Some(a), _) => a,
                (None, Some(b)) => b,
                (None, None) if open.aromatic && at.aromatic => BondClass::Aromatic,
                (None, None) => BondClass::Single,
            };
            add_bond(builder, bonded, open.atom, at.index, class, pos)
        }
    }
}

fn add_bond(
    builder: &mut GraphBuilder,
    bonded: &mut std::collections::HashSet<(usize, usize)>,
    i: usize,
    j: usize,
    class: BondClass,
    pos: usize,
) -> Result<(), SmilesError> {
    let key = (i.min(j), i.max(j));
    if !bonded.insert(key) {
        return Err(SmilesError::Syntax {
            pos,
            msg: format!("duplicate bond between atoms {i} and {j}"),
        });
    }
    builder.set_bond(i, j, class);
    Ok(())
}

fn reject_bracket(bytes: &[u8], pos: usize) -> SmilesError {
    let close = bytes[pos..].iter().position(|&b| b == b']');
    let inner: &[u8] = match close {
        Some(off) => &bytes[pos + 1..pos + off],
        None => &bytes[pos + 1..],
    };
    if inner.iter().any(|&b| b == b'+' || b == b'-') {
        return SmilesError::UnsupportedFeature { pos, token: "charge".into() };
    }
    if inner.first().is_some_and(|b| b.is_ascii_digit()) {
        return SmilesError::UnsupportedFeature { pos, token: "isotope".into() };
    }
    if inner.iter().any(|&b| b == b'@') {
        return SmilesError::UnsupportedFeature { pos, token: "stereo".into() };
    }
    SmilesError::Syntax { pos, msg: "bracket atoms not supported".into() }
}

/// Canonical SMILES of a valence-valid graph.
pub fn write_smiles(g: &MolecularGraph) -> Result<String, GraphError> {
    let verdict = g.check_valence();
    if !verdict.valid {
        return Err(GraphError::InvalidValence(verdict.violations));
    }
    Ok(write_smiles_lenient(g))
}

/// Canonical SMILES without a validity gate; used to serialize sampler
/// output, where invalid graphs are data rather than errors.
pub fn write_smiles_lenient(g: &MolecularGraph) -> String {
    let ranks = canonical_ranks(g);
    Writer::new(g, &ranks).run()
}

struct Writer<'a> {
    g: &'a MolecularGraph,
    ranks: &'a [usize],
    aromatic: Vec<bool>,
    visited: Vec<bool>,
    tree_children: Vec<Vec<usize>>,
    ring_partner: Vec<Vec<usize>>,
    closures: std::collections::HashSet<(usize, usize)>,
    out: String,
    open_digits: std::collections::HashMap<(usize, usize), u16>,
    used_digits: Vec<bool>,
}

impl<'a> Writer<'a> {
    fn new(g: &'a MolecularGraph, ranks: &'a [usize]) -> Self {
        let n = g.atom_count();
        Writer {
            g,
            ranks,
            aromatic: (0..n).map(|i| g.is_aromatic_atom(i)).collect(),
            visited: vec![false; n],
            tree_children: vec![Vec::new(); n],
            ring_partner: vec![Vec::new(); n],
            closures: Default::default(),
            out: String::new(),
            open_digits: Default::default(),
            used_digits: vec![false; 100],
        }
    }

    fn run(mut self) -> String {
        let n = self.g.atom_count();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| self.ranks[i]);

        let mut roots = Vec::new();
        for &root in &order {
            if !self.visited[root] {
                roots.push(root);
                self.classify(root, usize::MAX);
            }
        }

        self.visited = vec![false; n];
        for (k, &root) in roots.iter().enumerate() {
            if k > 0 {
                self.out.push('.');
            }
            self.emit_atom(root, None);
        }
        self.out
    }

    /// Recursive DFS in rank order, splitting bonds into tree edges and ring
    /// closures. The emission pass walks the identical tree.
    fn classify(&mut self, atom: usize, parent: usize) {
        self.visited[atom] = true;
        let mut nbrs = self.g.neighbors(atom);
        let ranks = self.ranks;
        nbrs.sort_by_key(|&j| ranks[j]);
        for j in nbrs {
            if j == parent {
                continue;
            }
            if !self.visited[j] {
                self.tree_children[atom].push(j);
                self.classify(j, atom);
            } else {
                let key = (atom.min(j), atom.max(j));
                if self.closures.insert(key) {
                    self.ring_partner[atom].push(j);
                    self.ring_partner[j].push(atom);
                }
            }
        }
    }

    fn emit_atom(&mut self, atom: usize, via: Option<BondClass>) {
        self.visited[atom] = true;
        if let Some(b) = via {
            self.push_bond_symbol(b, false);
        }
        let el = self.g.atom(atom);
        if self.aromatic[atom] {
            self.out.push_str(el.aromatic_symbol().unwrap_or(el.symbol()));
        } else {
            self.out.push_str(el.symbol());
        }

        for j in self.ring_partner[atom].clone() {
            let key = (atom.min(j), atom.max(j));
            match self.open_digits.get(&key).copied() {
                Some(d) => {
                    self.push_digit(d);
                    self.open_digits.remove(&key);
                    self.used_digits[d as usize] = false;
                }
                None => {
                    let b = self.g.bond(atom, j);
                    let both_arom = self.aromatic[atom] && self.aromatic[j];
                    if bond_needs_symbol(b, both_arom) {
                        self.push_bond_symbol(b, both_arom);
                    }
                    let d = (1..100)
                        .find(|&d| !self.used_digits[d])
                        .expect("ring digits exhausted") as u16;
                    self.used_digits[d as usize] = true;
                    self.open_digits.insert(key, d);
                    self.push_digit(d);
                }
            }
        }

        let children = self.tree_children[atom].clone();
        let count = children.len();
        for (k, j) in children.into_iter().enumerate() {
            let b = self.g.bond(atom, j);
            let both_arom = self.aromatic[atom] && self.aromatic[j];
            let bond = bond_needs_symbol(b, both_arom).then_some(b);
            if k + 1 < count {
                self.out.push('(');
                self.emit_atom(j, bond);
                self.out.push(')');
            } else {
                self.emit_atom(j, bond);
            }
        }
    }

    fn push_bond_symbol(&mut self, b: BondClass, both_aromatic: bool) {
        match b {
            BondClass::Single => self.out.push('-'),
            BondClass::Double => self.out.push('='),
            BondClass::Triple => self.out.push('#'),
            BondClass::Aromatic => {
                if !both_aromatic {
                    self.out.push(':');
                }
            }
            BondClass::None => {}
        }
    }

    fn push_digit(&mut self, d: u16) {
        if d < 10 {
            self.out.push((b'0' + d as u8) as char);
        } else {
            self.out.push('%');
            self.out.push((b'0' + (d / 10) as u8) as char);
            self.out.push((b'0' + (d % 10) as u8) as char);
        }
    }
}

fn bond_needs_symbol(b: BondClass, both_aromatic: bool) -> bool {
    match b {
        BondClass::Single => both_aromatic,
        BondClass::Double | BondClass::Triple => true,
        BondClass::Aromatic => !both_aromatic,
        BondClass::None => false,
    }
}
