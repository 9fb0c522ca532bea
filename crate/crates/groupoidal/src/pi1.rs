//! Fundamental groups of finite groupoids: the vertex-group construction
//! for discrete groupoids, edge-path presentations for simplicial
//! complexes, the covering-space computation for free regular actions,
//! abelianization, and coset enumeration for index checks.

use crate::abelian::{descriptor_of_quotient, AbelianGroupDescriptor};
use crate::error::{Error, Result};
use crate::groupoid::{vertex_group_by_id, FiniteGroup, FiniteGroupoid};
use crate::simplicial::{orbit_data, quotient_complex, SimplicialAction, SimplicialComplex};
use crate::{Int, IntMatrix};
use std::collections::{BTreeMap, VecDeque};

/// A finitely presented group: named generators and relator words. Words
/// are sequences of signed, 1-based generator indices (−i is the inverse
/// of generator i).
#[derive(Debug, Clone)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<i64>>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relators: Vec<Vec<i64>>) -> Result<GroupPresentation> {
        let n = generators.len() as i64;
        for w in &relators {
            for &s in w {
                if s == 0 || s.abs() > n {
                    return Err(Error::InvalidInput(format!(
                        "relator letter {s} references no generator"
                    )));
                }
            }
        }
        Ok(GroupPresentation { generators, relators })
    }
}

/// Exponent-sum matrix of the relators; its cokernel is the
/// abelianization.
pub fn abelianization(p: &GroupPresentation) -> AbelianGroupDescriptor {
    let g = p.generators.len();
    let mut rels = IntMatrix::zeros(g, p.relators.len());
    for (j, w) in p.relators.iter().enumerate() {
        for &s in w {
            let i = (s.abs() - 1) as usize;
            let delta = if s > 0 { Int::from(1) } else { Int::from(-1) };
            rels.set(i, j, rels.get(i, j).clone() + delta);
        }
    }
    descriptor_of_quotient(g, &rels)
}

/// The fundamental group of a discrete groupoid at a base object is its
/// vertex group: all paths in a discrete space are constant, so loops are
/// exactly vertex morphisms.
pub fn pi1_discrete(g: &FiniteGroupoid, base: &str) -> Result<FiniteGroup> {
    vertex_group_by_id(g, base)
}

/// Spanning-tree data for the edge-path group of a connected complex.
struct EdgePaths {
    /// parent[v] = vertex preceding v on the tree path from the base.
    parent: Vec<Option<usize>>,
    /// Generator number of each non-tree edge {u, v} with u < v.
    gen_of_edge: BTreeMap<(usize, usize), usize>,
    base: usize,
}

impl EdgePaths {
    fn build(k: &SimplicialComplex, base: usize) -> Result<EdgePaths> {
        if base >= k.vertices.len() {
            return Err(Error::NoSuchObject(format!("vertex {base}")));
        }
        let nv = k.vertices.len();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nv];
        let edges: Vec<(usize, usize)> = k
            .simplices
            .get(1)
            .map(|level| level.iter().map(|e| (e[0], e[1])).collect())
            .unwrap_or_default();
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut parent = vec![None; nv];
        let mut seen = vec![false; nv];
        seen[base] = true;
        let mut tree: BTreeMap<(usize, usize), bool> = BTreeMap::new();
        let mut queue = VecDeque::from([base]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = Some(u);
                    tree.insert((u.min(v), u.max(v)), true);
                    queue.push_back(v);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::NotConnected);
        }
        let mut gen_of_edge = BTreeMap::new();
        for &(u, v) in &edges {
            let key = (u.min(v), u.max(v));
            if !tree.contains_key(&key) {
                let n = gen_of_edge.len();
                gen_of_edge.entry(key).or_insert(n);
            }
        }
        Ok(EdgePaths { parent, gen_of_edge, base })
    }

    /// Word contribution of traversing the directed edge u → v.
    fn letter(&self, u: usize, v: usize) -> Option<i64> {
        let key = (u.min(v), u.max(v));
        self.gen_of_edge.get(&key).map(|&g| {
            if u < v {
                g as i64 + 1
            } else {
                -(g as i64 + 1)
            }
        })
    }

    /// The directed tree path base → v.
    fn path_from_base(&self, v: usize) -> Vec<(usize, usize)> {
        let mut back = Vec::new();
        let mut cur = v;
        while cur != self.base {
            let p = self.parent[cur].expect("connected");
            back.push((p, cur));
            cur = p;
        }
        back.reverse();
        back
    }

    /// Word of a directed edge loop at the base.
    fn word(&self, path: &[(usize, usize)]) -> Vec<i64> {
        path.iter().filter_map(|&(u, v)| self.letter(u, v)).collect()
    }
}

/// Edge-path presentation of π₁ of a connected complex at a base vertex:
/// one generator per non-tree edge of a spanning tree, one relator per
/// 2-simplex boundary.
pub fn edge_path_presentation(k: &SimplicialComplex, base: usize) -> Result<GroupPresentation> {
    let ep = EdgePaths::build(k, base)?;
    let mut names: Vec<(usize, String)> = ep
        .gen_of_edge
        .iter()
        .map(|(&(u, v), &g)| (g, format!("[{}-{}]", k.vertices[u], k.vertices[v])))
        .collect();
    names.sort();
    let generators = names.into_iter().map(|(_, n)| n).collect();
    let mut relators = Vec::new();
    if let Some(level) = k.simplices.get(2) {
        for t in level {
            let (a, b, c) = (t[0], t[1], t[2]);
            let mut w = Vec::new();
            w.extend(ep.letter(a, b));
            w.extend(ep.letter(b, c));
            w.extend(ep.letter(c, a));
            if !w.is_empty() {
                relators.push(w);
            }
        }
    }
    GroupPresentation::new(generators, relators)
}

/// π₁ of a free regular action groupoid, with the two ends of its exact
/// sequence 1 → π₁(K) → π₁(G(K)) → Group → 1: the groupoid fundamental
/// group is π₁ of the quotient complex (the orbit projection is a covering
/// for free regular actions), the subgroup is the image of π₁(K), and the
/// quotient has order |Group|.
pub struct ActionPi1 {
    /// Presentation of π₁ of the action groupoid (π₁ of the quotient).
    pub presentation: GroupPresentation,
    /// Presentation of π₁ of the complex itself at the base vertex.
    pub total_presentation: GroupPresentation,
    /// Images of the total presentation's generators in `presentation`.
    pub inclusion_words: Vec<Vec<i64>>,
    pub group_order: usize,
}

pub fn pi1_action_groupoid(sa: &SimplicialAction, base: usize) -> Result<ActionPi1> {
    let k = &sa.complex;
    let total_ep = EdgePaths::build(k, base)?;
    let total_presentation = edge_path_presentation(k, base)?;
    let q = quotient_complex(sa)?;
    let od = orbit_data(sa);
    // Vertex map to the quotient: orbit number of each vertex.
    let vmap: Vec<usize> = od.to_rep[0].iter().map(|&(rep, _)| rep).collect();
    let q_base = vmap[base];
    let q_ep = EdgePaths::build(&q, q_base)?;
    let presentation = edge_path_presentation(&q, q_base)?;
    // Each generator of π₁(K) is the loop tree(base→u) · (u,v) · tree(v→base);
    // project it vertex-wise and read off the quotient word.
    let mut by_gen: Vec<(usize, usize)> = vec![(0, 0); total_ep.gen_of_edge.len()];
    for (&(u, v), &g) in &total_ep.gen_of_edge {
        by_gen[g] = (u, v);
    }
    let mut inclusion_words = Vec::new();
    for &(u, v) in &by_gen {
        let mut path = total_ep.path_from_base(u);
        path.push((u, v));
        let mut back = total_ep.path_from_base(v);
        back.reverse();
        path.extend(back.into_iter().map(|(a, b)| (b, a)));
        let projected: Vec<(usize, usize)> =
            path.into_iter().map(|(a, b)| (vmap[a], vmap[b])).collect();
        inclusion_words.push(q_ep.word(&projected));
    }
    Ok(ActionPi1 {
        presentation,
        total_presentation,
        inclusion_words,
        group_order: sa.group.order(),
    })
}

/// Outcome of coset enumeration: either the table closed at a finite
/// index or the coset bound was exhausted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CosetResult {
    Index(usize),
    Inconclusive,
}

struct CosetTable {
    /// table[coset][letter], letters are 2g: gen i forward = 2i, inverse = 2i+1.
    table: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
    letters: usize,
    bound: usize,
}

impl CosetTable {
    fn new(gens: usize, bound: usize) -> CosetTable {
        CosetTable {
            table: vec![vec![None; 2 * gens]],
            parent: vec![0],
            letters: 2 * gens,
            bound,
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn letter_of(s: i64) -> usize {
        let i = (s.abs() - 1) as usize;
        if s > 0 {
            2 * i
        } else {
            2 * i + 1
        }
    }

    fn inverse_letter(l: usize) -> usize {
        l ^ 1
    }

    fn define(&mut self, from: usize, l: usize) -> Option<usize> {
        if self.table.len() >= self.bound {
            return None;
        }
        let new = self.table.len();
        self.table.push(vec![None; self.letters]);
        self.parent.push(new);
        self.set(from, l, new);
        Some(new)
    }

    fn set(&mut self, from: usize, l: usize, to: usize) {
        let (from, to) = (self.find(from), self.find(to));
        match self.table[from][l] {
            None => {
                self.table[from][l] = Some(to);
                let back = Self::inverse_letter(l);
                match self.table[to][back] {
                    None => self.table[to][back] = Some(from),
                    Some(other) => self.merge(other, from),
                }
            }
            Some(other) => self.merge(other, to),
        }
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        let (keep, drop) = (a.min(b), a.max(b));
        self.parent[drop] = keep;
        for l in 0..self.letters {
            if let Some(t) = self.table[drop][l] {
                self.set(keep, l, t);
            }
        }
    }

    /// Scan a word from a coset, defining cosets as needed; returns false
    /// if the coset bound was hit.
    fn scan(&mut self, start: usize, word: &[i64]) -> bool {
        let mut cur = self.find(start);
        for &s in word {
            let l = Self::letter_of(s);
            cur = self.find(cur);
            match self.table[cur][l] {
                Some(t) => cur = self.find(t),
                None => match self.define(cur, l) {
                    Some(t) => cur = t,
                    None => return false,
                },
            }
        }
        // The word is a relator or subgroup generator: its scan must close
        // back at the start.
        let cur = self.find(cur);
        let start = self.find(start);
        self.merge(cur, start);
        true
    }

    fn live(&mut self) -> Vec<usize> {
        let n = self.table.len();
        let mut out = Vec::new();
        for x in 0..n {
            if self.find(x) == x {
                out.push(x);
            }
        }
        out
    }
}

/// Systematic coset enumeration of the subgroup generated by the given
/// words inside the presented group. Returns the index if the table
/// closes within `bound` cosets.
pub fn coset_enumeration(
    p: &GroupPresentation,
    subgroup: &[Vec<i64>],
    bound: usize,
) -> CosetResult {
    let mut t = CosetTable::new(p.generators.len(), bound.max(1));
    for w in subgroup {
        if !t.scan(0, w) {
            return CosetResult::Inconclusive;
        }
    }
    loop {
        let mut changed = false;
        let live = t.live();
        for &c in &live {
            for r in &p.relators {
                let before = (t.table.len(), t.count_defined());
                if !t.scan(c, r) {
                    return CosetResult::Inconclusive;
                }
                if (t.table.len(), t.count_defined()) != before {
                    changed = true;
                }
            }
        }
        // Fill any remaining holes so every relator scan is revisited.
        let live = t.live();
        let mut complete = true;
        'outer: for &c in &live {
            for l in 0..t.letters {
                let c = t.find(c);
                if t.table[c][l].is_none() {
                    complete = false;
                    if t.define(c, l).is_none() {
                        return CosetResult::Inconclusive;
                    }
                    changed = true;
                    break 'outer;
                }
            }
        }
        if complete && !changed {
            return CosetResult::Index(t.live().len());
        }
    }
}

impl CosetTable {
    fn count_defined(&self) -> usize {
        self.table.iter().flatten().filter(|e| e.is_some()).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{
        action_groupoid, cyclic, is_essential_equivalence, isomorphic_groups, pair,
        EssEquivVerdict, GroupoidFunctor,
    };
    use crate::homology::{action_groupoid_chains, groupoid_homology};
    use crate::simplicial::{circle_complex, rot_action};

    #[test]
    fn pi1_discrete_examples() {
        let g = pi1_discrete(&cyclic(4), "*").unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(pi1_discrete(&pair(3), "p2").unwrap().order(), 1);
        let z2 = FiniteGroup::cyclic(2);
        let set = vec!["1".to_string(), "2".to_string()];
        let swap = action_groupoid(&z2, &set, &|x, e| if e == 0 { x } else { 1 - x }).unwrap();
        let base = swap.object_ids()[0].clone();
        assert_eq!(pi1_discrete(&swap, &base).unwrap().order(), 1);
        assert!(pi1_discrete(&pair(2), "zz").is_err());
    }

    #[test]
    fn edge_path_triangle_boundary() {
        let p = edge_path_presentation(&circle_complex(3), 0).unwrap();
        assert_eq!(p.generators.len(), 1);
        assert!(p.relators.is_empty());
        assert_eq!(abelianization(&p), AbelianGroupDescriptor::free(1));
    }

    #[test]
    fn edge_path_full_triangle_trivial() {
        let k = SimplicialComplex::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![[0, 1, 2].into()],
        )
        .unwrap();
        let p = edge_path_presentation(&k, 0).unwrap();
        assert!(abelianization(&p).is_trivial());
    }

    #[test]
    fn edge_path_wedge_of_two_circles() {
        let k = SimplicialComplex::new(
            vec!["a".into(), "b".into(), "c".into(), "d".into(), "e".into()],
            vec![
                [0, 1].into(),
                [1, 2].into(),
                [0, 2].into(),
                [0, 3].into(),
                [3, 4].into(),
                [0, 4].into(),
            ],
        )
        .unwrap();
        let p = edge_path_presentation(&k, 0).unwrap();
        assert_eq!(abelianization(&p), AbelianGroupDescriptor::free(2));
    }

    #[test]
    fn edge_path_rejects_disconnected() {
        let k = SimplicialComplex::new(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            vec![[0, 1].into(), [2, 3].into()],
        )
        .unwrap();
        assert!(matches!(edge_path_presentation(&k, 0), Err(Error::NotConnected)));
    }

    #[test]
    fn abelianization_examples() {
        let p = GroupPresentation::new(vec!["a".into()], vec![vec![1, 1, 1]]).unwrap();
        assert_eq!(abelianization(&p), AbelianGroupDescriptor::cyclic(3));
        let f2 = GroupPresentation::new(vec!["a".into(), "b".into()], vec![]).unwrap();
        assert_eq!(abelianization(&f2), AbelianGroupDescriptor::free(2));
        let hex = edge_path_presentation(&circle_complex(6), 0).unwrap();
        assert_eq!(abelianization(&hex), AbelianGroupDescriptor::free(1));
    }

    #[test]
    fn coset_enumeration_examples() {
        let z4 = GroupPresentation::new(vec!["a".into()], vec![vec![1, 1, 1, 1]]).unwrap();
        assert_eq!(coset_enumeration(&z4, &[vec![1, 1]], 100), CosetResult::Index(2));
        let z3 = GroupPresentation::new(vec!["a".into()], vec![vec![1, 1, 1]]).unwrap();
        assert_eq!(coset_enumeration(&z3, &[], 100), CosetResult::Index(3));
        let f2 = GroupPresentation::new(vec!["a".into(), "b".into()], vec![]).unwrap();
        assert_eq!(coset_enumeration(&f2, &[vec![1]], 50), CosetResult::Inconclusive);
    }

    #[test]
    fn action_pi1_rot23() {
        let sa = rot_action(2, 3).unwrap();
        let out = pi1_action_groupoid(&sa, 0).unwrap();
        assert_eq!(abelianization(&out.presentation), AbelianGroupDescriptor::free(1));
        assert_eq!(abelianization(&out.total_presentation), AbelianGroupDescriptor::free(1));
        assert_eq!(out.group_order, 2);
        assert_eq!(
            coset_enumeration(&out.presentation, &out.inclusion_words, 200),
            CosetResult::Index(2)
        );
    }

    #[test]
    fn action_pi1_threefold_cover() {
        let sa = rot_action(3, 3).unwrap();
        let out = pi1_action_groupoid(&sa, 0).unwrap();
        assert_eq!(abelianization(&out.presentation), AbelianGroupDescriptor::free(1));
        assert_eq!(
            coset_enumeration(&out.presentation, &out.inclusion_words, 200),
            CosetResult::Index(3)
        );
    }

    #[test]
    fn action_pi1_trivial_group_degenerate() {
        let sa = SimplicialAction::trivial(circle_complex(3));
        let out = pi1_action_groupoid(&sa, 0).unwrap();
        assert_eq!(out.group_order, 1);
        assert_eq!(
            coset_enumeration(&out.presentation, &out.inclusion_words, 200),
            CosetResult::Index(1)
        );
    }

    #[test]
    fn hurewicz_cross_check() {
        for sa in [
            rot_action(2, 3).unwrap(),
            rot_action(3, 3).unwrap(),
            SimplicialAction::trivial(circle_complex(4)),
        ] {
            let out = pi1_action_groupoid(&sa, 0).unwrap();
            let ch = action_groupoid_chains(&sa);
            let z = crate::abelian::Presentation::free(1);
            assert_eq!(abelianization(&out.presentation), groupoid_homology(&ch, 1, &z));
        }
    }

    #[test]
    fn essential_equivalence_preserves_pi1() {
        // One-object inclusion into pair(2) is an essential equivalence and
        // matches vertex groups.
        let p2 = pair(2);
        let pt = crate::groupoid::point();
        let obj_map = vec![p2.object_index("p1").unwrap()];
        let mor_map = vec![p2.morphism_index("p1>p1").unwrap()];
        let phi = GroupoidFunctor::new(pt.clone(), p2.clone(), obj_map, mor_map).unwrap();
        assert!(matches!(is_essential_equivalence(&phi), EssEquivVerdict::Yes));
        let a = pi1_discrete(&pt, "*").unwrap();
        let b = pi1_discrete(&p2, "p1").unwrap();
        assert!(isomorphic_groups(&a, &b, 1_000_000).unwrap().is_some());
    }
}
