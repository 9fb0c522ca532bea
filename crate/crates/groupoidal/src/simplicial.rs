//! Finite abstract simplicial complexes, their integer chain complexes, and
//! simplicial group actions that are free on vertices and regular on
//! simplices, together with orbit bookkeeping, an explicit quotient-complex
//! construction, and barycentric subdivision.

use crate::abelian::PresentedComplex;
use crate::error::{Error, Result};
use crate::groupoid::FiniteGroup;
use crate::{Int, IntMatrix};
use std::collections::{BTreeMap, BTreeSet};

/// An abstract simplicial complex: named vertices plus the downward closure
/// of its facets, stored per dimension in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    pub vertices: Vec<String>,
    /// simplices[d] = ascending vertex-index tuples of dimension d, sorted.
    pub simplices: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    pub fn new(vertices: Vec<String>, facets: Vec<BTreeSet<usize>>) -> Result<SimplicialComplex> {
        if facets.iter().any(|f| f.is_empty()) {
            return Err(Error::InvalidInput("facets must be nonempty".into()));
        }
        let mut ids = vertices.clone();
        ids.sort();
        ids.dedup();
        if ids.len() != vertices.len() {
            return Err(Error::InvalidInput("vertex ids must be unique".into()));
        }
        let mut by_dim: Vec<BTreeSet<Vec<usize>>> = Vec::new();
        for f in &facets {
            if f.iter().any(|&v| v >= vertices.len()) {
                return Err(Error::InvalidInput("facet vertex out of range".into()));
            }
            let verts: Vec<usize> = f.iter().copied().collect();
            // All nonempty subsets (downward closure).
            for mask in 1u64..(1 << verts.len()) {
                let face: Vec<usize> = verts
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect();
                let d = face.len() - 1;
                while by_dim.len() <= d {
                    by_dim.push(BTreeSet::new());
                }
                by_dim[d].insert(face);
            }
        }
        Ok(SimplicialComplex {
            vertices,
            simplices: by_dim.into_iter().map(|s| s.into_iter().collect()).collect(),
        })
    }

    /// Top dimension (empty complex has none; returns None then).
    pub fn dim(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    pub fn n_simplices(&self, d: usize) -> usize {
        self.simplices.get(d).map_or(0, |s| s.len())
    }

    pub fn simplex_index(&self, d: usize, s: &[usize]) -> Option<usize> {
        self.simplices.get(d)?.binary_search_by(|x| x.as_slice().cmp(s)).ok()
    }

    /// The standard boundary complex with ascending-vertex orientation;
    /// ∂∘∂ = 0 is asserted.
    pub fn chain_complex(&self) -> PresentedComplex {
        let mut boundaries = Vec::new();
        for d in 1..self.simplices.len() {
            let rows = self.n_simplices(d - 1);
            let cols = self.n_simplices(d);
            let mut m = IntMatrix::zeros(rows, cols);
            for (j, s) in self.simplices[d].iter().enumerate() {
                for (i, _) in s.iter().enumerate() {
                    let mut face = s.clone();
                    face.remove(i);
                    let r = self.simplex_index(d - 1, &face).expect("downward closed");
                    let sign = if i % 2 == 0 { Int::from(1) } else { Int::from(-1) };
                    m.set(r, j, m.get(r, j).clone() + sign);
                }
            }
            boundaries.push(m);
        }
        let c = PresentedComplex::free(boundaries, self.n_simplices(0))
            .expect("simplicial boundaries satisfy d∘d = 0");
        c
    }

    /// Full subcomplex on a vertex subset, with the index map new → old.
    pub fn full_subcomplex(&self, verts: &BTreeSet<usize>) -> (SimplicialComplex, Vec<usize>) {
        let old: Vec<usize> = verts.iter().copied().collect();
        let new_of: BTreeMap<usize, usize> =
            old.iter().enumerate().map(|(n, &o)| (o, n)).collect();
        let vertices: Vec<String> = old.iter().map(|&o| self.vertices[o].clone()).collect();
        let mut simplices: Vec<Vec<Vec<usize>>> = Vec::new();
        for (d, level) in self.simplices.iter().enumerate() {
            let kept: Vec<Vec<usize>> = level
                .iter()
                .filter(|s| s.iter().all(|v| verts.contains(v)))
                .map(|s| s.iter().map(|v| new_of[v]).collect())
                .collect();
            if kept.is_empty() {
                break;
            }
            while simplices.len() < d {
                simplices.push(Vec::new());
            }
            simplices.push(kept);
        }
        for level in &mut simplices {
            level.sort();
        }
        (SimplicialComplex { vertices, simplices }, old)
    }
}

/// A finite group acting simplicially, freely on vertices and regularly on
/// simplices (no nonidentity element maps any simplex onto itself).
#[derive(Clone, Debug)]
pub struct SimplicialAction {
    pub group: FiniteGroup,
    pub complex: SimplicialComplex,
    /// action[g][v] = image vertex of v under group element g.
    pub action: Vec<Vec<usize>>,
}

impl SimplicialAction {
    pub fn new(
        group: FiniteGroup,
        complex: SimplicialComplex,
        action: Vec<Vec<usize>>,
    ) -> Result<SimplicialAction> {
        let nv = complex.vertices.len();
        if action.len() != group.order() || action.iter().any(|p| p.len() != nv) {
            return Err(Error::BadAction("one vertex permutation per group element".into()));
        }
        for p in &action {
            let mut seen = vec![false; nv];
            for &v in p {
                if v >= nv || seen[v] {
                    return Err(Error::BadAction("action images must be permutations".into()));
                }
                seen[v] = true;
            }
        }
        if (0..nv).any(|v| action[group.identity()][v] != v) {
            return Err(Error::BadAction("identity must act trivially".into()));
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                let gh = group.mul(g, h);
                for v in 0..nv {
                    if action[gh][v] != action[g][h_apply(&action, h, v)] {
                        return Err(Error::BadAction("action is not a homomorphism".into()));
                    }
                }
            }
        }
        let sa = SimplicialAction { group, complex, action };
        // Simpliciality: every simplex image is a simplex.
        for (d, level) in sa.complex.simplices.iter().enumerate() {
            for s in level {
                for g in 0..sa.group.order() {
                    let img = sa.image_simplex(g, s);
                    if sa.complex.simplex_index(d, &img).is_none() {
                        return Err(Error::BadAction(format!(
                            "image of a {d}-simplex is not a simplex"
                        )));
                    }
                }
            }
        }
        // Free on vertices, regular on simplices.
        for g in 0..sa.group.order() {
            if g == sa.group.identity() {
                continue;
            }
            for v in 0..nv {
                if sa.action[g][v] == v {
                    return Err(Error::NotFreeRegular(format!(
                        "element {} fixes vertex {}",
                        sa.group.elements()[g],
                        sa.complex.vertices[v]
                    )));
                }
            }
            for level in &sa.complex.simplices {
                for s in level {
                    if &sa.image_simplex(g, s) == s {
                        return Err(Error::NotFreeRegular(format!(
                            "element {} maps a simplex onto itself",
                            sa.group.elements()[g]
                        )));
                    }
                }
            }
        }
        Ok(sa)
    }

    /// Trivial-group action on any complex.
    pub fn trivial(complex: SimplicialComplex) -> SimplicialAction {
        let n = complex.vertices.len();
        SimplicialAction::new(FiniteGroup::trivial(), complex, vec![(0..n).collect()])
            .expect("the trivial action is free and regular")
    }

    /// Sorted image of a simplex under g.
    pub fn image_simplex(&self, g: usize, s: &[usize]) -> Vec<usize> {
        let mut img: Vec<usize> = s.iter().map(|&v| self.action[g][v]).collect();
        img.sort();
        img
    }

    /// Sign of g on the oriented simplex s: the parity of the permutation
    /// sorting the pointwise image of the ascending tuple.
    pub fn sign_on(&self, g: usize, s: &[usize]) -> Int {
        let img: Vec<usize> = s.iter().map(|&v| self.action[g][v]).collect();
        let mut inversions = 0usize;
        for i in 0..img.len() {
            for j in i + 1..img.len() {
                if img[i] > img[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            Int::from(1)
        } else {
            Int::from(-1)
        }
    }

    /// Restrict to an invariant full subcomplex given by a vertex subset.
    pub fn restrict(&self, verts: &BTreeSet<usize>) -> Result<SimplicialAction> {
        for g in 0..self.group.order() {
            for &v in verts {
                if !verts.contains(&self.action[g][v]) {
                    return Err(Error::NotInvariant(format!(
                        "vertex subset is not invariant (moves {})",
                        self.complex.vertices[v]
                    )));
                }
            }
        }
        let (sub, old) = self.complex.full_subcomplex(verts);
        let new_of: BTreeMap<usize, usize> =
            old.iter().enumerate().map(|(n, &o)| (o, n)).collect();
        let action = (0..self.group.order())
            .map(|g| old.iter().map(|&o| new_of[&self.action[g][o]]).collect())
            .collect();
        SimplicialAction::new(self.group.clone(), sub, action)
    }
}

fn h_apply(action: &[Vec<usize>], h: usize, v: usize) -> usize {
    action[h][v]
}

/// Orbit bookkeeping for a free regular action: per dimension, the list of
/// lexicographically least orbit representatives and, for every simplex,
/// the pair (representative number, sign of the unique carrier).
pub struct OrbitData {
    /// reps[d] = indices (into complex.simplices[d]) of the orbit reps.
    pub reps: Vec<Vec<usize>>,
    /// to_rep[d][simplex index] = (rep position in reps[d], sign).
    pub to_rep: Vec<Vec<(usize, Int)>>,
}

pub fn orbit_data(sa: &SimplicialAction) -> OrbitData {
    let mut reps = Vec::new();
    let mut to_rep = Vec::new();
    for (d, level) in sa.complex.simplices.iter().enumerate() {
        let mut rep_of: Vec<Option<(usize, Int)>> = vec![None; level.len()];
        let mut rep_list = Vec::new();
        for (i, s) in level.iter().enumerate() {
            if rep_of[i].is_some() {
                continue;
            }
            // s is the lex-least member of its orbit because we scan in
            // lexicographic order.
            let rep_no = rep_list.len();
            rep_list.push(i);
            for g in 0..sa.group.order() {
                let img = sa.image_simplex(g, s);
                let j = sa.complex.simplex_index(d, &img).expect("simplicial action");
                let sign = sa.sign_on(g, s);
                match &rep_of[j] {
                    None => rep_of[j] = Some((rep_no, sign)),
                    Some((r, sg)) => {
                        // Regularity: the carrier is unique, so signs agree.
                        assert!(*r == rep_no && *sg == sign, "action is not regular");
                    }
                }
            }
        }
        to_rep.push(rep_of.into_iter().map(|x| x.unwrap()).collect());
        reps.push(rep_list);
    }
    OrbitData { reps, to_rep }
}

/// The quotient complex K/Γ, built explicitly. Fails unless the quotient is
/// honestly simplicial: no simplex may contain two vertices of one orbit,
/// and distinct simplex orbits must stay distinct in the quotient.
pub fn quotient_complex(sa: &SimplicialAction) -> Result<SimplicialComplex> {
    let nv = sa.complex.vertices.len();
    let mut block_of = vec![usize::MAX; nv];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for v in 0..nv {
        if block_of[v] != usize::MAX {
            continue;
        }
        let members: BTreeSet<usize> =
            (0..sa.group.order()).map(|g| sa.action[g][v]).collect();
        for &m in &members {
            block_of[m] = blocks.len();
        }
        blocks.push(members.into_iter().collect());
    }
    let vertices: Vec<String> =
        blocks.iter().map(|b| sa.complex.vertices[b[0]].clone()).collect();
    let od = orbit_data(sa);
    let mut facets: Vec<BTreeSet<usize>> = Vec::new();
    let mut seen_per_dim: Vec<BTreeSet<Vec<usize>>> = Vec::new();
    for (d, level) in sa.complex.simplices.iter().enumerate() {
        seen_per_dim.push(BTreeSet::new());
        for s in level {
            let img: BTreeSet<usize> = s.iter().map(|&v| block_of[v]).collect();
            if img.len() != s.len() {
                return Err(Error::NotFreeRegular(
                    "a simplex meets one vertex orbit twice; the quotient is not simplicial"
                        .into(),
                ));
            }
            seen_per_dim[d].insert(img.iter().copied().collect());
        }
        // Distinct orbits must give distinct quotient simplices.
        if seen_per_dim[d].len() != od.reps[d].len() {
            return Err(Error::NotFreeRegular(
                "two simplex orbits collapse to one quotient simplex".into(),
            ));
        }
    }
    // Use the top-dimensional images of all simplices as facets (the
    // downward closure restores the rest).
    for level in &seen_per_dim {
        for s in level {
            facets.push(s.iter().copied().collect());
        }
    }
    SimplicialComplex::new(vertices, facets)
}

/// Barycentric subdivision: vertices are the simplices of K (named by
/// joining vertex ids), simplices are chains under face inclusion.
pub fn barycentric_subdivision(k: &SimplicialComplex) -> SimplicialComplex {
    let mut new_vertices = Vec::new();
    let mut vert_no: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for level in &k.simplices {
        for s in level {
            let name = s.iter().map(|&v| k.vertices[v].clone()).collect::<Vec<_>>().join(".");
            vert_no.insert(s.clone(), new_vertices.len());
            new_vertices.push(name);
        }
    }
    // Facets: maximal chains of faces inside each maximal simplex.
    let mut facets = Vec::new();
    let top = k.simplices.len();
    for level in &k.simplices {
        for s in level {
            // Chains ending at s: enumerate all chains of proper faces.
            let mut chains: Vec<Vec<Vec<usize>>> = vec![vec![s.clone()]];
            for _ in 0..s.len() {
                let mut next = Vec::new();
                for c in &chains {
                    let smallest = c.last().unwrap();
                    if smallest.len() == 1 {
                        next.push(c.clone());
                        continue;
                    }
                    for i in 0..smallest.len() {
                        let mut face = smallest.clone();
                        face.remove(i);
                        let mut c2 = c.clone();
                        c2.push(face);
                        next.push(c2);
                    }
                }
                chains = next;
            }
            // Keep only chains from a maximal simplex (avoid duplicates by
            // taking chains through every simplex and letting closure dedup).
            for c in chains {
                if c.len() == s.len() {
                    facets.push(c.iter().map(|f| vert_no[f]).collect::<BTreeSet<usize>>());
                }
            }
        }
    }
    let _ = top;
    SimplicialComplex::new(new_vertices, facets).expect("subdivision is a complex")
}

/// Subdivide an action along with its complex.
pub fn subdivide_action(sa: &SimplicialAction) -> Result<SimplicialAction> {
    let sd = barycentric_subdivision(&sa.complex);
    // Barycenter of s maps to barycenter of g·s.
    let mut vert_no: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut order: Vec<Vec<usize>> = Vec::new();
    for level in &sa.complex.simplices {
        for s in level {
            vert_no.insert(s.clone(), order.len());
            order.push(s.clone());
        }
    }
    let action = (0..sa.group.order())
        .map(|g| order.iter().map(|s| vert_no[&sa.image_simplex(g, s)]).collect())
        .collect();
    SimplicialAction::new(sa.group.clone(), sd, action)
}

/// The cycle graph C_n as a 1-dimensional complex with vertices w0..w(n-1).
pub fn circle_complex(n: usize) -> SimplicialComplex {
    assert!(n >= 3);
    let width = (n - 1).to_string().len();
    let vertices = (0..n).map(|i| format!("w{i:0width$}")).collect();
    let facets = (0..n).map(|i| [i, (i + 1) % n].into()).collect();
    SimplicialComplex::new(vertices, facets).expect("cycle graph is a complex")
}

/// Z/k rotating the (k·m)-gon by m steps: free and regular for m ≥ 2
/// (and for m = 1, k ≥ 3).
pub fn rot_action(k: usize, m: usize) -> Result<SimplicialAction> {
    let n = k * m;
    let complex = circle_complex(n);
    let group = FiniteGroup::cyclic(k);
    let action = (0..k).map(|g| (0..n).map(|v| (v + g * m) % n).collect()).collect();
    SimplicialAction::new(group, complex, action)
}
