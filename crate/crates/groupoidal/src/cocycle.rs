//! Cocycles on finite covers with values in a groupoid: validation, the
//! associated principal bundle Σ(c), extraction of a cocycle from a
//! principal bundle over a discrete base, the cohomology relation, and
//! cover refinement.

use crate::bibundle::{Bibundle, EquivariantMap};
use crate::error::{Error, Result};
use crate::groupoid::{discrete_on, FiniteGroupoid};
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// A finite base set with a cover by subsets (every subset is open here).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    pub base: Vec<String>,
    /// Pieces as sets of indices into `base`.
    pub pieces: Vec<BTreeSet<usize>>,
}

impl Cover {
    pub fn new(base: Vec<String>, pieces: Vec<BTreeSet<usize>>) -> Result<Cover> {
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        for p in &pieces {
            for &x in p {
                if x >= base.len() {
                    return Err(Error::InvalidInput("piece index out of range".into()));
                }
                seen.insert(x);
            }
        }
        if seen.len() != base.len() {
            return Err(Error::NotACover("pieces do not exhaust the base".into()));
        }
        Ok(Cover { base, pieces })
    }

    pub fn overlap(&self, i: usize, j: usize) -> Vec<usize> {
        self.pieces[i].intersection(&self.pieces[j]).copied().collect()
    }

    /// Total number of (piece, point) incidences — the search-size measure.
    pub fn incidences(&self) -> usize {
        self.pieces.iter().map(|p| p.len()).sum()
    }
}

/// A validated cocycle: unit diagonal, matching endpoints, and the triple
/// identity c_ij(x) ∘ c_jk(x) = c_ik(x) on every overlap.
#[derive(Clone, Debug)]
pub struct Cocycle {
    pub cover: Cover,
    pub target: FiniteGroupoid,
    /// maps[(i,j)][x] = target morphism index, for x ∈ Uᵢ∩Uⱼ.
    pub maps: BTreeMap<(usize, usize), BTreeMap<usize, usize>>,
}

impl Cocycle {
    pub fn c(&self, i: usize, j: usize, x: usize) -> usize {
        self.maps[&(i, j)][&x]
    }

    /// The object over which piece i sits at point x (as a G-object index).
    pub fn object_at(&self, i: usize, x: usize) -> usize {
        self.target.dom(self.c(i, i, x))
    }
}

pub fn validate_cocycle(
    cover: Cover,
    target: FiniteGroupoid,
    maps: BTreeMap<(usize, usize), BTreeMap<usize, usize>>,
) -> Result<Cocycle> {
    let k = cover.pieces.len();
    for (&(i, j), m) in &maps {
        if i >= k || j >= k {
            return Err(Error::DomainMismatch(format!("map indices ({i},{j}) out of range")));
        }
        let overlap: BTreeSet<usize> = cover.overlap(i, j).into_iter().collect();
        let keys: BTreeSet<usize> = m.keys().copied().collect();
        if keys != overlap {
            return Err(Error::DomainMismatch(format!(
                "c_{{{i}{j}}} is not defined exactly on the overlap"
            )));
        }
        for &g in m.values() {
            if g >= target.n_morphisms() {
                return Err(Error::DomainMismatch("morphism index out of range".into()));
            }
        }
    }
    for i in 0..k {
        for j in 0..k {
            if !cover.overlap(i, j).is_empty() && !maps.contains_key(&(i, j)) {
                return Err(Error::DomainMismatch(format!(
                    "missing map c_{{{i}{j}}} on a nonempty overlap"
                )));
            }
        }
    }
    for i in 0..k {
        if let Some(m) = maps.get(&(i, i)) {
            for (&x, &g) in m {
                if !target.is_unit(g) {
                    return Err(Error::NotUnit { i, x: cover.base[x].clone() });
                }
            }
        }
    }
    // Endpoint conditions: dom c_ij(x) is the unit object of c_jj(x),
    // cod c_ij(x) that of c_ii(x).
    for (&(i, j), m) in &maps {
        for (&x, &g) in m {
            let lower = target.dom(maps[&(j, j)][&x]);
            let upper = target.dom(maps[&(i, i)][&x]);
            if target.dom(g) != lower || target.cod(g) != upper {
                return Err(Error::DomainMismatch(format!(
                    "c_{{{i}{j}}}({}) has wrong endpoints",
                    cover.base[x]
                )));
            }
        }
    }
    // Triple identity (covers inverses via k = i).
    for i in 0..k {
        for j in 0..k {
            for l in 0..k {
                let (Some(mij), Some(mjl), Some(mil)) =
                    (maps.get(&(i, j)), maps.get(&(j, l)), maps.get(&(i, l)))
                else {
                    continue;
                };
                for &x in cover.pieces[i].iter() {
                    if !cover.pieces[j].contains(&x) || !cover.pieces[l].contains(&x) {
                        continue;
                    }
                    let lhs = target.compose(mij[&x], mjl[&x]);
                    if lhs != Some(mil[&x]) {
                        return Err(Error::CocycleFail { i, j, k: l, x: cover.base[x].clone() });
                    }
                }
            }
        }
    }
    Ok(Cocycle { cover, target, maps })
}

/// The everywhere-unit cocycle at a constant object.
pub fn trivial_cocycle(cover: Cover, target: FiniteGroupoid, object: usize) -> Cocycle {
    let unit = target.unit_of(object);
    let k = cover.pieces.len();
    let mut maps = BTreeMap::new();
    for i in 0..k {
        for j in 0..k {
            let overlap = cover.overlap(i, j);
            if overlap.is_empty() {
                continue;
            }
            maps.insert((i, j), overlap.into_iter().map(|x| (x, unit)).collect());
        }
    }
    validate_cocycle(cover, target, maps).expect("the unit cocycle is valid")
}

/// The principal bundle Σ(c): triples (g, x, i) with dom g at piece i's
/// object over x, identified by (g, x, i) ~ (g ∘ c_ij(x), x, j). Elements
/// are named by the class representative least in (i, morphism id).
pub struct SigmaBundle {
    pub bundle: Bibundle,
    /// (morphism, point, piece) → element index of its class.
    pub class_of: HashMap<(usize, usize, usize), usize>,
    /// element index → representative triple.
    pub reps: Vec<(usize, usize, usize)>,
}

pub fn sigma(c: &Cocycle) -> SigmaBundle {
    let g = &c.target;
    let base = discrete_on(&c.cover.base);
    let mut triples = Vec::new();
    let mut index = HashMap::new();
    for x in 0..c.cover.base.len() {
        for i in 0..c.cover.pieces.len() {
            if !c.cover.pieces[i].contains(&x) {
                continue;
            }
            let obj = c.object_at(i, x);
            for m in 0..g.n_morphisms() {
                if g.dom(m) == obj {
                    index.insert((m, x, i), triples.len());
                    triples.push((m, x, i));
                }
            }
        }
    }
    let n = triples.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (t, &(m, x, i)) in triples.iter().enumerate() {
        for j in 0..c.cover.pieces.len() {
            if i == j || !c.cover.pieces[j].contains(&x) {
                continue;
            }
            let m2 = g.compose(m, c.c(i, j, x)).expect("endpoints match by validation");
            let s = index[&(m2, x, j)];
            let (a, b) = (find(&mut parent, t), find(&mut parent, s));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for t in 0..n {
        let r = find(&mut parent, t);
        members.entry(r).or_default().push(t);
    }
    let mut elements = Vec::new();
    let mut reps = Vec::new();
    let mut class_no = HashMap::new();
    for (&root, mem) in &members {
        let &rep = mem
            .iter()
            .min_by_key(|&&t| {
                let (m, _, i) = triples[t];
                (i, g.morphism_id(m).to_string())
            })
            .unwrap();
        let (m, x, i) = triples[rep];
        class_no.insert(root, elements.len());
        reps.push((m, x, i));
        elements.push((
            format!("[{}|{}|{}]", g.morphism_id(m), c.cover.base[x], i),
            g.cod(m),
            x,
        ));
    }
    let mut left_act = HashMap::new();
    let mut right_act = HashMap::new();
    for (&root, mem) in &members {
        let ci = class_no[&root];
        let (m, x, i) = triples[mem[0]];
        for g2 in 0..g.n_morphisms() {
            if g.dom(g2) == g.cod(m) {
                let r = find(&mut parent, index[&(g.compose(g2, m).unwrap(), x, i)]);
                left_act.insert((g2, ci), class_no[&r]);
            }
        }
        right_act.insert((ci, base.unit_of(x)), ci);
    }
    let plain = elements.clone();
    let bundle = Bibundle::new(g.clone(), base, elements, left_act, right_act)
        .expect("Σ(c) is a valid bibundle");
    let remap: HashMap<usize, usize> = plain
        .iter()
        .enumerate()
        .map(|(old, (id, _, _))| (old, bundle.element_index(id).unwrap()))
        .collect();
    let mut class_of = HashMap::new();
    for (t, &triple) in triples.iter().enumerate() {
        let r = find(&mut parent, t);
        class_of.insert(triple, remap[&class_no[&r]]);
    }
    let mut reps_final = vec![(0, 0, 0); reps.len()];
    for (old, &triple) in reps.iter().enumerate() {
        reps_final[remap[&old]] = triple;
    }
    SigmaBundle { bundle, class_of, reps: reps_final }
}

/// Extract a cocycle from a principal bundle over a discrete base, using
/// the singleton cover with the least-id element of each fiber as section.
pub fn extract_cocycle(e: &Bibundle) -> Result<Cocycle> {
    if !e.right.is_discrete() {
        return Err(Error::InvalidInput(
            "cocycle extraction needs a bundle over a discrete base".into(),
        ));
    }
    if !e.classify().principal {
        return Err(Error::NotPrincipal("cocycle extraction requires a principal bundle".into()));
    }
    let base: Vec<String> = e.right.object_ids().to_vec();
    let pieces: Vec<BTreeSet<usize>> = (0..base.len()).map(|x| [x].into()).collect();
    let cover = Cover::new(base, pieces)?;
    let mut maps = BTreeMap::new();
    for x in 0..cover.base.len() {
        let section = (0..e.n_elements())
            .find(|&t| e.w(t) == x)
            .expect("principal bundles have surjective anchors");
        let unit = e.left.unit_of(e.p(section));
        maps.insert((x, x), BTreeMap::from([(x, unit)]));
    }
    validate_cocycle(cover, e.left.clone(), maps)
}

/// Search for an intertwiner family b with c'_ij(x) ∘ b_j(x) = b_i(x) ∘ c_ij(x).
/// Returns per-piece maps x ↦ morphism, or None. Exhaustive with a hard cap.
pub fn cohomologous(
    c: &Cocycle,
    c2: &Cocycle,
) -> Result<Option<Vec<BTreeMap<usize, usize>>>> {
    if c.cover != c2.cover {
        return Err(Error::CoverMismatch("the cocycles live on different covers".into()));
    }
    if c.target != c2.target {
        return Err(Error::CoverMismatch("the cocycles have different targets".into()));
    }
    if c.cover.pieces.len() * c.cover.base.len() > 24 {
        return Err(Error::CapExceeded(format!(
            "cohomology search limited to |pieces|·|X| ≤ 24, got {}",
            c.cover.pieces.len() * c.cover.base.len()
        )));
    }
    let g = &c.target;
    // Variables: one morphism per (piece, point) incidence, constrained to
    // hom(object_at(c), object_at(c')).
    let mut vars: Vec<(usize, usize)> = Vec::new();
    for i in 0..c.cover.pieces.len() {
        for &x in &c.cover.pieces[i] {
            vars.push((i, x));
        }
    }
    let domains: Vec<Vec<usize>> = vars
        .iter()
        .map(|&(i, x)| g.hom(c.object_at(i, x), c2.object_at(i, x)))
        .collect();
    let var_no: HashMap<(usize, usize), usize> = vars.iter().enumerate().map(|(n, &v)| (v, n)).collect();
    let mut assign: Vec<Option<usize>> = vec![None; vars.len()];

    fn consistent(
        c: &Cocycle,
        c2: &Cocycle,
        var_no: &HashMap<(usize, usize), usize>,
        assign: &[Option<usize>],
        just_set: usize,
        vars: &[(usize, usize)],
    ) -> bool {
        let g = &c.target;
        let (i0, x0) = vars[just_set];
        for j in 0..c.cover.pieces.len() {
            if !c.cover.pieces[j].contains(&x0) {
                continue;
            }
            // Both orientations of the constraint touching (i0, x0).
            for (i, jj) in [(i0, j), (j, i0)] {
                let (Some(bi), Some(bj)) = (
                    assign[var_no[&(i, x0)]],
                    assign[var_no[&(jj, x0)]],
                ) else {
                    continue;
                };
                let lhs = g.compose(c2.c(i, jj, x0), bj);
                let rhs = g.compose(bi, c.c(i, jj, x0));
                if lhs.is_none() || lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    fn search(
        c: &Cocycle,
        c2: &Cocycle,
        vars: &[(usize, usize)],
        domains: &[Vec<usize>],
        var_no: &HashMap<(usize, usize), usize>,
        assign: &mut Vec<Option<usize>>,
        k: usize,
    ) -> bool {
        if k == vars.len() {
            return true;
        }
        for &cand in &domains[k] {
            assign[k] = Some(cand);
            if consistent(c, c2, var_no, assign, k, vars)
                && search(c, c2, vars, domains, var_no, assign, k + 1)
            {
                return true;
            }
            assign[k] = None;
        }
        false
    }

    if !search(c, c2, &vars, &domains, &var_no, &mut assign, 0) {
        return Ok(None);
    }
    let mut out = vec![BTreeMap::new(); c.cover.pieces.len()];
    for (n, &(i, x)) in vars.iter().enumerate() {
        out[i].insert(x, assign[n].unwrap());
    }
    Ok(Some(out))
}

/// Restrict a cocycle along a refinement: piece k of the finer cover maps
/// into piece tau[k] of the original.
pub fn refine(c: &Cocycle, fine: Cover, tau: &[usize]) -> Result<Cocycle> {
    if fine.base != c.cover.base {
        return Err(Error::CoverMismatch("refinement must keep the base".into()));
    }
    if tau.len() != fine.pieces.len() {
        return Err(Error::DomainMismatch("one tau entry per fine piece".into()));
    }
    for (k, &t) in tau.iter().enumerate() {
        if t >= c.cover.pieces.len() || !fine.pieces[k].is_subset(&c.cover.pieces[t]) {
            return Err(Error::DomainMismatch(format!(
                "fine piece {k} is not inside coarse piece {t}"
            )));
        }
    }
    let mut maps = BTreeMap::new();
    for k in 0..fine.pieces.len() {
        for l in 0..fine.pieces.len() {
            let overlap = fine.pieces[k].intersection(&fine.pieces[l]);
            let m: BTreeMap<usize, usize> =
                overlap.map(|&x| (x, c.c(tau[k], tau[l], x))).collect();
            if !m.is_empty() {
                maps.insert((k, l), m);
            }
        }
    }
    validate_cocycle(fine, c.target.clone(), maps)
}

/// Explicit bundle isomorphism Σ(c) → Σ(c') induced by an intertwiner b:
/// [g, x, i] ↦ [g ∘ b_i(x)⁻¹, x, i].
pub fn beta_isomorphism(
    c: &Cocycle,
    c2: &Cocycle,
    b: &[BTreeMap<usize, usize>],
) -> Result<EquivariantMap> {
    let s1 = sigma(c);
    let s2 = sigma(c2);
    let g = &c.target;
    let mut map = Vec::with_capacity(s1.bundle.n_elements());
    for &(m, x, i) in &s1.reps {
        let bi = b[i][&x];
        let m2 = g
            .compose(m, g.inverse(bi))
            .ok_or_else(|| Error::NotEquivariant("intertwiner endpoints are wrong".into()))?;
        map.push(s2.class_of[&(m2, x, i)]);
    }
    let em = EquivariantMap { source: s1.bundle, target: s2.bundle, map };
    em.validate()?;
    Ok(em)
}
