//! Leaves and holonomy of transitive and principal bibundles: fiberwise
//! H-connected components, the leaf partition of the base, holonomy groups,
//! loop holonomy by unique lifting, and equivariant pushforward checks.

use crate::bibundle::{angs, Bibundle};
use crate::error::{Error, Result};
use crate::groupoid::{self, effect, FiniteGroup, GroupoidFunctor};
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// A leaf of a transitive bibundle: the canonical representative component
/// L̃ inside one p-fiber, its image in the base, and its holonomy group
/// presented as a subgroup of the vertex group at the fiber object.
#[derive(Clone, Debug)]
pub struct Leaf {
    /// G-object index of the representative fiber.
    pub fiber_object: usize,
    /// Representative H-connected component L̃ ⊆ p⁻¹(fiber_object).
    pub component: BTreeSet<usize>,
    /// ϖ-image of the whole leaf class: a block of the leaf partition of H₀.
    pub underlying: BTreeSet<usize>,
    /// {g ∈ G(a,a) : g·L̃ = L̃} under composition; elements are morphism ids.
    pub holonomy: FiniteGroup,
}

/// All fiberwise components: (fiber object, component elements) in
/// deterministic order. Components are the orbits of the right H-action
/// inside each p-fiber (a discrete H-path is a chain of morphism steps).
fn fiber_components(e: &Bibundle) -> Vec<(usize, BTreeSet<usize>)> {
    let n = e.n_elements();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for x in 0..n {
        for h in 0..e.right.n_morphisms() {
            if let Some(xh) = e.ract(x, h) {
                let (a, b) = (find(&mut parent, x), find(&mut parent, xh));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut comps: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for x in 0..n {
        let r = find(&mut parent, x);
        comps.entry(r).or_default().insert(x);
    }
    comps.into_values().map(|c| (e.p(*c.iter().next().unwrap()), c)).collect()
}

fn holonomy_group(e: &Bibundle, a: usize, component: &BTreeSet<usize>) -> FiniteGroup {
    let g = &e.left;
    let mut kept = Vec::new();
    for m in g.hom(a, a) {
        let image: BTreeSet<usize> =
            component.iter().map(|&x| e.lact(m, x).unwrap()).collect();
        if image.is_subset(component) {
            // Containment forces equality for a bijective translation.
            assert_eq!(&image, component, "holonomy containment must be equality");
            kept.push(m);
        }
    }
    let elements: Vec<String> = kept.iter().map(|&m| g.morphism_id(m).to_string()).collect();
    let pos: HashMap<usize, usize> = kept.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let table = kept
        .iter()
        .map(|&x| kept.iter().map(|&y| pos[&g.compose(x, y).unwrap()]).collect())
        .collect();
    FiniteGroup::new(elements, table).expect("holonomy is a subgroup of the vertex group")
}

/// The leaves of a transitive bibundle. Components whose base images
/// intersect belong to one leaf; each leaf reports the component at the
/// least fiber-object id (then least element id) as its representative.
pub fn leaves(e: &Bibundle) -> Result<Vec<Leaf>> {
    if !e.classify().transitive {
        return Err(Error::NotTransitive("leaves require a transitive bundle".into()));
    }
    let comps = fiber_components(e);
    let under: Vec<BTreeSet<usize>> = comps
        .iter()
        .map(|(_, c)| c.iter().map(|&x| e.w(x)).collect())
        .collect();
    let k = comps.len();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..k {
        for j in i + 1..k {
            if !under[i].is_disjoint(&under[j]) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..k {
        let r = find(&mut parent, i);
        classes.entry(r).or_default().push(i);
    }
    let mut out = Vec::new();
    for members in classes.values() {
        let &rep = members
            .iter()
            .min_by_key(|&&i| {
                let (a, c) = &comps[i];
                (
                    e.left.object_id(*a).to_string(),
                    e.element_id(*c.iter().next().unwrap()).to_string(),
                )
            })
            .unwrap();
        let (a, component) = comps[rep].clone();
        let mut underlying = BTreeSet::new();
        for &i in members {
            underlying.extend(under[i].iter().copied());
        }
        let holonomy = holonomy_group(e, a, &component);
        out.push(Leaf { fiber_object: a, component, underlying, holonomy });
    }
    out.sort_by_key(|l| {
        l.underlying
            .iter()
            .map(|&b| e.right.object_id(b).to_string())
            .min()
    });
    Ok(out)
}

/// Any two components with intersecting base images are conjugate: some
/// g carries one onto the other and conjugates the holonomy groups.
pub fn component_conjugacy_check(e: &Bibundle) -> Result<()> {
    if !e.classify().transitive {
        return Err(Error::NotTransitive("conjugacy check requires a transitive bundle".into()));
    }
    let comps = fiber_components(e);
    for (i, (a1, c1)) in comps.iter().enumerate() {
        for (a2, c2) in comps.iter().skip(i + 1) {
            let u1: BTreeSet<usize> = c1.iter().map(|&x| e.w(x)).collect();
            let u2: BTreeSet<usize> = c2.iter().map(|&x| e.w(x)).collect();
            let Some(&x) = u1.intersection(&u2).next() else { continue };
            let &e1 = c1.iter().find(|&&t| e.w(t) == x).unwrap();
            let &e2 = c2.iter().find(|&&t| e.w(t) == x).unwrap();
            let g = (0..e.left.n_morphisms())
                .find(|&g| e.lact(g, e1) == Some(e2))
                .ok_or_else(|| Error::NotTransitive("no carrier between components".into()))?;
            let image: BTreeSet<usize> = c1.iter().map(|&t| e.lact(g, t).unwrap()).collect();
            if &image != c2 {
                return Err(Error::InvalidInput(
                    "translation does not carry the component onto its partner".into(),
                ));
            }
            // Conjugation carries one holonomy group onto the other.
            let h1 = holonomy_group(e, *a1, c1);
            let h2 = holonomy_group(e, *a2, c2);
            let gi = e.left.inverse(g);
            let conj: BTreeSet<String> = h1
                .elements()
                .iter()
                .map(|id| {
                    let m = e.left.morphism_index(id).unwrap();
                    let gm = e.left.compose(g, m).unwrap();
                    e.left.morphism_id(e.left.compose(gm, gi).unwrap()).to_string()
                })
                .collect();
            let target: BTreeSet<String> = h2.elements().iter().cloned().collect();
            if conj != target {
                return Err(Error::InvalidInput(
                    "conjugation does not match the partner holonomy group".into(),
                ));
            }
        }
    }
    Ok(())
}

/// For a principal bundle the holonomy action on each representative
/// component is free: no nontrivial holonomy element fixes a point.
pub fn holonomy_freeness_check(e: &Bibundle) -> Result<()> {
    if !e.classify().principal {
        return Err(Error::NotPrincipal("freeness check requires a principal bundle".into()));
    }
    for leaf in leaves(e)? {
        for id in leaf.holonomy.elements() {
            let m = e.left.morphism_index(id).unwrap();
            if e.left.is_unit(m) {
                continue;
            }
            for &x in &leaf.component {
                if e.lact(m, x) == Some(x) {
                    return Err(Error::InvalidInput(format!(
                        "holonomy element {id} fixes {}",
                        e.element_id(x)
                    )));
                }
            }
        }
    }
    Ok(())
}

/// A loop of H-morphisms at a base object, stored in application order:
/// dom h₁ = base, cod hᵢ = dom hᵢ₊₁, cod hₙ = base.
#[derive(Clone, Debug)]
pub struct HLoop {
    pub base: usize,
    pub steps: Vec<usize>,
}

impl HLoop {
    pub fn validate(&self, h: &groupoid::FiniteGroupoid) -> Result<()> {
        let mut at = self.base;
        for &s in &self.steps {
            if s >= h.n_morphisms() || h.dom(s) != at {
                return Err(Error::NotLiftable("loop steps do not chain".into()));
            }
            at = h.cod(s);
        }
        if at != self.base {
            return Err(Error::NotLiftable("loop does not return to its base".into()));
        }
        Ok(())
    }

    /// Concatenation: `self` followed by `other` (both at the same base).
    pub fn then(&self, other: &HLoop) -> Result<HLoop> {
        if self.base != other.base {
            return Err(Error::NotLiftable("loops have different bases".into()));
        }
        let mut steps = self.steps.clone();
        steps.extend(other.steps.iter().copied());
        Ok(HLoop { base: self.base, steps })
    }

    /// Image loop under a functor on the base groupoid.
    pub fn pushforward(&self, phi: &GroupoidFunctor) -> HLoop {
        HLoop {
            base: phi.obj_map[self.base],
            steps: self.steps.iter().map(|&s| phi.mor_map[s]).collect(),
        }
    }
}

/// Holonomy of a loop at an element of a principal bundle: lift the loop by
/// eᵢ = eᵢ₋₁ · hᵢ⁻¹ (unique since the action is free along fibers) and
/// return the unique g with g · eₙ = e.
pub fn holonomy_of_loop(e: &Bibundle, elem: usize, l: &HLoop) -> Result<usize> {
    if !e.classify().principal {
        return Err(Error::NotPrincipal("loop holonomy requires a principal bundle".into()));
    }
    l.validate(&e.right)?;
    if e.w(elem) != l.base {
        return Err(Error::NotLiftable("element does not sit over the loop base".into()));
    }
    let mut cur = elem;
    for &h in &l.steps {
        cur = e
            .ract(cur, e.right.inverse(h))
            .ok_or_else(|| Error::NotLiftable("lift chain breaks".into()))?;
    }
    e.theta(elem, cur)
}

/// An equivariant map α: E → F over a pair of functors (ψ, φ) acting on
/// the left and right groupoids.
pub struct TwistedMap<'a> {
    pub e: &'a Bibundle,
    pub f: &'a Bibundle,
    pub psi: &'a GroupoidFunctor,
    pub phi: &'a GroupoidFunctor,
    /// E element index → F element index.
    pub map: Vec<usize>,
}

impl TwistedMap<'_> {
    pub fn validate(&self) -> Result<()> {
        let (e, f) = (self.e, self.f);
        if self.psi.source != e.left
            || self.psi.target != f.left
            || self.phi.source != e.right
            || self.phi.target != f.right
        {
            return Err(Error::SourceTargetMismatch(
                "functor endpoints do not match the bundles".into(),
            ));
        }
        if self.map.len() != e.n_elements() {
            return Err(Error::NotEquivariant("wrong map length".into()));
        }
        for x in 0..e.n_elements() {
            let y = self.map[x];
            if y >= f.n_elements()
                || f.p(y) != self.psi.obj_map[e.p(x)]
                || f.w(y) != self.phi.obj_map[e.w(x)]
            {
                return Err(Error::NotEquivariant(format!(
                    "anchors break at {}",
                    e.element_id(x)
                )));
            }
            for g in 0..e.left.n_morphisms() {
                if let Some(gx) = e.lact(g, x) {
                    if f.lact(self.psi.mor_map[g], y) != Some(self.map[gx]) {
                        return Err(Error::NotEquivariant(format!(
                            "left equivariance breaks at ({}, {})",
                            e.left.morphism_id(g),
                            e.element_id(x)
                        )));
                    }
                }
            }
            for h in 0..e.right.n_morphisms() {
                if let Some(xh) = e.ract(x, h) {
                    if f.ract(y, self.phi.mor_map[h]) != Some(self.map[xh]) {
                        return Err(Error::NotEquivariant(format!(
                            "right equivariance breaks at ({}, {})",
                            e.element_id(x),
                            e.right.morphism_id(h)
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// For every element and every 1- and 2-step loop at its base, assert
/// ψ(ℋ_e(ℓ)) = ℋ_{α(e)}(φ♯ℓ). Returns one line per checked identity.
pub fn pushforward_holonomy_check(alpha: &TwistedMap) -> Result<Vec<String>> {
    alpha.validate()?;
    let (e, f) = (alpha.e, alpha.f);
    if !e.classify().principal || !f.classify().principal {
        return Err(Error::NotPrincipal("pushforward check requires principal bundles".into()));
    }
    let h = &e.right;
    let mut report = Vec::new();
    for x in 0..e.n_elements() {
        let b = e.w(x);
        let mut loops = Vec::new();
        for m in h.hom(b, b) {
            loops.push(HLoop { base: b, steps: vec![m] });
        }
        for m1 in 0..h.n_morphisms() {
            if h.dom(m1) != b {
                continue;
            }
            for m2 in h.hom(h.cod(m1), b) {
                loops.push(HLoop { base: b, steps: vec![m1, m2] });
            }
        }
        for l in loops {
            let lhs = alpha.psi.mor_map[holonomy_of_loop(e, x, &l)?];
            let rhs = holonomy_of_loop(f, alpha.map[x], &l.pushforward(alpha.phi))?;
            if lhs != rhs {
                return Err(Error::NotEquivariant(format!(
                    "holonomy identity fails at {} for loop {:?}",
                    e.element_id(x),
                    l.steps.iter().map(|&s| h.morphism_id(s)).collect::<Vec<_>>()
                )));
            }
            report.push(format!(
                "{}: loop [{}] -> {}",
                e.element_id(x),
                l.steps.iter().map(|&s| h.morphism_id(s)).collect::<Vec<_>>().join(", "),
                f.left.morphism_id(rhs)
            ));
        }
    }
    Ok(report)
}

/// The effect pushforward of ⟨φ⟩: the bundle ⟨eff ∘ φ⟩ together with the
/// evident map (g|b) ↦ (eff(g)|b) over (eff, id). Returned as owned parts
/// ready to assemble into a `TwistedMap`.
pub struct EffectPushforward {
    pub e: Bibundle,
    pub f: Bibundle,
    pub psi: GroupoidFunctor,
    pub phi: GroupoidFunctor,
    pub map: Vec<usize>,
}

pub fn effect_pushforward(phi_fun: &GroupoidFunctor) -> EffectPushforward {
    let e = angs(phi_fun);
    let (_, eff_fun) = effect(&phi_fun.target);
    let comp = eff_fun.compose(phi_fun).expect("matching middle groupoid");
    let f = angs(&comp);
    let mut map = Vec::with_capacity(e.n_elements());
    for x in 0..e.n_elements() {
        // Element ids are "(g|b)"; rebuild the image id from the pieces.
        let id = e.element_id(x);
        let inner = &id[1..id.len() - 1];
        let cut = inner.rfind('|').expect("id shape (g|b)");
        let (gid, bid) = (&inner[..cut], &inner[cut + 1..]);
        let g = phi_fun.target.morphism_index(gid).unwrap();
        let img = eff_fun.target.morphism_id(eff_fun.mor_map[g]);
        map.push(f.element_index(&format!("({img}|{bid})")).unwrap());
    }
    EffectPushforward { e, f, psi: eff_fun, phi: GroupoidFunctor::identity(&phi_fun.source), map }
}

/// The associated bundle over the orbit space: E/H as a G-bundle over the
/// discrete groupoid on the blocks of |H|. Elements are right H-orbits of
/// E named by their least element id.
pub fn associated_orbit_bundle(e: &Bibundle) -> Bibundle {
    let blocks = groupoid::orbit_space(&e.right);
    let block_ids: Vec<String> =
        blocks.blocks.iter().map(|b| e.right.object_id(b[0]).to_string()).collect();
    let base = groupoid::discrete_on(&block_ids);
    // Right H-orbits of elements.
    let n = e.n_elements();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for x in 0..n {
        for h in 0..e.right.n_morphisms() {
            if let Some(xh) = e.ract(x, h) {
                let (a, b) = (find(&mut parent, x), find(&mut parent, xh));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut reps: BTreeMap<usize, usize> = BTreeMap::new();
    for x in 0..n {
        let r = find(&mut parent, x);
        reps.entry(r).or_insert(x);
    }
    let mut elements = Vec::new();
    let mut class_no = HashMap::new();
    for (&root, &rep) in &reps {
        class_no.insert(root, elements.len());
        let block = block_ids[blocks.block_of[e.w(rep)]].clone();
        elements.push((
            e.element_id(rep).to_string(),
            e.p(rep),
            base.object_index(&block).unwrap(),
        ));
    }
    let mut left_act = HashMap::new();
    let mut right_act = HashMap::new();
    for (&root, &rep) in &reps {
        let ci = class_no[&root];
        for g in 0..e.left.n_morphisms() {
            if let Some(gx) = e.lact(g, rep) {
                let r = find(&mut parent, gx);
                left_act.insert((g, ci), class_no[&r]);
            }
        }
        // The discrete base acts by units only.
        let (_, _, w) = elements[ci];
        right_act.insert((ci, base.unit_of(w)), ci);
    }
    Bibundle::new(e.left.clone(), base, elements, left_act, right_act)
        .expect("orbit bundle of a valid bundle is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bibundle::unit_bibundle;
    use crate::groupoid::{cyclic, discrete_set, pair, point};

    #[test]
    fn leaves_of_unit_pair3() {
        let e = unit_bibundle(&pair(3));
        let ls = leaves(&e).unwrap();
        assert_eq!(ls.len(), 1);
        assert_eq!(ls[0].underlying.len(), 3);
        assert_eq!(ls[0].holonomy.order(), 1);
    }

    #[test]
    fn leaves_of_cyclic2_identity() {
        let c2 = cyclic(2);
        let e = angs(&GroupoidFunctor::identity(&c2));
        let ls = leaves(&e).unwrap();
        assert_eq!(ls.len(), 1);
        assert_eq!(ls[0].underlying.len(), 1);
        assert_eq!(ls[0].holonomy.order(), 2);
        assert_eq!(ls[0].component.len(), 2);
    }

    #[test]
    fn leaves_of_discrete_two_points_to_point() {
        let d2 = discrete_set(2);
        let phi = GroupoidFunctor::new(d2.clone(), point(), vec![0, 0], vec![0, 0]).unwrap();
        let e = angs(&phi);
        let ls = leaves(&e).unwrap();
        assert_eq!(ls.len(), 2);
        for l in &ls {
            assert_eq!(l.holonomy.order(), 1);
            assert_eq!(l.component.len(), 1);
        }
    }

    #[test]
    fn trivial_hom_merges_components() {
        // ⟨trivial: cyclic(2)→cyclic(2)⟩: two singleton components over one
        // base object merge into a single leaf with trivial holonomy.
        let c2 = cyclic(2);
        let triv = GroupoidFunctor::new(c2.clone(), c2.clone(), vec![0], vec![0, 0]).unwrap();
        let e = angs(&triv);
        let ls = leaves(&e).unwrap();
        assert_eq!(ls.len(), 1);
        assert_eq!(ls[0].component.len(), 1);
        assert_eq!(ls[0].holonomy.order(), 1);
        component_conjugacy_check(&e).unwrap();
    }

    #[test]
    fn conjugacy_and_freeness_on_corpus_bundles() {
        for e in [
            unit_bibundle(&pair(3)),
            unit_bibundle(&cyclic(4)),
            angs(&GroupoidFunctor::identity(&cyclic(2))),
            angs(&GroupoidFunctor::new(point(), pair(2), vec![0], vec![0]).unwrap()),
        ] {
            component_conjugacy_check(&e).unwrap();
            holonomy_freeness_check(&e).unwrap();
        }
    }

    #[test]
    fn empty_loop_holonomy_is_unit() {
        let e = unit_bibundle(&pair(3));
        let l = HLoop { base: e.w(0), steps: vec![] };
        let g = holonomy_of_loop(&e, 0, &l).unwrap();
        assert!(e.left.is_unit(g));
        assert_eq!(e.left.dom(g), e.p(0));
    }

    #[test]
    fn single_step_loop_gives_phi_of_h() {
        // ⟨id: cyclic(2)→cyclic(2)⟩ at the unit element: ℋ(h) = h.
        let c2 = cyclic(2);
        let phi = GroupoidFunctor::identity(&c2);
        let e = angs(&phi);
        let unit_elem = e.element_index("(r0|*)").unwrap();
        for h in 0..c2.n_morphisms() {
            let l = HLoop { base: 0, steps: vec![h] };
            let g = holonomy_of_loop(&e, unit_elem, &l).unwrap();
            assert_eq!(g, phi.mor_map[h]);
        }
    }

    #[test]
    fn two_step_loop_is_composite() {
        let c4 = cyclic(4);
        let phi = GroupoidFunctor::identity(&c4);
        let e = angs(&phi);
        let unit_elem = e.element_index("(r0|*)").unwrap();
        for h1 in 0..c4.n_morphisms() {
            for h2 in 0..c4.n_morphisms() {
                let l = HLoop { base: 0, steps: vec![h1, h2] };
                let g = holonomy_of_loop(&e, unit_elem, &l).unwrap();
                assert_eq!(g, c4.compose(h2, h1).unwrap());
            }
        }
    }

    #[test]
    fn loop_holonomy_is_multiplicative() {
        let c4 = cyclic(4);
        let e = angs(&GroupoidFunctor::identity(&c4));
        for x in 0..e.n_elements() {
            for h1 in 0..c4.n_morphisms() {
                for h2 in 0..c4.n_morphisms() {
                    let l1 = HLoop { base: 0, steps: vec![h1] };
                    let l2 = HLoop { base: 0, steps: vec![h2] };
                    let cat = l1.then(&l2).unwrap();
                    let g1 = holonomy_of_loop(&e, x, &l1).unwrap();
                    let g2 = holonomy_of_loop(&e, x, &l2).unwrap();
                    let g12 = holonomy_of_loop(&e, x, &cat).unwrap();
                    assert_eq!(g12, c4.compose(g2, g1).unwrap());
                }
            }
        }
    }

    #[test]
    fn pushforward_identity_holds() {
        let c2 = cyclic(2);
        let e = angs(&GroupoidFunctor::identity(&c2));
        let alpha = TwistedMap {
            e: &e,
            f: &e,
            psi: &GroupoidFunctor::identity(&c2),
            phi: &GroupoidFunctor::identity(&c2),
            map: (0..e.n_elements()).collect(),
        };
        let report = pushforward_holonomy_check(&alpha).unwrap();
        assert!(!report.is_empty());
    }

    #[test]
    fn effect_pushforward_check() {
        // The effect functor of cyclic(2) collapses to the point; holonomy
        // images of a cyclic(2)-bundle land in Eff(G) as units.
        let c2 = cyclic(2);
        let parts = effect_pushforward(&GroupoidFunctor::identity(&c2));
        let alpha = TwistedMap {
            e: &parts.e,
            f: &parts.f,
            psi: &parts.psi,
            phi: &parts.phi,
            map: parts.map.clone(),
        };
        let report = pushforward_holonomy_check(&alpha).unwrap();
        assert!(!report.is_empty());
        // Collapsing functor ψ: cyclic(2) → point kills all holonomy.
        assert_eq!(parts.psi.target.n_morphisms(), 1);
    }

    #[test]
    fn orbit_bundle_leaf_partitions_agree() {
        for e in [
            unit_bibundle(&pair(3)),
            angs(&GroupoidFunctor::identity(&cyclic(2))),
            angs(&GroupoidFunctor::new(discrete_set(2), point(), vec![0, 0], vec![0, 0]).unwrap()),
        ] {
            let q = associated_orbit_bundle(&e);
            let le = leaves(&e).unwrap();
            let lq = leaves(&q).unwrap();
            assert_eq!(le.len(), lq.len());
            let blocks = groupoid::orbit_space(&e.right);
            for (a, b) in le.iter().zip(lq.iter()) {
                // Underlying blocks agree.
                let image: BTreeSet<String> = a
                    .underlying
                    .iter()
                    .map(|&x| e.right.object_id(blocks.blocks[blocks.block_of[x]][0]).to_string())
                    .collect();
                let target: BTreeSet<String> =
                    b.underlying.iter().map(|&x| q.right.object_id(x).to_string()).collect();
                assert_eq!(image, target);
                // Holonomy groups agree elementwise.
                let ea: BTreeSet<&String> = a.holonomy.elements().iter().collect();
                let eb: BTreeSet<&String> = b.holonomy.elements().iter().collect();
                assert_eq!(ea, eb);
            }
        }
    }
}
