//! A fixed corpus of groupoids, functors, bibundles, cocycles, and
//! simplicial actions used by the property suites: small enough to be
//! exhaustively checkable, varied enough to exercise every code path.

use crate::bibundle::{angs, unit_bibundle, Bibundle};
use crate::cocycle::{trivial_cocycle, validate_cocycle, Cocycle, Cover};
use crate::groupoid::{
    action_groupoid, cyclic, disjoint_union, discrete_set, pair, point, FiniteGroup,
    FiniteGroupoid, GroupoidFunctor,
};
use crate::simplicial::{circle_complex, rot_action, SimplicialAction};
use std::collections::BTreeMap;

pub struct Corpus {
    pub groupoids: Vec<(String, FiniteGroupoid)>,
    pub functors: Vec<(String, GroupoidFunctor)>,
    pub bundles: Vec<(String, Bibundle)>,
    pub cocycles: Vec<(String, Cocycle)>,
    pub actions: Vec<(String, SimplicialAction)>,
}

/// The ℤ/2 action on two points by exchange, as an action groupoid.
pub fn swap_groupoid() -> FiniteGroupoid {
    let z2 = FiniteGroup::cyclic(2);
    let set = vec!["1".to_string(), "2".to_string()];
    action_groupoid(&z2, &set, &|x, e| if e == 0 { x } else { 1 - x }).unwrap()
}

/// The functor collapsing an arbitrary groupoid onto the point.
pub fn collapse_to_point(g: &FiniteGroupoid) -> GroupoidFunctor {
    let pt = point();
    GroupoidFunctor::new(
        g.clone(),
        pt,
        vec![0; g.n_objects()],
        vec![0; g.n_morphisms()],
    )
    .unwrap()
}

/// Inclusion of the point at the named object of a discrete-vertex-group
/// groupoid (the object's vertex group must be trivial).
pub fn include_point_at(g: &FiniteGroupoid, object: &str) -> GroupoidFunctor {
    let pt = point();
    let a = g.object_index(object).unwrap();
    GroupoidFunctor::new(pt, g.clone(), vec![a], vec![g.unit_of(a)]).unwrap()
}

/// The functor from the swap action groupoid onto pair(2) sending each
/// morphism to the unique pair morphism with the same endpoints.
pub fn swap_to_pair() -> GroupoidFunctor {
    let sw = swap_groupoid();
    let p2 = pair(2);
    let obj_map: Vec<usize> = (0..sw.n_objects())
        .map(|a| p2.object_index(&format!("p{}", sw.object_id(a))).unwrap())
        .collect();
    let mor_map: Vec<usize> = (0..sw.n_morphisms())
        .map(|m| {
            let d = format!("p{}", sw.object_id(sw.dom(m)));
            let c = format!("p{}", sw.object_id(sw.cod(m)));
            p2.morphism_index(&format!("{d}>{c}")).unwrap()
        })
        .collect();
    GroupoidFunctor::new(sw, p2, obj_map, mor_map).unwrap()
}

/// The endofunctor of cyclic(k) killing every morphism (trivial
/// homomorphism).
pub fn trivial_endo(k: usize) -> GroupoidFunctor {
    let g = cyclic(k);
    GroupoidFunctor::new(
        g.clone(),
        g.clone(),
        vec![0],
        vec![g.unit_of(0); g.n_morphisms()],
    )
    .unwrap()
}

/// A four-point circle base covered by two overlapping arcs.
pub fn two_piece_circle() -> Cover {
    Cover::new(
        (1..=4).map(|i| format!("x{i}")).collect(),
        vec![[0, 1, 2].into(), [2, 3, 0].into()],
    )
    .unwrap()
}

/// A ℤ/k cocycle on the two-piece circle cover whose transition on the
/// overlap is the unit at x1 and rotation by `twist` at x3.
pub fn circle_cocycle(k: usize, twist: usize) -> Cocycle {
    let g = cyclic(k);
    let cover = two_piece_circle();
    let unit = g.unit_of(0);
    let tw = g.morphism_index(&format!("r{twist}")).unwrap();
    let mut maps: BTreeMap<(usize, usize), BTreeMap<usize, usize>> = BTreeMap::new();
    maps.insert((0, 0), cover.pieces[0].iter().map(|&x| (x, unit)).collect());
    maps.insert((1, 1), cover.pieces[1].iter().map(|&x| (x, unit)).collect());
    // Overlap is {x1, x3} (indices 0 and 2).
    maps.insert((0, 1), [(0, unit), (2, tw)].into());
    maps.insert((1, 0), [(0, unit), (2, g.inverse(tw))].into());
    validate_cocycle(cover, g, maps).unwrap()
}

/// A pair(2)-valued cocycle on the two-piece cover with the pieces over
/// different objects.
pub fn pair_two_cocycle() -> Cocycle {
    let g = pair(2);
    let cover = two_piece_circle();
    let u1 = g.morphism_index("p1>p1").unwrap();
    let u2 = g.morphism_index("p2>p2").unwrap();
    let up = g.morphism_index("p2>p1").unwrap();
    let dn = g.morphism_index("p1>p2").unwrap();
    let mut maps: BTreeMap<(usize, usize), BTreeMap<usize, usize>> = BTreeMap::new();
    maps.insert((0, 0), cover.pieces[0].iter().map(|&x| (x, u1)).collect());
    maps.insert((1, 1), cover.pieces[1].iter().map(|&x| (x, u2)).collect());
    maps.insert((0, 1), [(0, up), (2, up)].into());
    maps.insert((1, 0), [(0, dn), (2, dn)].into());
    validate_cocycle(cover, g, maps).unwrap()
}

pub fn corpus() -> Corpus {
    let pt = point();
    let p2 = pair(2);
    let p3 = pair(3);
    let c2 = cyclic(2);
    let c3 = cyclic(3);
    let sw = swap_groupoid();
    let d2 = discrete_set(2);
    let du = disjoint_union(&p2, &c3);
    let groupoids: Vec<(String, FiniteGroupoid)> = vec![
        ("point".into(), pt.clone()),
        ("pair2".into(), p2.clone()),
        ("pair3".into(), p3.clone()),
        ("cyclic2".into(), c2.clone()),
        ("cyclic3".into(), c3.clone()),
        ("swap".into(), sw.clone()),
        ("discrete2".into(), d2.clone()),
        ("pair2+cyclic3".into(), du.clone()),
    ];
    let functors: Vec<(String, GroupoidFunctor)> = vec![
        ("id:point".into(), GroupoidFunctor::identity(&pt)),
        ("id:pair2".into(), GroupoidFunctor::identity(&p2)),
        ("id:cyclic2".into(), GroupoidFunctor::identity(&c2)),
        ("id:cyclic3".into(), GroupoidFunctor::identity(&c3)),
        ("point->pair2".into(), include_point_at(&p2, "p1")),
        ("point->pair3".into(), include_point_at(&p3, "p1")),
        ("pair2->point".into(), collapse_to_point(&p2)),
        ("pair3->point".into(), collapse_to_point(&p3)),
        ("cyclic2->point".into(), collapse_to_point(&c2)),
        ("cyclic3->point".into(), collapse_to_point(&c3)),
        ("swap->pair2".into(), swap_to_pair()),
        ("cyclic2-trivial-endo".into(), trivial_endo(2)),
    ];
    let mut bundles: Vec<(String, Bibundle)> = groupoids
        .iter()
        .map(|(name, g)| (format!("unit:{name}"), unit_bibundle(g)))
        .collect();
    for (name, f) in &functors {
        bundles.push((format!("<{name}>"), angs(f)));
    }
    let cocycles: Vec<(String, Cocycle)> = vec![
        ("z2-trivial".into(), trivial_cocycle(two_piece_circle(), c2.clone(), 0)),
        ("z2-twisted".into(), circle_cocycle(2, 1)),
        ("z3-trivial".into(), trivial_cocycle(two_piece_circle(), c3.clone(), 0)),
        ("z3-twisted".into(), circle_cocycle(3, 1)),
        ("pair2-mixed".into(), pair_two_cocycle()),
    ];
    let actions: Vec<(String, SimplicialAction)> = vec![
        ("rot(2,3)".into(), rot_action(2, 3).unwrap()),
        ("rot(3,3)".into(), rot_action(3, 3).unwrap()),
        ("rot(4,3)".into(), rot_action(4, 3).unwrap()),
        ("trivial-circle4".into(), SimplicialAction::trivial(circle_complex(4))),
    ];
    Corpus { groupoids, functors, bundles, cocycles, actions }
}

/// All (outer, inner) index pairs with functors composable as outer∘inner.
pub fn composable_functor_pairs(c: &Corpus) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, (_, psi)) in c.functors.iter().enumerate() {
        for (j, (_, phi)) in c.functors.iter().enumerate() {
            if phi.target == psi.source {
                out.push((i, j));
            }
        }
    }
    out
}

/// All (left, right) bundle index pairs composable as tensor(left, right).
pub fn composable_bundle_pairs(c: &Corpus) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, (_, e)) in c.bundles.iter().enumerate() {
        for (j, (_, f)) in c.bundles.iter().enumerate() {
            if e.right == f.left {
                out.push((i, j));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::validate_groupoid;

    #[test]
    fn corpus_meets_size_requirements() {
        let c = corpus();
        assert!(c.groupoids.len() >= 6);
        assert!(c.functors.len() >= 10);
        assert!(c.cocycles.len() >= 5);
        assert!(c.actions.len() >= 3);
    }

    #[test]
    fn corpus_groupoids_validate() {
        for (name, g) in corpus().groupoids {
            assert!(validate_groupoid(&g.to_data()).is_ok(), "{name}");
        }
    }

    #[test]
    fn corpus_has_composable_pairs() {
        let c = corpus();
        assert!(composable_functor_pairs(&c).len() >= 10);
        assert!(composable_bundle_pairs(&c).len() >= 10);
    }
}
