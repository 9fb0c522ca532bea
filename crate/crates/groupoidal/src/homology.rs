//! Groupoid chain complexes and their homology. Two tiers: discrete
//! groupoids (free abelian on orbit blocks in every degree, alternating
//! zero/identity boundaries) and free regular simplicial group actions
//! (coinvariant chains on orbit representatives). Includes the balanced
//! subcomplex with its split short exact sequence, long-exact-sequence
//! checks, Mayer–Vietoris, effect invariance, and coefficient sequences.

use crate::abelian::{
    connecting_map, exact_at, AbelianGroupDescriptor, ChainMap, Presentation, PresentedComplex,
    PresentedMap,
};
use crate::error::{Error, Result};
use crate::groupoid::{effect, orbit_space, FiniteGroupoid};
use crate::matrix::IntSolver;
use crate::simplicial::{orbit_data, SimplicialAction};
use crate::{Int, IntMatrix};
use std::collections::BTreeSet;

/// The three chain complexes of a groupoid and the maps between them:
/// 0 → BS(G) --incl--> S(G₀) --quot--> S(G) → 0 degreewise.
pub struct GroupoidChains {
    pub s: PresentedComplex,
    pub s0: PresentedComplex,
    pub bs: PresentedComplex,
    /// incl[n]: basis of BS_n as columns inside S(G₀)_n.
    pub incl: Vec<IntMatrix>,
    /// quot[n]: S(G₀)_n → S(G)_n.
    pub quot: Vec<IntMatrix>,
}

fn chains_from_quotient(
    s0: PresentedComplex,
    quot: Vec<IntMatrix>,
    s_d: Vec<IntMatrix>,
) -> GroupoidChains {
    let len = s0.groups.len();
    let s_groups: Vec<Presentation> =
        quot.iter().map(|q| Presentation::free(q.rows())).collect();
    let s = PresentedComplex::new(s_groups, s_d).expect("quotient complex is a complex");
    let mut incl = Vec::with_capacity(len);
    for q in &quot {
        incl.push(q.kernel());
    }
    let mut bs_groups = Vec::with_capacity(len);
    let mut bs_d = Vec::with_capacity(len);
    for n in 0..len {
        bs_groups.push(Presentation::free(incl[n].cols()));
        if n == 0 {
            bs_d.push(IntMatrix::zeros(0, incl[0].cols()));
        } else {
            let image = s0.d[n].mul(&incl[n]);
            let y = IntSolver::new(&incl[n - 1])
                .solve_matrix(&image)
                .expect("the boundary preserves the balanced subcomplex");
            bs_d.push(y);
        }
    }
    let bs = PresentedComplex::new(bs_groups, bs_d).expect("balanced complex is a complex");
    GroupoidChains { s, s0, bs, incl, quot }
}

/// Discrete tier: S_n(G) is free on the orbit blocks for every n ≤ top,
/// with boundary 0 in odd degrees and the identity in positive even
/// degrees; S(G₀) is the same shape on the objects.
pub fn discrete_groupoid_chains(g: &FiniteGroupoid, top: usize) -> GroupoidChains {
    let orbits = orbit_space(g);
    let m = g.n_objects();
    let r = orbits.n_blocks();
    // End the internal complex at an even degree so the identity boundary
    // out of the top degree is present and no truncation artifact appears
    // in any requested degree.
    let top = if top % 2 == 1 { top + 1 } else { top };
    let mut s0_d = vec![IntMatrix::zeros(0, m)];
    let mut s_d = vec![IntMatrix::zeros(0, r)];
    for n in 1..=top {
        if n % 2 == 1 {
            s0_d.push(IntMatrix::zeros(m, m));
            s_d.push(IntMatrix::zeros(r, r));
        } else {
            s0_d.push(IntMatrix::identity(m));
            s_d.push(IntMatrix::identity(r));
        }
    }
    let s0 = PresentedComplex::new(
        (0..=top).map(|_| Presentation::free(m)).collect(),
        s0_d,
    )
    .expect("discrete object complex is a complex");
    let mut q = IntMatrix::zeros(r, m);
    for obj in 0..m {
        q.set(orbits.block_of[obj], obj, Int::from(1));
    }
    let quot = vec![q; top + 1];
    chains_from_quotient(s0, quot, s_d)
}

/// Simplicial action tier: S(G) is the coinvariant complex on orbit
/// representatives; S(G₀) is the chain complex of the complex itself.
pub fn action_groupoid_chains(sa: &SimplicialAction) -> GroupoidChains {
    let od = orbit_data(sa);
    let s0 = sa.complex.chain_complex();
    let len = s0.groups.len();
    let mut quot = Vec::with_capacity(len);
    let mut s_d = Vec::with_capacity(len);
    for n in 0..len {
        let cols = sa.complex.n_simplices(n);
        let rows = od.reps.get(n).map_or(0, |r| r.len());
        let mut q = IntMatrix::zeros(rows, cols);
        for j in 0..cols {
            let (rep, ref sign) = od.to_rep[n][j];
            q.set(rep, j, sign.clone());
        }
        quot.push(q);
        if n == 0 {
            s_d.push(IntMatrix::zeros(0, rows));
        } else {
            let prev_rows = od.reps[n - 1].len();
            let mut d = IntMatrix::zeros(prev_rows, rows);
            for (col, &rep_simplex) in od.reps[n].iter().enumerate() {
                let s = &sa.complex.simplices[n][rep_simplex];
                for i in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(i);
                    let fi = sa.complex.simplex_index(n - 1, &face).expect("closed");
                    let (rep, ref sign) = od.to_rep[n - 1][fi];
                    let term = if i % 2 == 0 { sign.clone() } else { -sign.clone() };
                    d.set(rep, col, d.get(rep, col).clone() + term);
                }
            }
            s_d.push(d);
        }
    }
    chains_from_quotient(s0, quot, s_d)
}

pub fn groupoid_homology(
    ch: &GroupoidChains,
    n: usize,
    coeff: &Presentation,
) -> AbelianGroupDescriptor {
    ch.s.tensor(coeff).homology(n).descriptor()
}

pub fn balanced_homology(
    ch: &GroupoidChains,
    n: usize,
    coeff: &Presentation,
) -> AbelianGroupDescriptor {
    ch.bs.tensor(coeff).homology(n).descriptor()
}

/// Degreewise exactness and splitting of 0 → BS → S(G₀) → S(G) → 0:
/// the inclusion has trivial kernel, the quotient splits over Z, the
/// composite vanishes, and the kernel of the quotient equals the image of
/// the inclusion as a lattice.
pub fn ses_split_check(ch: &GroupoidChains) -> Result<Vec<String>> {
    let mut report = Vec::new();
    for n in 0..ch.s0.groups.len() {
        let q = &ch.quot[n];
        let i = &ch.incl[n];
        if i.kernel().cols() != 0 {
            return Err(Error::NotExactInput(format!("inclusion not injective in degree {n}")));
        }
        if !q.mul(i).is_zero() {
            return Err(Error::NotExactInput(format!("composite nonzero in degree {n}")));
        }
        let ident = IntMatrix::identity(q.rows());
        let Some(_section) = IntSolver::new(q).solve_matrix(&ident) else {
            return Err(Error::NotExactInput(format!(
                "quotient does not split over Z in degree {n}"
            )));
        };
        // ker q ⊆ im i (the reverse is the composite check).
        let ker = q.kernel();
        if IntSolver::new(i).solve_matrix(&ker).is_none() {
            return Err(Error::NotExactInput(format!(
                "kernel of the quotient exceeds the balanced subcomplex in degree {n}"
            )));
        }
        report.push(format!(
            "degree {n}: 0 -> Z^{} -> Z^{} -> Z^{} -> 0 exact and split",
            i.cols(),
            q.cols(),
            q.rows()
        ));
    }
    Ok(report)
}

/// Exactness of the long homology sequence of a degreewise short exact
/// sequence of complexes 0 → A --i--> B --p--> C → 0. One report line per
/// verified joint.
pub fn long_exact_check(i: &ChainMap, p: &ChainMap) -> Result<Vec<String>> {
    i.validate().map_err(|e| Error::NotExactInput(e.to_string()))?;
    p.validate().map_err(|e| Error::NotExactInput(e.to_string()))?;
    let (a, b, c) = (i.source, i.target, p.target);
    let len = a.groups.len();
    let ha: Vec<Presentation> = (0..len).map(|n| a.homology(n).presentation()).collect();
    let hb: Vec<Presentation> = (0..len).map(|n| b.homology(n).presentation()).collect();
    let hc: Vec<Presentation> = (0..len).map(|n| c.homology(n).presentation()).collect();
    let istar: Vec<IntMatrix> = (0..len).map(|n| i.induced(n)).collect();
    let pstar: Vec<IntMatrix> = (0..len).map(|n| p.induced(n)).collect();
    let mut del = Vec::with_capacity(len);
    for n in 0..len {
        del.push(connecting_map(i, p, n)?);
    }
    let mut report = Vec::new();
    let zero = Presentation::free(0);
    for n in (0..len).rev() {
        let iu = PresentedMap { source: &ha[n], target: &hb[n], matrix: istar[n].clone() };
        let pv = PresentedMap { source: &hb[n], target: &hc[n], matrix: pstar[n].clone() };
        // Joint at H_n(A): previous map is the connecting from H_{n+1}(C)
        // (zero above the top).
        let prev: PresentedMap = if n + 1 < len {
            PresentedMap { source: &hc[n + 1], target: &ha[n], matrix: del[n + 1].clone() }
        } else {
            PresentedMap {
                source: &zero,
                target: &ha[n],
                matrix: IntMatrix::zeros(ha[n].gens, 0),
            }
        };
        if !exact_at(&prev, &iu) {
            return Err(Error::NotExactInput(format!("sequence not exact at H_{n}(A)")));
        }
        report.push(format!("exact at H_{n}(A)"));
        if !exact_at(&iu, &pv) {
            return Err(Error::NotExactInput(format!("sequence not exact at H_{n}(B)")));
        }
        report.push(format!("exact at H_{n}(B)"));
        // Joint at H_n(C): the following map is the connecting (or zero).
        let next: PresentedMap = if n >= 1 {
            PresentedMap { source: &hc[n], target: &ha[n - 1], matrix: del[n].clone() }
        } else {
            PresentedMap {
                source: &hc[0],
                target: &zero,
                matrix: IntMatrix::zeros(0, hc[0].gens),
            }
        };
        if !exact_at(&pv, &next) {
            return Err(Error::NotExactInput(format!("sequence not exact at H_{n}(C)")));
        }
        report.push(format!("exact at H_{n}(C)"));
    }
    Ok(report)
}

/// The long exact sequence of the balanced short exact sequence.
pub fn balanced_les_check(ch: &GroupoidChains) -> Result<Vec<String>> {
    let i = ChainMap { source: &ch.bs, target: &ch.s0, f: ch.incl.clone() };
    let p = ChainMap { source: &ch.s0, target: &ch.s, f: ch.quot.clone() };
    long_exact_check(&i, &p)
}

fn pad_complex(c: &PresentedComplex, len: usize) -> PresentedComplex {
    let mut groups = c.groups.clone();
    let mut d = c.d.clone();
    while groups.len() < len {
        let prev = groups.last().map_or(0, |g| g.gens);
        d.push(IntMatrix::zeros(prev, 0));
        groups.push(Presentation::free(0));
    }
    PresentedComplex::new(groups, d).expect("padding preserves the complex")
}

fn pad_maps(f: &mut Vec<IntMatrix>, rows_cols: impl Fn(usize) -> (usize, usize), len: usize) {
    while f.len() < len {
        let (r, c) = rows_cols(f.len());
        f.push(IntMatrix::zeros(r, c));
    }
}

/// Inclusion of the coinvariant chains of a restricted action into those of
/// the ambient action, per degree, on orbit-representative bases.
fn orbit_inclusion_maps(
    sub: &SimplicialAction,
    old_vertices: &[usize],
    ambient: &SimplicialAction,
    len: usize,
) -> Vec<IntMatrix> {
    let od_sub = orbit_data(sub);
    let od_amb = orbit_data(ambient);
    let mut out = Vec::with_capacity(len);
    for n in 0..len {
        let cols = od_sub.reps.get(n).map_or(0, |r| r.len());
        let rows = od_amb.reps.get(n).map_or(0, |r| r.len());
        let mut m = IntMatrix::zeros(rows, cols);
        for col in 0..cols {
            let s = &sub.complex.simplices[n][od_sub.reps[n][col]];
            let lifted: Vec<usize> = {
                let mut v: Vec<usize> = s.iter().map(|&x| old_vertices[x]).collect();
                v.sort();
                v
            };
            let j = ambient.complex.simplex_index(n, &lifted).expect("subcomplex simplex");
            let (rep, ref sign) = od_amb.to_rep[n][j];
            // Orientation transfer: the sub representative is ascending in
            // sub indices; old_vertices is monotone, so the lift stays
            // ascending and the only sign is the ambient carrier's.
            m.set(rep, col, sign.clone());
        }
        out.push(m);
    }
    out
}

/// Mayer–Vietoris for invariant full subcomplexes U, V with every simplex
/// inside U or inside V: degreewise exactness of
/// 0 → S(G|_{U∩V}) → S(G|_U) ⊕ S(G|_V) → S(G) → 0 and exactness of the
/// induced long homology sequence.
pub fn mayer_vietoris_check(
    sa: &SimplicialAction,
    u: &BTreeSet<usize>,
    v: &BTreeSet<usize>,
) -> Result<Vec<String>> {
    for level in &sa.complex.simplices {
        for s in level {
            let in_u = s.iter().all(|x| u.contains(x));
            let in_v = s.iter().all(|x| v.contains(x));
            if !in_u && !in_v {
                return Err(Error::NotCovering(
                    "a simplex lies in neither subcomplex".into(),
                ));
            }
        }
    }
    let sa_u = sa.restrict(u)?;
    let sa_v = sa.restrict(v)?;
    let inter: BTreeSet<usize> = u.intersection(v).copied().collect();
    let sa_i = sa.restrict(&inter)?;
    let old_u: Vec<usize> = u.iter().copied().collect();
    let old_v: Vec<usize> = v.iter().copied().collect();
    let old_i: Vec<usize> = inter.iter().copied().collect();

    let len = sa.complex.simplices.len().max(1);
    let ch = action_groupoid_chains(sa);
    let ch_u = pad_complex(&action_groupoid_chains(&sa_u).s, len);
    let ch_v = pad_complex(&action_groupoid_chains(&sa_v).s, len);
    let ch_i = pad_complex(&action_groupoid_chains(&sa_i).s, len);
    let s = pad_complex(&ch.s, len);

    let mut iu = orbit_inclusion_maps(&sa_u, &old_u, sa, len);
    let mut iv = orbit_inclusion_maps(&sa_v, &old_v, sa, len);
    // Intersection into U and into V, composed as index maps through K.
    let to_u: std::collections::BTreeMap<usize, usize> =
        old_u.iter().enumerate().map(|(n, &o)| (o, n)).collect();
    let to_v: std::collections::BTreeMap<usize, usize> =
        old_v.iter().enumerate().map(|(n, &o)| (o, n)).collect();
    let iu_old: Vec<usize> = old_i.iter().map(|o| to_u[o]).collect();
    let iv_old: Vec<usize> = old_i.iter().map(|o| to_v[o]).collect();
    let mut j_u = orbit_inclusion_maps(&sa_i, &iu_old, &sa_u, len);
    let mut j_v = orbit_inclusion_maps(&sa_i, &iv_old, &sa_v, len);
    pad_maps(&mut iu, |n| (s.groups[n].gens, ch_u.groups[n].gens), len);
    pad_maps(&mut iv, |n| (s.groups[n].gens, ch_v.groups[n].gens), len);
    pad_maps(&mut j_u, |n| (ch_u.groups[n].gens, ch_i.groups[n].gens), len);
    pad_maps(&mut j_v, |n| (ch_v.groups[n].gens, ch_i.groups[n].gens), len);

    // Direct sum complex S(U) ⊕ S(V).
    let sum_groups: Vec<Presentation> = (0..len)
        .map(|n| Presentation::free(ch_u.groups[n].gens + ch_v.groups[n].gens))
        .collect();
    let sum_d: Vec<IntMatrix> = (0..len)
        .map(|n| {
            if n == 0 {
                IntMatrix::zeros(0, sum_groups[0].gens)
            } else {
                ch_u.d[n].direct_sum(&ch_v.d[n])
            }
        })
        .collect();
    let sum = PresentedComplex::new(sum_groups, sum_d).expect("direct sum complex");

    // First map a ↦ (a, a); second map (x, y) ↦ x − y (pushed into S(K)).
    let first: Vec<IntMatrix> = (0..len).map(|n| j_u[n].vstack(&j_v[n])).collect();
    let second: Vec<IntMatrix> = (0..len).map(|n| iu[n].hstack(&iv[n].neg())).collect();

    let mut report = Vec::new();
    for n in 0..len {
        if first[n].kernel().cols() != 0 {
            return Err(Error::NotExactInput(format!("MV first map not injective, degree {n}")));
        }
        if !second[n].mul(&first[n]).is_zero() {
            return Err(Error::NotExactInput(format!("MV composite nonzero, degree {n}")));
        }
        let ident = IntMatrix::identity(second[n].rows());
        if IntSolver::new(&second[n]).solve_matrix(&ident).is_none() {
            return Err(Error::NotExactInput(format!(
                "MV second map not surjective, degree {n}"
            )));
        }
        let ker = second[n].kernel();
        if IntSolver::new(&first[n]).solve_matrix(&ker).is_none() {
            return Err(Error::NotExactInput(format!(
                "MV kernel exceeds the intersection image, degree {n}"
            )));
        }
        report.push(format!("degree {n}: MV short sequence exact"));
    }
    let imap = ChainMap { source: &ch_i, target: &sum, f: first };
    let pmap = ChainMap { source: &sum, target: &s, f: second };
    report.extend(long_exact_check(&imap, &pmap)?);
    Ok(report)
}

/// H_n(G) ≅ H_n(Eff(G)) in the discrete tier: the effect functor is the
/// identity on objects and preserves the orbit relation, so the induced
/// chain map is the identity on orbit bases; assert it is an isomorphism.
pub fn effect_homology_check(g: &FiniteGroupoid, top: usize) -> Result<Vec<String>> {
    let (eff, _) = effect(g);
    let ch_g = discrete_groupoid_chains(g, top);
    let ch_e = discrete_groupoid_chains(&eff, top);
    let r = orbit_space(g).n_blocks();
    if orbit_space(&eff).n_blocks() != r {
        return Err(Error::InvalidInput("effect changed the orbit count".into()));
    }
    let f: Vec<IntMatrix> =
        (0..ch_g.s.groups.len()).map(|_| IntMatrix::identity(r)).collect();
    let cm = ChainMap { source: &ch_g.s, target: &ch_e.s, f };
    cm.validate()?;
    let mut report = Vec::new();
    for n in 0..=top {
        if !cm.induced_is_iso(n) {
            return Err(Error::InvalidInput(format!("effect map not iso on H_{n}")));
        }
        report.push(format!(
            "H_{n}: {} = {}",
            ch_g.s.homology(n).descriptor(),
            ch_e.s.homology(n).descriptor()
        ));
    }
    Ok(report)
}

/// The long exact homology sequence of a coefficient sequence
/// 0 → A --f--> B --g--> C → 0 tensored against a free groupoid complex.
pub fn coefficient_les_check(
    s: &PresentedComplex,
    a: &Presentation,
    b: &Presentation,
    c: &Presentation,
    f: &IntMatrix,
    g: &IntMatrix,
) -> Result<Vec<String>> {
    let mf = PresentedMap { source: a, target: b, matrix: f.clone() };
    let mg = PresentedMap { source: b, target: c, matrix: g.clone() };
    if !mf.is_well_defined() || !mg.is_well_defined() {
        return Err(Error::NotExactInput("coefficient maps are not well defined".into()));
    }
    if !mf.is_injective() || !mg.is_surjective() || !exact_at(&mf, &mg) {
        return Err(Error::NotExactInput("coefficient sequence is not short exact".into()));
    }
    let sa = s.tensor(a);
    let sb = s.tensor(b);
    let sc = s.tensor(c);
    let len = s.groups.len();
    let fi: Vec<IntMatrix> =
        (0..len).map(|n| IntMatrix::identity(s.groups[n].gens).kronecker(f)).collect();
    let gi: Vec<IntMatrix> =
        (0..len).map(|n| IntMatrix::identity(s.groups[n].gens).kronecker(g)).collect();
    let imap = ChainMap { source: &sa, target: &sb, f: fi };
    let pmap = ChainMap { source: &sb, target: &sc, f: gi };
    long_exact_check(&imap, &pmap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bibundle::{morita_equivalent, MoritaVerdict};
    use crate::groupoid::{action_groupoid, cyclic, pair, point, FiniteGroup};
    use crate::simplicial::{circle_complex, quotient_complex, rot_action};

    fn z() -> Presentation {
        Presentation::free(1)
    }

    #[test]
    fn discrete_cyclic5_homology() {
        let ch = discrete_groupoid_chains(&cyclic(5), 3);
        assert_eq!(groupoid_homology(&ch, 0, &z()), AbelianGroupDescriptor::free(1));
        for n in 1..=3 {
            assert!(groupoid_homology(&ch, n, &z()).is_trivial());
        }
    }

    #[test]
    fn discrete_h0_is_free_on_orbits() {
        for (g, blocks) in [
            (pair(3), 1),
            (cyclic(4), 1),
            (crate::groupoid::disjoint_union(&pair(2), &cyclic(3)), 2),
        ] {
            let ch = discrete_groupoid_chains(&g, 2);
            assert_eq!(
                groupoid_homology(&ch, 0, &z()),
                AbelianGroupDescriptor::free(blocks)
            );
        }
    }

    #[test]
    fn rot33_homology_is_circle() {
        let sa = rot_action(3, 3).unwrap();
        let ch = action_groupoid_chains(&sa);
        assert_eq!(groupoid_homology(&ch, 0, &z()), AbelianGroupDescriptor::free(1));
        assert_eq!(groupoid_homology(&ch, 1, &z()), AbelianGroupDescriptor::free(1));
    }

    #[test]
    fn trivial_action_reproduces_simplicial_homology_with_zero_bs() {
        let sa = SimplicialAction::trivial(circle_complex(4));
        let ch = action_groupoid_chains(&sa);
        assert_eq!(groupoid_homology(&ch, 1, &z()), AbelianGroupDescriptor::free(1));
        for n in 0..2 {
            assert!(balanced_homology(&ch, n, &z()).is_trivial());
            assert_eq!(ch.bs.groups[n].gens, 0);
        }
    }

    #[test]
    fn balanced_h0_of_rot_is_cyclic() {
        for k in [2usize, 3, 4] {
            let sa = rot_action(k, 3).unwrap();
            let ch = action_groupoid_chains(&sa);
            assert_eq!(
                balanced_homology(&ch, 0, &z()),
                AbelianGroupDescriptor::cyclic(k as u64),
                "k = {k}"
            );
        }
    }

    #[test]
    fn balanced_pair3_consistent() {
        let ch = discrete_groupoid_chains(&pair(3), 3);
        assert_eq!(balanced_homology(&ch, 0, &z()), AbelianGroupDescriptor::free(2));
        assert!(groupoid_homology(&ch, 1, &z()).is_trivial());
    }

    #[test]
    fn ses_split_and_les_on_instances() {
        let ch = discrete_groupoid_chains(&pair(3), 3);
        ses_split_check(&ch).unwrap();
        balanced_les_check(&ch).unwrap();
        let ch = discrete_groupoid_chains(&cyclic(4), 3);
        ses_split_check(&ch).unwrap();
        balanced_les_check(&ch).unwrap();
        for (k, m) in [(2usize, 3usize), (3, 3)] {
            let ch = action_groupoid_chains(&rot_action(k, m).unwrap());
            ses_split_check(&ch).unwrap();
            balanced_les_check(&ch).unwrap();
        }
    }

    #[test]
    fn quotient_complex_oracle_agrees() {
        for (k, m) in [(2usize, 3usize), (3, 3), (4, 3), (2, 4)] {
            let sa = rot_action(k, m).unwrap();
            let ch = action_groupoid_chains(&sa);
            let q = quotient_complex(&sa).unwrap().chain_complex();
            for n in 0..2 {
                assert_eq!(
                    groupoid_homology(&ch, n, &z()),
                    q.homology(n).descriptor(),
                    "k={k} m={m} n={n}"
                );
            }
        }
    }

    #[test]
    fn morita_equivalent_groupoids_have_equal_homology() {
        let z2 = FiniteGroup::cyclic(2);
        let set = vec!["1".to_string(), "2".to_string()];
        let swap = action_groupoid(&z2, &set, &|x, e| if e == 0 { x } else { 1 - x }).unwrap();
        let pairs: Vec<(FiniteGroupoid, FiniteGroupoid)> = vec![
            (pair(3), point()),
            (swap, pair(2)),
            (crate::groupoid::disjoint_union(&pair(2), &pair(2)), crate::groupoid::discrete_set(2)),
        ];
        for (g, h) in pairs {
            assert!(matches!(
                morita_equivalent(&g, &h, 1_000_000).unwrap(),
                MoritaVerdict::Equivalent { .. }
            ));
            let cg = discrete_groupoid_chains(&g, 3);
            let chh = discrete_groupoid_chains(&h, 3);
            for n in 0..=3 {
                assert_eq!(
                    groupoid_homology(&cg, n, &z()),
                    groupoid_homology(&chh, n, &z())
                );
            }
        }
    }

    #[test]
    fn effect_checks() {
        effect_homology_check(&cyclic(4), 3).unwrap();
        effect_homology_check(&pair(2), 3).unwrap();
        let z2 = FiniteGroup::cyclic(2);
        let set = vec!["1".to_string(), "2".to_string()];
        let swap = action_groupoid(&z2, &set, &|x, e| if e == 0 { x } else { 1 - x }).unwrap();
        effect_homology_check(&swap, 3).unwrap();
    }

    #[test]
    fn mayer_vietoris_trivial_action_on_c4() {
        let sa = SimplicialAction::trivial(circle_complex(4));
        let u: BTreeSet<usize> = [0, 1, 2].into();
        let v: BTreeSet<usize> = [2, 3, 0].into();
        let report = mayer_vietoris_check(&sa, &u, &v).unwrap();
        assert!(report.iter().any(|l| l.contains("exact")));
    }

    #[test]
    fn mayer_vietoris_rotation_on_c8() {
        // Z/2 rotating C8 by 4; U, V are invariant unions of arcs.
        let sa = rot_action(2, 4).unwrap();
        let u: BTreeSet<usize> = [0, 1, 2, 4, 5, 6].into();
        let v: BTreeSet<usize> = [2, 3, 4, 6, 7, 0].into();
        mayer_vietoris_check(&sa, &u, &v).unwrap();
    }

    #[test]
    fn mayer_vietoris_u_equals_k() {
        let sa = rot_action(2, 3).unwrap();
        let all: BTreeSet<usize> = (0..6).collect();
        let v: BTreeSet<usize> = [0, 2, 3, 5].into();
        mayer_vietoris_check(&sa, &all, &v).unwrap();
    }

    #[test]
    fn mayer_vietoris_disjoint_summands() {
        // Two disjoint edges, trivial group: MV with the two summands.
        let k = crate::simplicial::SimplicialComplex::new(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            vec![[0, 1].into(), [2, 3].into()],
        )
        .unwrap();
        let sa = SimplicialAction::trivial(k);
        let u: BTreeSet<usize> = [0, 1].into();
        let v: BTreeSet<usize> = [2, 3].into();
        mayer_vietoris_check(&sa, &u, &v).unwrap();
    }

    #[test]
    fn mayer_vietoris_rejects_non_cover() {
        let sa = SimplicialAction::trivial(circle_complex(4));
        let u: BTreeSet<usize> = [0, 1].into();
        let v: BTreeSet<usize> = [2, 3].into();
        assert!(matches!(
            mayer_vietoris_check(&sa, &u, &v),
            Err(Error::NotCovering(_))
        ));
    }

    #[test]
    fn coefficient_les_mod2_on_rot23() {
        let sa = rot_action(2, 3).unwrap();
        let ch = action_groupoid_chains(&sa);
        let a = Presentation::free(1);
        let b = Presentation::free(1);
        let c = Presentation::cyclic(2);
        let f = IntMatrix::from_rows(vec![vec![Int::from(2)]]);
        let g = IntMatrix::from_rows(vec![vec![Int::from(1)]]);
        coefficient_les_check(&ch.s, &a, &b, &c, &f, &g).unwrap();
        // Z/2 homology is that of the quotient circle.
        let two = Presentation::cyclic(2);
        assert_eq!(groupoid_homology(&ch, 0, &two), AbelianGroupDescriptor::cyclic(2));
        assert_eq!(groupoid_homology(&ch, 1, &two), AbelianGroupDescriptor::cyclic(2));
    }

    #[test]
    fn coefficient_les_split_sequence() {
        let sa = rot_action(2, 3).unwrap();
        let ch = action_groupoid_chains(&sa);
        let a = Presentation::free(1);
        let b = Presentation::free(2);
        let c = Presentation::free(1);
        let f = IntMatrix::from_cols(2, vec![vec![Int::from(1), Int::from(0)]]);
        let g = IntMatrix::from_rows(vec![vec![Int::from(0), Int::from(1)]]);
        coefficient_les_check(&ch.s, &a, &b, &c, &f, &g).unwrap();
    }

    #[test]
    fn coefficient_les_rejects_non_exact() {
        let sa = rot_action(2, 3).unwrap();
        let ch = action_groupoid_chains(&sa);
        let a = Presentation::free(1);
        let b = Presentation::free(1);
        let c = Presentation::cyclic(2);
        let f = IntMatrix::from_rows(vec![vec![Int::from(4)]]);
        let g = IntMatrix::from_rows(vec![vec![Int::from(1)]]);
        assert!(matches!(
            coefficient_les_check(&ch.s, &a, &b, &c, &f, &g),
            Err(Error::NotExactInput(_))
        ));
    }
}
