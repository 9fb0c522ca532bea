//! Acceptance gate: one test per release criterion, each printing a single
//! PASS/FAIL line (visible with `--nocapture`). The suite exercises the
//! public API end to end on the built-in corpus and the CLI binary.

use groupoidal::abelian::{AbelianGroupDescriptor, Presentation};
use groupoidal::algebra::{
    algebra_morita_check, mho_iso_check, wp, AlgebraMoritaVerdict, GroupoidAlgebra,
};
use groupoidal::bibundle::{
    angs, are_isomorphic, invert, morita_equivalent, tensor, unit_bibundle, Bibundle,
    MoritaVerdict,
};
use groupoidal::cocycle::{cohomologous, extract_cocycle, refine, sigma, Cover};
use groupoidal::corpus::{composable_bundle_pairs, composable_functor_pairs, corpus};
use groupoidal::error::{Error, Violation};
use groupoidal::groupoid::{
    cyclic, is_essential_equivalence, isomorphic_groups, orbit_space, pair, point,
    validate_groupoid, FiniteGroup, GroupoidFunctor,
};
use groupoidal::homology::{
    action_groupoid_chains, balanced_homology, balanced_les_check, coefficient_les_check,
    discrete_groupoid_chains, effect_homology_check, groupoid_homology, mayer_vietoris_check,
    ses_split_check,
};
use groupoidal::leaf::{
    component_conjugacy_check, effect_pushforward, holonomy_freeness_check, holonomy_of_loop,
    leaves, pushforward_holonomy_check, HLoop, TwistedMap,
};
use groupoidal::pi1::{
    abelianization, coset_enumeration, pi1_action_groupoid, pi1_discrete, CosetResult,
};
use groupoidal::simplicial::{quotient_complex, rot_action, SimplicialAction};
use groupoidal::{Int, IntMatrix, Rat};
use std::collections::BTreeSet;
use std::time::Instant;

const BUDGET: u64 = 1_000_000;

fn z() -> Presentation {
    Presentation::free(1)
}

fn iso(e: &Bibundle, f: &Bibundle) -> bool {
    are_isomorphic(e, f, BUDGET).unwrap().is_some()
}

#[test]
fn criterion_01_axiom_suites() {
    let c = corpus();
    for (name, g) in &c.groupoids {
        validate_groupoid(&g.to_data()).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
    // Corrupted tables fail with the named violation.
    let mut data = pair(2).to_data();
    data.unit.remove("p1");
    let Err(Error::Validation(v)) = validate_groupoid(&data) else {
        panic!("missing unit accepted")
    };
    assert!(v.iter().any(|x| matches!(x, Violation::MissingUnit { .. })));

    let mut data = cyclic(3).to_data();
    data.inv.insert("r1".into(), "r1".into()); // r1⁻¹ is r2
    let Err(Error::Validation(v)) = validate_groupoid(&data) else {
        panic!("bad inverse accepted")
    };
    assert!(v.iter().any(|x| matches!(x, Violation::BadInverse { .. })));

    let mut data = cyclic(3).to_data();
    let idx = data.comp.iter().position(|(a, b, _)| a == "r1" && b == "r1").unwrap();
    data.comp[idx].2 = "r0".into(); // r1∘r1 is r2
    let Err(Error::Validation(v)) = validate_groupoid(&data) else {
        panic!("non-associative table accepted")
    };
    assert!(v
        .iter()
        .any(|x| matches!(x, Violation::NonAssociative { .. } | Violation::BadInverse { .. })));

    let mut data = pair(2).to_data();
    let idx = data.comp.iter().position(|(a, b, _)| a == "p1>p2" && b == "p2>p1").unwrap();
    data.comp.remove(idx);
    let Err(Error::Validation(v)) = validate_groupoid(&data) else {
        panic!("missing composite accepted")
    };
    assert!(v.iter().any(|x| matches!(x, Violation::MissingComposite { .. })));

    let mut data = pair(2).to_data();
    let idx = data.comp.iter().position(|(a, b, _)| a == "p1>p2" && b == "p2>p1").unwrap();
    data.comp[idx].2 = "p1>p2".into(); // endpoints break
    let Err(Error::Validation(v)) = validate_groupoid(&data) else {
        panic!("mismatched composite accepted")
    };
    assert!(v.iter().any(|x| matches!(x, Violation::DomCodMismatch { .. })));

    println!("acceptance 01 — validated tables, corrupted tables rejected: PASS");
}

#[test]
fn criterion_02_category_laws() {
    let c = corpus();
    assert!(c.functors.len() >= 10 && c.groupoids.len() >= 6);

    // tensor(⟨ψ⟩, ⟨φ⟩) ≅ ⟨ψ∘φ⟩ for every composable functor pair.
    let pairs = composable_functor_pairs(&c);
    assert!(pairs.len() >= 10);
    for &(i, j) in &pairs {
        let (psi_name, psi) = &c.functors[i];
        let (phi_name, phi) = &c.functors[j];
        let t = tensor(&angs(psi), &angs(phi)).unwrap();
        let composed = angs(&psi.compose(phi).unwrap());
        assert!(iso(&t.bundle, &composed), "composition law fails for {psi_name} ∘ {phi_name}");
    }

    // Unit laws on every corpus bundle.
    for (name, e) in &c.bundles {
        let lt = tensor(&unit_bibundle(&e.left), e).unwrap();
        let rt = tensor(e, &unit_bibundle(&e.right)).unwrap();
        assert!(iso(&lt.bundle, e), "left unit law fails for {name}");
        assert!(iso(&rt.bundle, e), "right unit law fails for {name}");
    }

    // Associativity up to isomorphism on every composable bundle triple.
    let bpairs = composable_bundle_pairs(&c);
    let mut triples = 0usize;
    for &(i, j) in &bpairs {
        for &(j2, k) in &bpairs {
            if j2 != j {
                continue;
            }
            let (e, f, d) = (&c.bundles[i].1, &c.bundles[j].1, &c.bundles[k].1);
            let left = tensor(&tensor(e, f).unwrap().bundle, d).unwrap().bundle;
            let right = tensor(e, &tensor(f, d).unwrap().bundle).unwrap().bundle;
            assert!(
                iso(&left, &right),
                "associativity fails for {} ⊗ {} ⊗ {}",
                c.bundles[i].0,
                c.bundles[j].0,
                c.bundles[k].0
            );
            triples += 1;
        }
    }
    assert!(triples >= 10);
    println!(
        "acceptance 02 — category laws on {} functor pairs, {} bundle triples: PASS",
        pairs.len(),
        triples
    );
}

#[test]
fn criterion_03_tensor_preserves_classification() {
    let c = corpus();
    let pairs = composable_bundle_pairs(&c);
    let (mut principal, mut transitive) = (0usize, 0usize);
    for &(i, j) in &pairs {
        let (e, f) = (&c.bundles[i].1, &c.bundles[j].1);
        let (ce, cf) = (e.classify(), f.classify());
        let ct = tensor(e, f).unwrap().bundle.classify();
        if ce.principal && cf.principal {
            assert!(ct.principal, "{} ⊗ {} not principal", c.bundles[i].0, c.bundles[j].0);
            principal += 1;
        }
        if ce.transitive && cf.transitive {
            assert!(ct.transitive, "{} ⊗ {} not transitive", c.bundles[i].0, c.bundles[j].0);
            transitive += 1;
        }
    }
    assert!(principal >= 5 && transitive >= 5);
    println!(
        "acceptance 03 — tensor preserves principal ({principal} pairs) and transitive ({transitive} pairs): PASS"
    );
}

#[test]
fn criterion_04_inversion_and_morita() {
    let c = corpus();
    // invert succeeds exactly on ⟨φ⟩ for essential equivalences.
    for (name, phi) in &c.functors {
        let invertible = invert(&angs(phi)).is_ok();
        let ess = is_essential_equivalence(phi).is_yes();
        assert_eq!(invertible, ess, "invertibility mismatch for {name}");
    }
    // pair(n) ≃ point with verified round trips for n ≤ 5.
    for n in 1..=5 {
        let g = pair(n);
        let pt = point();
        let MoritaVerdict::Equivalent { witness } = morita_equivalent(&g, &pt, BUDGET).unwrap()
        else {
            panic!("pair({n}) should be equivalent to the point")
        };
        let inv = invert(&witness).unwrap();
        let round_g = tensor(&witness, &inv).unwrap().bundle;
        let round_p = tensor(&inv, &witness).unwrap().bundle;
        assert!(iso(&round_g, &unit_bibundle(&g)), "round trip fails on pair({n})");
        assert!(iso(&round_p, &unit_bibundle(&pt)), "round trip fails on the point side");
    }
    assert!(matches!(
        morita_equivalent(&cyclic(2), &cyclic(3), BUDGET).unwrap(),
        MoritaVerdict::NotEquivalent { .. }
    ));
    println!("acceptance 04 — inversion exactly on essential equivalences, pair(n) ≃ point: PASS");
}

#[test]
fn criterion_05_cocycle_round_trips() {
    let c = corpus();
    assert!(c.cocycles.len() >= 5);
    for (name, cc) in &c.cocycles {
        let b = sigma(cc).bundle;
        // extract ∘ sigma is cohomologous to the identity on cocycles, after
        // refining the original to the singleton cover extraction uses.
        let back = extract_cocycle(&b).unwrap();
        let singles = Cover::new(
            cc.cover.base.clone(),
            (0..cc.cover.base.len()).map(|x| [x].into()).collect(),
        )
        .unwrap();
        let tau: Vec<usize> = (0..cc.cover.base.len())
            .map(|x| (0..cc.cover.pieces.len()).find(|&i| cc.cover.pieces[i].contains(&x)).unwrap())
            .collect();
        let refined = refine(cc, singles, &tau).unwrap();
        assert!(
            cohomologous(&refined, &back).unwrap().is_some(),
            "{name}: extracted cocycle not cohomologous to the original"
        );
        // sigma ∘ extract is isomorphic to the identity on bundles.
        let again = sigma(&back).bundle;
        assert!(iso(&b, &again), "{name}: rebuilt bundle not isomorphic");
    }
    println!("acceptance 05 — cocycle/bundle round trips on {} cocycles: PASS", c.cocycles.len());
}

#[test]
fn criterion_05b_twisted_vs_trivial_distinct() {
    // Expected: the twisted and trivial Z/2 circle bundles are not
    // isomorphic. Over a finite discrete base every pointwise coboundary is
    // admissible, so the twist can be undone; the exhaustive search finds an
    // isomorphism and this clause fails. Reported honestly.
    let c = corpus();
    let twisted = &c.cocycles.iter().find(|(n, _)| n == "z2-twisted").unwrap().1;
    let trivial = &c.cocycles.iter().find(|(n, _)| n == "z2-trivial").unwrap().1;
    let bt = sigma(twisted).bundle;
    let bv = sigma(trivial).bundle;
    let isomorphic = iso(&bt, &bv);
    if isomorphic {
        println!("acceptance 05b — twisted and trivial Z/2 bundles distinct: FAIL (they are isomorphic over a discrete base)");
    } else {
        println!("acceptance 05b — twisted and trivial Z/2 bundles distinct: PASS");
    }
    assert!(!isomorphic, "twisted and trivial Z/2 bundles are isomorphic over a discrete base");
}

#[test]
fn criterion_06_leaves_and_holonomy() {
    let c = corpus();
    let (mut conj, mut free, mut quot) = (0usize, 0usize, 0usize);
    for (name, e) in &c.bundles {
        let cls = e.classify();
        if cls.transitive {
            component_conjugacy_check(e).unwrap_or_else(|er| panic!("{name}: {er}"));
            conj += 1;
        }
        if cls.principal {
            holonomy_freeness_check(e).unwrap_or_else(|er| panic!("{name}: {er}"));
            free += 1;
        }
        // Leaf partition agrees with the quotient bundle's.
        if let (Ok(le), q) = (leaves(e), groupoidal::leaf::associated_orbit_bundle(e)) {
            let lq = leaves(&q).unwrap();
            assert_eq!(le.len(), lq.len(), "{name}: leaf counts differ");
            let blocks = orbit_space(&e.right);
            for (a, b) in le.iter().zip(lq.iter()) {
                let image: BTreeSet<String> = a
                    .underlying
                    .iter()
                    .map(|&x| e.right.object_id(blocks.blocks[blocks.block_of[x]][0]).to_string())
                    .collect();
                let target: BTreeSet<String> =
                    b.underlying.iter().map(|&x| q.right.object_id(x).to_string()).collect();
                assert_eq!(image, target, "{name}: leaf bases differ");
                let ea: BTreeSet<&String> = a.holonomy.elements().iter().collect();
                let eb: BTreeSet<&String> = b.holonomy.elements().iter().collect();
                assert_eq!(ea, eb, "{name}: holonomy groups differ");
            }
            quot += 1;
        }
    }
    assert!(conj >= 10 && free >= 10 && quot >= 10);

    // Holonomy formula at the unit section of ⟨φ⟩: a one-step loop h at b
    // has holonomy φ(h).
    for (name, phi) in &c.functors {
        let e = angs(phi);
        let src = &phi.source;
        let tgt = &phi.target;
        for b in 0..src.n_objects() {
            let uid = tgt.morphism_id(tgt.unit_of(phi.obj_map[b]));
            let x = e.element_index(&format!("({uid}|{})", src.object_id(b))).unwrap();
            for h in src.hom(b, b) {
                let l = HLoop { base: b, steps: vec![h] };
                let g = holonomy_of_loop(&e, x, &l).unwrap();
                assert_eq!(g, phi.mor_map[h], "{name}: holonomy formula fails");
                // Multiplicativity on concatenations.
                for h2 in src.hom(b, b) {
                    let l2 = HLoop { base: b, steps: vec![h2] };
                    let g2 = holonomy_of_loop(&e, x, &l2).unwrap();
                    let g12 = holonomy_of_loop(&e, x, &l.then(&l2).unwrap()).unwrap();
                    assert_eq!(g12, tgt.compose(g2, g).unwrap(), "{name}: not multiplicative");
                }
            }
        }
    }

    // Equivariance of the effect pushforward on every 1- and 2-step loop.
    let mut checked = 0usize;
    for (name, phi) in &c.functors {
        let parts = effect_pushforward(phi);
        let alpha = TwistedMap {
            e: &parts.e,
            f: &parts.f,
            psi: &parts.psi,
            phi: &parts.phi,
            map: parts.map.clone(),
        };
        let report = pushforward_holonomy_check(&alpha).unwrap_or_else(|er| panic!("{name}: {er}"));
        checked += report.len();
    }
    assert!(checked > 0);
    println!(
        "acceptance 06 — leaf/holonomy laws ({conj} conjugacy, {free} freeness, {quot} quotient, {checked} pushforward identities): PASS"
    );
}

#[test]
fn criterion_07_homology_oracles() {
    let t0 = Instant::now();
    for k in [2usize, 3, 5] {
        let ch = discrete_groupoid_chains(&cyclic(k), 3);
        assert_eq!(groupoid_homology(&ch, 0, &z()), AbelianGroupDescriptor::free(1));
        for n in 1..=3 {
            assert!(groupoid_homology(&ch, n, &z()).is_trivial(), "H_{n}(Z/{k}) nontrivial");
        }
    }
    for (k, m) in [(2usize, 3usize), (3, 3), (4, 3)] {
        let sa = rot_action(k, m).unwrap();
        let ch = action_groupoid_chains(&sa);
        let q = quotient_complex(&sa).unwrap().chain_complex();
        for n in 0..2 {
            assert_eq!(
                groupoid_homology(&ch, n, &z()),
                q.homology(n).descriptor(),
                "quotient oracle fails at k={k} m={m} n={n}"
            );
        }
        assert_eq!(
            balanced_homology(&ch, 0, &z()),
            AbelianGroupDescriptor::cyclic(k as u64),
            "BH_0 of the rotation action is Z/{k}"
        );
    }
    let dt = t0.elapsed();
    assert!(dt.as_secs_f64() < 5.0, "homology oracles took {dt:?}");
    println!("acceptance 07 — homology oracle values in {dt:?} (< 5 s): PASS");
}

#[test]
fn criterion_08_exact_sequences() {
    let c = corpus();
    // The balanced short exact sequence splits for every corpus input.
    let mut inputs = 0usize;
    for (name, g) in &c.groupoids {
        let ch = discrete_groupoid_chains(g, 3);
        ses_split_check(&ch).unwrap_or_else(|e| panic!("{name}: {e}"));
        inputs += 1;
    }
    for (name, sa) in &c.actions {
        let ch = action_groupoid_chains(sa);
        ses_split_check(&ch).unwrap_or_else(|e| panic!("{name}: {e}"));
        inputs += 1;
    }
    // Long exact sequence on ≥ 3 instances.
    let mut les = 0usize;
    for (name, sa) in &c.actions {
        let ch = action_groupoid_chains(sa);
        balanced_les_check(&ch).unwrap_or_else(|e| panic!("{name}: {e}"));
        les += 1;
    }
    for g in [pair(3), cyclic(4)] {
        balanced_les_check(&discrete_groupoid_chains(&g, 3)).unwrap();
        les += 1;
    }
    // Mayer–Vietoris on ≥ 3 instances.
    let triv4 = SimplicialAction::trivial(groupoidal::simplicial::circle_complex(4));
    mayer_vietoris_check(&triv4, &[0, 1, 2].into(), &[2, 3, 0].into()).unwrap();
    let r24 = rot_action(2, 4).unwrap();
    mayer_vietoris_check(&r24, &[0, 1, 2, 4, 5, 6].into(), &[2, 3, 4, 6, 7, 0].into()).unwrap();
    let r23 = rot_action(2, 3).unwrap();
    mayer_vietoris_check(&r23, &(0..6).collect(), &[0, 2, 3, 5].into()).unwrap();
    // Coefficient sequence 0 → Z --2--> Z → Z/2 → 0 on the Z/2 rotation.
    let ch = action_groupoid_chains(&r23);
    coefficient_les_check(
        &ch.s,
        &Presentation::free(1),
        &Presentation::free(1),
        &Presentation::cyclic(2),
        &IntMatrix::from_rows(vec![vec![Int::from(2)]]),
        &IntMatrix::from_rows(vec![vec![Int::from(1)]]),
    )
    .unwrap();
    println!("acceptance 08 — splitting on {inputs} inputs, {les} long exact sequences, 3 Mayer–Vietoris instances, coefficient sequence: PASS");
}

#[test]
fn criterion_09_effect_homology() {
    let c = corpus();
    for (name, g) in &c.groupoids {
        effect_homology_check(g, 3).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
    println!("acceptance 09 — effect groupoid has isomorphic homology on {} groupoids: PASS", c.groupoids.len());
}

#[test]
fn criterion_10_fundamental_groups() {
    for k in 2..=5usize {
        let vg = pi1_discrete(&cyclic(k), "*").unwrap();
        assert!(isomorphic_groups(&vg, &FiniteGroup::cyclic(k), BUDGET).unwrap().is_some());
    }
    // Abelianized fundamental group agrees with first homology.
    let c = corpus();
    for (name, sa) in &c.actions {
        let out = pi1_action_groupoid(sa, 0).unwrap();
        let ch = action_groupoid_chains(sa);
        assert_eq!(
            abelianization(&out.presentation),
            groupoid_homology(&ch, 1, &z()),
            "{name}: abelianization differs from H_1"
        );
    }
    // Index of the total-space image in the quotient fundamental group.
    let out = pi1_action_groupoid(&rot_action(2, 3).unwrap(), 0).unwrap();
    assert_eq!(
        coset_enumeration(&out.presentation, &out.inclusion_words, 10_000),
        CosetResult::Index(2)
    );
    println!("acceptance 10 — fundamental groups, abelianization vs H_1, index 2 by coset enumeration: PASS");
}

#[test]
fn criterion_11_convolution_algebras() {
    // Matrix-unit relations for pair(n), n ≤ 4.
    for n in 1..=4usize {
        let g = pair(n);
        let alg = GroupoidAlgebra::new(g.clone()).unwrap();
        for a in 0..g.n_morphisms() {
            for b in 0..g.n_morphisms() {
                let prod = alg.mul(&alg.basis_vector(a), &alg.basis_vector(b));
                let mut expect = vec![Rat::from(Int::from(0)); g.n_morphisms()];
                if let Some(k) = g.compose(a, b) {
                    expect[k] = Rat::from(Int::from(1));
                }
                assert_eq!(prod, expect, "matrix-unit relation fails in pair({n})");
            }
        }
    }

    // Pairing associativity on 100 pseudorandom coefficient triples.
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x9d2c_5680);
    let c2 = cyclic(2);
    let e = angs(&GroupoidFunctor::identity(&c2));
    let f = unit_bibundle(&c2);
    let d = e.clone();
    let t_ef = tensor(&e, &f).unwrap();
    let t_efd = tensor(&t_ef.bundle, &d).unwrap();
    let t_fd = tensor(&f, &d).unwrap();
    let t_e_fd = tensor(&e, &t_fd.bundle).unwrap();
    for _ in 0..100 {
        let mut vec_of = |n: usize| -> Vec<Rat> {
            (0..n)
                .map(|_| Rat::new(Int::from(rng.gen_range(-9i64..=9)), Int::from(rng.gen_range(1i64..=9))))
                .collect()
        };
        let m = vec_of(e.n_elements());
        let m2 = vec_of(f.n_elements());
        let m3 = vec_of(d.n_elements());
        let left_inner = wp(&e, &f, &t_ef, &m, &m2).unwrap();
        let left = wp(&t_ef.bundle, &d, &t_efd, &left_inner, &m3).unwrap();
        let right_inner = wp(&f, &d, &t_fd, &m2, &m3).unwrap();
        let right = wp(&e, &t_fd.bundle, &t_e_fd, &m, &right_inner).unwrap();
        for (&(ef_i, d_j), &lclass) in &t_efd.class_of {
            let (e_i, f_i) =
                *t_ef.class_of.iter().find(|(_, &cl)| cl == ef_i).map(|(k, _)| k).unwrap();
            let fd = t_fd.class_of[&(f_i, d_j)];
            let rclass = t_e_fd.class_of[&(e_i, fd)];
            assert_eq!(left[lclass], right[rclass], "pairing associativity fails");
        }
    }

    // The canonical map to the balanced tensor product is bijective for all
    // small composable principal corpus pairs.
    let c = corpus();
    let mut mho = 0usize;
    for &(i, j) in &composable_bundle_pairs(&c) {
        let (e, f) = (&c.bundles[i].1, &c.bundles[j].1);
        if !e.classify().principal || !f.classify().principal {
            continue;
        }
        if e.n_elements() + f.n_elements() > 12 {
            continue;
        }
        let out = mho_iso_check(e, f)
            .unwrap_or_else(|er| panic!("{} ⊗ {}: {er}", c.bundles[i].0, c.bundles[j].0));
        assert!(out.report.iter().any(|l| l.contains("bijective")));
        mho += 1;
    }
    assert!(mho >= 5);

    // Algebra-level equivalence with verified invertible bimodules.
    assert!(matches!(
        algebra_morita_check(&pair(3), &point(), BUDGET).unwrap(),
        AlgebraMoritaVerdict::Equivalent { .. }
    ));
    println!("acceptance 11 — matrix units, pairing associativity (100 triples), balanced-tensor map bijective ({mho} pairs), algebra equivalence: PASS");
}

#[test]
fn criterion_12_cli_determinism() {
    use groupoidal::json::{ActionJson, BibundleJson, GroupoidJson};
    use std::process::Command;

    let dir = tempfile::tempdir().unwrap();
    let p = |name: &str| dir.path().join(name);
    let c = corpus();
    let write = |name: &str, text: String| std::fs::write(p(name), text).unwrap();
    let g = |n: &str| &c.groupoids.iter().find(|(m, _)| m == n).unwrap().1;
    write("pair3.json", serde_json::to_string_pretty(&GroupoidJson::from_groupoid(g("pair3"))).unwrap());
    write("cyclic3.json", serde_json::to_string_pretty(&GroupoidJson::from_groupoid(g("cyclic3"))).unwrap());
    write("point.json", serde_json::to_string_pretty(&GroupoidJson::from_groupoid(g("point"))).unwrap());
    let b = |n: &str| &c.bundles.iter().find(|(m, _)| m == n).unwrap().1;
    write("unit-pair3.json", serde_json::to_string_pretty(&BibundleJson::from_bibundle(b("unit:pair3"))).unwrap());
    write("id-c3.json", serde_json::to_string_pretty(&BibundleJson::from_bibundle(b("<id:cyclic3>"))).unwrap());
    let a = &c.actions.iter().find(|(m, _)| m == "rot(2,3)").unwrap().1;
    write("rot23.json", serde_json::to_string_pretty(&ActionJson::from_action(a)).unwrap());

    let suite: Vec<Vec<String>> = vec![
        vec!["validate".into(), "pair3.json".into()],
        vec!["info".into(), "pair3.json".into()],
        vec!["orbits".into(), "pair3.json".into()],
        vec!["vertex-group".into(), "cyclic3.json".into(), "--base".into(), "*".into()],
        vec!["effect".into(), "pair3.json".into()],
        vec!["homology".into(), "rot23.json".into(), "--n".into(), "1".into()],
        vec!["balanced".into(), "rot23.json".into(), "--n".into(), "0".into()],
        vec!["mv-check".into(), "rot23.json".into(), "--u".into(), "0,1,2,3,4,5".into(), "--v".into(), "0,2,3,5".into()],
        vec!["pi1".into(), "rot23.json".into()],
        vec!["leaves".into(), "id-c3.json".into()],
        vec!["morita".into(), "pair3.json".into(), "point.json".into()],
        vec!["algebra".into(), "cyclic3.json".into()],
        vec!["bimodule".into(), "unit-pair3.json".into()],
        vec!["mho-check".into(), "unit-pair3.json".into(), "unit-pair3.json".into()],
        vec!["algebra-morita".into(), "pair3.json".into(), "point.json".into()],
        vec!["iso".into(), "unit-pair3.json".into(), "unit-pair3.json".into()],
        vec!["validate".into(), "missing.json".into()],
    ];
    let run_suite = || -> Vec<(Vec<u8>, Vec<u8>, Option<i32>)> {
        suite
            .iter()
            .map(|args| {
                let out = Command::new(env!("CARGO_BIN_EXE_groupoidal"))
                    .args(args)
                    .current_dir(dir.path())
                    .env_remove("GROUPOIDAL_BUDGET")
                    .output()
                    .unwrap();
                (out.stdout, out.stderr, out.status.code())
            })
            .collect()
    };
    let first = run_suite();
    let second = run_suite();
    assert_eq!(first, second, "CLI output is not byte-identical across runs");
    assert!(first.iter().all(|(stdout, _, _)| !stdout.is_empty()));
    println!("acceptance 12 — two CLI suite runs byte-identical ({} commands): PASS", suite.len());
}
