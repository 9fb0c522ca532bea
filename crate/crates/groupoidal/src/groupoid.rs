//! Finite groupoids: validated tables, standard builders, functors, orbit
//! spaces, vertex groups, the effect functor, and essential equivalences.

use crate::error::{Error, Result, Violation};
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// Unchecked groupoid description, as read from JSON or produced by builders.
#[derive(Clone, Debug, Default)]
pub struct GroupoidData {
    pub objects: Vec<String>,
    /// (id, dom, cod)
    pub morphisms: Vec<(String, String, String)>,
    pub unit: BTreeMap<String, String>,
    pub inv: BTreeMap<String, String>,
    /// (g2, g, g2∘g) for composable pairs, i.e. dom g2 = cod g.
    pub comp: Vec<(String, String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub id: String,
    pub dom: usize,
    pub cod: usize,
}

/// A validated finite groupoid. Objects and morphisms are sorted by id and
/// addressed by index; all tables are total on their stated domains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    unit: Vec<usize>,
    inv: Vec<usize>,
    comp: HashMap<(usize, usize), usize>,
}

impl FiniteGroupoid {
    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn n_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_id(&self, i: usize) -> &str {
        &self.objects[i]
    }

    pub fn object_ids(&self) -> &[String] {
        &self.objects
    }

    pub fn morphism(&self, i: usize) -> &Morphism {
        &self.morphisms[i]
    }

    pub fn morphism_id(&self, i: usize) -> &str {
        &self.morphisms[i].id
    }

    pub fn dom(&self, g: usize) -> usize {
        self.morphisms[g].dom
    }

    pub fn cod(&self, g: usize) -> usize {
        self.morphisms[g].cod
    }

    pub fn unit_of(&self, a: usize) -> usize {
        self.unit[a]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inv[g]
    }

    /// g2 ∘ g, defined when dom g2 = cod g.
    pub fn compose(&self, g2: usize, g: usize) -> Option<usize> {
        self.comp.get(&(g2, g)).copied()
    }

    pub fn object_index(&self, id: &str) -> Result<usize> {
        self.objects
            .binary_search_by(|o| o.as_str().cmp(id))
            .map_err(|_| Error::NoSuchObject(id.to_string()))
    }

    pub fn morphism_index(&self, id: &str) -> Result<usize> {
        self.morphisms
            .binary_search_by(|m| m.id.as_str().cmp(id))
            .map_err(|_| Error::NoSuchMorphism(id.to_string()))
    }

    /// Morphisms a → b, in id order.
    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.n_morphisms()).filter(|&g| self.dom(g) == a && self.cod(g) == b).collect()
    }

    /// True when every morphism is a unit (the groupoid is a discrete set).
    pub fn is_discrete(&self) -> bool {
        (0..self.n_morphisms()).all(|g| self.unit[self.dom(g)] == g)
    }

    pub fn is_unit(&self, g: usize) -> bool {
        self.unit[self.dom(g)] == g
    }

    pub fn to_data(&self) -> GroupoidData {
        GroupoidData {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|m| (m.id.clone(), self.objects[m.dom].clone(), self.objects[m.cod].clone()))
                .collect(),
            unit: (0..self.n_objects())
                .map(|a| (self.objects[a].clone(), self.morphisms[self.unit[a]].id.clone()))
                .collect(),
            inv: (0..self.n_morphisms())
                .map(|g| (self.morphisms[g].id.clone(), self.morphisms[self.inv[g]].id.clone()))
                .collect(),
            comp: {
                let mut rows: Vec<_> = self
                    .comp
                    .iter()
                    .map(|(&(g2, g), &r)| {
                        (
                            self.morphisms[g2].id.clone(),
                            self.morphisms[g].id.clone(),
                            self.morphisms[r].id.clone(),
                        )
                    })
                    .collect();
                rows.sort();
                rows
            },
        }
    }

    /// Full subgroupoid on a subset of objects (keeps every morphism whose
    /// endpoints both survive).
    pub fn full_subgroupoid(&self, objs: &BTreeSet<usize>) -> FiniteGroupoid {
        let data = self.to_data();
        let keep: BTreeSet<&str> = objs.iter().map(|&a| self.object_id(a)).collect();
        let kept_mor: BTreeSet<&String> = self
            .morphisms
            .iter()
            .filter(|m| objs.contains(&m.dom) && objs.contains(&m.cod))
            .map(|m| &m.id)
            .collect();
        let sub = GroupoidData {
            objects: data.objects.iter().filter(|o| keep.contains(o.as_str())).cloned().collect(),
            morphisms: data
                .morphisms
                .iter()
                .filter(|(id, _, _)| kept_mor.contains(id))
                .cloned()
                .collect(),
            unit: data.unit.into_iter().filter(|(o, _)| keep.contains(o.as_str())).collect(),
            inv: data.inv.into_iter().filter(|(g, _)| kept_mor.contains(g)).collect(),
            comp: data
                .comp
                .into_iter()
                .filter(|(g2, g, _)| kept_mor.contains(g2) && kept_mor.contains(g))
                .collect(),
        };
        validate_groupoid(&sub).expect("full subgroupoid of a valid groupoid is valid")
    }
}

/// Validate a raw description, returning either the groupoid or the full
/// list of axiom violations. Associativity is checked on every composable
/// triple; unit and inverse laws on every morphism. Conditions that are
/// topological in general ("the domain map is open") are vacuous here:
/// every finite discrete space makes them true, so no check is imposed.
pub fn validate_groupoid(raw: &GroupoidData) -> Result<FiniteGroupoid> {
    let mut violations = Vec::new();

    let mut objects = raw.objects.clone();
    objects.sort();
    objects.dedup();
    if objects.len() != raw.objects.len() {
        violations.push(Violation::BadTable { detail: "duplicate object ids".into() });
    }
    let obj_index: BTreeMap<&str, usize> =
        objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();

    let mut mors = raw.morphisms.clone();
    mors.sort_by(|a, b| a.0.cmp(&b.0));
    if mors.windows(2).any(|w| w[0].0 == w[1].0) {
        violations.push(Violation::BadTable { detail: "duplicate morphism ids".into() });
    }
    let mut morphisms = Vec::new();
    for (id, d, c) in &mors {
        match (obj_index.get(d.as_str()), obj_index.get(c.as_str())) {
            (Some(&dom), Some(&cod)) => morphisms.push(Morphism { id: id.clone(), dom, cod }),
            _ => violations.push(Violation::DomCodMismatch {
                g: id.clone(),
                detail: format!("unknown endpoint {d} or {c}"),
            }),
        }
    }
    if !violations.is_empty() {
        return Err(Error::Validation(violations));
    }
    let mor_index: BTreeMap<&str, usize> =
        morphisms.iter().enumerate().map(|(i, m)| (m.id.as_str(), i)).collect();

    // Units.
    let mut unit = vec![usize::MAX; objects.len()];
    for (a, &ai) in &obj_index {
        match raw.unit.get(*a).and_then(|u| mor_index.get(u.as_str())) {
            Some(&u) => {
                unit[ai] = u;
                if morphisms[u].dom != ai || morphisms[u].cod != ai {
                    violations.push(Violation::DomCodMismatch {
                        g: morphisms[u].id.clone(),
                        detail: format!("unit of {a} must be an endomorphism of {a}"),
                    });
                }
            }
            None => violations.push(Violation::MissingUnit { object: (*a).to_string() }),
        }
    }

    // Inverses.
    let mut inv = vec![usize::MAX; morphisms.len()];
    for (g, &gi) in &mor_index {
        match raw.inv.get(*g).and_then(|h| mor_index.get(h.as_str())) {
            Some(&h) => {
                inv[gi] = h;
                if morphisms[h].dom != morphisms[gi].cod || morphisms[h].cod != morphisms[gi].dom {
                    violations.push(Violation::BadInverse { g: (*g).to_string() });
                }
            }
            None => violations.push(Violation::BadInverse { g: (*g).to_string() }),
        }
    }

    // Composition table.
    let mut comp: HashMap<(usize, usize), usize> = HashMap::new();
    for (g2, g, r) in &raw.comp {
        let (Some(&g2i), Some(&gi), Some(&ri)) = (
            mor_index.get(g2.as_str()),
            mor_index.get(g.as_str()),
            mor_index.get(r.as_str()),
        ) else {
            violations.push(Violation::BadTable {
                detail: format!("comp entry ({g2}, {g}, {r}) names unknown morphisms"),
            });
            continue;
        };
        if morphisms[g2i].dom != morphisms[gi].cod {
            violations.push(Violation::BadTable {
                detail: format!("comp entry ({g2}, {g}) is not composable"),
            });
            continue;
        }
        if morphisms[ri].dom != morphisms[gi].dom || morphisms[ri].cod != morphisms[g2i].cod {
            violations.push(Violation::DomCodMismatch {
                g: r.clone(),
                detail: format!("composite of ({g2}, {g}) has wrong endpoints"),
            });
        }
        if comp.insert((g2i, gi), ri).is_some() {
            violations.push(Violation::BadTable {
                detail: format!("duplicate comp entry for ({g2}, {g})"),
            });
        }
    }
    for g2 in 0..morphisms.len() {
        for g in 0..morphisms.len() {
            if morphisms[g2].dom == morphisms[g].cod && !comp.contains_key(&(g2, g)) {
                violations.push(Violation::MissingComposite {
                    g2: morphisms[g2].id.clone(),
                    g: morphisms[g].id.clone(),
                });
            }
        }
    }
    if !violations.is_empty() {
        return Err(Error::Validation(violations));
    }

    // Unit and inverse laws.
    for g in 0..morphisms.len() {
        let (d, c) = (morphisms[g].dom, morphisms[g].cod);
        if comp[&(unit[c], g)] != g || comp[&(g, unit[d])] != g {
            violations.push(Violation::BadTable {
                detail: format!("unit law fails for {}", morphisms[g].id),
            });
        }
        if comp[&(inv[g], g)] != unit[d] || comp[&(g, inv[g])] != unit[c] {
            violations.push(Violation::BadInverse { g: morphisms[g].id.clone() });
        }
    }

    // Associativity over every composable triple.
    for g in 0..morphisms.len() {
        for g2 in 0..morphisms.len() {
            if morphisms[g2].dom != morphisms[g].cod {
                continue;
            }
            let g21 = comp[&(g2, g)];
            for g3 in 0..morphisms.len() {
                if morphisms[g3].dom != morphisms[g2].cod {
                    continue;
                }
                let g32 = comp[&(g3, g2)];
                if comp[&(g3, g21)] != comp[&(g32, g)] {
                    violations.push(Violation::NonAssociative {
                        g: morphisms[g].id.clone(),
                        g2: morphisms[g2].id.clone(),
                        g3: morphisms[g3].id.clone(),
                    });
                }
            }
        }
    }

    if violations.is_empty() {
        Ok(FiniteGroupoid { objects, morphisms, unit, inv, comp })
    } else {
        Err(Error::Validation(violations))
    }
}

// ---------------------------------------------------------------------------
// Finite groups
// ---------------------------------------------------------------------------

/// A finite group given by its full multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    elements: Vec<String>,
    /// table[i][j] = index of elements[i] * elements[j].
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    pub fn new(elements: Vec<String>, table: Vec<Vec<usize>>) -> Result<FiniteGroup> {
        let n = elements.len();
        if n == 0 || table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("group table must be square and nonempty".into()));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(Error::InvalidInput("group table entry out of range".into()));
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if table[table[i][j]][k] != table[i][table[j][k]] {
                        return Err(Error::InvalidInput(format!(
                            "group table not associative at ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|i| table[e][i] == i && table[i][e] == i))
            .ok_or_else(|| Error::InvalidInput("group table has no identity".into()))?;
        let mut inverse = vec![usize::MAX; n];
        for i in 0..n {
            inverse[i] = (0..n)
                .find(|&j| table[i][j] == identity && table[j][i] == identity)
                .ok_or_else(|| Error::InvalidInput(format!("element {i} has no inverse")))?;
        }
        Ok(FiniteGroup { elements, table, identity, inverse })
    }

    pub fn cyclic(k: usize) -> FiniteGroup {
        assert!(k >= 1);
        let width = (k - 1).to_string().len();
        let elements = (0..k).map(|i| format!("r{i:0width$}")).collect();
        let table = (0..k).map(|i| (0..k).map(|j| (i + j) % k).collect()).collect();
        FiniteGroup::new(elements, table).expect("cyclic table is a group")
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup::cyclic(1)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn element_index(&self, id: &str) -> Result<usize> {
        self.elements
            .iter()
            .position(|e| e == id)
            .ok_or_else(|| Error::NoSuchElement(id.to_string()))
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut x = i;
        let mut n = 1;
        while x != self.identity {
            x = self.table[x][i];
            n += 1;
        }
        n
    }
}

/// Backtracking isomorphism search between two finite groups with a node
/// budget. Returns a witness (image index per element of `a`) or None.
pub fn isomorphic_groups(
    a: &FiniteGroup,
    b: &FiniteGroup,
    budget: u64,
) -> Result<Option<Vec<usize>>> {
    if a.order() != b.order() {
        return Ok(None);
    }
    let n = a.order();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut nodes = 0u64;

    fn extend(
        a: &FiniteGroup,
        b: &FiniteGroup,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        next: usize,
        nodes: &mut u64,
        budget: u64,
    ) -> Result<bool> {
        let n = a.order();
        if next == n {
            return Ok(true);
        }
        if map[next] != usize::MAX {
            return extend(a, b, map, used, next + 1, nodes, budget);
        }
        for img in 0..n {
            if used[img] || a.element_order(next) != b.element_order(img) {
                continue;
            }
            *nodes += 1;
            if *nodes > budget {
                return Err(Error::SearchBudgetExceeded { budget });
            }
            // Tentatively assign and propagate products with assigned elements.
            let mut assigned = vec![(next, img)];
            map[next] = img;
            used[img] = true;
            let mut ok = true;
            let mut qi = 0;
            while ok && qi < assigned.len() {
                let (x, _) = assigned[qi];
                qi += 1;
                for y in 0..n {
                    if map[y] == usize::MAX {
                        continue;
                    }
                    for (p, q) in [(x, y), (y, x)] {
                        let prod = a.mul(p, q);
                        let img_prod = b.mul(map[p], map[q]);
                        if map[prod] == usize::MAX {
                            if used[img_prod] {
                                ok = false;
                                break;
                            }
                            map[prod] = img_prod;
                            used[img_prod] = true;
                            assigned.push((prod, img_prod));
                        } else if map[prod] != img_prod {
                            ok = false;
                            break;
                        }
                    }
                    if !ok {
                        break;
                    }
                }
            }
            if ok && extend(a, b, map, used, next + 1, nodes, budget)? {
                return Ok(true);
            }
            for (x, i) in assigned {
                map[x] = usize::MAX;
                used[i] = false;
            }
        }
        Ok(false)
    }

    map[a.identity()] = b.identity();
    used[b.identity()] = true;
    if extend(a, b, &mut map, &mut used, 0, &mut nodes, budget)? {
        Ok(Some(map))
    } else {
        Ok(None)
    }
}

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

fn pad(i: usize, n: usize) -> String {
    let width = n.to_string().len();
    format!("{i:0width$}")
}

pub fn point() -> FiniteGroupoid {
    let data = GroupoidData {
        objects: vec!["*".into()],
        morphisms: vec![("1".into(), "*".into(), "*".into())],
        unit: [("*".into(), "1".into())].into(),
        inv: [("1".into(), "1".into())].into(),
        comp: vec![("1".into(), "1".into(), "1".into())],
    };
    validate_groupoid(&data).expect("point groupoid is valid")
}

/// Pair groupoid on n objects: exactly one morphism between any two objects.
pub fn pair(n: usize) -> FiniteGroupoid {
    assert!(n >= 1);
    let obj = |i: usize| format!("p{}", pad(i + 1, n));
    let mid = |i: usize, j: usize| format!("{}>{}", obj(i), obj(j));
    let mut data = GroupoidData::default();
    data.objects = (0..n).map(obj).collect();
    for i in 0..n {
        data.unit.insert(obj(i), mid(i, i));
        for j in 0..n {
            data.morphisms.push((mid(i, j), obj(i), obj(j)));
            data.inv.insert(mid(i, j), mid(j, i));
            for k in 0..n {
                data.comp.push((mid(j, k), mid(i, j), mid(i, k)));
            }
        }
    }
    validate_groupoid(&data).expect("pair groupoid is valid")
}

/// A finite group as a one-object groupoid; morphism ids may be prefixed to
/// keep them unique inside disjoint unions.
pub fn group_groupoid(group: &FiniteGroup, object: &str, prefix: &str) -> FiniteGroupoid {
    let mid = |i: usize| format!("{prefix}{}", group.elements()[i]);
    let n = group.order();
    let mut data = GroupoidData::default();
    data.objects = vec![object.to_string()];
    data.unit.insert(object.to_string(), mid(group.identity()));
    for i in 0..n {
        data.morphisms.push((mid(i), object.to_string(), object.to_string()));
        data.inv.insert(mid(i), mid(group.inverse(i)));
        for j in 0..n {
            data.comp.push((mid(i), mid(j), mid(group.mul(i, j))));
        }
    }
    validate_groupoid(&data).expect("group table yields a valid groupoid")
}

/// Cyclic group Z/k as a one-object groupoid.
pub fn cyclic(k: usize) -> FiniteGroupoid {
    group_groupoid(&FiniteGroup::cyclic(k), "*", "")
}

/// Discrete groupoid (only units) on named objects.
pub fn discrete_on(ids: &[String]) -> FiniteGroupoid {
    let mut data = GroupoidData::default();
    data.objects = ids.to_vec();
    for x in ids {
        let u = format!("1@{x}");
        data.morphisms.push((u.clone(), x.clone(), x.clone()));
        data.unit.insert(x.clone(), u.clone());
        data.inv.insert(u.clone(), u.clone());
        data.comp.push((u.clone(), u.clone(), u.clone()));
    }
    validate_groupoid(&data).expect("discrete groupoid is valid")
}

pub fn discrete_set(n: usize) -> FiniteGroupoid {
    let ids: Vec<String> = (0..n).map(|i| format!("x{}", pad(i + 1, n))).collect();
    discrete_on(&ids)
}

/// Action groupoid G(X, ν) of a right action of `group` on `set`:
/// objects X, morphisms X × G with cod(x,g) = x and dom(x,g) = x·g;
/// (x',g') ∘ (x,g) = (x', g'g) whenever x'·g' = x.
pub fn action_groupoid(
    group: &FiniteGroup,
    set: &[String],
    act: &dyn Fn(usize, usize) -> usize,
) -> Result<FiniteGroupoid> {
    let n = set.len();
    let k = group.order();
    // Validate the action table.
    for x in 0..n {
        if act(x, group.identity()) != x {
            return Err(Error::BadAction(format!("identity moves {}", set[x])));
        }
        for g in 0..k {
            if act(x, g) >= n {
                return Err(Error::BadAction("action lands outside the set".into()));
            }
            for h in 0..k {
                if act(x, group.mul(g, h)) != act(act(x, g), h) {
                    return Err(Error::BadAction(format!(
                        "x·(gh) != (x·g)·h at x={}, g={}, h={}",
                        set[x],
                        group.elements()[g],
                        group.elements()[h]
                    )));
                }
            }
        }
    }
    let mid = |x: usize, g: usize| format!("({}|{})", set[x], group.elements()[g]);
    let mut data = GroupoidData::default();
    data.objects = set.to_vec();
    for x in 0..n {
        data.unit.insert(set[x].clone(), mid(x, group.identity()));
        for g in 0..k {
            data.morphisms.push((mid(x, g), set[act(x, g)].clone(), set[x].clone()));
            // inverse of (x,g): dom is x·g, and (x·g)·g⁻¹ = x.
            data.inv.insert(mid(x, g), mid(act(x, g), group.inverse(g)));
            // (x,g) ∘ (y,h) needs dom(x,g) = x·g = cod(y,h) = y.
            let y = act(x, g);
            for h in 0..k {
                data.comp.push((mid(x, g), mid(y, h), mid(x, group.mul(g, h))));
            }
        }
    }
    validate_groupoid(&data)
}

/// Disjoint union with "l." / "r." namespacing of ids.
pub fn disjoint_union(g: &FiniteGroupoid, h: &FiniteGroupoid) -> FiniteGroupoid {
    let mut data = GroupoidData::default();
    for (tag, side) in [("l.", g), ("r.", h)] {
        let d = side.to_data();
        let t = |s: &String| format!("{tag}{s}");
        data.objects.extend(d.objects.iter().map(t));
        data.morphisms.extend(d.morphisms.iter().map(|(i, a, b)| (t(i), t(a), t(b))));
        data.unit.extend(d.unit.iter().map(|(a, u)| (t(a), t(u))));
        data.inv.extend(d.inv.iter().map(|(x, y)| (t(x), t(y))));
        data.comp.extend(d.comp.iter().map(|(a, b, c)| (t(a), t(b), t(c))));
    }
    validate_groupoid(&data).expect("disjoint union of valid groupoids is valid")
}

/// Product groupoid with componentwise structure.
pub fn product(g: &FiniteGroupoid, h: &FiniteGroupoid) -> FiniteGroupoid {
    let obj = |a: usize, b: usize| format!("({},{})", g.object_id(a), h.object_id(b));
    let mid = |x: usize, y: usize| format!("({},{})", g.morphism_id(x), h.morphism_id(y));
    let mut data = GroupoidData::default();
    for a in 0..g.n_objects() {
        for b in 0..h.n_objects() {
            data.objects.push(obj(a, b));
            data.unit.insert(obj(a, b), mid(g.unit_of(a), h.unit_of(b)));
        }
    }
    for x in 0..g.n_morphisms() {
        for y in 0..h.n_morphisms() {
            data.morphisms.push((mid(x, y), obj(g.dom(x), h.dom(y)), obj(g.cod(x), h.cod(y))));
            data.inv.insert(mid(x, y), mid(g.inverse(x), h.inverse(y)));
            for x2 in 0..g.n_morphisms() {
                if g.dom(x2) != g.cod(x) {
                    continue;
                }
                for y2 in 0..h.n_morphisms() {
                    if h.dom(y2) != h.cod(y) {
                        continue;
                    }
                    data.comp.push((
                        mid(x2, y2),
                        mid(x, y),
                        mid(g.compose(x2, x).unwrap(), h.compose(y2, y).unwrap()),
                    ));
                }
            }
        }
    }
    validate_groupoid(&data).expect("product of valid groupoids is valid")
}

// ---------------------------------------------------------------------------
// Orbits, vertex groups, effect
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    /// Blocks of object indices, each sorted; blocks ordered by least member.
    pub blocks: Vec<Vec<usize>>,
    pub block_of: Vec<usize>,
}

impl OrbitPartition {
    pub fn n_blocks(&self) -> usize {
        self.blocks.len()
    }
}

pub fn orbit_space(g: &FiniteGroupoid) -> OrbitPartition {
    let n = g.n_objects();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for m in 0..g.n_morphisms() {
        let (a, b) = (find(&mut parent, g.dom(m)), find(&mut parent, g.cod(m)));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut blocks_map: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in 0..n {
        let r = find(&mut parent, x);
        blocks_map.entry(r).or_default().push(x);
    }
    let blocks: Vec<Vec<usize>> = blocks_map.into_values().collect();
    let mut block_of = vec![0usize; n];
    for (bi, b) in blocks.iter().enumerate() {
        for &x in b {
            block_of[x] = bi;
        }
    }
    OrbitPartition { blocks, block_of }
}

/// The vertex group G(a,a) under composition: mult(i, j) = g_i ∘ g_j.
pub fn vertex_group(g: &FiniteGroupoid, a: usize) -> FiniteGroup {
    let loops: Vec<usize> = g.hom(a, a);
    let elements = loops.iter().map(|&m| g.morphism_id(m).to_string()).collect();
    let pos: HashMap<usize, usize> = loops.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let table = loops
        .iter()
        .map(|&x| loops.iter().map(|&y| pos[&g.compose(x, y).unwrap()]).collect())
        .collect();
    FiniteGroup::new(elements, table).expect("vertex group satisfies the group axioms")
}

pub fn vertex_group_by_id(g: &FiniteGroupoid, a: &str) -> Result<FiniteGroup> {
    Ok(vertex_group(g, g.object_index(a)?))
}

// ---------------------------------------------------------------------------
// Functors
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidFunctor {
    pub source: FiniteGroupoid,
    pub target: FiniteGroupoid,
    /// source object index → target object index.
    pub obj_map: Vec<usize>,
    /// source morphism index → target morphism index.
    pub mor_map: Vec<usize>,
}

impl GroupoidFunctor {
    pub fn new(
        source: FiniteGroupoid,
        target: FiniteGroupoid,
        obj_map: Vec<usize>,
        mor_map: Vec<usize>,
    ) -> Result<GroupoidFunctor> {
        if obj_map.len() != source.n_objects() || mor_map.len() != source.n_morphisms() {
            return Err(Error::SourceTargetMismatch("map lengths do not match the source".into()));
        }
        if obj_map.iter().any(|&a| a >= target.n_objects())
            || mor_map.iter().any(|&g| g >= target.n_morphisms())
        {
            return Err(Error::SourceTargetMismatch("map lands outside the target".into()));
        }
        for g in 0..source.n_morphisms() {
            let img = mor_map[g];
            if target.dom(img) != obj_map[source.dom(g)] || target.cod(img) != obj_map[source.cod(g)]
            {
                return Err(Error::SourceTargetMismatch(format!(
                    "functor does not preserve endpoints of {}",
                    source.morphism_id(g)
                )));
            }
        }
        for a in 0..source.n_objects() {
            if mor_map[source.unit_of(a)] != target.unit_of(obj_map[a]) {
                return Err(Error::SourceTargetMismatch(format!(
                    "functor does not preserve the unit of {}",
                    source.object_id(a)
                )));
            }
        }
        for g2 in 0..source.n_morphisms() {
            for g in 0..source.n_morphisms() {
                if let Some(r) = source.compose(g2, g) {
                    if target.compose(mor_map[g2], mor_map[g]) != Some(mor_map[r]) {
                        return Err(Error::SourceTargetMismatch(format!(
                            "functor does not preserve {} ∘ {}",
                            source.morphism_id(g2),
                            source.morphism_id(g)
                        )));
                    }
                }
            }
        }
        Ok(GroupoidFunctor { source, target, obj_map, mor_map })
    }

    pub fn from_ids(
        source: &FiniteGroupoid,
        target: &FiniteGroupoid,
        obj_map: &BTreeMap<String, String>,
        mor_map: &BTreeMap<String, String>,
    ) -> Result<GroupoidFunctor> {
        let mut om = Vec::with_capacity(source.n_objects());
        for a in 0..source.n_objects() {
            let img = obj_map
                .get(source.object_id(a))
                .ok_or_else(|| Error::SourceTargetMismatch(format!(
                    "obj_map misses {}",
                    source.object_id(a)
                )))?;
            om.push(target.object_index(img)?);
        }
        let mut mm = Vec::with_capacity(source.n_morphisms());
        for g in 0..source.n_morphisms() {
            let img = mor_map
                .get(source.morphism_id(g))
                .ok_or_else(|| Error::SourceTargetMismatch(format!(
                    "mor_map misses {}",
                    source.morphism_id(g)
                )))?;
            mm.push(target.morphism_index(img)?);
        }
        GroupoidFunctor::new(source.clone(), target.clone(), om, mm)
    }

    pub fn identity(g: &FiniteGroupoid) -> GroupoidFunctor {
        GroupoidFunctor {
            source: g.clone(),
            target: g.clone(),
            obj_map: (0..g.n_objects()).collect(),
            mor_map: (0..g.n_morphisms()).collect(),
        }
    }

    /// self ∘ other (other: K → H, self: H → G).
    pub fn compose(&self, other: &GroupoidFunctor) -> Result<GroupoidFunctor> {
        if other.target != self.source {
            return Err(Error::SourceTargetMismatch(
                "functor composition requires matching middle groupoid".into(),
            ));
        }
        Ok(GroupoidFunctor {
            source: other.source.clone(),
            target: self.target.clone(),
            obj_map: other.obj_map.iter().map(|&a| self.obj_map[a]).collect(),
            mor_map: other.mor_map.iter().map(|&g| self.mor_map[g]).collect(),
        })
    }
}

/// The effect functor in the discrete tier: a morphism g acts by the germ of
/// its induced map of orbits, which over a discrete set is just the pair
/// (cod g, dom g). Eff(G) is the orbit-equivalence-relation groupoid on the
/// same objects; the construction is a projector (idempotent on the nose,
/// given the canonical morphism names below).
pub fn effect(g: &FiniteGroupoid) -> (FiniteGroupoid, GroupoidFunctor) {
    let mid = |a: usize, b: usize| format!("[{}>{}]", g.object_id(a), g.object_id(b));
    let mut pairs = BTreeSet::new();
    for m in 0..g.n_morphisms() {
        pairs.insert((g.dom(m), g.cod(m)));
    }
    let mut data = GroupoidData::default();
    data.objects = g.object_ids().to_vec();
    for &(a, b) in &pairs {
        data.morphisms.push((mid(a, b), g.object_id(a).into(), g.object_id(b).into()));
        data.inv.insert(mid(a, b), mid(b, a));
        for &(c, d) in &pairs {
            // (c,d) ∘ (a,b) composable when c = b.
            if c == b {
                data.comp.push((mid(c, d), mid(a, b), mid(a, d)));
            }
        }
    }
    for a in 0..g.n_objects() {
        data.unit.insert(g.object_id(a).into(), mid(a, a));
    }
    let eff = validate_groupoid(&data).expect("effect groupoid is valid");
    let obj_map = (0..g.n_objects()).collect();
    let mor_map = (0..g.n_morphisms())
        .map(|m| eff.morphism_index(&mid(g.dom(m), g.cod(m))).unwrap())
        .collect();
    let functor = GroupoidFunctor::new(g.clone(), eff.clone(), obj_map, mor_map)
        .expect("effect quotient is a functor");
    (eff, functor)
}

/// Discrete-tier essential-equivalence test for φ: H → G.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EssEquivVerdict {
    Yes,
    No { witness: String },
}

impl EssEquivVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, EssEquivVerdict::Yes)
    }
}

pub fn is_essential_equivalence(phi: &GroupoidFunctor) -> EssEquivVerdict {
    let h = &phi.source;
    let g = &phi.target;
    // (i) Essential surjectivity: every target object receives a morphism
    // whose domain lies in the image of obj_map.
    for a in 0..g.n_objects() {
        let hit = (0..g.n_morphisms())
            .any(|m| g.cod(m) == a && phi.obj_map.contains(&g.dom(m)));
        if !hit {
            return EssEquivVerdict::No {
                witness: format!(
                    "object {} receives no morphism from the image of the functor",
                    g.object_id(a)
                ),
            };
        }
    }
    // (ii) Full faithfulness: H(b,b') → G(φb, φb') bijective for all pairs.
    for b in 0..h.n_objects() {
        for b2 in 0..h.n_objects() {
            let source_hom = h.hom(b, b2);
            let target_hom = g.hom(phi.obj_map[b], phi.obj_map[b2]);
            let images: BTreeSet<usize> = source_hom.iter().map(|&m| phi.mor_map[m]).collect();
            if images.len() != source_hom.len() || images.len() != target_hom.len() {
                return EssEquivVerdict::No {
                    witness: format!(
                        "|H({b0}, {b1})| = {sh} does not match |G({g0}, {g1})| = {th} bijectively",
                        b0 = h.object_id(b),
                        b1 = h.object_id(b2),
                        sh = source_hom.len(),
                        g0 = g.object_id(phi.obj_map[b]),
                        g1 = g.object_id(phi.obj_map[b2]),
                        th = target_hom.len(),
                    ),
                };
            }
        }
    }
    EssEquivVerdict::Yes
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_groupoid_valid() {
        let g = pair(3);
        assert_eq!(g.n_objects(), 3);
        assert_eq!(g.n_morphisms(), 9);
        assert_eq!(orbit_space(&g).n_blocks(), 1);
        assert_eq!(vertex_group(&g, 0).order(), 1);
    }

    #[test]
    fn corrupt_comp_dom_mismatch() {
        let mut data = pair(2).to_data();
        // Redirect one composite to a morphism with the wrong endpoints.
        let idx = data
            .comp
            .iter()
            .position(|(g2, g, _)| g2 == "p1>p2" && g == "p2>p1")
            .unwrap();
        data.comp[idx].2 = "p1>p2".into(); // should be p2>p2
        let err = validate_groupoid(&data).unwrap_err();
        let Error::Validation(v) = err else { panic!("expected validation error") };
        assert!(v.iter().any(|x| matches!(x, Violation::DomCodMismatch { .. })));
    }

    // Independent associativity oracle on a raw one-object table.
    fn brute_force_associative(data: &GroupoidData) -> bool {
        let comp: HashMap<(String, String), String> = data
            .comp
            .iter()
            .map(|(a, b, c)| ((a.clone(), b.clone()), c.clone()))
            .collect();
        for (a, ..) in &data.morphisms {
            for (b, ..) in &data.morphisms {
                for (c, ..) in &data.morphisms {
                    let ab = &comp[&(a.clone(), b.clone())];
                    let bc = &comp[&(b.clone(), c.clone())];
                    if comp[&(ab.clone(), c.clone())] != comp[&(a.clone(), bc.clone())] {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn perturbed_cyclic_table_not_associative() {
        // Perturb one entry of the Z/3 table; all 27 triples are checked by
        // the brute-force oracle first, then the validator must agree.
        let mut data = cyclic(3).to_data();
        let idx = data.comp.iter().position(|(a, b, _)| a == "r1" && b == "r1").unwrap();
        data.comp[idx].2 = "r0".into(); // r1∘r1 should be r2
        assert!(!brute_force_associative(&data));
        let err = validate_groupoid(&data).unwrap_err();
        let Error::Validation(v) = err else { panic!("expected validation error") };
        assert!(v.iter().any(|x| matches!(
            x,
            Violation::NonAssociative { .. } | Violation::BadInverse { .. } | Violation::BadTable { .. }
        )));
        assert!(v.iter().any(|x| matches!(x, Violation::NonAssociative { .. })));
    }

    #[test]
    fn cyclic_vertex_group() {
        let g = cyclic(4);
        assert_eq!(g.n_objects(), 1);
        assert_eq!(g.n_morphisms(), 4);
        let vg = vertex_group(&g, 0);
        assert_eq!(vg.order(), 4);
        let iso = isomorphic_groups(&vg, &FiniteGroup::cyclic(4), 1_000_000).unwrap();
        assert!(iso.is_some());
    }

    #[test]
    fn swap_action_groupoid() {
        let z2 = FiniteGroup::cyclic(2);
        let set = vec!["1".to_string(), "2".to_string()];
        let g = action_groupoid(&z2, &set, &|x, e| if e == 0 { x } else { 1 - x }).unwrap();
        assert_eq!(g.n_objects(), 2);
        assert_eq!(g.n_morphisms(), 4);
        assert_eq!(orbit_space(&g).n_blocks(), 1);
        assert_eq!(vertex_group(&g, 0).order(), 1);
    }

    #[test]
    fn fixed_point_action_has_isotropy() {
        let z2 = FiniteGroup::cyclic(2);
        let set = vec!["1".to_string()];
        let g = action_groupoid(&z2, &set, &|x, _| x).unwrap();
        assert_eq!(vertex_group(&g, 0).order(), 2);
    }

    #[test]
    fn bad_action_rejected() {
        let z2 = FiniteGroup::cyclic(2);
        let set = vec!["1".to_string(), "2".to_string()];
        // "Action" that is not compatible with the group law: g acts as a
        // 2-cycle but g·g acts as the identity only if applied twice; send
        // both elements to x=0 instead.
        let r = action_groupoid(&z2, &set, &|_, e| if e == 0 { 0 } else { 1 });
        assert!(matches!(r, Err(Error::BadAction(_))));
    }

    #[test]
    fn three_cycles_orbits() {
        let z3 = FiniteGroup::cyclic(3);
        let set: Vec<String> = (1..=6).map(|i| i.to_string()).collect();
        // Two 3-cycles: (1 2 3) and (4 5 6).
        let g = action_groupoid(&z3, &set, &|x, e| (x / 3) * 3 + (x % 3 + e) % 3).unwrap();
        assert_eq!(orbit_space(&g).n_blocks(), 2);
    }

    #[test]
    fn disjoint_union_and_orbits() {
        let g = disjoint_union(&pair(2), &point());
        assert_eq!(orbit_space(&g).n_blocks(), 2);
        assert_eq!(g.n_morphisms(), 5);
    }

    #[test]
    fn product_groupoid() {
        let g = product(&pair(2), &cyclic(2));
        assert_eq!(g.n_objects(), 2);
        assert_eq!(g.n_morphisms(), 8);
        assert_eq!(vertex_group(&g, 0).order(), 2);
    }

    #[test]
    fn effect_examples() {
        // pair(3) is already effective: same shape, 9 morphisms.
        let (e, _) = effect(&pair(3));
        assert_eq!(e.n_morphisms(), 9);
        assert_eq!(orbit_space(&e).n_blocks(), 1);

        // cyclic(4) collapses to the point groupoid.
        let (e, f) = effect(&cyclic(4));
        assert_eq!(e.n_objects(), 1);
        assert_eq!(e.n_morphisms(), 1);
        assert!(f.mor_map.iter().all(|&m| m == 0));

        // Swap action on 2 points becomes pair(2)-shaped.
        let z2 = FiniteGroup::cyclic(2);
        let set = vec!["1".to_string(), "2".to_string()];
        let g = action_groupoid(&z2, &set, &|x, e| if e == 0 { x } else { 1 - x }).unwrap();
        let (e, _) = effect(&g);
        assert_eq!(e.n_objects(), 2);
        assert_eq!(e.n_morphisms(), 4);
    }

    #[test]
    fn effect_idempotent() {
        for g in [pair(3), cyclic(4), disjoint_union(&pair(2), &cyclic(2))] {
            let (e1, _) = effect(&g);
            let (e2, _) = effect(&e1);
            assert_eq!(e1, e2);
        }
    }

    #[test]
    fn orbit_space_matches_effect() {
        for g in [pair(3), cyclic(4), disjoint_union(&pair(2), &point())] {
            let (e, _) = effect(&g);
            assert_eq!(orbit_space(&g), orbit_space(&e));
        }
    }

    #[test]
    fn essential_equivalence_examples() {
        // Inclusion point → pair(3) at the least object.
        let p = point();
        let target = pair(3);
        let phi = GroupoidFunctor::new(p.clone(), target.clone(), vec![0], vec![0]).unwrap();
        assert!(is_essential_equivalence(&phi).is_yes());

        // Identity is an essential equivalence.
        assert!(is_essential_equivalence(&GroupoidFunctor::identity(&target)).is_yes());

        // Quotient cyclic(2) → point is not: hom sets have sizes 2 vs 1.
        let c2 = cyclic(2);
        let psi = GroupoidFunctor::new(c2, p, vec![0], vec![0, 0]).unwrap();
        match is_essential_equivalence(&psi) {
            EssEquivVerdict::No { witness } => assert!(witness.contains("2")),
            EssEquivVerdict::Yes => panic!("collapse of Z/2 must not be an essential equivalence"),
        }
    }

    #[test]
    fn vertex_groups_isomorphic_within_orbit() {
        let z3 = FiniteGroup::cyclic(3);
        let set: Vec<String> = (1..=3).map(|i| i.to_string()).collect();
        let g = action_groupoid(&z3, &set, &|x, e| (x + e) % 3).unwrap();
        let orbits = orbit_space(&g);
        for block in &orbits.blocks {
            let first = vertex_group(&g, block[0]);
            for &a in &block[1..] {
                let other = vertex_group(&g, a);
                assert!(isomorphic_groups(&first, &other, 1_000_000).unwrap().is_some());
            }
        }
    }

    #[test]
    fn group_iso_search_distinguishes() {
        let z4 = FiniteGroup::cyclic(4);
        // Klein four group.
        let v4 = FiniteGroup::new(
            vec!["e".into(), "a".into(), "b".into(), "c".into()],
            vec![
                vec![0, 1, 2, 3],
                vec![1, 0, 3, 2],
                vec![2, 3, 0, 1],
                vec![3, 2, 1, 0],
            ],
        )
        .unwrap();
        assert!(isomorphic_groups(&z4, &v4, 1_000_000).unwrap().is_none());
        assert!(isomorphic_groups(&z4, &FiniteGroup::cyclic(4), 1_000_000).unwrap().is_some());
    }

    #[test]
    fn full_subgroupoid_restricts() {
        let g = disjoint_union(&pair(2), &point());
        let objs: BTreeSet<usize> = [g.object_index("l.p1").unwrap(), g.object_index("l.p2").unwrap()]
            .into_iter()
            .collect();
        let sub = g.full_subgroupoid(&objs);
        assert_eq!(sub.n_objects(), 2);
        assert_eq!(sub.n_morphisms(), 4);
    }
}
