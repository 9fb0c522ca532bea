//! JSON file formats for groupoids, functors, bibundles, cocycles,
//! simplicial complexes and actions, plus the report shapes the CLI
//! emits. Groupoid-valued fields accept either an inline description or a
//! path to another file.

use crate::bibundle::Bibundle;
use crate::cocycle::{validate_cocycle, Cocycle, Cover};
use crate::error::{Error, Result};
use crate::groupoid::{
    validate_groupoid, FiniteGroup, FiniteGroupoid, GroupoidData, GroupoidFunctor,
};
use crate::simplicial::{SimplicialAction, SimplicialComplex};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::Path;

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct MorphismJson {
    pub id: String,
    pub dom: String,
    pub cod: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct GroupoidJson {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismJson>,
    pub unit: BTreeMap<String, String>,
    pub inv: BTreeMap<String, String>,
    pub comp: Vec<(String, String, String)>,
}

impl GroupoidJson {
    pub fn from_groupoid(g: &FiniteGroupoid) -> GroupoidJson {
        let d = g.to_data();
        GroupoidJson {
            objects: d.objects,
            morphisms: d
                .morphisms
                .into_iter()
                .map(|(id, dom, cod)| MorphismJson { id, dom, cod })
                .collect(),
            unit: d.unit,
            inv: d.inv,
            comp: d.comp,
        }
    }

    pub fn to_groupoid(&self) -> Result<FiniteGroupoid> {
        let data = GroupoidData {
            objects: self.objects.clone(),
            morphisms: self
                .morphisms
                .iter()
                .map(|m| (m.id.clone(), m.dom.clone(), m.cod.clone()))
                .collect(),
            unit: self.unit.clone(),
            inv: self.inv.clone(),
            comp: self.comp.clone(),
        };
        validate_groupoid(&data)
    }
}

/// A groupoid-valued field: either inline or a path relative to the
/// referencing file.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(untagged)]
pub enum GroupoidRef {
    Path(String),
    Inline(GroupoidJson),
}

impl GroupoidRef {
    pub fn resolve(&self, dir: &Path) -> Result<FiniteGroupoid> {
        match self {
            GroupoidRef::Inline(g) => g.to_groupoid(),
            GroupoidRef::Path(p) => {
                let g: GroupoidJson = load_json(&dir.join(p))?;
                g.to_groupoid()
            }
        }
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct BibundleJson {
    pub left: GroupoidRef,
    pub right: GroupoidRef,
    pub total: Vec<String>,
    /// Element → left-groupoid object.
    pub p: BTreeMap<String, String>,
    /// Element → right-groupoid object.
    pub w: BTreeMap<String, String>,
    /// (left morphism, element, result element).
    pub left_act: Vec<(String, String, String)>,
    /// (element, right morphism, result element).
    pub right_act: Vec<(String, String, String)>,
}

impl BibundleJson {
    pub fn from_bibundle(e: &Bibundle) -> BibundleJson {
        let left = GroupoidRef::Inline(GroupoidJson::from_groupoid(&e.left));
        let right = GroupoidRef::Inline(GroupoidJson::from_groupoid(&e.right));
        let mut p = BTreeMap::new();
        let mut w = BTreeMap::new();
        for i in 0..e.n_elements() {
            p.insert(e.element_id(i).to_string(), e.left.object_id(e.p(i)).to_string());
            w.insert(e.element_id(i).to_string(), e.right.object_id(e.w(i)).to_string());
        }
        let mut left_act = Vec::new();
        for g in 0..e.left.n_morphisms() {
            for i in 0..e.n_elements() {
                if let Some(r) = e.lact(g, i) {
                    left_act.push((
                        e.left.morphism_id(g).to_string(),
                        e.element_id(i).to_string(),
                        e.element_id(r).to_string(),
                    ));
                }
            }
        }
        let mut right_act = Vec::new();
        for i in 0..e.n_elements() {
            for h in 0..e.right.n_morphisms() {
                if let Some(r) = e.ract(i, h) {
                    right_act.push((
                        e.element_id(i).to_string(),
                        e.right.morphism_id(h).to_string(),
                        e.element_id(r).to_string(),
                    ));
                }
            }
        }
        BibundleJson { left, right, total: e.element_ids().to_vec(), p, w, left_act, right_act }
    }

    pub fn to_bibundle(&self, dir: &Path) -> Result<Bibundle> {
        let left = self.left.resolve(dir)?;
        let right = self.right.resolve(dir)?;
        let index: BTreeMap<&str, usize> =
            self.total.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let elem = |id: &str| -> Result<usize> {
            index.get(id).copied().ok_or_else(|| Error::Schema(format!("unknown element {id}")))
        };
        let mut elements = Vec::with_capacity(self.total.len());
        for id in &self.total {
            let pa = self
                .p
                .get(id)
                .ok_or_else(|| Error::Schema(format!("missing p({id})")))?;
            let wb = self
                .w
                .get(id)
                .ok_or_else(|| Error::Schema(format!("missing w({id})")))?;
            elements.push((id.clone(), left.object_index(pa)?, right.object_index(wb)?));
        }
        let mut la = HashMap::new();
        for (g, e, r) in &self.left_act {
            la.insert((left.morphism_index(g)?, elem(e)?), elem(r)?);
        }
        let mut ra = HashMap::new();
        for (e, h, r) in &self.right_act {
            ra.insert((elem(e)?, right.morphism_index(h)?), elem(r)?);
        }
        Bibundle::new(left, right, elements, la, ra)
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct FunctorJson {
    pub source: GroupoidRef,
    pub target: GroupoidRef,
    pub obj_map: BTreeMap<String, String>,
    pub mor_map: BTreeMap<String, String>,
}

impl FunctorJson {
    pub fn from_functor(f: &GroupoidFunctor) -> FunctorJson {
        FunctorJson {
            source: GroupoidRef::Inline(GroupoidJson::from_groupoid(&f.source)),
            target: GroupoidRef::Inline(GroupoidJson::from_groupoid(&f.target)),
            obj_map: (0..f.source.n_objects())
                .map(|a| {
                    (
                        f.source.object_id(a).to_string(),
                        f.target.object_id(f.obj_map[a]).to_string(),
                    )
                })
                .collect(),
            mor_map: (0..f.source.n_morphisms())
                .map(|g| {
                    (
                        f.source.morphism_id(g).to_string(),
                        f.target.morphism_id(f.mor_map[g]).to_string(),
                    )
                })
                .collect(),
        }
    }

    pub fn to_functor(&self, dir: &Path) -> Result<GroupoidFunctor> {
        let source = self.source.resolve(dir)?;
        let target = self.target.resolve(dir)?;
        let mut obj_map = Vec::with_capacity(source.n_objects());
        for a in 0..source.n_objects() {
            let id = source.object_id(a);
            let img = self
                .obj_map
                .get(id)
                .ok_or_else(|| Error::Schema(format!("missing object image of {id}")))?;
            obj_map.push(target.object_index(img)?);
        }
        let mut mor_map = Vec::with_capacity(source.n_morphisms());
        for g in 0..source.n_morphisms() {
            let id = source.morphism_id(g);
            let img = self
                .mor_map
                .get(id)
                .ok_or_else(|| Error::Schema(format!("missing morphism image of {id}")))?;
            mor_map.push(target.morphism_index(img)?);
        }
        GroupoidFunctor::new(source, target, obj_map, mor_map)
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct CocycleJson {
    pub base: Vec<String>,
    pub pieces: Vec<Vec<usize>>,
    pub target: GroupoidRef,
    /// (piece i, piece j, base point, target morphism).
    pub maps: Vec<(usize, usize, String, String)>,
}

impl CocycleJson {
    pub fn from_cocycle(c: &Cocycle) -> CocycleJson {
        let mut maps = Vec::new();
        for (&(i, j), m) in &c.maps {
            for (&x, &g) in m {
                maps.push((
                    i,
                    j,
                    c.cover.base[x].clone(),
                    c.target.morphism_id(g).to_string(),
                ));
            }
        }
        CocycleJson {
            base: c.cover.base.clone(),
            pieces: c.cover.pieces.iter().map(|p| p.iter().copied().collect()).collect(),
            target: GroupoidRef::Inline(GroupoidJson::from_groupoid(&c.target)),
            maps,
        }
    }

    pub fn to_cocycle(&self, dir: &Path) -> Result<Cocycle> {
        let target = self.target.resolve(dir)?;
        let cover = Cover::new(
            self.base.clone(),
            self.pieces.iter().map(|p| p.iter().copied().collect()).collect(),
        )?;
        let point_index: BTreeMap<&str, usize> =
            self.base.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let mut maps: BTreeMap<(usize, usize), BTreeMap<usize, usize>> = BTreeMap::new();
        for (i, j, x, g) in &self.maps {
            let xi = point_index
                .get(x.as_str())
                .copied()
                .ok_or_else(|| Error::Schema(format!("unknown base point {x}")))?;
            maps.entry((*i, *j)).or_default().insert(xi, target.morphism_index(g)?);
        }
        validate_cocycle(cover, target, maps)
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct ComplexJson {
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<usize>>,
}

impl ComplexJson {
    pub fn from_complex(k: &SimplicialComplex) -> ComplexJson {
        // Facets are the simplices not contained in any larger one.
        let mut facets = Vec::new();
        for (d, level) in k.simplices.iter().enumerate() {
            for s in level {
                let set: BTreeSet<usize> = s.iter().copied().collect();
                let covered = k
                    .simplices
                    .get(d + 1)
                    .map(|up| {
                        up.iter().any(|t| set.iter().all(|v| t.contains(v)))
                    })
                    .unwrap_or(false);
                if !covered {
                    facets.push(s.clone());
                }
            }
        }
        ComplexJson { vertices: k.vertices.clone(), facets }
    }

    pub fn to_complex(&self) -> Result<SimplicialComplex> {
        SimplicialComplex::new(
            self.vertices.clone(),
            self.facets.iter().map(|f| f.iter().copied().collect()).collect(),
        )
    }
}

/// A simplicial action of the cyclic group generated by one vertex
/// permutation.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct ActionJson {
    pub complex: ComplexJson,
    pub generator: Vec<usize>,
}

impl ActionJson {
    pub fn from_action(sa: &SimplicialAction) -> ActionJson {
        let generator = if sa.action.len() > 1 {
            sa.action[1].clone()
        } else {
            (0..sa.complex.vertices.len()).collect()
        };
        ActionJson { complex: ComplexJson::from_complex(&sa.complex), generator }
    }

    pub fn to_action(&self) -> Result<SimplicialAction> {
        let k = self.complex.to_complex()?;
        let nv = k.vertices.len();
        if self.generator.len() != nv {
            return Err(Error::Schema("generator must permute the vertices".into()));
        }
        // Order of the permutation.
        let mut perms = vec![(0..nv).collect::<Vec<usize>>()];
        loop {
            let prev = perms.last().unwrap();
            let next: Vec<usize> = (0..nv).map(|v| self.generator[prev[v]]).collect();
            if next == perms[0] {
                break;
            }
            perms.push(next);
            if perms.len() > nv {
                return Err(Error::Schema("generator is not a permutation".into()));
            }
        }
        let group = FiniteGroup::cyclic(perms.len());
        SimplicialAction::new(group, k, perms)
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct HomologyJson {
    pub n: usize,
    pub rank: usize,
    pub torsion: Vec<String>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct PresentationJson {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<i64>>,
}

pub fn load_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Schema(format!("{}: {e}", path.display())))
}

pub fn to_pretty(value: &impl Serialize) -> String {
    serde_json::to_string_pretty(value).expect("serialization cannot fail")
}
