//! The biset category on the subquotients of a group, with cached essential
//! quotients, outer automorphism data and the algebra `kB(G, G)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::burnside::{AlgebraTable, BisetCategory};
use crate::error::{Error, Result};
use crate::essential::HomBar;
use crate::functor::{self, Evaluation};
use crate::groups::{automorphisms, iso_test, subquotient_order, IsoRegistry, OutGroup, PermGroup, SubquotientOrder};
use crate::rep::{qout_simples, OutSimple};
use crate::linalg::{QMatrix, Subspace};

/// One isomorphism class of subquotients of `G`.
#[derive(Debug)]
pub struct Subquotient {
    pub name: String,
    pub group: Arc<PermGroup>,
    pub out: OutGroup,
    pub simples: Vec<OutSimple>,
}

/// A pair `(H, V)`: a subquotient class and a rational simple `kOut(H)`-module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleLabel {
    pub h: usize,
    pub v: usize,
}

/// `Σ(G)`: objects are the subquotient classes of `G`, sorted by order then
/// name, so `G` itself is last.
pub struct Sigma {
    pub group_name: String,
    pub cat: BisetCategory,
    pub classes: Vec<Subquotient>,
    below: Vec<Vec<bool>>,
    hombars: Vec<OnceLock<std::result::Result<Arc<HomBar>, String>>>,
    table: OnceLock<std::result::Result<Arc<AlgebraTable>, String>>,
    radical: OnceLock<Arc<Subspace>>,
    left_actions: Vec<OnceLock<std::result::Result<Arc<Vec<QMatrix>>, String>>>,
    evals: Vec<OnceLock<std::result::Result<Arc<Evaluation>, String>>>,
    label_offsets: Vec<usize>,
}

impl fmt::Debug for Sigma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Sigma")
            .field("group", &self.group_name)
            .field("classes", &self.classes.iter().map(|c| &c.name).collect::<Vec<_>>())
            .finish()
    }
}

impl Sigma {
    pub fn new(group_name: &str, g: Arc<PermGroup>) -> Result<Self> {
        let mut registry = IsoRegistry::new();
        let mut reps: HashMap<usize, Arc<PermGroup>> = HashMap::new();
        let mut top = None;
        for s in &g.lattice().sections {
            let cls = registry.classify(&s.quotient);
            reps.entry(cls).or_insert_with(|| s.quotient.clone());
            if s.quotient.order() == g.order() {
                top = Some(cls);
            }
        }
        let top = top.expect("the section (G, 1)");
        reps.insert(top, g.clone());
        let mut order: Vec<usize> = reps.keys().copied().collect();
        order.sort_by(|&a, &b| {
            reps[&a]
                .order()
                .cmp(&reps[&b].order())
                .then_with(|| registry.name(a).cmp(registry.name(b)))
        });
        let mut classes = Vec::new();
        for cls in order {
            let group = reps[&cls].clone();
            let out = automorphisms(&group);
            let simples = qout_simples(&out)?;
            classes.push(Subquotient {
                name: registry.name(cls).to_string(),
                group,
                out,
                simples,
            });
        }
        let n = classes.len();
        let below = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| subquotient_order(&classes[x].group, &classes[y].group) == SubquotientOrder::Strict)
                    .collect()
            })
            .collect();
        let cat = BisetCategory::new(classes.iter().map(|c| (c.name.clone(), c.group.clone())).collect());
        let mut label_offsets = vec![0];
        for c in &classes {
            label_offsets.push(label_offsets.last().unwrap() + c.simples.len());
        }
        Ok(Sigma {
            group_name: group_name.to_string(),
            cat,
            classes,
            below,
            hombars: (0..n * n).map(|_| OnceLock::new()).collect(),
            table: OnceLock::new(),
            radical: OnceLock::new(),
            left_actions: (0..n).map(|_| OnceLock::new()).collect(),
            evals: (0..label_offsets[n]).map(|_| OnceLock::new()).collect(),
            label_offsets,
        })
    }

    pub fn top(&self) -> usize {
        self.classes.len() - 1
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_by_name(&self, name: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.name == name)
    }

    /// `x ⊏ y`.
    pub fn strictly_below(&self, x: usize, y: usize) -> bool {
        self.below[x][y]
    }

    pub fn proper_subquotients(&self, h: usize) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.below[x][h]).collect()
    }

    /// All labels `(H, V)` in canonical order: by subquotient, then simple.
    pub fn labels(&self) -> Vec<SimpleLabel> {
        (0..self.len())
            .flat_map(|h| (0..self.classes[h].simples.len()).map(move |v| SimpleLabel { h, v }))
            .collect()
    }

    pub fn label_by_names(&self, h: &str, v: &str) -> Option<SimpleLabel> {
        let hi = self.class_by_name(h)?;
        let vi = self.classes[hi].simples.iter().position(|s| s.name == v)?;
        Some(SimpleLabel { h: hi, v: vi })
    }

    pub fn label_name(&self, l: SimpleLabel) -> (String, String) {
        let c = &self.classes[l.h];
        (c.name.clone(), c.simples[l.v].name.clone())
    }

    pub fn simple(&self, l: SimpleLabel) -> &OutSimple {
        &self.classes[l.h].simples[l.v]
    }

    pub fn hombar(&self, source: usize, target: usize) -> Result<Arc<HomBar>> {
        self.hombars[source * self.len() + target]
            .get_or_init(|| {
                HomBar::new(&self.cat, source, target, &self.proper_subquotients(source))
                    .map(Arc::new)
                    .map_err(|e| e.to_string())
            })
            .clone()
            .map_err(Error::InvalidData)
    }

    pub fn algebra(&self) -> Result<Arc<AlgebraTable>> {
        self.table
            .get_or_init(|| {
                let top = self.top();
                let basis = self.cat.basis(top, top).map_err(|e| e.to_string())?;
                AlgebraTable::from_basis(self.group_name.clone(), &basis)
                    .map(Arc::new)
                    .map_err(|e| e.to_string())
            })
            .clone()
            .map_err(Error::InvalidData)
    }

    /// Seeds the algebra table, e.g. from a cache.
    pub fn set_algebra(&self, table: AlgebraTable) -> bool {
        self.table.set(Ok(Arc::new(table))).is_ok()
    }

    /// The algebra table if it has already been computed or seeded.
    pub fn algebra_if_ready(&self) -> Option<Arc<AlgebraTable>> {
        self.table.get().and_then(|t| t.as_ref().ok().cloned())
    }

    pub fn radical(&self) -> Result<Arc<Subspace>> {
        let table = self.algebra()?;
        Ok(self
            .radical
            .get_or_init(|| Arc::new(crate::rep::radical_of_algebra(&table)))
            .clone())
    }

    pub fn label_index(&self, l: SimpleLabel) -> usize {
        self.label_offsets[l.h] + l.v
    }

    /// Left action of every basis element of `kB(G, G)` on `Hom-bar(H, G)`.
    pub fn hombar_left_action(&self, h: usize) -> Result<Arc<Vec<QMatrix>>> {
        self.left_actions[h]
            .get_or_init(|| functor::hombar_left_action(self, h).map(Arc::new).map_err(|e| e.to_string()))
            .clone()
            .map_err(Error::InvalidData)
    }

    /// `Δ_{H,V}(G)` and `S_{H,V}(G)`.
    pub fn evaluation(&self, l: SimpleLabel) -> Result<Arc<Evaluation>> {
        self.evals[self.label_index(l)]
            .get_or_init(|| functor::evaluate(self, l).map(Arc::new).map_err(|e| e.to_string()))
            .clone()
            .map_err(Error::InvalidData)
    }

    /// An embedding of the class `h` into `G` as a subgroup, when one exists.
    pub fn subgroup_embedding(&self, h: usize) -> Option<Vec<usize>> {
        let g = &self.classes[self.top()].group;
        let target = &self.classes[h].group;
        for class in &g.lattice().classes {
            let sub = &g.lattice().subgroups[class.rep];
            if sub.order() != target.order() {
                continue;
            }
            let (grp, embed) = g.subgroup_as_group(&sub.elements);
            if let Some(map) = iso_test(target, &grp) {
                return Some(map.iter().map(|&x| embed[x as usize]).collect());
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::essential::is_out_group_algebra;
    use crate::groups::parse_group;

    fn sigma(text: &str) -> Sigma {
        Sigma::new(text, Arc::new(parse_group(text, 400).unwrap())).unwrap()
    }

    #[test]
    fn classes_of_a4() {
        let s = sigma("A4");
        let names: Vec<&str> = s.classes.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, vec!["1", "C2", "C3", "V4", "A4"]);
        assert!(s.strictly_below(2, 4));
        assert!(!s.strictly_below(1, 2));
    }

    #[test]
    fn hombar_dimensions() {
        let s = sigma("A4");
        for h in 0..s.len() {
            let hb = s.hombar(h, h).unwrap();
            assert_eq!(hb.dim(), s.classes[h].out.order(), "{}", s.classes[h].name);
            assert!(is_out_group_algebra(&s.cat, &hb, &s.classes[h].out).unwrap());
        }
        assert_eq!(s.hombar(0, 0).unwrap().ideal.dim(), 0);
    }

    #[test]
    fn out_action_is_an_antihomomorphism() {
        let s = sigma("A4");
        let v4 = s.class_by_name("V4").unwrap();
        let hb = s.hombar(v4, s.top()).unwrap();
        let out = &s.classes[v4].out;
        let acts = hb.out_action(&s.cat, out).unwrap();
        assert_eq!(acts[0], crate::linalg::QMatrix::identity(hb.dim()));
        for a in 0..out.order() {
            for b in 0..out.order() {
                assert_eq!(acts[out.mul(a, b)], acts[b].mul(&acts[a]));
            }
        }
    }

    #[test]
    fn a4_into_a5() {
        let s = sigma("A5");
        let a4 = s.class_by_name("A4").unwrap();
        // Free of rank one over kOut(A4).
        assert_eq!(s.hombar(a4, s.top()).unwrap().dim(), 2);
        assert!(s.subgroup_embedding(a4).is_some());
    }
}
