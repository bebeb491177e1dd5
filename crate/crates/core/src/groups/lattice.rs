use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use super::elemset::ElemSet;
use super::group::PermGroup;
use super::perm::Perm;

/// One subgroup of an enumerated group.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub elements: ElemSet,
    pub generators: Vec<usize>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// A conjugacy class of subgroups; `rep` has the minimal sorted element list.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub rep: usize,
    pub members: Vec<usize>,
    pub normalizer: ElemSet,
}

/// A section `(P, K)` with `K` normal in `P`, taken up to conjugacy.
///
/// `quotient` realizes `P/K` by its action on the cosets of `K`; `projection`
/// sends each element of `P` (indexed in the ambient group) to its image in the
/// quotient and is `None` outside `P`.
#[derive(Debug)]
pub struct SectionClass {
    pub top: usize,
    pub bottom: usize,
    pub quotient: Arc<PermGroup>,
    pub projection: Vec<Option<u16>>,
    /// `N_G(P) ∩ N_G(K)` for the representative.
    pub normalizer: ElemSet,
    pub normalizer_gens: Vec<usize>,
    /// For each quotient element, the set of ambient elements mapping to it.
    pub fibres: Vec<ElemSet>,
}

impl SectionClass {
    pub fn quotient_order(&self) -> usize {
        self.quotient.order()
    }
}

/// Subgroups, their conjugacy classes and all sections of a group.
#[derive(Debug)]
pub struct Lattice {
    pub subgroups: Vec<Subgroup>,
    pub subgroup_index: HashMap<ElemSet, usize>,
    pub classes: Vec<SubgroupClass>,
    pub class_of: Vec<usize>,
    pub sections: Vec<SectionClass>,
    /// Every section `(P, K)` (by subgroup indices) mapped to its class and an
    /// element `c` with `c (P, K) c^-1` equal to the class representative.
    pub section_lookup: HashMap<(usize, usize), (usize, usize)>,
}

impl Lattice {
    pub fn compute(group: &PermGroup) -> Lattice {
        let n = group.order();
        let mut subgroups: Vec<Subgroup> = Vec::new();
        let mut subgroup_index: HashMap<ElemSet, usize> = HashMap::new();
        let mut push = |set: ElemSet, gens: Vec<usize>, subgroups: &mut Vec<Subgroup>| {
            if !subgroup_index.contains_key(&set) {
                subgroup_index.insert(set.clone(), subgroups.len());
                subgroups.push(Subgroup {
                    elements: set,
                    generators: gens,
                });
                true
            } else {
                false
            }
        };

        push(ElemSet::from_indices(n, [0]), Vec::new(), &mut subgroups);
        let mut cyclic: Vec<(ElemSet, usize)> = Vec::new();
        let mut cyclic_seen = BTreeSet::new();
        for x in 1..n {
            let c = group.generate(&[x]);
            if cyclic_seen.insert(c.clone()) {
                cyclic.push((c.clone(), x));
                push(c, vec![x], &mut subgroups);
            }
        }
        // Every subgroup is a join of cyclic subgroups.
        let mut cursor = 1;
        while cursor < subgroups.len() {
            let base = subgroups[cursor].clone();
            cursor += 1;
            for (c, x) in &cyclic {
                if c.is_subset(&base.elements) {
                    continue;
                }
                let joined = group.extend_subgroup(&base.elements, &[*x]);
                let mut gens = base.generators.clone();
                gens.push(*x);
                push(joined, gens, &mut subgroups);
            }
        }

        // Re-sort subgroups canonically: by order, then element list.
        subgroups.sort_by(|a, b| {
            a.order()
                .cmp(&b.order())
                .then_with(|| a.elements.cmp(&b.elements))
        });
        let subgroup_index: HashMap<ElemSet, usize> = subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| (s.elements.clone(), i))
            .collect();
        for s in subgroups.iter_mut() {
            s.generators = group.generating_set(&s.elements);
        }

        let mut class_of = vec![usize::MAX; subgroups.len()];
        let mut classes = Vec::new();
        for i in 0..subgroups.len() {
            if class_of[i] != usize::MAX {
                continue;
            }
            let mut members = BTreeSet::new();
            let mut normalizer = ElemSet::empty(n);
            for g in 0..n {
                let c = group.conjugate_set(g, &subgroups[i].elements);
                let j = subgroup_index[&c];
                if j == i {
                    normalizer.insert(g);
                }
                members.insert(j);
            }
            // Sorted subgroups place the minimal member first.
            let rep = *members.iter().next().unwrap();
            debug_assert_eq!(rep, i);
            let cls = classes.len();
            for &m in &members {
                class_of[m] = cls;
            }
            classes.push(SubgroupClass {
                rep,
                members: members.into_iter().collect(),
                normalizer,
            });
        }

        let mut sections = Vec::new();
        let mut section_lookup = HashMap::new();
        for class in &classes {
            let p = class.rep;
            let p_set = &subgroups[p].elements;
            let p_gens = &subgroups[p].generators;
            let normals: Vec<usize> = (0..subgroups.len())
                .filter(|&k| group.is_normal(&subgroups[k].elements, p_set, p_gens))
                .collect();
            let mut done = BTreeSet::new();
            for &k in &normals {
                if done.contains(&k) {
                    continue;
                }
                // Orbit of K under N_G(P); subgroups are sorted so the first
                // member met in index order is minimal.
                let mut orbit = BTreeSet::new();
                for g in class.normalizer.iter() {
                    let c = group.conjugate_set(g, &subgroups[k].elements);
                    orbit.insert(subgroup_index[&c]);
                }
                let rep_k = *orbit.iter().next().unwrap();
                done.extend(orbit.iter().copied());
                sections.push((p, rep_k));
            }
        }
        sections.sort_by(|a, b| {
            let ka = (class_of[a.0], subgroups[a.1].order(), &subgroups[a.1].elements);
            let kb = (class_of[b.0], subgroups[b.1].order(), &subgroups[b.1].elements);
            ka.cmp(&kb)
        });
        let sections: Vec<SectionClass> = sections
            .into_iter()
            .map(|(p, k)| build_section(group, &subgroups, p, k))
            .collect();
        for (idx, s) in sections.iter().enumerate() {
            for g in 0..n {
                let p = subgroup_index[&group.conjugate_set(g, &subgroups[s.top].elements)];
                let k = subgroup_index[&group.conjugate_set(g, &subgroups[s.bottom].elements)];
                section_lookup.entry((p, k)).or_insert((idx, group.inv(g)));
            }
        }

        Lattice {
            subgroups,
            subgroup_index,
            classes,
            class_of,
            sections,
            section_lookup,
        }
    }

    pub fn subgroup_count(&self) -> usize {
        self.subgroups.len()
    }

    pub fn class_rep(&self, class: usize) -> &Subgroup {
        &self.subgroups[self.classes[class].rep]
    }

    pub fn index_of(&self, set: &ElemSet) -> Option<usize> {
        self.subgroup_index.get(set).copied()
    }

    /// Section class of `(P, K)` and a conjugator to its representative.
    pub fn find_section(&self, p: &ElemSet, k: &ElemSet) -> Option<(usize, usize)> {
        let pi = self.index_of(p)?;
        let ki = self.index_of(k)?;
        self.section_lookup.get(&(pi, ki)).copied()
    }
}

fn build_section(group: &PermGroup, subgroups: &[Subgroup], p: usize, k: usize) -> SectionClass {
    let n = group.order();
    let p_set = &subgroups[p].elements;
    let k_set = &subgroups[k].elements;
    // Cosets xK of K in P, numbered by first appearance in index order.
    let mut coset_of = vec![usize::MAX; n];
    let mut coset_reps = Vec::new();
    for x in p_set.iter() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let id = coset_reps.len();
        coset_reps.push(x);
        for y in k_set.iter() {
            coset_of[group.mul(x, y)] = id;
        }
    }
    let m = coset_reps.len();
    let action = |g: usize| -> Perm {
        let images = coset_reps
            .iter()
            .map(|&r| coset_of[group.mul(g, r)])
            .collect();
        Perm::from_images(images).expect("coset action")
    };
    let gens: Vec<Perm> = subgroups[p].generators.iter().map(|&g| action(g)).collect();
    let quotient = if m == 1 {
        PermGroup::trivial()
    } else {
        PermGroup::closure(&gens, m).expect("quotient order")
    };
    let mut projection = vec![None; n];
    let mut fibres = vec![ElemSet::empty(n); quotient.order()];
    for x in p_set.iter() {
        let q = if m == 1 {
            0
        } else {
            quotient.index_of(&action(x)).expect("quotient element")
        };
        projection[x] = Some(q as u16);
        fibres[q].insert(x);
    }
    let mut normalizer = ElemSet::empty(n);
    for g in 0..n {
        if group.conjugate_set(g, p_set) == *p_set && group.conjugate_set(g, k_set) == *k_set {
            normalizer.insert(g);
        }
    }
    let normalizer_gens = group.generating_set(&normalizer);
    SectionClass {
        top: p,
        bottom: k,
        quotient: Arc::new(quotient),
        projection,
        normalizer,
        normalizer_gens,
        fibres,
    }
}
