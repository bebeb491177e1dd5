use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::group::PermGroup;

/// An isomorphism between enumerated groups, as a map on element indices.
pub type ElementMap = Vec<u16>;

/// Cheap isomorphism invariants; equal for isomorphic groups.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    pub order: usize,
    pub element_orders: Vec<(u32, usize)>,
    pub centre: usize,
    pub derived: usize,
    pub classes: usize,
}

pub fn signature(g: &PermGroup) -> Signature {
    let mut hist: BTreeMap<u32, usize> = BTreeMap::new();
    for i in 0..g.order() {
        *hist.entry(g.element_order(i)).or_default() += 1;
    }
    Signature {
        order: g.order(),
        element_orders: hist.into_iter().collect(),
        centre: g.centre().len(),
        derived: g.derived_subgroup().len(),
        classes: conjugacy_classes(g).len(),
    }
}

/// Conjugacy classes of elements, each sorted, ordered by first element.
pub fn conjugacy_classes(g: &PermGroup) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let mut cls: Vec<usize> = (0..n).map(|h| g.conj(h, x)).collect();
        cls.sort_unstable();
        cls.dedup();
        for &y in &cls {
            seen[y] = true;
        }
        out.push(cls);
    }
    out
}

/// Enumerates isomorphisms `a -> b` by backtracking over images of a
/// generating set, constrained by element orders. Stops after `limit` maps.
pub fn isomorphisms(a: &PermGroup, b: &PermGroup, limit: Option<usize>) -> Vec<ElementMap> {
    if a.order() != b.order() {
        return Vec::new();
    }
    let gens = a.generating_set(&super::ElemSet::full(a.order()));
    let mut out = Vec::new();
    let mut images = Vec::with_capacity(gens.len());
    search(a, b, &gens, &mut images, limit, &mut out);
    out
}

pub fn iso_test(a: &PermGroup, b: &PermGroup) -> Option<ElementMap> {
    if a.order() != b.order() || signature(a) != signature(b) {
        return None;
    }
    isomorphisms(a, b, Some(1)).pop()
}

fn search(
    a: &PermGroup,
    b: &PermGroup,
    gens: &[usize],
    images: &mut Vec<usize>,
    limit: Option<usize>,
    out: &mut Vec<ElementMap>,
) {
    if limit.is_some_and(|l| out.len() >= l) {
        return;
    }
    let depth = images.len();
    if depth == gens.len() {
        if let Some(map) = extend(a, b, gens, images, true) {
            out.push(map);
        }
        return;
    }
    let want = a.element_order(gens[depth]);
    for y in 0..b.order() {
        if b.element_order(y) != want {
            continue;
        }
        images.push(y);
        if extend(a, b, &gens[..=depth], images, false).is_some() {
            search(a, b, gens, images, limit, out);
        }
        images.pop();
        if limit.is_some_and(|l| out.len() >= l) {
            return;
        }
    }
}

/// Extends generator images to a homomorphism on the generated subgroup,
/// returning `None` on inconsistency or non-injectivity. With `total`, the map
/// must cover all of `a`.
fn extend(
    a: &PermGroup,
    b: &PermGroup,
    gens: &[usize],
    images: &[usize],
    total: bool,
) -> Option<ElementMap> {
    const UNSET: u16 = u16::MAX;
    let mut map = vec![UNSET; a.order()];
    let mut hit = vec![false; b.order()];
    map[0] = 0;
    hit[0] = true;
    let mut queue = vec![0usize];
    let mut cursor = 0;
    while cursor < queue.len() {
        let x = queue[cursor];
        cursor += 1;
        for (&g, &img) in gens.iter().zip(images) {
            let y = a.mul(x, g);
            let fy = b.mul(map[x] as usize, img);
            if map[y] == UNSET {
                if hit[fy] {
                    return None;
                }
                map[y] = fy as u16;
                hit[fy] = true;
                queue.push(y);
            } else if map[y] as usize != fy {
                return None;
            }
        }
    }
    if total && queue.len() != a.order() {
        return None;
    }
    Some(map)
}

/// `Out(H)` with explicit coset representatives in `Aut(H)`.
#[derive(Debug)]
pub struct OutGroup {
    pub base: Arc<PermGroup>,
    pub aut_order: usize,
    pub inner_order: usize,
    /// One automorphism per outer class, the lexicographically smallest.
    pub out_elements: Vec<ElementMap>,
    /// `table[i][j]` is the class of `out_elements[i] ∘ out_elements[j]`.
    pub table: Vec<Vec<usize>>,
    pub inverse: Vec<usize>,
    class_of: HashMap<ElementMap, usize>,
}

impl OutGroup {
    pub fn order(&self) -> usize {
        self.out_elements.len()
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    /// The outer class of an arbitrary automorphism of the base group.
    pub fn class_of(&self, aut: &ElementMap) -> Option<usize> {
        self.class_of.get(aut).copied()
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut x = i;
        let mut k = 1;
        while x != 0 {
            x = self.table[x][i];
            k += 1;
        }
        if i == 0 {
            1
        } else {
            k
        }
    }
}

pub fn automorphisms(h: &Arc<PermGroup>) -> OutGroup {
    let mut auts = isomorphisms(h, h, None);
    auts.sort();
    let n = h.order();
    let inner: Vec<ElementMap> = {
        let mut v: Vec<ElementMap> = (0..n)
            .map(|g| (0..n).map(|x| h.conj(g, x) as u16).collect())
            .collect();
        v.sort();
        v.dedup();
        v
    };
    let compose = |f: &ElementMap, g: &ElementMap| -> ElementMap {
        g.iter().map(|&x| f[x as usize]).collect()
    };
    let mut class_of: HashMap<ElementMap, usize> = HashMap::new();
    let mut out_elements = Vec::new();
    for a in &auts {
        if class_of.contains_key(a) {
            continue;
        }
        let cls = out_elements.len();
        out_elements.push(a.clone());
        for c in &inner {
            class_of.insert(compose(a, c), cls);
        }
    }
    let m = out_elements.len();
    let table: Vec<Vec<usize>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| class_of[&compose(&out_elements[i], &out_elements[j])])
                .collect()
        })
        .collect();
    let inverse = (0..m)
        .map(|i| (0..m).find(|&j| table[i][j] == 0).unwrap())
        .collect();
    OutGroup {
        base: Arc::clone(h),
        aut_order: auts.len(),
        inner_order: inner.len(),
        out_elements,
        table,
        inverse,
        class_of,
    }
}

/// Conventional name for small groups, e.g. `C3`, `V4`, `S3`, `A4`, `D10`.
pub fn recognize(g: &PermGroup) -> Option<String> {
    let sig = signature(g);
    let n = sig.order;
    let count = |k: u32| {
        sig.element_orders
            .iter()
            .find(|(o, _)| *o == k)
            .map_or(0, |(_, c)| *c)
    };
    let abelian = sig.centre == n;
    if n == 1 {
        return Some("1".into());
    }
    if count(n as u32) > 0 {
        return Some(format!("C{n}"));
    }
    if abelian {
        // Product of cyclic factors from the exponent structure of small cases.
        let elementary = sig.element_orders.iter().all(|&(o, _)| o <= 2);
        if n == 4 {
            return Some("V4".into());
        }
        if elementary {
            return Some(vec!["C2"; n.trailing_zeros() as usize].join("x"));
        }
        return match n {
            8 => Some("C2xC4".into()),
            9 => Some("C3xC3".into()),
            12 => Some("C2xC6".into()),
            16 if count(8) > 0 => Some("C2xC8".into()),
            16 if count(2) == 3 => Some("C4xC4".into()),
            16 => Some("C2xC2xC4".into()),
            18 => Some("C3xC6".into()),
            _ => None,
        };
    }
    let involutions = count(2);
    if n % 2 == 0 && is_odd_prime(n / 2) && involutions == n / 2 {
        return Some(if n == 6 { "S3".into() } else { format!("D{n}") });
    }
    if n == 8 {
        return Some(if involutions == 5 { "D8".into() } else { "Q8".into() });
    }
    if n == 12 {
        return match involutions {
            3 if count(3) == 8 => Some("A4".into()),
            7 => Some("D12".into()),
            1 => Some("C3:C4".into()),
            _ => None,
        };
    }
    if n == 24 && involutions == 9 && count(4) == 6 && sig.centre == 1 {
        return Some("S4".into());
    }
    if n == 60 && sig.derived == 60 {
        return Some("A5".into());
    }
    if n == 120 && sig.centre == 1 && sig.derived == 60 {
        return Some("S5".into());
    }
    if n % 2 == 0 && involutions == n / 2 + 1 && n % 4 == 0 && sig.centre == 2 {
        return Some(format!("D{n}"));
    }
    None
}

fn is_odd_prime(p: usize) -> bool {
    p > 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Isomorphism classes met so far, keyed by signature and split by explicit
/// isomorphism tests on collisions.
#[derive(Default, Debug)]
pub struct IsoRegistry {
    classes: Vec<(Signature, Arc<PermGroup>, String)>,
}

impl IsoRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Class index of `g`, registering a new class when needed.
    pub fn classify(&mut self, g: &Arc<PermGroup>) -> usize {
        let sig = signature(g);
        for (i, (s, rep, _)) in self.classes.iter().enumerate() {
            if *s == sig && isomorphisms(rep, g, Some(1)).len() == 1 {
                return i;
            }
        }
        let base = recognize(g).unwrap_or_else(|| format!("G{}", sig.order));
        let clashes = self.classes.iter().filter(|(_, _, n)| n.split('#').next() == Some(&base)).count();
        let name = if clashes == 0 {
            base
        } else {
            format!("{base}#{}", clashes + 1)
        };
        self.classes.push((sig, Arc::clone(g), name));
        self.classes.len() - 1
    }

    pub fn find(&self, g: &PermGroup) -> Option<usize> {
        let sig = signature(g);
        self.classes
            .iter()
            .position(|(s, rep, _)| *s == sig && isomorphisms(rep, g, Some(1)).len() == 1)
    }

    pub fn name(&self, class: usize) -> &str {
        &self.classes[class].2
    }

    pub fn rep(&self, class: usize) -> &Arc<PermGroup> {
        &self.classes[class].1
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}
