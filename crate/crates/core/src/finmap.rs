//! Finite sets and total maps between them, with products, coproducts,
//! pullbacks, pushouts and brute-force universal-property checks.
//!
//! This is the concrete substrate every other module computes in: element
//! labels are plain strings, pair labels use the fixed `(x,y)` format so
//! that products and pullbacks are reproducible bit-exactly.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FinMapError {
    #[error("duplicate element `{0}` in set `{1}`")]
    DuplicateElement(String, String),
    #[error("element `{0}` is not a member of set `{1}`")]
    UnknownElement(String, String),
    #[error("map table is not total: no image for `{0}`")]
    NotTotal(String),
    #[error("target mismatch: `{0}` vs `{1}`")]
    TargetMismatch(String, String),
    #[error("source mismatch: `{0}` vs `{1}`")]
    SourceMismatch(String, String),
    #[error("square does not commute")]
    NotCommuting,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
}

/// A named finite set. Element labels are unique and stored in canonical
/// (lexicographic) order, so equal sets compare equal structurally.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FiniteSet {
    id: String,
    elements: Vec<String>,
}

impl FiniteSet {
    pub fn new(
        id: impl Into<String>,
        elements: impl IntoIterator<Item = impl Into<String>>,
    ) -> Result<Self, FinMapError> {
        let id = id.into();
        let mut elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        elements.sort();
        for w in elements.windows(2) {
            if w[0] == w[1] {
                return Err(FinMapError::DuplicateElement(w[0].clone(), id));
            }
        }
        Ok(FiniteSet { id, elements })
    }

    /// Canonical set of a given size with elements `x0..x{n-1}`.
    pub fn canonical(n: usize) -> Self {
        FiniteSet::new(format!("S{n}"), (0..n).map(|i| format!("x{i}"))).unwrap()
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn label(&self, idx: usize) -> &str {
        &self.elements[idx]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.elements.binary_search_by(|e| e.as_str().cmp(label)).ok()
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index_of(label).is_some()
    }
}

impl fmt::Display for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{{{}}}", self.id, self.elements.join(","))
    }
}

pub fn pair_label(x: &str, y: &str) -> String {
    format!("({x},{y})")
}

/// A total function between finite sets, stored as an index table against
/// the canonical element order of source and target.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteMap {
    source: FiniteSet,
    target: FiniteSet,
    table: Vec<usize>,
}

impl FiniteMap {
    pub fn from_fn(
        source: &FiniteSet,
        target: &FiniteSet,
        f: impl Fn(&str) -> String,
    ) -> Result<Self, FinMapError> {
        let mut table = Vec::with_capacity(source.len());
        for x in source.elements() {
            let y = f(x);
            let idx = target
                .index_of(&y)
                .ok_or_else(|| FinMapError::UnknownElement(y, target.id.clone()))?;
            table.push(idx);
        }
        Ok(FiniteMap { source: source.clone(), target: target.clone(), table })
    }

    pub fn from_pairs(
        source: &FiniteSet,
        target: &FiniteSet,
        pairs: &[(impl AsRef<str>, impl AsRef<str>)],
    ) -> Result<Self, FinMapError> {
        let mut assign: BTreeMap<&str, &str> = BTreeMap::new();
        for (x, y) in pairs {
            assign.insert(x.as_ref(), y.as_ref());
        }
        let mut table = Vec::with_capacity(source.len());
        for x in source.elements() {
            let y = assign
                .get(x.as_str())
                .ok_or_else(|| FinMapError::NotTotal(x.clone()))?;
            let idx = target
                .index_of(y)
                .ok_or_else(|| FinMapError::UnknownElement(y.to_string(), target.id.clone()))?;
            table.push(idx);
        }
        Ok(FiniteMap { source: source.clone(), target: target.clone(), table })
    }

    pub fn from_index_table(
        source: &FiniteSet,
        target: &FiniteSet,
        table: Vec<usize>,
    ) -> Result<Self, FinMapError> {
        if table.len() != source.len() {
            return Err(FinMapError::ShapeMismatch(format!(
                "table length {} vs source size {}",
                table.len(),
                source.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&i| i >= target.len()) {
            return Err(FinMapError::UnknownElement(format!("#{bad}"), target.id.clone()));
        }
        Ok(FiniteMap { source: source.clone(), target: target.clone(), table })
    }

    pub fn identity(set: &FiniteSet) -> Self {
        FiniteMap { source: set.clone(), target: set.clone(), table: (0..set.len()).collect() }
    }

    pub fn source(&self) -> &FiniteSet {
        &self.source
    }

    pub fn target(&self) -> &FiniteSet {
        &self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply_idx(&self, i: usize) -> usize {
        self.table[i]
    }

    pub fn apply(&self, x: &str) -> Option<&str> {
        self.source.index_of(x).map(|i| self.target.label(self.table[i]))
    }

    /// `self` followed by `g` (application order).
    pub fn then(&self, g: &FiniteMap) -> Result<FiniteMap, FinMapError> {
        if self.target != g.source {
            return Err(FinMapError::TargetMismatch(
                self.target.to_string(),
                g.source.to_string(),
            ));
        }
        let table = self.table.iter().map(|&i| g.table[i]).collect();
        Ok(FiniteMap { source: self.source.clone(), target: g.target.clone(), table })
    }

    /// Mathematical composition `g ∘ f`.
    pub fn compose(g: &FiniteMap, f: &FiniteMap) -> Result<FiniteMap, FinMapError> {
        f.then(g)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        self.table.iter().all(|&i| !std::mem::replace(&mut seen[i], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        for &i in &self.table {
            seen[i] = true;
        }
        seen.iter().all(|&b| b)
    }

    pub fn is_bijective(&self) -> bool {
        self.source.len() == self.target.len() && self.is_injective() && self.is_surjective()
    }

    pub fn image_indices(&self) -> BTreeSet<usize> {
        self.table.iter().copied().collect()
    }

    pub fn inverse(&self) -> Option<FiniteMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut table = vec![0; self.target.len()];
        for (i, &j) in self.table.iter().enumerate() {
            table[j] = i;
        }
        Some(FiniteMap { source: self.target.clone(), target: self.source.clone(), table })
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &str)> {
        self.source
            .elements()
            .iter()
            .zip(self.table.iter())
            .map(|(x, &i)| (x.as_str(), self.target.label(i)))
    }
}

impl fmt::Display for FiniteMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> =
            self.entries().map(|(x, y)| format!("{x}\u{2192}{y}")).collect();
        write!(f, "{}->{}[{}]", self.source.id, self.target.id, body.join(" "))
    }
}

/// Enumerate all total maps `source -> target` in lexicographic table order.
pub fn all_maps(source: &FiniteSet, target: &FiniteSet) -> Vec<FiniteMap> {
    let m = source.len();
    let n = target.len();
    if m == 0 {
        return vec![FiniteMap {
            source: source.clone(),
            target: target.clone(),
            table: Vec::new(),
        }];
    }
    if n == 0 {
        return Vec::new();
    }
    let total = n.checked_pow(m as u32).expect("map enumeration overflow");
    let mut out = Vec::with_capacity(total);
    let mut table = vec![0usize; m];
    loop {
        out.push(FiniteMap {
            source: source.clone(),
            target: target.clone(),
            table: table.clone(),
        });
        let mut k = m;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            table[k] += 1;
            if table[k] < n {
                break;
            }
            table[k] = 0;
        }
    }
}

/// Binary product with its two projections. Pair labels are `(x,y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Product {
    pub object: FiniteSet,
    pub pr1: FiniteMap,
    pub pr2: FiniteMap,
}

pub fn product(a: &FiniteSet, b: &FiniteSet) -> Product {
    let mut labels = Vec::with_capacity(a.len() * b.len());
    for x in a.elements() {
        for y in b.elements() {
            labels.push(pair_label(x, y));
        }
    }
    let object = FiniteSet::new(format!("prod({},{})", a.id, b.id), labels).unwrap();
    let pr1 = FiniteMap::from_fn(&object, a, |p| split_pair(p).0).unwrap();
    let pr2 = FiniteMap::from_fn(&object, b, |p| split_pair(p).1).unwrap();
    Product { object, pr1, pr2 }
}

/// Split a canonical pair label `(x,y)` at the comma that balances the
/// outermost parentheses, so nested pair labels survive round trips.
fn split_pair(label: &str) -> (String, String) {
    let inner = &label[1..label.len() - 1];
    let mut depth = 0usize;
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                return (inner[..i].to_string(), inner[i + 1..].to_string());
            }
            _ => {}
        }
    }
    panic!("malformed pair label `{label}`");
}

/// Pairing `⟨f,g⟩ : X -> A×B` into a previously constructed product.
pub fn pair_into(f: &FiniteMap, g: &FiniteMap, prod: &Product) -> Result<FiniteMap, FinMapError> {
    if f.source != g.source {
        return Err(FinMapError::SourceMismatch(
            f.source.to_string(),
            g.source.to_string(),
        ));
    }
    FiniteMap::from_fn(&f.source, &prod.object, |x| {
        pair_label(f.apply(x).unwrap(), g.apply(x).unwrap())
    })
}

/// Product of two maps acting componentwise.
pub fn map_product(f: &FiniteMap, g: &FiniteMap) -> (FiniteMap, Product, Product) {
    let dom = product(f.source(), g.source());
    let cod = product(f.target(), g.target());
    let fg = FiniteMap::from_fn(&dom.object, &cod.object, |p| {
        let (x, y) = split_pair(p);
        pair_label(f.apply(&x).unwrap(), g.apply(&y).unwrap())
    })
    .unwrap();
    (fg, dom, cod)
}

/// Binary coproduct (disjoint union) with injections. Labels are tagged
/// `l:x` / `r:y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coproduct {
    pub object: FiniteSet,
    pub inl: FiniteMap,
    pub inr: FiniteMap,
}

pub fn coproduct(a: &FiniteSet, b: &FiniteSet) -> Coproduct {
    let labels = a
        .elements()
        .iter()
        .map(|x| format!("l:{x}"))
        .chain(b.elements().iter().map(|y| format!("r:{y}")));
    let object = FiniteSet::new(format!("sum({},{})", a.id, b.id), labels).unwrap();
    let inl = FiniteMap::from_fn(a, &object, |x| format!("l:{x}")).unwrap();
    let inr = FiniteMap::from_fn(b, &object, |y| format!("r:{y}")).unwrap();
    Coproduct { object, inl, inr }
}

pub fn copair_from(
    f: &FiniteMap,
    g: &FiniteMap,
    cop: &Coproduct,
) -> Result<FiniteMap, FinMapError> {
    if f.target != g.target {
        return Err(FinMapError::TargetMismatch(
            f.target.to_string(),
            g.target.to_string(),
        ));
    }
    FiniteMap::from_fn(&cop.object, &f.target, |t| {
        if let Some(x) = t.strip_prefix("l:") {
            f.apply(x).unwrap().to_string()
        } else {
            g.apply(t.strip_prefix("r:").unwrap()).unwrap().to_string()
        }
    })
}

/// Pullback of `f : A -> B` and `v : B' -> B`, with projections to the two
/// feet. Element labels are `(a,b')`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pullback {
    pub object: FiniteSet,
    /// Projection to the source of `f`.
    pub pr1: FiniteMap,
    /// Projection to the source of `v`.
    pub pr2: FiniteMap,
}

pub fn pullback(f: &FiniteMap, v: &FiniteMap) -> Result<Pullback, FinMapError> {
    if f.target != v.target {
        return Err(FinMapError::TargetMismatch(
            f.target.to_string(),
            v.target.to_string(),
        ));
    }
    let mut labels = Vec::new();
    for (i, a) in f.source.elements().iter().enumerate() {
        for (j, b) in v.source.elements().iter().enumerate() {
            if f.table[i] == v.table[j] {
                labels.push(pair_label(a, b));
            }
        }
    }
    let object = FiniteSet::new(
        format!("pb({},{})", f.source.id, v.source.id),
        labels,
    )
    .unwrap();
    let pr1 = FiniteMap::from_fn(&object, &f.source, |p| split_pair(p).0).unwrap();
    let pr2 = FiniteMap::from_fn(&object, &v.source, |p| split_pair(p).1).unwrap();
    Ok(Pullback { object, pr1, pr2 })
}

/// Mediating map of a cone `(t1, t2)` into a constructed pullback.
pub fn into_pullback(
    t1: &FiniteMap,
    t2: &FiniteMap,
    pb: &Pullback,
) -> Result<FiniteMap, FinMapError> {
    if t1.source != t2.source {
        return Err(FinMapError::SourceMismatch(
            t1.source.to_string(),
            t2.source.to_string(),
        ));
    }
    FiniteMap::from_fn(&t1.source, &pb.object, |x| {
        pair_label(t1.apply(x).unwrap(), t2.apply(x).unwrap())
    })
}

/// Pushout of the span `f : A -> B`, `g : A -> C`: the quotient of `B ⊔ C`
/// identifying `f(a) ~ g(a)`. Class labels are the least tagged member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pushout {
    pub object: FiniteSet,
    /// Leg from the target of `f`.
    pub from_b: FiniteMap,
    /// Leg from the target of `g`.
    pub from_c: FiniteMap,
}

pub fn pushout(f: &FiniteMap, g: &FiniteMap) -> Result<Pushout, FinMapError> {
    if f.source != g.source {
        return Err(FinMapError::SourceMismatch(
            f.source.to_string(),
            g.source.to_string(),
        ));
    }
    let nb = f.target.len();
    let nc = g.target.len();
    let mut uf: Vec<usize> = (0..nb + nc).collect();
    fn find(uf: &mut Vec<usize>, i: usize) -> usize {
        if uf[i] != i {
            let r = find(uf, uf[i]);
            uf[i] = r;
            r
        } else {
            i
        }
    }
    for k in 0..f.source.len() {
        let b = f.table[k];
        let c = nb + g.table[k];
        let (rb, rc) = (find(&mut uf, b), find(&mut uf, c));
        if rb != rc {
            uf[rb] = rc;
        }
    }
    let tagged = |i: usize| -> String {
        if i < nb {
            format!("l:{}", f.target.label(i))
        } else {
            format!("r:{}", g.target.label(i - nb))
        }
    };
    // class label = lexicographically least tagged member
    let mut class_label: BTreeMap<usize, String> = BTreeMap::new();
    for i in 0..nb + nc {
        let r = find(&mut uf, i);
        let lab = tagged(i);
        class_label
            .entry(r)
            .and_modify(|cur| {
                if lab < *cur {
                    *cur = lab.clone();
                }
            })
            .or_insert(lab);
    }
    let object = FiniteSet::new(
        format!("po({},{})", f.target.id, g.target.id),
        class_label.values().cloned().collect::<Vec<_>>(),
    )
    .unwrap();
    let roots: Vec<usize> = (0..nb + nc).map(|i| find(&mut uf, i)).collect();
    let from_b = FiniteMap::from_fn(&f.target, &object, |x| {
        let i = f.target.index_of(x).unwrap();
        class_label[&roots[i]].clone()
    })
    .unwrap();
    let from_c = FiniteMap::from_fn(&g.target, &object, |y| {
        let j = nb + g.target.index_of(y).unwrap();
        class_label[&roots[j]].clone()
    })
    .unwrap();
    Ok(Pushout { object, from_b, from_c })
}

/// Mediating map out of a constructed pushout, for a cocone `(t, t')`.
pub fn from_pushout(
    t: &FiniteMap,
    t2: &FiniteMap,
    po: &Pushout,
) -> Result<FiniteMap, FinMapError> {
    if t.target != t2.target {
        return Err(FinMapError::TargetMismatch(
            t.target.to_string(),
            t2.target.to_string(),
        ));
    }
    let mut table = vec![usize::MAX; po.object.len()];
    for (i, &cls) in po.from_b.table.iter().enumerate() {
        table[cls] = t.table[i];
    }
    for (j, &cls) in po.from_c.table.iter().enumerate() {
        table[cls] = t2.table[j];
    }
    if table.iter().any(|&x| x == usize::MAX) {
        return Err(FinMapError::ShapeMismatch("pushout class not covered".into()));
    }
    FiniteMap::from_index_table(&po.object, &t.target, table)
}

/// A commutative square candidate:
///
/// ```text
///        top
///    A' -----> B'
///    |         |
///  left        right
///    v         v
///    A  -----> B
///       bottom
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareData {
    pub top: FiniteMap,
    pub left: FiniteMap,
    pub bottom: FiniteMap,
    pub right: FiniteMap,
}

impl SquareData {
    pub fn new(
        top: FiniteMap,
        left: FiniteMap,
        bottom: FiniteMap,
        right: FiniteMap,
    ) -> Result<Self, FinMapError> {
        if top.source != left.source {
            return Err(FinMapError::ShapeMismatch("top/left corner".into()));
        }
        if left.target != bottom.source {
            return Err(FinMapError::ShapeMismatch("left/bottom corner".into()));
        }
        if top.target != right.source {
            return Err(FinMapError::ShapeMismatch("top/right corner".into()));
        }
        if bottom.target != right.target {
            return Err(FinMapError::ShapeMismatch("bottom/right corner".into()));
        }
        Ok(SquareData { top, left, bottom, right })
    }

    pub fn commutes(&self) -> bool {
        self.left.then(&self.bottom).unwrap() == self.top.then(&self.right).unwrap()
    }
}

/// Decide whether a commuting square is a pushout, by brute force over all
/// candidate cocones into sets of size up to `|B| + |A'|` (any colimit in
/// finite sets is a quotient of the disjoint union of the inputs).
pub fn is_pushout(sq: &SquareData) -> Result<bool, FinMapError> {
    if !sq.commutes() {
        return Err(FinMapError::NotCommuting);
    }
    let a = sq.left.target.clone(); // A
    let bp = sq.top.target.clone(); // B'
    let b = sq.bottom.target.clone(); // B
    let bound = b.len() + sq.top.source.len();
    for z in 0..=bound {
        let zset = FiniteSet::canonical(z);
        // Enumerate cocones (t : A -> Z, t' : B' -> Z) with t∘left = t'∘top,
        // generating t freely and solving for the forced part of t'.
        for t in all_maps(&a, &zset) {
            let mut forced = vec![usize::MAX; bp.len()];
            let mut ok = true;
            for i in 0..sq.top.source.len() {
                let via_a = t.table[sq.left.table[i]];
                let j = sq.top.table[i];
                if forced[j] == usize::MAX {
                    forced[j] = via_a;
                } else if forced[j] != via_a {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            let free: Vec<usize> =
                (0..bp.len()).filter(|&j| forced[j] == usize::MAX).collect();
            if z == 0 && !free.is_empty() {
                continue;
            }
            let mut assign = vec![0usize; free.len()];
            loop {
                let mut tp_table = forced.clone();
                for (k, &j) in free.iter().enumerate() {
                    tp_table[j] = assign[k];
                }
                let tp = FiniteMap::from_index_table(&bp, &zset, tp_table).unwrap();
                if count_pushout_mediators(sq, &t, &tp, &zset) != 1 {
                    return Ok(false);
                }
                // advance assignment
                let mut k = free.len();
                loop {
                    if k == 0 {
                        break;
                    }
                    k -= 1;
                    assign[k] += 1;
                    if assign[k] < z {
                        break;
                    }
                    assign[k] = 0;
                }
                if free.is_empty() || assign.iter().all(|&x| x == 0) {
                    break;
                }
            }
        }
    }
    Ok(true)
}

fn count_pushout_mediators(
    sq: &SquareData,
    t: &FiniteMap,
    tp: &FiniteMap,
    zset: &FiniteSet,
) -> usize {
    // mediators m : B -> Z with m∘bottom = t and m∘right = t'
    let b = &sq.bottom.target;
    let mut forced = vec![usize::MAX; b.len()];
    for (i, &bi) in sq.bottom.table.iter().enumerate() {
        let want = t.table[i];
        if forced[bi] == usize::MAX {
            forced[bi] = want;
        } else if forced[bi] != want {
            return 0;
        }
    }
    for (j, &bj) in sq.right.table.iter().enumerate() {
        let want = tp.table[j];
        if forced[bj] == usize::MAX {
            forced[bj] = want;
        } else if forced[bj] != want {
            return 0;
        }
    }
    let n_free = forced.iter().filter(|&&x| x == usize::MAX).count();
    zset.len().pow(n_free as u32)
}

/// Decide whether `q` coequalizes the parallel pair `(f, g)` universally,
/// by brute force over candidate factorizations.
pub fn coequalizer_check(
    f: &FiniteMap,
    g: &FiniteMap,
    q: &FiniteMap,
) -> Result<bool, FinMapError> {
    if f.source != g.source || f.target != g.target {
        return Err(FinMapError::ShapeMismatch("parallel pair".into()));
    }
    if q.source != f.target {
        return Err(FinMapError::ShapeMismatch("coequalizer candidate source".into()));
    }
    if f.then(q).unwrap() != g.then(q).unwrap() {
        return Ok(false);
    }
    let b = &f.target;
    for z in 0..=b.len() + 2 {
        let zset = FiniteSet::canonical(z);
        for t in all_maps(b, &zset) {
            if f.then(&t).unwrap() != g.then(&t).unwrap() {
                continue;
            }
            // count u : Q -> Z with u∘q = t
            let mut forced = vec![usize::MAX; q.target.len()];
            let mut ok = true;
            for (i, &qi) in q.table.iter().enumerate() {
                if forced[qi] == usize::MAX {
                    forced[qi] = t.table[i];
                } else if forced[qi] != t.table[i] {
                    ok = false;
                    break;
                }
            }
            if !ok {
                return Ok(false);
            }
            let n_free = forced.iter().filter(|&&x| x == usize::MAX).count();
            if z.pow(n_free as u32) != 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Brute-force verification that a constructed pullback satisfies the
/// universal property against every cone with apex of size `<= apex_cap`.
/// Test-suite oracle; independent of the pullback construction itself.
pub fn pullback_universal_property(
    f: &FiniteMap,
    v: &FiniteMap,
    pb: &Pullback,
    apex_cap: usize,
) -> bool {
    for z in 0..=apex_cap {
        let zset = FiniteSet::canonical(z);
        for t1 in all_maps(&zset, f.source()) {
            for t2 in all_maps(&zset, v.source()) {
                if t1.then(f).unwrap() != t2.then(v).unwrap() {
                    continue;
                }
                let mediators: Vec<FiniteMap> = all_maps(&zset, &pb.object)
                    .into_iter()
                    .filter(|m| {
                        m.then(&pb.pr1).unwrap() == t1 && m.then(&pb.pr2).unwrap() == t2
                    })
                    .collect();
                if mediators.len() != 1 {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(id: &str, els: &[&str]) -> FiniteSet {
        FiniteSet::new(id, els.iter().copied()).unwrap()
    }

    #[test]
    fn canonical_ordering_makes_sets_structurally_equal() {
        let a = set("A", &["b", "a", "c"]);
        let b = set("A", &["c", "b", "a"]);
        assert_eq!(a, b);
        assert_eq!(a.elements(), &["a", "b", "c"]);
    }

    #[test]
    fn duplicate_elements_rejected() {
        assert!(matches!(
            FiniteSet::new("A", ["x", "x"]),
            Err(FinMapError::DuplicateElement(..))
        ));
    }

    #[test]
    fn product_with_singleton_is_relabeling() {
        let a = set("A", &["0", "1"]);
        let b = set("B", &["a"]);
        let p = product(&a, &b);
        assert_eq!(p.object.elements(), &["(0,a)", "(1,a)"]);
    }

    #[test]
    fn product_with_empty_factor_is_empty() {
        let a = set("A", &[]);
        let b = set("B", &["a", "b"]);
        assert!(product(&a, &b).object.is_empty());
    }

    #[test]
    fn product_two_by_two() {
        let a = set("A", &["0", "1"]);
        let b = set("B", &["a", "b"]);
        let p = product(&a, &b);
        assert_eq!(p.object.len(), 4);
        assert!(p.pr1.is_surjective());
        assert!(p.pr2.is_surjective());
    }

    #[test]
    fn pullback_along_identity_is_iso_to_other_foot() {
        let b = set("B", &["u", "v"]);
        let bp = set("Bp", &["p", "q", "r"]);
        let v = FiniteMap::from_pairs(&bp, &b, &[("p", "u"), ("q", "u"), ("r", "v")]).unwrap();
        let pb = pullback(&FiniteMap::identity(&b), &v).unwrap();
        assert_eq!(pb.object.len(), bp.len());
        assert!(pb.pr2.is_bijective());
    }

    #[test]
    fn pullback_of_two_maps_to_point() {
        let a = set("A", &["0", "1"]);
        let pt = set("pt", &["*"]);
        let f = FiniteMap::from_fn(&a, &pt, |_| "*".into()).unwrap();
        let pb = pullback(&f, &f).unwrap();
        assert_eq!(pb.object.len(), 4);
    }

    #[test]
    fn pullback_transfers_injectivity_and_surjectivity() {
        // f surjective, v an inclusion: projection to B' surjective,
        // projection to A injective.
        let a = set("A", &["0", "1", "2"]);
        let b = set("B", &["x", "y"]);
        let bp = set("Bp", &["x"]);
        let f =
            FiniteMap::from_pairs(&a, &b, &[("0", "x"), ("1", "x"), ("2", "y")]).unwrap();
        let v = FiniteMap::from_pairs(&bp, &b, &[("x", "x")]).unwrap();
        let pb = pullback(&f, &v).unwrap();
        assert!(pb.pr2.is_surjective());
        assert!(pb.pr1.is_injective());
        assert_eq!(
            pb.pr1.then(&f).unwrap(),
            pb.pr2.then(&v).unwrap()
        );
    }

    #[test]
    fn pullback_universal_property_brute_force() {
        let a = set("A", &["0", "1", "2"]);
        let b = set("B", &["x", "y"]);
        let bp = set("Bp", &["p", "q"]);
        let f =
            FiniteMap::from_pairs(&a, &b, &[("0", "x"), ("1", "x"), ("2", "y")]).unwrap();
        let v = FiniteMap::from_pairs(&bp, &b, &[("p", "x"), ("q", "y")]).unwrap();
        let pb = pullback(&f, &v).unwrap();
        assert!(pullback_universal_property(&f, &v, &pb, 4));
    }

    #[test]
    fn perfect_square_is_pushout() {
        // kernel-pair square of q : {0,1,2} -> {x,y}, q = {0,1 -> x, 2 -> y}
        let b = set("B", &["0", "1", "2"]);
        let q_tgt = set("Q", &["x", "y"]);
        let q = FiniteMap::from_pairs(&b, &q_tgt, &[("0", "x"), ("1", "x"), ("2", "y")])
            .unwrap();
        let pb = pullback(&q, &q).unwrap();
        assert_eq!(pb.object.len(), 5);
        let sq = SquareData::new(pb.pr2.clone(), pb.pr1.clone(), q.clone(), q.clone()).unwrap();
        assert!(is_pushout(&sq).unwrap());
    }

    #[test]
    fn identity_square_is_pushout() {
        let b = set("B", &["0", "1"]);
        let id = FiniteMap::identity(&b);
        let sq = SquareData::new(id.clone(), id.clone(), id.clone(), id).unwrap();
        assert!(is_pushout(&sq).unwrap());
    }

    #[test]
    fn pullback_square_with_non_epi_legs_is_not_pushout() {
        // inclusion of a point into a 2-point set, pulled back along itself:
        // a pullback square whose legs are not surjective fails the cocone test.
        let pt = set("P", &["p"]);
        let b = set("B", &["u", "v"]);
        let i = FiniteMap::from_pairs(&pt, &b, &[("p", "u")]).unwrap();
        let pb = pullback(&i, &i).unwrap();
        assert_eq!(pb.object.len(), 1);
        let sq = SquareData::new(pb.pr2.clone(), pb.pr1.clone(), i.clone(), i).unwrap();
        assert!(!is_pushout(&sq).unwrap());
    }

    #[test]
    fn coequalizer_of_kernel_pair() {
        let b = set("B", &["0", "1", "2"]);
        let q_tgt = set("Q", &["x", "y"]);
        let q = FiniteMap::from_pairs(&b, &q_tgt, &[("0", "x"), ("1", "x"), ("2", "y")])
            .unwrap();
        let pb = pullback(&q, &q).unwrap();
        assert!(coequalizer_check(&pb.pr1, &pb.pr2, &q).unwrap());
    }

    #[test]
    fn coequalizer_identity_pair() {
        let b = set("B", &["0", "1"]);
        let id = FiniteMap::identity(&b);
        assert!(coequalizer_check(&id, &id, &id).unwrap());
    }

    #[test]
    fn coequalizer_fails_for_non_universal_quotient() {
        // q composed with a non-injective map still coequalizes the kernel
        // pair of q but is not universal.
        let b = set("B", &["0", "1", "2"]);
        let q_tgt = set("Q", &["x", "y"]);
        let pt = set("pt", &["*"]);
        let q = FiniteMap::from_pairs(&b, &q_tgt, &[("0", "x"), ("1", "x"), ("2", "y")])
            .unwrap();
        let collapse = FiniteMap::from_fn(&q_tgt, &pt, |_| "*".into()).unwrap();
        let qc = q.then(&collapse).unwrap();
        let pb = pullback(&q, &q).unwrap();
        assert!(!coequalizer_check(&pb.pr1, &pb.pr2, &qc).unwrap());
    }

    #[test]
    fn pushout_construction_matches_brute_force_check() {
        let a = set("A", &["0", "1"]);
        let b = set("B", &["p", "q", "r"]);
        let c = set("C", &["s"]);
        let f = FiniteMap::from_pairs(&a, &b, &[("0", "p"), ("1", "q")]).unwrap();
        let g = FiniteMap::from_fn(&a, &c, |_| "s".into()).unwrap();
        let po = pushout(&f, &g).unwrap();
        assert_eq!(po.object.len(), 2); // {p,q,s} glued, {r}
        let sq = SquareData::new(g, f, po.from_b.clone(), po.from_c.clone()).unwrap();
        assert!(is_pushout(&sq).unwrap());
    }

    #[test]
    fn empty_set_admits_unique_maps_out() {
        let e = set("E", &[]);
        let b = set("B", &["x"]);
        assert_eq!(all_maps(&e, &b).len(), 1);
        assert_eq!(all_maps(&b, &e).len(), 0);
    }
}
