//! The shipped diptych instances: finite sets with injections/surjections,
//! its opposite, the truncated category of finite cardinals, and its
//! opposite. A deliberately broken finite-set variant (good epis := all
//! maps) serves as the negative control for the axiom suite.

use super::{Diptych, OutOfUniverse};
use crate::finmap::{self, FiniteMap, FiniteSet};
use std::fmt;

/// How the finite-set instance grades its good epis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EpiMode {
    Surjections,
    /// Negative control: accepts every map as a good epi.
    AllMaps,
}

/// Finite sets with injections as good monos. The universe is unbounded:
/// constructions never leave it.
#[derive(Debug, Clone)]
pub struct FinSet {
    epi_mode: EpiMode,
}

impl FinSet {
    pub fn new() -> Self {
        FinSet { epi_mode: EpiMode::Surjections }
    }

    pub fn broken_epis() -> Self {
        FinSet { epi_mode: EpiMode::AllMaps }
    }
}

impl Default for FinSet {
    fn default() -> Self {
        FinSet::new()
    }
}

impl Diptych for FinSet {
    type Obj = FiniteSet;
    type Arr = FiniteMap;

    fn name(&self) -> String {
        match self.epi_mode {
            EpiMode::Surjections => "finset".into(),
            EpiMode::AllMaps => "finset-bad-epi".into(),
        }
    }

    fn objects(&self, cap: usize) -> Vec<FiniteSet> {
        (0..=cap).map(FiniteSet::canonical).collect()
    }

    fn arrows_between(&self, a: &FiniteSet, b: &FiniteSet) -> Vec<FiniteMap> {
        finmap::all_maps(a, b)
    }

    fn source(&self, f: &FiniteMap) -> FiniteSet {
        f.source().clone()
    }

    fn target(&self, f: &FiniteMap) -> FiniteSet {
        f.target().clone()
    }

    fn identity(&self, a: &FiniteSet) -> FiniteMap {
        FiniteMap::identity(a)
    }

    fn compose(&self, g: &FiniteMap, f: &FiniteMap) -> FiniteMap {
        f.then(g).expect("composable arrows")
    }

    fn is_good_mono(&self, f: &FiniteMap) -> bool {
        f.is_injective()
    }

    fn is_good_epi(&self, f: &FiniteMap) -> bool {
        match self.epi_mode {
            EpiMode::Surjections => f.is_surjective(),
            EpiMode::AllMaps => true,
        }
    }

    fn is_iso(&self, f: &FiniteMap) -> bool {
        f.is_bijective()
    }

    fn product(
        &self,
        a: &FiniteSet,
        b: &FiniteSet,
    ) -> Result<(FiniteSet, FiniteMap, FiniteMap), OutOfUniverse> {
        let p = finmap::product(a, b);
        Ok((p.object, p.pr1, p.pr2))
    }

    fn pair(
        &self,
        f: &FiniteMap,
        g: &FiniteMap,
        prod: &(FiniteSet, FiniteMap, FiniteMap),
    ) -> FiniteMap {
        let p = finmap::Product {
            object: prod.0.clone(),
            pr1: prod.1.clone(),
            pr2: prod.2.clone(),
        };
        finmap::pair_into(f, g, &p).expect("pairing shape")
    }

    fn coproduct(
        &self,
        a: &FiniteSet,
        b: &FiniteSet,
    ) -> Result<(FiniteSet, FiniteMap, FiniteMap), OutOfUniverse> {
        let c = finmap::coproduct(a, b);
        Ok((c.object, c.inl, c.inr))
    }

    fn copair(
        &self,
        f: &FiniteMap,
        g: &FiniteMap,
        cop: &(FiniteSet, FiniteMap, FiniteMap),
    ) -> FiniteMap {
        let c = finmap::Coproduct {
            object: cop.0.clone(),
            inl: cop.1.clone(),
            inr: cop.2.clone(),
        };
        finmap::copair_from(f, g, &c).expect("copairing shape")
    }

    fn pullback(
        &self,
        f: &FiniteMap,
        v: &FiniteMap,
    ) -> Result<(FiniteSet, FiniteMap, FiniteMap), OutOfUniverse> {
        let pb = finmap::pullback(f, v).expect("shared target");
        Ok((pb.object, pb.pr1, pb.pr2))
    }

    fn into_pullback(
        &self,
        t1: &FiniteMap,
        t2: &FiniteMap,
        pb: &(FiniteSet, FiniteMap, FiniteMap),
    ) -> FiniteMap {
        let p = finmap::Pullback {
            object: pb.0.clone(),
            pr1: pb.1.clone(),
            pr2: pb.2.clone(),
        };
        finmap::into_pullback(t1, t2, &p).expect("cone shape")
    }

    fn pushout(
        &self,
        u: &FiniteMap,
        w: &FiniteMap,
    ) -> Result<(FiniteSet, FiniteMap, FiniteMap), OutOfUniverse> {
        let po = finmap::pushout(u, w).expect("shared source");
        Ok((po.object, po.from_b, po.from_c))
    }

    fn from_pushout(
        &self,
        t: &FiniteMap,
        t2: &FiniteMap,
        po: &(FiniteSet, FiniteMap, FiniteMap),
    ) -> FiniteMap {
        let p = finmap::Pushout {
            object: po.0.clone(),
            from_b: po.1.clone(),
            from_c: po.2.clone(),
        };
        finmap::from_pushout(t, t2, &p).expect("cocone shape")
    }

    fn terminal(&self) -> Option<FiniteSet> {
        Some(FiniteSet::canonical(1))
    }

    fn initial(&self) -> Option<FiniteSet> {
        Some(FiniteSet::canonical(0))
    }
}

/// A map between finite cardinals, numbered `0..n-1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CardMap {
    pub src: usize,
    pub tgt: usize,
    pub table: Vec<usize>,
}

impl fmt::Display for CardMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}{:?}", self.src, self.tgt, self.table)
    }
}

/// Finite cardinals (including 0) with all maps, injections as good monos
/// and surjections as good epis, truncated at a maximum object size.
/// Products and pullbacks may leave the truncation.
#[derive(Debug, Clone)]
pub struct NCard {
    truncation: usize,
}

impl NCard {
    pub fn new(truncation: usize) -> Self {
        NCard { truncation }
    }
}

/// Lexicographic numbering of pairs `(i,j)` in `m x n`.
fn pair_index(i: usize, j: usize, n: usize) -> usize {
    i * n + j
}

impl Diptych for NCard {
    type Obj = usize;
    type Arr = CardMap;

    fn name(&self) -> String {
        format!("nc(max {})", self.truncation)
    }

    fn objects(&self, cap: usize) -> Vec<usize> {
        (0..=cap.min(self.truncation)).collect()
    }

    fn arrows_between(&self, a: &usize, b: &usize) -> Vec<CardMap> {
        let (m, n) = (*a, *b);
        if m == 0 {
            return vec![CardMap { src: 0, tgt: n, table: Vec::new() }];
        }
        if n == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut table = vec![0usize; m];
        loop {
            out.push(CardMap { src: m, tgt: n, table: table.clone() });
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

    fn source(&self, f: &CardMap) -> usize {
        f.src
    }

    fn target(&self, f: &CardMap) -> usize {
        f.tgt
    }

    fn identity(&self, a: &usize) -> CardMap {
        CardMap { src: *a, tgt: *a, table: (0..*a).collect() }
    }

    fn compose(&self, g: &CardMap, f: &CardMap) -> CardMap {
        assert_eq!(f.tgt, g.src);
        CardMap {
            src: f.src,
            tgt: g.tgt,
            table: f.table.iter().map(|&i| g.table[i]).collect(),
        }
    }

    fn is_good_mono(&self, f: &CardMap) -> bool {
        let mut seen = vec![false; f.tgt];
        f.table.iter().all(|&i| !std::mem::replace(&mut seen[i], true))
    }

    fn is_good_epi(&self, f: &CardMap) -> bool {
        let mut seen = vec![false; f.tgt];
        for &i in &f.table {
            seen[i] = true;
        }
        seen.iter().all(|&b| b)
    }

    fn is_iso(&self, f: &CardMap) -> bool {
        f.src == f.tgt && self.is_good_mono(f) && self.is_good_epi(f)
    }

    fn product(
        &self,
        a: &usize,
        b: &usize,
    ) -> Result<(usize, CardMap, CardMap), OutOfUniverse> {
        let (m, n) = (*a, *b);
        let p = m * n;
        if p > self.truncation {
            return Err(OutOfUniverse(format!("product {m}x{n} exceeds {}", self.truncation)));
        }
        let mut t1 = Vec::with_capacity(p);
        let mut t2 = Vec::with_capacity(p);
        for i in 0..m {
            for j in 0..n {
                t1.push(i);
                t2.push(j);
            }
        }
        Ok((
            p,
            CardMap { src: p, tgt: m, table: t1 },
            CardMap { src: p, tgt: n, table: t2 },
        ))
    }

    fn pair(
        &self,
        f: &CardMap,
        g: &CardMap,
        prod: &(usize, CardMap, CardMap),
    ) -> CardMap {
        let n = prod.2.tgt;
        let table = (0..f.src)
            .map(|x| pair_index(f.table[x], g.table[x], n))
            .collect();
        CardMap { src: f.src, tgt: prod.0, table }
    }

    fn coproduct(
        &self,
        a: &usize,
        b: &usize,
    ) -> Result<(usize, CardMap, CardMap), OutOfUniverse> {
        let (m, n) = (*a, *b);
        let s = m + n;
        if s > self.truncation {
            return Err(OutOfUniverse(format!("sum {m}+{n} exceeds {}", self.truncation)));
        }
        Ok((
            s,
            CardMap { src: m, tgt: s, table: (0..m).collect() },
            CardMap { src: n, tgt: s, table: (m..s).collect() },
        ))
    }

    fn copair(
        &self,
        f: &CardMap,
        g: &CardMap,
        cop: &(usize, CardMap, CardMap),
    ) -> CardMap {
        let mut table = f.table.clone();
        table.extend(g.table.iter().copied());
        CardMap { src: cop.0, tgt: f.tgt, table }
    }

    fn pullback(
        &self,
        f: &CardMap,
        v: &CardMap,
    ) -> Result<(usize, CardMap, CardMap), OutOfUniverse> {
        assert_eq!(f.tgt, v.tgt);
        let mut pairs = Vec::new();
        for i in 0..f.src {
            for j in 0..v.src {
                if f.table[i] == v.table[j] {
                    pairs.push((i, j));
                }
            }
        }
        if pairs.len() > self.truncation {
            return Err(OutOfUniverse(format!(
                "pullback of size {} exceeds {}",
                pairs.len(),
                self.truncation
            )));
        }
        let t1 = pairs.iter().map(|&(i, _)| i).collect();
        let t2 = pairs.iter().map(|&(_, j)| j).collect();
        Ok((
            pairs.len(),
            CardMap { src: pairs.len(), tgt: f.src, table: t1 },
            CardMap { src: pairs.len(), tgt: v.src, table: t2 },
        ))
    }

    fn into_pullback(
        &self,
        t1: &CardMap,
        t2: &CardMap,
        pb: &(usize, CardMap, CardMap),
    ) -> CardMap {
        // locate (t1(x), t2(x)) among the pullback's numbered pairs
        let pairs: Vec<(usize, usize)> =
            pb.1.table.iter().zip(pb.2.table.iter()).map(|(&i, &j)| (i, j)).collect();
        let table = (0..t1.src)
            .map(|x| {
                let want = (t1.table[x], t2.table[x]);
                pairs.iter().position(|&p| p == want).expect("cone lands in pullback")
            })
            .collect();
        CardMap { src: t1.src, tgt: pb.0, table }
    }

    fn pushout(
        &self,
        u: &CardMap,
        w: &CardMap,
    ) -> Result<(usize, CardMap, CardMap), OutOfUniverse> {
        assert_eq!(u.src, w.src);
        let nb = u.tgt;
        let nc = w.tgt;
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
        for k in 0..u.src {
            let (a, b) = (u.table[k], nb + w.table[k]);
            let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
            if ra != rb {
                uf[ra] = rb;
            }
        }
        // number the classes by least member
        let mut reps: Vec<usize> = (0..nb + nc).map(|i| find(&mut uf, i)).collect();
        let mut classes: Vec<usize> = reps.clone();
        classes.sort_unstable();
        classes.dedup();
        if classes.len() > self.truncation {
            return Err(OutOfUniverse(format!(
                "pushout of size {} exceeds {}",
                classes.len(),
                self.truncation
            )));
        }
        let class_idx =
            |r: usize, classes: &[usize]| classes.binary_search(&r).expect("class present");
        let tb = (0..nb).map(|i| class_idx(reps[i], &classes)).collect();
        let tc = (0..nc).map(|j| class_idx(reps[nb + j], &classes)).collect();
        reps.clear();
        Ok((
            classes.len(),
            CardMap { src: nb, tgt: classes.len(), table: tb },
            CardMap { src: nc, tgt: classes.len(), table: tc },
        ))
    }

    fn from_pushout(
        &self,
        t: &CardMap,
        t2: &CardMap,
        po: &(usize, CardMap, CardMap),
    ) -> CardMap {
        let mut table = vec![usize::MAX; po.0];
        for (i, &cls) in po.1.table.iter().enumerate() {
            table[cls] = t.table[i];
        }
        for (j, &cls) in po.2.table.iter().enumerate() {
            table[cls] = t2.table[j];
        }
        assert!(table.iter().all(|&x| x != usize::MAX), "pushout class not covered");
        CardMap { src: po.0, tgt: t.tgt, table }
    }

    fn terminal(&self) -> Option<usize> {
        Some(1)
    }

    fn initial(&self) -> Option<usize> {
        Some(0)
    }
}

/// The opposite of a diptych instance: arrows keep their representation
/// but source/target, mono/epi, products/coproducts and pullbacks/pushouts
/// exchange roles.
#[derive(Debug, Clone)]
pub struct Op<D: Diptych> {
    inner: D,
}

impl<D: Diptych> Op<D> {
    pub fn new(inner: D) -> Self {
        Op { inner }
    }
}

impl<D: Diptych> Diptych for Op<D> {
    type Obj = D::Obj;
    type Arr = D::Arr;

    fn name(&self) -> String {
        format!("{}-op", self.inner.name())
    }

    fn objects(&self, cap: usize) -> Vec<D::Obj> {
        self.inner.objects(cap)
    }

    fn arrows_between(&self, a: &D::Obj, b: &D::Obj) -> Vec<D::Arr> {
        self.inner.arrows_between(b, a)
    }

    fn source(&self, f: &D::Arr) -> D::Obj {
        self.inner.target(f)
    }

    fn target(&self, f: &D::Arr) -> D::Obj {
        self.inner.source(f)
    }

    fn identity(&self, a: &D::Obj) -> D::Arr {
        self.inner.identity(a)
    }

    fn compose(&self, g: &D::Arr, f: &D::Arr) -> D::Arr {
        self.inner.compose(f, g)
    }

    fn is_good_mono(&self, f: &D::Arr) -> bool {
        self.inner.is_good_epi(f)
    }

    fn is_good_epi(&self, f: &D::Arr) -> bool {
        self.inner.is_good_mono(f)
    }

    fn is_iso(&self, f: &D::Arr) -> bool {
        self.inner.is_iso(f)
    }

    fn product(
        &self,
        a: &D::Obj,
        b: &D::Obj,
    ) -> Result<(D::Obj, D::Arr, D::Arr), OutOfUniverse> {
        self.inner.coproduct(a, b)
    }

    fn pair(
        &self,
        f: &D::Arr,
        g: &D::Arr,
        prod: &(D::Obj, D::Arr, D::Arr),
    ) -> D::Arr {
        self.inner.copair(f, g, prod)
    }

    fn coproduct(
        &self,
        a: &D::Obj,
        b: &D::Obj,
    ) -> Result<(D::Obj, D::Arr, D::Arr), OutOfUniverse> {
        self.inner.product(a, b)
    }

    fn copair(
        &self,
        f: &D::Arr,
        g: &D::Arr,
        cop: &(D::Obj, D::Arr, D::Arr),
    ) -> D::Arr {
        self.inner.pair(f, g, cop)
    }

    fn pullback(
        &self,
        f: &D::Arr,
        v: &D::Arr,
    ) -> Result<(D::Obj, D::Arr, D::Arr), OutOfUniverse> {
        self.inner.pushout(f, v)
    }

    fn into_pullback(
        &self,
        t1: &D::Arr,
        t2: &D::Arr,
        pb: &(D::Obj, D::Arr, D::Arr),
    ) -> D::Arr {
        self.inner.from_pushout(t1, t2, pb)
    }

    fn pushout(
        &self,
        u: &D::Arr,
        w: &D::Arr,
    ) -> Result<(D::Obj, D::Arr, D::Arr), OutOfUniverse> {
        self.inner.pullback(u, w)
    }

    fn from_pushout(
        &self,
        t: &D::Arr,
        t2: &D::Arr,
        po: &(D::Obj, D::Arr, D::Arr),
    ) -> D::Arr {
        self.inner.into_pullback(t, t2, po)
    }

    fn terminal(&self) -> Option<D::Obj> {
        self.inner.initial()
    }

    fn initial(&self) -> Option<D::Obj> {
        self.inner.terminal()
    }
}

/// The finite-set diptych.
pub fn finset() -> FinSet {
    FinSet::new()
}

/// The opposite of the finite-set diptych.
pub fn finset_op() -> Op<FinSet> {
    Op::new(FinSet::new())
}

/// Finite cardinals truncated at objects of size 6.
pub fn nc() -> NCard {
    NCard::new(6)
}

/// The opposite of the truncated finite-cardinal diptych.
pub fn nc_star() -> Op<NCard> {
    Op::new(NCard::new(6))
}

/// Negative control: finite sets with every map accepted as a good epi.
pub fn finset_broken() -> FinSet {
    FinSet::broken_epis()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diptych::{check_axioms, classify_square, is_s_condensed, AxiomStatus, DSquare};
    use crate::finmap::FiniteMap;
    use crate::finmap::FiniteSet;

    #[test]
    fn finset_axioms_hold_at_cap_2() {
        let report = check_axioms(&finset(), 2, u64::MAX).unwrap();
        for e in &report.entries {
            assert_eq!(e.status, AxiomStatus::Holds, "axiom {} failed: {:?}", e.axiom, e);
        }
    }

    #[test]
    fn finset_op_axioms_hold_at_cap_2() {
        let report = check_axioms(&finset_op(), 2, u64::MAX).unwrap();
        for e in &report.entries {
            assert_eq!(e.status, AxiomStatus::Holds, "axiom {} failed: {:?}", e.axiom, e);
        }
    }

    #[test]
    fn broken_epis_fail_strict_epi_axiom() {
        let report = check_axioms(&finset_broken(), 2, u64::MAX).unwrap();
        let e = report.entry("(iii)(b)").unwrap();
        assert_eq!(e.status, AxiomStatus::Fails);
        assert!(e.counterexample.is_some());
    }

    #[test]
    fn nc_axioms_hold_with_skips_counted() {
        let report = check_axioms(&nc(), 3, u64::MAX).unwrap();
        for e in &report.entries {
            assert_ne!(e.status, AxiomStatus::Fails, "axiom {} failed: {:?}", e.axiom, e);
        }
        // products of capped cardinals can leave the truncation
        let e = report.entry("(ii)").unwrap();
        assert!(e.skipped_count > 0);
    }

    #[test]
    fn nc_star_axioms_hold_at_cap_3() {
        let report = check_axioms(&nc_star(), 3, u64::MAX).unwrap();
        for e in &report.entries {
            assert_ne!(e.status, AxiomStatus::Fails, "axiom {} failed: {:?}", e.axiom, e);
        }
    }

    #[test]
    fn s_condensed_in_finset() {
        let d = finset();
        assert!(is_s_condensed(&d, &FiniteSet::canonical(2)).unwrap());
        assert!(!is_s_condensed(&d, &FiniteSet::canonical(0)).unwrap());
    }

    #[test]
    fn all_nc_star_objects_are_s_condensed() {
        let d = nc_star();
        for n in d.objects(4) {
            assert!(is_s_condensed(&d, &n).unwrap(), "object {n}");
        }
    }

    #[test]
    fn nc_s_condensed_objects_are_the_nonzero_ones() {
        let d = nc();
        for n in d.objects(4) {
            assert_eq!(is_s_condensed(&d, &n).unwrap(), n != 0, "object {n}");
        }
    }

    #[test]
    fn identity_square_fully_classified() {
        let d = finset();
        let s = FiniteSet::canonical(2);
        let id = FiniteMap::identity(&s);
        let sq = DSquare::<FinSet> {
            top: id.clone(),
            left: id.clone(),
            bottom: id.clone(),
            right: id,
        };
        let c = classify_square(&d, &sq).unwrap();
        assert!(c.commutes && c.i_faithful && c.good_pullback && c.s_full);
    }

    #[test]
    fn pullback_completion_classifies_as_good_pullback() {
        let d = finset();
        let a = FiniteSet::canonical(3);
        let b = FiniteSet::canonical(2);
        let bp = FiniteSet::canonical(2);
        let f = FiniteMap::from_index_table(&a, &b, vec![0, 0, 1]).unwrap();
        let v = FiniteMap::from_index_table(&bp, &b, vec![0, 1]).unwrap();
        let (p, pr1, pr2) = d.pullback(&f, &v).unwrap();
        let sq = DSquare::<FinSet> {
            top: pr2,
            left: pr1,
            bottom: f,
            right: v,
        };
        let c = classify_square(&d, &sq).unwrap();
        assert!(c.good_pullback);
        assert!(c.s_full);
        assert!(p.len() > 0);
    }

    #[test]
    fn graph_factorization_recovers_arrow() {
        let d = finset();
        let a = FiniteSet::canonical(2);
        let b = FiniteSet::canonical(1);
        let f = FiniteMap::from_index_table(&a, &b, vec![0, 0]).unwrap();
        let (i, pr2) = crate::diptych::graph_factorization(&d, &f).unwrap();
        assert!(i.is_injective());
        assert_eq!(i.then(&pr2).unwrap(), f);
    }
}
