//! Categories with distinguished good monos and good epis, an exhaustive
//! axiom-verification suite over a capped object universe, and the
//! three-way classifier for commutative squares.

pub mod instances;

use serde::Serialize;
use serde_json::{json, Value};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiptychError {
    #[error("construction leaves the instance universe: {0}")]
    OutOfUniverse(String),
    #[error("square does not commute")]
    NotCommuting,
    #[error("instance has no terminal object")]
    NoTerminalObject,
    #[error("enumeration budget exceeded ({0} checks)")]
    SizeLimitExceeded(u64),
}

/// Marker returned by partial constructors of truncated instances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutOfUniverse(pub String);

impl From<OutOfUniverse> for DiptychError {
    fn from(o: OutOfUniverse) -> Self {
        DiptychError::OutOfUniverse(o.0)
    }
}

/// A category with finite products/coproducts, pullbacks/pushouts and two
/// distinguished arrow classes, presented concretely enough to enumerate.
///
/// `objects(cap)` is the capped test universe the axiom sweeps quantify
/// over; constructions may land outside it (they only have to stay inside
/// the instance's own truncation, else they report `OutOfUniverse`).
pub trait Diptych {
    type Obj: Clone + Eq + Ord + fmt::Debug + fmt::Display;
    type Arr: Clone + Eq + Ord + fmt::Debug + fmt::Display;

    fn name(&self) -> String;
    fn objects(&self, cap: usize) -> Vec<Self::Obj>;
    fn arrows_between(&self, a: &Self::Obj, b: &Self::Obj) -> Vec<Self::Arr>;
    fn source(&self, f: &Self::Arr) -> Self::Obj;
    fn target(&self, f: &Self::Arr) -> Self::Obj;
    fn identity(&self, a: &Self::Obj) -> Self::Arr;
    /// Composition `g ∘ f` (g after f).
    fn compose(&self, g: &Self::Arr, f: &Self::Arr) -> Self::Arr;
    fn is_good_mono(&self, f: &Self::Arr) -> bool;
    fn is_good_epi(&self, f: &Self::Arr) -> bool;
    fn is_iso(&self, f: &Self::Arr) -> bool;

    /// Product with projections `(P, P->A, P->B)`.
    fn product(
        &self,
        a: &Self::Obj,
        b: &Self::Obj,
    ) -> Result<(Self::Obj, Self::Arr, Self::Arr), OutOfUniverse>;
    /// Pairing `⟨f,g⟩` into a product previously built by `product`.
    fn pair(
        &self,
        f: &Self::Arr,
        g: &Self::Arr,
        prod: &(Self::Obj, Self::Arr, Self::Arr),
    ) -> Self::Arr;
    /// Coproduct with injections `(S, A->S, B->S)`.
    fn coproduct(
        &self,
        a: &Self::Obj,
        b: &Self::Obj,
    ) -> Result<(Self::Obj, Self::Arr, Self::Arr), OutOfUniverse>;
    fn copair(
        &self,
        f: &Self::Arr,
        g: &Self::Arr,
        cop: &(Self::Obj, Self::Arr, Self::Arr),
    ) -> Self::Arr;
    /// Pullback of `f : A -> B`, `v : B' -> B`: `(P, P->A, P->B')`.
    fn pullback(
        &self,
        f: &Self::Arr,
        v: &Self::Arr,
    ) -> Result<(Self::Obj, Self::Arr, Self::Arr), OutOfUniverse>;
    fn into_pullback(
        &self,
        t1: &Self::Arr,
        t2: &Self::Arr,
        pb: &(Self::Obj, Self::Arr, Self::Arr),
    ) -> Self::Arr;
    /// Pushout of the span `u : C -> A`, `w : C -> B`: `(P, A->P, B->P)`.
    fn pushout(
        &self,
        u: &Self::Arr,
        w: &Self::Arr,
    ) -> Result<(Self::Obj, Self::Arr, Self::Arr), OutOfUniverse>;
    fn from_pushout(
        &self,
        t: &Self::Arr,
        t2: &Self::Arr,
        po: &(Self::Obj, Self::Arr, Self::Arr),
    ) -> Self::Arr;
    fn terminal(&self) -> Option<Self::Obj>;
    fn initial(&self) -> Option<Self::Obj>;
}

/// Flags of the three-way square classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SquareClassification {
    pub commutes: bool,
    pub i_faithful: bool,
    pub good_pullback: bool,
    pub s_full: bool,
}

/// A commutative square candidate in an instance:
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
#[derive(Debug, Clone)]
pub struct DSquare<D: Diptych> {
    pub top: D::Arr,
    pub left: D::Arr,
    pub bottom: D::Arr,
    pub right: D::Arr,
}

impl<D: Diptych> DSquare<D> {
    pub fn commutes(&self, d: &D) -> bool {
        d.compose(&self.bottom, &self.left) == d.compose(&self.right, &self.top)
    }
}

/// Classify a commutative square: `i_faithful` iff the graph arrow
/// `(left, top) : A' -> A × B'` is a good mono; `good_pullback` iff the
/// square is a pullback and i-faithful; `s_full` iff a good pullback of
/// `(bottom, right)` exists and the comparison arrow is a good epi.
pub fn classify_square<D: Diptych>(
    d: &D,
    sq: &DSquare<D>,
) -> Result<SquareClassification, DiptychError> {
    if !sq.commutes(d) {
        return Err(DiptychError::NotCommuting);
    }
    let a = d.target(&sq.left);
    let bp = d.target(&sq.top);
    let prod = d.product(&a, &bp)?;
    let graph = d.pair(&sq.left, &sq.top, &prod);
    let i_faithful = d.is_good_mono(&graph);

    let pb = d.pullback(&sq.bottom, &sq.right)?;
    let comparison = d.into_pullback(&sq.left, &sq.top, &pb);
    let good_pullback = d.is_iso(&comparison) && i_faithful;

    // the constructed pullback square must itself be i-faithful for
    // "a good pullback of (f,v) exists"
    let pb_graph = d.pair(&pb.1, &pb.2, &prod);
    let pb_is_good = d.is_good_mono(&pb_graph);
    let s_full = pb_is_good && d.is_good_epi(&comparison);

    Ok(SquareClassification { commutes: true, i_faithful, good_pullback, s_full })
}

/// Graph factorization of an arrow `f : B -> B'` as a good mono
/// `(1,f) : B -> B × B'` followed by the second projection.
pub fn graph_factorization<D: Diptych>(
    d: &D,
    f: &D::Arr,
) -> Result<(D::Arr, D::Arr), DiptychError> {
    let b = d.source(f);
    let bp = d.target(f);
    let prod = d.product(&b, &bp)?;
    let i = d.pair(&d.identity(&b), f, &prod);
    debug_assert!(d.is_good_mono(&i));
    Ok((i, prod.2))
}

/// An object is s-condensed when its canonical arrow to the terminal
/// object is a good epi.
pub fn is_s_condensed<D: Diptych>(d: &D, obj: &D::Obj) -> Result<bool, DiptychError> {
    let t = d.terminal().ok_or(DiptychError::NoTerminalObject)?;
    let arrows = d.arrows_between(obj, &t);
    // to a terminal object there is exactly one arrow
    debug_assert_eq!(arrows.len(), 1, "terminal object admits a unique arrow");
    Ok(d.is_good_epi(&arrows[0]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AxiomStatus {
    Holds,
    Fails,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomEntry {
    pub axiom: String,
    pub status: AxiomStatus,
    pub counterexample: Option<Value>,
    pub skipped_count: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub instance: String,
    pub cap: usize,
    pub entries: Vec<AxiomEntry>,
}

impl AxiomReport {
    pub fn all_hold(&self) -> bool {
        self.entries.iter().all(|e| e.status == AxiomStatus::Holds)
    }

    pub fn entry(&self, axiom: &str) -> Option<&AxiomEntry> {
        self.entries.iter().find(|e| e.axiom == axiom)
    }
}

struct Sweep {
    budget: u64,
    used: u64,
}

impl Sweep {
    fn tick(&mut self, n: u64) -> Result<(), DiptychError> {
        self.used += n;
        if self.used > self.budget {
            Err(DiptychError::SizeLimitExceeded(self.used))
        } else {
            Ok(())
        }
    }
}

struct AxiomOutcome {
    counterexample: Option<Value>,
    skipped: u64,
    checked: u64,
}

impl AxiomOutcome {
    fn new() -> Self {
        AxiomOutcome { counterexample: None, skipped: 0, checked: 0 }
    }

    fn entry(self, axiom: &str) -> AxiomEntry {
        let status = if self.counterexample.is_some() {
            AxiomStatus::Fails
        } else if self.checked == 0 && self.skipped > 0 {
            AxiomStatus::Skipped
        } else {
            AxiomStatus::Holds
        };
        AxiomEntry {
            axiom: axiom.to_string(),
            status,
            counterexample: self.counterexample,
            skipped_count: self.skipped,
        }
    }
}

/// Exhaustively test the diptych axioms over all applicable arrow tuples
/// in the capped universe. Counterexamples are reported verbatim, as the
/// first (lexicographically least) offending tuple under the canonical
/// enumeration order. Out-of-universe constructions are skipped, never
/// treated as failures.
pub fn check_axioms<D: Diptych>(
    d: &D,
    cap: usize,
    budget: u64,
) -> Result<AxiomReport, DiptychError> {
    let objects = d.objects(cap);
    let mut arrows: Vec<D::Arr> = Vec::new();
    for a in &objects {
        for b in &objects {
            arrows.extend(d.arrows_between(a, b));
        }
    }
    arrows.sort();
    let good_monos: Vec<&D::Arr> = arrows.iter().filter(|f| d.is_good_mono(f)).collect();
    let good_epis: Vec<&D::Arr> = arrows.iter().filter(|f| d.is_good_epi(f)).collect();
    let mut sweep = Sweep { budget, used: 0 };

    let mut entries = Vec::new();
    entries.push(axiom_i(d, &arrows, &mut sweep)?.entry("(i)"));
    entries.push(axiom_ii(d, &good_monos, &good_epis, &mut sweep)?.entry("(ii)"));
    entries.push(axiom_iii_a(d, &objects, &good_monos, &mut sweep)?.entry("(iii)(a)"));
    entries.push(axiom_iii_b(d, &objects, &good_epis, &mut sweep)?.entry("(iii)(b)"));
    entries.push(axiom_iv_a(d, &arrows, &mut sweep)?.entry("(iv)(a)"));
    entries.push(axiom_iv_b(d, &arrows, &mut sweep)?.entry("(iv)(b)"));
    entries.push(axiom_v_a(d, &good_monos, &good_epis, &mut sweep)?.entry("(v)(a)"));
    entries.push(axiom_v_b(d, &arrows, &good_epis, &mut sweep)?.entry("(v)(b)"));
    entries.push(axiom_iii_b_prime(d, &objects, &good_epis, &mut sweep)?.entry("(iii)(b')"));
    entries
        .push(axiom_iii_b_second(d, &objects, &good_epis, &mut sweep)?.entry("(iii)(b\")"));

    Ok(AxiomReport { instance: d.name(), cap, entries })
}

/// (i): an arrow is invertible iff it is both a good mono and a good epi.
fn axiom_i<D: Diptych>(
    d: &D,
    arrows: &[D::Arr],
    sweep: &mut Sweep,
) -> Result<AxiomOutcome, DiptychError> {
    let mut out = AxiomOutcome::new();
    for f in arrows {
        sweep.tick(1)?;
        out.checked += 1;
        let both = d.is_good_mono(f) && d.is_good_epi(f);
        if both != d.is_iso(f) {
            out.counterexample = Some(json!({ "arrow": f.to_string() }));
            return Ok(out);
        }
    }
    Ok(out)
}

/// (ii): good monos and good epis are stable by products.
fn axiom_ii<D: Diptych>(
    d: &D,
    good_monos: &[&D::Arr],
    good_epis: &[&D::Arr],
    sweep: &mut Sweep,
) -> Result<AxiomOutcome, DiptychError> {
    let mut out = AxiomOutcome::new();
    type Pred<D> = fn(&D, &<D as Diptych>::Arr) -> bool;
    let families: [(&[&D::Arr], Pred<D>); 2] =
        [(good_monos, D::is_good_mono as Pred<D>), (good_epis, D::is_good_epi as Pred<D>)];
    for (class, is_in) in families {
        for f in class {
            for g in class {
                sweep.tick(1)?;
                let dom = match d.product(&d.source(f), &d.source(g)) {
                    Ok(p) => p,
                    Err(_) => {
                        out.skipped += 1;
                        continue;
                    }
                };
                let cod = match d.product(&d.target(f), &d.target(g)) {
                    Ok(p) => p,
                    Err(_) => {
                        out.skipped += 1;
                        continue;
                    }
                };
                out.checked += 1;
                let fg = d.pair(&d.compose(f, &dom.1), &d.compose(g, &dom.2), &cod);
                if !is_in(d, &fg) {
                    out.counterexample =
                        Some(json!({ "f": f.to_string(), "g": g.to_string() }));
                    return Ok(out);
                }
            }
        }
    }
    Ok(out)
}

/// (iii)(a): good monos are monomorphisms.
fn axiom_iii_a<D: Diptych>(
    d: &D,
    objects: &[D::Obj],
    good_monos: &[&D::Arr],
    sweep: &mut Sweep,
) -> Result<AxiomOutcome, DiptychError> {
    let mut out = AxiomOutcome::new();
    for f in good_monos {
        out.checked += 1;
        let a = d.source(f);
        for x in objects {
            let tests = d.arrows_between(x, &a);
            sweep.tick((tests.len() * tests.len()) as u64)?;
            for g in &tests {
                for h in &tests {
                    if g != h && d.compose(f, g) == d.compose(f, h) {
                        out.counterexample = Some(json!({
                            "f": f.to_string(),
                            "g": g.to_string(),
                            "h": h.to_string(),
                        }));
                        return Ok(out);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// (iii)(b): good epis are strict epis — `q` is the joint coequalizer of
/// every pair it coequalizes.
fn axiom_iii_b<D: Diptych>(
    d: &D,
    objects: &[D::Obj],
    good_epis: &[&D::Arr],
    sweep: &mut Sweep,
) -> Result<AxiomOutcome, DiptychError> {
    let mut out = AxiomOutcome::new();
    for q in good_epis {
        out.checked += 1;
        let b = d.source(q);
        let qt = d.target(q);
        // collect all test pairs (a, b') with q∘a = q∘b'
        let mut pairs: Vec<(D::Arr, D::Arr)> = Vec::new();
        for x in objects {
            let tests = d.arrows_between(x, &b);
            sweep.tick((tests.len() * tests.len()) as u64)?;
            for a1 in &tests {
                for a2 in &tests {
                    if a1 < a2 && d.compose(q, a1) == d.compose(q, a2) {
                        pairs.push((a1.clone(), a2.clone()));
                    }
                }
            }
        }
        for z in objects {
            for t in d.arrows_between(&b, z) {
                sweep.tick(pairs.len() as u64 + 1)?;
                if !pairs
                    .iter()
                    .all(|(a1, a2)| d.compose(&t, a1) == d.compose(&t, a2))
                {
                    continue;
                }
                let mediators: Vec<D::Arr> = d
                    .arrows_between(&qt, z)
                    .into_iter()
                    .filter(|u| d.compose(u, q) == t)
                    .collect();
                if mediators.len() != 1 {
                    out.counterexample = Some(json!({
                        "q": q.to_string(),
                        "t": t.to_string(),
                        "mediators": mediators.len(),
                    }));
                    return Ok(out);
                }
            }
        }
    }
    Ok(out)
}

/// (iv)(a): strong source-stability of good monos.
fn axiom_iv_a<D: Diptych>(
    d: &D,
    arrows: &[D::Arr],
    sweep: &mut Sweep,
) -> Result<AxiomOutcome, DiptychError> {
    let mut out = AxiomOutcome::new();
    for f in arrows {
        let mid = d.target(f);
        for g in arrows {
            if d.source(g) != mid {
                continue;
            }
            sweep.tick(1)?;
            out.checked += 1;
            if d.is_good_mono(&d.compose(g, f)) && !d.is_good_mono(f) {
                out.counterexample =
                    Some(json!({ "f": f.to_string(), "g": g.to_string() }));
                return Ok(out);
            }
        }
    }
    Ok(out)
}

/// (iv)(b): weak range-stability of good epis.
fn axiom_iv_b<D: Diptych>(
    d: &D,
    arrows: &[D::Arr],
    sweep: &mut Sweep,
) -> Result<AxiomOutcome, DiptychError> {
    let mut out = AxiomOutcome::new();
    for f in arrows {
        if !d.is_good_epi(f) {
            continue;
        }
        let mid = d.target(f);
        for g in arrows {
            if d.source(g) != mid {
                continue;
            }
            sweep.tick(1)?;
            out.checked += 1;
            if d.is_good_epi(&d.compose(g, f)) && !d.is_good_epi(g) {
                out.counterexample =
                    Some(json!({ "f": f.to_string(), "g": g.to_string() }));
                return Ok(out);
            }
        }
    }
    Ok(out)
}

/// (v)(a): parallel transfer — pulling a good epi back along a good mono
/// yields a good epi and a good mono.
fn axiom_v_a<D: Diptych>(
    d: &D,
    good_monos: &[&D::Arr],
    good_epis: &[&D::Arr],
    sweep: &mut Sweep,
) -> Result<AxiomOutcome, DiptychError> {
    let mut out = AxiomOutcome::new();
    for s in good_epis {
        for i in good_monos {
            if d.target(s) != d.target(i) {
                continue;
            }
            sweep.tick(1)?;
            let (_, to_a, to_bp) = match d.pullback(s, i) {
                Ok(pb) => pb,
                Err(_) => {
                    out.skipped += 1;
                    continue;
                }
            };
            out.checked += 1;
            // transferred mono lands over the source of s, transferred epi
            // over the source of i
            if !(d.is_good_mono(&to_a) && d.is_good_epi(&to_bp)) {
                out.counterexample =
                    Some(json!({ "s": s.to_string(), "i": i.to_string() }));
                return Ok(out);
            }
        }
    }
    Ok(out)
}

/// (v)(b): descent — in a pullback square with both verticals good epis
/// and the transferred arrow a good mono, the base arrow is a good mono.
fn axiom_v_b<D: Diptych>(
    d: &D,
    arrows: &[D::Arr],
    good_epis: &[&D::Arr],
    sweep: &mut Sweep,
) -> Result<AxiomOutcome, DiptychError> {
    let mut out = AxiomOutcome::new();
    for s in good_epis {
        for i in arrows {
            if d.target(s) != d.target(i) {
                continue;
            }
            sweep.tick(1)?;
            let (_, i_prime, s_prime) = match d.pullback(s, i) {
                Ok(pb) => pb,
                Err(_) => {
                    out.skipped += 1;
                    continue;
                }
            };
            out.checked += 1;
            if d.is_good_mono(&i_prime) && d.is_good_epi(&s_prime) && !d.is_good_mono(i) {
                out.counterexample =
                    Some(json!({ "s": s.to_string(), "i": i.to_string() }));
                return Ok(out);
            }
        }
    }
    Ok(out)
}

/// (iii)(b'): every good epi coequalizes its kernel pair universally.
fn axiom_iii_b_prime<D: Diptych>(
    d: &D,
    objects: &[D::Obj],
    good_epis: &[&D::Arr],
    sweep: &mut Sweep,
) -> Result<AxiomOutcome, DiptychError> {
    let mut out = AxiomOutcome::new();
    for q in good_epis {
        sweep.tick(1)?;
        let (_, pr1, pr2) = match d.pullback(q, q) {
            Ok(pb) => pb,
            Err(_) => {
                out.skipped += 1;
                continue;
            }
        };
        out.checked += 1;
        let b = d.source(q);
        let qt = d.target(q);
        for z in objects {
            for t in d.arrows_between(&b, z) {
                sweep.tick(2)?;
                if d.compose(&t, &pr1) != d.compose(&t, &pr2) {
                    continue;
                }
                let mediators = d
                    .arrows_between(&qt, z)
                    .into_iter()
                    .filter(|u| d.compose(u, q) == t)
                    .count();
                if mediators != 1 {
                    out.counterexample = Some(json!({
                        "q": q.to_string(),
                        "t": t.to_string(),
                        "mediators": mediators,
                    }));
                    return Ok(out);
                }
            }
        }
    }
    Ok(out)
}

/// (iii)(b"): any perfect square (pullback of two good epis) is a pushout.
fn axiom_iii_b_second<D: Diptych>(
    d: &D,
    objects: &[D::Obj],
    good_epis: &[&D::Arr],
    sweep: &mut Sweep,
) -> Result<AxiomOutcome, DiptychError> {
    let mut out = AxiomOutcome::new();
    for p in good_epis {
        for q in good_epis {
            if d.target(p) != d.target(q) {
                continue;
            }
            sweep.tick(1)?;
            let (_, to_p_src, to_q_src) = match d.pullback(p, q) {
                Ok(pb) => pb,
                Err(_) => {
                    out.skipped += 1;
                    continue;
                }
            };
            out.checked += 1;
            // cocone test: for (t, t') with t∘to_p_src = t'∘to_q_src there
            // is a unique mediator out of the common target of p and q
            let a = d.source(p);
            let bp = d.source(q);
            let c = d.target(p);
            for z in objects {
                let ts = d.arrows_between(&a, z);
                let tps = d.arrows_between(&bp, z);
                sweep.tick((ts.len() * tps.len()) as u64)?;
                for t in &ts {
                    for tp in &tps {
                        if d.compose(t, &to_p_src) != d.compose(tp, &to_q_src) {
                            continue;
                        }
                        let mediators = d
                            .arrows_between(&c, z)
                            .into_iter()
                            .filter(|m| &d.compose(m, p) == t && &d.compose(m, q) == tp)
                            .count();
                        if mediators != 1 {
                            out.counterexample = Some(json!({
                                "p": p.to_string(),
                                "q": q.to_string(),
                                "t": t.to_string(),
                                "t'": tp.to_string(),
                                "mediators": mediators,
                            }));
                            return Ok(out);
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}
