//! The simplicial site of nonzero finite cardinals: canonical generators,
//! monotone normal forms, the mirror functors between the monotone
//! subcategories and their duals, and the pushout/pullback status of the
//! generating relation squares.
//!
//! Objects are nonzero cardinals `n`, elements numbered `0..n-1`; the
//! dotted object notation of the indexing site is handled purely in
//! display.

use crate::finmap::{self, FiniteMap, FiniteSet, SquareData};
use serde::Serialize;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimplicialError {
    #[error("index {index} out of range for {kind} at level {level}")]
    IndexOutOfRange { kind: &'static str, level: usize, index: usize },
    #[error("cardinal objects must be nonzero")]
    ZeroCardinal,
    #[error("arrow is not monotone")]
    NotMonotone,
    #[error("arrow is not injective")]
    NotInjective,
    #[error("arrow is not surjective")]
    NotSurjective,
    #[error("indices do not form a generating relation square: {0}")]
    InvalidRelation(String),
    #[error("arrows not composable: {0}")]
    NotComposable(String),
}

/// A total map between nonzero finite cardinals.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CardinalArrow {
    source: usize,
    target: usize,
    table: Vec<usize>,
}

impl CardinalArrow {
    pub fn new(source: usize, target: usize, table: Vec<usize>) -> Result<Self, SimplicialError> {
        if table.len() != source || table.iter().any(|&v| v >= target) {
            return Err(SimplicialError::NotComposable(format!(
                "table {table:?} is not a total map {source}->{target}"
            )));
        }
        Ok(CardinalArrow { source, target, table })
    }

    pub fn identity(n: usize) -> Self {
        CardinalArrow { source: n, target: n, table: (0..n).collect() }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }

    /// `self` followed by `g`.
    pub fn then(&self, g: &CardinalArrow) -> Result<CardinalArrow, SimplicialError> {
        if self.target != g.source {
            return Err(SimplicialError::NotComposable(format!(
                "{} -> {} then {} -> {}",
                self.source, self.target, g.source, g.target
            )));
        }
        Ok(CardinalArrow {
            source: self.source,
            target: g.target,
            table: self.table.iter().map(|&i| g.table[i]).collect(),
        })
    }

    pub fn is_monotone(&self) -> bool {
        self.table.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target];
        self.table.iter().all(|&i| !std::mem::replace(&mut seen[i], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target];
        for &i in &self.table {
            seen[i] = true;
        }
        seen.iter().all(|&b| b)
    }

    /// Realize the arrow as a map of canonical finite sets for the
    /// brute-force universal-property machinery.
    pub fn to_finite_map(&self) -> FiniteMap {
        let s = cardinal_set(self.source);
        let t = cardinal_set(self.target);
        FiniteMap::from_fn(&s, &t, |x| {
            let i: usize = x.parse().unwrap();
            self.table[i].to_string()
        })
        .unwrap()
    }
}

impl fmt::Display for CardinalArrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}{:?}", self.source, self.target, self.table)
    }
}

/// Canonical finite-set avatar of a cardinal, elements `"0".."n-1"`.
pub fn cardinal_set(n: usize) -> FiniteSet {
    FiniteSet::new(format!("card{n}"), (0..n).map(|i| i.to_string())).unwrap()
}

/// A cardinal arrow regarded as an arrow of the dual category, with formal
/// source and target exchanged.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DualCardinalArrow {
    underlying: CardinalArrow,
}

impl DualCardinalArrow {
    pub fn new(underlying: CardinalArrow) -> Self {
        DualCardinalArrow { underlying }
    }

    pub fn underlying(&self) -> &CardinalArrow {
        &self.underlying
    }

    pub fn source(&self) -> usize {
        self.underlying.target
    }

    pub fn target(&self) -> usize {
        self.underlying.source
    }

    /// `self` followed by `g` in the dual category.
    pub fn then(&self, g: &DualCardinalArrow) -> Result<DualCardinalArrow, SimplicialError> {
        // (a*) then (b*) = (b then a)*
        Ok(DualCardinalArrow { underlying: g.underlying.then(&self.underlying)? })
    }
}

impl fmt::Display for DualCardinalArrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})*", self.underlying)
    }
}

/// Which generator family a symbol belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum GeneratorKind {
    Delta,
    Sigma,
}

/// A canonical generator symbol: `delta(n, j) : n -> n+1` skips the value
/// `j` (0 <= j <= n); `sigma(n, j) : n+1 -> n` repeats the value `j`
/// (0 <= j <= n-1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct GeneratorSymbol {
    pub kind: GeneratorKind,
    pub level: usize,
    pub index: usize,
}

impl GeneratorSymbol {
    pub fn arrow(&self) -> CardinalArrow {
        match self.kind {
            GeneratorKind::Delta => delta(self.level, self.index).unwrap(),
            GeneratorKind::Sigma => sigma(self.level, self.index).unwrap(),
        }
    }
}

impl fmt::Display for GeneratorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GeneratorKind::Delta => write!(f, "delta({},{})", self.level, self.index),
            GeneratorKind::Sigma => write!(f, "sigma({},{})", self.level, self.index),
        }
    }
}

/// The monotone injection `n -> n+1` skipping the value `j`.
pub fn delta(n: usize, j: usize) -> Result<CardinalArrow, SimplicialError> {
    if j > n {
        return Err(SimplicialError::IndexOutOfRange { kind: "delta", level: n, index: j });
    }
    let table = (0..n).map(|i| if i < j { i } else { i + 1 }).collect();
    Ok(CardinalArrow { source: n, target: n + 1, table })
}

/// The monotone surjection `n+1 -> n` repeating the value `j`.
pub fn sigma(n: usize, j: usize) -> Result<CardinalArrow, SimplicialError> {
    if n == 0 {
        return Err(SimplicialError::ZeroCardinal);
    }
    if j + 1 > n {
        return Err(SimplicialError::IndexOutOfRange { kind: "sigma", level: n, index: j });
    }
    let table = (0..=n).map(|i| if i <= j { i } else { i - 1 }).collect();
    Ok(CardinalArrow { source: n + 1, target: n, table })
}

/// Normal form of a monotone map: sigmas applied first with strictly
/// decreasing indices, then deltas with strictly increasing indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    /// (level, index) of each sigma, in application order.
    pub sigmas: Vec<(usize, usize)>,
    /// (level, index) of each delta, in application order.
    pub deltas: Vec<(usize, usize)>,
}

impl Factorization {
    pub fn recompose(&self, source: usize) -> CardinalArrow {
        let mut acc = CardinalArrow::identity(source);
        for &(n, j) in &self.sigmas {
            acc = acc.then(&sigma(n, j).unwrap()).unwrap();
        }
        for &(n, j) in &self.deltas {
            acc = acc.then(&delta(n, j).unwrap()).unwrap();
        }
        acc
    }
}

/// Factor a monotone map through its normal form. Sigma indices are the
/// positions where consecutive values repeat, delta indices the gaps in
/// the image.
pub fn factorize(a: &CardinalArrow) -> Result<Factorization, SimplicialError> {
    if !a.is_monotone() {
        return Err(SimplicialError::NotMonotone);
    }
    let mut dup: Vec<usize> = (0..a.source.saturating_sub(1))
        .filter(|&i| a.table[i] == a.table[i + 1])
        .collect();
    dup.sort_unstable_by(|x, y| y.cmp(x)); // strictly decreasing
    let mut gaps: Vec<usize> = (0..a.target).filter(|v| !a.table.contains(v)).collect();
    gaps.sort_unstable(); // strictly increasing

    let mut sigmas = Vec::new();
    let mut level = a.source;
    for &j in &dup {
        level -= 1;
        sigmas.push((level, j));
    }
    let mut deltas = Vec::new();
    for &i in &gaps {
        deltas.push((level, i));
        level += 1;
    }
    let fact = Factorization { sigmas, deltas };
    debug_assert_eq!(&fact.recompose(a.source), a);
    Ok(fact)
}

/// Mirror a monotone injection into the dual category: on generators,
/// `delta(n,j)` goes to the dual of `sigma(n,j)`, extended functorially.
pub fn phi(a: &CardinalArrow) -> Result<DualCardinalArrow, SimplicialError> {
    if !a.is_monotone() {
        return Err(SimplicialError::NotMonotone);
    }
    if !a.is_injective() {
        return Err(SimplicialError::NotInjective);
    }
    let fact = factorize(a)?;
    let mut acc = DualCardinalArrow::new(CardinalArrow::identity(a.source));
    for &(n, j) in &fact.deltas {
        acc = acc.then(&DualCardinalArrow::new(sigma(n, j).unwrap()))?;
    }
    Ok(acc)
}

/// Mirror a monotone surjection into the dual category: on generators,
/// `sigma(n,j)` goes to the dual of `delta(n,j)`, extended functorially.
pub fn psi(a: &CardinalArrow) -> Result<DualCardinalArrow, SimplicialError> {
    if !a.is_monotone() {
        return Err(SimplicialError::NotMonotone);
    }
    if !a.is_surjective() {
        return Err(SimplicialError::NotSurjective);
    }
    let fact = factorize(a)?;
    let mut acc = DualCardinalArrow::new(CardinalArrow::identity(a.source));
    for &(n, j) in &fact.sigmas {
        acc = acc.then(&DualCardinalArrow::new(delta(n, j).unwrap()))?;
    }
    Ok(acc)
}

/// The three families of generating relation squares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RelationSquareKind {
    /// `delta(n+1,i) ∘ delta(n,j) = delta(n+1,j+1) ∘ delta(n,i)` for `i <= j`.
    DeltaDelta,
    /// `sigma(n,j) ∘ sigma(n+1,i) = sigma(n,i) ∘ sigma(n+1,j+1)` for `i <= j`.
    SigmaSigma,
    /// `sigma(n+1,j) ∘ delta(n+1,i) = delta(n,i) ∘ sigma(n,j-1)` for `i < j`.
    DeltaSigmaLow,
    /// `sigma(n+1,j) ∘ delta(n+1,i) = delta(n,i-1) ∘ sigma(n,j)` for `i > j+1`.
    DeltaSigmaHigh,
}

/// A generating relation square, stored as the four edges of the
/// commutative square (top/left the one path, right/bottom the other).
#[derive(Debug, Clone)]
pub struct RelationSquare {
    pub kind: RelationSquareKind,
    pub n: usize,
    pub i: usize,
    pub j: usize,
    pub top: CardinalArrow,
    pub right: CardinalArrow,
    pub left: CardinalArrow,
    pub bottom: CardinalArrow,
}

/// Build the relation square for the given kind and indices; the two
/// paths are checked to agree as tables.
pub fn relation_square(
    kind: RelationSquareKind,
    n: usize,
    i: usize,
    j: usize,
) -> Result<RelationSquare, SimplicialError> {
    let bad = |msg: String| Err(SimplicialError::InvalidRelation(msg));
    let (top, right, left, bottom) = match kind {
        RelationSquareKind::DeltaDelta => {
            if !(i <= j && j <= n) {
                return bad(format!("delta-delta needs i <= j <= n, got n={n} i={i} j={j}"));
            }
            (delta(n, j)?, delta(n + 1, i)?, delta(n, i)?, delta(n + 1, j + 1)?)
        }
        RelationSquareKind::SigmaSigma => {
            if n < 1 || !(i <= j && j + 1 <= n) {
                return bad(format!("sigma-sigma needs i <= j <= n-1, got n={n} i={i} j={j}"));
            }
            (sigma(n + 1, i)?, sigma(n, j)?, sigma(n + 1, j + 1)?, sigma(n, i)?)
        }
        RelationSquareKind::DeltaSigmaLow => {
            if !(i < j && j <= n) {
                return bad(format!("mixed(low) needs i < j <= n, got n={n} i={i} j={j}"));
            }
            (delta(n + 1, i)?, sigma(n + 1, j)?, sigma(n, j - 1)?, delta(n, i)?)
        }
        RelationSquareKind::DeltaSigmaHigh => {
            if !(i > j + 1 && i <= n + 1 && j + 1 <= n) {
                return bad(format!(
                    "mixed(high) needs j+1 < i <= n+1, j <= n-1, got n={n} i={i} j={j}"
                ));
            }
            (delta(n + 1, i)?, sigma(n + 1, j)?, sigma(n, j)?, delta(n, i - 1)?)
        }
    };
    let via_right = top.then(&right)?;
    let via_bottom = left.then(&bottom)?;
    if via_right != via_bottom {
        return bad(format!("paths disagree: {via_right} vs {via_bottom}"));
    }
    Ok(RelationSquare { kind, n, i, j, top, right, left, bottom })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SquareStatus {
    pub pushout_in_nc: bool,
    pub pullback_in_nc: bool,
}

/// Pushout/pullback status of a generating relation square in the category
/// of finite cardinals, decided by brute force on the underlying sets.
pub fn generating_square_status(sq: &RelationSquare) -> SquareStatus {
    let top = sq.top.to_finite_map();
    let right = sq.right.to_finite_map();
    let left = sq.left.to_finite_map();
    let bottom = sq.bottom.to_finite_map();
    // Pushout of the span (top, left) against the cocone (right, bottom):
    // square with corners A' (common source), B' (via top), A (via left), B.
    let square = SquareData::new(top.clone(), left.clone(), bottom.clone(), right.clone())
        .expect("relation square shape");
    let pushout_in_nc = finmap::is_pushout(&square).expect("relation square commutes");
    // Pullback status: the canonical pullback of (bottom, right) compared
    // with the comparison map from the common source.
    let pb = finmap::pullback(&bottom, &right).unwrap();
    let cmp = finmap::into_pullback(&left, &top, &pb).unwrap();
    let pullback_in_nc = cmp.is_bijective();
    SquareStatus { pushout_in_nc, pullback_in_nc }
}

/// The statuses reported for the generating squares: every kind is a
/// pushout; only the sigma-sigma squares fail to be pullbacks.
pub fn expected_square_status(kind: RelationSquareKind) -> SquareStatus {
    SquareStatus {
        pushout_in_nc: true,
        pullback_in_nc: !matches!(kind, RelationSquareKind::SigmaSigma),
    }
}

/// Enumerate every valid generating relation square whose largest cardinal
/// is at most `max_cardinal`.
pub fn relation_squares_up_to(max_cardinal: usize) -> Vec<RelationSquare> {
    let mut out = Vec::new();
    for n in 1..max_cardinal.saturating_sub(1) + 1 {
        if n + 2 > max_cardinal {
            break;
        }
        for i in 0..=n + 1 {
            for j in 0..=n {
                for kind in [
                    RelationSquareKind::DeltaDelta,
                    RelationSquareKind::SigmaSigma,
                    RelationSquareKind::DeltaSigmaLow,
                    RelationSquareKind::DeltaSigmaHigh,
                ] {
                    if let Ok(sq) = relation_square(kind, n, i, j) {
                        out.push(sq);
                    }
                }
            }
        }
    }
    out
}

/// Enumerate all monotone maps `m -> n`.
pub fn monotone_maps(m: usize, n: usize) -> Vec<CardinalArrow> {
    let mut out = Vec::new();
    let mut table = vec![0usize; m];
    if m == 0 || n == 0 {
        return out;
    }
    loop {
        if table.windows(2).all(|w| w[0] <= w[1]) {
            out.push(CardinalArrow { source: m, target: n, table: table.clone() });
        }
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_skips_value() {
        let d = delta(1, 0).unwrap();
        assert_eq!((d.source(), d.target()), (1, 2));
        assert_eq!(d.table(), &[1]);
    }

    #[test]
    fn sigma_repeats_value() {
        let s = sigma(1, 0).unwrap();
        assert_eq!((s.source(), s.target()), (2, 1));
        assert_eq!(s.table(), &[0, 0]);
    }

    #[test]
    fn index_ranges_enforced() {
        assert!(delta(2, 3).is_err());
        assert!(sigma(2, 2).is_err());
        assert!(delta(2, 2).is_ok());
        assert!(sigma(2, 1).is_ok());
    }

    #[test]
    fn cosimplicial_identity_by_table() {
        // delta_i ∘ delta_j = delta_{j+1} ∘ delta_i for i <= j
        for n in 1..=4 {
            for j in 0..=n {
                for i in 0..=j {
                    let lhs = delta(n, j).unwrap().then(&delta(n + 1, i).unwrap()).unwrap();
                    let rhs = delta(n, i).unwrap().then(&delta(n + 1, j + 1).unwrap()).unwrap();
                    assert_eq!(lhs, rhs, "n={n} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn factorization_normal_form_roundtrip() {
        for m in 1..=4 {
            for n in 1..=4 {
                for a in monotone_maps(m, n) {
                    let f = factorize(&a).unwrap();
                    assert_eq!(f.recompose(m), a);
                    // sigmas strictly decreasing, deltas strictly increasing
                    assert!(f.sigmas.windows(2).all(|w| w[0].1 > w[1].1));
                    assert!(f.deltas.windows(2).all(|w| w[0].1 < w[1].1));
                }
            }
        }
    }

    #[test]
    fn phi_on_generator() {
        let img = phi(&delta(1, 0).unwrap()).unwrap();
        assert_eq!(img.underlying(), &sigma(1, 0).unwrap());
        assert_eq!((img.source(), img.target()), (1, 2));
    }

    #[test]
    fn psi_on_generator() {
        let img = psi(&sigma(1, 0).unwrap()).unwrap();
        assert_eq!(img.underlying(), &delta(1, 0).unwrap());
        assert_eq!((img.source(), img.target()), (2, 1));
    }

    #[test]
    fn phi_functorial_on_delta_composites() {
        let d1 = delta(2, 1).unwrap();
        let d2 = delta(3, 0).unwrap();
        let composite = d1.then(&d2).unwrap();
        let lhs = phi(&composite).unwrap();
        let rhs = phi(&d1).unwrap().then(&phi(&d2).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn phi_psi_mutually_inverse_on_generators() {
        for n in 1..=4 {
            for j in 0..=n {
                let d = delta(n, j).unwrap();
                let s = phi(&d).unwrap().underlying().clone();
                assert_eq!(psi(&s).unwrap().underlying(), &d);
            }
        }
    }

    #[test]
    fn generating_square_statuses() {
        let dd = relation_square(RelationSquareKind::DeltaDelta, 1, 0, 0).unwrap();
        assert_eq!(
            generating_square_status(&dd),
            SquareStatus { pushout_in_nc: true, pullback_in_nc: true }
        );
        let ss = relation_square(RelationSquareKind::SigmaSigma, 1, 0, 0).unwrap();
        assert_eq!(
            generating_square_status(&ss),
            SquareStatus { pushout_in_nc: true, pullback_in_nc: false }
        );
        let ms = relation_square(RelationSquareKind::DeltaSigmaLow, 1, 0, 1).unwrap();
        assert_eq!(
            generating_square_status(&ms),
            SquareStatus { pushout_in_nc: true, pullback_in_nc: true }
        );
    }

    #[test]
    fn invalid_relation_indices_rejected() {
        assert!(matches!(
            relation_square(RelationSquareKind::DeltaSigmaLow, 1, 1, 1),
            Err(SimplicialError::InvalidRelation(_))
        ));
    }
}
