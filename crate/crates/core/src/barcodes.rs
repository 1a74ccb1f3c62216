//! Decorated barcodes.
//!
//! Bars are computed by extended persistence: the lower-star filtration of the
//! complex, followed by the cone over the complex in upper-star order, reduced
//! as a single boundary matrix over GF(2). Pairs are classified as ordinary,
//! relative or extended and decoded into the four interval kinds of levelset
//! persistence:
//!
//! | pair             | bar                        |
//! |------------------|----------------------------|
//! | `Ext_r(b,d)`, b ≤ d | closed r-bar `[b,d]`       |
//! | `Ext_r(b,d)`, b > d | open (r−1)-bar `(d,b)`     |
//! | `Ord_r(b,d)`        | closed-open r-bar `[b,d)`  |
//! | `Rel_r(b,d)`        | open-closed (r−1)-bar `(d,b]` |

use std::cmp::Reverse;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::complex::{faces, validate, Simplex, SimplicialComplex, VertexFunction};
use crate::error::{invalid, Error, Result};
use crate::invariants::{MassKind, PointMassMap};
use crate::value::{format_value, serialize_value, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BarKind {
    Closed,
    Open,
    ClosedOpen,
    OpenClosed,
}

impl BarKind {
    pub const ALL: [BarKind; 4] = [
        BarKind::Closed,
        BarKind::Open,
        BarKind::ClosedOpen,
        BarKind::OpenClosed,
    ];

    /// Short name: `c`, `o`, `co`, `oc`.
    pub fn short(self) -> &'static str {
        match self {
            BarKind::Closed => "c",
            BarKind::Open => "o",
            BarKind::ClosedOpen => "co",
            BarKind::OpenClosed => "oc",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "c" | "closed" => Some(BarKind::Closed),
            "o" | "open" => Some(BarKind::Open),
            "co" | "closed_open" | "closed-open" => Some(BarKind::ClosedOpen),
            "oc" | "open_closed" | "open-closed" => Some(BarKind::OpenClosed),
            _ => None,
        }
    }
}

/// One bar of degree `r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DecoratedInterval {
    pub r: usize,
    pub kind: BarKind,
    #[serde(serialize_with = "serialize_value")]
    pub left: Value,
    #[serde(serialize_with = "serialize_value")]
    pub right: Value,
}

impl DecoratedInterval {
    pub fn new(r: usize, kind: BarKind, left: Value, right: Value) -> Result<Self> {
        let ok = match kind {
            BarKind::Closed => left <= right,
            _ => left < right,
        };
        if !ok {
            return Err(invalid!(
                "{kind:?} bar needs left {} right, got {} and {}",
                if kind == BarKind::Closed { "<=" } else { "<" },
                format_value(&left),
                format_value(&right)
            ));
        }
        Ok(Self {
            r,
            kind,
            left,
            right,
        })
    }
}

impl fmt::Display for DecoratedInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (open, close) = match self.kind {
            BarKind::Closed => ("[", "]"),
            BarKind::Open => ("(", ")"),
            BarKind::ClosedOpen => ("[", ")"),
            BarKind::OpenClosed => ("(", "]"),
        };
        write!(
            f,
            "H{}: {open}{}, {}{close}",
            self.r,
            format_value(&self.left),
            format_value(&self.right)
        )
    }
}

/// A finite multiset of decorated intervals.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BarcodeSet {
    bars: BTreeMap<DecoratedInterval, usize>,
}

impl BarcodeSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, bar: DecoratedInterval) {
        self.add(bar, 1);
    }

    pub fn add(&mut self, bar: DecoratedInterval, multiplicity: usize) {
        if multiplicity > 0 {
            *self.bars.entry(bar).or_insert(0) += multiplicity;
        }
    }

    /// Removes one copy; returns whether the bar was present.
    pub fn remove(&mut self, bar: &DecoratedInterval) -> bool {
        match self.bars.get_mut(bar) {
            Some(n) if *n > 1 => {
                *n -= 1;
                true
            }
            Some(_) => {
                self.bars.remove(bar);
                true
            }
            None => false,
        }
    }

    /// Distinct bars with their multiplicities, sorted.
    pub fn iter(&self) -> impl Iterator<Item = (&DecoratedInterval, usize)> {
        self.bars.iter().map(|(b, &n)| (b, n))
    }

    /// Bars of one kind and degree.
    pub fn of(&self, kind: BarKind, r: usize) -> impl Iterator<Item = (&DecoratedInterval, usize)> {
        self.iter().filter(move |(b, _)| b.kind == kind && b.r == r)
    }

    pub fn multiplicity(&self, bar: &DecoratedInterval) -> usize {
        self.bars.get(bar).copied().unwrap_or(0)
    }

    /// Number of bars counted with multiplicity.
    pub fn len(&self) -> usize {
        self.bars.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    /// Number of bars of a kind and degree satisfying `pred(left, right)`.
    pub fn count<P>(&self, kind: BarKind, r: usize, mut pred: P) -> usize
    where
        P: FnMut(&Value, &Value) -> bool,
    {
        self.of(kind, r)
            .filter(|(b, _)| pred(&b.left, &b.right))
            .map(|(_, n)| n)
            .sum()
    }

    /// Largest degree carrying a bar.
    pub fn max_degree(&self) -> Option<usize> {
        self.bars.keys().map(|b| b.r).max()
    }
}

impl FromIterator<DecoratedInterval> for BarcodeSet {
    fn from_iter<I: IntoIterator<Item = DecoratedInterval>>(iter: I) -> Self {
        let mut s = BarcodeSet::new();
        for b in iter {
            s.insert(b);
        }
        s
    }
}

impl fmt::Display for BarcodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (bar, n) in self.iter() {
            if n == 1 {
                writeln!(f, "{bar}")?;
            } else {
                writeln!(f, "{bar} x{n}")?;
            }
        }
        Ok(())
    }
}

/// A persistence pair `(birth, death)` in degree `r`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Pair {
    #[serde(serialize_with = "serialize_value")]
    pub birth: Value,
    #[serde(serialize_with = "serialize_value")]
    pub death: Value,
    pub r: usize,
}

/// Extended persistence pairs, each list sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ExtendedPairs {
    /// Both simplices in the ascending part (`birth < death`).
    pub ord: Vec<Pair>,
    /// Both simplices in the coned descending part (`birth > death`).
    pub rel: Vec<Pair>,
    /// Born ascending, killed in the coned part.
    pub ext: Vec<Pair>,
}

/// Lower-star order: by maximal vertex value, then dimension, then vertex tuple.
pub fn filtration_order(k: &SimplicialComplex, f: &VertexFunction) -> Result<Vec<Simplex>> {
    let grid = validate(k, f)?;
    let rank = vertex_ranks(k, f, &grid);
    let mut order: Vec<Simplex> = k.iter().cloned().collect();
    order.sort_by_key(|s| lower_key(s, &rank));
    Ok(order)
}

fn vertex_ranks(
    k: &SimplicialComplex,
    f: &VertexFunction,
    grid: &crate::complex::LevelGrid,
) -> Vec<usize> {
    let mut rank = vec![usize::MAX; k.vertex_count()];
    for v in k.vertices() {
        rank[v] = grid
            .index_of(f.value(v))
            .expect("grid holds every vertex value");
    }
    rank
}

fn lower_key(s: &Simplex, rank: &[usize]) -> (usize, usize, Simplex) {
    let top = s.iter().map(|&v| rank[v]).max().expect("nonempty simplex");
    (top, s.len(), s.clone())
}

fn upper_key(s: &Simplex, rank: &[usize]) -> (Reverse<usize>, usize, Simplex) {
    let bottom = s.iter().map(|&v| rank[v]).min().expect("nonempty simplex");
    (Reverse(bottom), s.len(), s.clone())
}

/// Symmetric difference of two sorted index lists.
fn add_columns(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Standard left-to-right column reduction; returns `(low, column)` pairs.
fn reduce(mut columns: Vec<Vec<usize>>) -> Vec<(usize, usize)> {
    let n = columns.len();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    let mut pairs = Vec::new();
    for j in 0..n {
        let mut col = std::mem::take(&mut columns[j]);
        while let Some(&low) = col.last() {
            match owner[low] {
                Some(k) => col = add_columns(&col, &columns[k]),
                None => break,
            }
        }
        if let Some(&low) = col.last() {
            owner[low] = Some(j);
            pairs.push((low, j));
        }
        columns[j] = col;
    }
    pairs
}

/// Extended persistence of the lower-star filtration, via the cone construction.
pub fn extended_persistence(k: &SimplicialComplex, f: &VertexFunction) -> Result<ExtendedPairs> {
    let grid = validate(k, f)?;
    let rank = vertex_ranks(k, f, &grid);

    let mut ascending: Vec<Simplex> = k.iter().cloned().collect();
    ascending.sort_by_key(|s| lower_key(s, &rank));
    let mut descending = ascending.clone();
    descending.sort_by_key(|s| upper_key(s, &rank));

    // index 0 is the apex, then the complex, then the cone simplices
    let n = ascending.len();
    let asc_index: HashMap<&Simplex, usize> = ascending
        .iter()
        .enumerate()
        .map(|(i, s)| (s, i + 1))
        .collect();
    let cone_index: HashMap<&Simplex, usize> = descending
        .iter()
        .enumerate()
        .map(|(i, s)| (s, n + 1 + i))
        .collect();

    let mut columns: Vec<Vec<usize>> = Vec::with_capacity(2 * n + 1);
    columns.push(Vec::new());
    for s in &ascending {
        let mut col: Vec<usize> = faces(s).map(|t| asc_index[&t]).collect();
        col.sort_unstable();
        columns.push(col);
    }
    for s in &descending {
        let mut col = vec![asc_index[s]];
        if s.len() == 1 {
            col.push(0);
        } else {
            col.extend(faces(s).map(|t| cone_index[&t]));
        }
        col.sort_unstable();
        columns.push(col);
    }

    let value_of = |idx: usize| -> (Value, usize) {
        if idx <= n {
            let s = &ascending[idx - 1];
            let top = s.iter().map(|&v| rank[v]).max().unwrap();
            (grid.value(top).clone(), s.len() - 1)
        } else {
            let s = &descending[idx - n - 1];
            let bottom = s.iter().map(|&v| rank[v]).min().unwrap();
            (grid.value(bottom).clone(), s.len())
        }
    };

    let pairs = reduce(columns);
    if pairs.len() != n {
        return Err(Error::Internal(format!(
            "extended filtration left {} unpaired columns besides the apex",
            2 * n - 2 * pairs.len()
        )));
    }
    let mut out = ExtendedPairs::default();
    for (pos, neg) in pairs {
        if pos == 0 {
            return Err(Error::Internal("the cone apex was paired".into()));
        }
        let (birth, r) = value_of(pos);
        let (death, _) = value_of(neg);
        let pair = Pair { birth, death, r };
        match (pos <= n, neg <= n) {
            (true, true) if pair.birth != pair.death => out.ord.push(pair),
            (false, false) if pair.birth != pair.death => out.rel.push(pair),
            (true, false) => out.ext.push(pair),
            _ => {}
        }
    }
    out.ord.sort();
    out.rel.sort();
    out.ext.sort();
    Ok(out)
}

/// Translates extended pairs into decorated bars.
pub fn decode_pyramid(pairs: &ExtendedPairs) -> BarcodeSet {
    let lower = |r: usize| {
        r.checked_sub(1)
            .expect("pairs shifting degree down have r >= 1")
    };
    let mut bars = BarcodeSet::new();
    for p in &pairs.ext {
        let bar = if p.birth <= p.death {
            DecoratedInterval::new(p.r, BarKind::Closed, p.birth.clone(), p.death.clone())
        } else {
            DecoratedInterval::new(lower(p.r), BarKind::Open, p.death.clone(), p.birth.clone())
        };
        bars.insert(bar.expect("endpoint order checked"));
    }
    for p in &pairs.ord {
        bars.insert(
            DecoratedInterval::new(p.r, BarKind::ClosedOpen, p.birth.clone(), p.death.clone())
                .expect("ordinary pairs have birth < death"),
        );
    }
    for p in &pairs.rel {
        bars.insert(
            DecoratedInterval::new(
                lower(p.r),
                BarKind::OpenClosed,
                p.death.clone(),
                p.birth.clone(),
            )
            .expect("relative pairs have birth > death"),
        );
    }
    bars
}

/// Bars of `(k, f)` by the reduction route.
pub fn pyramid_barcodes(k: &SimplicialComplex, f: &VertexFunction) -> Result<BarcodeSet> {
    Ok(decode_pyramid(&extended_persistence(k, f)?))
}

/// Reads bars off the point-mass supports: `δ_r` above (or on) the diagonal
/// gives closed r-bars, below it open (r−1)-bars; `γ_r` above the diagonal
/// gives closed-open r-bars, below it open-closed r-bars.
pub fn barcodes_from_bh(deltas: &[PointMassMap], gammas: &[PointMassMap]) -> BarcodeSet {
    let mut bars = BarcodeSet::new();
    for map in deltas {
        debug_assert_eq!(map.kind, MassKind::Delta);
        for m in &map.masses {
            let bar = if m.x <= m.y {
                DecoratedInterval::new(m.r, BarKind::Closed, m.x.clone(), m.y.clone())
            } else {
                match m.r.checked_sub(1) {
                    Some(r) => DecoratedInterval::new(r, BarKind::Open, m.y.clone(), m.x.clone()),
                    None => continue,
                }
            };
            bars.add(bar.expect("endpoint order checked"), m.multiplicity);
        }
    }
    for map in gammas {
        debug_assert_eq!(map.kind, MassKind::Gamma);
        for m in &map.masses {
            let bar = if m.x < m.y {
                DecoratedInterval::new(m.r, BarKind::ClosedOpen, m.x.clone(), m.y.clone())
            } else {
                DecoratedInterval::new(m.r, BarKind::OpenClosed, m.y.clone(), m.x.clone())
            };
            bars.add(bar.expect("gamma vanishes on the diagonal"), m.multiplicity);
        }
    }
    bars
}
