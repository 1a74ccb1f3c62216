//! Levelset zigzag of a graph, decomposed into intervals.
//!
//! Nodes alternate between levelsets at regular values and slabs between
//! consecutive regular values. With grid `c_0 < … < c_{m-1}` and regular values
//! `s_0 < c_0 < s_1 < … < c_{m-1} < s_m`, node `2i` is the levelset at `s_i` and
//! node `2i+1` the slab over `[s_i, s_{i+1}]`, which contains `c_i`. Every arrow
//! points from a levelset into a neighbouring slab.

use std::collections::BTreeMap;

use crate::barcodes::{BarKind, BarcodeSet, DecoratedInterval};
use crate::complex::{
    homology, induced_map_with, validate, LevelGrid, SimplicialComplex, VertexFunction,
};
use crate::error::{usage, Error, Result};
use crate::gf2::{kernel_basis, BitVec, Gf2Matrix, Subspace};
use crate::value::{int, midpoint, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeLabel {
    Levelset(usize),
    Slab(usize),
}

/// An arrow between nodes `k` and `k+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    /// `true` for `k → k+1`, `false` for `k+1 → k`.
    pub forward: bool,
    /// Target dimension by source dimension.
    pub matrix: Gf2Matrix,
}

/// A zigzag of GF(2) vector spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZigzagModule {
    node_dims: Vec<usize>,
    arrows: Vec<Arrow>,
    labels: Vec<NodeLabel>,
}

impl ZigzagModule {
    /// A module with one arrow between each pair of consecutive nodes.
    pub fn new(node_dims: Vec<usize>, arrows: Vec<Arrow>) -> Result<Self> {
        if node_dims.is_empty() {
            return Err(usage!("a zigzag needs at least one node"));
        }
        if arrows.len() + 1 != node_dims.len() {
            return Err(usage!(
                "{} nodes need {} arrows, got {}",
                node_dims.len(),
                node_dims.len() - 1,
                arrows.len()
            ));
        }
        for (k, a) in arrows.iter().enumerate() {
            let (src, tgt) = if a.forward { (k, k + 1) } else { (k + 1, k) };
            if a.matrix.cols() != node_dims[src] || a.matrix.rows() != node_dims[tgt] {
                return Err(usage!(
                    "arrow {k} is {}x{} but joins nodes of dimension {} -> {}",
                    a.matrix.rows(),
                    a.matrix.cols(),
                    node_dims[src],
                    node_dims[tgt]
                ));
            }
        }
        let labels = (0..node_dims.len())
            .map(|n| {
                if n % 2 == 0 {
                    NodeLabel::Levelset(n / 2)
                } else {
                    NodeLabel::Slab(n / 2)
                }
            })
            .collect();
        Ok(Self {
            node_dims,
            arrows,
            labels,
        })
    }

    pub fn len(&self) -> usize {
        self.node_dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.node_dims.is_empty()
    }

    pub fn node_dims(&self) -> &[usize] {
        &self.node_dims
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn labels(&self) -> &[NodeLabel] {
        &self.labels
    }

    fn offsets(&self, p: usize, q: usize) -> Vec<usize> {
        let mut off = Vec::with_capacity(q - p + 2);
        let mut acc = 0;
        for n in p..=q {
            off.push(acc);
            acc += self.node_dims[n];
        }
        off.push(acc);
        off
    }

    /// Rank of the map from the limit to the colimit over nodes `p..=q`.
    pub fn generalized_rank(&self, p: usize, q: usize) -> Result<usize> {
        if p > q || q >= self.len() {
            return Err(usage!("node range [{p}, {q}] is outside 0..{}", self.len()));
        }
        let off = self.offsets(p, q);
        let total = off[q - p + 1];
        if total == 0 {
            return Ok(0);
        }
        let embed = |n: usize, v: &BitVec| -> BitVec {
            let mut out = BitVec::zeros(total);
            for i in v.ones() {
                out.set(off[n - p] + i, true);
            }
            out
        };

        // compatible tuples: M x_src + x_tgt = 0 on every arrow in range
        let ends = |k: usize| {
            if self.arrows[k].forward {
                (k, k + 1)
            } else {
                (k + 1, k)
            }
        };
        let height: usize = (p..q).map(|k| self.node_dims[ends(k).1]).sum();
        let mut constraints = Gf2Matrix::zeros(height, total);
        let mut relations = Vec::new();
        let mut row = 0;
        for k in p..q {
            let (src, tgt) = ends(k);
            let a = &self.arrows[k];
            for (j, col) in a.matrix.columns().iter().enumerate() {
                for i in col.ones() {
                    constraints.set(row + i, off[src - p] + j, true);
                }
                let mut rel = embed(tgt, col);
                rel.flip(off[src - p] + j);
                relations.push(rel);
            }
            for i in 0..self.node_dims[tgt] {
                constraints.set(row + i, off[tgt - p] + i, true);
            }
            row += self.node_dims[tgt];
        }
        let lim = kernel_basis(&constraints);
        let relation_space = Subspace::span(total, &relations);
        let classes: Vec<BitVec> = lim
            .basis()
            .columns()
            .iter()
            .map(|x| embed(p, &x.slice(0, self.node_dims[p])))
            .collect();
        let image = Subspace::span(total, &classes).sum(&relation_space)?;
        Ok(image.dim() - relation_space.dim())
    }

    /// Interval decomposition by inclusion–exclusion of generalized ranks.
    pub fn interval_multiplicities(&self) -> Result<IntervalMultiplicities> {
        let n = self.len();
        let mut rk = vec![vec![0usize; n]; n];
        for (p, row) in rk.iter_mut().enumerate() {
            for (q, cell) in row.iter_mut().enumerate().skip(p) {
                *cell = self.generalized_rank(p, q)?;
            }
        }
        let at = |p: Option<usize>, q: usize| -> i64 {
            match p {
                Some(p) if q < n && p <= q => rk[p][q] as i64,
                _ => 0,
            }
        };
        let mut counts = BTreeMap::new();
        for p in 0..n {
            for q in p..n {
                let m = at(Some(p), q) - at(p.checked_sub(1), q) - at(Some(p), q + 1)
                    + at(p.checked_sub(1), q + 1);
                if m < 0 {
                    return Err(Error::Internal(format!(
                        "negative interval multiplicity {m} on [{p}, {q}]"
                    )));
                }
                if m > 0 {
                    counts.insert((p, q), m as usize);
                }
            }
        }
        let out = IntervalMultiplicities {
            node_count: n,
            counts,
        };
        out.check_against(self, &rk)?;
        Ok(out)
    }
}

/// Counts of interval summands `[p, q]` over node indices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntervalMultiplicities {
    node_count: usize,
    counts: BTreeMap<(usize, usize), usize>,
}

impl IntervalMultiplicities {
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn get(&self, p: usize, q: usize) -> usize {
        self.counts.get(&(p, q)).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.counts.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Node dimensions of the direct sum of the intervals.
    pub fn node_dims(&self) -> Vec<usize> {
        let mut dims = vec![0; self.node_count];
        for ((p, q), m) in self.iter() {
            for d in &mut dims[p..=q] {
                *d += m;
            }
        }
        dims
    }

    /// Generalized rank of the direct sum over `[p, q]`.
    pub fn rank(&self, p: usize, q: usize) -> usize {
        self.iter()
            .filter(|&((a, b), _)| a <= p && q <= b)
            .map(|(_, m)| m)
            .sum()
    }

    fn check_against(&self, zz: &ZigzagModule, rk: &[Vec<usize>]) -> Result<()> {
        if self.node_dims() != zz.node_dims {
            return Err(Error::Internal(format!(
                "intervals rebuild node dimensions {:?}, module has {:?}",
                self.node_dims(),
                zz.node_dims
            )));
        }
        for (p, row) in rk.iter().enumerate() {
            for (q, &expected) in row.iter().enumerate().skip(p) {
                if self.rank(p, q) != expected {
                    return Err(Error::Internal(format!(
                        "intervals give rank {} on [{p}, {q}], module has {expected}",
                        self.rank(p, q),
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Regular values `s_0 < c_0 < s_1 < … < c_{m-1} < s_m`.
pub fn regular_values(grid: &LevelGrid) -> Vec<Value> {
    let c = grid.values();
    let Some((first, last)) = c.first().zip(c.last()) else {
        return vec![int(0)];
    };
    let mut s = vec![first - int(1)];
    s.extend(c.windows(2).map(|w| midpoint(&w[0], &w[1])));
    s.push(last + int(1));
    s
}

/// Graph with every edge cut at each regular and grid value it crosses.
fn subdivide(
    k: &SimplicialComplex,
    f: &VertexFunction,
    cuts: &[Value],
) -> Result<(SimplicialComplex, Vec<Value>)> {
    let mut values: Vec<Value> = f.values().to_vec();
    let mut simplices: Vec<Vec<usize>> = k.simplices(0).to_vec();
    for e in k.simplices(1) {
        let (mut u, mut v) = (e[0], e[1]);
        if values[u] > values[v] {
            std::mem::swap(&mut u, &mut v);
        }
        let (lo, hi) = (values[u].clone(), values[v].clone());
        let mut prev = u;
        for t in cuts.iter().filter(|t| **t > lo && **t < hi) {
            let w = values.len();
            values.push(t.clone());
            simplices.push(vec![w]);
            simplices.push(vec![prev.min(w), prev.max(w)]);
            prev = w;
        }
        simplices.push(vec![prev.min(v), prev.max(v)]);
    }
    let complex = SimplicialComplex::new(values.len(), simplices)?;
    Ok((complex, values))
}

/// The levelset zigzag of `H_r` for a complex of dimension at most one.
pub fn build_levelset_zigzag(
    k: &SimplicialComplex,
    f: &VertexFunction,
    r: usize,
) -> Result<ZigzagModule> {
    if k.dim().is_some_and(|d| d > 1) {
        return Err(Error::Unsupported(format!(
            "levelset zigzag handles graphs only, got a complex of dimension {}",
            k.dim().unwrap()
        )));
    }
    if r > 1 {
        return Err(usage!(
            "graphs carry homology in degrees 0 and 1 only, got {r}"
        ));
    }
    let grid = validate(k, f)?;
    let s = regular_values(&grid);
    let mut cuts: Vec<Value> = s.iter().chain(grid.values()).cloned().collect();
    cuts.sort();
    let (graph, values) = subdivide(k, f, &cuts)?;

    let band =
        |lo: &Value, hi: &Value| graph.full_subcomplex(|v| values[v] >= *lo && values[v] <= *hi);
    let m = grid.len();
    let mut pieces = Vec::with_capacity(2 * m + 1);
    for i in 0..=m {
        pieces.push(band(&s[i], &s[i]));
        if i < m {
            pieces.push(band(&s[i], &s[i + 1]));
        }
    }
    let hom: Vec<_> = pieces.iter().map(|p| homology(p, r)).collect();
    let mut arrows = Vec::with_capacity(pieces.len() - 1);
    for n in 0..pieces.len() - 1 {
        // even nodes are levelsets and always the source
        let (src, tgt, forward) = if n % 2 == 0 {
            (n, n + 1, true)
        } else {
            (n + 1, n, false)
        };
        arrows.push(Arrow {
            forward,
            matrix: induced_map_with(&pieces[src], &hom[src], &pieces[tgt], &hom[tgt]),
        });
    }
    ZigzagModule::new(hom.iter().map(|h| h.dim()).collect(), arrows)
}

/// Translates node intervals of a levelset zigzag into decorated bars.
pub fn decode_zigzag(m: &IntervalMultiplicities, grid: &LevelGrid, r: usize) -> BarcodeSet {
    let mut bars = BarcodeSet::new();
    for ((p, q), count) in m.iter() {
        let (left_closed, left) = if p % 2 == 1 {
            (true, p / 2)
        } else {
            (false, p / 2 - 1)
        };
        let (right_closed, right) = (q % 2 == 1, q / 2);
        let kind = match (left_closed, right_closed) {
            (true, true) => BarKind::Closed,
            (false, false) => BarKind::Open,
            (true, false) => BarKind::ClosedOpen,
            (false, true) => BarKind::OpenClosed,
        };
        let bar =
            DecoratedInterval::new(r, kind, grid.value(left).clone(), grid.value(right).clone())
                .expect("zigzag intervals decode to well-ordered bars");
        bars.add(bar, count);
    }
    bars
}

/// Bars of a graph in all degrees via the zigzag route.
pub fn zigzag_barcodes(k: &SimplicialComplex, f: &VertexFunction) -> Result<BarcodeSet> {
    let grid = validate(k, f)?;
    let mut bars = BarcodeSet::new();
    for r in 0..=1 {
        let zz = build_levelset_zigzag(k, f, r)?;
        for (bar, n) in decode_zigzag(&zz.interval_multiplicities()?, &grid, r).iter() {
            bars.add(bar.clone(), n);
        }
    }
    Ok(bars)
}
