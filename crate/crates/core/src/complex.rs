//! Finite simplicial complexes with a vertex function, level subcomplexes on a
//! symbolic grid, and GF(2) homology with explicit bases.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{invalid, usage, Result};
use crate::gf2::{kernel_basis, BitVec, Echelon, Gf2Matrix};
use crate::value::{midpoint, Extended, Value};

/// A simplex as a strictly increasing list of vertex indices.
pub type Simplex = Vec<usize>;

/// A finite abstract simplicial complex.
///
/// Simplices are grouped by dimension and kept in lexicographic order, so a
/// simplex's position in [`SimplicialComplex::simplices`] is its chain-basis
/// index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    by_dim: Vec<Vec<Simplex>>,
}

impl SimplicialComplex {
    /// Builds and validates a complex. Vertex tuples may be given in any order.
    pub fn new<I>(vertex_count: usize, simplices: I) -> Result<Self>
    where
        I: IntoIterator<Item = Simplex>,
    {
        let mut by_dim: Vec<Vec<Simplex>> = Vec::new();
        for mut s in simplices {
            if s.is_empty() {
                return Err(invalid!("empty vertex tuple"));
            }
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(invalid!("simplex {s:?} repeats a vertex"));
            }
            if let Some(&v) = s.iter().find(|&&v| v >= vertex_count) {
                return Err(invalid!(
                    "vertex index {v} in simplex {s:?} is out of range (vertex count {vertex_count})"
                ));
            }
            let d = s.len() - 1;
            if by_dim.len() <= d {
                by_dim.resize_with(d + 1, Vec::new);
            }
            by_dim[d].push(s);
        }
        for list in &mut by_dim {
            list.sort();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(invalid!("duplicate simplex {:?}", w[0]));
            }
        }
        let k = Self {
            vertex_count,
            by_dim,
        };
        k.check_closed()?;
        Ok(k)
    }

    pub fn empty(vertex_count: usize) -> Self {
        Self {
            vertex_count,
            by_dim: Vec::new(),
        }
    }

    fn check_closed(&self) -> Result<()> {
        for d in 1..self.by_dim.len() {
            for s in &self.by_dim[d] {
                for face in faces(s) {
                    if self.index_of(&face).is_none() {
                        return Err(invalid!(
                            "simplex set is not closed under faces: {s:?} is present but its face {face:?} is missing"
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Top dimension, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.by_dim.iter().rposition(|l| !l.is_empty())
    }

    /// Degrees `0..=dim` in which homology can be nonzero.
    pub fn degrees(&self) -> std::ops::Range<usize> {
        0..self.dim().map_or(0, |d| d + 1)
    }

    pub fn simplices(&self, d: usize) -> &[Simplex] {
        self.by_dim.get(d).map_or(&[], |l| l.as_slice())
    }

    pub fn iter(&self) -> impl Iterator<Item = &Simplex> {
        self.by_dim.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.by_dim.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Vertices that are 0-simplices of the complex.
    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.simplices(0).iter().map(|s| s[0])
    }

    /// Index of a (sorted) simplex within its dimension.
    pub fn index_of(&self, simplex: &[usize]) -> Option<usize> {
        let d = simplex.len().checked_sub(1)?;
        self.by_dim
            .get(d)?
            .binary_search_by(|s| s.as_slice().cmp(simplex))
            .ok()
    }

    pub fn contains(&self, simplex: &[usize]) -> bool {
        self.index_of(simplex).is_some()
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.iter().all(|s| other.contains(s))
    }

    /// The full subcomplex on the vertices accepted by `keep`.
    pub fn full_subcomplex<F: Fn(usize) -> bool>(&self, keep: F) -> SimplicialComplex {
        let mut by_dim: Vec<Vec<Simplex>> = self
            .by_dim
            .iter()
            .map(|l| {
                l.iter()
                    .filter(|s| s.iter().all(|&v| keep(v)))
                    .cloned()
                    .collect()
            })
            .collect();
        while by_dim.last().is_some_and(Vec::is_empty) {
            by_dim.pop();
        }
        SimplicialComplex {
            vertex_count: self.vertex_count,
            by_dim,
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.by_dim
            .iter()
            .enumerate()
            .map(|(d, l)| {
                if d % 2 == 0 {
                    l.len() as i64
                } else {
                    -(l.len() as i64)
                }
            })
            .sum()
    }

    /// Matrix of ∂_r : C_r → C_{r−1}; zero rows when `r = 0`.
    pub fn boundary_matrix(&self, r: usize) -> Gf2Matrix {
        let cols = self.simplices(r);
        if r == 0 {
            return Gf2Matrix::zeros(0, cols.len());
        }
        let rows = self.simplices(r - 1).len();
        let columns = cols
            .iter()
            .map(|s| {
                let idx: Vec<usize> = faces(s)
                    .map(|f| self.index_of(&f).expect("complex is face-closed"))
                    .collect();
                BitVec::from_ones(rows, &idx)
            })
            .collect();
        Gf2Matrix::from_columns(rows, columns)
    }
}

/// Codimension-one faces of a simplex.
pub fn faces(s: &[usize]) -> impl Iterator<Item = Simplex> + '_ {
    let n = if s.len() > 1 { s.len() } else { 0 };
    (0..n).map(move |skip| {
        s.iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &v)| v)
            .collect()
    })
}

/// One exact value per vertex index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexFunction {
    values: Vec<Value>,
}

impl VertexFunction {
    pub fn new(values: Vec<Value>) -> Self {
        Self { values }
    }

    pub fn value(&self, v: usize) -> &Value {
        &self.values[v]
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Symbolic coordinate on the level grid `c_0 < … < c_{m−1}`.
///
/// `Mid(i)` stands for any point of the open gap `(c_i, c_{i+1})`; every
/// function of the level sets is constant there.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GridPos {
    NegInf,
    At(usize),
    Mid(usize),
    PosInf,
}

impl GridPos {
    fn key(self) -> usize {
        match self {
            GridPos::NegInf => 0,
            GridPos::At(i) => 2 * i + 1,
            GridPos::Mid(i) => 2 * i + 2,
            GridPos::PosInf => usize::MAX,
        }
    }

    pub fn is_grid_value(self) -> bool {
        matches!(self, GridPos::At(_))
    }
}

impl Ord for GridPos {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for GridPos {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GridPos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridPos::NegInf => f.write_str("-inf"),
            GridPos::At(i) => write!(f, "c{i}"),
            GridPos::Mid(i) => write!(f, "c{i}+"),
            GridPos::PosInf => f.write_str("inf"),
        }
    }
}

impl Serialize for GridPos {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Which family of level sets: `f ≤ a` or `f ≥ a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Sub,
    Super,
}

/// The sorted distinct vertex values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelGrid {
    values: Vec<Value>,
}

impl LevelGrid {
    pub fn new(mut values: Vec<Value>) -> Self {
        values.sort();
        values.dedup();
        Self { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }

    pub fn value(&self, i: usize) -> &Value {
        &self.values[i]
    }

    pub fn index_of(&self, v: &Value) -> Option<usize> {
        self.values.binary_search(v).ok()
    }

    /// All positions in increasing order: `-inf, c0, c0+, c1, …, c_{m−1}, inf`.
    pub fn positions(&self) -> Vec<GridPos> {
        let m = self.len();
        let mut out = Vec::with_capacity(2 * m + 1);
        out.push(GridPos::NegInf);
        for i in 0..m {
            out.push(GridPos::At(i));
            if i + 1 < m {
                out.push(GridPos::Mid(i));
            }
        }
        out.push(GridPos::PosInf);
        out
    }

    /// Grid positions `At(i)`.
    pub fn grid_positions(&self) -> impl Iterator<Item = GridPos> {
        (0..self.len()).map(GridPos::At)
    }

    /// Position whose level sets coincide with those at `v`. Values below the
    /// grid behave like `-inf` and values above it like `+inf`.
    pub fn locate(&self, v: &Value) -> GridPos {
        match self.values.binary_search(v) {
            Ok(i) => GridPos::At(i),
            Err(0) => GridPos::NegInf,
            Err(i) if i == self.len() => GridPos::PosInf,
            Err(i) => GridPos::Mid(i - 1),
        }
    }

    pub fn locate_extended(&self, v: &Extended) -> GridPos {
        match v {
            Extended::NegInf => GridPos::NegInf,
            Extended::PosInf => GridPos::PosInf,
            Extended::Finite(x) => self.locate(x),
        }
    }

    /// A representative value; `Mid(i)` maps to the midpoint of its gap.
    pub fn representative(&self, p: GridPos) -> Extended {
        match p {
            GridPos::NegInf => Extended::NegInf,
            GridPos::PosInf => Extended::PosInf,
            GridPos::At(i) => Extended::Finite(self.values[i].clone()),
            GridPos::Mid(i) => Extended::Finite(midpoint(&self.values[i], &self.values[i + 1])),
        }
    }

    pub fn pred(&self, p: GridPos) -> GridPos {
        match p {
            GridPos::NegInf => GridPos::NegInf,
            GridPos::At(0) => GridPos::NegInf,
            GridPos::At(i) => GridPos::Mid(i - 1),
            GridPos::Mid(i) => GridPos::At(i),
            GridPos::PosInf if self.is_empty() => GridPos::NegInf,
            GridPos::PosInf => GridPos::At(self.len() - 1),
        }
    }

    pub fn succ(&self, p: GridPos) -> GridPos {
        match p {
            GridPos::NegInf if self.is_empty() => GridPos::PosInf,
            GridPos::NegInf => GridPos::At(0),
            GridPos::At(i) if i + 1 < self.len() => GridPos::Mid(i),
            GridPos::At(_) => GridPos::PosInf,
            GridPos::Mid(i) => GridPos::At(i + 1),
            GridPos::PosInf => GridPos::PosInf,
        }
    }

    /// Sublevel slot: 0 is the empty set, `k ≥ 1` keeps `f ≤ c_{k−1}`.
    pub(crate) fn sub_slot(&self, p: GridPos) -> usize {
        match p {
            GridPos::NegInf => 0,
            GridPos::At(i) | GridPos::Mid(i) => i + 1,
            GridPos::PosInf => self.len(),
        }
    }

    /// Superlevel slot: `k < m` keeps `f ≥ c_k`, `m` is the empty set.
    pub(crate) fn super_slot(&self, p: GridPos) -> usize {
        match p {
            GridPos::NegInf => 0,
            GridPos::At(i) => i,
            GridPos::Mid(i) => i + 1,
            GridPos::PosInf => self.len(),
        }
    }
}

/// Checks the function against the complex and returns the level grid.
pub fn validate(k: &SimplicialComplex, f: &VertexFunction) -> Result<LevelGrid> {
    if f.len() != k.vertex_count() {
        return Err(invalid!(
            "function has {} values but the complex has {} vertex indices",
            f.len(),
            k.vertex_count()
        ));
    }
    k.check_closed()?;
    Ok(LevelGrid::new(
        k.vertices().map(|v| f.value(v).clone()).collect(),
    ))
}

/// The full subcomplex on `{f ≤ p}` (sub) or `{f ≥ p}` (super).
pub fn level_subcomplex(
    k: &SimplicialComplex,
    f: &VertexFunction,
    grid: &LevelGrid,
    side: Side,
    p: GridPos,
) -> SimplicialComplex {
    level_subcomplex_at_slot(
        k,
        f,
        grid,
        side,
        match side {
            Side::Sub => grid.sub_slot(p),
            Side::Super => grid.super_slot(p),
        },
    )
}

pub(crate) fn level_subcomplex_at_slot(
    k: &SimplicialComplex,
    f: &VertexFunction,
    grid: &LevelGrid,
    side: Side,
    slot: usize,
) -> SimplicialComplex {
    match side {
        Side::Sub if slot == 0 => SimplicialComplex::empty(k.vertex_count()),
        Side::Sub => {
            let top = grid.value(slot - 1);
            k.full_subcomplex(|v| f.value(v) <= top)
        }
        Side::Super if slot >= grid.len() => SimplicialComplex::empty(k.vertex_count()),
        Side::Super => {
            let bottom = grid.value(slot);
            k.full_subcomplex(|v| f.value(v) >= bottom)
        }
    }
}

/// Degree-`r` homology of a complex with a chosen basis of cycle representatives.
#[derive(Clone, Debug)]
pub struct Homology {
    degree: usize,
    dim: usize,
    chain_len: usize,
    tag_len: usize,
    cycle_basis: Gf2Matrix,
    // boundaries (tag 0) followed by representatives (tag e_j)
    reducer: Echelon,
}

impl Homology {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Columns are r-chains whose classes form a basis of H_r.
    pub fn cycle_basis(&self) -> &Gf2Matrix {
        &self.cycle_basis
    }

    /// Coordinates of the class of an r-cycle in the representative basis.
    pub fn coordinates(&self, cycle: &BitVec) -> Result<BitVec> {
        if cycle.len() != self.chain_len {
            return Err(usage!(
                "chain has length {}, expected {}",
                cycle.len(),
                self.chain_len
            ));
        }
        let (residual, tag) = self
            .reducer
            .reduce(cycle.clone(), BitVec::zeros(self.tag_len));
        if !residual.is_zero() {
            return Err(usage!("chain {cycle:?} is not a cycle"));
        }
        Ok(tag.slice(0, self.dim))
    }
}

/// `dim H_r(k)` with explicit representatives; zero above the top dimension.
pub fn homology(k: &SimplicialComplex, r: usize) -> Homology {
    let n = k.simplices(r).len();
    let cycles = kernel_basis(&k.boundary_matrix(r));
    let tag_len = cycles.dim();
    let mut reducer = Echelon::new(n, tag_len);
    let boundaries = k.boundary_matrix(r + 1);
    for b in boundaries.columns() {
        reducer.insert(b.clone(), BitVec::zeros(tag_len));
    }
    let mut reps = Vec::new();
    for z in cycles.basis().columns() {
        let j = reps.len();
        if reducer
            .insert(z.clone(), BitVec::unit(tag_len, j))
            .is_none()
        {
            reps.push(z.clone());
        }
    }
    Homology {
        degree: r,
        dim: reps.len(),
        chain_len: n,
        cycle_basis: Gf2Matrix::from_columns(n, reps),
        reducer,
        tag_len,
    }
}

/// Matrix of `H_r(sub) → H_r(ambient)` in the representative bases.
pub fn induced_map(
    sub: &SimplicialComplex,
    ambient: &SimplicialComplex,
    r: usize,
) -> Result<Gf2Matrix> {
    if !sub.is_subcomplex_of(ambient) {
        return Err(usage!("source complex is not a subcomplex of the target"));
    }
    Ok(induced_map_with(
        sub,
        &homology(sub, r),
        ambient,
        &homology(ambient, r),
    ))
}

/// Same as [`induced_map`] with precomputed homology; assumes containment.
pub(crate) fn induced_map_with(
    sub: &SimplicialComplex,
    sub_h: &Homology,
    ambient: &SimplicialComplex,
    ambient_h: &Homology,
) -> Gf2Matrix {
    let r = sub_h.degree;
    let n = ambient.simplices(r).len();
    let embed: Vec<usize> = sub
        .simplices(r)
        .iter()
        .map(|s| ambient.index_of(s).expect("subcomplex containment"))
        .collect();
    let columns = sub_h
        .cycle_basis
        .columns()
        .iter()
        .map(|z| {
            let chain = BitVec::from_ones(n, &z.ones().map(|i| embed[i]).collect::<Vec<_>>());
            ambient_h
                .coordinates(&chain)
                .expect("image of a cycle is a cycle")
        })
        .collect();
    Gf2Matrix::from_columns(ambient_h.dim, columns)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::rank;
    use crate::value::int;

    pub(crate) fn cycle4() -> (SimplicialComplex, VertexFunction) {
        let k = SimplicialComplex::new(
            4,
            vec![
                vec![0],
                vec![1],
                vec![2],
                vec![3],
                vec![0, 1],
                vec![1, 2],
                vec![2, 3],
                vec![0, 3],
            ],
        )
        .unwrap();
        (k, VertexFunction::new(vec![int(0), int(1), int(2), int(1)]))
    }

    fn edge() -> (SimplicialComplex, VertexFunction) {
        let k = SimplicialComplex::new(2, vec![vec![0], vec![1], vec![0, 1]]).unwrap();
        (k, VertexFunction::new(vec![int(0), int(1)]))
    }

    fn triangle() -> SimplicialComplex {
        SimplicialComplex::new(
            3,
            vec![
                vec![0],
                vec![1],
                vec![2],
                vec![0, 1],
                vec![0, 2],
                vec![1, 2],
                vec![0, 1, 2],
            ],
        )
        .unwrap()
    }

    #[test]
    fn validate_examples() {
        let k = SimplicialComplex::new(1, vec![vec![0]]).unwrap();
        let g = validate(&k, &VertexFunction::new(vec![int(5)])).unwrap();
        assert_eq!(g.values(), &[int(5)]);

        let err = SimplicialComplex::new(2, vec![vec![0], vec![0, 1]]).unwrap_err();
        assert!(err.to_string().contains("[1]"), "{err}");

        let (k, f) = cycle4();
        assert_eq!(
            validate(&k, &f).unwrap().values(),
            &[int(0), int(1), int(2)]
        );
    }

    #[test]
    fn validate_rejects_bad_input() {
        assert!(SimplicialComplex::new(2, vec![vec![0], vec![3]]).is_err());
        assert!(SimplicialComplex::new(2, vec![vec![0], vec![0]]).is_err());
        assert!(SimplicialComplex::new(2, vec![vec![1, 1]]).is_err());
        let (k, _) = edge();
        assert!(validate(&k, &VertexFunction::new(vec![int(0)])).is_err());
    }

    #[test]
    fn level_subcomplex_examples() {
        let (k, f) = edge();
        let g = validate(&k, &f).unwrap();
        let s0 = level_subcomplex(&k, &f, &g, Side::Sub, GridPos::At(0));
        assert_eq!(s0.iter().cloned().collect::<Vec<_>>(), vec![vec![0]]);
        assert_eq!(level_subcomplex(&k, &f, &g, Side::Sub, GridPos::At(1)), k);

        let (k, f) = cycle4();
        let g = validate(&k, &f).unwrap();
        let sup = level_subcomplex(&k, &f, &g, Side::Super, GridPos::At(1));
        assert_eq!(sup.simplices(1), &[vec![1, 2], vec![2, 3]]);
        assert_eq!(sup.simplices(0).len(), 3);
    }

    #[test]
    fn level_subcomplex_mid_and_infinite_positions() {
        let (k, f) = cycle4();
        let g = validate(&k, &f).unwrap();
        for i in 0..2 {
            assert_eq!(
                level_subcomplex(&k, &f, &g, Side::Sub, GridPos::Mid(i)),
                level_subcomplex(&k, &f, &g, Side::Sub, GridPos::At(i))
            );
            assert_eq!(
                level_subcomplex(&k, &f, &g, Side::Super, GridPos::Mid(i)),
                level_subcomplex(&k, &f, &g, Side::Super, GridPos::At(i + 1))
            );
        }
        assert!(level_subcomplex(&k, &f, &g, Side::Sub, GridPos::NegInf).is_empty());
        assert_eq!(level_subcomplex(&k, &f, &g, Side::Sub, GridPos::PosInf), k);
        assert!(level_subcomplex(&k, &f, &g, Side::Super, GridPos::PosInf).is_empty());
        assert_eq!(
            level_subcomplex(&k, &f, &g, Side::Super, GridPos::NegInf),
            k
        );
    }

    #[test]
    fn homology_examples() {
        let point = SimplicialComplex::new(1, vec![vec![0]]).unwrap();
        assert_eq!(homology(&point, 0).dim(), 1);
        assert_eq!(homology(&point, 1).dim(), 0);

        let (c4, _) = cycle4();
        assert_eq!(homology(&c4, 0).dim(), 1);
        assert_eq!(homology(&c4, 1).dim(), 1);
        assert_eq!(rank(&c4.boundary_matrix(1)), 3);

        assert_eq!(homology(&triangle(), 1).dim(), 0);
        assert_eq!(homology(&triangle(), 0).dim(), 1);
        assert_eq!(homology(&SimplicialComplex::empty(3), 0).dim(), 0);
    }

    #[test]
    fn induced_map_examples() {
        let (k, _) = edge();
        let v0 = SimplicialComplex::new(2, vec![vec![0]]).unwrap();
        let m = induced_map(&v0, &k, 0).unwrap();
        assert_eq!((m.rows(), m.cols(), rank(&m)), (1, 1, 1));

        let (c4, _) = cycle4();
        let pts = SimplicialComplex::new(4, vec![vec![1], vec![3]]).unwrap();
        let m = induced_map(&pts, &c4, 0).unwrap();
        assert_eq!((m.rows(), m.cols(), rank(&m)), (1, 2, 1));

        let path =
            SimplicialComplex::new(4, vec![vec![1], vec![2], vec![3], vec![1, 2], vec![2, 3]])
                .unwrap();
        let m = induced_map(&path, &c4, 1).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 0));

        assert!(matches!(
            induced_map(&c4, &path, 0),
            Err(crate::Error::Usage(_))
        ));
    }

    #[test]
    fn grid_positions_are_ordered() {
        let (k, f) = cycle4();
        let g = validate(&k, &f).unwrap();
        let ps = g.positions();
        assert!(ps.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(ps.len(), 7);
        for w in ps.windows(2) {
            assert_eq!(g.succ(w[0]), w[1]);
            assert_eq!(g.pred(w[1]), w[0]);
        }
        assert_eq!(g.locate(&crate::value::ratio(1, 2)), GridPos::Mid(0));
        assert_eq!(g.locate(&int(-4)), GridPos::NegInf);
        assert_eq!(g.locate(&int(9)), GridPos::PosInf);
    }
}
