//! The image/kernel route.
//!
//! For each degree `r` this module tracks the images `I_a(r)` and `I^a(r)` of
//! sublevel and superlevel homology in `H_r(X)`, their intersections
//! `F_r(a,b) = I_a(r) ∩ I^b(r)`, and the kernels `T_r(a,b)` of the maps between
//! level sets. Box measures are four-corner inclusion–exclusion sums of these
//! dimensions, and the point masses `δ_r`, `γ_r` are measures of minimal grid
//! boxes.
//!
//! Every level set is one of `m + 1` full subcomplexes per side, so all
//! homology and all maps between level sets are computed once, in
//! [`Invariants::new`], and queried afterwards.

use serde::Serialize;

use crate::complex::{
    homology, induced_map_with, level_subcomplex_at_slot, validate, GridPos, Homology, LevelGrid,
    Side, SimplicialComplex, VertexFunction,
};
use crate::error::{usage, Error, Result};
use crate::gf2::{kernel_basis, Gf2Matrix, Subspace};
use crate::value::{serialize_value, Value};

/// Which inclusion–exclusion formula a box uses, and its corner conventions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum BoxFlavor {
    /// `(x_lo, x_hi] × [y_lo, y_hi)`, measured with `F`.
    F,
    /// `(x_lo, x_hi] × (y_lo, y_hi]` with `x_hi ≤ y_lo`, measured with sublevel `T`.
    TAbove,
    /// `[x_lo, x_hi) × [y_lo, y_hi)` with `y_hi ≤ x_lo`, measured with superlevel `T`.
    TBelow,
}

/// A box in the plane with grid-position corners.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MeasureBox {
    flavor: BoxFlavor,
    x_lo: GridPos,
    x_hi: GridPos,
    y_lo: GridPos,
    y_hi: GridPos,
}

impl MeasureBox {
    pub fn new(
        flavor: BoxFlavor,
        x_lo: GridPos,
        x_hi: GridPos,
        y_lo: GridPos,
        y_hi: GridPos,
    ) -> Result<Self> {
        if x_lo >= x_hi || y_lo >= y_hi {
            return Err(usage!(
                "degenerate box: x in ({x_lo}, {x_hi}), y in ({y_lo}, {y_hi})"
            ));
        }
        match flavor {
            BoxFlavor::TAbove if x_hi > y_lo => {
                return Err(usage!(
                    "box above the diagonal needs x_hi <= y_lo ({x_hi} > {y_lo})"
                ))
            }
            BoxFlavor::TBelow if y_hi > x_lo => {
                return Err(usage!(
                    "box below the diagonal needs y_hi <= x_lo ({y_hi} > {x_lo})"
                ))
            }
            _ => {}
        }
        Ok(Self {
            flavor,
            x_lo,
            x_hi,
            y_lo,
            y_hi,
        })
    }

    pub fn flavor(&self) -> BoxFlavor {
        self.flavor
    }

    pub fn x_lo(&self) -> GridPos {
        self.x_lo
    }

    pub fn x_hi(&self) -> GridPos {
        self.x_hi
    }

    pub fn y_lo(&self) -> GridPos {
        self.y_lo
    }

    pub fn y_hi(&self) -> GridPos {
        self.y_hi
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MassKind {
    Delta,
    Gamma,
}

/// A point of `ℝ²` carrying a positive multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct PointMass {
    #[serde(serialize_with = "serialize_value")]
    pub x: Value,
    #[serde(serialize_with = "serialize_value")]
    pub y: Value,
    pub r: usize,
    pub multiplicity: usize,
}

/// The finite support of `δ_r` or `γ_r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointMassMap {
    pub kind: MassKind,
    pub r: usize,
    /// Sorted by `(x, y)`.
    pub masses: Vec<PointMass>,
}

impl PointMassMap {
    pub fn multiplicity(&self, x: &Value, y: &Value) -> usize {
        self.masses
            .iter()
            .find(|m| &m.x == x && &m.y == y)
            .map_or(0, |m| m.multiplicity)
    }

    pub fn total(&self) -> usize {
        self.masses.iter().map(|m| m.multiplicity).sum()
    }
}

/// Per-degree tables; slot indices follow [`LevelGrid::sub_slot`] and
/// [`LevelGrid::super_slot`].
#[derive(Debug)]
struct DegreeData {
    sub: Vec<Homology>,
    sup: Vec<Homology>,
    sub_images: Vec<Subspace>,
    super_images: Vec<Subspace>,
    f_table: Vec<Vec<usize>>,
    // sub_maps[i][j] for i <= j: H(sub_i) -> H(sub_j)
    sub_maps: Vec<Vec<Gf2Matrix>>,
    // super_maps[i][j] for i >= j: H(super_i) -> H(super_j), stored at [i][i - j]
    super_maps: Vec<Vec<Gf2Matrix>>,
    t_sub: Vec<Vec<usize>>,
    t_super: Vec<Vec<usize>>,
}

/// Frozen image/kernel data for one complex and function.
#[derive(Debug)]
pub struct Invariants {
    complex: SimplicialComplex,
    function: VertexFunction,
    grid: LevelGrid,
    sub_levels: Vec<SimplicialComplex>,
    super_levels: Vec<SimplicialComplex>,
    degrees: Vec<DegreeData>,
}

impl Invariants {
    pub fn new(complex: &SimplicialComplex, function: &VertexFunction) -> Result<Self> {
        let grid = validate(complex, function)?;
        let m = grid.len();
        let sub_levels: Vec<_> = (0..=m)
            .map(|s| level_subcomplex_at_slot(complex, function, &grid, Side::Sub, s))
            .collect();
        let super_levels: Vec<_> = (0..=m)
            .map(|s| level_subcomplex_at_slot(complex, function, &grid, Side::Super, s))
            .collect();
        let degrees = complex
            .degrees()
            .map(|r| DegreeData::build(complex, &sub_levels, &super_levels, r))
            .collect();
        Ok(Self {
            complex: complex.clone(),
            function: function.clone(),
            grid,
            sub_levels,
            super_levels,
            degrees,
        })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn function(&self) -> &VertexFunction {
        &self.function
    }

    pub fn grid(&self) -> &LevelGrid {
        &self.grid
    }

    /// Degrees with potentially nonzero homology.
    pub fn degrees(&self) -> std::ops::Range<usize> {
        0..self.degrees.len()
    }

    fn slot(&self, side: Side, p: GridPos) -> usize {
        match side {
            Side::Sub => self.grid.sub_slot(p),
            Side::Super => self.grid.super_slot(p),
        }
    }

    /// The level subcomplex at `p`.
    pub fn level_complex(&self, side: Side, p: GridPos) -> &SimplicialComplex {
        let s = self.slot(side, p);
        match side {
            Side::Sub => &self.sub_levels[s],
            Side::Super => &self.super_levels[s],
        }
    }

    /// All distinct level subcomplexes of both sides.
    pub fn level_complexes(&self) -> impl Iterator<Item = &SimplicialComplex> {
        self.sub_levels.iter().chain(&self.super_levels)
    }

    pub fn level_homology_dim(&self, side: Side, p: GridPos, r: usize) -> usize {
        let s = self.slot(side, p);
        self.degrees.get(r).map_or(0, |d| match side {
            Side::Sub => d.sub[s].dim(),
            Side::Super => d.sup[s].dim(),
        })
    }

    pub fn betti(&self, r: usize) -> usize {
        self.level_homology_dim(Side::Sub, GridPos::PosInf, r)
    }

    /// Image of level-set homology in `H_r(X)`: `I_a(r)` (sub) or `I^a(r)` (super).
    pub fn persistent_image(&self, side: Side, a: GridPos, r: usize) -> Subspace {
        let s = self.slot(side, a);
        match self.degrees.get(r) {
            None => Subspace::zero(0),
            Some(d) => match side {
                Side::Sub => d.sub_images[s].clone(),
                Side::Super => d.super_images[s].clone(),
            },
        }
    }

    /// `dim (I_a(r) ∩ I^b(r))`.
    pub fn f_dim(&self, a: GridPos, b: GridPos, r: usize) -> usize {
        self.degrees.get(r).map_or(0, |d| {
            d.f_table[self.grid.sub_slot(a)][self.grid.super_slot(b)]
        })
    }

    /// `I_a(r) ∩ I^b(r)` as a subspace of `H_r(X)`.
    pub fn f_space(&self, a: GridPos, b: GridPos, r: usize) -> Subspace {
        self.persistent_image(Side::Sub, a, r)
            .intersect(&self.persistent_image(Side::Super, b, r))
            .expect("images share the ambient H_r(X)")
    }

    /// Kernel dimension of `H_r(sub_a) → H_r(sub_b)` when `a < b`, or of
    /// `H_r(super_a) → H_r(super_b)` when `a > b`.
    pub fn t_dim(&self, a: GridPos, b: GridPos, r: usize) -> Result<usize> {
        if a == b {
            return Err(usage!(
                "kernel dimension needs distinct positions, got {a} twice"
            ));
        }
        Ok(self.t_value(a, b, r))
    }

    /// `t_dim` extended by `T(a, a) = 0` (kernel of an identity).
    fn t_value(&self, a: GridPos, b: GridPos, r: usize) -> usize {
        let Some(d) = self.degrees.get(r) else {
            return 0;
        };
        if a < b {
            d.t_sub[self.grid.sub_slot(a)][self.grid.sub_slot(b)]
        } else if a > b {
            d.t_super[self.grid.super_slot(a)][self.grid.super_slot(b)]
        } else {
            0
        }
    }

    /// Matrix of the inclusion-induced map between level sets. Sublevel maps
    /// need `from ≤ to`, superlevel maps need `from ≥ to`.
    pub fn level_map(&self, side: Side, from: GridPos, to: GridPos, r: usize) -> Result<Gf2Matrix> {
        let (i, j) = (self.slot(side, from), self.slot(side, to));
        let Some(d) = self.degrees.get(r) else {
            return Ok(Gf2Matrix::zeros(0, 0));
        };
        match side {
            Side::Sub if i <= j => Ok(d.sub_maps[i][j - i].clone()),
            Side::Super if i >= j => Ok(d.super_maps[i][i - j].clone()),
            _ => Err(usage!(
                "no inclusion of the {side:?} level set at {from} into the one at {to}"
            )),
        }
    }

    /// `T_r(a,b)` as a subspace of the source level-set homology (`a ≠ b`).
    pub fn t_space(&self, a: GridPos, b: GridPos, r: usize) -> Result<Subspace> {
        if a == b {
            return Err(usage!("kernel needs distinct positions, got {a} twice"));
        }
        let side = if a < b { Side::Sub } else { Side::Super };
        Ok(kernel_basis(&self.level_map(side, a, b, r)?))
    }

    fn f(&self, a: GridPos, b: GridPos, r: usize) -> i64 {
        self.f_dim(a, b, r) as i64
    }

    fn t(&self, a: GridPos, b: GridPos, r: usize) -> i64 {
        self.t_value(a, b, r) as i64
    }

    /// Four-corner inclusion–exclusion measure of a box.
    pub fn box_measure(&self, b: &MeasureBox, r: usize) -> Result<usize> {
        let (x0, x1, y0, y1) = (b.x_lo, b.x_hi, b.y_lo, b.y_hi);
        let v = match b.flavor {
            BoxFlavor::F => {
                self.f(x1, y0, r) + self.f(x0, y1, r) - self.f(x0, y0, r) - self.f(x1, y1, r)
            }
            BoxFlavor::TAbove => {
                self.t(x1, y1, r) + self.t(x0, y0, r) - self.t(x0, y1, r) - self.t(x1, y0, r)
            }
            // [c,d) x [a,b) with c = x_lo, d = x_hi, a = y_lo, b = y_hi
            BoxFlavor::TBelow => {
                self.t(x0, y0, r) + self.t(x1, y1, r) - self.t(x0, y1, r) - self.t(x1, y0, r)
            }
        };
        usize::try_from(v).map_err(|_| {
            Error::Internal(format!("negative measure {v} for box {b:?} in degree {r}"))
        })
    }

    /// Dimension of the quotient space the box measures, constructed explicitly:
    /// `F(b,c) / (F(a,c) + F(b,d))` for `F` boxes and the `T` analogues with the
    /// induced maps between level sets.
    pub fn box_quotient_dim(&self, bx: &MeasureBox, r: usize) -> Result<usize> {
        if self.degrees.get(r).is_none() {
            return Ok(0);
        }
        match bx.flavor {
            BoxFlavor::F => {
                let (a, b, c, d) = (bx.x_lo, bx.x_hi, bx.y_lo, bx.y_hi);
                let whole = self.f_space(b, c, r);
                let part = self.f_space(a, c, r).sum(&self.f_space(b, d, r))?;
                whole.quotient_dim(&part)
            }
            BoxFlavor::TAbove => {
                let (a, b, c, d) = (bx.x_lo, bx.x_hi, bx.y_lo, bx.y_hi);
                let whole = self.t_space(b, d, r)?;
                let pushed =
                    self.t_space(a, d, r)?
                        .image(&self.level_map(Side::Sub, a, b, r)?)?;
                let part = pushed.sum(&self.kernel_or_zero(Side::Sub, b, c, r)?)?;
                whole.quotient_dim(&part)
            }
            BoxFlavor::TBelow => {
                let (c, d, a, b) = (bx.x_lo, bx.x_hi, bx.y_lo, bx.y_hi);
                let whole = self.t_space(c, a, r)?;
                let pushed =
                    self.t_space(d, a, r)?
                        .image(&self.level_map(Side::Super, d, c, r)?)?;
                let part = pushed.sum(&self.kernel_or_zero(Side::Super, c, b, r)?)?;
                whole.quotient_dim(&part)
            }
        }
    }

    fn kernel_or_zero(&self, side: Side, from: GridPos, to: GridPos, r: usize) -> Result<Subspace> {
        let map = self.level_map(side, from, to, r)?;
        if from == to {
            Ok(Subspace::zero(map.cols()))
        } else {
            Ok(kernel_basis(&map))
        }
    }

    /// The box whose measure is the point mass at grid positions `(x, y)`.
    pub fn point_box(&self, kind: MassKind, x: GridPos, y: GridPos) -> Result<MeasureBox> {
        if !x.is_grid_value() || !y.is_grid_value() {
            return Err(usage!("point masses live on grid values, got ({x}, {y})"));
        }
        let g = &self.grid;
        match kind {
            MassKind::Delta => MeasureBox::new(BoxFlavor::F, g.pred(x), x, y, g.succ(y)),
            MassKind::Gamma if x < y => {
                MeasureBox::new(BoxFlavor::TAbove, g.pred(x), x, g.pred(y), y)
            }
            MassKind::Gamma if x > y => {
                MeasureBox::new(BoxFlavor::TBelow, x, g.succ(x), y, g.succ(y))
            }
            MassKind::Gamma => Err(usage!("gamma is not defined on the diagonal ({x}, {y})")),
        }
    }

    /// `δ_r(x, y)` or `γ_r(x, y)` for grid values `x`, `y`.
    pub fn point_mass(&self, kind: MassKind, x: &Value, y: &Value, r: usize) -> Result<usize> {
        let locate = |v: &Value| {
            self.grid.index_of(v).map(GridPos::At).ok_or_else(|| {
                usage!(
                    "{} is not a critical value of the function",
                    crate::value::format_value(v)
                )
            })
        };
        let bx = self.point_box(kind, locate(x)?, locate(y)?)?;
        self.box_measure(&bx, r)
    }

    /// All nonzero point masses of `δ_r` or `γ_r`.
    pub fn support(&self, kind: MassKind, r: usize) -> PointMassMap {
        let m = self.grid.len();
        let mut masses = Vec::new();
        for i in 0..m {
            for j in 0..m {
                if kind == MassKind::Gamma && i == j {
                    continue;
                }
                let bx = self
                    .point_box(kind, GridPos::At(i), GridPos::At(j))
                    .expect("grid point boxes are well formed");
                let mult = self
                    .box_measure(&bx, r)
                    .expect("box measures are nonnegative");
                if mult > 0 {
                    masses.push(PointMass {
                        x: self.grid.value(i).clone(),
                        y: self.grid.value(j).clone(),
                        r,
                        multiplicity: mult,
                    });
                }
            }
        }
        PointMassMap { kind, r, masses }
    }
}

impl DegreeData {
    fn build(
        complex: &SimplicialComplex,
        sub_levels: &[SimplicialComplex],
        super_levels: &[SimplicialComplex],
        r: usize,
    ) -> Self {
        let ambient = homology(complex, r);
        let sub: Vec<Homology> = sub_levels.iter().map(|k| homology(k, r)).collect();
        let sup: Vec<Homology> = super_levels.iter().map(|k| homology(k, r)).collect();
        let image = |levels: &[SimplicialComplex], hs: &[Homology]| -> Vec<Subspace> {
            levels
                .iter()
                .zip(hs)
                .map(|(k, h)| Subspace::column_space(&induced_map_with(k, h, complex, &ambient)))
                .collect()
        };
        let sub_images = image(sub_levels, &sub);
        let super_images = image(super_levels, &sup);
        let f_table = sub_images
            .iter()
            .map(|u| {
                super_images
                    .iter()
                    .map(|v| u.intersect(v).expect("common ambient").dim())
                    .collect()
            })
            .collect();

        let n = sub_levels.len();
        // sub_maps[i][k]: sub_i -> sub_{i+k}
        let sub_maps: Vec<Vec<Gf2Matrix>> = (0..n)
            .map(|i| {
                (i..n)
                    .map(|j| induced_map_with(&sub_levels[i], &sub[i], &sub_levels[j], &sub[j]))
                    .collect()
            })
            .collect();
        // super_maps[i][k]: super_i -> super_{i-k}
        let super_maps: Vec<Vec<Gf2Matrix>> = (0..n)
            .map(|i| {
                (0..=i)
                    .map(|k| {
                        induced_map_with(
                            &super_levels[i],
                            &sup[i],
                            &super_levels[i - k],
                            &sup[i - k],
                        )
                    })
                    .collect()
            })
            .collect();
        let kernel_dim = |m: &Gf2Matrix| m.cols() - crate::gf2::rank(m);
        let mut t_sub = vec![vec![0; n]; n];
        let mut t_super = vec![vec![0; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                t_sub[i][j] = kernel_dim(&sub_maps[i][j - i]);
                t_super[j][i] = kernel_dim(&super_maps[j][j - i]);
            }
        }
        Self {
            sub,
            sup,
            sub_images,
            super_images,
            f_table,
            sub_maps,
            super_maps,
            t_sub,
            t_super,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::int;
    use GridPos::{At, Mid, NegInf, PosInf};

    fn complex(n: usize, simplices: &[&[usize]], values: &[i64]) -> Invariants {
        let k = SimplicialComplex::new(n, simplices.iter().map(|s| s.to_vec())).unwrap();
        let f = VertexFunction::new(values.iter().map(|&v| int(v)).collect());
        Invariants::new(&k, &f).unwrap()
    }

    fn cycle4() -> Invariants {
        complex(
            4,
            &[&[0], &[1], &[2], &[3], &[0, 1], &[1, 2], &[2, 3], &[0, 3]],
            &[0, 1, 2, 1],
        )
    }

    /// u–w–v with f = (0, 2, 1).
    fn vpath() -> Invariants {
        complex(3, &[&[0], &[1], &[2], &[0, 1], &[1, 2]], &[0, 2, 1])
    }

    fn edge() -> Invariants {
        complex(2, &[&[0], &[1], &[0, 1]], &[0, 1])
    }

    #[test]
    fn persistent_image_examples() {
        let c = cycle4();
        for r in 0..2 {
            assert_eq!(c.persistent_image(Side::Sub, NegInf, r).dim(), 0);
        }
        assert_eq!(c.persistent_image(Side::Sub, At(2), 1).dim(), 1);
        assert_eq!(c.persistent_image(Side::Sub, At(1), 1).dim(), 0);
        assert_eq!(c.persistent_image(Side::Sub, PosInf, 1).dim(), 1);
    }

    #[test]
    fn f_dim_examples() {
        let c = cycle4();
        assert_eq!(c.f_dim(At(2), At(0), 1), 1);
        assert_eq!(c.f_dim(At(1), At(0), 1), 0);
        assert_eq!(c.f_dim(At(0), At(2), 0), 1);
    }

    #[test]
    fn t_dim_examples() {
        let v = vpath();
        assert_eq!(v.t_dim(At(1), At(2), 0).unwrap(), 1);
        assert_eq!(v.t_dim(At(0), At(1), 0).unwrap(), 0);
        assert_eq!(v.t_dim(At(2), At(1), 0).unwrap(), 0);
        assert!(matches!(v.t_dim(At(1), At(1), 0), Err(Error::Usage(_))));
    }

    #[test]
    fn box_measure_examples() {
        let c = cycle4();
        let b = MeasureBox::new(BoxFlavor::F, NegInf, At(0), At(2), PosInf).unwrap();
        assert_eq!(c.box_measure(&b, 0).unwrap(), 1);

        let v = vpath();
        let b = MeasureBox::new(BoxFlavor::TAbove, At(0), At(1), At(1), At(2)).unwrap();
        assert_eq!(v.box_measure(&b, 0).unwrap(), 1);

        let e = edge();
        let positions = e.grid().positions();
        for (i, &a) in positions.iter().enumerate() {
            for (j, &b) in positions.iter().enumerate().skip(i + 1) {
                for &c in &positions[j..] {
                    for &d in positions.iter().filter(|&&d| d > c) {
                        let bx = MeasureBox::new(BoxFlavor::TAbove, a, b, c, d).unwrap();
                        assert_eq!(e.box_measure(&bx, 0).unwrap(), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn malformed_boxes_are_rejected() {
        assert!(MeasureBox::new(BoxFlavor::F, At(1), At(1), At(0), At(2)).is_err());
        assert!(MeasureBox::new(BoxFlavor::TAbove, At(0), At(2), At(1), At(3)).is_err());
        assert!(MeasureBox::new(BoxFlavor::TBelow, At(1), At(2), At(0), At(2)).is_err());
        assert!(MeasureBox::new(BoxFlavor::TBelow, At(2), At(3), At(0), At(2)).is_ok());
    }

    #[test]
    fn point_mass_examples() {
        let c = cycle4();
        assert_eq!(
            c.point_mass(MassKind::Delta, &int(0), &int(2), 0).unwrap(),
            1
        );
        assert_eq!(
            c.point_mass(MassKind::Delta, &int(2), &int(0), 1).unwrap(),
            1
        );
        let v = vpath();
        assert_eq!(
            v.point_mass(MassKind::Gamma, &int(1), &int(2), 0).unwrap(),
            1
        );

        assert!(c.point_mass(MassKind::Delta, &int(7), &int(0), 0).is_err());
        assert!(c.point_mass(MassKind::Gamma, &int(1), &int(1), 0).is_err());
    }

    #[test]
    fn support_examples() {
        let p = complex(1, &[&[0]], &[5]);
        let d = p.support(MassKind::Delta, 0);
        assert_eq!(d.masses.len(), 1);
        assert_eq!(d.multiplicity(&int(5), &int(5)), 1);

        let c = cycle4();
        let d0 = c.support(MassKind::Delta, 0);
        assert_eq!((d0.total(), d0.multiplicity(&int(0), &int(2))), (1, 1));
        let d1 = c.support(MassKind::Delta, 1);
        assert_eq!((d1.total(), d1.multiplicity(&int(2), &int(0))), (1, 1));
        for r in 0..2 {
            assert!(c.support(MassKind::Gamma, r).masses.is_empty());
        }
    }

    #[test]
    fn constant_function_concentrates_on_the_diagonal() {
        let tri = complex(
            4,
            &[&[0], &[1], &[2], &[3], &[0, 1], &[1, 2], &[0, 2], &[2, 3]],
            &[3, 3, 3, 3],
        );
        for r in 0..2 {
            let d = tri.support(MassKind::Delta, r);
            assert_eq!(d.multiplicity(&int(3), &int(3)), tri.betti(r));
            assert_eq!(d.total(), tri.betti(r));
            assert!(tri.support(MassKind::Gamma, r).masses.is_empty());
        }
    }

    #[test]
    fn quotient_matches_inclusion_exclusion_on_small_examples() {
        for inv in [cycle4(), vpath(), edge()] {
            let ps = inv.grid().positions();
            for r in 0..2 {
                for &a in &ps {
                    for &b in ps.iter().filter(|&&b| b > a) {
                        for &c in &ps {
                            for &d in ps.iter().filter(|&&d| d > c) {
                                let mut flavors = vec![BoxFlavor::F];
                                if b <= c {
                                    flavors.push(BoxFlavor::TAbove);
                                }
                                if d <= a {
                                    flavors.push(BoxFlavor::TBelow);
                                }
                                for fl in flavors {
                                    let bx = MeasureBox::new(fl, a, b, c, d).unwrap();
                                    assert_eq!(
                                        inv.box_measure(&bx, r).unwrap(),
                                        inv.box_quotient_dim(&bx, r).unwrap(),
                                        "{bx:?} r={r}"
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn mid_positions_agree_with_grid_neighbours() {
        let c = cycle4();
        for r in 0..2 {
            assert_eq!(c.f_dim(Mid(1), At(0), r), c.f_dim(At(1), At(0), r));
            assert_eq!(c.f_dim(At(2), Mid(0), r), c.f_dim(At(2), At(1), r));
        }
    }
}
