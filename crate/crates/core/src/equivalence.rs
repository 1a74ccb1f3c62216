//! Cross-checks between the barcode side and the image/kernel side.
//!
//! Every comparison becomes a [`CheckRecord`] with the barcode-side count as
//! `lhs` and the image/kernel-side count as `rhs`. Alternative readings of a
//! formula that are evaluated but not required to hold are tallied as
//! [`Finding`]s; they never affect [`VerificationReport::passed`].

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Signed;
use serde::Serialize;

use crate::barcodes::{barcodes_from_bh, pyramid_barcodes, BarKind, BarcodeSet};
use crate::complex::{GridPos, LevelGrid, Side, SimplicialComplex, VertexFunction};
use crate::error::{usage, Error, Result};
use crate::invariants::{BoxFlavor, Invariants, MassKind, MeasureBox, PointMassMap};
use crate::measures::{counted, dgm, diagonal_closed, Diagram, OpenRow};
use crate::value::{format_value, int, Value};
use crate::zigzag::zigzag_barcodes;

/// The reflection `(x, y) ↦ (y, x)`.
pub trait Reflect {
    fn reflect(&self) -> Self;
}

impl Reflect for Diagram {
    fn reflect(&self) -> Self {
        Diagram::from_points(
            self.kind,
            self.r,
            self.iter().map(|(x, y, n)| ((y.clone(), x.clone()), n)),
        )
    }
}

impl Reflect for PointMassMap {
    fn reflect(&self) -> Self {
        let mut masses: Vec<_> = self
            .masses
            .iter()
            .map(|m| {
                let mut m = m.clone();
                std::mem::swap(&mut m.x, &mut m.y);
                m
            })
            .collect();
        masses.sort();
        PointMassMap {
            kind: self.kind,
            r: self.r,
            masses,
        }
    }
}

/// Masses strictly above (`x < y`) or strictly below the diagonal.
fn restrict(map: &PointMassMap, above: bool) -> Diagram {
    Diagram::from_points(
        None,
        map.r,
        map.masses
            .iter()
            .filter(|m| if above { m.x < m.y } else { m.x > m.y })
            .map(|m| ((m.x.clone(), m.y.clone()), m.multiplicity)),
    )
}

fn same_points(a: &Diagram, b: &Diagram) -> bool {
    a.iter().eq(b.iter())
}

/// Where in the plane or on the line a check was evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "at", rename_all = "snake_case")]
pub enum Location {
    Whole,
    Position {
        a: GridPos,
    },
    Pair {
        a: GridPos,
        b: GridPos,
    },
    Rectangle {
        a: GridPos,
        b: GridPos,
        c: GridPos,
        d: GridPos,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub check: &'static str,
    pub degree: usize,
    pub location: Location,
    pub lhs: usize,
    pub rhs: usize,
    pub pass: bool,
}

/// Agreement tally for a reading that is evaluated but does not gate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub id: &'static str,
    pub statement: &'static str,
    pub evaluated: usize,
    pub agreed: usize,
}

impl Finding {
    pub fn holds(&self) -> bool {
        self.agreed == self.evaluated
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    /// Grid values; `c{i}` in locations refers to entry `i`.
    pub grid: Vec<String>,
    pub records: Vec<CheckRecord>,
    pub findings: Vec<Finding>,
}

impl VerificationReport {
    fn for_grid(grid: &LevelGrid) -> Self {
        Self {
            grid: grid.values().iter().map(format_value).collect(),
            ..Self::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.pass)
    }

    /// Appends another report over the same grid, merging findings by id.
    pub fn merge(&mut self, other: VerificationReport) {
        self.records.extend(other.records);
        for f in other.findings {
            self.tally(f.id, f.statement, f.evaluated, f.agreed);
        }
        self.records.sort_by_key(|r| r.check);
    }

    fn record(
        &mut self,
        check: &'static str,
        degree: usize,
        location: Location,
        lhs: usize,
        rhs: usize,
    ) {
        self.records.push(CheckRecord {
            check,
            degree,
            location,
            lhs,
            rhs,
            pass: lhs == rhs,
        });
    }

    fn tally(
        &mut self,
        id: &'static str,
        statement: &'static str,
        evaluated: usize,
        agreed: usize,
    ) {
        match self.findings.iter_mut().find(|f| f.id == id) {
            Some(f) => {
                f.evaluated += evaluated;
                f.agreed += agreed;
            }
            None => self.findings.push(Finding {
                id,
                statement,
                evaluated,
                agreed,
            }),
        }
    }

    fn observe(&mut self, id: &'static str, statement: &'static str, agrees: bool) {
        self.tally(id, statement, 1, usize::from(agrees));
    }

    fn finish(mut self) -> Self {
        self.records.sort_by_key(|r| r.check);
        self
    }

    pub fn summary(&self) -> ReportSummary<'_> {
        let mut per_check: BTreeMap<&'static str, (usize, usize)> = BTreeMap::new();
        for r in &self.records {
            let e = per_check.entry(r.check).or_default();
            e.0 += 1;
            e.1 += usize::from(!r.pass);
        }
        ReportSummary {
            pass: self.passed(),
            records: self.records.len(),
            failed: self.failures().count(),
            checks: per_check
                .into_iter()
                .map(|(check, (evaluated, failed))| CheckTally {
                    check,
                    evaluated,
                    failed,
                })
                .collect(),
            failures: self.failures().take(20).collect(),
            findings: &self.findings,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CheckTally {
    pub check: &'static str,
    pub evaluated: usize,
    pub failed: usize,
}

/// Compact view of a report: per-check tallies and the first failures.
#[derive(Debug, Serialize)]
pub struct ReportSummary<'a> {
    pub pass: bool,
    pub records: usize,
    pub failed: usize,
    pub checks: Vec<CheckTally>,
    pub failures: Vec<&'a CheckRecord>,
    pub findings: &'a [Finding],
}

/// A bar with endpoints located on the grid.
#[derive(Clone, Copy, Debug)]
struct PlacedBar {
    r: usize,
    kind: BarKind,
    l: GridPos,
    rt: GridPos,
    n: usize,
}

struct Placed(Vec<PlacedBar>);

impl Placed {
    fn new(bars: &BarcodeSet, grid: &LevelGrid) -> Self {
        Placed(
            bars.iter()
                .map(|(b, n)| PlacedBar {
                    r: b.r,
                    kind: b.kind,
                    l: grid.locate(&b.left),
                    rt: grid.locate(&b.right),
                    n,
                })
                .collect(),
        )
    }

    /// Bars of `kind` in degree `r` (none when `r` is `None`) satisfying `pred`.
    fn count<P: Fn(GridPos, GridPos) -> bool>(
        &self,
        kind: BarKind,
        r: Option<usize>,
        pred: P,
    ) -> usize {
        let Some(r) = r else { return 0 };
        self.0
            .iter()
            .filter(|b| b.kind == kind && b.r == r && pred(b.l, b.rt))
            .map(|b| b.n)
            .sum()
    }

    fn mu(
        &self,
        kind: BarKind,
        r: Option<usize>,
        corners: [&GridPos; 4],
        open_row: OpenRow,
    ) -> usize {
        self.count(kind, r, |l, rt| counted(kind, open_row, corners, &l, &rt))
    }
}

fn lower(r: usize) -> Option<usize> {
    r.checked_sub(1)
}

/// Degrees covering both the complex and any bars handed in.
fn degree_span(inv: &Invariants, bars: &BarcodeSet) -> std::ops::Range<usize> {
    let top = inv
        .degrees()
        .end
        .max(bars.max_degree().map_or(0, |d| d + 1));
    0..top
}

/// Diagrams of each bar kind against restrictions of the point masses,
/// pointwise over the union of supports, plus the diagonal closed bars.
pub fn check_diagrams_against(inv: &Invariants, bars: &BarcodeSet) -> VerificationReport {
    let grid = inv.grid();
    let mut rep = VerificationReport::for_grid(grid);
    let span = degree_span(inv, bars);
    let delta: Vec<PointMassMap> = (0..=span.end)
        .map(|r| inv.support(MassKind::Delta, r))
        .collect();
    let gamma: Vec<PointMassMap> = (0..=span.end)
        .map(|r| inv.support(MassKind::Gamma, r))
        .collect();

    for r in span {
        let pairs: [(&'static str, BarKind, Diagram); 4] = [
            ("diagram.closed", BarKind::Closed, restrict(&delta[r], true)),
            (
                "diagram.open",
                BarKind::Open,
                restrict(&delta[r + 1], false).reflect(),
            ),
            (
                "diagram.closed_open",
                BarKind::ClosedOpen,
                restrict(&gamma[r], true),
            ),
            (
                "diagram.open_closed",
                BarKind::OpenClosed,
                restrict(&gamma[r], false).reflect(),
            ),
        ];
        for (check, kind, bh) in &pairs {
            let from_bars = dgm(*kind, r, bars);
            let support: BTreeSet<(&Value, &Value)> = from_bars
                .iter()
                .chain(bh.iter())
                .map(|(x, y, _)| (x, y))
                .collect();
            for (x, y) in support {
                let at = Location::Pair {
                    a: grid.locate(x),
                    b: grid.locate(y),
                };
                rep.record(
                    check,
                    r,
                    at,
                    from_bars.multiplicity(x, y),
                    bh.multiplicity(x, y),
                );
            }
        }

        let diag = diagonal_closed(r, bars);
        let masses: BTreeSet<&Value> = delta[r]
            .masses
            .iter()
            .filter(|m| m.x == m.y)
            .map(|m| &m.x)
            .chain(diag.keys())
            .collect();
        for x in masses {
            let at = Location::Pair {
                a: grid.locate(x),
                b: grid.locate(x),
            };
            rep.record(
                "diagram.closed_diagonal",
                r,
                at,
                diag.get(x).copied().unwrap_or(0),
                delta[r].multiplicity(x, x),
            );
        }

        let below_prev = match lower(r) {
            Some(q) => restrict(&delta[q], false).reflect(),
            None => Diagram::new(None, 0),
        };
        rep.observe(
            "diagram.open.as_stated",
            "open r-bars match the reflected lower part of delta in degree r-1",
            same_points(&dgm(BarKind::Open, r, bars), &below_prev),
        );
        rep.observe(
            "diagram.closed_open.as_stated",
            "closed-open r-bars match the upper part of delta in degree r",
            same_points(
                &dgm(BarKind::ClosedOpen, r, bars),
                &restrict(&delta[r], true),
            ),
        );
        rep.observe(
            "diagram.open_closed.as_stated",
            "open-closed r-bars match the reflected lower part of delta in degree r-1",
            same_points(&dgm(BarKind::OpenClosed, r, bars), &below_prev),
        );
    }
    rep.finish()
}

/// Shifts an inclusive grid endpoint to the neighbouring position so that a
/// half-open box side realizes the opposite inequality.
fn at_only(p: GridPos, shift: impl Fn(GridPos) -> GridPos) -> GridPos {
    if p.is_grid_value() {
        shift(p)
    } else {
        p
    }
}

fn measure_or_zero(inv: &Invariants, flavor: BoxFlavor, corners: [GridPos; 4], r: usize) -> usize {
    let [x0, x1, y0, y1] = corners;
    match MeasureBox::new(flavor, x0, x1, y0, y1) {
        Ok(b) => inv
            .box_measure(&b, r)
            .expect("box measures are nonnegative"),
        Err(_) => 0,
    }
}

/// Rectangle counts against box measures for every rectangle with corners
/// among the grid positions.
pub fn check_rectangles_against(inv: &Invariants, bars: &BarcodeSet) -> VerificationReport {
    let grid = inv.grid();
    let mut rep = VerificationReport::for_grid(grid);
    let placed = Placed::new(bars, grid);
    let pos = grid.positions();
    let pred = |p| grid.pred(p);
    let succ = |p| grid.succ(p);
    let n = pos.len();
    let span = degree_span(inv, bars);

    for ia in 0..n {
        for ib in ia + 1..n {
            for ic in ib + 1..n {
                for id in ic + 1..n {
                    let (a, b, c, d) = (pos[ia], pos[ib], pos[ic], pos[id]);
                    let corners = [&a, &b, &c, &d];
                    let at = Location::Rectangle { a, b, c, d };
                    for r in span.clone() {
                        let deg = Some(r);

                        let mu_c = placed.mu(BarKind::Closed, deg, corners, OpenRow::Strict);
                        let f = measure_or_zero(inv, BoxFlavor::F, [a, b, c, d], r);
                        rep.record("rect.closed_vs_f", r, at, mu_c, f);

                        let mu_co = placed.mu(BarKind::ClosedOpen, deg, corners, OpenRow::Strict);
                        let (c_le, d_lt) = (at_only(c, pred), at_only(d, pred));
                        let t_above =
                            measure_or_zero(inv, BoxFlavor::TAbove, [a, b, c_le, d_lt], r);
                        rep.record("rect.closed_open_vs_t_above", r, at, mu_co, t_above);
                        let literal = measure_or_zero(inv, BoxFlavor::TAbove, [a, b, c, d], r);
                        rep.observe(
                            "rect.closed_open.unshifted",
                            "closed-open count equals the sublevel kernel box (a,b] x (c,d]",
                            mu_co == literal,
                        );

                        let mu_oc = placed.mu(BarKind::OpenClosed, deg, corners, OpenRow::Strict);
                        let (a_lt, b_le) = (at_only(a, succ), at_only(b, succ));
                        let t_below =
                            measure_or_zero(inv, BoxFlavor::TBelow, [c, d, a_lt, b_le], r);
                        rep.record("rect.open_closed_vs_t_below", r, at, mu_oc, t_below);
                        if let Some(q) = lower(r) {
                            let mu_oc_lower =
                                placed.mu(BarKind::OpenClosed, Some(q), corners, OpenRow::Strict);
                            let f_lit = measure_or_zero(inv, BoxFlavor::F, [c, d, a, b], r);
                            rep.observe(
                                "rect.open_closed.as_stated",
                                "open-closed (r-1)-count equals the degree-r intersection box (c,d] x [a,b)",
                                mu_oc_lower == f_lit,
                            );
                        }

                        let mu_o = placed.mu(BarKind::Open, deg, corners, OpenRow::Strict);
                        let mu_o_half = placed.mu(BarKind::Open, deg, corners, OpenRow::HalfOpen);
                        let f_up = measure_or_zero(
                            inv,
                            BoxFlavor::F,
                            [c, at_only(d, pred), a_lt, b],
                            r + 1,
                        );
                        rep.record("rect.open_vs_f_above", r, at, mu_o, f_up);
                        let f_same = measure_or_zero(inv, BoxFlavor::F, [c, d, a, b], r);
                        let f_up_lit = measure_or_zero(inv, BoxFlavor::F, [c, d, a, b], r + 1);
                        rep.observe(
                            "rect.open.as_stated",
                            "open r-count equals the degree-r intersection box (c,d] x [a,b)",
                            mu_o == f_same,
                        );
                        rep.observe(
                            "rect.open.unshifted_strict",
                            "open r-count equals the degree-(r+1) intersection box (c,d] x [a,b)",
                            mu_o == f_up_lit,
                        );
                        rep.observe(
                            "rect.open.unshifted_halfopen",
                            "half-open open r-count equals the degree-(r+1) intersection box (c,d] x [a,b)",
                            mu_o_half == f_up_lit,
                        );
                    }
                }
            }
        }
    }
    rep.finish()
}

/// Level-set dimensions, image dimensions, intersection and kernel
/// dimensions and point masses expressed as bar counts.
pub fn check_dimension_formulas_against(inv: &Invariants, bars: &BarcodeSet) -> VerificationReport {
    use BarKind::{Closed as C, ClosedOpen as CO, Open as O, OpenClosed as OC};
    let grid = inv.grid();
    let mut rep = VerificationReport::for_grid(grid);
    let span = degree_span(inv, bars);
    let bars = Placed::new(bars, grid);
    let pos = grid.positions();
    let grid_pos: Vec<GridPos> = grid.grid_positions().collect();

    for r in span {
        let (deg, down) = (Some(r), lower(r));
        rep.record(
            "betti",
            r,
            Location::Whole,
            bars.count(C, deg, |_, _| true) + bars.count(O, down, |_, _| true),
            inv.betti(r),
        );
        for &a in &pos {
            let at = Location::Position { a };
            let closed_left = bars.count(C, deg, |l, _| l <= a);
            let open_below = bars.count(O, down, |_, rt| rt <= a);
            rep.record(
                "sublevel_dim",
                r,
                at,
                closed_left + open_below + bars.count(CO, deg, |l, rt| l <= a && a < rt),
                inv.level_homology_dim(Side::Sub, a, r),
            );
            rep.record(
                "image_sub_dim",
                r,
                at,
                closed_left + open_below,
                inv.persistent_image(Side::Sub, a, r).dim(),
            );
            let closed_right = bars.count(C, deg, |_, rt| rt >= a);
            let open_above = bars.count(O, down, |l, _| l >= a);
            rep.record(
                "superlevel_dim",
                r,
                at,
                closed_right + open_above + bars.count(OC, deg, |l, rt| l < a && a <= rt),
                inv.level_homology_dim(Side::Super, a, r),
            );
            rep.record(
                "image_super_dim",
                r,
                at,
                closed_right + open_above,
                inv.persistent_image(Side::Super, a, r).dim(),
            );
        }

        for &a in &pos {
            for &b in &pos {
                let at = Location::Pair { a, b };
                if a > b {
                    let closed = bars.count(C, deg, |l, rt| l <= a && rt >= b);
                    let inside = bars.count(O, down, |l, rt| b <= l && rt <= a);
                    rep.record(
                        "intersection_below",
                        r,
                        at,
                        closed + inside,
                        inv.f_dim(a, b, r),
                    );
                    let strict = bars.count(O, down, |l, rt| b < l && rt < a);
                    rep.observe(
                        "intersection_below.strict",
                        "intersection dimension below the diagonal counts open (r-1)-bars strictly inside (b,a)",
                        closed + strict == inv.f_dim(a, b, r),
                    );
                    rep.record(
                        "kernel_super",
                        r,
                        at,
                        bars.count(OC, deg, |l, rt| b <= l && l < a && a <= rt),
                        inv.t_dim(a, b, r).expect("distinct positions"),
                    );
                } else {
                    rep.record(
                        "intersection_above",
                        r,
                        at,
                        bars.count(C, deg, |l, rt| l <= a && b <= rt),
                        inv.f_dim(a, b, r),
                    );
                    if a < b {
                        rep.record(
                            "kernel_sub",
                            r,
                            at,
                            bars.count(CO, deg, |l, rt| l <= a && a < rt && rt <= b),
                            inv.t_dim(a, b, r).expect("distinct positions"),
                        );
                    }
                }
            }
        }

        let mass = |kind, x: GridPos, y: GridPos| -> usize {
            inv.box_measure(&inv.point_box(kind, x, y).expect("grid point"), r)
                .expect("box measures are nonnegative")
        };
        for &a in &grid_pos {
            for &b in &grid_pos {
                let at = Location::Pair { a, b };
                let exact = |kind, deg| bars.count(kind, deg, |l, rt| (l, rt) == (a, b));
                let flipped = |kind, deg| bars.count(kind, deg, |l, rt| (l, rt) == (b, a));
                if a > b {
                    rep.record(
                        "delta_below",
                        r,
                        at,
                        flipped(O, down),
                        mass(MassKind::Delta, a, b),
                    );
                    let g = mass(MassKind::Gamma, a, b);
                    rep.record("gamma_below", r, at, flipped(OC, deg), g);
                    rep.observe(
                        "gamma_below.as_stated",
                        "gamma below the diagonal counts open (r-1)-bars (b,a)",
                        flipped(O, down) == g,
                    );
                } else {
                    rep.record(
                        "delta_above",
                        r,
                        at,
                        exact(C, deg),
                        mass(MassKind::Delta, a, b),
                    );
                    if a < b {
                        let g = mass(MassKind::Gamma, a, b);
                        rep.record("gamma_above", r, at, exact(CO, deg), g);
                        rep.observe(
                            "gamma_above.as_stated",
                            "gamma above the diagonal counts open (r-1)-bars (a,b)",
                            exact(O, down) == g,
                        );
                    }
                }
            }
        }
    }
    rep.finish()
}

/// Bars from the reduction route, checked against the point masses and,
/// for graphs, against the zigzag route.
fn route_records(inv: &Invariants, bars: &BarcodeSet) -> Result<VerificationReport> {
    let mut rep = VerificationReport::for_grid(inv.grid());
    let span = degree_span(inv, bars).end + 1;
    let deltas: Vec<_> = (0..span).map(|r| inv.support(MassKind::Delta, r)).collect();
    let gammas: Vec<_> = (0..span).map(|r| inv.support(MassKind::Gamma, r)).collect();
    let bh = barcodes_from_bh(&deltas, &gammas);
    rep.record(
        "routes.pyramid_vs_masses",
        0,
        Location::Whole,
        bars.len(),
        bh.len(),
    );
    if bars != &bh {
        rep.records.last_mut().expect("just pushed").pass = false;
    }
    if inv.complex().dim().is_none_or(|d| d <= 1) {
        let zz = zigzag_barcodes(inv.complex(), inv.function())?;
        rep.record(
            "routes.pyramid_vs_zigzag",
            0,
            Location::Whole,
            bars.len(),
            zz.len(),
        );
        if bars != &zz {
            rep.records.last_mut().expect("just pushed").pass = false;
        }
    }
    Ok(rep.finish())
}

pub fn check_diagrams(k: &SimplicialComplex, f: &VertexFunction) -> Result<VerificationReport> {
    let inv = Invariants::new(k, f)?;
    let bars = pyramid_barcodes(k, f)?;
    let mut rep = check_diagrams_against(&inv, &bars);
    rep.merge(route_records(&inv, &bars)?);
    Ok(rep)
}

pub fn check_rectangles(k: &SimplicialComplex, f: &VertexFunction) -> Result<VerificationReport> {
    let inv = Invariants::new(k, f)?;
    Ok(check_rectangles_against(&inv, &pyramid_barcodes(k, f)?))
}

pub fn check_dimension_formulas(
    k: &SimplicialComplex,
    f: &VertexFunction,
) -> Result<VerificationReport> {
    let inv = Invariants::new(k, f)?;
    Ok(check_dimension_formulas_against(
        &inv,
        &pyramid_barcodes(k, f)?,
    ))
}

/// All checks against a supplied barcode; the route agreement compares it with
/// the point masses and, for graphs, the zigzag route.
pub fn verify_against(inv: &Invariants, bars: &BarcodeSet) -> Result<VerificationReport> {
    let mut rep = check_diagrams_against(inv, bars);
    rep.merge(check_rectangles_against(inv, bars));
    rep.merge(check_dimension_formulas_against(inv, bars));
    rep.merge(route_records(inv, bars)?);
    Ok(rep)
}

/// All checks with the barcode computed by reduction.
pub fn verify(k: &SimplicialComplex, f: &VertexFunction) -> Result<VerificationReport> {
    let inv = Invariants::new(k, f)?;
    verify_against(&inv, &pyramid_barcodes(k, f)?)
}

/// Largest number of points, with multiplicity, accepted per diagram.
pub const BOTTLENECK_LIMIT: usize = 24;

fn linf(p: &(Value, Value), q: &(Value, Value)) -> Value {
    let dx = (&p.0 - &q.0).abs();
    let dy = (&p.1 - &q.1).abs();
    dx.max(dy)
}

fn to_diagonal(p: &(Value, Value)) -> Value {
    (&p.1 - &p.0).abs() / int(2)
}

fn expand(d: &Diagram) -> Vec<(Value, Value)> {
    d.iter()
        .flat_map(|(x, y, n)| std::iter::repeat_n((x.clone(), y.clone()), n))
        .collect()
}

/// Exact bottleneck distance under the sup norm, with matching to the diagonal.
pub fn bottleneck(d1: &Diagram, d2: &Diagram) -> Result<Value> {
    if d1.kind != d2.kind || d1.r != d2.r {
        return Err(usage!(
            "bottleneck distance compares diagrams of the same kind and degree"
        ));
    }
    let (p, q) = (expand(d1), expand(d2));
    if p.len() > BOTTLENECK_LIMIT || q.len() > BOTTLENECK_LIMIT {
        return Err(Error::Unsupported(format!(
            "bottleneck distance handles at most {BOTTLENECK_LIMIT} points per diagram, got {} and {}",
            p.len(),
            q.len()
        )));
    }
    let (n, m) = (p.len(), q.len());
    let size = n + m;
    if size == 0 {
        return Ok(int(0));
    }
    // left: p then one diagonal slot per q; right: q then one diagonal slot per p
    let cost = |i: usize, j: usize| -> Option<Value> {
        match (i < n, j < m) {
            (true, true) => Some(linf(&p[i], &q[j])),
            (true, false) => Some(to_diagonal(&p[i])),
            (false, true) => Some(to_diagonal(&q[j])),
            (false, false) => Some(int(0)),
        }
    };
    let costs: Vec<Vec<Value>> = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| cost(i, j).expect("every pair has a cost"))
                .collect()
        })
        .collect();
    let mut candidates: Vec<Value> = costs.iter().flatten().cloned().collect();
    candidates.sort();
    candidates.dedup();

    let feasible = |t: &Value| perfect_matching(size, |i, j| &costs[i][j] <= t);
    let (mut lo, mut hi) = (0, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(&candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(candidates[lo].clone())
}

/// Kuhn's augmenting-path test for a perfect matching in a square bipartite graph.
fn perfect_matching(size: usize, edge: impl Fn(usize, usize) -> bool) -> bool {
    fn augment(
        i: usize,
        size: usize,
        edge: &dyn Fn(usize, usize) -> bool,
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for j in 0..size {
            if edge(i, j) && !seen[j] {
                seen[j] = true;
                if owner[j].is_none_or(|k| augment(k, size, edge, seen, owner)) {
                    owner[j] = Some(i);
                    return true;
                }
            }
        }
        false
    }
    let mut owner = vec![None; size];
    (0..size).all(|i| augment(i, size, &edge, &mut vec![false; size], &mut owner))
}
