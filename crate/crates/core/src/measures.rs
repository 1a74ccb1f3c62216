//! Rectangle measures and diagrams read directly off a barcode.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::barcodes::{BarKind, BarcodeSet};
use crate::error::{usage, Result};
use crate::value::{format_value, Extended, Value};

/// `[a, b] × [c, d]` with `a < b < c < d` on the extended line.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rectangle {
    a: Extended,
    b: Extended,
    c: Extended,
    d: Extended,
}

impl Rectangle {
    pub fn new(a: Extended, b: Extended, c: Extended, d: Extended) -> Result<Self> {
        if !(a < b && b < c && c < d) {
            return Err(usage!(
                "rectangle corners must satisfy a < b < c < d, got {a}, {b}, {c}, {d}"
            ));
        }
        if b == Extended::PosInf || c == Extended::NegInf {
            return Err(usage!("only the outer corners a and d may be infinite"));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn corners(&self) -> [&Extended; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }
}

impl fmt::Display for Rectangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}] x [{}, {}]", self.a, self.b, self.c, self.d)
    }
}

/// Endpoint conditions for the open row.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OpenRow {
    /// `a < l < b` and `c < r < d`.
    #[default]
    Strict,
    /// `a < l ≤ b` and `c ≤ r < d`, as for the other kinds.
    HalfOpen,
}

/// Whether a bar with endpoints `(l, r)` is counted by the rectangle with
/// corners `a < b < c < d`. Generic so that grid positions can stand in for values.
pub fn counted<T: Ord>(
    kind: BarKind,
    open_row: OpenRow,
    [a, b, c, d]: [&T; 4],
    l: &T,
    r: &T,
) -> bool {
    match (kind, open_row) {
        (BarKind::Open, OpenRow::Strict) => a < l && l < b && c < r && r < d,
        _ => a < l && l <= b && c <= r && r < d,
    }
}

/// Number of bars of `kind` in degree `r` inside the rectangle, with the
/// strict open row.
pub fn mu(kind: BarKind, r: usize, rect: &Rectangle, bars: &BarcodeSet) -> usize {
    mu_with(kind, r, rect, bars, OpenRow::Strict)
}

pub fn mu_with(
    kind: BarKind,
    r: usize,
    rect: &Rectangle,
    bars: &BarcodeSet,
    open_row: OpenRow,
) -> usize {
    bars.of(kind, r)
        .filter(|(bar, _)| {
            let l = Extended::Finite(bar.left.clone());
            let rt = Extended::Finite(bar.right.clone());
            counted(kind, open_row, rect.corners(), &l, &rt)
        })
        .map(|(_, n)| n)
        .sum()
}

/// Endpoint pairs `x < y` of one bar kind and degree, with multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Diagram {
    pub kind: Option<BarKind>,
    pub r: usize,
    points: BTreeMap<(Value, Value), usize>,
}

impl Diagram {
    pub fn new(kind: Option<BarKind>, r: usize) -> Self {
        Self {
            kind,
            r,
            points: BTreeMap::new(),
        }
    }

    pub fn from_points<I>(kind: Option<BarKind>, r: usize, points: I) -> Self
    where
        I: IntoIterator<Item = ((Value, Value), usize)>,
    {
        let mut d = Self::new(kind, r);
        for ((x, y), n) in points {
            d.add(x, y, n);
        }
        d
    }

    pub fn add(&mut self, x: Value, y: Value, multiplicity: usize) {
        if multiplicity > 0 {
            *self.points.entry((x, y)).or_insert(0) += multiplicity;
        }
    }

    pub fn multiplicity(&self, x: &Value, y: &Value) -> usize {
        // BTreeMap lookup needs an owned key
        self.points
            .get(&(x.clone(), y.clone()))
            .copied()
            .unwrap_or(0)
    }

    /// Points sorted by `(x, y)`.
    pub fn iter(&self) -> impl Iterator<Item = (&Value, &Value, usize)> {
        self.points.iter().map(|((x, y), &n)| (x, y, n))
    }

    /// Number of points counted with multiplicity.
    pub fn len(&self) -> usize {
        self.points.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// CSV with header `x,y,mult` and LF line endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,y,mult\n");
        for (x, y, n) in self.iter() {
            out.push_str(&format!("{},{},{n}\n", format_value(x), format_value(y)));
        }
        out
    }
}

/// A JSON number when the value is exactly representable as one (an `i64`,
/// or a decimal whose shortest `f64` form is the same decimal), otherwise the
/// exact text.
fn serialize_number<S: Serializer>(
    v: &Value,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    let text = format_value(v);
    if let Ok(n) = text.parse::<i64>() {
        return serializer.serialize_i64(n);
    }
    if !text.contains('/') {
        if let Ok(x) = text.parse::<f64>() {
            if x.is_finite() && x.to_string() == text {
                return serializer.serialize_f64(x);
            }
        }
    }
    serializer.serialize_str(&text)
}

struct PointRef<'a>(&'a Value, &'a Value, usize);

impl Serialize for PointRef<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        struct Num<'a>(&'a Value);
        impl Serialize for Num<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                serialize_number(self.0, s)
            }
        }
        let mut m = serializer.serialize_map(Some(3))?;
        m.serialize_entry("x", &Num(self.0))?;
        m.serialize_entry("y", &Num(self.1))?;
        m.serialize_entry("mult", &self.2)?;
        m.end()
    }
}

/// Serialized as `[{"x": .., "y": .., "mult": ..}]`; coordinates without an
/// exact JSON number form are written as `"p/q"` strings.
impl Serialize for Diagram {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.points.len()))?;
        for (x, y, n) in self.iter() {
            seq.serialize_element(&PointRef(x, y, n))?;
        }
        seq.end()
    }
}

/// Off-diagonal endpoint pairs of the bars of one kind and degree.
pub fn dgm(kind: BarKind, r: usize, bars: &BarcodeSet) -> Diagram {
    Diagram::from_points(
        Some(kind),
        r,
        bars.of(kind, r)
            .filter(|(b, _)| b.left < b.right)
            .map(|(b, n)| ((b.left.clone(), b.right.clone()), n)),
    )
}

/// Closed bars `[a, a]` of degree `r`, keyed by `a`.
pub fn diagonal_closed(r: usize, bars: &BarcodeSet) -> BTreeMap<Value, usize> {
    let mut out = BTreeMap::new();
    for (b, n) in bars
        .of(BarKind::Closed, r)
        .filter(|(b, _)| b.left == b.right)
    {
        *out.entry(b.left.clone()).or_insert(0) += n;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barcodes::DecoratedInterval;
    use crate::value::{int, ratio};

    fn cycle4_bars() -> BarcodeSet {
        [
            DecoratedInterval::new(0, BarKind::Closed, int(0), int(2)).unwrap(),
            DecoratedInterval::new(0, BarKind::Open, int(0), int(2)).unwrap(),
        ]
        .into_iter()
        .collect()
    }

    fn vpath_bars() -> BarcodeSet {
        [
            DecoratedInterval::new(0, BarKind::Closed, int(0), int(2)).unwrap(),
            DecoratedInterval::new(0, BarKind::ClosedOpen, int(1), int(2)).unwrap(),
        ]
        .into_iter()
        .collect()
    }

    fn fin(v: Value) -> Extended {
        Extended::Finite(v)
    }

    #[test]
    fn mu_examples() {
        let bars = cycle4_bars();
        let r =
            Rectangle::new(Extended::NegInf, fin(int(0)), fin(int(2)), Extended::PosInf).unwrap();
        assert_eq!(mu(BarKind::Closed, 0, &r, &bars), 1);
        let r = Rectangle::new(
            fin(ratio(-1, 2)),
            fin(ratio(1, 2)),
            fin(ratio(3, 2)),
            fin(ratio(5, 2)),
        )
        .unwrap();
        assert_eq!(mu(BarKind::Open, 0, &r, &bars), 1);
        assert_eq!(mu(BarKind::ClosedOpen, 0, &r, &bars), 0);
        assert_eq!(mu(BarKind::Closed, 1, &r, &BarcodeSet::new()), 0);
    }

    #[test]
    fn open_row_strictness() {
        let bars = cycle4_bars();
        let r =
            Rectangle::new(Extended::NegInf, fin(int(0)), fin(int(2)), Extended::PosInf).unwrap();
        assert_eq!(mu(BarKind::Open, 0, &r, &bars), 0);
        assert_eq!(mu_with(BarKind::Open, 0, &r, &bars, OpenRow::HalfOpen), 1);
    }

    #[test]
    fn malformed_rectangles_are_rejected() {
        let z = || fin(int(0));
        assert!(Rectangle::new(z(), z(), fin(int(1)), fin(int(2))).is_err());
        assert!(Rectangle::new(fin(int(3)), fin(int(1)), fin(int(4)), fin(int(5))).is_err());
        assert!(Rectangle::new(
            Extended::NegInf,
            Extended::PosInf,
            Extended::PosInf,
            Extended::PosInf
        )
        .is_err());
    }

    #[test]
    fn dgm_examples() {
        let bars = cycle4_bars();
        let pts = |d: &Diagram| {
            d.iter()
                .map(|(x, y, n)| (x.clone(), y.clone(), n))
                .collect::<Vec<_>>()
        };
        assert_eq!(
            pts(&dgm(BarKind::Closed, 0, &bars)),
            vec![(int(0), int(2), 1)]
        );
        assert_eq!(
            pts(&dgm(BarKind::Open, 0, &bars)),
            vec![(int(0), int(2), 1)]
        );

        let bars = vpath_bars();
        assert_eq!(
            pts(&dgm(BarKind::ClosedOpen, 0, &bars)),
            vec![(int(1), int(2), 1)]
        );
        assert!(dgm(BarKind::Open, 0, &bars).is_empty());
        assert!(dgm(BarKind::OpenClosed, 0, &bars).is_empty());
    }

    #[test]
    fn diagonal_bars_are_kept_apart() {
        let bars: BarcodeSet =
            [DecoratedInterval::new(0, BarKind::Closed, int(5), int(5)).unwrap()]
                .into_iter()
                .collect();
        assert!(dgm(BarKind::Closed, 0, &bars).is_empty());
        assert_eq!(diagonal_closed(0, &bars), BTreeMap::from([(int(5), 1)]));
    }
}
