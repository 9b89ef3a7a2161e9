//! Compact sets on which sup norms are taken.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::C64;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "IntervalWire", into = "IntervalWire")]
pub struct Interval {
    a: f64,
    b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::InvalidParameter(format!("interval needs finite a < b, got [{a}, {b}]")));
        }
        Ok(Self { a, b })
    }

    /// `[-1, 1]`.
    pub fn unit() -> Self {
        Self { a: -1.0, b: 1.0 }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.a + self.b)
    }

    pub fn half_width(&self) -> f64 {
        0.5 * (self.b - self.a)
    }

    /// Affine image of `t ∈ [-1, 1]`.
    pub fn from_unit(&self, t: f64) -> f64 {
        self.mid() + self.half_width() * t
    }

    pub fn contains(&self, x: f64) -> bool {
        self.a <= x && x <= self.b
    }

    /// `n >= 2` Chebyshev–Lobatto points in increasing order, endpoints included.
    pub fn lobatto_points(&self, n: usize) -> Vec<f64> {
        let n = n.max(2);
        (0..n)
            .map(|j| {
                if j == 0 {
                    self.a
                } else if j == n - 1 {
                    self.b
                } else {
                    self.from_unit(-(std::f64::consts::PI * j as f64 / (n - 1) as f64).cos())
                }
            })
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IntervalWire {
    #[serde(default = "interval_kind")]
    kind: String,
    a: f64,
    b: f64,
}

fn interval_kind() -> String {
    "interval".into()
}

impl TryFrom<IntervalWire> for Interval {
    type Error = Error;

    fn try_from(w: IntervalWire) -> Result<Self> {
        if w.kind != "interval" {
            return Err(Error::InvalidParameter(format!("expected an interval, got kind `{}`", w.kind)));
        }
        Interval::new(w.a, w.b)
    }
}

impl From<Interval> for IntervalWire {
    fn from(i: Interval) -> Self {
        Self { kind: interval_kind(), a: i.a, b: i.b }
    }
}

/// A component of a [`CompactSet::Union`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Piece {
    Interval(Interval),
    Point(C64),
}

impl Piece {
    fn lo(&self) -> f64 {
        match self {
            Piece::Interval(i) => i.a,
            Piece::Point(z) => z.re,
        }
    }

    fn hi(&self) -> f64 {
        match self {
            Piece::Interval(i) => i.b,
            Piece::Point(z) => z.re,
        }
    }
}

/// Planar regions sampled on a uniform grid over `[-1, 1]²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionPredicate {
    /// `|y| <= exp(-1/(1-|x|))` for `|x| < 1`, plus the tips `(±1, 0)`.
    CuspExp,
    UnitDisk,
}

impl RegionPredicate {
    pub fn contains(self, x: f64, y: f64) -> bool {
        match self {
            RegionPredicate::CuspExp => x.abs() < 1.0 && y.abs() <= (-1.0 / (1.0 - x.abs())).exp(),
            RegionPredicate::UnitDisk => x * x + y * y <= 1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RegionPredicate::CuspExp => "cusp_exp",
            RegionPredicate::UnitDisk => "unit_disk",
        }
    }
}

/// A point cloud drawn from a grid, kept as a mask so polynomials can be
/// evaluated on the whole grid at once.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledRegion {
    predicate: RegionPredicate,
    grid: usize,
    axis: Vec<f64>,
    /// Row-major over `axis × axis`, y slow.
    mask: Vec<bool>,
    extra: Vec<[f64; 2]>,
}

pub const MIN_REGION_POINTS: usize = 100;

impl SampledRegion {
    pub fn new(predicate: RegionPredicate, grid: usize) -> Result<Self> {
        if grid < 3 {
            return Err(Error::InvalidParameter("region grid needs at least 3 points per axis".into()));
        }
        let axis: Vec<f64> = (0..grid).map(|i| -1.0 + 2.0 * i as f64 / (grid - 1) as f64).collect();
        let mut mask = Vec::with_capacity(grid * grid);
        for &y in &axis {
            for &x in &axis {
                mask.push(predicate.contains(x, y));
            }
        }
        let extra = match predicate {
            RegionPredicate::CuspExp => vec![[-1.0, 0.0], [1.0, 0.0]],
            RegionPredicate::UnitDisk => Vec::new(),
        };
        let region = Self { predicate, grid, axis, mask, extra };
        if region.len() < MIN_REGION_POINTS {
            return Err(Error::InvalidParameter(format!(
                "sampled region has {} points, need at least {MIN_REGION_POINTS}",
                region.len()
            )));
        }
        Ok(region)
    }

    pub fn predicate(&self) -> RegionPredicate {
        self.predicate
    }

    pub fn grid(&self) -> usize {
        self.grid
    }

    pub fn axis(&self) -> &[f64] {
        &self.axis
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    /// Points added on top of the grid.
    pub fn extra(&self) -> &[[f64; 2]] {
        &self.extra
    }

    pub fn len(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count() + self.extra.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn points(&self) -> Vec<[f64; 2]> {
        let mut out = Vec::with_capacity(self.len());
        for (iy, &y) in self.axis.iter().enumerate() {
            for (ix, &x) in self.axis.iter().enumerate() {
                if self.mask[iy * self.grid + ix] {
                    out.push([x, y]);
                }
            }
        }
        out.extend_from_slice(&self.extra);
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CompactSet {
    Interval(Interval),
    /// Ordered, pairwise disjoint intervals and points.
    Union(Vec<Piece>),
    /// Closed disk in the complex plane.
    Disk { center: C64, radius: f64 },
    /// Product of intervals in `R^N`.
    Box(Vec<Interval>),
    Region2D(SampledRegion),
}

impl CompactSet {
    pub fn unit_interval() -> Self {
        CompactSet::Interval(Interval::unit())
    }

    pub fn union(parts: Vec<Piece>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidParameter("union needs at least one part".into()));
        }
        for w in parts.windows(2) {
            if w[0].hi() >= w[1].lo() {
                return Err(Error::InvalidParameter("union parts must be ordered and pairwise disjoint".into()));
            }
        }
        Ok(CompactSet::Union(parts))
    }

    pub fn disk(center: C64, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidParameter(format!("disk radius must be positive, got {radius}")));
        }
        Ok(CompactSet::Disk { center, radius })
    }

    pub fn cube(nvars: usize) -> Self {
        CompactSet::Box(vec![Interval::unit(); nvars])
    }

    /// Number of real coordinates of the ambient space a polynomial on this set takes.
    pub fn dim(&self) -> usize {
        match self {
            CompactSet::Interval(_) | CompactSet::Union(_) | CompactSet::Disk { .. } => 1,
            CompactSet::Box(parts) => parts.len(),
            CompactSet::Region2D(_) => 2,
        }
    }

    /// Whether the set lies in the real line or a real box.
    pub fn is_real(&self) -> bool {
        match self {
            CompactSet::Interval(_) | CompactSet::Box(_) | CompactSet::Region2D(_) => true,
            CompactSet::Union(parts) => parts.iter().all(|p| match p {
                Piece::Interval(_) => true,
                Piece::Point(z) => z.im == 0.0,
            }),
            CompactSet::Disk { .. } => false,
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum SetWire {
    Interval { a: f64, b: f64 },
    Point { re: f64, #[serde(default)] im: f64 },
    Union { parts: Vec<SetWire> },
    Disk { #[serde(default)] re: f64, #[serde(default)] im: f64, radius: f64 },
    Box { parts: Vec<Interval> },
    Region2d { predicate: RegionPredicate, #[serde(default = "default_grid")] grid: usize },
}

fn default_grid() -> usize {
    401
}

impl TryFrom<SetWire> for CompactSet {
    type Error = Error;

    fn try_from(w: SetWire) -> Result<Self> {
        match w {
            SetWire::Interval { a, b } => Ok(CompactSet::Interval(Interval::new(a, b)?)),
            SetWire::Point { .. } => Err(Error::InvalidParameter("a point is only allowed inside a union".into())),
            SetWire::Union { parts } => {
                let parts = parts
                    .into_iter()
                    .map(|p| match p {
                        SetWire::Interval { a, b } => Ok(Piece::Interval(Interval::new(a, b)?)),
                        SetWire::Point { re, im } => Ok(Piece::Point(C64::new(re, im))),
                        _ => Err(Error::InvalidParameter("union parts must be intervals or points".into())),
                    })
                    .collect::<Result<Vec<_>>>()?;
                CompactSet::union(parts)
            }
            SetWire::Disk { re, im, radius } => CompactSet::disk(C64::new(re, im), radius),
            SetWire::Box { parts } => {
                if parts.is_empty() {
                    return Err(Error::InvalidParameter("box needs at least one factor".into()));
                }
                Ok(CompactSet::Box(parts))
            }
            SetWire::Region2d { predicate, grid } => Ok(CompactSet::Region2D(SampledRegion::new(predicate, grid)?)),
        }
    }
}

impl From<&CompactSet> for SetWire {
    fn from(s: &CompactSet) -> Self {
        match s {
            CompactSet::Interval(i) => SetWire::Interval { a: i.a, b: i.b },
            CompactSet::Union(parts) => SetWire::Union {
                parts: parts
                    .iter()
                    .map(|p| match p {
                        Piece::Interval(i) => SetWire::Interval { a: i.a, b: i.b },
                        Piece::Point(z) => SetWire::Point { re: z.re, im: z.im },
                    })
                    .collect(),
            },
            CompactSet::Disk { center, radius } => SetWire::Disk { re: center.re, im: center.im, radius: *radius },
            CompactSet::Box(parts) => SetWire::Box { parts: parts.clone() },
            CompactSet::Region2D(r) => SetWire::Region2d { predicate: r.predicate, grid: r.grid },
        }
    }
}

impl Serialize for CompactSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SetWire::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for CompactSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = SetWire::deserialize(d)?;
        CompactSet::try_from(wire).map_err(serde::de::Error::custom)
    }
}
