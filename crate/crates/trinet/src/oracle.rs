//! Brute-force enumeration of every convex grid polygon in a net.
//!
//! A convex polygon whose edges all lie on net segments is cut out by at most
//! six half-planes, two per line family: a lower bound on each coordinate,
//! plus an upper bound obtained by cutting a corner off the sub-triangle the
//! lower bounds leave. Writing `t = n - lo_alpha - lo_beta - lo_gamma` for
//! the side of that sub-triangle and `cut_x` for the depth trimmed from the
//! corner where coordinate `x` is maximal, the six potential edge lengths are
//!
//! ```text
//! (cut_alpha, cut_beta, cut_gamma,
//!  t - cut_beta - cut_gamma, t - cut_alpha - cut_gamma, t - cut_alpha - cut_beta)
//! ```
//!
//! Each genuine polygon corresponds to exactly one such sextuple with tight
//! bounds, so enumeration is an integer odometer over valid sextuples, the
//! class is the number of strictly positive edge lengths, and no geometry
//! runs in the counting loop. Candidates with fewer than three positive
//! edges are points or segments and are rejected.

use std::fmt;
use std::ops::Range;
use std::thread;

use serde::{Deserialize, Serialize};

use crate::net::{EdgeDirection, NetSize, Side, TriCoord};
use crate::Error;

/// Polygon class by edge count.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolygonClass {
    Triangle,
    Quadrilateral,
    Pentagon,
    Hexagon,
}

impl PolygonClass {
    pub const ALL: [PolygonClass; 4] = [
        PolygonClass::Triangle,
        PolygonClass::Quadrilateral,
        PolygonClass::Pentagon,
        PolygonClass::Hexagon,
    ];

    pub fn edges(self) -> u32 {
        match self {
            PolygonClass::Triangle => 3,
            PolygonClass::Quadrilateral => 4,
            PolygonClass::Pentagon => 5,
            PolygonClass::Hexagon => 6,
        }
    }

    pub fn from_edges(edges: u32) -> Option<PolygonClass> {
        match edges {
            3 => Some(PolygonClass::Triangle),
            4 => Some(PolygonClass::Quadrilateral),
            5 => Some(PolygonClass::Pentagon),
            6 => Some(PolygonClass::Hexagon),
            _ => None,
        }
    }
}

impl fmt::Display for PolygonClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PolygonClass::Triangle => "triangle",
            PolygonClass::Quadrilateral => "quadrilateral",
            PolygonClass::Pentagon => "pentagon",
            PolygonClass::Hexagon => "hexagon",
        })
    }
}

/// Canonical encoding of one convex grid polygon: the three coordinate
/// minima over the polygon and the three corner-cut depths from the maxima.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct BoundSextuple {
    pub lo_alpha: u32,
    pub lo_beta: u32,
    pub lo_gamma: u32,
    pub cut_alpha: u32,
    pub cut_beta: u32,
    pub cut_gamma: u32,
}

impl BoundSextuple {
    /// Side length of the sub-triangle left by the lower bounds.
    pub fn span(&self, n: NetSize) -> i64 {
        n.get() as i64 - self.lo_alpha as i64 - self.lo_beta as i64 - self.lo_gamma as i64
    }

    fn raw_edge_lengths(&self, n: NetSize) -> [i64; 6] {
        let t = self.span(n);
        let (ca, cb, cc) = (
            self.cut_alpha as i64,
            self.cut_beta as i64,
            self.cut_gamma as i64,
        );
        [ca, cb, cc, t - cb - cc, t - ca - cc, t - ca - cb]
    }

    /// Checks the sextuple invariants: positive span, pairwise cut sums at
    /// most the span, and at least three positive edge lengths.
    pub fn validate(&self, n: NetSize) -> Result<(), Error> {
        if self.span(n) < 1 {
            return Err(Error::DegenerateRegion);
        }
        let lengths = self.raw_edge_lengths(n);
        if lengths.iter().any(|&len| len < 0) {
            return Err(Error::DegenerateRegion);
        }
        if lengths.iter().filter(|&&len| len > 0).count() < 3 {
            return Err(Error::DegenerateRegion);
        }
        Ok(())
    }

    /// The six potential edge lengths: the three corner-cut edges then the
    /// three full-side edges, each in `(alpha, beta, gamma)` family order.
    pub fn edge_lengths(&self, n: NetSize) -> Result<[u32; 6], Error> {
        self.validate(n)?;
        Ok(self.raw_edge_lengths(n).map(|len| len as u32))
    }

    /// Which net sides the polygon touches: a zero lower bound for a family
    /// puts a vertex on the side where that coordinate vanishes.
    pub fn touches(&self) -> SideTouches {
        SideTouches {
            oa: self.lo_gamma == 0,
            ob: self.lo_beta == 0,
            ab: self.lo_alpha == 0,
        }
    }

    /// Recomputes the canonical sextuple from a polygon's vertices: lower
    /// bounds are the coordinate minima, cuts the trims from the maxima.
    pub fn from_vertices(vertices: &[TriCoord]) -> BoundSextuple {
        assert!(!vertices.is_empty());
        let n = vertices[0].sum();
        let min = |f: fn(TriCoord) -> u32| vertices.iter().map(|&v| f(v)).min().unwrap();
        let max = |f: fn(TriCoord) -> u32| vertices.iter().map(|&v| f(v)).max().unwrap();
        let (lo_a, lo_b, lo_c) = (min(TriCoord::alpha), min(TriCoord::beta), min(TriCoord::gamma));
        let t = n - lo_a - lo_b - lo_c;
        BoundSextuple {
            lo_alpha: lo_a,
            lo_beta: lo_b,
            lo_gamma: lo_c,
            cut_alpha: lo_a + t - max(TriCoord::alpha),
            cut_beta: lo_b + t - max(TriCoord::beta),
            cut_gamma: lo_c + t - max(TriCoord::gamma),
        }
    }
}

/// Classifies a sextuple by its number of positive edge lengths.
pub fn classify_bounds(b: &BoundSextuple, n: NetSize) -> Result<PolygonClass, Error> {
    let edges = b.edge_lengths(n)?;
    let positive = edges.iter().filter(|&&len| len > 0).count() as u32;
    Ok(PolygonClass::from_edges(positive).expect("validate guarantees 3..=6 positive edges"))
}

/// Side-touching flags of a polygon, and also the mask type for
/// [`count_touching`] queries.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct SideTouches {
    /// Touches side `OA` (some vertex has `gamma = 0`).
    pub oa: bool,
    /// Touches side `OB` (some vertex has `beta = 0`).
    pub ob: bool,
    /// Touches base `AB` (some vertex has `alpha = 0`).
    pub ab: bool,
}

impl SideTouches {
    pub const NONE: SideTouches = SideTouches {
        oa: false,
        ob: false,
        ab: false,
    };

    pub fn from_sides(sides: &[Side]) -> SideTouches {
        let mut t = SideTouches::NONE;
        for side in sides {
            match side {
                Side::OA => t.oa = true,
                Side::OB => t.ob = true,
                Side::AB => t.ab = true,
            }
        }
        t
    }

    /// True when every side required by `other` is touched by `self`.
    pub fn covers(&self, other: SideTouches) -> bool {
        (self.oa || !other.oa) && (self.ob || !other.ob) && (self.ab || !other.ab)
    }
}

/// A fully materialized convex grid polygon.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct LatticePolygon {
    pub bounds: BoundSextuple,
    pub class: PolygonClass,
    /// Vertices in counterclockwise order, starting on the minimum-alpha line.
    pub vertices: Vec<TriCoord>,
    pub touches: SideTouches,
}

impl LatticePolygon {
    /// Order of the net this polygon lives in.
    pub fn net_size(&self) -> NetSize {
        NetSize::new(self.vertices[0].sum()).expect("polygon vertices lie in a real net")
    }

    /// Directions of the edges in traversal order, recomputed from the
    /// vertices rather than from the bounds.
    pub fn edge_directions(&self) -> Vec<EdgeDirection> {
        let m = self.vertices.len();
        (0..m)
            .map(|i| {
                let (dir, _) = EdgeDirection::between(self.vertices[i], self.vertices[(i + 1) % m])
                    .expect("consecutive polygon vertices share a grid line");
                dir
            })
            .collect()
    }

    /// Interior angles in degrees at each vertex, in traversal order.
    pub fn interior_angles(&self) -> Vec<i32> {
        let dirs = self.edge_directions();
        let m = dirs.len();
        (0..m)
            .map(|i| {
                crate::net::interior_angle(dirs[(i + m - 1) % m], dirs[i])
                    .expect("convex polygon vertices are never degenerate")
            })
            .collect()
    }
}

/// Builds the polygon a valid sextuple describes.
///
/// The counterclockwise cycle visits the six support lines in the fixed
/// order `alpha`-min, `gamma`-max, `beta`-min, `alpha`-max, `gamma`-min,
/// `beta`-max; zero-length edges collapse to a single vertex and are
/// skipped. Recomputing minima and cuts from the vertices reproduces the
/// sextuple exactly.
pub fn polygon_from_bounds(b: &BoundSextuple, n: NetSize) -> Result<LatticePolygon, Error> {
    b.validate(n)?;
    let t = b.span(n) as u32;
    let (la, lb, lc) = (b.lo_alpha, b.lo_beta, b.lo_gamma);
    let (ca, cb, cc) = (b.cut_alpha, b.cut_beta, b.cut_gamma);
    let cycle = [
        TriCoord::raw(la, lb + t - cb, lc + cb),
        TriCoord::raw(la, lb + cc, lc + t - cc),
        TriCoord::raw(la + cc, lb, lc + t - cc),
        TriCoord::raw(la + t - ca, lb, lc + ca),
        TriCoord::raw(la + t - ca, lb + ca, lc),
        TriCoord::raw(la + cb, lb + t - cb, lc),
    ];
    let mut vertices: Vec<TriCoord> = Vec::with_capacity(6);
    for v in cycle {
        if vertices.last() != Some(&v) {
            vertices.push(v);
        }
    }
    if vertices.len() > 1 && vertices.first() == vertices.last() {
        vertices.pop();
    }
    let class = PolygonClass::from_edges(vertices.len() as u32)
        .expect("valid sextuple yields 3..=6 distinct vertices");
    Ok(LatticePolygon {
        bounds: *b,
        class,
        vertices,
        touches: b.touches(),
    })
}

/// Odometer over all valid sextuples of the `n`-net with `lo_alpha` in a
/// given range, in lexicographic order
/// `(lo_alpha, lo_beta, lo_gamma, cut_alpha, cut_beta, cut_gamma)`.
struct SextupleIter {
    n: u32,
    la_end: u32,
    la: u32,
    lb: u32,
    lc: u32,
    ca: u32,
    cb: u32,
    cc: u32,
    done: bool,
}

impl SextupleIter {
    fn new(n: NetSize, lo_alpha: Range<u32>) -> SextupleIter {
        let n = n.get();
        let la_end = lo_alpha.end.min(n);
        SextupleIter {
            n,
            la_end,
            la: lo_alpha.start,
            lb: 0,
            lc: 0,
            ca: 0,
            cb: 0,
            cc: 0,
            done: lo_alpha.start >= la_end,
        }
    }

    fn span(&self) -> u32 {
        self.n - self.la - self.lb - self.lc
    }

    /// Advances the odometer one lexicographic position; cut bounds depend on
    /// the outer counters, and resetting inner counters to zero always lands
    /// in range.
    fn bump(&mut self) {
        let t = self.span();
        if self.cc < (t - self.ca).min(t - self.cb) {
            self.cc += 1;
            return;
        }
        self.cc = 0;
        if self.cb < t - self.ca {
            self.cb += 1;
            return;
        }
        self.cb = 0;
        if self.ca < t {
            self.ca += 1;
            return;
        }
        self.ca = 0;
        if self.lc < self.n - 1 - self.la - self.lb {
            self.lc += 1;
            return;
        }
        self.lc = 0;
        if self.lb < self.n - 1 - self.la {
            self.lb += 1;
            return;
        }
        self.lb = 0;
        self.la += 1;
        if self.la >= self.la_end {
            self.done = true;
        }
    }

    /// Number of positive edge lengths at the current position, or `None`
    /// when fewer than three edges survive (a point or segment).
    fn current_class_edges(&self) -> Option<u32> {
        let t = self.span();
        let lengths = [
            self.ca,
            self.cb,
            self.cc,
            t - self.cb - self.cc,
            t - self.ca - self.cc,
            t - self.ca - self.cb,
        ];
        let positive = lengths.iter().filter(|&&len| len > 0).count() as u32;
        (positive >= 3).then_some(positive)
    }
}

impl Iterator for SextupleIter {
    type Item = (BoundSextuple, PolygonClass);

    fn next(&mut self) -> Option<Self::Item> {
        while !self.done {
            let edges = self.current_class_edges();
            let item = edges.map(|e| {
                (
                    BoundSextuple {
                        lo_alpha: self.la,
                        lo_beta: self.lb,
                        lo_gamma: self.lc,
                        cut_alpha: self.ca,
                        cut_beta: self.cb,
                        cut_gamma: self.cc,
                    },
                    PolygonClass::from_edges(e).unwrap(),
                )
            });
            self.bump();
            if item.is_some() {
                return item;
            }
        }
        None
    }
}

/// Streams every convex grid polygon of the `n`-net exactly once, in
/// deterministic lexicographic sextuple order, optionally restricted to one
/// class.
pub fn enumerate_polygons(
    n: NetSize,
    filter: Option<PolygonClass>,
) -> impl Iterator<Item = LatticePolygon> {
    SextupleIter::new(n, 0..n.get())
        .filter(move |&(_, class)| filter.is_none_or(|want| class == want))
        .map(move |(b, _)| {
            polygon_from_bounds(&b, n).expect("enumerated sextuples are always valid")
        })
}

/// Exact per-class polygon totals for one net.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CountTable {
    pub n: u32,
    pub triangles: u64,
    pub quadrilaterals: u64,
    pub pentagons: u64,
    pub hexagons: u64,
}

impl CountTable {
    fn zero(n: u32) -> CountTable {
        CountTable {
            n,
            triangles: 0,
            quadrilaterals: 0,
            pentagons: 0,
            hexagons: 0,
        }
    }

    pub fn get(&self, class: PolygonClass) -> u64 {
        match class {
            PolygonClass::Triangle => self.triangles,
            PolygonClass::Quadrilateral => self.quadrilaterals,
            PolygonClass::Pentagon => self.pentagons,
            PolygonClass::Hexagon => self.hexagons,
        }
    }

    pub fn total(&self) -> u64 {
        self.triangles + self.quadrilaterals + self.pentagons + self.hexagons
    }

    fn add(&mut self, other: &CountTable) {
        self.triangles += other.triangles;
        self.quadrilaterals += other.quadrilaterals;
        self.pentagons += other.pentagons;
        self.hexagons += other.hexagons;
    }
}

fn count_lo_alpha_values(n: NetSize, values: impl Iterator<Item = u32>) -> CountTable {
    let mut table = CountTable::zero(n.get());
    for la in values {
        for (_, class) in SextupleIter::new(n, la..la + 1) {
            match class {
                PolygonClass::Triangle => table.triangles += 1,
                PolygonClass::Quadrilateral => table.quadrilaterals += 1,
                PolygonClass::Pentagon => table.pentagons += 1,
                PolygonClass::Hexagon => table.hexagons += 1,
            }
        }
    }
    table
}

/// Per-class totals via a streaming pass over sextuples; no polygon is
/// materialized.
pub fn count_by_class(n: NetSize) -> CountTable {
    count_lo_alpha_values(n, 0..n.get())
}

/// Parallel [`count_by_class`]: the `lo_alpha` values are dealt round-robin
/// to worker threads and the per-thread tables summed in thread order, so the
/// result is identical to the serial count.
pub fn count_by_class_threaded(n: NetSize, threads: usize) -> CountTable {
    let workers = threads.clamp(1, n.get() as usize);
    if workers == 1 {
        return count_by_class(n);
    }
    let tables = thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                scope.spawn(move || {
                    count_lo_alpha_values(
                        n,
                        (0..n.get()).filter(move |la| *la as usize % workers == w),
                    )
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("counting worker panicked"))
            .collect::<Vec<_>>()
    });
    let mut total = CountTable::zero(n.get());
    for t in &tables {
        total.add(t);
    }
    total
}

/// Counts polygons of `class` whose side-touching flags include every side in
/// `required`.
pub fn count_touching(n: NetSize, class: PolygonClass, required: &[Side]) -> u64 {
    let mask = SideTouches::from_sides(required);
    SextupleIter::new(n, 0..n.get())
        .filter(|&(b, c)| c == class && b.touches().covers(mask))
        .count() as u64
}
