//! Geometry of the triangular net: lattice coordinates, the three parallel
//! line families, an exact planar embedding, and 60-degree direction
//! arithmetic.
//!
//! The net over the triangle `O A_n B_n` is modeled with integer coordinates
//! `(alpha, beta, gamma)`, `alpha + beta + gamma = n`, where `alpha` grows
//! toward corner `O`, `beta` toward `A_n` and `gamma` toward `B_n`. Side
//! `OA_n` is exactly the set `{gamma = 0}`, side `OB_n` is `{beta = 0}` and
//! the base `A_nB_n` is `{alpha = 0}`. Each grid line fixes one coordinate,
//! so incidence, side-touching and edge-direction questions are all pure
//! integer tests; no floating point appears anywhere.

use std::fmt;

use serde::ser::SerializeTuple;
use serde::{Serialize, Serializer};

use crate::Error;

/// Order of a triangular net: the number of equal parts per side. Always at
/// least 1.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct NetSize(u32);

impl NetSize {
    pub fn new(n: u32) -> Result<NetSize, Error> {
        if n >= 1 {
            Ok(NetSize(n))
        } else {
            Err(Error::InvalidNetSize)
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for NetSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// One of the three line families; family `F` consists of the lines on which
/// the `F`-coordinate is constant.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Family {
    Alpha,
    Beta,
    Gamma,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Alpha, Family::Beta, Family::Gamma];
}

/// A side of the net triangle, named by its endpoints.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Side {
    /// Side `O A_n`, the set `{gamma = 0}`.
    OA,
    /// Side `O B_n`, the set `{beta = 0}`.
    OB,
    /// Base `A_n B_n`, the set `{alpha = 0}`.
    AB,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::OA => "OA",
            Side::OB => "OB",
            Side::AB => "AB",
        })
    }
}

/// Position of a net vertex: nonnegative `(alpha, beta, gamma)` summing to
/// the net order. Corner `O` is `(n, 0, 0)`, `A_n` is `(0, n, 0)` and `B_n`
/// is `(0, 0, n)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TriCoord {
    alpha: u32,
    beta: u32,
    gamma: u32,
}

impl TriCoord {
    /// Builds a coordinate triple, checking it lies in the `n`-net.
    pub fn new(alpha: u32, beta: u32, gamma: u32, n: NetSize) -> Result<TriCoord, Error> {
        if alpha as u64 + beta as u64 + gamma as u64 == n.get() as u64 {
            Ok(TriCoord { alpha, beta, gamma })
        } else {
            Err(Error::InvalidCoord {
                alpha,
                beta,
                gamma,
                n: n.get(),
            })
        }
    }

    /// Internal constructor for triples already known to sum correctly.
    pub(crate) fn raw(alpha: u32, beta: u32, gamma: u32) -> TriCoord {
        TriCoord { alpha, beta, gamma }
    }

    pub fn alpha(self) -> u32 {
        self.alpha
    }

    pub fn beta(self) -> u32 {
        self.beta
    }

    pub fn gamma(self) -> u32 {
        self.gamma
    }

    pub fn coord(self, family: Family) -> u32 {
        match family {
            Family::Alpha => self.alpha,
            Family::Beta => self.beta,
            Family::Gamma => self.gamma,
        }
    }

    /// Sum of the coordinates, i.e. the order of the net this point lives in.
    pub fn sum(self) -> u32 {
        self.alpha + self.beta + self.gamma
    }

    /// True when the point lies on the given side of the net triangle.
    pub fn on_side(self, side: Side) -> bool {
        match side {
            Side::OA => self.gamma == 0,
            Side::OB => self.beta == 0,
            Side::AB => self.alpha == 0,
        }
    }
}

impl fmt::Display for TriCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.alpha, self.beta, self.gamma)
    }
}

// Serialized as the bare triple `[alpha, beta, gamma]` in polygon dumps.
impl Serialize for TriCoord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(3)?;
        t.serialize_element(&self.alpha)?;
        t.serialize_element(&self.beta)?;
        t.serialize_element(&self.gamma)?;
        t.end()
    }
}

/// One grid line: the net points whose `family` coordinate equals `index`.
/// An `n`-net has `3 (n + 1)` grid lines, indices `0..=n` per family.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GridLine {
    pub family: Family,
    pub index: u32,
}

impl GridLine {
    pub fn contains(self, p: TriCoord) -> bool {
        p.coord(self.family) == self.index
    }
}

/// All grid lines of the `n`-net, family-major then by index.
pub fn grid_lines(n: NetSize) -> Vec<GridLine> {
    let mut lines = Vec::with_capacity(3 * (n.get() as usize + 1));
    for family in Family::ALL {
        for index in 0..=n.get() {
            lines.push(GridLine { family, index });
        }
    }
    lines
}

/// All lattice points of the `n`-net in ascending lexicographic order by
/// `(alpha, beta)`. There are `(n + 1)(n + 2) / 2` of them.
pub fn lattice_points(n: NetSize) -> Vec<TriCoord> {
    let n = n.get();
    let mut points = Vec::with_capacity(((n as usize + 1) * (n as usize + 2)) / 2);
    for alpha in 0..=n {
        for beta in 0..=(n - alpha) {
            points.push(TriCoord::raw(alpha, beta, n - alpha - beta));
        }
    }
    points
}

/// One of the six unit lattice directions, indexed counterclockwise.
///
/// Direction 0 runs along the base from `A_n` toward `B_n`; each successive
/// index turns 60 degrees counterclockwise. Opposite directions differ by 3.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EdgeDirection(u8);

/// Coordinate steps `(d_alpha, d_beta, d_gamma)` for directions 0..=5.
const DIRECTION_STEPS: [(i64, i64, i64); 6] = [
    (0, -1, 1),
    (1, -1, 0),
    (1, 0, -1),
    (0, 1, -1),
    (-1, 1, 0),
    (-1, 0, 1),
];

impl EdgeDirection {
    pub fn new(index: u8) -> EdgeDirection {
        assert!(index < 6, "direction index {index} out of range 0..6");
        EdgeDirection(index)
    }

    pub fn all() -> [EdgeDirection; 6] {
        [0, 1, 2, 3, 4, 5].map(EdgeDirection)
    }

    pub fn index(self) -> u8 {
        self.0
    }

    pub fn opposite(self) -> EdgeDirection {
        EdgeDirection((self.0 + 3) % 6)
    }

    /// The direction `steps` further counterclockwise.
    pub fn rotated(self, steps: u8) -> EdgeDirection {
        EdgeDirection((self.0 + steps % 6) % 6)
    }

    /// Unit step of this direction in `(alpha, beta, gamma)` coordinates.
    pub fn step(self) -> (i64, i64, i64) {
        DIRECTION_STEPS[self.0 as usize]
    }

    /// Direction and lattice length of the segment from `p` to `q`, when the
    /// segment runs along a grid line; `None` otherwise (including `p == q`).
    pub fn between(p: TriCoord, q: TriCoord) -> Option<(EdgeDirection, u32)> {
        let d = (
            q.alpha() as i64 - p.alpha() as i64,
            q.beta() as i64 - p.beta() as i64,
            q.gamma() as i64 - p.gamma() as i64,
        );
        if d == (0, 0, 0) {
            return None;
        }
        let len = d.0.abs().max(d.1.abs()).max(d.2.abs());
        for dir in EdgeDirection::all() {
            let (da, db, dc) = dir.step();
            if (da * len, db * len, dc * len) == d {
                return Some((dir, len as u32));
            }
        }
        None
    }
}

impl fmt::Display for EdgeDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Interior angle, in degrees, at a vertex whose incoming edge has direction
/// `prev` and outgoing edge direction `next`.
///
/// The value is `180 - 60 * d` where `d` is the counterclockwise turn in
/// direction steps: 120 or 60 at a convex vertex of a counterclockwise
/// polygon (and negative for a reflex turn, which no convex polygon
/// produces). Collinear (`d = 0`) and reversing (`d = 3`) pairs have no
/// vertex and are rejected.
pub fn interior_angle(prev: EdgeDirection, next: EdgeDirection) -> Result<i32, Error> {
    let d = (6 + next.index() as i32 - prev.index() as i32) % 6;
    match d {
        0 | 3 => Err(Error::DegenerateVertex {
            prev: prev.index(),
            next: next.index(),
        }),
        d => Ok(180 - 60 * d),
    }
}

/// Exact planar position: the real point is
/// `(x_num / denom, y_num * sqrt(3) / denom)`.
///
/// The square-root factor is kept symbolic so equality, collinearity and
/// orientation are integer computations.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PlanarPoint {
    pub x_num: i64,
    pub y_num: i64,
    pub denom: i64,
}

impl PlanarPoint {
    /// Sign of the cross product `(b - a) x (c - a)`: positive when `a, b, c`
    /// turn counterclockwise. The three points must come from the same net.
    pub fn orientation(a: PlanarPoint, b: PlanarPoint, c: PlanarPoint) -> i64 {
        assert!(
            a.denom == b.denom && b.denom == c.denom,
            "orientation requires points embedded from the same net"
        );
        let abx = b.x_num - a.x_num;
        let aby = b.y_num - a.y_num;
        let acx = c.x_num - a.x_num;
        let acy = c.y_num - a.y_num;
        (abx * acy - acx * aby).signum()
    }

    pub fn collinear(a: PlanarPoint, b: PlanarPoint, c: PlanarPoint) -> bool {
        PlanarPoint::orientation(a, b, c) == 0
    }
}

/// Maps a net point onto the fixed equilateral triangle of unit side with
/// `A_n = (0, 0)`, `B_n = (1, 0)` and `O = (1/2, sqrt(3)/2)`.
///
/// Corners map to corners and the map is affine, so collinear lattice points
/// stay collinear. Fails if `p` does not belong to the `n`-net.
pub fn embed(p: TriCoord, n: NetSize) -> Result<PlanarPoint, Error> {
    if p.sum() != n.get() {
        return Err(Error::InvalidCoord {
            alpha: p.alpha(),
            beta: p.beta(),
            gamma: p.gamma(),
            n: n.get(),
        });
    }
    // x = (2 gamma + alpha) / (2n), y = alpha sqrt(3) / (2n).
    Ok(PlanarPoint {
        x_num: 2 * p.gamma() as i64 + p.alpha() as i64,
        y_num: p.alpha() as i64,
        denom: 2 * n.get() as i64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn net(n: u32) -> NetSize {
        NetSize::new(n).unwrap()
    }

    #[test]
    fn net_size_rejects_zero() {
        assert_eq!(NetSize::new(0), Err(Error::InvalidNetSize));
        assert_eq!(net(1).get(), 1);
    }

    #[test]
    fn lattice_points_count_and_order() {
        for n in 1..=20 {
            let pts = lattice_points(net(n));
            assert_eq!(pts.len() as u32, (n + 1) * (n + 2) / 2);
            for p in &pts {
                assert_eq!(p.sum(), n);
            }
            let mut sorted = pts.clone();
            sorted.sort_by_key(|p| (p.alpha(), p.beta()));
            assert_eq!(pts, sorted, "points must come out in (alpha, beta) order");
        }
    }

    #[test]
    fn lattice_points_small_nets() {
        let pts = lattice_points(net(1));
        assert_eq!(pts.len(), 3);
        assert!(pts.contains(&TriCoord::raw(1, 0, 0)));
        assert!(pts.contains(&TriCoord::raw(0, 1, 0)));
        assert!(pts.contains(&TriCoord::raw(0, 0, 1)));

        assert_eq!(lattice_points(net(2)).len(), 6);

        let pts3 = lattice_points(net(3));
        assert_eq!(pts3.len(), 10);
        assert!(pts3.contains(&TriCoord::raw(1, 1, 1)));
    }

    #[test]
    fn tricoord_validation() {
        assert!(TriCoord::new(1, 1, 1, net(3)).is_ok());
        assert_eq!(
            TriCoord::new(1, 1, 1, net(4)),
            Err(Error::InvalidCoord {
                alpha: 1,
                beta: 1,
                gamma: 1,
                n: 4
            })
        );
    }

    #[test]
    fn sides_are_zero_sets() {
        let n = net(3);
        let corner_o = TriCoord::new(3, 0, 0, n).unwrap();
        let corner_a = TriCoord::new(0, 3, 0, n).unwrap();
        let corner_b = TriCoord::new(0, 0, 3, n).unwrap();
        assert!(corner_o.on_side(Side::OA) && corner_o.on_side(Side::OB));
        assert!(corner_a.on_side(Side::OA) && corner_a.on_side(Side::AB));
        assert!(corner_b.on_side(Side::OB) && corner_b.on_side(Side::AB));
        assert!(!TriCoord::new(1, 1, 1, n).unwrap().on_side(Side::OA));
    }

    #[test]
    fn grid_line_count() {
        for n in 1..=10 {
            let lines = grid_lines(net(n));
            assert_eq!(lines.len() as u32, 3 * (n + 1));
        }
        let line = GridLine {
            family: Family::Gamma,
            index: 0,
        };
        assert!(line.contains(TriCoord::raw(3, 0, 0)));
        assert!(line.contains(TriCoord::raw(0, 3, 0)));
        assert!(!line.contains(TriCoord::raw(0, 0, 3)));
    }

    #[test]
    fn embed_corners() {
        let n = net(4);
        let o = embed(TriCoord::new(4, 0, 0, n).unwrap(), n).unwrap();
        assert_eq!((o.x_num, o.y_num, o.denom), (4, 4, 8)); // (1/2, sqrt(3)/2)
        let a = embed(TriCoord::new(0, 4, 0, n).unwrap(), n).unwrap();
        assert_eq!((a.x_num, a.y_num), (0, 0));
        let b = embed(TriCoord::new(0, 0, 4, n).unwrap(), n).unwrap();
        assert_eq!((b.x_num, b.y_num, b.denom), (8, 0, 8)); // (1, 0)
    }

    #[test]
    fn embed_rejects_foreign_points() {
        let p = TriCoord::new(1, 1, 1, net(3)).unwrap();
        assert!(embed(p, net(4)).is_err());
    }

    #[test]
    fn embed_midpoints_for_even_order() {
        let n = net(2);
        // Midpoint of A_n B_n is (0, 1, 1) -> (1/2, 0).
        let m = embed(TriCoord::new(0, 1, 1, n).unwrap(), n).unwrap();
        assert_eq!((m.x_num, m.y_num, m.denom), (2, 0, 4));
    }

    #[test]
    fn embed_preserves_collinearity() {
        let n = net(4);
        // Points on the line alpha = 1.
        let p = |a, b, c| embed(TriCoord::new(a, b, c, n).unwrap(), n).unwrap();
        assert!(PlanarPoint::collinear(p(1, 3, 0), p(1, 2, 1), p(1, 0, 3)));
        assert!(!PlanarPoint::collinear(p(1, 3, 0), p(2, 2, 0), p(1, 0, 3)));
    }

    #[test]
    fn direction_arithmetic() {
        for d in EdgeDirection::all() {
            assert_eq!(d.opposite().opposite(), d);
            assert_eq!((d.index() + 3) % 6, d.opposite().index());
            let (a, b, c) = d.step();
            assert_eq!(a + b + c, 0, "steps stay on the coordinate plane");
            let (oa, ob, oc) = d.opposite().step();
            assert_eq!((a, b, c), (-oa, -ob, -oc));
        }
    }

    #[test]
    fn direction_between_points() {
        let p = TriCoord::raw(0, 3, 0);
        let q = TriCoord::raw(0, 0, 3);
        let (dir, len) = EdgeDirection::between(p, q).unwrap();
        assert_eq!((dir.index(), len), (0, 3));
        let (back, len2) = EdgeDirection::between(q, p).unwrap();
        assert_eq!((back, len2), (dir.opposite(), 3));
        // Off-grid pair: no shared coordinate.
        assert!(EdgeDirection::between(TriCoord::raw(2, 1, 0), TriCoord::raw(0, 2, 1)).is_none());
        assert!(EdgeDirection::between(p, p).is_none());
    }

    #[test]
    fn interior_angle_values() {
        let d = EdgeDirection::new(0);
        assert_eq!(interior_angle(d, d.rotated(1)), Ok(120));
        assert_eq!(interior_angle(d, d.rotated(2)), Ok(60));
        assert!(matches!(
            interior_angle(d, d),
            Err(Error::DegenerateVertex { .. })
        ));
        assert!(matches!(
            interior_angle(d, d.opposite()),
            Err(Error::DegenerateVertex { .. })
        ));
    }

    #[test]
    fn interior_angle_rotation_invariant() {
        for prev in EdgeDirection::all() {
            for next in EdgeDirection::all() {
                for offset in 0..6u8 {
                    let base = interior_angle(prev, next);
                    let rotated = interior_angle(prev.rotated(offset), next.rotated(offset));
                    match (base, rotated) {
                        (Ok(a), Ok(b)) => assert_eq!(a, b),
                        (Err(_), Err(_)) => {}
                        other => panic!("rotation changed the outcome: {other:?}"),
                    }
                }
            }
        }
    }

    #[test]
    fn net_triangle_corners_are_acute() {
        // Counterclockwise walk A_n -> B_n -> O -> A_n has edge directions
        // 0, 2, 4; every corner turns two steps, so every interior angle
        // is 60 degrees.
        let dirs = [
            EdgeDirection::new(0),
            EdgeDirection::new(2),
            EdgeDirection::new(4),
        ];
        for i in 0..3 {
            let angle = interior_angle(dirs[i], dirs[(i + 1) % 3]).unwrap();
            assert_eq!(angle, 60);
        }
    }
}
