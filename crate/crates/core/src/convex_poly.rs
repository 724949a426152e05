//! Exact convex-polygon kernel: hulls, area/perimeter summaries, and the
//! geometry of r-neighborhoods (outer parallel bodies).
//!
//! The offset computations here are deliberately geometric -- edge rectangles
//! plus vertex arc sectors -- rather than an application of the closed-form
//! offset identities, so the two routes can be tested against each other.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::ops::{Add, Mul, Sub};

/// A point (or vector) in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the cross product, positive when `other` is
    /// counterclockwise of `self`.
    pub fn cross(self, other: Self) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl From<[f64; 2]> for Point2 {
    fn from(p: [f64; 2]) -> Self {
        Self { x: p[0], y: p[1] }
    }
}

impl From<Point2> for [f64; 2] {
    fn from(p: Point2) -> Self {
        [p.x, p.y]
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, s: f64) -> Point2 {
        Point2::new(self.x * s, self.y * s)
    }
}

/// Turn direction at `b` when walking a -> b -> c.
fn turn(a: Point2, b: Point2, c: Point2) -> f64 {
    (b - a).cross(c - b)
}

/// Area, perimeter, and the derived isoperimetric quantities of a domain.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct IsoperimetricSummary {
    pub area: f64,
    pub perimeter: f64,
    /// L^2 / (4 pi A); 1 exactly for disks, larger for everything else.
    pub ratio: f64,
    /// L^2 - 4 pi A; nonnegative, zero only for disks.
    pub deficit: f64,
}

impl IsoperimetricSummary {
    pub fn from_area_perimeter(area: f64, perimeter: f64) -> Self {
        Self {
            area,
            perimeter,
            ratio: perimeter * perimeter / (4.0 * PI * area),
            deficit: perimeter * perimeter - 4.0 * PI * area,
        }
    }
}

/// A strictly convex polygon with counterclockwise vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Point2>,
}

impl ConvexPolygon {
    /// Builds a polygon from a vertex ring, normalizing orientation to
    /// counterclockwise and merging nearly-collinear triples.
    ///
    /// The collinearity tolerance is 1e-12 times the squared bounding-box
    /// scale. A genuinely clockwise turn beyond that tolerance is an error
    /// that names the offending triple.
    pub fn new(vertices: Vec<Point2>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::TooFewVertices(vertices.len()));
        }
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteSamples);
        }
        let mut ring = vertices;
        if shoelace_area(&ring) < 0.0 {
            ring.reverse();
        }

        let (mut lo, mut hi) = (ring[0], ring[0]);
        for v in &ring {
            lo = Point2::new(lo.x.min(v.x), lo.y.min(v.y));
            hi = Point2::new(hi.x.max(v.x), hi.y.max(v.y));
        }
        let scale = (hi.x - lo.x).max(hi.y - lo.y);
        if scale <= 0.0 {
            return Err(Error::DegeneratePolygon);
        }
        let tol = 1e-12 * scale * scale;

        // Merge until every remaining triple turns strictly left.
        loop {
            let n = ring.len();
            if n < 3 {
                return Err(Error::DegeneratePolygon);
            }
            let mut removed = false;
            let mut keep = Vec::with_capacity(n);
            for i in 0..n {
                let prev = ring[(i + n - 1) % n];
                let cur = ring[i];
                let next = ring[(i + 1) % n];
                let t = turn(prev, cur, next);
                if t < -tol {
                    return Err(Error::NonConvex {
                        index_prev: (i + n - 1) % n,
                        index: i,
                        index_next: (i + 1) % n,
                        prev: prev.into(),
                        apex: cur.into(),
                        next: next.into(),
                    });
                }
                if t <= tol && !removed {
                    removed = true; // drop one vertex per pass, then re-examine
                    continue;
                }
                keep.push(cur);
            }
            if !removed {
                return Ok(Self { vertices: ring });
            }
            ring = keep;
        }
    }

    pub fn from_coords(coords: Vec<[f64; 2]>) -> Result<Self> {
        Self::new(coords.into_iter().map(Point2::from).collect())
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    /// Support function: max over vertices of <v, (cos theta, sin theta)>.
    pub fn support(&self, theta: f64) -> f64 {
        let u = Point2::new(theta.cos(), theta.sin());
        self.vertices
            .iter()
            .map(|v| v.dot(u))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Shoelace area (positive: vertices are counterclockwise).
    pub fn area(&self) -> f64 {
        shoelace_area(&self.vertices)
    }

    pub fn perimeter(&self) -> f64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| (self.vertices[(i + 1) % n] - self.vertices[i]).norm())
            .sum()
    }

    pub fn summary(&self) -> IsoperimetricSummary {
        IsoperimetricSummary::from_area_perimeter(self.area(), self.perimeter())
    }

    /// The r-neighborhood of this polygon.
    pub fn offset(&self, radius: f64) -> Result<OffsetBody> {
        OffsetBody::new(self.clone(), radius)
    }
}

fn shoelace_area(ring: &[Point2]) -> f64 {
    let n = ring.len();
    0.5 * (0..n)
        .map(|i| ring[i].cross(ring[(i + 1) % n]))
        .sum::<f64>()
}

/// Convex hull of a point cloud (Andrew's monotone chain), counterclockwise,
/// with collinear interior points dropped.
pub fn convex_hull(points: &[Point2]) -> Result<ConvexPolygon> {
    if points.len() < 3 {
        return Err(Error::TooFewVertices(points.len()));
    }
    if points.iter().any(|p| !p.is_finite()) {
        return Err(Error::NonFiniteSamples);
    }
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).expect("finite coords"));
    pts.dedup_by(|a, b| a == b);
    if pts.len() < 3 {
        return Err(Error::TooFewVertices(pts.len()));
    }

    let mut lower: Vec<Point2> = Vec::with_capacity(pts.len());
    for &p in &pts {
        while lower.len() >= 2 && turn(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point2> = Vec::with_capacity(pts.len());
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && turn(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        return Err(Error::DegeneratePolygon);
    }
    ConvexPolygon::new(lower)
}

/// D_r = polygon plus a disk of radius r: straight edges translated outward
/// joined by circular arcs at the vertices.
#[derive(Debug, Clone)]
pub struct OffsetBody {
    base: ConvexPolygon,
    radius: f64,
}

impl OffsetBody {
    pub fn new(base: ConvexPolygon, radius: f64) -> Result<Self> {
        if !(radius >= 0.0) {
            return Err(Error::NegativeRadius(radius));
        }
        Ok(Self { base, radius })
    }

    pub fn base(&self) -> &ConvexPolygon {
        &self.base
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Exterior angle at each vertex, from the adjacent edge directions.
    fn exterior_angles(&self) -> Vec<f64> {
        let v = self.base.vertices();
        let n = v.len();
        (0..n)
            .map(|i| {
                let incoming = v[i] - v[(i + n - 1) % n];
                let outgoing = v[(i + 1) % n] - v[i];
                incoming.cross(outgoing).atan2(incoming.dot(outgoing))
            })
            .collect()
    }

    /// Area and perimeter measured geometrically: base area, edge rectangles,
    /// and vertex arc sectors whose angles come from the edge normals. That
    /// the sectors sum to a full turn is a theorem to test, not an input.
    pub fn summary(&self) -> IsoperimetricSummary {
        let r = self.radius;
        let edge_len = self.base.perimeter();
        let sector_angle: f64 = self.exterior_angles().iter().sum();
        let area = self.base.area() + edge_len * r + 0.5 * r * r * sector_angle;
        let perimeter = edge_len + r * sector_angle;
        IsoperimetricSummary::from_area_perimeter(area, perimeter)
    }

    /// Closed counterclockwise polyline along the offset boundary, with each
    /// vertex arc subdivided into `arc_steps` segments. Its shoelace area
    /// converges to the exact offset area from below.
    pub fn boundary_polyline(&self, arc_steps: usize) -> Result<Vec<Point2>> {
        if arc_steps == 0 {
            return Err(Error::ZeroArcSteps);
        }
        let r = self.radius;
        if r == 0.0 {
            return Ok(self.base.vertices().to_vec());
        }
        let v = self.base.vertices();
        let n = v.len();
        let angles = self.exterior_angles();
        let mut out = Vec::with_capacity(n * (arc_steps + 1));
        for i in 0..n {
            let incoming = v[i] - v[(i + n - 1) % n];
            // outward normal of the incoming edge is (in.y, -in.x) for a CCW ring
            let start = (-incoming.x).atan2(incoming.y);
            for s in 0..=arc_steps {
                let a = start + angles[i] * s as f64 / arc_steps as f64;
                out.push(v[i] + Point2::new(a.cos(), a.sin()) * r);
            }
        }
        Ok(out)
    }
}

/// Shoelace area of an arbitrary closed polyline (positive when CCW).
pub fn polyline_area(ring: &[Point2]) -> f64 {
    shoelace_area(ring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::TAU;

    fn unit_square() -> ConvexPolygon {
        ConvexPolygon::from_coords(vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap()
    }

    #[test]
    fn hull_drops_interior_point() {
        let pts: Vec<Point2> = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0], [0.5, 0.5]]
            .iter()
            .map(|&p| Point2::from(p))
            .collect();
        let hull = convex_hull(&pts).unwrap();
        assert_eq!(hull.vertices().len(), 4);
        assert_abs_diff_eq!(hull.area(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn clockwise_input_reoriented() {
        let p = ConvexPolygon::from_coords(vec![[0.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, 0.0]])
            .unwrap();
        assert!(p.area() > 0.0);
        assert_abs_diff_eq!(p.area(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn nonconvex_names_offender() {
        let r = ConvexPolygon::from_coords(vec![
            [0.0, 0.0],
            [2.0, 0.0],
            [1.0, 0.5], // reflex dent
            [2.0, 2.0],
            [0.0, 2.0],
        ]);
        match r {
            Err(Error::NonConvex { apex, .. }) => assert_eq!(apex, [1.0, 0.5]),
            other => panic!("expected NonConvex, got {other:?}"),
        }
    }

    #[test]
    fn collinear_midpoint_merged() {
        let p = ConvexPolygon::from_coords(vec![
            [0.0, 0.0],
            [0.5, 0.0],
            [1.0, 0.0],
            [1.0, 1.0],
            [0.0, 1.0],
        ])
        .unwrap();
        assert_eq!(p.vertices().len(), 4);
    }

    #[test]
    fn degenerate_inputs_rejected() {
        assert!(matches!(
            ConvexPolygon::from_coords(vec![[0.0, 0.0], [1.0, 1.0]]),
            Err(Error::TooFewVertices(2))
        ));
        assert!(convex_hull(&[
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(2.0, 2.0),
        ])
        .is_err());
    }

    #[test]
    fn unit_square_summary() {
        let s = unit_square().summary();
        assert_abs_diff_eq!(s.area, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s.perimeter, 4.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s.ratio, 4.0 / PI, epsilon = 1e-14);
        assert_abs_diff_eq!(s.deficit, 16.0 - 4.0 * PI, epsilon = 1e-13);
    }

    #[test]
    fn triangle_summary() {
        let t = ConvexPolygon::from_coords(vec![[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]).unwrap();
        let s = t.summary();
        assert_abs_diff_eq!(s.area, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(s.perimeter, 2.0 + 2.0f64.sqrt(), epsilon = 1e-14);
        // deficit = (2 + sqrt(2))^2 - 2 pi, by direct arithmetic
        let expected = (2.0 + 2.0f64.sqrt()).powi(2) - TAU;
        assert_abs_diff_eq!(s.deficit, expected, epsilon = 1e-12);
        assert_abs_diff_eq!(expected, 5.373668942312794, epsilon = 1e-12);
    }

    fn regular_ngon(n: usize, radius: f64) -> ConvexPolygon {
        ConvexPolygon::new(
            (0..n)
                .map(|i| {
                    let a = TAU * i as f64 / n as f64;
                    Point2::new(radius * a.cos(), radius * a.sin())
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn ngon_ratio_monotone_to_one() {
        // closed-form oracle: ratio of the regular n-gon is n tan(pi/n) / pi
        let mut prev = f64::INFINITY;
        for n in [3usize, 4, 6, 12, 24, 48, 96] {
            let s = regular_ngon(n, 1.0).summary();
            let oracle = n as f64 * (PI / n as f64).tan() / PI;
            assert_abs_diff_eq!(s.ratio, oracle, epsilon = 1e-12);
            assert!(s.ratio >= 1.0);
            assert!(s.ratio < prev);
            prev = s.ratio;
        }
    }

    #[test]
    fn unit_square_offset_exact() {
        let b = unit_square().offset(1.0).unwrap();
        let s = b.summary();
        assert_abs_diff_eq!(s.area, PI + 5.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s.perimeter, TAU + 4.0, epsilon = 1e-12);
    }

    #[test]
    fn zero_offset_is_base_summary() {
        let p = regular_ngon(7, 1.3);
        let s0 = p.summary();
        let s = p.offset(0.0).unwrap().summary();
        assert_abs_diff_eq!(s.area, s0.area, epsilon = 1e-15);
        assert_abs_diff_eq!(s.perimeter, s0.perimeter, epsilon = 1e-15);
        assert!(matches!(p.offset(-0.1), Err(Error::NegativeRadius(_))));
    }

    #[test]
    fn exterior_angles_sum_to_full_turn() {
        for n in [3usize, 5, 12, 64] {
            let b = regular_ngon(n, 2.0).offset(1.0).unwrap();
            let total: f64 = b.exterior_angles().iter().sum();
            assert_abs_diff_eq!(total, TAU, epsilon = 1e-12);
        }
    }

    #[test]
    fn polyline_inscribed_and_convergent() {
        let b = unit_square().offset(1.0).unwrap();

        let coarse = b.boundary_polyline(1).unwrap();
        let a1 = polyline_area(&coarse);
        assert!(a1 < PI + 5.0);

        let fine = b.boundary_polyline(512).unwrap();
        let a512 = polyline_area(&fine);
        assert!(a512 < PI + 5.0);
        assert_abs_diff_eq!(a512, PI + 5.0, epsilon = 1e-5);

        let trivial = b.base().offset(0.0).unwrap().boundary_polyline(4).unwrap();
        assert_eq!(trivial, b.base().vertices().to_vec());

        assert!(matches!(b.boundary_polyline(0), Err(Error::ZeroArcSteps)));
    }

    #[test]
    fn support_function_of_square() {
        let p = ConvexPolygon::from_coords(vec![[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]])
            .unwrap();
        for &theta in &[0.0, 0.3, PI / 2.0, 2.5, 4.1] {
            let expected = theta.cos().abs() + theta.sin().abs();
            assert_abs_diff_eq!(p.support(theta), expected, epsilon = 1e-14);
        }
    }
}
