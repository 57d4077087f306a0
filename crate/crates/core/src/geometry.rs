//! Fermat-Torricelli point of a triangle.
//!
//! The minimiser of `|pa| + |pb| + |pc|` is found three ways depending on the
//! shape of the triangle:
//!
//! * collinear vertices: the middle vertex,
//! * a vertex with an interior angle of at least 120 degrees: that vertex,
//! * otherwise: the interior point seen from every vertex pair under 120
//!   degrees, computed in closed form ([`fermat_point_analytic`]) or by
//!   Weiszfeld iteration ([`fermat_point_weiszfeld`]).
//!
//! [`fermat_point`] dispatches between the cases.

use core::f64::consts::PI;
use core::ops::{Add, Mul, Sub};

use libm::{atan2, hypot};

use crate::error::{Error, Result};

/// Angle at which a vertex becomes the minimiser (2π/3).
pub const VERTEX_OPTIMAL_ANGLE: f64 = 2.0 * PI / 3.0;

/// A triangle is collinear when its doubled area is at most this fraction of
/// the sum of its squared side lengths.
pub const DEGENERACY_RATIO: f64 = 1e-12;

pub const WEISZFELD_TOL: f64 = 1e-10;
pub const WEISZFELD_MAX_ITER: u32 = 1000;

const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// Residual of the first-order optimality condition (norm of the sum of unit
/// vectors towards the vertices) above which a closed-form result is rejected
/// in favour of iteration.
const STATIONARITY_TOL: f64 = 1e-6;

/// A point on the analysis plane: time coordinate `t`, observed value `v`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Point {
    pub t: f64,
    pub v: f64,
}

impl Point {
    pub const fn new(t: f64, v: f64) -> Self {
        Point { t, v }
    }

    /// Like [`Point::new`] but rejects NaN and infinite coordinates.
    pub fn try_new(t: f64, v: f64) -> Result<Self> {
        let p = Point { t, v };
        if p.is_finite() {
            Ok(p)
        } else {
            Err(Error::NonFinite { t, v })
        }
    }

    pub fn is_finite(&self) -> bool {
        self.t.is_finite() && self.v.is_finite()
    }

    pub fn distance(&self, other: &Point) -> f64 {
        hypot(self.t - other.t, self.v - other.v)
    }

    pub fn norm(&self) -> f64 {
        hypot(self.t, self.v)
    }

    pub fn dot(&self, other: &Point) -> f64 {
        self.t * other.t + self.v * other.v
    }

    pub fn cross(&self, other: &Point) -> f64 {
        self.t * other.v - self.v * other.t
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.t + rhs.t, self.v + rhs.v)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.t - rhs.t, self.v - rhs.v)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, rhs: f64) -> Point {
        Point::new(self.t * rhs, self.v * rhs)
    }
}

/// Three vertices. In smoothing `b` is the series point being replaced and
/// `a`, `c` are its neighbours.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Triangle {
    pub a: Point,
    pub b: Point,
    pub c: Point,
}

impl Triangle {
    pub const fn new(a: Point, b: Point, c: Point) -> Self {
        Triangle { a, b, c }
    }

    pub fn vertices(&self) -> [Point; 3] {
        [self.a, self.b, self.c]
    }

    pub fn vertex(&self, index: usize) -> Point {
        self.vertices()[index]
    }

    pub fn centroid(&self) -> Point {
        Point::new(
            (self.a.t + self.b.t + self.c.t) / 3.0,
            (self.a.v + self.b.v + self.c.v) / 3.0,
        )
    }

    /// Doubled signed area, positive for counter-clockwise vertex order.
    pub fn doubled_signed_area(&self) -> f64 {
        (self.b - self.a).cross(&(self.c - self.a))
    }

    pub fn squared_side_sum(&self) -> f64 {
        let [a, b, c] = self.vertices();
        let ab = b - a;
        let ac = c - a;
        let bc = c - b;
        ab.dot(&ab) + ac.dot(&ac) + bc.dot(&bc)
    }

    pub fn longest_side(&self) -> f64 {
        let [a, b, c] = self.vertices();
        a.distance(&b).max(a.distance(&c)).max(b.distance(&c))
    }

    pub fn is_collinear(&self) -> bool {
        self.doubled_signed_area().abs() <= DEGENERACY_RATIO * self.squared_side_sum()
    }

    /// First pair of coinciding vertices, if any.
    pub fn duplicate_vertices(&self) -> Option<(usize, usize)> {
        let v = self.vertices();
        [(0, 1), (0, 2), (1, 2)]
            .into_iter()
            .find(|&(i, j)| v[i] == v[j])
    }

    /// Interior angle at vertex `index`, in radians.
    pub fn angle_at(&self, index: usize) -> f64 {
        let v = self.vertices();
        let here = v[index];
        let u = v[(index + 1) % 3] - here;
        let w = v[(index + 2) % 3] - here;
        atan2(u.cross(&w).abs(), u.dot(&w))
    }

    /// Whether `p` lies inside the closed triangle, allowing `slack` (in
    /// barycentric units scaled by the doubled area).
    pub fn contains(&self, p: &Point, slack: f64) -> bool {
        let area = self.doubled_signed_area();
        if area == 0.0 {
            return false;
        }
        let [a, b, c] = self.vertices();
        let w0 = (b - *p).cross(&(c - *p)) / area;
        let w1 = (c - *p).cross(&(a - *p)) / area;
        let w2 = (a - *p).cross(&(b - *p)) / area;
        w0 >= -slack && w1 >= -slack && w2 >= -slack
    }
}

/// Sum of the distances from `p` to the three vertices.
pub fn objective(p: &Point, tri: &Triangle) -> f64 {
    p.distance(&tri.a) + p.distance(&tri.b) + p.distance(&tri.c)
}

/// Largest interior angle together with the vertex where it occurs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VertexAngle {
    pub angle: f64,
    pub vertex: usize,
}

/// Angles closer than this are treated as equal when picking the widest one.
const ANGLE_TIE: f64 = 1e-12;

/// Largest interior angle of a nondegenerate triangle. Ties go to the lowest
/// vertex index.
pub fn max_vertex_angle(tri: &Triangle) -> Result<VertexAngle> {
    if tri.duplicate_vertices().is_some() || tri.is_collinear() {
        return Err(Error::DegenerateTriangle);
    }
    let mut best = VertexAngle {
        angle: tri.angle_at(0),
        vertex: 0,
    };
    for vertex in 1..3 {
        let angle = tri.angle_at(vertex);
        if angle > best.angle + ANGLE_TIE {
            best = VertexAngle { angle, vertex };
        }
    }
    Ok(best)
}

/// Which branch of the problem produced a solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum SolutionCase {
    /// Strictly inside the triangle, 120 degrees to every vertex pair.
    Interior,
    /// The vertex with index 0, 1 or 2 (a, b, c) is the minimiser.
    VertexOptimal(usize),
    /// Vertices on a line; the middle one is the minimiser.
    Collinear,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FermatSolution {
    pub location: Point,
    pub case: SolutionCase,
    /// Objective value at `location`.
    pub total_distance: f64,
    /// Weiszfeld steps taken; 0 for closed-form and vertex solutions.
    pub iterations: u32,
}

impl FermatSolution {
    fn at(location: Point, case: SolutionCase, tri: &Triangle, iterations: u32) -> Self {
        FermatSolution {
            location,
            case,
            total_distance: objective(&location, tri),
            iterations,
        }
    }
}

/// Intermediate quantities of the closed-form solution.
///
/// With squared sides `r_ij`, doubled signed area `S` and
/// `d = (r12 + r13 + r23) / 2 + √3·|S|`, the interior point is
/// `(X, Y) / (2√3·d)` where
///
/// ```text
/// X = √3(x1·r23 + x2·r13 + x3·r12) + (x1 + x2 + x3)|S|
///     + 3·sign(S)·[(y2 − y1)(p1·p2) + (y1 − y3)(p1·p3) + (y3 − y2)(p2·p3)]
/// Y = √3(y1·r23 + y2·r13 + y3·r12) + (y1 + y2 + y3)|S|
///     + 3·sign(S)·[(x1 − x2)(p1·p2) + (x3 − x1)(p1·p3) + (x2 − x3)(p2·p3)]
/// ```
///
/// and `pi·pj` is the dot product of the vertex position vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormTerms {
    pub r12_sq: f64,
    pub r13_sq: f64,
    pub r23_sq: f64,
    /// Doubled signed area `S`.
    pub signed_area2: f64,
    pub d: f64,
    pub x_num: f64,
    pub y_num: f64,
}

impl ClosedFormTerms {
    pub fn new(tri: &Triangle) -> Self {
        let [p1, p2, p3] = tri.vertices();
        let (x1, y1, x2, y2, x3, y3) = (p1.t, p1.v, p2.t, p2.v, p3.t, p3.v);
        let sq = |p: Point, q: Point| {
            let d = p - q;
            d.dot(&d)
        };
        let r12_sq = sq(p1, p2);
        let r13_sq = sq(p1, p3);
        let r23_sq = sq(p2, p3);
        let s = x1 * y2 + x3 * y1 + x2 * y3 - x1 * y3 - x2 * y1 - x3 * y2;
        let abs_s = s.abs();
        let sign = if s > 0.0 {
            1.0
        } else if s < 0.0 {
            -1.0
        } else {
            0.0
        };
        let d = (r12_sq + r13_sq + r23_sq) / 2.0 + abs_s * SQRT_3;

        let d12 = p1.dot(&p2);
        let d13 = p1.dot(&p3);
        let d23 = p2.dot(&p3);
        let x_num = SQRT_3 * (x1 * r23_sq + x2 * r13_sq + x3 * r12_sq)
            + (x1 + x2 + x3) * abs_s
            + 3.0 * sign * ((y2 - y1) * d12 + (y1 - y3) * d13 + (y3 - y2) * d23);
        let y_num = SQRT_3 * (y1 * r23_sq + y2 * r13_sq + y3 * r12_sq)
            + (y1 + y2 + y3) * abs_s
            + 3.0 * sign * ((x1 - x2) * d12 + (x3 - x1) * d13 + (x2 - x3) * d23);

        ClosedFormTerms {
            r12_sq,
            r13_sq,
            r23_sq,
            signed_area2: s,
            d,
            x_num,
            y_num,
        }
    }

    pub fn location(&self) -> Point {
        let denom = 2.0 * self.d * SQRT_3;
        Point::new(self.x_num / denom, self.y_num / denom)
    }
}

/// Closed-form interior solution. Requires every angle below 120 degrees.
///
/// The formula is evaluated on coordinates relative to the centroid, which
/// keeps the cubic numerators small for series with large time stamps.
pub fn fermat_point_analytic(tri: &Triangle) -> Result<FermatSolution> {
    let widest = max_vertex_angle(tri)?;
    if widest.angle >= VERTEX_OPTIMAL_ANGLE {
        return Err(Error::PreconditionViolated {
            vertex: widest.vertex,
            angle: widest.angle,
        });
    }
    let origin = tri.centroid();
    let local = Triangle::new(tri.a - origin, tri.b - origin, tri.c - origin);
    let location = ClosedFormTerms::new(&local).location() + origin;
    Ok(FermatSolution::at(location, SolutionCase::Interior, tri, 0))
}

/// Norm of the sum of unit vectors from `p` towards the vertices; zero at an
/// interior minimiser.
pub fn stationarity_residual(p: &Point, tri: &Triangle) -> f64 {
    let mut sum = Point::default();
    for q in tri.vertices() {
        let d = q - *p;
        let n = d.norm();
        if n == 0.0 {
            return f64::INFINITY;
        }
        sum = sum + d * (1.0 / n);
    }
    sum.norm()
}

fn vertex_is_optimal(tri: &Triangle, index: usize) -> bool {
    tri.angle_at(index) >= VERTEX_OPTIMAL_ANGLE
}

/// Move off a non-optimal vertex along the resultant pull of the other two,
/// halving the step until the objective drops.
fn escape_vertex(tri: &Triangle, index: usize) -> Point {
    let v = tri.vertices();
    let here = v[index];
    let mut pull = Point::default();
    let mut shortest = f64::INFINITY;
    for (j, q) in v.iter().enumerate() {
        if j == index {
            continue;
        }
        let d = *q - here;
        let n = d.norm();
        shortest = shortest.min(n);
        pull = pull + d * (1.0 / n);
    }
    let dir = pull * (1.0 / pull.norm());
    let base = objective(&here, tri);
    let mut step = 0.5 * shortest;
    for _ in 0..60 {
        let candidate = here + dir * step;
        if objective(&candidate, tri) < base {
            return candidate;
        }
        step *= 0.5;
    }
    here + dir * step
}

/// Gradient of the objective at a point that is not a vertex.
fn gradient(y: &Point, vertices: &[Point; 3]) -> Point {
    vertices.iter().fold(Point::default(), |acc, p| {
        let d = *y - *p;
        acc + d * (1.0 / d.norm())
    })
}

/// Newton step `y − H⁻¹g` with `H = Σ (I − u uᵀ) / |y − p|`; `None` when the
/// Hessian is singular.
fn newton_step(y: &Point, vertices: &[Point; 3]) -> Option<Point> {
    let (mut h11, mut h12, mut h22) = (0.0, 0.0, 0.0);
    let mut g = Point::default();
    for p in vertices {
        let d = *y - *p;
        let n = d.norm();
        let u = d * (1.0 / n);
        g = g + u;
        h11 += (1.0 - u.t * u.t) / n;
        h12 -= u.t * u.v / n;
        h22 += (1.0 - u.v * u.v) / n;
    }
    let det = h11 * h22 - h12 * h12;
    if !(det > 0.0) || !det.is_finite() {
        return None;
    }
    let dt = (h22 * g.t - h12 * g.v) / det;
    let dv = (h11 * g.v - h12 * g.t) / det;
    Some(Point::new(y.t - dt, y.v - dv))
}

/// Weiszfeld iteration started at the centroid.
///
/// `tol` bounds the step length and the vertex landing radius, both measured
/// relative to `max(1, longest side)`. An iterate that lands on a vertex is
/// classified by the 120 degree test: an optimal vertex is returned as such,
/// otherwise the iterate is pushed off the vertex and iteration continues.
///
/// Plain Weiszfeld contracts very slowly when the minimiser sits close to a
/// vertex (an angle just under 120 degrees), so each step also tries a Newton
/// step and keeps it when it shrinks the gradient more than the Weiszfeld
/// update does.
pub fn fermat_point_weiszfeld(tri: &Triangle, tol: f64, max_iter: u32) -> Result<FermatSolution> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter("tol must be positive"));
    }
    if max_iter == 0 {
        return Err(Error::InvalidParameter("max_iter must be at least 1"));
    }
    if tri.duplicate_vertices().is_some() || tri.is_collinear() {
        return Err(Error::DegenerateTriangle);
    }
    let scale = tri.longest_side().max(1.0);
    let eps = tol * scale;
    let vertices = tri.vertices();
    let off_vertices = |q: &Point| q.is_finite() && vertices.iter().all(|p| p.distance(q) > eps);

    let mut y = tri.centroid();
    let mut last_step = f64::INFINITY;
    for iter in 1..=max_iter {
        if let Some(i) = vertices.iter().position(|p| p.distance(&y) <= eps) {
            if vertex_is_optimal(tri, i) {
                return Ok(FermatSolution::at(
                    vertices[i],
                    SolutionCase::VertexOptimal(i),
                    tri,
                    iter - 1,
                ));
            }
            y = escape_vertex(tri, i);
        }

        let mut num = Point::default();
        let mut den = 0.0;
        for p in &vertices {
            let w = 1.0 / p.distance(&y);
            num = num + *p * w;
            den += w;
        }
        let mut next = num * (1.0 / den);
        if off_vertices(&next) {
            if let Some(full) = newton_step(&y, &vertices) {
                // Backtrack towards y so the step cannot jump across a vertex.
                let target = gradient(&next, &vertices).norm();
                let mut lambda = 1.0;
                for _ in 0..30 {
                    let candidate = y + (full - y) * lambda;
                    if off_vertices(&candidate)
                        && gradient(&candidate, &vertices).norm() < target
                    {
                        next = candidate;
                        break;
                    }
                    lambda *= 0.5;
                }
            }
        }
        last_step = next.distance(&y);
        y = next;

        if last_step <= eps {
            // A slowly converging approach to an optimal vertex stalls just
            // short of it; snap to the vertex when the 120 degree test says so.
            if let Some(i) = (0..3).find(|&i| vertex_is_optimal(tri, i)) {
                return Ok(FermatSolution::at(
                    vertices[i],
                    SolutionCase::VertexOptimal(i),
                    tri,
                    iter,
                ));
            }
            return Ok(FermatSolution::at(y, SolutionCase::Interior, tri, iter));
        }
    }
    Err(Error::NoConvergence {
        iterations: max_iter,
        last_step,
    })
}

/// Index of the vertex lying between the other two on a line.
fn middle_vertex(tri: &Triangle) -> usize {
    let v = tri.vertices();
    let mut best = 0;
    let mut best_sum = f64::INFINITY;
    for (i, p) in v.iter().enumerate() {
        let sum = objective(p, tri);
        if sum < best_sum {
            best = i;
            best_sum = sum;
        }
    }
    best
}

/// Minimiser of the distance sum for any triangle with distinct vertices.
pub fn fermat_point(tri: &Triangle) -> Result<FermatSolution> {
    if let Some((first, second)) = tri.duplicate_vertices() {
        return Err(Error::DuplicateVertices { first, second });
    }
    if tri.is_collinear() {
        let i = middle_vertex(tri);
        return Ok(FermatSolution::at(tri.vertex(i), SolutionCase::Collinear, tri, 0));
    }
    let widest = max_vertex_angle(tri)?;
    if widest.angle >= VERTEX_OPTIMAL_ANGLE {
        let i = widest.vertex;
        return Ok(FermatSolution::at(
            tri.vertex(i),
            SolutionCase::VertexOptimal(i),
            tri,
            0,
        ));
    }
    let closed = fermat_point_analytic(tri)?;
    if stationarity_residual(&closed.location, tri) <= STATIONARITY_TOL {
        return Ok(closed);
    }
    fermat_point_weiszfeld(tri, WEISZFELD_TOL, WEISZFELD_MAX_ITER)
}
