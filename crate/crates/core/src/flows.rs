//! Straight-line flow, separatrices and cylinder decompositions.
//!
//! Decompositions work in a rotated frame `M = [[a, b], [-b, a]]` for the
//! direction `(a, b)`, which makes the flow horizontal. `M` is a similarity
//! with factor `|v|`, so lengths are exact Euclidean lengths when the
//! direction vector has unit length (horizontal, vertical and every
//! `(cos kπ/n, sin kπ/n)`) and are scaled by `|v|` otherwise. Heights ratios
//! and moduli do not depend on that scale.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};
use crate::geom::{ccw_angle_cmp, Mat2, Vec2};
use crate::surface::{Location, Surface, SurfacePoint};

/// A flow direction, up to positive scaling. The leading nonzero coordinate
/// is made positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Direction {
    v: Vec2,
}

impl Direction {
    pub fn new(v: Vec2) -> Result<Self> {
        if v.is_zero() {
            return Err(Error::InvalidParameter("zero direction".into()));
        }
        let flip = match v.x.sign() {
            0 => v.y.sign() < 0,
            s => s < 0,
        };
        Ok(Direction { v: if flip { v.neg() } else { v } })
    }

    pub fn horizontal(ctx: &FieldContext) -> Self {
        Direction { v: Vec2::new(ctx.one(), ctx.zero()) }
    }

    pub fn vertical(ctx: &FieldContext) -> Self {
        Direction { v: Vec2::new(ctx.zero(), ctx.one()) }
    }

    /// The line at angle `kπ/d`.
    pub fn at_angle(ctx: &FieldContext, k: i64, d: i64) -> Result<Self> {
        Direction::new(Vec2::new(ctx.cos(k, d)?, ctx.sin(k, d)?))
    }

    pub fn vector(&self) -> &Vec2 {
        &self.v
    }

    pub fn is_parallel(&self, o: &Direction) -> bool {
        self.v.cross(&o.v).is_zero()
    }

    /// Rotation-similarity taking this direction to the positive x-axis.
    pub fn frame(&self) -> Mat2 {
        let (a, b) = (&self.v.x, &self.v.y);
        Mat2::new(a.clone(), b.clone(), -b, a.clone())
    }
}

/// Outcome of flowing to the boundary of the current polygon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlowHit {
    /// Crossed the interior of an edge; `next` is the same point seen from
    /// the glued polygon.
    Edge { polygon: usize, edge: usize, t: FieldElement, exit: Vec2, next: (usize, Vec2) },
    /// Ran into a corner.
    Vertex { polygon: usize, corner: usize, class: usize, t: FieldElement, exit: Vec2 },
}

impl FlowHit {
    /// Flow time, in units of the direction vector.
    pub fn time(&self) -> &FieldElement {
        match self {
            FlowHit::Edge { t, .. } | FlowHit::Vertex { t, .. } => t,
        }
    }

    pub fn exit(&self) -> &Vec2 {
        match self {
            FlowHit::Edge { exit, .. } | FlowHit::Vertex { exit, .. } => exit,
        }
    }
}

/// True if `v` points from corner `i` of `polygon` into the polygon, i.e.
/// lies in the half-open sector from edge `i` to the reversed edge `i - 1`.
pub fn corner_admits(s: &Surface, polygon: usize, i: usize, v: &Vec2) -> bool {
    let p = s.polygon(polygon);
    let m = p.len();
    ccw_angle_cmp(p.edge(i), v, &p.edge(i + m - 1).neg()) == Ordering::Less
}

/// Corners of a vertex class out of which `v` starts a separatrix.
pub fn outgoing_corners(s: &Surface, class: usize, v: &Vec2) -> Vec<(usize, usize)> {
    s.vertex_classes()[class].corners.iter().copied().filter(|&(p, i)| corner_admits(s, p, i, v)).collect()
}

/// Flows from `pos` in the closed polygon `polygon` along `v` (which must
/// point into the polygon or along its boundary) to the first boundary hit.
pub fn flow_in(s: &Surface, polygon: usize, pos: &Vec2, v: &Vec2) -> Result<FlowHit> {
    if v.is_zero() {
        return Err(Error::InvalidParameter("zero direction".into()));
    }
    let p = s.polygon(polygon);
    let mut best: Option<FieldElement> = None;
    for i in 0..p.len() {
        let c = p.edge(i).cross(v);
        if c.sign() >= 0 {
            continue;
        }
        let f = p.edge(i).cross(&pos.sub(p.vertex(i)));
        let t = &f / &(-&c);
        if t.sign() <= 0 {
            return Err(Error::InvalidInput(format!("direction leaves polygon {polygon} immediately")));
        }
        best = Some(match best {
            Some(b) if b <= t => b,
            _ => t,
        });
    }
    let t = best.ok_or_else(|| Error::InvalidSurface("unbounded polygon".into()))?;
    let exit = pos.add(&v.scale(&t));
    match p.classify(&exit) {
        Location::Vertex(i) => {
            Ok(FlowHit::Vertex { polygon, corner: i, class: s.class_of_corner(polygon, i), t, exit })
        }
        Location::Edge(i) => {
            let (q, _) = s.gluing().partner((polygon, i));
            let next = (q, exit.add(&s.edge_translation((polygon, i))));
            Ok(FlowHit::Edge { polygon, edge: i, t, exit, next })
        }
        _ => Err(Error::InvalidSurface("exit point is not on the boundary".into())),
    }
}

/// The representative of `pt` from which `v` enters its polygon.
pub fn entering_representative(s: &Surface, pt: &SurfacePoint, v: &Vec2) -> Result<(usize, Vec2)> {
    if let Some(c) = pt.vertex {
        let &(p, i) = outgoing_corners(s, c, v)
            .first()
            .ok_or_else(|| Error::InvalidSurface("no outgoing corner".into()))?;
        return Ok((p, s.polygon(p).vertex(i).clone()));
    }
    for (p, pos) in s.representatives(pt) {
        match s.polygon(p).classify(&pos) {
            Location::Edge(i) if s.polygon(p).edge(i).cross(v).sign() < 0 => continue,
            _ => return Ok((p, pos)),
        }
    }
    Err(Error::InvalidInput("point has no representative facing the direction".into()))
}

/// First boundary hit of the ray from `pt` in direction `dir`. For a vertex
/// this follows the first outgoing separatrix in counterclockwise order.
pub fn flow(s: &Surface, pt: &SurfacePoint, dir: &Direction) -> Result<FlowHit> {
    let (p, pos) = entering_representative(s, pt, dir.vector())?;
    flow_in(s, p, &pos, dir.vector())
}

/// Moves `pt` by `t · v` along the surface. Fails if the path runs into a
/// vertex before its end.
pub fn advance(s: &Surface, pt: &SurfacePoint, v: &Vec2, t: &FieldElement) -> Result<SurfacePoint> {
    match t.sign() {
        0 => return Ok(pt.clone()),
        x if x < 0 => return advance(s, pt, &v.neg(), &-t),
        _ => {}
    }
    let (mut p, mut pos) = entering_representative(s, pt, v)?;
    let mut rem = t.clone();
    let cap = 1_000_000usize;
    for _ in 0..cap {
        let hit = flow_in(s, p, &pos, v)?;
        match hit.time().cmp(&rem) {
            Ordering::Greater => return s.locate(p, &pos.add(&v.scale(&rem))),
            Ordering::Equal => return s.locate(p, hit.exit()),
            Ordering::Less => {}
        }
        rem = &rem - hit.time();
        match hit {
            FlowHit::Edge { next, .. } => {
                p = next.0;
                pos = next.1;
            }
            FlowHit::Vertex { .. } => {
                return Err(Error::InvalidInput("flow runs into a vertex".into()));
            }
        }
    }
    Err(Error::InvalidInput("flow path too long".into()))
}

/// A straight segment between vertices, with no vertex in its interior.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaddleConnection {
    pub start: usize,
    pub end: usize,
    pub holonomy: Vec2,
    /// `(polygon, entry point, exit point)` for each piece.
    pub chain: Vec<(usize, Vec2, Vec2)>,
}

/// Follows the separatrix leaving corner `corner` in direction `v` until it
/// reaches a vertex, crossing at most `cap` edges.
pub fn trace_separatrix(s: &Surface, corner: (usize, usize), v: &Vec2, cap: usize) -> Result<SaddleConnection> {
    let (mut p, i) = corner;
    if !corner_admits(s, p, i, v) {
        return Err(Error::InvalidInput(format!("direction does not leave corner {corner:?}")));
    }
    let start = s.class_of_corner(p, i);
    let mut pos = s.polygon(p).vertex(i).clone();
    let mut chain = Vec::new();
    let mut holonomy = Vec2::zero(s.context());
    for _ in 0..=cap {
        let hit = flow_in(s, p, &pos, v)?;
        holonomy = holonomy.add(&hit.exit().sub(&pos));
        chain.push((p, pos.clone(), hit.exit().clone()));
        match hit {
            FlowHit::Vertex { class, .. } => return Ok(SaddleConnection { start, end: class, holonomy, chain }),
            FlowHit::Edge { next, .. } => {
                p = next.0;
                pos = next.1;
            }
        }
    }
    Err(Error::NotPeriodicDirection { cap })
}

/// Default crossing cap for separatrix tracing: `10 · edges · n`.
pub fn default_cap(s: &Surface) -> usize {
    10 * s.edge_count() * s.context().n() as usize
}

/// Every saddle connection in direction `dir` (each traced from its start).
pub fn saddle_connections(s: &Surface, dir: &Direction, cap: usize) -> Result<Vec<SaddleConnection>> {
    let v = dir.vector();
    let mut out = Vec::new();
    for c in s.vertex_classes() {
        for corner in outgoing_corners(s, c.id, v) {
            out.push(trace_separatrix(s, corner, v, cap)?);
        }
    }
    Ok(out)
}

/// Piece of a cylinder inside one polygon, between two consecutive critical
/// heights (frame coordinates).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strip {
    pub polygon: usize,
    pub y0: FieldElement,
    pub y1: FieldElement,
    pub left_edge: usize,
    pub right_edge: usize,
    /// Frame translation placing this strip in the developed cylinder.
    pub offset: Vec2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cylinder {
    pub id: usize,
    pub width: FieldElement,
    pub height: FieldElement,
    pub modulus: FieldElement,
    /// Strips in flow order; the bottom of strip 0 is the base leaf.
    pub strips: Vec<Strip>,
}

/// Position of a non-singular point in a cylinder.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CylCoord {
    pub cylinder: usize,
    /// Height above the base leaf, in `[0, height]`.
    pub h: FieldElement,
    /// Position along the leaf, in `[0, width)`.
    pub x: FieldElement,
}

/// Polygon edges in frame coordinates, with inverse slopes cached.
#[derive(Clone, Debug)]
struct FramePolygon {
    verts: Vec<Vec2>,
    edges: Vec<Vec2>,
    /// `dx/dy` for non-horizontal edges.
    inv_slope: Vec<Option<FieldElement>>,
}

impl FramePolygon {
    fn x_on_edge(&self, i: usize, y: &FieldElement) -> FieldElement {
        let k = self.inv_slope[i].as_ref().expect("edge is not horizontal");
        &self.verts[i].x + &(&(y - &self.verts[i].y) * k)
    }


    /// The non-horizontal edge going up (`up`) or down whose height span
    /// covers `[y0, y1]`.
    fn side_edge(&self, y0: &FieldElement, y1: &FieldElement, up: bool) -> usize {
        let m = self.verts.len();
        (0..m)
            .find(|&i| {
                let s = self.edges[i].y.sign();
                if s == 0 || (s > 0) != up {
                    return false;
                }
                let (a, b) = (&self.verts[i].y, &self.verts[(i + 1) % m].y);
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                lo <= y0 && y1 <= hi
            })
            .expect("convex polygon has a side edge at every height")
    }
}

/// Maximal-cylinder decomposition in a periodic direction.
///
/// Every polygon vertex acts as a cone point, so on surfaces with marked
/// points (angle `2π` vertices) cylinders are cut along their leaves too.
#[derive(Clone, Debug)]
pub struct CylinderDecomposition {
    direction: Direction,
    frame: Mat2,
    frame_inv: Mat2,
    cylinders: Vec<Cylinder>,
    frame_polys: Vec<FramePolygon>,
    /// Per polygon: `(y0, y1, cylinder, strip)` sorted by `y0`.
    slabs: Vec<Vec<(FieldElement, FieldElement, usize, usize)>>,
}

/// Decomposes `s` into cylinders in direction `dir`, certifying the
/// direction by tracing every separatrix with the default cap.
pub fn cylinder_decomposition(s: &Surface, dir: &Direction) -> Result<CylinderDecomposition> {
    cylinder_decomposition_with_cap(s, dir, default_cap(s))
}

pub fn cylinder_decomposition_with_cap(s: &Surface, dir: &Direction, cap: usize) -> Result<CylinderDecomposition> {
    let frame = dir.frame();
    let frame_inv = frame.inverse().expect("frame of a nonzero direction is invertible");
    let frame_polys: Vec<FramePolygon> = s
        .polygons()
        .iter()
        .map(|p| {
            let verts: Vec<Vec2> = p.vertices().iter().map(|v| frame.apply(v)).collect();
            let edges: Vec<Vec2> = p.edges().iter().map(|e| frame.apply(e)).collect();
            let inv_slope = edges.iter().map(|e| e.y.inverse().map(|iy| &e.x * &iy)).collect();
            FramePolygon { verts, edges, inv_slope }
        })
        .collect();

    // critical heights: polygon vertices plus every saddle connection piece
    let mut heights: Vec<Vec<FieldElement>> =
        frame_polys.iter().map(|fp| fp.verts.iter().map(|v| v.y.clone()).collect()).collect();
    for sc in saddle_connections(s, dir, cap)? {
        for (p, a, _) in &sc.chain {
            heights[*p].push(frame.apply(a).y);
        }
    }
    let mut slab_index: HashMap<(usize, FieldElement), usize> = HashMap::new();
    let mut slab_list: Vec<(usize, FieldElement, FieldElement)> = Vec::new();
    for (p, hs) in heights.iter_mut().enumerate() {
        hs.sort();
        hs.dedup();
        for w in hs.windows(2) {
            slab_index.insert((p, w[0].clone()), slab_list.len());
            slab_list.push((p, w[0].clone(), w[1].clone()));
        }
    }

    let mut slabs: Vec<Vec<(FieldElement, FieldElement, usize, usize)>> = vec![Vec::new(); frame_polys.len()];
    let mut visited = vec![false; slab_list.len()];
    let mut cylinders = Vec::new();
    for start in 0..slab_list.len() {
        if visited[start] {
            continue;
        }
        let cid = cylinders.len();
        let mut strips = Vec::new();
        let mut offset = Vec2::zero(s.context());
        let mut cur = start;
        loop {
            visited[cur] = true;
            let (p, y0, y1) = slab_list[cur].clone();
            let fp = &frame_polys[p];
            let right = fp.side_edge(&y0, &y1, true);
            let left = fp.side_edge(&y0, &y1, false);
            slabs[p].push((y0.clone(), y1.clone(), cid, strips.len()));
            strips.push(Strip { polygon: p, y0: y0.clone(), y1: y1.clone(), left_edge: left, right_edge: right, offset: offset.clone() });
            let t = frame.apply(&s.edge_translation((p, right)));
            let (q, _) = s.gluing().partner((p, right));
            offset = offset.sub(&t);
            let next = *slab_index
                .get(&(q, &y0 + &t.y))
                .ok_or_else(|| Error::InvalidSurface("strip has no neighbour across its right edge".into()))?;
            if next == start {
                break;
            }
            if visited[next] {
                return Err(Error::InvalidSurface("strips do not close into a cycle".into()));
            }
            cur = next;
        }
        if !offset.y.is_zero() || offset.x.sign() <= 0 {
            return Err(Error::InvalidSurface("cylinder holonomy is not along the direction".into()));
        }
        let height = &strips[0].y1 - &strips[0].y0;
        let width = offset.x;
        let modulus = &width / &height;
        cylinders.push(Cylinder { id: cid, width, height, modulus, strips });
    }
    for row in slabs.iter_mut() {
        row.sort_by(|a, b| a.0.cmp(&b.0));
    }
    Ok(CylinderDecomposition { direction: dir.clone(), frame, frame_inv, cylinders, frame_polys, slabs })
}

impl CylinderDecomposition {
    pub fn direction(&self) -> &Direction {
        &self.direction
    }

    pub fn cylinders(&self) -> &[Cylinder] {
        &self.cylinders
    }

    pub fn cylinder(&self, id: usize) -> &Cylinder {
        &self.cylinders[id]
    }

    /// Frame matrix; see the module documentation.
    pub fn frame(&self) -> &Mat2 {
        &self.frame
    }

    pub fn to_frame(&self, v: &Vec2) -> Vec2 {
        self.frame.apply(v)
    }

    pub fn from_frame(&self, v: &Vec2) -> Vec2 {
        self.frame_inv.apply(v)
    }

    /// Σ width · height over all cylinders (frame units).
    pub fn total_area(&self) -> FieldElement {
        let ctx = self.frame.context();
        self.cylinders.iter().fold(ctx.zero(), |a, c| &a + &(&c.width * &c.height))
    }

    /// True iff every pair of moduli has a rational ratio.
    pub fn moduli_commensurate(&self) -> bool {
        let m0 = &self.cylinders[0].modulus;
        self.cylinders.iter().all(|c| c.modulus.is_rational_multiple_of(m0))
    }

    /// Frame endpoints of the chord of `strip` at frame height `y`.
    fn chord(&self, strip: &Strip, y: &FieldElement) -> (FieldElement, FieldElement) {
        let fp = &self.frame_polys[strip.polygon];
        (fp.x_on_edge(strip.left_edge, y), fp.x_on_edge(strip.right_edge, y))
    }

    /// Area of a strip in frame units.
    pub fn strip_area(&self, strip: &Strip) -> FieldElement {
        let (a0, b0) = self.chord(strip, &strip.y0);
        let (a1, b1) = self.chord(strip, &strip.y1);
        let half = self.frame.context().frac(1, 2);
        &(&(&(&b0 - &a0) + &(&b1 - &a1)) * &half) * &(&strip.y1 - &strip.y0)
    }

    fn coords_in_slab(&self, cid: usize, sid: usize, fpos: &Vec2) -> CylCoord {
        let cyl = &self.cylinders[cid];
        let st = &cyl.strips[sid];
        let h = &fpos.y - &st.y0;
        let base = &cyl.strips[0];
        let y_base = &base.y0 + &h;
        let x0 = self.frame_polys[base.polygon].x_on_edge(base.left_edge, &y_base);
        let mut x = &(&fpos.x + &st.offset.x) - &x0;
        if x.sign() < 0 || x >= cyl.width {
            let k = (&x / &cyl.width).floor();
            x = &x - &(&cyl.width * &self.frame.context().rational(k.into()));
        }
        CylCoord { cylinder: cid, h, x }
    }

    /// All cylinder coordinates of a non-vertex point; two entries when it
    /// lies on a leaf between cylinders (or between two strips of one).
    pub fn coords_all(&self, s: &Surface, pt: &SurfacePoint) -> Result<Vec<CylCoord>> {
        if pt.vertex.is_some() {
            return Err(Error::UndefinedCoordinates);
        }
        let mut out: Vec<CylCoord> = Vec::new();
        for (p, pos) in s.representatives(pt) {
            let f = self.frame.apply(&pos);
            for (y0, y1, cid, sid) in &self.slabs[p] {
                if *y0 <= f.y && f.y <= *y1 {
                    let c = self.coords_in_slab(*cid, *sid, &f);
                    if !out.contains(&c) {
                        out.push(c);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Cylinder coordinates of a non-vertex point. Points on a boundary
    /// leaf report the cylinder lying above it (`h = 0`) when there is one.
    pub fn coords(&self, s: &Surface, pt: &SurfacePoint) -> Result<CylCoord> {
        let all = self.coords_all(s, pt)?;
        all.iter()
            .find(|c| c.h.is_zero())
            .or_else(|| all.first())
            .cloned()
            .ok_or_else(|| Error::InvalidSurface("point not covered by any strip".into()))
    }

    /// The point with coordinates `(x, h)` in cylinder `cid`; `x` is taken
    /// modulo the width.
    pub fn point_at(&self, s: &Surface, cid: usize, x: &FieldElement, h: &FieldElement) -> Result<SurfacePoint> {
        let cyl = &self.cylinders[cid];
        if h.sign() < 0 || *h > cyl.height {
            return Err(Error::InvalidInput("height outside the cylinder".into()));
        }
        let mut x = x.clone();
        if x.sign() < 0 || x >= cyl.width {
            let k = (&x / &cyl.width).floor();
            x = &x - &(&cyl.width * &self.frame.context().rational(k.into()));
        }
        let base = &cyl.strips[0];
        let x0 = self.frame_polys[base.polygon].x_on_edge(base.left_edge, &(&base.y0 + h));
        let target = &x + &x0;
        for st in &cyl.strips {
            let y = &st.y0 + h;
            let (a, b) = self.chord(st, &y);
            let (a, b) = (&a + &st.offset.x, &b + &st.offset.x);
            if a <= target && target <= b {
                let f = Vec2::new(&target - &st.offset.x, y);
                return s.locate(st.polygon, &self.frame_inv.apply(&f));
            }
        }
        Err(Error::InvalidSurface("developed strips do not cover the leaf".into()))
    }

    /// The closed leaf at height `h` of cylinder `cid` as
    /// `(polygon, start, end)` segments in surface coordinates, in flow
    /// order. Degenerate (single point) pieces are dropped.
    pub fn leaf_segments(&self, cid: usize, h: &FieldElement) -> Vec<(usize, Vec2, Vec2)> {
        let cyl = &self.cylinders[cid];
        let mut out = Vec::new();
        for st in &cyl.strips {
            let y = &st.y0 + h;
            let (a, b) = self.chord(st, &y);
            if a == b {
                continue;
            }
            let pa = self.frame_inv.apply(&Vec2::new(a, y.clone()));
            let pb = self.frame_inv.apply(&Vec2::new(b, y));
            out.push((st.polygon, pa, pb));
        }
        out
    }

    /// Frame chord of each strip of `cid` at height `h`, as
    /// `(strip index, left x, right x)` in developed coordinates.
    pub fn developed_chords(&self, cid: usize, h: &FieldElement) -> Vec<(usize, FieldElement, FieldElement)> {
        let cyl = &self.cylinders[cid];
        cyl.strips
            .iter()
            .enumerate()
            .map(|(k, st)| {
                let (a, b) = self.chord(st, &(&st.y0 + h));
                (k, &a + &st.offset.x, &b + &st.offset.x)
            })
            .collect()
    }
}
