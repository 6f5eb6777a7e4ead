//! Translation surfaces as convex polygons glued edge to edge by translations,
//! and the builder for the Ward surfaces `Y(3,n)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};
use crate::geom::{ccw_angle_cmp, Vec2};

/// `(polygon id, edge index)`
pub type EdgeRef = (usize, usize);

/// Convex, positively oriented polygon given by its counterclockwise edge
/// vectors and the position of vertex 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygon {
    id: usize,
    anchor: Vec2,
    edges: Vec<Vec2>,
    vertices: Vec<Vec2>,
}

impl Polygon {
    pub fn new(id: usize, anchor: Vec2, edges: Vec<Vec2>) -> Result<Self> {
        let bad = |m: &str| Err(Error::InvalidSurface(format!("polygon {id}: {m}")));
        if edges.len() < 3 {
            return bad("fewer than three edges");
        }
        if edges.iter().any(Vec2::is_zero) {
            return bad("zero-length edge");
        }
        let ctx = anchor.x.context().clone();
        let sum = edges.iter().fold(Vec2::zero(&ctx), |acc, e| acc.add(e));
        if !sum.is_zero() {
            return bad("edge vectors do not close up");
        }
        let m = edges.len();
        let reference = Vec2::new(ctx.one(), ctx.zero());
        let mut turns = 0;
        for i in 0..m {
            let (prev, cur) = (&edges[(i + m - 1) % m], &edges[i]);
            if prev.cross(cur).sign() < 0 {
                return bad("not convex or not counterclockwise");
            }
            // count how often the tangent direction sweeps past `reference`
            if ccw_angle_cmp(prev, &reference, cur) == Ordering::Less {
                turns += 1;
            }
        }
        if turns != 1 {
            return bad("edge directions do not turn exactly once");
        }
        let mut vertices = Vec::with_capacity(m);
        let mut cur = anchor.clone();
        for e in &edges {
            vertices.push(cur.clone());
            cur = cur.add(e);
        }
        Ok(Polygon { id, anchor, edges, vertices })
    }

    pub fn id(&self) -> usize {
        self.id
    }

    pub fn anchor(&self) -> &Vec2 {
        &self.anchor
    }

    pub fn edges(&self) -> &[Vec2] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Edge `i` (indices taken modulo the edge count).
    pub fn edge(&self, i: usize) -> &Vec2 {
        &self.edges[i % self.edges.len()]
    }

    /// Vertex `i`, the start of edge `i`.
    pub fn vertex(&self, i: usize) -> &Vec2 {
        &self.vertices[i % self.vertices.len()]
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    /// Vertex average; the exact center for regular polygons.
    pub fn centroid(&self) -> Vec2 {
        let ctx = self.anchor.x.context();
        let sum = self.vertices.iter().fold(Vec2::zero(ctx), |a, v| a.add(v));
        sum.scale(&ctx.frac(1, self.len() as i64))
    }

    pub fn area(&self) -> FieldElement {
        let ctx = self.anchor.x.context();
        let mut acc = ctx.zero();
        for i in 0..self.len() {
            acc = &acc + &self.vertex(i).cross(self.vertex(i + 1));
        }
        &acc * &ctx.frac(1, 2)
    }

    /// Exact position of `p` relative to the closed polygon.
    pub fn classify(&self, p: &Vec2) -> Location {
        let m = self.len();
        let mut on = Vec::new();
        for i in 0..m {
            let s = self.edges[i].cross(&p.sub(&self.vertices[i])).sign();
            if s < 0 {
                return Location::Outside;
            }
            if s == 0 {
                on.push(i);
            }
        }
        match on.as_slice() {
            [] => Location::Interior,
            [i] => Location::Edge(*i),
            [a, b] => {
                // two supporting lines meet only at the shared vertex
                if (a + 1) % m == *b {
                    Location::Vertex(*b)
                } else {
                    Location::Vertex(*a)
                }
            }
            _ => {
                // collinear consecutive edges: the point is one of the vertices
                match self.vertices.iter().position(|v| v == p) {
                    Some(i) => Location::Vertex(i),
                    None => Location::Edge(on[0]),
                }
            }
        }
    }

    pub fn contains(&self, p: &Vec2) -> bool {
        self.classify(p) != Location::Outside
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Interior,
    /// Relative interior of edge `i`.
    Edge(usize),
    Vertex(usize),
    Outside,
}

/// Edge pairing, stored as the partner of every edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gluing {
    partner: Vec<Vec<EdgeRef>>,
}

impl Gluing {
    pub fn partner(&self, e: EdgeRef) -> EdgeRef {
        self.partner[e.0][e.1]
    }

    /// Each unordered pair once, smaller representative first.
    pub fn pairs(&self) -> Vec<(EdgeRef, EdgeRef)> {
        let mut out = Vec::new();
        for (p, row) in self.partner.iter().enumerate() {
            for (i, &q) in row.iter().enumerate() {
                if (p, i) < q {
                    out.push(((p, i), q));
                }
            }
        }
        out
    }
}

/// An identification class of polygon corners.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexClass {
    pub id: usize,
    /// Corners `(polygon, vertex index)` in counterclockwise order around
    /// the point, starting at the smallest.
    pub corners: Vec<EdgeRef>,
    /// Cone angle divided by `2π`.
    pub angle_multiple: u32,
}

impl VertexClass {
    pub fn is_singular(&self) -> bool {
        self.angle_multiple > 1
    }

    /// Order of the zero of the differential at this point.
    pub fn zero_order(&self) -> u32 {
        self.angle_multiple - 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// All sides of length 1.
    UnitSides,
    /// Hooper's side lengths `sin(π/3)`; needs conductor `lcm(4n, 12)`.
    Hooper,
}

/// Construction data of a Ward surface. Polygon 0 is the `2n`-gon, polygon 1
/// the `n`-gon glued to its odd edges and polygon 2 the one glued to its
/// even edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WardInfo {
    pub n: u32,
    pub normalization: Normalization,
    /// Edge of the `2n`-gon along which polygons 1 and 2 were placed.
    pub attach: [usize; 2],
}

/// Closed translation surface. Immutable once built.
#[derive(Clone, Debug)]
pub struct Surface {
    ctx: FieldContext,
    polygons: Vec<Polygon>,
    gluing: Gluing,
    classes: Vec<VertexClass>,
    corner_class: Vec<Vec<usize>>,
    genus: u32,
    ward: Option<WardInfo>,
}

/// Canonical point of a surface.
///
/// Interior points are unique already. Edge points use the representative
/// with the smaller `(polygon, edge)`; vertices use the smallest corner of
/// their class and carry the class id.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SurfacePoint {
    pub polygon: usize,
    pub pos: Vec2,
    pub vertex: Option<usize>,
}

impl SurfacePoint {
    pub fn is_vertex(&self) -> bool {
        self.vertex.is_some()
    }

    /// Deterministic total order for sorting point sets.
    pub fn repr_cmp(&self, o: &SurfacePoint) -> Ordering {
        self.vertex
            .cmp(&o.vertex)
            .then(self.polygon.cmp(&o.polygon))
            .then_with(|| self.pos.repr_cmp(&o.pos))
    }
}

impl Surface {
    /// Validates the gluing and derives vertex classes and genus.
    pub fn new(
        ctx: FieldContext,
        polygons: Vec<Polygon>,
        pairs: &[(EdgeRef, EdgeRef)],
        ward: Option<WardInfo>,
    ) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidSurface(m));
        for (i, p) in polygons.iter().enumerate() {
            if p.id != i {
                return bad(format!("polygon at position {i} has id {}", p.id));
            }
            if *p.anchor.x.context() != ctx {
                return Err(Error::ContextMismatch);
            }
        }
        let mut partner: Vec<Vec<Option<EdgeRef>>> = polygons.iter().map(|p| vec![None; p.len()]).collect();
        for &(a, b) in pairs {
            for e in [a, b] {
                if e.0 >= polygons.len() || e.1 >= polygons[e.0].len() {
                    return bad(format!("edge {e:?} does not exist"));
                }
            }
            if a == b {
                return bad(format!("edge {a:?} glued to itself"));
            }
            if partner[a.0][a.1].is_some() || partner[b.0][b.1].is_some() {
                return bad(format!("edge in pair {a:?}-{b:?} glued twice"));
            }
            let (ea, eb) = (polygons[a.0].edge(a.1), polygons[b.0].edge(b.1));
            if !ea.add(eb).is_zero() {
                return bad(format!("edges {a:?} and {b:?} are not opposite"));
            }
            partner[a.0][a.1] = Some(b);
            partner[b.0][b.1] = Some(a);
        }
        let mut rows = Vec::with_capacity(partner.len());
        for (p, row) in partner.into_iter().enumerate() {
            let mut r = Vec::with_capacity(row.len());
            for (i, e) in row.into_iter().enumerate() {
                match e {
                    Some(e) => r.push(e),
                    None => return bad(format!("edge ({p}, {i}) is unglued")),
                }
            }
            rows.push(r);
        }
        let gluing = Gluing { partner: rows };
        if ward.is_some() {
            for ((p, i), (q, j)) in gluing.pairs() {
                if p == q {
                    return bad(format!("polygon {p} glues its own edges {i} and {j}"));
                }
            }
        }

        let reference = Vec2::new(ctx.one(), ctx.zero());
        let mut corner_class: Vec<Vec<usize>> = polygons.iter().map(|p| vec![usize::MAX; p.len()]).collect();
        let mut classes = Vec::new();
        for p in 0..polygons.len() {
            for i in 0..polygons[p].len() {
                if corner_class[p][i] != usize::MAX {
                    continue;
                }
                let id = classes.len();
                let mut corners = Vec::new();
                let mut turns = 0u32;
                let mut cur = (p, i);
                loop {
                    corner_class[cur.0][cur.1] = id;
                    corners.push(cur);
                    let poly = &polygons[cur.0];
                    let m = poly.len();
                    let out_dir = poly.edge(cur.1);
                    let in_rev = poly.edge(cur.1 + m - 1).neg();
                    // the corner sweeps the directions [out_dir, in_rev)
                    if ccw_angle_cmp(out_dir, &reference, &in_rev) == Ordering::Less {
                        turns += 1;
                    }
                    cur = gluing.partner((cur.0, (cur.1 + m - 1) % m));
                    if cur == (p, i) {
                        break;
                    }
                }
                if turns == 0 {
                    return bad(format!("vertex class {id} has zero cone angle"));
                }
                classes.push(VertexClass { id, corners, angle_multiple: turns });
            }
        }

        let v = classes.len() as i64;
        let e = gluing.pairs().len() as i64;
        let f = polygons.len() as i64;
        let chi = v - e + f;
        if chi > 2 || (2 - chi) % 2 != 0 {
            return bad(format!("Euler characteristic {chi} is not that of a closed orientable surface"));
        }
        let genus = ((2 - chi) / 2) as u32;
        let zeros: i64 = classes.iter().map(|c| c.zero_order() as i64).sum();
        if zeros != 2 * genus as i64 - 2 {
            return bad(format!("Gauss-Bonnet mismatch: zero orders sum to {zeros}, genus {genus}"));
        }
        Ok(Surface { ctx, polygons, gluing, classes, corner_class, genus, ward })
    }

    /// Unit square with opposite sides glued; a flat torus.
    pub fn square_torus(ctx: &FieldContext) -> Self {
        let v = |x: i64, y: i64| Vec2::new(ctx.int(x), ctx.int(y));
        let sq = Polygon::new(0, v(0, 0), vec![v(1, 0), v(0, 1), v(-1, 0), v(0, -1)]).expect("square");
        Surface::new(ctx.clone(), vec![sq], &[((0, 0), (0, 2)), ((0, 1), (0, 3))], None).expect("torus")
    }

    pub fn context(&self) -> &FieldContext {
        &self.ctx
    }

    pub fn polygons(&self) -> &[Polygon] {
        &self.polygons
    }

    pub fn polygon(&self, id: usize) -> &Polygon {
        &self.polygons[id]
    }

    pub fn gluing(&self) -> &Gluing {
        &self.gluing
    }

    pub fn ward(&self) -> Option<&WardInfo> {
        self.ward.as_ref()
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn edge_count(&self) -> usize {
        self.polygons.iter().map(Polygon::len).sum()
    }

    /// All vertex classes, including the non-singular ones.
    pub fn vertex_classes(&self) -> &[VertexClass] {
        &self.classes
    }

    /// Classes with cone angle greater than `2π`.
    pub fn singularities(&self) -> Vec<&VertexClass> {
        self.classes.iter().filter(|c| c.is_singular()).collect()
    }

    pub fn class_of_corner(&self, polygon: usize, vertex: usize) -> usize {
        let m = self.polygons[polygon].len();
        self.corner_class[polygon][vertex % m]
    }

    pub fn area(&self) -> FieldElement {
        self.polygons.iter().fold(self.ctx.zero(), |a, p| &a + &p.area())
    }

    /// Translation taking edge `e` onto its partner.
    pub fn edge_translation(&self, e: EdgeRef) -> Vec2 {
        let (q, j) = self.gluing.partner(e);
        self.polygons[q].vertex(j + 1).sub(self.polygons[e.0].vertex(e.1))
    }

    /// Canonical point for `pos` in the closed polygon `polygon`.
    pub fn locate(&self, polygon: usize, pos: &Vec2) -> Result<SurfacePoint> {
        let poly = self
            .polygons
            .get(polygon)
            .ok_or_else(|| Error::InvalidInput(format!("no polygon {polygon}")))?;
        match poly.classify(pos) {
            Location::Outside => Err(Error::OutsidePolygon { polygon }),
            Location::Interior => Ok(SurfacePoint { polygon, pos: pos.clone(), vertex: None }),
            Location::Vertex(i) => Ok(self.vertex_point(self.class_of_corner(polygon, i))),
            Location::Edge(i) => {
                let other = self.gluing.partner((polygon, i));
                if (polygon, i) <= other {
                    Ok(SurfacePoint { polygon, pos: pos.clone(), vertex: None })
                } else {
                    let t = self.edge_translation((polygon, i));
                    Ok(SurfacePoint { polygon: other.0, pos: pos.add(&t), vertex: None })
                }
            }
        }
    }

    /// Canonical point of a vertex class.
    pub fn vertex_point(&self, class: usize) -> SurfacePoint {
        let &(p, i) = self.classes[class].corners.iter().min().expect("nonempty class");
        SurfacePoint { polygon: p, pos: self.polygons[p].vertex(i).clone(), vertex: Some(class) }
    }

    /// Every `(polygon, position)` that represents `pt`.
    pub fn representatives(&self, pt: &SurfacePoint) -> Vec<(usize, Vec2)> {
        if let Some(c) = pt.vertex {
            return self.classes[c]
                .corners
                .iter()
                .map(|&(p, i)| (p, self.polygons[p].vertex(i).clone()))
                .collect();
        }
        let mut out = vec![(pt.polygon, pt.pos.clone())];
        if let Location::Edge(i) = self.polygons[pt.polygon].classify(&pt.pos) {
            let (q, _) = self.gluing.partner((pt.polygon, i));
            out.push((q, pt.pos.add(&self.edge_translation((pt.polygon, i)))));
        }
        out
    }

    /// Points that are polygon centroids, keyed by polygon id.
    pub fn polygon_centers(&self) -> Vec<SurfacePoint> {
        self.polygons
            .iter()
            .map(|p| self.locate(p.id, &p.centroid()).expect("centroid lies inside"))
            .collect()
    }
}

/// Ward surface `Y(3,n)` with unit side lengths.
pub fn build_ward(n: u32) -> Result<Surface> {
    build_ward_with(n, Normalization::UnitSides)
}

/// Ward surface `Y(3,n)`: a regular `2n`-gon centered at the origin with
/// two regular `n`-gons, one glued to its odd edges and one to its even
/// edges, each edge to the parallel opposite edge of the `n`-gon.
pub fn build_ward_with(n: u32, normalization: Normalization) -> Result<Surface> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("n must be at least 3, got {n}")));
    }
    let ctx = match normalization {
        Normalization::UnitSides => FieldContext::new(n)?,
        Normalization::Hooper => {
            let m = 4 * n;
            FieldContext::with_conductor(n, m.lcm(&12))?
        }
    };
    let side = match normalization {
        Normalization::UnitSides => ctx.one(),
        Normalization::Hooper => ctx.sin(1, 3)?,
    };
    let two_n = 2 * n as i64;
    let dir = |k: i64| -> Result<Vec2> {
        Ok(Vec2::new(&ctx.cos(k, n as i64)? * &side, &ctx.sin(k, n as i64)? * &side))
    };

    // the 2n-gon, bottom edge horizontal, centered at the origin
    let big_edges = (0..two_n).map(&dir).collect::<Result<Vec<_>>>()?;
    let cot = &ctx.cos(1, two_n)? / &ctx.sin(1, two_n)?;
    let half = ctx.frac(-1, 2);
    let big_anchor = Vec2::new(&half * &side, &(&half * &cot) * &side);
    let big = Polygon::new(0, big_anchor, big_edges)?;

    // n-gon p (1: odd edges, 2: even edges) has edge directions j0 + 2i
    let first_dir = |p: usize| -> i64 {
        let parity_of_glued = if p == 1 { 1 } else { 0 };
        (parity_of_glued + n as i64) % 2
    };
    let ngon_edge_of = |k: i64| -> (usize, usize) {
        let p = if k % 2 == 1 { 1 } else { 2 };
        let d = (k + n as i64) % two_n;
        (p, ((d - first_dir(p)) / 2) as usize)
    };

    let attach = if n % 2 == 1 {
        [1usize, n as usize + 1]
    } else {
        let right = n as usize / 2;
        let other = 3 * n as usize / 2 + 1;
        if right % 2 == 1 {
            [right, other]
        } else {
            [other, right]
        }
    };

    let mut polys = vec![big];
    for p in 1..=2usize {
        let j0 = first_dir(p);
        let edges = (0..n as i64).map(|i| dir(j0 + 2 * i)).collect::<Result<Vec<_>>>()?;
        let k = attach[p - 1];
        let (pp, e) = ngon_edge_of(k as i64);
        debug_assert_eq!(pp, p);
        // vertex e of the n-gon sits on vertex k+1 of the 2n-gon
        let mut anchor = polys[0].vertex(k + 1).clone();
        for edge in &edges[..e] {
            anchor = anchor.sub(edge);
        }
        polys.push(Polygon::new(p, anchor, edges)?);
    }

    let pairs: Vec<(EdgeRef, EdgeRef)> = (0..two_n).map(|k| ((0, k as usize), ngon_edge_of(k))).collect();
    let info = WardInfo { n, normalization, attach };
    Surface::new(ctx, polys, &pairs, Some(info))
}

/// Counts of singular classes keyed by cone angle multiple.
pub fn singularity_profile(s: &Surface) -> BTreeMap<u32, usize> {
    let mut m = BTreeMap::new();
    for c in s.singularities() {
        *m.entry(c.angle_multiple).or_insert(0) += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    fn ward(n: u32) -> Surface {
        build_ward(n).unwrap()
    }

    #[test]
    fn small_cases_match_known_genus() {
        let s = ward(4);
        assert_eq!(s.genus(), 3);
        assert_eq!(s.singularities().len(), 1);
        assert_eq!(s.singularities()[0].angle_multiple, 5);
        assert_eq!(s.singularities()[0].corners.len(), 16);
        assert_eq!(ward(5).genus(), 4);
        let s7 = ward(7);
        assert_eq!(s7.genus(), 6);
        assert_eq!(s7.singularities().len(), 1);
        assert_eq!(ward(9).singularities().len(), 3);
        assert_eq!(ward(3).genus(), 1);
        assert!(ward(3).singularities().is_empty());
    }

    #[test]
    fn rejects_small_n() {
        assert!(matches!(build_ward(2), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn torus_fixture() {
        let k = FieldContext::new(4).unwrap();
        let t = Surface::square_torus(&k);
        assert_eq!(t.genus(), 1);
        assert_eq!(t.vertex_classes().len(), 1);
        assert_eq!(t.vertex_classes()[0].angle_multiple, 1);
        assert!(t.singularities().is_empty());
    }

    /// Oracle: each corner of a regular m-gon has angle (m − 2)π/m; a
    /// class's corner angles must add up to 2π times its multiple.
    #[test]
    fn cone_angles_match_interior_angle_sums() {
        for n in 3..=12u32 {
            let s = ward(n);
            for c in s.vertex_classes() {
                let total: Ratio<i64> = c
                    .corners
                    .iter()
                    .map(|&(p, _)| {
                        let m = s.polygon(p).len() as i64;
                        Ratio::new(m - 2, m)
                    })
                    .sum();
                assert_eq!(total, Ratio::from_integer(2 * c.angle_multiple as i64), "n = {n}");
            }
            let zeros: u32 = s.vertex_classes().iter().map(VertexClass::zero_order).sum();
            assert_eq!(zeros, 2 * s.genus() - 2, "n = {n}");
        }
    }

    #[test]
    fn gluing_is_an_involution_with_unit_sides() {
        for n in 3..=12u32 {
            let s = ward(n);
            assert_eq!(s.polygons().len(), 3);
            assert_eq!(s.polygons()[0].len(), 2 * n as usize);
            for p in s.polygons() {
                for (i, e) in p.edges().iter().enumerate() {
                    assert!(e.norm_sq().is_one());
                    let q = s.gluing().partner((p.id(), i));
                    assert_ne!(q.0, p.id());
                    assert_eq!(s.gluing().partner(q), (p.id(), i));
                    assert!(e.add(s.polygon(q.0).edge(q.1)).is_zero());
                }
            }
            assert!(s.polygon(0).centroid().is_zero());
        }
    }

    #[test]
    fn even_n_has_vertical_sides() {
        for n in [4u32, 6, 8, 10] {
            let s = ward(n);
            let vertical = s.polygon(0).edges().iter().filter(|e| e.x.is_zero()).count();
            assert_eq!(vertical, 2);
        }
    }

    #[test]
    fn singularity_counts_for_odd_n() {
        for n in [5u32, 7, 9, 11, 13, 15] {
            let s = ward(n);
            let want = if n % 3 == 0 { 3 } else { 1 };
            assert_eq!(s.singularities().len(), want, "n = {n}");
            let g = (3 * n - n - 3 - n.gcd(&3)) / 2 + 1;
            assert_eq!(s.genus(), g, "n = {n}");
        }
    }

    #[test]
    fn hooper_normalization_is_consistent() {
        let s = build_ward_with(5, Normalization::Hooper).unwrap();
        assert_eq!(s.genus(), 4);
        let e = &s.polygon(0).edges()[0];
        assert_eq!(e.norm_sq(), s.context().frac(3, 4));
    }

    #[test]
    fn locate_canonicalizes_edges_and_vertices() {
        let s = ward(4);
        let k = s.context();
        let origin = Vec2::zero(k);
        let p = s.locate(0, &origin).unwrap();
        assert_eq!(p, SurfacePoint { polygon: 0, pos: origin.clone(), vertex: None });

        // midpoints of every glued edge pair agree after canonicalization
        for ((p, i), (q, j)) in s.gluing().pairs() {
            let pa = s.polygon(p);
            let mid = pa.vertex(i).add(pa.vertex(i + 1)).scale(&k.frac(1, 2));
            let qa = s.polygon(q);
            let mid2 = qa.vertex(j).add(qa.vertex(j + 1)).scale(&k.frac(1, 2));
            assert_eq!(s.locate(p, &mid).unwrap(), s.locate(q, &mid2).unwrap());
        }

        // every corner of the singular vertex resolves to one class
        let mut seen = std::collections::HashSet::new();
        for p in s.polygons() {
            for v in p.vertices() {
                seen.insert(s.locate(p.id(), v).unwrap());
            }
        }
        assert_eq!(seen.len(), 1);

        let far = Vec2::new(k.int(5), k.zero());
        assert_eq!(s.locate(0, &far), Err(Error::OutsidePolygon { polygon: 0 }));
    }

    #[test]
    fn areas_add_up() {
        let s = ward(4);
        // octagon: 2(1+√2), two unit squares
        let sqrt2 = &s.context().cos(1, 4).unwrap() * &s.context().int(2);
        let want = &(&s.context().int(2) * &(&s.context().one() + &sqrt2)) + &s.context().int(2);
        assert_eq!(s.area(), want);
    }
}
