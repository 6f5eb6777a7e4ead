//! Periodic-point search on Ward surfaces.
//!
//! Candidates are the intersection points of rational-height leaves of two
//! transverse decompositions. Each candidate is either eliminated by an
//! irrational height ratio (a sound certificate of an infinite orbit) or
//! certified periodic by closing its orbit under `φ^±1, ψ^±1`. Completeness
//! holds only up to the chosen denominator bound.

use std::collections::{HashMap, HashSet};
use std::time::{Duration, Instant};

use num_integer::Integer;
use rayon::prelude::*;

use crate::affine::{irrational_height, Letter, OrbitVerdict, WardAction, Witness, Word};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::flows::{cylinder_decomposition, CylinderDecomposition, Direction};
use crate::geom::{Mat2, Vec2};
use crate::surface::{Surface, SurfacePoint};

/// Outcome of the rational height test over a list of decompositions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Pass,
    /// Irrational `ratio` of height in `cylinder` of decomposition `decomposition`.
    Fail { decomposition: usize, cylinder: usize, ratio: FieldElement },
}

/// Checks that `p` sits at a rational fraction of the height of its
/// cylinder in every decomposition. Points on boundary leaves pass.
pub fn rational_height_certificate(s: &Surface, p: &SurfacePoint, decomps: &[&CylinderDecomposition]) -> Result<Certificate> {
    if p.vertex.is_some() {
        return Err(Error::UndefinedCoordinates);
    }
    for (i, d) in decomps.iter().enumerate() {
        if let Some((cylinder, ratio)) = irrational_height(s, d, p)? {
            return Ok(Certificate::Fail { decomposition: i, cylinder, ratio });
        }
    }
    Ok(Certificate::Pass)
}

/// Reduced fractions `a/d` with `0 <= a <= d <= bound`, ascending.
pub fn fractions(bound: u32) -> Vec<(i64, i64)> {
    let mut out = vec![(0, 1), (1, 1)];
    for d in 2..=bound as i64 {
        for a in 1..d {
            if a.gcd(&d) == 1 {
                out.push((a, d));
            }
        }
    }
    out.sort_by(|x, y| (x.0 * y.1).cmp(&(y.0 * x.1)));
    out
}

/// Rational points of two transverse decompositions up to a denominator
/// bound, plus every polygon center and vertex.
#[derive(Clone, Debug)]
pub struct CandidateGrid {
    pub denominator_bound: u32,
    pub first: CylinderDecomposition,
    pub second: CylinderDecomposition,
    pub points: Vec<SurfacePoint>,
}

/// One leaf piece in frame coordinates: the line `y = c` for `x` in `[x0, x1]`.
struct FrameChord {
    polygon: usize,
    c: FieldElement,
    x0: FieldElement,
    x1: FieldElement,
    approx: (f64, f64, f64),
}

fn frame_chords(d: &CylinderDecomposition, bound: u32) -> Vec<FrameChord> {
    let fr = fractions(bound);
    let ctx = d.frame().context().clone();
    let mut out = Vec::new();
    for cyl in d.cylinders() {
        for &(a, b) in &fr {
            let h = &cyl.height * &ctx.frac(a, b);
            for (p, s, e) in d.leaf_segments(cyl.id, &h) {
                let (fs, fe) = (d.to_frame(&s), d.to_frame(&e));
                let approx = (fs.y.to_f64(), fs.x.to_f64(), fe.x.to_f64());
                out.push(FrameChord { polygon: p, c: fs.y, x0: fs.x, x1: fe.x, approx });
            }
        }
    }
    out
}

const SLACK: f64 = 1e-9;

/// Builds the candidate grid from the horizontal decomposition and the one
/// in direction `π/n`.
pub fn enumerate_candidates(s: &Surface, bound: u32) -> Result<CandidateGrid> {
    let ctx = s.context();
    let first = cylinder_decomposition(s, &Direction::horizontal(ctx))?;
    let second = cylinder_decomposition(s, &Direction::at_angle(ctx, 1, ctx.n() as i64)?)?;
    enumerate_candidates_with(s, bound, first, second)
}

/// Candidate grid for an arbitrary transverse pair of decompositions.
pub fn enumerate_candidates_with(
    s: &Surface,
    bound: u32,
    first: CylinderDecomposition,
    second: CylinderDecomposition,
) -> Result<CandidateGrid> {
    if bound < 1 {
        return Err(Error::InvalidParameter("denominator bound must be at least 1".into()));
    }
    if first.direction().is_parallel(second.direction()) {
        return Err(Error::InvalidParameter("decompositions must be transverse".into()));
    }
    let (m1, m2) = (first.frame().clone(), second.frame().clone());
    // rows: the height functionals of both frames
    let rows = Mat2::new(m1.c.clone(), m1.d.clone(), m2.c.clone(), m2.d.clone());
    let solve = rows.inverse().expect("transverse directions");
    let solve_f = [solve.a.to_f64(), solve.b.to_f64(), solve.c.to_f64(), solve.d.to_f64()];
    let m1f = [m1.a.to_f64(), m1.b.to_f64()];
    let m2f = [m2.a.to_f64(), m2.b.to_f64()];

    let a = frame_chords(&first, bound);
    let b = frame_chords(&second, bound);
    let mut by_poly: HashMap<usize, Vec<&FrameChord>> = HashMap::new();
    for ch in &b {
        by_poly.entry(ch.polygon).or_default().push(ch);
    }
    let found: Vec<Vec<(usize, Vec2)>> = a
        .par_iter()
        .map(|ca| {
            let mut hits = Vec::new();
            let Some(list) = by_poly.get(&ca.polygon) else { return hits };
            for cb in list {
                let px = solve_f[0] * ca.approx.0 + solve_f[1] * cb.approx.0;
                let py = solve_f[2] * ca.approx.0 + solve_f[3] * cb.approx.0;
                let xa = m1f[0] * px + m1f[1] * py;
                let xb = m2f[0] * px + m2f[1] * py;
                let scale = 1.0 + px.abs() + py.abs();
                if xa < ca.approx.1 - SLACK * scale || xa > ca.approx.2 + SLACK * scale {
                    continue;
                }
                if xb < cb.approx.1 - SLACK * scale || xb > cb.approx.2 + SLACK * scale {
                    continue;
                }
                let p = solve.apply(&Vec2::new(ca.c.clone(), cb.c.clone()));
                let xa = &(&m1.a * &p.x) + &(&m1.b * &p.y);
                let xb = &(&m2.a * &p.x) + &(&m2.b * &p.y);
                if ca.x0 <= xa && xa <= ca.x1 && cb.x0 <= xb && xb <= cb.x1 {
                    hits.push((ca.polygon, p));
                }
            }
            hits
        })
        .collect();
    let mut seen: HashSet<SurfacePoint> = HashSet::new();
    let mut points = Vec::new();
    let mut push = |pt: SurfacePoint| {
        if seen.insert(pt.clone()) {
            points.push(pt);
        }
    };
    for c in s.polygon_centers() {
        push(c);
    }
    for c in s.vertex_classes() {
        push(s.vertex_point(c.id));
    }
    for (p, pos) in found.into_iter().flatten() {
        push(s.locate(p, &pos)?);
    }
    points.sort_by(|x, y| x.repr_cmp(y));
    Ok(CandidateGrid { denominator_bound: bound, first, second, points })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Singularity,
    PolygonCenter,
    Other,
}

impl Label {
    pub fn as_str(&self) -> &'static str {
        match self {
            Label::Singularity => "singularity",
            Label::PolygonCenter => "polygon-center",
            Label::Other => "other",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Survivor {
    pub point: SurfacePoint,
    pub orbit_size: usize,
    pub label: Label,
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub n: u32,
    pub denominator_bound: u32,
    pub cap: usize,
    pub candidates: usize,
    pub survivors: Vec<Survivor>,
    /// Eliminated candidates with the witness that eliminated them.
    pub eliminated: Vec<(SurfacePoint, Witness)>,
    pub inconclusive: Vec<SurfacePoint>,
    pub elapsed: Duration,
}

impl Classification {
    pub fn count(&self, label: Label) -> usize {
        self.survivors.iter().filter(|s| s.label == label).count()
    }

    /// True iff the survivor set is mapped into itself by `φ^±1, ψ^±1`.
    pub fn is_closed(&self, action: &WardAction) -> Result<bool> {
        let set: HashSet<&SurfacePoint> = self.survivors.iter().map(|s| &s.point).collect();
        for sv in &self.survivors {
            for g in action.generators() {
                for m in [g.clone(), g.inverse()] {
                    if !set.contains(&m.apply(&sv.point)?) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

pub fn label_of(s: &Surface, p: &SurfacePoint) -> Label {
    if let Some(c) = p.vertex {
        if s.vertex_classes()[c].is_singular() {
            return Label::Singularity;
        }
        return Label::Other;
    }
    if s.polygons().iter().any(|poly| poly.id() == p.polygon && poly.centroid() == p.pos) {
        Label::PolygonCenter
    } else {
        Label::Other
    }
}

enum Outcome {
    Survivor(usize),
    Eliminated(Box<Witness>),
    Inconclusive,
}

fn psi_word(k: i64) -> Word {
    Word(vec![Letter { generator: 1, inverse: k < 0 }; k.unsigned_abs() as usize])
}

fn classify_one(action: &WardAction, p: &SurfacePoint, cap: usize) -> Result<Outcome> {
    let s = action.surface();
    if p.vertex.is_none() {
        for k in [0i64, 1, -1, 2, -2] {
            let w = psi_word(k);
            let q = action.apply_word(&w, p)?;
            if let Some((cylinder, ratio)) = irrational_height(s, action.horizontal(), &q)? {
                return Ok(Outcome::Eliminated(Box::new(Witness { word: w, image: q, cylinder, ratio })));
            }
        }
    }
    Ok(match action.orbit(p, cap)? {
        OrbitVerdict::Finite { points } => Outcome::Survivor(points.len()),
        OrbitVerdict::Infinite { witness, .. } => Outcome::Eliminated(Box::new(witness)),
        OrbitVerdict::Inconclusive { .. } => Outcome::Inconclusive,
    })
}

/// Classifies every candidate of the grid at denominator bound `bound`.
pub fn search_periodic(action: &WardAction, bound: u32, cap: usize) -> Result<Classification> {
    let start = Instant::now();
    let s = action.surface();
    let n = s
        .ward()
        .ok_or_else(|| Error::UnsupportedSurface("search needs a Ward surface".into()))?
        .n;
    let grid = enumerate_candidates(s, bound)?;
    let outcomes: Vec<Result<Outcome>> = grid.points.par_iter().map(|p| classify_one(action, p, cap)).collect();
    let mut survivors = Vec::new();
    let mut eliminated = Vec::new();
    let mut inconclusive = Vec::new();
    for (p, o) in grid.points.iter().zip(outcomes) {
        match o? {
            Outcome::Survivor(size) => survivors.push(Survivor { point: p.clone(), orbit_size: size, label: label_of(s, p) }),
            Outcome::Eliminated(w) => eliminated.push((p.clone(), *w)),
            Outcome::Inconclusive => inconclusive.push(p.clone()),
        }
    }
    survivors.sort_by(|a, b| a.label.cmp(&b.label).then_with(|| a.point.repr_cmp(&b.point)));
    Ok(Classification {
        n,
        denominator_bound: bound,
        cap,
        candidates: grid.points.len(),
        survivors,
        eliminated,
        inconclusive,
        elapsed: start.elapsed(),
    })
}

/// True iff the points, all on one closed leaf of `d`, are spaced exactly
/// `width / count` apart.
pub fn evenly_distributed_check(s: &Surface, d: &CylinderDecomposition, points: &[SurfacePoint]) -> Result<bool> {
    if points.len() <= 1 {
        return Ok(true);
    }
    let coords: Vec<_> = points.iter().map(|p| d.coords_all(s, p)).collect::<Result<_>>()?;
    let leaf = coords[0]
        .iter()
        .map(|c| (c.cylinder, c.h.clone()))
        .find(|key| coords.iter().all(|cs| cs.iter().any(|c| (c.cylinder, &c.h) == (key.0, &key.1))))
        .ok_or_else(|| Error::InvalidInput("points do not lie on a common leaf".into()))?;
    let mut xs: Vec<FieldElement> = coords
        .iter()
        .map(|cs| cs.iter().find(|c| c.cylinder == leaf.0 && c.h == leaf.1).expect("on leaf").x.clone())
        .collect();
    xs.sort();
    let w = &d.cylinder(leaf.0).width;
    let gap = w * &w.context().frac(1, xs.len() as i64);
    for pair in xs.windows(2) {
        if &pair[1] - &pair[0] != gap {
            return Ok(false);
        }
    }
    Ok(&(&xs[0] + w) - &xs[xs.len() - 1] == gap)
}

/// True iff some `x` (taken modulo `width`) lies in the open arc
/// `(start, start + len)`.
pub fn arc_meets(xs: &[FieldElement], width: &FieldElement, start: &FieldElement, len: &FieldElement) -> bool {
    let end = start + len;
    xs.iter().any(|x| {
        let k = (&(x - start) / width).floor();
        let y = x - &(width * &width.context().rational(k.into()));
        // y is the representative in [start, start + width)
        *start < y && y < end || {
            let y2 = &y + width;
            *start < y2 && y2 < end
        }
    })
}

/// Union of convex pieces, each given by counterclockwise vertices in the
/// coordinates of one polygon.
#[derive(Clone, Debug, Default)]
pub struct Region {
    pub pieces: Vec<(usize, Vec<Vec2>)>,
}

impl Region {
    /// The whole surface.
    pub fn full(s: &Surface) -> Self {
        Region { pieces: s.polygons().iter().map(|p| (p.id(), p.vertices().to_vec())).collect() }
    }
}

/// Locus swept by the rotations of the part of the right-hand triangle of
/// the central 2n-gon with `x <= 3/(4 sin(π/n))`: the 2n-gon scaled about
/// its center by `3/(2 sin(π/n) cot(π/2n))`. Even `n >= 4` only.
pub fn central_locus(s: &Surface) -> Result<Region> {
    let info = s.ward().ok_or_else(|| Error::UnsupportedSurface("locus needs a Ward surface".into()))?;
    let n = info.n as i64;
    if n % 2 == 1 {
        return Err(Error::UnsupportedSurface("locus needs even n".into()));
    }
    let ctx = s.context();
    let cot = &ctx.cos(1, 2 * n)? / &ctx.sin(1, 2 * n)?;
    let lambda = &ctx.frac(3, 2) / &(&ctx.sin(1, n)? * &cot);
    let big = &s.polygons()[0];
    let c = big.centroid();
    let verts = big.vertices().iter().map(|v| c.add(&v.sub(&c).scale(&lambda))).collect();
    Ok(Region { pieces: vec![(big.id(), verts)] })
}

/// Parameter interval of `a + t (b - a)`, `t in [0, 1]`, inside a convex
/// polygon given counterclockwise.
pub fn clip(a: &Vec2, b: &Vec2, poly: &[Vec2]) -> Option<(FieldElement, FieldElement)> {
    let ctx = a.x.context();
    let d = b.sub(a);
    let (mut lo, mut hi) = (ctx.zero(), ctx.one());
    let m = poly.len();
    for i in 0..m {
        let e = poly[(i + 1) % m].sub(&poly[i]);
        // f0 + t f1 >= 0
        let f0 = e.cross(&a.sub(&poly[i]));
        let f1 = e.cross(&d);
        match f1.sign() {
            0 => {
                if f0.sign() < 0 {
                    return None;
                }
            }
            s => {
                let t = &(-&f0) / &f1;
                if s > 0 {
                    if t > lo {
                        lo = t;
                    }
                } else if t < hi {
                    hi = t;
                }
            }
        }
        if lo >= hi {
            return None;
        }
    }
    Some((lo, hi))
}

/// Exact fraction of the closed leaf at height `h` of cylinder `cid` that
/// lies in `region`.
pub fn leaf_coverage_fraction(region: &Region, d: &CylinderDecomposition, cid: usize, h: &FieldElement) -> FieldElement {
    let ctx = d.frame().context().clone();
    let mut covered = ctx.zero();
    for (p, a, b) in d.leaf_segments(cid, h) {
        let len = &d.to_frame(&b).x - &d.to_frame(&a).x;
        let mut ivs: Vec<(FieldElement, FieldElement)> =
            region.pieces.iter().filter(|(q, _)| *q == p).filter_map(|(_, poly)| clip(&a, &b, poly)).collect();
        ivs.sort_by(|x, y| x.0.cmp(&y.0));
        let mut total = ctx.zero();
        let mut cur: Option<(FieldElement, FieldElement)> = None;
        for (lo, hi) in ivs {
            cur = match cur {
                Some((cl, ch)) if lo <= ch => Some((cl, ch.max(hi))),
                Some((cl, ch)) => {
                    total = &total + &(&ch - &cl);
                    Some((lo, hi))
                }
                None => Some((lo, hi)),
            };
        }
        if let Some((cl, ch)) = cur {
            total = &total + &(&ch - &cl);
        }
        covered = &covered + &(&total * &len);
    }
    &covered / &d.cylinder(cid).width
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldContext;
    use crate::surface::build_ward;
    use std::sync::Arc;

    #[test]
    fn fraction_list() {
        assert_eq!(fractions(1), vec![(0, 1), (1, 1)]);
        assert_eq!(fractions(3), vec![(0, 1), (1, 3), (1, 2), (2, 3), (1, 1)]);
        assert_eq!(fractions(8).len(), 23);
    }

    #[test]
    fn torus_grid_contains_two_torsion() {
        let k = FieldContext::new(4).unwrap();
        let t = Surface::square_torus(&k);
        let h = cylinder_decomposition(&t, &Direction::horizontal(&k)).unwrap();
        let v = cylinder_decomposition(&t, &Direction::vertical(&k)).unwrap();
        let g = enumerate_candidates_with(&t, 2, h, v).unwrap();
        for (x, y) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            let p = t.locate(0, &Vec2::new(k.frac(x, 2), k.frac(y, 2))).unwrap();
            assert!(g.points.contains(&p), "({x}, {y})");
        }
        // the 2x2 grid, vertex included
        assert_eq!(g.points.len(), 4);
    }

    #[test]
    fn certificates_for_octagon() {
        let s = Arc::new(build_ward(4).unwrap());
        let k = s.context();
        let h = cylinder_decomposition(&s, &Direction::horizontal(k)).unwrap();
        let v = cylinder_decomposition(&s, &Direction::vertical(k)).unwrap();
        let r = cylinder_decomposition(&s, &Direction::at_angle(k, 1, 4).unwrap()).unwrap();
        let o = s.locate(0, &Vec2::zero(k)).unwrap();
        assert_eq!(rational_height_certificate(&s, &o, &[&h, &v]).unwrap(), Certificate::Pass);
        let p = s.locate(0, &Vec2::new(k.frac(1, 3), k.frac(1, 5))).unwrap();
        assert!(matches!(rational_height_certificate(&s, &p, &[&h, &r]).unwrap(), Certificate::Fail { .. }));
    }

    #[test]
    fn even_spacing() {
        let s = build_ward(4).unwrap();
        let k = s.context();
        let d = cylinder_decomposition(&s, &Direction::horizontal(k)).unwrap();
        let c = &d.cylinders()[0];
        let h = &c.height * &k.frac(1, 3);
        let pts: Vec<_> = (0..3)
            .map(|i| d.point_at(&s, 0, &(&c.width * &k.frac(2 * i + 1, 6)), &h).unwrap())
            .collect();
        assert!(evenly_distributed_check(&s, &d, &pts).unwrap());
        assert!(evenly_distributed_check(&s, &d, &pts[..1]).unwrap());
        let uneven = vec![pts[0].clone(), d.point_at(&s, 0, &(&c.width * &k.frac(1, 2)), &h).unwrap()];
        assert!(!evenly_distributed_check(&s, &d, &uneven).unwrap());
        let other = d.point_at(&s, 0, &k.zero(), &(&c.height * &k.frac(1, 2))).unwrap();
        assert!(evenly_distributed_check(&s, &d, &[pts[0].clone(), other]).is_err());
    }

    #[test]
    fn full_region_covers_every_leaf() {
        let s = build_ward(5).unwrap();
        let k = s.context();
        let d = cylinder_decomposition(&s, &Direction::horizontal(k)).unwrap();
        let full = Region::full(&s);
        for c in d.cylinders() {
            let f = leaf_coverage_fraction(&full, &d, c.id, &(&c.height * &k.frac(2, 5)));
            assert!(f.is_one());
        }
    }

    #[test]
    fn locus_is_scaled_polygon() {
        let s = build_ward(8).unwrap();
        let l = central_locus(&s).unwrap();
        let big = &s.polygons()[0];
        let area = crate::surface::Polygon::new(9, l.pieces[0].1[0].clone(), {
            let v = &l.pieces[0].1;
            (0..v.len()).map(|i| v[(i + 1) % v.len()].sub(&v[i])).collect()
        })
        .unwrap()
        .area();
        let ratio = (&area / &big.area()).to_f64().sqrt();
        assert!((ratio - 0.7796).abs() < 1e-3, "{ratio}");
        assert!(central_locus(&build_ward(5).unwrap()).is_err());
    }

    #[test]
    fn survivors_monotone_in_bound() {
        let a = WardAction::new(Arc::new(build_ward(5).unwrap())).unwrap();
        let lo = search_periodic(&a, 2, 1000).unwrap();
        let hi = search_periodic(&a, 4, 1000).unwrap();
        let grid = enumerate_candidates(a.surface(), 2).unwrap();
        let restricted: Vec<_> =
            hi.survivors.iter().filter(|sv| grid.points.contains(&sv.point)).cloned().collect();
        assert_eq!(restricted, lo.survivors);
    }

    #[test]
    fn octagon_search_small_bound() {
        let a = WardAction::new(Arc::new(build_ward(4).unwrap())).unwrap();
        let c = search_periodic(&a, 3, 1000).unwrap();
        assert!(c.inconclusive.is_empty());
        assert_eq!(c.survivors.len(), 4);
        assert_eq!(c.count(Label::Singularity), 1);
        assert_eq!(c.count(Label::PolygonCenter), 3);
        assert!(c.is_closed(&a).unwrap());
        for (p, w) in c.eliminated.iter().take(50) {
            assert!(a.verify_witness(p, w).unwrap());
        }
    }
}
