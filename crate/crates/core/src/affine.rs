//! Veech group matrices and affine self-maps of Ward surfaces as exact
//! point maps, with orbit exploration.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};
use crate::flows::{cylinder_decomposition, CylCoord, CylinderDecomposition, Direction};
use crate::geom::{Mat2, Vec2};
use crate::surface::{Surface, SurfacePoint};

/// The matrices `A, B, C, μ, R` of the Ward Veech group and the products
/// generating its orientation-preserving part.
#[derive(Clone, Debug)]
pub struct VeechMatrices {
    pub a: Mat2,
    pub b: Mat2,
    pub c: Mat2,
    pub mu: Mat2,
    pub r: Mat2,
    /// `(AB)^μ = μ·AB·μ⁻¹`, the parabolic `[[1, -α], [0, 1]]`.
    pub ab_mu: Mat2,
    /// `(BC)^μ`, equal to `-R`.
    pub bc_mu: Mat2,
}

pub fn veech_matrices(ctx: &FieldContext) -> Result<VeechMatrices> {
    let n = ctx.n() as i64;
    let (c, s) = (ctx.cos(1, n)?, ctx.sin(1, n)?);
    let (zero, one) = (ctx.zero(), ctx.one());
    let a = Mat2::new(ctx.int(-1), ctx.int(-1), zero.clone(), one.clone());
    let b = Mat2::new(ctx.int(-1), &ctx.int(2) * &c, zero.clone(), one.clone());
    let cm = Mat2::new(zero.clone(), ctx.int(-1), ctx.int(-1), zero.clone());
    let csc = s.inverse().expect("sin(π/n) is nonzero");
    let mu = Mat2::new(csc.clone(), -(&c * &csc), zero, one);
    let r = Mat2::rotation(ctx, 1, n)?;
    let ab_mu = a.mul(&b).conjugate_by(&mu).expect("μ is invertible");
    let bc_mu = b.mul(&cm).conjugate_by(&mu).expect("μ is invertible");
    Ok(VeechMatrices { a, b, c: cm, mu, r, ab_mu, bc_mu })
}

/// `α = (2cos(π/n) + 1)/sin(π/n)`, the common modulus of the horizontal
/// cylinders.
pub fn ward_alpha(ctx: &FieldContext) -> Result<FieldElement> {
    let n = ctx.n() as i64;
    Ok(&(&(&ctx.int(2) * &ctx.cos(1, n)?) + &ctx.one()) / &ctx.sin(1, n)?)
}

fn rational_lcm(qs: &[BigRational]) -> BigRational {
    let mut num = BigInt::one();
    let mut den = BigInt::zero();
    for q in qs {
        num = num.lcm(q.numer());
        den = den.gcd(q.denom());
    }
    BigRational::new(num, den)
}

/// Multitwist along the cylinders of a decomposition: the affine map with
/// derivative `[[1, s], [0, 1]]` in the decomposition frame, `s` the least
/// common multiple of the moduli.
#[derive(Clone, Debug)]
pub struct TwistMap {
    surface: Arc<Surface>,
    decomposition: Arc<CylinderDecomposition>,
    shear: FieldElement,
    /// Number of Dehn twists performed on each cylinder.
    powers: Vec<BigInt>,
}

impl TwistMap {
    pub fn new(surface: Arc<Surface>, decomposition: Arc<CylinderDecomposition>) -> Result<Self> {
        let cyls = decomposition.cylinders();
        let m0 = &cyls[0].modulus;
        let mut ratios = Vec::with_capacity(cyls.len());
        for c in cyls {
            let q = (&c.modulus / m0).as_rational().ok_or_else(|| {
                Error::CannotBuildParabolic(format!("modulus of cylinder {} is incommensurate", c.id))
            })?;
            ratios.push(q);
        }
        let l = rational_lcm(&ratios);
        let shear = m0 * &surface.context().rational(l.clone());
        let powers = ratios.iter().map(|q| (&l / q).to_integer()).collect();
        Ok(TwistMap { surface, decomposition, shear, powers })
    }

    pub fn shear(&self) -> &FieldElement {
        &self.shear
    }

    pub fn powers(&self) -> &[BigInt] {
        &self.powers
    }

    pub fn decomposition(&self) -> &Arc<CylinderDecomposition> {
        &self.decomposition
    }

    /// Derivative in surface coordinates.
    pub fn derivative(&self) -> Mat2 {
        let ctx = self.surface.context();
        let f = self.decomposition.frame();
        let sh = Mat2::shear(ctx, self.shear.clone());
        sh.conjugate_by(&f.inverse().expect("invertible frame")).expect("invertible")
    }

    /// Cylinder coordinates used for the map; the base-leaf representative
    /// is preferred for boundary points.
    fn coords(&self, p: &SurfacePoint) -> Result<CylCoord> {
        self.decomposition.coords(&self.surface, p)
    }

    pub fn apply_pow(&self, p: &SurfacePoint, k: i64) -> Result<SurfacePoint> {
        if p.vertex.is_some() || k == 0 {
            return Ok(p.clone());
        }
        let c = self.coords(p)?;
        if c.h.is_zero() {
            return Ok(p.clone());
        }
        let ctx = self.surface.context();
        let x = &c.x + &(&(&self.shear * &ctx.int(k)) * &c.h);
        self.decomposition.point_at(&self.surface, c.cylinder, &x, &c.h)
    }
}

/// The order-`2n` rotation `ψ` of a Ward surface: the `2n`-gon turns about
/// its center; each `n`-gon is rotated and translated onto the other.
#[derive(Clone, Debug)]
pub struct RotationMap {
    surface: Arc<Surface>,
    order: usize,
    /// For each power `k in 0..order`: image polygon, translation, and `R^k`.
    table: Vec<(Vec<usize>, Vec<Vec2>, Mat2)>,
}

impl RotationMap {
    pub fn new(surface: Arc<Surface>) -> Result<Self> {
        let info = surface
            .ward()
            .ok_or_else(|| Error::UnsupportedSurface("rotation map needs a Ward surface".into()))?
            .clone();
        let ctx = surface.context().clone();
        let n = info.n as usize;
        let r = Mat2::rotation(&ctx, 1, n as i64)?;
        if !surface.polygon(0).centroid().is_zero() {
            return Err(Error::UnsupportedSurface("2n-gon is not centered at the origin".into()));
        }
        // one step: polygon images, vertex index shifts and translations
        let perm = [0usize, 2, 1];
        let mut shift = [0usize; 3];
        let mut trans = vec![Vec2::zero(&ctx); 3];
        for p in 0..3 {
            let src = surface.polygon(p);
            let dst = surface.polygon(perm[p]);
            let rotated = r.apply(src.edge(0));
            let j = (0..dst.len())
                .find(|&j| *dst.edge(j) == rotated)
                .ok_or_else(|| Error::InvalidSurface(format!("rotated polygon {p} does not match")))?;
            shift[p] = j;
            trans[p] = dst.vertex(j).sub(&r.apply(src.vertex(0)));
            for i in 0..src.len() {
                if r.apply(src.vertex(i)).add(&trans[p]) != *dst.vertex(i + j) {
                    return Err(Error::InvalidSurface(format!("rotated polygon {p} does not coincide")));
                }
            }
        }
        // the piecewise map must respect every gluing
        for ((p, i), (q, j)) in surface.gluing().pairs() {
            let (pi, qj) = ((perm[p], (i + shift[p]) % surface.polygon(p).len()), (perm[q], (j + shift[q]) % surface.polygon(q).len()));
            if surface.gluing().partner(pi) != qj {
                return Err(Error::InvalidSurface(format!("rotation breaks the gluing of {:?}", (p, i))));
            }
            let t = surface.edge_translation((p, i));
            let want = r.apply(&t).add(&trans[q]).sub(&trans[p]);
            if surface.edge_translation(pi) != want {
                return Err(Error::InvalidSurface(format!("rotation breaks the translation of {:?}", (p, i))));
            }
        }
        let order = 2 * n;
        let mut table = Vec::with_capacity(order);
        let mut cur: (Vec<usize>, Vec<Vec2>, Mat2) = (vec![0, 1, 2], vec![Vec2::zero(&ctx); 3], Mat2::identity(&ctx));
        for _ in 0..order {
            table.push(cur.clone());
            let (cp, ct, cm) = cur;
            let np: Vec<usize> = (0..3).map(|p| perm[cp[p]]).collect();
            let nt: Vec<Vec2> = (0..3).map(|p| r.apply(&ct[p]).add(&trans[cp[p]])).collect();
            cur = (np, nt, r.mul(&cm));
        }
        if !(cur.2.is_identity() && cur.0 == vec![0, 1, 2] && cur.1.iter().all(Vec2::is_zero)) {
            return Err(Error::InvalidSurface("rotation does not have order 2n".into()));
        }
        Ok(RotationMap { surface, order, table })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn derivative(&self) -> Mat2 {
        self.table[1 % self.order].2.clone()
    }

    pub fn apply_pow(&self, p: &SurfacePoint, k: i64) -> Result<SurfacePoint> {
        let k = k.rem_euclid(self.order as i64) as usize;
        if k == 0 {
            return Ok(p.clone());
        }
        let (perm, trans, m) = &self.table[k];
        let q = perm[p.polygon];
        let pos = m.apply(&p.pos).add(&trans[p.polygon]);
        self.surface.locate(q, &pos).map_err(|_| Error::InvalidSurface("rotation image left its polygon".into()))
    }
}

/// An affine self-map acting on surface points.
#[derive(Clone, Debug)]
pub enum AffinePointMap {
    Twist { map: Arc<TwistMap>, power: i64 },
    Rotation { map: Arc<RotationMap>, power: i64 },
    /// Applied left to right.
    Chain(Vec<AffinePointMap>),
}

impl AffinePointMap {
    pub fn apply(&self, p: &SurfacePoint) -> Result<SurfacePoint> {
        match self {
            AffinePointMap::Twist { map, power } => map.apply_pow(p, *power),
            AffinePointMap::Rotation { map, power } => map.apply_pow(p, *power),
            AffinePointMap::Chain(ms) => {
                let mut q = p.clone();
                for m in ms {
                    q = m.apply(&q)?;
                }
                Ok(q)
            }
        }
    }

    pub fn inverse(&self) -> AffinePointMap {
        match self {
            AffinePointMap::Twist { map, power } => AffinePointMap::Twist { map: map.clone(), power: -power },
            AffinePointMap::Rotation { map, power } => AffinePointMap::Rotation { map: map.clone(), power: -power },
            AffinePointMap::Chain(ms) => AffinePointMap::Chain(ms.iter().rev().map(Self::inverse).collect()),
        }
    }

    pub fn power(&self, k: i64) -> AffinePointMap {
        match self {
            AffinePointMap::Twist { map, power } => AffinePointMap::Twist { map: map.clone(), power: power * k },
            AffinePointMap::Rotation { map, power } => AffinePointMap::Rotation { map: map.clone(), power: power * k },
            AffinePointMap::Chain(_) => {
                let base = if k < 0 { self.inverse() } else { self.clone() };
                AffinePointMap::Chain(vec![base; k.unsigned_abs() as usize])
            }
        }
    }

    pub fn derivative(&self, ctx: &FieldContext) -> Mat2 {
        match self {
            AffinePointMap::Twist { map, power } => map.derivative().pow(*power).expect("invertible"),
            AffinePointMap::Rotation { map, power } => map.derivative().pow(*power).expect("invertible"),
            AffinePointMap::Chain(ms) => {
                ms.iter().fold(Mat2::identity(ctx), |acc, m| m.derivative(ctx).mul(&acc))
            }
        }
    }
}

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

/// A group word, stored in application order. Displayed in composition
/// order (rightmost factor acts first), e.g. `ψ⁻¹·φ·ψ`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

/// Display names for the two Ward generators.
pub const WARD_NAMES: [&str; 2] = ["φ", "ψ"];
const ASCII_NAMES: [&str; 2] = ["phi", "psi"];

impl Word {
    pub fn then(&self, l: Letter) -> Word {
        let mut v = self.0.clone();
        v.push(l);
        Word(v)
    }

    /// `self` followed by `other`.
    pub fn followed_by(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(other.0.iter()).copied().collect())
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| Letter { generator: l.generator, inverse: !l.inverse }).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The word as a map, given the generators' maps.
    pub fn to_map(&self, gens: &[AffinePointMap]) -> AffinePointMap {
        AffinePointMap::Chain(
            self.0.iter().map(|l| if l.inverse { gens[l.generator].inverse() } else { gens[l.generator].clone() }).collect(),
        )
    }

    pub fn apply(&self, gens: &[AffinePointMap], p: &SurfacePoint) -> Result<SurfacePoint> {
        let mut q = p.clone();
        for l in &self.0 {
            q = if l.inverse { gens[l.generator].inverse().apply(&q)? } else { gens[l.generator].apply(&q)? };
        }
        Ok(q)
    }

    /// ASCII rendering, e.g. `psi^-1*phi*psi`.
    pub fn to_ascii(&self) -> String {
        if self.0.is_empty() {
            return "id".into();
        }
        self.0
            .iter()
            .rev()
            .map(|l| format!("{}{}", ASCII_NAMES[l.generator], if l.inverse { "^-1" } else { "" }))
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .rev()
            .map(|l| format!("{}{}", WARD_NAMES[l.generator], if l.inverse { "⁻¹" } else { "" }))
            .collect();
        write!(f, "{}", parts.join("·"))
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Accepts `φ`, `ψ`, `phi`, `psi`, each optionally followed by `⁻¹`,
    /// `^-1` or `'`, separated by `·`, `*` or whitespace. `id` is empty.
    fn from_str(s: &str) -> Result<Word> {
        let mut letters = Vec::new();
        let t = s.trim();
        if t.is_empty() || t == "id" {
            return Ok(Word::default());
        }
        for tok in t.split(|c: char| c == '·' || c == '*' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            let (base, inverse) = if let Some(b) = tok.strip_suffix("⁻¹") {
                (b, true)
            } else if let Some(b) = tok.strip_suffix("^-1") {
                (b, true)
            } else if let Some(b) = tok.strip_suffix('\'') {
                (b, true)
            } else {
                (tok, false)
            };
            let generator = match base {
                "φ" | "phi" => 0,
                "ψ" | "psi" => 1,
                _ => return Err(Error::InvalidInput(format!("unknown generator `{tok}`"))),
            };
            letters.push(Letter { generator, inverse });
        }
        letters.reverse();
        Ok(Word(letters))
    }
}

/// Evidence that a point has infinite orbit: after applying `word`, the
/// point sits in `cylinder` at an irrational fraction `ratio` of its height.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub word: Word,
    pub image: SurfacePoint,
    pub cylinder: usize,
    pub ratio: FieldElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum OrbitVerdict {
    /// Orbit closed under all generators and inverses.
    Finite { points: Vec<SurfacePoint> },
    Infinite { witness: Witness, visited: usize },
    Inconclusive { visited: usize, cap: usize },
}

impl OrbitVerdict {
    pub fn is_finite(&self) -> bool {
        matches!(self, OrbitVerdict::Finite { .. })
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, OrbitVerdict::Infinite { .. })
    }
}

/// Returns the irrational height ratio of `p` in `d`, if any. Vertices and
/// boundary points never fail.
pub fn irrational_height(s: &Surface, d: &CylinderDecomposition, p: &SurfacePoint) -> Result<Option<(usize, FieldElement)>> {
    if p.vertex.is_some() {
        return Ok(None);
    }
    let cs = d.coords_all(s, p)?;
    for c in &cs {
        let h = &d.cylinder(c.cylinder).height;
        if !c.h.is_rational_multiple_of(h) {
            return Ok(Some((c.cylinder, &c.h / h)));
        }
    }
    Ok(None)
}

/// The affine action used for Ward surfaces: `φ` (positive multitwist along
/// the horizontal cylinders) and `ψ` (rotation by `π/n`).
///
/// [`WardAction::twist_pair`] builds the same machinery on any surface
/// with horizontal and vertical parabolic directions, with `ψ` standing
/// for the vertical multitwist.
#[derive(Clone, Debug)]
pub struct WardAction {
    surface: Arc<Surface>,
    horizontal: Arc<CylinderDecomposition>,
    twist: Arc<TwistMap>,
    rotation: Option<Arc<RotationMap>>,
    generators: Vec<AffinePointMap>,
    /// Words applied to each visited point before the height test; the
    /// defaults `ψ⁻ᵏ` test membership in the `ψᵏ`-image decompositions.
    probes: Vec<Word>,
}

impl WardAction {
    pub fn new(surface: Arc<Surface>) -> Result<Self> {
        let horizontal = Arc::new(cylinder_decomposition(&surface, &Direction::horizontal(surface.context()))?);
        let twist = Arc::new(TwistMap::new(surface.clone(), horizontal.clone())?);
        let rotation = Arc::new(RotationMap::new(surface.clone())?);
        let generators = vec![
            AffinePointMap::Twist { map: twist.clone(), power: 1 },
            AffinePointMap::Rotation { map: rotation.clone(), power: 1 },
        ];
        let psi_inv = |k: usize| Word(vec![Letter { generator: 1, inverse: true }; k]);
        let probes = vec![Word::default(), psi_inv(1), psi_inv(2)];
        Ok(WardAction { surface, horizontal, twist, rotation: Some(rotation), generators, probes })
    }

    /// Horizontal and vertical multitwists; probes only the identity.
    pub fn twist_pair(surface: Arc<Surface>) -> Result<Self> {
        let ctx = surface.context();
        let horizontal = Arc::new(cylinder_decomposition(&surface, &Direction::horizontal(ctx))?);
        let vertical = Arc::new(cylinder_decomposition(&surface, &Direction::vertical(ctx))?);
        let twist = Arc::new(TwistMap::new(surface.clone(), horizontal.clone())?);
        let second = Arc::new(TwistMap::new(surface.clone(), vertical)?);
        let generators = vec![
            AffinePointMap::Twist { map: twist.clone(), power: 1 },
            AffinePointMap::Twist { map: second, power: 1 },
        ];
        Ok(WardAction { surface, horizontal, twist, rotation: None, generators, probes: vec![Word::default()] })
    }

    /// Replaces the probe words.
    pub fn with_probes(mut self, probes: Vec<Word>) -> Self {
        self.probes = probes;
        self
    }

    pub fn surface(&self) -> &Arc<Surface> {
        &self.surface
    }

    pub fn horizontal(&self) -> &Arc<CylinderDecomposition> {
        &self.horizontal
    }

    pub fn twist(&self) -> &Arc<TwistMap> {
        &self.twist
    }

    /// `None` for twist-pair actions.
    pub fn rotation(&self) -> Option<&Arc<RotationMap>> {
        self.rotation.as_ref()
    }

    /// `[φ, ψ]`
    pub fn generators(&self) -> &[AffinePointMap] {
        &self.generators
    }

    pub fn phi(&self) -> &AffinePointMap {
        &self.generators[0]
    }

    pub fn psi(&self) -> &AffinePointMap {
        &self.generators[1]
    }

    pub fn apply_word(&self, w: &Word, p: &SurfacePoint) -> Result<SurfacePoint> {
        w.apply(&self.generators, p)
    }

    /// Height test of `p` under every probe word.
    pub fn probe(&self, p: &SurfacePoint, path: &Word) -> Result<Option<Witness>> {
        for w in &self.probes {
            let q = self.apply_word(w, p)?;
            if let Some((cylinder, ratio)) = irrational_height(&self.surface, &self.horizontal, &q)? {
                return Ok(Some(Witness { word: path.followed_by(w), image: q, cylinder, ratio }));
            }
        }
        Ok(None)
    }

    /// Breadth-first closure of the orbit of `p` under `φ^±1, ψ^±1`,
    /// testing every visited point for an irrational height.
    pub fn orbit(&self, p: &SurfacePoint, cap: usize) -> Result<OrbitVerdict> {
        if cap < 1 {
            return Err(Error::InvalidParameter("orbit cap must be at least 1".into()));
        }
        let letters: Vec<Letter> = (0..self.generators.len())
            .flat_map(|g| [Letter { generator: g, inverse: false }, Letter { generator: g, inverse: true }])
            .collect();
        let maps: Vec<AffinePointMap> = letters
            .iter()
            .map(|l| if l.inverse { self.generators[l.generator].inverse() } else { self.generators[l.generator].clone() })
            .collect();
        let mut index: HashMap<SurfacePoint, usize> = HashMap::new();
        let mut points: Vec<SurfacePoint> = Vec::new();
        let mut parent: Vec<Option<(usize, Letter)>> = Vec::new();
        let word_to = |parent: &Vec<Option<(usize, Letter)>>, mut i: usize| {
            let mut ls = Vec::new();
            while let Some((j, l)) = parent[i] {
                ls.push(l);
                i = j;
            }
            ls.reverse();
            Word(ls)
        };
        index.insert(p.clone(), 0);
        points.push(p.clone());
        parent.push(None);
        let mut head = 0;
        while head < points.len() {
            let cur = points[head].clone();
            let path = word_to(&parent, head);
            if let Some(w) = self.probe(&cur, &path)? {
                return Ok(OrbitVerdict::Infinite { witness: w, visited: points.len() });
            }
            for (l, m) in letters.iter().zip(&maps) {
                let q = m.apply(&cur)?;
                if !index.contains_key(&q) {
                    if points.len() >= cap {
                        return Ok(OrbitVerdict::Inconclusive { visited: points.len(), cap });
                    }
                    index.insert(q.clone(), points.len());
                    points.push(q);
                    parent.push(Some((head, *l)));
                }
            }
            head += 1;
        }
        points.sort_by(|a, b| a.repr_cmp(b));
        Ok(OrbitVerdict::Finite { points })
    }

    /// Independent re-check of a witness against a starting point.
    pub fn verify_witness(&self, start: &SurfacePoint, w: &Witness) -> Result<bool> {
        let q = self.apply_word(&w.word, start)?;
        if q != w.image {
            return Ok(false);
        }
        if q.vertex.is_some() {
            return Ok(false);
        }
        let cs = self.horizontal.coords_all(&self.surface, &q)?;
        Ok(cs.iter().any(|c| {
            c.cylinder == w.cylinder && {
                let ratio = &c.h / &self.horizontal.cylinder(c.cylinder).height;
                ratio == w.ratio && !ratio.is_rational()
            }
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flows::advance;
    use crate::surface::build_ward;

    fn action(n: u32) -> WardAction {
        WardAction::new(Arc::new(build_ward(n).unwrap())).unwrap()
    }

    #[test]
    fn matrices_for_octagon_case() {
        let k = FieldContext::new(4).unwrap();
        let m = veech_matrices(&k).unwrap();
        let sqrt2 = &k.int(2) * &k.cos(1, 4).unwrap();
        let want = Mat2::new(k.one(), &k.int(-2) - &sqrt2, k.zero(), k.one());
        assert_eq!(m.ab_mu, want);
        assert_eq!(m.bc_mu.pow(4).unwrap(), Mat2::identity(&k).neg());
        assert_eq!(m.bc_mu.pow(5).unwrap(), m.r);
    }

    #[test]
    fn matrix_identities_all_n() {
        for n in 3..=12u32 {
            let k = FieldContext::new(n).unwrap();
            let m = veech_matrices(&k).unwrap();
            let alpha = ward_alpha(&k).unwrap();
            assert_eq!(m.ab_mu, Mat2::shear(&k, -&alpha));
            assert_eq!(m.bc_mu, m.r.neg());
            assert!(m.r.det().is_one());
            assert!(m.r.pow(2 * n as i64).unwrap().is_identity());
            for j in 1..2 * n as i64 {
                assert!(!m.r.pow(j).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn torus_twist_pair() {
        let k = FieldContext::new(4).unwrap();
        let a = WardAction::twist_pair(Arc::new(Surface::square_torus(&k))).unwrap();
        assert!(a.rotation().is_none());
        let half = a.surface().locate(0, &Vec2::new(k.frac(1, 2), k.frac(1, 2))).unwrap();
        match a.orbit(&half, 100).unwrap() {
            OrbitVerdict::Finite { points } => assert_eq!(points.len(), 3),
            v => panic!("{v:?}"),
        }
        let irr = a.surface().locate(0, &Vec2::new(&k.cos(1, 4).unwrap() * &k.frac(1, 2), k.zero())).unwrap();
        let v = a.orbit(&irr, 100).unwrap();
        let OrbitVerdict::Infinite { witness, .. } = v else { panic!("{v:?}") };
        assert!(a.verify_witness(&irr, &witness).unwrap());
    }

    #[test]
    fn rotation_fixes_origin_and_has_order_2n() {
        for n in 3..=9u32 {
            let a = action(n);
            let s = a.surface();
            let o = s.locate(0, &Vec2::zero(s.context())).unwrap();
            assert_eq!(a.psi().apply(&o).unwrap(), o);
            let centers = s.polygon_centers();
            let psi = a.psi();
            assert_eq!(psi.apply(&centers[1]).unwrap(), centers[2]);
            assert_eq!(psi.apply(&centers[2]).unwrap(), centers[1]);
            let p = s.locate(1, &s.polygon(1).vertex(0).add(&Vec2::new(s.context().frac(1, 7), s.context().frac(1, 5)))).unwrap();
            assert_eq!(psi.power(2 * n as i64).apply(&p).unwrap(), p);
        }
    }

    #[test]
    fn twist_halves_and_boundary() {
        let a = action(4);
        let s = a.surface();
        let d = a.horizontal();
        for c in d.cylinders() {
            let k = s.context();
            let p = d.point_at(s, c.id, &(&c.width * &k.frac(1, 3)), &(&c.height * &k.frac(1, 2))).unwrap();
            let q = a.phi().apply(&p).unwrap();
            assert_ne!(q, p);
            assert_eq!(a.phi().apply(&q).unwrap(), p);
            let b = d.point_at(s, c.id, &(&c.width * &k.frac(2, 5)), &k.zero()).unwrap();
            assert_eq!(a.phi().apply(&b).unwrap(), b);
        }
    }

    #[test]
    fn twist_derivative_by_flow() {
        let a = action(5);
        let s = a.surface();
        let k = s.context();
        let dmat = a.phi().derivative(k);
        let p = s.locate(0, &Vec2::new(k.frac(1, 7), k.frac(1, 9))).unwrap();
        let u = Vec2::new(k.frac(1, 100), k.frac(1, 300));
        let one = k.one();
        let b = advance(s, &p, &u, &one).unwrap();
        let fa = a.phi().apply(&p).unwrap();
        let fb = a.phi().apply(&b).unwrap();
        assert_eq!(advance(s, &fa, &dmat.apply(&u), &one).unwrap(), fb);
    }

    #[test]
    fn word_round_trip() {
        let w: Word = "ψ⁻¹·φ·ψ".parse().unwrap();
        assert_eq!(w.0[0], Letter { generator: 1, inverse: false });
        assert_eq!(w.to_string(), "ψ⁻¹·φ·ψ");
        assert_eq!(w.to_ascii(), "psi^-1*phi*psi");
        assert_eq!(w.to_ascii().parse::<Word>().unwrap(), w);
        assert!("chi".parse::<Word>().is_err());
    }

    #[test]
    fn octagon_orbits() {
        let a = action(4);
        let s = a.surface();
        let k = s.context();
        let o = s.locate(0, &Vec2::zero(k)).unwrap();
        match a.orbit(&o, 100).unwrap() {
            OrbitVerdict::Finite { points } => {
                let mut want = s.polygon_centers();
                want.sort_by(|x, y| x.repr_cmp(y));
                assert_eq!(points, want);
            }
            v => panic!("{v:?}"),
        }
        let r2 = k.cos(1, 4).unwrap();
        let half = &r2 * &k.frac(1, 2);
        let p = s.locate(0, &Vec2::new(half.clone(), half)).unwrap();
        match a.orbit(&p, 100).unwrap() {
            OrbitVerdict::Infinite { witness, .. } => assert!(a.verify_witness(&p, &witness).unwrap()),
            v => panic!("{v:?}"),
        }
        let v = s.vertex_point(0);
        assert_eq!(a.orbit(&v, 10).unwrap(), OrbitVerdict::Finite { points: vec![v.clone()] });
        assert!(matches!(a.orbit(&v, 0), Err(Error::InvalidParameter(_))));
    }
}
