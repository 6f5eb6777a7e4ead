//! Versioned surface JSON.
//!
//! Field elements are stored as full coefficient vectors of `num/den`
//! strings in the power basis of the context. Derived data (genus, cone
//! points) is written for readers and re-checked on load.

use serde::{Deserialize, Serialize};
use ward_core::surface::{Polygon, WardInfo};
use ward_core::{FieldContext, Normalization, Surface, Vec2};

use crate::error::{CliError, CliResult};
use crate::pointspec::{approx, coefficient_strings, parse_coefficients};

pub const SURFACE_FORMAT: &str = "ward-surface";
pub const SURFACE_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactVec {
    pub x: Vec<String>,
    pub y: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    /// Index of the family member the context was built for.
    pub n: u32,
    pub conductor: u32,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WardDescriptor {
    pub n: u32,
    pub normalization: String,
    pub attach: [usize; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonRecord {
    pub id: usize,
    pub anchor: ExactVec,
    pub edges: Vec<ExactVec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConePoint {
    pub class: usize,
    /// Cone angle divided by `2π`.
    pub angle_over_2pi: u32,
    pub corners: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derived {
    pub genus: u32,
    pub vertex_classes: Vec<ConePoint>,
    pub area: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceFile {
    pub format: String,
    pub version: u32,
    pub field: FieldDescriptor,
    pub ward: Option<WardDescriptor>,
    pub polygons: Vec<PolygonRecord>,
    /// Glued edge pairs `[[polygon, edge], [polygon, edge]]`.
    pub gluings: Vec<[[usize; 2]; 2]>,
    pub derived: Derived,
}

fn exact_vec(v: &Vec2) -> ExactVec {
    ExactVec { x: coefficient_strings(&v.x), y: coefficient_strings(&v.y) }
}

fn read_vec(ctx: &FieldContext, v: &ExactVec) -> CliResult<Vec2> {
    Ok(Vec2::new(parse_coefficients(ctx, &v.x)?, parse_coefficients(ctx, &v.y)?))
}

fn normalization_name(n: Normalization) -> &'static str {
    match n {
        Normalization::UnitSides => "unit-sides",
        Normalization::Hooper => "hooper",
    }
}

fn derived(s: &Surface) -> Derived {
    Derived {
        genus: s.genus(),
        vertex_classes: s
            .vertex_classes()
            .iter()
            .map(|c| ConePoint {
                class: c.id,
                angle_over_2pi: c.angle_multiple,
                corners: c.corners.iter().map(|&(p, i)| [p, i]).collect(),
            })
            .collect(),
        area: approx(s.area().to_f64()),
    }
}

impl SurfaceFile {
    pub fn from_surface(s: &Surface) -> Self {
        let ctx = s.context();
        SurfaceFile {
            format: SURFACE_FORMAT.into(),
            version: SURFACE_VERSION,
            field: FieldDescriptor { n: ctx.n(), conductor: ctx.conductor(), degree: ctx.degree() },
            ward: s.ward().map(|w| WardDescriptor {
                n: w.n,
                normalization: normalization_name(w.normalization).into(),
                attach: w.attach,
            }),
            polygons: s
                .polygons()
                .iter()
                .map(|p| PolygonRecord {
                    id: p.id(),
                    anchor: exact_vec(p.anchor()),
                    edges: p.edges().iter().map(exact_vec).collect(),
                })
                .collect(),
            gluings: s.gluing().pairs().into_iter().map(|(a, b)| [[a.0, a.1], [b.0, b.1]]).collect(),
            derived: derived(s),
        }
    }

    /// Rebuilds and re-validates the surface.
    pub fn to_surface(&self) -> CliResult<Surface> {
        if self.format != SURFACE_FORMAT {
            return Err(CliError::InvalidInput(format!("not a surface file (format `{}`)", self.format)));
        }
        if self.version != SURFACE_VERSION {
            return Err(CliError::InvalidInput(format!("unsupported surface version {}", self.version)));
        }
        let ctx = FieldContext::with_conductor(self.field.n, self.field.conductor)?;
        if ctx.degree() != self.field.degree {
            return Err(CliError::InvalidInput("field degree does not match the conductor".into()));
        }
        let polygons = self
            .polygons
            .iter()
            .map(|p| {
                let edges = p.edges.iter().map(|e| read_vec(&ctx, e)).collect::<CliResult<Vec<_>>>()?;
                Ok(Polygon::new(p.id, read_vec(&ctx, &p.anchor)?, edges)?)
            })
            .collect::<CliResult<Vec<_>>>()?;
        let pairs: Vec<_> = self.gluings.iter().map(|[a, b]| ((a[0], a[1]), (b[0], b[1]))).collect();
        let ward = match &self.ward {
            None => None,
            Some(w) => Some(WardInfo {
                n: w.n,
                normalization: match w.normalization.as_str() {
                    "unit-sides" => Normalization::UnitSides,
                    "hooper" => Normalization::Hooper,
                    o => return Err(CliError::InvalidInput(format!("unknown normalization `{o}`"))),
                },
                attach: w.attach,
            }),
        };
        let s = Surface::new(ctx, polygons, &pairs, ward)?;
        if derived(&s) != self.derived {
            return Err(CliError::InvalidInput("derived data does not match the polygons".into()));
        }
        Ok(s)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> CliResult<Self> {
        Ok(serde_json::from_str(text)?)
    }
}
