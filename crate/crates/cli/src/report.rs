//! JSON reports: exact values with decimal approximations beside them.

use serde::Serialize;
use ward_core::affine::{OrbitVerdict, Witness};
use ward_core::flows::CylinderDecomposition;
use ward_core::periodic::{Classification, Label};
use ward_core::{FieldElement, Surface, SurfacePoint};

use crate::pointspec::{approx, coefficient_strings};

pub const REPORT_VERSION: u32 = 1;
/// Witnesses included in a classification report.
pub const WITNESS_SAMPLE: usize = 20;

#[derive(Clone, Debug, Serialize)]
pub struct Exact {
    pub coefficients: Vec<String>,
    pub approx: String,
}

impl Exact {
    pub fn of(x: &FieldElement) -> Self {
        Exact { coefficients: coefficient_strings(x), approx: approx(x.to_f64()) }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PointRecord {
    pub polygon: usize,
    /// Vertex class, for singular or marked points.
    pub vertex: Option<usize>,
    pub x: Exact,
    pub y: Exact,
}

impl PointRecord {
    pub fn of(p: &SurfacePoint) -> Self {
        PointRecord { polygon: p.polygon, vertex: p.vertex, x: Exact::of(&p.pos.x), y: Exact::of(&p.pos.y) }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SurfaceSummary {
    pub n: Option<u32>,
    pub genus: u32,
    pub polygons: usize,
}

impl SurfaceSummary {
    pub fn of(s: &Surface) -> Self {
        SurfaceSummary { n: s.ward().map(|w| w.n), genus: s.genus(), polygons: s.polygons().len() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StripRecord {
    pub polygon: usize,
    pub left_edge: usize,
    pub right_edge: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CylinderRecord {
    pub id: usize,
    pub width: Exact,
    pub height: Exact,
    pub modulus: Exact,
    pub strips: Vec<StripRecord>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub format: &'static str,
    pub version: u32,
    pub surface: SurfaceSummary,
    pub direction: String,
    pub direction_vector: [Exact; 2],
    pub cylinder_count: usize,
    pub moduli_commensurate: bool,
    pub cylinders: Vec<CylinderRecord>,
}

impl DecompositionReport {
    pub fn new(s: &Surface, label: &str, d: &CylinderDecomposition) -> Self {
        let v = d.direction().vector();
        DecompositionReport {
            format: "ward-decomposition",
            version: REPORT_VERSION,
            surface: SurfaceSummary::of(s),
            direction: label.into(),
            direction_vector: [Exact::of(&v.x), Exact::of(&v.y)],
            cylinder_count: d.cylinders().len(),
            moduli_commensurate: d.moduli_commensurate(),
            cylinders: d
                .cylinders()
                .iter()
                .map(|c| CylinderRecord {
                    id: c.id,
                    width: Exact::of(&c.width),
                    height: Exact::of(&c.height),
                    modulus: Exact::of(&c.modulus),
                    strips: c
                        .strips
                        .iter()
                        .map(|st| StripRecord { polygon: st.polygon, left_edge: st.left_edge, right_edge: st.right_edge })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn table(&self) -> String {
        let mut out = format!("direction {}: {} cylinders\n", self.direction, self.cylinder_count);
        out.push_str("id  width          height         modulus        (approx)\n");
        for c in &self.cylinders {
            out.push_str(&format!(
                "{:<3} {:<14} {:<14} {}\n",
                c.id,
                strip_marker(&c.width.approx),
                strip_marker(&c.height.approx),
                strip_marker(&c.modulus.approx)
            ));
        }
        out
    }
}

fn strip_marker(s: &str) -> &str {
    s.trim_end_matches(" (approx)")
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessRecord {
    pub start: PointRecord,
    pub word: String,
    pub word_ascii: String,
    pub image: PointRecord,
    pub cylinder: usize,
    pub ratio: Exact,
}

impl WitnessRecord {
    pub fn of(start: &SurfacePoint, w: &Witness) -> Self {
        WitnessRecord {
            start: PointRecord::of(start),
            word: w.word.to_string(),
            word_ascii: w.word.to_ascii(),
            image: PointRecord::of(&w.image),
            cylinder: w.cylinder,
            ratio: Exact::of(&w.ratio),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SurvivorRecord {
    pub point: PointRecord,
    pub label: &'static str,
    pub orbit_size: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Parameters {
    pub denominator_bound: u32,
    pub cap: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Table {
    pub n: u32,
    pub singularities: usize,
    pub centers: usize,
    pub total: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub format: &'static str,
    pub version: u32,
    pub surface: SurfaceSummary,
    pub parameters: Parameters,
    pub candidates: usize,
    pub survivors: Vec<SurvivorRecord>,
    pub eliminated: usize,
    pub inconclusive: Vec<PointRecord>,
    pub witness_sample: Vec<WitnessRecord>,
    pub table: Table,
    pub statement: String,
    pub elapsed_seconds: f64,
}

impl ClassificationReport {
    pub fn new(s: &Surface, c: &Classification) -> Self {
        let step = (c.eliminated.len() / WITNESS_SAMPLE).max(1);
        ClassificationReport {
            format: "ward-classification",
            version: REPORT_VERSION,
            surface: SurfaceSummary::of(s),
            parameters: Parameters { denominator_bound: c.denominator_bound, cap: c.cap },
            candidates: c.candidates,
            survivors: c
                .survivors
                .iter()
                .map(|sv| SurvivorRecord { point: PointRecord::of(&sv.point), label: sv.label.as_str(), orbit_size: sv.orbit_size })
                .collect(),
            eliminated: c.eliminated.len(),
            inconclusive: c.inconclusive.iter().map(PointRecord::of).collect(),
            witness_sample: c
                .eliminated
                .iter()
                .step_by(step)
                .take(WITNESS_SAMPLE)
                .map(|(p, w)| WitnessRecord::of(p, w))
                .collect(),
            table: Table {
                n: c.n,
                singularities: c.count(Label::Singularity),
                centers: c.count(Label::PolygonCenter),
                total: c.survivors.len(),
            },
            statement: format!(
                "Periodic points have rational heights in every cylinder of a parabolic direction. \
                 Among points whose heights have denominator at most {} in both decompositions, \
                 the classification is complete; larger denominators are not covered.",
                c.denominator_bound
            ),
            elapsed_seconds: c.elapsed.as_secs_f64(),
        }
    }

    pub fn table(&self) -> String {
        let t = &self.table;
        let mut out = format!(
            "{:>3}  {:>14}  {:>8}  {:>5}\n{:>3}  {:>14}  {:>8}  {:>5}\n",
            "n", "#singularities", "#centers", "total", t.n, t.singularities, t.centers, t.total
        );
        out.push_str(&format!(
            "candidates {}, eliminated {}, inconclusive {}\n",
            self.candidates,
            self.eliminated,
            self.inconclusive.len()
        ));
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitReport {
    pub format: &'static str,
    pub version: u32,
    pub surface: SurfaceSummary,
    pub start: PointRecord,
    pub word: Option<String>,
    pub verdict: &'static str,
    pub points: Vec<PointRecord>,
    pub visited: usize,
    pub witness: Option<WitnessRecord>,
}

impl OrbitReport {
    pub fn new(s: &Surface, start: &SurfacePoint, word: Option<String>, v: &OrbitVerdict) -> Self {
        let (verdict, points, visited, witness) = match v {
            OrbitVerdict::Finite { points } => ("finite", points.iter().map(PointRecord::of).collect(), points.len(), None),
            OrbitVerdict::Infinite { witness, visited } => {
                ("infinite", Vec::new(), *visited, Some(WitnessRecord::of(start, witness)))
            }
            OrbitVerdict::Inconclusive { visited, .. } => ("inconclusive", Vec::new(), *visited, None),
        };
        OrbitReport {
            format: "ward-orbit",
            version: REPORT_VERSION,
            surface: SurfaceSummary::of(s),
            start: PointRecord::of(start),
            word,
            verdict,
            points,
            visited,
            witness,
        }
    }

    pub fn text(&self) -> String {
        let mut out = format!("verdict: {} (visited {})\n", self.verdict, self.visited);
        for p in &self.points {
            out.push_str(&format!("  polygon {} ({}, {})\n", p.polygon, strip_marker(&p.x.approx), strip_marker(&p.y.approx)));
        }
        if let Some(w) = &self.witness {
            out.push_str(&format!(
                "witness: {} sends the point to height ratio {} in cylinder {}\n",
                w.word, w.ratio.approx, w.cylinder
            ));
        }
        out
    }
}
