//! Command implementations.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ward_core::affine::{Letter, OrbitVerdict, WardAction, Word};
use ward_core::flows::{cylinder_decomposition, Direction};
use ward_core::periodic::search_periodic;
use ward_core::{build_ward, FieldContext, Surface, SurfacePoint, Vec2};

use crate::config::{CommandKind, DirectionSpec, RunConfig, SurfaceSource};
use crate::error::{CliError, CliResult};
use crate::pointspec::parse_point;
use crate::report::{ClassificationReport, DecompositionReport, OrbitReport};
use crate::serial::SurfaceFile;
use crate::svg::{decomposition_svg, survivors_svg};

/// What a command printed and whether its certification is complete.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub inconclusive: bool,
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

/// Writes `text` to `--out`, or returns it for stdout.
fn emit(cfg: &RunConfig, text: String) -> CliResult<String> {
    match &cfg.out {
        Some(p) => {
            write_file(p, &text)?;
            Ok(format!("wrote {}\n", p.display()))
        }
        None => Ok(text),
    }
}

pub fn load_surface(src: &SurfaceSource) -> CliResult<Surface> {
    match src {
        SurfaceSource::Ward(n) => Ok(build_ward(*n)?),
        SurfaceSource::Torus => Ok(Surface::square_torus(&FieldContext::new(4)?)),
        SurfaceSource::File(p) => {
            let text =
                fs::read_to_string(p).map_err(|source| CliError::Io { path: p.display().to_string(), source })?;
            SurfaceFile::from_json(&text)?.to_surface()
        }
    }
}

fn action_for(s: Surface) -> CliResult<WardAction> {
    let s = Arc::new(s);
    Ok(if s.ward().is_some() { WardAction::new(s)? } else { WardAction::twist_pair(s)? })
}

fn direction(s: &Surface, spec: &DirectionSpec) -> CliResult<Direction> {
    let ctx = s.context();
    Ok(match spec {
        DirectionSpec::Horizontal => Direction::horizontal(ctx),
        DirectionSpec::Vertical => Direction::vertical(ctx),
        DirectionSpec::Rot(k) => {
            let n = s.ward().map_or(ctx.n(), |w| w.n);
            Direction::at_angle(ctx, *k, n as i64)?
        }
    })
}

pub fn run(cfg: &RunConfig) -> CliResult<Outcome> {
    if let CommandKind::Selftest { cases } = cfg.command {
        return cmd_selftest(cfg.seed, cases);
    }
    let src = cfg.source.as_ref().ok_or_else(|| CliError::InvalidInput("no surface given".into()))?;
    let s = load_surface(src)?;
    match &cfg.command {
        CommandKind::Build => {
            let stdout = emit(cfg, SurfaceFile::from_surface(&s).to_json())?;
            Ok(Outcome { stdout, inconclusive: false })
        }
        CommandKind::Decompose => cmd_decompose(cfg, &s),
        CommandKind::Search => cmd_search(cfg, s),
        CommandKind::Orbit { point, word } => cmd_orbit(cfg, s, point, word.as_deref()),
        CommandKind::Selftest { .. } => unreachable!("handled above"),
    }
}

fn cmd_decompose(cfg: &RunConfig, s: &Surface) -> CliResult<Outcome> {
    let d = cylinder_decomposition(s, &direction(s, &cfg.direction)?)?;
    let label = cfg.direction.label();
    let report = DecompositionReport::new(s, &label, &d);
    let mut stdout = report.table();
    if let Some(p) = &cfg.svg {
        write_file(p, &decomposition_svg(s, &d, &format!("cylinders, {label}"), &cfg.render))?;
        stdout.push_str(&format!("wrote {}\n", p.display()));
    }
    let json = serde_json::to_string_pretty(&report).expect("serializable") + "\n";
    if cfg.out.is_some() {
        stdout.push_str(&emit(cfg, json)?);
    }
    Ok(Outcome { stdout, inconclusive: false })
}

fn cmd_search(cfg: &RunConfig, s: Surface) -> CliResult<Outcome> {
    if s.ward().is_none() {
        return Err(ward_core::Error::UnsupportedSurface("search needs a Ward surface".into()).into());
    }
    let a = action_for(s)?;
    let c = search_periodic(&a, cfg.denominator_bound, cfg.cap)?;
    let report = ClassificationReport::new(a.surface(), &c);
    let mut stdout = report.table();
    if let Some(p) = &cfg.svg {
        write_file(p, &survivors_svg(a.surface(), &c.survivors, "periodic points", &cfg.render))?;
        stdout.push_str(&format!("wrote {}\n", p.display()));
    }
    let json = serde_json::to_string_pretty(&report).expect("serializable") + "\n";
    if cfg.out.is_some() {
        stdout.push_str(&emit(cfg, json)?);
    }
    Ok(Outcome { stdout, inconclusive: !c.inconclusive.is_empty() })
}

fn cmd_orbit(cfg: &RunConfig, s: Surface, point: &str, word: Option<&str>) -> CliResult<Outcome> {
    let a = action_for(s)?;
    let mut p = parse_point(a.surface(), point)?;
    let mut stdout = String::new();
    if let Some(w) = word {
        let w: Word = w.parse().map_err(|e: ward_core::Error| CliError::InvalidInput(e.to_string()))?;
        p = a.apply_word(&w, &p)?;
        let (x, y) = p.pos.to_f64();
        stdout.push_str(&format!("{w} maps the point to polygon {} ({x:.10}, {y:.10})\n", p.polygon));
    }
    let v = a.orbit(&p, cfg.cap)?;
    let report = OrbitReport::new(a.surface(), &p, word.map(String::from), &v);
    stdout.push_str(&report.text());
    if cfg.out.is_some() {
        stdout.push_str(&emit(cfg, serde_json::to_string_pretty(&report).expect("serializable") + "\n")?);
    }
    Ok(Outcome { stdout, inconclusive: matches!(v, OrbitVerdict::Inconclusive { .. }) })
}

fn random_point(s: &Surface, rng: &mut ChaCha8Rng) -> CliResult<SurfacePoint> {
    let k = s.context();
    let poly = &s.polygons()[rng.gen_range(0..s.polygons().len())];
    let mut acc = Vec2::zero(k);
    let mut total = 0;
    for v in poly.vertices() {
        let w = rng.gen_range(1..=20);
        acc = acc.add(&v.scale(&k.int(w)));
        total += w;
    }
    Ok(s.locate(poly.id(), &acc.scale(&k.frac(1, total)))?)
}

fn random_word(rng: &mut ChaCha8Rng) -> Word {
    let len = rng.gen_range(0..6);
    Word((0..len).map(|_| Letter { generator: rng.gen_range(0..2), inverse: rng.gen() }).collect())
}

fn cmd_selftest(seed: u64, cases: usize) -> CliResult<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = String::new();
    let mut failures = Vec::new();
    for n in 4..=6u32 {
        let s = build_ward(n)?;
        let text = SurfaceFile::from_surface(&s).to_json();
        let round = SurfaceFile::from_surface(&SurfaceFile::from_json(&text)?.to_surface()?).to_json();
        let a = action_for(s)?;
        let full = a.psi().power(2 * n as i64);
        let (mut rot_ok, mut inv_ok, mut witnesses, mut verified) = (true, true, 0, 0);
        for _ in 0..cases {
            let p = random_point(a.surface(), &mut rng)?;
            rot_ok &= full.apply(&p)? == p;
            let w = random_word(&mut rng);
            inv_ok &= a.apply_word(&w.inverse(), &a.apply_word(&w, &p)?)? == p;
            if let OrbitVerdict::Infinite { witness, .. } = a.orbit(&p, 2_000)? {
                witnesses += 1;
                verified += a.verify_witness(&p, &witness)? as usize;
            }
        }
        let checks = [
            ("json round trip", round == text),
            ("psi^2n = id", rot_ok),
            ("words invert", inv_ok),
            ("witnesses verify", witnesses == verified),
        ];
        for (name, ok) in checks {
            out.push_str(&format!("n={n} {name}: {}\n", if ok { "ok" } else { "FAILED" }));
            if !ok {
                failures.push(format!("n={n} {name}"));
            }
        }
    }
    if failures.is_empty() {
        out.push_str(&format!("selftest passed (seed {seed}, {cases} cases per surface)\n"));
        Ok(Outcome { stdout: out, inconclusive: false })
    } else {
        print!("{out}");
        Err(CliError::Certification(failures.join(", ")))
    }
}
