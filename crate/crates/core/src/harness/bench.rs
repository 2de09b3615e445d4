//! Query benchmarks with inline oracle checks and cost-law fits.

use std::fmt::Write as _;
use std::time::Instant;

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decomp::{decompose_subdivision, Method};
use crate::error::{Error, Result};
use crate::geom::{Location, Point};
use crate::quadtree::QuadtreePl;
use crate::subdivision::Subdivision;
use crate::weighted::{assign_weights, floored_gammas, BuildOptions, WeightPolicy, WeightedPl};

use super::compute_entropy;

/// Queries closer than this (relative to the bounding square) to an edge
/// are redrawn.
pub const MIN_QUERY_DIST_REL: f64 = 1e-9;
/// Buckets with fewer samples are reported but left out of fits.
pub const MIN_BUCKET: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Structure {
    #[default]
    Weighted,
    Quadtree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QueryMode {
    #[default]
    Uniform,
    /// Face drawn by probability, then a uniform point inside it.
    PerFace,
    /// Points at log-uniform distances from random edges.
    NearBoundary,
}

/// A built structure over one subdivision.
#[derive(Debug, Clone)]
pub enum Built {
    Weighted { pl: WeightedPl, alphas: Vec<f64>, gammas: Vec<f64> },
    Quadtree(QuadtreePl),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QueryRecord {
    pub qid: usize,
    pub p: Point,
    pub face: Option<usize>,
    pub cost: usize,
    /// Distance to the nearest edge, in the structure's units.
    pub d: f64,
    /// Cost-law abscissa, see [`Built::law_x`].
    pub x: f64,
    /// Weight of the region answering the query, if any.
    pub weight: Option<f64>,
    /// Distance certificate outcome, when one applies.
    pub cert: Option<bool>,
}

impl Built {
    pub fn build(sub: &Subdivision, structure: Structure, method: Method, rotate_gp: bool, seed: u64) -> Result<Self> {
        match structure {
            Structure::Weighted => {
                let decomps = decompose_subdivision(sub, method, rotate_gp)?;
                let alphas = decomps.iter().map(|d| d.alpha).collect();
                let regions = assign_weights(sub, &decomps, WeightPolicy::Floor)?;
                let pl = WeightedPl::build(sub, regions, BuildOptions { seed, weighted: true })?;
                Ok(Built::Weighted { pl, alphas, gammas: floored_gammas(&sub.gammas(), sub.n()) })
            }
            Structure::Quadtree => Ok(Built::Quadtree(QuadtreePl::build(sub, seed)?)),
        }
    }

    /// Search nodes (DAG nodes, or tree nodes plus fallback DAG nodes).
    pub fn size(&self) -> usize {
        match self {
            Built::Weighted { pl, .. } => pl.dag().node_count(),
            Built::Quadtree(q) => q.tree().nodes().len() + q.fallback().dag().node_count(),
        }
    }

    /// `log2(area(P) / (gamma d^2))` for the weighted structure,
    /// `min(log2 n, 1 + log2(1/d^2))` in unit-square units for the quadtree.
    pub fn law_x(&self, sub: &Subdivision, face: Option<usize>, d: f64) -> f64 {
        match self {
            Built::Weighted { gammas, .. } => match face {
                Some(f) => (sub.faces()[f].polygon.area() / (gammas[f] * d * d)).log2(),
                None => f64::NAN,
            },
            Built::Quadtree(_) => {
                let du = d / sub.bounds().size;
                (sub.n().max(2) as f64).log2().min(1.0 - 2.0 * du.log2())
            }
        }
    }

    pub fn locate(&self, sub: &Subdivision, qid: usize, p: Point) -> Result<QueryRecord> {
        let d = sub.dist_to_edges(p);
        let (face, cost, weight, cert) = match self {
            Built::Weighted { pl, alphas, .. } => {
                let a = pl.query(p)?;
                let (weight, cert) = match a.region {
                    Some(r) => {
                        let reg = &pl.regions()[r];
                        let area = crate::geom::loop_signed_area(&reg.vertices);
                        (Some(reg.w), Some(area >= alphas[reg.face] * d * d * (1.0 - 1e-6)))
                    }
                    None => (None, None),
                };
                (a.face, a.stats.visited_nodes, weight, cert)
            }
            Built::Quadtree(q) => {
                let a = q.query(p)?;
                let du = d / sub.bounds().size;
                let cert = (a.fallback.is_some() || a.depth >= 1).then(|| du <= a.distance_bound(q.unit_subdivision().n()));
                (a.face, a.cost, None, cert)
            }
        };
        Ok(QueryRecord { qid, p, face, cost, d, x: self.law_x(sub, face, d), weight, cert })
    }
}

/// `m` query points at distance at least `MIN_QUERY_DIST_REL` from all edges.
pub fn gen_queries(sub: &Subdivision, mode: QueryMode, m: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let b = sub.bounds();
    let min_d = MIN_QUERY_DIST_REL * b.size;
    let uniform = |rng: &mut ChaCha8Rng| b.min + Point::new(rng.gen::<f64>() * b.size, rng.gen::<f64>() * b.size);
    let by_face = WeightedIndex::new(sub.faces().iter().map(|f| f.gamma.max(1e-300))).ok();
    let mut out = Vec::with_capacity(m);
    let mut tries = 0usize;
    while out.len() < m {
        tries += 1;
        let p = match mode {
            QueryMode::Uniform => uniform(&mut rng),
            QueryMode::PerFace => match &by_face {
                Some(w) => {
                    let f = &sub.faces()[w.sample(&mut rng)].polygon;
                    let (lo, hi) = f.bbox();
                    let mut p = lo;
                    for _ in 0..1000 {
                        p = Point::new(rng.gen_range(lo.x..=hi.x), rng.gen_range(lo.y..=hi.y));
                        if f.contains(p) == Location::Inside {
                            break;
                        }
                    }
                    p
                }
                None => uniform(&mut rng),
            },
            QueryMode::NearBoundary => {
                let es = sub.edges();
                if es.is_empty() {
                    uniform(&mut rng)
                } else {
                    let e = es[rng.gen_range(0..es.len())];
                    let t: f64 = rng.gen();
                    let dir = e.b - e.a;
                    let nrm = Point::new(-dir.y, dir.x) * (1.0 / dir.norm());
                    let dist = b.size * 10f64.powf(-rng.gen_range(0.0..7.0));
                    let s = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
                    e.a.lerp(e.b, t) + nrm * (s * dist)
                }
            }
        };
        if b.contains(p) && sub.dist_to_edges(p) >= min_d {
            out.push(p);
        } else if tries > 1000 * (m + 10) {
            break;
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct BucketRow {
    /// Bucket `[lo, lo + 1)` of the bucketed quantity.
    pub lo: f64,
    pub count: usize,
    pub mean_x: f64,
    pub mean_cost: f64,
    pub max_cost: usize,
    pub low_confidence: bool,
}

/// `mean_cost ~ a + b * mean_x` over the confident buckets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fit {
    pub a: f64,
    pub b: f64,
    pub r2: f64,
    pub buckets: usize,
}

/// Ordinary least squares; `None` with fewer than two points or no spread.
pub fn ols(pts: &[(f64, f64)]) -> Option<Fit> {
    let n = pts.len() as f64;
    if pts.len() < 2 {
        return None;
    }
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let b = sxy / sxx;
    let a = my - b * mx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Some(Fit { a, b, r2, buckets: pts.len() })
}

/// Unit-width buckets of `key`, skipping non-finite keys.
pub fn bucketize(recs: &[QueryRecord], key: impl Fn(&QueryRecord) -> Option<f64>) -> Vec<BucketRow> {
    let mut m: std::collections::BTreeMap<i64, (usize, f64, f64, usize)> = std::collections::BTreeMap::new();
    for r in recs {
        let Some(k) = key(r).filter(|k| k.is_finite()) else { continue };
        let e = m.entry(k.floor() as i64).or_insert((0, 0.0, 0.0, 0));
        e.0 += 1;
        e.1 += r.x;
        e.2 += r.cost as f64;
        e.3 = e.3.max(r.cost);
    }
    m.into_iter()
        .map(|(lo, (c, sx, sc, mx))| BucketRow {
            lo: lo as f64,
            count: c,
            mean_x: sx / c as f64,
            mean_cost: sc / c as f64,
            max_cost: mx,
            low_confidence: c < MIN_BUCKET,
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BenchConfig {
    pub structure: Structure,
    pub mode: QueryMode,
    pub queries: usize,
    pub seed: u64,
    pub method: Method,
    pub rotate_gp: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub config: BenchConfig,
    pub n: usize,
    pub faces: usize,
    pub entropy: f64,
    pub size: usize,
    pub queries: usize,
    pub mean_cost: f64,
    pub max_cost: usize,
    /// Cost-law buckets by the abscissa of [`Built::law_x`].
    pub law_buckets: Vec<BucketRow>,
    /// Buckets by `log2(1 / w)` of the answering region (weighted only).
    pub weight_buckets: Vec<BucketRow>,
    pub fit: Option<Fit>,
    pub cert_checked: usize,
    pub cert_violations: usize,
    pub build_ms: f64,
    pub query_ms: f64,
}

/// Builds the structure, runs the queries, checks every answer against
/// brute force and fits the cost law. Any oracle mismatch aborts.
pub fn run_bench(sub: &Subdivision, cfg: &BenchConfig) -> Result<BenchReport> {
    let t0 = Instant::now();
    let built = Built::build(sub, cfg.structure, cfg.method, cfg.rotate_gp, cfg.seed)?;
    let build_ms = t0.elapsed().as_secs_f64() * 1e3;
    let pts = gen_queries(sub, cfg.mode, cfg.queries, cfg.seed);
    let t1 = Instant::now();
    let recs = pts.iter().enumerate().map(|(i, &p)| built.locate(sub, i, p)).collect::<Result<Vec<_>>>()?;
    let query_ms = t1.elapsed().as_secs_f64() * 1e3;
    for r in &recs {
        let want = sub.locate_brute(r.p);
        if r.face != want {
            return Err(Error::OracleMismatch { qid: r.qid, point: r.p, got: r.face, want });
        }
    }
    Ok(summarize(sub, cfg, &built, &recs, build_ms, query_ms))
}

pub fn summarize(sub: &Subdivision, cfg: &BenchConfig, built: &Built, recs: &[QueryRecord], build_ms: f64, query_ms: f64) -> BenchReport {
    let law_buckets = bucketize(recs, |r| Some(r.x));
    let weight_buckets = bucketize(recs, |r| r.weight.map(|w| -w.log2()));
    let pts: Vec<(f64, f64)> =
        law_buckets.iter().filter(|b| !b.low_confidence).map(|b| (b.mean_x, b.mean_cost)).collect();
    let m = recs.len().max(1) as f64;
    BenchReport {
        config: *cfg,
        n: sub.n(),
        faces: sub.faces().len(),
        entropy: compute_entropy(sub),
        size: built.size(),
        queries: recs.len(),
        mean_cost: recs.iter().map(|r| r.cost as f64).sum::<f64>() / m,
        max_cost: recs.iter().map(|r| r.cost).max().unwrap_or(0),
        law_buckets,
        weight_buckets,
        fit: ols(&pts),
        cert_checked: recs.iter().filter(|r| r.cert.is_some()).count(),
        cert_violations: recs.iter().filter(|r| r.cert == Some(false)).count(),
        build_ms,
        query_ms,
    }
}

impl BenchReport {
    /// `key=value` lines. Timings are left out unless asked for, so that
    /// reports from equal seeds compare byte for byte.
    pub fn to_kv(&self, timings: bool) -> String {
        let mut s = String::new();
        let c = &self.config;
        let _ = writeln!(s, "structure={:?}", c.structure);
        let _ = writeln!(s, "queries.mode={:?}", c.mode);
        let _ = writeln!(s, "seed={}", c.seed);
        let _ = writeln!(s, "n={}", self.n);
        let _ = writeln!(s, "faces={}", self.faces);
        let _ = writeln!(s, "entropy_bits={}", self.entropy);
        let _ = writeln!(s, "size_nodes={}", self.size);
        let _ = writeln!(s, "queries={}", self.queries);
        let _ = writeln!(s, "cost.mean={}", self.mean_cost);
        let _ = writeln!(s, "cost.max={}", self.max_cost);
        if let Some(f) = self.fit {
            let _ = writeln!(s, "fit.a={}\nfit.b={}\nfit.r2={}\nfit.buckets={}", f.a, f.b, f.r2, f.buckets);
        }
        let _ = writeln!(s, "cert.checked={}", self.cert_checked);
        let _ = writeln!(s, "cert.violations={}", self.cert_violations);
        for (name, rows) in [("law", &self.law_buckets), ("weight", &self.weight_buckets)] {
            for b in rows.iter() {
                let _ = writeln!(
                    s,
                    "{name}.bucket.{}=count:{} mean_x:{} mean_cost:{} max_cost:{}{}",
                    b.lo,
                    b.count,
                    b.mean_x,
                    b.mean_cost,
                    b.max_cost,
                    if b.low_confidence { " low_confidence" } else { "" }
                );
            }
        }
        if timings {
            let _ = writeln!(s, "time.build_ms={:.3}\ntime.query_ms={:.3}", self.build_ms, self.query_ms);
        }
        s
    }

    /// Human-readable table.
    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let c = &self.config;
        let _ = writeln!(s, "{:?} structure, {:?} queries, seed {}", c.structure, c.mode, c.seed);
        let _ = writeln!(s, "n = {} edges, {} faces, H = {:.4} bits, {} nodes", self.n, self.faces, self.entropy, self.size);
        let _ = writeln!(s, "cost (visited nodes): mean {:.3}, max {}", self.mean_cost, self.max_cost);
        let _ = writeln!(s, "{:>8} {:>8} {:>10} {:>10} {:>6}", "bucket", "count", "mean_x", "mean_cost", "max");
        for b in &self.law_buckets {
            let _ = writeln!(
                s,
                "{:>8} {:>8} {:>10.3} {:>10.3} {:>6}{}",
                b.lo,
                b.count,
                b.mean_x,
                b.mean_cost,
                b.max_cost,
                if b.low_confidence { "  (low confidence)" } else { "" }
            );
        }
        match self.fit {
            Some(f) => {
                let _ = writeln!(s, "fit: cost = {:.3} + {:.3} x, R^2 = {:.4} over {} buckets", f.a, f.b, f.r2, f.buckets);
            }
            None => {
                let _ = writeln!(s, "fit: not enough populated buckets");
            }
        }
        let _ = writeln!(s, "certificates: {} checked, {} violated", self.cert_checked, self.cert_violations);
        let _ = writeln!(s, "build {:.1} ms, queries {:.1} ms", self.build_ms, self.query_ms);
        s
    }
}
