//! Resource metrics, geometry sweeps and scaling fits.

mod dense;

pub use dense::{dense_compare, dense_fermion_matrix, dense_oracle_check, Codespace, DenseReport, SectorReport};

use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;

use crate::basis::{BasisChoice, BasisKind};
use crate::encoder::build_encoding;
use crate::error::{Error, Result};
use crate::fermion::{build_syk2, transform_hamiltonian, RoutingPolicy, SykCouplings};
use crate::graph::{gen_syk_geometry, qubit_count, GeometryParams, SykGeometry};
use crate::pauli::PauliSum;

/// Exact header of the sweep CSV.
pub const CSV_HEADER: &str = "geometry,n_modes,qubits,max_weight,total_weight,mean_weight,terms,seconds";

#[derive(Clone, Debug, Default, PartialEq)]
pub struct WeightStats {
    pub max_term_weight: usize,
    pub total_weight: usize,
    pub mean_weight: f64,
    pub term_count: usize,
    pub qubit_total: usize,
}

/// Weight statistics over the non-identity terms of `h`.
pub fn weight_stats(h: &PauliSum) -> WeightStats {
    let mut s = WeightStats {
        qubit_total: h.n_qubits(),
        ..Default::default()
    };
    for (p, _) in h.iter() {
        let w = p.weight();
        if w == 0 {
            continue;
        }
        s.term_count += 1;
        s.total_weight += w;
        s.max_term_weight = s.max_term_weight.max(w);
    }
    if s.term_count > 0 {
        s.mean_weight = s.total_weight as f64 / s.term_count as f64;
    }
    s
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRecord {
    pub geometry: SykGeometry,
    pub n_modes: usize,
    pub qubit_total: usize,
    pub stats: WeightStats,
    /// Wall time in seconds; zero when timing is off.
    pub seconds: f64,
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub seed: u64,
    pub max_qubits: usize,
    pub basis: BasisKind,
    pub params: GeometryParams,
    pub timing: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            seed: 1,
            max_qubits: 65536,
            basis: BasisKind::Fenwick,
            params: GeometryParams::default(),
            timing: false,
        }
    }
}

fn bench_point(kind: SykGeometry, n: usize, cfg: &SweepConfig) -> Result<BenchRecord> {
    let start = Instant::now();
    let g = gen_syk_geometry(kind, n, cfg.params)?;
    let q = qubit_count(&g);
    if q > cfg.max_qubits {
        return Err(Error::Resource(format!(
            "{} with {n} modes needs {q} qubits, cap is {}",
            kind.name(),
            cfg.max_qubits
        )));
    }
    let enc = build_encoding(&g, &BasisChoice::uniform(cfg.basis))?;
    let h = build_syk2(&SykCouplings::gaussian(n, cfg.seed))?;
    let compiled = transform_hamiltonian(&h, &enc, &RoutingPolicy::Auto)?;
    let stats = weight_stats(&compiled);
    Ok(BenchRecord {
        geometry: kind,
        n_modes: n,
        qubit_total: q,
        stats,
        seconds: if cfg.timing { start.elapsed().as_secs_f64() } else { 0.0 },
    })
}

/// One record per `(geometry, N)`, ordered as the inputs.
pub fn sweep_syk_geometries(geometries: &[SykGeometry], n_list: &[usize], cfg: &SweepConfig) -> Result<Vec<BenchRecord>> {
    let points: Vec<(SykGeometry, usize)> = geometries
        .iter()
        .flat_map(|&g| n_list.iter().map(move |&n| (g, n)))
        .collect();
    points.par_iter().map(|&(g, n)| bench_point(g, n, cfg)).collect()
}

/// Quantity fitted by [`loglog_slope`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Field {
    Qubits,
    MaxWeight,
    TotalWeight,
    MeanWeight,
    Terms,
}

impl Field {
    pub fn of(self, r: &BenchRecord) -> f64 {
        match self {
            Field::Qubits => r.qubit_total as f64,
            Field::MaxWeight => r.stats.max_term_weight as f64,
            Field::TotalWeight => r.stats.total_weight as f64,
            Field::MeanWeight => r.stats.mean_weight,
            Field::Terms => r.stats.term_count as f64,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SlopeFit {
    pub slope: f64,
    pub stderr: f64,
    pub intercept: f64,
}

/// Least-squares fit of `log y` against `log x`.
pub fn loglog_fit(points: &[(f64, f64)]) -> Result<SlopeFit> {
    if points.len() < 4 {
        return Err(Error::Verify(format!("need at least 4 points, got {}", points.len())));
    }
    if points.iter().any(|&(x, y)| !(x > 0.0 && y > 0.0)) {
        return Err(Error::Verify("log-log fit needs positive data".into()));
    }
    let n = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let stderr = (rss / (n - 2.0) / sxx).sqrt();
    Ok(SlopeFit { slope, stderr, intercept })
}

/// Slope of `log(field)` against `log(N)` over records of a single geometry.
pub fn loglog_slope(records: &[BenchRecord], field: Field) -> Result<SlopeFit> {
    if let Some(first) = records.first() {
        if records.iter().any(|r| r.geometry != first.geometry) {
            return Err(Error::Verify("records mix geometries".into()));
        }
    }
    let pts: Vec<(f64, f64)> = records.iter().map(|r| (r.n_modes as f64, field.of(r))).collect();
    loglog_fit(&pts)
}

pub fn write_csv<W: Write>(records: &[BenchRecord], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(CSV_HEADER.split(',')).map_err(io)?;
    for r in records {
        w.write_record([
            r.geometry.name().to_string(),
            r.n_modes.to_string(),
            r.qubit_total.to_string(),
            r.stats.max_term_weight.to_string(),
            r.stats.total_weight.to_string(),
            format!("{:.6}", r.stats.mean_weight),
            r.stats.term_count.to_string(),
            format!("{:.6}", r.seconds),
        ])
        .map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv(text: &str) -> Result<Vec<BenchRecord>> {
    let mut rd = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
    let header = rd.headers().map_err(|e| Error::Parse(e.to_string()))?;
    if header.iter().collect::<Vec<_>>().join(",") != CSV_HEADER {
        return Err(Error::Parse("unexpected CSV header".into()));
    }
    let mut out = Vec::new();
    for row in rd.records() {
        let row = row.map_err(|e| Error::Parse(e.to_string()))?;
        let num = |i: usize| -> Result<usize> {
            row[i].parse().map_err(|_| Error::Parse(format!("bad integer `{}`", &row[i])))
        };
        let real = |i: usize| -> Result<f64> {
            row[i].parse().map_err(|_| Error::Parse(format!("bad number `{}`", &row[i])))
        };
        let qubit_total = num(2)?;
        out.push(BenchRecord {
            geometry: SykGeometry::from_name(&row[0])?,
            n_modes: num(1)?,
            qubit_total,
            stats: WeightStats {
                max_term_weight: num(3)?,
                total_weight: num(4)?,
                mean_weight: real(5)?,
                term_count: num(6)?,
                qubit_total,
            },
            seconds: real(7)?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_sum_stats() {
        let s = weight_stats(&PauliSum::new(3));
        assert_eq!((s.max_term_weight, s.total_weight, s.term_count), (0, 0, 0));
        assert_eq!(s.mean_weight, 0.0);
    }

    #[test]
    fn slope_of_cubes() {
        let pts: Vec<(f64, f64)> = [2.0, 3.0, 5.0, 8.0, 13.0].iter().map(|&n: &f64| (n, n.powi(3))).collect();
        let fit = loglog_fit(&pts).unwrap();
        assert!((fit.slope - 3.0).abs() < 1e-12);
        assert!(fit.stderr < 1e-9);
        assert!(loglog_fit(&pts[..3]).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let cfg = SweepConfig::default();
        let recs = sweep_syk_geometries(&[SykGeometry::Linear, SykGeometry::Star], &[4, 6], &cfg).unwrap();
        let mut buf = Vec::new();
        write_csv(&recs, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with(CSV_HEADER));
        let back = read_csv(&text).unwrap();
        assert_eq!(back.len(), 4);
        for (a, b) in recs.iter().zip(&back) {
            assert_eq!(a.stats.total_weight, b.stats.total_weight);
            assert!((a.stats.mean_weight - b.stats.mean_weight).abs() < 1e-6);
        }
    }

    #[test]
    fn resource_cap() {
        let cfg = SweepConfig {
            max_qubits: 10,
            ..Default::default()
        };
        let err = sweep_syk_geometries(&[SykGeometry::Complete], &[8], &cfg).unwrap_err();
        assert_eq!(err.category(), "resource");
    }
}
