use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use fockphase::channels::lossy_dephased_density;
use fockphase::detection::parity_expectation;
use fockphase::metrology::{self, report};
use fockphase::NoiseParams;
use rayon::prelude::*;

use crate::table::{Cell, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Sensitivity,
    Parity,
    Visibility,
    Qfi,
    Report,
}

impl FromStr for Quantity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "sensitivity" => Ok(Self::Sensitivity),
            "parity" => Ok(Self::Parity),
            "visibility" => Ok(Self::Visibility),
            "qfi" => Ok(Self::Qfi),
            "report" => Ok(Self::Report),
            other => Err(format!(
                "unknown quantity {other:?} (sensitivity, parity, visibility, qfi, report)"
            )),
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Sensitivity => "sensitivity",
            Self::Parity => "parity",
            Self::Visibility => "visibility",
            Self::Qfi => "qfi",
            Self::Report => "report",
        })
    }
}

impl Quantity {
    /// Phase-independent quantities get one row per Γ.
    pub fn uses_phase(self) -> bool {
        !matches!(self, Self::Visibility | Self::Qfi)
    }

    pub fn header(self) -> Vec<&'static str> {
        let mut h = vec!["m", "m_prime", "gamma", "dephase_len", "t_a", "t_b"];
        h.extend_from_slice(match self {
            Self::Sensitivity => &["phi", "sensitivity", "qcrb", "snl", "hl"][..],
            Self::Parity => &["phi", "parity"],
            Self::Visibility => &["visibility"],
            Self::Qfi => &["qfi", "qcrb"],
            Self::Report => &["phi", "sensitivity", "visibility", "qfi", "qcrb", "snl", "hl"],
        });
        h
    }
}

/// Phase grid: `steps` points on `[start, stop]`, or strictly inside it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseGrid {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
    pub interior: bool,
}

impl PhaseGrid {
    pub fn closed(start: f64, stop: f64, steps: usize) -> Self {
        Self {
            start,
            stop,
            steps,
            interior: false,
        }
    }

    pub fn open(start: f64, stop: f64, steps: usize) -> Self {
        Self {
            start,
            stop,
            steps,
            interior: true,
        }
    }

    pub fn points(&self) -> Vec<f64> {
        let span = self.stop - self.start;
        if self.interior {
            let d = span / (self.steps + 1) as f64;
            (1..=self.steps).map(|i| self.start + i as f64 * d).collect()
        } else {
            let d = span / (self.steps - 1) as f64;
            (0..self.steps).map(|i| self.start + i as f64 * d).collect()
        }
    }
}

/// `n` evenly spaced values from `a` to `b` inclusive.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    PhaseGrid::closed(a, b, n).points()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub m: usize,
    pub m_prime: usize,
    pub phi: PhaseGrid,
    pub gammas: Vec<f64>,
    pub dephase_len: f64,
    pub t_a: f64,
    pub t_b: f64,
    pub quantity: Quantity,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpecError(pub String);

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for SpecError {}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), SpecError> {
        let bad = |msg: String| Err(SpecError(msg));
        if self.m <= self.m_prime {
            return bad(format!("need m > m' (got m={}, m'={})", self.m, self.m_prime));
        }
        if self.gammas.is_empty() {
            return bad("gamma list is empty".into());
        }
        if self.quantity.uses_phase() {
            if self.phi.steps < 2 {
                return bad(format!("steps must be at least 2 (got {})", self.phi.steps));
            }
            if self.phi.start.partial_cmp(&self.phi.stop) != Some(std::cmp::Ordering::Less) {
                return bad(format!(
                    "phi_start must be below phi_stop (got {} and {})",
                    self.phi.start, self.phi.stop
                ));
            }
        }
        for &g in &self.gammas {
            NoiseParams::new(g, self.dephase_len, self.t_a, self.t_b)
                .map_err(|e| SpecError(e.to_string()))?;
        }
        Ok(())
    }

    fn params(&self, gamma: f64) -> NoiseParams {
        NoiseParams::new(gamma, self.dephase_len, self.t_a, self.t_b)
            .expect("validated before the sweep")
    }
}

/// One row per (Γ, φ) grid index, Γ-major; parallel over rows.
pub fn run_sweep(spec: &SweepSpec) -> anyhow::Result<Table> {
    spec.validate()?;
    let phis = if spec.quantity.uses_phase() {
        spec.phi.points()
    } else {
        vec![f64::NAN]
    };
    let grid: Vec<(f64, f64)> = spec
        .gammas
        .iter()
        .flat_map(|&g| phis.iter().map(move |&p| (g, p)))
        .collect();
    let rows = grid
        .par_iter()
        .map(|&(g, phi)| row(spec.m, spec.m_prime, &spec.params(g), phi, spec.quantity))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let mut table = Table::new(spec.quantity.header());
    table.rows = rows;
    Ok(table)
}

fn row(m: usize, mp: usize, p: &NoiseParams, phi: f64, q: Quantity) -> anyhow::Result<Vec<Cell>> {
    let mut cells = vec![
        Cell::Int(m),
        Cell::Int(mp),
        Cell::Real(p.gamma()),
        Cell::Real(p.dephase_len()),
        Cell::Real(p.t_a()),
        Cell::Real(p.t_b()),
    ];
    let reals: Vec<f64> = match q {
        Quantity::Sensitivity => {
            let r = report(m, mp, p, phi)?;
            vec![phi, r.sensitivity, r.qcrb, r.snl, r.hl]
        }
        Quantity::Parity => {
            let rho = lossy_dephased_density(m, mp, phi, p)?;
            vec![phi, parity_expectation(&rho, true)?]
        }
        Quantity::Visibility => vec![metrology::visibility(m, mp, p)?],
        Quantity::Qfi => {
            let r = report(m, mp, p, 0.0)?;
            vec![r.qfi, r.qcrb]
        }
        Quantity::Report => {
            let r = report(m, mp, p, phi)?;
            vec![phi, r.sensitivity, r.visibility, r.qfi, r.qcrb, r.snl, r.hl]
        }
    };
    cells.extend(reals.into_iter().map(Cell::Real));
    Ok(cells)
}

fn concat(tables: Vec<Table>) -> Table {
    let mut out = Table::new(tables[0].header.clone());
    for t in tables {
        out.rows.extend(t.rows);
    }
    out
}

pub const FIG2_STATES: [(usize, usize); 2] = [(5, 1), (4, 0)];
pub const FIG2_GAMMAS: [f64; 3] = [0.1, 0.3, 0.5];
pub const FIG2_STEPS: usize = 200;
pub const FIG4_N: [usize; 4] = [2, 4, 6, 8];

/// Lossless sensitivity of (5,1) and (4,0) on 200 interior phases of (0, π/2).
pub fn fig2() -> anyhow::Result<Table> {
    let tables = FIG2_STATES
        .iter()
        .map(|&(m, mp)| {
            run_sweep(&SweepSpec {
                m,
                m_prime: mp,
                phi: PhaseGrid::open(0.0, PI / 2.0, FIG2_STEPS),
                gammas: FIG2_GAMMAS.to_vec(),
                dephase_len: 1.0,
                t_a: 1.0,
                t_b: 1.0,
                quantity: Quantity::Sensitivity,
            })
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok(concat(tables))
}

/// Optimal sensitivity `δφ(π/2Δm)` against Γ ∈ [0, 0.1].
pub fn fig3() -> anyhow::Result<Table> {
    let gammas = linspace(0.0, 0.1, 101);
    let mut table = Table::new(Quantity::Sensitivity.header());
    for (m, mp) in FIG2_STATES {
        let phi = metrology::optimal_phase(m, mp)?;
        let rows = gammas
            .par_iter()
            .map(|&g| row(m, mp, &NoiseParams::lossless(g, 1.0)?, phi, Quantity::Sensitivity))
            .collect::<anyhow::Result<Vec<_>>>()?;
        table.rows.extend(rows);
    }
    Ok(table)
}

/// N00N visibility against Γ ∈ [0, 0.5] for N = 2, 4, 6, 8.
pub fn fig4() -> anyhow::Result<Table> {
    let tables = FIG4_N
        .iter()
        .map(|&n| {
            run_sweep(&SweepSpec {
                m: n,
                m_prime: 0,
                phi: PhaseGrid::closed(0.0, 1.0, 2),
                gammas: linspace(0.0, 0.5, 51),
                dephase_len: 1.0,
                t_a: 1.0,
                t_b: 1.0,
                quantity: Quantity::Visibility,
            })
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok(concat(tables))
}

/// Per-Γ minimum of the sensitivity column, for a one-line summary.
pub fn summarize(table: &Table) -> Vec<String> {
    let (Some(gi), Some(si)) = (table.column("gamma"), table.column("sensitivity")) else {
        return vec![format!("{} rows", table.rows.len())];
    };
    let pi = table.column("phi");
    let mut best: Vec<(usize, usize, f64, f64, f64)> = Vec::new();
    for r in &table.rows {
        let (Cell::Int(m), Cell::Int(mp), Cell::Real(g), Cell::Real(s)) = (&r[0], &r[1], &r[gi], &r[si])
        else {
            continue;
        };
        let phi = match pi.map(|i| &r[i]) {
            Some(Cell::Real(p)) => *p,
            _ => f64::NAN,
        };
        match best.iter_mut().find(|b| b.0 == *m && b.1 == *mp && b.2 == *g) {
            Some(b) if *s < b.3 => *b = (*m, *mp, *g, *s, phi),
            Some(_) => {}
            None => best.push((*m, *mp, *g, *s, phi)),
        }
    }
    best.into_iter()
        .map(|(m, mp, g, s, phi)| format!("({m},{mp}) gamma={g}: min sensitivity {s:.6} at phi={phi:.6}"))
        .collect()
}
