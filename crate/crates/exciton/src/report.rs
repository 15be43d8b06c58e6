//! Report pipeline: material-parameter ingestion, the full refutation run
//! (series diagnostics, constraint checks, QES solve, two-oracle
//! comparison), and deterministic CSV / JSON / plot-data emission.

use crate::error::{Error, Result};
use crate::model::{self, PhysicalParams};
use crate::oracle::{self, GridSpec};
use crate::qes;
use crate::series::{self, TailVerdict};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::Path;

/// Flat JSON config: exactly these keys, no nesting, unknown keys rejected.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialConfig {
    pub name: String,
    pub m_e: f64,
    pub m_h: f64,
    pub omega0: f64,
    pub epsilon: f64,
    pub unit_system: UnitSystem,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum UnitSystem {
    #[serde(rename = "scaled")]
    Scaled,
    #[serde(rename = "effective-atomic")]
    EffectiveAtomic,
}

impl MaterialConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("m_e", self.m_e),
            ("m_h", self.m_h),
            ("omega0", self.omega0),
            ("epsilon", self.epsilon),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::Parse(format!(
                    "config field `{name}` must be a positive finite number, got {v}"
                )));
            }
        }
        Ok(())
    }

    /// hbar = e^2 = 1 in both supported unit systems; they differ only in
    /// how omega0 is to be read (documented in the report header), not in
    /// the dimensionless reduction.
    pub fn to_physical(&self) -> Result<PhysicalParams> {
        PhysicalParams::new(self.m_e, self.m_h, self.omega0, self.epsilon)
    }
}

/// Parses and validates a config file. serde_json errors carry line/column
/// information for malformed input.
pub fn parse_config(path: &Path) -> Result<MaterialConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse_config_str(&text)
}

pub fn parse_config_str(text: &str) -> Result<MaterialConfig> {
    let cfg: MaterialConfig =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("config: {e}")))?;
    cfg.validate()?;
    Ok(cfg)
}

/// One row of the refutation table, per angular number m (at n_r = 0, the
/// only case for which closed forms were published).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RefutationRow {
    pub m: u32,
    pub n_r: u32,
    pub g: f64,
    pub claimed_e_eq7: f64,
    pub claimed_e_eq6: Option<f64>,
    pub corrected_e_eq10: Option<f64>,
    pub constraint_residual_eq9: f64,
    pub ode_max_residual: Option<f64>,
    pub series_termination: String,
    pub candidate_node_count: usize,
    pub oracle_eigenvalues: Vec<f64>,
    pub oracle_node_counts: Vec<usize>,
    pub matched_eigenvalue_index: Option<usize>,
    pub overlap: Option<f64>,
    pub verdict: String,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QesTableRow {
    pub m: u32,
    pub degree: usize,
    pub alpha_bar: f64,
    pub g_squared: f64,
    /// The coupling is a function of the state: the defining pathology.
    pub state_dependent_coupling: f64,
    pub energy_over_hw0: f64,
    pub exact: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RefutationReport {
    pub config_name: String,
    pub unit_system: String,
    pub g: f64,
    pub energy_unit: f64,
    pub rows: Vec<RefutationRow>,
    pub qes_points: Vec<QesTableRow>,
    pub qes_discarded_nonpositive_g2: usize,
}

const RESIDUAL_REFUTED_THRESHOLD: f64 = 1e-2;
const CONFIRMED_RESIDUAL_EQ9: f64 = 1e-10;

/// Runs the full pipeline for each requested m (n_r = 0 rows) and each
/// requested termination degree. Oracle failures are recorded per row and
/// never abort the report.
pub fn run_refutation(
    config: &MaterialConfig,
    m_list: &[u32],
    degree_list: &[usize],
    spec: GridSpec,
) -> Result<RefutationReport> {
    config.validate()?;
    let p = config.to_physical()?;
    let (d, sc) = model::to_scaled(&p)?;
    let g = sc.g;

    let mut rows = Vec::new();
    for &m in m_list {
        rows.push(build_row(m, g, &p, &d, spec));
    }

    let mut qes_rows = Vec::new();
    let mut discarded = 0usize;
    for &degree in degree_list {
        for &m in m_list {
            let solve = qes::qes_points(m, degree)?;
            discarded += solve.discarded_nonpositive_g2;
            for pt in &solve.points {
                qes_rows.push(QesTableRow {
                    m,
                    degree,
                    alpha_bar: pt.alpha_bar,
                    g_squared: pt.g_squared,
                    state_dependent_coupling: pt.g(),
                    energy_over_hw0: pt.alpha_bar / 2.0,
                    exact: pt.exact_mode,
                });
            }
        }
    }

    Ok(RefutationReport {
        config_name: config.name.clone(),
        unit_system: match config.unit_system {
            UnitSystem::Scaled => "scaled".into(),
            UnitSystem::EffectiveAtomic => "effective-atomic".into(),
        },
        g,
        energy_unit: sc.energy_unit,
        rows,
        qes_points: qes_rows,
        qes_discarded_nonpositive_g2: discarded,
    })
}

fn build_row(
    m: u32,
    g: f64,
    p: &PhysicalParams,
    d: &model::DerivedParams,
    spec: GridSpec,
) -> RefutationRow {
    let mut row = RefutationRow {
        m,
        n_r: 0,
        g,
        claimed_e_eq7: model::claimed_energy_eq7(m, p),
        claimed_e_eq6: None,
        corrected_e_eq10: None,
        constraint_residual_eq9: qes::verify_eq9(m, g),
        ode_max_residual: None,
        series_termination: String::new(),
        candidate_node_count: 0,
        oracle_eigenvalues: Vec::new(),
        oracle_node_counts: Vec::new(),
        matched_eigenvalue_index: None,
        overlap: None,
        verdict: "N/A".into(),
        error: None,
    };
    let record = |e: &Error, row: &mut RefutationRow| {
        row.error = Some(e.to_string());
    };

    row.claimed_e_eq6 = match model::claimed_energy_from_eq6(m, 0, d) {
        Ok(v) => Some(v),
        Err(e) => {
            record(&e, &mut row);
            None
        }
    };

    let alpha_eq6 = match model::scaled_quantization_condition(m, 0, g) {
        Ok(a) => a,
        Err(e) => {
            record(&e, &mut row);
            return row;
        }
    };

    let candidate = series::published_candidate(m, g);
    row.candidate_node_count = series::count_polynomial_nodes(&candidate);
    let grid = series::default_residual_grid();
    match series::candidate_residual(&candidate, alpha_eq6, g, &grid) {
        Ok(r) => row.ode_max_residual = Some(r.max_abs),
        Err(e) => record(&e, &mut row),
    }

    let tail = series::coefficients(m, g, alpha_eq6, 60).and_then(|s| series::tail_diagnostic(&s));
    let tail = match tail {
        Ok(t) => {
            row.series_termination = match t {
                TailVerdict::Terminates { degree } => format!("terminates at degree {degree}"),
                TailVerdict::Grows => "grows".into(),
                TailVerdict::Inconclusive => "inconclusive".into(),
            };
            Some(t)
        }
        Err(e) => {
            record(&e, &mut row);
            None
        }
    };

    // Oracle spectrum and matching.
    match oracle::spectrum(m, g, spec, 5) {
        Ok(sp) => {
            row.oracle_eigenvalues = sp.eigenvalues.clone();
            row.oracle_node_counts = sp.node_counts.clone();
            let mut best = None;
            for (i, &e) in sp.eigenvalues.iter().enumerate() {
                let dist = (e - alpha_eq6).abs();
                if best.map_or(true, |(_, bd)| dist < bd) {
                    best = Some((i, dist));
                }
            }
            if let Some((i, _)) = best {
                row.matched_eigenvalue_index = Some(i);
                if !sp.eigenfunctions[i].is_empty() {
                    let h = sp.spec.h();
                    let cand_grid: Vec<f64> = sp
                        .spec
                        .points()
                        .iter()
                        .map(|&rho| rho.sqrt() * candidate.eval(rho))
                        .collect();
                    let norm = (h * cand_grid.iter().map(|x| x * x).sum::<f64>()).sqrt();
                    let overlap = oracle::grid_overlap(&sp.eigenfunctions[i], &cand_grid, h) / norm;
                    row.overlap = Some(overlap);
                }
            }
        }
        Err(e) => record(&e, &mut row),
    }

    // Verdict per the agreement rule: both refutation signals must agree.
    let eq9_holds = row.constraint_residual_eq9.abs() < CONFIRMED_RESIDUAL_EQ9;
    row.verdict = match tail {
        Some(TailVerdict::Terminates { .. }) if eq9_holds => {
            row.corrected_e_eq10 = Some(model::corrected_energy_eq10(m, p.omega0, p.hbar));
            "CONFIRMED: QES point".into()
        }
        Some(TailVerdict::Grows)
            if row
                .ode_max_residual
                .is_some_and(|r| r > RESIDUAL_REFUTED_THRESHOLD) =>
        {
            "REFUTED: non-terminating".into()
        }
        _ => "N/A".into(),
    };
    row
}

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

/// Formats a float with 12 significant digits, scientific notation.
pub fn fmt12(x: f64) -> String {
    format!("{x:.11e}")
}

fn fmt12_opt(x: Option<f64>) -> String {
    x.map(fmt12).unwrap_or_default()
}

pub const CSV_HEADER: &str = "m,n_r,g,claimed_E_eq7,claimed_E_eq6,corrected_E_eq10,\
constraint_residual_eq9,ode_max_residual,series_termination,candidate_node_count,\
oracle_eigenvalues,oracle_node_counts,matched_eigenvalue_index,overlap,verdict,error";

/// RFC-4180-style quoting: fields containing commas or quotes are quoted,
/// embedded quotes doubled. Line endings are LF.
fn csv_quote(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn report_to_csv(report: &RefutationReport) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in &report.rows {
        let eig = r
            .oracle_eigenvalues
            .iter()
            .map(|&e| fmt12(e))
            .collect::<Vec<_>>()
            .join(";");
        let nodes = r
            .oracle_node_counts
            .iter()
            .map(|n| n.to_string())
            .collect::<Vec<_>>()
            .join(";");
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.m,
            r.n_r,
            fmt12(r.g),
            fmt12(r.claimed_e_eq7),
            fmt12_opt(r.claimed_e_eq6),
            fmt12_opt(r.corrected_e_eq10),
            fmt12(r.constraint_residual_eq9),
            fmt12_opt(r.ode_max_residual),
            csv_quote(&r.series_termination),
            r.candidate_node_count,
            csv_quote(&eig),
            csv_quote(&nodes),
            r.matched_eigenvalue_index
                .map(|i| i.to_string())
                .unwrap_or_default(),
            fmt12_opt(r.overlap),
            csv_quote(&r.verdict),
            csv_quote(r.error.as_deref().unwrap_or("")),
        );
    }
    out
}

/// Parses a CSV produced by [`report_to_csv`] back into rows. Used by the
/// round-trip test and as an untrusted-input surface.
pub fn parse_report_csv(text: &str) -> Result<Vec<RefutationRow>> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty CSV".into()))?;
    if header != CSV_HEADER {
        return Err(Error::Parse("unrecognized CSV header".into()));
    }
    let mut rows = Vec::new();
    for (lineno, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields = split_csv_line(line)
            .ok_or_else(|| Error::Parse(format!("line {}: malformed quoting", lineno + 2)))?;
        if fields.len() != 16 {
            return Err(Error::Parse(format!(
                "line {}: expected 16 fields, got {}",
                lineno + 2,
                fields.len()
            )));
        }
        let pf = |i: usize| -> Result<f64> {
            fields[i]
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("line {}: field {}: {e}", lineno + 2, i + 1)))
        };
        let pf_opt = |i: usize| -> Result<Option<f64>> {
            if fields[i].is_empty() {
                Ok(None)
            } else {
                pf(i).map(Some)
            }
        };
        let pu = |i: usize| -> Result<usize> {
            fields[i]
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("line {}: field {}: {e}", lineno + 2, i + 1)))
        };
        let list_f = |i: usize| -> Result<Vec<f64>> {
            if fields[i].is_empty() {
                return Ok(Vec::new());
            }
            fields[i]
                .split(';')
                .map(|s| {
                    s.parse::<f64>().map_err(|e| {
                        Error::Parse(format!("line {}: field {}: {e}", lineno + 2, i + 1))
                    })
                })
                .collect()
        };
        let list_u = |i: usize| -> Result<Vec<usize>> {
            if fields[i].is_empty() {
                return Ok(Vec::new());
            }
            fields[i]
                .split(';')
                .map(|s| {
                    s.parse::<usize>().map_err(|e| {
                        Error::Parse(format!("line {}: field {}: {e}", lineno + 2, i + 1))
                    })
                })
                .collect()
        };
        rows.push(RefutationRow {
            m: fields[0]
                .parse()
                .map_err(|e| Error::Parse(format!("line {}: field 1: {e}", lineno + 2)))?,
            n_r: fields[1]
                .parse()
                .map_err(|e| Error::Parse(format!("line {}: field 2: {e}", lineno + 2)))?,
            g: pf(2)?,
            claimed_e_eq7: pf(3)?,
            claimed_e_eq6: pf_opt(4)?,
            corrected_e_eq10: pf_opt(5)?,
            constraint_residual_eq9: pf(6)?,
            ode_max_residual: pf_opt(7)?,
            series_termination: fields[8].clone(),
            candidate_node_count: pu(9)?,
            oracle_eigenvalues: list_f(10)?,
            oracle_node_counts: list_u(11)?,
            matched_eigenvalue_index: if fields[12].is_empty() {
                None
            } else {
                Some(pu(12)?)
            },
            overlap: pf_opt(13)?,
            verdict: fields[14].clone(),
            error: if fields[15].is_empty() {
                None
            } else {
                Some(fields[15].clone())
            },
        });
    }
    Ok(rows)
}

fn split_csv_line(line: &str) -> Option<Vec<String>> {
    let mut fields = Vec::new();
    let mut cur = String::new();
    let mut chars = line.chars().peekable();
    let mut in_quotes = false;
    while let Some(c) = chars.next() {
        if in_quotes {
            if c == '"' {
                if chars.peek() == Some(&'"') {
                    chars.next();
                    cur.push('"');
                } else {
                    in_quotes = false;
                }
            } else {
                cur.push(c);
            }
        } else {
            match c {
                '"' => {
                    if !cur.is_empty() {
                        return None;
                    }
                    in_quotes = true;
                }
                ',' => {
                    fields.push(std::mem::take(&mut cur));
                }
                _ => cur.push(c),
            }
        }
    }
    if in_quotes {
        return None;
    }
    fields.push(cur);
    Some(fields)
}

pub fn report_to_json(report: &RefutationReport) -> String {
    serde_json::to_string_pretty(report).expect("report serialization cannot fail")
}

/// Two-column (rho, Phi) files overlaying the published candidate against
/// the matched oracle eigenfunction, one pair per row.
pub fn plot_data_files(report: &RefutationReport, spec: GridSpec) -> Result<Vec<(String, String)>> {
    let mut files = Vec::new();
    for r in &report.rows {
        let candidate = series::published_candidate(r.m, r.g);
        let mut cand = String::new();
        for &rho in &spec.points() {
            let _ = writeln!(cand, "{} {}", fmt12(rho), fmt12(candidate.eval(rho)));
        }
        files.push((format!("candidate_m{}.dat", r.m), cand));

        if let Some(idx) = r.matched_eigenvalue_index {
            let op = oracle::discretize(r.m, r.g, spec);
            let eig = oracle::lowest_eigenvalues(&op, idx + 1)?;
            let w = oracle::eigenfunction(&op, eig[idx])?;
            let mut orc = String::new();
            for (j, &rho) in spec.points().iter().enumerate() {
                // Convert w = sqrt(rho) Phi back to Phi.
                let _ = writeln!(orc, "{} {}", fmt12(rho), fmt12(w[j] / rho.sqrt()));
            }
            files.push((format!("oracle_m{}.dat", r.m), orc));
        }
    }
    Ok(files)
}
