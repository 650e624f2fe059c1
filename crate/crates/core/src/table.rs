//! Deterministic CSV tables.
//!
//! Layout: a `#`-prefixed provenance block (schema, crate version and the
//! resolved configuration), then one header row, then data rows. Reals are
//! written with 6 significant digits. Nothing time-dependent is emitted.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::montecarlo::{SnrSweep, ThroughputEstimate, WeightSweep};

pub const SCHEMA: &str = "fdas-table/1";

/// Columns written for each strategy, after the strategy label prefix.
pub const ESTIMATE_FIELDS: [&str; 5] = ["c_t", "p_od", "p_ou", "se_dl", "se_ul"];

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(x) => format_sig(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match *self {
            Cell::Num(x) => Some(x),
            Cell::Int(n) => Some(n as f64),
            Cell::Text(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub provenance: Vec<(String, String)>,
}

impl OutputTable {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
            provenance: vec![
                ("schema".into(), SCHEMA.into()),
                ("version".into(), env!("CARGO_PKG_VERSION").into()),
            ],
        }
    }

    pub fn with_provenance(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.provenance.push((key.into(), value.to_string()));
        self
    }

    pub fn push_row(&mut self, row: Vec<Cell>) -> Result<()> {
        if row.len() != self.columns.len() {
            return Err(Error::invalid(format!(
                "row has {} cells, table has {} columns",
                row.len(),
                self.columns.len()
            )));
        }
        if let Some(Cell::Num(x)) = row.iter().find(|c| matches!(c, Cell::Num(x) if !x.is_finite())) {
            return Err(Error::invalid(format!("non-finite cell {x}")));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn column(&self, name: &str) -> Option<Vec<&Cell>> {
        let k = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| &r[k]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.provenance {
            let _ = writeln!(out, "# {k} = {v}");
        }
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::render).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }
}

/// `%g`-style formatting with 6 significant digits.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..6).contains(&exp) {
        return format!("{}e{exp}", trim_zeros(mantissa));
    }
    let decimals = (5 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn estimate_cells(e: &ThroughputEstimate) -> [Cell; 5] {
    [
        Cell::Num(e.c_t),
        Cell::Num(e.p_od),
        Cell::Num(e.p_ou),
        Cell::Num(e.se_dl),
        Cell::Num(e.se_ul),
    ]
}

fn estimate_columns(label: &str) -> impl Iterator<Item = String> + '_ {
    ESTIMATE_FIELDS.iter().map(move |f| format!("{label}_{f}"))
}

/// One-row table with every field of a single estimate.
pub fn estimate_table(label: &str, w: Option<f64>, e: &ThroughputEstimate) -> OutputTable {
    let mut t = OutputTable::new([
        "strategy",
        "w",
        "n",
        "outage_count_dl",
        "outage_count_ul",
        "p_od",
        "p_ou",
        "se_dl",
        "se_ul",
        "c_d",
        "c_u",
        "c_t",
    ]);
    let w = match w {
        Some(w) => Cell::Num(w),
        None => Cell::Text(String::new()),
    };
    t.push_row(vec![
        Cell::Text(label.into()),
        w,
        Cell::Int(e.n),
        Cell::Int(e.outage_count_dl),
        Cell::Int(e.outage_count_ul),
        Cell::Num(e.p_od),
        Cell::Num(e.p_ou),
        Cell::Num(e.se_dl),
        Cell::Num(e.se_ul),
        Cell::Num(e.c_d),
        Cell::Num(e.c_u),
        Cell::Num(e.c_t),
    ])
    .expect("row matches header");
    t
}

pub fn weight_sweep_table(sweep: &WeightSweep) -> OutputTable {
    let mo = sweep.method.label();
    let mut cols = vec!["w".to_string()];
    for label in ["MM-AS", "LI-AS", mo] {
        cols.extend(estimate_columns(label));
    }
    let mut t = OutputTable::new(cols);
    for r in &sweep.rows {
        let mut row = vec![Cell::Num(r.w)];
        for e in [&r.mm, &r.li, &r.mo] {
            row.extend(estimate_cells(e));
        }
        t.push_row(row).expect("row matches header");
    }
    t
}

/// One row per SNR point. Multi-objective strategies also get a `<label>_w`
/// column with the weight used at that point.
pub fn snr_sweep_table(sweep: &SnrSweep) -> OutputTable {
    let first = &sweep.rows[0].strategies;
    let mut cols = vec!["gamma0_db".to_string()];
    for s in first {
        if s.is_multi_objective() {
            cols.push(format!("{}_w", s.label()));
        }
        cols.extend(estimate_columns(s.label()));
    }
    let mut t = OutputTable::new(cols);
    for r in &sweep.rows {
        let mut row = vec![Cell::Num(r.snr_db)];
        for (s, e) in r.strategies.iter().zip(&r.estimates) {
            if let Some(w) = s.weight() {
                row.push(Cell::Num(w));
            }
            row.extend(estimate_cells(e));
        }
        t.push_row(row).expect("row matches header");
    }
    t
}
