//! Deterministic tabular renderings of computed results.
//!
//! Every report is a [`Table`]: a header and rows of cells. TSV is the
//! machine-readable form (one line per row, tab separated, trailing
//! newline); the text form pads columns for reading.

use crate::chain::{Coefficients, HomologySummary};
use crate::combinatorics::{enumerate_index_tuples, heights, ranks};
use crate::complex::{OrderedComplex, ValidationReport};
use crate::config::{AbramsReport, ConfigModel};
use crate::suspension::{InvarianceReport, SuspensionReport};
use crate::Result;

/// Output flavour.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Tsv,
    Text,
}

/// A header with rows of string cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push<S: ToString>(&mut self, row: impl IntoIterator<Item = S>) {
        let row: Vec<String> = row.into_iter().map(|c| c.to_string()).collect();
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for line in std::iter::once(&self.header).chain(&self.rows) {
            out.push_str(&line.join("\t"));
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let mut out = String::new();
        for line in std::iter::once(&self.header).chain(&self.rows) {
            let cells: Vec<String> =
                line.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Tsv => self.to_tsv(),
            Format::Text => self.to_text(),
        }
    }
}

/// Short name of a coefficient mode, as accepted on the command line.
pub fn coeff_name(coeff: Coefficients) -> &'static str {
    match coeff {
        Coefficients::Rational => "q",
        Coefficients::Integral => "z",
    }
}

/// One row per index tuple: the tuple, its heights and its ranks.
pub fn combinatorics_table(k: usize) -> Result<Table> {
    let mut t = Table::new(["tuple", "heights", "ranks"]);
    for i in enumerate_index_tuples(k)? {
        let h = heights(&i)?;
        let r = ranks(&i)?;
        t.push([i.to_string(), h.to_string(), r.to_string()]);
    }
    Ok(t)
}

/// The header of a Betti table.
pub fn betti_header() -> Table {
    Table::new(["object", "coeff", "betti", "torsion", "euler"])
}

/// Appends the summary of `object` to a Betti table.
pub fn push_betti(t: &mut Table, object: &str, coeff: Coefficients, h: &HomologySummary) {
    t.push([
        object.to_string(),
        coeff_name(coeff).to_string(),
        h.betti_row(),
        h.torsion_row(),
        h.euler_characteristic().to_string(),
    ]);
}

/// A single-row Betti table.
pub fn betti_table(object: &str, coeff: Coefficients, h: &HomologySummary) -> Table {
    let mut t = betti_header();
    push_betti(&mut t, object, coeff, h);
    t
}

/// Basic facts about a complex.
pub fn validation_table(k: &OrderedComplex, v: &ValidationReport) -> Table {
    let mut t = Table::new(["key", "value"]);
    let f: Vec<String> = v.f_vector.iter().map(usize::to_string).collect();
    t.push(["vertices".to_string(), k.vertex_count().to_string()]);
    t.push(["dim".to_string(), k.dim().map_or("-".to_string(), |d| d.to_string())]);
    t.push(["f_vector".to_string(), f.join(" ")]);
    t.push(["euler".to_string(), v.euler.to_string()]);
    t.push(["graph".to_string(), k.is_graph().to_string()]);
    t
}

/// Size and certification of a deleted-product model.
pub fn model_table(m: &ConfigModel, abrams: Option<&AbramsReport>) -> Table {
    let mut t = Table::new(["key", "value"]);
    let f: Vec<String> = m.complex.f_vector().iter().map(usize::to_string).collect();
    t.push(["k".to_string(), m.k.to_string()]);
    t.push(["f_vector".to_string(), f.join(" ")]);
    t.push(["euler".to_string(), m.complex.euler_characteristic().to_string()]);
    t.push(["exactness".to_string(), m.exactness.to_string()]);
    if let Some(a) = abrams {
        t.push(["abrams".to_string(), a.describe(&m.base)]);
    }
    t
}

/// Homology of the pieces of the suspension tower with the two checks.
pub fn suspension_table(r: &SuspensionReport, coeff: Coefficients) -> Table {
    let mut t = betti_header();
    push_betti(&mut t, "C", coeff, &r.c);
    push_betti(&mut t, "E_2^3", coeff, &r.e23);
    push_betti(&mut t, "cofiber", coeff, &r.cofiber);
    push_betti(&mut t, "F_3", coeff, &r.f3);
    t
}

/// Checks performed on a suspension report.
pub fn suspension_checks(r: &SuspensionReport) -> Table {
    let mut t = Table::new(["check", "status"]);
    t.push(["C = E_2^3", status(r.c_matches_e23())]);
    t.push(["H_n(cofiber) = H_(n-1)(F_3)", status(r.shift_law_holds())]);
    t
}

/// Side-by-side comparison rows and the final verdict.
pub fn verdict_table(r: &InvarianceReport, coeff: Coefficients) -> Table {
    let mut t = Table::new(["quantity", "coeff", "a", "b", "status"]);
    for row in &r.rows {
        t.push([
            row.quantity.clone(),
            coeff_name(coeff).to_string(),
            row.a.betti_row(),
            row.b.betti_row(),
            status(row.passed()).to_string(),
        ]);
    }
    t.push([
        "verdict".to_string(),
        coeff_name(coeff).to_string(),
        "-".to_string(),
        "-".to_string(),
        status(r.passed()).to_string(),
    ]);
    t
}

fn status(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}
