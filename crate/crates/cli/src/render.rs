//! Rendering of polynomial tables and characters in the four output formats.

use std::fmt::Write as _;

use alcove_kl::periodic::PklEntry;
use alcove_kl::repcalc::FlatTable;
use alcove_kl::{LaurentPoly, RootSystem, Weight};
use anyhow::Result;
use clap::ValueEnum;
use serde::Serialize;

#[derive(Debug, Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Latex,
    Pretty,
}

/// A row of a `(y, w) -> polynomial` table, with display names precomputed.
pub struct PolyRow {
    pub y: String,
    pub w: String,
    pub poly: LaurentPoly,
}

pub fn json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn latex_escape(s: &str) -> String {
    s.replace('_', "\\_").replace('·', "\\cdot ")
}

fn latex_poly(p: &LaurentPoly) -> String {
    // `v^-2` needs braces in math mode.
    let s = p.to_string();
    let mut out = String::new();
    let mut chars = s.chars().peekable();
    while let Some(c) = chars.next() {
        if c == '^' {
            out.push_str("^{");
            while let Some(&d) = chars.peek() {
                if d == '-' || d.is_ascii_digit() {
                    out.push(d);
                    chars.next();
                } else {
                    break;
                }
            }
            out.push('}');
        } else {
            out.push(c);
        }
    }
    out
}

/// Render a polynomial table; `json_body` is the schema-specific JSON form.
pub fn poly_table<T: Serialize>(format: Format, json_body: &T, rows: &[PolyRow], caption: &str) -> Result<String> {
    Ok(match format {
        Format::Json => json(json_body)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["y", "w", "poly"])?;
            for r in rows {
                w.write_record([r.y.as_str(), r.w.as_str(), &r.poly.to_string()])?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        Format::Latex => {
            let mut out = format!("% {caption}\n\\begin{{tabular}}{{llr}}\n\\hline\n$y$ & $w$ & polynomial \\\\\n\\hline\n");
            for r in rows {
                let _ = writeln!(
                    out,
                    "${}$ & ${}$ & ${}$ \\\\",
                    latex_escape(&r.y),
                    latex_escape(&r.w),
                    latex_poly(&r.poly)
                );
            }
            out.push_str("\\hline\n\\end{tabular}\n");
            out
        }
        Format::Pretty => {
            let wy = rows.iter().map(|r| r.y.chars().count()).max().unwrap_or(1).max(1);
            let ww = rows.iter().map(|r| r.w.chars().count()).max().unwrap_or(1).max(1);
            let mut out = format!("{caption}\n");
            let _ = writeln!(out, "{:<wy$}  {:<ww$}  poly", "y", "w");
            for r in rows {
                let _ = writeln!(out, "{:<wy$}  {:<ww$}  {}", r.y, r.w, r.poly);
            }
            out
        }
    })
}

pub fn flat_table(format: Format, table: &FlatTable) -> Result<String> {
    Ok(match format {
        Format::Json => json(table)?,
        Format::Csv => table.to_csv()?,
        Format::Latex => table.to_latex(),
        Format::Pretty => table.to_pretty(),
    })
}

pub fn poly_rows(sys: &RootSystem, entries: &[PklEntry]) -> Result<Vec<PolyRow>> {
    entries
        .iter()
        .map(|e| {
            Ok(PolyRow {
                y: sys.format_elt(&sys.from_repr(&e.y)?),
                w: sys.format_elt(&sys.from_repr(&e.w)?),
                poly: e.poly.clone(),
            })
        })
        .collect()
}

#[derive(Serialize)]
pub struct CharEntry {
    pub mu: Weight,
    pub dim: String,
}

#[derive(Serialize)]
pub struct CharTable {
    #[serde(rename = "type")]
    pub cartan_type: String,
    pub rank: usize,
    pub p: u64,
    pub module: String,
    pub lambda: Weight,
    /// Sum of all listed multiplicities; for Verma-type modules only the listed window.
    pub total: String,
    pub complete: bool,
    pub weights: Vec<CharEntry>,
}

pub fn char_table(format: Format, t: &CharTable) -> Result<String> {
    Ok(match format {
        Format::Json => json(t)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["mu", "dim"])?;
            for e in &t.weights {
                w.write_record([e.mu.to_string(), e.dim.clone()])?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        Format::Latex => {
            let mut out = format!(
                "% {}({}) for {}{}, p = {}\n\\begin{{tabular}}{{lr}}\n\\hline\n$\\mu$ & dim \\\\\n\\hline\n",
                t.module, t.lambda, t.cartan_type, t.rank, t.p
            );
            for e in &t.weights {
                let _ = writeln!(out, "${}$ & {} \\\\", e.mu, e.dim);
            }
            let _ = writeln!(out, "\\hline\ntotal & {} \\\\\n\\end{{tabular}}", t.total);
            out
        }
        Format::Pretty => {
            let mut out = format!("{}({}) for {}{}, p = {}\n", t.module, t.lambda, t.cartan_type, t.rank, t.p);
            let wm = t.weights.iter().map(|e| e.mu.to_string().len()).max().unwrap_or(2).max(2);
            for e in &t.weights {
                let _ = writeln!(out, "{:<wm$}  {}", e.mu.to_string(), e.dim);
            }
            let _ = writeln!(
                out,
                "total {}{}",
                t.total,
                if t.complete { "" } else { " (truncated window)" }
            );
            out
        }
    })
}
