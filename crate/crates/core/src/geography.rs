//! The admissible region of the `(χ, K^2)` plane and an atlas of which pairs
//! are realized by the constructions, with deterministic CSV, JSON and SVG
//! output.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::degenerations::degenerate;
use crate::error::{Error, Result};
use crate::lattice::Positivity;
use crate::recipes::{classify, construct, Region};

/// Numerical constraints for minimal surfaces of general type with `p_g ≥ q`:
/// positivity, the Noether inequality and the Bogomolov–Miyaoka–Yau bound.
pub fn admissible(ksq: i64, chi: i64) -> bool {
    chi >= 1 && ksq >= 1 && 2 * chi - 6 <= ksq && ksq <= 9 * chi
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AtlasRow {
    pub chi: i64,
    #[serde(rename = "Ksq")]
    pub ksq: i64,
    pub region: Region,
    pub constructed: bool,
    pub degenerated: bool,
    pub pg: Option<i64>,
    pub q: Option<i64>,
    pub ampleness: Option<Positivity>,
    pub notes: Vec<String>,
}

/// Every admissible pair with `1 <= χ <= chi_max`, sorted by `χ` then `K^2`.
pub fn atlas(chi_max: i64) -> Vec<AtlasRow> {
    let mut rows = Vec::new();
    for chi in 1..=chi_max {
        for ksq in (2 * chi - 6).max(1)..=9 * chi {
            rows.push(atlas_row(ksq, chi));
        }
    }
    rows
}

fn atlas_row(ksq: i64, chi: i64) -> AtlasRow {
    let region = classify(ksq, chi);
    let mut row = AtlasRow {
        chi,
        ksq,
        region,
        constructed: false,
        degenerated: false,
        pg: None,
        q: None,
        ampleness: None,
        notes: Vec::new(),
    };
    if !region.is_covered() {
        return row;
    }
    match construct(ksq, chi) {
        Ok(cert) => {
            row.constructed = cert.verified();
            row.pg = Some(cert.invariants.pg);
            row.q = Some(cert.invariants.q);
            row.ampleness = Some(cert.ampleness);
            row.notes.extend(
                cert.failed_conditions()
                    .map(|c| format!("failed: {}", c.name)),
            );
            if cert.ampleness != Positivity::Ample {
                row.notes.push(format!("2K pushdown {}", cert.ampleness));
            }
            if region.is_degenerable() {
                match degenerate(&cert) {
                    Ok(dc) => row.degenerated = dc.verified() && !dc.gorenstein,
                    Err(e) => row.notes.push(format!("degeneration: {e}")),
                }
            }
        }
        Err(e) => row.notes.push(e.to_string()),
    }
    row
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "svg" => Ok(Format::Svg),
            _ => Err(Error::UnknownFormat(s.to_string())),
        }
    }
}

pub fn emit(rows: &[AtlasRow], format: Format) -> Result<String> {
    match format {
        Format::Csv => emit_csv(rows),
        Format::Json => {
            let mut s =
                serde_json::to_string_pretty(rows).map_err(|e| Error::Document(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Svg => Ok(emit_svg(rows)),
    }
}

fn emit_csv(rows: &[AtlasRow]) -> Result<String> {
    let to_doc = |e: csv::Error| Error::Document(e.to_string());
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "chi",
        "Ksq",
        "region",
        "constructed",
        "degenerated",
        "pg",
        "q",
        "ampleness",
        "notes",
    ])
    .map_err(to_doc)?;
    let opt = |v: Option<i64>| v.map(|x| x.to_string()).unwrap_or_default();
    for r in rows {
        w.write_record([
            r.chi.to_string(),
            r.ksq.to_string(),
            r.region.to_string(),
            r.constructed.to_string(),
            r.degenerated.to_string(),
            opt(r.pg),
            opt(r.q),
            r.ampleness.map(|a| a.to_string()).unwrap_or_default(),
            r.notes.join("; "),
        ])
        .map_err(to_doc)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Document(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Document(e.to_string()))
}

const SX: i64 = 10;
const SY: i64 = 2;
const MARGIN: i64 = 40;
const LEGEND_WIDTH: i64 = 180;

fn region_color(region: Region) -> &'static str {
    match region {
        Region::NoetherLine => "#d62728",
        Region::PlaneSpecial12 | Region::PlaneSpecial13 => "#9467bd",
        Region::Genus2General => "#1f77b4",
        Region::Line4chiMinus5 => "#ff7f0e",
        Region::Line4chiMinus4 => "#2ca02c",
        Region::Genus3 => "#17becf",
        Region::ProductLine => "#8c564b",
        Region::NotCovered | Region::NotAdmissible => "#bbbbbb",
    }
}

/// Guide lines `K^2 = a·χ + b`.
const GUIDES: [(&str, i64, i64); 5] = [
    ("K^2 = 2chi - 6", 2, -6),
    ("K^2 = 4chi - 4", 4, -4),
    ("K^2 = 8chi - 8", 8, -8),
    ("K^2 = 8chi", 8, 0),
    ("K^2 = 9chi", 9, 0),
];

fn emit_svg(rows: &[AtlasRow]) -> String {
    let chi_max = rows.iter().map(|r| r.chi).max().unwrap_or(1).max(1);
    let ksq_max = 9 * chi_max;
    let plot_w = SX * chi_max;
    let plot_h = SY * ksq_max;
    let width = 2 * MARGIN + plot_w + LEGEND_WIDTH;
    let height = (2 * MARGIN + plot_h).max(2 * MARGIN + 20 * 10);
    let x = |chi: i64| MARGIN + SX * chi;
    let y = |ksq: i64| MARGIN + plot_h - SY * ksq;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        s,
        r##"<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>"##
    );
    let _ = writeln!(
        s,
        r##"<path d="M {} {} L {} {} M {} {} L {} {}" stroke="#000000" stroke-width="1" fill="none"/>"##,
        x(0),
        y(0),
        x(chi_max),
        y(0),
        x(0),
        y(0),
        x(0),
        y(ksq_max)
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-size="10">chi</text>"#,
        x(chi_max) + 4,
        y(0) + 4
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-size="10">K^2</text>"#,
        x(0) - 10,
        y(ksq_max) - 6
    );

    for (label, a, b) in GUIDES {
        // start where the guide enters the first quadrant
        let start = (0..=chi_max).find(|&c| a * c + b >= 0).unwrap_or(chi_max);
        let _ = writeln!(
            s,
            r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#666666" stroke-width="0.5" stroke-dasharray="3,2"><title>{label}</title></line>"##,
            x(start),
            y(a * start + b),
            x(chi_max),
            y(a * chi_max + b)
        );
    }

    for r in rows {
        let fill = if r.constructed {
            region_color(r.region)
        } else {
            "#bbbbbb"
        };
        let _ = writeln!(
            s,
            r#"<circle cx="{}" cy="{}" r="1" fill="{fill}"><title>chi={} K^2={} {}</title></circle>"#,
            x(r.chi),
            y(r.ksq),
            r.chi,
            r.ksq,
            r.region
        );
    }

    let lx = 2 * MARGIN + plot_w;
    let legend = Region::ALL.iter().filter(|r| **r != Region::NotAdmissible);
    for (i, region) in legend.enumerate() {
        let ly = MARGIN + 14 * i as i64;
        let fill = region_color(*region);
        let _ = writeln!(s, r#"<circle cx="{lx}" cy="{ly}" r="4" fill="{fill}"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-size="10">{region}</text>"#,
            lx + 8,
            ly + 3
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissibility_boundaries() {
        assert!(admissible(1, 1));
        assert!(admissible(9, 1));
        assert!(!admissible(10, 1));
        assert!(!admissible(0, 3));
        assert!(admissible(4, 5));
        assert!(!admissible(3, 5));
        assert!(!admissible(5, 0));
    }

    #[test]
    fn smallest_atlas() {
        let rows = atlas(1);
        assert_eq!(rows.len(), 9);
        assert_eq!(
            rows.iter().map(|r| r.ksq).collect::<Vec<_>>(),
            (1..=9).collect::<Vec<_>>()
        );
        let built: Vec<_> = rows
            .iter()
            .filter(|r| r.constructed)
            .map(|r| (r.ksq, r.chi))
            .collect();
        assert_eq!(built, vec![(8, 1)]);
    }

    #[test]
    fn atlas_contains_the_exceptional_noether_pair() {
        let rows = atlas(4);
        let r = rows.iter().find(|r| (r.ksq, r.chi) == (2, 4)).unwrap();
        assert!(r.constructed && r.degenerated);
        assert_eq!(r.ampleness, Some(Positivity::NefOnly));
    }

    #[test]
    fn atlas_size() {
        let expected: i64 = (1..=10).map(|c| 9 * c - (2 * c - 6).max(1) + 1).sum();
        assert_eq!(atlas(10).len() as i64, expected);
        assert!(atlas(0).is_empty());
    }

    #[test]
    fn svg_has_five_guides_and_one_circle_per_row() {
        let rows = atlas(3);
        let svg = emit(&rows, Format::Svg).unwrap();
        assert_eq!(svg.matches("<line").count(), 5);
        assert_eq!(svg.matches(r#"r="1""#).count(), rows.len());
    }

    #[test]
    fn empty_outputs_are_valid() {
        let csv = emit(&[], Format::Csv).unwrap();
        assert_eq!(csv.lines().count(), 1);
        let json: serde_json::Value =
            serde_json::from_str(&emit(&[], Format::Json).unwrap()).unwrap();
        assert_eq!(json, serde_json::json!([]));
        assert!(emit(&[], Format::Svg).unwrap().ends_with("</svg>\n"));
    }

    #[test]
    fn format_parsing() {
        assert_eq!("SVG".parse::<Format>().unwrap(), Format::Svg);
        assert!(matches!(
            "png".parse::<Format>(),
            Err(Error::UnknownFormat(_))
        ));
    }
}
