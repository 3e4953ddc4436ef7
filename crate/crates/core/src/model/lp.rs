use std::fmt::Write as _;

use super::{Family, IlpModel, RowTag};

const TERMS_PER_LINE: usize = 8;

fn number(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

fn write_terms(out: &mut String, m: &IlpModel, terms: &[(usize, f64)]) {
    for (idx, &(var, coef)) in terms.iter().enumerate() {
        if idx > 0 && idx % TERMS_PER_LINE == 0 {
            out.push_str("\n   ");
        }
        let name = m.variables[var].name();
        let sign = if coef < 0.0 { "-" } else { "+" };
        let mag = coef.abs();
        let body = if mag == 1.0 { name } else { format!("{} {name}", number(mag)) };
        if idx == 0 {
            if coef < 0.0 {
                let _ = write!(out, " - {body}");
            } else {
                let _ = write!(out, " {body}");
            }
        } else {
            let _ = write!(out, " {sign} {body}");
        }
    }
}

/// Writes `m` in CPLEX LP format. Output depends only on the model, so equal
/// models give byte-identical text.
pub fn export_lp(m: &IlpModel) -> String {
    let mut out = String::new();
    let meta = &m.meta;
    let _ = write!(out, "\\ family {} n={} k={}", meta.family, meta.n, meta.k);
    if meta.family == Family::Fks {
        let _ = write!(out, " reduced={}", meta.reduced);
    }
    if let Some(lb) = meta.lb {
        let _ = write!(out, " lb={}", number(lb));
    }
    if let Some(ub) = meta.ub {
        let _ = write!(out, " ub={}", number(ub));
    }
    if let Some(p) = meta.max_components {
        let _ = write!(out, " P={p}");
    }
    out.push('\n');
    let dims = m.dimensions();
    let _ = writeln!(
        out,
        "\\ variables={} constraints={} vacuous_rows_dropped={}",
        dims.variables, dims.constraints, meta.dropped_vacuous
    );

    out.push_str("Maximize\n obj:");
    if m.objective.is_empty() {
        out.push_str(" 0");
    } else {
        write_terms(&mut out, m, &m.objective);
    }
    out.push('\n');

    out.push_str("Subject To\n");
    let mut last_tag: Option<RowTag> = None;
    for (idx, c) in m.constraints.iter().enumerate() {
        if last_tag != Some(c.tag) {
            let _ = writeln!(out, "\\ {}", c.tag);
            last_tag = Some(c.tag);
        }
        let _ = write!(out, " c{}:", idx + 1);
        if c.terms.is_empty() {
            // LP rows need a variable; a zero-coefficient term keeps the row
            match m.variables.first() {
                Some(v) => {
                    let _ = write!(out, " 0 {}", v.name());
                }
                None => out.push_str(" 0"),
            }
        } else {
            write_terms(&mut out, m, &c.terms);
        }
        let _ = writeln!(out, " {} {}", c.sense.symbol(), number(c.rhs));
    }

    out.push_str("Bounds\n");
    for v in &m.variables {
        let _ = writeln!(out, " 0 <= {} <= 1", v.name());
    }
    out.push_str("Binaries\n");
    for chunk in m.variables.chunks(TERMS_PER_LINE) {
        let names: Vec<String> = chunk.iter().map(|v| v.name()).collect();
        let _ = writeln!(out, " {}", names.join(" "));
    }
    out.push_str("End\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedGraph;
    use crate::model::build_f1s;

    #[test]
    fn path_export() {
        let g = WeightedGraph::new(3, [(1, 2, 5.0), (2, 3, -2.5)]).unwrap();
        let lp = export_lp(&build_f1s(&g));
        assert!(lp.contains(" obj: 5 x_1_2 - 2.5 x_2_3\n"));
        assert!(lp.contains(" c1: x_1_2 + x_2_3 <= 1\n"));
        assert!(!lp.contains("x_1_3"));
        assert!(lp.ends_with("End\n"));
    }

    #[test]
    fn empty_model() {
        let g = WeightedGraph::new(1, []).unwrap();
        let lp = export_lp(&build_f1s(&g));
        assert!(lp.contains("Maximize\n obj: 0\nSubject To\nBounds\nBinaries\nEnd\n"));
    }

    #[test]
    fn numbers() {
        assert_eq!(number(3.0), "3");
        assert_eq!(number(-4500.0), "-4500");
        assert_eq!(number(0.1), "0.1");
    }
}
