//! Aligned text tables for the human-readable report format.

use std::fmt::Write as _;

use hnnkit::convexity::{AcReport, BoundCheck, FftpReport, SignatureReport};
use hnnkit::hnn::{Check, IsometricReport};

pub struct Table {
    headers: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table { headers: headers.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    pub fn render(&self) -> String {
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let padded: Vec<String> =
                cells.iter().zip(&widths).map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = line(&self.headers);
        out += &line(&widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>());
        for row in &self.rows {
            out += &line(row);
        }
        out
    }
}

fn yes(b: bool) -> String {
    if b { "yes" } else { "NO" }.to_string()
}

fn or_dash(s: &str) -> String {
    if s.is_empty() {
        "-".to_string()
    } else {
        s.to_string()
    }
}

pub fn sphere_sizes(sizes: &[usize]) -> String {
    let mut t = Table::new(&["N", "|S(N)|", "|B(N)|"]);
    let mut total = 0;
    for (n, s) in sizes.iter().enumerate() {
        total += s;
        t.row(vec![n.to_string(), s.to_string(), total.to_string()]);
    }
    t.render()
}

pub fn bounds(bounds: &[BoundCheck], max_c: u32) -> String {
    let mut t = Table::new(&["bound", "value", "max C", "holds"]);
    for b in bounds {
        t.row(vec![b.label.clone(), b.value.to_string(), max_c.to_string(), yes(b.holds)]);
    }
    t.render()
}

pub fn ac(report: &AcReport) -> String {
    let mut t = Table::new(&["N", "|S(N)|", "pairs", "C(N)", "g", "g'", "gamma", "path in B(N)"]);
    for r in &report.records {
        let w = r.witness.as_ref();
        let cell = |f: fn(&hnnkit::convexity::AcWitness) -> &String| w.map_or("-".to_string(), |w| or_dash(f(w)));
        t.row(vec![
            r.n.to_string(),
            r.sphere_size.to_string(),
            r.pairs.to_string(),
            r.c.to_string(),
            cell(|w| &w.g),
            cell(|w| &w.g_prime),
            cell(|w| &w.gamma),
            cell(|w| &w.path),
        ]);
    }
    format!("{}max C = {}\n", t.render(), report.max_c)
}

pub fn fftp(report: &FftpReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "words tested: {}  non-geodesic: {}  unverified: {}",
        report.tested, report.non_geodesic, report.unverified_count
    );
    let _ = writeln!(out, "k_min = {}\n", report.k_min);
    let mut t = Table::new(&["k", "words", "first word", "companion"]);
    for (k, &count) in report.histogram.iter().enumerate() {
        let e = report.exemplars.iter().find(|e| e.distance as usize == k);
        t.row(vec![
            k.to_string(),
            count.to_string(),
            e.map_or("-".into(), |e| e.word.clone()),
            e.map_or("-".into(), |e| or_dash(&e.companion)),
        ]);
    }
    out += &t.render();
    if !report.falsifiers.is_empty() {
        out.push('\n');
        let mut t = Table::new(&["k'", "falsifier", "its minimum"]);
        for f in &report.falsifiers {
            t.row(vec![f.k.to_string(), f.word.clone(), f.minimum.to_string()]);
        }
        out += &t.render();
    }
    if !report.unverified.is_empty() {
        let _ = writeln!(out, "\nunverified at k-cap {}: {}", report.k_cap, report.unverified.join(" "));
    }
    out
}

fn check_rows(t: &mut Table, name: &str, c: &Check) {
    t.row(vec![name.to_string(), c.checked.to_string(), c.failures.to_string(), yes(c.pass())]);
}

pub fn isometric(report: &IsometricReport) -> String {
    let mut t = Table::new(&["stable", "j", "u", "|u|", "v", "|v|"]);
    for l in &report.lengths {
        t.row(vec![
            l.stable.clone(),
            l.index.to_string(),
            l.u.clone(),
            l.u_length.to_string(),
            l.v.clone(),
            l.v_length.to_string(),
        ]);
    }
    let mut out = t.render();
    out.push('\n');
    let mut t = Table::new(&["condition", "checked", "failures", "pass"]);
    t.row(vec![
        "strip equidistant".into(),
        report.lengths.len().to_string(),
        report.strip_equidistant.failures.to_string(),
        yes(report.strip_equidistant.pass()),
    ]);
    check_rows(&mut t, "geodesic", &report.geodesic);
    check_rows(&mut t, "totally geodesic", &report.totally_geodesic);
    out += &t.render();
    let witnesses: Vec<_> = [
        ("strip equidistant", &report.strip_equidistant),
        ("geodesic", &report.geodesic),
        ("totally geodesic", &report.totally_geodesic),
    ]
    .into_iter()
    .flat_map(|(name, c)| c.witnesses.iter().map(move |w| (name, w)))
    .collect();
    if !witnesses.is_empty() {
        out.push('\n');
        let mut t = Table::new(&["condition", "stable", "side", "element", "word"]);
        for (name, w) in witnesses {
            t.row(vec![name.into(), w.stable.clone(), w.side.clone(), w.element.clone(), w.word.clone()]);
        }
        out += &t.render();
    }
    if let Some(e) = &report.error {
        let _ = writeln!(out, "\nINCOMPLETE: {e}");
    }
    let _ = writeln!(out, "\n{}", if report.pass() { "PASS" } else { "FAIL" });
    out
}

pub fn signatures(report: &SignatureReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "radius {}  elements {}  predecessor links {}  violations {}  normal-form mismatches {}",
        report.radius, report.elements, report.links_checked, report.violation_count, report.normal_form_mismatches
    );
    if !report.violations.is_empty() {
        let mut t = Table::new(&["element", "geodesic", "signature", "other geodesic", "other signature"]);
        for v in &report.violations {
            t.row(vec![
                v.element.clone(),
                v.geodesic.clone(),
                or_dash(&v.signature),
                v.other_geodesic.clone(),
                or_dash(&v.other_signature),
            ]);
        }
        out += &t.render();
    }
    let _ = writeln!(out, "{}", if report.pass() { "PASS" } else { "FAIL" });
    out
}
