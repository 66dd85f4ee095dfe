//! Output buffering and the json/table/csv renderings.

use std::io::Write;
use std::path::{Path, PathBuf};

use ckqw::config::Format;
use ckqw::dual::PairingReport;
use ckqw::report::{Expect, Report};
use ckqw::CKMatrix;

/// Collects output and writes it to stdout or a file at the end, so that
/// I/O errors are reported once with the path attached.
pub struct Sink {
    path: Option<PathBuf>,
    buf: Vec<u8>,
}

impl Sink {
    pub fn open(path: Option<&Path>) -> Result<Sink, String> {
        Ok(Sink { path: path.map(Path::to_path_buf), buf: Vec::new() })
    }

    pub fn line(&mut self, s: &str) -> Result<(), String> {
        self.buf.extend_from_slice(s.as_bytes());
        self.buf.push(b'\n');
        Ok(())
    }

    pub fn finish(self) -> Result<(), String> {
        match &self.path {
            Some(p) => std::fs::write(p, &self.buf).map_err(|e| format!("cannot write {}: {e}", p.display())),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(&self.buf).and_then(|_| out.flush()).map_err(|e| format!("stdout: {e}"))
            }
        }
    }

    fn csv(&mut self, header: &[&str], rows: Vec<Vec<String>>) -> Result<(), String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(header).map_err(|e| e.to_string())?;
        for r in rows {
            w.write_record(&r).map_err(|e| e.to_string())?;
        }
        let bytes = w.into_inner().map_err(|e| e.to_string())?;
        self.buf.extend_from_slice(&bytes);
        Ok(())
    }

    fn table(&mut self, header: &[&str], rows: Vec<Vec<String>>) -> Result<(), String> {
        let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
        for r in &rows {
            for (w, cell) in width.iter_mut().zip(r) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let render = |cells: Vec<String>| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&width)
                .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                .collect();
            padded.join("  ").trim_end().to_string()
        };
        let head = render(header.iter().map(|s| s.to_string()).collect());
        self.line(&head)?;
        for r in rows {
            self.line(&render(r))?;
        }
        Ok(())
    }

    /// Writes the reports and returns whether all of them passed.
    pub fn reports(&mut self, reports: &[Report], fmt: Format) -> Result<bool, String> {
        let timing = reports.iter().any(|r| r.wall_ms.is_some());
        match fmt {
            Format::Json => {
                for r in reports {
                    self.line(&r.to_json_line())?;
                }
            }
            Format::Table | Format::Csv => {
                let mut header = vec!["status", "check", "residual", "tolerance", "inputs", "detail"];
                if timing {
                    header.push("wall_ms");
                }
                let rows = reports
                    .iter()
                    .map(|r| {
                        let mut row = vec![
                            if r.pass { "PASS" } else { "FAIL" }.to_string(),
                            r.check.clone(),
                            format!("{:.3e}", r.residual),
                            format!("{}{:.0e}", if r.expect == Expect::Above { ">" } else { "<=" }, r.tolerance),
                            r.inputs_text(),
                            r.detail.clone().unwrap_or_default(),
                        ];
                        if timing {
                            row.push(r.wall_ms.map(|t| format!("{t:.1}")).unwrap_or_default());
                        }
                        row
                    })
                    .collect();
                if fmt == Format::Csv {
                    self.csv(&header, rows)?;
                } else {
                    self.table(&header, rows)?;
                    let failed = reports.iter().filter(|r| !r.pass).count();
                    self.line(&format!("{} checks, {} failed", reports.len(), failed))?;
                }
            }
        }
        Ok(reports.iter().all(|r| r.pass))
    }

    pub fn matrix(&mut self, m: &CKMatrix, fmt: Format) -> Result<(), String> {
        let cells: Vec<Vec<String>> =
            (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect()).collect();
        match fmt {
            Format::Json => {
                let v = serde_json::json!({"rows": m.rows(), "cols": m.cols(), "tags": m.tags(), "entries": cells});
                self.line(&v.to_string())
            }
            Format::Csv => {
                let header: Vec<String> = (1..=m.cols()).map(|j| format!("c{j}")).collect();
                let header: Vec<&str> = header.iter().map(String::as_str).collect();
                self.csv(&header, cells)
            }
            Format::Table => {
                let header: Vec<String> = std::iter::once(String::new()).chain((1..=m.cols()).map(|j| j.to_string())).collect();
                let header: Vec<&str> = header.iter().map(String::as_str).collect();
                let rows = cells
                    .into_iter()
                    .enumerate()
                    .map(|(i, r)| std::iter::once((i + 1).to_string()).chain(r).collect())
                    .collect();
                self.table(&header, rows)
            }
        }
    }

    pub fn orbit(&mut self, pts: &[(f64, f64, f64)], fmt: Format) -> Result<(), String> {
        let rows: Vec<Vec<String>> = pts.iter().map(|(p, a, b)| vec![p.to_string(), a.to_string(), b.to_string()]).collect();
        match fmt {
            Format::Csv => self.csv(&["phi", "x0", "x1"], rows),
            Format::Table => self.table(&["phi", "x0", "x1"], rows),
            Format::Json => {
                for (p, a, b) in pts {
                    self.line(&serde_json::json!({"phi": p, "x0": a, "x1": b}).to_string())?;
                }
                Ok(())
            }
        }
    }

    pub fn pairing(&mut self, rep: &PairingReport, fmt: Format) -> Result<(), String> {
        if fmt == Format::Json {
            return self.line(&serde_json::to_string(rep).map_err(|e| e.to_string())?);
        }
        let header = ["functional", "generator", "computed", "listed", "error", "match", "note"];
        let rows = rep
            .entries
            .iter()
            .map(|e| {
                let note = if e.flagged { format!("flagged; matches: {}", e.variants.join(", ")) } else { String::new() };
                vec![
                    e.functional.clone(),
                    e.generator.clone(),
                    e.computed.clone().unwrap_or_else(|| "-".into()),
                    e.expected.clone(),
                    format!("{:.2e}", e.error),
                    if e.matches { "yes" } else { "no" }.to_string(),
                    note,
                ]
            })
            .collect();
        if fmt == Format::Csv {
            return self.csv(&header, rows);
        }
        self.table(&header, rows)?;
        self.line(&format!(
            "signature {}, convention {:?}: {}/{} listed entries reproduced",
            rep.signature, rep.convention, rep.matched, rep.listed
        ))?;
        for u in &rep.unlisted_nonzero {
            self.line(&format!("unlisted nonzero: {u}"))?;
        }
        Ok(())
    }
}
