//! Curve files: CSV with `#` header comments, and JSON.

use std::io::Write;

use anyhow::{anyhow, bail, Context, Result};
use imcf_soliton::{Branch, CurveSample, SampledCurve, SolitonParams, ThetaWindow};
use serde::Serialize;

pub const CSV_COLUMNS: [&str; 7] = ["theta", "x", "y", "k", "tau", "nu", "residual"];

/// 17 significant digits, enough to round-trip an `f64`.
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn cusp_list(cusps: &[f64]) -> String {
    if cusps.is_empty() {
        "none".to_string()
    } else {
        cusps
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

pub fn write_csv<W: Write>(
    out: W,
    curve: &SampledCurve,
    window: ThetaWindow,
    samples: usize,
) -> Result<()> {
    let mut out = out;
    writeln!(out, "# imcf-soliton curve")?;
    writeln!(out, "# params c={} d={}", curve.params.c, curve.params.d)?;
    writeln!(out, "# branch {}", curve.branch)?;
    writeln!(out, "# window {} {}", window.min, window.max)?;
    writeln!(out, "# samples {samples}")?;
    writeln!(out, "# cusps {}", cusp_list(&curve.cusps))?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_COLUMNS)?;
    for s in &curve.samples {
        w.write_record([
            num(s.theta),
            num(s.position.re),
            num(s.position.im),
            num(s.curvature),
            num(s.tau),
            num(s.nu),
            num(s.residual),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct JsonCurve<'a> {
    params: SolitonParams,
    branch: Branch,
    window: ThetaWindow,
    cusps: &'a [f64],
    samples: &'a [CurveSample],
}

pub fn write_json<W: Write>(mut out: W, curve: &SampledCurve, window: ThetaWindow) -> Result<()> {
    let doc = JsonCurve {
        params: curve.params,
        branch: curve.branch,
        window,
        cusps: &curve.cusps,
        samples: &curve.samples,
    };
    serde_json::to_writer_pretty(&mut out, &doc)?;
    writeln!(out)?;
    Ok(())
}

/// One data row of a curve CSV; `line` is the 1-based line in the file.
#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub line: u64,
    pub theta: f64,
    pub x: f64,
    pub y: f64,
    pub k: Option<f64>,
    pub tau: Option<f64>,
    pub nu: Option<f64>,
    pub residual: Option<f64>,
}

#[derive(Clone, Debug, Default)]
pub struct CurveFile {
    pub params: Option<SolitonParams>,
    pub branch: Option<Branch>,
    pub cusps: Option<Vec<f64>>,
    pub window: Option<ThetaWindow>,
    pub samples: Option<usize>,
    pub rows: Vec<Row>,
}

fn parse_header(file: &mut CurveFile, line: &str) -> Result<()> {
    let body = line.trim_start_matches('#').trim();
    let (key, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
    let rest = rest.trim();
    match key {
        "params" => {
            let (mut c, mut d) = (None, None);
            for part in rest.split_whitespace() {
                let (name, value) = part
                    .split_once('=')
                    .ok_or_else(|| anyhow!("bad params comment `{line}`"))?;
                let value: f64 = value
                    .parse()
                    .with_context(|| format!("bad params comment `{line}`"))?;
                match name {
                    "c" => c = Some(value),
                    "d" => d = Some(value),
                    _ => bail!("bad params comment `{line}`"),
                }
            }
            match (c, d) {
                (Some(c), Some(d)) => file.params = Some(SolitonParams::new(c, d)),
                _ => bail!("params comment needs c= and d=: `{line}`"),
            }
        }
        "branch" => file.branch = Some(rest.parse()?),
        "window" => {
            let v: Vec<f64> = rest
                .split_whitespace()
                .map(|v| {
                    v.parse::<f64>()
                        .with_context(|| format!("bad window comment `{line}`"))
                })
                .collect::<Result<_>>()?;
            if v.len() != 2 {
                bail!("window comment needs two numbers: `{line}`");
            }
            file.window = Some(ThetaWindow::new(v[0], v[1])?);
        }
        "samples" => {
            file.samples = Some(
                rest.parse()
                    .with_context(|| format!("bad samples comment `{line}`"))?,
            )
        }
        "cusps" => {
            file.cusps = Some(if rest == "none" || rest.is_empty() {
                Vec::new()
            } else {
                rest.split_whitespace()
                    .map(|v| {
                        v.parse::<f64>()
                            .with_context(|| format!("bad cusps comment `{line}`"))
                    })
                    .collect::<Result<_>>()?
            })
        }
        _ => {}
    }
    Ok(())
}

/// Parses a curve CSV. Columns `theta,x,y` are required; `k,tau,nu,residual`
/// are used when present.
pub fn read_csv(text: &str) -> Result<CurveFile> {
    let mut file = CurveFile::default();
    for line in text
        .lines()
        .map(str::trim_start)
        .filter(|l| l.starts_with('#'))
    {
        parse_header(&mut file, line)?;
    }
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader.headers()?.clone();
    let col = |name: &str| headers.iter().position(|h| h == name);
    let (Some(ti), Some(xi), Some(yi)) = (col("theta"), col("x"), col("y")) else {
        bail!(
            "curve CSV needs columns theta, x and y (found {:?})",
            headers.iter().collect::<Vec<_>>()
        );
    };
    let optional = [col("k"), col("tau"), col("nu"), col("residual")];
    for record in reader.records() {
        let record = record?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        let field = |i: usize| -> Result<f64> {
            let raw = record
                .get(i)
                .ok_or_else(|| anyhow!("line {line}: missing column {}", &headers[i]))?;
            raw.parse::<f64>()
                .with_context(|| format!("line {line}: `{raw}` is not a number"))
        };
        let opt = |i: Option<usize>| i.map(field).transpose();
        file.rows.push(Row {
            line,
            theta: field(ti)?,
            x: field(xi)?,
            y: field(yi)?,
            k: opt(optional[0])?,
            tau: opt(optional[1])?,
            nu: opt(optional[2])?,
            residual: opt(optional[3])?,
        });
    }
    if file.rows.is_empty() {
        bail!("curve CSV has no data rows");
    }
    Ok(file)
}

#[cfg(test)]
mod tests {
    use super::*;
    use imcf_soliton::diffgeo::sample_curve;
    use imcf_soliton::{DerivativeMode, Tolerances};

    #[test]
    fn csv_round_trip_is_exact() {
        let params = SolitonParams::new(2.0, 0.0);
        let window = ThetaWindow::new(-3.0, 3.0).unwrap();
        let curve = sample_curve(
            params,
            Branch::CriticalGeneral,
            window,
            101,
            &Tolerances::default(),
            DerivativeMode::Analytic,
        )
        .unwrap();
        let mut buf = Vec::new();
        write_csv(&mut buf, &curve, window, 101).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.lines().any(|l| l == "theta,x,y,k,tau,nu,residual"));
        let back = read_csv(&text).unwrap();
        assert_eq!(back.params, Some(params));
        assert_eq!(back.branch, Some(Branch::CriticalGeneral));
        assert_eq!(back.cusps, Some(vec![-1.0]));
        assert_eq!(back.rows.len(), curve.samples.len());
        for (r, s) in back.rows.iter().zip(&curve.samples) {
            assert_eq!(r.theta, s.theta);
            assert_eq!(r.x, s.position.re);
            assert_eq!(r.k, Some(s.curvature));
            assert_eq!(r.residual, Some(s.residual));
        }
    }

    #[test]
    fn minimal_columns() {
        let f = read_csv("theta,x,y\n0,1,0\n1,0.5,0.8\n").unwrap();
        assert_eq!(f.rows.len(), 2);
        assert_eq!(f.rows[1].line, 3);
        assert!(f.rows[0].k.is_none() && f.params.is_none());
        assert!(read_csv("a,b\n1,2\n").is_err());
        assert!(read_csv("theta,x,y\n0,zz,1\n").is_err());
    }
}
