//! Output records and their serialization. JSON carries one object per run
//! with `schema_version` and the run metadata; CSV is a header row plus data
//! rows with floats at 17 significant digits. Both are byte-stable for a
//! fixed configuration and seed.

use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::Context as _;
use serde::Serialize;

use spincorr_core::{ChshResult, CorrelationEstimate, KsResult, Mode, SweepReport};

use crate::args::Format;

pub const SCHEMA_VERSION: u32 = 1;

/// Floats in CSV output: 17 significant digits, scientific notation.
fn f17(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Serialize, Debug)]
pub struct ExactRow {
    pub theta: f64,
    pub correlation: f64,
}

#[derive(Serialize, Debug)]
pub struct ExactReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub mode: Mode,
    pub seed: u64,
    pub results: Vec<ExactRow>,
}

#[derive(Serialize, Debug)]
pub struct MatrixRow {
    pub theta: f64,
    /// Conditional probabilities for a single spin, rows conditioned on the
    /// first direction's outcome.
    pub single: [[f64; 2]; 2],
    /// The singlet variant (outcome along the second direction inverted);
    /// present in bipartite mode so the two can be read side by side.
    pub singlet: Option<[[f64; 2]; 2]>,
}

#[derive(Serialize, Debug)]
pub struct MatrixReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub mode: Mode,
    pub seed: u64,
    pub results: Vec<MatrixRow>,
}

#[derive(Serialize, Debug)]
pub struct SampleRow {
    pub theta: f64,
    #[serde(flatten)]
    pub estimate: CorrelationEstimate,
}

#[derive(Serialize, Debug)]
pub struct SampleReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub mode: Mode,
    pub n: u64,
    pub seed: u64,
    pub results: Vec<SampleRow>,
}

#[derive(Serialize, Debug)]
pub struct SweepEnvelope {
    pub schema_version: u32,
    pub command: &'static str,
    #[serde(flatten)]
    pub report: SweepReport,
}

#[derive(Serialize, Debug)]
pub struct ChshEnvelope {
    pub schema_version: u32,
    pub command: &'static str,
    #[serde(flatten)]
    pub result: ChshResult,
}

#[derive(Serialize, Debug)]
pub struct KsEnvelope {
    pub schema_version: u32,
    pub command: &'static str,
    #[serde(flatten)]
    pub result: KsResult,
}

/// The result of one CLI run, ready to serialize.
#[derive(Debug)]
pub enum Output {
    Exact(ExactReport),
    Matrix(MatrixReport),
    Sample(SampleReport),
    Sweep(SweepEnvelope),
    Chsh(ChshEnvelope),
    Ks(KsEnvelope),
}

impl Output {
    pub fn to_bytes(&self, format: Format) -> anyhow::Result<Vec<u8>> {
        match format {
            Format::Json => {
                let mut bytes = match self {
                    Output::Exact(r) => serde_json::to_vec_pretty(r)?,
                    Output::Matrix(r) => serde_json::to_vec_pretty(r)?,
                    Output::Sample(r) => serde_json::to_vec_pretty(r)?,
                    Output::Sweep(r) => serde_json::to_vec_pretty(r)?,
                    Output::Chsh(r) => serde_json::to_vec_pretty(r)?,
                    Output::Ks(r) => serde_json::to_vec_pretty(r)?,
                };
                bytes.push(b'\n');
                Ok(bytes)
            }
            Format::Csv => Ok(self.to_csv().into_bytes()),
        }
    }

    fn to_csv(&self) -> String {
        let mut out = String::new();
        match self {
            Output::Exact(r) => {
                out.push_str("theta,correlation\n");
                for row in &r.results {
                    out.push_str(&format!("{},{}\n", f17(row.theta), f17(row.correlation)));
                }
            }
            Output::Matrix(r) => {
                let single_cols = "p_plus_given_plus,p_minus_given_plus,\
                                   p_plus_given_minus,p_minus_given_minus";
                if r.mode == Mode::Bipartite {
                    out.push_str(&format!(
                        "theta,{single_cols},singlet_p_plus_given_plus,\
                         singlet_p_minus_given_plus,singlet_p_plus_given_minus,\
                         singlet_p_minus_given_minus\n"
                    ));
                } else {
                    out.push_str(&format!("theta,{single_cols}\n"));
                }
                for row in &r.results {
                    out.push_str(&f17(row.theta));
                    for entry in row.single.iter().flatten() {
                        out.push(',');
                        out.push_str(&f17(*entry));
                    }
                    if let Some(singlet) = &row.singlet {
                        for entry in singlet.iter().flatten() {
                            out.push(',');
                            out.push_str(&f17(*entry));
                        }
                    }
                    out.push('\n');
                }
            }
            Output::Sample(r) => {
                out.push_str("theta,mean,std_error,n,seed,stream\n");
                for row in &r.results {
                    let e = &row.estimate;
                    out.push_str(&format!(
                        "{},{},{},{},{},{}\n",
                        f17(row.theta),
                        f17(e.mean),
                        f17(e.std_error),
                        e.n,
                        e.seed,
                        e.stream
                    ));
                }
            }
            Output::Sweep(r) => {
                out.push_str("theta,exact,sampled_mean,std_error,z_score\n");
                for row in &r.report.rows {
                    let z = row.z_score.map(f17).unwrap_or_default();
                    out.push_str(&format!(
                        "{},{},{},{},{z}\n",
                        f17(row.theta),
                        f17(row.exact),
                        f17(row.sampled_mean),
                        f17(row.std_error)
                    ));
                }
            }
            Output::Chsh(r) => {
                out.push_str(
                    "engine,a,a_alt,b,b_alt,e_ab,e_ab_alt,e_a_alt_b,e_a_alt_b_alt,\
                     se_ab,se_ab_alt,se_a_alt_b,se_a_alt_b_alt,s_value,s_std_error,n,seed\n",
                );
                let c = &r.result;
                let engine = match c.engine {
                    spincorr_core::Engine::Exact => "exact",
                    spincorr_core::Engine::Sampled => "sampled",
                };
                out.push_str(&format!(
                    "{engine},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                    f17(c.angles.a),
                    f17(c.angles.a_alt),
                    f17(c.angles.b),
                    f17(c.angles.b_alt),
                    f17(c.correlations[0]),
                    f17(c.correlations[1]),
                    f17(c.correlations[2]),
                    f17(c.correlations[3]),
                    f17(c.std_errors[0]),
                    f17(c.std_errors[1]),
                    f17(c.std_errors[2]),
                    f17(c.std_errors[3]),
                    f17(c.s_value),
                    f17(c.s_std_error),
                    c.n,
                    c.seed
                ));
            }
            Output::Ks(r) => {
                out.push_str("statistic,critical_001,pass,n,seed\n");
                let k = &r.result;
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    f17(k.statistic),
                    f17(k.critical_001),
                    k.pass,
                    k.n,
                    k.seed
                ));
            }
        }
        out
    }
}

/// Write to stdout, or atomically to a file: the bytes land in a sibling
/// `.tmp` file first and are renamed into place, so a failed run leaves no
/// partial output at the destination.
pub fn write_output(path: Option<&Path>, bytes: &[u8]) -> anyhow::Result<()> {
    let Some(path) = path else {
        std::io::stdout()
            .write_all(bytes)
            .context("writing to stdout")?;
        return Ok(());
    };
    let file_name = path
        .file_name()
        .with_context(|| format!("output path `{}` has no file name", path.display()))?;
    let mut tmp_name = file_name.to_os_string();
    tmp_name.push(".tmp");
    let tmp = path.with_file_name(tmp_name);
    fs::write(&tmp, bytes).with_context(|| format!("writing `{}`", tmp.display()))?;
    if let Err(err) = fs::rename(&tmp, path) {
        let _ = fs::remove_file(&tmp);
        return Err(err).with_context(|| format!("renaming into `{}`", path.display()));
    }
    Ok(())
}
