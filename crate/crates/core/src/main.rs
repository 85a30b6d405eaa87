use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use selberg::cohomology::{self, CohDims, CohomologyError, ModuleLabel, OddK, SpectralInput, SurfaceSignature};
use selberg::io::{format_complex, format_f64, parse_complex, read_spectrum, spectrum_to_string};
use selberg::spectrum::{enumerate_with_stats, Character};
use selberg::zeta::{self, ZetaError, ZetaParams};
use selberg::Execution;

const EXIT_IDENTITY_FAILED: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_NUMERIC: u8 = 3;

#[derive(Parser)]
#[command(name = "selberg", version, about = "Geodesic spectra, Selberg zeta products and cohomology dimensions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SigmaArg {
    Trivial,
    Sign,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate primitive hyperbolic classes of a free group.
    Enumerate {
        group_file: PathBuf,
        #[arg(long)]
        max_word_len: usize,
        #[arg(long, value_enum, default_value = "trivial")]
        sigma: SigmaArg,
        /// Output spectrum file (stdout when omitted).
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
        /// Run single-threaded.
        #[arg(long)]
        sequential: bool,
    },
    /// Evaluate the truncated Euler product at one or more points.
    Zeta {
        spectrum: PathBuf,
        /// Evaluation point `re,im`; repeat for several points.
        #[arg(long = "s", required = true, allow_hyphen_values = true, value_parser = parse_complex)]
        s: Vec<Complex64>,
        /// Interpret points as the spectral parameter λ (s = λ + 1/2).
        #[arg(long)]
        spectral_param: bool,
        #[arg(long, default_value_t = zeta::DEFAULT_TAIL_TOL)]
        tail_tol: f64,
        /// Fixed number of k-factors per class is k_max + 1 (auto when omitted).
        #[arg(long)]
        k_max: Option<u32>,
        /// Also print d/ds log Z (needs Re s > 1).
        #[arg(long)]
        derivative: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        sequential: bool,
    },
    /// Print the cohomology dimension tables.
    Cohom {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        cusps: u32,
        #[arg(long = "k", required = true, num_args = 1..)]
        k: Vec<u32>,
        /// Also tabulate the principal series at a generic λ.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        lambda: Option<Complex64>,
        /// Cusp-form multiplicity at `--lambda`.
        #[arg(long, default_value_t = 0)]
        m_cusp: u64,
    },
    /// Order of the zeta function predicted from cohomology dimensions.
    Orders {
        /// `h0,h1,h2`
        #[arg(long, value_parser = parse_dims)]
        dims: (u64, u64, u64),
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        lambda: Complex64,
        #[arg(long)]
        cocompact: bool,
    },
    /// Check the dimension identities for all odd k up to `--k-max`.
    Verify {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        cusps: u32,
        #[arg(long)]
        k_max: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Convert a spectral parameter λ to the classical s = λ + 1/2.
    ConvertParam {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        lambda: Complex64,
    },
}

fn parse_dims(s: &str) -> Result<(u64, u64, u64), String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [h0, h1, h2] = parts.as_slice() else {
        return Err(format!("expected h0,h1,h2, found {s:?}"));
    };
    let p = |x: &str| x.parse::<u64>().map_err(|_| format!("not a nonnegative integer: {x:?}"));
    Ok((p(h0)?, p(h1)?, p(h2)?))
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn validation(e: impl std::fmt::Display) -> Self {
        Failure { code: EXIT_VALIDATION, message: e.to_string() }
    }
}

impl From<ZetaError> for Failure {
    fn from(e: ZetaError) -> Self {
        let code = match e {
            ZetaError::NotConvergent(_) | ZetaError::DerivativeDomain(_) => EXIT_NUMERIC,
            _ => EXIT_VALIDATION,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<CohomologyError> for Failure {
    fn from(e: CohomologyError) -> Self {
        Failure::validation(e)
    }
}

fn execution(sequential: bool) -> Execution {
    if sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

fn run(cli: Cli, out: &mut String) -> Result<u8, Failure> {
    match cli.command {
        Command::Enumerate { group_file, max_word_len, sigma, output, sequential } => {
            let text = fs::read_to_string(&group_file)
                .map_err(|e| Failure::validation(format!("{}: {e}", group_file.display())))?;
            let group: selberg::FuchsianGroupSpec = text
                .parse()
                .map_err(|e| Failure::validation(format!("{}: {e}", group_file.display())))?;
            let sigma = match sigma {
                SigmaArg::Trivial => Character::Trivial,
                SigmaArg::Sign => Character::Sign,
            };
            let (sp, stats) = enumerate_with_stats(&group, max_word_len, sigma, execution(sequential))
                .map_err(Failure::validation)?;
            if stats.has_validation_warning() {
                eprintln!(
                    "warning: group {:?} produced {} elliptic and {} trivial primitive words; it is not a free torsion-free group",
                    group.name(),
                    stats.elliptic,
                    stats.identity
                );
            }
            let text = spectrum_to_string(&sp);
            match output {
                Some(path) => fs::write(&path, text)
                    .map_err(|e| Failure::validation(format!("{}: {e}", path.display())))?,
                None => out.push_str(&text),
            }
            eprintln!("{} classes up to word length {}", sp.len(), max_word_len);
        }
        Command::Zeta { spectrum, s, spectral_param, tail_tol, k_max, derivative, format, sequential } => {
            let sp = read_spectrum(&spectrum).map_err(Failure::validation)?;
            if format == Format::Table {
                out.push_str("s_re s_im zeta_re zeta_im log_re log_im");
                if derivative {
                    out.push_str(" dlog_re dlog_im");
                }
                out.push_str(" classes k_terms tail_bound certified\n");
            }
            for point in s {
                let mut p = if spectral_param { ZetaParams::spectral(point) } else { ZetaParams::classical(point) };
                p = p.with_tail_tol(tail_tol).with_execution(execution(sequential));
                if let Some(k) = k_max {
                    p = p.with_k_max(k);
                }
                let s_cl = p.s_classical();
                let log = zeta::log_zeta(&p, &sp)?;
                let dlog = if derivative { Some(zeta::log_derivative(&p, &sp)?) } else { None };
                if !log.tail_bound.certified {
                    eprintln!("warning: tail bound at s = {} is not certified (needs Re s > 1 and Re(s)·ℓ >= ln 2)", format_complex(s_cl));
                }
                let value = log.value.exp();
                match format {
                    Format::Text => {
                        out.push_str(&format!("s {}\n", format_complex(s_cl)));
                        out.push_str(&format!("zeta {}\n", format_complex(value)));
                        out.push_str(&format!("log_zeta {}\n", format_complex(log.value)));
                        if let Some(d) = dlog {
                            out.push_str(&format!("dlog_zeta {}\n", format_complex(d)));
                        }
                        out.push_str(&format!(
                            "classes {} k_terms {} tail_bound {} {}\n",
                            log.classes_used,
                            log.k_terms_used,
                            format_f64(log.tail_bound.bound),
                            if log.tail_bound.certified { "certified" } else { "uncertified" }
                        ));
                    }
                    Format::Table => {
                        out.push_str(&format!("{} {} {}", format_complex(s_cl), format_complex(value), format_complex(log.value)));
                        if let Some(d) = dlog {
                            out.push_str(&format!(" {}", format_complex(d)));
                        }
                        out.push_str(&format!(
                            " {} {} {} {}\n",
                            log.classes_used,
                            log.k_terms_used,
                            format_f64(log.tail_bound.bound),
                            log.tail_bound.certified
                        ));
                    }
                }
            }
        }
        Command::Cohom { genus, cusps, k, lambda, m_cusp } => {
            let sig = SurfaceSignature::new(genus, cusps)?;
            out.push_str(&format!("genus {genus} cusps {cusps}\n"));
            out.push_str("module h0 h1 h2 chi\n");
            let mut row = |d: CohDims| {
                out.push_str(&format!("{} {} {} {} {}\n", d.label, d.h0, d.h1, d.h2, cohomology::euler_characteristic(&d)));
            };
            let ks = k.iter().map(|&k| OddK::new(k)).collect::<Result<Vec<_>, _>>()?;
            for &k in &ks {
                row(cohomology::dims_f(sig, k)?);
                row(cohomology::dims_principal_plus(sig, k)?);
                row(cohomology::dims_principal_minus(sig, k)?);
                row(cohomology::dims_discrete_pair(sig, k)?);
            }
            if let Some(lambda) = lambda {
                let input = SpectralInput::new(lambda, m_cusp)?;
                row(cohomology::dims_principal_generic(sig, input)?);
            }
            out.push_str("weight dim_automorphic dim_cusp\n");
            for &k in &ks {
                let (a, s) = cohomology::dims_automorphic(sig, k)?;
                out.push_str(&format!("{} {a} {s}\n", k.get() + 1));
            }
        }
        Command::Orders { dims: (h0, h1, h2), lambda, cocompact } => {
            if lambda == Complex64::new(0.0, 0.0) {
                eprintln!("note: lambda = 0, reading --dims as the dimensions of the extension module");
                let d = CohDims::new(h0, h1, h2, ModuleLabel::HatExtensionAtZero);
                let order = cohomology::predict_order_at_zero(&d)?;
                out.push_str(&format!("{order}\n"));
            } else {
                let p = cohomology::predict_order(&CohDims::user(h0, h1, h2), lambda, cocompact)?;
                if let Some(w) = p.warning {
                    eprintln!("warning: {w}");
                }
                out.push_str(&format!("{}\n", p.order));
            }
        }
        Command::Verify { genus, cusps, k_max, format } => {
            let sig = SurfaceSignature::new(genus, cusps)?;
            let ks: Vec<OddK> = OddK::up_to(k_max).collect();
            let report = cohomology::consistency_report(sig, &ks)?;
            out.push_str(&match format {
                Format::Text => report.to_text(),
                Format::Table => report.to_table(),
            });
            if !report.all_pass() {
                return Ok(EXIT_IDENTITY_FAILED);
            }
        }
        Command::ConvertParam { lambda } => {
            out.push_str(&format!("{}\n", format_complex(zeta::convert_parameter(lambda))));
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(cli, &mut out);
    // Data goes out only when complete, so failures never leave partial tables.
    let code = match result {
        Ok(code) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(EXIT_VALIDATION);
            }
            code
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    };
    ExitCode::from(code)
}
