//! Text formats: length-spectrum files and complex numbers.
//!
//! A spectrum file looks like
//!
//! ```text
//! length-spectrum v1
//! group Gamma(2)
//! word_cutoff 2
//! heuristic_length_cutoff 3.5254943480781722e0
//! class AB 6 +1 3.5254943480781722e0 AB 1
//! class ab 6 +1 3.5254943480781722e0 ab 1
//! ```
//!
//! Record fields are canonical word, trace, ε, length, root word and power.
//! Floats carry 17 significant digits, which round-trips every `f64`.

use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use num_complex::Complex64;
use thiserror::Error;

use crate::spectrum::{GeodesicClass, LengthSpectrum, SpectrumError};
use crate::word::Word;

pub const SPECTRUM_HEADER: &str = "length-spectrum v1";

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

/// Formats with 17 significant digits in scientific notation.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn format_complex(z: Complex64) -> String {
    format!("{} {}", format_f64(z.re), format_f64(z.im))
}

/// Parses `re,im` or a bare real `re`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let s = s.trim();
    let (re, im) = match s.split_once(',') {
        Some((re, im)) => (re.trim(), im.trim()),
        None => (s, "0"),
    };
    let re: f64 = re.parse().map_err(|_| format!("bad real part {re:?} in {s:?}"))?;
    let im: f64 = im.parse().map_err(|_| format!("bad imaginary part {im:?} in {s:?}"))?;
    if !(re.is_finite() && im.is_finite()) {
        return Err(format!("non-finite complex number {s:?}"));
    }
    Ok(Complex64::new(re, im))
}

/// Tolerance for the stored length: one unit in the 17th significant digit.
fn last_digit_unit(x: f64) -> f64 {
    if x == 0.0 {
        return f64::MIN_POSITIVE;
    }
    10f64.powi(x.abs().log10().floor() as i32 - 16)
}

pub fn spectrum_to_string(sp: &LengthSpectrum) -> String {
    let mut out = String::new();
    out.push_str(SPECTRUM_HEADER);
    out.push('\n');
    out.push_str(&format!("group {}\n", sp.group_name()));
    out.push_str(&format!("word_cutoff {}\n", sp.word_cutoff()));
    out.push_str(&format!("heuristic_length_cutoff {}\n", format_f64(sp.heuristic_length_cutoff())));
    for c in sp.classes() {
        out.push_str(&format!(
            "class {} {} {} {} {} {}\n",
            c.canonical_word,
            c.trace,
            c.epsilon,
            format_f64(c.length),
            c.root,
            c.power
        ));
    }
    out
}

pub fn parse_spectrum(text: &str) -> Result<LengthSpectrum, FormatError> {
    let err = |line: usize, message: String| FormatError::Line { line, message };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));

    let mut expect_key = |key: &str| -> Result<(usize, String), FormatError> {
        match lines.next() {
            Some((n, l)) => match l.split_once(' ') {
                Some((k, v)) if k == key => Ok((n, v.to_string())),
                _ => Err(err(n, format!("expected `{key} ...`, found {l:?}"))),
            },
            None => Err(err(0, format!("unexpected end of file, expected `{key}`"))),
        }
    };

    let (n, header) = expect_key("length-spectrum")?;
    if format!("length-spectrum {header}") != SPECTRUM_HEADER {
        return Err(err(n, format!("header mismatch: expected {SPECTRUM_HEADER:?}")));
    }
    let (_, group) = expect_key("group")?;
    let (n, cutoff) = expect_key("word_cutoff")?;
    let word_cutoff: usize = cutoff.parse().map_err(|_| err(n, format!("bad word_cutoff {cutoff:?}")))?;
    let (n, heur) = expect_key("heuristic_length_cutoff")?;
    let heuristic: f64 = heur.parse().map_err(|_| err(n, format!("bad heuristic_length_cutoff {heur:?}")))?;

    let mut classes: Vec<GeodesicClass> = Vec::new();
    for (n, line) in lines {
        let fields: Vec<&str> = line.split(' ').collect();
        if fields.len() != 7 || fields[0] != "class" {
            return Err(err(n, format!("expected `class <word> <trace> <eps> <length> <root> <power>`, found {line:?}")));
        }
        let word: Word = fields[1].parse().map_err(|e| err(n, format!("{e}")))?;
        let trace: BigInt = fields[2].parse().map_err(|_| err(n, format!("bad trace {:?}", fields[2])))?;
        let epsilon = fields[3].parse().map_err(|e: String| err(n, e))?;
        let length: f64 = fields[4].parse().map_err(|_| err(n, format!("bad length {:?}", fields[4])))?;
        let root: Word = fields[5].parse().map_err(|e| err(n, format!("{e}")))?;
        let power: u32 = fields[6].parse().map_err(|_| err(n, format!("bad power {:?}", fields[6])))?;
        let class = GeodesicClass { canonical_word: word, trace, length, epsilon, root, power };
        class
            .validate(last_digit_unit(length))
            .map_err(|e| err(n, format!("invariant violation: {e}")))?;
        if let Some(prev) = classes.last() {
            let ordered = prev.length.total_cmp(&class.length).then_with(|| prev.canonical_word.cmp(&class.canonical_word));
            if ordered != std::cmp::Ordering::Less {
                return Err(err(n, format!("record {} is out of order or duplicated", class.canonical_word)));
            }
        }
        classes.push(class);
    }
    Ok(LengthSpectrum::new(group, classes, word_cutoff, heuristic)?)
}

pub fn read_spectrum(path: impl AsRef<Path>) -> Result<LengthSpectrum, FormatError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.display().to_string(), source })?;
    parse_spectrum(&text)
}

pub fn write_spectrum(sp: &LengthSpectrum, path: impl AsRef<Path>) -> Result<(), FormatError> {
    let path = path.as_ref();
    fs::write(path, spectrum_to_string(sp)).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}
