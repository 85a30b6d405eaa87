//! Independent oracles. Nothing here calls into the enumeration or zeta code
//! paths it is used to check.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_complex::Complex64;

type M = [[i128; 2]; 2];

fn mul(x: M, y: M) -> M {
    [
        [x[0][0] * y[0][0] + x[0][1] * y[1][0], x[0][0] * y[0][1] + x[0][1] * y[1][1]],
        [x[1][0] * y[0][0] + x[1][1] * y[1][0], x[1][0] * y[0][1] + x[1][1] * y[1][1]],
    ]
}

/// Generator lifts of Γ(2).
fn gamma2_letter(c: char) -> M {
    match c {
        'A' => [[1, 2], [0, 1]],
        'B' => [[1, 0], [2, 1]],
        'a' => [[1, -2], [0, 1]],
        'b' => [[1, 0], [-2, 1]],
        _ => panic!("not a Γ(2) letter: {c}"),
    }
}

pub fn gamma2_trace(word: &str) -> i128 {
    let m = word.chars().fold([[1, 0], [0, 1]], |acc, c| mul(acc, gamma2_letter(c)));
    m[0][0] + m[1][1]
}

fn inverse_char(c: char) -> char {
    if c.is_ascii_uppercase() {
        c.to_ascii_lowercase()
    } else {
        c.to_ascii_uppercase()
    }
}

/// All freely reduced words of length exactly `n` over `alphabet`.
pub fn reduced_words(alphabet: &[char], n: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * alphabet.len());
        for w in &out {
            for &c in alphabet {
                if w.chars().last().is_none_or(|l| l != inverse_char(c)) {
                    let mut v = w.clone();
                    v.push(c);
                    next.push(v);
                }
            }
        }
        out = next;
    }
    out
}

fn cyclically_reduce(w: &str) -> String {
    let mut cs: Vec<char> = w.chars().collect();
    while cs.len() >= 2 && cs[0] == inverse_char(*cs.last().unwrap()) {
        cs.remove(0);
        cs.pop();
    }
    cs.into_iter().collect()
}

/// Least rotation by comparing every rotation.
pub fn min_rotation(w: &str) -> String {
    let n = w.len();
    (0..n.max(1))
        .map(|i| format!("{}{}", &w[i..], &w[..i]))
        .min()
        .unwrap_or_default()
}

pub fn is_proper_power(w: &str) -> bool {
    let n = w.len();
    (1..n).any(|p| n.is_multiple_of(p) && w[..p].repeat(n / p) == w)
}

/// Least rotation of the cyclic reduction, or `None` for trivial and
/// non-primitive classes.
pub fn primitive_class_key(w: &str) -> Option<String> {
    let w = cyclically_reduce(w);
    let key = min_rotation(&w);
    (!key.is_empty() && !is_proper_power(&key)).then_some(key)
}

/// Primitive hyperbolic classes of Γ(2) with cyclically reduced length ≤ `n`,
/// keyed by least rotation, valued by the SL(2) trace.
pub fn gamma2_brute_force(n: usize) -> BTreeMap<String, i128> {
    let mut classes = BTreeMap::new();
    for len in 1..=n {
        for w in reduced_words(&['A', 'B', 'a', 'b'], len) {
            let w = cyclically_reduce(&w);
            if w.is_empty() {
                continue;
            }
            let key = min_rotation(&w);
            if is_proper_power(&key) {
                continue;
            }
            let t = gamma2_trace(&key);
            if t.abs() > 2 {
                classes.insert(key, t);
            }
        }
    }
    classes
}

/// Primitive hyperbolic class counts for Γ(2) at word cutoffs 1..=8,
/// produced by an external brute-force script.
pub const GAMMA2_CLASS_COUNTS: [usize; 8] = [0, 2, 10, 28, 76, 192, 504, 1314];

/// Direct multiplication of factors `1 − ε e^{−(s+k)ℓ}` for `k = 0..=k_last(ℓ)`.
pub fn direct_product(s: Complex64, classes: &[(f64, f64)], k_last: impl Fn(f64) -> u32) -> Complex64 {
    let mut z = Complex64::new(1.0, 0.0);
    for &(length, eps) in classes {
        for k in 0..=k_last(length) {
            z *= Complex64::new(1.0, 0.0) - eps * (-(s + k as f64) * length).exp();
        }
    }
    z
}

/// Central difference `(f(s+h) − f(s−h)) / 2h` along the real axis.
pub fn central_difference(f: impl Fn(Complex64) -> Complex64, s: Complex64, h: f64) -> Complex64 {
    (f(s + h) - f(s - h)) / (2.0 * h)
}
