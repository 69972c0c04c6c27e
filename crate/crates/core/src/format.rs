//! Number formatting shared by reports.

use num_complex::Complex64;

/// Magnitudes below this print as zero.
const ZERO_CUTOFF: f64 = 1e-9;

/// A real number to 10 significant digits, trailing zeros trimmed.
pub fn real(x: f64) -> String {
    if x.abs() < ZERO_CUTOFF {
        return "0".to_string();
    }
    let s = format!("{:.9e}", x);
    let (mantissa, exp) = s.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..=15).contains(&exp) {
        let m = trim(mantissa);
        return format!("{m}e{exp}");
    }
    let decimals = (9 - exp).max(0) as usize;
    let rounded: f64 = format!("{mantissa}e{exp}").parse().expect("float");
    let out = trim(&format!("{rounded:.decimals$}"));
    if out == "-0" {
        "0".to_string()
    } else {
        out
    }
}

fn trim(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

/// A complex number as `a`, `bi` or `a+bi`, each part to 10 significant digits.
pub fn complex(z: Complex64) -> String {
    let re = real(z.re);
    let im = real(z.im);
    match (re.as_str(), im.as_str()) {
        (_, "0") => re,
        ("0", _) => format!("{im}i"),
        _ if im.starts_with('-') => format!("{re}{im}i"),
        _ => format!("{re}+{im}i"),
    }
}

pub fn complex_list(values: &[Complex64], sep: &str) -> String {
    values
        .iter()
        .map(|v| complex(*v))
        .collect::<Vec<_>>()
        .join(sep)
}

pub fn index_list(indices: &[usize]) -> String {
    indices
        .iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(",")
}
