//! Number parsing and formatting shared by the catalog, file readers and
//! the CLI.

use crate::error::{invalid, Result};

/// Parses a decimal (`0.25`, `1e-12`) or a simple rational (`1/18`, `-3/4`).
/// The rational is evaluated as one f64 division, so `1/6` is the nearest
/// double to one sixth.
pub fn parse_real(text: &str) -> Result<f64> {
    let t = text.trim();
    let value = match t.split_once('/') {
        Some((num, den)) => {
            let n: f64 = num.trim().parse().map_err(|_| bad(t))?;
            let d: f64 = den.trim().parse().map_err(|_| bad(t))?;
            if d == 0.0 {
                return Err(invalid("number", format!("`{t}` divides by zero")));
            }
            n / d
        }
        None => t.parse().map_err(|_| bad(t))?,
    };
    if !value.is_finite() {
        return Err(invalid("number", format!("`{t}` is not finite")));
    }
    Ok(value)
}

fn bad(t: &str) -> crate::error::Error {
    invalid("number", format!("cannot parse `{t}` as a real or p/q rational"))
}

/// Plain decimal with 17 significant digits; falls back to scientific
/// notation outside `1e-5 ..= 1e17`.
pub fn format_sig17(x: f64) -> String {
    if x == 0.0 {
        return format!("{:.16}", 0.0);
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..=16).contains(&exp) {
        let decimals = (16 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        // log10 rounding can leave 18 digits near powers of ten; one more
        // pass with the corrected exponent fixes that.
        let digits = s.chars().filter(char::is_ascii_digit).count();
        let leading_zeros =
            s.trim_start_matches('-').chars().take_while(|c| *c == '0' || *c == '.').filter(|c| *c == '0').count();
        if digits - leading_zeros > 17 && decimals > 0 {
            return format!("{x:.prec$}", prec = decimals - 1);
        }
        s
    } else {
        format!("{x:.16e}")
    }
}
