//! Parser for polynomial and principal-part literals.
//!
//! Grammar: signed sums of terms `coef`, `coef*z^k`, `coefz^k`, `z^k`, `z`,
//! where `coef` is a float like `2`, `0.5`, `1e-3` or a complex literal
//! `(re,im)`. Exponents may be negative (`z^-2`) for principal parts.

use num_complex::Complex64;

use exp_periods::{PolyC, PrincipalPart};

/// Parse a polynomial literal; negative powers are rejected.
pub fn parse_poly(input: &str) -> Result<PolyC, String> {
    let terms = parse_terms(input)?;
    let mut max_pow = 0i64;
    for &(k, _) in &terms {
        if k < 0 {
            return Err(format!("negative power z^{k} is not allowed in a polynomial"));
        }
        max_pow = max_pow.max(k);
    }
    let mut coeffs = vec![Complex64::ZERO; (max_pow + 1) as usize];
    for (k, c) in terms {
        coeffs[k as usize] += c;
    }
    Ok(PolyC::new(coeffs))
}

/// Parse a principal-part literal: every term must have a negative power.
pub fn parse_principal(input: &str) -> Result<PrincipalPart, String> {
    let terms = parse_terms(input)?;
    let mut max_order = 0i64;
    for &(k, _) in &terms {
        if k >= 0 {
            return Err(format!(
                "term with power z^{k} is not allowed in a principal part (powers must be negative)"
            ));
        }
        max_order = max_order.max(-k);
    }
    let mut neg = vec![Complex64::ZERO; max_order as usize];
    for (k, c) in terms {
        neg[(-k - 1) as usize] += c;
    }
    PrincipalPart::new(neg).map_err(|e| e.to_string())
}

fn parse_terms(input: &str) -> Result<Vec<(i64, Complex64)>, String> {
    let chars: Vec<char> = input.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err("empty polynomial literal".into());
    }
    let mut pos = 0usize;
    let mut terms = Vec::new();
    let mut sign = 1.0f64;
    // Optional leading sign.
    if chars[pos] == '+' || chars[pos] == '-' {
        sign = if chars[pos] == '-' { -1.0 } else { 1.0 };
        pos += 1;
    }
    loop {
        let (term, next) = parse_term(&chars, pos)?;
        terms.push((term.0, term.1 * sign));
        pos = next;
        if pos == chars.len() {
            break;
        }
        match chars[pos] {
            '+' => sign = 1.0,
            '-' => sign = -1.0,
            other => return Err(format!("expected '+' or '-' before '{other}' at offset {pos}")),
        }
        pos += 1;
        if pos == chars.len() {
            return Err("dangling sign at end of literal".into());
        }
    }
    Ok(terms)
}

fn parse_term(chars: &[char], mut pos: usize) -> Result<((i64, Complex64), usize), String> {
    let mut coef = Complex64::ONE;
    let mut saw_coef = false;

    if pos < chars.len() && chars[pos] == '(' {
        let (c, next) = parse_complex(chars, pos)?;
        coef = c;
        saw_coef = true;
        pos = next;
    } else if pos < chars.len() && (chars[pos].is_ascii_digit() || chars[pos] == '.') {
        let (x, next) = parse_float(chars, pos)?;
        coef = Complex64::new(x, 0.0);
        saw_coef = true;
        pos = next;
    }

    if pos < chars.len() && chars[pos] == '*' {
        if !saw_coef {
            return Err(format!("unexpected '*' at offset {pos}"));
        }
        pos += 1;
    }

    if pos < chars.len() && chars[pos] == 'z' {
        pos += 1;
        let mut power = 1i64;
        if pos < chars.len() && chars[pos] == '^' {
            pos += 1;
            let (k, next) = parse_int(chars, pos)?;
            power = k;
            pos = next;
        }
        Ok(((power, coef), pos))
    } else if saw_coef {
        Ok(((0, coef), pos))
    } else {
        Err(format!("expected a coefficient or 'z' at offset {pos}"))
    }
}

fn parse_complex(chars: &[char], mut pos: usize) -> Result<(Complex64, usize), String> {
    // '(' float ',' float ')'
    pos += 1; // consume '('
    let (re, next) = parse_signed_float(chars, pos)?;
    pos = next;
    if pos >= chars.len() || chars[pos] != ',' {
        return Err(format!("expected ',' in complex literal at offset {pos}"));
    }
    pos += 1;
    let (im, next) = parse_signed_float(chars, pos)?;
    pos = next;
    if pos >= chars.len() || chars[pos] != ')' {
        return Err(format!("expected ')' in complex literal at offset {pos}"));
    }
    Ok((Complex64::new(re, im), pos + 1))
}

fn parse_signed_float(chars: &[char], mut pos: usize) -> Result<(f64, usize), String> {
    let mut sign = 1.0;
    if pos < chars.len() && (chars[pos] == '+' || chars[pos] == '-') {
        sign = if chars[pos] == '-' { -1.0 } else { 1.0 };
        pos += 1;
    }
    let (x, next) = parse_float(chars, pos)?;
    Ok((sign * x, next))
}

fn parse_float(chars: &[char], pos: usize) -> Result<(f64, usize), String> {
    let mut end = pos;
    while end < chars.len() && (chars[end].is_ascii_digit() || chars[end] == '.') {
        end += 1;
    }
    if end == pos {
        return Err(format!("expected a number at offset {pos}"));
    }
    // Exponent part, e.g. 1e-3; only when digits follow.
    if end < chars.len() && (chars[end] == 'e' || chars[end] == 'E') {
        let mut probe = end + 1;
        if probe < chars.len() && (chars[probe] == '+' || chars[probe] == '-') {
            probe += 1;
        }
        if probe < chars.len() && chars[probe].is_ascii_digit() {
            end = probe;
            while end < chars.len() && chars[end].is_ascii_digit() {
                end += 1;
            }
        }
    }
    let text: String = chars[pos..end].iter().collect();
    text.parse::<f64>().map(|x| (x, end)).map_err(|e| format!("bad number '{text}': {e}"))
}

fn parse_int(chars: &[char], mut pos: usize) -> Result<(i64, usize), String> {
    let mut sign = 1i64;
    if pos < chars.len() && (chars[pos] == '+' || chars[pos] == '-') {
        sign = if chars[pos] == '-' { -1 } else { 1 };
        pos += 1;
    }
    let mut end = pos;
    while end < chars.len() && chars[end].is_ascii_digit() {
        end += 1;
    }
    if end == pos {
        return Err(format!("expected an integer exponent at offset {pos}"));
    }
    let text: String = chars[pos..end].iter().collect();
    text.parse::<i64>().map(|k| (sign * k, end)).map_err(|e| format!("bad exponent '{text}': {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn plain_monomials() {
        assert_eq!(parse_poly("z^2").unwrap(), PolyC::from_real(&[0.0, 0.0, 1.0]));
        assert_eq!(parse_poly("z").unwrap(), PolyC::from_real(&[0.0, 1.0]));
        assert_eq!(parse_poly("2z^2").unwrap(), PolyC::from_real(&[0.0, 0.0, 2.0]));
        assert_eq!(parse_poly("2*z^2").unwrap(), PolyC::from_real(&[0.0, 0.0, 2.0]));
    }

    #[test]
    fn sums_and_signs() {
        assert_eq!(parse_poly("z^5+z").unwrap(), {
            let mut v = vec![0.0; 6];
            v[1] = 1.0;
            v[5] = 1.0;
            PolyC::from_real(&v)
        });
        assert_eq!(parse_poly("-z^2+0.5").unwrap(), PolyC::from_real(&[0.5, 0.0, -1.0]));
        assert_eq!(parse_poly("1-z").unwrap(), PolyC::from_real(&[1.0, -1.0]));
    }

    #[test]
    fn complex_coefficients() {
        let p = parse_poly("(0,1)z^3").unwrap();
        assert_eq!(p.coeff(3), c(0.0, 1.0));
        let q = parse_poly("(1.5,-2)z + (0,-1)").unwrap();
        assert_eq!(q.coeff(1), c(1.5, -2.0));
        assert_eq!(q.coeff(0), c(0.0, -1.0));
    }

    #[test]
    fn scientific_notation() {
        let p = parse_poly("1e-3*z^2 + 2E2").unwrap();
        assert_eq!(p.coeff(2), c(1e-3, 0.0));
        assert_eq!(p.coeff(0), c(200.0, 0.0));
    }

    #[test]
    fn principal_parts() {
        let h = parse_principal("z^-1").unwrap();
        assert_eq!(h.pole_order(), 1);
        assert_eq!(h.coeff_neg(1), c(1.0, 0.0));
        let h2 = parse_principal("2z^-3 + (0,1)z^-1").unwrap();
        assert_eq!(h2.pole_order(), 3);
        assert_eq!(h2.coeff_neg(3), c(2.0, 0.0));
        assert_eq!(h2.coeff_neg(1), c(0.0, 1.0));
    }

    #[test]
    fn rejections() {
        assert!(parse_poly("z^-1").is_err());
        assert!(parse_principal("z^2").is_err());
        assert!(parse_poly("").is_err());
        assert!(parse_poly("2 +").is_err());
        assert!(parse_poly("q^2").is_err());
        assert!(parse_poly("(1,2").is_err());
    }
}
