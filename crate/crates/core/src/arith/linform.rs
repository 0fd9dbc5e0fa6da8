use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{ArithError, Poly, Rational};

/// Affine-linear integer form `sum c_i x_i + c_k k + c_0`.
///
/// Variables are stored 0-based and rendered 1-based (`x1` is index 0).
/// Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinForm {
    coeffs: BTreeMap<usize, i64>,
    k_coeff: i64,
    constant: i64,
}

impl LinForm {
    pub fn zero() -> Self {
        LinForm::default()
    }

    pub fn var(index: usize) -> Self {
        let mut f = LinForm::zero();
        f.add_var(index, 1);
        f
    }

    pub fn constant(c: i64) -> Self {
        LinForm {
            constant: c,
            ..LinForm::default()
        }
    }

    pub fn k_term(c: i64) -> Self {
        LinForm {
            k_coeff: c,
            ..LinForm::default()
        }
    }

    /// `sum_{i in subset} x_i - k (|subset| - 1)`.
    pub fn wall_form(subset: &[usize]) -> Self {
        let mut f = LinForm::zero();
        for &i in subset {
            f.add_var(i, 1);
        }
        f.k_coeff = -(subset.len() as i64 - 1);
        f
    }

    pub fn add_var(&mut self, index: usize, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.coeffs.entry(index).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.coeffs.remove(&index);
        }
    }

    pub fn coeff(&self, index: usize) -> i64 {
        self.coeffs.get(&index).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.coeffs.iter().map(|(&i, &c)| (i, c))
    }

    pub fn k_coeff(&self) -> i64 {
        self.k_coeff
    }

    pub fn constant_term(&self) -> i64 {
        self.constant
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.k_coeff == 0 && self.constant == 0
    }

    /// Largest variable index used, plus one.
    pub fn arity(&self) -> usize {
        self.coeffs.keys().next_back().map_or(0, |&i| i + 1)
    }

    pub fn add(&self, other: &LinForm) -> LinForm {
        let mut out = self.clone();
        for (i, c) in other.coeffs() {
            out.add_var(i, c);
        }
        out.k_coeff += other.k_coeff;
        out.constant += other.constant;
        out
    }

    pub fn scale(&self, s: i64) -> LinForm {
        if s == 0 {
            return LinForm::zero();
        }
        LinForm {
            coeffs: self.coeffs.iter().map(|(&i, &c)| (i, c * s)).collect(),
            k_coeff: self.k_coeff * s,
            constant: self.constant * s,
        }
    }

    pub fn neg(&self) -> LinForm {
        self.scale(-1)
    }

    pub fn sub(&self, other: &LinForm) -> LinForm {
        self.add(&other.neg())
    }

    /// Evaluates at integer `x` and leak `k`.
    pub fn eval(&self, x: &[i64], k: i64) -> Result<i64, ArithError> {
        let mut acc = self.k_coeff * k + self.constant;
        for (i, c) in self.coeffs() {
            let xi = x.get(i).ok_or(ArithError::IndexOutOfRange {
                index: i + 1,
                len: x.len(),
            })?;
            acc += c * xi;
        }
        Ok(acc)
    }

    /// The same form as a polynomial in `nvars` variables with `k` fixed.
    pub fn to_poly(&self, nvars: usize, k: i64) -> Poly {
        assert!(self.arity() <= nvars, "linear form uses x{} but only {nvars} variables", self.arity());
        let mut p = Poly::constant(nvars, Rational::from(self.k_coeff * k + self.constant));
        for (i, c) in self.coeffs() {
            p = p.add(&Poly::var(nvars, i).scale(&Rational::from(c)));
        }
        p
    }
}

impl fmt::Display for LinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut term = |f: &mut fmt::Formatter<'_>, c: i64, sym: &str| -> fmt::Result {
            if c == 0 {
                return Ok(());
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            first = false;
            match (c.abs(), sym.is_empty()) {
                (a, true) => write!(f, "{sign}{a}"),
                (1, false) => write!(f, "{sign}{sym}"),
                (a, false) if sym == "k" => write!(f, "{sign}{a}k"),
                (a, false) => write!(f, "{sign}{a}*{sym}"),
            }
        };
        for (i, c) in self.coeffs() {
            term(f, c, &format!("x{}", i + 1))?;
        }
        term(f, self.k_coeff, "k")?;
        term(f, self.constant, "")?;
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl FromStr for LinForm {
    type Err = ArithError;

    /// Accepts the rendering produced by `Display`, e.g. `x1+x2+x3-2k`,
    /// `2*x1-x4+3`, or `-k`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ArithError::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut out = LinForm::zero();
        let bytes = compact.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            let mut sign = 1i64;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -1;
                }
                pos += 1;
            } else if pos != 0 {
                return Err(bad());
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos] != b'+' && bytes[pos] != b'-' {
                pos += 1;
            }
            let tok = &compact[start..pos];
            if tok.is_empty() {
                return Err(bad());
            }
            let (coef, sym) = split_term(tok).ok_or_else(bad)?;
            let c = sign * coef;
            match sym {
                None => out.constant += c,
                Some("k") => out.k_coeff += c,
                Some(v) => {
                    let idx: usize = v
                        .strip_prefix('x')
                        .and_then(|d| d.parse().ok())
                        .filter(|&d: &usize| d >= 1)
                        .ok_or_else(bad)?;
                    out.add_var(idx - 1, c);
                }
            }
        }
        Ok(out)
    }
}

/// Splits `3*x2`, `3x2`, `x2`, `2k`, `k`, `7` into coefficient and symbol.
fn split_term(tok: &str) -> Option<(i64, Option<&str>)> {
    let digits = tok.bytes().take_while(u8::is_ascii_digit).count();
    let (num, rest) = tok.split_at(digits);
    let rest = rest.strip_prefix('*').unwrap_or(rest);
    let coef = if num.is_empty() { 1 } else { num.parse().ok()? };
    if rest.is_empty() {
        if num.is_empty() {
            return None;
        }
        return Some((coef, None));
    }
    if rest == "k" || (rest.starts_with('x') && rest.len() > 1) {
        Some((coef, Some(rest)))
    } else {
        None
    }
}

impl Serialize for LinForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LinForm {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(s: &str) -> LinForm {
        s.parse().unwrap()
    }

    #[test]
    fn evaluates_wall_form_in_example_chamber() {
        let f = form("x1+x2+x3-2k");
        assert_eq!(f.eval(&[6, -1, -1, 1, -2], 1).unwrap(), 2);
        assert_eq!(f, LinForm::wall_form(&[0, 1, 2]));
    }

    #[test]
    fn zero_form_evaluates_to_zero() {
        assert_eq!(LinForm::zero().eval(&[5, -3, 9], 4).unwrap(), 0);
        assert_eq!(LinForm::zero().to_string(), "0");
    }

    #[test]
    fn caterpillar_edge() {
        assert_eq!(form("x1-k").eval(&[3, -1, -1], 1).unwrap(), 2);
    }

    #[test]
    fn out_of_range_variable() {
        let err = form("x4").eval(&[1, 2, 3], 0).unwrap_err();
        assert_eq!(err, ArithError::IndexOutOfRange { index: 4, len: 3 });
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let f = form("x1+x2").sub(&form("x2"));
        assert_eq!(f, LinForm::var(0));
        assert_eq!(f.coeffs().count(), 1);
    }

    #[test]
    fn display_parse_round_trip() {
        for s in ["x1+x2+x3-2k", "-x2+k", "2*x1-3*x4+7", "-k", "5", "0"] {
            assert_eq!(form(s).to_string(), s);
        }
        assert_eq!(form("3x2 + 2*k - 1").to_string(), "3*x2+2k-1");
        assert!("x0".parse::<LinForm>().is_err());
        assert!("x1++x2".parse::<LinForm>().is_err());
        assert!("y".parse::<LinForm>().is_err());
    }
}
