use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::Rational;

/// Sparse multivariate polynomial over the rationals in a fixed number of
/// variables `x1..xn`. Terms are keyed by exponent vectors of length `nvars`
/// in lexicographic order; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Rational::one())
    }

    /// The variable `x_{index+1}`.
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index {index} out of range for {nvars} variables");
        let mut exp = vec![0; nvars];
        exp[index] = 1;
        let mut p = Poly::zero(nvars);
        p.add_term(exp, Rational::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (exp, c) in terms {
            assert_eq!(exp.len(), nvars, "exponent vector length mismatch");
            p.add_term(exp, c);
        }
        p
    }

    fn add_term(&mut self, exp: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: &[u32]) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; the zero polynomial reports 0.
    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars, "adding polynomials in different rings");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars, "multiplying polynomials in different rings");
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exp, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars, "evaluation point has wrong length");
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(point)
                    .fold(c.clone(), |acc, (&d, v)| acc * v.pow(d))
            })
            .sum()
    }

    pub fn eval_int(&self, point: &[i64]) -> Rational {
        let pt: Vec<Rational> = point.iter().map(|&v| Rational::from(v)).collect();
        self.eval(&pt)
    }

    /// Substitutes `x_i := subs[i]`; all substitutes must share one ring.
    pub fn compose(&self, subs: &[Poly]) -> Poly {
        assert_eq!(subs.len(), self.nvars, "need one substitute per variable");
        let target = subs.first().map_or(0, Poly::nvars);
        assert!(subs.iter().all(|s| s.nvars == target), "substitutes live in different rings");
        let mut powers: Vec<Vec<Poly>> = subs.iter().map(|s| vec![Poly::one(target), s.clone()]).collect();
        let mut out = Poly::zero(target);
        for (e, c) in &self.terms {
            let mut term = Poly::constant(target, c.clone());
            for (i, &d) in e.iter().enumerate() {
                if d == 0 {
                    continue;
                }
                while powers[i].len() <= d as usize {
                    let next = powers[i].last().unwrap().mul(&subs[i]);
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][d as usize]);
            }
            out = out.add(&term);
        }
        out
    }

    /// Normal form on the degree hyperplane `x1 + ... + xn = k(2g-2+n)`:
    /// eliminates `xn`.
    pub fn restrict_to_degree_hyperplane(&self, k: i64, g: u32) -> Poly {
        let n = self.nvars;
        if n == 0 {
            return self.clone();
        }
        let total = k * (2 * g as i64 - 2 + n as i64);
        let mut subs: Vec<Poly> = (0..n - 1).map(|i| Poly::var(n, i)).collect();
        let mut last = Poly::constant(n, Rational::from(total));
        for i in 0..n - 1 {
            last = last.sub(&Poly::var(n, i));
        }
        subs.push(last);
        self.compose(&subs)
    }

    /// Positive rational `c` with `self = c * q`, `q` having coprime integer
    /// coefficients.
    pub fn content(&self) -> Rational {
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            return Rational::one();
        }
        Rational::from_big(num_gcd.abs(), den_lcm).expect("lcm of denominators is nonzero")
    }

    /// Rendering with the positive content pulled out, e.g. `2*(x1+x2+x3-2)`.
    pub fn display_factored(&self) -> String {
        let c = self.content();
        if c.is_one() || self.is_zero() {
            return self.to_string();
        }
        let inner = self.scale(&c.recip().expect("content is nonzero"));
        if inner.num_terms() == 1 {
            return self.to_string();
        }
        format!("{c}*({inner})")
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson {
                    exponents: e.clone(),
                    coeff: c.clone(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &PolyJson) -> Poly {
        Poly::from_terms(json.nvars, json.terms.iter().map(|t| (t.exponents.clone(), t.coeff.clone())))
    }
}

/// Wire form: terms sorted lexicographically by exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub nvars: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exponents: Vec<u32>,
    pub coeff: Rational,
}

impl fmt::Display for Poly {
    /// Graded, highest degree first: `3*x1^2*x2-x3+1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut ordered: Vec<(&Vec<u32>, &Rational)> = self.terms.iter().collect();
        ordered.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (idx, (e, c)) in ordered.into_iter().enumerate() {
            let monomial: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &d)| d > 0)
                .map(|(i, &d)| if d == 1 { format!("x{}", i + 1) } else { format!("x{}^{d}", i + 1) })
                .collect();
            let neg = c.is_negative();
            let abs = c.abs();
            if neg {
                write!(f, "-")?;
            } else if idx > 0 {
                write!(f, "+")?;
            }
            if monomial.is_empty() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write!(f, "{}", monomial.join("*"))?;
            }
        }
        Ok(())
    }
}
