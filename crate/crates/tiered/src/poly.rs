//! Exact-integer polynomials: the bivariate Tutte polynomial and the
//! univariate enumerators derived from it.

use num::{BigInt, One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Sparse bivariate polynomial in x and y with non-negative integer exponents.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TuttePolynomial {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl TuttePolynomial {
    pub fn zero() -> Self {
        TuttePolynomial::default()
    }

    pub fn add_monomial(&mut self, x: u32, y: u32, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry((x, y)).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&(x, y));
        }
    }

    pub fn coefficient(&self, x: u32, y: u32) -> BigInt {
        self.terms.get(&(x, y)).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    pub fn evaluate(&self, x: &BigInt, y: &BigInt) -> BigInt {
        let mut total = BigInt::zero();
        for (&(a, b), c) in &self.terms {
            total += c * x.pow(a) * y.pow(b);
        }
        total
    }

    /// T(1, q) as a univariate polynomial in q.
    pub fn at_x1(&self) -> UniPoly {
        let mut p = UniPoly::zero();
        for (&(_, b), c) in &self.terms {
            p.add_term(b as usize, c.clone());
        }
        p
    }

    /// T(x, 1) as a univariate polynomial in x.
    pub fn at_y1(&self) -> UniPoly {
        let mut p = UniPoly::zero();
        for (&(a, _), c) in &self.terms {
            p.add_term(a as usize, c.clone());
        }
        p
    }
}

impl fmt::Display for TuttePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, b), c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut parts = Vec::new();
            if !c.is_one() || (a == 0 && b == 0) {
                parts.push(c.to_string());
            }
            if a > 0 {
                parts.push(if a == 1 { "x".into() } else { format!("x^{a}") });
            }
            if b > 0 {
                parts.push(if b == 1 { "y".into() } else { format!("y^{b}") });
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

/// Serialized form: {"terms": [{"x": a, "y": b, "c": coeff}]}.
#[derive(Serialize, Deserialize)]
pub struct TuttePolynomialDoc {
    pub terms: Vec<TermDoc>,
}

#[derive(Serialize, Deserialize)]
pub struct TermDoc {
    pub x: u32,
    pub y: u32,
    pub c: i64,
}

impl From<&TuttePolynomial> for TuttePolynomialDoc {
    fn from(p: &TuttePolynomial) -> Self {
        TuttePolynomialDoc {
            terms: p
                .terms
                .iter()
                .map(|(&(x, y), c)| TermDoc {
                    x,
                    y,
                    c: i64::try_from(c).expect("coefficient exceeds i64; raise the cap"),
                })
                .collect(),
        }
    }
}

impl From<&TuttePolynomialDoc> for TuttePolynomial {
    fn from(doc: &TuttePolynomialDoc) -> Self {
        let mut p = TuttePolynomial::zero();
        for t in &doc.terms {
            p.add_monomial(t.x, t.y, BigInt::from(t.c));
        }
        p
    }
}

/// Sparse univariate polynomial with exact integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UniPoly {
    terms: BTreeMap<usize, BigInt>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly::default()
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = UniPoly::zero();
        p.add_term(0, c);
        p
    }

    pub fn add_term(&mut self, exp: usize, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn coefficient(&self, exp: usize) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&usize, &BigInt)> {
        self.terms.iter()
    }

    pub fn evaluate(&self, x: &BigInt) -> BigInt {
        let mut total = BigInt::zero();
        for (&e, c) in &self.terms {
            total += c * x.pow(e as u32);
        }
        total
    }

    /// Coefficients as a dense vector from degree 0 upward.
    pub fn dense(&self) -> Vec<BigInt> {
        let deg = match self.degree() {
            Some(d) => d,
            None => return Vec::new(),
        };
        let mut out = vec![BigInt::zero(); deg + 1];
        for (&e, c) in &self.terms {
            out[e] = c.clone();
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, c) in self.terms.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if e == 0 {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", if e == 1 { "q".into() } else { format!("q^{e}") })?;
            } else {
                write!(f, "{}*{}", c, if e == 1 { "q".into() } else { format!("q^{e}") })?;
            }
        }
        Ok(())
    }
}
