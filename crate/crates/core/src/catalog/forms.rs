//! Evaluation of the linear forms (like `1+a-b-d+k`) that every summand is built from.
//!
//! Formulas are written as products and quotients of such forms, so a
//! vanishing denominator can be reported by the factor that caused it.

use crate::arith::{ArithError, ExactRational, Scalar};
use crate::special;

/// Named parameter values plus a context for lifting constants.
#[derive(Clone, Debug)]
pub struct Forms<S: Scalar> {
    vars: Vec<(char, S)>,
    like: S,
}

impl<S: Scalar> Forms<S> {
    pub fn new(like: &S) -> Self {
        Forms {
            vars: Vec::new(),
            like: like.int(0),
        }
    }

    pub fn with(mut self, name: char, value: S) -> Self {
        self.set(name, value);
        self
    }

    pub fn with_int(self, name: char, value: i64) -> Self {
        let v = self.like.int(value);
        self.with(name, v)
    }

    pub fn set(&mut self, name: char, value: S) {
        match self.vars.iter_mut().find(|(n, _)| *n == name) {
            Some(slot) => slot.1 = value,
            None => self.vars.push((name, value)),
        }
    }

    pub fn int(&self, n: i64) -> S {
        self.like.int(n)
    }

    pub fn rat(&self, n: i64, d: i64) -> S {
        self.like.rat(n, d)
    }

    fn var(&self, name: char) -> &S {
        &self
            .vars
            .iter()
            .find(|(n, _)| *n == name)
            .unwrap_or_else(|| panic!("linear form uses unbound variable {name}"))
            .1
    }

    /// Evaluates a sum of terms `[±][p[/q]][v[/r]]`, e.g. `1+2a-b-c-d+3k` or `1+a/2`.
    pub fn lin(&self, expr: &str) -> S {
        let bytes = expr.as_bytes();
        let mut acc = self.int(0);
        let mut i = 0;
        let read_int = |i: &mut usize| -> Option<i64> {
            let start = *i;
            while *i < bytes.len() && bytes[*i].is_ascii_digit() {
                *i += 1;
            }
            (*i > start).then(|| expr[start..*i].parse().expect("digits"))
        };
        while i < bytes.len() {
            let mut sign = 1;
            if bytes[i] == b'+' || bytes[i] == b'-' {
                if bytes[i] == b'-' {
                    sign = -1;
                }
                i += 1;
            }
            let mut coeff = ExactRational::from_int(sign);
            if let Some(p) = read_int(&mut i) {
                let mut q = 1;
                if i < bytes.len() && bytes[i] == b'/' {
                    i += 1;
                    q = read_int(&mut i).unwrap_or_else(|| panic!("bad fraction in {expr}"));
                }
                coeff = coeff * ExactRational::frac(p, q);
            }
            let term = if i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                let v = self.var(bytes[i] as char).clone();
                i += 1;
                if i < bytes.len() && bytes[i] == b'/' {
                    i += 1;
                    let q = read_int(&mut i).unwrap_or_else(|| panic!("bad divisor in {expr}"));
                    coeff = coeff * ExactRational::frac(1, q);
                }
                v * self.like.constant(&coeff)
            } else {
                self.like.constant(&coeff)
            };
            acc = acc + term;
            assert!(
                i == bytes.len() || bytes[i] == b'+' || bytes[i] == b'-',
                "malformed linear form {expr}"
            );
        }
        acc
    }

    /// A denominator factor, failing with a named pole when it vanishes.
    pub fn den(&self, expr: &str) -> Result<S, ArithError> {
        let v = self.lin(expr);
        if v.is_zero() {
            return Err(ArithError::Pole(format!("{expr} = 0")));
        }
        Ok(v)
    }

    /// `prod num / prod den` of linear forms.
    pub fn frac(&self, num: &[&str], den: &[&str]) -> Result<S, ArithError> {
        let mut top = self.int(1);
        for f in num {
            top = top * self.lin(f);
        }
        let mut bottom = self.int(1);
        for f in den {
            bottom = bottom * self.den(f)?;
        }
        top.checked_div(&bottom)
    }

    pub fn poch(&self, expr: &str, len: u32) -> S {
        special::pochhammer(&self.lin(expr), len)
    }

    /// `prod (num_i)_(len_i) / prod (den_j)_(len_j)`.
    pub fn hyper(&self, num: &[(&str, u32)], den: &[(&str, u32)]) -> Result<S, ArithError> {
        let mut top = self.int(1);
        for (f, len) in num {
            top = top * self.poch(f, *len);
        }
        let mut bottom = self.int(1);
        for (f, len) in den {
            let p = self.poch(f, *len);
            if p.is_zero() {
                return Err(ArithError::Pole(format!("({f})_{len} = 0")));
            }
            bottom = bottom * p;
        }
        top.checked_div(&bottom)
    }

    /// `H_n^(order)(shift)` with the shift given as a linear form.
    pub fn harmonic(&self, n: u32, order: u32, shift: &str) -> Result<S, ArithError> {
        special::harmonic(n, order, &self.lin(shift))
            .map_err(|e| ArithError::Pole(format!("H_{n}^({order})({shift}): {e}")))
    }

    /// `sum_{i=1..m} 1/((u+i)(v+i))` for linear forms `u`, `v`.
    pub fn pair_sum(&self, m: u32, u: &str, v: &str) -> Result<S, ArithError> {
        let (u, v) = (self.lin(u), self.lin(v));
        let mut acc = self.int(0);
        for i in 1..=m {
            let i = self.int(i64::from(i));
            let d = (u.clone() + i.clone()) * (v.clone() + i);
            if d.is_zero() {
                return Err(ArithError::Pole("paired harmonic denominator".into()));
            }
            acc = acc + self.int(1).checked_div(&d)?;
        }
        Ok(acc)
    }

    /// `base^k` for a rational base.
    pub fn power(&self, n: i64, d: i64, k: u32) -> S {
        self.rat(n, d).powu(k)
    }
}
