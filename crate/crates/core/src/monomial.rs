//! Exact monomial arithmetic over named variables.
//!
//! A [`Monomial`] is a sparse exponent vector with no zero entries; the empty
//! vector is the unit `1`. Variables are interned process-wide, so equality and
//! hashing never touch the names.
//!
//! Text form: `monomial := "1" | term ("*" term)*`, `term := ident ("^" uint)?`,
//! `ident := [A-Za-z_][A-Za-z0-9_]*`, `uint >= 1`. Rendering puts `a1, a2, ...`
//! first in index order, then every other variable lexicographically, and
//! omits `^1`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};

#[derive(Default)]
struct Interner {
    names: Vec<Arc<str>>,
    ids: HashMap<Arc<str>, u32>,
}

fn interner() -> &'static RwLock<Interner> {
    static INTERNER: OnceLock<RwLock<Interner>> = OnceLock::new();
    INTERNER.get_or_init(Default::default)
}

/// An interned variable name.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Variable(u32);

impl Variable {
    /// Interns `name`, which must be a valid identifier.
    pub fn new(name: &str) -> Result<Variable> {
        if let Some(offset) = invalid_ident_offset(name) {
            return Err(Error::Parse {
                offset,
                message: format!("invalid variable name {name:?}"),
            });
        }
        Ok(Self::intern(name))
    }

    fn intern(name: &str) -> Variable {
        if let Some(&id) = interner().read().unwrap().ids.get(name) {
            return Variable(id);
        }
        let mut guard = interner().write().unwrap();
        if let Some(&id) = guard.ids.get(name) {
            return Variable(id);
        }
        let id = u32::try_from(guard.names.len()).expect("too many variables");
        let name: Arc<str> = Arc::from(name);
        guard.names.push(name.clone());
        guard.ids.insert(name, id);
        Variable(id)
    }

    pub fn name(&self) -> Arc<str> {
        interner().read().unwrap().names[self.0 as usize].clone()
    }

    /// Rendering order: `a<k>` variables by `k`, then everything else by name.
    pub fn render_cmp(&self, other: &Variable) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        render_key(&self.name()).cmp(&render_key(&other.name()))
    }
}

fn render_key(name: &str) -> (u8, u64, &str) {
    if let Some(digits) = name.strip_prefix('a') {
        if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) && digits.len() < 19 {
            return (0, digits.parse().unwrap(), name);
        }
    }
    (1, 0, name)
}

impl fmt::Debug for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn invalid_ident_offset(name: &str) -> Option<usize> {
    let bytes = name.as_bytes();
    if bytes.is_empty() {
        return Some(0);
    }
    if !(bytes[0].is_ascii_alphabetic() || bytes[0] == b'_') {
        return Some(0);
    }
    bytes
        .iter()
        .position(|b| !(b.is_ascii_alphanumeric() || *b == b'_'))
}

/// A monomial `x1^e1 * ... * xk^ek` with every `ei >= 1`.
///
/// Terms are kept sorted by interned handle so that the binary operations are
/// linear merges.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    terms: Vec<(Variable, u32)>,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial { terms: Vec::new() }
    }

    /// `v^1`.
    pub fn var(v: Variable) -> Monomial {
        Monomial { terms: vec![(v, 1)] }
    }

    /// Builds a monomial from `(variable, exponent)` pairs; zero exponents are
    /// dropped and repeated variables multiply.
    pub fn from_exponents<I>(pairs: I) -> Result<Monomial>
    where
        I: IntoIterator<Item = (Variable, u32)>,
    {
        let mut terms: Vec<(Variable, u32)> = pairs.into_iter().filter(|&(_, e)| e > 0).collect();
        terms.sort_by_key(|&(v, _)| v.0);
        let mut merged: Vec<(Variable, u32)> = Vec::with_capacity(terms.len());
        for (v, e) in terms {
            match merged.last_mut() {
                Some((last, acc)) if *last == v => {
                    *acc = acc.checked_add(e).ok_or(Error::ExponentOverflow)?;
                }
                _ => merged.push((v, e)),
            }
        }
        Ok(Monomial { terms: merged })
    }

    /// Squarefree product of the given variables.
    pub fn product_of<I: IntoIterator<Item = Variable>>(vars: I) -> Monomial {
        Self::from_exponents(vars.into_iter().map(|v| (v, 1))).expect("squarefree product")
    }

    pub fn is_one(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn exponent(&self, v: Variable) -> u32 {
        self.terms
            .binary_search_by_key(&v.0, |&(w, _)| w.0)
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    /// Variables with a positive exponent.
    pub fn support(&self) -> impl Iterator<Item = Variable> + '_ {
        self.terms.iter().map(|&(v, _)| v)
    }

    pub fn terms(&self) -> &[(Variable, u32)] {
        &self.terms
    }

    pub fn degree(&self) -> u64 {
        self.terms.iter().map(|&(_, e)| e as u64).sum()
    }

    fn merge(&self, other: &Monomial, mut f: impl FnMut(u32, u32) -> Option<u32>) -> Monomial {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let (v, x, y) = match (a.get(i), b.get(j)) {
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.0.cmp(&vb.0) {
                    Ordering::Less => {
                        i += 1;
                        (va, ea, 0)
                    }
                    Ordering::Greater => {
                        j += 1;
                        (vb, 0, eb)
                    }
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                        (va, ea, eb)
                    }
                },
                (Some(&(va, ea)), None) => {
                    i += 1;
                    (va, ea, 0)
                }
                (None, Some(&(vb, eb))) => {
                    j += 1;
                    (vb, 0, eb)
                }
                (None, None) => unreachable!(),
            };
            if let Some(e) = f(x, y) {
                if e > 0 {
                    out.push((v, e));
                }
            }
        }
        Monomial { terms: out }
    }

    /// Pointwise maximum of exponents.
    pub fn lcm(&self, other: &Monomial) -> Monomial {
        self.merge(other, |x, y| Some(x.max(y)))
    }

    /// Pointwise minimum of exponents.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        if self.is_one() || other.is_one() {
            return Monomial::one();
        }
        self.merge(other, |x, y| Some(x.min(y)))
    }

    /// Pointwise sum of exponents, `None` on overflow.
    pub fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        let mut overflow = false;
        let out = self.merge(other, |x, y| {
            let s = x.checked_add(y);
            overflow |= s.is_none();
            s
        });
        (!overflow).then_some(out)
    }

    /// Pointwise sum of exponents.
    ///
    /// Panics if an exponent exceeds `u32::MAX`; use [`Monomial::checked_mul`]
    /// when that is reachable.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other).expect("monomial exponent overflow")
    }

    /// `self | other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        if self.terms.len() > other.terms.len() {
            return false;
        }
        self.terms.iter().all(|&(v, e)| other.exponent(v) >= e)
    }

    /// `self / divisor`, failing unless `divisor | self`.
    pub fn div_exact(&self, divisor: &Monomial) -> Result<Monomial> {
        if !divisor.divides(self) {
            return Err(Error::NotDivisible {
                dividend: self.to_string(),
                divisor: divisor.to_string(),
            });
        }
        Ok(self.merge(divisor, |x, y| Some(x - y)))
    }

    /// lcm of a family; `lcm ∅ = 1`.
    pub fn lcm_all<'a, I: IntoIterator<Item = &'a Monomial>>(items: I) -> Monomial {
        items
            .into_iter()
            .fold(Monomial::one(), |acc, m| acc.lcm(m))
    }

    /// gcd of a family; `gcd ∅ = 1`.
    pub fn gcd_all<'a, I: IntoIterator<Item = &'a Monomial>>(items: I) -> Monomial {
        let mut it = items.into_iter();
        match it.next() {
            None => Monomial::one(),
            Some(first) => it.fold(first.clone(), |acc, m| acc.gcd(m)),
        }
    }

    /// Product of a family; the empty product is 1.
    pub fn product<'a, I: IntoIterator<Item = &'a Monomial>>(items: I) -> Monomial {
        items
            .into_iter()
            .fold(Monomial::one(), |acc, m| acc.mul(m))
    }

    /// Rewrites every variable through `f`; exponents of variables that
    /// collide are added.
    pub fn rename(&self, mut f: impl FnMut(Variable) -> Variable) -> Monomial {
        Self::from_exponents(self.terms.iter().map(|&(v, e)| (f(v), e)))
            .expect("renaming cannot overflow a valid monomial")
    }

    /// Terms in rendering order.
    pub fn sorted_terms(&self) -> Vec<(Variable, u32)> {
        let mut t = self.terms.clone();
        t.sort_by(|a, b| a.0.render_cmp(&b.0));
        t
    }

    /// Deterministic total order based on the rendered form (used for stable
    /// output; unrelated to divisibility).
    pub fn render_cmp(&self, other: &Monomial) -> Ordering {
        let (a, b) = (self.sorted_terms(), other.sorted_terms());
        for (x, y) in a.iter().zip(b.iter()) {
            let c = x.0.render_cmp(&y.0).then(y.1.cmp(&x.1));
            if c != Ordering::Equal {
                return c;
            }
        }
        a.len().cmp(&b.len())
    }

    /// Parses the text form described in the module docs.
    pub fn parse(text: &str) -> Result<Monomial> {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
        }
        .monomial()
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn monomial(mut self) -> Result<Monomial> {
        if self.bytes == b"1" {
            return Ok(Monomial::one());
        }
        let mut terms = Vec::new();
        loop {
            terms.push(self.term()?);
            match self.bytes.get(self.pos) {
                None => break,
                Some(b'*') => self.pos += 1,
                Some(&c) => return self.err(format!("unexpected character {:?}", c as char)),
            }
        }
        Monomial::from_exponents(terms)
    }

    fn term(&mut self) -> Result<(Variable, u32)> {
        let start = self.pos;
        match self.bytes.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() || *c == b'_' => self.pos += 1,
            Some(&c) => return self.err(format!("expected identifier, found {:?}", c as char)),
            None => return self.err("expected identifier, found end of input"),
        }
        while matches!(self.bytes.get(self.pos), Some(c) if c.is_ascii_alphanumeric() || *c == b'_') {
            self.pos += 1;
        }
        // The slice is ASCII by construction.
        let name = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        let var = Variable::intern(name);
        if self.bytes.get(self.pos) != Some(&b'^') {
            return Ok((var, 1));
        }
        self.pos += 1;
        let digits_start = self.pos;
        while matches!(self.bytes.get(self.pos), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if digits_start == self.pos {
            return self.err("expected exponent after '^'");
        }
        let digits = std::str::from_utf8(&self.bytes[digits_start..self.pos]).unwrap();
        let exp: u32 = match digits.parse() {
            Ok(e) => e,
            Err(_) => {
                self.pos = digits_start;
                return Err(Error::ExponentOverflow);
            }
        };
        if exp == 0 {
            self.pos = digits_start;
            return self.err("exponent must be at least 1");
        }
        Ok((var, exp))
    }
}

impl FromStr for Monomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Monomial> {
        Monomial::parse(s)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (i, (v, e)) in self.sorted_terms().into_iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{v}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
