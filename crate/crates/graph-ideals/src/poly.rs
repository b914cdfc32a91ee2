//! Exact sparse multivariate polynomials over `Q` or `F_p` in the variables
//! `x_1..x_n, y_1..y_n` and optional presentation variables `T_e`, with the
//! four ring maps used to move between the ideal families.
//!
//! Terms are kept in degrevlex order over the fixed variable order
//! `x_1 > .. > x_n > y_1 > .. > y_n > T_..`, zero coefficients are never
//! stored, and equality is structural, so printing and comparison are
//! deterministic.

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::Serialize;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Ambient coefficient field: `Q` (characteristic 0) or `F_p`.
/// `has_sqrt_minus_one` is derived: false over `Q`, and over `F_p` true
/// exactly when `p = 2` or `p ≡ 1 (mod 4)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FieldSpec {
    characteristic: u64,
    has_sqrt_minus_one: bool,
}

impl FieldSpec {
    pub fn rationals() -> FieldSpec {
        FieldSpec {
            characteristic: 0,
            has_sqrt_minus_one: false,
        }
    }

    /// Prime field `F_p`, `p < 2^61`.
    pub fn prime(p: u64) -> Result<FieldSpec> {
        if p >= 1 << 61 {
            return Err(Error::InvalidField(format!("prime {p} exceeds 2^61")));
        }
        if !is_prime_u64(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(FieldSpec {
            characteristic: p,
            has_sqrt_minus_one: p == 2 || p % 4 == 1,
        })
    }

    /// Builds a field spec, checking a caller-declared square-root flag
    /// against the derived one.
    pub fn with_declared_sqrt(characteristic: u64, declared: bool) -> Result<FieldSpec> {
        let f = if characteristic == 0 {
            FieldSpec::rationals()
        } else {
            FieldSpec::prime(characteristic)?
        };
        if f.has_sqrt_minus_one != declared {
            return Err(Error::InvalidField(format!(
                "sqrt(-1) flag {declared} inconsistent with characteristic {characteristic}"
            )));
        }
        Ok(f)
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn has_sqrt_minus_one(&self) -> bool {
        self.has_sqrt_minus_one
    }

    /// A square root of -1 in `F_p` when one exists, computed by
    /// exponentiation. None over `Q` or when `p ≡ 3 (mod 4)`.
    pub fn sqrt_minus_one(&self) -> Option<u64> {
        let p = self.characteristic;
        if p == 0 || !self.has_sqrt_minus_one {
            return None;
        }
        if p == 2 {
            return Some(1);
        }
        for a in 2..p {
            let z = pow_mod(a, (p - 1) / 4, p);
            if mul_mod(z, z, p) == p - 1 {
                return Some(z);
            }
        }
        None
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.characteristic == 0 {
            write!(f, "Q")
        } else {
            write!(f, "F{}", self.characteristic)
        }
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    // deterministic Miller-Rabin for u64
    let d = (n - 1) >> (n - 1).trailing_zeros();
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        let mut r = d;
        while r != n - 1 {
            x = mul_mod(x, x, n);
            r <<= 1;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// One variable of the ambient ring. The derived order realizes the fixed
/// variable order `x_1 > x_2 > .. > y_1 > .. > T_0 > T_1 > ..` (smaller in
/// this `Ord` = earlier = larger in the term order).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Var {
    X(u32),
    Y(u32),
    /// Presentation variable attached to an edge; ordered by edge pair,
    /// matching the sorted edge list of the working graph.
    T(u32, u32),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X(i) => write!(f, "x{i}"),
            Var::Y(i) => write!(f, "y{i}"),
            Var::T(i, j) => write!(f, "T{{{i},{j}}}"),
        }
    }
}

/// Sparse monomial: sorted variable/exponent pairs, no zero exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Monomial {
        Monomial(vec![(v, 1)])
    }

    pub fn from_pairs(mut pairs: Vec<(Var, u32)>) -> Monomial {
        pairs.retain(|&(_, e)| e > 0);
        pairs.sort_by_key(|&(v, _)| v);
        let mut merged: Vec<(Var, u32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            match merged.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => merged.push((v, e)),
            }
        }
        Monomial(merged)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponents(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut pairs = self.0.clone();
        pairs.extend_from_slice(&other.0);
        Monomial::from_pairs(pairs)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(v, e)| {
                if e == 1 {
                    format!("{v}")
                } else {
                    format!("{v}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degrevlex: compare total degree, then the reversed exponent sequence —
/// the monomial with the *smaller* exponent on the latest differing
/// variable is the larger one.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let mut a = self.0.iter().rev();
        let mut b = other.0.iter().rev();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                // `self` ran out of late variables: the remaining tail of
                // `other` sits later in the variable order, so other is
                // smaller in degrevlex.
                (None, Some(_)) => return Ordering::Greater,
                (Some(_), None) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va != vb {
                        // the later variable belongs to exactly one side;
                        // that side is degrevlex-smaller
                        return if va > vb {
                            Ordering::Less
                        } else {
                            Ordering::Greater
                        };
                    }
                    if ea != eb {
                        return if ea < eb {
                            Ordering::Greater
                        } else {
                            Ordering::Less
                        };
                    }
                }
            }
        }
    }
}

/// Exact coefficient: `Rat` over `Q`, `Mod` (canonical residue) over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coef {
    Rat(BigRational),
    Mod(u64),
}

/// Sparse polynomial over a fixed field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: FieldSpec,
    terms: BTreeMap<Monomial, Coef>,
}

impl Polynomial {
    pub fn zero(field: FieldSpec) -> Polynomial {
        Polynomial {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: FieldSpec) -> Polynomial {
        Polynomial::constant_i64(field, 1)
    }

    pub fn constant_i64(field: FieldSpec, c: i64) -> Polynomial {
        let mut p = Polynomial::zero(field);
        p.add_term(Monomial::one(), coef_from_i64(field, c));
        p
    }

    pub fn variable(field: FieldSpec, v: Var) -> Polynomial {
        let mut p = Polynomial::zero(field);
        p.add_term(Monomial::var(v), coef_from_i64(field, 1));
        p
    }

    /// Monomial with an integer coefficient.
    pub fn term(field: FieldSpec, c: i64, m: Monomial) -> Polynomial {
        let mut p = Polynomial::zero(field);
        p.add_term(m, coef_from_i64(field, c));
        p
    }

    /// Monomial with an exact rational coefficient (characteristic 0 only).
    pub fn rational_term(field: FieldSpec, c: BigRational, m: Monomial) -> Polynomial {
        assert_eq!(
            field.characteristic(),
            0,
            "rational coefficients live over Q"
        );
        let mut p = Polynomial::zero(field);
        p.add_term(m, Coef::Rat(c));
        p
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coef)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: Coef) {
        if coef_is_zero(&c) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = coef_add(self.field, e.get(), &c);
                if coef_is_zero(&sum) {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.field);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), coef_neg(self.field, c));
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let mut out = Polynomial::zero(self.field);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), coef_mul(self.field, ca, cb));
            }
        }
        Ok(out)
    }

    pub fn scale_i64(&self, c: i64) -> Polynomial {
        let s = coef_from_i64(self.field, c);
        let mut out = Polynomial::zero(self.field);
        for (m, co) in &self.terms {
            let prod = coef_mul(self.field, co, &s);
            if !coef_is_zero(&prod) {
                out.terms.insert(m.clone(), prod);
            }
        }
        out
    }

    /// Substitutes every variable by its image and multiplies out; the
    /// engine behind the ring maps and their test-only inverses.
    pub fn substitute(&self, image: &dyn Fn(Var) -> Polynomial) -> Result<Polynomial> {
        let mut out = Polynomial::zero(self.field);
        for (m, c) in &self.terms {
            let mut acc = Polynomial::zero(self.field);
            acc.terms.insert(Monomial::one(), c.clone());
            for &(v, e) in m.exponents() {
                let img = image(v);
                if img.field != self.field {
                    return Err(Error::FieldMismatch);
                }
                for _ in 0..e {
                    acc = acc.mul(&img)?;
                }
            }
            out = out.add(&acc)?;
        }
        Ok(out)
    }

    /// Canonical text: terms in descending degrevlex with explicit signs,
    /// e.g. `x1*y2 - x2*y1`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let (sign, mag) = coef_sign_magnitude(self.field, c);
            if idx == 0 {
                if sign < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if sign < 0 { " - " } else { " + " });
            }
            let is_one = mag == "1";
            if m.degree() == 0 {
                out.push_str(&mag);
            } else if is_one {
                out.push_str(&format!("{m}"));
            } else {
                out.push_str(&format!("{mag}*{m}"));
            }
        }
        out
    }

    /// Leading (degrevlex-largest) term.
    pub fn leading(&self) -> Option<(&Monomial, &Coef)> {
        self.terms.iter().next_back()
    }

    /// Rebuilds this polynomial over `Q`, lifting `F_p` residues to their
    /// canonical integer representatives.
    pub fn lift_to_rationals(&self) -> Polynomial {
        let field = FieldSpec::rationals();
        let mut out = Polynomial::zero(field);
        for (m, c) in &self.terms {
            let lifted = match c {
                Coef::Rat(r) => Coef::Rat(r.clone()),
                Coef::Mod(v) => Coef::Rat(BigRational::from(BigInt::from(*v))),
            };
            out.add_term(m.clone(), lifted);
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}

fn coef_from_i64(field: FieldSpec, c: i64) -> Coef {
    match field.characteristic() {
        0 => Coef::Rat(BigRational::from(BigInt::from(c))),
        p => {
            let r = c.rem_euclid(p as i64) as u64;
            Coef::Mod(r % p)
        }
    }
}

fn coef_is_zero(c: &Coef) -> bool {
    match c {
        Coef::Rat(r) => r.is_zero(),
        Coef::Mod(v) => *v == 0,
    }
}

fn coef_add(field: FieldSpec, a: &Coef, b: &Coef) -> Coef {
    match (a, b) {
        (Coef::Rat(x), Coef::Rat(y)) => Coef::Rat(x + y),
        (Coef::Mod(x), Coef::Mod(y)) => {
            let p = field.characteristic();
            Coef::Mod((x + y) % p)
        }
        _ => unreachable!("coefficient variants match the field by construction"),
    }
}

fn coef_neg(field: FieldSpec, a: &Coef) -> Coef {
    match a {
        Coef::Rat(x) => Coef::Rat(-x),
        Coef::Mod(x) => {
            let p = field.characteristic();
            Coef::Mod(if *x == 0 { 0 } else { p - x })
        }
    }
}

fn coef_mul(field: FieldSpec, a: &Coef, b: &Coef) -> Coef {
    match (a, b) {
        (Coef::Rat(x), Coef::Rat(y)) => Coef::Rat(x * y),
        (Coef::Mod(x), Coef::Mod(y)) => Coef::Mod(mul_mod(*x, *y, field.characteristic())),
        _ => unreachable!("coefficient variants match the field by construction"),
    }
}

/// Sign and magnitude rendering. Over `F_p` residues above `p/2` print as
/// negative representatives so binomials stay readable in every field.
fn coef_sign_magnitude(field: FieldSpec, c: &Coef) -> (i8, String) {
    match c {
        Coef::Rat(r) => {
            let neg = r.is_negative();
            let mag = if neg { -r } else { r.clone() };
            let s = if mag.denom().is_one() {
                format!("{}", mag.numer())
            } else {
                format!("{mag}")
            };
            (if neg { -1 } else { 1 }, s)
        }
        Coef::Mod(v) => {
            let p = field.characteristic();
            if *v > p / 2 {
                (-1, format!("{}", p - v))
            } else {
                (1, format!("{v}"))
            }
        }
    }
}

/// Coefficient of a monomial as a signed integer representative; used by
/// the rank oracle when reducing generators mod p.
pub fn coef_to_residue(field: FieldSpec, c: &Coef, p: u64) -> u64 {
    match c {
        Coef::Mod(v) => {
            debug_assert_eq!(field.characteristic(), p);
            *v % p
        }
        Coef::Rat(r) => {
            debug_assert!(
                r.denom().is_one(),
                "residue lift needs integer coefficients"
            );
            let num = r.numer();
            let m = BigInt::from(p);
            let rem = ((num % &m) + &m) % &m;
            rem.to_string().parse::<u64>().unwrap()
        }
    }
}

/// Edge polynomial kinds: `f = x_i y_j - x_j y_i`, `g = x_i x_j + y_i y_j`,
/// `gbar = x_i x_j - y_i y_j`, `h_i = x_i^2 + y_i^2`, and the permanental
/// generator `pi = x_i y_j + x_j y_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeGen {
    F,
    G,
    GBar,
    H,
    Pi,
}

/// The exact two-term generator. For the binomial kinds `i != j` is
/// required; arguments are taken in the given order (`f` is antisymmetric).
pub fn edge_generator(kind: EdgeGen, i: u32, j: u32, field: FieldSpec) -> Result<Polynomial> {
    if kind != EdgeGen::H && i == j {
        return Err(Error::PreconditionViolated(format!(
            "binomial edge generator needs distinct endpoints, got {i},{j}"
        )));
    }
    let xi = Monomial::var(Var::X(i));
    let yi = Monomial::var(Var::Y(i));
    let xj = Monomial::var(Var::X(j));
    let yj = Monomial::var(Var::Y(j));
    let p = match kind {
        EdgeGen::F => {
            let a = Polynomial::term(field, 1, xi.mul(&yj));
            let b = Polynomial::term(field, -1, xj.mul(&yi));
            a.add(&b)?
        }
        EdgeGen::G => {
            let a = Polynomial::term(field, 1, xi.mul(&xj));
            let b = Polynomial::term(field, 1, yi.mul(&yj));
            a.add(&b)?
        }
        EdgeGen::GBar => {
            let a = Polynomial::term(field, 1, xi.mul(&xj));
            let b = Polynomial::term(field, -1, yi.mul(&yj));
            a.add(&b)?
        }
        EdgeGen::H => {
            let a = Polynomial::term(field, 1, xi.mul(&xi));
            let b = Polynomial::term(field, 1, yi.mul(&yi));
            a.add(&b)?
        }
        EdgeGen::Pi => {
            let a = Polynomial::term(field, 1, xi.mul(&yj));
            let b = Polynomial::term(field, 1, xj.mul(&yi));
            a.add(&b)?
        }
    };
    Ok(p)
}

/// Exact `Σ c_i * g_i`.
pub fn combine(pairs: &[(Polynomial, Polynomial)]) -> Result<Polynomial> {
    let field = match pairs.first() {
        Some((c, _)) => c.field(),
        None => FieldSpec::rationals(),
    };
    let mut acc = Polynomial::zero(field);
    for (c, g) in pairs {
        acc = acc.add(&c.mul(g)?)?;
    }
    Ok(acc)
}

/// The four ring maps. `Phi1`/`Phi2` carry the second part of a
/// bipartition; `Eta` needs characteristic != 2; `Psi` additionally needs a
/// square root of -1 in the field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingMap {
    Phi1 { part2: Vec<u32> },
    Phi2 { part2: Vec<u32> },
    Eta,
    Psi,
}

impl RingMap {
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        let field = p.field();
        match self {
            RingMap::Phi1 { part2 } => {
                let part2 = part2.clone();
                p.substitute(&move |v| match v {
                    Var::X(i) if part2.contains(&i) => Polynomial::variable(field, Var::Y(i)),
                    Var::Y(i) if part2.contains(&i) => {
                        Polynomial::variable(field, Var::X(i)).scale_i64(-1)
                    }
                    v => Polynomial::variable(field, v),
                })
            }
            RingMap::Phi2 { part2 } => {
                let part2 = part2.clone();
                p.substitute(&move |v| match v {
                    Var::X(i) if part2.contains(&i) => Polynomial::variable(field, Var::Y(i)),
                    Var::Y(i) if part2.contains(&i) => Polynomial::variable(field, Var::X(i)),
                    v => Polynomial::variable(field, v),
                })
            }
            RingMap::Eta => {
                if field.characteristic() == 2 {
                    return Err(Error::MapUnavailable(
                        "eta is not invertible in characteristic 2".into(),
                    ));
                }
                p.substitute(&move |v| match v {
                    Var::X(i) => {
                        let x = Polynomial::variable(field, Var::X(i));
                        let y = Polynomial::variable(field, Var::Y(i));
                        x.add(&y).unwrap()
                    }
                    Var::Y(i) => {
                        let x = Polynomial::variable(field, Var::X(i));
                        let y = Polynomial::variable(field, Var::Y(i));
                        x.sub(&y).unwrap()
                    }
                    v => Polynomial::variable(field, v),
                })
            }
            RingMap::Psi => {
                if field.characteristic() == 2 {
                    return Err(Error::MapUnavailable(
                        "psi needs characteristic != 2".into(),
                    ));
                }
                let i_val = field.sqrt_minus_one().ok_or_else(|| {
                    Error::MapUnavailable(format!("no square root of -1 in {field}"))
                })? as i64;
                p.substitute(&move |v| match v {
                    Var::X(idx) => {
                        let x = Polynomial::variable(field, Var::X(idx));
                        let y = Polynomial::variable(field, Var::Y(idx)).scale_i64(i_val);
                        x.add(&y).unwrap()
                    }
                    Var::Y(idx) => {
                        let x = Polynomial::variable(field, Var::X(idx));
                        let y = Polynomial::variable(field, Var::Y(idx)).scale_i64(i_val);
                        x.sub(&y).unwrap()
                    }
                    v => Polynomial::variable(field, v),
                })
            }
        }
    }
}
