//! Finite fields GF(p^m) for prime `p`, backed by discrete-log tables.
//!
//! Elements live in the polynomial basis `1, x, ..., x^(m-1)` modulo a
//! primitive polynomial and are packed into a `u32` as base-`p` digits with the
//! constant coefficient least significant. The prime subfield F_p is therefore
//! exactly the packed values `0..p`, and the class of `x` is the primitive
//! element η used for every discrete log in the crate.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::linalg;

/// Largest supported field order; every table is sized by `q`.
pub const MAX_ORDER: u64 = 1 << 20;

/// An element of some [`Field`], in packed polynomial-basis form.
///
/// The value carries no reference to its field; every operation goes through
/// the owning [`Field`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    /// Packed base-p digits, constant coefficient first.
    pub fn raw(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// The tower F_p ⊆ F_{p^m} with primitive element η.
pub struct Field {
    p: u32,
    m: u32,
    q: u32,
    units: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    place: Vec<u32>,
    trace_basis: Vec<u32>,
    trace_mask: u32,
    prime: OnceLock<Arc<Field>>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({self})")
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for Field {}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn check_params(p: u32, m: u32) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::NonPrimeCharacteristic(p));
    }
    if m == 0 {
        return Err(Error::ZeroDegree);
    }
    match (p as u64).checked_pow(m) {
        Some(q) if q <= MAX_ORDER => Ok(q as u32),
        _ => Err(Error::FieldTooLarge { p, m }),
    }
}

/// Powers 1, x, x^2, ... of `x` modulo `modulus`, or `None` unless `x` has
/// multiplicative order exactly `p^m - 1`.
fn primitive_powers(p: u32, m: u32, modulus: &[u32]) -> Option<Vec<u32>> {
    let m = m as usize;
    let units = p.pow(m as u32) - 1;
    let mut table = Vec::with_capacity(units as usize);
    let mut digits = vec![0u32; m];
    digits[0] = 1;
    let mut value = 1u32;
    for j in 0..units {
        if j > 0 && value == 1 {
            return None;
        }
        table.push(value);
        let carry = digits[m - 1] as u64;
        for i in (1..m).rev() {
            digits[i] = digits[i - 1];
        }
        digits[0] = 0;
        if carry != 0 {
            for (d, &c) in digits.iter_mut().zip(modulus) {
                *d = ((*d as u64 + (p - c) as u64 * carry) % p as u64) as u32;
            }
        }
        value = digits.iter().rev().fold(0u32, |acc, &d| acc * p + d);
        if value == 0 {
            return None;
        }
    }
    (value == 1).then_some(table)
}

/// Lexicographically smallest primitive monic polynomial, comparing the
/// coefficient vectors from the constant term upwards.
fn smallest_primitive(p: u32, m: u32) -> (Vec<u32>, Vec<u32>) {
    let count = p.pow(m);
    for idx in 0..count {
        // c0 is the most significant digit of idx.
        let mut coeffs = vec![0u32; m as usize + 1];
        let mut rest = idx;
        for i in (0..m as usize).rev() {
            coeffs[i] = rest % p;
            rest /= p;
        }
        coeffs[m as usize] = 1;
        if coeffs[0] == 0 {
            continue;
        }
        if let Some(table) = primitive_powers(p, m, &coeffs) {
            return (coeffs, table);
        }
    }
    unreachable!("every finite field has a primitive element")
}

/// Builds GF(p^m). Without a modulus the lexicographically smallest primitive
/// polynomial is used, so all downstream output is reproducible.
pub fn make_field(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<Arc<Field>> {
    let field = match modulus {
        Some(c) => Field::with_modulus(p, m, c)?,
        None => Field::new(p, m)?,
    };
    Ok(Arc::new(field))
}

impl Field {
    pub fn new(p: u32, m: u32) -> Result<Field> {
        check_params(p, m)?;
        let (modulus, powers) = smallest_primitive(p, m);
        Ok(Self::from_tables(p, m, modulus, powers))
    }

    pub fn with_modulus(p: u32, m: u32, modulus: &[u32]) -> Result<Field> {
        check_params(p, m)?;
        if modulus.len() != m as usize + 1
            || modulus[m as usize] != 1
            || modulus.iter().any(|&c| c >= p)
        {
            return Err(Error::MalformedModulus { expected: m, p });
        }
        match primitive_powers(p, m, modulus) {
            Some(powers) => Ok(Self::from_tables(p, m, modulus.to_vec(), powers)),
            None => Err(Error::NonPrimitiveModulus(join_coeffs(modulus))),
        }
    }

    fn from_tables(p: u32, m: u32, modulus: Vec<u32>, powers: Vec<u32>) -> Field {
        let q = p.pow(m);
        let units = q - 1;
        let mut exp = powers;
        exp.extend_from_within(..);
        let mut log = vec![u32::MAX; q as usize];
        for (j, &v) in exp[..units as usize].iter().enumerate() {
            log[v as usize] = j as u32;
        }
        let place = (0..=m).map(|i| p.pow(i)).collect();
        let mut field = Field {
            p,
            m,
            q,
            units,
            modulus,
            exp,
            log,
            place,
            trace_basis: Vec::new(),
            trace_mask: 0,
            prime: OnceLock::new(),
        };
        // Trace of each basis vector x^i, by summing Frobenius images.
        let basis: Vec<u32> = (0..m)
            .map(|i| {
                let x = FieldElem(field.place[i as usize]);
                let mut acc = FieldElem::ZERO;
                for j in 0..m {
                    acc = field.add(acc, field.frobenius(x, j));
                }
                debug_assert!(acc.0 < p);
                acc.0
            })
            .collect();
        field.trace_mask = basis
            .iter()
            .enumerate()
            .filter(|(_, &t)| t == 1)
            .fold(0, |acc, (i, _)| acc | (1 << i));
        field.trace_basis = basis;
        field
    }

    /// Characteristic.
    pub fn p(&self) -> u32 {
        self.p
    }

    /// Extension degree.
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Field order p^m.
    pub fn q(&self) -> u32 {
        self.q
    }

    /// N = p^m - 1, the order of η.
    pub fn n(&self) -> usize {
        self.units as usize
    }

    /// Monic modulus, constant coefficient first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn eta(&self) -> FieldElem {
        self.eta_pow(1)
    }

    pub fn same_as(&self, other: &Field) -> bool {
        std::ptr::eq(self, other) || self == other
    }

    /// The prime subfield as a field of its own (shares `self` when m = 1).
    pub fn prime_field(self: &Arc<Self>) -> Arc<Field> {
        if self.m == 1 {
            return Arc::clone(self);
        }
        Arc::clone(
            self.prime
                .get_or_init(|| Arc::new(Field::new(self.p, 1).expect("p already validated"))),
        )
    }

    /// η^j, for any integer exponent.
    pub fn eta_pow(&self, j: i64) -> FieldElem {
        FieldElem(self.exp[j.rem_euclid(self.units as i64) as usize])
    }

    /// Discrete log base η; `None` for zero.
    pub fn log(&self, a: FieldElem) -> Option<u32> {
        match self.log[a.0 as usize] {
            u32::MAX => None,
            l => Some(l),
        }
    }

    pub fn element(&self, raw: u32) -> Result<FieldElem> {
        if raw < self.q {
            Ok(FieldElem(raw))
        } else {
            Err(Error::ElementOutOfRange {
                value: raw,
                q: self.q,
            })
        }
    }

    /// Embeds an integer into the prime subfield.
    pub fn from_int(&self, a: i64) -> FieldElem {
        FieldElem(a.rem_euclid(self.p as i64) as u32)
    }

    pub fn from_digits(&self, digits: &[u32]) -> Result<FieldElem> {
        if digits.len() > self.m as usize || digits.iter().any(|&d| d >= self.p) {
            return Err(Error::Parse(format!(
                "coordinates {digits:?} do not describe an element of GF({})",
                self.q
            )));
        }
        Ok(FieldElem(
            digits.iter().rev().fold(0u32, |acc, &d| acc * self.p + d),
        ))
    }

    /// Polynomial-basis coordinates over F_p.
    pub fn digits(&self, a: FieldElem) -> Vec<u32> {
        let mut v = a.0;
        (0..self.m)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    #[inline]
    pub fn digit(&self, a: FieldElem, i: usize) -> u32 {
        (a.0 / self.place[i]) % self.p
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.q).map(FieldElem)
    }

    pub fn in_prime_field(&self, a: FieldElem) -> bool {
        a.0 < self.p
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.p == 2 {
            return FieldElem(a.0 ^ b.0);
        }
        if self.m == 1 {
            let s = a.0 + b.0;
            return FieldElem(if s >= self.p { s - self.p } else { s });
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        while x | y != 0 {
            let s = x % self.p + y % self.p;
            out += if s >= self.p { s - self.p } else { s } * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        FieldElem(out)
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if self.p == 2 || a.0 == 0 {
            return a;
        }
        if self.m == 1 {
            return FieldElem(self.p - a.0);
        }
        let mut x = a.0;
        let mut out = 0;
        let mut place = 1;
        while x != 0 {
            let d = x % self.p;
            if d != 0 {
                out += (self.p - d) * place;
            }
            x /= self.p;
            place *= self.p;
        }
        FieldElem(out)
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem::ZERO;
        }
        if self.m == 1 {
            return FieldElem((a.0 as u64 * b.0 as u64 % self.p as u64) as u32);
        }
        let l = self.log[a.0 as usize] + self.log[b.0 as usize];
        FieldElem(self.exp[l as usize])
    }

    pub fn inv(&self, a: FieldElem) -> Option<FieldElem> {
        let l = self.log(a)?;
        Some(FieldElem(self.exp[(self.units - l) as usize]))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Option<FieldElem> {
        Some(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        match self.log(a) {
            None if e == 0 => FieldElem::ONE,
            None => FieldElem::ZERO,
            Some(l) => {
                let j = (l as u128 * e as u128 % self.units as u128) as usize;
                FieldElem(self.exp[j])
            }
        }
    }

    /// a^(p^i).
    pub fn frobenius(&self, a: FieldElem, i: u32) -> FieldElem {
        let Some(mut l) = self.log(a).map(u64::from) else {
            return a;
        };
        for _ in 0..i {
            l = l * self.p as u64 % self.units as u64;
        }
        FieldElem(self.exp[l as usize])
    }

    /// Absolute trace to F_p, as an integer in `0..p`.
    #[inline]
    pub fn trace_value(&self, a: FieldElem) -> u32 {
        if self.p == 2 {
            return (a.0 & self.trace_mask).count_ones() & 1;
        }
        let mut x = a.0;
        let mut acc = 0u64;
        for &t in &self.trace_basis {
            acc += (x % self.p) as u64 * t as u64;
            x /= self.p;
        }
        (acc % self.p as u64) as u32
    }

    /// tr(a) = a + a^p + ... + a^(p^(m-1)).
    pub fn trace(&self, a: FieldElem) -> FieldElem {
        FieldElem(self.trace_value(a))
    }

    /// Trace from F_{p^m} down to F_{p^d}: the sum of a^(p^(d i)) for i < m/d.
    pub fn relative_trace(&self, a: FieldElem, sub_degree: u32) -> Result<FieldElem> {
        if sub_degree == 0 || !self.m.is_multiple_of(sub_degree) {
            return Err(Error::NotADivisor(sub_degree, self.m));
        }
        let mut acc = FieldElem::ZERO;
        for i in 0..self.m / sub_degree {
            acc = self.add(acc, self.frobenius(a, sub_degree * i));
        }
        Ok(acc)
    }

    /// `"e<j>"` for η^j, `"0"` for zero.
    pub fn format_elem(&self, a: FieldElem) -> String {
        match self.log(a) {
            None => "0".to_string(),
            Some(j) => format!("e{j}"),
        }
    }

    /// Accepts `e<j>`, `0`, or an integer naming an element of F_p.
    pub fn parse_elem(&self, s: &str) -> Result<FieldElem> {
        let s = s.trim();
        if let Some(j) = s.strip_prefix('e') {
            let j: i64 = j
                .parse()
                .map_err(|_| Error::Parse(format!("bad element {s:?}")))?;
            return Ok(self.eta_pow(j));
        }
        let v: u32 = s
            .parse()
            .map_err(|_| Error::Parse(format!("bad element {s:?}")))?;
        if v >= self.p {
            return Err(Error::Parse(format!(
                "{v} is not an element of F_{}",
                self.p
            )));
        }
        Ok(FieldElem(v))
    }
}

/// An F_p-basis of the kernel of the trace from F_{p^m} to F_{p^sub_degree}.
pub fn relative_trace_kernel_basis(field: &Field, sub_degree: u32) -> Result<Vec<FieldElem>> {
    if sub_degree == 0 || !field.m.is_multiple_of(sub_degree) {
        return Err(Error::NotADivisor(sub_degree, field.m));
    }
    let m = field.m as usize;
    let prime = Field::new(field.p, 1)?;
    // Column i holds the coordinates of the relative trace of x^i.
    let mut rows = vec![vec![FieldElem::ZERO; m]; m];
    for i in 0..m {
        let image = field.relative_trace(FieldElem(field.place[i]), sub_degree)?;
        for (t, row) in rows.iter_mut().enumerate() {
            row[i] = FieldElem(field.digit(image, t));
        }
    }
    linalg::nullspace(&prime, &rows, m)
        .into_iter()
        .map(|v| field.from_digits(&v.iter().map(|c| c.raw()).collect::<Vec<_>>()))
        .collect()
}

fn join_coeffs(c: &[u32]) -> String {
    c.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Field {
    /// `p^m/c0,c1,...,cm` with the modulus constant coefficient first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}/{}", self.p, self.m, join_coeffs(&self.modulus))
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let bad = || {
            Error::Parse(format!(
                "field description {s:?} is not of the form p^m/c0,...,cm"
            ))
        };
        let (pm, coeffs) = s.trim().split_once('/').ok_or_else(bad)?;
        let (p, m) = pm.split_once('^').ok_or_else(bad)?;
        let p: u32 = p.trim().parse().map_err(|_| bad())?;
        let m: u32 = m.trim().parse().map_err(|_| bad())?;
        let coeffs = coeffs
            .split(',')
            .map(|c| c.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| bad())?;
        Field::with_modulus(p, m, &coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf256_has_255_units() {
        let f = Field::new(2, 8).unwrap();
        assert_eq!(f.n(), 255);
        assert_eq!(f.q(), 256);
        // x^8 + x^6 + x^5 + x^4 + 1 is the first primitive octic in
        // constant-term-first lexicographic order.
        assert_eq!(f.modulus(), &[1, 0, 0, 0, 1, 1, 1, 0, 1]);
    }

    #[test]
    fn prime_field_uses_a_primitive_root() {
        let f = Field::new(5, 1).unwrap();
        assert_eq!(f.n(), 4);
        let eta = f.eta();
        let orders: Vec<_> = (1..=4).map(|e| f.pow(eta, e)).collect();
        assert_eq!(orders.iter().filter(|x| **x == FieldElem::ONE).count(), 1);
        assert_eq!(orders[3], FieldElem::ONE);
        // x + 2 is the first primitive linear polynomial: eta = -2 = 3.
        assert_eq!(eta, FieldElem(3));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(
            Field::new(6, 2).unwrap_err(),
            Error::NonPrimeCharacteristic(6)
        );
        assert_eq!(Field::new(2, 0).unwrap_err(), Error::ZeroDegree);
        assert!(matches!(
            Field::new(2, 21),
            Err(Error::FieldTooLarge { .. })
        ));
        assert!(matches!(
            Field::new(4, 2),
            Err(Error::NonPrimeCharacteristic(4))
        ));
        // x^2 + 1 over F_2 is reducible; x^4+x^3+x^2+x+1 is irreducible but not primitive.
        assert!(matches!(
            Field::with_modulus(2, 2, &[1, 0, 1]),
            Err(Error::NonPrimitiveModulus(_))
        ));
        assert!(matches!(
            Field::with_modulus(2, 4, &[1, 1, 1, 1, 1]),
            Err(Error::NonPrimitiveModulus(_))
        ));
        assert!(matches!(
            Field::with_modulus(2, 2, &[1, 1, 0]),
            Err(Error::MalformedModulus { .. })
        ));
    }

    #[test]
    fn trace_of_omega_in_gf4() {
        let f = Field::with_modulus(2, 2, &[1, 1, 1]).unwrap();
        let omega = f.eta();
        // omega + omega^2 = omega + (omega + 1) = 1
        assert_eq!(f.trace(omega), FieldElem::ONE);
        assert_eq!(f.trace(FieldElem::ZERO), FieldElem::ZERO);
    }

    #[test]
    fn trace_of_one_is_m_mod_p() {
        let f = Field::new(5, 3).unwrap();
        assert_eq!(f.trace(FieldElem::ONE), FieldElem(3));
    }

    #[test]
    fn field_description_round_trips() {
        let f: Field = "2^8/1,0,1,1,1,0,0,0,1".parse().unwrap();
        assert_eq!(f.to_string(), "2^8/1,0,1,1,1,0,0,0,1");
        assert_eq!(f.n(), 255);
        assert!("2^8/1,0,1".parse::<Field>().is_err());
        assert!("garbage".parse::<Field>().is_err());
    }

    #[test]
    fn kernel_basis_of_full_degree_is_empty() {
        let f = Field::new(3, 2).unwrap();
        assert!(relative_trace_kernel_basis(&f, 2).unwrap().is_empty());
        assert!(relative_trace_kernel_basis(&f, 3).is_err());
    }

    #[test]
    fn relative_kernel_in_gf16() {
        let f = Field::new(2, 4).unwrap();
        let basis = relative_trace_kernel_basis(&f, 2).unwrap();
        assert_eq!(basis.len(), 2);
        for &g in &basis {
            // x + x^4 kills it.
            assert!(f.add(g, f.pow(g, 4)).is_zero());
        }
        assert_ne!(basis[0], basis[1]);
        assert!(basis.iter().all(|g| !g.is_zero()));
    }

    #[test]
    fn absolute_kernel_in_gf125() {
        let f = Field::new(5, 3).unwrap();
        let basis = relative_trace_kernel_basis(&f, 1).unwrap();
        assert_eq!(basis.len(), 2);
        let prime = Field::new(5, 1).unwrap();
        let rows: Vec<Vec<FieldElem>> = basis
            .iter()
            .map(|&g| f.digits(g).into_iter().map(FieldElem).collect())
            .collect();
        assert_eq!(linalg::rank(&prime, &rows, 3), 2);
        assert!(basis.iter().all(|&g| f.trace(g).is_zero()));
    }

    #[test]
    fn parses_elements() {
        let f = Field::new(3, 2).unwrap();
        assert_eq!(f.parse_elem("0").unwrap(), FieldElem::ZERO);
        assert_eq!(f.parse_elem("2").unwrap(), FieldElem(2));
        assert_eq!(f.parse_elem("e3").unwrap(), f.eta_pow(3));
        assert!(f.parse_elem("3").is_err());
        assert_eq!(f.format_elem(f.eta_pow(5)), "e5");
    }
}
