use std::fmt;

use crate::{Error, Result};

/// Field elements are integers `0..q`: the base-`p` digits of `a` are the
/// coefficients of the residue polynomial, constant term first.
pub type FieldElement = u32;

/// Largest supported field order.
pub const FIELD_ORDER_CAP: u32 = 1 << 16;

const ADD_TABLE_CAP: u32 = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Involution {
    /// `x̄ = x`.
    Trivial,
    /// `x̄ = x^{p^{e/2}}` on a field of even degree `e`.
    Frobenius,
}

/// `GF(p^e)` with an involutive automorphism, backed by lookup tables.
#[derive(Clone)]
pub struct InvolutiveField {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    involution: Involution,
    add: Vec<u16>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    conj: Vec<u32>,
    log: Vec<u32>,
    exp: Vec<u32>,
}

impl PartialEq for InvolutiveField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus && self.involution == other.involution
    }
}

impl Eq for InvolutiveField {}

impl fmt::Debug for InvolutiveField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "InvolutiveField({self})")
    }
}

pub fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn digits(a: u32, p: u32, e: u32) -> Vec<u32> {
    let mut a = a;
    (0..e)
        .map(|_| {
            let d = a % p;
            a /= p;
            d
        })
        .collect()
}

fn undigits(c: &[u32], p: u32) -> u32 {
    c.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Remainder of `a` modulo the monic `m` over `GF(p)` (coefficients low first).
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let deg = m.len() - 1;
    while r.len() > deg {
        let lead = r.pop().expect("nonempty");
        if lead != 0 {
            let shift = r.len() - deg;
            for (i, &c) in m[..deg].iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - lead * c % p) % p;
            }
        }
    }
    r
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        for low in 0..p.pow(d as u32) {
            let mut divisor = digits(low, p, d as u32);
            divisor.push(1);
            if poly_rem(m, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl InvolutiveField {
    /// `GF(p^e)`. `modulus` lists the monic modulus coefficients constant term
    /// first (length `e + 1`); `None` picks the first irreducible one in
    /// numeric order of its lower coefficients.
    pub fn new(p: u32, e: u32, modulus: Option<Vec<u32>>, involution: Involution) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Field(format!("{p} is not prime")));
        }
        if e == 0 {
            return Err(Error::Field("degree must be at least 1".into()));
        }
        let q = p
            .checked_pow(e)
            .filter(|&q| q <= FIELD_ORDER_CAP)
            .ok_or_else(|| Error::Field(format!("order {p}^{e} exceeds {FIELD_ORDER_CAP}")))?;
        if involution == Involution::Frobenius && !e.is_multiple_of(2) {
            return Err(Error::Field(format!("x -> x^(p^(e/2)) needs even degree, got {e}")));
        }
        let modulus = if e == 1 {
            vec![0, 1]
        } else {
            match modulus {
                Some(m) => {
                    if m.len() != e as usize + 1 || m[e as usize] != 1 || m.iter().any(|&c| c >= p) {
                        return Err(Error::Field(format!(
                            "modulus must be monic of degree {e} with coefficients below {p}"
                        )));
                    }
                    if !is_irreducible(&m, p) {
                        return Err(Error::Field("modulus is reducible".into()));
                    }
                    m
                }
                None => (0..p.pow(e))
                    .map(|low| {
                        let mut m = digits(low, p, e);
                        m.push(1);
                        m
                    })
                    .find(|m| is_irreducible(m, p))
                    .expect("irreducible polynomials exist in every degree"),
            }
        };
        let mut field = InvolutiveField {
            p,
            e,
            q,
            modulus,
            involution,
            add: Vec::new(),
            neg: Vec::new(),
            inv: Vec::new(),
            conj: Vec::new(),
            log: Vec::new(),
            exp: Vec::new(),
        };
        field.build_tables()?;
        Ok(field)
    }

    /// `GF(p)` with the trivial involution.
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1, None, Involution::Trivial)
    }

    /// Parses `gf(q)`, `gf(q,frob)`, `gf(q,t^2+t+1)` or `gf(q,t^2+t+1,frob)`.
    pub fn parse(spec: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Field(format!("`{spec}`: {msg}"));
        let inner = spec
            .trim()
            .strip_prefix("gf(")
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| bad("expected gf(...)"))?;
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        let q: u32 = parts[0].parse().map_err(|_| bad("order is not a number"))?;
        let (p, e) = (2..=q)
            .find(|&d| q.is_multiple_of(d))
            .map(|p| {
                let mut e = 0;
                let mut r = q;
                while r.is_multiple_of(p) {
                    r /= p;
                    e += 1;
                }
                (p, if r == 1 { e } else { 0 })
            })
            .filter(|&(_, e)| e > 0)
            .ok_or_else(|| bad("order is not a prime power"))?;
        let mut modulus = None;
        let mut involution = Involution::Trivial;
        for part in &parts[1..] {
            match *part {
                "frob" => involution = Involution::Frobenius,
                "trivial" => involution = Involution::Trivial,
                poly => modulus = Some(parse_poly(poly, p, e).map_err(|m| bad(&m))?),
            }
        }
        Self::new(p, e, modulus, involution)
    }

    fn build_tables(&mut self) -> Result<()> {
        let (p, e, q) = (self.p, self.e, self.q);
        self.neg = (0..q)
            .map(|a| undigits(&digits(a, p, e).iter().map(|&d| (p - d) % p).collect::<Vec<_>>(), p))
            .collect();
        if e > 1 && q <= ADD_TABLE_CAP {
            self.add = (0..q * q).map(|i| self.add_digits(i / q, i % q) as u16).collect();
        }
        if e > 1 {
            let exp = (p..q)
                .find_map(|g| self.powers_if_primitive(g))
                .ok_or_else(|| Error::Field("no primitive element found".into()))?;
            let mut log = vec![0u32; q as usize];
            for (k, &x) in exp.iter().enumerate() {
                log[x as usize] = k as u32;
            }
            self.exp = exp;
            self.log = log;
        }
        self.inv = (0..q)
            .map(|a| if a == 0 { 0 } else { self.pow(a, (q - 2) as u64) })
            .collect();
        self.conj = match self.involution {
            Involution::Trivial => (0..q).collect(),
            Involution::Frobenius => (0..q).map(|a| self.pow(a, (p as u64).pow(e / 2))).collect(),
        };
        self.verify_involution()
    }

    fn add_digits(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (digits(a, self.p, self.e), digits(b, self.p, self.e));
        undigits(
            &da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect::<Vec<_>>(),
            self.p,
        )
    }

    fn poly_mul_mod(&self, a: u32, b: u32) -> u32 {
        let prod = poly_mul(&digits(a, self.p, self.e), &digits(b, self.p, self.e), self.p);
        undigits(&poly_rem(&prod, &self.modulus, self.p), self.p)
    }

    /// The power sequence of `g` when `g` generates the multiplicative group.
    fn powers_if_primitive(&self, g: u32) -> Option<Vec<u32>> {
        let mut powers = Vec::with_capacity(self.q as usize - 1);
        let mut x = 1;
        loop {
            powers.push(x);
            x = self.poly_mul_mod(x, g);
            if x == 1 {
                break;
            }
        }
        (powers.len() == self.q as usize - 1).then_some(powers)
    }

    /// Additivity on a spanning set, multiplicativity against a generator and
    /// `x̄̄ = x` together make the map an involutive automorphism.
    fn verify_involution(&self) -> Result<()> {
        let basis: Vec<u32> = (0..self.e).map(|i| self.p.pow(i)).collect();
        let g = if self.e == 1 {
            (1..self.q).find(|&g| self.is_generator(g)).unwrap_or(1)
        } else {
            self.exp[1]
        };
        for a in 0..self.q {
            if self.conj(self.conj(a)) != a {
                return Err(Error::Field(format!("involution has order above 2 at {a}")));
            }
            for &b in &basis {
                if self.conj(self.add(a, b)) != self.add(self.conj(a), self.conj(b)) {
                    return Err(Error::Field("involution is not additive".into()));
                }
            }
            if self.conj(self.mul(a, g)) != self.mul(self.conj(a), self.conj(g)) {
                return Err(Error::Field("involution is not multiplicative".into()));
            }
        }
        Ok(())
    }

    fn is_generator(&self, g: u32) -> bool {
        let (mut x, mut order) = (g, 1);
        while x != 1 {
            x = self.mul(x, g);
            order += 1;
        }
        order == self.q - 1
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn involution(&self) -> Involution {
        self.involution
    }

    pub fn elements(&self) -> std::ops::Range<FieldElement> {
        0..self.q
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.e == 1 {
            (a + b) % self.p
        } else if !self.add.is_empty() {
            self.add[(a * self.q + b) as usize] as u32
        } else {
            self.add_digits(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a == 0 || b == 0 {
            0
        } else if self.e == 1 {
            ((a as u64 * b as u64) % self.p as u64) as u32
        } else {
            let k = (self.log[a as usize] + self.log[b as usize]) % (self.q - 1);
            self.exp[k as usize]
        }
    }

    /// Multiplicative inverse; `None` for 0.
    #[inline]
    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        (a != 0).then(|| self.inv[a as usize])
    }

    #[inline]
    pub fn conj(&self, a: FieldElement) -> FieldElement {
        self.conj[a as usize]
    }

    pub fn pow(&self, a: FieldElement, n: u64) -> FieldElement {
        let (mut base, mut n, mut acc) = (a, n, 1);
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// `x ↦ x^{p^s}`.
    pub fn frobenius(&self, a: FieldElement, s: u32) -> FieldElement {
        let mut x = a;
        for _ in 0..s % self.e {
            x = self.pow(x, self.p as u64);
        }
        x
    }
}

impl fmt::Display for InvolutiveField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gf({}", self.q)?;
        if self.e > 1 {
            write!(f, ",{}", format_poly(&self.modulus))?;
        }
        if self.involution == Involution::Frobenius {
            write!(f, ",frob")?;
        }
        write!(f, ")")
    }
}

fn format_poly(m: &[u32]) -> String {
    let terms: Vec<String> = m
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(k, &c)| {
            let coeff = if c == 1 && k > 0 { String::new() } else { c.to_string() };
            let sep = if coeff.is_empty() || k == 0 { "" } else { "*" };
            match k {
                0 => coeff,
                1 => format!("{coeff}{sep}t"),
                _ => format!("{coeff}{sep}t^{k}"),
            }
        })
        .collect();
    terms.join("+")
}

/// Parses `c*t^k + ... + c` into coefficients constant term first.
fn parse_poly(text: &str, p: u32, e: u32) -> std::result::Result<Vec<u32>, String> {
    let mut coeffs = vec![0u32; e as usize + 1];
    for term in text.split('+').map(str::trim) {
        let (coeff, power) = match term.split_once('t') {
            None => (term, 0),
            Some((c, rest)) => {
                let c = c.trim_end_matches('*');
                let power = match rest.strip_prefix('^') {
                    Some(k) => k.parse::<usize>().map_err(|_| format!("bad exponent in `{term}`"))?,
                    None if rest.is_empty() => 1,
                    None => return Err(format!("bad term `{term}`")),
                };
                (if c.is_empty() { "1" } else { c }, power)
            }
        };
        let c: u32 = coeff.parse().map_err(|_| format!("bad coefficient in `{term}`"))?;
        if power > e as usize {
            return Err(format!("modulus degree exceeds {e}"));
        }
        coeffs[power] = (coeffs[power] + c) % p;
    }
    Ok(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = InvolutiveField::prime(5).unwrap();
        assert_eq!(f.add(3, 4), 2);
        assert_eq!(f.mul(3, 4), 2);
        assert_eq!(f.inv(2), Some(3));
        assert_eq!(f.inv(0), None);
        assert_eq!(f.neg(1), 4);
        assert_eq!(f.add(f.mul(1, 1), f.mul(2, 2)), 0);
    }

    #[test]
    fn squares_in_gf3() {
        let f = InvolutiveField::prime(3).unwrap();
        let solutions: Vec<(u32, u32)> = f
            .elements()
            .flat_map(|x| f.elements().map(move |y| (x, y)))
            .filter(|&(x, y)| f.add(f.mul(x, x), f.mul(y, y)) == 0)
            .collect();
        assert_eq!(solutions, vec![(0, 0)]);
    }

    #[test]
    fn gf4_frobenius() {
        let f = InvolutiveField::parse("gf(4,t^2+t+1,frob)").unwrap();
        assert_eq!(f.size(), 4);
        assert_eq!(f.modulus(), &[1, 1, 1]);
        // t ↦ t² = t + 1, so 2 ↦ 3
        assert_eq!(f.conj(2), 3);
        assert_eq!(f.conj(3), 2);
        assert_eq!(f.conj(1), 1);
        assert_eq!(f.to_string(), "gf(4,t^2+t+1,frob)");
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.conj(f.mul(a, b)), f.mul(f.conj(a), f.conj(b)));
                assert_eq!(f.conj(f.add(a, b)), f.add(f.conj(a), f.conj(b)));
            }
        }
    }

    #[test]
    fn default_modulus_and_rejections() {
        let f9 = InvolutiveField::parse("gf(9)").unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        assert!(InvolutiveField::parse("gf(4,t^2+1)").is_err());
        assert!(InvolutiveField::parse("gf(6)").is_err());
        assert!(InvolutiveField::parse("gf(5,frob)").is_err());
        assert!(InvolutiveField::new(2, 2, Some(vec![1, 0, 1]), Involution::Trivial).is_err());
    }

    #[test]
    fn extension_field_is_a_field() {
        for spec in ["gf(8)", "gf(9,frob)", "gf(25,frob)"] {
            let f = InvolutiveField::parse(spec).unwrap();
            for a in 1..f.size() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "{spec} {a}");
                assert_eq!(f.add(a, f.neg(a)), 0);
            }
        }
    }
}
