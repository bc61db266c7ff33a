//! Free graded-commutative algebras over the rationals.
//!
//! Every algebra in the crate is free graded-commutative on a finite, ordered
//! list of generators: the cdga itself, its de Rham algebra, symmetric algebras
//! of shifted free modules. Monomials are stored in canonical order (generator
//! index ascending), odd generators appear with exponent at most one, and
//! reordering factors produces the Koszul sign.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::kernel::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: i32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: i32) -> Self {
        Self { name: name.into(), degree }
    }

    pub fn is_odd(&self) -> bool {
        self.degree.rem_euclid(2) == 1
    }
}

/// Sorted `(generator index, exponent)` pairs with nonzero exponents.
pub type Monomial = Vec<(usize, u32)>;

/// Graded lexicographic order: fewer factors first, then higher powers of
/// earlier generators first.
pub fn display_order(a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    monomial_length(a).cmp(&monomial_length(b)).then_with(|| {
        for (&(ga, ea), &(gb, eb)) in a.iter().zip(b) {
            match ga.cmp(&gb).then(eb.cmp(&ea)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        b.len().cmp(&a.len())
    })
}

/// Total number of generator factors in a monomial.
pub fn monomial_length(m: &Monomial) -> u32 {
    m.iter().map(|&(_, e)| e).sum()
}

/// A finite rational combination of canonical monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::term(Monomial::new(), c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Scalar::from_integer(c.into()))
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    /// The generator `index` as a polynomial (exponent one).
    pub fn var(index: usize) -> Self {
        Self::term(vec![(index, 1)], Scalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
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

    pub fn add_scaled(&mut self, other: &Poly, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        let mut out = Poly::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&Monomial::new())
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Monomial::new()).cloned(),
            _ => None,
        }
    }

    /// Largest number of generator factors among the terms.
    pub fn max_length(&self) -> Option<u32> {
        self.terms.keys().map(monomial_length).max()
    }

    pub fn min_length(&self) -> Option<u32> {
        self.terms.keys().map(monomial_length).min()
    }

    /// Drop terms rejected by `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Poly {
        Poly {
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Rename generator indices. The map must preserve the relative order of
    /// the generators that occur, so canonical forms stay canonical.
    pub fn reindex(&self, f: impl Fn(usize) -> usize) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mm: Monomial = m.iter().map(|&(g, e)| (f(g), e)).collect();
            debug_assert!(mm.windows(2).all(|w| w[0].0 < w[1].0));
            out.add_term(mm, c.clone());
        }
        out
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Scalar::one());
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Scalar::one())
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Mul<&Scalar> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Scalar) -> Poly {
        self.scale(rhs)
    }
}

/// A derivation of fixed degree, given by its values on the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub degree: i32,
    pub images: Vec<Poly>,
}

impl Derivation {
    pub fn zero(degree: i32, len: usize) -> Self {
        Self { degree, images: vec![Poly::zero(); len] }
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(Poly::is_zero)
    }
}

/// The free graded-commutative algebra over the rationals on an ordered list of generators.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GcAlgebra {
    generators: Vec<Generator>,
}

impl GcAlgebra {
    pub fn new(generators: Vec<Generator>) -> Self {
        Self { generators }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn degree(&self, index: usize) -> i32 {
        self.generators[index].degree
    }

    pub fn is_odd(&self, index: usize) -> bool {
        self.generators[index].is_odd()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn monomial_degree(&self, m: &Monomial) -> i32 {
        m.iter().map(|&(g, e)| self.degree(g) * e as i32).sum()
    }

    /// Degree of a homogeneous polynomial; `None` for zero or inhomogeneous input.
    pub fn homogeneous_degree(&self, p: &Poly) -> Option<i32> {
        let mut degrees = p.terms().map(|(m, _)| self.monomial_degree(m));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, p: &Poly, degree: i32) -> bool {
        p.terms().all(|(m, _)| self.monomial_degree(m) == degree)
    }

    /// Product of canonical monomials: `None` when an odd generator repeats,
    /// otherwise the Koszul sign (true = negative) and the canonical product.
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Option<(bool, Monomial)> {
        // Each odd factor of `b` moves left past the odd factors of `a` with larger index.
        let mut negative = false;
        let mut odd_in_a_after = a.iter().filter(|&&(g, e)| self.is_odd(g) && e % 2 == 1).count();
        let mut out = Monomial::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
            if take_a {
                if self.is_odd(a[i].0) && a[i].1 % 2 == 1 {
                    odd_in_a_after -= 1;
                }
                out.push(a[i]);
                i += 1;
                continue;
            }
            let (g, e) = b[j];
            if i < a.len() && a[i].0 == g {
                if self.is_odd(g) {
                    return None;
                }
                out.push((g, a[i].1 + e));
                i += 1;
            } else {
                if self.is_odd(g) && e % 2 == 1 && odd_in_a_after % 2 == 1 {
                    negative = !negative;
                }
                out.push((g, e));
            }
            j += 1;
        }
        Some((negative, out))
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                if let Some((negative, m)) = self.mul_monomials(ma, mb) {
                    let c = ca * cb;
                    out.add_term(m, if negative { -c } else { c });
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &Poly, k: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..k {
            out = self.mul(&out, a);
        }
        out
    }

    /// Apply a derivation, extended by the graded Leibniz rule.
    pub fn apply(&self, der: &Derivation, p: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in p.terms() {
            let image = self.apply_to_monomial(der, m);
            out.add_scaled(&image, c);
        }
        out
    }

    pub fn apply_to_monomial(&self, der: &Derivation, m: &Monomial) -> Poly {
        let mut out = Poly::zero();
        let mut prefix_degree = 0i32;
        for (k, &(g, e)) in m.iter().enumerate() {
            let image = &der.images[g];
            if !image.is_zero() {
                let mut left: Monomial = m[..k].to_vec();
                if e > 1 {
                    left.push((g, e - 1));
                }
                let right: Monomial = m[k + 1..].to_vec();
                let mut coeff = Scalar::from_integer(e.into());
                if (der.degree * prefix_degree).rem_euclid(2) == 1 {
                    coeff = -coeff;
                }
                let lhs = self.mul(&Poly::term(left, coeff), image);
                out += &self.mul(&lhs, &Poly::term(right, Scalar::one()));
            }
            prefix_degree += self.degree(g) * e as i32;
        }
        out
    }

    /// Graded commutator `[a, b] = a∘b - (-1)^{|a||b|} b∘a`, evaluated on `p`.
    pub fn commutator_on(&self, a: &Derivation, b: &Derivation, p: &Poly) -> Poly {
        let ab = self.apply(a, &self.apply(b, p));
        let ba = self.apply(b, &self.apply(a, p));
        if (a.degree * b.degree).rem_euclid(2) == 1 {
            &ab + &ba
        } else {
            &ab - &ba
        }
    }

    /// Substitute zero for every odd generator.
    pub fn body(&self, p: &Poly) -> Poly {
        p.filter(|m| m.iter().all(|&(g, _)| !self.is_odd(g)))
    }

    /// Units are exactly the elements whose body is a nonzero constant; the
    /// remainder lies in the ideal of odd generators and is nilpotent.
    pub fn is_unit(&self, p: &Poly) -> bool {
        matches!(self.body(p).as_constant(), Some(c) if !c.is_zero())
    }

    pub fn inverse(&self, p: &Poly) -> Option<Poly> {
        let c = self.body(p).as_constant().filter(|c| !c.is_zero())?;
        let c_inv = c.recip();
        // p = c (1 + n) with n nilpotent of order at most (#odd generators + 1).
        let n = (&p.scale(&c_inv)) - &Poly::one();
        let order = self.generators.iter().filter(|g| g.is_odd()).count() as u32;
        let mut sum = Poly::one();
        let mut power = Poly::one();
        let minus_n = -&n;
        for _ in 0..order {
            power = self.mul(&power, &minus_n);
            if power.is_zero() {
                break;
            }
            sum += &power;
        }
        Some(sum.scale(&c_inv))
    }

    /// All monomials with at most `max_length` factors, shortest first.
    pub fn monomials_up_to(&self, max_length: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut current = Monomial::new();
        self.enumerate(0, max_length, &mut current, &mut out);
        out.sort_by(display_order);
        out
    }

    fn enumerate(&self, start: usize, budget: u32, current: &mut Monomial, out: &mut Vec<Monomial>) {
        out.push(current.clone());
        for g in start..self.len() {
            let max_e = if self.is_odd(g) { budget.min(1) } else { budget };
            for e in 1..=max_e {
                current.push((g, e));
                self.enumerate(g + 1, budget - e, current, out);
                current.pop();
            }
        }
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_empty() {
            return "1".to_string();
        }
        let mut s = String::new();
        for (k, &(g, e)) in m.iter().enumerate() {
            if k > 0 {
                s.push('*');
            }
            s.push_str(&self.generators[g].name);
            if e > 1 {
                let _ = write!(s, "^{e}");
            }
        }
        s
    }

    pub fn format(&self, p: &Poly) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        let mut terms: Vec<_> = p.terms().collect();
        terms.sort_by(|a, b| display_order(a.0, b.0));
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    s.push('-');
                }
            } else {
                s.push_str(if negative { " - " } else { " + " });
            }
            if m.is_empty() {
                let _ = write!(s, "{abs}");
            } else if abs.is_one() {
                s.push_str(&self.format_monomial(m));
            } else {
                let _ = write!(s, "{abs}*{}", self.format_monomial(m));
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(gens: &[(&str, i32)]) -> GcAlgebra {
        GcAlgebra::new(gens.iter().map(|&(n, d)| Generator::new(n, d)).collect())
    }

    #[test]
    fn odd_square_vanishes() {
        let a = alg(&[("xi", -1)]);
        let xi = Poly::var(0);
        assert!(a.mul(&xi, &xi).is_zero());
    }

    #[test]
    fn odd_generators_anticommute() {
        let a = alg(&[("dp", 1), ("dq", 1)]);
        let (dp, dq) = (Poly::var(0), Poly::var(1));
        assert_eq!(a.mul(&dp, &dq), -a.mul(&dq, &dp));
        assert_eq!(a.format(&a.mul(&dq, &dp)), "-dp*dq");
    }

    #[test]
    fn binomial_with_odd_part() {
        // (x + xi)^2 = x^2 + 2 x xi
        let a = alg(&[("x", 0), ("xi", -1)]);
        let s = &Poly::var(0) + &Poly::var(1);
        let sq = a.mul(&s, &s);
        assert_eq!(a.format(&sq), "x^2 + 2*x*xi");
    }

    #[test]
    fn leibniz_sign_on_odd_prefix() {
        // d of degree 1 with d(e) = x, d(f) = x*e on e*f: d(ef) = d(e) f - e d(f)
        let a = alg(&[("x", 0), ("e", -1), ("f", -1)]);
        let d = Derivation {
            degree: 1,
            images: vec![Poly::zero(), Poly::var(0), a.mul(&Poly::var(0), &Poly::var(1))],
        };
        let ef = a.mul(&Poly::var(1), &Poly::var(2));
        let got = a.apply(&d, &ef);
        let expected = &a.mul(&Poly::var(0), &Poly::var(2)) - &a.mul(&Poly::var(1), &a.mul(&Poly::var(0), &Poly::var(1)));
        assert_eq!(got, expected);
        assert_eq!(a.format(&got), "x*f");
    }

    #[test]
    fn unit_inverse_with_odd_nilpotent() {
        let a = alg(&[("x", -1)]);
        let u = &Poly::one() + &Poly::var(0);
        let inv = a.inverse(&u).unwrap();
        assert_eq!(a.format(&inv), "1 - x");
        assert_eq!(a.mul(&u, &inv), Poly::one());
        let b = alg(&[("x", 0)]);
        assert!(b.inverse(&Poly::var(0)).is_none());
    }

    #[test]
    fn monomial_enumeration_respects_parity() {
        let a = alg(&[("x", 0), ("xi", -1)]);
        let ms = a.monomials_up_to(2);
        // 1, x, x^2, xi, x*xi
        assert_eq!(ms.len(), 5);
    }
}
