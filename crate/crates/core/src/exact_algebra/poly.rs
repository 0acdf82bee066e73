use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::field::Field;
use super::monomial::{Monomial, TermOrder};
use crate::error::{AlgebraError, Result};

/// A polynomial ring `k[x_0, ..., x_{n-1}]`: variable names, a monomial
/// order and a positive grading.
///
/// The variable list doubles as the order's priority: variable 0 is the
/// largest.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    names: Vec<String>,
    order: TermOrder,
    weights: Vec<u32>,
}

impl PolyRing {
    pub fn new(names: Vec<String>, order: TermOrder) -> Arc<Self> {
        let weights = match &order {
            TermOrder::WeightedGrevLex { weights } => weights.clone(),
            _ => vec![1; names.len()],
        };
        assert_eq!(weights.len(), names.len(), "one weight per variable");
        Arc::new(PolyRing {
            names,
            order,
            weights,
        })
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }

    #[inline]
    pub fn degree_of(&self, m: &Monomial) -> u32 {
        match &self.order {
            TermOrder::WeightedGrevLex { weights } => m.weighted_degree(weights),
            _ => m.degree(),
        }
    }

    /// All monomials of the given (weighted) degree, largest first.
    pub fn monomials_of_degree(&self, degree: u32) -> Vec<Monomial> {
        let n = self.nvars();
        let mut out = Vec::new();
        let mut exps = vec![0u32; n];
        fn rec(
            weights: &[u32],
            i: usize,
            left: u32,
            exps: &mut Vec<u32>,
            out: &mut Vec<Monomial>,
        ) {
            if i == weights.len() {
                if left == 0 {
                    out.push(Monomial::from_exponents(exps));
                }
                return;
            }
            let w = weights[i];
            let mut e = 0;
            while e * w <= left {
                exps[i] = e;
                rec(weights, i + 1, left - e * w, exps, out);
                e += 1;
            }
            exps[i] = 0;
        }
        if n > 0 {
            rec(&self.weights, 0, degree, &mut exps, &mut out);
        } else if degree == 0 {
            out.push(Monomial::one(0));
        }
        out.sort_by(|a, b| self.cmp(b, a));
        out
    }
}

/// A polynomial in canonical form: nonzero coefficients, terms strictly
/// descending in the ring's order. Equality is term-list equality.
#[derive(Clone)]
pub struct Polynomial<K: Field> {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, K)>,
}

impl<K: Field> PartialEq for Polynomial<K> {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<K: Field> Eq for Polynomial<K> {}

impl<K: Field> std::hash::Hash for Polynomial<K> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

#[inline]
pub(crate) fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl<K: Field> Polynomial<K> {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, K::one())
    }

    pub fn constant(ring: &Arc<PolyRing>, c: K) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn var(ring: &Arc<PolyRing>, index: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), index, 1), K::one())
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial, c: K) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a canonical polynomial from arbitrary terms: sorts and
    /// combines duplicates, drops zeros.
    pub fn from_terms(ring: &Arc<PolyRing>, mut terms: Vec<(Monomial, K)>) -> Self {
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, K)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.add(&c),
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if lc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some((_, lc)) = out.last() {
            if lc.is_zero() {
                out.pop();
            }
        }
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    /// Wraps terms already in canonical order. Checked in debug builds.
    pub(crate) fn from_sorted_terms(ring: &Arc<PolyRing>, terms: Vec<(Monomial, K)>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, K)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, K)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn lead(&self) -> Option<&(Monomial, K)> {
        self.terms.first()
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn lead_coeff(&self) -> Option<&K> {
        self.terms.first().map(|t| &t.1)
    }

    /// Coefficient of a monomial (zero when absent).
    pub fn coeff(&self, m: &Monomial) -> K {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(K::zero)
    }

    /// Maximum (weighted) degree of a term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| self.ring.degree_of(m)).max()
    }

    /// The common (weighted) degree when homogeneous; zero is homogeneous of
    /// every degree and reports `None`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.degree()?;
        if self.is_homogeneous() {
            Some(d)
        } else {
            None
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.iter().map(|(m, _)| self.ring.degree_of(m));
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(AlgebraError::IncompatibleContext(
                "polynomials from different rings".into(),
            ))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.product(other))
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match ring.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { b[j].1.neg() } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        a[i].1.sub(&b[j].1)
                    } else {
                        a[i].1.add(&b[j].1)
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate { t.1.neg() } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    fn product(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Polynomial::zero(&self.ring);
        for (m, c) in &small.terms {
            acc = acc.merge(&big.mul_term(m, c), false);
        }
        acc
    }

    /// `self * c * m`; multiplication by a monomial preserves the order.
    pub fn mul_term(&self, m: &Monomial, c: &K) -> Self {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(t, d)| (t.mul(m), d.mul(c)))
            .collect();
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn scale(&self, c: &K) -> Self {
        self.mul_term(&Monomial::one(self.ring.nvars()), c)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..e {
            acc = acc.product(self);
        }
        acc
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.lead_coeff() {
            None => self.clone(),
            Some(c) => self.scale(&c.inv().unwrap()),
        }
    }

    /// Ring homomorphism sending variable `i` to `images[i]`; the images
    /// fix the target ring.
    pub fn substitute(&self, images: &[Polynomial<K>]) -> Result<Polynomial<K>> {
        if images.len() != self.ring.nvars() {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{} images for {} variables",
                images.len(),
                self.ring.nvars()
            )));
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => self.ring.clone(),
        };
        let mut powers: HashMap<(usize, u32), Polynomial<K>> = HashMap::new();
        let mut acc: Vec<(Monomial, K)> = Vec::new();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, c.clone());
            for (v, e) in m.support() {
                let p = powers
                    .entry((v, e))
                    .or_insert_with(|| images[v].pow(e))
                    .clone();
                t = t.try_mul(&p)?;
            }
            acc.extend(t.terms);
        }
        Ok(Polynomial::from_terms(&target, acc))
    }

    /// Re-expresses the polynomial in another ring with the same number of
    /// variables (a different order, say).
    pub fn to_ring(&self, ring: &Arc<PolyRing>) -> Polynomial<K> {
        assert_eq!(ring.nvars(), self.ring.nvars());
        Polynomial::from_terms(ring, self.terms.clone())
    }

    /// Maps variable `i` to variable `map[i]` of `ring`.
    pub fn rename_vars(&self, ring: &Arc<PolyRing>, map: &[usize]) -> Polynomial<K> {
        let n = ring.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; n];
                for (v, p) in m.support() {
                    e[map[v]] += p;
                }
                (Monomial::from_exponents(&e), c.clone())
            })
            .collect();
        Polynomial::from_terms(ring, terms)
    }

    /// Converts coefficients into another field.
    pub fn map_coeffs<L: Field>(
        &self,
        f: impl Fn(&K) -> Result<L>,
    ) -> Result<Polynomial<L>> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let d = f(c)?;
            if !d.is_zero() {
                terms.push((m.clone(), d));
            }
        }
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    /// Splits into homogeneous components, keyed by degree.
    pub fn homogeneous_parts(&self) -> Vec<(u32, Polynomial<K>)> {
        let mut parts: Vec<(u32, Vec<(Monomial, K)>)> = Vec::new();
        for (m, c) in &self.terms {
            let d = self.ring.degree_of(m);
            match parts.iter_mut().find(|(e, _)| *e == d) {
                Some((_, v)) => v.push((m.clone(), c.clone())),
                None => parts.push((d, vec![(m.clone(), c.clone())])),
            }
        }
        parts.sort_by_key(|(d, _)| *d);
        parts
            .into_iter()
            .map(|(d, t)| (d, Polynomial::from_terms(&self.ring, t)))
            .collect()
    }
}

impl<K: Field> fmt::Debug for Polynomial<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<K: Field> fmt::Display for Polynomial<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let (neg, abs) = c.signed_parts();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = abs == "1";
            if m.is_one() {
                write!(f, "{abs}")?;
                continue;
            }
            if !unit {
                write!(f, "{abs}*")?;
            }
            let mut first = true;
            for (v, e) in m.support() {
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{}", self.ring.names[v])?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl<K: Field> $tr<&Polynomial<K>> for &Polynomial<K> {
            type Output = Polynomial<K>;
            fn $method(self, rhs: &Polynomial<K>) -> Polynomial<K> {
                self.$inner(rhs).expect("polynomial arithmetic across rings")
            }
        }
        impl<K: Field> $tr<Polynomial<K>> for Polynomial<K> {
            type Output = Polynomial<K>;
            fn $method(self, rhs: Polynomial<K>) -> Polynomial<K> {
                (&self).$inner(&rhs).expect("polynomial arithmetic across rings")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl<K: Field> Neg for &Polynomial<K> {
    type Output = Polynomial<K>;
    fn neg(self) -> Polynomial<K> {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }
}

impl<K: Field> Neg for Polynomial<K> {
    type Output = Polynomial<K>;
    fn neg(self) -> Polynomial<K> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::field::{Fp, Rational, F32003};
    use crate::exact_algebra::parse::parse_poly;
    use proptest::prelude::*;

    fn ring2() -> Arc<PolyRing> {
        PolyRing::new(
            ["x[1,2]", "x[1,1]", "x[2,2]", "x[2,1]"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
            TermOrder::GrevLex,
        )
    }

    fn p(r: &Arc<PolyRing>, s: &str) -> Polynomial<Rational> {
        parse_poly(r, s).unwrap()
    }

    #[test]
    fn cancellation() {
        let r = ring2();
        let a = p(&r, "x[1,1] + x[2,2]");
        let b = p(&r, "-x[1,1]");
        assert_eq!(&a + &b, p(&r, "x[2,2]"));
    }

    #[test]
    fn determinant_of_generic_two_by_two() {
        let r = ring2();
        let det = &p(&r, "x[1,1]*x[2,2]") - &p(&r, "x[1,2]*x[2,1]");
        assert_eq!(det.len(), 2);
        assert!(det.is_homogeneous());
        assert_eq!(det.homogeneous_degree(), Some(2));
    }

    #[test]
    fn square_of_product_by_hand() {
        let r = ring2();
        let a = p(&r, "x[1,2]*x[2,1]");
        let sq = &a * &a;
        let expected = vec![(
            Monomial::from_exponents(&[2, 0, 0, 2]),
            Rational::one(),
        )];
        assert_eq!(sq.terms(), expected.as_slice());
        assert_eq!(sq.degree(), Some(4));
    }

    #[test]
    fn mixing_rings_is_an_error() {
        let r = ring2();
        let s = PolyRing::new(vec!["X".into(), "Y".into()], TermOrder::Lex);
        let a = p(&r, "x[1,1]");
        let b: Polynomial<Rational> = parse_poly(&s, "X").unwrap();
        assert!(matches!(
            a.try_add(&b),
            Err(AlgebraError::IncompatibleContext(_))
        ));
    }

    #[test]
    fn substitution_is_a_homomorphism() {
        let r = ring2();
        let a = p(&r, "x[1,1]*x[2,2] - x[1,2]*x[2,1]");
        let images: Vec<_> = ["x[1,2]", "x[1,1] + x[1,2]", "x[2,2]", "x[2,1]"]
            .iter()
            .map(|s| p(&r, s))
            .collect();
        let img = a.substitute(&images).unwrap();
        assert_eq!(img, p(&r, "x[1,1]*x[2,2] + x[1,2]*x[2,2] - x[1,2]*x[2,1]"));
    }

    fn arb_poly(r: Arc<PolyRing>) -> impl Strategy<Value = Polynomial<Rational>> {
        let n = r.nvars();
        proptest::collection::vec(
            (proptest::collection::vec(0u32..3, n), -5i64..6),
            0..6,
        )
        .prop_map(move |ts| {
            let terms = ts
                .into_iter()
                .filter(|(e, _)| e.iter().sum::<u32>() <= 4)
                .map(|(e, c)| (Monomial::from_exponents(&e), Rational::from_i64(c)))
                .collect();
            Polynomial::from_terms(&r, terms)
        })
    }

    fn ring6() -> Arc<PolyRing> {
        PolyRing::new((0..6).map(|i| format!("v{i}")).collect(), TermOrder::GrevLex)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn ring_axioms(a in arb_poly(ring6()), b in arb_poly(ring6()), c in arb_poly(ring6())) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn canonical_text_round_trip(a in arb_poly(ring6())) {
            let s = a.to_string();
            let back = parse_poly::<Rational>(&ring6(), &s).unwrap();
            prop_assert_eq!(back.to_string(), s);
            prop_assert_eq!(back, a);
        }

        #[test]
        fn rational_and_prime_arithmetic_agree(a in arb_poly(ring6()), b in arb_poly(ring6())) {
            let red = |p: &Polynomial<Rational>| -> Polynomial<F32003> {
                p.map_coeffs(|c| Fp::<32003>::from_ratio(c.numer(), c.denom())).unwrap()
            };
            prop_assert_eq!(red(&(&a * &b)), &red(&a) * &red(&b));
            prop_assert_eq!(red(&(&a - &b)), &red(&a) - &red(&b));
        }
    }
}
