//! Ideal arithmetic in a quotient ring `k[x]/I`: products, powers,
//! colons, intersections and equality, all through syzygies and reduced
//! bases.

use super::engine::GbOptions;
use super::ideal::IdealBasis;
use super::module::{syzygies, Quotient, SyzOptions};
use crate::error::Result;
use crate::exact_algebra::{Field, PolyMatrix, Polynomial};

fn clean<K: Field>(q: &Quotient<K>, gens: impl IntoIterator<Item = Polynomial<K>>) -> Vec<Polynomial<K>> {
    let mut out: Vec<Polynomial<K>> = Vec::new();
    for g in gens {
        let g = q.normal_form(&g);
        if !g.is_zero() && !out.contains(&g) {
            out.push(g);
        }
    }
    out
}

/// Generators of `A * B` (normal forms, deduplicated).
pub fn ideal_product<K: Field>(a: &[Polynomial<K>], b: &[Polynomial<K>], q: &Quotient<K>) -> Vec<Polynomial<K>> {
    clean(q, a.iter().flat_map(|x| b.iter().map(move |y| x * y)))
}

/// Generators of `A^l`; `A^0` is the unit ideal.
pub fn ideal_power<K: Field>(a: &[Polynomial<K>], l: u32, q: &Quotient<K>) -> Vec<Polynomial<K>> {
    let mut acc = vec![Polynomial::one(q.ring())];
    for _ in 0..l {
        acc = ideal_product(&acc, a, q);
    }
    acc
}

/// Generators of `{b in B : f * b in A}`.
pub fn colon_within<K: Field>(
    a: &[Polynomial<K>],
    f: &Polynomial<K>,
    b: &[Polynomial<K>],
    q: &Quotient<K>,
) -> Result<Vec<Polynomial<K>>> {
    if b.is_empty() {
        return Ok(Vec::new());
    }
    let row: Vec<Polynomial<K>> = b.iter().map(|x| q.normal_form(&(f * x))).chain(a.iter().cloned()).collect();
    let m = PolyMatrix::from_rows(q.ring(), vec![row])?;
    let syz = syzygies(&m, q, &SyzOptions::default())?;
    let mut out = Vec::new();
    for c in syz.matrix.columns() {
        let mut acc = Polynomial::zero(q.ring());
        for (ci, bi) in c.iter().zip(b) {
            if !ci.is_zero() {
                acc = &acc + &(ci * bi);
            }
        }
        out.push(acc);
    }
    Ok(clean(q, out))
}

/// `A : f`
pub fn colon<K: Field>(a: &[Polynomial<K>], f: &Polynomial<K>, q: &Quotient<K>) -> Result<Vec<Polynomial<K>>> {
    colon_within(a, f, &[Polynomial::one(q.ring())], q)
}

/// `A : B`
pub fn colon_ideal<K: Field>(a: &[Polynomial<K>], b: &[Polynomial<K>], q: &Quotient<K>) -> Result<Vec<Polynomial<K>>> {
    let mut acc = vec![Polynomial::one(q.ring())];
    for f in b {
        let c = colon(a, f, q)?;
        acc = intersect(&acc, &c, q)?;
    }
    Ok(acc)
}

/// `A ∩ B`
pub fn intersect<K: Field>(a: &[Polynomial<K>], b: &[Polynomial<K>], q: &Quotient<K>) -> Result<Vec<Polynomial<K>>> {
    colon_within(b, &Polynomial::one(q.ring()), a, q)
}

/// The preimage of `A` in `k[x]` with its reduced basis.
pub fn lift<K: Field>(a: &[Polynomial<K>], q: &Quotient<K>) -> Result<IdealBasis<K>> {
    let mut gens: Vec<Polynomial<K>> = a.to_vec();
    gens.extend(q.gb().iter().cloned());
    IdealBasis::new(q.ring(), gens)?.with_gb(&GbOptions::default())
}

/// Whether `A == B` in the quotient (reduced bases of the preimages agree).
pub fn ideal_eq<K: Field>(a: &[Polynomial<K>], b: &[Polynomial<K>], q: &Quotient<K>) -> Result<bool> {
    lift(a, q)?.same_ideal_as(&lift(b, q)?)
}

/// Whether `A ⊆ B` in the quotient.
pub fn ideal_contained<K: Field>(a: &[Polynomial<K>], b: &[Polynomial<K>], q: &Quotient<K>) -> Result<bool> {
    let lb = lift(b, q)?;
    for f in a {
        if !lb.contains(f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{parse_poly, PolyRing, Rational, TermOrder};

    fn setup() -> (Quotient<Rational>, impl Fn(&str) -> Polynomial<Rational>) {
        let r = PolyRing::new(vec!["a".into(), "b".into(), "c".into(), "d".into()], TermOrder::GrevLex);
        let det = parse_poly(&r, "a*d - b*c").unwrap();
        let q = Quotient::new(IdealBasis::new(&r, vec![det]).unwrap().with_gb(&GbOptions::default()).unwrap()).unwrap();
        let rr = r.clone();
        (q, move |s: &str| parse_poly(&rr, s).unwrap())
    }

    #[test]
    fn colon_in_a_quotient() {
        // in k[a,b,c,d]/(ad-bc): (a) : b = (a, c)
        let (q, p) = setup();
        let c = colon(&[p("a")], &p("b"), &q).unwrap();
        assert!(ideal_eq(&c, &[p("a"), p("c")], &q).unwrap());
        // polynomial ring check: (x^2) : x = (x)
        let r = PolyRing::new(vec!["x".into(), "y".into()], TermOrder::GrevLex);
        let q0 = Quotient::<Rational>::polynomial_ring(&r);
        let x = parse_poly(&r, "x").unwrap();
        let c = colon(&[parse_poly(&r, "x^2").unwrap()], &x, &q0).unwrap();
        assert!(ideal_eq(&c, &[x], &q0).unwrap());
    }

    #[test]
    fn intersection_and_products() {
        let (q, p) = setup();
        // (a) ∩ (b) = (ab, ad) since bc = ad
        let i = intersect(&[p("a")], &[p("b")], &q).unwrap();
        assert!(ideal_eq(&i, &[p("a*b"), p("a*d")], &q).unwrap());
        let sq = ideal_power(&[p("a"), p("b")], 2, &q);
        assert_eq!(sq.len(), 3);
        assert!(ideal_contained(&sq, &[p("a"), p("b")], &q).unwrap());
        assert!(!ideal_contained(&[p("a")], &sq, &q).unwrap());
        assert_eq!(ideal_power(&[p("a")], 0, &q), vec![p("1")]);
    }
}
