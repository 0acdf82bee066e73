use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::engine::{compute_gb, GbInput, GbOptions, IdealReducers, MTerm, ModVec, ModuleOrder, ModuleOrderKind};
use crate::error::{AlgebraError, Result};
use crate::exact_algebra::{Field, PolyRing, Polynomial};

pub(crate) fn poly_to_vec<K: Field>(p: &Polynomial<K>, pos: u32) -> ModVec<K> {
    p.terms()
        .iter()
        .map(|(m, c)| MTerm {
            pos,
            mon: m.clone(),
            coef: c.clone(),
        })
        .collect()
}

pub(crate) fn vec_to_poly<K: Field>(ring: &Arc<PolyRing>, v: ModVec<K>) -> Polynomial<K> {
    Polynomial::from_terms(ring, v.into_iter().map(|t| (t.mon, t.coef)).collect())
}

/// Generators of an ideal together with its reduced Groebner basis.
#[derive(Clone, Debug)]
pub struct IdealBasis<K: Field> {
    ring: Arc<PolyRing>,
    generators: Vec<Polynomial<K>>,
    gb: Option<Vec<Polynomial<K>>>,
    homogeneous: bool,
    reducers: IdealReducers<K>,
}

/// Reduced Groebner basis of the ideal generated by `gens` in their ring's
/// term order.
pub fn buchberger<K: Field>(gens: &[Polynomial<K>]) -> Result<IdealBasis<K>> {
    let ring = gens
        .first()
        .ok_or_else(|| AlgebraError::Precondition("empty generator list".into()))?
        .ring()
        .clone();
    IdealBasis::new(&ring, gens.to_vec())?.with_gb(&GbOptions::default())
}

impl<K: Field> IdealBasis<K> {
    /// Generators only; call [`IdealBasis::with_gb`] to compute the basis.
    pub fn new(ring: &Arc<PolyRing>, generators: Vec<Polynomial<K>>) -> Result<Self> {
        for g in &generators {
            if !Arc::ptr_eq(g.ring(), ring) && **g.ring() != **ring {
                return Err(AlgebraError::IncompatibleContext(
                    "generator from a different ring".into(),
                ));
            }
        }
        let homogeneous = generators.iter().all(|g| g.is_homogeneous());
        Ok(IdealBasis {
            ring: ring.clone(),
            generators,
            gb: None,
            homogeneous,
            reducers: IdealReducers::empty(),
        })
    }

    pub fn with_gb(mut self, opts: &GbOptions) -> Result<Self> {
        let inputs = self
            .generators
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| GbInput {
                terms: poly_to_vec(g, 0),
                relation: false,
            })
            .collect();
        let opts = GbOptions {
            track: false,
            ..opts.clone()
        };
        let run = compute_gb(
            &self.ring,
            ModuleOrder::untwisted(ModuleOrderKind::PositionOverTerm, 1),
            inputs,
            IdealReducers::empty(),
            &opts,
        )?;
        if !run.complete {
            return Err(AlgebraError::Infeasible(
                "ideal Groebner basis truncated by degree cap".into(),
            ));
        }
        let gb: Vec<Polynomial<K>> = run
            .elems
            .into_iter()
            .map(|e| vec_to_poly(&self.ring, e.terms))
            .collect();
        self.reducers = IdealReducers::new(
            &gb.iter().map(|p| p.terms().to_vec()).collect::<Vec<_>>(),
        );
        self.gb = Some(gb);
        Ok(self)
    }

    /// Uses `gb` as the basis without recomputation (trusted input, e.g.
    /// after a verified construction).
    pub fn with_known_gb(mut self, gb: Vec<Polynomial<K>>) -> Self {
        self.reducers = IdealReducers::new(
            &gb.iter().map(|p| p.terms().to_vec()).collect::<Vec<_>>(),
        );
        self.gb = Some(gb);
        self
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<K>] {
        &self.generators
    }

    pub fn gb(&self) -> Option<&[Polynomial<K>]> {
        self.gb.as_deref()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn reducers(&self) -> &IdealReducers<K> {
        &self.reducers
    }

    fn require_gb(&self) -> Result<&[Polynomial<K>]> {
        self.gb
            .as_deref()
            .ok_or_else(|| AlgebraError::Precondition("Groebner basis not computed".into()))
    }

    pub fn normal_form(&self, f: &Polynomial<K>) -> Result<Polynomial<K>> {
        self.require_gb()?;
        if !Arc::ptr_eq(f.ring(), &self.ring) && **f.ring() != *self.ring {
            return Err(AlgebraError::IncompatibleContext(
                "polynomial from a different ring".into(),
            ));
        }
        let ord = ModuleOrder::untwisted(ModuleOrderKind::PositionOverTerm, 1);
        let v = self.reducers.reduce(&self.ring, &ord, poly_to_vec(f, 0));
        Ok(Polynomial::from_sorted_terms(
            &self.ring,
            v.into_iter().map(|t| (t.mon, t.coef)).collect(),
        ))
    }

    pub fn contains(&self, f: &Polynomial<K>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Whether the stored basis is reduced: monic leads, no term divisible
    /// by another element's lead.
    pub fn is_reduced(&self) -> bool {
        let Some(gb) = &self.gb else { return false };
        for (a, g) in gb.iter().enumerate() {
            if !g.lead_coeff().is_some_and(|c| c.is_one()) {
                return false;
            }
            for (b, h) in gb.iter().enumerate() {
                if a == b {
                    continue;
                }
                let lh = h.lead_monomial().unwrap();
                if g.terms().iter().any(|(m, _)| lh.divides(m)) {
                    return false;
                }
            }
        }
        true
    }

    /// Every generator reduces to zero and every basis element lies in the
    /// generated ideal (checked with a membership certificate).
    pub fn verify_same_ideal(&self) -> Result<bool> {
        for g in &self.generators {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        for b in self.require_gb()? {
            match ideal_membership(b, &self.generators)? {
                IdealMembership::Member { .. } => {}
                IdealMembership::NonMember { .. } => return Ok(false),
            }
        }
        Ok(true)
    }

    /// Buchberger's criterion re-checked on the stored basis.
    pub fn verify_s_pairs(&self) -> Result<bool> {
        let gb = self.require_gb()?;
        for a in 0..gb.len() {
            for b in a + 1..gb.len() {
                let (la, lb) = (gb[a].lead().unwrap(), gb[b].lead().unwrap());
                let lcm = la.0.lcm(&lb.0);
                let qa = la.0.quotient_of(&lcm).unwrap();
                let qb = lb.0.quotient_of(&lcm).unwrap();
                let s = gb[a]
                    .mul_term(&qa, &la.1.inv().unwrap())
                    .try_sub(&gb[b].mul_term(&qb, &lb.1.inv().unwrap()))?;
                if !self.normal_form(&s)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Compares reduced bases (canonical for a fixed order).
    pub fn same_ideal_as(&self, other: &IdealBasis<K>) -> Result<bool> {
        Ok(self.require_gb()? == other.require_gb()?)
    }
}

/// Outcome of an ideal-membership query.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum IdealMembershipJson {
    Member { coefficients: Vec<String> },
    NonMember { normal_form: String },
}

#[derive(Clone, Debug)]
pub enum IdealMembership<K: Field> {
    /// `f = sum_k coefficients[k] * gens[k]`
    Member { coefficients: Vec<Polynomial<K>> },
    NonMember { normal_form: Polynomial<K> },
}

/// Decides `f in (gens)` and returns a certificate either way.
pub fn ideal_membership<K: Field>(f: &Polynomial<K>, gens: &[Polynomial<K>]) -> Result<IdealMembership<K>> {
    let ring = f.ring().clone();
    let inputs = gens
        .iter()
        .map(|g| GbInput {
            terms: poly_to_vec(g, 0),
            relation: false,
        })
        .collect();
    let run = compute_gb(
        &ring,
        ModuleOrder::untwisted(ModuleOrderKind::PositionOverTerm, 1),
        inputs,
        IdealReducers::empty(),
        &GbOptions {
            track: true,
            ..Default::default()
        },
    )?;
    let (nf, cof) = run.reduce(poly_to_vec(f, 0))?;
    if !nf.is_empty() {
        return Ok(IdealMembership::NonMember {
            normal_form: vec_to_poly(&ring, nf),
        });
    }
    let mut coefficients = vec![Polynomial::zero(&ring); gens.len()];
    for t in cof.unwrap_or_default() {
        let k = t.pos as usize;
        coefficients[k] = coefficients[k].try_add(&Polynomial::monomial(&ring, t.mon, t.coef))?;
    }
    // certificate check
    let mut acc = Polynomial::zero(&ring);
    for (c, g) in coefficients.iter().zip(gens) {
        acc = acc.try_add(&c.try_mul(g)?)?;
    }
    if acc != *f {
        return Err(AlgebraError::Contract(
            "ideal membership certificate failed to verify".into(),
        ));
    }
    Ok(IdealMembership::Member { coefficients })
}

impl<K: Field> IdealMembership<K> {
    pub fn is_member(&self) -> bool {
        matches!(self, IdealMembership::Member { .. })
    }

    pub fn to_json(&self) -> IdealMembershipJson {
        match self {
            IdealMembership::Member { coefficients } => IdealMembershipJson::Member {
                coefficients: coefficients.iter().map(|c| c.to_string()).collect(),
            },
            IdealMembership::NonMember { normal_form } => IdealMembershipJson::NonMember {
                normal_form: normal_form.to_string(),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{parse_poly, Rational, TermOrder, F32003};

    fn ring(names: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(names.iter().map(|s| s.to_string()).collect(), TermOrder::GrevLex)
    }

    #[test]
    fn single_determinant_is_its_own_basis() {
        let r = ring(&["a", "b", "c", "d"]);
        let det: Polynomial<Rational> = parse_poly(&r, "a*d - b*c").unwrap();
        let ib = buchberger(&[det.clone()]).unwrap();
        // grevlex on a > b > c > d leads with b*c; the basis is monic
        assert_eq!(ib.gb().unwrap(), &[det.monic()]);
        assert_eq!(det.monic().to_string(), "b*c - a*d");
        assert!(ib.normal_form(&det).unwrap().is_zero());
    }

    #[test]
    fn coprime_variables() {
        let r = ring(&["a", "b", "c", "d"]);
        let g: Vec<Polynomial<F32003>> = vec![parse_poly(&r, "a").unwrap(), parse_poly(&r, "b").unwrap()];
        let ib = buchberger(&g).unwrap();
        // sorted by increasing lead
        assert_eq!(ib.gb().unwrap(), &[g[1].clone(), g[0].clone()]);
    }

    #[test]
    fn textbook_example_is_reduced_and_closed() {
        // x^3 - 2xy, x^2 y - 2y^2 + x under grevlex
        let r = ring(&["x", "y"]);
        let g: Vec<Polynomial<Rational>> = vec![
            parse_poly(&r, "x^3 - 2*x*y").unwrap(),
            parse_poly(&r, "x^2*y - 2*y^2 + x").unwrap(),
        ];
        let ib = buchberger(&g).unwrap();
        let got: Vec<String> = ib.gb().unwrap().iter().map(|p| p.to_string()).collect();
        assert_eq!(got, vec!["y^2 - 1/2*x", "x*y", "x^2"]);
        assert!(ib.is_reduced());
        assert!(ib.verify_s_pairs().unwrap());
        assert!(ib.verify_same_ideal().unwrap());
    }

    #[test]
    fn membership_certificate_and_witness() {
        let r = ring(&["x", "y", "z"]);
        let g: Vec<Polynomial<Rational>> = vec![parse_poly(&r, "x*y - z^2").unwrap(), parse_poly(&r, "y^2 - x*z").unwrap()];
        let f = parse_poly(&r, "(x*y - z^2)*(x + z) + y*(y^2 - x*z)").unwrap();
        assert!(ideal_membership(&f, &g).unwrap().is_member());
        let h = parse_poly(&r, "x*z").unwrap();
        match ideal_membership(&h, &g).unwrap() {
            IdealMembership::NonMember { normal_form } => assert!(!normal_form.is_zero()),
            _ => panic!("x*z is not in the ideal"),
        }
    }
}
