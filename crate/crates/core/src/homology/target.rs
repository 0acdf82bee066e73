//! Coefficient modules for Hom and tensor: an ideal `M` of `R`, or `R/J`,
//! and their graded pieces as vector spaces.

use std::collections::HashMap;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::detring::RingCtx;
use crate::error::{AlgebraError, Result};
use crate::exact_algebra::linalg::{Echelon, Insert, SparseVec};
use crate::exact_algebra::{Field, Monomial, PolyMatrix, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetKind {
    /// The ideal generated by the generators.
    Ideal,
    /// `R` modulo the ideal generated by the generators.
    Quotient,
}

/// An ideal `M` of `R` (`R` itself for the generator `1`) or a cyclic
/// module `R/J`.
#[derive(Clone, Debug)]
pub struct TargetModule<K: Field> {
    pub kind: TargetKind,
    pub gens: Vec<Polynomial<K>>,
    pub label: String,
}

impl<K: Field> TargetModule<K> {
    pub fn ring(ctx: &RingCtx<K>) -> Self {
        TargetModule {
            kind: TargetKind::Ideal,
            gens: vec![Polynomial::one(ctx.ring())],
            label: "R".into(),
        }
    }

    pub fn ideal(gens: Vec<Polynomial<K>>, label: impl Into<String>) -> Result<Self> {
        check_gens(&gens)?;
        Ok(TargetModule { kind: TargetKind::Ideal, gens, label: label.into() })
    }

    pub fn quotient_by(gens: Vec<Polynomial<K>>, label: impl Into<String>) -> Result<Self> {
        check_gens(&gens)?;
        Ok(TargetModule { kind: TargetKind::Quotient, gens, label: label.into() })
    }

    pub fn gen_degrees(&self) -> Vec<i32> {
        self.gens.iter().map(|g| g.homogeneous_degree().unwrap() as i32).collect()
    }

    /// Lowest degree with a possibly nonzero piece.
    pub fn min_degree(&self) -> i32 {
        match self.kind {
            TargetKind::Ideal => self.gen_degrees().into_iter().min().unwrap_or(0),
            TargetKind::Quotient => 0,
        }
    }

    /// `1 x s` row of generators with column twists their degrees.
    pub fn generator_row(&self, ctx: &RingCtx<K>) -> Result<PolyMatrix<K>> {
        PolyMatrix::from_rows(ctx.ring(), vec![self.gens.clone()])?.with_twists(vec![0], self.gen_degrees())
    }
}

fn check_gens<K: Field>(gens: &[Polynomial<K>]) -> Result<()> {
    if gens.is_empty() {
        return Err(AlgebraError::Precondition("need at least one generator".into()));
    }
    if gens.iter().any(|g| g.is_zero() || !g.is_homogeneous()) {
        return Err(AlgebraError::Precondition("generators must be nonzero and homogeneous".into()));
    }
    Ok(())
}

/// The degree-`e` piece of a [`TargetModule`] inside coordinates on the
/// normal monomials of `R_e`.
#[derive(Clone, Debug)]
pub struct GradedPieceBasis<K: Field> {
    pub degree: i32,
    /// Normal monomials of `R_e`, the ambient coordinates.
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// Representatives spanning the piece, independent modulo `relations`.
    pub basis: Vec<Polynomial<K>>,
    relations: Echelon<K>,
}

impl<K: Field> GradedPieceBasis<K> {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.monomials.len()
    }

    /// Coordinates of `f in R_e` (reduced modulo the defining ideal and, for
    /// `R/J`, modulo `J_e`).
    pub fn coords(&self, ctx: &RingCtx<K>, f: &Polynomial<K>) -> SparseVec<K> {
        let nf = ctx.nf(f);
        let mut v: SparseVec<K> = nf
            .terms()
            .iter()
            .map(|(m, c)| (*self.index.get(m).expect("normal monomial of the piece's degree"), c.clone()))
            .collect();
        v.sort_by_key(|t| t.0);
        if self.relations.rank() > 0 {
            v = self.relations.remainder(&v);
        }
        v
    }
}

/// Memoized graded pieces of one target module.
pub struct PieceCache<'a, K: Field> {
    ctx: &'a RingCtx<K>,
    target: &'a TargetModule<K>,
    pieces: Mutex<HashMap<i32, std::sync::Arc<GradedPieceBasis<K>>>>,
}

impl<'a, K: Field> PieceCache<'a, K> {
    pub fn new(ctx: &'a RingCtx<K>, target: &'a TargetModule<K>) -> Self {
        PieceCache { ctx, target, pieces: Mutex::new(HashMap::new()) }
    }

    pub fn ctx(&self) -> &RingCtx<K> {
        self.ctx
    }

    pub fn get(&self, e: i32) -> std::sync::Arc<GradedPieceBasis<K>> {
        if let Some(p) = self.pieces.lock().unwrap().get(&e) {
            return p.clone();
        }
        let p = std::sync::Arc::new(self.build(e));
        self.pieces.lock().unwrap().insert(e, p.clone());
        p
    }

    fn span_of_multiples(&self, e: i32) -> Vec<Polynomial<K>> {
        let mut out = Vec::new();
        for g in &self.target.gens {
            let dg = g.homogeneous_degree().unwrap() as i32;
            if dg > e {
                continue;
            }
            for mu in self.ctx.normal_monomials((e - dg) as u32) {
                out.push(self.ctx.nf(&g.mul_term(&mu, &K::one())));
            }
        }
        out
    }

    fn build(&self, e: i32) -> GradedPieceBasis<K> {
        let monomials = if e < 0 { Vec::new() } else { self.ctx.normal_monomials(e as u32) };
        let index: HashMap<Monomial, usize> = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut piece = GradedPieceBasis {
            degree: e,
            monomials,
            index,
            basis: Vec::new(),
            relations: Echelon::new(false),
        };
        if e < 0 {
            return piece;
        }
        let candidates: Vec<Polynomial<K>> = match self.target.kind {
            TargetKind::Ideal => self.span_of_multiples(e),
            TargetKind::Quotient => {
                let mut rel = Echelon::new(false);
                for f in self.span_of_multiples(e) {
                    let v = piece.coords(self.ctx, &f);
                    rel.insert(v);
                }
                piece.relations = rel;
                piece
                    .monomials
                    .iter()
                    .map(|m| Polynomial::monomial(self.ctx.ring(), m.clone(), K::one()))
                    .collect()
            }
        };
        let mut ech = Echelon::new(false);
        for f in candidates {
            let v = piece.coords(self.ctx, &f);
            if v.is_empty() {
                continue;
            }
            if let Insert::Independent = ech.insert(v) {
                piece.basis.push(f);
            }
        }
        piece
    }
}
