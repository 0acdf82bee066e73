//! Divisor classes of `R_t(X)` (infinite cyclic, generated by `[p]`) and of
//! `k[X,Y,Z]/(XY - Z^n)` (cyclic of order `n`), their realizing ideals, and
//! isomorphism tests for rank-one reflexive ideals.

use serde::{Deserialize, Serialize};

use crate::detring::{det_of, subsets, RingCtx, RingKind};
use crate::error::{AlgebraError, Result};
use crate::exact_algebra::{Field, PolyMatrix, Polynomial};
use crate::groebner::{colon_ideal, ideal_eq, ideal_power, ideal_product, ModuleBasis, ModuleOptions};
use crate::homology::reflexive_hull;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClassGroup {
    Integers,
    Cyclic { order: u32 },
}

impl ClassGroup {
    pub fn of(kind: RingKind) -> Self {
        match kind {
            RingKind::Determinantal { .. } => ClassGroup::Integers,
            RingKind::Hypersurface { n } => ClassGroup::Cyclic { order: n },
        }
    }

    pub fn normalize(&self, v: i64) -> i64 {
        match self {
            ClassGroup::Integers => v,
            ClassGroup::Cyclic { order } => v.rem_euclid(*order as i64),
        }
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, ClassGroup::Cyclic { order: 1 })
    }
}

/// `value * [p]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DivisorClass {
    pub ring: RingKind,
    pub value: i64,
}

impl DivisorClass {
    pub fn new(ring: RingKind, value: i64) -> Self {
        DivisorClass { ring, value: ClassGroup::of(ring).normalize(value) }
    }

    pub fn zero(ring: RingKind) -> Self {
        Self::new(ring, 0)
    }

    pub fn group(&self) -> ClassGroup {
        ClassGroup::of(self.ring)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn neg(&self) -> Self {
        Self::new(self.ring, -self.value)
    }
}

impl std::fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.value {
            0 => write!(f, "[R]"),
            1 => write!(f, "[p]"),
            v => write!(f, "{v}[p]"),
        }
    }
}

fn same_ring(a: &DivisorClass, b: &DivisorClass) -> Result<()> {
    if a.ring != b.ring {
        return Err(AlgebraError::IncompatibleContext(format!("classes of {} and {}", a.ring, b.ring)));
    }
    Ok(())
}

pub fn class_add(a: &DivisorClass, b: &DivisorClass) -> Result<DivisorClass> {
    same_ring(a, b)?;
    Ok(DivisorClass::new(a.ring, a.value + b.value))
}

pub fn class_sub(a: &DivisorClass, b: &DivisorClass) -> Result<DivisorClass> {
    same_ring(a, b)?;
    Ok(DivisorClass::new(a.ring, a.value - b.value))
}

/// Which `t - 1` rows generate `p` and which `t - 1` columns generate `q`;
/// `None` means the first ones.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct RealizeOptions {
    pub rows: Option<Vec<usize>>,
    pub cols: Option<Vec<usize>>,
}

fn check_lines(lines: &[usize], count: usize, max: usize, what: &str) -> Result<()> {
    let sorted = lines.windows(2).all(|w| w[0] < w[1]);
    if lines.len() != count || !sorted || lines.iter().any(|&l| l == 0 || l > max) {
        return Err(AlgebraError::Precondition(format!("need {count} increasing {what} in 1..={max}, got {lines:?}")));
    }
    Ok(())
}

/// `(t-1)`-minors of the given rows (`p`) or columns (`q`).
pub fn p_ideal<K: Field>(ctx: &RingCtx<K>, rows: Option<&[usize]>) -> Result<Vec<Polynomial<K>>> {
    let RingKind::Determinantal { m, n, t } = ctx.kind() else {
        return Err(AlgebraError::Precondition("p needs a determinantal ring".into()));
    };
    let first: Vec<usize> = (1..t).collect();
    let rows = rows.unwrap_or(&first);
    check_lines(rows, t - 1, m, "rows")?;
    Ok(subsets(n, t - 1)
        .iter()
        .map(|cols| det_of(ctx.ring(), |i, j| ctx.x(i, j), rows, cols))
        .collect())
}

pub fn q_ideal<K: Field>(ctx: &RingCtx<K>, cols: Option<&[usize]>) -> Result<Vec<Polynomial<K>>> {
    let RingKind::Determinantal { m, n, t } = ctx.kind() else {
        return Err(AlgebraError::Precondition("q needs a determinantal ring".into()));
    };
    let first: Vec<usize> = (1..t).collect();
    let cols = cols.unwrap_or(&first);
    check_lines(cols, t - 1, n, "columns")?;
    Ok(subsets(m, t - 1)
        .iter()
        .map(|rows| det_of(ctx.ring(), |i, j| ctx.x(i, j), rows, cols))
        .collect())
}

/// Generators of an ideal in the class: `p^l`, `q^l` or `(X, Z^m)`; the
/// unit ideal for the zero class.
pub fn realize<K: Field>(ctx: &RingCtx<K>, cls: &DivisorClass) -> Result<Vec<Polynomial<K>>> {
    realize_with(ctx, cls, &RealizeOptions::default())
}

pub fn realize_with<K: Field>(ctx: &RingCtx<K>, cls: &DivisorClass, opts: &RealizeOptions) -> Result<Vec<Polynomial<K>>> {
    if cls.ring != ctx.kind() {
        return Err(AlgebraError::IncompatibleContext(format!("class of {} in {}", cls.ring, ctx.kind())));
    }
    let q = ctx.quotient();
    if cls.is_zero() {
        return Ok(vec![Polynomial::one(ctx.ring())]);
    }
    match cls.ring {
        RingKind::Determinantal { .. } => {
            let l = cls.value.unsigned_abs() as u32;
            let base = if cls.value > 0 {
                p_ideal(ctx, opts.rows.as_deref())?
            } else {
                q_ideal(ctx, opts.cols.as_deref())?
            };
            Ok(ideal_power(&base, l, q))
        }
        RingKind::Hypersurface { .. } => Ok(vec![ctx.parse("X")?, ctx.parse(&format!("Z^{}", cls.value))?]),
    }
}

/// Indices of a minimal homogeneous generating set.
pub fn minimal_generator_indices<K: Field>(ctx: &RingCtx<K>, gens: &[Polynomial<K>]) -> Result<Vec<usize>> {
    let degs: Vec<i32> = gens
        .iter()
        .map(|g| g.homogeneous_degree().map(|d| d as i32))
        .collect::<Option<_>>()
        .ok_or_else(|| AlgebraError::Precondition("generators must be homogeneous".into()))?;
    let row = PolyMatrix::from_rows(ctx.ring(), vec![gens.to_vec()])?.with_twists(vec![0], degs)?;
    let mb = ModuleBasis::new(&row, ctx.quotient(), &ModuleOptions::default())?;
    let mut idx = mb.minimal_generators().to_vec();
    idx.sort_unstable();
    Ok(idx)
}

pub fn minimize<K: Field>(ctx: &RingCtx<K>, gens: &[Polynomial<K>]) -> Result<Vec<Polynomial<K>>> {
    let nonzero: Vec<Polynomial<K>> = gens.iter().map(|g| ctx.nf(g)).filter(|g| !g.is_zero()).collect();
    Ok(minimal_generator_indices(ctx, &nonzero)?.into_iter().map(|k| nonzero[k].clone()).collect())
}

/// A homogeneous ideal is principal iff it needs one generator.
pub fn is_principal<K: Field>(ctx: &RingCtx<K>, gens: &[Polynomial<K>]) -> Result<bool> {
    Ok(minimize(ctx, gens)?.len() == 1)
}

/// `b I : J` for a nonzero `b in J`, a copy of `Hom(J, I)`.
pub fn hom_ideal<K: Field>(ctx: &RingCtx<K>, i: &[Polynomial<K>], j: &[Polynomial<K>]) -> Result<Vec<Polynomial<K>>> {
    let b = j
        .iter()
        .find(|g| !ctx.is_zero(g))
        .ok_or_else(|| AlgebraError::Precondition("the ideal must be nonzero".into()))?;
    let bi = ideal_product(std::slice::from_ref(b), i, ctx.quotient());
    colon_ideal(&bi, j, ctx.quotient())
}

/// For rank-one reflexive ideals: `I ~ J` iff `Hom(J, I)` is free.
pub fn isomorphic_reflexive<K: Field>(ctx: &RingCtx<K>, i: &[Polynomial<K>], j: &[Polynomial<K>]) -> Result<bool> {
    is_principal(ctx, &hom_ideal(ctx, i, j)?)
}

/// Both sides of a group-law check at the ideal level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawCheck {
    pub left: DivisorClass,
    pub right: DivisorClass,
    pub model: DivisorClass,
    /// `(I J)**` (sum) or `Hom(J, I)` (difference) is isomorphic to the
    /// realization of the model's answer.
    pub holds: bool,
}

/// `[I] + [J] = [(I J)**]` against the model.
pub fn verify_sum<K: Field>(ctx: &RingCtx<K>, a: &DivisorClass, b: &DivisorClass) -> Result<LawCheck> {
    let model = class_add(a, b)?;
    let prod = ideal_product(&realize(ctx, a)?, &realize(ctx, b)?, ctx.quotient());
    let hull = reflexive_hull(ctx, &prod)?;
    let holds = isomorphic_reflexive(ctx, &hull, &realize(ctx, &model)?)?;
    Ok(LawCheck { left: *a, right: *b, model, holds })
}

/// `[I] - [J] = [Hom(J, I)]` against the model.
pub fn verify_difference<K: Field>(ctx: &RingCtx<K>, a: &DivisorClass, b: &DivisorClass) -> Result<LawCheck> {
    let model = class_sub(a, b)?;
    let h = hom_ideal(ctx, &realize(ctx, a)?, &realize(ctx, b)?)?;
    let holds = isomorphic_reflexive(ctx, &h, &realize(ctx, &model)?)?;
    Ok(LawCheck { left: *a, right: *b, model, holds })
}

/// `p^l` is reflexive and `(p^(l-1) p)** = p^l`.
pub fn power_is_symbolic<K: Field>(ctx: &RingCtx<K>, l: u32) -> Result<bool> {
    let cls = DivisorClass::new(ctx.kind(), l as i64);
    let pl = realize(ctx, &cls)?;
    let hull = reflexive_hull(ctx, &pl)?;
    ideal_eq(&pl, &hull, ctx.quotient())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::F32003;

    fn strings(v: &[Polynomial<F32003>]) -> Vec<String> {
        v.iter().map(|f| f.to_string()).collect()
    }

    #[test]
    fn realize_examples() {
        let ctx: RingCtx<F32003> = RingCtx::gorenstein(3).unwrap();
        let p = realize(&ctx, &DivisorClass::new(ctx.kind(), 1)).unwrap();
        assert_eq!(p.len(), 3);
        for j in 1..=3 {
            let m = crate::detring::m_n(&ctx, j).unwrap();
            assert!(p.iter().any(|g| g == &m || g == &-&m));
        }
        let ctx: RingCtx<F32003> = RingCtx::gorenstein(2).unwrap();
        let q = realize(&ctx, &DivisorClass::new(ctx.kind(), -1)).unwrap();
        assert_eq!(strings(&q), vec!["x[1,1]", "x[2,1]"]);
        let ctx: RingCtx<F32003> = RingCtx::hypersurface(4).unwrap();
        let c = realize(&ctx, &DivisorClass::new(ctx.kind(), 2)).unwrap();
        assert_eq!(strings(&c), vec!["X", "Z^2"]);
        let c = realize(&ctx, &DivisorClass::new(ctx.kind(), 4)).unwrap();
        assert_eq!(strings(&c), vec!["1"]);
    }

    #[test]
    fn row_override() {
        let ctx: RingCtx<F32003> = RingCtx::gorenstein(2).unwrap();
        let opts = RealizeOptions { rows: Some(vec![2]), cols: None };
        let p2 = realize_with(&ctx, &DivisorClass::new(ctx.kind(), 1), &opts).unwrap();
        assert_eq!(strings(&p2), vec!["x[2,1]", "x[2,2]"]);
        let p1 = realize(&ctx, &DivisorClass::new(ctx.kind(), 1)).unwrap();
        assert!(isomorphic_reflexive(&ctx, &p1, &p2).unwrap());
        let bad = RealizeOptions { rows: Some(vec![3]), cols: None };
        assert!(realize_with(&ctx, &DivisorClass::new(ctx.kind(), 1), &bad).is_err());
    }

    #[test]
    fn model_arithmetic() {
        let h = RingKind::Hypersurface { n: 3 };
        let p = DivisorClass::new(h, 1);
        let s = class_add(&class_add(&p, &p).unwrap(), &p).unwrap();
        assert!(s.is_zero());
        assert_eq!(DivisorClass::new(h, -1).value, 2);
        let d = RingKind::Determinantal { m: 2, n: 2, t: 2 };
        assert!(class_add(&p, &DivisorClass::new(d, 1)).is_err());
        assert!(class_sub(&p, &DivisorClass::new(d, 1)).is_err());
    }

    #[test]
    fn p_plus_q_is_trivial() {
        let ctx: RingCtx<F32003> = RingCtx::gorenstein(2).unwrap();
        let p = DivisorClass::new(ctx.kind(), 1);
        let c = verify_sum(&ctx, &p, &p.neg()).unwrap();
        assert!(c.model.is_zero() && c.holds);
        let prod = ideal_product(&realize(&ctx, &p).unwrap(), &realize(&ctx, &p.neg()).unwrap(), ctx.quotient());
        assert!(!is_principal(&ctx, &prod).unwrap());
        assert!(is_principal(&ctx, &reflexive_hull(&ctx, &prod).unwrap()).unwrap());
    }

    #[test]
    fn p_and_q_are_not_isomorphic() {
        let ctx: RingCtx<F32003> = RingCtx::gorenstein(2).unwrap();
        let p = realize(&ctx, &DivisorClass::new(ctx.kind(), 1)).unwrap();
        let q = realize(&ctx, &DivisorClass::new(ctx.kind(), -1)).unwrap();
        assert!(!isomorphic_reflexive(&ctx, &p, &q).unwrap());
        assert!(isomorphic_reflexive(&ctx, &p, &p).unwrap());
    }

    #[test]
    fn hypersurface_three_p_is_trivial() {
        let ctx: RingCtx<F32003> = RingCtx::hypersurface(3).unwrap();
        let p = DivisorClass::new(ctx.kind(), 1);
        let two = verify_sum(&ctx, &p, &p).unwrap();
        assert!(two.holds && two.model.value == 2);
        let three = verify_sum(&ctx, &two.model, &p).unwrap();
        assert!(three.holds && three.model.is_zero());
        assert!(verify_difference(&ctx, &p, &two.model).unwrap().holds);
    }

    #[test]
    fn powers_of_p_are_reflexive() {
        for n in 2..=3 {
            let ctx: RingCtx<F32003> = RingCtx::gorenstein(n).unwrap();
            for l in 1..=2 {
                assert!(power_is_symbolic(&ctx, l).unwrap(), "n={n} l={l}");
            }
        }
    }

    #[test]
    fn minimal_generators_drop_redundant_ones() {
        let ctx: RingCtx<F32003> = RingCtx::gorenstein(2).unwrap();
        let g = vec![ctx.x(1, 1), ctx.x(1, 2), &ctx.x(1, 1) * &ctx.x(2, 2), &ctx.x(1, 1) + &ctx.x(1, 2)];
        assert_eq!(minimize(&ctx, &g).unwrap().len(), 2);
    }
}
