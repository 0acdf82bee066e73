//! Buchberger's algorithm for submodules of `k[x]^r`.
//!
//! One engine serves ideals (rank one), module bases, membership with
//! certificates, minimal generators and syzygies. Elements may carry a
//! cofactor vector recording how they were produced from the inputs; every
//! S-pair that reduces to zero then yields a syzygy of the inputs
//! (Schreyer).

use std::cmp::Ordering;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::exact_algebra::{Field, Monomial, PolyRing};

/// One term `coef * mon * e_pos` of a module vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MTerm<K> {
    pub pos: u32,
    pub mon: Monomial,
    pub coef: K,
}

/// Sparse module vector: terms strictly descending in a [`ModuleOrder`].
pub type ModVec<K> = Vec<MTerm<K>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum ModuleOrderKind {
    /// Position first (index 0 largest), then the ring order.
    #[default]
    PositionOverTerm,
    /// Twisted degree, then the ring order, then position.
    TermOverPosition,
}

/// Monomial order on `k[x]^r` with per-position degree shifts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleOrder {
    pub kind: ModuleOrderKind,
    pub twists: Vec<i32>,
}

impl ModuleOrder {
    pub fn new(kind: ModuleOrderKind, twists: Vec<i32>) -> Self {
        ModuleOrder { kind, twists }
    }

    pub fn untwisted(kind: ModuleOrderKind, rank: usize) -> Self {
        ModuleOrder {
            kind,
            twists: vec![0; rank],
        }
    }

    #[inline]
    pub fn tdeg(&self, ring: &PolyRing, pos: u32, mon: &Monomial) -> i64 {
        ring.degree_of(mon) as i64 + self.twists[pos as usize] as i64
    }

    #[inline]
    pub fn cmp(&self, ring: &PolyRing, pa: u32, ma: &Monomial, pb: u32, mb: &Monomial) -> Ordering {
        match self.kind {
            ModuleOrderKind::PositionOverTerm => pb.cmp(&pa).then_with(|| ring.cmp(ma, mb)),
            ModuleOrderKind::TermOverPosition => self
                .tdeg(ring, pa, ma)
                .cmp(&self.tdeg(ring, pb, mb))
                .then_with(|| ring.cmp(ma, mb))
                .then_with(|| pb.cmp(&pa)),
        }
    }

    pub fn sort(&self, ring: &PolyRing, v: &mut ModVec<impl Field>) {
        v.sort_by(|a, b| self.cmp(ring, b.pos, &b.mon, a.pos, &a.mon));
    }

    /// Sorts and combines like terms.
    pub fn canonicalize<K: Field>(&self, ring: &PolyRing, mut v: ModVec<K>) -> ModVec<K> {
        self.sort(ring, &mut v);
        let mut out: ModVec<K> = Vec::with_capacity(v.len());
        for t in v {
            match out.last_mut() {
                Some(l) if l.pos == t.pos && l.mon == t.mon => l.coef = l.coef.add(&t.coef),
                _ => {
                    if out.last().is_some_and(|l| l.coef.is_zero()) {
                        out.pop();
                    }
                    out.push(t);
                }
            }
        }
        if out.last().is_some_and(|l| l.coef.is_zero()) {
            out.pop();
        }
        out
    }
}

/// Computes `a - c * q * b` for vectors sorted in `ord`.
pub fn sub_mul<K: Field>(
    ring: &PolyRing,
    ord: &ModuleOrder,
    a: &[MTerm<K>],
    b: &[MTerm<K>],
    q: &Monomial,
    c: &K,
) -> ModVec<K> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    let mut cur: Option<Monomial> = b.first().map(|t| t.mon.mul(q));
    while i < a.len() {
        let Some(bm) = cur.as_ref() else { break };
        let bt = &b[j];
        match ord.cmp(ring, a[i].pos, &a[i].mon, bt.pos, bm) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(MTerm {
                    pos: bt.pos,
                    mon: cur.take().unwrap(),
                    coef: bt.coef.mul(c).neg(),
                });
                j += 1;
                cur = b.get(j).map(|t| t.mon.mul(q));
            }
            Ordering::Equal => {
                let mut co = a[i].coef.clone();
                co.sub_mul_assign(&bt.coef, c);
                if !co.is_zero() {
                    out.push(MTerm {
                        pos: a[i].pos,
                        mon: cur.take().unwrap(),
                        coef: co,
                    });
                }
                i += 1;
                j += 1;
                cur = b.get(j).map(|t| t.mon.mul(q));
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    if let Some(bm) = cur {
        let bt = &b[j];
        out.push(MTerm {
            pos: bt.pos,
            mon: bm,
            coef: bt.coef.mul(c).neg(),
        });
        for t in &b[j + 1..] {
            out.push(MTerm {
                pos: t.pos,
                mon: t.mon.mul(q),
                coef: t.coef.mul(c).neg(),
            });
        }
    }
    out
}

/// `c * q * v`
pub fn scale_vec<K: Field>(v: &[MTerm<K>], q: &Monomial, c: &K) -> ModVec<K> {
    v.iter()
        .map(|t| MTerm {
            pos: t.pos,
            mon: t.mon.mul(q),
            coef: t.coef.mul(c),
        })
        .collect()
}

/// Rank-one reducers applied at every position: the defining ideal of a
/// quotient ring acting on vectors.
#[derive(Clone, Debug)]
pub struct IdealReducers<K> {
    polys: Vec<Vec<(Monomial, K)>>,
    sevs: Vec<u64>,
}

impl<K: Field> IdealReducers<K> {
    pub fn new(gb: &[Vec<(Monomial, K)>]) -> Self {
        let polys: Vec<Vec<(Monomial, K)>> = gb
            .iter()
            .filter(|p| !p.is_empty())
            .map(|p| {
                let inv = p[0].1.inv().unwrap();
                p.iter().map(|(m, c)| (m.clone(), c.mul(&inv))).collect()
            })
            .collect();
        let sevs = polys.iter().map(|p| p[0].0.sev()).collect();
        IdealReducers { polys, sevs }
    }

    pub fn empty() -> Self {
        IdealReducers {
            polys: Vec::new(),
            sevs: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn polys(&self) -> &[Vec<(Monomial, K)>] {
        &self.polys
    }

    fn find(&self, m: &Monomial) -> Option<usize> {
        let s = m.sev();
        (0..self.polys.len()).find(|&k| self.sevs[k] & !s == 0 && self.polys[k][0].0.divides(m))
    }

    /// Full normal form of a vector, every coordinate reduced modulo the
    /// ideal.
    pub fn reduce(&self, ring: &PolyRing, ord: &ModuleOrder, v: ModVec<K>) -> ModVec<K> {
        if self.polys.is_empty() || v.is_empty() {
            return v;
        }
        let mut done: ModVec<K> = Vec::new();
        let mut h = v;
        let mut start = 0;
        while start < h.len() {
            let t = &h[start];
            match self.find(&t.mon) {
                Some(k) => {
                    let g = &self.polys[k];
                    let q = g[0].0.quotient_of(&t.mon).unwrap();
                    let c = t.coef.clone();
                    let pos = t.pos;
                    let tail: ModVec<K> = g[1..]
                        .iter()
                        .map(|(m, co)| MTerm {
                            pos,
                            mon: m.clone(),
                            coef: co.clone(),
                        })
                        .collect();
                    h = sub_mul(ring, ord, &h[start + 1..], &tail, &q, &c);
                    start = 0;
                }
                None => {
                    done.push(h[start].clone());
                    start += 1;
                }
            }
        }
        done
    }
}

#[derive(Clone, Debug)]
pub struct GbElem<K> {
    pub terms: ModVec<K>,
    pub cof: Option<ModVec<K>>,
    pub sugar: i64,
    sev: u64,
}

impl<K: Field> GbElem<K> {
    pub fn lead(&self) -> &MTerm<K> {
        &self.terms[0]
    }
}

/// An input generator of the module.
#[derive(Clone, Debug)]
pub struct GbInput<K> {
    pub terms: ModVec<K>,
    /// Relations (multiples of the quotient ideal) are not tracked and never
    /// count as generators.
    pub relation: bool,
}

#[derive(Clone, Debug, Default)]
pub struct GbOptions {
    pub order: ModuleOrderKind,
    /// Pairs and inputs of higher sugar degree are left unprocessed.
    pub degree_cap: Option<i64>,
    /// Maximum number of reduction steps before giving up.
    pub step_cap: Option<u64>,
    /// Track cofactors in terms of the non-relation inputs.
    pub track: bool,
    /// Leave the basis unreduced (skip the final inter-reduction).
    pub skip_interreduce: bool,
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    pos: u32,
    sugar: i64,
}

/// The state and result of a Buchberger run.
#[derive(Clone, Debug)]
pub struct ModuleGb<K: Field> {
    pub ring: Arc<PolyRing>,
    pub rank: usize,
    pub order: ModuleOrder,
    /// Number of tracked inputs (cofactor length).
    pub ntracked: usize,
    /// The basis; reduced unless `skip_interreduce` was requested.
    pub elems: Vec<GbElem<K>>,
    /// Syzygies of the tracked inputs found along the way (not minimal).
    pub syzygies: Vec<ModVec<K>>,
    /// Tracked-input indices that were not in the span of earlier material.
    pub minimal_inputs: Vec<usize>,
    /// False when the degree cap left work undone.
    pub complete: bool,
    pub steps: u64,
    pub quotient: IdealReducers<K>,
    cof_order: ModuleOrder,
}

struct Engine<'a, K: Field> {
    ring: &'a Arc<PolyRing>,
    order: &'a ModuleOrder,
    cof_order: ModuleOrder,
    quotient: &'a IdealReducers<K>,
    opts: &'a GbOptions,
    elems: Vec<GbElem<K>>,
    active: Vec<bool>,
    by_pos: Vec<Vec<usize>>,
    pairs: Vec<Pair>,
    product_criterion: bool,
    steps: u64,
    syzygies: Vec<ModVec<K>>,
}

impl<'a, K: Field> Engine<'a, K> {
    fn find_reducer(&self, pos: u32, m: &Monomial) -> Option<usize> {
        let s = m.sev();
        self.by_pos[pos as usize].iter().copied().find(|&k| {
            let e = &self.elems[k];
            e.sev & !s == 0 && e.terms[0].mon.divides(m)
        })
    }

    /// Fully reduces `h` (and its cofactor) by the current basis.
    fn reduce(
        &mut self,
        mut h: ModVec<K>,
        mut cof: Option<ModVec<K>>,
        full: bool,
    ) -> Result<(ModVec<K>, Option<ModVec<K>>)> {
        let mut done: ModVec<K> = Vec::new();
        let mut start = 0;
        while start < h.len() {
            let t = &h[start];
            match self.find_reducer(t.pos, &t.mon) {
                Some(k) => {
                    self.steps += 1;
                    if let Some(cap) = self.opts.step_cap {
                        if self.steps > cap {
                            return Err(AlgebraError::Infeasible(format!(
                                "Groebner step cap {cap} exceeded"
                            )));
                        }
                    }
                    let g = &self.elems[k];
                    let q = g.terms[0].mon.quotient_of(&t.mon).unwrap();
                    // basis elements are monic
                    let c = t.coef.clone();
                    let next = sub_mul(self.ring, self.order, &h[start + 1..], &g.terms[1..], &q, &c);
                    if let (Some(hc), Some(gc)) = (cof.as_mut(), g.cof.as_ref()) {
                        if !gc.is_empty() {
                            *hc = sub_mul(self.ring, &self.cof_order, hc, gc, &q, &c);
                        }
                    }
                    h = next;
                    start = 0;
                }
                None => {
                    if !full && done.is_empty() {
                        // top-reduced; keep tail as is
                        let mut out = h;
                        out.drain(..start);
                        return Ok((out, cof));
                    }
                    done.push(h[start].clone());
                    start += 1;
                }
            }
        }
        Ok((done, cof))
    }

    fn sugar_of(&self, v: &[MTerm<K>]) -> i64 {
        v.iter()
            .map(|t| self.order.tdeg(self.ring, t.pos, &t.mon))
            .max()
            .unwrap_or(0)
    }

    fn insert(&mut self, mut terms: ModVec<K>, mut cof: Option<ModVec<K>>, sugar: i64) -> usize {
        let inv = terms[0].coef.inv().unwrap();
        if !inv.is_one() {
            for t in terms.iter_mut() {
                t.coef = t.coef.mul(&inv);
            }
            if let Some(c) = cof.as_mut() {
                for t in c.iter_mut() {
                    t.coef = t.coef.mul(&inv);
                }
            }
        }
        let sev = terms[0].mon.sev();
        let idx = self.elems.len();
        self.elems.push(GbElem {
            terms,
            cof,
            sugar,
            sev,
        });
        self.active.push(true);
        self.update(idx);
        let pos = self.elems[idx].terms[0].pos as usize;
        self.by_pos[pos].push(idx);
        idx
    }

    /// Gebauer-Moeller update for a new basis element `h`.
    fn update(&mut self, h: usize) {
        let hl = self.elems[h].terms[0].clone();
        let hs = self.elems[h].sugar;
        let hdeg = self.ring.degree_of(&hl.mon) as i64;
        let mut cands: Vec<(usize, Monomial, bool)> = Vec::new();
        for &g in &self.by_pos[hl.pos as usize] {
            if !self.active[g] {
                continue;
            }
            let gl = &self.elems[g].terms[0];
            let lcm = hl.mon.lcm(&gl.mon);
            let disjoint = self.product_criterion && hl.mon.is_coprime(&gl.mon);
            cands.push((g, lcm, disjoint));
        }
        let mut keep = vec![false; cands.len()];
        let mut alive = vec![true; cands.len()];
        for a in 0..cands.len() {
            alive[a] = false;
            let (_, ref lcm_a, disjoint) = cands[a];
            let dominated = !disjoint
                && (0..cands.len()).any(|b| {
                    b != a && (alive[b] || keep[b]) && cands[b].1.divides(lcm_a)
                });
            if !dominated {
                keep[a] = true;
            }
        }
        // old pairs killed by the chain criterion through h
        let elems = &self.elems;
        self.pairs.retain(|p| {
            if p.pos != hl.pos || !hl.mon.divides(&p.lcm) {
                return true;
            }
            let l1 = hl.mon.lcm(&elems[p.i].terms[0].mon);
            let l2 = hl.mon.lcm(&elems[p.j].terms[0].mon);
            l1 == p.lcm || l2 == p.lcm
        });
        for (a, (g, lcm, disjoint)) in cands.into_iter().enumerate() {
            if !keep[a] || disjoint {
                continue;
            }
            let gl = &self.elems[g];
            let gdeg = self.ring.degree_of(&gl.terms[0].mon) as i64;
            let ldeg = self.ring.degree_of(&lcm) as i64;
            let sugar = (hs + ldeg - hdeg).max(gl.sugar + ldeg - gdeg);
            self.pairs.push(Pair {
                i: g,
                j: h,
                lcm,
                pos: hl.pos,
                sugar,
            });
        }
        // drop basis elements whose lead is a multiple of h's lead
        let pos = hl.pos as usize;
        let mut removed = Vec::new();
        for &g in &self.by_pos[pos] {
            if self.active[g] && hl.mon.divides(&self.elems[g].terms[0].mon) {
                removed.push(g);
            }
        }
        for g in removed {
            self.active[g] = false;
        }
        let active = &self.active;
        self.by_pos[pos].retain(|&g| active[g]);
    }

    fn spoly(&self, p: &Pair) -> (ModVec<K>, Option<ModVec<K>>) {
        let gi = &self.elems[p.i];
        let gj = &self.elems[p.j];
        let qi = gi.terms[0].mon.quotient_of(&p.lcm).unwrap();
        let qj = gj.terms[0].mon.quotient_of(&p.lcm).unwrap();
        let a = scale_vec(&gi.terms[1..], &qi, &K::one());
        let s = sub_mul(self.ring, self.order, &a, &gj.terms[1..], &qj, &K::one());
        let cof = match (&gi.cof, &gj.cof) {
            (Some(ci), Some(cj)) => {
                let a = scale_vec(ci, &qi, &K::one());
                Some(sub_mul(self.ring, &self.cof_order, &a, cj, &qj, &K::one()))
            }
            _ => None,
        };
        (s, cof)
    }

    fn finish_cof(&self, cof: Option<ModVec<K>>) -> Option<ModVec<K>> {
        cof.map(|c| self.quotient.reduce(self.ring, &self.cof_order, c))
    }

    /// Handles a reduced element: records a syzygy or inserts it.
    fn absorb(&mut self, h: ModVec<K>, cof: Option<ModVec<K>>, sugar: i64) -> Result<bool> {
        if h.is_empty() {
            if let Some(c) = self.finish_cof(cof) {
                if !c.is_empty() {
                    self.syzygies.push(c);
                }
            }
            return Ok(false);
        }
        let (h, cof) = self.reduce(h, cof, true)?;
        let cof = self.finish_cof(cof);
        self.insert(h, cof, sugar);
        Ok(true)
    }
}

/// Runs Buchberger's algorithm.
///
/// `quotient` holds a Groebner basis of the ideal being factored out; it is
/// used only to keep cofactors reduced, so relations `f * e_i` must also be
/// passed as inputs when the module itself lives over the quotient.
pub fn compute_gb<K: Field>(
    ring: &Arc<PolyRing>,
    order: ModuleOrder,
    inputs: Vec<GbInput<K>>,
    quotient: IdealReducers<K>,
    opts: &GbOptions,
) -> Result<ModuleGb<K>> {
    let rank = order.twists.len();
    let ntracked = inputs.iter().filter(|i| !i.relation).count();
    let cof_order = ModuleOrder::untwisted(ModuleOrderKind::PositionOverTerm, ntracked.max(1));
    for inp in &inputs {
        if inp.terms.iter().any(|t| t.pos as usize >= rank) {
            return Err(AlgebraError::DimensionMismatch(
                "input vector exceeds module rank".into(),
            ));
        }
    }
    let mut eng = Engine {
        ring,
        order: &order,
        cof_order: cof_order.clone(),
        quotient: &quotient,
        opts,
        elems: Vec::new(),
        active: Vec::new(),
        by_pos: vec![Vec::new(); rank],
        pairs: Vec::new(),
        product_criterion: rank == 1 && !opts.track,
        steps: 0,
        syzygies: Vec::new(),
    };

    // inputs: (sugar, relation-first, index)
    struct Pending<K> {
        sugar: i64,
        relation: bool,
        tracked_index: Option<usize>,
        terms: ModVec<K>,
    }
    let mut pending: Vec<Pending<K>> = Vec::new();
    let mut tracked = 0usize;
    for inp in inputs {
        let terms = order.canonicalize(ring, inp.terms);
        let tracked_index = if inp.relation {
            None
        } else {
            tracked += 1;
            Some(tracked - 1)
        };
        let sugar = eng.sugar_of(&terms);
        pending.push(Pending {
            sugar,
            relation: inp.relation,
            tracked_index,
            terms,
        });
    }
    pending.sort_by(|a, b| {
        a.sugar
            .cmp(&b.sugar)
            .then(b.relation.cmp(&a.relation))
            .then(a.tracked_index.cmp(&b.tracked_index))
    });
    let mut pending: std::collections::VecDeque<Pending<K>> = pending.into();
    let mut minimal_inputs = Vec::new();
    let mut complete = true;

    loop {
        let next_pair = eng.pairs.iter().map(|p| p.sugar).min();
        let next_input = pending.front().map(|p| p.sugar);
        let d = match (next_pair, next_input) {
            (None, None) => break,
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (Some(a), Some(b)) => a.min(b),
        };
        if let Some(cap) = opts.degree_cap {
            if d > cap {
                complete = false;
                break;
            }
        }
        // S-pairs of degree d first
        let mut batch: Vec<Pair> = Vec::new();
        let mut rest = Vec::with_capacity(eng.pairs.len());
        for p in eng.pairs.drain(..) {
            if p.sugar == d {
                batch.push(p);
            } else {
                rest.push(p);
            }
        }
        eng.pairs = rest;
        batch.sort_by(|a, b| {
            order
                .cmp(ring, a.pos, &a.lcm, b.pos, &b.lcm)
                .then(a.i.cmp(&b.i))
                .then(a.j.cmp(&b.j))
        });
        for p in batch {
            let (s, cof) = eng.spoly(&p);
            let (h, cof) = eng.reduce(s, cof, false)?;
            eng.absorb(h, cof, p.sugar)?;
        }
        // then inputs of degree d
        while pending.front().is_some_and(|p| p.sugar == d) {
            let inp = pending.pop_front().unwrap();
            let cof = if opts.track {
                Some(match inp.tracked_index {
                    Some(k) => vec![MTerm {
                        pos: k as u32,
                        mon: Monomial::one(ring.nvars()),
                        coef: K::one(),
                    }],
                    None => Vec::new(),
                })
            } else {
                None
            };
            let (h, cof) = eng.reduce(inp.terms, cof, false)?;
            let new = eng.absorb(h, cof, inp.sugar)?;
            if new {
                if let Some(k) = inp.tracked_index {
                    minimal_inputs.push(k);
                }
            }
        }
    }

    let mut result = ModuleGb {
        ring: ring.clone(),
        rank,
        order: order.clone(),
        ntracked,
        elems: Vec::new(),
        syzygies: std::mem::take(&mut eng.syzygies),
        minimal_inputs,
        complete,
        steps: eng.steps,
        quotient: quotient.clone(),
        cof_order,
    };

    let keep: Vec<usize> = (0..eng.elems.len()).filter(|&k| eng.active[k]).collect();
    if opts.skip_interreduce {
        result.elems = keep.iter().map(|&k| eng.elems[k].clone()).collect();
    } else {
        // tail-reduce each surviving element by the others
        let mut reduced = Vec::with_capacity(keep.len());
        for &k in &keep {
            let e = eng.elems[k].clone();
            // temporarily deactivate k so it does not reduce itself
            let pos = e.terms[0].pos as usize;
            eng.by_pos[pos].retain(|&g| g != k);
            let head = e.terms[0].clone();
            let (tail, cof) = eng.reduce(e.terms[1..].to_vec(), e.cof.clone(), true)?;
            eng.by_pos[pos].push(k);
            eng.by_pos[pos].sort_unstable();
            let mut terms = vec![head];
            terms.extend(tail);
            let cof = eng.finish_cof(cof);
            reduced.push(GbElem {
                sev: terms[0].mon.sev(),
                terms,
                cof,
                sugar: e.sugar,
            });
        }
        reduced.sort_by(|a, b| {
            let (x, y) = (&a.terms[0], &b.terms[0]);
            order.cmp(ring, x.pos, &x.mon, y.pos, &y.mon)
        });
        result.elems = reduced;
    }
    result.steps = eng.steps;
    Ok(result)
}

impl<K: Field> ModuleGb<K> {
    /// Reduces `v`; returns the normal form and, when the basis tracks
    /// cofactors, `c` with `v - normal_form = sum_k c_k * input_k` modulo
    /// the quotient ideal.
    pub fn reduce(&self, v: ModVec<K>) -> Result<(ModVec<K>, Option<ModVec<K>>)> {
        let v = self.order.canonicalize(&self.ring, v);
        let track = self.elems.iter().any(|e| e.cof.is_some()) || self.ntracked > 0 && self.elems.is_empty();
        let mut by_pos: Vec<Vec<usize>> = vec![Vec::new(); self.rank];
        for (k, e) in self.elems.iter().enumerate() {
            by_pos[e.terms[0].pos as usize].push(k);
        }
        let mut cof: Option<ModVec<K>> = if track { Some(Vec::new()) } else { None };
        let mut done: ModVec<K> = Vec::new();
        let mut h = v;
        let mut start = 0;
        while start < h.len() {
            let t = &h[start];
            let s = t.mon.sev();
            let found = by_pos[t.pos as usize].iter().copied().find(|&k| {
                let e = &self.elems[k];
                e.sev & !s == 0 && e.terms[0].mon.divides(&t.mon)
            });
            match found {
                Some(k) => {
                    let g = &self.elems[k];
                    let q = g.terms[0].mon.quotient_of(&t.mon).unwrap();
                    let c = t.coef.clone();
                    let next = sub_mul(&self.ring, &self.order, &h[start + 1..], &g.terms[1..], &q, &c);
                    if let (Some(hc), Some(gc)) = (cof.as_mut(), g.cof.as_ref()) {
                        // v - h accumulates + c*q*g
                        let neg = c.neg();
                        *hc = sub_mul(&self.ring, &self.cof_order, hc, gc, &q, &neg);
                    }
                    h = next;
                    start = 0;
                }
                None => {
                    done.push(h[start].clone());
                    start += 1;
                }
            }
        }
        let cof = cof.map(|c| self.quotient.reduce(&self.ring, &self.cof_order, c));
        Ok((done, cof))
    }

    /// Normal form only.
    pub fn normal_form(&self, v: ModVec<K>) -> Result<ModVec<K>> {
        Ok(self.reduce(v)?.0)
    }

    pub fn leads(&self) -> Vec<(u32, Monomial)> {
        self.elems
            .iter()
            .map(|e| (e.terms[0].pos, e.terms[0].mon.clone()))
            .collect()
    }

    /// Whether the basis tracks cofactors.
    pub fn tracks(&self) -> bool {
        self.elems.iter().any(|e| e.cof.is_some())
    }

    /// Re-checks Buchberger's criterion: every S-pair reduces to zero.
    pub fn verify_s_pairs(&self) -> Result<bool> {
        for a in 0..self.elems.len() {
            for b in a + 1..self.elems.len() {
                let (x, y) = (&self.elems[a], &self.elems[b]);
                if x.terms[0].pos != y.terms[0].pos {
                    continue;
                }
                let lcm = x.terms[0].mon.lcm(&y.terms[0].mon);
                let qa = x.terms[0].mon.quotient_of(&lcm).unwrap();
                let qb = y.terms[0].mon.quotient_of(&lcm).unwrap();
                let sa = scale_vec(&x.terms, &qa, &x.terms[0].coef.inv().unwrap());
                let s = sub_mul(
                    &self.ring,
                    &self.order,
                    &sa,
                    &y.terms,
                    &qb,
                    &y.terms[0].coef.inv().unwrap(),
                );
                if !self.normal_form(s)?.is_empty() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
