//! Random well-typed programs for property tests.
//!
//! Every generator is directed by the domain it must accept, so the
//! results type check by construction.

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::comb::Comb;
use crate::frac::{CombD, TyD, ValD};
use crate::pointed::{PtComb, PtTy};
use crate::prim::{Prim, PrimOp};
use crate::{Ty, Val};

#[derive(Clone, Copy, Debug)]
pub struct Limits {
    /// Largest cardinality of a generated base type.
    pub max_size: u64,
    /// Largest nesting of a generated type expression.
    pub max_ty_depth: usize,
    /// Largest combinator depth.
    pub max_depth: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_size: 8,
            max_ty_depth: 3,
            max_depth: 6,
        }
    }
}

fn ty_raw<R: Rng>(rng: &mut R, depth: usize) -> Ty {
    if depth == 0 || rng.random_bool(0.3) {
        return if rng.random_bool(0.15) {
            Ty::Zero
        } else {
            Ty::One
        };
    }
    let (a, b) = (ty_raw(rng, depth - 1), ty_raw(rng, depth - 1));
    if rng.random_bool(0.5) {
        Ty::sum(a, b)
    } else {
        Ty::prod(a, b)
    }
}

/// A finite type of cardinality at most `max_size`, with cardinalities
/// spread roughly evenly over that range.
pub fn ty<R: Rng>(rng: &mut R, lim: &Limits) -> Ty {
    let target = rng.random_range(0..=lim.max_size);
    let mut fallback = None;
    for _ in 0..200 {
        let t = ty_raw(rng, lim.max_ty_depth);
        if t.size() == target {
            return t;
        }
        if t.size() <= lim.max_size && fallback.is_none() {
            fallback = Some(t);
        }
    }
    match fallback {
        Some(t) => t,
        None => Ty::One,
    }
}

/// Like [`ty`] but never empty.
pub fn inhabited_ty<R: Rng>(rng: &mut R, lim: &Limits) -> Ty {
    loop {
        let t = ty(rng, lim);
        if t.size() > 0 {
            return t;
        }
    }
}

pub fn val_of<R: Rng>(rng: &mut R, t: &Ty) -> Option<Val> {
    t.enumerate().choose(rng).cloned()
}

fn vald_of<R: Rng>(rng: &mut R, t: &TyD) -> Option<ValD> {
    t.enumerate().choose(rng).cloned()
}

/// A type that may contain fractions `1/v` over small base types.
pub fn ty_d<R: Rng>(rng: &mut R, lim: &Limits) -> TyD {
    fn go<R: Rng>(rng: &mut R, lim: &Limits, depth: usize) -> TyD {
        if depth == 0 || rng.random_bool(0.3) {
            return match rng.random_range(0..10) {
                0 => TyD::Zero,
                1..=2 => {
                    let base = inhabited_ty(
                        rng,
                        &Limits {
                            max_ty_depth: 2,
                            ..*lim
                        },
                    );
                    let v = val_of(rng, &base).expect("inhabited");
                    TyD::frac(TyD::from(&base), ValD::from(&v))
                }
                _ => TyD::One,
            };
        }
        let (a, b) = (go(rng, lim, depth - 1), go(rng, lim, depth - 1));
        if rng.random_bool(0.5) {
            TyD::sum(a, b)
        } else {
            TyD::prod(a, b)
        }
    }
    loop {
        let t = go(rng, lim, lim.max_ty_depth);
        if t.size() <= lim.max_size {
            return t;
        }
    }
}

/// All primitives whose domain is `dom` (`factorzl` picks a random factor).
fn prims_at<R: Rng>(rng: &mut R, dom: &TyD, lim: &Limits) -> Vec<Prim<TyD>> {
    let mut out: Vec<Prim<TyD>> = PrimOp::ALL
        .iter()
        .filter(|op| **op != PrimOp::Factorzl)
        .filter_map(|op| Prim::instantiate(*op, dom))
        .filter(|p| p.dom() == *dom)
        .collect();
    if *dom == TyD::Zero {
        out.push(Prim::Factorzl(TyD::from(&ty(rng, lim))));
    }
    out
}

struct CombGen<'a> {
    lim: &'a Limits,
    fractions: bool,
}

impl CombGen<'_> {
    fn gen<R: Rng>(&self, rng: &mut R, dom: &TyD, depth: usize) -> CombD {
        let mut kinds: Vec<u8> = vec![0];
        if depth > 0 {
            kinds.extend([1, 1]);
            match dom {
                TyD::Sum(..) => kinds.extend([2, 2]),
                TyD::Prod(..) => kinds.extend([3, 3]),
                _ => {}
            }
            if self.fractions {
                kinds.push(4);
            }
        }
        if self.fractions {
            if *dom == TyD::One {
                kinds.push(5);
            }
            if let TyD::Prod(t, f) = dom {
                if matches!(&**f, TyD::Frac(base, _) if base == t) {
                    kinds.extend([6, 6]);
                }
            }
        }
        match *kinds.choose(rng).expect("nonempty") {
            0 => {
                let ps = prims_at(rng, dom, self.lim);
                CombD::Prim(ps.choose(rng).expect("id always applies").clone())
            }
            1 => {
                let a = self.gen(rng, dom, depth - 1);
                let mid = a.infer().expect("generated programs type check").1;
                a.seq(self.gen(rng, &mid, depth - 1))
            }
            2 => {
                let TyD::Sum(a, b) = dom else { unreachable!() };
                self.gen(rng, a, depth - 1)
                    .plus(self.gen(rng, b, depth - 1))
            }
            3 => {
                let TyD::Prod(a, b) = dom else { unreachable!() };
                self.gen(rng, a, depth - 1)
                    .times(self.gen(rng, b, depth - 1))
            }
            4 => self.sandwich(rng, dom, depth),
            5 => {
                let t = TyD::from(&inhabited_ty(rng, self.lim));
                let v = vald_of(rng, &t).expect("inhabited");
                CombD::Eta(v, t)
            }
            _ => {
                let TyD::Prod(t, f) = dom else { unreachable!() };
                let TyD::Frac(_, v) = &**f else {
                    unreachable!()
                };
                CombD::Eps((**v).clone(), (**t).clone())
            }
        }
    }

    /// `uniti ⨾ (η ⊗ id) ⨾ ((f ⊗ id) ⊗ g) ⨾ (ε ⊗ id) ⨾ unite`: an ancilla is
    /// allocated, transformed by `f`, and collected. It throws whenever `f`
    /// moves the ancilla.
    fn sandwich<R: Rng>(&self, rng: &mut R, dom: &TyD, depth: usize) -> CombD {
        let base = inhabited_ty(
            rng,
            &Limits {
                max_ty_depth: 2,
                ..*self.lim
            },
        );
        let t = TyD::from(&base);
        let v = vald_of(rng, &t).expect("inhabited");
        let frac = TyD::frac(t.clone(), v.clone());
        let h = self.gen(rng, &t, depth.saturating_sub(2));
        let mid = h.infer().expect("typed").1;
        let f = h.clone().seq(endo(rng, &mid)).seq(h.invert());
        let g = self.gen(rng, dom, depth.saturating_sub(2));
        let g_cod = g.infer().expect("typed").1;
        CombD::seq_all([
            CombD::Prim(Prim::UnitiTimesL(dom.clone())),
            CombD::Eta(v.clone(), t.clone()).times(CombD::id(dom.clone())),
            f.times(CombD::id(frac)).times(g),
            CombD::Eps(v, t).times(CombD::id(g_cod.clone())),
            CombD::Prim(Prim::UniteTimesL(g_cod)),
        ])
    }
}

/// A random permutation of `t` onto itself built from swaps of equal
/// summands and factors.
fn endo<R: Rng>(rng: &mut R, t: &TyD) -> CombD {
    let swap = rng.random_bool(0.5);
    match t {
        TyD::Sum(a, b) if a == b && swap => {
            CombD::Prim(Prim::SwapPlus((**a).clone(), (**b).clone()))
        }
        TyD::Prod(a, b) if a == b && swap => {
            CombD::Prim(Prim::SwapTimes((**a).clone(), (**b).clone()))
        }
        TyD::Sum(a, b) => endo(rng, a).plus(endo(rng, b)),
        TyD::Prod(a, b) => endo(rng, a).times(endo(rng, b)),
        _ => CombD::id(t.clone()),
    }
}

/// A core program of depth at most `lim.max_depth` on the given domain.
pub fn comb_at<R: Rng>(rng: &mut R, dom: &Ty, lim: &Limits) -> Comb {
    let g = CombGen {
        lim,
        fractions: false,
    };
    let depth = rng.random_range(0..=lim.max_depth);
    g.gen(rng, &TyD::from(dom), depth)
        .to_core()
        .expect("no fractions generated")
}

/// A core program together with its random domain.
pub fn comb<R: Rng>(rng: &mut R, lim: &Limits) -> Comb {
    let dom = ty(rng, lim);
    comb_at(rng, &dom, lim)
}

/// A fractional program: any of the core forms plus `η`, `ε` and ancilla
/// sandwiches, over domains that may contain fractions.
pub fn comb_d<R: Rng>(rng: &mut R, lim: &Limits) -> CombD {
    let g = CombGen {
        lim,
        fractions: true,
    };
    let dom = if rng.random_bool(0.7) {
        TyD::from(&ty(rng, lim))
    } else {
        ty_d(rng, lim)
    };
    let depth = rng.random_range(0..=lim.max_depth);
    g.gen(rng, &dom, depth)
}

/// A random pointed type: pointed base types combined with products,
/// singletons and reciprocals.
pub fn pt_ty<R: Rng>(rng: &mut R, lim: &Limits) -> PtTy {
    fn go<R: Rng>(rng: &mut R, lim: &Limits, depth: usize) -> PtTy {
        let k = if depth == 0 {
            0
        } else {
            rng.random_range(0..6)
        };
        match k {
            0..=2 => {
                let t = inhabited_ty(
                    rng,
                    &Limits {
                        max_ty_depth: 2,
                        ..*lim
                    },
                );
                let v = val_of(rng, &t).expect("inhabited");
                PtTy::Pt(t, v)
            }
            3 => PtTy::prod(go(rng, lim, depth - 1), go(rng, lim, depth - 1)),
            4 => PtTy::sing(go(rng, lim, depth - 1)),
            _ => PtTy::recip(go(rng, lim, depth - 1)),
        }
    }
    go(rng, lim, 2)
}

fn ok(c: Result<PtComb, crate::pointed::PtError>) -> PtComb {
    c.expect("shape-directed construction")
}

/// Pointed programs, built by choosing at each step only combinators whose
/// domain (including its focus) matches.
pub struct PtGen<'a> {
    pub lim: &'a Limits,
}

impl PtGen<'_> {
    pub fn gen<R: Rng>(&self, rng: &mut R, dom: &PtTy, depth: usize) -> PtComb {
        let mut options: Vec<u8> = vec![0, 1, 2];
        if depth > 0 {
            options.extend([3, 3, 4]);
        }
        match dom {
            PtTy::Pt(t, _) => {
                options.extend([10, 10]);
                if matches!(t, Ty::Prod(..)) {
                    options.push(11);
                }
                if *dom == PtTy::unit() {
                    options.extend([12, 12]);
                }
            }
            PtTy::Prod(a, b) => {
                if depth > 0 {
                    options.extend([20, 20]);
                }
                options.push(21);
                if matches!(**b, PtTy::Prod(..)) {
                    options.push(22);
                }
                if matches!(**a, PtTy::Prod(..)) {
                    options.push(23);
                }
                if **a == PtTy::unit() {
                    options.push(24);
                }
                if matches!((&**a, &**b), (PtTy::Pt(..), PtTy::Pt(..))) {
                    options.push(25);
                }
                if matches!((&**a, &**b), (PtTy::Sing(_), PtTy::Sing(_))) {
                    options.push(26);
                }
                if let (PtTy::Sing(x), PtTy::Recip(y)) = (&**a, &**b) {
                    if x == y {
                        options.extend([27, 27, 27]);
                    }
                }
            }
            PtTy::Sing(t) => {
                options.extend([30, 31]);
                if depth > 0 {
                    options.extend([32, 32]);
                }
                if matches!(**t, PtTy::Sing(_)) {
                    options.push(33);
                }
                if matches!(**t, PtTy::Prod(..)) {
                    options.push(34);
                }
            }
            PtTy::Recip(_) => {}
        }
        let d = depth.saturating_sub(1);
        let prod = || match dom {
            PtTy::Prod(a, b) => ((**a).clone(), (**b).clone()),
            _ => unreachable!(),
        };
        let inner = || match dom {
            PtTy::Sing(t) => (**t).clone(),
            _ => unreachable!(),
        };
        let unsing = |t: &PtTy| match t {
            PtTy::Sing(t) => (**t).clone(),
            _ => unreachable!(),
        };
        match *options.choose(rng).expect("nonempty") {
            0 => ok(PtComb::id(dom.clone())),
            1 => ok(PtComb::ret(dom.clone())),
            2 => ok(PtComb::uniti_times_l(dom.clone())),
            3 => {
                let a = self.gen(rng, dom, d);
                let b = self.gen(rng, a.cod(), d);
                ok(a.seq(b))
            }
            4 => self.sandwich(rng, dom, d),
            10 => {
                let PtTy::Pt(t, v) = dom else { unreachable!() };
                let c = comb_at(
                    rng,
                    t,
                    &Limits {
                        max_depth: d.min(self.lim.max_depth),
                        ..*self.lim
                    },
                );
                ok(PtComb::lift(&c, v.clone()))
            }
            11 => ok(PtComb::split(dom.clone())),
            12 => ok(PtComb::eta(pt_ty(rng, self.lim))),
            20 => {
                let (a, b) = prod();
                self.gen(rng, &a, d).times(self.gen(rng, &b, d))
            }
            21 => {
                let (a, b) = prod();
                ok(PtComb::swap_times(a, b))
            }
            22 => {
                let (a, bc) = prod();
                let PtTy::Prod(b, c) = bc else { unreachable!() };
                ok(PtComb::assocl_times(a, *b, *c))
            }
            23 => {
                let (ab, c) = prod();
                let PtTy::Prod(a, b) = ab else { unreachable!() };
                ok(PtComb::assocr_times(*a, *b, c))
            }
            24 => ok(PtComb::unite_times_l(prod().1)),
            25 => ok(PtComb::merge(dom.clone())),
            26 => {
                let (a, b) = prod();
                ok(PtComb::tensor_sing(unsing(&a), unsing(&b)))
            }
            27 => ok(PtComb::eps(unsing(&prod().0))),
            30 => ok(PtComb::extract(inner())),
            31 => ok(PtComb::duplicate_sing(inner())),
            32 => PtComb::sing_map(self.gen(rng, &inner(), d)),
            33 => ok(PtComb::join_sing(unsing(&inner()))),
            _ => {
                let PtTy::Prod(a, b) = inner() else {
                    unreachable!()
                };
                ok(PtComb::cotensor_sing(*a, *b))
            }
        }
    }

    /// `uniti ⨾ (η ⊗ id) ⨾ ((⦇f⦈ ⊗ id) ⊗ g) ⨾ ((⦇f⁻¹⦈ ⊗ id) ⊗ id) ⨾ (ε ⊗ id) ⨾ unite`
    fn sandwich<R: Rng>(&self, rng: &mut R, dom: &PtTy, d: usize) -> PtComb {
        let s = pt_ty(rng, self.lim);
        let f = self.gen(rng, &s, d);
        let g = self.gen(rng, dom, d);
        let recip = PtTy::recip(s.clone());
        let cod = g.cod().clone();
        ok(PtComb::seq_all([
            ok(PtComb::uniti_times_l(dom.clone())),
            ok(PtComb::eta(s.clone())).times(ok(PtComb::id(dom.clone()))),
            PtComb::sing_map(f.clone())
                .times(ok(PtComb::id(recip.clone())))
                .times(g),
            PtComb::sing_map(f.invert())
                .times(ok(PtComb::id(recip)))
                .times(ok(PtComb::id(cod.clone()))),
            ok(PtComb::eps(s)).times(ok(PtComb::id(cod.clone()))),
            ok(PtComb::unite_times_l(cod)),
        ]))
    }
}

/// A pointed program on a random domain.
pub fn pt_comb<R: Rng>(rng: &mut R, lim: &Limits) -> PtComb {
    let dom = pt_ty(rng, lim);
    let depth = rng.random_range(0..=lim.max_depth);
    PtGen { lim }.gen(rng, &dom, depth)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn core_programs_respect_limits() {
        let mut rng = StdRng::seed_from_u64(1);
        let lim = Limits::default();
        for _ in 0..2000 {
            let c = comb(&mut rng, &lim);
            let (dom, _) = c.infer().unwrap();
            assert!(dom.size() <= lim.max_size);
            assert!(c.depth() <= lim.max_depth);
        }
    }

    #[test]
    fn fractional_programs_type_check() {
        let mut rng = StdRng::seed_from_u64(2);
        let lim = Limits::default();
        let mut with_fractions = 0;
        for _ in 0..2000 {
            let c = comb_d(&mut rng, &lim);
            c.infer().unwrap();
            with_fractions += c.has_fraction() as usize;
        }
        assert!(with_fractions > 200, "{with_fractions}");
    }

    #[test]
    fn pointed_programs_cover_allocation() {
        let mut rng = StdRng::seed_from_u64(3);
        let lim = Limits::default();
        let mut allocating = 0;
        for _ in 0..2000 {
            let c = pt_comb(&mut rng, &lim);
            c.dom().check().unwrap();
            allocating += c.allocates() as usize;
        }
        assert!(allocating > 200, "{allocating}");
    }
}
