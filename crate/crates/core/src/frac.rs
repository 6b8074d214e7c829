//! Fractional types with a dynamically checked deallocation.
//!
//! `1/v` is the type of a process that collects exactly the value `v`. At
//! runtime such a process is the trivial token [`ValD::Gc`]. `η` allocates a
//! value together with its collector, `ε` runs the collector. Nothing tracks
//! the allocated value in between, so `ε` compares what it receives with
//! what it expects and raises an exception (an absent result) on mismatch.

use std::fmt;

use thiserror::Error;

use crate::comb::{cnot, Comb, Path};
use crate::prim::{Prim, TyView, TypeRepr, ValView, ValueRepr};
use crate::route::{route_or_id, Layout};
use crate::{Ty, Val};

/// Types extended with fractions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TyD {
    Zero,
    One,
    Sum(Box<TyD>, Box<TyD>),
    Prod(Box<TyD>, Box<TyD>),
    /// `1/v` for a value `v` of the base type.
    Frac(Box<TyD>, Box<ValD>),
}

/// Values extended with the collector token `↻`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ValD {
    Unit,
    Inl(Box<ValD>),
    Inr(Box<ValD>),
    Pair(Box<ValD>, Box<ValD>),
    Gc,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum TypeErrorD {
    #[error("type mismatch at {at}: expected {expected}, found {found}")]
    Mismatch { at: Path, expected: TyD, found: TyD },
    #[error("{value} is not a value of {ty} (at {at})")]
    NotInhabitant { at: Path, value: ValD, ty: TyD },
}

impl TypeErrorD {
    pub fn path(&self) -> &Path {
        match self {
            TypeErrorD::Mismatch { at, .. } | TypeErrorD::NotInhabitant { at, .. } => at,
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum EvalErrorD {
    #[error(transparent)]
    Program(#[from] TypeErrorD),
    #[error("ill-typed input: {value} is not a value of {ty}")]
    IllTyped { value: ValD, ty: TyD },
}

impl TyD {
    pub fn sum(a: TyD, b: TyD) -> TyD {
        TyD::Sum(Box::new(a), Box::new(b))
    }

    pub fn prod(a: TyD, b: TyD) -> TyD {
        TyD::Prod(Box::new(a), Box::new(b))
    }

    pub fn frac(base: TyD, v: ValD) -> TyD {
        TyD::Frac(Box::new(base), Box::new(v))
    }

    pub fn bool() -> TyD {
        TyD::from(&Ty::bool())
    }

    /// Checks every fraction `1/v` inside the type: `v` must inhabit the base.
    pub fn well_formed(&self) -> Result<(), (ValD, TyD)> {
        match self {
            TyD::Zero | TyD::One => Ok(()),
            TyD::Sum(a, b) | TyD::Prod(a, b) => {
                a.well_formed()?;
                b.well_formed()
            }
            TyD::Frac(base, v) => {
                base.well_formed()?;
                if v.has_type(base) {
                    Ok(())
                } else {
                    Err(((**v).clone(), (**base).clone()))
                }
            }
        }
    }

    /// Number of runtime values; a fraction has exactly one (the token).
    pub fn size(&self) -> u64 {
        match self {
            TyD::Zero => 0,
            TyD::One | TyD::Frac(..) => 1,
            TyD::Sum(a, b) => a.size() + b.size(),
            TyD::Prod(a, b) => a.size() * b.size(),
        }
    }

    /// Runtime values in the canonical order (see [`Ty::enumerate`]).
    pub fn enumerate(&self) -> Vec<ValD> {
        match self {
            TyD::Zero => Vec::new(),
            TyD::One => vec![ValD::Unit],
            TyD::Frac(..) => vec![ValD::Gc],
            TyD::Sum(a, b) => a
                .enumerate()
                .into_iter()
                .map(ValD::inl)
                .chain(b.enumerate().into_iter().map(ValD::inr))
                .collect(),
            TyD::Prod(a, b) => {
                let rights = b.enumerate();
                let mut out = Vec::new();
                for l in a.enumerate() {
                    for r in &rights {
                        out.push(ValD::pair(l.clone(), r.clone()));
                    }
                }
                out
            }
        }
    }

    pub fn has_fraction(&self) -> bool {
        match self {
            TyD::Zero | TyD::One => false,
            TyD::Frac(..) => true,
            TyD::Sum(a, b) | TyD::Prod(a, b) => a.has_fraction() || b.has_fraction(),
        }
    }

    /// The core type, if no fraction occurs.
    pub fn to_core(&self) -> Option<Ty> {
        Some(match self {
            TyD::Zero => Ty::Zero,
            TyD::One => Ty::One,
            TyD::Sum(a, b) => Ty::sum(a.to_core()?, b.to_core()?),
            TyD::Prod(a, b) => Ty::prod(a.to_core()?, b.to_core()?),
            TyD::Frac(..) => return None,
        })
    }
}

impl ValD {
    pub fn inl(v: ValD) -> ValD {
        ValD::Inl(Box::new(v))
    }

    pub fn inr(v: ValD) -> ValD {
        ValD::Inr(Box::new(v))
    }

    pub fn pair(a: ValD, b: ValD) -> ValD {
        ValD::Pair(Box::new(a), Box::new(b))
    }

    pub fn ff() -> ValD {
        ValD::from(&Val::ff())
    }

    pub fn tt() -> ValD {
        ValD::from(&Val::tt())
    }

    pub fn has_type(&self, ty: &TyD) -> bool {
        match (self, ty) {
            (ValD::Unit, TyD::One) => true,
            (ValD::Inl(v), TyD::Sum(a, _)) => v.has_type(a),
            (ValD::Inr(v), TyD::Sum(_, b)) => v.has_type(b),
            (ValD::Pair(x, y), TyD::Prod(a, b)) => x.has_type(a) && y.has_type(b),
            (ValD::Gc, TyD::Frac(..)) => true,
            _ => false,
        }
    }

    /// The core value, if no token occurs.
    pub fn to_core(&self) -> Option<Val> {
        Some(match self {
            ValD::Unit => Val::Unit,
            ValD::Inl(v) => Val::inl(v.to_core()?),
            ValD::Inr(v) => Val::inr(v.to_core()?),
            ValD::Pair(a, b) => Val::pair(a.to_core()?, b.to_core()?),
            ValD::Gc => return None,
        })
    }
}

impl From<&Ty> for TyD {
    fn from(t: &Ty) -> Self {
        match t {
            Ty::Zero => TyD::Zero,
            Ty::One => TyD::One,
            Ty::Sum(a, b) => TyD::sum(TyD::from(&**a), TyD::from(&**b)),
            Ty::Prod(a, b) => TyD::prod(TyD::from(&**a), TyD::from(&**b)),
        }
    }
}

impl From<&Val> for ValD {
    fn from(v: &Val) -> Self {
        match v {
            Val::Unit => ValD::Unit,
            Val::Inl(x) => ValD::inl(ValD::from(&**x)),
            Val::Inr(x) => ValD::inr(ValD::from(&**x)),
            Val::Pair(a, b) => ValD::pair(ValD::from(&**a), ValD::from(&**b)),
        }
    }
}

impl TypeRepr for TyD {
    fn zero() -> Self {
        TyD::Zero
    }
    fn one() -> Self {
        TyD::One
    }
    fn sum(a: Self, b: Self) -> Self {
        TyD::sum(a, b)
    }
    fn prod(a: Self, b: Self) -> Self {
        TyD::prod(a, b)
    }
    fn view(&self) -> TyView<'_, Self> {
        match self {
            TyD::Zero => TyView::Zero,
            TyD::One => TyView::One,
            TyD::Sum(a, b) => TyView::Sum(a, b),
            TyD::Prod(a, b) => TyView::Prod(a, b),
            TyD::Frac(..) => TyView::Other,
        }
    }
}

impl ValueRepr for ValD {
    fn unit() -> Self {
        ValD::Unit
    }
    fn inl(v: Self) -> Self {
        ValD::inl(v)
    }
    fn inr(v: Self) -> Self {
        ValD::inr(v)
    }
    fn pair(a: Self, b: Self) -> Self {
        ValD::pair(a, b)
    }
    fn view(&self) -> ValView<'_, Self> {
        match self {
            ValD::Unit => ValView::Unit,
            ValD::Inl(v) => ValView::Inl(v),
            ValD::Inr(v) => ValView::Inr(v),
            ValD::Pair(a, b) => ValView::Pair(a, b),
            ValD::Gc => ValView::Other,
        }
    }
}

/// Combinators of the fractional language.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CombD {
    Prim(Prim<TyD>),
    Seq(Box<CombD>, Box<CombD>),
    Plus(Box<CombD>, Box<CombD>),
    Times(Box<CombD>, Box<CombD>),
    /// `η_{v:t} : 1 ↔ t × 1/v`
    Eta(ValD, TyD),
    /// `ε_{v:t} : t × 1/v ↔ 1`
    Eps(ValD, TyD),
}

impl From<&Comb> for CombD {
    fn from(c: &Comb) -> Self {
        match c {
            Comb::Prim(p) => CombD::Prim(p.map(|t| TyD::from(t))),
            Comb::Seq(a, b) => CombD::from(&**a).seq(CombD::from(&**b)),
            Comb::Plus(a, b) => CombD::from(&**a).plus(CombD::from(&**b)),
            Comb::Times(a, b) => CombD::from(&**a).times(CombD::from(&**b)),
        }
    }
}

/// Called at every `ε` with the expected and the received value.
pub type EpsObserver<'a> = &'a mut dyn FnMut(&ValD, &ValD);

impl CombD {
    pub fn id(t: TyD) -> CombD {
        CombD::Prim(Prim::Id(t))
    }

    pub fn seq(self, next: CombD) -> CombD {
        CombD::Seq(Box::new(self), Box::new(next))
    }

    pub fn plus(self, other: CombD) -> CombD {
        CombD::Plus(Box::new(self), Box::new(other))
    }

    pub fn times(self, other: CombD) -> CombD {
        CombD::Times(Box::new(self), Box::new(other))
    }

    pub fn seq_all(steps: impl IntoIterator<Item = CombD>) -> CombD {
        let mut it = steps.into_iter();
        let first = it.next().expect("empty sequence");
        it.fold(first, CombD::seq)
    }

    pub fn infer(&self) -> Result<(TyD, TyD), TypeErrorD> {
        self.infer_at(&Path::root())
    }

    fn infer_at(&self, at: &Path) -> Result<(TyD, TyD), TypeErrorD> {
        let wf = |t: &TyD| {
            t.well_formed()
                .map_err(|(value, ty)| TypeErrorD::NotInhabitant {
                    at: at.clone(),
                    value,
                    ty,
                })
        };
        match self {
            CombD::Prim(p) => {
                for t in p.type_args() {
                    wf(t)?;
                }
                Ok(p.dom_cod())
            }
            CombD::Eta(v, t) | CombD::Eps(v, t) => {
                wf(t)?;
                if !v.has_type(t) {
                    return Err(TypeErrorD::NotInhabitant {
                        at: at.clone(),
                        value: v.clone(),
                        ty: t.clone(),
                    });
                }
                let pair = TyD::prod(t.clone(), TyD::frac(t.clone(), v.clone()));
                Ok(match self {
                    CombD::Eta(..) => (TyD::One, pair),
                    _ => (pair, TyD::One),
                })
            }
            CombD::Seq(a, b) => {
                let (d1, c1) = a.infer_at(&at.child(0))?;
                let (d2, c2) = b.infer_at(&at.child(1))?;
                if c1 != d2 {
                    return Err(TypeErrorD::Mismatch {
                        at: at.clone(),
                        expected: c1,
                        found: d2,
                    });
                }
                Ok((d1, c2))
            }
            CombD::Plus(a, b) => {
                let (d1, c1) = a.infer_at(&at.child(0))?;
                let (d2, c2) = b.infer_at(&at.child(1))?;
                Ok((TyD::sum(d1, d2), TyD::sum(c1, c2)))
            }
            CombD::Times(a, b) => {
                let (d1, c1) = a.infer_at(&at.child(0))?;
                let (d2, c2) = b.infer_at(&at.child(1))?;
                Ok((TyD::prod(d1, d2), TyD::prod(c1, c2)))
            }
        }
    }

    /// Runs the program. `Ok(None)` is the deallocation exception.
    pub fn eval(&self, v: &ValD) -> Result<Option<ValD>, EvalErrorD> {
        self.eval_observed(v, &mut |_, _| {})
    }

    /// [`CombD::eval`], reporting every `ε` site reached.
    pub fn eval_observed(
        &self,
        v: &ValD,
        observe: EpsObserver<'_>,
    ) -> Result<Option<ValD>, EvalErrorD> {
        let (dom, _) = self.infer()?;
        if !v.has_type(&dom) {
            return Err(EvalErrorD::IllTyped {
                value: v.clone(),
                ty: dom,
            });
        }
        Ok(self
            .run(v, observe)
            .expect("well-typed input to a well-typed combinator"))
    }

    /// `Err(())` when a value has the wrong shape; `Ok(None)` on exception.
    fn run(&self, v: &ValD, observe: &mut dyn FnMut(&ValD, &ValD)) -> Result<Option<ValD>, ()> {
        match self {
            CombD::Prim(p) => p.apply(v).map(Some).ok_or(()),
            CombD::Eta(x, _) => match v {
                ValD::Unit => Ok(Some(ValD::pair(x.clone(), ValD::Gc))),
                _ => Err(()),
            },
            CombD::Eps(x, _) => match v {
                ValD::Pair(got, gc) if **gc == ValD::Gc => {
                    observe(x, got);
                    Ok((**got == *x).then_some(ValD::Unit))
                }
                _ => Err(()),
            },
            CombD::Seq(a, b) => match a.run(v, observe)? {
                Some(mid) => b.run(&mid, observe),
                None => Ok(None),
            },
            CombD::Plus(a, b) => match v {
                ValD::Inl(x) => Ok(a.run(x, observe)?.map(ValD::inl)),
                ValD::Inr(x) => Ok(b.run(x, observe)?.map(ValD::inr)),
                _ => Err(()),
            },
            CombD::Times(a, b) => match v {
                ValD::Pair(x, y) => {
                    let l = a.run(x, observe)?;
                    let r = b.run(y, observe)?;
                    Ok(l.zip(r).map(|(l, r)| ValD::pair(l, r)))
                }
                _ => Err(()),
            },
        }
    }

    /// Every input of the domain, in enumeration order, with its output.
    pub fn truth_table(&self) -> Result<Vec<(ValD, Option<ValD>)>, TypeErrorD> {
        let (dom, _) = self.infer()?;
        Ok(dom
            .enumerate()
            .into_iter()
            .map(|v| {
                let out = self
                    .run(&v, &mut |_, _| {})
                    .expect("enumerated inputs are well typed");
                (v, out)
            })
            .collect())
    }

    pub fn invert(&self) -> CombD {
        match self {
            CombD::Prim(p) => CombD::Prim(p.invert()),
            CombD::Eta(v, t) => CombD::Eps(v.clone(), t.clone()),
            CombD::Eps(v, t) => CombD::Eta(v.clone(), t.clone()),
            CombD::Seq(a, b) => b.invert().seq(a.invert()),
            CombD::Plus(a, b) => a.invert().plus(b.invert()),
            CombD::Times(a, b) => a.invert().times(b.invert()),
        }
    }

    pub fn has_fraction(&self) -> bool {
        match self {
            CombD::Prim(p) => p.type_args().into_iter().any(TyD::has_fraction),
            CombD::Eta(..) | CombD::Eps(..) => true,
            CombD::Seq(a, b) | CombD::Plus(a, b) | CombD::Times(a, b) => {
                a.has_fraction() || b.has_fraction()
            }
        }
    }

    /// The core program, if no fraction occurs.
    pub fn to_core(&self) -> Option<Comb> {
        Some(match self {
            CombD::Prim(p) => {
                let args: Option<Vec<Ty>> = p.type_args().into_iter().map(TyD::to_core).collect();
                let mut args = args?.into_iter();
                Comb::Prim(p.map(|_| args.next().expect("one core type per argument")))
            }
            CombD::Eta(..) | CombD::Eps(..) => return None,
            CombD::Seq(a, b) => a.to_core()?.seq(b.to_core()?),
            CombD::Plus(a, b) => a.to_core()?.plus(b.to_core()?),
            CombD::Times(a, b) => a.to_core()?.times(b.to_core()?),
        })
    }

    pub fn node_count(&self) -> usize {
        match self {
            CombD::Prim(_) | CombD::Eta(..) | CombD::Eps(..) => 1,
            CombD::Seq(a, b) | CombD::Plus(a, b) | CombD::Times(a, b) => {
                1 + a.node_count() + b.node_count()
            }
        }
    }
}

fn prim(p: Prim<TyD>) -> CombD {
    CombD::Prim(p)
}

/// `𝔹 ↔ 𝔹`: allocates an ancilla `𝔽`, hands it to the output, and collects
/// the input in its place. Returns normally exactly when the input is `𝔽`.
pub fn reclaim_input() -> CombD {
    let b = TyD::bool;
    let gc = || TyD::frac(b(), ValD::ff());
    CombD::seq_all([
        prim(Prim::UnitiTimesL(b())),
        CombD::Eta(ValD::ff(), b()).times(CombD::id(b())),
        prim(Prim::AssocrTimes(b(), gc(), b())),
        CombD::id(b()).times(prim(Prim::SwapTimes(gc(), b()))),
        CombD::id(b()).times(CombD::Eps(ValD::ff(), b())),
        prim(Prim::SwapTimes(b(), TyD::One)),
        prim(Prim::UniteTimesL(b())),
    ])
}

/// `𝔹 ↔ 𝔹`, extensionally the identity, routed through an ancilla.
///
/// The ancilla `𝔽` and its collector are allocated first. Two CNOTs move the
/// input onto the ancilla and clear the input wire; the ancilla wire becomes
/// the output and the cleared input wire is collected.
pub fn id_via_ancilla() -> CombD {
    let b = TyD::bool;
    let gc = || TyD::frac(b(), ValD::ff());
    let cnot = CombD::from(&cnot());
    // (a, x) ↦ (x, a ⊕ x) ↦ (a ⊕ x, x) ↦ (a ⊕ x, a) with a = 𝔽
    let exchange = CombD::seq_all([
        prim(Prim::SwapTimes(b(), b())),
        cnot.clone(),
        prim(Prim::SwapTimes(b(), b())),
        cnot,
    ]);
    CombD::seq_all([
        // allocate: x ↦ ((𝔽, ↻), x)
        prim(Prim::UnitiTimesL(b())),
        CombD::Eta(ValD::ff(), b()).times(CombD::id(b())),
        // interact and redirect: ↦ ((x, 𝔽), ↻)
        prim(Prim::AssocrTimes(b(), gc(), b())),
        CombD::id(b()).times(prim(Prim::SwapTimes(gc(), b()))),
        prim(Prim::AssoclTimes(b(), b(), gc())).seq(exchange.times(CombD::id(gc()))),
        // collect the cleared input wire: ↦ x
        prim(Prim::AssocrTimes(b(), b(), gc()))
            .seq(CombD::id(b()).times(CombD::Eps(ValD::ff(), b()))),
        prim(Prim::SwapTimes(b(), TyD::One)).seq(prim(Prim::UniteTimesL(b()))),
    ])
}

/// `1/(v₁,v₂) ↔ 1/v₁ × 1/v₂`: splits a collector for a pair into collectors
/// for its components.
///
/// Both components are allocated with `η`, then the pair of fresh values is
/// collected by the incoming pair collector; the two new collectors remain.
pub fn revx(v1: &ValD, t1: &TyD, v2: &ValD, t2: &TyD) -> CombD {
    let pair_ty = TyD::prod(t1.clone(), t2.clone());
    let pair_val = ValD::pair(v1.clone(), v2.clone());
    let g12 = TyD::frac(pair_ty.clone(), pair_val.clone());
    let g1 = TyD::frac(t1.clone(), v1.clone());
    let g2 = TyD::frac(t2.clone(), v2.clone());
    let eta1 = TyD::prod(t1.clone(), g1.clone());

    // wires: 0 = v2, 1 = ↻v2, 2 = v1, 3 = ↻v1, 4 = ↻(v1,v2)
    let objs = vec![t2.clone(), g2.clone(), t1.clone(), g1.clone(), g12.clone()];
    let w = Layout::Wire;
    let from = Layout::pair(
        Layout::pair(w(0), w(1)),
        Layout::pair(Layout::pair(w(2), w(3)), w(4)),
    );
    let to = Layout::pair(
        Layout::pair(Layout::pair(w(2), w(0)), w(4)),
        Layout::pair(w(3), w(1)),
    );
    let shuffle: CombD = route_or_id(&from, &to, &objs).unwrap_or_else(|e| match e {});

    CombD::seq_all([
        prim(Prim::UnitiTimesL(g12.clone())),
        CombD::Eta(v1.clone(), t1.clone()).times(CombD::id(g12.clone())),
        prim(Prim::UnitiTimesL(TyD::prod(eta1.clone(), g12.clone()))),
        CombD::Eta(v2.clone(), t2.clone()).times(CombD::id(TyD::prod(eta1, g12))),
        shuffle,
        CombD::Eps(pair_val, pair_ty).times(CombD::id(TyD::prod(g1.clone(), g2.clone()))),
        prim(Prim::UniteTimesL(TyD::prod(g1, g2))),
    ])
}

impl fmt::Display for TyD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TyD::Zero => f.write_str("0"),
            TyD::One => f.write_str("1"),
            TyD::Sum(a, b) => write!(f, "(+ {a} {b})"),
            TyD::Prod(a, b) => write!(f, "(* {a} {b})"),
            TyD::Frac(t, v) => write!(f, "(/ {v} : {t})"),
        }
    }
}

impl fmt::Display for ValD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValD::Unit => f.write_str("tt"),
            ValD::Inl(v) => write!(f, "(inl {v})"),
            ValD::Inr(v) => write!(f, "(inr {v})"),
            ValD::Pair(a, b) => write!(f, "({a} , {b})"),
            ValD::Gc => f.write_str("gc"),
        }
    }
}

impl fmt::Display for CombD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CombD::Prim(p) => write!(f, "{p}"),
            CombD::Seq(a, b) => write!(f, "(; {a} {b})"),
            CombD::Plus(a, b) => write!(f, "(p+ {a} {b})"),
            CombD::Times(a, b) => write!(f, "(p* {a} {b})"),
            CombD::Eta(v, t) => write!(f, "(eta {v} : {t})"),
            CombD::Eps(v, t) => write!(f, "(eps {v} : {t})"),
        }
    }
}
