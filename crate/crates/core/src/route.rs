//! Wire routing: synthesizes the `swap*`/`assoc*` plumbing that rearranges
//! the leaves of a product into another bracketing and order.
//!
//! The construction flattens the source into a right-nested list, sorts the
//! list with adjacent transpositions, and unflattens into the target by
//! running the target's flattening backwards.

use std::convert::Infallible;
use std::fmt;

use crate::comb::Comb;
use crate::frac::{CombD, TyD};
use crate::pointed::{PtComb, PtError, PtTy};
use crate::prim::Prim;
use crate::Ty;

/// Combinator languages with symmetric monoidal products.
pub trait Monoidal: Sized + Clone {
    type Obj: Clone + PartialEq + fmt::Debug;
    type Error: fmt::Debug;

    fn prod_obj(a: &Self::Obj, b: &Self::Obj) -> Self::Obj;
    fn id(a: &Self::Obj) -> Self;
    fn swap(a: &Self::Obj, b: &Self::Obj) -> Self;
    /// `a × (b × c) → (a × b) × c`
    fn assocl(a: &Self::Obj, b: &Self::Obj, c: &Self::Obj) -> Self;
    /// `(a × b) × c → a × (b × c)`
    fn assocr(a: &Self::Obj, b: &Self::Obj, c: &Self::Obj) -> Self;
    fn then(self, next: Self) -> Result<Self, Self::Error>;
    fn tensor(self, other: Self) -> Self;
    fn invert(&self) -> Self;
}

impl Monoidal for Comb {
    type Obj = Ty;
    type Error = Infallible;

    fn prod_obj(a: &Ty, b: &Ty) -> Ty {
        Ty::prod(a.clone(), b.clone())
    }
    fn id(a: &Ty) -> Self {
        Comb::id(a.clone())
    }
    fn swap(a: &Ty, b: &Ty) -> Self {
        Comb::Prim(Prim::SwapTimes(a.clone(), b.clone()))
    }
    fn assocl(a: &Ty, b: &Ty, c: &Ty) -> Self {
        Comb::Prim(Prim::AssoclTimes(a.clone(), b.clone(), c.clone()))
    }
    fn assocr(a: &Ty, b: &Ty, c: &Ty) -> Self {
        Comb::Prim(Prim::AssocrTimes(a.clone(), b.clone(), c.clone()))
    }
    fn then(self, next: Self) -> Result<Self, Infallible> {
        Ok(self.seq(next))
    }
    fn tensor(self, other: Self) -> Self {
        self.times(other)
    }
    fn invert(&self) -> Self {
        Comb::invert(self)
    }
}

impl Monoidal for CombD {
    type Obj = TyD;
    type Error = Infallible;

    fn prod_obj(a: &TyD, b: &TyD) -> TyD {
        TyD::prod(a.clone(), b.clone())
    }
    fn id(a: &TyD) -> Self {
        CombD::id(a.clone())
    }
    fn swap(a: &TyD, b: &TyD) -> Self {
        CombD::Prim(Prim::SwapTimes(a.clone(), b.clone()))
    }
    fn assocl(a: &TyD, b: &TyD, c: &TyD) -> Self {
        CombD::Prim(Prim::AssoclTimes(a.clone(), b.clone(), c.clone()))
    }
    fn assocr(a: &TyD, b: &TyD, c: &TyD) -> Self {
        CombD::Prim(Prim::AssocrTimes(a.clone(), b.clone(), c.clone()))
    }
    fn then(self, next: Self) -> Result<Self, Infallible> {
        Ok(self.seq(next))
    }
    fn tensor(self, other: Self) -> Self {
        self.times(other)
    }
    fn invert(&self) -> Self {
        CombD::invert(self)
    }
}

// Routing only ever receives objects taken from already checked pointed
// types, so the structural constructors cannot fail here.
impl Monoidal for PtComb {
    type Obj = PtTy;
    type Error = PtError;

    fn prod_obj(a: &PtTy, b: &PtTy) -> PtTy {
        PtTy::prod(a.clone(), b.clone())
    }
    fn id(a: &PtTy) -> Self {
        PtComb::id(a.clone()).expect("checked pointed type")
    }
    fn swap(a: &PtTy, b: &PtTy) -> Self {
        PtComb::swap_times(a.clone(), b.clone()).expect("checked pointed type")
    }
    fn assocl(a: &PtTy, b: &PtTy, c: &PtTy) -> Self {
        PtComb::assocl_times(a.clone(), b.clone(), c.clone()).expect("checked pointed type")
    }
    fn assocr(a: &PtTy, b: &PtTy, c: &PtTy) -> Self {
        PtComb::assocr_times(a.clone(), b.clone(), c.clone()).expect("checked pointed type")
    }
    fn then(self, next: Self) -> Result<Self, PtError> {
        self.seq(next)
    }
    fn tensor(self, other: Self) -> Self {
        self.times(other)
    }
    fn invert(&self) -> Self {
        PtComb::invert(self)
    }
}

/// A bracketing of numbered wires.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Layout {
    Wire(usize),
    Pair(Box<Layout>, Box<Layout>),
}

impl Layout {
    pub fn pair(a: Layout, b: Layout) -> Layout {
        Layout::Pair(Box::new(a), Box::new(b))
    }

    /// `w0 × (w1 × (… × wn))`; panics on an empty slice.
    pub fn list(wires: &[usize]) -> Layout {
        let (last, init) = wires
            .split_last()
            .expect("a layout needs at least one wire");
        init.iter().rev().fold(Layout::Wire(*last), |acc, w| {
            Layout::pair(Layout::Wire(*w), acc)
        })
    }

    /// Wires from left to right.
    pub fn wires(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut Vec<usize>) {
        match self {
            Layout::Wire(w) => out.push(*w),
            Layout::Pair(a, b) => {
                a.collect(out);
                b.collect(out);
            }
        }
    }

    /// The product object described by the layout, given each wire's object.
    pub fn obj<C: Monoidal>(&self, objs: &[C::Obj]) -> C::Obj {
        match self {
            Layout::Wire(w) => objs[*w].clone(),
            Layout::Pair(a, b) => C::prod_obj(&a.obj::<C>(objs), &b.obj::<C>(objs)),
        }
    }
}

fn seq_opt<C: Monoidal>(a: Option<C>, b: Option<C>) -> Result<Option<C>, C::Error> {
    Ok(match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => Some(a.then(b)?),
    })
}

fn tensor_opt<C: Monoidal>(
    a: Option<C>,
    a_obj: &C::Obj,
    b: Option<C>,
    b_obj: &C::Obj,
) -> Option<C> {
    match (a, b) {
        (None, None) => None,
        (a, b) => Some(
            a.unwrap_or_else(|| C::id(a_obj))
                .tensor(b.unwrap_or_else(|| C::id(b_obj))),
        ),
    }
}

fn list_obj<C: Monoidal>(wires: &[usize], objs: &[C::Obj]) -> C::Obj {
    Layout::list(wires).obj::<C>(objs)
}

/// `list(xs) × list(ys) → list(xs ++ ys)`
fn append<C: Monoidal>(xs: &[usize], ys: &[usize], objs: &[C::Obj]) -> Result<Option<C>, C::Error> {
    let Some((x, rest)) = xs.split_first() else {
        unreachable!("layouts have at least one wire")
    };
    if rest.is_empty() {
        return Ok(None);
    }
    let x_obj = &objs[*x];
    let step = C::assocr(x_obj, &list_obj::<C>(rest, objs), &list_obj::<C>(ys, objs));
    let inner = append::<C>(rest, ys, objs)?;
    let mut joined = rest.to_vec();
    joined.extend_from_slice(ys);
    let tail = tensor_opt(None, x_obj, inner, &list_obj::<C>(&joined, objs));
    seq_opt(Some(step), tail)
}

/// `layout → list(layout.wires())`
fn flatten<C: Monoidal>(layout: &Layout, objs: &[C::Obj]) -> Result<Option<C>, C::Error> {
    match layout {
        Layout::Wire(_) => Ok(None),
        Layout::Pair(a, b) => {
            let fa = flatten::<C>(a, objs)?;
            let fb = flatten::<C>(b, objs)?;
            let both = tensor_opt(fa, &a.obj::<C>(objs), fb, &b.obj::<C>(objs));
            seq_opt(both, append::<C>(&a.wires(), &b.wires(), objs)?)
        }
    }
}

/// Swaps positions `i` and `i + 1` of a right-nested list.
fn transpose<C: Monoidal>(order: &[usize], i: usize, objs: &[C::Obj]) -> Result<C, C::Error> {
    let n = order.len();
    let a = &objs[order[i]];
    let b = &objs[order[i + 1]];
    let mut step = if i + 2 == n {
        C::swap(a, b)
    } else {
        let rest = list_obj::<C>(&order[i + 2..], objs);
        C::assocl(a, b, &rest)
            .then(C::swap(a, b).tensor(C::id(&rest)))?
            .then(C::assocr(b, a, &rest))?
    };
    for j in (0..i).rev() {
        step = C::id(&objs[order[j]]).tensor(step);
    }
    Ok(step)
}

/// A combinator from `from` to `to`, or `None` when the layouts coincide.
///
/// Panics unless both layouts mention the same wires, each exactly once.
pub fn route<C: Monoidal>(
    from: &Layout,
    to: &Layout,
    objs: &[C::Obj],
) -> Result<Option<C>, C::Error> {
    let mut order = from.wires();
    let target = to.wires();
    let mut sorted_a = order.clone();
    let mut sorted_b = target.clone();
    sorted_a.sort_unstable();
    sorted_b.sort_unstable();
    assert_eq!(
        sorted_a, sorted_b,
        "route endpoints must permute the same wires"
    );
    sorted_a.dedup();
    assert_eq!(sorted_a.len(), order.len(), "wires must be distinct");
    if from == to {
        return Ok(None);
    }

    let rank = |w: usize| target.iter().position(|t| *t == w).expect("checked above");
    let mut prog = flatten::<C>(from, objs)?;
    // bubble sort by target position
    for pass in 0..order.len() {
        for i in 0..order.len() - 1 - pass {
            if rank(order[i]) > rank(order[i + 1]) {
                let t = transpose::<C>(&order, i, objs)?;
                prog = seq_opt(prog, Some(t))?;
                order.swap(i, i + 1);
            }
        }
    }
    let unflatten = flatten::<C>(to, objs)?.map(|c| c.invert());
    seq_opt(prog, unflatten)
}

/// [`route`], with an explicit identity when nothing moves.
pub fn route_or_id<C: Monoidal>(
    from: &Layout,
    to: &Layout,
    objs: &[C::Obj],
) -> Result<C, C::Error> {
    Ok(route::<C>(from, to, objs)?.unwrap_or_else(|| C::id(&from.obj::<C>(objs))))
}
