//! Pointed types: every type carries the value currently in focus, and every
//! combinator computes the focus of its codomain when it is built.
//!
//! Because foci are tracked through construction, a collector `ε` can only be
//! placed where the singleton it consumes is the one its reciprocal was made
//! for. Composition checks foci, so a program whose runtime check could fail
//! is rejected with [`PtError::PointMismatch`] before it exists.
//!
//! Only the multiplicative fragment is lifted; there are no pointed sums.

use std::fmt;

use thiserror::Error;

use crate::comb::{Comb, TypeMismatch};
use crate::{Ty, Val};

/// A pointed type.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PtTy {
    /// A core type with the value in focus.
    Pt(Ty, Val),
    Prod(Box<PtTy>, Box<PtTy>),
    /// The singleton containing exactly the focus of the inner type.
    Sing(Box<PtTy>),
    /// A collector for the singleton of the inner type.
    Recip(Box<PtTy>),
}

/// Runtime carrier of a pointed type.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PtVal {
    Val(Val),
    Pair(Box<PtVal>, Box<PtVal>),
    /// A value known to equal the singleton's point.
    Sing(Box<PtVal>),
    /// The collector: a constant function, so it carries no data.
    Gc,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum PtError {
    #[error("focus mismatch: expected {expected}, found {found}")]
    PointMismatch { expected: Val, found: Val },
    #[error("type mismatch: expected {expected}, found {found}")]
    TypeMismatch { expected: PtTy, found: PtTy },
    #[error("{value} is not a value of {ty}")]
    NotInhabitant { value: Val, ty: Ty },
    #[error("{combinator} does not apply to {ty}")]
    Shape { combinator: &'static str, ty: PtTy },
    #[error(transparent)]
    Core(#[from] TypeMismatch),
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("ill-typed input: expected {expected}, found {found}")]
pub struct PtEvalError {
    pub expected: PtVal,
    pub found: PtVal,
}

impl PtTy {
    /// `t # v`, checking that `v : t`.
    pub fn point(t: Ty, v: Val) -> Result<PtTy, PtError> {
        if !v.has_type(&t) {
            return Err(PtError::NotInhabitant { value: v, ty: t });
        }
        Ok(PtTy::Pt(t, v))
    }

    /// The pointed unit `1 # tt`.
    pub fn unit() -> PtTy {
        PtTy::Pt(Ty::One, Val::Unit)
    }

    pub fn bool(b: bool) -> PtTy {
        PtTy::Pt(Ty::bool(), Val::from_bool(b))
    }

    pub fn prod(a: PtTy, b: PtTy) -> PtTy {
        PtTy::Prod(Box::new(a), Box::new(b))
    }

    pub fn sing(t: PtTy) -> PtTy {
        PtTy::Sing(Box::new(t))
    }

    pub fn recip(t: PtTy) -> PtTy {
        PtTy::Recip(Box::new(t))
    }

    /// Every `t # v` inside must have `v : t`.
    pub fn check(&self) -> Result<(), PtError> {
        match self {
            PtTy::Pt(t, v) => {
                if v.has_type(t) {
                    Ok(())
                } else {
                    Err(PtError::NotInhabitant {
                        value: v.clone(),
                        ty: t.clone(),
                    })
                }
            }
            PtTy::Prod(a, b) => {
                a.check()?;
                b.check()
            }
            PtTy::Sing(t) | PtTy::Recip(t) => t.check(),
        }
    }

    /// The value in focus.
    pub fn focus(&self) -> PtVal {
        match self {
            PtTy::Pt(_, v) => PtVal::Val(v.clone()),
            PtTy::Prod(a, b) => PtVal::pair(a.focus(), b.focus()),
            PtTy::Sing(t) => PtVal::sing(t.focus()),
            PtTy::Recip(_) => PtVal::Gc,
        }
    }

    /// `found` is what a producer delivers, `self` what a consumer expects.
    /// Structural disagreements win over focus disagreements.
    fn expect(&self, found: &PtTy) -> Result<(), PtError> {
        if !self.same_shape(found) {
            return Err(PtError::TypeMismatch {
                expected: self.clone(),
                found: found.clone(),
            });
        }
        match self.first_focus_difference(found) {
            None => Ok(()),
            Some((expected, found)) => Err(PtError::PointMismatch {
                expected: expected.clone(),
                found: found.clone(),
            }),
        }
    }

    fn same_shape(&self, other: &PtTy) -> bool {
        match (self, other) {
            (PtTy::Pt(t, _), PtTy::Pt(u, _)) => t == u,
            (PtTy::Prod(a, b), PtTy::Prod(c, d)) => a.same_shape(c) && b.same_shape(d),
            (PtTy::Sing(a), PtTy::Sing(b)) | (PtTy::Recip(a), PtTy::Recip(b)) => a.same_shape(b),
            _ => false,
        }
    }

    fn first_focus_difference<'a>(&'a self, other: &'a PtTy) -> Option<(&'a Val, &'a Val)> {
        match (self, other) {
            (PtTy::Pt(_, v), PtTy::Pt(_, w)) => (v != w).then_some((v, w)),
            (PtTy::Prod(a, b), PtTy::Prod(c, d)) => a
                .first_focus_difference(c)
                .or_else(|| b.first_focus_difference(d)),
            (PtTy::Sing(a), PtTy::Sing(b)) | (PtTy::Recip(a), PtTy::Recip(b)) => {
                a.first_focus_difference(b)
            }
            _ => None,
        }
    }
}

impl PtVal {
    pub fn pair(a: PtVal, b: PtVal) -> PtVal {
        PtVal::Pair(Box::new(a), Box::new(b))
    }

    pub fn sing(v: PtVal) -> PtVal {
        PtVal::Sing(Box::new(v))
    }
}

/// The combinator forms. Each one's pointed endpoints live in [`PtComb`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PtNode {
    /// A core combinator applied at a known input.
    Lift(Comb, Val),
    Seq(Box<PtComb>, Box<PtComb>),
    Times(Box<PtComb>, Box<PtComb>),
    Id,
    SwapTimes,
    AssoclTimes,
    AssocrTimes,
    UniteTimesL,
    UnitiTimesL,
    /// `(t₁ × t₂) # (v₁, v₂) → (t₁ # v₁) × (t₂ # v₂)`
    Split,
    /// Inverse of [`PtNode::Split`].
    Merge,
    Eta(PtTy),
    Eps(PtTy),
    Return,
    Extract,
    SingMap(Box<PtComb>),
    TensorSing,
    CotensorSing,
    JoinSing,
    DuplicateSing,
}

/// A checked pointed combinator.
///
/// Values can only be obtained through the constructors below, each of
/// which computes the pointed domain and codomain and rejects mismatches.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PtComb {
    node: PtNode,
    dom: PtTy,
    cod: PtTy,
}

fn shape(combinator: &'static str, ty: &PtTy) -> PtError {
    PtError::Shape {
        combinator,
        ty: ty.clone(),
    }
}

fn as_prod(t: &PtTy) -> Option<(&PtTy, &PtTy)> {
    match t {
        PtTy::Prod(a, b) => Some((a, b)),
        _ => None,
    }
}

impl PtComb {
    fn mk(node: PtNode, dom: PtTy, cod: PtTy) -> PtComb {
        PtComb { node, dom, cod }
    }

    pub fn node(&self) -> &PtNode {
        &self.node
    }

    pub fn dom(&self) -> &PtTy {
        &self.dom
    }

    pub fn cod(&self) -> &PtTy {
        &self.cod
    }

    pub fn dom_cod(&self) -> (PtTy, PtTy) {
        (self.dom.clone(), self.cod.clone())
    }

    /// `c` at input `v`: `dom(c) # v → cod(c) # c(v)`.
    pub fn lift(c: &Comb, v: Val) -> Result<PtComb, PtError> {
        let (dom, cod) = c.infer()?;
        let dom = PtTy::point(dom, v.clone())?;
        let out = c.run(&v).expect("typed input");
        Ok(PtComb::mk(
            PtNode::Lift(c.clone(), v),
            dom,
            PtTy::Pt(cod, out),
        ))
    }

    /// Sequential composition; the foci must agree exactly.
    pub fn seq(self, next: PtComb) -> Result<PtComb, PtError> {
        next.dom.expect(&self.cod)?;
        let dom = self.dom.clone();
        let cod = next.cod.clone();
        Ok(PtComb::mk(
            PtNode::Seq(Box::new(self), Box::new(next)),
            dom,
            cod,
        ))
    }

    pub fn seq_all(steps: impl IntoIterator<Item = PtComb>) -> Result<PtComb, PtError> {
        let mut it = steps.into_iter();
        let first = it.next().expect("empty sequence");
        it.try_fold(first, PtComb::seq)
    }

    pub fn times(self, other: PtComb) -> PtComb {
        let dom = PtTy::prod(self.dom.clone(), other.dom.clone());
        let cod = PtTy::prod(self.cod.clone(), other.cod.clone());
        PtComb::mk(PtNode::Times(Box::new(self), Box::new(other)), dom, cod)
    }

    pub fn id(t: PtTy) -> Result<PtComb, PtError> {
        t.check()?;
        Ok(PtComb::mk(PtNode::Id, t.clone(), t))
    }

    pub fn swap_times(a: PtTy, b: PtTy) -> Result<PtComb, PtError> {
        a.check()?;
        b.check()?;
        let dom = PtTy::prod(a.clone(), b.clone());
        Ok(PtComb::mk(PtNode::SwapTimes, dom, PtTy::prod(b, a)))
    }

    /// `a × (b × c) → (a × b) × c`
    pub fn assocl_times(a: PtTy, b: PtTy, c: PtTy) -> Result<PtComb, PtError> {
        for t in [&a, &b, &c] {
            t.check()?;
        }
        let dom = PtTy::prod(a.clone(), PtTy::prod(b.clone(), c.clone()));
        let cod = PtTy::prod(PtTy::prod(a, b), c);
        Ok(PtComb::mk(PtNode::AssoclTimes, dom, cod))
    }

    /// `(a × b) × c → a × (b × c)`
    pub fn assocr_times(a: PtTy, b: PtTy, c: PtTy) -> Result<PtComb, PtError> {
        Ok(PtComb::assocl_times(a, b, c)?.invert())
    }

    /// `(1 # tt) × t → t`
    pub fn unite_times_l(t: PtTy) -> Result<PtComb, PtError> {
        t.check()?;
        Ok(PtComb::mk(
            PtNode::UniteTimesL,
            PtTy::prod(PtTy::unit(), t.clone()),
            t,
        ))
    }

    /// `t → (1 # tt) × t`
    pub fn uniti_times_l(t: PtTy) -> Result<PtComb, PtError> {
        Ok(PtComb::unite_times_l(t)?.invert())
    }

    /// Splits a pointed pair `(t₁ × t₂) # (v₁, v₂)` into two pointed wires.
    pub fn split(t: PtTy) -> Result<PtComb, PtError> {
        t.check()?;
        let PtTy::Pt(Ty::Prod(t1, t2), Val::Pair(v1, v2)) = &t else {
            return Err(shape("split", &t));
        };
        let cod = PtTy::prod(
            PtTy::Pt((**t1).clone(), (**v1).clone()),
            PtTy::Pt((**t2).clone(), (**v2).clone()),
        );
        Ok(PtComb::mk(PtNode::Split, t, cod))
    }

    /// Joins two pointed wires into one pointed pair.
    pub fn merge(t: PtTy) -> Result<PtComb, PtError> {
        let Some((PtTy::Pt(t1, v1), PtTy::Pt(t2, v2))) = as_prod(&t) else {
            return Err(shape("merge", &t));
        };
        let joined = PtTy::point(
            Ty::prod(t1.clone(), t2.clone()),
            Val::pair(v1.clone(), v2.clone()),
        )?;
        Ok(PtComb::split(joined)?.invert())
    }

    /// `1 # tt → ⦇t⦈ × 1/t`: the current focus of `t` becomes a singleton,
    /// paired with a collector for exactly that singleton.
    pub fn eta(t: PtTy) -> Result<PtComb, PtError> {
        t.check()?;
        let cod = PtTy::prod(PtTy::sing(t.clone()), PtTy::recip(t.clone()));
        Ok(PtComb::mk(PtNode::Eta(t), PtTy::unit(), cod))
    }

    /// `⦇t⦈ × 1/t → 1 # tt`
    pub fn eps(t: PtTy) -> Result<PtComb, PtError> {
        Ok(PtComb::eta(t)?.invert())
    }

    /// `t → ⦇t⦈`
    pub fn ret(t: PtTy) -> Result<PtComb, PtError> {
        t.check()?;
        Ok(PtComb::mk(PtNode::Return, t.clone(), PtTy::sing(t)))
    }

    /// `⦇t⦈ → t`
    pub fn extract(t: PtTy) -> Result<PtComb, PtError> {
        Ok(PtComb::ret(t)?.invert())
    }

    /// The singleton functor on morphisms: `⦇a⦈ → ⦇b⦈` for `f : a → b`.
    pub fn sing_map(f: PtComb) -> PtComb {
        let dom = PtTy::sing(f.dom.clone());
        let cod = PtTy::sing(f.cod.clone());
        PtComb::mk(PtNode::SingMap(Box::new(f)), dom, cod)
    }

    /// `⦇a⦈ × ⦇b⦈ → ⦇a × b⦈`
    pub fn tensor_sing(a: PtTy, b: PtTy) -> Result<PtComb, PtError> {
        a.check()?;
        b.check()?;
        let dom = PtTy::prod(PtTy::sing(a.clone()), PtTy::sing(b.clone()));
        let cod = PtTy::sing(PtTy::prod(a, b));
        Ok(PtComb::mk(PtNode::TensorSing, dom, cod))
    }

    /// `⦇a × b⦈ → ⦇a⦈ × ⦇b⦈`
    pub fn cotensor_sing(a: PtTy, b: PtTy) -> Result<PtComb, PtError> {
        Ok(PtComb::tensor_sing(a, b)?.invert())
    }

    /// `⦇⦇t⦈⦈ → ⦇t⦈`
    pub fn join_sing(t: PtTy) -> Result<PtComb, PtError> {
        t.check()?;
        let dom = PtTy::sing(PtTy::sing(t.clone()));
        Ok(PtComb::mk(PtNode::JoinSing, dom, PtTy::sing(t)))
    }

    /// `⦇t⦈ → ⦇⦇t⦈⦈`
    pub fn duplicate_sing(t: PtTy) -> Result<PtComb, PtError> {
        Ok(PtComb::join_sing(t)?.invert())
    }

    /// The inverse program; domain and codomain swap.
    pub fn invert(&self) -> PtComb {
        let node = match &self.node {
            PtNode::Lift(c, v) => {
                let out = c.run(v).expect("checked at construction");
                PtNode::Lift(c.invert(), out)
            }
            PtNode::Seq(a, b) => PtNode::Seq(Box::new(b.invert()), Box::new(a.invert())),
            PtNode::Times(a, b) => PtNode::Times(Box::new(a.invert()), Box::new(b.invert())),
            PtNode::Id => PtNode::Id,
            PtNode::SwapTimes => PtNode::SwapTimes,
            PtNode::AssoclTimes => PtNode::AssocrTimes,
            PtNode::AssocrTimes => PtNode::AssoclTimes,
            PtNode::UniteTimesL => PtNode::UnitiTimesL,
            PtNode::UnitiTimesL => PtNode::UniteTimesL,
            PtNode::Split => PtNode::Merge,
            PtNode::Merge => PtNode::Split,
            PtNode::Eta(t) => PtNode::Eps(t.clone()),
            PtNode::Eps(t) => PtNode::Eta(t.clone()),
            PtNode::Return => PtNode::Extract,
            PtNode::Extract => PtNode::Return,
            PtNode::SingMap(f) => PtNode::SingMap(Box::new(f.invert())),
            PtNode::TensorSing => PtNode::CotensorSing,
            PtNode::CotensorSing => PtNode::TensorSing,
            PtNode::JoinSing => PtNode::DuplicateSing,
            PtNode::DuplicateSing => PtNode::JoinSing,
        };
        PtComb::mk(node, self.cod.clone(), self.dom.clone())
    }

    /// Runs the program on the focus of its domain, the only admissible input.
    pub fn eval(&self, v: &PtVal) -> Result<PtVal, PtEvalError> {
        let expected = self.dom.focus();
        if *v != expected {
            return Err(PtEvalError {
                expected,
                found: v.clone(),
            });
        }
        Ok(self.run(v).expect("the focus has the shape of the domain"))
    }

    /// Operational evaluation, independent of the foci recorded in the types.
    fn run(&self, v: &PtVal) -> Option<PtVal> {
        use PtVal as V;
        let pair = |v: &PtVal| match v {
            V::Pair(a, b) => Some(((**a).clone(), (**b).clone())),
            _ => None,
        };
        let unsing = |v: &PtVal| match v {
            V::Sing(a) => Some((**a).clone()),
            _ => None,
        };
        Some(match &self.node {
            PtNode::Lift(c, _) => match v {
                V::Val(x) => V::Val(c.run(x)?),
                _ => return None,
            },
            PtNode::Seq(a, b) => b.run(&a.run(v)?)?,
            PtNode::Times(a, b) => {
                let (x, y) = pair(v)?;
                V::pair(a.run(&x)?, b.run(&y)?)
            }
            PtNode::Id => v.clone(),
            PtNode::SwapTimes => {
                let (x, y) = pair(v)?;
                V::pair(y, x)
            }
            PtNode::AssoclTimes => {
                let (x, yz) = pair(v)?;
                let (y, z) = pair(&yz)?;
                V::pair(V::pair(x, y), z)
            }
            PtNode::AssocrTimes => {
                let (xy, z) = pair(v)?;
                let (x, y) = pair(&xy)?;
                V::pair(x, V::pair(y, z))
            }
            PtNode::UniteTimesL => {
                let (u, x) = pair(v)?;
                (u == V::Val(Val::Unit)).then_some(())?;
                x
            }
            PtNode::UnitiTimesL => V::pair(V::Val(Val::Unit), v.clone()),
            PtNode::Split => match v {
                V::Val(Val::Pair(a, b)) => V::pair(V::Val((**a).clone()), V::Val((**b).clone())),
                _ => return None,
            },
            PtNode::Merge => match pair(v)? {
                (V::Val(a), V::Val(b)) => V::Val(Val::pair(a, b)),
                _ => return None,
            },
            PtNode::Eta(t) => match v {
                V::Val(Val::Unit) => V::pair(V::sing(t.focus()), V::Gc),
                _ => return None,
            },
            // No runtime check: the singleton is the collector's by construction.
            PtNode::Eps(_) => match pair(v)? {
                (V::Sing(_), V::Gc) => V::Val(Val::Unit),
                _ => return None,
            },
            PtNode::Return => V::sing(v.clone()),
            PtNode::Extract => unsing(v)?,
            PtNode::SingMap(f) => V::sing(f.run(&unsing(v)?)?),
            PtNode::TensorSing => {
                let (x, y) = pair(v)?;
                V::sing(V::pair(unsing(&x)?, unsing(&y)?))
            }
            PtNode::CotensorSing => {
                let (x, y) = pair(&unsing(v)?)?;
                V::pair(V::sing(x), V::sing(y))
            }
            PtNode::JoinSing => unsing(v)?,
            PtNode::DuplicateSing => V::sing(v.clone()),
        })
    }

    /// Same endpoints and same behaviour on the (unique) admissible input.
    pub fn equivalent(&self, other: &PtComb) -> bool {
        self.dom == other.dom
            && self.cod == other.cod
            && self.eval(&self.dom.focus()).ok() == other.eval(&other.dom.focus()).ok()
    }

    pub fn depth(&self) -> usize {
        match &self.node {
            PtNode::Seq(a, b) | PtNode::Times(a, b) => 1 + a.depth().max(b.depth()),
            PtNode::SingMap(f) => 1 + f.depth(),
            _ => 0,
        }
    }

    pub fn node_count(&self) -> usize {
        match &self.node {
            PtNode::Seq(a, b) | PtNode::Times(a, b) => 1 + a.node_count() + b.node_count(),
            PtNode::SingMap(f) => 1 + f.node_count(),
            _ => 1,
        }
    }

    /// True if some `η`/`ε` occurs.
    pub fn allocates(&self) -> bool {
        match &self.node {
            PtNode::Eta(_) | PtNode::Eps(_) => true,
            PtNode::Seq(a, b) | PtNode::Times(a, b) => a.allocates() || b.allocates(),
            PtNode::SingMap(f) => f.allocates(),
            _ => false,
        }
    }
}

/// `1/(1/t) → ⦇t⦈`: collecting a collector rematerializes the singleton.
///
/// A fresh singleton/collector pair is allocated for `t`; the new collector
/// is wrapped as a singleton and consumed by the incoming collector-of-a-
/// collector, leaving the singleton.
pub fn revrev(t: &PtTy) -> Result<PtComb, PtError> {
    let s = PtTy::sing(t.clone());
    let r = PtTy::recip(t.clone());
    let rr = PtTy::recip(r.clone());
    PtComb::seq_all([
        PtComb::uniti_times_l(rr.clone())?,
        PtComb::eta(t.clone())?.times(PtComb::id(rr.clone())?),
        PtComb::assocr_times(s.clone(), r.clone(), rr.clone())?,
        PtComb::id(s.clone())?.times(PtComb::ret(r.clone())?.times(PtComb::id(rr)?)),
        PtComb::id(s.clone())?.times(PtComb::eps(r)?),
        PtComb::swap_times(s.clone(), PtTy::unit())?,
        PtComb::unite_times_l(s)?,
    ])
}

/// A named equation between two pointed programs.
pub struct Law {
    pub name: &'static str,
    pub lhs: PtComb,
    pub rhs: PtComb,
}

impl Law {
    pub fn holds(&self) -> bool {
        self.lhs.equivalent(&self.rhs)
    }
}

/// The monad laws for (`ret`, `join_sing`), the comonad laws for
/// (`extract`, `duplicate_sing`), and idempotency, instantiated at `t`.
pub fn singleton_laws(t: &PtTy) -> Result<Vec<Law>, PtError> {
    let s = PtTy::sing(t.clone());
    let ss = PtTy::sing(s.clone());
    let law = |name, lhs, rhs| Law { name, lhs, rhs };
    Ok(vec![
        law(
            "monad left unit: return ⨾ join = id",
            PtComb::ret(s.clone())?.seq(PtComb::join_sing(t.clone())?)?,
            PtComb::id(s.clone())?,
        ),
        law(
            "monad right unit: map(return) ⨾ join = id",
            PtComb::sing_map(PtComb::ret(t.clone())?).seq(PtComb::join_sing(t.clone())?)?,
            PtComb::id(s.clone())?,
        ),
        law(
            "monad associativity: join ⨾ join = map(join) ⨾ join",
            PtComb::join_sing(s.clone())?.seq(PtComb::join_sing(t.clone())?)?,
            PtComb::sing_map(PtComb::join_sing(t.clone())?).seq(PtComb::join_sing(t.clone())?)?,
        ),
        law(
            "comonad left counit: duplicate ⨾ extract = id",
            PtComb::duplicate_sing(t.clone())?.seq(PtComb::extract(s.clone())?)?,
            PtComb::id(s.clone())?,
        ),
        law(
            "comonad right counit: duplicate ⨾ map(extract) = id",
            PtComb::duplicate_sing(t.clone())?
                .seq(PtComb::sing_map(PtComb::extract(t.clone())?))?,
            PtComb::id(s.clone())?,
        ),
        law(
            "comonad coassociativity: duplicate ⨾ duplicate = duplicate ⨾ map(duplicate)",
            PtComb::duplicate_sing(t.clone())?.seq(PtComb::duplicate_sing(s.clone())?)?,
            PtComb::duplicate_sing(t.clone())?
                .seq(PtComb::sing_map(PtComb::duplicate_sing(t.clone())?))?,
        ),
        law(
            "idempotency: join ⨾ duplicate = id",
            PtComb::join_sing(t.clone())?.seq(PtComb::duplicate_sing(t.clone())?)?,
            PtComb::id(ss)?,
        ),
    ])
}

/// Coherence of the tensor with the unit and the counit, at `a` and `b`.
pub fn strength_laws(a: &PtTy, b: &PtTy) -> Result<Vec<Law>, PtError> {
    let ab = PtTy::prod(a.clone(), b.clone());
    let sa = PtTy::sing(a.clone());
    let sb = PtTy::sing(b.clone());
    Ok(vec![
        Law {
            name: "return ⊗ return ⨾ tensor = return",
            lhs: PtComb::ret(a.clone())?
                .times(PtComb::ret(b.clone())?)
                .seq(PtComb::tensor_sing(a.clone(), b.clone())?)?,
            rhs: PtComb::ret(ab.clone())?,
        },
        Law {
            name: "tensor ⨾ extract = extract ⊗ extract",
            lhs: PtComb::tensor_sing(a.clone(), b.clone())?.seq(PtComb::extract(ab.clone())?)?,
            rhs: PtComb::extract(a.clone())?.times(PtComb::extract(b.clone())?),
        },
        Law {
            name: "tensor ⨾ cotensor = id",
            lhs: PtComb::tensor_sing(a.clone(), b.clone())?
                .seq(PtComb::cotensor_sing(a.clone(), b.clone())?)?,
            rhs: PtComb::id(PtTy::prod(sa, sb))?,
        },
    ])
}

impl fmt::Display for PtTy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PtTy::Pt(t, v) => write!(f, "(# {t} {v})"),
            PtTy::Prod(a, b) => write!(f, "(* {a} {b})"),
            PtTy::Sing(t) => write!(f, "(sing {t})"),
            PtTy::Recip(t) => write!(f, "(recip {t})"),
        }
    }
}

impl fmt::Display for PtVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PtVal::Val(v) => write!(f, "{v}"),
            PtVal::Pair(a, b) => write!(f, "({a} , {b})"),
            PtVal::Sing(v) => write!(f, "[{v}]"),
            PtVal::Gc => f.write_str("gc"),
        }
    }
}

impl fmt::Display for PtComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (d, c) = (&self.dom, &self.cod);
        match &self.node {
            PtNode::Lift(comb, v) => write!(f, "(lift {comb} @ {v})"),
            PtNode::Seq(a, b) => write!(f, "(; {a} {b})"),
            PtNode::Times(a, b) => write!(f, "(p* {a} {b})"),
            PtNode::SingMap(g) => write!(f, "(sing-map {g})"),
            PtNode::Eta(t) => write!(f, "(eta {t})"),
            PtNode::Eps(t) => write!(f, "(eps {t})"),
            other => {
                let name = match other {
                    PtNode::Id => "id",
                    PtNode::SwapTimes => "swap*",
                    PtNode::AssoclTimes => "assocl*",
                    PtNode::AssocrTimes => "assocr*",
                    PtNode::UniteTimesL => "unite*l",
                    PtNode::UnitiTimesL => "uniti*l",
                    PtNode::Split => "split",
                    PtNode::Merge => "merge",
                    PtNode::Return => "return",
                    PtNode::Extract => "extract",
                    PtNode::TensorSing => "tensor",
                    PtNode::CotensorSing => "cotensor",
                    PtNode::JoinSing => "join",
                    _ => "duplicate",
                };
                write!(f, "({name} : {d} -> {c})")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comb::{not, toffoli};

    fn ff() -> PtTy {
        PtTy::bool(false)
    }

    fn tt() -> PtTy {
        PtTy::bool(true)
    }

    #[test]
    fn lift_reflects_evaluation_in_the_type() {
        let c = PtComb::lift(&not(), Val::ff()).unwrap();
        assert_eq!(c.dom_cod(), (ff(), tt()));
        assert_eq!(
            c.eval(&PtVal::Val(Val::ff())).unwrap(),
            PtVal::Val(Val::tt())
        );
    }

    #[test]
    fn lift_rejects_values_outside_the_domain() {
        assert!(matches!(
            PtComb::lift(&not(), Val::Unit),
            Err(PtError::NotInhabitant { .. })
        ));
    }

    #[test]
    fn matched_eta_eps_is_unit_to_unit() {
        let c = PtComb::eta(ff())
            .unwrap()
            .seq(PtComb::eps(ff()).unwrap())
            .unwrap();
        assert_eq!(c.dom_cod(), (PtTy::unit(), PtTy::unit()));
        assert_eq!(
            c.eval(&PtTy::unit().focus()).unwrap(),
            PtVal::Val(Val::Unit)
        );
    }

    #[test]
    fn mismatched_eta_eps_is_rejected() {
        let err = PtComb::eta(ff())
            .unwrap()
            .seq(PtComb::eps(tt()).unwrap())
            .unwrap_err();
        assert_eq!(
            err,
            PtError::PointMismatch {
                expected: Val::tt(),
                found: Val::ff()
            }
        );
    }

    #[test]
    fn structural_mismatch_is_a_type_error() {
        let err = PtComb::eta(ff())
            .unwrap()
            .seq(PtComb::eps(PtTy::unit()).unwrap())
            .unwrap_err();
        assert!(matches!(err, PtError::TypeMismatch { .. }));
    }

    #[test]
    fn eta_puts_the_focus_in_a_singleton() {
        let c = PtComb::eta(tt()).unwrap();
        let out = c.eval(&PtVal::Val(Val::Unit)).unwrap();
        assert_eq!(
            out,
            PtVal::pair(PtVal::sing(PtVal::Val(Val::tt())), PtVal::Gc)
        );
    }

    #[test]
    fn swap_on_points() {
        let c = PtComb::swap_times(tt(), ff()).unwrap();
        let v = PtVal::pair(PtVal::Val(Val::tt()), PtVal::Val(Val::ff()));
        assert_eq!(
            c.eval(&v).unwrap(),
            PtVal::pair(PtVal::Val(Val::ff()), PtVal::Val(Val::tt()))
        );
    }

    #[test]
    fn eval_rejects_anything_but_the_focus() {
        let c = PtComb::lift(&not(), Val::ff()).unwrap();
        assert!(c.eval(&PtVal::Val(Val::tt())).is_err());
    }

    #[test]
    fn invert_swaps_endpoints_and_partners() {
        let eta = PtComb::eta(ff()).unwrap();
        let inv = eta.invert();
        assert_eq!(inv.node(), &PtNode::Eps(ff()));
        assert_eq!(inv.dom_cod(), (eta.cod().clone(), eta.dom().clone()));
        assert_eq!(inv.invert(), eta);
        let t = PtComb::lift(&toffoli(), Val::bits(&[true, true, false])).unwrap();
        let back = t.invert();
        assert_eq!(back.eval(&t.cod().focus()).unwrap(), t.dom().focus());
    }

    #[test]
    fn split_and_merge() {
        let t = PtTy::point(Ty::bits(2), Val::bits(&[true, false])).unwrap();
        let s = PtComb::split(t.clone()).unwrap();
        assert_eq!(s.cod(), &PtTy::prod(tt(), ff()));
        let m = PtComb::merge(s.cod().clone()).unwrap();
        assert_eq!(m.cod(), &t);
        assert!(PtComb::split(tt()).is_err());
    }

    #[test]
    fn join_has_the_idempotent_type() {
        let j = PtComb::join_sing(tt()).unwrap();
        assert_eq!(
            j.dom_cod(),
            (PtTy::sing(PtTy::sing(tt())), PtTy::sing(tt()))
        );
    }

    #[test]
    fn duplicate_then_join_is_identity() {
        let c = PtComb::duplicate_sing(tt())
            .unwrap()
            .seq(PtComb::join_sing(tt()).unwrap())
            .unwrap();
        assert!(c.equivalent(&PtComb::id(PtTy::sing(tt())).unwrap()));
    }

    #[test]
    fn return_then_extract_is_identity() {
        let c = PtComb::ret(tt())
            .unwrap()
            .seq(PtComb::extract(tt()).unwrap())
            .unwrap();
        assert!(c.equivalent(&PtComb::id(tt()).unwrap()));
    }

    #[test]
    fn revrev_type_and_value() {
        let r = revrev(&ff()).unwrap();
        assert_eq!(r.dom(), &PtTy::recip(PtTy::recip(ff())));
        assert_eq!(r.cod(), &PtTy::sing(ff()));
        assert_eq!(
            r.eval(&PtVal::Gc).unwrap(),
            PtVal::sing(PtVal::Val(Val::ff()))
        );
    }

    #[test]
    fn laws_hold_at_a_boolean_point() {
        for law in singleton_laws(&tt()).unwrap() {
            assert!(law.holds(), "{}", law.name);
        }
        for law in strength_laws(&tt(), &PtTy::recip(ff())).unwrap() {
            assert!(law.holds(), "{}", law.name);
        }
    }
}
