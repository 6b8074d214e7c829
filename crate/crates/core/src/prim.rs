//! The primitive type isomorphisms, generic over the type and value
//! representation so that the core language and its fractional extension
//! share one definition.
//!
//! Each primitive carries the type instantiation of its schematic rule, so
//! its domain and codomain are computable without any context.

use std::fmt;

/// Structural view of a type representation.
pub enum TyView<'a, T> {
    Zero,
    One,
    Sum(&'a T, &'a T),
    Prod(&'a T, &'a T),
    /// A constructor outside the core fragment (e.g. a fraction).
    Other,
}

/// Type representations that contain `0`, `1`, `+` and `×`.
pub trait TypeRepr: Clone + Eq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn sum(a: Self, b: Self) -> Self;
    fn prod(a: Self, b: Self) -> Self;
    fn view(&self) -> TyView<'_, Self>;
}

/// Structural view of a value representation.
pub enum ValView<'a, V> {
    Unit,
    Inl(&'a V),
    Inr(&'a V),
    Pair(&'a V, &'a V),
    Other,
}

/// Value representations that contain `tt`, injections and pairs.
pub trait ValueRepr: Clone + Eq + fmt::Debug {
    fn unit() -> Self;
    fn inl(v: Self) -> Self;
    fn inr(v: Self) -> Self;
    fn pair(a: Self, b: Self) -> Self;
    fn view(&self) -> ValView<'_, Self>;
}

impl TypeRepr for crate::Ty {
    fn zero() -> Self {
        crate::Ty::Zero
    }
    fn one() -> Self {
        crate::Ty::One
    }
    fn sum(a: Self, b: Self) -> Self {
        crate::Ty::sum(a, b)
    }
    fn prod(a: Self, b: Self) -> Self {
        crate::Ty::prod(a, b)
    }
    fn view(&self) -> TyView<'_, Self> {
        match self {
            crate::Ty::Zero => TyView::Zero,
            crate::Ty::One => TyView::One,
            crate::Ty::Sum(a, b) => TyView::Sum(a, b),
            crate::Ty::Prod(a, b) => TyView::Prod(a, b),
        }
    }
}

impl ValueRepr for crate::Val {
    fn unit() -> Self {
        crate::Val::Unit
    }
    fn inl(v: Self) -> Self {
        crate::Val::inl(v)
    }
    fn inr(v: Self) -> Self {
        crate::Val::inr(v)
    }
    fn pair(a: Self, b: Self) -> Self {
        crate::Val::pair(a, b)
    }
    fn view(&self) -> ValView<'_, Self> {
        match self {
            crate::Val::Unit => ValView::Unit,
            crate::Val::Inl(v) => ValView::Inl(v),
            crate::Val::Inr(v) => ValView::Inr(v),
            crate::Val::Pair(a, b) => ValView::Pair(a, b),
        }
    }
}

/// Primitive names, independent of instantiation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PrimOp {
    Id,
    UnitePlusL,
    UnitiPlusL,
    SwapPlus,
    AssoclPlus,
    AssocrPlus,
    UniteTimesL,
    UnitiTimesL,
    SwapTimes,
    AssoclTimes,
    AssocrTimes,
    Absorbr,
    Factorzl,
    Dist,
    Factor,
}

impl PrimOp {
    pub const ALL: [PrimOp; 15] = [
        PrimOp::Id,
        PrimOp::UnitePlusL,
        PrimOp::UnitiPlusL,
        PrimOp::SwapPlus,
        PrimOp::AssoclPlus,
        PrimOp::AssocrPlus,
        PrimOp::UniteTimesL,
        PrimOp::UnitiTimesL,
        PrimOp::SwapTimes,
        PrimOp::AssoclTimes,
        PrimOp::AssocrTimes,
        PrimOp::Absorbr,
        PrimOp::Factorzl,
        PrimOp::Dist,
        PrimOp::Factor,
    ];

    /// Concrete-syntax keyword.
    pub fn keyword(self) -> &'static str {
        match self {
            PrimOp::Id => "id",
            PrimOp::UnitePlusL => "unite+l",
            PrimOp::UnitiPlusL => "uniti+l",
            PrimOp::SwapPlus => "swap+",
            PrimOp::AssoclPlus => "assocl+",
            PrimOp::AssocrPlus => "assocr+",
            PrimOp::UniteTimesL => "unite*l",
            PrimOp::UnitiTimesL => "uniti*l",
            PrimOp::SwapTimes => "swap*",
            PrimOp::AssoclTimes => "assocl*",
            PrimOp::AssocrTimes => "assocr*",
            PrimOp::Absorbr => "absorbr",
            PrimOp::Factorzl => "factorzl",
            PrimOp::Dist => "dist",
            PrimOp::Factor => "factor",
        }
    }

    pub fn from_keyword(s: &str) -> Option<PrimOp> {
        PrimOp::ALL.into_iter().find(|op| op.keyword() == s)
    }

    /// The primitive on the other side of the isomorphism.
    pub fn partner(self) -> PrimOp {
        match self {
            PrimOp::Id => PrimOp::Id,
            PrimOp::UnitePlusL => PrimOp::UnitiPlusL,
            PrimOp::UnitiPlusL => PrimOp::UnitePlusL,
            PrimOp::SwapPlus => PrimOp::SwapPlus,
            PrimOp::AssoclPlus => PrimOp::AssocrPlus,
            PrimOp::AssocrPlus => PrimOp::AssoclPlus,
            PrimOp::UniteTimesL => PrimOp::UnitiTimesL,
            PrimOp::UnitiTimesL => PrimOp::UniteTimesL,
            PrimOp::SwapTimes => PrimOp::SwapTimes,
            PrimOp::AssoclTimes => PrimOp::AssocrTimes,
            PrimOp::AssocrTimes => PrimOp::AssoclTimes,
            PrimOp::Absorbr => PrimOp::Factorzl,
            PrimOp::Factorzl => PrimOp::Absorbr,
            PrimOp::Dist => PrimOp::Factor,
            PrimOp::Factor => PrimOp::Dist,
        }
    }
}

impl fmt::Display for PrimOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// A primitive isomorphism together with its type instantiation.
///
/// The fields are the schematic type variables of each rule, in order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Prim<T> {
    /// `t ↔ t`
    Id(T),
    /// `0 + t ↔ t`
    UnitePlusL(T),
    /// `t ↔ 0 + t`
    UnitiPlusL(T),
    /// `a + b ↔ b + a`
    SwapPlus(T, T),
    /// `a + (b + c) ↔ (a + b) + c`
    AssoclPlus(T, T, T),
    /// `(a + b) + c ↔ a + (b + c)`
    AssocrPlus(T, T, T),
    /// `1 × t ↔ t`
    UniteTimesL(T),
    /// `t ↔ 1 × t`
    UnitiTimesL(T),
    /// `a × b ↔ b × a`
    SwapTimes(T, T),
    /// `a × (b × c) ↔ (a × b) × c`
    AssoclTimes(T, T, T),
    /// `(a × b) × c ↔ a × (b × c)`
    AssocrTimes(T, T, T),
    /// `0 × t ↔ 0`
    Absorbr(T),
    /// `0 ↔ 0 × t`
    Factorzl(T),
    /// `(a + b) × c ↔ (a × c) + (b × c)`
    Dist(T, T, T),
    /// `(a × c) + (b × c) ↔ (a + b) × c`
    Factor(T, T, T),
}

impl<T: TypeRepr> Prim<T> {
    pub fn op(&self) -> PrimOp {
        match self {
            Prim::Id(..) => PrimOp::Id,
            Prim::UnitePlusL(..) => PrimOp::UnitePlusL,
            Prim::UnitiPlusL(..) => PrimOp::UnitiPlusL,
            Prim::SwapPlus(..) => PrimOp::SwapPlus,
            Prim::AssoclPlus(..) => PrimOp::AssoclPlus,
            Prim::AssocrPlus(..) => PrimOp::AssocrPlus,
            Prim::UniteTimesL(..) => PrimOp::UniteTimesL,
            Prim::UnitiTimesL(..) => PrimOp::UnitiTimesL,
            Prim::SwapTimes(..) => PrimOp::SwapTimes,
            Prim::AssoclTimes(..) => PrimOp::AssoclTimes,
            Prim::AssocrTimes(..) => PrimOp::AssocrTimes,
            Prim::Absorbr(..) => PrimOp::Absorbr,
            Prim::Factorzl(..) => PrimOp::Factorzl,
            Prim::Dist(..) => PrimOp::Dist,
            Prim::Factor(..) => PrimOp::Factor,
        }
    }

    pub fn dom(&self) -> T {
        self.dom_cod().0
    }

    pub fn cod(&self) -> T {
        self.dom_cod().1
    }

    pub fn dom_cod(&self) -> (T, T) {
        let s = |a: &T, b: &T| T::sum(a.clone(), b.clone());
        let p = |a: &T, b: &T| T::prod(a.clone(), b.clone());
        match self {
            Prim::Id(t) => (t.clone(), t.clone()),
            Prim::UnitePlusL(t) => (s(&T::zero(), t), t.clone()),
            Prim::UnitiPlusL(t) => (t.clone(), s(&T::zero(), t)),
            Prim::SwapPlus(a, b) => (s(a, b), s(b, a)),
            Prim::AssoclPlus(a, b, c) => (s(a, &s(b, c)), s(&s(a, b), c)),
            Prim::AssocrPlus(a, b, c) => (s(&s(a, b), c), s(a, &s(b, c))),
            Prim::UniteTimesL(t) => (p(&T::one(), t), t.clone()),
            Prim::UnitiTimesL(t) => (t.clone(), p(&T::one(), t)),
            Prim::SwapTimes(a, b) => (p(a, b), p(b, a)),
            Prim::AssoclTimes(a, b, c) => (p(a, &p(b, c)), p(&p(a, b), c)),
            Prim::AssocrTimes(a, b, c) => (p(&p(a, b), c), p(a, &p(b, c))),
            Prim::Absorbr(t) => (p(&T::zero(), t), T::zero()),
            Prim::Factorzl(t) => (T::zero(), p(&T::zero(), t)),
            Prim::Dist(a, b, c) => (p(&s(a, b), c), s(&p(a, c), &p(b, c))),
            Prim::Factor(a, b, c) => (s(&p(a, c), &p(b, c)), p(&s(a, b), c)),
        }
    }

    /// The type written after `@` in concrete syntax: the domain, except
    /// for `factorzl` whose domain `0` says nothing, so its codomain is used.
    pub fn annotation(&self) -> T {
        match self {
            Prim::Factorzl(_) => self.cod(),
            _ => self.dom(),
        }
    }

    /// Rebuilds a primitive from its name and [`Prim::annotation`].
    pub fn instantiate(op: PrimOp, at: &T) -> Option<Prim<T>> {
        let sum = |t: &T| match t.view() {
            TyView::Sum(a, b) => Some((a.clone(), b.clone())),
            _ => None,
        };
        let prod = |t: &T| match t.view() {
            TyView::Prod(a, b) => Some((a.clone(), b.clone())),
            _ => None,
        };
        let is_zero = |t: &T| matches!(t.view(), TyView::Zero);
        let is_one = |t: &T| matches!(t.view(), TyView::One);
        Some(match op {
            PrimOp::Id => Prim::Id(at.clone()),
            PrimOp::UnitePlusL => {
                let (z, t) = sum(at)?;
                is_zero(&z).then_some(())?;
                Prim::UnitePlusL(t)
            }
            PrimOp::UnitiPlusL => Prim::UnitiPlusL(at.clone()),
            PrimOp::SwapPlus => {
                let (a, b) = sum(at)?;
                Prim::SwapPlus(a, b)
            }
            PrimOp::AssoclPlus => {
                let (a, bc) = sum(at)?;
                let (b, c) = sum(&bc)?;
                Prim::AssoclPlus(a, b, c)
            }
            PrimOp::AssocrPlus => {
                let (ab, c) = sum(at)?;
                let (a, b) = sum(&ab)?;
                Prim::AssocrPlus(a, b, c)
            }
            PrimOp::UniteTimesL => {
                let (u, t) = prod(at)?;
                is_one(&u).then_some(())?;
                Prim::UniteTimesL(t)
            }
            PrimOp::UnitiTimesL => Prim::UnitiTimesL(at.clone()),
            PrimOp::SwapTimes => {
                let (a, b) = prod(at)?;
                Prim::SwapTimes(a, b)
            }
            PrimOp::AssoclTimes => {
                let (a, bc) = prod(at)?;
                let (b, c) = prod(&bc)?;
                Prim::AssoclTimes(a, b, c)
            }
            PrimOp::AssocrTimes => {
                let (ab, c) = prod(at)?;
                let (a, b) = prod(&ab)?;
                Prim::AssocrTimes(a, b, c)
            }
            PrimOp::Absorbr | PrimOp::Factorzl => {
                let (z, t) = prod(at)?;
                is_zero(&z).then_some(())?;
                if op == PrimOp::Absorbr {
                    Prim::Absorbr(t)
                } else {
                    Prim::Factorzl(t)
                }
            }
            PrimOp::Dist => {
                let (ab, c) = prod(at)?;
                let (a, b) = sum(&ab)?;
                Prim::Dist(a, b, c)
            }
            PrimOp::Factor => {
                let (ac, bc) = sum(at)?;
                let (a, c) = prod(&ac)?;
                let (b, c2) = prod(&bc)?;
                (c == c2).then_some(())?;
                Prim::Factor(a, b, c)
            }
        })
    }

    /// The inverse primitive, with the instantiation adjusted so that
    /// domain and codomain swap.
    pub fn invert(&self) -> Prim<T> {
        match self.clone() {
            Prim::Id(t) => Prim::Id(t),
            Prim::UnitePlusL(t) => Prim::UnitiPlusL(t),
            Prim::UnitiPlusL(t) => Prim::UnitePlusL(t),
            Prim::SwapPlus(a, b) => Prim::SwapPlus(b, a),
            Prim::AssoclPlus(a, b, c) => Prim::AssocrPlus(a, b, c),
            Prim::AssocrPlus(a, b, c) => Prim::AssoclPlus(a, b, c),
            Prim::UniteTimesL(t) => Prim::UnitiTimesL(t),
            Prim::UnitiTimesL(t) => Prim::UniteTimesL(t),
            Prim::SwapTimes(a, b) => Prim::SwapTimes(b, a),
            Prim::AssoclTimes(a, b, c) => Prim::AssocrTimes(a, b, c),
            Prim::AssocrTimes(a, b, c) => Prim::AssoclTimes(a, b, c),
            Prim::Absorbr(t) => Prim::Factorzl(t),
            Prim::Factorzl(t) => Prim::Absorbr(t),
            Prim::Dist(a, b, c) => Prim::Factor(a, b, c),
            Prim::Factor(a, b, c) => Prim::Dist(a, b, c),
        }
    }

    /// Changes the type representation, e.g. to embed core types into a
    /// richer universe.
    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> Prim<U> {
        match self {
            Prim::Id(t) => Prim::Id(f(t)),
            Prim::UnitePlusL(t) => Prim::UnitePlusL(f(t)),
            Prim::UnitiPlusL(t) => Prim::UnitiPlusL(f(t)),
            Prim::SwapPlus(a, b) => Prim::SwapPlus(f(a), f(b)),
            Prim::AssoclPlus(a, b, c) => Prim::AssoclPlus(f(a), f(b), f(c)),
            Prim::AssocrPlus(a, b, c) => Prim::AssocrPlus(f(a), f(b), f(c)),
            Prim::UniteTimesL(t) => Prim::UniteTimesL(f(t)),
            Prim::UnitiTimesL(t) => Prim::UnitiTimesL(f(t)),
            Prim::SwapTimes(a, b) => Prim::SwapTimes(f(a), f(b)),
            Prim::AssoclTimes(a, b, c) => Prim::AssoclTimes(f(a), f(b), f(c)),
            Prim::AssocrTimes(a, b, c) => Prim::AssocrTimes(f(a), f(b), f(c)),
            Prim::Absorbr(t) => Prim::Absorbr(f(t)),
            Prim::Factorzl(t) => Prim::Factorzl(f(t)),
            Prim::Dist(a, b, c) => Prim::Dist(f(a), f(b), f(c)),
            Prim::Factor(a, b, c) => Prim::Factor(f(a), f(b), f(c)),
        }
    }

    /// Instantiation types, in field order.
    pub fn type_args(&self) -> Vec<&T> {
        match self {
            Prim::Id(t)
            | Prim::UnitePlusL(t)
            | Prim::UnitiPlusL(t)
            | Prim::UniteTimesL(t)
            | Prim::UnitiTimesL(t)
            | Prim::Absorbr(t)
            | Prim::Factorzl(t) => vec![t],
            Prim::SwapPlus(a, b) | Prim::SwapTimes(a, b) => vec![a, b],
            Prim::AssoclPlus(a, b, c)
            | Prim::AssocrPlus(a, b, c)
            | Prim::AssoclTimes(a, b, c)
            | Prim::AssocrTimes(a, b, c)
            | Prim::Dist(a, b, c)
            | Prim::Factor(a, b, c) => vec![a, b, c],
        }
    }

    /// Applies the isomorphism to a value of the right shape.
    ///
    /// Returns `None` when the value does not have the shape the primitive
    /// destructs. Component types are not re-checked; callers validate the
    /// input against [`Prim::dom`] once at the top.
    pub fn apply<V: ValueRepr>(&self, v: &V) -> Option<V> {
        use ValView as W;
        let pair = |v: &V| match v.view() {
            W::Pair(a, b) => Some((a.clone(), b.clone())),
            _ => None,
        };
        Some(match self {
            Prim::Id(_) => v.clone(),
            Prim::UnitePlusL(_) => match v.view() {
                W::Inr(x) => x.clone(),
                // inl would carry a value of 0
                _ => return None,
            },
            Prim::UnitiPlusL(_) => V::inr(v.clone()),
            Prim::SwapPlus(..) => match v.view() {
                W::Inl(x) => V::inr(x.clone()),
                W::Inr(x) => V::inl(x.clone()),
                _ => return None,
            },
            Prim::AssoclPlus(..) => match v.view() {
                W::Inl(a) => V::inl(V::inl(a.clone())),
                W::Inr(bc) => match bc.view() {
                    W::Inl(b) => V::inl(V::inr(b.clone())),
                    W::Inr(c) => V::inr(c.clone()),
                    _ => return None,
                },
                _ => return None,
            },
            Prim::AssocrPlus(..) => match v.view() {
                W::Inl(ab) => match ab.view() {
                    W::Inl(a) => V::inl(a.clone()),
                    W::Inr(b) => V::inr(V::inl(b.clone())),
                    _ => return None,
                },
                W::Inr(c) => V::inr(V::inr(c.clone())),
                _ => return None,
            },
            Prim::UniteTimesL(_) => {
                let (u, x) = pair(v)?;
                matches!(u.view(), W::Unit).then_some(())?;
                x
            }
            Prim::UnitiTimesL(_) => V::pair(V::unit(), v.clone()),
            Prim::SwapTimes(..) => {
                let (a, b) = pair(v)?;
                V::pair(b, a)
            }
            Prim::AssoclTimes(..) => {
                let (a, bc) = pair(v)?;
                let (b, c) = pair(&bc)?;
                V::pair(V::pair(a, b), c)
            }
            Prim::AssocrTimes(..) => {
                let (ab, c) = pair(v)?;
                let (a, b) = pair(&ab)?;
                V::pair(a, V::pair(b, c))
            }
            // 0 × t and 0 are empty: there is nothing to map.
            Prim::Absorbr(_) | Prim::Factorzl(_) => return None,
            Prim::Dist(..) => {
                let (ab, c) = pair(v)?;
                match ab.view() {
                    W::Inl(a) => V::inl(V::pair(a.clone(), c)),
                    W::Inr(b) => V::inr(V::pair(b.clone(), c)),
                    _ => return None,
                }
            }
            Prim::Factor(..) => match v.view() {
                W::Inl(ac) => {
                    let (a, c) = pair(ac)?;
                    V::pair(V::inl(a), c)
                }
                W::Inr(bc) => {
                    let (b, c) = pair(bc)?;
                    V::pair(V::inr(b), c)
                }
                _ => return None,
            },
        })
    }
}

impl<T: TypeRepr> fmt::Display for Prim<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} @ {}", self.op(), self.annotation())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Ty, Val};

    fn b() -> Ty {
        Ty::bool()
    }

    #[test]
    fn annotation_round_trips_through_instantiate() {
        let samples = vec![
            Prim::Id(b()),
            Prim::UnitePlusL(b()),
            Prim::UnitiPlusL(b()),
            Prim::SwapPlus(Ty::One, b()),
            Prim::AssoclPlus(Ty::One, b(), Ty::Zero),
            Prim::AssocrPlus(Ty::One, b(), Ty::Zero),
            Prim::UniteTimesL(b()),
            Prim::UnitiTimesL(b()),
            Prim::SwapTimes(b(), Ty::One),
            Prim::AssoclTimes(b(), Ty::One, b()),
            Prim::AssocrTimes(b(), Ty::One, b()),
            Prim::Absorbr(b()),
            Prim::Factorzl(b()),
            Prim::Dist(Ty::One, Ty::One, b()),
            Prim::Factor(Ty::One, Ty::One, b()),
        ];
        for p in samples {
            let back = Prim::instantiate(p.op(), &p.annotation());
            assert_eq!(back.as_ref(), Some(&p), "{p}");
        }
    }

    #[test]
    fn instantiate_rejects_wrong_shapes() {
        assert!(Prim::instantiate(PrimOp::SwapPlus, &Ty::One).is_none());
        assert!(Prim::instantiate(PrimOp::UnitePlusL, &b()).is_none());
        assert!(Prim::instantiate(PrimOp::UniteTimesL, &Ty::prod(b(), b())).is_none());
        let bad_factor = Ty::sum(Ty::prod(Ty::One, b()), Ty::prod(Ty::One, Ty::One));
        assert!(Prim::instantiate(PrimOp::Factor, &bad_factor).is_none());
    }

    #[test]
    fn partner_matches_invert() {
        let p: Prim<Ty> = Prim::Dist(Ty::One, Ty::One, b());
        assert_eq!(p.invert().op(), p.op().partner());
        assert_eq!(p.invert().dom(), p.cod());
        assert_eq!(p.invert().cod(), p.dom());
    }

    #[test]
    fn dist_and_swap_act_on_values() {
        let dist: Prim<Ty> = Prim::Dist(Ty::One, Ty::One, Ty::One);
        let out = dist.apply(&Val::pair(Val::tt(), Val::Unit));
        assert_eq!(out, Some(Val::inr(Val::pair(Val::Unit, Val::Unit))));
        let swap: Prim<Ty> = Prim::SwapPlus(Ty::One, Ty::One);
        assert_eq!(swap.apply(&Val::ff()), Some(Val::tt()));
    }
}
