//! Extraction from pointed programs to fractional programs.
//!
//! Foci become the concrete values handed to `η` and `ε`, singletons are
//! erased to their underlying type, and collectors become `1/v` with the
//! token as value. The structural combinators of the singleton (co)monad
//! change nothing at runtime and extract to identities.

use crate::frac::{CombD, TyD, ValD};
use crate::pointed::{PtComb, PtNode, PtTy, PtVal};
use crate::prim::Prim;

/// An extracted type together with the value its focus becomes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtResult {
    pub ty: TyD,
    pub val: ValD,
}

pub fn ext_ty(t: &PtTy) -> ExtResult {
    match t {
        PtTy::Pt(t, v) => ExtResult {
            ty: TyD::from(t),
            val: ValD::from(v),
        },
        PtTy::Prod(a, b) => {
            let (a, b) = (ext_ty(a), ext_ty(b));
            ExtResult {
                ty: TyD::prod(a.ty, b.ty),
                val: ValD::pair(a.val, b.val),
            }
        }
        PtTy::Sing(t) => ext_ty(t),
        PtTy::Recip(t) => {
            let inner = ext_ty(t);
            ExtResult {
                ty: TyD::frac(inner.ty, inner.val),
                val: ValD::Gc,
            }
        }
    }
}

/// Drops singleton wrappers, mapping a pointed carrier to a runtime value.
pub fn erase(v: &PtVal) -> ValD {
    match v {
        PtVal::Val(v) => ValD::from(v),
        PtVal::Pair(a, b) => ValD::pair(erase(a), erase(b)),
        PtVal::Sing(v) => erase(v),
        PtVal::Gc => ValD::Gc,
    }
}

pub fn ext_comb(c: &PtComb) -> CombD {
    let ty = |t: &PtTy| ext_ty(t).ty;
    let id_at = |t: &PtTy| CombD::id(ty(t));
    let prod_parts = |t: &PtTy| match t {
        PtTy::Prod(a, b) => ((**a).clone(), (**b).clone()),
        _ => unreachable!("checked at construction: {t}"),
    };
    match c.node() {
        PtNode::Lift(comb, _) => CombD::from(comb),
        PtNode::Seq(a, b) => ext_comb(a).seq(ext_comb(b)),
        PtNode::Times(a, b) => ext_comb(a).times(ext_comb(b)),
        PtNode::SingMap(f) => ext_comb(f),
        PtNode::Id
        | PtNode::Split
        | PtNode::Merge
        | PtNode::Return
        | PtNode::Extract
        | PtNode::TensorSing
        | PtNode::CotensorSing
        | PtNode::JoinSing
        | PtNode::DuplicateSing => id_at(c.dom()),
        PtNode::SwapTimes => {
            let (a, b) = prod_parts(c.dom());
            CombD::Prim(Prim::SwapTimes(ty(&a), ty(&b)))
        }
        PtNode::AssoclTimes => {
            let (a, bc) = prod_parts(c.dom());
            let (b, cc) = prod_parts(&bc);
            CombD::Prim(Prim::AssoclTimes(ty(&a), ty(&b), ty(&cc)))
        }
        PtNode::AssocrTimes => {
            let (ab, cc) = prod_parts(c.dom());
            let (a, b) = prod_parts(&ab);
            CombD::Prim(Prim::AssocrTimes(ty(&a), ty(&b), ty(&cc)))
        }
        PtNode::UniteTimesL => CombD::Prim(Prim::UniteTimesL(ty(c.cod()))),
        PtNode::UnitiTimesL => CombD::Prim(Prim::UnitiTimesL(ty(c.dom()))),
        PtNode::Eta(t) => {
            let e = ext_ty(t);
            CombD::Eta(e.val, e.ty)
        }
        PtNode::Eps(t) => {
            let e = ext_ty(t);
            CombD::Eps(e.val, e.ty)
        }
    }
}

/// Outcome of running an extracted program on its extracted input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtCheck {
    pub input: ValD,
    pub expected: ValD,
    /// `None` if the extracted program raised the deallocation exception.
    pub got: Option<ValD>,
}

impl ExtCheck {
    pub fn passed(&self) -> bool {
        self.got.as_ref() == Some(&self.expected)
    }
}

/// Runs `ext_comb(c)` on the extracted domain focus.
pub fn check_ext_detail(c: &PtComb) -> ExtCheck {
    let input = ext_ty(c.dom()).val;
    let expected = ext_ty(c.cod()).val;
    let got = ext_comb(c)
        .eval(&input)
        .expect("extraction preserves typing");
    ExtCheck {
        input,
        expected,
        got,
    }
}

/// True iff the extracted program returns a value, and the one predicted by
/// the pointed codomain.
pub fn check_ext(c: &PtComb) -> bool {
    check_ext_detail(c).passed()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comb::{not, toffoli};
    use crate::pointed::revrev;
    use crate::{Ty, Val};

    fn pt(b: bool) -> PtTy {
        PtTy::bool(b)
    }

    #[test]
    fn ext_ty_cases() {
        assert_eq!(
            ext_ty(&pt(true)),
            ExtResult {
                ty: TyD::bool(),
                val: ValD::tt()
            }
        );
        assert_eq!(
            ext_ty(&PtTy::recip(pt(false))),
            ExtResult {
                ty: TyD::frac(TyD::bool(), ValD::ff()),
                val: ValD::Gc
            }
        );
        assert_eq!(ext_ty(&PtTy::sing(pt(false))), ext_ty(&pt(false)));
    }

    #[test]
    fn ext_comb_cases() {
        assert_eq!(
            ext_comb(&PtComb::eta(pt(false)).unwrap()),
            CombD::Eta(ValD::ff(), TyD::bool())
        );
        let swap = PtComb::swap_times(pt(true), pt(false)).unwrap();
        assert_eq!(
            ext_comb(&swap),
            CombD::Prim(Prim::SwapTimes(TyD::bool(), TyD::bool()))
        );
        assert_eq!(
            ext_comb(&PtComb::ret(pt(true)).unwrap()),
            CombD::id(TyD::bool())
        );
        assert_eq!(
            ext_comb(&PtComb::lift(&not(), Val::ff()).unwrap()),
            CombD::from(&not())
        );
    }

    #[test]
    fn check_ext_examples() {
        let c = PtComb::eta(pt(false))
            .unwrap()
            .seq(PtComb::eps(pt(false)).unwrap())
            .unwrap();
        assert!(check_ext(&c));
        for v in Ty::bits(3).enumerate() {
            assert!(check_ext(&PtComb::lift(&toffoli(), v).unwrap()));
        }
        assert!(check_ext(&revrev(&pt(true)).unwrap()));
    }

    #[test]
    fn types_cohere() {
        let r = revrev(&pt(false)).unwrap();
        let (d, c) = ext_comb(&r).infer().unwrap();
        assert_eq!(d, ext_ty(r.dom()).ty);
        assert_eq!(c, ext_ty(r.cod()).ty);
    }
}
