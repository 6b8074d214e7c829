//! The core reversible language: combinators denoting permutations of
//! finite types.

use std::fmt;

use thiserror::Error;

use crate::prim::Prim;
use crate::{Ty, Val};

/// Position of a sub-term, as the child indices taken from the root.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Path(Vec<u8>);

impl Path {
    pub fn root() -> Path {
        Path(Vec::new())
    }

    pub fn child(&self, i: u8) -> Path {
        let mut steps = self.0.clone();
        steps.push(i);
        Path(steps)
    }

    pub fn steps(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("<root>");
        }
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// A sequential composition whose middle types disagree.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("type mismatch at {at}: expected {expected}, found {found}")]
pub struct TypeMismatch {
    pub at: Path,
    pub expected: Ty,
    pub found: Ty,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error(transparent)]
    Program(#[from] TypeMismatch),
    #[error("ill-typed input: {value} is not a value of {ty}")]
    IllTyped { value: Val, ty: Ty },
}

/// A combinator of the core language.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Comb {
    Prim(Prim<Ty>),
    /// `c₁ ⨾ c₂`
    Seq(Box<Comb>, Box<Comb>),
    /// `c₁ ⊕ c₂`
    Plus(Box<Comb>, Box<Comb>),
    /// `c₁ ⊗ c₂`
    Times(Box<Comb>, Box<Comb>),
}

impl From<Prim<Ty>> for Comb {
    fn from(p: Prim<Ty>) -> Self {
        Comb::Prim(p)
    }
}

impl Comb {
    pub fn id(t: Ty) -> Comb {
        Comb::Prim(Prim::Id(t))
    }

    pub fn seq(self, next: Comb) -> Comb {
        Comb::Seq(Box::new(self), Box::new(next))
    }

    pub fn plus(self, other: Comb) -> Comb {
        Comb::Plus(Box::new(self), Box::new(other))
    }

    pub fn times(self, other: Comb) -> Comb {
        Comb::Times(Box::new(self), Box::new(other))
    }

    /// Left-nested sequence of the given steps; panics on an empty list.
    pub fn seq_all(steps: impl IntoIterator<Item = Comb>) -> Comb {
        let mut it = steps.into_iter();
        let first = it.next().expect("empty sequence");
        it.fold(first, Comb::seq)
    }

    /// Domain and codomain.
    pub fn infer(&self) -> Result<(Ty, Ty), TypeMismatch> {
        self.infer_at(&Path::root())
    }

    fn infer_at(&self, at: &Path) -> Result<(Ty, Ty), TypeMismatch> {
        match self {
            Comb::Prim(p) => Ok(p.dom_cod()),
            Comb::Seq(a, b) => {
                let (d1, c1) = a.infer_at(&at.child(0))?;
                let (d2, c2) = b.infer_at(&at.child(1))?;
                if c1 != d2 {
                    return Err(TypeMismatch {
                        at: at.clone(),
                        expected: c1,
                        found: d2,
                    });
                }
                Ok((d1, c2))
            }
            Comb::Plus(a, b) => {
                let (d1, c1) = a.infer_at(&at.child(0))?;
                let (d2, c2) = b.infer_at(&at.child(1))?;
                Ok((Ty::sum(d1, d2), Ty::sum(c1, c2)))
            }
            Comb::Times(a, b) => {
                let (d1, c1) = a.infer_at(&at.child(0))?;
                let (d2, c2) = b.infer_at(&at.child(1))?;
                Ok((Ty::prod(d1, d2), Ty::prod(c1, c2)))
            }
        }
    }

    /// Runs the combinator forwards on a value of its domain.
    pub fn eval(&self, v: &Val) -> Result<Val, EvalError> {
        let (dom, _) = self.infer()?;
        if !v.has_type(&dom) {
            return Err(EvalError::IllTyped {
                value: v.clone(),
                ty: dom,
            });
        }
        Ok(self
            .run(v)
            .expect("well-typed input to a well-typed combinator"))
    }

    /// Evaluation without the up-front type check. `None` means the value
    /// did not have the shape some step expected.
    pub(crate) fn run(&self, v: &Val) -> Option<Val> {
        match self {
            Comb::Prim(p) => p.apply(v),
            Comb::Seq(a, b) => b.run(&a.run(v)?),
            Comb::Plus(a, b) => match v {
                Val::Inl(x) => Some(Val::inl(a.run(x)?)),
                Val::Inr(x) => Some(Val::inr(b.run(x)?)),
                _ => None,
            },
            Comb::Times(a, b) => match v {
                Val::Pair(x, y) => Some(Val::pair(a.run(x)?, b.run(y)?)),
                _ => None,
            },
        }
    }

    /// The syntactic inverse.
    pub fn invert(&self) -> Comb {
        match self {
            Comb::Prim(p) => Comb::Prim(p.invert()),
            Comb::Seq(a, b) => b.invert().seq(a.invert()),
            Comb::Plus(a, b) => a.invert().plus(b.invert()),
            Comb::Times(a, b) => a.invert().times(b.invert()),
        }
    }

    /// Number of nodes in the combinator tree.
    pub fn node_count(&self) -> usize {
        match self {
            Comb::Prim(_) => 1,
            Comb::Seq(a, b) | Comb::Plus(a, b) | Comb::Times(a, b) => {
                1 + a.node_count() + b.node_count()
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Comb::Prim(_) => 0,
            Comb::Seq(a, b) | Comb::Plus(a, b) | Comb::Times(a, b) => 1 + a.depth().max(b.depth()),
        }
    }
}

/// `𝔹 × t ↔ 𝔹 × t` applying `c` to the payload only when the control is `𝕋`.
///
/// Built as `dist ⨾ (id ⊕ (id ⊗ c)) ⨾ factor`; with `𝔽 = inl tt` the left
/// summand is the pass-through branch.
pub fn controlled(c: &Comb) -> Result<Comb, TypeMismatch> {
    let (dom, cod) = c.infer()?;
    if dom != cod {
        return Err(TypeMismatch {
            at: Path::root(),
            expected: dom,
            found: cod,
        });
    }
    let one = || Ty::One;
    let dist = Comb::Prim(Prim::Dist(one(), one(), dom.clone()));
    let factor = Comb::Prim(Prim::Factor(one(), one(), dom.clone()));
    let off = Comb::id(Ty::prod(one(), dom));
    let on = Comb::id(one()).times(c.clone());
    Ok(Comb::seq_all([dist, off.plus(on), factor]))
}

/// Boolean negation, `swap₊` at `1 + 1`.
pub fn not() -> Comb {
    Comb::Prim(Prim::SwapPlus(Ty::One, Ty::One))
}

pub fn cnot() -> Comb {
    controlled(&not()).expect("NOT is an endomorphism")
}

/// Three-bit Toffoli on `𝔹 × (𝔹 × 𝔹)`; flips the last bit when the first two are `𝕋`.
pub fn toffoli() -> Comb {
    controlled(&cnot()).expect("CNOT is an endomorphism")
}

impl fmt::Display for Comb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Comb::Prim(p) => write!(f, "{p}"),
            Comb::Seq(a, b) => write!(f, "(; {a} {b})"),
            Comb::Plus(a, b) => write!(f, "(p+ {a} {b})"),
            Comb::Times(a, b) => write!(f, "(p* {a} {b})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> Ty {
        Ty::bool()
    }

    fn bits(bs: &[bool]) -> Val {
        Val::bits(bs)
    }

    #[test]
    fn infer_primitives() {
        assert_eq!(not().infer().unwrap(), (b(), b()));
        let dist = Comb::Prim(Prim::Dist(Ty::One, Ty::One, b()));
        let expected = (
            Ty::prod(b(), b()),
            Ty::sum(Ty::prod(Ty::One, b()), Ty::prod(Ty::One, b())),
        );
        assert_eq!(dist.infer().unwrap(), expected);
    }

    #[test]
    fn infer_rejects_bad_seq() {
        let err = not().seq(Comb::id(Ty::One)).infer().unwrap_err();
        assert_eq!(
            err,
            TypeMismatch {
                at: Path::root(),
                expected: b(),
                found: Ty::One
            }
        );
    }

    #[test]
    fn mismatch_location_points_at_inner_seq() {
        let bad = Comb::id(b()).times(not().seq(Comb::id(Ty::One)));
        let err = bad.infer().unwrap_err();
        assert_eq!(err.at, Path::root().child(1));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(not().eval(&Val::ff()).unwrap(), Val::tt());
        let unite = Comb::Prim(Prim::UniteTimesL(b()));
        assert_eq!(
            unite.eval(&Val::pair(Val::Unit, Val::tt())).unwrap(),
            Val::tt()
        );
        let dist = Comb::Prim(Prim::Dist(Ty::One, Ty::One, Ty::One));
        assert_eq!(
            dist.eval(&Val::pair(Val::tt(), Val::Unit)).unwrap(),
            Val::inr(Val::pair(Val::Unit, Val::Unit))
        );
    }

    #[test]
    fn eval_rejects_ill_typed_input() {
        assert!(matches!(
            not().eval(&Val::Unit),
            Err(EvalError::IllTyped { .. })
        ));
    }

    #[test]
    fn absorbr_is_vacuous() {
        let c = Comb::Prim(Prim::Absorbr(b()));
        let (dom, _) = c.infer().unwrap();
        assert!(dom.enumerate().is_empty());
        // any value offered is ill-typed
        assert!(c.eval(&Val::pair(Val::Unit, Val::ff())).is_err());
    }

    #[test]
    fn invert_examples() {
        let dist = Comb::Prim(Prim::Dist(Ty::One, Ty::One, b()));
        assert_eq!(
            dist.invert(),
            Comb::Prim(Prim::Factor(Ty::One, Ty::One, b()))
        );
        let ss = not().seq(not());
        assert_eq!(ss.invert(), ss);
        assert_eq!(toffoli().invert().invert(), toffoli());
    }

    #[test]
    fn controlled_rejects_non_endomorphism() {
        let c = Comb::Prim(Prim::UnitiTimesL(b()));
        assert!(controlled(&c).is_err());
    }

    /// Brute-force truth table for CNOT, computed from the bit-level rule.
    #[test]
    fn cnot_truth_table() {
        let c = cnot();
        assert_eq!(c.infer().unwrap(), (Ty::bits(2), Ty::bits(2)));
        for x in [false, true] {
            for y in [false, true] {
                let got = c.eval(&bits(&[x, y])).unwrap();
                assert_eq!(got, bits(&[x, y ^ x]), "CNOT({x},{y})");
            }
        }
    }

    #[test]
    fn toffoli_truth_table() {
        let t = toffoli();
        assert_eq!(t.infer().unwrap(), (Ty::bits(3), Ty::bits(3)));
        let mut flipped = 0;
        for x in [false, true] {
            for y in [false, true] {
                for z in [false, true] {
                    let got = t.eval(&bits(&[x, y, z])).unwrap();
                    assert_eq!(got, bits(&[x, y, z ^ (x && y)]));
                    flipped += usize::from(got != bits(&[x, y, z]));
                }
            }
        }
        assert_eq!(flipped, 2);
    }
}
