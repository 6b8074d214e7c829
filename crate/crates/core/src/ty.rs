//! Finite types and their canonical values.
//!
//! Types are built from `0`, `1`, sums and products. Every type is finite,
//! so its values can be listed exhaustively; [`Ty::enumerate`] fixes an order
//! (left summands before right, products row-major) that the rest of the
//! crate relies on for reproducible truth tables.

use std::fmt;

/// A finite type: `0 | 1 | t + t | t × t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ty {
    Zero,
    One,
    Sum(Box<Ty>, Box<Ty>),
    Prod(Box<Ty>, Box<Ty>),
}

/// A closed value in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Val {
    Unit,
    Inl(Box<Val>),
    Inr(Box<Val>),
    Pair(Box<Val>, Box<Val>),
}

impl Ty {
    pub fn sum(a: Ty, b: Ty) -> Ty {
        Ty::Sum(Box::new(a), Box::new(b))
    }

    pub fn prod(a: Ty, b: Ty) -> Ty {
        Ty::Prod(Box::new(a), Box::new(b))
    }

    /// The boolean type `1 + 1`.
    pub fn bool() -> Ty {
        Ty::sum(Ty::One, Ty::One)
    }

    /// `𝔹 × (𝔹 × … × 𝔹)` with `n ≥ 1` bits, nested to the right.
    pub fn bits(n: usize) -> Ty {
        assert!(n >= 1, "bit vectors need at least one bit");
        (1..n).fold(Ty::bool(), |acc, _| Ty::prod(Ty::bool(), acc))
    }

    /// Number of distinct values of the type.
    pub fn size(&self) -> u64 {
        match self {
            Ty::Zero => 0,
            Ty::One => 1,
            Ty::Sum(a, b) => a.size() + b.size(),
            Ty::Prod(a, b) => a.size() * b.size(),
        }
    }

    /// All values of the type, without duplicates, in the canonical order.
    pub fn enumerate(&self) -> Vec<Val> {
        match self {
            Ty::Zero => Vec::new(),
            Ty::One => vec![Val::Unit],
            Ty::Sum(a, b) => a
                .enumerate()
                .into_iter()
                .map(Val::inl)
                .chain(b.enumerate().into_iter().map(Val::inr))
                .collect(),
            Ty::Prod(a, b) => {
                let rights = b.enumerate();
                let mut out = Vec::with_capacity(rights.len() * a.size() as usize);
                for l in a.enumerate() {
                    for r in &rights {
                        out.push(Val::pair(l.clone(), r.clone()));
                    }
                }
                out
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Ty::Zero | Ty::One => 0,
            Ty::Sum(a, b) | Ty::Prod(a, b) => 1 + a.depth().max(b.depth()),
        }
    }
}

impl Val {
    pub fn inl(v: Val) -> Val {
        Val::Inl(Box::new(v))
    }

    pub fn inr(v: Val) -> Val {
        Val::Inr(Box::new(v))
    }

    pub fn pair(a: Val, b: Val) -> Val {
        Val::Pair(Box::new(a), Box::new(b))
    }

    /// `𝔽`, i.e. `inl tt`.
    pub fn ff() -> Val {
        Val::inl(Val::Unit)
    }

    /// `𝕋`, i.e. `inr tt`.
    pub fn tt() -> Val {
        Val::inr(Val::Unit)
    }

    pub fn from_bool(b: bool) -> Val {
        if b {
            Val::tt()
        } else {
            Val::ff()
        }
    }

    /// Reads a boolean back, `None` if the value is not `inl tt` / `inr tt`.
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Val::Inl(v) if **v == Val::Unit => Some(false),
            Val::Inr(v) if **v == Val::Unit => Some(true),
            _ => None,
        }
    }

    /// Right-nested bit vector `(b0, (b1, (… , bn)))`.
    pub fn bits(bs: &[bool]) -> Val {
        let (last, init) = bs.split_last().expect("at least one bit");
        init.iter().rev().fold(Val::from_bool(*last), |acc, b| {
            Val::pair(Val::from_bool(*b), acc)
        })
    }

    /// Inverse of [`Val::bits`].
    pub fn as_bits(&self) -> Option<Vec<bool>> {
        let mut out = Vec::new();
        let mut cur = self;
        loop {
            match cur {
                Val::Pair(a, b) => {
                    out.push(a.as_bool()?);
                    cur = b;
                }
                other => {
                    out.push(other.as_bool()?);
                    return Some(out);
                }
            }
        }
    }

    pub fn has_type(&self, ty: &Ty) -> bool {
        match (self, ty) {
            (Val::Unit, Ty::One) => true,
            (Val::Inl(v), Ty::Sum(a, _)) => v.has_type(a),
            (Val::Inr(v), Ty::Sum(_, b)) => v.has_type(b),
            (Val::Pair(x, y), Ty::Prod(a, b)) => x.has_type(a) && y.has_type(b),
            _ => false,
        }
    }
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ty::Zero => f.write_str("0"),
            Ty::One => f.write_str("1"),
            Ty::Sum(a, b) => write!(f, "(+ {a} {b})"),
            Ty::Prod(a, b) => write!(f, "(* {a} {b})"),
        }
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Unit => f.write_str("tt"),
            Val::Inl(v) => write!(f, "(inl {v})"),
            Val::Inr(v) => write!(f, "(inr {v})"),
            Val::Pair(a, b) => write!(f, "({a} , {b})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> Ty {
        Ty::bool()
    }

    #[test]
    fn sizes() {
        assert_eq!(Ty::Zero.size(), 0);
        assert_eq!(Ty::One.size(), 1);
        assert_eq!(b().size(), 2);
        assert_eq!(Ty::prod(b(), Ty::prod(b(), b())).size(), 8);
        assert_eq!(Ty::prod(Ty::Zero, b()).size(), 0);
    }

    #[test]
    fn enumerate_small_types() {
        assert!(Ty::Zero.enumerate().is_empty());
        assert_eq!(Ty::One.enumerate(), vec![Val::Unit]);
        assert_eq!(b().enumerate(), vec![Val::ff(), Val::tt()]);
    }

    #[test]
    fn enumerate_products_row_major() {
        let got = Ty::prod(b(), b()).enumerate();
        let want = vec![
            Val::pair(Val::ff(), Val::ff()),
            Val::pair(Val::ff(), Val::tt()),
            Val::pair(Val::tt(), Val::ff()),
            Val::pair(Val::tt(), Val::tt()),
        ];
        assert_eq!(got, want);
    }

    #[test]
    fn has_type_cases() {
        assert!(Val::Unit.has_type(&Ty::One));
        assert!(!Val::ff().has_type(&Ty::One));
        assert!(Val::pair(Val::ff(), Val::Unit).has_type(&Ty::prod(b(), Ty::One)));
        assert!(!Val::Unit.has_type(&Ty::Zero));
    }

    #[test]
    fn value_equality() {
        assert_eq!(Val::Unit, Val::Unit);
        assert_ne!(Val::ff(), Val::tt());
        assert_eq!(
            Val::pair(Val::Unit, Val::Unit),
            Val::pair(Val::Unit, Val::Unit)
        );
    }

    #[test]
    fn bit_vectors() {
        let v = Val::bits(&[true, false, true]);
        assert_eq!(v, Val::pair(Val::tt(), Val::pair(Val::ff(), Val::tt())));
        assert!(v.has_type(&Ty::bits(3)));
        assert_eq!(v.as_bits(), Some(vec![true, false, true]));
    }
}
