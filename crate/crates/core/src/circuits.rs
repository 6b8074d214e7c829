//! Named circuits: the worked examples, each with a reference function, a
//! fractional program, and where one exists a pointed family whose
//! extraction must agree with it.

use std::fmt;

use crate::comb::{cnot, not, toffoli, Comb};
use crate::extract::{check_ext_detail, ext_comb, ext_ty};
use crate::frac::{id_via_ancilla, reclaim_input, revx, CombD, TyD, ValD};
use crate::pointed::{revrev, PtComb, PtError, PtTy};
use crate::route::{route, Layout};
use crate::{Ty, Val};

/// Builds pointed programs wire by wire.
///
/// The state is a product of pointed wires arranged as `layout`; every
/// operation routes the wires it needs next to each other, acts on them, and
/// leaves the others untouched. Routing depends only on layouts, never on
/// foci, so programs built for different inputs extract identically.
pub struct PtWires {
    layout: Layout,
    objs: Vec<PtTy>,
    prog: Option<PtComb>,
    input: PtTy,
}

/// Splits `t # (v₁, (v₂, …))` into one pointed wire per component.
fn split_list(t: &PtTy) -> Result<Option<PtComb>, PtError> {
    match t {
        PtTy::Pt(Ty::Prod(..), Val::Pair(..)) => {
            let split = PtComb::split(t.clone())?;
            let PtTy::Prod(head, rest) = split.cod().clone() else {
                unreachable!()
            };
            match split_list(&rest)? {
                None => Ok(Some(split)),
                Some(inner) => Ok(Some(split.seq(PtComb::id(*head)?.times(inner))?)),
            }
        }
        _ => Ok(None),
    }
}

/// The single pointed wire that [`split_list`] would split into `parts`.
fn merged(parts: &[PtTy]) -> PtTy {
    let (last, init) = parts.split_last().expect("nonempty");
    init.iter()
        .rev()
        .fold(last.clone(), |acc, p| match (p, acc) {
            (PtTy::Pt(t, v), PtTy::Pt(u, w)) => {
                PtTy::Pt(Ty::prod(t.clone(), u), Val::pair(v.clone(), w))
            }
            _ => panic!("only plain pointed wires merge"),
        })
}

impl PtWires {
    /// Starts from a right-nested pointed product, one wire per component.
    pub fn new(input: PtTy) -> Result<PtWires, PtError> {
        input.check()?;
        let prog = split_list(&input)?;
        let mut objs = Vec::new();
        let mut cur = prog
            .as_ref()
            .map(|p| p.cod().clone())
            .unwrap_or(input.clone());
        while let PtTy::Prod(a, b) = cur {
            objs.push(*a);
            cur = *b;
        }
        objs.push(cur);
        let wires: Vec<usize> = (0..objs.len()).collect();
        Ok(PtWires {
            layout: Layout::list(&wires),
            objs,
            prog,
            input,
        })
    }

    pub fn wire(&self, w: usize) -> &PtTy {
        &self.objs[w]
    }

    fn state(&self) -> PtTy {
        self.layout.obj::<PtComb>(&self.objs)
    }

    fn push(&mut self, step: Option<PtComb>) -> Result<(), PtError> {
        self.prog = match (self.prog.take(), step) {
            (None, s) | (s, None) => s,
            (Some(p), Some(s)) => Some(p.seq(s)?),
        };
        Ok(())
    }

    fn route_to(&mut self, target: Layout) -> Result<(), PtError> {
        let step = route::<PtComb>(&self.layout, &target, &self.objs)?;
        self.push(step)?;
        self.layout = target;
        Ok(())
    }

    /// Brings `group` to the front as a list, the rest following in order.
    /// Returns the layout of the rest, if any wire is left over.
    fn gather(&mut self, group: &[usize]) -> Result<Option<Layout>, PtError> {
        let rest: Vec<usize> = self
            .layout
            .wires()
            .into_iter()
            .filter(|w| !group.contains(w))
            .collect();
        let rest_layout = (!rest.is_empty()).then(|| Layout::list(&rest));
        let target = match &rest_layout {
            None => Layout::list(group),
            Some(r) => Layout::pair(Layout::list(group), r.clone()),
        };
        self.route_to(target)?;
        Ok(rest_layout)
    }

    fn alongside(&self, f: PtComb, rest: &Option<Layout>) -> Result<PtComb, PtError> {
        Ok(match rest {
            None => f,
            Some(r) => f.times(PtComb::id(r.obj::<PtComb>(&self.objs))?),
        })
    }

    /// Applies a core gate to the listed wires, in order.
    pub fn gate(&mut self, wires: &[usize], gate: &Comb) -> Result<(), PtError> {
        let rest = self.gather(wires)?;
        let parts: Vec<PtTy> = wires.iter().map(|w| self.objs[*w].clone()).collect();
        let joined = merged(&parts);
        let PtTy::Pt(_, v) = &joined else {
            unreachable!()
        };
        let lift = PtComb::lift(gate, v.clone())?;
        let mut local = lift.clone();
        if let Some(split) = split_list(lift.cod())? {
            local = local.seq(split)?;
            local = split_list(&joined)?
                .expect("same shape")
                .invert()
                .seq(local)?;
        }
        let outs = flatten_parts(local.cod(), parts.len());
        for (w, o) in wires.iter().zip(outs) {
            self.objs[*w] = o;
        }
        let step = self.alongside(local, &rest)?;
        self.push(Some(step))
    }

    /// Allocates an ancilla with focus `anc`; returns `(ancilla, collector)` wires.
    pub fn alloc(&mut self, anc: PtTy) -> Result<(usize, usize), PtError> {
        let a = self.objs.len();
        let r = a + 1;
        let state = self.state();
        let recip = PtTy::recip(anc.clone());
        let step = PtComb::seq_all([
            PtComb::uniti_times_l(state.clone())?,
            PtComb::eta(anc.clone())?.times(PtComb::id(state.clone())?),
            PtComb::extract(anc.clone())?
                .times(PtComb::id(recip.clone())?)
                .times(PtComb::id(state)?),
        ])?;
        self.push(Some(step))?;
        self.objs.push(anc);
        self.objs.push(recip);
        self.layout = Layout::pair(
            Layout::pair(Layout::Wire(a), Layout::Wire(r)),
            self.layout.clone(),
        );
        Ok((a, r))
    }

    /// Collects wire `w` with collector `r`. Fails with a focus mismatch unless
    /// `w` currently holds exactly the value `r` was made for.
    pub fn collect(&mut self, w: usize, r: usize) -> Result<(), PtError> {
        let PtTy::Recip(expected) = self.objs[r].clone() else {
            return Err(PtError::Shape {
                combinator: "collect",
                ty: self.objs[r].clone(),
            });
        };
        let rest = self
            .gather(&[w, r])?
            .expect("collecting needs other wires to remain");
        let rest_obj = rest.obj::<PtComb>(&self.objs);
        let step = PtComb::seq_all([
            PtComb::ret(self.objs[w].clone())?
                .times(PtComb::id(self.objs[r].clone())?)
                .times(PtComb::id(rest_obj.clone())?),
            PtComb::eps(*expected)?.times(PtComb::id(rest_obj.clone())?),
            PtComb::unite_times_l(rest_obj)?,
        ])?;
        self.push(Some(step))?;
        self.layout = rest;
        Ok(())
    }

    /// Arranges `wires` as a right-nested list and merges them into one
    /// pointed value; every other wire must already be gone.
    pub fn finish(mut self, wires: &[usize]) -> Result<PtComb, PtError> {
        self.route_to(Layout::list(wires))?;
        let parts: Vec<PtTy> = wires.iter().map(|w| self.objs[*w].clone()).collect();
        let merge = split_list(&merged(&parts))?.map(|s| s.invert());
        self.push(merge)?;
        Ok(match self.prog {
            Some(p) => p,
            None => PtComb::id(self.input)?,
        })
    }
}

fn flatten_parts(t: &PtTy, n: usize) -> Vec<PtTy> {
    let mut out = Vec::with_capacity(n);
    let mut cur = t.clone();
    while out.len() + 1 < n {
        let PtTy::Prod(a, b) = cur else { break };
        out.push(*a);
        cur = *b;
    }
    out.push(cur);
    out
}

/// Reference function of a circuit; `None` marks an expected exception.
pub type Reference = Box<dyn Fn(&ValD) -> Option<ValD> + Send + Sync>;
/// Pointed program for one input value.
pub type PointedFamily = Box<dyn Fn(&ValD) -> Result<PtComb, PtError> + Send + Sync>;

pub struct NamedCircuit {
    pub name: &'static str,
    pub summary: &'static str,
    pub dynamic: CombD,
    reference: Reference,
    pointed: Option<PointedFamily>,
}

impl fmt::Debug for NamedCircuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NamedCircuit")
            .field("name", &self.name)
            .field("dynamic", &self.dynamic)
            .field("pointed", &self.pointed.is_some())
            .finish()
    }
}

/// Result of checking one input.
#[derive(Clone, Debug)]
pub struct RowReport {
    pub input: ValD,
    pub expected: Option<ValD>,
    pub got: Option<ValD>,
    /// Running the inverse on the output gives the input back (vacuous on exceptions).
    pub round_trip: bool,
    /// For pointed circuits: the extracted program ran without exception,
    /// produced the predicted value, and agreed with `dynamic`.
    pub extraction: Option<Result<bool, PtError>>,
}

impl RowReport {
    pub fn passed(&self) -> bool {
        self.got == self.expected
            && self.round_trip
            && !matches!(self.extraction, Some(Err(_)) | Some(Ok(false)))
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub name: &'static str,
    pub rows: Vec<RowReport>,
    /// For pointed circuits: every input extracts to the same program.
    pub uniform_extraction: Option<bool>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(RowReport::passed) && self.uniform_extraction != Some(false)
    }

    pub fn rows_passed(&self) -> usize {
        self.rows.iter().filter(|r| r.passed()).count()
    }
}

impl NamedCircuit {
    pub fn reference(&self, v: &ValD) -> Option<ValD> {
        (self.reference)(v)
    }

    pub fn has_pointed(&self) -> bool {
        self.pointed.is_some()
    }

    pub fn pointed(&self, v: &ValD) -> Option<Result<PtComb, PtError>> {
        self.pointed.as_ref().map(|f| f(v))
    }

    pub fn dom(&self) -> TyD {
        self.dynamic
            .infer()
            .expect("gallery circuits are well typed")
            .0
    }

    /// Extraction of the pointed program at the first input of the domain.
    pub fn extracted(&self) -> Option<Result<CombD, PtError>> {
        let first = self.dom().enumerate().into_iter().next()?;
        self.pointed(&first).map(|r| r.map(|p| ext_comb(&p)))
    }

    /// Checks every input of the domain against the reference, the inverse,
    /// and (if present) the pointed family and its extraction.
    pub fn verify(&self) -> Report {
        let inverse = self.dynamic.invert();
        let mut extracted: Vec<CombD> = Vec::new();
        let rows = self
            .dom()
            .enumerate()
            .into_iter()
            .map(|input| {
                let expected = self.reference(&input);
                let got = self.dynamic.eval(&input).expect("typed input");
                let round_trip = match &got {
                    Some(out) => inverse.eval(out).expect("typed output") == Some(input.clone()),
                    None => true,
                };
                let extraction = self.pointed(&input).map(|p| {
                    p.map(|p| {
                        let check = check_ext_detail(&p);
                        let ext = ext_comb(&p);
                        let agrees =
                            ext_ty(p.dom()).val == input && check.passed() && check.got == got;
                        extracted.push(ext);
                        agrees
                    })
                });
                RowReport {
                    input,
                    expected,
                    got,
                    round_trip,
                    extraction,
                }
            })
            .collect();
        let uniform_extraction = self
            .has_pointed()
            .then(|| extracted.windows(2).all(|w| w[0] == w[1]));
        Report {
            name: self.name,
            rows,
            uniform_extraction,
        }
    }
}

fn core_input(v: &ValD) -> Val {
    v.to_core().expect("core circuits take core values")
}

fn lifted(c: Comb) -> PointedFamily {
    Box::new(move |v| PtComb::lift(&c, core_input(v)))
}

fn bits_ref(f: impl Fn(&[bool]) -> Vec<bool> + Send + Sync + 'static) -> Reference {
    Box::new(move |v| {
        let bits = core_input(v).as_bits().expect("bit vector");
        Some(ValD::from(&Val::bits(&f(&bits))))
    })
}

pub fn not_gate() -> NamedCircuit {
    NamedCircuit {
        name: "not",
        summary: "boolean negation (swap+ at 1 + 1)",
        dynamic: CombD::from(&not()),
        reference: bits_ref(|b| vec![!b[0]]),
        pointed: Some(lifted(not())),
    }
}

pub fn cnot_gate() -> NamedCircuit {
    NamedCircuit {
        name: "cnot",
        summary: "controlled NOT on 𝔹 × 𝔹",
        dynamic: CombD::from(&cnot()),
        reference: bits_ref(|b| vec![b[0], b[1] ^ b[0]]),
        pointed: Some(lifted(cnot())),
    }
}

/// The three-bit Toffoli gate, verified pointwise by lifting it at each input.
pub fn toffoli3_verified() -> NamedCircuit {
    NamedCircuit {
        name: "toffoli",
        summary: "3-bit Toffoli, lifted at each of its 8 inputs",
        dynamic: CombD::from(&toffoli()),
        reference: bits_ref(|b| vec![b[0], b[1], b[2] ^ (b[0] && b[1])]),
        pointed: Some(lifted(toffoli())),
    }
}

/// Pointed 4-bit Toffoli on `𝔹 × (𝔹 × (𝔹 × 𝔹))` at input `v`, using one ancilla.
///
/// Wires 0–3 are the inputs, 4 the ancilla and 5 its collector. The ancilla
/// receives `x₁ ∧ x₂`, controls the flip of `x₄` together with `x₃`, and is
/// cleared by repeating the first Toffoli before it is collected.
pub fn toffoli4_pointed(v: &Val) -> Result<PtComb, PtError> {
    let mut w = PtWires::new(PtTy::point(Ty::bits(4), v.clone())?)?;
    let (anc, gc) = w.alloc(PtTy::bool(false))?;
    let t = toffoli();
    w.gate(&[0, 1, anc], &t)?;
    w.gate(&[anc, 2, 3], &t)?;
    w.gate(&[0, 1, anc], &t)?;
    w.collect(anc, gc)?;
    w.finish(&[0, 1, 2, 3])
}

pub fn toffoli4() -> NamedCircuit {
    let first = Ty::bits(4).enumerate().remove(0);
    let dynamic = ext_comb(&toffoli4_pointed(&first).expect("toffoli4 builds"));
    NamedCircuit {
        name: "toffoli4",
        summary: "4-bit Toffoli from three 3-bit Toffolis and one ancilla",
        dynamic,
        reference: bits_ref(|b| vec![b[0], b[1], b[2], b[3] ^ (b[0] && b[1] && b[2])]),
        pointed: Some(Box::new(|v| toffoli4_pointed(&core_input(v)))),
    }
}

/// Pointed identity through an ancilla: the input is moved onto a fresh `𝔽`
/// wire by two CNOTs and the cleared input wire is collected.
pub fn id_via_ancilla_pointed(x: &Val) -> Result<PtComb, PtError> {
    let mut w = PtWires::new(PtTy::point(Ty::bool(), x.clone())?)?;
    let (anc, gc) = w.alloc(PtTy::bool(false))?;
    w.gate(&[0, anc], &cnot())?;
    w.gate(&[anc, 0], &cnot())?;
    w.collect(0, gc)?;
    w.finish(&[anc])
}

pub fn id_via_ancilla_circuit() -> NamedCircuit {
    NamedCircuit {
        name: "id-via-ancilla",
        summary: "identity on 𝔹 that outputs a fresh ancilla and collects the input wire",
        dynamic: id_via_ancilla(),
        reference: Box::new(|v| Some(v.clone())),
        pointed: Some(Box::new(|v| id_via_ancilla_pointed(&core_input(v)))),
    }
}

/// Pointed counterpart of [`reclaim_input`]: it only builds when the input is
/// the value the collector expects.
pub fn reclaim_input_pointed(x: &Val) -> Result<PtComb, PtError> {
    let mut w = PtWires::new(PtTy::point(Ty::bool(), x.clone())?)?;
    let (anc, gc) = w.alloc(PtTy::bool(false))?;
    w.collect(0, gc)?;
    w.finish(&[anc])
}

pub fn reclaim_input_circuit() -> NamedCircuit {
    NamedCircuit {
        name: "reclaim-input",
        summary: "collects its input as if it were the ancilla 𝔽; throws on 𝕋",
        dynamic: reclaim_input(),
        reference: Box::new(|v| (*v == ValD::ff()).then(ValD::ff)),
        pointed: None,
    }
}

/// `1/(a × b) → 1/a × 1/b` in the pointed language.
pub fn revx_pointed(a: &PtTy, b: &PtTy) -> Result<PtComb, PtError> {
    let ab = PtTy::prod(a.clone(), b.clone());
    let (sa, sb) = (PtTy::sing(a.clone()), PtTy::sing(b.clone()));
    let (ra, rb, rab) = (
        PtTy::recip(a.clone()),
        PtTy::recip(b.clone()),
        PtTy::recip(ab.clone()),
    );
    let eta_a = PtTy::prod(sa.clone(), ra.clone());
    let objs = vec![sb.clone(), rb.clone(), sa.clone(), ra.clone(), rab.clone()];
    let w = Layout::Wire;
    let from = Layout::pair(
        Layout::pair(w(0), w(1)),
        Layout::pair(Layout::pair(w(2), w(3)), w(4)),
    );
    let to = Layout::pair(
        Layout::pair(Layout::pair(w(2), w(0)), w(4)),
        Layout::pair(w(3), w(1)),
    );
    let shuffle = route::<PtComb>(&from, &to, &objs)?.expect("wires move");
    let rest = PtTy::prod(ra.clone(), rb.clone());
    PtComb::seq_all([
        PtComb::uniti_times_l(rab.clone())?,
        PtComb::eta(a.clone())?.times(PtComb::id(rab.clone())?),
        PtComb::uniti_times_l(PtTy::prod(eta_a.clone(), rab.clone()))?,
        PtComb::eta(b.clone())?.times(PtComb::id(PtTy::prod(eta_a, rab.clone()))?),
        shuffle,
        PtComb::tensor_sing(a.clone(), b.clone())?
            .times(PtComb::id(rab)?)
            .times(PtComb::id(rest.clone())?),
        PtComb::eps(ab)?.times(PtComb::id(rest.clone())?),
        PtComb::unite_times_l(rest)?,
    ])
}

pub fn revx_circuit() -> NamedCircuit {
    let (v1, v2) = (ValD::ff(), ValD::tt());
    NamedCircuit {
        name: "revx",
        summary: "splits the collector of (𝔽, 𝕋) into collectors for 𝔽 and 𝕋",
        dynamic: revx(&v1, &TyD::bool(), &v2, &TyD::bool()),
        reference: Box::new(|_| Some(ValD::pair(ValD::Gc, ValD::Gc))),
        pointed: Some(Box::new(|_| {
            revx_pointed(&PtTy::bool(false), &PtTy::bool(true))
        })),
    }
}

pub fn revrev_circuit() -> NamedCircuit {
    let t = PtTy::bool(true);
    let dynamic = ext_comb(&revrev(&t).expect("revrev builds"));
    NamedCircuit {
        name: "revrev",
        summary: "collects a collector of 𝕋, rematerializing 𝕋",
        dynamic,
        reference: Box::new(|_| Some(ValD::tt())),
        pointed: Some(Box::new(move |_| revrev(&t))),
    }
}

/// Allocate `𝔽` and immediately collect it.
pub fn eta_eps_circuit() -> NamedCircuit {
    let t = PtTy::bool(false);
    let build = move || PtComb::eta(t.clone())?.seq(PtComb::eps(t.clone())?);
    let dynamic = ext_comb(&build().expect("matched allocation"));
    NamedCircuit {
        name: "eta-eps",
        summary: "allocates 𝔽 with its collector and collects it again",
        dynamic,
        reference: Box::new(|_| Some(ValD::Unit)),
        pointed: Some(Box::new(move |_| build())),
    }
}

pub fn gallery() -> Vec<NamedCircuit> {
    vec![
        not_gate(),
        cnot_gate(),
        toffoli3_verified(),
        toffoli4(),
        id_via_ancilla_circuit(),
        reclaim_input_circuit(),
        eta_eps_circuit(),
        revx_circuit(),
        revrev_circuit(),
    ]
}

pub fn find(name: &str) -> Option<NamedCircuit> {
    gallery().into_iter().find(|c| c.name == name)
}
