use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use pifrac::extract::{check_ext, ext_comb, ext_ty};
use pifrac::gen::{self, Limits};
use pifrac::syntax::{parse, pretty};
use pifrac::CombD;

fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn enumerate_matches_size(seed in any::<u64>()) {
        let t = gen::ty_d(&mut rng(seed), &Limits::default());
        let vals = t.enumerate();
        prop_assert_eq!(vals.len() as u64, t.size());
        prop_assert!(vals.iter().all(|v| v.has_type(&t)));
        let mut sorted = vals.clone();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), vals.len());
    }

    #[test]
    fn parse_inverts_print(seed in any::<u64>()) {
        let c = gen::comb_d(&mut rng(seed), &Limits::default());
        let text = c.to_string();
        let parsed = parse(&text).map_err(|e| TestCaseError::fail(format!("{e}: {text}")))?;
        prop_assert_eq!(&parsed.comb, &c);
        prop_assert_eq!(parse(&pretty(&c)).unwrap().comb, c);
    }

    #[test]
    fn inversion_round_trips(seed in any::<u64>()) {
        let c = gen::comb_d(&mut rng(seed), &Limits::default());
        let inv = c.invert();
        prop_assert_eq!(inv.invert(), c.clone());
        let (dom, cod) = c.infer().unwrap();
        prop_assert_eq!(inv.infer().unwrap(), (cod, dom.clone()));
        for v in dom.enumerate() {
            if let Some(out) = c.eval(&v).unwrap() {
                prop_assert_eq!(inv.eval(&out).unwrap(), Some(v));
            }
        }
    }

    #[test]
    fn extraction_preserves_types(seed in any::<u64>()) {
        let p = gen::pt_comb(&mut rng(seed), &Limits::default());
        let (dom, cod) = ext_comb(&p).infer().unwrap();
        prop_assert_eq!(dom, ext_ty(p.dom()).ty);
        prop_assert_eq!(cod, ext_ty(p.cod()).ty);
    }

    #[test]
    fn pointed_inversion_reverses_foci(seed in any::<u64>()) {
        let p = gen::pt_comb(&mut rng(seed), &Limits::default());
        let inv = p.invert();
        prop_assert_eq!(inv.eval(&p.cod().focus()), Ok(p.dom().focus()));
        prop_assert_eq!(inv.invert().dom_cod(), p.dom_cod());
    }

    #[test]
    fn extraction_commutes_with_inversion(seed in any::<u64>()) {
        let p = gen::pt_comb(&mut rng(seed), &Limits::default());
        let inv = p.invert();
        prop_assert_eq!(inv.dom(), p.cod());
        prop_assert_eq!(ext_comb(&inv), ext_comb(&p).invert());
        prop_assert!(check_ext(&p));
        prop_assert!(check_ext(&inv));
    }
}

#[test]
fn generated_fractional_programs_do_throw() {
    let mut r = rng(99);
    let lim = Limits::default();
    let throwing = (0..2000)
        .map(|_| gen::comb_d(&mut r, &lim))
        .filter(|c: &CombD| {
            c.truth_table()
                .unwrap()
                .iter()
                .any(|(_, out)| out.is_none())
        })
        .count();
    assert!(throwing > 20, "{throwing}");
}
