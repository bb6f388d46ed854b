//! Property tests for the arithmetic kernel, the fibrations and the resolution.

use proptest::prelude::*;

use quartics::algebra::{
    divide_form, form_square_root, parse_form, parse_scalar, FieldSpec, FormFq, GfElem, MPoly, ScalarK, TriForm, UPoly, XYZ,
};
use quartics::families::{build_family, is_strange, FamilyParams, Tag};
use quartics::fibres::{specialize_fibre, Fibration};
use quartics::isomorphisms::{check_iso, random_witness, transformed_params};
use quartics::resolution::{resolve_pencil, PencilSpec, ResolutionError, GENERIC};
use quartics::rng;

fn field(m: u32) -> FieldSpec {
    FieldSpec::smallest(m).unwrap()
}

prop_compose! {
    fn elems(m: u32)(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) -> [GfElem; 3] {
        let f = field(m);
        [a, b, c].map(|x| f.elem(x % f.size()))
    }
}

prop_compose! {
    fn upoly(max_deg: usize)(bits in prop::collection::vec(0u64..2, 1..=max_deg + 1)) -> UPoly {
        UPoly::from_bits(FieldSpec::binary(), bits)
    }
}

prop_compose! {
    fn scalar()(n in upoly(4), d in upoly(4)) -> ScalarK {
        let f = FieldSpec::binary();
        let d = if d.is_zero() { UPoly::one(f) } else { d };
        ScalarK::new(n, d).unwrap()
    }
}

prop_compose! {
    fn form(deg: u16)(cs in prop::collection::vec(scalar(), ((deg + 1) * (deg + 2) / 2) as usize)) -> TriForm {
        let mut terms = Vec::new();
        let mut k = 0;
        for i in 0..=deg {
            for j in 0..=deg - i {
                terms.push(([i, j, deg - i - j], cs[k].clone()));
                k += 1;
            }
        }
        MPoly::from_terms(FieldSpec::binary(), XYZ, &terms)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(m in 1u32..=8, e in any::<[u64; 3]>()) {
        let f = field(m);
        let [a, b, c] = e.map(|x| f.elem(x % f.size()));
        prop_assert_eq!((a * b) * c, a * (b * c));
        prop_assert_eq!(a * (b + c), a * b + a * c);
        prop_assert_eq!((a + b).square(), a.square() + b.square());
        prop_assert_eq!(a.sqrt().square(), a);
        if !a.is_zero() {
            prop_assert!((a * a.inv().unwrap()).is_one());
        }
        prop_assert_eq!(a.pow(f.size()), a);
    }

    #[test]
    fn embeddings_are_homomorphisms(m in 1u32..=4, r in 1u32..=4, e in elems(1)) {
        let small = field(m);
        let emb = small.extension(r).unwrap();
        let [a, b] = [e[0].bits(), e[1].bits()].map(|x| small.elem(x % small.size()));
        prop_assert_eq!(emb.map(a * b), emb.map(a) * emb.map(b));
        prop_assert_eq!(emb.map(a + b), emb.map(a) + emb.map(b));
        prop_assert!(emb.map(small.one()).is_one());
    }

    #[test]
    fn upoly_division(a in upoly(8), b in upoly(5)) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.divrem(&b);
        prop_assert_eq!(q.mul(&b).add(&r), a.clone());
        prop_assert!(r.degree() < b.degree());
        let g = a.gcd(&b);
        prop_assert!(a.divrem(&g).1.is_zero() && b.divrem(&g).1.is_zero());
    }

    #[test]
    fn scalar_text_round_trip(x in scalar()) {
        let back = parse_scalar(&x.to_string(), FieldSpec::binary()).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn scalar_squares(x in scalar()) {
        let s = x.square();
        prop_assert!(s.is_square());
        prop_assert_eq!(s.sqrt().unwrap(), x.clone());
        let (u, v) = x.square_parts();
        let t = ScalarK::t(FieldSpec::binary());
        prop_assert_eq!(u.square().add(&t.mul(&v.square())), x);
    }

    #[test]
    fn form_text_round_trip(f in form(3)) {
        let back = parse_form(&f.to_string(), FieldSpec::binary()).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn form_reconstruction(a in form(2), b in form(1)) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        prop_assert_eq!(form_square_root(&a.pow(2)), Some(a.clone()));
        prop_assert_eq!(divide_form(&a.mul(&b), &b), Ok(Some(a.clone())));
        if let Some(r) = form_square_root(&a) {
            prop_assert_eq!(r.pow(2), a);
        }
    }

    #[test]
    fn members_are_strange(fib in prop::sample::select(Fibration::ALL.to_vec()), e in elems(4), d in any::<u64>()) {
        let f = field(4);
        let mut p: Vec<GfElem> = e.to_vec();
        p.push(f.elem(d % 16));
        p.truncate(fib.arity());
        if let Ok(c) = specialize_fibre(fib, f, &p) {
            prop_assert!(is_strange(&c.form).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_isomorphisms_verify(seed in any::<u64>(), tag in prop::sample::select(vec![Tag::III, Tag::IV, Tag::V])) {
        let f = FieldSpec::binary();
        let mut r = rng::stream(seed, "prop-iso");
        let p = loop {
            let v: [ScalarK; 4] = std::array::from_fn(|_| rng::scalar(&mut r, f, 2));
            let mut p = FamilyParams::new(tag, v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone());
            if tag == Tag::IV {
                p.d = ScalarK::zero(f);
            }
            if p.validate().is_ok() {
                break p;
            }
        };
        let m = build_family(&p).unwrap();
        let w = random_witness(&mut r, &p);
        let t = transformed_params(&p, &w).unwrap();
        prop_assert!(t.validate().is_ok());
        prop_assert!(check_iso(&m, &t, &w).is_ok());
    }

    #[test]
    fn resolved_pencils_are_consistent(d in 1u16..=3, a in any::<u64>(), b in any::<u64>()) {
        let f = FieldSpec::binary();
        let random = |bits: u64| {
            let mut terms = Vec::new();
            let mut k = 0;
            for i in 0..=d {
                for j in 0..=d - i {
                    terms.push(([i, j, d - i - j], f.elem((bits >> k) & 1)));
                    k += 1;
                }
            }
            FormFq::from_terms(f, XYZ, &terms)
        };
        let (f0, f1) = (random(a), random(b));
        prop_assume!(!f0.is_zero() && !f1.is_zero() && f0 != f1);
        let named = vec![("A".to_string(), f0.clone()), ("B".to_string(), f1.clone())];
        let spec = PencilSpec::new("random", f0, f1, named, [vec![(0, 1)], vec![(1, 1)]], "");
        let r = match spec.and_then(|s| resolve_pencil(&s)) {
            Ok(r) => r,
            Err(ResolutionError::NotCoprime | ResolutionError::NonRationalCenter | ResolutionError::Fibre(_)) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        prop_assert_eq!(r.self_intersection(GENERIC).unwrap(), 0);
        for t in [[f.one(), f.zero()], [f.zero(), f.one()]] {
            let div = r.fibre_divisor(t);
            prop_assert!(r.divisor_dot_components(&div).unwrap().iter().all(|(_, v)| *v == 0));
            let total: i64 = div.iter().map(|(n, k)| *k as i64 * r.intersection(n, GENERIC).unwrap()).sum();
            prop_assert_eq!(total, 0);
        }
        prop_assert_eq!(r.intersection("A", "B").unwrap(), 0);
    }
}
