//! Randomized algebraic-law checks across the core modules.

use gu11_core::arith::{is_squarefree, ratio, Rat};
use gu11_core::graded::{self, apply, fricke_from_t, invariant_subspace, is_invariant};
use gu11_core::hermitian::{iota, pairing, HermVector, Mat2F};
use gu11_core::isogeny::{dagger, FormalHom, FormalMat2, FormalObject};
use gu11_core::linalg::Lattice;
use gu11_core::poly::Poly;
use gu11_core::quadfield::{class_of, trace_dual, FieldElement, FracIdeal, QuadField};
use num::Zero;
use proptest::prelude::*;

fn squarefree_n() -> impl Strategy<Value = u64> {
    (1u64..=50).prop_filter("squarefree", |n| is_squarefree(*n))
}

type Gens = (i64, i64, i64, i64);

fn gens() -> impl Strategy<Value = Gens> {
    (-6i64..=6, -6i64..=6, -6i64..=6, -6i64..=6)
}

fn ideal_from(k: &QuadField, g: Gens) -> FracIdeal {
    let e1 = k.integral_element(g.0, g.1);
    let e2 = k.integral_element(g.2, g.3);
    if e1.is_zero() && e2.is_zero() {
        FracIdeal::ring_of_integers(k)
    } else {
        FracIdeal::from_elements(k, &[e1, e2]).expect("nonzero generators")
    }
}

fn element(k: &QuadField, a: i64, b: i64) -> FieldElement {
    let e = k.integral_element(a, b);
    if e.is_zero() {
        FieldElement::one()
    } else {
        e
    }
}

proptest! {
    #[test]
    fn ideal_multiplication_commutes(n in squarefree_n(), g1 in gens(), g2 in gens()) {
        let k = QuadField::new(n).unwrap();
        let (i, j) = (ideal_from(&k, g1), ideal_from(&k, g2));
        prop_assert_eq!(i.mul(&k, &j), j.mul(&k, &i));
    }

    #[test]
    fn ideal_multiplication_associates(n in squarefree_n(), g1 in gens(), g2 in gens(), g3 in gens()) {
        let k = QuadField::new(n).unwrap();
        let (i, j, l) = (ideal_from(&k, g1), ideal_from(&k, g2), ideal_from(&k, g3));
        prop_assert_eq!(i.mul(&k, &j).mul(&k, &l), i.mul(&k, &j.mul(&k, &l)));
    }

    #[test]
    fn ideal_inverse_law(n in squarefree_n(), g in gens(), num in 1i64..=4, den in 1i64..=4) {
        let k = QuadField::new(n).unwrap();
        let i = ideal_from(&k, g).scale(&ratio(num, den));
        prop_assert_eq!(i.mul(&k, &i.inverse(&k)), FracIdeal::ring_of_integers(&k));
    }

    #[test]
    fn ideal_norm_is_multiplicative(n in squarefree_n(), g1 in gens(), g2 in gens()) {
        let k = QuadField::new(n).unwrap();
        let (i, j) = (ideal_from(&k, g1), ideal_from(&k, g2));
        prop_assert_eq!(i.mul(&k, &j).norm(&k), i.norm(&k) * j.norm(&k));
    }

    #[test]
    fn conjugation_distributes_over_products(n in squarefree_n(), g1 in gens(), g2 in gens()) {
        let k = QuadField::new(n).unwrap();
        let (i, j) = (ideal_from(&k, g1), ideal_from(&k, g2));
        prop_assert_eq!(i.mul(&k, &j).conj(), i.conj().mul(&k, &j.conj()));
    }

    #[test]
    fn trace_dual_is_an_involution(n in squarefree_n(), g in gens(), num in 1i64..=4, den in 1i64..=4) {
        let k = QuadField::new(n).unwrap();
        let i = ideal_from(&k, g).scale(&ratio(num, den));
        prop_assert_eq!(trace_dual(&k, &trace_dual(&k, &i)), i);
    }

    #[test]
    fn trace_dual_twists_by_conjugated_inverse(n in squarefree_n(), g in gens(), a in -5i64..=5, b in -5i64..=5) {
        let k = QuadField::new(n).unwrap();
        let i = ideal_from(&k, g);
        let x = element(&k, a, b);
        let scaled = trace_dual(&k, &i.mul_element(&k, &x));
        let inv_conj = k.inv(&x.conj()).unwrap();
        prop_assert_eq!(scaled, trace_dual(&k, &i).mul_element(&k, &inv_conj));
    }

    #[test]
    fn class_invariant_ignores_principal_scaling(n in squarefree_n(), g in gens(), a in -5i64..=5, b in -5i64..=5) {
        let k = QuadField::new(n).unwrap();
        let i = ideal_from(&k, g);
        let x = element(&k, a, b);
        prop_assert_eq!(class_of(&k, &i), class_of(&k, &i.mul_element(&k, &x)));
    }

    #[test]
    fn lattice_basis_is_canonical(
        rows in proptest::collection::vec((-9i64..=9, -9i64..=9), 2..=4),
        num in 1i64..=3,
        den in 1i64..=3,
    ) {
        let gens: Vec<Vec<Rat>> = rows
            .iter()
            .map(|(a, b)| vec![ratio(*a * num, den), ratio(*b * num, den)])
            .collect();
        if let Some(l) = Lattice::from_generators(&gens) {
            // Appending sums of existing generators never changes the lattice.
            let mut extended = gens.clone();
            let combo: Vec<Rat> = (0..2)
                .map(|c| gens.iter().map(|r| r[c].clone()).sum())
                .collect();
            extended.push(combo);
            prop_assert_eq!(Some(l), Lattice::from_generators(&extended));
        }
    }

    #[test]
    fn pairing_is_alternating_and_additive(
        n in squarefree_n(),
        v in proptest::array::uniform4(-5i64..=5),
        w in proptest::array::uniform4(-5i64..=5),
        u in proptest::array::uniform4(-5i64..=5),
    ) {
        let k = QuadField::new(n).unwrap();
        let vecs: Vec<HermVector> = [v, w, u]
            .iter()
            .map(|c| {
                let coords: Vec<Rat> = c.iter().map(|x| ratio(*x, 1)).collect();
                HermVector::from_coords(&coords)
            })
            .collect();
        let (v, w, u) = (&vecs[0], &vecs[1], &vecs[2]);
        prop_assert_eq!(pairing(&k, v, w), -pairing(&k, w, v));
        prop_assert!(pairing(&k, v, v).is_zero());
        let sum = HermVector::new(v.x1.add(&w.x1), v.x2.add(&w.x2));
        prop_assert_eq!(pairing(&k, &sum, u), pairing(&k, v, u) + pairing(&k, w, u));
    }

    #[test]
    fn iota_reverses_products(
        n in squarefree_n(),
        g in proptest::array::uniform8(-4i64..=4),
        h in proptest::array::uniform8(-4i64..=4),
        v in proptest::array::uniform4(-4i64..=4),
        w in proptest::array::uniform4(-4i64..=4),
    ) {
        let k = QuadField::new(n).unwrap();
        let mat = |c: [i64; 8]| {
            Mat2F::new([
                [k.integral_element(c[0], c[1]), k.integral_element(c[2], c[3])],
                [k.integral_element(c[4], c[5]), k.integral_element(c[6], c[7])],
            ])
        };
        let (g, h) = (mat(g), mat(h));
        prop_assert_eq!(iota(&g.mul(&k, &h)), iota(&h).mul(&k, &iota(&g)));
        prop_assert_eq!(iota(&iota(&g)), g.clone());
        // Adjointness with respect to the pairing.
        let coords = |c: [i64; 4]| {
            let r: Vec<Rat> = c.iter().map(|x| ratio(*x, 1)).collect();
            HermVector::from_coords(&r)
        };
        let (v, w) = (coords(v), coords(w));
        prop_assert_eq!(
            pairing(&k, &g.apply(&k, &v), &w),
            pairing(&k, &v, &iota(&g).apply(&k, &w))
        );
    }

    #[test]
    fn composition_associates_and_degree_multiplies(
        n in squarefree_n(),
        labels in proptest::array::uniform4(prop_oneof![Just(FormalObject::E), Just(FormalObject::Ebar)]),
        c1 in -5i64..=5,
        c2 in -5i64..=5,
        c3 in -5i64..=5,
    ) {
        let f = FormalHom::new(labels[2], labels[3], ratio(c1, 1));
        let g = FormalHom::new(labels[1], labels[2], ratio(c2, 1));
        let h = FormalHom::new(labels[0], labels[1], ratio(c3, 1));
        let left = f.compose(n, &g).unwrap().compose(n, &h).unwrap();
        let right = f.compose(n, &g.compose(n, &h).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        let fg = f.compose(n, &g).unwrap();
        prop_assert_eq!(fg.degree(n), f.degree(n) * g.degree(n));
        prop_assert_eq!(fg.dual(), g.dual().compose(n, &f.dual()).unwrap());
        prop_assert_eq!(f.dual().dual(), f);
    }

    #[test]
    fn dagger_is_an_anti_involution(
        n in squarefree_n(),
        src in proptest::array::uniform2(prop_oneof![Just(FormalObject::E), Just(FormalObject::Ebar)]),
        mid in proptest::array::uniform2(prop_oneof![Just(FormalObject::E), Just(FormalObject::Ebar)]),
        tgt in proptest::array::uniform2(prop_oneof![Just(FormalObject::E), Just(FormalObject::Ebar)]),
        a in proptest::array::uniform4(-3i64..=3),
        b in proptest::array::uniform4(-3i64..=3),
    ) {
        let build = |s: [FormalObject; 2], t: [FormalObject; 2], c: [i64; 4]| {
            FormalMat2::new(
                s,
                t,
                [
                    [
                        FormalHom::new(s[0], t[0], ratio(c[0], 1)),
                        FormalHom::new(s[1], t[0], ratio(c[1], 1)),
                    ],
                    [
                        FormalHom::new(s[0], t[1], ratio(c[2], 1)),
                        FormalHom::new(s[1], t[1], ratio(c[3], 1)),
                    ],
                ],
            )
        };
        let m1 = build(mid, tgt, a);
        let m2 = build(src, mid, b);
        let prod = m1.mul(n, &m2).unwrap();
        prop_assert_eq!(dagger(&prod), dagger(&m2).mul(n, &dagger(&m1)).unwrap());
        prop_assert_eq!(dagger(&dagger(&m1)), m1);
    }

    #[test]
    fn graded_apply_is_a_ring_map(
        e1 in proptest::array::uniform3(0u32..=2),
        e2 in proptest::array::uniform3(0u32..=2),
        c1 in -5i64..=5,
        c2 in -5i64..=5,
    ) {
        let r = graded::level3_ring();
        let w = fricke_from_t(&r, &graded::tstar_level3(&r), 3).unwrap();
        let p = Poly::monomial(3, e1.to_vec(), ratio(c1, 1));
        let q = Poly::monomial(3, e2.to_vec(), ratio(c2, 1));
        let product = apply(&r, &w, &(&p * &q));
        let separate = r.normalize(&(&apply(&r, &w, &p) * &apply(&r, &w, &q)));
        prop_assert_eq!(product, separate);
        // The rescaled involution really is an involution on every input.
        prop_assert_eq!(apply(&r, &w, &apply(&r, &w, &p)), r.normalize(&p));
    }

    #[test]
    fn invariant_subspaces_are_pointwise_fixed(k in 0u32..=10, m in 0u32..=1) {
        let r = graded::level2_ring();
        let w = fricke_from_t(&r, &graded::tstar_level2(&r), 2).unwrap();
        let k = 2 * k;
        for b in invariant_subspace(&r, &w, k, m) {
            prop_assert!(is_invariant(&r, &w, &b));
            prop_assert!(!b.is_zero());
        }
    }
}
