//! Property tests over randomly generated matrices, group-ring maps,
//! cocycles and homology classes.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use bgprod_core::exactlinalg::{smith_normal_form, solve, Coeff, IntMatrix};
use bgprod_core::groupalg::{build_group, FiniteGroup, GroupRingElement, ZGMatrix};
use bgprod_core::products::{BgEngine, HomologyClass};
use bgprod_core::resolutions::{
    generic_resolution, periodic_resolution, product_resolution, standard_resolution,
};
use bgprod_core::tate::{cocycle_to_chain_map, TateClass};

fn group(spec: &str) -> Arc<FiniteGroup> {
    Arc::new(build_group(spec).unwrap())
}

fn matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec(-bound..=bound, c), r)
            .prop_map(|rows| IntMatrix::from_rows(&rows))
    })
}

fn zg_matrix(g: Arc<FiniteGroup>, rows: usize, cols: usize) -> impl Strategy<Value = ZGMatrix> {
    let n = g.order();
    prop::collection::vec(prop::collection::vec(-3i64..=3, n), rows * cols).prop_map(
        move |entries| {
            let entries = entries
                .into_iter()
                .map(|c| {
                    GroupRingElement::new(g.clone(), c.into_iter().map(BigInt::from).collect())
                        .unwrap()
                })
                .collect();
            ZGMatrix::from_entries(g.clone(), rows, cols, entries).unwrap()
        },
    )
}

fn small_group() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec![
        "cyclic:2",
        "cyclic:3",
        "cyclic:4",
        "q8",
        "product:cyclic:2,cyclic:2",
    ])
}

fn coords(len: usize) -> impl Strategy<Value = Vec<BigInt>> {
    prop::collection::vec(-6i64..=6, len).prop_map(|v| v.into_iter().map(BigInt::from).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form_is_a_unimodular_diagonalization(a in matrix(5, 20)) {
        let s = smith_normal_form(&a);
        let uav = s.u.checked_mul(&a).unwrap().checked_mul(&s.v).unwrap();
        prop_assert_eq!(&uav, &s.d);
        prop_assert_eq!(s.u.checked_mul(&s.u_inv).unwrap(), IntMatrix::identity(a.rows()));
        prop_assert_eq!(s.v.checked_mul(&s.v_inv).unwrap(), IntMatrix::identity(a.cols()));
        for r in 0..s.d.rows() {
            for c in 0..s.d.cols() {
                if r != c {
                    prop_assert!(s.d.get(r, c).is_zero());
                }
            }
        }
        let diag = s.diagonal();
        prop_assert_eq!(diag.iter().filter(|x| !x.is_zero()).count(), s.rank());
        for i in 0..s.rank() {
            prop_assert!(diag[i] > BigInt::zero());
            if i + 1 < s.rank() {
                prop_assert!((&diag[i + 1] % &diag[i]).is_zero());
            }
        }
    }

    #[test]
    fn solve_recovers_consistent_systems(a in matrix(4, 9), seed in prop::collection::vec(-9i64..=9, 4)) {
        let x: Vec<BigInt> = seed.iter().take(a.cols()).map(|&v| BigInt::from(v)).chain(std::iter::repeat(BigInt::zero())).take(a.cols()).collect();
        let b = a.mul_vec(&x);
        let y = solve(&a, &b).unwrap();
        prop_assert!(y.is_some());
        prop_assert_eq!(a.mul_vec(&y.unwrap()), b);
    }

    #[test]
    fn solve_answers_are_exact(a in matrix(4, 9), b in prop::collection::vec(-9i64..=9, 4)) {
        let b: Vec<BigInt> = b.into_iter().take(a.rows()).map(BigInt::from).chain(std::iter::repeat(BigInt::zero())).take(a.rows()).collect();
        if let Some(y) = solve(&a, &b).unwrap() {
            prop_assert_eq!(a.mul_vec(&y), b);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn realization_is_multiplicative(
        (a, b) in small_group().prop_flat_map(|spec| {
            let g = group(spec);
            (zg_matrix(g.clone(), 2, 3), zg_matrix(g, 3, 2))
        })
    ) {
        let ab = ZGMatrix::compose(&a, &b).unwrap();
        prop_assert_eq!(ab.realize(), a.realize().checked_mul(&b.realize()).unwrap());
    }

    #[test]
    fn dual_is_a_contravariant_involution(
        (a, b) in small_group().prop_flat_map(|spec| {
            let g = group(spec);
            (zg_matrix(g.clone(), 2, 2), zg_matrix(g, 2, 3))
        })
    ) {
        prop_assert_eq!(&a.dual().dual(), &a);
        let ab = ZGMatrix::compose(&a, &b).unwrap();
        prop_assert_eq!(ab.dual(), ZGMatrix::compose(&b.dual(), &a.dual()).unwrap());
    }

    #[test]
    fn tensor_of_periodic_resolutions_is_exact(m in 2usize..=4, n in 2usize..=4) {
        let a = Arc::new(periodic_resolution(group(&format!("cyclic:{m}")), 4).unwrap());
        let b = Arc::new(periodic_resolution(group(&format!("cyclic:{n}")), 4).unwrap());
        let r = product_resolution(a, b).unwrap();
        prop_assert!(r.verify().unwrap().pass);
        // H_1(Z/m × Z/n) = Z/m ⊕ Z/n has order mn
        let h1 = r.homology(1, Coeff::Integers).unwrap();
        let order: BigInt = h1.invariant_factors().iter().product();
        prop_assert_eq!(order, BigInt::from(m * n));
    }

    #[test]
    fn tensor_is_associative_up_to_homology(a in 2usize..=3, b in 2usize..=3, c in 2usize..=3) {
        let p = |k: usize| Arc::new(periodic_resolution(group(&format!("cyclic:{k}")), 4).unwrap());
        let left = product_resolution(Arc::new(product_resolution(p(a), p(b)).unwrap()), p(c)).unwrap();
        let right = product_resolution(p(a), Arc::new(product_resolution(p(b), p(c)).unwrap())).unwrap();
        for n in 0..=3 {
            prop_assert_eq!(left.complex().rank(n as i64), right.complex().rank(n as i64));
            let (hl, hr) = (left.homology(n, Coeff::Integers).unwrap(), right.homology(n, Coeff::Integers).unwrap());
            prop_assert_eq!(hl.invariant_factors(), hr.invariant_factors());
        }
    }

    #[test]
    fn relabelled_tables_have_the_same_homology(spec in small_group(), perm in Just(()).prop_perturb(|_, mut rng| rng.random::<u64>())) {
        let g = group(spec);
        let n = g.order();
        // a permutation of the non-identity labels
        let mut labels: Vec<usize> = (1..n).collect();
        let mut state = perm;
        for i in (1..labels.len()).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            labels.swap(i, (state >> 33) as usize % (i + 1));
        }
        let relabel: Vec<usize> = std::iter::once(0).chain(labels).collect();
        let mut rows = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                rows[relabel[a]][relabel[b]] = relabel[g.mul(a, b)];
            }
        }
        let h = Arc::new(FiniteGroup::from_table("relabelled", rows).unwrap());
        let r = standard_resolution(g, 4).unwrap();
        let s = generic_resolution(h, 4).unwrap();
        for k in 0..=3 {
            let (x, y) = (r.homology(k, Coeff::Integers).unwrap(), s.homology(k, Coeff::Integers).unwrap());
            prop_assert_eq!(x.free_rank(), y.free_rank());
            prop_assert_eq!(x.torsion(), y.torsion());
        }
    }
}

fn engine(m: usize) -> BgEngine {
    BgEngine::new(group(&format!("cyclic:{m}")), 10).unwrap()
}

fn random_class(e: &BgEngine, k: usize, c: &[BigInt]) -> HomologyClass {
    let n = e.homology(k, Coeff::Integers).unwrap().num_generators();
    e.class(k, Coeff::Integers, c.iter().take(n).cloned().collect())
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lifted_cocycles_commute(m in 2usize..=5, n in -4i64..=4, c in coords(8), b in coords(8)) {
        let e = engine(m);
        let x = e.complete().unwrap();
        let h = e.tate(n, Coeff::Integers).unwrap();
        let mut v = TateClass::new(x.clone(), n, Coeff::Integers, vec![BigInt::zero(); x.complex.rank(n).unwrap()]).unwrap();
        for (i, ci) in c.iter().enumerate().take(h.rank()) {
            v = v.add(&TateClass::basis(x.clone(), &h, i).unwrap().scale(ci)).unwrap();
        }
        let width = x.complex.rank(n - 1).unwrap();
        let v = v.add_coboundary(&b[..width.min(b.len())].iter().cloned().chain(std::iter::repeat(BigInt::zero())).take(width).collect::<Vec<_>>()).unwrap();
        let lift = cocycle_to_chain_map(&v, 4).unwrap();
        prop_assert!(lift.check_commutes().is_ok());
    }

    #[test]
    fn cup_ignores_coboundaries(m in 2usize..=4, p in -3i64..=3, q in -3i64..=3, b in coords(4)) {
        let e = engine(m);
        let x = e.complete().unwrap();
        let (hp, hq) = (e.tate(p, Coeff::Integers).unwrap(), e.tate(q, Coeff::Integers).unwrap());
        prop_assume!(hp.rank() > 0 && hq.rank() > 0);
        let u = TateClass::basis(x.clone(), &hp, 0).unwrap();
        let v = TateClass::basis(x.clone(), &hq, 0).unwrap();
        let width = x.complex.rank(p - 1).unwrap();
        let shifted = u.add_coboundary(&b.iter().cloned().chain(std::iter::repeat(BigInt::zero())).take(width).collect::<Vec<_>>()).unwrap();
        let target = e.tate(p + q, Coeff::Integers).unwrap();
        let w1 = e.cup(&u, &v).unwrap().coordinates(&target).unwrap();
        let w2 = e.cup(&shifted, &v).unwrap().coordinates(&target).unwrap();
        prop_assert_eq!(w1, w2);
    }

    #[test]
    fn secondary_product_is_bilinear(m in 2usize..=6, kk in 0usize..=1, ll in 0usize..=1, a in coords(2), a2 in coords(2), b in coords(2)) {
        let e = engine(m);
        let (k, l) = (2 * kk + 1, 2 * ll + 1);
        let (x, x2, y) = (random_class(&e, k, &a), random_class(&e, k, &a2), random_class(&e, l, &b));
        let lhs = e.kreck(&x.add(&x2).unwrap(), &y).unwrap();
        let rhs = e.kreck(&x, &y).unwrap().add(&e.kreck(&x2, &y).unwrap()).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        let lhs = e.kreck(&y, &x.add(&x2).unwrap()).unwrap();
        let rhs = e.kreck(&y, &x).unwrap().add(&e.kreck(&y, &x2).unwrap()).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        let three = BigInt::from(3);
        prop_assert_eq!(e.kreck(&x.scale(&three), &y).unwrap(), e.kreck(&x, &y).unwrap().scale(&three));
    }

    #[test]
    fn cup_is_bilinear(m in 2usize..=5, p in -3i64..=3, q in -3i64..=3, s in -5i64..=5, t in -5i64..=5) {
        let e = engine(m);
        let x = e.complete().unwrap();
        let (hp, hq) = (e.tate(p, Coeff::Integers).unwrap(), e.tate(q, Coeff::Integers).unwrap());
        prop_assume!(hp.rank() > 0 && hq.rank() > 0);
        let u = TateClass::basis(x.clone(), &hp, 0).unwrap();
        let v = TateClass::basis(x.clone(), &hq, 0).unwrap();
        let target = e.tate(p + q, Coeff::Integers).unwrap();
        let (s, t) = (BigInt::from(s), BigInt::from(t));
        let scaled = e.cup(&u.scale(&s), &v.scale(&t)).unwrap().coordinates(&target).unwrap();
        let direct: Vec<BigInt> = e.cup(&u, &v).unwrap().coordinates(&target).unwrap().iter().map(|c| c * &s * &t).collect();
        let reduced: Vec<BigInt> = direct.iter().zip(target.invariant_factors()).map(|(c, d)| if d.is_zero() { c.clone() } else { num_integer::Integer::mod_floor(c, d) }).collect();
        prop_assert_eq!(scaled, reduced);
    }
}
