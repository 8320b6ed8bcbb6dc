mod common;

use distcat::morphisms::{Mor, Semiring, StarRing};
use distcat::random::{random_perm, random_unitary, rng, RandomMor, SimRng};
use distcat::shapes::{dl_perm, s_perm, sigma_perm, ObjExpr, Perm};
use num_complex::Complex64;
use proptest::prelude::*;

fn a(label: &str, d: usize) -> ObjExpr {
    ObjExpr::atom(label, d)
}

fn close<S: Semiring>(x: &Mor<S>, y: &Mor<S>) -> bool {
    x.max_discrepancy(y).unwrap() <= S::TOLERANCE.max(1e-9) * (1.0 + x.rows() as f64)
}

fn not<S: Semiring>() -> Mor<S> {
    Mor::from_perm(&s_perm(&ObjExpr::Unit, &ObjExpr::Unit)).retype(ObjExpr::two(), ObjExpr::two()).unwrap()
}

fn bifunctoriality<S: RandomMor>(seed: u64, d: [usize; 6]) -> bool {
    let mut r: SimRng = rng(seed);
    let (x0, x1, x2) = (a("X0", d[0]), a("X1", d[1]), a("X2", d[2]));
    let (y0, y1, y2) = (a("Y0", d[3]), a("Y1", d[4]), a("Y2", d[5]));
    let g = S::random_mor(&x0, &x1, &mut r);
    let f = S::random_mor(&x1, &x2, &mut r);
    let k = S::random_mor(&y0, &y1, &mut r);
    let h = S::random_mor(&y1, &y2, &mut r);
    let tensor_ok = close(
        &f.compose(&g).unwrap().mtensor(&h.compose(&k).unwrap()),
        &f.mtensor(&h).compose(&g.mtensor(&k)).unwrap(),
    );
    let sum_ok = close(
        &f.compose(&g).unwrap().dsum(&h.compose(&k).unwrap()),
        &f.dsum(&h).compose(&g.dsum(&k)).unwrap(),
    );
    let id_ok = close(&Mor::identity(&x2).compose(&f).unwrap(), &f) && close(&f.compose(&Mor::identity(&x1)).unwrap(), &f);
    tensor_ok && sum_ok && id_ok
}

fn dl_naturality<S: RandomMor>(seed: u64, d: [usize; 6]) -> bool {
    let mut r: SimRng = rng(seed);
    let (a0, b0, c0) = (a("A", d[0]), a("B", d[1]), a("C", d[2]));
    let (a1, b1, c1) = (a("A'", d[3]), a("B'", d[4]), a("C'", d[5]));
    let f = S::random_mor(&a0, &a1, &mut r);
    let g = S::random_mor(&b0, &b1, &mut r);
    let h = S::random_mor(&c0, &c1, &mut r);
    let lhs = Mor::from_perm(&dl_perm(&a1, &b1, &c1)).compose(&f.mtensor(&g.dsum(&h))).unwrap();
    let rhs = f.mtensor(&g).dsum(&f.mtensor(&h)).compose(&Mor::from_perm(&dl_perm(&a0, &b0, &c0))).unwrap();
    close(&lhs, &rhs)
}

fn sigma_naturality<S: RandomMor>(seed: u64, d: [usize; 4]) -> bool {
    let mut r: SimRng = rng(seed);
    let f = S::random_mor(&a("X", d[0]), &a("X'", d[1]), &mut r);
    let g = S::random_mor(&a("Y", d[2]), &a("Y'", d[3]), &mut r);
    let lhs = Mor::from_perm(&sigma_perm(f.cod(), g.cod())).compose(&f.mtensor(&g)).unwrap();
    let rhs = g.mtensor(&f).compose(&Mor::from_perm(&sigma_perm(f.dom(), g.dom()))).unwrap();
    close(&lhs, &rhs)
}

#[test]
fn boolean_composition_is_matrix_product() {
    let x = ObjExpr::two();
    let f = Mor::new(x.clone(), x.clone(), vec![true, true, false, false]).unwrap();
    let g = Mor::new(x.clone(), x.clone(), vec![false, true, true, false]).unwrap();
    assert_eq!(f.compose(&g).unwrap().entries(), &[true, true, false, false]);
    assert_eq!(g.compose(&f).unwrap().entries(), &[false, false, true, true]);
}

#[test]
fn not_tensor_not_reverses() {
    let nn = not::<bool>().mtensor(&not());
    let images: Vec<usize> = (0..4).map(|j| (0..4).find(|&i| *nn.get(i, j)).unwrap()).collect();
    assert_eq!(images, vec![3, 2, 1, 0]);
}

#[test]
fn perm_matrices() {
    let n = Mor::<bool>::from_perm(&s_perm(&ObjExpr::Unit, &ObjExpr::Unit));
    assert_eq!(n.entries(), &[false, true, true, false]);
    let swap = Mor::<bool>::from_perm(&sigma_perm(&ObjExpr::two(), &ObjExpr::two()));
    let expected = [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]];
    for (i, row) in expected.iter().enumerate() {
        for (j, &e) in row.iter().enumerate() {
            assert_eq!(*swap.get(i, j), e == 1);
        }
    }
    assert_eq!(Mor::<bool>::from_perm(&Perm::identity(&a("X", 3))), Mor::identity(&a("X", 3)));
}

#[test]
fn unit_laws() {
    let mut r = rng(1);
    let f = random_unitary(&a("X", 3), &mut r);
    let lifted = Mor::<Complex64>::identity(&ObjExpr::Unit).mtensor(&f);
    assert!(lifted.dom().equiv(f.dom()));
    assert_eq!(lifted.entries(), f.entries());
    let empty = Mor::<Complex64>::identity(&ObjExpr::Zero);
    assert_eq!(empty.dsum(&f).entries(), f.entries());
    let u = Complex64::new(0.6, 0.8);
    let scalar = Mor::new(ObjExpr::Unit, ObjExpr::Unit, vec![u]).unwrap();
    let d = scalar.dsum(&Mor::identity(&ObjExpr::Unit));
    assert_eq!(d.entries(), &[u, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]);
}

#[test]
fn powers() {
    let x = a("X", 3);
    let mut r = rng(2);
    let f = random_unitary(&x, &mut r);
    assert_eq!(f.power(0).unwrap(), Mor::identity(&x));
    assert_eq!(not::<bool>().power(2).unwrap().entries(), Mor::<bool>::identity(&ObjExpr::two()).entries());
    let folded = (0..4).fold(f.clone(), |acc, _| acc.compose(&f).unwrap());
    assert!(f.power(5).unwrap().max_discrepancy(&folded).unwrap() < 1e-12);
    let rect = Mor::<bool>::zero(a("X", 2), a("Y", 3));
    assert!(rect.power(2).is_err());
}

#[test]
fn composition_checks_types() {
    let f = Mor::<bool>::zero(a("X", 2), a("Y", 3));
    assert!(f.compose(&f).is_err());
    assert!(Mor::<bool>::new(a("X", 2), a("Y", 2), vec![true; 3]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn complex_semiring_laws(re in proptest::array::uniform6(-3.0f64..3.0)) {
        let (x, y, z) = (Complex64::new(re[0], re[1]), Complex64::new(re[2], re[3]), Complex64::new(re[4], re[5]));
        let tol = 1e-12 * 100.0;
        prop_assert!(x.add(&y).add(&z).distance(&x.add(&y.add(&z))) < tol);
        prop_assert!(x.mul(&y).mul(&z).distance(&x.mul(&y.mul(&z))) < tol);
        prop_assert!(x.mul(&y.add(&z)).distance(&x.mul(&y).add(&x.mul(&z))) < tol);
        prop_assert!(x.mul(&Complex64::one()).distance(&x) == 0.0);
        prop_assert!(x.add(&Complex64::zero()).distance(&x) == 0.0);
        prop_assert!(x.mul(&Complex64::zero()).is_zero());
        prop_assert!(x.sub(&x).abs() == 0.0);
        prop_assert!(x.conj().conj() == x);
    }

    #[test]
    fn bifunctorial_complex(seed: u64, d in proptest::array::uniform6(1usize..=4)) {
        prop_assert!(bifunctoriality::<Complex64>(seed, d));
    }

    #[test]
    fn bifunctorial_boolean(seed: u64, d in proptest::array::uniform6(1usize..=4)) {
        prop_assert!(bifunctoriality::<bool>(seed, d));
    }

    #[test]
    fn dl_natural_complex(seed: u64, d in proptest::array::uniform6(1usize..=4)) {
        prop_assert!(dl_naturality::<Complex64>(seed, d));
    }

    #[test]
    fn dl_natural_boolean(seed: u64, d in proptest::array::uniform6(1usize..=4)) {
        prop_assert!(dl_naturality::<bool>(seed, d));
    }

    #[test]
    fn sigma_natural(seed: u64, d in proptest::array::uniform4(1usize..=4)) {
        prop_assert!(sigma_naturality::<Complex64>(seed, d));
        prop_assert!(sigma_naturality::<bool>(seed, d));
    }

    #[test]
    fn unitarity_is_preserved(seed: u64, d1 in 1usize..=5, d2 in 1usize..=5) {
        let mut r = rng(seed);
        let u = random_unitary(&a("X", d1), &mut r);
        let v = random_unitary(&a("Y", d2), &mut r);
        let p = Mor::<Complex64>::from_perm(&random_perm(&a("Z", d1 + d2), &mut r));
        prop_assert!(u.unitarity_defect() <= 1e-10);
        prop_assert!(u.mtensor(&v).unitarity_defect() <= 1e-10);
        prop_assert!(u.dsum(&v).unitarity_defect() <= 1e-10);
        prop_assert!(p.unitarity_defect() == 0.0);
        prop_assert!(u.dagger().compose(&u).unwrap().max_discrepancy(&Mor::identity(u.dom())).unwrap() <= 1e-10);
    }

    #[test]
    fn perm_matrices_compose_like_perms(seed: u64, d in 1usize..=8) {
        let mut r = rng(seed);
        let x = a("X", d);
        let (p, q) = (random_perm(&x, &mut r), random_perm(&x, &mut r));
        let pq = p.compose(&q).unwrap();
        let lhs = Mor::<bool>::from_perm(&pq);
        let rhs = Mor::<bool>::from_perm(&p).compose(&Mor::from_perm(&q)).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(p.compose(&p.invert()).unwrap().is_identity());
        let m = Mor::<Complex64>::from_perm(&p);
        prop_assert_eq!(m.compose(&Mor::from_perm(&p.invert())).unwrap(), Mor::identity(&x));
    }

    #[test]
    fn perm_relabelling_matches_composition(seed: u64, d in 1usize..=6) {
        let mut r = rng(seed);
        let x = a("X", d);
        let f = random_unitary(&x, &mut r);
        let p = random_perm(&x, &mut r);
        let pm = Mor::<Complex64>::from_perm(&p);
        prop_assert_eq!(f.pre_perm(&p).unwrap(), f.compose(&pm).unwrap());
        prop_assert_eq!(f.post_perm(&p).unwrap(), pm.compose(&f).unwrap());
        let conj = Mor::from_perm(&p.invert()).compose(&f).unwrap().compose(&pm).unwrap();
        prop_assert_eq!(f.conjugate(&p).unwrap(), conj);
    }

    #[test]
    fn objects_round_trip_through_text(x in common::obj_strategy(4)) {
        let text = x.to_string();
        let back: ObjExpr = text.parse().unwrap();
        prop_assert_eq!(back.dim(), x.dim());
        prop_assert!(back.equiv(&x));
        prop_assert_eq!(x.normalize().normalize(), x.normalize());
    }
}
