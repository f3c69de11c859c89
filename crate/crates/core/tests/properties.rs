use std::sync::OnceLock;

use num_bigint::BigInt;
use proptest::prelude::*;
use steinberg::algebra::AlgebraElement;
use steinberg::equivariant::{
    enumerate_homs, frattini_family, make_pgroup, GroupSpec, PGroup, VectorGroup,
};
use steinberg::flag::{ComplexMode, OrderComplex};
use steinberg::linalg::{
    bruhat_factor, enumerate_group, GfMatrix, GroupKind, MatrixGroup, Prime, Subspace,
};
use steinberg::ring::{Integers, LocalRationals, Ring};

fn p(v: u32) -> Prime {
    Prime::new(v).unwrap()
}

fn prime() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 5, 7])
}

fn matrix(q: u32, rows: usize, cols: usize) -> impl Strategy<Value = GfMatrix> {
    prop::collection::vec(0..q as i64, rows * cols)
        .prop_map(move |e| GfMatrix::new(p(q), rows, cols, &e).unwrap())
}

fn gl23() -> &'static MatrixGroup {
    static G: OnceLock<MatrixGroup> = OnceLock::new();
    G.get_or_init(|| enumerate_group(&GroupKind::General, 2, p(3)).unwrap())
}

/// A random element of `Z[GL_2(F_3)]` with a handful of terms.
fn element() -> impl Strategy<Value = AlgebraElement<Integers>> {
    prop::collection::vec((0..48usize, -3i64..=3), 0..6).prop_map(|terms| {
        let g = gl23();
        AlgebraElement::from_terms(
            &Integers,
            2,
            p(3),
            terms
                .into_iter()
                .map(|(k, c)| (g.elements()[k].clone(), BigInt::from(c))),
        )
        .unwrap()
    })
}

fn small_group() -> impl Strategy<Value = PGroup> {
    prop::sample::select(vec!["C2", "C4", "C2^2", "C2xC4", "D8", "Q8", "C3", "C3^2"])
        .prop_map(|s| make_pgroup(&s.parse::<GroupSpec>().unwrap()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_inverses(q in prime(), a in 1u8..7) {
        let f = p(q);
        let a = a % q as u8;
        prop_assume!(a != 0);
        prop_assert_eq!(f.mul(a, f.inv(a)), 1);
        prop_assert_eq!(f.pow(a, q - 1), 1);
    }

    #[test]
    fn matrix_products_associate(a in matrix(3, 3, 2), b in matrix(3, 2, 4), c in matrix(3, 4, 2)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert!(a.entries().iter().all(|&x| x < 3));
    }

    #[test]
    fn rref_shape(m in matrix(5, 3, 5)) {
        let r = m.rref();
        let s = Subspace::span(&m.transpose());
        prop_assert!(s.pivots().windows(2).all(|w| w[0] < w[1]));
        prop_assert_eq!(s.dim(), m.rank());
        prop_assert_eq!(r.pivots.len(), m.rank());
        prop_assert!((0..s.basis().rows()).all(|i| s.basis().row(i).iter().any(|&x| x != 0)));
    }

    #[test]
    fn invertible_matrices_invert(m in matrix(7, 3, 3)) {
        prop_assume!(m.is_invertible());
        prop_assert!(m.mul(&m.inverse().unwrap()).is_identity());
    }

    #[test]
    fn block_diagonal_is_multiplicative(a in matrix(2, 2, 2), b in matrix(2, 1, 1), c in matrix(2, 2, 2), d in matrix(2, 1, 1)) {
        use steinberg::linalg::block_diagonal;
        let lhs = block_diagonal(&a, &b).unwrap().mul(&block_diagonal(&c, &d).unwrap());
        prop_assert_eq!(lhs, block_diagonal(&a.mul(&c), &b.mul(&d)).unwrap());
    }

    #[test]
    fn subspace_dimension_formula(u in matrix(3, 2, 4), w in matrix(3, 2, 4)) {
        let (u, w) = (Subspace::span(&u), Subspace::span(&w));
        let sum = u.sum(&w).unwrap();
        let meet = u.intersection(&w).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), u.dim() + w.dim());
        prop_assert!(meet.is_subspace_of(&u) && meet.is_subspace_of(&w));
        prop_assert!(u.is_subspace_of(&sum) && w.is_subspace_of(&sum));
    }

    #[test]
    fn bruhat_factors_reconstruct(m in matrix(3, 3, 3)) {
        prop_assume!(m.is_invertible());
        let f = bruhat_factor(&m).unwrap();
        prop_assert!(f.left.is_upper_triangular() && f.right.is_upper_triangular());
        prop_assert_eq!(f.product(), m);
    }

    #[test]
    fn group_algebra_is_a_ring(x in element(), y in element(), z in element()) {
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
        prop_assert_eq!(x.add(&y).unwrap().mul(&z).unwrap(), x.mul(&z).unwrap().add(&y.mul(&z).unwrap()).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap().antipode(), y.antipode().mul(&x.antipode()).unwrap());
        let zero = x.sub(&x).unwrap();
        prop_assert!(zero.is_zero() && zero.support_len() == 0);
        prop_assert!(x.mul(&y).unwrap().terms().all(|(_, c)| *c != BigInt::from(0)));
    }

    #[test]
    fn local_rationals_stay_local(a in -50i64..50, b in 1i64..50, c in -50i64..50, d in 1i64..50) {
        let q = LocalRationals::new(p(3));
        prop_assume!(b % 3 != 0 && d % 3 != 0);
        let x = q.ratio(&a.into(), &b.into()).unwrap();
        let y = q.ratio(&c.into(), &d.into()).unwrap();
        prop_assert!(q.is_local(&q.mul(&x, &y)) && q.is_local(&q.add(&x, &y)));
        prop_assert!(q.ratio(&1.into(), &3.into()).is_err());
    }

    #[test]
    fn homomorphisms_have_normal_kernels(g in small_group(), pick in any::<prop::sample::Index>()) {
        let q = g.prime().unwrap();
        let target = VectorGroup { n: 2, p: q };
        let homs = enumerate_homs(&g, &target);
        let f = pick.get(&homs);
        prop_assert!(f.is_homomorphism(&g, &target));
        let kernel = f.kernel();
        prop_assert!(g.is_subgroup(&kernel) && g.is_normal(&kernel));
    }

    #[test]
    fn family_is_closed_under_intersection(g in small_group()) {
        let family = frattini_family(&g).unwrap();
        for a in family.members() {
            for b in family.members() {
                let meet: Vec<usize> = a.elements.iter().copied().filter(|x| b.elements.contains(x)).collect();
                prop_assert!(family.find(&meet).is_some());
            }
        }
    }
}

#[test]
fn boundaries_square_to_zero() {
    for (mode, n, q) in [
        (ComplexMode::B, 3, 2),
        (ComplexMode::B, 3, 3),
        (ComplexMode::BDiamond, 3, 2),
        (ComplexMode::B, 4, 2),
    ] {
        let chains = OrderComplex::build(mode, n, p(q))
            .unwrap()
            .chain_complex(true)
            .unwrap();
        for k in chains.lowest_degree() + 1..=chains.top_degree() {
            let (Some(outer), Some(inner)) = (chains.boundary(k - 1), chains.boundary(k)) else {
                continue;
            };
            assert!(
                outer.mul(inner).unwrap().is_zero(),
                "degree {k} at ({n}, {q})"
            );
        }
    }
}

#[test]
fn complexes_are_closed_under_faces() {
    let k = OrderComplex::build(ComplexMode::B, 4, p(2)).unwrap();
    for dim in 1..=k.dimension() as usize {
        for s in k.simplices(dim) {
            assert!(s.windows(2).all(|w| w[0] < w[1]));
            for drop in 0..s.len() {
                let mut face = s.clone();
                face.remove(drop);
                assert!(k.simplices(dim - 1).contains(&face), "{face:?}");
            }
        }
    }
}
