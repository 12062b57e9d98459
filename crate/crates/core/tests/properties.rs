use brauer_forge::linalg::{Field, Matrix};
use brauer_forge::modrep::{decompose, Representation};
use brauer_forge::{Group, Perm};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n as u32).collect::<Vec<u32>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(v).unwrap())
}

proptest! {
    #[test]
    fn compose_applies_right_factor_first(p in perm(7), q in perm(7)) {
        let pq = p.compose(&q).unwrap();
        for i in 0..7 {
            prop_assert_eq!(pq.apply(i), p.apply(q.apply(i)));
        }
    }

    #[test]
    fn compose_is_associative_with_inverses(p in perm(6), q in perm(6), r in perm(6)) {
        let a = p.compose(&q).unwrap().compose(&r).unwrap();
        let b = p.compose(&q.compose(&r).unwrap()).unwrap();
        prop_assert_eq!(a, b);
        prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
        prop_assert!(p.pow(p.order() as i64).is_identity());
    }

    #[test]
    fn cycle_notation_round_trips(p in perm(8)) {
        let again = Perm::from_cycles(8, &p.cycles()).unwrap();
        prop_assert_eq!(&again, &p);
        prop_assert_eq!(Perm::parse_cycles(8, &p.to_string()).unwrap(), p);
    }

    #[test]
    fn subgroup_orders_divide(a in perm(5), b in perm(5)) {
        let g = Group::from_generators(vec![a.clone(), b.clone()]).unwrap();
        prop_assert_eq!(120 % g.order(), 0);
        let ia = g.index_of(&a).unwrap();
        let ib = g.index_of(&b).unwrap();
        prop_assert_eq!(g.perm(g.mul(ia, ib)), a.compose(&b).unwrap());
        let c = g.centralizer(&g.subgroup(&[ia]));
        prop_assert_eq!(g.order() % c.order(), 0);
        prop_assert!(c.contains(ia));
    }

    #[test]
    fn rank_nullity(m in 1usize..=4, rows in 1usize..12, cols in 1usize..12, seed in any::<u64>()) {
        let f = Field::new(m).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Matrix::random(f, rows, cols, &mut rng);
        prop_assert_eq!(a.rank() + a.kernel().dim(), cols);
        prop_assert_eq!(a.rank(), a.transpose().rank());
        for v in a.kernel().basis_vectors() {
            prop_assert!(a.apply(&v).unwrap().is_zero());
        }
    }

    #[test]
    fn product_transposes(seed in any::<u64>(), n in 1usize..10) {
        let f = Field::new(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Matrix::random(f, n, n + 1, &mut rng);
        let b = Matrix::random(f, n + 1, n, &mut rng);
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.transpose(), b.transpose().mul(&a.transpose()).unwrap());
        if let Ok(inv) = ab.inverse() {
            prop_assert_eq!(ab.mul(&inv).unwrap(), Matrix::identity(f, n));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn decomposition_preserves_dimension(a in perm(4), b in perm(4), seed in any::<u64>()) {
        let s4 = Group::from_generators(vec![
            Perm::parse_cycles(4, "(0 1 2 3)").unwrap(),
            Perm::parse_cycles(4, "(0 1)").unwrap(),
        ]).unwrap();
        let h = s4.subgroup(&[s4.index_of(&a).unwrap(), s4.index_of(&b).unwrap()]);
        let m = Representation::perm_module(&s4, &s4.coset_action(&h), Field::gf2()).unwrap();
        let parts = decompose(&m, seed).unwrap();
        prop_assert_eq!(parts.iter().map(|p| p.dim()).sum::<usize>(), m.dim());
        // the summand count does not depend on the seed
        prop_assert_eq!(parts.len(), decompose(&m, 0).unwrap().len());
    }
}
