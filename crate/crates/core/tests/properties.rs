use proptest::prelude::*;

use qcgr_core::combinatorics::{is_s2_set, AbelianGroup};
use qcgr_core::construction::{check_constraints, lift, ExponentMatrix};
use qcgr_core::{BinaryMatrix, BitVec, FieldExponent, FiniteGroup, GroupKind, GroupRing, TensorRing};

fn bits(len: usize) -> impl Strategy<Value = BitVec> {
    proptest::collection::vec(any::<bool>(), len).prop_map(|v| BitVec::from_bools(&v))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = BinaryMatrix> {
    proptest::collection::vec(bits(cols), rows).prop_map(move |r| BinaryMatrix::from_rows(cols, r).unwrap())
}

fn group_kind() -> impl Strategy<Value = GroupKind> {
    prop_oneof![
        (1usize..6).prop_map(GroupKind::Cyclic),
        Just(GroupKind::DirectProduct(vec![2, 2])),
        Just(GroupKind::Dihedral(6)),
        Just(GroupKind::Quaternion),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_nullity(h in matrix(7, 12)) {
        let null = h.nullspace();
        prop_assert_eq!(h.rank() + null.len(), 12);
        for v in &null {
            prop_assert!(h.mul_vec(v).unwrap().is_zero());
        }
    }

    #[test]
    fn transpose_keeps_rank(h in matrix(6, 9)) {
        prop_assert_eq!(h.rank(), h.transpose().rank());
    }

    #[test]
    fn lifting_is_multiplicative((kind, a, b) in group_kind().prop_flat_map(|k| {
        let n = FiniteGroup::new(k.clone()).unwrap().order();
        (Just(k), bits(n * 6), bits(n * 6))
    })) {
        let ring = GroupRing::new(FiniteGroup::new(kind).unwrap(), TensorRing::new(vec![2, 3]).unwrap());
        let a = ring.from_bits(&a).unwrap();
        let b = ring.from_bits(&b).unwrap();
        let ab = ring.mul(&a, &b).unwrap();
        let product = ring.lift_element(&a).matmul(&ring.lift_element(&b)).unwrap();
        prop_assert_eq!(ring.lift_element(&ab), product);
    }

    #[test]
    fn inverse_really_inverts(a in bits(3 * 7)) {
        let ring = GroupRing::new(FiniteGroup::cyclic(3).unwrap(), TensorRing::cyclic(7).unwrap());
        let a = ring.from_bits(&a).unwrap();
        match ring.invert(&a).unwrap() {
            Some(inv) => prop_assert_eq!(ring.mul(&a, &inv).unwrap(), ring.one()),
            None => prop_assert!(ring.lift_element(&a).rank() < 21),
        }
    }

    #[test]
    fn subsets_of_s2_sets_are_s2(mask in 0u32..32) {
        let h = AbelianGroup::cyclic(11).unwrap();
        let set = [0usize, 1, 2, 4, 7];
        let sub: Vec<usize> = set.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).collect();
        prop_assert!(is_s2_set(&h, &sub));
    }

    #[test]
    fn constraints_predict_four_cycles(entries in proptest::collection::vec(proptest::option::of(0u32..7), 6)) {
        let w = ExponentMatrix::new(2, 3, vec![7], entries.into_iter().map(FieldExponent::from_option).collect()).unwrap();
        prop_assert_eq!(check_constraints(&w).passed(), !lift(&w).h.has_4cycle());
    }
}
