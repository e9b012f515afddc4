use proptest::prelude::*;

use homcyc::algebra::{direct_sum, yau_twist};
use homcyc::coefficients::{dualize_bimodule, regular_bimodule};
use homcyc::cyclic::{cyclic_cohomology, cyclic_homology, Method};
use homcyc::hochschild::{b_prime, cyclic_t, face_map, hochschild_b, hochschild_cohomology, hochschild_homology};
use homcyc::{corpus, HomAlgebra, Matrix, Scalar};

/// With α = 0 both axioms read 0 = 0, so every product is admissible.
fn null_twist_algebra() -> impl Strategy<Value = HomAlgebra> {
    (1usize..=2).prop_flat_map(|d| {
        prop::collection::vec(-2i64..=2, d * d * d).prop_map(move |c| {
            let mul = (0..d)
                .map(|i| {
                    (0..d)
                        .map(|j| (0..d).map(|k| Scalar::from(c[(i * d + j) * d + k])).collect())
                        .collect()
                })
                .collect();
            HomAlgebra::new("random", mul, Matrix::zeros(d, d)).expect("α = 0 is always valid")
        })
    })
}

fn dual_numbers_twisted(c: i64) -> HomAlgebra {
    // x ↦ cx is an endomorphism of k[x]/(x²).
    yau_twist(&corpus::dual_numbers(), &Matrix::from_ints(&[&[1, 0], &[0, c]])).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn differentials_square_to_zero(a in null_twist_algebra()) {
        let v = regular_bimodule(&a);
        for n in 2..=4 {
            prop_assert!(hochschild_b(&v, n - 1).matmul(&hochschild_b(&v, n)).is_zero());
            prop_assert!(b_prime(&a, n - 1).matmul(&b_prime(&a, n)).is_zero());
        }
    }

    #[test]
    fn presimplicial_relations(a in null_twist_algebra(), n in 2usize..=4) {
        let v = regular_bimodule(&a);
        for j in 1..=n {
            for i in 0..j {
                let lhs = face_map(&v, n - 1, i).unwrap().matmul(&face_map(&v, n, j).unwrap());
                let rhs = face_map(&v, n - 1, j - 1).unwrap().matmul(&face_map(&v, n, i).unwrap());
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn b_intertwines_cyclic_operator(a in null_twist_algebra(), n in 1usize..=4) {
        let v = regular_bimodule(&a);
        let d = a.dim();
        let one_minus = |k: usize| &Matrix::identity(d.pow(k as u32 + 1)) - &cyclic_t(&a, k);
        prop_assert_eq!(hochschild_b(&v, n).matmul(&one_minus(n)), one_minus(n - 1).matmul(&b_prime(&a, n)));
    }

    #[test]
    fn cyclic_methods_agree(a in null_twist_algebra()) {
        let hc = cyclic_homology(&a, 3, Method::Both, None, false).unwrap();
        prop_assert!(hc.all_agree());
        let hcco = cyclic_cohomology(&a, 3, Method::Both, None, false).unwrap();
        prop_assert!(hcco.all_agree());
    }

    #[test]
    fn duality_holds(a in null_twist_algebra()) {
        let v = regular_bimodule(&a);
        let homology = hochschild_homology(&v, 3, false).unwrap().betti();
        let cohomology = hochschild_cohomology(&dualize_bimodule(&v).unwrap(), 3, false).unwrap().betti();
        prop_assert_eq!(homology, cohomology);
    }

    #[test]
    fn hc0_equals_hh0(a in null_twist_algebra()) {
        let hh0 = hochschild_homology(&regular_bimodule(&a), 0, false).unwrap().betti()[0];
        let hc0 = cyclic_homology(&a, 0, Method::Lambda, None, false).unwrap().betti()[0];
        prop_assert_eq!(hh0, hc0);
    }

    #[test]
    fn twisting_by_automorphism_keeps_hh(c in prop_oneof![-3i64..=-1, 1i64..=3]) {
        let plain = hochschild_homology(&regular_bimodule(&corpus::dual_numbers()), 3, false).unwrap();
        let twisted = hochschild_homology(&regular_bimodule(&dual_numbers_twisted(c)), 3, false).unwrap();
        prop_assert_eq!(plain.betti(), twisted.betti());
    }

    #[test]
    fn hh0_is_additive(a in null_twist_algebra(), b in null_twist_algebra()) {
        // Mixed products vanish, so b_1 on mixed tensors is zero.
        let s = direct_sum(&a, &b);
        let hh0 = |x: &HomAlgebra| hochschild_homology(&regular_bimodule(x), 0, false).unwrap().betti()[0];
        prop_assert_eq!(hh0(&s), hh0(&a) + hh0(&b));
    }
}
