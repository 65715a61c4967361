//! Exact identities at randomly drawn rational parameter points.

use num_traits::{One, Zero};
use proptest::prelude::*;

use octaboson::hallittlewood::{
    hl_explicit, macdonald_bc, pieri_residual, principal_specialization, HlFamily,
};
use octaboson::qboson::{Fock, LatticeFunction, Relation};
use octaboson::qkernels::{self, ParamSet, Profile};
use octaboson::rational::rat;
use octaboson::{enumerate, Partition, Rational};

fn nonzero_t() -> impl Strategy<Value = Rational> {
    (1i64..=9, 2i64..=11, any::<bool>())
        .prop_filter("inside (-1, 1)", |(a, b, _)| a < b)
        .prop_map(|(a, b, neg)| rat(if neg { -a } else { a }, b))
}

fn params(profile: Profile) -> impl Strategy<Value = ParamSet> {
    (
        (1i64..=7, 2i64..=9).prop_filter("q in (0, 1)", |(a, b)| a < b),
        [nonzero_t(), nonzero_t(), nonzero_t(), nonzero_t()],
    )
        .prop_filter_map("generic", move |((a, b), mut t)| {
            for tr in t.iter_mut().skip(match profile {
                Profile::Four => 4,
                Profile::Three => 3,
                Profile::Two => 2,
            }) {
                *tr = Rational::zero();
            }
            ParamSet::new(rat(a, b), t, profile).ok()
        })
}

fn small_partition() -> impl Strategy<Value = Partition> {
    prop::sample::select(enumerate(2, 3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pieri_vanishes(ps in params(Profile::Four), lambda in small_partition()) {
        let family = HlFamily::new(ps);
        prop_assert!(pieri_residual(&lambda, &family).unwrap().is_zero());
    }

    #[test]
    fn principal_point_gives_inverse_c(ps in params(Profile::Four), lambda in small_partition()) {
        let hl = hl_explicit(&lambda, &ps).unwrap();
        let c = qkernels::c_lambda(&lambda, &ps).unwrap();
        prop_assert_eq!(principal_specialization(&hl).unwrap() * c, Rational::one());
    }

    #[test]
    fn two_formulas_agree(ps in params(Profile::Two), lambda in small_partition()) {
        let explicit = hl_explicit(&lambda, &ps).unwrap();
        let macdonald = macdonald_bc(&lambda, &ps).unwrap();
        prop_assert_eq!(explicit.poly(), macdonald.poly());
    }

    #[test]
    fn relations_hold_on_random_states(
        ps in params(Profile::Four),
        rel in prop::sample::select(Relation::ALL.to_vec()),
        l in 0u32..4,
        gap in 1u32..3,
        mu in prop::sample::select(enumerate(3, 4)),
    ) {
        let k = l + gap;
        let fock = Fock::new(ps);
        prop_assert!(fock.relation_residual(rel, l, k, &mu, true).unwrap().is_zero());
    }

    #[test]
    fn hamiltonian_is_symmetric(
        ps in params(Profile::Four),
        mu in prop::sample::select(enumerate(2, 4)),
        nu in prop::sample::select(enumerate(2, 4)),
    ) {
        let fock = Fock::new(ps);
        let h = |x: &Partition| fock.apply_hamiltonian(&LatticeFunction::<Rational>::delta(x)).unwrap();
        prop_assert_eq!(
            h(&mu).get(&nu) * fock.norm(&nu).unwrap(),
            h(&nu).get(&mu) * fock.norm(&mu).unwrap()
        );
    }

    #[test]
    fn norms_factor_through_c(ps in params(Profile::Four), lambda in prop::sample::select(enumerate(3, 4))) {
        let h = qkernels::h_lambda(&lambda, &ps).unwrap();
        let c = qkernels::c_lambda(&lambda, &ps).unwrap();
        prop_assert_eq!(h, c * qkernels::norm(&lambda, &ps).unwrap());
    }
}
