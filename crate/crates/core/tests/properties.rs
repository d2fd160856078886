mod common;

use bsato_core::bfun::catalog_bfunction;
use bsato_core::weyl::Space;
use bsato_core::zeta::{resolution_for, smc_check, ChiSpec};
use common::*;
use proptest::prelude::*;

proptest! {
    #[test]
    fn poly_ring_axioms(input in (poly(), poly(), poly())) {
        ring_axioms(input)?;
    }

    #[test]
    fn poly_subst_composition(input in (poly(), poly(), poly(), prop::collection::vec(rational(), 3))) {
        subst_composition(input)?;
    }

    #[test]
    fn interpolation(points in interpolation_points()) {
        interpolation_roundtrip(points)?;
    }

    #[test]
    fn factor_linear_expand(input in roots()) {
        factor_roundtrip(input)?;
    }

    #[test]
    fn weyl_assoc(input in (weyl(), weyl(), weyl())) {
        weyl_associativity(input)?;
    }

    #[test]
    fn weyl_action_compatible(input in (weyl(), weyl(), weyl_target())) {
        weyl_action(input)?;
    }

    #[test]
    fn fourier(input in (weyl(), weyl())) {
        fourier_laws(input)?;
    }

    #[test]
    fn capelli_central(input in centrality_input()) {
        capelli_centrality(input)?;
    }

    /// Replacing symbolic Euler characteristics by integers cannot break a
    /// passing SMC check: the symbolic pass is a polynomial identity in χ.
    #[test]
    fn chi_values_keep_smc(m in 1usize..=5, dn in 0usize..=2, skew in any::<bool>(), chis in prop::collection::vec(-4i64..=4, 8)) {
        let space = if skew {
            Space::skew(m.min(3)).unwrap()
        } else {
            Space::matrix(m + dn, m.min(3)).unwrap()
        };
        let b = catalog_bfunction(space);
        let mut data = resolution_for(space);
        prop_assert!(smc_check(&b, &data).unwrap().passed());
        let len = data.components.len();
        let values = (0u64..(1 << len))
            .map(|mask| {
                let key: Vec<String> = (0..len).filter(|i| mask & (1 << i) != 0).map(|i| i.to_string()).collect();
                (key.join(","), chis[mask as usize % chis.len()])
            })
            .collect();
        data.chi = ChiSpec::Values(values);
        prop_assert!(smc_check(&b, &data).unwrap().passed());
    }
}
