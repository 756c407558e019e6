use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wree::css_opt::{ree_numeric_general, GeneralConfig};
use wree::verify::random_interior_xstate;
use wree::xfamily::{ree_closed_form, ux_conjugate_to_ux, UxConjugateState, XState};

fn general(rho: &wree::qmat::DensityMatrix, seed: u64) -> f64 {
    let cfg = GeneralConfig {
        seed,
        ..GeneralConfig::default()
    };
    ree_numeric_general(rho, &cfg).unwrap().value.to_f64()
}

#[test]
fn corner_form_matches_closed_form_on_symmetric_slice() {
    for a in [0.1, 0.4, 0.75] {
        let b = (1.0 - a) / 2.0;
        let corner = UxConjugateState::new(a, b, b, b).unwrap();
        let x = ux_conjugate_to_ux(&corner).unwrap();
        let numeric = general(&corner.to_density(), 5);
        assert!((ree_closed_form(&x) - numeric).abs() < 1e-5, "a = {a}");
    }
}

#[test]
fn numerical_ree_is_local_unitary_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for k in 0..6 {
        let s = random_interior_xstate(&mut rng);
        let corner = UxConjugateState::new(s.a(), s.b(), s.c(), (s.b() * s.c()).sqrt()).unwrap();
        assert_eq!(ux_conjugate_to_ux(&corner).unwrap(), s);
        let (direct, conjugated) = (
            general(&s.to_density(), k),
            general(&corner.to_density(), k),
        );
        assert!(
            (direct - conjugated).abs() < 1e-5,
            "{s:?}: {direct} vs {conjugated}"
        );
    }
}

#[test]
fn closed_form_never_exceeds_general_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for k in 0..20 {
        let s = random_interior_xstate(&mut rng);
        let gap = general(&s.to_density(), k) - ree_closed_form(&s);
        assert!(gap >= -1e-6, "{s:?}: gap {gap}");
    }
}

#[test]
fn closed_form_is_attained_when_b_equals_c() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for k in 0..6 {
        let a: f64 = rng.gen_range(0.01..0.99);
        let s = XState::new(a, (1.0 - a) / 2.0, (1.0 - a) / 2.0).unwrap();
        let gap = general(&s.to_density(), k) - ree_closed_form(&s);
        assert!((-1e-6..=1e-4).contains(&gap), "a = {a}: gap {gap}");
    }
}

/// Off the symmetric slice the closed form is strictly below the REE. The
/// references come from an independent conic solver over the PPT set, which
/// equals the separable set for two qubits.
#[test]
fn closed_form_undershoots_off_the_symmetric_slice() {
    for ((a, b, c), reference) in [
        ((0.1588, 0.0456, 0.7956), 0.10438),
        ((0.0118, 0.663, 0.3252), 0.59222),
    ] {
        let s = XState::new(a, b, c).unwrap();
        let numeric = general(&s.to_density(), 1);
        assert!(
            (numeric - reference).abs() < 2e-3,
            "{numeric} vs {reference}"
        );
        assert!(ree_closed_form(&s) < numeric - 0.05);
    }
}
