//! Concordance metrics, the distance `D(n, ñ)`, its minimizer over `ñ`, and
//! the signed ESS conventions shared by every model family.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::Error;

/// Model family of a hypothesis test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TestFamily {
    NormalOneSample,
    BetaOneSample,
    BetaTwoSample,
    LinRegTwoGroup,
}

/// A one-sided test `H0: param <= boundary` vs `H1: param > boundary`.
///
/// Two-sample equality-of-rates tests compare the two group parameters
/// directly and carry no boundary.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct HypothesisSpec {
    pub family: TestFamily,
    pub null_boundary: Option<f64>,
}

impl HypothesisSpec {
    pub fn validate(&self) -> Result<(), Error> {
        match (self.family, self.null_boundary) {
            (TestFamily::BetaTwoSample, None) => Ok(()),
            (TestFamily::BetaTwoSample, Some(_)) => Err(Error::InvalidConfig {
                field: "null_boundary",
                reason: "two-sample tests carry no boundary".into(),
            }),
            (_, None) => Err(Error::InvalidConfig {
                field: "null_boundary",
                reason: "one-sample tests require a boundary".into(),
            }),
            (TestFamily::BetaOneSample, Some(b)) if b <= 0.0 || b >= 1.0 => {
                Err(Error::InvalidConfig {
                    field: "null_boundary",
                    reason: format!("{b} not in (0,1)"),
                })
            }
            (_, Some(b)) if !b.is_finite() => Err(Error::InvalidConfig {
                field: "null_boundary",
                reason: "must be finite".into(),
            }),
            _ => Ok(()),
        }
    }
}

/// Whether the data-generating truth supports the null or the alternative.
/// Determines the ESS sign rule and nothing else.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SupportDirection {
    SupportsNull,
    SupportsAlternative,
}

/// Sufficient statistics of the distance curve.
///
/// `u_bayes` estimates `U_n^B = E(Z_n^B)^2`; `kappa` is the per-unit slope of
/// the frequentist side, `U_ñ^F = ñ·kappa`, which is linear in `ñ` because
/// the observed mean is held fixed while `ñ` varies. The `se_*` fields are 0
/// for exact (closed-form or enumeration) profiles.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ConcordanceProfile {
    pub u_bayes: f64,
    pub kappa: f64,
    pub n: usize,
    pub se_u_bayes: f64,
    pub se_kappa: f64,
}

impl ConcordanceProfile {
    /// An exact profile with zero standard errors.
    pub fn exact(u_bayes: f64, kappa: f64, n: usize) -> Self {
        let p = Self { u_bayes, kappa, n, se_u_bayes: 0.0, se_kappa: 0.0 };
        p.assert_valid();
        p
    }

    pub(crate) fn assert_valid(&self) {
        assert!(self.kappa > 0.0, "kappa must be > 0, got {}", self.kappa);
        assert!(self.u_bayes >= 0.0, "u_bayes must be >= 0, got {}", self.u_bayes);
        assert!(self.n >= 1, "n must be >= 1");
    }
}

/// Integer search range for `ñ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    pub lo: usize,
    pub hi: usize,
}

impl Grid {
    /// Default grid `[1, 20n]`. `ñ*` can sit far beyond `n` for strongly
    /// conflicting priors, so the grid extends well past it.
    pub fn default_for(n: usize) -> Self {
        Grid { lo: 1, hi: 20 * n.max(1) }
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.lo >= 1 && self.lo <= self.hi {
            Ok(())
        } else {
            Err(Error::InvalidConfig {
                field: "grid",
                reason: format!("need 1 <= lo <= hi, got [{}, {}]", self.lo, self.hi),
            })
        }
    }
}

/// `D(n, ñ) = |U_n^B − U_ñ^F| = |u_bayes − ñ·kappa|`.
pub fn distance(profile: &ConcordanceProfile, n_tilde: usize) -> f64 {
    assert!(n_tilde >= 1, "n_tilde must be >= 1");
    (profile.u_bayes - n_tilde as f64 * profile.kappa).abs()
}

/// Result of minimizing the distance over the integer grid.
///
/// `at_boundary` flags a continuous minimizer outside the grid; the reported
/// `n_tilde_star` is then the nearest grid end rather than a true interior
/// minimum.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Minimized {
    pub n_tilde_star: usize,
    pub n_tilde_continuous: f64,
    pub at_boundary: bool,
}

/// Finds `ñ* = argmin_ñ D(n, ñ)` over the grid, plus the continuous
/// minimizer `u_bayes/kappa`.
///
/// The distance is convex piecewise-linear in `ñ`, so the grid argmin is the
/// floor or ceiling of the continuous minimizer (clamped to the grid); ties
/// break toward the smaller `ñ`.
pub fn minimize_distance(profile: &ConcordanceProfile, grid: Grid) -> Minimized {
    profile.assert_valid();
    grid.validate().expect("invalid grid");
    let continuous = profile.u_bayes / profile.kappa;

    let at_boundary = continuous < grid.lo as f64 || continuous > grid.hi as f64;
    let lo_cand = (continuous.floor().max(grid.lo as f64).min(grid.hi as f64)) as usize;
    let hi_cand = (continuous.ceil().max(grid.lo as f64).min(grid.hi as f64)) as usize;

    let n_tilde_star = if lo_cand == hi_cand {
        lo_cand
    } else if distance(profile, lo_cand) <= distance(profile, hi_cand) {
        lo_cand
    } else {
        hi_cand
    };

    Minimized { n_tilde_star, n_tilde_continuous: continuous, at_boundary }
}

/// Estimation route that produced an [`EssEstimate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EssMethod {
    ClosedForm,
    ExactEnumeration,
    MonteCarlo,
    Bootstrap,
}

/// A signed ESS with its minimizer and estimator diagnostics.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EssEstimate {
    pub n: usize,
    pub n_tilde_star: usize,
    pub n_tilde_continuous: f64,
    pub ess: i64,
    pub direction: SupportDirection,
    pub method: EssMethod,
    pub at_boundary: bool,
    pub diagnostics: BTreeMap<String, f64>,
}

/// The sign rule: `SupportsNull` gives `ess = n − ñ*`, `SupportsAlternative`
/// gives `ess = ñ* − n`.
pub fn signed_ess(n: usize, n_tilde_star: usize, direction: SupportDirection) -> i64 {
    let n = n as i64;
    let star = n_tilde_star as i64;
    match direction {
        SupportDirection::SupportsNull => n - star,
        SupportDirection::SupportsAlternative => star - n,
    }
}

/// Builds the full estimate record from a minimization result.
pub fn ess_from_minimizer(
    n: usize,
    minimized: Minimized,
    direction: SupportDirection,
    method: EssMethod,
) -> EssEstimate {
    assert!(n >= 1 && minimized.n_tilde_star >= 1);
    EssEstimate {
        n,
        n_tilde_star: minimized.n_tilde_star,
        n_tilde_continuous: minimized.n_tilde_continuous,
        ess: signed_ess(n, minimized.n_tilde_star, direction),
        direction,
        method,
        at_boundary: minimized.at_boundary,
        diagnostics: BTreeMap::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn profile(u: f64, k: f64, n: usize) -> ConcordanceProfile {
        ConcordanceProfile::exact(u, k, n)
    }

    #[test]
    fn distance_is_zero_at_perfect_concordance() {
        let p = profile(100.0 * 0.01, 0.01, 100);
        assert_eq!(distance(&p, 100), 0.0);
    }

    #[test]
    fn distance_matches_normal_closed_form_values() {
        // m=20, delta=0, sigma=1, n=100: u = 100/120, kappa = 1/100
        let p = profile(100.0 / 120.0, 0.01, 100);
        assert_relative_eq!(distance(&p, 83), 1.0 / 300.0, max_relative = 1e-12);
        assert_relative_eq!(distance(&p, 100), 1.0 / 6.0, max_relative = 1e-12);
    }

    #[test]
    fn minimize_finds_interior_argmin() {
        let p = profile(100.0 / 120.0, 0.01, 100);
        let m = minimize_distance(&p, Grid { lo: 1, hi: 2000 });
        assert_eq!(m.n_tilde_star, 83);
        assert_relative_eq!(m.n_tilde_continuous, 83.3333333333, max_relative = 1e-9);
        assert!(!m.at_boundary);
    }

    #[test]
    fn minimize_exact_integer() {
        let p = profile(0.01 * 42.0, 0.01, 42);
        let m = minimize_distance(&p, Grid { lo: 1, hi: 840 });
        assert_eq!(m.n_tilde_star, 42);
        assert!(!m.at_boundary);
    }

    #[test]
    fn minimize_flags_boundary_clipping() {
        let p = profile(0.01, 0.01, 100);
        let m = minimize_distance(&p, Grid { lo: 5, hi: 2000 });
        assert!(m.at_boundary);
        assert_eq!(m.n_tilde_star, 5);
        assert_relative_eq!(m.n_tilde_continuous, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn ties_break_toward_smaller_n_tilde() {
        // u/kappa = 83.5 with exactly representable values
        let p = profile(20.875, 0.25, 100);
        let m = minimize_distance(&p, Grid { lo: 1, hi: 2000 });
        assert_eq!(m.n_tilde_star, 83);
    }

    #[test]
    fn sign_rule() {
        assert_eq!(signed_ess(100, 83, SupportDirection::SupportsNull), 17);
        assert_eq!(signed_ess(100, 100, SupportDirection::SupportsNull), 0);
        assert_eq!(signed_ess(100, 100, SupportDirection::SupportsAlternative), 0);
        assert_eq!(signed_ess(100, 115, SupportDirection::SupportsAlternative), 15);
    }

    #[test]
    fn sign_rule_round_trip() {
        for (n, star) in [(100usize, 83usize), (100, 115), (50, 50), (7, 200)] {
            assert_eq!(
                signed_ess(n, star, SupportDirection::SupportsNull),
                -signed_ess(n, star, SupportDirection::SupportsAlternative)
            );
        }
    }

    #[test]
    fn estimate_record_carries_minimizer() {
        let p = profile(100.0 / 120.0, 0.01, 100);
        let m = minimize_distance(&p, Grid::default_for(100));
        let est = ess_from_minimizer(100, m, SupportDirection::SupportsNull, EssMethod::ClosedForm);
        assert_eq!(est.ess, 17);
        assert_eq!(est.n_tilde_star, 83);
        assert!(!est.at_boundary);
    }

    #[test]
    fn hypothesis_spec_validation() {
        let ok = HypothesisSpec { family: TestFamily::BetaOneSample, null_boundary: Some(0.7) };
        assert!(ok.validate().is_ok());
        let bad = HypothesisSpec { family: TestFamily::BetaOneSample, null_boundary: Some(1.2) };
        assert!(bad.validate().is_err());
        let two = HypothesisSpec { family: TestFamily::BetaTwoSample, null_boundary: None };
        assert!(two.validate().is_ok());
        let two_bad = HypothesisSpec { family: TestFamily::BetaTwoSample, null_boundary: Some(0.0) };
        assert!(two_bad.validate().is_err());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        /// Independent oracle: exhaustive scan of the grid with the same
        /// tie rule (first minimum in ascending order).
        fn brute_force_argmin(p: &ConcordanceProfile, grid: Grid) -> usize {
            let mut best = grid.lo;
            let mut best_d = distance(p, grid.lo);
            for nt in (grid.lo + 1)..=grid.hi {
                let d = distance(p, nt);
                if d < best_d {
                    best = nt;
                    best_d = d;
                }
            }
            best
        }

        proptest! {
            #[test]
            fn grid_argmin_matches_brute_force(
                u in 0.01f64..50.0,
                k in 0.001f64..1.0,
                n in 1usize..200,
            ) {
                let p = ConcordanceProfile::exact(u, k, n);
                let grid = Grid { lo: 1, hi: 500 };
                let m = minimize_distance(&p, grid);
                prop_assert_eq!(m.n_tilde_star, brute_force_argmin(&p, grid));
            }

            #[test]
            fn interior_minimizer_is_floor_or_ceil(
                u in 0.5f64..10.0,
                k in 0.005f64..0.5,
            ) {
                let p = ConcordanceProfile::exact(u, k, 100);
                let grid = Grid { lo: 1, hi: 4000 };
                let cont = u / k;
                prop_assume!(cont >= grid.lo as f64 + 1.0 && cont <= grid.hi as f64 - 1.0);
                let m = minimize_distance(&p, grid);
                prop_assert!(!m.at_boundary);
                let fl = cont.floor() as usize;
                let ce = cont.ceil() as usize;
                prop_assert!(m.n_tilde_star == fl || m.n_tilde_star == ce);
            }

            #[test]
            fn scale_invariance_power_of_two(
                u in 0.01f64..20.0,
                k in 0.001f64..1.0,
                exp in -20i32..20,
            ) {
                // powers of two rescale exactly in binary floating point
                let c = 2f64.powi(exp);
                let grid = Grid { lo: 1, hi: 3000 };
                let m1 = minimize_distance(&ConcordanceProfile::exact(u, k, 100), grid);
                let m2 = minimize_distance(&ConcordanceProfile::exact(c * u, c * k, 100), grid);
                prop_assert_eq!(m1.n_tilde_star, m2.n_tilde_star);
            }

            #[test]
            fn argmin_nondecreasing_in_u(
                u in 0.02f64..10.0,
                du in 0.0f64..5.0,
                k in 0.005f64..0.5,
            ) {
                let grid = Grid { lo: 1, hi: 4000 };
                let m1 = minimize_distance(&ConcordanceProfile::exact(u, k, 100), grid);
                let m2 = minimize_distance(&ConcordanceProfile::exact(u + du, k, 100), grid);
                prop_assert!(m2.n_tilde_star >= m1.n_tilde_star);
            }

            #[test]
            fn sign_round_trip(n in 1usize..500, star in 1usize..500) {
                prop_assert_eq!(
                    signed_ess(n, star, SupportDirection::SupportsNull),
                    -signed_ess(n, star, SupportDirection::SupportsAlternative)
                );
            }
        }
    }
}
