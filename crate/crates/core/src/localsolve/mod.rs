//! Local solubility: F_p enumeration, Hensel certificates, the special-prime
//! recipes, the Hasse-Weil check on the reduction curve, and real points.

pub mod fp;
pub mod hasse_weil;
pub mod hensel;
pub mod real;
pub mod special;
pub mod sweep;

pub use fp::{affine_zero_count, fp_exists, fp_points, gradient, FpPoints};
pub use hasse_weil::{hasse_weil_check, hasse_weil_holds, reduction_curve, CurveCount};
pub use hensel::{
    find_liftable_point, measure, verify_certificate, Branch, LocalCertificate, DEFAULT_K_MAX,
};
pub use real::{real_point, real_point_residual, RealPoint};
pub use special::{special_branch, special_prime_certificate, special_prime_certificate_with_form};
pub use sweep::{
    local_sweep, local_sweep_built, local_sweep_form, sweep_primes, SweepFailure, SweepReport,
    DEFAULT_P_ENUM_MAX,
};
