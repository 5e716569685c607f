use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{
    certify_kcontact, choose_primitive_twist, homology_of_total, prime_power_isotropy, validate_orbifold,
    HomologyReport, KContactCertificate, SeifertBundle, SeifertError, Twist,
};
use crate::decimal;
use crate::lattice::is_prime;
use crate::surgery::ManifoldModel;

/// Everything produced by running the prime-power construction over a base.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePowerRun {
    #[serde(with = "decimal::bigint")]
    pub p: BigInt,
    pub orbifold_checks: Vec<String>,
    pub twist: Twist,
    pub homology: HomologyReport,
    pub certificate: KContactCertificate,
}

impl PrimePowerRun {
    pub fn bundle(&self) -> &SeifertBundle {
        &self.twist.bundle
    }
}

/// Isotropy `mᵢ = pⁱ` on every tracked surface with all `jᵢ = 1` and trivial
/// background, then the primitive twist, homology and K-contact certificate.
pub fn prime_power_pipeline(base: &ManifoldModel, p: &BigInt, twist_bound: u32) -> Result<PrimePowerRun, SeifertError> {
    if !is_prime(p) {
        return Err(SeifertError::InvalidInvariant(format!("{p} is not prime")));
    }
    let orbifold = validate_orbifold(base, &prime_power_isotropy(base, p))?;
    let orbifold_checks = orbifold.checks.clone();
    let background = vec![BigInt::zero(); base.surfaces().len()];
    let bundle = SeifertBundle::new(orbifold, None, background)?;
    let twist = choose_primitive_twist(&bundle, None, twist_bound)?;
    let homology = homology_of_total(&twist.bundle)?;
    let certificate = certify_kcontact(&twist.bundle, &twist.omega_class)?;
    Ok(PrimePowerRun {
        p: p.clone(),
        orbifold_checks,
        twist,
        homology,
        certificate,
    })
}
