//! Exact arithmetic in `Z[t]/(t^N - 1)` and `Z[t]/Phi_d(t)`, torsion units
//! and explicit unit identities.

mod cyclotomic;
mod identities;
mod poly;
mod ring;
mod units;

pub use cyclotomic::{cyclotomic_divide, cyclotomic_poly, project, CyclotomicElem};
pub use identities::{
    legal_gamma_indices, legal_sigma_v_params, u_1i_2group, u_1j_c4q, verify_cond_b_unit,
    verify_identity_gamma, verify_identity_v, verify_sigma_v_factorization, CondBReport,
    FactorizationReport, IdentityGammaReport, IdentityVReport,
};
pub use ring::{GroupRingElem, Involution, MAX_ORDER};
pub use units::{
    geom_quotient, nu_normalize, reidemeister_quotient, reidemeister_quotient_reps,
    tau_induced_check, tau_product_matches, unit_quotient_5powers, TauCheck, TorsionUnit,
};

/// Parses the textual polynomial form into a coefficient vector.
pub fn parse_poly(s: &str) -> crate::Result<Vec<num_bigint::BigInt>> {
    poly::parse(s)
}

/// Formats a coefficient vector (lowest degree first) as text.
pub fn format_poly(coeffs: &[num_bigint::BigInt]) -> String {
    poly::format(coeffs)
}
