//! Exponent-2 characters of `l(u)` and the action of `s`.
//!
//! Characters of `l` are Kummer classes `e ∈ l*/l*²`; characters of a
//! residue field `l(a_p)` are classes of `f(a_p)` with `f` reduced mod `p`.
//! Corestriction is the norm `Res(p, f)`, and `s` moves a class over `p` to
//! one over `p̃` by `σ` on coefficients and `a_p ↦ c/a_p̃`. Square classes
//! over `l(a_p)` are decided for `deg p ≤ 2`.

mod chars;
mod factored;
mod irred;
mod squares;
mod sstar;

pub use chars::{
    char_norm, cor_char, cor_identity_check, cyclic_quartic_criterion, klein_rational_rep, s_pp_star, s_pu_star,
    s_tilde_star, sigma_char, w_membership, Char2L, Char2P, WClass,
};
pub use factored::{s_action_factored, tilde_poly, tilde_poly_by_roots, FactoredRF};
pub use irred::{is_irreducible, roots_in_l, IrredPoly, MAX_IRRED_DEGREE};
pub use squares::{is_square_mod, sqrt_mod};
pub use sstar::{
    apply_s_star, check_fixed_conditions, table_image, BrLUElem, Condition, FixedReport, NormSignTable, SStarTable,
    ZeroTable,
};
