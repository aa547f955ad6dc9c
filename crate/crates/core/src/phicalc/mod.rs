//! Laurent polynomials in `phi = 2 sin(u/2)` and their expansion as series in
//! the genus parameter `u`.

mod laurent;
mod phirat;
mod series;

pub use laurent::{Laurent, PhiElem};
pub use phirat::PhiRat;
pub use series::{phi_expansion, phi_pow_series, to_useries, USeries};

/// Coefficient of `u^k` in a series; errors past the truncation order.
pub fn useries_coeff<F: crate::exactring::Field>(s: &USeries<F>, k: i32) -> crate::Result<F> {
    s.coeff(k)
}
