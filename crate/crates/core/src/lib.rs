//! Exact computation and verification for the coefficients `d_l(m)` of the
//! polynomial `P_m(a)` attached to the quartic integral
//! `∫_0^∞ dx / (x^4 + 2ax^2 + 1)^{m+1}`.
//!
//! Modules, bottom up:
//! - [`exact`]: rationals, binomials, Pochhammer symbols
//! - [`polynomial`]: dense exact polynomials
//! - [`coefficients`]: `d_l(m)`, `P_m(a)`, consecutive differences
//! - [`sequence`]: unimodality, log-concavity, the `L` operator, ratio-monotonicity
//! - [`hypergeometric`]: terminating `2F1` and its identities
//! - [`tfunction`]: `S_{m,l}`, `T(m)` and its representations and bounds
//! - [`recurrence`]: the three-term recurrence certificate for `T`
//! - [`scan`]: counterexample searches for the open conjectures
//! - [`quadrature`]: floating-point check of the integral evaluation
//! - [`suites`]: named verification suites producing [`PropertyReport`]s

pub mod coefficients;
pub mod error;
pub mod exact;
pub mod hypergeometric;
pub mod polynomial;
pub mod quadrature;
pub mod recurrence;
pub mod report;
pub mod scan;
pub mod sequence;
pub mod suites;
pub mod tfunction;

pub use coefficients::{coefficient_row, d_coeff, delta_closed, delta_direct, poly_p, CoefficientRow};
pub use error::{Error, Result};
pub use exact::{binomial, parse_rational, pochhammer, to_canonical, ExactRational};
pub use hypergeometric::{hyp2f1_as_polynomial, hyp2f1_terminating, Hyp2F1Spec};
pub use polynomial::DensePolynomial;
pub use quadrature::{closed_form, quadrature_check, quartic_integral_numeric, QuadratureResult};
pub use recurrence::{CertificateReport, RecurrenceCoefficients};
pub use report::{Counterexample, PropertyReport, Verdict, SCHEMA_VERSION};
pub use scan::{scan_hyp_inequality, scan_infinite_logconcavity, ScanConfig};
pub use suites::{RunReport, ReportItem, Suite};
pub use tfunction::{s_sum, t_direct, t_hypergeometric, t_integral, t_via_w, TValueBundle};
