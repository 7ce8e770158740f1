//! Special functions, bracketed root finding and adaptive quadrature.

pub mod quadrature;
pub mod roots;
pub mod special;

pub use quadrature::{integrate, integrate_with_breaks, QuadratureSettings};
pub use roots::{find_root, RootBracket};
pub use special::{
    log_add_exp, logistic, logit, norm_cdf, norm_quantile, norm_sf, std_normal_cdf,
    std_normal_quantile, two_sided_p_value,
};
