//! Numerical experiments on `E` built from the exact primitives.

pub mod boxcount;
pub mod counting;
pub mod cover;
pub mod integral;
pub mod ivt;
pub mod variation;

pub use boxcount::{box_count_empirical, dimension_slope, dimension_sweep, SlopeFit};
pub use counting::{count_bounded_products, factorial_bounds_check, CountReport};
pub use cover::{
    hausdorff_cover_sum, lambda_cover_counts, lambda_cover_for_epsilon, CoverReport, CoverSum,
};
pub use integral::{integrate_esum, IntegralReport};
pub use ivt::{ivt_root, RootBracket};
pub use variation::{variation_over_partition, VariationReport};
