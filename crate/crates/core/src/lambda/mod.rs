//! Exact arithmetic in `Z_p[[X]]`: p-adic coefficients with explicit precision,
//! distinguished polynomials, cyclotomic factors in `1+X`, Weierstrass
//! division/preparation and the `gamma -> gamma^-1` involution.

pub mod iota;
pub mod padic;
pub mod poly;
pub mod series;
pub mod weierstrass;

pub use iota::{default_iota_precision, iota_apply, iota_normalize, iota_normalize_with};
pub use padic::PadicInt;
pub use poly::{cyclotomic_phi, omega, DistinguishedPoly};
pub use series::LambdaSeries;
pub use weierstrass::{weierstrass_divide, weierstrass_prepare, WeierstrassDivision, WeierstrassFactorization};
