pub mod buchberger;
pub mod cli;
pub mod coefficient;
pub mod context;
pub mod division;
pub mod error;
pub mod f4;
pub mod oracle;
pub mod parse;
pub mod radii;
pub mod series;
pub mod term;

pub use buchberger::{buchberger, buchberger_criterion, minimal_gb, s_poly, GroebnerBasis, SPair};
pub use coefficient::{Coefficient, Valuation};
pub use context::{AlgebraContext, Context, MonomialOrder};
pub use division::{divide, is_member, reduce, Division};
pub use error::{Error, Result};
pub use f4::{f4, symbolic_preprocessing, tate_row_reduction, MacaulayMatrix};
pub use parse::parse_series;
pub use radii::{eta_gb, eta_lift, groebner_basis, Algorithm, EtaSeries};
pub use series::TateSeries;
pub use term::{Exponent, RingMode, Term};
