//! Relatives of NC(1): an asymmetric two-piece law, a survival-tail law on
//! the half line, the multivariate family and the γ = 1/2 "blurred t".

mod blurred;
mod multivariate;
mod survival;
mod two_piece;

pub use blurred::blurred_t_half_log_pdf;
pub use multivariate::MultiNcParams;
pub use survival::SurvTailParams;
pub use two_piece::TwoPieceParams;
