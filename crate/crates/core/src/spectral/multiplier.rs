use super::{to_real, TrigPolynomial};
use crate::geometry::{piece_assign, HPolytope, TriangularPiece};
use crate::linalg::dot;

/// Sharp cutoff to the frequencies assigned to `piece` (gauge argmax with
/// lowest-index tie-break). Summing over all pieces recovers `f` exactly.
pub fn cone_multiplier(
    f: &TrigPolynomial,
    piece: usize,
    p: &HPolytope,
    pieces: &[TriangularPiece],
) -> TrigPolynomial {
    f.filter(|n| piece_assign(pieces, p, &to_real(n)) == piece)
}

/// Sharp cutoff to the closed half-space `{n : a·n <= c}`.
pub fn halfspace_multiplier(f: &TrigPolynomial, a: &[f64], c: f64) -> TrigPolynomial {
    f.filter(|n| dot(a, &to_real(n)) <= c)
}
