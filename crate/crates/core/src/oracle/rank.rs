use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Rank over `Q` of a rational matrix given by rows.
///
/// Rows are scaled to integer rows by the lcm of their denominators, then
/// reduced with fraction-free (Bareiss) elimination; every division is exact.
/// Ragged input is treated as zero-padded on the right.
pub fn exact_rank(rows: &[Vec<BigRational>]) -> usize {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let mut out: Vec<BigInt> = row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
            out.resize(cols, BigInt::zero());
            out
        })
        .filter(|row| row.iter().any(|x| !x.is_zero()))
        .collect();
    integer_rank(&mut m)
}

/// Fraction-free rank of an integer matrix; destroys the input.
pub fn integer_rank(m: &mut [Vec<BigInt>]) -> usize {
    let rows = m.len();
    let cols = m.iter().map(Vec::len).max().unwrap_or(0);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[c];
        for row in rest.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let v = &row[j] * pivot - &factor * &pivot_row[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = pivot.clone();
        r += 1;
    }
    r
}
