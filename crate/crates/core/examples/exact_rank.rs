//! Exact rank and kernels over the rationals.

use curvalg::linalg::{self, rational, Matrix};

fn main() -> curvalg::Result<()> {
    let m = Matrix::from_rows(
        3,
        &[
            vec![rational(1, 2), rational(1, 3), rational(1, 4)],
            vec![rational(1, 3), rational(1, 4), rational(1, 5)],
            vec![rational(5, 6), rational(7, 12), rational(9, 20)],
        ],
    )?;
    println!("rank {}", m.rank());
    for k in linalg::kernel_basis(&m) {
        let k: Vec<String> = k.iter().map(|x| x.to_string()).collect();
        println!("kernel ({})", k.join(", "));
    }

    // a large integer matrix, rank found modularly and certified exactly
    let big: Vec<Vec<num_bigint::BigInt>> = (0..6)
        .map(|i| {
            (0..6)
                .map(|j| num_bigint::BigInt::from(10i64).pow(12) * (i + 1) + j * i)
                .collect()
        })
        .collect();
    println!("big rank {}", linalg::rank_of_integer_rows(&big, 6));
    println!("Bareiss  {}", linalg::bareiss_rank(big, 6));
    Ok(())
}
