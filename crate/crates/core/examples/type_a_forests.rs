//! Type A totals count labelled forests, graded by inversions.

use curvalg::cli::forests::inversion_distribution;
use curvalg::{matroid, roots};

fn main() -> curvalg::Result<()> {
    for n in 2..=6 {
        let cfg = roots::coroot_configuration(&roots::build_label(&format!("A{}", n - 1))?);
        let graded = matroid::graded_counts(&cfg);
        let mut inversions = inversion_distribution(n);
        inversions.reverse();
        println!("n = {n}: {} forests", graded.total());
        println!("  graded             {:?}", graded.counts());
        println!("  inversions, flipped {:?}", inversions);
    }
    Ok(())
}
