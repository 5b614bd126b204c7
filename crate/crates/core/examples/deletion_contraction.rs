//! Deletion and contraction of the last vector, for counts and for ideals.

use curvalg::ideal;
use curvalg::matroid;
use curvalg::random::{self, ConfigShape};

fn main() -> curvalg::Result<()> {
    let seed = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(7);
    let mut rng = random::rng(seed);

    for cfg in random::corpus(seed, 5, ConfigShape::default()) {
        println!("{} vectors in dimension {}", cfg.len(), cfg.ambient_dim());
        println!("  direct    {:?}", matroid::graded_counts(&cfg).counts());
        println!(
            "  recursive {:?}",
            matroid::recursive_graded_counts(&cfg)?.counts()
        );
        println!(
            "  essential sets agree: {}",
            ideal::essential_deletion_contraction_check(&cfg)?
        );

        let f = random::polynomial(&mut rng, cfg.ambient_dim(), 3, 4);
        println!(
            "  derivative test on {f}: {}",
            ideal::derivative_membership_check(&cfg, &f)?
        );
    }
    Ok(())
}
