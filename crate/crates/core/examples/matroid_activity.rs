//! Circuits, external activity and robust subsets of a small configuration.

use curvalg::matroid;
use curvalg::{SubsetMask, VectorConfiguration};

fn main() -> curvalg::Result<()> {
    // e1, e2, e1 + e2, e1 - e2
    let cfg =
        VectorConfiguration::from_integers(2, &[vec![1, 0], vec![0, 1], vec![1, 1], vec![1, -1]])?;

    for c in matroid::circuits(&cfg) {
        let dep: Vec<String> = c.dependence.iter().map(|x| x.to_string()).collect();
        println!("circuit {}  relation ({})", c.support, dep.join(", "));
    }

    println!("\nindependent subset -> activity, robust image");
    for bits in 0..1u128 << cfg.len() {
        let s = SubsetMask::from_bits(bits);
        if matroid::is_independent(&cfg, s) {
            let act = matroid::external_activity(&cfg, s)?;
            let image = matroid::nbc_bijection(&cfg, s)?;
            println!("  {s:<8} {act}  {image}");
        }
    }

    let graded = matroid::graded_counts(&cfg);
    println!(
        "\ngraded {:?}, {} robust subsets",
        graded.counts(),
        matroid::robust_subsets(&cfg).len()
    );
    Ok(())
}
