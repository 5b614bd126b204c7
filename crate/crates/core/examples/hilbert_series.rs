//! Graded dimensions of a root system's curvature algebra from all three engines.
//!
//! cargo run --release --example hilbert_series -- B3

use curvalg::engines::{self, Engine};
use curvalg::roots;
use curvalg::squarefree::Limits;

fn main() -> curvalg::Result<()> {
    let label = std::env::args().nth(1).unwrap_or_else(|| "A3".into());
    let rs = roots::build_label(&label)?;
    let cfg = roots::coroot_configuration(&rs);
    println!(
        "{label}: {} coroots in dimension {}",
        cfg.len(),
        cfg.ambient_dim()
    );

    for (engine, graded) in engines::run_and_compare(&cfg, &Engine::ALL, Limits::default())? {
        println!(
            "{:>13}  total {:>5}  {:?}",
            engine.name(),
            graded.total(),
            graded.counts()
        );
    }
    Ok(())
}
