//! Essential hyperplanes, the power ideal they generate, and the graded
//! quotient by that ideal.

use curvalg::ideal;
use curvalg::roots;
use curvalg::squarefree::Limits;

fn main() -> curvalg::Result<()> {
    let label = std::env::args().nth(1).unwrap_or_else(|| "B2".into());
    let cfg = roots::coroot_configuration(&roots::build_label(&label)?);

    for h in ideal::essential_hyperplanes(&cfg)? {
        let normal: Vec<String> = h.normal.iter().map(|x| x.to_string()).collect();
        println!(
            "normal ({})  off {}  d = {}",
            normal.join(", "),
            h.index_set,
            h.d
        );
    }
    for g in ideal::ideal_generators(&cfg)? {
        println!("generator {}", g.polynomial());
    }
    println!("all generators vanish: {}", ideal::generators_vanish(&cfg)?);

    let q = ideal::quotient_hilbert(&cfg, cfg.len() + 1, Limits::default())?;
    println!("quotient dimensions {:?}", q.counts());
    Ok(())
}
