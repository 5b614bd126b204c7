//! Root data, Weyl orbits and curvature coefficients.

use curvalg::roots::{self, Weight};

fn main() -> curvalg::Result<()> {
    let rs = roots::build_label("G2")?;
    println!(
        "{}: {} positive roots, Cartan matrix {:?}",
        rs.type_label,
        rs.len(),
        rs.cartan
    );
    for (i, c) in rs.root_coefficients.iter().enumerate() {
        println!(
            "  root {c:?}  height {}  coroot {:?}",
            rs.height(i),
            rs.coroots[i]
        );
    }

    let rho = Weight::from_integers(&[1, 1]);
    let coeffs: Vec<String> = roots::curvature_coefficients(&rs, &rho)?
        .iter()
        .map(|x| x.to_string())
        .collect();
    println!("curvature of rho: ({})", coeffs.join(", "));

    for i in 0..rs.rank() {
        let orbit = roots::weyl_orbit(&rs, &Weight::fundamental(rs.rank(), i))?;
        println!("orbit of omega_{} has {} weights", i + 1, orbit.len());
    }
    println!("fundamental degrees {:?}", roots::fundamental_degrees(&rs));
    println!("|W| = {}", roots::weyl_group_order(&rs)?);
    Ok(())
}
