//! Arithmetic in the algebra where every generator squares to zero.

use curvalg::linalg::int;
use curvalg::squarefree::{self, SquareFreeElement};
use curvalg::{Polynomial, VectorConfiguration};

fn main() -> curvalg::Result<()> {
    let a = SquareFreeElement::phi(0).add(&SquareFreeElement::phi(1));
    println!("a       = {a}");
    println!("a * a   = {}", a.multiply(&a));
    println!("a^3     = {}", a.multiply(&a).multiply(&a));

    // theta_i = sum of v_j[i] phi_j for A2's coroots
    let cfg = VectorConfiguration::from_integers(2, &[vec![1, 0], vec![0, 1], vec![1, 1]])?;
    let gens = squarefree::generators_from(&cfg);
    for (i, t) in gens.thetas().iter().enumerate() {
        println!("theta_{} = {t}", i + 1);
    }

    let x = Polynomial::variable(2, 0);
    let y = Polynomial::variable(2, 1);
    let f = x.mul(&y).mul(&x.sub(&y)).scale(&int(2));
    println!("f = {f}  evaluates to {}", squarefree::evaluate(&f, &gens));
    println!(
        "x^2 y^2 evaluates to {}",
        squarefree::evaluate(&x.pow(2).mul(&y.pow(2)), &gens)
    );
    Ok(())
}
