//! Arithmetic in GF(9) and the tower GF(9)/GF(3).

use stabforge::gf::{Field, Tower};

fn main() -> stabforge::Result<()> {
    let f9 = Field::with_order(9)?;
    println!("GF(9): modulus {:?}, primitive element {}", f9.modulus(), f9.primitive());
    let a = 5;
    let b = f9.inv(a)?;
    println!("{a} * {b} = {}", f9.mul(a, b));
    println!("{a}^8 = {}", f9.pow(a, 8));

    let f3 = Field::with_order(3)?;
    let tower = Tower::new(&f3, &f9)?;
    let x = 7;
    let coords = tower.coords(x).to_vec();
    println!("{x} in the power basis over GF(3): {coords:?}");
    assert_eq!(tower.elem(&coords)?, x);
    let (beta, beta_q) = tower.frobenius_basis()?;
    println!("Frobenius basis (β, β^3) = ({beta}, {beta_q})");
    Ok(())
}
