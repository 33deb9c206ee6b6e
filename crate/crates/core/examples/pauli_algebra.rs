use stabforge::pauli::{PauliSpace, PauliVec};

fn main() -> stabforge::Result<()> {
    let space = PauliSpace::with_q(3, 2)?;
    let a: PauliVec = "X1Z0|X0Z2".parse()?;
    let b: PauliVec = "X0Z1|X2Z2".parse()?;
    println!("a = {a}, b = {b}");
    println!("a ⋆ b = {}", space.star(&a, &b)?);
    println!("symp(a, b) = {}, commute: {}", space.symp(&a, &b)?, space.commutes(&a, &b)?);

    let image = space.phi(&a)?;
    println!("φ(a) = {image:?} over GF(9), weight {} = wt(a) {}", stabforge::codes::hamming_weight(&image), a.weight());
    assert_eq!(space.phi_inv(&image)?, a);
    Ok(())
}
