//! Samples a random [[4,2]]_2 stabilizer code and computes its quantum distance.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stabforge::{codes, pauli::PauliSpace, stab};

fn main() -> stabforge::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let space = PauliSpace::with_q(2, 4)?;
    let code = stab::sample_code(&space, 2, &mut rng)?;
    for g in code.stabilizer().gens() {
        println!("S  {g}");
    }
    for (x, z) in code.logical_x().iter().zip(code.logical_z()) {
        println!("X̄  {x}\nZ̄  {z}");
    }

    let cs = codes::stabilizer_code(code.stabilizer())?;
    let cn = codes::normalizer_code(&code)?;
    let (d, degenerate) = codes::quantum_distance(&cs, &cn)?;
    println!("[[4,2,{d}]]_2, degenerate: {degenerate}");

    let sigma = space.random(&mut rng);
    if !sigma.is_trivial() && code.stabilizer().normalizes(&sigma)? {
        println!("{sigma} lies in the coset labelled {:?}", code.coset_label(&sigma)?);
    }
    println!("{}", serde_json::to_string(&code).expect("serializable"));
    Ok(())
}
