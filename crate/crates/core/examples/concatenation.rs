//! Concatenates a GRS outer code over GF(16) with four random [[2,2]]_2 inner codes.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stabforge::concat;

fn main() -> stabforge::Result<()> {
    let (q, n, big_n, big_k) = (2, 2, 4, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let cc = concat::sample_concat(q, n, big_n, big_k, &mut rng)?;
    println!(
        "outer [{}, {}] over GF({}), {} inner codes, length {} over GF({})",
        cc.outer_len(),
        cc.outer().dimension(),
        cc.outer().field().order(),
        cc.inners().len(),
        cc.len(),
        q * q
    );
    let message = vec![1, 0, 5];
    println!("encode {message:?} -> {:?}", cc.encode_message(&message)?);
    println!("outer distance {}, concatenated distance {}", cc.outer().min_distance()?, cc.distance()?);
    println!("toy mode: {}", cc.toy_mode());
    Ok(())
}
