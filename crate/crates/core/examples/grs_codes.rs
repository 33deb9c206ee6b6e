//! A [6,3] generalized Reed-Solomon code over GF(7): distance and weight spectrum.

use stabforge::codes;
use stabforge::gf::Field;

fn main() -> stabforge::Result<()> {
    let f = Field::with_order(7)?;
    let alphas = [0, 1, 2, 3, 4, 5];
    let vs = [1, 3, 1, 2, 6, 1];
    let grs = codes::grs(&f, &alphas, &vs, 3)?;
    let code = grs.code();
    let d = code.min_distance()?;
    println!("[6,3] GRS over GF(7): d = {d} (designed {})", grs.designed_distance());

    let spectrum = code.weight_distribution()?;
    print!("{}", codes::weight_distribution_csv(&spectrum));
    for (w, &count) in spectrum.iter().enumerate().skip(d) {
        let bound = codes::mds_weight_bound(6, w, d, 7)?;
        println!("w={w}: {count} ≤ {bound}");
    }
    println!("codeword for (1, 2, 3): {:?}", code.encode(&[1, 2, 3])?);
    Ok(())
}
