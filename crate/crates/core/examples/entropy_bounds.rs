//! q-ary entropy, the QGVB curve and the finite-n distance bounds.

use stabforge::bounds;

fn main() -> stabforge::Result<()> {
    for q in [2u64, 3, 4] {
        println!("q={q}: f = {:.6}, fbar = {:.6}", bounds::f_of_q(q)?, bounds::fbar_of_q(q)?);
    }
    let y = 0.25;
    let x = bounds::entropy_inv(4, y)?;
    println!("H_4^-1({y}) = {x:.12}, H_4 of that = {:.12}", bounds::entropy(4, x)?);

    let m = bounds::rudra_min(4, 0.3, 200)?;
    println!("min over θ ≤ 0.3 at θ = {:.4}: {:.9} (endpoint {:.9})", m.theta, m.value, m.endpoint);

    println!("{:>5} {:>10} {:>12} {:>12}", "R", "qgvb", "n=8 bound", "prob");
    for i in 0..=9 {
        let r = i as f64 / 10.0;
        let t = bounds::theorem2_bounds(2, 8, r)?;
        println!("{r:>5.1} {:>10.5} {:>12.5} {:>12.5}", bounds::qgvb(2, r)?, t.relative_distance, t.success_probability);
    }
    Ok(())
}
