//! A code read from generator-matrix text: syndromes, coset leaders and quantization.
//!
//! cargo run --example custom_code

use coset_dht::montecarlo::md_quantize;
use coset_dht::{enumerate_spectrum, parse_generator, roc_curve, BinaryLinearCode, BitVector};

const GENERATOR: &str = "\
10 3
1110000111
0011101101
1101110010
";

fn main() -> coset_dht::Result<()> {
    let code = BinaryLinearCode::from_generator(parse_generator(GENERATOR)?)?;
    println!("[{},{}] code, parity check:", code.n(), code.k());
    for r in 0..code.parity_check().num_rows() {
        println!("  {}", code.parity_check().row(r));
    }

    let (spectrum, table) = enumerate_spectrum(&code, true)?;
    let table = table.expect("table requested");
    println!(
        "spectrum {:?}, covering radius {}",
        spectrum.counts(),
        spectrum.rho()
    );

    let x = BitVector::new(10, 0b1011001110)?;
    let q = md_quantize(&table, &x)?;
    println!(
        "x = {x}  syndrome {}  x_q = {q}  distance {}",
        code.syndrome(&x)?,
        x.distance(&q)?
    );

    for point in roc_curve(&spectrum, 0.1)?.points.iter().take(5) {
        println!(
            "gamma_t={} alpha={:.6} beta={:.6}",
            point.gamma_t, point.alpha, point.beta
        );
    }
    Ok(())
}
