//! Exact Type-I / Type-II tradeoff of two [16,5] quantizers: the Reed–Muller code and the
//! optimized hypothetical spectrum.
//!
//! cargo run --example roc -- 0.05

use coset_dht::numfmt::fmt_sig;
use coset_dht::optimize::optimal_spectrum;
use coset_dht::{catalog_lookup, enumerate_spectrum, roc_curve};

fn main() -> coset_dht::Result<()> {
    let p0: f64 = std::env::args()
        .nth(1)
        .map_or(0.05, |s| s.parse().expect("p0 must be a number"));
    let (rm, _) = enumerate_spectrum(&catalog_lookup("rm_16_5")?, false)?;
    let rm_curve = roc_curve(&rm, p0)?;
    println!("rm_16_5 counts {:?}", rm.counts());
    println!("gamma_t,beta,alpha_rm,alpha_opt,opt_counts");
    for point in &rm_curve.points {
        let opt = optimal_spectrum(16, 5, p0, point.gamma_t)?;
        let opt_alpha = coset_dht::alpha_exact(&opt, p0, point.gamma_t)?;
        println!(
            "{},{},{},{},{:?}",
            point.gamma_t,
            fmt_sig(point.beta),
            fmt_sig(point.alpha),
            fmt_sig(opt_alpha),
            opt.counts()
        );
    }
    Ok(())
}
