//! The allocation problem behind the optimizer, solved greedily and by exhaustive search.
//!
//! cargo run --example ilp

use coset_dht::optimize::bruteforce_ilp;
use coset_dht::{solve_ilp, IlpInstance};

fn main() -> coset_dht::Result<()> {
    let instance = IlpInstance::for_code(8, 4, 3, 0.05, 2)?;
    println!("weights    {:?}", instance.weights());
    println!(
        "capacities {:?}, total {}",
        instance.capacities(),
        instance.total()
    );
    let greedy = solve_ilp(&instance)?;
    let exhaustive = bruteforce_ilp(&instance)?;
    println!(
        "greedy     {greedy:?} objective {:.6}",
        instance.objective(&greedy)
    );
    println!(
        "exhaustive {exhaustive:?} objective {:.6}",
        instance.objective(&exhaustive)
    );
    Ok(())
}
