// Exact S(p) by enumerating affine orbit representatives, compared with the
// interval and with local search.
//
//     cargo run --release --example exhaustive_search [P_MAX]

use littlewood_zp::numeric::is_prime;
use littlewood_zp::search::{exhaustive_littlewood, interval_l1, local_search_littlewood};
use littlewood_zp::Result;

pub fn run_up_to(p_max: u64) -> Result<()> {
    println!(
        "{:>3} {:>10} {:>14} {:>14}  witness",
        "p", "orbits", "S(p)", "interval"
    );
    for p in (3..=p_max).filter(|&n| is_prime(n)) {
        let r = exhaustive_littlewood(p)?;
        println!(
            "{p:>3} {:>10} {:>14.10} {:>14.10}  {:?}",
            r.orbits,
            r.s_p,
            interval_l1(p)?,
            r.witness
        );
    }
    let l = local_search_littlewood(101, 0, 20)?;
    println!(
        "p = 101: local search {:.6} from the {:?} start, interval {:.6}",
        l.upper_bound,
        l.start,
        interval_l1(101)?
    );
    Ok(())
}

pub fn run() -> Result<()> {
    run_up_to(19)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    let p_max = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(19);
    run_up_to(p_max)
}
