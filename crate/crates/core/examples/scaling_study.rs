// One CSV row per modulus: the certified lower bound, the interval value,
// min|F|·ln p, and the set construction's deviations.
//
//     cargo run --release --example scaling_study [p1,p2,...]

use littlewood_zp::search::{scaling_study, write_scaling_csv, StudyConfig};
use littlewood_zp::Result;

pub fn run_for(p_list: &[u64]) -> Result<()> {
    let rows = scaling_study(p_list, &StudyConfig::default())?;
    write_scaling_csv(&rows, std::io::stdout())
}

pub fn run() -> Result<()> {
    run_for(&[13, 1009, 10_007])
}

#[allow(dead_code)]
fn main() -> Result<()> {
    let p_list: Vec<u64> = match std::env::args().nth(1) {
        Some(s) => s.split(',').filter_map(|t| t.trim().parse().ok()).collect(),
        None => vec![13, 1009, 10_007, 100_003],
    };
    run_for(&p_list)
}
