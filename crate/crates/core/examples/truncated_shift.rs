//! Finite truncations of a weighted shift whose range is not closed: rank
//! grows with n while the smallest nonzero singular value tends to zero.

use opeq::cli::truncated_shift_demo;
use opeq::ToleranceConfig;

fn main() {
    let report = truncated_shift_demo(12, &ToleranceConfig::default());
    println!("n\trank\tmin σ\t‖T†‖");
    for row in &report.table {
        println!("{}\t{}\t{:.4}\t{:.4}", row.n, row.rank, row.min_nonzero_sigma, row.pinv_norm);
    }
}
