//! The verification suites behind `cox-delpezzo verify`, called as a library.

use cox_delpezzo::cli::verify_report;
use cox_delpezzo::cli::suites::Suite;
use cox_delpezzo::Result;

fn main() -> Result<()> {
    let r: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let report = verify_report(r, None, 0, Suite::All)?;
    println!("{report}");
    Ok(())
}
