//! Prints the ±1 table of every Walsh packet on an interval.
//!
//! ```text
//! cargo run --example packet_table -- 3 1:0
//! ```

use walshform::cli::{packet_table, parse_interval};

fn main() -> walshform::Result<()> {
    let mut args = std::env::args().skip(1);
    let m: u32 = args.next().map_or(3, |s| s.parse().expect("resolution"));
    let spec = args.next().unwrap_or_else(|| "0:0".into());
    let i = parse_interval(&spec, m)?;

    println!("w_{{I,n}} on I = {i}, grid 2^-{m}");
    for (n, row) in packet_table(m, i)?.iter().enumerate() {
        let cells: String = row.iter().map(|&v| if v > 0 { " +" } else { " -" }).collect();
        println!("n = {n:>2}:{cells}");
    }
    Ok(())
}
