//! Everything end to end, in memory: the same report the `reproduce`
//! subcommand writes to disk.

use qtangle::cli::build_report;

fn main() -> qtangle::Result<()> {
    let report = build_report(20211215, 100_000, 0.24, 21)?;
    for (name, body) in &report.files {
        println!("{name}: {} bytes", body.len());
    }
    let summary = report
        .files
        .iter()
        .find(|(n, _)| *n == "summary.txt")
        .map(|(_, b)| b.as_str())
        .unwrap_or_default();
    println!("\n{summary}");
    Ok(())
}
