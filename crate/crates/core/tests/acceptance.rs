//! Runs every acceptance criterion and prints one verdict line for each.

use quartics::acceptance::{run_criterion, CRITERIA};

fn main() {
    let mut failed = Vec::new();
    for (id, _, _) in CRITERIA {
        let r = run_criterion(id, 0).expect("known criterion");
        println!("{}", r.summary());
        for c in r.checks.iter().filter(|c| !c.pass) {
            println!("    {}: {}", c.name, c.detail);
        }
        if !r.pass() {
            failed.push(id);
        }
    }
    if !failed.is_empty() {
        eprintln!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}
