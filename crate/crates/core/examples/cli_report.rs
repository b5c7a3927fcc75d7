//! Drives the command line in-process and prints the JSON reports.
//!
//! cargo run --example cli_report

use cr_symmetry::cli::run;

fn main() {
    for args in [
        vec!["bounds", "--n", "2", "--k", "0"],
        vec!["verify", "--family", "indefinite", "--n", "3", "--eps", "+"],
        vec!["levi-form", "--family", "definite", "--n", "3"],
        vec!["satake", "--n", "4", "--k", "1"],
        vec!["bounds", "--n", "0", "--k", "0"],
    ] {
        let (code, report) = run(&args);
        println!("$ crsym {}  (exit {code})", args.join(" "));
        println!("{}", serde_json::to_string_pretty(&report.result).expect("json"));
    }
}
