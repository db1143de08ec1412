//! Drive the command-line surface programmatically and parse its JSON
//! reports.
//!
//! The binary prints one report document per invocation; this example
//! writes a matrix file, calls the same entry point the `wielandt`
//! binary uses, and shows where the pieces land in the document. Useful
//! as a template for scripting against the tool.
//!
//! Run with `cargo run --example cli_reports`.

use std::io::Write;

fn main() {
    // a Gram-pair matrix file; complex entries would be [re, im] arrays
    let dir = std::env::temp_dir();
    let path = dir.join("wielandt_example_input.json");
    let mut f = std::fs::File::create(&path).expect("temp file");
    write!(
        f,
        r#"{{"mode":"real","n":3,
            "G1":[[2,0.3,0],[0.3,1,0.1],[0,0.1,0.7]],
            "G2":[[1,0.2,-0.1],[0.2,3,0.4],[-0.1,0.4,1.5]]}}"#
    )
    .expect("write input");
    let path = path.to_str().expect("utf-8 path");

    // each command returns the process exit code it would have used
    println!("== analyze ==");
    let code = wielandt::cli::run_from(["wielandt", "analyze", path, "--verbose"]);
    println!("(exit {code})\n");

    println!("== bounds for a concrete pair ==");
    let code = wielandt::cli::run_from([
        "wielandt", "bounds", path, "--u", "1,2,-1", "--v", "0.5,-1,3",
    ]);
    println!("(exit {code})\n");

    println!("== bounds for an abstract angle ==");
    let code = wielandt::cli::run_from(["wielandt", "bounds", path, "--phi", "0.7853981633974483"]);
    println!("(exit {code})\n");

    println!("== extremal pair, upper tangent bound at phi = 1.0 ==");
    let code = wielandt::cli::run_from([
        "wielandt", "extremal", path, "--angle", "1.0", "--side", "right",
    ]);
    println!("(exit {code})\n");

    println!("== randomized verification, 200 trials ==");
    let code = wielandt::cli::run_from([
        "wielandt", "verify", path, "--seed", "42", "--trials", "200", "--grid", "64",
    ]);
    println!("(exit {code})");

    let _ = std::fs::remove_file(path);
}
