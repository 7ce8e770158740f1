//! The CSV and JSON reports behind the `jlparadox` binary, driven in-process.
//!
//! cargo run --example reports

use jlparadox::report::run;

fn main() {
    let runs: [&[&str]; 3] = [
        &["table1", "--alpha", "0.05,0.01"],
        &["zone", "--n", "1e6", "--format", "json"],
        &["analyze", "--n", "2000", "--delta", "0.3", "--quote-z"],
    ];
    for args in runs {
        println!("$ jlparadox {}", args.join(" "));
        let argv = std::iter::once("jlparadox").chain(args.iter().copied());
        let code = run(argv, &mut std::io::stdout(), &mut std::io::stderr());
        println!("(exit {code})\n");
    }
}
