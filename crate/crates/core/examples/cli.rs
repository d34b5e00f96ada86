//! Driving the command line in-process.

use pierce_esum::cli::run_captured;

fn main() {
    for args in [
        &["expand", "3/8"][..],
        &[
            "--format",
            "csv",
            "graph",
            "--n-max",
            "2",
            "--digit-cap",
            "3",
        ],
        &["--format", "json", "--no-timestamp", "jumps", "3/8"],
    ] {
        let (code, out, err) = run_captured(args);
        println!("$ pierce {}  -> exit {code}\n{out}{err}", args.join(" "));
    }
}
