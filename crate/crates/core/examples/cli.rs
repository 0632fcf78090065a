//! Drives the command-line interface in-process.

use floer_gamma::cli::run_capture;

fn main() {
    for args in [
        &["gamma", "sigma_2_3_5", "--range", "-2..3"][..],
        &["h", "neg_sigma_2_3_5"],
        &["seifert", "r", "2", "3", "5"],
        &["--json", "seifert", "whitehead", "2", "3"],
    ] {
        let (code, out, err) = run_capture(args);
        println!("$ floer-gamma {}  (exit {code})\n{out}{err}", args.join(" "));
    }
}
