//! Driving the command-line front end from Rust, capturing its output.

fn main() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = weil_stark::cli::run(["weilstark", "verify", "--only", "regulator"], &mut out, &mut err);
    let report: serde_json::Value = serde_json::from_slice(&out).expect("JSON report");
    println!("exit code {code}, {} reports, passed = {}", report["checks_run"], report["passed"]);
    let code = weil_stark::cli::run(["weilstark", "element", "5", "--subgroup", "1"], &mut out, &mut err);
    println!("exit code {code}: {}", String::from_utf8_lossy(&err));
}
