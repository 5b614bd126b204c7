//! Drives the command-line tool in process: emit a configuration, then feed
//! it back to `hilbert`.

use curvalg::cli;

fn invoke(args: &[&str], input: &str) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("curvalg").chain(args.iter().copied());
    let code = cli::run(argv, &mut input.as_bytes(), &mut out, &mut err);
    eprint!("{}", String::from_utf8_lossy(&err));
    (code, String::from_utf8(out).expect("UTF-8 output"))
}

fn main() {
    let (_, config) = invoke(&["rootsystem", "--type", "C3", "--emit", "config"], "");
    println!("{config}");
    let (code, result) = invoke(&["hilbert", "--engine", "all"], &config);
    println!("exit {code}\n{result}");

    let (code, _) = invoke(
        &["hilbert"],
        r#"{"ambient_dim": 2, "vectors": [[1, "1/0"]]}"#,
    );
    println!("malformed input exits with {code}");
}
