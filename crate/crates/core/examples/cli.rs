//! Driving the command-line front end from code.
//!
//! $ cargo run --example cli

fn main() {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let runs: Vec<Vec<String>> = vec![
        vec!["adem".into(), "--prime".into(), "3".into(), "--expr".into(), "P^1 P^1".into()],
        vec!["reps".into(), "--group".into(), format!("{data}/groups/s3.json"), "--rank".into(), "1".into()],
        vec!["d0".into(), "--group".into(), format!("{data}/groups/klein.json"), "--cutoff".into(), "3".into()],
    ];
    for args in runs {
        println!("$ steenrod-chow {}", args.join(" "));
        let argv = std::iter::once("steenrod-chow".to_string()).chain(args);
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = steenrod_chow::cli::run(argv, &mut out, &mut err);
        print!("{}{}", String::from_utf8_lossy(&out), String::from_utf8_lossy(&err));
        println!("(exit {code})\n");
    }
}
