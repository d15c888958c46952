//! Driving the command dispatcher without spawning a process.

use std::path::Path;

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let f = |name: &str| dir.join(name).display().to_string();
    let runs = [
        vec![
            "check-topology".to_string(),
            f("d12.cat"),
            "-t".into(),
            f("dense-d12.gtop"),
        ],
        vec![
            "check-continuous".into(),
            f("arrow.cat"),
            "-t".into(),
            f("arrow-j.gtop"),
            "--arrow".into(),
            "f".into(),
        ],
        vec!["enumerate-topologies".into(), f("terminal.cat")],
    ];
    for args in runs {
        let out = gsite::cli::run(std::iter::once("gsite".to_string()).chain(args.iter().cloned()));
        println!("$ gsite {}\n{}exit {}\n", args[0], out.report, out.status);
    }
}
