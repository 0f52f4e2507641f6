//! Drives the command-line front end in-process: domain files in, JSON reports out.

use spectral_weyl::cli::run;

fn main() -> std::io::Result<()> {
    let dir = std::env::temp_dir().join("spectral-weyl-example");
    std::fs::create_dir_all(&dir)?;
    let domain = dir.join("square.json");
    let lattice = dir.join("z2.json");
    std::fs::write(&domain, r#"{"dimension": 2, "kind": "box", "boxes": [[[0, 1], [0, 1]]]}"#)?;
    std::fs::write(&lattice, r#"{"kind": "lattice", "dimension": 2}"#)?;
    let (d, g) = (domain.to_str().unwrap(), lattice.to_str().unwrap());
    let out = |name: &str| dir.join(name).to_str().unwrap().to_string();

    let runs: Vec<Vec<String>> = vec![
        vec!["verify".into(), "--domain".into(), d.into(), "--generator".into(), g.into(), "--out".into(), out("verify.json")],
        vec!["count".into(), "--domain".into(), d.into(), "--generator".into(), g.into(), "--radii".into(), "10:300:5".into(), "--out".into(), out("count.csv")],
        vec!["domain-info".into(), "--domain".into(), d.into(), "--out".into(), out("info.json")],
    ];
    for args in runs {
        let code = run(std::iter::once("spectral-weyl".to_string()).chain(args.iter().cloned()));
        println!("{:<12} exit {code}", args[0]);
    }
    println!("reports in {}", dir.display());
    Ok(())
}
