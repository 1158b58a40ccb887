use std::path::PathBuf;
use std::process::{Command, Output};

fn skr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skr")).args(args).env_remove("SKR_FORMAT").env_remove("SKR_PREC").output().unwrap()
}

fn tmp(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("skr-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_gauss_passes() {
    let o = skr(&["verify", "gauss", "--cmax", "120"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("PASS gauss\n"));
}

#[test]
fn euler_prints_exact_constants_and_seed() {
    let o = skr(&["verify", "euler", "--seed", "9"]);
    let s = stdout(&o);
    assert_eq!(o.status.code(), Some(0));
    assert!(s.contains("= 4/5\n") && s.contains("= 2\n") && s.contains("seed = 9"));
    assert_eq!(s, stdout(&skr(&["verify", "euler", "--seed", "9"])));
    assert_ne!(s, stdout(&skr(&["verify", "euler", "--seed", "10"])));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(skr(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(skr(&["verify"]).status.code(), Some(2));
    assert_eq!(skr(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(skr(&["table", "--ell", "11"]).status.code(), Some(2));
    assert_eq!(skr(&["verify", "gauss", "--prec", "64"]).status.code(), Some(2));
    assert_eq!(skr(&["petersson", "--weight", "12", "--m", "11", "--n", "1"]).status.code(), Some(2));
    assert_eq!(skr(&["dump", "sk"]).status.code(), Some(2));
}

#[test]
fn environment_and_config_file() {
    let d = tmp("cfg");
    let file = d.join("run.conf");
    let o = skr(&["config", "--prec", "256", "--format", "csv", "--seed", "5", "--write", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&file).unwrap();
    assert_eq!(stdout(&o), text);
    assert!(text.contains("prec = 256\n") && text.contains("format = csv\n"));
    // the file round-trips, flags override it, SKR_ variables override the file
    let again = skr(&["config", "--config", file.to_str().unwrap()]);
    assert_eq!(stdout(&again), text);
    let o = Command::new(env!("CARGO_BIN_EXE_skr"))
        .args(["config", "--config", file.to_str().unwrap()])
        .env("SKR_SEED", "77")
        .output()
        .unwrap();
    assert!(stdout(&o).contains("seed = 77\n"));
    let o = Command::new(env!("CARGO_BIN_EXE_skr"))
        .args(["config", "--config", file.to_str().unwrap(), "--seed", "3"])
        .env("SKR_SEED", "77")
        .output()
        .unwrap();
    assert!(stdout(&o).contains("seed = 3\n"));
    std::fs::write(&file, "prec = lots\n").unwrap();
    assert_eq!(skr(&["config", "--config", file.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn suite_from_config() {
    let d = tmp("suite");
    let file = d.join("run.conf");
    std::fs::write(&file, "suite = weil\nformat = csv\n").unwrap();
    let o = skr(&["verify", "--config", file.to_str().unwrap(), "--cmax", "30"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("m,n,c,S,bound\n"));
    assert!(s.ends_with("PASS weil\n"));
}

#[test]
fn dumps_are_byte_identical() {
    for args in [
        vec!["dump", "eigen", "--weight", "22", "--n", "100"],
        vec!["dump", "jacobi", "--ell", "16", "--dmax", "60"],
        vec!["dump", "sk", "--ell", "12", "--max", "4"],
        vec!["dump", "restriction", "--ell", "22", "--n", "4"],
    ] {
        let a = skr(&args);
        assert_eq!(a.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, skr(&args).stdout, "{args:?}");
    }
    let eigen = stdout(&skr(&["dump", "eigen", "--weight", "22", "--n", "100"]));
    assert_eq!(eigen.lines().count(), 101);
    assert!(eigen.starts_with("# weight=22 label=a prec_bits=192 n_max=100\n1 1\n2 -288\n"));
    let sk = stdout(&skr(&["dump", "sk", "--ell", "12", "--max", "2"]));
    assert!(sk.lines().nth(1) == Some("n,r,m,A"));
}

#[test]
fn dump_to_directory() {
    let d = tmp("dump");
    let o = skr(&["dump", "jacobi", "--ell", "20", "--dmax", "40", "--out", d.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let files: Vec<_> = std::fs::read_dir(&d).unwrap().collect();
    assert_eq!(files.len(), 2);
}

#[test]
fn corrupted_cache_exits_3() {
    let d = tmp("cache");
    let args = ["dump", "eigen", "--weight", "24", "--n", "30", "--cache", d.to_str().unwrap()];
    let first = skr(&args);
    assert_eq!(first.status.code(), Some(0));
    assert!(d.join("24a.txt").exists() && d.join("24b.txt").exists());
    assert_eq!(skr(&args).stdout, first.stdout);
    // change the leading digit of a(6) in one form
    let p = d.join("24a.txt");
    let text = std::fs::read_to_string(&p).unwrap();
    let bad: Vec<String> = text
        .lines()
        .map(|l| match l.strip_prefix("6 -2") {
            Some(rest) => format!("6 -3{rest}"),
            None => l.to_string(),
        })
        .collect();
    assert_ne!(bad.join("\n") + "\n", text);
    std::fs::write(&p, bad.join("\n") + "\n").unwrap();
    let o = skr(&args);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Hecke relation"));
}

#[test]
fn petersson_command() {
    let o = skr(&["petersson", "--weight", "22", "--m", "2", "--n", "2", "--cmax", "2000", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("weight,m,n,spectral,geometric,diff,budget,tail,kloosterman_terms\n22,2,2,"));
}
