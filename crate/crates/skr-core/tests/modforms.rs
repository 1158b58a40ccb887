use proptest::prelude::*;
use rug::ops::Pow;
use rug::Integer;
use skr_core::error::Error;
use skr_core::modforms::*;
use std::sync::OnceLock;

fn tmpdir(name: &str) -> std::path::PathBuf {
    let d = std::env::temp_dir().join(format!("skr-modforms-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn s30() -> &'static Vec<Eigenform> {
    static F: OnceLock<Vec<Eigenform>> = OnceLock::new();
    F.get_or_init(|| eigenbasis(30, 400, DEFAULT_PREC_BITS).unwrap())
}

#[test]
fn ramanujan_tau_values() {
    let d = delta(30);
    for (n, t) in [(1, 1i64), (2, -24), (5, 4830), (7, -16744), (11, 534612), (23, 18643272)] {
        assert_eq!(*d.int_coeff(n), t, "τ({n})");
    }
}

#[test]
fn tau_is_sigma_11_mod_691() {
    let d = delta(200);
    for n in 1..200u64 {
        let sigma: Integer = (1..=n).filter(|e| n % e == 0).map(|e| Integer::from(Integer::from(e).pow(11u32))).sum();
        let diff = Integer::from(d.int_coeff(n as usize) - sigma);
        assert!(diff.is_divisible_u(691), "n = {n}");
    }
}

#[test]
fn cusp_dimensions_follow_the_formula() {
    for k in (4..=60).step_by(2) {
        let want = if k % 12 == 2 { k / 12 - 1 } else { k / 12 };
        let want = if k < 12 { 0 } else { want };
        assert_eq!(space_basis(k, true, 12).dim(), want as usize, "k = {k}");
        assert_eq!(eigenbasis(k, 12, 128).unwrap().len(), want as usize);
    }
}

#[test]
fn cache_round_trip() {
    let dir = tmpdir("rt");
    for f in s30().iter().chain(eigenbasis(22, 50, 192).unwrap().iter()) {
        let p = dir.join(format!("{}.txt", f.name()));
        write_cache(f, &p).unwrap();
        let g = read_cache(&p).unwrap();
        assert_eq!(g.name(), f.name());
        assert_eq!(g.n_max(), f.n_max());
        for n in 1..=f.n_max() {
            let d = rug::Float::with_val(256, g.a(n) - f.a(n)).abs().to_f64();
            assert!(d <= 1e-40 * f.a(n).to_f64().abs().max(1.0), "a({n})");
        }
        write_cache(&g, &dir.join("again.txt")).unwrap();
        assert_eq!(std::fs::read(&p).unwrap(), std::fs::read(dir.join("again.txt")).unwrap());
    }
}

#[test]
fn corrupted_cache_is_rejected() {
    let dir = tmpdir("bad");
    let f = &s30()[0];
    let p = dir.join("f.txt");
    write_cache(f, &p).unwrap();
    let text = std::fs::read_to_string(&p).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    // a(6) off in the last digits still breaks λ(2)λ(3) = λ(6)
    let v: rug::Float = rug::Float::with_val(256, rug::Float::parse(lines[6].split(' ').nth(1).unwrap()).unwrap());
    lines[6] = format!("6 {}", rug::Float::with_val(256, &v * 1.000000001f64).to_string_radix(10, Some(70)));
    std::fs::write(&p, lines.join("\n") + "\n").unwrap();
    assert!(matches!(read_cache(&p), Err(Error::Validation(_))));

    lines.truncate(10);
    std::fs::write(&p, lines.join("\n") + "\n").unwrap();
    assert!(matches!(read_cache(&p), Err(Error::Parse(_))));
    std::fs::write(&p, "no header\n").unwrap();
    assert!(read_cache(&p).is_err());
}

#[test]
fn eigenvalues_are_roots_of_the_t2_charpoly() {
    let fs = s30();
    assert_eq!(fs.len(), 2);
    let cp = &fs[0].t2_charpoly;
    let trace = -cp[1].to_f64();
    let sum = fs[0].a(2).to_f64() + fs[1].a(2).to_f64();
    assert!((trace - sum).abs() / trace.abs() < 1e-14);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn hecke_multiplicativity(m in 1usize..20, n in 1usize..20, which in 0usize..2) {
        let f = &s30()[which];
        prop_assert!(f.hecke_defect(m, n).unwrap() < 1e-40);
    }

    #[test]
    fn deligne_bound(n in 1usize..400) {
        let divisors = (1..=n).filter(|d| n % d == 0).count() as f64;
        for f in s30() {
            prop_assert!(f.lambda(n).abs() <= divisors + 1e-12);
        }
    }
}
