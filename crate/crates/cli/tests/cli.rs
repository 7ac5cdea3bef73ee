use serde_json::Value;
use zipcone::run;
use zipcone_core::certificate::Certificate;

struct Output {
    code: i32,
    out: String,
    err: String,
}

fn zipcone(args: &[&str]) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("zipcone").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Output {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

#[test]
fn weyl_length() {
    let o = zipcone(&["weyl", "--n", "2", "--elem", "4 3 2 1", "--length"]);
    assert_eq!((o.code, o.out.as_str()), (0, "4\n"));
}

#[test]
fn weyl_json_and_action() {
    let o = zipcone(&[
        "weyl", "--n", "2", "--elem", "3 4 1 2", "--act", "1,0|1", "--json",
    ]);
    assert_eq!(o.code, 0);
    let v: Value = serde_json::from_str(&o.out).unwrap();
    assert_eq!(v["length"], 3);
    assert_eq!(v["minimal_representative"], true);
    assert_eq!(v["action"], "0,-1|1");
}

#[test]
fn mirror_violation_is_a_usage_error() {
    let o = zipcone(&["weyl", "--n", "2", "--elem", "1 3 4 2"]);
    assert_eq!(o.code, 2);
    assert!(o.err.contains("positions 1 and 4"), "{}", o.err);
}

#[test]
fn unknown_verb_and_flag() {
    let o = zipcone(&["frobnicate"]);
    assert_eq!(o.code, 2);
    assert!(!o.err.is_empty());
    let o = zipcone(&["weyl", "--n", "2", "--elem", "4 3 2 1", "--colour"]);
    assert_eq!(o.code, 2);
}

#[test]
fn help_exits_zero() {
    let o = zipcone(&["--help"]);
    assert_eq!(o.code, 0);
    assert!(o.out.contains("verify-theorem"));
}

#[test]
fn theorem_certificate_json() {
    let o = zipcone(&["verify-theorem", "--n", "3", "--p", "5", "--json"]);
    assert_eq!(o.code, 0);
    let cert: Certificate = serde_json::from_str(&o.out).unwrap();
    assert!(cert.passed());
    assert_eq!((cert.n, cert.p, cert.path.len()), (3, 5, 3));
    // round trip through the schema is lossless
    let again = serde_json::to_string_pretty(&cert).unwrap();
    assert_eq!(again.trim_end(), o.out.trim_end());
    let v: Value = serde_json::from_str(&o.out).unwrap();
    for key in [
        "n",
        "p",
        "path",
        "base_generators",
        "ha_weights",
        "checks",
        "verdict",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(
        v["base_generators"][0],
        serde_json::json!(["-1/1", "0/1", "0/1", "0/1"])
    );
}

#[test]
fn theorem_over_several_primes() {
    let o = zipcone(&["verify-theorem", "--n", "2", "--p", "2,3,4"]);
    assert_eq!(o.code, 0);
    assert_eq!(o.out.matches("PASS").count(), 3);
    assert!(o.err.contains("p = 4 is not prime"));
}

#[test]
fn cone_check_members() {
    let o = zipcone(&[
        "cone-check",
        "--n",
        "3",
        "--p",
        "5",
        "--cone",
        "lmin-i",
        "--lambda",
        "1,1,-25|1",
    ]);
    assert_eq!(o.code, 0);
    assert!(o.out.starts_with("member: true"));
    let o = zipcone(&[
        "cone-check",
        "--n",
        "3",
        "--p",
        "5",
        "--cone",
        "lmin",
        "--lambda",
        "1,0,0|1",
    ]);
    assert_eq!(o.code, 1);
    assert!(o.out.starts_with("member: false"));
    let o = zipcone(&[
        "cone-check",
        "--n",
        "2",
        "--cone",
        "gs",
        "--lambda",
        "-1,-2|0",
        "--json",
    ]);
    let v: Value = serde_json::from_str(&o.out).unwrap();
    assert_eq!(v["member"], true);
}

#[test]
fn cone_check_pha() {
    let args = [
        "cone-check",
        "--n",
        "2",
        "--p",
        "3",
        "--cone",
        "pha",
        "--lambda",
        "1,-3|0",
    ];
    let o = zipcone(&args);
    assert_eq!(o.code, 2, "missing --elem");
    let mut with_elem = args.to_vec();
    with_elem.extend(["--elem", "4 3 2 1", "--json"]);
    let o = zipcone(&with_elem);
    assert_eq!(o.code, 0);
    let v: Value = serde_json::from_str(&o.out).unwrap();
    assert_eq!(v["chi"], "1,0|0");
    assert_eq!(v["lattice"], false);
}

#[test]
fn farkas_verb() {
    let o = zipcone(&[
        "farkas", "--n", "2", "--cone", "pha-wmax", "--target", "1,1|0",
    ]);
    assert_eq!(o.code, 0);
    assert_eq!(o.out, "implied: true\nmultipliers: 1/1 1/1\n");
    let o = zipcone(&[
        "farkas", "--n", "3", "--p", "5", "--cone", "lmin-i", "--target", "5,25,1|0", "--json",
    ]);
    assert_eq!(o.code, 1);
    let v: Value = serde_json::from_str(&o.out).unwrap();
    assert_eq!(v["implied"], false);
    assert_eq!(v["verified"], true);
}

#[test]
fn enum_iw_and_bruhat() {
    let o = zipcone(&["enum-iw", "--n", "2"]);
    assert_eq!(o.code, 0);
    assert_eq!(o.out.lines().count(), 4);
    assert!(o.out.lines().last().unwrap().starts_with("3 4 1 2"));
    let o = zipcone(&[
        "bruhat", "--n", "2", "--elem", "3 4 1 2", "--other", "4 3 2 1",
    ]);
    assert_eq!((o.code, o.out.as_str()), (0, "true\n"));
    let o = zipcone(&[
        "bruhat", "--n", "2", "--elem", "4 3 2 1", "--other", "3 4 1 2",
    ]);
    assert_eq!((o.code, o.out.as_str()), (1, "false\n"));
    let o = zipcone(&[
        "bruhat", "--n", "2", "--elem", "4 3 2 1", "--other", "3 4 1 2", "--order", "preceq",
    ]);
    assert_eq!(o.code, 2);
}

#[test]
fn path_and_neighbors() {
    let o = zipcone(&["path", "--n", "2", "--p", "3"]);
    assert_eq!(o.code, 0);
    assert!(o.out.contains("verdict: PASS"));
    let o = zipcone(&["neighbors", "--n", "2", "--elem", "4 3 2 1", "--json"]);
    let v: Value = serde_json::from_str(&o.out).unwrap();
    assert_eq!(v["neighbors"], serde_json::json!(["e1-e2", "2e2"]));
}

#[test]
fn sweep_suites() {
    let o = zipcone(&["sweep", "--suite", "gamma", "--n", "3"]);
    assert_eq!(
        (o.code, o.out.trim()),
        (0, "gamma n=3: 48/48 elements pass")
    );
    let o = zipcone(&["sweep", "--suite", "redundancy", "--n", "3", "--p", "2,3,5"]);
    assert_eq!(o.code, 0);
    assert!(o.out.starts_with("redundancy n=3: 3/3 primes pass"));
    for suite in ["bruhat", "length", "path", "theorem"] {
        let o = zipcone(&["sweep", "--suite", suite, "--n", "3", "--p", "2,3"]);
        assert_eq!(o.code, 0, "{suite}: {}", o.out);
    }
    let o = zipcone(&["sweep", "--suite", "bruhat", "--n", "5"]);
    assert_eq!(o.code, 2);
}

#[test]
fn sweep_is_reproducible() {
    let args = |jobs: &'static str| {
        vec![
            "sweep",
            "--suite",
            "lmin-oracle",
            "--n",
            "4",
            "--p",
            "3",
            "--samples",
            "300",
            "--seed",
            "7",
            "--jobs",
            jobs,
            "--json",
        ]
    };
    let a = zipcone(&args("1"));
    let b = zipcone(&args("4"));
    assert_eq!(a.code, 0);
    assert_eq!(a.out, b.out);
    let v: Value = serde_json::from_str(&a.out).unwrap();
    assert_eq!(v["seed"], 7);
    assert_eq!(v["passed"], 300);
}
