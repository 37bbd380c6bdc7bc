//! Command-line behavior: golden JSON output, exit codes, and fetch against a
//! local HTTP server.

use std::io::{BufRead, BufReader, Read, Write};
use std::net::TcpListener;
use std::path::Path;
use std::process::Command;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;
use std::thread;

use serde_json::Value;
use twistbound::app::run;

fn run_args(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("twistbound").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn golden(name: &str, args: &[&str]) {
    let (code, out, err) = run_args(args);
    assert_eq!(code, 0, "{err}");
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/golden").join(name);
    if std::env::var_os("TWISTBOUND_BLESS").is_some() {
        std::fs::write(&path, &out).unwrap();
    }
    let want: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let got: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(got, want, "output of {args:?} differs from {}", path.display());
}

#[test]
fn golden_bound() {
    golden("bound.json", &["bound", "--n1", "15", "--n2", "15", "--rank", "2", "--mode", "product", "--json"]);
}

#[test]
fn golden_chars() {
    golden("chars.json", &["chars", "--modulus", "12", "--json"]);
}

#[test]
fn golden_scan() {
    golden(
        "scan.json",
        &["scan", "--f", "fixtures/synthetic.11.json", "--g", "fixtures/synthetic.11x3.1.json", "--json"],
    );
}

#[test]
fn golden_arch() {
    golden(
        "arch.json",
        &[
            "arch",
            "--sigma",
            r#"{"place":"C","summands":[{"k":0,"nu":[0,0]}]}"#,
            "--chi",
            r#"{"place":"C","k":1,"nu":[0,0]}"#,
            "--json",
        ],
    );
}

#[test]
fn golden_verify() {
    golden("verify_prop3.json", &["verify", "--suite", "prop3", "--seed", "1", "--json"]);
}

#[test]
fn bound_examples() {
    let (code, out, _) = run_args(&["bound", "--n1", "15", "--n2", "15", "--rank", "2", "--mode", "product"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("# twistbound bound --n1 15 --n2 15 --rank 2 --mode product\n"));
    assert!(out.contains("admissible moduli: 1, 3, 5, 15\n"));

    let (code, out, _) = run_args(&["bound", "--n1", "6", "--n2", "10", "--rank", "2", "--mode", "lcm", "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["admissible"], serde_json::json!([1]));

    for bad in [
        &["bound", "--n1", "0", "--n2", "5"][..],
        &["bound", "--n1", "5", "--n2", "5", "--mode", "nosuch"],
        &["bound", "--n1", "5", "--n2", "5", "--rank", "3", "--mode", "gl2-trivial-central"],
        &["bound", "--n1", "x", "--n2", "5"],
        &["nosuch"],
    ] {
        assert_eq!(run_args(bad).0, 2, "{bad:?}");
    }
}

#[test]
fn effective_config_line_reproduces_run() {
    let (_, out, _) = run_args(&["bound", "--n1", "12", "--n2", "18"]);
    let line = out.lines().next().unwrap().trim_start_matches("# ");
    assert_eq!(line, "twistbound bound --n1 12 --n2 18 --rank 2 --mode product");
    let replay: Vec<&str> = line.split(' ').skip(1).collect();
    assert_eq!(run_args(&replay).1, out);
}

#[test]
fn chars_table() {
    let (code, out, _) = run_args(&["chars", "--modulus", "8", "--primitive"]);
    assert_eq!(code, 0);
    assert!(out.contains("8.1") && out.contains("8.3") && !out.contains("8.2 "));
    assert!(out.contains("2 characters"));
}

#[test]
fn scan_exit_codes() {
    let f = "fixtures/synthetic.11.json";
    let (code, out, _) = run_args(&["scan", "--f", f, "--g", f]);
    assert_eq!(code, 0);
    assert!(out.contains("match 1.0 conductor 1"));
    assert!(out.contains("verdict: MATCH"));

    let (code, out, _) = run_args(&["scan", "--f", f, "--g", "fixtures/synthetic.11x3.1.json"]);
    assert_eq!(code, 0);
    assert!(out.contains("match 3.1 conductor 3"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let bad = bad.to_str().unwrap();
    assert_eq!(run_args(&["scan", "--f", f, "--g", bad]).0, 3);
    assert_eq!(run_args(&["scan", "--f", f, "--g", "fixtures/missing.json"]).0, 3);
    assert_eq!(run_args(&["scan", "--f", f, "--g", f, "--tol", "-1"]).0, 2);

    // an unrelated table: negative verdict
    let other = dir.path().join("other.json");
    let mut t = twistbound::scan::EigenvalueTable::from_json(&std::fs::read_to_string(f).unwrap()).unwrap();
    for v in t.ap.values_mut() {
        *v *= 1.5;
    }
    std::fs::write(&other, t.to_json()).unwrap();
    let (code, out, _) = run_args(&["scan", "--f", f, "--g", other.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("verdict: NO_MATCH"));

    // too few primes to decide
    let mut short = twistbound::scan::EigenvalueTable::from_json(&std::fs::read_to_string(f).unwrap()).unwrap();
    short.ap = short.ap.into_iter().take(5).collect();
    let short_path = dir.path().join("short.json");
    std::fs::write(&short_path, short.to_json()).unwrap();
    let s = short_path.to_str().unwrap();
    let (code, out, _) = run_args(&["scan", "--f", s, "--g", s]);
    assert_eq!(code, 1);
    assert!(out.contains("INSUFFICIENT_DATA"));
}

#[test]
fn arch_command() {
    let sigma = r#"{"place":"R","summands":[{"type":"one","eps":-1,"nu":[-1,0]}]}"#;
    let chi = r#"{"place":"R","eps":-1,"nu":[1,0]}"#;
    // the parameter lies outside the strip
    assert_eq!(run_args(&["arch", "--sigma", sigma, "--chi", chi]).0, 2);
    let (code, out, _) = run_args(&["arch", "--sigma", sigma, "--chi", chi, "--allow-outside-strip", "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!((v["check"]["ratio"].as_f64().unwrap() - 1.0).abs() < 1e-12);

    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("sigma.json");
    std::fs::write(&p, r#"{"place":"R","summands":[{"type":"two","k":3,"nu":[0,0]}]}"#).unwrap();
    let at = format!("@{}", p.display());
    let (code, out, _) = run_args(&["arch", "--sigma", &at, "--chi", r#"{"place":"R","eps":-1,"nu":[0,1]}"#]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("holds: true"));
    assert_eq!(run_args(&["arch", "--sigma", "{}", "--chi", chi]).0, 2);
    assert_eq!(run_args(&["arch", "--sigma", sigma, "--chi", r#"{"place":"C","k":0,"nu":[0,0]}"#, "--allow-outside-strip"]).0, 2);
}

#[test]
fn verify_command() {
    let (code, out, _) = run_args(&["verify", "--suite", "prop3", "--seed", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("prop3: PASS"));
    let (code, out, _) = run_args(&["verify", "--suite", "claim32"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(run_args(&["verify", "--suite", "nosuch"]).0, 2);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_twistbound");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = status(&["bound", "--n1", "15", "--n2", "15"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("1, 3, 5, 15"));
    assert_eq!(status(&["bound", "--n1", "0", "--n2", "15"]).status.code(), Some(2));
    assert_eq!(status(&["--help"]).status.code(), Some(0));
    assert_eq!(status(&["verify", "--suite", "nosuch"]).status.code(), Some(2));
}

// ---------------------------------------------------------------- fetch

/// Serve `body` with `status` to every request; count requests.
fn serve(status: u16, body: String) -> (String, Arc<AtomicUsize>) {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let addr = listener.local_addr().unwrap();
    let hits = Arc::new(AtomicUsize::new(0));
    let counter = hits.clone();
    thread::spawn(move || {
        for stream in listener.incoming() {
            let Ok(mut stream) = stream else { continue };
            counter.fetch_add(1, Ordering::SeqCst);
            let mut reader = BufReader::new(stream.try_clone().unwrap());
            let mut line = String::new();
            while reader.read_line(&mut line).map(|n| n > 0).unwrap_or(false) {
                if line == "\r\n" {
                    break;
                }
                line.clear();
            }
            let reason = if status == 200 { "OK" } else { "Not Found" };
            let _ = write!(
                stream,
                "HTTP/1.1 {status} {reason}\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
                body.len()
            );
            let _ = stream.flush();
            let mut rest = Vec::new();
            let _ = stream.read(&mut rest);
        }
    });
    (format!("http://{addr}"), hits)
}

const NEWFORM: &str = r#"{"data":[{"label":"11.2.a.a","level":11,"weight":2,"dim":1,"traces":[1,-2,-1,2,1,2,-2,0,-2,-2,1,-2,4,4,-1,-4,-2,4,0,2,2,-2,-1,0,-4,-8,5,-4,0,2,7]}]}"#;

#[test]
fn fetch_then_cache_hit() {
    let (url, hits) = serve(200, NEWFORM.to_string());
    let cache = tempfile::tempdir().unwrap();
    let dir = cache.path().to_str().unwrap();
    let (code, out, err) = run_args(&["fetch", "--label", "11.2.a.a", "--base-url", &url, "--cache-dir", dir]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("(network)"));
    assert_eq!(hits.load(Ordering::SeqCst), 1);

    let path = cache.path().join("11.2.a.a.json");
    let table = twistbound::scan::EigenvalueTable::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(table.level.value(), Some(11));
    assert_eq!(table.ap.len(), 11);

    // second run is served from the cache, even offline
    let (code, out, _) = run_args(&["fetch", "--label", "11.2.a.a", "--base-url", &url, "--cache-dir", dir, "--offline"]);
    assert_eq!(code, 0);
    assert!(out.contains("(cache)") && out.contains(path.to_str().unwrap()));
    assert_eq!(hits.load(Ordering::SeqCst), 1);
}

#[test]
fn fetch_accepts_local_schema() {
    let body = std::fs::read_to_string("fixtures/synthetic.11.json").unwrap();
    let (url, _) = serve(200, body);
    let cache = tempfile::tempdir().unwrap();
    let (code, _, err) =
        run_args(&["fetch", "--label", "synthetic.11", "--base-url", &url, "--cache-dir", cache.path().to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    assert!(cache.path().join("synthetic.11.json").exists());
}

#[test]
fn fetch_failures_exit_3() {
    let cache = tempfile::tempdir().unwrap();
    let dir = cache.path().to_str().unwrap();
    // nothing listening
    let closed = {
        let l = TcpListener::bind("127.0.0.1:0").unwrap();
        format!("http://{}", l.local_addr().unwrap())
    };
    assert_eq!(run_args(&["fetch", "--label", "1.2.a.a", "--base-url", &closed, "--cache-dir", dir]).0, 3);
    assert_eq!(run_args(&["fetch", "--label", "1.2.a.a", "--cache-dir", dir, "--offline"]).0, 3);

    let (url, _) = serve(404, "{}".to_string());
    assert_eq!(run_args(&["fetch", "--label", "1.2.a.a", "--base-url", &url, "--cache-dir", dir]).0, 3);

    let (url, _) = serve(200, r#"{"data":[{"level":11,"weight":2,"dim":2,"traces":[1]}]}"#.to_string());
    assert_eq!(run_args(&["fetch", "--label", "x.y", "--base-url", &url, "--cache-dir", dir]).0, 3);
    assert!(std::fs::read_dir(dir).unwrap().next().is_none(), "nothing cached on failure");
}
