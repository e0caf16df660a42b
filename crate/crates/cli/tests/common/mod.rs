//! Helpers shared by the CLI tests and the acceptance harness.

#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};

pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(args: &[&str]) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["convexlab"];
    full.extend_from_slice(args);
    let code = convexlab_cli::run(full, &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).expect("utf-8 stdout"),
        stderr: String::from_utf8(err).expect("utf-8 stderr"),
    }
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

/// Replaces wall-clock timings, which are the only unstable output.
pub fn mask_elapsed(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for line in text.lines() {
        if let Some(pos) = line.find("\"elapsed_ms\": ") {
            let (head, tail) = line.split_at(pos + "\"elapsed_ms\": ".len());
            let rest = tail.trim_start_matches(|c: char| c.is_ascii_digit());
            out.push_str(head);
            out.push('0');
            out.push_str(rest);
        } else if line.contains(',') && !line.contains('"') && line.rsplit(',').next().is_some_and(is_number) {
            // CSV rows end in elapsed_ms
            let cut = line.rfind(',').expect("has comma");
            out.push_str(&line[..=cut]);
            out.push('0');
        } else {
            out.push_str(line);
        }
        out.push('\n');
    }
    out
}

fn is_number(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

/// Compares `actual` (after masking) with the golden file `name`. With
/// `CONVEXLAB_UPDATE_GOLDEN=1` the file is rewritten instead.
pub fn check_golden(name: &str, actual: &str) -> Result<(), String> {
    let path = golden_dir().join(name);
    let masked = mask_elapsed(actual);
    if std::env::var("CONVEXLAB_UPDATE_GOLDEN").as_deref() == Ok("1") {
        fs::write(&path, &masked).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let expected = fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if expected == masked {
        Ok(())
    } else {
        Err(format!("{name} differs from golden:\n--- expected\n{expected}\n--- actual\n{masked}"))
    }
}

/// Runs every golden scenario in `dir`, returning the first mismatch.
pub fn golden_scenarios(dir: &Path) -> Result<usize, String> {
    let p = |name: &str| dir.join(name).to_string_lossy().into_owned();
    fs::write(dir.join("geo5.txt"), "1\n2\n4\n8\n16\n").map_err(|e| e.to_string())?;
    fs::write(dir.join("ap5.txt"), "0\n1\n2\n3\n4\n").map_err(|e| e.to_string())?;
    let mut checked = 0;
    let mut expect = |name: &str, args: Vec<String>| -> Result<(), String> {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let o = run(&args);
        if o.code != 0 {
            return Err(format!("{args:?} exited {}: {}", o.code, o.stderr));
        }
        checked += 1;
        check_golden(name, &o.stdout)
    };
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    expect("analyze_geo5.json", s(&["analyze", "--input", &p("geo5.txt")]))?;
    expect("analyze_geo5.csv", s(&["analyze", "--input", &p("geo5.txt"), "--format", "csv"]))?;
    expect(
        "analyze_ap5_t3_energy.json",
        s(&["analyze", "--input", &p("ap5.txt"), "--stats", "t3,energy"]),
    )?;
    expect("sidon_exact_ap5.json", s(&["sidon", "--input", &p("ap5.txt"), "--mode", "exact"]))?;
    expect(
        "sidon_prune_ap5.json",
        s(&["sidon", "--input", &p("ap5.txt"), "--mode", "prune", "--p", "1/2", "--seed", "7"]),
    )?;
    expect("construct_jarnik3.txt", s(&["construct", "--kind", "jarnik", "--n", "3"]))?;
    expect(
        "scaling_rich_sum.json",
        s(&["scaling", "--kind", "rich-sum", "--grid", "2,3,4", "--out", &p("rs.csv")]),
    )?;
    let csv = fs::read_to_string(dir.join("rs.csv")).map_err(|e| e.to_string())?;
    check_golden("scaling_rich_sum.csv", &csv)?;
    Ok(checked + 1)
}
