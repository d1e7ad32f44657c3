use std::fmt::Write as _;
use std::io::Write as _;

use bgg_core::report::SuiteReport;

use crate::OutputOpts;

/// Writes `content` to `--out` or stdout.
pub fn emit(opts: &OutputOpts, content: &str) -> anyhow::Result<()> {
    match &opts.out {
        Some(path) => std::fs::write(path, content)?,
        None => std::io::stdout().lock().write_all(content.as_bytes())?,
    }
    Ok(())
}

pub fn suites_text(suites: &[SuiteReport]) -> String {
    let mut s = String::new();
    for suite in suites {
        let verdict = if suite.passed { "PASS" } else { "FAIL" };
        writeln!(s, "{verdict} {}", suite.suite).unwrap();
        for c in &suite.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            writeln!(s, "  {mark} {} [{} checked]", c.identity, c.checked).unwrap();
            if let Some(cx) = &c.counterexample {
                writeln!(s, "       counterexample: {cx}").unwrap();
            }
        }
    }
    s
}

pub fn suites_csv(suites: &[SuiteReport]) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["suite", "identity", "checked", "passed", "counterexample"])?;
    for suite in suites {
        for c in &suite.checks {
            w.write_record([
                suite.suite.as_str(),
                c.identity.as_str(),
                &c.checked.to_string(),
                &c.passed.to_string(),
                c.counterexample.as_deref().unwrap_or(""),
            ])?;
        }
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn to_json<T: serde::Serialize>(value: &T) -> anyhow::Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}
