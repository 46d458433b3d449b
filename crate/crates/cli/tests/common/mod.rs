//! Golden CLI cases shared by the golden test and the acceptance run.

use std::path::{Path, PathBuf};

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
}

pub const F: &str = "tests/fixtures";

pub fn cases() -> Vec<Case> {
    let c = |name, args, exit| Case { name, args, exit };
    vec![
        c("analyze-lotka", &["analyze", "lotka.crn"], 0),
        c("analyze-lotka-json", &["analyze", "lotka.crn", "--json"], 0),
        c(
            "analyze-square-sources",
            &["analyze", "square-sources.crn"],
            0,
        ),
        c(
            "analyze-square-complete",
            &["analyze", "square-complete.crn", "--json"],
            0,
        ),
        c("analyze-cb-flux", &["analyze", "cb-flux.crn"], 0),
        c(
            "analyze-cb-rates-at",
            &["analyze", "cb-rates.crn", "--at", "1,2", "--json"],
            0,
        ),
        c(
            "check-single-reaction",
            &["check", "single-reaction.crn", "single-reaction-y-pair.crn"],
            0,
        ),
        c(
            "check-single-reaction-json",
            &[
                "check",
                "single-reaction.crn",
                "single-reaction-y-pair.crn",
                "--json",
            ],
            0,
        ),
        c(
            "check-different",
            &["check", "single-reaction.crn", "cb-rates.crn"],
            1,
        ),
        c(
            "check-flux-different",
            &["check", "square-flux-1111.crn", "square-flux-1211.crn"],
            1,
        ),
        c(
            "realize-cb-square-1111",
            &["realize-cb", "square-flux-1111.crn"],
            0,
        ),
        c(
            "realize-cb-square-1111-json",
            &["realize-cb", "square-flux-1111.crn", "--json"],
            0,
        ),
        c(
            "realize-cb-square-1211",
            &["realize-cb", "square-flux-1211.crn", "--json"],
            1,
        ),
        c(
            "realize-db-square-1111",
            &["realize-db", "square-flux-1111.crn"],
            0,
        ),
        c(
            "realize-cb-cb-rates-at",
            &["realize-cb", "cb-rates.crn", "--at", "1,2", "--json"],
            0,
        ),
        c(
            "realize-db-cb-rates-at",
            &["realize-db", "cb-rates.crn", "--at", "1,2"],
            1,
        ),
        c(
            "realize-cb-search-25111",
            &["realize-cb", "square-rates-25111.crn", "--search", "--json"],
            0,
        ),
        c(
            "realize-cb-search-26111",
            &[
                "realize-cb",
                "square-rates-26111.crn",
                "--search",
                "--multistarts",
                "40",
                "--json",
            ],
            2,
        ),
        c(
            "realize-wr-square",
            &["realize-wr", "square-rates-25111.crn", "--json"],
            0,
        ),
        c(
            "realize-rev-square",
            &["realize-rev", "square-rates-25111.crn"],
            0,
        ),
        c(
            "realize-wr-lotka",
            &["realize-wr", "lotka.crn", "--json"],
            1,
        ),
        c("realize-rev-lotka", &["realize-rev", "lotka.crn"], 1),
        c(
            "eliminate-line-flux",
            &["eliminate", "line-flux.crn", "--vertex", "S", "--json"],
            0,
        ),
        c(
            "eliminate-line-rates",
            &["eliminate", "line-rates.crn", "--vertex", "S"],
            0,
        ),
        c(
            "eliminate-not-virtual",
            &["eliminate", "line-flux.crn", "--vertex", "2S", "--json"],
            1,
        ),
    ]
}

pub fn run(args: &[String]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("crn".to_string()).chain(args.iter().cloned());
    let code = crn_cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

pub fn resolve(args: &[&str]) -> Vec<String> {
    args.iter()
        .map(|a| {
            if a.ends_with(".crn") {
                format!("{F}/{a}")
            } else {
                a.to_string()
            }
        })
        .collect()
}

pub fn golden_path(name: &str) -> PathBuf {
    Path::new("tests/golden").join(format!("{name}.out"))
}
