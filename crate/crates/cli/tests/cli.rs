use std::fs;
use std::process::{Command, Output};

use winterres_cli::{read_csv, PoleRow};

fn winterres(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_winterres"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn classify_reports_class_and_separation() {
    let o = winterres(&["classify", "--alpha", "4", "--beta", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("separated: embedded eigenvalues"));

    let o = winterres(&["classify", "--gamma", "1+1i"]);
    assert!(stdout(&o).starts_with("intermediate-type; not separated"));
}

#[test]
fn poles_write_csv_and_svg_files() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("poles.csv");
    let svg = dir.path().join("fig.svg");
    let o = winterres(&[
        "poles",
        "--interaction",
        "alpha=50",
        "--interaction",
        "gamma=1+1i",
        "--re-max",
        "20",
        "--csv",
        csv.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).is_empty());

    let text = fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("n,re_k,im_k,residual,"));
    assert!(text.contains("\r\n"));
    let rows: Vec<PoleRow> = read_csv(text.as_bytes()).unwrap();
    assert!(rows.iter().any(|r| r.series == 0 && r.class == "delta"));
    assert!(rows.iter().any(|r| r.series == 1 && r.class == "intermediate"));
    assert!(rows.iter().all(|r| r.im_k < 0.0 && r.residual < 1e-9));

    let plot = fs::read_to_string(&svg).unwrap();
    assert!(plot.starts_with("<?xml"));
    assert!(plot.contains(r#"version="1.1""#));
    assert_eq!(plot.matches(r#"<g class="series""#).count(), 2);
    assert!(plot.contains(">Re k</text>") && plot.contains(">Im k</text>"));
}

#[test]
fn csv_on_stdout_matches_file_output_bit_for_bit() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("p.csv");
    let args = ["poles", "--beta", "0.1", "--re-max", "30", "--im-min", "-0.5"];
    let piped = stdout(&winterres(&args));
    let mut with_file = args.to_vec();
    with_file.extend(["--csv", csv.to_str().unwrap()]);
    assert_eq!(winterres(&with_file).status.code(), Some(0));
    let from_file: Vec<PoleRow> = read_csv(fs::read(&csv).unwrap().as_slice()).unwrap();
    let from_pipe: Vec<PoleRow> = read_csv(piped.as_bytes()).unwrap();
    assert_eq!(from_file.len(), from_pipe.len());
    assert!(from_file.iter().zip(&from_pipe).all(|(a, b)| a.same_bits(b)));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    fs::write(
        &cfg,
        r#"{"interaction": {"alpha": 50}, "channel": {"l": 1, "radius": 1.0}, "search": {"re_max": 12}}"#,
    )
    .unwrap();
    let base = stdout(&winterres(&["poles", "--config", cfg.to_str().unwrap()]));
    let over = stdout(&winterres(&["poles", "--config", cfg.to_str().unwrap(), "--re-max", "25"]));
    assert!(base.lines().count() > 2);
    assert!(over.lines().count() > base.lines().count());
}

#[test]
fn compare_prints_table_and_summary() {
    let o = winterres(&["compare", "--gamma", "1+1i", "--re-max", "60"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("scaled_err"));
    assert!(text.contains("summary:"));

    let free = stdout(&winterres(&["compare"]));
    assert!(free.contains("no resonances"));
}

#[test]
fn exit_codes() {
    assert_eq!(winterres(&[]).status.code(), Some(2));
    assert_eq!(winterres(&["poles", "--gamma", "1+2j"]).status.code(), Some(2));
    assert_eq!(winterres(&["poles", "--radius", "0"]).status.code(), Some(2));
    assert_eq!(winterres(&["poles", "--config", "/nonexistent.json"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("strict.json");
    fs::write(&cfg, r#"{"interaction": {"alpha": 50}, "tolerances": {"residual": 1e-300}}"#).unwrap();
    let o = winterres(&["poles", "--config", cfg.to_str().unwrap(), "--re-max", "10"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("did not converge"));
}
