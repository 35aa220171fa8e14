//! Running an experiment from a TOML configuration and reading the result
//! back from its JSON encoding.

use hubcorr::cli::{run, ResultSet, RunConfig};

fn main() -> hubcorr::Result<()> {
    let cfg = RunConfig::from_toml(
        r#"
experiment = "quench"
[lattice]
extent = [32]
J = 0.1
[numeric]
t_final = 4.0
samples = 5
"#,
    )?;
    let result = run(&cfg)?;
    let back = ResultSet::from_json(&result.to_json()?)?;
    assert_eq!(back, result);
    let series = result.table("timeseries").expect("quench writes a time series");
    for (t, d) in series.column("t").unwrap().iter().zip(series.column("depletion").unwrap()) {
        println!("t = {t:.1}: depletion {d:.6}");
    }
    Ok(())
}
