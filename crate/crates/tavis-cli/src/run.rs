//! Scenario execution: build the grid, evolve, and render the requested
//! columns as CSV or JSON — deterministically, byte for byte.

use tavis_core::{series, ObservableRecord, ObservableSeries, Result};

use crate::config::{Column, Format, ScenarioConfig};

/// Uniform grid: t_k = t_max * k / (t_steps - 1), k = 0 .. t_steps-1.
pub fn time_grid(t_max: f64, t_steps: usize) -> Vec<f64> {
    (0..t_steps)
        .map(|k| t_max * k as f64 / (t_steps - 1) as f64)
        .collect()
}

/// Run one scenario and render its output document.
pub fn run(config: &ScenarioConfig) -> Result<String> {
    let grid = time_grid(config.t_max, config.t_steps);
    let out = series(&config.init, &config.params, &grid, config.method)?;
    Ok(match config.format {
        Format::Csv => render_csv(&out, &config.outputs),
        Format::Json => render_json(&out, &config.outputs),
    })
}

/// The flat field list a column expands to (gamma spans two fields).
fn fields(column: Column) -> &'static [&'static str] {
    match column {
        Column::Alpha => &["alpha"],
        Column::Gamma => &["gamma_re", "gamma_im"],
        Column::Entropy => &["S"],
        Column::S1 => &["s1"],
        Column::S2 => &["s2"],
        Column::Negativity => &["negativity"],
    }
}

fn field_value(record: &ObservableRecord, field: &str) -> Option<f64> {
    match field {
        "t" => Some(record.time),
        "alpha" => Some(record.alpha),
        "gamma_re" => Some(record.gamma.re),
        "gamma_im" => Some(record.gamma.im),
        "S" => Some(record.entropy),
        "s1" => record.s1,
        "s2" => record.s2,
        "negativity" => Some(record.negativity),
        _ => unreachable!("unknown field {field}"),
    }
}

fn field_list(outputs: &[Column]) -> Vec<&'static str> {
    let mut list = vec!["t"];
    for column in Column::ALL {
        if outputs.contains(&column) {
            list.extend_from_slice(fields(column));
        }
    }
    list
}

fn render_csv(series: &ObservableSeries, outputs: &[Column]) -> String {
    let list = field_list(outputs);
    let mut out = String::new();
    out.push_str(&list.join(","));
    out.push('\n');
    for record in &series.records {
        for (k, field) in list.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            match field_value(record, field) {
                Some(v) => out.push_str(&format!("{v}")),
                None => out.push_str("nan"),
            }
        }
        out.push('\n');
    }
    out
}

fn render_json(series: &ObservableSeries, outputs: &[Column]) -> String {
    let list = field_list(outputs);
    let mut out = String::from("[\n");
    for (r, record) in series.records.iter().enumerate() {
        out.push_str("  {");
        for (k, field) in list.iter().enumerate() {
            if k > 0 {
                out.push_str(", ");
            }
            match field_value(record, field) {
                Some(v) => out.push_str(&format!("\"{field}\": {v}")),
                None => out.push_str(&format!("\"{field}\": null")),
            }
        }
        out.push('}');
        if r + 1 < series.records.len() {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str("]\n");
    out
}
