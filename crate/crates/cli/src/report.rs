//! Text output for `check`.

use realign_core::{CriterionResult, DensityMatrix, Evaluation};

use crate::format::{csv_number, sig};

/// Significant digits for the human-readable report.
pub const REPORT_DIGITS: usize = 6;

fn human_line(r: &CriterionResult) -> String {
    let stats: Vec<String> = r
        .statistics
        .iter()
        .map(|(k, v)| format!("{k}={}", sig(*v, REPORT_DIGITS)))
        .collect();
    format!(
        "{:<16} {}  threshold={}  verdict={}",
        r.name,
        stats.join(" "),
        sig(r.threshold, REPORT_DIGITS),
        r.verdict
    )
}

fn machine_line(r: &CriterionResult) -> String {
    let mut fields = vec![format!("criterion={}", r.name)];
    fields.extend(
        r.statistics
            .iter()
            .map(|(k, v)| format!("{k}={}", csv_number(*v))),
    );
    fields.push(format!("threshold={}", csv_number(r.threshold)));
    fields.push(format!("verdict={}", r.verdict));
    fields.join(" ")
}

pub fn render(rho: &DensityMatrix, eval: &Evaluation, machine: bool) -> String {
    let dims = rho.dims();
    let mut out = String::new();
    if machine {
        out.push_str(&format!("dims={}x{}\n", dims.d_a(), dims.d_b()));
        for r in &eval.results {
            out.push_str(&machine_line(r));
            out.push('\n');
        }
        out.push_str(&format!("overall={}\n", eval.overall));
    } else {
        out.push_str(&format!("state: {}x{}\n", dims.d_a(), dims.d_b()));
        for r in &eval.results {
            out.push_str(&human_line(r));
            out.push('\n');
        }
        out.push_str(&format!("overall: {}\n", eval.overall));
    }
    out
}

/// Parses `key=value` statistics back out of machine output, keyed by
/// `"<criterion>.<statistic>"`.
pub fn parse_machine(text: &str) -> Vec<(String, String)> {
    let mut out = Vec::new();
    for line in text.lines() {
        let mut fields = line.split_whitespace();
        let Some(first) = fields.next() else { continue };
        match first.split_once('=') {
            Some(("criterion", name)) => {
                for f in fields {
                    if let Some((k, v)) = f.split_once('=') {
                        out.push((format!("{name}.{k}"), v.to_string()));
                    }
                }
            }
            Some((k, v)) => out.push((k.to_string(), v.to_string())),
            None => {}
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use realign_core::families::rho1;
    use realign_core::{evaluate_all, CRITERION_TOL};

    #[test]
    fn human_report_for_rho1() {
        let rho = rho1();
        let text = render(&rho, &evaluate_all(&rho, CRITERION_TOL), false);
        assert!(text.contains("trace_norm=0.946383"), "{text}");
        assert!(text.contains("rhs=0.820936"), "{text}");
        assert!(text.ends_with("overall: ENTANGLED\n"));
    }

    #[test]
    fn machine_report_parses_back() {
        let rho = rho1();
        let text = render(&rho, &evaluate_all(&rho, CRITERION_TOL), true);
        let kv = parse_machine(&text);
        let get = |k: &str| {
            kv.iter()
                .find(|(key, _)| key == k)
                .map(|(_, v)| v.clone())
                .unwrap()
        };
        assert_eq!(get("dims"), "2x2");
        assert_eq!(get("overall"), "ENTANGLED");
        assert_eq!(get("ppt.verdict"), "ENTANGLED");
        assert_eq!(get("realignment.trace_norm"), "0.946383476483");
        assert_eq!(get("min_singular.s_min"), "0.03125");
    }
}
