//! The useful-signal tables: sign-count estimator next to the sample mean.

use equistat::harness::{emit_report, reproduce_table, tables, OutputFormat, TableId};

fn main() {
    for which in [TableId::Table1, TableId::Table2] {
        let report = reproduce_table(which);
        print!("{}", emit_report(&report, OutputFormat::Markdown).split("\n### Metadata").next().unwrap());
        let checks = tables::check_against_published(which, &report);
        let worst = checks
            .iter()
            .map(|c| (c.actual.unwrap() - c.cell.expected).abs())
            .fold(0.0, f64::max);
        println!(
            "\n{} of {} printed cells within tolerance, worst deviation {worst:.2e}\n",
            checks.iter().filter(|c| c.passed()).count(),
            checks.len()
        );
    }
}
