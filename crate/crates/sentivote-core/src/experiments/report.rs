//! Result-table rendering: a machine-readable CSV that round-trips exactly,
//! and a Markdown rendering shaped like the reference result tables
//! (two-decimal accuracies, one-decimal percentages, bold row maxima).

use alloc::borrow::ToOwned;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::{format, vec};

use crate::classifiers::Family;
use crate::corpus::corpus_abbreviation;
use crate::evaluation::AgreementBand;
use crate::experiments::{
    ExperimentMode, ExperimentResult, FoldLabel, MemberOutcome,
};
use crate::{Error, Result};

/// Output format for `emit_report`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Markdown,
}

impl ReportFormat {
    pub fn parse(name: &str) -> Result<ReportFormat> {
        match name {
            "csv" => Ok(ReportFormat::Csv),
            "md" | "markdown" => Ok(ReportFormat::Markdown),
            other => Err(Error::UnknownFormat(other.to_owned())),
        }
    }
}

/// Renders results in the requested format. The CSV form keeps full float
/// precision and parses back bit-identically; the Markdown form applies the
/// table formatting conventions.
pub fn emit_report(results: &[ExperimentResult], format: ReportFormat) -> Result<String> {
    if results.is_empty() {
        return Err(Error::EmptyResults);
    }
    match format {
        ReportFormat::Csv => render_csv(results),
        ReportFormat::Markdown => Ok(render_markdown(results)),
    }
}

fn csv_escape(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') || field.contains('\r') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_owned()
    }
}

fn split_csv_line(line: &str, lineno: usize) -> Result<Vec<String>> {
    let mut fields = Vec::new();
    let mut current = String::new();
    let mut chars = line.chars().peekable();
    let mut quoted = false;
    loop {
        match chars.next() {
            None => {
                if quoted {
                    return Err(Error::ReportParse {
                        line: lineno,
                        message: "unterminated quoted field".to_owned(),
                    });
                }
                fields.push(current);
                return Ok(fields);
            }
            Some('"') if quoted => {
                if chars.peek() == Some(&'"') {
                    chars.next();
                    current.push('"');
                } else {
                    quoted = false;
                }
            }
            Some('"') if current.is_empty() && !quoted => quoted = true,
            Some(',') if !quoted => fields.push(core::mem::take(&mut current)),
            Some(ch) => current.push(ch),
        }
    }
}

fn optional_f64(value: Option<f64>) -> String {
    value.map_or_else(String::new, |v| format!("{v}"))
}

/// Full-precision CSV of result rows. All rows must have the same member
/// count; member columns are `m<i>_family`, `m<i>_train`, `m<i>_accuracy`,
/// `m<i>_macro_f1`.
pub fn render_csv(results: &[ExperimentResult]) -> Result<String> {
    if results.is_empty() {
        return Err(Error::EmptyResults);
    }
    let member_count = results[0].members.len();
    for row in results {
        if row.members.len() != member_count {
            return Err(Error::InconsistentMemberCount {
                expected: member_count,
                actual: row.members.len(),
            });
        }
    }

    let mut out = String::new();
    out.push_str("run_id,mode,fold,test_corpus,n_test,vc_accuracy,vc_macro_f1");
    for i in 1..=member_count {
        out.push_str(&format!(
            ",m{i}_family,m{i}_train,m{i}_accuracy,m{i}_macro_f1"
        ));
    }
    out.push_str(",disagreement_rate,kappa,band,vocab_overlap,text_overlap,seed\n");

    for row in results {
        let mut fields: Vec<String> = vec![
            row.run_id.clone(),
            row.mode.as_str().to_owned(),
            row.fold.render(),
            csv_escape(&row.test_corpus),
            row.n_test.to_string(),
            format!("{}", row.vc_accuracy),
            format!("{}", row.vc_macro_f1),
        ];
        for member in &row.members {
            fields.push(member.family.as_str().to_owned());
            fields.push(csv_escape(&member.train_corpus));
            fields.push(format!("{}", member.accuracy));
            fields.push(format!("{}", member.macro_f1));
        }
        fields.push(format!("{}", row.disagreement_rate));
        fields.push(format!("{}", row.kappa));
        fields.push(row.band.as_str().to_owned());
        fields.push(optional_f64(row.vocab_overlap));
        fields.push(optional_f64(row.text_overlap));
        fields.push(row.seed.to_string());
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    Ok(out)
}

/// Parses `render_csv` output back into result rows.
pub fn parse_report_csv(text: &str) -> Result<Vec<ExperimentResult>> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(Error::ReportParse {
        line: 1,
        message: "missing header".to_owned(),
    })?;
    let header_fields = split_csv_line(header, 1)?;
    let fixed_prefix = 7;
    let fixed_suffix = 6;
    if header_fields.len() < fixed_prefix + fixed_suffix
        || (header_fields.len() - fixed_prefix - fixed_suffix) % 4 != 0
    {
        return Err(Error::ReportParse {
            line: 1,
            message: format!("unexpected column count {}", header_fields.len()),
        });
    }
    let member_count = (header_fields.len() - fixed_prefix - fixed_suffix) / 4;

    let parse_f64 = |field: &str, lineno: usize| -> Result<f64> {
        field.parse::<f64>().map_err(|_| Error::ReportParse {
            line: lineno,
            message: format!("bad number {field:?}"),
        })
    };

    let mut results = Vec::new();
    for (index, line) in lines {
        if line.is_empty() {
            continue;
        }
        let lineno = index + 1;
        let fields = split_csv_line(line, lineno)?;
        if fields.len() != header_fields.len() {
            return Err(Error::ReportParse {
                line: lineno,
                message: format!(
                    "expected {} fields, got {}",
                    header_fields.len(),
                    fields.len()
                ),
            });
        }
        let mut members = Vec::with_capacity(member_count);
        for i in 0..member_count {
            let base = fixed_prefix + 4 * i;
            members.push(MemberOutcome {
                family: Family::parse(&fields[base])?,
                train_corpus: fields[base + 1].clone(),
                accuracy: parse_f64(&fields[base + 2], lineno)?,
                macro_f1: parse_f64(&fields[base + 3], lineno)?,
            });
        }
        let tail = fixed_prefix + 4 * member_count;
        let optional = |field: &str, lineno: usize| -> Result<Option<f64>> {
            if field.is_empty() {
                Ok(None)
            } else {
                parse_f64(field, lineno).map(Some)
            }
        };
        results.push(ExperimentResult {
            run_id: fields[0].clone(),
            mode: ExperimentMode::parse(&fields[1])?,
            fold: FoldLabel::parse(&fields[2])?,
            test_corpus: fields[3].clone(),
            n_test: fields[4].parse().map_err(|_| Error::ReportParse {
                line: lineno,
                message: format!("bad count {:?}", fields[4]),
            })?,
            vc_accuracy: parse_f64(&fields[5], lineno)?,
            vc_macro_f1: parse_f64(&fields[6], lineno)?,
            members,
            disagreement_rate: parse_f64(&fields[tail], lineno)?,
            kappa: parse_f64(&fields[tail + 1], lineno)?,
            band: AgreementBand::parse(&fields[tail + 2])?,
            vocab_overlap: optional(&fields[tail + 3], lineno)?,
            text_overlap: optional(&fields[tail + 4], lineno)?,
            seed: fields[tail + 5].parse().map_err(|_| Error::ReportParse {
                line: lineno,
                message: format!("bad seed {:?}", fields[tail + 5]),
            })?,
        });
    }
    Ok(results)
}

fn fmt_accuracy(value: f64) -> String {
    format!("{value:.2}")
}

fn fmt_percent(value: f64) -> String {
    format!("{:.1}%", value * 100.0)
}

/// Integer hundredths of the displayed two-decimal string, so bolding
/// agrees exactly with what the table shows.
fn displayed_hundredths(value: f64) -> i64 {
    fmt_accuracy(value)
        .replace('.', "")
        .parse()
        .expect("two-decimal accuracy format")
}

fn member_headers(rows: &[&ExperimentResult]) -> Vec<String> {
    let member_count = rows[0].members.len();
    let mut headers = Vec::with_capacity(member_count);
    let mut family_tally: Vec<Option<Family>> = Vec::with_capacity(member_count);
    for slot in 0..member_count {
        let first = rows[0].members[slot].family;
        let uniform = rows.iter().all(|row| row.members[slot].family == first);
        family_tally.push(uniform.then_some(first));
    }
    for (slot, family) in family_tally.iter().enumerate() {
        match family {
            None => headers.push(format!("Member {}", slot + 1)),
            Some(family) => {
                let duplicates = family_tally
                    .iter()
                    .filter(|f| **f == Some(*family))
                    .count();
                if duplicates > 1 {
                    let ordinal = family_tally[..=slot]
                        .iter()
                        .filter(|f| **f == Some(*family))
                        .count();
                    headers.push(format!("{}{}", family.display_name(), ordinal));
                } else {
                    headers.push(family.display_name().to_owned());
                }
            }
        }
    }
    headers
}

fn markdown_table(title: &str, rows: &[&ExperimentResult]) -> String {
    let within = rows[0].mode == ExperimentMode::WithinDomain;
    let member_headers = member_headers(rows);
    let mut out = format!("### {title}\n\n");

    let mut header: Vec<String> = vec!["ID".to_owned()];
    if within {
        header.push("Fold".to_owned());
    } else {
        header.push("Testset".to_owned());
    }
    header.push("#Data".to_owned());
    header.push("VC".to_owned());
    header.extend(member_headers.iter().cloned());
    header.push("Disagreement".to_owned());
    header.push("κ".to_owned());
    header.push("Band".to_owned());
    if !within {
        header.push("Vocab overlap".to_owned());
        header.push("Text overlap".to_owned());
    }
    out.push_str(&format!("| {} |\n", header.join(" | ")));
    out.push_str(&format!(
        "|{}\n",
        " --- |".repeat(header.len())
    ));

    for row in rows {
        let mut displayed = vec![displayed_hundredths(row.vc_accuracy)];
        displayed.extend(row.members.iter().map(|m| displayed_hundredths(m.accuracy)));
        let top = *displayed.iter().max().expect("at least the VC accuracy");

        let bold = |text: String, value: i64| -> String {
            if value == top {
                format!("**{text}**")
            } else {
                text
            }
        };

        let mut cells: Vec<String> = Vec::new();
        if within {
            cells.push(format!(
                "{} ({})",
                row.run_id,
                corpus_abbreviation(&row.test_corpus)
            ));
            cells.push(row.fold.render());
        } else {
            cells.push(row.run_id.clone());
            cells.push(corpus_abbreviation(&row.test_corpus).to_owned());
        }
        cells.push(row.n_test.to_string());
        cells.push(bold(fmt_accuracy(row.vc_accuracy), displayed[0]));
        for (slot, member) in row.members.iter().enumerate() {
            cells.push(format!(
                "{} ({})",
                bold(fmt_accuracy(member.accuracy), displayed[slot + 1]),
                corpus_abbreviation(&member.train_corpus)
            ));
        }
        cells.push(fmt_percent(row.disagreement_rate));
        cells.push(format!("{:.2}", row.kappa));
        cells.push(row.band.as_str().to_owned());
        if !within {
            cells.push(row.vocab_overlap.map_or_else(String::new, fmt_percent));
            cells.push(row.text_overlap.map_or_else(String::new, fmt_percent));
        }
        out.push_str(&format!("| {} |\n", cells.join(" | ")));
    }
    out.push('\n');
    out
}

/// Markdown rendering: one table per mode present, in row order.
pub fn render_markdown(results: &[ExperimentResult]) -> String {
    let mut out = String::new();
    let within: Vec<&ExperimentResult> = results
        .iter()
        .filter(|r| r.mode == ExperimentMode::WithinDomain)
        .collect();
    let cross: Vec<&ExperimentResult> = results
        .iter()
        .filter(|r| r.mode == ExperimentMode::CrossPlatform)
        .collect();
    if !within.is_empty() {
        out.push_str(&markdown_table("Within-domain", &within));
    }
    if !cross.is_empty() {
        out.push_str(&markdown_table("Cross-platform", &cross));
    }
    out
}

/// Markdown rendering under a caller-chosen section title; rows must share
/// one mode.
pub fn render_markdown_section(title: &str, results: &[ExperimentResult]) -> Result<String> {
    if results.is_empty() {
        return Err(Error::EmptyResults);
    }
    let mode = results[0].mode;
    if results.iter().any(|r| r.mode != mode) {
        return Err(Error::InvalidExperimentConfig(
            "markdown section mixes within-domain and cross-platform rows".to_owned(),
        ));
    }
    let rows: Vec<&ExperimentResult> = results.iter().collect();
    Ok(markdown_table(title, &rows))
}
