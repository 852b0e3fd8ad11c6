//! JSON shape of the verification report.

use farey_core::verify::VerifyReport;
use serde::Serialize;

#[derive(Serialize)]
pub struct ReportDto {
    pub schema_version: u32,
    pub pass: bool,
    pub criteria: Vec<CriterionDto>,
    pub adjudications: Vec<String>,
}

#[derive(Serialize)]
pub struct CriterionDto {
    pub id: u32,
    pub name: &'static str,
    pub pass: bool,
    pub band: &'static str,
    pub measured: Vec<MeasuredDto>,
}

#[derive(Serialize)]
pub struct MeasuredDto {
    pub key: String,
    pub value: String,
}

pub fn report_json(report: &VerifyReport) -> String {
    let dto = ReportDto {
        schema_version: 1,
        pass: report.pass,
        criteria: report
            .outcomes
            .iter()
            .map(|o| CriterionDto {
                id: o.id,
                name: o.name,
                pass: o.pass,
                band: o.band,
                measured: o
                    .measured
                    .iter()
                    .map(|(k, v)| MeasuredDto {
                        key: k.clone(),
                        value: v.clone(),
                    })
                    .collect(),
            })
            .collect(),
        adjudications: report.adjudications.clone(),
    };
    let mut s = serde_json::to_string_pretty(&dto).expect("serializable");
    s.push('\n');
    s
}
