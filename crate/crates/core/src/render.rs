//! Report serialization. Numbers are written with 17 significant digits
//! (`{:.16e}`) so every double round-trips; non-finite values become `null`.

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use serde_json::value::RawValue;

use crate::complexfn::ComplexScalar;
use crate::identities::VerificationReport;

/// 17-significant-digit scientific rendering.
pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

/// `re±imi`, parseable by [`crate::cli::parse_complex`].
pub fn format_complex(z: ComplexScalar) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", format_real(z.re), sign, format_real(z.im.abs()))
}

struct Num(f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        let raw = RawValue::from_string(format_real(self.0)).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

#[derive(Serialize)]
struct Complex {
    re: Num,
    im: Num,
}

impl From<ComplexScalar> for Complex {
    fn from(z: ComplexScalar) -> Self {
        Complex { re: Num(z.re), im: Num(z.im) }
    }
}

/// String-keyed map that keeps insertion order.
struct Ordered<T>(Vec<(String, T)>);

impl<T: Serialize> Serialize for Ordered<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Serialize)]
struct Constant {
    r: Num,
    theta: Num,
}

#[derive(Serialize)]
struct Case {
    k: Complex,
    a: Constant,
}

#[derive(Serialize)]
struct RouteJson {
    value: Complex,
    err_estimate: Option<Num>,
    n_evals: Option<usize>,
}

#[derive(Serialize)]
struct ResidualJson {
    abs: Num,
    limit: Num,
    pass: bool,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    label: &'a str,
    case: Case,
    routes: Ordered<RouteJson>,
    residuals: Ordered<ResidualJson>,
    verdict: &'static str,
    notes: &'a [String],
    evaluations: usize,
}

impl<'a> From<&'a VerificationReport> for ReportJson<'a> {
    fn from(r: &'a VerificationReport) -> Self {
        ReportJson {
            label: &r.label,
            case: Case {
                k: r.k.into(),
                a: Constant { r: Num(r.a.r()), theta: Num(r.a.theta()) },
            },
            routes: Ordered(
                r.routes
                    .iter()
                    .map(|rv| {
                        (
                            rv.route.as_str().to_string(),
                            RouteJson {
                                value: rv.value.into(),
                                err_estimate: rv.err_estimate.map(Num),
                                n_evals: rv.n_evals,
                            },
                        )
                    })
                    .collect(),
            ),
            residuals: Ordered(
                r.residuals
                    .iter()
                    .map(|res| {
                        (
                            res.label.clone(),
                            ResidualJson { abs: Num(res.abs), limit: Num(res.limit), pass: res.pass },
                        )
                    })
                    .collect(),
            ),
            verdict: r.verdict.as_str(),
            notes: &r.notes,
            evaluations: r.routes.iter().filter_map(|rv| rv.n_evals).sum(),
        }
    }
}

pub fn report_json(report: &VerificationReport) -> String {
    serde_json::to_string_pretty(&ReportJson::from(report)).expect("report serialization")
}

pub fn reports_json(reports: &[VerificationReport]) -> String {
    let list: Vec<ReportJson<'_>> = reports.iter().map(ReportJson::from).collect();
    serde_json::to_string_pretty(&list).expect("report serialization")
}

pub const CSV_HEADER: &str = "k_re,k_im,a_r,a_theta,route,value_re,value_im,err_est,verdict";

/// One row per route value.
pub fn reports_csv(reports: &[VerificationReport]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in reports {
        for rv in &r.routes {
            let err = rv.err_estimate.map(format_real).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                format_real(r.k.re),
                format_real(r.k.im),
                format_real(r.a.r()),
                format_real(r.a.theta()),
                rv.route,
                format_real(rv.value.re),
                format_real(rv.value.im),
                err,
                r.verdict
            ));
        }
    }
    out
}
