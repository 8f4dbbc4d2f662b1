//! CSV and JSON renderings of single points and sweeps.

use std::fmt::Write;

use magnomech::entanglement::EntanglementRecord;
use magnomech::sweep::PointEvaluation;
use magnomech::{ParamField, Sweep};
use serde_json::{json, Value};

use crate::config::DriveSummary;

/// Twelve significant digits, locale independent; `NaN` for missing values.
pub fn number(v: f64) -> String {
    if v.is_nan() {
        "NaN".to_string()
    } else {
        format!("{v:.11e}")
    }
}

fn flag(b: bool) -> &'static str {
    if b {
        "1"
    } else {
        "0"
    }
}

fn record_cells(r: &EntanglementRecord<f64>) -> String {
    format!(
        "{},{},{},{}",
        flag(r.stable),
        number(r.log_neg),
        number(r.duan_sum),
        number(r.nu_minus)
    )
}

pub fn sweep_csv(sweep: &Sweep) -> String {
    let mut out = String::new();
    let header: Vec<String> = (1..=sweep.axes.len()).map(|i| format!("axis{i}")).collect();
    let _ = writeln!(out, "{},stable,EN,duan,nu_minus", header.join(","));
    for p in &sweep.points {
        let coords: Vec<String> = p.coords.iter().map(|&c| number(c)).collect();
        let _ = writeln!(out, "{},{}", coords.join(","), record_cells(&p.record));
    }
    out
}

pub fn sweep_json(sweep: &Sweep) -> String {
    let axes: Vec<String> = sweep.axes.iter().map(|a| a.to_string()).collect();
    let points: Vec<Value> = sweep
        .points
        .iter()
        .map(|p| {
            json!({
                "coords": p.coords,
                "stable": p.record.stable,
                "EN": p.record.log_neg,
                "duan": p.record.duan_sum,
                "nu_minus": p.record.nu_minus,
                "error": p.error.as_ref().map(|e| e.to_string()),
            })
        })
        .collect();
    serde_json::to_string_pretty(&json!({ "axes": axes, "points": points }))
        .expect("sweep serializes")
        + "\n"
}

fn hz(v: f64) -> f64 {
    ParamField::OmegaB.to_external(v)
}

pub fn steady_csv(eval: &PointEvaluation<f64>) -> String {
    format!("stable,EN,duan,nu_minus\n{}\n", record_cells(&eval.record))
}

pub fn steady_json(eval: &PointEvaluation<f64>, drive: Option<&DriveSummary>) -> String {
    let occ = &eval.occupancies;
    let cm: Option<Vec<Vec<f64>>> = eval.cavity_pair.map(|c| {
        c.matrix()
            .row_iter()
            .map(|r| r.iter().copied().collect())
            .collect()
    });
    let mut doc = json!({
        "stable": eval.stability.stable,
        "max_real_part_hz": hz(eval.stability.max_real_part),
        "EN": eval.record.log_neg,
        "nu_minus": eval.record.nu_minus,
        "duan": eval.record.duan_sum,
        "duan_witnessed": eval.record.duan_witnessed(),
        "occupancies": { "n_1": occ.n_1, "n_2": occ.n_2, "n_m": occ.n_m, "n_b": occ.n_b },
        "cavity_cm": cm,
    });
    if let Some(d) = drive {
        doc["drive"] = json!({
            "rabi_omega_hz": hz(d.rabi_omega),
            "delta_m_eff_hz": hz(d.delta_m_eff),
            "coupling_G_hz": hz(d.coupling_g),
            "magnon_amplitude": d.magnon_amplitude,
        });
    }
    serde_json::to_string_pretty(&doc).expect("report serializes") + "\n"
}

pub fn steady_text(eval: &PointEvaluation<f64>, drive: Option<&DriveSummary>) -> String {
    let mut out = String::new();
    let s = &eval.stability;
    let _ = writeln!(out, "stable           {}", s.stable);
    let _ = writeln!(out, "max Re(λ)/2π     {} Hz", number(hz(s.max_real_part)));
    if let Some(d) = drive {
        let _ = writeln!(out, "Ω/2π             {} Hz", number(hz(d.rabi_omega)));
        let _ = writeln!(out, "Δ̃_m/2π           {} Hz", number(hz(d.delta_m_eff)));
        let _ = writeln!(out, "G/2π             {} Hz", number(hz(d.coupling_g)));
        let _ = writeln!(out, "|⟨m⟩|            {}", number(d.magnon_amplitude));
    }
    let o = &eval.occupancies;
    let _ = writeln!(
        out,
        "occupancies      N1={} N2={} Nm={} Nb={}",
        number(o.n_1),
        number(o.n_2),
        number(o.n_m),
        number(o.n_b)
    );
    let r = &eval.record;
    let _ = writeln!(out, "E_N              {}", number(r.log_neg));
    let _ = writeln!(out, "nu_minus         {}", number(r.nu_minus));
    let _ = writeln!(
        out,
        "duan             {}{}",
        number(r.duan_sum),
        if r.duan_witnessed() {
            " (< 2, entangled)"
        } else {
            ""
        }
    );
    if let Some(cm) = &eval.cavity_pair {
        let _ = writeln!(out, "cavity-pair CM (X1, Y1, X2, Y2)");
        for row in cm.matrix().row_iter() {
            let cells: Vec<String> = row.iter().map(|&v| format!("{:>19}", number(v))).collect();
            let _ = writeln!(out, "  {}", cells.join(" "));
        }
    }
    out
}
