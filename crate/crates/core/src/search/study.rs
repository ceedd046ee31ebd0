use serde::Serialize;

use super::local::interval_l1;
use crate::construct::{
    build_big_f_unchecked, gowers_set_from, ConstructionConfig, P_MIN_CONSTRUCT,
};
use crate::decompose::{littlewood_lower_report, EpsChoice};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StudyConfig {
    pub construction: ConstructionConfig,
    pub eps: EpsChoice,
    /// Seeds for the sign and rounding streams of the set construction.
    pub seeds: Vec<u64>,
}

impl Default for StudyConfig {
    fn default() -> Self {
        StudyConfig {
            construction: ConstructionConfig::default(),
            eps: EpsChoice::default(),
            seeds: vec![0],
        }
    }
}

/// One row of `scaling.csv`. Construction columns are empty below
/// [`P_MIN_CONSTRUCT`].
#[derive(Debug, Clone, Serialize)]
pub struct ScalingRow {
    pub p: u64,
    /// `1/(8ε)` certified for the interval set; empty when no ε <= 1/2 is
    /// feasible.
    pub s_lower_cert: Option<f64>,
    pub interval_l1: f64,
    #[serde(rename = "minF_logp")]
    pub min_f_logp: Option<f64>,
    /// `min_x |f~ * f~°(x) - 1/4| · ln p · ln ln p`, smallest over seeds.
    pub dev_tilde_scaled: Option<f64>,
    /// `min_x ||A ∩ (A + x)| - p/4|`, smallest over seeds.
    pub final_min_dev: Option<f64>,
    /// Seeds used, `;`-separated.
    pub seeds: String,
}

pub fn scaling_row(p: u64, cfg: &StudyConfig) -> Result<ScalingRow> {
    let interval: Vec<u64> = (1..=p / 2).collect();
    let s_lower_cert = match littlewood_lower_report(p, &interval, cfg.eps) {
        Ok(r) => Some(r.bound_8eps),
        Err(Error::Infeasible(_)) => None,
        Err(e) => return Err(e),
    };
    let mut row = ScalingRow {
        p,
        s_lower_cert,
        interval_l1: interval_l1(p)?,
        min_f_logp: None,
        dev_tilde_scaled: None,
        final_min_dev: None,
        seeds: cfg
            .seeds
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(";"),
    };
    if p >= P_MIN_CONSTRUCT {
        let construction = build_big_f_unchecked(p, &cfg.construction)?;
        let lp = (p as f64).ln();
        row.min_f_logp = Some(construction.min_abs_f * lp);
        for &seed in &cfg.seeds {
            let sub = ConstructionConfig {
                seed,
                ..cfg.construction.clone()
            };
            let rep = gowers_set_from(construction.clone(), &sub)?;
            let dev = rep.dev_tilde_min * lp * lp.ln();
            row.dev_tilde_scaled = Some(row.dev_tilde_scaled.map_or(dev, |v| v.min(dev)));
            let fin = rep.rounding.final_min_dev;
            row.final_min_dev = Some(row.final_min_dev.map_or(fin, |v| v.min(fin)));
        }
    }
    Ok(row)
}

pub fn scaling_study(p_list: &[u64], cfg: &StudyConfig) -> Result<Vec<ScalingRow>> {
    p_list.iter().map(|&p| scaling_row(p, cfg)).collect()
}

pub fn write_scaling_csv<W: std::io::Write>(rows: &[ScalingRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::exhaustive_littlewood;

    #[test]
    fn lower_cert_below_exhaustive() {
        let rows = scaling_study(&[7, 13, 17], &StudyConfig::default()).unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows[0].s_lower_cert.is_none());
        for row in &rows[1..] {
            let s = exhaustive_littlewood(row.p).unwrap().s_p;
            assert!(row.s_lower_cert.unwrap() <= s, "p = {}", row.p);
            assert!(row.min_f_logp.is_none());
        }
    }

    #[test]
    fn csv_layout() {
        let rows = scaling_study(&[101, 103], &StudyConfig::default()).unwrap();
        let mut buf = Vec::new();
        write_scaling_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "p,s_lower_cert,interval_l1,minF_logp,dev_tilde_scaled,final_min_dev,seeds"
        );
        assert_eq!(lines.count(), 2);
        assert!(rows[0].final_min_dev.is_some());
    }
}
