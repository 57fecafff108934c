use dimlab::interval::{
    default_depth, make_cut, run_demo, swell_1d, verify_cut, verify_partition, Swell,
};
use dimlab::Exec;
use serde_json::json;

use crate::args::Iv;
use crate::load::{interval, Inputs};
use crate::{CliError, Outcome};

pub fn run(cmd: Iv, inputs: &mut Inputs, exec: Exec) -> Result<Outcome, CliError> {
    match cmd {
        Iv::Demo { base, depth, seed } => {
            let base = inputs.base(&base)?;
            let depth = depth.unwrap_or_else(|| default_depth(&base));
            let report = run_demo(&base, depth, seed, exec)?;
            let summary = format!(
                "{} sample of {} elements at depth {depth} ({})",
                base.kind(),
                report.sample_size,
                report.evidence
            );
            Ok(Outcome::new(json!(report), summary).evidence_only())
        }
        Iv::Cut { x, y, u: None } => {
            let (x, y) = (interval(&x)?, interval(&y)?);
            let u = make_cut(&x, &y).map_err(|e| CliError::Input(e.to_string()))?;
            let ok = verify_cut(&u, &x, &y);
            Ok(Outcome::new(json!({"u": u, "verified": ok}), format!("cut {u}")).negative_if(!ok))
        }
        Iv::Cut { x, y, u: Some(u) } => {
            let (u, x, y) = (interval(&u)?, interval(&x)?, interval(&y)?);
            let ok = verify_cut(&u, &x, &y);
            Ok(
                Outcome::new(json!({"u": u, "is_cut": ok}), format!("{u} is a cut: {ok}"))
                    .negative_if(!ok),
            )
        }
        Iv::Partition { u, x, y } => {
            let (u, x, y) = (interval(&u)?, interval(&x)?, interval(&y)?);
            let fg = verify_partition(&u, &x, &y);
            let summary = match &fg {
                Some((f, g)) => format!("partition with f = {f}, g = {g}"),
                None => format!("{u} is not a partition"),
            };
            let body = match &fg {
                Some((f, g)) => json!({"is_partition": true, "f": f, "g": g}),
                None => json!({"is_partition": false}),
            };
            Ok(Outcome::new(body, summary).negative_if(fg.is_none()))
        }
        Iv::Swell { n, sets, check } => {
            let xs = sets
                .iter()
                .map(|s| interval(s))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(match swell_1d(n, &xs)? {
                Swell::Cover(ys) => {
                    let summary = ys
                        .iter()
                        .map(|y| y.to_string())
                        .collect::<Vec<_>>()
                        .join(" ; ");
                    Outcome::new(json!({"swelling": ys}), format!("swelling {summary}"))
                }
                Swell::NoWitness => {
                    Outcome::new(json!({"swelling": null}), "no swelling".to_string())
                        .negative_if(check)
                }
            })
        }
    }
}
