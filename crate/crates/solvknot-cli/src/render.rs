//! Deterministic JSON and markdown renderers for claim reports and the
//! doubly-slice verdict table.

use crate::claims::ClaimRecord;
use serde_json::{json, Value};
use solvknot_core::invariants::{
    commutator_quotient, doubly_slice_verdict, is_direct_double, lambda_cyclic,
    CommutatorQuotient, KnotFamily,
};

pub fn report_json(records: &[ClaimRecord]) -> String {
    let doc = json!({
        "schema": "solvknot-report/1",
        "records": records.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable report");
    s.push('\n');
    s
}

pub fn report_markdown(records: &[ClaimRecord]) -> String {
    let mut s = String::from("# Verification report\n\n");
    s.push_str("| claim | location | status | evidence |\n");
    s.push_str("| --- | --- | --- | --- |\n");
    for r in records {
        let payload = serde_json::to_string(&r.payload).expect("serializable payload");
        s.push_str(&format!(
            "| `{}` | {} | {} | `{}` |\n",
            r.claim_id,
            r.paper_location,
            r.status.display(),
            payload.replace('|', "\\|"),
        ));
    }
    s
}

/// One row of the verdict table.
pub struct VerdictRow {
    pub family: String,
    pub quotient: String,
    pub action: String,
    pub direct_double: Option<bool>,
    pub lambda_cyclic: Option<bool>,
    pub doubly_slice: bool,
    pub reason: String,
    pub external: bool,
}

/// The doubly-slice verdict table: both flat families, the configured Nil
/// descriptors, the Fox example, and the documented finite-commutator row.
pub fn verdict_table(gamma_params: &[(i64, i64)]) -> Vec<VerdictRow> {
    let mut families = vec![KnotFamily::GPlus, KnotFamily::GMinus];
    families.extend(
        gamma_params
            .iter()
            .map(|&(e, eta)| KnotFamily::PiEEta { e, eta }),
    );
    families.push(KnotFamily::Fox);

    let mut rows = Vec::new();
    for fam in families {
        let cq = commutator_quotient(fam).expect("computable commutator quotient");
        let (quotient, action, dd, lc) = match &cq {
            CommutatorQuotient::Finite(a) => (
                a.invariant_factors
                    .iter()
                    .map(|d| format!("Z/{}", d))
                    .collect::<Vec<_>>()
                    .join(" + "),
                format!("{:?}", a.action),
                Some(is_direct_double(&cq).unwrap()),
                Some(lambda_cyclic(&cq).unwrap()),
            ),
            CommutatorQuotient::InfiniteZHalf => (
                "Z[1/2] (infinite)".into(),
                "t = x2".into(),
                None,
                None,
            ),
        };
        let v = doubly_slice_verdict(fam).expect("verdict");
        rows.push(VerdictRow {
            family: fam.display(),
            quotient,
            action,
            direct_double: dd,
            lambda_cyclic: lc,
            doubly_slice: v.doubly_slice,
            reason: format!("{:?}", v.reason),
            external: v.external,
        });
    }

    // documented row, not a computation: the group Z x I* has finite
    // perfect commutator subgroup (the binary icosahedral group, order
    // 120); knots with perfect commutator subgroup are topologically
    // doubly slice, though the model knot is known not to be smoothly so
    rows.push(VerdictRow {
        family: "Z x I*".into(),
        quotient: "I* (perfect, order 120); quotient by commutators trivial".into(),
        action: "-".into(),
        direct_double: None,
        lambda_cyclic: None,
        doubly_slice: true,
        reason: "PerfectCommutatorSubgroup (documented; topological category only)".into(),
        external: true,
    });
    rows
}

fn opt(b: Option<bool>) -> Value {
    match b {
        Some(x) => json!(x),
        None => Value::Null,
    }
}

pub fn verdicts_json(rows: &[VerdictRow]) -> String {
    let doc = json!({
        "schema": "solvknot-verdicts/1",
        "rows": rows
            .iter()
            .map(|r| json!({
                "family": r.family,
                "commutatorQuotient": r.quotient,
                "meridianAction": r.action,
                "directDouble": opt(r.direct_double),
                "lambdaCyclic": opt(r.lambda_cyclic),
                "doublySlice": r.doubly_slice,
                "reason": r.reason,
                "external": r.external,
            }))
            .collect::<Vec<_>>(),
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable verdicts");
    s.push('\n');
    s
}

pub fn verdicts_markdown(rows: &[VerdictRow]) -> String {
    let fmt = |b: Option<bool>| match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "-",
    };
    let mut s = String::from("# Doubly-slice verdicts\n\n");
    s.push_str("| family | commutator quotient | action | direct double | Lambda-cyclic | doubly slice | reason |\n");
    s.push_str("| --- | --- | --- | --- | --- | --- | --- |\n");
    for r in rows {
        s.push_str(&format!(
            "| {} | {} | `{}` | {} | {} | {} | {}{} |\n",
            r.family,
            r.quotient,
            r.action,
            fmt(r.direct_double),
            fmt(r.lambda_cyclic),
            if r.doubly_slice { "yes" } else { "no" },
            r.reason,
            if r.external { " (external)" } else { "" },
        ));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::claims::verify_all;
    use crate::config::RunConfig;

    #[test]
    fn verdict_table_shape() {
        let rows = verdict_table(&RunConfig::default().gamma_params);
        // G(+), G(-), six Nil rows, Fox, Z x I*
        assert_eq!(rows.len(), 10);
        let slice: Vec<&str> = rows
            .iter()
            .filter(|r| r.doubly_slice)
            .map(|r| r.family.as_str())
            .collect();
        assert_eq!(slice, vec!["pi(0,-1)", "Z x I*"]);
        assert!(rows.iter().all(|r| !r.family.contains("pi") || r.external == (r.family == "pi(0,-1)")));
    }

    #[test]
    fn renderers_are_deterministic() {
        let cfg = RunConfig {
            gamma_params: vec![(0, -1)],
            search_radius: 3,
            ..RunConfig::default()
        };
        let recs = verify_all(&cfg);
        assert_eq!(report_json(&recs), report_json(&verify_all(&cfg)));
        let md = report_markdown(&recs);
        assert!(md.contains("S6.out-order"));
        let rows = verdict_table(&cfg.gamma_params);
        assert_eq!(verdicts_json(&rows), verdicts_json(&verdict_table(&cfg.gamma_params)));
        assert!(verdicts_markdown(&rows).contains("Z x I*"));
    }
}
