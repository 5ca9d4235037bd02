//! Versioned report envelope.
//!
//! Every emitted report carries the schema version, the tool version and
//! the configuration that produced it. The configuration never includes the
//! worker count, so reports are byte-identical however many threads ran.

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Serialize)]
pub struct Envelope<'a, C: Serialize, R: Serialize> {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub config: &'a C,
    pub report: &'a R,
}

impl<'a, C: Serialize, R: Serialize> Envelope<'a, C, R> {
    pub fn new(config: &'a C, report: &'a R) -> Self {
        Envelope {
            schema_version: SCHEMA_VERSION,
            tool_version: TOOL_VERSION,
            config,
            report,
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<C: Serialize, R: Serialize>(config: &C, report: &R) -> String {
    let mut s = serde_json::to_string_pretty(&Envelope::new(config, report))
        .expect("reports serialize to JSON");
    s.push('\n');
    s
}

/// CSV of flat rows, header from the field names.
pub fn rows_to_csv<T: Serialize>(rows: &[T]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("reports are utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Row {
        x: String,
        n: u32,
    }

    #[test]
    fn envelope_fields_in_order() {
        let j = to_json(
            &("cfg", 1),
            &Row {
                x: "a".into(),
                n: 2,
            },
        );
        let v: serde_json::Value = serde_json::from_str(&j).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["report"]["n"], 2);
        let keys = ["schema_version", "tool_version", "config", "report"];
        let pos: Vec<usize> = keys.iter().map(|k| j.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn csv_rows() {
        let rows = [
            Row {
                x: "01".into(),
                n: 1,
            },
            Row { x: "".into(), n: 0 },
        ];
        assert_eq!(rows_to_csv(&rows).unwrap(), "x,n\n01,1\n,0\n");
    }
}
