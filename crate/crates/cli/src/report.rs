//! Versioned report: blocks `input`, `existence`, `correlation`, `factorization` and
//! `verification`, each holding `values` and `residuals`.

use std::io::Write;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::config::JobConfig;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Quantity {
    Number(f64),
    Series(Vec<f64>),
    Estimate { value: f64, stderr: f64 },
    Estimates { value: Vec<f64>, stderr: Vec<f64> },
    Text(String),
    Flag(bool),
}

impl From<f64> for Quantity {
    fn from(x: f64) -> Self {
        Self::Number(x)
    }
}

impl From<Vec<f64>> for Quantity {
    fn from(x: Vec<f64>) -> Self {
        Self::Series(x)
    }
}

impl From<&[f64]> for Quantity {
    fn from(x: &[f64]) -> Self {
        Self::Series(x.to_vec())
    }
}

impl From<bool> for Quantity {
    fn from(x: bool) -> Self {
        Self::Flag(x)
    }
}

impl From<&str> for Quantity {
    fn from(x: &str) -> Self {
        Self::Text(x.to_string())
    }
}

impl From<String> for Quantity {
    fn from(x: String) -> Self {
        Self::Text(x)
    }
}

/// Named quantities kept in insertion order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Fields(pub Vec<(String, Quantity)>);

impl Fields {
    pub fn push(&mut self, name: &str, q: impl Into<Quantity>) {
        self.0.push((name.to_string(), q.into()));
    }

    pub fn get(&self, name: &str) -> Option<&Quantity> {
        self.0.iter().find(|(n, _)| n == name).map(|(_, q)| q)
    }
}

impl Serialize for Fields {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Block {
    pub values: Fields,
    pub residuals: Fields,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub config: JobConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<Block>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub existence: Option<Block>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub correlation: Option<Block>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factorization: Option<Block>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<Block>,
    pub notes: Vec<String>,
    /// `ok` or `fail`.
    pub status: String,
}

impl Report {
    pub fn new(command: &str, config: JobConfig) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            config,
            input: None,
            existence: None,
            correlation: None,
            factorization: None,
            verification: None,
            notes: Vec::new(),
            status: "ok".to_string(),
        }
    }

    fn blocks(&self) -> [(&'static str, Option<&Block>); 5] {
        [
            ("input", self.input.as_ref()),
            ("existence", self.existence.as_ref()),
            ("correlation", self.correlation.as_ref()),
            ("factorization", self.factorization.as_ref()),
            ("verification", self.verification.as_ref()),
        ]
    }

    pub fn write_json(&self, out: &mut impl Write) -> std::io::Result<()> {
        serde_json::to_writer_pretty(&mut *out, self)?;
        writeln!(out)
    }

    /// One row per scalar: `name,index,value,stderr`, with names `block.section.quantity`.
    pub fn write_csv(&self, out: &mut impl Write) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["name", "index", "value", "stderr"])?;
        w.write_record(["schema", "", &SCHEMA_VERSION.to_string(), ""])?;
        w.write_record(["status", "", &self.status, ""])?;
        for (block_name, block) in self.blocks() {
            let Some(block) = block else { continue };
            for (section, fields) in [("values", &block.values), ("residuals", &block.residuals)] {
                for (key, q) in &fields.0 {
                    let name = format!("{block_name}.{section}.{key}");
                    write_quantity(&mut w, &name, q)?;
                }
            }
        }
        for (i, note) in self.notes.iter().enumerate() {
            w.write_record(["note", &i.to_string(), note, ""])?;
        }
        w.flush()?;
        Ok(())
    }
}

fn fmt(x: f64) -> String {
    format!("{x:?}")
}

fn write_quantity<W: Write>(w: &mut csv::Writer<W>, name: &str, q: &Quantity) -> csv::Result<()> {
    match q {
        Quantity::Number(x) => w.write_record([name, "", &fmt(*x), ""]),
        Quantity::Series(xs) => xs
            .iter()
            .enumerate()
            .try_for_each(|(i, x)| w.write_record([name, &i.to_string(), &fmt(*x), ""])),
        Quantity::Estimate { value, stderr } => {
            w.write_record([name, "", &fmt(*value), &fmt(*stderr)])
        }
        Quantity::Estimates { value, stderr } => value
            .iter()
            .zip(stderr)
            .enumerate()
            .try_for_each(|(i, (v, s))| w.write_record([name, &i.to_string(), &fmt(*v), &fmt(*s)])),
        Quantity::Text(s) => w.write_record([name, "", s, ""]),
        Quantity::Flag(b) => w.write_record([name, "", &b.to_string(), ""]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{JobConfig, PartialConfig};

    fn report() -> Report {
        let config = JobConfig::resolve(PartialConfig {
            b: Some(vec![0.4]),
            ..Default::default()
        })
        .unwrap();
        let mut r = Report::new("analyze", config);
        let mut block = Block::default();
        block.values.push("v", 0.6);
        block.values.push("r", vec![1.0, 0.5]);
        block.residuals.push("identity", 1e-12);
        r.correlation = Some(block);
        r
    }

    #[test]
    fn json_layout() {
        let mut buf = Vec::new();
        report().write_json(&mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["correlation"]["values"]["v"], 0.6);
        assert_eq!(v["correlation"]["values"]["r"][1], 0.5);
        assert_eq!(v["config"]["b"][0], 0.4);
        assert!(v.get("factorization").is_none());
    }

    #[test]
    fn csv_rows() {
        let mut buf = Vec::new();
        report().write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "name,index,value,stderr");
        assert!(lines.contains(&"correlation.values.v,,0.6,"));
        assert!(lines.contains(&"correlation.values.r,1,0.5,"));
    }
}
