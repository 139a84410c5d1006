//! Coloring documents: a flat JSON object holding one coloring.
//!
//! ```json
//! {
//!   "format_version": 1,
//!   "n": 4,
//!   "k": 5,
//!   "mode": "rainbow",
//!   "colors": [1, 2, 3, 3, 4, 0],
//!   "note": "even construction"
//! }
//! ```
//!
//! `colors` lists the edge colors in edge-index order: `(0,1), (0,2), (1,2),
//! (0,3), ...`, i.e. edge `{i, j}` with `i < j` sits at `j(j-1)/2 + i`.

use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};
use tridist::{Color, EdgeColoring, PaletteMode};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColoringDocument {
    pub format_version: u32,
    pub n: usize,
    pub k: usize,
    pub mode: String,
    pub colors: Vec<Color>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ColoringDocument {
    pub fn new(coloring: &EdgeColoring, mode: PaletteMode, note: Option<String>) -> Self {
        Self {
            format_version: FORMAT_VERSION,
            n: coloring.n(),
            k: coloring.k(),
            mode: mode.label().to_string(),
            colors: coloring.colors().to_vec(),
            note,
        }
    }

    /// Parses and validates a document.
    pub fn parse(text: &str) -> Result<Self> {
        let doc: Self = serde_json::from_str(text).map_err(|e| {
            anyhow!(
                "coloring document, line {} column {}: {}",
                e.line(),
                e.column(),
                e
            )
        })?;
        doc.validate()?;
        Ok(doc)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in {}", path.display()))
    }

    fn validate(&self) -> Result<()> {
        if self.format_version != FORMAT_VERSION {
            bail!(
                "field `format_version`: unsupported version {} (expected {FORMAT_VERSION})",
                self.format_version
            );
        }
        self.mode()?;
        self.coloring()?;
        Ok(())
    }

    pub fn mode(&self) -> Result<PaletteMode> {
        self.mode.parse().map_err(|e| anyhow!("field `mode`: {e}"))
    }

    pub fn coloring(&self) -> Result<EdgeColoring> {
        EdgeColoring::new(self.n, self.k, self.colors.clone()).map_err(|e| anyhow!("field `colors`: {e}"))
    }

    /// Pretty JSON with the color array on one line.
    pub fn to_json(&self) -> String {
        let colors: Vec<String> = self.colors.iter().map(|c| c.to_string()).collect();
        let mut out = String::from("{\n");
        out += &format!("  \"format_version\": {},\n", self.format_version);
        out += &format!("  \"n\": {},\n", self.n);
        out += &format!("  \"k\": {},\n", self.k);
        out += &format!("  \"mode\": {},\n", serde_json::to_string(&self.mode).expect("string"));
        out += &format!("  \"colors\": [{}]", colors.join(", "));
        if let Some(note) = &self.note {
            out += &format!(",\n  \"note\": {}", serde_json::to_string(note).expect("string"));
        }
        out += "\n}\n";
        out
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json()).with_context(|| format!("writing {}", path.display()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use tridist::constructions::modular_coloring;

    #[test]
    fn round_trip() {
        let c = modular_coloring(7).unwrap();
        let doc = ColoringDocument::new(&c, PaletteMode::RainbowProper, Some("modular".into()));
        let back = ColoringDocument::parse(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.coloring().unwrap(), c);
        assert_eq!(back.mode().unwrap(), PaletteMode::RainbowProper);
    }

    #[test]
    fn reports_field_problems() {
        let bad_len = r#"{"format_version": 1, "n": 4, "k": 3, "mode": "set", "colors": [0, 1]}"#;
        let err = format!("{:#}", ColoringDocument::parse(bad_len).unwrap_err());
        assert!(err.contains("colors"), "{err}");

        let bad_mode = r#"{"format_version": 1, "n": 3, "k": 3, "mode": "weird", "colors": [0, 1, 2]}"#;
        let err = format!("{:#}", ColoringDocument::parse(bad_mode).unwrap_err());
        assert!(err.contains("mode"), "{err}");

        let missing = "{\n  \"format_version\": 1,\n  \"n\": 3\n}";
        let err = format!("{:#}", ColoringDocument::parse(missing).unwrap_err());
        assert!(err.contains("line 4"), "{err}");

        let version = r#"{"format_version": 9, "n": 3, "k": 3, "mode": "set", "colors": [0, 1, 2]}"#;
        assert!(ColoringDocument::parse(version).is_err());

        let range = r#"{"format_version": 1, "n": 3, "k": 2, "mode": "set", "colors": [0, 1, 2]}"#;
        assert!(ColoringDocument::parse(range).is_err());
    }
}
