//! File formats: the wall JSON schema, complex reports and CSV tables.

use std::io::Write;

use serde::{Deserialize, Serialize};
use wallkit_core::colouring::{Homology, IntegerChainComplex};
use wallkit_core::poset::{elements, mask_of};
use wallkit_core::wall::Wall;

use crate::CliError;

/// A wall as stored on disk. Elements and brick indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WallJson {
    pub ground: usize,
    pub bricks: Vec<Vec<usize>>,
    #[serde(default)]
    pub relations: Vec<[usize; 2]>,
}

impl WallJson {
    /// Canonical form with the full closed relation.
    pub fn from_wall(w: &Wall) -> Self {
        let c = w.canonical_form();
        WallJson {
            ground: c.ground(),
            bricks: c.bricks().iter().map(|&b| elements(b)).collect(),
            relations: c.order().pairs().into_iter().map(|(a, b)| [a + 1, b + 1]).collect(),
        }
    }

    /// Closes the relations, validates and canonicalizes.
    pub fn to_wall(&self) -> Result<Wall, CliError> {
        let n = self.ground;
        let mut bricks = Vec::with_capacity(self.bricks.len());
        for (i, b) in self.bricks.iter().enumerate() {
            if let Some(&x) = b.iter().find(|&&x| x == 0 || x > n) {
                return Err(CliError::Schema(format!("brick {} has element {x} outside 1..={n}", i + 1)));
            }
            bricks.push(mask_of(b));
        }
        let r = bricks.len();
        let mut pairs = Vec::with_capacity(self.relations.len());
        for &[a, b] in &self.relations {
            if a == 0 || b == 0 || a > r || b > r {
                return Err(CliError::Schema(format!("relation [{a},{b}] names a brick outside 1..={r}")));
            }
            pairs.push((a - 1, b - 1));
        }
        Ok(Wall::from_relations(n, &bricks, &pairs)?)
    }
}

pub fn parse_wall(text: &str) -> Result<Wall, CliError> {
    let j: WallJson = serde_json::from_str(text).map_err(|e| CliError::Schema(e.to_string()))?;
    j.to_wall()
}

pub fn wall_to_json(w: &Wall) -> String {
    serde_json::to_string(&WallJson::from_wall(w)).expect("wall serializes")
}

/// Complex report. Homology fields appear only when they were computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexReport {
    pub wall: WallJson,
    pub graded_counts: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub betti: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub torsion: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub d_squared_zero: Option<bool>,
    pub euler: i64,
}

impl ComplexReport {
    pub fn new(w: &Wall, cx: &IntegerChainComplex) -> Self {
        ComplexReport {
            wall: WallJson::from_wall(w),
            graded_counts: cx.graded_counts(),
            betti: None,
            torsion: None,
            d_squared_zero: None,
            euler: cx.euler(),
        }
    }

    pub fn with_homology(mut self, h: &[Homology]) -> Self {
        self.betti = Some(h.iter().map(|x| x.betti).collect());
        self.torsion = Some(h.iter().map(|x| x.torsion.iter().map(|t| t.to_string()).collect()).collect());
        self
    }
}

/// Writes a CSV table with a header row and LF line endings.
pub fn write_csv<W: Write>(out: W, header: &[&str], rows: &[Vec<String>]) -> Result<(), CliError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(header).map_err(|e| CliError::Io(e.to_string()))?;
    for r in rows {
        w.write_record(r).map_err(|e| CliError::Io(e.to_string()))?;
    }
    w.flush().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(())
}

/// Bricks as space-separated elements joined by `|`, e.g. `1 2|3 4`.
pub fn bricks_field(w: &Wall) -> String {
    w.bricks().iter().map(|&b| elements(b).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>().join("|")
}

/// Closed relation as 1-based `a<b` pairs separated by spaces.
pub fn relations_field(w: &Wall) -> String {
    w.order().pairs().iter().map(|&(a, b)| format!("{}<{}", a + 1, b + 1)).collect::<Vec<_>>().join(" ")
}
