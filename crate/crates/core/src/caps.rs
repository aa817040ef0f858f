use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Size limits shared by every module. Exceeding one is an error (or, inside
/// the harness, a visible skip), never a silent truncation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest ring order accepted by the ring-spec parser.
    pub ring_order: u64,
    /// Largest ring order any element-enumerating routine will scan.
    pub brute_order: u64,
    /// Largest vertex count a graph builder will produce.
    pub graph_vertices: usize,
    /// Largest vertex count accepted by the isomorphism search.
    pub iso_vertices: usize,
    /// Ring-order limits for the heavier per-ring theorem checks.
    pub torsion_order: u64,
    pub total_order: u64,
    pub subring_order: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            ring_order: 1 << 40,
            brute_order: 5000,
            graph_vertices: 4096,
            iso_vertices: 64,
            torsion_order: 1000,
            total_order: 1000,
            subring_order: 1000,
        }
    }
}

impl Caps {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("ring_order", self.ring_order),
            ("brute_order", self.brute_order),
            ("graph_vertices", self.graph_vertices as u64),
            ("iso_vertices", self.iso_vertices as u64),
            ("torsion_order", self.torsion_order),
            ("total_order", self.total_order),
            ("subring_order", self.subring_order),
        ];
        for (name, v) in fields {
            if v == 0 {
                return Err(Error::Config(format!("cap `{name}` must be positive")));
            }
        }
        Ok(())
    }

    pub(crate) fn check_brute(&self, order: u64) -> Result<()> {
        if order > self.brute_order {
            return Err(Error::cap("ring order", order, self.brute_order));
        }
        Ok(())
    }

    pub(crate) fn check_vertices(&self, n: u64) -> Result<()> {
        if n > self.graph_vertices as u64 {
            return Err(Error::cap("vertex count", n, self.graph_vertices as u64));
        }
        Ok(())
    }
}
