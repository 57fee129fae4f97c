//! Maximal-partition encodings: a trivalent pants graph whose vertices
//! are pants (triples of slots) and whose edges are partition curves.
//!
//! Supported graphs are trees of pants plus self-loop handle curves;
//! every hyperbolic signature admits such a partition (the chain preset
//! builds one), but partition graphs with a cycle through distinct pants
//! are rejected.

use crate::error::Error;
use crate::triangle::{Nu, Signature, SignatureType};
use crate::Result;
use serde::{Deserialize, Serialize};

/// One slot of a pants: a marked point of the signature (0-based index
/// into the ramification list) or an endpoint of a partition curve
/// (0-based curve index).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Slot {
    #[serde(rename = "point")]
    Point(usize),
    #[serde(rename = "curve")]
    Curve(usize),
}

/// A pants decomposition: `2p-2+n` pants with three slots each, and one
/// optional orientation bit per curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionGraph {
    pub pants: Vec<[Slot; 3]>,
    #[serde(default)]
    pub orientation: Vec<bool>,
}

/// Validated structural data for an assembly.
#[derive(Debug, Clone)]
pub(crate) struct PartitionInfo {
    pub curve_count: usize,
    /// Curve id → the two (pants, slot) endpoints, in listing order.
    pub endpoints: Vec<Vec<(usize, usize)>>,
    /// Curve ids that are handles (both endpoints on one pants).
    pub loops: Vec<usize>,
    pub root: usize,
    /// pants → (parent pants, parent slot, curve id); `None` for the root.
    pub parent: Vec<Option<(usize, usize, usize)>>,
    /// BFS order from the root.
    pub order: Vec<usize>,
}

impl PartitionGraph {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("partition JSON: {}", e)))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("partition serializes")
    }

    /// The genus-2 three-curve partition: two pants each carrying a
    /// handle, joined by one separating curve. Curve order is
    /// (first handle, joining curve, second handle).
    pub fn preset_genus2() -> Self {
        PartitionGraph {
            pants: vec![
                [Slot::Curve(0), Slot::Curve(0), Slot::Curve(1)],
                [Slot::Curve(1), Slot::Curve(2), Slot::Curve(2)],
            ],
            orientation: vec![false; 3],
        }
    }

    /// A deterministic chain/caterpillar partition for any hyperbolic
    /// signature with `3p-3+n > 0`: a spine of plain pants carrying the
    /// marked points, with `p` handle pants hanging off the tail.
    pub fn preset_chain(sig: &Signature) -> Result<Self> {
        if sig.signature_type() != SignatureType::Hyperbolic {
            return Err(Error::UnsupportedSignature(format!(
                "{} is not hyperbolic",
                sig
            )));
        }
        if sig.dim() <= 0 {
            return Err(Error::UnsupportedSignature(format!(
                "{} has no maximal partition (3p-3+n must be positive)",
                sig
            )));
        }
        let p = sig.genus as usize;
        let n = sig.n();

        if p == 1 && n == 1 {
            return Ok(PartitionGraph {
                pants: vec![[Slot::Curve(0), Slot::Curve(0), Slot::Point(0)]],
                orientation: vec![false],
            });
        }
        if p == 2 && n == 0 {
            return Ok(Self::preset_genus2());
        }

        // Spine of m = p + n - 2 plain pants (m ≥ 1 here), joined by
        // curves 0..m-2 laid out as [prev, spare, next]; the spine's
        // m + 2 spare slots take the n points first, then p branches,
        // each branch curve leading to a handle pants.
        let m = p + n - 2;
        let mut pants: Vec<Vec<Slot>> = Vec::new();
        let mut next_curve = 0usize;
        let spine_edges: Vec<usize> = (0..m.saturating_sub(1))
            .map(|_| {
                let c = next_curve;
                next_curve += 1;
                c
            })
            .collect();
        for k in 0..m {
            let mut slots = Vec::new();
            if k > 0 {
                slots.push(Slot::Curve(spine_edges[k - 1]));
            }
            slots.push(Slot::Point(usize::MAX)); // spare, filled below
            if k == 0 {
                slots.push(Slot::Point(usize::MAX));
            }
            if k + 1 < m {
                slots.push(Slot::Curve(spine_edges[k]));
            } else {
                slots.push(Slot::Point(usize::MAX));
            }
            pants.push(slots);
        }
        // fill spare slots: points first, then handle branches
        let mut fills: Vec<Slot> = (0..n).map(Slot::Point).collect();
        let mut handle_pants = Vec::new();
        for _ in 0..p {
            let branch = next_curve;
            let handle = next_curve + 1;
            next_curve += 2;
            fills.push(Slot::Curve(branch));
            handle_pants.push([Slot::Curve(handle), Slot::Curve(handle), Slot::Curve(branch)]);
        }
        let mut fill_iter = fills.into_iter();
        for slots in pants.iter_mut() {
            for s in slots.iter_mut() {
                if *s == Slot::Point(usize::MAX) {
                    *s = fill_iter.next().expect("spare slot count matches");
                }
            }
        }
        assert!(fill_iter.next().is_none(), "all fills consumed");
        let mut all: Vec<[Slot; 3]> = pants
            .into_iter()
            .map(|v| [v[0], v[1], v[2]])
            .collect();
        all.extend(handle_pants);
        Ok(PartitionGraph {
            pants: all,
            orientation: vec![false; next_curve],
        })
    }

    /// Resolves a preset name or falls through to JSON parsing of a file's
    /// contents elsewhere. Recognized: `chain`, `genus2` / `fig3`.
    pub fn preset(name: &str, sig: &Signature) -> Result<Self> {
        match name {
            "chain" => Self::preset_chain(sig),
            "genus2" | "fig3" => {
                if sig.is_type(2, 0) {
                    Ok(Self::preset_genus2())
                } else {
                    Err(Error::BadPartition(format!(
                        "preset {} applies to signature (2,0), got {}",
                        name, sig
                    )))
                }
            }
            other => Err(Error::BadPartition(format!("unknown preset {:?}", other))),
        }
    }

    /// Structural validation against a signature. Checks trivalence,
    /// slot counts, point/curve multiplicity, tree-plus-handles shape,
    /// connectivity, and handle count = genus.
    pub(crate) fn validate(&self, sig: &Signature) -> Result<PartitionInfo> {
        let p = sig.genus as i64;
        let n = sig.n() as i64;
        let pants_want = 2 * p - 2 + n;
        let curves_want = 3 * p - 3 + n;
        if curves_want <= 0 {
            return Err(Error::BadPartition(format!(
                "{} admits no maximal partition",
                sig
            )));
        }
        if self.pants.len() as i64 != pants_want {
            return Err(Error::BadPartition(format!(
                "expected {} pants for {}, got {}",
                pants_want,
                sig,
                self.pants.len()
            )));
        }
        let curve_count = curves_want as usize;
        if !self.orientation.is_empty() && self.orientation.len() != curve_count {
            return Err(Error::BadPartition(format!(
                "orientation list must have one bit per curve ({}), got {}",
                curve_count,
                self.orientation.len()
            )));
        }

        let mut endpoints: Vec<Vec<(usize, usize)>> = vec![Vec::new(); curve_count];
        let mut point_seen = vec![false; sig.n()];
        for (k, slots) in self.pants.iter().enumerate() {
            for (s, slot) in slots.iter().enumerate() {
                match slot {
                    Slot::Point(j) => {
                        if *j >= sig.n() {
                            return Err(Error::BadPartition(format!(
                                "point index {} out of range for {}",
                                j, sig
                            )));
                        }
                        if point_seen[*j] {
                            return Err(Error::BadPartition(format!(
                                "point {} appears more than once",
                                j
                            )));
                        }
                        point_seen[*j] = true;
                    }
                    Slot::Curve(ci) => {
                        if *ci >= curve_count {
                            return Err(Error::BadPartition(format!(
                                "curve index {} out of range (expected < {})",
                                ci, curve_count
                            )));
                        }
                        endpoints[*ci].push((k, s));
                    }
                }
            }
        }
        if let Some(j) = point_seen.iter().position(|b| !b) {
            return Err(Error::BadPartition(format!("point {} never placed", j)));
        }
        for (ci, eps) in endpoints.iter().enumerate() {
            if eps.len() != 2 {
                return Err(Error::BadPartition(format!(
                    "curve {} has {} endpoints, expected 2",
                    ci,
                    eps.len()
                )));
            }
        }

        let loops: Vec<usize> = (0..curve_count)
            .filter(|ci| endpoints[*ci][0].0 == endpoints[*ci][1].0)
            .collect();
        if loops.len() as i64 != p {
            return Err(Error::BadPartition(format!(
                "{} handle curves found; genus {} requires exactly {}",
                loops.len(),
                p,
                p
            )));
        }

        // Non-loop curves must form a spanning tree of the pants graph.
        let tree_edges: Vec<usize> = (0..curve_count)
            .filter(|ci| !loops.contains(ci))
            .collect();
        if tree_edges.len() + 1 != self.pants.len() {
            return Err(Error::BadPartition(
                "partition graph has a cycle through distinct pants; only tree-plus-handles \
                 partitions are supported"
                    .to_string(),
            ));
        }

        // Root: first pants that is not an order-2 pair block.
        let is_22 = |k: usize| {
            let mut twos = 0;
            for slot in &self.pants[k] {
                if let Slot::Point(j) = slot {
                    if sig.nu[*j] == Nu::Finite(2) {
                        twos += 1;
                    }
                }
            }
            twos == 2
        };
        let root = (0..self.pants.len())
            .find(|k| !is_22(*k))
            .ok_or_else(|| {
                Error::BadPartition("every pants is an order-2 pair block".to_string())
            })?;

        // BFS over tree edges.
        let mut parent: Vec<Option<(usize, usize, usize)>> = vec![None; self.pants.len()];
        let mut seen = vec![false; self.pants.len()];
        let mut order = vec![root];
        seen[root] = true;
        let mut head = 0;
        while head < order.len() {
            let k = order[head];
            head += 1;
            for &ci in &tree_edges {
                let [(p0, s0), (p1, s1)] = [endpoints[ci][0], endpoints[ci][1]];
                let (other, pslot) = if p0 == k {
                    (p1, s0)
                } else if p1 == k {
                    (p0, s1)
                } else {
                    continue;
                };
                if !seen[other] {
                    seen[other] = true;
                    parent[other] = Some((k, pslot, ci));
                    order.push(other);
                }
            }
        }
        if order.len() != self.pants.len() {
            return Err(Error::BadPartition(
                "partition graph is not connected".to_string(),
            ));
        }

        // A handle pants cannot also carry two tree edges (slot budget).
        for &ci in &loops {
            let k = endpoints[ci][0].0;
            if endpoints[ci][0].1 == endpoints[ci][1].1 {
                return Err(Error::BadPartition(format!(
                    "handle curve {} repeats one slot",
                    ci
                )));
            }
            if is_22(k) {
                return Err(Error::BadPartition(format!(
                    "pants {} cannot carry both a handle and an order-2 pair",
                    k
                )));
            }
        }

        Ok(PartitionInfo {
            curve_count,
            endpoints,
            loops,
            root,
            parent,
            order,
        })
    }
}
