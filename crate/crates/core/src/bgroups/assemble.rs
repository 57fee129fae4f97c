//! Iterated assembly of a terminal regular b-group from triangle-group
//! blocks over a pants partition.
//!
//! Every pants is realized as the standard block `⟨z+2, B⟩` anchored at
//! `(∞,0,1)`, carried into place by a frame map. The three cuffs of the
//! standard block are the images of `z+2` under the cuff frames
//! (identity, `z ↦ -2/((1+q)z)`, `z ↦ 1 - 2/((1+q)z)`), a child block is
//! glued across a curve with coordinate α by the translate `z ↦ α−z` in
//! the cuff frame, and a handle curve on a block contributes the
//! conjugator `C = [[iτ, iσ],[i/σ, 0]]`, `σ = √(2/(1+q))`, which realizes
//! `C·B⁻¹·C⁻¹ = A` inside that block.
//!
//! The emitted generator list has exactly `2p + n` entries: one pair
//! `(Aᵢ, Cᵢ)` per handle curve and one element `Eⱼ` per marked point.

use super::partition::{PartitionGraph, PartitionInfo, Slot};
use super::{build_0_4, build_1_1, coordinate_bounds_1_1, gluing_involution};
use crate::error::Error;
use crate::marked::{MarkedBGroup, Word};
use crate::moebius::{Cplx, ExtComplex, MoebiusMap};
use crate::triangle::{std_canonical_pair, Nu, Signature, SignatureType};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Role {
    A,
    B,
    Third,
}

const ROLES: [Role; 3] = [Role::A, Role::B, Role::Third];

#[derive(Debug, Clone)]
struct Block {
    /// role → slot index in the pants listing
    role_slot: [usize; 3],
    /// local signature entries at roles (A, B, Third)
    nu: [Nu; 3],
    loop_curve: Option<usize>,
    is_root: bool,
}

impl Block {
    fn role_of_slot(&self, slot: usize) -> Role {
        for (r, s) in ROLES.iter().zip(self.role_slot.iter()) {
            if *s == slot {
                return *r;
            }
        }
        unreachable!("slot indices are a permutation of 0..3")
    }

    fn nu_at(&self, role: Role) -> Nu {
        self.nu[role as usize]
    }
}

/// The frame carrying `z+2` onto the block's cuff element at `role`.
fn local_cuff_frame(block: &Block, role: Role) -> Result<MoebiusMap> {
    match role {
        Role::A => Ok(MoebiusMap::identity()),
        Role::B => {
            let q = block.nu_at(Role::Third).q();
            MoebiusMap::from_reals(0.0, -2.0, 1.0 + q, 0.0)
        }
        Role::Third => {
            let q = block.nu_at(Role::B).q();
            MoebiusMap::from_reals(1.0 + q, -2.0, 1.0 + q, 0.0)
        }
    }
}

fn assign_roles(
    pants: &[Slot; 3],
    sig: &Signature,
    loop_curve: Option<usize>,
    attach_slot: Option<usize>,
    is_root: bool,
) -> Result<Block> {
    let value = |slot: &Slot| -> Nu {
        match slot {
            Slot::Curve(_) => Nu::Infinity,
            Slot::Point(j) => sig.nu[*j],
        }
    };
    let role_slot: [usize; 3] = if let Some(ci) = loop_curve {
        let mut loop_slots = Vec::new();
        let mut rest = Vec::new();
        for (s, slot) in pants.iter().enumerate() {
            if *slot == Slot::Curve(ci) {
                loop_slots.push(s);
            } else {
                rest.push(s);
            }
        }
        [loop_slots[0], loop_slots[1], rest[0]]
    } else {
        let a = match attach_slot {
            Some(s) => s,
            None => pants
                .iter()
                .position(|s| matches!(s, Slot::Curve(_)))
                .ok_or_else(|| {
                    Error::BadPartition("root pants carries no curve".to_string())
                })?,
        };
        let rest: Vec<usize> = (0..3).filter(|s| *s != a).collect();
        // a marked point takes the middle slot before a continuing curve
        let (b, t) = match (
            matches!(pants[rest[0]], Slot::Point(_)),
            matches!(pants[rest[1]], Slot::Point(_)),
        ) {
            (false, true) => (rest[1], rest[0]),
            _ => (rest[0], rest[1]),
        };
        [a, b, t]
    };
    let nu = [
        value(&pants[role_slot[0]]),
        value(&pants[role_slot[1]]),
        value(&pants[role_slot[2]]),
    ];
    Ok(Block {
        role_slot,
        nu,
        loop_curve,
        is_root,
    })
}

struct Assembly<'a> {
    partition: &'a PartitionGraph,
    info: &'a PartitionInfo,
    blocks: Vec<Block>,
    frames: Vec<MoebiusMap>,
}

impl<'a> Assembly<'a> {
    fn loop_names(&self, k: usize) -> (String, String) {
        let ci = self.blocks[k].loop_curve.expect("loop pants");
        (format!("A{}", ci + 1), format!("C{}", ci + 1))
    }

    fn local_pair(&self, k: usize) -> Result<(MoebiusMap, MoebiusMap)> {
        std_canonical_pair(&self.blocks[k].nu)
    }

    /// Word for the block-k cuff/marked element sitting at `role`.
    fn expr(&self, k: usize, role: Role) -> Word {
        let block = &self.blocks[k];
        let slot = block.role_slot[role as usize];
        match self.partition.pants[k][slot] {
            Slot::Point(j) => Word::new(vec![(&format!("E{}", j + 1), 1)]),
            Slot::Curve(ci) => {
                if block.loop_curve == Some(ci) {
                    let (a, c) = self.loop_names(k);
                    let s = if block.is_root { 1 } else { -1 };
                    match role {
                        Role::A => Word::new(vec![(&a, s)]),
                        Role::B => Word::new(vec![(&c, -1), (&a, -s), (&c, 1)]),
                        Role::Third => unreachable!("loop occupies roles A and B"),
                    }
                } else if let Some((pp, pslot, pci)) = self.info.parent[k] {
                    if pci == ci {
                        // the edge up to the parent
                        let prole = self.blocks[pp].role_of_slot(pslot);
                        self.parent_expr(pp, prole).inverse()
                    } else {
                        self.child_at(k, ci)
                    }
                } else {
                    self.child_at(k, ci)
                }
            }
        }
    }

    fn child_at(&self, k: usize, ci: usize) -> Word {
        // the edge goes down to a child block
        let child = self
            .info
            .parent
            .iter()
            .position(|p| matches!(p, Some((pp, _, pci)) if *pp == k && *pci == ci))
            .expect("tree edge has a child side");
        self.glued_expr(child).inverse()
    }

    /// Word for the parent-side cuff element of the edge at (k, role).
    fn parent_expr(&self, k: usize, role: Role) -> Word {
        match role {
            Role::A => self
                .expr(k, Role::B)
                .concat(&self.expr(k, Role::Third))
                .inverse(),
            Role::B => self
                .expr(k, Role::A)
                .inverse()
                .concat(&self.expr(k, Role::Third).inverse()),
            Role::Third => self
                .expr(k, Role::B)
                .inverse()
                .concat(&self.expr(k, Role::A).inverse()),
        }
    }

    /// Word for the child-side glued element (the inverse of the parent
    /// cuff), expressed from the child's subtree.
    fn glued_expr(&self, child: usize) -> Word {
        if self.blocks[child].loop_curve.is_some() {
            // attaches through its third cuff
            self.expr(child, Role::B)
                .inverse()
                .concat(&self.expr(child, Role::A).inverse())
        } else {
            self.expr(child, Role::B)
                .concat(&self.expr(child, Role::Third))
                .inverse()
        }
    }
}

/// Assembles the terminal regular b-group for a hyperbolic signature, a
/// pants partition, and one horocyclic coordinate per curve.
///
/// Type `(0,4)` and `(1,1;ν)` inputs delegate to [`build_0_4`] /
/// [`build_1_1`]. The general path emits one `(Aᵢ, Cᵢ)` pair per handle
/// curve and one marked-point element `Eⱼ` per signature slot, one
/// relation per tree curve (the two sides' expressions for the shared
/// accidental parabolic) plus the torsion relations, and per-curve
/// certification warnings aggregated from the one-dimensional bounds.
pub fn assemble(
    sig: &Signature,
    partition: &PartitionGraph,
    coords: &[Cplx],
) -> Result<MarkedBGroup> {
    if sig.signature_type() != SignatureType::Hyperbolic {
        return Err(Error::UnsupportedSignature(format!(
            "{} is not hyperbolic",
            sig
        )));
    }
    let dim = sig.dim();
    if dim <= 0 {
        return Err(Error::UnsupportedSignature(format!(
            "{} has no moduli (3p-3+n must be positive)",
            sig
        )));
    }
    if coords.len() != dim as usize {
        return Err(Error::DimensionMismatch {
            expected: dim as usize,
            got: coords.len(),
        });
    }
    for (i, z) in coords.iter().enumerate() {
        if z.im <= 0.0 {
            return Err(Error::NonPositiveImaginary(format!(
                "coordinate {} = {}",
                i, z
            )));
        }
    }
    let info = partition.validate(sig)?;

    // one-dimensional cases keep their dedicated constructions
    if sig.is_type(1, 1) {
        return build_1_1(sig.nu[0], coords[0]);
    }
    if sig.is_type(0, 4) {
        return assemble_0_4(sig, partition, &info, coords[0]);
    }

    let mut warnings = Vec::new();
    if partition.orientation.iter().any(|b| *b) {
        warnings.push(
            "orientation bits are recorded but only applied to (0,4) side selection".to_string(),
        );
    }

    let blocks = analyze(sig, partition, &info)?;

    // frames, in BFS order
    let mut frames: Vec<MoebiusMap> = vec![MoebiusMap::identity(); partition.pants.len()];
    for &k in &info.order {
        if let Some((pp, pslot, ci)) = info.parent[k] {
            let prole = blocks[pp].role_of_slot(pslot);
            let f_parent = frames[pp].compose(&local_cuff_frame(&blocks[pp], prole)?);
            let attach_role = if blocks[k].loop_curve.is_some() {
                Role::Third
            } else {
                Role::A
            };
            let f_child = local_cuff_frame(&blocks[k], attach_role)?;
            frames[k] = f_parent
                .compose(&gluing_involution(coords[ci]))
                .compose(&f_child.inverse());
        }
    }

    let asm = Assembly {
        partition,
        info: &info,
        blocks,
        frames,
    };

    // generators
    let mut generators: Vec<(String, MoebiusMap)> = Vec::new();
    let mut accidental = Vec::new();
    for &k in &info.order {
        let block = &asm.blocks[k];
        let w = &asm.frames[k];
        let (a_l, b_l) = asm.local_pair(k)?;
        if let Some(ci) = block.loop_curve {
            let q = block.nu_at(Role::Third).q();
            let sigma = (2.0 / (1.0 + q)).sqrt();
            let i = Cplx::i();
            let c_l = MoebiusMap::new(
                i * coords[ci],
                i * sigma,
                i / sigma,
                Cplx::new(0.0, 0.0),
            )?;
            let a_img = if block.is_root {
                a_l.conjugate_by(w)
            } else {
                a_l.inverse().conjugate_by(w)
            };
            let (a_name, c_name) = asm.loop_names(k);
            accidental.push(a_name.clone());
            generators.push((a_name, a_img));
            generators.push((c_name, c_l.conjugate_by(w)));
        }
        for role in [Role::B, Role::Third] {
            let slot = block.role_slot[role as usize];
            if let Slot::Point(j) = asm.partition.pants[k][slot] {
                let elt = match role {
                    Role::B => b_l,
                    Role::Third => a_l.compose(&b_l).inverse(),
                    Role::A => unreachable!(),
                };
                generators.push((format!("E{}", j + 1), elt.conjugate_by(w)));
            }
        }
    }
    debug_assert_eq!(
        generators.len() as i64,
        2 * sig.genus as i64 + sig.n() as i64
    );

    // relations: one per tree curve, then torsion
    let mut relations = Vec::new();
    for &k in &info.order {
        if let Some((pp, pslot, _ci)) = info.parent[k] {
            let prole = asm.blocks[pp].role_of_slot(pslot);
            relations.push(asm.parent_expr(pp, prole).concat(&asm.glued_expr(k)));
        }
    }
    for (j, nu) in sig.nu.iter().enumerate() {
        if let Nu::Finite(q) = nu {
            relations.push(Word::new(vec![(&format!("E{}", j + 1), *q as i64)]));
        }
    }

    // per-curve bounds → warnings
    let bounds = curve_bounds_from(&info, &asm.blocks, partition);
    for (ci, b) in bounds.iter().enumerate() {
        let im = coords[ci].im;
        // the tail family certifies down to the axis; its warning level
        // is the exclusion-side bound instead
        let level = if b.y1 > 0.0 { b.y1 } else { b.y2 };
        if im <= level {
            warnings.push(format!(
                "curve {}: Im = {} is not above the bound {}; combination not certified",
                ci, im, level
            ));
        }
    }

    Ok(MarkedBGroup {
        signature: sig.clone(),
        generators,
        relations,
        accidental_parabolics: accidental,
        coordinates: coords.to_vec(),
        partition_label: format!(
            "{} pants, {} curves ({} handles), root {}",
            partition.pants.len(),
            info.curve_count,
            info.loops.len(),
            info.root
        ),
        warnings,
        anchors: vec![
            ("a".to_string(), ExtComplex::Infinity),
            ("b".to_string(), ExtComplex::finite(0.0, 0.0)),
            ("c".to_string(), ExtComplex::finite(1.0, 0.0)),
        ],
    })
}

/// Role assignment for every pants of a validated partition.
fn analyze(
    sig: &Signature,
    partition: &PartitionGraph,
    info: &PartitionInfo,
) -> Result<Vec<Block>> {
    let mut blocks: Vec<Option<Block>> = vec![None; partition.pants.len()];
    for &k in &info.order {
        let loop_curve = info.loops.iter().copied().find(|ci| {
            partition.pants[k]
                .iter()
                .filter(|s| **s == Slot::Curve(*ci))
                .count()
                == 2
        });
        let attach_slot = info.parent[k].map(|(_, _, pci)| {
            partition.pants[k]
                .iter()
                .position(|s| *s == Slot::Curve(pci))
                .expect("child slot of the parent edge")
        });
        blocks[k] = Some(assign_roles(
            &partition.pants[k],
            sig,
            loop_curve,
            attach_slot,
            info.parent[k].is_none(),
        )?);
    }
    Ok(blocks.into_iter().map(|b| b.expect("assigned")).collect())
}

fn curve_bounds_from(
    info: &PartitionInfo,
    blocks: &[Block],
    partition: &PartitionGraph,
) -> Vec<super::CoordinateBounds> {
    let side_sum = |k: usize, skip_ci: usize| -> f64 {
        let block = &blocks[k];
        ROLES
            .iter()
            .filter(|r| {
                let slot = block.role_slot[**r as usize];
                partition.pants[k][slot] != Slot::Curve(skip_ci)
            })
            .map(|r| block.nu_at(*r).q())
            .sum()
    };
    (0..info.curve_count)
        .map(|ci| {
            if info.loops.contains(&ci) {
                return coordinate_bounds_1_1();
            }
            let [(p0, _), (p1, _)] = [info.endpoints[ci][0], info.endpoints[ci][1]];
            let s0 = side_sum(p0, ci);
            let s1 = side_sum(p1, ci);
            let (sp, sc) = if s0 >= s1 { (s0, s1) } else { (s1, s0) };
            if sc == 0.0 {
                // order-2 pair side: inclusion certified to the axis,
                // exclusion at the other side's bound
                super::CoordinateBounds { y1: 0.0, y2: 1.0 / sp }
            } else {
                super::CoordinateBounds {
                    y1: 1.0 / sp + 1.0 / sc,
                    y2: (1.0 / sp).max(1.0 / sc),
                }
            }
        })
        .collect()
}

/// Inner/outer imaginary-part bounds per partition curve: handle curves
/// get `(2, 0)`, separating curves the two-sided reciprocal sums, and
/// curves with an order-2 pair on one side the `(0, 1/(q+q'))` tail
/// convention.
pub fn curve_bounds(
    sig: &Signature,
    partition: &PartitionGraph,
) -> Result<Vec<super::CoordinateBounds>> {
    if sig.signature_type() != SignatureType::Hyperbolic {
        return Err(Error::UnsupportedSignature(format!(
            "{} is not hyperbolic",
            sig
        )));
    }
    let info = partition.validate(sig)?;
    let blocks = analyze(sig, partition, &info)?;
    Ok(curve_bounds_from(&info, &blocks, partition))
}

fn assemble_0_4(
    sig: &Signature,
    partition: &PartitionGraph,
    info: &PartitionInfo,
    alpha: Cplx,
) -> Result<MarkedBGroup> {
    let root = info.root;
    let other = 1 - root;
    let leaves = |k: usize| -> Vec<Nu> {
        partition.pants[k]
            .iter()
            .filter_map(|s| match s {
                Slot::Point(j) => Some(sig.nu[*j]),
                Slot::Curve(_) => None,
            })
            .collect()
    };
    let (mut first, mut second) = (leaves(root), leaves(other));
    if partition.orientation.first().copied().unwrap_or(false) {
        std::mem::swap(&mut first, &mut second);
    }
    if first.len() != 2 || second.len() != 2 {
        return Err(Error::BadPartition(
            "(0,4) partition must place two points on each side".to_string(),
        ));
    }
    build_0_4(&[first[0], first[1], second[0], second[1]], alpha)
}
