//! Categorical overlaps of Boolean frames: pullbacks, gluing isomorphisms
//! on overlap images, cocycle laws, and the pullback universal property.
//!
//! The pullback carrier of two frames with a common target is the set of
//! element pairs with equal images, carrying componentwise Boolean structure.
//! For injective frames the right projection is invertible on its image, and
//! the gluing map re-coordinatizes one frame's copy of the overlap into the
//! other's.

use crate::boolean::BoolHom;
use crate::frames::BooleanFrame;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GluingError {
    #[error("frames have different targets")]
    TargetMismatch,
    #[error("gluing needs injective frames")]
    NotInjective,
    #[error("outer square does not commute at element {0}")]
    SquareNotCommuting(u32),
    #[error("test cone homomorphisms are ill-typed")]
    IllTyped,
}

/// The pullback of two frames over their common target: pairs (b, b') with
/// equal images, closed under componentwise operations.
#[derive(Clone, Debug)]
pub struct PullbackAlgebra {
    pub left: BooleanFrame,
    pub right: BooleanFrame,
    /// Sorted pairs (element of left source, element of right source).
    pub carrier: Vec<(u32, u32)>,
}

impl PullbackAlgebra {
    pub fn contains(&self, pair: (u32, u32)) -> bool {
        self.carrier.binary_search(&pair).is_ok()
    }

    /// Image of the carrier under the left projection.
    pub fn left_image(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.carrier.iter().map(|&(b, _)| b).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn right_image(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.carrier.iter().map(|&(_, b)| b).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Image in the target lattice (through either projection-then-frame;
    /// the two routes agree by construction).
    pub fn image_in_target(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .carrier
            .iter()
            .map(|&(b, _)| self.left.apply(b))
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Componentwise closure and distributivity of the carrier.
    pub fn verify_boolean(&self) -> bool {
        let bl = self.left.source();
        let br = self.right.source();
        let top = (bl.top(), br.top());
        if !self.contains((0, 0)) || !self.contains(top) {
            return false;
        }
        for &(a, b) in &self.carrier {
            if !self.contains((bl.complement(a), br.complement(b))) {
                return false;
            }
            for &(c, d) in &self.carrier {
                if !self.contains((a | c, b | d)) || !self.contains((a & c, b & d)) {
                    return false;
                }
            }
        }
        // distributivity is inherited from the product algebra; check anyway
        for &(a, b) in &self.carrier {
            for &(c, d) in &self.carrier {
                for &(e, f) in &self.carrier {
                    let lhs = (a & (c | e), b & (d | f));
                    let rhs = ((a & c) | (a & e), (b & d) | (b & f));
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Compute the pullback of two frames with common target.
pub fn pullback(left: &BooleanFrame, right: &BooleanFrame) -> Result<PullbackAlgebra, GluingError> {
    if left.target() != right.target() {
        return Err(GluingError::TargetMismatch);
    }
    let mut carrier = Vec::new();
    for b in left.source().elements() {
        let x = left.apply(b);
        for c in right.source().elements() {
            if right.apply(c) == x {
                carrier.push((b, c));
            }
        }
    }
    carrier.sort_unstable();
    Ok(PullbackAlgebra {
        left: left.clone(),
        right: right.clone(),
        carrier,
    })
}

/// For injective frames: does the pullback's image in the target equal the
/// intersection of the two frame images?
pub fn check_intersection(left: &BooleanFrame, right: &BooleanFrame) -> Result<bool, GluingError> {
    if !left.is_injective() || !right.is_injective() {
        return Err(GluingError::NotInjective);
    }
    let pb = pullback(left, right)?;
    let mut expected: Vec<usize> = left
        .image()
        .into_iter()
        .filter(|x| right.image().contains(x))
        .collect();
    expected.sort_unstable();
    Ok(pb.image_in_target() == expected)
}

/// The gluing isomorphism between the two overlap images, as an explicit
/// bijection from the right frame's coordinates to the left frame's.
#[derive(Clone, Debug, Serialize)]
pub struct GluingIso {
    /// Elements of the right source algebra in the overlap image.
    pub domain: Vec<u32>,
    /// `map[i]` is the left-source element matching `domain[i]`.
    pub map: Vec<u32>,
}

impl GluingIso {
    pub fn apply(&self, x: u32) -> Option<u32> {
        self.domain
            .iter()
            .position(|&d| d == x)
            .map(|i| self.map[i])
    }

    pub fn codomain(&self) -> Vec<u32> {
        let mut v = self.map.clone();
        v.sort_unstable();
        v
    }

    pub fn is_identity_on_domain(&self) -> bool {
        self.domain == self.map
    }
}

/// Build the gluing isomorphism of two injective frames: left projection
/// composed with the inverse of the right projection, restricted to the
/// pullback images. Bijectivity and structure preservation are verified.
pub fn gluing_iso(left: &BooleanFrame, right: &BooleanFrame) -> Result<GluingIso, GluingError> {
    if !left.is_injective() || !right.is_injective() {
        return Err(GluingError::NotInjective);
    }
    let pb = pullback(left, right)?;
    let domain = pb.right_image();
    let map: Vec<u32> = domain
        .iter()
        .map(|&c| {
            let &(b, _) = pb
                .carrier
                .iter()
                .find(|&&(_, c2)| c2 == c)
                .expect("domain comes from the carrier");
            b
        })
        .collect();
    // injectivity of the left frame makes the pairing single-valued
    for (i, &c) in domain.iter().enumerate() {
        for &(b, c2) in &pb.carrier {
            if c2 == c {
                assert_eq!(b, map[i], "right projection not invertible");
            }
        }
    }
    let iso = GluingIso { domain, map };
    // structure preservation on the overlap
    let bl = left.source();
    let br = right.source();
    for &x in &iso.domain {
        for &y in &iso.domain {
            let fx = iso.apply(x).unwrap();
            let fy = iso.apply(y).unwrap();
            if iso.domain.contains(&(x | y)) {
                assert_eq!(iso.apply(x | y), Some(fx | fy));
            }
            if iso.domain.contains(&(x & y)) {
                assert_eq!(iso.apply(x & y), Some(fx & fy));
            }
        }
        if iso.domain.contains(&br.complement(x)) {
            let fx = iso.apply(x).unwrap();
            assert_eq!(iso.apply(br.complement(x)), Some(bl.complement(fx)));
        }
    }
    Ok(iso)
}

/// Outcome of the cocycle suite over a family of injective frames.
#[derive(Clone, Debug, Serialize)]
pub struct CocycleReport {
    pub identity_law: bool,
    pub symmetry_law: bool,
    pub triangle_law: bool,
    pub pairs_examined: usize,
    pub triples_examined: usize,
    pub witnesses: Vec<String>,
}

impl CocycleReport {
    pub fn holds(&self) -> bool {
        self.identity_law && self.symmetry_law && self.triangle_law
    }
}

/// Check the three cocycle laws over all pairs and triples of the family:
/// self-gluing is the identity, the two directions of a pair are mutually
/// inverse, and gluing composes along triple overlaps. The triple law is
/// checked wherever both sides are defined; the trivial overlap {0, 1} is
/// included since every frame is unital.
pub fn verify_cocycles(frames: &[BooleanFrame]) -> Result<CocycleReport, GluingError> {
    for f in frames {
        if !f.is_injective() {
            return Err(GluingError::NotInjective);
        }
    }
    for f in frames.iter().skip(1) {
        if f.target() != frames[0].target() {
            return Err(GluingError::TargetMismatch);
        }
    }
    let n = frames.len();
    let mut report = CocycleReport {
        identity_law: true,
        symmetry_law: true,
        triangle_law: true,
        pairs_examined: 0,
        triples_examined: 0,
        witnesses: Vec::new(),
    };

    let mut iso = vec![vec![None; n]; n];
    for i in 0..n {
        for j in 0..n {
            iso[i][j] = Some(gluing_iso(&frames[i], &frames[j])?);
        }
    }

    for (i, row) in iso.iter().enumerate() {
        let om = row[i].as_ref().unwrap();
        if !om.is_identity_on_domain() {
            report.identity_law = false;
            report
                .witnesses
                .push(format!("self-gluing of frame {i} is not the identity"));
        }
    }

    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            report.pairs_examined += 1;
            let fwd = iso[i][j].as_ref().unwrap();
            let bwd = iso[j][i].as_ref().unwrap();
            let inverse_ok = fwd
                .domain
                .iter()
                .all(|&x| fwd.apply(x).and_then(|y| bwd.apply(y)) == Some(x))
                && bwd
                    .domain
                    .iter()
                    .all(|&y| bwd.apply(y).and_then(|x| fwd.apply(x)) == Some(y));
            if !inverse_ok {
                report.symmetry_law = false;
                report.witnesses.push(format!(
                    "gluing of frames ({i},{j}) is not inverse to ({j},{i})"
                ));
            }
        }
    }

    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i == j || j == k || i == k {
                    continue;
                }
                report.triples_examined += 1;
                let jk = iso[j][k].as_ref().unwrap();
                let ij = iso[i][j].as_ref().unwrap();
                let ik = iso[i][k].as_ref().unwrap();
                for &x in &jk.domain {
                    let via = jk.apply(x).and_then(|y| ij.apply(y));
                    let direct = ik.apply(x);
                    if let (Some(v), Some(d)) = (via, direct) {
                        if v != d {
                            report.triangle_law = false;
                            report.witnesses.push(format!(
                                "triangle fails on frames ({i},{j},{k}) at element {x}"
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Verify the universal property of a pullback against a test cone
/// (h: B'' -> left source, g: B'' -> right source): the outer square must
/// commute, and exactly one mediating map into the carrier exists.
pub fn verify_pullback_universality(
    pb: &PullbackAlgebra,
    h: &BoolHom,
    g: &BoolHom,
) -> Result<bool, GluingError> {
    if h.cod != *pb.left.source() || g.cod != *pb.right.source() || h.dom != g.dom {
        return Err(GluingError::IllTyped);
    }
    for x in h.dom.elements() {
        if pb.left.apply(h.apply(x)) != pb.right.apply(g.apply(x)) {
            return Err(GluingError::SquareNotCommuting(x));
        }
    }
    // the mediating map is forced: u(x) = (h(x), g(x)); check it lands in the
    // carrier and that no other carrier element shares its projections
    for x in h.dom.elements() {
        let pair = (h.apply(x), g.apply(x));
        if !pb.contains(pair) {
            return Ok(false);
        }
        let extras = pb
            .carrier
            .iter()
            .filter(|&&(b, c)| b == pair.0 && c == pair.1)
            .count();
        if extras != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::block::BlockScenario;
    use crate::boolean::BooleanAlgebra;
    use crate::frames::{enumerate_blocks, enumerate_frames, BooleanFrame};
    use crate::lattice::FiniteOml;
    use crate::pasting::{scenario_orthoposet, PastedScenario};
    use std::sync::Arc;

    fn mo2() -> Arc<FiniteOml> {
        let s = BlockScenario::parse("atoms a a' b b'\nblock a a'\nblock b b'\n").unwrap();
        match scenario_orthoposet(&s).unwrap() {
            PastedScenario::Lattice { oml, .. } => Arc::new(oml),
            _ => panic!(),
        }
    }

    #[test]
    fn pullback_of_the_two_mo2_blocks_is_trivial() {
        let l = mo2();
        let blocks = enumerate_blocks(&l);
        let pb = pullback(&blocks[0].injection, &blocks[1].injection).unwrap();
        // images overlap only in {0, 1}
        assert_eq!(pb.carrier.len(), 2);
        assert!(pb.verify_boolean());
        assert_eq!(pb.image_in_target(), vec![l.zero(), l.one()]);
    }

    #[test]
    fn pullback_of_a_frame_with_itself_is_the_diagonal() {
        let l = mo2();
        let blocks = enumerate_blocks(&l);
        let f = &blocks[0].injection;
        let pb = pullback(f, f).unwrap();
        let diag: Vec<(u32, u32)> = f.source().elements().map(|x| (x, x)).collect();
        assert_eq!(pb.carrier, diag);
    }

    #[test]
    fn noninjective_pullback_collects_kernel_pairs() {
        let l = mo2();
        let b4 = BooleanAlgebra::with_atom_count(2).unwrap();
        // p -> 0, q -> 1: image {0, 1}
        let degenerate = BooleanFrame::new(b4, Arc::clone(&l), vec![l.zero(), l.one()]).unwrap();
        let b2 = BooleanAlgebra::with_atom_count(1).unwrap();
        let unit = enumerate_frames(&b2, &l).remove(0);
        let pb = pullback(&degenerate, &unit).unwrap();
        // every degenerate element pairs with the matching {0,1} element
        assert_eq!(pb.carrier.len(), 4);
        assert!(pb.verify_boolean());
        assert!(pb.image_in_target() == vec![l.zero(), l.one()]);
    }

    #[test]
    fn intersection_property_on_mo2_blocks() {
        let l = mo2();
        let blocks = enumerate_blocks(&l);
        assert!(check_intersection(&blocks[0].injection, &blocks[1].injection).unwrap());
        assert!(check_intersection(&blocks[0].injection, &blocks[0].injection).unwrap());
    }

    #[test]
    fn gluing_between_mo2_blocks_is_trivial_identity() {
        let l = mo2();
        let blocks = enumerate_blocks(&l);
        let iso = gluing_iso(&blocks[0].injection, &blocks[1].injection).unwrap();
        let b = blocks[1].injection.source();
        assert_eq!(iso.domain, vec![0, b.top()]);
        assert_eq!(iso.map, vec![0, blocks[0].injection.source().top()]);
    }

    #[test]
    fn gluing_of_nested_subalgebras_recoordinatizes_elementwise() {
        // C = {0, p1, p1', 1} inside B_8: the gluing map carries each
        // C-coordinate to the B_8-coordinate with the same lattice image
        let l = Arc::new(BooleanAlgebra::with_atom_count(3).unwrap().as_oml());
        let subs = crate::frames::enumerate_boolean_subalgebras(&l);
        let big = subs.iter().find(|s| s.atoms.len() == 3).unwrap();
        let small = subs.iter().find(|s| s.atoms.len() == 2).unwrap();
        let iso = gluing_iso(&big.injection, &small.injection).unwrap();
        // the whole of C is in the overlap
        assert_eq!(iso.domain.len(), small.algebra.size());
        for (&c, &b) in iso.domain.iter().zip(iso.map.iter()) {
            assert_eq!(small.injection.apply(c), big.injection.apply(b));
        }
    }

    #[test]
    fn gluing_rejects_noninjective_input() {
        let l = mo2();
        let b4 = BooleanAlgebra::with_atom_count(2).unwrap();
        let degenerate = BooleanFrame::new(b4, Arc::clone(&l), vec![l.zero(), l.one()]).unwrap();
        let blocks = enumerate_blocks(&l);
        assert_eq!(
            gluing_iso(&degenerate, &blocks[0].injection).unwrap_err(),
            GluingError::NotInjective
        );
    }

    #[test]
    fn cocycles_hold_for_mo2_block_family() {
        let l = mo2();
        let frames: Vec<BooleanFrame> = enumerate_blocks(&l)
            .into_iter()
            .map(|b| b.injection)
            .collect();
        let rep = verify_cocycles(&frames).unwrap();
        assert!(rep.holds(), "{:?}", rep.witnesses);
    }

    #[test]
    fn single_frame_family_is_vacuous_beyond_identity() {
        let l = mo2();
        let f = enumerate_blocks(&l).remove(0).injection;
        let rep = verify_cocycles(&[f]).unwrap();
        assert!(rep.holds());
        assert_eq!(rep.pairs_examined, 0);
        assert_eq!(rep.triples_examined, 0);
    }

    #[test]
    fn universality_of_the_b2_cone() {
        let l = mo2();
        let blocks = enumerate_blocks(&l);
        let pb = pullback(&blocks[0].injection, &blocks[1].injection).unwrap();
        let b2 = BooleanAlgebra::with_atom_count(1).unwrap();
        let h = crate::boolean::BoolHom::enumerate(&b2, blocks[0].injection.source()).remove(0);
        let g = crate::boolean::BoolHom::enumerate(&b2, blocks[1].injection.source()).remove(0);
        assert!(verify_pullback_universality(&pb, &h, &g).unwrap());
    }

    #[test]
    fn universality_rejects_noncommuting_square() {
        let l = mo2();
        let blocks = enumerate_blocks(&l);
        let pb = pullback(&blocks[0].injection, &blocks[0].injection).unwrap();
        let b = blocks[0].injection.source().clone();
        let id = crate::boolean::BoolHom::identity(&b);
        // swap the two atoms: the square through distinct block atoms fails
        let swap = crate::boolean::BoolHom::new(b.clone(), b.clone(), vec![0b10, 0b01]).unwrap();
        let err = verify_pullback_universality(&pb, &id, &swap).unwrap_err();
        assert!(matches!(err, GluingError::SquareNotCommuting(_)));
    }
}
