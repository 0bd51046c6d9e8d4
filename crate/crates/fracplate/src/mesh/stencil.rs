use super::{Axis, StructuredMesh};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PieceSide {
    Left,
    Right,
}

/// Part of one element covered by a horizon, on one side of the anchor.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StencilPiece {
    /// Element index along the stencil axis.
    pub element: usize,
    pub lo: f64,
    pub hi: f64,
    pub side: PieceSide,
}

/// Elements crossed by the 1D convolution line through an anchor.
#[derive(Clone, Debug, PartialEq)]
pub struct HorizonStencil {
    pub anchor: (f64, f64),
    pub axis: Axis,
    pub l_a: f64,
    pub l_b: f64,
    /// Element (along `axis`) containing the anchor.
    pub singular_element: usize,
    /// Other elements left of the anchor, nearest first.
    pub left_elements: Vec<usize>,
    /// Other elements right of the anchor, nearest first.
    pub right_elements: Vec<usize>,
    /// Covered segments, in increasing coordinate. The singular element
    /// contributes up to two pieces split at the anchor.
    pub pieces: Vec<StencilPiece>,
}

impl HorizonStencil {
    /// Anchor coordinate along the stencil axis.
    pub fn center(&self) -> f64 {
        match self.axis {
            Axis::X => self.anchor.0,
            Axis::Y => self.anchor.1,
        }
    }
}

/// Horizon of nominal length `l_f` through `anchor` along `axis`, truncated at the plate edges.
///
/// Every element meeting `[p − l_a, p + l_b]` in a set of positive length is listed.
pub fn horizon_stencil(
    anchor: (f64, f64),
    axis: Axis,
    l_f: f64,
    mesh: &StructuredMesh,
) -> Result<HorizonStencil> {
    let (x, y) = anchor;
    if !(x >= 0.0 && x <= mesh.l && y >= 0.0 && y <= mesh.b) {
        return Err(Error::Domain(format!("anchor ({x}, {y}) outside the plate")));
    }
    if !(l_f >= 0.0) {
        return Err(Error::Argument(format!("horizon {l_f}")));
    }
    let p = if axis == Axis::X { x } else { y };
    let (n, len) = mesh.axis_dims(axis);
    let h = mesh.element_size(axis);
    let l_a = l_f.min(p);
    let l_b = l_f.min(len - p);
    let (ks, _) = mesh.locate_1d(axis, p)?;
    let lo_edge = p - l_a;
    let hi_edge = p + l_b;
    let k0 = ((lo_edge / h).floor().max(0.0) as usize).min(n - 1);
    let k1 = ((hi_edge / h).floor().max(0.0) as usize).min(n - 1);
    let tiny = 1e-12 * h;
    let mut pieces = Vec::new();
    let mut left_elements = Vec::new();
    let mut right_elements = Vec::new();
    for k in k0..=k1 {
        let lo = mesh.coord(axis, k).max(lo_edge);
        let hi = mesh.coord(axis, k + 1).min(hi_edge);
        if hi - lo <= tiny {
            continue;
        }
        if k == ks {
            if p - lo > tiny {
                pieces.push(StencilPiece { element: k, lo, hi: p, side: PieceSide::Left });
            }
            if hi - p > tiny {
                pieces.push(StencilPiece { element: k, lo: p, hi, side: PieceSide::Right });
            }
        } else if hi <= p + tiny {
            pieces.push(StencilPiece { element: k, lo, hi: hi.min(p), side: PieceSide::Left });
            left_elements.push(k);
        } else {
            pieces.push(StencilPiece { element: k, lo: lo.max(p), hi, side: PieceSide::Right });
            right_elements.push(k);
        }
    }
    left_elements.reverse();
    Ok(HorizonStencil {
        anchor,
        axis,
        l_a,
        l_b,
        singular_element: ks,
        left_elements,
        right_elements,
        pieces,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interior_counts_at_rate_twelve() {
        let mesh = StructuredMesh::new(1.0, 1.0, 60, 60).unwrap();
        let (k, _) = mesh.locate_1d(Axis::X, 0.5).unwrap();
        let x = (k as f64 + 0.5 * (1.0 + 1.0 / 3f64.sqrt())) / 60.0;
        let s = horizon_stencil((x, 0.5), Axis::X, 0.2, &mesh).unwrap();
        assert_eq!((s.l_a, s.l_b), (0.2, 0.2));
        // singular element plus 12 more on each side (the last one partial)
        assert_eq!(s.left_elements.len(), 12);
        assert_eq!(s.right_elements.len(), 12);
        let covered: f64 = s.pieces.iter().map(|p| p.hi - p.lo).sum();
        assert!((covered - 0.4).abs() < 1e-14);
    }

    #[test]
    fn truncation_near_edge() {
        let mesh = StructuredMesh::new(1.0, 1.0, 20, 20).unwrap();
        let s = horizon_stencil((0.05, 0.3), Axis::X, 0.2, &mesh).unwrap();
        assert!((s.l_a - 0.05).abs() < 1e-15);
        assert_eq!(s.l_b, 0.2);
        assert!(horizon_stencil((1.5, 0.3), Axis::X, 0.2, &mesh).is_err());
    }
}
