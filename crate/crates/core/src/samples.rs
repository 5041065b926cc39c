//! Ready-made surfaces: the square torus, the three-square L, the golden L,
//! and a randomized family of grid-glued complexes with rational sides.
//!
//! The random generator uses a small self-contained splitmix64 stream so
//! that generated fixtures are identical on every platform and toolchain.

use crate::field::{rat, Quad, QuadField, Rational};
use crate::surface::{GluingSpec, RawSurface, Rectangle, SegmentSpec, Side, ValidatedSurface};

/// Deterministic pseudo-random stream (splitmix64).
pub struct SampleRng(u64);

impl SampleRng {
    pub fn new(seed: u64) -> Self {
        SampleRng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `0..n`.
    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    /// A small positive rational with numerator and denominator in `1..=4`.
    pub fn small_positive_rational(&mut self) -> Rational {
        rat((self.below(4) + 1) as i64, (self.below(4) + 1) as i64)
    }
}


fn full_side(rect: &str, side: Side, len: Quad) -> SegmentSpec {
    SegmentSpec {
        rect: rect.into(),
        side,
        start: Quad::zero(),
        end: len,
    }
}

fn glue(from: SegmentSpec, to: SegmentSpec) -> GluingSpec {
    GluingSpec { from, to }
}

fn seg(rect: &str, side: Side, start: Quad, end: Quad) -> SegmentSpec {
    SegmentSpec {
        rect: rect.into(),
        side,
        start,
        end,
    }
}

/// Unit square with opposite sides identified.
pub fn square_torus_raw() -> RawSurface {
    let one = Quad::one;
    RawSurface {
        field: None,
        rectangles: vec![Rectangle {
            id: "r0".into(),
            width: one(),
            height: one(),
        }],
        gluings: vec![
            glue(
                full_side("r0", Side::Top, one()),
                full_side("r0", Side::Bottom, one()),
            ),
            glue(
                full_side("r0", Side::Left, one()),
                full_side("r0", Side::Right, one()),
            ),
        ],
    }
}

pub fn square_torus() -> ValidatedSurface {
    ValidatedSurface::validate(square_torus_raw()).unwrap()
}

/// Two unit squares side by side forming a 2x1 flat torus.
pub fn two_square_flat_torus() -> ValidatedSurface {
    let one = Quad::one;
    let raw = RawSurface {
        field: None,
        rectangles: vec![
            Rectangle { id: "a".into(), width: one(), height: one() },
            Rectangle { id: "b".into(), width: one(), height: one() },
        ],
        gluings: vec![
            glue(full_side("a", Side::Top, one()), full_side("a", Side::Bottom, one())),
            glue(full_side("b", Side::Top, one()), full_side("b", Side::Bottom, one())),
            glue(full_side("a", Side::Right, one()), full_side("b", Side::Left, one())),
            glue(full_side("b", Side::Right, one()), full_side("a", Side::Left, one())),
        ],
    };
    ValidatedSurface::validate(raw).unwrap()
}

/// Three unit squares at positions (0,0), (1,0) and (0,1), outer boundary
/// glued by horizontal and vertical translations: genus 2, one cone point
/// of angle 6*pi, a degree-3 cover of the unit torus.
///
/// Gluing order matters to downstream fixtures: the two column wraps come
/// first (indices 1 and 2 carry the planar bottom boundary).
pub fn three_square_l_raw() -> RawSurface {
    let one = Quad::one;
    let unit = |id: &str| Rectangle {
        id: id.into(),
        width: one(),
        height: one(),
    };
    RawSurface {
        field: None,
        rectangles: vec![unit("s00"), unit("s10"), unit("s01")],
        gluings: vec![
            // 0: interior edge of the left column
            glue(full_side("s00", Side::Top, one()), full_side("s01", Side::Bottom, one())),
            // 1: left column wraps vertically
            glue(full_side("s01", Side::Top, one()), full_side("s00", Side::Bottom, one())),
            // 2: right column wraps vertically
            glue(full_side("s10", Side::Top, one()), full_side("s10", Side::Bottom, one())),
            // 3: interior edge of the bottom row
            glue(full_side("s00", Side::Right, one()), full_side("s10", Side::Left, one())),
            // 4: bottom row wraps horizontally
            glue(full_side("s10", Side::Right, one()), full_side("s00", Side::Left, one())),
            // 5: top row wraps horizontally
            glue(full_side("s01", Side::Right, one()), full_side("s01", Side::Left, one())),
        ],
    }
}

pub fn three_square_l() -> ValidatedSurface {
    ValidatedSurface::validate(three_square_l_raw()).unwrap()
}

/// The golden ratio phi = 1/2 + (1/2) sqrt5 in Q(sqrt5).
pub fn phi() -> Quad {
    Quad::new(rat(1, 2), rat(1, 2), QuadField::new(5).unwrap())
}

/// The golden L: a phi x 1 rectangle with a 1 x (phi - 1) rectangle stacked
/// on its left end, standard wrap identifications. Genus 2, area sqrt5,
/// periods generated by incommensurable pairs, hence never a torus cover.
///
/// The width-(phi-1) wrap is listed first so that it supplies the first
/// horizontal period generator.
pub fn golden_l_raw() -> RawSurface {
    let field = QuadField::new(5).unwrap();
    let one = Quad::one;
    let phi = phi();
    let phi_minus_1 = &phi - &one();
    RawSurface {
        field: Some(field),
        rectangles: vec![
            Rectangle { id: "wide".into(), width: phi.clone(), height: one() },
            Rectangle { id: "cap".into(), width: one(), height: phi_minus_1.clone() },
        ],
        gluings: vec![
            // 0: overhang of the wide rectangle wraps onto itself
            glue(
                seg("wide", Side::Top, one(), phi.clone()),
                seg("wide", Side::Bottom, one(), phi.clone()),
            ),
            // 1: cap sits on the left part of the wide rectangle
            glue(
                seg("wide", Side::Top, Quad::zero(), one()),
                full_side("cap", Side::Bottom, one()),
            ),
            // 2: left column wraps vertically
            glue(
                full_side("cap", Side::Top, one()),
                seg("wide", Side::Bottom, Quad::zero(), one()),
            ),
            // 3: bottom row wraps horizontally
            glue(
                full_side("wide", Side::Left, one()),
                full_side("wide", Side::Right, one()),
            ),
            // 4: cap row wraps horizontally
            glue(
                full_side("cap", Side::Left, phi_minus_1.clone()),
                full_side("cap", Side::Right, phi_minus_1),
            ),
        ],
    }
}

pub fn golden_l() -> ValidatedSurface {
    ValidatedSurface::validate(golden_l_raw()).unwrap()
}

/// A phi x 1 torus glued with an irrational horizontal twist: genus 1 but
/// the vertical first-return to a short transversal takes many crossings.
pub fn twisted_torus_raw() -> RawSurface {
    let field = QuadField::new(5).unwrap();
    let one = Quad::one;
    let phi = phi();
    let shift = &phi - &one(); // phi - 1, irrational in (0, 1)
    RawSurface {
        field: Some(field),
        rectangles: vec![Rectangle {
            id: "r".into(),
            width: phi.clone(),
            height: one(),
        }],
        gluings: vec![
            glue(
                seg("r", Side::Top, Quad::zero(), one()),
                seg("r", Side::Bottom, shift.clone(), phi.clone()),
            ),
            glue(
                seg("r", Side::Top, one(), phi),
                seg("r", Side::Bottom, Quad::zero(), shift),
            ),
            glue(full_side("r", Side::Left, one()), full_side("r", Side::Right, one())),
        ],
    }
}

/// An L from two rectangles: base (w1+w2) x h1 with a w1 x h2 cap over its
/// left part. Exercises subdivided sides; genus 2 with one 6*pi cone point.
pub fn l_shape_raw(w1: Quad, w2: Quad, h1: Quad, h2: Quad) -> RawSurface {
    let total_w = &w1 + &w2;
    RawSurface {
        field: None,
        rectangles: vec![
            Rectangle { id: "base".into(), width: total_w.clone(), height: h1.clone() },
            Rectangle { id: "cap".into(), width: w1.clone(), height: h2.clone() },
        ],
        gluings: vec![
            glue(
                seg("base", Side::Top, Quad::zero(), w1.clone()),
                full_side("cap", Side::Bottom, w1.clone()),
            ),
            glue(
                seg("base", Side::Top, w1.clone(), total_w.clone()),
                seg("base", Side::Bottom, w1.clone(), total_w.clone()),
            ),
            glue(
                full_side("cap", Side::Top, w1.clone()),
                seg("base", Side::Bottom, Quad::zero(), w1),
            ),
            glue(
                full_side("base", Side::Left, h1.clone()),
                full_side("base", Side::Right, h1),
            ),
            glue(
                full_side("cap", Side::Left, h2.clone()),
                full_side("cap", Side::Right, h2),
            ),
        ],
    }
}

/// Describes one generated grid complex: which rectangles form the first
/// column (the ones a width-rescaling test should touch).
pub struct GridOrigami {
    pub raw: RawSurface,
    pub first_column: Vec<String>,
}

/// A random connected complex of `rows x cols` rectangles (`rows`, `cols`
/// in `2..=3`), column widths and row heights small rationals. Rights glue
/// to lefts within a row under a permutation, tops to bottoms within a
/// column under a rotation; row 0 uses the identity so every column width
/// is itself a horizontal period.
pub fn random_grid_origami_described(rng: &mut SampleRng) -> GridOrigami {
    let rows = (2 + rng.below(2)) as usize;
    let cols = if rows == 3 { 2 } else { (2 + rng.below(2)) as usize };
    let widths: Vec<Quad> = (0..cols)
        .map(|_| Quad::from_rational(rng.small_positive_rational()))
        .collect();
    let heights: Vec<Quad> = (0..rows)
        .map(|_| Quad::from_rational(rng.small_positive_rational()))
        .collect();
    let name = |i: usize, j: usize| format!("r{i}c{j}");

    let mut rectangles = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            rectangles.push(Rectangle {
                id: name(i, j),
                width: widths[j].clone(),
                height: heights[i].clone(),
            });
        }
    }

    let mut gluings = Vec::new();
    // Vertical wraps: top of (i, j) to bottom of (i + shift_j, j); the shift
    // is coprime to the row count, so each column is one cycle.
    for j in 0..cols {
        let shift = 1 + (rng.below(rows as u64 - 1)) as usize; // 1..rows, coprime for rows in {2,3}
        for i in 0..rows {
            let target = (i + shift) % rows;
            gluings.push(glue(
                full_side(&name(i, j), Side::Top, widths[j].clone()),
                full_side(&name(target, j), Side::Bottom, widths[j].clone()),
            ));
        }
    }
    // Horizontal: row 0 identity, row 1 a full cycle (connects the columns),
    // further rows a random permutation.
    for i in 0..rows {
        let sigma: Vec<usize> = match i {
            0 => (0..cols).collect(),
            1 => (0..cols).map(|j| (j + 1) % cols).collect(),
            _ => {
                let mut p: Vec<usize> = (0..cols).collect();
                for k in (1..cols).rev() {
                    p.swap(k, rng.below(k as u64 + 1) as usize);
                }
                p
            }
        };
        for j in 0..cols {
            gluings.push(glue(
                full_side(&name(i, j), Side::Right, heights[i].clone()),
                full_side(&name(i, sigma[j]), Side::Left, heights[i].clone()),
            ));
        }
    }

    GridOrigami {
        raw: RawSurface {
            field: None,
            rectangles,
            gluings,
        },
        first_column: (0..rows).map(|i| name(i, 0)).collect(),
    }
}

pub fn random_grid_origami(rng: &mut SampleRng) -> RawSurface {
    random_grid_origami_described(rng).raw
}

/// Rescales the widths of the named rectangles by `factor`, adjusting the
/// offsets of their top/bottom gluing segments to match. Both halves of
/// every horizontal gluing must lie inside or outside the set.
pub fn scale_widths(raw: &RawSurface, rect_ids: &[String], factor: &Quad) -> RawSurface {
    let in_set = |id: &str| rect_ids.iter().any(|r| r == id);
    let mut out = raw.clone();
    for r in &mut out.rectangles {
        if in_set(&r.id) {
            r.width = &r.width * factor;
        }
    }
    for g in &mut out.gluings {
        for seg in [&mut g.from, &mut g.to] {
            if seg.side.is_horizontal() && in_set(&seg.rect) {
                seg.start = &seg.start * factor;
                seg.end = &seg.end * factor;
            }
        }
    }
    out
}
