//! Ramified torus covers of rectangle complexes.
//!
//! A surface covers a torus exactly when its horizontal and vertical period
//! groups are both discrete; the covering torus is then `C / Gamma` with
//! `Gamma = gH Z + i gV Z`, the covering map is the developing map taken
//! modulo `Gamma`, and its degree is `area / (gH gV)`. Non-discreteness is
//! certified by a pair of incommensurable generators.

use crate::field::{rational_gcd, Quad, Rational};
use crate::surface::{InternalInconsistency, Side, ValidatedSurface};
use num_traits::Signed;

/// Outcome of testing a finitely generated subgroup of the reals for
/// discreteness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscretenessVerdict {
    pub discrete: bool,
    /// Positive generator of the group; absent when the group is trivial or
    /// non-discrete.
    pub generator: Option<Quad>,
    /// A pair of generators with no rational ratio; present exactly when
    /// the group is non-discrete.
    pub witness: Option<(Quad, Quad)>,
}

impl DiscretenessVerdict {
    pub fn is_trivial(&self) -> bool {
        self.discrete && self.generator.is_none()
    }
}

/// Decides discreteness of the subgroup of `R` generated by `gens`.
///
/// Zeros are dropped; every remaining generator must be a rational multiple
/// of the first, and the group generator is then the gcd of those ratios
/// times the first generator. A single incommensurable pair certifies
/// non-discreteness.
pub fn discreteness(gens: &[Quad]) -> DiscretenessVerdict {
    let nonzero: Vec<&Quad> = gens.iter().filter(|g| !g.is_zero()).collect();
    let Some(first) = nonzero.first() else {
        return DiscretenessVerdict {
            discrete: true,
            generator: None,
            witness: None,
        };
    };
    let mut gcd = Rational::from_integer(0.into());
    for g in &nonzero {
        match g
            .rational_ratio(first)
            .expect("first generator is nonzero")
        {
            None => {
                return DiscretenessVerdict {
                    discrete: false,
                    generator: None,
                    witness: Some(((*g).clone(), (*first).clone())),
                };
            }
            Some(r) => {
                gcd = rational_gcd(&gcd, &r.abs());
            }
        }
    }
    let generator = (*first * &Quad::from_rational(gcd)).abs();
    DiscretenessVerdict {
        discrete: true,
        generator: Some(generator),
        witness: None,
    }
}

/// The rectangular lattice `Gamma = gH Z + i gV Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    pub g_h: Quad,
    pub g_v: Quad,
}

impl Lattice {
    pub fn covolume(&self) -> Quad {
        &self.g_h * &self.g_v
    }
}

/// A point of the covering torus, reduced into `[0, gH) x [0, gV)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TorusPoint {
    pub x: Quad,
    pub y: Quad,
}

/// The covering data of a surface over its torus `C / Gamma`.
#[derive(Debug, Clone)]
pub struct CoveringDescription {
    pub lattice: Lattice,
    pub degree: u64,
    /// Singular vertex classes with their local degrees (the cone
    /// multiples); regular classes are omitted.
    pub ramification: Vec<(usize, u32)>,
    /// Index of the rectangle whose bottom-left corner anchors the
    /// developing map at 0.
    pub base_rect: usize,
    /// Global position of each rectangle's bottom-left corner under the
    /// developing map (before reduction mod Gamma).
    placements: Vec<(Quad, Quad)>,
}

/// Why a surface is not a ramified covering of a torus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotACover {
    /// Two horizontal periods with no rational ratio.
    IncommensurableHorizontal(Quad, Quad),
    /// Two vertical periods with no rational ratio.
    IncommensurableVertical(Quad, Quad),
    /// A period group is trivial; only degenerate complexes do this.
    Degenerate { horizontal: bool },
}

impl NotACover {
    pub fn witness(&self) -> Option<(&Quad, &Quad)> {
        match self {
            NotACover::IncommensurableHorizontal(a, b)
            | NotACover::IncommensurableVertical(a, b) => Some((a, b)),
            NotACover::Degenerate { .. } => None,
        }
    }
}

#[derive(Debug, Clone)]
pub enum CoverDecision {
    Cover(CoveringDescription),
    NotACover(NotACover),
}

impl CoverDecision {
    pub fn as_cover(&self) -> Option<&CoveringDescription> {
        match self {
            CoverDecision::Cover(c) => Some(c),
            CoverDecision::NotACover(_) => None,
        }
    }
}

/// Errors from point queries against a covering.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PointError {
    #[error("rectangle index {0} out of range")]
    NoSuchRectangle(usize),
    #[error("point ({x}, {y}) lies outside its rectangle")]
    PointOutsideRectangle { x: String, y: String },
}

/// Theorem-A decision: extracts period generators, tests both directions
/// for discreteness, and builds the covering description or the
/// incommensurability witness.
pub fn decide_torus_cover(
    surface: &ValidatedSurface,
) -> Result<CoverDecision, InternalInconsistency> {
    let periods = surface.period_group();
    let horizontal = discreteness(&periods.horizontal());
    if let Some(w) = &horizontal.witness {
        return Ok(CoverDecision::NotACover(NotACover::IncommensurableHorizontal(
            w.0.clone(),
            w.1.clone(),
        )));
    }
    let vertical = discreteness(&periods.vertical());
    if let Some(w) = &vertical.witness {
        return Ok(CoverDecision::NotACover(NotACover::IncommensurableVertical(
            w.0.clone(),
            w.1.clone(),
        )));
    }
    let Some(g_h) = horizontal.generator else {
        return Ok(CoverDecision::NotACover(NotACover::Degenerate { horizontal: true }));
    };
    let Some(g_v) = vertical.generator else {
        return Ok(CoverDecision::NotACover(NotACover::Degenerate { horizontal: false }));
    };
    let lattice = Lattice { g_h, g_v };

    let degree_exact = surface
        .area()
        .checked_div(&lattice.covolume())
        .expect("covolume is positive");
    let degree = match degree_exact.as_rational() {
        Some(r) if r.is_integer() && r.is_positive() => {
            let n = r.to_integer();
            u64::try_from(n).map_err(|_| InternalInconsistency {
                detail: format!("covering degree {degree_exact} out of range"),
            })?
        }
        _ => {
            return Err(InternalInconsistency {
                detail: format!("covering degree {degree_exact} is not a positive integer"),
            });
        }
    };

    let ramification: Vec<(usize, u32)> = surface
        .vertex_census()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.is_singular())
        .map(|(i, c)| (i, c.cone_multiple))
        .collect();
    let rh: i64 = ramification.iter().map(|&(_, n)| i64::from(n) - 1).sum();
    let genus = surface.invariants()?.genus;
    if rh != 2 * genus - 2 {
        return Err(InternalInconsistency {
            detail: format!("Riemann-Hurwitz failure: sum(n_i - 1) = {rh}, 2g - 2 = {}", 2 * genus - 2),
        });
    }

    Ok(CoverDecision::Cover(CoveringDescription {
        lattice,
        degree,
        ramification,
        base_rect: 0,
        placements: placements(surface),
    }))
}

/// Develops every rectangle into the plane along a spanning tree of
/// gluings, anchored at rectangle 0's bottom-left corner.
fn placements(surface: &ValidatedSurface) -> Vec<(Quad, Quad)> {
    let n = surface.rectangles().len();
    let mut place: Vec<Option<(Quad, Quad)>> = vec![None; n];
    place[0] = Some((Quad::zero(), Quad::zero()));
    let mut stack = vec![0usize];
    while let Some(r) = stack.pop() {
        let base = place[r].clone().unwrap();
        for g in surface.gluings() {
            for (ours, theirs) in [(&g.from, &g.to), (&g.to, &g.from)] {
                if ours.rect != r || place[theirs.rect].is_some() {
                    continue;
                }
                // The two segments are the same points of the surface;
                // equate their global placements to place the partner.
                let rect = &surface.rectangles()[r];
                let partner_rect = &surface.rectangles()[theirs.rect];
                let (dx, dy) = match ours.side {
                    Side::Top => (
                        &ours.start - &theirs.start,
                        rect.height.clone(),
                    ),
                    Side::Bottom => (
                        &ours.start - &theirs.start,
                        -partner_rect.height.clone(),
                    ),
                    Side::Right => (
                        rect.width.clone(),
                        &ours.start - &theirs.start,
                    ),
                    Side::Left => (
                        -partner_rect.width.clone(),
                        &ours.start - &theirs.start,
                    ),
                };
                place[theirs.rect] = Some((&base.0 + &dx, &base.1 + &dy));
                stack.push(theirs.rect);
            }
        }
    }
    place
        .into_iter()
        .map(|p| p.expect("validated surface is connected"))
        .collect()
}

impl CoveringDescription {
    /// Developing-map image of a point given inside a rectangle, reduced
    /// modulo `Gamma` into the fundamental domain.
    pub fn develop(
        &self,
        surface: &ValidatedSurface,
        rect: usize,
        x: &Quad,
        y: &Quad,
    ) -> Result<TorusPoint, PointError> {
        let r = surface
            .rectangles()
            .get(rect)
            .ok_or(PointError::NoSuchRectangle(rect))?;
        if x.is_negative()
            || y.is_negative()
            || (x - &r.width).is_positive()
            || (y - &r.height).is_positive()
        {
            return Err(PointError::PointOutsideRectangle {
                x: x.to_string(),
                y: y.to_string(),
            });
        }
        let (px, py) = &self.placements[rect];
        Ok(TorusPoint {
            x: (px + x).rem_euclid(&self.lattice.g_h),
            y: (py + y).rem_euclid(&self.lattice.g_v),
        })
    }

    /// Counts the fiber of the covering map over a torus point by
    /// enumerating, per rectangle, the lattice translates that land inside
    /// it, then identifying boundary points.
    ///
    /// Equals the degree at generic points and drops by `n - 1` for each
    /// cone point of local degree `n` in the fiber.
    pub fn fiber_count(&self, surface: &ValidatedSurface, t: &TorusPoint) -> u64 {
        let tx = t.x.rem_euclid(&self.lattice.g_h);
        let ty = t.y.rem_euclid(&self.lattice.g_v);
        let mut seen = std::collections::HashSet::new();
        for (r, rect) in surface.rectangles().iter().enumerate() {
            let (px, py) = &self.placements[r];
            // Solve x = tx - px (mod gH) with x in [0, w]; same vertically.
            let xs = residues_in_range(&(&tx - px), &self.lattice.g_h, &rect.width);
            let ys = residues_in_range(&(&ty - py), &self.lattice.g_v, &rect.height);
            for x in &xs {
                for y in &ys {
                    seen.insert(surface.canonical_point_key(r, x, y));
                }
            }
        }
        seen.len() as u64
    }

    /// Global developing-map position of a rectangle's bottom-left corner.
    pub fn placement(&self, rect: usize) -> &(Quad, Quad) {
        &self.placements[rect]
    }
}

/// All representatives of `v` modulo a positive modulus inside `[0, limit]`.
fn residues_in_range(v: &Quad, modulus: &Quad, limit: &Quad) -> Vec<Quad> {
    let mut out = Vec::new();
    let mut x = v.rem_euclid(modulus);
    while (&x - limit).signum() <= 0 {
        out.push(x.clone());
        x = &x + modulus;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, QuadField};
    use crate::samples;

    fn qr(p: i64, q: i64) -> Quad {
        Quad::from_rational(rat(p, q))
    }

    fn sqrt5() -> Quad {
        Quad::new(rat(0, 1), rat(1, 1), QuadField::new(5).unwrap())
    }

    #[test]
    fn discreteness_rational_gcd() {
        let v = discreteness(&[Quad::one(), qr(1, 2), qr(1, 3)]);
        assert!(v.discrete);
        assert_eq!(v.generator, Some(qr(1, 6)));
        assert!(v.witness.is_none());
    }

    #[test]
    fn discreteness_irrational_witness() {
        let s2 = Quad::new(rat(0, 1), rat(1, 1), QuadField::new(2).unwrap());
        let v = discreteness(&[Quad::one(), s2.clone()]);
        assert!(!v.discrete);
        assert_eq!(v.witness, Some((s2, Quad::one())));
        assert!(v.generator.is_none());
    }

    #[test]
    fn discreteness_trivial_groups() {
        for gens in [vec![], vec![Quad::zero()]] {
            let v = discreteness(&gens);
            assert!(v.discrete);
            assert!(v.is_trivial());
            assert!(v.witness.is_none());
        }
    }

    #[test]
    fn discreteness_negative_generators() {
        let v = discreteness(&[qr(-2, 3), qr(1, 2)]);
        assert!(v.discrete);
        assert_eq!(v.generator, Some(qr(1, 6)));
    }

    #[test]
    fn square_torus_covers_with_degree_one() {
        let s = samples::square_torus();
        let d = decide_torus_cover(&s).unwrap();
        let c = d.as_cover().expect("square torus covers itself");
        assert_eq!(c.lattice, Lattice { g_h: Quad::one(), g_v: Quad::one() });
        assert_eq!(c.degree, 1);
        assert!(c.ramification.is_empty());
    }

    #[test]
    fn three_square_l_covers_with_degree_three() {
        let s = samples::three_square_l();
        let d = decide_torus_cover(&s).unwrap();
        let c = d.as_cover().expect("L covers the unit torus");
        assert_eq!(c.lattice, Lattice { g_h: Quad::one(), g_v: Quad::one() });
        assert_eq!(c.degree, 3);
        assert_eq!(c.ramification.len(), 1);
        assert_eq!(c.ramification[0].1, 3);
    }

    #[test]
    fn golden_l_is_not_a_cover() {
        let s = samples::golden_l();
        let d = decide_torus_cover(&s).unwrap();
        match d {
            CoverDecision::NotACover(NotACover::IncommensurableHorizontal(a, b)) => {
                // First generator is phi - 1, the next wrap contributes 1;
                // the failed ratio 1 / (phi - 1) is phi itself.
                assert_eq!(a, Quad::one());
                assert_eq!(b, &samples::phi() - &Quad::one());
                let ratio = a.checked_div(&b).unwrap();
                assert_eq!(ratio, samples::phi());
                assert_eq!(a.rational_ratio(&b).unwrap(), None);
            }
            other => panic!("expected horizontal incommensurability, got {other:?}"),
        }
    }

    #[test]
    fn develop_examples() {
        let s = samples::square_torus();
        let c = decide_torus_cover(&s).unwrap().as_cover().unwrap().clone();
        let p = c.develop(&s, 0, &qr(1, 2), &qr(1, 2)).unwrap();
        assert_eq!(p, TorusPoint { x: qr(1, 2), y: qr(1, 2) });

        let l = samples::three_square_l();
        let cl = decide_torus_cover(&l).unwrap().as_cover().unwrap().clone();
        // s10 sits at (1, 0): the point (1/4, 1/4) inside it develops to
        // (5/4, 1/4) = (1/4, 1/4) mod Z + iZ.
        let s10 = l.rect_index("s10").unwrap();
        let p = cl.develop(&l, s10, &qr(1, 4), &qr(1, 4)).unwrap();
        assert_eq!(p, TorusPoint { x: qr(1, 4), y: qr(1, 4) });
        // Every corner representative of the cone point develops to 0.
        for m in &l.vertex_census()[0].members {
            let p = cl.develop(&l, m.rect, &m.x, &m.y).unwrap();
            assert_eq!(p, TorusPoint { x: Quad::zero(), y: Quad::zero() });
        }
    }

    #[test]
    fn develop_rejects_outside_points() {
        let s = samples::square_torus();
        let c = decide_torus_cover(&s).unwrap().as_cover().unwrap().clone();
        assert!(matches!(
            c.develop(&s, 0, &qr(3, 2), &qr(1, 2)),
            Err(PointError::PointOutsideRectangle { .. })
        ));
        assert!(matches!(
            c.develop(&s, 5, &qr(1, 2), &qr(1, 2)),
            Err(PointError::NoSuchRectangle(5))
        ));
    }

    #[test]
    fn develop_agrees_across_gluings() {
        // A point on a glued segment develops to the same torus point from
        // either incident rectangle.
        let l = samples::three_square_l();
        let c = decide_torus_cover(&l).unwrap().as_cover().unwrap().clone();
        for g in l.gluings() {
            // Midpoint of the glued segment, in both representations.
            let mid_from = &(&g.from.start + &g.from.end) / &Quad::from_int(2);
            let mid_to = &(&g.to.start + &g.to.end) / &Quad::from_int(2);
            let (fx, fy) = l.side_point(g.from.rect, g.from.side, &mid_from);
            let (tx, ty) = l.side_point(g.to.rect, g.to.side, &mid_to);
            let a = c.develop(&l, g.from.rect, &fx, &fy).unwrap();
            let b = c.develop(&l, g.to.rect, &tx, &ty).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn fiber_counts_on_three_square_l() {
        let l = samples::three_square_l();
        let c = decide_torus_cover(&l).unwrap().as_cover().unwrap().clone();
        assert_eq!(
            c.fiber_count(&l, &TorusPoint { x: qr(1, 3), y: qr(1, 3) }),
            3
        );
        // At the branch value the fiber drops to 3 - (3 - 1) = 1.
        assert_eq!(
            c.fiber_count(&l, &TorusPoint { x: Quad::zero(), y: Quad::zero() }),
            1
        );
        // Points on edges but away from vertices still count 3.
        assert_eq!(
            c.fiber_count(&l, &TorusPoint { x: qr(1, 3), y: Quad::zero() }),
            3
        );
    }

    #[test]
    fn fiber_count_square_torus_everywhere_one() {
        let s = samples::square_torus();
        let c = decide_torus_cover(&s).unwrap().as_cover().unwrap().clone();
        for (x, y) in [(qr(0, 1), qr(0, 1)), (qr(1, 2), qr(1, 3)), (qr(9, 10), qr(0, 1))] {
            assert_eq!(c.fiber_count(&s, &TorusPoint { x, y }), 1);
        }
    }

    #[test]
    fn rescaling_widths_rescales_g_h_only() {
        let mut rng = samples::SampleRng::new(42);
        let g = samples::random_grid_origami_described(&mut rng);
        let s = ValidatedSurface::validate(g.raw.clone()).unwrap();
        let c = decide_torus_cover(&s).unwrap().as_cover().unwrap().clone();
        // Scale every width by 3/2 (all columns, to keep lengths matched).
        let all: Vec<String> = s.rectangles().iter().map(|r| r.id.clone()).collect();
        let scaled = samples::scale_widths(&g.raw, &all, &qr(3, 2));
        let s2 = ValidatedSurface::validate(scaled).unwrap();
        let c2 = decide_torus_cover(&s2).unwrap().as_cover().unwrap().clone();
        assert_eq!(c2.lattice.g_h, &c.lattice.g_h * &qr(3, 2));
        assert_eq!(c2.lattice.g_v, c.lattice.g_v);
        assert_eq!(c2.degree, c.degree);
        assert_eq!(c2.ramification, c.ramification);
    }

    #[test]
    fn golden_scaled_grid_flips_verdict() {
        let mut rng = samples::SampleRng::new(17);
        for _ in 0..10 {
            let g = samples::random_grid_origami_described(&mut rng);
            let s = ValidatedSurface::validate(g.raw.clone()).unwrap();
            assert!(decide_torus_cover(&s).unwrap().as_cover().is_some());
            let scaled = samples::scale_widths(&g.raw, &g.first_column, &sqrt5());
            let s2 = ValidatedSurface::validate(scaled).unwrap();
            match decide_torus_cover(&s2).unwrap() {
                CoverDecision::NotACover(NotACover::IncommensurableHorizontal(..)) => {}
                other => panic!("expected horizontal incommensurability, got {other:?}"),
            }
        }
    }
}
