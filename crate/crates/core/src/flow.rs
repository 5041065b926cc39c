//! North and east geodesic flow on a rectangle complex.
//!
//! The north flow moves straight up, crossing top-to-bottom gluings by
//! translation; the east flow is the same machinery run on the transposed
//! complex. `first_return` flows a transversal (a union of arcs on
//! horizontal edges) forward until every leaf comes back, producing an
//! interval exchange; `strip_decomposition` turns its pieces into maximal
//! flow rectangles and checks they exhaust the surface.

use crate::field::Quad;
use crate::surface::{IncidenceKind, Side, ValidatedSurface};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlowDirection {
    North,
    East,
}

/// A point given by a rectangle index and exact coordinates inside it
/// (boundary included).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowPoint {
    pub rect: usize,
    pub x: Quad,
    pub y: Quad,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceOutcome {
    Endpoint(FlowPoint),
    /// The trajectory meets a singular vertex after exactly this distance.
    HitSingularity { distance: Quad },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FlowError {
    #[error("point ({x}, {y}) lies outside rectangle {rect}")]
    PointOutsideRectangle { rect: usize, x: String, y: String },
    #[error("bad transversal: {0}")]
    BadTransversal(String),
    #[error("no return within the crossing budget for the leaf at transversal position {position}")]
    NoReturn { position: String },
    #[error("transversal is not a cross-section: strips cover area {covered} of {total}")]
    NotCrossSection { covered: String, total: String },
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// Follows the axis-parallel geodesic from `p` for exactly `distance`.
///
/// Regular vertices (cone angle `2 pi`) are flowed through; meeting a
/// singular vertex stops the trace with the exact distance travelled. A
/// trace that starts on a boundary point flows out of the given
/// representative's rectangle.
pub fn flow_trace(
    surface: &ValidatedSurface,
    p: &FlowPoint,
    direction: FlowDirection,
    distance: &Quad,
) -> Result<TraceOutcome, FlowError> {
    assert!(distance.signum() >= 0, "flow distance must be non-negative");
    match direction {
        FlowDirection::North => trace_north(surface, p, distance),
        FlowDirection::East => {
            let transposed = surface.transposed();
            let tp = FlowPoint {
                rect: p.rect,
                x: p.y.clone(),
                y: p.x.clone(),
            };
            Ok(match trace_north(&transposed, &tp, distance)? {
                TraceOutcome::HitSingularity { distance } => {
                    TraceOutcome::HitSingularity { distance }
                }
                TraceOutcome::Endpoint(q) => TraceOutcome::Endpoint(FlowPoint {
                    rect: q.rect,
                    x: q.y,
                    y: q.x,
                }),
            })
        }
    }
}

fn trace_north(
    surface: &ValidatedSurface,
    p: &FlowPoint,
    distance: &Quad,
) -> Result<TraceOutcome, FlowError> {
    let rects = surface.rectangles();
    let Some(rect) = rects.get(p.rect) else {
        return Err(FlowError::PointOutsideRectangle {
            rect: p.rect,
            x: p.x.to_string(),
            y: p.y.to_string(),
        });
    };
    if p.x.is_negative()
        || p.y.is_negative()
        || (&p.x - &rect.width).is_positive()
        || (&p.y - &rect.height).is_positive()
    {
        return Err(FlowError::PointOutsideRectangle {
            rect: p.rect,
            x: p.x.to_string(),
            y: p.y.to_string(),
        });
    }

    let mut r = p.rect;
    let mut x = p.x.clone();
    let mut y = p.y.clone();
    let mut consumed = Quad::zero();
    let mut remaining = distance.clone();
    loop {
        let w = rects[r].width.clone();
        let h = rects[r].height.clone();
        // Next event upward: a vertex on a ridden vertical side, or the top.
        let mut event_y = h.clone();
        let mut side_vertex = false;
        if x.is_zero() || x == w {
            let side = if x.is_zero() { Side::Left } else { Side::Right };
            for b in surface.side_breaks(r, side) {
                if (&b - &y).is_positive() && (&b - &h).is_negative() {
                    event_y = b;
                    side_vertex = true;
                    break;
                }
            }
        }
        let step = &event_y - &y;
        if (&remaining - &step).is_negative() {
            return Ok(TraceOutcome::Endpoint(FlowPoint {
                rect: r,
                x,
                y: &y + &remaining,
            }));
        }
        consumed = &consumed + &step;
        remaining = &remaining - &step;
        y = event_y;

        if side_vertex {
            let class = surface
                .vertex_class_at(r, &x, &y)
                .expect("side break is a vertex");
            if surface.vertex_census()[class].is_singular() {
                return Ok(TraceOutcome::HitSingularity { distance: consumed });
            }
            if remaining.is_zero() {
                return Ok(TraceOutcome::Endpoint(FlowPoint { rect: r, x, y }));
            }
            continue; // keep riding the same side
        }

        // Arrived at the top side at offset x.
        match surface.vertex_class_at(r, &x, &y) {
            Some(class) => {
                if surface.vertex_census()[class].is_singular() {
                    return Ok(TraceOutcome::HitSingularity { distance: consumed });
                }
                if remaining.is_zero() {
                    return Ok(TraceOutcome::Endpoint(FlowPoint { rect: r, x, y }));
                }
                // Regular vertex: enter the unique sector strictly
                // containing north (an interior bottom point), or ride the
                // vertical side the north ray lies on.
                let members = &surface.vertex_census()[class].members;
                if let Some(m) = members
                    .iter()
                    .find(|m| m.kind == IncidenceKind::SideInterior(Side::Bottom))
                {
                    r = m.rect;
                    x = m.x.clone();
                    y = m.y.clone();
                } else {
                    let m = members
                        .iter()
                        .find(|m| {
                            m.kind == IncidenceKind::BottomLeft
                                || m.kind == IncidenceKind::SideInterior(Side::Left)
                        })
                        .expect("regular vertex admits a northward continuation");
                    r = m.rect;
                    x = m.x.clone();
                    y = m.y.clone();
                }
            }
            None => {
                if remaining.is_zero() {
                    return Ok(TraceOutcome::Endpoint(FlowPoint { rect: r, x, y }));
                }
                // Interior of a glued segment: cross by translation.
                let seg = surface
                    .side_segments(r, Side::Top)
                    .iter()
                    .find(|s| (&x - &s.start).is_positive() && (&x - &s.end).is_negative())
                    .cloned()
                    .expect("top side is exactly partitioned");
                let (nr, nside, noff) = surface.partner(&seg, &x);
                debug_assert_eq!(nside, Side::Bottom);
                r = nr;
                x = noff;
                y = Quad::zero();
            }
        }
    }
}

/// One arc of a transversal: a sub-interval of a glued horizontal edge
/// (vertical for the east flow), in carrier offsets within the segment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransversalPiece {
    pub gluing: usize,
    pub start: Quad,
    pub end: Quad,
}

/// A transversal: ordered arcs on glued edges, concatenated into one
/// coordinate interval `[0, total)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transversal {
    pub pieces: Vec<TransversalPiece>,
}

impl Transversal {
    /// The union of all horizontal edges (equivalently, of all bottom
    /// sides) in document order: always a cross-section for the north flow.
    pub fn full_horizontal(surface: &ValidatedSurface) -> Transversal {
        Transversal {
            pieces: surface
                .gluings()
                .iter()
                .enumerate()
                .filter(|(_, g)| g.is_horizontal())
                .map(|(i, g)| TransversalPiece {
                    gluing: i,
                    start: Quad::zero(),
                    end: g.len(),
                })
                .collect(),
        }
    }

    /// The union of all vertical edges, for the east flow.
    pub fn full_vertical(surface: &ValidatedSurface) -> Transversal {
        Transversal {
            pieces: surface
                .gluings()
                .iter()
                .enumerate()
                .filter(|(_, g)| !g.is_horizontal())
                .map(|(i, g)| TransversalPiece {
                    gluing: i,
                    start: Quad::zero(),
                    end: g.len(),
                })
                .collect(),
        }
    }

    /// Full edges by gluing index.
    pub fn on_edges(surface: &ValidatedSurface, gluings: &[usize]) -> Transversal {
        Transversal {
            pieces: gluings
                .iter()
                .map(|&i| TransversalPiece {
                    gluing: i,
                    start: Quad::zero(),
                    end: surface.gluings()[i].len(),
                })
                .collect(),
        }
    }

    pub fn total_length(&self) -> Quad {
        self.pieces
            .iter()
            .fold(Quad::zero(), |acc, p| &acc + &(&p.end - &p.start))
    }

    fn check(&self, surface: &ValidatedSurface, direction: FlowDirection) -> Result<(), FlowError> {
        if self.pieces.is_empty() {
            return Err(FlowError::BadTransversal("no pieces".into()));
        }
        for p in &self.pieces {
            let Some(g) = surface.gluings().get(p.gluing) else {
                return Err(FlowError::BadTransversal(format!(
                    "gluing index {} out of range",
                    p.gluing
                )));
            };
            let want_horizontal = direction == FlowDirection::North;
            if g.is_horizontal() != want_horizontal {
                return Err(FlowError::BadTransversal(format!(
                    "gluing {} runs the wrong way for this flow direction",
                    p.gluing
                )));
            }
            if p.start.is_negative()
                || (&p.end - &p.start).signum() <= 0
                || (&p.end - &g.len()).is_positive()
            {
                return Err(FlowError::BadTransversal(format!(
                    "interval [{}, {}] does not fit edge {} of length {}",
                    p.start,
                    p.end,
                    p.gluing,
                    g.len()
                )));
            }
        }
        Ok(())
    }
}

/// One rigid piece of the first-return map: every leaf in
/// `[domain_start, domain_end)` returns after `return_height` at position
/// `p + image_offset`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReturnPiece {
    pub domain_start: Quad,
    pub domain_end: Quad,
    pub image_offset: Quad,
    pub return_height: Quad,
}

impl ReturnPiece {
    pub fn len(&self) -> Quad {
        &self.domain_end - &self.domain_start
    }

    pub fn image_start(&self) -> Quad {
        &self.domain_start + &self.image_offset
    }

    pub fn image_end(&self) -> Quad {
        &self.domain_end + &self.image_offset
    }
}

/// The first-return map of the flow to a transversal, as an interval
/// exchange with the singular-leaf positions recorded as breakpoints
/// (excluded from the domain).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReturnMap {
    pub pieces: Vec<ReturnPiece>,
    pub breakpoints: Vec<Quad>,
    pub total_length: Quad,
}

/// Default crossing budget: generous for any genuine cross-section.
pub fn default_max_crossings(surface: &ValidatedSurface) -> u32 {
    let n = surface.rectangles().len() as u32;
    16 * n * n
}

struct Job {
    dom_lo: Quad,
    dom_hi: Quad,
    rect: usize,
    x_lo: Quad,
    height: Quad,
    crossings: u32,
}

/// Flows every leaf of the transversal forward to its first return,
/// assembling the interval exchange. Leaves that hit a singular vertex
/// become breakpoints; a leaf that exceeds `max_crossings` rectangle
/// crossings without returning reports `NoReturn`.
pub fn first_return(
    surface: &ValidatedSurface,
    transversal: &Transversal,
    direction: FlowDirection,
    max_crossings: u32,
) -> Result<ReturnMap, FlowError> {
    transversal.check(surface, direction)?;
    match direction {
        FlowDirection::North => first_return_north(surface, transversal, max_crossings),
        FlowDirection::East => {
            // Gluing indices and carrier offsets are preserved by the
            // transposition, so the result needs no back-mapping.
            let transposed = surface.transposed();
            first_return_north(&transposed, transversal, max_crossings)
        }
    }
}

fn first_return_north(
    surface: &ValidatedSurface,
    transversal: &Transversal,
    max_crossings: u32,
) -> Result<ReturnMap, FlowError> {
    // Layout of the concatenated coordinate: piece i covers
    // [base_i, base_i + len_i) and lives on its gluing at carrier offsets
    // [start_i, end_i).
    let mut bases = Vec::with_capacity(transversal.pieces.len());
    let mut cursor = Quad::zero();
    for p in &transversal.pieces {
        bases.push(cursor.clone());
        cursor = &cursor + &(&p.end - &p.start);
    }
    let total = cursor;

    // Initial jobs: each piece starts at the bottom representative of its
    // carrier edge, at flow height 0.
    let mut jobs: Vec<Job> = Vec::new();
    for (i, p) in transversal.pieces.iter().enumerate() {
        let g = &surface.gluings()[p.gluing];
        let bottom = if g.from.side == Side::Bottom { &g.from } else { &g.to };
        jobs.push(Job {
            dom_lo: bases[i].clone(),
            dom_hi: &bases[i] + &(&p.end - &p.start),
            rect: bottom.rect,
            x_lo: &bottom.start + &p.start,
            height: Quad::zero(),
            crossings: 0,
        });
    }

    let mut pieces: Vec<ReturnPiece> = Vec::new();
    let mut breakpoints: Vec<Quad> = Vec::new();
    let record_breakpoint = |b: &Quad, breakpoints: &mut Vec<Quad>| {
        if !breakpoints.contains(b) {
            breakpoints.push(b.clone());
        }
    };

    while let Some(job) = jobs.pop() {
        if job.crossings > max_crossings {
            return Err(FlowError::NoReturn {
                position: job.dom_lo.to_string(),
            });
        }
        let r = job.rect;
        let h = surface.rectangles()[r].height.clone();
        // The left boundary leaf may ride a vertical side; singular
        // vertices on it kill that single leaf.
        if job.x_lo.is_zero() {
            for b in surface.side_breaks(r, Side::Left) {
                if b.is_positive() && (&b - &h).is_negative() {
                    let class = surface.vertex_class_at(r, &Quad::zero(), &b).unwrap();
                    if surface.vertex_census()[class].is_singular() {
                        record_breakpoint(&job.dom_lo, &mut breakpoints);
                    }
                }
            }
        }
        let height = &job.height + &h;
        let x_hi = &job.x_lo + &(&job.dom_hi - &job.dom_lo);

        // Split at top-side segment endpoints inside the interval.
        let mut cuts: Vec<Quad> = vec![job.x_lo.clone()];
        for b in surface.side_breaks(r, Side::Top) {
            if (&b - &job.x_lo).is_positive() && (&b - &x_hi).is_negative() {
                cuts.push(b);
            }
        }
        cuts.push(x_hi.clone());

        for win in cuts.windows(2) {
            let (xa, xb) = (&win[0], &win[1]);
            let dom_a = &job.dom_lo + &(xa - &job.x_lo);
            // The left boundary leaf passes through a vertex when xa is a
            // segment endpoint; a singular one is a breakpoint.
            if let Some(class) = surface.vertex_class_at(r, xa, &h) {
                if surface.vertex_census()[class].is_singular() {
                    record_breakpoint(&dom_a, &mut breakpoints);
                }
            }
            let seg = surface
                .side_segments(r, Side::Top)
                .iter()
                .find(|s| (xa - &s.start).signum() >= 0 && (xb - &s.end).signum() <= 0)
                .cloned()
                .ok_or_else(|| FlowError::Internal("interval not inside one segment".into()))?;
            // Carrier offsets within the glued segment.
            let o_lo = xa - &seg.start;
            let o_hi = xb - &seg.start;
            let crossings = job.crossings + 1;

            // Parts overlapping transversal arcs on this gluing return now;
            // the rest continues below the partner segment.
            let mut pending: Vec<(Quad, Quad)> = vec![(o_lo.clone(), o_hi.clone())];
            for (i, p) in transversal.pieces.iter().enumerate() {
                if p.gluing != seg.gluing {
                    continue;
                }
                let mut next_pending = Vec::new();
                for (lo, hi) in pending {
                    let m_lo = if (&p.start - &lo).is_positive() { p.start.clone() } else { lo.clone() };
                    let m_hi = if (&p.end - &hi).is_negative() { p.end.clone() } else { hi.clone() };
                    if (&m_hi - &m_lo).signum() <= 0 {
                        next_pending.push((lo, hi));
                        continue;
                    }
                    // Returned part.
                    let d0 = &dom_a + &(&m_lo - &o_lo);
                    let d1 = &dom_a + &(&m_hi - &o_lo);
                    let image_start = &bases[i] + &(&m_lo - &p.start);
                    pieces.push(ReturnPiece {
                        domain_start: d0.clone(),
                        domain_end: d1,
                        image_offset: &image_start - &d0,
                        return_height: height.clone(),
                    });
                    if (&m_lo - &lo).is_positive() {
                        next_pending.push((lo, m_lo));
                    }
                    if (&hi - &m_hi).is_positive() {
                        next_pending.push((m_hi, hi));
                    }
                }
                pending = next_pending;
            }
            for (lo, hi) in pending {
                let (nr, nside, noff) = surface.partner(&seg, &lo);
                debug_assert_eq!(nside, Side::Bottom);
                jobs.push(Job {
                    dom_lo: &dom_a + &(&lo - &o_lo),
                    dom_hi: &dom_a + &(&hi - &o_lo),
                    rect: nr,
                    x_lo: noff,
                    height: height.clone(),
                    crossings,
                });
            }
        }
    }

    pieces.sort_by(|a, b| a.domain_start.cmp(&b.domain_start));
    // Merge contiguous pieces with identical data (splits that turned out
    // to be rigid across the cut).
    let mut merged: Vec<ReturnPiece> = Vec::new();
    for p in pieces {
        if let Some(last) = merged.last_mut() {
            if last.domain_end == p.domain_start
                && last.image_offset == p.image_offset
                && last.return_height == p.return_height
            {
                last.domain_end = p.domain_end;
                continue;
            }
        }
        merged.push(p);
    }

    // Domains must tile [0, total).
    let mut cursor = Quad::zero();
    for p in &merged {
        if p.domain_start != cursor {
            return Err(FlowError::Internal(format!(
                "domain gap at {cursor}: next piece starts at {}",
                p.domain_start
            )));
        }
        cursor = p.domain_end.clone();
    }
    if cursor != total {
        return Err(FlowError::Internal(format!(
            "domains end at {cursor}, expected {total}"
        )));
    }
    // Images must tile [0, total) as well: the exchange is a bijection.
    let mut by_image: Vec<&ReturnPiece> = merged.iter().collect();
    by_image.sort_by(|a, b| a.image_start().cmp(&b.image_start()));
    let mut cursor = Quad::zero();
    for p in by_image {
        if p.image_start() != cursor {
            return Err(FlowError::Internal(format!(
                "image gap at {cursor}: next image starts at {}",
                p.image_start()
            )));
        }
        cursor = p.image_end();
    }
    if cursor != total {
        return Err(FlowError::Internal(format!(
            "images end at {cursor}, expected {total}"
        )));
    }

    breakpoints.sort();
    Ok(ReturnMap {
        pieces: merged,
        breakpoints,
        total_length: total,
    })
}

/// A maximal flow rectangle between consecutive returns: `width` along the
/// transversal, `height` the return time of its leaves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strip {
    pub width: Quad,
    pub height: Quad,
    pub source: (Quad, Quad),
    pub target: (Quad, Quad),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StripDecomposition {
    pub strips: Vec<Strip>,
    pub total_area: Quad,
}

/// One strip per return piece; the strip areas must exhaust the surface,
/// otherwise the transversal misses part of the flow and is rejected.
pub fn strip_decomposition(
    surface: &ValidatedSurface,
    transversal: &Transversal,
    direction: FlowDirection,
    max_crossings: u32,
) -> Result<StripDecomposition, FlowError> {
    let map = first_return(surface, transversal, direction, max_crossings)?;
    let strips: Vec<Strip> = map
        .pieces
        .iter()
        .map(|p| Strip {
            width: p.len(),
            height: p.return_height.clone(),
            source: (p.domain_start.clone(), p.domain_end.clone()),
            target: (p.image_start(), p.image_end()),
        })
        .collect();
    let covered = strips
        .iter()
        .fold(Quad::zero(), |acc, s| &acc + &(&s.width * &s.height));
    let area = surface.area();
    if covered != area {
        return Err(FlowError::NotCrossSection {
            covered: covered.to_string(),
            total: area.to_string(),
        });
    }
    Ok(StripDecomposition {
        strips,
        total_area: covered,
    })
}
