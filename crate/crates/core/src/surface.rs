//! Rectangle complexes with translation gluings.
//!
//! A surface is a finite set of axis-parallel rectangles whose boundary
//! sides are exactly partitioned into segments, glued in pairs by
//! translations (top to bottom, left to right). Validation checks the
//! partition and connectivity; the vertex census walks the link of every
//! identified corner to find cone angles; `period_group` reads off
//! generators of the groups of horizontal and vertical periods from the
//! 1-skeleton.

use crate::field::{Quad, QuadField};
use std::collections::HashMap;
use std::fmt;

/// Sides of a rectangle. Offsets along `Top`/`Bottom` are measured from the
/// left corner, along `Left`/`Right` from the bottom corner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Top,
    Bottom,
    Left,
    Right,
}

impl Side {
    pub fn is_horizontal(self) -> bool {
        matches!(self, Side::Top | Side::Bottom)
    }

    /// The side a segment here may be glued to.
    pub fn mate(self) -> Side {
        match self {
            Side::Top => Side::Bottom,
            Side::Bottom => Side::Top,
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    fn index(self) -> usize {
        match self {
            Side::Top => 0,
            Side::Bottom => 1,
            Side::Left => 2,
            Side::Right => 3,
        }
    }

    pub const ALL: [Side; 4] = [Side::Top, Side::Bottom, Side::Left, Side::Right];
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Side::Top => "top",
            Side::Bottom => "bottom",
            Side::Left => "left",
            Side::Right => "right",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rectangle {
    pub id: String,
    pub width: Quad,
    pub height: Quad,
}

/// A segment of a rectangle side, in raw (by-id) form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentSpec {
    pub rect: String,
    pub side: Side,
    pub start: Quad,
    pub end: Quad,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluingSpec {
    pub from: SegmentSpec,
    pub to: SegmentSpec,
}

/// Unvalidated surface data, as parsed from a document or built in code.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawSurface {
    pub field: Option<QuadField>,
    pub rectangles: Vec<Rectangle>,
    pub gluings: Vec<GluingSpec>,
}

/// A segment with its rectangle resolved to an index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub rect: usize,
    pub side: Side,
    pub start: Quad,
    pub end: Quad,
}

impl Segment {
    pub fn len(&self) -> Quad {
        &self.end - &self.start
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gluing {
    pub from: Segment,
    pub to: Segment,
}

impl Gluing {
    pub fn len(&self) -> Quad {
        self.from.len()
    }

    pub fn is_horizontal(&self) -> bool {
        self.from.side.is_horizontal()
    }
}

/// One occurrence of a glued segment on a rectangle side.
#[derive(Debug, Clone)]
pub(crate) struct SegRef {
    pub gluing: usize,
    pub from_half: bool,
    pub start: Quad,
    pub end: Quad,
}

/// How a boundary point sits on its rectangle; fixes the angular sector the
/// point contributes to its vertex class (pi/2 for corners, pi otherwise).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IncidenceKind {
    BottomLeft,
    BottomRight,
    TopRight,
    TopLeft,
    SideInterior(Side),
}

impl IncidenceKind {
    /// Quarter-turns of angle this incidence contributes.
    pub fn quarter_turns(self) -> u32 {
        match self {
            IncidenceKind::SideInterior(_) => 2,
            _ => 1,
        }
    }
}

/// A corner or segment-endpoint of one rectangle, identified with others in
/// a [`VertexClass`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Incidence {
    pub rect: usize,
    pub x: Quad,
    pub y: Quad,
    pub kind: IncidenceKind,
}

/// An identified vertex of the glued surface with its total cone angle
/// `2 * pi * cone_multiple`.
#[derive(Debug, Clone)]
pub struct VertexClass {
    pub members: Vec<Incidence>,
    pub cone_multiple: u32,
}

impl VertexClass {
    pub fn is_singular(&self) -> bool {
        self.cone_multiple > 1
    }
}

/// Generators of the period group: one `(horizontal, vertical)` pair per
/// fundamental cycle of the 1-skeleton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodData {
    pub generators: Vec<(Quad, Quad)>,
}

impl PeriodData {
    pub fn horizontal(&self) -> Vec<Quad> {
        self.generators.iter().map(|(h, _)| h.clone()).collect()
    }

    pub fn vertical(&self) -> Vec<Quad> {
        self.generators.iter().map(|(_, v)| v.clone()).collect()
    }
}

/// Genus, Euler characteristic, area and the multiset of singular cone
/// multiples of a validated surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceInvariants {
    pub genus: i64,
    pub euler: i64,
    pub area: Quad,
    /// Cone multiples of the singular classes, sorted ascending.
    pub singular_profile: Vec<u32>,
}

/// A cross-check the kernel guarantees for every valid input has failed;
/// this is a bug report, not a property of the input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("internal inconsistency: {detail}")]
pub struct InternalInconsistency {
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ValidationError {
    #[error("surface has no rectangles")]
    EmptySurface,
    #[error("duplicate rectangle id `{0}`")]
    DuplicateRectangleId(String),
    #[error("rectangle `{rect}` has a non-positive side")]
    NonPositiveSize { rect: String },
    #[error("gluing {gluing} references unknown rectangle `{id}`")]
    UnknownRectangle { gluing: usize, id: String },
    #[error("gluing {gluing} joins {from} to {to}; only top-bottom and left-right gluings are allowed")]
    BadOrientation { gluing: usize, from: Side, to: Side },
    #[error("gluing {gluing}: {detail}")]
    BadSegment { gluing: usize, detail: String },
    #[error("gluing {gluing} joins segments of unequal length {from_len} and {to_len}")]
    LengthMismatch {
        gluing: usize,
        from_len: String,
        to_len: String,
    },
    #[error("rectangle `{rect}` side {side}: segments overlap at offset {at}")]
    Overlap { rect: String, side: Side, at: String },
    #[error("rectangle `{rect}` side {side}: uncovered gap at offset {at}")]
    Gap { rect: String, side: Side, at: String },
    #[error("the gluing graph is disconnected")]
    Disconnected,
}

/// Identifies a surface point independently of its representation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) enum PointKey {
    Interior(usize, Quad, Quad),
    Vertex(usize),
    Edge(usize, Quad, Quad),
}

/// A validated rectangle complex: sides exactly partitioned, gluings
/// translation-compatible, connected, with the vertex census precomputed.
/// Immutable after construction.
#[derive(Debug, Clone)]
pub struct ValidatedSurface {
    field: Option<QuadField>,
    rects: Vec<Rectangle>,
    gluings: Vec<Gluing>,
    side_segments: Vec<[Vec<SegRef>; 4]>,
    vertex_classes: Vec<VertexClass>,
    vertex_index: HashMap<(usize, Quad, Quad), usize>,
}

/// Compass directions used by the vertex walk; quarter turns
/// counterclockwise from east.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Dir {
    East = 0,
    North = 1,
    West = 2,
    South = 3,
}

impl Dir {
    fn turned(self, quarter_turns: u32) -> Dir {
        match ((self as u32) + quarter_turns) % 4 {
            0 => Dir::East,
            1 => Dir::North,
            2 => Dir::West,
            _ => Dir::South,
        }
    }
}

/// Start ray and angular width (in quarter turns) of the sector an
/// incidence spans, walking counterclockwise.
fn sector(kind: IncidenceKind) -> (Dir, u32) {
    match kind {
        IncidenceKind::BottomLeft => (Dir::East, 1),
        IncidenceKind::BottomRight => (Dir::North, 1),
        IncidenceKind::TopRight => (Dir::West, 1),
        IncidenceKind::TopLeft => (Dir::South, 1),
        IncidenceKind::SideInterior(Side::Bottom) => (Dir::East, 2),
        IncidenceKind::SideInterior(Side::Right) => (Dir::North, 2),
        IncidenceKind::SideInterior(Side::Top) => (Dir::West, 2),
        IncidenceKind::SideInterior(Side::Left) => (Dir::South, 2),
    }
}

pub fn validate(raw: RawSurface) -> Result<ValidatedSurface, ValidationError> {
    ValidatedSurface::validate(raw)
}

impl ValidatedSurface {
    pub fn validate(raw: RawSurface) -> Result<Self, ValidationError> {
        if raw.rectangles.is_empty() {
            return Err(ValidationError::EmptySurface);
        }
        let mut ids = HashMap::new();
        for (i, r) in raw.rectangles.iter().enumerate() {
            if ids.insert(r.id.clone(), i).is_some() {
                return Err(ValidationError::DuplicateRectangleId(r.id.clone()));
            }
            if !r.width.is_positive() || !r.height.is_positive() {
                return Err(ValidationError::NonPositiveSize { rect: r.id.clone() });
            }
        }

        let resolve = |g: usize, s: &SegmentSpec| -> Result<Segment, ValidationError> {
            let rect = *ids
                .get(&s.rect)
                .ok_or_else(|| ValidationError::UnknownRectangle { gluing: g, id: s.rect.clone() })?;
            Ok(Segment {
                rect,
                side: s.side,
                start: s.start.clone(),
                end: s.end.clone(),
            })
        };

        let mut gluings = Vec::with_capacity(raw.gluings.len());
        for (g, spec) in raw.gluings.iter().enumerate() {
            let from = resolve(g, &spec.from)?;
            let to = resolve(g, &spec.to)?;
            if from.side.mate() != to.side {
                return Err(ValidationError::BadOrientation {
                    gluing: g,
                    from: from.side,
                    to: to.side,
                });
            }
            for seg in [&from, &to] {
                let len = side_len_of(&raw.rectangles[seg.rect], seg.side);
                if seg.start.is_negative()
                    || (&seg.end - &seg.start).signum() <= 0
                    || (&seg.end - &len).is_positive()
                {
                    return Err(ValidationError::BadSegment {
                        gluing: g,
                        detail: format!(
                            "segment [{}, {}] does not fit side {} of `{}` (length {})",
                            seg.start, seg.end, seg.side, raw.rectangles[seg.rect].id, len
                        ),
                    });
                }
            }
            if from.len() != to.len() {
                return Err(ValidationError::LengthMismatch {
                    gluing: g,
                    from_len: from.len().to_string(),
                    to_len: to.len().to_string(),
                });
            }
            gluings.push(Gluing { from, to });
        }

        // Collect the segments on each side and check the exact partition.
        let mut side_segments: Vec<[Vec<SegRef>; 4]> = raw
            .rectangles
            .iter()
            .map(|_| [Vec::new(), Vec::new(), Vec::new(), Vec::new()])
            .collect();
        for (g, gl) in gluings.iter().enumerate() {
            for (seg, from_half) in [(&gl.from, true), (&gl.to, false)] {
                side_segments[seg.rect][seg.side.index()].push(SegRef {
                    gluing: g,
                    from_half,
                    start: seg.start.clone(),
                    end: seg.end.clone(),
                });
            }
        }
        for (r, rect) in raw.rectangles.iter().enumerate() {
            for side in Side::ALL {
                let segs = &mut side_segments[r][side.index()];
                segs.sort_by(|a, b| a.start.cmp(&b.start));
                let len = side_len_of(rect, side);
                let mut cursor = Quad::zero();
                for seg in segs.iter() {
                    match (&seg.start - &cursor).signum() {
                        s if s < 0 => {
                            return Err(ValidationError::Overlap {
                                rect: rect.id.clone(),
                                side,
                                at: seg.start.to_string(),
                            });
                        }
                        s if s > 0 => {
                            return Err(ValidationError::Gap {
                                rect: rect.id.clone(),
                                side,
                                at: cursor.to_string(),
                            });
                        }
                        _ => {}
                    }
                    cursor = seg.end.clone();
                }
                if cursor != len {
                    return Err(ValidationError::Gap {
                        rect: rect.id.clone(),
                        side,
                        at: cursor.to_string(),
                    });
                }
            }
        }

        // Connectivity of the gluing graph.
        let mut component = vec![usize::MAX; raw.rectangles.len()];
        let mut stack = vec![0usize];
        component[0] = 0;
        while let Some(r) = stack.pop() {
            for gl in &gluings {
                for (a, b) in [(gl.from.rect, gl.to.rect), (gl.to.rect, gl.from.rect)] {
                    if a == r && component[b] == usize::MAX {
                        component[b] = 0;
                        stack.push(b);
                    }
                }
            }
        }
        if component.iter().any(|&c| c == usize::MAX) {
            return Err(ValidationError::Disconnected);
        }

        let mut surface = ValidatedSurface {
            field: raw.field,
            rects: raw.rectangles,
            gluings,
            side_segments,
            vertex_classes: Vec::new(),
            vertex_index: HashMap::new(),
        };
        surface.run_vertex_census();
        Ok(surface)
    }

    pub fn field(&self) -> Option<QuadField> {
        self.field
    }

    pub fn rectangles(&self) -> &[Rectangle] {
        &self.rects
    }

    pub fn gluings(&self) -> &[Gluing] {
        &self.gluings
    }

    pub fn rect_index(&self, id: &str) -> Option<usize> {
        self.rects.iter().position(|r| r.id == id)
    }

    pub fn area(&self) -> Quad {
        self.rects
            .iter()
            .fold(Quad::zero(), |acc, r| &acc + &(&r.width * &r.height))
    }

    /// The identified vertices with their cone angles.
    pub fn vertex_census(&self) -> &[VertexClass] {
        &self.vertex_classes
    }

    /// The vertex class of a boundary point, if the point is a corner or
    /// segment endpoint.
    pub fn vertex_class_at(&self, rect: usize, x: &Quad, y: &Quad) -> Option<usize> {
        self.vertex_index.get(&(rect, x.clone(), y.clone())).copied()
    }

    pub(crate) fn side_segments(&self, rect: usize, side: Side) -> &[SegRef] {
        &self.side_segments[rect][side.index()]
    }

    pub(crate) fn side_len(&self, rect: usize, side: Side) -> Quad {
        side_len_of(&self.rects[rect], side)
    }

    /// Offsets of all segment endpoints on a side, including 0 and the side
    /// length, ascending.
    pub(crate) fn side_breaks(&self, rect: usize, side: Side) -> Vec<Quad> {
        let segs = self.side_segments(rect, side);
        let mut out: Vec<Quad> = segs.iter().map(|s| s.start.clone()).collect();
        if let Some(last) = segs.last() {
            out.push(last.end.clone());
        }
        out
    }

    /// Maps an offset through a gluing: the matching offset on the partner
    /// segment, with its rectangle and side.
    pub(crate) fn partner(&self, seg: &SegRef, offset: &Quad) -> (usize, Side, Quad) {
        let gl = &self.gluings[seg.gluing];
        let (ours, theirs) = if seg.from_half {
            (&gl.from, &gl.to)
        } else {
            (&gl.to, &gl.from)
        };
        debug_assert!((offset - &ours.start).signum() >= 0 && (offset - &ours.end).signum() <= 0);
        let mapped = &theirs.start + &(offset - &ours.start);
        (theirs.rect, theirs.side, mapped)
    }

    /// The boundary point at a given side offset.
    pub(crate) fn side_point(&self, rect: usize, side: Side, offset: &Quad) -> (Quad, Quad) {
        let r = &self.rects[rect];
        match side {
            Side::Bottom => (offset.clone(), Quad::zero()),
            Side::Top => (offset.clone(), r.height.clone()),
            Side::Left => (Quad::zero(), offset.clone()),
            Side::Right => (r.width.clone(), offset.clone()),
        }
    }

    fn run_vertex_census(&mut self) {
        // Enumerate incidences: corners plus interior segment endpoints.
        let mut incidences: Vec<Incidence> = Vec::new();
        let mut index: HashMap<(usize, Quad, Quad), usize> = HashMap::new();
        for (r, rect) in self.rects.iter().enumerate() {
            let w = rect.width.clone();
            let h = rect.height.clone();
            let corners = [
                (Quad::zero(), Quad::zero(), IncidenceKind::BottomLeft),
                (w.clone(), Quad::zero(), IncidenceKind::BottomRight),
                (w.clone(), h.clone(), IncidenceKind::TopRight),
                (Quad::zero(), h.clone(), IncidenceKind::TopLeft),
            ];
            for (x, y, kind) in corners {
                index.insert((r, x.clone(), y.clone()), incidences.len());
                incidences.push(Incidence { rect: r, x, y, kind });
            }
            for side in Side::ALL {
                let len = self.side_len(r, side);
                for o in self.side_breaks(r, side) {
                    if o.is_zero() || o == len {
                        continue;
                    }
                    let (x, y) = self.side_point(r, side, &o);
                    index.insert((r, x.clone(), y.clone()), incidences.len());
                    incidences.push(Incidence {
                        rect: r,
                        x,
                        y,
                        kind: IncidenceKind::SideInterior(side),
                    });
                }
            }
        }

        // Walk the link of each vertex: cross a gluing at the sector's end
        // ray, landing in the sector that starts with the same compass ray.
        let successor = |i: usize| -> usize {
            let inc = &incidences[i];
            let (start, units) = sector(inc.kind);
            let end = start.turned(units);
            let (side, offset, forward) = match end {
                Dir::North => (Side::Left, inc.y.clone(), true),
                Dir::South => (Side::Right, inc.y.clone(), false),
                Dir::East => (Side::Top, inc.x.clone(), true),
                Dir::West => (Side::Bottom, inc.x.clone(), false),
            };
            let segs = self.side_segments(inc.rect, side);
            let seg = if forward {
                segs.iter().find(|s| s.start == offset)
            } else {
                segs.iter().find(|s| s.end == offset)
            }
            .expect("end ray of a sector lies on a glued side");
            let (nr, nside, noffset) = self.partner(seg, &offset);
            let (nx, ny) = self.side_point(nr, nside, &noffset);
            let j = *index
                .get(&(nr, nx, ny))
                .expect("gluings map segment endpoints to segment endpoints");
            debug_assert_eq!(sector(incidences[j].kind).0 as u32, end as u32);
            j
        };

        let mut class_of = vec![usize::MAX; incidences.len()];
        let mut classes: Vec<VertexClass> = Vec::new();
        for start in 0..incidences.len() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = Vec::new();
            let mut turns = 0u32;
            let mut cur = start;
            loop {
                class_of[cur] = id;
                members.push(incidences[cur].clone());
                turns += incidences[cur].kind.quarter_turns();
                cur = successor(cur);
                if cur == start {
                    break;
                }
                assert!(class_of[cur] == usize::MAX, "vertex walk must close at its start");
            }
            assert!(turns % 4 == 0, "translation gluings force angles in 2*pi*Z");
            classes.push(VertexClass {
                members,
                cone_multiple: turns / 4,
            });
        }

        self.vertex_classes = classes;
        self.vertex_index = index
            .into_iter()
            .map(|(k, i)| (k, class_of[i]))
            .collect();
    }

    /// Euler characteristic from the induced cell complex, genus, area and
    /// the singular cone profile; the Gauss-Bonnet identity is re-derived
    /// from the census and must agree.
    pub fn invariants(&self) -> Result<SurfaceInvariants, InternalInconsistency> {
        let v = self.vertex_classes.len() as i64;
        let e = self.gluings.len() as i64;
        let f = self.rects.len() as i64;
        let euler = v - e + f;
        if euler % 2 != 0 {
            return Err(InternalInconsistency {
                detail: format!("odd Euler characteristic {euler}"),
            });
        }
        let genus = (2 - euler) / 2;
        if genus < 0 {
            return Err(InternalInconsistency {
                detail: format!("negative genus from euler {euler}"),
            });
        }
        let gauss_bonnet: i64 = self
            .vertex_classes
            .iter()
            .map(|c| i64::from(c.cone_multiple) - 1)
            .sum();
        if gauss_bonnet != 2 * genus - 2 {
            return Err(InternalInconsistency {
                detail: format!(
                    "cone angles sum to {gauss_bonnet} but 2g-2 = {}",
                    2 * genus - 2
                ),
            });
        }
        let mut profile: Vec<u32> = self
            .vertex_classes
            .iter()
            .filter(|c| c.is_singular())
            .map(|c| c.cone_multiple)
            .collect();
        profile.sort_unstable();
        Ok(SurfaceInvariants {
            genus,
            euler,
            area: self.area(),
            singular_profile: profile,
        })
    }

    /// The two vertex classes at the ends of a gluing's edge, and the edge's
    /// holonomy vector, oriented from the segment start to the segment end.
    fn edge_data(&self, g: usize) -> (usize, usize, (Quad, Quad)) {
        let seg = &self.gluings[g].from;
        let (x0, y0) = self.side_point(seg.rect, seg.side, &seg.start);
        let (x1, y1) = self.side_point(seg.rect, seg.side, &seg.end);
        let u = self.vertex_class_at(seg.rect, &x0, &y0).expect("segment endpoint is a vertex");
        let v = self.vertex_class_at(seg.rect, &x1, &y1).expect("segment endpoint is a vertex");
        let vec = if seg.side.is_horizontal() {
            (seg.len(), Quad::zero())
        } else {
            (Quad::zero(), seg.len())
        };
        (u, v, vec)
    }

    /// Generators of the period group of `dz`, one per fundamental cycle of
    /// the 1-skeleton (spanning tree plus one non-tree edge each). Closed
    /// paths retract to the skeleton, so these generate all periods.
    pub fn period_group(&self) -> PeriodData {
        let n = self.vertex_classes.len();
        let mut potential: Vec<Option<(Quad, Quad)>> = vec![None; n];
        let mut in_tree = vec![false; self.gluings.len()];
        potential[0] = Some((Quad::zero(), Quad::zero()));
        // Grow the tree in passes; edge order fixed by the document.
        loop {
            let mut grew = false;
            for g in 0..self.gluings.len() {
                if in_tree[g] {
                    continue;
                }
                let (u, v, vec) = self.edge_data(g);
                match (potential[u].clone(), potential[v].clone()) {
                    (Some(pu), None) => {
                        potential[v] = Some((&pu.0 + &vec.0, &pu.1 + &vec.1));
                        in_tree[g] = true;
                        grew = true;
                    }
                    (None, Some(pv)) => {
                        potential[u] = Some((&pv.0 - &vec.0, &pv.1 - &vec.1));
                        in_tree[g] = true;
                        grew = true;
                    }
                    _ => {}
                }
            }
            if !grew {
                break;
            }
        }
        let mut generators = Vec::new();
        for g in 0..self.gluings.len() {
            if in_tree[g] {
                continue;
            }
            let (u, v, vec) = self.edge_data(g);
            let pu = potential[u].clone().expect("surface is connected");
            let pv = potential[v].clone().expect("surface is connected");
            generators.push((&(&pu.0 + &vec.0) - &pv.0, &(&pu.1 + &vec.1) - &pv.1));
        }
        PeriodData { generators }
    }

    /// The same complex with the two axes exchanged; east-direction
    /// questions reduce to north-direction ones here.
    pub fn transposed(&self) -> ValidatedSurface {
        let raw = RawSurface {
            field: self.field,
            rectangles: self
                .rects
                .iter()
                .map(|r| Rectangle {
                    id: r.id.clone(),
                    width: r.height.clone(),
                    height: r.width.clone(),
                })
                .collect(),
            gluings: self
                .gluings
                .iter()
                .map(|g| GluingSpec {
                    from: transpose_segment(&self.rects, &g.from),
                    to: transpose_segment(&self.rects, &g.to),
                })
                .collect(),
        };
        ValidatedSurface::validate(raw).expect("transpose of a valid surface is valid")
    }

    /// Are two point representations the same point of the glued surface?
    pub fn same_point(
        &self,
        a: (usize, &Quad, &Quad),
        b: (usize, &Quad, &Quad),
    ) -> bool {
        self.canonical_point_key(a.0, a.1, a.2) == self.canonical_point_key(b.0, b.1, b.2)
    }

    /// Canonical key identifying a surface point across gluings: interior
    /// points stand alone, vertex points collapse to their class, and other
    /// boundary points take the least representative of their gluing orbit.
    pub(crate) fn canonical_point_key(&self, rect: usize, x: &Quad, y: &Quad) -> PointKey {
        if let Some(class) = self.vertex_class_at(rect, x, y) {
            return PointKey::Vertex(class);
        }
        match self.boundary_orbit_min(rect, x, y) {
            Some((r, bx, by)) => PointKey::Edge(r, bx, by),
            None => PointKey::Interior(rect, x.clone(), y.clone()),
        }
    }

    fn sides_of_point(&self, r: usize, px: &Quad, py: &Quad) -> Vec<(Side, Quad)> {
        let rc = &self.rects[r];
        let mut sides = Vec::new();
        if py.is_zero() {
            sides.push((Side::Bottom, px.clone()));
        }
        if py == &rc.height {
            sides.push((Side::Top, px.clone()));
        }
        if px.is_zero() {
            sides.push((Side::Left, py.clone()));
        }
        if px == &rc.width {
            sides.push((Side::Right, py.clone()));
        }
        sides
    }

    /// Least `(rect, x, y)` identified with the given boundary point, or
    /// `None` if the point is interior.
    fn boundary_orbit_min(&self, rect: usize, x: &Quad, y: &Quad) -> Option<(usize, Quad, Quad)> {
        if self.sides_of_point(rect, x, y).is_empty() {
            return None;
        }
        let start = (rect, x.clone(), y.clone());
        let mut orbit = vec![start.clone()];
        let mut queue = vec![start];
        while let Some((r, px, py)) = queue.pop() {
            for (side, offset) in self.sides_of_point(r, &px, &py) {
                for seg in self.side_segments(r, side) {
                    if (&offset - &seg.start).signum() >= 0 && (&offset - &seg.end).signum() <= 0 {
                        let (nr, nside, noffset) = self.partner(seg, &offset);
                        let (nx, ny) = self.side_point(nr, nside, &noffset);
                        let cand = (nr, nx, ny);
                        if !orbit.contains(&cand) {
                            orbit.push(cand.clone());
                            queue.push(cand);
                        }
                    }
                }
            }
        }
        orbit.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
        orbit.into_iter().next()
    }

    /// Rebuilds the raw description (for serialization).
    pub fn to_raw(&self) -> RawSurface {
        RawSurface {
            field: self.field,
            rectangles: self.rects.clone(),
            gluings: self
                .gluings
                .iter()
                .map(|g| GluingSpec {
                    from: SegmentSpec {
                        rect: self.rects[g.from.rect].id.clone(),
                        side: g.from.side,
                        start: g.from.start.clone(),
                        end: g.from.end.clone(),
                    },
                    to: SegmentSpec {
                        rect: self.rects[g.to.rect].id.clone(),
                        side: g.to.side,
                        start: g.to.start.clone(),
                        end: g.to.end.clone(),
                    },
                })
                .collect(),
        }
    }
}

fn side_len_of(rect: &Rectangle, side: Side) -> Quad {
    if side.is_horizontal() {
        rect.width.clone()
    } else {
        rect.height.clone()
    }
}

fn transpose_segment(rects: &[Rectangle], seg: &Segment) -> SegmentSpec {
    let side = match seg.side {
        Side::Top => Side::Right,
        Side::Bottom => Side::Left,
        Side::Left => Side::Bottom,
        Side::Right => Side::Top,
    };
    SegmentSpec {
        rect: rects[seg.rect].id.clone(),
        side,
        start: seg.start.clone(),
        end: seg.end.clone(),
    }
}
