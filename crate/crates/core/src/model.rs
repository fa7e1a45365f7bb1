//! Necklaces, splittings, the boxes a splitting induces, and the fairness
//! predicate for two families.
//!
//! Everything here is discrete: beads are lattice cells, the measure of a
//! colour inside a region is a bead count, and cuts sit between beads. A cut
//! at position `p` on some axis separates index `p - 1` from index `p`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A colour, 0-based. Rendered 1-based by `Display`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ColorId(pub u16);

impl ColorId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ColorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0 as u32 + 1)
    }
}

/// Exact per-colour bead counts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ColorVector(pub Vec<u32>);

impl ColorVector {
    pub fn zeros(palette: usize) -> Self {
        ColorVector(vec![0; palette])
    }

    pub fn palette(&self) -> usize {
        self.0.len()
    }

    pub fn add_assign(&mut self, other: &ColorVector) {
        debug_assert_eq!(self.0.len(), other.0.len());
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += *b;
        }
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&c| c as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Colours whose count is odd.
    pub fn odd_colors(&self) -> Vec<ColorId> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c % 2 == 1)
            .map(|(i, _)| ColorId(i as u16))
            .collect()
    }

    /// Component-wise half, or `None` if some component is odd.
    pub fn half(&self) -> Option<ColorVector> {
        if self.0.iter().any(|c| c % 2 == 1) {
            return None;
        }
        Some(ColorVector(self.0.iter().map(|c| c / 2).collect()))
    }
}

/// A dense d-dimensional grid of coloured beads, stored row-major (the last
/// axis varies fastest).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGrid", into = "RawGrid")]
pub struct NecklaceGrid {
    dims: Vec<usize>,
    palette: usize,
    cells: Vec<ColorId>,
}

#[derive(Serialize, Deserialize)]
struct RawGrid {
    dims: Vec<usize>,
    palette: usize,
    cells: Vec<u16>,
}

impl TryFrom<RawGrid> for NecklaceGrid {
    type Error = Error;

    fn try_from(raw: RawGrid) -> Result<Self> {
        NecklaceGrid::new(
            raw.dims,
            raw.palette,
            raw.cells.into_iter().map(ColorId).collect(),
        )
    }
}

impl From<NecklaceGrid> for RawGrid {
    fn from(g: NecklaceGrid) -> Self {
        RawGrid {
            dims: g.dims,
            palette: g.palette,
            cells: g.cells.into_iter().map(|c| c.0).collect(),
        }
    }
}

impl NecklaceGrid {
    pub fn new(dims: Vec<usize>, palette: usize, cells: Vec<ColorId>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidGrid("at least one axis is required".into()));
        }
        if dims.contains(&0) {
            return Err(Error::InvalidGrid(format!(
                "extents must be positive, got {dims:?}"
            )));
        }
        if palette == 0 || palette > u16::MAX as usize {
            return Err(Error::InvalidGrid(format!(
                "palette size {palette} out of range"
            )));
        }
        let volume = dims
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n))
            .ok_or_else(|| Error::InvalidGrid("grid volume overflows".into()))?;
        if cells.len() != volume {
            return Err(Error::InvalidGrid(format!(
                "expected {volume} cells for dims {dims:?}, got {}",
                cells.len()
            )));
        }
        if let Some(bad) = cells.iter().find(|c| c.index() >= palette) {
            return Err(Error::InvalidGrid(format!(
                "cell colour {} outside palette of {palette}",
                bad.0
            )));
        }
        Ok(NecklaceGrid {
            dims,
            palette,
            cells,
        })
    }

    /// One-dimensional shorthand: `'a'..='z'` maps to colours `0..=25` and
    /// the palette is one past the largest letter used.
    pub fn from_word(word: &str) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::InvalidGrid("empty word".into()));
        }
        let cells = word
            .chars()
            .map(|ch| match ch {
                'a'..='z' => Ok(ColorId(ch as u16 - 'a' as u16)),
                _ => Err(Error::InvalidGrid(format!("'{ch}' is not in a..z"))),
            })
            .collect::<Result<Vec<_>>>()?;
        let palette = cells.iter().map(|c| c.index() + 1).max().unwrap_or(1);
        NecklaceGrid::new(vec![cells.len()], palette, cells)
    }

    pub fn from_colors_1d(palette: usize, colors: &[ColorId]) -> Result<Self> {
        NecklaceGrid::new(vec![colors.len()], palette, colors.to_vec())
    }

    /// Builds a 2-D grid from rows of equal length.
    pub fn from_rows(palette: usize, rows: &[Vec<ColorId>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidGrid("ragged rows".into()));
        }
        NecklaceGrid::new(vec![rows.len(), cols], palette, rows.concat())
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.len()
    }

    pub fn palette(&self) -> usize {
        self.palette
    }

    pub fn cells(&self) -> &[ColorId] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Row-major strides.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.dims.len()];
        for axis in (0..self.dims.len().saturating_sub(1)).rev() {
            strides[axis] = strides[axis + 1] * self.dims[axis + 1];
        }
        strides
    }

    pub fn index_of(&self, coords: &[usize]) -> usize {
        coords.iter().zip(self.strides()).map(|(&c, s)| c * s).sum()
    }

    pub fn coords_of(&self, mut index: usize) -> Vec<usize> {
        let mut coords = vec![0; self.dims.len()];
        for axis in (0..self.dims.len()).rev() {
            coords[axis] = index % self.dims[axis];
            index /= self.dims[axis];
        }
        coords
    }

    pub fn get(&self, coords: &[usize]) -> ColorId {
        self.cells[self.index_of(coords)]
    }

    pub fn totals(&self) -> ColorVector {
        let mut counts = ColorVector::zeros(self.palette);
        for c in &self.cells {
            counts.0[c.index()] += 1;
        }
        counts
    }

    /// The sub-grid covered by `b`, as a grid of its own.
    pub fn subgrid(&self, b: &Cuboid) -> Result<NecklaceGrid> {
        b.check_within(&self.dims)?;
        let dims: Vec<usize> = b.lo.iter().zip(&b.hi).map(|(l, h)| h - l).collect();
        let mut cells = Vec::with_capacity(b.volume());
        for_each_coord(&b.lo, &b.hi, |coords| cells.push(self.get(coords)));
        NecklaceGrid::new(dims, self.palette, cells)
    }

    /// Renders a 1-D grid over `a..z`; `None` for other shapes or palettes.
    pub fn to_word(&self) -> Option<String> {
        if self.dim() != 1 || self.palette > 26 {
            return None;
        }
        Some(
            self.cells
                .iter()
                .map(|c| (b'a' + c.0 as u8) as char)
                .collect(),
        )
    }
}

impl fmt::Display for NecklaceGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = *self.dims.last().unwrap_or(&1);
        for (i, c) in self.cells.iter().enumerate() {
            if i > 0 {
                f.write_str(if i % last == 0 { "\n" } else { " " })?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Visits every lattice point of the half-open box `[lo, hi)` in row-major
/// order.
pub(crate) fn for_each_coord(lo: &[usize], hi: &[usize], mut f: impl FnMut(&[usize])) {
    if lo.iter().zip(hi).any(|(l, h)| l >= h) {
        return;
    }
    let mut cur = lo.to_vec();
    loop {
        f(&cur);
        let mut axis = cur.len();
        loop {
            if axis == 0 {
                return;
            }
            axis -= 1;
            cur[axis] += 1;
            if cur[axis] < hi[axis] {
                break;
            }
            cur[axis] = lo[axis];
        }
    }
}

/// Per-axis cut positions. On a grid a cut at `p` lies between bead `p - 1`
/// and bead `p`; on a point set it is the line `x = p - 1/2`, so points never
/// sit on a cut.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Splitting {
    pub cuts: Vec<Vec<i64>>,
}

impl Splitting {
    pub fn new(cuts: Vec<Vec<i64>>) -> Self {
        Splitting { cuts }
    }

    pub fn empty(dim: usize) -> Self {
        Splitting {
            cuts: vec![Vec::new(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.cuts.len()
    }

    /// Largest number of cuts on a single axis.
    pub fn size(&self) -> usize {
        self.cuts.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Number of cuts over all axes.
    pub fn total(&self) -> usize {
        self.cuts.iter().map(Vec::len).sum()
    }

    /// Number of boxes the splitting induces.
    pub fn box_count(&self) -> usize {
        self.cuts.iter().map(|c| c.len() + 1).product()
    }

    /// Shortest piece length over all axes, counting the grid ends as
    /// boundaries.
    pub fn granularity(&self, dims: &[usize]) -> usize {
        self.cuts
            .iter()
            .zip(dims)
            .flat_map(|(cuts, &n)| {
                let mut prev = 0i64;
                cuts.iter()
                    .chain(std::iter::once(&(n as i64)))
                    .map(move |&p| {
                        let gap = (p - prev) as usize;
                        prev = p;
                        gap
                    })
                    .collect::<Vec<_>>()
            })
            .min()
            .unwrap_or(0)
    }

    /// Strictly increasing positions on every axis; no range check.
    pub fn check_monotone(&self) -> Result<()> {
        for (axis, cuts) in self.cuts.iter().enumerate() {
            if cuts.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidSplitting(format!(
                    "cuts on axis {axis} are not strictly increasing: {cuts:?}"
                )));
            }
        }
        Ok(())
    }

    pub fn validate(&self, dims: &[usize]) -> Result<()> {
        if self.cuts.len() != dims.len() {
            return Err(Error::InvalidSplitting(format!(
                "splitting has {} axes, grid has {}",
                self.cuts.len(),
                dims.len()
            )));
        }
        self.check_monotone()?;
        for (axis, (cuts, &n)) in self.cuts.iter().zip(dims).enumerate() {
            if let Some(p) = cuts.iter().find(|&&p| p <= 0 || p >= n as i64) {
                return Err(Error::InvalidSplitting(format!(
                    "cut {p} on axis {axis} is outside (0, {n})"
                )));
            }
        }
        Ok(())
    }

    /// Per-axis bead-index intervals `[lo, hi)` induced by the cuts.
    fn intervals(&self, dims: &[usize]) -> Vec<Vec<(usize, usize)>> {
        self.cuts
            .iter()
            .zip(dims)
            .map(|(cuts, &n)| {
                let mut bounds = Vec::with_capacity(cuts.len() + 2);
                bounds.push(0usize);
                bounds.extend(cuts.iter().map(|&p| p as usize));
                bounds.push(n);
                bounds.windows(2).map(|w| (w[0], w[1])).collect()
            })
            .collect()
    }

    /// Index of the interval containing `coord` on `axis` (number of cuts at
    /// or below it).
    pub fn slab_of(&self, axis: usize, coord: i64) -> usize {
        self.cuts[axis].partition_point(|&p| p <= coord)
    }

    /// Lexicographic box index of the lattice point `coords`.
    pub fn box_index(&self, coords: &[i64]) -> usize {
        let mut idx = 0;
        for (axis, &c) in coords.iter().enumerate() {
            idx = idx * (self.cuts[axis].len() + 1) + self.slab_of(axis, c);
        }
        idx
    }
}

impl fmt::Display for Splitting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.cuts)
    }
}

/// An axis-aligned box of beads, half-open per axis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cuboid {
    pub lo: Vec<usize>,
    pub hi: Vec<usize>,
}

impl Cuboid {
    pub fn new(lo: Vec<usize>, hi: Vec<usize>) -> Self {
        Cuboid { lo, hi }
    }

    pub fn whole(dims: &[usize]) -> Self {
        Cuboid {
            lo: vec![0; dims.len()],
            hi: dims.to_vec(),
        }
    }

    pub fn volume(&self) -> usize {
        self.lo.iter().zip(&self.hi).map(|(l, h)| h - l).product()
    }

    fn check_within(&self, dims: &[usize]) -> Result<()> {
        let ok = self.lo.len() == dims.len()
            && self.hi.len() == dims.len()
            && self
                .lo
                .iter()
                .zip(&self.hi)
                .zip(dims)
                .all(|((l, h), n)| l < h && h <= n);
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidSplitting(format!(
                "box {:?}..{:?} is not inside {dims:?}",
                self.lo, self.hi
            )))
        }
    }
}

/// Family label (0 or 1) of every box, indexed in lexicographic box order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FamilyAssignment {
    pub labels: Vec<u8>,
}

impl FamilyAssignment {
    pub fn new(labels: Vec<u8>) -> Self {
        debug_assert!(labels.iter().all(|&l| l <= 1));
        FamilyAssignment { labels }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn swapped(&self) -> Self {
        FamilyAssignment {
            labels: self.labels.iter().map(|l| 1 - l).collect(),
        }
    }
}

/// Result of the fairness predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fairness {
    Fair,
    Unfair,
    /// Some colour has an odd count, so no splitting can be fair.
    OddCounts,
}

impl Fairness {
    pub fn is_fair(self) -> bool {
        self == Fairness::Fair
    }
}

/// Outcome of a search that may also be ruled out by parity alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome<T> {
    Found(T),
    NotFound,
    /// Colours with odd counts; nothing can be fair.
    OddCounts(Vec<ColorId>),
}

impl<T> Outcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Outcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Outcome::Found(_))
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Outcome<U> {
        match self {
            Outcome::Found(t) => Outcome::Found(f(t)),
            Outcome::NotFound => Outcome::NotFound,
            Outcome::OddCounts(c) => Outcome::OddCounts(c),
        }
    }
}

/// The boxes of `s` over `grid`, in lexicographic order (axis 0 slowest).
pub fn boxes(grid: &NecklaceGrid, s: &Splitting) -> Result<Vec<Cuboid>> {
    s.validate(grid.dims())?;
    let intervals = s.intervals(grid.dims());
    let counts: Vec<usize> = intervals.iter().map(Vec::len).collect();
    let mut out = Vec::with_capacity(s.box_count());
    for_each_coord(&vec![0; counts.len()], &counts, |pick| {
        let (lo, hi) = pick
            .iter()
            .enumerate()
            .map(|(axis, &i)| intervals[axis][i])
            .unzip();
        out.push(Cuboid { lo, hi });
    });
    Ok(out)
}

/// Bead counts per colour inside `b`.
pub fn color_vector(grid: &NecklaceGrid, b: &Cuboid) -> ColorVector {
    let mut counts = ColorVector::zeros(grid.palette());
    for_each_coord(&b.lo, &b.hi, |coords| {
        counts.0[grid.get(coords).index()] += 1
    });
    counts
}

/// Colour vectors of every box of `s`, in box order. One pass over the grid.
pub fn box_color_vectors(grid: &NecklaceGrid, s: &Splitting) -> Result<Vec<ColorVector>> {
    s.validate(grid.dims())?;
    let k = grid.palette();
    // slab lookup per axis: bead index -> slab index
    let slabs: Vec<Vec<usize>> = grid
        .dims()
        .iter()
        .enumerate()
        .map(|(axis, &n)| (0..n).map(|x| s.slab_of(axis, x as i64)).collect())
        .collect();
    let radix: Vec<usize> = s.cuts.iter().map(|c| c.len() + 1).collect();
    let mut out = vec![ColorVector::zeros(k); s.box_count()];
    let mut coords = vec![0usize; grid.dim()];
    for &cell in grid.cells() {
        let mut idx = 0;
        for axis in 0..coords.len() {
            idx = idx * radix[axis] + slabs[axis][coords[axis]];
        }
        out[idx].0[cell.index()] += 1;
        for axis in (0..coords.len()).rev() {
            coords[axis] += 1;
            if coords[axis] < grid.dims()[axis] {
                break;
            }
            coords[axis] = 0;
        }
    }
    Ok(out)
}

fn judge(totals: &ColorVector, pieces: &[ColorVector], a: &FamilyAssignment) -> Result<Fairness> {
    if a.len() != pieces.len() {
        return Err(Error::AssignmentMismatch {
            expected: pieces.len(),
            got: a.len(),
        });
    }
    let Some(half) = totals.half() else {
        return Ok(Fairness::OddCounts);
    };
    let mut family0 = ColorVector::zeros(totals.palette());
    for (piece, &label) in pieces.iter().zip(&a.labels) {
        if label == 0 {
            family0.add_assign(piece);
        }
    }
    Ok(if family0 == half {
        Fairness::Fair
    } else {
        Fairness::Unfair
    })
}

/// Whether family 0 of `a` holds exactly half of every colour of `grid`.
pub fn is_fair(grid: &NecklaceGrid, s: &Splitting, a: &FamilyAssignment) -> Result<Fairness> {
    let pieces = box_color_vectors(grid, s)?;
    judge(&grid.totals(), &pieces, a)
}

/// A point of a [`PointSet`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub coords: Vec<i64>,
    pub color: ColorId,
}

impl Point {
    pub fn new(coords: Vec<i64>, color: ColorId) -> Self {
        Point { coords, color }
    }
}

/// A finite multiset of coloured lattice points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPoints", into = "RawPoints")]
pub struct PointSet {
    dim: usize,
    palette: usize,
    points: Vec<Point>,
}

#[derive(Serialize, Deserialize)]
struct RawPoints {
    palette: usize,
    points: Vec<Vec<i64>>,
}

impl TryFrom<RawPoints> for PointSet {
    type Error = Error;

    fn try_from(raw: RawPoints) -> Result<Self> {
        let dim = raw
            .points
            .first()
            .map(|p| p.len().saturating_sub(1))
            .ok_or_else(|| Error::InvalidPoints("no points".into()))?;
        let points = raw
            .points
            .into_iter()
            .map(|mut p| {
                let color = p
                    .pop()
                    .filter(|c| (0..=u16::MAX as i64).contains(c))
                    .ok_or_else(|| Error::InvalidPoints("bad colour entry".into()))?;
                Ok(Point::new(p, ColorId(color as u16)))
            })
            .collect::<Result<Vec<_>>>()?;
        PointSet::new(dim, raw.palette, points)
    }
}

impl From<PointSet> for RawPoints {
    fn from(ps: PointSet) -> Self {
        RawPoints {
            palette: ps.palette,
            points: ps
                .points
                .into_iter()
                .map(|p| {
                    let mut v = p.coords;
                    v.push(p.color.0 as i64);
                    v
                })
                .collect(),
        }
    }
}

impl PointSet {
    pub fn new(dim: usize, palette: usize, points: Vec<Point>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidPoints("dimension must be at least 1".into()));
        }
        if palette == 0 || palette > u16::MAX as usize {
            return Err(Error::InvalidPoints(format!(
                "palette size {palette} out of range"
            )));
        }
        for p in &points {
            if p.coords.len() != dim {
                return Err(Error::InvalidPoints(format!(
                    "point {:?} does not have {dim} coordinates",
                    p.coords
                )));
            }
            if p.color.index() >= palette {
                return Err(Error::InvalidPoints(format!(
                    "colour {} outside palette of {palette}",
                    p.color.0
                )));
            }
        }
        Ok(PointSet {
            dim,
            palette,
            points,
        })
    }

    /// Single-colour planar set from `(x, y)` pairs.
    pub fn planar(coords: &[(i64, i64)]) -> Self {
        let points = coords
            .iter()
            .map(|&(x, y)| Point::new(vec![x, y], ColorId(0)))
            .collect();
        PointSet {
            dim: 2,
            palette: 1,
            points,
        }
    }

    /// The lattice cells of `grid` as points (bead index as coordinate).
    pub fn from_grid(grid: &NecklaceGrid) -> Self {
        let points = grid
            .cells()
            .iter()
            .enumerate()
            .map(|(i, &c)| Point::new(grid.coords_of(i).into_iter().map(|x| x as i64).collect(), c))
            .collect();
        PointSet {
            dim: grid.dim(),
            palette: grid.palette(),
            points,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn palette(&self) -> usize {
        self.palette
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn totals(&self) -> ColorVector {
        let mut counts = ColorVector::zeros(self.palette);
        for p in &self.points {
            counts.0[p.color.index()] += 1;
        }
        counts
    }

    /// Per-axis `(min, max)` coordinate; `None` when empty.
    pub fn bounding_box(&self) -> Option<Vec<(i64, i64)>> {
        let first = self.points.first()?;
        let mut bb: Vec<(i64, i64)> = first.coords.iter().map(|&c| (c, c)).collect();
        for p in &self.points[1..] {
            for (b, &c) in bb.iter_mut().zip(&p.coords) {
                b.0 = b.0.min(c);
                b.1 = b.1.max(c);
            }
        }
        Some(bb)
    }

    /// Colour vectors of the boxes of `s`, in lexicographic box order.
    pub fn box_color_vectors(&self, s: &Splitting) -> Result<Vec<ColorVector>> {
        if s.dim() != self.dim {
            return Err(Error::InvalidSplitting(format!(
                "splitting has {} axes, point set has {}",
                s.dim(),
                self.dim
            )));
        }
        s.check_monotone()?;
        let mut out = vec![ColorVector::zeros(self.palette); s.box_count()];
        for p in &self.points {
            out[s.box_index(&p.coords)].0[p.color.index()] += 1;
        }
        Ok(out)
    }

    /// Point-count analogue of [`is_fair`].
    pub fn is_fair(&self, s: &Splitting, a: &FamilyAssignment) -> Result<Fairness> {
        let pieces = self.box_color_vectors(s)?;
        judge(&self.totals(), &pieces, a)
    }

    pub fn translated(&self, offset: &[i64]) -> PointSet {
        let points = self
            .points
            .iter()
            .map(|p| {
                Point::new(
                    p.coords.iter().zip(offset).map(|(c, o)| c + o).collect(),
                    p.color,
                )
            })
            .collect();
        PointSet {
            dim: self.dim,
            palette: self.palette,
            points,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(w: &str) -> NecklaceGrid {
        NecklaceGrid::from_word(w).unwrap()
    }

    fn cut1(p: &[i64]) -> Splitting {
        Splitting::new(vec![p.to_vec()])
    }

    fn c(v: u16) -> ColorId {
        ColorId(v)
    }

    #[test]
    fn boxes_single_cut() {
        let b = boxes(&word("aabb"), &cut1(&[2])).unwrap();
        assert_eq!(
            b,
            vec![Cuboid::new(vec![0], vec![2]), Cuboid::new(vec![2], vec![4])]
        );
    }

    #[test]
    fn boxes_two_cuts() {
        let b = boxes(&word("aabb"), &cut1(&[1, 3])).unwrap();
        let ranges: Vec<_> = b.iter().map(|b| (b.lo[0], b.hi[0])).collect();
        assert_eq!(ranges, vec![(0, 1), (1, 3), (3, 4)]);
    }

    #[test]
    fn boxes_two_dimensional() {
        let g = NecklaceGrid::from_rows(2, &[vec![c(0), c(1)], vec![c(1), c(0)]]).unwrap();
        let b = boxes(&g, &Splitting::new(vec![vec![1], vec![]])).unwrap();
        assert_eq!(
            b,
            vec![
                Cuboid::new(vec![0, 0], vec![1, 2]),
                Cuboid::new(vec![1, 0], vec![2, 2])
            ]
        );
    }

    #[test]
    fn boxes_rejects_out_of_range() {
        assert!(matches!(
            boxes(&word("aabb"), &cut1(&[4])),
            Err(Error::InvalidSplitting(_))
        ));
        assert!(boxes(&word("aabb"), &cut1(&[0])).is_err());
        assert!(boxes(&word("aabb"), &cut1(&[2, 2])).is_err());
    }

    #[test]
    fn color_vectors() {
        let g = word("aabb");
        assert_eq!(
            color_vector(&g, &Cuboid::new(vec![0], vec![2])),
            ColorVector(vec![2, 0])
        );
        assert_eq!(
            color_vector(&g, &Cuboid::new(vec![1], vec![3])),
            ColorVector(vec![1, 1])
        );
        let sq = NecklaceGrid::from_rows(2, &[vec![c(0), c(1)], vec![c(1), c(0)]]).unwrap();
        assert_eq!(
            color_vector(&sq, &Cuboid::whole(sq.dims())),
            ColorVector(vec![2, 2])
        );
    }

    #[test]
    fn fairness_examples() {
        let fair = is_fair(
            &word("abab"),
            &cut1(&[2]),
            &FamilyAssignment::new(vec![0, 1]),
        )
        .unwrap();
        assert_eq!(fair, Fairness::Fair);

        for labels in [vec![0, 1], vec![1, 0]] {
            let r = is_fair(&word("aabb"), &cut1(&[2]), &FamilyAssignment::new(labels)).unwrap();
            assert_eq!(r, Fairness::Unfair);
        }

        let r = is_fair(
            &word("aabb"),
            &cut1(&[1, 3]),
            &FamilyAssignment::new(vec![1, 0, 1]),
        )
        .unwrap();
        assert_eq!(r, Fairness::Fair);
    }

    #[test]
    fn fairness_flags_odd_counts_and_missing_boxes() {
        let r = is_fair(
            &word("aab"),
            &cut1(&[1]),
            &FamilyAssignment::new(vec![0, 1]),
        )
        .unwrap();
        assert_eq!(r, Fairness::OddCounts);
        let err = is_fair(&word("abab"), &cut1(&[2]), &FamilyAssignment::new(vec![0])).unwrap_err();
        assert_eq!(
            err,
            Error::AssignmentMismatch {
                expected: 2,
                got: 1
            }
        );
    }

    #[test]
    fn metrics() {
        let s = Splitting::new(vec![vec![1, 3], vec![2]]);
        assert_eq!((s.size(), s.total(), s.granularity(&[4, 4])), (2, 3, 1));
        let e = Splitting::empty(2);
        assert_eq!((e.size(), e.total(), e.granularity(&[4, 4])), (0, 0, 4));
        assert_eq!(cut1(&[2]).granularity(&[6]), 2);
    }

    #[test]
    fn grid_json_round_trip() {
        let g = NecklaceGrid::from_rows(3, &[vec![c(0), c(2)], vec![c(1), c(0)]]).unwrap();
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(json, r#"{"dims":[2,2],"palette":3,"cells":[0,2,1,0]}"#);
        let back: NecklaceGrid = serde_json::from_str(&json).unwrap();
        assert_eq!(back, g);
        assert!(
            serde_json::from_str::<NecklaceGrid>(r#"{"dims":[3],"palette":2,"cells":[0,1]}"#)
                .is_err()
        );
        assert!(
            serde_json::from_str::<NecklaceGrid>(r#"{"dims":[2],"palette":2,"cells":[0,2]}"#)
                .is_err()
        );
    }

    #[test]
    fn point_json_round_trip() {
        let ps: PointSet =
            serde_json::from_str(r#"{"palette":2,"points":[[0,0,1],[3,-1,0]]}"#).unwrap();
        assert_eq!(ps.dim(), 2);
        assert_eq!(ps.points()[1], Point::new(vec![3, -1], c(0)));
        assert_eq!(
            serde_json::to_string(&ps).unwrap(),
            r#"{"palette":2,"points":[[0,0,1],[3,-1,0]]}"#
        );
        assert!(serde_json::from_str::<PointSet>(r#"{"palette":1,"points":[[0,0,1]]}"#).is_err());
    }

    #[test]
    fn word_shorthand() {
        let g = word("abca");
        assert_eq!(g.palette(), 3);
        assert_eq!(g.to_word().as_deref(), Some("abca"));
        assert!(NecklaceGrid::from_word("aB").is_err());
        assert!(NecklaceGrid::from_word("").is_err());
    }

    #[test]
    fn display_is_one_based() {
        let g = NecklaceGrid::from_rows(2, &[vec![c(0), c(1)], vec![c(1), c(0)]]).unwrap();
        assert_eq!(g.to_string(), "1 2\n2 1");
    }

    #[test]
    fn point_boxes_use_half_offset_lines() {
        let ps = PointSet::planar(&[(0, 0), (1, 0), (1, 1), (0, 1)]);
        let s = Splitting::new(vec![vec![1], vec![]]);
        let v = ps.box_color_vectors(&s).unwrap();
        assert_eq!(v, vec![ColorVector(vec![2]), ColorVector(vec![2])]);
        assert!(ps
            .is_fair(&s, &FamilyAssignment::new(vec![0, 1]))
            .unwrap()
            .is_fair());
    }
}
