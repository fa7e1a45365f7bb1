//! Exact bookkeeping for colourings whose measures are formally independent.
//!
//! Every cell `q` of an `N^d` grid of unit cubes gets a background colour on
//! the part outside a small centred cube `W'` of side `2δ`; `W'` is white
//! except for one tiny cube `V^η` per colour `η`, centred on the diagonal of
//! `W'` at offset `(2η+1)δ/k` with half-side `r[q][η]`, so that its volume
//! is `2^d m[q][η]` with `m = r^d`.
//!
//! Quantities are polynomials with rational coefficients in the symbol `A`
//! (the background measure of one cell) and the roots `r[q][η]`. Distinct
//! monomials are treated as independent over the rationals, which is what
//! choosing the roots and `A` algebraically independent gives. Nothing is
//! ever evaluated numerically; a fairness equation holds exactly when every
//! coefficient of the difference between the two families vanishes.
//!
//! Coordinates are compared formally: rational parts first, and equal
//! rational parts by the convention that all roots lie below `δ/k` and
//! increase with their index.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bounds::d_value;
use crate::error::{Error, Result};
use crate::model::ColorId;

pub type Rational = Ratio<i128>;

/// Default cap on the number of fairness equations examined.
pub const DEFAULT_EQUATION_BUDGET: u128 = 50_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    /// background measure of one cell
    A,
    /// half-side of the cube of colour `color` in cell `cell`
    Root { cell: usize, color: usize },
}

/// A product of symbols with positive exponents; the empty product is 1.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(Symbol, u32)>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn power(s: Symbol, e: u32) -> Self {
        if e == 0 {
            Monomial::unit()
        } else {
            Monomial(vec![(s, e)])
        }
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    /// Contains some root, i.e. is not of the form `A^e`.
    pub fn has_root(&self) -> bool {
        self.0.iter().any(|(s, _)| matches!(s, Symbol::Root { .. }))
    }

    /// Exactly `m[q][η] = r[q][η]^d`.
    pub fn is_m(&self, d: usize) -> bool {
        matches!(self.0.as_slice(), [(Symbol::Root { .. }, e)] if *e as usize == d)
    }

    fn times(&self, other: &Monomial) -> Monomial {
        let mut map: BTreeMap<Symbol, u32> = self.0.iter().copied().collect();
        for &(s, e) in &other.0 {
            *map.entry(s).or_insert(0) += e;
        }
        Monomial(map.into_iter().collect())
    }

    /// Human-readable form; `r^d` is written as `m`.
    pub fn render(&self, d: usize) -> String {
        if self.is_unit() {
            return "1".into();
        }
        self.0
            .iter()
            .map(|&(s, e)| match s {
                Symbol::A if e == 1 => "A".to_string(),
                Symbol::A => format!("A^{e}"),
                Symbol::Root { cell, color } if e as usize == d => format!("m[{cell}][{color}]"),
                Symbol::Root { cell, color } if e == 1 => format!("r[{cell}][{color}]"),
                Symbol::Root { cell, color } => format!("r[{cell}][{color}]^{e}"),
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Rational combination of monomials; zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SymbolicQuantity {
    terms: BTreeMap<Monomial, Rational>,
}

impl SymbolicQuantity {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(q: Rational) -> Self {
        Self::term(Monomial::unit(), q)
    }

    pub fn term(m: Monomial, q: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(m, q);
        }
        SymbolicQuantity { terms }
    }

    pub fn symbol(s: Symbol) -> Self {
        Self::term(Monomial::power(s, 1), Rational::one())
    }

    /// `m[cell][color]` in dimension `d`.
    pub fn m(cell: usize, color: usize, d: usize) -> Self {
        Self::term(
            Monomial::power(Symbol::Root { cell, color }, d as u32),
            Rational::one(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).copied().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn scale(&self, r: Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        SymbolicQuantity {
            terms: self.terms.iter().map(|(m, q)| (m.clone(), q * r)).collect(),
        }
    }

    fn add_term(&mut self, m: Monomial, q: Rational) {
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += q;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add_assign(&mut self, other: &SymbolicQuantity) {
        for (m, q) in &other.terms {
            self.add_term(m.clone(), *q);
        }
    }

    pub fn render(&self, d: usize) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, q)) in self.terms.iter().enumerate() {
            match (i, q.is_negative()) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mag = q.abs();
            if m.is_unit() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&m.render(d));
            } else {
                out.push_str(&format!("{mag}*{}", m.render(d)));
            }
        }
        out
    }
}

impl Add for &SymbolicQuantity {
    type Output = SymbolicQuantity;
    fn add(self, rhs: &SymbolicQuantity) -> SymbolicQuantity {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl Sub for &SymbolicQuantity {
    type Output = SymbolicQuantity;
    fn sub(self, rhs: &SymbolicQuantity) -> SymbolicQuantity {
        self + &-rhs
    }
}

impl Neg for &SymbolicQuantity {
    type Output = SymbolicQuantity;
    fn neg(self) -> SymbolicQuantity {
        self.scale(-Rational::one())
    }
}

impl Mul for &SymbolicQuantity {
    type Output = SymbolicQuantity;
    fn mul(self, rhs: &SymbolicQuantity) -> SymbolicQuantity {
        let mut out = SymbolicQuantity::zero();
        for (a, p) in &self.terms {
            for (b, q) in &rhs.terms {
                out.add_term(a.times(b), p * q);
            }
        }
        out
    }
}

impl fmt::Display for SymbolicQuantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(1))
    }
}

/// A coordinate `rational ± root` (or just `rational`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coord {
    pub rational: Rational,
    /// sign and root symbol
    pub root: Option<(i8, Symbol)>,
}

impl Coord {
    pub fn rational(q: Rational) -> Self {
        Coord {
            rational: q,
            root: None,
        }
    }

    fn as_quantity(&self) -> SymbolicQuantity {
        let mut q = SymbolicQuantity::constant(self.rational);
        if let Some((sign, s)) = self.root {
            q.add_term(Monomial::power(s, 1), Rational::from_integer(sign as i128));
        }
        q
    }

    pub fn render(&self, d: usize) -> String {
        let mut out = self.rational.to_string();
        if let Some((sign, s)) = self.root {
            out.push(if sign < 0 { '-' } else { '+' });
            out.push_str(&Monomial::power(s, 1).render(d));
        }
        out
    }
}

impl Ord for Coord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rational.cmp(&other.rational).then_with(|| {
            let sign = |c: &Coord| c.root.map_or(0, |(s, _)| s);
            let (a, b) = (sign(self), sign(other));
            if a != b || a == 0 {
                return a.cmp(&b);
            }
            let (ra, rb) = (self.root.unwrap().1, other.root.unwrap().1);
            // larger index means larger root
            if a > 0 {
                ra.cmp(&rb)
            } else {
                rb.cmp(&ra)
            }
        })
    }
}

impl PartialOrd for Coord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Length of `[lo, hi) ∩ [a, b)`, or `None` when empty.
fn overlap(lo: &Coord, hi: &Coord, a: &Coord, b: &Coord) -> Option<SymbolicQuantity> {
    let start = lo.max(a);
    let end = hi.min(b);
    (start < end).then(|| &end.as_quantity() - &start.as_quantity())
}

/// The colouring of `[0, N)^d` described in the module docs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicColoring {
    pub d: usize,
    pub t: usize,
    pub n: usize,
    pub k: usize,
    pub delta: Rational,
    pub white: ColorId,
    /// background colour of every cell, row-major
    pub background: Vec<ColorId>,
}

/// Builds the colouring for `d ∈ {1, 2}`, `N ≥ 2` and `k ≥ 1`; cells get
/// background colours `1, 2, …` cyclically, skipping white (colour 0).
pub fn build_construction(d: usize, t: usize, n: usize, k: usize) -> Result<SymbolicColoring> {
    if !(1..=2).contains(&d) {
        return Err(Error::Unsupported(format!("construction in dimension {d}")));
    }
    if n < 2 || k == 0 {
        return Err(Error::Unsupported(format!(
            "construction with N = {n}, k = {k}"
        )));
    }
    let cells = n.pow(d as u32);
    let background = (0..cells)
        .map(|q| ColorId(if k == 1 { 0 } else { 1 + (q % (k - 1)) as u16 }))
        .collect();
    Ok(SymbolicColoring {
        d,
        t,
        n,
        k,
        delta: Rational::new(1, 4),
        white: ColorId(0),
        background,
    })
}

impl SymbolicColoring {
    pub fn cells(&self) -> usize {
        self.n.pow(self.d as u32)
    }

    fn cell_coords(&self, mut cell: usize) -> Vec<usize> {
        let mut out = vec![0; self.d];
        for axis in (0..self.d).rev() {
            out[axis] = cell % self.n;
            cell /= self.n;
        }
        out
    }

    fn w_lo(&self, q: usize) -> Rational {
        Rational::from_integer(q as i128) + Rational::new(1, 2) - self.delta
    }

    fn v_center(&self, q: usize, color: usize) -> Rational {
        self.w_lo(q) + self.delta * Rational::new(2 * color as i128 + 1, self.k as i128)
    }

    /// Geometric volume of the background of one cell.
    fn background_volume(&self) -> Rational {
        Rational::one() - (self.delta * 2).pow(self.d as i32)
    }

    fn white_cube_volume(&self) -> Rational {
        (self.delta * 2).pow(self.d as i32)
    }

    /// Whole-cell measures: background `A`, white `(2δ)^d - Σ 2^d m`, and
    /// `2^d m[q][η]` for each small cube.
    pub fn region_measures(&self, cell: usize) -> Vec<(ColorId, SymbolicQuantity)> {
        let two_d = Rational::from_integer(1 << self.d);
        let mut white = SymbolicQuantity::constant(self.white_cube_volume());
        let mut out = vec![(self.background[cell], SymbolicQuantity::symbol(Symbol::A))];
        for eta in 0..self.k {
            let v = SymbolicQuantity::m(cell, eta, self.d).scale(two_d);
            white = &white - &v;
            out.push((ColorId(eta as u16), v));
        }
        out.insert(1, (self.white, white));
        out
    }

    /// Total measure of every colour.
    pub fn color_totals(&self) -> Vec<SymbolicQuantity> {
        let mut out = vec![SymbolicQuantity::zero(); self.k];
        for cell in 0..self.cells() {
            for (c, q) in self.region_measures(cell) {
                out[c.index()].add_assign(&q);
            }
        }
        out
    }

    /// Sorted cut candidates on `axis`: interior grid lines and the faces of
    /// every small cube.
    pub fn candidate_cuts(&self, axis: usize) -> Vec<Coord> {
        let mut out: Vec<Coord> = (1..self.n)
            .map(|q| Coord::rational(Rational::from_integer(q as i128)))
            .collect();
        for cell in 0..self.cells() {
            let q = self.cell_coords(cell)[axis];
            for eta in 0..self.k {
                let center = self.v_center(q, eta);
                let root = Symbol::Root { cell, color: eta };
                out.push(Coord {
                    rational: center,
                    root: Some((-1, root)),
                });
                out.push(Coord {
                    rational: center,
                    root: Some((1, root)),
                });
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Per-colour measures of the box `Π [lo_i, hi_i)`, and the background
    /// piece it cuts from every cell it meets.
    pub fn box_measures(
        &self,
        lo: &[Coord],
        hi: &[Coord],
    ) -> (Vec<SymbolicQuantity>, Vec<(usize, SymbolicQuantity)>) {
        let mut per_color = vec![SymbolicQuantity::zero(); self.k];
        let mut background = Vec::new();
        let scale_a = &SymbolicQuantity::symbol(Symbol::A)
            * &SymbolicQuantity::constant(self.background_volume().recip());
        let volume = |bounds: &dyn Fn(usize) -> (Coord, Coord)| -> Option<SymbolicQuantity> {
            let mut v = SymbolicQuantity::constant(Rational::one());
            for axis in 0..self.d {
                let (a, b) = bounds(axis);
                v = &v * &overlap(&lo[axis], &hi[axis], &a, &b)?;
            }
            Some(v)
        };
        for cell in 0..self.cells() {
            let qc = self.cell_coords(cell);
            let cell_vol = volume(&|axis| {
                let q = qc[axis] as i128;
                (Coord::rational(q.into()), Coord::rational((q + 1).into()))
            });
            let Some(cell_vol) = cell_vol else { continue };
            let w_vol = volume(&|axis| {
                let a = self.w_lo(qc[axis]);
                (Coord::rational(a), Coord::rational(a + self.delta * 2))
            })
            .unwrap_or_default();
            let mut cubes = SymbolicQuantity::zero();
            for eta in 0..self.k {
                let root = Symbol::Root { cell, color: eta };
                let v = volume(&|axis| {
                    let c = self.v_center(qc[axis], eta);
                    (
                        Coord {
                            rational: c,
                            root: Some((-1, root)),
                        },
                        Coord {
                            rational: c,
                            root: Some((1, root)),
                        },
                    )
                })
                .unwrap_or_default();
                cubes.add_assign(&v);
                per_color[eta].add_assign(&v);
            }
            per_color[self.white.index()].add_assign(&(&w_vol - &cubes));
            let back = &(&cell_vol - &w_vol) * &scale_a;
            if !back.is_zero() {
                per_color[self.background[cell].index()].add_assign(&back);
                background.push((cell, back));
            }
        }
        (per_color, background)
    }
}

/// One failed fairness equation and the coefficient that breaks it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub cuts: Vec<Vec<String>>,
    pub labels: Vec<u8>,
    pub color: ColorId,
    pub monomial: String,
    pub coefficient: String,
}

/// Aggregate transcript of an exhaustive check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasureCertificate {
    pub d: usize,
    pub t: usize,
    pub n: usize,
    pub k: usize,
    pub delta: String,
    /// cut candidates per axis
    pub candidates: Vec<usize>,
    pub splittings: u64,
    /// (splitting, labeling) pairs examined
    pub equations: u64,
    /// equations refuted through a coefficient that involves a root
    pub refuted_by_independence: u64,
    /// equations refuted only through their rational or `A` parts
    pub refuted_otherwise: u64,
    /// the refuting colour, counted per colour
    pub witnesses_by_color: Vec<u64>,
    pub conservation_holds: bool,
    /// largest rank of the background pieces of split cells, taken
    /// together with `A`, minus one
    pub alpha_rank_max: usize,
    pub d_value: i128,
    /// the first few refutations in enumeration order
    pub sample: Vec<Witness>,
}

impl MeasureCertificate {
    pub fn all_via_independence(&self) -> bool {
        self.refuted_otherwise == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MeasureOutcome {
    Certificate(MeasureCertificate),
    Counterexample {
        cuts: Vec<Vec<String>>,
        labels: Vec<u8>,
    },
}

impl MeasureOutcome {
    pub fn is_certificate(&self) -> bool {
        matches!(self, MeasureOutcome::Certificate(_))
    }
}

const SAMPLE_LEN: usize = 32;

fn subsets_up_to(n: usize, t: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for size in 0..=t.min(n) {
        rec(0, n, size, &mut Vec::new(), &mut out);
    }
    out
}

/// Rank over the rationals of a list of quantities.
pub fn rank(quantities: &[SymbolicQuantity]) -> usize {
    let mut columns: BTreeMap<&Monomial, usize> = BTreeMap::new();
    for q in quantities {
        for (m, _) in q.terms() {
            let next = columns.len();
            columns.entry(m).or_insert(next);
        }
    }
    let mut rows: Vec<Vec<Rational>> = quantities
        .iter()
        .map(|q| {
            let mut row = vec![Rational::zero(); columns.len()];
            for (m, c) in q.terms() {
                row[columns[m]] = *c;
            }
            row
        })
        .collect();
    let mut r = 0;
    for col in 0..columns.len() {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let p = rows[r][col];
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col] / p;
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= f * y;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn check_no_fair_on_grid(col: &SymbolicColoring, t: usize) -> Result<MeasureOutcome> {
    check_no_fair_on_grid_with_budget(col, t, DEFAULT_EQUATION_BUDGET)
}

/// Walks every splitting with at most `t` candidate cuts per axis and every
/// labeling of its boxes, and checks the fairness equations exactly.
pub fn check_no_fair_on_grid_with_budget(
    col: &SymbolicColoring,
    t: usize,
    budget: u128,
) -> Result<MeasureOutcome> {
    let d = col.d;
    let candidates: Vec<Vec<Coord>> = (0..d).map(|axis| col.candidate_cuts(axis)).collect();
    let per_axis: Vec<Vec<Vec<usize>>> = candidates
        .iter()
        .map(|c| subsets_up_to(c.len(), t))
        .collect();
    let mut needed: u128 = 1;
    for subsets in &per_axis {
        let weight: u128 = subsets.iter().map(|s| 1u128 << (s.len() + 1)).sum();
        needed = needed.saturating_mul(weight);
    }
    if needed > budget {
        return Err(Error::ResourceExceeded {
            what: "fairness equations",
            needed,
            budget,
        });
    }
    let totals = col.color_totals();
    let mut cert = MeasureCertificate {
        d,
        t,
        n: col.n,
        k: col.k,
        delta: col.delta.to_string(),
        candidates: candidates.iter().map(Vec::len).collect(),
        splittings: 0,
        equations: 0,
        refuted_by_independence: 0,
        refuted_otherwise: 0,
        witnesses_by_color: vec![0; col.k],
        conservation_holds: true,
        alpha_rank_max: 0,
        d_value: d_value(d as u32, t as u32)?,
        sample: Vec::new(),
    };
    let a = SymbolicQuantity::symbol(Symbol::A);
    let mut odometer = vec![0usize; d];
    loop {
        let chosen: Vec<Vec<Coord>> = (0..d)
            .map(|axis| {
                per_axis[axis][odometer[axis]]
                    .iter()
                    .map(|&i| candidates[axis][i].clone())
                    .collect()
            })
            .collect();
        let rendered: Vec<Vec<String>> = chosen
            .iter()
            .map(|cs| cs.iter().map(|c| c.render(d)).collect())
            .collect();
        let bounds: Vec<Vec<Coord>> = chosen
            .iter()
            .map(|cs| {
                let mut b = vec![Coord::rational(Rational::zero())];
                b.extend(cs.iter().cloned());
                b.push(Coord::rational(Rational::from_integer(col.n as i128)));
                b
            })
            .collect();
        let radix: Vec<usize> = bounds.iter().map(|b| b.len() - 1).collect();
        let box_count: usize = radix.iter().product();
        let mut boxes = Vec::with_capacity(box_count);
        let mut pieces_by_cell: BTreeMap<usize, Vec<SymbolicQuantity>> = BTreeMap::new();
        for b in 0..box_count {
            let mut idx = vec![0; d];
            let mut rest = b;
            for axis in (0..d).rev() {
                idx[axis] = rest % radix[axis];
                rest /= radix[axis];
            }
            let lo: Vec<Coord> = (0..d).map(|axis| bounds[axis][idx[axis]].clone()).collect();
            let hi: Vec<Coord> = (0..d)
                .map(|axis| bounds[axis][idx[axis] + 1].clone())
                .collect();
            let (per_color, background) = col.box_measures(&lo, &hi);
            for (cell, piece) in background {
                pieces_by_cell.entry(cell).or_default().push(piece);
            }
            boxes.push(per_color);
        }
        cert.splittings += 1;

        let mut alphas: Vec<SymbolicQuantity> = pieces_by_cell
            .into_values()
            .filter(|p| p.len() > 1)
            .flatten()
            .collect();
        alphas.push(a.clone());
        cert.alpha_rank_max = cert.alpha_rank_max.max(rank(&alphas) - 1);

        for c in 0..col.k {
            let mut sum = SymbolicQuantity::zero();
            for b in &boxes {
                sum.add_assign(&b[c]);
            }
            if sum != totals[c] {
                cert.conservation_holds = false;
            }
        }

        for labels in 0u64..1 << box_count {
            cert.equations += 1;
            let labels: Vec<u8> = (0..box_count)
                .map(|j| (labels >> (box_count - 1 - j) & 1) as u8)
                .collect();
            let mut refutation: Option<(usize, Monomial, Rational)> = None;
            let mut fallback: Option<(usize, Monomial, Rational)> = None;
            for c in 0..col.k {
                let mut fam = [SymbolicQuantity::zero(), SymbolicQuantity::zero()];
                for (b, &l) in boxes.iter().zip(&labels) {
                    fam[l as usize].add_assign(&b[c]);
                }
                let diff = &fam[0] - &fam[1];
                let conserved = &fam[0] + &fam[1] == totals[c];
                if !conserved {
                    cert.conservation_holds = false;
                }
                if let Some((m, q)) = diff.terms().find(|(m, _)| m.has_root()) {
                    refutation = Some((c, m.clone(), *q));
                    break;
                }
                if fallback.is_none() {
                    if let Some((m, q)) = diff.terms().next() {
                        fallback = Some((c, m.clone(), *q));
                    }
                }
            }
            let Some((c, m, q)) = refutation.clone().or(fallback) else {
                return Ok(MeasureOutcome::Counterexample {
                    cuts: rendered,
                    labels,
                });
            };
            if refutation.is_some() {
                cert.refuted_by_independence += 1;
            } else {
                cert.refuted_otherwise += 1;
            }
            cert.witnesses_by_color[c] += 1;
            if cert.sample.len() < SAMPLE_LEN {
                cert.sample.push(Witness {
                    cuts: rendered.clone(),
                    labels,
                    color: ColorId(c as u16),
                    monomial: m.render(d),
                    coefficient: q.to_string(),
                });
            }
        }

        let mut axis = d;
        loop {
            if axis == 0 {
                return Ok(MeasureOutcome::Certificate(cert));
            }
            axis -= 1;
            odometer[axis] += 1;
            if odometer[axis] < per_axis[axis].len() {
                break;
            }
            odometer[axis] = 0;
        }
    }
}
