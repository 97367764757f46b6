// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.


//! Graphons on the unit square: sampling, triangle densities and the
//! cell-based triangle-free repair.

use std::fmt::{self, Write as _};

use rand::Rng;

use crate::error::{Error, Result};
use crate::format::Lines;
use crate::hypercore::{Color, Hypergraph, Palette};
use crate::properties::distance;
use crate::rng;

/// Named graphons; each must be a pure function.
pub const NAMES: &[&str] = &["zero", "one", "half", "complete-bipartite"];

#[derive(Clone)]
enum Repr {
    /// `m x m` values, row major, over half-open cells.
    Step { m: usize, values: Vec<f64> },
    Named { name: &'static str, f: fn(f64, f64) -> f64 },
}

#[derive(Clone)]
pub struct Graphon {
    repr: Repr,
    symmetric: bool,
}

impl fmt::Debug for Graphon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Step { m, .. } => write!(f, "Graphon(step {m})"),
            Repr::Named { name, .. } => write!(f, "Graphon({name})"),
        }
    }
}

fn straddles(x: f64, y: f64) -> f64 {
    ((x < 0.5) != (y < 0.5)) as u8 as f64
}

impl Graphon {
    pub fn step(m: usize, values: Vec<f64>) -> Result<Self> {
        if m == 0 || values.len() != m * m {
            return Err(Error::InvalidParameter(format!("step graphon needs {m}x{m} values")));
        }
        if let Some(v) = values.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(Error::InvalidParameter(format!("graphon value {v} outside [0, 1]")));
        }
        let symmetric = (0..m).all(|i| (0..i).all(|j| values[i * m + j] == values[j * m + i]));
        Ok(Graphon { repr: Repr::Step { m, values }, symmetric })
    }

    pub fn constant(p: f64) -> Result<Self> {
        Self::step(1, vec![p])
    }

    pub fn complete_bipartite() -> Self {
        Graphon { repr: Repr::Named { name: "complete-bipartite", f: straddles }, symmetric: true }
    }

    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "zero" => Self::constant(0.0),
            "one" => Self::constant(1.0),
            "half" => Self::constant(0.5),
            "complete-bipartite" => Ok(Self::complete_bipartite()),
            _ => Err(Error::Unknown { kind: "graphon", name: name.to_string() }),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        match &self.repr {
            Repr::Step { m, values } => {
                let cell = |t: f64| ((t * *m as f64) as usize).min(m - 1);
                values[cell(x) * m + cell(y)]
            }
            Repr::Named { f, .. } => f(x, y),
        }
    }
}

/// GWN text; only step graphons have one.
pub fn write_gwn(p: &Graphon) -> Result<String> {
    let Repr::Step { m, values } = &p.repr else {
        return Err(Error::InvalidParameter(format!("{p:?} has no step form")));
    };
    let mut out = format!("GWN 1\nm {m}\n");
    for row in values.chunks(*m) {
        let cells: Vec<String> = row.iter().map(f64::to_string).collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    }
    Ok(out)
}

pub fn read_gwn(text: &str) -> Result<Graphon> {
    let mut lines = Lines::new("GWN", text);
    let version: u32 = {
        let f = lines.expect("GWN")?;
        lines.single(&f)?
    };
    if version != 1 {
        return Err(lines.error(format!("unsupported GWN version {version}")));
    }
    let m: usize = {
        let f = lines.expect("m")?;
        lines.single(&f)?
    };
    let mut values = Vec::with_capacity(m * m);
    for _ in 0..m {
        let Some(row) = lines.next_line() else {
            return Err(lines.error("missing grid row"));
        };
        if row.len() != m {
            return Err(lines.error(format!("expected {m} values, found {}", row.len())));
        }
        values.extend(lines.parse_all::<f64>(&row)?);
    }
    if lines.peek().is_some() {
        lines.next_line();
        return Err(lines.error("trailing input"));
    }
    Graphon::step(m, values).map_err(|e| lines.error(e.to_string()))
}

/// `n` uniform vertex colors and the graph with each pair `u < v` joined
/// with probability `p(c_u, c_v)`.
pub fn sample_graphon_graph(p: &Graphon, n: usize, seed: u64) -> (Vec<f64>, Hypergraph) {
    let mut rc = rng::stream(seed, 0);
    let colors: Vec<f64> = (0..n).map(|_| rc.gen::<f64>()).collect();
    let mut g = Hypergraph::new_undirected(Palette::digraph(), n);
    let mut re = rng::stream(seed, 1);
    let (_, e) = g.level_data_mut(2);
    let mut rank = 0;
    for v in 1..n {
        for u in 0..v {
            e[rank] = (re.gen::<f64>() < p.eval(colors[u], colors[v])) as Color;
            rank += 1;
        }
    }
    (colors, g)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub std_error: f64,
}

/// Monte Carlo mean of `p(x,y) p(y,z) p(z,x)`.
pub fn triangle_density(p: &Graphon, samples: usize, seed: u64) -> Result<Estimate> {
    if samples == 0 {
        return Err(Error::InvalidParameter("need at least one sample".into()));
    }
    let mut r = rng::rng(seed);
    let (mut sum, mut sq) = (0.0, 0.0);
    for _ in 0..samples {
        let (x, y, z): (f64, f64, f64) = (r.gen(), r.gen(), r.gen());
        let t = p.eval(x, y) * p.eval(y, z) * p.eval(z, x);
        sum += t;
        sq += t * t;
    }
    let k = samples as f64;
    let mean = sum / k;
    let var = if samples > 1 { ((sq - k * mean * mean) / (k - 1.0)).max(0.0) } else { 0.0 };
    Ok(Estimate { mean, std_error: (var / k).sqrt() })
}

/// Triangles of the underlying graph, an edge in either direction counting.
pub fn count_triangles(g: &Hypergraph) -> u64 {
    let n = g.n();
    let words = n.div_ceil(64).max(1);
    let mut adj = vec![0u64; n * words];
    for u in 0..n {
        for v in u + 1..n {
            if g.get2(u, v) != 0 || g.get2(v, u) != 0 {
                adj[u * words + v / 64] |= 1 << (v % 64);
                adj[v * words + u / 64] |= 1 << (u % 64);
            }
        }
    }
    let mut count = 0u64;
    for u in 0..n {
        for v in u + 1..n {
            if adj[u * words + v / 64] >> (v % 64) & 1 == 1 {
                let (ru, rv) = (&adj[u * words..(u + 1) * words], &adj[v * words..(v + 1) * words]);
                count += ru.iter().zip(rv).map(|(a, b)| (a & b).count_ones() as u64).sum::<u64>();
            }
        }
    }
    count / 3
}

/// `N` equal cells of `[0, 1)` with one representative each, and the
/// repair threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct CellAssignment {
    zeta: Vec<f64>,
    sigma: f64,
}

fn check_sigma(sigma: f64) -> Result<()> {
    if sigma > 0.0 && sigma < 0.5 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("sigma = {sigma} outside (0, 1/2)")))
    }
}

impl CellAssignment {
    /// Draws each representative uniformly in its cell.
    pub fn random(cells: usize, sigma: f64, seed: u64) -> Result<Self> {
        if cells == 0 {
            return Err(Error::InvalidParameter("need at least one cell".into()));
        }
        let mut r = rng::rng(seed);
        let zeta = (0..cells)
            .map(|i| {
                let z = (i as f64 + r.gen::<f64>()) / cells as f64;
                // rounding can reach the next cell's left end
                if (z * cells as f64) as usize > i { i as f64 / cells as f64 } else { z }
            })
            .collect();
        Self::new(zeta, sigma)
    }

    pub fn new(zeta: Vec<f64>, sigma: f64) -> Result<Self> {
        check_sigma(sigma)?;
        let n = zeta.len();
        if n == 0 {
            return Err(Error::InvalidParameter("need at least one cell".into()));
        }
        for (i, &z) in zeta.iter().enumerate() {
            if !(z >= i as f64 / n as f64 && z < (i + 1) as f64 / n as f64) {
                return Err(Error::InvalidParameter(format!("representative {z} outside cell {i}")));
            }
        }
        Ok(CellAssignment { zeta, sigma })
    }

    pub fn cells(&self) -> usize {
        self.zeta.len()
    }

    pub fn zeta(&self) -> &[f64] {
        &self.zeta
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn cell_of(&self, color: f64) -> usize {
        ((color * self.cells() as f64) as usize).min(self.cells() - 1)
    }
}

/// `p(ζ_a, ζ_b) p(ζ_b, ζ_c) p(ζ_c, ζ_a)` summed over ordered triples of
/// distinct vertices, with `cell_of[v]` the cell of `v`.
pub fn zeta_triangle_sum(p: &Graphon, cells: &CellAssignment, cell_of: &[usize]) -> f64 {
    let k = cells.cells();
    let mut count = vec![0f64; k];
    for &c in cell_of {
        count[c] += 1.0;
    }
    let used: Vec<usize> = (0..k).filter(|&c| count[c] > 0.0).collect();
    let z = cells.zeta();
    let q = |a: usize, b: usize| p.eval(z[a], z[b]);
    let mut sum = 0.0;
    for &a in &used {
        for &b in &used {
            let qab = q(a, b);
            if qab == 0.0 {
                continue;
            }
            for &c in &used {
                // distinct vertices: falling factorials on repeated cells
                let ways = match (a == b, b == c, a == c) {
                    (true, true, _) => count[a] * (count[a] - 1.0) * (count[a] - 2.0),
                    (true, false, _) => count[a] * (count[a] - 1.0) * count[c],
                    (false, true, _) => count[a] * count[b] * (count[b] - 1.0),
                    (false, false, true) => count[a] * (count[a] - 1.0) * count[b],
                    (false, false, false) => count[a] * count[b] * count[c],
                };
                if ways > 0.0 {
                    sum += ways * qab * q(b, c) * q(c, a);
                }
            }
        }
    }
    sum
}

/// Which of the five repair cases a pair falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RepairClause {
    /// Same cell: excluded.
    SameCell,
    /// Present and `p >= σ`: kept.
    Keep,
    /// Present and `p < σ`: dropped.
    Drop,
    /// Absent and `p > 1 - σ`: added.
    Add,
    /// Absent and `p <= 1 - σ`: left out.
    Absent,
}

impl RepairClause {
    pub fn classify(present: bool, same_cell: bool, pz: f64, sigma: f64) -> Self {
        match (same_cell, present) {
            (true, _) => RepairClause::SameCell,
            (false, true) if pz >= sigma => RepairClause::Keep,
            (false, true) => RepairClause::Drop,
            (false, false) if pz > 1.0 - sigma => RepairClause::Add,
            (false, false) => RepairClause::Absent,
        }
    }

    pub fn edge(self) -> bool {
        matches!(self, RepairClause::Keep | RepairClause::Add)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TriangleRepairReport {
    pub cells: CellAssignment,
    pub edit_fraction: f64,
    pub residual_triangles: u64,
    pub zeta_sum: f64,
}

/// Rebuilds `G` cell by cell: a pair in distinct cells `i, j` keeps its
/// edge when `p(ζ_i, ζ_j) >= σ` and gains one when `p(ζ_i, ζ_j) > 1 - σ`;
/// everything else, all same-cell pairs included, is left out.
pub fn repair_triangle_free(
    g: &Hypergraph,
    colors: &[f64],
    p: &Graphon,
    cells: usize,
    sigma: f64,
    seed: u64,
) -> Result<(Hypergraph, TriangleRepairReport)> {
    check_sigma(sigma)?;
    let n = g.n();
    if colors.len() != n {
        return Err(Error::SizeMismatch { expected: n, found: colors.len() });
    }
    if let Some(c) = colors.iter().find(|c| !(0.0..=1.0).contains(*c)) {
        return Err(Error::InvalidParameter(format!("vertex color {c} outside [0, 1]")));
    }
    let assignment = CellAssignment::random(cells, sigma, seed)?;
    let cell_of: Vec<usize> = colors.iter().map(|&c| assignment.cell_of(c)).collect();
    let z = assignment.zeta();
    let mut out = Hypergraph::new_undirected(g.palette_arc().clone(), n);
    for u in 0..n {
        for v in u + 1..n {
            let present = g.get2(u, v) != 0 || g.get2(v, u) != 0;
            let (a, b) = (cell_of[u], cell_of[v]);
            let clause = RepairClause::classify(present, a == b, p.eval(z[a], z[b]), sigma);
            if clause.edge() {
                out.set_subset(&[u, v], 1)?;
            }
        }
    }
    let report = TriangleRepairReport {
        edit_fraction: distance(&out, g)?,
        residual_triangles: count_triangles(&out),
        zeta_sum: zeta_triangle_sum(p, &assignment, &cell_of),
        cells: assignment,
    };
    Ok((out, report))
}
