use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;

use crate::relators::StructuredRelator;
use crate::words::{cyclic_occurrences, lcp, Letter, Word};

/// Which kind of place the walk around the annulus starts from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeedCondition {
    /// The two boundaries share the edge at the seed.
    Coincident,
    /// The boundaries touch at the seed and a region starts there.
    IslandStart,
    /// An interior edge joins the two seed positions.
    Separated,
}

impl SeedCondition {
    pub fn index(self) -> u8 {
        match self {
            SeedCondition::Coincident => 1,
            SeedCondition::IslandStart => 2,
            SeedCondition::Separated => 3,
        }
    }
}

/// A letter position on each boundary and how they face each other.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OppositeEdgeSeed {
    pub outer: u64,
    pub inner: u64,
    pub condition: SeedCondition,
}

/// A region of the annulus. Its boundary, read from the outer end of
/// `edge_in`, is `edge_in^-1 · outer arc · edge_out · (inner arc)^-1`, a
/// rotation of `r` or `r^-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub relator: Arc<StructuredRelator>,
    pub inverse: bool,
    /// Letter offset in `r^{±1}` where the boundary reading starts.
    pub offset: u64,
    /// Letter spans on the rotated outer and inner boundaries.
    pub outer: (u64, u64),
    pub inner: (u64, u64),
    pub edge_in: Word,
    pub edge_out: Word,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cell {
    /// The two boundaries run together.
    Shared { outer: (u64, u64), inner: (u64, u64) },
    Region(Region),
}

/// Annular diagram between the rotation `outer` of `u` and the rotation
/// `inner` of `v`, as the cyclic sequence of cells met going round.
/// Reading the cells gives `outer = base · inner · base^-1` in the group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyDiagram {
    pub outer: Word,
    pub inner: Word,
    pub outer_rotation: u64,
    pub inner_rotation: u64,
    pub base: Word,
    pub cells: Vec<Cell>,
}

impl ConjugacyDiagram {
    pub fn regions(&self) -> impl Iterator<Item = &Region> {
        self.cells.iter().filter_map(|c| match c {
            Cell::Region(r) => Some(r),
            Cell::Shared { .. } => None,
        })
    }

    /// `W` with `W u W^-1 = v` in the group, read off the seed path.
    pub fn witness(&self, u: &Word, v: &Word) -> Word {
        let a = u.slice(0, self.outer_rotation);
        let b = v.slice(0, self.inner_rotation);
        Word::product([&b, &self.base.inverse(), &a.inverse()])
    }

    /// Checks every structural claim: cells tile both boundaries in order,
    /// edges chain up around the annulus, and each region's boundary label is
    /// a rotation of its relator.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let (mut pu, mut pv) = (0u64, 0u64);
        let mut h = self.base.clone();
        for (k, c) in self.cells.iter().enumerate() {
            match c {
                Cell::Shared { outer, inner } => {
                    if !h.is_identity() || outer.0 != pu || inner.0 != pv {
                        return Err(format!("cell {k}: shared arc out of place"));
                    }
                    if self.outer.slice(outer.0, outer.1) != self.inner.slice(inner.0, inner.1) {
                        return Err(format!("cell {k}: shared arc labels differ"));
                    }
                    pu = outer.1;
                    pv = inner.1;
                }
                Cell::Region(r) => {
                    if r.edge_in != h || r.outer.0 != pu || r.inner.0 != pv {
                        return Err(format!("cell {k}: region out of place"));
                    }
                    if r.outer.1 <= r.outer.0 || r.inner.1 <= r.inner.0 {
                        return Err(format!("cell {k}: region misses a boundary"));
                    }
                    let alpha = self.outer.slice(r.outer.0, r.outer.1);
                    let beta = self.inner.slice(r.inner.0, r.inner.1);
                    let label = Word::product([&r.edge_in.inverse(), &alpha, &r.edge_out, &beta.inverse()]);
                    let rho = r.relator.oriented(r.inverse).rotate(r.offset);
                    if label != rho {
                        return Err(format!("cell {k}: boundary label is not the relator"));
                    }
                    pu = r.outer.1;
                    pv = r.inner.1;
                    h = r.edge_out.clone();
                }
            }
        }
        if pu != self.outer.len() || pv != self.inner.len() || h != self.base {
            return Err("cells do not close up".into());
        }
        Ok(())
    }
}

/// Limits for one fill-in attempt.
#[derive(Clone, Copy, Debug)]
pub(crate) struct FillBudget {
    pub states: usize,
}

struct Oriented {
    rel: Arc<StructuredRelator>,
    inverse: bool,
    word: Word,
    /// Letter offsets of syllable starts.
    starts: Vec<u64>,
}

/// Relators in both orientations, ready for fill-in.
pub(crate) struct RegionLibrary {
    items: Vec<Oriented>,
}

impl RegionLibrary {
    pub fn new(rels: &[Arc<StructuredRelator>]) -> Self {
        let mut items = Vec::new();
        for r in rels {
            for inverse in [false, true] {
                let word = r.oriented(inverse);
                items.push(Oriented {
                    rel: r.clone(),
                    inverse,
                    starts: word.syllable_starts(),
                    word,
                });
            }
        }
        RegionLibrary { items }
    }
}

struct Ctx<'a> {
    u: &'a Word,
    v: &'a Word,
    lib: &'a RegionLibrary,
}

#[derive(Clone)]
struct Step {
    next: (u64, u64, Word),
    cell: Cell,
}

impl Ctx<'_> {
    fn run_from(w: &Word, p: u64) -> u64 {
        let (k, off) = w.locate(p);
        w.syllables()[k].len() - off
    }

    /// Moves out of state `(pu, pv, h)`.
    fn moves(&self, pu: u64, pv: u64, h: &Word) -> Vec<Step> {
        let (ru, rv) = (self.u.len() - pu, self.v.len() - pv);
        let mut out = Vec::new();
        if ru == 0 || rv == 0 {
            return out;
        }
        if h.is_identity() {
            let (gu, gv) = (self.u.letter_at(pu), self.v.letter_at(pv));
            if gu == gv {
                let l = lcp(self.u.runs_from(pu, ru, false), self.v.runs_from(pv, rv, false));
                out.push(Step {
                    next: (pu + l, pv + l, Word::identity()),
                    cell: Cell::Shared {
                        outer: (pu, pu + l),
                        inner: (pv, pv + l),
                    },
                });
                return out;
            }
            let (u_run, v_run) = (Self::run_from(self.u, pu), Self::run_from(self.v, pv));
            for (oi, o) in self.lib.items.iter().enumerate() {
                let n = o.word.len();
                for x in corner_starts(o, gu, gv, u_run, v_run) {
                    self.region(oi, x, x, n, pu, pv, h, &mut out);
                }
            }
            return out;
        }
        let hinv = h.inverse();
        for (oi, o) in self.lib.items.iter().enumerate() {
            let n = o.word.len();
            if h.len() + 2 > n {
                continue;
            }
            for at in cyclic_occurrences(&hinv, &o.word) {
                self.region(oi, (at + h.len()) % n, at, n - h.len(), pu, pv, h, &mut out);
            }
        }
        out
    }

    /// A region whose outer arc starts at `x` in the oriented relator and whose
    /// inner arc, read backwards, ends just before `back`; `len` letters are
    /// left for the two arcs and the outgoing edge.
    #[allow(clippy::too_many_arguments)]
    fn region(&self, oi: usize, x: u64, back: u64, len: u64, pu: u64, pv: u64, h: &Word, out: &mut Vec<Step>) {
        let o = &self.lib.items[oi];
        let n = o.word.len();
        let (ru, rv) = (self.u.len() - pu, self.v.len() - pv);
        let s = lcp(o.word.runs_from(x, len, true), self.u.runs_from(pu, ru, false));
        if s == 0 {
            return;
        }
        let inv_back = o.word.runs_before(back, len, true).map(|(l, k)| (l.inverse(), k));
        let q = lcp(inv_back, self.v.runs_from(pv, rv, false));
        if q == 0 {
            return;
        }
        let offset = (x + n - h.len()) % n;
        let mk = |a: u64, b: u64, e: Word| Step {
            next: (pu + a, pv + b, e.clone()),
            cell: Cell::Region(Region {
                relator: o.rel.clone(),
                inverse: o.inverse,
                offset,
                outer: (pu, pu + a),
                inner: (pv, pv + b),
                edge_in: h.clone(),
                edge_out: e,
            }),
        };
        if s + q < len {
            let e = o.word.cyclic_slice((x + s) % n, len - s - q);
            out.push(mk(s, q, e));
            return;
        }
        // the region closes on a vertex shared by both boundaries
        let lo = (len - q).max(1);
        let hi = s.min(len - 1);
        if lo > hi {
            return;
        }
        let mut splits: Vec<u64> = vec![lo, hi];
        for &st in &o.starts {
            let a = (st + n - x) % n;
            if a >= lo && a <= hi {
                splits.push(a);
            }
        }
        splits.sort_unstable();
        splits.dedup();
        for a in splits {
            out.push(mk(a, len - a, Word::identity()));
        }
    }
}

/// Offsets where a region may start at a vertex shared by both boundaries:
/// the outer arc begins with `gu`, the inner arc with `gv`.
fn corner_starts(o: &Oriented, gu: Letter, gv: Letter, u_run: u64, v_run: u64) -> Vec<u64> {
    let n = o.word.len();
    let mut out = Vec::new();
    let syl = o.word.syllables();
    for (k, s) in syl.iter().enumerate() {
        if s.letter() != gu {
            continue;
        }
        let st = o.starts[k];
        let prev = o.word.letter_at((st + n - 1) % n);
        if prev == gv.inverse() && syl.len() > 1 {
            out.push(st);
        }
        if gu == gv.inverse() {
            // the corner sits inside a run shared by the two arcs
            for d in [v_run, s.len().saturating_sub(u_run)] {
                if d >= 1 && d < s.len() {
                    out.push(st + d);
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Interior-edge labels that may start the walk at the two seed letters:
/// `h0^-1 = ρ[y..x)` with `ρ[x] = u[0]` and `ρ[y-1] = v[0]^-1`.
pub(crate) fn separated_edges(lib: &RegionLibrary, u: &Word, v: &Word) -> Vec<Word> {
    let (gu, gv) = (u.letter_at(0), v.letter_at(0));
    let (u_run, v_run) = (Ctx::run_from(u, 0), Ctx::run_from(v, 0));
    let mut out = HashSet::new();
    for o in &lib.items {
        let n = o.word.len();
        let syl = o.word.syllables();
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for (k, s) in syl.iter().enumerate() {
            let (st, en) = (o.starts[k], o.starts[k] + s.len());
            if s.letter() == gu {
                xs.push(st);
                if u_run < s.len() {
                    xs.push(en - u_run);
                }
            }
            if s.letter() == gv.inverse() {
                ys.push(en % n);
                if v_run < s.len() {
                    ys.push(st + v_run);
                }
            }
        }
        for &x in &xs {
            for &y in &ys {
                let l = (x + n - y) % n;
                if l >= 1 && l + 2 <= n {
                    out.insert(o.word.cyclic_slice(y, l).inverse());
                }
            }
        }
    }
    let mut v: Vec<Word> = out.into_iter().collect();
    v.sort();
    v
}

/// Depth-first fill-in from the state `(0, 0, h0)` on the rotated boundaries;
/// success means returning to `(|u|, |v|, h0)`.
pub(crate) fn fill_from(
    u: &Word,
    v: &Word,
    h0: &Word,
    lib: &RegionLibrary,
    budget: FillBudget,
) -> std::result::Result<Option<Vec<Cell>>, ()> {
    let ctx = Ctx { u, v, lib };
    let mut seen: HashSet<(u64, u64, Word)> = HashSet::new();
    // stack of (state, pending moves, cell that led here)
    let mut stack: Vec<(Vec<Step>, Option<Cell>)> = vec![(ctx.moves(0, 0, h0), None)];
    seen.insert((0, 0, h0.clone()));
    while let Some((pending, _)) = stack.last_mut() {
        let Some(step) = pending.pop() else {
            stack.pop();
            continue;
        };
        let (pu, pv, h) = step.next.clone();
        if pu == u.len() && pv == v.len() {
            if h == *h0 {
                let mut cells: Vec<Cell> = stack.iter().filter_map(|(_, c)| c.clone()).collect();
                cells.push(step.cell);
                return Ok(Some(cells));
            }
            continue;
        }
        if !seen.insert((pu, pv, h.clone())) {
            continue;
        }
        if seen.len() > budget.states {
            return Err(());
        }
        let next = ctx.moves(pu, pv, &h);
        stack.push((next, Some(step.cell)));
    }
    Ok(None)
}
