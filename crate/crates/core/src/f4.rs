//! F4: degree-batched pair selection, symbolic preprocessing and row
//! reduction of Macaulay matrices with the Tate term order.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap, HashSet};
use std::path::Path;

use crate::buchberger::{minimal_gb, normalize, normalized_generators, GroebnerBasis, PairQueue, SPair};
use crate::coefficient::Coefficient;
use crate::context::Context;
use crate::error::{Error, Result};
use crate::series::TateSeries;
use crate::term::{divides, lcm_term, term_cmp, Exponent, RingMode, Term};

/// A sparse row: `(column, coefficient)` pairs sorted by column, with the
/// absolute cap of the series it represents.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixRow {
    pub entries: Vec<(usize, Coefficient)>,
    pub cap: i64,
}

/// Rows of series over a common list of column monomials.
#[derive(Clone, Debug)]
pub struct MacaulayMatrix {
    ctx: Context,
    pub mon: Vec<Exponent>,
    pub rows: Vec<MatrixRow>,
}

impl MacaulayMatrix {
    /// One row per series; columns are the union of their monomials in
    /// descending monomial order.
    pub fn from_series(ctx: &Context, series: &[TateSeries]) -> MacaulayMatrix {
        let mut mon: Vec<Exponent> = series.iter().flat_map(|s| s.terms().iter().map(|t| t.exp.clone())).collect();
        mon.sort_by(|a, b| ctx.order().cmp_exponents(&b.0, &a.0));
        mon.dedup();
        Self::with_columns(ctx, mon, series)
    }

    fn with_columns(ctx: &Context, mon: Vec<Exponent>, series: &[TateSeries]) -> MacaulayMatrix {
        let index: HashMap<&Exponent, usize> = mon.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let rows = series
            .iter()
            .map(|s| {
                let mut entries: Vec<(usize, Coefficient)> =
                    s.terms().iter().map(|t| (index[&t.exp], t.coeff.clone())).collect();
                entries.sort_by_key(|e| e.0);
                MatrixRow { entries, cap: s.cap() }
            })
            .collect();
        MacaulayMatrix { ctx: ctx.clone(), mon, rows }
    }

    /// Dense integer rows at the context's default cap.
    pub fn from_integer_rows(ctx: &Context, mon: Vec<Exponent>, rows: &[Vec<i64>]) -> Result<MacaulayMatrix> {
        let cap = ctx.default_cap();
        let mut out = MacaulayMatrix { ctx: ctx.clone(), mon, rows: Vec::new() };
        for r in rows {
            let series = TateSeries::from_terms(
                ctx,
                r.iter().zip(&out.mon).map(|(&a, e)| (e.clone(), Coefficient::from_i64(ctx.prime(), a, cap))),
                cap,
            )?;
            let m = Self::with_columns(ctx, out.mon.clone(), &[series]);
            out.rows.extend(m.rows);
        }
        Ok(out)
    }

    pub fn ctx(&self) -> &Context {
        &self.ctx
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.mon.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> Option<&Coefficient> {
        self.rows[i].entries.iter().find(|e| e.0 == j).map(|e| &e.1)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.entries.is_empty())
    }

    pub fn row_series(&self, i: usize) -> Result<TateSeries> {
        let row = &self.rows[i];
        TateSeries::from_terms(&self.ctx, row.entries.iter().map(|(j, c)| (self.mon[*j].clone(), c.clone())), row.cap)
    }

    pub fn series(&self) -> Result<Vec<TateSeries>> {
        (0..self.nrows()).map(|i| self.row_series(i)).collect()
    }

    /// CSV text: a header of column monomials, then one line of coefficients
    /// per row.
    pub fn to_csv(&self) -> Result<String> {
        let io = |e: csv::Error| Error::Io(e.to_string());
        let mut w = csv::Writer::from_writer(Vec::new());
        let header: Vec<String> = self
            .mon
            .iter()
            .map(|e| if e.is_constant() { "1".to_string() } else { e.format(&self.ctx) })
            .collect();
        w.write_record(&header).map_err(io)?;
        for i in 0..self.nrows() {
            let line: Vec<String> =
                (0..self.ncols()).map(|j| self.entry(i, j).map_or_else(|| "0".to_string(), |c| c.to_string())).collect();
            w.write_record(&line).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// Row-reduces `m`: repeatedly picks the greatest term among the remaining
/// rows (lowest row index on ties), moves its row and column to the front and
/// clears that column in the rows below. Returns the nonzero reduced rows,
/// whose pivots are their leading terms and lie in distinct columns; pivot
/// columns come first in `mon`, in pivot order.
pub fn tate_row_reduction(m: &MacaulayMatrix) -> Result<MacaulayMatrix> {
    if m.is_zero() {
        return Ok(m.clone());
    }
    let ctx = m.ctx.clone();
    let mut rows = m.series()?;
    let mut pivots: Vec<Exponent> = Vec::new();
    for k in 0..rows.len() {
        let mut best: Option<usize> = None;
        for i in k..rows.len() {
            if let Some(lt) = rows[i].terms().first() {
                let better = match best {
                    None => true,
                    Some(b) => term_cmp(lt, &rows[b].terms()[0], &ctx) == Ordering::Greater,
                };
                if better {
                    best = Some(i);
                }
            }
        }
        let Some(b) = best else { break };
        rows.swap(k, b);
        let pivot = rows[k].terms()[0].clone();
        for i in k + 1..rows.len() {
            if let Some(c) = rows[i].coefficient(&pivot.exp) {
                let mult = c.exact_quotient(&pivot.coeff)?;
                rows[i] = rows[i].sub(&rows[k].scale(&mult)?)?.without_exponent(&pivot.exp);
            }
        }
        pivots.push(pivot.exp);
    }
    rows.truncate(pivots.len());
    let rest: Vec<Exponent> = m.mon.iter().filter(|e| !pivots.contains(e)).cloned().collect();
    let mut mon = pivots;
    mon.extend(rest);
    Ok(MacaulayMatrix::with_columns(&ctx, mon, &rows))
}

/// A term class waiting in symbolic preprocessing; the heap pops the greatest.
struct Pending {
    val: i64,
    exp: Exponent,
    ctx: Context,
}

impl PartialEq for Pending {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Pending {}

impl PartialOrd for Pending {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Pending {
    fn cmp(&self, other: &Self) -> Ordering {
        other.val.cmp(&self.val).then_with(|| self.ctx.order().cmp_exponents(&self.exp.0, &other.exp.0))
    }
}

/// Builds the matrix for a batch of pairs: both halves `(lcm/LT(u))·u` and
/// `(lcm/LT(v))·v` of every pair, plus a reducer `δ·g` for every term met
/// whose class is not yet covered and is divisible by some `LT(g)`. Among
/// reducers the cofactor `δ` of least degree, then least in the monomial
/// order, is taken; the earliest basis element wins remaining ties.
///
/// In integral mode a monomial is covered only down to the smallest
/// valuation processed at it; in rational mode once processed. Terms whose
/// valuation reaches the largest cap among the pair halves are not reduced.
pub fn symbolic_preprocessing(pairs: &[SPair], basis: &[TateSeries], mode: RingMode) -> Result<MacaulayMatrix> {
    let Some(ctx) = basis.first().map(|g| g.ctx().clone()) else {
        return Err(Error::NoGenerators);
    };
    let lts: Vec<&Term> = basis.iter().map(|g| g.leading_term()).collect::<Result<_>>()?;
    let mut rows: Vec<TateSeries> = Vec::new();
    let mut used: HashSet<(usize, Exponent, i64)> = HashSet::new();
    let mut heap: BinaryHeap<Pending> = BinaryHeap::new();
    let mut add_row = |k: usize, delta: Term, rows: &mut Vec<TateSeries>, heap: &mut BinaryHeap<Pending>| -> Result<()> {
        if used.insert((k, delta.exp.clone(), delta.coeff.valuation().bound())) {
            let row = basis[k].term_mul(&delta)?;
            for t in row.terms() {
                heap.push(Pending { val: t.val(&ctx), exp: t.exp.clone(), ctx: ctx.clone() });
            }
            rows.push(row);
        }
        Ok(())
    };
    for p in pairs {
        let l = lcm_term(lts[p.i], lts[p.j], &ctx)?;
        for k in [p.i, p.j] {
            add_row(k, cofactor(&l, lts[k], &ctx), &mut rows, &mut heap)?;
        }
    }
    // Reducer rows have larger caps than the halves they reduce; terms past
    // the halves' precision can never survive elimination.
    let limit = rows.iter().map(|r| r.cap()).max().unwrap_or(0);
    let mut covered: HashMap<Exponent, i64> = HashMap::new();
    while let Some(t) = heap.pop() {
        if t.val >= limit {
            break;
        }
        let done = match (covered.get(&t.exp), mode) {
            (None, _) => false,
            (Some(_), RingMode::Rational) => true,
            (Some(&v), RingMode::Integral) => v <= t.val,
        };
        if done {
            continue;
        }
        covered.insert(t.exp.clone(), t.val);
        let term = Term::monomial(&ctx, t.val / ctx.valuation_scale(), t.exp.clone());
        let mut best: Option<(usize, Term)> = None;
        for (k, lt) in lts.iter().enumerate() {
            if !divides(lt, &term, mode, &ctx) {
                continue;
            }
            let delta = cofactor(&term, lt, &ctx);
            let better = match &best {
                None => true,
                Some((_, d)) => {
                    delta.degree().cmp(&d.degree()).then_with(|| ctx.order().cmp_exponents(&delta.exp.0, &d.exp.0))
                        == Ordering::Less
                }
            };
            if better {
                best = Some((k, delta));
            }
        }
        if let Some((k, delta)) = best {
            add_row(k, delta, &mut rows, &mut heap)?;
        }
    }
    Ok(MacaulayMatrix::from_series(&ctx, &rows))
}

/// The exact term `π^{val t − val lt}·X^{exp t − exp lt}`.
fn cofactor(t: &Term, lt: &Term, ctx: &Context) -> Term {
    let exp = t.exp.checked_sub(&lt.exp).expect("divisible monomials");
    Term::monomial(ctx, t.coeff.valuation().bound() - lt.coeff.valuation().bound(), exp)
}

/// F4 with the same pair order, normalization and final minimal-basis
/// extraction as [`crate::buchberger::buchberger`].
pub fn f4(gens: &[TateSeries], mode: RingMode) -> Result<GroebnerBasis> {
    f4_with_dump(gens, mode, None)
}

/// [`f4`], writing each Macaulay matrix as `matrix_NNN.csv` into `dump`.
pub fn f4_with_dump(gens: &[TateSeries], mode: RingMode, dump: Option<&Path>) -> Result<GroebnerBasis> {
    let mut basis = normalized_generators(gens, mode)?;
    let mut pairs = PairQueue::default();
    for k in 1..basis.len() {
        pairs.add_element(k, &basis);
    }
    let mut step = 0usize;
    loop {
        let batch = pairs.pop_lowest_degree();
        if batch.is_empty() {
            break;
        }
        let m = symbolic_preprocessing(&batch, &basis, mode)?;
        if let Some(dir) = dump {
            std::fs::create_dir_all(dir).map_err(|e| Error::Io(e.to_string()))?;
            std::fs::write(dir.join(format!("matrix_{step:03}.csv")), m.to_csv()?)
                .map_err(|e| Error::Io(e.to_string()))?;
        }
        step += 1;
        let reduced = tate_row_reduction(&m)?;
        let ctx = m.ctx().clone();
        let old: Vec<Term> = basis.iter().map(|g| g.terms()[0].clone()).collect();
        for row in reduced.series()? {
            let Some(lt) = row.terms().first() else { continue };
            if !old.iter().any(|g| divides(g, lt, mode, &ctx)) {
                basis.push(normalize(&row, mode)?);
                pairs.add_element(basis.len() - 1, &basis);
            }
        }
    }
    Ok(GroebnerBasis::new(minimal_gb(&basis, mode), mode))
}
