//! Rewriting a circuit for `Delta` into one for `X . Delta`, `X` in `U(gl_k)`.
//!
//! With `X = sum_i beta_i X^i` in PBW normal form, every source gate `g` is
//! replaced by gates computing `X^i . g` for the exponent tuples `i` in a
//! downward closed set `T`. Inputs are transformed symbolically, sums
//! componentwise, and products by the Leibniz rule
//! `X^i (A B) = sum_{j <= i} binom(i, j) (X^j A) (X^(i-j) B)`, since every
//! `X_r` acts by derivations. The output is `sum_i beta_i X^i . out`.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{payload_expr, Circuit, Gate, Op};
use crate::action::act_on_expr;
use crate::error::{Error, Result};
use crate::index::{compositions, MultiIndex};
use crate::meta::MetaExpr;
use crate::projector::ProjectorPlan;
use crate::scalar::{binomial, Scalar};
use crate::uea::{pbw_normalize, BasisOrder, ExponentTuple, UeaElement};

/// Which exponent tuples get a gate per source gate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TupleSet {
    /// Every tuple of total degree at most the operator length.
    Full,
    /// Tuples below some tuple in the support of the normal form.
    #[default]
    Closure,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformOptions {
    pub tuples: TupleSet,
    /// Skip gates whose value is identically zero and absorb lone scalings
    /// into edge labels.
    pub fold_zeros: bool,
    pub eliminate_dead: bool,
    /// Abort once the new circuit would exceed this many gates.
    pub max_gates: Option<usize>,
}

impl Default for TransformOptions {
    fn default() -> Self {
        TransformOptions {
            tuples: TupleSet::Closure,
            fold_zeros: true,
            eliminate_dead: true,
            max_gates: Some(2_000_000),
        }
    }
}

impl TransformOptions {
    /// The unoptimized construction: all tuples, no folding, no cleanup.
    /// Gate counts then follow the size law exactly.
    pub fn exact() -> Self {
        TransformOptions {
            tuples: TupleSet::Full,
            fold_zeros: false,
            eliminate_dead: false,
            max_gates: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductGateStats {
    /// Source gate id.
    pub gate: usize,
    pub products: usize,
    pub adds: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformReport {
    pub input_size: usize,
    /// Size of the returned circuit.
    pub output_size: usize,
    /// Gates created before dead-gate elimination.
    pub gates_created: usize,
    /// Operator length `L`.
    pub length: usize,
    /// `K = k^2`.
    pub k_squared: usize,
    pub tuple_count: usize,
    /// `binom(L + 2K, 2K)`, the number of pairs `(j, i - j)` with `|i| <= L`.
    pub pair_bound: BigInt,
    pub product_gates: Vec<ProductGateStats>,
    /// Gates spent on the final linear combination.
    pub output_gates: usize,
}

#[derive(Clone)]
enum Entry {
    Zero,
    /// `scale * value(gate)`.
    Gate(usize, Scalar),
}

struct Tuples {
    list: Vec<ExponentTuple>,
    index: HashMap<ExponentTuple, usize>,
    /// For nonzero tuples: the index of `i - e_r` for the first position `r`
    /// with `i_r > 0`, and `r`.
    parent: Vec<Option<(usize, usize)>>,
}

impl Tuples {
    fn build(mut list: Vec<ExponentTuple>) -> Tuples {
        list.sort_by(|a, b| a.total().cmp(&b.total()).then_with(|| a.cmp(b)));
        list.dedup();
        let index: HashMap<ExponentTuple, usize> =
            list.iter().cloned().enumerate().map(|(n, t)| (t, n)).collect();
        let parent = list
            .iter()
            .map(|t| {
                let r = t.exponents().iter().position(|&x| x > 0)?;
                let mut v = t.exponents().to_vec();
                v[r] -= 1;
                Some((index[&ExponentTuple::new(v)], r))
            })
            .collect();
        Tuples {
            list,
            index,
            parent,
        }
    }

    /// Pairs `(j, i - j, binom(i, j))` for every `j <= i`.
    fn splits(&self, t: usize) -> Vec<(usize, usize, Scalar)> {
        let e = self.list[t].exponents();
        let mut out = Vec::new();
        let mut j = vec![0u32; e.len()];
        loop {
            let rest: Vec<u32> = e.iter().zip(&j).map(|(a, b)| a - b).collect();
            let mut b = BigInt::one();
            for (&n, &m) in e.iter().zip(&j) {
                if m > 0 && m < n {
                    b *= binomial(u64::from(n), u64::from(m));
                }
            }
            out.push((
                self.index[&ExponentTuple::new(j.clone())],
                self.index[&ExponentTuple::new(rest)],
                Scalar::from_integer(b),
            ));
            let mut r = 0;
            loop {
                if r == j.len() {
                    return out;
                }
                if j[r] < e[r] {
                    j[r] += 1;
                    break;
                }
                j[r] = 0;
                r += 1;
            }
        }
    }
}

fn all_tuples(len: usize, max_total: u32) -> Vec<ExponentTuple> {
    (0..=max_total)
        .flat_map(|n| compositions(n, len))
        .map(|mu: MultiIndex| ExponentTuple::new(mu.as_slice().to_vec()))
        .collect()
}

fn closure(support: &[ExponentTuple]) -> Vec<ExponentTuple> {
    let mut set = BTreeSet::new();
    for t in support {
        let e = t.exponents();
        let mut j = vec![0u32; e.len()];
        loop {
            set.insert(ExponentTuple::new(j.clone()));
            let mut r = 0;
            loop {
                if r == j.len() {
                    break;
                }
                if j[r] < e[r] {
                    j[r] += 1;
                    break;
                }
                j[r] = 0;
                r += 1;
            }
            if r == j.len() {
                break;
            }
        }
    }
    set.into_iter().collect()
}

struct Builder<'a> {
    gates: Vec<Gate>,
    opts: &'a TransformOptions,
}

impl Builder<'_> {
    fn push(&mut self, g: Gate) -> Result<usize> {
        self.gates.push(g);
        if let Some(cap) = self.opts.max_gates {
            if self.gates.len() > cap {
                return Err(Error::BudgetExceeded(format!(
                    "transformed circuit exceeds {cap} gates"
                )));
            }
        }
        Ok(self.gates.len() - 1)
    }

    fn input_from(&mut self, e: &MetaExpr) -> Result<Entry> {
        if self.opts.fold_zeros && e.is_zero() {
            return Ok(Entry::Zero);
        }
        let mut constant = Scalar::zero();
        let mut linear = Vec::new();
        for (m, c) in e.terms() {
            match m.factors() {
                [] => constant = c.clone(),
                [mu] => linear.push((mu.clone(), c.clone())),
                _ => unreachable!("payloads stay affine linear"),
            }
        }
        let id = self.push(Gate::input(constant, linear))?;
        Ok(Entry::Gate(id, Scalar::one()))
    }

    /// `sum c_n * entry_n` as gates; returns the resulting entry and the
    /// number of add gates spent.
    fn combine(&mut self, terms: Vec<(usize, Scalar)>) -> Result<(Entry, usize)> {
        let mut it = terms.into_iter();
        let Some((first, c0)) = it.next() else {
            return Ok((Entry::Zero, 0));
        };
        let Some((second, c1)) = it.next() else {
            return Ok((Entry::Gate(first, c0), 0));
        };
        let mut acc = self.push(Gate::add(first, second, c0, c1))?;
        let mut adds = 1;
        for (g, c) in it {
            acc = self.push(Gate::add(acc, g, Scalar::one(), c))?;
            adds += 1;
        }
        Ok((Entry::Gate(acc, Scalar::one()), adds))
    }

    /// Turns a scaled entry into a plain gate (needed where the exact
    /// construction expects a gate per tuple).
    fn materialize(&mut self, e: Entry) -> Result<usize> {
        match e {
            Entry::Gate(g, s) if s.is_one() => Ok(g),
            Entry::Gate(g, s) => {
                let c = self.push(Gate::constant(s))?;
                self.push(Gate::mul(g, c, Scalar::one(), Scalar::one()))
            }
            Entry::Zero => self.push(Gate::constant(Scalar::zero())),
        }
    }
}

/// Circuit computing `p . Delta` from a circuit computing `Delta`; `p` must
/// be in PBW normal form for the lexicographic basis order.
pub fn transform(
    c: &Circuit,
    p: &UeaElement,
    opts: &TransformOptions,
) -> Result<(Circuit, TransformReport)> {
    let k = c.k();
    if p.k() != k {
        return Err(Error::VariableCountMismatch {
            expected: k,
            found: p.k(),
        });
    }
    let order = BasisOrder::lex(k);
    if !p.is_normalized(&order) {
        return Err(Error::NotNormalized);
    }
    let beta = p.pbw_coefficients(&order)?;
    let length = p.length();
    let kk = k * k;
    let tuples = Tuples::build(match opts.tuples {
        TupleSet::Full => all_tuples(kk, length as u32),
        TupleSet::Closure => {
            let support: Vec<ExponentTuple> = beta.iter().map(|(t, _)| t.clone()).collect();
            let mut cl = closure(&support);
            cl.push(ExponentTuple::zero(kk));
            cl
        }
    });
    let nt = tuples.list.len();
    let mut b = Builder {
        gates: Vec::new(),
        opts,
    };
    let mut report = TransformReport {
        input_size: c.size(),
        output_size: 0,
        gates_created: 0,
        length,
        k_squared: kk,
        tuple_count: nt,
        pair_bound: binomial((length + 2 * kk) as u64, (2 * kk) as u64),
        product_gates: Vec::new(),
        output_gates: 0,
    };
    let mut splits: Vec<Option<Vec<(usize, usize, Scalar)>>> = vec![None; nt];
    let live = c.reachable();
    let last = c.last_uses();
    let mut table: Vec<Vec<Entry>> = vec![Vec::new(); c.size()];
    for (id, g) in c.gates().iter().enumerate() {
        if !live[id] {
            continue;
        }
        let row = match g {
            Gate::Input { constant, linear } => {
                let mut vals: Vec<MetaExpr> = Vec::with_capacity(nt);
                let mut row = Vec::with_capacity(nt);
                for t in 0..nt {
                    let v = match tuples.parent[t] {
                        None => payload_expr(c.d(), k, constant, linear),
                        Some((par, r)) => act_on_expr(order.element(r), &vals[par])?,
                    };
                    row.push(b.input_from(&v)?);
                    vals.push(v);
                }
                row
            }
            Gate::Binary {
                op: Op::Add,
                args,
                scalars,
            } => {
                let mut row = Vec::with_capacity(nt);
                for t in 0..nt {
                    let x = table[args[0]][t].clone();
                    let y = table[args[1]][t].clone();
                    let e = match (x, y) {
                        (Entry::Zero, Entry::Zero) if opts.fold_zeros => Entry::Zero,
                        (Entry::Gate(g, s), Entry::Zero) if opts.fold_zeros => {
                            Entry::Gate(g, s * &scalars[0])
                        }
                        (Entry::Zero, Entry::Gate(g, s)) if opts.fold_zeros => {
                            Entry::Gate(g, s * &scalars[1])
                        }
                        (x, y) => {
                            let (gx, sx) = scaled(&mut b, x)?;
                            let (gy, sy) = scaled(&mut b, y)?;
                            let n = b.push(Gate::add(gx, gy, sx * &scalars[0], sy * &scalars[1]))?;
                            Entry::Gate(n, Scalar::one())
                        }
                    };
                    row.push(e);
                }
                row
            }
            Gate::Binary {
                op: Op::Mul,
                args,
                scalars,
            } => {
                let mut stats = ProductGateStats {
                    gate: id,
                    products: 0,
                    adds: 0,
                };
                let mut row = Vec::with_capacity(nt);
                for t in 0..nt {
                    let pairs = splits[t].get_or_insert_with(|| tuples.splits(t)).clone();
                    let mut terms = Vec::with_capacity(pairs.len());
                    for (j, rest, binom) in pairs {
                        let x = table[args[0]][j].clone();
                        let y = table[args[1]][rest].clone();
                        if opts.fold_zeros && (matches!(x, Entry::Zero) || matches!(y, Entry::Zero)) {
                            continue;
                        }
                        let (gx, sx) = scaled(&mut b, x)?;
                        let (gy, sy) = scaled(&mut b, y)?;
                        let n = b.push(Gate::mul(gx, gy, sx * &scalars[0], sy * &scalars[1]))?;
                        stats.products += 1;
                        terms.push((n, binom));
                    }
                    // Without folding only the zero tuple has a single
                    // summand, with binomial 1, so every entry is a plain gate.
                    let (e, adds) = b.combine(terms)?;
                    stats.adds += adds;
                    row.push(e);
                }
                report.product_gates.push(stats);
                row
            }
        };
        table[id] = row;
        for &a in g.args() {
            if last[a] == id {
                table[a] = Vec::new();
            }
        }
    }
    let before = b.gates.len();
    let mut terms = Vec::new();
    for (t, coef) in &beta {
        match &table[c.output()][tuples.index[t]] {
            Entry::Zero => {}
            Entry::Gate(g, s) => terms.push((*g, s * coef)),
        }
    }
    let out = match b.combine(terms)? {
        (Entry::Zero, _) => b.push(Gate::constant(Scalar::zero()))?,
        (e, _) => b.materialize(e)?,
    };
    report.output_gates = b.gates.len() - before;
    report.gates_created = b.gates.len();
    let mut result = Circuit::new(c.format(), c.d(), k, b.gates, out)?;
    if opts.eliminate_dead {
        result = result.eliminate_dead();
    }
    report.output_size = result.size();
    Ok((result, report))
}

fn scaled(b: &mut Builder<'_>, e: Entry) -> Result<(usize, Scalar)> {
    match e {
        Entry::Gate(g, s) => Ok((g, s)),
        Entry::Zero => Ok((b.materialize(Entry::Zero)?, Scalar::one())),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlanMode {
    /// One transform per factor, each factor normalized on its own.
    FactorByFactor,
    /// Multiply out the whole plan, normalize, and transform once; refused
    /// when the normal form exceeds `term_budget` terms.
    SinglePass { term_budget: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageReport {
    /// Number of terms of the normalized operator of this stage.
    pub terms: usize,
    pub report: TransformReport,
}

pub fn transform_plan(
    c: &Circuit,
    plan: &ProjectorPlan,
    mode: PlanMode,
    opts: &TransformOptions,
) -> Result<(Circuit, Vec<StageReport>)> {
    if c.d() != plan.format.d || c.k() != plan.format.k {
        return Err(Error::FormatMismatch {
            expected: plan.format,
            found: crate::meta::Format::new(plan.format.delta, c.d(), c.k()),
        });
    }
    if let Some(f) = c.format() {
        if f != plan.format {
            return Err(Error::FormatMismatch {
                expected: plan.format,
                found: f,
            });
        }
    }
    let k = plan.format.k;
    match mode {
        PlanMode::FactorByFactor => {
            let mut cur = c.clone();
            let mut stages = Vec::new();
            for f in plan.factors.iter().rev() {
                let op = pbw_normalize(&f.as_element());
                let (next, report) = transform(&cur, &op, opts)?;
                stages.push(StageReport {
                    terms: op.len(),
                    report,
                });
                cur = next;
            }
            Ok((cur, stages))
        }
        PlanMode::SinglePass { term_budget } => {
            let mut acc = UeaElement::one(k);
            for f in &plan.factors {
                let factor = pbw_normalize(&f.as_element());
                acc = pbw_normalize(&acc.mul(&factor)?);
                if acc.len() > term_budget {
                    return Err(Error::BudgetExceeded(format!(
                        "normal form of the plan has more than {term_budget} terms"
                    )));
                }
            }
            let (out, report) = transform(c, &acc, opts)?;
            Ok((
                out,
                vec![StageReport {
                    terms: acc.len(),
                    report,
                }],
            ))
        }
    }
}
