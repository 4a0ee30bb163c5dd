//! Arithmetic circuits over metavariables.
//!
//! Gates are stored in topological order and identified by their position.
//! Input gates carry an affine linear payload; add and mul gates take two
//! earlier gates with one scalar per incoming edge, computing
//! `a1*x + a2*y` and `a1*a2*x*y` respectively.

mod transform;

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::MultiIndex;
use crate::meta::{Format, MetaExpr, MetaMonomial, MetaPolynomial};
use crate::poly::Polynomial;
use crate::scalar::{self, Scalar};

pub use transform::{
    transform, transform_plan, PlanMode, ProductGateStats, StageReport, TransformOptions,
    TransformReport, TupleSet,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Op {
    Add,
    Mul,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gate {
    Input {
        constant: Scalar,
        linear: BTreeMap<MultiIndex, Scalar>,
    },
    Binary {
        op: Op,
        args: [usize; 2],
        scalars: [Scalar; 2],
    },
}

impl Gate {
    pub fn input(constant: Scalar, linear: impl IntoIterator<Item = (MultiIndex, Scalar)>) -> Gate {
        let mut map = BTreeMap::new();
        for (mu, c) in linear {
            *map.entry(mu).or_insert_with(Scalar::zero) += c;
        }
        map.retain(|_, c: &mut Scalar| !c.is_zero());
        Gate::Input {
            constant,
            linear: map,
        }
    }

    pub fn variable(mu: MultiIndex) -> Gate {
        Gate::input(Scalar::zero(), [(mu, Scalar::one())])
    }

    pub fn constant(c: Scalar) -> Gate {
        Gate::input(c, [])
    }

    pub fn add(a: usize, b: usize, sa: Scalar, sb: Scalar) -> Gate {
        Gate::Binary {
            op: Op::Add,
            args: [a, b],
            scalars: [sa, sb],
        }
    }

    pub fn mul(a: usize, b: usize, sa: Scalar, sb: Scalar) -> Gate {
        Gate::Binary {
            op: Op::Mul,
            args: [a, b],
            scalars: [sa, sb],
        }
    }

    pub fn is_input(&self) -> bool {
        matches!(self, Gate::Input { .. })
    }

    pub fn args(&self) -> &[usize] {
        match self {
            Gate::Input { .. } => &[],
            Gate::Binary { args, .. } => args,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    format: Option<Format>,
    d: u32,
    k: usize,
    gates: Vec<Gate>,
    output: usize,
}

/// Payload of an input gate as a metapolynomial.
pub(crate) fn payload_expr(d: u32, k: usize, constant: &Scalar, linear: &BTreeMap<MultiIndex, Scalar>) -> MetaExpr {
    let mut e = MetaExpr::constant(d, k, constant.clone());
    for (mu, c) in linear {
        e.add_term(MetaMonomial::new(vec![mu.clone()]), c.clone());
    }
    e
}

impl Circuit {
    /// Builds and validates a circuit over metavariables of inner degree `d`
    /// in `k` variables. `format`, when given, must agree with `d` and `k`.
    pub fn new(
        format: Option<Format>,
        d: u32,
        k: usize,
        gates: Vec<Gate>,
        output: usize,
    ) -> Result<Self> {
        if let Some(f) = format {
            if f.d != d || f.k != k {
                return Err(Error::FormatMismatch {
                    expected: f,
                    found: Format::new(f.delta, d, k),
                });
            }
        }
        for (id, g) in gates.iter().enumerate() {
            match g {
                Gate::Input { linear, .. } => {
                    if let Some(mu) = linear.keys().find(|mu| mu.len() != k || mu.degree() != d) {
                        return Err(Error::InvalidCircuit(format!(
                            "gate {id}: metavariable c{mu} is not of degree {d} in {k} variables"
                        )));
                    }
                }
                Gate::Binary { args, .. } => {
                    if let Some(a) = args.iter().find(|&&a| a >= id) {
                        return Err(Error::InvalidCircuit(format!(
                            "gate {id} refers to gate {a}, which is not earlier"
                        )));
                    }
                }
            }
        }
        if output >= gates.len() {
            return Err(Error::InvalidCircuit(format!(
                "output {output} out of range for {} gates",
                gates.len()
            )));
        }
        Ok(Circuit {
            format,
            d,
            k,
            gates,
            output,
        })
    }

    /// Circuit for a single metapolynomial written out as a sum of products.
    pub fn from_meta(m: &MetaPolynomial) -> Circuit {
        let fmt = m.format();
        let mut gates = Vec::new();
        let mut vars: BTreeMap<MultiIndex, usize> = BTreeMap::new();
        let mut terms: Vec<usize> = Vec::new();
        for (mono, c) in m.terms() {
            let mut acc: Option<usize> = None;
            for mu in mono.factors() {
                let v = *vars.entry(mu.clone()).or_insert_with(|| {
                    gates.push(Gate::variable(mu.clone()));
                    gates.len() - 1
                });
                acc = Some(match acc {
                    None => v,
                    Some(a) => {
                        gates.push(Gate::mul(a, v, scalar::one(), scalar::one()));
                        gates.len() - 1
                    }
                });
            }
            let t = match acc {
                None => {
                    gates.push(Gate::constant(c.clone()));
                    gates.len() - 1
                }
                Some(a) if c.is_one() => a,
                Some(a) => {
                    gates.push(Gate::constant(c.clone()));
                    gates.push(Gate::mul(a, gates.len() - 1, scalar::one(), scalar::one()));
                    gates.len() - 1
                }
            };
            terms.push(t);
        }
        let mut out = match terms.first() {
            None => {
                gates.push(Gate::constant(Scalar::zero()));
                gates.len() - 1
            }
            Some(&t) => t,
        };
        for &t in terms.iter().skip(1) {
            gates.push(Gate::add(out, t, scalar::one(), scalar::one()));
            out = gates.len() - 1;
        }
        Circuit::new(Some(fmt), fmt.d, fmt.k, gates, out).expect("well formed")
    }

    pub fn format(&self) -> Option<Format> {
        self.format
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn output(&self) -> usize {
        self.output
    }

    /// Number of gates.
    pub fn size(&self) -> usize {
        self.gates.len()
    }

    pub fn with_format(mut self, format: Option<Format>) -> Result<Self> {
        if let Some(f) = format {
            if f.d != self.d || f.k != self.k {
                return Err(Error::FormatMismatch {
                    expected: f,
                    found: Format::new(f.delta, self.d, self.k),
                });
            }
        }
        self.format = format;
        Ok(self)
    }

    /// Last gate index reading each gate (the output counts as read at the end).
    pub(crate) fn last_uses(&self) -> Vec<usize> {
        let mut last = vec![0usize; self.gates.len()];
        for (id, g) in self.gates.iter().enumerate() {
            for &a in g.args() {
                last[a] = id;
            }
        }
        last[self.output] = usize::MAX;
        last
    }

    /// Exact value of every needed gate, freeing values after their last use.
    pub fn eval_expr(&self) -> MetaExpr {
        let last = self.last_uses();
        let live = self.reachable();
        let mut vals: Vec<Option<MetaExpr>> = vec![None; self.gates.len()];
        for (id, g) in self.gates.iter().enumerate() {
            if !live[id] {
                continue;
            }
            let v = match g {
                Gate::Input { constant, linear } => payload_expr(self.d, self.k, constant, linear),
                Gate::Binary { op, args, scalars } => {
                    let a = vals[args[0]].as_ref().expect("argument evaluated");
                    let b = vals[args[1]].as_ref().expect("argument evaluated");
                    match op {
                        Op::Add => {
                            let mut out = a.scale(&scalars[0]);
                            out.add_scaled(b, &scalars[1]);
                            out
                        }
                        Op::Mul => {
                            let s = &scalars[0] * &scalars[1];
                            if s.is_zero() {
                                MetaExpr::zero(self.d, self.k)
                            } else {
                                a.mul(b).scale(&s)
                            }
                        }
                    }
                }
            };
            for &a in g.args() {
                if last[a] == id {
                    vals[a] = None;
                }
            }
            vals[id] = Some(v);
        }
        vals[self.output].take().expect("output evaluated")
    }

    /// The computed metapolynomial. With a declared format the result must
    /// be homogeneous of that meta-degree; otherwise the meta-degree is
    /// inferred (zero gets meta-degree 0).
    pub fn eval_symbolic(&self) -> Result<MetaPolynomial> {
        let e = self.eval_expr();
        let delta = match self.format {
            Some(f) => f.delta,
            None => match e.degrees().as_slice() {
                [] => 0,
                [one] => *one as u32,
                _ => {
                    return Err(Error::Inhomogeneous(
                        "circuit output has several meta-degrees".into(),
                    ))
                }
            },
        };
        e.into_homogeneous(delta)
    }

    /// Value at the coefficient vector of `f`.
    pub fn eval_numeric(&self, f: &Polynomial) -> Result<Scalar> {
        if f.k() != self.k || f.degree() != self.d {
            return Err(Error::FormatMismatch {
                expected: Format::new(0, self.d, self.k),
                found: Format::new(0, f.degree(), f.k()),
            });
        }
        let mut vals: Vec<Scalar> = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let v = match g {
                Gate::Input { constant, linear } => {
                    let mut v = constant.clone();
                    for (mu, c) in linear {
                        v += c * f.coefficient(mu);
                    }
                    v
                }
                Gate::Binary { op, args, scalars } => {
                    let (a, b) = (&vals[args[0]], &vals[args[1]]);
                    match op {
                        Op::Add => &scalars[0] * a + &scalars[1] * b,
                        Op::Mul => &scalars[0] * &scalars[1] * a * b,
                    }
                }
            };
            vals.push(v);
        }
        Ok(vals.swap_remove(self.output))
    }

    pub(crate) fn reachable(&self) -> Vec<bool> {
        let mut live = vec![false; self.gates.len()];
        live[self.output] = true;
        for id in (0..self.gates.len()).rev() {
            if live[id] {
                for &a in self.gates[id].args() {
                    live[a] = true;
                }
            }
        }
        live
    }

    /// Drops gates the output does not depend on and renumbers the rest.
    pub fn eliminate_dead(&self) -> Circuit {
        let live = self.reachable();
        let mut remap = vec![usize::MAX; self.gates.len()];
        let mut gates = Vec::new();
        for (id, g) in self.gates.iter().enumerate() {
            if !live[id] {
                continue;
            }
            remap[id] = gates.len();
            gates.push(match g {
                Gate::Input { .. } => g.clone(),
                Gate::Binary { op, args, scalars } => Gate::Binary {
                    op: *op,
                    args: [remap[args[0]], remap[args[1]]],
                    scalars: scalars.clone(),
                },
            });
        }
        Circuit {
            format: self.format,
            d: self.d,
            k: self.k,
            gates,
            output: remap[self.output],
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("circuit serializes")
    }

    pub fn from_json(text: &str) -> Result<Circuit> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Serialize, Deserialize)]
struct Scaled(MultiIndex, #[serde(with = "scalar::serde_text")] Scalar);

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum GateKindJson {
    Input {
        #[serde(rename = "const", with = "scalar::serde_text")]
        constant: Scalar,
        linear: Vec<Scaled>,
    },
    Add {
        args: [usize; 2],
        scalars: [ScalarText; 2],
    },
    Mul {
        args: [usize; 2],
        scalars: [ScalarText; 2],
    },
}

#[derive(Serialize, Deserialize)]
#[serde(transparent)]
struct ScalarText(#[serde(with = "scalar::serde_text")] Scalar);

#[derive(Serialize, Deserialize)]
struct GateJson {
    id: usize,
    #[serde(flatten)]
    kind: GateKindJson,
}

#[derive(Serialize, Deserialize)]
struct CircuitJson {
    format: Option<Format>,
    gates: Vec<GateJson>,
    output: usize,
}

impl Serialize for Circuit {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let gates = self
            .gates
            .iter()
            .enumerate()
            .map(|(id, g)| GateJson {
                id,
                kind: match g {
                    Gate::Input { constant, linear } => GateKindJson::Input {
                        constant: constant.clone(),
                        linear: linear.iter().map(|(m, c)| Scaled(m.clone(), c.clone())).collect(),
                    },
                    Gate::Binary { op, args, scalars } => {
                        let scalars = [ScalarText(scalars[0].clone()), ScalarText(scalars[1].clone())];
                        match op {
                            Op::Add => GateKindJson::Add { args: *args, scalars },
                            Op::Mul => GateKindJson::Mul { args: *args, scalars },
                        }
                    }
                },
            })
            .collect();
        CircuitJson {
            format: self.format,
            gates,
            output: self.output,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Circuit {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = CircuitJson::deserialize(d)?;
        let mut gates = Vec::with_capacity(raw.gates.len());
        let mut space: Option<(u32, usize)> = raw.format.map(|f| (f.d, f.k));
        for (pos, g) in raw.gates.into_iter().enumerate() {
            if g.id != pos {
                return Err(D::Error::custom(format!(
                    "gate ids must be 0, 1, 2, ... in order; found {} at position {pos}",
                    g.id
                )));
            }
            gates.push(match g.kind {
                GateKindJson::Input { constant, linear } => {
                    if space.is_none() {
                        if let Some(Scaled(mu, _)) = linear.first() {
                            space = Some((mu.degree(), mu.len()));
                        }
                    }
                    Gate::input(constant, linear.into_iter().map(|Scaled(m, c)| (m, c)))
                }
                GateKindJson::Add { args, scalars: [a, b] } => Gate::add(args[0], args[1], a.0, b.0),
                GateKindJson::Mul { args, scalars: [a, b] } => Gate::mul(args[0], args[1], a.0, b.0),
            });
        }
        let (d, k) = space.unwrap_or((0, 0));
        Circuit::new(raw.format, d, k, gates, raw.output).map_err(D::Error::custom)
    }
}

/// The six-gate discriminant circuit `c11^2 - 4 c20 c02`.
pub fn discriminant_circuit() -> Circuit {
    let mi = |v: [u32; 2]| MultiIndex::new(v.to_vec());
    let one = scalar::one;
    let gates = vec![
        Gate::variable(mi([1, 1])),
        Gate::variable(mi([2, 0])),
        Gate::variable(mi([0, 2])),
        Gate::mul(0, 0, one(), one()),
        Gate::mul(1, 2, one(), one()),
        Gate::add(3, 4, one(), scalar::int(-4)),
    ];
    Circuit::new(Some(Format::new(2, 2, 2)), 2, 2, gates, 5).expect("well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use crate::text::parse_meta;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn discriminant() {
        let c = discriminant_circuit();
        assert_eq!(c.size(), 6);
        assert_eq!(
            c.eval_symbolic().unwrap(),
            parse_meta("c[1,1]^2 - 4*c[2,0]*c[0,2]", None).unwrap()
        );
        let xy = Polynomial::monomial(mi(&[1, 1]));
        assert_eq!(c.eval_numeric(&xy).unwrap(), int(1));
        let sq = Polynomial::from_terms(
            2,
            2,
            [(mi(&[2, 0]), int(1)), (mi(&[1, 1]), int(2)), (mi(&[0, 2]), int(1))],
        )
        .unwrap();
        assert_eq!(c.eval_numeric(&sq).unwrap(), int(0));
        assert_eq!(c.eval_numeric(&Polynomial::zero(2, 2)).unwrap(), int(0));
    }

    #[test]
    fn single_input_and_cancellation() {
        let c = Circuit::new(None, 2, 2, vec![Gate::variable(mi(&[1, 1]))], 0).unwrap();
        assert_eq!(c.size(), 1);
        assert_eq!(c.eval_symbolic().unwrap(), parse_meta("c[1,1]", None).unwrap());
        let disc = discriminant_circuit();
        let mut gates = disc.gates().to_vec();
        gates.push(Gate::add(5, 5, int(1), int(-1)));
        let z = Circuit::new(None, 2, 2, gates, 6).unwrap();
        assert!(z.eval_symbolic().unwrap().is_zero());
    }

    #[test]
    fn affine_constant_reaches_numeric_evaluation() {
        let gates = vec![
            Gate::input(int(3), [(mi(&[2, 0]), int(2))]),
            Gate::constant(int(5)),
            Gate::mul(0, 1, int(1), int(1)),
        ];
        let c = Circuit::new(None, 2, 2, gates, 2).unwrap();
        assert_eq!(c.eval_numeric(&Polynomial::zero(2, 2)).unwrap(), int(15));
        assert_eq!(c.eval_expr().degrees(), vec![0, 1]);
        assert!(c.eval_symbolic().is_err());
    }

    #[test]
    fn rejects_malformed() {
        assert!(Circuit::new(None, 2, 2, vec![Gate::add(0, 0, int(1), int(1))], 0).is_err());
        assert!(Circuit::new(None, 2, 2, vec![Gate::variable(mi(&[1, 1]))], 1).is_err());
        assert!(Circuit::new(None, 2, 2, vec![Gate::variable(mi(&[1, 0]))], 0).is_err());
        assert!(Circuit::new(Some(Format::new(1, 2, 3)), 2, 2, vec![Gate::variable(mi(&[1, 1]))], 0).is_err());
        let declared = Circuit::new(Some(Format::new(2, 2, 2)), 2, 2, vec![Gate::variable(mi(&[1, 1]))], 0).unwrap();
        assert!(declared.eval_symbolic().is_err());
    }

    #[test]
    fn json_round_trip_is_exact() {
        let c = discriminant_circuit();
        let js = c.to_json();
        assert_eq!(
            js,
            r#"{"format":[2,2,2],"gates":[{"id":0,"kind":"input","const":"0","linear":[[[1,1],"1"]]},{"id":1,"kind":"input","const":"0","linear":[[[2,0],"1"]]},{"id":2,"kind":"input","const":"0","linear":[[[0,2],"1"]]},{"id":3,"kind":"mul","args":[0,0],"scalars":["1","1"]},{"id":4,"kind":"mul","args":[1,2],"scalars":["1","1"]},{"id":5,"kind":"add","args":[3,4],"scalars":["1","-4"]}],"output":5}"#
        );
        let back = Circuit::from_json(&js).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_json(), js);
        let untyped = js.replace("\"format\":[2,2,2]", "\"format\":null");
        let c2 = Circuit::from_json(&untyped).unwrap();
        assert_eq!((c2.d(), c2.k()), (2, 2));
        assert_eq!(c2.to_json(), untyped);
        assert!(Circuit::from_json(&js.replace("\"id\":4", "\"id\":7")).is_err());
    }

    #[test]
    fn from_meta_and_dead_gates() {
        let m = parse_meta("c[1,1]^2 - 4*c[2,0]*c[0,2] + 1/2*c[2,0]^2", None).unwrap();
        let c = Circuit::from_meta(&m);
        assert_eq!(c.eval_symbolic().unwrap(), m);
        let mut gates = c.gates().to_vec();
        gates.insert(0, Gate::constant(int(9)));
        let shifted: Vec<Gate> = gates
            .into_iter()
            .enumerate()
            .map(|(i, g)| match g {
                Gate::Binary { op, args, scalars } if i > 0 => Gate::Binary {
                    op,
                    args: [args[0] + 1, args[1] + 1],
                    scalars,
                },
                g => g,
            })
            .collect();
        let padded = Circuit::new(Some(m.format()), 2, 2, shifted, c.output() + 1).unwrap();
        let cleaned = padded.eliminate_dead();
        assert_eq!(cleaned.size(), c.size());
        assert_eq!(cleaned.eval_symbolic().unwrap(), m);
    }
}
