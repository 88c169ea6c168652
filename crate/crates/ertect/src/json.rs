//! JSON encodings of words, instances and solutions.
//!
//! Encoding is canonical: `decode(encode(x)) == x` and re-encoding a decoded
//! value reproduces the same JSON.

use std::collections::BTreeSet;

use ertect_core::problems::{ColorSeq, Coloring, Enumeration, FamilyInstance, PairedSeq, Tail};
use ertect_core::{FiniteSet, Instance, ProblemError, ProblemId, Solution, Symbol, Word};
use serde_json::{Map, Value, json};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("{0}")]
    Format(String),
    #[error(transparent)]
    Syntax(#[from] serde_json::Error),
    #[error(transparent)]
    Problem(#[from] ProblemError),
}

type Result<T> = std::result::Result<T, JsonError>;

fn bad<T>(msg: impl Into<String>) -> Result<T> {
    Err(JsonError::Format(msg.into()))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| JsonError::Format(format!("missing field `{key}`")))
}

fn nat(v: &Value) -> Result<u64> {
    v.as_u64()
        .ok_or_else(|| JsonError::Format(format!("expected a natural number, got {v}")))
}

fn nat_field(v: &Value, key: &str) -> Result<u64> {
    nat(field(v, key)?)
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| JsonError::Format(format!("`{what}` must be an array")))
}

fn nats(v: &Value, what: &str) -> Result<Vec<u64>> {
    array(v, what)?.iter().map(nat).collect()
}

pub fn word_to_json(w: &Word<u64>) -> Value {
    json!({ "prefix": w.prefix(), "period": w.period() })
}

pub fn word_from_json(v: &Value) -> Result<Word<u64>> {
    let prefix = nats(field(v, "prefix")?, "prefix")?;
    let period = nats(field(v, "period")?, "period")?;
    Word::new(prefix, period).or_else(|e| bad(e.to_string()))
}

fn mask_to_json(w: &Word<bool>) -> Value {
    word_to_json(&w.map(|&b| u64::from(b)))
}

fn mask_from_json(v: &Value) -> Result<Word<bool>> {
    let w = word_from_json(v)?;
    if let Some(x) = w.values().into_iter().find(|&x| x > 1) {
        return bad(format!("mask entries must be 0 or 1, got {x}"));
    }
    Ok(w.map(|&x| x == 1))
}

pub fn seq_to_json(s: &ColorSeq) -> Value {
    match s {
        ColorSeq::Lasso(w) => word_to_json(w),
        ColorSeq::Paired(p) => json!({
            "pair": {
                "left": seq_to_json(&p.left),
                "left_head": p.left_head,
                "right": seq_to_json(&p.right),
                "right_head": p.right_head,
            }
        }),
    }
}

pub fn seq_from_json(v: &Value) -> Result<ColorSeq> {
    match v.get("pair") {
        Some(p) => Ok(ColorSeq::Paired(Box::new(PairedSeq {
            left: seq_from_json(field(p, "left")?)?,
            left_head: nat_field(p, "left_head")?,
            right: seq_from_json(field(p, "right")?)?,
            right_head: nat_field(p, "right_head")?,
        }))),
        None => Ok(ColorSeq::Lasso(word_from_json(v)?)),
    }
}

/// How values of an enumeration are written.
trait Entry: Sized + Ord + Clone {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

impl Entry for u64 {
    fn to_json(&self) -> Value {
        json!(self)
    }
    fn from_json(v: &Value) -> Result<Self> {
        nat(v)
    }
}

/// A set code when it fits in 64 bits, the element list otherwise.
impl Entry for FiniteSet {
    fn to_json(&self) -> Value {
        match self.code() {
            Some(code) => json!(code),
            None => set_to_json(self),
        }
    }
    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Array(_) => set_from_json(v),
            _ => Ok(FiniteSet::from_code(nat(v)?)),
        }
    }
}

fn set_to_json(s: &FiniteSet) -> Value {
    Value::Array(s.iter().map(|x| json!(x)).collect())
}

fn set_from_json(v: &Value) -> Result<FiniteSet> {
    let xs = nats(v, "set")?;
    let set: FiniteSet = xs.iter().copied().collect();
    if set.len() != xs.len() {
        return bad("set elements must be distinct");
    }
    Ok(set)
}

fn enum_to_json<V: Entry>(e: &Enumeration<V>) -> Map<String, Value> {
    let explicit: Vec<Value> = e
        .explicit
        .iter()
        .map(|s| match s {
            Symbol::Value(v) => v.to_json(),
            Symbol::Pause => Value::Null,
        })
        .collect();
    let tail = match &e.tail {
        Tail::Pauses => json!({ "type": "pauses" }),
        Tail::AllExcept(skip) => {
            json!({ "type": "all_except", "skip": skip.iter().map(Entry::to_json).collect::<Vec<_>>() })
        }
        Tail::Mask(m) => json!({ "type": "mask", "mask": mask_to_json(m) }),
    };
    let mut out = Map::new();
    out.insert("explicit".into(), Value::Array(explicit));
    out.insert("tail".into(), tail);
    out
}

fn enum_from_json<V: Entry + ertect_core::coding::Code>(v: &Value) -> Result<Enumeration<V>> {
    let explicit = array(field(v, "explicit")?, "explicit")?
        .iter()
        .map(|x| match x {
            Value::Null => Ok(Symbol::Pause),
            x => V::from_json(x).map(Symbol::Value),
        })
        .collect::<Result<Vec<_>>>()?;
    let tail = field(v, "tail")?;
    let tail = match field(tail, "type")?.as_str() {
        Some("pauses") => Tail::Pauses,
        Some("all_except") => {
            let skip = array(field(tail, "skip")?, "skip")?
                .iter()
                .map(V::from_json)
                .collect::<Result<BTreeSet<V>>>()?;
            Tail::AllExcept(skip)
        }
        Some("mask") => Tail::Mask(mask_from_json(field(tail, "mask")?)?),
        _ => return bad("tail type must be `pauses`, `all_except` or `mask`"),
    };
    Ok(Enumeration::new(explicit, tail))
}

fn coloring_json(kind: &str, c: &Coloring) -> Value {
    json!({ "kind": kind, "k": c.palette, "word": seq_to_json(&c.seq) })
}

fn kinded(kind: &str, mut body: Map<String, Value>) -> Value {
    body.insert("kind".into(), json!(kind));
    Value::Object(body)
}

pub fn instance_to_json(i: &Instance) -> Value {
    match i {
        Instance::Lpo(w) => json!({ "kind": "lpo", "word": word_to_json(w) }),
        Instance::IsInfinite(w) => json!({ "kind": "isinf", "word": word_to_json(w) }),
        Instance::Cn(e) => kinded("cn", enum_to_json(e)),
        Instance::Tcn(e) => kinded("tcn", enum_to_json(e)),
        Instance::Ert(c) => coloring_json("ert", c),
        Instance::Ect(c) => coloring_json("ect", c),
        Instance::MinErt(c) => coloring_json("minert", c),
        Instance::MinEct(c) => coloring_json("minect", c),
        Instance::ErtJ { coloring, j } => {
            json!({ "kind": "ertj", "k": coloring.palette, "j": j, "word": seq_to_json(&coloring.seq) })
        }
        Instance::CSharpMax(f) => json!({
            "kind": "csharpmax",
            "bound": f.size_bound,
            "enum": Value::Object(enum_to_json(&f.enumeration)),
        }),
        Instance::Star { problem, items } => json!({
            "kind": "star",
            "problem": problem.to_string(),
            "items": items.iter().map(instance_to_json).collect::<Vec<_>>(),
        }),
        Instance::Product(items) => json!({
            "kind": "product",
            "items": items.iter().map(instance_to_json).collect::<Vec<_>>(),
        }),
    }
}

/// Parses an instance and checks its invariants.
pub fn instance_from_json(v: &Value) -> Result<Instance> {
    let i = parse_instance(v)?;
    i.check()?;
    Ok(i)
}

fn parse_instance(v: &Value) -> Result<Instance> {
    let kind = field(v, "kind")?
        .as_str()
        .ok_or_else(|| JsonError::Format("`kind` must be a string".into()))?;
    let coloring = || -> Result<Coloring> {
        Ok(Coloring {
            seq: seq_from_json(field(v, "word")?)?,
            palette: nat_field(v, "k")?,
        })
    };
    Ok(match kind {
        "lpo" => Instance::Lpo(word_from_json(field(v, "word")?)?),
        "isinf" => Instance::IsInfinite(word_from_json(field(v, "word")?)?),
        "cn" => Instance::Cn(enum_from_json(v)?),
        "tcn" => Instance::Tcn(enum_from_json(v)?),
        "ert" => Instance::Ert(coloring()?),
        "ect" => Instance::Ect(coloring()?),
        "minert" => Instance::MinErt(coloring()?),
        "minect" => Instance::MinEct(coloring()?),
        "ertj" => Instance::ErtJ {
            coloring: coloring()?,
            j: nat_field(v, "j")?,
        },
        "csharpmax" => Instance::CSharpMax(FamilyInstance::new(
            nat_field(v, "bound")?,
            enum_from_json(field(v, "enum")?)?,
        )),
        "star" => {
            let problem = field(v, "problem")?
                .as_str()
                .ok_or_else(|| JsonError::Format("`problem` must be a string".into()))?
                .parse::<ProblemId>()
                .map_err(|e| JsonError::Format(e.to_string()))?;
            let items = array(field(v, "items")?, "items")?
                .iter()
                .map(parse_instance)
                .collect::<Result<_>>()?;
            Instance::Star { problem, items }
        }
        "product" => Instance::Product(
            array(field(v, "items")?, "items")?
                .iter()
                .map(parse_instance)
                .collect::<Result<_>>()?,
        ),
        other => return bad(format!("unknown instance kind `{other}`")),
    })
}

pub fn solution_to_json(s: &Solution) -> Value {
    match s {
        Solution::Bit(b) => json!({ "bit": b }),
        Solution::Number(n) => json!({ "number": n }),
        Solution::Set(set) => json!({ "set": set_to_json(set) }),
        Solution::Tuple(t) => json!({ "tuple": t.iter().map(solution_to_json).collect::<Vec<_>>() }),
    }
}

pub fn solution_from_json(v: &Value) -> Result<Solution> {
    let obj = v
        .as_object()
        .filter(|o| o.len() == 1)
        .ok_or_else(|| JsonError::Format("a solution is a single-key object".into()))?;
    let (key, body) = obj.iter().next().unwrap();
    Ok(match key.as_str() {
        "bit" => match nat(body)? {
            b @ (0 | 1) => Solution::Bit(b as u8),
            b => return bad(format!("bit must be 0 or 1, got {b}")),
        },
        "number" => Solution::Number(nat(body)?),
        "set" => Solution::Set(set_from_json(body)?),
        "tuple" => Solution::Tuple(
            array(body, "tuple")?
                .iter()
                .map(solution_from_json)
                .collect::<Result<_>>()?,
        ),
        other => return bad(format!("unknown solution kind `{other}`")),
    })
}

pub fn parse_instance_str(s: &str) -> Result<Instance> {
    instance_from_json(&serde_json::from_str(s)?)
}
