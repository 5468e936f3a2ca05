//! JSON forms of scenarios and DCJ lists.

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use twobreak_core::{ends, Adjacency, ColoredMultigraph, DcjMove, KBreak, Label, Scenario};

use crate::formats::{extremity_token, parse_extremity, GraphFile};

pub const SCHEMA: u32 = 1;

/// A vertex name, read from either a JSON string or number.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Id {
    Num(u64),
    Str(String),
}

impl Id {
    fn text(&self) -> String {
        match self {
            Id::Num(n) => n.to_string(),
            Id::Str(s) => s.clone(),
        }
    }
}

/// One k-break: the removed and added black edges by endpoints, with
/// optional explicit labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveJson {
    pub remove: Vec<[Id; 2]>,
    pub add: Vec<[Id; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub remove_labels: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub add_labels: Option<Vec<u32>>,
}

/// Serializes a scenario, replaying it to recover removed endpoints.
pub fn scenario_to_json(f: &GraphFile, scenario: &Scenario) -> Result<Vec<MoveJson>> {
    let id = |v: twobreak_core::Vertex| Id::Str(f.id(v).to_string());
    let mut state = f.graph.clone();
    let mut out = Vec::with_capacity(scenario.len());
    for (i, m) in scenario.moves.iter().enumerate() {
        let mut remove = Vec::new();
        for l in &m.removed {
            let e = state.black_edge(*l).ok_or_else(|| anyhow!("move {i}: unknown label {l}"))?;
            remove.push([id(e.ends.0), id(e.ends.1)]);
        }
        out.push(MoveJson {
            remove,
            add: m.added.iter().map(|&(e, _)| [id(e.0), id(e.1)]).collect(),
            remove_labels: Some(m.removed.iter().map(|l| l.0).collect()),
            add_labels: Some(m.added.iter().map(|&(_, l)| l.0).collect()),
        });
        state = m.apply(&state)?;
    }
    Ok(out)
}

/// Reads moves against the graph. Without explicit labels, each removed
/// pair takes the lowest-labelled unused black edge with those endpoints and
/// added edges take the removed labels in order.
pub fn scenario_from_json(f: &GraphFile, moves: &[MoveJson]) -> Result<Scenario> {
    let mut state: ColoredMultigraph = f.graph.clone();
    let mut out = Vec::with_capacity(moves.len());
    for (i, m) in moves.iter().enumerate() {
        let ctx = || format!("move {i}");
        let pair = |p: &[Id; 2]| -> Result<_> { Ok(ends(f.vertex(&p[0].text())?, f.vertex(&p[1].text())?)) };
        let removed_ends = m.remove.iter().map(pair).collect::<Result<Vec<_>>>().with_context(ctx)?;
        let removed: Vec<Label> = match &m.remove_labels {
            Some(ls) => {
                if ls.len() != removed_ends.len() {
                    bail!("move {i}: remove_labels length differs from remove");
                }
                for (l, e) in ls.iter().zip(&removed_ends) {
                    let found = state.black_edge(Label(*l)).ok_or_else(|| anyhow!("move {i}: no black edge labelled {l}"))?;
                    if found.ends != *e {
                        bail!("move {i}: label {l} does not join the given endpoints");
                    }
                }
                ls.iter().map(|&l| Label(l)).collect()
            }
            None => {
                let mut taken: Vec<Label> = Vec::new();
                for e in &removed_ends {
                    let l = state
                        .black()
                        .iter()
                        .find(|x| x.ends == *e && !taken.contains(&x.label))
                        .ok_or_else(|| anyhow!("move {i}: no black edge between the given endpoints"))?
                        .label;
                    taken.push(l);
                }
                taken
            }
        };
        let added_ends = m.add.iter().map(pair).collect::<Result<Vec<_>>>().with_context(ctx)?;
        let added_labels: Vec<Label> = match &m.add_labels {
            Some(ls) => ls.iter().map(|&l| Label(l)).collect(),
            None => removed.clone(),
        };
        if added_labels.len() != added_ends.len() {
            bail!("move {i}: add_labels length differs from add");
        }
        let k = KBreak { removed, added: added_ends.into_iter().zip(added_labels).collect() };
        state = k.apply(&state).with_context(ctx)?;
        out.push(k);
    }
    Ok(Scenario::new(out))
}

/// A DCJ move; an adjacency is one or two extremity tokens.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DcjJson {
    pub cut: Vec<Vec<String>>,
    pub join: Vec<Vec<String>>,
}

fn adjacency_json(a: &Adjacency) -> Vec<String> {
    match *a {
        Adjacency::Internal(x, y) => vec![extremity_token(x), extremity_token(y)],
        Adjacency::External(x) => vec![extremity_token(x)],
    }
}

fn adjacency_from(v: &[String]) -> Result<Adjacency> {
    match v {
        [x] => Ok(Adjacency::External(parse_extremity(x)?)),
        [x, y] => Ok(Adjacency::internal(parse_extremity(x)?, parse_extremity(y)?)),
        _ => bail!("an adjacency has one or two extremities"),
    }
}

pub fn dcj_to_json(m: &DcjMove) -> DcjJson {
    DcjJson { cut: m.cut.iter().map(adjacency_json).collect(), join: m.join.iter().map(adjacency_json).collect() }
}

pub fn dcj_from_json(m: &DcjJson) -> Result<DcjMove> {
    let cut = m.cut.iter().map(|a| adjacency_from(a)).collect::<Result<Vec<_>>>()?;
    let join = m.join.iter().map(|a| adjacency_from(a)).collect::<Result<Vec<_>>>()?;
    Ok(DcjMove::new(cut, join)?)
}

/// The moves of a scenario document: a bare array, or an object whose
/// `scenario` field is the array.
pub fn scenario_field(doc: &Value, field: &str) -> Option<Value> {
    match doc {
        Value::Array(_) if field == "scenario" => Some(doc.clone()),
        Value::Object(o) => o.get(field).cloned(),
        _ => None,
    }
}

/// True when the array holds DCJ moves rather than k-breaks.
pub fn is_dcj_list(moves: &Value) -> bool {
    moves.as_array().and_then(|a| a.first()).is_some_and(|m| m.get("cut").is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formats::parse_graph;
    use twobreak_core::{Extremity, Vertex};

    #[test]
    fn scenario_round_trip() {
        let f = parse_graph("b a b\nb c d\ng b c\ng d a\n").unwrap();
        let k = KBreak::two([Label(1), Label(2)], [(ends(Vertex(1), Vertex(2)), Label(1)), (ends(Vertex(0), Vertex(3)), Label(2))]);
        let s = Scenario::new(vec![k]);
        let js = scenario_to_json(&f, &s).unwrap();
        let text = serde_json::to_string(&js).unwrap();
        assert!(text.contains(r#""remove":[["a","b"],["c","d"]]"#));
        let back: Vec<MoveJson> = serde_json::from_str(&text).unwrap();
        assert_eq!(scenario_from_json(&f, &back).unwrap(), s);
    }

    #[test]
    fn labels_optional_and_numeric_ids() {
        let f = parse_graph("b 1 2\nb 3 4\ng 2 3\ng 4 1\n").unwrap();
        let js: Vec<MoveJson> = serde_json::from_str(r#"[{"remove":[[1,2],[3,4]],"add":[[2,3],[1,4]]}]"#).unwrap();
        let s = scenario_from_json(&f, &js).unwrap();
        assert!(s.replay(&f.graph).unwrap().is_terminal());
        let bad: Vec<MoveJson> = serde_json::from_str(r#"[{"remove":[[1,3],[2,4]],"add":[[2,3],[1,4]]}]"#).unwrap();
        assert!(scenario_from_json(&f, &bad).is_err());
    }

    #[test]
    fn dcj_round_trip() {
        let m = DcjMove::new(
            vec![Adjacency::internal(Extremity::head(1), Extremity::tail(2))],
            vec![Adjacency::External(Extremity::head(1)), Adjacency::External(Extremity::tail(2))],
        )
        .unwrap();
        let j = dcj_to_json(&m);
        assert_eq!(j.cut, vec![vec!["1h".to_string(), "2t".to_string()]]);
        assert_eq!(dcj_from_json(&j).unwrap(), m);
    }
}
