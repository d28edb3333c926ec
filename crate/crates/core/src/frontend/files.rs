//! Loaders for team, Kripke-model and GDA files. Lines starting with `#`
//! and blank lines are ignored.

use std::collections::BTreeSet;

use super::parse_so2;
use crate::error::{Error, ParseError, Result, SourceSpan};
use crate::formula::PropVar;
use crate::gda::{Gda, GdaRegistry};
use crate::table::Relation;
use crate::team_eval::{KripkeModel, Team, WorldSet};

/// Content lines with the byte span of their trimmed text.
fn lines(text: &str) -> impl Iterator<Item = (&str, SourceSpan)> {
    let mut offset = 0;
    text.split_inclusive('\n').filter_map(move |raw| {
        let start = offset;
        offset += raw.len();
        let lead = raw.len() - raw.trim_start().len();
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            None
        } else {
            Some((line, SourceSpan::new(start + lead, start + lead + line.len())))
        }
    })
}

fn bad(span: SourceSpan, reason: impl Into<String>) -> Error {
    Error::Parse(ParseError::syntax(span, reason))
}

fn ident(name: &str, span: SourceSpan) -> Result<PropVar> {
    PropVar::parse(name).map_err(|_| bad(span, format!("`{name}` is not a valid name")))
}

fn bits(word: &str, span: SourceSpan) -> Result<Vec<bool>> {
    word.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(bad(span, format!("`{c}` is not a bit"))),
        })
        .collect()
}

/// First line: the domain, space separated (`()` for the empty domain).
/// Every further line is one row of bits, spaces optional (`()` for the
/// empty row). Duplicate rows are rejected.
pub fn load_team(text: &str) -> Result<Team> {
    let mut it = lines(text);
    let (head, span) = it.next().ok_or_else(|| bad(SourceSpan::point(text.len()), "missing domain line"))?;
    let domain: Vec<PropVar> = if head == "()" {
        Vec::new()
    } else {
        head.split_whitespace().map(|n| ident(n, span)).collect::<Result<_>>()?
    };
    if domain.iter().collect::<BTreeSet<_>>().len() != domain.len() {
        return Err(bad(span, "a variable occurs twice in the domain"));
    }
    let mut rows: Vec<Vec<bool>> = Vec::new();
    for (line, span) in it {
        let row = if line == "()" { Vec::new() } else { bits(line, span)? };
        if row.len() != domain.len() {
            return Err(bad(span, format!("row has {} bits but the domain has {} variables", row.len(), domain.len())));
        }
        if rows.contains(&row) {
            return Err(bad(span, "duplicate row"));
        }
        rows.push(row);
    }
    Team::new(domain, rows)
}

/// A Kripke model together with the team of worlds to evaluate at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KripkeFile {
    pub model: KripkeModel,
    pub team: WorldSet,
}

/// `worlds: w…` first, then any of `edge: w v`, `val: w p…` and exactly
/// one `team: w…`.
pub fn load_kripke(text: &str) -> Result<KripkeFile> {
    let mut model: Option<KripkeModel> = None;
    let mut team = None;
    for (line, span) in lines(text) {
        let (key, rest) = line.split_once(':').ok_or_else(|| bad(span, "expected `key: values`"))?;
        let words: Vec<&str> = rest.split_whitespace().collect();
        let located = |e: Error| match e {
            Error::Parse(p) => Error::Parse(p),
            other => bad(span, other.to_string()),
        };
        match (key.trim(), &mut model) {
            ("worlds", None) => model = Some(KripkeModel::new(words).map_err(located)?),
            ("worlds", Some(_)) => return Err(bad(span, "worlds declared twice")),
            (_, None) => return Err(bad(span, "the `worlds:` line must come first")),
            ("edge", Some(m)) => match words.as_slice() {
                [a, b] => m.add_edge_by_name(a, b).map_err(located)?,
                _ => return Err(bad(span, "an edge names exactly two worlds")),
            },
            ("val", Some(m)) => {
                let (w, props) = words.split_first().ok_or_else(|| bad(span, "a valuation line names a world"))?;
                let w = m.world(w).map_err(located)?;
                for p in props {
                    m.set_true(w, ident(p, span)?).map_err(located)?;
                }
            }
            ("team", Some(m)) => {
                if team.is_some() {
                    return Err(bad(span, "team declared twice"));
                }
                team = Some(m.world_set(words).map_err(located)?);
            }
            (other, _) => return Err(bad(span, format!("unknown key `{other}`"))),
        }
    }
    let end = SourceSpan::point(text.len());
    let model = model.ok_or_else(|| bad(end, "missing `worlds:` line"))?;
    let team = team.ok_or_else(|| bad(end, "missing `team:` line"))?;
    Ok(KripkeFile { model, team })
}

/// `gda NAME ARITY` opens an atom; `rel: {t, …}` adds one relation of its
/// extension, each tuple a bit string (`()` is the empty tuple);
/// `def: FORMULA` gives an SO₂ definition over the reserved symbol `f`.
pub fn load_gdas(text: &str) -> Result<GdaRegistry> {
    struct Pending {
        name: String,
        arity: usize,
        rels: Vec<Relation>,
        def: Option<(String, SourceSpan)>,
        span: SourceSpan,
    }
    fn finish(p: Pending, reg: &mut GdaRegistry) -> Result<()> {
        let def = match &p.def {
            Some((text, span)) => Some(parse_so2(text).map_err(|e| {
                Error::Parse(ParseError { span: SourceSpan::new(e.span.begin + span.begin, e.span.end + span.begin), kind: e.kind })
            })?),
            None => None,
        };
        let located = |e: Error| bad(p.span, e.to_string());
        let g = match (p.rels.is_empty(), def) {
            (true, None) => return Err(bad(p.span, format!("atom `{}` has neither relations nor a definition", p.name))),
            (true, Some(d)) => Gda::from_definition(&p.name, p.arity, d).map_err(located)?,
            (false, d) => {
                let g = Gda::from_relations(&p.name, p.arity, p.rels).map_err(located)?;
                match d {
                    Some(d) => g.with_definition(d).map_err(located)?,
                    None => g,
                }
            }
        };
        let name = g.name().to_string();
        if reg.insert(g).is_some() {
            return Err(bad(p.span, format!("atom `{name}` declared twice")));
        }
        Ok(())
    }

    let mut reg = GdaRegistry::new();
    let mut cur: Option<Pending> = None;
    for (line, span) in lines(text) {
        if let Some(rest) = line.strip_prefix("gda ").or_else(|| line.strip_prefix("gda\t")) {
            if let Some(p) = cur.take() {
                finish(p, &mut reg)?;
            }
            let words: Vec<&str> = rest.split_whitespace().collect();
            let [name, arity] = words.as_slice() else {
                return Err(bad(span, "expected `gda NAME ARITY`"));
            };
            ident(name, span)?;
            let arity: usize = arity.parse().map_err(|_| bad(span, format!("`{arity}` is not an arity")))?;
            cur = Some(Pending { name: name.to_string(), arity, rels: Vec::new(), def: None, span });
            continue;
        }
        let p = cur.as_mut().ok_or_else(|| bad(span, "expected `gda NAME ARITY` first"))?;
        if let Some(rest) = line.strip_prefix("rel:") {
            let inner = rest.trim().strip_prefix('{').and_then(|r| r.strip_suffix('}')).ok_or_else(|| bad(span, "a relation is written `{t, …}`"))?;
            let mut tuples = Vec::new();
            for t in inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                tuples.push(if t == "()" { Vec::new() } else { bits(t, span)? });
            }
            p.rels.push(Relation::from_tuples(p.arity, tuples).map_err(|e| bad(span, e.to_string()))?);
        } else if let Some(rest) = line.strip_prefix("def:") {
            if p.def.is_some() {
                return Err(bad(span, "definition given twice"));
            }
            let lead = line.len() - rest.len();
            p.def = Some((rest.to_string(), SourceSpan::new(span.begin + lead, span.end)));
        } else {
            return Err(bad(span, "expected `rel:` or `def:`"));
        }
    }
    if let Some(p) = cur.take() {
        finish(p, &mut reg)?;
    }
    Ok(reg)
}
