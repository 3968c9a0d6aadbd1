//! Query dispatch. Every answer is one or more output lines.
//!
//! Node arguments: `root`, a leaf rank `r`, or `lo:hi`, the lowest node whose
//! rank interval covers `lo..=hi`. Nodes print as `lo:hi string-depth`, which
//! reads back as the same node.

use cdawg_cst::{Cst, Error, NodeId};

pub const OPS: &[&str] = &[
    "sa",
    "isa",
    "lcp",
    "plcp",
    "extract",
    "selectleaf",
    "lca",
    "parent",
    "child",
    "suffixlink",
    "weinerlink",
    "lce",
    "ipm",
    "letter",
    "ancestor",
    "strancestor",
    "depth",
    "deepest",
];

#[derive(Debug)]
pub enum QueryError {
    Usage(String),
    Index(Error),
}

impl From<Error> for QueryError {
    fn from(e: Error) -> Self {
        QueryError::Index(e)
    }
}

type Answer = Result<Vec<String>, QueryError>;

fn usage(msg: impl Into<String>) -> QueryError {
    QueryError::Usage(msg.into())
}

fn number(s: &str) -> Result<usize, QueryError> {
    s.parse().map_err(|_| usage(format!("expected a number, got {s:?}")))
}

/// `i` or `i:j`.
fn range(s: &str) -> Result<(usize, usize), QueryError> {
    match s.split_once(':') {
        Some((a, b)) => Ok((number(a)?, number(b)?)),
        None => number(s).map(|i| (i, i)),
    }
}

fn node(cst: &Cst, s: &str) -> Result<NodeId, QueryError> {
    if s == "root" {
        return Ok(cst.root());
    }
    let (lo, hi) = range(s)?;
    if lo == hi {
        Ok(cst.select_leaf(lo)?)
    } else {
        Ok(cst.lca(lo.min(hi), lo.max(hi))?)
    }
}

/// Symbol code of a one-byte argument; `#` is the separator unless the text
/// contains `#`. `None` when the byte does not occur in the text.
fn symbol(cst: &Cst, s: &str) -> Result<Option<u32>, QueryError> {
    let &[b] = s.as_bytes() else {
        return Err(usage(format!("expected one character, got {s:?}")));
    };
    match cst.source_map().iter().position(|&x| x == b) {
        Some(k) => Ok(Some(k as u32 + 1)),
        None if b == b'#' => Ok(Some(0)),
        None => Ok(None),
    }
}

fn show(cst: &Cst, id: NodeId) -> Result<String, QueryError> {
    let (lo, hi) = cst.interval(id)?;
    Ok(format!("{lo}:{hi} {}", id.depth))
}

fn show_opt(cst: &Cst, id: Option<NodeId>) -> Answer {
    Ok(vec![match id {
        Some(id) => show(cst, id)?,
        None => "none".to_string(),
    }])
}

fn lines<T: ToString>(xs: impl IntoIterator<Item = T>) -> Vec<String> {
    xs.into_iter().map(|x| x.to_string()).collect()
}

pub fn run(cst: &Cst, op: &str, args: &[String]) -> Answer {
    let arity = |k: usize| {
        if args.len() == k {
            Ok(())
        } else {
            Err(usage(format!("{op} takes {k} argument(s), got {}", args.len())))
        }
    };
    match op {
        "sa" | "isa" | "lcp" | "plcp" | "extract" => {
            arity(1)?;
            let (i, j) = range(&args[0])?;
            if i > j {
                return Err(QueryError::Index(Error::InvalidRange { start: i, end: j }));
            }
            Ok(match op {
                "sa" => lines(cst.sa_range(i, j)?),
                "isa" => lines(cst.isa_range(i, j)?),
                "lcp" => lines(cst.lcp_range(i, j)?),
                "plcp" => lines((i..=j).map(|p| cst.plcp(p)).collect::<Result<Vec<_>, _>>()?),
                _ => vec![String::from_utf8_lossy(&cst.render(&cst.extract(i, j)?)).into_owned()],
            })
        }
        "selectleaf" => {
            arity(1)?;
            Ok(vec![show(cst, cst.select_leaf(number(&args[0])?)?)?])
        }
        "lca" => {
            arity(2)?;
            let (a, b) = (node(cst, &args[0])?, node(cst, &args[1])?);
            Ok(vec![show(cst, cst.lca_nodes(a, b)?)?])
        }
        "parent" | "suffixlink" => {
            arity(1)?;
            let id = node(cst, &args[0])?;
            let got = if op == "parent" { cst.parent(id)? } else { cst.suffix_link(id)? };
            show_opt(cst, got)
        }
        "child" | "weinerlink" => {
            arity(2)?;
            let id = node(cst, &args[0])?;
            let got = match (op, symbol(cst, &args[1])?) {
                ("child", Some(c)) => cst.child(id, c)?,
                ("child", None) => None,
                (_, Some(c)) => cst.weiner_link(id, c)?,
                // a symbol absent from the text has no link, but lite indexes still refuse
                (_, None) => cst.weiner_link(id, 0).map(|_| None)?,
            };
            show_opt(cst, got)
        }
        "lce" => {
            arity(2)?;
            Ok(vec![cst.lce(number(&args[0])?, number(&args[1])?)?.to_string()])
        }
        "ipm" => {
            let (i, j) = match args.len() {
                1 => range(&args[0])?,
                2 => (number(&args[0])?, number(&args[1])?),
                k => return Err(usage(format!("ipm takes i:j, got {k} arguments"))),
            };
            Ok(lines(cst.internal_pattern_match(i, j)?))
        }
        "letter" => {
            arity(2)?;
            let c = cst.letter(node(cst, &args[0])?, number(&args[1])?)?;
            Ok(vec![String::from_utf8_lossy(&cst.render(&[c])).into_owned()])
        }
        "ancestor" | "strancestor" => {
            arity(2)?;
            let (id, d) = (node(cst, &args[0])?, number(&args[1])?);
            let got = if op == "ancestor" { cst.ancestor(id, d)? } else { cst.str_ancestor(id, d)? };
            Ok(vec![show(cst, got)?])
        }
        "depth" => {
            arity(1)?;
            Ok(vec![cst.depth(node(cst, &args[0])?)?.to_string()])
        }
        "deepest" => {
            let by_depth = match args.get(1).map(String::as_str) {
                None | Some("string") => false,
                Some("depth") => true,
                Some(other) => return Err(usage(format!("deepest takes `string` or `depth`, got {other:?}"))),
            };
            if args.is_empty() || args.len() > 2 {
                return Err(usage("deepest takes a node and an optional variant"));
            }
            let id = node(cst, &args[0])?;
            let got = if by_depth {
                cst.deepest_node_by_depth(id)?
            } else {
                cst.deepest_node_by_string_depth(id)?
            };
            Ok(vec![show(cst, got)?])
        }
        _ => Err(usage(format!("unknown operation {op:?}; expected one of {}", OPS.join(", ")))),
    }
}
