//! Text, LaTeX and JSON renderings of expressions. Terms always appear in
//! canonical word order, so output is deterministic.

use braces_core::{Atom, Expr, Flavor, Generator, Scalar, Word};
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Latex,
    Json,
}

pub fn render(e: &Expr, format: Format) -> String {
    match format {
        Format::Text => text(e),
        Format::Latex => latex(e),
        Format::Json => json(e),
    }
}

fn text_atom(a: &Atom) -> String {
    match a {
        Atom::Gen(g) => format!("a{}", g.index),
        Atom::Nabla(w) => format!("∇({})", text_word(w)),
    }
}

fn text_word(w: &Word) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.atoms().iter().map(text_atom).collect::<Vec<_>>().join(" ")
}

fn latex_atom(a: &Atom) -> String {
    match a {
        Atom::Gen(g) => format!("a_{{{}}}", g.index),
        Atom::Nabla(w) => format!("\\nabla({})", latex_word(w)),
    }
}

fn latex_word(w: &Word) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.atoms().iter().map(latex_atom).collect::<Vec<_>>().join(" ")
}

fn latex_scalar(c: &Scalar) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

/// Joins signed terms as `t1 - t2 + 3/2 t3`, printing `0` for the empty sum.
fn join_terms(e: &Expr, scalar: fn(&Scalar) -> String, word: fn(&Word) -> String) -> String {
    let mut out = String::new();
    for (i, (w, c)) in e.iter().enumerate() {
        let negative = c.is_negative();
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let magnitude = c.abs();
        if !magnitude.is_one() {
            out.push_str(&scalar(&magnitude));
            out.push(' ');
        }
        out.push_str(&word(w));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn text(e: &Expr) -> String {
    join_terms(e, |c| c.to_string(), text_word)
}

pub fn latex(e: &Expr) -> String {
    join_terms(e, latex_scalar, latex_word)
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
#[serde(untagged)]
enum JsonAtom {
    Gen {
        #[serde(rename = "gen")]
        index: u32,
        #[serde(default)]
        degree: i32,
    },
    Nabla {
        nabla: Vec<JsonAtom>,
    },
}

#[derive(Serialize, Deserialize, Debug)]
struct JsonTerm {
    coeff: String,
    word: Vec<JsonAtom>,
}

#[derive(Serialize, Deserialize, Debug)]
struct JsonExpr {
    flavor: String,
    terms: Vec<JsonTerm>,
}

fn to_json_word(w: &Word) -> Vec<JsonAtom> {
    w.atoms()
        .iter()
        .map(|a| match a {
            Atom::Gen(g) => JsonAtom::Gen {
                index: g.index,
                degree: g.degree,
            },
            Atom::Nabla(inner) => JsonAtom::Nabla {
                nabla: to_json_word(inner),
            },
        })
        .collect()
}

fn from_json_word(atoms: Vec<JsonAtom>) -> Word {
    Word::new(
        atoms
            .into_iter()
            .map(|a| match a {
                JsonAtom::Gen { index, degree } => Atom::Gen(Generator::new(index, degree)),
                JsonAtom::Nabla { nabla } => Atom::Nabla(from_json_word(nabla)),
            })
            .collect(),
    )
}

/// `{"flavor": …, "terms": [{"coeff": "p/q", "word": [atom…]}]}` with atoms
/// `{"gen": i, "degree": d}` or `{"nabla": [atom…]}`.
pub fn json(e: &Expr) -> String {
    let doc = JsonExpr {
        flavor: e.flavor().to_string(),
        terms: e
            .iter()
            .map(|(w, c)| JsonTerm {
                coeff: c.to_string(),
                word: to_json_word(w),
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("plain data serializes")
}

/// Inverse of [`json`]. Input need not be canonical; it is normalized.
pub fn parse_json(s: &str) -> Result<Expr, String> {
    let doc: JsonExpr = serde_json::from_str(s).map_err(|e| e.to_string())?;
    let flavor = match doc.flavor.as_str() {
        "commutative" => Flavor::Commutative,
        "noncommutative" => Flavor::Noncommutative,
        other => return Err(format!("unknown flavor {other:?}")),
    };
    let mut raw = Vec::with_capacity(doc.terms.len());
    for t in doc.terms {
        raw.push((crate::input::parse_rational(&t.coeff)?, from_json_word(t.word)));
    }
    Ok(Expr::normalize(raw, flavor))
}
