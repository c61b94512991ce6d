use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use alcove_atlas::bijections::{
    alc_i, hypersimplex_alcove, pair_i, sigma_i, word1, word1_inverse, words_i, words_i_inverse,
};
use alcove_atlas::{Alcove, HypersimplexSpec, LatticePoint, Permutation, WeakComposition, Word};
use anyhow::Context;
use clap::{Args, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::{usage, Format, OutputArgs, SpecArgs, EXIT_FAIL};

#[derive(Debug, Clone, Args)]
pub struct LabelArgs {
    /// Spec of the alcove; inferred from the vertices where possible.
    #[command(flatten)]
    spec: SpecArgs,
    /// Labeling to apply.
    #[arg(long, value_enum)]
    map: MapArg,
    /// An alcove as a JSON array of vertices, or a label as a JSON object
    /// with fields among word, perm, comp.
    #[arg(long, conflicts_with = "input_file")]
    input: Option<String>,
    #[arg(long)]
    input_file: Option<PathBuf>,
    /// Apply the map and its inverse and check the input comes back.
    #[arg(long)]
    roundtrip: bool,
    /// json or text.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MapArg {
    Word1,
    Pair,
    Words,
    Sigma,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLabel {
    word: Option<Vec<u32>>,
    perm: Option<Vec<u32>>,
    comp: Option<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Label {
    Word(Word),
    Pair(WeakComposition, Permutation),
    WordPerm(Word, Permutation),
    Perm(Permutation),
}

impl Label {
    fn to_json(&self) -> Value {
        match self {
            Label::Word(w) => json!({ "word": w }),
            Label::Pair(c, p) => json!({ "comp": c, "perm": p }),
            Label::WordPerm(w, p) => json!({ "word": w, "perm": p }),
            Label::Perm(p) => json!({ "perm": p }),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Word(w) => write!(f, "{w}"),
            Label::Pair(c, p) => write!(f, "({c}, {p})"),
            Label::WordPerm(w, p) => write!(f, "({w}, {p})"),
            Label::Perm(p) => write!(f, "{p}"),
        }
    }
}

fn forward(map: MapArg, alcove: &Alcove) -> anyhow::Result<Label> {
    Ok(match map {
        MapArg::Word1 => Label::Word(word1(alcove)?),
        MapArg::Pair => {
            let p = pair_i(alcove);
            Label::Pair(p.comp, p.perm)
        }
        MapArg::Words => {
            let l = words_i(alcove)?;
            Label::WordPerm(l.word, l.perm)
        }
        MapArg::Sigma => Label::Perm(sigma_i(alcove)?),
    })
}

fn inverse(map: MapArg, label: &Label, spec: &HypersimplexSpec) -> anyhow::Result<Alcove> {
    Ok(match (map, label) {
        (MapArg::Word1, Label::Word(w)) => word1_inverse(w)?,
        (MapArg::Pair, Label::Pair(c, p)) => alc_i(c, p, spec)?,
        (MapArg::Words, Label::WordPerm(w, p)) => words_i_inverse(w, p, spec)?,
        (MapArg::Sigma, Label::Perm(p)) => {
            let a = hypersimplex_alcove(p);
            if a.spec() != spec {
                return Err(usage(format!("{p} labels an alcove of {}, not {spec}", a.spec())));
            }
            a
        }
        _ => return Err(usage("label fields do not match --map")),
    })
}

fn alcove_spec(args: &SpecArgs, map: MapArg, points: &[LatticePoint]) -> anyhow::Result<HypersimplexSpec> {
    let first = points.first().ok_or_else(|| usage("an alcove needs vertices"))?;
    let d = args.d.unwrap_or(first.dim().saturating_sub(1));
    let total = first.sum();
    let (r, i) = match (args.r, args.i, map) {
        (Some(r), Some(i), _) => (r, i),
        (Some(r), None, _) if r > 0 => (r, total / r),
        (None, Some(i), _) if i > 0 => (total / i, i),
        (None, None, MapArg::Word1) => (total, 1),
        (None, None, MapArg::Sigma) => (1, total),
        _ => return Err(usage("give --r or --i for this alcove")),
    };
    Ok(HypersimplexSpec::new(r, i, d)?)
}

fn label_spec(args: &SpecArgs, map: MapArg, raw: &RawLabel) -> anyhow::Result<HypersimplexSpec> {
    let d = args.d.or_else(|| raw.word.as_ref().or(raw.perm.as_ref()).map(Vec::len));
    let d = d.ok_or_else(|| usage("cannot tell the dimension; give --d"))?;
    let (r, i) = match map {
        MapArg::Word1 => (args.r, Some(args.i.unwrap_or(1))),
        MapArg::Sigma => (
            Some(args.r.unwrap_or(1)),
            args.i.or_else(|| {
                let p = Permutation::new(raw.perm.clone()?).ok()?;
                Some(p.eulerian_class() as u32)
            }),
        ),
        _ => (args.r, args.i),
    };
    let (Some(r), Some(i)) = (r, i) else {
        return Err(usage("give --r and --i for this label"));
    };
    Ok(HypersimplexSpec::new(r, i, d)?)
}

fn parse_label(map: MapArg, raw: &RawLabel, spec: &HypersimplexSpec) -> anyhow::Result<Label> {
    let word = |w: &Vec<u32>| Word::new(w.clone(), spec.dilation());
    let perm = |p: &Vec<u32>| Permutation::new(p.clone());
    Ok(match (map, &raw.word, &raw.perm, &raw.comp) {
        (MapArg::Word1, Some(w), None, None) => Label::Word(word(w)?),
        (MapArg::Pair, None, Some(p), Some(c)) => Label::Pair(WeakComposition::new(c.clone()), perm(p)?),
        (MapArg::Words, Some(w), Some(p), None) => Label::WordPerm(word(w)?, perm(p)?),
        (MapArg::Sigma, None, Some(p), None) => Label::Perm(perm(p)?),
        _ => {
            return Err(usage(
                "label fields do not match --map (word1: word; pair: comp, perm; words: word, perm; sigma: perm)",
            ))
        }
    })
}

enum Output {
    Label(Label),
    Alcove(Alcove),
}

pub fn cmd_label(args: &LabelArgs) -> anyhow::Result<u8> {
    let text = match (&args.input, &args.input_file) {
        (Some(s), _) => s.clone(),
        (None, Some(path)) => {
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
        }
        (None, None) => return Err(usage("give --input or --input-file")),
    };
    let value: Value = serde_json::from_str(&text).map_err(|e| usage(format!("malformed JSON: {e}")))?;
    let (result, roundtrip_ok) = if value.is_array() {
        let points: Vec<LatticePoint> =
            serde_json::from_value(value).map_err(|e| usage(format!("not a list of lattice points: {e}")))?;
        let spec = alcove_spec(&args.spec, args.map, &points)?;
        let alcove = Alcove::new(points, spec)?;
        let label = forward(args.map, &alcove)?;
        let ok = if args.roundtrip { Some(inverse(args.map, &label, &spec)? == alcove) } else { None };
        (Output::Label(label), ok)
    } else {
        let raw: RawLabel =
            serde_json::from_value(value).map_err(|e| usage(format!("not a label object: {e}")))?;
        let spec = label_spec(&args.spec, args.map, &raw)?;
        let label = parse_label(args.map, &raw, &spec)?;
        let alcove = inverse(args.map, &label, &spec)?;
        let ok = if args.roundtrip { Some(forward(args.map, &alcove)? == label) } else { None };
        (Output::Alcove(alcove), ok)
    };

    let mut out = args.output.open()?;
    match (&result, args.format) {
        (Output::Label(l), Format::Text) => writeln!(out, "{l}")?,
        (Output::Label(l), _) => writeln!(out, "{}", l.to_json())?,
        (Output::Alcove(a), Format::Text) => writeln!(out, "{a}")?,
        (Output::Alcove(a), _) => writeln!(out, "{}", serde_json::to_string(a)?)?,
    }
    out.flush()?;
    match roundtrip_ok {
        Some(true) => {
            eprintln!("roundtrip: ok");
            Ok(0)
        }
        Some(false) => {
            eprintln!("roundtrip: MISMATCH");
            Ok(EXIT_FAIL)
        }
        None => Ok(0),
    }
}
