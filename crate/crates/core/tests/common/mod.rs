#![allow(dead_code)]

use std::path::{Path, PathBuf};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn corpus_dir(kind: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(kind)
}

const NAMES: &[&str] = &["a", "b", "total", "x1", "item", "flag", "value", "n"];

fn name(rng: &mut StdRng) -> &'static str {
    NAMES.choose(rng).unwrap()
}

fn atom(rng: &mut StdRng) -> String {
    match rng.gen_range(0..6) {
        0 => rng.gen_range(0..1000).to_string(),
        1 => format!("{}.{}", rng.gen_range(0..10), rng.gen_range(0..100)),
        2 => "'text'".to_string(),
        3 => format!("{}[{}]", name(rng), rng.gen_range(0..4)),
        _ => name(rng).to_string(),
    }
}

fn expr(rng: &mut StdRng) -> String {
    let ops = ["+", "-", "*", "//", "%", "**"];
    let mut e = atom(rng);
    for _ in 0..rng.gen_range(0..3) {
        e = format!("{e} {} {}", ops.choose(rng).unwrap(), atom(rng));
    }
    e
}

fn cond(rng: &mut StdRng) -> String {
    let cmp = ["<", ">", "==", "!=", "<=", ">="];
    match rng.gen_range(0..3) {
        0 => name(rng).to_string(),
        1 => format!("not {}", name(rng)),
        _ => format!("{} {} {}", expr(rng), cmp.choose(rng).unwrap(), atom(rng)),
    }
}

/// A simple statement, possibly spread over several physical lines by a
/// backslash continuation or an open bracket.
fn simple_statement(rng: &mut StdRng, indent: &str) -> String {
    let pad = " ".repeat(rng.gen_range(0..12));
    match rng.gen_range(0..10) {
        0 => format!("{} = {} + \\\n{pad}{}", name(rng), atom(rng), expr(rng)),
        1 => format!("{}({},\n{pad}{})", name(rng), expr(rng), expr(rng)),
        2 => format!("{} = [\n{pad}{},\n{indent}{}]", name(rng), atom(rng), atom(rng)),
        3 => format!("{} = {}; {} = {}", name(rng), atom(rng), name(rng), atom(rng)),
        4 => format!("{}({})", name(rng), expr(rng)),
        5 => ["pass", "break", "continue"].choose(rng).unwrap().to_string(),
        6 => format!("{} += {}  # bump", name(rng), atom(rng)),
        _ => format!("{} = {}", name(rng), expr(rng)),
    }
}

fn filler(rng: &mut StdRng) -> String {
    let ws: String = (0..rng.gen_range(0..6))
        .map(|_| if rng.gen_bool(0.2) { '\t' } else { ' ' })
        .collect();
    match rng.gen_range(0..3) {
        0 => String::new(),
        1 => ws,
        _ => format!("{ws}# comment {}", rng.gen_range(0..100)),
    }
}

/// A random program of block headers and simple statements with nesting
/// depth at most `max_depth`, blank and comment lines, line continuations
/// and bracketed multi-line statements. Indentation mixes spaces and tabs
/// but is always consistent.
pub fn gen_program(rng: &mut StdRng, max_depth: usize) -> String {
    let mut levels: Vec<String> = vec![String::new()];
    let mut out = String::new();
    let mut need_body = false;
    let count = rng.gen_range(1..40);
    let mut i = 0;
    while i < count || need_body {
        i += 1;
        if rng.gen_bool(0.15) {
            out.push_str(&filler(rng));
            out.push('\n');
            continue;
        }
        if need_body {
            let unit = match rng.gen_range(0..4) {
                0 => "\t".to_string(),
                n => " ".repeat(n * 2 - rng.gen_range(0..2)),
            };
            let deeper = format!("{}{unit}", levels.last().unwrap());
            levels.push(deeper);
            need_body = false;
        } else if levels.len() > 1 && rng.gen_bool(0.3) {
            let keep = rng.gen_range(1..levels.len());
            levels.truncate(keep);
        }
        let indent = levels.last().unwrap().clone();
        out.push_str(&indent);
        if levels.len() <= max_depth && i < count && rng.gen_bool(0.3) {
            let head = ["if", "while"].choose(rng).unwrap();
            out.push_str(&format!("{head} {}:", cond(rng)));
            need_body = true;
        } else {
            out.push_str(&simple_statement(rng, &indent));
        }
        out.push('\n');
    }
    if rng.gen_bool(0.1) {
        out.pop();
    }
    out
}
