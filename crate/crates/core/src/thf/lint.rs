//! A small structural check of THF text: balanced brackets, one conjecture,
//! unique formula names, symbols declared before use and bound variables.

use std::collections::HashSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct LintError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Lower(String),
    Upper(String),
    Dollar(String),
    Quoted(String),
    Punct(&'static str),
}

const PUNCT: [&str; 21] = [
    "<=>", "=>", "<=", "<~>", "~|", "~&", "!!", "??", "(", ")", "[", "]", ",", ":", ".", "@", "|", "&", "=", "~", ">",
];
const QUANTIFIERS: [&str; 3] = ["!", "?", "^"];

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, LintError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let code = if raw.trim_start().starts_with('%') { "" } else { raw };
        let chars: Vec<char> = code.chars().collect();
        let mut k = 0;
        while k < chars.len() {
            let c = chars[k];
            if c.is_whitespace() {
                k += 1;
            } else if c.is_ascii_alphabetic() || c == '$' {
                let start = k;
                k += 1;
                while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '_') {
                    k += 1;
                }
                let w: String = chars[start..k].iter().collect();
                out.push((
                    line,
                    match c {
                        '$' => Tok::Dollar(w),
                        c if c.is_ascii_uppercase() => Tok::Upper(w),
                        _ => Tok::Lower(w),
                    },
                ));
            } else if c == '\'' {
                let start = k;
                k += 1;
                while k < chars.len() && chars[k] != '\'' {
                    k += if chars[k] == '\\' { 2 } else { 1 };
                }
                if k >= chars.len() {
                    return Err(LintError { line, message: "unterminated quoted word".into() });
                }
                k += 1;
                out.push((line, Tok::Quoted(chars[start..k].iter().collect())));
            } else if let Some(p) = PUNCT.iter().find(|p| code_starts_with(&chars[k..], p)) {
                k += p.len();
                out.push((line, Tok::Punct(p)));
            } else if QUANTIFIERS.contains(&c.to_string().as_str()) {
                k += 1;
                out.push((line, Tok::Punct(QUANTIFIERS.iter().find(|q| q.starts_with(c)).expect("listed"))));
            } else {
                return Err(LintError { line, message: format!("unexpected character `{c}`") });
            }
        }
    }
    Ok(out)
}

fn code_starts_with(chars: &[char], p: &str) -> bool {
    p.chars().enumerate().all(|(i, c)| chars.get(i) == Some(&c))
}

fn word(t: &Tok) -> Option<&str> {
    match t {
        Tok::Lower(w) | Tok::Quoted(w) => Some(w),
        _ => None,
    }
}

/// Checks a THF document. Reports the first problem found.
pub fn lint(text: &str) -> Result<(), LintError> {
    let toks = tokenize(text)?;
    let mut declared: HashSet<String> = HashSet::new();
    let mut types: HashSet<String> = HashSet::new();
    let mut names: HashSet<String> = HashSet::new();
    let mut conjectures = 0;
    let mut k = 0;
    let err = |line: usize, m: String| LintError { line, message: m };
    while k < toks.len() {
        let line = toks[k].0;
        let expect = |k: usize, want: &Tok| -> Result<(), LintError> {
            match toks.get(k) {
                Some((_, t)) if t == want => Ok(()),
                Some((l, t)) => Err(err(*l, format!("expected {want:?}, found {t:?}"))),
                None => Err(err(line, format!("expected {want:?} at end of input"))),
            }
        };
        expect(k, &Tok::Lower("thf".into()))?;
        expect(k + 1, &Tok::Punct("("))?;
        let name = toks.get(k + 2).and_then(|(_, t)| word(t)).ok_or_else(|| err(line, "missing formula name".into()))?;
        if !names.insert(name.to_string()) {
            return Err(err(line, format!("duplicate formula name `{name}`")));
        }
        expect(k + 3, &Tok::Punct(","))?;
        let role = toks.get(k + 4).and_then(|(_, t)| word(t)).ok_or_else(|| err(line, "missing role".into()))?;
        expect(k + 5, &Tok::Punct(","))?;
        // Body runs to the parenthesis closing `thf(`.
        let start = k + 6;
        let mut depth = 0usize;
        let mut end = None;
        for (j, (l, t)) in toks.iter().enumerate().skip(start) {
            match t {
                Tok::Punct("(") | Tok::Punct("[") => depth += 1,
                Tok::Punct(")") | Tok::Punct("]") if depth == 0 => {
                    if *t != Tok::Punct(")") {
                        return Err(err(*l, "unbalanced `]`".into()));
                    }
                    end = Some(j);
                    break;
                }
                Tok::Punct(")") | Tok::Punct("]") => depth -= 1,
                Tok::Punct(".") if depth == 0 => return Err(err(*l, "statement ends inside its formula".into())),
                _ => {}
            }
        }
        let end = end.ok_or_else(|| err(line, "unbalanced parentheses".into()))?;
        expect(end + 1, &Tok::Punct("."))?;
        let body = &toks[start..end];
        match role {
            "type" => {
                let [(_, sym), (_, Tok::Punct(":")), ty @ ..] = body else {
                    return Err(err(line, "type declaration is not `symbol: type`".into()));
                };
                let sym = word(sym).ok_or_else(|| err(line, "declared symbol must be a lower word".into()))?;
                if matches!(ty, [(_, Tok::Dollar(t))] if t == "$tType") {
                    types.insert(sym.to_string());
                } else {
                    check_type_tokens(ty, &types)?;
                }
                if !declared.insert(sym.to_string()) {
                    return Err(err(line, format!("`{sym}` declared twice")));
                }
            }
            "conjecture" | "axiom" | "definition" | "hypothesis" | "lemma" | "theorem" => {
                if role == "conjecture" {
                    conjectures += 1;
                }
                check_formula(body, &declared, &types)?;
            }
            _ => return Err(err(line, format!("unknown role `{role}`"))),
        }
        k = end + 2;
    }
    if conjectures != 1 {
        return Err(err(toks.last().map_or(1, |t| t.0), format!("{conjectures} conjectures, expected one")));
    }
    Ok(())
}

fn check_type_tokens(ty: &[(usize, Tok)], types: &HashSet<String>) -> Result<(), LintError> {
    for (l, t) in ty {
        match t {
            Tok::Lower(w) | Tok::Quoted(w) if !types.contains(w) => {
                return Err(LintError { line: *l, message: format!("type `{w}` used before declaration") })
            }
            Tok::Dollar(d) if !matches!(d.as_str(), "$o" | "$i") => {
                return Err(LintError { line: *l, message: format!("unexpected type `{d}`") })
            }
            Tok::Upper(v) => return Err(LintError { line: *l, message: format!("variable `{v}` in a type") }),
            _ => {}
        }
    }
    Ok(())
}

fn check_formula(body: &[(usize, Tok)], declared: &HashSet<String>, types: &HashSet<String>) -> Result<(), LintError> {
    // Bound variables with the bracket depth their scope ends at.
    let mut scopes: Vec<(usize, Vec<String>)> = Vec::new();
    let mut depth = 0usize;
    let mut k = 0;
    while k < body.len() {
        let (l, t) = &body[k];
        match t {
            Tok::Punct(q) if QUANTIFIERS.contains(q) => {
                if body.get(k + 1).map(|x| &x.1) != Some(&Tok::Punct("[")) {
                    return Err(LintError { line: *l, message: format!("`{q}` without a variable list") });
                }
                let close = body[k..]
                    .iter()
                    .position(|x| x.1 == Tok::Punct("]"))
                    .map(|p| p + k)
                    .ok_or_else(|| LintError { line: *l, message: "unclosed variable list".into() })?;
                let mut vars = Vec::new();
                for group in body[k + 2..close].split(|x| x.1 == Tok::Punct(",")) {
                    match group {
                        [(_, Tok::Upper(v)), (_, Tok::Punct(":")), ty @ ..] if !ty.is_empty() => {
                            check_type_tokens(ty, types)?;
                            vars.push(v.clone());
                        }
                        _ => return Err(LintError { line: *l, message: "malformed variable list".into() }),
                    }
                }
                scopes.push((depth, vars));
                k = close + 1;
                continue;
            }
            Tok::Punct("(") | Tok::Punct("[") => depth += 1,
            Tok::Punct(")") | Tok::Punct("]") => {
                depth -= 1;
                while scopes.last().is_some_and(|s| s.0 > depth) {
                    scopes.pop();
                }
            }
            Tok::Upper(v) if !scopes.iter().any(|s| s.1.contains(v)) => {
                return Err(LintError { line: *l, message: format!("unbound variable `{v}`") });
            }
            Tok::Lower(w) | Tok::Quoted(w) if !declared.contains(w) => {
                return Err(LintError { line: *l, message: format!("`{w}` used before declaration") });
            }
            Tok::Dollar(d) if !matches!(d.as_str(), "$true" | "$false") => {
                return Err(LintError { line: *l, message: format!("unexpected `{d}`") });
            }
            _ => {}
        }
        k += 1;
    }
    Ok(())
}
