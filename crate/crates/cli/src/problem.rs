//! Line-oriented `key = value` problem files.
//!
//! ```text
//! p = 32003
//! vars = [x, y]
//! gamma = []
//! J = ["x", "y"]
//! I = [["x^2", "y^3"]]
//! base0 = 4
//! window = 3
//! seed = 7
//! ```

use mixmult::field::DEFAULT_CHARACTERISTIC;
use mixmult::local::LocalRingModel;
use mixmult::mixed::ProblemInstance;
use mixmult::sample::RandomInstance;
use mixmult::{Ideal, MonomialOrder, RingContext};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemFile {
    pub p: u32,
    pub vars: Vec<String>,
    pub gamma: Vec<String>,
    pub j: Vec<String>,
    pub ideals: Vec<Vec<String>>,
    pub base0: Option<u32>,
    pub window: Option<u32>,
    pub seed: Option<u64>,
    pub retries: Option<u32>,
}

#[derive(Clone, Debug, PartialEq)]
enum Value {
    Bare(String),
    Str(String),
    List(Vec<Value>),
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
    /// Characters preceding the value in its line, for column reporting.
    offset: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, message: impl Into<String>) -> CliError {
        let column = self.text[..self.pos.min(self.text.len())].chars().count() + self.offset + 1;
        CliError::syntax(self.line, column, message)
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek().filter(|c| c.is_whitespace()) {
            self.pos += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn value(&mut self) -> Result<Value, CliError> {
        self.skip_ws();
        match self.peek() {
            Some('[') => {
                self.pos += 1;
                let mut items = Vec::new();
                self.skip_ws();
                if self.peek() == Some(']') {
                    self.pos += 1;
                    return Ok(Value::List(items));
                }
                loop {
                    items.push(self.value()?);
                    self.skip_ws();
                    match self.peek() {
                        Some(',') => self.pos += 1,
                        Some(']') => {
                            self.pos += 1;
                            return Ok(Value::List(items));
                        }
                        _ => return Err(self.err("expected ',' or ']'")),
                    }
                }
            }
            Some('"') => {
                // reuse the JSON string grammar, escapes included
                let rest = &self.text[self.pos..];
                let mut stream = serde_json::Deserializer::from_str(rest).into_iter::<String>();
                match stream.next() {
                    Some(Ok(s)) => {
                        self.pos += stream.byte_offset();
                        Ok(Value::Str(s))
                    }
                    _ => Err(self.err("unterminated or malformed string")),
                }
            }
            Some(_) => {
                let start = self.pos;
                while let Some(c) = self.peek() {
                    if c == ',' || c == ']' || c == '[' || c.is_whitespace() {
                        break;
                    }
                    self.pos += c.len_utf8();
                }
                if start == self.pos {
                    return Err(self.err("expected a value"));
                }
                Ok(Value::Bare(self.text[start..self.pos].to_string()))
            }
            None => Err(self.err("missing value")),
        }
    }
}

fn parse_value(text: &str, line: usize, offset: usize) -> Result<Value, CliError> {
    let mut c = Cursor {
        text,
        pos: 0,
        line,
        offset,
    };
    let v = c.value()?;
    c.skip_ws();
    if c.pos != text.len() {
        return Err(c.err("trailing characters after the value"));
    }
    Ok(v)
}

fn strings(v: &Value, key: &str, line: usize, quoted_only: bool) -> Result<Vec<String>, CliError> {
    let Value::List(items) = v else {
        return Err(CliError::syntax(line, 1, format!("`{key}` must be a list")));
    };
    items
        .iter()
        .map(|i| match i {
            Value::Str(s) => Ok(s.clone()),
            Value::Bare(s) if !quoted_only => Ok(s.clone()),
            _ => Err(CliError::syntax(
                line,
                1,
                format!("`{key}` must hold quoted strings"),
            )),
        })
        .collect()
}

fn number<T: std::str::FromStr>(v: &Value, key: &str, line: usize) -> Result<T, CliError> {
    match v {
        Value::Bare(s) => s.parse().map_err(|_| {
            CliError::syntax(line, 1, format!("`{key}` must be a nonnegative integer"))
        }),
        _ => Err(CliError::syntax(
            line,
            1,
            format!("`{key}` must be a nonnegative integer"),
        )),
    }
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

fn quoted_list(items: &[String]) -> String {
    let inner: Vec<String> = items.iter().map(|s| quote(s)).collect();
    format!("[{}]", inner.join(", "))
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut p = None;
        let mut vars = None;
        let mut gamma = None;
        let mut j = None;
        let mut ideals = None;
        let mut out_opts: (Option<u32>, Option<u32>, Option<u64>, Option<u32>) =
            (None, None, None, None);
        let mut origin: Vec<(&str, usize, &str)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = strip_comment(raw);
            if content.trim().is_empty() {
                continue;
            }
            let Some(eq) = content.find('=') else {
                return Err(CliError::syntax(line, 1, "expected `key = value`"));
            };
            let key = content[..eq].trim();
            let offset = raw[..eq + 1].chars().count();
            let value = parse_value(&content[eq + 1..], line, offset)?;
            let dup = || CliError::syntax(line, 1, format!("duplicate key `{key}`"));
            origin.push((key, line, raw));
            match key {
                "p" => set(&mut p, number(&value, key, line)?).map_err(|_| dup())?,
                "vars" => set(&mut vars, strings(&value, key, line, false)?).map_err(|_| dup())?,
                "gamma" => set(&mut gamma, strings(&value, key, line, true)?).map_err(|_| dup())?,
                "J" => set(&mut j, strings(&value, key, line, true)?).map_err(|_| dup())?,
                "I" => {
                    let Value::List(items) = &value else {
                        return Err(CliError::syntax(
                            line,
                            offset + 1,
                            "`I` must be a list of lists",
                        ));
                    };
                    let lists = items
                        .iter()
                        .map(|i| strings(i, key, line, true))
                        .collect::<Result<Vec<_>, _>>()?;
                    set(&mut ideals, lists).map_err(|_| dup())?
                }
                "base0" => set(&mut out_opts.0, number(&value, key, line)?).map_err(|_| dup())?,
                "window" => set(&mut out_opts.1, number(&value, key, line)?).map_err(|_| dup())?,
                "seed" => set(&mut out_opts.2, number(&value, key, line)?).map_err(|_| dup())?,
                "retries" => set(&mut out_opts.3, number(&value, key, line)?).map_err(|_| dup())?,
                other => return Err(CliError::syntax(line, 1, format!("unknown key `{other}`"))),
            }
        }
        let missing = |k: &str| CliError::input(format!("missing key `{k}`"));
        let file = ProblemFile {
            p: p.unwrap_or(DEFAULT_CHARACTERISTIC),
            vars: vars.ok_or_else(|| missing("vars"))?,
            gamma: gamma.unwrap_or_default(),
            j: j.ok_or_else(|| missing("J"))?,
            ideals: ideals.ok_or_else(|| missing("I"))?,
            base0: out_opts.0,
            window: out_opts.1,
            seed: out_opts.2,
            retries: out_opts.3,
        };
        file.check_generators(&origin)?;
        Ok(file)
    }

    /// Parses every generator, reporting failures at their place in the file.
    fn check_generators(&self, origin: &[(&str, usize, &str)]) -> Result<(), CliError> {
        let line_of = |key: &str| {
            origin
                .iter()
                .find(|o| o.0 == key)
                .map(|o| (o.1, o.2))
                .unwrap_or((0, ""))
        };
        let ctx = self.context().map_err(|e| e.at_line(line_of("vars").0))?;
        let groups = std::iter::once(("gamma", &self.gamma))
            .chain(std::iter::once(("J", &self.j)))
            .chain(self.ideals.iter().map(|g| ("I", g)));
        for (key, gens) in groups {
            let (line, raw) = line_of(key);
            for g in gens {
                if let Err(e) = ctx.parse_homogeneous(g) {
                    // column of the generator's text inside the line
                    let start = raw
                        .find(&quote(g))
                        .map(|i| raw[..i].chars().count() + 1)
                        .unwrap_or(0);
                    let err = match e {
                        mixmult::Error::Syntax { column, message } => CliError::syntax(
                            line,
                            start + column,
                            format!("in {}: {message}", quote(g)),
                        ),
                        other => CliError::from(other).at(line, start + 1),
                    };
                    return Err(err);
                }
            }
        }
        Ok(())
    }

    /// Canonical text; `parse(print(f)) == f`.
    pub fn print(&self) -> String {
        let mut out = format!("p = {}\nvars = [{}]\n", self.p, self.vars.join(", "));
        out += &format!("gamma = {}\n", quoted_list(&self.gamma));
        out += &format!("J = {}\n", quoted_list(&self.j));
        let lists: Vec<String> = self.ideals.iter().map(|g| quoted_list(g)).collect();
        out += &format!("I = [{}]\n", lists.join(", "));
        for (key, v) in [
            ("base0", self.base0.map(u64::from)),
            ("window", self.window.map(u64::from)),
            ("seed", self.seed),
        ] {
            if let Some(v) = v {
                out += &format!("{key} = {v}\n");
            }
        }
        if let Some(r) = self.retries {
            out += &format!("retries = {r}\n");
        }
        out
    }

    pub fn context(&self) -> Result<RingContext, CliError> {
        Ok(RingContext::new(
            &self.vars,
            self.p,
            MonomialOrder::Grevlex,
        )?)
    }

    /// Validates the whole file: syntax and homogeneity of every generator,
    /// `J` primary to the maximal ideal, and a non-nilpotent product.
    pub fn instance(&self) -> Result<ProblemInstance, CliError> {
        let ctx = self.context()?;
        let ideal = |gens: &[String]| -> Result<Ideal, CliError> {
            let polys = gens
                .iter()
                .map(|g| ctx.parse_homogeneous(g))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Ideal::new(ctx.ring(), polys)?)
        };
        let model = LocalRingModel::new(ctx.clone(), ideal(&self.gamma)?)?;
        let j = ideal(&self.j)?;
        let ideals = self
            .ideals
            .iter()
            .map(|g| ideal(g))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ProblemInstance::new(model, j, ideals)?)
    }

    /// Parse and validate in one go.
    pub fn load(text: &str) -> Result<(ProblemFile, ProblemInstance), CliError> {
        let file = ProblemFile::parse(text)?;
        let instance = file.instance()?;
        Ok((file, instance))
    }

    pub fn from_random(inst: &RandomInstance) -> Self {
        ProblemFile {
            p: DEFAULT_CHARACTERISTIC,
            vars: inst.vars.clone(),
            gamma: Vec::new(),
            j: inst.j.clone(),
            ideals: inst.ideals.clone(),
            base0: None,
            window: None,
            seed: None,
            retries: None,
        }
    }
}

fn set<T>(slot: &mut Option<T>, v: T) -> Result<(), ()> {
    if slot.is_some() {
        return Err(());
    }
    *slot = Some(v);
    Ok(())
}

/// Drops a `#` comment that is not inside a quoted string.
fn strip_comment(line: &str) -> &str {
    let mut in_str = false;
    let mut escaped = false;
    for (i, c) in line.char_indices() {
        match c {
            _ if escaped => escaped = false,
            '\\' if in_str => escaped = true,
            '"' => in_str = !in_str,
            '#' if !in_str => return &line[..i],
            _ => {}
        }
    }
    line
}
