//! Line-oriented instance file format.
//!
//! ```text
//! # comment
//! boys 3
//! girls 3
//! base 1              # optional, 0 or 1
//! autocomplete on     # optional, fills missing list tails ascending
//! b 1: 1 2 3
//! b 3: (2 3) 1        # tie-group
//! g 1: 3 1 2
//! ult 1: 2
//! bottom 1: 3
//! slots 2: 2
//! fictitious b: 4     # ids flagged as padding
//! budget 1: 100       # bidding extension
//! reserve 2 1: 40
//! quality 1: 1->10 2->7
//! lambda 1: 1
//! ```
//!
//! List tokens may carry a side prefix (`g2`) and commas; `-` is an empty list.

use super::ids::{BoyId, GirlId, Id};
use super::instance::{AugmentedInstance, Instance};
use super::prefs::PreferenceList;
use super::ModelError;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError { line, message: message.into() }
    }
}

/// Raw bidding directives; interpreted by the bidding module.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BidDirectives {
    pub budget: BTreeMap<GirlId, i64>,
    pub reserve: BTreeMap<(BoyId, GirlId), i64>,
    pub quality: BTreeMap<GirlId, BTreeMap<BoyId, i64>>,
    pub lambda: BTreeMap<GirlId, i64>,
}

impl BidDirectives {
    pub fn is_empty(&self) -> bool {
        self.budget.is_empty() && self.reserve.is_empty() && self.quality.is_empty() && self.lambda.is_empty()
    }
}

/// Everything an instance file can carry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceFile {
    pub instance: Instance,
    pub ult: BTreeMap<BoyId, GirlId>,
    pub bottom: BTreeMap<BoyId, GirlId>,
    pub slots: BTreeMap<GirlId, usize>,
    pub bids: BidDirectives,
}

impl InstanceFile {
    pub fn new(instance: Instance) -> Self {
        InstanceFile {
            instance,
            ult: BTreeMap::new(),
            bottom: BTreeMap::new(),
            slots: BTreeMap::new(),
            bids: BidDirectives::default(),
        }
    }

    /// Whether any `ult`/`bottom` line was present.
    pub fn is_augmented(&self) -> bool {
        !self.ult.is_empty() || !self.bottom.is_empty()
    }

    /// The augmented view, defaulting missing thresholds to the last preference.
    pub fn augmented(&self) -> Result<AugmentedInstance, ModelError> {
        let inst = &self.instance;
        let last: Vec<GirlId> = inst.boys().map(|b| inst.boy_prefs(b).last()).collect();
        let mut ult = last.clone();
        let mut bottom = last;
        for (b, g) in &self.ult {
            ult[b.0] = *g;
        }
        for (b, g) in &self.bottom {
            bottom[b.0] = *g;
        }
        AugmentedInstance::with_thresholds(inst.clone(), ult, bottom)
    }
}

struct Ctx {
    base: usize,
    boys: usize,
    girls: usize,
}

impl Ctx {
    fn id(&self, line: usize, tok: &str, side: char, bound: usize) -> Result<usize, ParseError> {
        let t = tok.strip_prefix(side).unwrap_or(tok);
        let v: usize = t.parse().map_err(|_| ParseError::new(line, format!("expected an id, found `{tok}`")))?;
        if v < self.base || v - self.base >= bound {
            return Err(ParseError::new(line, format!("id `{tok}` out of range")));
        }
        Ok(v - self.base)
    }

    fn boy(&self, line: usize, tok: &str) -> Result<BoyId, ParseError> {
        self.id(line, tok, 'b', self.boys).map(BoyId)
    }

    fn girl(&self, line: usize, tok: &str) -> Result<GirlId, ParseError> {
        self.id(line, tok, 'g', self.girls).map(GirlId)
    }
}

fn number<T: std::str::FromStr>(line: usize, tok: &str) -> Result<T, ParseError> {
    tok.parse().map_err(|_| ParseError::new(line, format!("expected a number, found `{tok}`")))
}

/// Splits a tie-aware list body into groups of raw tokens.
fn list_groups(line: usize, body: &str) -> Result<Vec<Vec<String>>, ParseError> {
    let spaced = body.replace('(', " ( ").replace(')', " ) ").replace(',', " ");
    let mut groups = Vec::new();
    let mut open: Option<Vec<String>> = None;
    for tok in spaced.split_whitespace() {
        match (tok, open.as_mut()) {
            ("-", None) => {}
            ("(", None) => open = Some(Vec::new()),
            ("(", Some(_)) => return Err(ParseError::new(line, "nested tie-group")),
            (")", Some(_)) => {
                let g = open.take().unwrap_or_default();
                if g.is_empty() {
                    return Err(ParseError::new(line, "empty tie-group"));
                }
                groups.push(g);
            }
            (")", None) => return Err(ParseError::new(line, "unbalanced `)`")),
            (t, Some(g)) => g.push(t.to_string()),
            (t, None) => groups.push(vec![t.to_string()]),
        }
    }
    if open.is_some() {
        return Err(ParseError::new(line, "unclosed tie-group"));
    }
    Ok(groups)
}

/// Splits `head` such as `b 3`, `b3` or `reserve 2 1` into keyword and numbers.
fn split_head(head: &str) -> (String, Vec<String>) {
    let head = head.trim();
    let kw_len = head.find(|c: char| !c.is_ascii_alphabetic()).unwrap_or(head.len());
    let kw = head[..kw_len].to_string();
    let rest = head[kw_len..].split_whitespace().map(str::to_string).collect();
    (kw, rest)
}

/// Parses an instance file.
pub fn parse_instance(text: &str) -> Result<InstanceFile, ParseError> {
    let mut boys_n = None;
    let mut girls_n = None;
    let mut base = 1usize;
    let mut autocomplete = false;
    let mut boy_lines: BTreeMap<usize, (usize, Vec<Vec<String>>)> = BTreeMap::new();
    let mut girl_lines: BTreeMap<usize, (usize, Vec<Vec<String>>)> = BTreeMap::new();
    let mut rest: Vec<(usize, String, Vec<String>, String)> = Vec::new();
    let mut lists_started = false;

    // First pass: headers and raw directives.
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((head, body)) = content.split_once(':') else {
            let mut it = content.split_whitespace();
            let kw = it.next().unwrap_or("");
            let val = it.next().ok_or_else(|| ParseError::new(line, format!("`{kw}` needs a value")))?;
            if it.next().is_some() {
                return Err(ParseError::new(line, "trailing tokens"));
            }
            if lists_started {
                return Err(ParseError::new(line, "headers must precede list lines"));
            }
            match kw {
                "boys" => boys_n = Some(number::<usize>(line, val)?),
                "girls" => girls_n = Some(number::<usize>(line, val)?),
                "base" => {
                    base = number(line, val)?;
                    if base > 1 {
                        return Err(ParseError::new(line, "base must be 0 or 1"));
                    }
                }
                "autocomplete" => {
                    autocomplete = match val {
                        "on" => true,
                        "off" => false,
                        _ => return Err(ParseError::new(line, "autocomplete takes on|off")),
                    }
                }
                _ => return Err(ParseError::new(line, format!("unknown header `{kw}`"))),
            }
            continue;
        };
        lists_started = true;
        let (kw, nums) = split_head(head);
        match kw.as_str() {
            "b" | "g" => {
                let [id] = nums.as_slice() else {
                    return Err(ParseError::new(line, "list line needs exactly one id"));
                };
                let id: usize = number(line, id)?;
                let groups = list_groups(line, body)?;
                let map = if kw == "b" { &mut boy_lines } else { &mut girl_lines };
                if map.insert(id, (line, groups)).is_some() {
                    return Err(ParseError::new(line, format!("second list for {kw}{id}")));
                }
            }
            _ => rest.push((line, kw, nums, body.trim().to_string())),
        }
    }

    let nb = boys_n.ok_or_else(|| ParseError::new(0, "missing `boys` header"))?;
    let ng = girls_n.ok_or_else(|| ParseError::new(0, "missing `girls` header"))?;
    if nb == 0 || ng == 0 {
        return Err(ParseError::new(0, "instance needs at least one boy and one girl"));
    }
    let ctx = Ctx { base, boys: nb, girls: ng };

    let mut boy_levels = vec![None; nb];
    for (id, (line, groups)) in boy_lines {
        let b = ctx.boy(line, &id.to_string())?;
        let mut seen = vec![false; ng];
        let mut levels = Vec::new();
        for grp in groups {
            let mut level = Vec::new();
            for t in grp {
                let g = ctx.girl(line, &t)?;
                if std::mem::replace(&mut seen[g.0], true) {
                    return Err(ParseError::new(line, format!("duplicate id `{t}`")));
                }
                level.push(g);
            }
            levels.push(level);
        }
        complete(line, &mut seen, &mut levels, autocomplete, GirlId)?;
        boy_levels[b.0] = Some(levels);
    }
    let mut girl_orders = vec![None; ng];
    for (id, (line, groups)) in girl_lines {
        let g = ctx.girl(line, &id.to_string())?;
        let mut seen = vec![false; nb];
        let mut levels = Vec::new();
        for grp in groups {
            if grp.len() != 1 {
                return Err(ParseError::new(line, "girls' lists cannot contain ties"));
            }
            let b = ctx.boy(line, &grp[0])?;
            if std::mem::replace(&mut seen[b.0], true) {
                return Err(ParseError::new(line, format!("duplicate id `{}`", grp[0])));
            }
            levels.push(vec![b]);
        }
        complete(line, &mut seen, &mut levels, autocomplete, BoyId)?;
        girl_orders[g.0] = Some(levels.into_iter().flatten().collect::<Vec<_>>());
    }
    let boy_levels = boy_levels
        .into_iter()
        .enumerate()
        .map(|(i, l)| match l {
            Some(l) => Ok(l),
            None if autocomplete => Ok((0..ng).map(|g| vec![GirlId(g)]).collect()),
            None => Err(ParseError::new(0, format!("missing list for {}", BoyId(i).label(base)))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let girl_orders = girl_orders
        .into_iter()
        .enumerate()
        .map(|(i, l)| match l {
            Some(l) => Ok(l),
            None if autocomplete => Ok((0..nb).map(BoyId).collect()),
            None => Err(ParseError::new(0, format!("missing list for {}", GirlId(i).label(base)))),
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut fict_boys = Vec::new();
    let mut fict_girls = Vec::new();
    let mut directives = Vec::new();
    for (line, kw, nums, body) in rest {
        if kw != "fictitious" {
            directives.push((line, kw, nums, body));
            continue;
        }
        let side = match nums.as_slice() {
            [s] if s == "b" || s == "g" => s.clone(),
            _ => return Err(ParseError::new(line, "`fictitious` takes a side letter, `b` or `g`")),
        };
        for t in body.replace(',', " ").split_whitespace() {
            if side == "b" {
                fict_boys.push(ctx.boy(line, t)?);
            } else {
                fict_girls.push(ctx.girl(line, t)?);
            }
        }
    }

    let instance = if nb == ng {
        let bp = boy_levels
            .into_iter()
            .map(|l| PreferenceList::from_levels(l, ng))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| ParseError::new(0, e.to_string()))?;
        let gp = girl_orders
            .into_iter()
            .map(PreferenceList::strict)
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| ParseError::new(0, e.to_string()))?;
        let mut fb = vec![false; nb];
        let mut fg = vec![false; ng];
        for b in fict_boys {
            fb[b.0] = true;
        }
        for g in fict_girls {
            fg[g.0] = true;
        }
        Instance::with_flags(bp, gp, fb, fg)
    } else {
        if !fict_boys.is_empty() || !fict_girls.is_empty() {
            return Err(ParseError::new(0, "fictitious lines need equal boy and girl counts"));
        }
        Instance::padded(boy_levels, girl_orders)
    }
    .map_err(|e| ParseError::new(0, e.to_string()))?
    .with_base(base);

    // Directives may address padded ids too.
    let n = instance.n();
    let ctx = Ctx { base, boys: n, girls: n };
    let mut file = InstanceFile::new(instance);
    for (line, kw, nums, body) in directives {
        let single = |what: &str| -> Result<&str, ParseError> {
            match nums.as_slice() {
                [one] => Ok(one.as_str()),
                _ => Err(ParseError::new(line, format!("`{what}` needs exactly one id"))),
            }
        };
        let value = || -> Result<&str, ParseError> {
            let mut it = body.split_whitespace();
            match (it.next(), it.next()) {
                (Some(v), None) => Ok(v),
                _ => Err(ParseError::new(line, "expected a single value")),
            }
        };
        match kw.as_str() {
            "ult" | "bottom" => {
                let b = ctx.boy(line, single(&kw)?)?;
                let g = ctx.girl(line, value()?)?;
                let map = if kw == "ult" { &mut file.ult } else { &mut file.bottom };
                if map.insert(b, g).is_some() {
                    return Err(ParseError::new(line, format!("repeated `{kw}` for one boy")));
                }
            }
            "slots" => {
                let g = ctx.girl(line, single("slots")?)?;
                let k: usize = number(line, value()?)?;
                if k == 0 {
                    return Err(ParseError::new(line, "capacity must be at least 1"));
                }
                file.slots.insert(g, k);
            }
            "budget" | "lambda" => {
                let g = ctx.girl(line, single(&kw)?)?;
                let v: i64 = number(line, value()?)?;
                if v < 0 {
                    return Err(ParseError::new(line, format!("`{kw}` must be non-negative")));
                }
                let map = if kw == "budget" { &mut file.bids.budget } else { &mut file.bids.lambda };
                map.insert(g, v);
            }
            "reserve" => {
                let [b, g] = nums.as_slice() else {
                    return Err(ParseError::new(line, "`reserve` needs a boy id and a girl id"));
                };
                let b = ctx.boy(line, b)?;
                let g = ctx.girl(line, g)?;
                let v: i64 = number(line, value()?)?;
                if v < 0 {
                    return Err(ParseError::new(line, "`reserve` must be non-negative"));
                }
                file.bids.reserve.insert((b, g), v);
            }
            "quality" => {
                let g = ctx.girl(line, single("quality")?)?;
                let entry = file.bids.quality.entry(g).or_default();
                for tok in body.replace(',', " ").split_whitespace() {
                    let (b, s) = tok
                        .split_once("->")
                        .or_else(|| tok.split_once('→'))
                        .ok_or_else(|| ParseError::new(line, format!("expected `boy->score`, found `{tok}`")))?;
                    entry.insert(ctx.boy(line, b)?, number(line, s)?);
                }
            }
            other => return Err(ParseError::new(line, format!("unknown directive `{other}`"))),
        }
    }
    Ok(file)
}

/// Parses pairs written as `b1-g4`, `b1 g4` or `b1→g4`, separated by
/// commas, semicolons or newlines; ids follow the instance's label base.
pub fn parse_pairs(inst: &Instance, text: &str) -> Result<Vec<(BoyId, GirlId)>, ParseError> {
    let ctx = Ctx { base: inst.base(), boys: inst.n(), girls: inst.n() };
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        for item in content.split([',', ';']) {
            let cleaned = item.replace("->", " ").replace(['-', '→', '{', '}'], " ");
            let toks: Vec<&str> = cleaned.split_whitespace().collect();
            match toks.as_slice() {
                [] => {}
                [b, g] => out.push((ctx.boy(line, b)?, ctx.girl(line, g)?)),
                _ => return Err(ParseError::new(line, format!("expected a pair, found `{}`", item.trim()))),
            }
        }
    }
    Ok(out)
}

fn complete<T: Id>(
    line: usize,
    seen: &mut [bool],
    levels: &mut Vec<Vec<T>>,
    autocomplete: bool,
    make: fn(usize) -> T,
) -> Result<(), ParseError> {
    let missing: Vec<usize> = (0..seen.len()).filter(|&i| !seen[i]).collect();
    if missing.is_empty() {
        return Ok(());
    }
    if !autocomplete {
        return Err(ParseError::new(
            line,
            format!("incomplete list: {} of {} entries", seen.len() - missing.len(), seen.len()),
        ));
    }
    for i in missing {
        seen[i] = true;
        levels.push(vec![make(i)]);
    }
    Ok(())
}

/// Writes the canonical text of an instance file.
pub fn write_instance(file: &InstanceFile) -> String {
    let inst = &file.instance;
    let base = inst.base();
    let n = inst.n();
    let mut out = String::new();
    let _ = writeln!(out, "boys {n}");
    let _ = writeln!(out, "girls {n}");
    if base != 1 {
        let _ = writeln!(out, "base {base}");
    }
    let num = |i: usize| (i + base).to_string();
    for b in inst.boys() {
        let body: Vec<String> = inst
            .boy_prefs(b)
            .levels()
            .iter()
            .map(|grp| {
                if grp.len() == 1 {
                    num(grp[0].0)
                } else {
                    format!("({})", grp.iter().map(|g| num(g.0)).collect::<Vec<_>>().join(" "))
                }
            })
            .collect();
        let _ = writeln!(out, "b {}: {}", num(b.0), body.join(" "));
    }
    for g in inst.girls() {
        let body: Vec<String> = inst.girl_prefs(g).order().iter().map(|b| num(b.0)).collect();
        let _ = writeln!(out, "g {}: {}", num(g.0), body.join(" "));
    }
    let fb: Vec<String> = inst.boys().filter(|&b| inst.is_fictitious_boy(b)).map(|b| num(b.0)).collect();
    if !fb.is_empty() {
        let _ = writeln!(out, "fictitious b: {}", fb.join(" "));
    }
    let fg: Vec<String> = inst.girls().filter(|&g| inst.is_fictitious_girl(g)).map(|g| num(g.0)).collect();
    if !fg.is_empty() {
        let _ = writeln!(out, "fictitious g: {}", fg.join(" "));
    }
    for (b, g) in &file.ult {
        let _ = writeln!(out, "ult {}: {}", num(b.0), num(g.0));
    }
    for (b, g) in &file.bottom {
        let _ = writeln!(out, "bottom {}: {}", num(b.0), num(g.0));
    }
    for (g, k) in &file.slots {
        let _ = writeln!(out, "slots {}: {}", num(g.0), k);
    }
    for (g, v) in &file.bids.budget {
        let _ = writeln!(out, "budget {}: {}", num(g.0), v);
    }
    for ((b, g), v) in &file.bids.reserve {
        let _ = writeln!(out, "reserve {} {}: {}", num(b.0), num(g.0), v);
    }
    for (g, scores) in &file.bids.quality {
        let body: Vec<String> = scores.iter().map(|(b, s)| format!("{}->{}", num(b.0), s)).collect();
        let _ = writeln!(out, "quality {}: {}", num(g.0), body.join(" "));
    }
    for (g, v) in &file.bids.lambda {
        let _ = writeln!(out, "lambda {}: {}", num(g.0), v);
    }
    out
}
