//! Job files: a ring, named objects and check invocations, one stanza per line.
//! The grammar is documented in `docs/job-format.md`.

use std::collections::BTreeMap;

use defcert::checks::{CheckName, LinkageChainSpec, SurfaceSpec};
use defcert::groebner::Ideal;
use defcert::polyring::is_identifier;
use defcert::{Error, Polynomial, Ring, RingDescriptor};
use thiserror::Error;

/// A diagnostic anchored at a 1-based line and column. Line 0 means the command line.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{col}: {msg}")]
pub struct JobError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

/// Where a token came from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl Pos {
    fn shifted(self, by: usize) -> Pos {
        Pos { line: self.line, col: self.col + by }
    }

    fn err(self, msg: impl Into<String>) -> JobError {
        JobError { line: self.line, col: self.col, msg: msg.into() }
    }
}

#[derive(Clone, Debug)]
pub enum ModuleSpec {
    /// The ring itself, i.e. the structure sheaf.
    Ring,
    /// `I` as a module; its sheaf is the ideal sheaf.
    Ideal(Ideal),
    /// `R/I`; its sheaf is the structure sheaf of the subscheme.
    Quotient(Ideal),
}

#[derive(Clone, Debug)]
pub enum Task {
    Smooth { f: Polynomial },
    Contains { f: Polynomial, ideal: Ideal },
    Acm { ideal: Ideal, window: Option<(i64, i64)> },
    NormalH1 { ideal: Ideal },
    RelativeNormalH1 { ideal: Ideal, f: Polynomial },
    Splitting { f: Polynomial, ideal: Ideal },
    SurfaceLift { surface: SurfaceSpec, f: Polynomial },
    Transversality { forms: Vec<Polynomial> },
    Bb { chain: LinkageChainSpec },
    Sample { line: Ideal, trials: usize, bound: i64, seed: u64, degree: u32, witnesses: usize },
    Cohomology { module: ModuleSpec, description: String, rows: Vec<usize>, window: Option<(i64, i64)> },
}

#[derive(Clone, Debug)]
pub struct Invocation {
    pub check: CheckName,
    /// Source line, 0 for the command line.
    pub line: usize,
    /// Canonical `check NAME key=value ...` text.
    pub text: String,
    pub task: Task,
}

#[derive(Clone, Debug)]
enum Object {
    Poly(Polynomial),
    Ideal(Ideal),
    Surface(SurfaceSpec),
    Chain(LinkageChainSpec),
}

impl Object {
    fn kind(&self) -> &'static str {
        match self {
            Object::Poly(_) => "polynomial",
            Object::Ideal(_) => "ideal",
            Object::Surface(_) => "surface",
            Object::Chain(_) => "chain",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Job {
    pub ring: Ring,
    objects: BTreeMap<String, Object>,
    pub checks: Vec<Invocation>,
}

impl Default for Job {
    fn default() -> Self {
        Job { ring: RingDescriptor::p4(), objects: BTreeMap::new(), checks: Vec::new() }
    }
}

/// One stanza after joining `\` continuations and stripping comments.
struct Logical {
    text: String,
    /// `(offset in text, source line)` for each joined physical line.
    segments: Vec<(usize, usize)>,
}

impl Logical {
    fn pos(&self, offset: usize) -> Pos {
        let &(start, line) = self.segments.iter().rev().find(|(s, _)| *s <= offset).unwrap();
        Pos { line, col: offset - start + 1 }
    }
}

fn logical_lines(src: &str) -> Vec<Logical> {
    let mut out = Vec::new();
    let mut cur: Option<Logical> = None;
    for (i, raw) in src.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let (body, cont) = match body.trim_end().strip_suffix('\\') {
            Some(b) => (b, true),
            None => (body, false),
        };
        let l = cur.get_or_insert_with(|| Logical { text: String::new(), segments: Vec::new() });
        l.segments.push((l.text.len(), i + 1));
        l.text.push_str(body);
        if !cont {
            out.push(cur.take().unwrap());
        } else {
            l.text.push(' ');
        }
    }
    out.extend(cur);
    out.retain(|l| !l.text.trim().is_empty());
    out
}

/// Whitespace-separated tokens with their byte offsets.
fn tokens(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(st)) => {
                out.push((st, &s[st..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(st) = start {
        out.push((st, &s[st..]));
    }
    out
}

/// Splits on commas outside parentheses, keeping offsets; items are trimmed.
fn split_items(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push((start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out.into_iter()
        .map(|(o, item)| {
            let lead = item.len() - item.trim_start().len();
            (o + lead, item.trim())
        })
        .collect()
}

fn strip_parens(s: &str) -> Option<&str> {
    s.strip_prefix('(').and_then(|t| t.strip_suffix(')'))
}

impl Job {
    pub fn parse(src: &str) -> Result<Job, JobError> {
        let mut job = Job::default();
        let mut seen_stanza = false;
        for l in logical_lines(src) {
            let toks = tokens(&l.text);
            let (kw_off, kw) = toks[0];
            let at = |off: usize| l.pos(off);
            match kw {
                "ring" | "poly" | "ideal" | "surface" => {
                    let eq = l.text.find('=').ok_or_else(|| at(kw_off).err(format!("`{kw}` stanza needs `NAME = ...`")))?;
                    let name_part = &l.text[kw_off + kw.len()..eq];
                    let name = name_part.trim();
                    let name_off = kw_off + kw.len() + name_part.len() - name_part.trim_start().len();
                    let rhs_raw = &l.text[eq + 1..];
                    let rhs_off = eq + 1 + rhs_raw.len() - rhs_raw.trim_start().len();
                    let rhs = rhs_raw.trim();
                    if !is_identifier(name) {
                        return Err(at(name_off).err(format!("invalid name `{name}`")));
                    }
                    if rhs.is_empty() {
                        return Err(at(eq).err("empty right-hand side"));
                    }
                    if kw == "ring" {
                        if seen_stanza {
                            return Err(at(kw_off).err("`ring` must be the first stanza"));
                        }
                        let vars = split_items(rhs).into_iter().map(|(_, v)| v.to_string()).collect();
                        job.ring = RingDescriptor::new(vars).map_err(|e| at(rhs_off).err(e.to_string()))?;
                    } else {
                        job.ensure_fresh(name, at(name_off))?;
                        let obj = match kw {
                            "poly" => Object::Poly(job.parse_poly(rhs, at(rhs_off))?),
                            "ideal" => Object::Ideal(job.ideal_from_items(rhs, at(rhs_off))?),
                            _ => Object::Surface(job.surface_from_items(rhs, at(rhs_off))?),
                        };
                        job.objects.insert(name.to_string(), obj);
                    }
                }
                "chain" | "check" => {
                    let (head_off, head) = *toks.get(1).ok_or_else(|| at(kw_off).err(format!("`{kw}` needs a name")))?;
                    let mut args = Vec::new();
                    for &(off, t) in &toks[2..] {
                        let (k, v) = t.split_once('=').ok_or_else(|| at(off).err(format!("expected key=value, found `{t}`")))?;
                        args.push((k.to_string(), v.to_string(), at(off + k.len() + 1)));
                    }
                    if kw == "chain" {
                        if !is_identifier(head) {
                            return Err(at(head_off).err(format!("invalid name `{head}`")));
                        }
                        job.ensure_fresh(head, at(head_off))?;
                        let chain = job.chain_from_args(&args, at(head_off))?;
                        job.objects.insert(head.to_string(), Object::Chain(chain));
                    } else {
                        let check = CheckName::parse(head).ok_or_else(|| at(head_off).err(format!("unknown check `{head}`")))?;
                        let mut inv = job.invocation(check, &args, at(head_off))?;
                        inv.line = at(kw_off).line;
                        job.checks.push(inv);
                    }
                }
                other => return Err(at(kw_off).err(format!("unknown stanza `{other}`"))),
            }
            seen_stanza = true;
        }
        Ok(job)
    }

    fn ensure_fresh(&self, name: &str, pos: Pos) -> Result<(), JobError> {
        if self.objects.contains_key(name) {
            return Err(pos.err(format!("`{name}` is already defined")));
        }
        if self.ring.var_index(name).is_some() {
            return Err(pos.err(format!("`{name}` is a ring variable")));
        }
        Ok(())
    }

    fn parse_poly(&self, src: &str, pos: Pos) -> Result<Polynomial, JobError> {
        self.ring.parse(src).map_err(|e| match e {
            Error::Syntax { pos: p, .. } | Error::UnknownVariable { pos: p, .. } => pos.shifted(p).err(e.to_string()),
            other => pos.err(other.to_string()),
        })
    }

    fn lookup(&self, name: &str, want: &str, pos: Pos) -> Result<Option<&Object>, JobError> {
        match self.objects.get(name) {
            Some(o) if o.kind() != want => {
                Err(pos.err(format!("`{name}` is {} {}, expected {} {want}", article(o.kind()), o.kind(), article(want))))
            }
            Some(o) => Ok(Some(o)),
            None => Ok(None),
        }
    }

    /// A polynomial name or an inline expression.
    pub fn resolve_poly(&self, v: &str, pos: Pos) -> Result<Polynomial, JobError> {
        if let Some(Object::Poly(p)) = self.lookup(v, "polynomial", pos)? {
            return Ok(p.clone());
        }
        if is_identifier(v) && self.ring.var_index(v).is_none() {
            return Err(pos.err(format!("undefined polynomial `{v}`")));
        }
        self.parse_poly(v, pos)
    }

    fn ideal_from_items(&self, src: &str, pos: Pos) -> Result<Ideal, JobError> {
        let gens = split_items(src)
            .into_iter()
            .map(|(o, item)| self.resolve_poly(item, pos.shifted(o)))
            .collect::<Result<Vec<_>, _>>()?;
        Ideal::new(self.ring.clone(), gens).map_err(|e| pos.err(e.to_string()))
    }

    /// An ideal name or an inline generator list, `(g1,g2,...)` or `g1,g2,...`.
    pub fn resolve_ideal(&self, v: &str, pos: Pos) -> Result<Ideal, JobError> {
        if let Some(Object::Ideal(i)) = self.lookup(v, "ideal", pos)? {
            return Ok(i.clone());
        }
        if let Some(inner) = strip_parens(v) {
            return self.ideal_from_items(inner, pos.shifted(1));
        }
        if v.contains(',') {
            return self.ideal_from_items(v, pos);
        }
        Err(pos.err(format!("undefined ideal `{v}`")))
    }

    fn surface_from_items(&self, src: &str, pos: Pos) -> Result<SurfaceSpec, JobError> {
        let forms = split_items(src)
            .into_iter()
            .map(|(o, item)| self.resolve_poly(item, pos.shifted(o)))
            .collect::<Result<Vec<_>, _>>()?;
        match <[Polynomial; 2]>::try_from(forms) {
            Ok([a, b]) => Ok(SurfaceSpec::CompleteIntersection(a, b)),
            Err(mut v) if v.len() == 1 => Ok(SurfaceSpec::Hypersurface(v.remove(0))),
            Err(_) => Err(pos.err("a surface is one form or a complete intersection of two")),
        }
    }

    pub fn resolve_surface(&self, v: &str, pos: Pos) -> Result<SurfaceSpec, JobError> {
        if let Some(Object::Surface(s)) = self.lookup(v, "surface", pos)? {
            return Ok(s.clone());
        }
        match strip_parens(v) {
            Some(inner) => self.surface_from_items(inner, pos.shifted(1)),
            None => Err(pos.err(format!("undefined surface `{v}`"))),
        }
    }

    fn resolve_chain(&self, v: &str, pos: Pos) -> Result<LinkageChainSpec, JobError> {
        match self.lookup(v, "chain", pos)? {
            Some(Object::Chain(c)) => Ok(c.clone()),
            _ => Err(pos.err(format!("undefined chain `{v}`"))),
        }
    }

    fn chain_from_args(&self, args: &[(String, String, Pos)], pos: Pos) -> Result<LinkageChainSpec, JobError> {
        let mut a = Args::new(args, &["threefold", "curves", "surfaces", "degree"])?;
        let (f, fpos) = a.required("threefold", pos)?;
        let threefold = self.resolve_poly(f, fpos)?;
        let (cs, cpos) = a.required("curves", pos)?;
        let curves = split_items(cs)
            .into_iter()
            .map(|(o, n)| self.named_ideal(n, cpos.shifted(o)))
            .collect::<Result<Vec<_>, _>>()?;
        let surfaces = match a.optional("surfaces") {
            Some((ss, spos)) => split_items(ss)
                .into_iter()
                .map(|(o, n)| self.resolve_surface(n, spos.shifted(o)))
                .collect::<Result<Vec<_>, _>>()?,
            None => Vec::new(),
        };
        let degree = match a.optional("degree") {
            Some((d, dpos)) => parse_num(d, dpos)?,
            None => threefold.degree().unwrap_or(0),
        };
        a.finish()?;
        Ok(LinkageChainSpec { threefold, degree, curves, surfaces })
    }

    fn named_ideal(&self, v: &str, pos: Pos) -> Result<Ideal, JobError> {
        match self.lookup(v, "ideal", pos)? {
            Some(Object::Ideal(i)) => Ok(i.clone()),
            _ => Err(pos.err(format!("undefined ideal `{v}`"))),
        }
    }

    /// Resolves a check invocation against this job's objects. `pos` locates the check name.
    pub fn invocation(&self, check: CheckName, args: &[(String, String, Pos)], pos: Pos) -> Result<Invocation, JobError> {
        use CheckName::*;
        let keys: &[&str] = match check {
            SmoothCheck => &["poly"],
            Contains | SplittingType | RelativeNormalH1 => &["poly", "ideal"],
            AcmCheck => &["ideal", "window"],
            NormalH1 => &["ideal"],
            SurfaceLift => &["surface", "poly"],
            Transversality => &["poly"],
            BbCriterion => &["chain"],
            SampleQuintics => &["ideal", "trials", "bound", "seed", "degree", "witnesses"],
            CohomologyTable => &["module", "rows", "window"],
        };
        let mut a = Args::new(args, keys)?;
        let task = match check {
            SmoothCheck => Task::Smooth { f: self.poly_arg(&mut a, pos)? },
            Contains => Task::Contains { f: self.poly_arg(&mut a, pos)?, ideal: self.ideal_arg(&mut a, pos)? },
            SplittingType => Task::Splitting { f: self.poly_arg(&mut a, pos)?, ideal: self.ideal_arg(&mut a, pos)? },
            RelativeNormalH1 => Task::RelativeNormalH1 { f: self.poly_arg(&mut a, pos)?, ideal: self.ideal_arg(&mut a, pos)? },
            NormalH1 => Task::NormalH1 { ideal: self.ideal_arg(&mut a, pos)? },
            AcmCheck => Task::Acm { ideal: self.ideal_arg(&mut a, pos)?, window: window_arg(&mut a)? },
            SurfaceLift => {
                let (s, spos) = a.required("surface", pos)?;
                Task::SurfaceLift { surface: self.resolve_surface(s, spos)?, f: self.poly_arg(&mut a, pos)? }
            }
            Transversality => {
                let forms = a
                    .all("poly")
                    .into_iter()
                    .map(|(v, p)| self.resolve_poly(v, p))
                    .collect::<Result<Vec<_>, _>>()?;
                if !(2..=3).contains(&forms.len()) {
                    return Err(pos.err("transversality takes 2 or 3 `poly=` arguments"));
                }
                Task::Transversality { forms }
            }
            BbCriterion => {
                let (c, cpos) = a.required("chain", pos)?;
                Task::Bb { chain: self.resolve_chain(c, cpos)? }
            }
            SampleQuintics => {
                let line = match a.optional("ideal") {
                    Some((v, p)) => self.resolve_ideal(v, p)?,
                    None if self.ring.num_vars() == 5 => {
                        let r = &self.ring;
                        let names: Vec<&str> = r.var_names()[2..].iter().map(String::as_str).collect();
                        Ideal::parse(r, &names).expect("coordinate line")
                    }
                    None => return Err(pos.err("sample-quintics needs `ideal=` outside P^4")),
                };
                Task::Sample {
                    line,
                    trials: a.num_or("trials", 50)?,
                    bound: a.num_or("bound", 10)?,
                    seed: a.num_or("seed", 0)?,
                    degree: a.num_or("degree", 5)?,
                    witnesses: a.num_or("witnesses", 3)?,
                }
            }
            CohomologyTable => {
                let (m, mpos) = a.required("module", pos)?;
                let module = match m.split_once(':') {
                    None if m == "ring" => ModuleSpec::Ring,
                    Some(("ideal", n)) => ModuleSpec::Ideal(self.resolve_ideal(n, mpos.shifted(6))?),
                    Some(("quotient", n)) => ModuleSpec::Quotient(self.resolve_ideal(n, mpos.shifted(9))?),
                    _ => return Err(mpos.err(format!("module must be `ring`, `ideal:NAME` or `quotient:NAME`, found `{m}`"))),
                };
                let rows = match a.optional("rows") {
                    Some((r, rpos)) => split_items(r).into_iter().map(|(o, x)| parse_num(x, rpos.shifted(o))).collect::<Result<Vec<usize>, _>>()?,
                    None => vec![0, 1],
                };
                Task::Cohomology { module, description: m.to_string(), rows, window: window_arg(&mut a)? }
            }
        };
        a.finish()?;
        let mut text = format!("check {check}");
        for (k, v, _) in args {
            text.push_str(&format!(" {k}={v}"));
        }
        Ok(Invocation { check, line: pos.line, text, task })
    }

    fn poly_arg(&self, a: &mut Args, pos: Pos) -> Result<Polynomial, JobError> {
        let (v, p) = a.required("poly", pos)?;
        self.resolve_poly(v, p)
    }

    fn ideal_arg(&self, a: &mut Args, pos: Pos) -> Result<Ideal, JobError> {
        let (v, p) = a.required("ideal", pos)?;
        self.resolve_ideal(v, p)
    }
}

fn article(kind: &str) -> &'static str {
    if kind.starts_with('i') {
        "an"
    } else {
        "a"
    }
}

fn parse_num<T: std::str::FromStr>(s: &str, pos: Pos) -> Result<T, JobError> {
    s.parse().map_err(|_| pos.err(format!("expected a number, found `{s}`")))
}

/// `window=a..b`.
fn window_arg(a: &mut Args) -> Result<Option<(i64, i64)>, JobError> {
    let Some((w, pos)) = a.optional("window") else { return Ok(None) };
    let (lo, hi) = w.split_once("..").ok_or_else(|| pos.err(format!("window must be `a..b`, found `{w}`")))?;
    let (lo, hi): (i64, i64) = (parse_num(lo, pos)?, parse_num(hi, pos.shifted(lo.len() + 2))?);
    if lo > hi {
        return Err(pos.err(format!("empty window {lo}..{hi}")));
    }
    Ok(Some((lo, hi)))
}

/// Key/value arguments; every argument must be consumed exactly once.
struct Args<'a> {
    items: Vec<(&'a str, &'a str, Pos, bool)>,
}

impl<'a> Args<'a> {
    fn new(args: &'a [(String, String, Pos)], allowed: &[&str]) -> Result<Self, JobError> {
        for (k, _, p) in args {
            if !allowed.contains(&k.as_str()) {
                return Err(p.err(format!("unknown argument `{k}`; expected one of {}", allowed.join(", "))));
            }
        }
        Ok(Args { items: args.iter().map(|(k, v, p)| (k.as_str(), v.as_str(), *p, false)).collect() })
    }

    fn all(&mut self, key: &str) -> Vec<(&'a str, Pos)> {
        let mut out = Vec::new();
        for it in self.items.iter_mut().filter(|it| it.0 == key) {
            it.3 = true;
            out.push((it.1, it.2));
        }
        out
    }

    fn optional(&mut self, key: &str) -> Option<(&'a str, Pos)> {
        let it = self.items.iter_mut().find(|it| it.0 == key && !it.3)?;
        it.3 = true;
        Some((it.1, it.2))
    }

    fn required(&mut self, key: &str, pos: Pos) -> Result<(&'a str, Pos), JobError> {
        self.optional(key).ok_or_else(|| pos.err(format!("missing argument `{key}=`")))
    }

    fn num_or<T: std::str::FromStr>(&mut self, key: &str, default: T) -> Result<T, JobError> {
        match self.optional(key) {
            Some((v, p)) => parse_num(v, p),
            None => Ok(default),
        }
    }

    fn finish(self) -> Result<(), JobError> {
        match self.items.iter().find(|it| !it.3) {
            Some((k, _, p, _)) => Err(p.err(format!("duplicate argument `{k}`"))),
            None => Ok(()),
        }
    }
}
