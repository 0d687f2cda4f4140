//! Property manifests: the checkable claims a generator makes about its output.
//!
//! ```text
//! name two-cliques
//! param n 12
//! part 1 1 2 3 4 5 6 7
//! claim min-degree - =4 exact
//! claim factor r=4 no-factor exact
//! ```

use std::fmt;

use crate::error::{Error, Result};
use crate::graph_core::cliques::for_each_clique_within;
use crate::graph_core::Graph;
use crate::rational::{fmt_ratio, parse_fraction, Rational};
use crate::reduce::pair_density;
use crate::verify::{alpha_ell, has_kr_factor_with, is_ks_free, min_degree, AlphaOptions, FactorOptions, FactorOutcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cmp {
    Eq,
    Ge,
    Le,
}

impl Cmp {
    fn symbol(self) -> &'static str {
        match self {
            Cmp::Eq => "=",
            Cmp::Ge => ">=",
            Cmp::Le => "<=",
        }
    }

    fn holds(self, observed: Rational, bound: Rational) -> bool {
        match self {
            Cmp::Eq => observed == bound,
            Cmp::Ge => observed >= bound,
            Cmp::Le => observed <= bound,
        }
    }

    fn parse(text: &str) -> Option<(Cmp, &str)> {
        for (sym, c) in [(">=", Cmp::Ge), ("<=", Cmp::Le), ("=", Cmp::Eq)] {
            if let Some(rest) = text.strip_prefix(sym) {
                return Some((c, rest));
            }
        }
        None
    }
}

/// A claim names a verifier and the outcome or bound it must produce.
/// Part indices are 0-based here and 1-based in text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClaimOp {
    MinDegree { cmp: Cmp, bound: Rational },
    /// Every degree in `lo..=hi`.
    DegreeWindow { lo: usize, hi: usize },
    /// `G` (or `G[part]`) has no `K_s`.
    KsFree { s: usize, part: Option<usize> },
    NoFactor { r: usize },
    CrossDensity { a: usize, b: usize, at_least: Rational },
    /// `α_ℓ ≤ at_most`, or only reported when `at_most` is `None`.
    Alpha { ell: usize, at_most: Option<usize> },
    Girth { greater_than: usize },
    /// Every `K_r` meets the union of `parts` in exactly `exactly` vertices.
    KrMeets { r: usize, parts: Vec<usize>, exactly: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClaimKind {
    Exact,
    /// Holds only with high probability or for large `n`; a failure is reported, not fatal.
    Statistical,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Claim {
    pub op: ClaimOp,
    pub kind: ClaimKind,
}

impl Claim {
    pub fn exact(op: ClaimOp) -> Self {
        Claim { op, kind: ClaimKind::Exact }
    }

    pub fn statistical(op: ClaimOp) -> Self {
        Claim { op, kind: ClaimKind::Statistical }
    }

    /// `(op, args, expect)` text fields.
    fn fields(&self) -> (&'static str, String, String) {
        let p1 = |i: &usize| (i + 1).to_string();
        match &self.op {
            ClaimOp::MinDegree { cmp, bound } => ("min-degree", "-".into(), format!("{}{}", cmp.symbol(), fmt_ratio(bound))),
            ClaimOp::DegreeWindow { lo, hi } => ("degree-window", "-".into(), format!("[{lo},{hi}]")),
            ClaimOp::KsFree { s, part } => {
                let args = match part {
                    Some(p) => format!("s={s},part={}", p1(p)),
                    None => format!("s={s}"),
                };
                ("ks-free", args, "true".into())
            }
            ClaimOp::NoFactor { r } => ("factor", format!("r={r}"), "no-factor".into()),
            ClaimOp::CrossDensity { a, b, at_least } => {
                ("cross-density", format!("parts={}+{}", p1(a), p1(b)), format!(">={}", fmt_ratio(at_least)))
            }
            ClaimOp::Alpha { ell, at_most } => (
                "alpha",
                format!("ell={ell}"),
                at_most.map_or_else(|| "report".to_string(), |b| format!("<={b}")),
            ),
            ClaimOp::Girth { greater_than } => ("girth", "-".into(), format!(">{greater_than}")),
            ClaimOp::KrMeets { r, parts, exactly } => (
                "kr-meets",
                format!("r={r},parts={}", parts.iter().map(p1).collect::<Vec<_>>().join("+")),
                format!("={exactly}"),
            ),
        }
    }

    pub fn to_line(&self) -> String {
        let (op, args, expect) = self.fields();
        let kind = match self.kind {
            ClaimKind::Exact => "exact",
            ClaimKind::Statistical => "statistical",
        };
        format!("claim {op} {args} {expect} {kind}")
    }

    /// Parses the fields after `claim`.
    pub fn parse(line: usize, toks: &[&str]) -> Result<Claim> {
        let err = |msg: String| Error::Parse { line, msg };
        if toks.len() != 4 {
            return Err(err("expected `claim <op> <args> <expect> <exact|statistical>`".into()));
        }
        let (op, args, expect) = (toks[0], toks[1], toks[2]);
        let kind = match toks[3] {
            "exact" => ClaimKind::Exact,
            "statistical" => ClaimKind::Statistical,
            other => return Err(err(format!("unknown claim kind {other:?}"))),
        };
        let arg = |key: &str| -> Result<&str> {
            args.split(',')
                .find_map(|kv| kv.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
                .ok_or_else(|| err(format!("missing argument {key}")))
        };
        let int = |s: &str| -> Result<usize> { s.parse().map_err(|_| err(format!("bad integer {s:?}"))) };
        let part = |s: &str| -> Result<usize> {
            let p = int(s)?;
            p.checked_sub(1).ok_or_else(|| err("parts are 1-indexed".into()))
        };
        let frac = |s: &str| -> Result<Rational> { parse_fraction(s).map_err(|e| err(e.to_string())) };
        let cmp = |s: &str| -> Result<(Cmp, String)> {
            Cmp::parse(s).map(|(c, rest)| (c, rest.to_string())).ok_or_else(|| err(format!("bad comparison {s:?}")))
        };
        let op = match op {
            "min-degree" => {
                let (cmp, v) = cmp(expect)?;
                ClaimOp::MinDegree { cmp, bound: frac(&v)? }
            }
            "degree-window" => {
                let inner = expect
                    .strip_prefix('[')
                    .and_then(|s| s.strip_suffix(']'))
                    .ok_or_else(|| err("window must be [lo,hi]".into()))?;
                let (lo, hi) = inner.split_once(',').ok_or_else(|| err("window must be [lo,hi]".into()))?;
                ClaimOp::DegreeWindow { lo: int(lo)?, hi: int(hi)? }
            }
            "ks-free" => {
                let part = if args.contains("part=") { Some(part(arg("part")?)?) } else { None };
                ClaimOp::KsFree { s: int(arg("s")?)?, part }
            }
            "factor" => ClaimOp::NoFactor { r: int(arg("r")?)? },
            "cross-density" => {
                let (a, b) = arg("parts")?.split_once('+').ok_or_else(|| err("parts=a+b".into()))?;
                let (_, v) = cmp(expect)?;
                ClaimOp::CrossDensity { a: part(a)?, b: part(b)?, at_least: frac(&v)? }
            }
            "alpha" => {
                let at_most = if expect == "report" { None } else { Some(int(&cmp(expect)?.1)?) };
                ClaimOp::Alpha { ell: int(arg("ell")?)?, at_most }
            }
            "girth" => ClaimOp::Girth {
                greater_than: int(expect.strip_prefix('>').ok_or_else(|| err("girth expects >g".into()))?)?,
            },
            "kr-meets" => {
                let parts = arg("parts")?.split('+').map(part).collect::<Result<Vec<_>>>()?;
                ClaimOp::KrMeets { r: int(arg("r")?)?, parts, exactly: int(&cmp(expect)?.1)? }
            }
            other => return Err(err(format!("unknown claim op {other:?}"))),
        };
        Ok(Claim { op, kind })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstructionManifest {
    pub name: String,
    /// `(key, value)` in insertion order.
    pub params: Vec<(String, String)>,
    /// Named vertex parts, referenced by claims.
    pub parts: Vec<Vec<usize>>,
    pub claims: Vec<Claim>,
}

impl ConstructionManifest {
    pub fn new(name: &str) -> Self {
        ConstructionManifest { name: name.to_string(), ..Default::default() }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.push((key.to_string(), value.to_string()));
        self
    }

    pub fn get_param(&self, key: &str) -> Option<&str> {
        self.params.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("name {}\n", self.name);
        for (k, v) in &self.params {
            out.push_str(&format!("param {k} {v}\n"));
        }
        for (i, p) in self.parts.iter().enumerate() {
            out.push_str(&format!("part {}", i + 1));
            for v in p {
                out.push_str(&format!(" {}", v + 1));
            }
            out.push('\n');
        }
        for c in &self.claims {
            out.push_str(&c.to_line());
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut m = ConstructionManifest::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let toks: Vec<&str> = raw.split_whitespace().collect();
            let err = |msg: &str| Error::Parse { line, msg: msg.to_string() };
            match toks.first().copied() {
                None | Some("c") => {}
                Some("name") if toks.len() == 2 => m.name = toks[1].to_string(),
                Some("param") if toks.len() == 3 => m.params.push((toks[1].to_string(), toks[2].to_string())),
                Some("part") if toks.len() >= 2 => {
                    if toks[1] != (m.parts.len() + 1).to_string() {
                        return Err(err("parts must be numbered 1, 2, ... in order"));
                    }
                    let vs = toks[2..]
                        .iter()
                        .map(|t| t.parse::<usize>().ok().filter(|&v| v > 0).map(|v| v - 1))
                        .collect::<Option<Vec<_>>>()
                        .ok_or_else(|| err("bad vertex in part"))?;
                    m.parts.push(vs);
                }
                Some("claim") => m.claims.push(Claim::parse(line, &toks[1..])?),
                Some(_) => return Err(err("expected name, param, part or claim")),
            }
        }
        Ok(m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClaimStatus {
    Holds,
    Fails,
    /// Not decided: too large for the exact routine, or its budget ran out.
    Undecided,
}

impl ClaimStatus {
    pub fn tag(self) -> &'static str {
        match self {
            ClaimStatus::Holds => "holds",
            ClaimStatus::Fails => "fails",
            ClaimStatus::Undecided => "undecided",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimResult {
    pub claim: Claim,
    pub status: ClaimStatus,
    pub observed: String,
}

impl fmt::Display for ClaimResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} observed={} {}", self.claim.to_line(), self.observed, self.status.tag())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[derive(Default)]
pub struct CheckOptions {
    pub alpha: AlphaOptions,
    pub factor: FactorOptions,
}


fn status(ok: bool) -> ClaimStatus {
    if ok {
        ClaimStatus::Holds
    } else {
        ClaimStatus::Fails
    }
}

fn part_of(m: &ConstructionManifest, i: usize) -> Result<&[usize]> {
    m.parts.get(i).map(Vec::as_slice).ok_or_else(|| Error::Precondition(format!("manifest has no part {}", i + 1)))
}

pub fn check_claim(g: &Graph, m: &ConstructionManifest, claim: &Claim, opts: &CheckOptions) -> Result<ClaimResult> {
    let (status, observed) = match &claim.op {
        ClaimOp::MinDegree { cmp, bound } => {
            let d = min_degree(g);
            (status(cmp.holds(Rational::from_integer(d as i64), *bound)), d.to_string())
        }
        ClaimOp::DegreeWindow { lo, hi } => {
            let lo_seen = min_degree(g);
            let hi_seen = (0..g.n()).map(|v| g.degree(v)).max().unwrap_or(0);
            (status(*lo <= lo_seen && hi_seen <= *hi), format!("[{lo_seen},{hi_seen}]"))
        }
        ClaimOp::KsFree { s, part } => {
            let host = match part {
                Some(p) => g.induced(part_of(m, *p)?),
                None => g.clone(),
            };
            let (free, _) = is_ks_free(&host, *s);
            (status(free), free.to_string())
        }
        ClaimOp::NoFactor { r } => {
            let cert = has_kr_factor_with(g, *r, &opts.factor);
            let st = match cert.outcome {
                FactorOutcome::NoFactor(_) => ClaimStatus::Holds,
                FactorOutcome::FactorFound(_) => ClaimStatus::Fails,
                FactorOutcome::Timeout { .. } => ClaimStatus::Undecided,
            };
            let observed = match &cert.outcome {
                FactorOutcome::NoFactor(w) => format!("no-factor:{}", w.tag()),
                _ => cert.outcome_tag().to_string(),
            };
            (st, observed)
        }
        ClaimOp::CrossDensity { a, b, at_least } => {
            let d = pair_density(g, part_of(m, *a)?, part_of(m, *b)?)?;
            (status(d >= *at_least), format!("{:.4}", crate::rational::to_f64(&d)))
        }
        ClaimOp::Alpha { ell, at_most } => match alpha_ell(g, *ell, &opts.alpha) {
            Ok((a, _)) => (at_most.map_or(ClaimStatus::Holds, |b| status(a <= b)), a.to_string()),
            Err(Error::InstanceTooLarge { .. }) => (ClaimStatus::Undecided, "too-large".into()),
            Err(e) => return Err(e),
        },
        ClaimOp::Girth { greater_than } => {
            let gi = g.girth();
            (status(gi.is_none_or(|x| x > *greater_than)), gi.map_or("inf".into(), |x| x.to_string()))
        }
        ClaimOp::KrMeets { r, parts, exactly } => {
            let mut inside = g.empty_set();
            for &p in parts {
                for &v in part_of(m, p)? {
                    inside.insert(v);
                }
            }
            let mut bad = 0usize;
            let total = for_each_clique_within(g, &g.full_set(), *r, usize::MAX, |c| {
                if c.iter().filter(|&&v| inside.contains(v)).count() != *exactly {
                    bad += 1;
                }
            });
            (status(bad == 0), format!("{total}-cliques,{bad}-off"))
        }
    };
    Ok(ClaimResult { claim: claim.clone(), status, observed })
}

pub fn check_manifest(g: &Graph, m: &ConstructionManifest, opts: &CheckOptions) -> Result<Vec<ClaimResult>> {
    m.claims.iter().map(|c| check_claim(g, m, c, opts)).collect()
}

/// True when no exact claim fails.
pub fn exact_claims_hold(results: &[ClaimResult]) -> bool {
    results.iter().all(|r| r.claim.kind != ClaimKind::Exact || r.status != ClaimStatus::Fails)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn sample() -> ConstructionManifest {
        let mut m = ConstructionManifest::new("demo").param("n", 12).param("theta", "0.1");
        m.parts = vec![vec![0, 1, 2], vec![3, 4, 5]];
        m.claims = vec![
            Claim::exact(ClaimOp::MinDegree { cmp: Cmp::Eq, bound: ratio(4, 1) }),
            Claim::exact(ClaimOp::MinDegree { cmp: Cmp::Ge, bound: ratio(161, 4) }),
            Claim::exact(ClaimOp::DegreeWindow { lo: 9, hi: 27 }),
            Claim::exact(ClaimOp::KsFree { s: 3, part: Some(1) }),
            Claim::exact(ClaimOp::KsFree { s: 4, part: None }),
            Claim::exact(ClaimOp::NoFactor { r: 4 }),
            Claim::statistical(ClaimOp::CrossDensity { a: 0, b: 1, at_least: ratio(7, 20) }),
            Claim::statistical(ClaimOp::Alpha { ell: 2, at_most: Some(12) }),
            Claim::statistical(ClaimOp::Alpha { ell: 2, at_most: None }),
            Claim::exact(ClaimOp::Girth { greater_than: 4 }),
            Claim::exact(ClaimOp::KrMeets { r: 5, parts: vec![0, 1], exactly: 3 }),
        ];
        m
    }

    #[test]
    fn text_round_trip() {
        let m = sample();
        let text = m.to_text();
        assert!(text.contains("claim ks-free s=3,part=2 true exact\n"), "{text}");
        assert!(text.contains("claim kr-meets r=5,parts=1+2 =3 exact\n"), "{text}");
        assert_eq!(ConstructionManifest::parse(&text).unwrap(), m);
        assert_eq!(m.get_param("theta"), Some("0.1"));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(ConstructionManifest::parse("claim nope - x exact"), Err(Error::Parse { line: 1, .. })));
        assert!(ConstructionManifest::parse("name x\npart 2 1 2").is_err());
        assert!(ConstructionManifest::parse("claim factor r=4 no-factor maybe").is_err());
    }

    #[test]
    fn checks_on_two_cliques() {
        let g = Graph::complete(7).disjoint_union(&Graph::complete(5));
        let mut m = ConstructionManifest::new("t");
        m.parts = vec![(0..7).collect(), (7..12).collect()];
        m.claims = vec![
            Claim::exact(ClaimOp::MinDegree { cmp: Cmp::Eq, bound: ratio(4, 1) }),
            Claim::exact(ClaimOp::NoFactor { r: 4 }),
            Claim::exact(ClaimOp::KsFree { s: 3, part: None }),
            Claim::exact(ClaimOp::KrMeets { r: 4, parts: vec![0], exactly: 4 }),
        ];
        let res = check_manifest(&g, &m, &CheckOptions::default()).unwrap();
        let st: Vec<ClaimStatus> = res.iter().map(|r| r.status).collect();
        assert_eq!(st, vec![ClaimStatus::Holds, ClaimStatus::Holds, ClaimStatus::Fails, ClaimStatus::Fails]);
        assert!(!exact_claims_hold(&res));
        assert_eq!(res[1].observed, "no-factor:component-size");
    }
}
