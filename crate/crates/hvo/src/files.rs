//! Poset files, definitions files and the algebra a command runs over.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use hvo_core::hset::Universe;
use hvo_core::order::{zoo, Parametric, Poset, UpsetAlgebra};

/// Read a poset file.
///
/// ```text
/// # comments and blank lines are ignored
/// points p q r
/// p < q < r
/// ```
///
/// `points` lists the elements once; every other line is a chain of
/// strict order relations.
pub fn parse_poset(text: &str) -> Result<Poset> {
    let mut points: Option<Vec<String>> = None;
    let mut covers: Vec<(String, String)> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let at = || format!("line {}", n + 1);
        if let Some(rest) = line.strip_prefix("points") {
            if points.is_some() {
                bail!("{}: second `points` line", at());
            }
            points = Some(rest.split_whitespace().map(str::to_string).collect());
            continue;
        }
        let chain: Vec<&str> = line.split('<').map(str::trim).collect();
        if chain.len() < 2 || chain.iter().any(|p| p.is_empty() || p.contains(char::is_whitespace)) {
            bail!("{}: expected `points …` or `a < b`, found `{line}`", at());
        }
        covers.extend(chain.windows(2).map(|w| (w[0].to_string(), w[1].to_string())));
    }
    let points = points.context("missing `points` line")?;
    Ok(Poset::new(&points, &covers)?)
}

/// Format a poset in the file syntax, one cover per line.
pub fn format_poset(p: &Poset) -> String {
    let mut out = format!("points {}\n", p.names().join(" "));
    for (a, b) in p.covers() {
        out.push_str(&format!("{a} < {b}\n"));
    }
    out
}

/// Parse one `name := literal` line.
pub fn parse_definition(line: &str) -> Result<(String, String)> {
    let (name, lit) = line.split_once(":=").with_context(|| format!("expected `name := literal`, found `{line}`"))?;
    let name = name.trim();
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        bail!("bad definition name `{name}`");
    }
    Ok((name.to_string(), lit.trim().to_string()))
}

/// The definitions of a file: one per non-blank line, `#` comments only at
/// line start since `#n` is a numeral.
pub fn parse_definitions(text: &str) -> Result<Vec<(String, String)>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with("# ") && l.trim() != "#")
        .map(|(n, l)| parse_definition(l).with_context(|| format!("line {}", n + 1)))
        .collect()
}

/// Parse and bind definitions in order, so later ones may use earlier ones.
pub fn define_all<H: Parametric>(u: &mut Universe<H>, defs: &[(String, String)]) -> Result<()> {
    for (name, lit) in defs {
        let id = u.parse_hset(lit).with_context(|| format!("definition of `{name}`"))?;
        u.define(name, id);
    }
    Ok(())
}

/// Where an algebra comes from.
#[derive(Debug, Clone)]
pub enum Source {
    Finite(UpsetAlgebra),
    Interval,
}

impl Source {
    pub fn from_poset_file(path: &Path) -> Result<Source> {
        let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        let poset = parse_poset(&text).with_context(|| format!("{}", path.display()))?;
        let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("poset");
        Ok(Source::Finite(UpsetAlgebra::named(name, poset)))
    }

    /// One zoo algebra by name, or all of them for `all`.
    pub fn zoo(name: &str) -> Result<Vec<Source>> {
        let all: Vec<Source> = zoo::zoo().into_iter().map(|(n, p)| Source::Finite(UpsetAlgebra::named(n, p))).collect();
        if name == "all" {
            return Ok(all);
        }
        let names: Vec<&str> = zoo::zoo().iter().map(|(n, _)| *n).collect();
        let i = names
            .iter()
            .position(|n| *n == name)
            .with_context(|| format!("unknown zoo poset `{name}` (expected one of {} or all)", names.join(", ")))?;
        Ok(vec![all[i].clone()])
    }

    pub fn name(&self) -> String {
        use hvo_core::order::Heyting;
        match self {
            Source::Finite(a) => a.name(),
            Source::Interval => hvo_core::interval::IntervalAlgebra.name(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_files_round_trip() {
        let p = parse_poset("# diamond\npoints a b c d\na < b < d\na < c < d\n").unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(parse_poset(&format_poset(&p)).unwrap(), p);
    }

    #[test]
    fn poset_file_errors() {
        assert!(parse_poset("a < b").is_err());
        assert!(parse_poset("points a b\na b").is_err());
        assert!(parse_poset("points a b\na < c").is_err());
        assert!(parse_poset("points a b\na < b\nb < a").is_err());
    }

    #[test]
    fn definitions() {
        let d = parse_definitions("# constants\nu := {#0 @ {q}}\n\nv := {u, #1}\n").unwrap();
        assert_eq!(d, [("u".into(), "{#0 @ {q}}".into()), ("v".into(), "{u, #1}".into())]);
        assert!(parse_definitions("u = #1").is_err());
    }
}
