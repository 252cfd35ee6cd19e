//! Text format: blank-line separated records of `key = value` lines.
//!
//! ```text
//! id = guillera-1024
//! z = -1/1024
//! num = 1/2, 1/2, 1/2, 1/2, 1/2
//! den = 1, 1, 1, 1, 1
//! poly = 13, 180, 820
//! target = 128 * 1/pi^2
//! rate = -1/1024
//! cite = ...
//! ```
//!
//! Optional keys: `factor_den` (ascending coefficients, default 1),
//! `prefactor` (default 1), `start` (default 0), `target`, `note`. Lines starting with
//! `#` are ignored.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use num_traits::One;

use super::{validate_all, CatalogEntry};
use crate::error::{Error, Result};
use crate::exact::{fmt_rational, parse_rational, Rational, UniPoly};
use crate::hyper::SeriesSpec;

const KEYS: [&str; 12] = [
    "id", "z", "num", "den", "poly", "factor_den", "prefactor", "start", "target", "rate", "cite", "note",
];

fn join(xs: &[Rational]) -> String {
    xs.iter().map(fmt_rational).collect::<Vec<_>>().join(", ")
}

fn render(e: &CatalogEntry, out: &mut String) {
    let s = &e.series;
    let mut line = |k: &str, v: String| {
        out.push_str(k);
        out.push_str(" = ");
        out.push_str(&v);
        out.push('\n');
    };
    line("id", e.id.clone());
    line("z", fmt_rational(&s.z));
    line("num", join(&s.num_params));
    line("den", join(&s.den_params));
    line("poly", join(s.factor_num.coeffs()));
    if s.factor_den != UniPoly::one() {
        line("factor_den", join(s.factor_den.coeffs()));
    }
    if !s.prefactor.is_one() {
        line("prefactor", fmt_rational(&s.prefactor));
    }
    if s.start != 0 {
        line("start", s.start.to_string());
    }
    if let Some(t) = &e.target {
        line("target", t.to_string());
    }
    line("rate", fmt_rational(&e.expected_rate));
    line("cite", e.citation.clone());
    if let Some(n) = &e.note {
        line("note", n.clone());
    }
}

/// Canonical text of `entries`, in the given order.
pub fn to_text(entries: &[CatalogEntry]) -> String {
    let mut out = String::new();
    for (i, e) in entries.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        render(e, &mut out);
    }
    out
}

struct Record {
    first_line: usize,
    fields: BTreeMap<&'static str, (usize, String)>,
}

fn split_records(text: &str, path: &Path) -> Result<Vec<Record>> {
    let perr = |line: usize, msg: String| Error::Parse { path: path.to_path_buf(), line, msg };
    let mut out = Vec::new();
    let mut cur: Option<Record> = None;
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let l = raw.trim();
        if l.starts_with('#') {
            continue;
        }
        if l.is_empty() {
            out.extend(cur.take());
            continue;
        }
        let (k, v) = l.split_once('=').ok_or_else(|| perr(ln, format!("expected `key = value`, got `{l}`")))?;
        let k = k.trim();
        let key = KEYS
            .into_iter()
            .find(|x| *x == k)
            .ok_or_else(|| perr(ln, format!("unknown key `{k}`")))?;
        let rec = cur.get_or_insert_with(|| Record { first_line: ln, fields: BTreeMap::new() });
        if rec.fields.insert(key, (ln, v.trim().to_string())).is_some() {
            return Err(perr(ln, format!("repeated key `{k}`")));
        }
    }
    out.extend(cur);
    Ok(out)
}

fn parse_list(s: &str) -> Result<Vec<Rational>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|x| parse_rational(x.trim())).collect()
}

fn parse_record(rec: &Record, path: &Path) -> Result<CatalogEntry> {
    let id = rec.fields.get("id").map(|(_, v)| v.clone());
    let name = id.clone().unwrap_or_else(|| "<no id>".into());
    let perr = |line: usize, msg: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        msg: format!("record `{name}`: {msg}"),
    };
    let get = |k: &str| -> Result<&(usize, String)> {
        rec.fields.get(k).ok_or_else(|| perr(rec.first_line, format!("missing key `{k}`")))
    };
    let id = get("id")?.1.clone();
    let field = |k: &str| -> Result<Option<(usize, Result<Vec<Rational>>)>> {
        Ok(rec.fields.get(k).map(|(ln, v)| (*ln, parse_list(v))))
    };
    let one = |k: &str| -> Result<Rational> {
        let (ln, v) = get(k)?;
        parse_rational(v).map_err(|e| perr(*ln, format!("`{k}`: {e}")))
    };
    let list = |k: &str| -> Result<Vec<Rational>> {
        let (ln, v) = get(k)?;
        parse_list(v).map_err(|e| perr(*ln, format!("`{k}`: {e}")))
    };
    let z = one("z")?;
    let num = list("num")?;
    let den = list("den")?;
    if num.len() != den.len() {
        let (ln, _) = get("den")?;
        return Err(perr(*ln, format!("{} upper vs {} lower parameters", num.len(), den.len())));
    }
    let poly = UniPoly::new(list("poly")?);
    let mut series = SeriesSpec::new(z, num, den, poly);
    if let Some((ln, q)) = field("factor_den")? {
        series.factor_den = UniPoly::new(q.map_err(|e| perr(ln, format!("`factor_den`: {e}")))?);
    }
    if rec.fields.contains_key("prefactor") {
        series.prefactor = one("prefactor")?;
    }
    if let Some((ln, v)) = rec.fields.get("start") {
        series.start = v.parse().map_err(|_| perr(*ln, format!("bad start `{v}`")))?;
    }
    let target = match rec.fields.get("target") {
        Some((tl, tv)) => Some(tv.parse().map_err(|e| perr(*tl, format!("{e}")))?),
        None => None,
    };
    let entry = CatalogEntry {
        id,
        series,
        target,
        expected_rate: one("rate")?,
        citation: get("cite")?.1.clone(),
        note: rec.fields.get("note").map(|(_, v)| v.clone()),
    };
    if entry.series.factor_num.is_zero() {
        return Err(perr(rec.first_line, "zero polynomial".into()));
    }
    Ok(entry)
}

/// Parses and validates catalog text; `path` only labels diagnostics.
pub fn from_text(text: &str, path: &Path) -> Result<Vec<CatalogEntry>> {
    let entries = split_records(text, path)?
        .iter()
        .map(|r| parse_record(r, path))
        .collect::<Result<Vec<_>>>()?;
    validate_all(&entries)?;
    Ok(entries)
}

pub fn load(path: &Path) -> Result<Vec<CatalogEntry>> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io { path: PathBuf::from(path), msg: e.to_string() })?;
    from_text(&text, path)
}

pub fn save(entries: &[CatalogEntry], path: &Path) -> Result<()> {
    fs::write(path, to_text(entries)).map_err(|e| Error::Io { path: PathBuf::from(path), msg: e.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin_catalog;

    #[test]
    fn text_roundtrip() {
        let c = builtin_catalog();
        let t = to_text(&c);
        let back = from_text(&t, Path::new("mem")).unwrap();
        assert_eq!(back, c);
        assert_eq!(to_text(&back), t);
    }

    #[test]
    fn mismatch_names_record() {
        let t = "id = x\nz = 1/4\nnum = 1/2, 1/2\nden = 1\npoly = 1\ntarget = 1\nrate = 1/4\ncite = c\n";
        match from_text(t, Path::new("f")) {
            Err(Error::Parse { line, msg, .. }) => {
                assert_eq!(line, 4);
                assert!(msg.contains("`x`"), "{msg}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rate_and_duplicates() {
        let rec = |id: &str, rate: &str| {
            format!("id = {id}\nz = 1/4\nnum = 1/2\nden = 1\npoly = 1\ntarget = 1\nrate = {rate}\ncite = c\n")
        };
        assert!(matches!(
            from_text(&rec("x", "1/2"), Path::new("f")),
            Err(Error::RateMismatch { .. })
        ));
        let two = format!("{}\n{}", rec("x", "1/4"), rec("x", "1/4"));
        assert!(matches!(from_text(&two, Path::new("f")), Err(Error::DuplicateId(_))));
    }
}
