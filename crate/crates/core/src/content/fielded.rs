//! Fielded page format.
//!
//! A page is a sequence of `%TAG value` records, UTF-8 with LF line endings.
//! Some tags carry a parameter in parentheses, `%PROP(in-course) text`. A
//! value spans several lines by indenting each continuation line with two
//! spaces. Blank lines between records are ignored.
//!
//! ```text
//! %ID ACGT-000001
//! %TITLE Wheel graph
//! %KIND special-graph
//! %STATUS Published
//! %DEF W_n is the cycle C_{n-1} joined to one new vertex.
//! %CONS(wheel:6) Add a hub adjacent to every rim vertex.
//! %PROP(in-course) W_n is planar.
//! %PREREQ(P1) graphs; cycles in graphs
//! ```
//!
//! Tags, in export order: `ID TITLE KIND STATUS COLOR DEF FIG CONS PROP REL
//! MORE HIST REMARK PREREQ COURSE COMP`. Parameters escape `%`, `)` and line
//! breaks as `%25`, `%29`, `%0A`, `%0D`.

use std::fmt;
use std::str::FromStr;

use super::page::{
    ColorCode, Construction, LogicalPage, PageId, PageKind, PageStatus, PrereqType, PrerequisiteBox,
    Property, Reference, Remark,
};
use super::ContentError;
use crate::families::{Family, FamilySpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    Id,
    Title,
    Kind,
    Status,
    Color,
    Def,
    Fig,
    Cons,
    Prop,
    Rel,
    More,
    Hist,
    Remark,
    Prereq,
    Course,
    Comp,
}

impl Tag {
    pub const ALL: [Tag; 16] = [
        Tag::Id,
        Tag::Title,
        Tag::Kind,
        Tag::Status,
        Tag::Color,
        Tag::Def,
        Tag::Fig,
        Tag::Cons,
        Tag::Prop,
        Tag::Rel,
        Tag::More,
        Tag::Hist,
        Tag::Remark,
        Tag::Prereq,
        Tag::Course,
        Tag::Comp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Tag::Id => "ID",
            Tag::Title => "TITLE",
            Tag::Kind => "KIND",
            Tag::Status => "STATUS",
            Tag::Color => "COLOR",
            Tag::Def => "DEF",
            Tag::Fig => "FIG",
            Tag::Cons => "CONS",
            Tag::Prop => "PROP",
            Tag::Rel => "REL",
            Tag::More => "MORE",
            Tag::Hist => "HIST",
            Tag::Remark => "REMARK",
            Tag::Prereq => "PREREQ",
            Tag::Course => "COURSE",
            Tag::Comp => "COMP",
        }
    }

    /// Tags that may appear any number of times.
    pub fn is_repeated(self) -> bool {
        matches!(
            self,
            Tag::Fig | Tag::Cons | Tag::Prop | Tag::Rel | Tag::More | Tag::Remark | Tag::Prereq | Tag::Course | Tag::Comp
        )
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Tag {
    type Err = ContentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim_start_matches('%').to_ascii_uppercase();
        Tag::ALL
            .into_iter()
            .find(|t| t.name() == key)
            .ok_or_else(|| ContentError::InvalidKeyword {
                kind: "Tag",
                value: s.to_string(),
            })
    }
}

/// One parsed `%TAG(param) value` record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    pub line: usize,
    pub tag: Tag,
    pub param: Option<String>,
    pub value: String,
}

fn escape_param(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '%' => out.push_str("%25"),
            ')' => out.push_str("%29"),
            '\n' => out.push_str("%0A"),
            '\r' => out.push_str("%0D"),
            c => out.push(c),
        }
    }
    out
}

fn unescape_param(s: &str) -> Option<String> {
    let mut out = String::with_capacity(s.len());
    let mut rest = s;
    while let Some(pos) = rest.find('%') {
        out.push_str(&rest[..pos]);
        let code = rest.get(pos + 1..pos + 3)?;
        out.push(match code {
            "25" => '%',
            "29" => ')',
            "0A" => '\n',
            "0D" => '\r',
            _ => return None,
        });
        rest = &rest[pos + 3..];
    }
    out.push_str(rest);
    Some(out)
}

fn write_record(out: &mut String, tag: Tag, param: Option<&str>, value: &str) {
    out.push('%');
    out.push_str(tag.name());
    if let Some(p) = param {
        out.push('(');
        out.push_str(&escape_param(p));
        out.push(')');
    }
    let mut lines = value.split('\n');
    let first = lines.next().unwrap_or("");
    if !first.is_empty() {
        out.push(' ');
        out.push_str(first);
    }
    out.push('\n');
    for line in lines {
        out.push_str("  ");
        out.push_str(line);
        out.push('\n');
    }
}

fn format_binding(spec: &FamilySpec) -> String {
    let params: Vec<String> = spec.params.iter().map(u64::to_string).collect();
    format!("{}:{}", spec.family, params.join(","))
}

fn parse_binding(text: &str) -> Result<FamilySpec, String> {
    let (family, params) = text.split_once(':').unwrap_or((text, ""));
    let family: Family = family.parse().map_err(|e| format!("{e}"))?;
    let params = params
        .split(',')
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<u64>().map_err(|_| format!("bad parameter `{s}`")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FamilySpec { family, params })
}

/// Renders `page` in the fielded format.
pub fn export_page(page: &LogicalPage) -> String {
    let mut out = String::new();
    write_record(&mut out, Tag::Id, None, &page.id.to_string());
    write_record(&mut out, Tag::Title, None, &page.title);
    write_record(&mut out, Tag::Kind, None, page.kind.as_str());
    write_record(&mut out, Tag::Status, None, page.status.as_str());
    if let Some(c) = page.color {
        write_record(&mut out, Tag::Color, None, c.as_str());
    }
    if !page.definition.is_empty() {
        write_record(&mut out, Tag::Def, None, &page.definition);
    }
    for f in &page.figures {
        write_record(&mut out, Tag::Fig, None, f);
    }
    for c in &page.constructions {
        let binding = c.binding.as_ref().map(format_binding);
        write_record(&mut out, Tag::Cons, binding.as_deref(), &c.text);
    }
    for p in &page.properties {
        write_record(&mut out, Tag::Prop, p.color.map(ColorCode::as_str), &p.text);
    }
    for r in &page.related {
        write_record(&mut out, Tag::Rel, None, &r.to_string());
    }
    for m in &page.more_to_explore {
        write_record(&mut out, Tag::More, m.url.as_deref(), &m.text);
    }
    if !page.historical_notes.is_empty() {
        write_record(&mut out, Tag::Hist, None, &page.historical_notes);
    }
    for r in &page.remarks {
        write_record(&mut out, Tag::Remark, Some(&r.author), &r.text);
    }
    for b in &page.prereq_boxes {
        write_record(&mut out, Tag::Prereq, Some(b.declared_type.as_str()), &b.terms.join("; "));
    }
    for c in &page.prerequisite_courses {
        write_record(&mut out, Tag::Course, None, c);
    }
    for (k, v) in &page.computed {
        write_record(&mut out, Tag::Comp, Some(k), v);
    }
    out
}

/// Splits fielded text into records. Unknown tags and stray lines are
/// errors carrying their 1-based line number.
pub fn parse_records(text: &str) -> Result<Vec<Record>, ContentError> {
    let mut records: Vec<Record> = Vec::new();
    for (i, raw) in text.split('\n').enumerate() {
        let line = i + 1;
        if raw.is_empty() {
            continue;
        }
        if let Some(cont) = raw.strip_prefix("  ") {
            let last = records.last_mut().ok_or_else(|| ContentError::Parse {
                line,
                tag: None,
                message: "continuation line before any record".into(),
            })?;
            last.value.push('\n');
            last.value.push_str(cont);
            continue;
        }
        let body = raw.strip_prefix('%').ok_or_else(|| ContentError::Parse {
            line,
            tag: None,
            message: "expected a `%TAG` record or an indented continuation".into(),
        })?;
        let name_end = body
            .find(|c: char| !c.is_ascii_alphanumeric() && c != '_')
            .unwrap_or(body.len());
        let name = &body[..name_end];
        let tag: Tag = name.parse().map_err(|_| ContentError::Parse {
            line,
            tag: Some(format!("%{name}")),
            message: "unknown field tag".into(),
        })?;
        let mut rest = &body[name_end..];
        let mut param = None;
        if let Some(after) = rest.strip_prefix('(') {
            let close = after.find(')').ok_or_else(|| ContentError::Parse {
                line,
                tag: Some(format!("%{name}")),
                message: "unterminated parameter".into(),
            })?;
            param = Some(unescape_param(&after[..close]).ok_or_else(|| ContentError::Parse {
                line,
                tag: Some(format!("%{name}")),
                message: "bad escape in parameter".into(),
            })?);
            rest = &after[close + 1..];
        }
        let value = if rest.is_empty() {
            String::new()
        } else if let Some(v) = rest.strip_prefix(' ') {
            v.to_string()
        } else {
            return Err(ContentError::Parse {
                line,
                tag: Some(format!("%{name}")),
                message: "expected a space after the tag".into(),
            });
        };
        records.push(Record {
            line,
            tag,
            param,
            value,
        });
    }
    Ok(records)
}

fn record_error(r: &Record, message: impl Into<String>) -> ContentError {
    ContentError::Parse {
        line: r.line,
        tag: Some(format!("%{}", r.tag)),
        message: message.into(),
    }
}

fn keyword<T: FromStr<Err = ContentError>>(r: &Record, text: &str) -> Result<T, ContentError> {
    text.parse().map_err(|e: ContentError| record_error(r, e.to_string()))
}

fn no_param(r: &Record) -> Result<(), ContentError> {
    match r.param {
        Some(_) => Err(record_error(r, "tag takes no parameter")),
        None => Ok(()),
    }
}

/// Applies one record to `page`. Scalar tags overwrite, repeated tags append.
pub fn apply_record(page: &mut LogicalPage, r: &Record) -> Result<(), ContentError> {
    match r.tag {
        Tag::Id => {
            no_param(r)?;
            let id: PageId = keyword(r, &r.value)?;
            if id != page.id {
                return Err(record_error(r, "page ids never change"));
            }
        }
        Tag::Title => {
            no_param(r)?;
            page.title = r.value.clone();
        }
        Tag::Kind => {
            no_param(r)?;
            page.kind = keyword(r, &r.value)?;
        }
        Tag::Status => {
            no_param(r)?;
            page.status = keyword(r, &r.value)?;
        }
        Tag::Color => {
            no_param(r)?;
            page.color = Some(keyword(r, &r.value)?);
        }
        Tag::Def => {
            no_param(r)?;
            page.definition = r.value.clone();
        }
        Tag::Fig => {
            no_param(r)?;
            page.figures.push(r.value.clone());
        }
        Tag::Cons => {
            let binding = match &r.param {
                Some(p) => Some(parse_binding(p).map_err(|m| record_error(r, m))?),
                None => None,
            };
            page.constructions.push(Construction {
                text: r.value.clone(),
                binding,
            });
        }
        Tag::Prop => {
            let color = match &r.param {
                Some(p) => Some(keyword(r, p)?),
                None => None,
            };
            page.properties.push(Property {
                text: r.value.clone(),
                color,
            });
        }
        Tag::Rel => {
            no_param(r)?;
            page.related.push(keyword(r, &r.value)?);
        }
        Tag::More => page.more_to_explore.push(Reference {
            text: r.value.clone(),
            url: r.param.clone(),
        }),
        Tag::Hist => {
            no_param(r)?;
            page.historical_notes = r.value.clone();
        }
        Tag::Remark => {
            let author = r.param.clone().ok_or_else(|| record_error(r, "remark needs an author"))?;
            page.remarks.push(Remark {
                author,
                text: r.value.clone(),
            });
        }
        Tag::Prereq => {
            let declared_type: PrereqType = match &r.param {
                Some(p) => keyword(r, p)?,
                None => return Err(record_error(r, "prerequisite box needs a type")),
            };
            let terms = r
                .value
                .split(';')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(str::to_string)
                .collect();
            page.prereq_boxes.push(PrerequisiteBox { declared_type, terms });
        }
        Tag::Course => {
            no_param(r)?;
            page.prerequisite_courses.push(r.value.clone());
        }
        Tag::Comp => {
            let key = r.param.clone().ok_or_else(|| record_error(r, "computed entry needs a key"))?;
            if page.computed.insert(key, r.value.clone()).is_some() {
                return Err(record_error(r, "duplicate computed key"));
            }
        }
    }
    Ok(())
}

/// Parses one page. `%ID`, `%TITLE`, `%KIND` and `%STATUS` are required;
/// scalar tags may appear at most once.
pub fn import_page(text: &str) -> Result<LogicalPage, ContentError> {
    let records = parse_records(text)?;
    let end_line = text.split('\n').count();
    let find = |tag: Tag| -> Result<&Record, ContentError> {
        records.iter().find(|r| r.tag == tag).ok_or_else(|| ContentError::Parse {
            line: end_line,
            tag: Some(format!("%{tag}")),
            message: "required field missing".into(),
        })
    };
    let id_record = find(Tag::Id)?;
    no_param(id_record)?;
    let id: PageId = keyword(id_record, &id_record.value)?;
    let title = find(Tag::Title)?;
    let kind = find(Tag::Kind)?;
    find(Tag::Status)?;
    no_param(kind)?;
    let mut page = LogicalPage::new(id, title.value.clone(), keyword::<PageKind>(kind, &kind.value)?);
    page.status = PageStatus::Draft;

    let mut seen = std::collections::HashSet::new();
    for r in &records {
        if !r.tag.is_repeated() && !seen.insert(r.tag) {
            return Err(record_error(r, "field given more than once"));
        }
        apply_record(&mut page, r)?;
    }
    Ok(page)
}
