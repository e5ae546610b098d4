//! Document-per-entity file store.
//!
//! Layout under the root directory:
//!
//! ```text
//! pages/ACGT-000001.page      fielded page format
//! submissions/000001.json
//! students/<id>.json
//! corpus.tsv, syllabus.tsv
//! journal.log                 one checksummed batch per line
//! journal.applied             sequence number of the last applied batch
//! ```
//!
//! Single documents are written to a temporary file and renamed into place.
//! Batches touching several documents are first appended to the journal as
//! `<sha256> <json>` and then applied; recovery replays every intact batch
//! past `journal.applied` and drops a torn tail, so the documents always
//! equal the result of some prefix of the journal. Once recovery has applied
//! everything the journal is emptied.

use std::fs::{self, File, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use acgt_core::content::{export_page, import_page, Corpus, LogicalPage, PageId, SyllabusMap};
use acgt_core::workflow::{Portal, PublishOutcome, StudentRecord, Submission};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("i/o error on {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("corrupt document {path}: {message}")]
    Corrupt { path: PathBuf, message: String },
    #[error("invalid student id `{0}`")]
    InvalidStudentId(String),
    #[error("injected crash at {0:?}")]
    InjectedCrash(CrashPoint),
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> StoreError + '_ {
    move |source| StoreError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Test hook: stop a batch commit at this point, as if the process died.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrashPoint {
    /// Half of the journal line is on disk.
    TornJournalAppend,
    /// The journal line is durable, no document written yet.
    AfterJournalAppend,
    /// The first document of the batch has been renamed into place.
    AfterFirstDocument,
    /// All documents written, applied marker not yet updated.
    BeforeAppliedMarker,
}

impl CrashPoint {
    pub const ALL: [CrashPoint; 4] = [
        CrashPoint::TornJournalAppend,
        CrashPoint::AfterJournalAppend,
        CrashPoint::AfterFirstDocument,
        CrashPoint::BeforeAppliedMarker,
    ];
}

/// A file under the store root with its full contents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub path: String,
    pub content: String,
}

impl Document {
    pub fn page(p: &LogicalPage) -> Self {
        Self {
            path: format!("pages/{}.page", p.id),
            content: export_page(p),
        }
    }

    pub fn submission(s: &Submission) -> Self {
        Self {
            path: format!("submissions/{:06}.json", s.id),
            content: to_json(s),
        }
    }

    pub fn student(s: &StudentRecord) -> Result<Self, StoreError> {
        if !valid_student_id(&s.id) {
            return Err(StoreError::InvalidStudentId(s.id.clone()));
        }
        Ok(Self {
            path: format!("students/{}.json", s.id),
            content: to_json(s),
        })
    }

    pub fn corpus(c: &Corpus) -> Self {
        Self {
            path: "corpus.tsv".into(),
            content: c.render(),
        }
    }

    pub fn syllabus(s: &SyllabusMap) -> Self {
        Self {
            path: "syllabus.tsv".into(),
            content: s.render(),
        }
    }
}

/// Student ids become file names, so they are kept to a safe alphabet.
pub fn valid_student_id(id: &str) -> bool {
    !id.is_empty()
        && id.len() <= 64
        && id.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'-' || b == b'_')
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("store documents serialize");
    s.push('\n');
    s
}

#[derive(Debug, Serialize, Deserialize)]
struct Batch {
    seq: u64,
    docs: Vec<Document>,
}

fn checksum(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug)]
pub struct Store {
    root: PathBuf,
    next_seq: u64,
    crash_at: Option<CrashPoint>,
}

impl Store {
    /// Opens (creating if needed) the store at `root` and runs recovery.
    pub fn open(root: impl Into<PathBuf>) -> Result<Self, StoreError> {
        let root = root.into();
        for dir in ["pages", "submissions", "students"] {
            let p = root.join(dir);
            fs::create_dir_all(&p).map_err(io_err(&p))?;
        }
        let mut store = Store {
            root,
            next_seq: 1,
            crash_at: None,
        };
        store.recover()?;
        Ok(store)
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn inject_crash(&mut self, point: Option<CrashPoint>) {
        self.crash_at = point;
    }

    fn crash(&self, point: CrashPoint) -> Result<(), StoreError> {
        if self.crash_at == Some(point) {
            Err(StoreError::InjectedCrash(point))
        } else {
            Ok(())
        }
    }

    fn journal_path(&self) -> PathBuf {
        self.root.join("journal.log")
    }

    fn marker_path(&self) -> PathBuf {
        self.root.join("journal.applied")
    }

    fn write_atomic(&self, rel: &str, content: &str) -> Result<(), StoreError> {
        let path = self.root.join(rel);
        let tmp = path.with_extension(format!(
            "{}.tmp",
            path.extension().and_then(|e| e.to_str()).unwrap_or("")
        ));
        let mut f = File::create(&tmp).map_err(io_err(&tmp))?;
        f.write_all(content.as_bytes()).map_err(io_err(&tmp))?;
        f.sync_all().map_err(io_err(&tmp))?;
        fs::rename(&tmp, &path).map_err(io_err(&path))?;
        Ok(())
    }

    fn applied_seq(&self) -> Result<u64, StoreError> {
        let path = self.marker_path();
        match fs::read_to_string(&path) {
            Ok(s) => s.trim().parse().map_err(|_| StoreError::Corrupt {
                path,
                message: "applied marker is not a number".into(),
            }),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(0),
            Err(e) => Err(StoreError::Io { path, source: e }),
        }
    }

    /// Intact journal batches, in order, and the byte length they occupy.
    fn read_journal(&self) -> Result<(Vec<Batch>, usize), StoreError> {
        let path = self.journal_path();
        let text = match fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok((Vec::new(), 0)),
            Err(e) => return Err(StoreError::Io { path, source: e }),
        };
        let mut batches = Vec::new();
        let mut good = 0;
        for line in text.split_inclusive(|&b| b == b'\n') {
            let Some(body) = line.strip_suffix(b"\n") else { break };
            let Some(space) = body.iter().position(|&b| b == b' ') else { break };
            let (sum, json) = (&body[..space], &body[space + 1..]);
            if sum != checksum(json).as_bytes() {
                break;
            }
            let Ok(batch) = serde_json::from_slice::<Batch>(json) else { break };
            batches.push(batch);
            good += line.len();
        }
        Ok((batches, good))
    }

    fn recover(&mut self) -> Result<(), StoreError> {
        let (batches, good) = self.read_journal()?;
        let path = self.journal_path();
        if path.exists() {
            let len = fs::metadata(&path).map_err(io_err(&path))?.len() as usize;
            if len > good {
                let f = OpenOptions::new().write(true).open(&path).map_err(io_err(&path))?;
                f.set_len(good as u64).map_err(io_err(&path))?;
                f.sync_all().map_err(io_err(&path))?;
            }
        }
        let applied = self.applied_seq()?;
        for b in batches.iter().filter(|b| b.seq > applied) {
            for d in &b.docs {
                self.write_atomic(&d.path, &d.content)?;
            }
            self.write_atomic("journal.applied", &format!("{}\n", b.seq))?;
        }
        self.next_seq = batches.last().map_or(applied, |b| b.seq.max(applied)) + 1;
        // Everything is applied and the marker is durable, so the journal
        // can start empty; sequence numbers continue from the marker.
        if good > 0 {
            let f = OpenOptions::new().write(true).open(&path).map_err(io_err(&path))?;
            f.set_len(0).map_err(io_err(&path))?;
            f.sync_all().map_err(io_err(&path))?;
        }
        Ok(())
    }

    /// Writes one document atomically, or several through the journal.
    pub fn commit(&mut self, docs: Vec<Document>) -> Result<(), StoreError> {
        match docs.len() {
            0 => Ok(()),
            1 => self.write_atomic(&docs[0].path, &docs[0].content),
            _ => self.commit_batch(docs),
        }
    }

    fn commit_batch(&mut self, docs: Vec<Document>) -> Result<(), StoreError> {
        let batch = Batch {
            seq: self.next_seq,
            docs,
        };
        let json = serde_json::to_string(&batch).expect("batch serializes");
        let line = format!("{} {}\n", checksum(json.as_bytes()), json);
        let path = self.journal_path();
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&path)
            .map_err(io_err(&path))?;
        if self.crash_at == Some(CrashPoint::TornJournalAppend) {
            f.write_all(&line.as_bytes()[..line.len() / 2]).map_err(io_err(&path))?;
            return self.crash(CrashPoint::TornJournalAppend);
        }
        f.write_all(line.as_bytes()).map_err(io_err(&path))?;
        f.sync_all().map_err(io_err(&path))?;
        self.next_seq += 1;
        self.crash(CrashPoint::AfterJournalAppend)?;

        for (i, d) in batch.docs.iter().enumerate() {
            self.write_atomic(&d.path, &d.content)?;
            if i == 0 {
                self.crash(CrashPoint::AfterFirstDocument)?;
            }
        }
        self.crash(CrashPoint::BeforeAppliedMarker)?;
        self.write_atomic("journal.applied", &format!("{}\n", batch.seq))
    }

    /// Journals the page, submission and credited student of a publish.
    pub fn commit_publish(&mut self, outcome: &PublishOutcome) -> Result<(), StoreError> {
        let mut docs = vec![Document::page(&outcome.page), Document::submission(&outcome.submission)];
        if let Some(s) = &outcome.student {
            docs.push(Document::student(s)?);
        }
        self.commit_batch(docs)
    }

    /// Writes every entity of `portal` in one batch.
    pub fn save_all(&mut self, portal: &Portal) -> Result<(), StoreError> {
        let mut docs = vec![Document::corpus(&portal.corpus), Document::syllabus(&portal.syllabus)];
        docs.extend(portal.pages.values().map(Document::page));
        docs.extend(portal.submissions.values().map(Document::submission));
        for s in portal.students.values() {
            docs.push(Document::student(s)?);
        }
        self.commit_batch(docs)
    }

    fn read_dir(&self, dir: &str, ext: &str) -> Result<Vec<(PathBuf, String)>, StoreError> {
        let path = self.root.join(dir);
        let mut out = Vec::new();
        for entry in fs::read_dir(&path).map_err(io_err(&path))? {
            let p = entry.map_err(io_err(&path))?.path();
            if p.extension().and_then(|e| e.to_str()) == Some(ext) {
                let text = fs::read_to_string(&p).map_err(io_err(&p))?;
                out.push((p, text));
            }
        }
        out.sort();
        Ok(out)
    }

    fn read_optional(&self, rel: &str) -> Result<Option<String>, StoreError> {
        let path = self.root.join(rel);
        match fs::read_to_string(&path) {
            Ok(s) => Ok(Some(s)),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(StoreError::Io { path, source: e }),
        }
    }

    /// Reads every document into a portal.
    pub fn load(&self) -> Result<Portal, StoreError> {
        let corrupt = |path: &Path, message: String| StoreError::Corrupt {
            path: path.to_path_buf(),
            message,
        };
        let mut portal = Portal::default();
        if let Some(text) = self.read_optional("corpus.tsv")? {
            portal.corpus = Corpus::parse(&text).map_err(|e| corrupt(&self.root.join("corpus.tsv"), e.to_string()))?;
        }
        if let Some(text) = self.read_optional("syllabus.tsv")? {
            portal.syllabus =
                SyllabusMap::parse(&text).map_err(|e| corrupt(&self.root.join("syllabus.tsv"), e.to_string()))?;
        }
        for (path, text) in self.read_dir("pages", "page")? {
            let page = import_page(&text).map_err(|e| corrupt(&path, e.to_string()))?;
            let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("");
            if stem.parse::<PageId>().ok() != Some(page.id) {
                return Err(corrupt(&path, "file name does not match page id".into()));
            }
            portal.pages.insert(page.id, page);
        }
        for (path, text) in self.read_dir("submissions", "json")? {
            let s: Submission = serde_json::from_str(&text).map_err(|e| corrupt(&path, e.to_string()))?;
            portal.submissions.insert(s.id, s);
        }
        for (path, text) in self.read_dir("students", "json")? {
            let s: StudentRecord = serde_json::from_str(&text).map_err(|e| corrupt(&path, e.to_string()))?;
            portal.students.insert(s.id.clone(), s);
        }
        Ok(portal)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use acgt_core::content::seed;

    #[test]
    fn save_and_load() {
        let dir = tempfile::tempdir().unwrap();
        let mut store = Store::open(dir.path()).unwrap();
        let portal = Portal::seeded();
        store.save_all(&portal).unwrap();
        let back = Store::open(dir.path()).unwrap().load().unwrap();
        assert_eq!(back.pages, portal.pages);
        assert_eq!(back.corpus.render(), portal.corpus.render());
        assert_eq!(back.syllabus, portal.syllabus);
    }

    #[test]
    fn torn_tail_is_dropped() {
        let dir = tempfile::tempdir().unwrap();
        let mut store = Store::open(dir.path()).unwrap();
        let mut page = seed::pages()[&seed::WHEEL].clone();
        store.commit(vec![Document::page(&page), Document::corpus(&seed::corpus())]).unwrap();
        page.title = "Changed".into();
        store.inject_crash(Some(CrashPoint::TornJournalAppend));
        let err = store.commit(vec![Document::page(&page), Document::corpus(&seed::corpus())]);
        assert!(matches!(err, Err(StoreError::InjectedCrash(_))));
        let reopened = Store::open(dir.path()).unwrap();
        let loaded = reopened.load().unwrap();
        assert_eq!(loaded.pages[&seed::WHEEL].title, "Wheel graph");
        // Applied batches are compacted away; numbering continues.
        let (batches, _) = reopened.read_journal().unwrap();
        assert!(batches.is_empty());
        assert_eq!(reopened.next_seq, 2);
    }

    #[test]
    fn student_ids_are_file_safe() {
        assert!(valid_student_id("s-01_a"));
        assert!(!valid_student_id("../x"));
        assert!(!valid_student_id(""));
    }
}
