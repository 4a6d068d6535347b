//! Review service: session state, its persistence, and the server loop.
//!
//! The state directory holds `session.json`, a snapshot of the sampled items
//! written once when the session opens, and `decisions.jsonl`, an
//! append-only log with one decision per line. Restarting replays the log
//! over the snapshot. Every decision is also written into the mapping table
//! file as an adjudicated entry.

mod api;

use std::fs::{self, OpenOptions};
use std::io::{BufRead, BufReader, Write as _};
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::sync::{Arc, RwLock};
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::Context as _;
use koalign::align::{align_corpus, MappingTable, RuleConfig};
use koalign::conllu::{read_file, Corpus};
use koalign::miner::mine;
use koalign::review::{decision_note, Decision, ReviewItem, ReviewSession, SessionParams};
use num_rational::Ratio;

pub use api::router;

use crate::commands::load_config;
use crate::failure::UserError;

pub const SESSION_FILE: &str = "session.json";
pub const LOG_FILE: &str = "decisions.jsonl";

pub struct Options {
    pub corpus: PathBuf,
    pub table: PathBuf,
    pub state_dir: PathBuf,
    pub config: Option<PathBuf>,
    pub seed: u64,
    pub sample: Ratio<u64>,
    pub round: u32,
    pub bind: SocketAddr,
    pub ui_dir: Option<PathBuf>,
}

pub struct ReviewState {
    pub corpus: Corpus,
    pub config: RuleConfig,
    pub table: MappingTable,
    pub table_path: PathBuf,
    pub session: ReviewSession,
    pub log_path: PathBuf,
}

pub type Shared = Arc<RwLock<ReviewState>>;

fn io_context<T>(r: std::io::Result<T>, what: &str, path: &Path) -> anyhow::Result<T> {
    r.map_err(koalign::Error::from)
        .with_context(|| format!("{what} {}", path.display()))
}

pub fn now_millis() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_millis() as u64)
}

impl ReviewState {
    /// Loads the inputs, opens or resumes the session in `state_dir`, and
    /// replays the decision log.
    pub fn open(
        corpus_path: &Path,
        table_path: &Path,
        state_dir: &Path,
        config: RuleConfig,
        params: &SessionParams,
    ) -> anyhow::Result<ReviewState> {
        let corpus =
            read_file(corpus_path).with_context(|| format!("reading {}", corpus_path.display()))?;
        let mut table = MappingTable::load(table_path)
            .with_context(|| format!("reading {}", table_path.display()))?;
        io_context(fs::create_dir_all(state_dir), "creating", state_dir)?;

        let session_path = state_dir.join(SESSION_FILE);
        let mut session = if session_path.exists() {
            let text = io_context(fs::read_to_string(&session_path), "reading", &session_path)?;
            let s: ReviewSession = serde_json::from_str(&text)
                .with_context(|| format!("parsing {}", session_path.display()))?;
            if s.seed != params.seed
                || s.sample_fraction != params.sample_fraction
                || s.round != params.round
            {
                return Err(UserError::new(
                    "SESSION_MISMATCH",
                    format!(
                        "{} was opened with seed {}, sample {}, round {}",
                        session_path.display(),
                        s.seed,
                        s.sample_fraction,
                        s.round
                    ),
                )
                .into());
            }
            s
        } else {
            let (_, changes) = align_corpus(&corpus, &table, &config)?;
            let mined = mine(&corpus)?;
            let s = ReviewSession::open(&corpus, &changes, &mined, table.version(), params)?;
            let tmp = session_path.with_extension("json.tmp");
            io_context(
                fs::write(&tmp, serde_json::to_string_pretty(&s)?),
                "writing",
                &tmp,
            )?;
            io_context(fs::rename(&tmp, &session_path), "writing", &session_path)?;
            s
        };

        let log_path = state_dir.join(LOG_FILE);
        if log_path.exists() {
            let file = io_context(fs::File::open(&log_path), "reading", &log_path)?;
            let mut log = Vec::new();
            for (n, line) in BufReader::new(file).lines().enumerate() {
                let line = io_context(line, "reading", &log_path)?;
                if line.trim().is_empty() {
                    continue;
                }
                let d: Decision = serde_json::from_str(&line)
                    .with_context(|| format!("{}:{}", log_path.display(), n + 1))?;
                log.push(d);
            }
            session.replay(&log)?;
        }
        if session.apply_to_table(&mut table) > 0 {
            table.save(table_path)?;
        }

        Ok(ReviewState {
            corpus,
            config,
            table,
            table_path: table_path.to_path_buf(),
            session,
            log_path,
        })
    }

    /// Validates, logs, applies and saves one decision. Nothing changes when
    /// validation or the log write fails.
    pub fn decide(&mut self, d: &Decision) -> anyhow::Result<ReviewItem> {
        self.session.check(d)?;
        let mut line = serde_json::to_string(d)?;
        line.push('\n');
        let mut log = io_context(
            OpenOptions::new()
                .create(true)
                .append(true)
                .open(&self.log_path),
            "opening",
            &self.log_path,
        )?;
        io_context(log.write_all(line.as_bytes()), "writing", &self.log_path)?;
        io_context(log.sync_data(), "writing", &self.log_path)?;

        let item = self.session.decide(d)?.clone();
        let upos = item.decided_upos.expect("decided above");
        self.table.adjudicate(
            &item.construction.xpos_seq,
            upos,
            item.construction.frequency,
            &decision_note(&item),
        );
        self.table.save(&self.table_path)?;
        Ok(item)
    }
}

pub fn run(opts: Options) -> anyhow::Result<()> {
    let config = load_config(opts.config.as_deref())?;
    let params = SessionParams {
        sample_fraction: opts.sample,
        seed: opts.seed,
        round: opts.round,
    };
    let state = ReviewState::open(&opts.corpus, &opts.table, &opts.state_dir, config, &params)?;
    let summary = format!(
        "{} items from {} of {} changes, table version {}",
        state.session.items.len(),
        state.session.sampled_changes,
        state.session.total_changes,
        state.table.version()
    );
    let app = router(Arc::new(RwLock::new(state)), opts.ui_dir.as_deref());

    let rt = tokio::runtime::Runtime::new().context("starting runtime")?;
    rt.block_on(async move {
        let listener = tokio::net::TcpListener::bind(opts.bind)
            .await
            .map_err(|e| {
                let code = if e.kind() == std::io::ErrorKind::AddrInUse {
                    "PORT_BUSY"
                } else {
                    "BIND_FAILED"
                };
                UserError::new(code, format!("cannot bind {}: {e}", opts.bind))
            })?;
        eprintln!("serving on http://{}: {summary}", listener.local_addr()?);
        axum::serve(listener, app)
            .with_graceful_shutdown(async {
                let _ = tokio::signal::ctrl_c().await;
            })
            .await
            .context("serving")
    })
}
