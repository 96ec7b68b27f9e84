use std::fmt;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use super::emit::ThfDocument;

/// Environment variable holding the default prover command template.
pub const PROVER_ENV: &str = "HOLEMBED_PROVER";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SzsStatus {
    Theorem,
    CounterSatisfiable,
    Satisfiable,
    Unsatisfiable,
    Timeout,
    GaveUp,
    Error(String),
}

impl SzsStatus {
    pub fn name(&self) -> &str {
        match self {
            SzsStatus::Theorem => "Theorem",
            SzsStatus::CounterSatisfiable => "CounterSatisfiable",
            SzsStatus::Satisfiable => "Satisfiable",
            SzsStatus::Unsatisfiable => "Unsatisfiable",
            SzsStatus::Timeout => "Timeout",
            SzsStatus::GaveUp => "GaveUp",
            SzsStatus::Error(_) => "Error",
        }
    }

    /// Theorem or CounterSatisfiable.
    pub fn is_decisive(&self) -> bool {
        matches!(self, SzsStatus::Theorem | SzsStatus::CounterSatisfiable)
    }
}

impl fmt::Display for SzsStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SzsStatus::Error(why) => write!(f, "Error({why})"),
            s => f.write_str(s.name()),
        }
    }
}

/// Status from the first `SZS status` line of a prover's output.
pub fn parse_szs(output: &str) -> SzsStatus {
    for line in output.lines() {
        let Some(at) = line.find("SZS status") else { continue };
        let token = line[at + "SZS status".len()..].split_whitespace().next().unwrap_or("");
        return match token {
            "Theorem" => SzsStatus::Theorem,
            "CounterSatisfiable" => SzsStatus::CounterSatisfiable,
            "Satisfiable" => SzsStatus::Satisfiable,
            "Unsatisfiable" => SzsStatus::Unsatisfiable,
            "Timeout" => SzsStatus::Timeout,
            "GaveUp" => SzsStatus::GaveUp,
            other => SzsStatus::Error(other.to_string()),
        };
    }
    SzsStatus::Error("no SZS line".into())
}

#[derive(Debug, thiserror::Error)]
pub enum ProverError {
    #[error("prover command template `{0}` has no {{file}} placeholder")]
    NoFilePlaceholder(String),
    #[error("prover command template `{0}` cannot be split into words")]
    BadTemplate(String),
    #[error("no prover configured; set {PROVER_ENV} or pass a command")]
    NotConfigured,
    #[error("cannot start `{command}`: {reason}")]
    Spawn { command: String, reason: std::io::Error },
    #[error("cannot write problem file {path}: {reason}")]
    Write { path: PathBuf, reason: std::io::Error },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProverConfig {
    pub name: String,
    /// Command with `{file}` and optionally `{timeout}` placeholders.
    pub command: String,
    pub timeout_secs: u64,
}

impl ProverConfig {
    pub fn new(name: &str, command: &str, timeout_secs: u64) -> Result<Self, ProverError> {
        if !command.contains("{file}") {
            return Err(ProverError::NoFilePlaceholder(command.to_string()));
        }
        if shlex::split(command).is_none() {
            return Err(ProverError::BadTemplate(command.to_string()));
        }
        Ok(ProverConfig { name: name.to_string(), command: command.to_string(), timeout_secs })
    }

    /// Reads the command from `HOLEMBED_PROVER`.
    pub fn from_env(timeout_secs: u64) -> Result<Self, ProverError> {
        let cmd = std::env::var(PROVER_ENV).map_err(|_| ProverError::NotConfigured)?;
        let name = shlex::split(&cmd)
            .and_then(|w| w.first().cloned())
            .map(|w| Path::new(&w).file_name().map_or(w.clone(), |f| f.to_string_lossy().into_owned()))
            .unwrap_or_else(|| "prover".into());
        Self::new(&name, &cmd, timeout_secs)
    }

    fn argv(&self, file: &Path) -> Vec<String> {
        let file = file.to_string_lossy();
        let timeout = self.timeout_secs.to_string();
        shlex::split(&self.command)
            .expect("checked on construction")
            .into_iter()
            .map(|w| w.replace("{file}", &file).replace("{timeout}", &timeout))
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct ProverResult {
    pub status: SzsStatus,
    pub wall_seconds: f64,
    pub raw_output: String,
    /// The problem file handed to the prover.
    pub problem_file: PathBuf,
}

/// Writes `doc` to `<dir>/<name>.p`, runs the prover on it and reads the
/// SZS status. The process is killed one second after the time limit and the
/// status is then `Timeout`. The problem file is left in place.
pub fn run_prover(cfg: &ProverConfig, doc: &ThfDocument, dir: &Path) -> Result<ProverResult, ProverError> {
    let path = dir.join(format!("{}.p", doc.name));
    std::fs::create_dir_all(dir)
        .and_then(|_| std::fs::write(&path, doc.to_string()))
        .map_err(|reason| ProverError::Write { path: path.clone(), reason })?;
    let argv = cfg.argv(&path);
    let start = Instant::now();
    let mut child = Command::new(&argv[0])
        .args(&argv[1..])
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .map_err(|reason| ProverError::Spawn { command: argv.join(" "), reason })?;
    let readers: Vec<_> = [
        child.stdout.take().map(|s| Box::new(s) as Box<dyn Read + Send>),
        child.stderr.take().map(|s| Box::new(s) as Box<dyn Read + Send>),
    ]
    .into_iter()
    .flatten()
    .map(|mut r| {
        let (tx, rx) = std::sync::mpsc::channel();
        std::thread::spawn(move || {
            let mut buf = Vec::new();
            let _ = r.read_to_end(&mut buf);
            let _ = tx.send(buf);
        });
        rx
    })
    .collect();
    let deadline = Duration::from_secs(cfg.timeout_secs) + Duration::from_secs(1);
    let mut killed = false;
    loop {
        match child.try_wait() {
            Ok(Some(_)) => break,
            Ok(None) if start.elapsed() > deadline => {
                let _ = child.kill();
                let _ = child.wait();
                killed = true;
                break;
            }
            Ok(None) => std::thread::sleep(Duration::from_millis(10)),
            Err(_) => break,
        }
    }
    let wall_seconds = start.elapsed().as_secs_f64();
    let mut raw_output = String::new();
    // Output pipes may outlive a killed prover through its children.
    for r in readers {
        raw_output.push_str(&String::from_utf8_lossy(&r.recv_timeout(Duration::from_secs(2)).unwrap_or_default()));
    }
    let status = match parse_szs(&raw_output) {
        SzsStatus::Error(why) if killed && why == "no SZS line" => SzsStatus::Timeout,
        s => s,
    };
    Ok(ProverResult { status, wall_seconds, raw_output, problem_file: path })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn szs_lines() {
        assert_eq!(parse_szs("% SZS status Theorem for f.p"), SzsStatus::Theorem);
        assert_eq!(parse_szs("% SZS status CounterSatisfiable"), SzsStatus::CounterSatisfiable);
        assert_eq!(parse_szs(""), SzsStatus::Error("no SZS line".into()));
        assert_eq!(parse_szs("noise\n# SZS status GaveUp\n% SZS status Theorem"), SzsStatus::GaveUp);
        assert_eq!(parse_szs("% SZS status Bogus"), SzsStatus::Error("Bogus".into()));
    }

    #[test]
    fn template_needs_file() {
        assert!(matches!(ProverConfig::new("x", "prove -t {timeout}", 5), Err(ProverError::NoFilePlaceholder(_))));
        let cfg = ProverConfig::new("x", "prove -t {timeout} '{file}'", 5).unwrap();
        assert_eq!(cfg.argv(Path::new("/tmp/a b.p")), ["prove", "-t", "5", "/tmp/a b.p"]);
    }
}
