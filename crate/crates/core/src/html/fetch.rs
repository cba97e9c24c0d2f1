//! Fetching HTML over an injected capability so tests can substitute
//! fixtures for the network.

use std::path::PathBuf;
use std::time::Duration;

use percent_encoding::{utf8_percent_encode, AsciiSet, NON_ALPHANUMERIC};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FetchError {
    #[error("invalid url {url:?}: {message}")]
    InvalidUrl { url: String, message: String },
    #[error("fetch of {url} failed with status {status}")]
    Status { url: String, status: u16 },
    #[error("fetch of {url} failed: {message}")]
    Transport { url: String, message: String },
    #[error("no fixture for {url} (looked at {path})")]
    MissingFixture { url: String, path: String },
}

impl FetchError {
    /// HTTP status carried by the error, when there is one.
    pub fn status(&self) -> Option<u16> {
        match self {
            FetchError::Status { status, .. } => Some(*status),
            _ => None,
        }
    }
}

/// Something that can turn a URL into a response body.
pub trait Fetcher {
    fn fetch(&self, url: &str) -> Result<String, FetchError>;
}

/// Fetch `url` through the injected client.
pub fn fetch(url: &str, client: &dyn Fetcher) -> Result<String, FetchError> {
    client.fetch(url)
}

const DEFAULT_TIMEOUT_MS: u64 = 10_000;

/// Live HTTP client. The timeout comes from `CURATA_TIMEOUT_MS`
/// (milliseconds, default 10000).
#[derive(Debug, Clone)]
pub struct HttpFetcher {
    timeout_ms: u64,
}

impl HttpFetcher {
    pub fn new(timeout_ms: u64) -> Self {
        HttpFetcher { timeout_ms }
    }

    pub fn from_env() -> Self {
        let timeout_ms = std::env::var("CURATA_TIMEOUT_MS")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(DEFAULT_TIMEOUT_MS);
        HttpFetcher { timeout_ms }
    }
}

impl Default for HttpFetcher {
    fn default() -> Self {
        HttpFetcher::new(DEFAULT_TIMEOUT_MS)
    }
}

impl Fetcher for HttpFetcher {
    fn fetch(&self, url: &str) -> Result<String, FetchError> {
        if !url.starts_with("http://") && !url.starts_with("https://") {
            return Err(FetchError::InvalidUrl {
                url: url.to_string(),
                message: "expected an absolute http(s) url".to_string(),
            });
        }
        let agent: ureq::Agent = ureq::Agent::config_builder()
            .timeout_global(Some(Duration::from_millis(self.timeout_ms)))
            .build()
            .into();
        match agent.get(url).call() {
            Ok(mut response) => response
                .body_mut()
                .read_to_string()
                .map_err(|e| FetchError::Transport {
                    url: url.to_string(),
                    message: e.to_string(),
                }),
            Err(ureq::Error::StatusCode(status)) => Err(FetchError::Status {
                url: url.to_string(),
                status,
            }),
            Err(e) => Err(FetchError::Transport {
                url: url.to_string(),
                message: e.to_string(),
            }),
        }
    }
}

/// RFC 3986 unreserved characters stay; everything else is escaped.
const FIXTURE_ENCODE: &AsciiSet = &NON_ALPHANUMERIC
    .remove(b'-')
    .remove(b'_')
    .remove(b'.')
    .remove(b'~');

/// Encode a query/url the way fixture file names expect.
pub(crate) fn fixture_encode(raw: &str) -> String {
    utf8_percent_encode(raw, FIXTURE_ENCODE).to_string()
}

/// Offline client reading `<dir>/<percent-encoded-url>.html`.
#[derive(Debug, Clone)]
pub struct FixtureFetcher {
    dir: PathBuf,
}

impl FixtureFetcher {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        FixtureFetcher { dir: dir.into() }
    }

    pub fn fixture_path(&self, url: &str) -> PathBuf {
        self.dir.join(format!("{}.html", fixture_encode(url)))
    }
}

impl Fetcher for FixtureFetcher {
    fn fetch(&self, url: &str) -> Result<String, FetchError> {
        let path = self.fixture_path(url);
        std::fs::read_to_string(&path).map_err(|_| FetchError::MissingFixture {
            url: url.to_string(),
            path: path.display().to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::{Read, Write};
    use std::net::TcpListener;

    /// Serve exactly one canned HTTP response on a local port.
    fn one_shot_server(status_line: &'static str, body: &'static str) -> String {
        let listener = TcpListener::bind("127.0.0.1:0").unwrap();
        let addr = listener.local_addr().unwrap();
        std::thread::spawn(move || {
            if let Ok((mut stream, _)) = listener.accept() {
                let mut buf = [0u8; 4096];
                let _ = stream.read(&mut buf);
                let response = format!(
                    "{status_line}\r\ncontent-length: {}\r\nconnection: close\r\n\r\n{body}",
                    body.len()
                );
                let _ = stream.write_all(response.as_bytes());
            }
        });
        format!("http://{addr}/")
    }

    #[test]
    fn passthrough_body() {
        let url = one_shot_server("HTTP/1.1 200 OK", "<html/>");
        let body = HttpFetcher::default().fetch(&url).unwrap();
        assert_eq!(body, "<html/>");
    }

    #[test]
    fn not_found_carries_status() {
        let url = one_shot_server("HTTP/1.1 404 Not Found", "gone");
        let err = HttpFetcher::default().fetch(&url).unwrap_err();
        assert_eq!(err.status(), Some(404));
    }

    #[test]
    fn unreachable_host_is_transport_error() {
        let err = HttpFetcher::new(300)
            .fetch("http://127.0.0.1:1/never")
            .unwrap_err();
        assert!(matches!(err, FetchError::Transport { .. }));
    }

    #[test]
    fn bad_scheme_rejected() {
        let err = HttpFetcher::default().fetch("ftp://x").unwrap_err();
        assert!(matches!(err, FetchError::InvalidUrl { .. }));
    }

    #[test]
    fn fixture_fetcher_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let fetcher = FixtureFetcher::new(dir.path());
        let url = "http://news.example/story?id=1";
        std::fs::write(fetcher.fixture_path(url), "<p>hi</p>").unwrap();
        assert_eq!(fetcher.fetch(url).unwrap(), "<p>hi</p>");
        assert!(matches!(
            fetcher.fetch("http://other.example/"),
            Err(FetchError::MissingFixture { .. })
        ));
    }
}
