use std::net::SocketAddr;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Duration;

use clap::Parser;
use msa_advisor_core::kb::{builtin_kb, load_kb};
use msa_advisor_service::{router, router_with_static, AppState};

#[derive(Parser)]
#[command(name = "msa-advisor-service", version, about = "Serve the pattern advisor over HTTP")]
struct Args {
    /// Knowledge-base JSON file; the built-in one is used when absent.
    #[arg(long, env = "ADVISOR_KB")]
    kb: Option<PathBuf>,
    #[arg(long, env = "ADVISOR_PORT", default_value_t = 8080)]
    port: u16,
    #[arg(long, default_value = "127.0.0.1")]
    host: String,
    /// Directory holding the built web UI, served under `/`.
    #[arg(long, env = "ADVISOR_WEB_DIR")]
    web_dir: Option<PathBuf>,
    /// Idle seconds before a walkthrough session is dropped.
    #[arg(long, default_value_t = 3600)]
    session_expiry: u64,
}

#[tokio::main]
async fn main() -> ExitCode {
    tracing_subscriber::fmt().with_writer(std::io::stderr).init();
    let args = Args::parse();

    let kb = match &args.kb {
        None => builtin_kb(),
        Some(path) => match std::fs::read_to_string(path)
            .map_err(|e| e.to_string())
            .and_then(|doc| load_kb(&doc).map_err(|e| format!("{}: {e}", e.code())))
        {
            Ok(kb) => kb,
            Err(e) => {
                eprintln!("error: cannot load {}: {e}", path.display());
                return ExitCode::from(1);
            }
        },
    };

    let state = Arc::new(AppState::with_expiry(kb, Duration::from_secs(args.session_expiry)));
    let app = match args.web_dir {
        Some(dir) => router_with_static(state, dir),
        None => router(state),
    };

    let addr: SocketAddr = match format!("{}:{}", args.host, args.port).parse() {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: bad listen address: {e}");
            return ExitCode::from(2);
        }
    };
    let listener = match tokio::net::TcpListener::bind(addr).await {
        Ok(l) => l,
        Err(e) => {
            eprintln!("error: cannot bind {addr}: {e}");
            return ExitCode::from(1);
        }
    };
    tracing::info!(%addr, "listening");
    let shutdown = async {
        let _ = tokio::signal::ctrl_c().await;
    };
    if let Err(e) = axum::serve(listener, app).with_graceful_shutdown(shutdown).await {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
