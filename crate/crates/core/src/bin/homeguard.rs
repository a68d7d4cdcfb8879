use std::net::SocketAddr;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use homeguard::dispatch::{assemble_report, http, GeoPoint, IncidentStore, ServiceDirectory, DEFAULT_K};
use homeguard::eval::{evaluate_rows, render_matrix, table1};
use homeguard::rdf;
use homeguard::text::RawMessage;
use homeguard::triage::{CrimeTaxonomy, EmergencyFilterConfig, TriageEngine};

#[derive(Parser)]
#[command(name = "homeguard", version, about = "Triage domestic-violence messages into crime levels and support services")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Assets {
    /// Ontology in Turtle; defaults to the shipped one.
    #[arg(long)]
    ontology: Option<PathBuf>,
    /// Prefilter settings file (threshold, keywords).
    #[arg(long)]
    config: Option<PathBuf>,
}

impl Assets {
    fn taxonomy(&self) -> Result<CrimeTaxonomy, String> {
        match &self.ontology {
            Some(p) => CrimeTaxonomy::load(p),
            None => CrimeTaxonomy::shipped(),
        }
        .map_err(|e| e.to_string())
    }

    fn engine(&self) -> Result<(TriageEngine, ServiceDirectory), String> {
        let taxonomy = self.taxonomy()?;
        let directory = ServiceDirectory::from_graph(taxonomy.graph()).map_err(|e| e.to_string())?;
        let config = match &self.config {
            Some(p) => EmergencyFilterConfig::load(p, &taxonomy),
            None => EmergencyFilterConfig::shipped(&taxonomy),
        }
        .map_err(|e| e.to_string())?;
        let engine = TriageEngine::with_taxonomy_and_config(taxonomy, config).map_err(|e| e.to_string())?;
        Ok((engine, directory))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Triage one message and print the incident report as JSON.
    Triage {
        #[arg(long)]
        message: String,
        #[arg(long, requires = "lon", allow_hyphen_values = true)]
        lat: Option<f64>,
        #[arg(long, requires = "lat", allow_hyphen_values = true)]
        lon: Option<f64>,
        /// Services listed per type when a location is given.
        #[arg(long, default_value_t = DEFAULT_K)]
        k: usize,
        #[command(flatten)]
        assets: Assets,
    },
    /// Run the HTTP service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        /// JSON-lines report log; in memory when omitted.
        #[arg(long)]
        store: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_K)]
        k: usize,
        #[command(flatten)]
        assets: Assets,
    },
    /// Run a SELECT query against the ontology and print tab-separated rows.
    Query {
        #[arg(long)]
        sparql: String,
        #[arg(long)]
        ontology: Option<PathBuf>,
    },
    /// Run the golden corpus and print a pass/fail matrix.
    Eval {
        #[arg(long, required = true)]
        table1: bool,
    },
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Triage { message, lat, lon, k, assets } => {
            let (engine, directory) = assets.engine()?;
            let location = match (lat, lon) {
                (Some(lat), Some(lon)) => Some(GeoPoint::new(lat, lon).map_err(|e| e.to_string())?),
                _ => None,
            };
            let message = RawMessage::new(message);
            let result = engine.triage(&message).map_err(|e| e.to_string())?;
            let report = assemble_report(message, result, location, k, &directory).map_err(|e| e.to_string())?;
            println!("{}", serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Serve { port, host, store, k, assets } => {
            let (engine, directory) = assets.engine()?;
            let store = match store {
                Some(p) => IncidentStore::open(p).map_err(|e| e.to_string())?,
                None => IncidentStore::in_memory(),
            };
            let addr: SocketAddr = format!("{host}:{port}").parse().map_err(|e| format!("bad address: {e}"))?;
            let mut state = http::AppState::new(engine, directory, store);
            state.k = k;
            let rt = tokio::runtime::Runtime::new().map_err(|e| e.to_string())?;
            rt.block_on(http::serve(addr, state)).map_err(|e| e.to_string())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Query { sparql, ontology } => {
            let taxonomy = Assets { ontology, config: None }.taxonomy()?;
            let rows = rdf::query(taxonomy.graph(), &sparql).map_err(|e| e.to_string())?;
            println!("{}", rows.variables().iter().map(|v| format!("?{v}")).collect::<Vec<_>>().join("\t"));
            for row in rows.rows() {
                println!("{}", row.iter().map(ToString::to_string).collect::<Vec<_>>().join("\t"));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Eval { .. } => {
            let engine = TriageEngine::shipped().map_err(|e| e.to_string())?;
            let outcomes = evaluate_rows(&engine, &table1());
            print!("{}", render_matrix(&outcomes));
            Ok(if outcomes.iter().all(|o| o.passed()) { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}

fn main() -> ExitCode {
    tracing_subscriber::fmt().with_writer(std::io::stderr).init();
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
