//! `affect-mosaic`: analyze text into affect mosaics, draw mapping legends,
//! or serve the HTTP API.
//!
//! Exit codes: 0 success, 2 unreadable input or output, 3 malformed lexicon,
//! 4 cannot bind the service address, 64 invalid flags or configuration.

use std::fs;
use std::io::{self, Read, Write};
use std::net::{SocketAddr, ToSocketAddrs};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use affect_mosaic::{
    analyze, emit_json, emit_legend_svg, emit_svg, legend_slice, mosaic_for, parse_lexicon, Axis,
    DuplicatePolicy, Granularity, Lexicon, LexiconError, MappingConfig, MappingOverrides,
    MosaicOptions, Scale,
};
use affect_mosaic_service::{AppState, ServiceConfig};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "affect-mosaic", version, about = "Lexicon-based affect mosaics of text")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Score a text and write its mosaic as JSON and/or SVG.
    Analyze(AnalyzeArgs),
    /// Draw a 2D slice of the emotion-to-color mapping as SVG.
    Legend(LegendArgs),
    /// Run the HTTP API and explorer UI.
    Serve(ServeArgs),
}

#[derive(Debug, Args)]
struct LexiconArgs {
    /// Tab-separated lexicon: term, valence, arousal, dominance.
    #[arg(long, env = "MOSAIC_LEXICON", value_name = "PATH")]
    lexicon: Option<PathBuf>,
    /// Rating scale of the lexicon file, e.g. 0-1 or 1-9.
    #[arg(long, default_value = "0-1", value_parser = parse_scale)]
    scale: Scale,
}

#[derive(Debug, Args)]
struct MappingArgs {
    /// Mapping config file (flat TOML keys named after the mapping fields).
    #[arg(long, value_name = "PATH")]
    mapping: Option<PathBuf>,
    /// Override one mapping field, e.g. --set hue_positive=240. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

#[derive(Debug, Args)]
struct TileArgs {
    /// Tile edge length in px.
    #[arg(long = "tile", default_value_t = 16, value_parser = clap::value_parser!(u32).range(1..))]
    tile: u32,
    /// Gap between tiles in px.
    #[arg(long, default_value_t = 2)]
    gap: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Svg,
    Json,
    Both,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    lexicon: LexiconArgs,
    #[command(flatten)]
    mapping: MappingArgs,
    /// word, window:<n>, sentence, paragraph or document.
    #[arg(long, default_value = "sentence")]
    granularity: Granularity,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output file; with --format both, the base path for <base>.json and <base>.svg.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Mosaic columns [default: ceil(sqrt(segments))].
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    columns: Option<u64>,
    #[command(flatten)]
    tiles: TileArgs,
    /// Text file to analyze; standard input when omitted.
    input: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy)]
struct Fix {
    axis: Axis,
    value: f64,
}

#[derive(Debug, Clone, Copy)]
struct Grid {
    nx: usize,
    ny: usize,
}

#[derive(Debug, Args)]
struct LegendArgs {
    #[command(flatten)]
    mapping: MappingArgs,
    /// Axis held constant and its value, e.g. dominance=0.5.
    #[arg(long, default_value = "dominance=0.5", value_parser = parse_fix)]
    fix: Fix,
    /// Cells along x and y, e.g. 32x32.
    #[arg(long, default_value = "32x32", value_parser = parse_grid)]
    grid: Grid,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(flatten)]
    tiles: TileArgs,
}

#[derive(Debug, Args)]
struct ServeArgs {
    #[command(flatten)]
    lexicon: LexiconArgs,
    #[command(flatten)]
    mapping: MappingArgs,
    /// Listen address.
    #[arg(long, default_value = "127.0.0.1:8080", value_parser = parse_addr)]
    addr: SocketAddr,
}

fn parse_scale(s: &str) -> Result<Scale, String> {
    Scale::from_str(s).map_err(|e| e.to_string())
}

fn parse_fix(s: &str) -> Result<Fix, String> {
    let (axis, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected <axis>=<value>, got {s:?}"))?;
    let axis: Axis = axis.parse()?;
    let value: f64 = value
        .parse()
        .map_err(|_| format!("invalid value {value:?}"))?;
    if !(0.0..=1.0).contains(&value) {
        return Err(format!("{axis} value {value} outside [0, 1]"));
    }
    Ok(Fix { axis, value })
}

fn parse_grid(s: &str) -> Result<Grid, String> {
    let err = || format!("expected <nx>x<ny> with both at least 2, got {s:?}");
    let (nx, ny) = s.split_once('x').ok_or_else(err)?;
    let nx: usize = nx.parse().map_err(|_| err())?;
    let ny: usize = ny.parse().map_err(|_| err())?;
    if nx < 2 || ny < 2 {
        return Err(err());
    }
    Ok(Grid { nx, ny })
}

fn parse_addr(s: &str) -> Result<SocketAddr, String> {
    if let Ok(addr) = s.parse() {
        return Ok(addr);
    }
    s.to_socket_addrs()
        .ok()
        .and_then(|mut it| it.next())
        .ok_or_else(|| format!("invalid address {s:?}: expected <host>:<port>"))
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(String),
    Lexicon(String),
    Bind(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 64,
            CliError::Io(_) => 2,
            CliError::Lexicon(_) => 3,
            CliError::Bind(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Io(m) | CliError::Lexicon(m) | CliError::Bind(m) => m,
        }
    }
}

fn io_error(path: &Path, e: io::Error) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

fn load_mapping(args: &MappingArgs) -> Result<MappingConfig, CliError> {
    let mut overrides = MappingOverrides::default();
    if let Some(path) = &args.mapping {
        let src = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
        overrides = MappingOverrides::from_toml(&src)
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    }
    for pair in &args.set {
        let (key, value) = pair
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("--set expects KEY=VALUE, got {pair:?}")))?;
        // reuse the config-file parser: bare words become strings, everything else is TOML
        let literal = if value.parse::<f64>().is_ok() || value.starts_with('[') {
            value.to_string()
        } else {
            format!("{value:?}")
        };
        let single = MappingOverrides::from_toml(&format!("{key} = {literal}"))
            .map_err(|e| CliError::Usage(format!("--set {pair}: {e}")))?;
        overrides = overrides.merge(&single);
    }
    MappingConfig::default()
        .with_overrides(&overrides)
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn load_lexicon(args: &LexiconArgs) -> Result<Lexicon, CliError> {
    let path = args.lexicon.as_ref().ok_or_else(|| {
        CliError::Usage("no lexicon given: pass --lexicon or set MOSAIC_LEXICON".into())
    })?;
    let file = fs::File::open(path).map_err(|e| io_error(path, e))?;
    parse_lexicon(io::BufReader::new(file), args.scale, DuplicatePolicy::Reject).map_err(|e| match e {
        LexiconError::Io(e) => io_error(path, e),
        other => CliError::Lexicon(format!("{}: {other}", path.display())),
    })
}

fn write_output(out: Option<&Path>, contents: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, contents).map_err(|e| io_error(path, e)),
        None => io::stdout()
            .lock()
            .write_all(contents.as_bytes())
            .map_err(|e| CliError::Io(format!("stdout: {e}"))),
    }
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<(), CliError> {
    if args.format == Format::Both && args.out.is_none() {
        return Err(CliError::Usage("--format both requires --out".into()));
    }
    let mapping = load_mapping(&args.mapping)?;
    let lexicon = load_lexicon(&args.lexicon)?;
    let text = match &args.input {
        Some(path) => fs::read_to_string(path).map_err(|e| io_error(path, e))?,
        None => {
            let mut buf = String::new();
            io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::Io(format!("stdin: {e}")))?;
            buf
        }
    };

    let result = analyze(&text, args.granularity, &lexicon, &mapping);
    let json = || format!("{}\n", emit_json(&result));
    let svg = || {
        let options = MosaicOptions {
            columns: args.columns.map(|c| c as usize),
            tile_size: args.tiles.tile,
            gap: args.tiles.gap,
        };
        emit_svg(&mosaic_for(&result, &options), &result).expect("fresh mosaic matches its result")
    };
    match args.format {
        Format::Json => write_output(args.out.as_deref(), &json()),
        Format::Svg => write_output(args.out.as_deref(), &svg()),
        Format::Both => {
            let base = args.out.as_deref().unwrap();
            write_output(Some(&base.with_extension("json")), &json())?;
            write_output(Some(&base.with_extension("svg")), &svg())
        }
    }
}

fn cmd_legend(args: LegendArgs) -> Result<(), CliError> {
    let mapping = load_mapping(&args.mapping)?;
    let legend = legend_slice(args.fix.axis, args.fix.value, args.grid.nx, args.grid.ny, &mapping)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    write_output(
        args.out.as_deref(),
        &emit_legend_svg(&legend, args.tiles.tile, args.tiles.gap),
    )
}

fn cmd_serve(args: ServeArgs) -> Result<(), CliError> {
    let mapping = load_mapping(&args.mapping)?;
    let lexicon = load_lexicon(&args.lexicon)?;
    tracing_subscriber::fmt()
        .with_writer(io::stderr)
        .with_target(false)
        .init();
    let config = ServiceConfig {
        static_dir: std::env::var_os("MOSAIC_UI_DIR").map(PathBuf::from),
        ..ServiceConfig::default()
    };
    let state = AppState::new(lexicon, mapping, config);

    let runtime = tokio::runtime::Runtime::new()
        .map_err(|e| CliError::Io(format!("starting runtime: {e}")))?;
    runtime.block_on(async {
        let listener = tokio::net::TcpListener::bind(args.addr)
            .await
            .map_err(|e| CliError::Bind(format!("cannot listen on {}: {e}", args.addr)))?;
        let local = listener.local_addr().unwrap_or(args.addr);
        eprintln!("listening on http://{local}");
        affect_mosaic_service::serve(listener, state)
            .await
            .map_err(|e| CliError::Io(format!("server error: {e}")))
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Legend(args) => cmd_legend(args),
        Command::Serve(args) => cmd_serve(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("affect-mosaic: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
