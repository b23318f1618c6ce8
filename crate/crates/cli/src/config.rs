//! Command-line and config-file parsing.
//!
//! Flags: --D, --N, --alpha, --out, --svg, --workers, --tol, --config.
//! A config file holds the same keys as flat `key = value` lines with `#`
//! comments; flags override file values. Alpha accepts `start:stop:step`
//! (inclusive of the endpoint when it lands on the grid) or a comma list.

use std::fmt;
use std::path::PathBuf;

/// Process exit codes: 2 usage, 3 I/O, 4 numerical failure.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
            CliError::Numerical(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Io(m) => write!(f, "I/O error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<dicke_berry::Error> for CliError {
    fn from(e: dicke_berry::Error) -> Self {
        match e {
            dicke_berry::Error::InvalidParameter(m) => CliError::Usage(m),
            other => CliError::Numerical(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    SweepAlpha,
    Scaling,
    Quartic,
    OracleCompare,
    Derivative,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::SweepAlpha => "sweep-alpha",
            Command::Scaling => "scaling",
            Command::Quartic => "quartic",
            Command::OracleCompare => "oracle-compare",
            Command::Derivative => "derivative",
        }
    }
}

/// Parsed options shared by all subcommands.
#[derive(Debug, Clone)]
pub struct Options {
    pub d_list: Vec<f64>,
    pub n_list: Vec<u32>,
    pub alphas: Vec<f64>,
    pub out: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    pub workers: usize,
    pub tol: f64,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            d_list: vec![10.0],
            n_list: Vec::new(),
            alphas: Vec::new(),
            out: None,
            svg: None,
            workers: default_workers(),
            tol: 1e-9,
        }
    }
}

impl Options {
    /// The single D most subcommands require.
    pub fn single_d(&self) -> Result<f64, CliError> {
        match self.d_list[..] {
            [d] => Ok(d),
            _ => Err(CliError::Usage(format!(
                "expected a single --D value, got {}",
                self.d_list.len()
            ))),
        }
    }
}

fn default_workers() -> usize {
    if let Ok(env) = std::env::var("DICKE_BERRY_WORKERS") {
        if let Ok(n) = env.trim().parse::<usize>() {
            if n >= 1 {
                return n;
            }
        }
    }
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

pub const USAGE: &str = "\
usage: dicke-berry <command> [flags]

commands:
  sweep-alpha     gamma/N and <Sx>/N over an alpha grid for each N,
                  plus the thermodynamic-limit curve (rows with N = 0)
  scaling         gamma/N vs N at fixed alpha with the finite-size
                  predictions and a log-log exponent fit
  quartic         ground-state constants of -d^2/dx^2 + x^4
  oracle-compare  Born-Oppenheimer vs exact diagonalization at small N
  derivative      sweep plus the finite-difference d(gamma/N)/d(alpha)

flags:
  --D <list>         oscillator-to-qubit frequency ratio(s), comma separated
  --N <list>         qubit counts, comma separated
  --alpha <spec>     start:stop:step range or comma list
  --out <path>       data CSV output path (timing goes to <path stem>.timing.csv)
  --svg <path>       SVG plot output path
  --workers <n>      worker threads (default: DICKE_BERRY_WORKERS or all cores)
  --tol <x>          ground-energy refinement tolerance (default 1e-9)
  --config <path>    key=value file with the flag names above as keys
";

fn parse_f64(key: &str, v: &str) -> Result<f64, CliError> {
    v.trim()
        .parse::<f64>()
        .map_err(|_| CliError::Usage(format!("invalid number for {key}: '{v}'")))
        .and_then(|x| {
            if x.is_finite() {
                Ok(x)
            } else {
                Err(CliError::Usage(format!(
                    "non-finite value for {key}: '{v}'"
                )))
            }
        })
}

fn parse_f64_list(key: &str, v: &str) -> Result<Vec<f64>, CliError> {
    v.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_f64(key, s))
        .collect()
}

fn parse_u32_list(key: &str, v: &str) -> Result<Vec<u32>, CliError> {
    v.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| CliError::Usage(format!("invalid integer for {key}: '{s}'")))
        })
        .collect()
}

/// `start:stop:step` inclusive of `stop` when it lies on the grid (to one
/// part in 1e9 of the step), or a comma list.
pub fn parse_alpha_spec(v: &str) -> Result<Vec<f64>, CliError> {
    if v.contains(':') {
        let parts: Vec<&str> = v.split(':').collect();
        if parts.len() != 3 {
            return Err(CliError::Usage(format!(
                "alpha range must be start:stop:step, got '{v}'"
            )));
        }
        let start = parse_f64("alpha", parts[0])?;
        let stop = parse_f64("alpha", parts[1])?;
        let step = parse_f64("alpha", parts[2])?;
        if step <= 0.0 || stop < start {
            return Err(CliError::Usage(format!(
                "alpha range needs stop >= start and step > 0, got '{v}'"
            )));
        }
        let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
        Ok((0..count).map(|i| start + i as f64 * step).collect())
    } else {
        parse_f64_list("alpha", v)
    }
}

fn apply_key(opts: &mut Options, key: &str, value: &str) -> Result<(), CliError> {
    match key {
        "D" => opts.d_list = parse_f64_list("D", value)?,
        "N" => opts.n_list = parse_u32_list("N", value)?,
        "alpha" => opts.alphas = parse_alpha_spec(value)?,
        "out" => opts.out = Some(PathBuf::from(value.trim())),
        "svg" => opts.svg = Some(PathBuf::from(value.trim())),
        "workers" => {
            let n = value
                .trim()
                .parse::<usize>()
                .map_err(|_| CliError::Usage(format!("invalid --workers: '{value}'")))?;
            if n == 0 {
                return Err(CliError::Usage("--workers must be >= 1".into()));
            }
            opts.workers = n;
        }
        "tol" => {
            let t = parse_f64("tol", value)?;
            if t <= 0.0 {
                return Err(CliError::Usage(format!("--tol must be positive, got {t}")));
            }
            opts.tol = t;
        }
        other => return Err(CliError::Usage(format!("unknown key '{other}'"))),
    }
    Ok(())
}

fn load_config_file(opts: &mut Options, path: &str) -> Result<(), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read config '{path}': {e}")))?;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::Usage(format!(
                "config line {} is not key=value: '{raw}'",
                lineno + 1
            )));
        };
        apply_key(opts, key.trim(), value.trim())?;
    }
    Ok(())
}

/// Parse a full argv (without the program name) into command and options.
pub fn parse_args(args: &[String]) -> Result<(Command, Options), CliError> {
    let Some(cmd_name) = args.first() else {
        return Err(CliError::Usage("missing command".into()));
    };
    let command = match cmd_name.as_str() {
        "sweep-alpha" => Command::SweepAlpha,
        "scaling" => Command::Scaling,
        "quartic" => Command::Quartic,
        "oracle-compare" => Command::OracleCompare,
        "derivative" => Command::Derivative,
        other => return Err(CliError::Usage(format!("unknown command '{other}'"))),
    };

    // Config file first, flags second so flags win.
    let mut flag_pairs = Vec::new();
    let mut config_path: Option<String> = None;
    let mut it = args[1..].iter();
    while let Some(flag) = it.next() {
        let Some(key) = flag.strip_prefix("--") else {
            return Err(CliError::Usage(format!("unexpected argument '{flag}'")));
        };
        let Some(value) = it.next() else {
            return Err(CliError::Usage(format!("flag --{key} needs a value")));
        };
        if key == "config" {
            config_path = Some(value.clone());
        } else {
            flag_pairs.push((key.to_string(), value.clone()));
        }
    }

    let mut opts = Options::default();
    if let Some(path) = &config_path {
        load_config_file(&mut opts, path)?;
    }
    for (key, value) in &flag_pairs {
        apply_key(&mut opts, key, value)?;
    }

    // Per-command requirements.
    match command {
        Command::SweepAlpha | Command::Derivative => {
            if opts.n_list.is_empty() {
                return Err(CliError::Usage("--N list must not be empty".into()));
            }
            if opts.alphas.is_empty() {
                return Err(CliError::Usage("--alpha must not be empty".into()));
            }
            opts.single_d()?;
        }
        Command::Scaling => {
            if opts.n_list.is_empty() {
                return Err(CliError::Usage("--N list must not be empty".into()));
            }
            if opts.alphas.is_empty() {
                opts.alphas = vec![1.0];
            }
            if opts.alphas.len() != 1 {
                return Err(CliError::Usage("scaling takes a single --alpha".into()));
            }
            opts.single_d()?;
        }
        Command::OracleCompare => {
            if opts.n_list.is_empty() {
                return Err(CliError::Usage("--N list must not be empty".into()));
            }
            if let Some(&n) = opts.n_list.iter().find(|&&n| n > 8) {
                return Err(CliError::Usage(format!(
                    "oracle-compare is limited to N <= 8, got {n}"
                )));
            }
            if opts.alphas.is_empty() {
                return Err(CliError::Usage("--alpha must not be empty".into()));
            }
        }
        Command::Quartic => {}
    }
    Ok((command, opts))
}
