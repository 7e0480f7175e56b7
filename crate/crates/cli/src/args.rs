use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "umbral", version, about = "Binomial-type sequences of aD - bD^(p+1), Fuss-Catalan series, Bessel polynomials and inverse-Gaussian moment checks")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Explicit sum for aD - bD^(p+1).
    Closed,
    /// Triangular solve of Q w_n = n w_(n-1).
    Generic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DistKind {
    /// Inverse Gaussian mu_t.
    Ig,
    /// Gamma with shape 1/2 and scale 2t.
    Gamma,
    /// Bessel measure nu_t.
    Bessel,
}

#[derive(Debug, Args)]
pub struct Triple {
    /// Coefficient a (rational "p/q", nonzero).
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    /// Coefficient b (rational "p/q").
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
    /// Exponent p >= 1 of D^(p+1).
    #[arg(long)]
    pub p: u32,
}

#[derive(Debug, Args)]
pub struct Tolerance {
    /// Quadrature relative tolerance.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Basic polynomials w_0..w_n of aD - bD^(p+1).
    BasicPoly {
        #[command(flatten)]
        triple: Triple,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::Closed)]
        method: Method,
    },
    /// Compositional inverse f of ax - bx^(p+1).
    FSeries {
        #[command(flatten)]
        triple: Triple,
        #[arg(long, default_value_t = 32)]
        order: usize,
    },
    /// Fuss numbers of order p and the residual of B_p = 1 + x B_p^p.
    Fuss {
        #[arg(long)]
        p: i64,
        #[arg(long, default_value_t = 32)]
        order: i64,
    },
    /// Bessel polynomials y_0..y_n.
    BesselPoly {
        #[arg(long)]
        n: usize,
    },
    /// Exact check of the exponential generating function of y_n(t).
    EgfCheck {
        /// Nonzero rational t.
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long, default_value_t = 12)]
        order: usize,
    },
    /// Quadrature moments 0..=n compared with the exact polynomial values.
    Moments {
        #[arg(long, value_enum)]
        dist: DistKind,
        /// Positive t, rational "p/q" or decimal.
        #[arg(long)]
        t: String,
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        tol: Tolerance,
    },
    /// rho_s * rho_t against rho_(s+t) by numerical convolution.
    SemigroupCheck {
        #[arg(long)]
        s: String,
        #[arg(long)]
        t: String,
        /// Evaluation points.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0.5,1,2,4")]
        points: Vec<f64>,
        #[command(flatten)]
        tol: Tolerance,
    },
    /// Kolmogorov representation of 1 - sqrt(1 - 2ix).
    KolmogorovCheck {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0.1,0.3,0.7")]
        x: Vec<f64>,
        #[command(flatten)]
        tol: Tolerance,
    },
    /// nu_t = gamma_t * D_t mu_(1/t) via characteristic functions and densities.
    FactorizationCheck {
        #[arg(long)]
        t: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "-1,-0.4,0.3,0.7,1")]
        x: Vec<f64>,
        #[command(flatten)]
        tol: Tolerance,
    },
    /// One of the eight moment sequences, optionally cross-checked by quadrature.
    Oeis {
        #[arg(long)]
        id: String,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long)]
        crosscheck: bool,
        #[command(flatten)]
        tol: Tolerance,
    },
    /// Run every acceptance check and print a pass/fail table on stderr.
    VerifyAll {
        #[arg(long, default_value_t = umbral_core::verify::DEFAULT_SEED)]
        seed: u64,
    },
}
