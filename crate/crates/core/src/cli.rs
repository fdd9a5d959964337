//! Batch front end: one subcommand per computed object, CSV or flat JSON
//! output, exit code 0 on success, 2 on invalid input, 3 on numerical
//! failure.
//!
//! CSV files carry `# name,value` comment lines for scalar results, then a
//! header row and the table. Floats are written with 17 significant digits.
//! JSON output is a single object with a `status` field; non-finite values
//! become `null`.

use std::f64::consts::FRAC_PI_4;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{Map, Value};

use crate::equilibrium::{
    el_residuals, external_field, external_field_numeric, nu1_cdf, nu1_table, sigma_density, sigma_density_numeric, solve,
};
use crate::mmp::{
    all_pair_zeros, diagonal_zeros, eval_with_derivative, first_moment, interlacing_from_zeros, moment_by_quadrature,
    recurrence_coeffs, rodrigues_check, scaled_coeffs, zeros, IndexPair,
};
use crate::quadrature::ErrorSlot;
use crate::sixvertex::{partition_function, transfer_matrix_partition, VertexModelParams};
use crate::specfun::{mp_weight, ModelParams, Weight};
use crate::toeplitz::{
    gamma1_endpoint_by_bisection, gamma2_endpoint_by_bisection, mu_density, mu_mass, roots_z, supports, toeplitz_spectrum,
};
use crate::measure::EmpiricalMeasure;
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Largest diagonal degree for which the sixvertex command also sums
/// configurations directly.
const CONFIGURATION_SUM_MAX: usize = 10;

#[derive(Debug, Clone, Parser)]
#[command(name = "meixner", version, about = "Multiple Meixner-Pollaczek polynomials, their zero asymptotics and six-vertex determinants")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Both weights on a grid
    Weights,
    /// Recurrence coefficients on a rectangle of index pairs, or the
    /// scaled diagonal ones when --n is given
    Coeffs,
    /// P_{k1,k2} and its derivative on a grid
    PolyEval,
    /// Zeros of Q_{n,n}(n x) with --n, else of P_{k1,k2}
    Zeros,
    /// Interlacing of neighbouring zero sets for all pairs of degree <= n
    Interlace,
    /// Closed-form first non-vanishing moments against quadrature
    Moments,
    /// Both sides of the Rodrigues formula at sample points
    Rodrigues,
    /// Roots z1, z2, z3 of the symbol equation along a line
    SymbolRoots,
    /// Support constants c1, c2 and their bisection checks
    Supports,
    /// Density of mu_1^s (--weight 1) or mu_2^s (--weight 2)
    MuDensity,
    /// Real eigenvalues of the block Toeplitz truncation
    ToeplitzEig,
    /// Density of nu_1
    DensityNu1,
    /// External field, closed form against the s-integral
    ExternalField,
    /// Constraint density inside the saturated region
    Sigma,
    /// Euler-Lagrange residuals at sample points
    ElResiduals,
    /// Partition function by determinant, product and configuration sum
    Sixvertex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    #[arg(long, global = true, default_value_t = 0.5)]
    pub lambda: f64,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub t1: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub t2: Option<f64>,
    /// tan t of the symmetric system t1 = -t2 = t
    #[arg(long, global = true)]
    pub b: Option<f64>,
    #[arg(long, global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true)]
    pub k1: Option<usize>,
    #[arg(long, global = true)]
    pub k2: Option<usize>,
    #[arg(long, global = true, default_value_t = 201)]
    pub grid: usize,
    #[arg(long, global = true, default_value_t = 1e-12)]
    pub tol: f64,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Draws the rodrigues sample points at random
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Lattice size of the six-vertex model
    #[arg(long = "N", global = true)]
    pub lattice: Option<usize>,
    #[arg(long, global = true)]
    pub n1: Option<usize>,
    #[arg(long, global = true)]
    pub gamma: Option<f64>,
    /// Scale parameter of the symbol
    #[arg(long, global = true, default_value_t = 1.0)]
    pub s: f64,
    /// Half-width of real grids
    #[arg(long, global = true, default_value_t = 6.0)]
    pub xmax: f64,
    #[arg(long, global = true, default_value_t = 1)]
    pub weight: usize,
    /// Put symbol-roots on the imaginary axis
    #[arg(long, global = true)]
    pub imaginary: bool,
    /// Add the Kolmogorov distance to nu_1 (zeros with --n)
    #[arg(long = "compare-nu1", global = true)]
    pub compare_nu1: bool,
}

/// A table column.
#[derive(Debug, Clone, PartialEq)]
pub enum Column {
    Float(Vec<f64>),
    Int(Vec<i64>),
}

impl Column {
    fn len(&self) -> usize {
        match self {
            Column::Float(v) => v.len(),
            Column::Int(v) => v.len(),
        }
    }

    fn csv_cell(&self, i: usize) -> String {
        match self {
            Column::Float(v) => format_float(v[i]),
            Column::Int(v) => v[i].to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Column::Float(v) => Value::Array(v.iter().map(|&x| json_float(x)).collect()),
            Column::Int(v) => Value::Array(v.iter().map(|&x| Value::from(x)).collect()),
        }
    }
}

/// Result of one command: named scalars and a table of equal-length columns.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub scalars: Vec<(String, Value)>,
    pub columns: Vec<(String, Column)>,
}

impl Report {
    fn scalar(&mut self, name: &str, v: impl Into<Value>) -> &mut Self {
        self.scalars.push((name.into(), v.into()));
        self
    }

    fn float(&mut self, name: &str, v: f64) -> &mut Self {
        self.scalars.push((name.into(), json_float(v)));
        self
    }

    fn column(&mut self, name: &str, v: Vec<f64>) -> &mut Self {
        self.columns.push((name.into(), Column::Float(v)));
        self
    }

    fn int_column(&mut self, name: &str, v: Vec<i64>) -> &mut Self {
        self.columns.push((name.into(), Column::Int(v)));
        self
    }

    pub fn get_scalar(&self, name: &str) -> Option<&Value> {
        self.scalars.iter().find(|(k, _)| k == name).map(|(_, v)| v)
    }

    pub fn get_column(&self, name: &str) -> Option<&Column> {
        self.columns.iter().find(|(k, _)| k == name).map(|(_, v)| v)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        if self.columns.is_empty() {
            let names: Vec<_> = self.scalars.iter().map(|(k, _)| k.as_str()).collect();
            out.push_str(&names.join(","));
            out.push('\n');
            let values: Vec<_> = self.scalars.iter().map(|(_, v)| csv_value(v)).collect();
            out.push_str(&values.join(","));
            out.push('\n');
            return out;
        }
        for (k, v) in &self.scalars {
            out.push_str(&format!("# {k},{}\n", csv_value(v)));
        }
        let names: Vec<_> = self.columns.iter().map(|(k, _)| k.as_str()).collect();
        out.push_str(&names.join(","));
        out.push('\n');
        let rows = self.columns.first().map_or(0, |(_, c)| c.len());
        for i in 0..rows {
            let cells: Vec<_> = self.columns.iter().map(|(_, c)| c.csv_cell(i)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self, command: &str) -> String {
        let mut map = Map::new();
        map.insert("command".into(), command.into());
        map.insert("status".into(), "ok".into());
        for (k, v) in &self.scalars {
            map.insert(k.clone(), v.clone());
        }
        for (k, c) in &self.columns {
            map.insert(k.clone(), c.json());
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(map)).expect("values are plain JSON");
        s.push('\n');
        s
    }
}

/// 17 significant digits, scientific notation.
pub fn format_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else if v.is_nan() {
        "nan".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

fn json_float(v: f64) -> Value {
    serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)
}

fn csv_value(v: &Value) -> String {
    match v {
        Value::Number(n) => match n.as_f64() {
            Some(f) if n.is_f64() => format_float(f),
            _ => n.to_string(),
        },
        Value::Null => "nan".into(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn command_name(c: Command) -> String {
    // Subcommand names are the kebab-case variant names.
    let debug = format!("{c:?}");
    let mut out = String::new();
    for (i, ch) in debug.chars().enumerate() {
        if ch.is_uppercase() && i > 0 {
            out.push('-');
        }
        out.push(ch.to_ascii_lowercase());
    }
    out
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParams(msg.into())
}

impl Options {
    fn model_params(&self) -> Result<ModelParams> {
        match (self.b, self.t1, self.t2) {
            (Some(b), None, None) => ModelParams::from_b(self.lambda, b),
            (Some(_), _, _) => Err(invalid("--b implies t1 = -t2 = atan b; do not combine it with --t1/--t2")),
            (None, Some(t1), Some(t2)) => ModelParams::new(self.lambda, t1, t2),
            _ => Err(invalid("give either --b or both --t1 and --t2")),
        }
    }

    /// `b` of a symmetric system, from `--b` or from `--t1 = −--t2`.
    fn symmetric_b(&self) -> Result<f64> {
        let p = self.model_params()?;
        if !p.symmetric {
            return Err(invalid("this command needs a symmetric system t1 = -t2 > 0"));
        }
        Ok(p.b())
    }

    fn index(&self) -> IndexPair {
        IndexPair::new(self.k1.unwrap_or(2), self.k2.unwrap_or(2))
    }

    fn check(&self) -> Result<()> {
        if self.grid < 2 {
            return Err(invalid(format!("--grid must be at least 2, got {}", self.grid)));
        }
        if !(self.tol > 0.0) {
            return Err(invalid(format!("--tol must be positive, got {}", self.tol)));
        }
        if !(self.xmax > 0.0 && self.xmax.is_finite()) {
            return Err(invalid(format!("--xmax must be positive, got {}", self.xmax)));
        }
        if !(self.s > 0.0 && self.s <= 1.0) {
            return Err(invalid(format!("--s must lie in (0, 1], got {}", self.s)));
        }
        Ok(())
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

/// Runs the command and returns its report without writing anything.
pub fn execute(config: &RunConfig) -> Result<Report> {
    let o = &config.options;
    o.check()?;
    let mut r = Report::default();
    match config.command {
        Command::Weights => {
            let p = o.model_params()?;
            let xs = linspace(-o.xmax, o.xmax, o.grid);
            let w1 = xs.iter().map(|&x| mp_weight(x, &p, Weight::First)).collect();
            let w2 = xs.iter().map(|&x| mp_weight(x, &p, Weight::Second)).collect();
            r.column("x", xs).column("w1", w1).column("w2", w2);
        }
        Command::Coeffs => {
            let p = o.model_params()?;
            if let Some(n) = o.n {
                let rows: Vec<_> = (0..n).map(|k| scaled_coeffs(k, n, &p)).collect();
                r.int_column("k", (0..n as i64).collect())
                    .column("a", rows.iter().map(|c| c.a).collect())
                    .column("b", rows.iter().map(|c| c.b).collect())
                    .column("c", rows.iter().map(|c| c.c).collect());
            } else {
                let (mut k1s, mut k2s, mut dirs, mut a, mut b, mut c) = (vec![], vec![], vec![], vec![], vec![], vec![]);
                for k1 in 0..=o.k1.unwrap_or(3) {
                    for k2 in 0..=o.k2.unwrap_or(3) {
                        for d in [Weight::First, Weight::Second] {
                            let rc = recurrence_coeffs(IndexPair::new(k1, k2), &p, d);
                            k1s.push(k1 as i64);
                            k2s.push(k2 as i64);
                            dirs.push(d.index() as i64);
                            a.push(rc.a);
                            b.push(rc.b);
                            c.push(rc.c);
                        }
                    }
                }
                r.int_column("k1", k1s).int_column("k2", k2s).int_column("direction", dirs);
                r.column("a", a).column("b", b).column("c", c);
            }
        }
        Command::PolyEval => {
            let p = o.model_params()?;
            let idx = o.index();
            let xs = linspace(-o.xmax, o.xmax, o.grid);
            let vals: Vec<_> = xs.iter().map(|&x| eval_with_derivative(idx, &p, x)).collect();
            r.scalar("k1", idx.k1).scalar("k2", idx.k2);
            r.column("x", xs).column("p", vals.iter().map(|v| v.0).collect()).column("dp", vals.iter().map(|v| v.1).collect());
        }
        Command::Zeros => {
            let p = o.model_params()?;
            if let Some(n) = o.n {
                if n == 0 {
                    return Err(invalid("--n must be positive"));
                }
                let z = diagonal_zeros(n, n, &p)?;
                r.scalar("n", n);
                if o.compare_nu1 {
                    let b = o.symmetric_b()?;
                    let err = ErrorSlot::default();
                    let d = EmpiricalMeasure::new(z.clone()).kolmogorov_distance(|x| err.value(nu1_cdf(x, b)));
                    let d = err.finish(Ok(d))?;
                    r.float("kolmogorov_nu1", d);
                }
                r.float("max_abs_zero", z.iter().fold(0.0, |m: f64, x| m.max(x.abs())));
                r.column("zero", z);
            } else {
                let idx = o.index();
                r.scalar("k1", idx.k1).scalar("k2", idx.k2);
                r.column("zero", zeros(idx, &p)?);
            }
        }
        Command::Interlace => {
            let p = o.model_params()?;
            let max_degree = o.n.unwrap_or(20);
            let all = all_pair_zeros(max_degree, &p)?;
            let (mut k1s, mut k2s, mut ok, mut margin) = (vec![], vec![], vec![], vec![]);
            for &idx in all.zeros.keys() {
                let rep = interlacing_from_zeros(idx, |q| all.zeros.get(&q).cloned().unwrap_or_default());
                k1s.push(idx.k1 as i64);
                k2s.push(idx.k2 as i64);
                ok.push(rep.interlaces as i64);
                margin.push(rep.margin);
            }
            r.scalar("violations", ok.iter().filter(|&&v| v == 0).count());
            r.int_column("k1", k1s).int_column("k2", k2s).int_column("interlaces", ok).column("margin", margin);
        }
        Command::Moments => {
            let p = o.model_params()?;
            let (mut k1s, mut k2s, mut ws, mut hc, mut hq, mut rel) = (vec![], vec![], vec![], vec![], vec![], vec![]);
            for k1 in 0..=o.k1.unwrap_or(3) {
                for k2 in 0..=o.k2.unwrap_or(3) {
                    let idx = IndexPair::new(k1, k2);
                    for w in [Weight::First, Weight::Second] {
                        let closed = first_moment(idx, &p, w).value();
                        let (quad, _) = moment_by_quadrature(idx, &p, w, idx.get(w), o.tol)?;
                        k1s.push(k1 as i64);
                        k2s.push(k2 as i64);
                        ws.push(w.index() as i64);
                        hc.push(closed);
                        hq.push(quad);
                        rel.push((closed - quad).abs() / closed.abs());
                    }
                }
            }
            r.int_column("k1", k1s).int_column("k2", k2s).int_column("weight", ws);
            r.column("h_closed", hc).column("h_quadrature", hq).column("rel_error", rel);
        }
        Command::Rodrigues => {
            let p = o.model_params()?;
            let idx = o.index();
            let xs: Vec<f64> = match o.seed {
                Some(seed) => {
                    let mut rng = StdRng::seed_from_u64(seed);
                    (0..5).map(|_| rng.gen_range(-2.0..2.0)).collect()
                }
                None => vec![-1.3, -0.4, 0.2, 0.9, 1.7],
            };
            let reps = xs.iter().map(|&x| rodrigues_check(idx, &p, x)).collect::<Result<Vec<_>>>()?;
            r.scalar("k1", idx.k1).scalar("k2", idx.k2);
            r.column("x", xs)
                .column("discrepancy", reps.iter().map(|q| q.discrepancy).collect())
                .column("swapped_discrepancy", reps.iter().map(|q| q.swapped_discrepancy).collect())
                .column("order_difference", reps.iter().map(|q| q.order_difference).collect());
        }
        Command::SymbolRoots => {
            let b = o.symmetric_b()?;
            let line = linspace(-o.xmax, o.xmax, o.grid);
            let mut cols = vec![Vec::with_capacity(o.grid); 6];
            for &v in &line {
                let x = if o.imaginary { Complex64::new(0.0, v) } else { Complex64::new(v, 0.0) };
                let t = roots_z(x, o.s, b)?;
                for (k, z) in t.z.iter().enumerate() {
                    cols[2 * k].push(z.re);
                    cols[2 * k + 1].push(z.im);
                }
            }
            r.float("b", b).float("s", o.s).scalar("axis", if o.imaginary { "imaginary" } else { "real" });
            r.column("x", line);
            let names = ["z1_re", "z1_im", "z2_re", "z2_im", "z3_re", "z3_im"];
            for (name, c) in names.iter().zip(cols) {
                r.column(name, c);
            }
        }
        Command::Supports => {
            let b = o.symmetric_b()?;
            let d = supports(o.s, b)?;
            r.float("b", b).float("s", o.s).float("c1", d.c1).float("c2", d.c2).float("y1", d.y1).float("y2", d.y2);
            r.float("c1_bisection", gamma1_endpoint_by_bisection(o.s, b)? / o.s);
            r.float("c2_bisection", gamma2_endpoint_by_bisection(o.s, b)? / o.s);
        }
        Command::MuDensity => {
            let b = o.symmetric_b()?;
            let which = Weight::from_index(o.weight)?;
            let d = supports(o.s, b)?;
            let (mut at, mut dens) = (vec![], vec![]);
            match which {
                Weight::First => {
                    let edge = d.c1 * o.s;
                    for x in linspace(-edge, edge, o.grid + 2).into_iter().skip(1).take(o.grid) {
                        at.push(x);
                        dens.push(mu_density(Complex64::new(x, 0.0), o.s, b, which)?);
                    }
                }
                Weight::Second => {
                    let edge = d.c2 * o.s;
                    for y in linspace(edge, edge + o.xmax, o.grid + 1).into_iter().skip(1) {
                        at.push(y);
                        dens.push(mu_density(Complex64::new(0.0, y), o.s, b, which)?);
                    }
                }
            }
            r.float("b", b).float("s", o.s).scalar("weight", which.index());
            r.float("mass", mu_mass(o.s, b, which, 1e-10)?);
            r.column(if which == Weight::First { "x" } else { "y" }, at);
            r.column(if which == Weight::First { "mu1_density" } else { "mu2_density" }, dens);
        }
        Command::ToeplitzEig => {
            let b = o.symmetric_b()?;
            let n = o.n.unwrap_or(50);
            let spec = toeplitz_spectrum(o.s, b, n)?;
            r.float("b", b).float("s", o.s).scalar("n_blocks", n).float("kolmogorov_mu1", spec.kolmogorov);
            r.column("eigenvalue", spec.eigenvalues);
        }
        Command::DensityNu1 => {
            let b = o.symmetric_b()?;
            let table = nu1_table(b, o.grid)?;
            r.float("b", b).float("c1", table.endpoints.1).float("nu1_mass", table.mass).float("trapezoid_mass", table.trapezoid_mass());
            r.column("x", table.grid).column("nu1_density", table.density);
        }
        Command::ExternalField => {
            let t = o.symmetric_b()?.atan();
            let xs = linspace(-o.xmax, o.xmax, o.grid);
            let mut closed = Vec::with_capacity(xs.len());
            let mut numeric = Vec::with_capacity(xs.len());
            for &x in &xs {
                closed.push(external_field(x, t)?);
                numeric.push(external_field_numeric(x, t)?);
            }
            r.float("t", t).float("V_slope", std::f64::consts::PI - 2.0 * t);
            r.column("x", xs).column("V", closed).column("V_numeric", numeric);
        }
        Command::Sigma => {
            let b = o.symmetric_b()?;
            let t = b.atan();
            let c2 = supports(1.0, b)?.c2;
            let ys: Vec<f64> = (0..o.grid).map(|k| c2 * (-1.0 + (2 * k + 1) as f64 / o.grid as f64)).filter(|&y| y != 0.0).collect();
            let numeric = ys.iter().map(|&y| sigma_density_numeric(y, t)).collect::<Result<Vec<_>>>()?;
            r.float("t", t).float("c2", c2).float("sigma_density", sigma_density(t)?);
            r.column("y", ys).column("nu2_density", numeric);
        }
        Command::ElResiduals => {
            let b = o.symmetric_b()?;
            let res = solve(b, o.grid.max(5), 400, 20.0)?;
            let (c1, c2) = (res.c1, res.c2);
            let mut points: Vec<Complex64> = [0.1, 0.3, 0.5, 0.7, 0.9, 1.1, 1.3, 1.6, 2.0, 3.0].iter().map(|f| Complex64::new(f * c1, 0.0)).collect();
            points.extend([0.2, 0.5, 0.9, 1.1, 1.5, 2.0, 4.0, 8.0].iter().map(|f| Complex64::new(0.0, f * c2)));
            let rs = points.iter().map(|&x| el_residuals(x, &res)).collect::<Result<Vec<_>>>()?;
            r.float("b", b).float("c1", c1).float("c2", c2).float("lagrange_l", res.lagrange_l);
            r.float("V_slope", res.v_slope).float("sigma_density", res.sigma_density);
            r.float("saturation_deviation", res.saturation_deviation).float("constraint_margin", res.constraint_margin);
            r.column("x_re", rs.iter().map(|e| e.x_re).collect())
                .column("x_im", rs.iter().map(|e| e.x_im).collect())
                .column("r1", rs.iter().map(|e| e.r1.unwrap_or(f64::NAN)).collect())
                .column("r2", rs.iter().map(|e| e.r2.unwrap_or(f64::NAN)).collect());
        }
        Command::Sixvertex => {
            let n = o.lattice.ok_or_else(|| invalid("sixvertex needs --N"))?;
            let n1 = o.n1.unwrap_or(n);
            let gamma = o.gamma.unwrap_or(FRAC_PI_4);
            let p = VertexModelParams::new(n, n1, gamma, o.t1.unwrap_or(0.0), o.t2.unwrap_or(0.0))?;
            let z = partition_function(&p)?;
            r.scalar("N", n).scalar("n1", p.n1).scalar("n2", p.n2).float("gamma", gamma).float("t1", p.t1).float("t2", p.t2);
            r.float("log_det_M", z.log_det_m).scalar("det_sign", z.det_sign);
            r.float("log_Z", z.log_z).scalar("sign", z.sign).float("Z", z.z());
            match z.log_prod_h {
                Some(l) => {
                    let dis = z.route_disagreement().unwrap_or(f64::INFINITY);
                    r.float("log_prod_h", l).float("route_disagreement", dis).scalar("routes_agree", dis <= 1e-6);
                }
                None => {
                    r.scalar("log_prod_h", Value::Null).scalar("route_disagreement", Value::Null).scalar("routes_agree", Value::Null);
                }
            }
            if n <= CONFIGURATION_SUM_MAX {
                r.float("Z_configuration_sum", transfer_matrix_partition(&p)?);
            }
        }
    }
    Ok(r)
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidParams(_) | Error::Domain(_) => EXIT_INVALID,
        _ => EXIT_NUMERICAL,
    }
}

fn write_output(config: &RunConfig, text: &str) -> io::Result<()> {
    match &config.options.out {
        Some(path) => File::create(path)?.write_all(text.as_bytes()),
        None => io::stdout().write_all(text.as_bytes()),
    }
}

/// Executes `config`, writes its output and returns the exit code.
pub fn run(config: &RunConfig) -> i32 {
    let name = command_name(config.command);
    let (text, code) = match execute(config) {
        Ok(report) => match config.options.format {
            Format::Csv => (report.to_csv(), EXIT_OK),
            Format::Json => (report.to_json(&name), EXIT_OK),
        },
        Err(e) => {
            let code = exit_code(&e);
            eprintln!("meixner {name}: {e}");
            match config.options.format {
                Format::Csv => (String::new(), code),
                Format::Json => {
                    let mut map = Map::new();
                    map.insert("command".into(), name.clone().into());
                    map.insert("status".into(), if code == EXIT_INVALID { "invalid_input" } else { "numerical_failure" }.into());
                    map.insert("message".into(), e.to_string().into());
                    (serde_json::to_string_pretty(&Value::Object(map)).expect("plain JSON") + "\n", code)
                }
            }
        }
    };
    if !text.is_empty() {
        if let Err(e) = write_output(config, &text) {
            eprintln!("meixner {name}: cannot write output: {e}");
            return EXIT_NUMERICAL.max(code);
        }
    }
    code
}

/// Parses `args` (program name first) and runs. Usage errors exit with 2.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => run(&config),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = e.print();
            code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(args: &[&str]) -> RunConfig {
        RunConfig::try_parse_from(std::iter::once("meixner").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn float_format_has_17_digits() {
        assert_eq!(format_float(0.1), "1.0000000000000001e-1");
        assert_eq!(format_float(-2.0), "-2.0000000000000000e0");
        assert_eq!(format_float(f64::INFINITY), "inf");
    }

    #[test]
    fn command_names_are_kebab_case() {
        assert_eq!(command_name(Command::DensityNu1), "density-nu1");
        assert_eq!(command_name(Command::ElResiduals), "el-residuals");
        assert_eq!(command_name(Command::Sixvertex), "sixvertex");
    }

    #[test]
    fn supports_match_bisection() {
        let r = execute(&config(&["supports", "--b", "1"])).unwrap();
        let c1 = r.get_scalar("c1").unwrap().as_f64().unwrap();
        let c1b = r.get_scalar("c1_bisection").unwrap().as_f64().unwrap();
        assert!((c1 - c1b).abs() < 1e-6 * c1);
    }

    #[test]
    fn validation_errors_map_to_exit_2() {
        let e = execute(&config(&["weights"])).unwrap_err();
        assert_eq!(exit_code(&e), EXIT_INVALID);
        let e = execute(&config(&["weights", "--b", "1", "--t1", "0.3"])).unwrap_err();
        assert_eq!(exit_code(&e), EXIT_INVALID);
        let e = execute(&config(&["sixvertex", "--N", "3", "--t1", "0.9"])).unwrap_err();
        assert_eq!(exit_code(&e), EXIT_INVALID);
        assert_eq!(main_with_args(["meixner", "no-such-command"]), EXIT_INVALID);
    }

    #[test]
    fn json_has_no_nan() {
        let r = execute(&config(&["sixvertex", "--N", "3", "--gamma", "0.6", "--t1", "0.1", "--t2", "-0.2", "--n1", "1"])).unwrap();
        let s = r.to_json("sixvertex");
        assert!(!s.contains("NaN"));
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["status"], "ok");
        assert!(v["log_prod_h"].is_null());
    }

    #[test]
    fn csv_layout() {
        let r = execute(&config(&["weights", "--b", "1", "--grid", "3"])).unwrap();
        let csv = r.to_csv();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "x,w1,w2");
        assert_eq!(lines.len(), 4);
        assert!(lines[2].starts_with("0.0000000000000000e0,"));
    }
}
