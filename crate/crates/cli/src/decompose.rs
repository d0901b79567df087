use clap::{Args, ValueEnum};
use dlie::lorentz::{self, LorentzMatrix};
use dlie::{Check, Error, Result};
use serde_json::json;

use crate::params;
use crate::{VerificationReport, EXIT_OBSTRUCTED};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Kind {
    Iwasawa,
    KfnEuclid,
    KfnPoincare,
    Xfn,
}

#[derive(Args)]
pub struct DecomposeArgs {
    kind: Kind,
    /// Spatial dimension: matrices are (n+1)×(n+1).
    #[arg(long)]
    n: usize,
    /// Generator s as a row-major JSON (n−1)×(n−1) antisymmetric matrix; zero if omitted.
    #[arg(long)]
    s: Option<String>,
    /// File holding the matrix as row-major JSON.
    #[arg(long, conflicts_with = "random", required_unless_present = "random")]
    input: Option<std::path::PathBuf>,
    /// Decompose a sampled element with this seed.
    #[arg(long)]
    random: Option<u64>,
}

fn load(args: &DecomposeArgs) -> Result<LorentzMatrix> {
    let g = match (&args.input, args.random) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::BadParams(format!("{}: {e}", path.display())))?;
            LorentzMatrix::from_rows(&params::float_rows(&text)?)?
        }
        (None, Some(seed)) => lorentz::sample_so0(args.n, seed)?,
        (None, None) => return Err(Error::BadParams("need --input or --random".into())),
    };
    if g.n() != args.n {
        return Err(Error::BadParams(format!("matrix is {0}×{0}, expected n+1 = {1}", g.n() + 1, args.n + 1)));
    }
    Ok(g)
}

pub fn run(args: &DecomposeArgs) -> Result<VerificationReport> {
    let g = load(args)?;
    let n = args.n;
    let s = lorentz::generator_from_rows(&args.s.as_deref().map(params::float_rows).transpose()?.unwrap_or_default(), n)?;
    let suite = format!("decompose-{:?}", args.kind).to_lowercase();
    let mut r = lorentz::verify_so0(&g, lorentz::TOL);
    if let Some(c) = r.first_failure() {
        return Err(Error::NotInGroup(c.witness.clone().unwrap_or_default()));
    }
    let residual_check = |res: f64| {
        let c = if res < lorentz::TOL { Check::pass("residual") } else { Check::fail("residual", format!("{res:e}")) };
        c.with_value(format!("{res:e}"))
    };
    let outcome = match args.kind {
        Kind::Iwasawa => lorentz::iwasawa_decompose(&g).map(|f| {
            let res = f.residual(&g);
            r.push(residual_check(res));
            r.push(block_check("k_block", lorentz::k_block_deviation(&f.k)));
            json!({ "branch": "iwasawa", "k": f.k, "t": f.t, "x": f.x, "residual": res })
        }),
        Kind::KfnEuclid | Kind::KfnPoincare | Kind::Xfn => {
            let f = match args.kind {
                Kind::KfnEuclid => lorentz::kfn_euclid(&g, &s),
                Kind::KfnPoincare => lorentz::kfn_poincare(&g, &s),
                _ => lorentz::xfn_extended(&g, &s),
            };
            f.map(|f| {
                let res = f.residual(&g);
                r.push(residual_check(res));
                let dev = match f.branch {
                    lorentz::Branch::Euclid => lorentz::k_block_deviation(&f.k_tilde),
                    lorentz::Branch::Poincare => lorentz::poincare_block_deviation(&f.k_tilde),
                    lorentz::Branch::ExtendedK0 => lorentz::poincare_block_deviation(&lorentz::k0(n).mul(&f.k_tilde)),
                };
                r.push(block_check("k_tilde_block", dev));
                json!({ "branch": f.branch, "k": f.k_tilde, "t": f.t, "x": f.x, "residual": res })
            })
        }
    };
    match outcome {
        Ok(result) => Ok(VerificationReport::new(suite, r, Some(result))),
        Err(e @ (Error::Obstructed { .. } | Error::OnBoundary { .. })) => {
            let k_value = match e {
                Error::Obstructed { k_value } | Error::OnBoundary { k_value } => k_value,
                _ => unreachable!(),
            };
            let name = if matches!(e, Error::Obstructed { .. }) { "obstruction" } else { "boundary" };
            r.push(Check::fail(name, e.to_string()).with_value(format!("{k_value}")));
            let mut report = VerificationReport::new(suite, r, Some(json!({ "k_value": k_value })));
            report.exit_code = EXIT_OBSTRUCTED;
            Ok(report)
        }
        Err(e) => Err(e),
    }
}

fn block_check(name: &str, dev: f64) -> Check {
    let c = if dev < lorentz::TOL { Check::pass(name) } else { Check::fail(name, format!("deviation {dev:e}")) };
    c.with_value(format!("{dev:e}"))
}
