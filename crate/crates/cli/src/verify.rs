use clap::Args;
use dlie::bialg;
use dlie::liecore::{self, Metric};
use dlie::manin;
use dlie::scalar;
use dlie::sofamilies::{self, BSolutionParams, Side, SubalgebraSpec, Variant};
use dlie::{Check, Error, Report, Result};
use serde_json::json;

use crate::params;
use crate::{Suite, VerificationReport};

#[derive(Args)]
pub struct VerifyArgs {
    suite: Suite,
    /// Signs of the metric, e.g. "+---".
    #[arg(long, default_value = "+---")]
    metric: String,
    /// b-type family 1–4 (gcybe, roundtrip).
    #[arg(long)]
    family: Option<u8>,
    /// Vector of V such as "e1" or "e1+e4" (family 1 without --params).
    #[arg(long)]
    x: Option<String>,
    /// Family parameters as JSON, e.g. {"family":"b2","x":["1","0","0"],"X":["0","0","1"]}.
    #[arg(long)]
    params: Option<String>,
    /// Iwasawa-type subalgebra: u, utilde or Utilde.
    #[arg(long, default_value = "u")]
    variant: String,
    /// Complementary subalgebra: h1 or h2.
    #[arg(long, default_value = "h1")]
    side: String,
    /// Raised s entries as JSON [[i, j, "v"], …], 1-based.
    #[arg(long)]
    s: Option<String>,
    /// D pairs as JSON [[m, n], …], 1-based.
    #[arg(long)]
    d: Option<String>,
}

pub fn run(args: &VerifyArgs) -> Result<VerificationReport> {
    let met = Metric::parse(&args.metric)?;
    let name = format!("{:?}", args.suite).to_lowercase();
    match args.suite {
        Suite::So => Ok(algebra_suite(&name, sofamilies::build_so(&met), Some(sofamilies::killing_form(&met)))),
        Suite::Iso => Ok(algebra_suite(&name, sofamilies::build_iso(&met), None)),
        Suite::Gcybe => gcybe(&name, &met, args),
        Suite::Double | Suite::Manin => double(&name, &met, args, matches!(args.suite, Suite::Double)),
        Suite::Roundtrip => roundtrip(&name, &met, args),
    }
}

fn algebra_suite(name: &str, alg: liecore::LieAlgebra, form: Option<liecore::BilinearForm>) -> VerificationReport {
    let mut r = Report::new();
    r.push(alg.verify_jacobi().with_value(format!("dim {}", alg.dim())));
    r.push(alg.semidirect_with_dual().verify_jacobi().renamed("semidirect_jacobi"));
    if let Some(k) = form {
        r.extend_prefixed("killing", liecore::verify_invariant_form(&alg, &k));
    }
    VerificationReport::new(name, r, None)
}

fn family_params(met: &Metric, args: &VerifyArgs) -> Result<BSolutionParams> {
    if let Some(json) = &args.params {
        let p: BSolutionParams = serde_json::from_str(json)?;
        if let Some(f) = args.family {
            if f != p.family() {
                return Err(Error::BadParams(format!("--family {f} disagrees with params family {}", p.family())));
            }
        }
        return Ok(p);
    }
    match (args.family.unwrap_or(1), &args.x) {
        (1, Some(x)) => Ok(BSolutionParams::Family1 { x: params::v_element(met, x)? }),
        (1, None) => Err(Error::BadParams("family 1 needs --x".into())),
        (f, _) => Err(Error::BadParams(format!("family {f} needs --params"))),
    }
}

fn gcybe(name: &str, met: &Metric, args: &VerifyArgs) -> Result<VerificationReport> {
    let p = family_params(met, args)?;
    let b = sofamilies::b_solution(met, &p)?;
    let iso = sofamilies::build_iso(met);
    let rep = bialg::gcybe_report(&iso, &b, &sofamilies::omega_element(met))?;
    let mut r = Report::new();
    r.push(Check::from_witness("b_type", sofamilies::check_b_type(met, &b).err().map(|e| e.to_string())));
    r.push(Check::from_witness("invariant", rep.invariance_witness.clone()));
    r.push(if rep.proportional_to_omega {
        Check::pass("proportional_to_omega")
    } else {
        Check::fail("proportional_to_omega", "[r,r] is not a multiple of Ω")
    });
    let x = p.x();
    let norm = met.inner(x, x);
    let result = rep.t.as_ref().map(|t| {
        let ratio = if norm == scalar::zero() { None } else { Some(scalar::format(&(t / -norm.clone()))) };
        json!({
            "family": p.family(),
            "lambda": rep.lambda.as_ref().map(scalar::format),
            "t": scalar::format(t),
            "eta_xx": scalar::format(&norm),
            "t_over_minus_eta_xx": ratio,
        })
    });
    if let Some(t) = &rep.t {
        r.push(Check::pass("t").with_value(scalar::format(t)));
    }
    Ok(VerificationReport::new(name, r, result))
}

fn double(name: &str, met: &Metric, args: &VerifyArgs, full: bool) -> Result<VerificationReport> {
    let side: Side = args.side.parse()?;
    let variant: Variant = args.variant.parse()?;
    let n1 = met.len();
    let s = params::raised_s(args.s.as_deref(), n1)?;
    let spec = match variant {
        Variant::U => SubalgebraSpec::u(n1),
        Variant::UTilde => SubalgebraSpec::u_tilde(s),
        Variant::BigUTilde => SubalgebraSpec::big_u_tilde(s, params::d_pairs(args.d.as_deref(), n1)?),
    };
    let mut r = Report::new();
    let u = sofamilies::iwasawa_type_subalgebra(met, &spec)?;
    r.extend_prefixed("subalgebra", u.report);
    let dd = manin::iwasawa_double(met, side, &spec)?;
    r.extend_prefixed("double", liecore::verify_double_decomposition(&dd.alg, &dd.a, &dd.b));
    let triple = manin::manin_from_double(&dd)?;
    r.extend_prefixed("manin", manin::verify_manin(&triple));
    let ex = manin::extract_bialgebra(&triple)?;
    r.extend_prefixed("extraction", ex.report.clone());
    if !full {
        return Ok(VerificationReport::new(name, r, None));
    }
    let id = manin::identify_iso_basis(&ex, met, side)?;
    r.extend_prefixed("identification", id.report.clone());
    r.extend_prefixed("identification", id.extracted.report.clone());
    r.extend_prefixed("coadjoint", manin::coadjoint_invariance_report(&id.extracted)?);
    let claimed = manin::claimed_b(met, side, &spec);
    r.push(
        manin::compare_with_claim(&id, &claimed)?
            .with_value(format!("δ = {}·∂b", scalar::format(&manin::extraction_scale()))),
    );
    let result = json!({ "iso_metric": id.metric.to_string(), "claimed_b": claimed });
    Ok(VerificationReport::new(name, r, Some(result)))
}

fn roundtrip(name: &str, met: &Metric, args: &VerifyArgs) -> Result<VerificationReport> {
    let b = sofamilies::b_solution(met, &family_params(met, args)?)?;
    let mut r = Report::new();
    let f = match sofamilies::b_to_dual_structure(met, &b) {
        Ok(f) => f,
        Err(e) => {
            r.push(Check::fail("b_type", e.to_string()));
            return Ok(VerificationReport::new(name, r, None));
        }
    };
    r.push(Check::pass("b_type"));
    let back = sofamilies::dual_structure_to_b(&f);
    r.push(if back == b {
        Check::pass("round_trip")
    } else {
        Check::fail("round_trip", "dual_structure_to_b(b_to_dual_structure(b)) ≠ b")
    });
    Ok(VerificationReport::new(name, r, None))
}
