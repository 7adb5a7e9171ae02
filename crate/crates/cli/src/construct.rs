use std::path::PathBuf;
use std::process::ExitCode;

use apnkit::constructions::{
    concat_is_apn, concatenate, coset_criterion, coset_modify, exp_sum_condition, hyperplane_modify, switch,
    tr_l_criterion, CosetDecomposition, Embedding, SwitchSpec,
};
use apnkit::format::{format_element, parse_element, parse_lin1_coefficients, write_vbf1};
use apnkit::invariants::InvariantBundle;
use apnkit::{Field, LinearMap, Vbf};
use clap::{Args, Subcommand};
use serde_json::json;

use crate::{parse_hex_arg, print_json, read_text, read_vbf, write_text, CliError, CliResult, ElementStyle, FieldArgs};

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[command(subcommand)]
    kind: Kind,
    /// Where to write the constructed function (vbf1).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Where to write the certificate (default: stdout).
    #[arg(long, global = true)]
    cert: Option<PathBuf>,
    /// Add an invariant bundle of the result to the certificate.
    #[arg(long, global = true)]
    invariants: bool,
    /// Notation for field elements in the certificate.
    #[arg(long, value_enum, default_value_t = ElementStyle::Hex, global = true)]
    elements: ElementStyle,
}

#[derive(Subcommand, Debug)]
enum Kind {
    /// f + u·g from an APN (n, m+1)-function (f, g); g is the top output bit.
    Switch {
        #[arg(long)]
        base: PathBuf,
        #[arg(long, value_parser = parse_hex_arg)]
        u: u32,
    },
    /// Concatenate two (n-1, m)-functions into an (n, m)-function.
    Concat {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
    },
    /// F(x) + Tr(x) L(x) for a linearized L (lin1 file).
    Hmod {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        lin: PathBuf,
        /// Quadratic APN base (default x^3).
        #[arg(long)]
        base: Option<PathBuf>,
        /// e_0 (hex) with Tr(e_0) = 1 (default: lowest such unit vector).
        #[arg(long, value_parser = parse_hex_arg)]
        e0: Option<u32>,
    },
    /// F(x) + a_i on the i-th coset of a codimension-2 subspace.
    Coset {
        #[command(flatten)]
        field: FieldArgs,
        /// a_1,a_2,a_3,a_4 as hex or g^k.
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<String>,
        /// APN base (default x^3).
        #[arg(long)]
        base: Option<PathBuf>,
        /// Basis of U (hex, comma separated); default: kernel of Tr^n_2.
        #[arg(long, value_delimiter = ',', value_parser = parse_hex_arg, requires = "reps")]
        basis: Option<Vec<u32>>,
        /// Coset representatives u_1 = 0, u_2, u_3, u_4 (hex).
        #[arg(long, value_delimiter = ',', value_parser = parse_hex_arg, requires = "basis")]
        reps: Option<Vec<u32>>,
    },
}

fn hex(v: u32) -> String {
    format!("{v:#x}")
}

fn base_or_cube(field: &Field, base: &Option<PathBuf>) -> CliResult<Vbf> {
    match base {
        Some(p) => read_vbf(p),
        None => Ok(Vbf::power(field, 3)),
    }
}

pub fn run(args: &ConstructArgs) -> CliResult<ExitCode> {
    let fmt = args.elements.into();
    let (function, mut cert) = match &args.kind {
        Kind::Switch { base, u } => {
            let combined = read_vbf(base)?;
            let spec = SwitchSpec::from_combined(&combined, *u)?;
            let out = switch(&spec)?;
            let cert = json!({
                "kind": "switch",
                "params": { "n": combined.n(), "m": combined.m() - 1, "u": hex(*u) },
                "criterion": "no quadruple with f-sum u has g-sum 1",
                "holds": out.certificate,
                "witness": out.witness.map(|(x, y, t)| json!({ "x": x, "y": y, "t": t })),
            });
            (out.function, cert)
        }
        Kind::Concat { f, g } => {
            let (f, g) = (read_vbf(f)?, read_vbf(g)?);
            let emb = Embedding::standard(f.n() + 1);
            let function = concatenate(&f, &g, &emb)?;
            let witness = concat_is_apn(&f, &g)?;
            let cert = json!({
                "kind": "concat",
                "params": { "n": f.n() + 1, "m": f.m(), "embedding": "standard", "e0": hex(emb.e0()) },
                "criterion": "halves APN and no shared derivative value",
                "holds": witness.is_none(),
                "witness": witness,
            });
            (function, cert)
        }
        Kind::Hmod { field, lin, base, e0 } => {
            let field = field.field()?;
            let coeffs = parse_lin1_coefficients(&read_text(lin)?, &field).map_err(|source| CliError::Input {
                path: lin.clone(),
                source,
            })?;
            let l = LinearMap::from_linearized(&field, &coeffs)?;
            let f = base_or_cube(&field, base)?;
            let e0 = e0.unwrap_or_else(|| field.trace_one_element());
            let verdict = tr_l_criterion(&field, &f, &l, e0)?;
            let function = hyperplane_modify(&field, &f, &l)?;
            let coefficients: Vec<String> = coeffs.iter().map(|&c| format_element(&field, c, fmt)).collect();
            let mut cert = json!({
                "kind": "hmod",
                "params": {
                    "n": field.degree(),
                    "modulus": hex(field.modulus()),
                    "e0": hex(e0),
                    "coefficients": coefficients,
                },
                "criterion": "kernel of L(x) + B_F(x, a + e0) on T0 trivial for all a in T0",
                "holds": verdict.is_none(),
                "witness": verdict,
            });
            if base.is_none() {
                cert["exp_sum"] = serde_json::to_value(exp_sum_condition(&field, &l)?).expect("serializable");
            }
            (function, cert)
        }
        Kind::Coset {
            field,
            a,
            base,
            basis,
            reps,
        } => {
            let field = field.field()?;
            let a: Vec<u32> = a
                .iter()
                .map(|s| parse_element(Some(&field), s).map_err(CliError::Usage))
                .collect::<CliResult<_>>()?;
            let a: [u32; 4] = a.try_into().map_err(|_| CliError::Usage("--a takes four values".into()))?;
            let dec = match (basis, reps) {
                (Some(b), Some(r)) => {
                    let r: [u32; 4] = r
                        .clone()
                        .try_into()
                        .map_err(|_| CliError::Usage("--reps takes four values".into()))?;
                    CosetDecomposition::new(field.degree(), b.clone(), r)?
                }
                _ => CosetDecomposition::from_trace_to_f4(&field)?,
            };
            let f = base_or_cube(&field, base)?;
            let verdict = coset_criterion(&f, &dec, a)?;
            let function = coset_modify(&f, &dec, a)?;
            let show = |v: u32| format_element(&field, v, fmt);
            let cert = json!({
                "kind": "coset",
                "params": {
                    "n": field.degree(),
                    "modulus": hex(field.modulus()),
                    "basis": dec.basis().iter().map(|&v| hex(v)).collect::<Vec<_>>(),
                    "representatives": dec.representatives().map(hex),
                    "a": a.map(show),
                    "sum": show(verdict.sum),
                },
                "criterion": "no flat meeting each coset once has F-sum a1+a2+a3+a4",
                "holds": verdict.holds,
                "witness": verdict.witness,
            });
            (function, cert)
        }
    };
    if args.invariants {
        cert["invariants"] = serde_json::to_value(InvariantBundle::compute(&function, false)?).expect("serializable");
    }
    match &args.out {
        Some(p) => write_text(p, &write_vbf1(&function))?,
        None => out!("{}", write_vbf1(&function)),
    }
    match &args.cert {
        Some(p) => write_text(p, &(serde_json::to_string_pretty(&cert).expect("json") + "\n"))?,
        None => print_json(&cert),
    }
    Ok(ExitCode::SUCCESS)
}
