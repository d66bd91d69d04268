use parity_lab::arith::Place;
use parity_lab::curve::{self, TwoTorsionModel};
use parity_lab::descent2;
use parity_lab::fields::{self, QuadraticField, Sign};
use parity_lab::larsen;
use parity_lab::rootnumber;
use serde_json::{json, Value};

use crate::report::rational;
use crate::{CliError, CurveInput, Report};

/// Everything a command may read. Commands ignore the fields they do not use.
#[derive(Clone, Debug, Default)]
pub struct Request {
    pub curve: Option<CurveInput>,
    pub m: Option<i128>,
    pub p: Option<u128>,
    pub r: Option<u32>,
    pub bound: i128,
    pub place: Option<Place>,
    pub mode: Option<String>,
    pub sign: Option<Sign>,
}

impl Request {
    pub fn with_curve(&self, curve: CurveInput) -> Request {
        Request {
            curve: Some(curve),
            ..self.clone()
        }
    }

    fn curve(&self) -> Result<&CurveInput, CliError> {
        self.curve
            .as_ref()
            .ok_or_else(|| CliError::Usage("--curve is required".into()))
    }

    fn echo(&self) -> Value {
        let mut v = serde_json::Map::new();
        if let Some(c) = &self.curve {
            v.insert("curve".into(), json!(c.raw));
            if let Some(l) = &c.label {
                v.insert("label".into(), json!(l));
            }
        }
        if let Some(m) = self.m {
            v.insert("m".into(), json!(m));
        }
        if let Some(p) = self.p {
            v.insert("p".into(), json!(p));
        }
        if let Some(r) = self.r {
            v.insert("r".into(), json!(r));
        }
        if let Some(place) = self.place {
            v.insert("place".into(), json!(place));
        }
        if let Some(mode) = &self.mode {
            v.insert("mode".into(), json!(mode));
        }
        if let Some(sign) = self.sign {
            v.insert("sign".into(), json!(sign));
        }
        v.insert("bound".into(), json!(self.bound));
        Value::Object(v)
    }
}

/// Result of a successful run. Identity violations are counted rather than
/// raised so the report can still be printed.
#[derive(Clone, Debug, PartialEq)]
pub struct CommandOutput {
    pub results: Value,
    pub violations: usize,
}

impl From<Value> for CommandOutput {
    fn from(results: Value) -> Self {
        CommandOutput {
            results,
            violations: 0,
        }
    }
}

pub trait Command: Send + Sync {
    fn name(&self) -> &'static str;
    fn about(&self) -> &'static str;
    fn run(&self, req: &Request) -> Result<CommandOutput, CliError>;
}

/// Runs a command and wraps the outcome in a report, together with the exit code.
pub fn execute(cmd: &dyn Command, req: &Request) -> (Report, i32) {
    match cmd.run(req) {
        Ok(out) => {
            let code = if out.violations > 0 { 4 } else { 0 };
            (Report::ok(cmd.name(), req.echo(), out.results), code)
        }
        Err(e) => (Report::failed(cmd.name(), req.echo(), &e), e.exit_code()),
    }
}

pub struct Registry {
    commands: Vec<Box<dyn Command>>,
}

impl Default for Registry {
    fn default() -> Self {
        let mut r = Registry::empty();
        r.register(Box::new(CurveCmd));
        r.register(Box::new(RootNumberCmd));
        r.register(Box::new(ParityCmd));
        r.register(Box::new(TwistSearchCmd));
        r.register(Box::new(LarsenCmd));
        r
    }
}

impl Registry {
    pub fn empty() -> Self {
        Registry {
            commands: Vec::new(),
        }
    }

    /// Adds a command, replacing any earlier one with the same name.
    pub fn register(&mut self, cmd: Box<dyn Command>) {
        self.commands.retain(|c| c.name() != cmd.name());
        self.commands.push(cmd);
    }

    pub fn get(&self, name: &str) -> Option<&dyn Command> {
        self.commands
            .iter()
            .find(|c| c.name() == name)
            .map(|c| c.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.commands.iter().map(|c| c.name()).collect()
    }
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library types serialize")
}

struct CurveCmd;

impl Command for CurveCmd {
    fn name(&self) -> &'static str {
        "curve"
    }

    fn about(&self) -> &'static str {
        "invariants, conductor and Tate's algorithm at each bad prime"
    }

    fn run(&self, req: &Request) -> Result<CommandOutput, CliError> {
        let e = req.curve()?.model();
        let inv = e.invariants()?;
        let local = curve::local_data(&e)?;
        let mut tamagawa = Vec::new();
        for d in &local {
            tamagawa.push(to_json(&curve::tamagawa_term(&e, d.prime)?));
        }
        Ok(json!({
            "model": e.coefficients(),
            "invariants": {
                "b2": inv.b2, "b4": inv.b4, "b6": inv.b6, "b8": inv.b8,
                "c4": inv.c4, "c6": inv.c6, "disc": inv.disc,
                "j": rational(&inv.j),
            },
            "conductor": curve::conductor(&e)?,
            "bad_primes": local.iter().map(|d| d.prime).collect::<Vec<_>>(),
            "local_data": to_json(&local),
            "tamagawa_terms": tamagawa,
            "two_torsion": e.two_torsion_model().map(|t| t.to_string()),
            "two_division_galois_type": to_json(&e.two_division_galois_type()),
        })
        .into())
    }
}

struct RootNumberCmd;

impl Command for RootNumberCmd {
    fn name(&self) -> &'static str {
        "rootnumber"
    }

    fn about(&self) -> &'static str {
        "global root number, optionally over Q(sqrt m) with the inductivity check"
    }

    fn run(&self, req: &Request) -> Result<CommandOutput, CliError> {
        let e = req.curve()?.model();
        let global = rootnumber::global_root_number(&e);
        let Some(m) = req.m else {
            return Ok(json!({ "global": to_json(&global?) }).into());
        };
        let quad = rootnumber::root_number_over_quadratic(&e, m)?;
        let mut results = json!({ "quadratic": to_json(&quad) });
        let mut violations = 0;
        match global {
            Ok(g) => {
                results["global"] = to_json(&g);
                match rootnumber::inductivity_check(&e, m) {
                    Ok(ind) => {
                        if !ind.holds {
                            violations += 1;
                        }
                        results["inductivity"] = to_json(&ind);
                    }
                    Err(err) if err.is_unsupported() => {
                        results["inductivity"] = json!({ "skipped": err.to_string() });
                    }
                    Err(err) => return Err(err.into()),
                }
            }
            Err(err) if err.is_unsupported() => {
                results["global"] = json!({ "skipped": err.to_string() });
                results["inductivity"] = json!({ "skipped": err.to_string() });
            }
            Err(err) => return Err(err.into()),
        }
        Ok(CommandOutput {
            results,
            violations,
        })
    }
}

struct ParityCmd;

impl ParityCmd {
    fn model(input: &CurveInput) -> Result<TwoTorsionModel, CliError> {
        input
            .two_torsion()
            .or_else(|| input.model().two_torsion_model())
            .ok_or_else(|| CliError::Usage(format!("{} has no rational 2-torsion point", input.raw)))
    }
}

impl Command for ParityCmd {
    fn name(&self) -> &'static str {
        "parity"
    }

    fn about(&self) -> &'static str {
        "Cassels terms of the 2-isogeny and the per-place root-number identity"
    }

    fn run(&self, req: &Request) -> Result<CommandOutput, CliError> {
        let t = Self::model(req.curve()?)?;
        let cassels = descent2::cassels_parity(&t)?;
        let mut identity = Vec::new();
        let mut violations = 0;
        for v in descent2::cassels_support(&t)? {
            match descent2::local_identity(&t, v) {
                Ok(id) => {
                    if !id.holds {
                        violations += 1;
                    }
                    let mut row = to_json(&id);
                    row["status"] = json!(if id.holds { "ok" } else { "violated" });
                    identity.push(row);
                }
                Err(err) if err.is_unsupported() => {
                    identity.push(json!({
                        "place": v,
                        "status": "skipped",
                        "reason": err.to_string(),
                    }));
                }
                Err(err) => return Err(err.into()),
            }
        }
        let global = match rootnumber::global_root_number(&t.to_weierstrass()) {
            Ok(g) => {
                if g.value != cassels.value {
                    violations += 1;
                }
                json!({ "value": g.value, "agrees": g.value == cassels.value })
            }
            Err(err) if err.is_unsupported() => json!({ "skipped": err.to_string() }),
            Err(err) => return Err(err.into()),
        };
        Ok(CommandOutput {
            results: json!({
                "model": t.to_string(),
                "dual": descent2::dual_model(&t)?.to_string(),
                "support": descent2::cassels_support(&t)?,
                "sigma": to_json(&cassels.breakdown),
                "cassels_product": cassels.value,
                "identity": identity,
                "global_root_number": global,
            }),
            violations,
        })
    }
}

struct TwistSearchCmd;

impl Command for TwistSearchCmd {
    fn name(&self) -> &'static str {
        "twist-search"
    }

    fn about(&self) -> &'static str {
        "least quadratic field splitting the bad primes, or with prescribed local behaviour"
    }

    fn run(&self, req: &Request) -> Result<CommandOutput, CliError> {
        let e = req.curve()?.model();
        let mode = req.mode.as_deref().unwrap_or("split-all-bad");
        let (field, certificate): (QuadraticField, Value) = match mode {
            "split-all-bad" => {
                let sign = req.sign.unwrap_or(Sign::Negative);
                (fields::find_split_all_bad(&e, sign, req.bound)?, Value::Null)
            }
            "weak-approx" => {
                let place = req
                    .place
                    .ok_or_else(|| CliError::Usage("weak-approx needs --place".into()))?;
                let cert = fields::find_weak_approx(&e, place, req.bound)?;
                if !cert.is_valid() {
                    return Err(CliError::IdentityViolation(
                        "weak-approximation certificate failed re-verification".into(),
                    ));
                }
                (cert.field, to_json(&cert))
            }
            other => return Err(CliError::Usage(format!("unknown mode `{other}`"))),
        };
        let mut splitting = Vec::new();
        let mut places = vec![Place::Infinite, Place::Finite(2)];
        places.extend(curve::bad_primes(&e)?.into_iter().map(Place::Finite));
        places.sort();
        places.dedup();
        for v in places {
            splitting.push(json!({ "place": v, "splitting": field.splitting(v) }));
        }
        let root_number = match rootnumber::root_number_over_quadratic(&e, field.m) {
            Ok(w) => to_json(&w),
            Err(err) if err.is_unsupported() => json!({ "skipped": err.to_string() }),
            Err(err) => return Err(err.into()),
        };
        Ok(json!({
            "m": field.m,
            "discriminant": field.discriminant(),
            "splitting": splitting,
            "root_number_over_field": root_number,
            "certificate": certificate,
        })
        .into())
    }
}

struct LarsenCmd;

impl Command for LarsenCmd {
    fn name(&self) -> &'static str {
        "larsen"
    }

    fn about(&self) -> &'static str {
        "imaginary quadratic root number and rank bounds from F_p^r ⋊ C_2"
    }

    fn run(&self, req: &Request) -> Result<CommandOutput, CliError> {
        let e = req.curve()?.model();
        let p = req.p.ok_or_else(|| CliError::Usage("--p is required".into()))?;
        let r = req.r.unwrap_or(1);
        let cert = larsen::larsen_certificate(&e, p, r, req.bound)?;
        let mut results = to_json(&cert);
        if r == 1 {
            let table = larsen::character_table(&cert.spec)?;
            results["character_table_orthonormal"] = json!(table.rows_orthonormal());
            if !table.rows_orthonormal() || cert.det_rho != Some(true) {
                return Err(CliError::IdentityViolation("character table checks failed".into()));
            }
        }
        Ok(results.into())
    }
}
