//! JSON request dispatch.

use std::time::Instant;

use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::arith::{Int, PAdicRing};
use crate::context::PrecisionCtx;
use crate::error::Error;
use crate::json::{as_i64, as_u64, AnyWitt, Coeff, Decoder, ToJson};
use crate::theta;
use crate::tilt::TiltElt;
use crate::tr::TrModel;
use crate::witt::{self, Backend, WittVec};

/// Names accepted in the `op` field.
pub const OPS: &[&str] = &[
    "ghost",
    "from_ghost",
    "add",
    "sub",
    "mul",
    "neg",
    "teich",
    "F",
    "V",
    "R",
    "divide",
    "theta_prime",
    "theta",
    "xi",
    "roots",
    "tilt_valuation",
    "tr_beta",
    "tr_R",
    "tr_F",
    "tr_galois",
    "tc_check",
];

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrecisionOverride {
    pub p: Option<u64>,
    pub prec: Option<u32>,
    pub depth: Option<u32>,
    pub len: Option<usize>,
    pub guard: Option<u32>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Request {
    pub op: String,
    #[serde(default)]
    pub params: Map<String, Value>,
    #[serde(default)]
    pub precision: Option<PrecisionOverride>,
}

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error("unknown op \"{0}\"")]
    UnknownOp(String),
    #[error("invalid request: {0}")]
    InvalidRequest(String),
    #[error(transparent)]
    Compute(#[from] Error),
}

impl EvalError {
    pub fn code(&self) -> &'static str {
        match self {
            EvalError::UnknownOp(_) => "unknown_op",
            EvalError::InvalidRequest(_) => "invalid_request",
            EvalError::Compute(e) => e.code(),
        }
    }

    /// Errors caused by the caller rather than by the mathematics.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            EvalError::UnknownOp(_)
                | EvalError::InvalidRequest(_)
                | EvalError::Compute(Error::InvalidParameter(_) | Error::RingMismatch(_))
        )
    }

    pub fn is_precision(&self) -> bool {
        matches!(self, EvalError::Compute(Error::Precision(_)))
    }
}

/// A successful evaluation.
#[derive(Debug, Clone)]
pub struct Output {
    pub value: Value,
    pub effective_precision: Option<u32>,
}

/// Parses and evaluates one request given as JSON text.
pub fn eval_str(ctx: &PrecisionCtx, input: &str) -> (Value, Option<EvalError>) {
    match serde_json::from_str::<Value>(input) {
        Ok(req) => eval_json(ctx, &req),
        Err(e) => {
            let err = EvalError::InvalidRequest(format!("malformed JSON: {e}"));
            (respond("", Err(&err), 0.0), Some(err))
        }
    }
}

/// Evaluates a raw JSON request and returns the response object.
pub fn eval_json(ctx: &PrecisionCtx, input: &Value) -> (Value, Option<EvalError>) {
    let start = Instant::now();
    let op = input
        .get("op")
        .and_then(Value::as_str)
        .unwrap_or("")
        .to_string();
    let result = serde_json::from_value::<Request>(input.clone())
        .map_err(|e| EvalError::InvalidRequest(e.to_string()))
        .and_then(|req| eval(ctx, &req));
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    match result {
        Ok(out) => (respond(&op, Ok(&out), elapsed_ms), None),
        Err(e) => (respond(&op, Err(&e), elapsed_ms), Some(e)),
    }
}

fn respond(op: &str, result: std::result::Result<&Output, &EvalError>, elapsed_ms: f64) -> Value {
    match result {
        Ok(out) => json!({
            "ok": true,
            "op": op,
            "value": out.value,
            "effective_precision": out.effective_precision,
            "elapsed_ms": elapsed_ms,
        }),
        Err(e) => json!({
            "ok": false,
            "op": op,
            "error": {"code": e.code(), "message": e.to_string()},
            "elapsed_ms": elapsed_ms,
        }),
    }
}

fn apply_overrides(ctx: &PrecisionCtx, req: &Request) -> Result<PrecisionCtx, EvalError> {
    let o = req.precision.clone().unwrap_or_default();
    let p = match req.params.get("p") {
        Some(v) => Some(as_u64(v, "p")?),
        None => o.p,
    };
    Ok(PrecisionCtx::new(
        p.unwrap_or(ctx.p),
        o.prec.unwrap_or(ctx.prec),
        o.depth.unwrap_or(ctx.depth),
        o.len.unwrap_or(ctx.len),
        o.guard.unwrap_or(ctx.guard),
    )?)
}

pub fn eval(ctx: &PrecisionCtx, req: &Request) -> Result<Output, EvalError> {
    if !OPS.contains(&req.op.as_str()) {
        return Err(EvalError::UnknownOp(req.op.clone()));
    }
    let ctx = apply_overrides(ctx, req)?;
    let args = Args {
        dec: Decoder::new(ctx),
        params: &req.params,
    };
    Ok(dispatch(&req.op, &args)?)
}

struct Args<'a> {
    dec: Decoder,
    params: &'a Map<String, Value>,
}

impl Args<'_> {
    fn field(&self, key: &str) -> Result<&Value, Error> {
        self.params
            .get(key)
            .ok_or_else(|| Error::InvalidParameter(format!("missing parameter \"{key}\"")))
    }

    fn usize_or(&self, key: &str, default: usize) -> Result<usize, Error> {
        self.params
            .get(key)
            .map_or(Ok(default), |v| Ok(as_u64(v, key)? as usize))
    }

    fn usize(&self, key: &str) -> Result<usize, Error> {
        Ok(as_u64(self.field(key)?, key)? as usize)
    }

    fn witt(&self, key: &str) -> Result<AnyWitt, Error> {
        self.dec.witt(self.field(key)?)
    }

    fn ctx(&self) -> &PrecisionCtx {
        &self.dec.ctx
    }

    fn model(&self) -> Result<TrModel, Error> {
        TrModel::new(self.ctx().p, self.ctx().prec, self.ctx().depth)
    }

    fn backend(&self) -> Result<Backend, Error> {
        match self.params.get("backend").and_then(Value::as_str) {
            None | Some("ghost") => Ok(Backend::GhostLift),
            Some("universal") => Ok(Backend::Universal),
            Some(b) => Err(Error::InvalidParameter(format!("unknown backend \"{b}\""))),
        }
    }
}

fn witt_out<R: ToJson + crate::witt::WittCoeff>(w: WittVec<R>) -> Output {
    Output {
        effective_precision: w.effective_precision(),
        value: w.to_json(),
    }
}

fn any_out(w: AnyWitt) -> Output {
    match w {
        AnyWitt::Int(w) => witt_out(w),
        AnyWitt::Residue(w) => witt_out(w),
        AnyWitt::Cyc(w) => witt_out(w),
        AnyWitt::Tilt(w) => witt_out(w),
    }
}

/// Applies a closure generic over the coefficient ring to one or two
/// Witt vectors of the same kind.
macro_rules! on_witt {
    ($a:expr, |$x:ident| $body:expr) => {
        match $a {
            AnyWitt::Int($x) => $body.map(AnyWitt::Int),
            AnyWitt::Residue($x) => $body.map(AnyWitt::Residue),
            AnyWitt::Cyc($x) => $body.map(AnyWitt::Cyc),
            AnyWitt::Tilt($x) => $body.map(AnyWitt::Tilt),
        }
    };
    ($a:expr, $b:expr, |$x:ident, $y:ident| $body:expr) => {
        match ($a, $b) {
            (AnyWitt::Int($x), AnyWitt::Int($y)) => $body.map(AnyWitt::Int),
            (AnyWitt::Residue($x), AnyWitt::Residue($y)) => $body.map(AnyWitt::Residue),
            (AnyWitt::Cyc($x), AnyWitt::Cyc($y)) => $body.map(AnyWitt::Cyc),
            (AnyWitt::Tilt($x), AnyWitt::Tilt($y)) => $body.map(AnyWitt::Tilt),
            (x, y) => Err(Error::RingMismatch(format!(
                "{} and {}",
                x.kind(),
                y.kind()
            ))),
        }
    };
}

fn dispatch(op: &str, a: &Args) -> Result<Output, Error> {
    match op {
        "ghost" => {
            let w = a.witt("witt")?;
            let value = match &w {
                AnyWitt::Int(w) => Value::Array(w.ghost().iter().map(ToJson::to_json).collect()),
                AnyWitt::Residue(w) => {
                    Value::Array(w.ghost().iter().map(ToJson::to_json).collect())
                }
                AnyWitt::Cyc(w) => Value::Array(w.ghost().iter().map(ToJson::to_json).collect()),
                AnyWitt::Tilt(w) => Value::Array(w.ghost().iter().map(ToJson::to_json).collect()),
            };
            Ok(Output {
                value,
                effective_precision: any_out(w).effective_precision,
            })
        }
        "from_ghost" => {
            let ghost = a.field("ghost")?.as_array().ok_or_else(|| {
                Error::InvalidParameter("\"ghost\" must be an array of integers".into())
            })?;
            let ints = ghost
                .iter()
                .map(|v| match a.dec.coeff(v)? {
                    Coeff::Int(k) => Ok(k.value().clone()),
                    _ => Err(Error::InvalidParameter(
                        "ghost components must be integers".into(),
                    )),
                })
                .collect::<Result<Vec<BigInt>, Error>>()?;
            let p = a.ctx().p;
            let scaled = a
                .params
                .get("scaled")
                .and_then(Value::as_bool)
                .unwrap_or(false);
            if scaled {
                let (k, w) = witt::ghost_inverse_scaled(p, &ints)?;
                return Ok(Output {
                    value: json!({"scale_exponent": k, "witt": w.to_json()}),
                    effective_precision: None,
                });
            }
            let w =
                witt::ghost_inverse(&ints.into_iter().map(|k| Int::new(p, k)).collect::<Vec<_>>())?;
            Ok(witt_out(w))
        }
        "add" | "sub" | "mul" => {
            let (x, y) = (a.witt("a")?, a.witt("b")?);
            let backend = a.backend()?;
            let r = on_witt!(x, y, |x, y| match op {
                "add" => x.add_with(&y, backend),
                "sub" => x.add_with(&y.neg(), backend),
                _ => x.mul_with(&y, backend),
            })?;
            Ok(any_out(r))
        }
        "neg" => Ok(any_out(on_witt!(a.witt("witt")?, |x| Ok::<_, Error>(
            x.neg()
        ))?)),
        "teich" => {
            let n = a.usize_or("len", a.ctx().len)?;
            let x = a.dec.coeff(a.field("x")?)?;
            Ok(match x {
                Coeff::Int(x) => witt_out(WittVec::teichmuller(&x, n)),
                Coeff::Residue(x) => witt_out(WittVec::teichmuller(&x, n)),
                Coeff::Cyc(x) => witt_out(WittVec::teichmuller(&x, n)),
                Coeff::Tilt(x) => witt_out(WittVec::teichmuller(&x, n)),
            })
        }
        "F" => {
            let k = a.usize_or("times", 1)?;
            Ok(any_out(on_witt!(a.witt("witt")?, |x| x.frobenius_pow(k))?))
        }
        "V" => Ok(any_out(on_witt!(a.witt("witt")?, |x| Ok::<_, Error>(
            x.verschiebung()
        ))?)),
        "R" => Ok(any_out(on_witt!(a.witt("witt")?, |x| x.restrict())?)),
        "divide" => {
            let x = a.witt("a")?;
            if a.params
                .get("by_p")
                .and_then(Value::as_bool)
                .unwrap_or(false)
            {
                return Ok(any_out(on_witt!(x, |x| x.divide_by_p())?));
            }
            Ok(any_out(
                on_witt!(x, a.witt("b")?, |x, y| x.divide_exact(&y))?
            ))
        }
        "theta_prime" => {
            let x = a.dec.cyc(a.field("x")?)?;
            Ok(witt_out(theta::theta_prime(&x, a.usize("n")?)))
        }
        "theta" => {
            let w = a.dec.tilt_witt(a.field("witt")?)?;
            let digits = a.usize_or("digits", a.ctx().prec as usize)? as u32;
            let r = theta::theta_n(&w, a.usize("n")?, digits)?;
            Ok(Output {
                value: json!({"theta": r.value.to_json(), "consumed_window": r.consumed_window}),
                effective_precision: Some(r.effective_precision),
            })
        }
        "xi" => {
            let n = a.usize("n")? as u32;
            let len = a.usize_or("len", a.ctx().len)?;
            let depth = a.ctx().depth;
            let window = a.usize_or("window", (depth + 1).saturating_sub(n) as usize)?;
            Ok(witt_out(theta::xi_closed_form(
                a.ctx().p,
                n,
                len,
                window,
                depth,
            )?))
        }
        "roots" => {
            let w = a.dec.cyc_witt(a.field("witt")?)?;
            let m = a.usize("m")? as u32;
            let zeta = theta::classify_root_of_unity(&w, m)?;
            Ok(Output {
                effective_precision: zeta.digits(),
                value: zeta.to_json(),
            })
        }
        "tilt_valuation" => {
            let x = match a.params.get("x") {
                Some(v) => a.dec.tilt(v)?,
                None => a.dec.tilt(&Value::Object(a.params.clone()))?,
            };
            Ok(Output {
                value: json!(x.valuation().to_string()),
                effective_precision: Some(x.window() as u32),
            })
        }
        "tr_beta" => {
            let b = a.model()?.beta(a.usize("n")?)?;
            Ok(Output {
                effective_precision: b.coeff().effective_precision(),
                value: b.to_json(),
            })
        }
        "tr_R" | "tr_F" | "tr_galois" => {
            let model = a.model()?;
            let class = a.dec.tr_class(a.field("class")?)?;
            let r = match op {
                "tr_R" => model.restriction(&class)?,
                "tr_F" => model.frobenius(&class)?,
                _ => model.galois(&class, as_i64(a.field("u")?, "u")?)?,
            };
            Ok(Output {
                effective_precision: r.coeff().effective_precision(),
                value: r.to_json(),
            })
        }
        "tc_check" => {
            let model = a.model()?;
            let q = a.usize("q")? as u32;
            let c = a.field("c")?;
            let window = a.usize_or("window", (a.ctx().depth as usize).saturating_sub(1).max(1))?;
            let c: WittVec<TiltElt> = match c.as_array() {
                Some(xs) if xs.iter().all(Value::is_i64) => {
                    let xs: Vec<i64> = xs.iter().filter_map(Value::as_i64).collect();
                    model.prime_field_witt(&xs, window)?
                }
                _ => a.dec.tilt_witt(c)?,
            };
            Ok(Output {
                value: json!(model.tc_kernel_check(q, &c)?),
                effective_precision: Some(window as u32),
            })
        }
        _ => unreachable!("op table and dispatch agree"),
    }
}

#[cfg(test)]
mod tests;
