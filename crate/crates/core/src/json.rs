//! JSON encodings of ring elements, Witt vectors, tilt elements and TR classes.
//!
//! ```text
//! {"ring":"residue","p":3,"depth":2,"coeffs":[1,0,2,0,0,0]}
//! {"ring":"cyc","p":3,"depth":2,"prec":6,"coeffs":[...]}      x-basis
//! {"witt":{"len":2,"coords":[1,1]}}                           integers
//! {"tilt":{"window":[1,3],"coords":[<residue>,...]}}
//! {"tr":{"level":2,"deg":2,"coeff":<witt>}}
//! ```
//!
//! Tilt elements may also be given as expressions:
//! `{"epsilon":k,"window":m}`, `{"const":c,"window":m}`,
//! `{"add":[a,b]}`, `{"sub":[a,b]}`, `{"mul":[a,b]}`, `{"pow":[a,k]}`.

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::arith::{CycElt, Int, PAdicRing, ResidueElt, Ring};
use crate::context::PrecisionCtx;
use crate::error::{Error, Result};
use crate::tilt::TiltElt;
use crate::tr::TRClass;
use crate::witt::WittVec;

pub trait ToJson {
    fn to_json(&self) -> Value;
}

impl ToJson for Int {
    fn to_json(&self) -> Value {
        match i64::try_from(self.value()) {
            Ok(v) => json!(v),
            Err(_) => json!(self.value().to_string()),
        }
    }
}

impl ToJson for ResidueElt {
    fn to_json(&self) -> Value {
        json!({"ring": "residue", "p": self.p(), "depth": self.depth(), "coeffs": self.coeffs()})
    }
}

impl ToJson for CycElt {
    fn to_json(&self) -> Value {
        json!({
            "ring": "cyc",
            "p": self.p(),
            "depth": self.depth(),
            "prec": self.digits(),
            "coeffs": self.coeffs(),
        })
    }
}

impl ToJson for TiltElt {
    fn to_json(&self) -> Value {
        let coords: Vec<Value> = self.levels().iter().map(ToJson::to_json).collect();
        json!({"tilt": {"window": [1, self.window()], "coords": coords}})
    }
}

impl<R: ToJson + Ring> ToJson for WittVec<R> {
    fn to_json(&self) -> Value {
        let coords: Vec<Value> = self.coords().iter().map(ToJson::to_json).collect();
        json!({"witt": {"len": self.len(), "coords": coords}})
    }
}

impl ToJson for TRClass {
    fn to_json(&self) -> Value {
        json!({"tr": {"level": self.level(), "deg": self.degree(), "coeff": self.coeff().to_json()}})
    }
}

/// A Witt vector over any of the supported coefficient rings.
#[derive(Debug, Clone)]
pub enum AnyWitt {
    Int(WittVec<Int>),
    Residue(WittVec<ResidueElt>),
    Cyc(WittVec<CycElt>),
    Tilt(WittVec<TiltElt>),
}

impl AnyWitt {
    pub fn to_json(&self) -> Value {
        match self {
            AnyWitt::Int(w) => w.to_json(),
            AnyWitt::Residue(w) => w.to_json(),
            AnyWitt::Cyc(w) => w.to_json(),
            AnyWitt::Tilt(w) => w.to_json(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            AnyWitt::Int(w) => w.len(),
            AnyWitt::Residue(w) => w.len(),
            AnyWitt::Cyc(w) => w.len(),
            AnyWitt::Tilt(w) => w.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn kind(&self) -> &'static str {
        match self {
            AnyWitt::Int(_) => "integer",
            AnyWitt::Residue(_) => "residue",
            AnyWitt::Cyc(_) => "cyc",
            AnyWitt::Tilt(_) => "tilt",
        }
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

fn get<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| bad(format!("missing field \"{key}\"")))
}

pub fn as_u64(v: &Value, what: &str) -> Result<u64> {
    v.as_u64()
        .ok_or_else(|| bad(format!("\"{what}\" must be a non-negative integer")))
}

pub fn as_i64(v: &Value, what: &str) -> Result<i64> {
    v.as_i64()
        .ok_or_else(|| bad(format!("\"{what}\" must be an integer")))
}

fn as_obj<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| bad(format!("{what} must be an object")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| bad(format!("{what} must be an array")))
}

fn int_list(v: &Value, what: &str) -> Result<Vec<i64>> {
    as_array(v, what)?.iter().map(|x| as_i64(x, what)).collect()
}

fn big_int(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

/// Decodes JSON against a precision context, which supplies the prime
/// and default precision, depth and Witt length bounds.
#[derive(Debug, Clone, Copy)]
pub struct Decoder {
    pub ctx: PrecisionCtx,
}

/// A single coefficient ring element.
#[derive(Debug, Clone)]
pub enum Coeff {
    Int(Int),
    Residue(ResidueElt),
    Cyc(CycElt),
    Tilt(TiltElt),
}

impl Decoder {
    pub fn new(ctx: PrecisionCtx) -> Self {
        Decoder { ctx }
    }

    fn prime(&self, obj: &Map<String, Value>) -> Result<u64> {
        let p = obj.get("p").map_or(Ok(self.ctx.p), |v| as_u64(v, "p"))?;
        if p != self.ctx.p {
            return Err(Error::RingMismatch(format!(
                "p = {p} but the context has p = {}",
                self.ctx.p
            )));
        }
        Ok(p)
    }

    fn depth(&self, obj: &Map<String, Value>) -> Result<u32> {
        let d = as_u64(get(obj, "depth")?, "depth")? as u32;
        if d == 0 || d > self.ctx.depth {
            return Err(Error::Precision(format!(
                "tower depth {d} outside [1, {}]",
                self.ctx.depth
            )));
        }
        Ok(d)
    }

    pub fn coeff(&self, v: &Value) -> Result<Coeff> {
        if let Some(k) = big_int(v) {
            return Ok(Coeff::Int(Int::new(self.ctx.p, k)));
        }
        let obj = as_obj(v, "a ring element")?;
        match obj.get("ring").and_then(Value::as_str) {
            Some("residue") => {
                let p = self.prime(obj)?;
                let coeffs = int_list(get(obj, "coeffs")?, "coeffs")?;
                Ok(Coeff::Residue(ResidueElt::new(
                    p,
                    self.depth(obj)?,
                    &coeffs,
                )?))
            }
            Some("cyc") => {
                let p = self.prime(obj)?;
                let prec = obj
                    .get("prec")
                    .map_or(Ok(self.ctx.prec as u64), |x| as_u64(x, "prec"))?;
                let coeffs = int_list(get(obj, "coeffs")?, "coeffs")?;
                Ok(Coeff::Cyc(CycElt::new(
                    p,
                    self.depth(obj)?,
                    prec as u32,
                    &coeffs,
                )?))
            }
            Some("integer") => {
                let k = big_int(get(obj, "value")?).ok_or_else(|| bad("bad integer"))?;
                Ok(Coeff::Int(Int::new(self.ctx.p, k)))
            }
            Some(other) => Err(bad(format!("unknown ring \"{other}\""))),
            None => Ok(Coeff::Tilt(self.tilt(v)?)),
        }
    }

    pub fn residue(&self, v: &Value) -> Result<ResidueElt> {
        match self.coeff(v)? {
            Coeff::Residue(r) => Ok(r),
            _ => Err(bad("expected a residue element")),
        }
    }

    pub fn cyc(&self, v: &Value) -> Result<CycElt> {
        match self.coeff(v)? {
            Coeff::Cyc(c) => Ok(c),
            Coeff::Int(k) => {
                Ok(CycElt::constant(self.ctx.p, 1, self.ctx.prec, 0).int_like(k.value()))
            }
            _ => Err(bad("expected a cyclotomic element")),
        }
    }

    pub fn tilt(&self, v: &Value) -> Result<TiltElt> {
        let obj = as_obj(v, "a tilt element")?;
        let window = |o: &Map<String, Value>| -> Result<usize> {
            let m = as_u64(get(o, "window")?, "window")? as usize;
            if m == 0 {
                return Err(Error::Precision("empty tilt window".into()));
            }
            Ok(m)
        };
        if let Some(t) = obj.get("tilt") {
            let t = as_obj(t, "tilt")?;
            let coords = as_array(get(t, "coords")?, "coords")?
                .iter()
                .map(|c| self.residue(c))
                .collect::<Result<Vec<_>>>()?;
            if let Some(w) = t.get("window") {
                let w = int_list(w, "window")?;
                if w.len() != 2 || w[0] != 1 || w[1] as usize != coords.len() {
                    return Err(bad("window must be [1, number of coords]"));
                }
            }
            return TiltElt::new(coords);
        }
        if let Some(k) = obj.get("epsilon") {
            let k = as_u64(k, "epsilon")? as u32;
            return TiltElt::epsilon(self.ctx.p, k, window(obj)?, self.ctx.depth);
        }
        if let Some(c) = obj.get("const") {
            return Ok(TiltElt::constant(
                self.ctx.p,
                as_i64(c, "const")?,
                window(obj)?,
            ));
        }
        for op in ["add", "sub", "mul"] {
            if let Some(args) = obj.get(op) {
                let args = as_array(args, op)?;
                if args.len() != 2 {
                    return Err(bad(format!("\"{op}\" takes two operands")));
                }
                let (a, b) = (self.tilt(&args[0])?, self.tilt(&args[1])?);
                if a.window() != b.window() {
                    let m = a.window().min(b.window());
                    return self.combine(op, &a.restrict_window(m)?, &b.restrict_window(m)?);
                }
                return self.combine(op, &a, &b);
            }
        }
        if let Some(args) = obj.get("pow") {
            let args = as_array(args, "pow")?;
            if args.len() != 2 {
                return Err(bad("\"pow\" takes a base and an exponent"));
            }
            return Ok(self.tilt(&args[0])?.pow(as_u64(&args[1], "exponent")?));
        }
        Err(bad("unrecognized tilt element"))
    }

    fn combine(&self, op: &str, a: &TiltElt, b: &TiltElt) -> Result<TiltElt> {
        Ok(match op {
            "add" => a.add(b),
            "sub" => a.sub(b),
            _ => a.mul(b),
        })
    }

    /// A Witt vector: `{"witt":{"len":n,"coords":[..]}}` or a bare array.
    pub fn witt(&self, v: &Value) -> Result<AnyWitt> {
        let coords = match v.get("witt") {
            Some(w) => {
                let w = as_obj(w, "witt")?;
                let coords = as_array(get(w, "coords")?, "coords")?;
                if let Some(n) = w.get("len") {
                    if as_u64(n, "len")? as usize != coords.len() {
                        return Err(Error::Length("len does not match the coordinates".into()));
                    }
                }
                coords
            }
            None => as_array(v, "a Witt vector")?,
        };
        if coords.is_empty() {
            return Err(Error::Length("Witt vectors have length at least 1".into()));
        }
        if coords.len() > self.ctx.len + 8 {
            return Err(Error::Length(format!(
                "length {} is unreasonably large",
                coords.len()
            )));
        }
        let coeffs = coords
            .iter()
            .map(|c| self.coeff(c))
            .collect::<Result<Vec<_>>>()?;
        self.collect(coeffs)
    }

    fn collect(&self, coeffs: Vec<Coeff>) -> Result<AnyWitt> {
        let mixed = || Error::RingMismatch("coordinates from different rings".into());
        Ok(match &coeffs[0] {
            Coeff::Int(_) => AnyWitt::Int(WittVec::new(
                coeffs
                    .into_iter()
                    .map(|c| {
                        if let Coeff::Int(x) = c {
                            Ok(x)
                        } else {
                            Err(mixed())
                        }
                    })
                    .collect::<Result<_>>()?,
            )?),
            Coeff::Residue(_) => AnyWitt::Residue(WittVec::new(
                coeffs
                    .into_iter()
                    .map(|c| {
                        if let Coeff::Residue(x) = c {
                            Ok(x)
                        } else {
                            Err(mixed())
                        }
                    })
                    .collect::<Result<_>>()?,
            )?),
            Coeff::Cyc(_) => AnyWitt::Cyc(WittVec::new(
                coeffs
                    .into_iter()
                    .map(|c| {
                        if let Coeff::Cyc(x) = c {
                            Ok(x)
                        } else {
                            Err(mixed())
                        }
                    })
                    .collect::<Result<_>>()?,
            )?),
            Coeff::Tilt(_) => AnyWitt::Tilt(WittVec::new(
                coeffs
                    .into_iter()
                    .map(|c| {
                        if let Coeff::Tilt(x) = c {
                            Ok(x)
                        } else {
                            Err(mixed())
                        }
                    })
                    .collect::<Result<_>>()?,
            )?),
        })
    }

    /// A Witt vector over `O/p^N`; integer coordinates are mapped in.
    pub fn cyc_witt(&self, v: &Value) -> Result<WittVec<CycElt>> {
        match self.witt(v)? {
            AnyWitt::Cyc(w) => Ok(w),
            AnyWitt::Int(w) => {
                let like = CycElt::constant(self.ctx.p, 1, self.ctx.prec, 0);
                Ok(w.map(|k| like.int_like(k.value())))
            }
            other => Err(bad(format!(
                "expected cyclotomic coordinates, got {}",
                other.kind()
            ))),
        }
    }

    pub fn tilt_witt(&self, v: &Value) -> Result<WittVec<TiltElt>> {
        match self.witt(v)? {
            AnyWitt::Tilt(w) => Ok(w),
            other => Err(bad(format!(
                "expected tilt coordinates, got {}",
                other.kind()
            ))),
        }
    }

    pub fn tr_class(&self, v: &Value) -> Result<TRClass> {
        let obj = as_obj(get(as_obj(v, "a TR class")?, "tr")?, "tr")?;
        let level = as_u64(get(obj, "level")?, "level")? as usize;
        let deg = as_u64(get(obj, "deg")?, "deg")? as u32;
        TRClass::new(level, deg, self.cyc_witt(get(obj, "coeff")?)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dec() -> Decoder {
        Decoder::new(PrecisionCtx::default())
    }

    #[test]
    fn integer_witt_round_trip() {
        let v = json!({"witt": {"len": 2, "coords": [1, 1]}});
        let AnyWitt::Int(w) = dec().witt(&v).unwrap() else {
            panic!("not integer")
        };
        assert_eq!(w.to_json(), v);
    }

    #[test]
    fn cyc_and_residue_round_trip() {
        let c = CycElt::zeta_power(3, 2, 6, 4);
        let Coeff::Cyc(back) = dec().coeff(&c.to_json()).unwrap() else {
            panic!()
        };
        assert_eq!(back, c);
        let r = ResidueElt::new(3, 2, &[1, 2, 0, 1]).unwrap();
        assert_eq!(dec().residue(&r.to_json()).unwrap(), r);
    }

    #[test]
    fn tilt_expressions() {
        let e = json!({"sub": [{"epsilon": 0, "window": 3}, {"const": 1, "window": 3}]});
        let t = dec().tilt(&e).unwrap();
        assert_eq!(t.valuation().to_string(), "3/2");
        assert_eq!(dec().tilt(&t.to_json()).unwrap(), t);
        assert!(dec().tilt(&json!({"epsilon": 2, "window": 6})).is_err());
    }

    #[test]
    fn rejects_mixed_and_malformed() {
        let r = ResidueElt::constant(3, 1, 1).to_json();
        assert!(dec().witt(&json!([1, r])).is_err());
        assert!(dec().witt(&json!([])).is_err());
        assert!(dec()
            .coeff(&json!({"ring": "cyc", "p": 5, "depth": 1, "coeffs": [1]}))
            .is_err());
        assert!(dec()
            .witt(&json!({"witt": {"len": 3, "coords": [1]}}))
            .is_err());
    }
}
