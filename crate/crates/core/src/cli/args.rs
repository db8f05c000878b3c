//! `RE,IM` complex arguments.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexArg(pub Complex64);

impl FromStr for ComplexArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (re, im) = s
            .split_once(',')
            .ok_or_else(|| format!("expected RE,IM but got {s:?}"))?;
        let parse = |t: &str| -> Result<f64, String> {
            let v: f64 = t
                .trim()
                .parse()
                .map_err(|_| format!("not a decimal number: {t:?}"))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(format!("non-finite component: {t:?}"))
            }
        };
        Ok(ComplexArg(Complex64::new(parse(re)?, parse(im)?)))
    }
}

impl fmt::Display for ComplexArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.0.re, self.0.im)
    }
}
