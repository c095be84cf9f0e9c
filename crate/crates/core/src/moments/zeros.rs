//! Sign changes of `Z(t)`, located on a uniform grid and refined by a
//! safeguarded regula falsi.

use rayon::prelude::*;
use rug::Float;

use crate::error::{Error, Result};
use crate::zeta::{CriticalLine, PrecisionContext, RS_T_MIN};

/// Largest grid step used to look for sign changes.
pub const GRID_STEP: f64 = 0.05;
/// Bracket width at which refinement stops.
pub const REFINE_TOL: f64 = 1e-12;
/// Allowed gap between the number found and the smooth zero count.
pub const COUNT_SLACK: f64 = 5.0;

const GRID_CHUNK: usize = 256;
const SUBGRID: usize = 32;

/// Ascending ordinates of sign changes of `Z` in `range`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ZeroList {
    pub ordinates: Vec<f64>,
    pub range: (f64, f64),
    /// Places where two sign changes were found inside one grid step.
    pub warnings: Vec<String>,
}

impl ZeroList {
    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }
}

/// `(t / 2 pi) log(t / 2 pi e) + 7/8`, the smooth part of the zero count below `t`.
pub fn rvm_count(t: f64) -> f64 {
    let x = t / (2.0 * std::f64::consts::PI);
    x * (x.ln() - 1.0) + 0.875
}

/// Sign changes of `Z` on `[t_lo, t_hi]` with a fresh Riemann–Siegel evaluator.
pub fn locate_zeros(t_lo: f64, t_hi: f64, ctx: &PrecisionContext) -> Result<ZeroList> {
    if t_hi <= t_lo {
        return locate_zeros_with(&|_| Ok(1.0), t_lo, t_hi);
    }
    let line = CriticalLine::new(t_hi, ctx)?;
    let bits = ctx.bits();
    locate_zeros_with(
        &|t| Ok(line.z(&Float::with_val(bits, t), 4)?.z.to_f64()),
        t_lo,
        t_hi,
    )
}

/// Same as [`locate_zeros`] with a caller-supplied `Z`.
pub fn locate_zeros_with<F>(z: &F, t_lo: f64, t_hi: f64) -> Result<ZeroList>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    if !(t_lo >= RS_T_MIN) || !t_hi.is_finite() {
        return Err(Error::Domain(format!(
            "zero search needs {RS_T_MIN} <= t_lo <= t_hi, got ({t_lo}, {t_hi})"
        )));
    }
    if t_hi < t_lo {
        return Err(Error::InvalidArgument(format!("empty range ({t_lo}, {t_hi})")));
    }
    let mut out = ZeroList {
        range: (t_lo, t_hi),
        ..ZeroList::default()
    };
    if t_hi == t_lo {
        return Ok(out);
    }
    let steps = ((t_hi - t_lo) / GRID_STEP).ceil() as usize;
    let h = (t_hi - t_lo) / steps as f64;
    let at = |i: usize| if i == steps { t_hi } else { t_lo + h * i as f64 };

    let idx: Vec<usize> = (0..=steps).collect();
    let values: Vec<f64> = idx
        .par_chunks(GRID_CHUNK)
        .map(|c| c.iter().map(|&i| z(at(i))).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?
        .concat();

    let mut brackets = Vec::new();
    for i in 0..steps {
        let (a, b) = (values[i], values[i + 1]);
        if a == 0.0 && i > 0 {
            continue;
        }
        if a.signum() != b.signum() || b == 0.0 {
            brackets.push((at(i), at(i + 1), a, b));
        } else if i > 0 && is_dip(values[i - 1], a, b) {
            // a pair of close zeros can hide inside one step
            let sub = (at(i - 1), at(i + 1));
            let hs = (sub.1 - sub.0) / SUBGRID as f64;
            let mut prev = (sub.0, values[i - 1]);
            let mut found = 0;
            for j in 1..=SUBGRID {
                let t = if j == SUBGRID { sub.1 } else { sub.0 + hs * j as f64 };
                let v = z(t)?;
                if v.signum() != prev.1.signum() {
                    brackets.push((prev.0, t, prev.1, v));
                    found += 1;
                }
                prev = (t, v);
            }
            if found > 0 {
                out.warnings.push(format!(
                    "{found} sign changes within one grid step near t = {:.6}",
                    at(i)
                ));
            }
        }
    }
    brackets.sort_by(|x, y| x.0.total_cmp(&y.0));

    out.ordinates = brackets
        .par_iter()
        .map(|&(a, b, fa, fb)| refine(z, a, b, fa, fb))
        .collect::<Result<Vec<_>>>()?;
    out.ordinates.dedup_by(|x, y| (*x - *y).abs() <= REFINE_TOL);

    let expected = rvm_count(t_hi) - rvm_count(t_lo).max(0.0);
    let found = out.ordinates.len() as f64;
    if (found - expected).abs() > COUNT_SLACK {
        return Err(Error::ZeroLocation(format!(
            "found {found} sign changes on ({t_lo}, {t_hi}), smooth count {expected:.2}"
        )));
    }
    Ok(out)
}

/// Interior local minimum of `|Z|` without a sign change, which may hide two zeros.
fn is_dip(prev: f64, cur: f64, next: f64) -> bool {
    prev.signum() == cur.signum() && cur.signum() == next.signum() && cur.abs() < prev.abs() && cur.abs() < next.abs()
}

/// Illinois regula falsi, with the new point kept at least `REFINE_TOL / 2`
/// inside the bracket so the bracket itself collapses.
fn refine<F>(z: &F, mut a: f64, mut b: f64, mut fa: f64, mut fb: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    let mut side = 0;
    for _ in 0..200 {
        if b - a <= REFINE_TOL {
            break;
        }
        let guard = 0.5 * REFINE_TOL;
        let mut c = (a * fb - b * fa) / (fb - fa);
        if !c.is_finite() {
            c = 0.5 * (a + b);
        }
        c = c.clamp(a + guard, b - guard);
        let fc = z(c)?;
        if fc == 0.0 {
            return Ok(c);
        }
        if fc.signum() == fb.signum() {
            b = c;
            fb = fc;
            if side == -1 {
                fa *= 0.5;
            }
            side = -1;
        } else {
            a = c;
            fa = fc;
            if side == 1 {
                fb *= 0.5;
            }
            side = 1;
        }
    }
    Ok(0.5 * (a + b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smooth_count_near_hundred() {
        // 29 zeros below t = 100
        assert!((rvm_count(100.0) - 29.0).abs() < 1.0);
    }

    #[test]
    fn refine_on_a_line() {
        let f = |t: f64| Ok(t - 12.345678901234);
        let r = refine(&f, 12.0, 13.0, f(12.0).unwrap(), f(13.0).unwrap()).unwrap();
        assert!((r - 12.345678901234).abs() < 1e-12);
    }

    #[test]
    fn close_pair_is_found() {
        // two roots 0.01 apart inside one grid step
        let f = |t: f64| Ok((t - 20.013) * (t - 20.023) * 100.0 + 1e-4 * (t - 20.0).sin());
        let zs = locate_zeros_with(&f, 19.9, 20.2).unwrap();
        assert_eq!(zs.len(), 2);
        assert!(!zs.warnings.is_empty());
    }
}
