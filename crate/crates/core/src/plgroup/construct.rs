use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exactnum::{decompose_power_sum, Dyadic};
use crate::plgroup::FElement;

fn check_partition(pts: &[Dyadic], name: &str) -> Result<()> {
    if pts.len() < 2 || !pts[0].is_zero() || pts[pts.len() - 1] != Dyadic::one() {
        return Err(Error::Precondition(format!("{name} must run from 0 to 1")));
    }
    if pts.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition(format!("{name} must be strictly increasing")));
    }
    Ok(())
}

/// An element of `F` mapping the partition `xs` onto `ys` point by point.
///
/// Each segment is cut into powers of two: both lengths are decomposed
/// with `k` = the larger binary digit count and matched largest to
/// largest; equal lengths give a single slope-1 piece. When `fixed = Some(j)`
/// names a segment `[xs[j], xs[j+1]]` whose endpoints agree with `ys`, the
/// result is the identity there.
pub fn from_partitions(xs: &[Dyadic], ys: &[Dyadic], fixed: Option<usize>) -> Result<FElement> {
    check_partition(xs, "source partition")?;
    check_partition(ys, "target partition")?;
    if xs.len() != ys.len() {
        return Err(Error::Precondition(format!(
            "partitions have {} and {} points",
            xs.len(),
            ys.len()
        )));
    }
    if let Some(j) = fixed {
        if j + 1 >= xs.len() || xs[j] != ys[j] || xs[j + 1] != ys[j + 1] {
            return Err(Error::Precondition(format!(
                "segment {j} is not common to both partitions"
            )));
        }
    }
    let mut breaks = alloc::vec![(Dyadic::zero(), Dyadic::zero())];
    for i in 1..xs.len() {
        let (mut x, mut y) = (xs[i - 1].clone(), ys[i - 1].clone());
        let lx = &xs[i] - &x;
        let ly = &ys[i] - &y;
        if lx != ly {
            let k = lx.popcount().max(ly.popcount());
            let px = decompose_power_sum(&lx, k)?;
            let py = decompose_power_sum(&ly, k)?;
            for (a, b) in px.iter().zip(&py).take(k - 1) {
                x = &x + &Dyadic::pow2(*a);
                y = &y + &Dyadic::pow2(*b);
                breaks.push((x.clone(), y.clone()));
            }
        }
        breaks.push((xs[i].clone(), ys[i].clone()));
    }
    FElement::new(breaks)
}

/// An element of `F` translating `[a, b]` by `h`: `γ(x) = x + h` there.
pub fn gamma_translation(a: &Dyadic, b: &Dyadic, h: &Dyadic) -> Result<FElement> {
    if !(a.is_positive() && a < b && *b < Dyadic::one()) {
        return Err(Error::Precondition(format!("need 0 < a < b < 1, got [{a}, {b}]")));
    }
    if h.is_zero() {
        return Err(Error::Precondition("translation amount must be nonzero".into()));
    }
    let (ah, bh) = (a + h, b + h);
    if !ah.is_positive() || bh >= Dyadic::one() {
        return Err(Error::Precondition(format!(
            "translated interval [{ah}, {bh}] leaves (0,1)"
        )));
    }
    from_partitions(
        &[Dyadic::zero(), a.clone(), b.clone(), Dyadic::one()],
        &[Dyadic::zero(), ah, bh, Dyadic::one()],
        None,
    )
}

/// Element supported in `[lo, hi]` with slope 2 at one end of the interval and
/// slope 1 at the other.
fn end_stretch(lo: &Dyadic, hi: &Dyadic, at_left: bool) -> Result<FElement> {
    let len = hi - lo;
    let e = Dyadic::pow2(len.floor_log2().expect("positive length") - 2);
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    if !lo.is_zero() {
        xs.push(Dyadic::zero());
        ys.push(Dyadic::zero());
    }
    let two_e = e.mul_pow2(1);
    let inner_x = [lo.clone(), lo + &e, hi - &e, hi.clone()];
    let inner_y = if at_left {
        [lo.clone(), lo + &two_e, hi - &e, hi.clone()]
    } else {
        [lo.clone(), lo + &e, hi - &two_e, hi.clone()]
    };
    xs.extend(inner_x);
    ys.extend(inner_y);
    if *hi != Dyadic::one() {
        xs.push(Dyadic::one());
        ys.push(Dyadic::one());
    }
    from_partitions(&xs, &ys, None)
}

/// Four elements of the stabilizer of the dyadic point `p` whose
/// log-slope quadruples are the unit vectors of `Z^4`.
pub fn stabilizer_generators(p: &Dyadic) -> Result<[FElement; 4]> {
    if !p.in_open_unit_interval() {
        return Err(Error::Precondition(format!("stabilizer point {p} must lie in (0,1)")));
    }
    let (zero, one) = (Dyadic::zero(), Dyadic::one());
    Ok([
        end_stretch(&zero, p, true)?,
        end_stretch(&zero, p, false)?,
        end_stretch(p, &one, true)?,
        end_stretch(p, &one, false)?,
    ])
}
