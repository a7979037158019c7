//! Globally adaptive Gauss–Kronrod (7/15 point) integration on finite intervals.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_intervals: usize,
}

impl Tolerance {
    /// Default targets, floored at a few hundred ulps of `T` so that single
    /// precision callers still converge.
    pub fn for_scalar<T: Scalar>() -> Self {
        let floor = 100.0 * T::epsilon().as_f64();
        let d = Tolerance::default();
        Tolerance {
            abs: d.abs.max(floor),
            rel: d.rel.max(floor),
            ..d
        }
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs: 1e-10,
            rel: 1e-12,
            max_intervals: 500,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral<T> {
    pub value: T,
    pub error: T,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment<T> {
    a: T,
    b: T,
    value: T,
    error: T,
}

fn gauss_kronrod<T: Scalar, F: Fn(T) -> T>(f: &F, a: T, b: T) -> Segment<T> {
    let half = T::lit(0.5);
    let center = half * (a + b);
    let half_len = half * (b - a);
    let f_center = f(center);

    let mut kronrod = f_center * T::lit(WGK[7]);
    let mut gauss = f_center * T::lit(WG[3]);
    let mut abs_sum = kronrod.abs();
    let mut fvals = [(T::zero(), T::zero()); 7];

    for j in 0..7 {
        let dx = half_len * T::lit(XGK[j]);
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fvals[j] = (f1, f2);
        kronrod = kronrod + T::lit(WGK[j]) * (f1 + f2);
        abs_sum = abs_sum + T::lit(WGK[j]) * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss = gauss + T::lit(WG[j / 2]) * (f1 + f2);
        }
    }

    let mean = kronrod * half;
    let mut asc = T::lit(WGK[7]) * (f_center - mean).abs();
    for j in 0..7 {
        asc = asc + T::lit(WGK[j]) * ((fvals[j].0 - mean).abs() + (fvals[j].1 - mean).abs());
    }

    let scale = half_len.abs();
    let value = kronrod * half_len;
    let res_abs = abs_sum * scale;
    let res_asc = asc * scale;
    let mut error = ((kronrod - gauss) * half_len).abs();

    if res_asc != T::zero() && error != T::zero() {
        let ratio = (T::lit(200.0) * error / res_asc).powf(T::lit(1.5));
        error = res_asc * ratio.min(T::one());
    }
    let floor = T::lit(50.0) * T::epsilon() * res_abs;
    if res_abs > T::min_positive_value() / (T::lit(50.0) * T::epsilon()) && floor > error {
        error = floor;
    }

    Segment { a, b, value, error }
}

/// Integrate `f` over `[a, b]`, bisecting the segment with the largest error
/// estimate until the total error is within tolerance.
pub fn integrate<T, F>(f: F, a: T, b: T, tol: Tolerance) -> Result<Integral<T>>
where
    T: Scalar,
    F: Fn(T) -> T,
{
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidArgument("integration bounds must be finite".into()));
    }
    if a == b {
        return Ok(Integral {
            value: T::zero(),
            error: T::zero(),
            intervals: 0,
        });
    }

    let mut segments = vec![gauss_kronrod(&f, a, b)];
    loop {
        let value = segments.iter().fold(T::zero(), |s, seg| s + seg.value);
        let error = segments.iter().fold(T::zero(), |s, seg| s + seg.error);
        let target = T::lit(tol.abs).max(T::lit(tol.rel) * value.abs());

        if !(value.is_finite() && error.is_finite()) {
            return Err(Error::QuadratureFailure {
                estimate: value.as_f64(),
                error: error.as_f64(),
                tolerance: target.as_f64(),
            });
        }
        if error <= target {
            return Ok(Integral {
                value,
                error,
                intervals: segments.len(),
            });
        }
        if segments.len() >= tol.max_intervals {
            return Err(Error::QuadratureFailure {
                estimate: value.as_f64(),
                error: error.as_f64(),
                tolerance: target.as_f64(),
            });
        }

        let worst = segments
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.partial_cmp(&y.1.error).unwrap())
            .map(|(i, _)| i)
            .unwrap();
        let seg = segments.swap_remove(worst);
        let mid = T::lit(0.5) * (seg.a + seg.b);
        if mid <= seg.a || mid >= seg.b {
            // Segment no longer splittable at this precision.
            return Err(Error::QuadratureFailure {
                estimate: value.as_f64(),
                error: error.as_f64(),
                tolerance: target.as_f64(),
            });
        }
        segments.push(gauss_kronrod(&f, seg.a, mid));
        segments.push(gauss_kronrod(&f, mid, seg.b));
    }
}
