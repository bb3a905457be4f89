//! Scaled complementary error function.
//!
//! `erfcx(x) = exp(x^2) erfc(x)` evaluated with W. J. Cody's rational
//! Chebyshev approximations (Math. Comp. 23, 1969), which produce the scaled
//! value directly for `x > 0.46875` so no `exp(x^2)` ever overflows.

// Coefficient tables keep their published digits.
#![allow(clippy::excessive_precision)]

const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_3;
const SMALL: f64 = 0.468_75;
const MEDIUM: f64 = 4.0;
/// Below this `exp(x^2)` overflows.
const NEG_LIMIT: f64 = -26.628_735_713_751_4;

// |x| <= 0.46875: erf(x) = x * P(x^2) / Q(x^2)
const ERF_P: [f64; 5] = [
    3.161_123_743_870_565_6,
    113.864_154_151_050_16,
    377.485_237_685_302_02,
    3_209.377_589_138_469_5,
    0.185_777_706_184_603_15,
];
const ERF_Q: [f64; 4] = [
    23.601_290_952_344_121,
    244.024_637_934_444_17,
    1_282.616_526_077_372_3,
    2_844.236_833_439_170_6,
];

// 0.46875 < x <= 4: erfcx(x) = P(x) / Q(x)
const MID_P: [f64; 9] = [
    0.564_188_496_988_670_09,
    8.883_149_794_388_376,
    66.119_190_637_141_63,
    298.635_138_197_400_13,
    881.952_221_241_769_09,
    1_712.047_612_634_070_6,
    2_051.078_377_826_071_5,
    1_230.339_354_797_997_3,
    2.153_115_354_744_038_5e-8,
];
const MID_Q: [f64; 8] = [
    15.744_926_110_709_835,
    117.693_950_891_312_5,
    537.181_101_862_009_86,
    1_621.389_574_566_690_2,
    3_290.799_235_733_459_6,
    4_362.619_090_143_247_2,
    3_439.367_674_143_721_6,
    1_230.339_354_803_749_4,
];

// x > 4: erfcx(x) = (1/sqrt(pi) - z P(z) / Q(z)) / x with z = 1/x^2
const TAIL_P: [f64; 6] = [
    0.305_326_634_961_232_34,
    0.360_344_899_949_804_44,
    0.125_781_726_111_229_25,
    0.016_083_785_148_742_277,
    6.587_491_615_298_378e-4,
    0.016_315_387_137_302_098,
];
const TAIL_Q: [f64; 5] = [
    2.568_520_192_289_822_4,
    1.872_952_849_923_460_5,
    0.527_905_102_951_428_41,
    0.060_518_341_312_441_319,
    0.002_335_204_976_268_691_9,
];

fn erf_small_ratio(z: f64) -> f64 {
    let num = (((ERF_P[4] * z + ERF_P[0]) * z + ERF_P[1]) * z + ERF_P[2]) * z + ERF_P[3];
    let den = (((z + ERF_Q[0]) * z + ERF_Q[1]) * z + ERF_Q[2]) * z + ERF_Q[3];
    num / den
}

fn erfcx_mid(y: f64) -> f64 {
    let mut num = MID_P[8] * y;
    let mut den = y;
    for i in 0..7 {
        num = (num + MID_P[i]) * y;
        den = (den + MID_Q[i]) * y;
    }
    (num + MID_P[7]) / (den + MID_Q[7])
}

fn erfcx_tail(y: f64) -> f64 {
    let z = 1.0 / (y * y);
    let mut num = TAIL_P[5] * z;
    let mut den = z;
    for i in 0..4 {
        num = (num + TAIL_P[i]) * z;
        den = (den + TAIL_Q[i]) * z;
    }
    let ratio = z * (num + TAIL_P[4]) / (den + TAIL_Q[4]);
    (FRAC_1_SQRT_PI - ratio) / y
}

/// `exp(x^2)` computed as a product of two exponentials so the rounding of
/// `x^2` does not get amplified for large |x|.
fn exp_square(x: f64) -> f64 {
    let head = (x * 16.0).trunc() / 16.0;
    (head * head).exp() * ((x - head) * (x + head)).exp()
}

/// Scaled complementary error function `exp(x^2) * erfc(x)`.
///
/// Finite for every `x > -26.6`; returns `f64::INFINITY` below that.
pub fn erfcx(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    let y = x.abs();
    if y <= SMALL {
        let z = y * y;
        return z.exp() * (1.0 - x * erf_small_ratio(z));
    }
    if x < NEG_LIMIT {
        return f64::INFINITY;
    }
    let scaled = if y <= MEDIUM {
        erfcx_mid(y)
    } else if y.is_infinite() {
        0.0
    } else {
        erfcx_tail(y)
    };
    if x < 0.0 {
        2.0 * exp_square(y) - scaled
    } else {
        scaled
    }
}

/// Complementary error function, built on [`erfcx`].
pub fn erfc(x: f64) -> f64 {
    if x.abs() <= SMALL {
        return 1.0 - x * erf_small_ratio(x * x);
    }
    if x > 26.7 {
        return 0.0;
    }
    if x < -6.0 {
        return 2.0;
    }
    let tail = erfcx(x.abs()) / exp_square(x.abs());
    if x < 0.0 {
        2.0 - tail
    } else {
        tail
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn known_values() {
        assert_eq!(erfcx(0.0), 1.0);
        // erfc(1) e = 0.42758357615580700442
        assert_relative_eq!(erfcx(1.0), 0.427_583_576_155_807, max_relative = 1e-15);
        assert_relative_eq!(erfc(1.0), 0.157_299_207_050_285_13, max_relative = 1e-15);
        assert_relative_eq!(erfc(-1.0), 1.842_700_792_949_714_9, max_relative = 1e-15);
    }

    #[test]
    fn large_argument_asymptote() {
        let x = 1e8;
        assert_relative_eq!(erfcx(x), FRAC_1_SQRT_PI / x, max_relative = 1e-15);
        assert_eq!(erfcx(f64::INFINITY), 0.0);
    }

    #[test]
    fn negative_branch_reflection() {
        for x in [0.3, 1.2, 3.0, 5.5] {
            let lhs = erfcx(-x) + erfcx(x);
            assert_relative_eq!(lhs, 2.0 * (x * x).exp(), max_relative = 1e-14);
        }
        assert!(erfcx(-30.0).is_infinite());
    }

    #[test]
    fn monotone_decreasing_on_positive_axis() {
        let mut prev = erfcx(0.0);
        for i in 1..2000 {
            let x = i as f64 * 0.01;
            let v = erfcx(x);
            assert!(v < prev, "not decreasing at {x}");
            prev = v;
        }
    }
}
