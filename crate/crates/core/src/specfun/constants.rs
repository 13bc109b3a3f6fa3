/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
/// ln(pi).
pub const LN_PI: f64 = 1.144_729_885_849_400_2;
/// ln(2 pi).
pub const LN_2PI: f64 = 1.837_877_066_409_345_5;

/// Bernoulli numbers B_2, B_4, ..., B_26.
pub(crate) const BERNOULLI_EVEN: [f64; 13] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
];

/// B_{2l} / (2l)! for l = 1..=13 (index l - 1).
pub(crate) fn bernoulli_over_factorial(l: usize) -> f64 {
    let mut f = 1.0;
    for k in 1..=2 * l {
        f *= k as f64;
    }
    BERNOULLI_EVEN[l - 1] / f
}
