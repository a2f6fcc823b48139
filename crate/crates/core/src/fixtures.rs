//! Published tables, transcribed as data.

/// Nontrivial solutions of x^4 + a·x·y + y^3 = 0 for the a in [1, 100] that have any.
pub const TABLE1: &[(i64, &[(i64, i64)])] = &[
    (2, &[(-1, 1), (2, -2)]),
    (6, &[(-6, -12), (-2, -4), (-2, 2), (3, -3)]),
    (8, &[(-4, -8)]),
    (10, &[(-2, 4), (10, -20)]),
    (12, &[(-3, 3), (4, -4)]),
    (20, &[(-4, 4), (5, -5)]),
    (24, &[(-24, -72), (-4, 8), (-3, -9), (12, -24)]),
    (30, &[(-5, 5), (-3, 9), (6, -6), (30, -90)]),
    (31, &[(-62, -248), (-2, -8), (4, -2)]),
    (33, &[(-4, 2), (-2, 8), (66, -264)]),
    (35, &[(20, -50)]),
    (42, &[(-21, -63), (-6, -18), (-6, 6), (-6, 12), (7, -7), (14, -28)]),
    (54, &[(-18, -54), (-9, -27)]),
    (56, &[(-7, 7), (8, -8)]),
    (60, &[(-60, -240), (-15, -45), (-12, -36), (-4, -16)]),
    (64, &[(-8, 16), (16, -32)]),
    (66, &[(-6, 18), (33, -99)]),
    (68, &[(-4, 16), (68, -272)]),
    (69, &[(12, -18)]),
    (72, &[(-8, 8), (9, -9)]),
    (87, &[(-58, -232), (-6, -24)]),
    (88, &[(396, -2904)]),
    (90, &[(-10, 20), (-9, 9), (10, -10), (18, -36)]),
];

/// Quartic and quintic x^n + x^k·y^l + y^m = 0 with their parametric
/// nontrivial solutions as polynomials in w, when there are any.
pub const TABLE2: &[(&str, Option<(&str, &str)>)] = &[
    ("x^4 + x*y + y^2", None),
    ("x^4 + x*y + y^3", None),
    ("x^4 + x*y + y^4", None),
    ("x^4 + x*y^2 + y^3", Some(("-w^2 - w^3", "-w^3 - w^4"))),
    ("x^4 + x^2*y + y^2", None),
    ("x^4 + x^2*y + y^3", Some(("-w - w^3", "-w^2 - w^4"))),
    ("x^4 + x^2*y + y^4", None),
    ("x^4 + x^2*y^2 + y^4", None),
    ("x^4 + x^3*y + y^4", None),
    ("x^5 + x*y + y^2", None),
    ("x^5 + x*y + y^3", None),
    ("x^5 + x*y + y^4", None),
    ("x^5 + x*y + y^5", None),
    ("x^5 + x*y^2 + y^3", Some(("-w - w^3", "w + 2*w^3 + w^5"))),
    ("x^5 + x*y^2 + y^4", None),
    ("x^5 + x*y^3 + y^4", Some(("-w^3 - w^4", "-w^4 - w^5"))),
    ("x^5 + x^2*y + y^2", Some(("-w - w^2", "w^3 + 2*w^4 + w^5"))),
    ("x^5 + x^2*y + y^3", None),
    ("x^5 + x^2*y + y^4", None),
    ("x^5 + x^2*y + y^5", None),
    ("x^5 + x^2*y^2 + y^4", Some(("-w^2 - w^4", "-w^3 - w^5"))),
    ("x^5 + x^2*y^2 + y^5", None),
    ("x^5 + x^3*y + y^3", Some(("w + 2*w^2 + w^3", "-w^2 - 3*w^3 - 3*w^4 - w^5"))),
    ("x^5 + x^3*y + y^4", Some(("-w - w^4", "-w^2 - w^5"))),
    ("x^5 + x^3*y + y^5", None),
    ("x^5 + x^3*y^2 + y^5", None),
    ("x^5 + x^4*y + y^5", None),
];

/// Cubic families a·A + b·B = c·C with a vector solving the certificate system,
/// in variable order x, y, z, t. Two rows are corrected: the coefficient `a`
/// is restored in `a x^3 + b x y z = c t^2 y` and the vector of
/// `a x^3 + b x y = c y z^2` is read as (1,2,1).
pub const TABLE3: &[(&str, &[u64])] = &[
    ("a x^2 y + b y = c z^2", &[0, 1, 1]),
    ("a x + b z^2 = c x^2 y", &[0, 1, 0]),
    ("a x^3 + b y = c y z", &[0, 0, 1]),
    ("a t x + b t y = c x y z", &[0, 0, 1, 0]),
    ("a x^2 + b x y z = c t y", &[0, 0, 0, 1]),
    ("a x^2 + b y^2 = c x y z", &[0, 0, 1]),
    ("a x^2 y + b y z = c t z", &[0, 0, 0, 1]),
    ("a x^2 y + b x z = c t z", &[0, 0, 0, 1]),
    ("a t y + b x^2 y = c x z", &[0, 0, 1, 0]),
    ("a x^2 y + b x z = c y z", &[0, 1, 1]),
    ("a t^2 + b x^2 y = c y z", &[0, 0, 1, 0]),
    ("a t^2 + b x^2 y = c x z", &[0, 0, 1, 0]),
    ("a x^2 y + b y z = c z^2", &[1, 1, 2]),
    ("a x^2 y + b x z = c z^2", &[0, 1, 1]),
    ("a x^2 y + b x y = c z^2", &[0, 1, 1]),
    ("a x^2 y + b x z = c y^2", &[0, 1, 1]),
    ("a y^2 + b z^2 = c x^2 y", &[1, 1, 1]),
    ("a x^2 y + b x^2 = c y z", &[0, 0, 1]),
    ("a x^2 + b z^2 = c x^2 y", &[0, 1, 0]),
    ("a x^3 + b t y = c y z", &[0, 0, 1, 0]),
    ("a x^3 + b x y = c y z", &[0, 0, 1]),
    ("a x^3 + b x y = c z^2", &[1, 2, 2]),
    ("a x^3 + b y^2 = c y z", &[0, 0, 1]),
    ("a y^2 + b z^2 = c x^3", &[1, 1, 1]),
    ("a y^2 z + b z = c x^3", &[1, 0, 2]),
    ("a x^3 + b y = c y^2 z", &[0, 0, 1]),
    ("a x^2 y + b x z = c t y z", &[0, 0, 0, 1]),
    ("a x^2 y + b t y z = c z^2", &[1, 1, 2, 0]),
    ("a x^2 y + b t x z = c y z", &[0, 1, 1, 0]),
    ("a x^2 y + b t x z = c z^2", &[0, 1, 1, 0]),
    ("a x^2 y + b x y z = c t z", &[0, 0, 0, 1]),
    ("a t^2 + b x^2 y = c x y z", &[0, 0, 1, 0]),
    ("a x^2 y + b z^2 = c x y z", &[0, 2, 1]),
    ("a x^2 y + b y z = c t^2 z", &[0, 1, 0, 1]),
    ("a x^2 y + b x z = c t^2 z", &[1, 0, 1, 1]),
    ("a x^2 y + b x z = c t z^2", &[0, 0, 0, 1]),
    ("a x^2 y + b y z^2 = c t x", &[0, 0, 0, 1]),
    ("a x^2 y + b y z^2 = c t^2", &[0, 1, 0, 1]),
    ("a t y + b x^2 y = c x z^2", &[0, 1, 1, 0]),
    ("a t^2 + b x^2 y = c x z^2", &[1, 0, 1, 1]),
    ("a x^2 y + b x z^2 = c y^2", &[1, 3, 2]),
    ("a t x + b x^2 y = c y^2 z", &[0, 0, 1, 0]),
    ("a x^2 y + b x z = c y^2 z", &[1, 1, 2]),
    ("a t^2 + b x^2 y = c y^2 z", &[0, 0, 1, 0]),
    ("a x^2 y + b x^2 = c y^2 z", &[0, 0, 1]),
    ("a x^2 y + b x y^2 = c z^2", &[1, 1, 2]),
    ("a t y + b x^2 y = c x^2 z", &[0, 0, 1, 0]),
    ("a x^2 y + b x^2 z = c y z", &[0, 1, 1]),
    ("a t^2 + b x^2 y = c x^2 z", &[0, 0, 1, 0]),
    ("a x^2 y + b x^2 z = c y^2", &[0, 1, 1]),
    ("a x^3 + b x y z = c t y", &[0, 0, 0, 1]),
    ("a x^3 + b x y z = c y^2", &[1, 2, 0]),
    ("a x^3 + b x y = c y z^2", &[1, 2, 1]),
    ("a x^3 + b t z = c y^2 z", &[1, 1, 2, 1]),
    ("a x^3 + b t y = c y^2 z", &[0, 0, 1, 0]),
    ("a x^3 + b y z = c y^2 z", &[1, 1, 2]),
    ("a x^3 + b x y = c y^2 z", &[0, 0, 1]),
    ("a x^3 + b y^2 z = c z^2", &[3, 2, 5]),
    ("a x^3 + b y^2 = c y^2 z", &[0, 0, 1]),
    ("a x^3 + b x y^2 = c y z", &[0, 0, 1]),
    ("a x^3 + b x y^2 = c z^2", &[1, 1, 2]),
    ("a x^3 + b x^2 y = c y z", &[0, 0, 1]),
    ("a x^3 + b x^2 y = c z^2", &[1, 1, 2]),
    ("a x^3 + b y^3 = c x z", &[0, 0, 1]),
    ("a x^3 + b y^3 = c z^2", &[1, 1, 2]),
    ("a x^3 + b y^3 = c x y z", &[0, 0, 1]),
    ("a x^2 y + b x y z = c t^2 z", &[0, 1, 0, 1]),
    ("a x^2 y + b x y z = c t z^2", &[0, 0, 0, 1]),
    ("a x^2 y + b y z^2 = c t x z", &[0, 0, 0, 1]),
    ("a t^2 y + b x^2 y = c x z^2", &[0, 1, 1, 0]),
    ("a x^2 y + b x z^2 = c t y^2", &[0, 0, 0, 1]),
    ("a x^2 y + b t x z = c y^2 z", &[0, 1, 0, 1]),
    ("a x^2 y + b x^2 z = c t y z", &[0, 0, 0, 1]),
    ("a t^2 y + b x^2 y = c x^2 z", &[0, 0, 1, 0]),
    ("a x^2 y + b x^2 z = c t y^2", &[0, 0, 0, 1]),
    ("a x^2 z + b y^2 z = c x^2 y", &[1, 1, 0]),
    ("a x^3 + b x y z = c t^2 y", &[1, 2, 0, 1]),
    ("a x^3 + b x y z = c t y^2", &[0, 0, 0, 1]),
    ("a x^3 + b t y z = c y^2 z", &[1, 2, 0, 1]),
    ("a x^3 + b x y z = c y^2 z", &[1, 2, 0]),
    ("a t^2 z + b y^2 z = c x^3", &[1, 1, 0, 1]),
    ("a x^3 + b t^2 y = c y^2 z", &[0, 0, 1, 0]),
    ("a x^3 + b y^2 z = c t z^2", &[0, 0, 0, 1]),
    ("a x^3 + b t y^2 = c y^2 z", &[0, 0, 1, 0]),
    ("a x^3 + b x y^2 = c y^2 z", &[0, 0, 1]),
    ("a x^2 y + b y z^2 = c x^3", &[1, 0, 1]),
    ("a x^3 + b x^2 y = c y^2 z", &[0, 0, 1]),
    ("a x^3 + b z^3 = c x^2 y", &[0, 1, 0]),
];

/// Cubic families outside the certificate, with the shape they reduce to.
pub const TABLE4: &[(&str, &str)] = &[
    ("a x + b x^2 y + c y z^2 = 0", "Au^2 + Bv^2 + C = 0"),
    ("a x^2 y + b x z + c y z^2 = 0", "Au^2 + Bv^2 + C = 0"),
    ("a x^2 + b x^2 y + c y z^2 = 0", "Au^2 + Bv^2 + C = 0"),
    ("a x^3 + b y^3 + c z^3 = 0", "Au^3 + Bv^3 + Cw^3 = 0"),
    ("a x^3 + b y^2 z + c y z^2 = 0", "Au^3 + Bv^3 + Cw^3 = 0"),
    ("a x^3 + b x y^2 + c z^3 = 0", "Au^6 + Bv^3 + Cw^2 = 0"),
    ("a x^3 + b x y^2 + c y z^2 = 0", "Au^4 + Bv^4 + Cw^2 = 0"),
    ("a x^2 y + b y^2 z + c x z^2 = 0", "Au^3 + Bv^3 + Cw^3 = 0"),
];

/// Quartic families outside the certificate, with the shape they reduce to.
pub const TABLE5: &[(&str, &str)] = &[
    ("a x^3 y + b z^2 + c x y z^2 = 0", "Au^2 + B = 0"),
    ("a x^3 y + b x y z^2 + c z^3 = 0", "Au^2 + B = 0"),
    ("a y^2 + b x^2 y z + c z^2 = 0", "Au^2 + B = 0"),
    ("a x y^2 + b x^2 y z + c z^2 = 0", "Au^3 + B = 0"),
    ("a x + b x^2 y^2 + c z^2 = 0", "Au^2 + Bv^2 + C = 0"),
    ("a x^2 y^2 + b x z + c z^2 = 0", "Au^2 + Bv^2 + C = 0"),
    ("a x^2 + b x^2 y^2 + c z^2 = 0", "Au^2 + Bv^2 + C = 0"),
    ("a y + b x^2 y^2 + c x^2 z^2 = 0", "Au^2 + Bv^2 + C = 0"),
    ("a y^2 + b x^2 y^2 + c x^2 z^2 = 0", "Au^2 + Bv^2 + C = 0"),
    ("a x^2 y + b x^2 y^2 + c z^2 = 0", "Au^2 + Bv^2 + C = 0"),
    ("a x^4 + b y^2 + c y^2 z^2 = 0", "Au^2 + Bv^2 + C = 0"),
    ("a x^4 + b y^2 z + c y^2 z^2 = 0", "Au^2 + Bv^2 + C = 0"),
    ("a x^4 + b x y + c y^2 z^2 = 0", "Au^2 + Bv^2 + C = 0"),
    ("a x^4 + b x^2 y + c y^2 z^2 = 0", "Au^2 + Bv^2 + C = 0"),
    ("a x^2 y^2 + b x z + c t^2 z^2 = 0", "Au^2 + Bv^2 + C = 0"),
    ("a x^3 y + b x^2 z + c y z^3 = 0", "Au^3 + Bv^3 + C = 0"),
    ("a x^2 y^2 + b y z + c x z^2 = 0", "Au^3 + Bv^3 + C = 0"),
    ("a x^3 y + b z + c y^2 z^2 = 0", "Au^3 + Bw^3 + C = 0"),
    ("a x^3 y + b x z + c y z^3 = 0", "Au^3 + Bv^3 + C = 0"),
    ("a x^2 + b x^3 y + c y z^3 = 0", "Au^3 + Bv^3 + C = 0"),
    ("a x^3 + b x^3 y + c y z^3 = 0", "Au^3 + Bv^3 + C = 0"),
    ("a x^2 y^2 + b y z + c x^2 z^2 = 0", "Au^4 + Bv^4 + C = 0"),
    ("a x^2 + b x^2 y^2 + c y z^2 = 0", "Au^4 + Bv^2 + C = 0"),
    ("a x^4 + b y + c y^2 z^2 = 0", "Au^4 + Bv^2 + C = 0"),
    ("a x^2 y^2 + b x^2 z^2 + c y^2 z^2 = 0", "Au^2 + Bv^2 + Cw^2 = 0"),
    ("a x^4 + b y^2 + c z^2 = 0", "Au^2 + Bv^2 + Cw^2 = 0"),
    ("a x^4 + b x^2 y^2 + c z^2 = 0", "Au^2 + Bv^2 + Cw^2 = 0"),
    ("a x^4 + b t^2 y^2 + c y^2 z^2 = 0", "Au^2 + Bv^2 + Cw^2 = 0"),
    ("a t^2 + b x^2 y^2 + c x^2 z^2 = 0", "Au^2 + Bv^2 + Cw^2 = 0"),
    ("a t^2 y^2 + b x^2 y^2 + c x^2 z^2 = 0", "Au^2 + Bv^2 + Cw^2 = 0"),
    ("a x^4 + b x^2 y^2 + c y^2 z^2 = 0", "Au^2 + Bv^2 + Cw^2 = 0"),
    ("a x^3 y + b t^3 z + c y^2 z^2 = 0", "Au^3 + Bv^3 + Cw^3 = 0"),
    ("a x^3 y + b y^2 + c z^3 = 0", "Au^3 + Bv^3 + Cw^3 = 0"),
    ("a x^3 y + b y^2 z + c z^2 = 0", "Au^3 + Bv^3 + Cw^3 = 0"),
    ("a x^3 y + b x^3 z + c y^2 z^2 = 0", "Au^3 + Bv^3 + Cw^3 = 0"),
    ("a x^2 y^2 + b t^2 y z + c t x z^2 = 0", "Au^3 + Bv^3 + Cw^3 = 0"),
    ("a x^3 y + b x y^3 + c z^2 = 0", "Au^4 + Bv^4 + Cw^2 = 0"),
    ("a x^4 + b y^3 z + c y^2 z^2 = 0", "Au^4 + Bv^4 + Cw^2 = 0"),
    ("a x^4 + b y^4 + c z^2 = 0", "Au^4 + Bv^4 + Cw^2 = 0"),
    ("a x^4 + b y^2 z + c z^2 = 0", "Au^4 + Bv^4 + Cw^2 = 0"),
    ("a x^3 y + b x^2 z^2 + c y^2 z^2 = 0", "Au^4 + Bv^4 + Cw^2 = 0"),
    ("a x^4 + b x^2 y^2 + c z^4 = 0", "Au^4 + Bv^4 + Cw^2 = 0"),
    ("a x^2 y^2 + b t^2 y z + c x^2 z^2 = 0", "Au^4 + Bv^4 + Cw^2 = 0"),
    ("a x^4 + b x y^3 + c z^2 = 0", "Au^6 + Bv^3 + Cw^2 = 0"),
    ("a x^4 + b x y^3 + c y^2 z^2 = 0", "Au^6 + Bv^3 + Cw^2 = 0"),
    ("a x^4 + b x^2 y^2 + c y z^3 = 0", "Au^6 + Bv^6 + Cw^3 = 0"),
    ("a x^4 + b y^4 + c z^4 = 0", "Au^4 + Bv^4 + Cw^4 = 0"),
    ("a x^4 + b x y^2 z + c y z^3 = 0", "Au^5 + Bv^5 + Cw^5 = 0"),
    ("a x^3 y + b y^3 z + c x^2 z^2 = 0", "Au^5 + Bv^5 + Cw^5 = 0"),
    ("a x^3 y + b y^3 z + c x z^3 = 0", "Au^7 + Bv^7 + Cw^7 = 0"),
    ("a x^4 + b y^4 + c x y z^2 = 0", "Au^8 + Bv^8 + Cw^2 = 0"),
    ("a x^4 + b y^3 z + c y z^3 = 0", "Au^8 + Bv^8 + Cw^4 = 0"),
    ("a x^4 + b x y^3 + c y z^3 = 0", "Au^9 + Bv^9 + Cw^3 = 0"),
    ("a x^4 + b x y^3 + c z^4 = 0", "Au^12 + Bv^4 + Cw^3 = 0"),
    ("a x^2 y^2 + b z + c x z^2 = 0", "Au^3 v^2 + Bw^2 + C = 0"),
    ("a y + b x^2 y^2 + c x z^2 = 0", "Au^3 v^2 + Bw^2 + C = 0"),
    ("a x + b x^2 y^2 + c z^3 = 0", "Au^3 v^2 + Bw^3 + C = 0"),
    ("a x^3 y + b z + c y z^2 = 0", "Au^3 v^2 + Bw^3 + C = 0"),
    ("a x + b x^3 y + c y z^2 = 0", "Au^4 v^3 + Bw^2 + C = 0"),
    ("a x + b x^3 y + c y^2 z^2 = 0", "Au^5 v^4 + Bw^2 + C = 0"),
];

/// Estimated share of random families meeting the certificate, for
/// n = 3..=10 variables and exponents up to d = 10, 100, ..., 100000.
pub const TABLE6_DEGREES: [u64; 5] = [10, 100, 1_000, 10_000, 100_000];
pub const TABLE6: [[f64; 5]; 8] = [
    [0.319, 0.196, 0.217, 0.205, 0.202],
    [0.553, 0.473, 0.469, 0.502, 0.466],
    [0.73, 0.676, 0.666, 0.65, 0.676],
    [0.854, 0.796, 0.824, 0.802, 0.823],
    [0.922, 0.901, 0.884, 0.882, 0.872],
    [0.955, 0.952, 0.937, 0.934, 0.935],
    [0.974, 0.967, 0.975, 0.96, 0.959],
    [0.987, 0.984, 0.979, 0.978, 0.979],
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_counts() {
        assert_eq!(TABLE1.len(), 23);
        assert_eq!(TABLE2.len(), 27);
        assert_eq!(TABLE2.iter().filter(|r| r.1.is_some()).count(), 8);
        assert_eq!(TABLE3.len(), 88);
        assert_eq!(TABLE4.len(), 8);
        assert_eq!(TABLE5.len(), 60);
    }
}
