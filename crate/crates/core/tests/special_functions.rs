use dirac_vortex::special::{bessel_j, bessel_j_sequence, bessel_j_signed, laguerre, principal_sqrt};
use num_complex::Complex64;
use proptest::prelude::*;

/// J_n(x) to 20 digits (mpmath, 50-digit arithmetic). Entries whose
/// condition number |x J_n'/J_n| exceeds 200 are left out.
const BESSEL_TABLE: &[(u32, f64, f64)] = &[
    (0, 0.05, 0.99937509764946858081),
    (0, 0.7, 0.88120088860740529545),
    (0, 1.9, 0.28181855937438552233),
    (0, 2.5, -0.048383776468197996327),
    (0, 7.3, 0.28821694763501439904),
    (0, 33.3, 0.063338485947521251681),
    (0, 64.0, 0.092590012216048114331),
    (0, 777.0, -0.027796328680527826091),
    (1, 0.05, 0.024992188313759700519),
    (1, 0.7, 0.32899574154005892959),
    (1, 1.9, 0.58115707271343407482),
    (1, 2.5, 0.49709410246427403801),
    (1, 7.3, 0.082570430493257831051),
    (1, 15.0, 0.20510403861352276115),
    (1, 33.3, 0.12386214790148009055),
    (1, 64.0, 0.037791549354396374912),
    (1, 99.5, -0.07766319824307693544),
    (1, 250.0, -0.043269038410330749511),
    (2, 0.05, 0.00031243490091938446674),
    (2, 0.7, 0.058786944364191705864),
    (2, 1.9, 0.3299257276923872166),
    (2, 2.5, 0.44605905843961722674),
    (2, 7.3, -0.26559491188343691053),
    (2, 15.0, 0.04157167797525047472),
    (2, 33.3, -0.055899317905390314677),
    (2, 64.0, -0.091409026298723227615),
    (2, 777.0, 0.027778693624995557104),
    (3, 0.05, 2.6037597910554325257e-6),
    (3, 0.7, 0.0069296548267508395159),
    (3, 1.9, 0.11342340663896009787),
    (3, 2.5, 0.21660039103911352477),
    (3, 7.3, -0.22810188905952463488),
    (3, 15.0, -0.19401825782012263456),
    (3, 33.3, -0.13057678068290835715),
    (3, 64.0, -0.043504613498066576638),
    (3, 99.5, 0.078386092598695916412),
    (3, 250.0, 0.043680353948217494914),
    (5, 0.05, 8.1371731606730967651e-11),
    (5, 0.7, 0.000042882407058885479383),
    (5, 1.9, 0.0055384930136158799291),
    (5, 2.5, 0.019501625134503219886),
    (5, 7.3, 0.31370617089730907746),
    (5, 15.0, 0.13045613456502955267),
    (5, 33.3, 0.1383538305410695624),
    (5, 64.0, 0.054420922095976512395),
    (5, 99.5, -0.07945183712471255526),
    (5, 250.0, -0.044469438512158754683),
    (10, 0.05, 2.6279214389787748715e-23),
    (10, 0.7, 7.5175911502153906342e-12),
    (10, 1.9, 1.5195615133800896192e-7),
    (10, 2.5, 2.2247284173983832948e-6),
    (10, 7.3, 0.032111623954048501212),
    (10, 15.0, -0.090071811047659053964),
    (10, 33.3, 0.12182178268240793059),
    (10, 64.0, -0.039748522394680838025),
    (11, 0.05, 5.9725770043122400208e-26),
    (11, 0.7, 2.3941844435286842087e-13),
    (11, 1.9, 1.3214362370373903018e-8),
    (11, 2.5, 2.5586972151105466483e-7),
    (11, 7.3, 0.01198881934533281642),
    (11, 15.0, 0.099950477050301592233),
    (11, 33.3, -0.030192207912577502741),
    (11, 64.0, -0.097544804322737561438),
    (11, 99.5, 0.07503999453342246841),
    (11, 250.0, 0.048224999110271844216),
    (20, 0.05, 3.7382008432979655987e-51),
    (20, 0.7, 3.1095858376600628641e-28),
    (20, 1.9, 1.4114480267847641943e-19),
    (20, 2.5, 3.3090793836587766837e-17),
    (20, 7.3, 3.8026628466865908758e-8),
    (20, 15.0, 0.0073602340792234852583),
    (20, 33.3, 0.081350630072802146345),
    (20, 64.0, -0.094646416556967261204),
    (20, 99.5, 0.079219398226501795447),
    (50, 0.05, 2.5937029673520467957e-145),
    (50, 0.7, 5.2394314498348965901e-88),
    (50, 1.9, 2.4855286556488630043e-66),
    (50, 2.5, 2.2341702499526218344e-60),
    (50, 7.3, 3.2948277320896556697e-37),
    (50, 15.0, 6.1060519495338755717e-22),
    (50, 33.3, 1.209247939189086727e-6),
    (50, 64.0, 0.084532253199778497755),
    (50, 250.0, 0.049542213934894948841),
    (100, 0.7, 2.7307002738072007661e-204),
    (100, 1.9, 6.2874711233814022722e-161),
    (100, 2.5, 5.1793883053015715678e-149),
    (100, 7.3, 1.5920608556596069105e-102),
    (100, 15.0, 1.9660095611249546732e-71),
    (100, 33.3, 9.1778287304231815634e-38),
    (100, 64.0, 7.7182650650543960963e-13),
    (100, 99.5, 0.086942749304561508251),
    (100, 250.0, 0.04089958980654091626),
];

/// L_n^(α)(x) for complex x to 20 digits (mpmath, 40-digit arithmetic).
const LAGUERRE_TABLE: &[(u32, u32, (f64, f64), (f64, f64))] = &[
    (0, 0, (0.3, 0.0), (1.0, 0.0)),
    (0, 0, (2.5, -1.0), (1.0, 0.0)),
    (0, 0, (-0.7, 4.0), (1.0, 0.0)),
    (0, 0, (12.0, 0.5), (1.0, 0.0)),
    (0, 1, (0.3, 0.0), (1.0, 0.0)),
    (0, 1, (2.5, -1.0), (1.0, 0.0)),
    (0, 1, (-0.7, 4.0), (1.0, 0.0)),
    (0, 1, (12.0, 0.5), (1.0, 0.0)),
    (0, 3, (0.3, 0.0), (1.0, 0.0)),
    (0, 3, (2.5, -1.0), (1.0, 0.0)),
    (0, 3, (-0.7, 4.0), (1.0, 0.0)),
    (0, 3, (12.0, 0.5), (1.0, 0.0)),
    (0, 10, (0.3, 0.0), (1.0, 0.0)),
    (0, 10, (2.5, -1.0), (1.0, 0.0)),
    (0, 10, (-0.7, 4.0), (1.0, 0.0)),
    (0, 10, (12.0, 0.5), (1.0, 0.0)),
    (1, 0, (0.3, 0.0), (0.7000000000000000111, 0.0)),
    (1, 0, (2.5, -1.0), (-1.5, 1.0)),
    (1, 0, (-0.7, 4.0), (1.6999999999999999556, -4.0)),
    (1, 0, (12.0, 0.5), (-11.0, -0.5)),
    (1, 1, (0.3, 0.0), (1.7000000000000000111, 0.0)),
    (1, 1, (2.5, -1.0), (-0.5, 1.0)),
    (1, 1, (-0.7, 4.0), (2.6999999999999999556, -4.0)),
    (1, 1, (12.0, 0.5), (-10.0, -0.5)),
    (1, 3, (0.3, 0.0), (3.7000000000000000111, 0.0)),
    (1, 3, (2.5, -1.0), (1.5, 1.0)),
    (1, 3, (-0.7, 4.0), (4.6999999999999999556, -4.0)),
    (1, 3, (12.0, 0.5), (-8.0, -0.5)),
    (1, 10, (0.3, 0.0), (10.700000000000000011, 0.0)),
    (1, 10, (2.5, -1.0), (8.5, 1.0)),
    (1, 10, (-0.7, 4.0), (11.699999999999999956, -4.0)),
    (1, 10, (12.0, 0.5), (-1.0, -0.5)),
    (2, 0, (0.3, 0.0), (0.44500000000000001887, 0.0)),
    (2, 0, (2.5, -1.0), (-1.375, -0.5)),
    (2, 0, (-0.7, 4.0), (-5.3550000000000001199, -10.799999999999999822)),
    (2, 0, (12.0, 0.5), (48.875, 5.0)),
    (2, 1, (0.3, 0.0), (2.14500000000000003, 0.0)),
    (2, 1, (2.5, -1.0), (-1.875, 0.5)),
    (2, 1, (-0.7, 4.0), (-2.6550000000000001643, -14.799999999999999822)),
    (2, 1, (12.0, 0.5), (38.875, 4.5)),
    (2, 3, (0.3, 0.0), (8.5450000000000000522, 0.0)),
    (2, 3, (2.5, -1.0), (0.125, 2.5)),
    (2, 3, (-0.7, 4.0), (5.7449999999999997469, -22.799999999999999822)),
    (2, 3, (12.0, 0.5), (21.875, 3.5)),
    (2, 10, (0.3, 0.0), (62.44500000000000013, 0.0)),
    (2, 10, (2.5, -1.0), (38.625, 9.5)),
    (2, 10, (-0.7, 4.0), (66.644999999999999436, -50.799999999999999822)),
    (2, 10, (12.0, 0.5), (-6.125, -6.4174845052943023855e-61)),
    (3, 0, (0.3, 0.0), (0.23050000000000002381, 0.0)),
    (3, 0, (2.5, -1.0), (0.020833333333333333333, -1.5416666666666666667)),
    (3, 0, (-0.7, 4.0), (-25.707833333333333215, -10.713333333333332676)),
    (3, 0, (12.0, 0.5), (-105.875, -19.479166666666666667)),
    (3, 1, (0.3, 0.0), (2.3755000000000000538, 0.0)),
    (3, 1, (2.5, -1.0), (-1.8541666666666666667, -1.0416666666666666667)),
    (3, 1, (-0.7, 4.0), (-28.36283333333333338, -25.513333333333332498)),
    (3, 1, (12.0, 0.5), (-67.0, -14.979166666666666667)),
    (3, 3, (0.3, 0.0), (15.765500000000000147, 0.0)),
    (3, 3, (2.5, -1.0), (-3.1041666666666666667, 2.9583333333333333333)),
    (3, 3, (-0.7, 4.0), (-21.572833333333333842, -67.113333333333332143)),
    (3, 3, (12.0, 0.5), (-15.25, -7.4791666666666666667)),
    (3, 10, (0.3, 0.0), (263.18050000000000082, 0.0)),
    (3, 10, (2.5, -1.0), (123.77083333333333333, 48.458333333333333333)),
    (3, 10, (-0.7, 4.0), (234.24216666666666314, -338.7133333333333309)),
    (3, 10, (12.0, 0.5), (-2.125, 3.0208333333333333333)),
    (7, 0, (0.3, 0.0), (-0.30110570589285711927, 0.0)),
    (7, 0, (2.5, -1.0), (0.79202783978174603175, 2.1857607886904761905)),
    (7, 0, (-0.7, 4.0), (75.883113566527787315, 344.08506260079363916)),
    (7, 0, (12.0, 0.5), (-41.613209945436507937, 13.976824466765873016)),
    (7, 1, (0.3, 0.0), (1.8233410566071430138, 0.0)),
    (7, 1, (2.5, -1.0), (4.3562856522817460317, 0.69504898313492063492)),
    (7, 1, (-0.7, 4.0), (-138.8712536709722005, 606.02712137857141649)),
    (7, 1, (12.0, 0.5), (-67.464794146825396825, -9.7427067832341269841)),
    (7, 3, (0.3, 0.0), (67.434598831607144448, 0.0)),
    (7, 3, (2.5, -1.0), (-1.0555633060515873016, -14.982728794642857143)),
    (7, 3, (-0.7, 4.0), (-1524.7093613959721579, 1036.5338556007936585)),
    (7, 3, (12.0, 0.5), (-2.7544208829365079365, -18.724217199900793651)),
    (7, 10, (0.3, 0.0), (16003.176763169107261, 0.0)),
    (7, 10, (2.5, -1.0), (1647.727574714781746, 2604.2708302331349206)),
    (7, 10, (-0.7, 4.0), (-26244.913220058472035, -39754.865099621427508)),
    (7, 10, (12.0, 0.5), (-69.027489459325396825, -20.417706783234126984)),
    (15, 0, (0.3, 0.0), (-0.41782471594693467198, 0.0)),
    (15, 0, (2.5, -1.0), (1.7420437438390112954, -3.9212800785951707488)),
    (15, 0, (-0.7, 4.0), (-1635.7874089095554298, -12171.552217028974253)),
    (15, 0, (12.0, 0.5), (67.872680722061837313, 1.0579581093748719319)),
    (15, 1, (0.3, 0.0), (-1.6669192778706157432, 0.0)),
    (15, 1, (2.5, -1.0), (-7.1706323995946161769, -7.918101948945682467)),
    (15, 1, (-0.7, 4.0), (10734.20143848414109, -26614.030066285438252)),
    (15, 1, (12.0, 0.5), (60.512055986550339936, 38.5884046109013935)),
    (15, 3, (0.3, 0.0), (209.92388025726884692, 0.0)),
    (15, 3, (2.5, -1.0), (-23.539323643307793075, 66.228549491548314693)),
    (15, 3, (-0.7, 4.0), (142487.87993484607176, -38252.872395541462042)),
    (15, 3, (12.0, 0.5), (-116.37772914837278973, 0.42112671195967415538)),
    (15, 10, (0.3, 0.0), (2143592.3524622483636, 0.0)),
    (15, 10, (2.5, -1.0), (-75196.30028249082804, 14130.29440705408297)),
    (15, 10, (-0.7, 4.0), (-10789912.73091949001, 22011115.800948139013)),
    (15, 10, (12.0, 0.5), (-981.04942192588798697, -91.399123293925569424)),
    (40, 0, (0.3, 0.0), (0.34841821941447816685, 0.0)),
    (40, 0, (2.5, -1.0), (14.113380287791972023, 6.1724474813307130212)),
    (40, 0, (-0.7, 4.0), (-1712872.5602952431591, -17732817.910487538988)),
    (40, 0, (12.0, 0.5), (12.291510107079737297, 50.940820968949499828)),
    (40, 1, (0.3, 0.0), (-0.014089094895555872725, 0.0)),
    (40, 1, (2.5, -1.0), (41.841516794048888732, -44.626567178708279048)),
    (40, 1, (-0.7, 4.0), (29462185.227152845829, -55404962.373841753118)),
    (40, 1, (12.0, 0.5), (-113.47732651449025764, 30.736138625089591847)),
    (40, 3, (0.3, 0.0), (-363.56046543154446074, 0.0)),
    (40, 3, (2.5, -1.0), (-976.13964685945283556, 1.7701059186237188087)),
    (40, 3, (-0.7, 4.0), (736727543.08257696491, 11178531.790028437834)),
    (40, 3, (12.0, 0.5), (190.46283002087917341, -284.0431434900809853)),
    (40, 10, (0.3, 0.0), (3207797837.6242381839, 0.0)),
    (40, 10, (2.5, -1.0), (-15416756.415110085495, 7981779.1490155149078)),
    (40, 10, (-0.7, 4.0), (-2328144599454.0842304, -18354386741.487708523)),
    (40, 10, (12.0, 0.5), (42564.140466529377772, 25144.49079391657868)),
];

#[test]
fn bessel_matches_reference_table() {
    let mut worst: f64 = 0.0;
    for &(n, x, reference) in BESSEL_TABLE {
        let v = bessel_j(n, x).unwrap();
        let rel = (v - reference).abs() / reference.abs();
        worst = worst.max(rel);
        assert!(rel < 1e-12, "J_{n}({x}) = {v:e}, reference {reference:e}, rel {rel:e}");
    }
    eprintln!("worst relative Bessel error {worst:e}");
}

#[test]
fn laguerre_matches_reference_table() {
    let mut worst: f64 = 0.0;
    for &(n, alpha, (xr, xi), (vr, vi)) in LAGUERRE_TABLE {
        let v = laguerre(n, alpha, Complex64::new(xr, xi)).unwrap();
        let reference = Complex64::new(vr, vi);
        let rel = (v - reference).norm() / reference.norm().max(1.0);
        worst = worst.max(rel);
        assert!(rel < 1e-11, "L_{n}^{alpha}({xr}+{xi}i) = {v}, reference {reference}, rel {rel:e}");
    }
    eprintln!("worst relative Laguerre error {worst:e}");
}

proptest! {
    #[test]
    fn bessel_three_term_recurrence(n in 1u32..=50, x in 0.1f64..100.0) {
        let seq = bessel_j_sequence(n + 1, x).unwrap();
        let (a, b, c) = (seq[n as usize - 1], seq[n as usize], seq[n as usize + 1]);
        let lhs = a + c;
        let rhs = 2.0 * n as f64 / x * b;
        let scale = a.abs() + c.abs() + rhs.abs();
        prop_assume!(scale > 1e-280);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * scale, "n={} x={} lhs={:e} rhs={:e}", n, x, lhs, rhs);
    }

    #[test]
    fn bessel_negative_order_parity(n in 0i32..40, x in 0.0f64..100.0) {
        let pos = bessel_j_signed(n, x).unwrap();
        let neg = bessel_j_signed(-n, x).unwrap();
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert_eq!(neg, sign * pos);
    }

    #[test]
    fn laguerre_recurrence_in_degree(n in 1u32..30, alpha in 0u32..12, xr in -5.0f64..20.0, xi in -5.0f64..5.0) {
        // (n+1) L_{n+1} = (2n+1+α−x) L_n − (n+α) L_{n−1}
        let x = Complex64::new(xr, xi);
        let next = laguerre(n + 1, alpha, x).unwrap() * (n + 1) as f64;
        let mid = laguerre(n, alpha, x).unwrap() * ((2 * n + 1 + alpha) as f64 - x);
        let prev = laguerre(n - 1, alpha, x).unwrap() * (n + alpha) as f64;
        let scale = next.norm() + mid.norm() + prev.norm();
        prop_assert!((next - mid + prev).norm() <= 1e-12 * scale);
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn principal_sqrt_squares_back_with_nonnegative_real_part(log_r in -200.0f64..200.0, theta in -std::f64::consts::PI..std::f64::consts::PI) {
        let z = Complex64::from_polar(10f64.powf(log_r), theta);
        let s = principal_sqrt(z);
        prop_assert!(s.re >= 0.0);
        prop_assert!((s * s - z).norm() <= 1e-14 * z.norm());
    }

    #[test]
    fn principal_sqrt_is_continuous_off_the_negative_axis(re in -10.0f64..10.0, im in 1e-3f64..10.0) {
        // Approaching the cut from above and below gives conjugate roots.
        let above = principal_sqrt(Complex64::new(re, im));
        let below = principal_sqrt(Complex64::new(re, -im));
        prop_assert!((above - below.conj()).norm() <= 1e-15 * above.norm());
    }
}

#[test]
fn principal_sqrt_on_the_branch_cut() {
    // On the negative real axis the root lies on the positive imaginary axis.
    for x in [1e-300, 0.25, 4.0, 1e200] {
        let s = principal_sqrt(Complex64::new(-x, 0.0));
        assert_eq!(s.re, 0.0);
        assert!((s.im - x.sqrt()).abs() <= 1e-15 * x.sqrt());
    }
    let s = principal_sqrt(Complex64::new(-4.0, -0.0));
    assert!(s.re >= 0.0);
}
