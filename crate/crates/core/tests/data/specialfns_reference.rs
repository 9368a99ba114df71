// Generated with mpmath at 40 significant digits; do not edit by hand.
const FRAK_K_GRID: &[(f64, f64, f64)] = &[
    (0.0, 1e-06, 13.93144207362642),
    (0.0, 0.1, 2.4270690247020164),
    (0.0, 1.0, 0.42102443824070834),
    (0.0, 1.999, 0.11403383058923292),
    (0.0, 2.0, 0.11389387274953344),
    (0.0, 8.0, 0.0001464707052228154),
    (0.0, 30.0, 2.1324774964630563e-14),
    (0.0, 50.0, 3.4101677497894956e-23),
    (0.3, 1e-06, 1.8410853225263586),
    (0.3, 0.1, 1.4058584948843296),
    (0.3, 1.0, 0.43507602420880204),
    (0.3, 1.999, 0.14301350022255038),
    (0.3, 2.0, 0.14285827271013438),
    (0.3, 8.0, 0.000274780007008505),
    (0.3, 30.0, 5.924637526236007e-14),
    (0.3, 50.0, 1.1037069608558802e-22),
    (1.0, 1e-06, 0.9999999999927843),
    (1.0, 0.1, 0.9853844780870606),
    (1.0, 1.0, 0.6019072301972346),
    (1.0, 1.999, 0.2799596343121422),
    (1.0, 2.0, 0.27973176363304486),
    (1.0, 8.0, 0.0012429536944400092),
    (1.0, 30.0, 6.503196005674649e-13),
    (1.0, 50.0, 1.7220511133587777e-21),
    (2.5, 1e-06, 3.759942411945874),
    (2.5, 0.1, 3.753690697668492),
    (2.5, 1.0, 3.2274795311352618),
    (2.5, 1.999, 2.2060468993493734),
    (2.5, 2.0, 2.2050291088545735),
    (2.5, 8.0, 0.038260044922301686),
    (2.5, 30.0, 1.1645944870406025e-10),
    (2.5, 50.0, 6.413175035620889e-19),
    (3.0, 1e-06, 7.999999999999),
    (3.0, 0.1, 7.990012430465436),
    (3.0, 1.0, 7.101262824737945),
    (3.0, 1.999, 5.181113257441714),
    (3.0, 2.0, 5.179083127589073),
    (3.0, 8.0, 0.1269891665367214),
    (3.0, 30.0, 6.672593871879281e-10),
    (3.0, 50.0, 4.659920967282764e-18),
    (7.0, 1e-06, 46079.99999999808),
    (7.0, 0.1, 46060.80479900021),
    (7.0, 1.0, 44207.02033191488),
    (7.0, 1.999, 39115.182236177294),
    (7.0, 2.0, 39108.866263419164),
    (7.0, 8.0, 4902.413085907346),
    (7.0, 30.0, 0.0010381430166499935),
    (7.0, 50.0, 4.3247462677421845e-11),
    (10.0, 1e-06, 185794559.99999484),
    (10.0, 0.1, 185742958.4630401),
    (10.0, 1.0, 180713289.90102947),
    (10.0, 1.999, 166400216.16312525),
    (10.0, 2.0, 166381981.67506856),
    (10.0, 8.0, 36571689.52737139),
    (10.0, 30.0, 64.02574976213243),
    (10.0, 50.0, 8.936511923816403e-06),
    (-0.5, 1e-06, 1253312.8840019896),
    (-0.5, 0.1, 11.340455279965232),
    (-0.5, 1.0, 0.46106850444789454),
    (-0.5, 1.999, 0.08493613117503286),
    (-0.5, 2.0, 0.08480881187902206),
    (-0.5, 8.0, 5.255500676140341e-05),
    (-0.5, 30.0, 3.909347052838545e-15),
    (-0.5, 50.0, 4.8346589035966e-24),
    (-1.25, 1e-06, 1077900274769387.0),
    (-1.25, 0.1, 338.27296729809837),
    (-1.25, 1.0, 0.7311451879202114),
    (-1.25, 1.999, 0.06603526401925242),
    (-1.25, 2.0, 0.06590422553897794),
    (-1.25, 8.0, 1.1936807681377953e-05),
    (-1.25, 30.0, 3.1160837582218367e-16),
    (-1.25, 50.0, 2.604847613355824e-25),
];
const INC_GAMMA_GRID: &[(f64, f64, f64)] = &[
    (2.0, 0.01, 0.9999503320866597),
    (2.0, 0.1, 0.9953211598395555),
    (2.0, 1.0, 0.7357588823428847),
    (2.0, 2.5, 0.2872974951836458),
    (2.0, 10.0, 0.0004993992273873333),
    (2.0, 40.0, 1.7418252446695514e-16),
    (1.5, 0.01, 0.8855642445373385),
    (1.5, 0.1, 0.8663659577108274),
    (1.5, 1.0, 0.5072822338117733),
    (1.5, 2.5, 0.15225125499165762),
    (1.5, 10.0, 0.0001504303167788443),
    (1.5, 40.0, 2.720076349931951e-17),
    (1.0, 0.01, 0.9900498337491681),
    (1.0, 0.1, 0.9048374180359595),
    (1.0, 1.0, 0.36787944117144233),
    (1.0, 2.5, 0.0820849986238988),
    (1.0, 10.0, 4.5399929762484854e-05),
    (1.0, 40.0, 4.248354255291589e-18),
    (0.5, 0.01, 1.5731185223248434),
    (0.5, 0.1, 1.1604624847937441),
    (0.5, 1.0, 0.27880558528066196),
    (0.5, 2.5, 0.04492695260000794),
    (0.5, 10.0, 1.3726266235449858e-05),
    (0.5, 40.0, 6.636239826795698e-19),
    (0.0, 0.01, 4.037929576538114),
    (0.0, 0.1, 1.8229239584193906),
    (0.0, 1.0, 0.21938393439552029),
    (0.0, 2.5, 0.024914917870269736),
    (0.0, 10.0, 4.156968929685325e-06),
    (0.0, 40.0, 1.036773261451657e-19),
    (-0.5, 0.01, 16.654759630333675),
    (-0.5, 0.1, 3.4017693366916153),
    (-0.5, 1.0, 0.1781477117815607),
    (-0.5, 2.5, 0.013976317753307056),
    (-0.5, 10.0, 1.2609042613241571e-06),
    (-0.5, 40.0, 1.6199610039846915e-20),
    (-1.0, 0.01, 94.96705379837869),
    (-1.0, 0.1, 7.225450221940204),
    (-1.0, 1.0, 0.14849550677592205),
    (-1.0, 2.5, 0.007919081579289782),
    (-1.0, 10.0, 3.830240465631609e-07),
    (-1.0, 40.0, 2.5315302371240276e-21),
    (-2.0, 0.01, 4902.76564184665),
    (-2.0, 0.1, 41.62914579082787),
    (-2.0, 1.0, 0.10969196719776014),
    (-2.0, 2.5, 0.0026072591002670124),
    (-2.0, 10.0, 3.548762553084382e-08),
    (-2.0, 40.0, 6.184558621660772e-23),
    (-3.7, 0.01, 6696582.442744249),
    (-3.7, 0.1, 1182.6650405280361),
    (-3.7, 1.0, 0.07453864420623003),
    (-3.7, 2.5, 0.00041844783804491516),
    (-3.7, 10.0, 6.287446598966928e-10),
    (-3.7, 40.0, 1.1253176512580503e-25),
    (-10.0, 0.01, 9.889511514864318e+18),
    (-10.0, 0.1, 894907574.8358694),
    (-10.0, 1.0, 0.033148544714002595),
    (-10.0, 2.5, 6.772404182297401e-07),
    (-10.0, 10.0, 2.2146903192202743e-16),
    (-10.0, 40.0, 7.976944077454027e-36),
    (-20.0, 0.01, 4.9476452210368715e+38),
    (-20.0, 0.1, 4.500507092028389e+18),
    (-20.0, 1.0, 0.017476673498234323),
    (-20.0, 2.5, 3.99086530153737e-11),
    (-20.0, 10.0, 1.4965283481853803e-26),
    (-20.0, 40.0, 6.369379329827795e-52),
];
const ERFCX_GRID: &[(f64, f64)] = &[
    (-5.0, 144009798674.66104),
    (-1.6, 25.565681638815217),
    (-1.5, 18.653886256262734),
    (-0.3, 1.4537492328427655),
    (0.0, 1.0),
    (0.2, 0.8090195199015807),
    (1.4999, 0.3216017795076341),
    (1.5, 0.3215854164543175),
    (3.0, 0.17900115118138996),
    (10.0, 0.05614099274382259),
    (30.0, 0.01879588886141675),
    (1000.0, 0.0005641893014533876),
];
