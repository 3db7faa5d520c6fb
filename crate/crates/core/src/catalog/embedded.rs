//! The shipped fixture files, embedded at compile time.

/// `(file name, contents)` of every file in `fixtures/`.
pub(super) const FILES: &[(&str, &str)] = &[
    ("apolar_cubic_pencil_1_2.json", include_str!("../../../../fixtures/apolar_cubic_pencil_1_2.json")),
    ("apolar_cubic_pencil_2_5.json", include_str!("../../../../fixtures/apolar_cubic_pencil_2_5.json")),
    ("apolar_cubic_pencil_3_m1.json", include_str!("../../../../fixtures/apolar_cubic_pencil_3_m1.json")),
    ("apolar_ideal_equality.json", include_str!("../../../../fixtures/apolar_ideal_equality.json")),
    ("apolar_sum_of_cubes.json", include_str!("../../../../fixtures/apolar_sum_of_cubes.json")),
    ("binary_cubic_sum_case1.json", include_str!("../../../../fixtures/binary_cubic_sum_case1.json")),
    ("binary_cubic_sum_case2.json", include_str!("../../../../fixtures/binary_cubic_sum_case2.json")),
    ("binary_cubic_sum_case3.json", include_str!("../../../../fixtures/binary_cubic_sum_case3.json")),
    ("binary_cubic_sum_case4.json", include_str!("../../../../fixtures/binary_cubic_sum_case4.json")),
    ("binary_cubic_sum_case5.json", include_str!("../../../../fixtures/binary_cubic_sum_case5.json")),
    ("binary_cubic_sum_exception.json", include_str!("../../../../fixtures/binary_cubic_sum_exception.json")),
    ("fiber_x3y.json", include_str!("../../../../fixtures/fiber_x3y.json")),
    ("fiber_x4_plus_y4.json", include_str!("../../../../fixtures/fiber_x4_plus_y4.json")),
    ("fiber_x4_x2y.json", include_str!("../../../../fixtures/fiber_x4_x2y.json")),
    ("fiber_x4_y3.json", include_str!("../../../../fixtures/fiber_x4_y3.json")),
    ("gorenstein_14221.json", include_str!("../../../../fixtures/gorenstein_14221.json")),
    ("prop_1432_case1.json", include_str!("../../../../fixtures/prop_1432_case1.json")),
    ("prop_1432_case2.json", include_str!("../../../../fixtures/prop_1432_case2.json")),
    ("prop_144_tangent.json", include_str!("../../../../fixtures/prop_144_tangent.json")),
    ("prop_145_shapes.json", include_str!("../../../../fixtures/prop_145_shapes.json")),
    ("prop_154_tangent.json", include_str!("../../../../fixtures/prop_154_tangent.json")),
    ("prop_smooth1nr1.json", include_str!("../../../../fixtures/prop_smooth1nr1.json")),
    ("rayflat_12111.json", include_str!("../../../../fixtures/rayflat_12111.json")),
    ("rayflat_14211.json", include_str!("../../../../fixtures/rayflat_14211.json")),
    ("sm14221_j2.json", include_str!("../../../../fixtures/sm14221_j2.json")),
    ("sm14221_limit.json", include_str!("../../../../fixtures/sm14221_limit.json")),
    ("sm14221_union.json", include_str!("../../../../fixtures/sm14221_union.json")),
    ("socle_example_n4_r2_s1.json", include_str!("../../../../fixtures/socle_example_n4_r2_s1.json")),
    ("socle_example_n4_r4_s1.json", include_str!("../../../../fixtures/socle_example_n4_r4_s1.json")),
    ("socle_example_n4_r4_s3.json", include_str!("../../../../fixtures/socle_example_n4_r4_s3.json")),
    ("socle_example_n5_r3_s2.json", include_str!("../../../../fixtures/socle_example_n5_r3_s2.json")),
    ("table2_143.json", include_str!("../../../../fixtures/table2_143.json")),
    ("table2_143_literal_n5.json", include_str!("../../../../fixtures/table2_143_literal_n5.json")),
    ("table2_143_literal_n6.json", include_str!("../../../../fixtures/table2_143_literal_n6.json")),
    ("table2_143_n5.json", include_str!("../../../../fixtures/table2_143_n5.json")),
    ("table2_143_n6.json", include_str!("../../../../fixtures/table2_143_n6.json")),
    ("table2_143_pt.json", include_str!("../../../../fixtures/table2_143_pt.json")),
    ("table2_143_pt2.json", include_str!("../../../../fixtures/table2_143_pt2.json")),
    ("table2_143_pt2_n5.json", include_str!("../../../../fixtures/table2_143_pt2_n5.json")),
    ("table2_143_pt2_n6.json", include_str!("../../../../fixtures/table2_143_pt2_n6.json")),
    ("table2_143_pt_n5.json", include_str!("../../../../fixtures/table2_143_pt_n5.json")),
    ("table2_143_pt_n6.json", include_str!("../../../../fixtures/table2_143_pt_n6.json")),
    ("table2_153.json", include_str!("../../../../fixtures/table2_153.json")),
    ("table2_153_n6.json", include_str!("../../../../fixtures/table2_153_n6.json")),
    ("table2_153_pt.json", include_str!("../../../../fixtures/table2_153_pt.json")),
    ("table2_153_pt_n6.json", include_str!("../../../../fixtures/table2_153_pt_n6.json")),
    ("table2_163.json", include_str!("../../../../fixtures/table2_163.json")),
    ("zero_algebra.json", include_str!("../../../../fixtures/zero_algebra.json")),
];
