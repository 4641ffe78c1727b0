//! Printed (chi-square, W) pairs and average-rank rows from ten reference
//! tables. Algorithm order in every row: ETO CPS IPS AOA GJO GWO HGS HHO SCA SCH.

use etoscope_stats::{dunn_sidak_adjust, effect_size_r, quartile_tags};

struct Table {
    label: &'static str,
    blocks: usize,
    chi2: f64,
    w: f64,
    ranks: [f64; 10],
    quartiles: [u8; 10],
}

const TABLES: [Table; 10] = [
    Table { label: "2021 10D basic", blocks: 250, chi2: 1760.808, w: 0.783,
        ranks: [3.460, 8.720, 8.936, 2.896, 5.028, 7.344, 3.684, 4.164, 8.156, 2.612],
        quartiles: [2, 4, 4, 1, 3, 3, 2, 2, 4, 1] },
    Table { label: "2021 20D basic", blocks: 250, chi2: 1878.093, w: 0.835,
        ranks: [3.290, 8.624, 9.296, 3.266, 5.028, 7.154, 3.046, 4.210, 8.436, 2.650],
        quartiles: [2, 4, 4, 2, 3, 3, 1, 2, 4, 1] },
    Table { label: "2021 10D shifted", blocks: 250, chi2: 1537.800, w: 0.683,
        ranks: [6.336, 2.668, 2.388, 9.280, 6.352, 4.776, 1.944, 6.164, 8.248, 6.844],
        quartiles: [3, 2, 1, 4, 3, 2, 1, 2, 4, 4] },
    Table { label: "2021 20D shifted", blocks: 250, chi2: 1460.060, w: 0.649,
        ranks: [6.292, 3.592, 3.092, 9.320, 6.560, 4.416, 1.364, 5.324, 8.320, 6.720],
        quartiles: [3, 2, 1, 4, 3, 2, 1, 2, 4, 4] },
    Table { label: "2021 10D shift-rotated", blocks: 250, chi2: 1028.803, w: 0.457,
        ranks: [5.936, 3.756, 2.676, 9.268, 5.484, 3.508, 4.044, 6.164, 7.708, 6.456],
        quartiles: [3, 2, 1, 4, 2, 1, 2, 3, 4, 4] },
    Table { label: "2021 20D shift-rotated", blocks: 250, chi2: 1223.353, w: 0.544,
        ranks: [6.144, 4.168, 3.052, 9.540, 5.688, 3.568, 2.556, 5.508, 8.016, 6.760],
        quartiles: [3, 2, 1, 4, 3, 2, 1, 2, 4, 4] },
    Table { label: "2017 10D", blocks: 725, chi2: 2467.558, w: 0.378,
        ranks: [5.979, 3.550, 2.793, 8.844, 5.440, 4.124, 4.069, 6.484, 7.026, 6.690],
        quartiles: [3, 1, 1, 4, 2, 2, 2, 3, 4, 4] },
    Table { label: "2017 30D", blocks: 725, chi2: 3516.293, w: 0.539,
        ranks: [6.299, 4.491, 3.099, 9.283, 5.308, 3.068, 2.672, 5.859, 8.153, 6.768],
        quartiles: [3, 2, 2, 4, 2, 1, 1, 3, 4, 4] },
    Table { label: "2017 50D", blocks: 725, chi2: 3899.173, w: 0.598,
        ranks: [6.214, 5.302, 3.473, 9.495, 5.258, 2.749, 2.210, 5.188, 8.472, 6.640],
        quartiles: [3, 3, 2, 4, 2, 1, 1, 2, 4, 4] },
    Table { label: "2017 100D", blocks: 725, chi2: 4116.007, w: 0.631,
        ranks: [6.167, 6.124, 4.019, 9.276, 5.106, 2.583, 1.800, 4.634, 8.753, 6.537],
        quartiles: [3, 3, 2, 4, 2, 1, 1, 2, 4, 4] },
];

#[test]
fn kendall_identity_reproduces_printed_w() {
    for t in &TABLES {
        let w = t.chi2 / (t.blocks as f64 * 9.0);
        assert!((w - t.w).abs() < 1e-3, "{}: {w} vs {}", t.label, t.w);
    }
}

#[test]
fn quartile_rows_reproduced() {
    for t in &TABLES {
        assert_eq!(quartile_tags(&t.ranks), t.quartiles.to_vec(), "{}", t.label);
    }
}

#[test]
fn printed_ranks_are_conserved() {
    for t in &TABLES {
        let s: f64 = t.ranks.iter().sum();
        assert!((s - 55.0).abs() < 0.01, "{}: {s}", t.label);
    }
}

#[test]
fn block_counts() {
    assert_eq!(10 * 25, 250);
    assert_eq!(29 * 25, 725);
    assert!(TABLES.iter().all(|t| t.blocks == 250 || t.blocks == 725));
}

#[test]
fn dominance_row_ceiling() {
    // printed: r 0.867, delta -1.000 at N = 250
    let n = 250.0_f64;
    let z = (n * (n + 1.0) / 4.0) / (n * (n + 1.0) * (2.0 * n + 1.0) / 24.0).sqrt();
    assert!((z - 13.706_722_857_671_194).abs() < 1e-12);
    assert!((effect_size_r(z, 250) - 0.867).abs() < 1e-3);
    assert!((dunn_sidak_adjust(0.05, 9) - 0.369_750_590_275_390_6).abs() < 1e-15);
}
