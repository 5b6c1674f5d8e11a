//! Published benchmark values for the sine-wave and travelling-wave runs.
//!
//! Sine tables are indexed `[x][t]` over [`SINE_XS`] and [`SINE_TIMES`].

pub const SINE_XS: [f64; 3] = [0.25, 0.5, 0.75];
pub const SINE_TIMES: [f64; 5] = [0.4, 0.6, 0.8, 1.0, 3.0];

/// One sine-wave comparison table.
#[derive(Debug, Clone, Copy)]
pub struct SineTable {
    pub name: &'static str,
    pub lambda: f64,
    pub n_cells: usize,
    pub dt: f64,
    pub present: [[f64; 5]; 3],
    pub exact: [[f64; 5]; 3],
    /// Exact-column cells known to be misprinted, as `(x index, t index)`.
    pub misprinted_exact: &'static [(usize, usize)],
}

pub const TABLE2: SineTable = SineTable {
    name: "table2",
    lambda: 1.0,
    n_cells: 40,
    dt: 1e-4,
    present: [
        [0.01355, 0.00188, 0.00026, 0.00004, 0.00000],
        [0.01920, 0.00266, 0.00037, 0.00005, 0.00000],
        [0.01361, 0.00188, 0.00026, 0.00004, 0.00000],
    ],
    exact: [
        [0.01357, 0.00189, 0.00026, 0.00004, 0.00000],
        [0.01924, 0.00267, 0.00037, 0.00005, 0.00000],
        [0.01363, 0.00189, 0.00026, 0.00004, 0.00000],
    ],
    misprinted_exact: &[],
};

pub const TABLE3: SineTable = SineTable {
    name: "table3",
    lambda: 0.1,
    n_cells: 40,
    dt: 1e-4,
    present: [
        [0.30892, 0.24078, 0.19572, 0.16261, 0.02718],
        [0.56971, 0.44730, 0.35932, 0.29197, 0.04017],
        [0.62524, 0.48698, 0.37369, 0.28727, 0.02974],
    ],
    exact: [
        [0.30889, 0.24074, 0.19568, 0.16256, 0.02720],
        [0.56963, 0.44721, 0.35924, 0.29192, 0.04021],
        [0.62544, 0.48721, 0.37392, 0.28747, 0.02977],
    ],
    misprinted_exact: &[],
};

pub const TABLE4: SineTable = SineTable {
    name: "table4",
    lambda: 0.01,
    n_cells: 40,
    dt: 1e-4,
    present: [
        [0.34191, 0.26896, 0.22148, 0.18819, 0.07511],
        [0.66071, 0.52942, 0.43914, 0.37442, 0.15017],
        [0.91029, 0.76725, 0.64740, 0.55605, 0.22489],
    ],
    exact: [
        [0.34191, 0.22896, 0.22148, 0.18819, 0.07511],
        [0.66071, 0.52942, 0.43914, 0.37442, 0.15018],
        [0.91026, 0.76724, 0.64740, 0.55605, 0.22481],
    ],
    // 0.22896 against 0.26896 in the neighbouring columns
    misprinted_exact: &[(0, 1)],
};

/// Travelling wave at `t = 0.5` on `x = i / 18`, `alpha = 0.4`, `mu = 0.6`,
/// `gamma = 0.125`, `lambda = 0.01`, `h = 1/36`.
pub mod table5 {
    pub const ALPHA: f64 = 0.4;
    pub const MU: f64 = 0.6;
    pub const GAMMA: f64 = 0.125;
    pub const LAMBDA: f64 = 0.01;
    pub const N_CELLS: usize = 36;
    pub const TIME: f64 = 0.5;
    /// The two step sizes the published run may have used.
    pub const DTS: [f64; 2] = [0.001, 0.01];

    pub const PRESENT: [f64; 19] = [
        1.0, 1.0, 1.0, 1.0, 1.0, 0.999, 0.983, 0.845, 0.456, 0.237, 0.203, 0.2, 0.2, 0.2, 0.2,
        0.2, 0.2, 0.2, 0.2,
    ];
    pub const EXACT: [f64; 19] = [
        1.0, 1.0, 1.0, 1.0, 1.0, 0.998, 0.980, 0.847, 0.452, 0.238, 0.204, 0.2, 0.2, 0.2, 0.2,
        0.2, 0.2, 0.2, 0.2,
    ];

    pub fn sample_xs() -> Vec<f64> {
        (0..=18).map(|i| i as f64 / 18.0).collect()
    }
}

pub const SINE_TABLES: [&SineTable; 3] = [&TABLE2, &TABLE3, &TABLE4];
