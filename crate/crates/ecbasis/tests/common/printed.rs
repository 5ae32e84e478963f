//! Four-decimal values printed for the exponential-trigonometric example
//! (ω = 1/(3π), β = 5π/6).

pub const RHO: [[f64; 5]; 5] = [
    [0.8038, -0.7765, -2.4061, 0.9728, 1.0761],
    [-1.2028, 4.2007, 2.2514, -2.9979, -0.4876],
    [1.4484, -4.8494, 0.5805, 3.4009, -1.4558],
    [-1.1191, 2.8895, -2.3598, -1.7704, 2.8542],
    [0.9779, -0.4889, 2.2781, -0.4889, -2.2781],
];

/// Reversed Wronskian at β.
pub const W: [[f64; 5]; 5] = [
    [1.2166, 0.0, 0.0, 0.0, 0.0],
    [1.3923, -0.9304, 0.0, 0.0, 0.0],
    [0.6629, -1.6472, 1.0000, 0.0, 0.0],
    [-0.8886, -0.5383, 1.7705, -1.0748, 0.0],
    [-1.5551, 2.1130, -0.4963, -1.2300, 0.8219],
];

pub const L: [[f64; 5]; 5] = [
    [1.0, 0.0, 0.0, 0.0, 0.0],
    [1.1444, 1.0, 0.0, 0.0, 0.0],
    [0.5449, 1.7705, 1.0, 0.0, 0.0],
    [-0.7303, 0.5786, 1.7705, 1.0, 0.0],
    [-1.2782, -2.2711, -0.4963, 1.1444, 1.0],
];

pub const U: [[f64; 5]; 5] = [
    [1.2166, 0.0, 0.0, 0.0, 0.0],
    [0.0, -0.9304, 0.0, 0.0, 0.0],
    [0.0, 0.0, 1.0000, 0.0, 0.0],
    [0.0, 0.0, 0.0, -1.0748, 0.0],
    [0.0, 0.0, 0.0, 0.0, 0.8219],
];

/// λ_{i,0} for i = 0..=2.
pub const LAMBDA0: [f64; 3] = [1.0, -1.1444, 1.4812];

/// (row, column, value) of the printed μ entries.
pub const MU: [(usize, usize, f64); 6] =
    [(0, 0, 0.8219), (0, 1, 0.0), (0, 2, 0.0), (1, 1, -1.0748), (1, 2, 0.0), (2, 2, 1.0)];

pub const T: [[f64; 5]; 5] = [
    [1.0000, 1.0000, 1.0000, 1.0000, 1.0000],
    [1.0000, 0.9073, 0.2057, -0.3859, -0.6560],
    [0.0, 0.8738, 1.0520, 0.9871, 0.3787],
    [1.0000, 1.0927, 0.4593, -0.4605, -1.1433],
    [0.0, 0.8738, 1.3386, 1.5980, 0.6601],
];

pub const SPIRAL: [[f64; 2]; 5] = [[1.0, 0.0], [1.0927, 0.8738], [0.4593, 1.3386], [-0.4605, 1.5980], [-1.1433, 0.6601]];
