"""Target RMS tables (rows: exponent field, columns: N_bar)."""

FIELDS_A = ["alpha1", "alpha2", "alpha3", "alpha4", "alpha5", 0.4, 1.0, 2.0]
FIELDS_B = ["alpha1", "alpha2", "alpha3", "alpha4", "alpha5", 0.4, 1.0, 1.5]

SINC_NBAR = [5, 9, 17, 33]
SINC_TABLE = [
    [6.7660e-2, 2.5903e-2, 1.4718e-3, 1.3326e-6],
    [3.9105e-3, 2.9816e-4, 2.2903e-6, 6.686e-10],
    [3.9108e-2, 1.4876e-2, 8.5310e-4, 7.6271e-7],
    [9.2343e-2, 3.1023e-2, 1.6061e-3, 1.3948e-6],
    [7.9705e-3, 9.1226e-4, 1.1420e-5, 2.3138e-9],
    [4.1548e-3, 4.5222e-4, 6.1030e-6, 1.1654e-9],
    [1.3176e-2, 2.1256e-3, 4.4558e-5, 1.3697e-8],
    [1.2938e-1, 4.3848e-2, 2.2715e-3, 1.9727e-6],
]

HAT_NBAR = [5, 9, 17, 33]
HAT_TABLE = [
    [1.0027, 4.4181e-1, 3.9168e-2, 9.1883e-5],
    [5.1815e-2, 4.6255e-3, 5.8942e-5, 2.9064e-8],
    [5.7334e-1, 2.5332e-1, 2.2695e-2, 5.2574e-5],
    [1.3307, 5.2260e-1, 4.2654e-2, 9.6097e-5],
    [1.0689e-1, 1.4340e-2, 2.9488e-4, 1.5848e-7],
    [5.6460e-2, 7.2266e-3, 1.5830e-4, 8.1212e-8],
    [1.8008e-1, 3.4163e-2, 1.1604e-3, 1.0146e-6],
    [5.3719e-1, 1.3938e-1, 7.1335e-3, 1.0443e-5],
]

POISSON_NBAR = [5, 9, 17, 33, 65]
POISSON_TABLE = [
    [6.4786e-2, 1.1510e-3, 6.0664e-4, 6.4472e-5, 2.9989e-7],
    [6.4359e-2, 9.4464e-4, 1.6883e-4, 8.4450e-6, 1.4821e-8],
    [5.2901e-2, 1.0656e-3, 4.4010e-4, 4.3140e-5, 1.6498e-7],
    [1.8067e-1, 2.7515e-3, 9.3588e-4, 1.0025e-4, 2.4128e-7],
    [6.6009e-2, 1.0023e-3, 2.4019e-4, 1.3242e-5, 7.1019e-8],
    [4.6934e-2, 9.2165e-4, 1.8985e-4, 1.0400e-5, 2.1501e-8],
    [6.6192e-2, 1.0330e-3, 3.3376e-4, 2.1650e-5, 6.9136e-8],
    [2.0163e-1, 3.5564e-3, 1.6341e-3, 1.7738e-4, 6.9761e-7],
]
