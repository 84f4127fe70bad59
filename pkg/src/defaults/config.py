from dotmap import DotMap

CONFIG_DEFAULTS = DotMap(
    {
        # None: transform commands need --params, verify runs its default sweep
        "params": None,
        "seed": 42,
        "grid": {
            "x_start": -16.0,
            "dx": 0.03125,
            "n": 1024,
        },
        "tolerances": {
            "parseval": 1e-6,
            "riemann_lebesgue": 1e-3,
            "oracle": 1e-9,
            "round_trip": 1e-8,
            "reduction": 1e-9,
            "convolution": 1e-6,
            "correlation": 1e-6,
            "inverse_tuple": 1e-6,
            # n = 1..4
            "delta": [1e-6, 3.1622776601683795e-06, 1e-5, 1e-4],
            "boas": 1e-3,
            "delta_boas_inverse": 1e-3,
            # relative error of the extrapolated limits
            "pw_estimate": 0.05,
            "boas_estimate": 0.1,
        },
        "convolution": {
            "variant": "as_printed",
        },
        "correlation": {
            "variant": "proof_consistent",
        },
        "spectral": {
            "n_max": 16,
            "method": "power_law",
            "derivative": "spectral",
            "boas_exclusion": 0.5,
            "project": True,
        },
        "filter": {
            "kind": "low_pass",
            "edges": [2.0],
            # None means two bins of the u-grid
            "rolloff": None,
        },
        "demo": {
            # FrFT at alpha = pi/4
            "params": [
                0.7071067811865476,
                0.7071067811865476,
                -0.7071067811865476,
                0.7071067811865476,
                0.0,
                0.0,
            ],
            "grid": {"x_start": -32.0, "dx": 0.03125, "n": 2048},
            "envelope_width": 4.0,
            "center_freq": -20.0,
            "tone_freq": 20.0,
            "tone_amplitude": 1.0,
            # noise energy relative to the clean chirp, in dB
            "noise_db": -10.0,
            "pipeline": "mask",
            "occupancy_threshold": 1e-3,
        },
        "verify": {
            "edge_fraction": 0.05,
            "l1_pairs": 100,
            "delta_orders": [1, 2, 3, 4],
            "boas_orders": [1, 2],
        },
        "outputs": {
            "report": None,
            "out_dir": "outputs",
        },
        "logging": {
            "level": "INFO",
        },
    },
    _dynamic=False,
)
