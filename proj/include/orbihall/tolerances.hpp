#pragma once

namespace orbihall {

// Every numerical threshold used by the library lives here.
struct tolerances {
    double boundary_guard = 1e-12;    // points must satisfy |z| < 1 - boundary_guard
    double determinant = 1e-12;       // |ad - bc - 1| for isometries
    double parabolic = 1e-9;          // | |tr| - 2 | below this counts as parabolic/identity
    double identity = 1e-9;           // matrix max-norm distance for "equals identity"
    double quantization = 1e-6;       // cell size for hashing canonical matrices
    double separation_factor = 10.0;  // orbit points must be this many cells apart
    double relator = 1e-9;            // acceptable relator residual
    double newton_target = 1e-12;     // solver stopping residual
    int newton_max_iterations = 400;
    int newton_restarts = 8;
    double hermitian = 1e-12;         // Hermiticity residual of assembled matrices
    double ldos_weight = 1e-4;        // basepoint weight for an eigenvalue to count as bulk
    double gap_min_width = 0.05;
    double spectrum_clearance = 1e-6; // E must be at least this far from bulk eigenvalues
};

inline const tolerances& default_tolerances() {
    static const tolerances t{};
    return t;
}

}  // namespace orbihall
