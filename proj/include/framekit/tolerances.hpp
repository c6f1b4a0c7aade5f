#ifndef FRAMEKIT_TOLERANCES_HPP
#define FRAMEKIT_TOLERANCES_HPP

namespace framekit {

// Relative thresholds shared by every module. Each field scales with a matrix
// norm at its point of use:
//   herm    ‖A − A*‖_F ≤ herm·‖A‖_F
//   psd     λ ≥ −psd·(1 + ‖A‖_F)
//   eig     residual bound for eigen/sqrt/inverse postconditions
//   inv     smallest |λ| or σ must exceed inv·‖A‖_F
//   frame   λ_min(S) must exceed frame·λ_max(S)
//   decomp  reintegration and uniqueness residuals ≤ decomp·(1 + ‖M(Ω)‖_F)
struct Tolerances {
    double herm = 1e-10;
    double psd = 1e-10;
    double eig = 1e-10;
    double inv = 1e-12;
    double frame = 1e-10;
    double decomp = 1e-10;
};

} // namespace framekit

#endif // FRAMEKIT_TOLERANCES_HPP
