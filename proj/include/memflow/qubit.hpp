// qubit.hpp: 2×2 density matrices, Bloch parametrization, Kraus channels and the dephasing map

#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace memflow {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;

// Tolerance used when validating states (hermiticity, trace, positivity).
inline constexpr double kStateTol = 1e-12;

struct BlochVector {
    double x{0.0};
    double y{0.0};
    double z{0.0};

    double norm() const noexcept;
};

// Eigenpairs of a 2×2 Hermitian matrix; values descending, vectors as columns.
struct Eigensystem2 {
    std::array<double, 2> values{};
    Matrix2 vectors = Matrix2::Identity();
};

// Closed-form (trace/determinant) eigendecomposition of a Hermitian 2×2 matrix.
// A gap below 1e-14 is treated as degenerate and returns the standard basis.
Eigensystem2 eigendecompose(const Matrix2& hermitian);

// Hermitian, unit trace, positive semidefinite 2×2 matrix.
class DensityMatrix {
public:
    // I/2
    DensityMatrix();

    // Validates the invariants within `tol` and throws InvalidState otherwise.
    // The stored matrix is the Hermitian part of the input.
    static DensityMatrix from_matrix(const Matrix2& m, double tol = kStateTol);

    const Matrix2& matrix() const noexcept { return m_; }
    Complex operator()(int row, int col) const { return m_(row, col); }

    Eigensystem2 eigen() const { return eigendecompose(m_); }

    // Tr(this · other)
    double overlap(const DensityMatrix& other) const;

private:
    explicit DensityMatrix(const Matrix2& m) : m_(m) {}
    friend DensityMatrix mixture(const DensityMatrix&, const DensityMatrix&, double);
    friend DensityMatrix dephase(const DensityMatrix&, double);

    Matrix2 m_;
};

// weight·a + (1 − weight)·b, weight ∈ [0, 1].
DensityMatrix mixture(const DensityMatrix& a, const DensityMatrix& b, double weight);

DensityMatrix from_bloch(const BlochVector& v);
BlochVector to_bloch(const DensityMatrix& rho);

// Projectors on (|1⟩ ± e^{iφ}|0⟩)/√2 with |0⟩ the first basis vector.
// The first element has Bloch vector (cos φ, −sin φ, 0).
std::pair<DensityMatrix, DensityMatrix> equatorial_pair(double phi);

// Pure dephasing: coherences scaled by e^{−Γ}, populations untouched. Γ = +∞ is allowed.
DensityMatrix dephase(const DensityMatrix& rho, double gamma);

class KrausChannel {
public:
    // Throws InvalidParameter when Σ K†K deviates from the identity by more than `tol`.
    static KrausChannel from_operators(std::vector<Matrix2> ops, double tol = 1e-10);

    const std::vector<Matrix2>& operators() const noexcept { return ops_; }

    DensityMatrix apply(const DensityMatrix& rho) const;

    // max |Σ K†K − I|
    double completeness_error() const;

private:
    explicit KrausChannel(std::vector<Matrix2> ops) : ops_(std::move(ops)) {}
    std::vector<Matrix2> ops_;
};

// Uniform on the Bloch ball.
DensityMatrix random_state(std::mt19937_64& rng);
DensityMatrix random_state(std::uint64_t seed);

// Uniform on the Bloch sphere.
DensityMatrix random_pure_state(std::mt19937_64& rng);

// Gaussian complex Kraus candidates A_k normalized as K_k = A_k (Σ A†A)^{-1/2}.
KrausChannel random_channel(std::mt19937_64& rng, int num_kraus);
KrausChannel random_channel(std::uint64_t seed, int num_kraus);

} // namespace memflow
