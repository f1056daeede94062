// qubit.cpp: 2×2 density-matrix algebra

#include "memflow/qubit.hpp"

#include "memflow/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace memflow {

namespace {

constexpr double kDegenerateGap = 1e-14;

Matrix2 pauli_x() { Matrix2 m; m << 0.0, 1.0, 1.0, 0.0; return m; }
Matrix2 pauli_y() { Matrix2 m; m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0; return m; }
Matrix2 pauli_z() { Matrix2 m; m << 1.0, 0.0, 0.0, -1.0; return m; }

double max_abs(const Matrix2& m) {
    return m.cwiseAbs().maxCoeff();
}

} // namespace

double BlochVector::norm() const noexcept {
    return std::sqrt(x * x + y * y + z * z);
}

Eigensystem2 eigendecompose(const Matrix2& h) {
    const double a = h(0, 0).real();
    const double d = h(1, 1).real();
    const Complex b = 0.5 * (h(0, 1) + std::conj(h(1, 0)));

    const double mean = 0.5 * (a + d);
    const double half_split = 0.5 * (a - d);
    const double radius = std::hypot(half_split, std::abs(b));

    Eigensystem2 es;
    es.values = {mean + radius, mean - radius};
    if (2.0 * radius < kDegenerateGap) {
        es.vectors = Matrix2::Identity();
        return es;
    }

    // Pick the row of (H − λ₊) that is better conditioned.
    Eigen::Vector2cd v;
    if (half_split >= 0.0) {
        v << half_split + radius, std::conj(b);
    } else {
        v << b, radius - half_split;
    }
    v.normalize();
    es.vectors.col(0) = v;
    es.vectors(0, 1) = -std::conj(v(1));
    es.vectors(1, 1) = std::conj(v(0));
    return es;
}

DensityMatrix::DensityMatrix() : m_(0.5 * Matrix2::Identity()) {}

DensityMatrix DensityMatrix::from_matrix(const Matrix2& m, double tol) {
    if (!m.allFinite()) {
        throw InvalidState("density matrix has non-finite entries");
    }
    const double herm_err = max_abs(m - m.adjoint());
    if (herm_err > tol) {
        throw InvalidState("matrix is not Hermitian (deviation " + std::to_string(herm_err) + ")");
    }
    const Matrix2 hm = 0.5 * (m + m.adjoint());
    const double tr = hm.trace().real();
    if (std::abs(tr - 1.0) > tol) {
        throw InvalidState("matrix trace " + std::to_string(tr) + " differs from 1");
    }
    const double smallest = eigendecompose(hm).values[1];
    if (smallest < -tol) {
        throw InvalidState("matrix has negative eigenvalue " + std::to_string(smallest));
    }
    return DensityMatrix(hm);
}

double DensityMatrix::overlap(const DensityMatrix& other) const {
    return (m_ * other.m_).trace().real();
}

DensityMatrix mixture(const DensityMatrix& a, const DensityMatrix& b, double weight) {
    if (!(weight >= 0.0 && weight <= 1.0)) {
        throw InvalidParameter("mixture weight must lie in [0, 1]");
    }
    return DensityMatrix(weight * a.m_ + (1.0 - weight) * b.m_);
}

DensityMatrix from_bloch(const BlochVector& v) {
    const double n = v.norm();
    if (!std::isfinite(n) || n > 1.0 + kStateTol) {
        throw InvalidState("Bloch vector norm " + std::to_string(n) + " exceeds 1");
    }
    const Matrix2 m = 0.5 * (Matrix2::Identity() + v.x * pauli_x() + v.y * pauli_y() + v.z * pauli_z());
    return DensityMatrix::from_matrix(m);
}

BlochVector to_bloch(const DensityMatrix& rho) {
    const Complex off = rho(1, 0);
    return {2.0 * off.real(), 2.0 * off.imag(), (rho(0, 0) - rho(1, 1)).real()};
}

std::pair<DensityMatrix, DensityMatrix> equatorial_pair(double phi) {
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    return {from_bloch({c, -s, 0.0}), from_bloch({-c, s, 0.0})};
}

DensityMatrix dephase(const DensityMatrix& rho, double gamma) {
    if (!(gamma >= 0.0)) {
        throw InvalidParameter("decoherence exponent must be non-negative");
    }
    const double factor = std::exp(-gamma);
    Matrix2 m = rho.m_;
    m(0, 1) *= factor;
    m(1, 0) *= factor;
    return DensityMatrix(m);
}

KrausChannel KrausChannel::from_operators(std::vector<Matrix2> ops, double tol) {
    if (ops.empty()) {
        throw InvalidParameter("Kraus channel needs at least one operator");
    }
    KrausChannel ch(std::move(ops));
    const double err = ch.completeness_error();
    if (!(err <= tol)) {
        throw InvalidParameter("Kraus operators are not trace preserving (error " + std::to_string(err) + ")");
    }
    return ch;
}

double KrausChannel::completeness_error() const {
    Matrix2 sum = Matrix2::Zero();
    for (const auto& k : ops_) {
        sum += k.adjoint() * k;
    }
    return max_abs(sum - Matrix2::Identity());
}

DensityMatrix KrausChannel::apply(const DensityMatrix& rho) const {
    Matrix2 out = Matrix2::Zero();
    for (const auto& k : ops_) {
        out += k * rho.matrix() * k.adjoint();
    }
    return DensityMatrix::from_matrix(out);
}

DensityMatrix random_state(std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    double x = 0.0, y = 0.0, z = 0.0, n = 0.0;
    do {
        x = normal(rng);
        y = normal(rng);
        z = normal(rng);
        n = std::sqrt(x * x + y * y + z * z);
    } while (n == 0.0);
    const double r = std::cbrt(uniform(rng)) / n;
    return from_bloch({x * r, y * r, z * r});
}

DensityMatrix random_state(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_state(rng);
}

DensityMatrix random_pure_state(std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    double x = 0.0, y = 0.0, z = 0.0, n = 0.0;
    do {
        x = normal(rng);
        y = normal(rng);
        z = normal(rng);
        n = std::sqrt(x * x + y * y + z * z);
    } while (n == 0.0);
    return from_bloch({x / n, y / n, z / n});
}

KrausChannel random_channel(std::mt19937_64& rng, int num_kraus) {
    if (num_kraus < 1 || num_kraus > 4) {
        throw InvalidParameter("number of Kraus operators must be in 1..4");
    }
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<Matrix2> ops(static_cast<std::size_t>(num_kraus));
    Matrix2 gram = Matrix2::Zero();
    for (auto& a : ops) {
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                a(i, j) = Complex(normal(rng), normal(rng));
            }
        }
        gram += a.adjoint() * a;
    }
    const Eigensystem2 es = eigendecompose(gram);
    const Eigen::Vector2cd inv_sqrt(1.0 / std::sqrt(es.values[0]), 1.0 / std::sqrt(es.values[1]));
    const Matrix2 correction = es.vectors * inv_sqrt.asDiagonal() * es.vectors.adjoint();
    for (auto& a : ops) {
        a = a * correction;
    }
    return KrausChannel::from_operators(std::move(ops));
}

KrausChannel random_channel(std::uint64_t seed, int num_kraus) {
    std::mt19937_64 rng(seed);
    return random_channel(rng, num_kraus);
}

} // namespace memflow
