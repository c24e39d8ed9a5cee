#pragma once

#include <cmath>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "gdist/errors.hpp"

namespace gdist {

using Matrix = Eigen::MatrixXd;

struct EigenDecomposition {
    std::vector<double> values;                // ascending
    std::vector<std::vector<double>> vectors;  // vectors[i] pairs with values[i], unit norm
};

namespace detail {
inline EigenDecomposition unpack(const Eigen::SelfAdjointEigenSolver<Matrix>& solver) {
    if (solver.info() != Eigen::Success) throw ComputationError("symmetric eigensolver did not converge");
    EigenDecomposition out;
    const auto& vals = solver.eigenvalues();
    const auto& vecs = solver.eigenvectors();
    for (Eigen::Index i = 0; i < vals.size(); ++i) {
        out.values.push_back(vals[i]);
        out.vectors.emplace_back(vecs.col(i).data(), vecs.col(i).data() + vecs.rows());
    }
    return out;
}
}  // namespace detail

inline EigenDecomposition symmetricEigen(const Matrix& a) {
    return detail::unpack(Eigen::SelfAdjointEigenSolver<Matrix>(a));
}

// Symmetric tridiagonal matrix with off[i] coupling i and i+1.
inline EigenDecomposition tridiagonalEigen(const std::vector<double>& diag, std::vector<double> off) {
    const auto n = static_cast<Eigen::Index>(diag.size());
    off.resize(diag.size() > 0 ? diag.size() - 1 : 0);
    Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(diag.data(), n);
    Eigen::VectorXd e = Eigen::Map<const Eigen::VectorXd>(off.data(), static_cast<Eigen::Index>(off.size()));
    Eigen::SelfAdjointEigenSolver<Matrix> solver;
    solver.computeFromTridiagonal(d, e);
    return detail::unpack(solver);
}

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace gdist
