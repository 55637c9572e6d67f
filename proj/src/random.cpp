#include "statecopy/random.hpp"

#include <cmath>
#include <numbers>

namespace statecopy {

double StateRng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

cplx StateRng::complex_gaussian() {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
}

Ket StateRng::ket(std::size_t dim, std::string space_label) {
    CVector v(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = complex_gaussian();
    return Ket(std::move(space_label), std::move(v)).normalized();
}

OperatorMatrix StateRng::unitary(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    CMatrix g(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c) g(r, c) = complex_gaussian();
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
    const CMatrix& r = qr.matrixQR();
    for (Eigen::Index k = 0; k < n; ++k) {
        const cplx d = r(k, k);
        if (std::abs(d) > 0.0) q.col(k) *= d / std::abs(d);
    }
    return OperatorMatrix::unitary(std::move(q));
}

}  // namespace statecopy
