#pragma once

// Seeded random states and unitaries.
//
// The generator is reproducible across implementations:
//   * engine: std::mt19937_64 seeded with the 64-bit seed (bit-exact per the
//     C++ standard, identical to the reference MT19937-64);
//   * uniform: u = (x >> 11) * 2^-53, x a raw engine output, so u in [0, 1);
//   * normal pair (Box-Muller): r = sqrt(-2 ln(1 - u1)), z0 = r cos(2 pi u2),
//     z1 = r sin(2 pi u2), consuming u1 then u2;
//   * complex Gaussian amplitude: re = z0, im = z1 from one Box-Muller pair;
//   * random ket: draw dim complex Gaussians in index order, then normalize;
//   * random unitary: draw an n x n complex Gaussian matrix in row-major
//     order, take its Householder QR, and multiply column k of Q by
//     r_kk / |r_kk| (Haar measure).

#include <cstdint>
#include <random>

#include "statecopy/state.hpp"

namespace statecopy {

class StateRng {
public:
    explicit StateRng(std::uint64_t seed) : engine_(seed) {}

    double uniform();
    cplx complex_gaussian();

    Ket ket(std::size_t dim, std::string space_label = "S");
    OperatorMatrix unitary(std::size_t dim);

private:
    std::mt19937_64 engine_;
};

}  // namespace statecopy
