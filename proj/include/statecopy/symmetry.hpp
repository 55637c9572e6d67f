#pragma once

// SU(2) x parity representation labels, tensor-product decomposition and
// Clebsch-Gordan coefficients (Condon-Shortley phase convention).

#include <compare>
#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace statecopy {

/// Non-negative or negative half-integer stored as twice its value.
class HalfInteger {
public:
    constexpr HalfInteger() = default;
    constexpr HalfInteger(int whole) : twice_(2 * whole) {}  // NOLINT: integers are half-integers
    static constexpr HalfInteger from_twice(int twice) {
        HalfInteger h;
        h.twice_ = twice;
        return h;
    }

    constexpr int twice() const noexcept { return twice_; }
    constexpr double value() const noexcept { return 0.5 * twice_; }
    constexpr bool is_integer() const noexcept { return twice_ % 2 == 0; }

    friend constexpr auto operator<=>(HalfInteger, HalfInteger) = default;
    friend constexpr HalfInteger operator+(HalfInteger a, HalfInteger b) { return from_twice(a.twice_ + b.twice_); }
    friend constexpr HalfInteger operator-(HalfInteger a, HalfInteger b) { return from_twice(a.twice_ - b.twice_); }
    constexpr HalfInteger operator-() const { return from_twice(-twice_); }

    std::string str() const;

private:
    int twice_ = 0;
};

/// 1/2, 3/2, ... as HalfInteger::from_twice(1), from_twice(3), ...
constexpr HalfInteger half(int numerator) { return HalfInteger::from_twice(numerator); }

enum class Parity { Even = 1, Odd = -1, Unspecified = 0 };

Parity operator*(Parity a, Parity b);
const char* to_string(Parity p) noexcept;

struct IrrepLabel {
    HalfInteger j;
    Parity parity = Parity::Unspecified;

    /// Throws std::invalid_argument for negative j.
    IrrepLabel(HalfInteger j_, Parity p = Parity::Unspecified);

    int dimension() const noexcept { return j.twice() + 1; }
    friend bool operator==(const IrrepLabel&, const IrrepLabel&) = default;
};

/// Dipole photon: j = 1, odd parity.
IrrepLabel photon_irrep();

/// Irreps J = |j1 - j2|, ..., j1 + j2 with parity p1 * p2 (unspecified if
/// either factor is).
std::vector<IrrepLabel> decompose_product(const IrrepLabel& a, const IrrepLabel& b);

/// target occurs in e (x) gamma: the triangle rule on j, and equal parity when
/// both the target and the product parity are specified.
bool contains(const IrrepLabel& target, const IrrepLabel& e, const IrrepLabel& gamma);

/// Weight-resolved containment: the state |j_t m_t> has a nonzero component
/// in |j_e m_e> (x) |j_g m_g>, i.e. contains() holds, m_t = m_e + m_g, and
/// the coupling coefficient is nonzero.
bool contains_weight(const IrrepLabel& target, HalfInteger m_target, const IrrepLabel& e, HalfInteger m_e,
                     const IrrepLabel& gamma, HalfInteger m_gamma);

/// Largest 2j accepted by clebsch_gordan.
inline constexpr int kMaxTwiceJ = 40;

/// <j1 m1; j2 m2 | J M>, Racah closed form. Returns 0 outside the support
/// (M != m1 + m2, triangle violated, |m| > j, mismatched integrality).
/// Throws std::out_of_range if any 2j exceeds kMaxTwiceJ.
double clebsch_gordan(HalfInteger j1, HalfInteger m1, HalfInteger j2, HalfInteger m2, HalfInteger J,
                      HalfInteger M);

/// All coefficients for a fixed pair (j1, j2), keyed by twice-values
/// (2 m1, 2 m2, 2 J, 2 M). Only M = m1 + m2 entries are stored.
class CGTable {
public:
    using Key = std::tuple<int, int, int, int>;

    CGTable(HalfInteger j1, HalfInteger j2);

    HalfInteger j1() const noexcept { return j1_; }
    HalfInteger j2() const noexcept { return j2_; }
    const std::map<Key, double>& entries() const noexcept { return entries_; }
    double at(HalfInteger m1, HalfInteger m2, HalfInteger J, HalfInteger M) const;

    /// max deviation of the coupled-basis Gram matrix from the identity
    /// (sum over m1, m2 at fixed (J, M), (J', M')).
    double column_orthogonality_error() const;
    /// max deviation of sum over (J, M) at fixed (m1, m2), (m1', m2').
    double row_orthogonality_error() const;

private:
    HalfInteger j1_;
    HalfInteger j2_;
    std::map<Key, double> entries_;
};

}  // namespace statecopy
