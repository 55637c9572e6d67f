#include "statecopy/symmetry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace statecopy {

namespace {

// n! for n <= 3 * kMaxTwiceJ / 2 + 1. Values are exact through 25! in the
// 64-bit long double mantissa; beyond that relative error is ~1e-19.
constexpr int kMaxFactorial = 3 * kMaxTwiceJ / 2 + 1;

const std::array<long double, kMaxFactorial + 1>& factorials() {
    static const auto table = [] {
        std::array<long double, kMaxFactorial + 1> t{};
        t[0] = 1.0L;
        for (int n = 1; n <= kMaxFactorial; ++n) t[n] = t[n - 1] * n;
        return t;
    }();
    return table;
}

long double fact(int twice_n) { return factorials().at(static_cast<std::size_t>(twice_n / 2)); }

bool triangle(int tj1, int tj2, int tJ) {
    return tJ >= std::abs(tj1 - tj2) && tJ <= tj1 + tj2 && (tj1 + tj2 + tJ) % 2 == 0;
}

bool valid_projection(int tj, int tm) { return std::abs(tm) <= tj && (tj + tm) % 2 == 0; }

}  // namespace

std::string HalfInteger::str() const {
    if (is_integer()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
}

Parity operator*(Parity a, Parity b) {
    if (a == Parity::Unspecified || b == Parity::Unspecified) return Parity::Unspecified;
    return static_cast<int>(a) * static_cast<int>(b) > 0 ? Parity::Even : Parity::Odd;
}

const char* to_string(Parity p) noexcept {
    switch (p) {
        case Parity::Even: return "+";
        case Parity::Odd: return "-";
        case Parity::Unspecified: break;
    }
    return "unspecified";
}

IrrepLabel::IrrepLabel(HalfInteger j_, Parity p) : j(j_), parity(p) {
    if (j.twice() < 0) throw std::invalid_argument("IrrepLabel: j must be non-negative");
}

IrrepLabel photon_irrep() { return IrrepLabel(1, Parity::Odd); }

std::vector<IrrepLabel> decompose_product(const IrrepLabel& a, const IrrepLabel& b) {
    std::vector<IrrepLabel> out;
    const Parity p = a.parity * b.parity;
    for (int tJ = std::abs(a.j.twice() - b.j.twice()); tJ <= a.j.twice() + b.j.twice(); tJ += 2)
        out.emplace_back(HalfInteger::from_twice(tJ), p);
    return out;
}

bool contains(const IrrepLabel& target, const IrrepLabel& e, const IrrepLabel& gamma) {
    if (!triangle(e.j.twice(), gamma.j.twice(), target.j.twice())) return false;
    const Parity product = e.parity * gamma.parity;
    if (product == Parity::Unspecified || target.parity == Parity::Unspecified) return true;
    return product == target.parity;
}

bool contains_weight(const IrrepLabel& target, HalfInteger m_target, const IrrepLabel& e, HalfInteger m_e,
                     const IrrepLabel& gamma, HalfInteger m_gamma) {
    if (!contains(target, e, gamma)) return false;
    if (m_target != m_e + m_gamma) return false;
    return clebsch_gordan(e.j, m_e, gamma.j, m_gamma, target.j, m_target) != 0.0;
}

double clebsch_gordan(HalfInteger j1, HalfInteger m1, HalfInteger j2, HalfInteger m2, HalfInteger J,
                      HalfInteger M) {
    const int a = j1.twice(), b = j2.twice(), c = J.twice();
    const int am = m1.twice(), bm = m2.twice(), cm = M.twice();
    if (a > kMaxTwiceJ || b > kMaxTwiceJ || c > kMaxTwiceJ)
        throw std::out_of_range("clebsch_gordan: j exceeds supported range");
    if (a < 0 || b < 0 || c < 0) return 0.0;
    if (cm != am + bm) return 0.0;
    if (!triangle(a, b, c)) return 0.0;
    if (!valid_projection(a, am) || !valid_projection(b, bm) || !valid_projection(c, cm)) return 0.0;

    // All arguments below are twice-values of non-negative integers.
    const long double pre =
        std::sqrt(static_cast<long double>(c + 1) * fact(c + a - b) * fact(c - a + b) * fact(a + b - c) /
                  fact(a + b + c + 2)) *
        std::sqrt(fact(c + cm) * fact(c - cm) * fact(a - am) * fact(a + am) * fact(b - bm) * fact(b + bm));

    const int kmin = std::max({0, (b - c - am) / 2, (a + bm - c) / 2});
    const int kmax = std::min({(a + b - c) / 2, (a - am) / 2, (b + bm) / 2});
    long double sum = 0.0L;
    long double largest = 0.0L;
    for (int k = kmin; k <= kmax; ++k) {
        const long double den = fact(2 * k) * fact(a + b - c - 2 * k) * fact(a - am - 2 * k) *
                                fact(b + bm - 2 * k) * fact(c - b + am + 2 * k) * fact(c - a - bm + 2 * k);
        sum += (k % 2 == 0 ? 1.0L : -1.0L) / den;
        largest = std::max(largest, 1.0L / den);
    }
    // Exact zeros (e.g. <1 0; 1 0 | 1 0>) survive the alternating sum only as
    // rounding residue.
    if (std::abs(sum) <= 1e-15L * largest) return 0.0;
    return static_cast<double>(pre * sum);
}

// ---------------------------------------------------------------- CGTable

CGTable::CGTable(HalfInteger j1, HalfInteger j2) : j1_(j1), j2_(j2) {
    if (j1.twice() < 0 || j2.twice() < 0) throw std::invalid_argument("CGTable: negative j");
    const int a = j1.twice(), b = j2.twice();
    for (int tJ = std::abs(a - b); tJ <= a + b; tJ += 2)
        for (int tm1 = -a; tm1 <= a; tm1 += 2)
            for (int tm2 = -b; tm2 <= b; tm2 += 2) {
                const int tM = tm1 + tm2;
                if (std::abs(tM) > tJ) continue;
                entries_[{tm1, tm2, tJ, tM}] =
                    clebsch_gordan(j1, HalfInteger::from_twice(tm1), j2, HalfInteger::from_twice(tm2),
                                   HalfInteger::from_twice(tJ), HalfInteger::from_twice(tM));
            }
}

double CGTable::at(HalfInteger m1, HalfInteger m2, HalfInteger J, HalfInteger M) const {
    auto it = entries_.find({m1.twice(), m2.twice(), J.twice(), M.twice()});
    return it == entries_.end() ? 0.0 : it->second;
}

double CGTable::column_orthogonality_error() const {
    const int a = j1_.twice(), b = j2_.twice();
    double worst = 0.0;
    for (int tJ = std::abs(a - b); tJ <= a + b; tJ += 2)
        for (int tJp = std::abs(a - b); tJp <= a + b; tJp += 2)
            for (int tM = -std::min(tJ, tJp); tM <= std::min(tJ, tJp); tM += 2) {
                // Different M columns are orthogonal trivially (disjoint support).
                double s = 0.0;
                for (int tm1 = -a; tm1 <= a; tm1 += 2) {
                    const int tm2 = tM - tm1;
                    s += at(half(tm1), half(tm2), half(tJ), half(tM)) *
                         at(half(tm1), half(tm2), half(tJp), half(tM));
                }
                worst = std::max(worst, std::abs(s - (tJ == tJp ? 1.0 : 0.0)));
            }
    return worst;
}

double CGTable::row_orthogonality_error() const {
    const int a = j1_.twice(), b = j2_.twice();
    double worst = 0.0;
    for (int tm1 = -a; tm1 <= a; tm1 += 2)
        for (int tm1p = -a; tm1p <= a; tm1p += 2)
            for (int tm2 = -b; tm2 <= b; tm2 += 2) {
                const int tM = tm1 + tm2;
                const int tm2p = tM - tm1p;
                if (std::abs(tm2p) > b) continue;
                double s = 0.0;
                for (int tJ = std::abs(a - b); tJ <= a + b; tJ += 2)
                    s += at(half(tm1), half(tm2), half(tJ), half(tM)) *
                         at(half(tm1p), half(tm2p), half(tJ), half(tM));
                worst = std::max(worst, std::abs(s - (tm1 == tm1p ? 1.0 : 0.0)));
            }
    return worst;
}

}  // namespace statecopy
