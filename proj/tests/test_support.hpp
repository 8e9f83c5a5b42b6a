#pragma once

// Seeded generators and independent oracles shared by the unit tests.

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "gfe/ring_core.hpp"

namespace gfe::testing {

inline std::mt19937_64& rng() {
    static std::mt19937_64 engine(0x13131313ULL);
    return engine;
}

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

inline Rational small_rational(long bound = 9, long max_den = 4) {
    return Rational(uniform(-bound, bound), uniform(1, max_den));
}

inline CycloNum random_cyclo(bool integral = false) {
    CycloNum::Coords c;
    for (auto& x : c) x = integral ? Rational(uniform(-5, 5)) : small_rational();
    for (auto& x : c) x.canonicalize();
    return CycloNum(c);
}

inline CycloNum random_nonzero_cyclo(bool integral = false) {
    CycloNum x;
    do {
        x = random_cyclo(integral);
    } while (x.is_zero());
    return x;
}

inline CubicNum random_cubic() {
    CubicNum::Coords c{small_rational(), small_rational(), small_rational()};
    for (auto& x : c) x.canonicalize();
    return CubicNum(c);
}

inline QuadNum random_quad() {
    Rational a = small_rational(), b = small_rational();
    a.canonicalize();
    b.canonicalize();
    return QuadNum(a, b);
}

/// Multiplies integer polynomials modulo X^13 - 1 (coefficient vectors of
/// length 13), independent of CycloNum.
inline std::array<Integer, 13> mul_mod_x13(const std::array<Integer, 13>& a, const std::array<Integer, 13>& b) {
    std::array<Integer, 13> r{};
    for (std::size_t i = 0; i < 13; ++i)
        for (std::size_t j = 0; j < 13; ++j) r[(i + j) % 13] += a[i] * b[j];
    return r;
}

/// Converts a length-13 representative to the 12-coordinate power basis.
inline CycloNum from_x13(const std::array<Integer, 13>& a) {
    CycloNum::Coords c;
    for (std::size_t i = 0; i < 12; ++i) c[i] = Rational(a[i] - a[12]);
    return CycloNum(c);
}

/// Determinant of the multiplication-by-x matrix on K, i.e. N_{K/Q}(x),
/// computed without Galois conjugates.
inline Rational cubic_norm_by_determinant(const CubicNum& x) {
    // Columns: x*1, x*rho, x*rho^2 in the basis 1, rho, rho^2.
    std::array<CubicNum, 3> cols{x, x * CubicNum::rho(), x * CubicNum::rho() * CubicNum::rho()};
    auto m = [&](int r, int c) { return cols[static_cast<std::size_t>(c)][r]; };
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

}  // namespace gfe::testing
