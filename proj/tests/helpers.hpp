#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "spincover/multivector.hpp"

namespace testutil {

using spincover::BladeMask;
using spincover::Coeff;
using spincover::Multivector;
using spincover::Signature;

/// Independent oracle for blade products: represent blades as index lists and
/// reduce step by step (swap adjacent out-of-order generators with a sign
/// flip, contract adjacent equal generators against the metric).
struct ReducedBlade {
    double sign;
    std::vector<int> indices;
};

inline ReducedBlade reduce_generator_word(std::vector<int> word, const Signature& sig) {
    double sign = 1.0;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < word.size(); ++i) {
            if (word[i] == word[i + 1]) {
                sign *= sig.metric(word[i]);
                word.erase(word.begin() + i, word.begin() + i + 2);
                changed = true;
                break;
            }
            if (word[i] > word[i + 1]) {
                std::swap(word[i], word[i + 1]);
                sign = -sign;
                changed = true;
                break;
            }
        }
    }
    return {sign, word};
}

inline std::vector<int> mask_to_indices(BladeMask m) {
    std::vector<int> out;
    for (int a = 1; m != 0; m >>= 1, ++a)
        if (m & 1) out.push_back(a);
    return out;
}

inline BladeMask indices_to_mask(const std::vector<int>& idx) {
    BladeMask m = 0;
    for (int a : idx) m |= BladeMask{1} << (a - 1);
    return m;
}

/// Oracle product of two blades as (sign, mask).
inline std::pair<double, BladeMask> oracle_blade_product(BladeMask a, BladeMask b,
                                                         const Signature& sig) {
    std::vector<int> word = mask_to_indices(a);
    const std::vector<int> wb = mask_to_indices(b);
    word.insert(word.end(), wb.begin(), wb.end());
    const ReducedBlade r = reduce_generator_word(std::move(word), sig);
    return {r.sign, indices_to_mask(r.indices)};
}

inline double uniform_pm1(std::mt19937_64& rng) {
    return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
}

/// Random sparse multivector with coefficients in [-1,1].
inline Multivector random_multivector(const Signature& sig, std::mt19937_64& rng,
                                      double density = 0.4) {
    std::vector<Multivector::Term> terms;
    for (BladeMask m = 0; m <= sig.full_mask(); ++m) {
        if (static_cast<double>(rng() >> 11) * 0x1.0p-53 > density) continue;
        const double re = uniform_pm1(rng);
        const double im = sig.field() == spincover::Field::complex ? uniform_pm1(rng) : 0.0;
        terms.push_back({m, Coeff{re, im}});
    }
    return Multivector::from_terms(sig, std::move(terms));
}

/// All signatures (p,q) with p+q = n.
inline std::vector<Signature> signatures_of_dimension(int n,
                                                      spincover::Field field =
                                                          spincover::Field::real) {
    std::vector<Signature> sigs;
    for (int p = 0; p <= n; ++p) sigs.emplace_back(p, n - p, field);
    return sigs;
}

/// True when u = lambda v for some scalar lambda, within tol.
inline bool colinear(const Multivector& u, const Multivector& v, double tol = 1e-8) {
    if (u.is_zero() || v.is_zero()) return u.is_zero() && v.is_zero();
    BladeMask pivot = 0;
    double best = -1.0;
    for (const auto& t : u.terms())
        if (std::abs(t.c) > best) { best = std::abs(t.c); pivot = t.mask; }
    const Coeff lambda = v.coeff(pivot) / u.coeff(pivot);
    return spincover::max_abs_diff(spincover::scale(u, lambda), v) <=
           tol * std::max(1.0, v.norm_inf());
}

}  // namespace testutil
