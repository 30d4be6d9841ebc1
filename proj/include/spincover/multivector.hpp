#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "spincover/errors.hpp"
#include "spincover/signature.hpp"

namespace spincover {

using BladeMask = std::uint32_t;
using Coeff = std::complex<double>;

/// Relative magnitude below which result coefficients are dropped.
inline constexpr double eps_zero = 1e-9;
/// Relative residual accepted by certificate checks.
inline constexpr double eps_rel = 1e-8;

inline int grade(BladeMask m) { return std::popcount(m); }

struct BladeProduct {
    double sign;  // +1 or -1, metric contractions included
    BladeMask mask;
};

/// Product of basis blades: e^A e^B = sign * e^{A xor B}.  The sign counts,
/// for each set bit of b, the set bits of a strictly above it (transpositions),
/// then multiplies eta^{cc} for every index common to both blades.
BladeProduct blade_product(BladeMask a, BladeMask b, const Signature& sig);

/// Sparse element of Cl(p,q): term list ordered by increasing mask, no zeros.
/// Immutable after construction; all operations below return new values.
class Multivector {
public:
    struct Term {
        BladeMask mask;
        Coeff c;
        bool operator==(const Term&) const = default;
    };

    /// The zero element.
    explicit Multivector(Signature sig) : sig_(sig) {}

    static Multivector scalar(const Signature& sig, Coeff c);
    static Multivector blade(const Signature& sig, BladeMask mask, Coeff c = 1.0);
    static Multivector basis_vector(const Signature& sig, int a);  // e^a, 1-based
    /// Sorts, merges duplicate masks and prunes; masks must fit in n bits.
    static Multivector from_terms(const Signature& sig, std::vector<Term> terms);

    const Signature& sig() const { return sig_; }
    const std::vector<Term>& terms() const { return terms_; }
    Coeff coeff(BladeMask mask) const;
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    double norm_inf() const;

    /// Copy with coefficients below eps * norm_inf() removed.
    Multivector pruned(double eps = eps_zero) const;

    bool operator==(const Multivector&) const = default;

private:
    friend Multivector mul(const Multivector&, const Multivector&);
    Signature sig_;
    std::vector<Term> terms_;
};

enum class Parity { even, odd, mixed };

Multivector mul(const Multivector& u, const Multivector& v);
Multivector add(const Multivector& u, const Multivector& v);
Multivector sub(const Multivector& u, const Multivector& v);
Multivector scale(const Multivector& u, Coeff lambda);

inline Multivector operator*(const Multivector& u, const Multivector& v) { return mul(u, v); }
inline Multivector operator+(const Multivector& u, const Multivector& v) { return add(u, v); }
inline Multivector operator-(const Multivector& u, const Multivector& v) { return sub(u, v); }
inline Multivector operator*(Coeff lambda, const Multivector& u) { return scale(u, lambda); }
inline Multivector operator*(const Multivector& u, Coeff lambda) { return scale(u, lambda); }
inline Multivector operator-(const Multivector& u) { return scale(u, -1.0); }

/// Part of grade k; throws std::out_of_range unless 0 <= k <= n.
Multivector grade_project(const Multivector& u, int k);

/// Coefficient of the identity blade.
Coeff trace(const Multivector& u);

/// Grade involution: (-1)^k on the grade-k part.
Multivector grade_involution(const Multivector& u);

/// Reversion: (-1)^{k(k-1)/2} on the grade-k part.
Multivector reversion(const Multivector& u);

/// Split into (even, odd) grade parts.
std::pair<Multivector, Multivector> parity_decompose(const Multivector& u);

Parity parity_of(const Multivector& u, double rel_tol = eps_rel);

/// True when the non-grade-k part is below rel_tol * norm.
bool is_grade(const Multivector& u, int k, double rel_tol = eps_rel);

/// U^{-1} via the left-regular linear system; throws NonInvertibleError when
/// the smallest singular value is below eps_zero times the largest.
Multivector inverse(const Multivector& u);

/// Blades spanning the commutant {U : UV = VU for all V}, found by brute
/// force: a blade is central iff it commutes with every generator.
std::vector<BladeMask> center_basis(const Signature& sig);

double max_abs_diff(const Multivector& u, const Multivector& v);

/// Flips the global sign so the first nonzero coefficient (increasing mask
/// order) has positive real part (positive imaginary part as tie-break).
Multivector canonical_sign(const Multivector& u);

std::string to_string(const Multivector& u);
std::string blade_name(BladeMask mask);

}  // namespace spincover
