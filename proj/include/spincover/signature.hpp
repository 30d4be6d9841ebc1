#pragma once

#include <cstdint>
#include <string>

#include "spincover/errors.hpp"

namespace spincover {

enum class Field { real, complex };

/// Hard cap on p+q: dense blade products cost 4^n coefficient operations.
inline constexpr int max_dimension = 12;

/// Metric signature (p,q): generators 1..p square to +e, generators
/// p+1..p+q square to -e.
class Signature {
public:
    Signature(int p, int q, Field field = Field::real) : p_(p), q_(q), field_(field) {
        if (p < 0 || q < 0) throw InputError("signature: p and q must be nonnegative");
        const int n = p + q;
        if (n < 1) throw InputError("signature: p+q must be at least 1");
        if (n > max_dimension) throw InputError("signature: p+q exceeds the supported cap of 12");
    }

    int p() const { return p_; }
    int q() const { return q_; }
    int n() const { return p_ + q_; }
    Field field() const { return field_; }

    /// eta^{aa} for a 1-based generator index.
    int metric(int a) const { return a <= p_ ? +1 : -1; }

    /// Mask with all n generator bits set (the pseudoscalar blade).
    std::uint32_t full_mask() const { return (std::uint32_t{1} << n()) - 1; }

    bool operator==(const Signature&) const = default;

private:
    int p_;
    int q_;
    Field field_;
};

std::string to_string(const Signature& sig);

}  // namespace spincover
