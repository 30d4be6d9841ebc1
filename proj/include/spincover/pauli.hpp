#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spincover/multivector.hpp"

namespace spincover {

struct CheckResult {
    bool ok;
    double residual;
};

/// Max residual of g^a g^b + g^b g^a - 2 eta^{ab} e over all index pairs.
CheckResult check_generators(const std::vector<Multivector>& gens, const Signature& sig,
                             double tol = eps_rel);

/// n elements satisfying the Clifford anticommutation relations for (p,q);
/// validated at construction.
class GeneratorSet {
public:
    GeneratorSet(Signature sig, std::vector<Multivector> gens, double tol = eps_rel);

    /// The fixed basis set e^1 .. e^n.
    static GeneratorSet basis(const Signature& sig);

    const Signature& sig() const { return sig_; }
    const std::vector<Multivector>& gens() const { return gens_; }
    const Multivector& gen(int a) const { return gens_[a - 1]; }  // 1-based

private:
    Signature sig_;
    std::vector<Multivector> gens_;
};

/// Ordered product g^1 g^2 ... g^n.
Multivector volume_element(const GeneratorSet& g);

/// g_A := (g^A)^{-1}: the reversed product of metric-lowered generators,
/// so that g_A g^A = e termwise under the anticommutation relations.
Multivector lowered_blade(const GeneratorSet& g, BladeMask a);

struct IntertwinerResult {
    Multivector T;       // scaled to unit max coefficient
    Multivector factor;  // beta^{1..n} gamma_{1..n}
    Parity parity;
    int sign;            // the +-1 of the certified relation (odd-generator forms)
    std::string F_used;
    double residual;
};

/// How the candidate sum T = sum_A w_A beta^A F gamma_A runs over multi-indices.
enum class SumMode {
    all_masks,    // w_A = 1, A over all of I
    even_masks,   // w_A = 1, A over I_Even
    alternating,  // w_A = (-1)^{|A|}, A over all of I
};

/// One candidate sum; exposed so uniqueness tests can compare specific F's.
Multivector intertwiner_sum(const GeneratorSet& betas, const GeneratorSet& gammas,
                            const Multivector& f, SumMode mode);

/// Even n: invertible T with gamma^a = T^{-1} beta^a T, unique up to scalar.
IntertwinerResult intertwiner_even_n(const GeneratorSet& betas, const GeneratorSet& gammas);

/// Odd n: classifies beta^{1..n} gamma_{1..n} among +-e, +-e^{1..n} (and
/// +-i e, +-i e^{1..n} over C) and returns T certified against the unified
/// relation gamma^a = factor T^{-1} beta^a T.
IntertwinerResult intertwiner_odd_n(const GeneratorSet& betas, const GeneratorSet& gammas);

/// Purely odd-graded generator sets: gamma^a = sign T^{-1} beta^a T with
/// sign +1 iff the volume elements agree; for even n the returned T is even
/// when sign is +1 and odd when sign is -1, for odd n it is always even.
IntertwinerResult intertwiner_odd_generators(const GeneratorSet& betas,
                                             const GeneratorSet& gammas);

/// Purely odd-graded generator sets, twisted relation
/// gamma^a = (T^)^{-1} beta^a T with ^ the grade involution; T is unique up
/// to a nonzero scalar and parity-homogeneous.  When the +-1 signs of the
/// volume elements against e^{1..n} are already known from a stabler source
/// (a determinant), pass them to skip the numerical classification.
IntertwinerResult intertwiner_grade_involution(
    const GeneratorSet& betas, const GeneratorSet& gammas,
    std::optional<std::pair<int, int>> volume_signs = std::nullopt);

}  // namespace spincover
