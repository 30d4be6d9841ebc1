#include "spincover/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "spincover/rep_matrix.hpp"

namespace spincover {

namespace {

std::string gamma_name(BladeMask mask) {
    if (mask == 0) return "e";
    std::string s = blade_name(mask);
    return "g" + s.substr(1);
}

struct Tables {
    std::vector<Multivector> beta_pow;   // beta^A, increasing multi-index order
    std::vector<Multivector> gamma_pow;  // gamma^A
    std::vector<Multivector> gamma_low;  // gamma_A = (gamma^A)^{-1}
};

/// Each mask's product is derived from the mask with its lowest bit cleared.
std::vector<Multivector> pow_table(const GeneratorSet& g) {
    const std::size_t count = std::size_t{1} << g.sig().n();
    std::vector<Multivector> table;
    table.reserve(count);
    table.push_back(Multivector::scalar(g.sig(), 1.0));
    for (std::size_t mask = 1; mask < count; ++mask) {
        const int low = std::countr_zero(mask);
        table.push_back(mul(g.gens()[low], table[mask & (mask - 1)]));
    }
    return table;
}

std::vector<Multivector> low_table(const GeneratorSet& g) {
    const std::size_t count = std::size_t{1} << g.sig().n();
    std::vector<Multivector> table;
    table.reserve(count);
    table.push_back(Multivector::scalar(g.sig(), 1.0));
    for (std::size_t mask = 1; mask < count; ++mask) {
        const int a = std::countr_zero(mask) + 1;
        const double eta = g.sig().metric(a);
        table.push_back(mul(table[mask & (mask - 1)], scale(g.gens()[a - 1], eta)));
    }
    return table;
}

Tables build_tables(const GeneratorSet& betas, const GeneratorSet& gammas) {
    return {pow_table(betas), pow_table(gammas), low_table(gammas)};
}

Multivector sum_over_masks(const Signature& sig, const Tables& t, const Multivector& f,
                           SumMode mode) {
    const std::size_t count = std::size_t{1} << sig.n();
    std::vector<Coeff> acc(count, Coeff{0.0});
    for (std::size_t a = 0; a < count; ++a) {
        if (mode == SumMode::even_masks && (std::popcount(a) & 1)) continue;
        const double w = (mode == SumMode::alternating && (std::popcount(a) & 1)) ? -1.0 : 1.0;
        const Multivector term = mul(mul(t.beta_pow[a], f), t.gamma_low[a]);
        for (const auto& tt : term.terms()) acc[tt.mask] += w * tt.c;
    }
    std::vector<Multivector::Term> terms;
    for (BladeMask mask = 0; mask < acc.size(); ++mask)
        if (std::abs(acc[mask]) > 0.0) terms.push_back({mask, acc[mask]});
    return Multivector::from_terms(sig, std::move(terms));
}

Multivector unit_scaled(const Multivector& u) {
    const double m = u.norm_inf();
    return m > 0.0 ? scale(u, 1.0 / m) : u;
}

/// Cheap certificate first (rev(t) t = scalar != 0), singular values otherwise.
bool robust_invertible(const Multivector& t) {
    if (t.is_zero()) return false;
    const Multivector s = mul(reversion(t), t);
    if (!s.is_zero() && is_grade(s, 0, 1e-10) &&
        std::abs(trace(s)) > 1e-8 * t.norm_inf() * t.norm_inf())
        return true;
    return is_invertible(t);
}

double plain_residual(const GeneratorSet& betas, const GeneratorSet& gammas,
                      const Multivector& t, double sign) {
    double r = 0.0;
    for (int a = 1; a <= betas.sig().n(); ++a)
        r = std::max(r, max_abs_diff(scale(mul(t, gammas.gen(a)), sign), mul(betas.gen(a), t)));
    return r;
}

double factor_residual(const GeneratorSet& betas, const GeneratorSet& gammas,
                       const Multivector& t, const Multivector& tinv,
                       const Multivector& factor) {
    double r = 0.0;
    for (int a = 1; a <= betas.sig().n(); ++a) {
        const Multivector lhs = mul(factor, mul(tinv, mul(betas.gen(a), t)));
        r = std::max(r, max_abs_diff(lhs, gammas.gen(a)));
    }
    return r;
}

double twisted_residual(const GeneratorSet& betas, const GeneratorSet& gammas,
                        const Multivector& t) {
    // gamma^a = (t^)^{-1} beta^a t  <=>  t^ gamma^a = beta^a t
    const Multivector tw = grade_involution(t);
    double r = 0.0;
    for (int a = 1; a <= betas.sig().n(); ++a)
        r = std::max(r, max_abs_diff(mul(tw, gammas.gen(a)), mul(betas.gen(a), t)));
    return r;
}

void require_same_algebra(const GeneratorSet& betas, const GeneratorSet& gammas) {
    if (!(betas.sig() == gammas.sig()))
        throw SignatureMismatchError("generator sets live in different Clifford algebras");
}

void require_odd_graded(const GeneratorSet& g) {
    for (const Multivector& u : g.gens())
        if (parity_of(u) != Parity::odd)
            throw NotOddGradedError("generator has an even-grade component");
}

bool approx(const Multivector& u, const Multivector& v, double tol = eps_rel) {
    return max_abs_diff(u, v) <= tol * std::max({1.0, u.norm_inf(), v.norm_inf()});
}

/// Branch decisions snap to admissible values at least distance 1 apart, so
/// they tolerate more noise than the residual certificates.
constexpr double branch_tol = 1e-6;

/// Residual certificates are relative to the generator magnitudes.
double generator_scale(const GeneratorSet& betas, const GeneratorSet& gammas) {
    double s = 1.0;
    for (const Multivector& g : betas.gens()) s = std::max(s, g.norm_inf());
    for (const Multivector& g : gammas.gens()) s = std::max(s, g.norm_inf());
    return s;
}

}  // namespace

CheckResult check_generators(const std::vector<Multivector>& gens, const Signature& sig,
                             double tol) {
    if (static_cast<int>(gens.size()) != sig.n()) return {false, std::nan("")};
    for (const Multivector& g : gens)
        if (!(g.sig() == sig)) throw SignatureMismatchError("generator signature mismatch");
    double residual = 0.0;
    for (int a = 1; a <= sig.n(); ++a)
        for (int b = a; b <= sig.n(); ++b) {
            const Multivector acomm =
                add(mul(gens[a - 1], gens[b - 1]), mul(gens[b - 1], gens[a - 1]));
            const double target = (a == b) ? 2.0 * sig.metric(a) : 0.0;
            const Multivector rhs = Multivector::scalar(sig, target);
            residual = std::max(residual, max_abs_diff(acomm, rhs));
        }
    return {residual <= tol, residual};
}

GeneratorSet::GeneratorSet(Signature sig, std::vector<Multivector> gens, double tol)
    : sig_(sig), gens_(std::move(gens)) {
    if (static_cast<int>(gens_.size()) != sig_.n())
        throw GeneratorRelationsError("expected exactly n generators");
    const CheckResult check = check_generators(gens_, sig_, tol);
    if (!check.ok) {
        std::ostringstream os;
        os << "generators violate the anticommutation relations (residual " << check.residual
           << ")";
        throw GeneratorRelationsError(os.str());
    }
}

GeneratorSet GeneratorSet::basis(const Signature& sig) {
    std::vector<Multivector> gens;
    for (int a = 1; a <= sig.n(); ++a) gens.push_back(Multivector::basis_vector(sig, a));
    return GeneratorSet(sig, std::move(gens));
}

Multivector volume_element(const GeneratorSet& g) {
    Multivector v = Multivector::scalar(g.sig(), 1.0);
    for (const Multivector& gen : g.gens()) v = mul(v, gen);
    return v;
}

Multivector lowered_blade(const GeneratorSet& g, BladeMask a) {
    if (a > g.sig().full_mask()) throw InputError("multi-index out of range");
    Multivector v = Multivector::scalar(g.sig(), 1.0);
    for (int bit = g.sig().n() - 1; bit >= 0; --bit) {
        if (!(a & (BladeMask{1} << bit))) continue;
        const double eta = g.sig().metric(bit + 1);
        v = mul(v, scale(g.gen(bit + 1), eta));
    }
    return v;
}

Multivector intertwiner_sum(const GeneratorSet& betas, const GeneratorSet& gammas,
                            const Multivector& f, SumMode mode) {
    require_same_algebra(betas, gammas);
    return sum_over_masks(betas.sig(), build_tables(betas, gammas), f, mode);
}

IntertwinerResult intertwiner_even_n(const GeneratorSet& betas, const GeneratorSet& gammas) {
    require_same_algebra(betas, gammas);
    const Signature& sig = betas.sig();
    if (sig.n() % 2 != 0) throw InputError("intertwiner_even_n requires even n");

    const Tables t = build_tables(betas, gammas);
    const BladeMask full = sig.full_mask();
    const Multivector& vol_b = t.beta_pow[full];
    const Multivector& vol_g = t.gamma_pow[full];
    const bool allow_even =
        !approx(vol_b, -vol_g, branch_tol);  // Even candidates need beta-vol != -gamma-vol
    const bool allow_odd = !approx(vol_b, vol_g, branch_tol);

    const double scale_ref = generator_scale(betas, gammas);
    for (BladeMask f = 0; f <= full; ++f) {
        const bool odd = grade(f) & 1;
        if (odd ? !allow_odd : !allow_even) continue;
        Multivector cand = unit_scaled(sum_over_masks(sig, t, t.gamma_pow[f], SumMode::all_masks));
        if (cand.is_zero() || !robust_invertible(cand)) continue;
        const double residual = plain_residual(betas, gammas, cand, +1.0) / scale_ref;
        if (residual > eps_rel) continue;
        return {cand, mul(vol_b, t.gamma_low[full]), parity_of(cand), +1, gamma_name(f), residual};
    }
    throw NoIntertwinerError("no candidate F produced an invertible intertwiner");
}

IntertwinerResult intertwiner_odd_n(const GeneratorSet& betas, const GeneratorSet& gammas) {
    require_same_algebra(betas, gammas);
    const Signature& sig = betas.sig();
    if (sig.n() % 2 != 1) throw InputError("intertwiner_odd_n requires odd n");

    const Tables t = build_tables(betas, gammas);
    const BladeMask full = sig.full_mask();
    const Multivector factor_raw = mul(t.beta_pow[full], t.gamma_low[full]);

    // Snap the factor to its admissible value.
    std::vector<std::pair<Coeff, BladeMask>> admissible = {
        {{+1.0, 0.0}, 0}, {{-1.0, 0.0}, 0}, {{+1.0, 0.0}, full}, {{-1.0, 0.0}, full}};
    if (sig.field() == Field::complex) {
        admissible.push_back({{0.0, +1.0}, 0});
        admissible.push_back({{0.0, -1.0}, 0});
        admissible.push_back({{0.0, +1.0}, full});
        admissible.push_back({{0.0, -1.0}, full});
    }
    const Multivector* match = nullptr;
    Multivector factor(sig);
    for (const auto& [c, mask] : admissible) {
        const Multivector value = Multivector::blade(sig, mask, c);
        if (approx(factor_raw, value, branch_tol)) {
            factor = value;
            match = &factor;
            break;
        }
    }
    if (match == nullptr)
        throw FactorUnrecognizedError("beta^{1..n} gamma_{1..n} is not an admissible value");

    // Singles by increasing mask over I_Even, then pairs in lexicographic order.
    std::vector<BladeMask> evens;
    for (BladeMask m = 0; m <= full; ++m)
        if (!(grade(m) & 1)) evens.push_back(m);

    const double scale_ref = generator_scale(betas, gammas);
    auto try_candidate = [&](const Multivector& f, const std::string& name)
        -> std::optional<IntertwinerResult> {
        Multivector cand = unit_scaled(sum_over_masks(sig, t, f, SumMode::even_masks));
        if (cand.is_zero() || !robust_invertible(cand)) return std::nullopt;
        const Multivector tinv = inverse(cand);
        const double residual = factor_residual(betas, gammas, cand, tinv, factor) / scale_ref;
        if (residual > eps_rel) return std::nullopt;
        return IntertwinerResult{cand, factor, parity_of(cand), +1, name, residual};
    };

    for (BladeMask f : evens)
        if (auto r = try_candidate(t.gamma_pow[f], gamma_name(f))) return *r;
    for (std::size_t i = 0; i < evens.size(); ++i)
        for (std::size_t j = i + 1; j < evens.size(); ++j) {
            const Multivector f = add(t.gamma_pow[evens[i]], t.gamma_pow[evens[j]]);
            if (auto r = try_candidate(f, gamma_name(evens[i]) + "+" + gamma_name(evens[j])))
                return *r;
        }
    throw NoIntertwinerError("no candidate F produced an invertible intertwiner");
}

namespace {

/// Shared search for the odd-generator theorems.  The twisted flag selects the
/// grade-involution relation; otherwise the certified relation carries `sign`.
IntertwinerResult odd_generator_search(const GeneratorSet& betas, const GeneratorSet& gammas,
                                       bool twisted,
                                       std::optional<std::pair<int, int>> volume_signs) {
    require_same_algebra(betas, gammas);
    require_odd_graded(betas);
    require_odd_graded(gammas);
    const Signature& sig = betas.sig();
    const bool even_n = sig.n() % 2 == 0;

    const Tables t = build_tables(betas, gammas);
    const BladeMask full = sig.full_mask();
    const Multivector pseudo = Multivector::blade(sig, full);
    auto vol_sign = [&](const Multivector& vol, const char* which) {
        if (approx(vol, pseudo, branch_tol)) return +1;
        if (approx(vol, -pseudo, branch_tol)) return -1;
        throw VolumeMismatchError(std::string(which) +
                                  " volume element is not a signed pseudoscalar");
    };
    const int sb = volume_signs ? volume_signs->first : vol_sign(t.beta_pow[full], "beta");
    const int sg = volume_signs ? volume_signs->second : vol_sign(t.gamma_pow[full], "gamma");
    const int sign = sb == sg ? +1 : -1;

    // Even n: sign +1 pairs even F with the plain sum, sign -1 pairs odd F
    // with the alternating weights.  Odd n sums over I_Even; the plain
    // relation keeps F even (even T), the twisted one switches F parity.
    int f_parity;
    if (even_n) f_parity = sign == +1 ? 0 : 1;
    else f_parity = twisted ? (sign == +1 ? 0 : 1) : 0;
    const SumMode mode = even_n ? (sign == +1 ? SumMode::all_masks : SumMode::alternating)
                                : SumMode::even_masks;

    const double scale_ref = generator_scale(betas, gammas);
    for (BladeMask f = 0; f <= full; ++f) {
        if ((grade(f) & 1) != f_parity) continue;
        Multivector cand = unit_scaled(sum_over_masks(sig, t, t.gamma_pow[f], mode));
        if (cand.is_zero() || !robust_invertible(cand)) continue;
        const double residual = (twisted ? twisted_residual(betas, gammas, cand)
                                         : plain_residual(betas, gammas, cand, sign)) /
                                scale_ref;
        if (residual > eps_rel) continue;
        return {cand,          mul(t.beta_pow[full], t.gamma_low[full]),
                parity_of(cand), sign,
                gamma_name(f), residual};
    }
    throw NoIntertwinerError("no candidate F produced an invertible intertwiner");
}

}  // namespace

IntertwinerResult intertwiner_odd_generators(const GeneratorSet& betas,
                                             const GeneratorSet& gammas) {
    IntertwinerResult r = odd_generator_search(betas, gammas, /*twisted=*/false, std::nullopt);
    if (betas.sig().n() % 2 == 1 && r.parity != Parity::even)
        throw NoIntertwinerError("odd-n search did not produce the even representative");
    return r;
}

IntertwinerResult intertwiner_grade_involution(
    const GeneratorSet& betas, const GeneratorSet& gammas,
    std::optional<std::pair<int, int>> volume_signs) {
    return odd_generator_search(betas, gammas, /*twisted=*/true, volume_signs);
}

}  // namespace spincover
