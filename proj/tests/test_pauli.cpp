#include "doctest.h"
#include "helpers.hpp"

#include "spincover/pauli.hpp"
#include "spincover/rep_matrix.hpp"
#include "spincover/spin.hpp"

using namespace spincover;
using namespace testutil;

namespace {

Multivector blade_of(const Signature& sig, std::initializer_list<int> idx, Coeff c = 1.0) {
    BladeMask m = 0;
    for (int a : idx) m |= BladeMask{1} << (a - 1);
    return Multivector::blade(sig, m, c);
}

std::vector<Multivector> negated_basis(const Signature& sig) {
    std::vector<Multivector> gens;
    for (int a = 1; a <= sig.n(); ++a)
        gens.push_back(scale(Multivector::basis_vector(sig, a), -1.0));
    return gens;
}

std::vector<Multivector> conjugated_basis(const Signature& sig, const Multivector& u) {
    const Multivector uinv = inverse(u);
    std::vector<Multivector> gens;
    for (int a = 1; a <= sig.n(); ++a)
        gens.push_back(mul(mul(u, Multivector::basis_vector(sig, a)), uinv));
    return gens;
}

Multivector random_invertible(const Signature& sig, std::mt19937_64& rng) {
    for (int attempt = 0; attempt < 100; ++attempt) {
        // dense draws keep the volume elements away from +-gamma^{1..n},
        // so both F-candidate families stay admissible
        const Multivector u = random_multivector(sig, rng, 0.95);
        if (u.is_zero()) continue;
        try {
            (void)inverse(u);
            return u;
        } catch (const NonInvertibleError&) {
        }
    }
    throw std::runtime_error("no invertible sample found");
}

double plain_check(const GeneratorSet& betas, const GeneratorSet& gammas,
                   const Multivector& t, double sign) {
    const Multivector tinv = inverse(t);
    double r = 0.0;
    for (int a = 1; a <= betas.sig().n(); ++a)
        r = std::max(r, max_abs_diff(scale(mul(tinv, mul(betas.gen(a), t)), sign),
                                     gammas.gen(a)));
    return r;
}

double twisted_check(const GeneratorSet& betas, const GeneratorSet& gammas,
                     const Multivector& t) {
    const Multivector winv = inverse(grade_involution(t));
    double r = 0.0;
    for (int a = 1; a <= betas.sig().n(); ++a)
        r = std::max(r, max_abs_diff(mul(winv, mul(betas.gen(a), t)), gammas.gen(a)));
    return r;
}

}  // namespace

TEST_CASE("check_generators") {
    const Signature sig(2, 0);
    const auto ok = check_generators(GeneratorSet::basis(sig).gens(), sig);
    CHECK(ok.ok);
    CHECK(ok.residual == 0.0);

    const std::vector<Multivector> bad = {Multivector::basis_vector(sig, 1),
                                          Multivector::basis_vector(sig, 1)};
    CHECK_FALSE(check_generators(bad, sig).ok);
    CHECK_THROWS_AS(GeneratorSet(sig, bad), GeneratorRelationsError);

    // Images of the basis under an orthogonal transformation satisfy the relations.
    std::mt19937_64 rng(21);
    for (int n = 2; n <= 5; ++n)
        for (const Signature& s : signatures_of_dimension(n)) {
            const Multivector v = random_versor(s, 3, rng());
            const OrthogonalMatrix p = project(v);
            std::vector<Multivector> gens;
            for (int a = 1; a <= n; ++a) {
                std::vector<Multivector::Term> terms;
                for (int b = 1; b <= n; ++b)
                    terms.push_back({BladeMask{1} << (b - 1), Coeff{p.entries()(b - 1, a - 1)}});
                gens.push_back(Multivector::from_terms(s, std::move(terms)));
            }
            CHECK(check_generators(gens, s).ok);
        }
}

TEST_CASE("volume element") {
    const Signature cl20(2, 0);
    CHECK(volume_element(GeneratorSet::basis(cl20)) == blade_of(cl20, {1, 2}));

    const Signature cl30(3, 0);
    CHECK(volume_element(GeneratorSet(cl30, negated_basis(cl30))) ==
          blade_of(cl30, {1, 2, 3}, -1.0));
}

TEST_CASE("pseudoscalar transforms by the determinant") {
    std::mt19937_64 rng(22);
    for (int n = 2; n <= 6; ++n)
        for (const Signature& sig : signatures_of_dimension(n))
            for (int trial = 0; trial < 5; ++trial) {
                const Multivector v = random_versor(sig, 1 + static_cast<int>(rng() % 5), rng());
                const OrthogonalMatrix p = project(v);
                std::vector<Multivector> gens;
                for (int a = 1; a <= n; ++a) {
                    std::vector<Multivector::Term> terms;
                    for (int b = 1; b <= n; ++b)
                        terms.push_back(
                            {BladeMask{1} << (b - 1), Coeff{p.entries()(b - 1, a - 1)}});
                    gens.push_back(Multivector::from_terms(sig, std::move(terms)));
                }
                const Multivector vol = volume_element(GeneratorSet(sig, gens, 4.0 * eps_rel));
                const double det = p.entries().determinant();
                CHECK(max_abs_diff(vol, Multivector::blade(sig, sig.full_mask(), det)) <= 1e-8);
            }
}

TEST_CASE("lowered blades invert the raised products") {
    const Signature cl11(1, 1);
    const GeneratorSet basis11 = GeneratorSet::basis(cl11);
    CHECK(lowered_blade(basis11, 0) == Multivector::scalar(cl11, 1.0));
    CHECK(lowered_blade(basis11, 0b01) == blade_of(cl11, {1}));
    CHECK(lowered_blade(basis11, 0b10) == blade_of(cl11, {2}, -1.0));

    std::mt19937_64 rng(23);
    const Signature sig(1, 2);
    const Multivector u = random_invertible(sig, rng);
    const GeneratorSet gens(sig, conjugated_basis(sig, u), 1e-7);
    for (BladeMask a = 0; a <= sig.full_mask(); ++a) {
        Multivector raised = Multivector::scalar(sig, 1.0);
        for (int bit = 0; bit < sig.n(); ++bit)
            if (a & (BladeMask{1} << bit)) raised = mul(raised, gens.gen(bit + 1));
        CHECK(max_abs_diff(mul(lowered_blade(gens, a), raised),
                           Multivector::scalar(sig, 1.0)) <= 1e-8);
    }
}

TEST_CASE("even-n intertwiner: fixed examples") {
    const Signature cl20(2, 0);
    const GeneratorSet basis20 = GeneratorSet::basis(cl20);

    const IntertwinerResult same = intertwiner_even_n(basis20, basis20);
    CHECK(colinear(same.T, Multivector::scalar(cl20, 1.0)));
    CHECK(same.residual <= eps_rel);

    const IntertwinerResult neg =
        intertwiner_even_n(GeneratorSet(cl20, negated_basis(cl20)), basis20);
    CHECK(colinear(neg.T, blade_of(cl20, {1, 2})));
    CHECK(plain_check(GeneratorSet(cl20, negated_basis(cl20)), basis20, neg.T, +1.0) <= eps_rel);

    // beta swaps the two generators; T is proportional to e^1 + e^2.
    const std::vector<Multivector> swapped = {Multivector::basis_vector(cl20, 2),
                                              Multivector::basis_vector(cl20, 1)};
    const IntertwinerResult swap = intertwiner_even_n(GeneratorSet(cl20, swapped), basis20);
    CHECK(colinear(swap.T, add(blade_of(cl20, {1}), blade_of(cl20, {2}))));
}

TEST_CASE("even-n intertwiner recovers a conjugator up to scalar") {
    std::mt19937_64 rng(24);
    for (const Field field : {Field::real, Field::complex})
        for (int n : {2, 4})
            for (int trial = 0; trial < 5; ++trial) {
                const Signature sig(n - 1, 1, field);
                const Multivector u = random_invertible(sig, rng);
                const GeneratorSet betas(sig, conjugated_basis(sig, u), 1e-7);
                const IntertwinerResult res = intertwiner_even_n(betas, GeneratorSet::basis(sig));
                CHECK(colinear(res.T, u, 1e-7));
                CHECK(plain_check(betas, GeneratorSet::basis(sig), res.T, +1.0) <= 1e-7);
            }
}

TEST_CASE("even-n uniqueness: distinct F candidates give colinear T") {
    std::mt19937_64 rng(25);
    for (int n : {2, 4})
        for (int trial = 0; trial < 10; ++trial) {
            const Signature sig(1, n - 1);
            const Multivector u = random_invertible(sig, rng);
            const GeneratorSet betas(sig, conjugated_basis(sig, u), 1e-7);
            const GeneratorSet gammas = GeneratorSet::basis(sig);

            std::vector<Multivector> winners;
            auto certified = [&](const Multivector& t) {
                if (t.is_zero() || !is_invertible(t)) return false;
                double r = 0.0;
                for (int a = 1; a <= sig.n(); ++a)
                    r = std::max(r, max_abs_diff(mul(t, gammas.gen(a)), mul(betas.gen(a), t)));
                return r <= 1e-7 * t.norm_inf();
            };
            for (BladeMask f = 0; f <= sig.full_mask() && winners.size() < 2; ++f) {
                Multivector fmv = Multivector::scalar(sig, 1.0);
                for (int bit = 0; bit < sig.n(); ++bit)
                    if (f & (BladeMask{1} << bit)) fmv = mul(fmv, gammas.gen(bit + 1));
                const Multivector t = intertwiner_sum(betas, gammas, fmv, SumMode::all_masks);
                if (!certified(t)) continue;
                winners.push_back(t);
            }
            REQUIRE(winners.size() == 2);
            CHECK(colinear(winners[0], winners[1], 1e-8));
        }
}

TEST_CASE("odd-n intertwiner: factor classification and fixed cases") {
    const Signature cl30(3, 0);
    const GeneratorSet basis30 = GeneratorSet::basis(cl30);

    const IntertwinerResult same = intertwiner_odd_n(basis30, basis30);
    CHECK(same.factor == Multivector::scalar(cl30, 1.0));
    CHECK(colinear(same.T, Multivector::scalar(cl30, 1.0)));

    const GeneratorSet neg(cl30, negated_basis(cl30));
    const IntertwinerResult flip = intertwiner_odd_n(neg, basis30);
    CHECK(flip.factor == Multivector::scalar(cl30, -1.0));
    CHECK(plain_check(neg, basis30, flip.T, -1.0) <= eps_rel);

    const Signature cl12(1, 2);
    const IntertwinerResult sig12 =
        intertwiner_odd_n(GeneratorSet::basis(cl12), GeneratorSet::basis(cl12));
    CHECK(sig12.factor == Multivector::scalar(cl12, 1.0));
}

TEST_CASE("odd-n intertwiner: pseudoscalar factors from non-basis sets") {
    // Real case 3: Cl(1,0) with gamma^1 = e does not generate a basis and
    // pairs with beta^1 = e^1 through the factor +e^{1}.
    const Signature cl10(1, 0);
    const GeneratorSet b10(cl10, {Multivector::basis_vector(cl10, 1)});
    const GeneratorSet g10(cl10, {Multivector::scalar(cl10, 1.0)});
    const IntertwinerResult real3 = intertwiner_odd_n(b10, g10);
    CHECK(real3.factor == blade_of(cl10, {1}));
    {
        const Multivector tinv = inverse(real3.T);
        const Multivector lhs =
            mul(real3.factor, mul(tinv, mul(b10.gen(1), real3.T)));
        CHECK(max_abs_diff(lhs, g10.gen(1)) <= eps_rel);
    }

    // Complex case 6: Cl(0,1) with beta^1 = i e pairs with the basis set
    // through the factor -i e^{1}.
    const Signature cl01(0, 1, Field::complex);
    const GeneratorSet b01(cl01, {Multivector::scalar(cl01, Coeff{0.0, 1.0})});
    const GeneratorSet g01(cl01, {Multivector::basis_vector(cl01, 1)});
    const IntertwinerResult cplx6 = intertwiner_odd_n(b01, g01);
    CHECK(cplx6.factor == blade_of(cl01, {1}, Coeff{0.0, -1.0}));
    {
        const Multivector tinv = inverse(cplx6.T);
        const Multivector lhs = mul(cplx6.factor, mul(tinv, mul(b01.gen(1), cplx6.T)));
        CHECK(max_abs_diff(lhs, g01.gen(1)) <= eps_rel);
    }
}

TEST_CASE("odd-n intertwiner: conjugated sets and center uniqueness") {
    std::mt19937_64 rng(26);
    for (const Field field : {Field::real, Field::complex})
        for (int trial = 0; trial < 5; ++trial) {
            const Signature sig(2, 1, field);
            const Multivector u = random_invertible(sig, rng);
            const GeneratorSet betas(sig, conjugated_basis(sig, u), 1e-7);
            const GeneratorSet gammas = GeneratorSet::basis(sig);
            const IntertwinerResult res = intertwiner_odd_n(betas, gammas);
            CHECK(res.factor == Multivector::scalar(sig, 1.0));
            CHECK(plain_check(betas, gammas, res.T, +1.0) <= 1e-7);

            // Any second solution differs by a central element: project
            // T' T^{-1} onto span{e, e^{1..n}} and expect no remainder.
            const Multivector ratio = mul(u, inverse(res.T));
            Multivector central = add(
                grade_project(ratio, 0),
                Multivector::blade(sig, sig.full_mask(), ratio.coeff(sig.full_mask())));
            CHECK(max_abs_diff(ratio, central) <= 1e-7 * std::max(1.0, ratio.norm_inf()));
        }
}

TEST_CASE("odd generator sets: signs and parities") {
    const Signature cl20(2, 0);
    const GeneratorSet basis20 = GeneratorSet::basis(cl20);
    const IntertwinerResult same = intertwiner_odd_generators(basis20, basis20);
    CHECK(same.sign == +1);
    CHECK(colinear(same.T, Multivector::scalar(cl20, 1.0)));

    // All-negated generators have the same volume element, so the sign stays
    // +1 and T is the even element e^{12}.
    const GeneratorSet neg20(cl20, negated_basis(cl20));
    const IntertwinerResult neg = intertwiner_odd_generators(neg20, basis20);
    CHECK(neg.sign == +1);
    CHECK(neg.parity == Parity::even);
    CHECK(colinear(neg.T, blade_of(cl20, {1, 2})));
    CHECK(plain_check(neg20, basis20, neg.T, +1.0) <= eps_rel);

    // Flipping only e^2 flips the volume element: sign -1 with an odd T.
    const Signature cl11(1, 1);
    const GeneratorSet basis11 = GeneratorSet::basis(cl11);
    const GeneratorSet flip11(
        cl11, {Multivector::basis_vector(cl11, 1),
               scale(Multivector::basis_vector(cl11, 2), -1.0)});
    const IntertwinerResult odd = intertwiner_odd_generators(flip11, basis11);
    CHECK(odd.sign == -1);
    CHECK(odd.parity == Parity::odd);
    CHECK(colinear(odd.T, blade_of(cl11, {2})));
    CHECK(plain_check(flip11, basis11, odd.T, -1.0) <= eps_rel);
}

TEST_CASE("odd generator sets in odd dimension return the even representative") {
    const Signature cl30(3, 0);
    const GeneratorSet basis30 = GeneratorSet::basis(cl30);
    const GeneratorSet neg30(cl30, negated_basis(cl30));
    const IntertwinerResult res = intertwiner_odd_generators(neg30, basis30);
    CHECK(res.sign == -1);
    CHECK(res.parity == Parity::even);
    CHECK(colinear(res.T, Multivector::scalar(cl30, 1.0)));
    CHECK(plain_check(neg30, basis30, res.T, -1.0) <= eps_rel);
}

TEST_CASE("odd generator sets reject even-graded input") {
    const Signature cl10(1, 0);
    const GeneratorSet odd_ok(cl10, {Multivector::basis_vector(cl10, 1)});
    const GeneratorSet even_bad(cl10, {Multivector::scalar(cl10, 1.0)});
    CHECK_THROWS_AS(intertwiner_odd_generators(odd_ok, even_bad), NotOddGradedError);
    CHECK_THROWS_AS(intertwiner_grade_involution(even_bad, odd_ok), NotOddGradedError);
}

TEST_CASE("grade-involution intertwiner: fixed examples") {
    const Signature cl11(1, 1);
    const GeneratorSet basis11 = GeneratorSet::basis(cl11);

    const IntertwinerResult same = intertwiner_grade_involution(basis11, basis11);
    CHECK(colinear(same.T, Multivector::scalar(cl11, 1.0)));

    const GeneratorSet neg11(cl11, negated_basis(cl11));
    const IntertwinerResult even_case = intertwiner_grade_involution(neg11, basis11);
    CHECK(even_case.parity == Parity::even);
    CHECK(colinear(even_case.T, blade_of(cl11, {1, 2})));
    CHECK(twisted_check(neg11, basis11, even_case.T) <= eps_rel);

    const GeneratorSet half11(
        cl11, {scale(Multivector::basis_vector(cl11, 1), -1.0),
               Multivector::basis_vector(cl11, 2)});
    const IntertwinerResult odd_case = intertwiner_grade_involution(half11, basis11);
    CHECK(odd_case.parity == Parity::odd);
    CHECK(colinear(odd_case.T, blade_of(cl11, {1})));
    CHECK(twisted_check(half11, basis11, odd_case.T) <= eps_rel);
}

TEST_CASE("grade-involution intertwiner recovers a versor, both parities") {
    std::mt19937_64 rng(27);
    for (int n = 2; n <= 5; ++n)
        for (const Signature& sig : signatures_of_dimension(n))
            for (int k : {1, 2, 3, 4}) {
                const Multivector v = random_versor(sig, k, rng());
                std::vector<Multivector> betas;
                const Multivector vw = grade_involution(v);
                const Multivector vinv = inverse(v);
                for (int a = 1; a <= n; ++a)
                    betas.push_back(mul(mul(vw, Multivector::basis_vector(sig, a)), vinv));
                const GeneratorSet bset(sig, betas, 1e-7);
                const IntertwinerResult res =
                    intertwiner_grade_involution(bset, GeneratorSet::basis(sig));
                CHECK(colinear(res.T, v, 1e-7));
                CHECK(twisted_check(bset, GeneratorSet::basis(sig), res.T) <= 1e-7);
            }
}
