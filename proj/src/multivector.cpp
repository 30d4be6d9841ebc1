#include "spincover/multivector.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace spincover {

std::string to_string(const Signature& sig) {
    std::ostringstream os;
    os << (sig.field() == Field::real ? "Cl(" : "Cl^C(") << sig.p() << "," << sig.q() << ")";
    return os.str();
}

BladeProduct blade_product(BladeMask a, BladeMask b, const Signature& sig) {
    int swaps = 0;
    for (BladeMask t = a >> 1; t != 0; t >>= 1) swaps += std::popcount(t & b);
    int sign = (swaps & 1) ? -1 : +1;
    for (BladeMask common = a & b; common != 0; common &= common - 1)
        sign *= sig.metric(std::countr_zero(common) + 1);
    return {static_cast<double>(sign), a ^ b};
}

Multivector Multivector::scalar(const Signature& sig, Coeff c) {
    return blade(sig, 0, c);
}

Multivector Multivector::blade(const Signature& sig, BladeMask mask, Coeff c) {
    if (mask > sig.full_mask()) throw InputError("blade mask out of range for signature");
    Multivector u(sig);
    if (std::abs(c) > 0.0) u.terms_.push_back({mask, c});
    return u;
}

Multivector Multivector::basis_vector(const Signature& sig, int a) {
    if (a < 1 || a > sig.n()) throw InputError("generator index out of range");
    return blade(sig, BladeMask{1} << (a - 1));
}

Multivector Multivector::from_terms(const Signature& sig, std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& x, const Term& y) { return x.mask < y.mask; });
    Multivector u(sig);
    for (const Term& t : terms) {
        if (t.mask > sig.full_mask()) throw InputError("blade mask out of range for signature");
        if (!u.terms_.empty() && u.terms_.back().mask == t.mask)
            u.terms_.back().c += t.c;
        else
            u.terms_.push_back(t);
    }
    return u.pruned();
}

Coeff Multivector::coeff(BladeMask mask) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), mask,
                               [](const Term& t, BladeMask m) { return t.mask < m; });
    return (it != terms_.end() && it->mask == mask) ? it->c : Coeff{0.0};
}

double Multivector::norm_inf() const {
    double m = 0.0;
    for (const Term& t : terms_) m = std::max(m, std::abs(t.c));
    return m;
}

Multivector Multivector::pruned(double eps) const {
    const double cut = eps * norm_inf();
    Multivector u(sig_);
    for (const Term& t : terms_)
        if (std::abs(t.c) > cut) u.terms_.push_back(t);
    return u;
}

namespace {

void require_same_sig(const Multivector& u, const Multivector& v) {
    if (!(u.sig() == v.sig()))
        throw SignatureMismatchError("operands live in different Clifford algebras");
}

}  // namespace

Multivector mul(const Multivector& u, const Multivector& v) {
    require_same_sig(u, v);
    const Signature& sig = u.sig();
    std::vector<Coeff> acc(std::size_t{1} << sig.n(), Coeff{0.0});
    for (const auto& tu : u.terms())
        for (const auto& tv : v.terms()) {
            const BladeProduct bp = blade_product(tu.mask, tv.mask, sig);
            acc[bp.mask] += tu.c * tv.c * bp.sign;
        }
    Multivector r(sig);
    double m = 0.0;
    for (const Coeff& c : acc) m = std::max(m, std::abs(c));
    const double cut = eps_zero * m;
    for (BladeMask mask = 0; mask < acc.size(); ++mask)
        if (std::abs(acc[mask]) > cut) r.terms_.push_back({mask, acc[mask]});
    return r;
}

Multivector add(const Multivector& u, const Multivector& v) {
    require_same_sig(u, v);
    std::vector<Multivector::Term> terms = u.terms();
    terms.insert(terms.end(), v.terms().begin(), v.terms().end());
    return Multivector::from_terms(u.sig(), std::move(terms));
}

Multivector sub(const Multivector& u, const Multivector& v) {
    return add(u, scale(v, -1.0));
}

Multivector scale(const Multivector& u, Coeff lambda) {
    std::vector<Multivector::Term> terms = u.terms();
    for (auto& t : terms) t.c *= lambda;
    return Multivector::from_terms(u.sig(), std::move(terms));
}

Multivector grade_project(const Multivector& u, int k) {
    if (k < 0 || k > u.sig().n()) throw std::out_of_range("grade_project: k out of range");
    std::vector<Multivector::Term> terms;
    for (const auto& t : u.terms())
        if (grade(t.mask) == k) terms.push_back(t);
    return Multivector::from_terms(u.sig(), std::move(terms));
}

Coeff trace(const Multivector& u) { return u.coeff(0); }

Multivector grade_involution(const Multivector& u) {
    std::vector<Multivector::Term> terms = u.terms();
    for (auto& t : terms)
        if (grade(t.mask) & 1) t.c = -t.c;
    return Multivector::from_terms(u.sig(), std::move(terms));
}

Multivector reversion(const Multivector& u) {
    std::vector<Multivector::Term> terms = u.terms();
    for (auto& t : terms) {
        const int k = grade(t.mask);
        if (((k * (k - 1)) / 2) & 1) t.c = -t.c;
    }
    return Multivector::from_terms(u.sig(), std::move(terms));
}

std::pair<Multivector, Multivector> parity_decompose(const Multivector& u) {
    std::vector<Multivector::Term> even, odd;
    for (const auto& t : u.terms())
        ((grade(t.mask) & 1) ? odd : even).push_back(t);
    return {Multivector::from_terms(u.sig(), std::move(even)),
            Multivector::from_terms(u.sig(), std::move(odd))};
}

Parity parity_of(const Multivector& u, double rel_tol) {
    const double cut = rel_tol * u.norm_inf();
    double even = 0.0, odd = 0.0;
    for (const auto& t : u.terms()) {
        double& acc = (grade(t.mask) & 1) ? odd : even;
        acc = std::max(acc, std::abs(t.c));
    }
    if (odd <= cut) return Parity::even;
    if (even <= cut) return Parity::odd;
    return Parity::mixed;
}

bool is_grade(const Multivector& u, int k, double rel_tol) {
    const double cut = rel_tol * u.norm_inf();
    for (const auto& t : u.terms())
        if (grade(t.mask) != k && std::abs(t.c) > cut) return false;
    return true;
}

std::vector<BladeMask> center_basis(const Signature& sig) {
    std::vector<BladeMask> central;
    for (BladeMask m = 0; m <= sig.full_mask(); ++m) {
        bool commutes = true;
        for (int a = 1; a <= sig.n() && commutes; ++a) {
            const BladeMask g = BladeMask{1} << (a - 1);
            commutes = blade_product(m, g, sig).sign == blade_product(g, m, sig).sign;
        }
        if (commutes) central.push_back(m);
    }
    return central;
}

double max_abs_diff(const Multivector& u, const Multivector& v) {
    return sub(u, v).norm_inf();
}

Multivector canonical_sign(const Multivector& u) {
    if (u.is_zero()) return u;
    const Coeff lead = u.terms().front().c;
    const bool flip = lead.real() < 0.0 ||
                      (lead.real() == 0.0 && lead.imag() < 0.0);
    return flip ? scale(u, -1.0) : u;
}

std::string blade_name(BladeMask mask) {
    if (mask == 0) return "e";
    std::ostringstream os;
    os << "e^{";
    bool wide = false;
    for (BladeMask t = mask; t != 0; t &= t - 1)
        wide |= std::countr_zero(t) + 1 > 9;
    bool first = true;
    for (BladeMask t = mask; t != 0; t &= t - 1) {
        if (!first && wide) os << ",";
        os << std::countr_zero(t) + 1;
        first = false;
    }
    os << "}";
    return os.str();
}

std::string to_string(const Multivector& u) {
    if (u.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : u.terms()) {
        const double re = t.c.real(), im = t.c.imag();
        if (im == 0.0) {
            if (!first) os << (re < 0 ? " - " : " + ");
            else if (re < 0) os << "-";
            os << std::abs(re);
        } else {
            if (!first) os << " + ";
            os << "(" << re << (im < 0 ? "-" : "+") << std::abs(im) << "i)";
        }
        if (t.mask != 0) os << " " << blade_name(t.mask);
        first = false;
    }
    return os.str();
}

}  // namespace spincover
