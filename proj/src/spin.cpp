#include "spincover/spin.hpp"

#include <cmath>
#include <random>

#include "spincover/rep_matrix.hpp"

namespace spincover {

namespace {

Eigen::MatrixXd metric_matrix(const Signature& sig) {
    Eigen::VectorXd d(sig.n());
    for (int a = 1; a <= sig.n(); ++a) d(a - 1) = sig.metric(a);
    return d.asDiagonal();
}

double block_minor(const Eigen::MatrixXd& m, int start, int size) {
    if (size == 0) return 1.0;
    return m.block(start, start, size, size).determinant();
}

}  // namespace

std::string to_string(ComponentTag tag) {
    switch (tag) {
        case ComponentTag::SO_up_down: return "SO_up_down";
        case ComponentTag::O_up_prime: return "O_up_prime";
        case ComponentTag::O_down_prime: return "O_down_prime";
        default: return "SO_prime";
    }
}

std::string to_string(SpinGroup g) {
    switch (g) {
        case SpinGroup::Pin: return "Pin";
        case SpinGroup::Spin: return "Spin";
        case SpinGroup::Pin_up: return "Pin_up";
        case SpinGroup::Pin_down: return "Pin_down";
        default: return "Spin_up_down";
    }
}

std::string to_string(SpinComponent c) {
    switch (c) {
        case SpinComponent::Spin_up_down: return "Spin_up_down";
        case SpinComponent::Pin_up_prime: return "Pin_up_prime";
        case SpinComponent::Pin_down_prime: return "Pin_down_prime";
        default: return "Spin_prime";
    }
}

std::string to_string(NormType t) { return t == NormType::plus_e ? "+e" : "-e"; }

SpinComponent paired_component(ComponentTag tag) {
    switch (tag) {
        case ComponentTag::SO_up_down: return SpinComponent::Spin_up_down;
        case ComponentTag::O_up_prime: return SpinComponent::Pin_up_prime;
        case ComponentTag::O_down_prime: return SpinComponent::Pin_down_prime;
        default: return SpinComponent::Spin_prime;
    }
}

OrthogonalMatrix::OrthogonalMatrix(Signature sig, Eigen::MatrixXd entries, double tol)
    : sig_(sig), entries_(std::move(entries)) {
    if (sig_.field() != Field::real)
        throw InputError("orthogonal matrices are defined over the real field");
    if (entries_.rows() != sig_.n() || entries_.cols() != sig_.n())
        throw InputError("orthogonal matrix must be n x n");
    const Eigen::MatrixXd eta = metric_matrix(sig_);
    residual_ = (entries_.transpose() * eta * entries_ - eta).cwiseAbs().maxCoeff();
    if (residual_ > tol)
        throw InputError("matrix fails P^T eta P = eta (residual " +
                         std::to_string(residual_) + ")");
}

ComponentTag classify_orthogonal(const OrthogonalMatrix& m) {
    const bool chronous = block_minor(m.entries(), 0, m.sig().p()) > 0.0;
    const bool chorous = block_minor(m.entries(), m.sig().p(), m.sig().q()) > 0.0;
    if (chronous && chorous) return ComponentTag::SO_up_down;
    if (chronous) return ComponentTag::O_up_prime;
    if (chorous) return ComponentTag::O_down_prime;
    return ComponentTag::SO_prime;
}

OrthogonalMatrix project(const Multivector& t) {
    const Signature& sig = t.sig();
    const Multivector tinv = inverse(t);  // NonInvertibleError on failure
    const Multivector tw = grade_involution(t);
    // Gates anchored to the conjugation scale; images can be much smaller.
    const double cond = std::max(1.0, tw.norm_inf() * tinv.norm_inf());
    Eigen::MatrixXd m(sig.n(), sig.n());
    for (int a = 1; a <= sig.n(); ++a) {
        const Multivector image = mul(mul(tw, Multivector::basis_vector(sig, a)), tinv);
        const double gate = eps_rel * std::max(image.norm_inf(), cond);
        for (const auto& term : image.terms())
            if (grade(term.mask) != 1 && std::abs(term.c) > gate)
                throw NotLipschitzError("conjugate of a generator is not grade 1");
        for (int b = 1; b <= sig.n(); ++b) {
            const Coeff c = image.coeff(BladeMask{1} << (b - 1));
            if (std::abs(c.imag()) > gate)
                throw NotLipschitzError("conjugate of a generator is not real");
            m(b - 1, a - 1) = c.real();
        }
    }
    return OrthogonalMatrix(Signature(sig.p(), sig.q(), Field::real), std::move(m));
}

std::pair<Multivector, NormType> normalize(const Multivector& t) {
    const Multivector s = mul(reversion(t), t);
    const Coeff lambda = s.is_zero() ? Coeff{0.0} : trace(s);
    // The scalar gate is anchored to |T|^2: that is where the rounding of
    // rev(T) T lives, even when lambda itself is small.
    const double anchor = std::max(std::abs(lambda), t.norm_inf() * t.norm_inf());
    if (s.is_zero() || max_abs_diff(s, Multivector::scalar(t.sig(), lambda)) > eps_rel * anchor)
        throw NormalizationFailedError("rev(T) T is not a scalar");
    if (std::abs(lambda) <= eps_zero * anchor)
        throw NormalizationFailedError("rev(T) T vanishes");
    if (std::abs(lambda.imag()) > eps_rel * std::abs(lambda))
        throw NormalizationFailedError("rev(T) T is not real");
    const Multivector scaled = scale(t, 1.0 / std::sqrt(std::abs(lambda.real())));
    const NormType type = lambda.real() > 0.0 ? NormType::plus_e : NormType::minus_e;
    return {canonical_sign(scaled), type};
}

Membership membership(const Multivector& t) {
    const Parity parity = parity_of(t);
    if (parity == Parity::mixed)
        throw NotInPinError("element has mixed parity");

    const Multivector rev = reversion(t);
    const Multivector e = Multivector::scalar(t.sig(), 1.0);
    auto pm_sign = [&](const Multivector& u, const char* what) {
        if (max_abs_diff(u, e) <= eps_rel) return NormType::plus_e;
        if (max_abs_diff(u, -e) <= eps_rel) return NormType::minus_e;
        throw NotInPinError(std::string(what) + " is not +-e");
    };
    const NormType tilde = pm_sign(mul(rev, t), "rev(T) T");
    const NormType tilde_hat = pm_sign(mul(grade_involution(rev), t), "(rev T)^ T");

    // Pin elements must preserve grade 1 under twisted conjugation.
    try {
        project(t);
    } catch (const Error&) {
        throw NotInPinError("element does not preserve grade 1");
    }

    Membership m;
    m.parity = parity;
    m.tilde = tilde;
    m.tilde_hat = tilde_hat;
    m.groups.insert(SpinGroup::Pin);
    if (parity == Parity::even) m.groups.insert(SpinGroup::Spin);
    if (tilde == NormType::plus_e) m.groups.insert(SpinGroup::Pin_down);
    if (tilde_hat == NormType::plus_e) m.groups.insert(SpinGroup::Pin_up);
    if (parity == Parity::even && tilde == NormType::plus_e)
        m.groups.insert(SpinGroup::Spin_up_down);

    if (m.groups.count(SpinGroup::Spin_up_down)) m.component = SpinComponent::Spin_up_down;
    else if (parity == Parity::even) m.component = SpinComponent::Spin_prime;
    else if (tilde == NormType::plus_e) m.component = SpinComponent::Pin_down_prime;
    else m.component = SpinComponent::Pin_up_prime;
    return m;
}

LiftResult lift(const OrthogonalMatrix& p) {
    const Signature& sig = p.sig();

    // Images of the generators as grade-1 elements: beta^a = column a.
    std::vector<Multivector> betas;
    for (int a = 1; a <= sig.n(); ++a) {
        std::vector<Multivector::Term> terms;
        for (int b = 1; b <= sig.n(); ++b)
            terms.push_back({BladeMask{1} << (b - 1), Coeff{p.entries()(b - 1, a - 1)}});
        betas.push_back(Multivector::from_terms(sig, std::move(terms)));
    }

    // The relations residual is bounded by twice the orthogonality residual,
    // so the generator check needs headroom over the matrix tolerance.  The
    // volume sign of the betas is det(P), which the LU determinant computes
    // far more stably than the multivector product chain.
    const int det_sign = p.entries().determinant() > 0.0 ? +1 : -1;
    IntertwinerResult res = intertwiner_grade_involution(
        GeneratorSet(sig, std::move(betas), 4.0 * eps_rel), GeneratorSet::basis(sig),
        std::make_pair(det_sign, +1));

    auto [t, norm_type] = normalize(res.T);  // NormalizationFailedError on failure

    const OrthogonalMatrix back = project(t);
    const double residual = (back.entries() - p.entries()).cwiseAbs().maxCoeff();
    if (residual > eps_rel * std::max(1.0, p.entries().cwiseAbs().maxCoeff()))
        throw NoIntertwinerError("lifted element does not reproduce the input matrix");

    LiftResult out{t, norm_type, membership(t), classify_orthogonal(p), residual};
    return out;
}

Multivector versor_from_vectors(const std::vector<Multivector>& vectors) {
    if (vectors.empty()) throw InputError("versor_from_vectors needs at least one vector");
    Multivector t = Multivector::scalar(vectors.front().sig(), 1.0);
    for (const Multivector& v : vectors) {
        if (!is_grade(v, 1)) throw InputError("versor factors must be grade 1");
        t = mul(t, v);
    }
    return t;
}

Multivector random_versor(const Signature& sig, int k, std::uint64_t seed) {
    if (k < 0) throw InputError("random_versor needs k >= 0");
    std::mt19937_64 rng(seed);
    // Engine output is mapped to [-1,1) directly: portable across platforms,
    // unlike the standard library distributions.
    auto uniform = [&rng]() {
        return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
    };

    Multivector t = Multivector::scalar(sig, 1.0);
    for (int i = 0; i < k; ++i) {
        bool found = false;
        for (int attempt = 0; attempt < 10000 && !found; ++attempt) {
            std::vector<double> c(sig.n());
            double norm2 = 0.0, square = 0.0;
            for (int a = 1; a <= sig.n(); ++a) {
                c[a - 1] = uniform();
                norm2 += c[a - 1] * c[a - 1];
                square += sig.metric(a) * c[a - 1] * c[a - 1];
            }
            // Reject vectors too close to the null cone (or to zero); the
            // threshold caps the conditioning of downstream versor products.
            if (norm2 < 1e-2 || std::abs(square) < 0.5 * norm2) continue;
            const double s = 1.0 / std::sqrt(std::abs(square));
            std::vector<Multivector::Term> terms;
            for (int a = 1; a <= sig.n(); ++a)
                terms.push_back({BladeMask{1} << (a - 1), Coeff{c[a - 1] * s}});
            t = mul(t, Multivector::from_terms(sig, std::move(terms)));
            found = true;
        }
        if (!found) throw DegenerateSamplingError("rejection sampling did not terminate");
    }
    return t;
}

}  // namespace spincover
