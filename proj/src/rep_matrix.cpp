#include "spincover/rep_matrix.hpp"

#include <cmath>
#include <complex>

#include <Eigen/SVD>

namespace spincover {

namespace {

using namespace std::complex_literals;

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return r;
}

DenseMatrix pauli(int k) {
    DenseMatrix s(2, 2);
    switch (k) {
        case 1: s << 0, 1, 1, 0; break;
        case 2: s << 0, -1i, 1i, 0; break;
        default: s << 1, 0, 0, -1; break;
    }
    return s;
}

std::pair<double, double> singular_range_of(const DenseMatrix& m) {
    if (m.rows() >= 512) {
        Eigen::BDCSVD<DenseMatrix> svd(m);
        return {svd.singularValues().tail(1)(0), svd.singularValues()(0)};
    }
    Eigen::JacobiSVD<DenseMatrix> svd(m);
    return {svd.singularValues().tail(1)(0), svd.singularValues()(0)};
}

bool matrix_invertible(const DenseMatrix& m, double rel_tol = matrix_singular_tol) {
    auto [smin, smax] = singular_range_of(m);
    return smax > 0.0 && smin > rel_tol * smax;
}

double intertwine_residual(const DenseMatrix& t, const DenseMatrix& tinv,
                           const std::vector<DenseMatrix>& betas,
                           const std::vector<DenseMatrix>& gammas, double sign) {
    double r = 0.0;
    for (std::size_t a = 0; a < betas.size(); ++a)
        r = std::max(r, (sign * tinv * betas[a] * t - gammas[a]).cwiseAbs().maxCoeff());
    return r;
}

/// T[mask] = g^{a1} g^{a2} ... for the increasing indices of mask.
std::vector<DenseMatrix> power_table(const GammaRep& g) {
    const std::size_t count = std::size_t{1} << g.sig().n();
    std::vector<DenseMatrix> table(count);
    table[0] = DenseMatrix::Identity(g.order(), g.order());
    for (std::size_t mask = 1; mask < count; ++mask) {
        const int low = std::countr_zero(mask);
        table[mask] = g.matrices()[low] * table[mask & (mask - 1)];
    }
    return table;
}

/// L[mask] = reversed product of metric-lowered generators, L[mask] * T[mask] = 1.
std::vector<DenseMatrix> lowered_table(const GammaRep& g) {
    const std::size_t count = std::size_t{1} << g.sig().n();
    std::vector<DenseMatrix> table(count);
    table[0] = DenseMatrix::Identity(g.order(), g.order());
    for (std::size_t mask = 1; mask < count; ++mask) {
        const int low = std::countr_zero(mask);
        const double eta = g.sig().metric(low + 1);
        table[mask] = table[mask & (mask - 1)] * (eta * g.matrices()[low]);
    }
    return table;
}

void require_compatible(const GammaRep& betas, const GammaRep& gammas) {
    if (betas.sig().p() != gammas.sig().p() || betas.sig().q() != gammas.sig().q())
        throw SignatureMismatchError("gamma representations have different signatures");
    if (betas.order() != gammas.order())
        throw SignatureMismatchError("gamma representations have different orders");
}

}  // namespace

DenseMatrix left_regular_matrix(const Multivector& u) {
    const Signature& sig = u.sig();
    const Eigen::Index dim = Eigen::Index{1} << sig.n();
    DenseMatrix l = DenseMatrix::Zero(dim, dim);
    for (const auto& t : u.terms())
        for (BladeMask mv = 0; mv < static_cast<BladeMask>(dim); ++mv) {
            const BladeProduct bp = blade_product(t.mask, mv, sig);
            l(bp.mask, mv) += t.c * bp.sign;
        }
    return l;
}

std::pair<double, double> singular_range(const Multivector& u) {
    return singular_range_of(left_regular_matrix(u));
}

bool is_invertible(const Multivector& u, double rel_tol) {
    if (u.is_zero()) return false;
    auto [smin, smax] = singular_range(u);
    return smax > 0.0 && smin > rel_tol * smax;
}

Multivector inverse(const Multivector& u) {
    if (u.is_zero()) throw NonInvertibleError("inverse of zero");
    const Signature& sig = u.sig();

    // Versor fast path: rev(u) u = lambda e gives the inverse directly.
    const Multivector s = mul(reversion(u), u);
    if (!s.is_zero() && is_grade(s, 0, 1e-12)) {
        const Coeff lambda = trace(s);
        if (std::abs(lambda) > eps_zero * u.norm_inf() * u.norm_inf()) {
            const Multivector cand = scale(reversion(u), Coeff{1.0} / lambda);
            if (max_abs_diff(mul(u, cand), Multivector::scalar(sig, 1.0)) <= 1e-10)
                return cand;
        }
    }

    const DenseMatrix l = left_regular_matrix(u);
    Eigen::PartialPivLU<DenseMatrix> lu(l);
    if (lu.rcond() < 10.0 * eps_zero) {
        auto [smin, smax] = singular_range_of(l);
        if (!(smax > 0.0) || smin < eps_zero * smax)
            throw NonInvertibleError("left-regular system is singular");
    }
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(l.rows());
    rhs(0) = 1.0;
    const Eigen::VectorXcd x = lu.solve(rhs);

    std::vector<Multivector::Term> terms;
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (std::abs(x(i)) > 0.0) terms.push_back({static_cast<BladeMask>(i), x(i)});
    const Multivector v = Multivector::from_terms(sig, std::move(terms));
    if (max_abs_diff(mul(u, v), Multivector::scalar(sig, 1.0)) > 1e-6)
        throw NonInvertibleError("left-regular solve is numerically unreliable");
    return v;
}

GammaRep::GammaRep(Signature sig, std::vector<DenseMatrix> matrices, double tol)
    : sig_(sig), mats_(std::move(matrices)) {
    if (static_cast<int>(mats_.size()) != sig_.n())
        throw InputError("gamma representation needs exactly n matrices");
    const Eigen::Index d = mats_.front().rows();
    for (const DenseMatrix& m : mats_)
        if (m.rows() != d || m.cols() != d)
            throw InputError("gamma matrices must be square and of equal order");
    const DenseMatrix id = DenseMatrix::Identity(d, d);
    for (int a = 1; a <= sig_.n(); ++a)
        for (int b = 1; b <= sig_.n(); ++b) {
            const DenseMatrix acomm = mats_[a - 1] * mats_[b - 1] + mats_[b - 1] * mats_[a - 1];
            const double target = (a == b) ? 2.0 * sig_.metric(a) : 0.0;
            if ((acomm - target * id).cwiseAbs().maxCoeff() > tol)
                throw GeneratorRelationsError("matrices violate the anticommutation relations");
        }
}

GammaRep gamma_complex(const Signature& sig) {
    if (sig.field() != Field::complex)
        throw InputError("gamma_complex requires a complex signature");
    const int n = sig.n();
    const int even_n = (n % 2 == 0) ? n : n - 1;

    // Euclidean construction first, i-scaling for negative slots afterwards.
    std::vector<DenseMatrix> mats;
    if (even_n >= 2) {
        mats = {pauli(1), pauli(2)};
        for (int m = 2; m < even_n; m += 2) {
            const Eigen::Index d = mats.front().rows();
            const DenseMatrix id = DenseMatrix::Identity(d, d);
            std::vector<DenseMatrix> next = {kron(pauli(1), id), kron(pauli(2), id)};
            for (const DenseMatrix& g : mats) next.push_back(kron(pauli(3), g));
            mats = std::move(next);
        }
    }
    if (n % 2 == 1) {
        if (n == 1) {
            mats.push_back(DenseMatrix::Identity(1, 1));
        } else {
            DenseMatrix prod = mats.front();
            for (std::size_t a = 1; a < mats.size(); ++a) prod = prod * mats[a];
            // (prod^2) = +-1; scale so the last generator squares to +1.
            const Coeff sq = (prod * prod)(0, 0);
            const Coeff c = (sq.real() > 0.0) ? Coeff{1.0} : Coeff{0.0, -1.0};
            mats.push_back(c * prod);
        }
    }
    for (int a = sig.p() + 1; a <= n; ++a) mats[a - 1] *= Coeff{0.0, 1.0};
    return GammaRep(sig, std::move(mats));
}

DenseMatrix matrix_intertwiner_even(const GammaRep& betas, const GammaRep& gammas) {
    require_compatible(betas, gammas);
    const int n = betas.sig().n();
    if (n % 2 != 0) throw InputError("matrix_intertwiner_even requires even n");

    const auto bp = power_table(betas);
    const auto gp = power_table(gammas);
    const auto gl = lowered_table(gammas);
    const std::size_t count = std::size_t{1} << n;

    for (std::size_t f = 0; f < count; ++f) {
        if (std::popcount(f) % 2 != 0) continue;
        DenseMatrix t = DenseMatrix::Zero(betas.order(), betas.order());
        for (std::size_t a = 0; a < count; ++a) t += bp[a] * gp[f] * gl[a];
        const double m = t.cwiseAbs().maxCoeff();
        if (!(m > 0.0)) continue;
        t /= m;
        if (!matrix_invertible(t)) continue;
        const DenseMatrix tinv = t.partialPivLu().solve(
            DenseMatrix::Identity(t.rows(), t.cols()));
        if (intertwine_residual(t, tinv, betas.matrices(), gammas.matrices(), +1.0) <= eps_rel)
            return t;
    }
    throw NoIntertwinerError("no candidate F produced an invertible intertwiner");
}

std::pair<DenseMatrix, int> matrix_intertwiner_odd_sign(const GammaRep& betas,
                                                        const GammaRep& gammas) {
    require_compatible(betas, gammas);
    const Signature& sig = betas.sig();
    const int n = sig.n();
    if (n % 2 != 1 || (((sig.p() - sig.q()) % 4) + 4) % 4 != 3)
        throw InputError("matrix_intertwiner_odd_sign requires odd n with p-q = 3 mod 4");
    if (betas.order() != (Eigen::Index{1} << ((n - 1) / 2)))
        throw InputError("matrices must have order 2^{(n-1)/2}");

    const auto bp = power_table(betas);
    const auto gp = power_table(gammas);
    const auto gl = lowered_table(gammas);
    const std::size_t count = std::size_t{1} << n;
    const std::size_t full = count - 1;

    // beta^{1..n} gamma_{1..n} must be a scalar matrix +-1.
    const DenseMatrix factor = bp[full] * gl[full];
    const DenseMatrix id = DenseMatrix::Identity(betas.order(), betas.order());
    int sign = 0;
    if ((factor - id).cwiseAbs().maxCoeff() <= 1e-6) sign = +1;
    else if ((factor + id).cwiseAbs().maxCoeff() <= 1e-6) sign = -1;
    else throw VolumeMismatchError("volume product is not a +-identity matrix");

    for (std::size_t f = 0; f < count; ++f) {
        if (std::popcount(f) % 2 != 0) continue;
        DenseMatrix t = DenseMatrix::Zero(betas.order(), betas.order());
        for (std::size_t a = 0; a < count; ++a) {
            if (std::popcount(a) % 2 != 0) continue;
            t += bp[a] * gp[f] * gl[a];
        }
        const double m = t.cwiseAbs().maxCoeff();
        if (!(m > 0.0)) continue;
        t /= m;
        if (!matrix_invertible(t)) continue;
        const DenseMatrix tinv = t.partialPivLu().solve(id);
        if (intertwine_residual(t, tinv, betas.matrices(), gammas.matrices(), sign) <= eps_rel)
            return {t, sign};
    }
    throw NoIntertwinerError("no candidate F produced an invertible intertwiner");
}

int intertwining_nullspace_dimension(const std::vector<DenseMatrix>& betas,
                                     const std::vector<DenseMatrix>& gammas) {
    const Eigen::Index d = betas.front().rows();
    const Eigen::Index dd = d * d;
    const DenseMatrix id = DenseMatrix::Identity(d, d);
    DenseMatrix k(static_cast<Eigen::Index>(betas.size()) * dd, dd);
    for (std::size_t a = 0; a < betas.size(); ++a)
        k.block(static_cast<Eigen::Index>(a) * dd, 0, dd, dd) =
            kron(id, betas[a]) - kron(gammas[a].transpose(), id);
    Eigen::JacobiSVD<DenseMatrix> svd(k);
    const auto& sv = svd.singularValues();
    const double cut = matrix_singular_tol * (sv.size() > 0 ? sv(0) : 0.0);
    int nullity = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) <= cut) ++nullity;
    nullity += static_cast<int>(dd - sv.size());
    return nullity;
}

}  // namespace spincover
