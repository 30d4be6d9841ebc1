#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "spincover/multivector.hpp"

namespace spincover {

using DenseMatrix = Eigen::MatrixXcd;

/// Relative singular-value threshold for the dense matrix solvers.
inline constexpr double matrix_singular_tol = 1e-10;

/// Matrix of left multiplication by u in the increasing-mask blade basis:
/// L(u) vec(v) = vec(u v), hence L(u v) = L(u) L(v).
DenseMatrix left_regular_matrix(const Multivector& u);

/// Smallest/largest singular value of the left-regular matrix.
std::pair<double, double> singular_range(const Multivector& u);

bool is_invertible(const Multivector& u, double rel_tol = eps_zero);

/// Complex irreducible gamma representation: n matrices of order 2^{n/2}
/// (even n) or 2^{(n-1)/2} (odd n) obeying g^a g^b + g^b g^a = 2 eta^{ab} 1.
class GammaRep {
public:
    GammaRep(Signature sig, std::vector<DenseMatrix> matrices, double tol = 1e-10);

    const Signature& sig() const { return sig_; }
    const std::vector<DenseMatrix>& matrices() const { return mats_; }
    Eigen::Index order() const { return mats_.front().rows(); }

private:
    Signature sig_;
    std::vector<DenseMatrix> mats_;
};

/// Builds the representation by tensor recursion from sigma^1, sigma^2,
/// appending sigma^3 products; odd n adds a scaled product of the others;
/// generators in negative-metric slots are multiplied by i.
GammaRep gamma_complex(const Signature& sig);

/// Intertwiner for two even-n complex representations: invertible T with
/// gamma^a = T^{-1} beta^a T, unique up to a complex scalar.
DenseMatrix matrix_intertwiner_even(const GammaRep& betas, const GammaRep& gammas);

/// Odd n, p-q = 3 mod 4, order 2^{(n-1)/2}: returns (T, sign) with
/// gamma^a = sign * T^{-1} beta^a T; sign is +1 iff the volume products
/// beta^{1..n} and gamma^{1..n} agree (both are +-i times the identity).
std::pair<DenseMatrix, int> matrix_intertwiner_odd_sign(const GammaRep& betas,
                                                        const GammaRep& gammas);

/// Dimension of the solution space of { beta^a T = T gamma^a for all a },
/// computed from the stacked Sylvester system.  Zero means no nonzero T
/// intertwines the two sets by plain similarity.
int intertwining_nullspace_dimension(const std::vector<DenseMatrix>& betas,
                                     const std::vector<DenseMatrix>& gammas);

}  // namespace spincover
